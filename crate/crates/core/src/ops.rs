//! Maximal/minimal representable approximations and the maxichoice operators.

use crate::error::{ChangeKind, Error, Incompatibility, Result};
use crate::modelset::{maximal_elements, minimal_elements, ModelSet};
use crate::select::SelectionPolicy;
use crate::system::{Base, Catalog, FiniteLogic, SatSystem};

/// All ⊆-maximal catalog sets contained in `target`, canonically sorted.
pub fn frsubs<F>(target: &ModelSet, catalog: &Catalog<F>) -> Result<Vec<ModelSet>>
where
    F: Clone + std::fmt::Debug + PartialEq + Send + Sync,
{
    check_target(target, catalog)?;
    let below: Vec<ModelSet> = catalog.sets().filter(|s| s.is_subset(target)).copied().collect();
    Ok(maximal_elements(&below))
}

/// All ⊆-minimal catalog sets containing `target`, canonically sorted.
pub fn frsups<F>(target: &ModelSet, catalog: &Catalog<F>) -> Result<Vec<ModelSet>>
where
    F: Clone + std::fmt::Debug + PartialEq + Send + Sync,
{
    check_target(target, catalog)?;
    let above: Vec<ModelSet> = catalog.sets().filter(|s| target.is_subset(s)).copied().collect();
    Ok(minimal_elements(&above))
}

fn check_target<F>(target: &ModelSet, catalog: &Catalog<F>) -> Result<()>
where
    F: Clone + std::fmt::Debug + PartialEq + Send + Sync,
{
    if target.universe() != catalog.universe_size() {
        return Err(Error::UniverseMismatch {
            expected: catalog.universe_size(),
            found: target.universe(),
        });
    }
    if catalog.is_empty() {
        return Err(Error::Precondition("empty catalog".into()));
    }
    Ok(())
}

/// Outcome of one eviction or reception.
#[derive(Clone, Debug, PartialEq)]
pub struct ChangeReport<F> {
    pub kind: ChangeKind,
    /// `Mod(B) \ M` for eviction, `Mod(B) ∪ M` for reception.
    pub target: ModelSet,
    pub candidates: Vec<ModelSet>,
    pub chosen: ModelSet,
    pub result_models: ModelSet,
    pub result_base: Base<F>,
}

pub type EvictionReport<F> = ChangeReport<F>;
pub type ReceptionReport<F> = ChangeReport<F>;

impl<S: SatSystem> FiniteLogic<S> {
    pub fn frsubs(&self, target: &ModelSet) -> Result<Vec<ModelSet>> {
        frsubs(target, &self.catalog)
    }

    pub fn frsups(&self, target: &ModelSet) -> Result<Vec<ModelSet>> {
        frsups(target, &self.catalog)
    }

    /// Maxichoice eviction: reject the models in `input`.
    pub fn evict(
        &self,
        base: &[S::Formula],
        input: &ModelSet,
        policy: &SelectionPolicy,
    ) -> Result<EvictionReport<S::Formula>> {
        let current = self.models_of(base);
        current.check_universe(input)?;
        let target = current.difference(input);
        let candidates = self.frsubs(&target)?;
        self.conclude(ChangeKind::Eviction, target, candidates, policy)
    }

    /// Maxichoice reception: accept the models in `input`.
    pub fn receive(
        &self,
        base: &[S::Formula],
        input: &ModelSet,
        policy: &SelectionPolicy,
    ) -> Result<ReceptionReport<S::Formula>> {
        let current = self.models_of(base);
        current.check_universe(input)?;
        let target = current.union(input);
        let candidates = self.frsups(&target)?;
        self.conclude(ChangeKind::Reception, target, candidates, policy)
    }

    fn conclude(
        &self,
        kind: ChangeKind,
        target: ModelSet,
        candidates: Vec<ModelSet>,
        policy: &SelectionPolicy,
    ) -> Result<ChangeReport<S::Formula>> {
        let Some(chosen) = policy.select(&candidates) else {
            let explanation = match kind {
                ChangeKind::Eviction => "no representable subset (the empty set of models is not representable)",
                ChangeKind::Reception => "no representable superset (the universe is not representable)",
            };
            return Err(Error::incompatible(Incompatibility {
                kind,
                target: self.system.render_set(&target),
                explanation: explanation.into(),
                witness: None,
            }));
        };
        let result_base = self
            .catalog
            .witness(&chosen)
            .expect("chosen candidate comes from the catalog")
            .clone();
        Ok(ChangeReport {
            kind,
            target,
            candidates,
            chosen,
            result_models: chosen,
            result_base,
        })
    }
}
