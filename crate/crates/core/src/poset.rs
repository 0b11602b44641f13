//! Order-theoretic diagnostics over a finite catalog.

use std::fmt::Debug;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::modelset::{maximal_elements, minimal_elements, ModelSet};
use crate::ops::{frsubs, frsups};
use crate::system::{Base, Catalog, SatSystem};

/// Result of combining several candidates into one set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CombinationEvidence {
    pub candidates: Vec<ModelSet>,
    pub combined: ModelSet,
    pub representable: bool,
}

/// Intersect every FRsubs element of `target`; requires at least two.
pub fn intersection_counterexample<F>(catalog: &Catalog<F>, target: &ModelSet) -> Result<CombinationEvidence>
where
    F: Clone + Debug + PartialEq + Send + Sync,
{
    let candidates = frsubs(target, catalog)?;
    if candidates.len() < 2 {
        return Err(Error::Precondition(format!(
            "{} maximal representable subsets, need at least 2",
            candidates.len()
        )));
    }
    let combined = candidates
        .iter()
        .skip(1)
        .fold(candidates[0], |acc, s| acc.intersection(s));
    Ok(CombinationEvidence {
        representable: catalog.contains(&combined),
        candidates,
        combined,
    })
}

/// Unite every FRsups element of `target`; requires at least two.
pub fn union_counterexample<F>(catalog: &Catalog<F>, target: &ModelSet) -> Result<CombinationEvidence>
where
    F: Clone + Debug + PartialEq + Send + Sync,
{
    let candidates = frsups(target, catalog)?;
    if candidates.len() < 2 {
        return Err(Error::Precondition(format!(
            "{} minimal representable supersets, need at least 2",
            candidates.len()
        )));
    }
    let combined = candidates.iter().skip(1).fold(candidates[0], |acc, s| acc.union(s));
    Ok(CombinationEvidence {
        representable: catalog.contains(&combined),
        candidates,
        combined,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RmbpWitness {
    pub first: Vec<String>,
    pub second: Vec<String>,
    pub model: String,
    pub satisfies_both: bool,
    pub satisfies_union: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RmbpVerdict {
    pub pairs: usize,
    pub witness: Option<RmbpWitness>,
}

impl RmbpVerdict {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Two bases to be combined.
pub type BasePair<F> = (Base<F>, Base<F>);

/// Check that joint satisfaction of two bases coincides with satisfaction of
/// their union, for every pair and every model of the universe.
pub fn rmbp_check<S: SatSystem>(system: &S, sample: &[BasePair<S::Formula>]) -> RmbpVerdict {
    for (first, second) in sample {
        let mut union = first.clone();
        union.extend(second.iter().cloned());
        for m in 0..system.universe_size() {
            let both = system.satisfies_base(m, first) && system.satisfies_base(m, second);
            let joint = system.satisfies_base(m, &union);
            if both != joint {
                return RmbpVerdict {
                    pairs: sample.len(),
                    witness: Some(RmbpWitness {
                        first: system.render_base(first),
                        second: system.render_base(second),
                        model: system.model_label(m),
                        satisfies_both: both,
                        satisfies_union: joint,
                    }),
                };
            }
        }
    }
    RmbpVerdict {
        pairs: sample.len(),
        witness: None,
    }
}

/// All ordered pairs of the given bases.
pub fn all_pairs<F: Clone>(bases: &[Base<F>]) -> Vec<BasePair<F>> {
    bases
        .iter()
        .flat_map(|a| bases.iter().map(move |b| (a.clone(), b.clone())))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditRow {
    pub target: ModelSet,
    pub frsubs: usize,
    pub frsups: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniquenessAudit {
    pub rows: Vec<AuditRow>,
    /// Targets with more than one minimal representable superset.
    pub frsups_violations: Vec<ModelSet>,
    /// Targets with more than one maximal representable subset (diagnostic only).
    pub frsubs_multiples: Vec<ModelSet>,
}

impl UniquenessAudit {
    pub fn frsups_unique(&self) -> bool {
        self.frsups_violations.is_empty()
    }
}

/// Count FRsubs and FRsups for every subset of the universe.
pub fn uniqueness_audit<F>(catalog: &Catalog<F>, exec: Exec) -> Result<UniquenessAudit>
where
    F: Clone + Debug + PartialEq + Send + Sync,
{
    let targets: Vec<ModelSet> = ModelSet::all_subsets(catalog.universe_size())?.collect();
    let rows: Vec<Result<AuditRow>> = exec.map(&targets, |t| {
        Ok(AuditRow {
            target: *t,
            frsubs: frsubs(t, catalog)?.len(),
            frsups: frsups(t, catalog)?.len(),
        })
    });
    let rows: Vec<AuditRow> = rows.into_iter().collect::<Result<_>>()?;
    Ok(UniquenessAudit {
        frsups_violations: rows.iter().filter(|r| r.frsups > 1).map(|r| r.target).collect(),
        frsubs_multiples: rows.iter().filter(|r| r.frsubs > 1).map(|r| r.target).collect(),
        rows,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Compatibility {
    pub eviction: bool,
    pub reception: bool,
}

/// For finite catalogs: eviction-compatible iff ∅ is representable,
/// reception-compatible iff the universe is.
pub fn compat_finite<F>(catalog: &Catalog<F>) -> Compatibility
where
    F: Clone + Debug + PartialEq + Send + Sync,
{
    Compatibility {
        eviction: catalog.contains_empty(),
        reception: catalog.contains_universe(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Neighbors {
    pub predecessors: Vec<ModelSet>,
    pub successors: Vec<ModelSet>,
}

/// Immediate strict predecessors and successors of `target` in the poset
/// `(catalog ∪ {target}, ⊂)`.
pub fn immediate_neighbors<F>(catalog: &Catalog<F>, target: &ModelSet) -> Result<Neighbors>
where
    F: Clone + Debug + PartialEq + Send + Sync,
{
    if target.universe() != catalog.universe_size() {
        return Err(Error::UniverseMismatch {
            expected: catalog.universe_size(),
            found: target.universe(),
        });
    }
    let below: Vec<ModelSet> = catalog.sets().filter(|s| s.is_strict_subset(target)).copied().collect();
    let above: Vec<ModelSet> = catalog.sets().filter(|s| target.is_strict_subset(s)).copied().collect();
    Ok(Neighbors {
        predecessors: maximal_elements(&below),
        successors: minimal_elements(&above),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::ParseError;
    use crate::logic::horn::HornSystem;
    use crate::logic::prop::{Formula, Fragment, PropSystem, Signature};
    use crate::system::FiniteLogic;

    fn horn() -> FiniteLogic<HornSystem> {
        FiniteLogic::with_exec(HornSystem::new(Signature::parse("p,q").unwrap()), Exec::Sequential).unwrap()
    }

    fn prop(fragment: Fragment) -> FiniteLogic<PropSystem> {
        FiniteLogic::with_exec(
            PropSystem::new(Signature::parse("a,b").unwrap(), fragment),
            Exec::Sequential,
        )
        .unwrap()
    }

    fn set<S: SatSystem>(l: &FiniteLogic<S>, labels: &[&str]) -> ModelSet {
        ModelSet::from_indices(
            l.universe_size(),
            labels.iter().map(|s| l.system.parse_model(s).unwrap()),
        )
        .unwrap()
    }

    /// Joint satisfaction only looks at the first formula.
    struct FirstOnly(PropSystem);

    impl SatSystem for FirstOnly {
        type Formula = Formula;
        fn name(&self) -> String {
            "first-only".into()
        }
        fn universe_size(&self) -> usize {
            self.0.universe_size()
        }
        fn model_label(&self, m: usize) -> String {
            self.0.model_label(m)
        }
        fn parse_formula(&self, t: &str) -> Result<Formula, ParseError> {
            self.0.parse_formula(t)
        }
        fn render(&self, f: &Formula) -> String {
            self.0.render(f)
        }
        fn satisfies(&self, m: usize, f: &Formula) -> bool {
            self.0.satisfies(m, f)
        }
        fn satisfies_base(&self, m: usize, base: &[Formula]) -> bool {
            base.first().is_none_or(|f| self.satisfies(m, f))
        }
        fn build_catalog(&self, exec: Exec) -> Result<Catalog<Formula>> {
            self.0.build_catalog(exec)
        }
    }

    #[test]
    fn combined_candidates() {
        let t = prop(Fragment::AtomsOnly);
        let target = set(&t, &["tt", "tf", "ft"]);
        let ev = intersection_counterexample(&t.catalog, &target).unwrap();
        assert_eq!(ev.candidates.len(), 2);
        assert_eq!(ev.combined, set(&t, &["tt"]));
        assert!(ev.representable);

        let p = prop(Fragment::AtomsAndFalsum);
        assert!(matches!(
            union_counterexample(&p.catalog, &set(&p, &["tt"])),
            Err(Error::Precondition(_))
        ));
        let full = prop(Fragment::Full);
        for s in ModelSet::all_subsets(4).unwrap() {
            assert!(intersection_counterexample(&full.catalog, &s).is_err());
        }
    }

    #[test]
    fn rmbp_verdicts() {
        let p = prop(Fragment::Full);
        let bases = p.system.sample_bases(&p.catalog);
        assert!(rmbp_check(&p.system, &all_pairs(&bases)).passed());
        let h = horn();
        assert!(rmbp_check(&h.system, &all_pairs(&h.system.sample_bases(&h.catalog))).passed());

        let broken = FirstOnly(PropSystem::full(Signature::parse("a,b").unwrap()));
        let a = broken.parse_formula("a").unwrap();
        let b = broken.parse_formula("b").unwrap();
        let v = rmbp_check(&broken, &[(vec![a], vec![b])]);
        let w = v.witness.unwrap();
        assert!(!w.satisfies_both && w.satisfies_union);
        assert_eq!(w.model, "tf");
    }

    #[test]
    fn uniqueness_audits() {
        let p = prop(Fragment::Full);
        let audit = uniqueness_audit(&p.catalog, Exec::Sequential).unwrap();
        assert!(audit.rows.iter().all(|r| r.frsubs == 1 && r.frsups == 1));

        let h = horn();
        let audit = uniqueness_audit(&h.catalog, Exec::Parallel).unwrap();
        assert_eq!(audit.rows.len(), 16);
        assert!(audit.frsups_unique());
        let mut want = vec![set(&h, &["hb", "hc"]), set(&h, &["hb", "hc", "hd"])];
        want.sort();
        assert_eq!(audit.frsubs_multiples, want);
    }

    #[test]
    fn compatibility_flags() {
        assert_eq!(
            compat_finite(&prop(Fragment::Full).catalog),
            Compatibility {
                eviction: true,
                reception: true
            }
        );
        assert_eq!(
            compat_finite(&prop(Fragment::AtomsOnly).catalog),
            Compatibility {
                eviction: false,
                reception: true
            }
        );
    }

    #[test]
    fn neighbours() {
        let h = horn();
        let target = set(&h, &["hb", "hc"]);
        let n = immediate_neighbors(&h.catalog, &target).unwrap();
        assert_eq!(n.predecessors, h.frsubs(&target).unwrap());
        assert_eq!(n.successors, h.frsups(&target).unwrap());

        let n = immediate_neighbors(&h.catalog, &ModelSet::empty(4)).unwrap();
        assert!(n.predecessors.is_empty());
        assert_eq!(n.successors.len(), 4);
        assert!(n.successors.iter().all(|s| s.len() == 1));

        let hb = set(&h, &["hb"]);
        let n = immediate_neighbors(&h.catalog, &hb).unwrap();
        assert_eq!(n.predecessors, vec![ModelSet::empty(4)]);
        assert!(!n.successors.contains(&hb));
    }
}
