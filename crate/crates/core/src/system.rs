//! Satisfaction systems over finite universes and their catalogs of
//! finitely representable model sets.

use std::collections::BTreeMap;
use std::fmt::Debug;

use crate::error::{Error, ParseError, Result};
use crate::exec::Exec;
use crate::modelset::ModelSet;

/// A finite base: formulas satisfied jointly (for conjunctive systems).
pub type Base<F> = Vec<F>;

/// A logic instance whose models are grouped into finitely many classes.
pub trait SatSystem: Sync {
    type Formula: Clone + Debug + PartialEq + Send + Sync;

    fn name(&self) -> String;

    fn universe_size(&self) -> usize;

    fn model_label(&self, model: usize) -> String;

    /// Inverse of [`SatSystem::model_label`], plus any aliases the logic accepts.
    fn parse_model(&self, label: &str) -> Option<usize> {
        (0..self.universe_size()).find(|&m| self.model_label(m) == label)
    }

    fn parse_formula(&self, text: &str) -> Result<Self::Formula, ParseError>;

    fn render(&self, formula: &Self::Formula) -> String;

    fn satisfies(&self, model: usize, formula: &Self::Formula) -> bool;

    fn satisfies_base(&self, model: usize, base: &[Self::Formula]) -> bool {
        base.iter().all(|f| self.satisfies(model, f))
    }

    fn models_of(&self, base: &[Self::Formula]) -> ModelSet {
        let n = self.universe_size();
        let mut out = ModelSet::empty(n);
        for m in 0..n {
            if self.satisfies_base(m, base) {
                out.insert(m);
            }
        }
        out
    }

    fn build_catalog(&self, exec: Exec) -> Result<Catalog<Self::Formula>>;

    /// Bases used for exhaustive postulate grids. Defaults to one witness per
    /// catalog entry.
    fn sample_bases(&self, catalog: &Catalog<Self::Formula>) -> Vec<Base<Self::Formula>> {
        catalog.entries().map(|(_, b)| b.clone()).collect()
    }

    fn render_base(&self, base: &[Self::Formula]) -> Vec<String> {
        base.iter().map(|f| self.render(f)).collect()
    }

    fn render_set(&self, set: &ModelSet) -> String {
        set.render(|m| self.model_label(m))
    }
}

/// The finite family of representable model sets, each with one witness base.
#[derive(Clone, Debug)]
pub struct Catalog<F> {
    universe: usize,
    entries: BTreeMap<ModelSet, Base<F>>,
}

impl<F: Clone + Debug + PartialEq + Send + Sync> Catalog<F> {
    pub fn new(universe: usize) -> Self {
        Catalog {
            universe,
            entries: BTreeMap::new(),
        }
    }

    pub fn universe_size(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, set: &ModelSet) -> bool {
        self.entries.contains_key(set)
    }

    pub fn witness(&self, set: &ModelSet) -> Option<&Base<F>> {
        self.entries.get(set)
    }

    /// Entries in canonical set order.
    pub fn entries(&self) -> impl Iterator<Item = (&ModelSet, &Base<F>)> {
        self.entries.iter()
    }

    pub fn sets(&self) -> impl Iterator<Item = &ModelSet> {
        self.entries.keys()
    }

    /// Record `base` under its model set; the first witness for a set is kept.
    pub fn insert_base<S>(&mut self, system: &S, base: Base<F>) -> ModelSet
    where
        S: SatSystem<Formula = F> + ?Sized,
    {
        let set = system.models_of(&base);
        self.entries.entry(set).or_insert(base);
        set
    }

    /// Record `base` as witness for `set`, checking that it denotes exactly `set`.
    pub fn insert_verified<S>(&mut self, system: &S, set: ModelSet, base: Base<F>) -> Result<bool>
    where
        S: SatSystem<Formula = F> + ?Sized,
    {
        if set.universe() != self.universe {
            return Err(Error::UniverseMismatch {
                expected: self.universe,
                found: set.universe(),
            });
        }
        let actual = system.models_of(&base);
        if actual != set {
            return Err(Error::WitnessMismatch {
                set: system.render_set(&set),
                actual: system.render_set(&actual),
            });
        }
        if self.entries.contains_key(&set) {
            return Ok(false);
        }
        self.entries.insert(set, base);
        Ok(true)
    }

    /// Insert pre-verified pairs, keeping the first witness per set.
    pub(crate) fn extend_unchecked(&mut self, pairs: impl IntoIterator<Item = (ModelSet, Base<F>)>) {
        for (set, base) in pairs {
            self.entries.entry(set).or_insert(base);
        }
    }

    /// Close under pairwise intersection; the witness of `S ∩ T` is the
    /// concatenation of the witnesses. Only valid for conjunctive systems.
    pub fn close_under_intersection<S>(&mut self, system: &S) -> Result<()>
    where
        S: SatSystem<Formula = F> + ?Sized,
    {
        loop {
            let sets: Vec<(ModelSet, Base<F>)> = self.entries.iter().map(|(s, b)| (*s, b.clone())).collect();
            let mut added = false;
            for (i, (s, bs)) in sets.iter().enumerate() {
                for (t, bt) in &sets[i + 1..] {
                    let meet = s.intersection(t);
                    if self.entries.contains_key(&meet) {
                        continue;
                    }
                    let mut base = bs.clone();
                    base.extend(bt.iter().cloned());
                    self.insert_verified(system, meet, base)?;
                    added = true;
                }
            }
            if !added {
                return Ok(());
            }
        }
    }

    pub fn is_intersection_closed(&self) -> bool {
        let sets: Vec<&ModelSet> = self.entries.keys().collect();
        sets.iter()
            .all(|s| sets.iter().all(|t| self.entries.contains_key(&s.intersection(t))))
    }

    pub fn contains_empty(&self) -> bool {
        self.contains(&ModelSet::empty(self.universe))
    }

    pub fn contains_universe(&self) -> bool {
        self.contains(&ModelSet::full(self.universe))
    }

    /// Re-check every witness against the system.
    pub fn verify<S>(&self, system: &S) -> Result<()>
    where
        S: SatSystem<Formula = F> + ?Sized,
    {
        for (set, base) in &self.entries {
            let actual = system.models_of(base);
            if actual != *set {
                return Err(Error::WitnessMismatch {
                    set: system.render_set(set),
                    actual: system.render_set(&actual),
                });
            }
        }
        Ok(())
    }
}

/// A satisfaction system paired with its (precomputed) catalog.
pub struct FiniteLogic<S: SatSystem> {
    pub system: S,
    pub catalog: Catalog<S::Formula>,
    pub exec: Exec,
}

impl<S: SatSystem> FiniteLogic<S> {
    pub fn new(system: S) -> Result<Self> {
        Self::with_exec(system, Exec::default())
    }

    pub fn with_exec(system: S, exec: Exec) -> Result<Self> {
        let catalog = system.build_catalog(exec)?;
        Ok(FiniteLogic { system, catalog, exec })
    }

    pub fn universe_size(&self) -> usize {
        self.system.universe_size()
    }

    pub fn models_of(&self, base: &[S::Formula]) -> ModelSet {
        self.system.models_of(base)
    }

    pub fn parse_base(&self, lines: &[&str]) -> Result<Base<S::Formula>, ParseError> {
        lines.iter().map(|l| self.system.parse_formula(l)).collect()
    }

    /// Every (sample base, input set) pair.
    pub fn exhaustive_cases(&self) -> Result<Vec<(Base<S::Formula>, ModelSet)>> {
        let bases = self.system.sample_bases(&self.catalog);
        let inputs: Vec<ModelSet> = ModelSet::all_subsets(self.universe_size())?.collect();
        Ok(bases
            .iter()
            .flat_map(|b| inputs.iter().map(move |m| (b.clone(), *m)))
            .collect())
    }
}
