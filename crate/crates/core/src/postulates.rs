//! Exhaustive verification of the eviction and reception postulates over
//! case grids, plus the monotony probe for reception.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{ChangeKind, Error, Result};
use crate::modelset::ModelSet;
use crate::select::SelectionPolicy;
use crate::system::{Base, FiniteLogic, SatSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Postulate {
    Success,
    Inclusion,
    Persistence,
    Vacuity,
    FiniteRetainment,
    FiniteTemperance,
    Uniformity,
}

impl Postulate {
    pub const EVICTION: [Postulate; 5] = [
        Postulate::Success,
        Postulate::Inclusion,
        Postulate::Vacuity,
        Postulate::FiniteRetainment,
        Postulate::Uniformity,
    ];

    pub const RECEPTION: [Postulate; 5] = [
        Postulate::Success,
        Postulate::Persistence,
        Postulate::Vacuity,
        Postulate::FiniteTemperance,
        Postulate::Uniformity,
    ];
}

impl fmt::Display for Postulate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Postulate::Success => "success",
            Postulate::Inclusion => "inclusion",
            Postulate::Persistence => "persistence",
            Postulate::Vacuity => "vacuity",
            Postulate::FiniteRetainment => "finite retainment",
            Postulate::FiniteTemperance => "finite temperance",
            Postulate::Uniformity => "uniformity",
        })
    }
}

/// A reproducible failing case: the operator applied to (`base`, `input`).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub base: Vec<String>,
    pub input: ModelSet,
    pub base_models: ModelSet,
    pub result_models: ModelSet,
    /// Representable set strictly between result and target (retainment /
    /// temperance), or the conflicting result (uniformity).
    pub witness: Option<ModelSet>,
    /// For uniformity: the other case with the same candidate family.
    pub other_base: Option<Vec<String>>,
    pub other_input: Option<ModelSet>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PostulateOutcome {
    pub postulate: Postulate,
    pub checked: usize,
    pub failures: usize,
    pub counterexample: Option<Counterexample>,
}

impl PostulateOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PostulateReport {
    pub kind: ChangeKind,
    pub cases: usize,
    /// Cases where the operator reported an incompatibility; postulates are
    /// checked on the remaining ones.
    pub undefined: usize,
    pub outcomes: Vec<PostulateOutcome>,
}

impl PostulateReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(PostulateOutcome::passed)
    }

    pub fn failures(&self, p: Postulate) -> usize {
        self.outcome(p).map_or(0, |o| o.failures)
    }

    pub fn outcome(&self, p: Postulate) -> Option<&PostulateOutcome> {
        self.outcomes.iter().find(|o| o.postulate == p)
    }

    pub fn passed_count(&self) -> usize {
        self.outcomes.iter().filter(|o| o.passed()).count()
    }

    /// Vacuity failures while the two postulates that imply it hold.
    pub fn vacuity_redundancy_violated(&self) -> bool {
        let premises = match self.kind {
            ChangeKind::Eviction => [Postulate::Inclusion, Postulate::FiniteRetainment],
            ChangeKind::Reception => [Postulate::Persistence, Postulate::FiniteTemperance],
        };
        premises.iter().all(|p| self.failures(*p) == 0) && self.failures(Postulate::Vacuity) > 0
    }
}

struct Evaluated {
    base_models: ModelSet,
    result_models: ModelSet,
    target: ModelSet,
    family: Vec<ModelSet>,
}

/// An operator under test: maps (base, input) to a new base.
pub type ChangeOp<'a, F> = dyn Fn(&[F], &ModelSet) -> Result<Base<F>> + Sync + 'a;

impl<S: SatSystem> FiniteLogic<S> {
    pub fn check_eviction_postulates(
        &self,
        op: &ChangeOp<'_, S::Formula>,
        cases: &[(Base<S::Formula>, ModelSet)],
    ) -> Result<PostulateReport> {
        self.check_postulates(ChangeKind::Eviction, op, cases)
    }

    pub fn check_reception_postulates(
        &self,
        op: &ChangeOp<'_, S::Formula>,
        cases: &[(Base<S::Formula>, ModelSet)],
    ) -> Result<PostulateReport> {
        self.check_postulates(ChangeKind::Reception, op, cases)
    }

    /// The maxichoice operators as [`ChangeOp`]s.
    pub fn evict_op<'a>(
        &'a self,
        policy: &'a SelectionPolicy,
    ) -> impl Fn(&[S::Formula], &ModelSet) -> Result<Base<S::Formula>> + Sync + 'a {
        move |b, m| self.evict(b, m, policy).map(|r| r.result_base)
    }

    pub fn receive_op<'a>(
        &'a self,
        policy: &'a SelectionPolicy,
    ) -> impl Fn(&[S::Formula], &ModelSet) -> Result<Base<S::Formula>> + Sync + 'a {
        move |b, m| self.receive(b, m, policy).map(|r| r.result_base)
    }

    fn check_postulates(
        &self,
        kind: ChangeKind,
        op: &ChangeOp<'_, S::Formula>,
        cases: &[(Base<S::Formula>, ModelSet)],
    ) -> Result<PostulateReport> {
        let evaluated: Vec<Result<Option<Evaluated>>> = self.exec.map(cases, |(base, input)| {
            let base_models = self.models_of(base);
            base_models.check_universe(input)?;
            let result = match op(base, input) {
                Err(Error::Incompatible(_)) => return Ok(None),
                other => other?,
            };
            let result_models = self.models_of(&result);
            let (target, family) = match kind {
                ChangeKind::Eviction => {
                    let t = base_models.difference(input);
                    (t, self.frsubs(&t)?)
                }
                ChangeKind::Reception => {
                    let t = base_models.union(input);
                    (t, self.frsups(&t)?)
                }
            };
            Ok(Some(Evaluated {
                base_models,
                result_models,
                target,
                family,
            }))
        });
        let evaluated: Vec<Option<Evaluated>> = evaluated.into_iter().collect::<Result<_>>()?;
        let undefined = evaluated.iter().filter(|e| e.is_none()).count();

        let postulates = match kind {
            ChangeKind::Eviction => Postulate::EVICTION,
            ChangeKind::Reception => Postulate::RECEPTION,
        };
        let mut outcomes: Vec<PostulateOutcome> = postulates
            .iter()
            .map(|&postulate| PostulateOutcome {
                postulate,
                checked: cases.len() - undefined,
                failures: 0,
                counterexample: None,
            })
            .collect();

        let result_of = |j: usize| evaluated[j].as_ref().expect("recorded cases are defined").result_models;
        let mut by_family: BTreeMap<&[ModelSet], usize> = BTreeMap::new();
        for (i, ev) in evaluated.iter().enumerate() {
            let Some(ev) = ev else { continue };
            let input = &cases[i].1;
            for out in outcomes.iter_mut() {
                let failed: Option<Option<ModelSet>> = match out.postulate {
                    Postulate::Success => {
                        let ok = match kind {
                            ChangeKind::Eviction => input.is_disjoint(&ev.result_models),
                            ChangeKind::Reception => input.is_subset(&ev.result_models),
                        };
                        (!ok).then_some(None)
                    }
                    Postulate::Inclusion => (!ev.result_models.is_subset(&ev.base_models)).then_some(None),
                    Postulate::Persistence => (!ev.base_models.is_subset(&ev.result_models)).then_some(None),
                    Postulate::Vacuity => {
                        let applies = match kind {
                            ChangeKind::Eviction => input.is_disjoint(&ev.base_models),
                            ChangeKind::Reception => input.is_subset(&ev.base_models),
                        };
                        (applies && ev.result_models != ev.base_models).then_some(None)
                    }
                    Postulate::FiniteRetainment => self
                        .catalog
                        .sets()
                        .find(|s| ev.result_models.is_strict_subset(s) && s.is_subset(&ev.target))
                        .map(|s| Some(*s)),
                    Postulate::FiniteTemperance => self
                        .catalog
                        .sets()
                        .find(|s| ev.target.is_subset(s) && s.is_strict_subset(&ev.result_models))
                        .map(|s| Some(*s)),
                    Postulate::Uniformity => match by_family.get(ev.family.as_slice()) {
                        Some(&j) if result_of(j) != ev.result_models => Some(None),
                        _ => None,
                    },
                };
                if let Some(witness) = failed {
                    out.failures += 1;
                    if out.counterexample.is_none() {
                        let mut cx = Counterexample {
                            base: self.system.render_base(&cases[i].0),
                            input: *input,
                            base_models: ev.base_models,
                            result_models: ev.result_models,
                            witness,
                            other_base: None,
                            other_input: None,
                        };
                        if out.postulate == Postulate::Uniformity {
                            let j = by_family[ev.family.as_slice()];
                            cx.witness = Some(result_of(j));
                            cx.other_base = Some(self.system.render_base(&cases[j].0));
                            cx.other_input = Some(cases[j].1);
                        }
                        out.counterexample = Some(cx);
                    }
                }
            }
            by_family.entry(ev.family.as_slice()).or_insert(i);
        }

        Ok(PostulateReport {
            kind,
            cases: cases.len(),
            undefined,
            outcomes,
        })
    }

    /// Search for `Mod(B) ⊆ Mod(B')` with `Mod(receive(B,M)) ⊄ Mod(receive(B',M))`
    /// over the sample bases and every input set. Returns the first witness in
    /// (base, larger base, input) order.
    pub fn monotony_probe(&self, policy: &SelectionPolicy) -> Result<Option<MonotonyWitness>> {
        let bases = self.system.sample_bases(&self.catalog);
        let inputs: Vec<ModelSet> = ModelSet::all_subsets(self.universe_size())?.collect();
        let mods: Vec<ModelSet> = bases.iter().map(|b| self.models_of(b)).collect();

        let per_base: Vec<Result<Option<MonotonyWitness>>> = self.exec.map_range(bases.len(), |i| {
            for (j, larger) in bases.iter().enumerate() {
                if i == j || !mods[i].is_subset(&mods[j]) {
                    continue;
                }
                for input in &inputs {
                    let receive = |base: &[S::Formula]| match self.receive(base, input, policy) {
                        Ok(r) => Ok(Some(r.result_models)),
                        Err(Error::Incompatible(_)) => Ok(None),
                        Err(e) => Err(e),
                    };
                    let (Some(small), Some(big)) = (receive(&bases[i])?, receive(larger)?) else {
                        continue;
                    };
                    if !small.is_subset(&big) {
                        return Ok(Some(MonotonyWitness {
                            base: self.system.render_base(&bases[i]),
                            larger_base: self.system.render_base(larger),
                            input: *input,
                            result: small,
                            larger_result: big,
                        }));
                    }
                }
            }
            Ok(None)
        });
        for r in per_base {
            if let Some(w) = r? {
                return Ok(Some(w));
            }
        }
        Ok(None)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonotonyWitness {
    pub base: Vec<String>,
    pub larger_base: Vec<String>,
    pub input: ModelSet,
    pub result: ModelSet,
    pub larger_result: ModelSet,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Exec;
    use crate::logic::horn::HornSystem;
    use crate::logic::prop::{Fragment, PropSystem, Signature};
    use crate::logic::threeval::ThreeValSystem;

    fn prop(fragment: Fragment) -> FiniteLogic<PropSystem> {
        FiniteLogic::with_exec(
            PropSystem::new(Signature::parse("a,b").unwrap(), fragment),
            Exec::Sequential,
        )
        .unwrap()
    }

    #[test]
    fn maxichoice_passes_on_classical_and_fragment() {
        let policy = SelectionPolicy::default();
        let p = prop(Fragment::Full);
        let cases = p.exhaustive_cases().unwrap();
        assert_eq!(cases.len(), 16 * 16);
        assert!(p
            .check_eviction_postulates(&p.evict_op(&policy), &cases)
            .unwrap()
            .passed());
        assert!(p
            .check_reception_postulates(&p.receive_op(&policy), &cases)
            .unwrap()
            .passed());

        let pp = prop(Fragment::AtomsAndFalsum);
        let cases = pp.exhaustive_cases().unwrap();
        assert_eq!(cases.len(), 8 * 16);
        let r = pp.check_reception_postulates(&pp.receive_op(&policy), &cases).unwrap();
        assert!(r.passed());
        assert_eq!(r.undefined, 0);
    }

    #[test]
    fn partial_operator_is_checked_where_defined() {
        let t = prop(Fragment::AtomsOnly);
        let policy = SelectionPolicy::default();
        let r = t
            .check_eviction_postulates(&t.evict_op(&policy), &t.exhaustive_cases().unwrap())
            .unwrap();
        assert!(r.undefined > 0);
        assert!(r.passed());
        assert_eq!(r.outcomes[0].checked, r.cases - r.undefined);
    }

    #[test]
    fn identity_fails_success() {
        let p = prop(Fragment::Full);
        let identity = |b: &[crate::logic::prop::Formula], _: &ModelSet| Ok(b.to_vec());
        let r = p
            .check_eviction_postulates(&identity, &p.exhaustive_cases().unwrap())
            .unwrap();
        assert!(r.failures(Postulate::Success) > 0);
        assert_eq!(r.failures(Postulate::Inclusion), 0);
        let cx = r.outcome(Postulate::Success).unwrap().counterexample.clone().unwrap();
        assert!(!cx.input.is_disjoint(&cx.result_models));
    }

    #[test]
    fn constant_tautology_fails_temperance() {
        let p = prop(Fragment::Full);
        let taut = p.parse_base(&["a | !a"]).unwrap();
        let op = move |_: &[crate::logic::prop::Formula], _: &ModelSet| Ok(taut.clone());
        let r = p
            .check_reception_postulates(&op, &p.exhaustive_cases().unwrap())
            .unwrap();
        assert!(r.failures(Postulate::FiniteTemperance) > 0);
        let cx = r
            .outcome(Postulate::FiniteTemperance)
            .unwrap()
            .counterexample
            .clone()
            .unwrap();
        let w = cx.witness.unwrap();
        assert!(w.is_strict_subset(&cx.result_models));
        assert!(cx.base_models.union(&cx.input).is_subset(&w));
        assert!(!r.vacuity_redundancy_violated());
    }

    #[test]
    fn input_size_dependent_choice_breaks_uniformity() {
        let h = FiniteLogic::with_exec(HornSystem::new(Signature::parse("p,q").unwrap()), Exec::Sequential).unwrap();
        let op = |b: &[crate::logic::horn::HornFormula], m: &ModelSet| {
            let policy = if m.len().is_multiple_of(2) {
                SelectionPolicy::LexMax
            } else {
                SelectionPolicy::LexMin
            };
            h.evict(b, m, &policy).map(|r| r.result_base)
        };
        let r = h
            .check_eviction_postulates(&op, &h.exhaustive_cases().unwrap())
            .unwrap();
        assert!(r.failures(Postulate::Uniformity) > 0);
        let cx = r
            .outcome(Postulate::Uniformity)
            .unwrap()
            .counterexample
            .clone()
            .unwrap();
        assert!(cx.other_base.is_some() && cx.witness != Some(cx.result_models));
        for p in [Postulate::Success, Postulate::Inclusion, Postulate::FiniteRetainment] {
            assert_eq!(r.failures(p), 0);
        }
    }

    #[test]
    fn vacuity_follows_from_the_other_two() {
        let policy = SelectionPolicy::default();
        let k3 =
            FiniteLogic::with_exec(ThreeValSystem::kleene(Signature::parse("p").unwrap()), Exec::Sequential).unwrap();
        let cases = k3.exhaustive_cases().unwrap();
        for r in [
            k3.check_eviction_postulates(&k3.evict_op(&policy), &cases).unwrap(),
            k3.check_reception_postulates(&k3.receive_op(&policy), &cases).unwrap(),
        ] {
            assert!(r.passed());
            assert!(!r.vacuity_redundancy_violated());
        }
    }

    #[test]
    fn monotony_probe_on_classical_logic() {
        assert!(prop(Fragment::Full)
            .monotony_probe(&SelectionPolicy::default())
            .unwrap()
            .is_none());
    }

    #[test]
    fn exec_modes_agree() {
        let policy = SelectionPolicy::default();
        let seq = prop(Fragment::AtomsAndFalsum);
        let par = FiniteLogic::with_exec(
            PropSystem::new(Signature::parse("a,b").unwrap(), Fragment::AtomsAndFalsum),
            Exec::Parallel,
        )
        .unwrap();
        let cases = seq.exhaustive_cases().unwrap();
        assert_eq!(
            seq.check_eviction_postulates(&seq.evict_op(&policy), &cases).unwrap(),
            par.check_eviction_postulates(&par.evict_op(&policy), &cases).unwrap()
        );
    }
}
