//! Strong-Kleene three-valued logic with two satisfaction relations:
//! Kleene (value `t`) and Priest (value `t` or `u`).

use std::collections::BTreeMap;

use crate::error::{Error, ParseError, Result};
use crate::exec::Exec;
use crate::logic::prop::{parse_prop, Formula, Signature};
use crate::modelset::ModelSet;
use crate::system::{Catalog, SatSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Val3 {
    F,
    U,
    T,
}

impl Val3 {
    pub fn negate(self) -> Val3 {
        match self {
            Val3::F => Val3::T,
            Val3::U => Val3::U,
            Val3::T => Val3::F,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Val3::F => 'f',
            Val3::U => 'u',
            Val3::T => 't',
        }
    }
}

/// Implication is read materially, as `!a | b`.
pub fn eval3(v: &[Val3], f: &Formula) -> Val3 {
    match f {
        Formula::Atom(a) => v[*a],
        Formula::Top => Val3::T,
        Formula::Bottom => Val3::F,
        Formula::Not(x) => eval3(v, x).negate(),
        Formula::And(a, b) => eval3(v, a).min(eval3(v, b)),
        Formula::Or(a, b) => eval3(v, a).max(eval3(v, b)),
        Formula::Implies(a, b) => eval3(v, a).negate().max(eval3(v, b)),
    }
}

pub fn valuation3_count(n: usize) -> usize {
    3usize.pow(n as u32)
}

/// Base-3 digits of `index`, first atom most significant; digit 0 is `t`,
/// 1 is `u`, 2 is `f`.
pub fn valuation3(n: usize, index: usize) -> Vec<Val3> {
    let mut out = vec![Val3::T; n];
    let mut rest = index;
    for slot in out.iter_mut().rev() {
        *slot = match rest % 3 {
            0 => Val3::T,
            1 => Val3::U,
            _ => Val3::F,
        };
        rest /= 3;
    }
    out
}

pub fn valuation3_index(v: &[Val3]) -> usize {
    v.iter().fold(0, |acc, x| {
        acc * 3
            + match x {
                Val3::T => 0,
                Val3::U => 1,
                Val3::F => 2,
            }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Kleene,
    Priest,
}

/// Where a formula is `t` and where it is `f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TfPair {
    pub t: ModelSet,
    pub f: ModelSet,
}

pub const THREEVAL_ATOM_BOUND: usize = 2;

#[derive(Clone, Debug)]
pub struct ThreeValSystem {
    pub sig: Signature,
    pub variant: Variant,
    pub atom_bound: usize,
}

impl ThreeValSystem {
    pub fn new(sig: Signature, variant: Variant) -> Self {
        ThreeValSystem {
            sig,
            variant,
            atom_bound: THREEVAL_ATOM_BOUND,
        }
    }

    pub fn kleene(sig: Signature) -> Self {
        Self::new(sig, Variant::Kleene)
    }

    pub fn priest(sig: Signature) -> Self {
        Self::new(sig, Variant::Priest)
    }

    pub fn tf_pair(&self, f: &Formula) -> TfPair {
        let n = self.sig.len();
        let u = self.universe_size();
        let mut t = ModelSet::empty(u);
        let mut fs = ModelSet::empty(u);
        for m in 0..u {
            match eval3(&valuation3(n, m), f) {
                Val3::T => t.insert(m),
                Val3::F => fs.insert(m),
                Val3::U => {}
            }
        }
        TfPair { t, f: fs }
    }

    /// Every distinct (t-set, f-set) pair over the atoms, closed under the
    /// connectives, with the first formula found for each.
    pub fn tf_fixpoint(&self) -> BTreeMap<TfPair, Formula> {
        let mut found: BTreeMap<TfPair, Formula> = BTreeMap::new();
        let mut order: Vec<Formula> = Vec::new();
        for a in 0..self.sig.len() {
            let f = Formula::Atom(a);
            if found.insert(self.tf_pair(&f), f.clone()).is_none() {
                order.push(f);
            }
        }
        loop {
            let snapshot = order.clone();
            let mut fresh = Vec::new();
            {
                let mut offer = |f: Formula| {
                    let key = self.tf_pair(&f);
                    if let std::collections::btree_map::Entry::Vacant(e) = found.entry(key) {
                        e.insert(f.clone());
                        fresh.push(f);
                    }
                };
                for f in &snapshot {
                    offer(Formula::not(f.clone()));
                }
                for (i, a) in snapshot.iter().enumerate() {
                    for b in &snapshot[i..] {
                        offer(Formula::and(a.clone(), b.clone()));
                        offer(Formula::or(a.clone(), b.clone()));
                    }
                }
            }
            if fresh.is_empty() {
                return found;
            }
            order.extend(fresh);
        }
    }

    fn designated(&self, pair: &TfPair) -> ModelSet {
        match self.variant {
            Variant::Kleene => pair.t,
            Variant::Priest => pair.f.complement(),
        }
    }

    /// The valuation assigning `u` to every atom.
    pub fn all_u(&self) -> usize {
        valuation3_index(&vec![Val3::U; self.sig.len()])
    }
}

impl SatSystem for ThreeValSystem {
    type Formula = Formula;

    fn name(&self) -> String {
        match self.variant {
            Variant::Kleene => "k3".into(),
            Variant::Priest => "p3".into(),
        }
    }

    fn universe_size(&self) -> usize {
        valuation3_count(self.sig.len())
    }

    fn model_label(&self, model: usize) -> String {
        valuation3(self.sig.len(), model).iter().map(|v| v.symbol()).collect()
    }

    fn parse_formula(&self, text: &str) -> Result<Formula, ParseError> {
        let f = parse_prop(text, &self.sig)?;
        if f.has_constants() {
            let col = text.find(['T', 'F']).map_or(1, |i| text[..i].chars().count() + 1);
            return Err(ParseError::new(
                "truth constants are not part of the three-valued language",
                col,
            ));
        }
        Ok(f)
    }

    fn render(&self, formula: &Formula) -> String {
        formula.render(&self.sig)
    }

    fn satisfies(&self, model: usize, formula: &Formula) -> bool {
        let v = eval3(&valuation3(self.sig.len(), model), formula);
        match self.variant {
            Variant::Kleene => v == Val3::T,
            Variant::Priest => v != Val3::F,
        }
    }

    fn build_catalog(&self, _exec: Exec) -> Result<Catalog<Formula>> {
        if self.sig.len() > self.atom_bound {
            return Err(Error::BoundExceeded {
                what: "signature size",
                size: self.sig.len(),
                bound: self.atom_bound,
            });
        }
        if self.sig.is_empty() {
            return Err(Error::Precondition("empty signature".into()));
        }
        let mut catalog = Catalog::new(self.universe_size());
        catalog.insert_verified(self, ModelSet::full(self.universe_size()), vec![])?;
        for (pair, f) in self.tf_fixpoint() {
            catalog.insert_verified(self, self.designated(&pair), vec![f])?;
        }
        catalog.close_under_intersection(self)?;
        Ok(catalog)
    }
}
