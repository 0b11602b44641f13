//! Gödel fuzzy logic with a satisfaction threshold θ, abstracted to the
//! finitely many orderings of the atom values around θ and 0.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, ParseError, Result};
use crate::exec::Exec;
use crate::logic::prop::{parse_prop, Formula, Signature};
use crate::system::{Catalog, SatSystem};

/// An ordered partition of the atoms plus the threshold marker `s`, lowest
/// block first. `zero_flag` pins the lowest block to the value 0.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PreorderClass {
    /// Element `n` (the number of atoms) stands for the threshold marker.
    pub blocks: Vec<Vec<usize>>,
    pub zero_flag: bool,
}

/// Symbolic truth value inside one class: 0 is ZERO, `one` is ONE.
pub type SymValue = usize;

impl PreorderClass {
    fn marker(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum::<usize>() - 1
    }

    fn block_of(&self, element: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(&element))
            .expect("element in partition")
    }

    /// Rank of ONE; when θ = 1 the marker's block is the top block and
    /// shares rank with ONE.
    pub fn one(&self, theta_is_one: bool) -> SymValue {
        if theta_is_one {
            self.blocks.len()
        } else {
            self.blocks.len() + 1
        }
    }

    pub fn rank_of(&self, element: usize) -> SymValue {
        let b = self.block_of(element);
        if b == 0 && self.zero_flag {
            0
        } else {
            b + 1
        }
    }

    pub fn threshold(&self) -> SymValue {
        self.rank_of(self.marker())
    }

    pub fn label(&self, sig: &Signature) -> String {
        let marker = self.marker();
        let name = |e: usize| {
            if e == marker {
                "s".to_string()
            } else {
                sig.name(e).to_string()
            }
        };
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&e| name(e)).collect::<Vec<_>>().join("="))
            .collect();
        let body = blocks.join("<");
        if self.zero_flag {
            format!("0={body}")
        } else {
            body
        }
    }
}

/// Every ordered partition of `atoms` plus the marker, each with and without
/// the zero flag where allowed. With `theta_is_one` no block sits above the
/// marker.
pub fn enumerate_classes(atoms: usize, theta_is_one: bool) -> Result<Vec<PreorderClass>> {
    if atoms == 0 {
        return Err(Error::Precondition("at least one atom is required".into()));
    }
    if atoms > 3 {
        return Err(Error::BoundExceeded {
            what: "signature size",
            size: atoms,
            bound: 3,
        });
    }
    let m = atoms + 1;
    let mut out = Vec::new();
    for k in 1..=m {
        for code in 0..k.pow(m as u32) {
            // digit e of `code` in base k is the block of element e
            let assign: Vec<usize> = (0..m).map(|e| code / k.pow((m - 1 - e) as u32) % k).collect();
            if !(0..k).all(|b| assign.contains(&b)) {
                continue;
            }
            let blocks: Vec<Vec<usize>> = (0..k).map(|b| (0..m).filter(|&e| assign[e] == b).collect()).collect();
            let marker_block = assign[atoms];
            if theta_is_one && marker_block != k - 1 {
                continue;
            }
            out.push(PreorderClass {
                blocks: blocks.clone(),
                zero_flag: false,
            });
            if marker_block != 0 {
                out.push(PreorderClass {
                    blocks,
                    zero_flag: true,
                });
            }
        }
    }
    Ok(out)
}

pub fn eval_goedel(class: &PreorderClass, theta_is_one: bool, f: &Formula) -> SymValue {
    let one = class.one(theta_is_one);
    match f {
        Formula::Atom(a) => class.rank_of(*a),
        Formula::Top => one,
        Formula::Bottom => 0,
        Formula::Not(x) => {
            if eval_goedel(class, theta_is_one, x) == 0 {
                one
            } else {
                0
            }
        }
        Formula::And(a, b) => eval_goedel(class, theta_is_one, a).min(eval_goedel(class, theta_is_one, b)),
        Formula::Or(a, b) => eval_goedel(class, theta_is_one, a).max(eval_goedel(class, theta_is_one, b)),
        Formula::Implies(a, b) => {
            let x = eval_goedel(class, theta_is_one, a);
            let y = eval_goedel(class, theta_is_one, b);
            if x <= y {
                one
            } else {
                y
            }
        }
    }
}

/// The class induced by numeric atom values in `[0,1]` and threshold `theta`.
pub fn class_of(values: &[f64], theta: f64) -> Result<PreorderClass> {
    if values.is_empty() {
        return Err(Error::Precondition("at least one atom is required".into()));
    }
    if !(theta > 0.0 && theta <= 1.0) || values.iter().any(|v| !(0.0..=1.0).contains(v)) {
        return Err(Error::Precondition(
            "values must lie in [0,1] and theta in (0,1]".into(),
        ));
    }
    let mut all: Vec<(f64, usize)> = values.iter().copied().zip(0..).collect();
    all.push((theta, values.len()));
    all.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut last = f64::NAN;
    for (v, e) in &all {
        if *v == last {
            blocks.last_mut().expect("nonempty").push(*e);
        } else {
            blocks.push(vec![*e]);
            last = *v;
        }
    }
    Ok(PreorderClass {
        blocks,
        zero_flag: all[0].0 == 0.0,
    })
}

pub const GOEDEL_ATOM_BOUND: usize = 2;

#[derive(Clone, Debug)]
pub struct GoedelSystem {
    pub sig: Signature,
    pub theta: Rational64,
    /// Also require `!a | a` (first atom) for satisfaction.
    pub excluded_middle: bool,
    classes: Vec<PreorderClass>,
}

impl GoedelSystem {
    pub fn new(sig: Signature, theta: Rational64, excluded_middle: bool) -> Result<Self> {
        if theta <= Rational64::zero() || theta > Rational64::one() {
            return Err(Error::Precondition(format!("theta must lie in (0,1], got {theta}")));
        }
        if sig.index("s").is_some() {
            return Err(Error::Precondition(
                "atom `s` is reserved for the threshold marker".into(),
            ));
        }
        if sig.len() > GOEDEL_ATOM_BOUND {
            return Err(Error::BoundExceeded {
                what: "signature size",
                size: sig.len(),
                bound: GOEDEL_ATOM_BOUND,
            });
        }
        let classes = enumerate_classes(sig.len(), theta.is_one())?;
        Ok(GoedelSystem {
            sig,
            theta,
            excluded_middle,
            classes,
        })
    }

    pub fn theta_is_one(&self) -> bool {
        self.theta.is_one()
    }

    pub fn classes(&self) -> &[PreorderClass] {
        &self.classes
    }

    pub fn class_index(&self, class: &PreorderClass) -> Option<usize> {
        self.classes.iter().position(|c| c == class)
    }

    pub fn eval(&self, model: usize, f: &Formula) -> SymValue {
        eval_goedel(&self.classes[model], self.theta_is_one(), f)
    }

    fn conjunct_holds(&self, model: usize) -> bool {
        let a = Formula::Atom(0);
        let c = Formula::or(Formula::not(a.clone()), a);
        self.eval(model, &c) >= self.classes[model].threshold()
    }

    /// Symbolic value vector of `f` over every class.
    pub fn vector(&self, f: &Formula) -> Vec<SymValue> {
        (0..self.classes.len()).map(|m| self.eval(m, f)).collect()
    }

    /// Distinct value vectors reachable from the atoms, each with a formula.
    pub fn vector_fixpoint(&self) -> BTreeMap<Vec<SymValue>, Formula> {
        let ones: Vec<SymValue> = self.classes.iter().map(|c| c.one(self.theta_is_one())).collect();
        let mut found: BTreeMap<Vec<SymValue>, Formula> = BTreeMap::new();
        let mut order: Vec<(Vec<SymValue>, Formula)> = Vec::new();
        for a in 0..self.sig.len() {
            let f = Formula::Atom(a);
            let v = self.vector(&f);
            if !found.contains_key(&v) {
                found.insert(v.clone(), f.clone());
                order.push((v, f));
            }
        }
        loop {
            let snapshot = order.clone();
            let mut fresh = Vec::new();
            let mut offer = |v: Vec<SymValue>, f: &dyn Fn() -> Formula| {
                if !found.contains_key(&v) {
                    let f = f();
                    found.insert(v.clone(), f.clone());
                    fresh.push((v, f));
                }
            };
            for (v, f) in &snapshot {
                let nv = v.iter().zip(&ones).map(|(&x, &o)| if x == 0 { o } else { 0 }).collect();
                offer(nv, &|| Formula::not(f.clone()));
            }
            for (va, fa) in &snapshot {
                for (vb, fb) in &snapshot {
                    let and = va.iter().zip(vb).map(|(x, y)| *x.min(y)).collect();
                    offer(and, &|| Formula::and(fa.clone(), fb.clone()));
                    let or = va.iter().zip(vb).map(|(x, y)| *x.max(y)).collect();
                    offer(or, &|| Formula::or(fa.clone(), fb.clone()));
                    let imp = va
                        .iter()
                        .zip(vb)
                        .zip(&ones)
                        .map(|((x, y), o)| if x <= y { *o } else { *y })
                        .collect();
                    offer(imp, &|| Formula::implies(fa.clone(), fb.clone()));
                }
            }
            if fresh.is_empty() {
                return found;
            }
            order.extend(fresh);
        }
    }
}

impl fmt::Display for GoedelSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "goedel(theta={})", self.theta)
    }
}

impl SatSystem for GoedelSystem {
    type Formula = Formula;

    fn name(&self) -> String {
        "goedel".into()
    }

    fn universe_size(&self) -> usize {
        self.classes.len()
    }

    fn model_label(&self, model: usize) -> String {
        self.classes[model].label(&self.sig)
    }

    fn parse_formula(&self, text: &str) -> Result<Formula, ParseError> {
        parse_prop(text, &self.sig)
    }

    fn render(&self, formula: &Formula) -> String {
        formula.render(&self.sig)
    }

    fn satisfies(&self, model: usize, formula: &Formula) -> bool {
        self.eval(model, formula) >= self.classes[model].threshold()
    }

    fn satisfies_base(&self, model: usize, base: &[Formula]) -> bool {
        (!self.excluded_middle || self.conjunct_holds(model)) && base.iter().all(|f| self.satisfies(model, f))
    }

    fn build_catalog(&self, _exec: Exec) -> Result<Catalog<Formula>> {
        if self.classes.len() > crate::modelset::MAX_UNIVERSE {
            return Err(Error::BoundExceeded {
                what: "class universe",
                size: self.classes.len(),
                bound: crate::modelset::MAX_UNIVERSE,
            });
        }
        let mut catalog = Catalog::new(self.universe_size());
        catalog.insert_base(self, vec![]);
        let a = Formula::Atom(0);
        catalog.insert_base(self, vec![Formula::and(Formula::not(a.clone()), a)]);
        for f in self.vector_fixpoint().into_values() {
            catalog.insert_base(self, vec![f]);
        }
        catalog.close_under_intersection(self)?;
        Ok(catalog)
    }
}
