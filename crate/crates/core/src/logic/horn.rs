//! Propositional Horn logic: facts and implications with an atomic (or
//! falsum) head, interpreted over classical valuations.

use std::collections::BTreeSet;

use crate::error::{Error, ParseError, Result};
use crate::exec::Exec;
use crate::logic::prop::{valuation, valuation_count, valuation_label, Signature};
use crate::modelset::ModelSet;
use crate::syntax::{unexpected, Cursor, Tok};
use crate::system::{Base, Catalog, SatSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Head {
    Atom(usize),
    Bottom,
}

/// `body -> head`; an empty body is a fact.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause {
    pub body: BTreeSet<usize>,
    pub head: Head,
}

impl Clause {
    pub fn fact(head: Head) -> Self {
        Clause {
            body: BTreeSet::new(),
            head,
        }
    }

    pub fn holds(&self, v: &[bool]) -> bool {
        let fires = self.body.iter().all(|&a| v[a]);
        !fires
            || match self.head {
                Head::Atom(a) => v[a],
                Head::Bottom => false,
            }
    }

    fn render(&self, sig: &Signature) -> String {
        let head = match self.head {
            Head::Atom(a) => sig.name(a).to_string(),
            Head::Bottom => "F".into(),
        };
        if self.body.is_empty() {
            head
        } else {
            let body: Vec<&str> = self.body.iter().map(|&a| sig.name(a)).collect();
            format!("{} -> {head}", body.join(" & "))
        }
    }
}

/// A conjunction of clauses, normalised: duplicates dropped, order kept.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HornFormula {
    pub clauses: Vec<Clause>,
}

impl HornFormula {
    pub fn new(clauses: impl IntoIterator<Item = Clause>) -> Self {
        let mut out: Vec<Clause> = Vec::new();
        for c in clauses {
            if !out.contains(&c) {
                out.push(c);
            }
        }
        HornFormula { clauses: out }
    }

    pub fn holds(&self, v: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.holds(v))
    }

    pub fn render(&self, sig: &Signature) -> String {
        if self.clauses.len() == 1 {
            return self.clauses[0].render(sig);
        }
        self.clauses
            .iter()
            .map(|c| {
                if c.body.is_empty() {
                    c.render(sig)
                } else {
                    format!("({})", c.render(sig))
                }
            })
            .collect::<Vec<_>>()
            .join(" & ")
    }
}

/// Classical truth of every clause under `v`.
pub fn horn_sat(v: &[bool], f: &HornFormula) -> bool {
    f.holds(v)
}

enum Item {
    Atom(usize),
    Bottom(usize),
    Group(Vec<Clause>, usize),
}

/// Parse `p`, `p & q -> r`, `p -> F`, and parenthesised conjunctions thereof.
pub fn parse_horn(text: &str, sig: &Signature) -> Result<HornFormula, ParseError> {
    let mut cur = Cursor::new(text)?;
    let clauses = parse_horn_expr(&mut cur, sig)?;
    cur.finish()?;
    Ok(HornFormula::new(clauses))
}

fn parse_horn_expr(cur: &mut Cursor, sig: &Signature) -> Result<Vec<Clause>, ParseError> {
    let mut items = vec![parse_item(cur, sig)?];
    while cur.eat(&Tok::And) {
        items.push(parse_item(cur, sig)?);
    }
    if cur.eat(&Tok::Arrow) {
        let mut body = BTreeSet::new();
        for item in &items {
            match item {
                Item::Atom(a) => {
                    body.insert(*a);
                }
                Item::Bottom(col) => return Err(ParseError::new("falsum is not allowed in a clause body", *col)),
                Item::Group(_, col) => {
                    return Err(ParseError::new("a clause body must be a conjunction of atoms", *col))
                }
            }
        }
        let t = cur.next();
        let head = match t.tok {
            Tok::Atom(ref name) => Head::Atom(
                sig.index(name)
                    .ok_or_else(|| ParseError::new(format!("undeclared atom `{name}`"), t.col))?,
            ),
            Tok::Bottom => Head::Bottom,
            _ => return Err(unexpected(&t, "an atom or `F` as clause head")),
        };
        return Ok(vec![Clause { body, head }]);
    }
    Ok(items
        .into_iter()
        .flat_map(|item| match item {
            Item::Atom(a) => vec![Clause::fact(Head::Atom(a))],
            Item::Bottom(_) => vec![Clause::fact(Head::Bottom)],
            Item::Group(cs, _) => cs,
        })
        .collect())
}

fn parse_item(cur: &mut Cursor, sig: &Signature) -> Result<Item, ParseError> {
    let t = cur.next();
    match t.tok {
        Tok::Atom(ref name) => sig
            .index(name)
            .map(Item::Atom)
            .ok_or_else(|| ParseError::new(format!("undeclared atom `{name}`"), t.col)),
        Tok::Bottom => Ok(Item::Bottom(t.col)),
        Tok::LParen => {
            let inner = parse_horn_expr(cur, sig)?;
            cur.expect(&Tok::RParen)?;
            Ok(Item::Group(inner, t.col))
        }
        Tok::Not | Tok::Or => Err(ParseError::new(
            "negation and disjunction are not Horn connectives",
            t.col,
        )),
        _ => Err(unexpected(&t, "an atom, `F` or `(`")),
    }
}

pub const HORN_ATOM_BOUND: usize = 4;

#[derive(Clone, Debug)]
pub struct HornSystem {
    pub sig: Signature,
    pub atom_bound: usize,
}

impl HornSystem {
    pub fn new(sig: Signature) -> Self {
        HornSystem {
            sig,
            atom_bound: HORN_ATOM_BOUND,
        }
    }

    /// Every non-tautological clause (head not in body), most complex first
    /// and the falsum fact last, so that witness reduction keeps simple clauses.
    pub fn all_clauses(&self) -> Vec<Clause> {
        let n = self.sig.len();
        let mut out = Vec::new();
        for mask in 0..1u32 << n {
            let body: BTreeSet<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            for head in (0..n).map(Head::Atom).chain([Head::Bottom]) {
                if let Head::Atom(a) = head {
                    if body.contains(&a) {
                        continue;
                    }
                }
                out.push(Clause {
                    body: body.clone(),
                    head,
                });
            }
        }
        out.sort_by(|a, b| {
            (b.body.len(), a.head == Head::Bottom)
                .cmp(&(a.body.len(), b.head == Head::Bottom))
                .then_with(|| a.cmp(b))
        });
        out
    }

    fn tautology(&self) -> HornFormula {
        HornFormula::new([Clause {
            body: [0].into_iter().collect(),
            head: Head::Atom(0),
        }])
    }

    /// Human names `ha..hd` for the four valuations over two atoms.
    pub fn alias(&self, model: usize) -> Option<&'static str> {
        if self.sig.len() != 2 {
            return None;
        }
        Some(match model {
            3 => "ha",
            1 => "hb",
            2 => "hc",
            0 => "hd",
            _ => return None,
        })
    }

    /// Does `set` contain the component-wise meet of any two of its valuations?
    pub fn meet_closed(&self, set: &ModelSet) -> bool {
        let n = self.sig.len();
        set.iter().all(|a| {
            set.iter().all(|b| {
                let va = valuation(n, a);
                let vb = valuation(n, b);
                let meet: Vec<bool> = va.iter().zip(&vb).map(|(x, y)| *x && *y).collect();
                set.contains(crate::logic::prop::valuation_index(&meet))
            })
        })
    }
}

impl SatSystem for HornSystem {
    type Formula = HornFormula;

    fn name(&self) -> String {
        "horn".into()
    }

    fn universe_size(&self) -> usize {
        valuation_count(self.sig.len())
    }

    fn model_label(&self, model: usize) -> String {
        valuation_label(&valuation(self.sig.len(), model))
    }

    fn parse_model(&self, label: &str) -> Option<usize> {
        (0..self.universe_size()).find(|&m| self.model_label(m) == label || self.alias(m) == Some(label))
    }

    fn parse_formula(&self, text: &str) -> Result<HornFormula, ParseError> {
        parse_horn(text, &self.sig)
    }

    fn render(&self, formula: &HornFormula) -> String {
        formula.render(&self.sig)
    }

    fn satisfies(&self, model: usize, formula: &HornFormula) -> bool {
        formula.holds(&valuation(self.sig.len(), model))
    }

    fn build_catalog(&self, exec: Exec) -> Result<Catalog<HornFormula>> {
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
        let n = self.sig.len();
        let universe = self.universe_size();
        let clauses = self.all_clauses();
        let vals: Vec<Vec<bool>> = (0..universe).map(|m| valuation(n, m)).collect();
        // truth[c] = set of valuations satisfying clause c
        let truth: Vec<ModelSet> = clauses
            .iter()
            .map(|c| ModelSet::from_indices(universe, (0..universe).filter(|&m| c.holds(&vals[m]))).expect("in range"))
            .collect();

        let sets: Vec<ModelSet> = ModelSet::all_subsets(universe)?.collect();
        let found: Vec<Option<(ModelSet, Base<HornFormula>)>> = exec.map(&sets, |s| {
            let mut chosen: Vec<usize> = (0..clauses.len()).filter(|&c| s.is_subset(&truth[c])).collect();
            let denotes = |idx: &[usize]| {
                idx.iter()
                    .fold(ModelSet::full(universe), |acc, &c| acc.intersection(&truth[c]))
            };
            if denotes(&chosen) != *s {
                return None;
            }
            let mut i = 0;
            while i < chosen.len() {
                let mut without = chosen.clone();
                without.remove(i);
                if denotes(&without) == *s {
                    chosen = without;
                } else {
                    i += 1;
                }
            }
            let base: Base<HornFormula> = if chosen.is_empty() {
                vec![self.tautology()]
            } else {
                chosen.iter().map(|&c| HornFormula::new([clauses[c].clone()])).collect()
            };
            Some((*s, base))
        });
        let mut catalog = Catalog::new(universe);
        for (set, base) in found.into_iter().flatten() {
            catalog.insert_verified(self, set, base)?;
        }
        Ok(catalog)
    }
}
