//! Classical propositional logic over a declared finite signature, and the
//! two restricted fragments (atoms only; atoms plus falsum).

use crate::error::{Error, ParseError, Result};
use crate::exec::Exec;
use crate::modelset::ModelSet;
use crate::syntax::{unexpected, Cursor, Tok};
use crate::system::{Base, Catalog, SatSystem};

/// Ordered, duplicate-free list of atom names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    atoms: Vec<String>,
}

impl Signature {
    pub fn new<S: Into<String>>(atoms: impl IntoIterator<Item = S>) -> Result<Self> {
        let atoms: Vec<String> = atoms.into_iter().map(Into::into).collect();
        let joined = atoms.join(",");
        let parsed = crate::syntax::parse_atom_list(&joined)?;
        Ok(Signature { atoms: parsed })
    }

    pub fn parse(list: &str) -> Result<Self> {
        Ok(Signature {
            atoms: crate::syntax::parse_atom_list(list)?,
        })
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == name)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.atoms[i]
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(usize),
    Top,
    Bottom,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    /// Classical truth under `v` (indexed by atom).
    pub fn eval(&self, v: &[bool]) -> bool {
        match self {
            Formula::Atom(i) => v[*i],
            Formula::Top => true,
            Formula::Bottom => false,
            Formula::Not(f) => !f.eval(v),
            Formula::And(a, b) => a.eval(v) && b.eval(v),
            Formula::Or(a, b) => a.eval(v) || b.eval(v),
            Formula::Implies(a, b) => !a.eval(v) || b.eval(v),
        }
    }

    pub fn has_constants(&self) -> bool {
        match self {
            Formula::Top | Formula::Bottom => true,
            Formula::Atom(_) => false,
            Formula::Not(f) => f.has_constants(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => a.has_constants() || b.has_constants(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Implies(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            Formula::Not(_) => 4,
            _ => 5,
        }
    }

    /// ASCII rendering with minimal parentheses; parses back to the same tree.
    pub fn render(&self, sig: &Signature) -> String {
        match self {
            Formula::Atom(i) => sig.name(*i).to_string(),
            Formula::Top => "T".into(),
            Formula::Bottom => "F".into(),
            Formula::Not(f) => format!("!{}", f.render_at(sig, 4)),
            Formula::And(a, b) => format!("{} & {}", a.render_at(sig, 3), b.render_at(sig, 4)),
            Formula::Or(a, b) => format!("{} | {}", a.render_at(sig, 2), b.render_at(sig, 3)),
            Formula::Implies(a, b) => {
                format!("{} -> {}", a.render_at(sig, 2), b.render_at(sig, 1))
            }
        }
    }

    fn render_at(&self, sig: &Signature, min: u8) -> String {
        if self.precedence() < min {
            format!("({})", self.render(sig))
        } else {
            self.render(sig)
        }
    }
}

/// Parse the full propositional grammar; precedence `!` > `&` > `|` > `->`,
/// with `->` right-associative.
pub fn parse_prop(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    let mut cur = Cursor::new(text)?;
    let f = parse_implies(&mut cur, sig)?;
    cur.finish()?;
    Ok(f)
}

fn parse_implies(cur: &mut Cursor, sig: &Signature) -> Result<Formula, ParseError> {
    let lhs = parse_or(cur, sig)?;
    if cur.eat(&Tok::Arrow) {
        let rhs = parse_implies(cur, sig)?;
        return Ok(Formula::implies(lhs, rhs));
    }
    Ok(lhs)
}

fn parse_or(cur: &mut Cursor, sig: &Signature) -> Result<Formula, ParseError> {
    let mut lhs = parse_and(cur, sig)?;
    while cur.eat(&Tok::Or) {
        lhs = Formula::or(lhs, parse_and(cur, sig)?);
    }
    Ok(lhs)
}

fn parse_and(cur: &mut Cursor, sig: &Signature) -> Result<Formula, ParseError> {
    let mut lhs = parse_unary(cur, sig)?;
    while cur.eat(&Tok::And) {
        lhs = Formula::and(lhs, parse_unary(cur, sig)?);
    }
    Ok(lhs)
}

fn parse_unary(cur: &mut Cursor, sig: &Signature) -> Result<Formula, ParseError> {
    let t = cur.next();
    match t.tok {
        Tok::Not => Ok(Formula::not(parse_unary(cur, sig)?)),
        Tok::Top => Ok(Formula::Top),
        Tok::Bottom => Ok(Formula::Bottom),
        Tok::Atom(ref name) => sig
            .index(name)
            .map(Formula::Atom)
            .ok_or_else(|| ParseError::new(format!("undeclared atom `{name}`"), t.col)),
        Tok::LParen => {
            let f = parse_implies(cur, sig)?;
            cur.expect(&Tok::RParen)?;
            Ok(f)
        }
        _ => Err(unexpected(&t, "a formula")),
    }
}

/// Number of valuations over `n` atoms.
pub fn valuation_count(n: usize) -> usize {
    1 << n
}

/// Valuation number `index`: atom `j` is true iff bit `n-1-j` is clear, so
/// indices enumerate `tt, tf, ft, ff` for two atoms.
pub fn valuation(n: usize, index: usize) -> Vec<bool> {
    (0..n).map(|j| index & (1 << (n - 1 - j)) == 0).collect()
}

pub fn valuation_index(v: &[bool]) -> usize {
    let n = v.len();
    v.iter()
        .enumerate()
        .filter(|(_, &b)| !b)
        .map(|(j, _)| 1 << (n - 1 - j))
        .sum()
}

pub fn valuation_label(v: &[bool]) -> String {
    v.iter().map(|&b| if b { 't' } else { 'f' }).collect()
}

/// Single-formula base denoting exactly `target`: the disjunction, over the
/// target valuations, of their full literal conjunctions. The empty target
/// yields `a & !a` for the first atom.
pub fn dnf_base_for(target: &ModelSet, sig: &Signature) -> Base<Formula> {
    let n = sig.len();
    assert!(n > 0, "empty signature");
    let minterm = |index: usize| {
        let v = valuation(n, index);
        let lits = v.iter().enumerate().map(|(j, &b)| {
            if b {
                Formula::Atom(j)
            } else {
                Formula::not(Formula::Atom(j))
            }
        });
        lits.reduce(Formula::and).expect("non-empty signature")
    };
    let dnf = target.iter().map(minterm).reduce(Formula::or);
    vec![dnf.unwrap_or_else(|| Formula::and(Formula::Atom(0), Formula::not(Formula::Atom(0))))]
}

/// Which formulas a base may contain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fragment {
    /// The full grammar.
    Full,
    /// Bare atoms only.
    AtomsOnly,
    /// Bare atoms and falsum.
    AtomsAndFalsum,
}

impl Fragment {
    pub fn allows(&self, f: &Formula) -> bool {
        match self {
            Fragment::Full => true,
            Fragment::AtomsOnly => matches!(f, Formula::Atom(_)),
            Fragment::AtomsAndFalsum => matches!(f, Formula::Atom(_) | Formula::Bottom),
        }
    }
}

/// Default bound on the signature size for catalog construction.
pub const PROP_ATOM_BOUND: usize = 4;

#[derive(Clone, Debug)]
pub struct PropSystem {
    pub sig: Signature,
    pub fragment: Fragment,
    pub atom_bound: usize,
}

impl PropSystem {
    pub fn new(sig: Signature, fragment: Fragment) -> Self {
        PropSystem {
            sig,
            fragment,
            atom_bound: PROP_ATOM_BOUND,
        }
    }

    pub fn full(sig: Signature) -> Self {
        Self::new(sig, Fragment::Full)
    }

    fn check_bound(&self) -> Result<()> {
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
        Ok(())
    }

    /// The formulas a fragment base is drawn from (`None` for the full language).
    fn fragment_language(&self) -> Option<Vec<Formula>> {
        let atoms = (0..self.sig.len()).map(Formula::Atom);
        match self.fragment {
            Fragment::Full => None,
            Fragment::AtomsOnly => Some(atoms.collect()),
            Fragment::AtomsAndFalsum => Some(std::iter::once(Formula::Bottom).chain(atoms).collect()),
        }
    }

    /// Every subset of the fragment language, by size then position.
    fn fragment_bases(&self, language: &[Formula]) -> Vec<Base<Formula>> {
        let k = language.len();
        let mut masks: Vec<u32> = (0..1u32 << k).collect();
        masks.sort_by_key(|m| (m.count_ones(), *m));
        masks
            .into_iter()
            .map(|m| {
                (0..k)
                    .filter(|i| m & (1 << i) != 0)
                    .map(|i| language[i].clone())
                    .collect()
            })
            .collect()
    }
}

impl SatSystem for PropSystem {
    type Formula = Formula;

    fn name(&self) -> String {
        match self.fragment {
            Fragment::Full => "prop".into(),
            Fragment::AtomsOnly => "prop-t".into(),
            Fragment::AtomsAndFalsum => "prop-p".into(),
        }
    }

    fn universe_size(&self) -> usize {
        valuation_count(self.sig.len())
    }

    fn model_label(&self, model: usize) -> String {
        valuation_label(&valuation(self.sig.len(), model))
    }

    fn parse_formula(&self, text: &str) -> Result<Formula, ParseError> {
        let f = parse_prop(text, &self.sig)?;
        if !self.fragment.allows(&f) {
            return Err(ParseError::new(
                format!("formula outside the {} fragment", self.name()),
                1,
            ));
        }
        Ok(f)
    }

    fn render(&self, formula: &Formula) -> String {
        formula.render(&self.sig)
    }

    fn satisfies(&self, model: usize, formula: &Formula) -> bool {
        formula.eval(&valuation(self.sig.len(), model))
    }

    fn build_catalog(&self, exec: Exec) -> Result<Catalog<Formula>> {
        self.check_bound()?;
        let universe = self.universe_size();
        let mut catalog = Catalog::new(universe);
        match self.fragment_language() {
            None => {
                let sets: Vec<ModelSet> = ModelSet::all_subsets(universe)?.collect();
                let checked: Vec<Result<(ModelSet, Base<Formula>)>> = exec.map(&sets, |s| {
                    let base = dnf_base_for(s, &self.sig);
                    let actual = self.models_of(&base);
                    if actual != *s {
                        return Err(Error::WitnessMismatch {
                            set: self.render_set(s),
                            actual: self.render_set(&actual),
                        });
                    }
                    Ok((*s, base))
                });
                catalog.extend_unchecked(checked.into_iter().collect::<Result<Vec<_>>>()?);
            }
            Some(language) => {
                for base in self.fragment_bases(&language) {
                    catalog.insert_base(self, base);
                }
            }
        }
        Ok(catalog)
    }

    fn sample_bases(&self, catalog: &Catalog<Formula>) -> Vec<Base<Formula>> {
        match self.fragment_language() {
            None => catalog.entries().map(|(_, b)| b.clone()).collect(),
            Some(language) => self.fragment_bases(&language),
        }
    }
}
