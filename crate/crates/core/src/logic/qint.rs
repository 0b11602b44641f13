//! Closed rational intervals as formulas over the rational line, with exact
//! arithmetic. Targets are finite unions of intervals whose endpoints may be
//! rational or square roots of non-square rationals.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{ChangeKind, Error, Incompatibility, ParseError, Result};
use crate::poset::Compatibility;
use crate::select::SelectionPolicy;

/// A rational, or the positive square root of a positive non-square rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Real {
    Rat(BigRational),
    Sqrt(BigRational),
}

fn is_rational_square(r: &BigRational) -> bool {
    let sq = |n: &BigInt| {
        let s = n.sqrt();
        &s * &s == *n
    };
    !r.is_negative() && sq(r.numer()) && sq(r.denom())
}

fn rat_sqrt(r: &BigRational) -> BigRational {
    BigRational::new(r.numer().sqrt(), r.denom().sqrt())
}

impl Real {
    pub fn int(n: i64) -> Real {
        Real::Rat(BigRational::from_integer(n.into()))
    }

    pub fn ratio(n: i64, d: i64) -> Real {
        Real::Rat(BigRational::new(n.into(), d.into()))
    }

    /// `sqrt(r)`, collapsing to a rational when `r` is a rational square.
    pub fn sqrt(r: BigRational) -> Result<Real> {
        if r.is_negative() {
            return Err(Error::Precondition("square root of a negative number".into()));
        }
        if is_rational_square(&r) {
            Ok(Real::Rat(rat_sqrt(&r)))
        } else {
            Ok(Real::Sqrt(r))
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Real::Rat(q) => Some(q),
            Real::Sqrt(_) => None,
        }
    }

    fn cmp_rat(&self, q: &BigRational) -> Ordering {
        match self {
            Real::Rat(p) => p.cmp(q),
            Real::Sqrt(r) => {
                if q.is_negative() {
                    Ordering::Greater
                } else {
                    r.cmp(&(q * q))
                }
            }
        }
    }

    /// A rational bound on each side: `lo <= self <= hi`.
    fn rational_bracket(&self) -> (BigRational, BigRational) {
        match self {
            Real::Rat(q) => (q.clone(), q.clone()),
            // 0 < sqrt(r) < (r + 1) / 2 for r != 1
            Real::Sqrt(r) => (
                BigRational::zero(),
                (r + BigRational::one()) / BigRational::from_integer(2.into()),
            ),
        }
    }
}

impl Ord for Real {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Real::Rat(a), Real::Rat(b)) => a.cmp(b),
            (Real::Sqrt(a), Real::Sqrt(b)) => a.cmp(b),
            (a, Real::Rat(q)) => a.cmp_rat(q),
            (Real::Rat(q), b) => b.cmp_rat(q).reverse(),
        }
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Rat(q) => write!(f, "{q}"),
            Real::Sqrt(r) => write!(f, "sqrt({r})"),
        }
    }
}

fn two() -> BigRational {
    BigRational::from_integer(2.into())
}

/// A rational strictly between `lo` and `hi`: the midpoint when both are
/// rational, otherwise found by bisection of a rational bracket.
pub fn rational_between(lo: &Real, hi: &Real) -> Result<BigRational> {
    if lo >= hi {
        return Err(Error::Precondition(format!("empty range ({lo}, {hi})")));
    }
    if let (Real::Rat(a), Real::Rat(b)) = (lo, hi) {
        return Ok((a + b) / two());
    }
    let mut l = lo.rational_bracket().0;
    let mut h = hi.rational_bracket().1;
    loop {
        let m = (&l + &h) / two();
        if lo.cmp_rat(&m) != Ordering::Less {
            l = m;
        } else if hi.cmp_rat(&m) != Ordering::Greater {
            h = m;
        } else {
            return Ok(m);
        }
    }
}

/// One end of an interval; which end is known from context.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Bound {
    Unbounded,
    Closed(Real),
    Open(Real),
}

impl Bound {
    /// Irrational points are not in the rational line, so their ends are open.
    fn closed(x: Real) -> Bound {
        match x {
            Real::Sqrt(_) => Bound::Open(x),
            _ => Bound::Closed(x),
        }
    }

    fn value(&self) -> Option<&Real> {
        match self {
            Bound::Unbounded => None,
            Bound::Closed(x) | Bound::Open(x) => Some(x),
        }
    }

    fn is_closed(&self) -> bool {
        matches!(self, Bound::Closed(_))
    }

    fn flip(&self) -> Bound {
        match self {
            Bound::Unbounded => Bound::Unbounded,
            Bound::Closed(x) => Bound::Open(x.clone()),
            Bound::Open(x) => Bound::closed(x.clone()),
        }
    }
}

/// Order lower bounds: which one starts first.
fn cmp_lower(a: &Bound, b: &Bound) -> Ordering {
    match (a, b) {
        (Bound::Unbounded, Bound::Unbounded) => Ordering::Equal,
        (Bound::Unbounded, _) => Ordering::Less,
        (_, Bound::Unbounded) => Ordering::Greater,
        _ => {
            let (x, y) = (a.value().unwrap(), b.value().unwrap());
            x.cmp(y).then_with(|| b.is_closed().cmp(&a.is_closed()))
        }
    }
}

/// Order upper bounds: which one ends last.
fn cmp_upper(a: &Bound, b: &Bound) -> Ordering {
    match (a, b) {
        (Bound::Unbounded, Bound::Unbounded) => Ordering::Equal,
        (Bound::Unbounded, _) => Ordering::Greater,
        (_, Bound::Unbounded) => Ordering::Less,
        _ => {
            let (x, y) = (a.value().unwrap(), b.value().unwrap());
            x.cmp(y).then_with(|| a.is_closed().cmp(&b.is_closed()))
        }
    }
}

/// A convex subset of the rational line.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Component {
    pub lo: Bound,
    pub hi: Bound,
}

impl Component {
    pub fn new(lo: Bound, hi: Bound) -> Component {
        let fix = |b: Bound| match b {
            Bound::Closed(x) => Bound::closed(x),
            other => other,
        };
        Component {
            lo: fix(lo),
            hi: fix(hi),
        }
    }

    pub fn is_empty(&self) -> bool {
        match (self.lo.value(), self.hi.value()) {
            (Some(a), Some(b)) => match a.cmp(b) {
                Ordering::Greater => true,
                Ordering::Equal => !(self.lo.is_closed() && self.hi.is_closed()),
                Ordering::Less => false,
            },
            _ => false,
        }
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        let above = match &self.lo {
            Bound::Unbounded => true,
            Bound::Closed(x) => x.cmp_rat(q) != Ordering::Greater,
            Bound::Open(x) => x.cmp_rat(q) == Ordering::Less,
        };
        let below = match &self.hi {
            Bound::Unbounded => true,
            Bound::Closed(x) => x.cmp_rat(q) != Ordering::Less,
            Bound::Open(x) => x.cmp_rat(q) == Ordering::Greater,
        };
        above && below
    }

    /// The closed rational interval this component equals, if any.
    pub fn as_closed(&self) -> Option<RatInterval> {
        match (&self.lo, &self.hi) {
            (Bound::Closed(Real::Rat(a)), Bound::Closed(Real::Rat(b))) => Some(RatInterval {
                lo: a.clone(),
                hi: b.clone(),
            }),
            _ => None,
        }
    }

    fn is_subset_of(&self, other: &Component) -> bool {
        cmp_lower(&other.lo, &self.lo) != Ordering::Greater && cmp_upper(&self.hi, &other.hi) != Ordering::Greater
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let (Bound::Closed(a), Bound::Closed(b)) = (&self.lo, &self.hi) {
            if a == b {
                return write!(f, "{{{a}}}");
            }
        }
        match &self.lo {
            Bound::Unbounded => write!(f, "(-inf")?,
            Bound::Closed(x) => write!(f, "[{x}")?,
            Bound::Open(x) => write!(f, "({x}")?,
        }
        match &self.hi {
            Bound::Unbounded => write!(f, ",inf)"),
            Bound::Closed(x) => write!(f, ",{x}]"),
            Bound::Open(x) => write!(f, ",{x})"),
        }
    }
}

/// A closed rational interval `[lo, hi]`, the formulas of this system.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RatInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo > hi {
            return Err(Error::Precondition(format!("[{lo},{hi}] is empty")));
        }
        Ok(RatInterval { lo, hi })
    }

    pub fn ints(lo: i64, hi: i64) -> Self {
        RatInterval::new(
            BigRational::from_integer(lo.into()),
            BigRational::from_integer(hi.into()),
        )
        .expect("lo <= hi")
    }

    pub fn component(&self) -> Component {
        Component::new(
            Bound::Closed(Real::Rat(self.lo.clone())),
            Bound::Closed(Real::Rat(self.hi.clone())),
        )
    }

    pub fn target(&self) -> IntervalTarget {
        IntervalTarget::from_parts(vec![self.component()])
    }

    pub fn is_strict_subset(&self, other: &RatInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi && self != other
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

impl Serialize for RatInterval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A finite union of pairwise disjoint, non-adjacent components, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntervalTarget {
    parts: Vec<Component>,
}

impl IntervalTarget {
    pub fn empty() -> Self {
        IntervalTarget { parts: vec![] }
    }

    pub fn all() -> Self {
        IntervalTarget {
            parts: vec![Component::new(Bound::Unbounded, Bound::Unbounded)],
        }
    }

    pub fn point(q: BigRational) -> Self {
        let x = Real::Rat(q);
        Self::from_parts(vec![Component::new(Bound::Closed(x.clone()), Bound::Closed(x))])
    }

    pub fn from_parts(parts: Vec<Component>) -> Self {
        let mut parts: Vec<Component> = parts.into_iter().filter(|c| !c.is_empty()).collect();
        parts.sort_by(|a, b| cmp_lower(&a.lo, &b.lo).then_with(|| cmp_upper(&a.hi, &b.hi)));
        let mut out: Vec<Component> = Vec::new();
        for c in parts {
            if let Some(last) = out.last_mut() {
                if touches(&last.hi, &c.lo) {
                    if cmp_upper(&c.hi, &last.hi) == Ordering::Greater {
                        last.hi = c.hi;
                    }
                    continue;
                }
            }
            out.push(c);
        }
        IntervalTarget { parts: out }
    }

    pub fn parts(&self) -> &[Component] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        self.parts.iter().any(|c| c.contains(q))
    }

    pub fn union(&self, other: &IntervalTarget) -> IntervalTarget {
        let mut parts = self.parts.clone();
        parts.extend(other.parts.iter().cloned());
        Self::from_parts(parts)
    }

    pub fn complement(&self) -> IntervalTarget {
        let mut out = Vec::new();
        let mut lo = Bound::Unbounded;
        for c in &self.parts {
            if c.lo != Bound::Unbounded {
                out.push(Component::new(lo, c.lo.flip()));
            }
            if c.hi == Bound::Unbounded {
                return Self::from_parts(out);
            }
            lo = c.hi.flip();
        }
        out.push(Component::new(lo, Bound::Unbounded));
        Self::from_parts(out)
    }

    pub fn intersection(&self, other: &IntervalTarget) -> IntervalTarget {
        self.complement().union(&other.complement()).complement()
    }

    pub fn difference(&self, other: &IntervalTarget) -> IntervalTarget {
        self.intersection(&other.complement())
    }

    pub fn is_subset(&self, other: &IntervalTarget) -> bool {
        self.parts.iter().all(|c| other.parts.iter().any(|o| c.is_subset_of(o)))
    }

    pub fn is_bounded(&self) -> bool {
        match (self.parts.first(), self.parts.last()) {
            (Some(a), Some(b)) => a.lo != Bound::Unbounded && b.hi != Bound::Unbounded,
            _ => true,
        }
    }
}

/// Do `hi` (end of one component) and `lo` (start of a later one) overlap or
/// meet with no rational gap between them?
fn touches(hi: &Bound, lo: &Bound) -> bool {
    match (hi.value(), lo.value()) {
        (None, _) | (_, None) => true,
        (Some(h), Some(l)) => match l.cmp(h) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => hi.is_closed() || lo.is_closed() || matches!(h, Real::Sqrt(_)),
        },
    }
}

impl fmt::Display for IntervalTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" u "))
    }
}

impl Serialize for IntervalTarget {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The models of a base: the intersection of its intervals.
pub fn models_of_q(base: &[RatInterval]) -> IntervalTarget {
    base.iter()
        .fold(IntervalTarget::all(), |acc, i| acc.intersection(&i.target()))
}

/// A representable model set together with its shape.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum QRepr {
    Empty,
    Interval(RatInterval),
    All,
}

impl QRepr {
    pub fn base(&self) -> Vec<RatInterval> {
        match self {
            QRepr::Empty => vec![RatInterval::ints(0, 0), RatInterval::ints(1, 1)],
            QRepr::Interval(i) => vec![i.clone()],
            QRepr::All => vec![],
        }
    }

    pub fn target(&self) -> IntervalTarget {
        match self {
            QRepr::Empty => IntervalTarget::empty(),
            QRepr::Interval(i) => i.target(),
            QRepr::All => IntervalTarget::all(),
        }
    }
}

impl fmt::Display for QRepr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QRepr::Empty => write!(f, "{{}}"),
            QRepr::Interval(i) => write!(f, "{i}"),
            QRepr::All => write!(f, "(-inf,inf)"),
        }
    }
}

/// Some base denotes exactly `target`?
pub fn representable_q(target: &IntervalTarget) -> Option<QRepr> {
    match target.parts() {
        [] => Some(QRepr::Empty),
        [c] if c.lo == Bound::Unbounded && c.hi == Bound::Unbounded => Some(QRepr::All),
        [c] => c.as_closed().map(QRepr::Interval),
        _ => None,
    }
}

fn component_containing<'a>(target: &'a IntervalTarget, i: &RatInterval) -> Option<&'a Component> {
    let c = i.component();
    target.parts().iter().find(|p| c.is_subset_of(p))
}

/// A strictly larger closed interval still inside `target`. The upper end
/// moves first, then the lower end.
pub fn improve_subset(candidate: &RatInterval, target: &IntervalTarget) -> Result<RatInterval> {
    if representable_q(target).is_some() {
        return Err(Error::Precondition(format!("{target} is representable")));
    }
    let comp = component_containing(target, candidate)
        .ok_or_else(|| Error::Precondition(format!("{candidate} is not inside {target}")))?;
    let hi = Real::Rat(candidate.hi.clone());
    let up = match &comp.hi {
        Bound::Unbounded => Some(&candidate.hi + BigRational::one()),
        Bound::Open(x) => Some(rational_between(&hi, x)?),
        Bound::Closed(Real::Rat(x)) if *x > candidate.hi => Some(x.clone()),
        Bound::Closed(_) => None,
    };
    if let Some(up) = up {
        return RatInterval::new(candidate.lo.clone(), up);
    }
    let lo = Real::Rat(candidate.lo.clone());
    let down = match &comp.lo {
        Bound::Unbounded => Some(&candidate.lo - BigRational::one()),
        Bound::Open(x) => Some(rational_between(x, &lo)?),
        Bound::Closed(Real::Rat(x)) if *x < candidate.lo => Some(x.clone()),
        Bound::Closed(_) => None,
    };
    match down {
        Some(down) => RatInterval::new(down, candidate.hi.clone()),
        None => Err(Error::Precondition(format!(
            "{candidate} is a whole closed component of {target}"
        ))),
    }
}

/// A strictly smaller closed interval still containing `target`: the lower
/// end moves first (halfway to an open end, onto a closed end), then the
/// upper end.
pub fn improve_superset(candidate: &RatInterval, target: &IntervalTarget) -> Result<RatInterval> {
    if representable_q(target).is_some() {
        return Err(Error::Precondition(format!("{target} is representable")));
    }
    if !target.is_subset(&candidate.target()) {
        return Err(Error::Precondition(format!("{candidate} does not contain {target}")));
    }
    let first = &target.parts()[0];
    let last = &target.parts()[target.parts().len() - 1];
    let lo = Real::Rat(candidate.lo.clone());
    let up = match &first.lo {
        Bound::Open(x) if lo < *x => Some(rational_between(&lo, x)?),
        Bound::Closed(Real::Rat(x)) if *x > candidate.lo => Some(x.clone()),
        _ => None,
    };
    if let Some(up) = up {
        return RatInterval::new(up, candidate.hi.clone());
    }
    let hi = Real::Rat(candidate.hi.clone());
    let down = match &last.hi {
        Bound::Open(x) if *x < hi => Some(rational_between(x, &hi)?),
        Bound::Closed(Real::Rat(x)) if *x < candidate.hi => Some(x.clone()),
        _ => None,
    };
    match down {
        Some(down) => RatInterval::new(candidate.lo.clone(), down),
        None => Err(Error::Precondition(format!(
            "{candidate} is the closed hull of {target}"
        ))),
    }
}

/// Follow an improver `steps` times from `start`.
pub fn improvement_chain(
    start: &RatInterval,
    steps: usize,
    improve: impl Fn(&RatInterval) -> Result<RatInterval>,
) -> Result<Vec<RatInterval>> {
    let mut chain = vec![start.clone()];
    for _ in 0..steps {
        let next = improve(chain.last().expect("nonempty"))?;
        chain.push(next);
    }
    Ok(chain)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QChange {
    pub kind: ChangeKind,
    pub target: IntervalTarget,
    pub candidates: Vec<QRepr>,
    pub chosen: QRepr,
    pub result_base: Vec<RatInterval>,
}

fn q_incompatible(kind: ChangeKind, target: &IntervalTarget, explanation: String, chain: &[RatInterval]) -> Error {
    let witness = chain.iter().map(ToString::to_string).collect::<Vec<_>>().join(" < ");
    Error::incompatible(Incompatibility {
        kind,
        target: target.to_string(),
        explanation,
        witness: Some(witness),
    })
}

/// Maximal representable subsets of `target`: its closed bounded components,
/// or the empty set when the target is empty.
pub fn frsubs_q(target: &IntervalTarget) -> Vec<QRepr> {
    if let Some(r) = representable_q(target) {
        return vec![r];
    }
    target
        .parts()
        .iter()
        .filter_map(Component::as_closed)
        .map(QRepr::Interval)
        .collect()
}

/// Minimal representable supersets of `target`: everything when unbounded,
/// the closed hull when its ends are rational, none otherwise.
pub fn frsups_q(target: &IntervalTarget) -> Vec<QRepr> {
    if let Some(r) = representable_q(target) {
        return vec![r];
    }
    if !target.is_bounded() {
        return vec![QRepr::All];
    }
    let first = &target.parts()[0];
    let last = &target.parts()[target.parts().len() - 1];
    match (first.lo.value(), last.hi.value()) {
        (Some(Real::Rat(a)), Some(Real::Rat(b))) => vec![QRepr::Interval(RatInterval {
            lo: a.clone(),
            hi: b.clone(),
        })],
        _ => vec![],
    }
}

fn seed_inside(comp: &Component) -> Result<RatInterval> {
    let q = match (&comp.lo, &comp.hi) {
        (Bound::Closed(Real::Rat(a)), _) => a.clone(),
        (_, Bound::Closed(Real::Rat(b))) => b.clone(),
        (Bound::Unbounded, Bound::Unbounded) => BigRational::zero(),
        (Bound::Unbounded, Bound::Open(x)) => x.rational_bracket().0 - BigRational::one(),
        (Bound::Open(x), Bound::Unbounded) => x.rational_bracket().1 + BigRational::one(),
        (Bound::Open(x), Bound::Open(y)) => rational_between(x, y)?,
        _ => unreachable!("closed irrational ends are normalised away"),
    };
    RatInterval::new(q.clone(), q)
}

fn seed_around(target: &IntervalTarget) -> Result<RatInterval> {
    let first = &target.parts()[0];
    let last = &target.parts()[target.parts().len() - 1];
    let lo = first.lo.value().expect("bounded").rational_bracket().0 - BigRational::one();
    let hi = last.hi.value().expect("bounded").rational_bracket().1 + BigRational::one();
    RatInterval::new(lo, hi)
}

pub fn evict_q(base: &[RatInterval], input: &IntervalTarget, policy: &SelectionPolicy) -> Result<QChange> {
    let target = models_of_q(base).difference(input);
    let candidates = frsubs_q(&target);
    if candidates.is_empty() {
        let seed = seed_inside(&target.parts()[0])?;
        let chain = improvement_chain(&seed, 3, |c| improve_subset(c, &target))?;
        return Err(q_incompatible(
            ChangeKind::Eviction,
            &target,
            "no maximal closed interval inside the target; every candidate can be extended".into(),
            &chain,
        ));
    }
    let chosen = policy.select_ordered(&candidates).expect("nonempty").clone();
    Ok(QChange {
        kind: ChangeKind::Eviction,
        result_base: chosen.base(),
        target,
        candidates,
        chosen,
    })
}

pub fn receive_q(base: &[RatInterval], input: &IntervalTarget, policy: &SelectionPolicy) -> Result<QChange> {
    let target = models_of_q(base).union(input);
    let candidates = frsups_q(&target);
    if candidates.is_empty() {
        let seed = seed_around(&target)?;
        let chain = improvement_chain(&seed, 3, |c| improve_superset(c, &target))?;
        return Err(q_incompatible(
            ChangeKind::Reception,
            &target,
            "no minimal closed interval around the target; every candidate can be shrunk".into(),
            &chain,
        ));
    }
    let chosen = policy.select_ordered(&candidates).expect("nonempty").clone();
    Ok(QChange {
        kind: ChangeKind::Reception,
        result_base: chosen.base(),
        target,
        candidates,
        chosen,
    })
}

/// The instances behind the compatibility verdicts.
pub fn compat_instances() -> [(ChangeKind, Vec<RatInterval>, IntervalTarget); 2] {
    let sqrt2 = Real::sqrt(BigRational::from_integer(2.into())).expect("positive");
    [
        (
            ChangeKind::Eviction,
            vec![RatInterval::ints(0, 1)],
            IntervalTarget::point(BigRational::one()),
        ),
        (
            ChangeKind::Reception,
            vec![RatInterval::ints(1, 1)],
            IntervalTarget::from_parts(vec![Component::new(Bound::Open(Real::int(0)), Bound::Open(sqrt2))]),
        ),
    ]
}

/// Run the change on each instance; a verdict is `yes` when it succeeds.
pub fn compat_q() -> Compatibility {
    let policy = SelectionPolicy::default();
    let [(_, eb, em), (_, rb, rm)] = compat_instances();
    Compatibility {
        eviction: evict_q(&eb, &em, &policy).is_ok(),
        reception: receive_q(&rb, &rm, &policy).is_ok(),
    }
}

struct Scanner {
    chars: Vec<char>,
    pos: usize,
}

impl Scanner {
    fn new(src: &str) -> Self {
        Scanner {
            chars: src.chars().collect(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn col(&self) -> usize {
        self.pos + 1
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::new(msg, self.col()))
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        let w: Vec<char> = word.chars().collect();
        if self.chars[self.pos..].starts_with(&w) {
            self.pos += w.len();
            true
        } else {
            false
        }
    }

    fn rational(&mut self) -> Result<BigRational, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let neg = self.chars.get(self.pos) == Some(&'-');
        if neg {
            self.pos += 1;
        }
        let digits = |s: &mut Self| {
            let from = s.pos;
            while s.chars.get(s.pos).is_some_and(char::is_ascii_digit) {
                s.pos += 1;
            }
            s.chars[from..s.pos].iter().collect::<String>()
        };
        let whole = digits(self);
        if whole.is_empty() {
            self.pos = start;
            return self.err("expected a number");
        }
        let mut value = BigRational::from_integer(whole.parse::<BigInt>().expect("digits"));
        match self.chars.get(self.pos) {
            Some('/') => {
                self.pos += 1;
                let den = digits(self);
                if den.is_empty() {
                    return self.err("expected a denominator");
                }
                let den: BigInt = den.parse().expect("digits");
                if den.is_zero() {
                    return Err(ParseError::new("zero denominator", start + 1));
                }
                value /= BigRational::from_integer(den);
            }
            Some('.') => {
                self.pos += 1;
                let frac = digits(self);
                if frac.is_empty() {
                    return self.err("expected digits after `.`");
                }
                let scale = BigInt::from(10).pow(frac.len() as u32);
                value += BigRational::new(frac.parse::<BigInt>().expect("digits"), scale);
            }
            _ => {}
        }
        Ok(if neg { -value } else { value })
    }

    /// A rational, `sqrt(q)`, `inf` or `-inf`; `None` means unbounded.
    fn endpoint(&mut self) -> Result<Option<Real>, ParseError> {
        if self.keyword("-inf") || self.keyword("inf") {
            return Ok(None);
        }
        if self.keyword("sqrt") {
            let col = self.col();
            self.expect('(')?;
            let r = self.rational()?;
            self.expect(')')?;
            return Real::sqrt(r).map(Some).map_err(|e| ParseError::new(e.to_string(), col));
        }
        Ok(Some(Real::Rat(self.rational()?)))
    }

    fn term(&mut self) -> Result<IntervalTarget, ParseError> {
        match self.peek() {
            Some('{') => {
                self.pos += 1;
                let mut parts = Vec::new();
                if self.peek() == Some('}') {
                    self.pos += 1;
                    return Ok(IntervalTarget::empty());
                }
                loop {
                    let q = self.rational()?;
                    parts.push(IntervalTarget::point(q));
                    match self.peek() {
                        Some(',') => self.pos += 1,
                        Some('}') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return self.err("expected `,` or `}`"),
                    }
                }
                Ok(parts.iter().fold(IntervalTarget::empty(), |acc, p| acc.union(p)))
            }
            Some(open @ ('[' | '(')) => {
                self.pos += 1;
                let lo = match self.endpoint()? {
                    None => Bound::Unbounded,
                    Some(x) if open == '[' => Bound::Closed(x),
                    Some(x) => Bound::Open(x),
                };
                self.expect(',')?;
                let hi_end = self.endpoint()?;
                let close = match self.peek() {
                    Some(c @ (']' | ')')) => {
                        self.pos += 1;
                        c
                    }
                    _ => return self.err("expected `]` or `)`"),
                };
                let hi = match hi_end {
                    None => Bound::Unbounded,
                    Some(x) if close == ']' => Bound::Closed(x),
                    Some(x) => Bound::Open(x),
                };
                Ok(IntervalTarget::from_parts(vec![Component::new(lo, hi)]))
            }
            Some(_) => self.err("expected `[`, `(` or `{`"),
            None => self.err("expected an interval"),
        }
    }
}

/// Parse `[0,1] u {2} \ (1/2,3/4)` style set expressions, left to right.
pub fn parse_target(text: &str) -> Result<IntervalTarget, ParseError> {
    let mut s = Scanner::new(text);
    let mut acc = s.term()?;
    loop {
        match s.peek() {
            None => return Ok(acc),
            Some('u') => {
                s.pos += 1;
                acc = acc.union(&s.term()?);
            }
            Some('\\') => {
                s.pos += 1;
                acc = acc.difference(&s.term()?);
            }
            Some(_) => return s.err("expected `u`, `\\` or end of input"),
        }
    }
}

/// Parse a base formula: a closed interval with rational ends.
pub fn parse_interval(text: &str) -> Result<RatInterval, ParseError> {
    let mut s = Scanner::new(text);
    s.expect('[')?;
    let lo = s.rational()?;
    s.expect(',')?;
    let hi_col = s.col();
    let hi = s.rational()?;
    s.expect(']')?;
    if s.peek().is_some() {
        return s.err("expected end of input");
    }
    RatInterval::new(lo, hi).map_err(|e| ParseError::new(e.to_string(), hi_col))
}
