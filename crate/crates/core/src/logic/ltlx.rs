//! The next-time fragment of LTL: formulas `X^m p` over pointed Kripke
//! structures with a total transition relation.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{ChangeKind, Error, Incompatibility, ParseError, Result};
use crate::logic::prop::Signature;
use crate::syntax::{unexpected, Cursor, Tok};

/// `X^depth atom`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct XFormula {
    pub depth: u32,
    pub atom: usize,
}

impl XFormula {
    pub fn new(depth: u32, atom: usize) -> Self {
        XFormula { depth, atom }
    }

    pub fn render(&self, sig: &Signature) -> String {
        match self.depth {
            0 => sig.name(self.atom).to_string(),
            1 => format!("X {}", sig.name(self.atom)),
            d => format!("X^{d} {}", sig.name(self.atom)),
        }
    }
}

/// Accepts `p`, `X p`, `XXp`, `X^3 p` and mixtures such as `X^2 X p`.
pub fn parse_xformula(text: &str, sig: &Signature) -> Result<XFormula, ParseError> {
    let mut cur = Cursor::new(text)?;
    let mut depth: u32 = 0;
    loop {
        let t = cur.next();
        match t.tok {
            Tok::Next => {
                let step = if cur.eat(&Tok::Caret) {
                    let n = cur.next();
                    match n.tok {
                        Tok::Num(k) => k,
                        _ => return Err(unexpected(&n, "a depth after `^`")),
                    }
                } else {
                    1
                };
                depth = depth
                    .checked_add(step)
                    .ok_or_else(|| ParseError::new("depth too large", t.col))?;
            }
            Tok::Atom(ref name) => {
                let atom = sig
                    .index(name)
                    .ok_or_else(|| ParseError::new(format!("undeclared atom `{name}`"), t.col))?;
                cur.finish()?;
                return Ok(XFormula { depth, atom });
            }
            _ => return Err(unexpected(&t, "`X` or an atom")),
        }
    }
}

/// A Kripke structure with a distinguished initial state.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PointedKripke {
    pub states: Vec<String>,
    /// Sorted successor lists.
    pub succ: Vec<Vec<usize>>,
    pub labels: Vec<BTreeSet<usize>>,
    pub init: usize,
}

impl PointedKripke {
    pub fn new(
        states: Vec<String>,
        edges: &[(usize, usize)],
        labels: Vec<BTreeSet<usize>>,
        init: usize,
    ) -> Result<Self> {
        let n = states.len();
        if n == 0 || init >= n || labels.len() != n {
            return Err(Error::InvalidModel("initial state or labels out of range".into()));
        }
        let mut succ = vec![BTreeSet::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidModel(format!("edge {a} -> {b} out of range")));
            }
            succ[a].insert(b);
        }
        if let Some(dead) = succ.iter().position(BTreeSet::is_empty) {
            return Err(Error::InvalidModel(format!(
                "state `{}` has no successor; the transition relation must be total",
                states[dead]
            )));
        }
        Ok(PointedKripke {
            states,
            succ: succ.into_iter().map(|s| s.into_iter().collect()).collect(),
            labels,
            init,
        })
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    fn step(&self, layer: &[bool]) -> Vec<bool> {
        let mut next = vec![false; layer.len()];
        for (s, &on) in layer.iter().enumerate() {
            if on {
                for &t in &self.succ[s] {
                    next[t] = true;
                }
            }
        }
        next
    }

    /// States reachable from the initial state in exactly `depth` steps.
    pub fn layer(&self, depth: u32) -> Vec<bool> {
        let mut layer = vec![false; self.state_count()];
        layer[self.init] = true;
        let mut seen: HashMap<Vec<bool>, u32> = HashMap::new();
        let mut history: Vec<Vec<bool>> = Vec::new();
        let mut i = 0u32;
        while i < depth {
            if let Some(&start) = seen.get(&layer) {
                let period = i - start;
                let offset = (depth - start) % period;
                return history[(start + offset) as usize].clone();
            }
            seen.insert(layer.clone(), i);
            history.push(layer.clone());
            layer = self.step(&layer);
            i += 1;
        }
        layer
    }

    /// Every layer that occurs at some depth, in order of first occurrence.
    pub fn distinct_layers(&self) -> Vec<(u32, Vec<bool>)> {
        let mut layer = vec![false; self.state_count()];
        layer[self.init] = true;
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let mut depth = 0;
        while seen.insert(layer.clone()) {
            out.push((depth, layer.clone()));
            layer = self.step(&layer);
            depth += 1;
        }
        out
    }

    /// True iff every reachable state carries every atom of `sig`.
    pub fn satisfies_everything(&self, sig: &Signature) -> bool {
        self.distinct_layers().iter().all(|(_, layer)| {
            layer
                .iter()
                .enumerate()
                .all(|(s, &on)| !on || (0..sig.len()).all(|a| self.labels[s].contains(&a)))
        })
    }

    pub fn render(&self, sig: &Signature) -> String {
        let mut parts = Vec::new();
        for s in &self.states {
            parts.push(format!("state {s}"));
        }
        parts.push(format!("init {}", self.states[self.init]));
        for (a, succ) in self.succ.iter().enumerate() {
            for &b in succ {
                parts.push(format!("edge {} {}", self.states[a], self.states[b]));
            }
        }
        for (s, label) in self.labels.iter().enumerate() {
            if !label.is_empty() {
                let names: Vec<&str> = label.iter().map(|&a| sig.name(a)).collect();
                parts.push(format!("label {} {}", self.states[s], names.join(",")));
            }
        }
        parts.join("; ")
    }
}

pub fn sat_x(model: &PointedKripke, f: &XFormula) -> bool {
    model
        .layer(f.depth)
        .iter()
        .enumerate()
        .all(|(s, &on)| !on || model.labels[s].contains(&f.atom))
}

pub fn sat_x_base(model: &PointedKripke, base: &[XFormula]) -> bool {
    base.iter().all(|f| sat_x(model, f))
}

/// A set of models given by enumeration or as the models of a base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelInput {
    Explicit(Vec<PointedKripke>),
    ModOf(Vec<XFormula>),
}

impl ModelInput {
    pub fn explicit(models: Vec<PointedKripke>) -> Self {
        let mut out: Vec<PointedKripke> = Vec::new();
        for m in models {
            if !out.contains(&m) {
                out.push(m);
            }
        }
        ModelInput::Explicit(out)
    }

    pub fn contains(&self, model: &PointedKripke) -> bool {
        match self {
            ModelInput::Explicit(ms) => ms.contains(model),
            ModelInput::ModOf(base) => sat_x_base(model, base),
        }
    }
}

/// Keep exactly the base formulas that every input model satisfies. For an
/// intensional input `Mod(B')` these are the formulas of `B'`, since every
/// finite base is a theory.
pub fn rcp_x(base: &[XFormula], input: &ModelInput) -> Vec<XFormula> {
    match input {
        ModelInput::Explicit(ms) => base
            .iter()
            .filter(|f| ms.iter().all(|m| sat_x(m, f)))
            .copied()
            .collect(),
        ModelInput::ModOf(other) => base.iter().filter(|f| other.contains(f)).copied().collect(),
    }
}

fn max_depth(formulas: &[XFormula]) -> u32 {
    formulas.iter().map(|f| f.depth).max().unwrap_or(0)
}

/// A lasso `s_0 -> ... -> s_m` (self-loop on `s_m`) labelling `s_i` with the
/// atoms `p` such that `X^i p` is in `base`; it satisfies `base` and
/// falsifies `excluded`.
pub fn chain_model(base: &[XFormula], excluded: &XFormula) -> Result<PointedKripke> {
    if base.contains(excluded) {
        return Err(Error::Precondition("the excluded formula belongs to the base".into()));
    }
    let m = max_depth(base).max(excluded.depth) as usize;
    let states: Vec<String> = (0..=m).map(|i| format!("s{i}")).collect();
    let mut edges: Vec<(usize, usize)> = (0..m).map(|i| (i, i + 1)).collect();
    edges.push((m, m));
    let labels = (0..=m)
        .map(|i| base.iter().filter(|f| f.depth as usize == i).map(|f| f.atom).collect())
        .collect();
    PointedKripke::new(states, &edges, labels, 0)
}

/// One state, a self-loop, every atom true: a model of every base.
pub fn universal_model(sig: &Signature) -> PointedKripke {
    PointedKripke::new(vec!["u".into()], &[(0, 0)], vec![(0..sig.len()).collect()], 0).expect("well-formed")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LtlEviction {
    pub result: Vec<XFormula>,
    /// Formulas added to the base to exclude the input models.
    pub added: Vec<XFormula>,
}

fn incompatible_eviction(sig: &Signature, base: &[XFormula], why: &str) -> Error {
    Error::incompatible(Incompatibility {
        kind: ChangeKind::Eviction,
        target: format!(
            "Mod({{{}}}) minus the input",
            base.iter().map(|f| f.render(sig)).collect::<Vec<_>>().join(", ")
        ),
        explanation: why.to_string(),
        witness: Some(universal_model(sig).render(sig)),
    })
}

/// Exclude every listed model by adding formulas it falsifies: a greedy
/// hitting set over `X^k p` (k below the longest run of distinct layers),
/// pruned to be irredundant. Fails when some excluded model satisfies every
/// formula, as the universal model does.
pub fn evict_x(sig: &Signature, base: &[XFormula], input: &ModelInput) -> Result<LtlEviction> {
    let models = match input {
        ModelInput::ModOf(_) => {
            return Err(incompatible_eviction(
                sig,
                base,
                "the input contains the universal model, which satisfies every base",
            ))
        }
        ModelInput::Explicit(ms) => ms,
    };
    let live: Vec<&PointedKripke> = models.iter().filter(|m| sat_x_base(m, base)).collect();
    if live.iter().any(|m| m.satisfies_everything(sig)) {
        return Err(incompatible_eviction(
            sig,
            base,
            "an input model satisfies every formula, so every base keeps it",
        ));
    }
    let horizon = live
        .iter()
        .map(|m| m.distinct_layers().len() as u32)
        .max()
        .unwrap_or(1)
        .max(max_depth(base) + 1);
    // options[i] = formulas falsified by live[i]
    let options: Vec<BTreeSet<XFormula>> = live
        .iter()
        .map(|m| {
            (0..horizon)
                .flat_map(|d| (0..sig.len()).map(move |a| XFormula::new(d, a)))
                .filter(|f| !sat_x(m, f))
                .collect()
        })
        .collect();
    let mut uncovered: Vec<usize> = (0..live.len()).collect();
    let mut added: Vec<XFormula> = Vec::new();
    while !uncovered.is_empty() {
        let mut counts: std::collections::BTreeMap<XFormula, usize> = Default::default();
        for &i in &uncovered {
            for f in &options[i] {
                *counts.entry(*f).or_default() += 1;
            }
        }
        let best = counts
            .iter()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
            .map(|(f, _)| *f)
            .expect("every live model falsifies something");
        added.push(best);
        uncovered.retain(|&i| !options[i].contains(&best));
    }
    let mut i = 0;
    while i < added.len() {
        let mut without = added.clone();
        without.remove(i);
        if (0..live.len()).all(|m| without.iter().any(|f| options[m].contains(f))) {
            added = without;
        } else {
            i += 1;
        }
    }
    added.sort();
    let mut result = base.to_vec();
    for f in &added {
        if !result.contains(f) {
            result.push(*f);
        }
    }
    Ok(LtlEviction { result, added })
}

/// Eviction is never compatible (the empty model set has no finite base);
/// reception always is, via [`rcp_x`].
pub fn compat_x(sig: &Signature) -> (bool, bool) {
    let base: Vec<XFormula> = Vec::new();
    let eviction = evict_x(sig, &base, &ModelInput::ModOf(base.clone())).is_ok();
    (eviction, true)
}

/// Parse the line-oriented model format; models are separated by `---`.
pub fn parse_kripke_models(text: &str, sig: &Signature) -> Result<Vec<PointedKripke>, ParseError> {
    let mut models = Vec::new();
    let mut chunk: Vec<(usize, &str)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line == "---" {
            if !chunk.is_empty() {
                models.push(parse_one(&chunk, sig)?);
                chunk.clear();
            }
        } else if !line.is_empty() {
            chunk.push((i + 1, line));
        }
    }
    if !chunk.is_empty() {
        models.push(parse_one(&chunk, sig)?);
    }
    if models.is_empty() {
        return Err(ParseError::new("no models found", 1).at_line(1));
    }
    Ok(models)
}

fn parse_one(lines: &[(usize, &str)], sig: &Signature) -> Result<PointedKripke, ParseError> {
    let mut states: Vec<String> = Vec::new();
    let mut pending_labels: Vec<(usize, String, String)> = Vec::new();
    let err = |line: usize, msg: String| ParseError::new(msg, 1).at_line(line);
    let mut pending_edges: Vec<(usize, String, String)> = Vec::new();
    let mut pending_init: Option<(usize, String)> = None;
    for &(ln, line) in lines {
        let words: Vec<&str> = line.split_whitespace().collect();
        match words.as_slice() {
            ["state", name] => {
                if states.iter().any(|s| s == name) {
                    return Err(err(ln, format!("duplicate state `{name}`")));
                }
                states.push(name.to_string());
            }
            ["init", name] => {
                if pending_init.is_some() {
                    return Err(err(ln, "more than one initial state".into()));
                }
                pending_init = Some((ln, name.to_string()));
            }
            ["edge", a, b] => pending_edges.push((ln, a.to_string(), b.to_string())),
            ["label", s, atoms] => pending_labels.push((ln, s.to_string(), atoms.to_string())),
            ["label", s] => pending_labels.push((ln, s.to_string(), String::new())),
            _ => return Err(err(ln, format!("unrecognised line `{line}`"))),
        }
    }
    let find = |ln: usize, name: &str| {
        states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| err(ln, format!("unknown state `{name}`")))
    };
    let init = match &pending_init {
        Some((ln, name)) => Some(find(*ln, name)?),
        None => None,
    };
    let edges = pending_edges
        .iter()
        .map(|(ln, a, b)| Ok((find(*ln, a)?, find(*ln, b)?)))
        .collect::<Result<Vec<_>, ParseError>>()?;
    let mut labels = vec![BTreeSet::new(); states.len()];
    for (ln, s, atoms) in &pending_labels {
        let idx = find(*ln, s)?;
        for a in atoms.split(',').map(str::trim).filter(|a| !a.is_empty()) {
            let atom = sig.index(a).ok_or_else(|| err(*ln, format!("undeclared atom `{a}`")))?;
            labels[idx].insert(atom);
        }
    }
    let first = lines.first().map_or(1, |l| l.0);
    let init = init.ok_or_else(|| err(first, "missing `init` line".into()))?;
    PointedKripke::new(states, &edges, labels, init).map_err(|e| err(first, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        Signature::parse("p,q").unwrap()
    }

    fn x(text: &str) -> XFormula {
        parse_xformula(text, &sig()).unwrap()
    }

    fn model(text: &str) -> PointedKripke {
        parse_kripke_models(text, &sig()).unwrap().remove(0)
    }

    #[test]
    fn parses_depth_notations() {
        assert_eq!(x("p"), XFormula::new(0, 0));
        assert_eq!(x("XXXq"), XFormula::new(3, 1));
        assert_eq!(x("X^3 q"), XFormula::new(3, 1));
        assert_eq!(x("X^2 X p"), XFormula::new(3, 0));
        assert!(parse_xformula("X", &sig()).is_err());
        assert!(parse_xformula("p & q", &sig()).is_err());
        assert_eq!(x("X^2 p").render(&sig()), "X^2 p");
    }

    #[test]
    fn sat_examples() {
        let loop_p = model("state s\ninit s\nedge s s\nlabel s p");
        for k in 0..20 {
            assert!(sat_x(&loop_p, &XFormula::new(k, 0)));
        }
        let chain = model("state s0\nstate s1\ninit s0\nedge s0 s1\nedge s1 s1\nlabel s0 p");
        assert!(sat_x(&chain, &x("p")));
        assert!(!sat_x(&chain, &x("X p")));
        let branch =
            model("state s0\nstate s1\nstate s2\ninit s0\nedge s0 s1\nedge s0 s2\nedge s1 s1\nedge s2 s2\nlabel s1 p");
        assert!(!sat_x(&branch, &x("X p")));
    }

    #[test]
    fn deep_layers_use_the_cycle() {
        let alt = model("state a\nstate b\ninit a\nedge a b\nedge b a\nlabel a p\nlabel b q");
        assert!(sat_x(&alt, &XFormula::new(1_000_000, 0)));
        assert!(sat_x(&alt, &XFormula::new(1_000_001, 1)));
        assert!(!sat_x(&alt, &XFormula::new(1_000_001, 0)));
    }

    #[test]
    fn totality_required() {
        let err = parse_kripke_models("state a\nstate b\ninit a\nedge a b", &sig()).unwrap_err();
        assert!(err.message.contains("total"));
        assert!(parse_kripke_models("state a\ninit b\nedge a a", &sig()).is_err());
    }

    #[test]
    fn rcp_examples() {
        let base = vec![x("p"), x("X p")];
        let chain = model("state s0\nstate s1\ninit s0\nedge s0 s1\nedge s1 s1\nlabel s0 p");
        assert_eq!(rcp_x(&base, &ModelInput::explicit(vec![chain])), vec![x("p")]);
        let inside = model("state s\ninit s\nedge s s\nlabel s p");
        assert_eq!(rcp_x(&base, &ModelInput::explicit(vec![inside])), base);
        assert!(rcp_x(&[], &ModelInput::explicit(vec![])).is_empty());
        assert_eq!(rcp_x(&base, &ModelInput::ModOf(vec![x("X p")])), vec![x("X p")]);
    }

    #[test]
    fn chain_model_examples() {
        let base = vec![x("p"), x("X^2 q")];
        let m = chain_model(&base, &x("X p")).unwrap();
        assert_eq!(m.state_count(), 3);
        assert!(sat_x_base(&m, &base));
        assert!(!sat_x(&m, &x("X p")));

        let m = chain_model(&[], &x("p")).unwrap();
        assert_eq!(m.state_count(), 1);
        assert!(!sat_x(&m, &x("p")));

        let m = chain_model(&[x("X q")], &x("X^2 q")).unwrap();
        assert_eq!(m.labels[1], [1].into_iter().collect());
        assert!(!sat_x(&m, &x("X^2 q")));
        assert!(chain_model(&[x("p")], &x("p")).is_err());
    }

    #[test]
    fn universal_model_blocks_eviction() {
        let u = universal_model(&sig());
        for k in 0..=20 {
            assert!(sat_x(&u, &XFormula::new(k, 0)) && sat_x(&u, &XFormula::new(k, 1)));
        }
        assert!(sat_x_base(&u, &[]));
        let base = vec![x("p")];
        match evict_x(&sig(), &base, &ModelInput::ModOf(base.clone())) {
            Err(Error::Incompatible(inc)) => assert_eq!(inc.witness.unwrap(), u.render(&sig())),
            other => panic!("{other:?}"),
        }
        assert!(evict_x(&sig(), &base, &ModelInput::explicit(vec![u])).is_err());
        assert_eq!(compat_x(&sig()), (false, true));
    }

    #[test]
    fn explicit_eviction_excludes_listed_models() {
        let base = vec![x("p")];
        let m1 = model("state s\ninit s\nedge s s\nlabel s p");
        let m2 = model("state a\nstate b\ninit a\nedge a b\nedge b b\nlabel a p,q\nlabel b p");
        let input = ModelInput::explicit(vec![m1.clone(), m2.clone()]);
        let out = evict_x(&sig(), &base, &input).unwrap();
        assert!(out.result.starts_with(&base));
        assert!(!sat_x_base(&m1, &out.result));
        assert!(!sat_x_base(&m2, &out.result));
        assert_eq!(out.added, vec![x("X q")]);
    }

    #[test]
    fn multiple_models_per_file() {
        let text = "state a\ninit a\nedge a a\n---\n# second\nstate b\ninit b\nedge b b\nlabel b q\n";
        assert_eq!(parse_kripke_models(text, &sig()).unwrap().len(), 2);
    }
}
