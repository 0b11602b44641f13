//! Hasse diagram of the full subset lattice with representable sets marked,
//! exported as Graphviz DOT.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::modelset::ModelSet;
use crate::ops::frsubs;
use crate::system::{Catalog, SatSystem};

pub const DEFAULT_LATTICE_BOUND: usize = 5;

/// Which sets get thick arrows to their maximal representable subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Highlight {
    None,
    Target(ModelSet),
    /// Every non-representable set.
    AllNonRepresentable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeNode {
    pub set: ModelSet,
    pub label: String,
    pub representable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeGraph {
    pub nodes: Vec<LatticeNode>,
    /// Covering pairs `(smaller, larger)` differing by one model.
    pub edges: Vec<(ModelSet, ModelSet)>,
    /// `(set, element of its FRsubs)`.
    pub thick: Vec<(ModelSet, ModelSet)>,
}

pub fn lattice_export<S: SatSystem>(
    system: &S,
    catalog: &Catalog<S::Formula>,
    highlight: &Highlight,
    bound: usize,
) -> Result<LatticeGraph> {
    let n = catalog.universe_size();
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "lattice universe",
            size: n,
            bound,
        });
    }
    let sets: Vec<ModelSet> = ModelSet::all_subsets(n)?.collect();
    let nodes = sets
        .iter()
        .map(|s| LatticeNode {
            set: *s,
            label: system.render_set(s),
            representable: catalog.contains(s),
        })
        .collect();
    let mut edges = Vec::new();
    for s in &sets {
        for m in 0..n {
            if !s.contains(m) {
                let mut up = *s;
                up.insert(m);
                edges.push((*s, up));
            }
        }
    }
    let sources: Vec<ModelSet> = match highlight {
        Highlight::None => vec![],
        Highlight::Target(t) => vec![*t],
        Highlight::AllNonRepresentable => sets.iter().filter(|s| !catalog.contains(s)).copied().collect(),
    };
    let mut thick = Vec::new();
    for src in sources {
        for sub in frsubs(&src, catalog)? {
            if sub != src {
                thick.push((src, sub));
            }
        }
    }
    Ok(LatticeGraph { nodes, edges, thick })
}

impl LatticeGraph {
    pub fn representable_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.representable).count()
    }

    /// Boxed nodes are representable; thin edges go up the inclusion order,
    /// thick edges (`penwidth=3`) point from a set to its FRsubs elements.
    pub fn to_dot(&self, name: &str) -> String {
        let id = |s: &ModelSet| format!("n{}", s.bits());
        let mut out = String::new();
        writeln!(out, "digraph \"{name}\" {{").unwrap();
        writeln!(out, "  rankdir=BT;").unwrap();
        for node in &self.nodes {
            let shape = if node.representable { "box" } else { "plaintext" };
            writeln!(out, "  {} [label=\"{}\", shape={shape}];", id(&node.set), node.label).unwrap();
        }
        for (a, b) in &self.edges {
            writeln!(out, "  {} -> {} [penwidth=1];", id(a), id(b)).unwrap();
        }
        for (a, b) in &self.thick {
            writeln!(out, "  {} -> {} [penwidth=3, constraint=false];", id(a), id(b)).unwrap();
        }
        out.push_str("}\n");
        out
    }
}
