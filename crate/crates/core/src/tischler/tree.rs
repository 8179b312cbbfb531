//! Unbounded plane trees and their one-point compactifications.
//!
//! Text format, one internal vertex per line with its slots in
//! counterclockwise order (`e<k>` is bounded edge `k`, `*` an unbounded edge):
//!
//! ```text
//! V 0: e0 * *
//! V 1: e0 * *
//! ```

use super::{validate, BranchingData, TischlerGraph};
use crate::rotation_graph::{CanonicalCode, Orientation, PlaneGraph};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    Edge(usize),
    Unbounded,
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slot::Edge(k) => write!(f, "e{k}"),
            Slot::Unbounded => f.write_str("*"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("no vertex {0}")]
    NoSuchVertex(usize),
    #[error("edge e{0} must appear at exactly two distinct vertices")]
    BadEdge(usize),
    #[error("bounded edges do not form a tree")]
    NotATree,
    #[error("vertex {0} has degree below 3")]
    LowDegree(usize),
    #[error("a Tischler tree needs at least 3 unbounded edges, found {0}")]
    TooFewUnbounded(usize),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A plane tree whose vertices carry cyclic lists of bounded and unbounded
/// edge slots.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TischlerTree {
    rotations: Vec<Vec<Slot>>,
    edges: Vec<(usize, usize)>,
}

impl TischlerTree {
    pub fn new(rotations: Vec<Vec<Slot>>) -> Result<Self, TreeError> {
        let r = rotations.len();
        let mut ends: Vec<Vec<usize>> = Vec::new();
        for (v, rot) in rotations.iter().enumerate() {
            if rot.len() < 3 {
                return Err(TreeError::LowDegree(v));
            }
            for s in rot {
                if let Slot::Edge(k) = *s {
                    if ends.len() <= k {
                        ends.resize(k + 1, Vec::new());
                    }
                    ends[k].push(v);
                }
            }
        }
        let mut edges = Vec::with_capacity(ends.len());
        for (k, e) in ends.iter().enumerate() {
            if e.len() != 2 || e[0] == e[1] {
                return Err(TreeError::BadEdge(k));
            }
            edges.push((e[0], e[1]));
        }
        if r == 0 || edges.len() + 1 != r {
            return Err(TreeError::NotATree);
        }
        let mut parent: Vec<usize> = (0..r).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(a, b) in &edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return Err(TreeError::NotATree);
            }
            parent[ra] = rb;
        }
        let t = TischlerTree { rotations, edges };
        let u = t.unbounded_count();
        if u < 3 {
            return Err(TreeError::TooFewUnbounded(u));
        }
        Ok(t)
    }

    /// Deletes vertex `v` of `g`: its edges become unbounded slots.
    pub(super) fn from_graph_minus_vertex(g: &PlaneGraph, v: usize) -> Result<Self, TreeError> {
        let mut edge_id = vec![usize::MAX; g.edge_count()];
        let mut next = 0;
        for e in 0..g.edge_count() {
            let (a, b) = g.edge_endpoints(e);
            if a != v && b != v {
                edge_id[e] = next;
                next += 1;
            }
        }
        let rotations = (0..g.vertex_count())
            .filter(|&u| u != v)
            .map(|u| {
                g.vertex_darts(u)
                    .into_iter()
                    .map(|d| match edge_id[g.edge(d)] {
                        usize::MAX => Slot::Unbounded,
                        k => Slot::Edge(k),
                    })
                    .collect()
            })
            .collect();
        Self::new(rotations)
    }

    pub fn rotations(&self) -> &[Vec<Slot>] {
        &self.rotations
    }

    pub fn bounded_edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.rotations.len()
    }

    pub fn unbounded_count(&self) -> usize {
        self.rotations
            .iter()
            .flatten()
            .filter(|s| **s == Slot::Unbounded)
            .count()
    }

    /// Unbounded slots at each vertex.
    pub fn unbounded_at(&self, v: usize) -> usize {
        self.rotations[v]
            .iter()
            .filter(|s| **s == Slot::Unbounded)
            .count()
    }

    /// Multiplicities of the finite critical points.
    pub fn branching(&self) -> BranchingData {
        BranchingData::from_multiplicities(self.rotations.iter().map(|r| r.len() - 2).collect())
    }

    /// Degree of the anti-polynomial: the number of unbounded edges minus one.
    pub fn degree(&self) -> usize {
        self.unbounded_count() - 1
    }

    /// The same tree with all rotations reversed.
    pub fn mirror(&self) -> TischlerTree {
        TischlerTree {
            rotations: self
                .rotations
                .iter()
                .map(|r| r.iter().rev().copied().collect())
                .collect(),
            edges: self.edges.clone(),
        }
    }

    /// Adds a vertex at infinity absorbing every unbounded edge. Returns the
    /// compactified graph and the id of the new vertex.
    pub fn compactify(&self) -> (TischlerGraph, usize) {
        let k = self.edges.len();
        let n = 2 * (k + self.unbounded_count());
        let alpha: Vec<usize> = (0..n).map(|d| d ^ 1).collect();
        let mut sigma = vec![usize::MAX; n];
        let mut seen = vec![false; k];
        let mut stub = 2 * k;
        let mut far = Vec::new();
        for rot in &self.rotations {
            let darts: Vec<usize> = rot
                .iter()
                .map(|s| match *s {
                    Slot::Edge(e) => {
                        let d = if seen[e] { 2 * e + 1 } else { 2 * e };
                        seen[e] = true;
                        d
                    }
                    Slot::Unbounded => {
                        stub += 2;
                        far.push(stub - 1);
                        stub - 2
                    }
                })
                .collect();
            for (i, &d) in darts.iter().enumerate() {
                sigma[d] = darts[(i + 1) % darts.len()];
            }
        }
        // Capping each stub with its own leaf gives a plane tree with one
        // face; the far ends occur along it in the order ℓ_1, ℓ_2, ..., and
        // the vertex at infinity turns through them in reverse.
        for &l in &far {
            sigma[l] = l;
        }
        let capped = PlaneGraph::new(alpha.clone(), sigma.clone()).expect("plane tree");
        let walk = capped.face_walk(0);
        let order: Vec<usize> = walk
            .darts
            .iter()
            .copied()
            .filter(|d| far.contains(d))
            .collect();
        for (i, &l) in order.iter().enumerate() {
            sigma[l] = order[(i + order.len() - 1) % order.len()];
        }
        let g = PlaneGraph::new_connected(alpha, sigma).expect("compactified tree is planar");
        let inf = g.vertex(far[0]);
        let t = validate(&g).expect("compactified tree is a Tischler graph");
        (t, inf)
    }

    /// Equivalence invariant: the code of the compactification.
    pub fn canonical_code(&self, mode: Orientation) -> CanonicalCode {
        self.compactify().0.graph().canonical_code(mode)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (v, rot) in self.rotations.iter().enumerate() {
            let slots: Vec<String> = rot.iter().map(|x| x.to_string()).collect();
            s.push_str(&format!("V {v}: {}\n", slots.join(" ")));
        }
        s
    }
}

pub fn parse_tree(src: &str) -> Result<TischlerTree, TreeError> {
    let err = |line: usize, msg: &str| TreeError::Parse {
        line,
        msg: msg.to_string(),
    };
    let mut rows: Vec<(usize, Vec<Slot>)> = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let rest = line
            .strip_prefix('V')
            .ok_or_else(|| err(i + 1, "expected `V <id>: ...`"))?;
        let (id, slots) = rest
            .split_once(':')
            .ok_or_else(|| err(i + 1, "missing `:`"))?;
        let id: usize = id.trim().parse().map_err(|_| err(i + 1, "bad vertex id"))?;
        let slots = slots
            .split_whitespace()
            .map(|t| {
                if t == "*" {
                    Ok(Slot::Unbounded)
                } else {
                    t.strip_prefix('e')
                        .and_then(|k| k.parse().ok())
                        .map(Slot::Edge)
                        .ok_or_else(|| err(i + 1, "slot must be `e<k>` or `*`"))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push((id, slots));
    }
    rows.sort_by_key(|r| r.0);
    if rows.iter().enumerate().any(|(i, r)| r.0 != i) {
        return Err(err(0, "vertex ids must be 0..r"));
    }
    TischlerTree::new(rows.into_iter().map(|r| r.1).collect())
}
