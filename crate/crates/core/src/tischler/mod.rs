//! Topological Tischler graphs: validation, obstruction and trees.
//!
//! A topological Tischler graph is a connected plane graph whose vertices all
//! have degree at least 3 and whose faces are Jordan domains. Its faces are
//! the `d + 1` faces of a degree-`d` Schottky map, and vertex `v` stands for a
//! critical point of multiplicity `deg(v) - 2`.

mod tree;

pub use tree::{parse_tree, Slot, TischlerTree, TreeError};

use crate::rotation_graph::{CanonicalCode, FaceWalk, Orientation, PlaneGraph};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Critical multiplicities `m_i = deg(v_i) - 2`, in decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BranchingData(pub Vec<usize>);

impl BranchingData {
    pub fn from_multiplicities(mut m: Vec<usize>) -> Self {
        m.sort_unstable_by(|a, b| b.cmp(a));
        BranchingData(m)
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses `2,1,1` (any order; stored sorted).
    pub fn parse(s: &str) -> Option<Self> {
        let m = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().ok().filter(|&x| x >= 1))
            .collect::<Option<Vec<_>>>()?;
        Some(Self::from_multiplicities(m))
    }
}

impl fmt::Display for BranchingData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|m| m.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Two faces sharing two distinct edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ObstructionWitness {
    pub face_a: usize,
    pub face_b: usize,
    pub edge_a: usize,
    pub edge_b: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    Disconnected { components: usize },
    LowDegree { vertex: usize, degree: usize },
    Loop { vertex: usize, edge: usize },
    FaceRepeatsVertex { face: usize, vertex: usize },
    FaceRepeatsEdge { face: usize, edge: usize },
    TooFewFaces { faces: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Disconnected { components } => {
                write!(f, "graph is disconnected ({components} components)")
            }
            Violation::LowDegree { vertex, degree } => {
                write!(f, "vertex {vertex} has degree {degree} < 3")
            }
            Violation::Loop { vertex, edge } => {
                write!(f, "edge {edge} is a loop at vertex {vertex}")
            }
            Violation::FaceRepeatsVertex { face, vertex } => {
                write!(
                    f,
                    "face {face} is not a Jordan domain: vertex {vertex} repeats"
                )
            }
            Violation::FaceRepeatsEdge { face, edge } => {
                write!(f, "face {face} is not a Jordan domain: edge {edge} repeats")
            }
            Violation::TooFewFaces { faces } => write!(f, "only {faces} faces; need at least 3"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TischlerGraph {
    graph: PlaneGraph,
    faces: Vec<FaceWalk>,
    degree: usize,
    branching: BranchingData,
}

/// Checks every defining condition and reports all failures.
pub fn validate(g: &PlaneGraph) -> Result<TischlerGraph, Vec<Violation>> {
    let mut bad = Vec::new();
    if !g.is_connected() {
        bad.push(Violation::Disconnected {
            components: g.component_count(),
        });
    }
    for (v, &deg) in g.degrees().iter().enumerate() {
        if deg < 3 {
            bad.push(Violation::LowDegree {
                vertex: v,
                degree: deg,
            });
        }
    }
    for e in 0..g.edge_count() {
        if g.is_loop(e) {
            bad.push(Violation::Loop {
                vertex: g.edge_endpoints(e).0,
                edge: e,
            });
        }
    }
    let faces = g.faces();
    for (f, walk) in faces.iter().enumerate() {
        if let Some(v) = first_repeat(&walk.vertices) {
            bad.push(Violation::FaceRepeatsVertex { face: f, vertex: v });
        }
        if let Some(e) = first_repeat(&walk.edges) {
            bad.push(Violation::FaceRepeatsEdge { face: f, edge: e });
        }
    }
    if g.face_count() < 3 {
        bad.push(Violation::TooFewFaces {
            faces: g.face_count(),
        });
    }
    if !bad.is_empty() {
        return Err(bad);
    }
    let degree = g.face_count() - 1;
    let branching =
        BranchingData::from_multiplicities(g.degrees().iter().map(|&k| k - 2).collect());
    assert_eq!(branching.total(), 2 * degree - 2, "Riemann-Hurwitz count");
    Ok(TischlerGraph {
        graph: g.clone(),
        faces,
        degree,
        branching,
    })
}

fn first_repeat(xs: &[usize]) -> Option<usize> {
    let mut seen = std::collections::HashSet::new();
    xs.iter().copied().find(|&x| !seen.insert(x))
}

impl TischlerGraph {
    pub fn new(g: &PlaneGraph) -> Result<Self, Vec<Violation>> {
        validate(g)
    }

    pub fn graph(&self) -> &PlaneGraph {
        &self.graph
    }

    pub fn faces(&self) -> &[FaceWalk] {
        &self.faces
    }

    /// Degree of the Schottky map: one less than the number of faces.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn branching_data(&self) -> &BranchingData {
        &self.branching
    }

    pub fn canonical_code(&self) -> CanonicalCode {
        self.graph.canonical_code(Orientation::Preserve)
    }

    /// Least witness `(A, B, a, b)` with `A < B`, `a < b`, if any pair of
    /// faces shares two edges.
    pub fn is_obstructed(&self) -> Option<ObstructionWitness> {
        let g = &self.graph;
        // Each edge borders exactly two distinct faces (faces are Jordan).
        let mut sides: Vec<(usize, usize, usize)> = (0..g.edge_count())
            .map(|e| {
                let (d, a) = g.edge_darts(e);
                let (x, y) = (g.face(d), g.face(a));
                (x.min(y), x.max(y), e)
            })
            .collect();
        sides.sort_unstable();
        sides
            .windows(2)
            .find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1))
            .map(|w| ObstructionWitness {
                face_a: w[0].0,
                face_b: w[0].1,
                edge_a: w[0].2,
                edge_b: w[1].2,
            })
    }

    /// A vertex meeting every face, if there is one.
    pub fn polynomial_vertex(&self) -> Option<usize> {
        let f = self.graph.face_count();
        self.graph.degrees().iter().position(|&k| k == f)
    }

    pub fn is_antipolynomial(&self) -> bool {
        self.polynomial_vertex().is_some()
    }

    /// Schottky maps with only two critical values have a Euclidean orbifold.
    pub fn is_hyperbolic(&self) -> bool {
        self.graph.vertex_count() >= 3
    }

    /// Full Tischler graph: every edge subdivided by a repelling fixed point.
    /// Critical vertices keep their ids `0..V`; the new vertices follow.
    pub fn expand_full(&self) -> PlaneGraph {
        self.graph.subdivide_edges()
    }

    /// Deletes `v`, turning its edges into unbounded edges of a plane tree.
    /// Defined exactly when `v` meets every face.
    pub fn to_tree(&self, v: usize) -> Result<Option<TischlerTree>, TreeError> {
        let g = &self.graph;
        if v >= g.vertex_count() {
            return Err(TreeError::NoSuchVertex(v));
        }
        if g.degree(v) != g.face_count() {
            return Ok(None);
        }
        TischlerTree::from_graph_minus_vertex(g, v).map(Some)
    }

    pub fn to_json(&self) -> TischlerJson {
        TischlerJson {
            canonical_code: self.canonical_code(),
            degree: self.degree,
            branching: self.branching.clone(),
            obstructed: self.is_obstructed().is_some(),
            witness: self.is_obstructed(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TischlerJson {
    pub canonical_code: CanonicalCode,
    pub degree: usize,
    pub branching: BranchingData,
    pub obstructed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<ObstructionWitness>,
}
