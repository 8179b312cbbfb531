//! Simple closed curves on the sphere punctured at the vertices of a
//! topological Tischler graph, and their pull-backs under the Schottky map.
//!
//! The sphere minus the vertices deformation-retracts onto the dual graph,
//! so a curve is recorded by the closed dual walk it follows: a cyclic list
//! of steps `(A_i, e_i)`, where the `i`-th arc runs inside face `A_i` and
//! leaves it across edge `e_i` into `A_{i+1}`. Free homotopy classes are
//! cyclically reduced walks up to rotation and reversal.
//!
//! A word may carry a realization: one key per crossing, giving the position
//! of the crossing along its edge, measured in the direction of the edge's
//! least dart. Keys turn the walk into an explicit curve: inside each face the
//! arcs become chords between boundary points.

mod levy;
mod matrix;
mod pullback;
mod random;
mod realize;
mod text;

pub use levy::{certify_levy, find_levy_cycle, length_two_curves};
pub use matrix::{
    irreducible_components, leading_eigenvalue, Contribution, IrreducibleComponent, Rational,
    ThurstonMatrix,
};
pub use pullback::{iterate_pullback, pullback, OrbitEnd, OrbitStep, PullbackComponent};
pub use random::{random_reduced_walk, random_simple_curve, subtree_boundary};
pub use realize::{is_simple, realize, realize_all, REALIZE_BUDGET};
pub use text::{format_word, parse_word};

use crate::tischler::TischlerGraph;
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("curve operations need a hyperbolic graph (at least 3 vertices)")]
    NonHyperbolic,
    #[error("step {index}: edge {edge} does not lie on face {face}")]
    EdgeNotOnFace {
        index: usize,
        face: usize,
        edge: usize,
    },
    #[error(
        "step {index}: crossing edge {edge} from face {from} leads to face {expected}, not {found}"
    )]
    Inconsistent {
        index: usize,
        edge: usize,
        from: usize,
        expected: usize,
        found: usize,
    },
    #[error("face {0} does not exist")]
    NoSuchFace(usize),
    #[error("edge {0} does not exist")]
    NoSuchEdge(usize),
    #[error("key list has {found} entries for {expected} crossings")]
    KeyCount { expected: usize, found: usize },
    #[error("the word has no realization as a simple closed curve")]
    NotRealizable,
    #[error("multicurve is empty")]
    EmptyMulticurve,
    #[error("curve {0} is peripheral")]
    Peripheral(usize),
    #[error("curves {0} and {1} are homotopic")]
    Homotopic(usize, usize),
    #[error("curves cannot be realized disjointly")]
    NotDisjoint,
    #[error("realization search gave up after {0} nodes")]
    SearchLimit(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// One arc of a curve: it lies in `face` and leaves through `edge`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Step {
    pub face: usize,
    pub edge: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CurveWord {
    steps: Vec<Step>,
    keys: Option<Vec<u64>>,
    /// Face containing the curve when it crosses nothing.
    home: usize,
}

pub(crate) fn require_hyperbolic(t: &TischlerGraph) -> Result<(), CurveError> {
    if t.is_hyperbolic() {
        Ok(())
    } else {
        Err(CurveError::NonHyperbolic)
    }
}

/// The face across edge `e` from face `a`.
pub(crate) fn across(t: &TischlerGraph, e: usize, a: usize) -> Option<usize> {
    let g = t.graph();
    let (d, x) = g.edge_darts(e);
    let (f, h) = (g.face(d), g.face(x));
    if f == a {
        Some(h)
    } else if h == a {
        Some(f)
    } else {
        None
    }
}

impl CurveWord {
    /// Checks that consecutive steps are adjacent across the stated edges.
    pub fn new(t: &TischlerGraph, steps: Vec<Step>) -> Result<Self, CurveError> {
        let g = t.graph();
        let n = steps.len();
        for (i, s) in steps.iter().enumerate() {
            if s.face >= g.face_count() {
                return Err(CurveError::NoSuchFace(s.face));
            }
            if s.edge >= g.edge_count() {
                return Err(CurveError::NoSuchEdge(s.edge));
            }
            let next = across(t, s.edge, s.face).ok_or(CurveError::EdgeNotOnFace {
                index: i,
                face: s.face,
                edge: s.edge,
            })?;
            let found = steps[(i + 1) % n].face;
            if next != found {
                return Err(CurveError::Inconsistent {
                    index: i,
                    edge: s.edge,
                    from: s.face,
                    expected: next,
                    found,
                });
            }
        }
        let home = steps.first().map_or(0, |s| s.face);
        Ok(CurveWord {
            steps,
            keys: None,
            home,
        })
    }

    /// A curve inside face `face`, crossing nothing.
    pub fn empty(face: usize) -> Self {
        CurveWord {
            steps: Vec::new(),
            keys: None,
            home: face,
        }
    }

    /// The word of a dual walk given by its start face and crossed edges.
    pub fn from_edges(
        t: &TischlerGraph,
        start: usize,
        edges: &[usize],
    ) -> Result<Self, CurveError> {
        let mut steps = Vec::with_capacity(edges.len());
        let mut face = start;
        for (i, &e) in edges.iter().enumerate() {
            if e >= t.graph().edge_count() {
                return Err(CurveError::NoSuchEdge(e));
            }
            steps.push(Step { face, edge: e });
            face = across(t, e, face).ok_or(CurveError::EdgeNotOnFace {
                index: i,
                face,
                edge: e,
            })?;
        }
        Self::new(t, steps)
    }

    /// The boundary of a small disk around vertex `v`.
    pub fn vertex_link(t: &TischlerGraph, v: usize) -> Self {
        let g = t.graph();
        let steps = g
            .vertex_darts(v)
            .into_iter()
            .map(|d| Step {
                face: g.face(d),
                edge: g.edge(d),
            })
            .collect();
        Self::new(t, steps).expect("vertex links are closed dual walks")
    }

    pub(crate) fn from_parts(steps: Vec<Step>, keys: Option<Vec<u64>>, home: usize) -> Self {
        let home = steps.first().map_or(home, |s| s.face);
        CurveWord { steps, keys, home }
    }

    pub fn with_keys(mut self, keys: Vec<u64>) -> Result<Self, CurveError> {
        if keys.len() != self.steps.len() {
            return Err(CurveError::KeyCount {
                expected: self.steps.len(),
                found: keys.len(),
            });
        }
        self.keys = Some(keys);
        Ok(self)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn keys(&self) -> Option<&[u64]> {
        self.keys.as_deref()
    }

    pub fn is_realized(&self) -> bool {
        self.keys.is_some() || self.steps.is_empty()
    }

    /// Face of an empty word (or of the first arc).
    pub fn home(&self) -> usize {
        self.home
    }

    /// Number of crossings with the graph.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Crossings `(edge, key)` in order; requires a realization.
    pub fn crossings(&self) -> Vec<(usize, u64)> {
        let keys = self.keys.as_ref().expect("crossings need a realized word");
        self.steps
            .iter()
            .zip(keys)
            .map(|(s, &k)| (s.edge, k))
            .collect()
    }

    /// Positions `i` where the arc after crossing `i` turns straight back
    /// across the same edge.
    fn backtracks(&self) -> Vec<usize> {
        let n = self.steps.len();
        (0..n)
            .filter(|&i| n >= 2 && self.steps[i].edge == self.steps[(i + 1) % n].edge)
            .collect()
    }

    pub fn is_reduced(&self) -> bool {
        self.backtracks().is_empty()
    }

    /// Removes bigons with the graph until none are left. Innermost bigons
    /// (no crossing of the curve between the two crossings on the edge) go
    /// first, so a simple curve stays simple and keeps its keys.
    pub fn reduce(&self) -> CurveWord {
        let mut steps = self.steps.clone();
        let mut keys = self.keys.clone();
        let mut home = self.home;
        loop {
            let n = steps.len();
            if n == 0 {
                break;
            }
            let cands: Vec<usize> = (0..n)
                .filter(|&i| steps[i].edge == steps[(i + 1) % n].edge)
                .collect();
            if cands.is_empty() {
                break;
            }
            let innermost = |i: usize| -> bool {
                let Some(k) = keys.as_ref() else { return true };
                let j = (i + 1) % n;
                let (lo, hi) = (k[i].min(k[j]), k[i].max(k[j]));
                let e = steps[i].edge;
                !(0..n).any(|x| steps[x].edge == e && k[x] > lo && k[x] < hi)
            };
            let i = cands
                .iter()
                .copied()
                .find(|&i| innermost(i))
                .unwrap_or(cands[0]);
            let j = (i + 1) % n;
            home = steps[i].face;
            // Arcs i, i+1 and i+2 merge into one arc in face A_i.
            let keep: Vec<usize> = (0..n).filter(|&x| x != i && x != j).collect();
            let new_steps: Vec<Step> = keep.iter().map(|&x| steps[x]).collect();
            if let Some(k) = keys.as_mut() {
                *k = keep.iter().map(|&x| k[x]).collect();
            }
            // The step after j keeps its edge but its arc now starts in A_i,
            // which is its own face already: A_{i+2} = A_i.
            steps = new_steps;
        }
        CurveWord::from_parts(steps, keys, home)
    }

    /// Complexity: crossings of a bigon-free representative.
    pub fn complexity(&self) -> usize {
        self.reduce().len()
    }

    /// Steps of the same curve traversed backwards.
    pub fn reversed(&self) -> CurveWord {
        let n = self.steps.len();
        if n == 0 {
            return self.clone();
        }
        // Backwards, the arc in A_{i+1} leaves through e_i.
        let order: Vec<usize> = (0..n).rev().collect();
        let steps = order
            .iter()
            .map(|&i| Step {
                face: self.steps[(i + 1) % n].face,
                edge: self.steps[i].edge,
            })
            .collect();
        let keys = self
            .keys
            .as_ref()
            .map(|k| order.iter().map(|&i| k[i]).collect());
        CurveWord::from_parts(steps, keys, self.home)
    }

    /// Canonical representative of the unoriented cyclic word: the least
    /// rotation of the word or of its reverse. Keys are dropped.
    pub fn cyclic_normal_form(&self) -> Vec<Step> {
        let mut best: Option<Vec<Step>> = None;
        for w in [self.steps.clone(), self.reversed().steps] {
            for r in 0..w.len().max(1) {
                let mut v = w.clone();
                let len = v.len();
                v.rotate_left(r.min(len));
                if best.as_ref().is_none_or(|b| v < *b) {
                    best = Some(v);
                }
            }
        }
        best.unwrap_or_default()
    }

    /// Rotated so that the crossing at index `r` comes first.
    pub fn rotated(&self, r: usize) -> CurveWord {
        let mut steps = self.steps.clone();
        let mut keys = self.keys.clone();
        let n = steps.len();
        if n > 0 {
            steps.rotate_left(r % n);
            if let Some(k) = keys.as_mut() {
                k.rotate_left(r % n);
            }
        }
        CurveWord::from_parts(steps, keys, self.home)
    }
}

/// Free homotopy of unoriented curves: equal reduced words up to rotation
/// and reversal.
pub fn homotopic(a: &CurveWord, b: &CurveWord) -> bool {
    let (a, b) = (a.reduce(), b.reduce());
    a.len() == b.len() && a.cyclic_normal_form() == b.cyclic_normal_form()
}

/// Whether one side of the curve holds at most one vertex. Splits each face
/// along the curve's chords and grows regions across edge segments and
/// vertices.
pub fn is_peripheral(t: &TischlerGraph, w: &CurveWord) -> Result<bool, CurveError> {
    let w = w.reduce();
    if w.is_empty() {
        return Ok(true);
    }
    let w = if w.is_realized() { w } else { realize(t, &w)? };
    let sides = realize::side_vertex_counts(t, &[&w]);
    if sides.len() != 2 {
        return Err(CurveError::Internal(format!(
            "a simple closed curve should have 2 sides, found {}",
            sides.len()
        )));
    }
    Ok(sides.iter().min().copied().unwrap_or(0) <= 1)
}

/// Algebraic test: the reduced word is empty or a vertex link.
pub fn is_peripheral_by_links(t: &TischlerGraph, w: &CurveWord) -> bool {
    let w = w.reduce();
    w.is_empty()
        || (0..t.graph().vertex_count()).any(|v| homotopic(&w, &CurveWord::vertex_link(t, v)))
}

/// A set of disjoint, pairwise non-homotopic, non-peripheral curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multicurve {
    curves: Vec<CurveWord>,
}

impl Multicurve {
    pub fn new(t: &TischlerGraph, words: Vec<CurveWord>) -> Result<Self, CurveError> {
        require_hyperbolic(t)?;
        if words.is_empty() {
            return Err(CurveError::EmptyMulticurve);
        }
        let reduced: Vec<CurveWord> = words.iter().map(|w| w.reduce()).collect();
        for (i, w) in reduced.iter().enumerate() {
            if is_peripheral(t, w)? {
                return Err(CurveError::Peripheral(i));
            }
            for (j, u) in reduced.iter().enumerate().take(i) {
                if homotopic(w, u) {
                    return Err(CurveError::Homotopic(j, i));
                }
            }
        }
        let curves = realize_all(t, &reduced)?;
        Ok(Multicurve { curves })
    }

    pub fn curves(&self) -> &[CurveWord] {
        &self.curves
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }
}

/// Distinct homotopy classes among `words`, by cyclic normal form.
pub fn distinct_classes(words: &[CurveWord]) -> Vec<CurveWord> {
    let mut seen = HashSet::new();
    words
        .iter()
        .map(|w| w.reduce())
        .filter(|w| seen.insert((w.is_empty(), w.cyclic_normal_form())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rotation_graph::library::*;
    use crate::tischler::validate;

    fn k4t() -> TischlerGraph {
        validate(&k4()).unwrap()
    }

    #[test]
    fn vertex_link_is_peripheral() {
        let t = k4t();
        for v in 0..4 {
            let w = CurveWord::vertex_link(&t, v);
            assert_eq!(w.len(), 3);
            assert!(w.is_reduced());
            assert!(is_peripheral(&t, &w).unwrap());
            assert!(is_peripheral_by_links(&t, &w));
        }
    }

    #[test]
    fn backtrack_is_removed() {
        let t = k4t();
        let e = t.faces()[0].edges[0];
        let other = across(&t, e, 0).unwrap();
        let w = CurveWord::new(
            &t,
            vec![
                Step { face: 0, edge: e },
                Step {
                    face: other,
                    edge: e,
                },
            ],
        )
        .unwrap()
        .with_keys(vec![0, 1])
        .unwrap();
        let r = w.reduce();
        assert!(r.is_empty());
        assert!(is_peripheral(&t, &r).unwrap());
        assert_eq!(r.reduce(), r);
    }

    #[test]
    fn rejects_non_adjacent_steps() {
        let t = k4t();
        let e = t.faces()[0].edges[0];
        let err = CurveWord::new(
            &t,
            vec![Step { face: 0, edge: e }, Step { face: 0, edge: e }],
        );
        assert!(matches!(err, Err(CurveError::Inconsistent { .. })));
    }

    #[test]
    fn reversal_is_an_involution() {
        let t = k4t();
        let w = CurveWord::vertex_link(&t, 2);
        assert_eq!(w.reversed().reversed().steps(), w.steps());
        assert!(CurveWord::new(&t, w.reversed().steps().to_vec()).is_ok());
        assert!(homotopic(&w, &w.reversed()));
        assert!(homotopic(&w, &w.rotated(1)));
        assert!(!homotopic(&w, &CurveWord::vertex_link(&t, 0)));
    }
}
