//! Generation of 2-connected plane multigraphs by ear insertion.
//!
//! Every face of a topological Tischler graph is bounded by a cycle, so the
//! graph is 2-connected and has an ear decomposition in which every partial
//! union is again 2-connected and plane. Each ear is a path drawn inside one
//! face between two distinct boundary vertices. A graph with `d + 1` faces
//! is a cycle plus `d - 1` ears.

use crate::rotation_graph::{CanonicalCode, Orientation, PlaneGraph};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

/// Inserts a path with `interior` new vertices inside face `f`, from the
/// corner at position `i` of the face walk to the corner at position `j`.
pub(crate) fn insert_ear(
    g: &PlaneGraph,
    f: usize,
    i: usize,
    j: usize,
    interior: usize,
) -> PlaneGraph {
    let walk = g.face_walk(f);
    let n = g.dart_count();
    let len = walk.len();
    let mut alpha = g.alpha_slice().to_vec();
    let mut sigma = g.sigma_slice().to_vec();
    // Path edge t joins path vertex t to t + 1 via darts (n + 2t, n + 2t + 1).
    let edges = interior + 1;
    alpha.extend((0..2 * edges).map(|k| n + (k ^ 1)));
    sigma.resize(n + 2 * edges, usize::MAX);
    for t in 1..edges {
        let (b, a) = (n + 2 * (t - 1) + 1, n + 2 * t);
        sigma[b] = a;
        sigma[a] = b;
    }
    let mut put = |pos: usize, x: usize| {
        let prev = alpha[walk.darts[(pos + len - 1) % len]];
        sigma[x] = sigma[prev];
        sigma[prev] = x;
    };
    put(i, n);
    put(j, n + 2 * edges - 1);
    PlaneGraph::new(alpha, sigma).expect("ear inside a face keeps the embedding planar")
}

/// Cycle with `len` vertices (`len = 2` is a pair of parallel edges).
pub(crate) fn cycle(len: usize) -> PlaneGraph {
    let rotations: Vec<Vec<usize>> = (0..len)
        .map(|v| vec![2 * v, (2 * v + 2 * len - 1) % (2 * len)])
        .collect();
    PlaneGraph::from_rotations(&rotations).expect("cycle is planar")
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("degree must be at least 2, got {0}")]
    DegreeTooSmall(usize),
    #[error("resource limit exceeded: more than {0} candidates generated")]
    ResourceLimit(u64),
}

fn degree_two_count(g: &PlaneGraph) -> usize {
    g.degrees().iter().filter(|&&k| k == 2).count()
}

/// All 2-connected plane multigraphs with `d + 1` faces and minimum degree
/// at least 3, one per orientation-preserving class, keyed by canonical code.
pub fn generate(
    d: usize,
    cap: u64,
) -> Result<BTreeMap<CanonicalCode, PlaneGraph>, EnumerationError> {
    if d < 2 {
        return Err(EnumerationError::DegreeTooSmall(d));
    }
    let max_v = 2 * d - 2;
    let ears = d - 1;
    let counter = AtomicU64::new(0);
    let mut level: BTreeMap<CanonicalCode, PlaneGraph> = (2..=max_v)
        .map(cycle)
        .filter(|g| degree_two_count(g) <= 2 * ears)
        .map(|g| (g.canonical_code(Orientation::Preserve), g))
        .collect();
    for done in 0..ears {
        let remaining_after = ears - done - 1;
        let frontier: Vec<&PlaneGraph> = level.values().collect();
        let children: Vec<Vec<(CanonicalCode, PlaneGraph)>> = frontier
            .par_iter()
            .map(|g| {
                let mut out = Vec::new();
                let deg = g.degrees();
                let twos = deg.iter().filter(|&&k| k == 2).count();
                for f in 0..g.face_count() {
                    let walk = g.face_walk(f);
                    let len = walk.len();
                    for i in 0..len {
                        for j in i + 1..len {
                            let ends = [walk.vertices[i], walk.vertices[j]];
                            let relieved = ends.iter().filter(|&&v| deg[v] == 2).count();
                            for k in 0..=(max_v - g.vertex_count()) {
                                if twos - relieved + k > 2 * remaining_after {
                                    break;
                                }
                                if counter.fetch_add(1, Ordering::Relaxed) >= cap {
                                    return out;
                                }
                                let h = insert_ear(g, f, i, j, k);
                                out.push((h.canonical_code(Orientation::Preserve), h));
                            }
                        }
                    }
                }
                out
            })
            .collect();
        if counter.load(Ordering::Relaxed) > cap {
            return Err(EnumerationError::ResourceLimit(cap));
        }
        level = children.into_iter().flatten().collect();
    }
    level.retain(|_, g| g.degrees().iter().all(|&k| k >= 3));
    Ok(level)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rotation_graph::library::*;

    #[test]
    fn cycles_have_two_faces() {
        for n in 2..6 {
            let c = cycle(n);
            assert_eq!(
                (c.vertex_count(), c.edge_count(), c.face_count()),
                (n, n, 2)
            );
        }
    }

    #[test]
    fn ear_splits_a_face() {
        let c = cycle(4);
        let h = insert_ear(&c, 0, 0, 2, 0);
        assert_eq!(h.face_count(), 3);
        let h = insert_ear(&c, 1, 1, 3, 2);
        assert_eq!(
            (h.vertex_count(), h.edge_count(), h.face_count()),
            (6, 7, 3)
        );
    }

    #[test]
    fn degree_two_is_theta() {
        let g = generate(2, 1_000_000).unwrap();
        assert_eq!(g.len(), 1);
        assert!(g.contains_key(&theta(3).canonical_code(Orientation::Preserve)));
    }

    #[test]
    fn degree_three_contains_k4_and_fig6() {
        let g = generate(3, 1_000_000).unwrap();
        assert!(g.contains_key(&k4().canonical_code(Orientation::Preserve)));
        assert!(g.contains_key(&fig6().canonical_code(Orientation::Preserve)));
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(generate(4, 10), Err(EnumerationError::ResourceLimit(10)));
    }
}
