//! Seeded sources of curves for property tests.

use super::realize::realize_with_budget;
use super::{across, CurveWord, Step};
use crate::tischler::TischlerGraph;
use rand::seq::SliceRandom;
use rand::Rng;

/// A random cyclically reduced closed walk in the dual graph with between
/// `min_len` and `max_len` crossings.
pub fn random_reduced_walk<R: Rng>(
    t: &TischlerGraph,
    rng: &mut R,
    min_len: usize,
    max_len: usize,
) -> CurveWord {
    assert!(2 <= min_len && min_len <= max_len);
    let faces = t.faces();
    loop {
        let start = rng.gen_range(0..faces.len());
        let mut steps: Vec<Step> = Vec::new();
        let mut face = start;
        let mut last = usize::MAX;
        while steps.len() < max_len {
            let choices: Vec<usize> = faces[face]
                .edges
                .iter()
                .copied()
                .filter(|&e| e != last)
                .collect();
            let e = *choices
                .choose(rng)
                .expect("faces have at least three edges");
            steps.push(Step { face, edge: e });
            face = across(t, e, face).expect("edge on face");
            last = e;
            if face == start && steps.len() >= min_len && e != steps[0].edge {
                return CurveWord::new(t, steps).expect("closed dual walk");
            }
        }
    }
}

/// A random simple closed curve, realized and reduced. Mixes boundaries of
/// random subtrees with realizable random walks.
pub fn random_simple_curve<R: Rng>(t: &TischlerGraph, rng: &mut R, max_len: usize) -> CurveWord {
    loop {
        if rng.gen_bool(0.5) {
            let w = subtree_boundary(t, rng);
            if let Ok(r) = realize_with_budget(t, std::slice::from_ref(&w), 100_000) {
                return r[0].reduce();
            }
        } else {
            let w = random_reduced_walk(t, rng, 2, max_len.max(2));
            if let Ok(r) = realize_with_budget(t, std::slice::from_ref(&w), 20_000) {
                return r[0].reduce();
            }
        }
    }
}

/// Boundary of a thin neighbourhood of a random tree in the graph, grown
/// from a random vertex to a random size.
pub fn subtree_boundary<R: Rng>(t: &TischlerGraph, rng: &mut R) -> CurveWord {
    let g = t.graph();
    let n = g.vertex_count();
    let size = rng.gen_range(1..n);
    let root = rng.gen_range(0..n);
    let mut inside = vec![false; n];
    inside[root] = true;
    let mut tree_edge = vec![false; g.edge_count()];
    for _ in 1..size {
        let frontier: Vec<usize> = (0..g.dart_count())
            .filter(|&d| inside[g.vertex(d)] && !inside[g.vertex(g.alpha(d))])
            .collect();
        let d = *frontier.choose(rng).expect("connected graph");
        inside[g.vertex(g.alpha(d))] = true;
        tree_edge[g.edge(d)] = true;
    }
    // Walk around the tree: follow tree edges, cross the others.
    let start = g.vertex_darts(root)[0];
    let mut steps = Vec::new();
    let mut d = start;
    loop {
        if tree_edge[g.edge(d)] {
            d = g.sigma(g.alpha(d));
        } else {
            steps.push(Step {
                face: g.face(d),
                edge: g.edge(d),
            });
            d = g.sigma(d);
        }
        if d == start {
            break;
        }
    }
    CurveWord::new(t, steps).expect("tree boundaries are closed dual walks")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::is_simple;
    use crate::rotation_graph::library::*;
    use crate::tischler::validate;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn walks_are_reduced_and_curves_simple() {
        let t = validate(&k4()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let w = random_reduced_walk(&t, &mut rng, 2, 10);
            assert!(w.is_reduced() && (2..=10).contains(&w.len()));
            let c = random_simple_curve(&t, &mut rng, 8);
            assert!(c.is_reduced());
            assert!(is_simple(&t, &[&c]));
        }
    }

    #[test]
    fn single_vertex_tree_is_the_link() {
        let t = validate(&prism()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..30 {
            let w = subtree_boundary(&t, &mut rng);
            if w.len() == 3 {
                assert!(crate::curves::is_peripheral_by_links(&t, &w));
            }
        }
    }
}
