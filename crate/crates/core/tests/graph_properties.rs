use proptest::prelude::*;
use std::collections::HashSet;
use tischler_core::enumerate::enumerate_graphs;
use tischler_core::rotation_graph::library::{cube, fig6, k4, octahedron, prism, theta};
use tischler_core::rotation_graph::{GraphError, Orientation, PlaneGraph};

/// Twenty connected plane graphs: the named ones and the start of the
/// degree-4 catalog.
fn sample_graphs() -> Vec<PlaneGraph> {
    let mut out = vec![
        k4(),
        theta(3),
        theta(5),
        prism(),
        cube(),
        octahedron(),
        fig6(),
    ];
    let catalog = enumerate_graphs(4).unwrap();
    out.extend(
        catalog
            .entries
            .iter()
            .take(20 - out.len())
            .map(|e| e.graph()),
    );
    assert_eq!(out.len(), 20);
    out
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

/// A fixed-point-free involution on `2k` darts and an arbitrary permutation.
fn rotation_system() -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
    (1usize..8)
        .prop_flat_map(|k| (permutation(2 * k), permutation(2 * k)))
        .prop_map(|(pairing, sigma)| {
            let mut alpha = vec![0; pairing.len()];
            for p in pairing.chunks(2) {
                alpha[p[0]] = p[1];
                alpha[p[1]] = p[0];
            }
            (alpha, sigma)
        })
}

fn cycles(p: &[usize]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut count = 0;
    for s in 0..p.len() {
        if !seen[s] {
            count += 1;
            let mut d = s;
            while !seen[d] {
                seen[d] = true;
                d = p[d];
            }
        }
    }
    count
}

fn components(alpha: &[usize], sigma: &[usize]) -> usize {
    let mut parent: Vec<usize> = (0..alpha.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for d in 0..alpha.len() {
        for e in [alpha[d], sigma[d]] {
            let (a, b) = (find(&mut parent, d), find(&mut parent, e));
            parent[a] = b;
        }
    }
    (0..alpha.len())
        .filter(|&d| find(&mut parent, d) == d)
        .count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn euler_identity(sys in rotation_system()) {
        let (alpha, sigma) = sys;
        let phi: Vec<usize> = (0..alpha.len()).map(|d| sigma[alpha[d]]).collect();
        let chi = cycles(&sigma) as i64 - cycles(&alpha) as i64 + cycles(&phi) as i64;
        let comps = components(&alpha, &sigma) as i64;
        match PlaneGraph::new(alpha, sigma) {
            Ok(g) => {
                prop_assert_eq!(g.component_count() as i64, comps);
                prop_assert_eq!(g.euler_characteristic(), 2 * comps);
                prop_assert_eq!(g.vertex_count() as i64 - g.edge_count() as i64 + g.face_count() as i64, chi);
            }
            Err(GraphError::NotSphere { .. }) => prop_assert!(chi < 2 * comps),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn dual_is_an_involution(idx in 0usize..20) {
        let g = &sample_graphs()[idx];
        let d = g.dual();
        prop_assert_eq!(d.vertex_count(), g.face_count());
        prop_assert_eq!(d.face_count(), g.vertex_count());
        prop_assert_eq!(d.edge_count(), g.edge_count());
        prop_assert_eq!(&d.dual(), g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// Each case relabels all twenty sample graphs.
    #[test]
    fn canonical_code_is_relabeling_invariant(seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for g in sample_graphs() {
            let mut perm: Vec<usize> = (0..g.dart_count()).collect();
            perm.shuffle(&mut rng);
            let h = g.relabel(&perm);
            prop_assert_eq!(h.canonical_code(Orientation::Preserve), g.canonical_code(Orientation::Preserve));
            prop_assert_eq!(h.canonical_code(Orientation::Either), g.canonical_code(Orientation::Either));
            prop_assert_eq!(h.mirror().canonical_code(Orientation::Either), g.canonical_code(Orientation::Either));
        }
    }
}

#[test]
fn automorphism_groups_are_closed() {
    for g in sample_graphs() {
        let group = g.automorphism_group().unwrap();
        let set: HashSet<_> = group.iter().cloned().collect();
        assert_eq!(set.len(), group.len());
        for a in &group {
            assert!(a.is_automorphism_of(&g));
            assert!(set.contains(&a.inverse()));
            for b in &group {
                assert!(set.contains(&a.compose(b)));
            }
        }
        // The orientation-preserving part is a subgroup of index 1 or 2.
        let (pres, total) = g.automorphism_orders().unwrap();
        assert!(total == pres || total == 2 * pres);
        for a in group.iter().filter(|a| a.preserves_orientation) {
            for b in group.iter().filter(|a| a.preserves_orientation) {
                assert!(a.compose(b).preserves_orientation);
            }
        }
    }
}

#[test]
fn known_automorphism_orders() {
    assert_eq!(k4().automorphism_orders().unwrap(), (12, 24));
    assert_eq!(cube().automorphism_orders().unwrap(), (24, 48));
    assert_eq!(prism().automorphism_orders().unwrap(), (6, 12));
}
