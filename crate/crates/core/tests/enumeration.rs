use std::collections::BTreeSet;
use tischler_core::enumerate::*;
use tischler_core::rotation_graph::{library, CanonicalCode, Orientation, PlaneGraph};
use tischler_core::tischler::{validate, BranchingData, TischlerTree};

/// Calls `visit` on every permutation of `0..n` whose cycles all have length
/// at least 3 and which has exactly `cycles` cycles.
fn permutations_with_long_cycles(n: usize, cycles: usize, visit: &mut impl FnMut(&[usize])) {
    fn go(
        sigma: &mut Vec<usize>,
        used: &mut Vec<bool>,
        left: usize,
        cycles: usize,
        visit: &mut impl FnMut(&[usize]),
    ) {
        let Some(start) = used.iter().position(|u| !u) else {
            if cycles == 0 {
                visit(sigma);
            }
            return;
        };
        if cycles == 0 || left < 3 * cycles {
            return;
        }
        used[start] = true;
        let mut path = vec![start];
        extend(sigma, used, left, cycles, &mut path, visit);
        used[start] = false;
    }
    fn extend(
        sigma: &mut Vec<usize>,
        used: &mut Vec<bool>,
        left: usize,
        cycles: usize,
        path: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if path.len() >= 3 && left - path.len() >= 3 * (cycles - 1) {
            for w in 0..path.len() {
                sigma[path[w]] = path[(w + 1) % path.len()];
            }
            go(sigma, used, left - path.len(), cycles - 1, visit);
        }
        for x in 0..sigma.len() {
            if !used[x] {
                used[x] = true;
                path.push(x);
                extend(sigma, used, left, cycles, path, visit);
                path.pop();
                used[x] = false;
            }
        }
    }
    let mut sigma = vec![0; n];
    let mut used = vec![false; n];
    go(&mut sigma, &mut used, n, cycles, visit);
}

/// Independent oracle: all rotation systems with the right dart count.
fn brute_force(d: usize) -> BTreeSet<CanonicalCode> {
    let mut found = BTreeSet::new();
    for v in 2..=2 * d - 2 {
        let n = 2 * (v + d - 1);
        let alpha: Vec<usize> = (0..n).map(|x| x ^ 1).collect();
        permutations_with_long_cycles(n, v, &mut |sigma| {
            if let Ok(g) = PlaneGraph::new(alpha.clone(), sigma.to_vec()) {
                if g.face_count() == d + 1 && validate(&g).is_ok() {
                    found.insert(g.canonical_code(Orientation::Preserve));
                }
            }
        });
    }
    found
}

#[test]
fn permutation_generator_counts() {
    // Permutations of 6 elements with two 3-cycles: 6! / (3 * 3 * 2) = 40.
    let mut k = 0;
    permutations_with_long_cycles(6, 2, &mut |_| k += 1);
    assert_eq!(k, 40);
    // Permutations of 8 with two cycles of length >= 3: 8!/(3*5) + 8!/(4*4*2).
    let mut k = 0;
    permutations_with_long_cycles(8, 2, &mut |_| k += 1);
    assert_eq!(k, 2688 + 1260);
}

#[test]
fn generator_matches_brute_force_up_to_degree_three() {
    for d in 2..=3 {
        let catalog = enumerate_graphs(d).unwrap();
        let generated: BTreeSet<CanonicalCode> = catalog
            .entries
            .iter()
            .map(|e| e.canonical_code.clone())
            .collect();
        assert_eq!(generated.len(), catalog.len(), "duplicate codes");
        assert_eq!(generated, brute_force(d), "degree {d}");
    }
}

#[test]
fn degree_two_is_the_theta_graph() {
    let c = enumerate_graphs(2).unwrap();
    assert_eq!(c.len(), 1);
    assert_eq!(
        c.entries[0].canonical_code,
        library::theta(3).canonical_code(Orientation::Preserve)
    );
}

#[test]
fn degree_four_nonpolynomial_histogram() {
    let c = enumerate_graphs(4).unwrap();
    let np = c.filter(|e| !e.obstructed && !e.antipolynomial);
    let hist = c.histogram(np);
    let expect = [
        (vec![1, 1, 1, 1, 1, 1], 1),
        (vec![2, 1, 1, 1, 1], 2),
        (vec![2, 2, 1, 1], 4),
        (vec![2, 2, 2], 1),
    ];
    assert_eq!(hist.len(), expect.len());
    for ((b, n), (eb, en)) in hist.iter().zip(expect) {
        assert_eq!((&b.0, *n), (&eb, en));
    }
}

#[test]
fn catalogs_are_closed_under_mirroring() {
    for d in 2..=5 {
        let c = enumerate_graphs(d).unwrap();
        assert!(c.mirror_pairing_ok(), "degree {d}");
        let codes: BTreeSet<_> = c.entries.iter().map(|e| &e.canonical_code).collect();
        assert_eq!(codes.len(), c.len());
        for e in &c.entries {
            assert_eq!(e.branching.total(), 2 * d - 2);
            if e.antipolynomial {
                assert!(!e.obstructed);
            }
        }
    }
}

fn mirror_pairs(trees: &[TischlerTree]) -> usize {
    let codes: Vec<_> = trees
        .iter()
        .map(|t| t.canonical_code(Orientation::Preserve))
        .collect();
    let chiral = trees
        .iter()
        .filter(|t| {
            let m = t.mirror().canonical_code(Orientation::Preserve);
            assert!(codes.contains(&m), "mirror missing");
            m != t.canonical_code(Orientation::Preserve)
        })
        .count();
    chiral / 2
}

#[test]
fn tree_catalog_counts() {
    let count = |m: &[usize]| enumerate_trees(&BranchingData(m.to_vec())).len();
    for m in 1..=4 {
        assert_eq!(count(&[m]), 1);
    }
    for m in [[1, 1], [2, 1], [3, 1], [2, 2]] {
        assert_eq!(count(&m), 1);
    }
    assert_eq!(count(&[1, 1, 1]), 1);
    let t211 = enumerate_trees(&BranchingData(vec![2, 1, 1]));
    assert_eq!((t211.len(), mirror_pairs(&t211)), (4, 1));
    let t1111 = enumerate_trees(&BranchingData(vec![1, 1, 1, 1]));
    assert_eq!((t1111.len(), mirror_pairs(&t1111)), (4, 1));
    // One tree has a vertex with three bounded edges; the rest are chains.
    let hubs = t1111
        .iter()
        .filter(|t| (0..4).any(|v| t.rotations()[v].len() - t.unbounded_at(v) == 3))
        .count();
    assert_eq!(hubs, 1);
    let totals: Vec<usize> = (2..=5)
        .map(|d| trees_of_degree(d).iter().map(|(_, t)| t.len()).sum())
        .collect();
    assert_eq!(totals, vec![1, 2, 3, 11]);
}

#[test]
fn trees_match_antipolynomial_catalog_entries() {
    for d in 2..=5 {
        let c = enumerate_graphs(d).unwrap();
        let from_catalog: BTreeSet<_> = c
            .filter(|e| e.antipolynomial)
            .into_iter()
            .map(|e| e.canonical_code.clone())
            .collect();
        let from_trees: BTreeSet<_> = trees_of_degree(d)
            .into_iter()
            .flat_map(|(_, ts)| ts)
            .map(|t| t.canonical_code(Orientation::Preserve))
            .collect();
        assert_eq!(from_catalog, from_trees, "degree {d}");
    }
}

#[test]
fn trees_round_trip_through_compactification() {
    for d in 2..=5 {
        for (b, trees) in trees_of_degree(d) {
            for t in trees {
                assert_eq!(t.branching(), b);
                let (g, inf) = t.compactify();
                assert!(g.is_obstructed().is_none());
                assert_eq!(g.degree(), d);
                let back = g.to_tree(inf).unwrap().unwrap();
                assert_eq!(
                    back.canonical_code(Orientation::Preserve),
                    t.canonical_code(Orientation::Preserve)
                );
            }
        }
    }
}

#[test]
fn cap_reports_an_error() {
    assert_eq!(
        enumerate_graphs_with_cap(5, 100).unwrap_err(),
        EnumerationError::ResourceLimit(100)
    );
}

#[test]
fn enumeration_is_deterministic() {
    assert_eq!(enumerate_graphs(4).unwrap(), enumerate_graphs(4).unwrap());
}
