//! Enumeration of Tischler trees with prescribed finite branching.

use crate::rotation_graph::{CanonicalCode, Orientation};
use crate::tischler::{BranchingData, Slot, TischlerTree};
use std::collections::BTreeMap;

/// Rearranges `v` into the next lexicographic permutation; false at the last.
fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Distinct permutations of a multiset.
fn multiset_permutations<T: Ord + Clone>(items: &[T]) -> Vec<Vec<T>> {
    let mut cur = items.to_vec();
    cur.sort();
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

/// Edge lists of all labeled trees on `r` vertices (Prüfer decoding).
fn labeled_trees(r: usize) -> Vec<Vec<(usize, usize)>> {
    if r == 1 {
        return vec![Vec::new()];
    }
    if r == 2 {
        return vec![vec![(0, 1)]];
    }
    let mut out = Vec::new();
    let mut seq = vec![0usize; r - 2];
    loop {
        let mut degree = vec![1usize; r];
        for &x in &seq {
            degree[x] += 1;
        }
        let mut edges = Vec::with_capacity(r - 1);
        for &x in &seq {
            let leaf = (0..r).find(|&v| degree[v] == 1).unwrap();
            edges.push((leaf.min(x), leaf.max(x)));
            degree[leaf] -= 1;
            degree[x] -= 1;
        }
        let rest: Vec<usize> = (0..r).filter(|&v| degree[v] == 1).collect();
        edges.push((rest[0], rest[1]));
        out.push(edges);
        // Next sequence in base r.
        let mut k = 0;
        loop {
            if k == seq.len() {
                return out;
            }
            seq[k] += 1;
            if seq[k] < r {
                break;
            }
            seq[k] = 0;
            k += 1;
        }
    }
}

/// Cyclic orders of `slots` up to rotation, anchored at the first slot.
fn cyclic_arrangements(slots: &[Slot]) -> Vec<Vec<Slot>> {
    let Some((first, rest)) = slots.split_first() else {
        return vec![Vec::new()];
    };
    multiset_permutations(rest)
        .into_iter()
        .map(|p| std::iter::once(*first).chain(p).collect())
        .collect()
}

/// All Tischler trees whose internal vertices have the given multiplicities,
/// one per orientation-preserving class, sorted by canonical code.
pub fn enumerate_trees(branching: &BranchingData) -> Vec<TischlerTree> {
    let m = &branching.0;
    let r = m.len();
    if r == 0 || m.contains(&0) {
        return Vec::new();
    }
    let mut found: BTreeMap<CanonicalCode, TischlerTree> = BTreeMap::new();
    for edges in labeled_trees(r) {
        let mut tdeg = vec![0usize; r];
        for &(a, b) in &edges {
            tdeg[a] += 1;
            tdeg[b] += 1;
        }
        for assign in multiset_permutations(m) {
            if (0..r).any(|v| assign[v] + 2 < tdeg[v]) {
                continue;
            }
            let per_vertex: Vec<Vec<Vec<Slot>>> = (0..r)
                .map(|v| {
                    // Bounded edges first so that rotation classes are anchored on one.
                    let mut slots: Vec<Slot> = edges
                        .iter()
                        .enumerate()
                        .filter(|(_, &(a, b))| a == v || b == v)
                        .map(|(k, _)| Slot::Edge(k))
                        .collect();
                    slots.extend(std::iter::repeat_n(
                        Slot::Unbounded,
                        assign[v] + 2 - tdeg[v],
                    ));
                    cyclic_arrangements(&slots)
                })
                .collect();
            let mut choice = vec![0usize; r];
            loop {
                let rotations = (0..r).map(|v| per_vertex[v][choice[v]].clone()).collect();
                if let Ok(t) = TischlerTree::new(rotations) {
                    found
                        .entry(t.canonical_code(Orientation::Preserve))
                        .or_insert(t);
                }
                let mut k = 0;
                while k < r {
                    choice[k] += 1;
                    if choice[k] < per_vertex[k].len() {
                        break;
                    }
                    choice[k] = 0;
                    k += 1;
                }
                if k == r {
                    break;
                }
            }
        }
    }
    found.into_values().collect()
}

/// Partitions of `n` into positive parts, each in decreasing order.
pub fn partitions(n: usize) -> Vec<BranchingData> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<BranchingData>) {
        if n == 0 {
            out.push(BranchingData(prefix.clone()));
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            go(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, n, &mut Vec::new(), &mut out);
    }
    out
}

/// Every Tischler tree of an anti-polynomial of degree `d`, grouped by
/// finite branching.
pub fn trees_of_degree(d: usize) -> Vec<(BranchingData, Vec<TischlerTree>)> {
    partitions(d.saturating_sub(1))
        .into_iter()
        .map(|b| {
            let t = enumerate_trees(&b);
            (b, t)
        })
        .collect()
}
