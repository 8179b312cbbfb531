//! Canonical codes and symmetry groups of connected rotation systems.
//!
//! A breadth-first traversal from a root dart, following `alpha` then
//! `sigma`, labels every dart of a connected rotation system. Writing down
//! `alpha` and `sigma` in those labels gives a code that determines the graph
//! up to relabeling; the least code over all roots is a complete invariant.

use super::{GraphError, PlaneGraph};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// Equivalence by orientation-preserving homeomorphisms only.
    Preserve,
    /// Reflections allowed.
    Either,
}

/// `[dart count, alpha(0), sigma(0), alpha(1), sigma(1), ...]` in canonical labels.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(pub Vec<u32>);

impl CanonicalCode {
    pub fn to_bytes(&self) -> Vec<u8> {
        self.0.iter().flat_map(|x| x.to_be_bytes()).collect()
    }

    pub fn to_hex(&self) -> String {
        hex::encode(self.to_bytes())
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        let bytes = hex::decode(s).ok()?;
        if bytes.len() % 4 != 0 {
            return None;
        }
        Some(CanonicalCode(
            bytes
                .chunks(4)
                .map(|c| u32::from_be_bytes([c[0], c[1], c[2], c[3]]))
                .collect(),
        ))
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for CanonicalCode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        CanonicalCode::from_hex(&s).ok_or_else(|| serde::de::Error::custom("bad canonical code"))
    }
}

/// A dart bijection between rotation systems (or from one to itself).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GraphIso {
    pub map: Vec<usize>,
    pub preserves_orientation: bool,
}

impl GraphIso {
    pub fn identity(n: usize) -> Self {
        GraphIso {
            map: (0..n).collect(),
            preserves_orientation: true,
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &GraphIso) -> GraphIso {
        GraphIso {
            map: other.map.iter().map(|&d| self.map[d]).collect(),
            preserves_orientation: self.preserves_orientation == other.preserves_orientation,
        }
    }

    pub fn inverse(&self) -> GraphIso {
        let mut inv = vec![0; self.map.len()];
        for (d, &e) in self.map.iter().enumerate() {
            inv[e] = d;
        }
        GraphIso {
            map: inv,
            preserves_orientation: self.preserves_orientation,
        }
    }

    /// Checks the defining relations against `g` (as source and target).
    pub fn is_automorphism_of(&self, g: &PlaneGraph) -> bool {
        let n = g.dart_count();
        if self.map.len() != n {
            return false;
        }
        (0..n).all(|d| {
            let m = self.map[d];
            let rot = if self.preserves_orientation {
                g.sigma(m)
            } else {
                g.sigma_inv(m)
            };
            self.map[g.alpha(d)] == g.alpha(m) && self.map[g.sigma(d)] == rot
        })
    }
}

/// Labels darts breadth-first from `root`. If `bound` is given, stops as soon
/// as the code under construction is known to exceed it and returns `None`.
fn bfs_code(
    alpha: &[usize],
    sigma: &[usize],
    root: usize,
    bound: Option<&[u32]>,
    label: &mut Vec<u32>,
    order: &mut Vec<usize>,
) -> Option<Vec<u32>> {
    let n = alpha.len();
    label.clear();
    label.resize(n, u32::MAX);
    order.clear();
    label[root] = 0;
    order.push(root);
    let mut code = Vec::with_capacity(2 * n + 1);
    code.push(n as u32);
    let mut tight = bound.is_some();
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        for y in [alpha[x], sigma[x]] {
            if label[y] == u32::MAX {
                label[y] = order.len() as u32;
                order.push(y);
            }
            code.push(label[y]);
            if tight {
                let b = bound.unwrap();
                let k = code.len() - 1;
                match code[k].cmp(&b[k]) {
                    Ordering::Less => tight = false,
                    Ordering::Greater => return None,
                    Ordering::Equal => {}
                }
            }
        }
        i += 1;
    }
    if order.len() != n {
        return None;
    }
    Some(code)
}

struct Best {
    code: Vec<u32>,
    /// Dart -> canonical label.
    label: Vec<u32>,
}

fn best_code(g: &PlaneGraph, mirrored: bool) -> Best {
    let sigma = if mirrored {
        (0..g.dart_count())
            .map(|d| g.sigma_inv(d))
            .collect::<Vec<_>>()
    } else {
        g.sigma_slice().to_vec()
    };
    let alpha = g.alpha_slice();
    let mut label = Vec::new();
    let mut order = Vec::new();
    let mut best: Option<Best> = None;
    for root in 0..g.dart_count() {
        let bound = best.as_ref().map(|b| b.code.as_slice());
        if let Some(code) = bfs_code(alpha, &sigma, root, bound, &mut label, &mut order) {
            if best.as_ref().is_none_or(|b| code < b.code) {
                best = Some(Best {
                    code,
                    label: label.clone(),
                });
            }
        }
    }
    best.expect("connected graph has a code")
}

impl PlaneGraph {
    fn require_connected(&self) -> Result<(), GraphError> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(GraphError::Disconnected(self.component_count()))
        }
    }

    /// Complete invariant of the graph up to equivalence in the given mode.
    ///
    /// Panics on disconnected graphs; see [`PlaneGraph::try_canonical_code`].
    pub fn canonical_code(&self, mode: Orientation) -> CanonicalCode {
        self.try_canonical_code(mode)
            .expect("canonical code needs a connected graph")
    }

    pub fn try_canonical_code(&self, mode: Orientation) -> Result<CanonicalCode, GraphError> {
        self.require_connected()?;
        let mut code = best_code(self, false).code;
        if mode == Orientation::Either {
            let m = best_code(self, true).code;
            if m < code {
                code = m;
            }
        }
        Ok(CanonicalCode(code))
    }

    /// Rebuilds the canonical form from its code: entries `1 + 2i` and
    /// `2 + 2i` are `alpha(i)` and `sigma(i)` in canonical labels.
    pub fn from_canonical_code(code: &CanonicalCode) -> Result<PlaneGraph, GraphError> {
        let c = &code.0;
        let n = *c.first().ok_or(GraphError::Empty)? as usize;
        if c.len() != 2 * n + 1 {
            return Err(GraphError::MalformedPermutation(format!(
                "code of length {} cannot describe {n} darts",
                c.len()
            )));
        }
        let alpha = (0..n).map(|i| c[1 + 2 * i] as usize).collect();
        let sigma = (0..n).map(|i| c[2 + 2 * i] as usize).collect();
        PlaneGraph::new_connected(alpha, sigma)
    }

    /// The graph relabeled so that its darts carry their canonical labels
    /// (orientation-preserving mode).
    pub fn canonical_form(&self) -> PlaneGraph {
        assert!(
            self.is_connected(),
            "canonical form needs a connected graph"
        );
        let best = best_code(self, false);
        let perm: Vec<usize> = best.label.iter().map(|&l| l as usize).collect();
        self.relabel(&perm)
    }

    /// All automorphisms: orientation-preserving ones first, then the
    /// reversing ones (if any). The identity is always the first element.
    pub fn automorphism_group(&self) -> Result<Vec<GraphIso>, GraphError> {
        self.require_connected()?;
        let n = self.dart_count();
        let best = best_code(self, false);
        let mut by_label = vec![0usize; n];
        let mut group = vec![GraphIso::identity(n)];
        let mut label = Vec::new();
        let mut order = Vec::new();
        for mirrored in [false, true] {
            let sigma: Vec<usize> = if mirrored {
                (0..n).map(|d| self.sigma_inv(d)).collect()
            } else {
                self.sigma_slice().to_vec()
            };
            for root in 0..n {
                let Some(code) = bfs_code(
                    self.alpha_slice(),
                    &sigma,
                    root,
                    Some(&best.code),
                    &mut label,
                    &mut order,
                ) else {
                    continue;
                };
                if code != best.code {
                    continue;
                }
                for (d, &l) in label.iter().enumerate() {
                    by_label[l as usize] = d;
                }
                let map: Vec<usize> = best.label.iter().map(|&l| by_label[l as usize]).collect();
                let iso = GraphIso {
                    map,
                    preserves_orientation: !mirrored,
                };
                if iso != group[0] {
                    group.push(iso);
                }
            }
        }
        Ok(group)
    }

    /// Orders of the orientation-preserving and of the full symmetry group.
    pub fn automorphism_orders(&self) -> Result<(usize, usize), GraphError> {
        let g = self.automorphism_group()?;
        let pres = g.iter().filter(|a| a.preserves_orientation).count();
        Ok((pres, g.len()))
    }

    /// An orientation-preserving (or, in `Either` mode, possibly reversing)
    /// isomorphism onto `other`, if one exists.
    pub fn isomorphism_to(&self, other: &PlaneGraph, mode: Orientation) -> Option<GraphIso> {
        if !self.is_connected() || !other.is_connected() || self.dart_count() != other.dart_count()
        {
            return None;
        }
        let mine = best_code(self, false);
        let mut options = vec![(best_code(other, false), true)];
        if mode == Orientation::Either {
            options.push((best_code(other, true), false));
        }
        for (theirs, preserves) in options {
            if theirs.code == mine.code {
                let mut by_label = vec![0usize; theirs.label.len()];
                for (d, &l) in theirs.label.iter().enumerate() {
                    by_label[l as usize] = d;
                }
                let map = mine.label.iter().map(|&l| by_label[l as usize]).collect();
                return Some(GraphIso {
                    map,
                    preserves_orientation: preserves,
                });
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::super::library::*;
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn brute_force_automorphisms(g: &PlaneGraph) -> (usize, usize) {
        // Every automorphism is determined by the image of dart 0.
        let n = g.dart_count();
        let mut pres = 0;
        let mut full = 0;
        for target in 0..n {
            for preserves in [true, false] {
                let mut map = vec![usize::MAX; n];
                map[0] = target;
                let mut stack = vec![0];
                let mut ok = true;
                while let Some(d) = stack.pop() {
                    let m = map[d];
                    let rot = if preserves {
                        g.sigma(m)
                    } else {
                        g.sigma_inv(m)
                    };
                    for (src, dst) in [(g.alpha(d), g.alpha(m)), (g.sigma(d), rot)] {
                        if map[src] == usize::MAX {
                            map[src] = dst;
                            stack.push(src);
                        } else if map[src] != dst {
                            ok = false;
                        }
                    }
                }
                let mut sorted = map.clone();
                sorted.sort();
                if ok && sorted == (0..n).collect::<Vec<_>>() {
                    full += 1;
                    if preserves {
                        pres += 1;
                    }
                }
            }
        }
        (pres, full)
    }

    #[test]
    fn k4_group_orders() {
        let g = k4();
        assert_eq!(brute_force_automorphisms(&g), (12, 24));
        assert_eq!(g.automorphism_orders().unwrap(), (12, 24));
    }

    #[test]
    fn groups_match_brute_force() {
        for g in [theta(3), theta(5), prism(), cube(), fig6(), octahedron()] {
            assert_eq!(
                g.automorphism_orders().unwrap(),
                brute_force_automorphisms(&g)
            );
        }
    }

    #[test]
    fn group_is_closed() {
        let g = prism();
        let group = g.automorphism_group().unwrap();
        for a in &group {
            assert!(a.is_automorphism_of(&g));
            for b in &group {
                assert!(group.contains(&a.compose(b)));
            }
        }
        assert_eq!((4 * g.edge_count()) % group.len(), 0);
    }

    #[test]
    fn path_tree_is_rigid() {
        // A spider with legs of lengths 1, 2 and 3: no symmetry can swap legs.
        let g = PlaneGraph::from_straight_line(
            &[
                (0.0, 0.0),
                (1.0, 0.0),
                (0.0, 1.0),
                (0.0, 2.0),
                (-1.0, -1.0),
                (-2.0, -2.0),
                (-3.0, -3.0),
            ],
            &[(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6)],
        )
        .unwrap();
        assert_eq!(g.automorphism_orders().unwrap(), (1, 1));
    }

    #[test]
    fn relabeling_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for g in [k4(), theta(4), fig6(), prism()] {
            let code = g.canonical_code(Orientation::Preserve);
            for _ in 0..20 {
                let mut perm: Vec<usize> = (0..g.dart_count()).collect();
                perm.shuffle(&mut rng);
                assert_eq!(g.relabel(&perm).canonical_code(Orientation::Preserve), code);
            }
        }
    }

    #[test]
    fn distinguishes_different_graphs() {
        assert_ne!(
            theta(3).canonical_code(Orientation::Either),
            k4().canonical_code(Orientation::Either)
        );
    }

    #[test]
    fn canonical_form_has_canonical_code_prefix() {
        let g = fig6().canonical_form();
        let code = g.canonical_code(Orientation::Preserve);
        assert_eq!(g.canonical_form(), g);
        assert_eq!(code, fig6().canonical_code(Orientation::Preserve));
    }

    #[test]
    fn isomorphism_found() {
        let g = prism();
        let mut perm: Vec<usize> = (0..g.dart_count()).collect();
        perm.reverse();
        let h = g.relabel(&perm);
        let iso = g.isomorphism_to(&h, Orientation::Preserve).unwrap();
        for d in 0..g.dart_count() {
            assert_eq!(iso.map[g.sigma(d)], h.sigma(iso.map[d]));
        }
    }

    #[test]
    fn code_decodes_to_canonical_form() {
        for g in [k4(), fig6(), cube()] {
            let code = g.canonical_code(Orientation::Preserve);
            assert_eq!(
                PlaneGraph::from_canonical_code(&code).unwrap(),
                g.canonical_form()
            );
        }
    }

    #[test]
    fn hex_round_trip() {
        let c = k4().canonical_code(Orientation::Preserve);
        assert_eq!(CanonicalCode::from_hex(&c.to_hex()), Some(c));
    }
}
