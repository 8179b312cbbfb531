//! Realizing words as explicit curves: crossing orders along edges, chords
//! inside faces, and the regions they cut out.

use super::{CurveError, CurveWord};
use crate::tischler::TischlerGraph;
use std::collections::BTreeMap;

/// Boundary bookkeeping for each dart of the graph.
struct Frame {
    /// Index of the dart in its face walk.
    pos: Vec<usize>,
    /// Whether the dart points along its edge's reference direction.
    forward: Vec<bool>,
}

impl Frame {
    fn new(t: &TischlerGraph) -> Self {
        let g = t.graph();
        let n = g.dart_count();
        let mut pos = vec![0; n];
        for f in t.faces() {
            for (i, &d) in f.darts.iter().enumerate() {
                pos[d] = i;
            }
        }
        let forward = (0..n).map(|d| d < g.alpha(d)).collect();
        Frame { pos, forward }
    }

    /// The dart of edge `e` on the boundary of face `a`.
    fn dart(t: &TischlerGraph, e: usize, a: usize) -> usize {
        let g = t.graph();
        let (d, x) = g.edge_darts(e);
        if g.face(d) == a {
            d
        } else {
            x
        }
    }

    /// Position of a crossing on the boundary circle of face `a`, comparable
    /// with other positions on the same face. `rank` is the crossing's rank
    /// along the edge.
    fn point(
        &self,
        t: &TischlerGraph,
        e: usize,
        a: usize,
        rank: usize,
        total: usize,
    ) -> (usize, usize) {
        let d = Self::dart(t, e, a);
        let sub = if self.forward[d] {
            rank
        } else {
            total - 1 - rank
        };
        (self.pos[d], sub)
    }
}

/// A crossing of curve `c` at index `i`.
type Crossing = (usize, usize);

/// Chord endpoints per face, as pairs of crossings.
fn chords(t: &TischlerGraph, curves: &[&CurveWord]) -> BTreeMap<usize, Vec<(Crossing, Crossing)>> {
    let _ = t;
    let mut out: BTreeMap<usize, Vec<(Crossing, Crossing)>> = BTreeMap::new();
    for (c, w) in curves.iter().enumerate() {
        let n = w.len();
        for i in 0..n {
            let prev = (i + n - 1) % n;
            out.entry(w.steps()[i].face)
                .or_default()
                .push(((c, prev), (c, i)));
        }
    }
    out
}

fn crosses(a: ((usize, usize), (usize, usize)), b: ((usize, usize), (usize, usize))) -> bool {
    let (lo, hi) = (a.0.min(a.1), a.0.max(a.1));
    let inside = |p: (usize, usize)| p > lo && p < hi;
    inside(b.0) != inside(b.1)
}

/// Rank of every crossing along its edge, from the keys.
fn ranks(curves: &[&CurveWord]) -> Option<(Vec<Vec<usize>>, BTreeMap<usize, usize>)> {
    let mut per_edge: BTreeMap<usize, Vec<(u64, usize, usize)>> = BTreeMap::new();
    for (c, w) in curves.iter().enumerate() {
        if w.is_empty() {
            continue;
        }
        let keys = w.keys()?;
        for (i, s) in w.steps().iter().enumerate() {
            per_edge.entry(s.edge).or_default().push((keys[i], c, i));
        }
    }
    let mut rank: Vec<Vec<usize>> = curves.iter().map(|w| vec![0; w.len()]).collect();
    let mut total = BTreeMap::new();
    for (e, mut list) in per_edge {
        list.sort_unstable();
        if list.windows(2).any(|p| p[0].0 == p[1].0) {
            return None;
        }
        for (r, &(_, c, i)) in list.iter().enumerate() {
            rank[c][i] = r;
        }
        total.insert(e, list.len());
    }
    Some((rank, total))
}

/// Whether the realized curves are simple and pairwise disjoint.
pub fn is_simple(t: &TischlerGraph, curves: &[&CurveWord]) -> bool {
    let Some((rank, total)) = ranks(curves) else {
        return false;
    };
    let frame = Frame::new(t);
    let at = |face: usize, x: Crossing| {
        let s = curves[x.0].steps()[x.1];
        frame.point(t, s.edge, face, rank[x.0][x.1], total[&s.edge])
    };
    chords(t, curves).iter().all(|(&face, list)| {
        let pts: Vec<_> = list
            .iter()
            .map(|&(p, q)| (at(face, p), at(face, q)))
            .collect();
        (0..pts.len()).all(|i| (0..i).all(|j| !crosses(pts[i], pts[j])))
    })
}

/// Search nodes allowed before [`realize_all`] gives up.
pub const REALIZE_BUDGET: u64 = 5_000_000;

/// Chooses keys for one word so that it becomes a simple curve.
pub fn realize(t: &TischlerGraph, w: &CurveWord) -> Result<CurveWord, CurveError> {
    realize_all(t, std::slice::from_ref(w)).map(|mut v| v.remove(0))
}

/// Chooses keys for several words so that they become disjoint simple
/// curves. Deterministic: edges are settled in order of first use along the
/// words and crossing orders are tried lexicographically.
pub fn realize_all(t: &TischlerGraph, words: &[CurveWord]) -> Result<Vec<CurveWord>, CurveError> {
    realize_with_budget(t, words, REALIZE_BUDGET)
}

pub(crate) fn realize_with_budget(
    t: &TischlerGraph,
    words: &[CurveWord],
    budget: u64,
) -> Result<Vec<CurveWord>, CurveError> {
    let curves: Vec<&CurveWord> = words.iter().collect();
    let mut per_edge: BTreeMap<usize, Vec<Crossing>> = BTreeMap::new();
    let mut first_use: Vec<usize> = Vec::new();
    for (c, w) in curves.iter().enumerate() {
        for (i, s) in w.steps().iter().enumerate() {
            per_edge.entry(s.edge).or_default().push((c, i));
            if !first_use.contains(&s.edge) {
                first_use.push(s.edge);
            }
        }
    }
    let edges: Vec<(usize, Vec<Crossing>)> = first_use
        .iter()
        .map(|e| (*e, per_edge.remove(e).unwrap()))
        .collect();
    let totals: BTreeMap<usize, usize> = edges.iter().map(|(e, l)| (*e, l.len())).collect();
    let frame = Frame::new(t);
    let face_chords = chords(t, &curves);
    // Chords grouped by the latest-settled edge among their four endpoints,
    // so each pair is tested once, as soon as all its endpoints are placed.
    let edge_index: BTreeMap<usize, usize> = edges
        .iter()
        .enumerate()
        .map(|(k, (e, _))| (*e, k))
        .collect();
    let step_edge = |x: Crossing| curves[x.0].steps()[x.1].edge;
    let mut checks: Vec<Vec<(usize, (Crossing, Crossing), (Crossing, Crossing))>> =
        vec![Vec::new(); edges.len()];
    for (&face, list) in &face_chords {
        for i in 0..list.len() {
            for j in 0..i {
                let last = [list[i].0, list[i].1, list[j].0, list[j].1]
                    .iter()
                    .map(|&x| edge_index[&step_edge(x)])
                    .max()
                    .unwrap();
                checks[last].push((face, list[i], list[j]));
            }
        }
    }
    let rank: Vec<Vec<usize>> = curves.iter().map(|w| vec![0; w.len()]).collect();

    struct Search<'a> {
        t: &'a TischlerGraph,
        edges: &'a [(usize, Vec<Crossing>)],
        totals: &'a BTreeMap<usize, usize>,
        checks: &'a [Vec<(usize, (Crossing, Crossing), (Crossing, Crossing))>],
        frame: &'a Frame,
        curves: &'a [&'a CurveWord],
        rank: Vec<Vec<usize>>,
        budget: u64,
    }

    impl Search<'_> {
        fn at(&self, face: usize, x: Crossing) -> (usize, usize) {
            let e = self.curves[x.0].steps()[x.1].edge;
            self.frame
                .point(self.t, e, face, self.rank[x.0][x.1], self.totals[&e])
        }

        /// `Some(found)` or `None` when the budget runs out.
        fn run(&mut self, k: usize) -> Option<bool> {
            if k == self.edges.len() {
                return Some(true);
            }
            let list = &self.edges[k].1;
            let mut order: Vec<usize> = (0..list.len()).collect();
            loop {
                self.budget = self.budget.checked_sub(1)?;
                for (r, &x) in order.iter().enumerate() {
                    self.rank[list[x].0][list[x].1] = r;
                }
                let ok = self.checks[k].iter().all(|&(face, p, q)| {
                    let a = (self.at(face, p.0), self.at(face, p.1));
                    let b = (self.at(face, q.0), self.at(face, q.1));
                    !crosses(a, b)
                });
                if ok && self.run(k + 1)? {
                    return Some(true);
                }
                if !next_perm(&mut order) {
                    return Some(false);
                }
            }
        }
    }

    let mut search = Search {
        t,
        edges: &edges,
        totals: &totals,
        checks: &checks,
        frame: &frame,
        curves: &curves,
        rank,
        budget,
    };
    match search.run(0) {
        Some(true) => {}
        Some(false) if words.len() > 1 => return Err(CurveError::NotDisjoint),
        Some(false) => return Err(CurveError::NotRealizable),
        None => return Err(CurveError::SearchLimit(budget)),
    }
    let rank = search.rank;
    Ok(curves
        .iter()
        .enumerate()
        .map(|(c, w)| {
            let keys = rank[c].iter().map(|&r| r as u64).collect();
            (*w).clone().with_keys(keys).expect("one key per crossing")
        })
        .collect())
}

fn next_perm(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Splits the sphere along realized, disjoint simple curves and returns the
/// number of vertices in each complementary region.
pub(crate) fn side_vertex_counts(t: &TischlerGraph, curves: &[&CurveWord]) -> Vec<usize> {
    let g = t.graph();
    let (rank, total) = ranks(curves).expect("realized curves");
    // Union-find over vertices, then edge segments.
    let mut seg_base = vec![0usize; g.edge_count()];
    let mut n = g.vertex_count();
    for e in 0..g.edge_count() {
        seg_base[e] = n;
        n += total.get(&e).copied().unwrap_or(0) + 1;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let union = |p: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(p, a), find(p, b));
        if ra != rb {
            p[ra] = rb;
        }
    };
    // Crossing lookup: (edge, rank) -> crossing.
    let mut at_rank: BTreeMap<(usize, usize), Crossing> = BTreeMap::new();
    for (c, w) in curves.iter().enumerate() {
        for (i, s) in w.steps().iter().enumerate() {
            at_rank.insert((s.edge, rank[c][i]), (c, i));
        }
    }
    for (f, walk) in t.faces().iter().enumerate() {
        // Boundary as a cyclic list of items: `Ok(element)` for vertices and
        // segments, `Err(crossing)` for crossing points.
        let mut items: Vec<Result<usize, Crossing>> = Vec::new();
        for &d in &walk.darts {
            let e = g.edge(d);
            let k = total.get(&e).copied().unwrap_or(0);
            items.push(Ok(g.vertex(d)));
            let fwd = d < g.alpha(d);
            for s in 0..=k {
                let (seg, cross) = if fwd { (s, s) } else { (k - s, k - s) };
                items.push(Ok(seg_base[e] + seg));
                if s < k {
                    let r = if fwd { cross } else { cross - 1 };
                    items.push(Err(at_rank[&(e, r)]));
                }
            }
        }
        let points: Vec<usize> = (0..items.len()).filter(|&i| items[i].is_err()).collect();
        if points.is_empty() {
            let first = items.iter().find_map(|x| x.ok()).unwrap();
            for x in items.iter().filter_map(|x| x.ok()) {
                union(&mut parent, first, x);
            }
            continue;
        }
        // Gap j runs from point j to point j + 1; represent it by its first element.
        let m = points.len();
        let mut gap_rep = vec![0usize; m];
        for j in 0..m {
            let start = points[j] + 1;
            let end = if j + 1 < m {
                points[j + 1]
            } else {
                points[0] + items.len()
            };
            let rep = items[start % items.len()].unwrap();
            gap_rep[j] = rep;
            for x in start..end {
                union(&mut parent, rep, items[x % items.len()].unwrap());
            }
        }
        // Chords in this face pair up its points.
        let point_of: BTreeMap<Crossing, usize> = points
            .iter()
            .enumerate()
            .map(|(j, &i)| (items[i].unwrap_err(), j))
            .collect();
        let mut partner = vec![0usize; m];
        for (c, w) in curves.iter().enumerate() {
            let len = w.len();
            for i in 0..len {
                if w.steps()[i].face == f {
                    let a = point_of[&(c, (i + len - 1) % len)];
                    let b = point_of[&(c, i)];
                    partner[a] = b;
                    partner[b] = a;
                }
            }
        }
        for j in 0..m {
            union(&mut parent, gap_rep[j], gap_rep[partner[(j + 1) % m]]);
        }
    }
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for x in 0..n {
        let r = find(&mut parent, x);
        *counts.entry(r).or_default() += usize::from(x < g.vertex_count());
    }
    counts.into_values().collect()
}
