//! Finite plane multigraphs on the sphere, encoded as rotation systems.
//!
//! A [`PlaneGraph`] is a set of darts `0..2E` with two permutations:
//! `alpha`, a fixed-point-free involution pairing the two darts of each edge,
//! and `sigma`, the counterclockwise successor of a dart around its vertex.
//! Vertices, edges and faces are the orbits of `sigma`, `alpha` and
//! `phi = sigma ∘ alpha` respectively. Orbits are numbered by their least dart.
//!
//! With `sigma` counterclockwise, `phi(d) = sigma(alpha(d))` walks each face
//! boundary in the clockwise sense: the face of `d` lies to the right of `d`
//! when it is traversed away from its vertex.

mod canonical;
mod text;

pub mod library;

pub use canonical::{CanonicalCode, GraphIso, Orientation};
pub use text::{parse_graph, GraphJson};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),
    #[error("edge involution has a fixed point at dart {0}")]
    AlphaFixedPoint(usize),
    #[error("not a sphere embedding (Euler characteristic {chi} on a component)")]
    NotSphere { chi: i64 },
    #[error("graph is disconnected ({0} components)")]
    Disconnected(usize),
    #[error("graph has no darts")]
    Empty,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// One face boundary, as the cyclic list of darts visited by `phi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceWalk {
    pub darts: Vec<usize>,
    /// `vertices[i]` is the vertex at which `darts[i]` starts.
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl FaceWalk {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneGraph {
    alpha: Vec<usize>,
    sigma: Vec<usize>,
    sigma_inv: Vec<usize>,
    vertex_of: Vec<usize>,
    edge_of: Vec<usize>,
    face_of: Vec<usize>,
    n_vertices: usize,
    n_edges: usize,
    n_faces: usize,
    components: usize,
}

fn check_permutation(p: &[usize], name: &str) -> Result<Vec<usize>, GraphError> {
    let n = p.len();
    let mut inv = vec![usize::MAX; n];
    for (i, &j) in p.iter().enumerate() {
        if j >= n {
            return Err(GraphError::MalformedPermutation(format!(
                "{name}({i}) = {j} is out of range 0..{n}"
            )));
        }
        if inv[j] != usize::MAX {
            return Err(GraphError::MalformedPermutation(format!(
                "{name} maps both {} and {i} to {j}",
                inv[j]
            )));
        }
        inv[j] = i;
    }
    Ok(inv)
}

/// Numbers the orbits of `step`, in order of each orbit's least element.
fn orbit_ids(n: usize, step: impl Fn(usize) -> usize) -> (Vec<usize>, usize) {
    let mut id = vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if id[start] != usize::MAX {
            continue;
        }
        let mut d = start;
        loop {
            id[d] = count;
            d = step(d);
            if d == start {
                break;
            }
        }
        count += 1;
    }
    (id, count)
}

impl PlaneGraph {
    /// Builds a graph from its edge involution and vertex rotation.
    ///
    /// Fails unless every connected component is embedded in a sphere.
    pub fn new(alpha: Vec<usize>, sigma: Vec<usize>) -> Result<Self, GraphError> {
        let n = alpha.len();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if sigma.len() != n {
            return Err(GraphError::MalformedPermutation(format!(
                "alpha has {} darts but sigma has {}",
                n,
                sigma.len()
            )));
        }
        check_permutation(&alpha, "alpha")?;
        for d in 0..n {
            if alpha[d] == d {
                return Err(GraphError::AlphaFixedPoint(d));
            }
            if alpha[alpha[d]] != d {
                return Err(GraphError::MalformedPermutation(format!(
                    "alpha is not an involution at dart {d}"
                )));
            }
        }
        let sigma_inv = check_permutation(&sigma, "sigma")?;

        let (vertex_of, n_vertices) = orbit_ids(n, |d| sigma[d]);
        let (edge_of, n_edges) = orbit_ids(n, |d| alpha[d]);
        let (face_of, n_faces) = orbit_ids(n, |d| sigma[alpha[d]]);

        // Components of the group generated by alpha and sigma.
        let mut comp = vec![usize::MAX; n];
        let mut components = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            comp[s] = components;
            while let Some(d) = stack.pop() {
                for e in [alpha[d], sigma[d], sigma_inv[d]] {
                    if comp[e] == usize::MAX {
                        comp[e] = components;
                        stack.push(e);
                    }
                }
            }
            components += 1;
        }
        let mut chi = vec![0i64; components];
        let mut seen_v = vec![false; n_vertices];
        let mut seen_e = vec![false; n_edges];
        let mut seen_f = vec![false; n_faces];
        for d in 0..n {
            let c = comp[d];
            if !seen_v[vertex_of[d]] {
                seen_v[vertex_of[d]] = true;
                chi[c] += 1;
            }
            if !seen_e[edge_of[d]] {
                seen_e[edge_of[d]] = true;
                chi[c] -= 1;
            }
            if !seen_f[face_of[d]] {
                seen_f[face_of[d]] = true;
                chi[c] += 1;
            }
        }
        if let Some(&bad) = chi.iter().find(|&&x| x != 2) {
            return Err(GraphError::NotSphere { chi: bad });
        }

        Ok(PlaneGraph {
            alpha,
            sigma,
            sigma_inv,
            vertex_of,
            edge_of,
            face_of,
            n_vertices,
            n_edges,
            n_faces,
            components,
        })
    }

    /// Like [`PlaneGraph::new`], but also rejects disconnected input.
    pub fn new_connected(alpha: Vec<usize>, sigma: Vec<usize>) -> Result<Self, GraphError> {
        let g = Self::new(alpha, sigma)?;
        if g.components != 1 {
            return Err(GraphError::Disconnected(g.components));
        }
        Ok(g)
    }

    /// Builds a graph whose edges pair darts `2k` and `2k + 1`, from the
    /// counterclockwise dart list at every vertex.
    pub fn from_rotations(rotations: &[Vec<usize>]) -> Result<Self, GraphError> {
        let n: usize = rotations.iter().map(Vec::len).sum();
        if !n.is_multiple_of(2) {
            return Err(GraphError::MalformedPermutation(
                "odd number of darts".to_string(),
            ));
        }
        let alpha = (0..n).map(|d| d ^ 1).collect();
        let mut sigma = vec![usize::MAX; n];
        for rot in rotations {
            for (i, &d) in rot.iter().enumerate() {
                if d >= n || sigma[d] != usize::MAX {
                    return Err(GraphError::MalformedPermutation(format!(
                        "dart {d} is out of range or listed twice"
                    )));
                }
                sigma[d] = rot[(i + 1) % rot.len()];
            }
        }
        Self::new(alpha, sigma)
    }

    pub fn dart_count(&self) -> usize {
        self.alpha.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.n_vertices
    }

    pub fn edge_count(&self) -> usize {
        self.n_edges
    }

    pub fn face_count(&self) -> usize {
        self.n_faces
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    pub fn is_connected(&self) -> bool {
        self.components == 1
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.n_vertices as i64 - self.n_edges as i64 + self.n_faces as i64
    }

    #[inline]
    pub fn alpha(&self, d: usize) -> usize {
        self.alpha[d]
    }

    #[inline]
    pub fn sigma(&self, d: usize) -> usize {
        self.sigma[d]
    }

    #[inline]
    pub fn sigma_inv(&self, d: usize) -> usize {
        self.sigma_inv[d]
    }

    #[inline]
    pub fn phi(&self, d: usize) -> usize {
        self.sigma[self.alpha[d]]
    }

    pub fn alpha_slice(&self) -> &[usize] {
        &self.alpha
    }

    pub fn sigma_slice(&self) -> &[usize] {
        &self.sigma
    }

    #[inline]
    pub fn vertex(&self, d: usize) -> usize {
        self.vertex_of[d]
    }

    #[inline]
    pub fn edge(&self, d: usize) -> usize {
        self.edge_of[d]
    }

    #[inline]
    pub fn face(&self, d: usize) -> usize {
        self.face_of[d]
    }

    /// Least dart of each orbit numbering: the representative dart of edge `e`.
    pub fn edge_dart(&self, e: usize) -> usize {
        (0..self.dart_count())
            .find(|&d| self.edge_of[d] == e)
            .expect("edge id in range")
    }

    /// Both darts of edge `e`, least dart first. The least dart fixes the
    /// reference direction of the edge.
    pub fn edge_darts(&self, e: usize) -> (usize, usize) {
        let d = self.edge_dart(e);
        (d, self.alpha[d])
    }

    pub fn edge_endpoints(&self, e: usize) -> (usize, usize) {
        let (d, a) = self.edge_darts(e);
        (self.vertex_of[d], self.vertex_of[a])
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (u, v) = self.edge_endpoints(e);
        u == v
    }

    /// Darts at vertex `v` in counterclockwise order, starting at the least one.
    pub fn vertex_darts(&self, v: usize) -> Vec<usize> {
        let start = (0..self.dart_count())
            .find(|&d| self.vertex_of[d] == v)
            .expect("vertex id in range");
        self.orbit(start, |d| self.sigma[d])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.vertex_of.iter().filter(|&&x| x == v).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n_vertices];
        for &v in &self.vertex_of {
            deg[v] += 1;
        }
        deg
    }

    fn orbit(&self, start: usize, step: impl Fn(usize) -> usize) -> Vec<usize> {
        let mut out = vec![start];
        let mut d = step(start);
        while d != start {
            out.push(d);
            d = step(d);
        }
        out
    }

    pub fn face_walk(&self, f: usize) -> FaceWalk {
        let start = (0..self.dart_count())
            .find(|&d| self.face_of[d] == f)
            .expect("face id in range");
        let darts = self.orbit(start, |d| self.phi(d));
        let vertices = darts.iter().map(|&d| self.vertex_of[d]).collect();
        let edges = darts.iter().map(|&d| self.edge_of[d]).collect();
        FaceWalk {
            darts,
            vertices,
            edges,
        }
    }

    /// All faces, indexed by face id.
    pub fn faces(&self) -> Vec<FaceWalk> {
        (0..self.n_faces).map(|f| self.face_walk(f)).collect()
    }

    /// The same graph with every vertex rotation reversed.
    pub fn mirror(&self) -> PlaneGraph {
        PlaneGraph::new(self.alpha.clone(), self.sigma_inv.clone())
            .expect("mirror of a sphere embedding is a sphere embedding")
    }

    /// Renames dart `d` to `perm[d]`.
    pub fn relabel(&self, perm: &[usize]) -> PlaneGraph {
        let n = self.dart_count();
        assert_eq!(perm.len(), n);
        let mut alpha = vec![0; n];
        let mut sigma = vec![0; n];
        for d in 0..n {
            alpha[perm[d]] = perm[self.alpha[d]];
            sigma[perm[d]] = perm[self.sigma[d]];
        }
        PlaneGraph::new(alpha, sigma).expect("relabeling preserves validity")
    }

    /// Faces become vertices: same darts, same `alpha`, rotation `phi`.
    /// Applying it twice returns the original rotation system exactly.
    pub fn dual(&self) -> PlaneGraph {
        let sigma = (0..self.dart_count()).map(|d| self.phi(d)).collect();
        PlaneGraph::new(self.alpha.clone(), sigma).expect("dual of a sphere embedding")
    }

    /// Replaces every edge by a path of length two through a new vertex.
    pub fn subdivide_edges(&self) -> PlaneGraph {
        let n = self.dart_count();
        // Each old dart keeps its id; edge {d, a} gains darts x (paired with d)
        // and y (paired with a) at the new vertex.
        let mut alpha = vec![0; 2 * n];
        let mut sigma = vec![0; 2 * n];
        sigma[..n].copy_from_slice(&self.sigma);
        let mut next = n;
        for e in 0..self.n_edges {
            let (d, a) = self.edge_darts(e);
            let (x, y) = (next, next + 1);
            next += 2;
            alpha[d] = x;
            alpha[x] = d;
            alpha[a] = y;
            alpha[y] = a;
            sigma[x] = y;
            sigma[y] = x;
        }
        PlaneGraph::new(alpha, sigma).expect("subdivision of a sphere embedding")
    }

    /// Removes every degree-2 vertex that is not the only vertex of a cycle,
    /// merging its two edges.
    pub fn suppress_degree_two(&self) -> PlaneGraph {
        let mut alpha = self.alpha.clone();
        let mut alive = vec![true; self.dart_count()];
        for v in 0..self.n_vertices {
            let darts = self.vertex_darts(v);
            if darts.len() != 2 {
                continue;
            }
            let (p, q) = (darts[0], darts[1]);
            let (ap, aq) = (alpha[p], alpha[q]);
            if ap == q {
                continue; // isolated loop
            }
            alpha[ap] = aq;
            alpha[aq] = ap;
            alive[p] = false;
            alive[q] = false;
        }
        let ids: Vec<usize> = (0..self.dart_count()).filter(|&d| alive[d]).collect();
        let mut new_id = vec![usize::MAX; self.dart_count()];
        for (i, &d) in ids.iter().enumerate() {
            new_id[d] = i;
        }
        let alpha2 = ids.iter().map(|&d| new_id[alpha[d]]).collect();
        let sigma2 = ids.iter().map(|&d| new_id[self.sigma[d]]).collect();
        PlaneGraph::new(alpha2, sigma2).expect("suppression preserves the embedding")
    }

    /// Simple graph from straight-line drawing coordinates: rotations are
    /// obtained by sorting neighbours by angle.
    pub fn from_straight_line(
        coords: &[(f64, f64)],
        edges: &[(usize, usize)],
    ) -> Result<Self, GraphError> {
        let mut at: Vec<Vec<(f64, usize)>> = vec![Vec::new(); coords.len()];
        for (k, &(u, v)) in edges.iter().enumerate() {
            let ang =
                |a: usize, b: usize| (coords[b].1 - coords[a].1).atan2(coords[b].0 - coords[a].0);
            at[u].push((ang(u, v), 2 * k));
            at[v].push((ang(v, u), 2 * k + 1));
        }
        let rotations: Vec<Vec<usize>> = at
            .into_iter()
            .map(|mut l| {
                l.sort_by(|a, b| a.0.total_cmp(&b.0));
                l.into_iter().map(|(_, d)| d).collect()
            })
            .collect();
        Self::from_rotations(&rotations)
    }
}

#[cfg(test)]
mod tests {
    use super::library::*;
    use super::*;

    #[test]
    fn k4_counts() {
        let g = k4();
        assert_eq!(
            (g.vertex_count(), g.edge_count(), g.face_count()),
            (4, 6, 4)
        );
        for f in g.faces() {
            assert_eq!(f.len(), 3);
        }
    }

    #[test]
    fn theta_counts() {
        let g = theta(3);
        assert_eq!(
            (g.vertex_count(), g.edge_count(), g.face_count()),
            (2, 3, 3)
        );
        assert!(g.faces().iter().all(|f| f.len() == 2));
    }

    #[test]
    fn single_edge_has_one_face() {
        let g = PlaneGraph::from_rotations(&[vec![0], vec![1]]).unwrap();
        assert_eq!(g.face_count(), 1);
    }

    #[test]
    fn torus_rotation_rejected() {
        // Two vertices, three parallel edges, with rotations arranged so the
        // faces merge: V - E + F = 2 - 3 + 1 = 0.
        let err = PlaneGraph::from_rotations(&[vec![0, 2, 4], vec![1, 3, 5]]).unwrap_err();
        assert_eq!(err, GraphError::NotSphere { chi: 0 });
    }

    #[test]
    fn alpha_fixed_point_rejected() {
        let err = PlaneGraph::new(vec![0, 1], vec![1, 0]).unwrap_err();
        assert_eq!(err, GraphError::AlphaFixedPoint(0));
    }

    #[test]
    fn face_walk_covers_each_dart_once() {
        let g = prism();
        let mut seen = vec![0; g.dart_count()];
        for f in g.faces() {
            for (i, &d) in f.darts.iter().enumerate() {
                seen[d] += 1;
                assert_eq!(g.phi(d), f.darts[(i + 1) % f.len()]);
            }
        }
        assert!(seen.iter().all(|&c| c == 1));
    }

    #[test]
    fn dual_examples() {
        let t = theta(3).dual();
        assert_eq!(
            (t.vertex_count(), t.edge_count(), t.face_count()),
            (3, 3, 2)
        );
        assert_eq!(
            k4().dual().canonical_code(Orientation::Preserve),
            k4().canonical_code(Orientation::Preserve)
        );
        assert_eq!(
            cube().dual().canonical_code(Orientation::Either),
            octahedron().canonical_code(Orientation::Either)
        );
        let g = fig6();
        assert_eq!(g.dual().dual(), g);
    }

    #[test]
    fn subdivide_and_suppress_are_inverse() {
        let g = k4();
        let s = g.subdivide_edges();
        assert_eq!(s.vertex_count(), 10);
        assert_eq!(s.edge_count(), 12);
        assert_eq!(s.face_count(), 4);
        assert_eq!(
            s.suppress_degree_two()
                .canonical_code(Orientation::Preserve),
            g.canonical_code(Orientation::Preserve)
        );
    }
}
