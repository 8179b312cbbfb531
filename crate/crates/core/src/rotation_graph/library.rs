//! Small named plane graphs used as fixtures and examples.

use super::PlaneGraph;
use std::f64::consts::TAU;

fn polygon(n: usize, radius: f64, phase: f64) -> Vec<(f64, f64)> {
    (0..n)
        .map(|k| {
            let t = phase + TAU * k as f64 / n as f64;
            (radius * t.cos(), radius * t.sin())
        })
        .collect()
}

fn straight(coords: &[(f64, f64)], edges: &[(usize, usize)]) -> PlaneGraph {
    PlaneGraph::from_straight_line(coords, edges).expect("fixture is planar")
}

/// Two nested `n`-gons joined by spokes.
fn nested(n: usize) -> PlaneGraph {
    let mut coords = polygon(n, 2.0, 0.3);
    coords.extend(polygon(n, 1.0, 0.3));
    let mut edges = Vec::new();
    for k in 0..n {
        edges.push((k, (k + 1) % n));
        edges.push((n + k, n + (k + 1) % n));
        edges.push((k, n + k));
    }
    straight(&coords, &edges)
}

/// Complete graph on four vertices: a triangle with a central vertex.
pub fn k4() -> PlaneGraph {
    let mut coords = vec![(0.0, 0.0)];
    coords.extend(polygon(3, 1.0, 0.25 * TAU));
    straight(&coords, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)])
}

/// Two vertices joined by `n` parallel edges.
pub fn theta(n: usize) -> PlaneGraph {
    assert!(n >= 1);
    let first: Vec<usize> = (0..n).map(|k| 2 * k).collect();
    let second: Vec<usize> = std::iter::once(1)
        .chain((1..n).rev().map(|k| 2 * k + 1))
        .collect();
    PlaneGraph::from_rotations(&[first, second]).expect("theta graph is planar")
}

/// Triangular prism.
pub fn prism() -> PlaneGraph {
    nested(3)
}

pub fn cube() -> PlaneGraph {
    nested(4)
}

pub fn octahedron() -> PlaneGraph {
    let mut coords = polygon(3, 2.0, 0.25 * TAU);
    coords.extend(polygon(3, 0.6, 0.75 * TAU));
    // Inner vertex 3 + k sits between outer vertices k + 1 and k + 2.
    let mut edges = Vec::new();
    for k in 0..3 {
        edges.push((k, (k + 1) % 3));
        edges.push((3 + k, 3 + (k + 1) % 3));
        edges.push((3 + k, (k + 1) % 3));
        edges.push((3 + k, (k + 2) % 3));
    }
    straight(&coords, &edges)
}

/// Four vertices `A, B, C, D` in a cycle, with the sides `BC` and `DA`
/// doubled. Two of its faces share the pair of edges `AB`, `CD`.
pub fn fig6() -> PlaneGraph {
    PlaneGraph::from_rotations(&[vec![0, 7, 9], vec![10, 2, 1], vec![11, 4, 3], vec![5, 8, 6]])
        .expect("fixture is planar")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_counts() {
        let counts = |g: PlaneGraph| (g.vertex_count(), g.edge_count(), g.face_count());
        assert_eq!(counts(prism()), (6, 9, 5));
        assert_eq!(counts(cube()), (8, 12, 6));
        assert_eq!(counts(octahedron()), (6, 12, 8));
        assert_eq!(counts(fig6()), (4, 6, 4));
        assert_eq!(counts(theta(5)), (2, 5, 5));
    }

    #[test]
    fn octahedron_is_four_regular_with_triangles() {
        let g = octahedron();
        assert!(g.degrees().iter().all(|&d| d == 4));
        assert!(g.faces().iter().all(|f| f.len() == 3));
    }
}
