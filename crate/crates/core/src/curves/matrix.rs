//! Thurston matrices of multicurves and their Perron roots.

use super::{homotopic, pullback, CurveError, Multicurve};
use crate::tischler::TischlerGraph;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::Serialize;

pub type Rational = Ratio<i64>;

/// One pull-back component counted in the matrix: a component of the
/// preimage of curve `row`, homotopic to curve `col`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Contribution {
    pub row: usize,
    pub col: usize,
    /// Index of the component in `pullback(curves[row])`.
    pub component: usize,
    pub degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThurstonMatrix {
    entries: Vec<Vec<Rational>>,
    contributions: Vec<Contribution>,
}

impl ThurstonMatrix {
    /// Row `k` records the non-peripheral pull-back components of curve `k`
    /// that are homotopic to a curve of the multicurve, each weighted by the
    /// reciprocal of its degree.
    pub fn new(t: &TischlerGraph, gamma: &Multicurve) -> Result<Self, CurveError> {
        if gamma.is_empty() {
            return Err(CurveError::EmptyMulticurve);
        }
        let m = gamma.len();
        let mut entries = vec![vec![Rational::zero(); m]; m];
        let mut contributions = Vec::new();
        for (k, curve) in gamma.curves().iter().enumerate() {
            for (a, c) in pullback(t, curve)?.iter().enumerate() {
                if c.peripheral {
                    continue;
                }
                if let Some(j) = gamma.curves().iter().position(|g| homotopic(g, &c.reduced)) {
                    entries[k][j] += Rational::new(1, c.degree as i64);
                    contributions.push(Contribution {
                        row: k,
                        col: j,
                        component: a,
                        degree: c.degree,
                    });
                }
            }
        }
        Ok(ThurstonMatrix {
            entries,
            contributions,
        })
    }

    /// A matrix given directly; entries must be non-negative.
    pub fn from_entries(entries: Vec<Vec<Rational>>) -> Self {
        let m = entries.len();
        assert!(
            entries.iter().all(|r| r.len() == m),
            "matrix must be square"
        );
        assert!(
            entries.iter().flatten().all(|x| *x >= Rational::zero()),
            "entries must be non-negative"
        );
        ThurstonMatrix {
            entries,
            contributions: Vec::new(),
        }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn get(&self, k: usize, j: usize) -> Rational {
        self.entries[k][j]
    }

    pub fn contributions(&self) -> &[Contribution] {
        &self.contributions
    }

    pub fn leading_eigenvalue(&self) -> f64 {
        leading_eigenvalue(&self.entries)
    }
}

fn to_f64(x: &Rational) -> f64 {
    x.to_f64().expect("finite rational")
}

/// Perron root of a square non-negative matrix.
pub fn leading_eigenvalue(m: &[Vec<Rational>]) -> f64 {
    if m.len() <= 3 {
        exact_root(m)
    } else {
        irreducible_components(m)
            .iter()
            .map(|c| c.root)
            .fold(0.0, f64::max)
    }
}

/// Largest real root of the characteristic polynomial, from exact
/// rational coefficients.
fn exact_root(m: &[Vec<Rational>]) -> f64 {
    match m.len() {
        0 => 0.0,
        1 => to_f64(&m[0][0]),
        2 => {
            let tr = m[0][0] + m[1][1];
            let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
            let disc = tr * tr - det * 4;
            (to_f64(&tr) + to_f64(&disc).max(0.0).sqrt()) / 2.0
        }
        3 => {
            // x^3 - c2 x^2 + c1 x - c0
            let c2 = m[0][0] + m[1][1] + m[2][2];
            let minor = |i: usize, j: usize| m[i][i] * m[j][j] - m[i][j] * m[j][i];
            let c1 = minor(0, 1) + minor(0, 2) + minor(1, 2);
            let c0 = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
            let (c2, c1, c0) = (to_f64(&c2), to_f64(&c1), to_f64(&c0));
            let p = |x: f64| ((x - c2) * x + c1) * x - c0;
            let bound = 1.0 + c2.abs().max(c1.abs()).max(c0.abs());
            // Critical points of p; p increases beyond the larger one.
            let disc = c2 * c2 - 3.0 * c1;
            let (lo, hi) = if disc > 0.0 {
                let r = disc.sqrt();
                let (x1, x2) = ((c2 - r) / 3.0, (c2 + r) / 3.0);
                if p(x2) <= 0.0 {
                    (x2, bound)
                } else {
                    (-bound, x1)
                }
            } else {
                (-bound, bound)
            };
            bisect(p, lo, hi)
        }
        _ => unreachable!(),
    }
}

/// Root of an increasing function on `[lo, hi]`.
fn bisect(p: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if p(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Perron root of an irreducible non-negative matrix: power iteration on
/// `M + I`, stopped when the Collatz-Wielandt bounds meet.
fn power_root(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let mut x = vec![1.0; n];
    let mut lo = 0.0;
    let mut hi = f64::INFINITY;
    for _ in 0..1_000_000 {
        let y: Vec<f64> = (0..n)
            .map(|i| x[i] + (0..n).map(|j| m[i][j] * x[j]).sum::<f64>())
            .collect();
        let ratios = (0..n).map(|i| y[i] / x[i]);
        lo = ratios.clone().fold(f64::INFINITY, f64::min);
        hi = ratios.fold(0.0, f64::max);
        let norm = y.iter().cloned().fold(0.0, f64::max);
        x = y.iter().map(|v| v / norm).collect();
        if hi - lo <= 1e-13 * hi.max(1.0) {
            break;
        }
    }
    0.5 * (lo + hi) - 1.0
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IrreducibleComponent {
    pub indices: Vec<usize>,
    pub root: f64,
}

/// Strongly connected components of the support digraph, each with the
/// Perron root of its diagonal block, in increasing order of least index.
pub fn irreducible_components(m: &[Vec<Rational>]) -> Vec<IrreducibleComponent> {
    let n = m.len();
    let mut g = DiGraph::<(), ()>::new();
    let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
    for i in 0..n {
        for j in 0..n {
            if !m[i][j].is_zero() {
                g.add_edge(nodes[i], nodes[j], ());
            }
        }
    }
    let mut comps: Vec<Vec<usize>> = tarjan_scc(&g)
        .into_iter()
        .map(|c| {
            let mut v: Vec<usize> = c.into_iter().map(|x| x.index()).collect();
            v.sort_unstable();
            v
        })
        .collect();
    comps.sort();
    comps
        .into_iter()
        .map(|indices| {
            let block: Vec<Vec<Rational>> = indices
                .iter()
                .map(|&i| indices.iter().map(|&j| m[i][j]).collect())
                .collect();
            let root = if block.len() <= 3 {
                exact_root(&block)
            } else {
                let f: Vec<Vec<f64>> = block
                    .iter()
                    .map(|r| r.iter().map(to_f64).collect())
                    .collect();
                power_root(&f)
            };
            IrreducibleComponent { indices, root }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn ints(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|row| row.iter().map(|&x| r(x, 1)).collect())
            .collect()
    }

    #[test]
    fn small_closed_forms() {
        assert_eq!(leading_eigenvalue(&ints(&[&[1]])), 1.0);
        assert_eq!(leading_eigenvalue(&ints(&[&[0, 0], &[0, 0]])), 0.0);
        let m = vec![vec![r(0, 1), r(1, 1)], vec![r(1, 2), r(0, 1)]];
        assert!((leading_eigenvalue(&m) - 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn cubic_matches_power_iteration() {
        // Companion-like cycle with weights: root is the cube root of the product.
        let m = vec![
            vec![r(0, 1), r(2, 1), r(0, 1)],
            vec![r(0, 1), r(0, 1), r(3, 1)],
            vec![r(1, 4), r(0, 1), r(0, 1)],
        ];
        let exact = leading_eigenvalue(&m);
        assert!((exact - 1.5f64.cbrt()).abs() < 1e-12);
        let f: Vec<Vec<f64>> = m
            .iter()
            .map(|row| row.iter().map(to_f64).collect())
            .collect();
        assert!((power_root(&f) - exact).abs() < 1e-9);
        // All-ones 3x3 has root 3.
        assert!(
            (leading_eigenvalue(&ints(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]])) - 3.0).abs() < 1e-12
        );
    }

    #[test]
    fn larger_matrices_use_components() {
        // Block triangular: a 4-cycle with unit weights and a trailing zero block.
        let mut m = vec![vec![r(0, 1); 5]; 5];
        for i in 0..4 {
            m[i][(i + 1) % 4] = r(1, 1);
        }
        m[0][4] = r(7, 1);
        assert!((leading_eigenvalue(&m) - 1.0).abs() < 1e-9);
        let comps = irreducible_components(&m);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].indices, vec![0, 1, 2, 3]);
        assert_eq!(comps[1].root, 0.0);
    }

    #[test]
    fn block_triangular_components() {
        let m = vec![vec![r(1, 1), r(1, 1)], vec![r(0, 1), r(1, 2)]];
        let comps = irreducible_components(&m);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].indices, vec![0]);
        assert_eq!(comps[0].root, 1.0);
        assert_eq!(comps[1].root, 0.5);
        let z = irreducible_components(&ints(&[&[0, 0], &[0, 0]]));
        assert_eq!(z.len(), 2);
        assert!(z.iter().all(|c| c.root == 0.0));
    }
}
