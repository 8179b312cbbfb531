//! Dense complex polynomials, coefficients in increasing degree.

use super::DynamicsError;
use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;

pub type C = Complex64;

pub fn trim(mut p: Vec<C>) -> Vec<C> {
    while p.len() > 1 && p.last() == Some(&C::new(0.0, 0.0)) {
        p.pop();
    }
    if p.is_empty() {
        p.push(C::new(0.0, 0.0));
    }
    p
}

pub fn degree(p: &[C]) -> usize {
    p.iter().rposition(|c| *c != C::new(0.0, 0.0)).unwrap_or(0)
}

pub fn eval(p: &[C], z: C) -> C {
    p.iter().rev().fold(C::new(0.0, 0.0), |acc, &c| acc * z + c)
}

pub fn deriv(p: &[C]) -> Vec<C> {
    if p.len() <= 1 {
        return vec![C::new(0.0, 0.0)];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * k as f64)
        .collect()
}

pub fn add(a: &[C], b: &[C]) -> Vec<C> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).copied().unwrap_or_default() + b.get(i).copied().unwrap_or_default())
        .collect()
}

pub fn scale(a: &[C], s: C) -> Vec<C> {
    a.iter().map(|&c| c * s).collect()
}

pub fn mul(a: &[C], b: &[C]) -> Vec<C> {
    let mut out = vec![C::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn conj(a: &[C]) -> Vec<C> {
    a.iter().map(|c| c.conj()).collect()
}

/// `p(z0 + h)` as a polynomial in `h`.
pub fn shift(p: &[C], z0: C) -> Vec<C> {
    // Repeated synthetic division by (z - z0).
    let mut q = p.to_vec();
    let n = q.len();
    for k in 0..n {
        for i in (k..n - 1).rev() {
            let carry = q[i + 1] * z0;
            q[i] += carry;
        }
    }
    q
}

/// `p` with coefficients reversed after padding to length `d + 1`, so that
/// `rev(p)(u) = u^d p(1/u)`.
pub fn reversed(p: &[C], d: usize) -> Vec<C> {
    let mut q = p.to_vec();
    q.resize(d + 1, C::new(0.0, 0.0));
    q.reverse();
    q
}

/// Newton refinement of an approximate root, accepting only improving steps.
pub fn polish(p: &[C], dp: &[C], mut z: C) -> C {
    let mut best = eval(p, z).norm();
    for _ in 0..60 {
        let d = eval(dp, z);
        if d.norm() == 0.0 {
            break;
        }
        let next = z - eval(p, z) / d;
        let r = eval(p, next).norm();
        if !(r < best) {
            break;
        }
        best = r;
        z = next;
    }
    z
}

/// Simultaneous Aberth–Ehrlich iteration from points on a circle whose
/// radius bounds the roots.
fn aberth(p: &[C]) -> Option<Vec<C>> {
    let n = degree(p);
    let dp = deriv(p);
    let lead = p[n].norm();
    let radius = 1.0 + p[..n].iter().map(|c| c.norm() / lead).fold(0.0, f64::max);
    let mut z: Vec<C> = (0..n)
        .map(|k| {
            C::from_polar(
                0.5 * radius,
                2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64,
            )
        })
        .collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let ratio = eval(p, z[i]) / eval(&dp, z[i]);
            let repulsion: C = (0..n)
                .filter(|&j| j != i)
                .map(|j| 1.0 / (z[i] - z[j]))
                .sum();
            let step = ratio / (C::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            return Some(z);
        }
    }
    None
}

/// All roots, with multiplicity, from the eigenvalues of the companion
/// matrix (or Aberth iteration when that fails), each refined by Newton's
/// method.
pub fn roots(p: &[C]) -> Result<Vec<C>, DynamicsError> {
    let n = degree(p);
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = p[n];
    let mut m = DMatrix::<C>::zeros(n, n);
    for j in 0..n {
        m[(0, j)] = -p[n - 1 - j] / lead;
    }
    for i in 1..n {
        m[(i, i - 1)] = C::new(1.0, 0.0);
    }
    let eig: Vec<C> = match Schur::try_new(m, f64::EPSILON, 100_000).and_then(|s| s.eigenvalues()) {
        Some(e) => e.iter().copied().collect(),
        None => aberth(&p[..=n]).ok_or(DynamicsError::RootFinding)?,
    };
    let dp = deriv(&p[..=n]);
    Ok(eig.iter().map(|&z| polish(&p[..=n], &dp, z)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C {
        C::new(re, 0.0)
    }

    #[test]
    fn shift_matches_evaluation() {
        let p = vec![c(1.0), c(-2.0), c(0.5), C::new(0.0, 3.0)];
        let z0 = C::new(0.3, -0.7);
        let q = shift(&p, z0);
        for h in [c(0.0), C::new(0.1, 0.2), c(-1.5)] {
            assert!((eval(&q, h) - eval(&p, z0 + h)).norm() < 1e-12);
        }
    }

    #[test]
    fn roots_of_unity() {
        let mut p = vec![c(0.0); 8];
        p[0] = c(-1.0);
        p[7] = c(1.0);
        let r = roots(&p).unwrap();
        assert_eq!(r.len(), 7);
        for z in r {
            assert!((z.powu(7) - 1.0).norm() < 1e-13);
        }
    }

    #[test]
    fn aberth_finds_sparse_roots() {
        let mut p = vec![c(0.0); 26];
        p[1] = c(-1.0);
        p[25] = c(1.0);
        let r = aberth(&p).unwrap();
        assert_eq!(r.len(), 25);
        for z in r {
            assert!(eval(&p, z).norm() < 1e-12);
        }
    }

    #[test]
    fn reversal() {
        let p = vec![c(1.0), c(2.0)];
        let u = C::new(0.4, 0.1);
        let r = reversed(&p, 3);
        assert!((eval(&r, u) - u.powu(3) * eval(&p, 1.0 / u)).norm() < 1e-12);
    }
}
