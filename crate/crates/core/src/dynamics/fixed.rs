//! Fixed points, their multipliers, and the fixed critical points.

use super::map::{AntiRationalMap, ExtPoint};
use super::poly::{self, C};
use super::{DynamicsError, Tolerances};
use num_traits::Zero;
use serde::{Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FixedKind {
    Superattracting,
    Attracting,
    Repelling,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixedPointRecord {
    pub location: ExtPoint,
    /// `R'(conj z0)`, in the chart `w = 1/z` at infinity.
    #[serde(serialize_with = "ser_complex")]
    pub lambda: C,
    /// Real multiplier `|lambda|`.
    #[serde(rename = "L")]
    pub real_multiplier: f64,
    pub kind: FixedKind,
    /// `|f(z) - z|` in the chart where the point has modulus at most 1.
    pub residual: f64,
}

pub(crate) fn ser_complex<S: Serializer>(z: &C, s: S) -> Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct KindCounts {
    pub superattracting: usize,
    pub attracting: usize,
    pub repelling: usize,
}

impl KindCounts {
    pub fn attracting_total(&self) -> usize {
        self.superattracting + self.attracting
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MapReport {
    pub degree: usize,
    pub fixed_points: Vec<FixedPointRecord>,
    pub counts: KindCounts,
    /// Whether `N_rep - N_attr = d - 1`.
    pub identity_ok: bool,
    pub max_residual: f64,
}

/// A fixed critical point with multiplicity `m`, so that locally
/// `f(c + h) ≈ c + a conj(h)^(m+1)` (in the chart `w = 1/z` at infinity).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalPoint {
    pub location: ExtPoint,
    pub multiplicity: usize,
    #[serde(serialize_with = "ser_complex")]
    pub leading: C,
}

/// Numerator of `f∘f(z) - z` over a common denominator: `f∘f = R∘conj(R)`.
fn second_iterate_equation(f: &AntiRationalMap) -> Vec<C> {
    let d = f.degree();
    let (p, q) = (poly::conj(f.numerator()), poly::conj(f.denominator()));
    let mut pow_p = vec![vec![C::new(1.0, 0.0)]];
    let mut pow_q = vec![vec![C::new(1.0, 0.0)]];
    for k in 1..=d {
        pow_p.push(poly::mul(&pow_p[k - 1], &p));
        pow_q.push(poly::mul(&pow_q[k - 1], &q));
    }
    let mut n = vec![C::zero()];
    let mut den = vec![C::zero()];
    for k in 0..=d {
        let term = poly::mul(&pow_p[k], &pow_q[d - k]);
        if let Some(&c) = f.numerator().get(k) {
            n = poly::add(&n, &poly::scale(&term, c));
        }
        if let Some(&c) = f.denominator().get(k) {
            den = poly::add(&den, &poly::scale(&term, c));
        }
    }
    let z_den = poly::mul(&den, &[C::zero(), C::new(1.0, 0.0)]);
    poly::trim(poly::add(&n, &poly::scale(&z_den, C::new(-1.0, 0.0))))
}

/// Newton's method for `f(z) = z`. Writing `F = f(z) - z` and
/// `λ = R'(conj z)`, the correction solving `δ - λ conj(δ) = F` is
/// `(F + λ conj F) / (1 - |λ|²)`.
fn refine(f: &AntiRationalMap, mut z: C) -> (C, f64) {
    let mut res = (f.eval_finite(z) - z).norm();
    for _ in 0..60 {
        let fz = f.eval_finite(z) - z;
        let lam = f.r_prime(z.conj());
        let den = 1.0 - lam.norm_sqr();
        if den.abs() < 1e-12 || !fz.is_finite() {
            break;
        }
        let next = z + (fz + lam * fz.conj()) / den;
        let r = (f.eval_finite(next) - next).norm();
        if !(r < res) {
            break;
        }
        z = next;
        res = r;
        if res == 0.0 {
            break;
        }
    }
    (z, res)
}

/// Refines a candidate in whichever chart keeps it in the closed unit disc.
fn refine_ext(f: &AntiRationalMap, g: &AntiRationalMap, z: ExtPoint) -> (ExtPoint, f64) {
    match z {
        ExtPoint::Finite(z) if z.norm() <= 1.0 => {
            let (z, r) = refine(f, z);
            (ExtPoint::Finite(z), r)
        }
        _ => {
            let w = z.finite().map_or(C::zero(), |z| 1.0 / z);
            let (w, r) = refine(g, w);
            let p = if w == C::zero() {
                ExtPoint::Infinity
            } else {
                ExtPoint::Finite(1.0 / w)
            };
            (p, r)
        }
    }
}

fn sort_key(p: &ExtPoint) -> (u8, i64, i64) {
    match p {
        ExtPoint::Infinity => (1, 0, 0),
        ExtPoint::Finite(z) => (0, (z.re * 1e9).round() as i64, (z.im * 1e9).round() as i64),
    }
}

/// All fixed points of `f`, classified by real multiplier.
///
/// Candidates are the roots of the fixed-point equation of `f∘f` (a
/// polynomial of degree at most `d² + 1`), plus infinity; each is refined
/// by Newton's method for `f` itself and kept if its residual is below
/// `tol.residual`.
pub fn fixed_points(
    f: &AntiRationalMap,
    tol: &Tolerances,
) -> Result<Vec<FixedPointRecord>, DynamicsError> {
    let g = f.inverted();
    let mut candidates: Vec<ExtPoint> = poly::roots(&second_iterate_equation(f))?
        .into_iter()
        .map(ExtPoint::Finite)
        .collect();
    if f.eval(ExtPoint::Infinity) == ExtPoint::Infinity {
        candidates.push(ExtPoint::Infinity);
    }
    let mut found: Vec<(ExtPoint, f64)> = Vec::new();
    for c in candidates {
        let (p, res) = refine_ext(f, &g, c);
        if !(res < tol.residual) {
            continue;
        }
        match found
            .iter_mut()
            .find(|(q, _)| q.chordal_distance(p) < tol.cluster)
        {
            Some(prev) if res < prev.1 => *prev = (p, res),
            Some(_) => {}
            None => found.push((p, res)),
        }
    }
    found.sort_by_key(|(p, _)| sort_key(p));
    found
        .into_iter()
        .map(|(location, residual)| {
            let lambda = match location {
                ExtPoint::Finite(z) => f.r_prime(z.conj()),
                ExtPoint::Infinity => g.r_prime(C::zero()),
            };
            let l = lambda.norm();
            if (l - 1.0).abs() < tol.indifferent {
                return Err(DynamicsError::Indifferent {
                    point: location.to_string(),
                    multiplier: l,
                });
            }
            let kind = if l < tol.superattracting {
                FixedKind::Superattracting
            } else if l < 1.0 {
                FixedKind::Attracting
            } else {
                FixedKind::Repelling
            };
            Ok(FixedPointRecord {
                location,
                lambda,
                real_multiplier: l,
                kind,
                residual,
            })
        })
        .collect()
}

/// Fixed points with the count identity `N_rep - N_attr = d - 1`.
pub fn verify_map(f: &AntiRationalMap, tol: &Tolerances) -> Result<MapReport, DynamicsError> {
    let fixed_points = fixed_points(f, tol)?;
    let mut counts = KindCounts::default();
    for p in &fixed_points {
        match p.kind {
            FixedKind::Superattracting => counts.superattracting += 1,
            FixedKind::Attracting => counts.attracting += 1,
            FixedKind::Repelling => counts.repelling += 1,
        }
    }
    let d = f.degree();
    let identity_ok = counts.repelling as i64 - counts.attracting_total() as i64 == d as i64 - 1;
    let max_residual = fixed_points.iter().map(|p| p.residual).fold(0.0, f64::max);
    Ok(MapReport {
        degree: d,
        fixed_points,
        counts,
        identity_ok,
        max_residual,
    })
}

/// The superattracting fixed points with their multiplicities. Fails unless
/// they carry all `2d - 2` critical points.
pub fn critical_points(
    f: &AntiRationalMap,
    fixed: &[FixedPointRecord],
) -> Result<Vec<CriticalPoint>, DynamicsError> {
    let out: Vec<CriticalPoint> = fixed
        .iter()
        .filter(|p| p.kind == FixedKind::Superattracting)
        .map(|p| {
            let (k, a) = f.local_degree(p.location);
            CriticalPoint {
                location: p.location,
                multiplicity: k - 1,
                leading: a,
            }
        })
        .collect();
    let found: usize = out.iter().map(|c| c.multiplicity).sum();
    let expected = 2 * f.degree() - 2;
    if found != expected || out.iter().any(|c| c.multiplicity == 0) {
        return Err(DynamicsError::NotCriticallyFixed { found, expected });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::builtin;

    #[test]
    fn power_map_fixed_points() {
        let f = builtin("zbar", Some(2)).unwrap();
        let r = verify_map(&f, &Tolerances::default()).unwrap();
        assert_eq!(r.counts.superattracting, 2);
        assert_eq!(r.counts.repelling, 3);
        assert!(r.identity_ok);
        for p in r
            .fixed_points
            .iter()
            .filter(|p| p.kind == FixedKind::Repelling)
        {
            let z = p.location.finite().unwrap();
            assert!((z.norm() - 1.0).abs() < 1e-12);
            assert!((z.powu(3) - 1.0).norm() < 1e-12);
            assert!((p.real_multiplier - 2.0).abs() < 1e-12);
        }
        assert!(r
            .fixed_points
            .iter()
            .any(|p| p.location == ExtPoint::Infinity));
    }

    #[test]
    fn second_iterate_of_power_map() {
        let f = builtin("zbar", Some(3)).unwrap();
        let e = second_iterate_equation(&f);
        assert_eq!(poly::degree(&e), 9);
        assert_eq!(e[9], C::new(1.0, 0.0));
        assert_eq!(e[1], C::new(-1.0, 0.0));
    }

    #[test]
    fn critical_multiplicities() {
        let f = builtin("f_2_1", None).unwrap();
        let r = verify_map(&f, &Tolerances::default()).unwrap();
        let mut m: Vec<usize> = critical_points(&f, &r.fixed_points)
            .unwrap()
            .iter()
            .map(|c| c.multiplicity)
            .collect();
        m.sort_unstable();
        assert_eq!(m, vec![1, 2, 3]);
    }

    #[test]
    fn non_critically_fixed_map_is_rejected() {
        // z̄² - 1 has its finite critical point 0 on a 2-cycle.
        let f = AntiRationalMap::new(
            vec![C::new(-1.0, 0.0), C::zero(), C::new(1.0, 0.0)],
            vec![C::new(1.0, 0.0)],
        )
        .unwrap();
        let r = verify_map(&f, &Tolerances::default()).unwrap();
        assert!(matches!(
            critical_points(&f, &r.fixed_points),
            Err(DynamicsError::NotCriticallyFixed {
                found: 1,
                expected: 2
            })
        ));
    }
}
