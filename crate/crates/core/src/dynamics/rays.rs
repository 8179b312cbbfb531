//! Fixed internal rays and numerical Tischler graphs.

use super::fixed::{critical_points, verify_map, CriticalPoint, FixedKind, MapReport};
use super::map::{AntiRationalMap, ExtPoint};
use super::poly::{self, C};
use super::{DynamicsError, Tolerances};
use crate::rotation_graph::PlaneGraph;
use crate::tischler::{validate, TischlerGraph};
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

const SEED_SAMPLES: usize = 24;
const MAX_SEGMENTS: usize = 5000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RayTrace {
    pub source: ExtPoint,
    /// Index `k` of `m + 2`.
    pub ray: usize,
    /// Argument of the ray's initial direction in the local chart.
    pub angle: f64,
    /// Samples from near the source outward; each pulled-back segment maps
    /// onto the previous one.
    pub samples: Vec<ExtPoint>,
    pub landing: ExtPoint,
    /// Index of the landing point among the repelling fixed points.
    pub landing_index: usize,
    /// Largest `|f(s) - t|` over samples `s` and their targets `t`.
    pub max_residual: f64,
    pub segments: usize,
}

/// Local chart around a critical point: the map, the centre, and how chart
/// points map back to the sphere.
struct Chart {
    map: AntiRationalMap,
    centre: C,
    inverted: bool,
}

impl Chart {
    fn new(f: &AntiRationalMap, c: ExtPoint) -> Chart {
        match c {
            ExtPoint::Finite(z) => Chart {
                map: f.clone(),
                centre: z,
                inverted: false,
            },
            ExtPoint::Infinity => Chart {
                map: f.inverted(),
                centre: C::zero(),
                inverted: true,
            },
        }
    }

    fn to_sphere(&self, w: C) -> ExtPoint {
        if !self.inverted {
            ExtPoint::Finite(w)
        } else if w == C::zero() {
            ExtPoint::Infinity
        } else {
            ExtPoint::Finite(1.0 / w)
        }
    }

    fn from_sphere(&self, p: ExtPoint) -> Option<C> {
        match (p, self.inverted) {
            (ExtPoint::Finite(z), false) => Some(z),
            (ExtPoint::Infinity, false) => None,
            (ExtPoint::Infinity, true) => Some(C::zero()),
            (ExtPoint::Finite(z), true) => (z != C::zero()).then(|| 1.0 / z),
        }
    }

    fn r(&self, w: C) -> C {
        poly::eval(self.map.numerator(), w) / poly::eval(self.map.denominator(), w)
    }
}

/// Solves `f(u) = target` near `u_prev` (where `f(u_prev) = t_prev`) by
/// Newton's method in `w = conj u`. Rejects solutions farther than the
/// linear prediction allows, which would mean a jump to another branch.
fn pull_back_point(chart: &Chart, u_prev: C, t_prev: C, target: C) -> Option<C> {
    let w0 = u_prev.conj();
    let d0 = chart.map.r_prime(w0);
    if d0 == C::zero() || !d0.is_finite() {
        return None;
    }
    let dt = target - t_prev;
    let mut w = w0 + dt / d0;
    let scale = target.norm().max(1.0);
    for _ in 0..40 {
        let err = chart.r(w) - target;
        if err.norm() <= 1e-14 * scale {
            let jump = (w - w0).norm();
            let allowed = 4.0 * dt.norm() / d0.norm() + 1e-13 * w0.norm().max(1.0);
            return (jump <= allowed).then(|| w.conj());
        }
        let d = chart.map.r_prime(w);
        if d == C::zero() || !d.is_finite() {
            return None;
        }
        w -= err / d;
        if !w.is_finite() {
            return None;
        }
    }
    None
}

/// Pulls back along targets `t_0, …, t_n`, starting from `u_0` with
/// `f(u_0) = t_0`, halving the straight target steps when Newton fails,
/// down to the fraction `floor`.
fn pull_back_segment(chart: &Chart, u0: C, targets: &[C], floor: f64) -> Result<Vec<C>, String> {
    let mut out = vec![u0];
    let (mut u, mut t) = (u0, targets[0]);
    for &goal in &targets[1..] {
        let mut frac = 1.0f64;
        loop {
            if frac < floor {
                return Err(format!("step fraction below {floor:e} near {u}"));
            }
            let next_t = if frac >= 1.0 {
                goal
            } else {
                t + (goal - t) * frac
            };
            match pull_back_point(chart, u, t, next_t) {
                Some(v) => {
                    u = v;
                    t = next_t;
                    if t == goal {
                        break;
                    }
                    frac = (2.0 * frac).min(1.0);
                }
                None => frac /= 2.0,
            }
        }
        out.push(u);
    }
    Ok(out)
}

/// Traces ray `k` of the fixed critical point `c`, landing at one of
/// `repelling`.
pub fn trace_ray(
    f: &AntiRationalMap,
    c: &CriticalPoint,
    k: usize,
    repelling: &[ExtPoint],
    tol: &Tolerances,
) -> Result<RayTrace, DynamicsError> {
    let m = c.multiplicity;
    if m == 0 || k >= m + 2 {
        return Err(DynamicsError::NotCritical(c.location.to_string()));
    }
    let chart = Chart::new(f, c.location);
    let stalled = |reason: String| DynamicsError::Stalled {
        source_point: c.location.to_string(),
        ray: k,
        reason,
    };
    // Invariant directions of h -> a conj(h)^(m+1): (m+2) θ = arg a mod 2π.
    let a = c.leading;
    let angle = (a.arg() + 2.0 * PI * k as f64) / (m + 2) as f64;
    let r1 = (0.01 / a.norm()).powf(1.0 / m as f64).min(0.01);
    let z1 = chart.centre + C::from_polar(r1, angle);
    let z0 = chart.r(z1.conj());
    let (h0, h1) = (z0 - chart.centre, z1 - chart.centre);
    let ratio = (h1 / h0).ln();
    let mut segment: Vec<C> = (0..SEED_SAMPLES)
        .map(|i| chart.centre + h0 * (ratio * (i as f64 / (SEED_SAMPLES - 1) as f64)).exp())
        .collect();
    segment[0] = z0;
    segment[SEED_SAMPLES - 1] = z1;

    let mut samples: Vec<C> = segment.clone();
    let mut max_residual = 0.0f64;
    let mut segments = 0;
    loop {
        if segments >= MAX_SEGMENTS {
            return Err(stalled(format!(
                "no convergence after {MAX_SEGMENTS} segments"
            )));
        }
        let start = *segment.last().expect("segments are non-empty");
        let next = pull_back_segment(&chart, start, &segment, tol.step_floor).map_err(stalled)?;
        for (u, t) in next.iter().zip(&segment) {
            max_residual = max_residual.max((chart.r(u.conj()) - t).norm());
        }
        segments += 1;
        let end = *next.last().expect("segments are non-empty");
        if end.norm() > 1e8 {
            return Err(stalled("ray leaves the chart".to_string()));
        }
        samples.extend_from_slice(&next[1..]);
        let moved = (end - start).norm();
        segment = next;
        if moved < 1e-11 * end.norm().max(1.0) {
            break;
        }
    }
    let end = *samples.last().expect("non-empty");
    let close: Vec<usize> = repelling
        .iter()
        .enumerate()
        .filter(|(_, p)| {
            chart
                .from_sphere(**p)
                .is_some_and(|q| (q - end).norm() < tol.landing)
        })
        .map(|(i, _)| i)
        .collect();
    let landing_error = |reason: &str| DynamicsError::Landing {
        source_point: c.location.to_string(),
        ray: k,
        point: chart.to_sphere(end).to_string(),
        reason: reason.to_string(),
    };
    let landing_index = match close.as_slice() {
        [i] => *i,
        [] => return Err(landing_error("which is not a repelling fixed point")),
        _ => {
            return Err(landing_error(
                "which is ambiguous between repelling fixed points",
            ))
        }
    };
    Ok(RayTrace {
        source: c.location,
        ray: k,
        angle,
        samples: samples.iter().map(|&w| chart.to_sphere(w)).collect(),
        landing: repelling[landing_index],
        landing_index,
        max_residual,
        segments,
    })
}

/// All `m + 2` rays of every critical point, in order.
pub fn trace_rays(
    f: &AntiRationalMap,
    critical: &[CriticalPoint],
    repelling: &[ExtPoint],
    tol: &Tolerances,
) -> Result<Vec<RayTrace>, DynamicsError> {
    let jobs: Vec<(usize, usize)> = critical
        .iter()
        .enumerate()
        .flat_map(|(i, c)| (0..c.multiplicity + 2).map(move |k| (i, k)))
        .collect();
    jobs.par_iter()
        .map(|&(i, k)| trace_ray(f, &critical[i], k, repelling, tol))
        .collect()
}

#[derive(Debug, Clone)]
pub struct Extraction {
    pub report: MapReport,
    pub critical: Vec<CriticalPoint>,
    pub repelling: Vec<ExtPoint>,
    pub rays: Vec<RayTrace>,
    /// Critical vertices `0..critical.len()` first, then one vertex per
    /// repelling fixed point, each on exactly two rays.
    pub full: PlaneGraph,
    /// `full` with its degree-2 vertices suppressed.
    pub tischler: TischlerGraph,
}

/// Traces every fixed internal ray of a critically fixed map and assembles
/// the Tischler graph. Ray `r` contributes darts `2r` (at its critical
/// point) and `2r + 1` (at its landing point); the rotation at a critical
/// point follows the ray angles counterclockwise.
pub fn extract_tischler(
    f: &AntiRationalMap,
    tol: &Tolerances,
) -> Result<Extraction, DynamicsError> {
    let report = verify_map(f, tol)?;
    let critical = critical_points(f, &report.fixed_points)?;
    let repelling: Vec<ExtPoint> = report
        .fixed_points
        .iter()
        .filter(|p| p.kind == FixedKind::Repelling)
        .map(|p| p.location)
        .collect();
    let rays = trace_rays(f, &critical, &repelling, tol)?;

    let mut rotations: Vec<Vec<usize>> = vec![Vec::new(); critical.len() + repelling.len()];
    for (r, ray) in rays.iter().enumerate() {
        let source = critical
            .iter()
            .position(|c| c.location == ray.source)
            .expect("rays start at critical points");
        rotations[source].push(2 * r);
        rotations[critical.len() + ray.landing_index].push(2 * r + 1);
    }
    for (j, p) in repelling.iter().enumerate() {
        let count = rotations[critical.len() + j].len();
        if count != 2 {
            return Err(DynamicsError::RayCount {
                point: p.to_string(),
                count,
            });
        }
    }
    let full = PlaneGraph::from_rotations(&rotations)
        .map_err(|e| DynamicsError::InvalidGraph(e.to_string()))?;
    let expected = f.degree() + 1;
    if full.face_count() != expected {
        return Err(DynamicsError::FaceCount {
            found: full.face_count(),
            expected,
        });
    }
    let tischler = validate(&full.suppress_degree_two()).map_err(|v| {
        DynamicsError::InvalidGraph(
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join("; "),
        )
    })?;
    Ok(Extraction {
        report,
        critical,
        repelling,
        rays,
        full,
        tischler,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::builtin;
    use crate::rotation_graph::library::theta;
    use crate::rotation_graph::Orientation;

    #[test]
    fn power_map_rays_are_radii() {
        let f = builtin("zbar", Some(2)).unwrap();
        let tol = Tolerances::default();
        let report = verify_map(&f, &tol).unwrap();
        let crit = critical_points(&f, &report.fixed_points).unwrap();
        let rep: Vec<ExtPoint> = report
            .fixed_points
            .iter()
            .filter(|p| p.kind == FixedKind::Repelling)
            .map(|p| p.location)
            .collect();
        let zero = crit
            .iter()
            .find(|c| c.location == ExtPoint::Finite(C::zero()))
            .unwrap();
        let mut landed = Vec::new();
        for k in 0..3 {
            let ray = trace_ray(&f, zero, k, &rep, &tol).unwrap();
            assert!((ray.angle - 2.0 * PI * k as f64 / 3.0).abs() < 1e-12);
            for s in &ray.samples {
                let z = s.finite().unwrap();
                assert!((z.arg() - C::from_polar(1.0, ray.angle).arg()).abs() < 1e-9);
            }
            assert!(ray.max_residual < 1e-8);
            landed.push(ray.landing_index);
        }
        landed.sort_unstable();
        assert_eq!(landed, vec![0, 1, 2]);
    }

    #[test]
    fn power_map_graph_is_theta() {
        let f = builtin("zbar", Some(2)).unwrap();
        let x = extract_tischler(&f, &Tolerances::default()).unwrap();
        assert_eq!(x.full.vertex_count(), 5);
        assert_eq!(
            x.tischler.graph().canonical_code(Orientation::Preserve),
            theta(3).canonical_code(Orientation::Preserve)
        );
    }

    #[test]
    fn rays_out_of_range_are_rejected() {
        let c = CriticalPoint {
            location: ExtPoint::Finite(C::zero()),
            multiplicity: 1,
            leading: C::new(1.0, 0.0),
        };
        let f = builtin("zbar", Some(2)).unwrap();
        assert!(trace_ray(&f, &c, 3, &[], &Tolerances::default()).is_err());
    }
}
