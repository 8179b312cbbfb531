//! Numerical study of anti-rational maps `f(z) = R(conj z)`.
//!
//! Points at infinity are only ever handled in the chart `w = 1/z`, through
//! [`AntiRationalMap::inverted`].

mod fixed;
mod map;
pub mod poly;
mod rays;

pub use fixed::{
    critical_points, fixed_points, verify_map, CriticalPoint, FixedKind, FixedPointRecord,
    KindCounts, MapReport,
};
pub use map::{
    builtin, format_complex, incomplete_beta_coefficients, parse_complex, parse_map,
    AntiRationalMap, ExtPoint, Moebius, BUILTIN_NAMES,
};
pub use poly::C;
pub use rays::{extract_tischler, trace_ray, trace_rays, Extraction, RayTrace};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynamicsError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("denominator is identically zero")]
    ZeroDenominator,
    #[error("degree {0} is below 2")]
    LowDegree(usize),
    #[error("numerator and denominator share a root (0/0)")]
    CommonFactor,
    #[error("polynomial root finder did not converge")]
    RootFinding,
    #[error("point {0} is not fixed")]
    NotFixed(String),
    #[error("indifferent fixed point at {point} (L = {multiplier})")]
    Indifferent { point: String, multiplier: f64 },
    #[error("unknown map `{0}`")]
    UnknownMap(String),
    #[error("{0} is not a superattracting fixed point")]
    NotCritical(String),
    #[error(
        "map is not critically fixed: fixed critical multiplicity {found}, expected {expected}"
    )]
    NotCriticallyFixed { found: usize, expected: usize },
    #[error("ray {ray} from {source_point} stalled: {reason}")]
    Stalled {
        source_point: String,
        ray: usize,
        reason: String,
    },
    #[error("ray {ray} from {source_point} lands at {point}, {reason}")]
    Landing {
        source_point: String,
        ray: usize,
        point: String,
        reason: String,
    },
    #[error("repelling fixed point {point} has {count} rays, expected 2")]
    RayCount { point: String, count: usize },
    #[error("extracted graph has {found} faces, expected {expected}")]
    FaceCount { found: usize, expected: usize },
    #[error("extracted graph is invalid: {0}")]
    InvalidGraph(String),
}

/// Numerical thresholds. The defaults suit desk-scale degrees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Largest accepted `|f(z) - z|`, measured in the chart where `|z| <= 1`.
    pub residual: f64,
    /// Fixed points closer than this (chordally) are merged.
    pub cluster: f64,
    /// `L` below this is superattracting.
    pub superattracting: f64,
    /// `|L - 1|` below this is treated as indifferent.
    pub indifferent: f64,
    /// Distance at which a ray endpoint is matched to a repelling point.
    pub landing: f64,
    /// Smallest target step in ray continuation.
    pub step_floor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            residual: 1e-10,
            cluster: 1e-7,
            superattracting: 1e-6,
            indifferent: 1e-6,
            landing: 1e-6,
            step_floor: 1e-12,
        }
    }
}
