//! Anti-rational maps `f(z) = R(conj z)` and the built-in examples.

use super::poly::{self, C};
use super::DynamicsError;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use std::fmt;

/// A point of the Riemann sphere. Infinity is only ever handled through the
/// chart `w = 1/z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtPoint {
    Finite(C),
    Infinity,
}

impl ExtPoint {
    pub fn finite(self) -> Option<C> {
        match self {
            ExtPoint::Finite(z) => Some(z),
            ExtPoint::Infinity => None,
        }
    }

    /// Chordal distance, bounded by 2.
    pub fn chordal_distance(self, other: ExtPoint) -> f64 {
        match (self, other) {
            (ExtPoint::Infinity, ExtPoint::Infinity) => 0.0,
            (ExtPoint::Finite(z), ExtPoint::Infinity)
            | (ExtPoint::Infinity, ExtPoint::Finite(z)) => 2.0 / (1.0 + z.norm_sqr()).sqrt(),
            (ExtPoint::Finite(a), ExtPoint::Finite(b)) => {
                2.0 * (a - b).norm() / ((1.0 + a.norm_sqr()).sqrt() * (1.0 + b.norm_sqr()).sqrt())
            }
        }
    }
}

impl fmt::Display for ExtPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtPoint::Infinity => write!(f, "inf"),
            ExtPoint::Finite(z) => write!(f, "{}", format_complex(*z)),
        }
    }
}

impl Serialize for ExtPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtPoint::Infinity => s.serialize_str("infinity"),
            ExtPoint::Finite(z) => [z.re, z.im].serialize(s),
        }
    }
}

/// `a+bi` with 12 significant digits.
pub fn format_complex(z: C) -> String {
    format!("{:.12}{:+.12}i", z.re, z.im)
}

/// Parses `3`, `-2i`, `1.5-0.5i`, `i`, `-i`, `2e-3+1i`.
pub fn parse_complex(s: &str) -> Result<C, DynamicsError> {
    let bad = || DynamicsError::Parse(format!("bad complex literal `{s}`"));
    let t = s.trim();
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return t
            .parse::<f64>()
            .map(|re| C::new(re, 0.0))
            .map_err(|_| bad());
    };
    // Split at the last sign that does not follow an exponent marker.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => x.parse::<f64>().map_err(|_| bad())?,
    };
    let re = re.parse::<f64>().map_err(|_| bad())?;
    Ok(C::new(re, im))
}

#[derive(Debug, Clone, PartialEq)]
pub struct AntiRationalMap {
    num: Vec<C>,
    den: Vec<C>,
}

/// A Möbius transformation `(a z + b) / (c z + d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moebius {
    pub a: C,
    pub b: C,
    pub c: C,
    pub d: C,
}

impl Moebius {
    pub fn apply(&self, z: ExtPoint) -> ExtPoint {
        match z {
            ExtPoint::Infinity if self.c == C::zero() => ExtPoint::Infinity,
            ExtPoint::Infinity => ExtPoint::Finite(self.a / self.c),
            ExtPoint::Finite(z) => {
                let den = self.c * z + self.d;
                if den == C::zero() {
                    ExtPoint::Infinity
                } else {
                    ExtPoint::Finite((self.a * z + self.b) / den)
                }
            }
        }
    }

    pub fn inverse(&self) -> Moebius {
        Moebius {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    fn conj(&self) -> Moebius {
        Moebius {
            a: self.a.conj(),
            b: self.b.conj(),
            c: self.c.conj(),
            d: self.d.conj(),
        }
    }
}

impl AntiRationalMap {
    /// Coefficients in increasing degree. Rejects degree below 2 and
    /// numerators and denominators with a common root.
    pub fn new(num: Vec<C>, den: Vec<C>) -> Result<Self, DynamicsError> {
        let (num, den) = (poly::trim(num), poly::trim(den));
        if den.iter().all(|c| *c == C::zero()) {
            return Err(DynamicsError::ZeroDenominator);
        }
        let d = poly::degree(&num).max(poly::degree(&den));
        if d < 2 {
            return Err(DynamicsError::LowDegree(d));
        }
        let (small, other) = if poly::degree(&num) <= poly::degree(&den) {
            (&num, &den)
        } else {
            (&den, &num)
        };
        if poly::degree(small) > 0 {
            let norm = other.iter().map(|c| c.norm()).fold(0.0, f64::max);
            for r in poly::roots(small)? {
                let scale = norm * r.norm().max(1.0).powi(poly::degree(other) as i32);
                if poly::eval(other, r).norm() <= 1e-9 * scale {
                    return Err(DynamicsError::CommonFactor);
                }
            }
        }
        Ok(AntiRationalMap { num, den })
    }

    pub fn numerator(&self) -> &[C] {
        &self.num
    }

    pub fn denominator(&self) -> &[C] {
        &self.den
    }

    pub fn degree(&self) -> usize {
        poly::degree(&self.num).max(poly::degree(&self.den))
    }

    /// `R(w)` at a finite point.
    pub fn r(&self, w: C) -> ExtPoint {
        let (n, d) = (poly::eval(&self.num, w), poly::eval(&self.den, w));
        if d == C::zero() {
            ExtPoint::Infinity
        } else {
            ExtPoint::Finite(n / d)
        }
    }

    /// `R'(w)` at a finite point that is not a pole.
    pub fn r_prime(&self, w: C) -> C {
        let (n, d) = (poly::eval(&self.num, w), poly::eval(&self.den, w));
        let (dn, dd) = (
            poly::eval(&poly::deriv(&self.num), w),
            poly::eval(&poly::deriv(&self.den), w),
        );
        (dn * d - n * dd) / (d * d)
    }

    pub fn eval(&self, z: ExtPoint) -> ExtPoint {
        match z {
            ExtPoint::Finite(z) => self.r(z.conj()),
            ExtPoint::Infinity => {
                let (dn, dd) = (poly::degree(&self.num), poly::degree(&self.den));
                if dn > dd {
                    ExtPoint::Infinity
                } else if dn == dd {
                    ExtPoint::Finite(self.num[dn] / self.den[dd])
                } else {
                    ExtPoint::Finite(C::zero())
                }
            }
        }
    }

    /// `f(z)` at a finite point, with poles sent to a non-finite value.
    pub fn eval_finite(&self, z: C) -> C {
        let w = z.conj();
        poly::eval(&self.num, w) / poly::eval(&self.den, w)
    }

    /// The map in the chart `w = 1/z`: `g(w) = 1 / f(1 / w)`.
    pub fn inverted(&self) -> AntiRationalMap {
        let d = self.degree();
        AntiRationalMap {
            num: poly::trim(poly::reversed(&self.den, d)),
            den: poly::trim(poly::reversed(&self.num, d)),
        }
    }

    /// The conjugate `h ∘ f ∘ h⁻¹`.
    pub fn conjugate(&self, h: &Moebius) -> Result<AntiRationalMap, DynamicsError> {
        // h ∘ R ∘ conj(h)⁻¹ as a rational map of conj(z).
        let m = h.inverse().conj();
        let d = self.degree();
        let lin_num = [m.b, m.a];
        let lin_den = [m.d, m.c];
        let compose = |p: &[C]| {
            let mut acc = vec![C::zero()];
            for k in 0..=d {
                let coef = p.get(k).copied().unwrap_or_default();
                if coef == C::zero() {
                    continue;
                }
                let mut term = vec![coef];
                for _ in 0..k {
                    term = poly::mul(&term, &lin_num);
                }
                for _ in k..d {
                    term = poly::mul(&term, &lin_den);
                }
                acc = poly::add(&acc, &term);
            }
            acc
        };
        let (n, q) = (compose(&self.num), compose(&self.den));
        let num = poly::add(&poly::scale(&n, h.a), &poly::scale(&q, h.b));
        let den = poly::add(&poly::scale(&n, h.c), &poly::scale(&q, h.d));
        AntiRationalMap::new(num, den)
    }

    /// The anti-holomorphic derivative `R'(conj z0)` at a fixed point; at
    /// infinity it is taken in the chart `w = 1/z`.
    pub fn multiplier(&self, z0: ExtPoint) -> Result<C, DynamicsError> {
        let image = self.eval(z0);
        if image.chordal_distance(z0) > 1e-6 {
            return Err(DynamicsError::NotFixed(z0.to_string()));
        }
        match z0 {
            ExtPoint::Finite(z) => Ok(self.r_prime(z.conj())),
            ExtPoint::Infinity => self.inverted().multiplier(ExtPoint::Finite(C::zero())),
        }
    }

    /// Taylor coefficients of `R` at the finite point `w0`, up to `h^order`.
    pub fn taylor(&self, w0: C, order: usize) -> Vec<C> {
        let n = poly::shift(&self.num, w0);
        let d = poly::shift(&self.den, w0);
        let mut out = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut acc = n.get(k).copied().unwrap_or_default();
            for j in 1..=k {
                acc -= d.get(j).copied().unwrap_or_default() * out[k - j];
            }
            out.push(acc / d[0]);
        }
        out
    }

    /// Local degree of `f` at a point and the leading coefficient `a` with
    /// `f(z) ≈ f(z0) + a conj(z - z0)^k`; at infinity, in the chart `w = 1/z`.
    pub fn local_degree(&self, z0: ExtPoint) -> (usize, C) {
        match z0 {
            ExtPoint::Infinity => self.inverted().local_degree(ExtPoint::Finite(C::zero())),
            ExtPoint::Finite(z) => {
                let d = self.degree();
                let t = self.taylor(z.conj(), d + 1);
                let scale = t
                    .iter()
                    .skip(1)
                    .map(|c| c.norm())
                    .fold(0.0, f64::max)
                    .max(1.0);
                let k = (1..t.len())
                    .find(|&k| t[k].norm() > 1e-8 * scale)
                    .unwrap_or(1);
                (k, t[k])
            }
        }
    }
}

/// Integer coefficients of the critically fixed polynomial with critical
/// points `0` and `1` of multiplicities `m0` and `m1`, normalized to fix
/// both: `(m0+m1+1)!/(m0! m1!) ∫₀^z ζ^m0 (1-ζ)^m1 dζ`.
pub fn incomplete_beta_coefficients(m0: usize, m1: usize) -> Vec<i64> {
    let fact = |n: usize| (1..=n as i64).product::<i64>();
    let lead = Ratio::new(fact(m0 + m1 + 1), fact(m0) * fact(m1));
    let mut out = vec![0i64; m0 + m1 + 2];
    let mut binom = Ratio::<i64>::one();
    for j in 0..=m1 {
        if j > 0 {
            binom =
                binom * Ratio::from_integer((m1 - j + 1) as i64) / Ratio::from_integer(j as i64);
        }
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let c = lead * binom * Ratio::from_integer(sign) / Ratio::from_integer((m0 + j + 1) as i64);
        assert!(c.is_integer(), "coefficients are integers");
        out[m0 + j + 1] = c.to_integer();
    }
    out
}

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: [&str; 6] = ["zbar", "tetrahedral", "f_1_1", "f_2_1", "f_3_1", "f_2_2"];

/// `zbar` (with degree `d`, default 2) is `conj(z)^d`; `tetrahedral` is
/// `3 conj(z)^2 / (2 conj(z)^3 + 1)`; `f_<m0>_<m1>` is the conjugate of the
/// critically fixed polynomial with critical points 0 and 1.
pub fn builtin(name: &str, d: Option<usize>) -> Result<AntiRationalMap, DynamicsError> {
    let re = |x: f64| C::new(x, 0.0);
    match name {
        "zbar" => {
            let d = d.unwrap_or(2);
            let mut num = vec![C::zero(); d + 1];
            num[d] = re(1.0);
            AntiRationalMap::new(num, vec![re(1.0)])
        }
        "tetrahedral" => AntiRationalMap::new(
            vec![re(0.0), re(0.0), re(3.0)],
            vec![re(1.0), re(0.0), re(0.0), re(2.0)],
        ),
        _ => {
            let parts: Vec<&str> = name.split('_').collect();
            match parts.as_slice() {
                ["f", a, b] => {
                    let (m0, m1) = match (a.parse::<usize>(), b.parse::<usize>()) {
                        (Ok(m0), Ok(m1)) if m0 >= 1 && m1 >= 1 && m0 + m1 <= 12 => (m0, m1),
                        _ => return Err(DynamicsError::UnknownMap(name.to_string())),
                    };
                    let num = incomplete_beta_coefficients(m0, m1)
                        .iter()
                        .map(|&c| re(c as f64))
                        .collect();
                    AntiRationalMap::new(num, vec![re(1.0)])
                }
                _ => Err(DynamicsError::UnknownMap(name.to_string())),
            }
        }
    }
}

/// A map file: numerator and denominator coefficients, each on one line,
/// in increasing degree. `#` starts a comment.
pub fn parse_map(text: &str) -> Result<AntiRationalMap, DynamicsError> {
    let lines: Vec<&str> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .collect();
    if lines.len() != 2 {
        return Err(DynamicsError::Parse(format!(
            "expected 2 coefficient lines, found {}",
            lines.len()
        )));
    }
    let coeffs = |l: &str| {
        l.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(parse_complex)
            .collect::<Result<Vec<C>, _>>()
    };
    AntiRationalMap::new(coeffs(lines[0])?, coeffs(lines[1])?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn incomplete_beta_polynomials() {
        assert_eq!(incomplete_beta_coefficients(1, 1), vec![0, 0, 3, -2]);
        assert_eq!(incomplete_beta_coefficients(2, 1), vec![0, 0, 0, 4, -3]);
        assert_eq!(incomplete_beta_coefficients(3, 1), vec![0, 0, 0, 0, 5, -4]);
        assert_eq!(
            incomplete_beta_coefficients(2, 2),
            vec![0, 0, 0, 10, -15, 6]
        );
    }

    #[test]
    fn evaluation() {
        let z2 = builtin("zbar", Some(2)).unwrap();
        let i = C::new(0.0, 1.0);
        assert_eq!(
            z2.eval(ExtPoint::Finite(i)),
            ExtPoint::Finite(C::new(-1.0, 0.0))
        );
        assert_eq!(z2.eval(ExtPoint::Infinity), ExtPoint::Infinity);
        let t = builtin("tetrahedral", None).unwrap();
        assert_eq!(
            t.eval(ExtPoint::Finite(C::new(1.0, 0.0))),
            ExtPoint::Finite(C::new(1.0, 0.0))
        );
        assert_eq!(t.eval(ExtPoint::Infinity), ExtPoint::Finite(C::zero()));
    }

    #[test]
    fn multipliers() {
        let z2 = builtin("zbar", Some(2)).unwrap();
        assert_eq!(
            z2.multiplier(ExtPoint::Finite(C::new(1.0, 0.0))).unwrap(),
            C::new(2.0, 0.0)
        );
        assert_eq!(
            z2.multiplier(ExtPoint::Finite(C::zero())).unwrap(),
            C::zero()
        );
        assert_eq!(z2.multiplier(ExtPoint::Infinity).unwrap(), C::zero());
        assert!(z2.multiplier(ExtPoint::Finite(C::new(2.0, 0.0))).is_err());
        // Against a central difference of R.
        let t = builtin("tetrahedral", None).unwrap();
        let one = C::new(1.0, 0.0);
        let h = 1e-6;
        let fd = (t.eval_finite(one + h) - t.eval_finite(one - h)) / (2.0 * h);
        let lam = t.multiplier(ExtPoint::Finite(one)).unwrap();
        assert!((lam.norm() - 2.0).abs() < 1e-9 || lam.norm() < 1e-9);
        assert!((fd - lam).norm() < 1e-6);
    }

    #[test]
    fn local_degrees() {
        let f = builtin("f_2_1", None).unwrap();
        assert_eq!(f.local_degree(ExtPoint::Finite(C::zero())).0, 3);
        assert_eq!(f.local_degree(ExtPoint::Finite(C::new(1.0, 0.0))).0, 2);
        assert_eq!(f.local_degree(ExtPoint::Infinity).0, 4);
        assert_eq!(f.local_degree(ExtPoint::Finite(C::new(0.5, 0.0))).0, 1);
    }

    #[test]
    fn complex_literals() {
        let cases = [
            ("3", C::new(3.0, 0.0)),
            ("-2i", C::new(0.0, -2.0)),
            ("1.5-0.5i", C::new(1.5, -0.5)),
            ("i", C::new(0.0, 1.0)),
            ("-i", C::new(0.0, -1.0)),
            ("2e-3+1i", C::new(2e-3, 1.0)),
            ("1e+2-1e-2i", C::new(100.0, -0.01)),
        ];
        for (s, z) in cases {
            assert_eq!(parse_complex(s).unwrap(), z, "{s}");
        }
        assert!(parse_complex("1+").is_err());
        assert!(parse_complex("abc").is_err());
    }

    #[test]
    fn map_files() {
        let f = parse_map("# tetrahedral\n0 0 3\n1, 0, 0, 2\n").unwrap();
        assert_eq!(f, builtin("tetrahedral", None).unwrap());
        assert!(matches!(
            parse_map("0 0 1\n0 1\n"),
            Err(DynamicsError::CommonFactor)
        ));
        assert!(matches!(
            parse_map("1 1\n1\n"),
            Err(DynamicsError::LowDegree(1))
        ));
    }
}
