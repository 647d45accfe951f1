//! Scalars with an optional exact-rational mode, Pochhammer symbols, and the
//! tolerance policy used by every numerical comparison in the crate.
//!
//! A [`Scalar`] is either a double-precision complex number or an exact
//! rational. Arithmetic between two exact values stays exact; any operation
//! touching a float value produces a float.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute and relative slack for approximate comparisons.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs_eps: f64,
    pub rel_eps: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs_eps: 1e-10,
            rel_eps: 1e-10,
        }
    }
}

impl Tolerance {
    pub fn new(abs_eps: f64, rel_eps: f64) -> Result<Self> {
        if abs_eps > 0.0 && rel_eps > 0.0 && abs_eps.is_finite() && rel_eps.is_finite() {
            Ok(Tolerance { abs_eps, rel_eps })
        } else {
            Err(Error::InvalidTolerance { abs_eps, rel_eps })
        }
    }

    pub fn with_abs(self, abs_eps: f64) -> Result<Self> {
        Tolerance::new(abs_eps, self.rel_eps)
    }
}

/// `|x - y| <= abs_eps + rel_eps * max(|x|, |y|)`.
pub fn approx_eq(x: &Scalar, y: &Scalar, tol: &Tolerance) -> bool {
    if let (Scalar::Exact(p), Scalar::Exact(q)) = (x, y) {
        if p == q {
            return true;
        }
    }
    approx_eq_c(x.to_complex(), y.to_complex(), tol)
}

pub fn approx_eq_c(x: Complex64, y: Complex64, tol: &Tolerance) -> bool {
    (x - y).norm() <= tol.abs_eps + tol.rel_eps * x.norm().max(y.norm())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "ScalarRepr", try_from = "ScalarRepr")]
pub enum Scalar {
    Float(Complex64),
    Exact(BigRational),
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Exact(String),
    Float { re: f64, im: f64 },
}

impl From<Scalar> for ScalarRepr {
    fn from(s: Scalar) -> Self {
        match s {
            Scalar::Exact(q) => ScalarRepr::Exact(q.to_string()),
            Scalar::Float(z) => ScalarRepr::Float { re: z.re, im: z.im },
        }
    }
}

impl TryFrom<ScalarRepr> for Scalar {
    type Error = Error;
    fn try_from(r: ScalarRepr) -> Result<Self> {
        match r {
            ScalarRepr::Exact(s) => parse_rational(&s)
                .map(Scalar::Exact)
                .ok_or(Error::ParseScalar(s)),
            ScalarRepr::Float { re, im } => Ok(Scalar::complex(re, im)),
        }
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar::Exact(BigRational::from_integer(BigInt::from(n)))
    }

    /// Exact `p / q`. Panics when `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        Scalar::Exact(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn real(x: f64) -> Self {
        Scalar::Float(Complex64::new(x, 0.0))
    }

    pub fn complex(re: f64, im: f64) -> Self {
        Scalar::Float(Complex64::new(re, im))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(q) => Some(q),
            Scalar::Float(_) => None,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Float(z) => *z,
            Scalar::Exact(q) => Complex64::new(rational_to_f64(q), 0.0),
        }
    }

    pub fn to_float(&self) -> Scalar {
        Scalar::Float(self.to_complex())
    }

    /// Exact image of a real float value (every finite double is a rational).
    pub fn to_exact(&self) -> Option<Scalar> {
        match self {
            Scalar::Exact(_) => Some(self.clone()),
            Scalar::Float(z) if z.im == 0.0 => BigRational::from_float(z.re).map(Scalar::Exact),
            Scalar::Float(_) => None,
        }
    }

    pub fn re(&self) -> f64 {
        self.to_complex().re
    }

    pub fn im(&self) -> f64 {
        match self {
            Scalar::Float(z) => z.im,
            Scalar::Exact(_) => 0.0,
        }
    }

    pub fn abs(&self) -> f64 {
        self.to_complex().norm()
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Float(z) => Scalar::Float(z.conj()),
            Scalar::Exact(_) => self.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(q) => q.is_zero(),
            Scalar::Float(z) => z.re == 0.0 && z.im == 0.0,
        }
    }

    pub fn approx_zero(&self, tol: &Tolerance) -> bool {
        match self {
            Scalar::Exact(q) => q.is_zero(),
            Scalar::Float(z) => z.norm() <= tol.abs_eps,
        }
    }

    pub fn is_real(&self, tol: &Tolerance) -> bool {
        match self {
            Scalar::Exact(_) => true,
            Scalar::Float(z) => z.im.abs() <= tol.abs_eps,
        }
    }

    /// Integer nearest to the value, if the value is an integer up to
    /// `tol.abs_eps`. The flag is true when the match is only approximate.
    pub fn int_check(&self, tol: &Tolerance) -> (Option<i64>, bool) {
        match self {
            Scalar::Exact(q) => {
                if q.is_integer() {
                    (q.to_integer().to_i64(), false)
                } else {
                    (None, false)
                }
            }
            Scalar::Float(z) => {
                let r = z.re.round();
                let dist = (z.re - r).abs().max(z.im.abs());
                if dist <= tol.abs_eps && r.abs() < 9.0e15 {
                    (Some(r as i64), dist > 0.0)
                } else {
                    (None, false)
                }
            }
        }
    }

    pub fn as_integer(&self, tol: &Tolerance) -> Option<i64> {
        self.int_check(tol).0
    }

    pub fn is_integer(&self, tol: &Tolerance) -> bool {
        self.as_integer(tol).is_some()
    }

    pub fn is_neg_integer(&self, tol: &Tolerance) -> bool {
        matches!(self.as_integer(tol), Some(n) if n < 0)
    }

    pub fn is_nonneg_integer(&self, tol: &Tolerance) -> bool {
        matches!(self.as_integer(tol), Some(n) if n >= 0)
    }

    pub fn is_nonpos_integer(&self, tol: &Tolerance) -> bool {
        matches!(self.as_integer(tol), Some(n) if n <= 0)
    }

    /// Largest integer not exceeding the real part.
    pub fn floor(&self) -> i64 {
        match self {
            Scalar::Exact(q) => q.floor().to_integer().to_i64().unwrap_or(i64::MIN),
            Scalar::Float(z) => z.re.floor() as i64,
        }
    }

    /// Compares real parts; exact when both sides are exact.
    pub fn cmp_re(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Exact(p), Scalar::Exact(q)) => p.cmp(q),
            _ => self
                .re()
                .partial_cmp(&other.re())
                .unwrap_or(Ordering::Equal),
        }
    }

    pub fn sqrt(&self) -> Scalar {
        Scalar::Float(self.to_complex().sqrt())
    }

    pub fn powc(&self, e: &Scalar) -> Scalar {
        Scalar::Float(self.to_complex().powc(e.to_complex()))
    }

    pub fn powi(&self, n: i32) -> Scalar {
        match self {
            Scalar::Exact(q) => Scalar::Exact(q.pow(n)),
            Scalar::Float(z) => Scalar::Float(z.powi(n)),
        }
    }
}

fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Fallback for ratios whose parts overflow f64 individually.
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(BigRational::new(p, q))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

fn parse_imag(s: &str) -> Option<f64> {
    let body = s.strip_suffix(['i', 'j'])?;
    match body {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        _ => body.parse().ok(),
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts integers and `p/q` (exact), decimals, and complex literals
    /// such as `-0.5+1.5i`, `2i`, `-i`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() {
            return Err(Error::ParseScalar(s.to_string()));
        }
        if let Some(q) = parse_rational(t) {
            return Ok(Scalar::Exact(q));
        }
        if let Ok(x) = t.parse::<f64>() {
            if x.is_finite() {
                return Ok(Scalar::real(x));
            }
            return Err(Error::ParseScalar(s.to_string()));
        }
        if t.ends_with(['i', 'j']) {
            let bytes = t.as_bytes();
            let split = (1..t.len())
                .rev()
                .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
            let parsed = match split {
                Some(i) => t[..i]
                    .parse::<f64>()
                    .ok()
                    .zip(parse_imag(&t[i..])),
                None => parse_imag(t).map(|im| (0.0, im)),
            };
            if let Some((re, im)) = parsed {
                if re.is_finite() && im.is_finite() {
                    return Ok(Scalar::complex(re, im));
                }
            }
        }
        Err(Error::ParseScalar(s.to_string()))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(q) => write!(f, "{q}"),
            Scalar::Float(z) if z.im == 0.0 => write!(f, "{}", z.re),
            Scalar::Float(z) if z.im < 0.0 => write!(f, "{}-{}i", z.re, -z.im),
            Scalar::Float(z) => write!(f, "{}+{}i", z.re, z.im),
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<i32> for Scalar {
    fn from(n: i32) -> Self {
        Scalar::int(n as i64)
    }
}

impl From<f64> for Scalar {
    fn from(x: f64) -> Self {
        Scalar::real(x)
    }
}

impl From<Complex64> for Scalar {
    fn from(z: Complex64) -> Self {
        Scalar::Float(z)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::Exact(q)
    }
}

fn binop(
    lhs: &Scalar,
    rhs: &Scalar,
    exact: impl FnOnce(&BigRational, &BigRational) -> BigRational,
    float: impl FnOnce(Complex64, Complex64) -> Complex64,
) -> Scalar {
    match (lhs, rhs) {
        (Scalar::Exact(p), Scalar::Exact(q)) => Scalar::Exact(exact(p, q)),
        _ => Scalar::Float(float(lhs.to_complex(), rhs.to_complex())),
    }
}

macro_rules! impl_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                binop(self, rhs, |p, q| p $op q, |x, y| x $op y)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

impl_binop!(Add, add, +);
impl_binop!(Sub, sub, -);
impl_binop!(Mul, mul, *);
impl_binop!(Div, div, /);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(q) => Scalar::Exact(-q),
            Scalar::Float(z) => Scalar::Float(-z),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -(self.clone())
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| acc * x)
    }
}

/// Rising factorial `(b)_n = b (b+1) ... (b+n-1)`, with `(b)_0 = 1`.
pub fn pochhammer(b: &Scalar, n: usize) -> Scalar {
    (0..n).map(|j| b + Scalar::int(j as i64)).product()
}

pub fn pochhammer_c(b: Complex64, n: usize) -> Complex64 {
    (0..n).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (b + j as f64))
}
