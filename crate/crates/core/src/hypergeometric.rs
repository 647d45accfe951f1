//! Gauss hypergeometric function on the closed unit disc, plus the special
//! cases the spectrum engine leans on: terminating series, Gauss's value at
//! `z = 1`, Euler's factorization, and the circle average of `|1 - t e^{iθ}|^{2ν}`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::{gamma, rgamma};
use crate::scalar::{pochhammer, Scalar, Tolerance};

/// Relative accuracy targeted by the series summation.
const SERIES_EPS: f64 = 1e-17;
const SERIES_CAP: usize = 1_000_000;
/// Consecutive terms that must satisfy the stopping rule.
const PATIENCE: usize = 5;
/// Distance from an integer below which `γ - α - β` counts as integral for
/// the purpose of choosing the `1 - z` connection formula.
const CONNECTION_GAP: f64 = 1e-3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hyp2F1Params {
    pub alpha: Scalar,
    pub beta: Scalar,
    pub gamma: Scalar,
}

impl Hyp2F1Params {
    pub fn new(alpha: impl Into<Scalar>, beta: impl Into<Scalar>, gamma: impl Into<Scalar>) -> Self {
        Hyp2F1Params {
            alpha: alpha.into(),
            beta: beta.into(),
            gamma: gamma.into(),
        }
    }

    fn complex(&self) -> (Complex64, Complex64, Complex64) {
        (
            self.alpha.to_complex(),
            self.beta.to_complex(),
            self.gamma.to_complex(),
        )
    }

    /// Degree of the polynomial when `α` or `β` is a non-positive integer.
    pub fn terminating_degree(&self, tol: &Tolerance) -> Option<usize> {
        [&self.alpha, &self.beta]
            .iter()
            .filter_map(|x| x.as_integer(tol).filter(|&n| n <= 0))
            .map(|n| (-n) as usize)
            .min()
    }

    /// `Re(γ - α - β)`.
    pub fn excess(&self) -> f64 {
        (&self.gamma - &self.alpha - &self.beta).re()
    }
}

pub fn hyp2f1(p: &Hyp2F1Params, z: &Scalar) -> Result<Scalar> {
    hyp2f1_with(p, z, &Tolerance::default())
}

pub fn hyp2f1_with(p: &Hyp2F1Params, z: &Scalar, tol: &Tolerance) -> Result<Scalar> {
    let degree = p.terminating_degree(tol);
    if let Some(m) = degree {
        check_pole(&p.gamma, Some(m), tol)?;
        let all_exact = p.alpha.is_exact() && p.beta.is_exact() && p.gamma.is_exact() && z.is_exact();
        if all_exact {
            return Ok(terminating_exact(p, z, m));
        }
        let (a, b, c) = p.complex();
        return Ok(Scalar::Float(terminating(a, b, c, z.to_complex(), m)));
    }
    check_pole(&p.gamma, None, tol)?;
    let (a, b, c) = p.complex();
    hyp2f1_c(a, b, c, z.to_complex()).map(Scalar::Float)
}

fn check_pole(gamma: &Scalar, degree: Option<usize>, tol: &Tolerance) -> Result<()> {
    if let Some(g) = gamma.as_integer(tol).filter(|&g| g <= 0) {
        // (γ)_n first vanishes at n = 1 - γ.
        let first_zero = (1 - g) as usize;
        if degree.is_none_or(|m| m >= first_zero) {
            return Err(Error::GammaPole(gamma.to_string()));
        }
    }
    Ok(())
}

fn terminating_exact(p: &Hyp2F1Params, z: &Scalar, m: usize) -> Scalar {
    let mut term = Scalar::one();
    let mut sum = Scalar::one();
    for n in 0..m {
        let k = Scalar::int(n as i64);
        term = term * (&p.alpha + &k) * (&p.beta + &k) * z / ((&p.gamma + &k) * Scalar::int(n as i64 + 1));
        sum = sum + &term;
    }
    sum
}

fn terminating(a: Complex64, b: Complex64, c: Complex64, z: Complex64, m: usize) -> Complex64 {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for n in 0..m {
        let n = n as f64;
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
        sum += term;
    }
    sum
}

/// Floating-point evaluation for non-terminating parameters.
pub fn hyp2f1_c(a: Complex64, b: Complex64, c: Complex64, z: Complex64) -> Result<Complex64> {
    let r = z.norm();
    if r > 1.0 + 1e-12 {
        return Err(Error::OutsideDisc(r));
    }
    if r == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let excess = (c - a - b).re;
    if (z - 1.0).norm() < 1e-14 {
        if excess > 0.0 {
            return Ok(gauss_value(a, b, c));
        }
        return Err(Error::DivergentAtBoundary { excess });
    }
    if r >= 1.0 - 1e-12 && excess <= 0.0 {
        return Err(Error::DivergentAtBoundary { excess });
    }
    let d = c - a - b;
    let near_integer = d.im.abs() < CONNECTION_GAP && (d.re - d.re.round()).abs() < CONNECTION_GAP;
    if (1.0 - z).norm() < 0.5 && !near_integer {
        return connection(a, b, c, z);
    }
    series(a, b, c, z, excess)
}

/// `Γ(γ)Γ(γ-α-β) / (Γ(γ-α)Γ(γ-β))`.
pub fn gauss_value(a: Complex64, b: Complex64, c: Complex64) -> Complex64 {
    gamma(c) * gamma(c - a - b) * rgamma(c - a) * rgamma(c - b)
}

fn connection(a: Complex64, b: Complex64, c: Complex64, z: Complex64) -> Result<Complex64> {
    let w = 1.0 - z;
    let d = c - a - b;
    let f1 = series(a, b, 1.0 - d, w, 1.0)?;
    let f2 = series(c - a, c - b, 1.0 + d, w, 1.0)?;
    let k1 = gamma(c) * gamma(d) * rgamma(c - a) * rgamma(c - b);
    let k2 = gamma(c) * gamma(-d) * rgamma(a) * rgamma(b);
    Ok(k1 * f1 + k2 * w.powc(d) * f2)
}

fn series(a: Complex64, b: Complex64, c: Complex64, z: Complex64, excess: f64) -> Result<Complex64> {
    let zr = z.norm();
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut quiet = 0;
    for n in 0..SERIES_CAP {
        let nf = n as f64;
        let ratio = (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        term *= ratio;
        sum += term;
        if term.norm() == 0.0 {
            return Ok(sum);
        }
        let q = ratio.norm().max(zr);
        let tail = if q < 1.0 - 1e-12 {
            term.norm() * q / (1.0 - q)
        } else if excess > 0.0 {
            term.norm() * (nf + 1.0) / excess
        } else {
            f64::INFINITY
        };
        if tail <= SERIES_EPS * sum.norm() || tail < f64::MIN_POSITIVE {
            quiet += 1;
            if quiet >= PATIENCE {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::SeriesCap { terms: SERIES_CAP })
}

/// First `n` Taylor coefficients `(α)_j (β)_j / ((γ)_j j!)`.
pub fn series_coefficients(a: Complex64, b: Complex64, c: Complex64, n: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(n);
    let mut term = Complex64::new(1.0, 0.0);
    for j in 0..n {
        out.push(term);
        let jf = j as f64;
        term *= (a + jf) * (b + jf) / ((c + jf) * (jf + 1.0));
    }
    out
}

/// `d/dz F(α, β; γ; z) = (αβ/γ) F(α+1, β+1; γ+1; z)`.
pub fn hyp2f1_derivative(p: &Hyp2F1Params, z: &Scalar) -> Result<Scalar> {
    let tol = Tolerance::default();
    check_pole(&p.gamma, p.terminating_degree(&tol), &tol)?;
    let one = Scalar::one();
    let shifted = Hyp2F1Params::new(&p.alpha + &one, &p.beta + &one, &p.gamma + &one);
    let prefactor = &p.alpha * &p.beta / &p.gamma;
    if prefactor.is_zero() {
        return Ok(prefactor);
    }
    Ok(prefactor * hyp2f1_with(&shifted, z, &tol)?)
}

/// `F(γ+n, β; γ; z) = (1-z)^{-β-n} P_n(z)` with `P_n = F(-n, γ-β; γ; ·)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EulerFactorization {
    pub exponent: Scalar,
    pub degree: usize,
    /// Coefficients of `P_n`, lowest degree first.
    pub coefficients: Vec<Scalar>,
    /// `P_n(1) = (β)_n / (γ)_n`.
    pub value_at_1: Scalar,
}

impl EulerFactorization {
    pub fn poly(&self, z: &Scalar) -> Scalar {
        self.coefficients
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| acc * z + c)
    }

    /// `(1-z)^exponent P_n(z)`.
    pub fn eval(&self, z: &Scalar) -> Scalar {
        (Scalar::one() - z).powc(&self.exponent) * self.poly(z)
    }
}

pub fn euler_factorization(p: &Hyp2F1Params, tol: &Tolerance) -> Result<EulerFactorization> {
    let shift = |x: &Scalar| (x - &p.gamma).as_integer(tol).filter(|&n| n >= 0);
    let (beta, n) = match (shift(&p.alpha), shift(&p.beta)) {
        (Some(n), _) => (&p.beta, n as usize),
        (None, Some(n)) => (&p.alpha, n as usize),
        (None, None) => return Err(Error::NotInConfiguration),
    };
    check_pole(&p.gamma, None, tol)?;
    let c = &p.gamma;
    let b = c - beta;
    let mut coefficients = Vec::with_capacity(n + 1);
    let mut term = Scalar::one();
    for j in 0..=n {
        coefficients.push(term.clone());
        let k = Scalar::int(j as i64);
        term = term * (Scalar::int(j as i64 - n as i64)) * (&b + &k) / ((c + &k) * Scalar::int(j as i64 + 1));
    }
    Ok(EulerFactorization {
        exponent: -beta - Scalar::int(n as i64),
        degree: n,
        coefficients,
        value_at_1: pochhammer(beta, n) / pochhammer(c, n),
    })
}

/// Circle average of `|1 - t e^{iθ}|^{2ν}`, summed as `F(-ν, -ν; 1; t²)`.
pub fn theta_integral(nu: &Scalar, t: f64) -> Result<Scalar> {
    if !(0.0..1.0).contains(&t) {
        return Err(Error::OutsideDisc(t));
    }
    let p = Hyp2F1Params::new(-nu, -nu, Scalar::one());
    hyp2f1(&p, &Scalar::real(t * t))
}

/// Trapezoid rule on `m` equispaced nodes; spectrally accurate for the
/// periodic integrand when `t < 1`.
pub fn theta_quadrature(nu: Complex64, t: f64, m: usize) -> Complex64 {
    let sum: Complex64 = (0..m)
        .map(|j| {
            let theta = 2.0 * PI * j as f64 / m as f64;
            let w2 = 1.0 - 2.0 * t * theta.cos() + t * t;
            (nu * w2.ln()).exp()
        })
        .sum();
    sum / m as f64
}

/// Roots of `α² + (3+s)α + s + 2 - μ = 0`, larger real part first.
pub fn indicial_exponents(s: &Scalar, mu: &Scalar) -> (Scalar, Scalar) {
    let half = Scalar::ratio(1, 2);
    let center = -(s + Scalar::int(3)) * &half;
    let h = (Scalar::one() + s) * &half;
    let root = (mu + &h * &h).sqrt();
    (&center + &root, center - root)
}
