//! Independent check of the complementary part of the spectrum: scan `ξ`
//! across the window where one solution of the diagonal recurrence is
//! square-summable, and look for the values where that solution also meets
//! the initial condition.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::Result;
use crate::fit::{geometric_envelope_exponent, range_exponent};
use crate::scalar::Scalar;
use crate::tensor::TensorSpec;

use super::{CSCandidate, Generator, SpectrumReport, SubmoduleDescriptor};

/// Coarse grid size across the window.
pub const GRID_POINTS: usize = 400;
/// Extra samples around each predicted eigenvalue.
pub const REFINE_POINTS: usize = 40;
pub const REFINE_RADIUS: f64 = 5e-4;

/// Start of the backward recursion for the recessive solution.
const RECESSIVE_START: usize = 4000;
/// Terms of the asymptotic series used to seed it.
const ASYMPTOTIC_TERMS: usize = 8;
/// Relative closeness of a grid segment to the origin that counts as a crossing.
const CROSSING_RATIO: f64 = 0.05;
const PRINCIPAL_LENGTH: usize = 200_000;

/// `(ξ_lo, ξ_hi)` with `μ + ((1+s)/2)² = ξ + ((1+a+a₁-a₂)/2)²` running over
/// `(0, ¼)`. Requires `a` and `a₁ - a₂` real.
pub fn complementary_xi_window(spec: &TensorSpec) -> Option<(f64, f64)> {
    let c = (Scalar::one() + spec.a() + spec.a1() - spec.a2()).to_complex() * 0.5;
    if c.im.abs() > spec.tol().abs_eps {
        return None;
    }
    let lo = -c.re * c.re;
    Some((lo, lo + 0.25))
}

struct Coeffs {
    a1: Complex64,
    a2: Complex64,
    a: Complex64,
    s: Complex64,
    mu: Complex64,
    p: Complex64,
}

impl Coeffs {
    fn new(cand: &CSCandidate) -> Self {
        let spec = &cand.spec;
        Coeffs {
            a1: spec.a1().to_complex(),
            a2: spec.a2().to_complex(),
            a: spec.a().to_complex(),
            s: spec.s.to_complex(),
            mu: cand.mu.to_complex(),
            p: cand.p.to_complex(),
        }
    }

    /// `(P, Q, R)` in `P u_{n+2} + Q u_{n+1} + R u_n = 0`.
    fn at(&self, n: usize) -> (Complex64, Complex64, Complex64) {
        let n = n as f64;
        let p = (n + 2.0) * (self.a1 + n + 2.0);
        let r = (n - self.a) * (n - self.a2);
        (p, self.s + 2.0 - self.mu - p - r, r)
    }

    fn first(&self) -> Complex64 {
        (self.p + self.mu) / (self.a1 + 1.0)
    }
}

/// Floating-point solution with `u_0 = 1`, `u_1` from the initial condition.
pub fn forward_solution(cand: &CSCandidate, len: usize) -> Vec<Complex64> {
    let c = Coeffs::new(cand);
    let mut u = Vec::with_capacity(len + 1);
    u.push(Complex64::new(1.0, 0.0));
    u.push(c.first());
    for n in 0..len.saturating_sub(1) {
        let (p, q, r) = c.at(n);
        u.push(-(q * u[n + 1] + r * u[n]) / p);
    }
    u.truncate(len + 1);
    u
}

fn binomial(beta: Complex64, i: usize) -> Complex64 {
    (0..i).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (beta - j as f64) / (j as f64 + 1.0))
}

/// Coefficients `A_k` of `u_n ~ n^α Σ A_k n^{-k}`, `A_0 = 1`.
fn asymptotic_coefficients(c: &Coeffs, alpha: Complex64, terms: usize) -> Vec<Complex64> {
    // Polynomial coefficients of R, Q, P (index = degree), applied to u_n, u_{n+1}, u_{n+2}.
    let poly = [
        [c.a * c.a2, -(c.a + c.a2), Complex64::new(1.0, 0.0)],
        [
            c.s + 2.0 - c.mu - (c.a1 * 2.0 + 4.0) - c.a * c.a2,
            c.a + c.a2 - (c.a1 + 4.0),
            Complex64::new(-2.0, 0.0),
        ],
        [c.a1 * 2.0 + 4.0, c.a1 + 4.0, Complex64::new(1.0, 0.0)],
    ];
    // Coefficient of n^{α+2-m} produced by the term A_{k'} n^{α-k'}.
    let t = |m: usize, kp: usize| -> Complex64 {
        let beta = alpha - kp as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, row) in poly.iter().enumerate() {
            for (d, coeff) in row.iter().enumerate() {
                let Some(i) = (m + d).checked_sub(kp + 2) else { continue };
                let shift = if i == 0 { 1.0 } else { (j as f64).powi(i as i32) };
                acc += coeff * binomial(beta, i) * shift;
            }
        }
        acc
    };
    let mut out = vec![Complex64::new(1.0, 0.0)];
    for k in 1..terms {
        let rhs: Complex64 = (0..k).map(|kp| out[kp] * t(k + 2, kp)).sum();
        out.push(-rhs / t(k + 2, k));
    }
    out
}

/// The solution decaying like `n^{α₋}`, seeded from its asymptotic series
/// at `n = start` and recursed backward; returns `u_0 ..= u_{start+1}`
/// normalized to `max(|u_0|, |u_1|) = 1`.
pub fn recessive_solution(cand: &CSCandidate, start: usize) -> Vec<Complex64> {
    let c = Coeffs::new(cand);
    let (_, alpha) = cand.indicial_exponents();
    let coeffs = asymptotic_coefficients(&c, alpha, ASYMPTOTIC_TERMS);
    let series = |n: usize| -> Complex64 {
        let nf = n as f64;
        let sum: Complex64 = coeffs.iter().enumerate().map(|(k, a)| a * nf.powi(-(k as i32))).sum();
        (alpha * nf.ln()).exp() * sum
    };
    backward(&c, start, series(start), series(start + 1))
}

/// Miller's backward recursion from `u_{N+1} = 0`, `u_N = 1`, normalized
/// like [`recessive_solution`].
pub fn miller_solution(cand: &CSCandidate, start: usize) -> Vec<Complex64> {
    let c = Coeffs::new(cand);
    backward(&c, start, Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
}

fn backward(c: &Coeffs, start: usize, at_start: Complex64, after: Complex64) -> Vec<Complex64> {
    let mut u = vec![Complex64::new(0.0, 0.0); start + 2];
    u[start] = at_start;
    u[start + 1] = after;
    for n in (0..start).rev() {
        let (p, q, r) = c.at(n);
        u[n] = -(p * u[n + 2] + q * u[n + 1]) / r;
        if u[n].norm() > 1e200 {
            u.iter_mut().for_each(|x| *x *= 1e-200);
        }
    }
    let scale = u[0].norm().max(u[1].norm());
    u.iter_mut().for_each(|x| *x /= scale);
    u
}

/// Defect of `(a₁+1)u₁ = (p+μ)u₀`, scaled by `|u₀| + |u₁|`.
pub fn initial_mismatch(cand: &CSCandidate, u: &[Complex64]) -> Complex64 {
    let c = Coeffs::new(cand);
    ((c.a1 + 1.0) * u[1] - (c.p + c.mu) * u[0]) / (u[0].norm() + u[1].norm())
}

/// Scan points: `GRID_POINTS` cell midpoints of the window, plus
/// `REFINE_POINTS` within `REFINE_RADIUS` of each predicted value.
pub fn xi_grid(window: (f64, f64), predicted: &[f64]) -> Vec<f64> {
    let (lo, hi) = window;
    let mut grid: Vec<f64> = (0..GRID_POINTS)
        .map(|i| lo + (hi - lo) * (i as f64 + 0.5) / GRID_POINTS as f64)
        .collect();
    for &x in predicted {
        for i in 0..REFINE_POINTS {
            let t = -1.0 + 2.0 * (i as f64 + 0.5) / REFINE_POINTS as f64;
            let y = x + REFINE_RADIUS * t;
            if y > lo && y < hi {
                grid.push(y);
            }
        }
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid
}

#[derive(Clone, Debug)]
pub struct ScanResult {
    pub grid: Vec<f64>,
    pub mismatch: Vec<Complex64>,
    /// Values of `ξ` where the recessive solution meets the initial condition.
    pub zeros: Vec<f64>,
}

pub fn scan_xi(spec: &TensorSpec, grid: &[f64]) -> ScanResult {
    let mismatch: Vec<Complex64> = grid
        .par_iter()
        .map(|&xi| match CSCandidate::new(spec, xi) {
            Ok(cand) => initial_mismatch(&cand, &recessive_solution(&cand, RECESSIVE_START)),
            Err(_) => Complex64::new(f64::NAN, f64::NAN),
        })
        .collect();

    // Each crossing segment: (index, position, relative distance to the origin).
    let mut hits: Vec<(usize, f64, f64)> = Vec::new();
    for i in 0..grid.len().saturating_sub(1) {
        let (m0, m1) = (mismatch[i], mismatch[i + 1]);
        if !(m0.norm().is_finite() && m1.norm().is_finite()) {
            continue;
        }
        let d = m1 - m0;
        let t = if d.norm_sqr() > 0.0 {
            (-(m0.re * d.re + m0.im * d.im) / d.norm_sqr()).clamp(0.0, 1.0)
        } else {
            0.0
        };
        let dist = (m0 + d * t).norm();
        let scale = m0.norm().max(m1.norm());
        if dist <= CROSSING_RATIO * scale {
            hits.push((i, grid[i] + t * (grid[i + 1] - grid[i]), dist / scale));
        }
    }
    // Runs of adjacent segments see the same crossing.
    let mut zeros = Vec::new();
    let mut run: Option<(usize, f64, f64)> = None;
    for h in hits {
        run = match run {
            Some(r) if h.0 == r.0 + 1 => Some(if h.2 < r.2 { h } else { (h.0, r.1, r.2) }),
            Some(r) => {
                zeros.push(r.1);
                Some(h)
            }
            None => Some(h),
        };
    }
    zeros.extend(run.map(|r| r.1));
    ScanResult {
        grid: grid.to_vec(),
        mismatch,
        zeros,
    }
}

/// `ξ` of a module `N(b₁, b₂)` on the diagonal `k = l`, if the module
/// reaches that diagonal.
fn xi_on_zero_diagonal(spec: &TensorSpec, d: &SubmoduleDescriptor) -> Option<Scalar> {
    let reaches = match d.generator {
        Generator::HighestWeightKernel => d.n0 >= 0,
        Generator::LowestWeightKernel => d.n0 <= 0,
        Generator::Hypergeometric | Generator::Binomial => true,
    };
    if !reaches {
        return None;
    }
    let w = spec.base_weight();
    let half = Scalar::ratio(1, 2);
    let c = (&d.b1 + &d.b2) * &half;
    Some(&c * (Scalar::one() + &c) - &w * &w * Scalar::ratio(1, 4) - &w * &half)
}

/// Eigenvalues of `FE` on `k = l` inside the window contributed by the
/// reported submodules, in increasing order.
pub fn predicted_window_xis(report: &SpectrumReport) -> Vec<f64> {
    let spec = &report.spec;
    let Some((lo, hi)) = complementary_xi_window(spec) else {
        return Vec::new();
    };
    let mut members: Vec<SubmoduleDescriptor> = report.entries.clone();
    if let Some(lattice) = &report.hw_lattice {
        if lattice.top_n0 >= 0 {
            members.extend(lattice.members(spec, lattice.top_n0 as usize + 1));
        }
    }
    let mut out: Vec<f64> = members
        .iter()
        .filter_map(|d| xi_on_zero_diagonal(spec, d))
        .filter(|x| x.im().abs() <= spec.tol().abs_eps)
        .map(|x| x.re())
        .filter(|&x| x > lo && x < hi)
        .collect();
    out.sort_by(f64::total_cmp);
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleCheck {
    pub predicted: Vec<f64>,
    pub detected: Vec<f64>,
    pub agrees: bool,
    pub resolution: f64,
}

/// Compare the reported complementary eigenvalues against the zeros of the
/// recessive-solution mismatch.
pub fn xi_oracle(report: &SpectrumReport, resolution: f64) -> OracleCheck {
    let predicted = predicted_window_xis(report);
    let detected = match complementary_xi_window(&report.spec) {
        Some(window) => scan_xi(&report.spec, &xi_grid(window, &predicted)).zeros,
        None => Vec::new(),
    };
    let agrees = predicted.len() == detected.len()
        && predicted
            .iter()
            .zip(&detected)
            .all(|(p, d)| (p - d).abs() <= resolution);
    OracleCheck {
        predicted,
        detected,
        agrees,
        resolution,
    }
}

/// Fitted exponent of `|u_n|² n^{2 + Re s}` for the forward solution at a
/// principal-range `ξ`. Both indicial roots have real part
/// `c = -(Re s + 3)/2`, and the sequence oscillates with period `π/√|d|`
/// in `ln n`.
///
/// For `d < -1` the fit runs over maxima of geometric blocks of that ratio.
/// Closer to `d = 0` a block is longer than any sampled range (at `d = 0`
/// the solution is `n^c (A + B ln n)` and `B` may be tiny), so instead
/// `u_n, u_{n+1}` are resolved in the basis `n^c cos(ω ln n)`,
/// `n^c sin(ω ln n)/ω`, `ω = √|d|`, and the fit is of
/// `(|A_n|² + |B_n|²) n^{2c + 2 + Re s}` over `[2000, 200000]`.
pub fn principal_tail_exponent(spec: &TensorSpec, xi: impl Into<Scalar>) -> Result<f64> {
    let cand = CSCandidate::new(spec, xi)?;
    let u = forward_solution(&cand, PRINCIPAL_LENGTH + 1);
    let weight = 2.0 + spec.s.re();
    let d = cand.discriminant;
    if d < -1.0 {
        let values: Vec<f64> = (0..=PRINCIPAL_LENGTH)
            .map(|n| u[n].norm_sqr() * (n as f64).powf(weight))
            .collect();
        return Ok(geometric_envelope_exponent(&values, 100, (std::f64::consts::PI / (-d).sqrt()).exp()));
    }
    let c = -(spec.s.re() + 3.0) / 2.0;
    let omega = (-d).max(0.0).sqrt();
    let basis = |n: usize| {
        let ln = (n as f64).ln();
        let scale = (c * ln).exp();
        let second = if omega > 0.0 { (omega * ln).sin() / omega } else { ln };
        (scale * (omega * ln).cos(), scale * second)
    };
    let amplitude = |n: usize| {
        let ((p0, q0), (p1, q1)) = (basis(n), basis(n + 1));
        let det = p0 * q1 - q0 * p1;
        let a = (u[n] * q1 - u[n + 1] * q0) / det;
        let b = (u[n + 1] * p0 - u[n] * p1) / det;
        (a.norm_sqr() + b.norm_sqr()) * (n as f64).powf(2.0 * c + weight)
    };
    Ok(range_exponent(amplitude, 2000, PRINCIPAL_LENGTH))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recessive_is_stable_and_matches_miller() {
        let spec = TensorSpec::new(-0.5, -0.25, -0.2).unwrap();
        let (lo, hi) = complementary_xi_window(&spec).unwrap();
        let cand = CSCandidate::new(&spec, lo + 0.3 * (hi - lo)).unwrap();
        let u = recessive_solution(&cand, 2000);
        let w = recessive_solution(&cand, 8000);
        for n in 0..50 {
            assert!((u[n] - w[n]).norm() < 1e-9 * u[0].norm(), "n = {n}");
        }
        // Miller converges only like (n/N)^{2√d} when the exponents are close.
        let v = miller_solution(&cand, 80000);
        assert!((u[1] / u[0] - v[1] / v[0]).norm() < 2e-3);
    }

    #[test]
    fn window_edges() {
        let spec = TensorSpec::new(-0.5, -0.25, -0.2).unwrap();
        let (lo, hi) = complementary_xi_window(&spec).unwrap();
        assert!((CSCandidate::new(&spec, lo).unwrap().discriminant).abs() < 1e-12);
        assert!((hi - lo - 0.25).abs() < 1e-15);
    }
}
