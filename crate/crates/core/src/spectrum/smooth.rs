//! Weight vectors `w(k)` of the complementary submodule `N(a + a₁, a₂)` and
//! the growth test showing none of them is a smooth vector of `V`.

use crate::error::{Error, Result};
use crate::fit::range_exponent;
use crate::tensor::TensorSpec;
use crate::unitarity::Judge;

use super::diagonal_ln_norms;

/// Fit window for the tail exponents.
const TAIL_LO: usize = 2048;
const TAIL_HI: usize = 8192;
/// Highest power of the number operator probed.
const MAX_ORDER: u32 = 3;

/// Real parameters with `-1 < s < 0`, `-1 < a, a₂ < 0` and `-1 < a₁ ≤ 0`.
pub fn smooth_window(spec: &TensorSpec) -> Result<()> {
    let mut j = Judge::new(spec.tol());
    let (a1, a2, a, s) = (spec.a1(), spec.a2(), spec.a(), &spec.s);
    let one = crate::Scalar::one();
    let unit = |x: &crate::Scalar, j: &mut Judge| j.real(x) && j.negative(x) && j.positive(&(x + &one));
    let ok = unit(s, &mut j)
        && unit(a, &mut j)
        && unit(a2, &mut j)
        && j.real(a1)
        && !j.positive(a1)
        && j.positive(&(a1 + &one));
    if ok {
        Ok(())
    } else {
        Err(Error::OutOfWindow(format!("a1={a1}, a2={a2}, a={a}")))
    }
}

/// One component `coeff · z(k, l)` of `w(k)`, with `ln_norm = ln ‖z(k,l)‖²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WkTerm {
    pub k: i64,
    pub l: i64,
    pub coeff: f64,
    pub ln_norm: f64,
}

/// The first `len` components of `w(k)`, normalized so that `w(0)` is the
/// hypergeometric generator; then `E w(k) = (a₂ - k) w(k + 1)` and
/// `F w(k) = (a + a₁ + k) w(k - 1)`.
pub fn wk_terms(spec: &TensorSpec, k: i64, len: usize) -> Result<Vec<WkTerm>> {
    smooth_window(spec)?;
    let (a1, a2, a) = (spec.a1().re(), spec.a2().re(), spec.a().re());
    let (l0, coeffs) = if k >= 0 || !spec.a1_is_zero() {
        closed_form(a1, a2, a, k, len)
    } else {
        lowered(spec, k, len)
    };
    let lns = diagonal_ln_norms(spec, l0 + k, l0, coeffs.len())?;
    Ok(coeffs
        .into_iter()
        .zip(lns)
        .enumerate()
        .map(|(i, (coeff, ln_norm))| {
            let l = l0 + i as i64;
            WkTerm { k: l + k, l, coeff, ln_norm }
        })
        .collect())
}

/// `w(k) = Σ_n c_n z(k+n, n)` from the coefficient ratio
/// `c_{n+1}/c_n = (n-a)(n+k-a₂)/((n+k+1+a₁)(n+1))`.
fn closed_form(a1: f64, a2: f64, a: f64, k: i64, len: usize) -> (i64, Vec<f64>) {
    let kf = k as f64;
    let mut c = if k >= 0 {
        (1..=k).map(|j| (a + a1 + j as f64) / (a1 + j as f64)).product()
    } else {
        (1..=-k).map(|j| (a1 + 1.0 - j as f64) / (a + a1 + 1.0 - j as f64)).product::<f64>()
    };
    let mut out = Vec::with_capacity(len);
    for n in 0..len {
        out.push(c);
        let nf = n as f64;
        c *= (nf - a) * (nf + kf - a2) / ((nf + kf + 1.0 + a1) * (nf + 1.0));
    }
    (0, out)
}

/// `w(k-1) = F w(k) / (a + a₁ + k)`, iterated down from `w(0)`; needed when
/// `a₁ = 0`, where the ratio formula has a vanishing denominator.
fn lowered(spec: &TensorSpec, k: i64, len: usize) -> (i64, Vec<f64>) {
    let (a1, a2, a) = (spec.a1().re(), spec.a2().re(), spec.a().re());
    let extra = (-k) as usize;
    let (mut start, mut cur) = closed_form(a1, a2, a, 0, len + extra);
    for n0 in (k + 1..=0).rev() {
        // Diagonal n0 -> n0 - 1: new[l] = f_left(l+n0) old[l] + f_right(l-1) old[l-1].
        let top = start + cur.len() as i64 - 1;
        let new_start = start.max(spec.l0(n0 - 1));
        let scale = a + a1 + n0 as f64;
        let next: Vec<f64> = (new_start..=top)
            .map(|l| {
                let mut v = spec.f_left(l + n0).re() * cur[(l - start) as usize];
                if l > start {
                    v += spec.f_right(l - 1).re() * cur[(l - 1 - start) as usize];
                }
                v / scale
            })
            .collect();
        start = new_start;
        cur = next;
    }
    cur.truncate(len);
    (start, cur)
}

/// Fitted exponent of `c_n² ‖z(k+n, n)‖² ((k+n)² + n²)^order` over `[2048, 8192]`.
pub fn smooth_tail_exponent(spec: &TensorSpec, k: i64, order: u32) -> Result<f64> {
    let terms = wk_terms(spec, k, TAIL_HI + 1)?;
    let f = |n: usize| {
        let t = &terms[n];
        let idx = (t.k * t.k + t.l * t.l) as f64;
        (2.0 * t.coeff.abs().ln() + t.ln_norm + order as f64 * idx.ln()).exp()
    };
    Ok(range_exponent(f, TAIL_LO, TAIL_HI))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmoothVerdict {
    /// Every probed moment converges.
    Converges,
    /// The moment of this order diverges.
    Diverges(u32),
}

/// First order `N ≤ 3` whose moment series fails the summability test
/// (tail exponent at least `-1`).
pub fn smooth_membership(spec: &TensorSpec, k: i64) -> Result<SmoothVerdict> {
    for order in 0..=MAX_ORDER {
        if smooth_tail_exponent(spec, k, order)? >= -1.0 {
            return Ok(SmoothVerdict::Diverges(order));
        }
    }
    Ok(SmoothVerdict::Converges)
}
