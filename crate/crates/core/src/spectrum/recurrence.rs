//! Three-term recurrences for `FE`-eigenvectors `Σ u_n z(n, n)` and the
//! generating function `S(t) = Σ u_n tⁿ`.

use num_complex::Complex64;

use crate::error::Result;
use crate::hypergeometric::{hyp2f1_c, series_coefficients};
use crate::scalar::Scalar;
use crate::tensor::{fe_tridiagonal, TensorCase, TensorSpec};

use super::CSCandidate;

/// Normalized solution `u_0 = 1` of
/// `(a₁+1)u₁ = (p+μ)u₀` and
/// `(n+2)(n+2+a₁)u_{n+2} + (s+2-μ-(n+2)(n+2+a₁)-(n-a)(n-a₂))u_{n+1} + (n-a)(n-a₂)u_n = 0`;
/// returns `u_0 ..= u_len`.
pub fn diffa1_solution(cand: &CSCandidate, len: usize) -> Vec<Scalar> {
    let spec = &cand.spec;
    let (a1, a2, a, s) = (spec.a1(), spec.a2(), spec.a(), &spec.s);
    let one = Scalar::one();
    let two = Scalar::int(2);
    let mut u = vec![one.clone(), (&cand.p + &cand.mu) / (a1 + &one)];
    for n in 0..len.saturating_sub(1) as i64 {
        let n_s = Scalar::int(n);
        let lead = (&n_s + &two) * (&n_s + &two + a1);
        let tail = (&n_s - a) * (&n_s - a2);
        let mid = s + &two - &cand.mu - &lead - &tail;
        let i = n as usize;
        let next = -(mid * &u[i + 1] + tail * &u[i]) / lead;
        u.push(next);
    }
    u.truncate(len + 1);
    u
}

/// Direct solution `u_0 = 1` of the recurrence obtained by matching the
/// coefficient of `z(n, n)` in `FE·v = ξ v`, in the form displayed for each
/// integrality case:
///
/// * A: `(a₁+1)u₁ + a₂(a₁+1)u₀ = ξu₀`, leading `(n+2)(n+2+a₁)`, trailing `(a-n)(a₂-n)`
/// * B: `a(a₁+1)u₁ + …`, leading `(n+2)(n+2+a₁)(a-n-1)`, trailing `a₂-n`
/// * C: `a₂u₁ + a₂u₀ = ξu₀`, leading `(n+2)²(a₂-n-1)`, trailing `a-n`
/// * D: `a a₂u₁ + a₂u₀ = ξu₀`, leading `(n+2)²(a-n-1)(a₂-n-1)`, trailing `1`
///
/// Cases C and D assume `a₁ = 0`.
pub fn printed_solution(case: TensorCase, a1: &Scalar, a2: &Scalar, a: &Scalar, xi: &Scalar, len: usize) -> Vec<Scalar> {
    let one = Scalar::one();
    let two = Scalar::int(2);
    let first = match case {
        TensorCase::A => a1 + &one,
        TensorCase::B => a * (a1 + &one),
        TensorCase::C => a2.clone(),
        TensorCase::D => a * a2,
    };
    let diag0 = match case {
        TensorCase::A | TensorCase::B => a2 * (a1 + &one),
        TensorCase::C | TensorCase::D => a2.clone(),
    };
    let mut u = vec![one.clone(), (xi - diag0) / first];
    for n in 0..len.saturating_sub(1) as i64 {
        let n_s = Scalar::int(n);
        let n2 = &n_s + &two;
        let (lead, mid, tail) = match case {
            TensorCase::A | TensorCase::B => {
                let mid = (a2 - &n_s - &one) * (a1 + &n2) + (&n_s + &one) * (a - &n_s);
                let lead = &n2 * (&n2 + a1);
                match case {
                    TensorCase::A => (lead, mid, (a - &n_s) * (a2 - &n_s)),
                    _ => (lead * (a - &n_s - &one), mid, a2 - &n_s),
                }
            }
            TensorCase::C | TensorCase::D => {
                let mid = (a2 - &n_s - &one) * &n2 + (&n_s + &one) * (a - &n_s);
                let lead = &n2 * &n2 * (a2 - &n_s - &one);
                match case {
                    TensorCase::C => (lead, mid, a - &n_s),
                    _ => (lead * (a - &n_s - &one), mid, one.clone()),
                }
            }
        };
        let i = n as usize;
        let next = -((mid - xi) * &u[i + 1] + tail * &u[i]) / lead;
        u.push(next);
    }
    u.truncate(len + 1);
    u
}

/// `v_n = w_n u_n` with `w_n = ∏_{j≤n} (a+1-j)` (B), `∏ (a₂+1-j)` (C),
/// `∏ (a+1-j)(a₂+1-j)` (D), and `w_n = 1` (A).
pub fn variable_change(case: TensorCase, a2: &Scalar, a: &Scalar, u: &[Scalar]) -> Vec<Scalar> {
    let one = Scalar::one();
    let mut w = one.clone();
    u.iter()
        .enumerate()
        .map(|(n, x)| {
            if n > 0 {
                let j = Scalar::int(n as i64);
                let fa = a + &one - &j;
                let fa2 = a2 + &one - &j;
                w = match case {
                    TensorCase::A => w.clone(),
                    TensorCase::B => &w * fa,
                    TensorCase::C => &w * fa2,
                    TensorCase::D => &w * fa * fa2,
                };
            }
            &w * x
        })
        .collect()
}

/// Solution `u_0 = 1` of `FE·Σ u_n z(n,n) = ξ Σ u_n z(n,n)` read off the
/// tensor action itself.
pub fn fe_diagonal_solution(spec: &TensorSpec, xi: &Scalar, len: usize) -> Result<Vec<Scalar>> {
    let fe = fe_tridiagonal(spec, 0);
    let mut u = vec![Scalar::one()];
    // Row m: u_{m+1} a(m+1) + (b(m) - ξ) u_m + c(m-1) u_{m-1} = 0.
    let mut prev_c = Scalar::zero();
    for m in 0..len as i64 {
        let (_, b, c) = fe.coefficients(m)?;
        let (a_next, _, _) = fe.coefficients(m + 1)?;
        let i = m as usize;
        let lower = if i > 0 { &prev_c * &u[i - 1] } else { Scalar::zero() };
        let next = -((&b - xi) * &u[i] + lower) / a_next;
        u.push(next);
        prev_c = c;
    }
    Ok(u)
}

/// Taylor coefficients of `S(t) = (1-t)^r F(r-a, r-a₂; 1+a₁; t)`.
pub fn s_series_coefficients(cand: &CSCandidate, len: usize) -> Vec<Complex64> {
    let spec = &cand.spec;
    let r = cand.r.to_complex();
    let (a1, a2, a) = (spec.a1().to_complex(), spec.a2().to_complex(), spec.a().to_complex());
    let f = series_coefficients(r - a, r - a2, a1 + 1.0, len + 1);
    // (1-t)^r = Σ (-r)_j t^j / j!
    let mut binom = Vec::with_capacity(len + 1);
    let mut b = Complex64::new(1.0, 0.0);
    for j in 0..=len {
        binom.push(b);
        b *= (j as f64 - r) / (j as f64 + 1.0);
    }
    (0..=len)
        .map(|n| (0..=n).map(|j| binom[j] * f[n - j]).sum())
        .collect()
}

/// `S(t)` evaluated in closed form.
pub fn s_function(cand: &CSCandidate, t: f64) -> Result<Complex64> {
    let spec = &cand.spec;
    let r = cand.r.to_complex();
    let (a1, a2, a) = (spec.a1().to_complex(), spec.a2().to_complex(), spec.a().to_complex());
    let z = Complex64::new(t, 0.0);
    let f = hyp2f1_c(r - a, r - a2, a1 + 1.0, z)?;
    Ok((1.0 - z).powc(r) * f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diffa1_matches_tensor_action_exactly() {
        let spec = TensorSpec::new(Scalar::ratio(-1, 2), Scalar::ratio(-1, 4), Scalar::ratio(-1, 5)).unwrap();
        let xi = Scalar::ratio(-3, 7);
        let cand = CSCandidate::new(&spec, xi.clone()).unwrap();
        let u = diffa1_solution(&cand, 15);
        let v = fe_diagonal_solution(&spec, &xi, 15).unwrap();
        assert_eq!(u, v);
    }

    #[test]
    fn s_series_first_coefficients() {
        let spec = TensorSpec::new(-0.5, -0.25, -0.2).unwrap();
        let cand = CSCandidate::new(&spec, -0.1).unwrap();
        let c = s_series_coefficients(&cand, 3);
        let u = diffa1_solution(&cand, 3);
        for n in 0..=3 {
            assert!((c[n] - u[n].to_complex()).norm() < 1e-12);
        }
    }
}
