//! Discrete spectrum of `V = N(a₁, a₂) ⊗ N(a, 0)`.
//!
//! Highest and lowest weight submodules come from the kernels of `E` and `F`
//! on a weight diagonal `k - l = n₀`. Complementary-series submodules are
//! `FE`-eigenvectors on the diagonal `k = l`; whether the eigenvector is
//! square-summable is decided symbolically from the exponent
//! `r = (1+s)/2 - sqrt(μ + ((1+s)/2)²)` of its generating function
//! `S(t) = (1-t)^r F(r-a, r-a₂; 1+a₁; t)`.

mod oracle;
mod recurrence;
mod smooth;

pub use oracle::{
    complementary_xi_window, forward_solution, initial_mismatch, miller_solution, predicted_window_xis,
    principal_tail_exponent, recessive_solution, scan_xi, xi_grid, xi_oracle, OracleCheck, ScanResult,
    GRID_POINTS, REFINE_POINTS, REFINE_RADIUS,
};
pub use recurrence::{
    diffa1_solution, fe_diagonal_solution, printed_solution, s_function, s_series_coefficients, variable_change,
};
pub use smooth::{smooth_membership, smooth_tail_exponent, smooth_window, wk_terms, SmoothVerdict, WkTerm};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::sparse::Sparse;
use crate::tensor::{act_tensor, TensorSpec, TensorState};
use crate::unitarity::{classify_with, Judge, SeriesLabel};
use crate::weight_module::Sl2;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum SubmoduleKind {
    HighestWeight { n0: i64 },
    LowestWeight { n0: i64 },
    Complementary { b1: Scalar, b2: Scalar },
}

/// Closed-form coefficient sequence of a generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Generator {
    /// Kernel of `E` on `z(l + n₀, l)`, normalized by `u_{l₀} = 1`.
    HighestWeightKernel,
    /// Kernel of `F` on `z(l + n₀, l)`, normalized by `u_{l₀} = 1`.
    LowestWeightKernel,
    /// `(-a)_n (-a₂)_n / ((1+a₁)_n n!)` on `z(n, n)`.
    Hypergeometric,
    /// `(-a)_n / n!` on `z(n, n)`.
    Binomial,
}

impl Generator {
    pub fn tag(&self) -> &'static str {
        match self {
            Generator::HighestWeightKernel => "hw-kernel",
            Generator::LowestWeightKernel => "lw-kernel",
            Generator::Hypergeometric => "hypergeometric",
            Generator::Binomial => "binomial",
        }
    }
}

/// A simple Hilbert submodule `N(b₁, b₂) ⊂ V` together with its generator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubmoduleDescriptor {
    pub kind: SubmoduleKind,
    pub b1: Scalar,
    pub b2: Scalar,
    pub label: SeriesLabel,
    /// The generator lives on the diagonal `k - l = n₀`.
    pub n0: i64,
    pub generator: Generator,
    /// `FE` eigenvalue on the generator.
    pub xi: Scalar,
    /// Some window test was decided inside the `abs_eps` band.
    pub boundary: bool,
}

impl SubmoduleDescriptor {
    fn new(
        spec: &TensorSpec,
        kind: SubmoduleKind,
        (b1, b2): (Scalar, Scalar),
        n0: i64,
        generator: Generator,
        boundary: bool,
    ) -> Self {
        let tol = spec.tol();
        let label = classify_with(&b1, &b2, tol).label;
        // FE = Ω - H²/4 - H/2 on the weight of the generator.
        let w = spec.weight(n0, 0);
        let half = Scalar::ratio(1, 2);
        let c = (&b1 + &b2) * &half;
        let chi = &c * (Scalar::one() + &c);
        let xi = chi - &w * &w * Scalar::ratio(1, 4) - &w * &half;
        SubmoduleDescriptor {
            kind,
            b1,
            b2,
            label,
            n0,
            generator,
            xi,
            boundary,
        }
    }

    /// First `l` carrying a coefficient.
    pub fn l0(&self) -> i64 {
        match self.generator {
            Generator::LowestWeightKernel => -self.n0,
            _ => 0,
        }
    }

    /// Coefficients `u_l` for `l = l₀ ..= l₀ + len`.
    pub fn coefficients(&self, spec: &TensorSpec, len: usize) -> Vec<Scalar> {
        match self.generator {
            Generator::HighestWeightKernel => hw_coefficients(spec, self.n0, len),
            Generator::LowestWeightKernel => lw_coefficients(spec, self.n0, len),
            Generator::Hypergeometric => {
                let (a, a2, a1) = (spec.a(), spec.a2(), spec.a1());
                diagonal_sequence(len, |n| {
                    let n = Scalar::int(n);
                    (&n - a) * (&n - a2) / ((&n + a1 + Scalar::one()) * (n + Scalar::one()))
                })
            }
            Generator::Binomial => {
                let a = spec.a();
                diagonal_sequence(len, |n| {
                    let n = Scalar::int(n);
                    (&n - a) / (n + Scalar::one())
                })
            }
        }
    }

    /// The truncated generator `Σ_{l ≤ l₀ + len} u_l z(l + n₀, l)`.
    pub fn state(&self, spec: &TensorSpec, len: usize) -> Result<TensorState> {
        let l0 = self.l0();
        let terms: Sparse<(i64, i64)> = self
            .coefficients(spec, len)
            .into_iter()
            .enumerate()
            .map(|(i, u)| {
                let l = l0 + i as i64;
                ((l + self.n0, l), u)
            })
            .collect();
        let mut st = TensorState::basis(spec, self.n0 + l0, l0)?;
        st.terms = terms;
        Ok(st)
    }
}

/// `u_0 = 1`, `u_{n+1} = u_n · ratio(n)`.
fn diagonal_sequence(len: usize, ratio: impl Fn(i64) -> Scalar) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(len + 1);
    let mut u = Scalar::one();
    for n in 0..=len as i64 {
        out.push(u.clone());
        u = &u * ratio(n);
    }
    out
}

/// Solution of `u_l a(l+n₀) + u_{l+1} b(l+1) = 0` with `u_{l₀} = 1`, where
/// `E·z(l+n₀, l) = a(l+n₀) z(l+n₀+1, l) + b(l) z(l+n₀, l-1)`; returns
/// `u_l` for `l = l₀ ..= l₀ + len`.
///
/// When `a₁ = 0` and `n₀ < 0` the diagonal starts at `l₀ = -n₀` and the
/// equation at `z(0, -n₀-1)` forces every coefficient to vanish.
pub fn hw_coefficients(spec: &TensorSpec, n0: i64, len: usize) -> Vec<Scalar> {
    if spec.a1_is_zero() && n0 < 0 {
        return vec![Scalar::zero(); len + 1];
    }
    let l0 = spec.l0(n0);
    let mut out = Vec::with_capacity(len + 1);
    let mut u = Scalar::one();
    for l in l0..=l0 + len as i64 {
        out.push(u.clone());
        u = -(&u * spec.e_left(l + n0)) / spec.e_right(l + 1);
    }
    out
}

/// Solution of `u_{l+1} a'(l+n₀+1) + u_l b'(l) = 0` from
/// `F·z(l+n₀, l) = a'(l+n₀) z(l+n₀-1, l) + b'(l) z(l+n₀, l+1)`, starting at
/// `l₀ = -n₀` with `u_{l₀} = 1`. Only `a₁ = 0`, `n₀ ≤ 0` admits a nonzero
/// solution; otherwise the equation at the first basis vector kills `u_{l₀}`.
pub fn lw_coefficients(spec: &TensorSpec, n0: i64, len: usize) -> Vec<Scalar> {
    if !spec.a1_is_zero() || n0 > 0 {
        return vec![Scalar::zero(); len + 1];
    }
    let l0 = -n0;
    let mut out = Vec::with_capacity(len + 1);
    let mut u = Scalar::one();
    for l in l0..=l0 + len as i64 {
        out.push(u.clone());
        u = -(&u * spec.f_right(l)) / spec.f_left(l + n0 + 1);
    }
    out
}

/// Largest integer strictly below `x`.
fn strict_floor(x: &Scalar, j: &mut Judge) -> i64 {
    match j.integer(x) {
        Some(m) => m - 1,
        None => x.floor(),
    }
}

/// Smallest integer strictly above `x`.
fn strict_ceil(x: &Scalar, j: &mut Judge) -> i64 {
    match j.integer(x) {
        Some(m) => m + 1,
        None => x.floor() + 1,
    }
}

/// Highest weight submodules `N(λ, 0)`, `λ = a₁ - a₂ + a + 2n₀`, for all
/// `n₀ ≤ top_n0`. Arises when `a₁ ≠ 0`, where every diagonal is unbounded
/// below and the square-summability condition `2n₀ < -1-a-a₁+a₂` has
/// infinitely many solutions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HwLattice {
    pub top_n0: i64,
    pub top_lambda: Scalar,
    /// Change of `λ` per unit step of `n₀`.
    pub step: i64,
    pub boundary: bool,
}

impl HwLattice {
    pub fn contains(&self, n0: i64) -> bool {
        n0 <= self.top_n0
    }

    pub fn lambda(&self, n0: i64) -> Scalar {
        &self.top_lambda + Scalar::int(self.step * (n0 - self.top_n0))
    }

    pub fn member(&self, spec: &TensorSpec, n0: i64) -> Option<SubmoduleDescriptor> {
        self.contains(n0).then(|| hw_descriptor(spec, n0, self.boundary))
    }

    /// The `count` members closest to the top.
    pub fn members(&self, spec: &TensorSpec, count: usize) -> Vec<SubmoduleDescriptor> {
        (0..count as i64)
            .map(|i| hw_descriptor(spec, self.top_n0 - i, self.boundary))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum HwFamily {
    Finite(Vec<SubmoduleDescriptor>),
    Lattice(HwLattice),
}

fn hw_descriptor(spec: &TensorSpec, n0: i64, boundary: bool) -> SubmoduleDescriptor {
    let lambda = spec.weight(n0, 0);
    SubmoduleDescriptor::new(
        spec,
        SubmoduleKind::HighestWeight { n0 },
        (lambda, Scalar::zero()),
        n0,
        Generator::HighestWeightKernel,
        boundary,
    )
}

pub fn hw_submodules(spec: &TensorSpec) -> HwFamily {
    let mut j = Judge::new(spec.tol());
    let bound = (Scalar::int(-1) - spec.a() - spec.a1() + spec.a2()) * Scalar::ratio(1, 2);
    let top = strict_floor(&bound, &mut j);
    if spec.a1_is_zero() {
        let list = (0..=top).map(|n0| hw_descriptor(spec, n0, j.boundary)).collect();
        HwFamily::Finite(list)
    } else {
        HwFamily::Lattice(HwLattice {
            top_n0: top,
            top_lambda: spec.weight(top, 0),
            step: 2,
            boundary: j.boundary,
        })
    }
}

/// Lowest weight submodules `N(0, a₂ - a - 2n₀)` for `1 + a₂ - a < 2n₀ ≤ 0`;
/// none unless `a₁ = 0`.
pub fn lw_submodules(spec: &TensorSpec) -> Vec<SubmoduleDescriptor> {
    if !spec.a1_is_zero() {
        return Vec::new();
    }
    let mut j = Judge::new(spec.tol());
    let bound = (Scalar::one() + spec.a2() - spec.a()) * Scalar::ratio(1, 2);
    let bottom = strict_ceil(&bound, &mut j);
    (bottom..=0)
        .map(|n0| {
            let b = spec.a2() - spec.a() - Scalar::int(2 * n0);
            SubmoduleDescriptor::new(
                spec,
                SubmoduleKind::LowestWeight { n0 },
                (Scalar::zero(), b),
                n0,
                Generator::LowestWeightKernel,
                j.boundary,
            )
        })
        .collect()
}

/// Complementary-series submodules on the diagonal `k = l`:
/// `N(a + a₁, a₂)` when the parameters are real with `-1 < s < 0`, and
/// `N(a₁, a₂ - a)` when `-1 < a₁, a₂ < 0` and `-2 < a₁ + a₂ - a < -1`.
pub fn cs_submodules(spec: &TensorSpec) -> Vec<SubmoduleDescriptor> {
    let (a1, a2, a, s) = (spec.a1(), spec.a2(), spec.a(), &spec.s);
    let one = Scalar::one();
    let mut out = Vec::new();

    let mut j = Judge::new(spec.tol());
    if j.real(a1) && j.real(a2) && j.negative(s) && j.positive(&(s + &one)) {
        out.push(SubmoduleDescriptor::new(
            spec,
            SubmoduleKind::Complementary {
                b1: a + a1,
                b2: a2.clone(),
            },
            (a + a1, a2.clone()),
            0,
            Generator::Hypergeometric,
            j.boundary,
        ));
    }

    let mut j = Judge::new(spec.tol());
    let t = a1 + a2 - a;
    let unit = |x: &Scalar, j: &mut Judge| j.real(x) && j.negative(x) && j.positive(&(x + &one));
    if unit(a1, &mut j) && unit(a2, &mut j) && j.positive(&(&t + Scalar::int(2))) && j.negative(&(&t + &one)) {
        out.push(SubmoduleDescriptor::new(
            spec,
            SubmoduleKind::Complementary {
                b1: a1.clone(),
                b2: a2 - a,
            },
            (a1.clone(), a2 - a),
            0,
            Generator::Binomial,
            j.boundary,
        ));
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumReport {
    pub spec: TensorSpec,
    /// Finitely many highest weight, lowest weight and complementary entries.
    pub entries: Vec<SubmoduleDescriptor>,
    /// Infinite highest weight family (left factor with `a₁ ≠ 0`).
    pub hw_lattice: Option<HwLattice>,
    pub excluded: Vec<String>,
}

pub fn full_spectrum(spec: &TensorSpec) -> Result<SpectrumReport> {
    let (mut entries, hw_lattice) = match hw_submodules(spec) {
        HwFamily::Finite(list) => (list, None),
        HwFamily::Lattice(lattice) => (Vec::new(), Some(lattice)),
    };
    entries.extend(lw_submodules(spec));
    entries.extend(cs_submodules(spec));
    let lattice_label = hw_lattice.as_ref().map(|l| l.member(spec, l.top_n0).map(|d| d.label));
    let labels = entries.iter().map(|e| &e.label).chain(lattice_label.iter().flatten());
    for label in labels {
        if matches!(label, SeriesLabel::Principal { .. } | SeriesLabel::NotUnitarizable) {
            return Err(Error::InvalidTensor(format!("spectrum entry classified as {}", label.name())));
        }
    }
    Ok(SpectrumReport {
        spec: spec.clone(),
        entries,
        hw_lattice,
        excluded: vec![
            "principal series: FE-eigenvectors with mu + ((1+s)/2)^2 <= 0 have |u_n|^2 n^(2+Re s) ~ 1/n and are never square-summable".to_string(),
        ],
    })
}

/// An `FE`-eigenvalue `ξ` on the diagonal `k = l` with its derived
/// parameters `μ = ξ - a₂(1+a+a₁)`, `p = a a₂` and `r`.
#[derive(Clone, Debug, PartialEq)]
pub struct CSCandidate {
    pub spec: TensorSpec,
    pub xi: Scalar,
    pub mu: Scalar,
    pub p: Scalar,
    pub r: Scalar,
    /// `μ + ((1+s)/2)²`, exact when the inputs are.
    pub disc: Scalar,
    pub discriminant: f64,
}

impl CSCandidate {
    /// Fails with `OutOfRange` unless `μ + ((1+s)/2)²` is real and below ¼.
    pub fn new(spec: &TensorSpec, xi: impl Into<Scalar>) -> Result<Self> {
        let xi = xi.into();
        let (a1, a2, a) = (spec.a1(), spec.a2(), spec.a());
        let one = Scalar::one();
        let mu = &xi - a2 * (&one + a + a1);
        let p = a * a2;
        let h = (&one + &spec.s) * Scalar::ratio(1, 2);
        let disc = &mu + &h * &h;
        let tol = spec.tol();
        let out_of_range = || Error::OutOfRange { xi: xi.to_string() };
        if !disc.is_real(tol) {
            return Err(out_of_range());
        }
        let disc = if disc.is_exact() { disc } else { Scalar::real(disc.re()) };
        let mut j = Judge::new(tol);
        if !j.negative(&(&disc - Scalar::ratio(1, 4))) {
            return Err(out_of_range());
        }
        let r = h - sqrt_exact(&disc);
        Ok(CSCandidate {
            spec: spec.clone(),
            discriminant: disc.re(),
            xi,
            mu,
            p,
            r,
            disc,
        })
    }

    /// The candidate `ξ = b₂(b₁+1)` of a module `N(b₁, b₂)`.
    pub fn for_module(spec: &TensorSpec, b1: &Scalar, b2: &Scalar) -> Result<Self> {
        CSCandidate::new(spec, b2 * (b1 + Scalar::one()))
    }

    pub fn in_principal_range(&self) -> bool {
        self.discriminant <= 0.0
    }

    /// Roots of `α² + (3+s)α + s + 2 - μ = 0`, larger real part first.
    pub fn indicial_exponents(&self) -> (Complex64, Complex64) {
        let (p, m) = crate::hypergeometric::indicial_exponents(&self.spec.s, &self.mu);
        (p.to_complex(), m.to_complex())
    }
}

/// Square root, exact for perfect rational squares.
fn sqrt_exact(x: &Scalar) -> Scalar {
    if let Some(q) = x.as_rational() {
        if *q >= num_rational::BigRational::from_integer(0.into()) {
            let (n, d) = (q.numer().sqrt(), q.denom().sqrt());
            if &n * &n == *q.numer() && &d * &d == *q.denom() {
                return Scalar::Exact(num_rational::BigRational::new(n, d));
            }
        }
    }
    x.sqrt()
}

/// Which of `a`, `a₂` enters the truncating parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Shifted {
    A,
    A2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClosedForm {
    /// `r = 0`: `S(t) = F(-a, -a₂; 1+a₁; t)`.
    RZero,
    /// `1 + a₁ + a_(2) - r = -n`: `S(t) = (1-t)^{a_(2)-n} P_n(t)`.
    Euler { shifted: Shifted, n: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Exclusion {
    /// `μ + ((1+s)/2)² ≤ 0`.
    PrincipalRange,
    /// `r - a` or `r - a₂` is a non-positive integer.
    Terminating,
    /// None of the special configurations, and not `r = 0` with `-1 < s < 0`.
    Generic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Membership {
    NotMember(Exclusion),
    Member(ClosedForm),
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipDecision {
    pub membership: Membership,
    pub boundary: bool,
}

/// Whether `S(t)` lies in the weighted space `ℋ_s`, i.e. whether the
/// `FE`-eigenvector with eigenvalue `ξ` has finite norm in `V`.
pub fn cs_membership(cand: &CSCandidate) -> MembershipDecision {
    let spec = &cand.spec;
    let mut j = Judge::new(spec.tol());
    let membership = decide(cand, &mut j);
    MembershipDecision {
        membership,
        boundary: j.boundary,
    }
}

fn decide(cand: &CSCandidate, j: &mut Judge) -> Membership {
    let spec = &cand.spec;
    let (a1, a2, a, s, r) = (spec.a1(), spec.a2(), spec.a(), &spec.s, &cand.r);
    let one = Scalar::one();
    if !j.positive(&cand.disc) {
        return Membership::NotMember(Exclusion::PrincipalRange);
    }
    let mut nonpos = |x: &Scalar| j.integer(x).filter(|&n| n <= 0);
    if nonpos(&(r - a)).is_some() || nonpos(&(r - a2)).is_some() {
        return Membership::NotMember(Exclusion::Terminating);
    }
    for (shifted, x) in [(Shifted::A, a), (Shifted::A2, a2)] {
        if let Some(n) = nonpos(&(&one + a1 + x - r)) {
            return Membership::Member(ClosedForm::Euler {
                shifted,
                n: (-n) as u32,
            });
        }
    }
    if j.real(s) && j.negative(s) && j.positive(&(s + &one)) && j.integer(r) == Some(0) {
        return Membership::Member(ClosedForm::RZero);
    }
    Membership::NotMember(Exclusion::Generic)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ResidualScope {
    /// Drop the components that involve coefficients past the truncation.
    Interior,
    Full,
}

/// Relative defect of the truncated generator in the `V`-norm:
/// `‖X·w_{≤K}‖ / ‖w_{≤K}‖` with `X = E`, `F` or `FE - ξ` by kind.
pub fn generator_residual(
    spec: &TensorSpec,
    desc: &SubmoduleDescriptor,
    len: usize,
    scope: ResidualScope,
) -> Result<f64> {
    let w = desc.state(spec, len)?;
    let image = match desc.generator {
        Generator::HighestWeightKernel => act_tensor(Sl2::E, &w)?,
        Generator::LowestWeightKernel => act_tensor(Sl2::F, &w)?,
        Generator::Hypergeometric | Generator::Binomial => {
            let fe = act_tensor(Sl2::F, &act_tensor(Sl2::E, &w)?)?;
            fe.with_terms(fe.terms.sub(&w.terms.scale(&desc.xi)))
        }
    };
    let l_top = desc.l0() + len as i64;
    let keep = |l: i64| match (scope, desc.generator) {
        (ResidualScope::Full, _) => true,
        (_, Generator::LowestWeightKernel) => l <= l_top,
        _ => l < l_top,
    };
    let residual: Sparse<(i64, i64)> = image
        .terms
        .iter()
        .filter(|(&(_, l), _)| keep(l))
        .map(|(&kl, c)| (kl, c.clone()))
        .collect();
    let num = state_norm_sq(spec, &residual)?;
    let den = state_norm_sq(spec, &w.terms)?;
    Ok((num / den).sqrt())
}

/// `Σ |c|² ‖z(k,l)‖²` in floating point.
pub fn state_norm_sq(spec: &TensorSpec, terms: &Sparse<(i64, i64)>) -> Result<f64> {
    terms
        .iter()
        .map(|(&(k, l), c)| Ok(c.abs().powi(2) * spec.ln_norm_sq(k, l)?.exp()))
        .sum()
}

/// `ln ‖z(k₀ + i, l₀ + i)‖²` for `i < len`, accumulated from the ratio formulas.
pub fn diagonal_ln_norms(spec: &TensorSpec, k0: i64, l0: i64, len: usize) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(len);
    let mut ln = spec.ln_norm_sq(k0, l0)?;
    for i in 0..len as i64 {
        out.push(ln);
        ln += spec.left_ratio(k0 + i).ln() + spec.right_ratio(l0 + i).ln();
    }
    Ok(out)
}
