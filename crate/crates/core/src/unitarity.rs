//! Unitarizability of `N(a₁, a₂)` for the universal cover of `SU(1,1)`.
//!
//! An inner product making `H` self-adjoint and `E* = -F` must have the
//! `x(k)` orthogonal, and adjointness fixes consecutive norms:
//! `‖x(k+1)‖² / ‖x(k)‖² = -f(k+1) / conj(e(k))` where `e`, `f` are the `E`,
//! `F` coefficients. Unitarizability is positivity of that ratio on the
//! whole index set; [`classify`] encodes the resulting case analysis.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Scalar, Tolerance};
use crate::weight_module::{act, casimir_scalar, Case, ModuleSpec, Sl2, WeightVector};

/// Canonical representative in the reduced list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum SeriesLabel {
    /// `N(-1-x+iy, x+iy)` with `-1 ≤ x < 0`, `y > 0`.
    Principal { x: f64, y: f64 },
    /// `N(a1, a2)` with `-1 < a1, a2 < 0`.
    Complementary { a1: Scalar, a2: Scalar },
    /// `N(-λ, 0)`.
    HighestWeight { lambda: Scalar },
    /// `N(0, -λ)`.
    LowestWeight { lambda: Scalar },
    Trivial,
    NotUnitarizable,
}

impl SeriesLabel {
    pub fn name(&self) -> &'static str {
        match self {
            SeriesLabel::Principal { .. } => "Principal",
            SeriesLabel::Complementary { .. } => "Complementary",
            SeriesLabel::HighestWeight { .. } => "HighestWeight",
            SeriesLabel::LowestWeight { .. } => "LowestWeight",
            SeriesLabel::Trivial => "Trivial",
            SeriesLabel::NotUnitarizable => "NotUnitarizable",
        }
    }

    pub fn is_unitarizable(&self) -> bool {
        !matches!(self, SeriesLabel::NotUnitarizable)
    }

    /// Parameters `(a₁, a₂)` of the canonical module.
    pub fn canonical_params(&self) -> Option<(Scalar, Scalar)> {
        match self {
            SeriesLabel::Principal { x, y } => Some((
                Scalar::complex(-1.0 - x, *y),
                Scalar::complex(*x, *y),
            )),
            SeriesLabel::Complementary { a1, a2 } => Some((a1.clone(), a2.clone())),
            SeriesLabel::HighestWeight { lambda } => Some((-lambda, Scalar::zero())),
            SeriesLabel::LowestWeight { lambda } => Some((Scalar::zero(), -lambda)),
            SeriesLabel::Trivial => Some((Scalar::zero(), Scalar::zero())),
            SeriesLabel::NotUnitarizable => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub label: SeriesLabel,
    /// A strict inequality or integrality test was decided inside the
    /// `abs_eps` band (float mode only).
    pub boundary: bool,
}

/// Three-way comparisons that remember whether they were close calls.
pub(crate) struct Judge<'a> {
    tol: &'a Tolerance,
    pub(crate) boundary: bool,
}

impl<'a> Judge<'a> {
    pub(crate) fn new(tol: &'a Tolerance) -> Self {
        Judge { tol, boundary: false }
    }

    /// `x > 0`, judged on the real part.
    pub(crate) fn positive(&mut self, x: &Scalar) -> bool {
        if let Some(q) = x.as_rational() {
            return *q > num_rational::BigRational::from_integer(0.into());
        }
        let r = x.re();
        if r.abs() <= self.tol.abs_eps {
            self.boundary |= r != 0.0;
            return false;
        }
        r > 0.0
    }

    pub(crate) fn negative(&mut self, x: &Scalar) -> bool {
        self.positive(&-x)
    }

    pub(crate) fn real(&mut self, x: &Scalar) -> bool {
        if x.is_exact() {
            return true;
        }
        let im = x.im().abs();
        if im > 0.0 && im <= self.tol.abs_eps {
            self.boundary = true;
        }
        im <= self.tol.abs_eps
    }

    pub(crate) fn integer(&mut self, x: &Scalar) -> Option<i64> {
        let (n, approx) = x.int_check(self.tol);
        self.boundary |= approx;
        n
    }
}

pub fn classify(a1: &Scalar, a2: &Scalar) -> SeriesLabel {
    classify_with(a1, a2, &Tolerance::default()).label
}

pub fn classify_with(a1: &Scalar, a2: &Scalar, tol: &Tolerance) -> Classification {
    let mut j = Judge { tol, boundary: false };
    let label = classify_inner(a1, a2, &mut j);
    Classification {
        label,
        boundary: j.boundary,
    }
}

fn classify_inner(a1: &Scalar, a2: &Scalar, j: &mut Judge) -> SeriesLabel {
    use SeriesLabel::*;
    let n1 = j.integer(a1);
    let n2 = j.integer(a2);
    if !j.real(&(a1 - a2)) {
        return NotUnitarizable;
    }
    let sum = a1 + a2;
    let two = Scalar::int(2);
    match (n1, n2) {
        // Case I(i).
        (None, None) => {
            if j.real(a2) {
                let f = a2.floor();
                let lo = Scalar::int(-2 - f);
                let hi = Scalar::int(-1 - f);
                if j.positive(&(a1 - &lo)) && j.positive(&(&hi - a1)) {
                    let shift = Scalar::int(f + 1);
                    return Complementary {
                        a1: real_part(&(a1 + &shift)),
                        a2: real_part(&(a2 - &shift)),
                    };
                }
                return NotUnitarizable;
            }
            // Equal imaginary parts; constant norms need Re(a1 + a2) = -1.
            let re_sum = Scalar::real(sum.re() + 1.0);
            if !j.positive(&re_sum) && !j.negative(&re_sum) {
                let x = a2.re();
                let y = a2.im();
                return Principal {
                    x: x - x.floor() - 1.0,
                    y: y.abs(),
                };
            }
            NotUnitarizable
        }
        // Case I(ii): a₂ ≥ 0 integral, a₁ not integral.
        (None, Some(m)) if m >= 0 => {
            if j.real(a1) && j.negative(&sum) {
                HighestWeight { lambda: real_part(&-sum) }
            } else {
                NotUnitarizable
            }
        }
        // Case I(iii).
        (Some(m), None) if m >= 0 => {
            if j.real(a2) && j.negative(&sum) {
                LowestWeight { lambda: real_part(&-sum) }
            } else {
                NotUnitarizable
            }
        }
        // Case I(iv).
        (Some(m1), Some(m2)) if m1 >= 0 && m2 >= 0 => {
            if m1 == 0 && m2 == 0 {
                Trivial
            } else {
                NotUnitarizable
            }
        }
        // Case II(i): a₂ < 0 integral, a₁ not integral.
        (None, Some(_)) => {
            let l = &sum + &two;
            if j.real(a1) && j.positive(&l) {
                LowestWeight { lambda: real_part(&l) }
            } else {
                NotUnitarizable
            }
        }
        // Case III(i).
        (Some(_), None) => {
            let l = &sum + &two;
            if j.real(a2) && j.positive(&l) {
                HighestWeight { lambda: real_part(&l) }
            } else {
                NotUnitarizable
            }
        }
        (Some(m1), Some(m2)) if m1 >= 0 => {
            // Case II(ii).
            let lambda = if -m1 > m2 { -m1 - m2 } else { m1 + m2 + 2 };
            LowestWeight { lambda: Scalar::int(lambda) }
        }
        (Some(m1), Some(m2)) if m2 >= 0 => {
            // Case III(ii).
            let lambda = if -m1 > m2 { -m1 - m2 } else { m1 + m2 + 2 };
            HighestWeight { lambda: Scalar::int(lambda) }
        }
        // Case IV: finite-dimensional; only the one-dimensional N(-1,-1).
        (Some(m1), Some(m2)) => {
            if m1 == -1 && m2 == -1 {
                Trivial
            } else {
                NotUnitarizable
            }
        }
    }
}

fn real_part(x: &Scalar) -> Scalar {
    match x {
        Scalar::Exact(_) => x.clone(),
        Scalar::Float(z) => Scalar::real(z.re),
    }
}

/// Norms of the orthogonal basis, pinned to 1 at the anchor index.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryStructure {
    pub spec: ModuleSpec,
    pub label: SeriesLabel,
    pub anchor_index: i64,
}

impl UnitaryStructure {
    pub fn new(spec: &ModuleSpec) -> Result<Self> {
        let label = classify_with(&spec.a1, &spec.a2, &spec.tol).label;
        if !label.is_unitarizable() {
            return Err(Error::NotUnitarizable {
                a1: spec.a1.to_string(),
                a2: spec.a2.to_string(),
            });
        }
        let anchor_index = match spec.index_bounds() {
            (Some(l), None) => l,
            (None, Some(h)) => h,
            _ => 0,
        };
        Ok(UnitaryStructure {
            spec: spec.clone(),
            label,
            anchor_index,
        })
    }

    /// `‖x(k+1)‖² / ‖x(k)‖²` for `k, k+1` in the index set.
    pub fn ratio(&self, k: i64) -> Scalar {
        let r = -self.spec.f_coeff(k + 1) / self.spec.e_coeff(k).conj();
        real_part(&r)
    }

    pub fn norm_sq(&self, k: i64) -> Result<Scalar> {
        if !self.spec.contains(k) {
            return Err(Error::IndexOutOfSupport(k));
        }
        let a = self.anchor_index;
        Ok(if k >= a {
            (a..k).map(|j| self.ratio(j)).product()
        } else {
            Scalar::one() / (k..a).map(|j| self.ratio(j)).product::<Scalar>()
        })
    }

    /// `ln ‖x(k)‖²` in floating point, for large `|k|`.
    pub fn ln_norm_sq(&self, k: i64) -> Result<f64> {
        if !self.spec.contains(k) {
            return Err(Error::IndexOutOfSupport(k));
        }
        let a = self.anchor_index;
        let ln = |j: i64| self.ratio(j).re().ln();
        Ok(if k >= a {
            (a..k).map(ln).sum()
        } else {
            -(k..a).map(ln).sum::<f64>()
        })
    }
}

pub fn norm_sq(spec: &ModuleSpec, k: i64) -> Result<Scalar> {
    UnitaryStructure::new(spec)?.norm_sq(k)
}

fn coefficient(v: &WeightVector, k: i64) -> Complex64 {
    v.terms.get(&k).to_complex()
}

/// Largest relative residual of `⟨F x(k+1), x(k)⟩ + ⟨x(k+1), E x(k)⟩` over
/// `|k| ≤ K`, also counting any imaginary part of an `H` eigenvalue.
pub fn verify_skew_adjoint(spec: &ModuleSpec, k_max: i64) -> Result<f64> {
    let u = UnitaryStructure::new(spec)?;
    let mut worst: f64 = 0.0;
    for k in -k_max..=k_max {
        if !spec.contains(k) {
            continue;
        }
        worst = worst.max(spec.h_coeff(k).im().abs());
        if !spec.contains(k + 1) {
            continue;
        }
        let xk = WeightVector::basis(spec, k)?;
        let xk1 = WeightVector::basis(spec, k + 1)?;
        let f = coefficient(&act(Sl2::F, &xk1)?, k);
        let e = coefficient(&act(Sl2::E, &xk)?, k + 1);
        let lhs = f * u.norm_sq(k)?.re();
        let rhs = e.conj() * u.norm_sq(k + 1)?.re();
        let scale = 1f64.max(lhs.norm()).max(rhs.norm());
        worst = worst.max((lhs + rhs).norm() / scale);
    }
    Ok(worst)
}

/// Matrix of `A = Ω - ½(E - F)²` in the orthonormalized basis over the
/// indices `|k| ≤ K`, together with those indices.
pub fn nelson_matrix(spec: &ModuleSpec, k_max: i64) -> Result<(Vec<i64>, Vec<Vec<Complex64>>)> {
    let u = UnitaryStructure::new(spec)?;
    let idx: Vec<i64> = (-k_max..=k_max).filter(|&k| spec.contains(k)).collect();
    let omega = casimir_scalar(spec).to_complex();
    let norms: Vec<f64> = idx
        .iter()
        .map(|&k| u.norm_sq(k).map(|n| n.re().sqrt()))
        .collect::<Result<_>>()?;
    let n = idx.len();
    let mut m = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for (c, &kc) in idx.iter().enumerate() {
        let x = WeightVector::basis(spec, kc)?;
        let d = act(Sl2::E, &x)?.terms.sub(&act(Sl2::F, &x)?.terms);
        let dv = x.with_terms(d);
        let d2 = act(Sl2::E, &dv)?.terms.sub(&act(Sl2::F, &dv)?.terms);
        for (r, &kr) in idx.iter().enumerate() {
            let mut entry = -0.5 * d2.get(&kr).to_complex();
            if r == c {
                entry += omega;
            }
            m[r][c] = entry * norms[r] / norms[c];
        }
    }
    Ok((idx, m))
}

/// Largest `|A_ij - conj(A_ji)|`, relative to the largest entry.
pub fn nelson_asymmetry(spec: &ModuleSpec, k_max: i64) -> Result<f64> {
    let (_, m) = nelson_matrix(spec, k_max)?;
    let scale = m
        .iter()
        .flatten()
        .map(|z| z.norm())
        .fold(1.0, f64::max);
    let mut worst: f64 = 0.0;
    for (i, row) in m.iter().enumerate() {
        for (jj, z) in row.iter().enumerate() {
            worst = worst.max((z - m[jj][i].conj()).norm());
        }
    }
    Ok(worst / scale)
}

/// Which of the four cases and sub-cases produced the label; useful in reports.
pub fn case_label(spec: &ModuleSpec) -> String {
    let sub = match spec.case_tag {
        Case::I => match (spec.int1(), spec.int2()) {
            (None, None) => "i",
            (None, Some(_)) => "ii",
            (Some(_), None) => "iii",
            (Some(_), Some(_)) => "iv",
        },
        Case::II => if spec.int1().is_some() { "ii" } else { "i" },
        Case::III => if spec.int2().is_some() { "ii" } else { "i" },
        Case::IV => "",
    };
    format!("{:?}{}{}", spec.case_tag, if sub.is_empty() { "" } else { "." }, sub)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(p: i64, q: i64) -> Scalar {
        Scalar::ratio(p, q)
    }

    #[test]
    fn classify_examples() {
        let p = classify(&Scalar::complex(-0.5, 1.0), &Scalar::complex(-0.5, 1.0));
        assert_eq!(p, SeriesLabel::Principal { x: -0.5, y: 1.0 });
        assert_eq!(
            classify(&r(-1, 2), &r(-1, 4)),
            SeriesLabel::Complementary { a1: r(-1, 2), a2: r(-1, 4) }
        );
        assert_eq!(
            classify(&r(-17, 10), &Scalar::zero()),
            SeriesLabel::HighestWeight { lambda: r(17, 10) }
        );
        assert_eq!(classify(&Scalar::int(-2), &Scalar::int(-3)), SeriesLabel::NotUnitarizable);
        assert_eq!(classify(&Scalar::zero(), &Scalar::zero()), SeriesLabel::Trivial);
        assert_eq!(classify(&Scalar::int(-1), &Scalar::int(-1)), SeriesLabel::Trivial);
    }

    #[test]
    fn complementary_reduction_shifts() {
        // N(-2.5, 0.75) ≅ N(-0.5, -1.25)? No: shift by [a₂]+1 = 1 gives N(-1.5, -0.25),
        // outside the window, so this one is not unitarizable.
        assert_eq!(classify(&r(-5, 2), &r(3, 4)), SeriesLabel::NotUnitarizable);
        // N(-1.5, 0.75) → N(-0.5, -0.25).
        assert_eq!(
            classify(&r(-3, 2), &r(3, 4)),
            SeriesLabel::Complementary { a1: r(-1, 2), a2: r(-1, 4) }
        );
    }

    #[test]
    fn boundary_flag_in_float_mode() {
        let c = classify_with(&Scalar::real(-1e-12), &Scalar::real(-0.25), &Tolerance::default());
        assert!(c.boundary);
        let c = classify_with(&Scalar::real(-0.5), &Scalar::real(-0.25), &Tolerance::default());
        assert!(!c.boundary);
    }

    #[test]
    fn norm_examples() {
        let cs = ModuleSpec::new(r(-1, 2), r(-1, 4));
        assert_eq!(norm_sq(&cs, 1).unwrap(), Scalar::int(2));
        assert_eq!(norm_sq(&cs, 0).unwrap(), Scalar::one());
        let ps = ModuleSpec::new(Scalar::complex(-0.5, 1.0), Scalar::complex(-0.5, 1.0));
        for k in [-7, 0, 3, 40] {
            assert!((norm_sq(&ps, k).unwrap().re() - 1.0).abs() < 1e-14);
        }
        let hw = ModuleSpec::new(r(-17, 10), 0);
        assert!(matches!(norm_sq(&hw, 1), Err(Error::IndexOutOfSupport(1))));
        assert!(matches!(
            norm_sq(&ModuleSpec::new(-2, -3), 0),
            Err(Error::NotUnitarizable { .. })
        ));
    }

    #[test]
    fn skew_adjoint_examples() {
        for spec in [
            ModuleSpec::new(r(-1, 2), r(-1, 4)),
            ModuleSpec::new(Scalar::complex(-0.5, 1.0), Scalar::complex(-0.5, 1.0)),
            ModuleSpec::new(0, 0),
        ] {
            assert!(verify_skew_adjoint(&spec, 50).unwrap() < 1e-10);
        }
    }

    #[test]
    fn nelson_symmetric() {
        for spec in [
            ModuleSpec::new(r(-1, 2), r(-1, 4)),
            ModuleSpec::new(Scalar::complex(-0.3, 0.7), Scalar::complex(-0.7, 0.7)),
            ModuleSpec::new(r(-17, 10), 0),
            ModuleSpec::new(0, r(-13, 10)),
        ] {
            assert!(nelson_asymmetry(&spec, 50).unwrap() < 1e-10);
        }
    }

    fn noninteger() -> impl Strategy<Value = Scalar> {
        (-60i64..60, 2i64..9)
            .prop_filter("non-integer", |(p, q)| p % q != 0)
            .prop_map(|(p, q)| Scalar::ratio(p, q))
    }

    fn any_param() -> impl Strategy<Value = Scalar> {
        prop_oneof![(-6i64..6).prop_map(Scalar::int), noninteger()]
    }

    /// Positivity of every ratio on the index set, scanned over |k| ≤ 100.
    fn positive_on_window(spec: &ModuleSpec) -> bool {
        (-100..100).all(|k| {
            if !(spec.contains(k) && spec.contains(k + 1)) {
                return true;
            }
            let r = -spec.f_coeff(k + 1) / spec.e_coeff(k).conj();
            r.cmp_re(&Scalar::zero()).is_gt()
        })
    }

    proptest! {
        #[test]
        fn classification_matches_positivity(a1 in any_param(), a2 in any_param()) {
            let spec = ModuleSpec::new(a1.clone(), a2.clone());
            let label = classify(&a1, &a2);
            // Finite-dimensional modules with more than one vector can pass the
            // window scan only if positive throughout, which never happens.
            prop_assert_eq!(label.is_unitarizable(), positive_on_window(&spec));
        }

        #[test]
        fn norms_positive(a1 in any_param(), a2 in any_param()) {
            let spec = ModuleSpec::new(a1, a2);
            if let Ok(u) = UnitaryStructure::new(&spec) {
                for k in -100..=100 {
                    if spec.contains(k) {
                        prop_assert!(u.norm_sq(k).unwrap().cmp_re(&Scalar::zero()).is_gt());
                    }
                }
            }
        }

        #[test]
        fn shift_stable(a1 in any_param(), a2 in any_param()) {
            let b1 = &a1 - Scalar::one();
            let b2 = &a2 + Scalar::one();
            if case_of_pair(&a1, &a2) == case_of_pair(&b1, &b2) {
                prop_assert_eq!(classify(&a1, &a2).name(), classify(&b1, &b2).name());
            }
        }

        #[test]
        fn complementary_window(a1 in noninteger(), a2 in noninteger()) {
            let f = a2.floor();
            let inside = a1.cmp_re(&Scalar::int(-2 - f)).is_gt() && a1.cmp_re(&Scalar::int(-1 - f)).is_lt();
            let spec = ModuleSpec::new(a1.clone(), a2.clone());
            prop_assert_eq!(inside, positive_on_window(&spec));
            prop_assert_eq!(inside, classify(&a1, &a2).is_unitarizable());
        }
    }

    /// Sub-case key: which parameters are integral and their signs.
    fn case_of_pair(a1: &Scalar, a2: &Scalar) -> (Case, bool, bool) {
        let spec = ModuleSpec::new(a1.clone(), a2.clone());
        (spec.case_tag, spec.int1().is_some(), spec.int2().is_some_and(|n| n >= 0))
    }
}
