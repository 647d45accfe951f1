//! Degree-one simple `sl(2)` weight modules `N(a₁, a₂)`.
//!
//! The basis `x(k)` runs over the integers `k` allowed by the index set: for
//! integral `a₁`, `a₁ + k < 0` exactly when `a₁ < 0`; for integral `a₂`,
//! `a₂ - k < 0` exactly when `a₂ < 0`. `H` acts on `x(k)` by `a₁ - a₂ + 2k`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Scalar, Tolerance};
use crate::sparse::Sparse;
use crate::unitarity::SeriesLabel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sl2 {
    E,
    F,
    H,
}

/// Which of `a₁`, `a₂` are negative integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    /// Neither.
    I,
    /// Only `a₂`.
    II,
    /// Only `a₁`.
    III,
    /// Both.
    IV,
}

pub fn case_of(a1: &Scalar, a2: &Scalar) -> Case {
    case_of_with(a1, a2, &Tolerance::default())
}

pub fn case_of_with(a1: &Scalar, a2: &Scalar, tol: &Tolerance) -> Case {
    match (a1.is_neg_integer(tol), a2.is_neg_integer(tol)) {
        (false, false) => Case::I,
        (false, true) => Case::II,
        (true, false) => Case::III,
        (true, true) => Case::IV,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub a1: Scalar,
    pub a2: Scalar,
    pub case_tag: Case,
    pub series_label: Option<SeriesLabel>,
    pub tol: Tolerance,
}

impl ModuleSpec {
    pub fn new(a1: impl Into<Scalar>, a2: impl Into<Scalar>) -> Self {
        ModuleSpec::with_tolerance(a1, a2, Tolerance::default())
    }

    pub fn with_tolerance(a1: impl Into<Scalar>, a2: impl Into<Scalar>, tol: Tolerance) -> Self {
        let (a1, a2) = (a1.into(), a2.into());
        ModuleSpec {
            case_tag: case_of_with(&a1, &a2, &tol),
            a1,
            a2,
            series_label: None,
            tol,
        }
    }

    /// Attaches the unitarity classification.
    pub fn labelled(mut self) -> Self {
        self.series_label = Some(crate::unitarity::classify_with(&self.a1, &self.a2, &self.tol).label);
        self
    }

    pub fn int1(&self) -> Option<i64> {
        self.a1.as_integer(&self.tol)
    }

    pub fn int2(&self) -> Option<i64> {
        self.a2.as_integer(&self.tol)
    }

    /// Inclusive bounds of the index set; `None` means unbounded.
    pub fn index_bounds(&self) -> (Option<i64>, Option<i64>) {
        let mut lo = None;
        let mut hi = None;
        match self.int1() {
            Some(n) if n >= 0 => lo = Some(-n),
            Some(n) => hi = Some(-n - 1),
            None => {}
        }
        match self.int2() {
            Some(n) if n >= 0 => hi = Some(hi.map_or(n, |h: i64| h.min(n))),
            Some(n) => lo = Some(lo.map_or(n + 1, |l: i64| l.max(n + 1))),
            None => {}
        }
        (lo, hi)
    }

    pub fn contains(&self, k: i64) -> bool {
        let (lo, hi) = self.index_bounds();
        lo.is_none_or(|l| k >= l) && hi.is_none_or(|h| k <= h)
    }

    /// Dimension when the index set is finite.
    pub fn dimension(&self) -> Option<usize> {
        match self.index_bounds() {
            (Some(l), Some(h)) => Some((h - l + 1).max(0) as usize),
            _ => None,
        }
    }

    pub fn h_coeff(&self, k: i64) -> Scalar {
        &self.a1 - &self.a2 + Scalar::int(2 * k)
    }

    /// Coefficient of `x(k+1)` in `E·x(k)`.
    pub fn e_coeff(&self, k: i64) -> Scalar {
        let kk = Scalar::int(k);
        let one = Scalar::one();
        match self.case_tag {
            Case::I => &self.a2 - &kk,
            Case::II => one,
            Case::III => (&self.a1 + &kk + &one) * (&self.a2 - &kk),
            Case::IV => &self.a1 + &kk + &one,
        }
    }

    /// Coefficient of `x(k-1)` in `F·x(k)`.
    pub fn f_coeff(&self, k: i64) -> Scalar {
        let kk = Scalar::int(k);
        let one = Scalar::one();
        match self.case_tag {
            Case::I => &self.a1 + &kk,
            Case::II => (&self.a1 + &kk) * (&self.a2 - &kk + &one),
            Case::III => one,
            Case::IV => &self.a2 - &kk + &one,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightVector {
    pub spec: ModuleSpec,
    pub terms: Sparse<i64>,
}

impl WeightVector {
    pub fn zero(spec: &ModuleSpec) -> Self {
        WeightVector {
            spec: spec.clone(),
            terms: Sparse::new(),
        }
    }

    pub fn basis(spec: &ModuleSpec, k: i64) -> Result<Self> {
        if !spec.contains(k) {
            return Err(Error::MalformedVector { index: vec![k] });
        }
        Ok(WeightVector {
            spec: spec.clone(),
            terms: Sparse::singleton(k, Scalar::one()),
        })
    }

    pub fn with_terms(&self, terms: Sparse<i64>) -> Self {
        WeightVector {
            spec: self.spec.clone(),
            terms,
        }
    }
}

pub fn act(x: Sl2, v: &WeightVector) -> Result<WeightVector> {
    let spec = &v.spec;
    if let Some(&k) = v.terms.keys().find(|&&k| !spec.contains(k)) {
        return Err(Error::MalformedVector { index: vec![k] });
    }
    let mut out = Sparse::new();
    for (&k, c) in v.terms.iter() {
        let (target, coef) = match x {
            Sl2::H => (k, spec.h_coeff(k)),
            Sl2::E => (k + 1, spec.e_coeff(k)),
            Sl2::F => (k - 1, spec.f_coeff(k)),
        };
        if !spec.contains(target) {
            // The formulas encode simplicity: the coefficient must vanish here.
            if !coef.approx_zero(&spec.tol) {
                return Err(Error::BoundaryLeak {
                    index: vec![target],
                    coefficient: coef.to_string(),
                });
            }
            continue;
        }
        out.add_term(target, c * coef);
    }
    Ok(v.with_terms(out))
}

/// Scalar by which `Ω = ¼H² + ½H + FE` acts.
pub fn casimir_scalar(spec: &ModuleSpec) -> Scalar {
    let m = (&spec.a1 + &spec.a2) / Scalar::int(2);
    &m * (Scalar::one() + &m)
}

/// `Ω` applied to a vector, computed from the generators.
pub fn apply_casimir(v: &WeightVector) -> Result<WeightVector> {
    let h = act(Sl2::H, v)?;
    let hh = act(Sl2::H, &h)?;
    let fe = act(Sl2::F, &act(Sl2::E, v)?)?;
    let terms = hh
        .terms
        .scale(&Scalar::ratio(1, 4))
        .add(&h.terms.scale(&Scalar::ratio(1, 2)))
        .add(&fe.terms);
    Ok(v.with_terms(terms))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Lattice {
    /// `base + 2ℤ`.
    Full,
    /// `base + 2ℤ_{≤0}`.
    BoundedAbove,
    /// `base + 2ℤ_{≥0}`.
    BoundedBelow,
    /// `base + 2{0, …, len-1}`.
    Finite { len: usize },
}

/// The set of weights `base + lattice`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupportDescriptor {
    pub base: Scalar,
    pub lattice: Lattice,
}

impl SupportDescriptor {
    pub fn contains(&self, w: &Scalar, tol: &Tolerance) -> bool {
        let d = (w - &self.base) / Scalar::int(2);
        match (d.as_integer(tol), &self.lattice) {
            (None, _) => false,
            (Some(_), Lattice::Full) => true,
            (Some(n), Lattice::BoundedAbove) => n <= 0,
            (Some(n), Lattice::BoundedBelow) => n >= 0,
            (Some(n), Lattice::Finite { len }) => n >= 0 && (n as usize) < *len,
        }
    }
}

pub fn support(spec: &ModuleSpec) -> SupportDescriptor {
    let (base, lattice) = match spec.index_bounds() {
        (None, None) => (spec.h_coeff(0), Lattice::Full),
        (None, Some(h)) => (spec.h_coeff(h), Lattice::BoundedAbove),
        (Some(l), None) => (spec.h_coeff(l), Lattice::BoundedBelow),
        (Some(l), Some(h)) => (
            spec.h_coeff(l),
            Lattice::Finite {
                len: (h - l + 1).max(0) as usize,
            },
        ),
    };
    SupportDescriptor { base, lattice }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_examples() {
        assert_eq!(case_of(&Scalar::real(0.5), &Scalar::real(-0.3)), Case::I);
        assert_eq!(case_of(&Scalar::real(0.5), &Scalar::int(-2)), Case::II);
        assert_eq!(case_of(&Scalar::int(-2), &Scalar::int(-3)), Case::IV);
        assert_eq!(case_of(&Scalar::int(-2), &Scalar::real(0.1)), Case::III);
    }

    #[test]
    fn action_examples() {
        let spec = ModuleSpec::new(Scalar::ratio(1, 2), Scalar::ratio(-3, 10));
        let x0 = WeightVector::basis(&spec, 0).unwrap();
        let e = act(Sl2::E, &x0).unwrap();
        assert_eq!(e.terms.get(&1), Scalar::ratio(-3, 10));
        for k in [-3, 0, 7] {
            let h = act(Sl2::H, &WeightVector::basis(&spec, k).unwrap()).unwrap();
            assert_eq!(h.terms.get(&k), Scalar::ratio(4, 5) + Scalar::int(2 * k));
        }
    }

    #[test]
    fn casimir_example() {
        let spec = ModuleSpec::new(Scalar::ratio(-1, 2), Scalar::ratio(-1, 4));
        assert_eq!(casimir_scalar(&spec), Scalar::ratio(-15, 64));
        let w = apply_casimir(&WeightVector::basis(&spec, 0).unwrap()).unwrap();
        assert_eq!(w.terms.get(&0), Scalar::ratio(-15, 64));
        assert_eq!(casimir_scalar(&ModuleSpec::new(0, 0)), Scalar::zero());
    }

    #[test]
    fn finite_dimensions() {
        for a1 in 0..5i64 {
            for a2 in 0..5i64 {
                let spec = ModuleSpec::new(a1, a2);
                assert_eq!(spec.dimension(), Some((a1 + a2 + 1) as usize));
            }
        }
        // Both negative: indices a₂+1 ≤ k ≤ -a₁-1.
        for a1 in -5..0i64 {
            for a2 in -5..0i64 {
                let spec = ModuleSpec::new(a1, a2);
                assert_eq!(spec.case_tag, Case::IV);
                assert_eq!(spec.dimension(), Some((-a1 - a2 - 1).max(0) as usize));
            }
        }
    }

    #[test]
    fn support_rows() {
        let hw = support(&ModuleSpec::new(Scalar::ratio(-17, 10), 0));
        assert_eq!(hw.base, Scalar::ratio(-17, 10));
        assert_eq!(hw.lattice, Lattice::BoundedAbove);
        let lw = support(&ModuleSpec::new(0, Scalar::ratio(-3, 10)));
        assert_eq!(lw.base, Scalar::ratio(3, 10));
        assert_eq!(lw.lattice, Lattice::BoundedBelow);
        let cs = support(&ModuleSpec::new(Scalar::ratio(-1, 2), Scalar::ratio(-1, 4)));
        assert_eq!(cs.base, Scalar::ratio(-1, 4));
        assert_eq!(cs.lattice, Lattice::Full);
    }

    #[test]
    fn malformed_vector_rejected() {
        let spec = ModuleSpec::new(0, Scalar::ratio(-1, 3));
        assert!(WeightVector::basis(&spec, -1).is_err());
        let bad = WeightVector {
            spec: spec.clone(),
            terms: Sparse::singleton(-2, Scalar::one()),
        };
        assert!(matches!(act(Sl2::E, &bad), Err(Error::MalformedVector { .. })));
    }
}
