//! The tensor product `V = N(a₁, a₂) ⊗ N(a, 0)` with basis
//! `z(k, l) = x(k) ⊗ y(l)`, where `y(l) = x(-l)` in `N(a, 0)`.
//!
//! The left factor is one of `N(0, a₂)` with `a₂ < 0`, a principal module
//! `N(-1-x+iy, x+iy)`, or a complementary module with `-1 < a₁, a₂ < 0`;
//! the right factor has `a < 0`. `H` acts on `z(k, l)` by
//! `a₁ - a₂ + a + 2(k - l)`, so weight spaces are the diagonals `k - l = n₀`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Scalar, Tolerance};
use crate::sparse::Sparse;
use crate::unitarity::{SeriesLabel, UnitaryStructure};
use crate::weight_module::{casimir_scalar, ModuleSpec, Sl2};

/// Integrality of `a` and `a₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TensorCase {
    /// `a ∉ ℤ`, `a₂ ∉ ℤ_{<0}`.
    A,
    /// `a ∈ ℤ_{<0}`, `a₂ ∉ ℤ_{<0}`.
    B,
    /// `a ∉ ℤ_{<0}`, `a₁ = 0`, `a₂ ∈ ℤ_{<0}`.
    C,
    /// `a ∈ ℤ_{<0}`, `a₁ = 0`, `a₂ ∈ ℤ_{<0}`.
    D,
}

/// Shape of the left factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LeftKind {
    /// `N(0, a₂)`, `a₂ < 0`.
    LowestWeight,
    Principal,
    Complementary,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TensorSpec {
    pub left: ModuleSpec,
    pub right: ModuleSpec,
    pub tensor_case: TensorCase,
    pub left_kind: LeftKind,
    /// `s = a + a₁ + a₂`.
    pub s: Scalar,
    left_norms: UnitaryStructure,
    right_norms: UnitaryStructure,
}

impl TensorSpec {
    pub fn new(a1: impl Into<Scalar>, a2: impl Into<Scalar>, a: impl Into<Scalar>) -> Result<Self> {
        TensorSpec::with_tolerance(a1, a2, a, Tolerance::default())
    }

    pub fn with_tolerance(
        a1: impl Into<Scalar>,
        a2: impl Into<Scalar>,
        a: impl Into<Scalar>,
        tol: Tolerance,
    ) -> Result<Self> {
        let (a1, a2, a) = (a1.into(), a2.into(), a.into());
        let invalid = |why: &str| Err(Error::InvalidTensor(format!("{why} (a1={a1}, a2={a2}, a={a})")));
        if !a.is_real(&tol) || a.re() >= 0.0 {
            return invalid("right factor N(a,0) needs real a < 0");
        }
        let left = ModuleSpec::with_tolerance(a1.clone(), a2.clone(), tol);
        let right = ModuleSpec::with_tolerance(a.clone(), Scalar::zero(), tol);
        let left_kind = if a1.as_integer(&tol) == Some(0) {
            if !a2.is_real(&tol) || a2.re() >= 0.0 {
                return invalid("N(0,a2) needs real a2 < 0");
            }
            LeftKind::LowestWeight
        } else {
            match crate::unitarity::classify_with(&a1, &a2, &tol).label {
                SeriesLabel::Principal { .. } => {
                    let (x, y) = (a2.re(), a2.im());
                    if !(-1.0..0.0).contains(&x) || y <= 0.0 || (a1.im() - y).abs() > tol.abs_eps {
                        return invalid("principal left factor must be N(-1-x+iy, x+iy) with -1 <= x < 0, y > 0");
                    }
                    LeftKind::Principal
                }
                SeriesLabel::Complementary { .. }
                    if [&a1, &a2].iter().all(|x| x.is_real(&tol) && x.re() > -1.0 && x.re() < 0.0) =>
                {
                    LeftKind::Complementary
                }
                _ => return invalid("unsupported left factor"),
            }
        };
        let a_negint = a.is_neg_integer(&tol);
        let a2_negint = a2.is_neg_integer(&tol);
        let tensor_case = match (a_negint, a2_negint) {
            (false, false) => TensorCase::A,
            (true, false) => TensorCase::B,
            (false, true) => TensorCase::C,
            (true, true) => TensorCase::D,
        };
        let left_norms = UnitaryStructure::new(&left)?;
        let right_norms = UnitaryStructure::new(&right)?;
        Ok(TensorSpec {
            s: &a + &a1 + &a2,
            left,
            right,
            tensor_case,
            left_kind,
            left_norms,
            right_norms,
        })
    }

    pub fn a1(&self) -> &Scalar {
        &self.left.a1
    }

    pub fn a2(&self) -> &Scalar {
        &self.left.a2
    }

    pub fn a(&self) -> &Scalar {
        &self.right.a1
    }

    pub fn tol(&self) -> &Tolerance {
        &self.left.tol
    }

    pub fn a1_is_zero(&self) -> bool {
        self.left_kind == LeftKind::LowestWeight
    }

    pub fn contains(&self, k: i64, l: i64) -> bool {
        l >= 0 && self.left.contains(k)
    }

    /// First `l` on the diagonal `k - l = n₀`.
    pub fn l0(&self, n0: i64) -> i64 {
        if self.a1_is_zero() && n0 < 0 {
            -n0
        } else {
            0
        }
    }

    /// `a₁ - a₂ + a`, the weight of `z(0, 0)`.
    pub fn base_weight(&self) -> Scalar {
        self.a1() - self.a2() + self.a()
    }

    pub fn weight(&self, k: i64, l: i64) -> Scalar {
        self.base_weight() + Scalar::int(2 * (k - l))
    }

    fn ab_family(&self) -> bool {
        matches!(self.tensor_case, TensorCase::A | TensorCase::B)
    }

    fn ac_family(&self) -> bool {
        matches!(self.tensor_case, TensorCase::A | TensorCase::C)
    }

    /// Coefficient of `z(k+1, l)` in `E·z(k, l)`.
    pub fn e_left(&self, k: i64) -> Scalar {
        if self.ab_family() {
            self.a2() - Scalar::int(k)
        } else {
            Scalar::one()
        }
    }

    /// Coefficient of `z(k, l-1)` in `E·z(k, l)`.
    pub fn e_right(&self, l: i64) -> Scalar {
        let l_s = Scalar::int(l);
        if self.ac_family() {
            l_s
        } else {
            &l_s * (self.a() - &l_s + Scalar::one())
        }
    }

    /// Coefficient of `z(k-1, l)` in `F·z(k, l)`.
    pub fn f_left(&self, k: i64) -> Scalar {
        let k_s = Scalar::int(k);
        if self.ab_family() {
            self.a1() + &k_s
        } else {
            &k_s * (self.a2() - &k_s + Scalar::one())
        }
    }

    /// Coefficient of `z(k, l+1)` in `F·z(k, l)`.
    pub fn f_right(&self, l: i64) -> Scalar {
        if self.ac_family() {
            self.a() - Scalar::int(l)
        } else {
            Scalar::one()
        }
    }

    /// `‖z(k,l)‖² = ‖x(k)‖² ‖y(l)‖²` with `‖x(0)‖² = ‖y(0)‖² = 1`.
    pub fn norm_sq(&self, k: i64, l: i64) -> Result<Scalar> {
        if !self.contains(k, l) {
            return Err(Error::MalformedState { k, l });
        }
        Ok(self.left_norms.norm_sq(k)? * self.right_norms.norm_sq(-l)?)
    }

    pub fn ln_norm_sq(&self, k: i64, l: i64) -> Result<f64> {
        if !self.contains(k, l) {
            return Err(Error::MalformedState { k, l });
        }
        Ok(self.left_norms.ln_norm_sq(k)? + self.right_norms.ln_norm_sq(-l)?)
    }

    /// `‖x(k+1)‖²/‖x(k)‖²` in the left factor.
    pub fn left_ratio(&self, k: i64) -> f64 {
        self.left_norms.ratio(k).re()
    }

    /// `‖y(l+1)‖²/‖y(l)‖²` in the right factor.
    pub fn right_ratio(&self, l: i64) -> f64 {
        1.0 / self.right_norms.ratio(-l - 1).re()
    }
}

pub fn tensor_norm_sq(spec: &TensorSpec, k: i64, l: i64) -> Result<Scalar> {
    spec.norm_sq(k, l)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TensorState {
    pub spec: TensorSpec,
    pub terms: Sparse<(i64, i64)>,
}

impl TensorState {
    pub fn basis(spec: &TensorSpec, k: i64, l: i64) -> Result<Self> {
        if !spec.contains(k, l) {
            return Err(Error::MalformedState { k, l });
        }
        Ok(TensorState {
            spec: spec.clone(),
            terms: Sparse::singleton((k, l), Scalar::one()),
        })
    }

    pub fn with_terms(&self, terms: Sparse<(i64, i64)>) -> Self {
        TensorState {
            spec: self.spec.clone(),
            terms,
        }
    }

    /// Squared Hilbert norm of the finitely supported state.
    pub fn norm_sq(&self) -> Result<f64> {
        self.terms
            .iter()
            .map(|(&(k, l), c)| Ok(c.abs().powi(2) * self.spec.norm_sq(k, l)?.re()))
            .sum()
    }
}

pub fn act_tensor(x: Sl2, st: &TensorState) -> Result<TensorState> {
    let spec = &st.spec;
    let tol = spec.tol();
    if let Some(&(k, l)) = st.terms.keys().find(|&&(k, l)| !spec.contains(k, l)) {
        return Err(Error::MalformedState { k, l });
    }
    let mut out = Sparse::new();
    let push = |out: &mut Sparse<(i64, i64)>, (k, l): (i64, i64), coef: Scalar, c: &Scalar| {
        if !spec.contains(k, l) {
            if !coef.approx_zero(tol) {
                return Err(Error::BoundaryLeak {
                    index: vec![k, l],
                    coefficient: coef.to_string(),
                });
            }
            return Ok(());
        }
        out.add_term((k, l), c * coef);
        Ok(())
    };
    for (&(k, l), c) in st.terms.iter() {
        match x {
            Sl2::H => push(&mut out, (k, l), spec.weight(k, l), c)?,
            Sl2::E => {
                push(&mut out, (k + 1, l), spec.e_left(k), c)?;
                push(&mut out, (k, l - 1), spec.e_right(l), c)?;
            }
            Sl2::F => {
                push(&mut out, (k - 1, l), spec.f_left(k), c)?;
                push(&mut out, (k, l + 1), spec.f_right(l), c)?;
            }
        }
    }
    Ok(st.with_terms(out))
}

/// `FE` restricted to the weight space `k - l = n₀`, indexed by `l ≥ l₀`:
/// `FE·z(k,l) = a z(k-1,l-1) + b z(k,l) + c z(k+1,l+1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TridiagonalFE {
    pub spec: TensorSpec,
    pub n0: i64,
    pub l0: i64,
}

impl TridiagonalFE {
    /// `(a, b, c)` at `z(l + n₀, l)`, read off from `F·(E·z)`.
    pub fn coefficients(&self, l: i64) -> Result<(Scalar, Scalar, Scalar)> {
        let k = l + self.n0;
        let z = TensorState::basis(&self.spec, k, l)?;
        let fe = act_tensor(Sl2::F, &act_tensor(Sl2::E, &z)?)?;
        Ok((
            fe.terms.get(&(k - 1, l - 1)),
            fe.terms.get(&(k, l)),
            fe.terms.get(&(k + 1, l + 1)),
        ))
    }

    /// Dense matrix on `l ∈ [l₀, l₀ + dim)`; columns are images of basis vectors.
    pub fn dense(&self, dim: usize) -> Result<Vec<Vec<Scalar>>> {
        let mut m = vec![vec![Scalar::zero(); dim]; dim];
        for j in 0..dim {
            let (a, b, c) = self.coefficients(self.l0 + j as i64)?;
            if j > 0 {
                m[j - 1][j] = a;
            }
            m[j][j] = b;
            if j + 1 < dim {
                m[j + 1][j] = c;
            }
        }
        Ok(m)
    }
}

pub fn fe_tridiagonal(spec: &TensorSpec, n0: i64) -> TridiagonalFE {
    TridiagonalFE {
        spec: spec.clone(),
        n0,
        l0: spec.l0(n0),
    }
}

/// Rank by Gaussian elimination with partial pivoting; exact when every
/// entry is exact, otherwise pivots below `tol.abs_eps` times the largest
/// entry of the matrix count as zero.
pub fn rank(matrix: &[Vec<Scalar>], tol: &Tolerance) -> usize {
    let mut m: Vec<Vec<Scalar>> = matrix.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let exact = m.iter().flatten().all(Scalar::is_exact);
    let scale = m.iter().flatten().map(Scalar::abs).fold(0.0, f64::max);
    let negligible = |x: &Scalar| {
        if exact {
            x.is_zero()
        } else {
            x.abs() <= tol.abs_eps * scale.max(1.0)
        }
    };
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let pivot = (r..rows).max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs())).unwrap();
        if negligible(&m[pivot][c]) {
            continue;
        }
        m.swap(r, pivot);
        for i in r + 1..rows {
            let factor = &m[i][c] / &m[r][c];
            if factor.is_zero() {
                continue;
            }
            for j in c..cols {
                let delta = &factor * &m[r][j];
                m[i][j] = &m[i][j] - &delta;
            }
        }
        r += 1;
    }
    r
}

/// Whether `z, FE·z, …, (FE)^M·z` are independent, `z = z(l₀+n₀, l₀)`.
pub fn cyclicity_witness(spec: &TensorSpec, n0: i64, m: usize) -> Result<bool> {
    let fe = fe_tridiagonal(spec, n0);
    let l0 = fe.l0;
    let mut v = TensorState::basis(spec, l0 + n0, l0)?;
    let mut columns = Vec::with_capacity(m + 1);
    for step in 0..=m {
        columns.push(v.clone());
        if step < m {
            v = act_tensor(Sl2::F, &act_tensor(Sl2::E, &v)?)?;
        }
    }
    let dim = m + 1;
    let matrix: Vec<Vec<Scalar>> = (0..dim)
        .map(|row| {
            let l = l0 + row as i64;
            columns.iter().map(|c| c.terms.get(&(l + n0, l))).collect()
        })
        .collect();
    Ok(rank(&matrix, spec.tol()) == dim)
}

/// Weight index and `FE`-eigenvalue of the target's weight vector `x(k)`,
/// from `χ = χ_Ω - ¼λ² - ½λ`.
pub fn quotient_witness_at(spec: &TensorSpec, target: &ModuleSpec, k: i64) -> Result<(i64, Scalar)> {
    if !target.contains(k) {
        return Err(Error::IndexOutOfSupport(k));
    }
    let lambda = target.h_coeff(k);
    let n0 = ((&lambda - spec.base_weight()) / Scalar::int(2))
        .as_integer(spec.tol())
        .ok_or(Error::SupportMismatch)?;
    let chi = casimir_scalar(target) - Scalar::ratio(1, 4) * &lambda * &lambda - Scalar::ratio(1, 2) * &lambda;
    Ok((n0, chi))
}

pub fn quotient_witness(spec: &TensorSpec, target: &ModuleSpec) -> Result<(i64, Scalar)> {
    quotient_witness_at(spec, target, 0)
}
