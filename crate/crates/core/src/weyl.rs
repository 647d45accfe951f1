//! The Weyl-algebra module `W(a)` and the `sl(2)` action obtained from
//! `E ↦ q₁p₂`, `F ↦ q₂p₁`, `H ↦ q₁p₁ - q₂p₂`.
//!
//! Only used as an independent oracle for [`crate::weight_module::act`]:
//! under `x(k) ↔ x((k, -k))` the two actions agree coefficient by coefficient.

use crate::error::{Error, Result};
use crate::scalar::{Scalar, Tolerance};
use crate::sparse::Sparse;
use crate::weight_module::Sl2;

#[derive(Clone, Debug, PartialEq)]
pub struct WeylParams {
    a: Vec<Scalar>,
    /// Integer value of `aᵢ` when it is one (exactly, or within `abs_eps`).
    int_value: Vec<Option<i64>>,
}

impl WeylParams {
    pub fn new(a: Vec<Scalar>, tol: &Tolerance) -> Self {
        let int_value = a.iter().map(|x| x.as_integer(tol)).collect();
        WeylParams { a, int_value }
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[Scalar] {
        &self.a
    }

    pub fn neg_int(&self, i: usize) -> bool {
        matches!(self.int_value[i], Some(n) if n < 0)
    }
}

/// `k ∈ 𝒦(a)`: for every integral `aᵢ`, `aᵢ + kᵢ < 0` exactly when `aᵢ < 0`.
pub fn kset_member(params: &WeylParams, k: &[i64]) -> bool {
    k.len() == params.rank()
        && params
            .int_value
            .iter()
            .zip(k)
            .all(|(ai, &ki)| match ai {
                Some(n) => (n + ki < 0) == (*n < 0),
                None => true,
            })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeylGen {
    Q(usize),
    P(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeylVector {
    pub params: WeylParams,
    pub terms: Sparse<Vec<i64>>,
}

impl WeylVector {
    pub fn basis(params: &WeylParams, k: Vec<i64>) -> Result<Self> {
        if !kset_member(params, &k) {
            return Err(Error::MalformedVector { index: k });
        }
        Ok(WeylVector {
            params: params.clone(),
            terms: Sparse::singleton(k, Scalar::one()),
        })
    }

    fn with_terms(&self, terms: Sparse<Vec<i64>>) -> Self {
        WeylVector {
            params: self.params.clone(),
            terms,
        }
    }

    fn check(&self) -> Result<()> {
        match self.terms.keys().find(|k| !kset_member(&self.params, k)) {
            Some(k) => Err(Error::MalformedVector { index: k.clone() }),
            None => Ok(()),
        }
    }
}

pub fn weyl_act(gen: WeylGen, v: &WeylVector, tol: &Tolerance) -> Result<WeylVector> {
    v.check()?;
    let p = &v.params;
    let mut out = Sparse::new();
    for (k, c) in v.terms.iter() {
        let (i, step) = match gen {
            WeylGen::Q(i) => (i, 1),
            WeylGen::P(i) => (i, -1),
        };
        let aik = &p.a[i] + Scalar::int(k[i]);
        let coef = match (gen, p.neg_int(i)) {
            (WeylGen::Q(_), true) => aik + Scalar::one(),
            (WeylGen::Q(_), false) => Scalar::one(),
            (WeylGen::P(_), true) => Scalar::one(),
            (WeylGen::P(_), false) => aik,
        };
        let mut target = k.clone();
        target[i] += step;
        if !kset_member(p, &target) {
            if !coef.approx_zero(tol) {
                return Err(Error::BoundaryLeak {
                    index: target,
                    coefficient: coef.to_string(),
                });
            }
            continue;
        }
        out.add_term(target, c * coef);
    }
    Ok(v.with_terms(out))
}

/// `sl(2)` action on vectors supported on `𝒦₀(a) = {k₁ + k₂ = 0}`.
pub fn sl2_from_weyl(x: Sl2, v: &WeylVector, tol: &Tolerance) -> Result<WeylVector> {
    if let Some(k) = v.terms.keys().find(|k| k.len() != 2 || k[0] + k[1] != 0) {
        return Err(Error::MalformedVector { index: k.clone() });
    }
    let qp = |i: usize, j: usize| -> Result<WeylVector> {
        weyl_act(WeylGen::Q(i), &weyl_act(WeylGen::P(j), v, tol)?, tol)
    };
    match x {
        Sl2::E => qp(0, 1),
        Sl2::F => qp(1, 0),
        Sl2::H => {
            let h1 = qp(0, 0)?;
            let h2 = qp(1, 1)?;
            Ok(v.with_terms(h1.terms.sub(&h2.terms)))
        }
    }
}
