//! Parameter samplers and reference checks shared by the integration tests.
#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use weightlab::weight_module::{apply_casimir, Case};
use weightlab::weyl::{sl2_from_weyl, WeylParams, WeylVector};
use weightlab::{act, casimir_scalar, ModuleSpec, Scalar, Sl2, WeightVector};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// A rational `p/q` with `|p/q| < bound`, `q ≤ 7`, never an integer.
pub fn fraction(rng: &mut StdRng, bound: i64) -> Scalar {
    let q = rng.random_range(2..=7);
    loop {
        let p = rng.random_range(-bound * q + 1..bound * q);
        if p % q != 0 {
            return Scalar::ratio(p, q);
        }
    }
}

/// Exact parameter pairs `(a₁, a₂)` in the given integrality case.
pub fn case_samples(case: Case, count: usize, seed: u64) -> Vec<(Scalar, Scalar)> {
    let mut r = rng(seed);
    let generic = |r: &mut StdRng| {
        if r.random_bool(0.25) {
            Scalar::int(r.random_range(0..6))
        } else {
            fraction(r, 6)
        }
    };
    (0..count)
        .map(|_| match case {
            Case::I => (generic(&mut r), generic(&mut r)),
            Case::II => (generic(&mut r), Scalar::int(r.random_range(-6..0))),
            Case::III => (Scalar::int(r.random_range(-6..0)), generic(&mut r)),
            Case::IV => (Scalar::int(r.random_range(-6..0)), Scalar::int(r.random_range(-6..0))),
        })
        .collect()
}

/// Indices of the module with `|k| ≤ kmax`.
pub fn indices(spec: &ModuleSpec, kmax: i64) -> Vec<i64> {
    (-kmax..=kmax).filter(|&k| spec.contains(k)).collect()
}

fn apply(x: Sl2, v: &WeightVector) -> WeightVector {
    act(x, v).unwrap()
}

/// `[H,E] = 2E`, `[H,F] = -2F`, `[E,F] = H` on one basis vector.
pub fn relations_hold(spec: &ModuleSpec, k: i64) -> bool {
    let v = WeightVector::basis(spec, k).unwrap();
    let two = Scalar::int(2);
    let comm = |x: Sl2, y: Sl2| apply(x, &apply(y, &v)).terms.sub(&apply(y, &apply(x, &v)).terms);
    comm(Sl2::H, Sl2::E) == apply(Sl2::E, &v).terms.scale(&two)
        && comm(Sl2::H, Sl2::F) == apply(Sl2::F, &v).terms.scale(&-two.clone())
        && comm(Sl2::E, Sl2::F) == apply(Sl2::H, &v).terms
}

/// `Ω x(k) = casimir_scalar · x(k)`.
pub fn casimir_holds(spec: &ModuleSpec, k: i64) -> bool {
    let v = WeightVector::basis(spec, k).unwrap();
    apply_casimir(&v).unwrap().terms == v.terms.scale(&casimir_scalar(spec))
}

/// The Weyl-algebra realization agrees with the module action under
/// `x(k) ↔ x((k, -k))`.
pub fn weyl_agrees(spec: &ModuleSpec, k: i64) -> bool {
    let params = WeylParams::new(vec![spec.a1.clone(), spec.a2.clone()], &spec.tol);
    let w = WeylVector::basis(&params, vec![k, -k]).unwrap();
    let v = WeightVector::basis(spec, k).unwrap();
    [Sl2::E, Sl2::F, Sl2::H].into_iter().all(|x| {
        let lhs = sl2_from_weyl(x, &w, &spec.tol).unwrap();
        let rhs = apply(x, &v);
        let mapped: weightlab::sparse::Sparse<Vec<i64>> =
            rhs.terms.iter().map(|(&j, c)| (vec![j, -j], c.clone())).collect();
        lhs.terms == mapped
    })
}

/// The four unitary families sampled in [`series_samples`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Series {
    Principal,
    Complementary,
    HighestWeight,
    LowestWeight,
}

pub const SERIES: [Series; 4] = [Series::Principal, Series::Complementary, Series::HighestWeight, Series::LowestWeight];

/// Canonical representatives of a unitary family, shifted along
/// `(a₁, a₂) → (a₁ - n, a₂ + n)` for the discrete families with non-integer
/// `λ` so the samples do not all sit at the reduced point.
pub fn series_samples(series: Series, count: usize, seed: u64) -> Vec<ModuleSpec> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| match series {
            Series::Principal => {
                let x = -r.random_range(1..=8) as f64 / 8.0;
                let y = r.random_range(1..=40) as f64 / 10.0;
                ModuleSpec::new(Scalar::complex(-1.0 - x, y), Scalar::complex(x, y))
            }
            Series::Complementary => {
                let q = r.random_range(2..=9);
                let a1 = Scalar::ratio(-r.random_range(1..q), q);
                let a2 = Scalar::ratio(-r.random_range(1..q), q);
                let n = r.random_range(-3..=3);
                ModuleSpec::new(a1 - Scalar::int(n), a2 + Scalar::int(n))
            }
            Series::HighestWeight => {
                let lambda = Scalar::ratio(r.random_range(1..60), r.random_range(1..=7));
                ModuleSpec::new(-lambda, Scalar::zero())
            }
            Series::LowestWeight => {
                let lambda = Scalar::ratio(r.random_range(1..60), r.random_range(1..=7));
                ModuleSpec::new(Scalar::zero(), -lambda)
            }
        })
        .collect()
}

/// Discrete spectrum of `N(a₁, a₂) ⊗ N(a, 0)` written out from the
/// decomposition theorem, independently of the engine.
#[derive(Clone, Debug, PartialEq)]
pub struct Expected {
    /// Finitely many `(b₁, b₂)`, sorted.
    pub finite: Vec<(f64, f64)>,
    /// Infinite highest weight family: largest `n` and its `b₁`.
    pub lattice_top: Option<(i64, f64)>,
}

/// Largest integer `n` with `2n < bound`.
fn top_half(bound: f64) -> i64 {
    (bound / 2.0).ceil() as i64 - 1
}

/// The three cases: `a₁ = 0` with real `a₂ < 0`; a principal left factor
/// `N(-1-x+iy, x+iy)`; and `-1 < a₁, a₂ < 0`.
pub fn theorem_spectrum(a1: (f64, f64), a2: (f64, f64), a: f64) -> Expected {
    let mut finite = Vec::new();
    let mut lattice_top = None;
    if a1 == (0.0, 0.0) {
        // N(0, A) ⊗ N(B, 0).
        let (big_a, big_b) = (a2.0, a);
        if -1.0 < big_a + big_b && big_a + big_b < 0.0 {
            finite.push((big_b, big_a));
        }
        let mut n = 0;
        while 2.0 * (n as f64) < big_a - big_b - 1.0 {
            finite.push((big_b - big_a + 2.0 * n as f64, 0.0));
            n += 1;
        }
        let mut n = 0;
        while big_a - big_b + 1.0 < 2.0 * n as f64 {
            finite.push((0.0, big_a - big_b - 2.0 * n as f64));
            n -= 1;
        }
    } else if a1.1 != 0.0 {
        let x = a2.0;
        let n = top_half(2.0 * x - a);
        lattice_top = Some((n, -1.0 - 2.0 * x + a + 2.0 * n as f64));
    } else {
        let (a1, a2) = (a1.0, a2.0);
        let n = top_half(a2 - a1 - a - 1.0);
        lattice_top = Some((n, a + a1 - a2 + 2.0 * n as f64));
        let s = a + a1 + a2;
        if -1.0 < s && s < 0.0 {
            finite.push((a + a1, a2));
        }
        let t = a1 + a2 - a;
        if -2.0 < t && t < -1.0 {
            finite.push((a1, a2 - a));
        }
    }
    finite.sort_by(|p, q| p.partial_cmp(q).unwrap());
    Expected { finite, lattice_top }
}

/// The engine's report in the same shape as [`theorem_spectrum`].
pub fn reported(report: &weightlab::SpectrumReport) -> Expected {
    let mut finite: Vec<(f64, f64)> = report.entries.iter().map(|e| (e.b1.re(), e.b2.re())).collect();
    finite.sort_by(|p, q| p.partial_cmp(q).unwrap());
    let lattice_top = report.hw_lattice.as_ref().map(|l| (l.top_n0, l.top_lambda.re()));
    Expected { finite, lattice_top }
}

pub fn same_spectrum(x: &Expected, y: &Expected) -> bool {
    let close = |p: f64, q: f64| (p - q).abs() < 1e-9;
    x.finite.len() == y.finite.len()
        && x.finite.iter().zip(&y.finite).all(|(p, q)| close(p.0, q.0) && close(p.1, q.1))
        && match (x.lattice_top, y.lattice_top) {
            (None, None) => true,
            (Some((n, b)), Some((m, c))) => n == m && close(b, c),
            _ => false,
        }
}

/// Tensor specs `(a₁, a₂, a)` covering the branch windows of the three cases:
/// nine with `a₁ = 0`, nine principal, twenty-seven complementary.
pub fn theorem_grid() -> Vec<weightlab::TensorSpec> {
    use weightlab::TensorSpec;
    let mut out = Vec::new();
    for big_a in [-0.3, -1.5, -2.7] {
        for big_b in [-0.4, -1.2, -3.9] {
            out.push(TensorSpec::new(0.0, big_a, big_b).unwrap());
        }
    }
    for (i, x) in [-1.0, -0.5, -0.2].into_iter().enumerate() {
        for (j, a) in [-0.2, -1.3, -4.1].into_iter().enumerate() {
            let y = 0.3 + 0.7 * (3 * i + j) as f64;
            out.push(TensorSpec::new(Scalar::complex(-1.0 - x, y), Scalar::complex(x, y), a).unwrap());
        }
    }
    for a1 in [-0.1, -0.5, -0.9] {
        for a2 in [-0.1, -0.5, -0.9] {
            for a in [-0.05, -0.3, -2.5] {
                out.push(TensorSpec::new(a1, a2, a).unwrap());
            }
        }
    }
    out
}

pub fn theorem_for(spec: &weightlab::TensorSpec) -> Expected {
    let c = |x: &Scalar| {
        let z = x.to_complex();
        (z.re, z.im)
    };
    theorem_spectrum(c(spec.a1()), c(spec.a2()), spec.a().re())
}
