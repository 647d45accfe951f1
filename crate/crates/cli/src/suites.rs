//! Invariant suites behind `weightlab verify`.

use std::collections::BTreeMap;

use num_complex::Complex64;

use weightlab::spectrum::{
    complementary_xi_window, generator_residual, principal_tail_exponent, smooth_tail_exponent, xi_oracle,
    ResidualScope,
};
use weightlab::hypergeometric::{theta_integral, theta_quadrature};
use weightlab::weight_module::apply_casimir;
use weightlab::weyl::{sl2_from_weyl, WeylParams, WeylVector};
use weightlab::{
    act, act_tensor, casimir_scalar, full_spectrum, verify_skew_adjoint, CSCandidate, ModuleSpec, Scalar, Sl2,
    TensorSpec, TensorState, Tolerance, WeightVector,
};

use crate::args::Suite;
use crate::document::Entry;

pub const ALL: [Suite; 11] = [
    Suite::Sl2Relations,
    Suite::Casimir,
    Suite::Weyl,
    Suite::SkewAdjoint,
    Suite::Nelson,
    Suite::TensorRelations,
    Suite::GeneratorResidual,
    Suite::XiOracle,
    Suite::PrincipalExclusion,
    Suite::ThetaIntegral,
    Suite::SmoothVectors,
];

pub fn name(suite: Suite) -> &'static str {
    match suite {
        Suite::Sl2Relations => "sl2-relations",
        Suite::Casimir => "casimir",
        Suite::Weyl => "weyl",
        Suite::SkewAdjoint => "skew-adjoint",
        Suite::Nelson => "nelson",
        Suite::TensorRelations => "tensor-relations",
        Suite::GeneratorResidual => "generator-residual",
        Suite::XiOracle => "xi-oracle",
        Suite::PrincipalExclusion => "principal-exclusion",
        Suite::ThetaIntegral => "theta-integral",
        Suite::SmoothVectors => "smooth-vectors",
        Suite::All => "all",
    }
}

/// Truncation used when `--K` is absent. For theta-integral it is the
/// number of quadrature nodes; the scan-based suites ignore it.
pub fn default_k(suite: Suite) -> u32 {
    match suite {
        Suite::Sl2Relations | Suite::Casimir => 30,
        Suite::Weyl => 20,
        Suite::SkewAdjoint => 50,
        Suite::Nelson => 40,
        Suite::TensorRelations => 15,
        Suite::GeneratorResidual => 200,
        Suite::ThetaIntegral => 4096,
        Suite::XiOracle | Suite::PrincipalExclusion | Suite::SmoothVectors | Suite::All => 1,
    }
}

/// Parameters supplied on the command line, if any.
pub struct Overrides {
    pub module: Option<(Scalar, Scalar)>,
    pub tensor: Option<(Scalar, Scalar, Scalar)>,
}

pub struct Context {
    pub tol: Tolerance,
    pub k: u32,
    pub overrides: Overrides,
}

fn r(p: i64, q: i64) -> Scalar {
    Scalar::ratio(p, q)
}

impl Context {
    /// One exact module in each integrality case, plus a principal one.
    fn modules(&self) -> Vec<ModuleSpec> {
        if let Some((a1, a2)) = &self.overrides.module {
            return vec![ModuleSpec::with_tolerance(a1.clone(), a2.clone(), self.tol)];
        }
        [
            (r(-1, 2), r(-1, 4)),
            (r(5, 3), r(-7, 2)),
            (r(2, 7), Scalar::int(-3)),
            (Scalar::int(-2), r(3, 4)),
            (Scalar::int(-2), Scalar::int(-3)),
            (Scalar::int(1), Scalar::int(2)),
            (Scalar::complex(-0.75, 1.5), Scalar::complex(-0.25, 1.5)),
        ]
        .into_iter()
        .map(|(a1, a2)| ModuleSpec::with_tolerance(a1, a2, self.tol))
        .collect()
    }

    /// One representative per unitary series.
    fn unitary_modules(&self) -> Vec<ModuleSpec> {
        if self.overrides.module.is_some() {
            return self.modules();
        }
        [
            (Scalar::complex(-0.75, 1.5), Scalar::complex(-0.25, 1.5)),
            (r(-1, 2), r(-1, 4)),
            (r(-7, 3), r(4, 3)),
            (r(-5, 2), Scalar::zero()),
            (Scalar::zero(), r(-9, 4)),
        ]
        .into_iter()
        .map(|(a1, a2)| ModuleSpec::with_tolerance(a1, a2, self.tol))
        .collect()
    }

    fn tensors(&self, samples: &[(Scalar, Scalar, Scalar)]) -> Result<Vec<TensorSpec>, String> {
        let list = match &self.overrides.tensor {
            Some(t) => vec![t.clone()],
            None => samples.to_vec(),
        };
        list.into_iter()
            .map(|(a1, a2, a)| TensorSpec::with_tolerance(a1, a2, a, self.tol).map_err(|e| e.to_string()))
            .collect()
    }

    /// Samples in the complementary window, where the generators live.
    fn window_tensors(&self) -> Result<Vec<TensorSpec>, String> {
        let f = Scalar::real;
        self.tensors(&[
            (f(-0.5), f(-0.25), f(-0.2)),
            (f(-0.9), f(-0.8), f(-0.2)),
            (f(0.0), f(-0.3), f(-0.4)),
            (f(-0.3), f(-0.4), f(-0.2)),
        ])
    }
}

impl Context {
    /// Samples where the `w(k)` family is defined.
    fn smooth_tensors(&self) -> Result<Vec<TensorSpec>, String> {
        let f = Scalar::real;
        self.tensors(&[
            (f(-0.5), f(-0.25), f(-0.2)),
            (f(-0.3), f(-0.4), f(-0.2)),
            (f(0.0), f(-0.3), f(-0.4)),
            (f(-0.1), f(-0.2), f(-0.6)),
        ])
    }
}

fn module_params(spec: &ModuleSpec) -> BTreeMap<String, Scalar> {
    BTreeMap::from([("a1".into(), spec.a1.clone()), ("a2".into(), spec.a2.clone())])
}

fn tensor_params(spec: &TensorSpec) -> BTreeMap<String, Scalar> {
    BTreeMap::from([
        ("a1".into(), spec.a1().clone()),
        ("a2".into(), spec.a2().clone()),
        ("a".into(), spec.a().clone()),
    ])
}

fn check(suite: Suite, params: BTreeMap<String, Scalar>, value: Option<f64>, passed: bool) -> Entry {
    Entry {
        kind: "check".into(),
        params,
        label: Some(name(suite).into()),
        generator: None,
        value: value.filter(|v| v.is_finite()),
        passed: Some(passed),
    }
}

fn indices(spec: &ModuleSpec, k: i64) -> impl Iterator<Item = i64> + '_ {
    (-k..=k).filter(|&j| spec.contains(j))
}

fn relations_hold(spec: &ModuleSpec, k: i64) -> Result<bool, weightlab::Error> {
    let v = WeightVector::basis(spec, k)?;
    let ap = |x: Sl2, v: &WeightVector| act(x, v);
    let comm = |x: Sl2, y: Sl2| -> Result<_, weightlab::Error> {
        Ok(ap(x, &ap(y, &v)?)?.terms.sub(&ap(y, &ap(x, &v)?)?.terms))
    };
    let two = Scalar::int(2);
    Ok(comm(Sl2::H, Sl2::E)? == ap(Sl2::E, &v)?.terms.scale(&two)
        && comm(Sl2::H, Sl2::F)? == ap(Sl2::F, &v)?.terms.scale(&-two.clone())
        && comm(Sl2::E, Sl2::F)? == ap(Sl2::H, &v)?.terms)
}

fn casimir_holds(spec: &ModuleSpec, k: i64) -> Result<bool, weightlab::Error> {
    let v = WeightVector::basis(spec, k)?;
    Ok(apply_casimir(&v)?.terms == v.terms.scale(&casimir_scalar(spec)))
}

/// `x(k)` corresponds to the Weyl basis vector at `(k, -k)`.
fn weyl_agrees(spec: &ModuleSpec, k: i64) -> Result<bool, weightlab::Error> {
    let params = WeylParams::new(vec![spec.a1.clone(), spec.a2.clone()], &spec.tol);
    let w = WeylVector::basis(&params, vec![k, -k])?;
    let v = WeightVector::basis(spec, k)?;
    for x in [Sl2::E, Sl2::F, Sl2::H] {
        let lhs = sl2_from_weyl(x, &w, &spec.tol)?;
        let mapped: weightlab::sparse::Sparse<Vec<i64>> =
            act(x, &v)?.terms.iter().map(|(&j, c)| (vec![j, -j], c.clone())).collect();
        if lhs.terms != mapped {
            return Ok(false);
        }
    }
    Ok(true)
}

fn tensor_relations_hold(spec: &TensorSpec, k: i64, l: i64) -> Result<bool, weightlab::Error> {
    let z = TensorState::basis(spec, k, l)?;
    let ap = |x: Sl2, v: &TensorState| act_tensor(x, v);
    let comm = |x: Sl2, y: Sl2| -> Result<_, weightlab::Error> {
        Ok(ap(x, &ap(y, &z)?)?.terms.sub(&ap(y, &ap(x, &z)?)?.terms))
    };
    let two = Scalar::int(2);
    Ok(comm(Sl2::E, Sl2::F)? == ap(Sl2::H, &z)?.terms
        && comm(Sl2::H, Sl2::E)? == ap(Sl2::E, &z)?.terms.scale(&two)
        && comm(Sl2::H, Sl2::F)? == ap(Sl2::F, &z)?.terms.scale(&-two.clone()))
}

/// Per-basis-vector predicate over `|k| ≤ K` for every module in the panel.
fn module_suite(
    ctx: &Context,
    suite: Suite,
    pred: fn(&ModuleSpec, i64) -> Result<bool, weightlab::Error>,
    diagnostics: &mut Vec<String>,
) -> Vec<Entry> {
    let k = ctx.k as i64;
    ctx.modules()
        .iter()
        .map(|spec| {
            let mut failed = Vec::new();
            for j in indices(spec, k) {
                match pred(spec, j) {
                    Ok(true) => {}
                    Ok(false) => failed.push(j),
                    Err(e) => {
                        diagnostics.push(format!("{}: N({}, {}) at k = {j}: {e}", name(suite), spec.a1, spec.a2));
                        failed.push(j);
                    }
                }
            }
            if !failed.is_empty() {
                diagnostics.push(format!("{}: N({}, {}) fails at k = {failed:?}", name(suite), spec.a1, spec.a2));
            }
            check(suite, module_params(spec), None, failed.is_empty())
        })
        .collect()
}

pub fn run(ctx: &Context, suite: Suite, diagnostics: &mut Vec<String>) -> Vec<Entry> {
    let k = ctx.k;
    let fail = |diagnostics: &mut Vec<String>, params, msg: String| {
        diagnostics.push(format!("{}: {msg}", name(suite)));
        check(suite, params, None, false)
    };
    match suite {
        Suite::All => ALL
            .iter()
            .flat_map(|&s| {
                let sub = Context {
                    tol: ctx.tol,
                    k: default_k(s),
                    overrides: Overrides {
                        module: ctx.overrides.module.clone(),
                        tensor: ctx.overrides.tensor.clone(),
                    },
                };
                run(&sub, s, diagnostics)
            })
            .collect(),
        Suite::Sl2Relations => module_suite(ctx, suite, relations_hold, diagnostics),
        Suite::Casimir => module_suite(ctx, suite, casimir_holds, diagnostics),
        Suite::Weyl => module_suite(ctx, suite, weyl_agrees, diagnostics),
        Suite::SkewAdjoint | Suite::Nelson => ctx
            .unitary_modules()
            .iter()
            .map(|spec| {
                let res = if suite == Suite::Nelson {
                    weightlab::unitarity::nelson_asymmetry(spec, k as i64)
                } else {
                    verify_skew_adjoint(spec, k as i64)
                };
                match res {
                    Ok(v) => check(suite, module_params(spec), Some(v), v < 1e-10),
                    Err(e) => fail(diagnostics, module_params(spec), e.to_string()),
                }
            })
            .collect(),
        Suite::TensorRelations => {
            let specs = match ctx.tensors(&[
                (r(-1, 2), r(-1, 4), r(-1, 5)),
                (Scalar::zero(), r(-7, 2), r(-1, 3)),
                (r(-1, 2), r(-1, 4), Scalar::int(-2)),
                (Scalar::zero(), Scalar::int(-2), r(-2, 5)),
                (Scalar::zero(), Scalar::int(-2), Scalar::int(-3)),
            ]) {
                Ok(s) => s,
                Err(e) => return vec![fail(diagnostics, BTreeMap::new(), e)],
            };
            let k = k as i64;
            specs
                .iter()
                .map(|spec| {
                    let mut ok = true;
                    for kk in (-k..=k).filter(|&j| spec.left.contains(j)) {
                        for l in 0..=k {
                            if !matches!(tensor_relations_hold(spec, kk, l), Ok(true)) {
                                diagnostics.push(format!("{}: z({kk}, {l}) fails", name(suite)));
                                ok = false;
                            }
                        }
                    }
                    check(suite, tensor_params(spec), None, ok)
                })
                .collect()
        }
        Suite::GeneratorResidual => {
            let specs = match ctx.window_tensors() {
                Ok(s) => s,
                Err(e) => return vec![fail(diagnostics, BTreeMap::new(), e)],
            };
            let mut out = Vec::new();
            for spec in &specs {
                let report = match full_spectrum(spec) {
                    Ok(r) => r,
                    Err(e) => {
                        out.push(fail(diagnostics, tensor_params(spec), e.to_string()));
                        continue;
                    }
                };
                let mut descs = report.entries.clone();
                if let Some(lattice) = &report.hw_lattice {
                    descs.extend(lattice.members(spec, 1));
                }
                for d in &descs {
                    let mut params = tensor_params(spec);
                    params.insert("n0".into(), Scalar::int(d.n0));
                    params.insert("xi".into(), d.xi.clone());
                    let mut e = match generator_residual(spec, d, k as usize, ResidualScope::Interior) {
                        Ok(v) => check(suite, params, Some(v), v < 1e-8),
                        Err(e) => fail(diagnostics, params, e.to_string()),
                    };
                    e.label = Some(format!("{} {}", name(suite), d.generator.tag()));
                    out.push(e);
                }
            }
            out
        }
        Suite::XiOracle => {
            let specs = match ctx.window_tensors() {
                Ok(s) => s,
                Err(e) => return vec![fail(diagnostics, BTreeMap::new(), e)],
            };
            specs
                .iter()
                .map(|spec| match full_spectrum(spec) {
                    Ok(report) => {
                        let c = xi_oracle(&report, 1e-3);
                        let gap = c
                            .predicted
                            .iter()
                            .zip(&c.detected)
                            .map(|(p, d)| (p - d).abs())
                            .fold(0.0, f64::max);
                        if !c.agrees {
                            diagnostics.push(format!(
                                "{}: predicted {:?}, detected {:?}",
                                name(suite),
                                c.predicted,
                                c.detected
                            ));
                        }
                        check(suite, tensor_params(spec), Some(gap), c.agrees)
                    }
                    Err(e) => fail(diagnostics, tensor_params(spec), e.to_string()),
                })
                .collect()
        }
        Suite::PrincipalExclusion => {
            let specs = match ctx.window_tensors() {
                Ok(s) => s,
                Err(e) => return vec![fail(diagnostics, BTreeMap::new(), e)],
            };
            let mut out = Vec::new();
            for spec in &specs {
                let Some((lo, _)) = complementary_xi_window(spec) else {
                    out.push(fail(diagnostics, tensor_params(spec), "no real ξ window".into()));
                    continue;
                };
                // Just below the window edge, then progressively deeper.
                for dx in [1e-9, 0.3, 2.0, 16.0] {
                    let xi = lo - dx;
                    let mut params = tensor_params(spec);
                    params.insert("xi".into(), Scalar::real(xi));
                    let principal = CSCandidate::new(spec, xi).map(|c| c.in_principal_range());
                    out.push(match (principal, principal_tail_exponent(spec, xi)) {
                        (Ok(true), Ok(e)) => check(suite, params, Some(e), e >= -1.05),
                        (Ok(false), _) => fail(diagnostics, params, format!("ξ = {xi} is not in the principal range")),
                        (Err(e), _) | (_, Err(e)) => fail(diagnostics, params, e.to_string()),
                    });
                }
            }
            out
        }
        Suite::ThetaIntegral => {
            let mut out = Vec::new();
            for nu in [-0.9, -0.5, -0.3, 0.2] {
                for t in [0.1, 0.5, 0.9] {
                    let params = BTreeMap::from([("nu".to_string(), Scalar::real(nu)), ("t".to_string(), Scalar::real(t))]);
                    out.push(match theta_integral(&Scalar::real(nu), t) {
                        Ok(series) => {
                            let quad = theta_quadrature(Complex64::new(nu, 0.0), t, k as usize);
                            let gap = (series.to_complex() - quad).norm();
                            check(suite, params, Some(gap), gap < 1e-8)
                        }
                        Err(e) => fail(diagnostics, params, e.to_string()),
                    });
                }
            }
            out
        }
        Suite::SmoothVectors => {
            let specs = match ctx.smooth_tensors() {
                Ok(s) => s,
                Err(e) => return vec![fail(diagnostics, BTreeMap::new(), e)],
            };
            let mut out = Vec::new();
            for spec in &specs {
                // Zeroth moment summable, first moment not: w(0) is not smooth.
                for (order, want_summable) in [(0u32, true), (1, false)] {
                    let mut params = tensor_params(spec);
                    params.insert("order".into(), Scalar::int(order as i64));
                    out.push(match smooth_tail_exponent(spec, 0, order) {
                        Ok(e) => check(suite, params, Some(e), (e < -1.0) == want_summable),
                        Err(e) => fail(diagnostics, params, e.to_string()),
                    });
                }
            }
            out
        }
    }
}
