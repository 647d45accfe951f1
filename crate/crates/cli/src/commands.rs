//! Subcommand implementations. Each returns the report and an exit code,
//! or an error that is printed to stderr with no report.

use std::collections::BTreeMap;

use weightlab::hypergeometric::{hyp2f1_with, Hyp2F1Params};
use weightlab::{classify_with, full_spectrum, Error, Scalar, SubmoduleDescriptor, SubmoduleKind, TensorSpec, Tolerance};

use crate::args::{Command, HypArgs, ModuleArgs, SpectrumArgs, VerifyArgs};
use crate::document::{Document, Entry, GeneratorHead};
use crate::suites::{self, Context, Overrides};

/// Exit codes.
pub const OK: u8 = 0;
pub const FAILED: u8 = 1;
pub const USAGE: u8 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn usage(message: impl ToString) -> Self {
        CliError { code: USAGE, message: message.to_string() }
    }

    fn failed(message: impl ToString) -> Self {
        CliError { code: FAILED, message: message.to_string() }
    }
}

/// `abs_eps` from `WEIGHTLAB_EPS`, if set.
pub fn tolerance_from_env(value: Option<&str>) -> Result<Tolerance, CliError> {
    let Some(raw) = value else {
        return Ok(Tolerance::default());
    };
    let eps: f64 = raw
        .trim()
        .parse()
        .map_err(|_| CliError::usage(format!("WEIGHTLAB_EPS must be a number, got `{raw}`")))?;
    Tolerance::default().with_abs(eps).map_err(CliError::usage)
}

pub fn run(command: &Command, tol: Tolerance) -> Result<(Document, u8), CliError> {
    match command {
        Command::Classify(a) => classify(a, tol),
        Command::Spectrum(a) => spectrum(a, tol),
        Command::Verify(a) => verify(a, tol),
        Command::Hyp2f1(a) => hyp2f1(a, tol),
    }
}

fn mode<'a>(values: impl IntoIterator<Item = &'a Scalar>) -> &'static str {
    if values.into_iter().all(Scalar::is_exact) {
        "exact"
    } else {
        "float"
    }
}

fn classify(args: &ModuleArgs, tol: Tolerance) -> Result<(Document, u8), CliError> {
    let mut doc = Document::new("classify");
    doc.param("a1", &args.a1);
    doc.param("a2", &args.a2);
    doc.param("mode", mode([&args.a1, &args.a2]));
    let c = classify_with(&args.a1, &args.a2, &tol);
    if c.boundary {
        doc.diagnostics.push("a window test was decided within abs_eps of its boundary".into());
    }
    let mut params = BTreeMap::new();
    if let Some((b1, b2)) = c.label.canonical_params() {
        params.insert("a1".to_string(), b1);
        params.insert("a2".to_string(), b2);
    }
    doc.entries.push(Entry {
        kind: "classification".into(),
        params,
        label: Some(c.label.name().into()),
        ..Entry::default()
    });
    let code = if c.label.is_unitarizable() { OK } else { FAILED };
    Ok((doc, code))
}

fn kind_name(kind: &SubmoduleKind) -> &'static str {
    match kind {
        SubmoduleKind::HighestWeight { .. } => "HighestWeight",
        SubmoduleKind::LowestWeight { .. } => "LowestWeight",
        SubmoduleKind::Complementary { .. } => "Complementary",
    }
}

fn generator_head(spec: &TensorSpec, d: &SubmoduleDescriptor, head: usize) -> GeneratorHead {
    GeneratorHead {
        kind: d.generator.tag().into(),
        coefficients_head: d.coefficients(spec, head - 1),
    }
}

fn descriptor_entry(spec: &TensorSpec, d: &SubmoduleDescriptor, head: usize) -> Entry {
    Entry {
        kind: kind_name(&d.kind).into(),
        params: BTreeMap::from([
            ("b1".to_string(), d.b1.clone()),
            ("b2".to_string(), d.b2.clone()),
            ("n0".to_string(), Scalar::int(d.n0)),
            ("xi".to_string(), d.xi.clone()),
        ]),
        label: Some(d.label.name().into()),
        generator: Some(generator_head(spec, d, head)),
        ..Entry::default()
    }
}

fn spectrum(args: &SpectrumArgs, tol: Tolerance) -> Result<(Document, u8), CliError> {
    let mut doc = Document::new("spectrum");
    doc.param("a1", &args.a1);
    doc.param("a2", &args.a2);
    doc.param("a", &args.a);
    doc.param("mode", mode([&args.a1, &args.a2, &args.a]));
    let spec = TensorSpec::with_tolerance(args.a1.clone(), args.a2.clone(), args.a.clone(), tol).map_err(|e| match e {
        Error::InvalidTensor(_) => CliError::usage(e),
        _ => CliError::failed(e),
    })?;
    let report = full_spectrum(&spec).map_err(CliError::failed)?;
    let head = args.head as usize;
    for d in &report.entries {
        if d.boundary {
            doc.diagnostics.push(format!("N({}, {}): window test decided within abs_eps", d.b1, d.b2));
        }
        doc.entries.push(descriptor_entry(&spec, d, head));
    }
    if let Some(lattice) = &report.hw_lattice {
        let top = &lattice.members(&spec, 1)[0];
        doc.hw_lattice = Some(Entry {
            kind: "HighestWeightLattice".into(),
            params: BTreeMap::from([
                ("top_n0".to_string(), Scalar::int(lattice.top_n0)),
                ("top_lambda".to_string(), lattice.top_lambda.clone()),
                ("step".to_string(), Scalar::int(lattice.step)),
            ]),
            label: Some(top.label.name().into()),
            generator: Some(generator_head(&spec, top, head)),
            ..Entry::default()
        });
        if lattice.boundary {
            doc.diagnostics.push("lattice top decided within abs_eps".into());
        }
    }
    doc.diagnostics.extend(report.excluded.iter().cloned());
    let mut code = OK;
    if args.oracle {
        let check = weightlab::spectrum::xi_oracle(&report, 1e-3);
        let gap = check
            .predicted
            .iter()
            .zip(&check.detected)
            .map(|(p, d)| (p - d).abs())
            .fold(0.0, f64::max);
        doc.entries.push(Entry {
            kind: "check".into(),
            label: Some("xi-oracle".into()),
            value: Some(gap),
            passed: Some(check.agrees),
            ..Entry::default()
        });
        if !check.agrees {
            doc.diagnostics.push(format!("xi-oracle: predicted {:?}, detected {:?}", check.predicted, check.detected));
            code = FAILED;
        }
    }
    Ok((doc, code))
}

fn verify(args: &VerifyArgs, tol: Tolerance) -> Result<(Document, u8), CliError> {
    let mut doc = Document::new("verify");
    let name = suites::name(args.suite);
    doc.param("suite", name);
    let k = args.k.unwrap_or_else(|| suites::default_k(args.suite));
    doc.param("K", k);
    let module = args.a1.clone().zip(args.a2.clone());
    let tensor = match (&module, &args.a) {
        (Some((a1, a2)), Some(a)) => {
            doc.param("a", a);
            Some((a1.clone(), a2.clone(), a.clone()))
        }
        _ => None,
    };
    if let Some((a1, a2)) = &module {
        doc.param("a1", a1);
        doc.param("a2", a2);
    }
    let ctx = Context {
        tol,
        k,
        overrides: Overrides { module, tensor },
    };
    let mut diagnostics = Vec::new();
    doc.entries = suites::run(&ctx, args.suite, &mut diagnostics);
    doc.diagnostics = diagnostics;
    let passed = doc.entries.iter().all(|e| e.passed == Some(true));
    Ok((doc, if passed { OK } else { FAILED }))
}

fn hyp2f1(args: &HypArgs, tol: Tolerance) -> Result<(Document, u8), CliError> {
    let mut doc = Document::new("hyp2f1");
    doc.param("alpha", &args.alpha);
    doc.param("beta", &args.beta);
    doc.param("gamma", &args.gamma);
    doc.param("z", &args.z);
    doc.param("mode", mode([&args.alpha, &args.beta, &args.gamma, &args.z]));
    let p = Hyp2F1Params::new(args.alpha.clone(), args.beta.clone(), args.gamma.clone());
    let value = hyp2f1_with(&p, &args.z, &tol).map_err(CliError::failed)?;
    doc.entries.push(Entry {
        kind: "value".into(),
        params: BTreeMap::from([("value".to_string(), value)]),
        ..Entry::default()
    });
    Ok((doc, OK))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eps_override() {
        assert_eq!(tolerance_from_env(None).unwrap(), Tolerance::default());
        assert_eq!(tolerance_from_env(Some("1e-6")).unwrap().abs_eps, 1e-6);
        for bad in ["", "abc", "0", "-1e-3", "inf"] {
            assert_eq!(tolerance_from_env(Some(bad)).unwrap_err().code, USAGE, "{bad}");
        }
    }
}
