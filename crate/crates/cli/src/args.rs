use clap::{Args, Parser, Subcommand, ValueEnum};
use weightlab::Scalar;

#[derive(Parser, Debug)]
#[command(name = "weightlab", version, about = "Degree-one sl(2) weight modules, unitarity, and tensor-product spectra")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Unitary series of N(a1, a2).
    Classify(ModuleArgs),
    /// Discrete spectrum of N(a1, a2) ⊗ N(a, 0).
    Spectrum(SpectrumArgs),
    /// Run one of the invariant suites.
    Verify(VerifyArgs),
    /// Evaluate 2F1(alpha, beta; gamma; z) on the closed unit disc.
    Hyp2f1(HypArgs),
}

pub fn parse_scalar(s: &str) -> Result<Scalar, String> {
    s.parse::<Scalar>().map_err(|e| e.to_string())
}

#[derive(Args, Debug)]
pub struct ModuleArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_scalar)]
    pub a1: Scalar,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_scalar)]
    pub a2: Scalar,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_scalar)]
    pub a1: Scalar,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_scalar)]
    pub a2: Scalar,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_scalar)]
    pub a: Scalar,
    /// Generator coefficients to emit per entry.
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
    pub head: u32,
    /// Cross-check complementary entries against the ξ-grid scan.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    #[value(name = "sl2-relations")]
    Sl2Relations,
    Casimir,
    Weyl,
    SkewAdjoint,
    Nelson,
    TensorRelations,
    GeneratorResidual,
    XiOracle,
    PrincipalExclusion,
    ThetaIntegral,
    SmoothVectors,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Truncation; each suite has its own default.
    #[arg(long = "K", short = 'K', alias = "k", value_parser = clap::value_parser!(u32).range(1..))]
    pub k: Option<u32>,
    /// Restrict module suites to N(a1, a2) instead of the built-in panel.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_scalar, requires = "a2")]
    pub a1: Option<Scalar>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_scalar, requires = "a1")]
    pub a2: Option<Scalar>,
    /// With a1 and a2, restrict tensor suites to N(a1, a2) ⊗ N(a, 0).
    #[arg(long, allow_hyphen_values = true, value_parser = parse_scalar, requires = "a1")]
    pub a: Option<Scalar>,
}

#[derive(Args, Debug)]
pub struct HypArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_scalar)]
    pub alpha: Scalar,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_scalar)]
    pub beta: Scalar,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_scalar)]
    pub gamma: Scalar,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_scalar)]
    pub z: Scalar,
}
