//! Degree-one `sl(2, ℂ)` weight modules and the unitary representations of
//! the universal cover of `SU(1,1)` they integrate to.
//!
//! The crate builds the modules `N(a₁, a₂)` and their actions, decides which
//! are unitarizable, and computes the discrete spectrum of tensor products
//! `N(a₁, a₂) ⊗ N(a, 0)` with explicit generators. A small Gauss
//! hypergeometric toolkit backs the membership tests.

pub mod error;
pub mod fit;
pub mod gamma;
pub mod hypergeometric;
pub mod scalar;
pub mod sparse;
pub mod spectrum;
pub mod tensor;
pub mod unitarity;
pub mod weight_module;
pub mod weyl;

pub use error::{Error, Result};
pub use spectrum::{
    cs_membership, full_spectrum, generator_residual, CSCandidate, Generator, HwLattice, Membership, SpectrumReport,
    SubmoduleDescriptor, SubmoduleKind,
};
pub use tensor::{act_tensor, TensorCase, TensorSpec, TensorState};
pub use scalar::{approx_eq, pochhammer, Scalar, Tolerance};
pub use unitarity::{classify, classify_with, norm_sq, verify_skew_adjoint, Classification, SeriesLabel, UnitaryStructure};
pub use weight_module::{act, casimir_scalar, case_of, support, Case, ModuleSpec, Sl2, SupportDescriptor, WeightVector};
