//! Exact computation of conformally invariant systems attached to maximal
//! parabolic subalgebras of quasi-Heisenberg type.

#![allow(clippy::needless_range_loop)]

pub mod chevalley;
pub mod error;
pub mod linalg;
pub mod omega;
pub mod parabolic;
pub mod report;
pub mod rootsys;
pub mod scalars;
pub mod tensor;

pub use chevalley::{
    bracket, build_constants, killing_pair, AlgebraElement, Label, LieAlgebraModel, StructureConstants,
};
pub use error::{Error, Result};
pub use omega::{
    bracket_at_identity, build_omega2_lowest, generate_system, omega1_special_value, solve_special_value, tau_k,
    tau_tilde, PolyOnG1, SpecialValueResult, TensorElement, UEAElement, Word,
};
pub use parabolic::{
    build_case, classify_step, verify_weight_lemmas, ParabolicCase, ParabolicSpec, StepClassification, StepKind,
};
pub use report::{CaseReport, SPEC_VERSION};
pub use rootsys::{build_root_system, AlgebraType, Family, RootSystem};
pub use scalars::{qext_arith, spoly_root, ArithOp, QuadExt, Rational, SPoly, ScalarError};
pub use tensor::{
    freudenthal, klimyk_decompose, omega_root_data, special_constituents, ConstituentKind, ConstituentSource,
    Decomposition, OmegaRootData, SpecialConstituent, WeightSystem,
};
