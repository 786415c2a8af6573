//! Bell inequalities for N-partite, d-dimensional quantum systems.
//!
//! The crate builds the unitary observables and GHZ states behind a family of
//! multipartite qudit Bell inequalities, evaluates their quantum expectations
//! and spectra, computes the classical (local-hidden-variable) bounds both in
//! closed form and by exhaustive enumeration of all deterministic strategies,
//! and reports quantum-to-classical ratios (QCRs).
//!
//! The main pieces:
//!
//! * [`tensor`] — minimal dense complex linear algebra (Kronecker products,
//!   matrix powers, expectation values, Hermitian extremal eigenvalues).
//! * [`qm`] — the quantum model: roots of unity, Fourier/phase-shift
//!   observables, GHZ states, raising operators, and Bell operators.
//! * [`lhv`] — the classical engine: deterministic strategy evaluation and
//!   parallel exhaustive (or sampled) maximization over all d^(2N) strategies.
//! * [`bounds`] — closed-form classical and quantum bounds plus QCR assembly.
//! * [`report`] — sweep driver, self-check suite, and table/JSON/CSV output
//!   behind the `qudit-bell` binary.
//!
//! Run `cargo run --release -- --parties 3 --dim 4 --classical both` for a
//! first result, or see the `examples/` directory for per-capability demos.

pub mod bounds;
pub mod lhv;
pub mod qm;
pub mod report;
pub mod tensor;

use num_rational::Rational64;

/// Errors shared by every module in the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An operator would exceed the dense-matrix dimension cap.
    #[error("matrix dimension {requested} exceeds the cap of {cap}")]
    DimensionLimit { requested: u128, cap: usize },

    /// Incompatible operand shapes.
    #[error("shape mismatch: {left} vs {right}")]
    ShapeMismatch { left: usize, right: usize },

    /// A matrix fed to the Hermitian eigensolver is not Hermitian.
    #[error("matrix is not Hermitian: max |m - m^dagger| entry = {defect:.3e} (threshold {threshold:.1e})")]
    NotHermitian { defect: f64, threshold: f64 },

    /// The iterative extremal-eigenvalue method failed to converge.
    #[error("extremal eigenvalue iteration did not converge within {iterations} steps")]
    EigenNoConvergence { iterations: usize },

    /// Amplitudes do not form a unit vector.
    #[error("state vector norm {norm} deviates from 1 by more than {tolerance:.1e}")]
    NotNormalized { norm: f64, tolerance: f64 },

    /// Invalid (N, d, nu) combination.
    #[error("invalid scenario: {reason}")]
    InvalidScenario { reason: String },

    /// A strategy assignment is malformed for its scenario.
    #[error("invalid strategy: {reason}")]
    InvalidStrategy { reason: String },

    /// The strategy space is too large for exhaustive enumeration.
    #[error(
        "enumeration limit exceeded: {strategies} strategies > cap {cap}; \
         use the closed-form bound or sampled search instead"
    )]
    EnumerationLimit { strategies: u128, cap: u64 },

    /// QCR is undefined for a nonpositive classical bound.
    #[error("nonpositive classical bound {bound}")]
    NonPositiveClassicalBound { bound: f64 },

    /// A rational number (e.g. the variant phase) failed to parse.
    #[error("invalid rational {input:?}: {reason}")]
    BadRational { input: String, reason: String },

    /// Run configuration rejected before execution.
    #[error("invalid configuration: {reason}")]
    InvalidConfig { reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Exact rational used for the variant phase nu and half-integer exponents.
pub type Rational = Rational64;

pub use bounds::{BoundsReport, Provenance};
pub use lhv::{MaxResult, Strategy};
pub use qm::{Scenario, Setting};
pub use tensor::{ComplexMatrix, StateVector};
