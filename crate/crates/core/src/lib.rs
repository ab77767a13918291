//! Kendall cumulant polynomials and the martingales they generate from a
//! centered additive process.
//!
//! - [`cumulant`]: exact `Γ_n`, the partition oracle, moment/cumulant
//!   conversion and the derivative and shift identities.
//! - [`process`]: additive processes with finitely many jump atoms and their
//!   cumulant functions `F_n(t)`.
//! - [`simulator`]: exact-jump paths, variations `X^(n)` and Teugels
//!   martingales `Y^(n)`.
//! - [`martingale`]: `M^(n) = Γ_n(X, -F_2, ..., -F_n)` on paths, its
//!   stochastic-integral decomposition, and Monte Carlo increment tests.
//! - [`charlier`]: the compensated Cox example and its Charlier expansion.

pub mod charlier;
pub mod cumulant;
pub mod error;
pub mod martingale;
pub mod poly;
pub mod process;
pub mod rng;
pub mod simulator;

pub use charlier::{charlier_poly, expansion_check, lambda_table, Convention, ExpansionReport, LambdaTable};
pub use cumulant::{
    cumulants_from_moments, gamma, gamma_partial, gamma_partition_oracle, gamma_shift_expand, gamma_x1_coefficients,
    moments_from_cumulants, CumulantSequence, KendallTable, MomentSequence,
};
pub use error::{ModelError, PolyError, SimError};
pub use martingale::{
    compensator_test, decomposition_residual, martingale_path, martingale_test, MartingaleReport, Statistic,
    TestFunction, Verdict,
};
pub use poly::{parse_rational, ExactPolynomial, Scalar};
pub use process::{cumulant_fn, harmonic_coefficients, validate, JumpAtom, MonotoneFunction, ProcessSpec};
pub use simulator::{optional_covariation_check, simulate_path, teugels, variations, PathRecord, TeugelsSet, TimeGrid};
