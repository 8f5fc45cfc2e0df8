//! Finite-dimensional quantum probability workbench.
//!
//! Events are orthogonal projections on `ℂⁿ`, states are density matrices and
//! conditioning follows the Lüders rule. On top of that model the crate
//! computes Sorkin interference terms, CHSH correlations for classical,
//! quantum and no-signaling behaviors, and checks the sum-of-squares identity
//! behind Tsirelson's bound both exactly (over `ℚ(√2)`) and numerically.

pub mod error;
pub mod free_algebra;
pub mod interference;
pub mod linalg;
pub mod logic;
pub mod nonlocality;
pub mod random;
pub mod scalar;

pub use error::{Error, Result};
pub use free_algebra::{FreeElement, Generator, Monomial};
pub use interference::SlitConfiguration;
pub use linalg::{ComplexMatrix, HermitianMatrix};
pub use logic::{Event, State};
pub use nonlocality::{BehaviorTable, CorrelationScenario, SeesawResult};
pub use scalar::ExactScalar;

/// `2√2`, the largest CHSH value a quantum scenario can reach.
pub const TSIRELSON_BOUND: f64 = 2.0 * std::f64::consts::SQRT_2;
