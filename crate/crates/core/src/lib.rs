//! # majorlens
//!
//! Spectral and partial-transpose entanglement criteria for bipartite qudit states.
//!
//! - [`hermitian`]: dense Hermitian matrices, Jacobi eigensolver, sorted spectra.
//! - [`bipartite`]: densities on C^{d_A} ⊗ C^{d_B}, partial trace and transpose.
//! - [`entropy`]: trace-form entropies (von Neumann, Tsallis, the peaked log-cosh
//!   family and its sharp limit) and conditional differences S_f(ρ) - S_f(ρ_A).
//! - [`criteria`]: majorization (disorder) and Peres checks, entropic searches.
//! - [`families`]: the mixed two-qudit families ρ = Σ x_i |0i^∓⟩⟨0i^∓| + y I with
//!   exact spectra, separability certificates and closed-form thresholds.
//! - [`scan`]: region classification, threshold bisection, curves, area fractions.
//! - [`cli`]: the `majorlens` command line.
//!
//! Runnable walkthroughs of each capability live in the crate's `examples/`.

pub mod bipartite;
pub mod cli;
pub mod criteria;
pub mod entropy;
pub mod error;
pub mod families;
pub mod hermitian;
pub mod optimize;
pub mod scan;

pub use bipartite::{BipartiteDensity, Side};
pub use criteria::{DetectionVerdict, MajorizationReport, QGrid, Witness};
pub use entropy::{ConditionalReport, EntropicFamily};
pub use error::{Error, Result};
pub use families::{Exchange, FamilySpec};
pub use hermitian::{HermitianOperator, Spectrum};
