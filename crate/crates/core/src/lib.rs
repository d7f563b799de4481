//! Deterministic compressed sensing with quadratic-residue partial Fourier
//! matrices, and their application to sub-Nyquist harmonic detection.
//!
//! The crate is organized around one construction: for a prime `N = 4z + 3`
//! and a positive integer `p` coprime to `N`, the `M = (N-1)/2` rows of the
//! `N x N` Fourier matrix indexed by `p*m^2 mod N` form a sensing matrix
//! whose columns all correlate with the same modulus. That constant
//! cross-correlation is what makes the matrix a good compressed-sensing
//! operator, and the residue row set doubles as a deterministic sub-Nyquist
//! sampling schedule for multi-tone signals.
//!
//! Module map:
//!
//! - [`numtheory`] — primality, Jacobi symbols, quadratic-residue index
//!   sets, and quadratic Gauss sums (closed form plus a brute-force oracle).
//! - [`matrix`] — dense row-major matrices over `f64` or `Complex64` with a
//!   column-normalization state flag.
//! - [`eigen`] — cyclic Jacobi eigensolver for small Hermitian matrices.
//! - [`sensing`] — matrix construction, coherence, sub-Gram eigenvalue
//!   sweeps, and restricted-isometry diagnostics.
//! - [`recovery`] — orthogonal matching pursuit, the dense least-squares
//!   kernel behind it, and an exhaustive-search oracle.
//! - [`harmonic`] — sampling schedules, signal synthesis, the real-domain
//!   measurement system, spectrum estimation, and reconstruction.
//! - [`rng`] — a counter-based splittable random number generator so that
//!   Monte-Carlo trials are reproducible regardless of execution order.
//! - [`io`] — the CSV formats shared by tests and the command-line tools.

pub mod eigen;
pub mod error;
pub mod harmonic;
pub mod io;
pub mod matrix;
pub mod numtheory;
pub mod recovery;
pub mod rng;
pub mod sensing;

pub use error::Error;
pub use harmonic::{
    HarmonicComponent, HarmonicSpec, MeasurementAssembly, RealSystem, SamplingSchedule,
    SpectrumEstimate,
};
pub use matrix::{ComplexMatrix, Mat, NormState, RealMatrix, Scalar};
pub use numtheory::Modulus;
pub use recovery::{RecoveryConfig, RecoveryResult, TieBreak};
pub use rng::CounterRng;
pub use sensing::{EigenSweepRecord, RipBoundReport, SensingParams};

/// Convenience alias used throughout the crate.
pub type Complex64 = num_complex::Complex<f64>;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
