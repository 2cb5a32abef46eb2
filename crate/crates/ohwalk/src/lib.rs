//! Continuous-time quantum walks on graphs of the depth-2 ordered Hamming
//! scheme and their projection to triangular spin lattices.
//!
//! The crate is organized around the pipeline that takes a weighted pair of
//! scheme graphs to transfer statements about the projected lattice walk:
//!
//! * [`scheme`] — the vertex set `Q^(N,2)`, shapes, the graphs `G_(i,j)`, and
//!   exhaustive verification of the Bose–Mesner product relations.
//! * [`projection`] — column subspaces spanned by uniform superpositions over
//!   equal-shape vertices, and the projected matrix of `αA_(1,0) + βA_(0,1)`.
//! * [`krawtchouk`] — univariate and bivariate (Tratnik) Krawtchouk
//!   polynomials, their orthonormal forms, and the spectral data that
//!   diagonalizes the lattice walk.
//! * [`dynamics`] — the one-excitation lattice Hamiltonian and transition
//!   amplitudes by closed form, spectral sum, and a matrix-exponential oracle.
//! * [`transfer`] — perfect state transfer and fractional revival detection,
//!   plus the exact parity classification of integer coupling ratios.
//! * [`snapshot`] — deterministic JSON/CSV serialization of amplitude fields.
//!
//! Scalar-generic code is written against the [`scalar::Real`] trait
//! (`f32`/`f64`); polynomial evaluation additionally runs over any exact
//! field scalar such as `num_rational::BigRational` via
//! [`scalar::PolyScalar`], which is how the test oracles cross-check the
//! floating-point path.

pub mod dynamics;
pub mod error;
pub mod krawtchouk;
pub mod lattice;
pub mod projection;
pub mod report;
pub mod scalar;
pub mod scheme;
pub mod snapshot;
pub mod transfer;

pub use error::{Error, Result};
pub use lattice::{Site, SiteIndexer};

/// Default scalar for everything the CLI touches.
pub type Real = f64;

/// Lattice Hamiltonian over the default scalar.
pub type Hamiltonian = dynamics::LatticeOperator<Real>;
/// Spectral decomposition over the default scalar.
pub type Spectral = krawtchouk::SpectralData<Real>;
/// Amplitude field over the default scalar.
pub type Field = dynamics::AmplitudeField<Real>;
/// Polynomial parameters over the default scalar.
pub type Params = krawtchouk::PolyParams<Real>;
