//! Exact symbolic-numeric toolkit for an n-dimensional superintegrable
//! Coulomb-type model.
//!
//! The model is the hydrogen-like Hamiltonian on Euclidean n-space with an
//! extra `beta_i / x_i^2` potential in the first n-1 coordinates. The crate
//! builds its commuting operator families in Cartesian, parabolic-rotational
//! and spherical coordinates, the closed-form bound-state eigenfunctions and
//! spectra (Laguerre x Jacobi products with a shifted Balmer energy), and the
//! gauge-rotated polynomial operators that make the system exactly solvable.
//!
//! Two computation layers back every claim:
//!
//! * exact arithmetic: arbitrary-precision rationals, sparse multivariate
//!   polynomials and polynomial-coefficient differential operators, used
//!   where a statement can be checked with zero tolerance;
//! * jet numerics: truncated multivariate Taylor expansions over a generic
//!   scalar (`f32`/`f64` floats or exact rationals), used to apply
//!   curvilinear operators to full wavefunctions at sample points.
//!
//! The [`verify`] module turns the model's eigenvalue equations, commutation
//! relations and polynomial-preservation properties into deterministic,
//! seeded pass/fail reports; the `coulombnd` binary exposes spectra,
//! eigenfunctions and the verification suites on the command line.

pub mod expr;
pub mod fieldop;
pub mod jet;
pub mod model;
pub mod multi_index;
pub mod orthopoly;
pub mod poly;
pub mod polyop;
pub mod rational;
pub mod scalar;
pub mod verify;

pub mod cli;

pub use multi_index::MultiIndex;
pub use poly::MultiPoly;
pub use rational::Rational;
pub use scalar::{NumericError, Scalar};

/// Jet over exact rational coefficients; reduced-gauge residuals over this
/// scalar are exact (zero tolerance).
pub type RationalJet = jet::Jet<Rational>;
/// Jet over double-precision floats; the general-purpose numeric carrier.
pub type RealJet = jet::Jet<f64>;
/// Single-precision jet, available for completeness.
pub type RealJet32 = jet::Jet<f32>;
