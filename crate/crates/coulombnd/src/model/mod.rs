//! The model itself: Hamiltonians and commuting operator families in
//! Cartesian, parabolic-rotational and spherical coordinates for any
//! dimension n >= 2 (parabolic needs n >= 3), their closed-form bound-state
//! eigenfunctions and spectra, the gauge-rotated polynomial operators, and
//! level-degeneracy enumeration.

mod cartesian;
mod eigenfunction;
mod gauged;
mod parabolic;
mod params;
mod spectrum;
mod spherical;

pub use cartesian::{
    angular_momentum, cartesian_h, cartesian_vars, cartesian_x, cartesian_y, cartesian_z,
    commuting_pairs_n3, runge_lenz,
};
pub use eigenfunction::{
    eigenfunction, gauged_parabolic_vars, gauged_spherical_vars, Eigenfunction, GaugeFactor,
};
pub use gauged::{
    build_gauged_ops, decompose_generators, gauged_y1, gauged_z, recompose_generators,
    y1_tridiagonal, GaugedOps, Generator, Witness,
};
pub use parabolic::{
    parabolic_h, parabolic_q_ops, parabolic_to_cartesian, parabolic_vars, parabolic_w_chain,
    parabolic_x, parabolic_z_chain, parabolic_z_resolved,
};
pub use params::{ModelParams, QuantumNumbers, System};
pub use spectrum::{degeneracy, k_zero, spectrum, states_up_to, EigenvalueRecord};
pub use spherical::{
    spherical_h, spherical_to_cartesian, spherical_v_chain, spherical_vars, spherical_y_chain,
    spherical_y_resolved,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("p must have length n - 1 = {expected}, got {got}")]
    PLength { expected: usize, got: usize },
    #[error("dimension n = {n} too small: need n >= {min}")]
    Dimension { n: usize, min: usize },
    #[error("Runge-Lenz operators are defined only for the pure Coulomb case (every p_i in {{0, 1}})")]
    RungeLenzRequiresCoulomb,
    #[error("unbound state parameters: principal denominator D = {0} is not positive")]
    UnboundState(String),
    #[error("quantum numbers do not match n = {n} ({detail})")]
    QnShape { n: usize, detail: String },
    #[error(transparent)]
    Poly(#[from] crate::poly::PolyError),
    #[error(transparent)]
    Numeric(#[from] crate::scalar::NumericError),
}
