//! The rotating double pendulum: parameters, local fields, polynomial
//! systems and the single-pendulum reference case.

mod fields;
mod params;
mod single;
mod systems;

pub use fields::{canonical_angle, local_fields, normal_mode_quadratic, Configuration, LocalFields, NumericModel};
pub use params::{
    chi_pmmr, derive_dimensionless, format_rational, kinetic_positive_definite, parse_rational, q_from_big_q,
    rational_serde, reduced_coefficients, to_f64, ModelParams, PhysicalParams, ReducedCoeffs, Scales,
};
pub use single::{
    single_pendulum_equilibria, single_pendulum_nmr, single_pendulum_v2, ModeKind, SingleBranch, SingleEquilibrium,
    Stability,
};
pub use systems::{
    build_system, general_varset, halftangent_varset, param_varset, pmmr_varset, substitute_chi_pmmr,
    trivial_bifurcation_poly, SystemKind, Trivial, GENERAL_VARS, HALFTANGENT_VARS, PARAM_VARS, PMMR_VARS, TRIG_VARS,
};
