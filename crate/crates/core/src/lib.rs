//! Equilibria and bifurcations of the rotating double pendulum.
//!
//! The crate is layered: [`polyring`] provides exact polynomial arithmetic,
//! [`elim`] eliminates variables with Sylvester and Dixon resultants,
//! [`model`] builds the pendulum's fields and polynomial systems, and
//! [`analysis`] finds equilibria, bifurcation points and trajectories.

pub mod analysis;
pub mod elim;
pub mod error;
pub mod model;
pub mod polyring;

pub use analysis::{find_equilibria, simulate, Equilibrium, Trajectory};
pub use elim::{FactorList, PolyMatrix, PolySystem};
pub use error::{Error, Result};
pub use model::{Configuration, ModelParams, PhysicalParams};
pub use polyring::{parse, Polynomial, Rational, VarSet};
