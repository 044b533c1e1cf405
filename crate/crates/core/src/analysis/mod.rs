//! Root isolation, equilibria, bifurcation values, scans and dynamics.

mod dynamics;
mod equilibria;
mod roots;
mod surface;

pub use dynamics::{jacobi_integral, normal_modes, simulate, State, Trajectory};
pub use equilibria::{
    classify, find_equilibria, find_equilibria_at, grid_candidates, newton_polish, nontrivial_count, symmetric,
    Equilibrium, Origin, DEGENERATE_TOL, RESIDUAL_TOL, SAME_POINT,
};
pub use roots::{isolate_real_roots, real_roots, RootInterval, REFINE_WIDTH};
pub use surface::{fmt17, named_surface, parse_grid, scan_surface, trivial_bifurcation_q, Axis, ScanGrid};
