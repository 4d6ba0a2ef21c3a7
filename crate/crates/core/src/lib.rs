//! Numerical engine for a one-dimensional cavity with two moving mirrors.
//!
//! The field inside the cavity is described by two Moore functions `F` and
//! `G`. This crate solves them exactly for prescribed mirror paths, builds
//! their adiabatic approximations, derives shortcut-to-adiabaticity mirror
//! paths from those approximations, and evaluates the renormalized energy
//! at finite temperature.

pub mod energy;
pub mod error;
pub mod jet;
pub mod moore;
pub mod moore_adiabatic;
pub mod moore_exact;
pub mod quadrature;
pub mod roots;
pub mod sta;
pub mod trajectory;

pub use energy::{
    adiabatic_energy, adiabaticity, density, energy_parts, eval_mode, thermal_z, total_energy, EnergyParts,
    EnergyQuadrature, EnergyRecord, ThermalState,
};
pub use error::{Error, Result};
pub use jet::Jet;
pub use moore::{moore_residuals, MooreSolution, Which};
pub use moore_adiabatic::{AdiabaticGrid, AdiabaticMoore};
pub use moore_exact::{ExactMoore, Trace};
pub use sta::{
    continuity_check, critical_tau, effective_pair, effective_position, limit_trajectory, CriticalOptions,
    EffectiveOptions, EffectivePath, EffectiveTrajectory, LimitTrajectory,
};
pub use trajectory::{
    make_reference, Endpoints, Family, Mirror, MirrorPath, PolySegment, ReferenceGeometry, Side, TrajectoryPair,
};
