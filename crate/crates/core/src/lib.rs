//! C0 interior penalty finite elements with Newmark / Crank-Nicolson time
//! stepping for thermoelastic-diffusion and thermo-poroelastic Kirchhoff-Love
//! plates.

pub mod assembly;
pub mod config;
pub mod error;
pub mod experiments;
pub mod fem;
pub mod linsolve;
pub mod mesh;
pub mod mms;
pub mod model;
pub mod norms;
pub mod stepper;
pub mod sparse;

pub use error::{Error, Result};
