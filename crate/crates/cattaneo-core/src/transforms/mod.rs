//! Transform-domain machinery: uniform grids, two independent numerical
//! Laplace inversion engines behind one verified entry point, the L1
//! discretization of Caputo derivatives, and density recovery from a
//! characteristic function.

pub mod caputo;
pub mod cf_density;
mod dehoog;
pub mod grid;
mod talbot;

pub mod invert;

pub use caputo::{caputo_l1, shifted_caputo};
pub use cf_density::{cf_to_density, cf_to_density_fft, DensityResult};
pub use grid::{GridFunction, GridSpec};
pub use invert::{laplace_invert, LaplaceInverterConfig, Method};
