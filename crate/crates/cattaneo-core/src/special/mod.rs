//! Scalar special functions: gamma kernels, the two-parameter Mittag-Leffler
//! function, and the residue-series kernel for the Dirichlet special case.

pub mod dirichlet_kernel;
pub mod gamma;
pub mod mittag_leffler;

pub use dirichlet_kernel::dirichlet_kernel;
pub use gamma::{gamma, lgamma, rgamma, sin_pi};
pub use mittag_leffler::{mittag_leffler, mittag_leffler_real, mittag_leffler_tail, MlParams};
