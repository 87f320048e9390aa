//! Convolution kernel for the half-line boundary-value problem in the
//! matched-rate case (damping rate equal to the tempering rate to the power
//! alpha/2). As a function of x at fixed z > 0 it is the inverse Laplace
//! transform of eta^{alpha/2 - 1} sin(z eta^{alpha/2}), computed here as a
//! residue series in descending powers of x^alpha:
//!
//!   K(alpha, x, z) = sum_{n>=0} (-1)^n z^{2n+1} x^{-alpha(n+1)}
//!                    / (Gamma(2n+2) Gamma(1 - alpha(n+1)))
//!
//! The reciprocal-Gamma factors vanish whenever alpha(n+1) hits a positive
//! integer, and the series converges factorially for every x > 0. It
//! diverges as x -> 0+ (the kernel grows like exp(c z^{2/(1-alpha/2)} *
//! x^{-alpha/(2-alpha)})), so arguments that defeat the series are rejected
//! rather than extrapolated.

use crate::error::{CoreError, Result};
use crate::special::gamma::{lgamma, rgamma};

const MAX_TERMS: usize = 300;
/// Largest tolerated ratio of the biggest partial term to the final sum.
const CANCELLATION_LIMIT: f64 = 1e10;

pub fn dirichlet_kernel(alpha: f64, x: f64, z: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(CoreError::InvalidParam(format!(
            "kernel order must lie in (0, 1), got {alpha}"
        )));
    }
    if !(z > 0.0) || !z.is_finite() {
        return Err(CoreError::InvalidParam(format!(
            "kernel time argument must be positive and finite, got {z}"
        )));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(CoreError::InvalidParam(format!(
            "kernel space argument must be nonnegative and finite, got {x}"
        )));
    }
    if x == 0.0 {
        return Err(CoreError::SeriesDiverged(
            "kernel series is in descending powers of x and diverges at x = 0".into(),
        ));
    }
    let ln_z = z.ln();
    let ln_x = x.ln();
    let mut sum = 0.0;
    let mut max_term = 0.0f64;
    let mut prev_small = false;
    let mut converged = false;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let magnitude =
            ((2.0 * nf + 1.0) * ln_z - alpha * (nf + 1.0) * ln_x - lgamma(2.0 * nf + 2.0)).exp();
        let term = if n % 2 == 0 { magnitude } else { -magnitude } * rgamma(1.0 - alpha * (nf + 1.0));
        sum += term;
        max_term = max_term.max(term.abs());
        let scale = sum.abs().max(max_term * 1e-16).max(1e-300);
        let small = term.abs() <= 1e-17 * scale;
        if small && prev_small && n >= 2 {
            converged = true;
            break;
        }
        prev_small = small;
    }
    if !sum.is_finite() {
        return Err(CoreError::NonFinite(format!(
            "kernel series overflowed at alpha = {alpha}, x = {x}, z = {z}"
        )));
    }
    if !converged {
        return Err(CoreError::SeriesDiverged(format!(
            "kernel series not converged after {MAX_TERMS} terms at alpha = {alpha}, x = {x}, z = {z}"
        )));
    }
    if max_term > CANCELLATION_LIMIT * sum.abs() {
        return Err(CoreError::SeriesDiverged(format!(
            "kernel series loses too many digits to cancellation at alpha = {alpha}, x = {x}, z = {z}"
        )));
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transforms::{laplace_invert, LaplaceInverterConfig};
    use num_complex::Complex64;

    /// Independent route to the same function: numerical inversion of the
    /// closed-form transform eta^{alpha/2-1} sin(z eta^{alpha/2}), sharing
    /// no code with the residue series.
    fn inverted_transform(alpha: f64, x: f64, z: f64) -> f64 {
        let cfg = LaplaceInverterConfig::default();
        let mut f = |s: Complex64| {
            let root = s.powf(0.5 * alpha);
            Ok(s.powf(0.5 * alpha - 1.0) * (z * root).sin())
        };
        laplace_invert(&mut f, x, &cfg).unwrap()
    }

    #[test]
    fn series_matches_independent_inversion() {
        let alpha = 0.5;
        for &x in &[0.5, 1.0, 2.0] {
            for &z in &[0.5, 1.0, 2.0] {
                let series = dirichlet_kernel(alpha, x, z).unwrap();
                let inverted = inverted_transform(alpha, x, z);
                let denom = series.abs().max(1e-30);
                assert!(
                    (series - inverted).abs() / denom < 1e-7,
                    "x={x} z={z}: {series} vs {inverted}"
                );
            }
        }
    }

    #[test]
    fn other_orders_match_the_inversion_too() {
        for &alpha in &[0.3, 0.8] {
            let series = dirichlet_kernel(alpha, 1.0, 1.0).unwrap();
            let inverted = inverted_transform(alpha, 1.0, 1.0);
            assert!(
                (series - inverted).abs() / series.abs().max(1e-30) < 1e-7,
                "alpha={alpha}: {series} vs {inverted}"
            );
        }
    }

    #[test]
    fn leading_term_dominates_far_from_the_origin() {
        // for z^2 x^{-alpha} -> 0 the n = 0 term is the whole story
        let alpha = 0.5;
        let lead = |x: f64, z: f64| z * x.powf(-alpha) * rgamma(1.0 - alpha);
        let k = dirichlet_kernel(alpha, 100.0, 0.1).unwrap();
        assert!((k - lead(100.0, 0.1)).abs() < 1e-8 * k.abs());
        let k = dirichlet_kernel(alpha, 1.0, 1e-8).unwrap();
        assert!((k - lead(1.0, 1e-8)).abs() < 1e-10 * k.abs());
    }

    #[test]
    fn kernel_grows_but_stays_finite_near_the_origin() {
        // moderate blow-up region: still summable, amplitude grows fast as
        // x shrinks (the sign oscillates, so compare magnitudes)
        let near = dirichlet_kernel(0.5, 1e-4, 2.0).unwrap();
        let far = dirichlet_kernel(0.5, 1e-2, 2.0).unwrap();
        assert!(near.is_finite(), "{near}");
        assert!(near.abs() > 1e5, "{near}");
        assert!(near.abs() > 1e3 * far.abs(), "{near} vs {far}");
    }

    #[test]
    fn rejects_bad_and_unreachable_arguments() {
        assert!(matches!(
            dirichlet_kernel(0.0, 1.0, 1.0),
            Err(CoreError::InvalidParam(_))
        ));
        assert!(matches!(
            dirichlet_kernel(1.0, 1.0, 1.0),
            Err(CoreError::InvalidParam(_))
        ));
        assert!(matches!(
            dirichlet_kernel(0.5, 1.0, 0.0),
            Err(CoreError::InvalidParam(_))
        ));
        assert!(matches!(
            dirichlet_kernel(0.5, -1.0, 1.0),
            Err(CoreError::InvalidParam(_))
        ));
        assert!(matches!(
            dirichlet_kernel(0.5, 0.0, 1.0),
            Err(CoreError::SeriesDiverged(_))
        ));
        // far into the blow-up region the series needs more terms than the
        // budget allows; this must be an error, not a wrong number
        assert!(matches!(
            dirichlet_kernel(0.9, 1e-8, 5.0),
            Err(CoreError::SeriesDiverged(_) | CoreError::NonFinite(_))
        ));
    }
}
