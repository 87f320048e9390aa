//! Public entry point for numerical Laplace inversion. Runs one of the two
//! engines at increasing node counts until two successive answers agree, so a
//! silently wrong single-resolution evaluation cannot slip through.

use super::{dehoog::dehoog, talbot::talbot};
use crate::error::{CoreError, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    Talbot,
    DeHoog,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct LaplaceInverterConfig {
    pub method: Method,
    /// Starting node count; doubled until two runs agree.
    pub nodes: usize,
    /// Stretches the contour/period geometry; 1.0 fits transforms whose
    /// features live at |s| = O(1/t).
    pub t_scale: f64,
}

impl Default for LaplaceInverterConfig {
    fn default() -> Self {
        Self { method: Method::Talbot, nodes: 48, t_scale: 1.0 }
    }
}

const MAX_DOUBLINGS: usize = 4;

/// Invert `f` at time `t > 0`. `f` must be analytic for Re s > 0 and is
/// evaluated only in that half-plane (Talbot) or on a line Re s > 0
/// (de Hoog).
pub fn laplace_invert(
    f: &mut dyn FnMut(Complex64) -> Result<Complex64>,
    t: f64,
    config: &LaplaceInverterConfig,
) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(CoreError::InvalidParam(format!(
            "inversion time must be positive and finite, got {t}"
        )));
    }
    if config.nodes < 16 {
        return Err(CoreError::InvalidParam(format!(
            "need at least 16 nodes, got {}",
            config.nodes
        )));
    }
    if !(config.t_scale > 0.0) || !config.t_scale.is_finite() {
        return Err(CoreError::InvalidParam(format!(
            "t_scale must be positive and finite, got {}",
            config.t_scale
        )));
    }
    let run = |f: &mut dyn FnMut(Complex64) -> Result<Complex64>, nodes: usize| match config.method
    {
        Method::Talbot => talbot(f, t, nodes, config.t_scale),
        Method::DeHoog => dehoog(f, t, nodes, config.t_scale),
    };
    let mut nodes = config.nodes;
    let mut coarse = run(f, nodes)?;
    for _ in 0..MAX_DOUBLINGS {
        nodes *= 2;
        let fine = run(f, nodes)?;
        let scale = coarse.abs().max(fine.abs());
        if (coarse - fine).abs() <= (1e-9 * scale).max(1e-13) {
            return Ok(fine);
        }
        coarse = fine;
    }
    Err(CoreError::NoConvergence(format!(
        "node doubling did not stabilise by {nodes} nodes at t={t}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{gamma, mittag_leffler_real, MlParams};

    fn both_methods() -> [LaplaceInverterConfig; 2] {
        [
            LaplaceInverterConfig { method: Method::Talbot, ..Default::default() },
            LaplaceInverterConfig { method: Method::DeHoog, ..Default::default() },
        ]
    }

    #[test]
    fn exponential_pair_both_methods() {
        for cfg in both_methods() {
            let mut f = |s: Complex64| Ok(1.0 / (s + 1.0));
            let v = laplace_invert(&mut f, 1.0, &cfg).unwrap();
            assert!((v - (-1.0f64).exp()).abs() < 1e-8, "{:?}: {v}", cfg.method);
        }
    }

    #[test]
    fn fractional_power_pair() {
        // 1/s^{1.4} inverts to t^{0.4}/Gamma(1.4)
        for cfg in both_methods() {
            let mut f = |s: Complex64| Ok(s.powf(-1.4));
            let v = laplace_invert(&mut f, 1.0, &cfg).unwrap();
            let want = 1.0 / gamma(1.4);
            assert!(
                (v - want).abs() < 1e-8 * want,
                "{:?}: {v} vs {want}",
                cfg.method
            );
        }
    }

    #[test]
    fn recovers_one_parameter_series_value() {
        // s^{b-1}/(s^b + 1) inverts to the b-order relaxation function at
        // t = 1; compare against the series/contour evaluator.
        let b = 0.4;
        let want = mittag_leffler_real(MlParams::new(b, 1.0).unwrap(), -1.0).unwrap();
        for cfg in both_methods() {
            let mut f = |s: Complex64| Ok(s.powf(b - 1.0) / (s.powf(b) + 1.0));
            let v = laplace_invert(&mut f, 1.0, &cfg).unwrap();
            assert!(
                (v - want).abs() < 1e-7,
                "{:?}: {v} vs {want}",
                cfg.method
            );
        }
    }

    #[test]
    fn methods_agree_on_rational_fractional_transform() {
        // the shape that actually matters downstream:
        // (s^{2b-1} + 2k s^{b-1}) / (s^{2b} + 2k s^b + c)
        let (b, k, c) = (0.4, 1.0, 2.5);
        let mut f = |s: Complex64| {
            let sb = s.powf(b);
            Ok((s.powf(2.0 * b - 1.0) + 2.0 * k * s.powf(b - 1.0)) / (sb * sb + 2.0 * k * sb + c))
        };
        let mut vals = Vec::new();
        for cfg in both_methods() {
            vals.push(laplace_invert(&mut f, 0.8, &cfg).unwrap());
        }
        assert!(
            (vals[0] - vals[1]).abs() < 1e-8,
            "talbot {} vs dehoog {}",
            vals[0],
            vals[1]
        );
        // the inverse is a characteristic-function value: must sit in (0, 1]
        assert!(vals[0] > 0.0 && vals[0] <= 1.0);
    }

    #[test]
    fn doubling_convergence_is_tight() {
        // successive doublings must agree to the gate, so the returned value
        // should be much better than the gate against the exact answer
        let cfg = LaplaceInverterConfig::default();
        let mut f = |s: Complex64| Ok(1.0 / (s * s + 1.0));
        let v = laplace_invert(&mut f, 2.0, &cfg).unwrap();
        assert!((v - 2.0f64.sin()).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_inputs() {
        let cfg = LaplaceInverterConfig::default();
        let mut f = |s: Complex64| Ok(1.0 / (s + 1.0));
        assert!(matches!(
            laplace_invert(&mut f, 0.0, &cfg),
            Err(CoreError::InvalidParam(_))
        ));
        assert!(matches!(
            laplace_invert(&mut f, -1.0, &cfg),
            Err(CoreError::InvalidParam(_))
        ));
        let few = LaplaceInverterConfig { nodes: 8, ..Default::default() };
        assert!(matches!(
            laplace_invert(&mut f, 1.0, &few),
            Err(CoreError::InvalidParam(_))
        ));
    }

    #[test]
    fn growing_transform_fails_to_converge() {
        // exp(s) has no inverse supported on t > 0; doubling must not agree
        let cfg = LaplaceInverterConfig::default();
        let mut f = |s: Complex64| Ok(s.exp());
        assert!(matches!(
            laplace_invert(&mut f, 1.0, &cfg),
            Err(CoreError::NoConvergence(_))
        ));
    }
}
