use crate::error::{CoreError, Result};
use serde::{Deserialize, Serialize};

/// Model parameters (alpha, beta, lambda, k).
///
/// alpha is the space order, beta the time order, lambda the tempering rate
/// and k the damping coefficient. Analytic formulas accept beta anywhere in
/// (0,1) and alpha up to and including 1 (where the spatial operator becomes
/// local); path simulation is stricter, see `simulation_ready`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CattaneoParams {
    pub alpha: f64,
    pub beta: f64,
    pub lambda: f64,
    pub k: f64,
}

fn check(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(CoreError::InvalidParam(msg.to_string()))
    }
}

impl CattaneoParams {
    pub fn new(alpha: f64, beta: f64, lambda: f64, k: f64) -> Result<Self> {
        let p = CattaneoParams { alpha, beta, lambda, k };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        check(self.alpha.is_finite() && self.alpha > 0.0 && self.alpha <= 1.0,
              "alpha must lie in (0, 1]")?;
        check(self.beta.is_finite() && self.beta > 0.0 && self.beta < 1.0,
              "beta must lie in (0, 1)")?;
        check(self.lambda.is_finite() && self.lambda >= 0.0, "lambda must be >= 0")?;
        check(self.k.is_finite() && self.k > 0.0, "k must be > 0")
    }

    /// The simulator composes a 2*beta-stable subordinator with tempered
    /// stable sampling, which constrains beta to (0, 1/2) and alpha to (0, 1).
    pub fn simulation_ready(&self) -> Result<()> {
        self.validate()?;
        check(self.beta < 0.5, "simulation requires beta in (0, 1/2)")?;
        check(self.alpha < 1.0, "simulation requires alpha in (0, 1)")
    }
}

/// One-sided stable subordinator marginal at time t: Laplace transform
/// exp(-t s^alpha).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StableParams {
    pub alpha: f64,
    pub t: f64,
}

impl StableParams {
    pub fn new(alpha: f64, t: f64) -> Result<Self> {
        check(alpha.is_finite() && alpha > 0.0 && alpha < 1.0,
              "stable alpha must lie strictly in (0, 1)")?;
        check(t.is_finite() && t > 0.0, "stable t must be > 0")?;
        Ok(StableParams { alpha, t })
    }
}

/// Exponentially tempered stable subordinator marginal at time t.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TemperedParams {
    pub alpha: f64,
    pub lambda: f64,
    pub t: f64,
}

impl TemperedParams {
    pub fn new(alpha: f64, lambda: f64, t: f64) -> Result<Self> {
        check(lambda.is_finite() && lambda >= 0.0, "tempering lambda must be >= 0")?;
        let s = StableParams::new(alpha, t)?;
        Ok(TemperedParams { alpha: s.alpha, lambda, t: s.t })
    }

    pub fn as_stable(&self) -> StableParams {
        StableParams { alpha: self.alpha, t: self.t }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_enforced() {
        assert!(CattaneoParams::new(0.7, 0.4, 1.0, 0.5).is_ok());
        assert!(CattaneoParams::new(1.0, 0.4, 0.0, 0.5).is_ok());
        assert!(CattaneoParams::new(0.0, 0.4, 1.0, 0.5).is_err());
        assert!(CattaneoParams::new(1.1, 0.4, 1.0, 0.5).is_err());
        assert!(CattaneoParams::new(0.7, 1.0, 1.0, 0.5).is_err());
        assert!(CattaneoParams::new(0.7, 0.4, -0.1, 0.5).is_err());
        assert!(CattaneoParams::new(0.7, 0.4, 1.0, 0.0).is_err());
        assert!(CattaneoParams::new(f64::NAN, 0.4, 1.0, 0.5).is_err());
    }

    #[test]
    fn simulation_gate() {
        let p = CattaneoParams::new(0.7, 0.4, 1.0, 0.5).unwrap();
        assert!(p.simulation_ready().is_ok());
        let p = CattaneoParams::new(0.7, 0.6, 1.0, 0.5).unwrap();
        assert!(p.simulation_ready().is_err());
        let p = CattaneoParams::new(1.0, 0.4, 1.0, 0.5).unwrap();
        assert!(p.simulation_ready().is_err());
    }

    #[test]
    fn stable_params_strict() {
        assert!(StableParams::new(0.5, 1.0).is_ok());
        assert!(StableParams::new(1.0, 1.0).is_err());
        assert!(StableParams::new(0.5, 0.0).is_err());
        assert!(TemperedParams::new(0.5, 0.0, 1.0).is_ok());
        assert!(TemperedParams::new(0.5, -1.0, 1.0).is_err());
    }
}
