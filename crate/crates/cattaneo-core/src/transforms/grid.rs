//! Uniform-grid containers shared by the inversion, convolution and density
//! code paths.

use crate::error::{CoreError, Result};
use serde::{Deserialize, Serialize};

/// Real function sampled on a uniform grid: values[i] lives at x0 + i*dx.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridFunction {
    pub x0: f64,
    pub dx: f64,
    pub values: Vec<f64>,
}

impl GridFunction {
    pub fn new(x0: f64, dx: f64, values: Vec<f64>) -> Result<Self> {
        if !x0.is_finite() || !dx.is_finite() || dx <= 0.0 {
            return Err(CoreError::Grid("grid needs finite x0 and dx > 0".into()));
        }
        if values.is_empty() {
            return Err(CoreError::Grid("grid needs at least one value".into()));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(CoreError::Grid(format!("grid value {bad} is not finite")));
        }
        Ok(GridFunction { x0, dx, values })
    }

    pub fn from_fn(spec: &GridSpec, mut f: impl FnMut(f64) -> f64) -> Result<Self> {
        spec.validate()?;
        let values = (0..spec.n).map(|i| f(spec.x(i))).collect();
        GridFunction::new(spec.x0, spec.dx, values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.dx
    }

    pub fn xs(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(|i| self.x(i))
    }

    /// Trapezoid-rule integral over the whole grid.
    pub fn trapezoid(&self) -> f64 {
        if self.len() < 2 {
            return 0.0;
        }
        let inner: f64 = self.values[1..self.len() - 1].iter().sum();
        self.dx * (inner + 0.5 * (self.values[0] + self.values[self.len() - 1]))
    }
}

/// Shape of a uniform grid to be filled in.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x0: f64,
    pub dx: f64,
    pub n: usize,
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if !self.x0.is_finite() || !self.dx.is_finite() || self.dx <= 0.0 {
            return Err(CoreError::Grid("grid spec needs finite x0 and dx > 0".into()));
        }
        if self.n == 0 {
            return Err(CoreError::Grid("grid spec needs n > 0".into()));
        }
        Ok(())
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.dx
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_and_lookup() {
        let g = GridFunction::new(-1.0, 0.5, vec![1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        assert_eq!(g.len(), 5);
        assert_eq!(g.x(0), -1.0);
        assert_eq!(g.x(4), 1.0);
        let xs: Vec<f64> = g.xs().collect();
        assert_eq!(xs, vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(GridFunction::new(0.0, 0.0, vec![1.0]).is_err());
        assert!(GridFunction::new(0.0, -0.1, vec![1.0]).is_err());
        assert!(GridFunction::new(0.0, 1.0, vec![]).is_err());
        assert!(GridFunction::new(0.0, 1.0, vec![f64::NAN]).is_err());
        assert!(GridFunction::new(f64::INFINITY, 1.0, vec![1.0]).is_err());
    }

    #[test]
    fn trapezoid_integrates_linear_exactly() {
        let spec = GridSpec { x0: 0.0, dx: 0.1, n: 11 };
        let g = GridFunction::from_fn(&spec, |x| 3.0 * x).unwrap();
        assert!((g.trapezoid() - 1.5).abs() < 1e-14);
    }
}
