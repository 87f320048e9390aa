//! Statistical plumbing for the Monte Carlo / analytic cross-checks: moment
//! estimators with standard errors, a Kolmogorov-Smirnov test, a chi-squared
//! goodness-of-fit p-value, and the report row the validation suite emits.

use crate::error::{CoreError, Result};
use crate::special::gamma::lgamma;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Pass,
    Fail,
    /// Emitted for comparisons that are informational by design and never
    /// gate a run.
    Reported,
}

/// One line of the validation suite: an estimate against its oracle.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ValidationReport {
    pub quantity: String,
    pub mc_estimate: f64,
    pub std_error: f64,
    pub oracle: f64,
    pub z_score: f64,
    pub threshold: f64,
    pub verdict: Verdict,
}

impl ValidationReport {
    /// Build a row and grade it: pass iff |estimate - oracle| <= threshold.
    /// The z-score is |estimate - oracle| / SE whenever SE > 0.
    pub fn graded(
        quantity: impl Into<String>,
        mc_estimate: f64,
        std_error: f64,
        oracle: f64,
        threshold: f64,
    ) -> Self {
        let diff = (mc_estimate - oracle).abs();
        let z_score = if std_error > 0.0 {
            diff / std_error
        } else if diff == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        let verdict = if diff <= threshold { Verdict::Pass } else { Verdict::Fail };
        ValidationReport {
            quantity: quantity.into(),
            mc_estimate,
            std_error,
            oracle,
            z_score,
            threshold,
            verdict,
        }
    }

    pub fn reported(mut self) -> Self {
        self.verdict = Verdict::Reported;
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }
}

/// Sample mean and its standard error s/sqrt(n).
pub fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let ss: f64 = xs.iter().map(|x| (x - mean) * (x - mean)).sum();
    let var = ss / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}

/// Sample variance (unbiased) and the standard error of that estimate,
/// sqrt((m4 - m2^2)/n) from the central moments.
pub fn variance_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len();
    if n < 2 {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.iter().sum::<f64>() / n as f64;
    let mut m2 = 0.0;
    let mut m4 = 0.0;
    for x in xs {
        let d = x - mean;
        let d2 = d * d;
        m2 += d2;
        m4 += d2 * d2;
    }
    m2 /= n as f64;
    m4 /= n as f64;
    let var = m2 * n as f64 / (n - 1) as f64;
    let se = ((m4 - m2 * m2).max(0.0) / n as f64).sqrt();
    (var, se)
}

/// Two-sided KS statistic sup |F_n - F| for samples against a continuous
/// CDF. Sorts a copy of the input.
pub fn ks_statistic(samples: &[f64], cdf: impl Fn(f64) -> f64) -> Result<f64> {
    if samples.is_empty() {
        return Err(CoreError::InvalidParam("KS needs a nonempty sample".into()));
    }
    let mut xs = samples.to_vec();
    xs.sort_by(|a, b| a.partial_cmp(b).expect("non-NaN samples"));
    let n = xs.len() as f64;
    let mut d = 0.0f64;
    for (i, x) in xs.iter().enumerate() {
        let f = cdf(*x);
        if !(0.0..=1.0).contains(&f) {
            return Err(CoreError::InvalidParam(format!("CDF out of [0,1] at {x}: {f}")));
        }
        d = d.max((f - i as f64 / n).abs());
        d = d.max(((i + 1) as f64 / n - f).abs());
    }
    Ok(d)
}

/// Asymptotic KS p-value with the Stephens small-sample correction:
/// p = Q_K((sqrt(n) + 0.12 + 0.11/sqrt(n)) D).
pub fn ks_pvalue(n: usize, d: f64) -> f64 {
    let rn = (n as f64).sqrt();
    kolmogorov_q((rn + 0.12 + 0.11 / rn) * d)
}

/// Kolmogorov survival function Q(z) = 2 sum_{j>=1} (-1)^{j-1} e^{-2 j^2 z^2}.
pub fn kolmogorov_q(z: f64) -> f64 {
    if z <= 0.0 {
        return 1.0;
    }
    // the alternating series needs many terms for small z; below 0.18 the
    // value is 1 to double precision
    if z < 0.18 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for j in 1..=100 {
        let term = sign * (-2.0 * (j * j) as f64 * z * z).exp();
        sum += term;
        if term.abs() < 1e-17 {
            break;
        }
        sign = -sign;
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Pearson statistic sum (O - E)^2 / E. Expected counts must be positive.
pub fn chi_squared_stat(observed: &[u64], expected: &[f64]) -> Result<f64> {
    if observed.len() != expected.len() || observed.is_empty() {
        return Err(CoreError::InvalidParam("count arrays must match and be nonempty".into()));
    }
    let mut stat = 0.0;
    for (&o, &e) in observed.iter().zip(expected) {
        if !(e > 0.0) {
            return Err(CoreError::InvalidParam(format!("expected count {e} must be > 0")));
        }
        let d = o as f64 - e;
        stat += d * d / e;
    }
    Ok(stat)
}

/// Survival p-value of the chi-squared distribution: Q(dof/2, stat/2).
pub fn chi_squared_pvalue(stat: f64, dof: usize) -> Result<f64> {
    if !(stat >= 0.0) || dof == 0 {
        return Err(CoreError::InvalidParam(format!(
            "need stat >= 0 and dof >= 1, got {stat}, {dof}"
        )));
    }
    Ok(reg_gamma_upper(dof as f64 / 2.0, stat / 2.0))
}

/// Regularized upper incomplete gamma Q(a, x) by the standard split:
/// series for the lower function when x < a + 1, Lentz continued fraction
/// for the upper function otherwise.
pub(crate) fn reg_gamma_upper(a: f64, x: f64) -> f64 {
    debug_assert!(a > 0.0 && x >= 0.0);
    if x == 0.0 {
        return 1.0;
    }
    if x < a + 1.0 {
        1.0 - reg_gamma_lower_series(a, x)
    } else {
        let lead = (a * x.ln() - x - lgamma(a)).exp();
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / 1e-300;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..=500 {
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < 1e-300 {
                d = 1e-300;
            }
            c = b + an / c;
            if c.abs() < 1e-300 {
                c = 1e-300;
            }
            d = 1.0 / d;
            let delta = d * c;
            h *= delta;
            if (delta - 1.0).abs() < 1e-16 {
                break;
            }
        }
        (lead * h).clamp(0.0, 1.0)
    }
}

fn reg_gamma_lower_series(a: f64, x: f64) -> f64 {
    let mut ap = a;
    let mut sum = 1.0 / a;
    let mut term = sum;
    for _ in 0..500 {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if term.abs() < sum.abs() * 1e-16 {
            break;
        }
    }
    (sum * (a * x.ln() - x - lgamma(a)).exp()).clamp(0.0, 1.0)
}
