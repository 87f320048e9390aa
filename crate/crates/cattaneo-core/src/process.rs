//! Monte Carlo side of the model: the inverse of the summed subordinator
//! A(s) = H1(s) + (2k)^{1/beta} H2(s) (H1 of order 2 beta, H2 of order beta),
//! the composed process W(t) = B(T(L(t))), and ensemble machinery whose
//! output is bit-reproducible regardless of parallel schedule.

use crate::error::{CoreError, Result};
use crate::params::CattaneoParams;
use crate::rng::RngStream;
use crate::stable::{draw_stable, draw_tempered};
use crate::stats;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

/// Samples of W(t) at a single evaluation time, with the seed that produced
/// them kept alongside for provenance.
#[derive(Clone, Debug)]
pub struct TrajectoryEnsemble {
    pub t: f64,
    pub samples: Vec<f64>,
    pub seed: RngStream,
    pub n: usize,
}

impl TrajectoryEnsemble {
    pub fn mean_and_se(&self) -> (f64, f64) {
        stats::mean_and_se(&self.samples)
    }

    pub fn variance_and_se(&self) -> (f64, f64) {
        stats::variance_and_se(&self.samples)
    }
}

/// The summed subordinator evaluated at span `s`: an exact draw from the
/// law of A(s) = H1(s) + (2k)^{1/beta} H2(s). The inversion-identity test
/// uses it as the direct side of Pr[L(t) > s] = Pr[A(s) < t].
#[cfg(test)]
fn summed_subordinator_marginal<R: Rng + ?Sized>(
    p: &CattaneoParams,
    s: f64,
    rng: &mut R,
) -> f64 {
    draw_stable(2.0 * p.beta, s, rng) + (2.0 * p.k).powf(1.0 / p.beta) * draw_stable(p.beta, s, rng)
}

/// Relative bracket width at which a crossing is accepted.
const CROSSING_RTOL: f64 = 1e-3;
const BRACKET_BUDGET: usize = 2_000;

/// A(s) realized through its scaling form s^{1/(2 beta)} S1 + (2ks)^{1/beta} S2
/// with one unit draw (S1, S2) per path: strictly increasing in s with the
/// exact single-span marginals of the summed subordinator.
struct ScaledPath {
    s1: f64,
    s2: f64,
    inv_2b: f64,
    inv_b: f64,
    two_k: f64,
}

impl ScaledPath {
    fn draw<R: Rng + ?Sized>(p: &CattaneoParams, rng: &mut R) -> Self {
        ScaledPath {
            s1: draw_stable(2.0 * p.beta, 1.0, rng),
            s2: draw_stable(p.beta, 1.0, rng),
            inv_2b: 1.0 / (2.0 * p.beta),
            inv_b: 1.0 / p.beta,
            two_k: 2.0 * p.k,
        }
    }

    fn level(&self, s: f64) -> f64 {
        s.powf(self.inv_2b) * self.s1 + (self.two_k * s).powf(self.inv_b) * self.s2
    }

    /// First span at which the path reaches `t`: bracket by doubling from a
    /// median-scale guess, then bisect until the bracket width drops under
    /// CROSSING_RTOL of the level, and report the midpoint.
    fn passage(&self, p: &CattaneoParams, t: f64) -> Result<f64> {
        let mut hi = t.powf(2.0 * p.beta).min(t.powf(p.beta) / self.two_k).max(1e-300);
        let mut lo = 0.0;
        let mut budget = BRACKET_BUDGET;
        while self.level(hi) < t {
            lo = hi;
            hi *= 2.0;
            budget -= 1;
            if budget == 0 || !hi.is_finite() {
                return Err(CoreError::RetryBudget(format!(
                    "no crossing of t = {t} by span {hi} (draws {}, {})",
                    self.s1, self.s2
                )));
            }
        }
        while hi - lo > CROSSING_RTOL * hi {
            budget -= 1;
            if budget == 0 {
                return Err(CoreError::RetryBudget(format!(
                    "bracket for t = {t} failed to tighten: [{lo}, {hi}]"
                )));
            }
            let mid = 0.5 * (lo + hi);
            if self.level(mid) < t {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

/// First-passage levels of the summed subordinator across each target time,
/// all read off one shared path, so the outputs are coupled: larger targets
/// get larger levels sample by sample.
///
/// Each returned level is exact in distribution for its own target (the
/// scaling form reproduces the marginal law of A(s) at every span, and
/// {passage > s} = {A(s) < t} by monotonicity); the deliberate approximation
/// is that joint laws across several targets are those of the scaling
/// representation, not of the true path. Nothing downstream consumes
/// multi-time joint laws.
pub fn sample_inverse_subordinator_multi(
    p: &CattaneoParams,
    targets: &[f64],
    stream: &RngStream,
) -> Result<Vec<f64>> {
    p.simulation_ready()?;
    if targets.is_empty() {
        return Err(CoreError::InvalidParam("need at least one target time".into()));
    }
    for w in targets.windows(2) {
        if w[1] < w[0] {
            return Err(CoreError::InvalidParam(format!(
                "target times must be nondecreasing, got {} after {}",
                w[1], w[0]
            )));
        }
    }
    for &t in targets {
        if !(t > 0.0) || !t.is_finite() {
            return Err(CoreError::InvalidParam(format!(
                "target times must be positive and finite, got {t}"
            )));
        }
    }
    let path = ScaledPath::draw(p, &mut stream.rng());
    targets.iter().map(|&t| path.passage(p, t)).collect()
}

/// First-passage level of the summed subordinator across a single time.
pub fn sample_inverse_subordinator(
    p: &CattaneoParams,
    t: f64,
    stream: &RngStream,
) -> Result<f64> {
    Ok(sample_inverse_subordinator_multi(p, &[t], stream)?[0])
}

/// One draw of the composed process W(t) = B(T(L(t))): the inverse
/// subordinator sets the clock of the tempered subordinator, which sets the
/// clock of a Brownian motion with E exp(i xi B(s)) = exp(-s xi^2). The
/// three stages consume independent substreams so that no stage can deform
/// another's distribution through state leakage.
pub fn sample_w(p: &CattaneoParams, t: f64, stream: &RngStream) -> Result<f64> {
    p.simulation_ready()?;
    if !(t > 0.0) || !t.is_finite() {
        return Err(CoreError::InvalidParam(format!("need t > 0 finite, got {t}")));
    }
    let ell = sample_inverse_subordinator(p, t, &stream.substream(0))?;
    if ell == 0.0 {
        return Ok(0.0);
    }
    let tau = draw_tempered(p.alpha, p.lambda, ell, &mut stream.substream(1).rng())?;
    let z: f64 = stream.substream(2).rng().sample(StandardNormal);
    Ok((2.0 * tau).sqrt() * z)
}

/// n independent draws of W(t), trajectory i on stream `seed.trajectory(i)`.
/// The sample vector is a pure function of (params, t, n, seed): parallelism
/// only changes who computes each entry, never the entry.
pub fn run_ensemble(
    p: &CattaneoParams,
    t: f64,
    n: usize,
    seed: RngStream,
) -> Result<TrajectoryEnsemble> {
    if n == 0 {
        return Err(CoreError::InvalidParam("ensemble needs n >= 1".into()));
    }
    let samples = (0..n)
        .into_par_iter()
        .map(|i| {
            let x = sample_w(p, t, &seed.trajectory(i as u64))?;
            if !x.is_finite() {
                return Err(CoreError::NonFinite(format!("trajectory {i} produced {x}")));
            }
            Ok(x)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(TrajectoryEnsemble { t, samples, seed, n })
}

/// Empirical characteristic function (1/n) sum exp(i xi x_j) and the
/// standard error of its real part. Evaluated at |xi| and conjugated for
/// negative xi, so the estimator's conjugate symmetry is exact rather than
/// approximate; xi = 0 is the normalization point with no noise at all.
pub fn empirical_cf(e: &TrajectoryEnsemble, xi: f64) -> (Complex64, f64) {
    if xi == 0.0 {
        return (Complex64::new(1.0, 0.0), 0.0);
    }
    let w = xi.abs();
    let n = e.samples.len() as f64;
    let (mut sum_c, mut sum_s, mut sum_c2) = (0.0, 0.0, 0.0);
    for &x in &e.samples {
        let (sin, cos) = (w * x).sin_cos();
        sum_c += cos;
        sum_s += sin;
        sum_c2 += cos * cos;
    }
    let mean_c = sum_c / n;
    let mean_s = sum_s / n;
    let var_c = (sum_c2 / n - mean_c * mean_c).max(0.0);
    let se = (var_c / n).sqrt();
    let value = Complex64::new(mean_c, if xi < 0.0 { -mean_s } else { mean_s });
    (value, se)
}
