//! The cross-validation suite: every closed-form result measured against an
//! independent route (Monte Carlo against the transform solution, transforms
//! against series, samplers against closed-form laws). Each check returns
//! report rows; rows marked `Reported` are informational probes and never
//! fail a run.
//!
//! Thresholds are pinned here. Statistical thresholds that assume the full
//! sample budget are widened by sqrt(N_full / N) in loose mode so a smoke
//! run still grades meaningfully.

use crate::analytic::{
    beta1_space_laplace, char_fn, dirichlet_laplace, dirichlet_special_case, dirichlet_value,
    fourier_laplace, mean_subordinator, variance_time_changed, BoundarySignal,
};
use crate::error::Result;
use crate::params::{CattaneoParams, StableParams, TemperedParams};
use crate::process::{empirical_cf, run_ensemble, sample_inverse_subordinator, TrajectoryEnsemble};
use crate::rng::RngStream;
use crate::special::{mittag_leffler, mittag_leffler_real, MlParams};
use crate::stable::{sample_stable, sample_tempered};
use crate::stats::{
    self, chi_squared_pvalue, chi_squared_stat, ks_pvalue, ks_statistic, ValidationReport,
};
use crate::transforms::{cf_to_density, laplace_invert, GridFunction, GridSpec, LaplaceInverterConfig};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

const FULL_BUDGET: usize = 100_000;

#[derive(Clone, Copy, Debug)]
pub struct ValidateConfig {
    /// Ensemble size for the Monte Carlo checks.
    pub n_samples: usize,
    pub master_seed: u64,
    /// Widen the fixed statistical thresholds for sub-budget sample counts.
    pub loose: bool,
}

impl Default for ValidateConfig {
    fn default() -> Self {
        ValidateConfig { n_samples: FULL_BUDGET, master_seed: 0xCA77_A6E0, loose: false }
    }
}

impl ValidateConfig {
    pub fn smoke(master_seed: u64) -> Self {
        ValidateConfig { n_samples: 1_000, master_seed, loose: true }
    }

    /// Scale factor on thresholds that were calibrated at the full budget.
    fn widen(&self) -> f64 {
        if self.loose {
            (FULL_BUDGET as f64 / self.n_samples.max(1) as f64).sqrt().max(1.0)
        } else {
            1.0
        }
    }

    /// Goodness-of-fit p-value floor.
    fn p_floor(&self) -> f64 {
        if self.loose {
            1e-4
        } else {
            0.01
        }
    }
}

/// The reference parameter point every Monte Carlo comparison runs at.
fn reference() -> CattaneoParams {
    CattaneoParams::new(0.7, 0.4, 1.0, 0.5).unwrap()
}

/// Non-overlapping stream ranges per sampling stage; trajectory indices are
/// offsets inside a range.
fn stage_stream(cfg: &ValidateConfig, stage: u64) -> RngStream {
    RngStream::new(cfg.master_seed, stage << 32)
}

const STAGE_W_HALF: u64 = 1;
const STAGE_W_ONE: u64 = 2;
const STAGE_CLOCK_VAR: u64 = 3;
const STAGE_SUBORDINATOR: u64 = 4;
const STAGE_STABLE_KS: u64 = 7;
const STAGE_TEMPERED_MEAN: u64 = 8;

fn w_ensemble(cfg: &ValidateConfig, t: f64, stage: u64) -> Result<TrajectoryEnsemble> {
    run_ensemble(&reference(), t, cfg.n_samples, stage_stream(cfg, stage))
}

/// Row for a deterministic identity: worst observed deviation against zero.
fn exact_row(quantity: impl Into<String>, worst: f64, tol: f64) -> ValidationReport {
    ValidationReport::graded(quantity, worst, 0.0, 0.0, tol)
}

fn lcg_uniform(state: &mut u64) -> f64 {
    *state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    (*state >> 11) as f64 / (1u64 << 53) as f64
}

/// The characteristic function is a probability transform: u-hat(0, t) = 1
/// exactly, swept over scattered parameters and times.
pub fn check_cf_normalization(_cfg: &ValidateConfig) -> Result<Vec<ValidationReport>> {
    let mut state = 0x00C0_FFEEu64;
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let p = CattaneoParams::new(
            0.05 + 0.95 * lcg_uniform(&mut state),
            0.05 + 0.90 * lcg_uniform(&mut state),
            3.0 * lcg_uniform(&mut state),
            0.1 + 2.4 * lcg_uniform(&mut state),
        )?;
        for &t in &[0.1, 0.5, 1.0, 2.0, 5.0] {
            let u = char_fn(&p, 0.0, t)?;
            worst = worst.max((u - Complex64::new(1.0, 0.0)).norm());
        }
    }
    Ok(vec![exact_row("cf-normalization", worst, 1e-12)])
}

/// Time-domain solution against Laplace inversion of its own transform, in
/// both damping regimes (k^2 above and below the spatial symbol).
pub fn check_transform_duality(_cfg: &ValidateConfig) -> Result<Vec<ValidationReport>> {
    let sets = [
        ("transform-duality(damping-dominated)", CattaneoParams::new(0.3, 0.4, 1.0, 1.2)?),
        ("transform-duality(symbol-dominated)", CattaneoParams::new(0.7, 0.4, 1.0, 0.1)?),
    ];
    let cfg_inv = LaplaceInverterConfig::default();
    let mut rows = Vec::new();
    for (label, p) in sets {
        let mut worst = 0.0f64;
        for &xi in &[0.25, 1.0, 3.0] {
            for &t in &[0.5, 1.0] {
                let direct = char_fn(&p, xi, t)?.re;
                let inverted =
                    laplace_invert(&mut |s| fourier_laplace(&p, xi, s), t, &cfg_inv)?;
                worst = worst.max((inverted - direct).abs() / direct.abs());
            }
        }
        rows.push(exact_row(label, worst, 1e-6));
    }
    Ok(rows)
}

/// Empirical characteristic function of the simulated process against the
/// closed-form transform at the reference point.
pub fn check_mc_vs_cf(cfg: &ValidateConfig) -> Result<Vec<ValidationReport>> {
    let p = reference();
    let mut rows = Vec::new();
    for (t, stage) in [(0.5, STAGE_W_HALF), (1.0, STAGE_W_ONE)] {
        let e = w_ensemble(cfg, t, stage)?;
        for &xi in &[0.25, 0.5, 1.0] {
            let (emp, se) = empirical_cf(&e, xi);
            let oracle = char_fn(&p, xi, t)?.re;
            let tol = (0.02 * cfg.widen()).max(4.0 * se);
            rows.push(ValidationReport::graded(
                format!("empirical-cf(t={t},xi={xi})"),
                emp.re,
                se,
                oracle,
                tol,
            ));
        }
    }
    Ok(rows)
}

/// The composed process is symmetric: ensemble means vanish within noise.
pub fn check_zero_mean(cfg: &ValidateConfig) -> Result<Vec<ValidationReport>> {
    let mut rows = Vec::new();
    for (t, stage) in [(0.5, STAGE_W_HALF), (1.0, STAGE_W_ONE)] {
        let e = w_ensemble(cfg, t, stage)?;
        let (mean, se) = e.mean_and_se();
        rows.push(ValidationReport::graded(
            format!("ensemble-mean(t={t})"),
            mean,
            se,
            0.0,
            4.0 * se,
        ));
    }
    Ok(rows)
}

/// Mean of the sampled inverse subordinator against its closed form
/// t^{2 beta} E_{beta, 2 beta + 1}(-2 k t^beta).
pub fn check_subordinator_mean(cfg: &ValidateConfig) -> Result<Vec<ValidationReport>> {
    let p = reference();
    let mut rows = Vec::new();
    for (idx, &t) in [0.5, 1.0, 2.0].iter().enumerate() {
        let root = stage_stream(cfg, STAGE_SUBORDINATOR + idx as u64);
        let samples: Vec<f64> = (0..cfg.n_samples)
            .map(|i| sample_inverse_subordinator(&p, t, &root.trajectory(i as u64)))
            .collect::<Result<_>>()?;
        let (mean, se) = stats::mean_and_se(&samples);
        let oracle = mean_subordinator(&p, t)?;
        rows.push(ValidationReport::graded(
            format!("subordinator-mean(t={t})"),
            mean,
            se,
            oracle,
            0.03 * cfg.widen() * oracle,
        ));
    }
    Ok(rows)
}

/// Monte Carlo estimate of Var B(T(1)) from its own stream range.
fn clock_variance_mc(cfg: &ValidateConfig) -> Result<(f64, f64)> {
    let tp = TemperedParams::new(reference().alpha, reference().lambda, 1.0)?;
    let root = stage_stream(cfg, STAGE_CLOCK_VAR);
    let samples: Vec<f64> = (0..cfg.n_samples)
        .map(|i| {
            let s = root.trajectory(i as u64);
            let tau = sample_tempered(tp, &s.substream(0))?;
            let z: f64 = s.substream(1).rng().sample(StandardNormal);
            Ok((2.0 * tau).sqrt() * z)
        })
        .collect::<Result<_>>()?;
    Ok(stats::variance_and_se(&samples))
}

/// Variance transfer under the random clock: Var W(t) = U(t) * Var X(1),
/// both sides estimated from independent sample sets.
pub fn check_variance_identity(cfg: &ValidateConfig) -> Result<Vec<ValidationReport>> {
    let p = reference();
    let e = w_ensemble(cfg, 1.0, STAGE_W_ONE)?;
    let (var_w, var_se) = e.variance_and_se();
    let (var_x, _) = clock_variance_mc(cfg)?;
    let oracle = mean_subordinator(&p, 1.0)? * var_x;
    Ok(vec![ValidationReport::graded(
        "variance-identity(t=1)",
        var_w,
        var_se,
        oracle,
        0.05 * cfg.widen() * oracle,
    )])
}

/// At zero tempering the closed-form variance collapses to
/// alpha (1 - alpha) U(t); both sides evaluated independently.
pub fn check_variance_reduction(_cfg: &ValidateConfig) -> Result<Vec<ValidationReport>> {
    let p = CattaneoParams::new(0.3, 0.4, 0.0, 0.5)?;
    let ml = MlParams::new(p.beta, 2.0 * p.beta + 1.0)?;
    let mut worst = 0.0f64;
    for &t in &[0.5f64, 1.0, 2.0] {
        let u = t.powf(2.0 * p.beta) * mittag_leffler_real(ml, -2.0 * p.k * t.powf(p.beta))?;
        let want = p.alpha * (1.0 - p.alpha) * u;
        let got = variance_time_changed(&p, t)?;
        worst = worst.max((got - want).abs());
    }
    Ok(vec![exact_row("variance-reduction(lambda=0)", worst, 1e-12)])
}

/// The general closed-form variance against ensemble variance at unit
/// tempering. Informational: emitted with its z-score, never gating.
pub fn check_variance_closed_form(cfg: &ValidateConfig) -> Result<Vec<ValidationReport>> {
    let p = reference();
    let e = w_ensemble(cfg, 1.0, STAGE_W_ONE)?;
    let (var_w, var_se) = e.variance_and_se();
    let oracle = variance_time_changed(&p, 1.0)?;
    Ok(vec![ValidationReport::graded(
        "variance-closed-form(lambda=1,t=1)",
        var_w,
        var_se,
        oracle,
        4.0 * var_se,
    )
    .reported()])
}

/// The first-order-in-time solution satisfies its damped second-order ODE
/// in t with unit initial value, checked by central differences.
pub fn check_wave_limit_ode(_cfg: &ValidateConfig) -> Result<Vec<ValidationReport>> {
    let sets = [
        CattaneoParams::new(0.3, 0.4, 1.0, 1.2)?,
        CattaneoParams::new(0.7, 0.4, 1.0, 0.1)?,
        CattaneoParams::new(0.5, 0.25, 0.5, 1.0)?,
    ];
    let points = [
        Complex64::new(0.3, 0.0),
        Complex64::new(0.8, 0.0),
        Complex64::new(0.5, 1.2),
    ];
    let h = 1e-4;
    let mut worst_res = 0.0f64;
    let mut worst_init = 0.0f64;
    for p in &sets {
        let la = p.lambda.powf(p.alpha);
        for &s in &points {
            let psi = (s + p.lambda).powf(p.alpha) - la;
            for &t in &[0.5, 1.0] {
                let up = beta1_space_laplace(p, s, t + h)?;
                let u0 = beta1_space_laplace(p, s, t)?;
                let um = beta1_space_laplace(p, s, t - h)?;
                let utt = (up - 2.0 * u0 + um) / (h * h);
                let ut = (up - um) / (2.0 * h);
                worst_res = worst_res.max((utt + 2.0 * p.k * ut + psi * u0).norm());
            }
            worst_init =
                worst_init.max((beta1_space_laplace(p, s, 0.0)? - Complex64::new(1.0, 0.0)).norm());
        }
    }
    Ok(vec![
        exact_row("wave-ode-residual", worst_res, 1e-6),
        exact_row("wave-initial-value", worst_init, 1e-12),
    ])
}

/// Inverting the boundary-value transform at the wall returns the boundary
/// signal itself; at unit spatial order the transform collapses to an
/// exponential in x.
pub fn check_boundary_recovery(_cfg: &ValidateConfig) -> Result<Vec<ValidationReport>> {
    let p = CattaneoParams::new(0.6, 0.4, 1.0, 0.8)?;
    let mut worst_const = 0.0f64;
    let mut worst_decay = 0.0f64;
    for &t in &[0.5, 1.0, 2.0] {
        worst_const = worst_const.max((dirichlet_value(&p, 0.0, t, &BoundarySignal::One)? - 1.0).abs());
        let want = (-t).exp();
        worst_decay = worst_decay
            .max((dirichlet_value(&p, 0.0, t, &BoundarySignal::Exp { rate: 1.0 })? - want).abs());
    }

    let unit = CattaneoParams::new(1.0, 0.4, 1.0, 0.5)?;
    let signal = BoundarySignal::One;
    let mut worst_unit = 0.0f64;
    for &x in &[0.3, 1.0] {
        for &s in &[Complex64::new(0.7, 0.0), Complex64::new(1.3, 0.8)] {
            let mu = s * s + 2.0 * unit.k * s + unit.lambda;
            let phi_l = signal.laplace(s);
            let closed = phi_l * (-unit.lambda * x).exp() * (-mu * x).exp();
            let got = dirichlet_laplace(&unit, x, s, phi_l)?;
            worst_unit = worst_unit.max((got - closed).norm() / closed.norm());
        }
    }
    Ok(vec![
        exact_row("boundary-recovery(const)", worst_const, 1e-6),
        exact_row("boundary-recovery(decaying)", worst_decay, 1e-6),
        exact_row("boundary-unit-order-closed-form", worst_unit, 1e-10),
    ])
}

/// At matched damping k = lambda^{alpha/2} the kernel-convolution solution
/// and Laplace inversion of the transform solve the same problem two ways.
pub fn check_matched_damping(_cfg: &ValidateConfig) -> Result<Vec<ValidationReport>> {
    let p = CattaneoParams::new(0.6, 0.4, 1.0, 1.0)?;
    let dx = 1.0 / 512.0;
    let phi = GridFunction::from_fn(&GridSpec { x0: 0.0, dx, n: 1128 }, |_| 1.0)?;
    let signal = BoundarySignal::One;
    let mut worst = 0.0f64;
    for &x in &[0.3, 0.6, 1.0] {
        for &t in &[0.5, 1.0, 2.0] {
            let conv = dirichlet_special_case(&p, x, t, &phi)?;
            let inv = dirichlet_value(&p, x, t, &signal)?;
            worst = worst.max((conv - inv).abs() / inv.abs());
        }
    }
    Ok(vec![exact_row("matched-damping-convolution", worst, 1e-3)])
}

/// Stable sampler against the half-order closed-form law, and the tempered
/// sampler's mean against the derivative of its Laplace exponent.
pub fn check_sampler_distribution(cfg: &ValidateConfig) -> Result<Vec<ValidationReport>> {
    let n_ks = cfg.n_samples.min(10_000);
    let sp = StableParams::new(0.5, 1.0)?;
    let root = stage_stream(cfg, STAGE_STABLE_KS);
    let samples: Vec<f64> =
        (0..n_ks).map(|i| sample_stable(sp, &root.trajectory(i as u64))).collect();
    // Q(1/2, u^2) is erfc(u) for u >= 0, the half-order first-passage CDF
    let cdf = |x: f64| {
        if x <= 0.0 {
            0.0
        } else {
            let u = sp.t / (2.0 * x.sqrt());
            stats::reg_gamma_upper(0.5, u * u)
        }
    };
    let d = ks_statistic(&samples, cdf)?;
    let p_ks = ks_pvalue(n_ks, d);

    let tp = TemperedParams::new(0.7, 1.0, 1.0)?;
    let root = stage_stream(cfg, STAGE_TEMPERED_MEAN);
    let tempered: Vec<f64> = (0..cfg.n_samples)
        .map(|i| sample_tempered(tp, &root.trajectory(i as u64)))
        .collect::<Result<_>>()?;
    let (mean, se) = stats::mean_and_se(&tempered);
    let oracle = tp.alpha * tp.lambda.powf(tp.alpha - 1.0) * tp.t;
    Ok(vec![
        ValidationReport::graded("stable-ks-pvalue", p_ks, 0.0, 1.0, 1.0 - cfg.p_floor()),
        ValidationReport::graded("tempered-mean", mean, se, oracle, 4.0 * se),
    ])
}

/// Mittag-Leffler engine identities: the exponential and cosine collapses,
/// an extended-precision series anchor, and the Laplace-pair round trip
/// through the inversion engine.
pub fn check_ml_engine(_cfg: &ValidateConfig) -> Result<Vec<ValidationReport>> {
    let e1 = mittag_leffler(MlParams::new(1.0, 1.0)?, Complex64::new(1.0, 0.0))?;
    let exp_err = (e1 - Complex64::new(std::f64::consts::E, 0.0)).norm() / std::f64::consts::E;

    let arg = std::f64::consts::FRAC_PI_2.powi(2);
    let cos_val = mittag_leffler(MlParams::new(2.0, 1.0)?, Complex64::new(-arg, 0.0))?.norm();

    // 40-digit series evaluation of E_{0.7,1}(-3.2), rounded to f64
    let anchor = 0.128_290_272_579_815_23;
    let got = mittag_leffler(MlParams::new(0.7, 1.0)?, Complex64::new(-3.2, 0.0))?;
    let anchor_err = (got - Complex64::new(anchor, 0.0)).norm() / anchor;

    let beta = 0.4;
    let inverted = laplace_invert(
        &mut |s| Ok(s.powf(beta - 1.0) / (s.powf(beta) + 1.0)),
        1.0,
        &LaplaceInverterConfig::default(),
    )?;
    let direct = mittag_leffler_real(MlParams::new(beta, 1.0)?, -1.0)?;
    Ok(vec![
        exact_row("ml-exp-identity", exp_err, 1e-8),
        exact_row("ml-cosine-root", cos_val, 1e-12),
        exact_row("ml-series-anchor", anchor_err, 1e-10),
        exact_row("ml-laplace-pair", (inverted - direct).abs(), 1e-7),
    ])
}

/// Fourier inversion of the transform solution against the simulated
/// ensemble: unit mass and a chi-squared histogram fit.
pub fn check_density_pipeline(cfg: &ValidateConfig) -> Result<Vec<ValidationReport>> {
    let p = reference();
    let t = 1.0;
    let spec = GridSpec { x0: -10.0, dx: 0.01, n: 2001 };
    let mut cf = |xi: f64| char_fn(&p, xi, t).map(|c| c.re);
    let density = cf_to_density(&mut cf, &spec)?;
    let grid = &density.grid;
    let mass = grid.trapezoid();

    // cumulative trapezoid CDF on the fine grid, linearly interpolated
    let mut cdf = Vec::with_capacity(grid.values.len());
    let mut acc = 0.0;
    cdf.push(0.0);
    for w in grid.values.windows(2) {
        acc += 0.5 * (w[0] + w[1]) * grid.dx;
        cdf.push(acc);
    }
    let cdf_at = |x: f64| -> f64 {
        let pos = (x - grid.x0) / grid.dx;
        let i = (pos.floor() as usize).min(cdf.len() - 2);
        let frac = pos - i as f64;
        cdf[i] + frac * (cdf[i + 1] - cdf[i])
    };

    // 38 equal-width cells spanning [-3.2, 3.2] plus two unbounded end bins
    let interior = 38usize;
    let (lo, hi) = (-3.2f64, 3.2f64);
    let width = (hi - lo) / interior as f64;
    let e = w_ensemble(cfg, t, STAGE_W_ONE)?;
    let n = e.samples.len();
    let mut observed = vec![0u64; interior + 2];
    for &w in &e.samples {
        let bin = if w < lo {
            0
        } else if w >= hi {
            interior + 1
        } else {
            1 + (((w - lo) / width) as usize).min(interior - 1)
        };
        observed[bin] += 1;
    }
    let mut expected = Vec::with_capacity(interior + 2);
    expected.push(cdf_at(lo) / mass * n as f64);
    for i in 0..interior {
        let a = cdf_at(lo + i as f64 * width);
        let b = cdf_at(lo + (i + 1) as f64 * width);
        expected.push((b - a) / mass * n as f64);
    }
    expected.push((mass - cdf_at(hi)) / mass * n as f64);
    let stat = chi_squared_stat(&observed, &expected)?;
    let p_chi = chi_squared_pvalue(stat, interior + 1)?;

    Ok(vec![
        ValidationReport::graded("density-mass", mass, 0.0, 1.0, 1e-3),
        ValidationReport::graded("density-chi2-pvalue", p_chi, 0.0, 1.0, 1.0 - cfg.p_floor()),
    ])
}

/// Every check with its stable identifier, in reporting order.
pub const CHECKS: &[(&str, fn(&ValidateConfig) -> Result<Vec<ValidationReport>>)] = &[
    ("cf-normalization", check_cf_normalization),
    ("transform-duality", check_transform_duality),
    ("mc-vs-cf", check_mc_vs_cf),
    ("zero-mean", check_zero_mean),
    ("inverse-subordinator-mean", check_subordinator_mean),
    ("variance-identity", check_variance_identity),
    ("variance-reduction-at-zero-tempering", check_variance_reduction),
    ("variance-closed-form-reported", check_variance_closed_form),
    ("wave-limit-ode", check_wave_limit_ode),
    ("boundary-recovery", check_boundary_recovery),
    ("matched-damping-convolution", check_matched_damping),
    ("sampler-distribution", check_sampler_distribution),
    ("ml-engine", check_ml_engine),
    ("density-pipeline", check_density_pipeline),
];

/// Run the whole suite and collect every row.
pub fn run_validation(cfg: &ValidateConfig) -> Result<Vec<ValidationReport>> {
    let mut rows = Vec::new();
    for (_, check) in CHECKS {
        rows.extend(check(cfg)?);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::Verdict;

    #[test]
    fn smoke_run_emits_every_row_kind() {
        let cfg = ValidateConfig::smoke(11);
        let rows = run_validation(&cfg).unwrap();
        assert_eq!(rows.len(), 31);
        let reported: Vec<_> =
            rows.iter().filter(|r| r.verdict == Verdict::Reported).collect();
        assert_eq!(reported.len(), 1);
        assert!(reported[0].quantity.contains("variance-closed-form"));
        for r in &rows {
            assert!(r.std_error.is_finite());
            assert!(r.mc_estimate.is_finite());
            assert!(r.threshold > 0.0, "{} has no budget", r.quantity);
        }
    }

    #[test]
    fn deterministic_checks_pass_at_pinned_tolerances() {
        let cfg = ValidateConfig::default();
        for (name, check) in CHECKS {
            // statistical checks carry the full sample budget; covered by the
            // acceptance suite rather than unit scope
            if matches!(
                *name,
                "mc-vs-cf"
                    | "zero-mean"
                    | "inverse-subordinator-mean"
                    | "variance-identity"
                    | "variance-closed-form-reported"
                    | "sampler-distribution"
                    | "density-pipeline"
            ) {
                continue;
            }
            for row in check(&cfg).unwrap() {
                assert!(row.passed(), "{}: {row:?}", name);
            }
        }
    }
}
