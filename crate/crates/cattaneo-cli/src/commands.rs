//! One function per subcommand. Each writes a CSV data file plus a JSON
//! provenance sidecar into the configured output directory and returns the
//! process exit code.

use crate::config::RunConfig;
use crate::output::{fmt17, provenance, write_csv, write_sidecar};
use anyhow::{anyhow, bail, Context, Result};
use cattaneo_core::analytic::{
    char_fn, dirichlet_special_case, dirichlet_value, mean_subordinator, variance_time_changed,
    BoundarySignal,
};
use cattaneo_core::process::run_ensemble;
use cattaneo_core::transforms::{cf_to_density, GridFunction, GridSpec};
use cattaneo_core::validate::{ValidateConfig, CHECKS};
use cattaneo_core::{RngStream, ValidationReport, Verdict};
use serde::Serialize;
use std::time::Instant;

/// Tabulate the characteristic function over the frequency and time grids.
pub fn cmd_cf(cfg: &RunConfig) -> Result<i32> {
    let start = Instant::now();
    cfg.params.validate().map_err(|e| anyhow!(e))?;
    cfg.check_grids()?;
    let mut rows = Vec::new();
    for &xi in &cfg.xi_grid {
        for &t in &cfg.t_grid {
            let u = char_fn(&cfg.params, xi, t).map_err(|e| anyhow!(e))?;
            if u.im.abs() > 1e-10 {
                bail!("characteristic function grew an imaginary part at xi={xi}, t={t}: {}", u.im);
            }
            rows.push(format!("{},{},{},{}", fmt17(xi), fmt17(t), fmt17(u.re), fmt17(u.im)));
        }
    }

    #[derive(Serialize)]
    struct Detail {
        rows: usize,
        xi_grid: Vec<f64>,
        t_grid: Vec<f64>,
    }
    let csv = write_csv(&cfg.output_dir, "cf", "xi,t,re_u,im_u", &rows)?;
    let detail =
        Detail { rows: rows.len(), xi_grid: cfg.xi_grid.clone(), t_grid: cfg.t_grid.clone() };
    let side = provenance("cf", cfg.params, cfg.seed, start.elapsed().as_millis(), detail);
    write_sidecar(&cfg.output_dir, "cf", &side)?;
    println!("wrote {}", csv.display());
    Ok(0)
}

#[derive(Serialize)]
struct EnsembleMoments {
    t: f64,
    n: usize,
    mean: f64,
    mean_se: f64,
    variance: f64,
    variance_se: f64,
}

/// Sample ensembles of the composed process at every grid time.
pub fn cmd_simulate(cfg: &RunConfig) -> Result<i32> {
    let start = Instant::now();
    cfg.params.simulation_ready().map_err(|e| anyhow!(e))?;
    cfg.check_grids()?;
    let mut rows = Vec::new();
    let mut moments = Vec::new();
    for (idx, &t) in cfg.t_grid.iter().enumerate() {
        let stream = RngStream::new(cfg.seed, (idx as u64) << 32);
        let e = run_ensemble(&cfg.params, t, cfg.n_samples, stream).map_err(|e| anyhow!(e))?;
        let (mean, mean_se) = e.mean_and_se();
        let (variance, variance_se) = e.variance_and_se();
        moments.push(EnsembleMoments { t, n: e.n, mean, mean_se, variance, variance_se });
        for &w in &e.samples {
            rows.push(format!("{},{}", fmt17(t), fmt17(w)));
        }
    }

    #[derive(Serialize)]
    struct Detail {
        n_samples: usize,
        moments: Vec<EnsembleMoments>,
    }
    let csv = write_csv(&cfg.output_dir, "simulate", "t,w", &rows)?;
    let detail = Detail { n_samples: cfg.n_samples, moments };
    let side = provenance("simulate", cfg.params, cfg.seed, start.elapsed().as_millis(), detail);
    write_sidecar(&cfg.output_dir, "simulate", &side)?;
    println!("wrote {}", csv.display());
    Ok(0)
}

/// Invert the characteristic function to a density on a symmetric x grid.
pub fn cmd_density(cfg: &RunConfig, x_max: f64, dx: f64) -> Result<i32> {
    let start = Instant::now();
    cfg.params.validate().map_err(|e| anyhow!(e))?;
    cfg.check_grids()?;
    if !(x_max > 0.0) || !(dx > 0.0) || !x_max.is_finite() || !dx.is_finite() {
        bail!("need x_max > 0 and dx > 0, got {x_max}, {dx}");
    }
    let n = (2.0 * x_max / dx).round() as usize + 1;
    let spec = GridSpec { x0: -x_max, dx, n };

    #[derive(Serialize)]
    struct PerTime {
        t: f64,
        mass: f64,
        xi_cutoff: f64,
        head_error: f64,
        tail_estimate: f64,
        warnings: Vec<String>,
    }
    let mut rows = Vec::new();
    let mut details = Vec::new();
    for &t in &cfg.t_grid {
        let mut cf = |xi: f64| char_fn(&cfg.params, xi, t).map(|c| c.re);
        let d = cf_to_density(&mut cf, &spec).map_err(|e| anyhow!(e))?;
        for (i, &p) in d.grid.values.iter().enumerate() {
            rows.push(format!("{},{},{}", fmt17(t), fmt17(d.grid.x(i)), fmt17(p)));
        }
        details.push(PerTime {
            t,
            mass: d.grid.trapezoid(),
            xi_cutoff: d.xi_cutoff,
            head_error: d.head_error,
            tail_estimate: d.tail_estimate,
            warnings: d.warnings,
        });
    }

    let csv = write_csv(&cfg.output_dir, "density", "t,x,density", &rows)?;
    let side = provenance("density", cfg.params, cfg.seed, start.elapsed().as_millis(), details);
    write_sidecar(&cfg.output_dir, "density", &side)?;
    println!("wrote {}", csv.display());
    Ok(0)
}

/// Closed-form time-change mean and process variance over the time grid.
pub fn cmd_variance(cfg: &RunConfig) -> Result<i32> {
    let start = Instant::now();
    cfg.params.validate().map_err(|e| anyhow!(e))?;
    cfg.check_grids()?;
    let mut rows = Vec::new();
    for &t in &cfg.t_grid {
        let u = mean_subordinator(&cfg.params, t).map_err(|e| anyhow!(e))?;
        let v = variance_time_changed(&cfg.params, t).map_err(|e| anyhow!(e))?;
        rows.push(format!("{},{},{}", fmt17(t), fmt17(u), fmt17(v)));
    }

    #[derive(Serialize)]
    struct Detail {
        rows: usize,
    }
    let csv = write_csv(&cfg.output_dir, "variance", "t,subordinator_mean,variance", &rows)?;
    let side = provenance(
        "variance",
        cfg.params,
        cfg.seed,
        start.elapsed().as_millis(),
        Detail { rows: rows.len() },
    );
    write_sidecar(&cfg.output_dir, "variance", &side)?;
    println!("wrote {}", csv.display());
    Ok(0)
}

/// Whether the damping rate matches the tempering rate to the power
/// alpha / 2, which unlocks the independent convolution route.
fn damping_matched(p: &cattaneo_core::CattaneoParams) -> bool {
    let matched = p.lambda.powf(0.5 * p.alpha);
    (p.k - matched).abs() <= 1e-12 * matched.max(1.0) && p.alpha < 1.0
}

/// Boundary-value solution on the half line; emits the dual-route columns
/// when the convolution formula applies.
pub fn cmd_dirichlet(cfg: &RunConfig, x_grid: &[f64], signal: BoundarySignal) -> Result<i32> {
    let start = Instant::now();
    cfg.params.validate().map_err(|e| anyhow!(e))?;
    cfg.check_grids()?;
    if x_grid.is_empty() || x_grid.iter().any(|x| !x.is_finite() || *x < 0.0) {
        bail!("x grid must be nonempty with finite x >= 0");
    }
    let matched = damping_matched(&cfg.params);
    let phi = if matched {
        let dx = 1.0 / 512.0;
        let horizon = cfg.t_grid.last().unwrap() * 1.05 + dx;
        let n = (horizon / dx).ceil() as usize + 1;
        Some(
            GridFunction::from_fn(&GridSpec { x0: 0.0, dx, n }, |t| signal.value(t))
                .map_err(|e| anyhow!(e))?,
        )
    } else {
        None
    };

    let mut rows = Vec::new();
    for &x in x_grid {
        for &t in &cfg.t_grid {
            let u = dirichlet_value(&cfg.params, x, t, &signal).map_err(|e| anyhow!(e))?;
            match &phi {
                Some(phi) => {
                    let conv =
                        dirichlet_special_case(&cfg.params, x, t, phi).map_err(|e| anyhow!(e))?;
                    rows.push(format!(
                        "{},{},{},{},{}",
                        fmt17(x),
                        fmt17(t),
                        fmt17(u),
                        fmt17(conv),
                        fmt17(conv - u)
                    ));
                }
                None => rows.push(format!("{},{},{}", fmt17(x), fmt17(t), fmt17(u))),
            }
        }
    }

    #[derive(Serialize)]
    struct Detail {
        signal: BoundarySignal,
        matched_damping: bool,
        x_grid: Vec<f64>,
    }
    let header = if matched { "x,t,u,u_conv,diff" } else { "x,t,u" };
    let csv = write_csv(&cfg.output_dir, "dirichlet", header, &rows)?;
    let detail =
        Detail { signal, matched_damping: matched, x_grid: x_grid.to_vec() };
    let side = provenance("dirichlet", cfg.params, cfg.seed, start.elapsed().as_millis(), detail);
    write_sidecar(&cfg.output_dir, "dirichlet", &side)?;
    println!("wrote {}", csv.display());
    Ok(0)
}

#[derive(Serialize)]
struct CheckReport {
    id: &'static str,
    rows: Vec<ValidationReport>,
}

/// Run the cross-validation suite, print one line per row, write the JSON
/// report, and gate the exit code on the asserted rows.
pub fn cmd_validate(cfg: &RunConfig, n_samples: Option<usize>, smoke: bool) -> Result<i32> {
    let start = Instant::now();
    let n = n_samples.unwrap_or(if smoke { 1_000 } else { cfg.n_samples });
    if n < 100 {
        bail!("validate needs n_samples >= 100, got {n}");
    }
    let vcfg = ValidateConfig { n_samples: n, master_seed: cfg.seed, loose: smoke };

    let mut checks = Vec::new();
    let mut all_pass = true;
    for (id, check) in CHECKS {
        let mut rows = check(&vcfg)
            .map_err(|e| anyhow!(e))
            .with_context(|| format!("check {id} could not run"))?;
        for row in &mut rows {
            if let Some(&tol) = cfg.tolerances.get(&row.quantity) {
                let regraded = ValidationReport::graded(
                    row.quantity.clone(),
                    row.mc_estimate,
                    row.std_error,
                    row.oracle,
                    tol,
                );
                *row = if row.verdict == Verdict::Reported { regraded.reported() } else { regraded };
            }
            all_pass &= row.passed();
            let z = if row.z_score.is_finite() {
                format!("{:8.2}", row.z_score)
            } else {
                format!("{:>8}", "-")
            };
            println!(
                "{:42} {:13.6e} vs {:13.6e}  z {z}  {:?}",
                row.quantity, row.mc_estimate, row.oracle, row.verdict
            );
        }
        checks.push(CheckReport { id, rows });
    }

    #[derive(Serialize)]
    struct Detail {
        n_samples: usize,
        loose: bool,
        passed: bool,
        checks: Vec<CheckReport>,
    }
    let detail = Detail { n_samples: n, loose: smoke, passed: all_pass, checks };
    let side = provenance("validate", cfg.params, cfg.seed, start.elapsed().as_millis(), detail);
    let path = write_sidecar(&cfg.output_dir, "validate", &side)?;
    println!("wrote {}", path.display());
    Ok(if all_pass { 0 } else { 1 })
}
