//! `teugels verify`: the full suite on one spec.
//!
//! Stages run in order: validate, covariation, martingale tests,
//! decomposition residuals (pure-jump specs only) and, when asked, the
//! negative control. Every number in the bundle is a function of the
//! [`RunConfig`] alone; path work is aggregated by path index, so the worker
//! count never changes a byte of output.

use std::fmt::Write;

use rayon::prelude::*;
use serde::Serialize;
use teugels_core::martingale::{increment_suite, TestConfig};
use teugels_core::process::ValidationReport;
use teugels_core::{
    decomposition_residual, martingale_path, optional_covariation_check, simulate_path, validate, variations,
    MartingaleReport, ProcessSpec, Statistic, TestFunction, Verdict,
};

use crate::args::{parse_orders, parse_pairs, Format, VerifyArgs};
use crate::output::{to_json, Sink};
use crate::simulate_cmd::dump_paths;
use crate::{load_spec, Outcome, StageError};

/// Largest `n + m` in the covariation check.
pub const COVARIATION_ORDER: usize = 8;
/// Covariation tolerance relative to `1 + max|X^(n+m)|`.
pub const COVARIATION_TOLERANCE: f64 = 1e-9;
/// Accepted range of the residual ratio across one grid doubling.
pub const RATIO_RANGE: (f64, f64) = (0.3, 0.7);
/// Largest accepted residual relative to `max|M^(n)|` on the finer grid.
pub const RELATIVE_RESIDUAL: f64 = 1e-2;

/// Everything that determines a verify bundle. Output location and worker
/// count are left out on purpose: neither affects the results.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub spec: String,
    pub seed: u64,
    pub horizon: f64,
    pub grid_cells: usize,
    pub orders: Vec<usize>,
    pub compensator_orders: Vec<usize>,
    pub charlier_orders: Vec<usize>,
    pub residual_orders: Vec<usize>,
    pub pairs: Vec<(f64, f64)>,
    pub paths: u64,
    pub covariation_paths: u64,
    pub residual_paths: u64,
    pub refine: u32,
    pub threshold: f64,
    pub negative_control: bool,
    pub formats: Vec<Format>,
    pub dump_paths: usize,
}

impl RunConfig {
    pub fn from_args(args: &VerifyArgs) -> Result<Self, StageError> {
        let config = |e: String| StageError::new("config", anyhow::anyhow!(e));
        let h = args.sim.horizon;
        let pairs = match &args.pairs {
            Some(text) => parse_pairs(text).map_err(config)?,
            None => vec![(h / 4.0, h / 2.0), (h / 2.0, h)],
        };
        if let Some(&(s, t)) = pairs.iter().find(|&&(s, t)| t > h || s >= t || s < 0.0) {
            return Err(config(format!(
                "pair ({s}, {t}) must satisfy 0 <= s < t <= horizon {h}"
            )));
        }
        if args.refine == 0 {
            return Err(config("--refine must be at least 1".into()));
        }
        if args.threshold.is_nan() || args.threshold <= 0.0 {
            return Err(config("--threshold must be positive".into()));
        }
        let orders = |text: &str, name: &str| -> Result<Vec<usize>, StageError> {
            let v = parse_orders(text).map_err(config)?;
            if v.contains(&0) {
                return Err(config(format!("{name} must be at least 1")));
            }
            Ok(v)
        };
        let mut formats = args.output.format.clone();
        formats.sort_unstable();
        formats.dedup();
        Ok(Self {
            command: "verify",
            spec: args.sim.spec.display().to_string(),
            seed: args.sim.seed,
            horizon: h,
            grid_cells: args.sim.grid_cells,
            orders: orders(&args.orders, "--orders")?,
            compensator_orders: orders(&args.compensator_orders, "--compensator-orders")?,
            charlier_orders: orders(&args.charlier_orders, "--charlier-orders")?,
            residual_orders: orders(&args.residual_orders, "--residual-orders")?,
            pairs,
            paths: args.paths,
            covariation_paths: args.covariation_paths,
            residual_paths: args.residual_paths,
            refine: args.refine,
            threshold: args.threshold,
            negative_control: args.negative_control,
            formats,
            dump_paths: args.sim.dump_paths,
        })
    }

    fn max_order(&self) -> usize {
        let all = [&self.orders, &self.compensator_orders, &self.residual_orders];
        all.iter()
            .flat_map(|v| v.iter())
            .copied()
            .max()
            .unwrap_or(1)
            .max(COVARIATION_ORDER / 2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StageStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageSummary {
    pub stage: &'static str,
    pub status: StageStatus,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CovariationEntry {
    pub n: usize,
    pub m: usize,
    /// Max over paths and grid points of `|[Y^(n),Y^(m)] - X^(n+m)|`.
    pub max_discrepancy: f64,
    /// Max over paths of the discrepancy divided by `1 + max|X^(n+m)|`.
    pub max_normalized: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CovariationReport {
    pub paths: u64,
    pub tolerance: f64,
    pub entries: Vec<CovariationEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualPath {
    pub path: u64,
    pub coarse: f64,
    pub fine: f64,
    /// `max|M^(n)|` on the path grid.
    pub scale: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualEntry {
    pub order: usize,
    pub coarse_cells_per_unit: usize,
    pub fine_cells_per_unit: usize,
    /// Sum over paths of the finer max residual over the coarser one.
    pub ratio: Option<f64>,
    /// Worst per-path residual relative to `max|M^(n)|`, finer grid.
    pub max_relative: f64,
    pub pass: bool,
    pub paths: Vec<ResidualPath>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionReport {
    pub ratio_range: (f64, f64),
    pub relative_tolerance: f64,
    pub entries: Vec<ResidualEntry>,
}

/// The full result of one `verify` run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyBundle {
    pub config: RunConfig,
    pub spec: ProcessSpec,
    pub passed: bool,
    pub stages: Vec<StageSummary>,
    pub validation: ValidationReport,
    pub covariation: CovariationReport,
    pub martingale: Vec<MartingaleReport>,
    pub decomposition: Option<DecompositionReport>,
}

impl VerifyBundle {
    pub fn stage(&self, name: &str) -> Option<&StageSummary> {
        self.stages.iter().find(|s| s.stage == name)
    }

    pub fn report(&self, statistic: Statistic) -> Option<&MartingaleReport> {
        self.martingale.iter().find(|r| r.statistic == statistic)
    }

    pub fn to_json(&self) -> Result<String, StageError> {
        to_json(self)
    }

    pub fn to_text(&self) -> String {
        let mut t = String::new();
        let c = &self.config;
        let _ = writeln!(
            t,
            "verify  spec={}  seed={}  horizon={}  grid_cells={}",
            c.spec, c.seed, c.horizon, c.grid_cells
        );
        let _ = writeln!(t, "result: {}", if self.passed { "PASS" } else { "FAIL" });
        t.push_str("\nstages\n");
        for s in &self.stages {
            let status = match s.status {
                StageStatus::Pass => "pass",
                StageStatus::Fail => "FAIL",
                StageStatus::Skipped => "skipped",
            };
            let _ = writeln!(t, "  {:<18} {:<8} {}", s.stage, status, s.detail);
        }
        t.push_str("\nvalidation\n");
        for check in &self.validation.checks {
            let _ = writeln!(
                t,
                "  {:<22} {:<16} max={:.16e}",
                check.function,
                format!("{:?}", check.status),
                check.max_value
            );
        }
        let _ = writeln!(
            t,
            "\ncovariation  paths={} tolerance={:e}",
            self.covariation.paths, self.covariation.tolerance
        );
        let _ = writeln!(
            t,
            "  {:>3} {:>3} {:>25} {:>25} {:>6}",
            "n", "m", "max_discrepancy", "max_normalized", "pass"
        );
        for e in &self.covariation.entries {
            let _ = writeln!(
                t,
                "  {:>3} {:>3} {:>25.16e} {:>25.16e} {:>6}",
                e.n, e.m, e.max_discrepancy, e.max_normalized, e.pass
            );
        }
        t.push_str("\nincrement tests\n");
        for r in &self.martingale {
            let _ = write!(t, "{r}");
        }
        match &self.decomposition {
            None => t.push_str("\ndecomposition  skipped (requires a pure-jump spec)\n"),
            Some(d) => {
                let _ = writeln!(
                    t,
                    "\ndecomposition  ratio range [{}, {}]  relative tolerance {:e}",
                    d.ratio_range.0, d.ratio_range.1, d.relative_tolerance
                );
                let _ = writeln!(
                    t,
                    "  {:>5} {:>8} {:>8} {:>25} {:>25} {:>6}",
                    "order", "coarse", "fine", "ratio", "max_relative", "pass"
                );
                for e in &d.entries {
                    let ratio = e.ratio.map_or_else(|| "-".to_string(), |r| format!("{r:.16e}"));
                    let _ = writeln!(
                        t,
                        "  {:>5} {:>8} {:>8} {:>25} {:>25.16e} {:>6}",
                        e.order, e.coarse_cells_per_unit, e.fine_cells_per_unit, ratio, e.max_relative, e.pass
                    );
                }
            }
        }
        t
    }

    pub fn residual_csv(&self) -> Option<String> {
        let d = self.decomposition.as_ref()?;
        let mut out = String::from("order,path,coarse,fine,scale\n");
        for e in &d.entries {
            for p in &e.paths {
                let _ = writeln!(out, "{},{},{:e},{:e},{:e}", e.order, p.path, p.coarse, p.fine, p.scale);
            }
        }
        Some(out)
    }
}

fn covariation(
    spec: &ProcessSpec,
    config: &RunConfig,
    grid: &teugels_core::TimeGrid,
) -> Result<CovariationReport, StageError> {
    let pairs: Vec<(usize, usize)> = (1..COVARIATION_ORDER)
        .flat_map(|n| (n..=COVARIATION_ORDER - n).map(move |m| (n, m)))
        .collect();
    let per_path = (0..config.covariation_paths)
        .into_par_iter()
        .map(|p| -> Result<Vec<(f64, f64)>, StageError> {
            let stage = |e| StageError::new("covariation", e);
            let path = simulate_path(spec, grid, config.seed, p).map_err(stage)?;
            pairs
                .iter()
                .map(|&(n, m)| {
                    let gap = optional_covariation_check(&path, spec, n, m).map_err(stage)?;
                    let scale = variations(&path, spec, n + m)
                        .map_err(stage)?
                        .iter()
                        .fold(0.0f64, |a, v| a.max(v.abs()));
                    Ok((gap, gap / (1.0 + scale)))
                })
                .collect()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let entries = pairs
        .iter()
        .enumerate()
        .map(|(k, &(n, m))| {
            let max_discrepancy = per_path.iter().map(|v| v[k].0).fold(0.0, f64::max);
            let max_normalized = per_path.iter().map(|v| v[k].1).fold(0.0, f64::max);
            CovariationEntry {
                n,
                m,
                max_discrepancy,
                max_normalized,
                pass: max_normalized <= COVARIATION_TOLERANCE,
            }
        })
        .collect();
    Ok(CovariationReport {
        paths: config.covariation_paths,
        tolerance: COVARIATION_TOLERANCE,
        entries,
    })
}

fn decomposition(
    spec: &ProcessSpec,
    config: &RunConfig,
    grid: &teugels_core::TimeGrid,
) -> Result<DecompositionReport, StageError> {
    let orders = &config.residual_orders;
    let fine_level = config.refine;
    let per_path = (0..config.residual_paths)
        .into_par_iter()
        .map(|p| -> Result<Vec<ResidualPath>, StageError> {
            let stage = |e| StageError::new("decomposition", e);
            let path = simulate_path(spec, grid, config.seed, p).map_err(stage)?;
            orders
                .iter()
                .map(|&n| {
                    let max = |v: Vec<f64>| v.into_iter().fold(0.0f64, |a, r| a.max(r.abs()));
                    Ok(ResidualPath {
                        path: p,
                        coarse: max(decomposition_residual(spec, &path, n, fine_level - 1).map_err(stage)?),
                        fine: max(decomposition_residual(spec, &path, n, fine_level).map_err(stage)?),
                        scale: max(martingale_path(spec, &path, n).map_err(stage)?),
                    })
                })
                .collect()
        })
        .collect::<Result<Vec<_>, _>>()?;

    let entries = orders
        .iter()
        .enumerate()
        .map(|(k, &n)| {
            let paths: Vec<ResidualPath> = per_path.iter().map(|v| v[k].clone()).collect();
            let coarse: f64 = paths.iter().map(|p| p.coarse).sum();
            let fine: f64 = paths.iter().map(|p| p.fine).sum();
            let relative = |p: &ResidualPath| if p.scale > 0.0 { p.fine / p.scale } else { p.fine };
            let max_relative = paths.iter().map(relative).fold(0.0, f64::max);
            let ratio = (coarse > 0.0).then(|| fine / coarse);
            let pass = if n == 1 {
                // M^(1) = Y^(1) exactly; nothing to discretize
                paths.iter().all(|p| p.fine <= 1e-12 * (1.0 + p.scale))
            } else {
                ratio.is_some_and(|r| (RATIO_RANGE.0..=RATIO_RANGE.1).contains(&r)) && max_relative <= RELATIVE_RESIDUAL
            };
            ResidualEntry {
                order: n,
                coarse_cells_per_unit: config.grid_cells << (fine_level - 1),
                fine_cells_per_unit: config.grid_cells << fine_level,
                ratio,
                max_relative,
                pass,
                paths,
            }
        })
        .collect();
    Ok(DecompositionReport {
        ratio_range: RATIO_RANGE,
        relative_tolerance: RELATIVE_RESIDUAL,
        entries,
    })
}

fn is_unit_jump_cox(spec: &ProcessSpec) -> bool {
    spec.is_pure_jump() && spec.atoms().iter().all(|a| a.size == 1.0)
}

fn status(pass: bool) -> StageStatus {
    if pass {
        StageStatus::Pass
    } else {
        StageStatus::Fail
    }
}

/// Runs the suite and returns the bundle without writing anything.
pub fn build_bundle(config: RunConfig, spec: ProcessSpec) -> Result<VerifyBundle, StageError> {
    let grid = grid_for_config(&config)?;
    let mut stages = Vec::new();

    let validation =
        validate(&spec, config.horizon, grid.len(), config.max_order()).map_err(|e| StageError::new("validate", e))?;
    if !validation.is_ok() {
        let lines: Vec<String> = validation.violations.iter().map(ToString::to_string).collect();
        return Err(StageError::new("validate", anyhow::anyhow!(lines.join("; "))));
    }
    stages.push(StageSummary {
        stage: "validate",
        status: StageStatus::Pass,
        detail: format!(
            "{} functions on {} grid points",
            validation.checks.len(),
            validation.grid_points
        ),
    });

    let covariation = covariation(&spec, &config, &grid)?;
    let worst = covariation.entries.iter().map(|e| e.max_normalized).fold(0.0, f64::max);
    stages.push(StageSummary {
        stage: "covariation",
        status: status(covariation.entries.iter().all(|e| e.pass)),
        detail: format!("n + m <= {COVARIATION_ORDER}, worst normalized gap {worst:e}"),
    });

    let mut stats: Vec<Statistic> = config.orders.iter().map(|&n| Statistic::Martingale(n)).collect();
    stats.extend(config.compensator_orders.iter().map(|&n| Statistic::Compensator(n)));
    if is_unit_jump_cox(&spec) {
        stats.extend(config.charlier_orders.iter().map(|&n| Statistic::Charlier(n)));
    }
    if config.negative_control {
        stats.push(Statistic::UncompensatedVariation(2));
    }
    let test_config = TestConfig {
        threshold: config.threshold,
        test_functions: TestFunction::ALL.to_vec(),
    };
    let martingale = increment_suite(&spec, &stats, &config.pairs, config.paths, config.seed, &test_config)
        .map_err(|e| StageError::new("martingale", e))?;
    let regular: Vec<&MartingaleReport> = martingale.iter().filter(|r| !r.negative_control).collect();
    let failed = regular
        .iter()
        .filter(|r| r.entries.iter().any(|e| e.verdict == Verdict::Fail))
        .count();
    let inconclusive = regular
        .iter()
        .filter(|r| r.entries.iter().any(|e| e.verdict == Verdict::Inconclusive))
        .count();
    stages.push(StageSummary {
        stage: "martingale",
        status: status(failed == 0),
        detail: format!(
            "{} statistics, {failed} with a failing entry, {inconclusive} with an inconclusive entry",
            regular.len()
        ),
    });

    let decomposition = if spec.is_pure_jump() {
        let d = decomposition(&spec, &config, &grid)?;
        stages.push(StageSummary {
            stage: "decomposition",
            status: status(d.entries.iter().all(|e| e.pass)),
            detail: format!("{} orders on {} paths", d.entries.len(), config.residual_paths),
        });
        Some(d)
    } else {
        stages.push(StageSummary {
            stage: "decomposition",
            status: StageStatus::Skipped,
            detail: "requires a pure-jump spec".into(),
        });
        None
    };

    if config.negative_control {
        let control = martingale
            .iter()
            .find(|r| r.negative_control)
            .expect("control was requested");
        stages.push(StageSummary {
            stage: "negative_control",
            status: status(control.rejected()),
            detail: format!("{} must fail its h = 1 test", control.statistic),
        });
    }

    let passed = stages.iter().all(|s| s.status != StageStatus::Fail);
    Ok(VerifyBundle {
        config,
        spec,
        passed,
        stages,
        validation,
        covariation,
        martingale,
        decomposition,
    })
}

fn grid_for_config(config: &RunConfig) -> Result<teugels_core::TimeGrid, StageError> {
    if !(config.horizon > 0.0 && config.horizon.is_finite()) {
        return Err(StageError::new("config", anyhow::anyhow!("--horizon must be positive")));
    }
    let cells = ((config.grid_cells as f64 * config.horizon).round() as usize).max(1);
    teugels_core::TimeGrid::uniform(config.horizon, cells).map_err(|e| StageError::new("config", e))
}

pub(crate) fn run(args: &VerifyArgs) -> Result<Outcome, StageError> {
    let config = RunConfig::from_args(args)?;
    let spec = load_spec(&args.sim.spec)?;
    let sink = Sink::new(&args.output)?;
    let bundle = build_bundle(config, spec)?;
    sink.write(Format::Json, "report.json", &bundle.to_json()?)?;
    sink.write(Format::Text, "report.txt", &bundle.to_text())?;
    if let Some(csv) = bundle.residual_csv() {
        sink.write(Format::Csv, "residuals.csv", &csv)?;
    }
    dump_paths(
        &sink,
        &bundle.spec,
        &grid_for_config(&bundle.config)?,
        bundle.config.seed,
        bundle.config.dump_paths,
    )?;
    Ok(Outcome::from_pass(bundle.passed))
}
