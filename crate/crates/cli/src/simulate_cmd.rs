//! `teugels simulate`: a batch of paths and the law of the endpoint.

use std::fmt::Write;

use rayon::prelude::*;
use serde::Serialize;
use teugels_core::martingale::{Accumulator, Verdict};
use teugels_core::simulator::simulate_batch;
use teugels_core::{simulate_path, ProcessSpec, TimeGrid};

use crate::args::{Format, SimulateArgs, SimulationArgs};
use crate::output::Sink;
use crate::{load_spec, Outcome, StageError};

const CHUNK: u64 = 4096;

#[derive(Serialize)]
struct Moment {
    name: &'static str,
    estimate: f64,
    std_error: f64,
    expected: f64,
    verdict: Verdict,
}

#[derive(Serialize)]
struct Summary {
    spec: ProcessSpec,
    seed: u64,
    paths: u64,
    horizon: f64,
    grid_points: usize,
    endpoint: Vec<Moment>,
}

pub(crate) fn grid_for(sim: &SimulationArgs) -> Result<TimeGrid, StageError> {
    if !(sim.horizon > 0.0 && sim.horizon.is_finite()) {
        return Err(StageError::new("config", anyhow::anyhow!("--horizon must be positive")));
    }
    let cells = ((sim.grid_cells as f64 * sim.horizon).round() as usize).max(1);
    TimeGrid::uniform(sim.horizon, cells).map_err(|e| StageError::new("config", e))
}

/// Writes the first `count` paths as `paths/path_NNNNNN.{csv,json}`.
pub(crate) fn dump_paths(
    sink: &Sink,
    spec: &ProcessSpec,
    grid: &TimeGrid,
    seed: u64,
    count: usize,
) -> Result<(), StageError> {
    if count == 0 || !(sink.wants(Format::Csv) || sink.wants(Format::Json)) {
        return Ok(());
    }
    let paths = simulate_batch(spec, grid, seed, 0, count as u64).map_err(|e| StageError::new("simulate", e))?;
    for p in &paths {
        let stem = format!("paths/path_{:06}", p.path_index);
        sink.write(Format::Csv, &format!("{stem}.csv"), &p.to_csv())?;
        sink.write_json(&format!("{stem}.json"), p)?;
    }
    Ok(())
}

pub(crate) fn run(args: &SimulateArgs) -> Result<Outcome, StageError> {
    let spec = load_spec(&args.sim.spec)?;
    let grid = grid_for(&args.sim)?;
    let sink = Sink::new(&args.output)?;
    let seed = args.sim.seed;
    let horizon = grid.horizon();

    let chunks = (0..args.paths.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| -> Result<[Accumulator; 3], StageError> {
            let mut acc = [Accumulator::default(); 3];
            for p in c * CHUNK..((c + 1) * CHUNK).min(args.paths) {
                let path = simulate_path(&spec, &grid, seed, p).map_err(|e| StageError::new("simulate", e))?;
                let x = *path.x_values.last().expect("non-empty grid");
                acc[0].push(x);
                acc[1].push(x * x);
                acc[2].push(path.jumps.len() as f64);
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut total = [Accumulator::default(); 3];
    for chunk in &chunks {
        for (t, c) in total.iter_mut().zip(chunk) {
            t.merge(c);
        }
    }

    let expected = [
        ("mean of X_T", 0.0),
        (
            "mean of X_T^2",
            spec.cumulant(2, horizon).map_err(|e| StageError::new("simulate", e))?,
        ),
        ("mean jump count", spec.total_intensity(horizon)),
    ];
    let endpoint: Vec<Moment> = total
        .iter()
        .zip(expected)
        .map(|(a, (name, expected))| {
            let (estimate, std_error) = (a.mean(), a.std_error());
            let verdict = if std_error == 0.0 && estimate == expected {
                Verdict::Pass
            } else {
                Verdict::judge(estimate - expected, std_error, 4.0)
            };
            Moment {
                name,
                estimate,
                std_error,
                expected,
                verdict,
            }
        })
        .collect();
    let summary = Summary {
        spec,
        seed,
        paths: args.paths,
        horizon,
        grid_points: grid.len(),
        endpoint,
    };

    let mut text = String::new();
    let _ = writeln!(
        text,
        "paths={} seed={} horizon={} grid_points={}",
        summary.paths, summary.seed, summary.horizon, summary.grid_points
    );
    let _ = writeln!(
        text,
        "  {:<16} {:>25} {:>25} {:>25} {:>12}",
        "statistic", "estimate", "std_error", "expected", "verdict"
    );
    for m in &summary.endpoint {
        let _ = writeln!(
            text,
            "  {:<16} {:>25.16e} {:>25.16e} {:>25.16e} {:>12}",
            m.name, m.estimate, m.std_error, m.expected, m.verdict
        );
    }
    sink.write_json("summary.json", &summary)?;
    sink.write(Format::Text, "summary.txt", &text)?;
    dump_paths(&sink, &summary.spec, &grid, seed, args.sim.dump_paths)?;
    Ok(Outcome::Pass)
}
