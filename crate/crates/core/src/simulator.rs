//! Exact-jump simulation of a [`ProcessSpec`] and the pathwise power-jump
//! processes built from it.
//!
//! A path is the compensated sum `X_t = G_t + Σ_{s ≤ t} ΔX_s - Σ_i size_i Λ_i(t)`.
//! `G` is sampled at grid points only. Jumps of atom `i` come from a unit-rate
//! Poisson stream mapped through `Λ_i^{-1}`, so jump times are exact, not
//! grid-rounded.

use std::fmt::Write as _;

use rand::Rng;
use rand_distr::{Exp1, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::SimError;
use crate::process::ProcessSpec;
use crate::rng::{atom_component, path_stream, GAUSSIAN_COMPONENT};

/// Default grid resolution: cells per unit time.
pub const DEFAULT_CELLS_PER_UNIT: usize = 1 << 10;

/// Strictly increasing evaluation times starting at 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid(Vec<f64>);

impl TimeGrid {
    pub fn new(times: Vec<f64>) -> Result<Self, SimError> {
        if times.len() < 2 {
            return Err(SimError::InvalidGrid("needs at least two points".into()));
        }
        if times[0] != 0.0 {
            return Err(SimError::InvalidGrid("must start at 0".into()));
        }
        if times.iter().any(|t| !t.is_finite()) || times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(SimError::InvalidGrid(
                "times must be finite and strictly increasing".into(),
            ));
        }
        Ok(Self(times))
    }

    /// `cells + 1` equally spaced points on `[0, horizon]`.
    pub fn uniform(horizon: f64, cells: usize) -> Result<Self, SimError> {
        if !(horizon > 0.0 && horizon.is_finite()) || cells == 0 {
            return Err(SimError::InvalidGrid(format!(
                "uniform grid needs positive horizon and cells, got {horizon} / {cells}"
            )));
        }
        Self::new((0..=cells).map(|k| horizon * k as f64 / cells as f64).collect())
    }

    /// Grid containing 0 and every given time.
    pub fn through(times: &[f64]) -> Result<Self, SimError> {
        let mut all: Vec<f64> = std::iter::once(0.0).chain(times.iter().copied()).collect();
        all.sort_by(f64::total_cmp);
        all.dedup();
        Self::new(all)
    }

    /// Splits every cell into `2^level` equal cells.
    pub fn refine(&self, level: u32) -> Self {
        let parts = 1usize << level;
        let mut out = Vec::with_capacity((self.0.len() - 1) * parts + 1);
        for w in self.0.windows(2) {
            for p in 0..parts {
                out.push(w[0] + (w[1] - w[0]) * p as f64 / parts as f64);
            }
        }
        out.push(self.horizon());
        Self(out)
    }

    pub fn times(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn horizon(&self) -> f64 {
        self.0[self.0.len() - 1]
    }

    pub fn index_of(&self, t: f64) -> Option<usize> {
        self.0.iter().position(|&s| s == t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Jump {
    pub time: f64,
    pub atom: usize,
    pub size: f64,
}

/// One simulated trajectory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathRecord {
    pub seed: u64,
    pub path_index: u64,
    pub grid: TimeGrid,
    pub gaussian_values: Vec<f64>,
    /// Sorted by time, all in `(0, horizon]`.
    pub jumps: Vec<Jump>,
    pub x_values: Vec<f64>,
}

impl PathRecord {
    pub fn horizon(&self) -> f64 {
        self.grid.horizon()
    }

    /// Number of jumps at or before `t`.
    pub fn jump_count_until(&self, t: f64) -> usize {
        self.jumps.partition_point(|j| j.time <= t)
    }

    /// Recomputes `X` on the grid from the Gaussian values and jump list.
    pub fn recompute_x(&self, spec: &ProcessSpec) -> Vec<f64> {
        let mut k = 0;
        let mut sum = 0.0;
        self.grid
            .times()
            .iter()
            .zip(&self.gaussian_values)
            .map(|(&t, &g)| {
                while k < self.jumps.len() && self.jumps[k].time <= t {
                    sum += self.jumps[k].size;
                    k += 1;
                }
                g + sum - spec.compensator(t)
            })
            .collect()
    }

    /// Grid section then jump section.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# path {} seed {}", self.path_index, self.seed);
        out.push_str("k,t,gaussian,x\n");
        for (k, ((t, g), x)) in self
            .grid
            .times()
            .iter()
            .zip(&self.gaussian_values)
            .zip(&self.x_values)
            .enumerate()
        {
            let _ = writeln!(out, "{k},{t:e},{g:e},{x:e}");
        }
        out.push_str("jump,time,atom,size\n");
        for (k, j) in self.jumps.iter().enumerate() {
            let _ = writeln!(out, "{k},{:e},{},{:e}", j.time, j.atom, j.size);
        }
        out
    }
}

/// Simulates path `path_index` of the batch keyed by `seed`.
pub fn simulate_path(spec: &ProcessSpec, grid: &TimeGrid, seed: u64, path_index: u64) -> Result<PathRecord, SimError> {
    let times = grid.times();
    let horizon = grid.horizon();

    let mut gaussian_values = Vec::with_capacity(times.len());
    gaussian_values.push(0.0);
    if spec.is_pure_jump() {
        gaussian_values.resize(times.len(), 0.0);
    } else {
        let mut rng = path_stream(seed, path_index, GAUSSIAN_COMPONENT);
        let mut g = 0.0;
        let mut prev = spec.sigma2().value(0.0);
        for &t in &times[1..] {
            let v = spec.sigma2().value(t);
            let dv = v - prev;
            if dv < 0.0 {
                return Err(SimError::Validation(format!(
                    "sigma2 decreases by {} before t = {t}",
                    -dv
                )));
            }
            let z: f64 = rng.sample(StandardNormal);
            g += dv.sqrt() * z;
            gaussian_values.push(g);
            prev = v;
        }
    }

    let mut jumps = Vec::new();
    for (i, atom) in spec.atoms().iter().enumerate() {
        let total = atom.intensity.value(horizon);
        if total <= 0.0 {
            continue;
        }
        let mut rng = path_stream(seed, path_index, atom_component(i));
        let mut level = 0.0;
        loop {
            let e: f64 = rng.sample(Exp1);
            level += e;
            if level > total {
                break;
            }
            let time = atom.intensity.inverse(level).ok_or_else(|| {
                SimError::Config(format!("intensity of atom {i} ({}) is not invertible", atom.intensity))
            })?;
            jumps.push(Jump {
                time: time.min(horizon),
                atom: i,
                size: atom.size,
            });
        }
    }
    jumps.sort_by(|a, b| a.time.total_cmp(&b.time).then(a.atom.cmp(&b.atom)));
    if jumps.first().is_some_and(|j| j.time <= 0.0) || jumps.windows(2).any(|w| w[1].time <= w[0].time) {
        return Err(SimError::Validation(
            "jump times collide; intensities must be continuous".into(),
        ));
    }

    let mut record = PathRecord {
        seed,
        path_index,
        grid: grid.clone(),
        gaussian_values,
        jumps,
        x_values: Vec::new(),
    };
    record.x_values = record.recompute_x(spec);
    Ok(record)
}

/// Paths `first..first + count`, collected in index order.
pub fn simulate_batch(
    spec: &ProcessSpec,
    grid: &TimeGrid,
    seed: u64,
    first: u64,
    count: u64,
) -> Result<Vec<PathRecord>, SimError> {
    (first..first + count)
        .into_par_iter()
        .map(|p| simulate_path(spec, grid, seed, p))
        .collect()
}

/// `X^(n)` and `Y^(n)` on a path's grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TeugelsSet {
    pub order: usize,
    pub variation_values: Vec<f64>,
    pub teugels_values: Vec<f64>,
}

/// Running prefix sums of `size^n` over the jump list.
fn jump_power_sums(path: &PathRecord, n: usize) -> Vec<f64> {
    let mut acc = 0.0;
    std::iter::once(0.0)
        .chain(path.jumps.iter().map(|j| {
            acc += j.size.powi(n as i32);
            acc
        }))
        .collect()
}

/// The variation process `X^(n)` on the grid: `X` itself for `n = 1`,
/// `σ²(t) + Σ (ΔX_s)²` for `n = 2`, and `Σ (ΔX_s)^n` otherwise.
pub fn variations(path: &PathRecord, spec: &ProcessSpec, n: usize) -> Result<Vec<f64>, SimError> {
    if n == 0 {
        return Err(SimError::Config("variation order must be at least 1".into()));
    }
    if n == 1 {
        return Ok(path.x_values.clone());
    }
    let sums = jump_power_sums(path, n);
    Ok(path
        .grid
        .times()
        .iter()
        .map(|&t| {
            let jumps = sums[path.jump_count_until(t)];
            if n == 2 {
                spec.sigma2().value(t) + jumps
            } else {
                jumps
            }
        })
        .collect())
}

/// Teugels martingale `Y^(n) = X^(n) - F_n` (and `Y^(1) = X`).
pub fn teugels(path: &PathRecord, spec: &ProcessSpec, n: usize) -> Result<TeugelsSet, SimError> {
    let variation_values = variations(path, spec, n)?;
    let teugels_values = if n == 1 {
        variation_values.clone()
    } else {
        variation_values
            .iter()
            .zip(path.grid.times())
            .map(|(v, &t)| v - spec.cumulant_unchecked(n, t))
            .collect()
    };
    Ok(TeugelsSet {
        order: n,
        variation_values,
        teugels_values,
    })
}

/// Max over grid points of `|[Y^(n), Y^(m)]_t - X^(n+m)_t|`.
///
/// The bracket is accumulated from the jump record as `Σ ΔY^(n) ΔY^(m)`, each
/// jump of `Y^(k)` read off as the increment of its running power sum across
/// that jump, plus `σ²(t)` when `n = m = 1`.
pub fn optional_covariation_check(path: &PathRecord, spec: &ProcessSpec, n: usize, m: usize) -> Result<f64, SimError> {
    if n == 0 || m == 0 {
        return Err(SimError::Config("covariation orders must be at least 1".into()));
    }
    let sums_n = jump_power_sums(path, n);
    let sums_m = jump_power_sums(path, m);
    let mut bracket = vec![0.0];
    let mut acc = 0.0;
    for k in 1..sums_n.len() {
        acc += (sums_n[k] - sums_n[k - 1]) * (sums_m[k] - sums_m[k - 1]);
        bracket.push(acc);
    }
    let target = variations(path, spec, n + m)?;
    Ok(path
        .grid
        .times()
        .iter()
        .zip(&target)
        .map(|(&t, &x)| {
            let mut b = bracket[path.jump_count_until(t)];
            if n == 1 && m == 1 {
                b += spec.sigma2().value(t);
            }
            (b - x).abs()
        })
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::{JumpAtom, MonotoneFunction};

    fn handmade(spec: &ProcessSpec, jumps: &[(f64, f64)]) -> PathRecord {
        let grid = TimeGrid::uniform(1.0, 4).unwrap();
        let mut rec = PathRecord {
            seed: 0,
            path_index: 0,
            gaussian_values: vec![0.0; grid.len()],
            grid,
            jumps: jumps
                .iter()
                .map(|&(time, size)| Jump {
                    time,
                    atom: usize::from(size < 0.0),
                    size,
                })
                .collect(),
            x_values: Vec::new(),
        };
        rec.x_values = rec.recompute_x(spec);
        rec
    }

    fn plus_minus_two() -> ProcessSpec {
        ProcessSpec::new(
            MonotoneFunction::Zero,
            vec![
                JumpAtom::new(1.0, MonotoneFunction::linear(1.0)),
                JumpAtom::new(-2.0, MonotoneFunction::linear(1.0)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn grid_construction() {
        assert!(TimeGrid::new(vec![0.0]).is_err());
        assert!(TimeGrid::new(vec![0.1, 0.2]).is_err());
        assert!(TimeGrid::new(vec![0.0, 0.5, 0.5]).is_err());
        let g = TimeGrid::through(&[1.0, 0.5, 0.25, 0.5]).unwrap();
        assert_eq!(g.times(), &[0.0, 0.25, 0.5, 1.0]);
        let r = TimeGrid::uniform(1.0, 2).unwrap().refine(2);
        assert_eq!(r.len(), 9);
        assert_eq!(r.times()[3], 0.375);
    }

    #[test]
    fn variations_without_jumps() {
        let spec = ProcessSpec::gaussian(MonotoneFunction::linear(1.0)).unwrap();
        let path = simulate_path(&spec, &TimeGrid::uniform(1.0, 8).unwrap(), 1, 0).unwrap();
        assert!(path.jumps.is_empty());
        let x2 = variations(&path, &spec, 2).unwrap();
        assert_eq!(x2, path.grid.times().to_vec());
        assert!(variations(&path, &spec, 3).unwrap().iter().all(|&v| v == 0.0));
        let y2 = teugels(&path, &spec, 2).unwrap();
        assert!(y2.teugels_values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn variations_of_unit_jumps() {
        let spec = ProcessSpec::cox(MonotoneFunction::linear(1.0)).unwrap();
        let path = handmade(&spec, &[(0.1, 1.0), (0.3, 1.0)]);
        assert_eq!(*variations(&path, &spec, 3).unwrap().last().unwrap(), 2.0);
        assert_eq!(*variations(&path, &spec, 4).unwrap().last().unwrap(), 2.0);
        let y2 = teugels(&path, &spec, 2).unwrap();
        for (k, &t) in path.grid.times().iter().enumerate() {
            let n = path.jump_count_until(t) as f64;
            assert_eq!(y2.teugels_values[k], n - t);
        }
    }

    #[test]
    fn mixed_sign_jumps() {
        let spec = plus_minus_two();
        let path = handmade(&spec, &[(0.2, 1.0), (0.6, -2.0)]);
        assert_eq!(*variations(&path, &spec, 2).unwrap().last().unwrap(), 5.0);
        assert_eq!(*variations(&path, &spec, 3).unwrap().last().unwrap(), -7.0);
        assert_eq!(optional_covariation_check(&path, &spec, 1, 2).unwrap(), 0.0);
    }

    #[test]
    fn teugels_vanish_at_origin() {
        let spec = plus_minus_two();
        let path = simulate_path(&spec, &TimeGrid::uniform(2.0, 16).unwrap(), 3, 9).unwrap();
        for n in 1..6 {
            assert_eq!(teugels(&path, &spec, n).unwrap().teugels_values[0], 0.0);
        }
    }

    #[test]
    fn gaussian_bracket_is_sigma2() {
        let spec = ProcessSpec::gaussian(MonotoneFunction::linear(1.0)).unwrap();
        let path = simulate_path(&spec, &TimeGrid::uniform(1.0, 8).unwrap(), 1, 0).unwrap();
        assert_eq!(optional_covariation_check(&path, &spec, 1, 1).unwrap(), 0.0);
    }

    #[test]
    fn paths_are_reproducible_and_consistent() {
        let spec = ProcessSpec::new(
            MonotoneFunction::linear(0.5),
            vec![
                JumpAtom::new(1.0, MonotoneFunction::power(3.0, 2.0)),
                JumpAtom::new(-0.5, MonotoneFunction::linear(2.0)),
            ],
        )
        .unwrap();
        let grid = TimeGrid::uniform(1.0, 64).unwrap();
        let a = simulate_path(&spec, &grid, 42, 17).unwrap();
        let b = simulate_path(&spec, &grid, 42, 17).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, simulate_path(&spec, &grid, 42, 18).unwrap());
        assert!(a.jumps.iter().all(|j| j.time > 0.0 && j.time <= 1.0));
        assert!(a.jumps.windows(2).all(|w| w[0].time < w[1].time));
        assert_eq!(a.x_values[0], 0.0);
        let batch = simulate_batch(&spec, &grid, 42, 10, 10).unwrap();
        assert_eq!(batch[7], a);
    }

    #[test]
    fn decreasing_sigma2_is_rejected() {
        let spec = ProcessSpec::gaussian(MonotoneFunction::linear(-1.0)).unwrap();
        let err = simulate_path(&spec, &TimeGrid::uniform(1.0, 4).unwrap(), 0, 0).unwrap_err();
        assert!(matches!(err, SimError::Validation(_)));
    }

    #[test]
    fn step_intensity_collides() {
        let spec = ProcessSpec::cox(MonotoneFunction::piecewise_linear(vec![
            [0.0, 0.0],
            [0.5, 50.0],
            [1.0, 0.0],
        ]))
        .unwrap();
        // Λ(1) = 0: nothing to invert
        assert!(simulate_path(&spec, &TimeGrid::uniform(1.0, 4).unwrap(), 0, 0).is_ok());
        let spec = ProcessSpec::cox(MonotoneFunction::Step { at: 0.5, height: 50.0 }).unwrap();
        // every unit-rate level maps onto the step location
        let err = simulate_path(&spec, &TimeGrid::uniform(1.0, 4).unwrap(), 0, 0).unwrap_err();
        assert!(matches!(err, SimError::Validation(_)));
    }

    #[test]
    fn csv_has_both_sections() {
        let spec = plus_minus_two();
        let path = handmade(&spec, &[(0.2, 1.0), (0.6, -2.0)]);
        let csv = path.to_csv();
        let grid_at = csv.find("k,t,gaussian,x").unwrap();
        let jumps_at = csv.find("jump,time,atom,size").unwrap();
        assert!(grid_at < jumps_at);
        assert_eq!(csv.lines().count(), 1 + 1 + 5 + 1 + 2);
    }
}
