//! The martingales `M^(n)_t = Γ_n(X_t, -F_2(t), ..., -F_n(t))` on simulated
//! paths: pathwise values, the stochastic-integral decomposition
//! `M^(n)_t = Σ_{j=1}^{n} C(n, j) ∫_0^t M^(n-j)_{s-} dY^(j)_s`, and Monte Carlo
//! certification of zero-mean increments.
//!
//! A simulation cannot check a conditional expectation directly. Increments
//! are instead tested for orthogonality to a finite family of functions of
//! the past value, `E[(Z_t - Z_s) h(X_s)] = 0`, with a verdict of pass when
//! the estimate lies within `threshold` standard errors of zero.

use std::fmt;
use std::sync::Arc;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::charlier::charlier_poly;
use crate::cumulant::{binomial, kendall};
use crate::error::SimError;
use crate::poly::FloatPolynomial;
use crate::process::ProcessSpec;
use crate::simulator::{simulate_path, variations, PathRecord, TimeGrid};

/// Default pass threshold, in standard errors.
pub const DEFAULT_THRESHOLD: f64 = 4.0;
pub const MIN_PATHS: u64 = 1000;
/// Paths per accumulation chunk; fixed so results do not depend on the
/// number of worker threads.
const CHUNK: u64 = 4096;

/// Floating evaluators for `Γ_0, ..., Γ_max`.
#[derive(Debug, Clone)]
pub struct GammaEvaluator {
    polys: Arc<Vec<FloatPolynomial>>,
}

impl GammaEvaluator {
    pub fn new(max_order: usize) -> Result<Self, SimError> {
        let polys = kendall().gammas(max_order)?.iter().map(|p| p.to_float()).collect();
        Ok(Self { polys: Arc::new(polys) })
    }

    pub fn max_order(&self) -> usize {
        self.polys.len() - 1
    }

    /// `[x, -F_2(t), ..., -F_max(t)]`.
    pub fn arguments(&self, spec: &ProcessSpec, x: f64, t: f64) -> Vec<f64> {
        let mut args = Vec::with_capacity(self.max_order().max(1));
        args.push(x);
        for k in 2..=self.max_order() {
            args.push(-spec.cumulant_unchecked(k, t));
        }
        args
    }

    pub fn eval(&self, n: usize, args: &[f64]) -> f64 {
        self.polys[n].eval(args)
    }

    /// `M^(n)` at state `x` and time `t`.
    pub fn martingale(&self, spec: &ProcessSpec, n: usize, x: f64, t: f64) -> f64 {
        self.eval(n, &self.arguments(spec, x, t))
    }
}

/// `M^(n)` on the path's grid.
pub fn martingale_path(spec: &ProcessSpec, path: &PathRecord, n: usize) -> Result<Vec<f64>, SimError> {
    let eval = GammaEvaluator::new(n)?;
    Ok(path
        .grid
        .times()
        .iter()
        .zip(&path.x_values)
        .map(|(&t, &x)| eval.martingale(spec, n, x, t))
        .collect())
}

/// `|M^(n)_t - Σ_j C(n, j) ∫_0^t M^(n-j)_{s-} dY^(j)_s|` at every grid point
/// of a pure-jump path.
///
/// Each `dY^(j)` splits into jumps `(ΔX_s)^j`, integrated exactly against the
/// left limit `M^(n-j)_{s-}` (Γ evaluated at the pre-jump state), minus the
/// continuous compensator `dF_j` (`F_1 := Σ_i size_i Λ_i`), integrated by
/// left-point Riemann–Stieltjes sums on the path grid split into `2^level`
/// cells and broken at jump times. The `j = n` term has integrand
/// `M^(0) = 1` and is taken as `Y^(n)_t` itself.
pub fn decomposition_residual(
    spec: &ProcessSpec,
    path: &PathRecord,
    n: usize,
    refinement_level: u32,
) -> Result<Vec<f64>, SimError> {
    if !spec.is_pure_jump() {
        return Err(SimError::NotPureJump);
    }
    if n == 0 {
        return Err(SimError::Config("decomposition order must be at least 1".into()));
    }
    let eval = GammaEvaluator::new(n)?;
    let compensator_of = |j: usize, t: f64| {
        if j == 1 {
            spec.compensator(t)
        } else {
            spec.cumulant_unchecked(j, t)
        }
    };
    let binom: Vec<f64> = (0..=n).map(|j| binomial(n, j).to_f64().unwrap_or(f64::NAN)).collect();

    let fine = path.grid.refine(refinement_level);
    let stride = 1usize << refinement_level;
    let times = fine.times();
    let jumps = &path.jumps;

    // accumulated Σ_j C(n,j)(jump part_j - compensator part_j), j < n
    let mut integral = 0.0;
    let mut jump_sum = 0.0; // Σ ΔX_s for s <= current time
    let mut jump_pow_n = 0.0; // Σ (ΔX_s)^n for s <= current time
    let mut next_jump = 0;
    let mut u = 0.0;
    let mut residuals = vec![0.0];

    let lower_orders = |args: &[f64]| -> Vec<f64> { (0..n).map(|k| eval.eval(k, args)).collect() };

    for (g, &grid_t) in times.iter().enumerate().skip(1) {
        loop {
            let jump_here = next_jump < jumps.len() && jumps[next_jump].time <= grid_t;
            let next = if jump_here { jumps[next_jump].time } else { grid_t };

            // compensator parts over (u, next], integrand at u
            if next > u {
                let m = lower_orders(&eval.arguments(spec, jump_sum - spec.compensator(u), u));
                for j in 1..n {
                    let df = compensator_of(j, next) - compensator_of(j, u);
                    integral -= binom[j] * m[n - j] * df;
                }
                u = next;
            }

            if !jump_here {
                break;
            }
            let size = jumps[next_jump].size;
            let m_left = lower_orders(&eval.arguments(spec, jump_sum - spec.compensator(next), next));
            for j in 1..n {
                integral += binom[j] * m_left[n - j] * size.powi(j as i32);
            }
            jump_sum += size;
            jump_pow_n += size.powi(n as i32);
            next_jump += 1;
        }

        if g % stride == 0 {
            let k = g / stride;
            let t = path.grid.times()[k];
            let x = path.x_values[k];
            let y_n = if n == 1 {
                x
            } else {
                jump_pow_n - spec.cumulant_unchecked(n, t)
            };
            let rhs = integral + y_n;
            residuals.push((eval.martingale(spec, n, x, t) - rhs).abs());
        }
    }
    Ok(residuals)
}

/// Past-measurable weights `h(X_s)` used in the orthogonality tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TestFunction {
    One,
    X,
    XSquared,
}

impl TestFunction {
    pub const ALL: [TestFunction; 3] = [TestFunction::One, TestFunction::X, TestFunction::XSquared];

    pub fn apply(self, x: f64) -> f64 {
        match self {
            Self::One => 1.0,
            Self::X => x,
            Self::XSquared => x * x,
        }
    }
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Self::One => "1",
            Self::X => "x",
            Self::XSquared => "x^2",
        })
    }
}

/// A process whose increments are tested for zero mean.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", content = "order", rename_all = "snake_case")]
pub enum Statistic {
    /// `M^(n)_t`.
    Martingale(usize),
    /// `(Y^(n)_t)² - F_{2n}(t)`.
    Compensator(usize),
    /// `X^(n)_t` with no compensation: a planted non-martingale.
    UncompensatedVariation(usize),
    /// `C̄_n(N_t, Σ_i Λ_i(t))` with `N_t` the raw jump count.
    Charlier(usize),
}

impl Statistic {
    pub fn order(self) -> usize {
        match self {
            Self::Martingale(n) | Self::Compensator(n) | Self::UncompensatedVariation(n) | Self::Charlier(n) => n,
        }
    }

    pub fn is_negative_control(self) -> bool {
        matches!(self, Self::UncompensatedVariation(_))
    }

    fn gamma_order(self) -> usize {
        match self {
            Self::Martingale(n) => n,
            _ => 0,
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Martingale(n) => write!(f, "M^({n})"),
            Self::Compensator(n) => write!(f, "(Y^({n}))^2 - F_{}", 2 * n),
            Self::UncompensatedVariation(n) => write!(f, "X^({n}) [negative control]"),
            Self::Charlier(n) => write!(f, "C_{n}(N_t, L(t))"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    /// Pass iff `|estimate| ≤ threshold · std_error`; a degenerate
    /// (zero or non-finite) standard error is inconclusive.
    pub fn judge(estimate: f64, std_error: f64, threshold: f64) -> Self {
        if !(std_error.is_finite() && std_error > 0.0 && estimate.is_finite()) {
            Verdict::Inconclusive
        } else if estimate.abs() <= threshold * std_error {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Self::Pass => "pass",
            Self::Fail => "FAIL",
            Self::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairEstimate {
    pub s: f64,
    pub t: f64,
    pub test_function: TestFunction,
    pub estimate: f64,
    pub std_error: f64,
    pub verdict: Verdict,
}

impl PairEstimate {
    /// `|estimate| / std_error`.
    pub fn z_score(&self) -> f64 {
        self.estimate.abs() / self.std_error
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MartingaleReport {
    pub statistic: Statistic,
    pub order: usize,
    pub negative_control: bool,
    pub num_paths: u64,
    pub seed: u64,
    pub threshold: f64,
    pub entries: Vec<PairEstimate>,
}

impl MartingaleReport {
    /// Every entry passed.
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.verdict == Verdict::Pass)
    }

    /// The negative-control reading: at least one `h = 1` entry failed.
    pub fn rejected(&self) -> bool {
        self.entries
            .iter()
            .any(|e| e.test_function == TestFunction::One && e.verdict == Verdict::Fail)
    }

    pub fn entry(&self, s: f64, t: f64, h: TestFunction) -> Option<&PairEstimate> {
        self.entries
            .iter()
            .find(|e| e.s == s && e.t == t && e.test_function == h)
    }
}

impl fmt::Display for MartingaleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}  paths={} seed={} threshold={}",
            self.statistic, self.num_paths, self.seed, self.threshold
        )?;
        writeln!(
            f,
            "  {:>8} {:>8} {:>4} {:>25} {:>25} {:>12}",
            "s", "t", "h", "estimate", "std_error", "verdict"
        )?;
        for e in &self.entries {
            writeln!(
                f,
                "  {:>8} {:>8} {:>4} {:>25.16e} {:>25.16e} {:>12}",
                e.s, e.t, e.test_function, e.estimate, e.std_error, e.verdict
            )?;
        }
        Ok(())
    }
}

/// Options shared by the statistical tests.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TestConfig {
    pub threshold: f64,
    pub test_functions: Vec<TestFunction>,
}

impl Default for TestConfig {
    fn default() -> Self {
        Self {
            threshold: DEFAULT_THRESHOLD,
            test_functions: TestFunction::ALL.to_vec(),
        }
    }
}

/// Streaming mean/variance with an order-sensitive merge.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Accumulator {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Accumulator {
    pub fn push(&mut self, value: f64) {
        self.count += 1;
        let delta = value - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (value - self.mean);
    }

    pub fn merge(&mut self, other: &Accumulator) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let n = (self.count + other.count) as f64;
        let delta = other.mean - self.mean;
        self.mean += delta * other.count as f64 / n;
        self.m2 += other.m2 + delta * delta * self.count as f64 * other.count as f64 / n;
        self.count += other.count;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            f64::NAN
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    pub fn std_error(&self) -> f64 {
        (self.variance() / self.count as f64).sqrt()
    }
}

fn check_pairs(pairs: &[(f64, f64)]) -> Result<(), SimError> {
    if pairs.is_empty() {
        return Err(SimError::Config("at least one (s, t) pair is required".into()));
    }
    for &(s, t) in pairs {
        if !(0.0 <= s && s < t && t.is_finite()) {
            return Err(SimError::Config(format!("pair ({s}, {t}) must satisfy 0 <= s < t")));
        }
    }
    Ok(())
}

/// Values of every statistic at every grid point of one path.
struct PathEvaluator<'a> {
    spec: &'a ProcessSpec,
    gammas: GammaEvaluator,
    charliers: Vec<FloatPolynomial>,
}

impl<'a> PathEvaluator<'a> {
    fn new(spec: &'a ProcessSpec, stats: &[Statistic]) -> Result<Self, SimError> {
        let max_gamma = stats.iter().map(|s| s.gamma_order()).max().unwrap_or(0);
        let max_charlier = stats
            .iter()
            .filter_map(|s| match s {
                Statistic::Charlier(n) => Some(*n),
                _ => None,
            })
            .max()
            .unwrap_or(0);
        Ok(Self {
            spec,
            gammas: GammaEvaluator::new(max_gamma)?,
            charliers: (0..=max_charlier).map(|n| charlier_poly(n).to_float()).collect(),
        })
    }

    fn values(&self, stat: Statistic, path: &PathRecord) -> Result<Vec<f64>, SimError> {
        let times = path.grid.times();
        Ok(match stat {
            Statistic::Martingale(n) => times
                .iter()
                .zip(&path.x_values)
                .map(|(&t, &x)| self.gammas.martingale(self.spec, n, x, t))
                .collect(),
            Statistic::Compensator(n) => {
                let y = crate::simulator::teugels(path, self.spec, n)?.teugels_values;
                times
                    .iter()
                    .zip(y)
                    .map(|(&t, y)| y * y - self.spec.cumulant_unchecked(2 * n, t))
                    .collect()
            }
            Statistic::UncompensatedVariation(n) => variations(path, self.spec, n)?,
            Statistic::Charlier(n) => times
                .iter()
                .map(|&t| {
                    let count = path.jump_count_until(t) as f64;
                    self.charliers[n].eval(&[count, self.spec.total_intensity(t)])
                })
                .collect(),
        })
    }
}

/// Runs every statistic against every pair on one shared batch of paths.
///
/// Paths are simulated on the grid `{0} ∪ {s, t}` only, which is exact in law
/// because each statistic depends on the path at those times alone.
pub fn increment_suite(
    spec: &ProcessSpec,
    stats: &[Statistic],
    pairs: &[(f64, f64)],
    num_paths: u64,
    seed: u64,
    config: &TestConfig,
) -> Result<Vec<MartingaleReport>, SimError> {
    check_pairs(pairs)?;
    if num_paths < MIN_PATHS {
        return Err(SimError::Config(format!(
            "statistical tests need at least {MIN_PATHS} paths, got {num_paths}"
        )));
    }
    if stats.iter().any(|s| s.order() == 0) {
        return Err(SimError::Config("statistic order must be at least 1".into()));
    }
    let times: Vec<f64> = pairs.iter().flat_map(|&(s, t)| [s, t]).collect();
    let grid = TimeGrid::through(&times)?;
    let index = |t: f64| grid.index_of(t).expect("pair time on grid");
    let pair_idx: Vec<(usize, usize)> = pairs.iter().map(|&(s, t)| (index(s), index(t))).collect();
    let evaluator = PathEvaluator::new(spec, stats)?;
    let hs = &config.test_functions;
    let cells = stats.len() * pairs.len() * hs.len();

    let chunks: Vec<Vec<Accumulator>> = (0..num_paths.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| -> Result<Vec<Accumulator>, SimError> {
            let mut acc = vec![Accumulator::default(); cells];
            for p in c * CHUNK..((c + 1) * CHUNK).min(num_paths) {
                let path = simulate_path(spec, &grid, seed, p)?;
                let mut slot = 0;
                for &stat in stats {
                    let values = evaluator.values(stat, &path)?;
                    for &(si, ti) in &pair_idx {
                        let increment = values[ti] - values[si];
                        let xs = path.x_values[si];
                        for h in hs {
                            acc[slot].push(increment * h.apply(xs));
                            slot += 1;
                        }
                    }
                }
            }
            Ok(acc)
        })
        .collect::<Result<_, _>>()?;

    let mut total = vec![Accumulator::default(); cells];
    for chunk in &chunks {
        for (t, c) in total.iter_mut().zip(chunk) {
            t.merge(c);
        }
    }

    let mut slot = 0;
    let mut reports = Vec::with_capacity(stats.len());
    for &stat in stats {
        let mut entries = Vec::with_capacity(pairs.len() * hs.len());
        for &(s, t) in pairs {
            for &h in hs {
                let a = total[slot];
                slot += 1;
                let (estimate, std_error) = (a.mean(), a.std_error());
                entries.push(PairEstimate {
                    s,
                    t,
                    test_function: h,
                    estimate,
                    std_error,
                    verdict: Verdict::judge(estimate, std_error, config.threshold),
                });
            }
        }
        reports.push(MartingaleReport {
            statistic: stat,
            order: stat.order(),
            negative_control: stat.is_negative_control(),
            num_paths,
            seed,
            threshold: config.threshold,
            entries,
        });
    }
    Ok(reports)
}

fn single(
    spec: &ProcessSpec,
    stat: Statistic,
    pairs: &[(f64, f64)],
    num_paths: u64,
    seed: u64,
) -> Result<MartingaleReport, SimError> {
    Ok(increment_suite(spec, &[stat], pairs, num_paths, seed, &TestConfig::default())?.remove(0))
}

/// Tests `E[(M^(n)_t - M^(n)_s) h(X_s)] = 0` for `h ∈ {1, x, x²}`.
pub fn martingale_test(
    spec: &ProcessSpec,
    n: usize,
    pairs: &[(f64, f64)],
    num_paths: u64,
    seed: u64,
) -> Result<MartingaleReport, SimError> {
    single(spec, Statistic::Martingale(n), pairs, num_paths, seed)
}

/// Tests that `(Y^(n))² - F_{2n}` has zero-mean increments, i.e. that
/// `F_{2n}` compensates the square of the Teugels martingale.
pub fn compensator_test(
    spec: &ProcessSpec,
    n: usize,
    pairs: &[(f64, f64)],
    num_paths: u64,
    seed: u64,
) -> Result<MartingaleReport, SimError> {
    single(spec, Statistic::Compensator(n), pairs, num_paths, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::{JumpAtom, MonotoneFunction};
    use crate::simulator::Jump;

    fn cox(lambda: MonotoneFunction) -> ProcessSpec {
        ProcessSpec::cox(lambda).unwrap()
    }

    #[test]
    fn low_order_martingales() {
        let spec = cox(MonotoneFunction::linear(1.0));
        let path = simulate_path(&spec, &TimeGrid::uniform(2.0, 32).unwrap(), 5, 1).unwrap();
        let m1 = martingale_path(&spec, &path, 1).unwrap();
        assert_eq!(m1, path.x_values);
        let m2 = martingale_path(&spec, &path, 2).unwrap();
        let m3 = martingale_path(&spec, &path, 3).unwrap();
        for (k, &t) in path.grid.times().iter().enumerate() {
            let x = path.x_values[k];
            assert!((m2[k] - (x * x - t)).abs() < 1e-12);
            assert!((m3[k] - (x.powi(3) - 3.0 * t * x - t)).abs() < 1e-12);
        }
        for n in 1..7 {
            assert_eq!(martingale_path(&spec, &path, n).unwrap()[0], 0.0);
        }
    }

    #[test]
    fn residual_requires_pure_jump() {
        let spec = ProcessSpec::gaussian(MonotoneFunction::linear(1.0)).unwrap();
        let path = simulate_path(&spec, &TimeGrid::uniform(1.0, 8).unwrap(), 0, 0).unwrap();
        assert_eq!(
            decomposition_residual(&spec, &path, 2, 0).unwrap_err(),
            SimError::NotPureJump
        );
    }

    #[test]
    fn order_one_residual_is_exact() {
        let spec = cox(MonotoneFunction::power(2.0, 2.0));
        let path = simulate_path(&spec, &TimeGrid::uniform(1.0, 64).unwrap(), 9, 3).unwrap();
        let r = decomposition_residual(&spec, &path, 1, 2).unwrap();
        assert_eq!(r.len(), 65);
        assert!(r.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn order_two_residual_halves() {
        // Between jumps X_s = X_u - (s - u), so each left-point cell of width h
        // misses h²/2 for n = 2: the residual at t is 2·(t/h)·h²/2 = t·h when
        // no cell is split by a jump.
        let spec = cox(MonotoneFunction::linear(1.0));
        let grid = TimeGrid::uniform(1.0, 4).unwrap();
        let mut path = PathRecord {
            seed: 0,
            path_index: 0,
            gaussian_values: vec![0.0; 5],
            grid: grid.clone(),
            jumps: vec![],
            x_values: vec![],
        };
        path.x_values = path.recompute_x(&spec);
        let r0 = decomposition_residual(&spec, &path, 2, 4).unwrap();
        let r1 = decomposition_residual(&spec, &path, 2, 5).unwrap();
        let h = 1.0 / 64.0;
        assert!((r0[4] - h).abs() < 1e-12, "{}", r0[4]);
        assert!((r1[4] / r0[4] - 0.5).abs() < 1e-9);

        path.jumps = vec![Jump {
            time: 0.3,
            atom: 0,
            size: 1.0,
        }];
        path.x_values = path.recompute_x(&spec);
        let r0 = decomposition_residual(&spec, &path, 2, 4).unwrap();
        let r1 = decomposition_residual(&spec, &path, 2, 5).unwrap();
        let ratio = r1[4] / r0[4];
        assert!((0.3..=0.7).contains(&ratio), "{ratio}");
    }

    #[test]
    fn accumulator_merge_matches_sequential() {
        let data: Vec<f64> = (0..1000).map(|k| ((k * 37) % 101) as f64 / 7.0).collect();
        let mut seq = Accumulator::default();
        data.iter().for_each(|&v| seq.push(v));
        let mut merged = Accumulator::default();
        for chunk in data.chunks(77) {
            let mut a = Accumulator::default();
            chunk.iter().for_each(|&v| a.push(v));
            merged.merge(&a);
        }
        assert_eq!(merged.count(), 1000);
        assert!((merged.mean() - seq.mean()).abs() < 1e-12);
        assert!((merged.variance() - seq.variance()).abs() < 1e-9);
    }

    #[test]
    fn verdict_rules() {
        assert_eq!(Verdict::judge(0.1, 0.1, 4.0), Verdict::Pass);
        assert_eq!(Verdict::judge(0.5, 0.1, 4.0), Verdict::Fail);
        assert_eq!(Verdict::judge(0.0, 0.0, 4.0), Verdict::Inconclusive);
        assert_eq!(Verdict::judge(1.0, f64::NAN, 4.0), Verdict::Inconclusive);
    }

    #[test]
    fn bad_test_inputs() {
        let spec = cox(MonotoneFunction::linear(1.0));
        assert!(martingale_test(&spec, 1, &[(0.5, 0.5)], 2000, 0).is_err());
        assert!(martingale_test(&spec, 1, &[(0.0, 1.0)], 10, 0).is_err());
        assert!(martingale_test(&spec, 1, &[], 2000, 0).is_err());
    }

    #[test]
    fn degenerate_statistic_is_inconclusive() {
        let spec = ProcessSpec::gaussian(MonotoneFunction::linear(1.0)).unwrap();
        // (Y^(2))² - F_4 is identically zero without jumps
        let r = compensator_test(&spec, 2, &[(0.5, 1.0)], 1000, 3).unwrap();
        assert!(r.entries.iter().all(|e| e.verdict == Verdict::Inconclusive));
        assert!(!r.passed());
    }

    #[test]
    fn suite_is_thread_count_invariant() {
        let spec = ProcessSpec::new(
            MonotoneFunction::linear(0.3),
            vec![JumpAtom::new(-1.5, MonotoneFunction::power(2.0, 2.0))],
        )
        .unwrap();
        let stats = [Statistic::Martingale(3), Statistic::Compensator(1)];
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| {
                    increment_suite(
                        &spec,
                        &stats,
                        &[(0.25, 0.5), (0.5, 1.0)],
                        10_000,
                        11,
                        &TestConfig::default(),
                    )
                    .unwrap()
                })
        };
        assert_eq!(run(1), run(4));
    }
}
