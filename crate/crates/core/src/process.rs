//! Centered additive processes with a Gaussian part and finitely many jump
//! atoms.
//!
//! A [`ProcessSpec`] fixes the Gaussian variance `σ²(t)` and a list of atoms
//! `(size_i, Λ_i)`, so the Lévy measure at time `t` is `Σ_i Λ_i(t) δ_{size_i}`.
//! Every cumulant function is then a finite sum:
//! `F_2(t) = σ²(t) + Σ size_i² Λ_i(t)` and `F_n(t) = Σ size_iⁿ Λ_i(t)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cumulant::gamma_x1_coefficients;
use crate::error::ModelError;

/// A nondecreasing, continuous function of time with `f(0) = 0`, drawn from a
/// small catalog that keeps inverses available in closed form.
///
/// Shape requirements (monotonicity, continuity, `f(0) = 0`) are checked by
/// [`validate`], not at construction, so that a bad spec file reports where it
/// goes wrong.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MonotoneFunction {
    Zero,
    /// `a·t`
    Linear {
        a: f64,
    },
    /// `a·t^p`, `p ≥ 1`
    Power {
        a: f64,
        p: f64,
    },
    /// Linear interpolation through `(t, value)` knots starting at `t = 0`,
    /// held constant after the last knot.
    PiecewiseLinear {
        knots: Vec<[f64; 2]>,
    },
    /// `height·1{t ≥ at}`. Parses, but never validates (discontinuous).
    Step {
        at: f64,
        height: f64,
    },
}

impl MonotoneFunction {
    pub fn linear(a: f64) -> Self {
        Self::Linear { a }
    }

    pub fn power(a: f64, p: f64) -> Self {
        Self::Power { a, p }
    }

    pub fn piecewise_linear(knots: Vec<[f64; 2]>) -> Self {
        Self::PiecewiseLinear { knots }
    }

    fn kind(&self) -> &'static str {
        match self {
            Self::Zero => "zero",
            Self::Linear { .. } => "linear",
            Self::Power { .. } => "power",
            Self::PiecewiseLinear { .. } => "piecewise_linear",
            Self::Step { .. } => "step",
        }
    }

    /// Structural checks that do not depend on a horizon.
    pub fn check_well_formed(&self) -> Result<(), ModelError> {
        let bad = |reason: String| {
            Err(ModelError::InvalidFunction {
                kind: self.kind(),
                reason,
            })
        };
        match self {
            Self::Zero => Ok(()),
            Self::Linear { a } if !a.is_finite() => bad(format!("slope {a} is not finite")),
            Self::Linear { .. } => Ok(()),
            Self::Power { a, p } => {
                if !a.is_finite() || !p.is_finite() {
                    bad("parameters must be finite".into())
                } else if *p < 1.0 {
                    bad(format!("exponent {p} must be at least 1"))
                } else {
                    Ok(())
                }
            }
            Self::PiecewiseLinear { knots } => {
                if knots.is_empty() {
                    return bad("needs at least one knot".into());
                }
                if knots[0][0] != 0.0 {
                    return bad("first knot must sit at t = 0".into());
                }
                if knots.iter().flatten().any(|v| !v.is_finite()) {
                    return bad("knots must be finite".into());
                }
                if knots.windows(2).any(|w| w[1][0] <= w[0][0]) {
                    return bad("knot times must be strictly increasing".into());
                }
                Ok(())
            }
            Self::Step { at, height } => {
                if !at.is_finite() || !height.is_finite() || *at < 0.0 {
                    bad("step needs finite non-negative location and finite height".into())
                } else {
                    Ok(())
                }
            }
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        match self {
            Self::Zero => 0.0,
            Self::Linear { a } => a * t,
            Self::Power { a, p } => a * t.powf(*p),
            Self::PiecewiseLinear { knots } => {
                let last = knots[knots.len() - 1];
                if t >= last[0] {
                    return last[1];
                }
                let k = knots.partition_point(|kn| kn[0] <= t);
                let (lo, hi) = (knots[k - 1], knots[k]);
                lo[1] + (hi[1] - lo[1]) * (t - lo[0]) / (hi[0] - lo[0])
            }
            Self::Step { at, height } => {
                if t >= *at {
                    *height
                } else {
                    0.0
                }
            }
        }
    }

    /// True if the function is zero for every `t`.
    pub fn is_identically_zero(&self) -> bool {
        match self {
            Self::Zero => true,
            Self::Linear { a } | Self::Power { a, .. } => *a == 0.0,
            Self::PiecewiseLinear { knots } => knots.iter().all(|k| k[1] == 0.0),
            Self::Step { height, .. } => *height == 0.0,
        }
    }

    /// Generalized inverse `inf{t ≥ 0 : f(t) ≥ level}` for `level > 0`, in
    /// closed form. `None` when the level is never reached or the function is
    /// not invertible.
    pub fn inverse(&self, level: f64) -> Option<f64> {
        if level <= 0.0 {
            return Some(0.0);
        }
        match self {
            Self::Zero => None,
            Self::Linear { a } => (*a > 0.0).then(|| level / a),
            Self::Power { a, p } => (*a > 0.0).then(|| (level / a).powf(1.0 / p)),
            Self::PiecewiseLinear { knots } => {
                if knots[0][1] >= level {
                    return Some(0.0);
                }
                knots.windows(2).find_map(|w| {
                    let ([t0, v0], [t1, v1]) = (w[0], w[1]);
                    (v1 >= level && v1 > v0).then(|| t0 + (t1 - t0) * (level - v0) / (v1 - v0))
                })
            }
            Self::Step { at, height } => (*height >= level).then_some(*at),
        }
    }

    /// Generalized inverse on `[0, upper]` by bisection; used to cross-check
    /// the closed forms.
    pub fn inverse_by_bisection(&self, level: f64, upper: f64) -> Option<f64> {
        if self.value(upper) < level {
            return None;
        }
        let (mut lo, mut hi) = (0.0, upper);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.value(mid) >= level {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some(hi)
    }
}

impl fmt::Display for MonotoneFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Zero => write!(f, "0"),
            Self::Linear { a } => write!(f, "{a}·t"),
            Self::Power { a, p } => write!(f, "{a}·t^{p}"),
            Self::PiecewiseLinear { knots } => write!(f, "piecewise-linear({} knots)", knots.len()),
            Self::Step { at, height } => write!(f, "{height}·1{{t ≥ {at}}}"),
        }
    }
}

/// One point mass of the Lévy measure: jumps of `size` arriving with
/// cumulative intensity `intensity(t)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JumpAtom {
    pub size: f64,
    pub intensity: MonotoneFunction,
}

impl JumpAtom {
    pub fn new(size: f64, intensity: MonotoneFunction) -> Self {
        Self { size, intensity }
    }
}

#[derive(Deserialize)]
struct RawSpec {
    #[serde(default = "zero_function")]
    sigma2: MonotoneFunction,
    #[serde(default)]
    atoms: Vec<JumpAtom>,
}

fn zero_function() -> MonotoneFunction {
    MonotoneFunction::Zero
}

/// A centered additive process: compensated jumps plus a Gaussian part.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpec")]
pub struct ProcessSpec {
    sigma2: MonotoneFunction,
    atoms: Vec<JumpAtom>,
}

impl TryFrom<RawSpec> for ProcessSpec {
    type Error = ModelError;
    fn try_from(raw: RawSpec) -> Result<Self, ModelError> {
        Self::new(raw.sigma2, raw.atoms)
    }
}

impl ProcessSpec {
    pub fn new(sigma2: MonotoneFunction, atoms: Vec<JumpAtom>) -> Result<Self, ModelError> {
        sigma2.check_well_formed()?;
        for (i, atom) in atoms.iter().enumerate() {
            if atom.size == 0.0 || !atom.size.is_finite() {
                return Err(ModelError::InvalidSpec(format!(
                    "atom {i} has size {}, must be finite and nonzero",
                    atom.size
                )));
            }
            atom.intensity.check_well_formed()?;
        }
        if sigma2.is_identically_zero() && atoms.is_empty() {
            return Err(ModelError::InvalidSpec(
                "spec needs a nonzero Gaussian variance or at least one jump atom".into(),
            ));
        }
        Ok(Self { sigma2, atoms })
    }

    /// Compensated Cox process: unit jumps with cumulative hazard `lambda`.
    pub fn cox(lambda: MonotoneFunction) -> Result<Self, ModelError> {
        Self::new(MonotoneFunction::Zero, vec![JumpAtom::new(1.0, lambda)])
    }

    pub fn gaussian(sigma2: MonotoneFunction) -> Result<Self, ModelError> {
        Self::new(sigma2, Vec::new())
    }

    /// Jumps of `±1`, each with intensity `t/2`, plus Gaussian part `sigma2`.
    pub fn symmetric_unit_jumps(sigma2: MonotoneFunction) -> Result<Self, ModelError> {
        Self::new(
            sigma2,
            vec![
                JumpAtom::new(1.0, MonotoneFunction::linear(0.5)),
                JumpAtom::new(-1.0, MonotoneFunction::linear(0.5)),
            ],
        )
    }

    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        serde_json::from_str(text).map_err(|e| ModelError::InvalidSpec(e.to_string()))
    }

    pub fn sigma2(&self) -> &MonotoneFunction {
        &self.sigma2
    }

    pub fn atoms(&self) -> &[JumpAtom] {
        &self.atoms
    }

    pub fn is_pure_jump(&self) -> bool {
        self.sigma2.is_identically_zero()
    }

    /// `Σ_i size_i Λ_i(t)`: the compensator subtracted from the raw jump sum.
    pub fn compensator(&self, t: f64) -> f64 {
        self.atoms.iter().map(|a| a.size * a.intensity.value(t)).sum()
    }

    /// `Σ_i Λ_i(t)`: expected number of jumps in `(0, t]`.
    pub fn total_intensity(&self, t: f64) -> f64 {
        self.atoms.iter().map(|a| a.intensity.value(t)).sum()
    }

    /// The order-`n` cumulant `F_n(t)` of `X_t`, `n ≥ 2`.
    pub fn cumulant(&self, n: usize, t: f64) -> Result<f64, ModelError> {
        if n < 2 {
            return Err(ModelError::CumulantOrder(n));
        }
        if !(t >= 0.0 && t.is_finite()) {
            return Err(ModelError::NegativeTime(t));
        }
        Ok(self.cumulant_unchecked(n, t))
    }

    pub(crate) fn cumulant_unchecked(&self, n: usize, t: f64) -> f64 {
        let jumps: f64 = self
            .atoms
            .iter()
            .map(|a| a.size.powi(n as i32) * a.intensity.value(t))
            .sum();
        if n == 2 {
            self.sigma2.value(t) + jumps
        } else {
            jumps
        }
    }

    /// `[F_2(t), ..., F_max(t)]`.
    pub fn cumulants(&self, max_order: usize, t: f64) -> Result<Vec<f64>, ModelError> {
        (2..=max_order).map(|n| self.cumulant(n, t)).collect()
    }
}

/// `F_n(t)` for `spec`.
pub fn cumulant_fn(spec: &ProcessSpec, n: usize, t: f64) -> Result<f64, ModelError> {
    spec.cumulant(n, t)
}

/// Coefficients of `g_n(x, t) = Γ_n(x, -F_2(t), ..., -F_n(t))` in powers of
/// `x`: entry `j` multiplies `x^j`.
pub fn harmonic_coefficients(spec: &ProcessSpec, n: usize, t: f64) -> Result<Vec<f64>, ModelError> {
    if n == 0 {
        return Err(ModelError::Poly(crate::error::PolyError::OrderTooSmall {
            order: 0,
            min: 1,
        }));
    }
    let coefs = gamma_x1_coefficients(n)?;
    let mut args = vec![0.0];
    for k in 2..=n {
        args.push(-spec.cumulant(k, t)?);
    }
    Ok(coefs.iter().map(|c| c.eval(&args)).collect())
}

/// Evaluates a coefficient list from [`harmonic_coefficients`] at `x`.
pub fn eval_harmonic(coefs: &[f64], x: f64) -> f64 {
    coefs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Origin,
    Monotonicity,
    Continuity,
    NonFinite,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Self::Origin => "origin violation",
            Self::Monotonicity => "monotonicity violation",
            Self::Continuity => "continuity violation",
            Self::NonFinite => "non-finite value",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub function: String,
    pub kind: ViolationKind,
    /// Grid index of the right end of the offending cell.
    pub index: usize,
    pub time: f64,
    pub increment: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} in {} at grid point {} (t = {}), increment {}",
            self.kind, self.function, self.index, self.time, self.increment
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    IdenticallyZero,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FunctionCheck {
    pub function: String,
    pub status: CheckStatus,
    pub max_value: f64,
    pub max_increment: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub horizon: f64,
    pub grid_points: usize,
    pub checks: Vec<FunctionCheck>,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn check(&self, function: &str) -> Option<&FunctionCheck> {
        self.checks.iter().find(|c| c.function == function)
    }
}

/// Grid-checks the hypotheses the martingale results rely on: `σ²` and every
/// `Λ_i` start at 0, are nondecreasing and continuous; even-order `F_n`
/// (up to `2·max_order`) are nondecreasing. Odd `F_n` that vanish on the
/// grid are recorded as identically zero.
///
/// A cell increment above `10 · max|f| / grid_points` counts as a
/// discontinuity.
pub fn validate(
    spec: &ProcessSpec,
    horizon: f64,
    grid_points: usize,
    max_order: usize,
) -> Result<ValidationReport, ModelError> {
    if !(horizon > 0.0 && horizon.is_finite()) {
        return Err(ModelError::InvalidSpec(format!("horizon {horizon} must be positive")));
    }
    if grid_points < 2 {
        return Err(ModelError::InvalidSpec(
            "validation needs at least 2 grid points".into(),
        ));
    }
    let times: Vec<f64> = (0..grid_points)
        .map(|k| horizon * k as f64 / (grid_points - 1) as f64)
        .collect();
    let mut report = ValidationReport {
        horizon,
        grid_points,
        checks: Vec::new(),
        violations: Vec::new(),
    };

    let mut check = |name: String, values: Vec<f64>, require_origin: bool, require_continuity: bool| {
        let max_value = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let tolerance = 10.0 * max_value / grid_points as f64;
        let mut max_increment = 0.0f64;
        let mut failed = false;
        let mut flag = |kind, index: usize, increment: f64, failed: &mut bool| {
            *failed = true;
            report.violations.push(Violation {
                function: name.clone(),
                kind,
                index,
                time: times[index],
                increment,
            });
        };
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            flag(ViolationKind::NonFinite, k, f64::NAN, &mut failed);
        } else {
            if require_origin && values[0] != 0.0 {
                flag(ViolationKind::Origin, 0, values[0], &mut failed);
            }
            for k in 1..values.len() {
                let inc = values[k] - values[k - 1];
                max_increment = max_increment.max(inc.abs());
                if inc < 0.0 {
                    flag(ViolationKind::Monotonicity, k, inc, &mut failed);
                    break;
                }
            }
            if require_continuity {
                if let Some(k) = (1..values.len()).find(|&k| values[k] - values[k - 1] > tolerance) {
                    flag(ViolationKind::Continuity, k, values[k] - values[k - 1], &mut failed);
                }
            }
        }
        let status = if failed {
            CheckStatus::Fail
        } else if max_value == 0.0 {
            CheckStatus::IdenticallyZero
        } else {
            CheckStatus::Pass
        };
        report.checks.push(FunctionCheck {
            function: name,
            status,
            max_value,
            max_increment,
            tolerance,
        });
    };

    let eval = |f: &MonotoneFunction| times.iter().map(|&t| f.value(t)).collect::<Vec<_>>();
    check("sigma2".into(), eval(&spec.sigma2), true, true);
    for (i, atom) in spec.atoms.iter().enumerate() {
        check(format!("atom[{i}].intensity"), eval(&atom.intensity), true, true);
    }
    let mut vanishing = Vec::new();
    for n in 2..=(2 * max_order.max(1)) {
        let values: Vec<f64> = times.iter().map(|&t| spec.cumulant_unchecked(n, t)).collect();
        if n % 2 == 0 {
            // monotone for even orders; continuity follows from the inputs
            check(format!("F_{n}"), values, false, false);
        } else if values.iter().all(|&v| v == 0.0) {
            vanishing.push(n);
        }
    }
    report.checks.extend(vanishing.into_iter().map(|n| FunctionCheck {
        function: format!("F_{n}"),
        status: CheckStatus::IdenticallyZero,
        max_value: 0.0,
        max_increment: 0.0,
        tolerance: 0.0,
    }));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cox_t2() -> ProcessSpec {
        ProcessSpec::cox(MonotoneFunction::power(1.0, 2.0)).unwrap()
    }

    #[test]
    fn cox_cumulants_are_order_independent() {
        let spec = cox_t2();
        for n in 2..=10 {
            for t in [0.0, 0.3, 1.0, 2.5] {
                assert_eq!(cumulant_fn(&spec, n, t).unwrap(), t * t);
            }
        }
    }

    #[test]
    fn gaussian_cumulants() {
        let spec = ProcessSpec::gaussian(MonotoneFunction::linear(1.0)).unwrap();
        assert_eq!(cumulant_fn(&spec, 2, 0.7).unwrap(), 0.7);
        for n in 3..8 {
            assert_eq!(cumulant_fn(&spec, n, 0.7).unwrap(), 0.0);
        }
    }

    #[test]
    fn symmetric_atom_sums() {
        let spec = ProcessSpec::symmetric_unit_jumps(MonotoneFunction::linear(0.5)).unwrap();
        let t = 0.8;
        assert!((cumulant_fn(&spec, 2, t).unwrap() - (t + 0.5 * t)).abs() < 1e-15);
        assert_eq!(cumulant_fn(&spec, 3, t).unwrap(), 0.0);
        assert_eq!(cumulant_fn(&spec, 4, t).unwrap(), t);
    }

    #[test]
    fn cumulant_domain_errors() {
        let spec = cox_t2();
        assert_eq!(cumulant_fn(&spec, 1, 0.5).unwrap_err(), ModelError::CumulantOrder(1));
        assert!(matches!(cumulant_fn(&spec, 2, -1.0), Err(ModelError::NegativeTime(_))));
    }

    #[test]
    fn cumulants_vanish_at_origin() {
        let spec = ProcessSpec::new(
            MonotoneFunction::power(2.0, 1.5),
            vec![
                JumpAtom::new(0.5, MonotoneFunction::linear(3.0)),
                JumpAtom::new(-2.0, MonotoneFunction::piecewise_linear(vec![[0.0, 0.0], [1.0, 2.0]])),
            ],
        )
        .unwrap();
        for n in 2..12 {
            assert_eq!(cumulant_fn(&spec, n, 0.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn spec_invariants() {
        assert!(ProcessSpec::new(MonotoneFunction::Zero, vec![]).is_err());
        assert!(ProcessSpec::new(
            MonotoneFunction::Zero,
            vec![JumpAtom::new(0.0, MonotoneFunction::linear(1.0))]
        )
        .is_err());
        assert!(ProcessSpec::gaussian(MonotoneFunction::power(1.0, 0.5)).is_err());
        assert!(ProcessSpec::cox(MonotoneFunction::piecewise_linear(vec![[0.5, 0.0]])).is_err());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"sigma2": {"kind": "power", "a": 1.0, "p": 1.0},
                       "atoms": [{"size": 1.0, "intensity": {"kind": "linear", "a": 0.5}}]}"#;
        let spec = ProcessSpec::from_json(text).unwrap();
        assert_eq!(spec.atoms().len(), 1);
        let back = ProcessSpec::from_json(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(back, spec);
        assert!(ProcessSpec::from_json(r#"{"atoms": []}"#).is_err());
    }

    #[test]
    fn inverses_agree_with_bisection() {
        let fns = [
            MonotoneFunction::linear(2.0),
            MonotoneFunction::power(1.5, 2.0),
            MonotoneFunction::piecewise_linear(vec![[0.0, 0.0], [0.3, 0.1], [0.6, 0.1], [1.0, 2.0]]),
        ];
        for f in &fns {
            for level in [0.05, 0.1, 0.5, 1.2] {
                let exact = f.inverse(level).unwrap();
                let bis = f.inverse_by_bisection(level, 1.0).unwrap();
                assert!((exact - bis).abs() < 1e-12, "{f}: {exact} vs {bis}");
            }
        }
        assert_eq!(MonotoneFunction::linear(1.0).inverse(0.0), Some(0.0));
        assert_eq!(MonotoneFunction::Zero.inverse(0.5), None);
        assert_eq!(
            MonotoneFunction::piecewise_linear(vec![[0.0, 0.0], [1.0, 1.0]]).inverse(2.0),
            None
        );
    }

    #[test]
    fn validation_passes_polynomial_lambda() {
        let report = validate(&cox_t2(), 1.0, 1000, 3).unwrap();
        assert!(report.is_ok(), "{:?}", report.violations);
        assert_eq!(report.check("atom[0].intensity").unwrap().status, CheckStatus::Pass);
        assert_eq!(report.check("sigma2").unwrap().status, CheckStatus::IdenticallyZero);
    }

    #[test]
    fn validation_flags_step_lambda() {
        let spec = ProcessSpec::cox(MonotoneFunction::Step { at: 0.5, height: 1.0 }).unwrap();
        let report = validate(&spec, 1.0, 1000, 2).unwrap();
        assert!(!report.is_ok());
        let v = &report.violations[0];
        assert_eq!(v.kind, ViolationKind::Continuity);
        assert_eq!(v.function, "atom[0].intensity");
        assert_eq!(v.increment, 1.0);
        assert!(v.to_string().contains("continuity violation"));
    }

    #[test]
    fn validation_flags_decreasing_lambda() {
        let spec = ProcessSpec::cox(MonotoneFunction::piecewise_linear(vec![
            [0.0, 0.0],
            [0.5, 1.0],
            [1.0, 0.5],
        ]))
        .unwrap();
        let report = validate(&spec, 1.0, 101, 2).unwrap();
        assert!(report
            .violations
            .iter()
            .any(|v| v.kind == ViolationKind::Monotonicity && v.function == "atom[0].intensity"));
    }

    #[test]
    fn validation_notes_vanishing_odd_cumulants() {
        let spec = ProcessSpec::symmetric_unit_jumps(MonotoneFunction::Zero).unwrap();
        let report = validate(&spec, 1.0, 200, 2).unwrap();
        assert!(report.is_ok());
        assert_eq!(report.check("F_4").unwrap().status, CheckStatus::Pass);
        assert_eq!(report.check("F_3").unwrap().status, CheckStatus::IdenticallyZero);
    }

    #[test]
    fn harmonic_coefficient_examples() {
        let spec = ProcessSpec::symmetric_unit_jumps(MonotoneFunction::linear(0.5)).unwrap();
        let t = 0.6;
        let f2 = spec.cumulant(2, t).unwrap();
        let f3 = spec.cumulant(3, t).unwrap();
        assert_eq!(harmonic_coefficients(&spec, 1, t).unwrap(), vec![0.0, 1.0]);
        assert_eq!(harmonic_coefficients(&spec, 2, t).unwrap(), vec![-f2, 0.0, 1.0]);
        assert_eq!(
            harmonic_coefficients(&spec, 3, t).unwrap(),
            vec![-f3, -3.0 * f2, 0.0, 1.0]
        );
        for n in 1..8 {
            let c = harmonic_coefficients(&spec, n, 0.0).unwrap();
            let mut xn = vec![0.0; n + 1];
            xn[n] = 1.0;
            assert_eq!(c, xn);
        }
    }
}
