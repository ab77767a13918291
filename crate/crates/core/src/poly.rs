//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Variables are indexed from 1 (`x1, x2, ...`). A term is stored as a dense
//! exponent vector whose slot `i` holds the power of `x_{i+1}`; trailing zero
//! exponents are trimmed so every monomial has exactly one representation, and
//! zero coefficients are never stored. Equality of polynomials is therefore
//! equality of the term maps.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::PolyError;

/// Exponent vector with trailing zeros trimmed.
pub type Exponents = Vec<u32>;

fn trim(mut exp: Exponents) -> Exponents {
    while exp.last() == Some(&0) {
        exp.pop();
    }
    exp
}

/// Numeric types a polynomial can be evaluated in.
pub trait Scalar: Clone + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> {
    fn from_rational(value: &BigRational) -> Self;
}

impl Scalar for f64 {
    fn from_rational(value: &BigRational) -> Self {
        value.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for BigRational {
    fn from_rational(value: &BigRational) -> Self {
        value.clone()
    }
}

fn pow_scalar<T: Scalar>(base: &T, exp: u32) -> T {
    let mut acc = T::one();
    for _ in 0..exp {
        acc = acc * base.clone();
    }
    acc
}

/// A multivariate polynomial over the rationals.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ExactPolynomial {
    terms: BTreeMap<Exponents, BigRational>,
}

impl ExactPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(Vec::new(), c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    /// The variable `x_index` (1-based).
    pub fn var(index: usize) -> Self {
        assert!(index >= 1, "variables are 1-based");
        let mut exp = vec![0; index];
        exp[index - 1] = 1;
        Self::monomial(exp, BigRational::one())
    }

    pub fn monomial(exp: Exponents, coef: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(trim(exp), coef);
        }
        Self { terms }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, BigRational)>,
    {
        let mut out = Self::zero();
        for (exp, coef) in terms {
            out.add_term(trim(exp), coef);
        }
        out
    }

    fn add_term(&mut self, exp: Exponents, coef: BigRational) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &[u32]) -> BigRational {
        self.terms
            .get(&trim(exp.to_vec()))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Constant term.
    pub fn constant_term(&self) -> BigRational {
        self.coefficient(&[])
    }

    /// Highest variable index that appears (0 for constants).
    pub fn num_vars(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn degree_in(&self, index: usize) -> u32 {
        self.terms
            .keys()
            .map(|e| e.get(index - 1).copied().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// True when every monomial has weighted degree `weight` with x_i weighing i.
    pub fn is_isobaric(&self, weight: u64) -> bool {
        self.terms.keys().all(|e| {
            e.iter()
                .enumerate()
                .map(|(i, &p)| (i as u64 + 1) * u64::from(p))
                .sum::<u64>()
                == weight
        })
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * factor)).collect(),
        }
    }

    pub fn scale_int(&self, factor: &BigInt) -> Self {
        self.scale(&BigRational::from_integer(factor.clone()))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to `x_index` (1-based).
    pub fn partial(&self, index: usize) -> Self {
        assert!(index >= 1, "variables are 1-based");
        let slot = index - 1;
        let mut out = Self::zero();
        for (exp, coef) in &self.terms {
            let power = exp.get(slot).copied().unwrap_or(0);
            if power == 0 {
                continue;
            }
            let mut lowered = exp.clone();
            lowered[slot] -= 1;
            out.add_term(trim(lowered), coef * BigRational::from_integer(BigInt::from(power)));
        }
        out
    }

    /// Replaces `x_index` by `value` everywhere.
    pub fn substitute(&self, index: usize, value: &ExactPolynomial) -> Self {
        let by_power = self.coefficients_in(index);
        // Horner in the substituted variable.
        let mut acc = Self::zero();
        for coef in by_power.iter().rev() {
            acc = &(&acc * value) + coef;
        }
        acc
    }

    /// Sets `x_index` to zero.
    pub fn without_var(&self, index: usize) -> Self {
        let slot = index - 1;
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.get(slot).copied().unwrap_or(0) == 0)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Splits the polynomial by powers of `x_index`: entry `j` is the
    /// coefficient of `x_index^j`, free of `x_index`.
    pub fn coefficients_in(&self, index: usize) -> Vec<ExactPolynomial> {
        let slot = index - 1;
        let mut out = vec![Self::zero(); self.degree_in(index) as usize + 1];
        for (exp, coef) in &self.terms {
            let power = exp.get(slot).copied().unwrap_or(0);
            let mut rest = exp.clone();
            if slot < rest.len() {
                rest[slot] = 0;
            }
            out[power as usize].add_term(trim(rest), coef.clone());
        }
        out
    }

    /// Evaluates at `values`, where `values[i]` is the value of `x_{i+1}`.
    /// Variables beyond the slice are taken as zero.
    pub fn eval<T: Scalar>(&self, values: &[T]) -> T {
        let mut acc = T::zero();
        'terms: for (exp, coef) in &self.terms {
            let mut term = T::from_rational(coef);
            for (slot, &power) in exp.iter().enumerate() {
                if power == 0 {
                    continue;
                }
                match values.get(slot) {
                    Some(v) => term = term * pow_scalar(v, power),
                    None => continue 'terms,
                }
            }
            acc = acc + term;
        }
        acc
    }

    /// Floating-point copy of the term list, for hot evaluation loops.
    pub fn to_float(&self) -> FloatPolynomial {
        FloatPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), f64::from_rational(c)))
                .collect(),
        }
    }

    /// Renders with custom variable names; `names[i]` names `x_{i+1}`.
    pub fn display_with<'a>(&'a self, names: &'a [&'a str]) -> impl fmt::Display + 'a {
        Rendered { poly: self, names }
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, names: &[&str]) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // Highest monomials first, so Γ_3 reads "x1^3 + 3 x1 x2 + x3".
        for (k, (exp, coef)) in self.terms.iter().rev().enumerate() {
            let negative = coef.is_negative();
            let magnitude = coef.abs();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut parts: Vec<String> = Vec::new();
            if !magnitude.is_one() || exp.iter().all(|&p| p == 0) {
                parts.push(magnitude.to_string());
            }
            for (slot, &power) in exp.iter().enumerate() {
                if power == 0 {
                    continue;
                }
                let name = names
                    .get(slot)
                    .map(|s| (*s).to_string())
                    .unwrap_or_else(|| format!("x{}", slot + 1));
                if power == 1 {
                    parts.push(name);
                } else {
                    parts.push(format!("{name}^{power}"));
                }
            }
            f.write_str(&parts.join(" "))?;
        }
        Ok(())
    }
}

struct Rendered<'a> {
    poly: &'a ExactPolynomial,
    names: &'a [&'a str],
}

impl fmt::Display for Rendered<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt_with(f, self.names)
    }
}

impl fmt::Display for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, &[])
    }
}

impl fmt::Debug for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactPolynomial({self})")
    }
}

impl Add for &ExactPolynomial {
    type Output = ExactPolynomial;
    fn add(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &ExactPolynomial {
    type Output = ExactPolynomial;
    fn sub(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &ExactPolynomial {
    type Output = ExactPolynomial;
    fn neg(self) -> ExactPolynomial {
        ExactPolynomial {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for &ExactPolynomial {
    type Output = ExactPolynomial;
    fn mul(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        let mut out = ExactPolynomial::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let len = ea.len().max(eb.len());
                let exp: Exponents = (0..len)
                    .map(|i| ea.get(i).copied().unwrap_or(0) + eb.get(i).copied().unwrap_or(0))
                    .collect();
                out.add_term(exp, ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for ExactPolynomial {
            type Output = ExactPolynomial;
            fn $method(self, rhs: ExactPolynomial) -> ExactPolynomial {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Zero for ExactPolynomial {
    fn zero() -> Self {
        ExactPolynomial::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for ExactPolynomial {
    fn one() -> Self {
        ExactPolynomial::one()
    }
}

/// Lets a polynomial be evaluated at polynomial arguments (composition).
impl Scalar for ExactPolynomial {
    fn from_rational(value: &BigRational) -> Self {
        ExactPolynomial::constant(value.clone())
    }
}

/// `f64` term list produced by [`ExactPolynomial::to_float`].
#[derive(Clone, Debug, PartialEq)]
pub struct FloatPolynomial {
    terms: Vec<(Exponents, f64)>,
}

impl FloatPolynomial {
    pub fn eval(&self, values: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(exp, coef)| {
                exp.iter().enumerate().fold(*coef, |acc, (slot, &p)| {
                    if p == 0 {
                        acc
                    } else {
                        acc * values.get(slot).copied().unwrap_or(0.0).powi(p as i32)
                    }
                })
            })
            .sum()
    }
}

// Canonical JSON: {"vars": k, "terms": [{"exp": [...], "coef": "p" | "p/q"}]},
// exponent vectors padded to k and sorted ascending.

#[derive(Serialize, Deserialize)]
struct CanonicalTerm {
    exp: Vec<u32>,
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct CanonicalPoly {
    vars: usize,
    terms: Vec<CanonicalTerm>,
}

fn coef_to_string(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, PolyError> {
    let bad = || PolyError::Malformed(format!("bad coefficient {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let s = s.trim();
            if let Some((int, frac)) = s.split_once('.') {
                // exact decimal
                let negative = int.starts_with('-');
                let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
                let n: BigInt = digits.parse().map_err(|_| bad())?;
                let d = num_traits::pow(BigInt::from(10u32), frac.len());
                let r = BigRational::new(n, d);
                Ok(if negative { -r } else { r })
            } else {
                Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?))
            }
        }
    }
}

impl Serialize for ExactPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let vars = self.num_vars();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut exp = e.clone();
                exp.resize(vars, 0);
                CanonicalTerm {
                    exp,
                    coef: coef_to_string(c),
                }
            })
            .collect();
        CanonicalPoly { vars, terms }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExactPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = CanonicalPoly::deserialize(deserializer)?;
        let mut out = ExactPolynomial::zero();
        for term in raw.terms {
            if term.exp.len() != raw.vars {
                return Err(D::Error::custom("exponent vector length differs from vars"));
            }
            let coef = parse_rational(&term.coef).map_err(D::Error::custom)?;
            out.add_term(trim(term.exp), coef);
        }
        Ok(out)
    }
}
