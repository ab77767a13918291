//! The compensated Cox-process example: monic Charlier polynomials, the
//! `λ^(n)_k` coefficient tables, and a symbolic check of the expansion of
//! `g_n(x, a) = Γ_n(x, -a, ..., -a)` in Charlier polynomials.
//!
//! Charlier polynomials here are monic in `y` and defined by the generating
//! function `exp(-w a) (1 + w)^y = Σ_n C̄_n(y, a) wⁿ / n!`. Polynomials in
//! `(y, a)` or `(x, a)` use variable 1 for the first argument and variable 2
//! for `a`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::cumulant::{binomial, factorial, gamma};
use crate::error::PolyError;
use crate::poly::ExactPolynomial;

/// `λ^(n)_1, ..., λ^(n)_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LambdaTable {
    pub order: usize,
    #[serde(serialize_with = "as_decimal_strings")]
    pub entries: Vec<BigInt>,
}

fn as_decimal_strings<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

impl LambdaTable {
    /// `λ^(n)_k`, 1-based.
    pub fn get(&self, k: usize) -> &BigInt {
        &self.entries[k - 1]
    }
}

/// Tables for orders `1..=max_order`, built by
/// `λ^(n)_1 = 1`, `λ^(n)_{k+1} = Σ_{j=k}^{n-1} C(n, j) λ^(j)_k`.
pub fn lambda_tables(max_order: usize) -> Vec<LambdaTable> {
    let mut tables: Vec<LambdaTable> = Vec::with_capacity(max_order);
    for n in 1..=max_order {
        let mut entries = vec![BigInt::one()];
        for k in 1..n {
            let next: BigInt = (k..n).map(|j| binomial(n, j) * tables[j - 1].get(k)).sum();
            entries.push(next);
        }
        tables.push(LambdaTable { order: n, entries });
    }
    tables
}

pub fn lambda_table(n: usize) -> Result<LambdaTable, PolyError> {
    if n == 0 {
        return Err(PolyError::OrderTooSmall { order: 0, min: 1 });
    }
    Ok(lambda_tables(n).pop().expect("n >= 1"))
}

/// Monic Charlier polynomials `C̄_0, ..., C̄_max` in `(y, a)` from
/// `C̄_{n+1} = (y - n - a) C̄_n - n a C̄_{n-1}`.
pub fn charlier_polys(max_order: usize) -> Vec<ExactPolynomial> {
    let y = ExactPolynomial::var(1);
    let a = ExactPolynomial::var(2);
    let mut out = vec![ExactPolynomial::one(), &y - &a];
    for n in 1..max_order {
        let shift = &(&y - &a) - &ExactPolynomial::from_int(n as i64);
        let next = &(&shift * &out[n]) - &(&a * &out[n - 1]).scale_int(&BigInt::from(n));
        out.push(next);
    }
    out.truncate(max_order + 1);
    out
}

pub fn charlier_poly(n: usize) -> ExactPolynomial {
    charlier_polys(n).pop().expect("non-empty")
}

/// Which reading of the Charlier expansion of `g_n` to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// `Σ_j λ^(n)_j C̄_j(x, a)`.
    PaperLiteral,
    /// `Σ_j λ^(n)_j C̄_j(x + a, a) / j!`, i.e. evaluated at the raw count.
    RawArgumentWeighted,
}

impl Convention {
    pub const ALL: [Convention; 2] = [Convention::PaperLiteral, Convention::RawArgumentWeighted];
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Self::PaperLiteral => "paper-literal",
            Self::RawArgumentWeighted => "raw-argument-weighted",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpansionReport {
    pub order: usize,
    pub convention: Convention,
    pub holds: bool,
    /// `g_n(x, a)`.
    pub harmonic: ExactPolynomial,
    pub expansion: ExactPolynomial,
    /// `harmonic - expansion`; zero iff the identity holds.
    pub difference: ExactPolynomial,
}

/// `g_n(x, a) = Γ_n(x, -a, ..., -a)` as a polynomial in `(x, a)`.
pub fn cox_harmonic_poly(n: usize) -> Result<ExactPolynomial, PolyError> {
    let x = ExactPolynomial::var(1);
    let minus_a = -&ExactPolynomial::var(2);
    let mut args = vec![x];
    args.resize(n.max(1), minus_a);
    Ok(gamma(n)?.eval(&args))
}

pub fn expansion_check(n: usize, convention: Convention) -> Result<ExpansionReport, PolyError> {
    if n == 0 {
        return Err(PolyError::OrderTooSmall { order: 0, min: 1 });
    }
    let harmonic = cox_harmonic_poly(n)?;
    let lambdas = lambda_table(n)?;
    let charliers = charlier_polys(n);
    let x = ExactPolynomial::var(1);
    let a = ExactPolynomial::var(2);
    let argument = match convention {
        Convention::PaperLiteral => x,
        Convention::RawArgumentWeighted => &x + &a,
    };
    let mut expansion = ExactPolynomial::zero();
    for (j, charlier) in charliers.iter().enumerate().take(n + 1).skip(1) {
        let c = charlier.eval(&[argument.clone(), a.clone()]);
        let weight = match convention {
            Convention::PaperLiteral => BigRational::from_integer(lambdas.get(j).clone()),
            Convention::RawArgumentWeighted => BigRational::new(lambdas.get(j).clone(), factorial(j)),
        };
        expansion = &expansion + &c.scale(&weight);
    }
    let difference = &harmonic - &expansion;
    Ok(ExpansionReport {
        order: n,
        convention,
        holds: difference.is_zero(),
        harmonic,
        expansion,
        difference,
    })
}
