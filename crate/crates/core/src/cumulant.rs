//! Kendall polynomials: the universal polynomials `Γ_n(x_1, ..., x_n)` that
//! express the order-`n` moment of a random variable in terms of its
//! cumulants `κ_1, ..., κ_n` (variable `x_j` stands for `κ_j`).
//!
//! `Γ_n` is built from the binomial recurrence
//! `Γ_{n+1} = Σ_{j=0}^{n} C(n, j) Γ_j x_{n+1-j}`, `Γ_0 = 1`, and memoized.
//! An independent route, [`gamma_partition_oracle`], sums `Π_B x_{|B|}` over
//! all set partitions and exists only to cross-check the recurrence.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::PolyError;
use crate::poly::{ExactPolynomial, Scalar};

pub const DEFAULT_GAMMA_CAP: usize = 24;
pub const DEFAULT_ORACLE_CAP: usize = 12;

/// Binomial coefficient as an arbitrary-precision integer.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// Binomial coefficient as an exact rational.
pub fn binomial_q(n: usize, k: usize) -> BigRational {
    BigRational::from_integer(binomial(n, k))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Memo table of Kendall polynomials up to a fixed cap.
///
/// Entries are append-only `Arc`s: once a polynomial is published no reader
/// can observe it changing.
#[derive(Debug)]
pub struct KendallTable {
    cap: usize,
    entries: RwLock<Vec<Arc<ExactPolynomial>>>,
}

impl KendallTable {
    pub fn new(cap: usize) -> Self {
        Self {
            cap,
            entries: RwLock::new(vec![Arc::new(ExactPolynomial::one())]),
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn gamma(&self, n: usize) -> Result<Arc<ExactPolynomial>, PolyError> {
        if n > self.cap {
            return Err(PolyError::OrderTooLarge {
                order: n,
                cap: self.cap,
            });
        }
        if let Some(p) = self.entries.read().expect("kendall cache poisoned").get(n) {
            return Ok(Arc::clone(p));
        }
        let mut entries = self.entries.write().expect("kendall cache poisoned");
        while entries.len() <= n {
            let next = next_gamma(&entries);
            entries.push(Arc::new(next));
        }
        Ok(Arc::clone(&entries[n]))
    }

    /// `Γ_0, ..., Γ_n`.
    pub fn gammas(&self, n: usize) -> Result<Vec<Arc<ExactPolynomial>>, PolyError> {
        self.gamma(n)?;
        let entries = self.entries.read().expect("kendall cache poisoned");
        Ok(entries[..=n].to_vec())
    }
}

/// Γ_{m} from Γ_0..Γ_{m-1}, where m = known.len().
fn next_gamma(known: &[Arc<ExactPolynomial>]) -> ExactPolynomial {
    let n = known.len() - 1;
    let mut out = ExactPolynomial::zero();
    for (j, gamma_j) in known.iter().enumerate() {
        let term = &gamma_j.scale_int(&binomial(n, j)) * &ExactPolynomial::var(n + 1 - j);
        out = &out + &term;
    }
    out
}

/// Process-wide table with the default cap.
pub fn kendall() -> &'static KendallTable {
    static TABLE: OnceLock<KendallTable> = OnceLock::new();
    TABLE.get_or_init(|| KendallTable::new(DEFAULT_GAMMA_CAP))
}

/// The Kendall polynomial `Γ_n`, from the shared memo table.
pub fn gamma(n: usize) -> Result<Arc<ExactPolynomial>, PolyError> {
    kendall().gamma(n)
}

/// Calls `visit` with the block sizes of every set partition of `{1..n}`.
///
/// Partitions are enumerated as restricted growth strings; `n = 0` yields the
/// single empty partition.
pub fn for_each_set_partition<F: FnMut(&[usize])>(n: usize, mut visit: F) {
    if n == 0 {
        visit(&[]);
        return;
    }
    // growth[i] = block of element i; growth[0] = 0, growth[i] <= max(growth[..i]) + 1
    let mut growth = vec![0usize; n];
    let mut sizes = vec![0usize; n];
    loop {
        sizes.iter_mut().for_each(|s| *s = 0);
        let mut blocks = 0;
        for &g in &growth {
            sizes[g] += 1;
            blocks = blocks.max(g + 1);
        }
        visit(&sizes[..blocks]);

        // advance to the next restricted growth string
        let mut i = n - 1;
        loop {
            if i == 0 {
                return;
            }
            let prefix_max = growth[..i].iter().copied().max().unwrap_or(0);
            if growth[i] <= prefix_max {
                growth[i] += 1;
                growth[i + 1..].iter_mut().for_each(|g| *g = 0);
                break;
            }
            i -= 1;
        }
    }
}

/// `Γ_n` by brute-force enumeration of set partitions, capped at
/// [`DEFAULT_ORACLE_CAP`].
pub fn gamma_partition_oracle(n: usize) -> Result<ExactPolynomial, PolyError> {
    gamma_partition_oracle_capped(n, DEFAULT_ORACLE_CAP)
}

pub fn gamma_partition_oracle_capped(n: usize, cap: usize) -> Result<ExactPolynomial, PolyError> {
    if n > cap {
        return Err(PolyError::OracleCapExceeded { order: n, cap });
    }
    let mut counts: HashMap<Vec<u32>, u64> = HashMap::new();
    let mut exp = vec![0u32; n];
    for_each_set_partition(n, |sizes| {
        exp.iter_mut().for_each(|e| *e = 0);
        for &s in sizes {
            exp[s - 1] += 1;
        }
        *counts.entry(exp.clone()).or_insert(0) += 1;
    });
    Ok(ExactPolynomial::from_terms(
        counts
            .into_iter()
            .map(|(e, c)| (e, BigRational::from_integer(BigInt::from(c)))),
    ))
}

/// Moments `μ_1, ..., μ_n`, index `i - 1` holding order `i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentSequence<T>(pub Vec<T>);

/// Cumulants `κ_1, ..., κ_n`, index `i - 1` holding order `i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CumulantSequence<T>(pub Vec<T>);

impl<T> MomentSequence<T> {
    pub fn new(values: Vec<T>) -> Result<Self, PolyError> {
        if values.is_empty() {
            return Err(PolyError::EmptySequence);
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[T] {
        &self.0
    }
}

impl<T> CumulantSequence<T> {
    pub fn new(values: Vec<T>) -> Result<Self, PolyError> {
        if values.is_empty() {
            return Err(PolyError::EmptySequence);
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[T] {
        &self.0
    }
}

/// `μ_i = Γ_i(κ_1, ..., κ_i)` for every order present in `cumulants`.
pub fn moments_from_cumulants<T: Scalar>(cumulants: &CumulantSequence<T>) -> Result<MomentSequence<T>, PolyError> {
    let kappa = cumulants.values();
    if kappa.is_empty() {
        return Err(PolyError::EmptySequence);
    }
    let gammas = kendall().gammas(kappa.len())?;
    Ok(MomentSequence(
        (1..=kappa.len()).map(|i| gammas[i].eval(&kappa[..i])).collect(),
    ))
}

/// Inverts [`moments_from_cumulants`] by triangular solve of the recurrence:
/// `κ_{n+1} = μ_{n+1} - Σ_{j=1}^{n} C(n, j) μ_j κ_{n+1-j}`.
pub fn cumulants_from_moments<T: Scalar>(moments: &MomentSequence<T>) -> Result<CumulantSequence<T>, PolyError> {
    let mu = moments.values();
    if mu.is_empty() {
        return Err(PolyError::EmptySequence);
    }
    let mut kappa: Vec<T> = Vec::with_capacity(mu.len());
    for n in 0..mu.len() {
        let mut k = mu[n].clone();
        for j in 1..=n {
            let c = T::from_rational(&binomial_q(n, j));
            k = k - c * mu[j - 1].clone() * kappa[n - j].clone();
        }
        kappa.push(k);
    }
    Ok(CumulantSequence(kappa))
}

/// `∂Γ_n / ∂x_j`, computed symbolically.
pub fn gamma_partial(n: usize, j: usize) -> Result<ExactPolynomial, PolyError> {
    if j == 0 || j > n {
        return Err(PolyError::IndexOutOfRange { index: j, order: n });
    }
    Ok(gamma(n)?.partial(j))
}

/// `Γ_n(x_1 + y, x_2, ..., x_n)` with `y` carried as variable `x_{n+1}`.
///
/// Both the substitution and the binomial sum
/// `Σ_j C(n, j) Γ_{n-j}(x_1, ..., x_{n-j}) y^j` are built; they must agree
/// exactly or [`PolyError::IdentityFailed`] is returned.
pub fn gamma_shift_expand(n: usize) -> Result<ExactPolynomial, PolyError> {
    if n == 0 {
        return Err(PolyError::OrderTooSmall { order: n, min: 1 });
    }
    let (left, right) = shift_sides(n)?;
    if left != right {
        return Err(PolyError::IdentityFailed {
            identity: "shift expansion",
            order: n,
        });
    }
    Ok(left)
}

fn shift_sides(n: usize) -> Result<(ExactPolynomial, ExactPolynomial), PolyError> {
    let y = ExactPolynomial::var(n + 1);
    let x1_plus_y = &ExactPolynomial::var(1) + &y;
    let left = gamma(n)?.substitute(1, &x1_plus_y);
    let gammas = kendall().gammas(n)?;
    let mut right = ExactPolynomial::zero();
    for j in 0..=n {
        let term = &gammas[n - j].scale_int(&binomial(n, j)) * &y.pow(j as u32);
        right = &right + &term;
    }
    Ok((left, right))
}

/// Coefficients `c_j = C(n, j) Γ_{n-j}(0, x_2, ..., x_{n-j})` of `Γ_n` as a
/// polynomial in `x_1`, for `j = 0..=n`.
pub fn gamma_x1_coefficients(n: usize) -> Result<Vec<ExactPolynomial>, PolyError> {
    let gammas = kendall().gammas(n)?;
    Ok((0..=n)
        .map(|j| gammas[n - j].without_var(1).scale_int(&binomial(n, j)))
        .collect())
}

/// Exact checks of the algebraic identities the Kendall polynomials satisfy.
pub mod identities {
    use super::*;

    /// Binomial recurrence, checked on the partition-oracle polynomials so it
    /// does not reduce to the construction of [`gamma`].
    pub fn recurrence_holds(n: usize) -> Result<bool, PolyError> {
        let oracle: Vec<ExactPolynomial> = (0..=n + 1).map(gamma_partition_oracle).collect::<Result<_, _>>()?;
        let mut rhs = ExactPolynomial::zero();
        for (j, g) in oracle.iter().take(n + 1).enumerate() {
            rhs = &rhs + &(&g.scale_int(&binomial(n, j)) * &ExactPolynomial::var(n + 1 - j));
        }
        Ok(oracle[n + 1] == rhs)
    }

    /// `∂Γ_n/∂x_j = C(n, j) Γ_{n-j}`.
    pub fn partial_holds(n: usize, j: usize) -> Result<bool, PolyError> {
        let lhs = gamma_partial(n, j)?;
        let rhs = gamma(n - j)?.scale_int(&binomial(n, j));
        Ok(lhs == rhs)
    }

    pub fn shift_holds(n: usize) -> Result<bool, PolyError> {
        let (l, r) = shift_sides(n)?;
        Ok(l == r)
    }

    /// `Σ_j c_j x_1^j` reassembles `Γ_n`, and the coefficients agree with a
    /// direct read-off of `Γ_n` by powers of `x_1`.
    pub fn x1_expansion_holds(n: usize) -> Result<bool, PolyError> {
        let coefs = gamma_x1_coefficients(n)?;
        let x1 = ExactPolynomial::var(1);
        let mut sum = ExactPolynomial::zero();
        for (j, c) in coefs.iter().enumerate() {
            sum = &sum + &(c * &x1.pow(j as u32));
        }
        let g = gamma(n)?;
        let mut direct = g.coefficients_in(1);
        direct.resize(n + 1, ExactPolynomial::zero());
        Ok(sum == *g && direct == coefs)
    }
}
