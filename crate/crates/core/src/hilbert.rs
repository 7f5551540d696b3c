//! Hilbert-Samuel function `n ↦ ℓ(R/I^{n+1})` and its coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ops::{colength, PowerCache};

pub const DEFAULT_HILBERT_DEPTH: u32 = 12;
pub const DEFAULT_AGREEMENT_WINDOW: u32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    /// Entry `n` is `ℓ(R/I^{n+1})`.
    pub lengths: Vec<u64>,
    /// `e_0, ..., e_d`.
    pub coefficients: Vec<BigInt>,
    /// Least `n` from which the lengths agree with the polynomial.
    pub postulation: u32,
    /// Number of agreeing values beyond those used for the fit.
    pub agreement_window: u32,
}

impl HilbertData {
    pub fn multiplicity(&self) -> &BigInt {
        &self.coefficients[0]
    }

    /// Value of the Hilbert-Samuel polynomial at `n`.
    pub fn polynomial_value(&self, n: u64) -> BigInt {
        evaluate(&self.coefficients, n)
    }
}

/// `ℓ(R/I^{n+1})` for `n = 0..=depth`.
pub fn hilbert_samuel<F: Field>(cache: &PowerCache<F>, depth: u32) -> Result<Vec<u64>> {
    (0..=depth).map(|n| colength(&*cache.power(n + 1)?)).collect()
}

fn binomial(n: i64, k: u32) -> BigInt {
    if n < 0 {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k as i64 {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn basis_row(n: u64, d: usize) -> Vec<BigInt> {
    (0..=d)
        .map(|i| {
            let b = binomial(n as i64 + (d - i) as i64, (d - i) as u32);
            if i % 2 == 0 {
                b
            } else {
                -b
            }
        })
        .collect()
}

fn evaluate(coefficients: &[BigInt], n: u64) -> BigInt {
    let d = coefficients.len() - 1;
    basis_row(n, d).iter().zip(coefficients).map(|(a, e)| a * e).sum()
}

/// Fits `Σ (-1)^i e_i C(n+d-i, d-i)` to the last `d + 1` lengths and checks
/// that it matches at least `window` earlier values as well.
pub fn hilbert_coefficients_from_lengths(lengths: &[u64], dim: usize, window: u32) -> Result<HilbertData> {
    let unknowns = dim + 1;
    if lengths.len() < unknowns + window as usize {
        return Err(Error::FitNotStable(format!(
            "{} values cannot fit {} coefficients with {} checks",
            lengths.len(),
            unknowns,
            window
        )));
    }
    let last = lengths.len() - 1;
    let points: Vec<u64> = ((last + 1 - unknowns)..=last).map(|n| n as u64).collect();
    let mut rows: Vec<Vec<BigRational>> = points
        .iter()
        .map(|&n| {
            let mut row: Vec<BigRational> = basis_row(n, dim).into_iter().map(BigRational::from_integer).collect();
            row.push(BigRational::from_integer(BigInt::from(lengths[n as usize])));
            row
        })
        .collect();
    let solution = solve(&mut rows).ok_or_else(|| Error::FitNotStable("singular system".into()))?;
    let mut coefficients = Vec::with_capacity(unknowns);
    for v in solution {
        if !v.is_integer() {
            return Err(Error::FitNotStable(format!("non-integral coefficient {v}")));
        }
        coefficients.push(v.to_integer());
    }
    let mut postulation = points[0] as usize;
    while postulation > 0 && evaluate(&coefficients, postulation as u64 - 1) == BigInt::from(lengths[postulation - 1]) {
        postulation -= 1;
    }
    let agreement_window = (points[0] as usize - postulation) as u32;
    if agreement_window < window {
        return Err(Error::FitNotStable(format!(
            "fit agrees with only {agreement_window} earlier values, {window} required"
        )));
    }
    if coefficients[0].is_negative() || coefficients[0].is_zero() {
        return Err(Error::FitNotStable(format!("multiplicity {} is not positive", coefficients[0])));
    }
    Ok(HilbertData { lengths: lengths.to_vec(), coefficients, postulation: postulation as u32, agreement_window })
}

/// Hilbert-Samuel coefficients of the base ideal of `cache`.
pub fn hilbert_coefficients<F: Field>(cache: &PowerCache<F>, depth: u32, window: u32) -> Result<HilbertData> {
    let lengths = hilbert_samuel(cache, depth)?;
    hilbert_coefficients_from_lengths(&lengths, cache.base().ring().arity(), window)
}

fn solve(rows: &mut [Vec<BigRational>]) -> Option<Vec<BigRational>> {
    let n = rows.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(col, pivot);
        let p = rows[col][col].clone();
        for c in col..=n {
            rows[col][c] = &rows[col][c] / &p;
        }
        for r in 0..n {
            if r != col && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in col..=n {
                    let v = &rows[col][c] * &f;
                    rows[r][c] = &rows[r][c] - v;
                }
            }
        }
    }
    Some(rows.iter().map(|r| r[n].clone()).collect())
}
