//! Exponent vectors and monomial orders.

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Largest number of ring variables supported by the dense exponent vector.
pub const MAX_VARS: usize = 8;

/// A monomial as a dense exponent vector. Slots past the arity are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u32; MAX_VARS],
    arity: u8,
}

impl Monomial {
    pub fn one(arity: usize) -> Self {
        assert!(arity <= MAX_VARS);
        Self { exps: [0; MAX_VARS], arity: arity as u8 }
    }

    pub fn new(exponents: &[u32]) -> Self {
        assert!(exponents.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        let mut exps = [0; MAX_VARS];
        exps[..exponents.len()].copy_from_slice(exponents);
        Self { exps, arity: exponents.len() as u8 }
    }

    /// The monomial `x_var^e`.
    pub fn var_power(arity: usize, var: usize, e: u32) -> Self {
        let mut m = Self::one(arity);
        m.exps[var] = e;
        m
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.exps[..self.arity as usize]
    }

    #[inline]
    pub fn exponent(&self, var: usize) -> u32 {
        self.exps[var]
    }

    #[inline]
    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    #[inline]
    pub fn mul(&self, other: &Self) -> Self {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps.iter()) {
            *e += o;
        }
        Self { exps, arity: self.arity }
    }

    /// Like [`Monomial::mul`] but refuses exponents above `limit`.
    pub fn checked_mul(&self, other: &Self, limit: u32) -> Result<Self> {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps.iter()) {
            let s = *e as u64 + *o as u64;
            if s > limit as u64 {
                return Err(Error::ExponentGuard { limit });
            }
            *e = s as u32;
        }
        Ok(Self { exps, arity: self.arity })
    }

    /// `true` iff `self` divides `other`.
    #[inline]
    pub fn divides(&self, other: &Self) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, provided `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        if !self.divides(other) {
            return None;
        }
        let mut exps = other.exps;
        for (e, s) in exps.iter_mut().zip(self.exps.iter()) {
            *e -= s;
        }
        Some(Self { exps, arity: self.arity })
    }

    /// Exponentwise truncated subtraction `max(self - other, 0)`.
    pub fn saturating_sub(&self, other: &Self) -> Self {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps.iter()) {
            *e = e.saturating_sub(*o);
        }
        Self { exps, arity: self.arity }
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps.iter()) {
            *e = (*e).max(*o);
        }
        Self { exps, arity: self.arity }
    }

    pub fn gcd_is_one(&self, other: &Self) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// The same exponents shifted right by `shift` slots into a ring of arity
    /// `arity + shift`; the new leading slots are zero.
    pub fn shifted(&self, shift: usize) -> Self {
        let n = self.arity() + shift;
        assert!(n <= MAX_VARS);
        let mut exps = [0; MAX_VARS];
        exps[shift..n].copy_from_slice(self.exponents());
        Self { exps, arity: n as u8 }
    }

    /// Drops the first `shift` slots, which must be zero.
    pub fn unshifted(&self, shift: usize) -> Option<Self> {
        if self.exps[..shift].iter().any(|&e| e != 0) {
            return None;
        }
        let n = self.arity() - shift;
        let mut exps = [0; MAX_VARS];
        exps[..n].copy_from_slice(&self.exps[shift..shift + n]);
        Some(Self { exps, arity: n as u8 })
    }
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.exponents())
    }
}

/// Monomial orders. All are global (1 is the smallest monomial).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    #[default]
    GrevLex,
    Lex,
    /// Product order: grevlex on the first `block` variables, ties broken by
    /// grevlex on the remaining ones. Eliminates the leading block.
    Elimination { block: usize },
}

#[inline]
fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::GrevLex => grevlex(a.exponents(), b.exponents()),
            MonomialOrder::Lex => a.exponents().cmp(b.exponents()),
            MonomialOrder::Elimination { block } => {
                let (a0, a1) = a.exponents().split_at(block);
                let (b0, b1) = b.exponents().split_at(block);
                grevlex(a0, b0).then_with(|| grevlex(a1, b1))
            }
        }
    }

    /// Checked comparison for externally supplied monomials.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.arity() != b.arity() {
            return Err(Error::ArityMismatch { expected: a.arity(), found: b.arity() });
        }
        if let MonomialOrder::Elimination { block } = self {
            if *block > a.arity() {
                return Err(Error::InvalidRing(format!(
                    "elimination block {block} exceeds arity {}",
                    a.arity()
                )));
            }
        }
        Ok(self.cmp(a, b))
    }

    /// `true` when the order is refined by total degree, so that normal forms
    /// never raise degree.
    pub fn is_degree_compatible(&self) -> bool {
        matches!(self, MonomialOrder::GrevLex)
    }
}
