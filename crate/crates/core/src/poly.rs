//! Sparse polynomials in canonical form.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder};
use crate::ring::{same_ring, PolyRing};

pub type Term<F> = (Monomial, <F as Field>::Elem);

/// A polynomial with terms stored in strictly descending monomial order and
/// no zero coefficients, so equal polynomials have identical representations.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Arc<PolyRing<F>>,
    terms: Vec<Term<F>>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<F: Field> Eq for Polynomial<F> {}

/// `f + c * m * g` for term lists sorted in descending `order`.
pub(crate) fn add_scaled<F: Field>(
    field: &F,
    order: MonomialOrder,
    f: &[Term<F>],
    c: &F::Elem,
    m: &Monomial,
    g: &[Term<F>],
) -> Vec<Term<F>> {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    while i < f.len() && j < g.len() {
        let gm = g[j].0.mul(m);
        match order.cmp(&f[i].0, &gm) {
            Ordering::Greater => {
                out.push(f[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((gm, field.mul(c, &g[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let s = field.add(&f[i].1, &field.mul(c, &g[j].1));
                if !field.is_zero(&s) {
                    out.push((gm, s));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&f[i..]);
    for (gm, gc) in &g[j..] {
        out.push((gm.mul(m), field.mul(c, gc)));
    }
    out
}

/// Sorts, merges equal monomials and drops zeros.
pub(crate) fn canonicalize<F: Field>(field: &F, order: MonomialOrder, mut terms: Vec<Term<F>>) -> Vec<Term<F>> {
    terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
    let mut out: Vec<Term<F>> = Vec::with_capacity(terms.len());
    for (m, c) in terms {
        match out.last_mut() {
            Some((lm, lc)) if *lm == m => *lc = field.add(lc, &c),
            _ => out.push((m, c)),
        }
    }
    out.retain(|(_, c)| !field.is_zero(c));
    out
}

/// Product of two canonical term lists.
pub(crate) fn mul_terms<F: Field>(field: &F, order: MonomialOrder, a: &[Term<F>], b: &[Term<F>]) -> Vec<Term<F>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if short.len() == 1 {
        let (m, c) = &short[0];
        return long.iter().map(|(lm, lc)| (lm.mul(m), field.mul(c, lc))).collect();
    }
    let mut acc: Vec<Term<F>> = Vec::new();
    for (m, c) in short {
        acc = add_scaled(field, order, &acc, c, m, long);
    }
    acc
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Arc<PolyRing<F>>) -> Self {
        Self { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Arc<PolyRing<F>>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Arc<PolyRing<F>>, c: F::Elem) -> Self {
        Self::term(ring, Monomial::one(ring.arity()), c)
    }

    pub fn term(ring: &Arc<PolyRing<F>>, m: Monomial, c: F::Elem) -> Self {
        assert_eq!(m.arity(), ring.arity(), "monomial arity does not match ring");
        let terms = if ring.field().is_zero(&c) { Vec::new() } else { vec![(m, c)] };
        Self { ring: ring.clone(), terms }
    }

    pub fn monomial(ring: &Arc<PolyRing<F>>, m: Monomial) -> Self {
        Self::term(ring, m, ring.field().one())
    }

    pub fn var(ring: &Arc<PolyRing<F>>, index: usize) -> Self {
        Self::monomial(ring, Monomial::var_power(ring.arity(), index, 1))
    }

    /// Builds a polynomial from arbitrary terms (any order, repeats, zeros).
    pub fn from_terms(ring: &Arc<PolyRing<F>>, terms: Vec<Term<F>>) -> Self {
        for (m, _) in &terms {
            assert_eq!(m.arity(), ring.arity(), "monomial arity does not match ring");
        }
        let terms = canonicalize(ring.field(), ring.order(), terms);
        Self { ring: ring.clone(), terms }
    }

    /// Terms already in canonical order.
    pub(crate) fn from_canonical(ring: &Arc<PolyRing<F>>, terms: Vec<Term<F>>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.order().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Self { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term<F>] {
        &self.terms
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

    /// A single term (any nonzero coefficient).
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_term(&self) -> Option<&Term<F>> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|(m, _)| *m)
    }

    pub fn leading_coefficient(&self) -> Option<&F::Elem> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Smallest total degree of a term (the `m`-adic order); `None` for zero.
    pub fn order_at_origin(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    /// `true` when every term has the same total degree.
    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|(n, _)| n.degree() == m.degree()),
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let f = self.ring.field();
        let one = f.one();
        let unit = Monomial::one(self.ring.arity());
        Ok(Self::from_canonical(&self.ring, add_scaled(f, self.ring.order(), &self.terms, &one, &unit, &other.terms)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let f = self.ring.field();
        let minus_one = f.neg(&f.one());
        let unit = Monomial::one(self.ring.arity());
        Ok(Self::from_canonical(
            &self.ring,
            add_scaled(f, self.ring.order(), &self.terms, &minus_one, &unit, &other.terms),
        ))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let guard = self.ring.exponent_guard();
        if let (Some(a), Some(b)) = (self.max_exponents(), other.max_exponents()) {
            a.checked_mul(&b, guard)?;
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let terms = mul_terms(self.ring.field(), self.ring.order(), &self.terms, &other.terms);
        Self::from_canonical(&self.ring, terms)
    }

    fn max_exponents(&self) -> Option<Monomial> {
        self.terms.iter().map(|(m, _)| *m).reduce(|a, b| a.lcm(&b))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = self.ring.field();
        if f.is_zero(c) {
            return Self::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, a)| (*m, f.mul(a, c))).collect();
        Self::from_canonical(&self.ring, terms)
    }

    pub fn neg(&self) -> Self {
        let f = self.ring.field();
        self.scale(&f.neg(&f.one()))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        let terms = self.terms.iter().map(|(n, c)| (n.mul(m), c.clone())).collect();
        Self::from_canonical(&self.ring, terms)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Scales so the leading coefficient is one; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(c) if self.ring.field().is_one(c) => self.clone(),
            Some(c) => self.scale(&self.ring.field().inv(c)),
        }
    }

    /// Exact quotient `self / divisor`; errors when the division leaves a
    /// remainder.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        self.check_ring(divisor)?;
        let f = self.ring.field();
        let order = self.ring.order();
        let (dm, dc) = divisor
            .leading_term()
            .ok_or_else(|| Error::DivisionFailure("division by zero polynomial".into()))?;
        let dc_inv = f.inv(dc);
        let mut rest = self.terms.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rest.first() {
            let q = dm
                .quotient_of(m)
                .ok_or_else(|| Error::DivisionFailure(format!("{divisor} does not divide {self}")))?;
            let qc = f.mul(c, &dc_inv);
            rest = add_scaled(f, order, &rest, &f.neg(&qc), &q, &divisor.terms);
            quotient.push((q, qc));
        }
        Ok(Self::from_canonical(&self.ring, quotient))
    }

    /// Re-embeds into a ring whose variables are this ring's variables
    /// preceded by `shift` new ones.
    pub fn embed_shifted(&self, target: &Arc<PolyRing<F>>, shift: usize) -> Self {
        assert_eq!(target.arity(), self.ring.arity() + shift);
        let terms = self.terms.iter().map(|(m, c)| (m.shifted(shift), c.clone())).collect();
        Self::from_terms(target, terms)
    }

    /// Inverse of [`Polynomial::embed_shifted`]; `None` if some term involves
    /// one of the leading `shift` variables.
    pub fn restrict_shifted(&self, target: &Arc<PolyRing<F>>, shift: usize) -> Option<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.unshifted(shift)?, c.clone()));
        }
        Some(Self::from_terms(target, terms))
    }

    /// The same polynomial viewed in `target`, which must have the same
    /// variables and field (typically a different order).
    pub fn reinterpret(&self, target: &Arc<PolyRing<F>>) -> Self {
        assert_eq!(target.vars(), self.ring.vars());
        Self::from_terms(target, self.terms.clone())
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.ring.field();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let (negative, magnitude) = field.signed_repr(c);
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if m.is_one() || magnitude != "1" {
                factors.push(magnitude);
            }
            for (v, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.vars()[v].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.vars()[v], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}
