//! Ideals with a lazily computed, canonical reduced Groebner basis.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{buchberger, GBasis, GbConfig};
use crate::monomial::Monomial;
use crate::parse::parse_generators;
use crate::poly::Polynomial;
use crate::ring::{same_ring, PolyRing};

pub struct Ideal<F: Field> {
    ring: Arc<PolyRing<F>>,
    generators: Vec<Polynomial<F>>,
    gb: OnceLock<Arc<GBasis<F>>>,
    config: GbConfig,
}

impl<F: Field> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(g) = self.gb.get() {
            let _ = gb.set(g.clone());
        }
        Self { ring: self.ring.clone(), generators: self.generators.clone(), gb, config: self.config }
    }
}

impl<F: Field> Ideal<F> {
    /// The ideal generated by `generators` (zeros are dropped).
    pub fn new(ring: &Arc<PolyRing<F>>, generators: Vec<Polynomial<F>>) -> Result<Self> {
        for g in &generators {
            if !same_ring(g.ring(), ring) {
                return Err(Error::RingMismatch);
            }
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Self { ring: ring.clone(), generators, gb: OnceLock::new(), config: GbConfig::default() })
    }

    pub fn parse(ring: &Arc<PolyRing<F>>, text: &str) -> Result<Self> {
        Self::new(ring, parse_generators(text, ring)?)
    }

    pub fn from_monomials(ring: &Arc<PolyRing<F>>, monomials: impl IntoIterator<Item = Monomial>) -> Self {
        let gens = monomials.into_iter().map(|m| Polynomial::monomial(ring, m)).collect();
        Self::new(ring, gens).expect("same ring")
    }

    /// Builds an ideal from its reduced basis, with generators set to the
    /// basis elements.
    pub(crate) fn from_basis(gb: GBasis<F>) -> Self {
        let ring = gb.ring().clone();
        let generators = gb.elements().to_vec();
        let cell = OnceLock::new();
        let _ = cell.set(Arc::new(gb));
        Self { ring, generators, gb: cell, config: GbConfig::default() }
    }

    /// Generators replaced by the reduced Groebner basis.
    pub fn canonical(ring: &Arc<PolyRing<F>>, generators: Vec<Polynomial<F>>) -> Result<Self> {
        let ideal = Self::new(ring, generators)?;
        let gb = ideal.groebner()?;
        Ok(Self::from_basis((*gb).clone()))
    }

    pub fn zero(ring: &Arc<PolyRing<F>>) -> Self {
        Self::new(ring, Vec::new()).expect("no generators")
    }

    pub fn unit(ring: &Arc<PolyRing<F>>) -> Self {
        Self::new(ring, vec![Polynomial::one(ring)]).expect("same ring")
    }

    /// The maximal ideal at the origin raised to `n` (all monomials of degree `n`).
    pub fn maximal_power(ring: &Arc<PolyRing<F>>, n: u32) -> Self {
        let mut monos = Vec::new();
        let arity = ring.arity();
        let mut exps = vec![0u32; arity];
        fn rec(v: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if v + 1 == exps.len() {
                exps[v] = left;
                out.push(Monomial::new(exps));
                return;
            }
            for e in (0..=left).rev() {
                exps[v] = e;
                rec(v + 1, left - e, exps, out);
            }
        }
        rec(0, n, &mut exps, &mut monos);
        Self::from_monomials(ring, monos)
    }

    pub fn with_config(mut self, config: GbConfig) -> Self {
        self.config = config;
        self
    }

    pub fn config(&self) -> GbConfig {
        self.config
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    /// The cached reduced Groebner basis, computed on first use. Concurrent
    /// callers may both compute it; the stored value is canonical either way.
    pub fn groebner(&self) -> Result<Arc<GBasis<F>>> {
        if let Some(g) = self.gb.get() {
            return Ok(g.clone());
        }
        let computed = Arc::new(buchberger(&self.ring, &self.generators, self.config)?);
        let _ = self.gb.set(computed);
        Ok(self.gb.get().expect("just set").clone())
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner()?.is_unit())
    }

    /// `true` when every generator is a single term.
    pub fn is_monomial_generated(&self) -> bool {
        self.generators.iter().all(|g| g.is_monomial())
    }

    /// `true` when the ideal is monomial (checked on the reduced basis).
    pub fn is_monomial(&self) -> Result<bool> {
        if self.is_monomial_generated() {
            return Ok(true);
        }
        Ok(self.groebner()?.is_monomial())
    }

    /// Minimal monomial generators, or `None` for non-monomial ideals.
    pub fn monomial_generators(&self) -> Result<Option<Vec<Monomial>>> {
        if !self.is_monomial()? {
            return Ok(None);
        }
        Ok(Some(self.groebner()?.leading_monomials()))
    }

    fn check_ring(&self, ring: &Arc<PolyRing<F>>) -> Result<()> {
        if same_ring(&self.ring, ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        self.groebner()?.normal_form(f)
    }

    /// Ideal membership via the normal form.
    pub fn contains_element(&self, f: &Polynomial<F>) -> Result<bool> {
        self.check_ring(f.ring())?;
        if f.is_zero() {
            return Ok(true);
        }
        Ok(self.groebner()?.reduces_to_zero_all(std::iter::once(f)))
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Ideal<F>) -> Result<bool> {
        self.check_ring(&other.ring)?;
        let gb = self.groebner()?;
        if gb.is_unit() {
            return Ok(true);
        }
        let gens = match other.gb.get() {
            Some(g) if g.len() < other.generators.len() => g.elements().to_vec(),
            _ => other.generators.clone(),
        };
        Ok(gb.reduces_to_zero_all(gens.iter()))
    }

    /// Equality of ideals: identical reduced Groebner bases.
    pub fn equals(&self, other: &Ideal<F>) -> Result<bool> {
        self.check_ring(&other.ring)?;
        Ok(*self.groebner()? == *other.groebner()?)
    }
}

impl<F: Field> fmt::Display for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", gens.join(", "))
    }
}

impl<F: Field> fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

/// `f ∈ I`.
pub fn ideal_member<F: Field>(f: &Polynomial<F>, ideal: &Ideal<F>) -> Result<bool> {
    ideal.contains_element(f)
}

/// `I == J` as ideals.
pub fn ideal_equal<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> Result<bool> {
    a.equals(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::parse::parse_polynomial;

    fn ring() -> Arc<PolyRing<PrimeField>> {
        PolyRing::from_spec("x,y", PrimeField::default()).unwrap()
    }

    #[test]
    fn equality_ignores_generating_set() {
        let r = ring();
        assert!(Ideal::parse(&r, "x,y").unwrap().equals(&Ideal::parse(&r, "y, x+y").unwrap()).unwrap());
        assert!(!Ideal::parse(&r, "x,y").unwrap().equals(&Ideal::parse(&r, "x, y^2").unwrap()).unwrap());
    }

    #[test]
    fn membership() {
        let r = ring();
        let i = Ideal::parse(&r, "x^7, x^6*y, x^2*y^5, y^7").unwrap();
        assert!(ideal_member(&Polynomial::zero(&r), &i).unwrap());
        assert!(ideal_member(&parse_polynomial("x^3*y^6 + 5*x^8", &r).unwrap(), &i).unwrap());
        assert!(!ideal_member(&parse_polynomial("x*y^6", &r).unwrap(), &i).unwrap());
    }

    #[test]
    fn maximal_ideal_powers() {
        let r = ring();
        let m2 = Ideal::maximal_power(&r, 2);
        assert_eq!(m2.to_string(), "(x^2, x*y, y^2)");
        assert!(Ideal::maximal_power(&r, 0).is_unit().unwrap());
    }

    #[test]
    fn generators_reduce_to_zero() {
        let r = ring();
        let i = Ideal::parse(&r, "x^2 - y^3, x*y + y^2, x^3").unwrap();
        let gb = i.groebner().unwrap();
        for g in i.generators() {
            assert!(gb.normal_form(g).unwrap().is_zero());
        }
        assert!(gb.verify());
    }
}
