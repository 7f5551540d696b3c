//! Buchberger's algorithm with the Gebauer-Moeller pair criteria, normal forms
//! and reduced Groebner bases.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{add_scaled, Polynomial, Term};
use crate::ring::{same_ring, PolyRing};

/// Default cap on S-pair reductions per basis computation.
pub const DEFAULT_MAX_REDUCTIONS: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GbConfig {
    pub max_reductions: usize,
}

impl Default for GbConfig {
    fn default() -> Self {
        Self { max_reductions: DEFAULT_MAX_REDUCTIONS }
    }
}

/// A reduced Groebner basis: monic, auto-reduced, sorted by descending
/// leading monomial. Unique for a fixed ideal and order.
#[derive(Clone, PartialEq, Eq)]
pub struct GBasis<F: Field> {
    ring: Arc<PolyRing<F>>,
    elements: Vec<Polynomial<F>>,
}

impl<F: Field> std::fmt::Debug for GBasis<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.elements.iter().map(|p| p.to_string())).finish()
    }
}

/// Bit signature used to rule out divisibility quickly:
/// `a | b` implies `sev(a) & !sev(b) == 0`.
#[inline]
fn short_exponent_vector(m: &Monomial) -> u64 {
    let n = m.arity().max(1);
    let bits = 64 / n;
    let mut sev = 0u64;
    for (v, &e) in m.exponents().iter().enumerate() {
        for k in 0..bits {
            let threshold = 1 + k + k * k / 4;
            if (e as usize) < threshold {
                break;
            }
            sev |= 1 << (v * bits + k);
        }
    }
    sev
}

struct Reducer<F: Field> {
    terms: Vec<Term<F>>,
    lm: Monomial,
    sev: u64,
}

impl<F: Field> Reducer<F> {
    fn new(terms: Vec<Term<F>>) -> Self {
        let lm = terms[0].0;
        Self { sev: short_exponent_vector(&lm), lm, terms }
    }
}

fn find_reducer<'a, F: Field>(m: &Monomial, basis: &'a [&Reducer<F>]) -> Option<&'a Reducer<F>> {
    let sev = short_exponent_vector(m);
    basis.iter().copied().find(|g| g.sev & !sev == 0 && g.lm.divides(m))
}

/// Full reduction of `f` by monic reducers.
fn reduce_full<F: Field>(field: &F, order: MonomialOrder, f: Vec<Term<F>>, basis: &[&Reducer<F>]) -> Vec<Term<F>> {
    let mut done: Vec<Term<F>> = Vec::new();
    let mut rest = f;
    let mut cursor = 0;
    while cursor < rest.len() {
        let m = rest[cursor].0;
        match find_reducer(&m, basis) {
            None => cursor += 1,
            Some(g) => {
                let q = g.lm.quotient_of(&m).expect("divisor found");
                let c = field.neg(&rest[cursor].1);
                done.extend(rest.drain(..cursor));
                rest = add_scaled(field, order, &rest, &c, &q, &g.terms);
                cursor = 0;
            }
        }
    }
    done.extend(rest);
    done
}

fn make_monic<F: Field>(field: &F, mut terms: Vec<Term<F>>) -> Vec<Term<F>> {
    if let Some((_, c)) = terms.first() {
        if !field.is_one(c) {
            let inv = field.inv(c);
            for (_, a) in terms.iter_mut() {
                *a = field.mul(a, &inv);
            }
        }
    }
    terms
}

#[derive(Clone, Copy)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

fn pair_cmp(order: MonomialOrder, a: &Pair, b: &Pair) -> Ordering {
    a.lcm
        .degree()
        .cmp(&b.lcm.degree())
        .then_with(|| order.cmp(&a.lcm, &b.lcm))
        .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)))
}

struct Engine<'r, F: Field> {
    ring: &'r Arc<PolyRing<F>>,
    polys: Vec<Reducer<F>>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl<'r, F: Field> Engine<'r, F> {
    fn active_reducers(&self) -> Vec<&Reducer<F>> {
        self.active.iter().map(|&i| &self.polys[i]).collect()
    }

    fn reduce(&self, f: Vec<Term<F>>) -> Vec<Term<F>> {
        let basis = self.active_reducers();
        reduce_full(self.ring.field(), self.ring.order(), f, &basis)
    }

    /// Gebauer-Moeller update with a new monic element.
    fn insert(&mut self, h: Vec<Term<F>>) {
        let h_idx = self.polys.len();
        let h = Reducer::new(h);
        let lm_h = h.lm;
        self.polys.push(h);

        let mut candidates: Vec<Pair> = self
            .active
            .iter()
            .map(|&g| Pair { i: g, j: h_idx, lcm: self.polys[g].lm.lcm(&lm_h) })
            .collect();
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(p) = candidates.pop() {
            let coprime = self.polys[p.i].lm.gcd_is_one(&lm_h);
            if coprime
                || (!candidates.iter().any(|q| q.lcm.divides(&p.lcm))
                    && !kept.iter().any(|q| q.lcm.divides(&p.lcm)))
            {
                kept.push(p);
            }
        }
        kept.retain(|p| !self.polys[p.i].lm.gcd_is_one(&lm_h));

        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(lm_h.divides(&p.lcm)
                && polys[p.i].lm.lcm(&lm_h) != p.lcm
                && polys[p.j].lm.lcm(&lm_h) != p.lcm)
        });
        self.pairs.extend(kept);

        self.active.retain(|&g| !lm_h.divides(&polys[g].lm));
        self.active.push(h_idx);
    }

    fn spoly(&self, p: &Pair) -> Vec<Term<F>> {
        let field = self.ring.field();
        let order = self.ring.order();
        let (f, g) = (&self.polys[p.i], &self.polys[p.j]);
        let uf = f.lm.quotient_of(&p.lcm).expect("lcm divisible");
        let ug = g.lm.quotient_of(&p.lcm).expect("lcm divisible");
        // both monic: uf*f - ug*g, leading terms cancel
        let a: Vec<Term<F>> = f.terms[1..].iter().map(|(m, c)| (m.mul(&uf), c.clone())).collect();
        add_scaled(field, order, &a, &field.neg(&field.one()), &ug, &g.terms[1..])
    }
}

/// Minimal generators of a monomial ideal, sorted descending.
fn minimal_monomials(order: MonomialOrder, mut monos: Vec<Monomial>) -> Vec<Monomial> {
    monos.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| order.cmp(a, b)));
    monos.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in monos {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out.sort_by(|a, b| order.cmp(b, a));
    out
}

/// Computes the reduced Groebner basis of the ideal generated by `gens`.
pub fn buchberger<F: Field>(ring: &Arc<PolyRing<F>>, gens: &[Polynomial<F>], config: GbConfig) -> Result<GBasis<F>> {
    let field = ring.field();
    let order = ring.order();
    for g in gens {
        if !same_ring(g.ring(), ring) {
            return Err(Error::RingMismatch);
        }
    }
    let nonzero: Vec<&Polynomial<F>> = gens.iter().filter(|g| !g.is_zero()).collect();
    if nonzero.is_empty() {
        return Ok(GBasis { ring: ring.clone(), elements: Vec::new() });
    }
    if nonzero.iter().all(|g| g.is_monomial()) {
        let monos = minimal_monomials(order, nonzero.iter().map(|g| g.leading_monomial().unwrap()).collect());
        let elements = monos.into_iter().map(|m| Polynomial::monomial(ring, m)).collect();
        return Ok(GBasis { ring: ring.clone(), elements });
    }

    let mut engine = Engine { ring, polys: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    let mut inputs: Vec<&Polynomial<F>> = nonzero;
    inputs.sort_by(|a, b| {
        let (la, lb) = (a.leading_monomial().unwrap(), b.leading_monomial().unwrap());
        la.degree().cmp(&lb.degree()).then_with(|| order.cmp(&la, &lb)).then_with(|| a.len().cmp(&b.len()))
    });
    for g in inputs {
        let h = engine.reduce(g.terms().to_vec());
        if !h.is_empty() {
            if h[0].0.is_one() {
                return Ok(GBasis { ring: ring.clone(), elements: vec![Polynomial::one(ring)] });
            }
            engine.insert(make_monic(field, h));
        }
    }

    let mut reductions = 0usize;
    while !engine.pairs.is_empty() {
        // pop the smallest pair
        let best = (0..engine.pairs.len())
            .min_by(|&a, &b| pair_cmp(order, &engine.pairs[a], &engine.pairs[b]))
            .expect("nonempty");
        let pair = engine.pairs.swap_remove(best);
        reductions += 1;
        if reductions > config.max_reductions {
            return Err(Error::GuardExceeded { reductions, basis_size: engine.active.len() });
        }
        let s = engine.spoly(&pair);
        let h = engine.reduce(s);
        if !h.is_empty() {
            if h[0].0.is_one() {
                return Ok(GBasis { ring: ring.clone(), elements: vec![Polynomial::one(ring)] });
            }
            engine.insert(make_monic(field, h));
        }
    }

    let basis: Vec<Vec<Term<F>>> = engine.active.iter().map(|&i| engine.polys[i].terms.clone()).collect();
    Ok(GBasis { ring: ring.clone(), elements: interreduce(ring, basis) })
}

/// Turns a Groebner basis into the reduced one.
fn interreduce<F: Field>(ring: &Arc<PolyRing<F>>, basis: Vec<Vec<Term<F>>>) -> Vec<Polynomial<F>> {
    let field = ring.field();
    let order = ring.order();
    let mut minimal: Vec<Vec<Term<F>>> = Vec::new();
    let mut sorted = basis;
    sorted.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    for p in sorted {
        if !minimal.iter().any(|g| g[0].0.divides(&p[0].0)) {
            minimal.push(p);
        }
    }
    let reducers: Vec<Reducer<F>> = minimal.iter().cloned().map(Reducer::new).collect();
    let mut out = Vec::with_capacity(minimal.len());
    for (k, p) in minimal.iter().enumerate() {
        let others: Vec<&Reducer<F>> = reducers.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, r)| r).collect();
        let mut terms = vec![p[0].clone()];
        terms.extend(reduce_full(field, order, p[1..].to_vec(), &others));
        out.push(Polynomial::from_canonical(ring, make_monic(field, terms)));
    }
    out.sort_by(|a, b| order.cmp(&b.leading_monomial().unwrap(), &a.leading_monomial().unwrap()));
    out
}

impl<F: Field> GBasis<F> {
    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial<F>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `true` for the basis `{1}` of the unit ideal.
    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|p| p.leading_monomial().expect("nonzero")).collect()
    }

    /// `true` iff every element is a monomial (the ideal is monomial).
    pub fn is_monomial(&self) -> bool {
        self.elements.iter().all(|p| p.is_monomial())
    }

    /// Remainder of `f` on division by the basis: no term of the result is
    /// divisible by a leading monomial.
    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(self.normal_form_unchecked(f))
    }

    pub(crate) fn normal_form_unchecked(&self, f: &Polynomial<F>) -> Polynomial<F> {
        let reducers: Vec<Reducer<F>> = self.elements.iter().map(|p| Reducer::new(p.terms().to_vec())).collect();
        let refs: Vec<&Reducer<F>> = reducers.iter().collect();
        let nf = reduce_full(self.ring.field(), self.ring.order(), f.terms().to_vec(), &refs);
        Polynomial::from_canonical(&self.ring, nf)
    }

    /// Normal forms of many polynomials, sharing reducer setup.
    pub fn reduces_to_zero_all<'a>(&self, fs: impl IntoIterator<Item = &'a Polynomial<F>>) -> bool {
        let reducers: Vec<Reducer<F>> = self.elements.iter().map(|p| Reducer::new(p.terms().to_vec())).collect();
        let refs: Vec<&Reducer<F>> = reducers.iter().collect();
        let field = self.ring.field();
        let order = self.ring.order();
        fs.into_iter().all(|f| {
            if self.is_monomial() {
                f.terms().iter().all(|(m, _)| find_reducer(m, &refs).is_some())
            } else {
                reduce_full(field, order, f.terms().to_vec(), &refs).is_empty()
            }
        })
    }

    /// Certifies the basis property by checking that every S-polynomial
    /// reduces to zero and the basis is auto-reduced. Quadratic; meant for
    /// tests and audits.
    pub fn verify(&self) -> bool {
        let field = self.ring.field();
        let order = self.ring.order();
        let reducers: Vec<Reducer<F>> = self.elements.iter().map(|p| Reducer::new(p.terms().to_vec())).collect();
        let refs: Vec<&Reducer<F>> = reducers.iter().collect();
        for (k, p) in self.elements.iter().enumerate() {
            if !field.is_one(p.leading_coefficient().expect("nonzero")) {
                return false;
            }
            for (i, q) in self.elements.iter().enumerate() {
                if i != k && p.terms().iter().any(|(m, _)| q.leading_monomial().unwrap().divides(m)) {
                    return false;
                }
            }
        }
        for i in 0..reducers.len() {
            for j in (i + 1)..reducers.len() {
                let lcm = reducers[i].lm.lcm(&reducers[j].lm);
                let ui = reducers[i].lm.quotient_of(&lcm).unwrap();
                let uj = reducers[j].lm.quotient_of(&lcm).unwrap();
                let a: Vec<Term<F>> = reducers[i].terms.iter().map(|(m, c)| (m.mul(&ui), c.clone())).collect();
                let s = add_scaled(field, order, &a, &field.neg(&field.one()), &uj, &reducers[j].terms);
                if !reduce_full(field, order, s, &refs).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::parse::{parse_generators, parse_polynomial};

    fn gb(text: &str) -> GBasis<PrimeField> {
        let r = PolyRing::from_spec("x,y", PrimeField::default()).unwrap();
        buchberger(&r, &parse_generators(text, &r).unwrap(), GbConfig::default()).unwrap()
    }

    fn show<F: Field>(g: &GBasis<F>) -> Vec<String> {
        g.elements().iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn variables_are_reduced() {
        assert_eq!(show(&gb("x, y")), vec!["x", "y"]);
        assert_eq!(show(&gb("y, x + y")), vec!["x", "y"]);
    }

    #[test]
    fn nonmonomial_basis_is_certified() {
        let g = gb("x^2 - y, x^3");
        assert!(g.verify());
        // x^3 = x*(x^2 - y) + x*y, so x*y is in the ideal; then y^2 = ... too
        assert_eq!(show(&g), vec!["x^2 - y", "x*y", "y^2"]);
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        assert_eq!(show(&gb("x^4, x^3*y, x*y^3, y^4")), vec!["x^4", "x^3*y", "x*y^3", "y^4"]);
        assert_eq!(show(&gb("x^4, x^5*y, 3*x^2")), vec!["x^2"]);
    }

    #[test]
    fn normal_forms() {
        let r = PolyRing::from_spec("x,y", PrimeField::default()).unwrap();
        let g = buchberger(&r, &parse_generators("x", &r).unwrap(), GbConfig::default()).unwrap();
        let f = parse_polynomial("x^2 + y", &r).unwrap();
        assert_eq!(g.normal_form(&f).unwrap().to_string(), "y");
        let i = gb("x^4, x^3*y, x*y^3, y^4");
        let f = parse_polynomial("x^2*y^2", i.ring()).unwrap();
        assert_eq!(i.normal_form(&f).unwrap(), f);
    }

    #[test]
    fn unit_ideal_and_zero() {
        assert!(gb("x + 1, x").is_unit());
        let r = PolyRing::from_spec("x,y", PrimeField::default()).unwrap();
        assert!(buchberger(&r, &[Polynomial::zero(&r)], GbConfig::default()).unwrap().is_empty());
    }

    #[test]
    fn guard_is_a_hard_error() {
        let r = PolyRing::from_spec("x,y,z", PrimeField::default()).unwrap();
        let gens = parse_generators("x^3 - y*z^2 + 1, y^3 - x^2*z, z^3 - x*y^2 - 2", &r).unwrap();
        let err = buchberger(&r, &gens, GbConfig { max_reductions: 2 }).unwrap_err();
        assert!(matches!(err, Error::GuardExceeded { reductions: 3, .. }), "{err:?}");
        assert!(buchberger(&r, &gens, GbConfig::default()).unwrap().verify());
    }

    #[test]
    fn rational_basis_idempotent() {
        let r = PolyRing::from_spec("x,y,z", Rationals).unwrap();
        let gens = parse_generators("x^2 + y*z - 2, x*y - z^2, 1/2*y^2 - x", &r).unwrap();
        let g = buchberger(&r, &gens, GbConfig::default()).unwrap();
        assert!(g.verify());
        let again = buchberger(&r, g.elements(), GbConfig::default()).unwrap();
        assert_eq!(g, again);
    }
}
