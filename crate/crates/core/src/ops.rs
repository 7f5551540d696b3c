//! Ideal arithmetic: sums, products, cached powers, intersections, colon
//! ideals, colength and `m`-primary certificates.
//!
//! All ideals are treated as ideals of the polynomial ring. For ideals that
//! are `m`-primary (supported only at the origin) these computations agree
//! with the corresponding ones in the local ring at the origin;
//! [`local_contraction`] brings ideals that are only locally `m`-primary into
//! that form.

use std::collections::BTreeMap;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::Ideal;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::{same_ring, PolyRing};

fn check_rings<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> Result<()> {
    if same_ring(a.ring(), b.ring()) {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

fn minimalize(mut monos: Vec<Monomial>) -> Vec<Monomial> {
    monos.sort_by_key(|m| m.degree());
    monos.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in monos {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// Generators to use for products and colons: the reduced basis when it is
/// already known and not larger than the generator list.
fn working_generators<F: Field>(ideal: &Ideal<F>) -> Result<Vec<Polynomial<F>>> {
    let gb = ideal.groebner()?;
    Ok(gb.elements().to_vec())
}

pub fn ideal_sum<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> Result<Ideal<F>> {
    check_rings(a, b)?;
    let mut gens = working_generators(a)?;
    gens.extend(working_generators(b)?);
    Ideal::canonical(a.ring(), gens)
}

pub fn ideal_product<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> Result<Ideal<F>> {
    check_rings(a, b)?;
    if let (Some(ma), Some(mb)) = (a.monomial_generators()?, b.monomial_generators()?) {
        let guard = a.ring().exponent_guard();
        let mut prods = Vec::with_capacity(ma.len() * mb.len());
        for x in &ma {
            for y in &mb {
                prods.push(x.checked_mul(y, guard)?);
            }
        }
        return Ideal::canonical(a.ring(), monomials_to_polys(a.ring(), minimalize(prods)));
    }
    let ga = working_generators(a)?;
    let gb = working_generators(b)?;
    let mut prods = Vec::with_capacity(ga.len() * gb.len());
    for f in &ga {
        for g in &gb {
            prods.push(f.mul(g)?);
        }
    }
    Ideal::canonical(a.ring(), prods)
}

fn monomials_to_polys<F: Field>(ring: &Arc<PolyRing<F>>, monos: Vec<Monomial>) -> Vec<Polynomial<F>> {
    monos.into_iter().map(|m| Polynomial::monomial(ring, m)).collect()
}

/// Powers of a fixed ideal, computed on demand and shared. Each exponent is
/// filled at most once in the map; racing fills compute the same canonical
/// ideal and the first one stored wins.
pub struct PowerCache<F: Field> {
    base: Arc<Ideal<F>>,
    powers: RwLock<BTreeMap<u32, Arc<Ideal<F>>>>,
}

impl<F: Field> PowerCache<F> {
    pub fn new(base: Ideal<F>) -> Self {
        let base = Arc::new(base);
        let mut powers = BTreeMap::new();
        powers.insert(1, base.clone());
        Self { base, powers: RwLock::new(powers) }
    }

    pub fn base(&self) -> &Arc<Ideal<F>> {
        &self.base
    }

    /// `I^n`, with `I^0` the unit ideal.
    pub fn power(&self, n: u32) -> Result<Arc<Ideal<F>>> {
        if n == 0 {
            return Ok(Arc::new(Ideal::unit(self.base.ring())));
        }
        if let Some(p) = self.powers.read().expect("power cache poisoned").get(&n) {
            return Ok(p.clone());
        }
        // split n = a + b with a the largest cached exponent below n
        let a = {
            let map = self.powers.read().expect("power cache poisoned");
            map.range(..n).next_back().map(|(k, _)| *k).unwrap_or(1)
        };
        let a = if a * 2 >= n { a } else { n / 2 };
        let left = self.power(a)?;
        let right = self.power(n - a)?;
        let product = Arc::new(ideal_product(&left, &right)?);
        let mut map = self.powers.write().expect("power cache poisoned");
        Ok(map.entry(n).or_insert(product).clone())
    }

    pub fn cached_exponents(&self) -> Vec<u32> {
        self.powers.read().expect("power cache poisoned").keys().copied().collect()
    }
}

pub fn ideal_power<F: Field>(ideal: &Ideal<F>, n: u32, cache: Option<&PowerCache<F>>) -> Result<Ideal<F>> {
    match cache {
        Some(c) => {
            if !c.base().equals(ideal)? {
                return Err(Error::InvalidArgument("power cache belongs to a different ideal".into()));
            }
            Ok((*c.power(n)?).clone())
        }
        None => Ok((*PowerCache::new(ideal.clone()).power(n)?).clone()),
    }
}

/// `a ∩ b`. Monomial ideals use lcms; otherwise `t·a + (1-t)·b` is formed in
/// a ring with an extra variable `t` under an order eliminating `t`, and the
/// `t`-free part of its basis is returned.
pub fn ideal_intersect<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> Result<Ideal<F>> {
    check_rings(a, b)?;
    let ring = a.ring();
    if a.is_zero() || b.is_zero() {
        return Ok(Ideal::zero(ring));
    }
    if a.is_unit()? {
        return Ok(b.clone());
    }
    if b.is_unit()? {
        return Ok(a.clone());
    }
    if let (Some(ma), Some(mb)) = (a.monomial_generators()?, b.monomial_generators()?) {
        let lcms = ma.iter().flat_map(|x| mb.iter().map(move |y| x.lcm(y))).collect();
        return Ideal::canonical(ring, monomials_to_polys(ring, minimalize(lcms)));
    }
    let t_name = ring.fresh_variable_name();
    let ext = ring.with_leading_variable(&t_name)?;
    let t = Polynomial::var(&ext, 0);
    let one_minus_t = Polynomial::one(&ext).sub(&t)?;
    let mut gens = Vec::new();
    for f in working_generators(a)? {
        gens.push(f.embed_shifted(&ext, 1).mul(&t)?);
    }
    for g in working_generators(b)? {
        gens.push(g.embed_shifted(&ext, 1).mul(&one_minus_t)?);
    }
    let elim = Ideal::new(&ext, gens)?.with_config(a.config());
    let gb = elim.groebner()?;
    let kept: Vec<Polynomial<F>> = gb.elements().iter().filter_map(|p| p.restrict_shifted(ring, 1)).collect();
    Ideal::canonical(ring, kept)
}

/// `a : (g)`, computed as `(a ∩ (g)) / g`.
pub fn colon_by_element<F: Field>(a: &Ideal<F>, g: &Polynomial<F>) -> Result<Ideal<F>> {
    let ring = a.ring();
    if !same_ring(ring, g.ring()) {
        return Err(Error::RingMismatch);
    }
    if g.is_zero() {
        return Err(Error::InvalidArgument("colon by the zero ideal".into()));
    }
    if a.contains_element(g)? {
        return Ok(Ideal::unit(ring));
    }
    if g.is_monomial() {
        if let Some(ma) = a.monomial_generators()? {
            let v = g.leading_monomial().expect("nonzero");
            let quotients = ma.iter().map(|u| u.saturating_sub(&v)).collect();
            return Ideal::canonical(ring, monomials_to_polys(ring, minimalize(quotients)));
        }
    }
    let principal = Ideal::new(ring, vec![g.clone()])?;
    let meet = ideal_intersect(a, &principal)?;
    let mut quotients = Vec::with_capacity(meet.generators().len());
    for h in meet.generators() {
        quotients.push(h.exact_div(g).map_err(|e| {
            Error::DivisionFailure(format!("intersection element {h} not divisible by {g}: {e}"))
        })?);
    }
    Ideal::canonical(ring, quotients)
}

/// Decides `a : (g) = b`. For `m`-primary `a` this avoids computing the
/// colon: `b ⊆ a : (g)` is checked generator-wise and the lengths are compared
/// through `ℓ(R/(a:g)) = ℓ(R/a) - ℓ(R/(a + (g)))`.
pub fn colon_element_equals<F: Field>(a: &Ideal<F>, g: &Polynomial<F>, b: &Ideal<F>) -> Result<bool> {
    check_rings(a, b)?;
    if !same_ring(a.ring(), g.ring()) {
        return Err(Error::RingMismatch);
    }
    let Some(cert) = is_m_primary(a)?.certificate().cloned() else {
        return colon_by_element(a, g)?.equals(b);
    };
    if a.ring().arity() <= 4 {
        if let (Some(ma), Some(mb)) = (a.monomial_generators()?, b.monomial_generators()?) {
            return monomial_colon_element_equals(a.ring(), &ma, g, &mb);
        }
    }
    for h in b.generators() {
        if !a.contains_element(&h.mul(g)?)? {
            return Ok(false);
        }
    }
    let principal = Ideal::new(a.ring(), vec![g.clone()])?;
    let sum = ideal_sum(a, &principal)?;
    match colength(b) {
        Ok(lb) => Ok(lb == cert.colength - colength(&sum)?),
        Err(Error::NotMPrimary(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// `(a : g) = b` for monomial `a` and `b`: `g·b ⊆ a` and multiplication by
/// `g` is injective from `R/b` to `R/a`, decided by sparse elimination over
/// the standard monomials.
fn monomial_colon_element_equals<F: Field>(
    ring: &Arc<PolyRing<F>>,
    a: &[Monomial],
    g: &Polynomial<F>,
    b: &[Monomial],
) -> Result<bool> {
    let field = ring.field();
    let arity = ring.arity();
    let in_a = |m: &Monomial| a.iter().any(|x| x.divides(m));
    for h in b {
        if g.terms().iter().any(|(t, _)| !in_a(&t.mul(h))) {
            return Ok(false);
        }
    }
    let Some(bounds) = pure_power_exponents(arity, b).into_iter().collect::<Option<Vec<u32>>>() else {
        return Ok(false);
    };
    if b.iter().any(|m| m.is_one()) {
        return Ok(true);
    }
    let key = |m: &Monomial| -> u64 {
        m.exponents().iter().fold(m.degree(), |acc, &e| (acc << 12) | e as u64)
    };
    let mut pivots: std::collections::HashMap<u64, Vec<(u64, F::Elem)>> = std::collections::HashMap::new();
    let mut exps = vec![0u32; arity];
    loop {
        let u = Monomial::new(&exps);
        if !b.iter().any(|x| x.divides(&u)) {
            let mut column: BTreeMap<u64, F::Elem> = g
                .terms()
                .iter()
                .map(|(t, c)| (t.mul(&u), c))
                .filter(|(m, _)| !in_a(m))
                .map(|(m, c)| (key(&m), c.clone()))
                .collect();
            loop {
                let Some((&lead, c)) = column.iter().next_back() else {
                    return Ok(false);
                };
                let Some(pivot) = pivots.get(&lead) else {
                    let inv = field.inv(c);
                    let row = column.into_iter().map(|(k, v)| (k, field.mul(&v, &inv))).collect();
                    pivots.insert(lead, row);
                    break;
                };
                let c = c.clone();
                for (k, v) in pivot {
                    let entry = column.entry(*k).or_insert_with(|| field.zero());
                    *entry = field.sub(entry, &field.mul(&c, v));
                    if field.is_zero(entry) {
                        column.remove(k);
                    }
                }
            }
        }
        let mut v = 0;
        loop {
            if v == arity {
                return Ok(true);
            }
            exps[v] += 1;
            if exps[v] < bounds[v] {
                break;
            }
            exps[v] = 0;
            v += 1;
        }
    }
}

/// `a : b = { f : f·b ⊆ a }`, the intersection of `a : (g)` over the
/// generators `g` of `b`.
pub fn ideal_colon<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> Result<Ideal<F>> {
    check_rings(a, b)?;
    if b.is_zero() {
        return Err(Error::InvalidArgument("colon by the zero ideal".into()));
    }
    if a.is_monomial()? && b.is_monomial()? {
        return monomial_colon(a, b);
    }
    colon_by_generators(a, b.generators())
}

/// `a : (g_1, ..., g_k)` for an explicit generating list.
pub fn colon_by_generators<F: Field>(a: &Ideal<F>, gens: &[Polynomial<F>]) -> Result<Ideal<F>> {
    let mut acc: Option<Ideal<F>> = None;
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let q = colon_by_element(a, g)?;
        acc = Some(match acc {
            None => q,
            Some(prev) => ideal_intersect(&prev, &q)?,
        });
    }
    acc.ok_or_else(|| Error::InvalidArgument("colon by the zero ideal".into()))
}

/// Combinatorial colon of monomial ideals: `a : (v) = (u / gcd(u, v))` and
/// intersections via lcms.
pub fn monomial_colon<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> Result<Ideal<F>> {
    check_rings(a, b)?;
    let ma = a.monomial_generators()?.ok_or(Error::NonMonomialInput)?;
    let mb = b.monomial_generators()?.ok_or(Error::NonMonomialInput)?;
    if mb.is_empty() {
        return Err(Error::InvalidArgument("colon by the zero ideal".into()));
    }
    let mut acc: Option<Vec<Monomial>> = None;
    for v in &mb {
        let q = minimalize(ma.iter().map(|u| u.saturating_sub(v)).collect());
        acc = Some(match acc {
            None => q,
            Some(prev) => minimalize(prev.iter().flat_map(|x| q.iter().map(move |y| x.lcm(y))).collect()),
        });
    }
    Ideal::canonical(a.ring(), monomials_to_polys(a.ring(), acc.unwrap_or_default()))
}

/// Proof that `R/I` is finite-dimensional and supported at the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPrimaryCertificate {
    /// `e_i` with `x_i^{e_i}` a minimal generator of the leading-term ideal.
    pub pure_powers: Vec<u32>,
    pub colength: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MPrimaryVerdict {
    Certified(MPrimaryCertificate),
    NotMPrimary { variable: Option<String>, reason: String },
}

impl MPrimaryVerdict {
    pub fn certificate(&self) -> Option<&MPrimaryCertificate> {
        match self {
            MPrimaryVerdict::Certified(c) => Some(c),
            MPrimaryVerdict::NotMPrimary { .. } => None,
        }
    }
}

fn pure_power_exponents(arity: usize, lts: &[Monomial]) -> Vec<Option<u32>> {
    (0..arity)
        .map(|v| {
            lts.iter()
                .filter(|m| (0..arity).all(|w| w == v || m.exponent(w) == 0))
                .map(|m| m.exponent(v))
                .min()
        })
        .collect()
}

/// Number of monomials outside the monomial ideal generated by `lts`, which
/// must contain a pure power of every variable (`bounds`).
fn count_standard_monomials(arity: usize, lts: &[Monomial], bounds: &[u32]) -> u64 {
    if lts.iter().any(|m| m.is_one()) {
        return 0;
    }
    let last = arity - 1;
    let mut total = 0u64;
    let mut prefix = vec![0u32; arity];
    // odometer over prefixes (all variables but the last) inside the box
    loop {
        let cap = lts
            .iter()
            .filter(|m| (0..last).all(|v| m.exponent(v) <= prefix[v]))
            .map(|m| m.exponent(last))
            .min()
            .unwrap_or(bounds[last]);
        total += cap as u64;
        let mut v = 0;
        loop {
            if v == last {
                return total;
            }
            prefix[v] += 1;
            if prefix[v] < bounds[v] {
                break;
            }
            prefix[v] = 0;
            v += 1;
        }
    }
}

/// Pure-power certificate, colength, and nilpotency of every variable modulo
/// the ideal.
pub fn is_m_primary<F: Field>(ideal: &Ideal<F>) -> Result<MPrimaryVerdict> {
    let ring = ideal.ring();
    let gb = ideal.groebner()?;
    if gb.is_unit() {
        return Ok(MPrimaryVerdict::NotMPrimary { variable: None, reason: "unit ideal".into() });
    }
    if gb.is_empty() {
        return Ok(MPrimaryVerdict::NotMPrimary {
            variable: Some(ring.vars()[0].clone()),
            reason: "zero ideal".into(),
        });
    }
    let lts = gb.leading_monomials();
    let pure = pure_power_exponents(ring.arity(), &lts);
    let mut bounds = Vec::with_capacity(ring.arity());
    for (v, e) in pure.iter().enumerate() {
        match e {
            Some(e) => bounds.push(*e),
            None => {
                return Ok(MPrimaryVerdict::NotMPrimary {
                    variable: Some(ring.vars()[v].clone()),
                    reason: format!("no pure power of {} in the leading-term ideal", ring.vars()[v]),
                })
            }
        }
    }
    let colength = count_standard_monomials(ring.arity(), &lts, &bounds);
    if !gb.is_monomial() {
        // R/I is finite-dimensional; it is supported at the origin iff every
        // variable is nilpotent, i.e. x_i^colength ∈ I.
        for v in 0..ring.arity() {
            let x = Polynomial::var(ring, v);
            let mut acc = Polynomial::one(ring);
            for _ in 0..colength {
                acc = gb.normal_form_unchecked(&acc.mul_unchecked(&x));
                if acc.is_zero() {
                    break;
                }
            }
            if !acc.is_zero() {
                return Ok(MPrimaryVerdict::NotMPrimary {
                    variable: Some(ring.vars()[v].clone()),
                    reason: format!("{} is not nilpotent modulo the ideal", ring.vars()[v]),
                });
            }
        }
    }
    Ok(MPrimaryVerdict::Certified(MPrimaryCertificate { pure_powers: bounds, colength }))
}

/// `dim_k R/I` as the number of standard monomials of the reduced basis.
pub fn colength<F: Field>(ideal: &Ideal<F>) -> Result<u64> {
    let ring = ideal.ring();
    let gb = ideal.groebner()?;
    if gb.is_unit() {
        return Ok(0);
    }
    let lts = gb.leading_monomials();
    let mut bounds = Vec::with_capacity(ring.arity());
    for (v, e) in pure_power_exponents(ring.arity(), &lts).into_iter().enumerate() {
        bounds.push(e.ok_or_else(|| {
            Error::NotMPrimary(format!("no pure power of {} in the leading-term ideal", ring.vars()[v]))
        })?);
    }
    Ok(count_standard_monomials(ring.arity(), &lts, &bounds))
}

/// Least `t` with `m^t ⊆ I`, searching `t ≤ bound`.
pub fn maximal_power_index<F: Field>(ideal: &Ideal<F>, bound: u32) -> Result<Option<u32>> {
    let ring = ideal.ring();
    let gb = ideal.groebner()?;
    for t in 0..=bound {
        let mt = Ideal::maximal_power(ring, t);
        if gb.is_unit() || gb.reduces_to_zero_all(mt.generators().iter()) {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// The contraction to the polynomial ring of the localization of `ideal` at
/// the origin, for ideals that become `m`-primary there.
///
/// `ideal + m^n` is computed for `n = start, 2·start, 4·start, ...`; once it contains
/// `m^{n-1}`, Nakayama's lemma gives `m^{n-1} ⊆ ideal` locally, so
/// `ideal + m^n` is exactly the contracted ideal. Fails with
/// `NotLocallyMPrimary` when no `n ≤ max_order` works.
pub fn local_contraction<F: Field>(ideal: &Ideal<F>, start: u32, max_order: u32) -> Result<Ideal<F>> {
    let ring = ideal.ring();
    // a generator with a nonzero constant term is a unit at the origin
    if ideal.generators().iter().any(|g| g.order_at_origin() == Some(0)) {
        return Ok(Ideal::unit(ring));
    }
    if let MPrimaryVerdict::Certified(_) = is_m_primary(ideal)? {
        return Ok(ideal.clone());
    }
    let mut n = start.max(2).min(max_order.max(2));
    loop {
        let truncated = ideal_sum(ideal, &Ideal::maximal_power(ring, n))?;
        let below = Ideal::maximal_power(ring, n - 1);
        if truncated.groebner()?.reduces_to_zero_all(below.generators().iter()) {
            return Ok(truncated);
        }
        if n >= max_order {
            return Err(Error::NotLocallyMPrimary { bound: max_order });
        }
        n = n.saturating_mul(2).min(max_order);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::parse::parse_polynomial;

    fn ring() -> Arc<PolyRing<PrimeField>> {
        PolyRing::from_spec("x,y", PrimeField::default()).unwrap()
    }

    fn ideal(r: &Arc<PolyRing<PrimeField>>, s: &str) -> Ideal<PrimeField> {
        Ideal::parse(r, s).unwrap()
    }

    #[test]
    fn sums_products_powers() {
        let r = ring();
        let m = ideal(&r, "x,y");
        assert!(ideal_power(&m, 2, None).unwrap().equals(&ideal(&r, "x^2, x*y, y^2")).unwrap());
        assert!(ideal_power(&m, 0, None).unwrap().is_unit().unwrap());
        assert!(ideal_product(&ideal(&r, "x"), &ideal(&r, "y")).unwrap().equals(&ideal(&r, "x*y")).unwrap());
        assert!(ideal_sum(&ideal(&r, "x^2"), &ideal(&r, "y")).unwrap().equals(&ideal(&r, "y, x^2")).unwrap());
    }

    #[test]
    fn power_cache_agrees_with_products() {
        let r = ring();
        let i = ideal(&r, "x^3 + y^2, x*y^2");
        let cache = PowerCache::new(i.clone());
        let p5 = cache.power(5).unwrap();
        let p2 = cache.power(2).unwrap();
        let p3 = cache.power(3).unwrap();
        assert!(p5.equals(&ideal_product(&p2, &p3).unwrap()).unwrap());
        assert!(p2.contains(&p3).unwrap());
    }

    #[test]
    fn intersections() {
        let r = ring();
        let xy = ideal_intersect(&ideal(&r, "x"), &ideal(&r, "y")).unwrap();
        assert!(xy.equals(&ideal(&r, "x*y")).unwrap());
        let i = ideal(&r, "x^2 + y, x*y");
        assert!(ideal_intersect(&i, &i).unwrap().equals(&i).unwrap());
        let meet = ideal_intersect(&ideal(&r, "x^2, y"), &ideal(&r, "x")).unwrap();
        assert!(meet.equals(&ideal(&r, "x^2, x*y")).unwrap());
        let meet2 = ideal_intersect(&ideal(&r, "x^2, y"), &ideal(&r, "x + y")).unwrap();
        assert!(meet2.equals(&ideal(&r, "x^2 + x*y, x*y + y^2")).unwrap());
        let e = ideal_intersect(&ideal(&r, "x + y^2"), &ideal(&r, "x - y^2")).unwrap();
        assert!(e.equals(&ideal(&r, "x^2 - y^4")).unwrap());
    }

    #[test]
    fn colons() {
        let r = ring();
        let m = ideal(&r, "x, y");
        let m2 = ideal(&r, "x^2, x*y, y^2");
        assert!(ideal_colon(&m2, &m).unwrap().equals(&m).unwrap());
        let i = ideal(&r, "x^2 + y^3, x*y");
        assert!(ideal_colon(&i, &Ideal::unit(&r)).unwrap().equals(&i).unwrap());
        let q = ideal_colon(&ideal(&r, "x^2*y"), &ideal(&r, "x")).unwrap();
        assert!(q.equals(&ideal(&r, "x*y")).unwrap());
        // non-monomial: (x^2 - y^2) : (x + y) = (x - y)
        let c = colon_by_element(&ideal(&r, "x^2 - y^2"), &parse_polynomial("x + y", &r).unwrap()).unwrap();
        assert!(c.equals(&ideal(&r, "x - y")).unwrap());
    }

    #[test]
    fn monomial_colon_fast_path_matches_general_route() {
        let r = ring();
        let a = ideal(&r, "x^4, y^4");
        let b = ideal(&r, "x^2, y^2");
        let fast = monomial_colon(&a, &b).unwrap();
        let general = colon_by_generators(&a, b.generators()).unwrap();
        assert!(fast.equals(&general).unwrap());
        assert!(fast.equals(&ideal(&r, "x^4, x^2*y^2, y^4")).unwrap());
        assert_eq!(monomial_colon(&ideal(&r, "x + y"), &b).unwrap_err(), Error::NonMonomialInput);
    }

    #[test]
    fn colength_examples() {
        let r = ring();
        assert_eq!(colength(&ideal(&r, "x,y")).unwrap(), 1);
        assert_eq!(colength(&ideal(&r, "x^2, x*y, y^2")).unwrap(), 3);
        assert_eq!(colength(&ideal(&r, "x^4, x^3*y, x*y^3, y^4")).unwrap(), 11);
        assert_eq!(colength(&ideal(&r, "x^3, y^5")).unwrap(), 15);
        assert!(matches!(colength(&ideal(&r, "x")), Err(Error::NotMPrimary(_))));
        let s = PolyRing::from_spec("x,y,z", PrimeField::default()).unwrap();
        assert_eq!(colength(&Ideal::parse(&s, "x^2, y^3, z^4").unwrap()).unwrap(), 24);
        assert_eq!(colength(&Ideal::maximal_power(&s, 3)).unwrap(), 10);
    }

    #[test]
    fn m_primary_certificates() {
        let r = ring();
        let c = is_m_primary(&ideal(&r, "x,y")).unwrap();
        assert_eq!(c.certificate().unwrap(), &MPrimaryCertificate { pure_powers: vec![1, 1], colength: 1 });
        let c = is_m_primary(&ideal(&r, "x^7, x^6*y, x^2*y^5, y^7")).unwrap();
        assert_eq!(c.certificate().unwrap().pure_powers, vec![7, 7]);
        match is_m_primary(&ideal(&r, "x")).unwrap() {
            MPrimaryVerdict::NotMPrimary { variable, .. } => assert_eq!(variable.as_deref(), Some("y")),
            v => panic!("unexpected {v:?}"),
        }
        // zero-dimensional but with a second point at (1, 0)
        assert!(is_m_primary(&ideal(&r, "x^2 - x, y")).unwrap().certificate().is_none());
        assert!(is_m_primary(&ideal(&r, "x^2 + y^3, y^4")).unwrap().certificate().is_some());
    }

    #[test]
    fn local_contraction_drops_far_components() {
        let r = ring();
        // (x - x^2, y) = (x, y) ∩ (x - 1, y)
        let j = ideal(&r, "x - x^2, y");
        let c = local_contraction(&j, 2, 20).unwrap();
        assert!(c.equals(&ideal(&r, "x, y")).unwrap());
        // not m-primary even locally
        assert!(matches!(local_contraction(&ideal(&r, "x"), 2, 12), Err(Error::NotLocallyMPrimary { .. })));
        assert!(local_contraction(&ideal(&r, "x + 1, y"), 2, 12).unwrap().is_unit().unwrap());
    }

    #[test]
    fn rational_colon() {
        let r = PolyRing::from_spec("x,y", Rationals).unwrap();
        let a = Ideal::parse(&r, "x^3, y^3, x*y^2").unwrap();
        let g = parse_polynomial("x + 1/2*y", &r).unwrap();
        let c = colon_by_element(&a, &g).unwrap();
        for h in c.generators() {
            assert!(a.contains_element(&h.mul(&g).unwrap()).unwrap());
        }
        assert!(c.contains(&a).unwrap());
    }

    #[test]
    fn colon_equality_by_lengths_matches_colon() {
        let r = ring();
        let a = ideal(&r, "x^4, x^3*y, x*y^3, y^4");
        let g = parse_polynomial("x^2 + 3*x*y - y^2", &r).unwrap();
        let c = colon_by_element(&a, &g).unwrap();
        assert!(colon_element_equals(&a, &g, &c).unwrap());
        let smaller = ideal_product(&c, &Ideal::maximal_power(&r, 1)).unwrap();
        assert!(!colon_element_equals(&a, &g, &smaller).unwrap());
        assert!(!colon_element_equals(&a, &g, &ideal(&r, "x")).unwrap());
        assert!(!colon_element_equals(&a, &g, &ideal(&r, "1")).unwrap());
        let non_primary = ideal(&r, "x^2");
        let cx = colon_by_element(&non_primary, &g).unwrap();
        assert!(colon_element_equals(&non_primary, &g, &cx).unwrap());
    }

    #[test]
    fn monomial_colon_equality_matches_elimination() {
        let r = ring();
        let i = ideal(&r, "x^4, x^3*y, x*y^3, y^4");
        let cache = PowerCache::new(i);
        for text in ["x^4 + 2*x^3*y + 5*x*y^3 - y^4", "x^4 + y^4", "x^4", "x^3*y - x*y^3"] {
            let g = parse_polynomial(text, &r).unwrap();
            for m in 0..4 {
                let a = cache.power(m + 1).unwrap();
                let b = cache.power(m).unwrap();
                let expected = colon_by_element(&a, &g).unwrap().equals(&b).unwrap();
                assert_eq!(colon_element_equals(&a, &g, &b).unwrap(), expected, "{text} at m = {m}");
            }
        }
    }
}