//! An equigenerated cubic ideal of k[[x, y, z]] for which
//! `a^n closure(I^{m+1}) : x` is strictly larger than `a^n closure(I^m)` at
//! `m = 2`, although `x, x_1, x_2` are generic and every power of `I` is
//! Ratliff-Rush closed.

use std::collections::HashMap;
use std::sync::Arc;

use rrlab_core::ops::{colon_by_element, ideal_product, PowerCache};
use rrlab_core::rr::{rr_closure_power, rr_closure_via_parameters, RatliffRush, RrConfig};
use rrlab_core::{parse_generators, parse_polynomial, Ideal, Monomial, PolyRing, Polynomial, PrimeField};

mod common;
use common::rank;

const IDEAL: &str = "z^3, y*z^2, y^3, x*y*z, x^2*y, x^3";
const X: &str = "12113*x^3 - 808*x^2*y - 1390*y^3 + 6806*x*y*z - 12249*y*z^2 - 3265*z^3";
const A: &str = "3510*x^3 + 11733*x^2*y + 1671*y^3 + 7965*x*y*z + 5333*y*z^2 - 199*z^3, \
                 15515*x^3 - 13933*x^2*y - 4039*y^3 - 7070*x*y*z + 12538*y*z^2 + 3419*z^3";

fn setup() -> (Arc<PolyRing<PrimeField>>, Ideal<PrimeField>, Polynomial<PrimeField>, Vec<Polynomial<PrimeField>>) {
    let r = PolyRing::from_spec("x,y,z", PrimeField::default()).unwrap();
    let i = Ideal::parse(&r, IDEAL).unwrap();
    let x = parse_polynomial(X, &r).unwrap();
    let a = parse_generators(A, &r).unwrap();
    (r, i, x, a)
}

fn forms(degree: u32) -> Vec<Monomial> {
    (0..=degree)
        .flat_map(|a| (0..=degree - a).map(move |b| Monomial::new(&[a, b, degree - a - b])))
        .collect()
}

#[test]
fn powers_are_closed_and_colon_grows() {
    let (r, i, x, a) = setup();
    let engine = RatliffRush::new(i, RrConfig::default());
    for m in 1..=4 {
        assert!(engine.is_power_closed(m).unwrap(), "power {m}");
    }
    let a = Ideal::new(&r, a).unwrap();
    let lhs = ideal_product(&a, &engine.closure_ideal(3).unwrap()).unwrap();
    let rhs = ideal_product(&a, &engine.closure_ideal(2).unwrap()).unwrap();
    let colon = colon_by_element(&lhs, &x).unwrap();
    assert!(colon.contains(&rhs).unwrap());
    assert!(!rhs.contains(&colon).unwrap());
    // the plain colon identity still holds for x
    let cache = engine.powers();
    assert!(colon_by_element(&*cache.power(3).unwrap(), &x).unwrap().equals(&*cache.power(2).unwrap()).unwrap());
}

#[test]
fn graded_dimensions_confirm_the_gap() {
    let (r, i, x, a) = setup();
    let cache = PowerCache::new(i);
    let monomials_of_power = |k: u32, degree: u32| -> Vec<Monomial> {
        let power = cache.power(k).unwrap();
        forms(degree)
            .into_iter()
            .filter(|m| power.contains_element(&Polynomial::monomial(&r, *m)).unwrap())
            .collect()
    };
    let coordinates = |p: &Polynomial<PrimeField>, basis: &[Monomial]| {
        let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut v = vec![0u64; basis.len()];
        for (m, c) in p.terms() {
            v[index[m]] = *c as u64;
        }
        v
    };
    let (r9, r12) = (forms(9), forms(12));
    let products = |power: &[Monomial], basis: &[Monomial]| -> Vec<Vec<u64>> {
        a.iter().flat_map(|g| power.iter().map(|m| coordinates(&g.mul_monomial(m), basis))).collect()
    };
    let small = rank(products(&monomials_of_power(2, 6), &r9));
    let big = products(&monomials_of_power(3, 9), &r12);
    let base = rank(big.clone());
    let mut with_x = big;
    with_x.extend(r9.iter().map(|m| coordinates(&x.mul_monomial(m), &r12)));
    let colon = r9.len() - (rank(with_x) - base);
    assert_eq!((small, colon), (34, 36));
}

#[test]
fn parameters_outside_a_reduction_overshoot_the_closure() {
    // (x^4, y^6) is a system of parameters inside I but x*y^3 lies below its
    // Newton line, so it is not a reduction of I
    let r = PolyRing::from_spec("x,y", PrimeField::default()).unwrap();
    let i = Ideal::parse(&r, "x^4, y^6, x*y^3, x^3*y").unwrap();
    let cache = PowerCache::new(i);
    let params = parse_generators("x^4, y^6", &r).unwrap();
    let direct = rr_closure_power(&cache, 2, RrConfig::default()).unwrap().ideal;
    let via = rr_closure_via_parameters(&cache, 2, &params, RrConfig::default()).unwrap().ideal;
    let w = parse_polynomial("x^3*y^5", &r).unwrap();
    assert!(via.contains_element(&w).unwrap());
    assert!(!direct.contains_element(&w).unwrap());
    for k in 1..=8 {
        let power = cache.power(k).unwrap();
        let colon = rrlab_core::ops::ideal_colon(&*cache.power(k + 2).unwrap(), &power).unwrap();
        assert!(!colon.contains_element(&w).unwrap(), "k = {k}");
    }
}
