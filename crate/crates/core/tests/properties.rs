use std::sync::Arc;

use proptest::prelude::*;
use rrlab_core::ops::{colength, colon_by_element, ideal_product, ideal_sum, PowerCache};
use rrlab_core::reduction::{product_generates, ReductionConfig, ReductionContext};
use rrlab_core::rr::{RatliffRush, RrConfig};
use rrlab_core::{buchberger, GbConfig, Ideal, Monomial, PolyRing, Polynomial, PrimeField};

fn ring() -> Arc<PolyRing<PrimeField>> {
    PolyRing::from_spec("x,y", PrimeField::default()).unwrap()
}

fn poly(r: &Arc<PolyRing<PrimeField>>, terms: &[((u32, u32), u32)]) -> Polynomial<PrimeField> {
    Polynomial::from_terms(r, terms.iter().map(|&((a, b), c)| (Monomial::new(&[a, b]), c)).collect())
}

fn terms() -> impl Strategy<Value = Vec<((u32, u32), u32)>> {
    prop::collection::vec(((0u32..4, 0u32..4), 1u32..32003), 1..4)
}

/// `(x^a, y^b)` plus up to two mixed monomials strictly inside the box.
fn monomial_ideal() -> impl Strategy<Value = (u32, u32, Vec<(u32, u32)>)> {
    (2u32..6, 2u32..6).prop_flat_map(|(a, b)| (Just(a), Just(b), prop::collection::vec((1..a, 1..b), 0..3)))
}

fn build(r: &Arc<PolyRing<PrimeField>>, (a, b, extra): &(u32, u32, Vec<(u32, u32)>)) -> Ideal<PrimeField> {
    let mut monos = vec![Monomial::new(&[*a, 0]), Monomial::new(&[0, *b])];
    monos.extend(extra.iter().map(|&(i, j)| Monomial::new(&[i, j])));
    Ideal::from_monomials(r, monos)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn groebner_basis_is_idempotent(f in terms(), g in terms()) {
        let r = ring();
        let i = Ideal::new(&r, vec![poly(&r, &f), poly(&r, &g)]).unwrap();
        let gb = i.groebner().unwrap();
        prop_assert!(gb.verify());
        let again = buchberger(&r, gb.elements(), GbConfig::default()).unwrap();
        prop_assert_eq!(again.elements(), gb.elements());
    }

    #[test]
    fn generators_and_products_are_members(f in terms(), g in terms(), h in terms()) {
        let r = ring();
        let (f, g, h) = (poly(&r, &f), poly(&r, &g), poly(&r, &h));
        let i = Ideal::new(&r, vec![f.clone(), g.clone()]).unwrap();
        prop_assert!(i.contains_element(&f).unwrap());
        prop_assert!(i.contains_element(&f.mul(&h).unwrap().add(&g).unwrap()).unwrap());
        prop_assert!(ideal_sum(&i, &Ideal::new(&r, vec![h]).unwrap()).unwrap().contains(&i).unwrap());
    }

    #[test]
    fn colon_multiplies_back_into_the_ideal(spec in monomial_ideal(), g in terms()) {
        let r = ring();
        let i = build(&r, &spec);
        let g = poly(&r, &g);
        let colon = colon_by_element(&i, &g).unwrap();
        prop_assert!(colon.contains(&i).unwrap());
        for c in colon.generators() {
            prop_assert!(i.contains_element(&c.mul(&g).unwrap()).unwrap());
        }
    }

    #[test]
    fn box_colength_is_the_product(a in 1u32..9, b in 1u32..9) {
        let r = ring();
        let i = Ideal::from_monomials(&r, [Monomial::new(&[a, 0]), Monomial::new(&[0, b])]);
        prop_assert_eq!(colength(&i).unwrap(), (a * b) as u64);
    }

    #[test]
    fn cached_powers_multiply(spec in monomial_ideal(), p in 1u32..4, q in 1u32..4) {
        let r = ring();
        let cache = PowerCache::new(build(&r, &spec));
        let prod = ideal_product(&*cache.power(p).unwrap(), &*cache.power(q).unwrap()).unwrap();
        prop_assert!(prod.equals(&*cache.power(p + q).unwrap()).unwrap());
    }

    #[test]
    fn closures_contain_powers_and_absorb_reductions(spec in monomial_ideal(), seed in 0u64..1000) {
        let r = ring();
        let ctx = ReductionContext::new(
            Arc::new(RatliffRush::new(build(&r, &spec), RrConfig::default())),
            ReductionConfig::default(),
        ).unwrap();
        let j = ctx.sample_minimal_reduction(seed).unwrap();
        for n in 0..4 {
            let cn = ctx.rr.closure_ideal(n).unwrap();
            let cn1 = ctx.rr.closure_ideal(n + 1).unwrap();
            prop_assert!(cn.contains(&*ctx.powers().power(n).unwrap()).unwrap());
            prop_assert!(cn.contains(&cn1).unwrap());
            for l in &j.generators {
                for c in cn.generators() {
                    prop_assert!(cn1.contains_element(&l.mul(c).unwrap()).unwrap());
                }
            }
        }
        let closure = ctx.rr.closure_ideal(1).unwrap();
        let twice = RatliffRush::new(closure.clone(), RrConfig::default()).closure_ideal(1).unwrap();
        prop_assert!(twice.equals(&closure).unwrap());
    }

    #[test]
    fn reduction_number_ignores_generator_basis(spec in monomial_ideal(), seed in 0u64..1000, c in 1u32..32003) {
        let r = ring();
        let ctx = ReductionContext::new(
            Arc::new(RatliffRush::new(build(&r, &spec), RrConfig::default())),
            ReductionConfig::default(),
        ).unwrap();
        let j = ctx.sample_minimal_reduction(seed).unwrap();
        let (l1, l2) = (&j.generators[0], &j.generators[1]);
        let swapped = vec![l2.clone(), l1.clone()];
        let sheared = vec![l1.clone(), l2.add(&l1.scale(&c)).unwrap()];
        for gens in [swapped, sheared] {
            let other = ctx.reduction_from_generators(gens.clone()).unwrap();
            prop_assert_eq!(other.reduction_number, j.reduction_number);
            let r_j = j.reduction_number;
            let base = ctx.powers().power(r_j).unwrap();
            prop_assert!(product_generates(&gens, &base, &*ctx.powers().power(r_j + 1).unwrap()).unwrap());
        }
    }
}
