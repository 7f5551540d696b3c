//! Values stated for the two worked ideals of k[[x, y]].

use std::sync::Arc;

use rrlab_core::hilbert::hilbert_coefficients;
use rrlab_core::ops::{ideal_colon, PowerCache};
use rrlab_core::reduction::{ReductionConfig, ReductionContext};
use rrlab_core::rr::{RatliffRush, RrConfig};
use rrlab_core::{parse_polynomial, Ideal, PolyRing, PrimeField};

fn context(text: &str) -> ReductionContext<PrimeField> {
    let r = PolyRing::from_spec("x,y", PrimeField::default()).unwrap();
    let i = Ideal::parse(&r, text).unwrap();
    ReductionContext::new(Arc::new(RatliffRush::new(i, RrConfig::default())), ReductionConfig::default()).unwrap()
}

#[test]
fn seven_generated_example() {
    let ctx = context("x^7, x^6*y, x^2*y^5, y^7");
    let generic = ctx.reduction_number_generic(5, 0).unwrap();
    assert_eq!(generic.upper_bound, 3);
    let ring = ctx.ideal().ring().clone();
    let w = parse_polynomial("x^17*y^4", &ring).unwrap();
    let i4 = ctx.powers().power(4).unwrap();
    assert!(ideal_colon(&i4, ctx.ideal()).unwrap().contains_element(&w).unwrap());
    assert!(!ctx.powers().power(3).unwrap().contains_element(&w).unwrap());
    assert!(!ctx.rr.is_power_closed(3).unwrap());
    assert!(ctx.rr.closure_ideal(3).unwrap().contains_element(&w).unwrap());
}

#[test]
fn four_generated_example() {
    let ctx = context("x^4, x^3*y, x*y^3, y^4");
    assert_eq!(ctx.reduction_number_generic(5, 0).unwrap().upper_bound, 2);
    let h = hilbert_coefficients(ctx.powers(), 12, 3).unwrap();
    assert_eq!(h.coefficients[2], 0.into());
    for seed in 0..5 {
        let j = ctx.sample_minimal_reduction(seed).unwrap();
        let rr = ctx.rr_reduction_number(&j, 6).unwrap();
        assert!(rr.rr_number.is_some_and(|m| m <= 1), "seed {seed}: {:?}", rr.verdicts);
    }
}

#[test]
fn multiplicity_matches_colength_of_a_reduction() {
    // e0(I) = colength of a minimal reduction for m-primary ideals in a CM ring
    for text in ["x^4, x^3*y, x*y^3, y^4", "x^7, x^6*y, x^2*y^5, y^7", "x^2, y^3"] {
        let ctx = context(text);
        let h = hilbert_coefficients(ctx.powers(), 12, 3).unwrap();
        let j = ctx.sample_minimal_reduction(3).unwrap();
        let lj = rrlab_core::ops::colength(&j.ideal).unwrap();
        assert_eq!(h.multiplicity(), &lj.into(), "{text}");
    }
    let cache = PowerCache::new(Ideal::parse(&PolyRing::from_spec("x,y", PrimeField::default()).unwrap(), "x, y").unwrap());
    let h = hilbert_coefficients(&cache, 12, 3).unwrap();
    assert_eq!(h.coefficients, vec![1.into(), 0.into(), 0.into()]);
}
