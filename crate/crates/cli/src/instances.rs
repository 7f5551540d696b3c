//! Seeded random ideals for the verification suites.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rrlab_core::{Field, Ideal, Monomial, Polynomial, PolyRing, PrimeField, Result};

pub const VARIABLE_NAMES: [&str; 3] = ["x", "y", "z"];

pub fn standard_ring(dim: usize) -> Arc<PolyRing<PrimeField>> {
    assert!((1..=3).contains(&dim), "dimension {dim} unsupported");
    PolyRing::from_spec(&VARIABLE_NAMES[..dim].join(","), PrimeField::default()).expect("valid ring")
}

fn minimal(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| (m.degree(), m.exponents().to_vec()));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn to_ideal<F: Field>(ring: &Arc<PolyRing<F>>, gens: Vec<Monomial>) -> Result<Ideal<F>> {
    Ok(Ideal::from_monomials(ring, minimal(gens)))
}

/// Pure powers `x_i^{a_i}` with `a_i ≤ degree_bound` plus `extra_gens`
/// random monomials strictly inside the box of pure powers; minimalized.
///
/// Exponents `a_i` are drawn from `[max(2, ⌈b/2⌉), b]` and extra generators
/// involve at least two variables and are redrawn (a bounded number of times)
/// while they already lie in the ideal, so that instances are rarely
/// complete intersections.
pub fn random_mprimary_monomial_ideal(
    dim: usize,
    degree_bound: u32,
    extra_gens: usize,
    seed: u64,
) -> Result<Ideal<PrimeField>> {
    assert!(degree_bound >= 1, "degree bound must be positive");
    let ring = standard_ring(dim);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let low = degree_bound.div_ceil(2).max(2).min(degree_bound);
    let powers: Vec<u32> = (0..dim).map(|_| rng.gen_range(low..=degree_bound)).collect();
    let mut gens: Vec<Monomial> = (0..dim).map(|v| Monomial::var_power(dim, v, powers[v])).collect();
    for _ in 0..extra_gens {
        for _attempt in 0..20 {
            let exps: Vec<u32> = powers.iter().map(|&a| rng.gen_range(0..a)).collect();
            let m = Monomial::new(&exps);
            let mixed = exps.iter().filter(|&&e| e > 0).count() >= 2.min(dim);
            if mixed && !m.is_one() && !gens.iter().any(|g| g.divides(&m)) {
                gens.push(m);
                break;
            }
        }
    }
    to_ideal(&ring, gens)
}

/// Monomial ideal generated in the single degree `degree`: all pure powers
/// `x_i^degree` plus up to `extra_gens` random monomials of that degree.
pub fn random_equigenerated_monomial_ideal(
    dim: usize,
    degree: u32,
    extra_gens: usize,
    seed: u64,
) -> Result<Ideal<PrimeField>> {
    assert!(degree >= 1, "degree must be positive");
    let ring = standard_ring(dim);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gens: Vec<Monomial> = (0..dim).map(|v| Monomial::var_power(dim, v, degree)).collect();
    for _ in 0..extra_gens {
        let mut exps = vec![0u32; dim];
        for _ in 0..degree {
            exps[rng.gen_range(0..dim)] += 1;
        }
        gens.push(Monomial::new(&exps));
    }
    to_ideal(&ring, gens)
}

/// A homogeneous form of degree `degree` whose monomials are each kept with
/// probability one half (at least one is kept), with nonzero random
/// coefficients.
pub fn random_form<F: Field>(ring: &Arc<PolyRing<F>>, degree: u32, rng: &mut ChaCha8Rng) -> Result<Polynomial<F>> {
    let monomials = Ideal::<F>::maximal_power(ring, degree);
    let field = ring.field();
    let mut terms = Vec::new();
    for g in monomials.generators() {
        if rng.gen_bool(0.5) {
            terms.push((g.leading_monomial().expect("monomial"), field.random_nonzero(rng)));
        }
    }
    if terms.is_empty() {
        let g = &monomials.generators()[rng.gen_range(0..monomials.generators().len())];
        terms.push((g.leading_monomial().expect("monomial"), field.one()));
    }
    Ok(Polynomial::from_terms(ring, terms))
}
