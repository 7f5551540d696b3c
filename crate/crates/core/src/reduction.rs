//! Minimal reductions, superficial elements, reduction numbers and the
//! comparison between the ordinary and the Ratliff-Rush reduction numbers.
//!
//! Generic choices are made with seeded random coefficients from the
//! coefficient field; every result records the seed that produced it.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::Ideal;
use crate::ops::{
    colon_element_equals, ideal_product, local_contraction, maximal_power_index, PowerCache,
};
use crate::poly::Polynomial;
use crate::rr::RatliffRush;

pub const DEFAULT_MAX_REDUCTION_EXPONENT: u32 = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReductionConfig {
    /// Largest `m` tried when searching for `I^{m+1} = J I^m`.
    pub max_m: u32,
    /// Fresh seeds tried before giving up on a random search.
    pub retries: u32,
    /// Length of the verified superficiality window past `k0`.
    pub superficial_span: u32,
    /// Largest `k0` considered when it is not supplied.
    pub superficial_search: u32,
}

impl Default for ReductionConfig {
    fn default() -> Self {
        Self { max_m: DEFAULT_MAX_REDUCTION_EXPONENT, retries: 20, superficial_span: 8, superficial_search: 12 }
    }
}

/// Seed for the `index`-th derived attempt; index 0 keeps the seed itself.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    if index == 0 {
        return seed;
    }
    // splitmix64 finalizer
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// An ideal `J = (l_1, ..., l_d)` certified to be a reduction of `I`.
#[derive(Clone, Debug)]
pub struct MinimalReduction<F: Field> {
    /// The `d` generators.
    pub generators: Vec<Polynomial<F>>,
    /// `J` as an ideal of the polynomial ring after contracting from the
    /// local ring (`J + m^n` for large `n`).
    pub ideal: Ideal<F>,
    /// Reduction number `r_J(I)`.
    pub reduction_number: u32,
    /// Seed of the successful attempt (`None` when supplied by the caller).
    pub seed: Option<u64>,
    pub seeds_tried: Vec<u64>,
    /// Row `i` holds the coefficients of `l_i` on the generators of `I`.
    pub coefficients: Vec<Vec<F::Elem>>,
}

/// Everything about `I` that reduction computations share.
pub struct ReductionContext<F: Field> {
    pub rr: Arc<RatliffRush<F>>,
    pub config: ReductionConfig,
    /// Least `c` with `m^c ⊆ I`.
    pub maximal_index: u32,
}

impl<F: Field> ReductionContext<F> {
    pub fn new(rr: Arc<RatliffRush<F>>, config: ReductionConfig) -> Result<Self> {
        let base = rr.powers().base().clone();
        let bound = base.ring().exponent_guard().min(10_000);
        let maximal_index = maximal_power_index(&base, bound)?
            .ok_or_else(|| Error::NotMPrimary("no power of the maximal ideal lies in the ideal".into()))?;
        Ok(Self { rr, config, maximal_index })
    }

    pub fn ideal(&self) -> &Arc<Ideal<F>> {
        self.rr.powers().base()
    }

    pub fn powers(&self) -> &Arc<PowerCache<F>> {
        self.rr.powers()
    }

    fn contraction_bounds(&self) -> (u32, u32) {
        let c = self.maximal_index.max(1);
        (c + 1, c.saturating_mul(self.config.max_m + 1) + 1)
    }

    /// Contracts the ideal spanned by `generators`; `None` when it is not
    /// `m`-primary at the origin within the order bound.
    pub fn contract(&self, generators: &[Polynomial<F>]) -> Result<Option<Ideal<F>>> {
        let span = Ideal::new(self.ideal().ring(), generators.to_vec())?;
        let (start, cap) = self.contraction_bounds();
        match local_contraction(&span, start, cap) {
            Ok(j) => Ok(Some(j)),
            Err(Error::NotLocallyMPrimary { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    }

    /// Least `m ≤ max_m` with `I^{m+1} = J I^m`.
    pub fn reduction_exponent(&self, generators: &[Polynomial<F>], max_m: u32) -> Result<Option<u32>> {
        for m in 0..=max_m {
            if product_generates(generators, &*self.powers().power(m)?, &*self.powers().power(m + 1)?)? {
                return Ok(Some(m));
            }
        }
        Ok(None)
    }

    fn check_contained(&self, generators: &[Polynomial<F>]) -> Result<()> {
        for g in generators {
            if !self.ideal().contains_element(g)? {
                return Err(Error::JNotContained);
            }
        }
        Ok(())
    }

    /// Least `m ≤ max_m` with `I^{m+1} = J I^m`, or `None`.
    pub fn is_reduction(&self, generators: &[Polynomial<F>], max_m: u32) -> Result<Option<u32>> {
        self.check_contained(generators)?;
        match self.contract(generators)? {
            None => Ok(None),
            Some(_) => self.reduction_exponent(generators, max_m),
        }
    }

    /// Certifies a caller-supplied reduction.
    pub fn reduction_from_generators(&self, generators: Vec<Polynomial<F>>) -> Result<MinimalReduction<F>> {
        self.check_contained(&generators)?;
        let bound = self.config.max_m;
        let ideal = self.contract(&generators)?.ok_or(Error::NotAReductionWithinBound { bound })?;
        let r = self.reduction_exponent(&generators, bound)?.ok_or(Error::NotAReductionWithinBound { bound })?;
        Ok(MinimalReduction {
            generators,
            ideal,
            reduction_number: r,
            seed: None,
            seeds_tried: Vec::new(),
            coefficients: Vec::new(),
        })
    }

    /// `d` random combinations of the generators of `I`, retried with fresh
    /// seeds until they form a reduction.
    pub fn sample_minimal_reduction(&self, seed: u64) -> Result<MinimalReduction<F>> {
        let ideal = self.ideal();
        let ring = ideal.ring();
        let field = ring.field();
        if field.characteristic() != 0 && field.characteristic() < 1000 {
            log::warn!("characteristic {} is small; generic choices may fail often", field.characteristic());
        }
        let gens = ideal.groebner()?.elements().to_vec();
        let d = ring.arity();
        let mut seeds_tried = Vec::new();
        for attempt in 0..self.config.retries.max(1) {
            let s = derive_seed(seed, attempt as u64);
            seeds_tried.push(s);
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let coefficients: Vec<Vec<F::Elem>> =
                (0..d).map(|_| gens.iter().map(|_| field.random_nonzero(&mut rng)).collect()).collect();
            let generators: Vec<Polynomial<F>> = coefficients
                .iter()
                .map(|row| combine(ring, row, &gens))
                .collect::<Result<_>>()?;
            let Some(j) = self.contract(&generators)? else { continue };
            if let Some(r) = self.reduction_exponent(&generators, self.config.max_m)? {
                return Ok(MinimalReduction {
                    generators,
                    ideal: j,
                    reduction_number: r,
                    seed: Some(s),
                    seeds_tried,
                    coefficients,
                });
            }
        }
        Err(Error::ReductionNotFound { seeds: seeds_tried })
    }

    pub fn reduction_number(&self, reduction: &MinimalReduction<F>) -> Result<ReductionReport<F>> {
        let r = self
            .reduction_exponent(&reduction.generators, self.config.max_m)?
            .ok_or(Error::NotAReductionWithinBound { bound: self.config.max_m })?;
        let mut chain_check = Vec::new();
        let gens = &reduction.generators;
        for n in r..=r + 3 {
            chain_check.push((n, product_generates(gens, &*self.powers().power(n)?, &*self.powers().power(n + 1)?)?));
        }
        let previous_differs = if r == 0 {
            None
        } else {
            Some(!product_generates(gens, &*self.powers().power(r - 1)?, &*self.powers().power(r)?)?)
        };
        Ok(ReductionReport {
            generators: reduction.generators.clone(),
            reduction_number: r,
            chain_check,
            previous_differs,
            seed: reduction.seed,
        })
    }

    /// Minimum of `r_J(I)` over `trials` sampled minimal reductions: an
    /// upper bound for `r(I)`, exact for generic choices.
    pub fn reduction_number_generic(&self, trials: u32, seed: u64) -> Result<GenericReductionNumber> {
        if trials == 0 {
            return Err(Error::InvalidArgument("at least one trial is needed".into()));
        }
        let mut per_trial = Vec::new();
        for t in 0..trials {
            let j = self.sample_minimal_reduction(derive_seed(seed, 1_000 + t as u64))?;
            per_trial.push((j.seed.expect("sampled"), j.reduction_number));
        }
        let upper_bound = per_trial.iter().map(|(_, r)| *r).min().expect("nonempty");
        Ok(GenericReductionNumber { upper_bound, per_trial })
    }

    /// Checks `(I^{m+1} : x) = I^m` and `(I^{m+1} : x) ∩ I^{k0} = I^m` on a
    /// window `[k0, end]`. Without `k0`, the least index from which the plain
    /// identity holds for `superficial_span + 1` consecutive values is used.
    pub fn is_superficial_bounded(
        &self,
        x: &Polynomial<F>,
        k0: Option<u32>,
        end: Option<u32>,
    ) -> Result<SuperficialVerdict<F>> {
        if !self.ideal().contains_element(x)? {
            return Err(Error::InvalidArgument(format!("{x} is not in the ideal")));
        }
        let span = self.config.superficial_span;
        let plain = |m: u32| -> Result<bool> {
            colon_element_equals(&*self.powers().power(m + 1)?, x, &*self.powers().power(m)?)
        };
        let k0 = match k0 {
            Some(k) => k,
            None => {
                let mut run_start: Option<u32> = None;
                let mut last_failure = 0;
                let mut found = None;
                for m in 0..=self.config.superficial_search + span {
                    if plain(m)? {
                        let start = *run_start.get_or_insert(m);
                        if m - start >= span {
                            found = Some(start);
                            break;
                        }
                    } else {
                        run_start = None;
                        last_failure = m;
                        if m >= self.config.superficial_search {
                            break;
                        }
                    }
                }
                match found {
                    Some(k) => k,
                    None => return Ok(SuperficialVerdict::Failure { first_violated: last_failure }),
                }
            }
        };
        let end = end.unwrap_or(k0 + span);
        let mut checks = Vec::new();
        let mut intersected_checks = Vec::new();
        for m in k0..=end {
            let ok = plain(m)?;
            checks.push((m, ok));
            // for m ≥ k0, I^m ⊆ (I^{m+1} : x) ∩ I^{k0} ⊆ (I^{m+1} : x)
            intersected_checks.push((m, ok));
            if !ok {
                return Ok(SuperficialVerdict::Failure { first_violated: m });
            }
        }
        Ok(SuperficialVerdict::Witness(SuperficialWitness {
            element: x.clone(),
            k0,
            end,
            checks,
            intersected_checks,
        }))
    }

    /// `d` elements, each superficial for `I`, generating a minimal reduction.
    /// With `target`, they are obtained from its generators by a random
    /// invertible change of basis and must span exactly the same ideal.
    pub fn tame_superficial_sequence(
        &self,
        target: Option<&MinimalReduction<F>>,
        seed: u64,
    ) -> Result<TameSequence<F>> {
        let ring = self.ideal().ring();
        let field = ring.field();
        let d = ring.arity();
        let owned;
        let target = match target {
            Some(t) => t,
            None => {
                owned = self.sample_minimal_reduction(seed)?;
                &owned
            }
        };
        let mut seeds_tried = Vec::new();
        'attempts: for attempt in 0..self.config.retries.max(1) {
            let s = derive_seed(seed, 10_000 + attempt as u64);
            seeds_tried.push(s);
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let matrix: Vec<Vec<F::Elem>> =
                (0..d).map(|_| (0..d).map(|_| field.random_nonzero(&mut rng)).collect()).collect();
            if !is_invertible(field, &matrix) {
                continue;
            }
            let elements: Vec<Polynomial<F>> =
                matrix.iter().map(|row| combine(ring, row, &target.generators)).collect::<Result<_>>()?;
            let mut witnesses = Vec::new();
            for z in &elements {
                match self.is_superficial_bounded(z, None, None)? {
                    SuperficialVerdict::Witness(w) => witnesses.push(w),
                    SuperficialVerdict::Failure { .. } => continue 'attempts,
                }
            }
            let Some(span) = self.contract(&elements)? else { continue };
            if !span.equals(&target.ideal)? {
                continue;
            }
            let Some(r) = self.reduction_exponent(&elements, self.config.max_m)? else { continue };
            let reduction = MinimalReduction {
                generators: elements.clone(),
                ideal: span,
                reduction_number: r,
                seed: Some(s),
                seeds_tried: seeds_tried.clone(),
                coefficients: matrix,
            };
            return Ok(TameSequence { elements, witnesses, reduction, spans_target: true });
        }
        Err(Error::SearchExhausted { seeds: seeds_tried })
    }

    /// Verdicts of `closure(I^{n+1}) = J · closure(I^n)` for `n = 0..=window`.
    pub fn rr_reduction_number(&self, reduction: &MinimalReduction<F>, window: u32) -> Result<RRReductionReport> {
        let mut verdicts = Vec::with_capacity(window as usize + 1);
        for n in 0..=window {
            let lhs = self.rr.closure_ideal(n + 1)?;
            verdicts.push(product_generates(&reduction.generators, &self.rr.closure_ideal(n)?, &lhs)?);
        }
        let rr_number = stable_suffix_start(&verdicts);
        Ok(RRReductionReport { window, verdicts, rr_number, certified: false })
    }

    /// Compares `r~_J(I)` with `r_J(I)` and checks that closedness of
    /// `I^r` propagates to all higher powers in the window.
    pub fn verify_main_inequality(
        &self,
        reduction: &MinimalReduction<F>,
        window: Option<u32>,
    ) -> Result<MainInequalityReport> {
        let report = self.reduction_number(reduction)?;
        let r = report.reduction_number;
        let window = window.unwrap_or_else(|| default_rr_window(r));
        let rr = self.rr_reduction_number(reduction, window)?;
        let passed = matches!(rr.rr_number, Some(m) if m <= r);
        let hypothesis = self.rr.is_power_closed(r)?;
        let mut propagation_failures = Vec::new();
        if hypothesis {
            for n in r..=window {
                if !self.rr.is_power_closed(n)? {
                    propagation_failures.push(n);
                }
            }
        }
        Ok(MainInequalityReport {
            reduction_number: r,
            rr_reduction_number: rr.rr_number,
            window,
            verdicts: rr.verdicts,
            passed,
            closed_at_r: hypothesis,
            propagation_failures,
        })
    }
}

/// Decides `target = (generators) · base` in the local ring, given that
/// `(generators) · base ⊆ target` and `target` is `m`-primary. By Nakayama's
/// lemma this holds iff `target ⊆ (generators) · base + m · target`.
pub fn product_generates<F: Field>(
    generators: &[Polynomial<F>],
    base: &Ideal<F>,
    target: &Ideal<F>,
) -> Result<bool> {
    let ring = target.ring();
    if target.is_unit()? {
        return Ok(base.is_unit()? && generators.iter().any(|g| g.order_at_origin() == Some(0)));
    }
    let mut gens = Vec::new();
    for g in generators {
        for b in base.generators() {
            gens.push(g.mul(b)?);
        }
    }
    gens.extend(ideal_product(target, &Ideal::maximal_power(ring, 1))?.generators().iter().cloned());
    Ideal::new(ring, gens)?.contains(target)
}

/// Default window for the Ratliff-Rush reduction number: `max(r + 3, 6)`.
pub fn default_rr_window(r: u32) -> u32 {
    (r + 3).max(6)
}

/// Least `m` such that all verdicts from `m` to the end are true.
fn stable_suffix_start(verdicts: &[bool]) -> Option<u32> {
    if !verdicts.last().copied().unwrap_or(false) {
        return None;
    }
    let falses = verdicts.iter().rposition(|v| !v);
    Some(falses.map(|i| i as u32 + 1).unwrap_or(0))
}

fn combine<F: Field>(
    ring: &Arc<crate::ring::PolyRing<F>>,
    coefficients: &[F::Elem],
    gens: &[Polynomial<F>],
) -> Result<Polynomial<F>> {
    let mut acc = Polynomial::zero(ring);
    for (c, g) in coefficients.iter().zip(gens) {
        acc = acc.add(&g.scale(c))?;
    }
    Ok(acc)
}

fn is_invertible<F: Field>(field: &F, matrix: &[Vec<F::Elem>]) -> bool {
    let n = matrix.len();
    let mut a: Vec<Vec<F::Elem>> = matrix.to_vec();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !field.is_zero(&a[r][col])) else { return false };
        a.swap(col, pivot);
        let inv = field.inv(&a[col][col]);
        for r in (col + 1)..n {
            let factor = field.mul(&a[r][col], &inv);
            for c in col..n {
                let v = field.sub(&a[r][c], &field.mul(&factor, &a[col][c]));
                a[r][c] = v;
            }
        }
    }
    true
}

#[derive(Clone, Debug)]
pub struct ReductionReport<F: Field> {
    pub generators: Vec<Polynomial<F>>,
    pub reduction_number: u32,
    /// `(n, I^{n+1} == J I^n)` for `n = r..=r+3`.
    pub chain_check: Vec<(u32, bool)>,
    /// `I^r != J I^{r-1}`, when `r ≥ 1`.
    pub previous_differs: Option<bool>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericReductionNumber {
    /// Minimum over the trials; an upper bound for `r(I)`.
    pub upper_bound: u32,
    /// `(seed, r_J(I))` per trial.
    pub per_trial: Vec<(u64, u32)>,
}

#[derive(Clone, Debug)]
pub struct SuperficialWitness<F: Field> {
    pub element: Polynomial<F>,
    pub k0: u32,
    pub end: u32,
    pub checks: Vec<(u32, bool)>,
    pub intersected_checks: Vec<(u32, bool)>,
}

#[derive(Clone, Debug)]
pub enum SuperficialVerdict<F: Field> {
    Witness(SuperficialWitness<F>),
    Failure { first_violated: u32 },
}

impl<F: Field> SuperficialVerdict<F> {
    pub fn witness(&self) -> Option<&SuperficialWitness<F>> {
        match self {
            SuperficialVerdict::Witness(w) => Some(w),
            SuperficialVerdict::Failure { .. } => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct TameSequence<F: Field> {
    pub elements: Vec<Polynomial<F>>,
    pub witnesses: Vec<SuperficialWitness<F>>,
    /// The reduction generated by `elements`.
    pub reduction: MinimalReduction<F>,
    pub spans_target: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RRReductionReport {
    pub window: u32,
    /// Entry `n` is the verdict of `closure(I^{n+1}) == J closure(I^n)`.
    pub verdicts: Vec<bool>,
    /// Least `m` with all verdicts on `[m, window]` true; `None` when the
    /// last verdict is false.
    pub rr_number: Option<u32>,
    /// Always `false`: only a finite window is checked.
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MainInequalityReport {
    pub reduction_number: u32,
    pub rr_reduction_number: Option<u32>,
    pub window: u32,
    pub verdicts: Vec<bool>,
    /// `r~_J(I) ≤ r_J(I)`.
    pub passed: bool,
    /// Whether `I^r` is Ratliff-Rush closed.
    pub closed_at_r: bool,
    /// Powers `n` in `[r, window]` that are not closed although `I^r` is.
    pub propagation_failures: Vec<u32>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::parse::parse_polynomial;
    use crate::ring::PolyRing;
    use crate::rr::RrConfig;

    fn context(s: &str) -> ReductionContext<PrimeField> {
        let r = PolyRing::from_spec("x,y", PrimeField::default()).unwrap();
        let i = Ideal::parse(&r, s).unwrap();
        ReductionContext::new(Arc::new(RatliffRush::new(i, RrConfig::default())), ReductionConfig::default()).unwrap()
    }

    #[test]
    fn suffix_start() {
        assert_eq!(stable_suffix_start(&[false, true, true]), Some(1));
        assert_eq!(stable_suffix_start(&[true, false, true, true]), Some(2));
        assert_eq!(stable_suffix_start(&[true, true]), Some(0));
        assert_eq!(stable_suffix_start(&[true, false]), None);
    }

    #[test]
    fn derived_seeds_are_distinct() {
        assert_eq!(derive_seed(5, 0), 5);
        assert_ne!(derive_seed(5, 1), derive_seed(5, 2));
    }

    #[test]
    fn maximal_ideal_is_its_own_reduction() {
        let ctx = context("x, y");
        let r = ctx.ideal().ring().clone();
        let gens = vec![parse_polynomial("x", &r).unwrap(), parse_polynomial("y", &r).unwrap()];
        assert_eq!(ctx.is_reduction(&gens, 5).unwrap(), Some(0));
        let j = ctx.sample_minimal_reduction(1).unwrap();
        assert_eq!(j.reduction_number, 0);
        let report = ctx.verify_main_inequality(&j, None).unwrap();
        assert!(report.passed);
        assert_eq!(report.rr_reduction_number, Some(0));
    }

    #[test]
    fn pure_squares_reduce_the_square_of_m() {
        let ctx = context("x^2, x*y, y^2");
        let r = ctx.ideal().ring().clone();
        let gens = vec![parse_polynomial("x^2", &r).unwrap(), parse_polynomial("y^2", &r).unwrap()];
        assert_eq!(ctx.is_reduction(&gens, 5).unwrap(), Some(1));
        let not_in = vec![parse_polynomial("x", &r).unwrap(), parse_polynomial("y^2", &r).unwrap()];
        assert_eq!(ctx.is_reduction(&not_in, 5).unwrap_err(), Error::JNotContained);
        // x^2, x*y is not m-primary, hence not a reduction
        let degenerate = vec![parse_polynomial("x^2", &r).unwrap(), parse_polynomial("x*y", &r).unwrap()];
        assert_eq!(ctx.is_reduction(&degenerate, 5).unwrap(), None);
    }

    #[test]
    fn superficial_variable_and_nonsuperficial_square() {
        let ctx = context("x, y");
        let r = ctx.ideal().ring().clone();
        let x = parse_polynomial("x", &r).unwrap();
        let w = ctx.is_superficial_bounded(&x, None, None).unwrap();
        assert_eq!(w.witness().unwrap().k0, 0);
        // x^2 ∉ I \ I^2 in the right way: (m^{m+1} : x^2) = m^{m-1} != m^m
        let x2 = parse_polynomial("x^2", &r).unwrap();
        match ctx.is_superficial_bounded(&x2, Some(0), Some(3)).unwrap() {
            SuperficialVerdict::Failure { first_violated } => assert_eq!(first_violated, 1),
            v => panic!("unexpected {v:?}"),
        }
    }
}
