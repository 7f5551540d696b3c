//! Randomized verification suites, one per lemma, proposition, remark and
//! theorem of the reduction-number comparison.
//!
//! Every instance is generated from a seed derived from the suite seed and
//! its index, so instances are independent and may run in parallel; results
//! are collected in index order.

use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rrlab_core::ops::{colon_by_element, colon_by_generators, colon_element_equals, ideal_colon, ideal_product, ideal_sum, PowerCache};
use rrlab_core::reduction::{
    default_rr_window, derive_seed, MinimalReduction, ReductionConfig, ReductionContext, TameSequence,
};
use rrlab_core::rr::{RatliffRush, RrConfig};
use rrlab_core::{Error, Ideal, Polynomial, PrimeField};
use serde::Serialize;

use crate::cache::Cache;
use crate::instances::{random_equigenerated_monomial_ideal, random_form, random_mprimary_monomial_ideal, standard_ring};
use crate::report::{
    Check, Command, InstanceOutcome, InstanceStatus, JobSpec, Params, Runtime, SuiteSummary, VerdictReport, Witness,
};
use crate::HarnessError;

type Result<T, E = Error> = std::result::Result<T, E>;
type F = PrimeField;

pub const SUITES: [&str; 10] = [
    "lemma21",
    "lemma22",
    "lemma23",
    "prop24",
    "remark25",
    "lemma27",
    "lemma28",
    "lemma29",
    "theorem210",
    "remark211",
];

/// Suites whose violations refute a main result and stop the run.
fn halts_on_failure(name: &str) -> bool {
    matches!(name, "prop24" | "theorem210")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceSpec {
    pub index: usize,
    pub seed: u64,
    pub dim: usize,
    pub degree_bound: u32,
    pub extra_gens: usize,
}

struct Defaults {
    dims: &'static [(usize, u32, u32)],
}

/// `(dimension, trials, degree bound)` per suite.
fn defaults(name: &str) -> Defaults {
    let dims: &'static [(usize, u32, u32)] = match name {
        "lemma21" => &[(3, 50, 2)],
        "lemma22" => &[(2, 50, 6)],
        "lemma23" => &[(2, 50, 6)],
        "prop24" => &[(2, 100, 8)],
        "remark25" => &[(2, 50, 8)],
        "lemma27" => &[(2, 13, 8), (3, 12, 4)],
        "lemma28" => &[(3, 50, 3)],
        "lemma29" => &[(3, 50, 3)],
        "theorem210" => &[(2, 100, 8), (3, 25, 5)],
        "remark211" => &[(3, 50, 4)],
        _ => &[],
    };
    Defaults { dims }
}

pub fn plan(name: &str, params: &Params, seed: u64) -> Result<Vec<InstanceSpec>, HarnessError> {
    if !SUITES.contains(&name) {
        return Err(HarnessError::UnknownSuite { name: name.to_string(), known: SUITES.join(", ") });
    }
    let extra_cap = params.extra_gens.unwrap_or(3);
    let mut specs = Vec::new();
    let dims: Vec<(usize, u32, u32)> = defaults(name)
        .dims
        .iter()
        .copied()
        .filter(|(d, _, _)| params.dim.is_none_or(|want| want == *d))
        .collect();
    if dims.is_empty() {
        return Err(HarnessError::Config(format!(
            "suite {name} has no instances in dimension {}",
            params.dim.unwrap_or(0)
        )));
    }
    for (dim, trials, bound) in dims {
        for _ in 0..params.trials.unwrap_or(trials) {
            let index = specs.len();
            let s = derive_seed(seed, index as u64 + 1);
            let extra_gens = 1 + (s % extra_cap.max(1) as u64) as usize;
            let extra_gens = extra_gens.min(extra_cap);
            specs.push(InstanceSpec { index, seed: s, dim, degree_bound: params.degree_bound.unwrap_or(bound), extra_gens });
        }
    }
    Ok(specs)
}

/// Runs a suite; instances are cached by content when `cache` is given.
pub fn run_suite(name: &str, params: &Params, seed: u64, cache: Option<&Cache>) -> Result<VerdictReport, HarnessError> {
    let start = Instant::now();
    let specs = plan(name, params, seed)?;
    let (hits0, misses0) = cache.map_or((0, 0), |c| (c.hits(), c.misses()));
    let mut outcomes: Vec<InstanceOutcome> = specs
        .par_iter()
        .map(|spec| {
            let key = ("suite-instance", name, params, spec);
            if let Some(hit) = cache.and_then(|c| c.get::<_, InstanceOutcome>(&key)) {
                return hit;
            }
            let t = Instant::now();
            let outcome = run_instance(name, params, spec);
            log::debug!("{name}: instance {} took {:?}", spec.index, t.elapsed());
            if let Some(c) = cache {
                if let Err(e) = c.put(&key, &outcome) {
                    log::warn!("cache write failed: {e}");
                }
            }
            outcome
        })
        .collect();

    let mut summary = SuiteSummary::default();
    if halts_on_failure(name) {
        if let Some(pos) = outcomes.iter().position(|o| o.status == InstanceStatus::Fail) {
            let dump = &outcomes[pos];
            log::error!(
                "{name}: violation at instance {} (seed {}), halting: {}",
                dump.index,
                dump.seed,
                serde_json::to_string(dump).expect("serializable")
            );
            outcomes.truncate(pos + 1);
            summary.halted_at = Some(pos);
        }
    }
    summary.trials = outcomes.len();
    for o in &outcomes {
        match &o.status {
            InstanceStatus::Pass => summary.passed += 1,
            InstanceStatus::Fail => summary.failed += 1,
            InstanceStatus::Skipped { reason } => {
                log::info!("{name}: instance {} skipped: {reason}", o.index);
                summary.skipped += 1
            }
            InstanceStatus::Error { .. } => summary.errors += 1,
        }
    }

    let mut job = JobSpec::new(Command::Suite { name: name.to_string() });
    job.params = params.clone();
    job.seed = seed;
    let mut report = VerdictReport::new(job, rrlab_core::DEFAULT_PRIME as u64);
    report.checks.push(Check::new(
        "no violations",
        summary.failed == 0,
        format!("{} of {} instances failed", summary.failed, summary.trials),
    ));
    report.checks.push(Check::new(
        "no computation errors",
        summary.errors == 0,
        format!("{} of {} instances errored", summary.errors, summary.trials),
    ));
    report.summary = Some(summary);
    report.instances = outcomes;
    report.settle();
    report.runtime = Runtime {
        elapsed_ms: start.elapsed().as_millis() as u64,
        cache_hits: cache.map_or(0, |c| c.hits() - hits0),
        cache_misses: cache.map_or(0, |c| c.misses() - misses0),
    };
    Ok(report)
}

/// Collects the checks of one instance.
struct Outcome {
    checks: Vec<Check>,
    notes: Vec<String>,
    skipped: Option<String>,
}

impl Outcome {
    fn new() -> Self {
        Self { checks: Vec::new(), notes: Vec::new(), skipped: None }
    }

    fn skip(reason: impl Into<String>) -> Self {
        Self { checks: Vec::new(), notes: Vec::new(), skipped: Some(reason.into()) }
    }

    fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// One check summarizing `total` cases with the given failures.
    fn record(&mut self, name: &str, total: usize, failures: Vec<String>) {
        let passed = failures.is_empty();
        let detail = if passed {
            format!("{total} cases hold")
        } else {
            format!("{} of {total} cases fail: {}", failures.len(), failures.join("; "))
        };
        self.checks.push(Check::new(name, passed, detail));
    }
}

pub fn run_instance(name: &str, params: &Params, spec: &InstanceSpec) -> InstanceOutcome {
    let ring = standard_ring(spec.dim);
    let ring_text = ring.vars().join(",");
    let mut instance = String::new();
    let result = (|| -> Result<Outcome> {
        if name == "lemma21" {
            let (text, out) = lemma21(params, spec)?;
            instance = text;
            return Ok(out);
        }
        let ideal = if name == "lemma28" {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            random_equigenerated_monomial_ideal(spec.dim, rng.gen_range(2..=spec.degree_bound.max(2)), spec.extra_gens, spec.seed)?
        } else {
            random_mprimary_monomial_ideal(spec.dim, spec.degree_bound, spec.extra_gens, spec.seed)?
        };
        instance = ideal.to_string();
        log::debug!("{name}: instance {} is ({instance})", spec.index);
        let ctx = context(ideal, params)?;
        match name {
            "lemma22" => lemma22(&ctx, params, spec),
            "lemma23" | "lemma29" => lemma23_29(&ctx, params, spec),
            "prop24" | "theorem210" => main_inequality(&ctx, params, spec),
            "remark25" | "remark211" => remark(&ctx, params, spec),
            "lemma27" => lemma27(&ctx, spec),
            "lemma28" => lemma28(&ctx, params, spec),
            other => unreachable!("suite {other} is planned but not dispatched"),
        }
    })();
    let (status, mut checks, notes) = match result {
        Ok(out) => match out.skipped {
            Some(reason) => (InstanceStatus::Skipped { reason }, out.checks, out.notes),
            None if out.checks.iter().all(|c| c.passed) => (InstanceStatus::Pass, out.checks, out.notes),
            None => (InstanceStatus::Fail, out.checks, out.notes),
        },
        Err(e) => (InstanceStatus::Error { message: e.to_string() }, Vec::new(), Vec::new()),
    };
    for c in checks.iter_mut().filter(|c| !c.passed) {
        c.witness = Some(Witness {
            seed: spec.seed,
            ring: ring_text.clone(),
            instance: instance.clone(),
            data: notes.join("; "),
        });
    }
    InstanceOutcome { index: spec.index, seed: spec.seed, dim: spec.dim, ideal: instance, status, checks, notes }
}

fn context(ideal: Ideal<F>, params: &Params) -> Result<ReductionContext<F>> {
    let rr = RrConfig {
        window: params.window.unwrap_or(rrlab_core::rr::DEFAULT_WINDOW),
        cap: params.cap.unwrap_or(rrlab_core::rr::DEFAULT_CHAIN_CAP),
    };
    let config = ReductionConfig { max_m: params.max_m.unwrap_or(ReductionConfig::default().max_m), ..Default::default() };
    ReductionContext::new(Arc::new(RatliffRush::new(ideal, rr)), config)
}

fn show(gens: &[Polynomial<F>]) -> String {
    gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")
}

fn describe(out: &mut Outcome, label: &str, j: &MinimalReduction<F>) {
    out.note(format!("{label} = ({}), r_J = {}, seed {:?}", show(&j.generators), j.reduction_number, j.seed));
}

/// A sampled minimal reduction regenerated by a tame superficial sequence;
/// `None` when the search is exhausted.
fn tame_reduction(ctx: &ReductionContext<F>, seed: u64) -> Result<Option<(MinimalReduction<F>, TameSequence<F>)>> {
    let j = ctx.sample_minimal_reduction(derive_seed(seed, 77))?;
    match ctx.tame_superficial_sequence(Some(&j), derive_seed(seed, 78)) {
        Ok(t) => Ok(Some((j, t))),
        Err(Error::SearchExhausted { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Least `k` such that `(I^{m+1} + (x1)) : x2 = I^m + (x1)` on a window of
/// `superficial_span + 1` consecutive `m` starting at `k`: `x2` is superficial
/// for `I` modulo `x1`.
fn superficial_modulo(ctx: &ReductionContext<F>, x1: &Polynomial<F>, x2: &Polynomial<F>) -> Result<Option<u32>> {
    let ring = ctx.ideal().ring();
    let principal = Ideal::new(ring, vec![x1.clone()])?;
    let span = ctx.config.superficial_span;
    let mut run_start: Option<u32> = None;
    for m in 0..=ctx.config.superficial_search + span {
        let a = ideal_sum(&*ctx.powers().power(m + 1)?, &principal)?;
        let b = ideal_sum(&*ctx.powers().power(m)?, &principal)?;
        if colon_element_equals(&a, x2, &b)? {
            let start = *run_start.get_or_insert(m);
            if m - start >= span {
                return Ok(Some(start));
            }
        } else {
            run_start = None;
            if m >= ctx.config.superficial_search {
                break;
            }
        }
    }
    Ok(None)
}

/// Dimension-two hypothesis: the tame elements form a superficial sequence.
fn superficial_sequence_note(ctx: &ReductionContext<F>, tame: &TameSequence<F>, out: &mut Outcome) -> Result<bool> {
    if tame.elements.len() != 2 {
        return Ok(true);
    }
    match superficial_modulo(ctx, &tame.elements[0], &tame.elements[1])? {
        Some(k) => {
            out.note(format!("second element superficial modulo the first from m = {k}"));
            Ok(true)
        }
        None => Ok(false),
    }
}

fn lemma21(params: &Params, spec: &InstanceSpec) -> Result<(String, Outcome)> {
    let ring = standard_ring(spec.dim);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let s = rng.gen_range(1..=2usize);
    let mut seq = Vec::with_capacity(s + 1);
    for _ in 0..=s {
        let degree = rng.gen_range(1..=spec.degree_bound.max(1));
        seq.push(random_form(&ring, degree, &mut rng)?);
    }
    let text = format!("x = {}, a = ({})", seq[0], show(&seq[1..]));
    let mut out = Outcome::new();
    // regular sequence x, x_1, ..., x_s: each element is a nonzerodivisor
    // modulo the previous ones (homogeneous, so checked in the polynomial ring)
    for k in 1..seq.len() {
        let prev = Ideal::new(&ring, seq[..k].to_vec())?;
        if !colon_by_element(&prev, &seq[k])?.equals(&prev)? {
            return Ok((text, Outcome::skip(format!("element {k} is a zero divisor modulo the previous ones"))));
        }
    }
    let a = Ideal::new(&ring, seq[1..].to_vec())?;
    let powers = PowerCache::new(a);
    let window = params.depth.unwrap_or(6);
    let x = &seq[0];
    let (mut f1, mut f2, mut t1, mut t2) = (Vec::new(), Vec::new(), 0, 0);
    for n in 0..=window {
        let an = powers.power(n)?;
        let next = powers.power(n + 1)?;
        for (i, xi) in seq[1..].iter().enumerate() {
            t1 += 1;
            if !colon_element_equals(&next, xi, &an)? {
                f1.push(format!("n = {n}, i = {}", i + 1));
            }
        }
        t2 += 1;
        if !colon_element_equals(&an, x, &an)? {
            f2.push(format!("n = {n}"));
        }
    }
    out.record("a^{n+1} : x_i = a^n", t1, f1);
    out.record("a^n : x = a^n", t2, f2);
    Ok((text, out))
}

fn lemma22(ctx: &ReductionContext<F>, params: &Params, spec: &InstanceSpec) -> Result<Outcome> {
    let Some((j, tame)) = tame_reduction(ctx, spec.seed)? else {
        return Ok(Outcome::skip("no superficial generator found for the sampled reduction"));
    };
    let mut out = Outcome::new();
    describe(&mut out, "J", &j);
    let x = &tame.elements[0];
    let w = &tame.witnesses[0];
    out.note(format!("x = {x}, superficial on [{}, {}]", w.k0, w.end));
    let base = ctx.ideal().as_ref().clone();
    let window = params.depth.unwrap_or(5);
    let (mut f1, mut f2, mut f3, mut f4) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for m in 0..=window {
        let cm = ctx.rr.closure_ideal(m)?;
        let cm1 = ctx.rr.closure_ideal(m + 1)?;
        if !colon_element_equals(&cm1, x, &cm)? {
            f1.push(format!("m = {m}"));
        }
        if !colon_by_generators(&cm1, &j.generators)?.equals(&cm)? {
            f2.push(format!("m = {m}"));
        }
        if !ideal_colon(&cm1, &base)?.equals(&cm)? {
            f3.push(format!("m = {m}"));
        }
        let jc = ideal_product(&j.ideal, &cm1)?;
        if !colon_element_equals(&jc, x, &cm1)? {
            f4.push(format!("m = {m}"));
        }
    }
    let total = window as usize + 1;
    out.record("(i) closure(I^{m+1}) : x = closure(I^m)", total, f1);
    out.record("(ii) closure(I^{m+1}) : J = closure(I^m)", total, f2);
    out.record("(iii) closure(I^{m+1}) : I = closure(I^m)", total, f3);
    out.record("(iv) J closure(I^{m+1}) : x = closure(I^{m+1})", total, f4);
    Ok(out)
}

fn lemma23_29(ctx: &ReductionContext<F>, params: &Params, spec: &InstanceSpec) -> Result<Outcome> {
    let Some((j, tame)) = tame_reduction(ctx, spec.seed)? else {
        return Ok(Outcome::skip("no tame superficial sequence found for the sampled reduction"));
    };
    let mut out = Outcome::new();
    describe(&mut out, "J", &j);
    out.note(format!("sequence ({})", show(&tame.elements)));
    if !superficial_sequence_note(ctx, &tame, &mut out)? {
        return Ok(Outcome::skip("sampled generators are not a superficial sequence"));
    }
    let x1 = &tame.elements[0];
    let jp = PowerCache::new(tame.reduction.ideal.clone());
    let window = params.depth.unwrap_or(4);
    let mut failures = Vec::new();
    let mut total = 0;
    for m in 0..=window {
        let cm = ctx.rr.closure_ideal(m)?;
        for n in 0..=window {
            total += 1;
            let lhs = ideal_product(&*jp.power(n + 1)?, &cm)?;
            let rhs = ideal_product(&*jp.power(n)?, &cm)?;
            if !colon_element_equals(&lhs, x1, &rhs)? {
                failures.push(format!("m = {m}, n = {n}"));
            }
        }
    }
    out.record("J^{n+1} closure(I^m) : x_1 = J^n closure(I^m)", total, failures);
    Ok(out)
}

fn lemma28(ctx: &ReductionContext<F>, params: &Params, spec: &InstanceSpec) -> Result<Outcome> {
    let Some((j, tame)) = tame_reduction(ctx, spec.seed)? else {
        return Ok(Outcome::skip("no tame superficial sequence found for the sampled reduction"));
    };
    let mut out = Outcome::new();
    describe(&mut out, "J", &j);
    // the colons below are by non-m-primary ideals; homogeneity makes the
    // polynomial computation agree with the local one
    let degrees: Vec<Option<u64>> = tame.elements.iter().map(|e| e.total_degree()).collect();
    if !tame.elements.iter().all(|e| e.is_homogeneous()) {
        return Ok(Outcome::skip("tame sequence is not homogeneous"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(spec.seed, 5));
    let s = rng.gen_range(1..tame.elements.len());
    let x = &tame.elements[0];
    let a = Ideal::new(ctx.ideal().ring(), tame.elements[1..=s].to_vec())?;
    out.note(format!("x = {x}, a = ({}), degrees {degrees:?}", show(a.generators())));
    let ap = PowerCache::new(a);
    let window = params.depth.unwrap_or(3);
    let mut failures = Vec::new();
    let mut total = 0;
    for m in 0..=window {
        let cm = ctx.rr.closure_ideal(m)?;
        let cm1 = ctx.rr.closure_ideal(m + 1)?;
        for n in 0..=window {
            total += 1;
            let an = ap.power(n)?;
            let lhs = ideal_product(&an, &cm1)?;
            let rhs = ideal_product(&an, &cm)?;
            if !colon_element_equals(&lhs, x, &rhs)? {
                failures.push(format!("m = {m}, n = {n}"));
            }
        }
    }
    out.record("a^n closure(I^{m+1}) : x = a^n closure(I^m)", total, failures);
    Ok(out)
}

/// `r~_J(I) ≤ r_J(I)` for two sampled reductions, regenerated by tame
/// superficial sequences (superficial sequences in dimension two).
fn main_inequality(ctx: &ReductionContext<F>, params: &Params, spec: &InstanceSpec) -> Result<Outcome> {
    let mut out = Outcome::new();
    let mut verified = 0;
    for k in 0..2u64 {
        let Some((j, tame)) = tame_reduction(ctx, derive_seed(spec.seed, 100 + k))? else {
            out.note(format!("reduction {k}: no tame superficial sequence, skipped"));
            continue;
        };
        describe(&mut out, &format!("J{k}"), &j);
        if !superficial_sequence_note(ctx, &tame, &mut out)? {
            out.note(format!("reduction {k}: not a superficial sequence, skipped"));
            continue;
        }
        verified += 1;
        let reduction = &tame.reduction;
        let report = ctx.verify_main_inequality(reduction, params.rr_window)?;
        out.note(format!(
            "J{k}: sequence ({}), r = {}, rr = {:?}, verdicts {:?}",
            show(&reduction.generators),
            report.reduction_number,
            report.rr_reduction_number,
            report.verdicts
        ));
        out.checks.push(Check::new(
            format!("J{k}: rr_J(I) <= r_J(I)"),
            report.passed,
            format!("r = {}, rr = {:?}, window {}", report.reduction_number, report.rr_reduction_number, report.window),
        ));
        let mut contained = Vec::new();
        for n in 0..=report.window {
            let cn1 = ctx.rr.closure_ideal(n + 1)?;
            let cn = ctx.rr.closure_ideal(n)?;
            for l in &reduction.generators {
                for g in cn.generators() {
                    if !cn1.contains_element(&l.mul(g)?)? {
                        contained.push(format!("n = {n}"));
                    }
                }
            }
        }
        contained.dedup();
        out.record(&format!("J{k}: J closure(I^n) in closure(I^{{n+1}})"), report.window as usize + 1, contained);
    }
    if verified == 0 {
        return Ok(Outcome { skipped: Some("no sampled reduction met the hypotheses".into()), ..out });
    }
    Ok(out)
}

fn remark(ctx: &ReductionContext<F>, params: &Params, spec: &InstanceSpec) -> Result<Outcome> {
    let Some((j, tame)) = tame_reduction(ctx, spec.seed)? else {
        return Ok(Outcome::skip("no tame superficial sequence found for the sampled reduction"));
    };
    let mut out = Outcome::new();
    describe(&mut out, "J", &j);
    let r = j.reduction_number;
    if !ctx.rr.is_power_closed(r)? {
        return Ok(Outcome { skipped: Some(format!("closure(I^{r}) != I^{r}")), ..out });
    }
    let window = params.rr_window.unwrap_or_else(|| default_rr_window(r));
    let report = ctx.verify_main_inequality(&tame.reduction, Some(window))?;
    let failures = report.propagation_failures.iter().map(|n| format!("n = {n}")).collect();
    out.record(&format!("closure(I^n) = I^n for n in [{r}, {window}]"), (window - r + 1) as usize, failures);
    Ok(out)
}

fn lemma27(ctx: &ReductionContext<F>, spec: &InstanceSpec) -> Result<Outcome> {
    let j = ctx.sample_minimal_reduction(derive_seed(spec.seed, 77))?;
    let mut out = Outcome::new();
    describe(&mut out, "J", &j);
    match ctx.tame_superficial_sequence(Some(&j), derive_seed(spec.seed, 78)) {
        Ok(t) => {
            out.note(format!(
                "sequence ({}), windows {:?}",
                show(&t.elements),
                t.witnesses.iter().map(|w| (w.k0, w.end)).collect::<Vec<_>>()
            ));
            let equal = t.reduction.ideal.equals(&j.ideal)?;
            out.checks.push(Check::new("tame sequence found", true, format!("{} elements", t.elements.len())));
            out.checks.push(Check::new("span equals J", equal, format!("reduction number {}", t.reduction.reduction_number)));
        }
        Err(Error::SearchExhausted { seeds }) => {
            out.checks.push(Check::new("tame sequence found", false, format!("search exhausted, seeds {seeds:?}")));
        }
        Err(e) => return Err(e),
    }
    Ok(out)
}
