//! Single computations on one ideal, rendered as JSON.

use std::sync::Arc;
use std::time::Instant;

use rrlab_core::hilbert::{hilbert_coefficients, hilbert_samuel, DEFAULT_AGREEMENT_WINDOW, DEFAULT_HILBERT_DEPTH};
use rrlab_core::ops::{colength, ideal_colon, PowerCache};
use rrlab_core::reduction::{ReductionConfig, ReductionContext};
use rrlab_core::rr::{gr_depth_positive_bounded, rr_filtration, DepthVerdict, RatliffRush, RrConfig, DEFAULT_FILTRATION_DEPTH};
use rrlab_core::{parse_polynomial, Field, Ideal, PolyRing, PrimeField, Rationals};
use serde_json::{json, Value};

use crate::cache::Cache;
use crate::corpus::corpus_entry;
use crate::report::{Check, IdealSource, JobSpec, Params, RingSpec, VerdictReport};
use crate::HarnessError;

pub const COMMANDS: [&str; 7] =
    ["closure", "power-closure", "reduction-number", "rr-reduction-number", "colon", "hilbert", "filtration"];

type Result<T, E = HarnessError> = std::result::Result<T, E>;

/// Resolves the ring and generators of a job, reading the corpus if needed.
pub fn resolve_input(job: &JobSpec) -> Result<(RingSpec, String)> {
    match &job.ideal {
        Some(IdealSource::Inline { text }) => {
            let ring = job.ring.clone().unwrap_or_else(|| RingSpec::new("x,y", rrlab_core::DEFAULT_PRIME as u64));
            Ok((ring, text.clone()))
        }
        Some(IdealSource::Corpus { path, index }) => {
            let entry = corpus_entry(path, *index)?;
            Ok((entry.ring, entry.generators.join(", ")))
        }
        None => Err(HarnessError::Config("an ideal is required (--ideal or --corpus with --index)".into())),
    }
}

/// Runs a compute job, consulting the cache for a previous identical job.
pub fn run_compute(job: &JobSpec, cache: Option<&Cache>) -> Result<VerdictReport> {
    let start = Instant::now();
    let crate::report::Command::Compute { op } = &job.command else {
        return Err(HarnessError::Config("not a compute job".into()));
    };
    if !COMMANDS.contains(&op.as_str()) {
        return Err(HarnessError::UnknownCommand { name: op.clone(), known: COMMANDS.join(", ") });
    }
    let (ring, text) = resolve_input(job)?;
    let mut report = VerdictReport::new(job.clone(), ring.char);
    let (result, checks) = if ring.char == 0 {
        let r = PolyRing::new(&ring.vars, Rationals, Default::default())?;
        cached(cache, op, &ring, &r, &text, job, &mut report)?
    } else {
        let field = PrimeField::new(u32::try_from(ring.char).map_err(|_| rrlab_core::Error::NotPrime(ring.char))?)?;
        let r = PolyRing::new(&ring.vars, field, Default::default())?;
        cached(cache, op, &ring, &r, &text, job, &mut report)?
    };
    report.result = Some(result);
    report.checks = checks;
    report.settle();
    report.runtime.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

fn cached<F: Field>(
    cache: Option<&Cache>,
    op: &str,
    spec: &RingSpec,
    ring: &Arc<PolyRing<F>>,
    text: &str,
    job: &JobSpec,
    report: &mut VerdictReport,
) -> Result<(Value, Vec<Check>)> {
    let ideal = Ideal::parse(ring, text)?;
    let canonical: Vec<String> = ideal.groebner()?.elements().iter().map(|g| g.to_string()).collect();
    let key = ("compute", op, spec, &canonical, &job.params, job.seed);
    if let Some(c) = cache {
        if let Some(hit) = c.get::<_, (Value, Vec<Check>)>(&key) {
            report.runtime.cache_hits += 1;
            return Ok(hit);
        }
        report.runtime.cache_misses += 1;
    }
    let out = compute(op, ideal, &job.params, job.seed)?;
    if let Some(c) = cache {
        if let Err(e) = c.put(&key, &out) {
            log::warn!("cache write failed: {e}");
        }
    }
    Ok(out)
}

fn rr_config(params: &Params) -> RrConfig {
    RrConfig {
        window: params.window.unwrap_or(rrlab_core::rr::DEFAULT_WINDOW),
        cap: params.cap.unwrap_or(rrlab_core::rr::DEFAULT_CHAIN_CAP),
    }
}

fn reduction_context<F: Field>(ideal: Ideal<F>, params: &Params) -> Result<ReductionContext<F>> {
    let config = ReductionConfig { max_m: params.max_m.unwrap_or(ReductionConfig::default().max_m), ..Default::default() };
    Ok(ReductionContext::new(Arc::new(RatliffRush::new(ideal, rr_config(params))), config)?)
}

fn gens<F: Field>(ideal: &Ideal<F>) -> Vec<String> {
    ideal.generators().iter().map(|g| g.to_string()).collect()
}

/// `I`, `I^k`, `m^k` or an explicit parenthesized generator list.
fn operand<F: Field>(expr: &str, cache: &PowerCache<F>) -> Result<Ideal<F>> {
    let e = expr.trim();
    let ring = cache.base().ring();
    if let Some(inner) = e.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
        return Ok(Ideal::parse(ring, inner)?);
    }
    let (head, exp) = match e.split_once('^') {
        Some((h, k)) => {
            let k: u32 =
                k.trim().parse().map_err(|_| HarnessError::Config(format!("bad exponent in {expr:?}")))?;
            (h.trim(), k)
        }
        None => (e, 1),
    };
    match head {
        "I" => Ok((*cache.power(exp)?).clone()),
        "m" => Ok(Ideal::maximal_power(ring, exp)),
        _ => Err(HarnessError::Config(format!("operand {expr:?} must be I^k, m^k or (generators)"))),
    }
}

pub fn compute<F: Field>(op: &str, ideal: Ideal<F>, params: &Params, seed: u64) -> Result<(Value, Vec<Check>)> {
    let mut checks = Vec::new();
    let value = match op {
        "closure" | "power-closure" => {
            let m = if op == "closure" { 1 } else { params.power.unwrap_or(1) };
            let engine = RatliffRush::new(ideal, rr_config(params));
            let c = engine.closure(m)?;
            let closed = engine.is_power_closed(m)?;
            json!({
                "power": m,
                "generators": gens(&c.ideal),
                "closed": closed,
                "stab_index": c.stab_index,
                "window": c.window,
                "certified": false,
            })
        }
        "reduction-number" => {
            let ctx = reduction_context(ideal, params)?;
            let j = ctx.sample_minimal_reduction(seed)?;
            let rep = ctx.reduction_number(&j)?;
            let mut v = json!({
                "reduction": j.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                "seed": j.seed,
                "seeds_tried": j.seeds_tried,
                "r": rep.reduction_number,
                "chain_check": rep.chain_check,
                "previous_differs": rep.previous_differs,
            });
            if let Some(t) = params.trials.filter(|&t| t > 1) {
                let g = ctx.reduction_number_generic(t, seed)?;
                v["upper_bound"] = json!(g.upper_bound);
                v["per_trial"] = json!(g.per_trial);
            }
            checks.push(Check::new(
                "reduction chain",
                rep.chain_check.iter().all(|(_, ok)| *ok),
                format!("I^(n+1) = J I^n for n = r..r+3: {:?}", rep.chain_check),
            ));
            v
        }
        "rr-reduction-number" => {
            let ctx = reduction_context(ideal, params)?;
            let j = ctx.sample_minimal_reduction(seed)?;
            let rep = ctx.verify_main_inequality(&j, params.rr_window)?;
            checks.push(Check::new(
                "rr_J(I) <= r_J(I)",
                rep.passed,
                format!("r = {}, rr = {:?}", rep.reduction_number, rep.rr_reduction_number),
            ));
            if rep.closed_at_r {
                checks.push(Check::new(
                    "closed powers propagate",
                    rep.propagation_failures.is_empty(),
                    format!("unclosed powers beyond r: {:?}", rep.propagation_failures),
                ));
            }
            json!({
                "reduction": j.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                "seed": j.seed,
                "r": rep.reduction_number,
                "rr": rep.rr_reduction_number,
                "window": rep.window,
                "verdicts": rep.verdicts,
                "closed_at_r": rep.closed_at_r,
                "certified": false,
            })
        }
        "colon" => {
            let powers = PowerCache::new(ideal);
            let num = operand(params.num.as_deref().unwrap_or("I"), &powers)?;
            let den = operand(params.den.as_deref().unwrap_or("I"), &powers)?;
            let colon = ideal_colon(&num, &den)?;
            let mut v = json!({ "generators": gens(&colon) });
            if let Some(m) = &params.member {
                let f = parse_polynomial(m, colon.ring())?;
                v["member"] = json!(m);
                v["contained"] = json!(colon.contains_element(&f)?);
            }
            v
        }
        "hilbert" => {
            let powers = PowerCache::new(ideal);
            let depth = params.depth.unwrap_or(DEFAULT_HILBERT_DEPTH);
            if params.coeffs {
                let h = hilbert_coefficients(&powers, depth, params.agreement.unwrap_or(DEFAULT_AGREEMENT_WINDOW))?;
                json!({
                    "lengths": h.lengths,
                    "coefficients": h.coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "postulation": h.postulation,
                    "agreement_window": h.agreement_window,
                })
            } else {
                json!({ "colength": colength(powers.base())?, "lengths": hilbert_samuel(&powers, depth)? })
            }
        }
        "filtration" => {
            let engine = RatliffRush::new(ideal, rr_config(params));
            let depth = params.depth.unwrap_or(DEFAULT_FILTRATION_DEPTH);
            let f = rr_filtration(&engine, depth)?;
            let verdict = match gr_depth_positive_bounded(&engine, depth)? {
                DepthVerdict::Positive => json!({"verdict": "positive"}),
                DepthVerdict::NotPositive { first_unclosed } => {
                    json!({"verdict": "not-positive", "first_unclosed": first_unclosed})
                }
                DepthVerdict::Unconfirmed { reason } => json!({"verdict": "unconfirmed", "reason": reason}),
            };
            let table: Vec<Value> = f
                .table
                .iter()
                .map(|(m, c)| json!({"power": m, "closed": f.rr_closed[m], "stab_index": f.stab_index[m], "closure": gens(c)}))
                .collect();
            json!({
                "depth": depth,
                "table": table,
                "closed_from": f.closed_from(),
                "eventually_closed": f.eventually_closed(),
                "gr_depth": verdict,
                "certified": false,
            })
        }
        other => return Err(HarnessError::UnknownCommand { name: other.to_string(), known: COMMANDS.join(", ") }),
    };
    Ok((value, checks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Command;

    fn job(op: &str, ideal: &str) -> JobSpec {
        let mut j = JobSpec::new(Command::Compute { op: op.into() });
        j.ideal = Some(IdealSource::Inline { text: ideal.into() });
        j
    }

    #[test]
    fn closure_contains_x2y2() {
        let r = run_compute(&job("closure", "x^4,x^3*y,x*y^3,y^4"), None).unwrap();
        let g = r.result.unwrap()["generators"].clone();
        assert!(g.as_array().unwrap().iter().any(|v| v == "x^2*y^2"), "{g}");
    }

    #[test]
    fn hilbert_coefficients_of_squares() {
        let mut j = job("hilbert", "x^2,y^2");
        j.params.coeffs = true;
        let r = run_compute(&j, None).unwrap();
        assert_eq!(r.result.unwrap()["coefficients"], json!(["4", "0", "0"]));
    }

    #[test]
    fn colon_membership() {
        let mut j = job("colon", "x^7, x^6*y, x^2*y^5, y^7");
        j.params.num = Some("I^4".into());
        j.params.den = Some("I".into());
        j.params.member = Some("x^17*y^4".into());
        let r = run_compute(&j, None).unwrap();
        assert_eq!(r.result.unwrap()["contained"], json!(true));
    }

    #[test]
    fn rationals_and_unknown_commands() {
        let mut j = job("rr-reduction-number", "x^4,x^3*y,x*y^3,y^4");
        j.ring = Some(RingSpec::new("x,y", 0));
        let r = run_compute(&j, None).unwrap();
        assert!(r.passed(), "{r}");
        assert!(matches!(run_compute(&job("nope", "x"), None), Err(HarnessError::UnknownCommand { .. })));
        let err = run_compute(&job("closure", "x^2 +"), None).unwrap_err();
        assert!(err.is_configuration());
    }

    #[test]
    fn cache_hit_equals_cold_result() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let j = job("filtration", "x^4,x^3*y,x*y^3,y^4");
        let cold = run_compute(&j, Some(&cache)).unwrap();
        let warm = run_compute(&j, Some(&cache)).unwrap();
        assert_eq!(warm.runtime.cache_hits, 1);
        assert_eq!(cold.comparable(), warm.comparable());
    }
}
