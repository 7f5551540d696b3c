//! Reproduction of the two worked examples on `k[[x, y]]`.

use std::sync::Arc;
use std::time::Instant;

use rrlab_core::hilbert::{hilbert_coefficients, DEFAULT_AGREEMENT_WINDOW, DEFAULT_HILBERT_DEPTH};
use rrlab_core::ops::ideal_colon;
use rrlab_core::reduction::{derive_seed, ReductionConfig, ReductionContext};
use rrlab_core::rr::{RatliffRush, RrConfig};
use rrlab_core::{parse_polynomial, Ideal, PolyRing, PrimeField};
use serde_json::json;

use crate::report::{Check, Command, JobSpec, Params, VerdictReport};
use crate::HarnessError;

pub const EXAMPLES: [&str; 2] = ["2.12", "2.13"];

pub const EXAMPLE_2_12: &str = "x^7, x^6*y, x^2*y^5, y^7";
pub const EXAMPLE_2_13: &str = "x^4, x^3*y, x*y^3, y^4";

const SAMPLES: u32 = 5;

fn context(text: &str, params: &Params) -> Result<ReductionContext<PrimeField>, HarnessError> {
    let ring = PolyRing::from_spec("x,y", PrimeField::default())?;
    let ideal = Ideal::parse(&ring, text)?;
    let rr = RrConfig {
        window: params.window.unwrap_or(rrlab_core::rr::DEFAULT_WINDOW),
        cap: params.cap.unwrap_or(rrlab_core::rr::DEFAULT_CHAIN_CAP),
    };
    let config = ReductionConfig { max_m: params.max_m.unwrap_or(ReductionConfig::default().max_m), ..Default::default() };
    Ok(ReductionContext::new(Arc::new(RatliffRush::new(ideal, rr)), config)?)
}

pub fn reproduce_example(id: &str, params: &Params, seed: u64) -> Result<VerdictReport, HarnessError> {
    let start = Instant::now();
    let mut job = JobSpec::new(Command::Reproduce { id: id.to_string() });
    job.params = params.clone();
    job.seed = seed;
    let mut report = VerdictReport::new(job, rrlab_core::DEFAULT_PRIME as u64);
    match id {
        "2.12" => example_2_12(&mut report, params, seed)?,
        "2.13" => example_2_13(&mut report, params, seed)?,
        _ => return Err(HarnessError::UnknownExample { id: id.to_string() }),
    }
    report.settle();
    report.runtime.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

fn example_2_12(report: &mut VerdictReport, params: &Params, seed: u64) -> Result<(), HarnessError> {
    let ctx = context(EXAMPLE_2_12, params)?;
    let ring = ctx.ideal().ring().clone();
    let generic = ctx.reduction_number_generic(SAMPLES, seed)?;
    report.checks.push(Check::new(
        "sampled-minimum reduction number = 3",
        generic.upper_bound == 3,
        format!("r_J(I) per seed {:?}", generic.per_trial),
    ));
    let witness = parse_polynomial("x^17*y^4", &ring)?;
    let i4 = ctx.powers().power(4)?;
    let colon = ideal_colon(&i4, ctx.ideal())?;
    let in_colon = colon.contains_element(&witness)?;
    report.checks.push(Check::new("x^17*y^4 in I^4 : I", in_colon, format!("I^4 : I = {colon}")));
    let in_cube = ctx.powers().power(3)?.contains_element(&witness)?;
    report.checks.push(Check::new("x^17*y^4 not in I^3", !in_cube, format!("member of I^3: {in_cube}")));
    let closure = ctx.rr.closure(3)?;
    let closed = ctx.rr.is_power_closed(3)?;
    report.checks.push(Check::new(
        "closure(I^3) != I^3",
        !closed,
        format!("closure stabilized at chain index {} (window {})", closure.stab_index, closure.window),
    ));
    report.result = Some(json!({
        "ideal": EXAMPLE_2_12,
        "reduction_numbers": generic.per_trial,
        "colon_I4_I": colon.to_string(),
        "closure_I3": closure.ideal.to_string(),
    }));
    Ok(())
}

fn example_2_13(report: &mut VerdictReport, params: &Params, seed: u64) -> Result<(), HarnessError> {
    let ctx = context(EXAMPLE_2_13, params)?;
    let generic = ctx.reduction_number_generic(SAMPLES, seed)?;
    report.checks.push(Check::new(
        "sampled-minimum reduction number = 2",
        generic.upper_bound == 2,
        format!("r_J(I) per seed {:?}", generic.per_trial),
    ));
    let hilbert = hilbert_coefficients(
        ctx.powers(),
        params.depth.unwrap_or(DEFAULT_HILBERT_DEPTH),
        params.agreement.unwrap_or(DEFAULT_AGREEMENT_WINDOW),
    )?;
    let e2 = hilbert.coefficients[2].clone();
    report.checks.push(Check::new(
        "e_2(I) = 0",
        e2 == 0.into(),
        format!("e = {:?}, postulation {}", hilbert.coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>(), hilbert.postulation),
    ));
    let window = params.rr_window.unwrap_or(6);
    let mut trace = Vec::new();
    for t in 0..SAMPLES {
        let j = ctx.sample_minimal_reduction(derive_seed(seed, 2_000 + t as u64))?;
        let rr = ctx.rr_reduction_number(&j, window)?;
        report.checks.push(Check::new(
            format!("J{t}: rr_J(I) = 1"),
            rr.rr_number == Some(1),
            format!("rr = {:?}, r_J = {}, verdicts {:?}", rr.rr_number, j.reduction_number, rr.verdicts),
        ));
        trace.push(json!({
            "generators": j.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "seed": j.seed,
            "r": j.reduction_number,
            "rr": rr.rr_number,
            "verdicts": rr.verdicts,
        }));
    }
    report.result = Some(json!({
        "ideal": EXAMPLE_2_13,
        "reduction_numbers": generic.per_trial,
        "lengths": hilbert.lengths,
        "coefficients": hilbert.coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "reductions": trace,
    }));
    Ok(())
}
