//! Ratliff-Rush closures of an ideal and its powers.
//!
//! The closure of `I^m` is the union of the ascending chain
//! `Q_k = I^{m+k} : I^k`. No effective bound on where the chain stops is
//! available, so the union is detected heuristically: the chain is declared
//! stable once `window` consecutive terms agree. Results are therefore never
//! marked as certified.

use std::collections::BTreeMap;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::Ideal;
use crate::ops::{colon_by_generators, ideal_colon, local_contraction, PowerCache};
use crate::poly::Polynomial;

pub const DEFAULT_WINDOW: u32 = 3;
pub const DEFAULT_CHAIN_CAP: u32 = 50;
pub const DEFAULT_FILTRATION_DEPTH: u32 = 12;

/// Stabilization parameters: `window` consecutive equal chain terms, at most
/// `cap` chain steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RrConfig {
    pub window: u32,
    pub cap: u32,
}

impl Default for RrConfig {
    fn default() -> Self {
        Self { window: DEFAULT_WINDOW, cap: DEFAULT_CHAIN_CAP }
    }
}

#[derive(Clone, Debug)]
pub struct RrClosure<F: Field> {
    pub ideal: Ideal<F>,
    /// First chain index of the stable run.
    pub stab_index: u32,
    pub window: u32,
}

/// Runs an ascending chain until `window` consecutive terms coincide.
fn stabilize<F: Field>(
    config: RrConfig,
    mut term: impl FnMut(u32) -> Result<Ideal<F>>,
) -> Result<RrClosure<F>> {
    if config.window == 0 {
        return Err(Error::InvalidArgument("stabilization window must be at least 1".into()));
    }
    let mut run_start = 1u32;
    let mut current = term(1)?;
    let mut run_len = 1u32;
    let mut k = 1u32;
    while run_len < config.window {
        k += 1;
        if k > config.cap {
            return Err(Error::StabilizationNotDetected { cap: config.cap });
        }
        let next = term(k)?;
        if next.equals(&current)? {
            run_len += 1;
        } else {
            current = next;
            run_start = k;
            run_len = 1;
        }
    }
    Ok(RrClosure { ideal: current, stab_index: run_start, window: config.window })
}

/// Closure of `I^m` via `∪_k (I^{m+k} : I^k)`.
pub fn rr_closure_power<F: Field>(cache: &PowerCache<F>, m: u32, config: RrConfig) -> Result<RrClosure<F>> {
    if m == 0 {
        let unit = Ideal::unit(cache.base().ring());
        return Ok(RrClosure { ideal: unit, stab_index: 0, window: config.window });
    }
    stabilize(config, |k| ideal_colon(&*cache.power(m + k)?, &*cache.power(k)?))
}

/// Closure of `I` itself.
pub fn rr_closure<F: Field>(ideal: &Ideal<F>, config: RrConfig) -> Result<Ideal<F>> {
    let cache = PowerCache::new(ideal.clone());
    Ok(rr_closure_power(&cache, 1, config)?.ideal)
}

/// Closure of `I^m` via `∪_k (I^{m+k} : (x_1^k, ..., x_d^k))` for a system of
/// parameters `x_1, ..., x_d` inside `I`. The union equals the closure when
/// the parameters generate a reduction of `I`; otherwise it can be larger.
pub fn rr_closure_via_parameters<F: Field>(
    cache: &PowerCache<F>,
    m: u32,
    params: &[Polynomial<F>],
    config: RrConfig,
) -> Result<RrClosure<F>> {
    let base = cache.base();
    let ring = base.ring();
    if params.len() != ring.arity() {
        return Err(Error::ParamsNotSystemOfParameters(format!(
            "expected {} parameters, got {}",
            ring.arity(),
            params.len()
        )));
    }
    for p in params {
        if !base.contains_element(p)? {
            return Err(Error::ParamsNotSystemOfParameters(format!("{p} is not in the ideal")));
        }
    }
    let span = Ideal::new(ring, params.to_vec())?;
    let order_hint = span.generators().iter().filter_map(|g| g.total_degree()).max().unwrap_or(1) as u32 + 1;
    if let Err(e) = local_contraction(&span, order_hint, 64 * order_hint) {
        return Err(Error::ParamsNotSystemOfParameters(format!("parameters are not m-primary: {e}")));
    }
    if m == 0 {
        return Ok(RrClosure { ideal: Ideal::unit(ring), stab_index: 0, window: config.window });
    }
    stabilize(config, |k| {
        let powers = params.iter().map(|p| p.pow(k)).collect::<Result<Vec<_>>>()?;
        colon_by_generators(&*cache.power(m + k)?, &powers)
    })
}

/// `true` iff `I` equals its Ratliff-Rush closure.
pub fn is_rr_closed<F: Field>(ideal: &Ideal<F>, config: RrConfig) -> Result<bool> {
    rr_closure(ideal, config)?.equals(ideal)
}

/// Memoized closures of all powers of one ideal.
pub struct RatliffRush<F: Field> {
    cache: Arc<PowerCache<F>>,
    config: RrConfig,
    closures: RwLock<BTreeMap<u32, Arc<RrClosure<F>>>>,
}

impl<F: Field> RatliffRush<F> {
    pub fn new(ideal: Ideal<F>, config: RrConfig) -> Self {
        Self::with_cache(Arc::new(PowerCache::new(ideal)), config)
    }

    pub fn with_cache(cache: Arc<PowerCache<F>>, config: RrConfig) -> Self {
        Self { cache, config, closures: RwLock::new(BTreeMap::new()) }
    }

    pub fn powers(&self) -> &Arc<PowerCache<F>> {
        &self.cache
    }

    pub fn config(&self) -> RrConfig {
        self.config
    }

    /// Closure of `I^m`; `m = 0` gives the unit ideal.
    pub fn closure(&self, m: u32) -> Result<Arc<RrClosure<F>>> {
        if let Some(c) = self.closures.read().expect("closure table poisoned").get(&m) {
            return Ok(c.clone());
        }
        let computed = Arc::new(rr_closure_power(&self.cache, m, self.config)?);
        let mut table = self.closures.write().expect("closure table poisoned");
        Ok(table.entry(m).or_insert(computed).clone())
    }

    pub fn closure_ideal(&self, m: u32) -> Result<Ideal<F>> {
        Ok(self.closure(m)?.ideal.clone())
    }

    /// `closure(I^m) == I^m`.
    pub fn is_power_closed(&self, m: u32) -> Result<bool> {
        self.closure(m)?.ideal.equals(&*self.cache.power(m)?)
    }
}

/// Closures of `I, I^2, ..., I^M` with their closedness flags.
#[derive(Clone, Debug)]
pub struct RRFiltration<F: Field> {
    pub base: Ideal<F>,
    pub table: BTreeMap<u32, Ideal<F>>,
    pub stab_index: BTreeMap<u32, u32>,
    pub rr_closed: BTreeMap<u32, bool>,
    pub window: u32,
    pub cap: u32,
    pub depth: u32,
    /// Chain-window detection never certifies the union.
    pub certified: bool,
}

impl<F: Field> RRFiltration<F> {
    /// Least `m0` such that every power from `m0` to the depth is closed.
    pub fn closed_from(&self) -> Option<u32> {
        let mut from = None;
        for (&m, &closed) in self.rr_closed.iter().rev() {
            if closed {
                from = Some(m);
            } else {
                break;
            }
        }
        from
    }

    /// Whether eventual closedness was observed inside the window.
    pub fn eventually_closed(&self) -> bool {
        self.rr_closed.get(&self.depth).copied().unwrap_or(false)
    }
}

pub fn rr_filtration<F: Field>(engine: &RatliffRush<F>, depth: u32) -> Result<RRFiltration<F>> {
    if depth == 0 {
        return Err(Error::InvalidArgument("filtration depth must be at least 1".into()));
    }
    let mut table = BTreeMap::new();
    let mut stab_index = BTreeMap::new();
    let mut rr_closed = BTreeMap::new();
    for m in 1..=depth {
        let c = engine.closure(m)?;
        rr_closed.insert(m, c.ideal.equals(&*engine.powers().power(m)?)?);
        stab_index.insert(m, c.stab_index);
        table.insert(m, c.ideal.clone());
    }
    Ok(RRFiltration {
        base: (**engine.powers().base()).clone(),
        table,
        stab_index,
        rr_closed,
        window: engine.config().window,
        cap: engine.config().cap,
        depth,
        certified: false,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DepthVerdict {
    /// Every power up to the depth is closed (bounded evidence, not a proof).
    Positive,
    /// Some power is not closed, so the associated graded ring has depth zero.
    NotPositive { first_unclosed: u32 },
    Unconfirmed { reason: String },
}

/// Bounded form of the criterion "depth of the associated graded ring is
/// positive iff all powers are Ratliff-Rush closed".
pub fn gr_depth_positive_bounded<F: Field>(engine: &RatliffRush<F>, depth: u32) -> Result<DepthVerdict> {
    let filtration = match rr_filtration(engine, depth) {
        Ok(f) => f,
        Err(Error::StabilizationNotDetected { cap }) => {
            return Ok(DepthVerdict::Unconfirmed { reason: format!("chain not stable within {cap} steps") })
        }
        Err(e) => return Err(e),
    };
    if let Some((&m, _)) = filtration.rr_closed.iter().find(|(_, &closed)| !closed) {
        return Ok(DepthVerdict::NotPositive { first_unclosed: m });
    }
    Ok(DepthVerdict::Positive)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::parse::parse_polynomial;
    use crate::ring::PolyRing;

    fn ideal(s: &str) -> Ideal<PrimeField> {
        let r = PolyRing::from_spec("x,y", PrimeField::default()).unwrap();
        Ideal::parse(&r, s).unwrap()
    }

    #[test]
    fn parameter_ideal_powers_are_closed() {
        let engine = RatliffRush::new(ideal("x, y"), RrConfig::default());
        for m in 1..=4 {
            assert!(engine.is_power_closed(m).unwrap());
        }
        assert_eq!(gr_depth_positive_bounded(&engine, 4).unwrap(), DepthVerdict::Positive);
    }

    #[test]
    fn strict_closure_contains_witness() {
        let i = ideal("x^4, x^3*y, x*y^3, y^4");
        let c = rr_closure(&i, RrConfig::default()).unwrap();
        let w = parse_polynomial("x^2*y^2", i.ring()).unwrap();
        assert!(c.contains_element(&w).unwrap());
        assert!(!i.contains_element(&w).unwrap());
        assert!(!is_rr_closed(&i, RrConfig::default()).unwrap());
        // idempotence
        assert!(rr_closure(&c, RrConfig::default()).unwrap().equals(&c).unwrap());
    }

    #[test]
    fn window_one_returns_first_term() {
        let cache = PowerCache::new(ideal("x^4, x^3*y, x*y^3, y^4"));
        let c = rr_closure_power(&cache, 1, RrConfig { window: 1, cap: 5 }).unwrap();
        assert_eq!(c.stab_index, 1);
        assert!(rr_closure_power(&cache, 1, RrConfig { window: 0, cap: 5 }).is_err());
    }

    #[test]
    fn cap_reached_is_an_error() {
        let cache = PowerCache::new(ideal("x^7, x^6*y, x^2*y^5, y^7"));
        let err = rr_closure_power(&cache, 1, RrConfig { window: 3, cap: 2 }).unwrap_err();
        assert_eq!(err, Error::StabilizationNotDetected { cap: 2 });
    }

    #[test]
    fn parameters_must_lie_in_the_ideal() {
        let i = ideal("x^2, y^2");
        let cache = PowerCache::new(i.clone());
        let r = i.ring().clone();
        let bad = vec![parse_polynomial("x", &r).unwrap(), parse_polynomial("y^2", &r).unwrap()];
        assert!(matches!(
            rr_closure_via_parameters(&cache, 1, &bad, RrConfig::default()),
            Err(Error::ParamsNotSystemOfParameters(_))
        ));
        let not_sop = vec![parse_polynomial("x^2", &r).unwrap(), parse_polynomial("x^2*y^2", &r).unwrap()];
        assert!(matches!(
            rr_closure_via_parameters(&cache, 1, &not_sop, RrConfig::default()),
            Err(Error::ParamsNotSystemOfParameters(_))
        ));
        let good = vec![parse_polynomial("x^2", &r).unwrap(), parse_polynomial("y^2", &r).unwrap()];
        let c = rr_closure_via_parameters(&cache, 2, &good, RrConfig::default()).unwrap();
        assert!(c.ideal.equals(&*cache.power(2).unwrap()).unwrap());
    }
}
