use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::measure_space::{Domain, Measure, Point};
use crate::mi_integrator::{level_floor, mi_integrate, Integrand, MiIntegral, MAX_LEVEL};
use crate::rational::{inv_pow2, Rational};
use crate::simple_function::{NormKind, ScalarSimple, SimpleFunction, Value};

use super::series::{BochnerIntegral, Series, SeriesRule, SummabilityCertificate};
use super::Integrable;

/// Series whose exact level exceeds this stay rule-based.
pub const MAX_FINITE_TERMS: u32 = 1024;

/// Memoized quantities for one measure.
#[derive(Debug)]
struct MeasureCache {
    measure: Measure,
    /// `(value, mass)` of each non-zero term of both parts, when both are simple.
    masses: Option<[Vec<(Rational, Rational)>; 2]>,
    /// `(∫ f_k⁽¹⁾ dm, ∫ f_k⁽²⁾ dm)` by level.
    by_level: HashMap<u32, (Rational, Rational)>,
}

fn term_masses(part: &Integrand, m: &Measure) -> Result<Option<Vec<(Rational, Rational)>>> {
    let Integrand::Simple(f) = part else { return Ok(None) };
    f.terms()
        .iter()
        .filter(|t| !t.value.is_zero())
        .map(|t| Ok((t.value.clone(), m.measure_of(&t.set)?)))
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

fn level_sum(masses: &[(Rational, Rational)], k: u32) -> Rational {
    masses.iter().map(|(v, w)| level_floor(v, k) * w).sum()
}

/// A scalar integrand together with its positive and negative parts.
/// Level integrals are memoized per measure.
#[derive(Debug)]
pub struct SignedParts {
    target: Integrand,
    positive: Integrand,
    negative: Integrand,
    exact_level: OnceLock<Option<u32>>,
    levels: Mutex<Vec<MeasureCache>>,
}

impl Clone for SignedParts {
    fn clone(&self) -> Self {
        SignedParts::new(self.target.clone())
    }
}

impl SignedParts {
    pub fn new(target: Integrand) -> Self {
        let positive = target.positive_part();
        let negative = target.negative_part();
        SignedParts {
            target,
            positive,
            negative,
            exact_level: OnceLock::new(),
            levels: Mutex::new(Vec::new()),
        }
    }

    pub fn target(&self) -> &Integrand {
        &self.target
    }

    pub fn positive(&self) -> &Integrand {
        &self.positive
    }

    pub fn negative(&self) -> &Integrand {
        &self.negative
    }

    /// Level from which both dyadic sequences are constant.
    pub fn exact_level(&self) -> Option<u32> {
        *self.exact_level.get_or_init(|| {
            Some(self.positive.dyadic_exact_level()?.max(self.negative.dyadic_exact_level()?))
        })
    }

    /// `(∫ f_k⁽¹⁾ dm, ∫ f_k⁽²⁾ dm)`.
    pub fn level_integrals(&self, k: u32, m: &Measure) -> Result<(Rational, Rational)> {
        let mut caches = self.levels.lock().expect("level cache poisoned");
        let idx = match caches.iter().position(|c| c.measure == *m) {
            Some(i) => i,
            None => {
                self.target.check_measure(m)?;
                let masses = match (term_masses(&self.positive, m)?, term_masses(&self.negative, m)?) {
                    (Some(p), Some(q)) => Some([p, q]),
                    _ => None,
                };
                caches.push(MeasureCache { measure: m.clone(), masses, by_level: HashMap::new() });
                caches.len() - 1
            }
        };
        let cache = &mut caches[idx];
        if let Some(hit) = cache.by_level.get(&k) {
            return Ok(hit.clone());
        }
        let pair = match (&cache.masses, k) {
            (_, 0) => (Rational::zero(), Rational::zero()),
            (Some([p, q]), _) => (level_sum(p, k), level_sum(q, k)),
            (None, _) => (self.positive.dyadic_integral(k, m)?, self.negative.dyadic_integral(k, m)?),
        };
        cache.by_level.insert(k, pair.clone());
        Ok(pair)
    }

    /// `f_k⁽¹⁾(ω) − f_k⁽²⁾(ω)`.
    pub fn level_difference_at(&self, k: u32, point: &Point) -> Result<Rational> {
        Ok(self.positive.dyadic_value(k, point)? - self.negative.dyadic_value(k, point)?)
    }

    /// `∫ f_k⁽¹⁾ dm + ∫ f_k⁽²⁾ dm`.
    fn level_abs_integral(&self, k: u32, m: &Measure) -> Result<Rational> {
        let (p, q) = self.level_integrals(k, m)?;
        Ok(p + q)
    }
}

/// `h_n = h_n⁽¹⁾ − h_n⁽²⁾` with `h_n⁽ⁱ⁾ = f_n⁽ⁱ⁾ − f_{n−1}⁽ⁱ⁾` and `f_0⁽ⁱ⁾ = 0`.
/// Both increments are non-negative with disjoint supports, so
/// `|h_n| = h_n⁽¹⁾ + h_n⁽²⁾`.
#[derive(Debug, Clone)]
pub struct DyadicIncrement {
    parts: Arc<SignedParts>,
    level: u32,
}

impl DyadicIncrement {
    pub fn new(parts: Arc<SignedParts>, level: u32) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidParameter("increments start at level 1".into()));
        }
        Ok(DyadicIncrement { parts, level })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// `∫ h_n⁽¹⁾ dm`.
    pub fn plus_integral(&self, m: &Measure) -> Result<Rational> {
        Ok(self.parts.level_integrals(self.level, m)?.0 - self.parts.level_integrals(self.level - 1, m)?.0)
    }

    /// `∫ h_n⁽²⁾ dm`.
    pub fn minus_integral(&self, m: &Measure) -> Result<Rational> {
        Ok(self.parts.level_integrals(self.level, m)?.1 - self.parts.level_integrals(self.level - 1, m)?.1)
    }

    fn part_increment(part: &Integrand, n: u32) -> Result<ScalarSimple> {
        part.dyadic_approx(n)?.sub(&part.dyadic_approx(n - 1)?)
    }
}

impl Integrable<Rational> for DyadicIncrement {
    fn domain(&self) -> Domain {
        self.parts.target.domain()
    }

    fn dim(&self) -> usize {
        1
    }

    fn evaluate(&self, point: &Point) -> Result<Rational> {
        Ok(self.parts.level_difference_at(self.level, point)?
            - self.parts.level_difference_at(self.level - 1, point)?)
    }

    fn integral(&self, m: &Measure) -> Result<Rational> {
        Ok(self.plus_integral(m)? - self.minus_integral(m)?)
    }

    fn norm_integral(&self, m: &Measure, _kind: NormKind) -> Result<Rational> {
        Ok(self.plus_integral(m)? + self.minus_integral(m)?)
    }

    fn as_simple(&self) -> Result<ScalarSimple> {
        let plus = Self::part_increment(&self.parts.positive, self.level)?;
        let minus = Self::part_increment(&self.parts.negative, self.level)?;
        Ok(plus.sub(&minus)?.canonicalize())
    }
}

/// The unbounded telescoping series of a non-dyadic integrand. Its tail
/// `B(N) = ∫|f| dm − ∫ (f_N⁽¹⁾ + f_N⁽²⁾) dm` is the exact remainder.
#[derive(Debug, Clone)]
pub struct DyadicTelescopeRule {
    parts: Arc<SignedParts>,
}

impl DyadicTelescopeRule {
    pub fn new(parts: Arc<SignedParts>) -> Self {
        DyadicTelescopeRule { parts }
    }
}

fn level_index(n: usize) -> Result<u32> {
    u32::try_from(n).map_err(|_| Error::InvalidParameter(format!("level {n} out of range")))
}

impl SeriesRule<Rational> for DyadicTelescopeRule {
    fn domain(&self) -> Domain {
        self.parts.target.domain()
    }

    fn dim(&self) -> usize {
        1
    }

    fn term(&self, n: usize) -> Result<Arc<dyn Integrable<Rational>>> {
        Ok(Arc::new(DyadicIncrement::new(self.parts.clone(), level_index(n)?)?))
    }

    fn tail_bound(&self, depth: usize, m: &Measure, _kind: NormKind) -> Result<Rational> {
        let total = self.parts.target.abs().exact_integral(m)?;
        Ok(total - self.parts.level_abs_integral(level_index(depth)?, m)?)
    }

    fn describe(&self) -> String {
        format!("dyadic_telescope({})", self.parts.target)
    }
}

/// A series together with the function it represents and its certificate.
#[derive(Debug, Clone)]
pub struct BochnerRepresentation<V: Value> {
    pub target: Option<Arc<dyn Integrable<V>>>,
    pub series: Series<V>,
    pub certificate: Option<SummabilityCertificate>,
    pub eta: Option<Rational>,
}

impl<V: Value> BochnerRepresentation<V> {
    pub fn new(series: Series<V>, target: Option<Arc<dyn Integrable<V>>>) -> Self {
        BochnerRepresentation { target, series, certificate: None, eta: None }
    }

    /// Attaches the certificate at `depth`.
    pub fn certify(mut self, depth: usize) -> Result<Self> {
        self.certificate = Some(self.series.absolute_sum_check(depth)?);
        Ok(self)
    }
}

impl BochnerRepresentation<Rational> {
    /// A finite series of integrable (not necessarily elementary) terms,
    /// representing their sum and certified over all terms.
    pub fn from_integrable_terms(terms: Vec<Integrand>, m: &Measure) -> Result<Self> {
        let mut target = Integrand::Simple(SimpleFunction::zero(m.domain(), 1));
        for t in &terms {
            target = target.add(t)?;
        }
        let depth = terms.len();
        let terms = terms
            .into_iter()
            .map(|t| Arc::new(t) as Arc<dyn Integrable<Rational>>)
            .collect();
        let series = Series::finite(m.clone(), 1, NormKind::L1, terms)?;
        BochnerRepresentation::new(series, Some(Arc::new(target))).certify(depth)
    }
}

/// Per-level data of the telescoping construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceRecord {
    pub level: u32,
    /// `∫ h_n⁽¹⁾ dm`.
    pub plus_integral: Rational,
    /// `∫ h_n⁽²⁾ dm`.
    pub minus_integral: Rational,
    /// `∫ h_n dm`.
    pub integral: Rational,
    /// `∫ |h_n| dm`.
    pub abs_integral: Rational,
    /// `∫ g_n dm` with `g_n = Σ_{k≤n} h_k`.
    pub partial_integral: Rational,
    /// `Σ_{k≤n} ∫ |h_k| dm`.
    pub running_abs_sum: Rational,
}

#[derive(Debug, Clone)]
pub struct ConstructionTrace {
    parts: Arc<SignedParts>,
    records: Vec<TraceRecord>,
}

impl ConstructionTrace {
    pub fn records(&self) -> &[TraceRecord] {
        &self.records
    }

    pub fn parts(&self) -> &SignedParts {
        &self.parts
    }

    pub fn increment(&self, level: u32) -> Result<DyadicIncrement> {
        DyadicIncrement::new(self.parts.clone(), level)
    }

    /// `g_k(ω) = Σ_{n≤k} h_n(ω)`.
    pub fn partial_sum_at(&self, k: u32, point: &Point) -> Result<Rational> {
        let mut total = Rational::zero();
        for n in 1..=k {
            total += self.increment(n)?.evaluate(point)?;
        }
        Ok(total)
    }

    /// `f_k⁽¹⁾(ω) − f_k⁽²⁾(ω)`.
    pub fn level_difference_at(&self, k: u32, point: &Point) -> Result<Rational> {
        self.parts.level_difference_at(k, point)
    }
}

/// Builds the telescoping series of the dyadic approximations of `f⁺` and
/// `f⁻`, certified at `depth`. The series is finite exactly when both
/// approximation sequences become constant.
pub fn series_from_mi(
    f: &Integrand,
    m: &Measure,
    eta: &Rational,
    depth: u32,
) -> Result<(BochnerRepresentation<Rational>, ConstructionTrace)> {
    f.check_measure(m)?;
    if eta.is_negative() {
        return Err(Error::InvalidParameter(format!("eta {eta} must be non-negative")));
    }
    if depth > MAX_LEVEL {
        return Err(Error::InvalidParameter(format!("depth {depth} exceeds {MAX_LEVEL}")));
    }
    let parts = Arc::new(SignedParts::new(f.clone()));
    let series = match parts.exact_level() {
        Some(level) if level <= MAX_FINITE_TERMS => {
            let terms = (1..=level)
                .map(|n| {
                    DyadicIncrement::new(parts.clone(), n)
                        .map(|h| Arc::new(h) as Arc<dyn Integrable<Rational>>)
                })
                .collect::<Result<Vec<_>>>()?;
            Series::finite(m.clone(), 1, NormKind::L1, terms)?
        }
        _ => Series::rule(m.clone(), NormKind::L1, Arc::new(DyadicTelescopeRule::new(parts.clone())))?,
    };

    let mut records = Vec::with_capacity(depth as usize);
    let (mut partial, mut running) = (Rational::zero(), Rational::zero());
    for level in 1..=depth {
        let h = DyadicIncrement::new(parts.clone(), level)?;
        let plus_integral = h.plus_integral(m)?;
        let minus_integral = h.minus_integral(m)?;
        let integral = &plus_integral - &minus_integral;
        let abs_integral = &plus_integral + &minus_integral;
        partial += &integral;
        running += &abs_integral;
        records.push(TraceRecord {
            level,
            plus_integral,
            minus_integral,
            integral,
            abs_integral,
            partial_integral: partial.clone(),
            running_abs_sum: running.clone(),
        });
    }

    let certificate = series.absolute_sum_check(depth as usize)?;
    let bound = f.abs().exact_integral(m)? + eta;
    if certificate.partial > bound {
        return Err(Error::InvalidSeries(format!(
            "absolute sum {} exceeds {}",
            certificate.partial, bound
        )));
    }
    let target: Arc<dyn Integrable<Rational>> = Arc::new(f.clone());
    let repr = BochnerRepresentation {
        target: Some(target),
        series,
        certificate: Some(certificate),
        eta: Some(eta.clone()),
    };
    Ok((repr, ConstructionTrace { parts, records }))
}

/// Result of [`mi_from_series`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesLimit {
    /// `Σ_{n≤N} ∫ f_n dm` at the certified depth.
    pub value: Rational,
    /// `|lim − value| ≤ error_bound`.
    pub error_bound: Rational,
    pub exact: bool,
    /// Measure integral of the represented function, when known.
    pub target_integral: Option<Rational>,
    /// `|target_integral − value| ≤ error_bound`.
    pub consistent: bool,
}

impl fmt::Display for SeriesLimit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {}", self.value, self.error_bound)?;
        if let Some(t) = &self.target_integral {
            write!(f, " (target {t}, consistent: {})", self.consistent)?;
        }
        Ok(())
    }
}

/// The limit of the integrals of the partial sums, compared with the measure
/// integral of the represented function.
pub fn mi_from_series(r: &BochnerRepresentation<Rational>) -> Result<SeriesLimit> {
    let certificate = r.certificate.as_ref().ok_or(Error::MissingCertificate)?;
    let BochnerIntegral { value, error_bound } = r.series.bochner_integrate(certificate.depth)?;
    let target_integral = r
        .target
        .as_ref()
        .map(|t| t.integral(r.series.measure()))
        .transpose()?;
    let consistent = target_integral
        .as_ref()
        .is_none_or(|t| (t - &value).abs() <= error_bound);
    Ok(SeriesLimit {
        exact: error_bound.is_zero(),
        value,
        error_bound,
        target_integral,
        consistent,
    })
}

/// Both integrals of one function, and the checks relating them.
#[derive(Debug, Clone)]
pub struct TheoremReport {
    pub depth: u32,
    pub eta: Rational,
    pub mi: MiIntegral,
    /// `∫ |f| dm`.
    pub abs_integral: Rational,
    pub bochner: BochnerIntegral<Rational>,
    pub certificate: SummabilityCertificate,
    pub round_trip: SeriesLimit,
    /// `|∫f − Σ_{n≤d} ∫h_n|`.
    pub gap: Rational,
    /// `2·2⁻ᵈ·m(Ω) + ∫(|f| − d)⁺ dm`; the second term vanishes once
    /// `d ≥ sup |f|`.
    pub gap_bound: Rational,
    pub terminating: bool,
    pub exact_equal: bool,
    pub gap_within_bound: bool,
    /// `Σ_{n≤d} ∫|h_n| ≤ ∫|f| + η`.
    pub certificate_holds: bool,
}

pub fn theorem_check(f: &Integrand, m: &Measure, eta: &Rational, depth: u32) -> Result<TheoremReport> {
    let mi = mi_integrate(f, m)?;
    let mi_value = mi
        .value
        .clone()
        .ok_or_else(|| Error::UnsupportedIntegrand("integrand is not integrable".into()))?;
    let (repr, _) = series_from_mi(f, m, eta, depth)?;
    let certificate = repr.certificate.clone().ok_or(Error::MissingCertificate)?;
    let bochner = repr.series.bochner_integrate(depth as usize)?;
    let round_trip = mi_from_series(&repr)?;
    let abs = f.abs();
    let abs_integral = abs.exact_integral(m)?;
    let excess = abs.excess_integral(&Rational::from_integer(BigInt::from(depth)), m)?;
    let gap = (&mi_value - &bochner.value).abs();
    let gap_bound = inv_pow2(depth) * m.total_mass() * Rational::from_integer(2.into()) + excess;
    let terminating = repr.series.term_count().is_some_and(|len| len <= depth as usize);
    Ok(TheoremReport {
        depth,
        eta: eta.clone(),
        exact_equal: mi_value == bochner.value,
        gap_within_bound: gap <= gap_bound,
        certificate_holds: certificate.partial <= &abs_integral + eta,
        mi,
        abs_integral,
        bochner,
        certificate,
        round_trip,
        gap,
        gap_bound,
        terminating,
    })
}
