use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::measure_space::{Domain, Measure, Point};
use crate::rational::Rational;
use crate::simple_function::{NormKind, SimpleFunction, Value, VectorValue};

use super::Integrable;

/// Generates the terms of an infinite series together with a certified tail.
pub trait SeriesRule<V: Value>: fmt::Debug + Send + Sync {
    fn domain(&self) -> Domain;

    fn dim(&self) -> usize;

    /// The `n`-th term, `n ≥ 1`.
    fn term(&self, n: usize) -> Result<Arc<dyn Integrable<V>>>;

    /// `B(N) ≥ Σ_{n>N} ∫‖f_n‖ dm`, nonincreasing in `N` and tending to 0.
    fn tail_bound(&self, depth: usize, m: &Measure, kind: NormKind) -> Result<Rational>;

    fn describe(&self) -> String;
}

#[derive(Debug, Clone)]
pub enum SeriesTerms<V: Value> {
    Finite(Vec<Arc<dyn Integrable<V>>>),
    Rule(Arc<dyn SeriesRule<V>>),
}

/// A sequence `(f_n)_{n≥1}` of integrable functions over one measure space,
/// with the data needed to certify `Σ ∫‖f_n‖ dm < ∞`.
#[derive(Debug, Clone)]
pub struct Series<V: Value> {
    measure: Measure,
    norm: NormKind,
    dim: usize,
    terms: SeriesTerms<V>,
}

/// `(Σ_{n≤N} ∫‖f_n‖ dm, B(N))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummabilityCertificate {
    pub depth: usize,
    pub partial: Rational,
    pub tail_bound: Rational,
}

impl SummabilityCertificate {
    /// An upper bound on `Σ_n ∫‖f_n‖ dm`.
    pub fn total(&self) -> Rational {
        &self.partial + &self.tail_bound
    }
}

/// `Σ_{n≤N} ∫ f_n dm` and a bound on its distance to the full sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BochnerIntegral<V> {
    pub value: V,
    pub error_bound: Rational,
}

impl<V: Value> Series<V> {
    pub fn finite(
        measure: Measure,
        dim: usize,
        norm: NormKind,
        terms: Vec<Arc<dyn Integrable<V>>>,
    ) -> Result<Self> {
        for t in &terms {
            measure.domain().check_same(&t.domain())?;
            if t.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: t.dim() });
            }
        }
        Ok(Series { measure, norm, dim, terms: SeriesTerms::Finite(terms) })
    }

    pub fn from_simple(
        measure: Measure,
        dim: usize,
        norm: NormKind,
        terms: Vec<SimpleFunction<V>>,
    ) -> Result<Self> {
        let terms = terms
            .into_iter()
            .map(|t| Arc::new(t) as Arc<dyn Integrable<V>>)
            .collect();
        Series::finite(measure, dim, norm, terms)
    }

    pub fn empty(measure: Measure, dim: usize, norm: NormKind) -> Self {
        Series { measure, norm, dim, terms: SeriesTerms::Finite(Vec::new()) }
    }

    pub fn rule(measure: Measure, norm: NormKind, rule: Arc<dyn SeriesRule<V>>) -> Result<Self> {
        measure.domain().check_same(&rule.domain())?;
        let dim = rule.dim();
        Ok(Series { measure, norm, dim, terms: SeriesTerms::Rule(rule) })
    }

    pub fn measure(&self) -> &Measure {
        &self.measure
    }

    pub fn norm(&self) -> NormKind {
        self.norm
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &SeriesTerms<V> {
        &self.terms
    }

    /// Number of terms of a finite series.
    pub fn term_count(&self) -> Option<usize> {
        match &self.terms {
            SeriesTerms::Finite(t) => Some(t.len()),
            SeriesTerms::Rule(_) => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.term_count().is_some()
    }

    /// `f_n`, `n ≥ 1`; terms past the end of a finite series are zero.
    pub fn term(&self, n: usize) -> Result<Option<Arc<dyn Integrable<V>>>> {
        if n == 0 {
            return Err(Error::InvalidParameter("series terms are indexed from 1".into()));
        }
        match &self.terms {
            SeriesTerms::Finite(t) => Ok(t.get(n - 1).cloned()),
            SeriesTerms::Rule(r) => r.term(n).map(Some),
        }
    }

    fn leading_terms(&self, depth: usize) -> Result<Vec<Arc<dyn Integrable<V>>>> {
        match &self.terms {
            SeriesTerms::Finite(t) => Ok(t.iter().take(depth).cloned().collect()),
            SeriesTerms::Rule(r) => (1..=depth).map(|n| r.term(n)).collect(),
        }
    }

    /// `B(N)`; exact for finite series, zero past the last term.
    pub fn tail_bound(&self, depth: usize) -> Result<Rational> {
        match &self.terms {
            SeriesTerms::Finite(t) => t
                .iter()
                .skip(depth)
                .try_fold(Rational::zero(), |acc, f| {
                    Ok(acc + f.norm_integral(&self.measure, self.norm)?)
                }),
            SeriesTerms::Rule(r) => r.tail_bound(depth, &self.measure, self.norm),
        }
    }

    pub fn absolute_sum_check(&self, depth: usize) -> Result<SummabilityCertificate> {
        let mut partial = Rational::zero();
        for f in self.leading_terms(depth)? {
            partial += f.norm_integral(&self.measure, self.norm)?;
        }
        Ok(SummabilityCertificate { depth, partial, tail_bound: self.tail_bound(depth)? })
    }

    /// `Σ_{n≤N} ∫ f_n dm`, within `B(N)` of the Bochner integral in norm.
    pub fn bochner_integrate(&self, depth: usize) -> Result<BochnerIntegral<V>> {
        let mut value = V::zero_of(self.dim);
        for f in self.leading_terms(depth)? {
            value = value.plus(&f.integral(&self.measure)?);
        }
        Ok(BochnerIntegral { value, error_bound: self.tail_bound(depth)? })
    }

    /// `Σ_{n≤N} f_n(ω)`.
    pub fn pointwise_partial_sum(&self, point: &Point, depth: usize) -> Result<V> {
        self.measure.domain().check_point(point)?;
        let mut value = V::zero_of(self.dim);
        for f in self.leading_terms(depth)? {
            value = value.plus(&f.evaluate(point)?);
        }
        Ok(value)
    }
}

impl Series<VectorValue> {
    /// The scalar series of the `i`-th components. Its tail is bounded by the
    /// vector tail since `|cᵢ| ≤ ‖c‖` for both norms.
    pub fn component(&self, index: usize) -> Result<Series<Rational>> {
        if index >= self.dim {
            return Err(Error::IndexOutOfRange { index, size: self.dim });
        }
        let terms = match &self.terms {
            SeriesTerms::Finite(t) => SeriesTerms::Finite(
                t.iter()
                    .map(|f| {
                        Arc::new(Component { inner: f.clone(), index }) as Arc<dyn Integrable<Rational>>
                    })
                    .collect(),
            ),
            SeriesTerms::Rule(r) => {
                SeriesTerms::Rule(Arc::new(ComponentRule { inner: r.clone(), index, norm: self.norm }))
            }
        };
        Ok(Series { measure: self.measure.clone(), norm: NormKind::L1, dim: 1, terms })
    }
}

#[derive(Debug)]
struct Component {
    inner: Arc<dyn Integrable<VectorValue>>,
    index: usize,
}

impl Integrable<Rational> for Component {
    fn domain(&self) -> Domain {
        self.inner.domain()
    }

    fn dim(&self) -> usize {
        1
    }

    fn evaluate(&self, point: &Point) -> Result<Rational> {
        Ok(self.inner.evaluate(point)?.0[self.index].clone())
    }

    fn integral(&self, m: &Measure) -> Result<Rational> {
        Ok(self.inner.integral(m)?.0[self.index].clone())
    }

    fn norm_integral(&self, m: &Measure, kind: NormKind) -> Result<Rational> {
        self.as_simple()?.l1_norm(m, kind)
    }

    fn as_simple(&self) -> Result<SimpleFunction<Rational>> {
        self.inner.as_simple()?.component(self.index)
    }
}

#[derive(Debug)]
struct ComponentRule {
    inner: Arc<dyn SeriesRule<VectorValue>>,
    index: usize,
    norm: NormKind,
}

impl SeriesRule<Rational> for ComponentRule {
    fn domain(&self) -> Domain {
        self.inner.domain()
    }

    fn dim(&self) -> usize {
        1
    }

    fn term(&self, n: usize) -> Result<Arc<dyn Integrable<Rational>>> {
        Ok(Arc::new(Component { inner: self.inner.term(n)?, index: self.index }))
    }

    fn tail_bound(&self, depth: usize, m: &Measure, _kind: NormKind) -> Result<Rational> {
        self.inner.tail_bound(depth, m, self.norm)
    }

    fn describe(&self) -> String {
        format!("component {} of {}", self.index, self.inner.describe())
    }
}

/// `f_n = rⁿ · 1_Ω` with `|r| < 1`; `B(N) = |r|^{N+1} / (1 − |r|) · m(Ω)`.
#[derive(Debug, Clone)]
pub struct GeometricIndicatorRule {
    domain: Domain,
    ratio: Rational,
}

impl GeometricIndicatorRule {
    pub fn new(domain: Domain, ratio: Rational) -> Result<Self> {
        if ratio.abs() >= Rational::one() {
            return Err(Error::InvalidParameter(format!("ratio {ratio} must satisfy |r| < 1")));
        }
        Ok(GeometricIndicatorRule { domain, ratio })
    }

    pub fn ratio(&self) -> &Rational {
        &self.ratio
    }
}

fn power(r: &Rational, n: usize) -> Rational {
    (0..n).fold(Rational::one(), |acc, _| acc * r)
}

impl SeriesRule<Rational> for GeometricIndicatorRule {
    fn domain(&self) -> Domain {
        self.domain
    }

    fn dim(&self) -> usize {
        1
    }

    fn term(&self, n: usize) -> Result<Arc<dyn Integrable<Rational>>> {
        if n == 0 {
            return Err(Error::InvalidParameter("series terms are indexed from 1".into()));
        }
        Ok(Arc::new(SimpleFunction::constant(self.domain, power(&self.ratio, n))))
    }

    fn tail_bound(&self, depth: usize, m: &Measure, _kind: NormKind) -> Result<Rational> {
        m.domain().check_same(&self.domain)?;
        let r = self.ratio.abs();
        Ok(power(&r, depth + 1) / (Rational::one() - &r) * m.total_mass())
    }

    fn describe(&self) -> String {
        format!("geometric_indicator(ratio = {})", self.ratio)
    }
}
