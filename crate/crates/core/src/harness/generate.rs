//! Seeded random inputs.
//!
//! The stream is `ChaCha8Rng::seed_from_u64(seed)` and every draw is a
//! uniform `gen_range` over a fixed-width integer type, so a seed and a
//! configuration determine the output on every platform. Draw order:
//!
//! 1. the measure (discrete or interval, by a fair coin unless pinned);
//! 2. the function: a partition of the space into cells, a pool of values,
//!    and one pool value per cell (a quarter of the cells are left out and
//!    read as zero); cells sharing a value form one term.
//!
//! Scalar values lie in `[-4, 4]` (`[0, 4]` when non-negative) with
//! denominators at most `2^max_denominator_exp`, powers of two when dyadic.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::spec::{FunctionDecl, Params, SeriesDecl, Task, TaskSpec};
use crate::error::{Error, Result};
use crate::measure_space::{Domain, MeasurableSet, Measure, Point};
use crate::mi_integrator::{AffinePiece, PiecewiseLinearFunction};
use crate::rational::Rational;
use crate::simple_function::{NormKind, ScalarSimple, SimpleFunction, Value, VectorSimple, VectorValue};

pub const MAX_TERMS: u32 = 16;
pub const MAX_DENOMINATOR_EXP: u32 = 12;
pub const MAX_DIM: u32 = 4;
pub const MAX_DISCRETE_SIZE: u32 = 16;
const VALUE_BOUND: i64 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Simple,
    PiecewiseLinear,
    VectorSimple,
    Series,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Simple, Family::PiecewiseLinear, Family::VectorSimple, Family::Series];

    pub fn name(self) -> &'static str {
        match self {
            Family::Simple => "simple",
            Family::PiecewiseLinear => "piecewise_linear",
            Family::VectorSimple => "vector_simple",
            Family::Series => "series",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceChoice {
    Any,
    Discrete,
    Interval,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub family: Family,
    pub max_terms: u32,
    pub max_denominator_exp: u32,
    pub max_dim: u32,
    pub dyadic: bool,
    pub nonnegative: bool,
    pub space: SpaceChoice,
}

impl GeneratorConfig {
    pub fn new(family: Family, seed: u64) -> Self {
        GeneratorConfig {
            seed,
            family,
            max_terms: MAX_TERMS,
            max_denominator_exp: MAX_DENOMINATOR_EXP,
            max_dim: MAX_DIM,
            dyadic: false,
            nonnegative: false,
            space: if family == Family::PiecewiseLinear { SpaceChoice::Interval } else { SpaceChoice::Any },
        }
    }

    pub fn validate(&self) -> Result<()> {
        let check = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidParameter(what.to_string()))
            }
        };
        check((1..=MAX_TERMS).contains(&self.max_terms), "max_terms must lie in 1..=16")?;
        check(self.max_denominator_exp <= MAX_DENOMINATOR_EXP, "max_denominator_exp must be at most 12")?;
        check((1..=MAX_DIM).contains(&self.max_dim), "max_dim must lie in 1..=4")?;
        check(
            self.family != Family::PiecewiseLinear || self.space != SpaceChoice::Discrete,
            "piecewise-linear functions live on the interval space",
        )
    }
}

/// A measure and a function over it.
#[derive(Debug, Clone)]
pub struct Case {
    pub measure: Measure,
    pub function: FunctionDecl,
}

impl Case {
    /// The task a generated case is naturally run with.
    pub fn default_spec(&self) -> TaskSpec {
        let (task, params) = match &self.function {
            FunctionDecl::Scalar(_) => (Task::IntegrateMi, Params::default()),
            FunctionDecl::Vector(_) | FunctionDecl::Series(SeriesDecl::Vector(_)) => {
                (Task::IntegrateBochner, Params { norm: Some(NormKind::L1), ..Params::default() })
            }
            FunctionDecl::Series(_) => (Task::IntegrateBochner, Params::default()),
        };
        TaskSpec { measure: self.measure.clone(), function: self.function.clone(), task, params }
    }
}

pub struct Generator {
    rng: ChaCha8Rng,
    config: GeneratorConfig,
}

impl Generator {
    pub fn new(config: GeneratorConfig) -> Result<Self> {
        config.validate()?;
        Ok(Generator { rng: ChaCha8Rng::seed_from_u64(config.seed), config })
    }

    pub fn config(&self) -> &GeneratorConfig {
        &self.config
    }

    /// Piecewise-linear cases always draw an interval measure.
    pub fn next_case(&mut self) -> Result<Case> {
        let measure = match self.config.family {
            Family::PiecewiseLinear => self.interval_measure(),
            _ => self.measure(),
        };
        let domain = measure.domain();
        let function = match self.config.family {
            Family::Simple => FunctionDecl::Scalar(self.simple_on(domain)?.into()),
            Family::PiecewiseLinear => FunctionDecl::Scalar(self.piecewise_linear()?.into()),
            Family::VectorSimple => {
                let dim = self.rng.gen_range(1..=self.config.max_dim) as usize;
                FunctionDecl::Vector(self.vector_simple_on(domain, dim)?)
            }
            Family::Series => FunctionDecl::Series(self.series_on(domain)?),
        };
        Ok(Case { measure, function })
    }

    pub fn measure(&mut self) -> Measure {
        let discrete = match self.config.space {
            SpaceChoice::Discrete => true,
            SpaceChoice::Interval => false,
            SpaceChoice::Any => self.rng.gen_bool(0.5),
        };
        if discrete {
            self.discrete_measure()
        } else {
            self.interval_measure()
        }
    }

    pub fn discrete_measure(&mut self) -> Measure {
        let size = self.rng.gen_range(1..=MAX_DISCRETE_SIZE);
        let weights = (0..size).map(|_| self.bounded(0, 2, 4)).collect();
        Measure::discrete(weights).expect("weights are non-negative")
    }

    pub fn interval_measure(&mut self) -> Measure {
        let cells = self.rng.gen_range(1..=4u32);
        let breakpoints = self.partition(cells);
        let densities = (0..cells).map(|_| self.bounded(0, 3, 4)).collect();
        Measure::interval(breakpoints, densities).expect("densities are non-negative")
    }

    /// A uniformly drawn rational `p/q` in `[lo, hi]` with `q ≤ 2^exp`.
    fn bounded(&mut self, lo: i64, hi: i64, exp: u32) -> Rational {
        let q: i64 = self.rng.gen_range(1..=1i64 << exp);
        let p: i64 = self.rng.gen_range(lo * q..=hi * q);
        Rational::new(BigInt::from(p), BigInt::from(q))
    }

    /// A value for a function: dyadic when configured.
    fn value(&mut self) -> Rational {
        let lo = if self.config.nonnegative { 0 } else { -VALUE_BOUND };
        let exp = self.config.max_denominator_exp;
        if self.config.dyadic {
            let e = self.rng.gen_range(0..=exp);
            let q = 1i64 << e;
            let p: i64 = self.rng.gen_range(lo * q..=VALUE_BOUND * q);
            Rational::new(BigInt::from(p), BigInt::from(q))
        } else {
            self.bounded(lo, VALUE_BOUND, exp)
        }
    }

    /// `0 = t₀ < … < t_k = 1` with interior points of denominator `≤ 2^exp`.
    fn partition(&mut self, cells: u32) -> Vec<Rational> {
        let exp = self.config.max_denominator_exp.max(5);
        let mut interior = BTreeSet::new();
        while interior.len() + 1 < cells as usize {
            let q: i64 = self.rng.gen_range(2..=1i64 << exp);
            let p: i64 = self.rng.gen_range(1..q);
            interior.insert(Rational::new(BigInt::from(p), BigInt::from(q)));
        }
        let mut points = vec![Rational::from_integer(0.into())];
        points.extend(interior);
        points.push(Rational::from_integer(1.into()));
        points
    }

    /// The cells of a random partition of the space.
    fn cells(&mut self, domain: Domain) -> Vec<MeasurableSet> {
        match domain {
            Domain::Discrete { size } => (0..size)
                .map(|i| MeasurableSet::indices(size, vec![i]).expect("index in range"))
                .collect(),
            Domain::UnitInterval => {
                let count = self.rng.gen_range(1..=self.config.max_terms);
                self.partition(count)
                    .windows(2)
                    .map(|w| MeasurableSet::interval(w[0].clone(), w[1].clone()).expect("increasing"))
                    .collect()
            }
        }
    }

    fn assign<V: Value>(
        &mut self,
        domain: Domain,
        dim: usize,
        mut draw: impl FnMut(&mut Self) -> V,
    ) -> Result<SimpleFunction<V>> {
        let cells = self.cells(domain);
        let pool_size = self.rng.gen_range(1..=self.config.max_terms.min(cells.len() as u32));
        let pool: Vec<V> = (0..pool_size).map(|_| draw(self)).collect();
        let mut groups: BTreeMap<u32, Vec<MeasurableSet>> = BTreeMap::new();
        for cell in cells {
            if self.rng.gen_range(0..4u32) == 0 {
                continue;
            }
            groups.entry(self.rng.gen_range(0..pool_size)).or_default().push(cell);
        }
        let terms = groups
            .into_iter()
            .map(|(k, sets)| {
                let set = MeasurableSet::union_all(domain, sets.iter())?;
                Ok((pool[k as usize].clone(), set))
            })
            .collect::<Result<Vec<_>>>()?;
        SimpleFunction::new(domain, dim, terms)
    }

    pub fn simple_on(&mut self, domain: Domain) -> Result<ScalarSimple> {
        self.assign(domain, 1, |g| g.value())
    }

    pub fn vector_simple_on(&mut self, domain: Domain, dim: usize) -> Result<VectorSimple> {
        self.assign(domain, dim, |g| VectorValue::new((0..dim).map(|_| g.value()).collect()))
    }

    /// Pieces joining random endpoint values, continuous at about half of
    /// the breakpoints; `|f| ≤ 4`.
    pub fn piecewise_linear(&mut self) -> Result<PiecewiseLinearFunction> {
        let count = self.rng.gen_range(1..=self.config.max_terms.min(8));
        let breakpoints = self.partition(count);
        let mut pieces = Vec::new();
        let mut carry: Option<Rational> = None;
        for w in breakpoints.windows(2) {
            let left = match carry.take() {
                Some(v) if self.rng.gen_bool(0.5) => v,
                _ => self.value(),
            };
            let right = self.value();
            let slope = (&right - &left) / (&w[1] - &w[0]);
            let intercept = &left - &slope * &w[0];
            pieces.push(AffinePiece::new(slope, intercept));
            carry = Some(right);
        }
        PiecewiseLinearFunction::new(breakpoints, pieces)
    }

    /// A finite list of up to four simple terms, or a geometric rule.
    pub fn series_on(&mut self, domain: Domain) -> Result<SeriesDecl> {
        if self.rng.gen_range(0..4u32) == 0 {
            let q: i64 = self.rng.gen_range(2..=16);
            let p: i64 = self.rng.gen_range(1 - q..q);
            return Ok(SeriesDecl::GeometricIndicator(Rational::new(p.into(), q.into())));
        }
        let count = self.rng.gen_range(1..=4u32);
        let terms = (0..count)
            .map(|_| self.simple_on(domain).map(Into::into))
            .collect::<Result<Vec<_>>>()?;
        Ok(SeriesDecl::Scalar(terms))
    }

    /// A rational point of the space; on `[0, 1)` the denominator is at
    /// most `2^16`.
    pub fn point(&mut self, domain: Domain) -> Point {
        match domain {
            Domain::Discrete { size } => Point::Index(self.rng.gen_range(0..size as u32) as usize),
            Domain::UnitInterval => {
                let q: i64 = self.rng.gen_range(1..=1i64 << 16);
                let p: i64 = self.rng.gen_range(0..q);
                Point::Real(Rational::new(p.into(), q.into()))
            }
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

/// `count` cases of one family as a JSON array of task files.
pub fn generate_specs(family: Family, seed: u64, count: usize) -> Result<String> {
    let mut g = Generator::new(GeneratorConfig::new(family, seed))?;
    let specs = (0..count)
        .map(|_| g.next_case().map(|c| c.default_spec().to_json()))
        .collect::<Result<Vec<_>>>()?;
    let mut out = serde_json::to_string_pretty(&specs).expect("JSON values serialize");
    out.push('\n');
    Ok(out)
}
