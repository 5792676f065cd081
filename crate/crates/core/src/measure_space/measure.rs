use num_traits::{One, Zero};

use super::{Domain, Interval, MeasurableSet};
use crate::error::{Error, Result};
use crate::rational::{int, max_of, min_of, Rational};

/// Ω = {0, …, N−1} with a non-negative weight on every point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiscreteSpace {
    weights: Vec<Rational>,
}

impl DiscreteSpace {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidMeasure("discrete space needs at least one point".into()));
        }
        if let Some(w) = weights.iter().find(|w| **w < Rational::zero()) {
            return Err(Error::InvalidMeasure(format!("negative weight {w}")));
        }
        Ok(DiscreteSpace { weights })
    }

    /// Counting measure scaled so every point weighs `1/N`.
    pub fn uniform(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidMeasure("discrete space needs at least one point".into()));
        }
        DiscreteSpace::new(vec![Rational::new(1.into(), size.into()); size])
    }

    pub fn size(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }
}

/// A measure on `[0, 1)` with density `densities[k]` on
/// `[breakpoints[k], breakpoints[k+1])`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntervalMeasure {
    breakpoints: Vec<Rational>,
    densities: Vec<Rational>,
}

impl IntervalMeasure {
    pub fn new(breakpoints: Vec<Rational>, densities: Vec<Rational>) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(Error::InvalidMeasure("need at least the breakpoints 0 and 1".into()));
        }
        if breakpoints[0] != Rational::zero() || breakpoints[breakpoints.len() - 1] != Rational::one() {
            return Err(Error::InvalidMeasure("breakpoints must start at 0 and end at 1".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidMeasure("breakpoints must be strictly increasing".into()));
        }
        if densities.len() + 1 != breakpoints.len() {
            return Err(Error::InvalidMeasure(format!(
                "{} breakpoints need {} densities, found {}",
                breakpoints.len(),
                breakpoints.len() - 1,
                densities.len()
            )));
        }
        if let Some(d) = densities.iter().find(|d| **d < Rational::zero()) {
            return Err(Error::InvalidMeasure(format!("negative density {d}")));
        }
        Ok(IntervalMeasure {
            breakpoints,
            densities,
        })
    }

    /// Lebesgue measure on `[0, 1)`.
    pub fn lebesgue() -> Self {
        IntervalMeasure {
            breakpoints: vec![int(0), int(1)],
            densities: vec![int(1)],
        }
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn densities(&self) -> &[Rational] {
        &self.densities
    }

    /// `(start, end, density)` for every density cell.
    pub fn cells(&self) -> impl Iterator<Item = (&Rational, &Rational, &Rational)> {
        self.breakpoints
            .windows(2)
            .zip(&self.densities)
            .map(|(w, d)| (&w[0], &w[1], d))
    }

    pub fn density_at(&self, x: &Rational) -> Rational {
        let k = self.breakpoints.partition_point(|b| b <= x);
        self.densities
            .get(k.saturating_sub(1))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Measure of a single interval: Σ density · overlap length.
    pub fn measure_interval(&self, iv: &Interval) -> Rational {
        let mut total = Rational::zero();
        let first = self.breakpoints.partition_point(|b| b <= iv.start()).saturating_sub(1);
        for k in first..self.densities.len() {
            let (a, b) = (&self.breakpoints[k], &self.breakpoints[k + 1]);
            if a >= iv.end() {
                break;
            }
            let lo = max_of(a, iv.start());
            let hi = min_of(b, iv.end());
            if lo < hi && !self.densities[k].is_zero() {
                total += &self.densities[k] * (hi - lo);
            }
        }
        total
    }

    pub fn total_mass(&self) -> Rational {
        self.cells().map(|(a, b, d)| d * (b - a)).sum()
    }
}

/// A finite measure m on one of the two concrete spaces.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Measure {
    Discrete(DiscreteSpace),
    Interval(IntervalMeasure),
}

impl Measure {
    pub fn lebesgue() -> Self {
        Measure::Interval(IntervalMeasure::lebesgue())
    }

    pub fn discrete(weights: Vec<Rational>) -> Result<Self> {
        DiscreteSpace::new(weights).map(Measure::Discrete)
    }

    pub fn interval(breakpoints: Vec<Rational>, densities: Vec<Rational>) -> Result<Self> {
        IntervalMeasure::new(breakpoints, densities).map(Measure::Interval)
    }

    pub fn domain(&self) -> Domain {
        match self {
            Measure::Discrete(s) => Domain::Discrete { size: s.size() },
            Measure::Interval(_) => Domain::UnitInterval,
        }
    }

    /// m(A).
    pub fn measure_of(&self, set: &MeasurableSet) -> Result<Rational> {
        self.domain().check_same(&set.domain())?;
        Ok(match (self, set) {
            (Measure::Discrete(space), MeasurableSet::Discrete(s)) => {
                s.indices().iter().map(|&i| &space.weights[i]).sum()
            }
            (Measure::Interval(m), MeasurableSet::Interval(s)) => {
                s.intervals().iter().map(|iv| m.measure_interval(iv)).sum()
            }
            _ => unreachable!("domains checked above"),
        })
    }

    /// m(Ω).
    pub fn total_mass(&self) -> Rational {
        match self {
            Measure::Discrete(s) => s.weights.iter().sum(),
            Measure::Interval(m) => m.total_mass(),
        }
    }

    pub fn as_interval(&self) -> Option<&IntervalMeasure> {
        match self {
            Measure::Interval(m) => Some(m),
            Measure::Discrete(_) => None,
        }
    }
}
