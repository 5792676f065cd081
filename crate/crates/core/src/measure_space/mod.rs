//! Finite measure spaces and their measurable sets.
//!
//! Two concrete families are supported: a finite discrete space
//! `{0, …, N−1}` with non-negative weights, and the unit interval `[0, 1)`
//! carrying a measure with a piecewise-constant density against length.
//! Measurable sets on the interval are finite unions of half-open intervals,
//! so single points are null and complements close exactly.

mod interval_set;
mod measure;

use std::fmt;

pub use interval_set::{Interval, IntervalSet};
pub use measure::{DiscreteSpace, IntervalMeasure, Measure};

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// The underlying set Ω, without a measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    Discrete { size: usize },
    UnitInterval,
}

impl Domain {
    pub fn check_same(&self, other: &Domain) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SpaceMismatch {
                left: *self,
                right: *other,
            })
        }
    }

    pub fn contains(&self, point: &Point) -> bool {
        match (self, point) {
            (Domain::Discrete { size }, Point::Index(i)) => i < size,
            (Domain::UnitInterval, Point::Real(x)) => !x.is_negative() && *x < Rational::one(),
            _ => false,
        }
    }

    pub fn check_point(&self, point: &Point) -> Result<()> {
        if self.contains(point) {
            Ok(())
        } else {
            Err(Error::PointOutsideSpace(point.to_string()))
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Discrete { size } => write!(f, "discrete({size})"),
            Domain::UnitInterval => f.write_str("[0, 1)"),
        }
    }
}

/// A point ω ∈ Ω.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Index(usize),
    Real(Rational),
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Index(i) => write!(f, "#{i}"),
            Point::Real(x) => write!(f, "{x}"),
        }
    }
}

/// Subset of a discrete space, stored as strictly increasing indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiscreteSubset {
    size: usize,
    indices: Vec<usize>,
}

impl DiscreteSubset {
    pub fn new(size: usize, indices: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= size) {
            return Err(Error::IndexOutOfRange { index: bad, size });
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::UnsortedIndices);
        }
        Ok(DiscreteSubset { size, indices })
    }

    /// Accepts indices in any order, with repeats.
    pub fn from_unsorted(size: usize, mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        DiscreteSubset::new(size, indices)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    fn merge_with(&self, other: &DiscreteSubset, keep: impl Fn(bool, bool) -> bool) -> Self {
        let indices = (0..self.size)
            .filter(|&i| keep(self.contains(i), other.contains(i)))
            .collect();
        DiscreteSubset {
            size: self.size,
            indices,
        }
    }
}

/// A measurable set A ∈ 𝒜 of one of the two concrete space families.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MeasurableSet {
    Discrete(DiscreteSubset),
    Interval(IntervalSet),
}

impl MeasurableSet {
    pub fn empty(domain: Domain) -> Self {
        match domain {
            Domain::Discrete { size } => MeasurableSet::Discrete(DiscreteSubset {
                size,
                indices: Vec::new(),
            }),
            Domain::UnitInterval => MeasurableSet::Interval(IntervalSet::empty()),
        }
    }

    pub fn full(domain: Domain) -> Self {
        match domain {
            Domain::Discrete { size } => MeasurableSet::Discrete(DiscreteSubset {
                size,
                indices: (0..size).collect(),
            }),
            Domain::UnitInterval => MeasurableSet::Interval(IntervalSet::full()),
        }
    }

    pub fn indices(size: usize, indices: Vec<usize>) -> Result<Self> {
        DiscreteSubset::from_unsorted(size, indices).map(MeasurableSet::Discrete)
    }

    pub fn interval(start: Rational, end: Rational) -> Result<Self> {
        IntervalSet::interval(start, end).map(MeasurableSet::Interval)
    }

    pub fn domain(&self) -> Domain {
        match self {
            MeasurableSet::Discrete(s) => Domain::Discrete { size: s.size },
            MeasurableSet::Interval(_) => Domain::UnitInterval,
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            MeasurableSet::Discrete(s) => s.indices.is_empty(),
            MeasurableSet::Interval(s) => s.is_empty(),
        }
    }

    pub fn contains(&self, point: &Point) -> bool {
        match (self, point) {
            (MeasurableSet::Discrete(s), Point::Index(i)) => s.contains(*i),
            (MeasurableSet::Interval(s), Point::Real(x)) => s.contains(x),
            _ => false,
        }
    }

    /// Smallest point of the set, used to order the terms of canonical
    /// representations.
    pub fn min_point(&self) -> Option<Point> {
        match self {
            MeasurableSet::Discrete(s) => s.indices.first().map(|&i| Point::Index(i)),
            MeasurableSet::Interval(s) => s.min_point().cloned().map(Point::Real),
        }
    }

    fn binary(
        &self,
        other: &MeasurableSet,
        discrete: impl Fn(bool, bool) -> bool,
        interval: impl Fn(&IntervalSet, &IntervalSet) -> IntervalSet,
    ) -> Result<MeasurableSet> {
        self.domain().check_same(&other.domain())?;
        Ok(match (self, other) {
            (MeasurableSet::Discrete(a), MeasurableSet::Discrete(b)) => {
                MeasurableSet::Discrete(a.merge_with(b, discrete))
            }
            (MeasurableSet::Interval(a), MeasurableSet::Interval(b)) => {
                MeasurableSet::Interval(interval(a, b))
            }
            _ => unreachable!("domains checked above"),
        })
    }

    pub fn union(&self, other: &MeasurableSet) -> Result<MeasurableSet> {
        self.binary(other, |a, b| a || b, IntervalSet::union)
    }

    pub fn intersection(&self, other: &MeasurableSet) -> Result<MeasurableSet> {
        self.binary(other, |a, b| a && b, IntervalSet::intersection)
    }

    pub fn difference(&self, other: &MeasurableSet) -> Result<MeasurableSet> {
        self.binary(other, |a, b| a && !b, IntervalSet::difference)
    }

    /// Complement within Ω.
    pub fn complement(&self) -> MeasurableSet {
        match self {
            MeasurableSet::Discrete(s) => {
                MeasurableSet::Discrete(s.merge_with(s, |a, _| !a))
            }
            MeasurableSet::Interval(s) => MeasurableSet::Interval(s.complement()),
        }
    }

    pub fn is_subset(&self, other: &MeasurableSet) -> Result<bool> {
        Ok(self.difference(other)?.is_empty())
    }

    pub fn is_disjoint(&self, other: &MeasurableSet) -> Result<bool> {
        Ok(self.intersection(other)?.is_empty())
    }

    /// Union of many sets over one domain.
    pub fn union_all<'a>(
        domain: Domain,
        sets: impl IntoIterator<Item = &'a MeasurableSet>,
    ) -> Result<MeasurableSet> {
        match domain {
            Domain::Discrete { size } => {
                let mut mask = vec![false; size];
                for set in sets {
                    domain.check_same(&set.domain())?;
                    if let MeasurableSet::Discrete(s) = set {
                        for &i in &s.indices {
                            mask[i] = true;
                        }
                    }
                }
                let indices = (0..size).filter(|&i| mask[i]).collect();
                Ok(MeasurableSet::Discrete(DiscreteSubset { size, indices }))
            }
            Domain::UnitInterval => {
                let mut all = Vec::new();
                for set in sets {
                    domain.check_same(&set.domain())?;
                    if let MeasurableSet::Interval(s) = set {
                        all.extend(s.intervals().iter().cloned());
                    }
                }
                Ok(MeasurableSet::Interval(IntervalSet::from_intervals(all)))
            }
        }
    }
}

impl From<IntervalSet> for MeasurableSet {
    fn from(s: IntervalSet) -> Self {
        MeasurableSet::Interval(s)
    }
}

impl From<DiscreteSubset> for MeasurableSet {
    fn from(s: DiscreteSubset) -> Self {
        MeasurableSet::Discrete(s)
    }
}

impl fmt::Display for MeasurableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasurableSet::Discrete(s) => {
                f.write_str("{")?;
                for (k, i) in s.indices.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{i}")?;
                }
                f.write_str("}")
            }
            MeasurableSet::Interval(s) => write!(f, "{s}"),
        }
    }
}
