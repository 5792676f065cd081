use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{max_of, min_of, Rational};

/// Half-open interval `[start, end)` inside `[0, 1)` with `start < end`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    start: Rational,
    end: Rational,
}

impl Interval {
    pub fn new(start: Rational, end: Rational) -> Result<Self> {
        if start < Rational::zero() || end > Rational::one() || start >= end {
            return Err(Error::InvalidInterval {
                start: start.to_string(),
                end: end.to_string(),
            });
        }
        Ok(Interval { start, end })
    }

    /// Caller guarantees `0 <= start < end <= 1`.
    pub(crate) fn new_unchecked(start: Rational, end: Rational) -> Self {
        debug_assert!(start < end);
        Interval { start, end }
    }

    pub fn start(&self) -> &Rational {
        &self.start
    }

    pub fn end(&self) -> &Rational {
        &self.end
    }

    pub fn length(&self) -> Rational {
        &self.end - &self.start
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.start <= x && x < &self.end
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let start = max_of(&self.start, &other.start);
        let end = min_of(&self.end, &other.end);
        (start < end).then_some(Interval { start, end })
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.start, self.end)
    }
}

/// A finite union of half-open intervals in `[0, 1)`, kept sorted, disjoint
/// and maximally merged so that set equality is structural equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet::default()
    }

    /// The whole of `[0, 1)`.
    pub fn full() -> Self {
        IntervalSet {
            intervals: vec![Interval::new_unchecked(Rational::zero(), Rational::one())],
        }
    }

    /// `[start, end)` as a set.
    pub fn interval(start: Rational, end: Rational) -> Result<Self> {
        Ok(IntervalSet {
            intervals: vec![Interval::new(start, end)?],
        })
    }

    /// Union of arbitrary (possibly overlapping, unsorted) intervals.
    pub fn from_intervals(intervals: impl IntoIterator<Item = Interval>) -> Self {
        let mut v: Vec<Interval> = intervals.into_iter().collect();
        v.sort();
        IntervalSet::from_sorted(v)
    }

    /// Union of `(start, end)` pairs, each validated.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Rational, Rational)>) -> Result<Self> {
        let v = pairs
            .into_iter()
            .map(|(a, b)| Interval::new(a, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntervalSet::from_intervals(v))
    }

    /// Merges intervals already sorted by start.
    pub(crate) fn from_sorted(sorted: Vec<Interval>) -> Self {
        let mut out: Vec<Interval> = Vec::with_capacity(sorted.len());
        for iv in sorted {
            match out.last_mut() {
                Some(last) if iv.start <= last.end => {
                    if iv.end > last.end {
                        last.end = iv.end;
                    }
                }
                _ => out.push(iv),
            }
        }
        IntervalSet { intervals: out }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let idx = self.intervals.partition_point(|iv| iv.end <= *x);
        self.intervals.get(idx).is_some_and(|iv| iv.contains(x))
    }

    /// Lebesgue length.
    pub fn length(&self) -> Rational {
        self.intervals.iter().map(Interval::length).sum()
    }

    /// Left endpoint of the first interval.
    pub fn min_point(&self) -> Option<&Rational> {
        self.intervals.first().map(|iv| &iv.start)
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut merged = Vec::with_capacity(self.intervals.len() + other.intervals.len());
        let (mut i, mut j) = (0, 0);
        while i < self.intervals.len() || j < other.intervals.len() {
            let take_left = match (self.intervals.get(i), other.intervals.get(j)) {
                (Some(a), Some(b)) => a.start <= b.start,
                (Some(_), None) => true,
                _ => false,
            };
            if take_left {
                merged.push(self.intervals[i].clone());
                i += 1;
            } else {
                merged.push(other.intervals[j].clone());
                j += 1;
            }
        }
        IntervalSet::from_sorted(merged)
    }

    pub fn intersection(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.intervals.len() && j < other.intervals.len() {
            let (a, b) = (&self.intervals[i], &other.intervals[j]);
            if let Some(iv) = a.intersect(b) {
                out.push(iv);
            }
            if a.end <= b.end {
                i += 1;
            } else {
                j += 1;
            }
        }
        // pieces of two canonical sets never touch, so no merge is needed
        IntervalSet { intervals: out }
    }

    /// `[0, 1) \ self`.
    pub fn complement(&self) -> IntervalSet {
        let mut out = Vec::with_capacity(self.intervals.len() + 1);
        let mut cursor = Rational::zero();
        for iv in &self.intervals {
            if cursor < iv.start {
                out.push(Interval::new_unchecked(cursor.clone(), iv.start.clone()));
            }
            cursor = iv.end.clone();
        }
        if cursor < Rational::one() {
            out.push(Interval::new_unchecked(cursor, Rational::one()));
        }
        IntervalSet { intervals: out }
    }

    pub fn difference(&self, other: &IntervalSet) -> IntervalSet {
        self.intersection(&other.complement())
    }

    pub fn is_subset(&self, other: &IntervalSet) -> bool {
        self.difference(other).is_empty()
    }

    pub fn is_disjoint(&self, other: &IntervalSet) -> bool {
        self.intersection(other).is_empty()
    }

    /// All interval endpoints, sorted and deduplicated.
    pub fn endpoints(&self) -> Vec<Rational> {
        let mut pts: Vec<Rational> = self
            .intervals
            .iter()
            .flat_map(|iv| [iv.start.clone(), iv.end.clone()])
            .collect();
        pts.dedup();
        pts
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return f.write_str("∅");
        }
        for (k, iv) in self.intervals.iter().enumerate() {
            if k > 0 {
                f.write_str(" ∪ ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}
