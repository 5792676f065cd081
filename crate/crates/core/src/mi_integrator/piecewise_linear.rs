use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::measure_space::{IntervalMeasure, IntervalSet, MeasurableSet};
use crate::rational::Rational;
use crate::simple_function::ScalarSimple;

/// `x ↦ slope·x + intercept`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffinePiece {
    pub slope: Rational,
    pub intercept: Rational,
}

impl AffinePiece {
    pub fn new(slope: Rational, intercept: Rational) -> Self {
        AffinePiece { slope, intercept }
    }

    pub fn constant(c: Rational) -> Self {
        AffinePiece::new(Rational::zero(), c)
    }

    pub fn at(&self, x: &Rational) -> Rational {
        &self.slope * x + &self.intercept
    }

    fn plus(&self, other: &AffinePiece) -> AffinePiece {
        AffinePiece::new(&self.slope + &other.slope, &self.intercept + &other.intercept)
    }

    fn scaled(&self, c: &Rational) -> AffinePiece {
        AffinePiece::new(&self.slope * c, &self.intercept * c)
    }

    /// `∫_{x0}^{x1} (a x + b) dx`.
    pub fn integral(&self, x0: &Rational, x1: &Rational) -> Rational {
        let two = Rational::from_integer(2.into());
        &self.slope * (x1 * x1 - x0 * x0) / two + &self.intercept * (x1 - x0)
    }
}

/// A function on `[0, 1)` that is affine on each `[s_{j−1}, s_j)`.
///
/// Pieces may jump at breakpoints; the value at `s_j` is the one of the
/// piece starting there.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PiecewiseLinearFunction {
    breakpoints: Vec<Rational>,
    pieces: Vec<AffinePiece>,
}

impl PiecewiseLinearFunction {
    pub fn new(breakpoints: Vec<Rational>, pieces: Vec<AffinePiece>) -> Result<Self> {
        let bad = |msg: &str| Err(Error::InvalidPiecewiseLinear(msg.to_string()));
        if breakpoints.len() < 2 {
            return bad("need at least the breakpoints 0 and 1");
        }
        if !breakpoints[0].is_zero() || !breakpoints[breakpoints.len() - 1].is_one() {
            return bad("breakpoints must start at 0 and end at 1");
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return bad("breakpoints must be strictly increasing");
        }
        if pieces.len() + 1 != breakpoints.len() {
            return Err(Error::InvalidPiecewiseLinear(format!(
                "{} breakpoints need {} pieces, found {}",
                breakpoints.len(),
                breakpoints.len() - 1,
                pieces.len()
            )));
        }
        Ok(PiecewiseLinearFunction {
            breakpoints,
            pieces,
        })
    }

    pub fn constant(c: Rational) -> Self {
        PiecewiseLinearFunction {
            breakpoints: vec![Rational::zero(), Rational::one()],
            pieces: vec![AffinePiece::constant(c)],
        }
    }

    /// `x ↦ x`.
    pub fn identity() -> Self {
        PiecewiseLinearFunction {
            breakpoints: vec![Rational::zero(), Rational::one()],
            pieces: vec![AffinePiece::new(Rational::one(), Rational::zero())],
        }
    }

    /// A step function on `[0, 1)` viewed as piecewise linear.
    pub fn from_simple(f: &ScalarSimple) -> Result<Self> {
        let mut atoms = Vec::new();
        for t in f.canonicalize().terms() {
            match &t.set {
                MeasurableSet::Interval(s) => {
                    atoms.extend(s.intervals().iter().map(|iv| (iv.start().clone(), t.value.clone())))
                }
                MeasurableSet::Discrete(_) => {
                    return Err(Error::UnsupportedIntegrand(
                        "piecewise-linear functions live on [0, 1)".into(),
                    ))
                }
            }
        }
        atoms.sort();
        let mut breakpoints: Vec<Rational> = atoms.iter().map(|a| a.0.clone()).collect();
        breakpoints.push(Rational::one());
        let pieces = atoms.into_iter().map(|a| AffinePiece::constant(a.1)).collect();
        PiecewiseLinearFunction::new(breakpoints, pieces)
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[AffinePiece] {
        &self.pieces
    }

    /// `(start, end, piece)` for every piece.
    pub fn segments(&self) -> impl Iterator<Item = (&Rational, &Rational, &AffinePiece)> {
        self.breakpoints
            .windows(2)
            .zip(&self.pieces)
            .map(|(w, p)| (&w[0], &w[1], p))
    }

    pub fn piece_index(&self, x: &Rational) -> Option<usize> {
        if x.is_negative() || *x >= Rational::one() {
            return None;
        }
        Some(self.breakpoints.partition_point(|b| b <= x) - 1)
    }

    pub fn evaluate(&self, x: &Rational) -> Result<Rational> {
        let j = self
            .piece_index(x)
            .ok_or_else(|| Error::PointOutsideSpace(x.to_string()))?;
        Ok(self.pieces[j].at(x))
    }

    /// Supremum over `[0, 1)`; a piece contributes its limit at the right end.
    pub fn sup(&self) -> Rational {
        self.segments()
            .flat_map(|(a, b, p)| [p.at(a), p.at(b)])
            .max()
            .expect("at least one piece")
    }

    pub fn inf(&self) -> Rational {
        self.segments()
            .flat_map(|(a, b, p)| [p.at(a), p.at(b)])
            .min()
            .expect("at least one piece")
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.inf().is_negative()
    }

    /// Same function with extra breakpoints at every point of `points`
    /// lying strictly inside `(0, 1)`.
    pub fn refined(&self, points: &[Rational]) -> Self {
        let mut extra: Vec<&Rational> = points
            .iter()
            .filter(|p| p.is_positive() && **p < Rational::one())
            .collect();
        extra.sort();
        extra.dedup();
        let mut breakpoints = Vec::with_capacity(self.breakpoints.len() + extra.len());
        let mut pieces = Vec::with_capacity(self.pieces.len() + extra.len());
        let mut e = extra.into_iter().peekable();
        for (start, end, piece) in self.segments() {
            breakpoints.push(start.clone());
            pieces.push(piece.clone());
            while let Some(p) = e.next_if(|p| *p <= end) {
                if p > start && p < end {
                    breakpoints.push(p.clone());
                    pieces.push(piece.clone());
                }
            }
        }
        breakpoints.push(Rational::one());
        PiecewiseLinearFunction {
            breakpoints,
            pieces,
        }
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&AffinePiece, &AffinePiece) -> AffinePiece) -> Self {
        let a = self.refined(&other.breakpoints);
        let b = other.refined(&self.breakpoints);
        debug_assert_eq!(a.breakpoints, b.breakpoints);
        let pieces = a.pieces.iter().zip(&b.pieces).map(|(p, q)| op(p, q)).collect();
        PiecewiseLinearFunction {
            breakpoints: a.breakpoints,
            pieces,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, AffinePiece::plus)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PiecewiseLinearFunction {
            breakpoints: self.breakpoints.clone(),
            pieces: self.pieces.iter().map(|p| p.scaled(c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    /// Points strictly inside a piece where it crosses zero.
    fn zero_crossings(&self) -> Vec<Rational> {
        self.segments()
            .filter(|(_, _, p)| !p.slope.is_zero())
            .filter_map(|(a, b, p)| {
                let root = -&p.intercept / &p.slope;
                (&root > a && &root < b).then_some(root)
            })
            .collect()
    }

    /// Keeps pieces where `keep(value at midpoint)` holds, zeroes the rest.
    /// After refining at zero crossings every piece has one sign.
    fn clamp_by_sign(&self, keep: impl Fn(&Rational) -> bool) -> Self {
        let r = self.refined(&self.zero_crossings());
        let two = Rational::from_integer(2.into());
        let pieces = r
            .segments()
            .map(|(a, b, p)| {
                if keep(&p.at(&((a + b) / &two))) {
                    p.clone()
                } else {
                    AffinePiece::constant(Rational::zero())
                }
            })
            .collect();
        PiecewiseLinearFunction {
            breakpoints: r.breakpoints,
            pieces,
        }
    }

    /// `f⁺ = max(0, f)`.
    pub fn positive_part(&self) -> Self {
        self.clamp_by_sign(Signed::is_positive)
    }

    /// `f⁻ = max(0, −f)`.
    pub fn negative_part(&self) -> Self {
        self.neg().positive_part()
    }

    /// `|f| = f⁺ + f⁻`.
    pub fn abs(&self) -> Self {
        self.positive_part().add(&self.negative_part())
    }

    /// `1_A · f`.
    pub fn restrict(&self, set: &IntervalSet) -> Self {
        let r = self.refined(&set.endpoints());
        let pieces = r
            .segments()
            .map(|(a, _, p)| {
                if set.contains(a) {
                    p.clone()
                } else {
                    AffinePiece::constant(Rational::zero())
                }
            })
            .collect();
        PiecewiseLinearFunction {
            breakpoints: r.breakpoints,
            pieces,
        }
    }

    /// `(start, end, piece, density)` over the common refinement of the
    /// pieces and the density cells of `m`.
    pub fn cells_with<'a>(
        &'a self,
        m: &'a IntervalMeasure,
    ) -> Vec<(Rational, Rational, &'a AffinePiece, &'a Rational)> {
        let pieces: Vec<_> = self.segments().collect();
        let cells: Vec<_> = m.cells().collect();
        let mut out = Vec::with_capacity(pieces.len() + cells.len());
        let (mut i, mut j) = (0, 0);
        while i < pieces.len() && j < cells.len() {
            let (a0, a1, p) = pieces[i];
            let (b0, b1, d) = cells[j];
            let start = std::cmp::max(a0, b0);
            let end = std::cmp::min(a1, b1);
            if start < end {
                out.push((start.clone(), end.clone(), p, d));
            }
            if a1 == end {
                i += 1;
            }
            if b1 == end {
                j += 1;
            }
        }
        out
    }

    /// Exact `∫ f dm` from the antiderivative of each affine piece.
    pub fn integrate(&self, m: &IntervalMeasure) -> Rational {
        self.cells_with(m)
            .into_iter()
            .filter(|(_, _, _, d)| !d.is_zero())
            .map(|(a, b, p, d)| d * p.integral(&a, &b))
            .sum()
    }

    /// True when every piece is constant.
    pub fn is_step_function(&self) -> bool {
        self.pieces.iter().all(|p| p.slope.is_zero())
    }
}

impl fmt::Display for PiecewiseLinearFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (a, b, p)) in self.segments().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "[{a}, {b}): {}x + {}", p.slope, p.intercept)?;
        }
        Ok(())
    }
}
