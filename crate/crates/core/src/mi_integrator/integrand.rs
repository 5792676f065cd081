use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::dyadic::{level_antiderivative, level_floor, level_floor_left};
use super::piecewise_linear::PiecewiseLinearFunction;
use crate::error::{Error, Result};
use crate::measure_space::{Domain, Interval, IntervalSet, MeasurableSet, Measure, Point};
use crate::rational::{ceil_int, dyadic_exponent, pow2, Rational};
use crate::simple_function::ScalarSimple;

/// Largest number of level-set intervals a materialized approximation of a
/// piecewise-linear integrand may have.
pub const MATERIALIZE_LIMIT: u64 = 1 << 20;

/// The scalar integrands the integrators accept: simple functions on either
/// space, and piecewise-linear functions on `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Integrand {
    Simple(ScalarSimple),
    PiecewiseLinear(PiecewiseLinearFunction),
}

impl From<ScalarSimple> for Integrand {
    fn from(f: ScalarSimple) -> Self {
        Integrand::Simple(f)
    }
}

impl From<PiecewiseLinearFunction> for Integrand {
    fn from(f: PiecewiseLinearFunction) -> Self {
        Integrand::PiecewiseLinear(f)
    }
}

impl Integrand {
    pub fn domain(&self) -> Domain {
        match self {
            Integrand::Simple(f) => f.domain(),
            Integrand::PiecewiseLinear(_) => Domain::UnitInterval,
        }
    }

    pub fn check_measure(&self, m: &Measure) -> Result<()> {
        self.domain().check_same(&m.domain())
    }

    pub fn evaluate(&self, point: &Point) -> Result<Rational> {
        match (self, point) {
            (Integrand::Simple(f), _) => f.evaluate(point),
            (Integrand::PiecewiseLinear(f), Point::Real(x)) => f.evaluate(x),
            (Integrand::PiecewiseLinear(_), Point::Index(_)) => {
                Err(Error::PointOutsideSpace(point.to_string()))
            }
        }
    }

    pub fn positive_part(&self) -> Integrand {
        match self {
            Integrand::Simple(f) => Integrand::Simple(f.pos_part()),
            Integrand::PiecewiseLinear(f) => Integrand::PiecewiseLinear(f.positive_part()),
        }
    }

    pub fn negative_part(&self) -> Integrand {
        match self {
            Integrand::Simple(f) => Integrand::Simple(f.neg_part()),
            Integrand::PiecewiseLinear(f) => Integrand::PiecewiseLinear(f.negative_part()),
        }
    }

    pub fn abs(&self) -> Integrand {
        match self {
            Integrand::Simple(f) => Integrand::Simple(f.abs()),
            Integrand::PiecewiseLinear(f) => Integrand::PiecewiseLinear(f.abs()),
        }
    }

    pub fn sup(&self) -> Rational {
        match self {
            Integrand::Simple(f) => f.sup(),
            Integrand::PiecewiseLinear(f) => f.sup(),
        }
    }

    pub fn inf(&self) -> Rational {
        match self {
            Integrand::Simple(f) => f.inf(),
            Integrand::PiecewiseLinear(f) => f.inf(),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.inf().is_negative()
    }

    fn as_piecewise_linear(&self) -> Result<PiecewiseLinearFunction> {
        match self {
            Integrand::Simple(f) => PiecewiseLinearFunction::from_simple(f),
            Integrand::PiecewiseLinear(f) => Ok(f.clone()),
        }
    }

    /// Pointwise sum. Mixing a step function on `[0, 1)` with a
    /// piecewise-linear one yields a piecewise-linear function.
    pub fn add(&self, other: &Integrand) -> Result<Integrand> {
        self.domain().check_same(&other.domain())?;
        match (self, other) {
            (Integrand::Simple(f), Integrand::Simple(g)) => Ok(Integrand::Simple(f.add(g)?)),
            _ => Ok(Integrand::PiecewiseLinear(
                self.as_piecewise_linear()?.add(&other.as_piecewise_linear()?),
            )),
        }
    }

    pub fn scale(&self, c: &Rational) -> Integrand {
        match self {
            Integrand::Simple(f) => Integrand::Simple(f.scale(c)),
            Integrand::PiecewiseLinear(f) => Integrand::PiecewiseLinear(f.scale(c)),
        }
    }

    /// `1_A · f`.
    pub fn restrict(&self, set: &MeasurableSet) -> Result<Integrand> {
        self.domain().check_same(&set.domain())?;
        match (self, set) {
            (Integrand::Simple(f), _) => Ok(Integrand::Simple(f.restrict(set)?)),
            (Integrand::PiecewiseLinear(f), MeasurableSet::Interval(s)) => {
                Ok(Integrand::PiecewiseLinear(f.restrict(s)))
            }
            _ => unreachable!("domains checked above"),
        }
    }

    /// `∫ f dm` in closed form: the elementary sum for simple functions, the
    /// antiderivative of every affine piece for piecewise-linear ones.
    pub fn exact_integral(&self, m: &Measure) -> Result<Rational> {
        self.check_measure(m)?;
        match (self, m) {
            (Integrand::Simple(f), _) => f.integrate_elementary(m),
            (Integrand::PiecewiseLinear(f), Measure::Interval(im)) => Ok(f.integrate(im)),
            _ => unreachable!("domains checked above"),
        }
    }

    /// `∫ (f − c)⁺ dm`.
    pub fn excess_integral(&self, c: &Rational, m: &Measure) -> Result<Rational> {
        let shifted = match self {
            Integrand::Simple(f) => {
                Integrand::Simple(f.sub(&ScalarSimple::constant(f.domain(), c.clone()))?)
            }
            Integrand::PiecewiseLinear(f) => {
                Integrand::PiecewiseLinear(f.sub(&PiecewiseLinearFunction::constant(c.clone())))
            }
        };
        shifted.positive_part().exact_integral(m)
    }

    fn require_nonnegative(&self) -> Result<()> {
        if self.is_nonnegative() {
            Ok(())
        } else {
            Err(Error::NegativeIntegrand)
        }
    }

    /// `f_n(ω)` for the level-`n` dyadic approximation of a non-negative
    /// integrand. On decreasing pieces the half-open level sets carry the
    /// left limit of `φ_n`, so `f_n ≤ f_{n+1} ≤ f` holds at every point.
    pub fn dyadic_value(&self, n: u32, point: &Point) -> Result<Rational> {
        self.require_nonnegative()?;
        match (self, point) {
            (Integrand::Simple(f), _) => Ok(level_floor(&f.evaluate(point)?, n)),
            (Integrand::PiecewiseLinear(f), Point::Real(x)) => {
                let j = f
                    .piece_index(x)
                    .ok_or_else(|| Error::PointOutsideSpace(x.to_string()))?;
                let piece = &f.pieces()[j];
                let u = piece.at(x);
                Ok(if piece.slope.is_negative() {
                    level_floor_left(&u, n)
                } else {
                    level_floor(&u, n)
                })
            }
            (Integrand::PiecewiseLinear(_), Point::Index(_)) => {
                Err(Error::PointOutsideSpace(point.to_string()))
            }
        }
    }

    /// `∫ f_n dm` without materializing `f_n`.
    pub fn dyadic_integral(&self, n: u32, m: &Measure) -> Result<Rational> {
        self.require_nonnegative()?;
        self.check_measure(m)?;
        match (self, m) {
            (Integrand::Simple(f), _) => {
                let mut total = Rational::zero();
                for t in f.terms() {
                    let level = level_floor(&t.value, n);
                    if !level.is_zero() {
                        total += level * m.measure_of(&t.set)?;
                    }
                }
                Ok(total)
            }
            (Integrand::PiecewiseLinear(f), Measure::Interval(im)) => {
                let mut total = Rational::zero();
                for (x0, x1, piece, density) in f.cells_with(im) {
                    if density.is_zero() {
                        continue;
                    }
                    if piece.slope.is_zero() {
                        total += level_floor(&piece.intercept, n) * density * (&x1 - &x0);
                        continue;
                    }
                    let (u0, u1) = (piece.at(&x0), piece.at(&x1));
                    let (lo, hi) = if u0 <= u1 { (u0, u1) } else { (u1, u0) };
                    // substitute u = a x + b
                    total += density * (level_antiderivative(&hi, n) - level_antiderivative(&lo, n))
                        / piece.slope.abs();
                }
                Ok(total)
            }
            _ => unreachable!("domains checked above"),
        }
    }

    /// The level-`n` dyadic approximation as an explicit simple function,
    /// level sets solved exactly.
    pub fn dyadic_approx(&self, n: u32) -> Result<ScalarSimple> {
        self.require_nonnegative()?;
        match self {
            Integrand::Simple(f) => Ok(f.map_values(1, |v| level_floor(v, n)).canonicalize()),
            Integrand::PiecewiseLinear(f) => materialize_levels(f, n),
        }
    }

    /// Smallest `L` with `f_n = f` for all `n ≥ L`, when one exists: every
    /// value must be dyadic and at most `L`.
    pub fn dyadic_exact_level(&self) -> Option<u32> {
        let values: Vec<Rational> = match self {
            Integrand::Simple(f) => f.canonicalize().terms().iter().map(|t| t.value.clone()).collect(),
            Integrand::PiecewiseLinear(f) if f.is_step_function() => {
                f.pieces().iter().map(|p| p.intercept.clone()).collect()
            }
            Integrand::PiecewiseLinear(_) => return None,
        };
        let mut level = 0u32;
        for v in values.iter().filter(|v| !v.is_zero()) {
            let grid = dyadic_exponent(v)?;
            let height = ceil_int(v).to_u32()?;
            level = level.max(grid).max(height);
        }
        Some(level)
    }
}

impl fmt::Display for Integrand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Integrand::Simple(s) => write!(f, "{s}"),
            Integrand::PiecewiseLinear(p) => write!(f, "{p}"),
        }
    }
}

fn materialize_levels(f: &PiecewiseLinearFunction, n: u32) -> Result<ScalarSimple> {
    let s = pow2(n);
    let cap = Rational::from_integer(BigInt::from(n));
    let top = &cap * &s;

    let mut estimate: u64 = 0;
    for (a, b, p) in f.segments() {
        let (u0, u1) = (p.at(a), p.at(b));
        let spread = (std::cmp::max(&u0, &u1).min(&cap) - std::cmp::min(&u0, &u1).min(&cap)).abs();
        estimate = estimate.saturating_add((spread * &s).ceil().to_integer().to_u64().unwrap_or(u64::MAX));
        estimate = estimate.saturating_add(1);
    }
    if estimate > MATERIALIZE_LIMIT {
        return Err(Error::LevelSetLimit {
            level: n,
            cells: estimate,
            limit: MATERIALIZE_LIMIT,
        });
    }

    let two = Rational::from_integer(2.into());
    let mut groups: BTreeMap<Rational, Vec<Interval>> = BTreeMap::new();
    for (a, b, p) in f.segments() {
        let mut cuts = vec![a.clone()];
        if !p.slope.is_zero() {
            let (u0, u1) = (p.at(a), p.at(b));
            let (lo, hi) = if u0 <= u1 { (u0, u1) } else { (u1, u0) };
            let first = (&lo * &s).floor() + Rational::from_integer(1.into());
            let last = std::cmp::min((&hi * &s).ceil() - Rational::from_integer(1.into()), top.clone());
            let mut k = first;
            let mut inner = Vec::new();
            while k <= last {
                inner.push((&k / &s - &p.intercept) / &p.slope);
                k += Rational::from_integer(1.into());
            }
            if p.slope.is_negative() {
                inner.reverse();
            }
            cuts.extend(inner);
        }
        cuts.push(b.clone());
        for w in cuts.windows(2) {
            let mid = (&w[0] + &w[1]) / &two;
            let value = level_floor(&p.at(&mid), n);
            groups
                .entry(value)
                .or_default()
                .push(Interval::new_unchecked(w[0].clone(), w[1].clone()));
        }
    }
    let terms = groups
        .into_iter()
        .map(|(v, ivs)| (v, MeasurableSet::Interval(IntervalSet::from_sorted(ivs))))
        .collect();
    Ok(ScalarSimple::scalar(Domain::UnitInterval, terms)?.canonicalize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mi_integrator::piecewise_linear::AffinePiece;
    use crate::rational::{int, rat};

    fn identity() -> Integrand {
        PiecewiseLinearFunction::identity().into()
    }

    fn tent() -> Integrand {
        PiecewiseLinearFunction::new(
            vec![int(0), rat(1, 2), int(1)],
            vec![AffinePiece::new(int(2), int(0)), AffinePiece::new(int(-2), int(2))],
        )
        .unwrap()
        .into()
    }

    #[test]
    fn identity_level_one() {
        let f1 = identity().dyadic_approx(1).unwrap();
        let expected = ScalarSimple::scalar(
            Domain::UnitInterval,
            vec![
                (int(0), MeasurableSet::interval(int(0), rat(1, 2)).unwrap()),
                (rat(1, 2), MeasurableSet::interval(rat(1, 2), int(1)).unwrap()),
            ],
        )
        .unwrap();
        assert_eq!(f1, expected.canonicalize());
        assert_eq!(f1.integrate_elementary(&Measure::lebesgue()).unwrap(), rat(1, 4));
    }

    #[test]
    fn closed_form_matches_materialized_levels() {
        let m = Measure::interval(vec![int(0), rat(1, 3), int(1)], vec![int(2), rat(1, 2)]).unwrap();
        for f in [identity(), tent(), tent().scale(&rat(5, 2))] {
            for n in 0..=7 {
                let explicit = f.dyadic_approx(n).unwrap().integrate_elementary(&m).unwrap();
                assert_eq!(f.dyadic_integral(n, &m).unwrap(), explicit, "{f} at level {n}");
            }
        }
    }

    #[test]
    fn pointwise_values_match_materialized_levels() {
        for f in [identity(), tent(), tent().scale(&rat(7, 3))] {
            for n in 0..=5 {
                let fn_ = f.dyadic_approx(n).unwrap();
                for k in 0..64 {
                    let p = Point::Real(rat(k, 64));
                    assert_eq!(fn_.evaluate(&p).unwrap(), f.dyadic_value(n, &p).unwrap(), "{f} n={n} x={k}/64");
                }
            }
        }
    }

    #[test]
    fn grid_aligned_constant_is_reproduced() {
        let c = Integrand::Simple(ScalarSimple::constant(Domain::UnitInterval, rat(3, 4)));
        assert!(c.dyadic_approx(2).unwrap().same_function(match &c {
            Integrand::Simple(s) => s,
            _ => unreachable!(),
        }));
        assert_eq!(c.dyadic_exact_level(), Some(2));
    }

    #[test]
    fn exact_levels() {
        assert_eq!(identity().dyadic_exact_level(), None);
        let third = Integrand::Simple(ScalarSimple::constant(Domain::UnitInterval, rat(1, 3)));
        assert_eq!(third.dyadic_exact_level(), None);
        let big = Integrand::Simple(ScalarSimple::constant(Domain::UnitInterval, rat(9, 2)));
        assert_eq!(big.dyadic_exact_level(), Some(5));
        let zero = Integrand::Simple(ScalarSimple::zero(Domain::UnitInterval, 1));
        assert_eq!(zero.dyadic_exact_level(), Some(0));
    }

    #[test]
    fn negative_integrands_rejected() {
        let f = identity().scale(&int(-1));
        assert_eq!(f.dyadic_approx(1).unwrap_err(), Error::NegativeIntegrand);
        assert_eq!(f.dyadic_integral(1, &Measure::lebesgue()).unwrap_err(), Error::NegativeIntegrand);
    }

    #[test]
    fn materialization_is_bounded() {
        assert!(matches!(identity().dyadic_approx(25), Err(Error::LevelSetLimit { .. })));
    }

    #[test]
    fn excess_over_level() {
        // ∫ (2x − 1)⁺ = 1/4
        let f = identity().scale(&int(2));
        assert_eq!(f.excess_integral(&int(1), &Measure::lebesgue()).unwrap(), rat(1, 4));
    }
}
