//! The three-step measure integral.
//!
//! Non-negative integrands are integrated as the limit of the integrals of
//! their dyadic approximations `f_n`, where `f_n` rounds `f` down to the
//! grid `k/2ⁿ` and caps it at `n`. Signed integrands split into `f⁺ − f⁻`.
//! Because the supported integrands (simple and piecewise-linear functions)
//! have closed-form integrals, every limit comes with an exact reference
//! value and a certified error bound.

mod dyadic;
mod integrand;
mod piecewise_linear;

use std::fmt;

pub use dyadic::{level_antiderivative, level_floor, level_floor_left};
pub use integrand::{Integrand, MATERIALIZE_LIMIT};
pub use piecewise_linear::{AffinePiece, PiecewiseLinearFunction};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::measure_space::{MeasurableSet, Measure, Point};
use crate::rational::{inv_pow2, Rational};
use crate::simple_function::ScalarSimple;

/// Largest approximation level accepted where levels are explicit parameters.
pub const MAX_LEVEL: u32 = 30;

/// How [`integrate_nonneg`] evaluates the integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegrationMode {
    /// Closed form.
    Exact,
    /// `∫ f_n dm` at the given level.
    AtLevel(u32),
}

/// Result of [`integrate_nonneg`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonNegIntegral {
    pub value: Rational,
    /// Certified bound on `∫ f dm − value`; zero in exact mode, `None` at
    /// levels below `sup f` where the dyadic bound does not apply.
    pub error_bound: Option<Rational>,
}

/// Integrability of a measurable function with respect to m.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntegrabilityClass {
    /// `∫f⁺ < ∞` and `∫f⁻ < ∞`.
    Integrable,
    /// Only `∫f⁻` is finite; the integral is `+∞`.
    QuasiIntegrablePlus,
    /// Only `∫f⁺` is finite; the integral is `−∞`.
    QuasiIntegrableMinus,
    NotQuasiIntegrable,
}

impl IntegrabilityClass {
    /// Classifies from the two part integrals, `None` standing for `+∞`.
    pub fn classify(positive: Option<&Rational>, negative: Option<&Rational>) -> Self {
        match (positive.is_some(), negative.is_some()) {
            (true, true) => IntegrabilityClass::Integrable,
            (false, true) => IntegrabilityClass::QuasiIntegrablePlus,
            (true, false) => IntegrabilityClass::QuasiIntegrableMinus,
            (false, false) => IntegrabilityClass::NotQuasiIntegrable,
        }
    }
}

impl fmt::Display for IntegrabilityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IntegrabilityClass::Integrable => "integrable",
            IntegrabilityClass::QuasiIntegrablePlus => "quasi_integrable_plus",
            IntegrabilityClass::QuasiIntegrableMinus => "quasi_integrable_minus",
            IntegrabilityClass::NotQuasiIntegrable => "not_quasi_integrable",
        })
    }
}

/// Result of [`mi_integrate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MiIntegral {
    pub class: IntegrabilityClass,
    /// `∫ f⁺ dm`, `None` when infinite.
    pub positive: Option<Rational>,
    /// `∫ f⁻ dm`, `None` when infinite.
    pub negative: Option<Rational>,
    /// `∫ f dm`, present when the function is integrable.
    pub value: Option<Rational>,
}

impl fmt::Display for MiIntegral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |x: &Option<Rational>| x.as_ref().map_or("∞".to_string(), Rational::to_string);
        write!(f, "{}: ∫f⁺ = {}, ∫f⁻ = {}", self.class, show(&self.positive), show(&self.negative))?;
        match &self.value {
            Some(v) => write!(f, ", ∫f = {v}"),
            None => Ok(()),
        }
    }
}

/// The monotone sequence `f_1 ≤ f_2 ≤ … ↑ f` of dyadic approximations.
#[derive(Debug, Clone)]
pub struct MonotoneApproxSequence {
    target: Integrand,
}

impl MonotoneApproxSequence {
    pub fn new(target: Integrand) -> Result<Self> {
        if !target.is_nonnegative() {
            return Err(Error::NegativeIntegrand);
        }
        Ok(MonotoneApproxSequence { target })
    }

    pub fn target(&self) -> &Integrand {
        &self.target
    }

    pub fn level(&self, n: u32) -> Result<ScalarSimple> {
        self.target.dyadic_approx(n)
    }

    pub fn value_at(&self, n: u32, point: &Point) -> Result<Rational> {
        self.target.dyadic_value(n, point)
    }

    pub fn level_integral(&self, n: u32, m: &Measure) -> Result<Rational> {
        self.target.dyadic_integral(n, m)
    }
}

/// `f_n`, the level-`n` dyadic approximation of a non-negative integrand.
pub fn dyadic_approx(f: &Integrand, n: u32) -> Result<ScalarSimple> {
    f.dyadic_approx(n)
}

/// `∫ f dm` for `f ≥ 0`, exactly or at a dyadic level.
pub fn integrate_nonneg(f: &Integrand, m: &Measure, mode: IntegrationMode) -> Result<NonNegIntegral> {
    if !f.is_nonnegative() {
        return Err(Error::NegativeIntegrand);
    }
    match mode {
        IntegrationMode::Exact => Ok(NonNegIntegral {
            value: f.exact_integral(m)?,
            error_bound: Some(Rational::from_integer(0.into())),
        }),
        IntegrationMode::AtLevel(n) => {
            let value = f.dyadic_integral(n, m)?;
            let error_bound = (f.sup() <= Rational::from_integer(BigInt::from(n)))
                .then(|| inv_pow2(n) * m.total_mass());
            Ok(NonNegIntegral { value, error_bound })
        }
    }
}

/// A bound on `∫ f dm − ∫ f_n dm` valid at every level:
/// `2⁻ⁿ·m(Ω) + ∫ (f − n)⁺ dm`. The second term vanishes once `n ≥ sup f`.
pub fn level_gap_bound(f: &Integrand, m: &Measure, n: u32) -> Result<Rational> {
    if !f.is_nonnegative() {
        return Err(Error::NegativeIntegrand);
    }
    let excess = f.excess_integral(&Rational::from_integer(BigInt::from(n)), m)?;
    Ok(inv_pow2(n) * m.total_mass() + excess)
}

/// `∫ f dm = ∫ f⁺ dm − ∫ f⁻ dm`.
pub fn mi_integrate(f: &Integrand, m: &Measure) -> Result<MiIntegral> {
    f.check_measure(m)?;
    let positive = integrate_nonneg(&f.positive_part(), m, IntegrationMode::Exact)?.value;
    let negative = integrate_nonneg(&f.negative_part(), m, IntegrationMode::Exact)?.value;
    let class = IntegrabilityClass::classify(Some(&positive), Some(&negative));
    let value = (class == IntegrabilityClass::Integrable).then(|| &positive - &negative);
    Ok(MiIntegral {
        class,
        positive: Some(positive),
        negative: Some(negative),
        value,
    })
}

/// `∫_A f dm = ∫ 1_A f dm`.
pub fn mi_integrate_over_set(set: &MeasurableSet, f: &Integrand, m: &Measure) -> Result<Rational> {
    m.domain().check_same(&set.domain())?;
    let restricted = f.restrict(set)?;
    mi_integrate(&restricted, m)?
        .value
        .ok_or_else(|| Error::UnsupportedIntegrand("restriction is not integrable".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure_space::Domain;
    use crate::rational::{int, rat};

    fn lebesgue() -> Measure {
        Measure::lebesgue()
    }

    fn identity() -> Integrand {
        PiecewiseLinearFunction::identity().into()
    }

    #[test]
    fn identity_exact_and_levels() {
        let f = identity();
        assert_eq!(integrate_nonneg(&f, &lebesgue(), IntegrationMode::Exact).unwrap().value, rat(1, 2));
        let l2 = integrate_nonneg(&f, &lebesgue(), IntegrationMode::AtLevel(2)).unwrap();
        assert_eq!(l2.value, rat(3, 8));
        assert_eq!(l2.error_bound, Some(rat(1, 4)));
    }

    #[test]
    fn bound_withheld_below_sup() {
        let f = identity().scale(&int(3));
        let r = integrate_nonneg(&f, &lebesgue(), IntegrationMode::AtLevel(2)).unwrap();
        assert_eq!(r.error_bound, None);
        let r = integrate_nonneg(&f, &lebesgue(), IntegrationMode::AtLevel(3)).unwrap();
        assert_eq!(r.error_bound, Some(rat(1, 8)));
    }

    #[test]
    fn tent_exact() {
        let tent: Integrand = PiecewiseLinearFunction::new(
            vec![int(0), rat(1, 2), int(1)],
            vec![AffinePiece::new(int(2), int(0)), AffinePiece::new(int(-2), int(2))],
        )
        .unwrap()
        .into();
        assert_eq!(integrate_nonneg(&tent, &lebesgue(), IntegrationMode::Exact).unwrap().value, rat(1, 2));
    }

    #[test]
    fn zero_integrand() {
        let z = Integrand::Simple(ScalarSimple::zero(Domain::UnitInterval, 1));
        assert_eq!(integrate_nonneg(&z, &lebesgue(), IntegrationMode::Exact).unwrap().value, int(0));
        let r = mi_integrate(&z, &lebesgue()).unwrap();
        assert_eq!(r.class, IntegrabilityClass::Integrable);
        assert_eq!(r.value, Some(int(0)));
    }

    #[test]
    fn centred_identity() {
        let f: Integrand = PiecewiseLinearFunction::identity()
            .sub(&PiecewiseLinearFunction::constant(rat(1, 2)))
            .into();
        let r = mi_integrate(&f, &lebesgue()).unwrap();
        assert_eq!(r.positive, Some(rat(1, 8)));
        assert_eq!(r.negative, Some(rat(1, 8)));
        assert_eq!(r.value, Some(int(0)));
    }

    #[test]
    fn signed_step_function() {
        let f = ScalarSimple::scalar(
            Domain::UnitInterval,
            vec![
                (int(1), MeasurableSet::interval(int(0), rat(1, 4)).unwrap()),
                (int(-1), MeasurableSet::interval(rat(1, 4), int(1)).unwrap()),
            ],
        )
        .unwrap();
        assert_eq!(mi_integrate(&f.into(), &lebesgue()).unwrap().value, Some(rat(-1, 2)));
    }

    #[test]
    fn integrals_over_sets() {
        let half = MeasurableSet::interval(int(0), rat(1, 2)).unwrap();
        let one = Integrand::Simple(ScalarSimple::constant(Domain::UnitInterval, int(1)));
        assert_eq!(mi_integrate_over_set(&half, &one, &lebesgue()).unwrap(), rat(1, 2));
        let empty = MeasurableSet::empty(Domain::UnitInterval);
        assert_eq!(mi_integrate_over_set(&empty, &identity(), &lebesgue()).unwrap(), int(0));
        assert_eq!(mi_integrate_over_set(&half, &identity(), &lebesgue()).unwrap(), rat(1, 8));
        let other = MeasurableSet::indices(2, vec![0]).unwrap();
        assert!(mi_integrate_over_set(&other, &identity(), &lebesgue()).is_err());
    }

    #[test]
    fn classification_table() {
        let one = int(1);
        assert_eq!(IntegrabilityClass::classify(Some(&one), Some(&one)), IntegrabilityClass::Integrable);
        assert_eq!(IntegrabilityClass::classify(None, Some(&one)), IntegrabilityClass::QuasiIntegrablePlus);
        assert_eq!(IntegrabilityClass::classify(Some(&one), None), IntegrabilityClass::QuasiIntegrableMinus);
        assert_eq!(IntegrabilityClass::classify(None, None), IntegrabilityClass::NotQuasiIntegrable);
    }

    #[test]
    fn general_gap_bound() {
        let f = Integrand::Simple(ScalarSimple::constant(Domain::UnitInterval, int(5)));
        // level 1: f_1 = 1, gap 4 ≤ 1/2 + ∫(5 − 1)⁺ = 9/2
        let gap = f.exact_integral(&lebesgue()).unwrap() - f.dyadic_integral(1, &lebesgue()).unwrap();
        assert_eq!(gap, int(4));
        assert_eq!(level_gap_bound(&f, &lebesgue(), 1).unwrap(), rat(9, 2));
        assert_eq!(level_gap_bound(&identity(), &lebesgue(), 2).unwrap(), rat(1, 4));
    }

    #[test]
    fn monotone_sequence_rejects_negative_target() {
        assert!(MonotoneApproxSequence::new(identity().scale(&int(-1))).is_err());
        let seq = MonotoneApproxSequence::new(identity()).unwrap();
        assert_eq!(seq.level_integral(3, &lebesgue()).unwrap(), rat(7, 16));
    }
}
