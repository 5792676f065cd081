//! Series-based Bochner integration and the two directions of its
//! equivalence with the measure integral on finite measure spaces.

mod equivalence;
mod series;

use std::fmt;

pub use equivalence::{
    mi_from_series, series_from_mi, theorem_check, BochnerRepresentation, ConstructionTrace,
    DyadicIncrement, DyadicTelescopeRule, SeriesLimit, SignedParts, TheoremReport, TraceRecord,
    MAX_FINITE_TERMS,
};
pub use series::{
    BochnerIntegral, GeometricIndicatorRule, Series, SeriesRule, SeriesTerms, SummabilityCertificate,
};

use crate::error::{Error, Result};
use crate::measure_space::{Domain, Measure, Point};
use crate::mi_integrator::{mi_integrate, Integrand};
use crate::rational::Rational;
use crate::simple_function::{NormKind, SimpleFunction, Value};

/// A function that can appear as a term of a [`Series`].
pub trait Integrable<V: Value>: fmt::Debug + Send + Sync {
    fn domain(&self) -> Domain;

    fn dim(&self) -> usize;

    fn evaluate(&self, point: &Point) -> Result<V>;

    fn integral(&self, m: &Measure) -> Result<V>;

    /// `∫ ‖f‖ dm`.
    fn norm_integral(&self, m: &Measure, kind: NormKind) -> Result<Rational>;

    /// The function as an explicit simple function, when it is one.
    fn as_simple(&self) -> Result<SimpleFunction<V>>;

    fn is_elementary(&self) -> bool {
        self.as_simple().is_ok()
    }
}

impl<V: Value> Integrable<V> for SimpleFunction<V> {
    fn domain(&self) -> Domain {
        SimpleFunction::domain(self)
    }

    fn dim(&self) -> usize {
        SimpleFunction::dim(self)
    }

    fn evaluate(&self, point: &Point) -> Result<V> {
        SimpleFunction::evaluate(self, point)
    }

    fn integral(&self, m: &Measure) -> Result<V> {
        self.integrate_elementary(m)
    }

    fn norm_integral(&self, m: &Measure, kind: NormKind) -> Result<Rational> {
        self.l1_norm(m, kind)
    }

    fn as_simple(&self) -> Result<SimpleFunction<V>> {
        Ok(self.clone())
    }
}

impl Integrable<Rational> for Integrand {
    fn domain(&self) -> Domain {
        Integrand::domain(self)
    }

    fn dim(&self) -> usize {
        1
    }

    fn evaluate(&self, point: &Point) -> Result<Rational> {
        Integrand::evaluate(self, point)
    }

    fn integral(&self, m: &Measure) -> Result<Rational> {
        mi_integrate(self, m)?
            .value
            .ok_or_else(|| Error::UnsupportedIntegrand("integrand is not integrable".into()))
    }

    fn norm_integral(&self, m: &Measure, _kind: NormKind) -> Result<Rational> {
        self.abs().exact_integral(m)
    }

    fn as_simple(&self) -> Result<SimpleFunction<Rational>> {
        match self {
            Integrand::Simple(f) => Ok(f.clone()),
            Integrand::PiecewiseLinear(_) => Err(Error::NotElementary),
        }
    }
}

/// `‖f‖_{L¹} = ∫ ‖f‖ dm`.
pub fn l1_norm<V: Value>(f: &dyn Integrable<V>, m: &Measure, kind: NormKind) -> Result<Rational> {
    m.domain().check_same(&f.domain())?;
    f.norm_integral(m, kind)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure_space::MeasurableSet;
    use crate::mi_integrator::PiecewiseLinearFunction;
    use crate::rational::{int, rat};
    use crate::simple_function::{ScalarSimple, VectorValue};

    #[test]
    fn l1_norms() {
        let m = Measure::lebesgue();
        let f = ScalarSimple::indicator(MeasurableSet::interval(int(0), rat(1, 3)).unwrap(), int(-3));
        assert_eq!(l1_norm(&f, &m, NormKind::L1).unwrap(), int(1));
        assert_eq!(l1_norm(&f.scale(&int(2)), &m, NormKind::L1).unwrap(), int(2));
        let z = ScalarSimple::zero(Domain::UnitInterval, 1);
        assert_eq!(l1_norm(&z, &m, NormKind::L1).unwrap(), int(0));
        let centred: Integrand = PiecewiseLinearFunction::identity()
            .sub(&PiecewiseLinearFunction::constant(rat(1, 2)))
            .into();
        assert_eq!(l1_norm(&centred, &m, NormKind::L1).unwrap(), rat(1, 4));
        let v = SimpleFunction::indicator(
            MeasurableSet::interval(int(0), rat(1, 2)).unwrap(),
            VectorValue::new(vec![int(3), int(-4)]),
        );
        assert_eq!(l1_norm(&v, &m, NormKind::L1).unwrap(), rat(7, 2));
        assert_eq!(l1_norm(&v, &m, NormKind::LInf).unwrap(), int(2));
        assert!(l1_norm(&z, &Measure::discrete(vec![int(1)]).unwrap(), NormKind::L1).is_err());
    }

    #[test]
    fn piecewise_linear_is_not_elementary() {
        let f: Integrand = PiecewiseLinearFunction::identity().into();
        assert!(!Integrable::is_elementary(&f));
        assert_eq!(Integrable::integral(&f, &Measure::lebesgue()).unwrap(), rat(1, 2));
    }
}
