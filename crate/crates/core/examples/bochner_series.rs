//! Bochner integrals of elementary series, finite and rule-based.

use std::sync::Arc;

use exact_integral::bochner::{GeometricIndicatorRule, Series};
use exact_integral::measure_space::{Domain, MeasurableSet, Measure, Point};
use exact_integral::rational::{int, rat};
use exact_integral::simple_function::{NormKind, ScalarSimple, SimpleFunction, VectorValue};

fn main() -> exact_integral::Result<()> {
    let lebesgue = Measure::lebesgue();
    let half = MeasurableSet::interval(int(0), rat(1, 2))?;

    let terms = vec![ScalarSimple::constant(Domain::UnitInterval, int(1)), ScalarSimple::indicator(half.clone(), int(-1))];
    let finite = Series::from_simple(lebesgue.clone(), 1, NormKind::L1, terms)?;
    let cert = finite.absolute_sum_check(2)?;
    let b = finite.bochner_integrate(2)?;
    println!("finite: Σ∫|f_n| = {} (tail {}), integral {} ± {}", cert.partial, cert.tail_bound, b.value, b.error_bound);

    let rule = GeometricIndicatorRule::new(Domain::UnitInterval, rat(1, 2))?;
    let geometric = Series::rule(lebesgue.clone(), NormKind::L1, Arc::new(rule))?;
    for n in [1, 4, 16] {
        let b = geometric.bochner_integrate(n)?;
        let s = geometric.pointwise_partial_sum(&Point::Real(rat(1, 3)), n)?;
        println!("geometric, N = {n}: integral {} ± {}, partial sum at 1/3 = {s}", b.value, b.error_bound);
    }

    let v = SimpleFunction::indicator(half, VectorValue::new(vec![int(1), int(2)]));
    let vector = Series::from_simple(lebesgue, 2, NormKind::LInf, vec![v])?;
    println!("vector: {}", vector.bochner_integrate(1)?.value);
    for i in 0..2 {
        println!("  component {i}: {}", vector.component(i)?.bochner_integrate(1)?.value);
    }
    Ok(())
}
