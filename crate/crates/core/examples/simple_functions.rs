//! Simple functions: canonical form, pointwise algebra and elementary integrals.

use exact_integral::measure_space::{Domain, MeasurableSet, Measure, Point};
use exact_integral::rational::{int, rat};
use exact_integral::simple_function::{NormKind, ScalarSimple, SimpleFunction, VectorValue};

fn main() -> exact_integral::Result<()> {
    let lebesgue = Measure::lebesgue();
    let left = MeasurableSet::interval(int(0), rat(1, 2))?;
    let right = MeasurableSet::interval(rat(1, 2), int(1))?;

    let f = ScalarSimple::scalar(Domain::UnitInterval, vec![(int(2), left.clone()), (int(3), right.clone())])?;
    println!("f = {f}");
    println!("∫ f dλ = {}", f.integrate_elementary(&lebesgue)?);

    let split = ScalarSimple::scalar(Domain::UnitInterval, vec![(int(1), left.clone()), (int(1), right)])?;
    println!("canonical form of {split}: {}", split.canonicalize());

    let g = ScalarSimple::indicator(left.clone(), int(1));
    let h = ScalarSimple::indicator(MeasurableSet::interval(rat(1, 4), int(1))?, int(1));
    println!("1_[0,1/2) + 1_[1/4,1) = {}", g.add(&h)?);

    let signed = g.sub(&h)?;
    println!("f⁺ = {}, f⁻ = {}", signed.pos_part(), signed.neg_part());
    println!("f(3/8) = {}", signed.evaluate(&Point::Real(rat(3, 8)))?);

    let v = SimpleFunction::indicator(left, VectorValue::new(vec![int(1), int(2)]));
    println!("∫ (1, 2)·1_[0,1/2) dλ = {}", v.integrate_elementary(&lebesgue)?);
    for kind in [NormKind::L1, NormKind::LInf] {
        println!("∫ ‖v‖ dλ under {kind:?} = {}", v.l1_norm(&lebesgue, kind)?);
    }
    Ok(())
}
