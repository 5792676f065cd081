//! The measure integral of signed integrands, over Ω and over subsets.

use exact_integral::measure_space::{Domain, MeasurableSet, Measure};
use exact_integral::mi_integrator::{
    integrate_nonneg, mi_integrate, mi_integrate_over_set, AffinePiece, Integrand, IntegrationMode,
    PiecewiseLinearFunction,
};
use exact_integral::rational::{int, rat};
use exact_integral::simple_function::ScalarSimple;

fn main() -> exact_integral::Result<()> {
    let lebesgue = Measure::lebesgue();

    let tent: Integrand = PiecewiseLinearFunction::new(
        vec![int(0), rat(1, 2), int(1)],
        vec![AffinePiece::new(int(2), int(0)), AffinePiece::new(int(-2), int(2))],
    )?
    .into();
    println!("∫ tent dλ = {}", integrate_nonneg(&tent, &lebesgue, IntegrationMode::Exact)?.value);
    let level = integrate_nonneg(&tent, &lebesgue, IntegrationMode::AtLevel(6))?;
    if let Some(bound) = level.error_bound {
        println!("∫ tent_6 dλ = {} within {bound} of the limit", level.value);
    }

    let centred: Integrand = PiecewiseLinearFunction::identity()
        .sub(&PiecewiseLinearFunction::constant(rat(1, 2)))
        .into();
    println!("x − 1/2 is {}", mi_integrate(&centred, &lebesgue)?);

    let half = MeasurableSet::interval(int(0), rat(1, 2))?;
    let x: Integrand = PiecewiseLinearFunction::identity().into();
    println!("∫_[0,1/2) x dλ = {}", mi_integrate_over_set(&half, &x, &lebesgue)?);

    let weights = Measure::discrete(vec![rat(1, 2), int(1), rat(1, 4)])?;
    let f = ScalarSimple::scalar(
        Domain::Discrete { size: 3 },
        vec![(int(4), MeasurableSet::indices(3, vec![0, 2])?), (int(-1), MeasurableSet::indices(3, vec![1])?)],
    )?;
    println!("discrete: {}", mi_integrate(&f.into(), &weights)?);
    Ok(())
}
