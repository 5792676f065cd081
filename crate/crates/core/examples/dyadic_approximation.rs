//! The monotone dyadic approximations f_n of f(x) = x and their integrals.

use exact_integral::harness::{approx_table, table_csv};
use exact_integral::measure_space::Measure;
use exact_integral::mi_integrator::{dyadic_approx, Integrand, MonotoneApproxSequence, PiecewiseLinearFunction};
use exact_integral::rational::Decimal;

fn main() -> exact_integral::Result<()> {
    let f: Integrand = PiecewiseLinearFunction::identity().into();
    let lebesgue = Measure::lebesgue();

    for n in 1..=3 {
        println!("f_{n} = {}", dyadic_approx(&f, n)?);
    }

    let seq = MonotoneApproxSequence::new(f.clone())?;
    for n in [1, 2, 5, 10, 20] {
        let v = seq.level_integral(n, &lebesgue)?;
        println!("∫ f_{n} dλ = {v} ≈ {}", Decimal(&v));
    }

    let rows = approx_table(&f, &lebesgue, 8)?;
    print!("{}", table_csv(&rows));
    Ok(())
}
