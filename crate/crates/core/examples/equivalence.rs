//! Turning a measure integral into a Bochner series and back.

use exact_integral::bochner::{mi_from_series, series_from_mi, theorem_check, BochnerRepresentation};
use exact_integral::measure_space::{Domain, MeasurableSet, Measure, Point};
use exact_integral::mi_integrator::{AffinePiece, Integrand, PiecewiseLinearFunction};
use exact_integral::rational::{int, inv_pow2, rat};
use exact_integral::simple_function::ScalarSimple;

fn main() -> exact_integral::Result<()> {
    let lebesgue = Measure::lebesgue();

    let step: Integrand = ScalarSimple::scalar(
        Domain::UnitInterval,
        vec![
            (int(1), MeasurableSet::interval(int(0), rat(1, 4))?),
            (int(-1), MeasurableSet::interval(rat(1, 4), int(1))?),
        ],
    )?
    .into();
    let (repr, trace) = series_from_mi(&step, &lebesgue, &int(0), 4)?;
    println!("step: {} terms, limit {}", repr.series.term_count().unwrap_or(0), mi_from_series(&repr)?);
    for r in trace.records() {
        println!("  n = {}: ∫h⁽¹⁾ = {}, ∫h⁽²⁾ = {}, Σ∫|h| = {}", r.level, r.plus_integral, r.minus_integral, r.running_abs_sum);
    }

    let x: Integrand = PiecewiseLinearFunction::identity().into();
    let (_, trace) = series_from_mi(&x, &lebesgue, &inv_pow2(10), 6)?;
    let at = Point::Real(rat(5, 7));
    println!("x: g_6(5/7) = {} = f_6(5/7) = {}", trace.partial_sum_at(6, &at)?, trace.level_difference_at(6, &at)?);

    let report = theorem_check(&x, &lebesgue, &inv_pow2(10), 20)?;
    println!(
        "x at depth 20: {}, Bochner {}, gap {} ≤ {} : {}",
        report.mi, report.bochner.value, report.gap, report.gap_bound, report.gap_within_bound
    );

    let tent: Integrand = PiecewiseLinearFunction::new(
        vec![int(0), rat(1, 2), int(1)],
        vec![AffinePiece::new(int(2), int(0)), AffinePiece::new(int(-2), int(2))],
    )?
    .into();
    let series = BochnerRepresentation::from_integrable_terms(vec![x, tent.scale(&rat(1, 4))], &lebesgue)?;
    println!("x + tent/4 as a two-term series: {}", mi_from_series(&series)?);
    Ok(())
}
