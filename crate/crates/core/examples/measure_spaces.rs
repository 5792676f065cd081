//! Measure spaces and the algebra of their measurable sets.

use exact_integral::measure_space::{MeasurableSet, Measure};
use exact_integral::rational::{int, rat};

fn main() -> exact_integral::Result<()> {
    let a = MeasurableSet::interval(int(0), rat(1, 4))?;
    let b = MeasurableSet::interval(rat(1, 8), rat(1, 2))?;
    println!("A ∪ B = {}", a.union(&b)?);
    println!("A ∩ B = {}", a.intersection(&b)?);
    println!("Ω \\ A = {}", a.complement());

    let lebesgue = Measure::lebesgue();
    println!("λ([0, 1/2)) = {}", lebesgue.measure_of(&MeasurableSet::interval(int(0), rat(1, 2))?)?);

    // density 2 on [0, 1/2), 0 on [1/2, 1)
    let weighted = Measure::interval(vec![int(0), rat(1, 2), int(1)], vec![int(2), int(0)])?;
    let middle = MeasurableSet::interval(rat(1, 4), rat(3, 4))?;
    println!("m([1/4, 3/4)) = {}", weighted.measure_of(&middle)?);

    let counting = Measure::discrete(vec![rat(1, 4); 4])?;
    let evens = MeasurableSet::indices(4, vec![0, 2])?;
    println!("m({{0, 2}}) = {} of total {}", counting.measure_of(&evens)?, counting.total_mass());

    match a.union(&evens) {
        Err(e) => println!("mixing spaces: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
