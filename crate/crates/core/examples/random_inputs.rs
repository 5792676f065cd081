//! Seeded generation of random measures and functions.

use exact_integral::harness::{generate_specs, Family, FunctionDecl, Generator, GeneratorConfig};
use exact_integral::mi_integrator::mi_integrate;

fn main() -> exact_integral::Result<()> {
    let mut config = GeneratorConfig::new(Family::Simple, 42);
    config.dyadic = true;
    let mut g = Generator::new(config)?;
    for _ in 0..3 {
        let case = g.next_case()?;
        if let FunctionDecl::Scalar(f) = &case.function {
            println!("{f}\n  {}", mi_integrate(f, &case.measure)?);
        }
    }
    print!("{}", generate_specs(Family::PiecewiseLinear, 7, 1)?);
    Ok(())
}
