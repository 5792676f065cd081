use crate::error::Result;
use crate::measure_space::Measure;
use crate::mi_integrator::{level_gap_bound, Integrand};
use crate::rational::{to_decimal_string, to_ratio_string, Rational};

use super::report::DECIMAL_DIGITS;

/// One level of the convergence table of `∫ f_n dm`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub level: u32,
    /// `∫ f_n dm`.
    pub integral: Rational,
    /// `∫ f dm − ∫ f_n dm`.
    pub gap: Rational,
    /// `2⁻ⁿ·m(Ω) + ∫ (f − n)⁺ dm`, equal to `2⁻ⁿ·m(Ω)` once `n ≥ sup f`.
    pub bound: Rational,
}

impl TableRow {
    pub fn within_bound(&self) -> bool {
        self.gap <= self.bound
    }
}

/// Rows `n = 1..=max_level` for a non-negative integrand.
pub fn approx_table(f: &Integrand, m: &Measure, max_level: u32) -> Result<Vec<TableRow>> {
    let exact = f.exact_integral(m)?;
    (1..=max_level)
        .map(|level| {
            let integral = f.dyadic_integral(level, m)?;
            Ok(TableRow {
                level,
                gap: &exact - &integral,
                bound: level_gap_bound(f, m, level)?,
                integral,
            })
        })
        .collect()
}

/// `∫ f_n dm` never decreases along the table.
pub fn is_nondecreasing(rows: &[TableRow]) -> bool {
    rows.windows(2).all(|w| w[0].integral <= w[1].integral)
}

pub fn table_csv(rows: &[TableRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["n", "integral", "integral_decimal", "gap", "gap_decimal", "bound", "bound_decimal"])
        .expect("in-memory write");
    for r in rows {
        let mut record = vec![r.level.to_string()];
        for x in [&r.integral, &r.gap, &r.bound] {
            record.push(to_ratio_string(x));
            record.push(to_decimal_string(x, DECIMAL_DIGITS));
        }
        w.write_record(&record).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ASCII output")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure_space::Domain;
    use crate::mi_integrator::PiecewiseLinearFunction;
    use crate::rational::{int, rat};
    use crate::simple_function::ScalarSimple;
    use num_traits::Zero;

    #[test]
    fn identity_rows() {
        let f: Integrand = PiecewiseLinearFunction::identity().into();
        let rows = approx_table(&f, &Measure::lebesgue(), 20).unwrap();
        assert_eq!((rows[1].integral.clone(), rows[1].gap.clone(), rows[1].bound.clone()), (rat(3, 8), rat(1, 8), rat(1, 4)));
        assert!(rows.iter().all(TableRow::within_bound));
        assert!(is_nondecreasing(&rows));
        let csv = table_csv(&rows[..2]);
        assert_eq!(csv.lines().nth(2).unwrap(), "2,3/8,0.375,1/8,0.125,1/4,0.25");
    }

    #[test]
    fn zero_and_indicator() {
        let zero = Integrand::Simple(ScalarSimple::zero(Domain::UnitInterval, 1));
        for r in approx_table(&zero, &Measure::lebesgue(), 5).unwrap() {
            assert_eq!((r.integral, r.gap), (int(0), int(0)));
        }
        let one = Integrand::Simple(ScalarSimple::constant(Domain::UnitInterval, int(1)));
        assert!(approx_table(&one, &Measure::lebesgue(), 5).unwrap().iter().all(|r| r.gap.is_zero()));
    }

    #[test]
    fn bound_holds_below_sup() {
        let f: Integrand = PiecewiseLinearFunction::identity().scale(&int(6)).into();
        let rows = approx_table(&f, &Measure::lebesgue(), 8).unwrap();
        assert!(rows.iter().all(TableRow::within_bound));
        assert!(rows[0].gap > rat(1, 2));
    }
}
