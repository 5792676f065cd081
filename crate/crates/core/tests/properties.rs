//! Property tests over randomly generated spaces, sets and functions.

mod common;

use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use exact_integral::bochner::{l1_norm, series_from_mi, Integrable, Series};
use exact_integral::harness::{Family, FunctionDecl, SpaceChoice, TaskSpec};
use exact_integral::measure_space::{Domain, IntervalSet, MeasurableSet, Measure, Point};
use exact_integral::mi_integrator::{mi_integrate, Integrand, IntegrabilityClass};
use exact_integral::rational::Rational;
use exact_integral::simple_function::{NormKind, SimpleFunction, Value};

fn dyadic_pairs() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((0i64..=64, 0i64..=64), 0..5)
}

fn interval_set(pairs: &[(i64, i64)]) -> IntervalSet {
    let pairs = pairs
        .iter()
        .filter(|(a, b)| a != b)
        .map(|&(a, b)| (q(a.min(b), 64), q(a.max(b), 64)))
        .collect::<Vec<_>>();
    IntervalSet::from_pairs(pairs).unwrap()
}

fn discrete_set(mask: u16, size: usize) -> MeasurableSet {
    MeasurableSet::indices(size, (0..size).filter(|i| mask >> i & 1 == 1).collect()).unwrap()
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 64, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn interval_set_algebra(a in dyadic_pairs(), b in dyadic_pairs(), seed in any::<u64>()) {
        let m = generator(Family::Simple, seed, SpaceChoice::Interval, false, false).interval_measure();
        let (a, b) = (interval_set(&a), interval_set(&b));
        let (sa, sb): (MeasurableSet, MeasurableSet) = (a.clone().into(), b.clone().into());
        let union = sa.union(&sb).unwrap();
        let inter = sa.intersection(&sb).unwrap();
        let mu = |s: &MeasurableSet| m.measure_of(s).unwrap();
        prop_assert_eq!(mu(&union) + mu(&inter), mu(&sa) + mu(&sb));
        prop_assert_eq!(union.complement(), sa.complement().intersection(&sb.complement()).unwrap());
        prop_assert_eq!(inter.complement(), sa.complement().union(&sb.complement()).unwrap());
        prop_assert!(inter.is_subset(&sa).unwrap() && sa.is_subset(&union).unwrap());
        prop_assert!(mu(&inter) <= mu(&sa) && mu(&sa) <= mu(&union));
        prop_assert_eq!(mu(&sa) + mu(&sa.complement()), m.total_mass());
        prop_assert_eq!(a.length() + a.complement().length(), z(1));
        prop_assert!(sa.difference(&sb).unwrap().is_disjoint(&sb).unwrap());
    }

    #[test]
    fn discrete_set_algebra(x in any::<u16>(), y in any::<u16>(), seed in any::<u64>()) {
        let m = generator(Family::Simple, seed, SpaceChoice::Discrete, false, false).discrete_measure();
        let Domain::Discrete { size } = m.domain() else { unreachable!() };
        let (a, b) = (discrete_set(x, size), discrete_set(y, size));
        let mu = |s: &MeasurableSet| m.measure_of(s).unwrap();
        let union = a.union(&b).unwrap();
        let inter = a.intersection(&b).unwrap();
        prop_assert_eq!(mu(&union) + mu(&inter), mu(&a) + mu(&b));
        prop_assert_eq!(union.complement(), a.complement().intersection(&b.complement()).unwrap());
        prop_assert!(mu(&inter) <= mu(&a) && mu(&a) <= mu(&union));
    }

    #[test]
    fn canonical_form_is_idempotent_and_representation_free(seed in any::<u64>()) {
        let mut g = generator(Family::Simple, seed, SpaceChoice::Any, false, false);
        let (m, f) = scalar_case(&mut g);
        let f = simple_of(&f);
        let c = f.canonicalize();
        prop_assert_eq!(c.canonicalize(), c.clone());
        let refined = random_refinement(f, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(refined.canonicalize(), c.clone());
        prop_assert_eq!(refined.integrate_elementary(&m).unwrap(), f.integrate_elementary(&m).unwrap());
        let values: Vec<_> = c.terms().iter().map(|t| &t.value).collect();
        let mut distinct = values.clone();
        distinct.sort();
        distinct.dedup();
        prop_assert_eq!(distinct.len(), values.len());
    }

    #[test]
    fn integral_is_linear(seed in any::<u64>(), a in -20i64..=20, b in -20i64..=20, family in 0usize..2) {
        let family = [Family::Simple, Family::PiecewiseLinear][family];
        let mut g = generator(family, seed, SpaceChoice::Any, false, false);
        let (m, f) = scalar_case(&mut g);
        let h: Integrand = match &f {
            Integrand::Simple(_) => g.simple_on(m.domain()).unwrap().into(),
            Integrand::PiecewiseLinear(_) => g.piecewise_linear().unwrap().into(),
        };
        let (a, b) = (q(a, 4), q(b, 3));
        let combo = f.scale(&a).add(&h.scale(&b)).unwrap();
        let int = |x: &Integrand| mi_integrate(x, &m).unwrap().value.unwrap();
        prop_assert_eq!(int(&combo), a * int(&f) + b * int(&h));
    }

    #[test]
    fn integral_is_monotone(seed in any::<u64>()) {
        let mut g = generator(Family::Simple, seed, SpaceChoice::Any, false, false);
        let (m, f) = scalar_case(&mut g);
        let f = simple_of(&f);
        let h = g.simple_on(m.domain()).unwrap();
        let lower = f.min(&h).unwrap();
        prop_assert!(lower.le(f).unwrap() && lower.le(&h).unwrap());
        let i = |x: &SimpleFunction<Rational>| x.integrate_elementary(&m).unwrap();
        prop_assert!(i(&lower) <= i(f) && i(&lower) <= i(&h));
        prop_assert!(i(&f.max(&h).unwrap()) >= i(f));
    }

    #[test]
    fn signed_parts_decompose(seed in any::<u64>(), family in 0usize..2) {
        let family = [Family::Simple, Family::PiecewiseLinear][family];
        let mut g = generator(family, seed, SpaceChoice::Any, false, false);
        let (m, f) = scalar_case(&mut g);
        let (pos, neg) = (f.positive_part(), f.negative_part());
        prop_assert!(pos.is_nonnegative() && neg.is_nonnegative());
        let int = |x: &Integrand| x.exact_integral(&m).unwrap();
        prop_assert_eq!(int(&f), int(&pos) - int(&neg));
        prop_assert_eq!(int(&f.abs()), int(&pos) + int(&neg));
        let mi = mi_integrate(&f, &m).unwrap();
        prop_assert_eq!(mi.class, IntegrabilityClass::Integrable);
        prop_assert_eq!(mi.positive, Some(int(&pos)));
        prop_assert_eq!(mi.negative, Some(int(&neg)));
        for p in sample_points(m.domain(), 8, g.rng()) {
            let (u, v) = (pos.evaluate(&p).unwrap(), neg.evaluate(&p).unwrap());
            prop_assert!(u.is_zero() || v.is_zero());
            prop_assert_eq!(u - v, f.evaluate(&p).unwrap());
        }
    }

    #[test]
    fn vector_integral_is_componentwise(seed in any::<u64>()) {
        let mut g = generator(Family::VectorSimple, seed, SpaceChoice::Any, false, false);
        let case = g.next_case().unwrap();
        let FunctionDecl::Vector(f) = case.function else { unreachable!() };
        let m = &case.measure;
        let total = f.integrate_elementary(m).unwrap();
        for i in 0..f.dim() {
            let component = f.component(i).unwrap().integrate_elementary(m).unwrap();
            prop_assert_eq!(&total.0[i], &component);
        }
        let series = Series::from_simple(m.clone(), f.dim(), NormKind::L1, vec![f.clone()]).unwrap();
        prop_assert_eq!(series.bochner_integrate(1).unwrap().value, total.clone());
        for kind in [NormKind::L1, NormKind::LInf] {
            prop_assert!(total.norm(kind) <= l1_norm(&f, m, kind).unwrap());
        }
    }

    #[test]
    fn dyadic_sequence_is_monotone(seed in any::<u64>(), family in 0usize..2) {
        let family = [Family::Simple, Family::PiecewiseLinear][family];
        let mut g = generator(family, seed, SpaceChoice::Any, false, true);
        let (m, f) = scalar_case(&mut g);
        let exact = f.exact_integral(&m).unwrap();
        let mut prev_integral = Rational::zero();
        for n in 0..=12u32 {
            let level = f.dyadic_integral(n, &m).unwrap();
            prop_assert!(prev_integral <= level && level <= exact);
            prev_integral = level;
        }
        for p in sample_points(m.domain(), 12, g.rng()) {
            let value = f.evaluate(&p).unwrap();
            let mut prev = Rational::zero();
            for n in 0..=12u32 {
                let v = f.dyadic_value(n, &p).unwrap();
                prop_assert!(prev <= v && v <= value);
                prev = v;
            }
        }
        for n in 0..=6u32 {
            let materialized = f.dyadic_approx(n).unwrap();
            prop_assert_eq!(materialized.integrate_elementary(&m).unwrap(), f.dyadic_integral(n, &m).unwrap());
            if let Integrand::PiecewiseLinear(pl) = &f {
                prop_assert_eq!(brute_dyadic_integral(pl, n, &m), f.dyadic_integral(n, &m).unwrap());
            }
        }
    }

    #[test]
    fn elementary_functions_agree(seed in any::<u64>()) {
        let mut g = generator(Family::Simple, seed, SpaceChoice::Any, false, false);
        let (m, f) = scalar_case(&mut g);
        let elementary = simple_of(&f).integrate_elementary(&m).unwrap();
        prop_assert_eq!(&elementary, &brute_elementary(simple_of(&f), &m));
        prop_assert_eq!(mi_integrate(&f, &m).unwrap().value, Some(elementary.clone()));
        prop_assert_eq!(Integrable::integral(&f, &m).unwrap(), elementary.clone());
        prop_assert!(f.is_nonnegative() == (f.inf() >= Rational::zero()));
    }

    #[test]
    fn increments_telescope(seed in any::<u64>(), family in 0usize..2) {
        let family = [Family::Simple, Family::PiecewiseLinear][family];
        let mut g = generator(family, seed, SpaceChoice::Any, false, false);
        let (m, f) = scalar_case(&mut g);
        let (repr, trace) = series_from_mi(&f, &m, &Rational::zero(), 10).unwrap();
        for p in sample_points(m.domain(), 6, g.rng()) {
            for k in [1u32, 3, 10] {
                let expected = trace.level_difference_at(k, &p).unwrap();
                prop_assert_eq!(trace.partial_sum_at(k, &p).unwrap(), expected.clone());
                prop_assert_eq!(repr.series.pointwise_partial_sum(&p, k as usize).unwrap(), expected);
            }
        }
        for r in trace.records() {
            let h = trace.increment(r.level).unwrap();
            prop_assert!(!r.plus_integral.is_negative() && !r.minus_integral.is_negative());
            prop_assert_eq!(h.integral(&m).unwrap(), r.integral.clone());
            prop_assert_eq!(h.norm_integral(&m, NormKind::L1).unwrap(), r.abs_integral.clone());
        }
        let last = trace.records().last().unwrap();
        let level = f.positive_part().dyadic_integral(10, &m).unwrap() - f.negative_part().dyadic_integral(10, &m).unwrap();
        prop_assert_eq!(&last.partial_integral, &level);
    }

    #[test]
    fn norm_axioms(seed in any::<u64>(), c in -12i64..=12) {
        let mut g = generator(Family::VectorSimple, seed, SpaceChoice::Any, false, false);
        let case = g.next_case().unwrap();
        let FunctionDecl::Vector(f) = case.function else { unreachable!() };
        let m = &case.measure;
        let h = g.vector_simple_on(m.domain(), f.dim()).unwrap();
        let c = q(c, 5);
        for kind in [NormKind::L1, NormKind::LInf] {
            let n = |x: &SimpleFunction<_>| l1_norm(x, m, kind).unwrap();
            prop_assert!(!n(&f).is_negative());
            prop_assert!(n(&f.add(&h).unwrap()) <= n(&f) + n(&h));
            prop_assert_eq!(n(&f.scale(&c)), c.abs() * n(&f));
            prop_assert!(n(&f.sub(&f).unwrap()).is_zero());
        }
    }

    #[test]
    fn task_files_round_trip(seed in any::<u64>(), family in 0usize..4) {
        let mut g = generator(Family::ALL[family], seed, SpaceChoice::Any, false, false);
        let spec = g.next_case().unwrap().default_spec();
        let json = spec.to_json();
        let parsed = TaskSpec::parse(&json.to_string()).unwrap();
        prop_assert_eq!(parsed.to_json(), json);
        prop_assert!(parsed.validate().is_ok());
    }
}

#[test]
fn points_outside_the_space_are_rejected() {
    let f: Integrand = exact_integral::mi_integrator::PiecewiseLinearFunction::identity().into();
    assert!(f.evaluate(&Point::Real(z(1))).is_err());
    assert!(f.evaluate(&Point::Index(0)).is_err());
    assert!(f.dyadic_value(2, &Point::Real(q(-1, 2))).is_err());
    let _ = Measure::lebesgue();
}
