//! Reference computations that avoid the library's integration code paths.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use exact_integral::harness::{FunctionDecl, Generator, GeneratorConfig, Family, SpaceChoice};
use exact_integral::measure_space::{Domain, MeasurableSet, Measure, Point};
use exact_integral::mi_integrator::{Integrand, PiecewiseLinearFunction};
use exact_integral::rational::Rational;
use exact_integral::simple_function::{ScalarSimple, SimpleFunction, Value};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn z(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `2^n` as an integer rational, by repeated doubling.
pub fn two_pow(n: u32) -> Rational {
    (0..n).fold(Rational::one(), |acc, _| acc * z(2))
}

/// Breakpoints and densities of a measure on `[0, 1)`.
fn density_cells(m: &Measure) -> Vec<(Rational, Rational, Rational)> {
    let im = m.as_interval().expect("interval measure");
    im.breakpoints()
        .windows(2)
        .zip(im.densities())
        .map(|(w, d)| (w[0].clone(), w[1].clone(), d.clone()))
        .collect()
}

/// The value at `x` of the affine piece governing `[x, x + ε)`.
fn right_value(f: &PiecewiseLinearFunction, x: &Rational) -> Rational {
    let bp = f.breakpoints();
    let j = bp.iter().rposition(|b| b <= x).unwrap().min(f.pieces().len() - 1);
    let p = &f.pieces()[j];
    &p.slope * x + &p.intercept
}

/// The value at `x` of the piece governing `[x − ε, x)`.
fn left_value(f: &PiecewiseLinearFunction, x: &Rational) -> Rational {
    let bp = f.breakpoints();
    let j = bp.iter().position(|b| b >= x).unwrap().max(1) - 1;
    let p = &f.pieces()[j];
    &p.slope * x + &p.intercept
}

/// Cells on which both the function and the density are affine/constant.
fn common_cells(f: &PiecewiseLinearFunction, m: &Measure) -> Vec<(Rational, Rational, Rational)> {
    let mut cuts: BTreeSet<Rational> = f.breakpoints().iter().cloned().collect();
    let dens = density_cells(m);
    for (a, _, _) in &dens {
        cuts.insert(a.clone());
    }
    let cuts: Vec<_> = cuts.into_iter().collect();
    let mut out = Vec::new();
    for w in cuts.windows(2) {
        let d = dens.iter().find(|(a, b, _)| *a <= w[0] && w[1] <= *b).unwrap().2.clone();
        out.push((w[0].clone(), w[1].clone(), d));
    }
    out
}

/// `∫ f dm` by the trapezoid rule on cells where `f` is affine; exact there.
pub fn trapezoid_integral(f: &PiecewiseLinearFunction, m: &Measure) -> Rational {
    let mut total = Rational::zero();
    for (a, b, d) in common_cells(f, m) {
        total += d * (&b - &a) * (right_value(f, &a) + left_value(f, &b)) / z(2);
    }
    total
}

/// `min(⌊2ⁿu⌋/2ⁿ, n)` for `u ≥ 0`.
pub fn floor_level(u: &Rational, n: u32) -> Rational {
    let cap = z(n as i64);
    let s = two_pow(n);
    let k = (u * &s).floor() / s;
    if k > cap {
        cap
    } else {
        k
    }
}

/// `∫ f_n dm` for a non-negative piecewise-linear `f`, splitting every cell
/// where `f` crosses a level `k/2ⁿ` and evaluating at midpoints.
pub fn brute_dyadic_integral(f: &PiecewiseLinearFunction, n: u32, m: &Measure) -> Rational {
    let s = two_pow(n);
    let mut total = Rational::zero();
    for (a, b, d) in common_cells(f, m) {
        let (ua, ub) = (right_value(f, &a), left_value(f, &b));
        let mut cuts = vec![a.clone(), b.clone()];
        if ua != ub {
            let (lo, hi) = if ua < ub { (&ua, &ub) } else { (&ub, &ua) };
            let mut k = (lo * &s).floor() + Rational::one();
            while &k / &s < *hi && &k / &s <= z(n as i64) {
                // solve u(x) = k/s on [a, b)
                let t = (&k / &s - &ua) / (&ub - &ua);
                cuts.push(&a + t * (&b - &a));
                k += Rational::one();
            }
        }
        cuts.sort();
        cuts.dedup();
        for w in cuts.windows(2) {
            let mid = (&w[0] + &w[1]) / z(2);
            total += &d * (&w[1] - &w[0]) * floor_level(&right_value(f, &mid), n);
        }
    }
    total
}

/// `∫ f dm` of a simple function from its values at the atoms of the space:
/// points of a discrete space, or midpoints of the cells cut by all set
/// endpoints and density breakpoints.
pub fn brute_elementary<V: Value>(f: &SimpleFunction<V>, m: &Measure) -> V {
    let mut total = V::zero_of(f.dim());
    match m {
        Measure::Discrete(d) => {
            for (i, w) in d.weights().iter().enumerate() {
                total = total.plus(&f.evaluate(&Point::Index(i)).unwrap().scaled(w));
            }
        }
        Measure::Interval(_) => {
            let mut cuts: BTreeSet<Rational> = [z(0), z(1)].into_iter().collect();
            for t in f.terms() {
                if let MeasurableSet::Interval(s) = &t.set {
                    cuts.extend(s.endpoints());
                }
            }
            for (a, _, _) in density_cells(m) {
                cuts.insert(a);
            }
            let cuts: Vec<_> = cuts.into_iter().collect();
            let dens = density_cells(m);
            for w in cuts.windows(2) {
                let mid = (&w[0] + &w[1]) / z(2);
                let d = &dens.iter().find(|(a, b, _)| *a <= mid && mid < *b).unwrap().2;
                let v = f.evaluate(&Point::Real(mid.clone())).unwrap();
                total = total.plus(&v.scaled(&(d * (&w[1] - &w[0]))));
            }
        }
    }
    total
}

pub fn generator(family: Family, seed: u64, space: SpaceChoice, dyadic: bool, nonnegative: bool) -> Generator {
    let mut c = GeneratorConfig::new(family, seed);
    c.space = space;
    c.dyadic = dyadic;
    c.nonnegative = nonnegative;
    Generator::new(c).unwrap()
}

pub fn scalar_case(g: &mut Generator) -> (Measure, Integrand) {
    let case = g.next_case().unwrap();
    match case.function {
        FunctionDecl::Scalar(f) => (case.measure, f),
        other => panic!("expected a scalar case, got {}", other.kind()),
    }
}

pub fn simple_of(f: &Integrand) -> &ScalarSimple {
    match f {
        Integrand::Simple(s) => s,
        Integrand::PiecewiseLinear(_) => panic!("expected a simple function"),
    }
}

pub fn pl_of(f: &Integrand) -> &PiecewiseLinearFunction {
    match f {
        Integrand::PiecewiseLinear(p) => p,
        Integrand::Simple(_) => panic!("expected a piecewise-linear function"),
    }
}

/// The same function with every term's set split into random pieces,
/// including empty and zero-valued ones.
pub fn random_refinement<V: Value, R: Rng>(f: &SimpleFunction<V>, rng: &mut R) -> SimpleFunction<V> {
    let domain = f.domain();
    let mut terms = Vec::new();
    for t in f.terms() {
        match &t.set {
            MeasurableSet::Discrete(d) => {
                let size = d.size();
                let mut parts: Vec<Vec<usize>> = vec![Vec::new(); 3];
                for &i in d.indices() {
                    parts[rng.gen_range(0..3usize)].push(i);
                }
                for p in parts {
                    terms.push((t.value.clone(), MeasurableSet::indices(size, p).unwrap()));
                }
            }
            MeasurableSet::Interval(s) => {
                for iv in s.intervals() {
                    let cut = iv.start() + (iv.end() - iv.start()) * q(rng.gen_range(1..8), 8);
                    terms.push((t.value.clone(), MeasurableSet::interval(iv.start().clone(), cut.clone()).unwrap()));
                    terms.push((t.value.clone(), MeasurableSet::interval(cut, iv.end().clone()).unwrap()));
                }
            }
        }
    }
    let covered = MeasurableSet::union_all(domain, f.terms().iter().map(|t| &t.set)).unwrap();
    let rest = covered.complement();
    if !rest.is_empty() {
        terms.push((V::zero_of(f.dim()), rest));
    }
    terms.reverse();
    SimpleFunction::new(domain, f.dim(), terms).unwrap()
}

/// Rational sample points: a deterministic grid plus random ones.
pub fn sample_points<R: Rng>(domain: Domain, count: usize, rng: &mut R) -> Vec<Point> {
    match domain {
        Domain::Discrete { size } => (0..count).map(|i| Point::Index(i % size)).collect(),
        Domain::UnitInterval => (0..count)
            .map(|i| {
                if i % 2 == 0 {
                    Point::Real(q(i as i64, count as i64))
                } else {
                    let d: i64 = rng.gen_range(1..=1 << 20);
                    Point::Real(q(rng.gen_range(0..d), d))
                }
            })
            .collect(),
    }
}

pub fn abs(x: &Rational) -> Rational {
    x.abs()
}
