//! Task files in, reports out.
//!
//! Exit codes: 0 on success, 1 when the task file fails validation (nothing
//! is computed), 2 when a computation fails.

mod generate;
mod report;
mod spec;
mod table;

use std::fs;
use std::path::Path;
use std::sync::Arc;

pub use generate::{
    generate_specs, Case, Family, Generator, GeneratorConfig, SpaceChoice, MAX_DENOMINATOR_EXP, MAX_DIM,
    MAX_DISCRETE_SIZE, MAX_TERMS,
};
pub use report::{Report, DECIMAL_DIGITS};
pub use spec::{
    function_to_json, integrand_to_json, measure_to_json, piecewise_linear_to_json, simple_to_json,
    vector_simple_to_json, FunctionDecl, Params, SeriesDecl, SpecError, Task, TaskSpec,
};
pub use table::{approx_table, is_nondecreasing, table_csv, TableRow};

use crate::bochner::{
    mi_from_series, series_from_mi, theorem_check, BochnerIntegral, BochnerRepresentation,
    GeometricIndicatorRule, Series, SummabilityCertificate,
};
use crate::error::Error;
use crate::measure_space::{Domain, Measure, Point};
use crate::mi_integrator::{mi_integrate, Integrand};
use crate::rational::Rational;
use crate::simple_function::{NormKind, SimpleFunction, VectorValue};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_COMPUTATION: i32 = 2;

/// Number of seeded sample points of the pointwise checks in `compare`.
pub const POINTWISE_SAMPLES: u32 = 16;

/// Command-line values that replace the task file's own.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub task: Option<Task>,
    pub depth: Option<u32>,
    pub eta: Option<Rational>,
    pub max_level: Option<u32>,
    pub out: Option<String>,
}

impl Overrides {
    fn apply(&self, spec: &mut TaskSpec) {
        if let Some(t) = self.task {
            spec.task = t;
        }
        let p = &mut spec.params;
        p.depth = self.depth.or(p.depth);
        p.eta = self.eta.clone().or(p.eta.take());
        p.max_level = self.max_level.or(p.max_level);
        p.out = self.out.clone().or(p.out.take());
    }
}

/// Exit code and the two output streams of one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn success(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn failure(code: i32, message: String) -> Self {
        let kind = if code == EXIT_VALIDATION { "validation error" } else { "computation error" };
        Outcome { code, stdout: String::new(), stderr: format!("{kind}: {message}\n") }
    }
}

pub fn run_spec(path: &Path, overrides: &Overrides) -> Outcome {
    match fs::read_to_string(path) {
        Ok(text) => run_spec_text(&text, overrides),
        Err(e) => Outcome::failure(EXIT_VALIDATION, format!("{}: {e}", path.display())),
    }
}

pub fn run_spec_text(text: &str, overrides: &Overrides) -> Outcome {
    let spec = match TaskSpec::parse(text).and_then(|mut s| {
        overrides.apply(&mut s);
        s.validate().map(|()| s)
    }) {
        Ok(s) => s,
        Err(e) => return Outcome::failure(EXIT_VALIDATION, e.to_string()),
    };
    let output = match execute(&spec) {
        Ok(o) => o,
        Err(e) => return Outcome::failure(EXIT_COMPUTATION, e.to_string()),
    };
    match (output.table, spec.params.out.as_deref()) {
        (Some(csv), Some(out)) => match fs::write(out, csv) {
            Ok(()) => Outcome::success(output.report.render()),
            Err(e) => Outcome::failure(EXIT_COMPUTATION, format!("{out}: {e}")),
        },
        (Some(csv), None) => Outcome::success(csv),
        (None, _) => Outcome::success(output.report.render()),
    }
}

/// The report of a task, plus the CSV table of `approx_table`.
#[derive(Debug, Clone)]
pub struct Output {
    pub report: Report,
    pub table: Option<String>,
}

/// Runs a validated task.
pub fn execute(spec: &TaskSpec) -> Result<Output, Error> {
    let mut report = Report::new(spec.task.name());
    report.text("function", spec.function.kind());
    report.rational("mass", &spec.measure.total_mass());
    let m = &spec.measure;
    let p = &spec.params;
    let mut table = None;
    match (spec.task, &spec.function) {
        (Task::IntegrateMi, FunctionDecl::Scalar(f)) => integrate_mi(&mut report, f, m)?,
        (Task::Compare, FunctionDecl::Scalar(f)) => compare(&mut report, f, m, p)?,
        (Task::ApproxTable, FunctionDecl::Scalar(f)) => {
            let rows = approx_table(f, m, p.max_level())?;
            let last = rows.last().expect("max_level ≥ 1");
            report.integer("max_level", p.max_level() as u64);
            report.rational("exact", &f.exact_integral(m)?);
            report.rational("final_integral", &last.integral);
            report.rational("final_gap", &last.gap);
            report.rational("final_bound", &last.bound);
            report.flag("all_within_bound", rows.iter().all(TableRow::within_bound));
            report.flag("nondecreasing", is_nondecreasing(&rows));
            table = Some(table_csv(&rows));
        }
        (Task::IntegrateBochner, f) => integrate_bochner(&mut report, f, m, p)?,
        (task, f) => {
            return Err(Error::UnsupportedIntegrand(format!("task {} on {}", task.name(), f.kind())));
        }
    }
    Ok(Output { report, table })
}

fn integrate_mi(report: &mut Report, f: &Integrand, m: &Measure) -> Result<(), Error> {
    let r = mi_integrate(f, m)?;
    report.text("class", r.class.to_string());
    let zero = Rational::default();
    report.rational("positive", r.positive.as_ref().unwrap_or(&zero));
    report.rational("negative", r.negative.as_ref().unwrap_or(&zero));
    if let Some(v) = &r.value {
        report.rational("value", v);
    }
    Ok(())
}

fn sample_points(domain: Domain, seed: u64) -> Vec<Point> {
    let mut config = GeneratorConfig::new(Family::Simple, seed);
    config.space = match domain {
        Domain::Discrete { .. } => SpaceChoice::Discrete,
        Domain::UnitInterval => SpaceChoice::Interval,
    };
    let mut g = Generator::new(config).expect("default configuration is valid");
    let mut points: Vec<Point> = match domain {
        Domain::Discrete { size } => (0..size).map(Point::Index).collect(),
        Domain::UnitInterval => Vec::new(),
    };
    while points.len() < POINTWISE_SAMPLES as usize {
        points.push(g.point(domain));
    }
    points
}

fn compare(report: &mut Report, f: &Integrand, m: &Measure, p: &Params) -> Result<(), Error> {
    let depth = p.depth();
    let eta = p.eta();
    let r = theorem_check(f, m, &eta, depth)?;
    let (repr, trace) = series_from_mi(f, m, &eta, depth)?;
    let mut pointwise_ok = true;
    let points = sample_points(m.domain(), p.seed());
    for point in &points {
        let partial = repr.series.pointwise_partial_sum(point, depth as usize)?;
        pointwise_ok &= partial == trace.level_difference_at(depth, point)?;
        if r.terminating {
            pointwise_ok &= partial == f.evaluate(point)?;
        }
    }
    report.integer("depth", depth as u64);
    report.rational("eta", &eta);
    report.rational("mi", r.mi.value.as_ref().expect("checked integrable"));
    report.rational("bochner", &r.bochner.value);
    report.rational("gap", &r.gap);
    report.rational("gap_bound", &r.gap_bound);
    report.flag("gap_within_bound", r.gap_within_bound);
    report.flag("exact_equal", r.exact_equal);
    report.flag("terminating", r.terminating);
    report.rational("abs_integral", &r.abs_integral);
    report.rational("certificate_partial", &r.certificate.partial);
    report.rational("certificate_tail", &r.certificate.tail_bound);
    report.flag("certificate_holds", r.certificate_holds);
    report.rational("round_trip", &r.round_trip.value);
    report.rational("round_trip_error_bound", &r.round_trip.error_bound);
    report.flag("round_trip_consistent", r.round_trip.consistent);
    report.integer("seed", p.seed());
    report.integer("pointwise_samples", points.len() as u64);
    report.flag("pointwise_ok", pointwise_ok);
    Ok(())
}

fn write_series<V>(
    report: &mut Report,
    series_kind: &str,
    length: Option<usize>,
    truncation: usize,
    integral: &BochnerIntegral<V>,
    certificate: &SummabilityCertificate,
    write_value: impl FnOnce(&mut Report, &V),
) {
    report.text("series", series_kind);
    if let Some(n) = length {
        report.integer("length", n as u64);
    }
    report.integer("truncation", truncation as u64);
    write_value(report, &integral.value);
    report.rational("error_bound", &integral.error_bound);
    report.rational("certificate_partial", &certificate.partial);
    report.rational("certificate_tail", &certificate.tail_bound);
    report.rational("certificate_total", &certificate.total());
}

fn scalar_value(report: &mut Report, v: &Rational) {
    report.rational("value", v);
}

fn vector_value(report: &mut Report, v: &VectorValue) {
    report.vector("value", v);
}

fn write_limit(report: &mut Report, repr: &BochnerRepresentation<Rational>) -> Result<(), Error> {
    let limit = mi_from_series(repr)?;
    if let Some(t) = &limit.target_integral {
        report.rational("target_integral", t);
    }
    report.flag("exact", limit.exact);
    report.flag("consistent", limit.consistent);
    Ok(())
}

fn integrate_bochner(report: &mut Report, f: &FunctionDecl, m: &Measure, p: &Params) -> Result<(), Error> {
    let norm = p.norm.unwrap_or_default();
    match f {
        FunctionDecl::Scalar(g) => {
            let depth = p.depth();
            let (repr, _) = series_from_mi(g, m, &p.eta(), depth)?;
            let n = p.truncation.unwrap_or(depth as usize);
            let integral = repr.series.bochner_integrate(n)?;
            let cert = repr.series.absolute_sum_check(n)?;
            let kind = if repr.series.is_finite() { "dyadic_telescope_finite" } else { "dyadic_telescope" };
            write_series(report, kind, repr.series.term_count(), n, &integral, &cert, scalar_value);
            report.rational("eta", &p.eta());
            write_limit(report, &repr)?;
        }
        FunctionDecl::Vector(g) => {
            let series = Series::from_simple(m.clone(), g.dim(), norm, vec![g.clone()])?;
            let n = p.truncation.unwrap_or(1);
            let cert = series.absolute_sum_check(n)?;
            write_series(report, "finite", Some(1), n, &series.bochner_integrate(n)?, &cert, vector_value);
            report.text("norm", norm_name(norm));
        }
        FunctionDecl::Series(SeriesDecl::Scalar(terms)) => {
            let repr = BochnerRepresentation::from_integrable_terms(terms.clone(), m)?;
            let n = p.truncation.unwrap_or(terms.len());
            let cert = repr.series.absolute_sum_check(n)?;
            let integral = repr.series.bochner_integrate(n)?;
            write_series(report, "finite", Some(terms.len()), n, &integral, &cert, scalar_value);
            write_limit(report, &repr)?;
        }
        FunctionDecl::Series(SeriesDecl::Vector(terms)) => {
            let dim = terms.first().map_or(1, SimpleFunction::dim);
            let series = Series::from_simple(m.clone(), dim, norm, terms.clone())?;
            let n = p.truncation.unwrap_or(terms.len());
            let cert = series.absolute_sum_check(n)?;
            write_series(report, "finite", Some(terms.len()), n, &series.bochner_integrate(n)?, &cert, vector_value);
            report.text("norm", norm_name(norm));
        }
        FunctionDecl::Series(SeriesDecl::GeometricIndicator(r)) => {
            let rule = GeometricIndicatorRule::new(m.domain(), r.clone())?;
            let series = Series::rule(m.clone(), NormKind::L1, Arc::new(rule))?;
            let n = p.truncation.unwrap_or(Params::DEFAULT_RULE_TRUNCATION);
            let cert = series.absolute_sum_check(n)?;
            write_series(report, "geometric_indicator", None, n, &series.bochner_integrate(n)?, &cert, scalar_value);
            report.rational("ratio", r);
        }
    }
    Ok(())
}

fn norm_name(k: NormKind) -> &'static str {
    match k {
        NormKind::L1 => "l1",
        NormKind::LInf => "linf",
    }
}
