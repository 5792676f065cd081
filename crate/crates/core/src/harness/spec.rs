//! Task files: a single JSON document naming a measure space, a function,
//! a task and its parameters. Rationals are always strings.

use std::fmt;

use serde_json::{json, Map, Value};

use crate::measure_space::{Domain, IntervalSet, MeasurableSet, Measure};
use crate::mi_integrator::{AffinePiece, Integrand, PiecewiseLinearFunction, MAX_LEVEL};
use crate::rational::{parse_rational, to_ratio_string, Rational};
use crate::simple_function::{NormKind, ScalarSimple, SimpleFunction, VectorSimple, VectorValue};

/// A validation failure, located by the dotted path of the offending field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecError {
    pub path: String,
    pub message: String,
}

impl SpecError {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        SpecError { path: path.into(), message: message.into() }
    }
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

impl std::error::Error for SpecError {}

type Parse<T> = Result<T, SpecError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Task {
    IntegrateMi,
    IntegrateBochner,
    Compare,
    ApproxTable,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::IntegrateMi => "integrate_mi",
            Task::IntegrateBochner => "integrate_bochner",
            Task::Compare => "compare",
            Task::ApproxTable => "approx_table",
        }
    }

    fn parse(s: &str) -> Option<Task> {
        [Task::IntegrateMi, Task::IntegrateBochner, Task::Compare, Task::ApproxTable]
            .into_iter()
            .find(|t| t.name() == s)
    }
}

#[derive(Debug, Clone)]
pub enum SeriesDecl {
    /// Finite list of scalar terms, simple or piecewise-linear.
    Scalar(Vec<Integrand>),
    Vector(Vec<VectorSimple>),
    GeometricIndicator(Rational),
}

#[derive(Debug, Clone)]
pub enum FunctionDecl {
    Scalar(Integrand),
    Vector(VectorSimple),
    Series(SeriesDecl),
}

impl FunctionDecl {
    pub fn kind(&self) -> &'static str {
        match self {
            FunctionDecl::Scalar(Integrand::Simple(_)) => "simple",
            FunctionDecl::Scalar(Integrand::PiecewiseLinear(_)) => "piecewise_linear",
            FunctionDecl::Vector(_) => "vector_simple",
            FunctionDecl::Series(SeriesDecl::GeometricIndicator(_)) => "series_rule",
            FunctionDecl::Series(_) => "series",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Params {
    pub depth: Option<u32>,
    pub eta: Option<Rational>,
    pub truncation: Option<usize>,
    pub max_level: Option<u32>,
    pub seed: Option<u64>,
    pub norm: Option<NormKind>,
    pub out: Option<String>,
}

impl Params {
    pub const DEFAULT_DEPTH: u32 = 20;
    pub const DEFAULT_MAX_LEVEL: u32 = 20;
    pub const DEFAULT_RULE_TRUNCATION: usize = 20;

    pub fn depth(&self) -> u32 {
        self.depth.unwrap_or(Self::DEFAULT_DEPTH)
    }

    pub fn eta(&self) -> Rational {
        self.eta.clone().unwrap_or_default()
    }

    pub fn max_level(&self) -> u32 {
        self.max_level.unwrap_or(Self::DEFAULT_MAX_LEVEL)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }
}

#[derive(Debug, Clone)]
pub struct TaskSpec {
    pub measure: Measure,
    pub function: FunctionDecl,
    pub task: Task,
    pub params: Params,
}

impl TaskSpec {
    pub fn parse(text: &str) -> Parse<TaskSpec> {
        let root: Value = serde_json::from_str(text)
            .map_err(|e| SpecError::new("$", format!("malformed JSON at line {}, column {}: {e}", e.line(), e.column())))?;
        let root = Node::root(&root);
        root.only_keys(&["space", "function", "task", "params"])?;
        let measure = parse_space(&root.field("space")?)?;
        let function = parse_function(&root.field("function")?, measure.domain())?;
        let task_node = root.field("task")?;
        let task = Task::parse(task_node.str()?)
            .ok_or_else(|| task_node.error("expected one of integrate_mi, integrate_bochner, compare, approx_table"))?;
        let params = match root.opt_field("params") {
            Some(p) => parse_params(&p)?,
            None => Params::default(),
        };
        let spec = TaskSpec { measure, function, task, params };
        spec.validate()?;
        Ok(spec)
    }

    /// Checks that the declarations fit the task.
    pub fn validate(&self) -> Parse<()> {
        let p = &self.params;
        if let Some(d) = p.depth {
            if d > MAX_LEVEL {
                return Err(SpecError::new("params.depth", format!("must be at most {MAX_LEVEL}")));
            }
        }
        if let Some(n) = p.max_level {
            if n == 0 || n > MAX_LEVEL {
                return Err(SpecError::new("params.max_level", format!("must lie in 1..={MAX_LEVEL}")));
            }
        }
        if p.eta.as_ref().is_some_and(|e| *e < Rational::default()) {
            return Err(SpecError::new("params.eta", "must be non-negative"));
        }
        let scalar_only = |task: Task| -> Parse<&Integrand> {
            match &self.function {
                FunctionDecl::Scalar(f) => Ok(f),
                other => Err(SpecError::new(
                    "function.type",
                    format!("task {} requires a scalar function, found {}", task.name(), other.kind()),
                )),
            }
        };
        match self.task {
            Task::IntegrateMi | Task::Compare => {
                scalar_only(self.task)?;
            }
            Task::ApproxTable => {
                if !scalar_only(self.task)?.is_nonnegative() {
                    return Err(SpecError::new("function", "approx_table requires a non-negative function"));
                }
            }
            Task::IntegrateBochner => {
                let vector = matches!(
                    self.function,
                    FunctionDecl::Vector(_) | FunctionDecl::Series(SeriesDecl::Vector(_))
                );
                if vector && p.norm.is_none() {
                    return Err(SpecError::new("params.norm", "vector functions require a norm (l1 or linf)"));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let mut root = Map::new();
        root.insert("space".into(), measure_to_json(&self.measure));
        root.insert("function".into(), function_to_json(&self.function));
        root.insert("task".into(), json!(self.task.name()));
        let params = params_to_json(&self.params);
        if !params.is_empty() {
            root.insert("params".into(), Value::Object(params));
        }
        Value::Object(root)
    }
}

struct Node<'a> {
    value: &'a Value,
    path: String,
}

impl<'a> Node<'a> {
    fn root(value: &'a Value) -> Self {
        Node { value, path: String::new() }
    }

    fn error(&self, message: impl Into<String>) -> SpecError {
        let path = if self.path.is_empty() { "$" } else { &self.path };
        SpecError::new(path, message)
    }

    fn object(&self) -> Parse<&'a Map<String, Value>> {
        self.value.as_object().ok_or_else(|| self.error("expected an object"))
    }

    fn child(&self, key: &str, value: &'a Value) -> Node<'a> {
        let path = if self.path.is_empty() { key.to_string() } else { format!("{}.{key}", self.path) };
        Node { value, path }
    }

    fn opt_field(&self, key: &str) -> Option<Node<'a>> {
        self.value.get(key).map(|v| self.child(key, v))
    }

    fn field(&self, key: &str) -> Parse<Node<'a>> {
        self.object()?;
        self.opt_field(key).ok_or_else(|| self.error(format!("missing field \"{key}\"")))
    }

    fn only_keys(&self, allowed: &[&str]) -> Parse<()> {
        for key in self.object()?.keys() {
            if !allowed.contains(&key.as_str()) {
                return Err(self.child(key, &Value::Null).error("unknown field"));
            }
        }
        Ok(())
    }

    fn items(&self) -> Parse<Vec<Node<'a>>> {
        let items = self.value.as_array().ok_or_else(|| self.error("expected an array"))?;
        Ok(items
            .iter()
            .enumerate()
            .map(|(i, v)| Node { value: v, path: format!("{}[{i}]", self.path) })
            .collect())
    }

    fn str(&self) -> Parse<&'a str> {
        self.value.as_str().ok_or_else(|| self.error("expected a string"))
    }

    fn rational(&self) -> Parse<Rational> {
        let s = self.value.as_str().ok_or_else(|| self.error("expected a rational string \"p/q\""))?;
        parse_rational(s).map_err(|e| self.error(e.to_string()))
    }

    fn rationals(&self) -> Parse<Vec<Rational>> {
        self.items()?.iter().map(Node::rational).collect()
    }

    fn u64(&self) -> Parse<u64> {
        self.value.as_u64().ok_or_else(|| self.error("expected a non-negative integer"))
    }

    fn u32(&self) -> Parse<u32> {
        u32::try_from(self.u64()?).map_err(|_| self.error("integer out of range"))
    }
}

fn parse_space(node: &Node) -> Parse<Measure> {
    let kind = node.field("type")?;
    match kind.str()? {
        "discrete" => {
            node.only_keys(&["type", "weights"])?;
            let weights = node.field("weights")?;
            let values = weights.rationals()?;
            Measure::discrete(values).map_err(|e| weights.error(e.to_string()))
        }
        "interval" => {
            node.only_keys(&["type", "breakpoints", "densities"])?;
            let bp = node.field("breakpoints")?;
            let dens = node.field("densities")?;
            Measure::interval(bp.rationals()?, dens.rationals()?).map_err(|e| node.error(e.to_string()))
        }
        _ => Err(kind.error("expected \"discrete\" or \"interval\"")),
    }
}

fn parse_set(node: &Node, domain: Domain) -> Parse<MeasurableSet> {
    node.only_keys(&["intervals", "indices"])?;
    match (node.opt_field("intervals"), node.opt_field("indices"), domain) {
        (Some(iv), None, Domain::UnitInterval) => {
            let mut pairs = Vec::new();
            for item in iv.items()? {
                let ends = item.items()?;
                if ends.len() != 2 {
                    return Err(item.error("expected [start, end]"));
                }
                let (a, b) = (ends[0].rational()?, ends[1].rational()?);
                if !(Rational::default() <= a && a < b && b <= Rational::from_integer(1.into())) {
                    return Err(item.error(format!("interval [{a}, {b}) must satisfy 0 ≤ start < end ≤ 1")));
                }
                pairs.push((a, b));
            }
            IntervalSet::from_pairs(pairs).map(MeasurableSet::from).map_err(|e| iv.error(e.to_string()))
        }
        (None, Some(ix), Domain::Discrete { size }) => {
            let mut indices = Vec::new();
            for item in ix.items()? {
                let i = item.u64()? as usize;
                if i >= size {
                    return Err(item.error(format!("index {i} outside a space of size {size}")));
                }
                indices.push(i);
            }
            indices.sort_unstable();
            indices.dedup();
            MeasurableSet::indices(size, indices).map_err(|e| ix.error(e.to_string()))
        }
        (Some(_), None, Domain::Discrete { .. }) => {
            Err(node.error("interval set given on a discrete space; use \"indices\""))
        }
        (None, Some(_), Domain::UnitInterval) => {
            Err(node.error("index set given on an interval space; use \"intervals\""))
        }
        _ => Err(node.error("expected exactly one of \"intervals\" or \"indices\"")),
    }
}

enum RawValue {
    Scalar(Rational),
    Vector(VectorValue),
}

fn parse_value(node: &Node) -> Parse<RawValue> {
    if node.value.is_array() {
        let components = node.rationals()?;
        if components.is_empty() {
            return Err(node.error("vector values need at least one component"));
        }
        Ok(RawValue::Vector(VectorValue::new(components)))
    } else {
        node.rational().map(RawValue::Scalar)
    }
}

enum Simple {
    Scalar(ScalarSimple),
    Vector(VectorSimple),
}

fn parse_simple(node: &Node, domain: Domain) -> Parse<Simple> {
    node.only_keys(&["type", "terms"])?;
    let terms_node = node.field("terms")?;
    let mut scalars = Vec::new();
    let mut vectors = Vec::new();
    for item in terms_node.items()? {
        item.only_keys(&["value", "set"])?;
        let set = parse_set(&item.field("set")?, domain)?;
        let value_node = item.field("value")?;
        match parse_value(&value_node)? {
            RawValue::Scalar(v) if vectors.is_empty() => scalars.push((v, set)),
            RawValue::Vector(v) if scalars.is_empty() => {
                if let Some((first, _)) = vectors.first() {
                    let first: &VectorValue = first;
                    if first.0.len() != v.0.len() {
                        return Err(value_node.error(format!(
                            "dimension {} differs from the first term's {}",
                            v.0.len(),
                            first.0.len()
                        )));
                    }
                }
                vectors.push((v, set));
            }
            _ => return Err(value_node.error("scalar and vector values cannot be mixed")),
        }
    }
    if !vectors.is_empty() {
        let dim = vectors[0].0 .0.len();
        SimpleFunction::new(domain, dim, vectors)
            .map(Simple::Vector)
            .map_err(|e| terms_node.error(e.to_string()))
    } else {
        ScalarSimple::scalar(domain, scalars)
            .map(Simple::Scalar)
            .map_err(|e| terms_node.error(e.to_string()))
    }
}

fn parse_piecewise_linear(node: &Node, domain: Domain) -> Parse<PiecewiseLinearFunction> {
    node.only_keys(&["type", "breakpoints", "pieces"])?;
    if domain != Domain::UnitInterval {
        return Err(node.field("type")?.error("piecewise_linear functions need an interval space"));
    }
    let bp = node.field("breakpoints")?;
    let pieces_node = node.field("pieces")?;
    let mut pieces = Vec::new();
    for item in pieces_node.items()? {
        item.only_keys(&["a", "b"])?;
        pieces.push(AffinePiece::new(item.field("a")?.rational()?, item.field("b")?.rational()?));
    }
    PiecewiseLinearFunction::new(bp.rationals()?, pieces).map_err(|e| node.error(e.to_string()))
}

fn parse_function(node: &Node, domain: Domain) -> Parse<FunctionDecl> {
    let kind = node.field("type")?;
    match kind.str()? {
        "simple" => Ok(match parse_simple(node, domain)? {
            Simple::Scalar(f) => FunctionDecl::Scalar(f.into()),
            Simple::Vector(f) => FunctionDecl::Vector(f),
        }),
        "piecewise_linear" => Ok(FunctionDecl::Scalar(parse_piecewise_linear(node, domain)?.into())),
        "series" => {
            node.only_keys(&["type", "terms"])?;
            let mut scalars = Vec::new();
            let mut vectors: Vec<VectorSimple> = Vec::new();
            for item in node.field("terms")?.items()? {
                let term_kind = item.field("type")?;
                match term_kind.str()? {
                    "simple" => match parse_simple(&item, domain)? {
                        Simple::Scalar(f) if vectors.is_empty() => scalars.push(f.into()),
                        Simple::Vector(f) if scalars.is_empty() => {
                            if vectors.first().is_some_and(|g| g.dim() != f.dim()) {
                                return Err(item.error("term dimensions differ"));
                            }
                            vectors.push(f)
                        }
                        _ => return Err(item.error("scalar and vector terms cannot be mixed")),
                    },
                    "piecewise_linear" if vectors.is_empty() => {
                        scalars.push(parse_piecewise_linear(&item, domain)?.into())
                    }
                    "piecewise_linear" => return Err(item.error("scalar and vector terms cannot be mixed")),
                    _ => return Err(term_kind.error("series terms must be simple or piecewise_linear")),
                }
            }
            Ok(FunctionDecl::Series(if vectors.is_empty() {
                SeriesDecl::Scalar(scalars)
            } else {
                SeriesDecl::Vector(vectors)
            }))
        }
        "series_rule" => {
            node.only_keys(&["type", "rule", "ratio"])?;
            let rule = node.field("rule")?;
            if rule.str()? != "geometric_indicator" {
                return Err(rule.error("expected \"geometric_indicator\""));
            }
            let ratio_node = node.field("ratio")?;
            let ratio = ratio_node.rational()?;
            if ratio.numer().magnitude() >= ratio.denom().magnitude() {
                return Err(ratio_node.error("ratio must satisfy |r| < 1"));
            }
            Ok(FunctionDecl::Series(SeriesDecl::GeometricIndicator(ratio)))
        }
        _ => Err(kind.error("expected simple, piecewise_linear, series or series_rule")),
    }
}

fn parse_params(node: &Node) -> Parse<Params> {
    node.only_keys(&["depth", "eta", "truncation", "max_level", "seed", "norm", "out"])?;
    let mut p = Params::default();
    if let Some(n) = node.opt_field("depth") {
        p.depth = Some(n.u32()?);
    }
    if let Some(n) = node.opt_field("eta") {
        p.eta = Some(n.rational()?);
    }
    if let Some(n) = node.opt_field("truncation") {
        p.truncation = Some(n.u64()? as usize);
    }
    if let Some(n) = node.opt_field("max_level") {
        p.max_level = Some(n.u32()?);
    }
    if let Some(n) = node.opt_field("seed") {
        p.seed = Some(n.u64()?);
    }
    if let Some(n) = node.opt_field("norm") {
        p.norm = Some(match n.str()? {
            "l1" => NormKind::L1,
            "linf" => NormKind::LInf,
            _ => return Err(n.error("expected \"l1\" or \"linf\"")),
        });
    }
    if let Some(n) = node.opt_field("out") {
        p.out = Some(n.str()?.to_string());
    }
    Ok(p)
}

fn ratio(x: &Rational) -> Value {
    Value::String(to_ratio_string(x))
}

fn ratios(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(ratio).collect())
}

pub fn measure_to_json(m: &Measure) -> Value {
    match m {
        Measure::Discrete(d) => json!({"type": "discrete", "weights": ratios(d.weights())}),
        Measure::Interval(im) => json!({
            "type": "interval",
            "breakpoints": ratios(im.breakpoints()),
            "densities": ratios(im.densities()),
        }),
    }
}

fn set_to_json(set: &MeasurableSet) -> Value {
    match set {
        MeasurableSet::Discrete(d) => json!({"indices": d.indices()}),
        MeasurableSet::Interval(s) => json!({
            "intervals": s.intervals().iter().map(|iv| json!([ratio(iv.start()), ratio(iv.end())])).collect::<Vec<_>>()
        }),
    }
}

pub fn simple_to_json(f: &ScalarSimple) -> Value {
    let terms: Vec<Value> = f
        .terms()
        .iter()
        .map(|t| json!({"value": ratio(&t.value), "set": set_to_json(&t.set)}))
        .collect();
    json!({"type": "simple", "terms": terms})
}

pub fn vector_simple_to_json(f: &VectorSimple) -> Value {
    let terms: Vec<Value> = f
        .terms()
        .iter()
        .map(|t| json!({"value": ratios(&t.value.0), "set": set_to_json(&t.set)}))
        .collect();
    json!({"type": "simple", "terms": terms})
}

pub fn piecewise_linear_to_json(f: &PiecewiseLinearFunction) -> Value {
    let pieces: Vec<Value> = f
        .pieces()
        .iter()
        .map(|p| json!({"a": ratio(&p.slope), "b": ratio(&p.intercept)}))
        .collect();
    json!({"type": "piecewise_linear", "breakpoints": ratios(f.breakpoints()), "pieces": pieces})
}

pub fn integrand_to_json(f: &Integrand) -> Value {
    match f {
        Integrand::Simple(s) => simple_to_json(s),
        Integrand::PiecewiseLinear(p) => piecewise_linear_to_json(p),
    }
}

pub fn function_to_json(f: &FunctionDecl) -> Value {
    match f {
        FunctionDecl::Scalar(g) => integrand_to_json(g),
        FunctionDecl::Vector(g) => vector_simple_to_json(g),
        FunctionDecl::Series(SeriesDecl::Scalar(terms)) => {
            json!({"type": "series", "terms": terms.iter().map(integrand_to_json).collect::<Vec<_>>()})
        }
        FunctionDecl::Series(SeriesDecl::Vector(terms)) => {
            json!({"type": "series", "terms": terms.iter().map(vector_simple_to_json).collect::<Vec<_>>()})
        }
        FunctionDecl::Series(SeriesDecl::GeometricIndicator(r)) => {
            json!({"type": "series_rule", "rule": "geometric_indicator", "ratio": ratio(r)})
        }
    }
}

fn params_to_json(p: &Params) -> Map<String, Value> {
    let mut m = Map::new();
    if let Some(d) = p.depth {
        m.insert("depth".into(), json!(d));
    }
    if let Some(e) = &p.eta {
        m.insert("eta".into(), ratio(e));
    }
    if let Some(t) = p.truncation {
        m.insert("truncation".into(), json!(t));
    }
    if let Some(n) = p.max_level {
        m.insert("max_level".into(), json!(n));
    }
    if let Some(s) = p.seed {
        m.insert("seed".into(), json!(s));
    }
    if let Some(k) = p.norm {
        m.insert("norm".into(), json!(if k == NormKind::L1 { "l1" } else { "linf" }));
    }
    if let Some(o) = &p.out {
        m.insert("out".into(), json!(o));
    }
    m
}
