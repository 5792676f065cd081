//! Elementary (simple) functions `Σ v_i · 1_{A_i}` with pairwise-disjoint
//! sets, over scalar or vector values.
//!
//! Every representation with pairwise-disjoint sets is a valid value of
//! [`SimpleFunction`]; [`SimpleFunction::canonicalize`] picks the unique one
//! with distinct values, non-empty sets covering Ω, and terms ordered by the
//! smallest point of their set. Outside the listed sets a function is zero.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::measure_space::{Domain, Interval, IntervalSet, MeasurableSet, Measure, Point};
use crate::rational::Rational;

/// Norm on `ℝ^d`. Both are rational-valued on rational vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum NormKind {
    /// `Σ |c_i|`
    #[default]
    L1,
    /// `max |c_i|`
    LInf,
}

/// Values a simple function may take: the scalar field or `ℝ^d`.
pub trait Value: Clone + Eq + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero_of(dim: usize) -> Self;
    fn dim(&self) -> usize;
    fn is_null(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn scaled(&self, c: &Rational) -> Self;
    fn norm(&self, kind: NormKind) -> Rational;

    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.scaled(&-Rational::from_integer(1.into())))
    }

    /// Pointwise maximum; `None` where values carry no order.
    fn max_with(&self, _rhs: &Self) -> Option<Self> {
        None
    }

    fn min_with(&self, _rhs: &Self) -> Option<Self> {
        None
    }
}

impl Value for Rational {
    fn zero_of(_dim: usize) -> Self {
        Rational::zero()
    }

    fn dim(&self) -> usize {
        1
    }

    fn is_null(&self) -> bool {
        Zero::is_zero(self)
    }

    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn scaled(&self, c: &Rational) -> Self {
        self * c
    }

    fn norm(&self, _kind: NormKind) -> Rational {
        self.abs()
    }

    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn max_with(&self, rhs: &Self) -> Option<Self> {
        Some(std::cmp::max(self, rhs).clone())
    }

    fn min_with(&self, rhs: &Self) -> Option<Self> {
        Some(std::cmp::min(self, rhs).clone())
    }
}

/// A vector in `ℝ^d` with rational components.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VectorValue(pub Vec<Rational>);

impl VectorValue {
    pub fn new(components: Vec<Rational>) -> Self {
        VectorValue(components)
    }

    pub fn components(&self) -> &[Rational] {
        &self.0
    }
}

impl Value for VectorValue {
    fn zero_of(dim: usize) -> Self {
        VectorValue(vec![Rational::zero(); dim])
    }

    fn dim(&self) -> usize {
        self.0.len()
    }

    fn is_null(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    fn plus(&self, rhs: &Self) -> Self {
        assert_eq!(self.0.len(), rhs.0.len(), "vector dimensions differ");
        VectorValue(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }

    fn scaled(&self, c: &Rational) -> Self {
        VectorValue(self.0.iter().map(|a| a * c).collect())
    }

    fn norm(&self, kind: NormKind) -> Rational {
        match kind {
            NormKind::L1 => self.0.iter().map(Signed::abs).sum(),
            NormKind::LInf => self.0.iter().map(Signed::abs).max().unwrap_or_else(Rational::zero),
        }
    }
}

impl fmt::Display for VectorValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// One `value · 1_set` term.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term<V> {
    pub value: V,
    pub set: MeasurableSet,
}

/// Binary pointwise operations, evaluated on the common refinement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Max,
    Min,
}

/// A simple function on a fixed domain with pairwise-disjoint term sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleFunction<V> {
    domain: Domain,
    dim: usize,
    terms: Vec<Term<V>>,
}

pub type ScalarSimple = SimpleFunction<Rational>;
pub type VectorSimple = SimpleFunction<VectorValue>;

impl<V: Value> SimpleFunction<V> {
    /// Builds `Σ value_i · 1_{set_i}`. Sets must lie in `domain`, be
    /// pairwise disjoint, and values must have dimension `dim`.
    pub fn new(domain: Domain, dim: usize, terms: Vec<(V, MeasurableSet)>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        for (value, set) in &terms {
            domain.check_same(&set.domain())?;
            if value.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: value.dim(),
                });
            }
        }
        check_disjoint(domain, &terms)?;
        Ok(SimpleFunction {
            domain,
            dim,
            terms: terms
                .into_iter()
                .map(|(value, set)| Term { value, set })
                .collect(),
        })
    }

    /// Builds `Σ value_i · 1_{set_i}` where the sets may overlap; overlaps
    /// are refined and their values summed.
    pub fn from_combination(domain: Domain, dim: usize, terms: Vec<(V, MeasurableSet)>) -> Result<Self> {
        let mut acc = SimpleFunction::zero(domain, dim);
        for (value, set) in terms {
            let term = SimpleFunction::new(domain, dim, vec![(value, set)])?;
            acc = acc.combine(&term, BinaryOp::Add)?;
        }
        Ok(acc)
    }

    pub fn zero(domain: Domain, dim: usize) -> Self {
        SimpleFunction {
            domain,
            dim,
            terms: Vec::new(),
        }
    }

    /// `value · 1_set`.
    pub fn indicator(set: MeasurableSet, value: V) -> Self {
        SimpleFunction {
            domain: set.domain(),
            dim: value.dim(),
            terms: vec![Term { value, set }],
        }
    }

    pub fn constant(domain: Domain, value: V) -> Self {
        SimpleFunction::indicator(MeasurableSet::full(domain), value)
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[Term<V>] {
        &self.terms
    }

    pub fn is_zero_function(&self) -> bool {
        self.terms.iter().all(|t| t.value.is_null() || t.set.is_empty())
    }

    /// f(ω); zero outside the listed sets.
    pub fn evaluate(&self, point: &Point) -> Result<V> {
        self.domain.check_point(point)?;
        Ok(self
            .terms
            .iter()
            .find(|t| t.set.contains(point))
            .map(|t| t.value.clone())
            .unwrap_or_else(|| V::zero_of(self.dim)))
    }

    /// The canonical representation: distinct values, non-empty sets that
    /// partition Ω (a zero term pads the uncovered part), ordered by the
    /// smallest point of each set.
    pub fn canonicalize(&self) -> Self {
        let mut groups: BTreeMap<&V, Vec<&MeasurableSet>> = BTreeMap::new();
        for t in &self.terms {
            if !t.set.is_empty() {
                groups.entry(&t.value).or_default().push(&t.set);
            }
        }
        let covered = MeasurableSet::union_all(self.domain, self.terms.iter().map(|t| &t.set))
            .expect("terms share the function's domain");
        let uncovered = covered.complement();
        let zero = V::zero_of(self.dim);
        if !uncovered.is_empty() {
            groups.entry(&zero).or_default().push(&uncovered);
        }
        let mut terms: Vec<Term<V>> = groups
            .into_iter()
            .map(|(value, sets)| Term {
                value: value.clone(),
                set: MeasurableSet::union_all(self.domain, sets).expect("same domain"),
            })
            .collect();
        terms.sort_by_key(|a| a.set.min_point());
        SimpleFunction {
            domain: self.domain,
            dim: self.dim,
            terms,
        }
    }

    /// Equality as functions on Ω, independent of representation.
    pub fn same_function(&self, other: &Self) -> bool {
        self.domain == other.domain && self.dim == other.dim && self.canonicalize() == other.canonicalize()
    }

    /// Applies `op` pointwise on the common refinement of both partitions.
    /// Each output term is the intersection of one cell of `self` with one
    /// cell of `other`, where a cell is a term set or the uncovered rest.
    pub fn combine(&self, other: &Self, op: BinaryOp) -> Result<Self> {
        self.domain.check_same(&other.domain)?;
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let zero = V::zero_of(self.dim);
        let value_of = |f: &Self, label: Option<usize>| -> V {
            label.map(|i| f.terms[i].value.clone()).unwrap_or_else(|| zero.clone())
        };
        let mut terms = Vec::new();
        for (i, j, set) in common_refinement(self, other) {
            let (a, b) = (value_of(self, i), value_of(other, j));
            let value = match op {
                BinaryOp::Add => a.plus(&b),
                BinaryOp::Sub => a.minus(&b),
                BinaryOp::Max => a.max_with(&b).ok_or(Error::OrderOnVector)?,
                BinaryOp::Min => a.min_with(&b).ok_or(Error::OrderOnVector)?,
            };
            terms.push(Term { value, set });
        }
        Ok(SimpleFunction {
            domain: self.domain,
            dim: self.dim,
            terms,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, BinaryOp::Add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, BinaryOp::Sub)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map_values(self.dim, |v| v.scaled(c))
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::from_integer(1.into()))
    }

    /// Applies `f` to every value, keeping the sets.
    pub fn map_values<W: Value>(&self, dim: usize, f: impl Fn(&V) -> W) -> SimpleFunction<W> {
        SimpleFunction {
            domain: self.domain,
            dim,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    value: f(&t.value),
                    set: t.set.clone(),
                })
                .collect(),
        }
    }

    /// Splits every term along `set` (into `A ∩ set` and `A \ set`), giving a
    /// finer representation of the same function.
    pub fn refine(&self, set: &MeasurableSet) -> Result<Self> {
        self.domain.check_same(&set.domain())?;
        let mut terms = Vec::with_capacity(self.terms.len() * 2);
        for t in &self.terms {
            for part in [t.set.intersection(set)?, t.set.difference(set)?] {
                if !part.is_empty() {
                    terms.push(Term {
                        value: t.value.clone(),
                        set: part,
                    });
                }
            }
        }
        Ok(SimpleFunction {
            domain: self.domain,
            dim: self.dim,
            terms,
        })
    }

    /// `1_A · f`.
    pub fn restrict(&self, set: &MeasurableSet) -> Result<Self> {
        self.domain.check_same(&set.domain())?;
        let terms = self
            .terms
            .iter()
            .map(|t| {
                Ok(Term {
                    value: t.value.clone(),
                    set: t.set.intersection(set)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SimpleFunction {
            domain: self.domain,
            dim: self.dim,
            terms,
        })
    }

    /// Union of the sets carrying a non-zero value.
    pub fn support(&self) -> MeasurableSet {
        MeasurableSet::union_all(
            self.domain,
            self.terms.iter().filter(|t| !t.value.is_null()).map(|t| &t.set),
        )
        .expect("same domain")
    }

    /// `∫ f dm = Σ v_i · m(A_i)`, componentwise for vectors. Terms with a
    /// zero value contribute nothing whatever the mass of their set.
    pub fn integrate_elementary(&self, m: &Measure) -> Result<V> {
        self.domain.check_same(&m.domain())?;
        let mut total = V::zero_of(self.dim);
        for t in &self.terms {
            if t.value.is_null() {
                continue;
            }
            total = total.plus(&t.value.scaled(&m.measure_of(&t.set)?));
        }
        Ok(total)
    }

    /// The scalar function `ω ↦ ‖f(ω)‖`.
    pub fn norm_function(&self, kind: NormKind) -> ScalarSimple {
        self.map_values(1, |v| v.norm(kind))
    }

    /// `∫ ‖f‖ dm`.
    pub fn l1_norm(&self, m: &Measure, kind: NormKind) -> Result<Rational> {
        self.norm_function(kind).integrate_elementary(m)
    }
}

impl ScalarSimple {
    /// Scalar function from `(value, set)` pairs with disjoint sets.
    pub fn scalar(domain: Domain, terms: Vec<(Rational, MeasurableSet)>) -> Result<Self> {
        SimpleFunction::new(domain, 1, terms)
    }

    pub fn max(&self, other: &Self) -> Result<Self> {
        self.combine(other, BinaryOp::Max)
    }

    pub fn min(&self, other: &Self) -> Result<Self> {
        self.combine(other, BinaryOp::Min)
    }

    pub fn abs(&self) -> Self {
        self.map_values(1, Signed::abs).canonicalize()
    }

    /// `f⁺ = max(0, f)`.
    pub fn pos_part(&self) -> Self {
        self.map_values(1, |v| if v.is_positive() { v.clone() } else { Rational::zero() })
            .canonicalize()
    }

    /// `f⁻ = max(0, −f)`.
    pub fn neg_part(&self) -> Self {
        self.map_values(1, |v| if v.is_negative() { -v } else { Rational::zero() })
            .canonicalize()
    }

    /// Largest value taken on Ω.
    pub fn sup(&self) -> Rational {
        self.canonicalize()
            .terms
            .iter()
            .map(|t| t.value.clone())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Smallest value taken on Ω.
    pub fn inf(&self) -> Rational {
        self.canonicalize()
            .terms
            .iter()
            .map(|t| t.value.clone())
            .min()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.inf().is_negative()
    }

    /// `f ≤ g` everywhere, checked cell by cell on the common refinement.
    pub fn le(&self, other: &Self) -> Result<bool> {
        Ok(other.sub(self)?.is_nonnegative())
    }
}

impl VectorSimple {
    /// The `i`-th component as a scalar simple function.
    pub fn component(&self, i: usize) -> Result<ScalarSimple> {
        if i >= self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: i + 1,
            });
        }
        Ok(self.map_values(1, |v| v.0[i].clone()))
    }
}

impl<V: Value> fmt::Display for SimpleFunction<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}·1{{{}}}", t.value, t.set)?;
        }
        Ok(())
    }
}

fn check_disjoint<V>(domain: Domain, terms: &[(V, MeasurableSet)]) -> Result<()> {
    match domain {
        Domain::Discrete { size } => {
            let mut owner: Vec<Option<usize>> = vec![None; size];
            for (k, (_, set)) in terms.iter().enumerate() {
                if let MeasurableSet::Discrete(s) = set {
                    for &i in s.indices() {
                        if let Some(first) = owner[i] {
                            return Err(Error::OverlappingSets { first, second: k });
                        }
                        owner[i] = Some(k);
                    }
                }
            }
        }
        Domain::UnitInterval => {
            let mut all: Vec<(&Interval, usize)> = Vec::new();
            for (k, (_, set)) in terms.iter().enumerate() {
                if let MeasurableSet::Interval(s) = set {
                    all.extend(s.intervals().iter().map(|iv| (iv, k)));
                }
            }
            all.sort_by(|a, b| a.0.start().cmp(b.0.start()));
            for w in all.windows(2) {
                if w[1].0.start() < w[0].0.end() {
                    let (first, second) = (w[0].1.min(w[1].1), w[0].1.max(w[1].1));
                    return Err(Error::OverlappingSets { first, second });
                }
            }
        }
    }
    Ok(())
}

type Cell = (Option<usize>, Option<usize>, MeasurableSet);

/// Non-empty intersections of the cells of `f` and `g`, in order of their
/// smallest point. `None` labels the part a function leaves uncovered.
fn common_refinement<V: Value>(f: &SimpleFunction<V>, g: &SimpleFunction<V>) -> Vec<Cell> {
    match f.domain {
        Domain::Discrete { size } => {
            let lf = discrete_labels(f, size);
            let lg = discrete_labels(g, size);
            let mut order: Vec<(Option<usize>, Option<usize>)> = Vec::new();
            let mut members: HashMap<(Option<usize>, Option<usize>), Vec<usize>> = HashMap::new();
            for p in 0..size {
                let key = (lf[p], lg[p]);
                members
                    .entry(key)
                    .or_insert_with(|| {
                        order.push(key);
                        Vec::new()
                    })
                    .push(p);
            }
            order
                .into_iter()
                .map(|key| {
                    let idx = members.remove(&key).unwrap_or_default();
                    let set = MeasurableSet::indices(size, idx).expect("indices in range");
                    (key.0, key.1, set)
                })
                .collect()
        }
        Domain::UnitInterval => {
            let af = interval_atoms(f);
            let ag = interval_atoms(g);
            let mut order: Vec<(Option<usize>, Option<usize>)> = Vec::new();
            let mut members: HashMap<(Option<usize>, Option<usize>), Vec<Interval>> = HashMap::new();
            let (mut i, mut j) = (0, 0);
            while i < af.len() && j < ag.len() {
                let (a, b) = (&af[i], &ag[j]);
                let start = std::cmp::max(a.0.start(), b.0.start()).clone();
                let end = std::cmp::min(a.0.end(), b.0.end()).clone();
                if start < end {
                    let key = (a.1, b.1);
                    members
                        .entry(key)
                        .or_insert_with(|| {
                            order.push(key);
                            Vec::new()
                        })
                        .push(Interval::new_unchecked(start, end.clone()));
                }
                if a.0.end() == &end {
                    i += 1;
                }
                if b.0.end() == &end {
                    j += 1;
                }
            }
            order
                .into_iter()
                .map(|key| {
                    let ivs = members.remove(&key).unwrap_or_default();
                    (key.0, key.1, MeasurableSet::Interval(IntervalSet::from_sorted(ivs)))
                })
                .collect()
        }
    }
}

fn discrete_labels<V>(f: &SimpleFunction<V>, size: usize) -> Vec<Option<usize>> {
    let mut labels = vec![None; size];
    for (k, t) in f.terms.iter().enumerate() {
        if let MeasurableSet::Discrete(s) = &t.set {
            for &i in s.indices() {
                labels[i] = Some(k);
            }
        }
    }
    labels
}

/// Sorted intervals covering `[0, 1)`, each labelled by its term index.
fn interval_atoms<V>(f: &SimpleFunction<V>) -> Vec<(Interval, Option<usize>)> {
    let mut atoms: Vec<(Interval, Option<usize>)> = Vec::new();
    for (k, t) in f.terms.iter().enumerate() {
        if let MeasurableSet::Interval(s) = &t.set {
            atoms.extend(s.intervals().iter().map(|iv| (iv.clone(), Some(k))));
        }
    }
    let covered = IntervalSet::from_intervals(atoms.iter().map(|a| a.0.clone()));
    atoms.extend(covered.complement().intervals().iter().map(|iv| (iv.clone(), None)));
    atoms.sort_by(|a, b| a.0.start().cmp(b.0.start()));
    atoms
}
