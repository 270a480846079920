//! The circle digraphs S(2) and S(3) on rational angles, the linear orders
//! ρ and τ they define together with their partition labels, density
//! witnesses, endpoint trimming and finite Tarski–Vaught probes.

use std::fmt::Write as _;
use std::str::FromStr;

use num::{BigInt, Integer, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::angles::{self, parse_rational, rational_in_arc, shorter_arc, ArcError, Class, GenAngle, Model, Rational};
use crate::formula::Formula;
use crate::structure::{FinStructure, Signature};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SampleError {
    #[error("point {0} occurs twice")]
    Duplicate(String),
    #[error("defined order is not a strict linear order: {0:?}")]
    NotLinear(Box<OrderReport>),
    #[error("bad sample descriptor `{0}`")]
    Descriptor(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DensityError {
    #[error("{x} does not precede {y} in the defined order")]
    NotBefore { x: String, y: String },
    #[error("class {class:?} is not a class of {model:?}")]
    NoSuchClass { model: Model, class: Class },
    #[error(transparent)]
    Arc(#[from] ArcError),
    #[error("candidate {z} failed verification")]
    Unverified { z: String },
}

/// Defined order from the classes and arrows of two distinct points.
fn order_from(model: Model, cx: Class, cy: Class, x_to_y: bool, y_to_x: bool) -> bool {
    match model {
        Model::S2 => {
            if cx == cy {
                x_to_y
            } else {
                y_to_x
            }
        }
        Model::S3 => {
            let (i, j) = (cx.index(), cy.index());
            if i == j {
                x_to_y
            } else if j == (i + 1) % 3 {
                // (A,B), (B,C), (C,A): incomparable pairs are ordered.
                !x_to_y && !y_to_x
            } else {
                // (A,C), (C,B), (B,A): reversed arrow.
                y_to_x
            }
        }
    }
}

/// ρ: `→` kept inside A and inside B, reversed between them.
pub fn rho(q1: &Rational, q2: &Rational) -> bool {
    order(Model::S2, q1, q2)
}

/// τ: `→` inside a class, `→⁻¹` on (A,C), (C,B), (B,A) and `∥` on
/// (C,A), (B,C), (A,B).
pub fn tau(q1: &Rational, q2: &Rational) -> bool {
    order(Model::S3, q1, q2)
}

/// The defined order of `model` (ρ or τ).
pub fn order(model: Model, q1: &Rational, q2: &Rational) -> bool {
    if q1 == q2 {
        return false;
    }
    order_from(
        model,
        model.class_of(q1),
        model.class_of(q2),
        model.arrow(q1, q2),
        model.arrow(q2, q1),
    )
}

/// Result of checking the strict linear order axioms on every pair and
/// triple. Each field holds the first violation found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderReport {
    pub size: usize,
    pub triples_checked: u64,
    pub reflexive_at: Option<usize>,
    pub symmetric_pair: Option<(usize, usize)>,
    pub incomparable_pair: Option<(usize, usize)>,
    pub intransitive_triple: Option<(usize, usize, usize)>,
    pub passed: bool,
}

/// Irreflexivity, asymmetry, totality and transitivity of `rel` on `0..n`.
pub fn order_axioms_check(n: usize, rel: impl Fn(usize, usize) -> bool) -> OrderReport {
    let mut m = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            m[i * n + j] = rel(i, j);
        }
    }
    let at = |i: usize, j: usize| m[i * n + j];
    let reflexive_at = (0..n).find(|&i| at(i, i));
    let mut symmetric_pair = None;
    let mut incomparable_pair = None;
    for i in 0..n {
        for j in i + 1..n {
            if symmetric_pair.is_none() && at(i, j) && at(j, i) {
                symmetric_pair = Some((i, j));
            }
            if incomparable_pair.is_none() && !at(i, j) && !at(j, i) {
                incomparable_pair = Some((i, j));
            }
        }
    }
    let mut intransitive_triple = None;
    let mut triples_checked = 0u64;
    'outer: for i in 0..n {
        for j in 0..n {
            if !at(i, j) {
                triples_checked += n as u64;
                continue;
            }
            for k in 0..n {
                triples_checked += 1;
                if at(j, k) && !at(i, k) {
                    intransitive_triple = Some((i, j, k));
                    break 'outer;
                }
            }
        }
    }
    OrderReport {
        size: n,
        triples_checked,
        passed: reflexive_at.is_none()
            && symmetric_pair.is_none()
            && incomparable_pair.is_none()
            && intransitive_triple.is_none(),
        reflexive_at,
        symmetric_pair,
        incomparable_pair,
        intransitive_triple,
    }
}

/// Where sample points come from: a seeded draw or an explicit list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SampleSpec {
    /// `count` distinct rationals `p/d`, `1 ≤ d ≤ 64`, `|p/d| ≤ 8`.
    Seeded { seed: u64, count: usize },
    List(Vec<Rational>),
}

impl SampleSpec {
    pub fn points(&self) -> Vec<Rational> {
        match self {
            SampleSpec::Seeded { seed, count } => seeded_rationals(*seed, *count),
            SampleSpec::List(v) => v.clone(),
        }
    }
}

impl FromStr for SampleSpec {
    type Err = SampleError;

    /// `seed:<s>:<count>` or a comma-separated list of rationals.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SampleError::Descriptor(s.to_string());
        if let Some(rest) = s.trim().strip_prefix("seed:") {
            let (seed, count) = rest.split_once(':').ok_or_else(bad)?;
            return Ok(SampleSpec::Seeded {
                seed: seed.parse().map_err(|_| bad())?,
                count: count.parse().map_err(|_| bad())?,
            });
        }
        if s.trim().is_empty() {
            return Ok(SampleSpec::List(Vec::new()));
        }
        s.split(',')
            .map(|t| parse_rational(t).map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()
            .map(SampleSpec::List)
    }
}

impl std::fmt::Display for SampleSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SampleSpec::Seeded { seed, count } => write!(f, "seed:{seed}:{count}"),
            SampleSpec::List(v) => {
                let parts: Vec<String> = v.iter().map(fmt_q).collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}

pub(crate) fn fmt_q(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Distinct rationals drawn deterministically from `seed`.
pub fn seeded_rationals(seed: u64, count: usize) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Rational> = Vec::with_capacity(count);
    let mut seen = std::collections::BTreeSet::new();
    while out.len() < count {
        let d: i64 = rng.gen_range(1..=64);
        let p: i64 = rng.gen_range(-8 * d..=8 * d);
        let q = angles::ratio(p, d);
        if seen.insert(q.clone()) {
            out.push(q);
        }
    }
    out
}

/// A finite set of points of S with the model's arrow, classes and
/// defined order precomputed.
#[derive(Clone, Debug)]
pub struct CircSample {
    model: Model,
    points: Vec<Rational>,
    classes: Vec<Class>,
    arrow: Vec<bool>,
    order: Vec<bool>,
}

impl CircSample {
    /// Builds the sample and checks that the defined order restricted to it
    /// is a strict linear order.
    pub fn new(model: Model, points: Vec<Rational>) -> Result<Self, SampleError> {
        let sample = Self::unchecked(model, points)?;
        let report = sample.order_axioms_check();
        if !report.passed {
            return Err(SampleError::NotLinear(Box::new(report)));
        }
        Ok(sample)
    }

    pub fn from_spec(model: Model, spec: &SampleSpec) -> Result<Self, SampleError> {
        Self::new(model, spec.points())
    }

    fn unchecked(model: Model, points: Vec<Rational>) -> Result<Self, SampleError> {
        let mut seen = std::collections::BTreeSet::new();
        for q in &points {
            if !seen.insert(q.clone()) {
                return Err(SampleError::Duplicate(fmt_q(q)));
            }
        }
        let n = points.len();
        let classes: Vec<Class> = points.iter().map(|q| model.class_of(q)).collect();
        let mut arrow = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    arrow[i * n + j] = model.arrow(&points[i], &points[j]);
                }
            }
        }
        let mut order = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    order[i * n + j] =
                        order_from(model, classes[i], classes[j], arrow[i * n + j], arrow[j * n + i]);
                }
            }
        }
        Ok(CircSample {
            model,
            points,
            classes,
            arrow,
            order,
        })
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    pub fn classes(&self) -> &[Class] {
        &self.classes
    }

    pub fn arrow(&self, i: usize, j: usize) -> bool {
        self.arrow[i * self.len() + j]
    }

    pub fn before(&self, i: usize, j: usize) -> bool {
        self.order[i * self.len() + j]
    }

    fn labels(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.index()).collect()
    }

    /// `⟨D, →, A, B[, C]⟩` with class labels.
    pub fn arrow_structure(&self) -> FinStructure {
        FinStructure::from_fn(self.len(), |i, j| self.arrow(i, j))
            .with_labels(self.labels())
            .expect("label count matches")
    }

    /// `⟨D, ρ, A, B⟩` or `⟨D, τ, A, B, C⟩`.
    pub fn order_structure(&self) -> FinStructure {
        FinStructure::from_fn(self.len(), |i, j| self.before(i, j))
            .with_labels(self.labels())
            .expect("label count matches")
    }

    pub fn signature(&self) -> Signature {
        Signature::lettered(self.model.classes().len())
    }

    pub fn order_axioms_check(&self) -> OrderReport {
        order_axioms_check(self.len(), |i, j| self.before(i, j))
    }

    /// The order axioms applied to the raw arrow relation instead.
    pub fn arrow_axioms_check(&self) -> OrderReport {
        order_axioms_check(self.len(), |i, j| self.arrow(i, j))
    }

    /// Indices listed from least to greatest in the defined order.
    pub fn sorted(&self) -> Vec<usize> {
        // Rank = number of predecessors.
        let n = self.len();
        let mut ranked: Vec<(usize, usize)> = (0..n)
            .map(|i| ((0..n).filter(|&j| self.before(j, i)).count(), i))
            .collect();
        ranked.sort_unstable();
        ranked.into_iter().map(|(_, i)| i).collect()
    }

    /// The sample without its least and greatest elements.
    pub fn trim_endpoints(&self) -> CircSample {
        let sorted = self.sorted();
        if sorted.len() <= 2 {
            return self.restricted(&[]);
        }
        let keep: Vec<usize> = {
            let mut v: Vec<usize> = sorted[1..sorted.len() - 1].to_vec();
            v.sort_unstable();
            v
        };
        self.restricted(&keep)
    }

    /// Sub-sample on the given indices, in the given order.
    pub fn restricted(&self, keep: &[usize]) -> CircSample {
        let n = self.len();
        let m = keep.len();
        let mut arrow = vec![false; m * m];
        let mut order = vec![false; m * m];
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                arrow[a * m + b] = self.arrow[i * n + j];
                order[a * m + b] = self.order[i * n + j];
            }
        }
        CircSample {
            model: self.model,
            points: keep.iter().map(|&i| self.points[i].clone()).collect(),
            classes: keep.iter().map(|&i| self.classes[i]).collect(),
            arrow,
            order,
        }
    }

    /// The sample with extra points appended (duplicates skipped).
    pub fn extended(&self, extra: &[Rational]) -> CircSample {
        let mut points = self.points.clone();
        for q in extra {
            if !points.contains(q) {
                points.push(q.clone());
            }
        }
        CircSample::unchecked(self.model, points).expect("duplicates skipped")
    }

    pub fn index_of(&self, q: &Rational) -> Option<usize> {
        self.points.iter().position(|p| p == q)
    }

    /// Labeled DOT: nodes carry their class, edges are the covering pairs of
    /// the defined order.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph {name} {{\n");
        for (i, q) in self.points.iter().enumerate() {
            let _ = writeln!(out, "  {i} [label=\"{}:{:?}\"];", fmt_q(q), self.classes[i]);
        }
        let sorted = self.sorted();
        for w in sorted.windows(2) {
            let _ = writeln!(out, "  {} -> {};", w[0], w[1]);
        }
        out.push_str("}\n");
        out
    }
}

/// Arc endpoint `point + shift·π` for `point ∈ {x, y}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcEnd {
    pub from_y: bool,
    pub shift_pi: Rational,
}

impl ArcEnd {
    fn x(n: i64, d: i64) -> Self {
        ArcEnd {
            from_y: false,
            shift_pi: angles::ratio(n, d),
        }
    }

    fn y(n: i64, d: i64) -> Self {
        ArcEnd {
            from_y: true,
            shift_pi: angles::ratio(n, d),
        }
    }

    pub fn at(&self, x: &Rational, y: &Rational) -> GenAngle {
        let p = if self.from_y { y } else { x };
        GenAngle::new(p.clone(), self.shift_pi.clone())
    }
}

/// The shorter arc between two endpoints built from `x` and `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcSpec(pub ArcEnd, pub ArcEnd);

impl ArcSpec {
    /// Counterclockwise orientation of the shorter arc.
    pub fn resolve(&self, x: &Rational, y: &Rational) -> Result<(GenAngle, GenAngle), ArcError> {
        shorter_arc(&self.0.at(x, y), &self.1.at(x, y))
    }
}

/// Witness arcs for density of class A, one per class pair `(class x,
/// class y)` of points with `x` before `y`. Rotations are written as π
/// shifts: `r` is 2/3, `r²` is 4/3 and the antipode is 1.
pub fn witness_arc(model: Model, cx: Class, cy: Class) -> ArcSpec {
    use Class::*;
    let (a, b) = match model {
        Model::S2 => match (cx, cy) {
            (A, A) => (ArcEnd::x(0, 1), ArcEnd::y(0, 1)),
            (B, B) => (ArcEnd::x(1, 1), ArcEnd::y(1, 1)),
            (A, B) => (ArcEnd::x(0, 1), ArcEnd::y(1, 1)),
            (B, A) => (ArcEnd::x(1, 1), ArcEnd::y(0, 1)),
            _ => unreachable!("S(2) has classes A and B only"),
        },
        Model::S3 => match (cx, cy) {
            (A, A) => (ArcEnd::x(0, 1), ArcEnd::y(0, 1)),
            (B, B) => (ArcEnd::x(4, 3), ArcEnd::y(4, 3)),
            (C, C) => (ArcEnd::x(2, 3), ArcEnd::y(2, 3)),
            (A, B) => (ArcEnd::x(0, 1), ArcEnd::y(4, 3)),
            (A, C) => (ArcEnd::x(0, 1), ArcEnd::y(2, 3)),
            (B, C) => (ArcEnd::x(4, 3), ArcEnd::y(2, 3)),
            (B, A) => (ArcEnd::x(4, 3), ArcEnd::y(0, 1)),
            (C, A) => (ArcEnd::x(2, 3), ArcEnd::y(0, 1)),
            (C, B) => (ArcEnd::x(2, 3), ArcEnd::y(4, 3)),
        },
    };
    ArcSpec(a, b)
}

/// Class `c` renamed by the symmetry carrying `target` to A: the antipode
/// for S(2), a power of the 2π/3 rotation for S(3). Both symmetries commute
/// with the witness arcs, so the A-table serves every target.
fn relabel(model: Model, target: Class, c: Class) -> Class {
    let k = model.classes().len();
    Class::from_index((c.index() + k - target.index()) % k).expect("valid class")
}

/// A point `z` of S of class `target` with `x < z < y` in the defined order.
pub fn density_witness(x: &Rational, y: &Rational, target: Class, model: Model) -> Result<Rational, DensityError> {
    if !model.classes().contains(&target) {
        return Err(DensityError::NoSuchClass { model, class: target });
    }
    if !order(model, x, y) {
        return Err(DensityError::NotBefore {
            x: fmt_q(x),
            y: fmt_q(y),
        });
    }
    let cx = relabel(model, target, model.class_of(x));
    let cy = relabel(model, target, model.class_of(y));
    let (s, t) = witness_arc(model, cx, cy).resolve(x, y)?;
    let z = rational_in_arc(&s, &t, Some((model, target)))?;
    if order(model, x, &z) && order(model, &z, y) && model.class_of(&z) == target {
        Ok(z)
    } else {
        Err(DensityError::Unverified { z: fmt_q(&z) })
    }
}

/// An `∃`-formula `E z. θ(x, y, z)` over `⟨R⟩` paired with an arc where a
/// witness in S is sought, applied to pairs `x < y` whose classes match
/// `guard`.
#[derive(Clone, Debug)]
pub struct WitnessPattern {
    pub name: String,
    pub guard: Option<(Class, Class)>,
    pub arc: ArcSpec,
    pub formula: Formula,
}

impl WitnessPattern {
    pub fn new(name: &str, guard: Option<(Class, Class)>, arc: ArcSpec, text: &str) -> Self {
        let formula = Formula::parse_with(text, &Signature::plain()).expect("pattern parses");
        assert!(formula.strip_exists().is_some(), "pattern must be an ∃-formula");
        WitnessPattern {
            name: name.to_string(),
            guard,
            arc,
            formula,
        }
    }
}

const PAR: &str = "!R(x,z) & !R(z,x) & x!=z";
const PAR_Y: &str = "!R(y,z) & !R(z,y) & y!=z";

/// The class-A density patterns: four for S(2), nine for S(3).
pub fn density_patterns(model: Model) -> Vec<WitnessPattern> {
    use Class::*;
    let cases: Vec<(Class, Class, String)> = match model {
        Model::S2 => vec![
            (A, A, "R(x,z) & R(z,y)".into()),
            (B, B, "R(y,z) & R(z,x)".into()),
            (A, B, "R(y,z) & R(x,z)".into()),
            (B, A, "R(z,x) & R(z,y)".into()),
        ],
        Model::S3 => vec![
            (A, A, "R(x,z) & R(z,y)".into()),
            (B, B, format!("R(z,x) & ({PAR_Y})")),
            (C, C, format!("({PAR}) & R(y,z)")),
            (A, B, format!("R(x,z) & ({PAR_Y})")),
            (A, C, "R(x,z) & R(y,z)".into()),
            (B, C, "R(z,x) & R(y,z)".into()),
            (B, A, "R(z,x) & R(z,y)".into()),
            (C, A, format!("({PAR}) & R(z,y)")),
            (C, B, format!("({PAR}) & ({PAR_Y})")),
        ],
    };
    cases
        .into_iter()
        .map(|(cx, cy, body)| {
            WitnessPattern::new(
                &format!("{cx:?}{cy:?}"),
                Some((cx, cy)),
                witness_arc(model, cx, cy),
                &format!("E z. {body}"),
            )
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TvFailure {
    pub x: String,
    pub y: String,
    pub pattern: String,
    /// The witness found in S but missing from the sample.
    pub s: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TvReport {
    pub pairs_checked: usize,
    pub patterns_applied: usize,
    pub failures: Vec<TvFailure>,
    pub passed: bool,
}

/// For each pair `x < y` of `parameters` (all of `d` when `None`) and each
/// pattern whose guard matches: if the arc holds a point `s ∈ S` with
/// `θ[x, y, s]`, require some `z ∈ d` with `θ[x, y, z]`.
pub fn tarski_vaught_check(d: &CircSample, patterns: &[WitnessPattern], parameters: Option<&[Rational]>) -> TvReport {
    let params: Vec<usize> = match parameters {
        Some(ps) => ps.iter().filter_map(|q| d.index_of(q)).collect(),
        None => (0..d.len()).collect(),
    };
    let structure = d.arrow_structure().without_labels();
    let mut failures = Vec::new();
    let mut pairs_checked = 0;
    let mut patterns_applied = 0;
    for &i in &params {
        for &j in &params {
            if i == j || !d.before(i, j) {
                continue;
            }
            pairs_checked += 1;
            let (x, y) = (&d.points()[i], &d.points()[j]);
            for p in patterns {
                if let Some((gx, gy)) = p.guard {
                    if (gx, gy) != (d.classes()[i], d.classes()[j]) {
                        continue;
                    }
                }
                let Ok((s_from, s_to)) = p.arc.resolve(x, y) else {
                    continue;
                };
                let Ok(s) = rational_in_arc(&s_from, &s_to, None) else {
                    continue;
                };
                let (zvar, body) = p.formula.strip_exists().expect("∃-pattern");
                let with_s = d.extended(std::slice::from_ref(&s));
                let s_idx = with_s.index_of(&s).expect("just added");
                let ambient = with_s.arrow_structure().without_labels();
                let holds_in_s = body
                    .eval(&ambient, &[("x", i), ("y", j), (zvar, s_idx)])
                    .unwrap_or(false);
                if !holds_in_s {
                    continue;
                }
                patterns_applied += 1;
                let in_d = p
                    .formula
                    .eval(&structure, &[("x", i), ("y", j)])
                    .unwrap_or(false);
                if !in_d {
                    failures.push(TvFailure {
                        x: fmt_q(x),
                        y: fmt_q(y),
                        pattern: p.name.clone(),
                        s: fmt_q(&s),
                    });
                }
            }
        }
    }
    TvReport {
        pairs_checked,
        patterns_applied,
        passed: failures.is_empty(),
        failures,
    }
}

/// `d` together with a class-`target` density witness for every pair.
pub fn close_under_density(d: &CircSample, targets: &[Class]) -> Result<CircSample, DensityError> {
    let mut extra = Vec::new();
    for i in 0..d.len() {
        for j in 0..d.len() {
            if i != j && d.before(i, j) {
                for &t in targets {
                    extra.push(density_witness(&d.points()[i], &d.points()[j], t, d.model())?);
                }
            }
        }
    }
    Ok(d.extended(&extra))
}

/// Depth of `q` in the Stern–Brocot tree (1 is the root), extended to
/// `q ≤ 0` by `depth(−q)` and `depth(0) = 0`.
pub fn stern_brocot_depth(q: &Rational) -> u64 {
    if q.is_zero() {
        return 0;
    }
    let mut num = q.numer().abs();
    let mut den = q.denom().clone();
    let mut total = BigInt::zero();
    while !den.is_zero() {
        let (a, r) = num.div_rem(&den);
        total += a;
        num = den;
        den = r;
    }
    let total: u64 = total.try_into().unwrap_or(u64::MAX);
    total - 1
}

/// A dense partition of ℚ into `n` classes: Stern–Brocot depth mod `n`.
pub fn qn_label(q: &Rational, n: usize) -> usize {
    assert!(n >= 1);
    (stern_brocot_depth(q) % n as u64) as usize
}
