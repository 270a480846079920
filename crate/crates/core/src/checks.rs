//! Check suites behind the `check` subcommand. Each suite returns a
//! [`SuiteReport`] listing every check with its verdict and data; reports
//! carry no timings, so reruns with the same configuration serialize to the
//! same bytes.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::angles::{shorter_arc_contains, Class, GenAngle, Model};
use crate::circular::{density_witness, fmt_q, CircSample, SampleSpec};
use crate::formula::{Builtin, Formula};
use crate::fraisse::{are_isomorphic, canonical_form, check_class_properties, enumerate_up_to_iso, isomorphisms, StructureClass};
use crate::random::{check_extension_property, round_trip_mismatch, transfer_invariant, Presentation};
use crate::structure::{unrelatedness_classes, wreath, FinStructure, Kind};

/// Version tag of the report layout.
pub const SCHEMA: &str = "ultrahom.report/1";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    pub data: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub schema: &'static str,
    pub suite: String,
    pub passed: bool,
    pub config: Value,
    pub checks: Vec<CheckItem>,
}

impl SuiteReport {
    pub fn new(suite: &str, config: Value) -> Self {
        SuiteReport {
            schema: SCHEMA,
            suite: suite.to_string(),
            passed: true,
            config,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, name: &str, passed: bool, data: impl Serialize) {
        self.passed &= passed;
        self.checks.push(CheckItem {
            name: name.to_string(),
            passed,
            data: serde_json::to_value(data).expect("report data serializes"),
        });
    }

    pub fn check(&self, name: &str) -> Option<&CheckItem> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Names of the checks that failed.
    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Clone, Debug)]
pub struct TransferConfig {
    pub graph: Presentation,
    pub max_h: usize,
    pub universe: Vec<u64>,
    pub max_v: u64,
}

impl Default for TransferConfig {
    fn default() -> Self {
        TransferConfig {
            graph: Presentation::bit(),
            max_h: 3,
            universe: (0..=7).collect(),
            max_v: 1 << 11,
        }
    }
}

/// `v ∈ G^H_K ⟺ v ∈ T^H_K` for the graph and its transfer.
pub fn transfer_suite(cfg: &TransferConfig) -> SuiteReport {
    let mut r = SuiteReport::new(
        "transfer",
        json!({"graph": cfg.graph.to_string(), "max_h": cfg.max_h, "universe": cfg.universe, "max_v": cfg.max_v}),
    );
    match transfer_invariant(&cfg.graph, cfg.max_h, &cfg.universe, cfg.max_v) {
        Ok(t) => {
            let passed = t.passed;
            r.push("transfer_invariant", passed, t);
        }
        Err(e) => r.push("transfer_invariant", false, json!({"error": e.to_string()})),
    }
    r
}

/// `tournament_to_graph ∘ graph_to_tournament` is the identity below `bound`.
pub fn round_trip_suite(graph: &Presentation, bound: u64) -> SuiteReport {
    let mut r = SuiteReport::new("round_trip", json!({"graph": graph.to_string(), "bound": bound}));
    match round_trip_mismatch(graph, bound) {
        Ok(m) => r.push(
            "round_trip",
            m.is_none(),
            json!({"pairs": bound * bound.saturating_sub(1), "mismatch": m}),
        ),
        Err(e) => r.push("round_trip", false, json!({"error": e.to_string()})),
    }
    r
}

#[derive(Clone, Debug)]
pub struct ExtensionConfig {
    pub graph: Presentation,
    pub max_h: usize,
    pub universe: Vec<u64>,
    pub budget: u64,
    pub witnesses: usize,
}

impl Default for ExtensionConfig {
    fn default() -> Self {
        ExtensionConfig {
            graph: Presentation::bit(),
            max_h: 3,
            universe: (0..=9).collect(),
            budget: 1 << 12,
            witnesses: 3,
        }
    }
}

/// Extension property witnesses for a presentation and for its transfer.
pub fn extension_suite(cfg: &ExtensionConfig) -> SuiteReport {
    let mut r = SuiteReport::new(
        "extension",
        json!({
            "presentation": cfg.graph.to_string(),
            "max_h": cfg.max_h,
            "universe": cfg.universe,
            "budget": cfg.budget,
            "witnesses": cfg.witnesses,
        }),
    );
    for p in [cfg.graph.clone(), cfg.graph.transfer()] {
        let rep = check_extension_property(&p, cfg.max_h, &cfg.universe, cfg.budget, cfg.witnesses);
        let passed = rep.passed;
        r.push(&format!("extension:{p}"), passed, rep);
    }
    r
}

#[derive(Clone, Debug)]
pub struct CircleConfig {
    pub sample: SampleSpec,
    /// Pairs per class case for the density checks.
    pub pairs: usize,
    pub seed: u64,
}

impl Default for CircleConfig {
    fn default() -> Self {
        CircleConfig {
            sample: SampleSpec::Seeded { seed: 7, count: 200 },
            pairs: 100,
            seed: 0,
        }
    }
}

fn circle_config_json(cfg: &CircleConfig) -> Value {
    json!({"sample": cfg.sample.to_string(), "pairs": cfg.pairs, "seed": cfg.seed})
}

#[derive(Serialize)]
struct Mismatch {
    x: String,
    y: String,
    expected: bool,
    got: bool,
}

fn compare_relations(d: &CircSample, got: &FinStructure, expected: impl Fn(usize, usize) -> bool) -> (bool, Value) {
    let mut count = 0usize;
    let mut first = None;
    for i in 0..d.len() {
        for j in 0..d.len() {
            if got.has(i, j) != expected(i, j) {
                count += 1;
                first.get_or_insert(Mismatch {
                    x: fmt_q(&d.points()[i]),
                    y: fmt_q(&d.points()[j]),
                    expected: expected(i, j),
                    got: got.has(i, j),
                });
            }
        }
    }
    (count == 0, json!({"pairs": d.len() * d.len(), "mismatches": count, "first": first}))
}

#[derive(Serialize)]
struct DensityCase {
    case: String,
    target: Class,
    available: usize,
    tested: usize,
    verified: usize,
    first_failure: Option<Value>,
}

/// Density witnesses for class A on up to `pairs` seeded pairs per class
/// case, plus every other target on the same pairs.
fn density_checks(d: &CircSample, cfg: &CircleConfig, r: &mut SuiteReport) {
    let model = d.model();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for &cx in model.classes() {
        for &cy in model.classes() {
            let mut candidates: Vec<(usize, usize)> = (0..d.len())
                .flat_map(|i| (0..d.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| i != j && d.classes()[i] == cx && d.classes()[j] == cy && d.before(i, j))
                .collect();
            let available = candidates.len();
            candidates.shuffle(&mut rng);
            candidates.truncate(cfg.pairs);
            for &target in model.classes() {
                let mut verified = 0;
                let mut first_failure = None;
                for &(i, j) in &candidates {
                    let (x, y) = (&d.points()[i], &d.points()[j]);
                    match density_witness(x, y, target, model) {
                        Ok(_) => verified += 1,
                        Err(e) => {
                            first_failure.get_or_insert(json!({"x": fmt_q(x), "y": fmt_q(y), "error": e.to_string()}));
                        }
                    }
                }
                let case = format!("{cx:?}{cy:?}");
                let passed = verified == candidates.len() && candidates.len() == cfg.pairs.min(available) && available > 0;
                let name = format!("density:{case}->{target:?}");
                r.push(
                    &name,
                    passed,
                    DensityCase {
                        case,
                        target,
                        available,
                        tested: candidates.len(),
                        verified,
                        first_failure,
                    },
                );
            }
        }
    }
}

fn within_class_checks(d: &CircSample, r: &mut SuiteReport) {
    for &c in d.model().classes() {
        let idx: Vec<usize> = (0..d.len()).filter(|&i| d.classes()[i] == c).collect();
        let rep = crate::circular::order_axioms_check(idx.len(), |a, b| d.arrow(idx[a], idx[b]));
        let passed = rep.passed;
        r.push(&format!("arrow_linear_on:{c:?}"), passed, rep);
    }
}

fn adversarial_check(r: &mut SuiteReport) {
    let pts: Vec<_> = [0, 1, 3].iter().map(|&n| crate::angles::int(n)).collect();
    let s2 = CircSample::new(Model::S2, pts.clone()).map(|d| d.arrow_axioms_check());
    let s3 = CircSample::new(Model::S3, pts).map(|d| d.arrow_axioms_check());
    match (s2, s3) {
        (Ok(s2), Ok(s3)) => {
            let passed = s2.passed && !s3.passed && s3.incomparable_pair.is_some();
            r.push(
                "adversarial_raw_arrow",
                passed,
                json!({"sample": "0,1,3", "s2_raw_arrow": s2, "s3_raw_arrow": s3}),
            );
        }
        (a, b) => r.push(
            "adversarial_raw_arrow",
            false,
            json!({"error": format!("{:?} {:?}", a.err(), b.err())}),
        ),
    }
}

fn load_sample(model: Model, cfg: &CircleConfig, r: &mut SuiteReport) -> Option<CircSample> {
    match CircSample::from_spec(model, &cfg.sample) {
        Ok(d) => Some(d),
        Err(e) => {
            r.push("sample", false, json!({"error": e.to_string()}));
            None
        }
    }
}

/// ρ on S(2): order axioms, λ-definability, density and the raw-arrow probe.
pub fn s2_suite(cfg: &CircleConfig) -> SuiteReport {
    let mut r = SuiteReport::new("s2", circle_config_json(cfg));
    let Some(d) = load_sample(Model::S2, cfg, &mut r) else {
        return r;
    };
    let axioms = d.order_axioms_check();
    let passed = axioms.passed;
    r.push("order_axioms", passed, axioms);
    let lambda = Builtin::Lambda2.formula().reduct(&d.arrow_structure());
    match lambda {
        Ok(red) => {
            let (ok, data) = compare_relations(&d, &red, |i, j| d.before(i, j));
            r.push("lambda_reduct", ok, data);
        }
        Err(e) => r.push("lambda_reduct", false, json!({"error": e.to_string()})),
    }
    within_class_checks(&d, &mut r);
    density_checks(&d, cfg, &mut r);
    adversarial_check(&mut r);
    r
}

/// τ on S(3): order axioms, the pair partition, λ/μ bi-definability, the
/// arc descriptions of `→`, `∥`, `←` and density.
pub fn s3_suite(cfg: &CircleConfig) -> SuiteReport {
    let mut r = SuiteReport::new("s3", circle_config_json(cfg));
    let Some(d) = load_sample(Model::S3, cfg, &mut r) else {
        return r;
    };
    let n = d.len();
    let axioms = d.order_axioms_check();
    let passed = axioms.passed;
    r.push("order_axioms", passed, axioms);

    // Exactly one of =, →, ←, ∥ per pair, and the class-pair arrow bans.
    let mut counts = BTreeMap::from([("equal", 0usize), ("arrow", 0), ("reverse", 0), ("parallel", 0)]);
    let mut overlaps = 0usize;
    let mut banned_arrows = 0usize;
    let mut banned_reverse = 0usize;
    for i in 0..n {
        for j in 0..n {
            let eq = i == j;
            let (f, b) = (d.arrow(i, j), d.arrow(j, i));
            let par = !eq && !f && !b;
            if [eq, f, b, par].iter().filter(|&&t| t).count() != 1 {
                overlaps += 1;
            }
            for (k, t) in [("equal", eq), ("arrow", f), ("reverse", b), ("parallel", par)] {
                if t {
                    *counts.get_mut(k).unwrap() += 1;
                }
            }
            let (ci, cj) = (d.classes()[i].index(), d.classes()[j].index());
            if ci != cj {
                // (A,C), (C,B), (B,A) carry no arrow; (C,A), (B,C), (A,B) no reversed arrow.
                if cj == (ci + 2) % 3 && f {
                    banned_arrows += 1;
                }
                if cj == (ci + 1) % 3 && b {
                    banned_reverse += 1;
                }
            }
        }
    }
    r.push(
        "pair_partition",
        overlaps == 0 && banned_arrows == 0 && banned_reverse == 0,
        json!({"counts": counts, "overlaps": overlaps, "banned_arrows": banned_arrows, "banned_reverse_arrows": banned_reverse}),
    );

    match Builtin::Lambda3.formula().reduct(&d.arrow_structure()) {
        Ok(red) => {
            let (ok, data) = compare_relations(&d, &red, |i, j| d.before(i, j));
            r.push("lambda_reduct", ok, data);
        }
        Err(e) => r.push("lambda_reduct", false, json!({"error": e.to_string()})),
    }
    match Builtin::Mu3.formula().reduct(&d.order_structure()) {
        Ok(red) => {
            let (ok, data) = compare_relations(&d, &red, |i, j| d.arrow(i, j));
            r.push("mu_reduct", ok, data);
        }
        Err(e) => r.push("mu_reduct", false, json!({"error": e.to_string()})),
    }

    // x → y iff y ∈ x⌢r(x); x ∥ y iff y ∈ r(x)⌢r²(x); y → x iff y ∈ r²(x)⌢x.
    let mut arc_mismatches = 0usize;
    let mut first = None;
    for i in 0..n {
        let x = GenAngle::from_rational(d.points()[i].clone());
        let (rx, r2x) = (x.rotate(), x.rotate2());
        for j in 0..n {
            if i == j {
                continue;
            }
            let y = GenAngle::from_rational(d.points()[j].clone());
            let inside = |s: &GenAngle, t: &GenAngle| shorter_arc_contains(&y, s, t).unwrap_or(false);
            let (f, b) = (d.arrow(i, j), d.arrow(j, i));
            let ok = inside(&x, &rx) == f && inside(&rx, &r2x) == (!f && !b) && inside(&r2x, &x) == b;
            if !ok {
                arc_mismatches += 1;
                first.get_or_insert(json!({"x": fmt_q(&d.points()[i]), "y": fmt_q(&d.points()[j])}));
            }
        }
    }
    r.push(
        "arc_descriptions",
        arc_mismatches == 0,
        json!({"pairs": n * n.saturating_sub(1), "mismatches": arc_mismatches, "first": first}),
    );
    within_class_checks(&d, &mut r);
    density_checks(&d, cfg, &mut r);
    r
}

#[derive(Clone, Debug)]
pub struct FraisseConfig {
    pub max_enumerate: usize,
    pub max_size: usize,
}

impl Default for FraisseConfig {
    fn default() -> Self {
        FraisseConfig {
            max_enumerate: 4,
            max_size: 3,
        }
    }
}

/// Enumeration counts, HP/JEP/AP for tournaments and graphs and the
/// singleton-class HP counterexample.
pub fn fraisse_suite(cfg: &FraisseConfig) -> SuiteReport {
    let mut r = SuiteReport::new(
        "fraisse",
        json!({"max_enumerate": cfg.max_enumerate, "max_size": cfg.max_size}),
    );
    let counts = |kind| -> Vec<usize> {
        (1..=cfg.max_enumerate)
            .map(|n| enumerate_up_to_iso(n, kind).map_or(0, |v| v.len()))
            .collect()
    };
    let tournaments = counts(Kind::Tournament);
    let expected_t: Vec<usize> = [1, 1, 2, 4, 12, 56].into_iter().take(cfg.max_enumerate).collect();
    r.push(
        "enumerate:tournaments",
        tournaments == expected_t,
        json!({"counts": tournaments, "expected": expected_t}),
    );
    let graphs = counts(Kind::Graph);
    let expected_g: Vec<usize> = [1, 2, 4, 11, 34, 156].into_iter().take(cfg.max_enumerate).collect();
    r.push(
        "enumerate:graphs",
        graphs == expected_g,
        json!({"counts": graphs, "expected": expected_g}),
    );
    for kind in [Kind::Tournament, Kind::Graph] {
        let rep = check_class_properties(&StructureClass::AllOf(kind), cfg.max_size);
        let passed = rep.passed;
        r.push(&format!("class:{}", kind_name(kind)), passed, rep);
    }
    let single = check_class_properties(&StructureClass::listed(vec![FinStructure::chain(3)]), 3);
    let detected = !single.hp.passed && single.hp.failure.is_some();
    r.push("singleton_hp_counterexample", detected, single.hp);
    r
}

fn kind_name(kind: Kind) -> &'static str {
    match kind {
        Kind::Tournament => "tournaments",
        Kind::Graph => "graphs",
        Kind::Digraph => "digraphs",
        Kind::Other => "other",
    }
}

#[derive(Clone, Debug)]
pub struct WreathConfig {
    /// Outer tournaments up to this size are tested against `I₁`.
    pub max_outer: usize,
    /// Size of the inner edgeless factor in the block test.
    pub inner: usize,
    /// Largest induced substructure compared in the block test.
    pub max_sub: usize,
}

impl Default for WreathConfig {
    fn default() -> Self {
        WreathConfig {
            max_outer: 4,
            inner: 3,
            max_sub: 4,
        }
    }
}

fn subsets_up_to(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max {
        let mut next = Vec::new();
        for s in &frontier {
            let start = s.last().map_or(0, |&v: &usize| v + 1);
            for v in start..n {
                let mut t = s.clone();
                t.push(v);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// `X[I₁] ≅ X ≅ I₁[X]`, the block structure of `T[I_m]` and block
/// preservation by isomorphisms between small induced substructures.
pub fn wreath_suite(cfg: &WreathConfig) -> SuiteReport {
    let mut r = SuiteReport::new(
        "wreath",
        json!({"max_outer": cfg.max_outer, "inner": cfg.inner, "max_sub": cfg.max_sub}),
    );
    let one = FinStructure::edgeless(1);
    let mut tested = 0;
    let mut failed = Vec::new();
    for n in 1..=cfg.max_outer {
        for (i, x) in enumerate_up_to_iso(n, Kind::Tournament).unwrap_or_default().iter().enumerate() {
            tested += 1;
            let right = wreath(x, &one).ok().and_then(|w| are_isomorphic(&w, x));
            let left = wreath(&one, x).ok().and_then(|w| are_isomorphic(&w, x));
            if right.is_none() || left.is_none() {
                failed.push(format!("{n}:{i}"));
            }
        }
    }
    r.push(
        "trivial_factor",
        failed.is_empty() && tested > 0,
        json!({"tournaments": tested, "failed": failed}),
    );

    let inner = FinStructure::edgeless(cfg.inner);
    for (i, t) in enumerate_up_to_iso(cfg.max_outer, Kind::Tournament).unwrap_or_default().iter().enumerate() {
        let w = match wreath(t, &inner) {
            Ok(w) => w,
            Err(e) => {
                r.push(&format!("blocks:{i}"), false, json!({"error": e.to_string()}));
                continue;
            }
        };
        let blocks = unrelatedness_classes(&w);
        let sizes: Vec<usize> = blocks.iter().flatten().map(Vec::len).collect();
        let shape_ok = blocks.is_some() && sizes.len() == t.size() && sizes.iter().all(|&s| s == cfg.inner);
        r.push(
            &format!("blocks:{i}"),
            shape_ok,
            json!({"outer": t.to_json(), "blocks": blocks}),
        );

        let block_of = |v: usize| v / cfg.inner.max(1);
        let mut groups: BTreeMap<_, Vec<(Vec<usize>, FinStructure)>> = BTreeMap::new();
        for s in subsets_up_to(w.size(), cfg.max_sub).into_iter().skip(1) {
            let (sub, _) = w.induced(&s).expect("in range");
            groups.entry(canonical_form(&sub).0).or_default().push((s, sub));
        }
        let mut maps = 0u64;
        let mut violation = None;
        'groups: for members in groups.values() {
            for (s1, x1) in members {
                for (s2, x2) in members {
                    for iso in isomorphisms(x1, x2) {
                        maps += 1;
                        for a in 0..s1.len() {
                            for b in 0..s1.len() {
                                let same = block_of(s1[a]) == block_of(s1[b]);
                                let same_img = block_of(s2[iso[a]]) == block_of(s2[iso[b]]);
                                if same && !same_img {
                                    violation = Some(json!({"from": s1, "to": s2, "map": iso}));
                                    break 'groups;
                                }
                            }
                        }
                    }
                }
            }
        }
        r.push(
            &format!("block_preservation:{i}"),
            violation.is_none(),
            json!({"isomorphisms": maps, "violation": violation}),
        );
    }
    r
}

#[derive(Clone, Debug)]
pub struct FormulaConfig {
    pub sample_size: usize,
    pub subsets: usize,
    pub seed: u64,
}

impl Default for FormulaConfig {
    fn default() -> Self {
        FormulaConfig {
            sample_size: 30,
            subsets: 50,
            seed: 11,
        }
    }
}

/// `reduct(X↾D) = reduct(X)↾D` for `subsets` random `D`.
fn absoluteness(f: &Formula, x: &FinStructure, subsets: usize, rng: &mut ChaCha8Rng) -> (bool, Value) {
    let full = match f.reduct(x) {
        Ok(v) => v,
        Err(e) => return (false, json!({"error": e.to_string()})),
    };
    let mut failures = 0;
    let mut sizes = Vec::new();
    for _ in 0..subsets {
        let d: Vec<usize> = (0..x.size()).filter(|_| rng.gen_bool(0.5)).collect();
        sizes.push(d.len());
        let (sub, _) = x.induced(&d).expect("in range");
        let (expected, _) = full.induced(&d).expect("in range");
        if f.reduct(&sub).ok().as_ref() != Some(&expected) {
            failures += 1;
        }
    }
    (failures == 0, json!({"subsets": subsets, "subset_sizes": sizes, "failures": failures}))
}

/// parse∘print on the builtins and quantifier-free absoluteness of λ, μ.
pub fn formula_suite(cfg: &FormulaConfig) -> SuiteReport {
    let mut r = SuiteReport::new(
        "formula",
        json!({"sample_size": cfg.sample_size, "subsets": cfg.subsets, "seed": cfg.seed}),
    );
    for b in Builtin::ALL {
        let f = b.formula();
        let printed = f.to_string();
        let reparsed = Formula::parse_with(&printed, &b.signature());
        let ok = reparsed.as_ref().is_ok_and(|g| *g == f && g.to_string() == printed);
        r.push(&format!("round_trip:{}", b.name()), ok, json!({"printed": printed}));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let spec = SampleSpec::Seeded {
        seed: cfg.seed,
        count: cfg.sample_size,
    };
    let cases = [
        (Builtin::Lambda2, Model::S2, false),
        (Builtin::Lambda3, Model::S3, false),
        (Builtin::Mu3, Model::S3, true),
    ];
    for (b, model, on_order) in cases {
        let name = format!("absoluteness:{}", b.name());
        match CircSample::from_spec(model, &spec) {
            Ok(d) => {
                let x = if on_order { d.order_structure() } else { d.arrow_structure() };
                let (ok, data) = absoluteness(&b.formula(), &x, cfg.subsets, &mut rng);
                r.push(&name, ok, data);
            }
            Err(e) => r.push(&name, false, json!({"error": e.to_string()})),
        }
    }
    r
}
