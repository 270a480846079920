//! Presentations of the Rado graph and the random tournament on ω, the
//! definable transfer between them, and extension-property witness search.
//!
//! A presentation is a deterministic pair oracle on the natural numbers.
//! The transfer is
//!
//! ```text
//! m → n  ⟺  (m < n ∧ m ∼ n) ∨ (m > n ∧ m ≁ n)
//! ```
//!
//! and its inverse `m ∼ n ⟺ (m < n ∧ m → n) ∨ (m > n ∧ n → m)`.

use std::fmt;
use std::str::FromStr;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::structure::FinStructure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PresentationKind {
    Graph,
    Tournament,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("expected a {expected:?} presentation, got a {got:?}")]
    KindMismatch {
        expected: PresentationKind,
        got: PresentationKind,
    },
    #[error("the pair oracle is undefined on the diagonal ({0}, {0})")]
    SameVertex(u64),
    #[error("bad presentation descriptor `{0}`")]
    Descriptor(String),
}

/// `i ∼ j` for `i < j` iff bit `i` of `j` is set.
pub fn rado_bit(m: u64, n: u64) -> Result<bool, PresentationError> {
    if m == n {
        return Err(PresentationError::SameVertex(m));
    }
    let (i, j) = (m.min(n), m.max(n));
    Ok(i < 64 && (j >> i) & 1 == 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Source {
    Bit,
    Seeded(u64),
    Transfer(Box<Presentation>),
}

/// A countable graph or tournament on ω given by a pair oracle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    kind: PresentationKind,
    source: Source,
}

impl Presentation {
    /// The bit-predicate Rado graph.
    pub fn bit() -> Self {
        Presentation {
            kind: PresentationKind::Graph,
            source: Source::Bit,
        }
    }

    /// Each pair is an edge (graphs) or points upward (tournaments) with
    /// probability 1/2, decided by a ChaCha stream keyed by `(seed, pair)`.
    pub fn seeded(seed: u64, kind: PresentationKind) -> Self {
        Presentation {
            kind,
            source: Source::Seeded(seed),
        }
    }

    pub fn kind(&self) -> PresentationKind {
        self.kind
    }

    /// Transfer in whichever direction applies to this presentation's kind.
    pub fn transfer(&self) -> Self {
        let kind = match self.kind {
            PresentationKind::Graph => PresentationKind::Tournament,
            PresentationKind::Tournament => PresentationKind::Graph,
        };
        Presentation {
            kind,
            source: Source::Transfer(Box::new(self.clone())),
        }
    }

    pub fn graph_to_tournament(g: &Presentation) -> Result<Presentation, PresentationError> {
        g.expect_kind(PresentationKind::Graph)?;
        Ok(g.transfer())
    }

    pub fn tournament_to_graph(t: &Presentation) -> Result<Presentation, PresentationError> {
        t.expect_kind(PresentationKind::Tournament)?;
        Ok(t.transfer())
    }

    fn expect_kind(&self, expected: PresentationKind) -> Result<(), PresentationError> {
        if self.kind == expected {
            Ok(())
        } else {
            Err(PresentationError::KindMismatch {
                expected,
                got: self.kind,
            })
        }
    }

    /// `m ∼ n` for graphs, `m → n` for tournaments; false on the diagonal.
    pub fn related(&self, m: u64, n: u64) -> bool {
        if m == n {
            return false;
        }
        match &self.source {
            Source::Bit => rado_bit(m, n).unwrap_or(false),
            Source::Seeded(seed) => {
                let (i, j) = (m.min(n), m.max(n));
                let bit = seeded_bit(*seed, i, j);
                match self.kind {
                    PresentationKind::Graph => bit,
                    PresentationKind::Tournament => bit == (m < n),
                }
            }
            Source::Transfer(inner) => match self.kind {
                // Graph → tournament.
                PresentationKind::Tournament => {
                    let adjacent = inner.related(m, n);
                    (m < n && adjacent) || (m > n && !adjacent)
                }
                // Tournament → graph.
                PresentationKind::Graph => {
                    if m < n {
                        inner.related(m, n)
                    } else {
                        inner.related(n, m)
                    }
                }
            },
        }
    }

    /// The induced finite structure on `{0, …, n}`.
    pub fn prefix(&self, n: usize) -> FinStructure {
        FinStructure::from_fn(n + 1, |u, v| self.related(u as u64, v as u64))
    }

    /// Whether `v` lies in `G^H_K` (graphs) or `T^H_K` (tournaments).
    pub fn in_extension_set(&self, v: u64, h: &[u64], k: &[u64]) -> bool {
        if h.contains(&v) {
            return false;
        }
        h.iter().all(|&x| {
            let positive = k.contains(&x);
            match self.kind {
                PresentationKind::Graph => self.related(v, x) == positive,
                PresentationKind::Tournament => {
                    if positive {
                        self.related(x, v)
                    } else {
                        self.related(v, x)
                    }
                }
            }
        })
    }
}

fn seeded_bit(seed: u64, i: u64, j: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Unique index of the pair i < j.
    let key = (j as u128 * (j as u128).saturating_sub(1) / 2 + i as u128) as u64;
    rng.set_stream(key);
    rng.next_u32() & 1 == 1
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.source {
            Source::Bit => f.write_str("bit"),
            Source::Seeded(seed) => match self.kind {
                PresentationKind::Graph => write!(f, "rand:{seed}"),
                PresentationKind::Tournament => write!(f, "rand:{seed}:tournament"),
            },
            Source::Transfer(inner) => write!(f, "transfer({inner})"),
        }
    }
}

impl FromStr for Presentation {
    type Err = PresentationError;

    /// `bit`, `rand:<seed>`, `rand:<seed>:tournament`, `transfer(<desc>)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || PresentationError::Descriptor(s.to_string());
        if s == "bit" {
            return Ok(Presentation::bit());
        }
        if let Some(rest) = s.strip_prefix("transfer(").and_then(|r| r.strip_suffix(')')) {
            return Ok(rest.parse::<Presentation>()?.transfer());
        }
        if let Some(rest) = s.strip_prefix("rand:") {
            let (seed, kind) = match rest.split_once(':') {
                Some((seed, "tournament")) => (seed, PresentationKind::Tournament),
                Some((seed, "graph")) => (seed, PresentationKind::Graph),
                Some(_) => return Err(bad()),
                None => (rest, PresentationKind::Graph),
            };
            let seed = seed.parse().map_err(|_| bad())?;
            return Ok(Presentation::seeded(seed, kind));
        }
        Err(bad())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QueryError {
    #[error("K must be a subset of H")]
    NotSubset,
    #[error("budget {budget} is below max H = {max_h}")]
    BudgetTooSmall { budget: u64, max_h: u64 },
}

/// Search for a vertex in `G^H_K` / `T^H_K` among `0..=budget`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessQuery {
    pub h: Vec<u64>,
    pub k: Vec<u64>,
    pub budget: u64,
    /// Require the witness to exceed every element of H.
    pub high: bool,
}

impl WitnessQuery {
    pub fn new(h: &[u64], k: &[u64], budget: u64, high: bool) -> Result<Self, QueryError> {
        let mut h = h.to_vec();
        h.sort_unstable();
        h.dedup();
        let mut k = k.to_vec();
        k.sort_unstable();
        k.dedup();
        if !k.iter().all(|x| h.contains(x)) {
            return Err(QueryError::NotSubset);
        }
        if let Some(&max_h) = h.last() {
            if budget < max_h {
                return Err(QueryError::BudgetTooSmall { budget, max_h });
            }
        }
        Ok(WitnessQuery { h, k, budget, high })
    }

    /// `2^(max H + 2)`, enough for the closed-form bit-graph witness.
    pub fn default_budget(h: &[u64]) -> u64 {
        let top = h.iter().max().map_or(0, |&m| m + 2);
        1u64 << top.min(62)
    }

    fn start(&self) -> u64 {
        match (self.high, self.h.last()) {
            (true, Some(&m)) => m + 1,
            _ => 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Witness(u64),
    Absent(bool),
}

/// JSON form `{query, witness | absent, budget, scanned}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub query: WitnessQuery,
    #[serde(flatten)]
    pub outcome: Outcome,
    pub budget: u64,
    /// Number of candidate vertices examined.
    pub scanned: u64,
}

impl WitnessReport {
    pub fn witness(&self) -> Option<u64> {
        match self.outcome {
            Outcome::Witness(v) => Some(v),
            Outcome::Absent(_) => None,
        }
    }
}

/// The least witness in increasing vertex order, or a certified absence
/// below the budget.
pub fn find_witness(p: &Presentation, q: &WitnessQuery) -> WitnessReport {
    let mut scanned = 0;
    for v in q.start()..=q.budget {
        scanned += 1;
        if p.in_extension_set(v, &q.h, &q.k) {
            return WitnessReport {
                query: q.clone(),
                outcome: Outcome::Witness(v),
                budget: q.budget,
                scanned,
            };
        }
    }
    WitnessReport {
        query: q.clone(),
        outcome: Outcome::Absent(true),
        budget: q.budget,
        scanned,
    }
}

/// Up to `count` witnesses in increasing order.
pub fn find_witnesses(p: &Presentation, q: &WitnessQuery, count: usize) -> Vec<u64> {
    (q.start()..=q.budget)
        .filter(|&v| p.in_extension_set(v, &q.h, &q.k))
        .take(count)
        .collect()
}

/// All subsets of `universe` with at most `max` elements, by size then
/// lexicographically.
pub fn subsets_up_to(universe: &[u64], max: usize) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for size in 1..=max.min(universe.len()) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            out.push(idx.iter().map(|&i| universe[i]).collect());
            let mut i = size;
            while i > 0 && idx[i - 1] == universe.len() - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    out
}

/// All subsets of `h`, smallest first.
pub fn all_subsets(h: &[u64]) -> Vec<Vec<u64>> {
    subsets_up_to(h, h.len())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionEntry {
    pub h: Vec<u64>,
    pub k: Vec<u64>,
    pub witnesses: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionReport {
    pub presentation: String,
    pub max_h: usize,
    pub universe: Vec<u64>,
    pub budget: u64,
    pub witnesses_required: usize,
    pub queries: usize,
    pub failures: Vec<ExtensionEntry>,
    pub entries: Vec<ExtensionEntry>,
    pub passed: bool,
}

/// Runs the witness search for every `K ⊆ H ⊆ universe` with
/// `|H| ≤ max_h`, requiring `required` distinct witnesses each.
pub fn check_extension_property(
    p: &Presentation,
    max_h: usize,
    universe: &[u64],
    budget: u64,
    required: usize,
) -> ExtensionReport {
    let mut entries = Vec::new();
    let mut failures = Vec::new();
    for h in subsets_up_to(universe, max_h) {
        for k in all_subsets(&h) {
            let q = WitnessQuery {
                h: h.clone(),
                k: k.clone(),
                budget,
                high: false,
            };
            let witnesses = find_witnesses(p, &q, required);
            let entry = ExtensionEntry { h: h.clone(), k, witnesses };
            if entry.witnesses.len() < required {
                failures.push(entry.clone());
            }
            entries.push(entry);
        }
    }
    ExtensionReport {
        presentation: p.to_string(),
        max_h,
        universe: universe.to_vec(),
        budget,
        witnesses_required: required,
        queries: entries.len(),
        passed: failures.is_empty(),
        failures,
        entries,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransferViolation {
    pub h: Vec<u64>,
    pub k: Vec<u64>,
    pub v: u64,
    pub in_graph: bool,
    pub in_tournament: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransferReport {
    pub graph: String,
    pub tournament: String,
    pub max_h: usize,
    pub universe: Vec<u64>,
    pub max_v: u64,
    pub queries: usize,
    pub comparisons: u64,
    /// Least high witness per query, identical for both structures when the
    /// invariant holds.
    pub witnesses: Vec<ExtensionEntry>,
    pub violations: Vec<TransferViolation>,
    pub passed: bool,
}

/// For every `K ⊆ H ⊆ universe` with `|H| ≤ max_h` and every `v` with
/// `max H < v ≤ max_v`, compares `v ∈ G^H_K` with `v ∈ T^H_K` where `T` is
/// the transfer of `G`.
pub fn transfer_invariant(g: &Presentation, max_h: usize, universe: &[u64], max_v: u64) -> Result<TransferReport, PresentationError> {
    let t = Presentation::graph_to_tournament(g)?;
    let mut violations = Vec::new();
    let mut witnesses = Vec::new();
    let mut comparisons = 0u64;
    let mut queries = 0;
    for h in subsets_up_to(universe, max_h) {
        let start = h.last().map_or(0, |&m| m + 1);
        for k in all_subsets(&h) {
            queries += 1;
            let mut first = None;
            for v in start..=max_v {
                comparisons += 1;
                let in_graph = g.in_extension_set(v, &h, &k);
                let in_tournament = t.in_extension_set(v, &h, &k);
                if in_graph != in_tournament {
                    violations.push(TransferViolation {
                        h: h.clone(),
                        k: k.clone(),
                        v,
                        in_graph,
                        in_tournament,
                    });
                }
                if in_graph && first.is_none() {
                    first = Some(v);
                }
            }
            witnesses.push(ExtensionEntry {
                h: h.clone(),
                k,
                witnesses: first.into_iter().collect(),
            });
        }
    }
    Ok(TransferReport {
        graph: g.to_string(),
        tournament: t.to_string(),
        max_h,
        universe: universe.to_vec(),
        max_v,
        queries,
        comparisons,
        witnesses,
        passed: violations.is_empty(),
        violations,
    })
}

/// First pair below `bound` where `tournament_to_graph(graph_to_tournament(g))`
/// and `g` disagree.
pub fn round_trip_mismatch(g: &Presentation, bound: u64) -> Result<Option<(u64, u64)>, PresentationError> {
    let back = Presentation::tournament_to_graph(&Presentation::graph_to_tournament(g)?)?;
    for m in 0..bound {
        for n in 0..bound {
            if m != n && back.related(m, n) != g.related(m, n) {
                return Ok(Some((m, n)));
            }
        }
    }
    Ok(None)
}

/// Extends the finite partial isomorphism `phi` of `p` by `v ↦ w`, taking `w`
/// as the least extension-set witness for `H = range φ`,
/// `K = φ[{k : k → v}]` (or `k ∼ v` for graphs).
pub fn extend_by_witness(p: &Presentation, phi: &[(u64, u64)], v: u64, budget: u64) -> Option<u64> {
    if let Some(&(_, w)) = phi.iter().find(|&&(d, _)| d == v) {
        return Some(w);
    }
    let h: Vec<u64> = phi.iter().map(|&(_, r)| r).collect();
    let k: Vec<u64> = phi
        .iter()
        .filter(|&&(d, _)| p.related(d, v))
        .map(|&(_, r)| r)
        .collect();
    let budget = budget.max(h.iter().copied().max().unwrap_or(0));
    let q = WitnessQuery::new(&h, &k, budget, false).ok()?;
    find_witness(p, &q).witness()
}
