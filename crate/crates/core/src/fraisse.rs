//! Isomorphism, back-and-forth games, ultrahomogeneity, enumeration up to
//! isomorphism and the hereditary, joint embedding and amalgamation
//! properties for small classes of finite structures.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::structure::{FinStructure, Kind, StructureJson};

/// A finite injective map between vertex sets of two structures, stored as
/// `(x-vertex, y-vertex)` pairs in the order they were added.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartialIso {
    pairs: Vec<(usize, usize)>,
}

impl PartialIso {
    pub fn empty() -> Self {
        PartialIso::default()
    }

    /// `None` unless the pairs form a partial isomorphism from `x` to `y`.
    pub fn new(x: &FinStructure, y: &FinStructure, pairs: Vec<(usize, usize)>) -> Option<Self> {
        let mut p = PartialIso::empty();
        for (v, w) in pairs {
            if v >= x.size() || w >= y.size() || !compatible(x, y, &p, v, w) {
                return None;
            }
            p.pairs.push((v, w));
        }
        Some(p)
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn get(&self, v: usize) -> Option<usize> {
        self.pairs.iter().find(|p| p.0 == v).map(|p| p.1)
    }

    pub fn in_domain(&self, v: usize) -> bool {
        self.pairs.iter().any(|p| p.0 == v)
    }

    pub fn in_range(&self, w: usize) -> bool {
        self.pairs.iter().any(|p| p.1 == w)
    }

    pub fn inverse(&self) -> PartialIso {
        PartialIso {
            pairs: self.pairs.iter().map(|&(a, b)| (b, a)).collect(),
        }
    }

    pub fn with(&self, v: usize, w: usize) -> PartialIso {
        let mut pairs = self.pairs.clone();
        pairs.push((v, w));
        PartialIso { pairs }
    }

    fn sorted_key(&self) -> Vec<(usize, usize)> {
        let mut k = self.pairs.clone();
        k.sort_unstable();
        k
    }

    /// True if the total map `perm` agrees with this one.
    pub fn extended_by(&self, perm: &[usize]) -> bool {
        self.pairs.iter().all(|&(a, b)| perm[a] == b)
    }
}

/// Whether `(v, w)` can be added to `p`.
fn compatible(x: &FinStructure, y: &FinStructure, p: &PartialIso, v: usize, w: usize) -> bool {
    if p.in_domain(v) || p.in_range(w) {
        return false;
    }
    if x.label(v) != y.label(w) || x.has(v, v) != y.has(w, w) {
        return false;
    }
    p.pairs
        .iter()
        .all(|&(a, b)| x.has(v, a) == y.has(w, b) && x.has(a, v) == y.has(b, w))
}

/// Per-vertex invariant used to prune candidate images.
fn vertex_invariant(x: &FinStructure, v: usize) -> (Option<usize>, bool, usize, usize) {
    let n = x.size();
    let out = (0..n).filter(|&u| u != v && x.has(v, u)).count();
    let inn = (0..n).filter(|&u| u != v && x.has(u, v)).count();
    (x.label(v), x.has(v, v), out, inn)
}

fn search_isos(
    x: &FinStructure,
    y: &FinStructure,
    inv_x: &[(Option<usize>, bool, usize, usize)],
    inv_y: &[(Option<usize>, bool, usize, usize)],
    p: &mut PartialIso,
    found: &mut dyn FnMut(&PartialIso) -> bool,
) -> bool {
    let v = p.len();
    if v == x.size() {
        return found(p);
    }
    for w in 0..y.size() {
        if inv_x[v] == inv_y[w] && compatible(x, y, p, v, w) {
            p.pairs.push((v, w));
            let stop = search_isos(x, y, inv_x, inv_y, p, found);
            p.pairs.pop();
            if stop {
                return true;
            }
        }
    }
    false
}

fn for_each_iso(x: &FinStructure, y: &FinStructure, found: &mut dyn FnMut(&PartialIso) -> bool) {
    if x.size() != y.size() || x.labels().is_some() != y.labels().is_some() {
        return;
    }
    let inv_x: Vec<_> = (0..x.size()).map(|v| vertex_invariant(x, v)).collect();
    let inv_y: Vec<_> = (0..y.size()).map(|v| vertex_invariant(y, v)).collect();
    let mut sx = inv_x.clone();
    let mut sy = inv_y.clone();
    sx.sort_unstable();
    sy.sort_unstable();
    if sx != sy {
        return;
    }
    search_isos(x, y, &inv_x, &inv_y, &mut PartialIso::empty(), found);
}

/// The lexicographically first isomorphism `x → y` as `image[v]`.
pub fn are_isomorphic(x: &FinStructure, y: &FinStructure) -> Option<Vec<usize>> {
    let mut out = None;
    for_each_iso(x, y, &mut |p| {
        out = Some(p.pairs.iter().map(|&(_, w)| w).collect());
        true
    });
    out
}

/// All isomorphisms `x → y`, in lexicographic order.
pub fn isomorphisms(x: &FinStructure, y: &FinStructure) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_iso(x, y, &mut |p| {
        out.push(p.pairs.iter().map(|&(_, w)| w).collect());
        false
    });
    out
}

pub fn automorphisms(x: &FinStructure) -> Vec<Vec<usize>> {
    isomorphisms(x, x)
}

/// `p ∪ {(v, w)}` for the least `w` that keeps it a partial isomorphism.
pub fn extend_partial_iso(x: &FinStructure, y: &FinStructure, p: &PartialIso, v: usize) -> Option<PartialIso> {
    if p.in_domain(v) || v >= x.size() {
        return None;
    }
    (0..y.size()).find(|&w| compatible(x, y, p, v, w)).map(|w| p.with(v, w))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Winner {
    Duplicator,
    Spoiler,
}

struct Game<'a> {
    x: &'a FinStructure,
    y: &'a FinStructure,
    // Candidate responses sorted by closeness of relative out-degree.
    reply_x_to_y: Vec<Vec<usize>>,
    reply_y_to_x: Vec<Vec<usize>>,
    memo: HashMap<(Vec<(usize, usize)>, usize), bool>,
}

type Profile = (Option<usize>, bool, Vec<(bool, bool)>);

impl<'a> Game<'a> {
    fn new(x: &'a FinStructure, y: &'a FinStructure) -> Self {
        Game {
            x,
            y,
            reply_x_to_y: replies(x, y),
            reply_y_to_x: replies(y, x),
            memo: HashMap::new(),
        }
    }

    fn profile(s: &FinStructure, v: usize, dom: &[usize]) -> Profile {
        (
            s.label(v),
            s.has(v, v),
            dom.iter().map(|&a| (s.has(v, a), s.has(a, v))).collect(),
        )
    }

    /// With one round left Duplicator wins iff both sides realise the same
    /// one-point types over the current map.
    fn last_round(&self, p: &PartialIso) -> bool {
        let dx: Vec<usize> = p.pairs.iter().map(|q| q.0).collect();
        let dy: Vec<usize> = p.pairs.iter().map(|q| q.1).collect();
        let tx: BTreeSet<Profile> = (0..self.x.size())
            .filter(|v| !dx.contains(v))
            .map(|v| Self::profile(self.x, v, &dx))
            .collect();
        let ty: BTreeSet<Profile> = (0..self.y.size())
            .filter(|w| !dy.contains(w))
            .map(|w| Self::profile(self.y, w, &dy))
            .collect();
        tx == ty
    }

    fn duplicator_wins(&mut self, p: &PartialIso, rounds: usize) -> bool {
        if rounds == 0 {
            return true;
        }
        if rounds == 1 {
            return self.last_round(p);
        }
        let key = (p.sorted_key(), rounds);
        if let Some(&w) = self.memo.get(&key) {
            return w;
        }
        let mut result = true;
        'spoiler: for v in 0..self.x.size() {
            if p.in_domain(v) {
                continue;
            }
            for i in 0..self.reply_x_to_y[v].len() {
                let w = self.reply_x_to_y[v][i];
                if compatible(self.x, self.y, p, v, w) && self.duplicator_wins(&p.with(v, w), rounds - 1) {
                    continue 'spoiler;
                }
            }
            result = false;
            break;
        }
        if result {
            'spoiler_y: for w in 0..self.y.size() {
                if p.in_range(w) {
                    continue;
                }
                for i in 0..self.reply_y_to_x[w].len() {
                    let v = self.reply_y_to_x[w][i];
                    if compatible(self.x, self.y, p, v, w) && self.duplicator_wins(&p.with(v, w), rounds - 1) {
                        continue 'spoiler_y;
                    }
                }
                result = false;
                break;
            }
        }
        self.memo.insert(key, result);
        result
    }
}

fn replies(from: &FinStructure, to: &FinStructure) -> Vec<Vec<usize>> {
    let (n, m) = (from.size(), to.size());
    let od_from = from.out_degrees();
    let od_to = to.out_degrees();
    (0..n)
        .map(|v| {
            let mut c: Vec<usize> = (0..m).collect();
            c.sort_by_key(|&w| ((od_from[v] * m.max(1)).abs_diff(od_to[w] * n.max(1)), w));
            c
        })
        .collect()
}

/// Exhaustive Ehrenfeucht–Fraïssé game with `rounds` rounds.
pub fn ef_game(x: &FinStructure, y: &FinStructure, rounds: usize) -> Winner {
    if Game::new(x, y).duplicator_wins(&PartialIso::empty(), rounds) {
        Winner::Duplicator
    } else {
        Winner::Spoiler
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UltrahomogeneityReport {
    pub holds: bool,
    pub automorphisms: usize,
    pub partial_isos_checked: usize,
    /// A partial isomorphism that no automorphism extends.
    pub counterexample: Option<PartialIso>,
}

/// Checks that every partial isomorphism between induced substructures of
/// `x` extends to an automorphism.
pub fn is_ultrahomogeneous(x: &FinStructure) -> UltrahomogeneityReport {
    let auts = automorphisms(x);
    let mut checked = 0;
    let mut counterexample = None;
    let mut queue = VecDeque::from([PartialIso::empty()]);
    // Breadth first, so a smallest counterexample is reported. Domains grow
    // as increasing sequences, so each map is visited once.
    while let Some(p) = queue.pop_front() {
        checked += 1;
        if !auts.iter().any(|a| p.extended_by(a)) {
            counterexample = Some(p);
            break;
        }
        let start = p.pairs.last().map_or(0, |q| q.0 + 1);
        for v in start..x.size() {
            for w in 0..x.size() {
                if compatible(x, x, &p, v, w) {
                    queue.push_back(p.with(v, w));
                }
            }
        }
    }
    UltrahomogeneityReport {
        holds: counterexample.is_none(),
        automorphisms: auts.len(),
        partial_isos_checked: checked,
        counterexample,
    }
}

/// Lexicographically least encoding over all vertex orders: labels first,
/// then the adjacency matrix row by row.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub size: usize,
    pub code: Vec<u8>,
}

/// Largest size accepted by the exhaustive canonical form.
pub const MAX_CANONICAL: usize = 8;

fn encode(x: &FinStructure, order: &[usize]) -> Vec<u8> {
    let n = order.len();
    let mut code = Vec::with_capacity(n * n + n);
    if let Some(l) = x.labels() {
        code.extend(order.iter().map(|&v| l[v] as u8 + 1));
    }
    for &u in order {
        for &v in order {
            code.push(x.has(u, v) as u8);
        }
    }
    code
}

/// Canonical form and a structure realising it.
pub fn canonical_form(x: &FinStructure) -> (CanonicalForm, FinStructure) {
    let n = x.size();
    assert!(n <= MAX_CANONICAL, "canonical form is exhaustive and limited to {MAX_CANONICAL} vertices");
    let mut order: Vec<usize> = (0..n).collect();
    let mut best: Option<(Vec<u8>, Vec<usize>)> = None;
    loop {
        let code = encode(x, &order);
        if best.as_ref().map_or(true, |b| code < b.0) {
            best = Some((code, order.clone()));
        }
        if !next_permutation(&mut order) {
            break;
        }
    }
    let (code, order) = best.expect("at least one ordering");
    // order[i] is the old vertex placed at position i.
    let mut perm = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        perm[v] = i;
    }
    (CanonicalForm { size: n, code }, x.permuted(&perm))
}

pub(crate) fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("enumeration needs 1 <= n <= {max}, got {n}")]
    Size { n: usize, max: usize },
    #[error("enumeration supports graphs and tournaments, not {0:?}")]
    Kind(Kind),
}

/// Largest size accepted by [`enumerate_up_to_iso`].
pub const MAX_ENUMERATE: usize = 6;

/// One representative per isomorphism class, in canonical-form order.
pub fn enumerate_up_to_iso(n: usize, kind: Kind) -> Result<Vec<FinStructure>, EnumerateError> {
    if n == 0 || n > MAX_ENUMERATE {
        return Err(EnumerateError::Size { n, max: MAX_ENUMERATE });
    }
    if !matches!(kind, Kind::Graph | Kind::Tournament) {
        return Err(EnumerateError::Kind(kind));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut seen: BTreeMap<CanonicalForm, FinStructure> = BTreeMap::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut arrows = Vec::new();
        for (i, &(u, v)) in pairs.iter().enumerate() {
            let bit = mask >> i & 1 == 1;
            match kind {
                Kind::Tournament => arrows.push(if bit { (v, u) } else { (u, v) }),
                _ if bit => {
                    arrows.push((u, v));
                    arrows.push((v, u));
                }
                _ => {}
            }
        }
        let x = FinStructure::new(n, arrows, None).expect("in range");
        let (form, canon) = canonical_form(&x);
        seen.entry(form).or_insert(canon);
    }
    Ok(seen.into_values().collect())
}

/// A class of finite structures closed under isomorphism.
#[derive(Clone, Debug)]
pub enum StructureClass {
    /// Every finite structure of the kind.
    AllOf(Kind),
    /// The isomorphism closure of a list.
    Listed(Listed),
}

#[derive(Clone, Debug)]
pub struct Listed {
    members: BTreeMap<CanonicalForm, FinStructure>,
}

impl StructureClass {
    pub fn listed(members: Vec<FinStructure>) -> Self {
        StructureClass::Listed(Listed {
            members: members.iter().map(canonical_form).collect(),
        })
    }

    pub fn contains(&self, x: &FinStructure) -> bool {
        match self {
            StructureClass::AllOf(kind) => {
                let flags = x.flags();
                x.labels().is_none()
                    && match kind {
                        Kind::Tournament => flags.is_tournament(),
                        Kind::Graph => flags.is_graph(),
                        Kind::Digraph => flags.is_digraph(),
                        Kind::Other => true,
                    }
            }
            StructureClass::Listed(list) => {
                if !list.members.keys().any(|f| f.size == x.size()) {
                    return false;
                }
                if x.size() > MAX_CANONICAL {
                    return list.members.values().any(|m| are_isomorphic(m, x).is_some());
                }
                list.members.contains_key(&canonical_form(x).0)
            }
        }
    }

    /// Representatives of the members of size `n`, up to isomorphism.
    pub fn members(&self, n: usize) -> Vec<FinStructure> {
        match self {
            StructureClass::AllOf(kind) => enumerate_up_to_iso(n, *kind).unwrap_or_default(),
            StructureClass::Listed(list) => list
                .members
                .iter()
                .filter(|(f, _)| f.size == n)
                .map(|(_, m)| m.clone())
                .collect(),
        }
    }

    /// Relation states `(u→v, v→u)` worth trying on a free pair.
    fn pair_states(&self) -> &'static [(bool, bool)] {
        const ALL: [(bool, bool); 4] = [(false, false), (true, false), (false, true), (true, true)];
        match self {
            StructureClass::AllOf(Kind::Tournament) => &ALL[1..3],
            StructureClass::AllOf(Kind::Graph) => &[(false, false), (true, true)],
            StructureClass::AllOf(Kind::Digraph) => &ALL[..3],
            _ => &ALL,
        }
    }
}

/// Base `a` with embeddings `f: a → b` and `g: a → c` given as image lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmalgamInstance {
    pub a: StructureJson,
    pub b: StructureJson,
    pub c: StructureJson,
    pub f: Vec<usize>,
    pub g: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HpFailure {
    pub structure: StructureJson,
    pub subset: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport<F> {
    pub checked: usize,
    pub passed: bool,
    pub failure: Option<F>,
}

impl<F> PropertyReport<F> {
    fn new() -> Self {
        PropertyReport {
            checked: 0,
            passed: true,
            failure: None,
        }
    }

    fn fail(&mut self, f: F) {
        self.passed = false;
        self.failure = Some(f);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub max_size: usize,
    pub members: Vec<usize>,
    pub hp: PropertyReport<HpFailure>,
    pub jep: PropertyReport<AmalgamInstance>,
    pub ap: PropertyReport<AmalgamInstance>,
    pub passed: bool,
}

/// All embeddings of `a` into `b`, as image lists.
pub fn embeddings(a: &FinStructure, b: &FinStructure) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack = vec![PartialIso::empty()];
    while let Some(p) = stack.pop() {
        if p.len() == a.size() {
            out.push(p.pairs.iter().map(|q| q.1).collect());
            continue;
        }
        let v = p.len();
        for w in (0..b.size()).rev() {
            if compatible(a, b, &p, v, w) {
                stack.push(p.with(v, w));
            }
        }
    }
    out
}

/// Looks for `d` in `class` with embeddings of `b` and `c` agreeing on `a`.
/// `d` lives on `b`'s vertices followed by the vertices of `c` outside
/// `g[a]`; some of those may be identified with vertices of `b` outside
/// `f[a]`, trying no identifications first.
pub fn find_amalgam(
    class: &StructureClass,
    b: &FinStructure,
    c: &FinStructure,
    f: &[usize],
    g: &[usize],
) -> Option<FinStructure> {
    let b_free: Vec<usize> = (0..b.size()).filter(|v| !f.contains(v)).collect();
    let c_free: Vec<usize> = (0..c.size()).filter(|v| !g.contains(v)).collect();
    let max_ident = b_free.len().min(c_free.len());
    for idents in 0..=max_ident {
        let mut found = None;
        for_each_partial_injection(&c_free, &b_free, idents, &mut |glue| {
            found = amalgam_with(class, b, c, f, g, &c_free, glue);
            found.is_some()
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Calls `visit` with every injective partial map of exactly `k` pairs from
/// `from` into `to`, as `(from, to)` pairs with increasing `from`.
fn for_each_partial_injection(
    from: &[usize],
    to: &[usize],
    k: usize,
    visit: &mut dyn FnMut(&[(usize, usize)]) -> bool,
) {
    fn go(
        from: &[usize],
        to: &[usize],
        k: usize,
        start: usize,
        acc: &mut Vec<(usize, usize)>,
        visit: &mut dyn FnMut(&[(usize, usize)]) -> bool,
    ) -> bool {
        if acc.len() == k {
            return visit(acc);
        }
        for i in start..from.len() {
            for &t in to {
                if acc.iter().any(|p| p.1 == t) {
                    continue;
                }
                acc.push((from[i], t));
                if go(from, to, k, i + 1, acc, visit) {
                    return true;
                }
                acc.pop();
            }
        }
        false
    }
    go(from, to, k, 0, &mut Vec::new(), visit);
}

fn amalgam_with(
    class: &StructureClass,
    b: &FinStructure,
    c: &FinStructure,
    f: &[usize],
    g: &[usize],
    c_free: &[usize],
    glue: &[(usize, usize)],
) -> Option<FinStructure> {
    // Position of every c-vertex inside d.
    let mut c_to_d = vec![usize::MAX; c.size()];
    for (i, &gv) in g.iter().enumerate() {
        c_to_d[gv] = f[i];
    }
    for &(cv, bv) in glue {
        c_to_d[cv] = bv;
    }
    let mut size = b.size();
    for &cv in c_free {
        if c_to_d[cv] == usize::MAX {
            c_to_d[cv] = size;
            size += 1;
        }
    }
    // Fixed relation where a pair lies inside b or inside the image of c.
    let mut fixed: Vec<Option<bool>> = vec![None; size * size];
    let mut labels: Vec<Option<usize>> = vec![None; size];
    for u in 0..b.size() {
        labels[u] = b.label(u);
        for v in 0..b.size() {
            fixed[u * size + v] = Some(b.has(u, v));
        }
    }
    for u in 0..c.size() {
        let du = c_to_d[u];
        if let Some(prev) = labels[du] {
            if Some(prev) != c.label(u) {
                return None;
            }
        }
        labels[du] = c.label(u);
        for v in 0..c.size() {
            let dv = c_to_d[v];
            let slot = &mut fixed[du * size + dv];
            match *slot {
                Some(old) if old != c.has(u, v) => return None,
                _ => *slot = Some(c.has(u, v)),
            }
        }
    }
    if let StructureClass::Listed(list) = class {
        if !list.members.keys().any(|f| f.size == size) {
            return None;
        }
    }
    let free: Vec<(usize, usize)> = (0..size)
        .flat_map(|u| (u + 1..size).map(move |v| (u, v)))
        .filter(|&(u, v)| fixed[u * size + v].is_none())
        .collect();
    let states = class.pair_states();
    let labels: Option<Vec<usize>> = if b.labels().is_some() {
        Some(labels.into_iter().map(|l| l.unwrap_or(0)).collect())
    } else {
        None
    };
    let mut choice = vec![0usize; free.len()];
    loop {
        let mut rel = fixed.clone();
        for (i, &(u, v)) in free.iter().enumerate() {
            let (fw, bw) = states[choice[i]];
            rel[u * size + v] = Some(fw);
            rel[v * size + u] = Some(bw);
        }
        let mut d = FinStructure::from_fn(size, |u, v| rel[u * size + v].unwrap_or(false));
        if let Some(l) = &labels {
            d = d.with_labels(l.clone()).expect("sized");
        }
        if class.contains(&d) {
            return Some(d);
        }
        // Odometer over the free pairs.
        let mut i = 0;
        loop {
            if i == choice.len() {
                return None;
            }
            choice[i] += 1;
            if choice[i] < states.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// HP, JEP and AP for the members of size at most `max_size`. Proper
/// subsets are tried from the largest down, so an HP failure names the
/// biggest missing substructure first.
pub fn check_class_properties(class: &StructureClass, max_size: usize) -> ClassReport {
    let by_size: Vec<Vec<FinStructure>> = (0..=max_size)
        .map(|n| if n == 0 { Vec::new() } else { class.members(n) })
        .collect();
    let all: Vec<&FinStructure> = by_size.iter().flatten().collect();

    let mut hp = PropertyReport::new();
    'hp: for x in &all {
        for k in (1..x.size()).rev() {
            for s in subsets_of_size(x.size(), k) {
                hp.checked += 1;
                let (sub, _) = x.induced(&s).expect("in range");
                if !class.contains(&sub) {
                    hp.fail(HpFailure {
                        structure: x.to_json(),
                        subset: s,
                    });
                    break 'hp;
                }
            }
        }
    }

    let empty = FinStructure::edgeless(0);
    let mut jep = PropertyReport::new();
    'jep: for b in &all {
        for c in &all {
            jep.checked += 1;
            if find_amalgam(class, b, c, &[], &[]).is_none() {
                jep.fail(AmalgamInstance {
                    a: empty.to_json(),
                    b: b.to_json(),
                    c: c.to_json(),
                    f: vec![],
                    g: vec![],
                });
                break 'jep;
            }
        }
    }

    let mut ap = PropertyReport::new();
    'ap: for a in &all {
        for b in all.iter().filter(|b| b.size() >= a.size()) {
            let fs = embeddings(a, b);
            if fs.is_empty() {
                continue;
            }
            for c in all.iter().filter(|c| c.size() >= a.size()) {
                let gs = embeddings(a, c);
                for f in &fs {
                    for g in &gs {
                        ap.checked += 1;
                        if find_amalgam(class, b, c, f, g).is_none() {
                            ap.fail(AmalgamInstance {
                                a: a.to_json(),
                                b: b.to_json(),
                                c: c.to_json(),
                                f: f.clone(),
                                g: g.clone(),
                            });
                            break 'ap;
                        }
                    }
                }
            }
        }
    }

    ClassReport {
        max_size,
        members: by_size.iter().skip(1).map(Vec::len).collect(),
        passed: hp.passed && jep.passed && ap.passed,
        hp,
        jep,
        ap,
    }
}
