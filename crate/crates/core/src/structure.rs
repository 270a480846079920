//! Finite relational structures with one binary relation and an optional
//! unary label partition, plus the constructions used on them: induced
//! substructures, wreath products and the unrelatedness relation.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("vertex {vertex} out of range for a structure of size {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("label list has length {got}, expected {n}")]
    LabelLength { got: usize, n: usize },
    #[error("wreath products take label-free digraphs")]
    Labeled,
    #[error("wreath products take digraphs; got a {0:?}")]
    NotDigraph(Kind),
    #[error("duplicate name `{0}` in signature")]
    DuplicateName(String),
}

/// A relational language with one binary symbol and ordered unary labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub binary: String,
    pub labels: Vec<String>,
}

impl Signature {
    pub fn new(binary: impl Into<String>, labels: Vec<String>) -> Result<Self, StructureError> {
        let binary = binary.into();
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(binary.clone());
        for l in &labels {
            if !seen.insert(l.clone()) {
                return Err(StructureError::DuplicateName(l.clone()));
            }
        }
        Ok(Signature { binary, labels })
    }

    /// `⟨R⟩`.
    pub fn plain() -> Self {
        Signature {
            binary: "R".into(),
            labels: Vec::new(),
        }
    }

    /// `⟨R, a, b, …⟩` with `n` labels named by consecutive letters.
    pub fn lettered(n: usize) -> Self {
        assert!(n <= 26);
        Signature {
            binary: "R".into(),
            labels: (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect(),
        }
    }

    pub fn label_index(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == name)
    }
}

/// Strongest structural kind of a binary relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Tournament,
    Graph,
    Digraph,
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct KindFlags {
    pub irreflexive: bool,
    pub symmetric: bool,
    pub asymmetric: bool,
    pub total: bool,
}

impl KindFlags {
    pub fn is_graph(&self) -> bool {
        self.irreflexive && self.symmetric
    }

    pub fn is_digraph(&self) -> bool {
        self.irreflexive && self.asymmetric
    }

    pub fn is_tournament(&self) -> bool {
        self.is_digraph() && self.total
    }

    pub fn kind(&self) -> Kind {
        if self.is_tournament() {
            Kind::Tournament
        } else if self.is_graph() {
            Kind::Graph
        } else if self.is_digraph() {
            Kind::Digraph
        } else {
            Kind::Other
        }
    }
}

/// A finite structure on the universe `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinStructure {
    n: usize,
    rel: Vec<bool>,
    labels: Option<Vec<usize>>,
}

impl FinStructure {
    pub fn new(
        n: usize,
        arrows: impl IntoIterator<Item = (usize, usize)>,
        labels: Option<Vec<usize>>,
    ) -> Result<Self, StructureError> {
        let mut rel = vec![false; n * n];
        for (u, v) in arrows {
            for w in [u, v] {
                if w >= n {
                    return Err(StructureError::VertexOutOfRange { vertex: w, n });
                }
            }
            rel[u * n + v] = true;
        }
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(StructureError::LabelLength { got: l.len(), n });
            }
        }
        Ok(FinStructure { n, rel, labels })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut rel = vec![false; n * n];
        for u in 0..n {
            for v in 0..n {
                rel[u * n + v] = f(u, v);
            }
        }
        FinStructure { n, rel, labels: None }
    }

    pub fn with_labels(mut self, labels: Vec<usize>) -> Result<Self, StructureError> {
        if labels.len() != self.n {
            return Err(StructureError::LabelLength {
                got: labels.len(),
                n: self.n,
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    /// `I_n`: n vertices, no arrows.
    pub fn edgeless(n: usize) -> Self {
        FinStructure::from_fn(n, |_, _| false)
    }

    /// The transitive tournament `0 → 1 → … → n−1`.
    pub fn chain(n: usize) -> Self {
        FinStructure::from_fn(n, |u, v| u < v)
    }

    /// The oriented triangle `0 → 1 → 2 → 0`.
    pub fn cycle3() -> Self {
        FinStructure::from_fn(3, |u, v| (u + 1) % 3 == v)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn has(&self, u: usize, v: usize) -> bool {
        self.rel[u * self.n + v]
    }

    pub fn labels(&self) -> Option<&[usize]> {
        self.labels.as_deref()
    }

    pub fn label(&self, u: usize) -> Option<usize> {
        self.labels.as_ref().map(|l| l[u])
    }

    pub fn arrows(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in 0..self.n {
                if self.has(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn arrow_count(&self) -> usize {
        self.rel.iter().filter(|&&b| b).count()
    }

    pub fn flags(&self) -> KindFlags {
        let mut f = KindFlags {
            irreflexive: true,
            symmetric: true,
            asymmetric: true,
            total: true,
        };
        for u in 0..self.n {
            if self.has(u, u) {
                f.irreflexive = false;
            }
            for v in 0..self.n {
                if u == v {
                    continue;
                }
                let (a, b) = (self.has(u, v), self.has(v, u));
                if a != b {
                    f.symmetric = false;
                }
                if a && b {
                    f.asymmetric = false;
                }
                if !a && !b {
                    f.total = false;
                }
            }
        }
        f
    }

    pub fn classify(&self) -> Kind {
        self.flags().kind()
    }

    /// Out-degrees, the score sequence for tournaments.
    pub fn out_degrees(&self) -> Vec<usize> {
        (0..self.n)
            .map(|u| (0..self.n).filter(|&v| self.has(u, v)).count())
            .collect()
    }

    /// Restriction to `subset`, renumbered in increasing vertex order.
    /// Returns the substructure and the map from new to old vertices.
    pub fn induced(&self, subset: &[usize]) -> Result<(FinStructure, Vec<usize>), StructureError> {
        let mut keep: Vec<usize> = subset.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if let Some(&bad) = keep.iter().find(|&&v| v >= self.n) {
            return Err(StructureError::VertexOutOfRange {
                vertex: bad,
                n: self.n,
            });
        }
        let m = keep.len();
        let mut rel = vec![false; m * m];
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate() {
                rel[i * m + j] = self.has(u, v);
            }
        }
        let labels = self
            .labels
            .as_ref()
            .map(|l| keep.iter().map(|&v| l[v]).collect());
        Ok((FinStructure { n: m, rel, labels }, keep))
    }

    /// Image under a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> FinStructure {
        assert_eq!(perm.len(), self.n);
        let mut rel = vec![false; self.n * self.n];
        for u in 0..self.n {
            for v in 0..self.n {
                rel[perm[u] * self.n + perm[v]] = self.has(u, v);
            }
        }
        let labels = self.labels.as_ref().map(|l| {
            let mut out = vec![0; self.n];
            for v in 0..self.n {
                out[perm[v]] = l[v];
            }
            out
        });
        FinStructure {
            n: self.n,
            rel,
            labels,
        }
    }

    /// Unordered pairs `{u, v}`, `u < v`, with no arrow either way.
    pub fn unrelated_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has(u, v) && !self.has(v, u) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Same structure with its relation replaced.
    pub fn with_relation(&self, mut f: impl FnMut(usize, usize) -> bool) -> FinStructure {
        let mut out = FinStructure::from_fn(self.n, &mut f);
        out.labels = self.labels.clone();
        out
    }

    /// Graphviz text. Symmetric irreflexive relations with at least one edge
    /// are drawn as undirected graphs, everything else as a digraph.
    pub fn to_dot(&self, name: &str) -> String {
        let undirected = self.classify() == Kind::Graph && self.arrow_count() > 0;
        let mut out = String::new();
        let (kw, edge) = if undirected { ("graph", "--") } else { ("digraph", "->") };
        let _ = writeln!(out, "{kw} {name} {{");
        for v in 0..self.n {
            match self.label(v) {
                Some(l) => {
                    let _ = writeln!(out, "  {v} [label=\"{v}:{}\"];", label_letter(l));
                }
                None => {
                    let _ = writeln!(out, "  {v};");
                }
            }
        }
        for (u, v) in self.arrows() {
            if undirected && u > v {
                continue;
            }
            let _ = writeln!(out, "  {u} {edge} {v};");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> StructureJson {
        StructureJson {
            n: self.n,
            arrows: self.arrows().into_iter().map(|(u, v)| [u, v]).collect(),
            labels: self.labels.clone(),
        }
    }
}

pub(crate) fn label_letter(l: usize) -> char {
    if l < 26 {
        (b'A' + l as u8) as char
    } else {
        '?'
    }
}

/// Wire form `{n, arrows: [[u, v], …], labels: [l₀, …] | null}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureJson {
    pub n: usize,
    pub arrows: Vec<[usize; 2]>,
    #[serde(default)]
    pub labels: Option<Vec<usize>>,
}

impl TryFrom<StructureJson> for FinStructure {
    type Error = StructureError;
    fn try_from(j: StructureJson) -> Result<Self, Self::Error> {
        FinStructure::new(j.n, j.arrows.into_iter().map(|[u, v]| (u, v)), j.labels)
    }
}

impl From<&FinStructure> for StructureJson {
    fn from(s: &FinStructure) -> Self {
        s.to_json()
    }
}

impl Serialize for FinStructure {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FinStructure {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let j = StructureJson::deserialize(deserializer)?;
        FinStructure::try_from(j).map_err(serde::de::Error::custom)
    }
}

/// `outer[inner]`: every vertex of `outer` replaced by a copy of `inner`.
///
/// Vertex `(t, i)` is numbered `t·|inner| + i`, so blocks are contiguous.
/// `(t₁,i₁) → (t₂,i₂)` iff `t₁ → t₂`, or `t₁ = t₂` and `i₁ → i₂`.
pub fn wreath(outer: &FinStructure, inner: &FinStructure) -> Result<FinStructure, StructureError> {
    for s in [outer, inner] {
        if s.labels.is_some() {
            return Err(StructureError::Labeled);
        }
        let kind = s.classify();
        if !s.flags().is_digraph() {
            return Err(StructureError::NotDigraph(kind));
        }
    }
    let m = inner.n;
    Ok(FinStructure::from_fn(outer.n * m, |a, b| {
        let (t1, i1) = (a / m, a % m);
        let (t2, i2) = (b / m, b % m);
        outer.has(t1, t2) || (t1 == t2 && inner.has(i1, i2))
    }))
}

/// Equivalence classes of `u ∼ v ⟺ u = v or (u, v) unrelated`, when that
/// relation is transitive; `None` otherwise.
pub fn unrelatedness_classes(x: &FinStructure) -> Option<Vec<Vec<usize>>> {
    let n = x.size();
    let related = |u: usize, v: usize| u == v || (!x.has(u, v) && !x.has(v, u));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut assigned = vec![false; n];
    for u in 0..n {
        if assigned[u] {
            continue;
        }
        let class: Vec<usize> = (0..n).filter(|&v| related(u, v)).collect();
        for &a in &class {
            for &b in &class {
                if !related(a, b) {
                    return None;
                }
            }
            if assigned[a] {
                return None;
            }
            assigned[a] = true;
        }
        classes.push(class);
    }
    Some(classes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn induced_substructures() {
        let c3 = FinStructure::cycle3();
        let (all, map) = c3.induced(&[0, 1, 2]).unwrap();
        assert_eq!(all, c3);
        assert_eq!(map, vec![0, 1, 2]);
        let (pair, _) = c3.induced(&[1, 0]).unwrap();
        assert_eq!(pair.arrows(), vec![(0, 1)]);
        let (empty, _) = c3.induced(&[]).unwrap();
        assert_eq!(empty.size(), 0);
        assert_eq!(
            c3.induced(&[3]).unwrap_err(),
            StructureError::VertexOutOfRange { vertex: 3, n: 3 }
        );
    }

    #[test]
    fn induced_keeps_labels() {
        let x = FinStructure::chain(4).with_labels(vec![0, 1, 0, 1]).unwrap();
        let (y, map) = x.induced(&[3, 1]).unwrap();
        assert_eq!(map, vec![1, 3]);
        assert_eq!(y.labels(), Some(&[1, 1][..]));
    }

    #[test]
    fn kinds() {
        assert_eq!(FinStructure::cycle3().classify(), Kind::Tournament);
        let i3 = FinStructure::edgeless(3);
        assert_eq!(i3.classify(), Kind::Graph);
        assert!(i3.flags().is_digraph());
        let lp = FinStructure::new(1, [(0, 0)], None).unwrap();
        assert_eq!(lp.classify(), Kind::Other);
        let path = FinStructure::new(3, [(0, 1)], None).unwrap();
        assert_eq!(path.classify(), Kind::Digraph);
    }

    #[test]
    fn wreath_counts() {
        let w = wreath(&FinStructure::chain(3), &FinStructure::edgeless(2)).unwrap();
        assert_eq!(w.size(), 6);
        assert_eq!(w.arrow_count(), 12);
        assert_eq!(w.classify(), Kind::Digraph);
        assert_eq!(w.unrelated_pairs(), vec![(0, 1), (2, 3), (4, 5)]);

        let two_cycles = wreath(&FinStructure::edgeless(2), &FinStructure::cycle3()).unwrap();
        assert_eq!(two_cycles.arrow_count(), 6);
        assert_eq!(
            two_cycles.arrows(),
            vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]
        );

        let single = wreath(&FinStructure::cycle3(), &FinStructure::edgeless(1)).unwrap();
        assert_eq!(single, FinStructure::cycle3());
    }

    #[test]
    fn wreath_rejects_labels_and_loops() {
        let labeled = FinStructure::chain(2).with_labels(vec![0, 0]).unwrap();
        assert_eq!(
            wreath(&labeled, &FinStructure::edgeless(2)),
            Err(StructureError::Labeled)
        );
        let lp = FinStructure::new(1, [(0, 0)], None).unwrap();
        assert!(matches!(
            wreath(&FinStructure::chain(2), &lp),
            Err(StructureError::NotDigraph(Kind::Other))
        ));
    }

    #[test]
    fn unrelated_pairs_of_tournaments_and_edgeless() {
        assert!(FinStructure::cycle3().unrelated_pairs().is_empty());
        assert_eq!(
            FinStructure::edgeless(3).unrelated_pairs(),
            vec![(0, 1), (0, 2), (1, 2)]
        );
    }

    #[test]
    fn blocks_of_wreath_products() {
        for n in 2..=4 {
            let w = wreath(&FinStructure::cycle3(), &FinStructure::edgeless(n)).unwrap();
            let classes = unrelatedness_classes(&w).unwrap();
            assert_eq!(classes.len(), 3);
            assert!(classes.iter().all(|c| c.len() == n));
        }
        // The path 0 → 1 with 2 isolated: 0 ∼ 2 ∼ 1 but 0 ≁ 1.
        let p = FinStructure::new(3, [(0, 1)], None).unwrap();
        assert_eq!(unrelatedness_classes(&p), None);
    }

    #[test]
    fn json_and_dot() {
        let x = FinStructure::cycle3().with_labels(vec![0, 1, 0]).unwrap();
        let text = serde_json::to_string(&x).unwrap();
        assert_eq!(text, r#"{"n":3,"arrows":[[0,1],[1,2],[2,0]],"labels":[0,1,0]}"#);
        let back: FinStructure = serde_json::from_str(&text).unwrap();
        assert_eq!(back, x);
        let bad = serde_json::from_str::<FinStructure>(r#"{"n":2,"arrows":[[0,2]]}"#);
        assert!(bad.is_err());

        let dot = FinStructure::chain(2).to_dot("g");
        assert_eq!(dot, "digraph g {\n  0;\n  1;\n  0 -> 1;\n}\n");
        let g = FinStructure::new(2, [(0, 1), (1, 0)], None).unwrap();
        assert!(g.to_dot("g").contains("0 -- 1;"));
        assert!(!g.to_dot("g").contains("1 -- 0"));
    }

    #[test]
    fn signatures() {
        let s = Signature::lettered(3);
        assert_eq!(s.label_index("c"), Some(2));
        assert_eq!(s.label_index("d"), None);
        assert!(Signature::new("R", vec!["a".into(), "a".into()]).is_err());
        assert!(Signature::new("R", vec!["R".into()]).is_err());
    }
}
