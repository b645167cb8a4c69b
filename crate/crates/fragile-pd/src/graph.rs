//! Simple undirected graphs with contiguous integer vertices.
//!
//! Vertices are `0..order()`. Adjacency lists are kept sorted and
//! deduplicated, so neighbor iteration is deterministic. Vertices may carry
//! optional string labels; labels are metadata and never affect structure.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A finite set of vertex identifiers with deterministic (sorted) iteration.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet {
    members: BTreeSet<usize>,
}

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(v: usize) -> Self {
        Self {
            members: BTreeSet::from([v]),
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.contains(&v)
    }

    pub fn insert(&mut self, v: usize) -> bool {
        self.members.insert(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn union(&self, other: &Self) -> Self {
        Self {
            members: self.members.union(&other.members).copied().collect(),
        }
    }

    pub fn difference(&self, other: &Self) -> Self {
        Self {
            members: self.members.difference(&other.members).copied().collect(),
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self {
            members: self.members.intersection(&other.members).copied().collect(),
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.members.is_disjoint(&other.members)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.members.iter().copied().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self {
            members: iter.into_iter().collect(),
        }
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(v: [usize; N]) -> Self {
        v.into_iter().collect()
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = std::iter::Copied<std::collections::btree_set::Iter<'a, usize>>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter().copied()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Families of standard graphs constructible by order alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardKind {
    Path,
    Cycle,
    Complete,
    Empty,
}

/// An undirected simple graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    labels: BTreeMap<usize, String>,
}

impl Graph {
    /// A graph with `order` vertices and no edges.
    pub fn new(order: usize) -> Self {
        Self {
            adj: vec![Vec::new(); order],
            labels: BTreeMap::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.order() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order(),
            })
        }
    }

    /// Appends an isolated vertex and returns its identifier.
    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    /// Inserts the edge `u-v`. Inserting an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop { vertex: u });
        }
        if let Err(pos) = self.adj[u].binary_search(&v) {
            self.adj[u].insert(pos, v);
            let pos = self.adj[v].binary_search(&u).unwrap_err();
            self.adj[v].insert(pos, u);
        }
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Neighbors of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// All edges as pairs `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for u in self.vertices() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// The closed neighborhood `N[v]`.
    pub fn closed_neighborhood(&self, v: usize) -> VertexSet {
        let mut s: VertexSet = self.adj[v].iter().copied().collect();
        s.insert(v);
        s
    }

    /// True when `v` has exactly one neighbor.
    pub fn is_leaf(&self, v: usize) -> bool {
        self.degree(v) == 1
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    pub fn set_label(&mut self, v: usize, label: impl Into<String>) -> Result<()> {
        self.check_vertex(v)?;
        self.labels.insert(v, label.into());
        Ok(())
    }

    pub fn labels(&self) -> &BTreeMap<usize, String> {
        &self.labels
    }

    /// Vertices whose label equals `label`.
    pub fn find_label(&self, label: &str) -> Vec<usize> {
        self.labels
            .iter()
            .filter(|(_, l)| l.as_str() == label)
            .map(|(&v, _)| v)
            .collect()
    }

    /// Standard graph of the given kind on `order` vertices.
    ///
    /// Cycles require `order >= 3`; the other kinds accept any order,
    /// including zero.
    pub fn standard(kind: StandardKind, order: usize) -> Result<Self> {
        if kind == StandardKind::Cycle && order < 3 {
            return Err(Error::InvalidParameter(format!(
                "cycles need at least 3 vertices, got {order}"
            )));
        }
        let mut g = Self::new(order);
        match kind {
            StandardKind::Empty => {}
            StandardKind::Path => {
                for v in 1..order {
                    g.add_edge(v - 1, v)?;
                }
            }
            StandardKind::Cycle => {
                for v in 1..order {
                    g.add_edge(v - 1, v)?;
                }
                g.add_edge(order - 1, 0)?;
            }
            StandardKind::Complete => {
                for u in 0..order {
                    for v in u + 1..order {
                        g.add_edge(u, v)?;
                    }
                }
            }
        }
        Ok(g)
    }

    /// Adds a new degree-one vertex adjacent to `v`; returns the leaf.
    pub fn add_leaf(&mut self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        let leaf = self.add_vertex();
        self.add_edge(v, leaf)?;
        Ok(leaf)
    }

    /// Replaces the edge `u-v` by a path `u-x-v` through a new vertex `x`.
    ///
    /// Returns the subdivision vertex `x`. All existing identifiers are
    /// unchanged.
    pub fn subdivide_edge(&mut self, u: usize, v: usize) -> Result<usize> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(Error::MissingEdge { u, v });
        }
        let pos = self.adj[u].binary_search(&v).unwrap();
        self.adj[u].remove(pos);
        let pos = self.adj[v].binary_search(&u).unwrap();
        self.adj[v].remove(pos);
        let x = self.add_vertex();
        self.add_edge(u, x)?;
        self.add_edge(x, v)?;
        Ok(x)
    }

    /// Appends a path with `len` new vertices to `v` (`len = 0` is a no-op).
    ///
    /// Returns the new path vertices in order; the first is adjacent to `v`.
    pub fn append_path(&mut self, v: usize, len: usize) -> Result<Vec<usize>> {
        self.check_vertex(v)?;
        let mut path = Vec::with_capacity(len);
        let mut prev = v;
        for _ in 0..len {
            let next = self.add_vertex();
            self.add_edge(prev, next)?;
            path.push(next);
            prev = next;
        }
        Ok(path)
    }

    /// Disjoint union. Vertices of `other` are shifted by `self.order()`;
    /// labels from `other` are kept under a `r.` component prefix.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.order();
        let mut g = self.clone();
        g.adj.extend(
            other
                .adj
                .iter()
                .map(|ns| ns.iter().map(|&v| v + shift).collect()),
        );
        for (&v, l) in &other.labels {
            g.labels.insert(v + shift, format!("r.{l}"));
        }
        g
    }

    /// Glues `other` onto `self` by identifying vertices.
    ///
    /// Each pair `(a, b)` merges vertex `b` of `other` into vertex `a` of
    /// `self`. Pairs must be injective on both sides. Vertices of `self` keep
    /// their identifiers; the remaining vertices of `other` are appended in
    /// increasing order of their original identifiers. Returns the new graph
    /// along with the mapping from `other`'s identifiers to result
    /// identifiers.
    pub fn identify_vertices(
        &self,
        other: &Graph,
        pairs: &[(usize, usize)],
    ) -> Result<(Graph, Vec<usize>)> {
        let mut seen_a = BTreeSet::new();
        let mut merged: BTreeMap<usize, usize> = BTreeMap::new();
        for &(a, b) in pairs {
            self.check_vertex(a)?;
            if b >= other.order() {
                return Err(Error::VertexOutOfRange {
                    vertex: b,
                    order: other.order(),
                });
            }
            if !seen_a.insert(a) || merged.insert(b, a).is_some() {
                return Err(Error::NonInjectiveIdentification);
            }
        }
        let mut g = self.clone();
        let mut map = vec![usize::MAX; other.order()];
        for (b, image) in map.iter_mut().enumerate() {
            *image = match merged.get(&b) {
                Some(&a) => a,
                None => g.add_vertex(),
            };
        }
        for (u, v) in other.edges() {
            g.add_edge(map[u], map[v])?;
        }
        for (&v, l) in &other.labels {
            if !merged.contains_key(&v) {
                g.labels.insert(map[v], l.clone());
            }
        }
        Ok((g, map))
    }

    /// Parses the plain edge-list format.
    ///
    /// Each non-empty line is either a comment starting with `#`, a header
    /// `n <count>` declaring the number of vertices (useful for isolated
    /// vertices), or an edge `u v`. The order is the maximum of the declared
    /// count and `1 + max identifier`. Lines of the form `# label <v> <text>`
    /// restore vertex labels; other comments are ignored.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut declared = 0usize;
        let mut edges: Vec<(usize, usize, usize)> = Vec::new();
        let mut labels: Vec<(usize, usize, String)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                let mut it = rest.split_whitespace();
                if it.next() == Some("label") {
                    let v = it.next().and_then(|t| t.parse::<usize>().ok());
                    let text: Vec<&str> = it.collect();
                    if let (Some(v), false) = (v, text.is_empty()) {
                        labels.push((lineno, v, text.join(" ")));
                    }
                }
                continue;
            }
            let mut it = line.split_whitespace();
            let first = it.next().unwrap();
            if first == "n" {
                let count = it
                    .next()
                    .ok_or_else(|| Error::Parse {
                        line: lineno,
                        message: "header needs a vertex count".into(),
                    })?
                    .parse::<usize>()
                    .map_err(|e| Error::Parse {
                        line: lineno,
                        message: format!("bad vertex count: {e}"),
                    })?;
                if it.next().is_some() {
                    return Err(Error::Parse {
                        line: lineno,
                        message: "trailing tokens after header".into(),
                    });
                }
                declared = declared.max(count);
                continue;
            }
            let parse = |tok: &str| {
                tok.parse::<usize>().map_err(|e| Error::Parse {
                    line: lineno,
                    message: format!("bad vertex identifier {tok:?}: {e}"),
                })
            };
            let u = parse(first)?;
            let v = parse(it.next().ok_or_else(|| Error::Parse {
                line: lineno,
                message: "edge needs two endpoints".into(),
            })?)?;
            if it.next().is_some() {
                return Err(Error::Parse {
                    line: lineno,
                    message: "trailing tokens after edge".into(),
                });
            }
            if u == v {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("self-loop at vertex {u}"),
                });
            }
            edges.push((lineno, u, v));
        }
        let max_id = edges.iter().flat_map(|&(_, u, v)| [u, v]).max();
        let order = declared.max(max_id.map_or(0, |m| m + 1));
        let mut g = Self::new(order);
        for (_, u, v) in edges {
            g.add_edge(u, v)?;
        }
        for (lineno, v, text) in labels {
            g.set_label(v, text).map_err(|_| Error::Parse {
                line: lineno,
                message: format!("label for out-of-range vertex {v}"),
            })?;
        }
        Ok(g)
    }

    /// Serializes to the edge-list format parsed by [`Graph::parse_edge_list`].
    ///
    /// Emits the `n` header, sorted edges, and `# label` comment lines, so
    /// parsing the output reproduces the graph exactly.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.order());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        for (v, l) in &self.labels {
            out.push_str(&format!("# label {v} {l}\n"));
        }
        out
    }
}
