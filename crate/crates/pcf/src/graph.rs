//! Edge-colored loopless multigraphs: data model, instance/solution formats,
//! and the properly-colored-forest verifier that all solvers are checked
//! against.
//!
//! Vertices are `1..=n`, colors are `1..=k`, and edges carry stable ids
//! `1..=m` assigned in file order. All tie-breaking throughout the crate is
//! "smallest edge id wins", so every run is deterministic.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;
pub type Color = usize;

/// The vertex sets of the connected components of an edge subset, ordered
/// by smallest vertex, each sorted. Vertices with no incident edge do not
/// appear.
pub type ComponentPartition = Vec<Vec<VertexId>>;

/// A single colored edge of a host graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
    pub color: Color,
}

impl Edge {
    /// Endpoints as an unordered pair `(min, max)`.
    pub fn pair(&self) -> (VertexId, VertexId) {
        (self.u.min(self.v), self.u.max(self.v))
    }

    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint that is not `x`. Panics if `x` is not an endpoint.
    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            assert_eq!(
                x, self.v,
                "vertex {x} is not an endpoint of edge {}",
                self.id
            );
            self.u
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range 1..={1}")]
    VertexOutOfRange(VertexId, usize),
    #[error("color {0} out of range 1..={1}")]
    ColorOutOfRange(Color, usize),
    #[error("loop edge {0} at vertex {1}")]
    LoopEdge(EdgeId, VertexId),
    #[error("edges {0} and {1} are parallel within color class {2}")]
    ParallelInColorClass(EdgeId, EdgeId, Color),
    #[error("edges {0} and {1} share endpoints but the instance is flagged simple")]
    SimpleViolation(EdgeId, EdgeId),
    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),
    #[error("duplicate edge id {0} in subset")]
    DuplicateEdge(EdgeId),
    #[error("empty vertex set (n must be at least 1)")]
    EmptyVertexSet,
    #[error("no colors (k must be at least 1)")]
    NoColors,
}

/// A loopless multigraph with a `k`-edge-coloring. Within one color class
/// there are no parallel edges; with the `simple` flag set, no two edges
/// share an endpoint pair at all. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredMultigraph {
    n: usize,
    k: usize,
    simple: bool,
    edges: Vec<Edge>,
    incident: Vec<Vec<EdgeId>>, // indexed by vertex, slot 0 unused
}

impl ColoredMultigraph {
    /// Builds a graph from `(u, v, color)` triples; edge ids are assigned in
    /// input order starting from 1. Validates all type invariants.
    pub fn new(
        n: usize,
        k: usize,
        simple: bool,
        edge_list: &[(VertexId, VertexId, Color)],
    ) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::EmptyVertexSet);
        }
        if k == 0 {
            return Err(GraphError::NoColors);
        }
        let mut edges = Vec::with_capacity(edge_list.len());
        let mut by_pair: BTreeMap<(VertexId, VertexId), Vec<EdgeId>> = BTreeMap::new();
        let mut by_pair_color: BTreeMap<(VertexId, VertexId, Color), EdgeId> = BTreeMap::new();
        for (idx, &(u, v, color)) in edge_list.iter().enumerate() {
            let id = idx + 1;
            if u == 0 || u > n {
                return Err(GraphError::VertexOutOfRange(u, n));
            }
            if v == 0 || v > n {
                return Err(GraphError::VertexOutOfRange(v, n));
            }
            if color == 0 || color > k {
                return Err(GraphError::ColorOutOfRange(color, k));
            }
            if u == v {
                return Err(GraphError::LoopEdge(id, u));
            }
            let pair = (u.min(v), u.max(v));
            if let Some(&prev) = by_pair_color.get(&(pair.0, pair.1, color)) {
                return Err(GraphError::ParallelInColorClass(prev, id, color));
            }
            if simple {
                if let Some(prev) = by_pair.get(&pair) {
                    return Err(GraphError::SimpleViolation(prev[0], id));
                }
            }
            by_pair_color.insert((pair.0, pair.1, color), id);
            by_pair.entry(pair).or_default().push(id);
            edges.push(Edge { id, u, v, color });
        }
        let mut incident = vec![Vec::new(); n + 1];
        for e in &edges {
            incident[e.u].push(e.id);
            incident[e.v].push(e.id);
        }
        Ok(ColoredMultigraph {
            n,
            k,
            simple,
            edges,
            incident,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn simple_flag(&self) -> bool {
        self.simple
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        1..=self.n
    }

    pub fn edge(&self, id: EdgeId) -> Result<&Edge, GraphError> {
        if id == 0 || id > self.edges.len() {
            return Err(GraphError::UnknownEdge(id));
        }
        Ok(&self.edges[id - 1])
    }

    /// Edge ids incident to `v`, ascending.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incident[v]
    }

    /// The color class `E_i` as a simple uncolored graph on the same vertex
    /// set, keeping host edge ids.
    pub fn color_class(&self, i: Color) -> Result<SimpleGraph, GraphError> {
        if i == 0 || i > self.k {
            return Err(GraphError::ColorOutOfRange(i, self.k));
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.color == i)
            .map(|e| SEdge {
                id: e.id,
                u: e.u,
                v: e.v,
            })
            .collect();
        Ok(SimpleGraph { n: self.n, edges })
    }

    /// True when there is at least one edge between every vertex pair.
    pub fn is_complete_multigraph(&self) -> bool {
        let mut seen: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
        for e in &self.edges {
            seen.insert(e.pair());
        }
        seen.len() == self.n * (self.n - 1) / 2
    }

    /// Vertex sets of the connected components of `(V(F), F)`.
    pub fn components(&self, f: &EdgeSubset) -> Result<ComponentPartition, GraphError> {
        self.check_subset(f)?;
        let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for &id in f.ids() {
            let e = self.edge(id)?;
            adj.entry(e.u).or_default().push(e.v);
            adj.entry(e.v).or_default().push(e.u);
        }
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        let mut comps = Vec::new();
        for &start in adj.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut stack = vec![start];
            seen.insert(start);
            while let Some(v) = stack.pop() {
                comp.insert(v);
                for &w in adj.get(&v).map(|x| x.as_slice()).unwrap_or(&[]) {
                    if seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
            comps.push(comp.into_iter().collect());
        }
        Ok(comps)
    }

    /// Checks that `F` is a properly colored forest: acyclic (a pair of
    /// parallel edges counts as a 2-cycle) and with no vertex having two
    /// incident `F`-edges of equal color.
    pub fn verify_pc_forest(&self, f: &EdgeSubset) -> Result<ForestVerdict, GraphError> {
        self.check_subset(f)?;
        // Forest check first: grow by ascending id, report the first cycle.
        let mut dsu = Dsu::new(self.n + 1);
        let mut adj: BTreeMap<VertexId, Vec<(VertexId, EdgeId)>> = BTreeMap::new();
        for &id in f.ids() {
            let e = self.edge(id)?;
            if !dsu.union(e.u, e.v) {
                let mut cycle = path_edges(&adj, e.u, e.v);
                cycle.push(id);
                cycle.sort_unstable();
                return Ok(ForestVerdict::NotForest { cycle });
            }
            adj.entry(e.u).or_default().push((e.v, id));
            adj.entry(e.v).or_default().push((e.u, id));
        }
        // Color check: at most one edge of each color at each vertex.
        let mut used: BTreeMap<(VertexId, Color), EdgeId> = BTreeMap::new();
        for &id in f.ids() {
            let e = self.edge(id)?;
            for x in [e.u, e.v] {
                if let Some(&first) = used.get(&(x, e.color)) {
                    return Ok(ForestVerdict::NotProperlyColored {
                        vertex: x,
                        color: e.color,
                        edges: [first, id],
                    });
                }
                used.insert((x, e.color), id);
            }
        }
        Ok(ForestVerdict::Valid)
    }

    /// Edge ids with both endpoints inside `x`, ascending.
    pub fn edge_ids_induced(&self, x: &BTreeSet<VertexId>) -> Vec<EdgeId> {
        self.edges
            .iter()
            .filter(|e| x.contains(&e.u) && x.contains(&e.v))
            .map(|e| e.id)
            .collect()
    }

    /// Builds a validated edge subset of this graph.
    pub fn edge_subset(
        &self,
        ids: impl IntoIterator<Item = EdgeId>,
    ) -> Result<EdgeSubset, GraphError> {
        let mut v: Vec<EdgeId> = ids.into_iter().collect();
        v.sort_unstable();
        for w in v.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateEdge(w[0]));
            }
        }
        for &id in &v {
            self.edge(id)?;
        }
        Ok(EdgeSubset { ids: v })
    }

    fn check_subset(&self, f: &EdgeSubset) -> Result<(), GraphError> {
        for &id in f.ids() {
            self.edge(id)?;
        }
        Ok(())
    }

    /// Canonical instance serialization; `parse_instance` inverts it.
    pub fn to_instance_text(&self) -> String {
        let mut out = String::new();
        let flag = if self.simple { "simple" } else { "multi" };
        out.push_str(&format!(
            "p pcf {} {} {} {}\n",
            self.n,
            self.m(),
            self.k,
            flag
        ));
        for e in &self.edges {
            out.push_str(&format!("e {} {} {}\n", e.u, e.v, e.color));
        }
        out
    }
}

/// Verdict of [`ColoredMultigraph::verify_pc_forest`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ForestVerdict {
    Valid,
    /// `cycle` lists the edge ids of a cycle in `F`, ascending.
    NotForest {
        cycle: Vec<EdgeId>,
    },
    /// Two `F`-edges of the same color meet at `vertex`.
    NotProperlyColored {
        vertex: VertexId,
        color: Color,
        edges: [EdgeId; 2],
    },
}

impl ForestVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, ForestVerdict::Valid)
    }
}

impl fmt::Display for ForestVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ForestVerdict::Valid => write!(f, "valid"),
            ForestVerdict::NotForest { cycle } => {
                write!(f, "not-forest cycle")?;
                for id in cycle {
                    write!(f, " {id}")?;
                }
                Ok(())
            }
            ForestVerdict::NotProperlyColored {
                vertex,
                color,
                edges,
            } => write!(
                f,
                "not-properly-colored vertex {} color {} edges {} {}",
                vertex, color, edges[0], edges[1]
            ),
        }
    }
}

/// An ordered, duplicate-free set of edge ids referencing a host graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EdgeSubset {
    ids: Vec<EdgeId>,
}

impl EdgeSubset {
    pub fn ids(&self) -> &[EdgeId] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, id: EdgeId) -> bool {
        self.ids.binary_search(&id).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.ids.iter().copied()
    }

    pub fn to_set(&self) -> BTreeSet<EdgeId> {
        self.ids.iter().copied().collect()
    }
}

impl FromIterator<EdgeId> for EdgeSubset {
    /// Builds an unvalidated subset; prefer [`ColoredMultigraph::edge_subset`]
    /// when a host graph is at hand. Duplicates are removed.
    fn from_iter<T: IntoIterator<Item = EdgeId>>(iter: T) -> Self {
        let set: BTreeSet<EdgeId> = iter.into_iter().collect();
        EdgeSubset {
            ids: set.into_iter().collect(),
        }
    }
}

/// A simple uncolored graph, as produced by [`ColoredMultigraph::color_class`].
/// Edges keep the ids of the host graph they came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    pub n: usize,
    pub edges: Vec<SEdge>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SEdge {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: Vec<SEdge>) -> Self {
        SimpleGraph { n, edges }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("missing `p pcf <n> <m> <k> <simple|multi>` header")]
    MissingHeader,
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("malformed edge line: {0}")]
    MalformedEdge(String),
    #[error("unexpected line: {0}")]
    UnexpectedLine(String),
    #[error("header declares {expected} edges but {found} were given")]
    EdgeCountMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Graph(GraphError),
}

/// Parses the line-oriented instance format:
///
/// ```text
/// p pcf <n> <m> <k> <simple|multi>
/// e <u> <v> <color>     (m lines, 1-indexed vertices and colors)
/// ```
///
/// Lines starting with `#` or `c` and blank lines are ignored. Edge ids are
/// assigned in file order starting from 1.
pub fn parse_instance(text: &str) -> Result<ColoredMultigraph, ParseError> {
    let mut header: Option<(usize, usize, usize, bool)> = None;
    let mut triples: Vec<(VertexId, VertexId, Color)> = Vec::new();
    let mut edge_lines: Vec<usize> = Vec::new();
    let mut last_line = 0;
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        last_line = line;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') || t.starts_with('c') {
            continue;
        }
        let toks: Vec<&str> = t.split_whitespace().collect();
        match toks[0] {
            "p" => {
                if header.is_some() {
                    return Err(ParseError {
                        line,
                        kind: ParseErrorKind::UnexpectedLine(t.to_string()),
                    });
                }
                if toks.len() != 6 || toks[1] != "pcf" {
                    return Err(ParseError {
                        line,
                        kind: ParseErrorKind::MalformedHeader(t.to_string()),
                    });
                }
                let parse = |s: &str| {
                    s.parse::<usize>().map_err(|_| ParseError {
                        line,
                        kind: ParseErrorKind::MalformedHeader(t.to_string()),
                    })
                };
                let n = parse(toks[2])?;
                let m = parse(toks[3])?;
                let k = parse(toks[4])?;
                let simple = match toks[5] {
                    "simple" => true,
                    "multi" => false,
                    _ => {
                        return Err(ParseError {
                            line,
                            kind: ParseErrorKind::MalformedHeader(t.to_string()),
                        })
                    }
                };
                header = Some((n, m, k, simple));
            }
            "e" => {
                if header.is_none() {
                    return Err(ParseError {
                        line,
                        kind: ParseErrorKind::MissingHeader,
                    });
                }
                if toks.len() != 4 {
                    return Err(ParseError {
                        line,
                        kind: ParseErrorKind::MalformedEdge(t.to_string()),
                    });
                }
                let parse = |s: &str| {
                    s.parse::<usize>().map_err(|_| ParseError {
                        line,
                        kind: ParseErrorKind::MalformedEdge(t.to_string()),
                    })
                };
                triples.push((parse(toks[1])?, parse(toks[2])?, parse(toks[3])?));
                edge_lines.push(line);
            }
            _ => {
                return Err(ParseError {
                    line,
                    kind: ParseErrorKind::UnexpectedLine(t.to_string()),
                })
            }
        }
    }
    let (n, m, k, simple) = header.ok_or(ParseError {
        line: last_line.max(1),
        kind: ParseErrorKind::MissingHeader,
    })?;
    if triples.len() != m {
        return Err(ParseError {
            line: last_line.max(1),
            kind: ParseErrorKind::EdgeCountMismatch {
                expected: m,
                found: triples.len(),
            },
        });
    }
    ColoredMultigraph::new(n, k, simple, &triples).map_err(|e| {
        // Point at the line of the newest edge involved in the violation.
        let line = match &e {
            GraphError::LoopEdge(id, _) => edge_lines[id - 1],
            GraphError::ParallelInColorClass(_, id, _) => edge_lines[id - 1],
            GraphError::SimpleViolation(_, id) => edge_lines[id - 1],
            GraphError::VertexOutOfRange(..) | GraphError::ColorOutOfRange(..) => edge_lines
                .iter()
                .zip(&triples)
                .find(|(_, &(u, v, c))| u == 0 || u > n || v == 0 || v > n || c == 0 || c > k)
                .map(|(&l, _)| l)
                .unwrap_or(last_line.max(1)),
            _ => last_line.max(1),
        };
        ParseError {
            line,
            kind: ParseErrorKind::Graph(e),
        }
    })
}

/// Serializes a solution: `s pcf <size>` followed by one `f <edge-id>` line
/// per forest edge, ids ascending.
pub fn solution_to_text(forest: &EdgeSubset) -> String {
    let mut out = format!("s pcf {}\n", forest.len());
    for id in forest.iter() {
        out.push_str(&format!("f {id}\n"));
    }
    out
}

/// Parses the solution format produced by [`solution_to_text`]; `c` and `#`
/// lines are ignored.
pub fn parse_solution(text: &str) -> Result<EdgeSubset, ParseError> {
    let mut size: Option<usize> = None;
    let mut ids = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') || t.starts_with('c') {
            continue;
        }
        let toks: Vec<&str> = t.split_whitespace().collect();
        match toks[0] {
            "s" => {
                if toks.len() != 3 || toks[1] != "pcf" {
                    return Err(ParseError {
                        line,
                        kind: ParseErrorKind::MalformedHeader(t.to_string()),
                    });
                }
                size = Some(toks[2].parse::<usize>().map_err(|_| ParseError {
                    line,
                    kind: ParseErrorKind::MalformedHeader(t.to_string()),
                })?);
            }
            "f" => {
                if toks.len() != 2 {
                    return Err(ParseError {
                        line,
                        kind: ParseErrorKind::MalformedEdge(t.to_string()),
                    });
                }
                ids.push(toks[1].parse::<EdgeId>().map_err(|_| ParseError {
                    line,
                    kind: ParseErrorKind::MalformedEdge(t.to_string()),
                })?);
            }
            _ => {
                return Err(ParseError {
                    line,
                    kind: ParseErrorKind::UnexpectedLine(t.to_string()),
                })
            }
        }
    }
    let expected = size.ok_or(ParseError {
        line: 1,
        kind: ParseErrorKind::MissingHeader,
    })?;
    if ids.len() != expected {
        return Err(ParseError {
            line: 1,
            kind: ParseErrorKind::EdgeCountMismatch {
                expected,
                found: ids.len(),
            },
        });
    }
    Ok(ids.into_iter().collect())
}

/// Plain union-find over `0..size`.
#[derive(Debug, Clone)]
pub struct Dsu {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl Dsu {
    pub fn new(size: usize) -> Self {
        Dsu {
            parent: (0..size).collect(),
            rank: vec![0; size],
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    /// Returns false when `a` and `b` were already connected.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }

    pub fn connected(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }
}

fn path_edges(
    adj: &BTreeMap<VertexId, Vec<(VertexId, EdgeId)>>,
    from: VertexId,
    to: VertexId,
) -> Vec<EdgeId> {
    // BFS in the partially built forest; the path is unique.
    let mut prev: BTreeMap<VertexId, (VertexId, EdgeId)> = BTreeMap::new();
    let mut queue = std::collections::VecDeque::from([from]);
    let mut seen = BTreeSet::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &(w, id) in adj.get(&v).map(|x| x.as_slice()).unwrap_or(&[]) {
            if seen.insert(w) {
                prev.insert(w, (v, id));
                queue.push_back(w);
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = to;
    while cur != from {
        let (p, id) = prev[&cur];
        path.push(id);
        cur = p;
    }
    path
}
