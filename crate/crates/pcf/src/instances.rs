//! Seeded random instance generators and the reduction-based instance
//! families with their solution back-maps. Red is color 1, blue is color 2,
//! and the completion color is 3, fixed globally so serializations are
//! reproducible.

use crate::graph::{ColoredMultigraph, EdgeId, EdgeSubset, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

pub const RED: usize = 1;
pub const BLUE: usize = 2;
pub const THIRD: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("source graph must be simple")]
    SourceNotSimple,
    #[error("source graph must be 2-edge-colored")]
    SourceNotTwoColored,
    #[error("target solution is not feasible: {0}")]
    BadSolution(String),
    #[error(transparent)]
    Graph(crate::graph::GraphError),
}

/// An uncolored simple graph over vertices `1..=n`; edges carry ids
/// `1..=m` in construction order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UncoloredGraph {
    pub n: usize,
    pub edges: Vec<(VertexId, VertexId)>,
}

/// A loopless digraph over vertices `1..=n`; arcs carry ids `1..=m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    pub n: usize,
    pub arcs: Vec<(VertexId, VertexId)>,
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed-deterministic k-edge-colored instance: `m` edges drawn by rejection
/// sampling, loopless, parallel-free within each color class, duplicate
/// pairs rejected entirely when `simple` is set.
pub fn gen_random(
    n: usize,
    m: usize,
    k: usize,
    simple: bool,
    seed: u64,
) -> Result<ColoredMultigraph, GenError> {
    if n == 0 || k == 0 {
        return Err(GenError::Infeasible("n and k must be positive".into()));
    }
    let pair_slots = n * (n - 1) / 2;
    let capacity = if simple { pair_slots } else { pair_slots * k };
    if m > capacity {
        return Err(GenError::Infeasible(format!(
            "m = {m} exceeds the {capacity} available edge slots"
        )));
    }
    let mut rng = rng_for(seed);
    let mut triples = Vec::with_capacity(m);
    let mut used_pairs: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    let mut used_colored: BTreeSet<(VertexId, VertexId, usize)> = BTreeSet::new();
    while triples.len() < m {
        let u = rng.gen_range(1..=n);
        let v = rng.gen_range(1..=n);
        if u == v {
            continue;
        }
        let (a, b) = (u.min(v), u.max(v));
        let c = rng.gen_range(1..=k);
        if simple && used_pairs.contains(&(a, b)) {
            continue;
        }
        if !used_colored.insert((a, b, c)) {
            continue;
        }
        used_pairs.insert((a, b));
        triples.push((a, b, c));
    }
    ColoredMultigraph::new(n, k, simple, &triples).map_err(GenError::Graph)
}

/// Seed-deterministic uncolored simple graph with `m` edges.
pub fn gen_random_uncolored(n: usize, m: usize, seed: u64) -> Result<UncoloredGraph, GenError> {
    if n == 0 {
        return Err(GenError::Infeasible("n must be positive".into()));
    }
    if m > n * (n - 1) / 2 {
        return Err(GenError::Infeasible(format!(
            "m = {m} exceeds simple capacity"
        )));
    }
    let mut rng = rng_for(seed);
    let mut edges = Vec::with_capacity(m);
    let mut used = BTreeSet::new();
    while edges.len() < m {
        let u = rng.gen_range(1..=n);
        let v = rng.gen_range(1..=n);
        if u == v {
            continue;
        }
        let (a, b) = (u.min(v), u.max(v));
        if used.insert((a, b)) {
            edges.push((a, b));
        }
    }
    Ok(UncoloredGraph { n, edges })
}

/// Seed-deterministic loopless digraph with `m` distinct arcs.
pub fn gen_random_digraph(n: usize, m: usize, seed: u64) -> Result<Digraph, GenError> {
    if n == 0 {
        return Err(GenError::Infeasible("n must be positive".into()));
    }
    if m > n * (n - 1) {
        return Err(GenError::Infeasible(format!(
            "m = {m} exceeds arc capacity"
        )));
    }
    let mut rng = rng_for(seed);
    let mut arcs = Vec::with_capacity(m);
    let mut used = BTreeSet::new();
    while arcs.len() < m {
        let u = rng.gen_range(1..=n);
        let v = rng.gen_range(1..=n);
        if u != v && used.insert((u, v)) {
            arcs.push((u, v));
        }
    }
    Ok(Digraph { n, arcs })
}

/// Provenance of one target edge, for the sidecar back-map files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeRole {
    /// Copy of source edge `id` (red or blue level of the doubling).
    SourceCopy { id: usize },
    /// Connector/gadget edge attached to source vertex `v`.
    Gadget { v: VertexId },
    /// Completion edge not present in the source.
    Completion,
}

/// Maximum linear forest -> 2-colored Max-PF (red copy, blue copy, and a
/// red/blue connector pair through a fresh vertex per source vertex).
/// Vertices: `v'_i = i`, `v''_i = n + i`, `u_i = 2n + i`. The optimum
/// shifts by exactly `2n`.
#[derive(Debug, Clone)]
pub struct LfToPcf2 {
    pub source: UncoloredGraph,
    pub target: ColoredMultigraph,
    pub roles: Vec<EdgeRole>,
}

pub fn reduce_lf_to_pcf2(source: &UncoloredGraph) -> Result<LfToPcf2, GenError> {
    let n = source.n;
    check_simple(source)?;
    let mut triples = Vec::new();
    let mut roles = Vec::new();
    for (idx, &(u, v)) in source.edges.iter().enumerate() {
        triples.push((u, v, RED)); // red copy in G'
        roles.push(EdgeRole::SourceCopy { id: idx + 1 });
    }
    for (idx, &(u, v)) in source.edges.iter().enumerate() {
        triples.push((n + u, n + v, BLUE)); // blue copy in G''
        roles.push(EdgeRole::SourceCopy { id: idx + 1 });
    }
    for i in 1..=n {
        triples.push((i, 2 * n + i, BLUE)); // v'_i u_i, blue
        roles.push(EdgeRole::Gadget { v: i });
        triples.push((2 * n + i, n + i, RED)); // u_i v''_i, red
        roles.push(EdgeRole::Gadget { v: i });
    }
    let target = ColoredMultigraph::new(3 * n, 2, true, &triples).map_err(GenError::Graph)?;
    Ok(LfToPcf2 {
        source: source.clone(),
        target,
        roles,
    })
}

impl LfToPcf2 {
    /// Stated optimum relation: `OPT' = OPT + 2n`.
    pub fn target_opt(&self, source_opt: usize) -> usize {
        source_opt + 2 * self.source.n
    }

    /// Maps a properly colored forest of the target to a linear forest of
    /// the source with at least `|F| - 2n` edges: connector edges are added
    /// one by one (deleting the conflicting copy edge on any created
    /// cycle), then the connectors are contracted.
    pub fn backward(&self, forest: &EdgeSubset) -> Result<Vec<usize>, GenError> {
        let g = &self.target;
        let verdict = g.verify_pc_forest(forest).map_err(GenError::Graph)?;
        if !verdict.is_valid() {
            return Err(GenError::BadSolution(verdict.to_string()));
        }
        let input_len = forest.len();
        let mut current: BTreeSet<EdgeId> = forest.to_set();
        let n = self.source.n;
        // Connector edge ids: the gadget block starts after both copies.
        let base = 2 * self.source.edges.len();
        for i in 0..2 * n {
            let id = base + i + 1;
            if current.contains(&id) {
                continue;
            }
            let e = g.edge(id).unwrap();
            // The copy-level endpoint of the connector (not u_i).
            let copy_end = if e.u > 2 * n { e.v } else { e.u };
            if let Some(cycle) = insertion_cycle(g, &current, e.u, e.v) {
                // Delete the unique other cycle edge at the copy endpoint.
                let victim = cycle
                    .iter()
                    .copied()
                    .find(|&cid| cid != id && g.edge(cid).unwrap().touches(copy_end))
                    .expect("cycle through a connector has another edge at its copy endpoint");
                assert!(
                    matches!(self.roles[victim - 1], EdgeRole::SourceCopy { .. }),
                    "connector completion must only delete copy edges"
                );
                current.remove(&victim);
            }
            current.insert(id);
            let sub: EdgeSubset = current.iter().copied().collect();
            assert!(g.verify_pc_forest(&sub).unwrap().is_valid());
        }
        assert!(current.len() >= input_len, "completion lost edges");
        // Contract the connectors: surviving copy edges map to the source.
        let mut out: Vec<usize> = current
            .iter()
            .filter_map(|&id| match self.roles[id - 1] {
                EdgeRole::SourceCopy { id: sid } => Some(sid),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        assert_eq!(
            out.len(),
            current.len() - 2 * n,
            "contraction count mismatch"
        );
        assert!(
            is_linear_forest(&self.source, &out),
            "backward map produced a non-linear source solution"
        );
        Ok(out)
    }
}

// The unique cycle that adding edge (u, v) to the forest would create, or
// None when u and v are disconnected.
fn insertion_cycle(
    g: &ColoredMultigraph,
    forest: &BTreeSet<EdgeId>,
    u: VertexId,
    v: VertexId,
) -> Option<Vec<EdgeId>> {
    let mut adj: BTreeMap<VertexId, Vec<(VertexId, EdgeId)>> = BTreeMap::new();
    for &id in forest {
        let e = g.edge(id).unwrap();
        adj.entry(e.u).or_default().push((e.v, id));
        adj.entry(e.v).or_default().push((e.u, id));
    }
    let mut prev: BTreeMap<VertexId, (VertexId, EdgeId)> = BTreeMap::new();
    let mut queue = std::collections::VecDeque::from([u]);
    let mut seen = BTreeSet::from([u]);
    while let Some(x) = queue.pop_front() {
        if x == v {
            let mut path = Vec::new();
            let mut cur = v;
            while cur != u {
                let (p, id) = prev[&cur];
                path.push(id);
                cur = p;
            }
            return Some(path);
        }
        for &(w, id) in adj.get(&x).map(|a| a.as_slice()).unwrap_or(&[]) {
            if seen.insert(w) {
                prev.insert(w, (x, id));
                queue.push_back(w);
            }
        }
    }
    None
}

fn is_linear_forest(source: &UncoloredGraph, ids: &[usize]) -> bool {
    let mut deg = vec![0usize; source.n + 1];
    let mut dsu = crate::graph::Dsu::new(source.n + 1);
    for &sid in ids {
        let (u, v) = source.edges[sid - 1];
        deg[u] += 1;
        deg[v] += 1;
        if deg[u] > 2 || deg[v] > 2 || !dsu.union(u, v) {
            return false;
        }
    }
    true
}

fn check_simple(source: &UncoloredGraph) -> Result<(), GenError> {
    let mut seen = BTreeSet::new();
    for &(u, v) in &source.edges {
        if u == v || u == 0 || v == 0 || u > source.n || v > source.n {
            return Err(GenError::SourceNotSimple);
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(GenError::SourceNotSimple);
        }
    }
    Ok(())
}

/// 2-colored simple Max-PF -> 3-colored complete simple Max-PF on `2n`
/// vertices: add `n` fresh vertices and complete the graph with color-3
/// edges. The optimum shifts by exactly `n`.
#[derive(Debug, Clone)]
pub struct Pcf2ToPcf3 {
    pub source: ColoredMultigraph,
    pub target: ColoredMultigraph,
    pub roles: Vec<EdgeRole>,
}

pub fn reduce_pcf2_to_pcf3_complete(source: &ColoredMultigraph) -> Result<Pcf2ToPcf3, GenError> {
    if !source.simple_flag() {
        return Err(GenError::SourceNotSimple);
    }
    if source.k() != 2 {
        return Err(GenError::SourceNotTwoColored);
    }
    let n = source.n();
    let mut triples = Vec::new();
    let mut roles = Vec::new();
    let mut pairs: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    for e in source.edges() {
        triples.push((e.u, e.v, e.color));
        roles.push(EdgeRole::SourceCopy { id: e.id });
        pairs.insert(e.pair());
    }
    for u in 1..=2 * n {
        for v in u + 1..=2 * n {
            if pairs.insert((u, v)) {
                triples.push((u, v, THIRD));
                roles.push(EdgeRole::Completion);
            }
        }
    }
    let target = ColoredMultigraph::new(2 * n, 3, true, &triples).map_err(GenError::Graph)?;
    Ok(Pcf2ToPcf3 {
        source: source.clone(),
        target,
        roles,
    })
}

impl Pcf2ToPcf3 {
    /// Stated optimum relation: `OPT' = OPT + n`.
    pub fn target_opt(&self, source_opt: usize) -> usize {
        source_opt + self.source.n()
    }

    /// Deletes the color-3 edges; the rest is a properly colored forest of
    /// the source with at least `|F'| - n` edges.
    pub fn backward(&self, forest: &EdgeSubset) -> Result<Vec<EdgeId>, GenError> {
        let verdict = self
            .target
            .verify_pc_forest(forest)
            .map_err(GenError::Graph)?;
        if !verdict.is_valid() {
            return Err(GenError::BadSolution(verdict.to_string()));
        }
        let out: Vec<EdgeId> = forest
            .iter()
            .filter_map(|id| match self.roles[id - 1] {
                EdgeRole::SourceCopy { id: sid } => Some(sid),
                _ => None,
            })
            .collect();
        let sub: EdgeSubset = out.iter().copied().collect();
        assert!(self.source.verify_pc_forest(&sub).unwrap().is_valid());
        assert!(
            forest.len() - out.len() <= self.source.n(),
            "too many completion edges"
        );
        Ok(out)
    }
}

/// Longest directed path -> 2-colored Max-PT: vertices split into in/out
/// copies (`v_i^in = i`, `v_i^out = n + i`), one red edge per vertex and one
/// blue edge per arc. The optimum relation is `OPT' = 2 OPT + 1` with path
/// length counted in arcs.
#[derive(Debug, Clone)]
pub struct DigraphToMaxpt2 {
    pub source: Digraph,
    pub target: ColoredMultigraph,
    pub roles: Vec<EdgeRole>,
    /// `arc_of[id]` is the source arc id of blue edge `id` (0 for red).
    arc_of: Vec<usize>,
}

pub fn reduce_digraph_to_maxpt2(source: &Digraph) -> Result<DigraphToMaxpt2, GenError> {
    let n = source.n;
    for &(u, v) in &source.arcs {
        if u == v || u == 0 || v == 0 || u > n || v > n {
            return Err(GenError::Infeasible(
                "digraph must be loopless over 1..=n".into(),
            ));
        }
    }
    let mut triples = Vec::new();
    let mut roles = Vec::new();
    let mut arc_of = Vec::new();
    for (idx, &(u, v)) in source.arcs.iter().enumerate() {
        // v_u^out -- v_v^in, blue.
        triples.push((n + u, v, BLUE));
        roles.push(EdgeRole::SourceCopy { id: idx + 1 });
        arc_of.push(idx + 1);
    }
    for i in 1..=n {
        triples.push((i, n + i, RED));
        roles.push(EdgeRole::Gadget { v: i });
        arc_of.push(0);
    }
    let target = ColoredMultigraph::new(2 * n, 2, true, &triples).map_err(GenError::Graph)?;
    Ok(DigraphToMaxpt2 {
        source: source.clone(),
        target,
        roles,
        arc_of,
    })
}

impl DigraphToMaxpt2 {
    /// Stated optimum relation: `OPT' = 2 OPT + 1` (for nonempty sources).
    pub fn target_opt(&self, source_opt: usize) -> usize {
        2 * source_opt + 1
    }

    /// Contracts the red edges of an alternating path: the blue edges name
    /// arcs which form a directed path or cycle; a cycle loses its
    /// highest-id arc. Returns the arc ids of a directed path of length at
    /// least `ceil((p' - 2) / 2)` where `p'` counts the path's vertices.
    pub fn backward(&self, tree: &EdgeSubset) -> Result<Vec<usize>, GenError> {
        let g = &self.target;
        let verdict = g.verify_pc_forest(tree).map_err(GenError::Graph)?;
        if !verdict.is_valid() {
            return Err(GenError::BadSolution(verdict.to_string()));
        }
        if !tree.is_empty() {
            let comps = g.components(tree).map_err(GenError::Graph)?;
            if comps.len() != 1 {
                return Err(GenError::BadSolution(
                    "solution tree is disconnected".into(),
                ));
            }
        }
        let mut arcs: BTreeSet<usize> = tree
            .iter()
            .filter(|&id| self.arc_of[id - 1] != 0)
            .map(|id| self.arc_of[id - 1])
            .collect();
        // The arcs form a directed path or cycle; detect a cycle by in/out
        // degrees and break it at the highest arc id.
        let (mut indeg, mut outdeg) = (BTreeMap::new(), BTreeMap::new());
        for &aid in &arcs {
            let (u, v) = self.source.arcs[aid - 1];
            *outdeg.entry(u).or_insert(0usize) += 1;
            *indeg.entry(v).or_insert(0usize) += 1;
        }
        let is_path = |ind: &BTreeMap<usize, usize>, outd: &BTreeMap<usize, usize>| {
            ind.values().all(|&d| d <= 1)
                && outd.values().all(|&d| d <= 1)
                && ind.keys().any(|v| !outd.contains_key(v))
        };
        if !arcs.is_empty() && !is_path(&indeg, &outdeg) {
            let drop = *arcs.iter().max().unwrap();
            let (u, v) = self.source.arcs[drop - 1];
            arcs.remove(&drop);
            *outdeg.get_mut(&u).unwrap() -= 1;
            *indeg.get_mut(&v).unwrap() -= 1;
        }
        let out: Vec<usize> = order_arc_path(&self.source, &arcs)
            .ok_or_else(|| GenError::BadSolution("contracted arcs are not a path".into()))?;
        // out.len() >= ceil((p' - 2) / 2) with p' the tree's vertex count.
        let p_prime = tree.len() + 1;
        assert!(
            out.len() + 1 >= p_prime.div_ceil(2),
            "length bound violated"
        );
        Ok(out)
    }
}

// Orders a set of arcs into a single directed path, if they form one.
fn order_arc_path(source: &Digraph, arcs: &BTreeSet<usize>) -> Option<Vec<usize>> {
    if arcs.is_empty() {
        return Some(Vec::new());
    }
    let mut next: BTreeMap<usize, usize> = BTreeMap::new();
    let mut heads: BTreeSet<usize> = BTreeSet::new();
    let mut tails: BTreeSet<usize> = BTreeSet::new();
    for &aid in arcs {
        let (u, v) = source.arcs[aid - 1];
        if next.insert(u, aid).is_some() {
            return None;
        }
        heads.insert(u);
        tails.insert(v);
    }
    let starts: Vec<usize> = heads.difference(&tails).copied().collect();
    if starts.len() != 1 {
        return None;
    }
    let mut out = Vec::new();
    let mut cur = starts[0];
    let mut seen = BTreeSet::from([cur]);
    while let Some(&aid) = next.get(&cur) {
        out.push(aid);
        cur = source.arcs[aid - 1].1;
        if !seen.insert(cur) {
            return None;
        }
    }
    (out.len() == arcs.len()).then_some(out)
}

/// Doubling construction from (1,2)-TSP: every source edge becomes a red
/// and a blue parallel copy. Any properly colored forest of the target maps
/// back to a linear forest of the source.
#[derive(Debug, Clone)]
pub struct Tsp12Doubling {
    pub source: UncoloredGraph,
    pub target: ColoredMultigraph,
    pub roles: Vec<EdgeRole>,
}

pub fn gen_tsp12_doubling(source: &UncoloredGraph) -> Result<Tsp12Doubling, GenError> {
    check_simple(source)?;
    let mut triples = Vec::new();
    let mut roles = Vec::new();
    for (idx, &(u, v)) in source.edges.iter().enumerate() {
        triples.push((u, v, RED));
        roles.push(EdgeRole::SourceCopy { id: idx + 1 });
        triples.push((u, v, BLUE));
        roles.push(EdgeRole::SourceCopy { id: idx + 1 });
    }
    let target = ColoredMultigraph::new(source.n, 2, false, &triples).map_err(GenError::Graph)?;
    Ok(Tsp12Doubling {
        source: source.clone(),
        target,
        roles,
    })
}

impl Tsp12Doubling {
    /// Maps target forest edges to their source edges; the result is a
    /// linear forest of the source of the same size.
    pub fn backward(&self, forest: &EdgeSubset) -> Result<Vec<usize>, GenError> {
        let verdict = self
            .target
            .verify_pc_forest(forest)
            .map_err(GenError::Graph)?;
        if !verdict.is_valid() {
            return Err(GenError::BadSolution(verdict.to_string()));
        }
        let mut out: Vec<usize> = forest
            .iter()
            .map(|id| match self.roles[id - 1] {
                EdgeRole::SourceCopy { id: sid } => sid,
                _ => unreachable!("doubling has only copy edges"),
            })
            .collect();
        out.sort_unstable();
        let before = out.len();
        out.dedup();
        assert_eq!(
            before,
            out.len(),
            "both copies of one edge cannot be a forest"
        );
        assert!(
            is_linear_forest(&self.source, &out),
            "backward map produced a non-linear source solution"
        );
        Ok(out)
    }
}

/// Formats a back-map sidecar file: one `m <edge-id> <role>` line per
/// target edge, where role is `copy <source-id>`, `gadget <vertex>`, or
/// `completion`.
pub fn backmap_text(roles: &[EdgeRole]) -> String {
    let mut out = String::new();
    for (idx, role) in roles.iter().enumerate() {
        let line = match role {
            EdgeRole::SourceCopy { id } => format!("m {} copy {}\n", idx + 1, id),
            EdgeRole::Gadget { v } => format!("m {} gadget {}\n", idx + 1, v),
            EdgeRole::Completion => format!("m {} completion\n", idx + 1),
        };
        out.push_str(&line);
    }
    out
}
