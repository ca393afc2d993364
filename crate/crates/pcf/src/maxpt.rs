//! Approximation algorithm for the maximum properly colored tree in
//! complete multigraphs: a `1/sqrt((2+eps)(n-1))` guarantee built on a
//! vertex bipartition in which one side carries a properly colored spanning
//! tree and the other is solved exactly.
//!
//! The bipartition itself is an injection point: the default oracle does an
//! exhaustive search over bipartitions with brute-force verification of
//! both sides and is enabled only for n <= 9; callers may supply a
//! partition computed externally.

use crate::graph::{Color, ColoredMultigraph, EdgeId, EdgeSubset, SEdge, SimpleGraph, VertexId};
use crate::matching;
use crate::oracle;
use crate::ratio::Ratio;
use crate::solvers::SolveReport;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

pub use crate::oracle::brute_maxpt;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MaxPtError {
    #[error("epsilon must be positive")]
    EpsNonPositive,
    #[error("algorithm requires a complete multigraph")]
    NotComplete,
    #[error("partition oracle unavailable: {0}")]
    OracleUnavailable(String),
    #[error("partition oracle output invalid: {0}")]
    OracleInvalid(String),
    #[error(transparent)]
    Oracle(oracle::OracleError),
    #[error(transparent)]
    Graph(crate::graph::GraphError),
}

/// A bipartition `V = V1 ∪ V2` with a properly colored spanning tree of
/// `G[V1]` and a maximum-size properly colored tree of `G[V2]`. Either side
/// may be empty; the solver then short-circuits to the other side.
#[derive(Debug, Clone)]
pub struct Partition {
    pub v1: Vec<VertexId>,
    pub v2: Vec<VertexId>,
    pub f1: EdgeSubset,
    pub f2: EdgeSubset,
}

/// Source of the bipartition used by the approximation branch.
pub trait PartitionOracle {
    fn partition(&self, g: &ColoredMultigraph) -> Result<Partition, MaxPtError>;
}

/// Exhaustive bipartition search with brute-force solves of both sides.
/// Only enabled up to the given vertex bound (default 9). Among valid
/// partitions it picks the one with the largest `V1`, lowest bitmask first.
pub struct BruteForcePartitionOracle {
    pub max_n: usize,
    pub cap: usize,
}

impl Default for BruteForcePartitionOracle {
    fn default() -> Self {
        BruteForcePartitionOracle { max_n: 9, cap: 200 }
    }
}

impl PartitionOracle for BruteForcePartitionOracle {
    fn partition(&self, g: &ColoredMultigraph) -> Result<Partition, MaxPtError> {
        if g.n() > self.max_n {
            return Err(MaxPtError::OracleUnavailable(format!(
                "exhaustive bipartition search is enabled only for n <= {}",
                self.max_n
            )));
        }
        let n = g.n();
        let mut best: Option<(usize, u64, Partition)> = None;
        for mask in 0..(1u64 << n) {
            let v1: Vec<VertexId> = (1..=n).filter(|v| mask >> (v - 1) & 1 == 1).collect();
            if let Some((size, prev_mask, _)) = &best {
                if v1.len() < *size || (v1.len() == *size && mask > *prev_mask) {
                    continue;
                }
            }
            let Some(f1) = spanning_pc_tree(g, &v1, self.cap) else {
                continue;
            };
            let v2: Vec<VertexId> = (1..=n).filter(|v| mask >> (v - 1) & 1 == 0).collect();
            let f2 = maxpt_of_induced(g, &v2, self.cap).map_err(MaxPtError::Oracle)?;
            best = Some((v1.len(), mask, Partition { v1, v2, f1, f2 }));
        }
        let (_, _, p) = best.expect("the empty side is always feasible");
        Ok(p)
    }
}

/// Oracle for an externally supplied `V1`: both sides are still solved by
/// brute force.
pub struct FixedPartitionOracle {
    pub v1: Vec<VertexId>,
    pub cap: usize,
}

impl PartitionOracle for FixedPartitionOracle {
    fn partition(&self, g: &ColoredMultigraph) -> Result<Partition, MaxPtError> {
        let v1set: BTreeSet<VertexId> = self.v1.iter().copied().collect();
        for &v in &v1set {
            if v == 0 || v > g.n() {
                return Err(MaxPtError::OracleInvalid(format!(
                    "vertex {v} out of range"
                )));
            }
        }
        let v1: Vec<VertexId> = v1set.iter().copied().collect();
        let v2: Vec<VertexId> = (1..=g.n()).filter(|v| !v1set.contains(v)).collect();
        let f1 = spanning_pc_tree(g, &v1, self.cap).ok_or_else(|| {
            MaxPtError::OracleInvalid("G[V1] has no properly colored spanning tree".into())
        })?;
        let f2 = maxpt_of_induced(g, &v2, self.cap).map_err(MaxPtError::Oracle)?;
        Ok(Partition { v1, v2, f1, f2 })
    }
}

// Properly colored spanning tree of G[vs] by brute force, if one exists.
// A PC forest of G[vs] with |vs| - 1 edges is automatically a spanning
// tree, so the forest oracle suffices.
fn spanning_pc_tree(g: &ColoredMultigraph, vs: &[VertexId], cap: usize) -> Option<EdgeSubset> {
    if vs.len() <= 1 {
        return Some(EdgeSubset::default());
    }
    let set: BTreeSet<VertexId> = vs.iter().copied().collect();
    let res = oracle::brute_opt_restricted(g, &set, cap).ok()?;
    if res.optimum + 1 != vs.len() {
        return None;
    }
    let comps = g.components(&res.witness).unwrap();
    assert!(comps.len() == 1 && comps[0].len() == vs.len());
    Some(res.witness)
}

// Maximum PC tree of G[vs], reported in host edge ids.
fn maxpt_of_induced(
    g: &ColoredMultigraph,
    vs: &[VertexId],
    cap: usize,
) -> Result<EdgeSubset, oracle::OracleError> {
    if vs.is_empty() {
        return Ok(EdgeSubset::default());
    }
    let set: BTreeSet<VertexId> = vs.iter().copied().collect();
    let ids = g.edge_ids_induced(&set);
    if ids.len() > cap {
        return Err(oracle::OracleError::CapExceeded {
            edges: ids.len(),
            cap,
        });
    }
    let triples: Vec<(VertexId, VertexId, Color)> = ids
        .iter()
        .map(|&id| {
            let e = g.edge(id).unwrap();
            (e.u, e.v, e.color)
        })
        .collect();
    let induced = ColoredMultigraph::new(g.n(), g.k(), false, &triples)
        .map_err(oracle::OracleError::Graph)?;
    let res = oracle::brute_maxpt(&induced, cap)?;
    Ok(res.witness.iter().map(|local| ids[local - 1]).collect())
}

/// Keeps at most `n` parallel edges between every vertex pair (lowest ids
/// survive). The optimum is unchanged: a properly colored tree uses degrees
/// below `n`, so a deleted edge always has a surviving twin of a usable
/// color. Returns the pruned graph and the original id of each new edge.
pub fn prune_parallel(g: &ColoredMultigraph) -> (ColoredMultigraph, Vec<EdgeId>) {
    let n = g.n();
    let mut counts: BTreeMap<(VertexId, VertexId), usize> = BTreeMap::new();
    let mut triples = Vec::new();
    let mut original = Vec::new();
    for e in g.edges() {
        let c = counts.entry(e.pair()).or_default();
        if *c < n {
            *c += 1;
            triples.push((e.u, e.v, e.color));
            original.push(e.id);
        }
    }
    let pruned = ColoredMultigraph::new(n, g.k(), g.simple_flag(), &triples)
        .expect("pruning preserves validity");
    (pruned, original)
}

/// The bipartite graph `H = (S, T; W)` of the approximation branch:
/// `S` holds one node per `(v, i)` with `v ∈ V1` and color `i` unused at
/// `v` in `F1`; `T` holds the vertices of `V2`; `(v,i)` and `u` are joined
/// when some edge `uv` of color `i` exists.
#[derive(Debug, Clone)]
pub struct BipartiteH {
    pub s_nodes: Vec<(VertexId, Color)>,
    pub t_nodes: Vec<VertexId>,
    /// `(s index, t index, lowest host edge id realizing the pair)`.
    pub edges: Vec<(usize, usize, EdgeId)>,
}

/// Builds `H` from a validated partition side. Fails if `f1` is not a
/// properly colored spanning tree of `G[V1]`.
pub fn build_bipartite_h(
    g: &ColoredMultigraph,
    v1: &[VertexId],
    v2: &[VertexId],
    f1: &EdgeSubset,
) -> Result<BipartiteH, MaxPtError> {
    validate_f1(g, v1, f1)?;
    let v1set: BTreeSet<VertexId> = v1.iter().copied().collect();
    let v2set: BTreeSet<VertexId> = v2.iter().copied().collect();
    let mut used: BTreeMap<VertexId, BTreeSet<Color>> = BTreeMap::new();
    for id in f1.iter() {
        let e = g.edge(id).map_err(MaxPtError::Graph)?;
        used.entry(e.u).or_default().insert(e.color);
        used.entry(e.v).or_default().insert(e.color);
    }
    let mut s_nodes = Vec::new();
    for &v in &v1set {
        for i in 1..=g.k() {
            if !used.get(&v).map(|s| s.contains(&i)).unwrap_or(false) {
                s_nodes.push((v, i));
            }
        }
    }
    let t_nodes: Vec<VertexId> = v2set.iter().copied().collect();
    let mut pair_edge: BTreeMap<(usize, usize), EdgeId> = BTreeMap::new();
    for e in g.edges() {
        let (v, u) = if v1set.contains(&e.u) && v2set.contains(&e.v) {
            (e.u, e.v)
        } else if v1set.contains(&e.v) && v2set.contains(&e.u) {
            (e.v, e.u)
        } else {
            continue;
        };
        let Some(si) = s_nodes.iter().position(|&(w, i)| w == v && i == e.color) else {
            continue;
        };
        let ti = t_nodes.iter().position(|&w| w == u).unwrap();
        pair_edge.entry((si, ti)).or_insert(e.id);
    }
    let edges = pair_edge
        .into_iter()
        .map(|((s, t), id)| (s, t, id))
        .collect();
    Ok(BipartiteH {
        s_nodes,
        t_nodes,
        edges,
    })
}

fn validate_f1(g: &ColoredMultigraph, v1: &[VertexId], f1: &EdgeSubset) -> Result<(), MaxPtError> {
    let verdict = g.verify_pc_forest(f1).map_err(MaxPtError::Graph)?;
    if !verdict.is_valid() {
        return Err(MaxPtError::OracleInvalid(format!(
            "F1 is not a PC forest: {verdict}"
        )));
    }
    if v1.len() <= 1 {
        if !f1.is_empty() {
            return Err(MaxPtError::OracleInvalid(
                "F1 must be empty for |V1| <= 1".into(),
            ));
        }
        return Ok(());
    }
    if f1.len() + 1 != v1.len() {
        return Err(MaxPtError::OracleInvalid("F1 is not spanning".into()));
    }
    let v1set: BTreeSet<VertexId> = v1.iter().copied().collect();
    for id in f1.iter() {
        let e = g.edge(id).map_err(MaxPtError::Graph)?;
        if !v1set.contains(&e.u) || !v1set.contains(&e.v) {
            return Err(MaxPtError::OracleInvalid("F1 leaves V1".into()));
        }
    }
    let comps = g.components(f1).map_err(MaxPtError::Graph)?;
    if comps.len() != 1 || comps[0].len() != v1.len() {
        return Err(MaxPtError::OracleInvalid("F1 is not connected".into()));
    }
    Ok(())
}

/// Maps a matching of `H` back to the forest `F12`: one host edge per
/// matched pair, at most one per `V2` vertex, colors unused at the `V1`
/// endpoints. `F1 ∪ F12` stays a properly colored tree.
pub fn forest_from_h_matching(h: &BipartiteH, pairs: &[(usize, usize)]) -> EdgeSubset {
    let mut s_used = BTreeSet::new();
    let mut t_used = BTreeSet::new();
    for &(s, t) in pairs {
        assert!(
            s_used.insert(s) && t_used.insert(t),
            "input is not a matching of H"
        );
    }
    pairs
        .iter()
        .map(|&(s, t)| {
            h.edges
                .iter()
                .find(|&&(es, et, _)| es == s && et == t)
                .expect("matched pair is not an H-edge")
                .2
        })
        .collect()
}

// Maximum matching of H via the general engine on a synthetic graph.
fn max_matching_of_h(h: &BipartiteH) -> Vec<(usize, usize)> {
    let ns = h.s_nodes.len();
    let nt = h.t_nodes.len();
    let edges: Vec<SEdge> = h
        .edges
        .iter()
        .enumerate()
        .map(|(idx, &(s, t, _))| SEdge {
            id: idx + 1,
            u: s + 1,
            v: ns + t + 1,
        })
        .collect();
    let sg = SimpleGraph::new(ns + nt, edges);
    let m = matching::max_matching(&sg);
    m.edge_ids()
        .iter()
        .map(|&id| {
            let (s, t, _) = h.edges[id - 1];
            (s, t)
        })
        .collect()
}

/// Threshold check `n < n_eps` with `n_eps = (eps^2 + 9 eps + 18) / eps^2`,
/// in exact integer arithmetic for `eps = p/q`.
pub fn below_threshold(n: usize, eps: Ratio) -> bool {
    let p = eps.num() as u128;
    let q = eps.den() as u128;
    (n as u128) * p * p < p * p + 9 * p * q + 18 * q * q
}

/// The approximation inequality `size * sqrt((2+eps)(n-1)) >= opt`, checked
/// in squared integer arithmetic.
pub fn meets_sqrt_guarantee(size: usize, opt: usize, n: usize, eps: Ratio) -> bool {
    let p = eps.num() as u128;
    let q = eps.den() as u128;
    let lhs = (size as u128) * (size as u128) * (2 * q + p) * ((n - 1) as u128);
    let rhs = (opt as u128) * (opt as u128) * q;
    lhs >= rhs
}

/// Algorithm for maximum properly colored trees in complete multigraphs.
///
/// After pruning excess parallel edges, instances with `n < n_eps` are
/// solved exactly by enumeration. Otherwise the partition oracle supplies
/// `(V1, V2, F1, F2)`; a maximum matching of `H` yields the extension
/// forest `F12`, and the larger of `F1 ∪ F12` and `F2` is returned.
pub fn solve_maxpt(
    g: &ColoredMultigraph,
    eps: Ratio,
    oracle_impl: &dyn PartitionOracle,
    cap: usize,
) -> Result<SolveReport, MaxPtError> {
    if eps.is_zero() {
        return Err(MaxPtError::EpsNonPositive);
    }
    if !g.is_complete_multigraph() {
        return Err(MaxPtError::NotComplete);
    }
    let (pruned, original_ids) = prune_parallel(g);
    let to_host =
        |f: &EdgeSubset| -> EdgeSubset { f.iter().map(|id| original_ids[id - 1]).collect() };

    if below_threshold(g.n(), eps) {
        let res = oracle::brute_maxpt(&pruned, cap).map_err(MaxPtError::Oracle)?;
        return Ok(finish_tree_report(g, "maxpt/brute", to_host(&res.witness)));
    }

    let part = oracle_impl.partition(&pruned)?;
    let tree = solve_maxpt_partition_branch(&pruned, &part)?;
    Ok(finish_tree_report(g, "maxpt/partition", to_host(&tree)))
}

/// The partition branch in isolation (used directly by the ratio tests):
/// given a valid partition of `g`, returns the larger of `F1 ∪ F12` and
/// `F2` in `g`'s edge ids.
pub fn solve_maxpt_partition_branch(
    g: &ColoredMultigraph,
    part: &Partition,
) -> Result<EdgeSubset, MaxPtError> {
    // Disjointness and coverage of the bipartition.
    let mut seen: BTreeSet<VertexId> = BTreeSet::new();
    for &v in part.v1.iter().chain(part.v2.iter()) {
        if v == 0 || v > g.n() || !seen.insert(v) {
            return Err(MaxPtError::OracleInvalid(format!(
                "bad bipartition at vertex {v}"
            )));
        }
    }
    if seen.len() != g.n() {
        return Err(MaxPtError::OracleInvalid(
            "bipartition does not cover V".into(),
        ));
    }
    // Degenerate sides short-circuit to the other side's exact solution.
    if part.v2.is_empty() {
        validate_f1(g, &part.v1, &part.f1)?;
        return Ok(part.f1.clone());
    }
    if part.v1.is_empty() {
        validate_f2(g, &part.v2, &part.f2)?;
        return Ok(part.f2.clone());
    }
    validate_f1(g, &part.v1, &part.f1)?;
    validate_f2(g, &part.v2, &part.f2)?;

    let h = build_bipartite_h(g, &part.v1, &part.v2, &part.f1)?;
    let pairs = max_matching_of_h(&h);
    let f12 = forest_from_h_matching(&h, &pairs);
    let combined: EdgeSubset = part.f1.iter().chain(f12.iter()).collect();
    // Selection rule: prefer F1 ∪ F12 on ties.
    if combined.len() >= part.f2.len() {
        Ok(combined)
    } else {
        Ok(part.f2.clone())
    }
}

fn validate_f2(g: &ColoredMultigraph, v2: &[VertexId], f2: &EdgeSubset) -> Result<(), MaxPtError> {
    let verdict = g.verify_pc_forest(f2).map_err(MaxPtError::Graph)?;
    if !verdict.is_valid() {
        return Err(MaxPtError::OracleInvalid(format!(
            "F2 is not a PC forest: {verdict}"
        )));
    }
    let v2set: BTreeSet<VertexId> = v2.iter().copied().collect();
    for id in f2.iter() {
        let e = g.edge(id).map_err(MaxPtError::Graph)?;
        if !v2set.contains(&e.u) || !v2set.contains(&e.v) {
            return Err(MaxPtError::OracleInvalid("F2 leaves V2".into()));
        }
    }
    let comps = g.components(f2).map_err(MaxPtError::Graph)?;
    if comps.len() > 1 {
        return Err(MaxPtError::OracleInvalid("F2 is not connected".into()));
    }
    Ok(())
}

fn finish_tree_report(
    g: &ColoredMultigraph,
    algorithm: &'static str,
    tree: EdgeSubset,
) -> SolveReport {
    let verdict = g.verify_pc_forest(&tree).unwrap();
    assert!(
        verdict.is_valid(),
        "maxpt output failed verification: {verdict}"
    );
    let comps = g.components(&tree).unwrap();
    assert!(comps.len() <= 1, "maxpt output is disconnected");
    let size = tree.len();
    SolveReport {
        algorithm,
        forest: tree,
        size,
        upper_bounds: vec![("vertices-minus-one", g.n().saturating_sub(1))],
        iterations: 0,
    }
}
