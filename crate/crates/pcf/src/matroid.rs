//! Sum of the k matching matroids defined by the color classes: maximum
//! matching-coverable sets, coverability queries, and the forced-edge
//! variants used by the local improvement steps of the general solver.
//!
//! The union is computed with the classic augmenting (labeling) framework
//! over the per-color matching-matroid independence oracles. Elements are
//! inserted in ascending vertex order and labels are scanned FIFO, so the
//! outcome is deterministic. Parts are produced lowest-color-first; other
//! valid certificates for the same graph may differ.

use crate::graph::{ColoredMultigraph, EdgeId, SimpleGraph, VertexId};
use crate::matching::{self, Matching};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatroidError {
    #[error("forced edge {0} is not in its restricted color class")]
    ForcedEdgeNotInClass(EdgeId),
    #[error("restricted class {0} contains edge {1} of a different color")]
    RestrictedClassColorMismatch(usize, EdgeId),
    #[error("forced edges {0} and {1} must share exactly one endpoint")]
    ForcedEdgesShareWrong(EdgeId, EdgeId),
    #[error("forced edges {0} and {1} must have distinct colors")]
    ForcedEdgesSameColor(EdgeId, EdgeId),
    #[error("expected 1 or 2 forced edges, got {0}")]
    ForcedEdgeCount(usize),
    #[error(transparent)]
    Graph(crate::graph::GraphError),
}

/// A maximum matching-coverable set `U` together with a partition into parts
/// independent in the per-color matching matroids and per-color matchings
/// covering them.
#[derive(Debug, Clone)]
pub struct CoverCertificate {
    /// The coverable set, sorted.
    pub u: Vec<VertexId>,
    /// `parts[i]` is covered by `matchings[i]`; parts partition `u`.
    pub parts: Vec<Vec<VertexId>>,
    /// `matchings[i]` is a maximum matching of color class `i+1`.
    pub matchings: Vec<Matching>,
}

impl CoverCertificate {
    /// Edge ids of the union of the per-color matchings, ascending.
    pub fn union_edges(&self) -> Vec<EdgeId> {
        let mut ids: Vec<EdgeId> = self
            .matchings
            .iter()
            .flat_map(|m| m.edge_ids().iter().copied())
            .collect();
        ids.sort_unstable();
        ids
    }

    /// Checks every certificate invariant against the host graph; panics on
    /// violation. Used by tests and the solvers' internal audits.
    pub fn assert_valid(&self, g: &ColoredMultigraph) {
        assert_eq!(self.parts.len(), g.k());
        assert_eq!(self.matchings.len(), g.k());
        let mut seen = BTreeSet::new();
        for part in &self.parts {
            for &v in part {
                assert!(seen.insert(v), "parts overlap at vertex {v}");
            }
        }
        assert_eq!(seen.into_iter().collect::<Vec<_>>(), self.u);
        let mut covered_all: BTreeSet<VertexId> = BTreeSet::new();
        for (i, m) in self.matchings.iter().enumerate() {
            let class = g.color_class(i + 1).unwrap();
            let nu = matching::matching_number(&class);
            assert_eq!(m.len(), nu, "matching for color {} is not maximum", i + 1);
            let mut covered: BTreeSet<VertexId> = BTreeSet::new();
            for id in m.as_subset().iter() {
                let e = g.edge(id).unwrap();
                assert_eq!(e.color, i + 1, "matching edge of wrong color");
                covered.insert(e.u);
                covered.insert(e.v);
            }
            for &v in &self.parts[i] {
                assert!(
                    covered.contains(&v),
                    "part vertex {v} uncovered by its matching"
                );
            }
            covered_all.extend(covered);
        }
        for &v in &self.u {
            assert!(covered_all.contains(&v));
        }
    }
}

// Independence in the matching matroid of `class`: some matching covers all
// of `x`.
fn indep(class: &SimpleGraph, x: &BTreeSet<VertexId>) -> bool {
    matching::covers(class, x)
}

// One augmentation attempt of the matroid-partition labeling algorithm: try
// to extend the disjoint independent parts with element `s`. Arcs go from a
// labeled element x to the elements of the circuit of x in part i; a
// breakthrough happens at any x insertable into some part.
fn try_insert(classes: &[SimpleGraph], parts: &mut [BTreeSet<VertexId>], s: VertexId) -> bool {
    let k = classes.len();
    let mut pred: BTreeMap<VertexId, (VertexId, usize)> = BTreeMap::new();
    let mut labeled: BTreeSet<VertexId> = BTreeSet::from([s]);
    let mut queue: VecDeque<VertexId> = VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        for i in 0..k {
            if parts[i].contains(&x) {
                continue;
            }
            parts[i].insert(x);
            if indep(&classes[i], &parts[i]) {
                // Breakthrough: x enters part i; unwind the label chain.
                let mut cur = x;
                while let Some(&(px, pi)) = pred.get(&cur) {
                    // cur had been reached by removing it from part pi in
                    // favor of px.
                    parts[pi].remove(&cur);
                    parts[pi].insert(px);
                    cur = px;
                }
                debug_assert_eq!(cur, s);
                return true;
            }
            // Dependent: label the unlabeled circuit elements of x in part i.
            let members: Vec<VertexId> = parts[i].iter().copied().filter(|&y| y != x).collect();
            for y in members {
                if labeled.contains(&y) {
                    continue;
                }
                parts[i].remove(&y);
                let in_circuit = indep(&classes[i], &parts[i]);
                parts[i].insert(y);
                if in_circuit {
                    labeled.insert(y);
                    pred.insert(y, (x, i));
                    queue.push_back(y);
                }
            }
            parts[i].remove(&x);
        }
    }
    false
}

// Greedy maximum independent set of the matroid sum over the listed
// elements, with its partition into per-color independent parts.
fn greedy_parts(classes: &[SimpleGraph], elements: &[VertexId]) -> Vec<BTreeSet<VertexId>> {
    let mut parts = vec![BTreeSet::new(); classes.len()];
    for &v in elements {
        let _ = try_insert(classes, &mut parts, v);
    }
    for (i, part) in parts.iter().enumerate() {
        assert!(indep(&classes[i], part), "part {i} lost independence");
    }
    parts
}

/// A maximum-size set independent in the sum of the k matching matroids,
/// with the parts upgraded to maximum matchings of their color classes.
pub fn max_coverable_set(g: &ColoredMultigraph) -> CoverCertificate {
    let classes: Vec<SimpleGraph> = (1..=g.k()).map(|i| g.color_class(i).unwrap()).collect();
    let elements: Vec<VertexId> = g.vertices().collect();
    let parts = greedy_parts(&classes, &elements);
    let u: BTreeSet<VertexId> = parts.iter().flatten().copied().collect();
    let mut matchings = Vec::with_capacity(classes.len());
    let mut covered: BTreeSet<VertexId> = BTreeSet::new();
    for (i, class) in classes.iter().enumerate() {
        let m = matching::max_matching_covering(class, &parts[i])
            .expect("independent part must be coverable");
        for id in m.as_subset().iter() {
            let e = g.edge(id).unwrap();
            covered.insert(e.u);
            covered.insert(e.v);
        }
        matchings.push(m);
    }
    // Upgrading to maximum matchings cannot reach vertices outside U: the
    // covered set is itself matching-coverable and U has maximum size.
    assert_eq!(
        covered, u,
        "maximum matchings must cover exactly the maximum coverable set"
    );
    CoverCertificate {
        u: u.into_iter().collect(),
        parts: parts.into_iter().map(|p| p.into_iter().collect()).collect(),
        matchings,
    }
}

/// Rank of `z` in the sum of the k matching matroids: the size of a
/// maximum matching-coverable subset of `z`. Satisfies the Edmonds and
/// Fulkerson formula `min { Σ_i r_i(X) + |Z \ X| : X ⊆ Z }`.
pub fn sum_rank(g: &ColoredMultigraph, z: &BTreeSet<VertexId>) -> usize {
    let classes: Vec<SimpleGraph> = (1..=g.k()).map(|i| g.color_class(i).unwrap()).collect();
    let elements: Vec<VertexId> = z.iter().copied().collect();
    greedy_parts(&classes, &elements)
        .iter()
        .map(|p| p.len())
        .sum()
}

/// Decides whether `t` is matching-coverable; on success returns witness
/// matchings `N_i ⊆ E_i` with `t ⊆ V(∪N_i)`. Witnesses are pruned to the
/// edges needed for covering `t`.
pub fn coverable(g: &ColoredMultigraph, t: &BTreeSet<VertexId>) -> Option<Vec<Matching>> {
    let classes: Vec<SimpleGraph> = (1..=g.k()).map(|i| g.color_class(i).unwrap()).collect();
    coverable_in_classes(&classes, t).map(|n| prune_witness(g, &classes, n, t, &[]))
}

fn coverable_in_classes(classes: &[SimpleGraph], t: &BTreeSet<VertexId>) -> Option<Vec<Matching>> {
    let elements: Vec<VertexId> = t.iter().copied().collect();
    let parts = greedy_parts(classes, &elements);
    let got: usize = parts.iter().map(|p| p.len()).sum();
    if got != t.len() {
        return None;
    }
    let witnesses = classes
        .iter()
        .zip(&parts)
        .map(|(class, part)| {
            matching::max_matching_covering(class, part).expect("independent part is coverable")
        })
        .collect();
    Some(witnesses)
}

// Drops witness edges (highest id first) whose removal keeps every vertex of
// `t` covered; edges in `keep` are never dropped.
fn prune_witness(
    g: &ColoredMultigraph,
    classes: &[SimpleGraph],
    witnesses: Vec<Matching>,
    t: &BTreeSet<VertexId>,
    keep: &[EdgeId],
) -> Vec<Matching> {
    let mut sets: Vec<BTreeSet<EdgeId>> = witnesses
        .iter()
        .map(|m| m.edge_ids().iter().copied().collect())
        .collect();
    let mut cover_count: BTreeMap<VertexId, usize> = BTreeMap::new();
    for set in &sets {
        for &id in set.iter() {
            let e = g.edge(id).unwrap();
            *cover_count.entry(e.u).or_default() += 1;
            *cover_count.entry(e.v).or_default() += 1;
        }
    }
    let mut all_ids: Vec<(EdgeId, usize)> = sets
        .iter()
        .enumerate()
        .flat_map(|(i, s)| s.iter().map(move |&id| (id, i)))
        .collect();
    all_ids.sort_unstable_by_key(|&(id, _)| std::cmp::Reverse(id));
    for (id, i) in all_ids {
        if keep.contains(&id) {
            continue;
        }
        let e = g.edge(id).unwrap();
        let needed = [e.u, e.v]
            .iter()
            .any(|v| t.contains(v) && cover_count.get(v).copied().unwrap_or(0) == 1);
        if !needed {
            sets[i].remove(&id);
            *cover_count.get_mut(&e.u).unwrap() -= 1;
            *cover_count.get_mut(&e.v).unwrap() -= 1;
        }
    }
    sets.into_iter()
        .enumerate()
        .map(|(i, s)| Matching::new(&classes[i], &s.into_iter().collect::<Vec<_>>()))
        .collect()
}

/// Coverability of `t` by matchings `N_i` inside the restricted per-color
/// edge sets `restricted[i] ⊆ E_{i+1}`, with every forced edge contained in
/// its color's matching. Returns the witness matchings (forced edges
/// included) or `None` when infeasible.
///
/// Forced edges are handled by deleting their endpoints from their own
/// restricted class and from `t`; the query then reduces to plain
/// coverability.
pub fn coverable_with_forced(
    g: &ColoredMultigraph,
    restricted: &[Vec<EdgeId>],
    forced: &[EdgeId],
    t: &BTreeSet<VertexId>,
) -> Result<Option<Vec<Matching>>, MatroidError> {
    assert_eq!(restricted.len(), g.k(), "one restricted class per color");
    if forced.is_empty() || forced.len() > 2 {
        return Err(MatroidError::ForcedEdgeCount(forced.len()));
    }
    for (i, class) in restricted.iter().enumerate() {
        for &id in class {
            let e = g.edge(id).map_err(MatroidError::Graph)?;
            if e.color != i + 1 {
                return Err(MatroidError::RestrictedClassColorMismatch(i + 1, id));
            }
        }
    }
    let mut forced_edges = Vec::new();
    for &id in forced {
        let e = g.edge(id).map_err(MatroidError::Graph)?;
        if !restricted[e.color - 1].contains(&id) {
            return Err(MatroidError::ForcedEdgeNotInClass(id));
        }
        forced_edges.push(*e);
    }
    if forced_edges.len() == 2 {
        let (a, b) = (forced_edges[0], forced_edges[1]);
        let shared: Vec<VertexId> = [a.u, a.v]
            .iter()
            .filter(|x| b.touches(**x))
            .copied()
            .collect();
        if shared.len() != 1 {
            return Err(MatroidError::ForcedEdgesShareWrong(a.id, b.id));
        }
        if a.color == b.color {
            return Err(MatroidError::ForcedEdgesSameColor(a.id, b.id));
        }
    }

    // Build the reduced classes and target set.
    let mut blocked: Vec<BTreeSet<VertexId>> = vec![BTreeSet::new(); g.k()];
    let mut t_rest = t.clone();
    for e in &forced_edges {
        blocked[e.color - 1].insert(e.u);
        blocked[e.color - 1].insert(e.v);
        t_rest.remove(&e.u);
        t_rest.remove(&e.v);
    }
    let classes: Vec<SimpleGraph> = restricted
        .iter()
        .enumerate()
        .map(|(i, ids)| {
            let edges = ids
                .iter()
                .map(|&id| *g.edge(id).unwrap())
                .filter(|e| !blocked[i].contains(&e.u) && !blocked[i].contains(&e.v))
                .map(|e| crate::graph::SEdge {
                    id: e.id,
                    u: e.u,
                    v: e.v,
                })
                .collect();
            SimpleGraph::new(g.n(), edges)
        })
        .collect();

    let Some(witnesses) = coverable_in_classes(&classes, &t_rest) else {
        return Ok(None);
    };
    // Re-attach the forced edges and prune, never dropping forced edges.
    let full_classes: Vec<SimpleGraph> = restricted
        .iter()
        .map(|ids| {
            let edges = ids
                .iter()
                .map(|&id| {
                    let e = g.edge(id).unwrap();
                    crate::graph::SEdge {
                        id: e.id,
                        u: e.u,
                        v: e.v,
                    }
                })
                .collect();
            SimpleGraph::new(g.n(), edges)
        })
        .collect();
    let mut sets: Vec<Vec<EdgeId>> = witnesses.iter().map(|m| m.edge_ids().to_vec()).collect();
    for e in &forced_edges {
        sets[e.color - 1].push(e.id);
    }
    let rebuilt: Vec<Matching> = sets
        .iter()
        .enumerate()
        .map(|(i, ids)| Matching::new(&full_classes[i], ids))
        .collect();
    let mut t_full = t.clone();
    for e in &forced_edges {
        t_full.insert(e.u);
        t_full.insert(e.v);
    }
    Ok(Some(prune_witness(
        g,
        &full_classes,
        rebuilt,
        &t_full,
        forced,
    )))
}

/// Union of the witness matchings as a sorted edge-id list.
pub fn witness_edges(witnesses: &[Matching]) -> Vec<EdgeId> {
    let mut ids: Vec<EdgeId> = witnesses
        .iter()
        .flat_map(|m| m.edge_ids().iter().copied())
        .collect();
    ids.sort_unstable();
    ids
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::graph::ColoredMultigraph;

    fn g(n: usize, k: usize, edges: &[(usize, usize, usize)]) -> ColoredMultigraph {
        ColoredMultigraph::new(n, k, false, edges).unwrap()
    }

    // Brute-force: maximize |V(∪M_i)| over all per-color matching tuples.
    pub(crate) fn brute_max_coverage(g: &ColoredMultigraph) -> usize {
        fn matchings_of(class: &[(usize, usize)]) -> Vec<Vec<usize>> {
            fn rec(
                class: &[(usize, usize)],
                idx: usize,
                used: &mut BTreeSet<usize>,
                out: &mut Vec<Vec<usize>>,
            ) {
                if idx == class.len() {
                    out.push(used.iter().copied().collect());
                    return;
                }
                rec(class, idx + 1, used, out);
                let (u, v) = class[idx];
                if !used.contains(&u) && !used.contains(&v) {
                    used.insert(u);
                    used.insert(v);
                    rec(class, idx + 1, used, out);
                    used.remove(&u);
                    used.remove(&v);
                }
            }
            let mut out = Vec::new();
            rec(class, 0, &mut BTreeSet::new(), &mut out);
            out
        }
        let per_color: Vec<Vec<Vec<usize>>> = (1..=g.k())
            .map(|i| {
                let class: Vec<(usize, usize)> = g
                    .edges()
                    .iter()
                    .filter(|e| e.color == i)
                    .map(|e| (e.u, e.v))
                    .collect();
                matchings_of(&class)
            })
            .collect();
        fn combine(
            per_color: &[Vec<Vec<usize>>],
            idx: usize,
            covered: &mut BTreeSet<usize>,
        ) -> usize {
            if idx == per_color.len() {
                return covered.len();
            }
            let mut best = 0;
            for choice in &per_color[idx] {
                let added: Vec<usize> = choice
                    .iter()
                    .filter(|v| covered.insert(**v))
                    .copied()
                    .collect();
                best = best.max(combine(per_color, idx + 1, covered));
                for v in added {
                    covered.remove(&v);
                }
            }
            best
        }
        combine(&per_color, 0, &mut BTreeSet::new())
    }

    #[test]
    fn one_color_path_is_fully_coverable() {
        let graph = g(4, 1, &[(1, 2, 1), (2, 3, 1), (3, 4, 1)]);
        let cert = max_coverable_set(&graph);
        cert.assert_valid(&graph);
        assert_eq!(cert.u, vec![1, 2, 3, 4]);
        assert_eq!(cert.matchings[0].edge_ids(), &[1, 3]);
    }

    #[test]
    fn one_color_star_covers_two() {
        let graph = g(4, 1, &[(1, 2, 1), (1, 3, 1), (1, 4, 1)]);
        let cert = max_coverable_set(&graph);
        cert.assert_valid(&graph);
        assert_eq!(cert.u.len(), 2);
    }

    #[test]
    fn two_color_star_covers_three() {
        // Star K_{1,3}, center 1; leaf edges colored 1,1,2. All edges meet
        // at the center, so each color contributes at most one edge: the
        // brute-force maximum coverage is 3 (center plus two leaves), and
        // the fourth vertex cannot be reached.
        let graph = g(4, 2, &[(1, 2, 1), (1, 3, 1), (1, 4, 2)]);
        assert_eq!(brute_max_coverage(&graph), 3);
        let cert = max_coverable_set(&graph);
        cert.assert_valid(&graph);
        assert_eq!(cert.u.len(), 3);
    }

    #[test]
    fn coverable_empty_set() {
        let graph = g(2, 1, &[(1, 2, 1)]);
        let w = coverable(&graph, &BTreeSet::new()).unwrap();
        assert!(w.iter().all(|m| m.is_empty()));
    }

    #[test]
    fn coverable_center_and_leaf_of_star() {
        let graph = g(4, 1, &[(1, 2, 1), (1, 3, 1), (1, 4, 1)]);
        let t: BTreeSet<usize> = [1, 2].into();
        let w = coverable(&graph, &t).unwrap();
        assert_eq!(witness_edges(&w), vec![1]);
    }

    #[test]
    fn coverable_three_leaves_of_star_fails() {
        let graph = g(4, 1, &[(1, 2, 1), (1, 3, 1), (1, 4, 1)]);
        let t: BTreeSet<usize> = [2, 3, 4].into();
        assert!(coverable(&graph, &t).is_none());
    }

    #[test]
    fn forced_single_edge_covers_its_target() {
        let graph = g(2, 1, &[(1, 2, 1)]);
        let t: BTreeSet<usize> = [1, 2].into();
        let w = coverable_with_forced(&graph, &[vec![1]], &[1], &t)
            .unwrap()
            .unwrap();
        assert_eq!(witness_edges(&w), vec![1]);
    }

    #[test]
    fn forced_edge_conflicts_with_needed_cover() {
        // Path 1-2-3, one color; forcing 1-2 makes 3 uncoverable.
        let graph = g(3, 1, &[(1, 2, 1), (2, 3, 1)]);
        let t: BTreeSet<usize> = [1, 2, 3].into();
        let res = coverable_with_forced(&graph, &[vec![1, 2]], &[1], &t).unwrap();
        assert!(res.is_none());
    }

    #[test]
    fn forced_pair_sharing_vertex_covers_path() {
        // Path 1-2 (color 1), 2-3 (color 2); force both at shared vertex 2.
        let graph = g(3, 2, &[(1, 2, 1), (2, 3, 2)]);
        let t: BTreeSet<usize> = [1, 2, 3].into();
        let w = coverable_with_forced(&graph, &[vec![1], vec![2]], &[1, 2], &t)
            .unwrap()
            .unwrap();
        assert_eq!(witness_edges(&w), vec![1, 2]);
    }

    #[test]
    fn forced_pair_preconditions_enforced() {
        let graph = g(4, 2, &[(1, 2, 1), (3, 4, 2), (1, 2, 2)]);
        let t = BTreeSet::new();
        // Disjoint forced edges share no endpoint.
        let err = coverable_with_forced(&graph, &[vec![1], vec![2, 3]], &[1, 2], &t).unwrap_err();
        assert!(matches!(err, MatroidError::ForcedEdgesShareWrong(1, 2)));
        // Parallel forced edges share two endpoints.
        let err = coverable_with_forced(&graph, &[vec![1], vec![2, 3]], &[1, 3], &t).unwrap_err();
        assert!(matches!(err, MatroidError::ForcedEdgesShareWrong(1, 3)));
        // Forced edge outside its restricted class.
        let err = coverable_with_forced(&graph, &[vec![], vec![2]], &[1], &t).unwrap_err();
        assert!(matches!(err, MatroidError::ForcedEdgeNotInClass(1)));
    }

    struct Rng(u64);
    impl Rng {
        fn next(&mut self) -> u64 {
            let mut x = self.0;
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            self.0 = x;
            x
        }
        fn below(&mut self, n: u64) -> u64 {
            self.next() % n
        }
    }

    pub(crate) fn random_multigraph(
        seed: u64,
        max_n: usize,
        max_m: usize,
        max_k: usize,
    ) -> ColoredMultigraph {
        let mut rng = Rng(seed.wrapping_mul(0x9E3779B97F4A7C15) | 1);
        let n = 2 + rng.below(max_n as u64 - 1) as usize;
        let k = 1 + rng.below(max_k as u64) as usize;
        let m_target = rng.below(max_m as u64 + 1) as usize;
        let mut triples = Vec::new();
        let mut seen = BTreeSet::new();
        for _ in 0..4 * m_target {
            if triples.len() == m_target {
                break;
            }
            let u = 1 + rng.below(n as u64) as usize;
            let v = 1 + rng.below(n as u64) as usize;
            let c = 1 + rng.below(k as u64) as usize;
            if u == v {
                continue;
            }
            if seen.insert((u.min(v), u.max(v), c)) {
                triples.push((u, v, c));
            }
        }
        ColoredMultigraph::new(n, k, false, &triples).unwrap()
    }

    #[test]
    fn coverable_set_size_matches_brute_force() {
        for trial in 0..200u64 {
            let graph = random_multigraph(trial, 7, 10, 3);
            let cert = max_coverable_set(&graph);
            cert.assert_valid(&graph);
            assert_eq!(cert.u.len(), brute_max_coverage(&graph), "graph {graph:?}");
        }
    }

    #[test]
    fn coverable_agrees_with_brute_force_existence() {
        fn brute_coverable(g: &ColoredMultigraph, t: &BTreeSet<usize>) -> bool {
            fn pick(
                g: &ColoredMultigraph,
                color: usize,
                ids: &[usize],
                idx: usize,
                used: &mut Vec<BTreeSet<usize>>,
                t: &BTreeSet<usize>,
            ) -> bool {
                if idx == ids.len() {
                    if color == g.k() {
                        let covered: BTreeSet<usize> = used.iter().flatten().copied().collect();
                        return t.is_subset(&covered);
                    }
                    let next: Vec<usize> = g
                        .edges()
                        .iter()
                        .filter(|e| e.color == color + 1)
                        .map(|e| e.id)
                        .collect();
                    return pick(g, color + 1, &next, 0, used, t);
                }
                if pick(g, color, ids, idx + 1, used, t) {
                    return true;
                }
                let e = g.edge(ids[idx]).unwrap();
                if !used[color - 1].contains(&e.u) && !used[color - 1].contains(&e.v) {
                    used[color - 1].insert(e.u);
                    used[color - 1].insert(e.v);
                    let ok = pick(g, color, ids, idx + 1, used, t);
                    used[color - 1].remove(&e.u);
                    used[color - 1].remove(&e.v);
                    if ok {
                        return true;
                    }
                }
                false
            }
            let ids: Vec<usize> = g
                .edges()
                .iter()
                .filter(|e| e.color == 1)
                .map(|e| e.id)
                .collect();
            pick(g, 1, &ids, 0, &mut vec![BTreeSet::new(); g.k()], t)
        }

        let mut rng = Rng(0xABCDEF12345);
        for trial in 0..120u64 {
            let graph = random_multigraph(1000 + trial, 6, 9, 3);
            let t: BTreeSet<usize> = (1..=graph.n()).filter(|_| rng.below(2) == 0).collect();
            let got = coverable(&graph, &t);
            let want = brute_coverable(&graph, &t);
            assert_eq!(got.is_some(), want, "graph {graph:?} t {t:?}");
            if let Some(w) = got {
                let mut covered: BTreeSet<usize> = BTreeSet::new();
                for (i, m) in w.iter().enumerate() {
                    for id in m.as_subset().iter() {
                        let e = graph.edge(id).unwrap();
                        assert_eq!(e.color, i + 1);
                        covered.insert(e.u);
                        covered.insert(e.v);
                    }
                }
                assert!(t.is_subset(&covered));
            }
        }
    }

    #[test]
    fn forced_reduction_matches_brute_force() {
        // coverable_with_forced must agree with direct enumeration over
        // matching tuples containing the forced edges.
        #[allow(clippy::too_many_arguments)]
        fn brute_forced(
            g: &ColoredMultigraph,
            restricted: &[Vec<usize>],
            forced: &[usize],
            t: &BTreeSet<usize>,
        ) -> bool {
            #[allow(clippy::too_many_arguments)]
            fn pick(
                g: &ColoredMultigraph,
                restricted: &[Vec<usize>],
                color: usize,
                idx: usize,
                used: &mut Vec<BTreeSet<usize>>,
                picked: &mut Vec<usize>,
                forced: &[usize],
                t: &BTreeSet<usize>,
            ) -> bool {
                let ids = &restricted[color - 1];
                if idx == ids.len() {
                    if color < g.k() {
                        return pick(g, restricted, color + 1, 0, used, picked, forced, t);
                    }
                    if !forced.iter().all(|f| picked.contains(f)) {
                        return false;
                    }
                    let covered: BTreeSet<usize> = picked
                        .iter()
                        .flat_map(|&id| {
                            let e = g.edge(id).unwrap();
                            [e.u, e.v]
                        })
                        .collect();
                    return t.is_subset(&covered);
                }
                if pick(g, restricted, color, idx + 1, used, picked, forced, t) {
                    return true;
                }
                let e = g.edge(ids[idx]).unwrap();
                if !used[color - 1].contains(&e.u) && !used[color - 1].contains(&e.v) {
                    used[color - 1].insert(e.u);
                    used[color - 1].insert(e.v);
                    picked.push(e.id);
                    let ok = pick(g, restricted, color, idx + 1, used, picked, forced, t);
                    picked.pop();
                    used[color - 1].remove(&e.u);
                    used[color - 1].remove(&e.v);
                    if ok {
                        return true;
                    }
                }
                false
            }
            pick(
                g,
                restricted,
                1,
                0,
                &mut vec![BTreeSet::new(); g.k()],
                &mut Vec::new(),
                forced,
                t,
            )
        }

        let mut rng = Rng(0x777777);
        let mut tested = 0;
        for trial in 0..400u64 {
            let graph = random_multigraph(2000 + trial, 6, 9, 3);
            if graph.m() == 0 {
                continue;
            }
            let restricted: Vec<Vec<usize>> = (1..=graph.k())
                .map(|i| {
                    graph
                        .edges()
                        .iter()
                        .filter(|e| e.color == i && rng.below(4) != 0)
                        .map(|e| e.id)
                        .collect()
                })
                .collect();
            let pool: Vec<usize> = restricted.iter().flatten().copied().collect();
            if pool.is_empty() {
                continue;
            }
            let forced = vec![pool[rng.below(pool.len() as u64) as usize]];
            let t: BTreeSet<usize> = (1..=graph.n()).filter(|_| rng.below(3) == 0).collect();
            let got = coverable_with_forced(&graph, &restricted, &forced, &t).unwrap();
            let want = brute_forced(&graph, &restricted, &forced, &t);
            assert_eq!(
                got.is_some(),
                want,
                "graph {graph:?} forced {forced:?} t {t:?}"
            );
            if let Some(w) = got {
                let ids = witness_edges(&w);
                assert!(forced.iter().all(|f| ids.contains(f)));
            }
            tested += 1;
        }
        assert!(tested > 100);
    }
}
