//! Maximum-cardinality and maximum-weight matching in general graphs, and
//! the matching-matroid rank oracle built on them.
//!
//! All entry points are deterministic: among optimal matchings they return
//! the one whose sorted edge-id sequence is lexicographically smallest
//! (edges of zero weight are never included).

mod blossom;

use crate::graph::{EdgeId, EdgeSubset, SEdge, SimpleGraph, VertexId};
use std::collections::BTreeSet;

/// A set of edges of a host graph, no two sharing a vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    edges: EdgeSubset,
}

impl Matching {
    /// Wraps an edge set, checking the pairwise-disjointness invariant
    /// against the given host edges. Panics when two edges share a vertex
    /// or an id is not in the host.
    pub fn new(host: &SimpleGraph, ids: &[EdgeId]) -> Self {
        let mut used: BTreeSet<VertexId> = BTreeSet::new();
        for &id in ids {
            let e = host
                .edges
                .iter()
                .find(|e| e.id == id)
                .expect("matching edge not in host");
            assert!(used.insert(e.u), "matching edges share vertex {}", e.u);
            assert!(used.insert(e.v), "matching edges share vertex {}", e.v);
        }
        Matching {
            edges: ids.iter().copied().collect(),
        }
    }

    pub fn edge_ids(&self) -> &[EdgeId] {
        self.edges.ids()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn as_subset(&self) -> &EdgeSubset {
        &self.edges
    }
}

// Engine adapter: vertices are remapped to 0-based, edges passed in id order.
fn engine_mate(h: &SimpleGraph, weighted: &[(&SEdge, i64)]) -> Vec<Option<usize>> {
    let edges: Vec<(usize, usize, i64)> = weighted
        .iter()
        .map(|(e, w)| (e.u - 1, e.v - 1, *w))
        .collect();
    blossom::max_weight_matching(h.n, &edges)
}

// Total weight of an optimal matching among `weighted`, plus the matched
// edge ids (not canonical; used for values and feasibility tests only).
fn engine_value(h: &SimpleGraph, weighted: &[(&SEdge, i64)]) -> i64 {
    let mate = engine_mate(h, weighted);
    let mut total = 0;
    for (e, w) in weighted {
        if mate[e.u - 1] == Some(e.v - 1) {
            total += w;
        }
    }
    total
}

/// Lexicographically-smallest maximum-weight matching for the given
/// positive weights. Edges are scanned in ascending id order; an edge is
/// kept exactly when some maximum-weight matching extends the kept set with
/// it using only later edges.
fn canonical_max_weight(h: &SimpleGraph, weights: impl Fn(&SEdge) -> i64) -> Matching {
    let mut cands: Vec<(&SEdge, i64)> = h
        .edges
        .iter()
        .map(|e| (e, weights(e)))
        .filter(|(_, w)| *w > 0)
        .collect();
    cands.sort_by_key(|(e, _)| e.id);
    let best = engine_value(h, &cands);
    let mut chosen: Vec<EdgeId> = Vec::new();
    let mut chosen_w: i64 = 0;
    let mut used: BTreeSet<VertexId> = BTreeSet::new();
    for pos in 0..cands.len() {
        let (e, w) = cands[pos];
        if used.contains(&e.u) || used.contains(&e.v) {
            continue;
        }
        let residual: Vec<(&SEdge, i64)> = cands[pos + 1..]
            .iter()
            .filter(|(f, _)| {
                !used.contains(&f.u)
                    && !used.contains(&f.v)
                    && !f.touches_vertex(e.u)
                    && !f.touches_vertex(e.v)
            })
            .copied()
            .collect();
        if chosen_w + w + engine_value(h, &residual) == best {
            chosen.push(e.id);
            chosen_w += w;
            used.insert(e.u);
            used.insert(e.v);
        }
    }
    assert_eq!(chosen_w, best, "canonical matching lost weight");
    Matching::new(h, &chosen)
}

impl SEdge {
    fn touches_vertex(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }
}

/// Maximum-cardinality matching of a simple loopless graph.
pub fn max_matching(h: &SimpleGraph) -> Matching {
    canonical_max_weight(h, |_| 1)
}

/// Size of a maximum matching, without constructing a canonical one.
pub fn matching_number(h: &SimpleGraph) -> usize {
    let cands: Vec<(&SEdge, i64)> = h.edges.iter().map(|e| (e, 1)).collect();
    engine_value(h, &cands) as usize
}

/// Maximum-weight matching for nonnegative integer edge weights.
pub fn max_weight_matching(h: &SimpleGraph, w: impl Fn(&SEdge) -> u64) -> Matching {
    canonical_max_weight(h, |e| w(e) as i64)
}

fn coverage_weight(e: &SEdge, x: &BTreeSet<VertexId>) -> i64 {
    x.contains(&e.u) as i64 + x.contains(&e.v) as i64
}

/// Rank of `x` in the matching matroid of `h`: the maximum number of
/// vertices of `x` covered by one matching. A single weighted-matching call
/// with weights `|e ∩ x|`.
pub fn matroid_rank(h: &SimpleGraph, x: &BTreeSet<VertexId>) -> usize {
    let cands: Vec<(&SEdge, i64)> = h
        .edges
        .iter()
        .map(|e| (e, coverage_weight(e, x)))
        .filter(|(_, w)| *w > 0)
        .collect();
    engine_value(h, &cands) as usize
}

/// True when some matching of `h` covers all of `x`.
pub fn covers(h: &SimpleGraph, x: &BTreeSet<VertexId>) -> bool {
    matroid_rank(h, x) == x.len()
}

/// A maximum-cardinality matching among those covering `x`, or `None` when
/// no matching covers `x`. Coverage is maximized before cardinality via the
/// weights `(m+1)·|e ∩ x| + 1`.
pub fn max_matching_covering(h: &SimpleGraph, x: &BTreeSet<VertexId>) -> Option<Matching> {
    if !covers(h, x) {
        return None;
    }
    let big = h.edges.len() as i64 + 1;
    let m = canonical_max_weight(h, |e| big * coverage_weight(e, x) + 1);
    debug_assert!(matching_covers(h, &m, x));
    Some(m)
}

pub(crate) fn matching_covers(h: &SimpleGraph, m: &Matching, x: &BTreeSet<VertexId>) -> bool {
    let mut covered: BTreeSet<VertexId> = BTreeSet::new();
    for id in m.as_subset().iter() {
        let e = h.edges.iter().find(|e| e.id == id).unwrap();
        covered.insert(e.u);
        covered.insert(e.v);
    }
    x.iter().all(|v| covered.contains(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SEdge;

    fn sg(n: usize, pairs: &[(usize, usize)]) -> SimpleGraph {
        let edges = pairs
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| SEdge { id: i + 1, u, v })
            .collect();
        SimpleGraph::new(n, edges)
    }

    // Exhaustive matching oracle for small graphs.
    fn brute_best(h: &SimpleGraph, w: &dyn Fn(&SEdge) -> i64) -> i64 {
        fn rec(
            edges: &[SEdge],
            idx: usize,
            used: &mut BTreeSet<usize>,
            w: &dyn Fn(&SEdge) -> i64,
        ) -> i64 {
            if idx == edges.len() {
                return 0;
            }
            let skip = rec(edges, idx + 1, used, w);
            let e = edges[idx];
            if used.contains(&e.u) || used.contains(&e.v) {
                return skip;
            }
            used.insert(e.u);
            used.insert(e.v);
            let take = w(&e) + rec(edges, idx + 1, used, w);
            used.remove(&e.u);
            used.remove(&e.v);
            skip.max(take)
        }
        rec(&h.edges, 0, &mut BTreeSet::new(), w)
    }

    #[test]
    fn triangle_takes_lowest_id_edge() {
        let h = sg(3, &[(1, 2), (2, 3), (3, 1)]);
        let m = max_matching(&h);
        assert_eq!(m.edge_ids(), &[1]);
        assert_eq!(m.len(), 1);
    }

    #[test]
    fn path_of_three_edges() {
        let h = sg(4, &[(1, 2), (2, 3), (3, 4)]);
        let m = max_matching(&h);
        assert_eq!(m.edge_ids(), &[1, 3]);
    }

    #[test]
    fn five_cycle_matches_two() {
        let h = sg(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]);
        // Independent oracle: enumerate all matchings of C5.
        assert_eq!(brute_best(&h, &|_| 1), 2);
        assert_eq!(max_matching(&h).len(), 2);
    }

    #[test]
    fn weighted_star_prefers_heavier_leaf() {
        // Star center 2, leaves 1 and 3.
        let h = sg(3, &[(2, 1), (2, 3)]);
        let m = max_weight_matching(&h, |e| if e.id == 1 { 2 } else { 1 });
        assert_eq!(m.edge_ids(), &[1]);
    }

    #[test]
    fn all_zero_weights_give_empty_matching() {
        let h = sg(3, &[(1, 2), (2, 3)]);
        let m = max_weight_matching(&h, |_| 0);
        assert!(m.is_empty());
    }

    #[test]
    fn middle_edge_weight_beats_two_light_ones() {
        let h = sg(4, &[(1, 2), (2, 3), (3, 4)]);
        let m = max_weight_matching(&h, |e| [1, 3, 1][e.id - 1]);
        assert_eq!(m.edge_ids(), &[2]);
    }

    #[test]
    fn rank_of_star_k13() {
        // Star with center 1, leaves 2,3,4.
        let h = sg(4, &[(1, 2), (1, 3), (1, 4)]);
        let all: BTreeSet<usize> = [1, 2, 3, 4].into();
        assert_eq!(matroid_rank(&h, &all), 2);
        let two_leaves: BTreeSet<usize> = [2, 3].into();
        assert_eq!(matroid_rank(&h, &two_leaves), 1);
    }

    #[test]
    fn rank_of_five_cycle_all_vertices() {
        let h = sg(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]);
        let all: BTreeSet<usize> = (1..=5).collect();
        // Oracle: best coverage over all matchings of C5.
        let oracle = brute_best(&h, &|e| {
            (all.contains(&e.u) as i64) + (all.contains(&e.v) as i64)
        });
        assert_eq!(oracle, 4);
        assert_eq!(matroid_rank(&h, &all), 4);
    }

    #[test]
    fn covering_infeasible_when_rank_short() {
        let h = sg(3, &[(1, 2), (2, 3)]);
        let x: BTreeSet<usize> = [1, 3].into();
        assert!(max_matching_covering(&h, &x).is_none());
    }

    #[test]
    fn covering_center_of_p4_is_maximum() {
        // Path 1-2-3-4; cover {2}: matchings covering 2 are {12}, {23},
        // {12,34}; the maximum one has size 2.
        let h = sg(4, &[(1, 2), (2, 3), (3, 4)]);
        let x: BTreeSet<usize> = [2].into();
        let m = max_matching_covering(&h, &x).unwrap();
        assert_eq!(m.edge_ids(), &[1, 3]);
    }

    #[test]
    fn covering_empty_set_is_any_maximum_matching() {
        let h = sg(4, &[(1, 2), (2, 3), (3, 4)]);
        let m = max_matching_covering(&h, &BTreeSet::new()).unwrap();
        assert_eq!(m.len(), matching_number(&h));
    }

    #[test]
    fn covering_size_is_at_least_half_of_x() {
        let h = sg(6, &[(1, 2), (3, 4), (5, 6), (2, 3)]);
        let x: BTreeSet<usize> = (1..=6).collect();
        let m = max_matching_covering(&h, &x).unwrap();
        assert!(2 * m.len() >= x.len());
        assert!(matching_covers(&h, &m, &x));
    }

    // Deterministic xorshift for the randomized cross-checks.
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

    fn random_graph(rng: &mut Rng, max_n: u64, max_m: u64) -> SimpleGraph {
        let n = 2 + rng.below(max_n - 1) as usize;
        let mut pairs = BTreeSet::new();
        let m = rng.below(max_m + 1) as usize;
        for _ in 0..m {
            let u = 1 + rng.below(n as u64) as usize;
            let v = 1 + rng.below(n as u64) as usize;
            if u != v {
                pairs.insert((u.min(v), u.max(v)));
            }
        }
        sg(n, &pairs.into_iter().collect::<Vec<_>>())
    }

    #[test]
    fn cardinality_matches_brute_force_on_random_graphs() {
        let mut rng = Rng(0x9E3779B97F4A7C15);
        for _ in 0..600 {
            let h = random_graph(&mut rng, 8, 12);
            let brute = brute_best(&h, &|_| 1);
            let m = max_matching(&h);
            assert_eq!(m.len() as i64, brute, "graph {:?}", h);
        }
    }

    #[test]
    fn weights_match_brute_force_on_random_graphs() {
        let mut rng = Rng(0xDEADBEEFCAFE1234);
        for _ in 0..600 {
            let h = random_graph(&mut rng, 7, 12);
            let ws: Vec<i64> = (0..h.edges.len()).map(|_| rng.below(7) as i64).collect();
            let brute = brute_best(&h, &|e| ws[e.id - 1]);
            let m = max_weight_matching(&h, |e| ws[e.id - 1] as u64);
            let got: i64 = m.edge_ids().iter().map(|&id| ws[id - 1]).sum();
            assert_eq!(got, brute, "graph {:?} weights {:?}", h, ws);
        }
        // Denser graphs with larger weights drive deeper dual adjustments.
        for _ in 0..150 {
            let h = random_graph(&mut rng, 11, 26);
            let ws: Vec<i64> = (0..h.edges.len()).map(|_| rng.below(30) as i64).collect();
            let brute = brute_best(&h, &|e| ws[e.id - 1]);
            let m = max_weight_matching(&h, |e| ws[e.id - 1] as u64);
            let got: i64 = m.edge_ids().iter().map(|&id| ws[id - 1]).sum();
            assert_eq!(got, brute, "graph {:?} weights {:?}", h, ws);
        }
    }

    #[test]
    fn rank_matches_brute_force_on_random_graphs() {
        let mut rng = Rng(0x1234567898765432);
        for _ in 0..400 {
            let h = random_graph(&mut rng, 7, 10);
            let x: BTreeSet<usize> = (1..=h.n).filter(|_| rng.below(2) == 0).collect();
            let brute = brute_best(&h, &|e| coverage_weight(e, &x));
            assert_eq!(matroid_rank(&h, &x) as i64, brute);
        }
    }

    #[test]
    fn rank_axioms_hold_on_small_graphs() {
        // Monotone, subcardinal, submodular on every subset of a 6-vertex
        // graph.
        let h = sg(6, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1), (1, 4)]);
        let n = h.n;
        let subsets: Vec<BTreeSet<usize>> = (0..1u32 << n)
            .map(|mask| (1..=n).filter(|v| mask >> (v - 1) & 1 == 1).collect())
            .collect();
        let ranks: Vec<usize> = subsets.iter().map(|x| matroid_rank(&h, x)).collect();
        for (i, x) in subsets.iter().enumerate() {
            assert!(ranks[i] <= x.len());
            for (j, y) in subsets.iter().enumerate() {
                if x.is_subset(y) {
                    assert!(ranks[i] <= ranks[j]);
                }
                let union: BTreeSet<usize> = x.union(y).copied().collect();
                let inter: BTreeSet<usize> = x.intersection(y).copied().collect();
                let iu = subsets.iter().position(|s| *s == union).unwrap();
                let ii = subsets.iter().position(|s| *s == inter).unwrap();
                assert!(ranks[iu] + ranks[ii] <= ranks[i] + ranks[j]);
            }
        }
    }
}
