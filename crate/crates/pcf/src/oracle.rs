//! Brute-force exact solvers used as ground truth for tests, examples, and
//! ratio certification.
//!
//! Two independent enumeration strategies are implemented for the forest
//! problem and cross-checked in the test suite: a pruned include/exclude
//! search over edges (the primary), and a plain grow-forests enumeration
//! with reachability-based cycle detection. Disagreement between them is a
//! fatal test failure.

use crate::graph::{ColoredMultigraph, Dsu, EdgeId, EdgeSubset, VertexId};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance has {edges} edges, above the enumeration cap {cap}")]
    CapExceeded { edges: usize, cap: usize },
    #[error(transparent)]
    Graph(crate::graph::GraphError),
}

/// Result of an exhaustive search: the optimum value, one witness, and the
/// number of search nodes examined.
#[derive(Debug, Clone)]
pub struct OracleResult {
    pub optimum: usize,
    pub witness: EdgeSubset,
    pub explored: u64,
}

pub const DEFAULT_CAP: usize = 24;

struct ForestSearch<'a> {
    g: &'a ColoredMultigraph,
    best: usize,
    best_set: Vec<EdgeId>,
    bound: usize,
    explored: u64,
}

impl<'a> ForestSearch<'a> {
    // Include/exclude on edges in ascending id order. Color conflicts are
    // rejected before cycle checks; branches that cannot beat the current
    // best are pruned.
    fn run(
        &mut self,
        idx: usize,
        chosen: &mut Vec<EdgeId>,
        used_colors: &mut BTreeMap<(VertexId, usize), ()>,
        dsu: &mut Dsu,
    ) {
        self.explored += 1;
        let edges = self.g.edges();
        if chosen.len() > self.best {
            self.best = chosen.len();
            self.best_set = chosen.clone();
        }
        if idx == edges.len()
            || self.best == self.bound
            || chosen.len() + (edges.len() - idx) <= self.best
        {
            return;
        }
        let e = edges[idx];
        // Include branch first: deeper solutions surface earlier.
        let key_u = (e.u, e.color);
        let key_v = (e.v, e.color);
        if !used_colors.contains_key(&key_u) && !used_colors.contains_key(&key_v) {
            let mut dsu2 = dsu.clone();
            if dsu2.union(e.u, e.v) {
                used_colors.insert(key_u, ());
                used_colors.insert(key_v, ());
                chosen.push(e.id);
                self.run(idx + 1, chosen, used_colors, &mut dsu2);
                chosen.pop();
                used_colors.remove(&key_u);
                used_colors.remove(&key_v);
            }
        }
        self.run(idx + 1, chosen, used_colors, dsu);
    }
}

/// Exact maximum properly colored forest by pruned subset enumeration.
pub fn brute_maxpf(g: &ColoredMultigraph, cap: usize) -> Result<OracleResult, OracleError> {
    if g.m() > cap {
        return Err(OracleError::CapExceeded { edges: g.m(), cap });
    }
    let bound = crate::solvers::upper_bound_matchings(g).min(g.n().saturating_sub(1));
    let mut search = ForestSearch {
        g,
        best: 0,
        best_set: Vec::new(),
        bound,
        explored: 0,
    };
    search.run(
        0,
        &mut Vec::new(),
        &mut BTreeMap::new(),
        &mut Dsu::new(g.n() + 1),
    );
    let witness: EdgeSubset = search.best_set.iter().copied().collect();
    debug_assert!(g.verify_pc_forest(&witness).unwrap().is_valid());
    Ok(OracleResult {
        optimum: search.best,
        witness,
        explored: search.explored,
    })
}

/// Exact optimum of the subgraph induced by `u`.
pub fn brute_opt_restricted(
    g: &ColoredMultigraph,
    u: &BTreeSet<VertexId>,
    cap: usize,
) -> Result<OracleResult, OracleError> {
    let ids = g.edge_ids_induced(u);
    if ids.len() > cap {
        return Err(OracleError::CapExceeded {
            edges: ids.len(),
            cap,
        });
    }
    // Rebuild the induced instance but keep reporting host edge ids.
    let triples: Vec<(VertexId, VertexId, usize)> = ids
        .iter()
        .map(|&id| {
            let e = g.edge(id).unwrap();
            (e.u, e.v, e.color)
        })
        .collect();
    let induced =
        ColoredMultigraph::new(g.n().max(1), g.k(), false, &triples).map_err(OracleError::Graph)?;
    let res = brute_maxpf(&induced, cap)?;
    let witness: EdgeSubset = res.witness.iter().map(|local| ids[local - 1]).collect();
    Ok(OracleResult {
        optimum: res.optimum,
        witness,
        explored: res.explored,
    })
}

/// Second, independent forest enumeration: grow properly colored forests in
/// increasing edge-id order, testing acyclicity by adjacency reachability.
/// No bound pruning. Returns only the optimum value.
pub fn brute_maxpf_grow(g: &ColoredMultigraph, cap: usize) -> Result<usize, OracleError> {
    if g.m() > cap {
        return Err(OracleError::CapExceeded { edges: g.m(), cap });
    }
    fn reaches(
        adj: &BTreeMap<VertexId, Vec<VertexId>>,
        from: VertexId,
        to: VertexId,
        seen: &mut BTreeSet<VertexId>,
    ) -> bool {
        if from == to {
            return true;
        }
        seen.insert(from);
        adj.get(&from)
            .map(|ns| {
                ns.iter()
                    .any(|&w| !seen.contains(&w) && reaches(adj, w, to, seen))
            })
            .unwrap_or(false)
    }
    fn grow(
        g: &ColoredMultigraph,
        last: usize,
        adj: &mut BTreeMap<VertexId, Vec<VertexId>>,
        colors: &mut BTreeSet<(VertexId, usize)>,
        size: usize,
        best: &mut usize,
    ) {
        *best = (*best).max(size);
        for e in &g.edges()[last..] {
            if colors.contains(&(e.u, e.color)) || colors.contains(&(e.v, e.color)) {
                continue;
            }
            if reaches(adj, e.u, e.v, &mut BTreeSet::new()) {
                continue;
            }
            adj.entry(e.u).or_default().push(e.v);
            adj.entry(e.v).or_default().push(e.u);
            colors.insert((e.u, e.color));
            colors.insert((e.v, e.color));
            grow(g, e.id, adj, colors, size + 1, best);
            colors.remove(&(e.u, e.color));
            colors.remove(&(e.v, e.color));
            adj.get_mut(&e.u).unwrap().pop();
            adj.get_mut(&e.v).unwrap().pop();
        }
    }
    let mut best = 0;
    grow(
        g,
        0,
        &mut BTreeMap::new(),
        &mut BTreeSet::new(),
        0,
        &mut best,
    );
    Ok(best)
}

/// Exact maximum properly colored tree (connected, not necessarily
/// spanning) by canonical-rooted tree growth with pruning. The cap is on
/// the edge count of the instance.
pub fn brute_maxpt(g: &ColoredMultigraph, cap: usize) -> Result<OracleResult, OracleError> {
    if g.m() > cap {
        return Err(OracleError::CapExceeded { edges: g.m(), cap });
    }
    // Enumerate trees rooted at their minimum vertex r; candidates extend
    // the current tree to a fresh vertex > r. Include/exclude on the lowest
    // eligible candidate keeps each tree visited once.
    struct Search<'a> {
        g: &'a ColoredMultigraph,
        best: usize,
        best_set: Vec<EdgeId>,
        explored: u64,
        root: VertexId,
    }
    impl<'a> Search<'a> {
        fn candidates(
            &self,
            in_tree: &BTreeSet<VertexId>,
            colors: &BTreeSet<(VertexId, usize)>,
            banned: &BTreeSet<EdgeId>,
        ) -> Vec<EdgeId> {
            let mut out = Vec::new();
            for &v in in_tree {
                for &id in self.g.incident(v) {
                    if banned.contains(&id) {
                        continue;
                    }
                    let e = self.g.edge(id).unwrap();
                    let w = e.other(v);
                    if w < self.root || in_tree.contains(&w) {
                        continue;
                    }
                    if colors.contains(&(v, e.color)) {
                        continue;
                    }
                    out.push(id);
                }
            }
            out.sort_unstable();
            out.dedup();
            out
        }

        fn run(
            &mut self,
            tree: &mut Vec<EdgeId>,
            in_tree: &mut BTreeSet<VertexId>,
            colors: &mut BTreeSet<(VertexId, usize)>,
            banned: &mut BTreeSet<EdgeId>,
        ) {
            self.explored += 1;
            if tree.len() > self.best {
                self.best = tree.len();
                self.best_set = tree.clone();
            }
            // Reachable upper bound: every vertex >= root not yet in the
            // tree could still join.
            let reachable = self.g.n() - in_tree.len() - (self.root - 1);
            if tree.len() + reachable <= self.best || self.best + 1 == self.g.n() {
                return;
            }
            let cands = self.candidates(in_tree, colors, banned);
            let Some(&id) = cands.first() else { return };
            let e = *self.g.edge(id).unwrap();
            let (anchor, fresh) = if in_tree.contains(&e.u) {
                (e.u, e.v)
            } else {
                (e.v, e.u)
            };
            // Include.
            tree.push(id);
            in_tree.insert(fresh);
            colors.insert((anchor, e.color));
            colors.insert((fresh, e.color));
            self.run(tree, in_tree, colors, banned);
            colors.remove(&(fresh, e.color));
            colors.remove(&(anchor, e.color));
            in_tree.remove(&fresh);
            tree.pop();
            // Exclude.
            banned.insert(id);
            self.run(tree, in_tree, colors, banned);
            banned.remove(&id);
        }
    }
    let mut best = 0;
    let mut best_set = Vec::new();
    let mut explored = 0;
    for root in 1..=g.n() {
        if best + 1 == g.n() {
            break;
        }
        let mut s = Search {
            g,
            best,
            best_set: best_set.clone(),
            explored: 0,
            root,
        };
        s.run(
            &mut Vec::new(),
            &mut BTreeSet::from([root]),
            &mut BTreeSet::new(),
            &mut BTreeSet::new(),
        );
        explored += s.explored;
        if s.best > best {
            best = s.best;
            best_set = s.best_set;
        }
    }
    let witness: EdgeSubset = best_set.iter().copied().collect();
    debug_assert!(g.verify_pc_forest(&witness).unwrap().is_valid());
    Ok(OracleResult {
        optimum: best,
        witness,
        explored,
    })
}

/// Maximum linear forest (acyclic, maximum degree 2) of an uncolored simple
/// graph given as an edge list over vertices `1..=n`. Ground truth for the
/// linear-forest reduction.
pub fn brute_max_linear_forest(n: usize, edges: &[(VertexId, VertexId)]) -> usize {
    fn rec(
        edges: &[(VertexId, VertexId)],
        idx: usize,
        deg: &mut Vec<usize>,
        dsu: &mut Dsu,
        size: usize,
        best: &mut usize,
    ) {
        *best = (*best).max(size);
        if idx == edges.len() || size + (edges.len() - idx) <= *best {
            return;
        }
        let (u, v) = edges[idx];
        if deg[u] < 2 && deg[v] < 2 {
            let mut dsu2 = dsu.clone();
            if dsu2.union(u, v) {
                deg[u] += 1;
                deg[v] += 1;
                rec(edges, idx + 1, deg, &mut dsu2, size + 1, best);
                deg[u] -= 1;
                deg[v] -= 1;
            }
        }
        rec(edges, idx + 1, deg, dsu, size, best);
    }
    let mut best = 0;
    rec(
        edges,
        0,
        &mut vec![0; n + 1],
        &mut Dsu::new(n + 1),
        0,
        &mut best,
    );
    best
}

/// Length (in arcs) of a longest directed path in a loopless digraph over
/// vertices `1..=n`. Ground truth for the longest-path reduction.
pub fn brute_longest_dipath(n: usize, arcs: &[(VertexId, VertexId)]) -> usize {
    fn extend(
        out: &BTreeMap<VertexId, Vec<VertexId>>,
        cur: VertexId,
        seen: &mut BTreeSet<VertexId>,
        len: usize,
        best: &mut usize,
    ) {
        *best = (*best).max(len);
        for &w in out.get(&cur).map(|x| x.as_slice()).unwrap_or(&[]) {
            if seen.insert(w) {
                extend(out, w, seen, len + 1, best);
                seen.remove(&w);
            }
        }
    }
    let mut out: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for &(u, v) in arcs {
        out.entry(u).or_default().push(v);
    }
    let mut best = 0;
    for s in 1..=n {
        let mut seen = BTreeSet::from([s]);
        extend(&out, s, &mut seen, 0, &mut best);
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid;

    fn g(n: usize, k: usize, edges: &[(usize, usize, usize)]) -> ColoredMultigraph {
        ColoredMultigraph::new(n, k, false, edges).unwrap()
    }

    #[test]
    fn edgeless_graph_has_zero_optimum() {
        let graph = g(3, 1, &[]);
        let r = brute_maxpf(&graph, 24).unwrap();
        assert_eq!(r.optimum, 0);
        assert!(r.witness.is_empty());
    }

    #[test]
    fn color_conflict_limits_path() {
        let graph = g(3, 1, &[(1, 2, 1), (2, 3, 1)]);
        assert_eq!(brute_maxpf(&graph, 24).unwrap().optimum, 1);
    }

    #[test]
    fn alternating_four_cycle_gives_three() {
        let graph = g(4, 2, &[(1, 2, 1), (2, 3, 2), (3, 4, 1), (4, 1, 2)]);
        assert_eq!(brute_maxpf(&graph, 24).unwrap().optimum, 3);
        assert_eq!(brute_maxpf_grow(&graph, 24).unwrap(), 3);
    }

    #[test]
    fn cap_is_enforced() {
        let graph = g(3, 1, &[(1, 2, 1), (2, 3, 1)]);
        assert!(matches!(
            brute_maxpf(&graph, 1),
            Err(OracleError::CapExceeded { edges: 2, cap: 1 })
        ));
    }

    #[test]
    fn restricted_to_all_vertices_or_none() {
        let graph = g(4, 2, &[(1, 2, 1), (2, 3, 2), (3, 4, 1)]);
        let all: BTreeSet<usize> = (1..=4).collect();
        assert_eq!(
            brute_opt_restricted(&graph, &all, 24).unwrap().optimum,
            brute_maxpf(&graph, 24).unwrap().optimum
        );
        assert_eq!(
            brute_opt_restricted(&graph, &BTreeSet::new(), 24)
                .unwrap()
                .optimum,
            0
        );
    }

    #[test]
    fn strategies_agree_on_random_instances() {
        for trial in 0..150u64 {
            let graph = matroid::tests::random_multigraph(7_000 + trial, 7, 12, 3);
            let a = brute_maxpf(&graph, 16).unwrap().optimum;
            let b = brute_maxpf_grow(&graph, 16).unwrap();
            assert_eq!(a, b, "strategy disagreement on {graph:?}");
        }
    }

    #[test]
    fn oracle_is_monotone_under_edge_addition() {
        for trial in 0..60u64 {
            let graph = matroid::tests::random_multigraph(9_000 + trial, 6, 10, 3);
            if graph.m() < 2 {
                continue;
            }
            let full = brute_maxpf(&graph, 16).unwrap().optimum;
            let fewer: Vec<(usize, usize, usize)> = graph.edges()[..graph.m() - 1]
                .iter()
                .map(|e| (e.u, e.v, e.color))
                .collect();
            let sub = ColoredMultigraph::new(graph.n(), graph.k(), false, &fewer).unwrap();
            assert!(brute_maxpf(&sub, 16).unwrap().optimum <= full);
        }
    }

    #[test]
    fn restriction_to_max_coverable_set_preserves_optimum() {
        for trial in 0..80u64 {
            let graph = matroid::tests::random_multigraph(11_000 + trial, 7, 14, 3);
            let cert = matroid::max_coverable_set(&graph);
            let u: BTreeSet<usize> = cert.u.iter().copied().collect();
            let whole = brute_maxpf(&graph, 16).unwrap().optimum;
            let restricted = brute_opt_restricted(&graph, &u, 16).unwrap().optimum;
            assert_eq!(
                whole, restricted,
                "restriction changed optimum on {graph:?}"
            );
        }
    }

    #[test]
    fn maxpt_small_cases() {
        let graph = g(2, 1, &[(1, 2, 1)]);
        let r = brute_maxpt(&graph, 24).unwrap();
        assert_eq!(r.optimum, 1);
        assert_eq!(r.witness.ids(), &[1]);

        // Monochromatic path: adjacent same-colored edges conflict.
        let graph = g(3, 2, &[(1, 2, 1), (2, 3, 1)]);
        assert_eq!(brute_maxpt(&graph, 24).unwrap().optimum, 1);

        // Rainbow triangle: any two edges work, all three close a cycle.
        let graph = g(3, 3, &[(1, 2, 1), (2, 3, 2), (3, 1, 3)]);
        assert_eq!(brute_maxpt(&graph, 24).unwrap().optimum, 2);
    }

    #[test]
    fn maxpt_agrees_with_forest_enumeration_filtered_to_trees() {
        // Independent route: enumerate PC forests (grow strategy, recording
        // sizes only for connected ones).
        fn brute_tree_via_forests(g: &ColoredMultigraph) -> usize {
            fn connected(g: &ColoredMultigraph, ids: &[usize]) -> bool {
                if ids.is_empty() {
                    return true;
                }
                let subset: EdgeSubset = ids.iter().copied().collect();
                g.components(&subset).unwrap().len() == 1
            }
            fn grow(
                g: &ColoredMultigraph,
                last: usize,
                chosen: &mut Vec<usize>,
                colors: &mut BTreeSet<(usize, usize)>,
                dsu: &Dsu,
                best: &mut usize,
            ) {
                if connected(g, chosen) {
                    *best = (*best).max(chosen.len());
                }
                for e in &g.edges()[last..] {
                    if colors.contains(&(e.u, e.color)) || colors.contains(&(e.v, e.color)) {
                        continue;
                    }
                    let mut dsu2 = dsu.clone();
                    if !dsu2.union(e.u, e.v) {
                        continue;
                    }
                    chosen.push(e.id);
                    colors.insert((e.u, e.color));
                    colors.insert((e.v, e.color));
                    grow(g, e.id, chosen, colors, &dsu2, best);
                    colors.remove(&(e.v, e.color));
                    colors.remove(&(e.u, e.color));
                    chosen.pop();
                }
            }
            let mut best = 0;
            grow(
                g,
                0,
                &mut Vec::new(),
                &mut BTreeSet::new(),
                &Dsu::new(g.n() + 1),
                &mut best,
            );
            best
        }
        for trial in 0..100u64 {
            let graph = matroid::tests::random_multigraph(13_000 + trial, 6, 10, 3);
            let a = brute_maxpt(&graph, 24).unwrap().optimum;
            let b = brute_tree_via_forests(&graph);
            assert_eq!(a, b, "tree searches disagree on {graph:?}");
        }
    }

    #[test]
    fn linear_forest_and_dipath_oracles() {
        // Triangle: maximum linear forest is a 2-edge path.
        assert_eq!(brute_max_linear_forest(3, &[(1, 2), (2, 3), (3, 1)]), 2);
        // K4 minus an edge: 3-edge Hamiltonian path exists.
        assert_eq!(
            brute_max_linear_forest(4, &[(1, 2), (2, 3), (3, 4), (1, 3), (2, 4)]),
            3
        );
        assert_eq!(brute_longest_dipath(3, &[(1, 2), (2, 3)]), 2);
        assert_eq!(brute_longest_dipath(3, &[(1, 2), (3, 2)]), 1);
        assert_eq!(brute_longest_dipath(2, &[]), 0);
    }
}
