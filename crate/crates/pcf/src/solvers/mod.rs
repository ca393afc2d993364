//! Maximum properly colored forest solvers: the exact algorithm for
//! 2-edge-colored complete multigraphs, the local-improvement approximation
//! for general multigraphs, and the union-of-matchings algorithm for simple
//! graphs.

mod merge;

pub use merge::{
    decompose_cycle, decompose_path, merge_path_cycle_factor, FactorError, PcCycle, PcPath,
};

use crate::graph::{ColoredMultigraph, Dsu, EdgeId, EdgeSubset, VertexId};
use crate::matching;
use crate::matroid::{self, CoverCertificate};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

pub const UB_SUM_MATCHINGS: &str = "sum-of-max-matchings";
pub const UB_COVERABLE: &str = "coverable-minus-one";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("algorithm requires k = 2, instance has k = {0}")]
    NotTwoColors(usize),
    #[error("algorithm requires a complete multigraph")]
    NotComplete,
    #[error("algorithm requires a simple graph")]
    NotSimple,
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(transparent)]
    Graph(crate::graph::GraphError),
}

/// Solver output: the forest, the standard upper bounds, and the number of
/// restarts of the improvement loop (general algorithm only).
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub algorithm: &'static str,
    pub forest: EdgeSubset,
    pub size: usize,
    pub upper_bounds: Vec<(&'static str, usize)>,
    pub iterations: usize,
}

impl SolveReport {
    pub fn upper_bound(&self, name: &str) -> Option<usize> {
        self.upper_bounds
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, v)| *v)
    }
}

/// `Σ_i ν(E_i)`: the sum of the per-color maximum matching sizes. Every
/// properly colored forest decomposes into one matching per color, so this
/// bounds the optimum from above.
pub fn upper_bound_matchings(g: &ColoredMultigraph) -> usize {
    (1..=g.k())
        .map(|i| matching::matching_number(&g.color_class(i).unwrap()))
        .sum()
}

fn standard_bounds(g: &ColoredMultigraph, u_len: usize) -> Vec<(&'static str, usize)> {
    vec![
        (UB_SUM_MATCHINGS, upper_bound_matchings(g)),
        (UB_COVERABLE, u_len.saturating_sub(1)),
    ]
}

fn finish_report(
    g: &ColoredMultigraph,
    algorithm: &'static str,
    forest: BTreeSet<EdgeId>,
    u_len: usize,
    iterations: usize,
) -> SolveReport {
    let forest = g
        .edge_subset(forest)
        .expect("solver produced unknown edges");
    assert!(
        g.verify_pc_forest(&forest).unwrap().is_valid(),
        "solver output failed verification"
    );
    let upper_bounds = standard_bounds(g, u_len);
    let size = forest.len();
    for &(name, value) in &upper_bounds {
        assert!(
            size <= value,
            "solution exceeds upper bound {name} = {value}"
        );
    }
    SolveReport {
        algorithm,
        forest,
        size,
        upper_bounds,
        iterations,
    }
}

// Edge ids of `f` with both endpoints in `x`.
fn induced(
    g: &ColoredMultigraph,
    f: &BTreeSet<EdgeId>,
    x: &BTreeSet<VertexId>,
) -> BTreeSet<EdgeId> {
    f.iter()
        .copied()
        .filter(|&id| {
            let e = g.edge(id).unwrap();
            x.contains(&e.u) && x.contains(&e.v)
        })
        .collect()
}

// Maximum spanning forest of the edge set: scan ascending id, drop each edge
// that closes a cycle (the highest id on that cycle, since the rest of the
// cycle was added earlier).
fn max_forest(g: &ColoredMultigraph, edges: &BTreeSet<EdgeId>) -> BTreeSet<EdgeId> {
    let mut dsu = Dsu::new(g.n() + 1);
    let mut keep = BTreeSet::new();
    for &id in edges {
        let e = g.edge(id).unwrap();
        if dsu.union(e.u, e.v) {
            keep.insert(id);
        }
    }
    keep
}

// Components of (V(F), F) as vertex sets plus a vertex -> component index.
fn component_structure(
    g: &ColoredMultigraph,
    f: &BTreeSet<EdgeId>,
) -> (Vec<BTreeSet<VertexId>>, BTreeMap<VertexId, usize>) {
    let subset: EdgeSubset = f.iter().copied().collect();
    let comps = g.components(&subset).unwrap();
    let mut index = BTreeMap::new();
    let mut sets = Vec::new();
    for (i, comp) in comps.into_iter().enumerate() {
        for &v in &comp {
            index.insert(v, i);
        }
        sets.push(comp.into_iter().collect());
    }
    (sets, index)
}

// Per-color matching decomposition invariant: within each color class the
// F-edges form a matching (hence F is properly colored).
fn assert_color_matchings(g: &ColoredMultigraph, f: &BTreeSet<EdgeId>) {
    let mut deg: BTreeMap<(VertexId, usize), usize> = BTreeMap::new();
    for &id in f {
        let e = g.edge(id).unwrap();
        for x in [e.u, e.v] {
            let d = deg.entry((x, e.color)).or_default();
            *d += 1;
            assert!(*d <= 1, "two F-edges of color {} at vertex {x}", e.color);
        }
    }
}

fn vertices_of(g: &ColoredMultigraph, f: &BTreeSet<EdgeId>) -> BTreeSet<VertexId> {
    let mut vs = BTreeSet::new();
    for &id in f {
        let e = g.edge(id).unwrap();
        vs.insert(e.u);
        vs.insert(e.v);
    }
    vs
}

// Colors of F-edges incident to v.
fn colors_at(g: &ColoredMultigraph, f: &BTreeSet<EdgeId>, v: VertexId) -> BTreeSet<usize> {
    g.incident(v)
        .iter()
        .filter(|id| f.contains(id))
        .map(|&id| g.edge(id).unwrap().color)
        .collect()
}

/// The candidate edge set for improving size-two components: all edges
/// inside `U_s`, plus edges from `U_s` to `U_r` whose color is missing at
/// the `U_r` endpoint in `F`.
pub fn candidate_edges(
    g: &ColoredMultigraph,
    f: &EdgeSubset,
    u_s: &BTreeSet<VertexId>,
    u_r: &BTreeSet<VertexId>,
) -> EdgeSubset {
    let fset = f.to_set();
    let vf = vertices_of(g, &fset);
    assert!(
        u_s.is_disjoint(u_r) && u_s.union(u_r).copied().collect::<BTreeSet<_>>() == vf,
        "U_s and U_r must partition V(F)"
    );
    assert_color_matchings(g, &fset);
    let mut out = BTreeSet::new();
    for e in g.edges() {
        let (in_s_u, in_s_v) = (u_s.contains(&e.u), u_s.contains(&e.v));
        if in_s_u && in_s_v {
            out.insert(e.id);
            continue;
        }
        let r_end = if in_s_u && u_r.contains(&e.v) {
            e.v
        } else if in_s_v && u_r.contains(&e.u) {
            e.u
        } else {
            continue;
        };
        if !colors_at(g, &fset, r_end).contains(&e.color) {
            out.insert(e.id);
        }
    }
    out.into_iter().collect()
}

/// Exact solver for 2-edge-colored complete multigraphs.
///
/// Starts from maximum matchings `M_1, M_2` maximizing the covered vertex
/// set `U`. If their union is all cycles, one edge is deleted and the rest
/// is merged into a properly colored Hamiltonian path of `G[U]` (size
/// `|U| - 1`); otherwise one path component and all cycles are merged,
/// keeping the size at `|M_1| + |M_2|`. Both cases are optimal.
pub fn solve_complete_2color(g: &ColoredMultigraph) -> Result<SolveReport, SolveError> {
    if g.k() != 2 {
        return Err(SolveError::NotTwoColors(g.k()));
    }
    if !g.is_complete_multigraph() {
        return Err(SolveError::NotComplete);
    }
    let cert = matroid::max_coverable_set(g);
    let m1 = cert.matchings[0].len();
    let m2 = cert.matchings[1].len();
    let mut f: BTreeSet<EdgeId> = cert.union_edges().into_iter().collect();
    let u: BTreeSet<VertexId> = cert.u.iter().copied().collect();
    let (comps, index) = component_structure(g, &f);
    // Split components into paths and cycles: every component alternates
    // between the two matchings, so degrees are at most 2.
    let mut comp_edges: Vec<Vec<EdgeId>> = vec![Vec::new(); comps.len()];
    for &id in &f {
        let e = g.edge(id).unwrap();
        comp_edges[index[&e.u]].push(id);
    }
    let mut paths = Vec::new();
    let mut cycles = Vec::new();
    for (ci, comp) in comps.iter().enumerate() {
        let ids = &comp_edges[ci];
        if ids.len() == comp.len() {
            cycles.push(ids.clone());
        } else {
            assert_eq!(
                ids.len() + 1,
                comp.len(),
                "component is neither path nor cycle"
            );
            paths.push(ids.clone());
        }
    }

    let all_cycles = paths.is_empty();
    if all_cycles && !f.is_empty() {
        // Delete the lowest-id edge of F; its cycle becomes the path.
        let drop = *f.iter().next().unwrap();
        f.remove(&drop);
        let host_cycle = cycles
            .iter()
            .position(|c| c.contains(&drop))
            .expect("dropped edge belongs to a cycle");
        let path: Vec<EdgeId> = cycles[host_cycle]
            .iter()
            .copied()
            .filter(|&x| x != drop)
            .collect();
        let rest: Vec<EdgeSubset> = cycles
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != host_cycle)
            .map(|(_, c)| c.iter().copied().collect())
            .collect();
        let ham = merge_path_cycle_factor(g, &path.into_iter().collect::<EdgeSubset>(), &rest)?;
        f = ham.to_set();
        assert_eq!(
            f.len(),
            u.len().saturating_sub(1),
            "all-cycle case must reach |U| - 1"
        );
    } else if !all_cycles {
        // Keep the other paths; merge the lowest-id path with all cycles.
        paths.sort_by_key(|ids| ids.iter().min().copied().unwrap_or(usize::MAX));
        let chosen = paths[0].clone();
        let rest_cycles: Vec<EdgeSubset> =
            cycles.iter().map(|c| c.iter().copied().collect()).collect();
        let merged = merge_path_cycle_factor(
            g,
            &chosen.iter().copied().collect::<EdgeSubset>(),
            &rest_cycles,
        )?;
        for ids in std::iter::once(&chosen).chain(cycles.iter()) {
            for id in ids {
                f.remove(id);
            }
        }
        f.extend(merged.iter());
        assert_eq!(f.len(), m1 + m2, "path case must keep |M_1| + |M_2| edges");
    }
    Ok(finish_report(g, "complete2", f, u.len(), 0))
}

/// The local-improvement approximation for arbitrary k-edge-colored
/// multigraphs: 5/9 of the optimum in general, 4/7 on simple graphs and
/// 3-edge-colored multigraphs, 3/5 on 2-edge-colored multigraphs.
pub fn solve_general(g: &ColoredMultigraph) -> Result<SolveReport, SolveError> {
    let cert: CoverCertificate = matroid::max_coverable_set(g);
    let u: BTreeSet<VertexId> = cert.u.iter().copied().collect();
    let mut f: BTreeSet<EdgeId> = cert.union_edges().into_iter().collect();
    assert_color_matchings(g, &f);
    let mut iterations = 0usize;
    let mut prev_potential: Option<usize> = None;

    'outer: loop {
        assert_eq!(vertices_of(g, &f), u, "F must keep covering U");
        let (comps, comp_index) = component_structure(g, &f);
        // Potential |U_s| + |comp(F)| strictly decreases on every restart.
        let u_s: BTreeSet<VertexId> = comps
            .iter()
            .filter(|c| c.len() == 2)
            .flatten()
            .copied()
            .collect();
        let u_r: BTreeSet<VertexId> = u.difference(&u_s).copied().collect();
        let potential = u_s.len() + comps.len();
        if let Some(prev) = prev_potential {
            assert!(
                potential < prev,
                "potential must strictly decrease (was {prev}, now {potential})"
            );
        }
        prev_potential = Some(potential);
        assert!(iterations <= 2 * g.n(), "too many improvement restarts");

        // Maximum forest inside U_r.
        let f_ur = induced(g, &f, &u_r);
        let keep = max_forest(g, &f_ur);
        for id in &f_ur {
            f.remove(id);
        }
        f.extend(keep.iter());

        // Candidate edges for extending across U_s.
        let f_subset: EdgeSubset = f.iter().copied().collect();
        let eprime = candidate_edges(g, &f_subset, &u_s, &u_r);
        let eprime_classes: Vec<Vec<EdgeId>> = (1..=g.k())
            .map(|i| {
                eprime
                    .iter()
                    .filter(|&id| g.edge(id).unwrap().color == i)
                    .collect()
            })
            .collect();

        // Single cross-component edges with a globally unused color.
        for e in g.edges() {
            if f.contains(&e.id) {
                continue;
            }
            let mut cols = colors_at(g, &f, e.u);
            cols.extend(colors_at(g, &f, e.v));
            if cols.contains(&e.color) {
                continue;
            }
            let cu = comp_index.get(&e.u);
            let cv = comp_index.get(&e.v);
            let different = match (cu, cv) {
                (Some(a), Some(b)) => a != b,
                // A vertex outside V(F) would extend the coverable set,
                // contradicting the maximality of U.
                _ => panic!("edge {} leaves the maximum coverable set", e.id),
            };
            if different {
                f.insert(e.id);
                assert_color_matchings(g, &f);
                iterations += 1;
                continue 'outer;
            }
        }

        // Single-edge improvements: force uv (u in U_s, v in U_r) and
        // re-cover U_s + v inside the candidate classes.
        for id in eprime.iter() {
            let e = g.edge(id).unwrap();
            let r_end = if u_s.contains(&e.u) && u_r.contains(&e.v) {
                e.v
            } else if u_s.contains(&e.v) && u_r.contains(&e.u) {
                e.u
            } else {
                continue;
            };
            let mut target = u_s.clone();
            target.insert(r_end);
            if let Some(ns) =
                matroid::coverable_with_forced(g, &eprime_classes, &[id], &target).unwrap()
            {
                rebuild_across_us(g, &mut f, &u_s, &ns);
                iterations += 1;
                continue 'outer;
            }
        }

        // Pair improvements inside U_s: two candidate edges at a shared
        // vertex with distinct colors.
        let eprime_us: Vec<EdgeId> = eprime
            .iter()
            .filter(|&id| {
                let e = g.edge(id).unwrap();
                u_s.contains(&e.u) && u_s.contains(&e.v)
            })
            .collect();
        let us_classes: Vec<Vec<EdgeId>> = (1..=g.k())
            .map(|i| {
                eprime_us
                    .iter()
                    .copied()
                    .filter(|&id| g.edge(id).unwrap().color == i)
                    .collect()
            })
            .collect();
        for (ai, &a) in eprime_us.iter().enumerate() {
            for &b in &eprime_us[ai + 1..] {
                let ea = g.edge(a).unwrap();
                let eb = g.edge(b).unwrap();
                if ea.color == eb.color {
                    continue;
                }
                let shared: Vec<VertexId> = [ea.u, ea.v]
                    .iter()
                    .filter(|x| eb.touches(**x))
                    .copied()
                    .collect();
                if shared.len() != 1 {
                    continue;
                }
                if let Some(ns) =
                    matroid::coverable_with_forced(g, &us_classes, &[a, b], &u_s).unwrap()
                {
                    rebuild_across_us(g, &mut f, &u_s, &ns);
                    iterations += 1;
                    continue 'outer;
                }
            }
        }

        // No improvement: drop parallel duplicates inside U_s and stop.
        let f_us = induced(g, &f, &u_s);
        let keep = max_forest(g, &f_us);
        for id in &f_us {
            f.remove(id);
        }
        f.extend(keep.iter());
        // At termination every component of F[U_r] has at least 3 vertices.
        let f_ur_final = induced(g, &f, &u_r);
        let ur_subset: EdgeSubset = f_ur_final.iter().copied().collect();
        for comp in g.components(&ur_subset).unwrap() {
            assert!(
                comp.len() >= 3,
                "terminal F[U_r] component of size {}",
                comp.len()
            );
        }
        break;
    }
    Ok(finish_report(g, "general", f, u.len(), iterations))
}

// F <- (F \ F[U_s]) ∪ (∪ N_i), re-checking the matching decomposition.
fn rebuild_across_us(
    g: &ColoredMultigraph,
    f: &mut BTreeSet<EdgeId>,
    u_s: &BTreeSet<VertexId>,
    witnesses: &[matching::Matching],
) {
    let f_us = induced(g, f, u_s);
    for id in &f_us {
        f.remove(id);
    }
    for id in matroid::witness_edges(witnesses) {
        f.insert(id);
    }
    assert_color_matchings(g, f);
}

/// Union-of-matchings algorithm for simple graphs: take maximum matchings
/// maximizing coverage and return a maximum forest of their union. 3/4 of
/// the optimum for k = 2, 5/8 for k = 3.
pub fn solve_union_matchings(g: &ColoredMultigraph) -> Result<SolveReport, SolveError> {
    if !g.simple_flag() {
        return Err(SolveError::NotSimple);
    }
    let cert = matroid::max_coverable_set(g);
    let fprime: BTreeSet<EdgeId> = cert.union_edges().into_iter().collect();
    let f = max_forest(g, &fprime);
    Ok(finish_report(g, "simplek", f, cert.u.len(), 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ColoredMultigraph;
    use crate::oracle;

    fn g(n: usize, k: usize, edges: &[(usize, usize, usize)]) -> ColoredMultigraph {
        ColoredMultigraph::new(n, k, false, edges).unwrap()
    }

    fn gs(n: usize, k: usize, edges: &[(usize, usize, usize)]) -> ColoredMultigraph {
        ColoredMultigraph::new(n, k, true, edges).unwrap()
    }

    #[test]
    fn complete2_on_triangle_multigraph() {
        let graph = g(3, 2, &[(1, 2, 1), (2, 3, 2), (3, 1, 1)]);
        let r = solve_complete_2color(&graph).unwrap();
        let opt = oracle::brute_maxpf(&graph, 24).unwrap().optimum;
        assert_eq!(opt, 2);
        assert_eq!(r.size, 2);
    }

    #[test]
    fn complete2_on_parallel_pair() {
        let graph = g(2, 2, &[(1, 2, 1), (1, 2, 2)]);
        let r = solve_complete_2color(&graph).unwrap();
        assert_eq!(r.size, 1);
        assert_eq!(r.upper_bound(UB_COVERABLE), Some(1));
    }

    #[test]
    fn complete2_on_alternating_four_cycle() {
        // Complete 2-colored multigraph whose M1 ∪ M2 is one alternating
        // 4-cycle: the two diagonals repeat colors so the cycle is optimal
        // to break.
        let graph = g(
            4,
            2,
            &[
                (1, 2, 1),
                (2, 3, 2),
                (3, 4, 1),
                (4, 1, 2),
                (1, 3, 1),
                (2, 4, 2),
            ],
        );
        let r = solve_complete_2color(&graph).unwrap();
        let opt = oracle::brute_maxpf(&graph, 24).unwrap().optimum;
        assert_eq!(opt, 3);
        assert_eq!(r.size, 3);
    }

    #[test]
    fn complete2_on_single_vertex() {
        let graph = g(1, 2, &[]);
        let r = solve_complete_2color(&graph).unwrap();
        assert_eq!(r.size, 0);
    }

    #[test]
    fn complete2_rejects_wrong_inputs() {
        let graph = g(3, 3, &[(1, 2, 1), (2, 3, 2), (3, 1, 3)]);
        assert!(matches!(
            solve_complete_2color(&graph),
            Err(SolveError::NotTwoColors(3))
        ));
        let graph = g(3, 2, &[(1, 2, 1)]);
        assert!(matches!(
            solve_complete_2color(&graph),
            Err(SolveError::NotComplete)
        ));
    }

    #[test]
    fn general_on_edgeless_graph() {
        let graph = g(4, 2, &[]);
        let r = solve_general(&graph).unwrap();
        assert_eq!(r.size, 0);
        assert_eq!(r.iterations, 0);
    }

    #[test]
    fn general_on_rainbow_triangle() {
        let graph = g(3, 3, &[(1, 2, 1), (2, 3, 2), (3, 1, 3)]);
        let r = solve_general(&graph).unwrap();
        // OPT = 2; the 5/9 guarantee forces at least ceil(10/9) = 2.
        assert_eq!(oracle::brute_maxpf(&graph, 24).unwrap().optimum, 2);
        assert_eq!(r.size, 2);
    }

    #[test]
    fn general_meets_five_ninths_on_random_instances() {
        let ratio = crate::ratio::Ratio::new(5, 9).unwrap();
        for trial in 0..150u64 {
            let graph = crate::matroid::tests::random_multigraph(40_000 + trial, 8, 14, 4);
            let r = solve_general(&graph).unwrap();
            let opt = oracle::brute_maxpf(&graph, 24).unwrap().optimum;
            assert!(
                ratio.meets_floor(r.size, opt),
                "size {} < 5/9 of {opt} on {graph:?}",
                r.size
            );
            assert!(r.iterations <= 2 * graph.n());
        }
    }

    #[test]
    fn general_pair_improvement_regression() {
        // Captured instances on which the pair-improvement step (two forced
        // candidate edges at a shared vertex) fires; keep them as explicit
        // coverage of that code path.
        let texts = [
            "p pcf 4 6 3 multi\ne 4 1 3\ne 1 4 2\ne 3 2 3\ne 3 1 3\ne 4 1 1\ne 2 3 1\n",
            "p pcf 7 5 2 multi\ne 3 1 1\ne 6 4 2\ne 6 4 1\ne 7 5 1\ne 6 5 2\n",
        ];
        for text in texts {
            let graph = crate::graph::parse_instance(text).unwrap();
            let r = solve_general(&graph).unwrap();
            let opt = oracle::brute_maxpf(&graph, 24).unwrap().optimum;
            assert!(9 * r.size >= 5 * opt);
            assert!(r.iterations >= 1, "expected at least one improvement");
        }
    }

    #[test]
    fn candidate_edges_examples() {
        // U_s empty: no candidates.
        let graph = g(4, 2, &[(1, 2, 1), (3, 4, 2)]);
        let f = graph.edge_subset([1, 2]).unwrap();
        let e = candidate_edges(&graph, &f, &BTreeSet::new(), &[1, 2, 3, 4].into());
        assert!(e.is_empty());

        // All F-colors present at every U_r vertex adjacent to U_s and no
        // edges inside U_s: every candidate is filtered out. (The op's
        // precondition allows F-edges crossing the U_s/U_r split.)
        let graph = g(4, 2, &[(1, 3, 1), (2, 4, 1), (1, 4, 1)]);
        let f = graph.edge_subset([1, 2]).unwrap();
        let e = candidate_edges(&graph, &f, &[1, 2].into(), &[3, 4].into());
        assert!(e.is_empty());

        // Component edge inside U_s plus one color-compatible cross edge.
        // F = {wx:1} with U_r = {w,x} = {3,4}; U_s = {1,2} joined by edge
        // 1-2 of color 2 in F; E has the U_s edge and a cross edge 2-3 of
        // color 2 with c(δ_F(3)) = {1}.
        let graph = g(4, 2, &[(3, 4, 1), (1, 2, 2), (2, 3, 2)]);
        let f = graph.edge_subset([1, 2]).unwrap();
        let e = candidate_edges(&graph, &f, &[1, 2].into(), &[3, 4].into());
        assert_eq!(e.ids(), &[2, 3]);
    }

    #[test]
    fn union_matchings_on_single_edge() {
        let graph = gs(2, 1, &[(1, 2, 1)]);
        let r = solve_union_matchings(&graph).unwrap();
        assert_eq!(r.forest.ids(), &[1]);
    }

    #[test]
    fn union_matchings_on_alternating_four_cycle() {
        let graph = gs(4, 2, &[(1, 2, 1), (2, 3, 2), (3, 4, 1), (4, 1, 2)]);
        let r = solve_union_matchings(&graph).unwrap();
        assert_eq!(oracle::brute_maxpf(&graph, 24).unwrap().optimum, 3);
        assert_eq!(r.size, 3);
    }

    #[test]
    fn union_matchings_on_alternating_path() {
        let graph = gs(5, 2, &[(1, 2, 1), (2, 3, 2), (3, 4, 1), (4, 5, 2)]);
        let r = solve_union_matchings(&graph).unwrap();
        assert_eq!(oracle::brute_maxpf(&graph, 24).unwrap().optimum, 4);
        assert_eq!(r.size, 4);
    }

    #[test]
    fn union_matchings_rejects_multigraphs() {
        let graph = g(2, 2, &[(1, 2, 1), (1, 2, 2)]);
        assert!(matches!(
            solve_union_matchings(&graph),
            Err(SolveError::NotSimple)
        ));
    }

    #[test]
    fn upper_bound_examples() {
        assert_eq!(upper_bound_matchings(&g(3, 2, &[])), 0);
        assert_eq!(
            upper_bound_matchings(&g(3, 3, &[(1, 2, 1), (2, 3, 2), (3, 1, 3)])),
            3
        );
        let c4 = gs(4, 2, &[(1, 2, 1), (2, 3, 2), (3, 4, 1), (4, 1, 2)]);
        assert_eq!(upper_bound_matchings(&c4), 4);
    }

    #[test]
    fn complete2_is_exact_on_random_instances() {
        for trial in 0..60u64 {
            let graph = random_complete_2colored(trial, 6);
            let r = solve_complete_2color(&graph).unwrap();
            let opt = oracle::brute_maxpf(&graph, 26).unwrap().optimum;
            assert_eq!(r.size, opt, "suboptimal on {graph:?}");
        }
    }

    pub(crate) fn random_complete_2colored(seed: u64, max_n: usize) -> ColoredMultigraph {
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
        let mut rng = Rng(seed.wrapping_mul(0x2545F4914F6CDD1D) | 1);
        let n = 2 + rng.below(max_n as u64 - 1) as usize;
        let mut triples = Vec::new();
        for u in 1..=n {
            for v in u + 1..=n {
                match rng.below(3) {
                    0 => triples.push((u, v, 1)),
                    1 => triples.push((u, v, 2)),
                    _ => {
                        triples.push((u, v, 1));
                        triples.push((u, v, 2));
                    }
                }
            }
        }
        ColoredMultigraph::new(n, 2, false, &triples).unwrap()
    }
}
