//! Kernelization: shrink an instance to at most `6k` vertices or answer NO.
//!
//! The pipeline repeatedly strips solved components, builds a proper
//! 3-path packing, applies the two counting bounds (packing size, isolated
//! remainder vertices on good paths), and removes AIM crowns found among the
//! remainder edges hanging off good paths. When nothing fires the counting
//! argument guarantees `|V| <= 6k`, which is asserted, not assumed.

use crate::crown::find_aim_crown;
use crate::graph::{Graph, VertexId, VertexSet};
use crate::packing::{
    classify, dump_packing, greedy_maximal_packing, make_proper, validate_packing, PackingContext,
};

/// A problem instance: a graph and the remaining deletion budget. The budget
/// may go negative transiently while rules account for forced deletions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub k: i64,
}

impl Instance {
    pub fn new(graph: Graph, k: i64) -> Self {
        Self { graph, k }
    }
}

/// Result of kernelization.
///
/// `Reduced` carries the equivalent smaller instance together with the
/// vertices every solution must contain (`forced`, already charged against
/// the budget) and the matched edges removed as solved 2-vertex components
/// (`kept_edges`, not charged). A witness for the original instance is
/// `forced` plus any witness of the reduced instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelResult {
    No,
    Reduced {
        instance: Instance,
        forced: VertexSet,
        kept_edges: Vec<(VertexId, VertexId)>,
    },
}

impl KernelResult {
    pub fn is_no(&self) -> bool {
        matches!(self, KernelResult::No)
    }
}

/// Counts remainder vertices that are isolated in `G[Q]` and whose neighbors
/// all lie on good paths. If the instance is solvable, this count is at most
/// `k - x` where `x` is the number of bad paths.
pub fn q0_only_good_count(g: &Graph, ctx: &PackingContext) -> usize {
    ctx.q0
        .iter()
        .filter(|&&v| {
            g.neighbors(v)
                .iter()
                .all(|w| ctx.path_of.get(w).is_some_and(|&pi| ctx.paths[pi].good))
        })
        .count()
}

/// Builds the crown input sets: `a` is the union of the 2-vertex remainder
/// components both of whose endpoints have all their packed neighbors on
/// good paths; `b` is the set of good-path vertices adjacent to `a`.
/// Including remainder edges only as whole pairs keeps `G[a]` an induced
/// matching, which the crown construction requires.
pub fn build_a_b(g: &Graph, ctx: &PackingContext) -> (VertexSet, VertexSet) {
    let endpoint_ok = |v: VertexId| {
        g.neighbors(v).iter().all(|w| match ctx.path_of.get(w) {
            Some(&pi) => ctx.paths[pi].good,
            None => ctx.q_vertices.contains(w),
        })
    };
    let mut a = VertexSet::new();
    for &(u, v) in &ctx.q_edges {
        if endpoint_ok(u) && endpoint_ok(v) {
            a.insert(u);
            a.insert(v);
        }
    }
    let mut b = VertexSet::new();
    for &v in &a {
        for &w in g.neighbors(v) {
            if ctx.path_of.contains_key(&w) {
                b.insert(w);
            }
        }
    }
    (a, b)
}

/// Runs the reduction pipeline.
pub fn reduce(inst: &Instance) -> KernelResult {
    reduce_traced(inst, &mut |_| {})
}

/// Like [`reduce`], reporting each fired rule to `trace`.
pub fn reduce_traced(inst: &Instance, trace: &mut dyn FnMut(&str)) -> KernelResult {
    let mut g = inst.graph.clone();
    let mut k = inst.k;
    let mut forced = VertexSet::new();
    let mut kept_edges: Vec<(VertexId, VertexId)> = Vec::new();

    loop {
        // strip 1- and 2-vertex components; they are solved outright
        for comp in g.connected_components() {
            match comp.len() {
                2 => {
                    let mut it = comp.iter();
                    let (u, v) = (*it.next().unwrap(), *it.next().unwrap());
                    trace(&format!("step1: kept matched edge ({u}, {v})"));
                    kept_edges.push((u, v));
                    g = g.delete_vertices(&comp).expect("component is live");
                }
                1 => {
                    let v = *comp.iter().next().unwrap();
                    trace(&format!("step2: forced isolated vertex {v}"));
                    forced.insert(v);
                    k -= 1;
                    g = g.delete_vertices(&comp).expect("component is live");
                }
                _ => {}
            }
        }
        if k < 0 {
            trace("budget exhausted: no");
            return KernelResult::No;
        }

        let packing = greedy_maximal_packing(&g);
        trace(&format!("step3: greedy packing of {} paths", packing.len()));
        let packing = make_proper(&g, packing).expect("packing rules converge");
        debug_assert!(validate_packing(&g, &packing, true));
        trace(&format!("step4: proper packing of {} paths", packing.len()));
        if !packing.is_empty() {
            trace(dump_packing(&packing).trim_end());
        }

        if packing.len() as i64 > k {
            trace(&format!("step5: |P| = {} > k = {k}, no", packing.len()));
            return KernelResult::No;
        }

        let ctx = classify(&g, &packing).expect("proper packing classifies");
        let x = ctx.bad_count as i64;
        let y = ctx.good_count as i64;

        let q0_good = q0_only_good_count(&g, &ctx) as i64;
        if q0_good > k - x {
            trace(&format!(
                "step7: {q0_good} isolated remainder vertices on good paths > k - x = {}, no",
                k - x
            ));
            return KernelResult::No;
        }

        let (a, b) = build_a_b(&g, &ctx);
        trace(&format!("step8: |A| = {}, |B| = {}", a.len(), b.len()));

        if a.len() > 2 * b.len() {
            let crown = find_aim_crown(&g, &a, &b)
                .expect("A/B satisfy the crown preconditions by construction");
            let ids = |s: &VertexSet| {
                s.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            trace(&format!(
                "step9: crown C: {} / H: {}",
                ids(&crown.c),
                ids(&crown.h)
            ));
            let mut remove = crown.c.clone();
            remove.extend(crown.h.iter().copied());
            k -= crown.h.len() as i64;
            forced.extend(crown.h.iter().copied());
            g = g.delete_vertices(&remove).expect("crown is live");
            continue;
        }

        // nothing fired: the counting identity now bounds the kernel
        let n = g.vertex_count() as i64;
        assert!(
            n <= 6 * x + 3 * y + (k - x) + 2 * y,
            "kernel counting identity violated: n = {n}, x = {x}, y = {y}, k = {k}"
        );
        assert!(
            n <= 6 * k,
            "kernel bound violated: n = {n} > 6k = {}",
            6 * k
        );
        trace(&format!("step10: reduced instance has n = {n}, k = {k}"));
        return KernelResult::Reduced {
            instance: Instance::new(g, k),
            forced,
            kept_edges,
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn path(n: u32) -> Graph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    /// Composed decision of a kernel result, using the oracle on the residue.
    fn composed_decision(result: &KernelResult) -> bool {
        match result {
            KernelResult::No => false,
            KernelResult::Reduced { instance, .. } => {
                oracle::decide(&instance.graph, instance.k).unwrap()
            }
        }
    }

    #[test]
    fn single_vertex_needs_budget() {
        let inst = Instance::new(Graph::with_vertices(1), 0);
        assert!(reduce(&inst).is_no());
    }

    #[test]
    fn single_edge_is_free() {
        let inst = Instance::new(Graph::from_edges(2, &[(0, 1)]).unwrap(), 0);
        match reduce(&inst) {
            KernelResult::Reduced {
                instance,
                forced,
                kept_edges,
            } => {
                assert!(instance.graph.is_empty());
                assert_eq!(instance.k, 0);
                assert!(forced.is_empty());
                assert_eq!(kept_edges, vec![(0, 1)]);
            }
            KernelResult::No => panic!("a single edge is a yes-instance"),
        }
    }

    #[test]
    fn p7_budget2_matches_oracle() {
        let g = path(7);
        // oracle: min deletion of P7 is 7 - 2*MIM(P7) = 3
        let min = oracle::min_aim_deletion(&g).unwrap().min_deletion;
        assert_eq!(min, 3);
        let result = reduce(&Instance::new(g.clone(), 2));
        assert_eq!(composed_decision(&result), oracle::decide(&g, 2).unwrap());
        let result = reduce(&Instance::new(g.clone(), 3));
        assert!(composed_decision(&result));
    }

    #[test]
    fn negative_budget_short_circuits() {
        let inst = Instance::new(path(4), -1);
        assert!(reduce(&inst).is_no());
    }

    #[test]
    fn forced_set_accounts_for_budget() {
        // two isolated vertices plus an edge: both singletons are forced
        let g = Graph::from_edges(4, &[(0, 1)]).unwrap();
        match reduce(&Instance::new(g, 5)) {
            KernelResult::Reduced {
                instance, forced, ..
            } => {
                assert_eq!(forced, VertexSet::from([2, 3]));
                assert_eq!(instance.k, 3);
            }
            KernelResult::No => panic!("yes-instance"),
        }
    }

    #[test]
    fn build_a_b_cases() {
        // no Q1-edges at all
        let g = path(4);
        let p = make_proper(&g, greedy_maximal_packing(&g)).unwrap();
        let ctx = classify(&g, &p).unwrap();
        let (a, b) = build_a_b(&g, &ctx);
        assert!(a.is_empty() && b.is_empty());

        // one Q1-edge hanging off a good path's middle vertex:
        // path 0-1-2 packed, pendant edge 3-4 attached at 1
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        let p = make_proper(&g, greedy_maximal_packing(&g)).unwrap();
        let ctx = classify(&g, &p).unwrap();
        assert_eq!(ctx.q_edges, vec![(3, 4)]);
        let (a, b) = build_a_b(&g, &ctx);
        assert_eq!(a, VertexSet::from([3, 4]));
        assert_eq!(b, VertexSet::from([1]));
    }

    #[test]
    fn a_excludes_edges_touching_bad_paths() {
        // bad path 0-1-2 (pendants 5 at 0, 6 at 2), good path 7-8-9 untouched,
        // Q1-edge 3-4 with 3 adjacent to the bad path's vertex 0
        let g = Graph::from_edges(
            10,
            &[
                (0, 1),
                (1, 2),
                (0, 5),
                (2, 6),
                (3, 4),
                (0, 3),
                (7, 8),
                (8, 9),
            ],
        )
        .unwrap();
        let p = make_proper(&g, greedy_maximal_packing(&g)).unwrap();
        let ctx = classify(&g, &p).unwrap();
        let (a, _) = build_a_b(&g, &ctx);
        // whatever the packing looks like, an endpoint adjacent to a bad path
        // disqualifies the whole Q1-edge
        for &v in &a {
            for &w in g.neighbors(v) {
                if let Some(&pi) = ctx.path_of.get(&w) {
                    assert!(ctx.paths[pi].good);
                }
            }
        }
    }

    #[test]
    fn q0_counting_cases() {
        // pendant on a good path
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        let p = make_proper(&g, greedy_maximal_packing(&g)).unwrap();
        let ctx = classify(&g, &p).unwrap();
        assert_eq!(q0_only_good_count(&g, &ctx), 1);

        // pendant adjacent to a bad path counts zero
        let bad = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 3), (2, 4), (1, 5)]).unwrap();
        let p = make_proper(&bad, greedy_maximal_packing(&bad)).unwrap();
        let ctx = classify(&bad, &p).unwrap();
        if !ctx.paths.iter().any(|i| i.good) {
            assert_eq!(q0_only_good_count(&bad, &ctx), 0);
        }
    }

    #[test]
    fn q0_vertex_touching_good_and_bad_paths_is_excluded() {
        // bad path 0-1-2 (pendants 3, 4 on its endpoints), good path 5-6-7,
        // and a lone remainder vertex 8 adjacent to both paths
        let g = Graph::from_edges(
            9,
            &[
                (0, 1),
                (1, 2),
                (0, 3),
                (2, 4),
                (5, 6),
                (6, 7),
                (1, 8),
                (6, 8),
            ],
        )
        .unwrap();
        let p = make_proper(&g, greedy_maximal_packing(&g)).unwrap();
        let ctx = classify(&g, &p).unwrap();
        assert_eq!(
            p.paths(),
            &[
                crate::packing::ThreePath::new(0, 1, 2),
                crate::packing::ThreePath::new(5, 6, 7)
            ]
        );
        assert!(!ctx.paths[0].good);
        assert!(ctx.paths[1].good);
        assert!(ctx.q0.contains(&8));
        // "only adjacent to good paths" excludes vertex 8 and the pendants
        assert_eq!(q0_only_good_count(&g, &ctx), 0);
    }

    #[test]
    fn kernel_bound_holds_on_reduced_output() {
        for (n, k) in [(9u32, 2i64), (12, 3), (15, 4)] {
            let g = path(n);
            if let KernelResult::Reduced { instance, .. } = reduce(&Instance::new(g, k)) {
                assert!(instance.graph.vertex_count() as i64 <= 6 * instance.k);
                assert!(instance.k <= k);
            }
        }
    }

    #[test]
    fn equivalence_and_witness_recomposition_small() {
        // all paths and cycles up to 10 vertices, every budget
        for n in 3..=10u32 {
            let mut graphs = vec![path(n)];
            let cyc: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            graphs.push(Graph::from_edges(n, &cyc).unwrap());
            for g in graphs {
                for k in 0..=(n as i64) {
                    let want = oracle::decide(&g, k).unwrap();
                    let result = reduce(&Instance::new(g.clone(), k));
                    assert_eq!(composed_decision(&result), want, "n={n} k={k}");
                    if let (
                        true,
                        KernelResult::Reduced {
                            instance, forced, ..
                        },
                    ) = (want, &result)
                    {
                        let mut witness = forced.clone();
                        witness.extend(oracle::min_aim_deletion(&instance.graph).unwrap().witness);
                        assert!(g.is_aim_deletion_set(&witness).unwrap());
                        assert!(witness.len() as i64 <= k);
                    }
                }
            }
        }
    }
}
