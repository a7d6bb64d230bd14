//! Maximal packings of vertex-disjoint 3-paths and the two update rules that
//! turn them into *proper* packings.
//!
//! Terminology: for a maximal packing `P`, let `Q = V \ V(P)`. Maximality
//! forces every component of `G[Q]` to have at most two vertices. A packed
//! path is *good* if at most one of its vertices is adjacent to `Q`, *bad*
//! otherwise; `V_i` is the path plus all `Q`-components adjacent to it.
//! A packing is *proper* when every bad path has `|V_i| <= 6`.

use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

use crate::graph::{Graph, VertexId, VertexSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PackingError {
    #[error("triple ({0}, {1}, {2}) is not a 3-path in the graph")]
    InvalidPath(VertexId, VertexId, VertexId),
    #[error("packing paths are not pairwise vertex-disjoint")]
    Overlap,
    #[error("packing is not maximal: a 3-path remains outside it")]
    NotMaximal,
    #[error("no replacement making path {0} good exists in its neighborhood")]
    NoQuasiGood(usize),
    #[error("packing update loop exceeded its iteration guard")]
    NonTermination,
}

/// An ordered vertex triple `u1-u2-u3` with edges `{u1,u2}` and `{u2,u3}`.
/// Stored canonically with `u1 < u3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct ThreePath {
    pub u1: VertexId,
    pub u2: VertexId,
    pub u3: VertexId,
}

impl ThreePath {
    pub fn new(a: VertexId, b: VertexId, c: VertexId) -> Self {
        assert!(
            a != b && b != c && a != c,
            "3-path vertices must be distinct"
        );
        let (u1, u3) = if a < c { (a, c) } else { (c, a) };
        Self { u1, u2: b, u3 }
    }

    pub fn vertices(&self) -> [VertexId; 3] {
        [self.u1, self.u2, self.u3]
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.u1 == v || self.u2 == v || self.u3 == v
    }

    pub fn is_valid_in(&self, g: &Graph) -> bool {
        self.u1 != self.u3 && g.has_edge(self.u1, self.u2) && g.has_edge(self.u2, self.u3)
    }
}

/// A set of pairwise vertex-disjoint 3-paths.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Packing {
    paths: Vec<ThreePath>,
}

impl Packing {
    pub fn new(paths: Vec<ThreePath>) -> Self {
        Self { paths }
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn paths(&self) -> &[ThreePath] {
        &self.paths
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.paths.iter().flat_map(|p| p.vertices()).collect()
    }

    fn push(&mut self, p: ThreePath) {
        self.paths.push(p);
    }

    /// Replaces the path at `idx` with one or more paths.
    fn replace(&mut self, idx: usize, with: Vec<ThreePath>) {
        self.paths.splice(idx..=idx, with);
    }
}

/// Derived bookkeeping for a maximal packing.
#[derive(Debug, Clone)]
pub struct PackingContext {
    pub p_vertices: VertexSet,
    pub q_vertices: VertexSet,
    /// Degree-0 vertices of `G[Q]`.
    pub q0: VertexSet,
    /// Degree-1 vertices of `G[Q]`.
    pub q1: VertexSet,
    /// Two-vertex components of `G[Q]`, as sorted pairs.
    pub q_edges: Vec<(VertexId, VertexId)>,
    /// Per-path info, aligned with the packing's path list.
    pub paths: Vec<PathInfo>,
    /// Map from packed vertex to its path index.
    pub path_of: BTreeMap<VertexId, usize>,
    /// Number of bad paths (x).
    pub bad_count: usize,
    /// Number of good paths (y).
    pub good_count: usize,
}

#[derive(Debug, Clone)]
pub struct PathInfo {
    /// Q-vertices in the components of `G[Q]` adjacent to this path.
    pub q_of: VertexSet,
    /// `V_i`: the path's vertices plus `q_of`.
    pub v_of: VertexSet,
    pub good: bool,
}

/// Finds the lexicographically smallest 3-path whose vertices avoid `used`,
/// ordering by (smaller endpoint, center, larger endpoint).
fn smallest_available_path(g: &Graph, used: &VertexSet) -> Option<ThreePath> {
    for a in g.vertices() {
        if used.contains(&a) {
            continue;
        }
        for &b in g.neighbors(a) {
            if used.contains(&b) {
                continue;
            }
            for &c in g.neighbors(b) {
                if c == a || used.contains(&c) {
                    continue;
                }
                return Some(ThreePath::new(a, b, c));
            }
        }
    }
    None
}

/// Greedily adds smallest available 3-paths until none remains.
pub fn extend_to_maximal(g: &Graph, mut p: Packing) -> Packing {
    let mut used = p.vertex_set();
    while let Some(path) = smallest_available_path(g, &used) {
        used.extend(path.vertices());
        p.push(path);
    }
    p
}

/// Builds a maximal packing greedily, scanning vertices in id order and
/// taking the lexicographically smallest available 3-path each time.
pub fn greedy_maximal_packing(g: &Graph) -> Packing {
    extend_to_maximal(g, Packing::default())
}

/// All 3-paths of `G[within]`, in canonical lexicographic order.
pub fn enumerate_three_paths(g: &Graph, within: &VertexSet) -> Vec<ThreePath> {
    let mut out = BTreeSet::new();
    for &b in within {
        let nbrs: Vec<VertexId> = g
            .neighbors(b)
            .iter()
            .copied()
            .filter(|v| within.contains(v))
            .collect();
        for (i, &a) in nbrs.iter().enumerate() {
            for &c in &nbrs[i + 1..] {
                out.insert(ThreePath::new(a, b, c));
            }
        }
    }
    out.into_iter().collect()
}

/// Computes the full context for a valid maximal packing.
pub fn classify(g: &Graph, p: &Packing) -> Result<PackingContext, PackingError> {
    let mut path_of = BTreeMap::new();
    for (i, path) in p.paths().iter().enumerate() {
        if !path.is_valid_in(g) {
            return Err(PackingError::InvalidPath(path.u1, path.u2, path.u3));
        }
        for v in path.vertices() {
            if path_of.insert(v, i).is_some() {
                return Err(PackingError::Overlap);
            }
        }
    }
    let p_vertices: VertexSet = path_of.keys().copied().collect();
    let q_vertices: VertexSet = g.vertices().filter(|v| !p_vertices.contains(v)).collect();

    let gq = g
        .induced_subgraph(&q_vertices)
        .expect("q_vertices are live");
    let mut q0 = VertexSet::new();
    let mut q1 = VertexSet::new();
    let mut q_edges = Vec::new();
    let mut comp_of: BTreeMap<VertexId, usize> = BTreeMap::new();
    let comps = gq.connected_components();
    for (ci, comp) in comps.iter().enumerate() {
        match comp.len() {
            1 => q0.extend(comp.iter().copied()),
            2 => {
                q1.extend(comp.iter().copied());
                let mut it = comp.iter();
                q_edges.push((*it.next().unwrap(), *it.next().unwrap()));
            }
            _ => return Err(PackingError::NotMaximal),
        }
        for &v in comp {
            comp_of.insert(v, ci);
        }
    }

    // components of G[Q] adjacent to each path
    let mut comps_of_path: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); p.len()];
    for (&v, &ci) in &comp_of {
        for &w in g.neighbors(v) {
            if let Some(&pi) = path_of.get(&w) {
                comps_of_path[pi].insert(ci);
            }
        }
    }

    let mut paths = Vec::with_capacity(p.len());
    let mut bad_count = 0;
    let mut good_count = 0;
    for (i, path) in p.paths().iter().enumerate() {
        let mut q_of = VertexSet::new();
        for &ci in &comps_of_path[i] {
            q_of.extend(comps[ci].iter().copied());
        }
        let mut v_of = q_of.clone();
        v_of.extend(path.vertices());
        let touching = path
            .vertices()
            .iter()
            .filter(|&&v| g.neighbors(v).iter().any(|u| q_vertices.contains(u)))
            .count();
        let good = touching <= 1;
        if good {
            good_count += 1;
        } else {
            bad_count += 1;
        }
        paths.push(PathInfo { q_of, v_of, good });
    }

    Ok(PackingContext {
        p_vertices,
        q_vertices,
        q0,
        q1,
        q_edges,
        paths,
        path_of,
        bad_count,
        good_count,
    })
}

/// Extracts two vertex-disjoint 3-paths from `G[v_of]` if they exist:
/// the lexicographically smallest first path for which the remainder still
/// contains a 3-path.
fn find_two_disjoint_paths(g: &Graph, v_of: &VertexSet) -> Option<(ThreePath, ThreePath)> {
    if v_of.len() < 6 {
        return None;
    }
    let sub = g.induced_subgraph(v_of).expect("v_of is live");
    for first in enumerate_three_paths(g, v_of) {
        let used: VertexSet = first.vertices().into_iter().collect();
        if let Some(second) = smallest_available_path(&sub, &used) {
            return Some((first, second));
        }
    }
    None
}

/// Rule 1: if some `G[V_i]` contains two vertex-disjoint 3-paths, replace the
/// path by them and re-extend to maximality. Strictly grows the packing.
pub fn apply_rule1(g: &Graph, p: &Packing) -> Result<Option<Packing>, PackingError> {
    let ctx = classify(g, p)?;
    for i in 0..p.len() {
        if let Some((first, second)) = find_two_disjoint_paths(g, &ctx.paths[i].v_of) {
            let mut next = p.clone();
            next.replace(i, vec![first, second]);
            let next = extend_to_maximal(g, next);
            debug_assert!(next.len() > p.len());
            return Ok(Some(next));
        }
    }
    Ok(None)
}

/// True iff `candidate` would be a good path after replacing path `idx`.
fn good_after_swap(g: &Graph, ctx: &PackingContext, idx: usize, candidate: &ThreePath) -> bool {
    let old_vertices = candidate_old_vertices(ctx, idx);
    let in_new_q = |v: VertexId| -> bool {
        if candidate.contains(v) {
            return false;
        }
        ctx.q_vertices.contains(&v) || old_vertices.contains(&v)
    };
    let touching = candidate
        .vertices()
        .iter()
        .filter(|&&v| g.neighbors(v).iter().any(|&u| in_new_q(u)))
        .count();
    touching <= 1
}

fn candidate_old_vertices(ctx: &PackingContext, idx: usize) -> VertexSet {
    ctx.path_of
        .iter()
        .filter(|&(_, &pi)| pi == idx)
        .map(|(&v, _)| v)
        .collect()
}

/// Vertices that leaving `idx`'s old path would free into Q and that touch
/// some other packed path. Used to prefer replacements that do not disturb
/// the rest of the packing.
fn swap_damage(g: &Graph, ctx: &PackingContext, idx: usize, candidate: &ThreePath) -> usize {
    candidate_old_vertices(ctx, idx)
        .iter()
        .filter(|&&v| !candidate.contains(v))
        .filter(|&&v| {
            g.neighbors(v)
                .iter()
                .any(|u| matches!(ctx.path_of.get(u), Some(&pj) if pj != idx))
        })
        .count()
}

/// Finds a replacement for the bad path at `idx` (with `|V_i| >= 7`, Rule 1
/// inapplicable) that is good once swapped in. Among qualifying candidates,
/// prefers one whose freed vertices touch no other packed path, then the
/// lexicographically smallest.
pub fn find_quasi_good(g: &Graph, p: &Packing, idx: usize) -> Result<ThreePath, PackingError> {
    let ctx = classify(g, p)?;
    let info = &ctx.paths[idx];
    assert!(
        !info.good && info.v_of.len() >= 7,
        "quasi-good search requires a bad path with |V_i| >= 7"
    );
    let mut fallback = None;
    for candidate in enumerate_three_paths(g, &info.v_of) {
        if !good_after_swap(g, &ctx, idx, &candidate) {
            continue;
        }
        if swap_damage(g, &ctx, idx, &candidate) == 0 {
            return Ok(candidate);
        }
        if fallback.is_none() {
            fallback = Some(candidate);
        }
    }
    fallback.ok_or(PackingError::NoQuasiGood(idx))
}

fn measure(g: &Graph, p: &Packing) -> Result<(usize, usize), PackingError> {
    let ctx = classify(g, p)?;
    let bad7 = ctx
        .paths
        .iter()
        .filter(|info| !info.good && info.v_of.len() >= 7)
        .count();
    Ok((p.len(), bad7))
}

/// Applies Rules 1 and 2 until the packing is proper: maximal, Rule 1
/// exhausted, and every bad path has `|V_i| <= 6`.
///
/// Each iteration must change the packing, repeating a previous state is a
/// livelock, and the total iteration count is capped; any violation is an
/// internal error.
pub fn make_proper(g: &Graph, p: Packing) -> Result<Packing, PackingError> {
    let mut p = extend_to_maximal(g, p);
    let budget = g.vertex_count() * g.vertex_count() + 128;
    let mut seen: BTreeSet<Vec<ThreePath>> = BTreeSet::new();
    for _ in 0..budget {
        let mut state = p.paths().to_vec();
        state.sort_unstable();
        if !seen.insert(state) {
            return Err(PackingError::NonTermination);
        }
        if let Some(next) = apply_rule1(g, &p)? {
            p = next;
            continue;
        }
        let (_, bad7) = measure(g, &p)?;
        if bad7 == 0 {
            return Ok(p);
        }
        let ctx = classify(g, &p)?;
        let idx = ctx
            .paths
            .iter()
            .position(|info| !info.good && info.v_of.len() >= 7)
            .expect("bad7 > 0");
        let replacement = find_quasi_good(g, &p, idx)?;
        p.replace(idx, vec![replacement]);
        p = extend_to_maximal(g, p);
    }
    Err(PackingError::NonTermination)
}

/// Checks path validity, disjointness, maximality and (optionally)
/// properness. Total: returns false instead of erroring.
pub fn validate_packing(g: &Graph, p: &Packing, require_proper: bool) -> bool {
    let mut used = VertexSet::new();
    for path in p.paths() {
        if !path.is_valid_in(g) {
            return false;
        }
        for v in path.vertices() {
            if !used.insert(v) {
                return false;
            }
        }
    }
    if smallest_available_path(g, &used).is_some() {
        return false;
    }
    if require_proper {
        let ctx = classify(g, p).expect("valid maximal packing");
        if ctx
            .paths
            .iter()
            .any(|info| !info.good && info.v_of.len() > 6)
        {
            return false;
        }
    }
    true
}

/// One line per path, `P <u1> <u2> <u3>`; used by trace output.
pub fn dump_packing(p: &Packing) -> String {
    let mut out = String::new();
    for path in p.paths() {
        out.push_str(&format!("P {} {} {}\n", path.u1, path.u2, path.u3));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_graph(n: u32) -> Graph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn greedy_on_small_graphs() {
        let p3 = path_graph(3);
        let p = greedy_maximal_packing(&p3);
        assert_eq!(p.len(), 1);
        assert!(validate_packing(&p3, &p, false));

        let edge = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert!(greedy_maximal_packing(&edge).is_empty());
    }

    #[test]
    fn greedy_on_p6_packs_two_disjoint_paths() {
        let p6 = path_graph(6);
        let p = greedy_maximal_packing(&p6);
        assert_eq!(p.len(), 2);
        // exhaustive check: disjoint valid triples covering everything
        let mut seen = VertexSet::new();
        for path in p.paths() {
            assert!(path.is_valid_in(&p6));
            for v in path.vertices() {
                assert!(seen.insert(v));
            }
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(p.paths()[0], ThreePath::new(0, 1, 2));
        assert_eq!(p.paths()[1], ThreePath::new(3, 4, 5));
    }

    #[test]
    fn classify_p3_all_in_packing() {
        let g = path_graph(3);
        let p = greedy_maximal_packing(&g);
        let ctx = classify(&g, &p).unwrap();
        assert!(ctx.q_vertices.is_empty());
        assert!(ctx.paths[0].good);
        assert_eq!(ctx.good_count + ctx.bad_count, p.len());
    }

    #[test]
    fn classify_p4_single_q0() {
        let g = path_graph(4);
        let p = Packing::new(vec![ThreePath::new(0, 1, 2)]);
        let ctx = classify(&g, &p).unwrap();
        assert_eq!(ctx.q_vertices, VertexSet::from([3]));
        assert_eq!(ctx.q0, VertexSet::from([3]));
        assert!(ctx.q1.is_empty());
        assert!(ctx.paths[0].good, "only vertex 2 touches Q");
    }

    #[test]
    fn classify_detects_bad_path() {
        // path 0-1-2 with pendants on both endpoints
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 3), (2, 4)]).unwrap();
        let p = Packing::new(vec![ThreePath::new(0, 1, 2)]);
        let ctx = classify(&g, &p).unwrap();
        assert!(!ctx.paths[0].good);
        assert_eq!(ctx.paths[0].v_of, VertexSet::from([0, 1, 2, 3, 4]));
    }

    #[test]
    fn classify_rejects_broken_packings() {
        let g = path_graph(6);
        let overlapping = Packing::new(vec![ThreePath::new(0, 1, 2), ThreePath::new(2, 3, 4)]);
        assert!(matches!(
            classify(&g, &overlapping),
            Err(PackingError::Overlap)
        ));
        let not_maximal = Packing::new(vec![ThreePath::new(0, 1, 2)]);
        assert!(matches!(
            classify(&g, &not_maximal),
            Err(PackingError::NotMaximal)
        ));
    }

    #[test]
    fn rule1_splits_centered_packing_on_p6() {
        let g = path_graph(6);
        let p = Packing::new(vec![ThreePath::new(1, 2, 3)]);
        // V_i covers all six vertices, so two disjoint paths exist
        let next = apply_rule1(&g, &p).unwrap().expect("rule 1 applies");
        assert_eq!(next.len(), 2);
        assert!(validate_packing(&g, &next, false));
    }

    #[test]
    fn rule1_absent_on_small_neighborhoods() {
        let g = path_graph(3);
        let p = greedy_maximal_packing(&g);
        assert!(apply_rule1(&g, &p).unwrap().is_none());

        let two = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        let p = greedy_maximal_packing(&two);
        assert_eq!(p.len(), 2);
        assert!(apply_rule1(&two, &p).unwrap().is_none());
    }

    /// Spider: path a-b-c with two pendant Q-edges on a and two on c.
    /// |V_i| = 11 and both endpoints touch Q, so the path is bad.
    fn spider() -> (Graph, Packing) {
        // a=0 b=1 c=2; pendant edges (3,4),(5,6) at a; (7,8),(9,10) at c
        let g = Graph::from_edges(
            11,
            &[
                (0, 1),
                (1, 2),
                (0, 3),
                (3, 4),
                (0, 5),
                (5, 6),
                (2, 7),
                (7, 8),
                (2, 9),
                (9, 10),
            ],
        )
        .unwrap();
        let p = Packing::new(vec![ThreePath::new(0, 1, 2)]);
        (g, p)
    }

    #[test]
    fn quasi_good_on_spider() {
        let (g, p) = spider();
        let ctx = classify(&g, &p).unwrap();
        assert!(!ctx.paths[0].good);
        assert!(ctx.paths[0].v_of.len() >= 7);
        let candidate = find_quasi_good(&g, &p, 0).unwrap();
        assert!(candidate.is_valid_in(&g));
        // independent goodness check: with the packing now only {candidate},
        // Q is everything else; at most one candidate vertex may touch it
        let new_q: VertexSet = g.vertices().filter(|&v| !candidate.contains(v)).collect();
        let touching = candidate
            .vertices()
            .iter()
            .filter(|&&v| g.neighbors(v).iter().any(|u| new_q.contains(u)))
            .count();
        assert!(touching <= 1);
    }

    #[test]
    fn make_proper_is_fixpoint_on_proper_packings() {
        let g = path_graph(3);
        let p = greedy_maximal_packing(&g);
        let out = make_proper(&g, p.clone()).unwrap();
        assert_eq!(out, p);
    }

    #[test]
    fn make_proper_grows_p6_packing() {
        let g = path_graph(6);
        let p = Packing::new(vec![ThreePath::new(1, 2, 3)]);
        let out = make_proper(&g, p).unwrap();
        assert_eq!(out.len(), 2);
        assert!(validate_packing(&g, &out, true));
    }

    #[test]
    fn make_proper_on_spider() {
        let (g, p) = spider();
        let out = make_proper(&g, p).unwrap();
        assert!(validate_packing(&g, &out, true));
    }

    #[test]
    fn validate_rejects_non_maximal() {
        let g = path_graph(6);
        let p = Packing::new(vec![ThreePath::new(0, 1, 2)]);
        // {3,4,5} is an unpacked 3-path
        assert!(!validate_packing(&g, &p, false));
    }

    #[test]
    fn validate_rejects_overlap() {
        let g = path_graph(6);
        let p = Packing::new(vec![ThreePath::new(0, 1, 2), ThreePath::new(2, 3, 4)]);
        assert!(!validate_packing(&g, &p, false));
    }

    #[test]
    fn packing_dump_format() {
        let p = Packing::new(vec![ThreePath::new(2, 1, 0)]);
        assert_eq!(dump_packing(&p), "P 0 1 2\n");
    }
}
