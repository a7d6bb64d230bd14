//! Crown decompositions in two flavors.
//!
//! A *VC crown* of `G` is a partition `(C, H, R)` with no `C`-`R` edge, `C`
//! independent, and a matching saturating `H` into `C`. An *AIM crown*
//! replaces independence by "`G[C]` is an induced matching" and matches each
//! `H`-vertex to a distinct edge of `G[C]` it touches. Deleting `H` is then
//! part of some minimum deletion set, and `C` can be removed for free.
//!
//! AIM crowns are found by lifting a VC crown of an auxiliary bipartite
//! graph whose left side has one node per edge of `G[A]`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexId, VertexSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CrownError {
    #[error("the given set is not independent: edge ({0}, {1}) inside it")]
    NotIndependent(VertexId, VertexId),
    #[error("need |I| > |N(I)|, got |I| = {i} and |N(I)| = {n}")]
    NoVcSurplus { i: usize, n: usize },
    #[error("need |A| > 2|B|, got |A| = {a} and |B| = {b}")]
    NoAimSurplus { a: usize, b: usize },
    #[error("A and B are not disjoint: {0} is in both")]
    NotDisjoint(VertexId),
    #[error("G[A] is not an induced matching: vertex {0} has degree {1} inside A")]
    NotMatching(VertexId, usize),
    #[error("vertex {0} in A is adjacent to {1} outside A and B")]
    OutsideNeighbor(VertexId, VertexId),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A VC crown decomposition with its witnessing matching `H -> C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VcCrown {
    pub c: VertexSet,
    pub h: VertexSet,
    pub r: VertexSet,
    pub matching: BTreeMap<VertexId, VertexId>,
}

/// An AIM crown decomposition; `matching` maps each `H`-vertex to a distinct
/// edge of `G[C]`, stored as a sorted pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AimCrown {
    pub c: VertexSet,
    pub h: VertexSet,
    pub r: VertexSet,
    pub matching: BTreeMap<VertexId, (VertexId, VertexId)>,
}

/// The auxiliary bipartite graph for AIM crown construction: one left node
/// per edge-component of `G[A]`, one right node per `B`-vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxiliaryBipartite {
    /// Left side: the edge-components of `G[A]`, sorted pairs in order.
    pub components: Vec<(VertexId, VertexId)>,
    /// Right side: the `B`-vertices, ascending.
    pub anchors: Vec<VertexId>,
    /// Adjacency: for each left index, the sorted right indices whose vertex
    /// is adjacent in `G` to that component.
    pub adj: Vec<Vec<usize>>,
}

/// Kuhn's augmenting-path maximum matching on an explicit bipartite graph.
/// `adj[l]` lists right indices for left node `l`. Returns per-side partner
/// arrays. Deterministic: left nodes and edges are scanned in index order.
fn maximum_matching(
    left_count: usize,
    right_count: usize,
    adj: &[Vec<usize>],
) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
    let mut match_left: Vec<Option<usize>> = vec![None; left_count];
    let mut match_right: Vec<Option<usize>> = vec![None; right_count];

    fn try_augment(
        l: usize,
        adj: &[Vec<usize>],
        match_left: &mut [Option<usize>],
        match_right: &mut [Option<usize>],
        visited: &mut [bool],
    ) -> bool {
        for &r in &adj[l] {
            if visited[r] {
                continue;
            }
            visited[r] = true;
            if match_right[r].is_none()
                || try_augment(
                    match_right[r].unwrap(),
                    adj,
                    match_left,
                    match_right,
                    visited,
                )
            {
                match_left[l] = Some(r);
                match_right[r] = Some(l);
                return true;
            }
        }
        false
    }

    for l in 0..left_count {
        let mut visited = vec![false; right_count];
        try_augment(l, adj, &mut match_left, &mut match_right, &mut visited);
    }
    (match_left, match_right)
}

/// Finds a VC crown from an independent set `i_set` with `|I| > |N(I)|`:
/// compute a maximum matching between `I` and `N(I)`, then take the
/// `I`-vertices reachable by alternating paths from unmatched ones.
pub fn find_vc_crown(g: &Graph, i_set: &VertexSet) -> Result<VcCrown, CrownError> {
    for &v in i_set {
        if !g.contains(v) {
            return Err(GraphError::DeadVertex(v).into());
        }
        if let Some(&u) = g.neighbors(v).iter().find(|u| i_set.contains(u)) {
            return Err(CrownError::NotIndependent(v.min(u), v.max(u)));
        }
    }
    let nbrs = g.open_neighborhood(i_set)?;
    if i_set.len() <= nbrs.len() {
        return Err(CrownError::NoVcSurplus {
            i: i_set.len(),
            n: nbrs.len(),
        });
    }

    let lefts: Vec<VertexId> = i_set.iter().copied().collect();
    let rights: Vec<VertexId> = nbrs.iter().copied().collect();
    let right_index: BTreeMap<VertexId, usize> =
        rights.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let adj: Vec<Vec<usize>> = lefts
        .iter()
        .map(|&v| g.neighbors(v).iter().map(|u| right_index[u]).collect())
        .collect();
    let (match_left, match_right) = maximum_matching(lefts.len(), rights.len(), &adj);

    // alternating reachability from unmatched left vertices:
    // left -> right over any edge, right -> left over the matching edge
    let mut reach_left = vec![false; lefts.len()];
    let mut reach_right = vec![false; rights.len()];
    let mut stack: Vec<usize> = (0..lefts.len())
        .filter(|&l| match_left[l].is_none())
        .collect();
    for &l in &stack {
        reach_left[l] = true;
    }
    while let Some(l) = stack.pop() {
        for &r in &adj[l] {
            if reach_right[r] {
                continue;
            }
            reach_right[r] = true;
            let lj = match_right[r]
                .expect("a reachable unmatched right vertex would be an augmenting path");
            if !reach_left[lj] {
                reach_left[lj] = true;
                stack.push(lj);
            }
        }
    }

    let c: VertexSet = lefts
        .iter()
        .enumerate()
        .filter(|&(l, _)| reach_left[l])
        .map(|(_, &v)| v)
        .collect();
    let h: VertexSet = rights
        .iter()
        .enumerate()
        .filter(|&(r, _)| reach_right[r])
        .map(|(_, &v)| v)
        .collect();
    let r: VertexSet = g
        .vertices()
        .filter(|v| !c.contains(v) && !h.contains(v))
        .collect();
    let matching: BTreeMap<VertexId, VertexId> = rights
        .iter()
        .enumerate()
        .filter(|&(ri, _)| reach_right[ri])
        .map(|(ri, &hv)| {
            let l = match_right[ri].expect("vertices in H are matched");
            assert!(reach_left[l], "matched partner of an H-vertex lies in C");
            (hv, lefts[l])
        })
        .collect();

    let crown = VcCrown { c, h, r, matching };
    assert!(
        check_vc_crown(g, &crown),
        "constructed VC crown must verify"
    );
    Ok(crown)
}

/// Clause-by-clause check of the VC crown conditions.
pub fn check_vc_crown(g: &Graph, crown: &VcCrown) -> bool {
    let VcCrown { c, h, r, matching } = crown;
    // partition of the vertex set
    let total = c.len() + h.len() + r.len();
    if total != g.vertex_count() {
        return false;
    }
    let mut union = VertexSet::new();
    union.extend(c.iter().copied());
    union.extend(h.iter().copied());
    union.extend(r.iter().copied());
    if union.len() != total || union != g.vertex_set() {
        return false;
    }
    // no edge between C and R
    if c.iter()
        .any(|&v| g.neighbors(v).iter().any(|u| r.contains(u)))
    {
        return false;
    }
    // C independent
    if c.iter()
        .any(|&v| g.neighbors(v).iter().any(|u| c.contains(u)))
    {
        return false;
    }
    // matching saturates H into C, injectively, along edges
    if matching.len() != h.len() {
        return false;
    }
    let mut targets = VertexSet::new();
    for (&x, &y) in matching {
        if !h.contains(&x) || !c.contains(&y) || !g.has_edge(x, y) || !targets.insert(y) {
            return false;
        }
    }
    true
}

/// Builds the auxiliary bipartite graph, validating the preconditions:
/// `a` and `b` disjoint, `G[a]` an induced matching, and no `a`-vertex
/// adjacent to anything outside `a ∪ b`.
pub fn build_auxiliary(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
) -> Result<AuxiliaryBipartite, CrownError> {
    if let Some(&v) = a.iter().find(|v| b.contains(v)) {
        return Err(CrownError::NotDisjoint(v));
    }
    for &v in a.iter().chain(b.iter()) {
        if !g.contains(v) {
            return Err(GraphError::DeadVertex(v).into());
        }
    }
    let mut partner: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for &v in a {
        let inside: Vec<VertexId> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|u| a.contains(u))
            .collect();
        if inside.len() != 1 {
            return Err(CrownError::NotMatching(v, inside.len()));
        }
        partner.insert(v, inside[0]);
        if let Some(&w) = g
            .neighbors(v)
            .iter()
            .find(|w| !a.contains(w) && !b.contains(w))
        {
            return Err(CrownError::OutsideNeighbor(v, w));
        }
    }
    let components: Vec<(VertexId, VertexId)> = a
        .iter()
        .filter(|&&v| v < partner[&v])
        .map(|&v| (v, partner[&v]))
        .collect();
    let anchors: Vec<VertexId> = b.iter().copied().collect();
    let anchor_index: BTreeMap<VertexId, usize> =
        anchors.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let adj: Vec<Vec<usize>> = components
        .iter()
        .map(|&(u, v)| {
            let mut idxs: Vec<usize> = g
                .neighbors(u)
                .iter()
                .chain(g.neighbors(v).iter())
                .filter_map(|w| anchor_index.get(w).copied())
                .collect();
            idxs.sort_unstable();
            idxs.dedup();
            idxs
        })
        .collect();
    Ok(AuxiliaryBipartite {
        components,
        anchors,
        adj,
    })
}

impl AuxiliaryBipartite {
    /// Materializes the auxiliary graph with left nodes `0..la` and right
    /// nodes `la..la+lb`, so the VC crown machinery can run on it.
    fn to_graph(&self) -> (Graph, VertexSet) {
        let la = self.components.len() as u32;
        let lb = self.anchors.len() as u32;
        let mut g = Graph::with_vertices(la + lb);
        for (l, rights) in self.adj.iter().enumerate() {
            for &r in rights {
                g.add_edge(l as u32, la + r as u32).expect("ids in range");
            }
        }
        (g, (0..la).collect())
    }
}

/// Finds an AIM crown with `C ⊆ a` and `H ⊆ b`, given the auxiliary-graph
/// preconditions and `|a| > 2|b|`: lift a VC crown of the auxiliary graph.
pub fn find_aim_crown(g: &Graph, a: &VertexSet, b: &VertexSet) -> Result<AimCrown, CrownError> {
    let aux = build_auxiliary(g, a, b)?;
    if a.len() <= 2 * b.len() {
        return Err(CrownError::NoAimSurplus {
            a: a.len(),
            b: b.len(),
        });
    }
    let (aux_graph, left_set) = aux.to_graph();
    let vc = find_vc_crown(&aux_graph, &left_set)?;

    let la = aux.components.len() as u32;
    let mut c = VertexSet::new();
    for &l in &vc.c {
        let (u, v) = aux.components[l as usize];
        c.insert(u);
        c.insert(v);
    }
    let h: VertexSet =
        vc.h.iter()
            .map(|&r| aux.anchors[(r - la) as usize])
            .collect();
    let r: VertexSet = g
        .vertices()
        .filter(|v| !c.contains(v) && !h.contains(v))
        .collect();
    let matching: BTreeMap<VertexId, (VertexId, VertexId)> = vc
        .matching
        .iter()
        .map(|(&hv, &lv)| (aux.anchors[(hv - la) as usize], aux.components[lv as usize]))
        .collect();

    let crown = AimCrown { c, h, r, matching };
    assert!(check_aim_crown(g, &crown), "lifted AIM crown must verify");
    Ok(crown)
}

/// Clause-by-clause check of the AIM crown conditions.
pub fn check_aim_crown(g: &Graph, crown: &AimCrown) -> bool {
    let AimCrown { c, h, r, matching } = crown;
    let total = c.len() + h.len() + r.len();
    if total != g.vertex_count() {
        return false;
    }
    let mut union = VertexSet::new();
    union.extend(c.iter().copied());
    union.extend(h.iter().copied());
    union.extend(r.iter().copied());
    if union.len() != total || union != g.vertex_set() {
        return false;
    }
    // no edge between C and R
    if c.iter()
        .any(|&v| g.neighbors(v).iter().any(|u| r.contains(u)))
    {
        return false;
    }
    // G[C] is an induced matching
    match g.induced_subgraph(c) {
        Ok(sub) => {
            if !sub.is_induced_matching() {
                return false;
            }
        }
        Err(_) => return false,
    }
    // injective map from all of H to distinct edges of G[C], each H-vertex
    // adjacent to at least one endpoint of its edge
    if matching.len() != h.len() {
        return false;
    }
    let mut used_edges = std::collections::BTreeSet::new();
    for (&x, &(eu, ev)) in matching {
        if !h.contains(&x) || !c.contains(&eu) || !c.contains(&ev) {
            return false;
        }
        if !g.has_edge(eu, ev) || !used_edges.insert((eu.min(ev), eu.max(ev))) {
            return false;
        }
        if !g.has_edge(x, eu) && !g.has_edge(x, ev) {
            return false;
        }
    }
    true
}
