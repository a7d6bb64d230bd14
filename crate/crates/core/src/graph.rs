//! Undirected simple graphs with stable integer vertex ids.
//!
//! Ids survive deletions unchanged, so branch bookkeeping and witness
//! reconstruction can always talk about vertices of the original graph.
//! Adjacency is stored in sorted sets and every iteration order is
//! id-ascending, which keeps all downstream tie-breaking deterministic.

use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// Vertex identifier. Stable across deletions.
pub type VertexId = u32;

/// An ordered set of vertex ids.
pub type VertexSet = BTreeSet<VertexId>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex id {0} out of range, graph was declared with n = {1}")]
    IdOutOfRange(VertexId, u32),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("vertex id {0} is not in the graph")]
    DeadVertex(VertexId),
}

/// An undirected simple graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<VertexId, VertexSet>,
}

impl Graph {
    /// Creates an empty graph.
    pub fn new() -> Self {
        Self::default()
    }

    /// Creates a graph with vertices `0..n` and no edges.
    pub fn with_vertices(n: u32) -> Self {
        let mut g = Self::new();
        for v in 0..n {
            g.add_vertex(v);
        }
        g
    }

    /// Builds a graph with vertices `0..n` from an edge list.
    /// Duplicate pairs (in either orientation) collapse to a single edge.
    pub fn from_edges(n: u32, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut g = Self::with_vertices(n);
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::IdOutOfRange(u, n));
            }
            if v >= n {
                return Err(GraphError::IdOutOfRange(v, n));
            }
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Inserts a vertex; a no-op if it is already present.
    pub fn add_vertex(&mut self, v: VertexId) {
        self.adj.entry(v).or_default();
    }

    /// Inserts an edge between two live vertices.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if !self.contains(u) {
            return Err(GraphError::DeadVertex(u));
        }
        if !self.contains(v) {
            return Err(GraphError::DeadVertex(v));
        }
        self.adj.get_mut(&u).unwrap().insert(v);
        self.adj.get_mut(&v).unwrap().insert(u);
        Ok(())
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    /// Live vertex ids in ascending order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices().collect()
    }

    /// Neighbors of a live vertex. Panics on a dead id; use [`Graph::degree`]
    /// for a checked variant.
    pub fn neighbors(&self, v: VertexId) -> &VertexSet {
        self.adj
            .get(&v)
            .unwrap_or_else(|| panic!("vertex {v} is not in the graph"))
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj.get(&u).is_some_and(|s| s.contains(&v))
    }

    /// Edges as `(u, v)` pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (&u, nbrs) in &self.adj {
            for &v in nbrs.range(u + 1..) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn degree(&self, v: VertexId) -> Result<usize, GraphError> {
        self.adj
            .get(&v)
            .map(|s| s.len())
            .ok_or(GraphError::DeadVertex(v))
    }

    fn check_live(&self, xs: &VertexSet) -> Result<(), GraphError> {
        for &v in xs {
            if !self.contains(v) {
                return Err(GraphError::DeadVertex(v));
            }
        }
        Ok(())
    }

    /// `N(X)`: all neighbors of vertices in `xs`, excluding `xs` itself.
    pub fn open_neighborhood(&self, xs: &VertexSet) -> Result<VertexSet, GraphError> {
        self.check_live(xs)?;
        let mut out = VertexSet::new();
        for &v in xs {
            out.extend(self.neighbors(v).iter().copied());
        }
        for v in xs {
            out.remove(v);
        }
        Ok(out)
    }

    /// `N[X] = N(X) ∪ X`.
    pub fn closed_neighborhood(&self, xs: &VertexSet) -> Result<VertexSet, GraphError> {
        let mut out = self.open_neighborhood(xs)?;
        out.extend(xs.iter().copied());
        Ok(out)
    }

    /// Returns the induced subgraph on `V \ xs`.
    pub fn delete_vertices(&self, xs: &VertexSet) -> Result<Graph, GraphError> {
        self.check_live(xs)?;
        let mut adj = BTreeMap::new();
        for (&v, nbrs) in &self.adj {
            if xs.contains(&v) {
                continue;
            }
            let kept: VertexSet = nbrs.iter().copied().filter(|u| !xs.contains(u)).collect();
            adj.insert(v, kept);
        }
        Ok(Graph { adj })
    }

    /// Returns the induced subgraph on `keep`.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> Result<Graph, GraphError> {
        self.check_live(keep)?;
        let mut adj = BTreeMap::new();
        for &v in keep {
            let kept: VertexSet = self
                .neighbors(v)
                .iter()
                .copied()
                .filter(|u| keep.contains(u))
                .collect();
            adj.insert(v, kept);
        }
        Ok(Graph { adj })
    }

    /// Connected components as vertex sets, ordered by minimum id.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::new();
        let mut out = Vec::new();
        for v in self.vertices() {
            if seen.contains(&v) {
                continue;
            }
            let mut comp = VertexSet::new();
            let mut stack = vec![v];
            while let Some(u) = stack.pop() {
                if !comp.insert(u) {
                    continue;
                }
                for &w in self.neighbors(u) {
                    if !comp.contains(&w) {
                        stack.push(w);
                    }
                }
            }
            seen.extend(comp.iter().copied());
            out.push(comp);
        }
        out
    }

    /// True iff every live vertex has degree exactly 1, i.e. every component
    /// is a single edge. The empty graph qualifies vacuously.
    pub fn is_induced_matching(&self) -> bool {
        self.adj.values().all(|s| s.len() == 1)
    }

    /// True iff deleting `s` leaves an induced matching.
    pub fn is_aim_deletion_set(&self, s: &VertexSet) -> Result<bool, GraphError> {
        Ok(self.delete_vertices(s)?.is_induced_matching())
    }

    /// Checks adjacency symmetry and that all neighbor ids are live.
    pub fn check_consistency(&self) -> bool {
        self.adj.iter().all(|(&v, nbrs)| {
            nbrs.iter()
                .all(|&u| u != v && self.adj.get(&u).is_some_and(|back| back.contains(&v)))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_edges_basics() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(g.degree(0).unwrap(), 1);
        assert_eq!(g.degree(1).unwrap(), 1);

        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.degree(1).unwrap(), 2);

        // duplicate pairs collapse
        let g = Graph::from_edges(3, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.degree(2).unwrap(), 0);
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert_eq!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(GraphError::IdOutOfRange(2, 2))
        );
        assert_eq!(
            Graph::from_edges(2, &[(1, 1)]),
            Err(GraphError::SelfLoop(1))
        );
    }

    #[test]
    fn degree_cases() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.degree(0).unwrap(), 3);
        assert_eq!(star.degree(1).unwrap(), 1);
        let lone = Graph::with_vertices(1);
        assert_eq!(lone.degree(0).unwrap(), 0);
        assert_eq!(lone.degree(9), Err(GraphError::DeadVertex(9)));
    }

    #[test]
    fn neighborhoods() {
        let tri = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(
            tri.open_neighborhood(&VertexSet::from([0, 1])).unwrap(),
            VertexSet::from([2])
        );
        assert_eq!(
            tri.open_neighborhood(&VertexSet::new()).unwrap(),
            VertexSet::new()
        );

        let p5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(
            p5.open_neighborhood(&VertexSet::from([1, 2])).unwrap(),
            VertexSet::from([0, 3])
        );
        assert_eq!(
            p5.closed_neighborhood(&VertexSet::from([1, 2])).unwrap(),
            VertexSet::from([0, 1, 2, 3])
        );
        assert!(p5.open_neighborhood(&VertexSet::from([7])).is_err());
    }

    #[test]
    fn delete_vertices_cases() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let g = p3.delete_vertices(&VertexSet::from([1])).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 0);

        assert_eq!(p3.delete_vertices(&VertexSet::new()).unwrap(), p3);

        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let k3 = k4.delete_vertices(&VertexSet::from([3])).unwrap();
        assert_eq!(k3.vertex_count(), 3);
        assert_eq!(k3.edge_count(), 3);
    }

    #[test]
    fn components() {
        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let comps = two.connected_components();
        assert_eq!(
            comps,
            vec![VertexSet::from([0, 1]), VertexSet::from([2, 3])]
        );

        assert!(Graph::new().connected_components().is_empty());

        let p5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(p5.connected_components().len(), 1);
    }

    #[test]
    fn induced_matching_check() {
        assert!(Graph::from_edges(2, &[(0, 1)])
            .unwrap()
            .is_induced_matching());
        assert!(!Graph::from_edges(3, &[(0, 1), (1, 2)])
            .unwrap()
            .is_induced_matching());
        assert!(Graph::new().is_induced_matching());
    }

    #[test]
    fn aim_deletion_set_check() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        // removing the middle leaves two isolated vertices
        assert!(!p3.is_aim_deletion_set(&VertexSet::from([1])).unwrap());
        assert!(p3.is_aim_deletion_set(&VertexSet::from([0])).unwrap());

        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(p4.is_aim_deletion_set(&VertexSet::from([0, 3])).unwrap());
    }

    #[test]
    fn stable_ids_after_deletion() {
        let p5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let g = p5.delete_vertices(&VertexSet::from([0, 2])).unwrap();
        assert_eq!(g.vertex_set(), VertexSet::from([1, 3, 4]));
        assert!(g.has_edge(3, 4));
        assert!(g.check_consistency());
    }
}
