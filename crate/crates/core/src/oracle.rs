//! Ground-truth brute force for small instances.
//!
//! Deliberately dumb: enumerate induced matchings over edge subsets with a
//! feasibility prune, take the maximum. Deleting everything outside a maximum
//! induced matching is an optimal deletion set, so `min_deletion = n - 2*mim`.

use thiserror::Error;

use crate::graph::{Graph, VertexId, VertexSet};

/// Default vertex-count guard; keeps the oracle from dominating test time.
pub const DEFAULT_MAX_N: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices, exceeding the brute-force guard of {max}")]
    TooLarge { n: usize, max: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub mim_edges: usize,
    pub min_deletion: usize,
    /// A minimum deletion set: everything outside the matching found first
    /// in the deterministic search order.
    pub witness: VertexSet,
}

struct Search<'a> {
    g: &'a Graph,
    edges: Vec<(VertexId, VertexId)>,
    chosen: Vec<(VertexId, VertexId)>,
    /// N[V(M)] for the currently chosen matching M; edges touching this set
    /// cannot extend M.
    blocked: VertexSet,
    best: usize,
    best_edges: Vec<(VertexId, VertexId)>,
}

impl Search<'_> {
    fn run(&mut self, from: usize) {
        if self.chosen.len() > self.best {
            self.best = self.chosen.len();
            self.best_edges = self.chosen.clone();
        }
        // each further edge needs two unblocked vertices
        let headroom = (self.g.vertex_count() - self.blocked.len()) / 2;
        if self.chosen.len() + headroom <= self.best {
            return;
        }
        for i in from..self.edges.len() {
            let (u, v) = self.edges[i];
            if self.blocked.contains(&u) || self.blocked.contains(&v) {
                continue;
            }
            let added: Vec<VertexId> = self
                .g
                .neighbors(u)
                .iter()
                .chain(self.g.neighbors(v).iter())
                .chain([u, v].iter())
                .copied()
                .filter(|w| !self.blocked.contains(w))
                .collect();
            self.blocked.extend(added.iter().copied());
            self.chosen.push((u, v));
            self.run(i + 1);
            self.chosen.pop();
            for w in added {
                self.blocked.remove(&w);
            }
        }
    }
}

/// Maximum induced matching by exhaustive search, with the default guard.
pub fn max_induced_matching(g: &Graph) -> Result<(usize, Vec<(VertexId, VertexId)>), OracleError> {
    max_induced_matching_with_limit(g, DEFAULT_MAX_N)
}

pub fn max_induced_matching_with_limit(
    g: &Graph,
    max_n: usize,
) -> Result<(usize, Vec<(VertexId, VertexId)>), OracleError> {
    let n = g.vertex_count();
    if n > max_n {
        return Err(OracleError::TooLarge { n, max: max_n });
    }
    let mut search = Search {
        g,
        edges: g.edges(),
        chosen: Vec::new(),
        blocked: VertexSet::new(),
        best: 0,
        best_edges: Vec::new(),
    };
    search.run(0);
    Ok((search.best, search.best_edges))
}

/// Minimum deletion set leaving an induced matching.
pub fn min_aim_deletion(g: &Graph) -> Result<OracleResult, OracleError> {
    min_aim_deletion_with_limit(g, DEFAULT_MAX_N)
}

pub fn min_aim_deletion_with_limit(g: &Graph, max_n: usize) -> Result<OracleResult, OracleError> {
    let (mim, matching) = max_induced_matching_with_limit(g, max_n)?;
    let matched: VertexSet = matching.iter().flat_map(|&(u, v)| [u, v]).collect();
    let witness: VertexSet = g.vertices().filter(|v| !matched.contains(v)).collect();
    let min_deletion = g.vertex_count() - 2 * mim;
    debug_assert_eq!(witness.len(), min_deletion);
    debug_assert!(g.is_aim_deletion_set(&witness).unwrap());
    Ok(OracleResult {
        mim_edges: mim,
        min_deletion,
        witness,
    })
}

/// Decides whether some deletion set of size at most `k` exists.
pub fn decide(g: &Graph, k: i64) -> Result<bool, OracleError> {
    decide_with_limit(g, k, DEFAULT_MAX_N)
}

pub fn decide_with_limit(g: &Graph, k: i64, max_n: usize) -> Result<bool, OracleError> {
    Ok(min_aim_deletion_with_limit(g, max_n)?.min_deletion as i64 <= k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: u32) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn path(n: u32) -> Graph {
        let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn mim_small_cases() {
        let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(max_induced_matching(&k3).unwrap().0, 1);
        assert_eq!(max_induced_matching(&cycle(6)).unwrap().0, 2);
        assert_eq!(max_induced_matching(&Graph::with_vertices(4)).unwrap().0, 0);
    }

    #[test]
    fn min_deletion_cases() {
        let single = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(min_aim_deletion(&single).unwrap().min_deletion, 0);
        assert_eq!(min_aim_deletion(&path(4)).unwrap().min_deletion, 2);
        assert_eq!(min_aim_deletion(&path(7)).unwrap().min_deletion, 3);
    }

    #[test]
    fn decide_cases() {
        let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(!decide(&k3, 0).unwrap());
        assert!(decide(&k3, 1).unwrap());
        assert!(!decide(&cycle(6), 1).unwrap());
        assert!(decide(&cycle(6), 2).unwrap());
    }

    #[test]
    fn witness_is_valid_and_identity_holds() {
        for n in 0..8u32 {
            let g = path(n.max(1));
            let r = min_aim_deletion(&g).unwrap();
            assert_eq!(r.min_deletion, g.vertex_count() - 2 * r.mim_edges);
            assert!(g.is_aim_deletion_set(&r.witness).unwrap());
        }
    }

    #[test]
    fn monotone_in_k() {
        let g = cycle(7);
        let mut prev = false;
        for k in 0..=7 {
            let d = decide(&g, k).unwrap();
            assert!(!prev || d);
            prev = d;
        }
    }

    #[test]
    fn guard_rejects_large_graphs() {
        let g = Graph::with_vertices(25);
        assert_eq!(
            max_induced_matching(&g),
            Err(OracleError::TooLarge { n: 25, max: 24 })
        );
        assert!(max_induced_matching_with_limit(&g, 30).is_ok());
    }
}
