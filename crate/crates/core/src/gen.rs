//! Seeded instance generation.
//!
//! All randomness comes from an explicit SplitMix64 stream so that corpora
//! are bit-reproducible across runs, platforms and language bindings: the
//! state advances by the golden-ratio increment 0x9E3779B97F4A7C15 and the
//! output is finalized with the standard two-round mix (Steele et al.,
//! "Fast splittable pseudorandom number generators"). Draws below a bound
//! use plain modulo; doubles take the top 53 bits.

use thiserror::Error;

use crate::graph::{Graph, VertexId};

#[derive(Debug, Error, PartialEq)]
pub enum GenError {
    #[error("probability {0} is outside [0, 1]")]
    InvalidProbability(f64),
    #[error("unknown named graph `{0}`")]
    UnknownName(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
}

/// Deterministic 64-bit generator; see the module docs for the exact stream.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform double in `[0, 1)` from the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / 9_007_199_254_740_992.0)
    }

    pub fn next_below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "bound must be positive");
        self.next_u64() % n
    }
}

/// A reproducible instance description.
#[derive(Debug, Clone, PartialEq)]
pub enum GenSpec {
    ErdosRenyi {
        n: u32,
        p: f64,
        seed: u64,
    },
    /// A planted induced matching of `matching` edges plus `extra` vertices
    /// wired randomly into what came before; deleting the extras always
    /// works, so the minimum deletion size is at most `extra`.
    Planted {
        matching: u32,
        extra: u32,
        seed: u64,
    },
    Named {
        name: String,
    },
}

pub fn generate(spec: &GenSpec) -> Result<Graph, GenError> {
    match spec {
        GenSpec::ErdosRenyi { n, p, seed } => erdos_renyi(*n, *p, *seed),
        GenSpec::Planted {
            matching,
            extra,
            seed,
        } => Ok(planted(*matching, *extra, *seed)),
        GenSpec::Named { name } => named(name),
    }
}

/// Each vertex pair, in lexicographic order, gets an edge with probability
/// `p` from the seeded stream.
pub fn erdos_renyi(n: u32, p: f64, seed: u64) -> Result<Graph, GenError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GenError::InvalidProbability(p));
    }
    let mut rng = SplitMix64::new(seed);
    let mut g = Graph::with_vertices(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.next_f64() < p {
                g.add_edge(u, v).expect("ids in range");
            }
        }
    }
    Ok(g)
}

/// Disjoint edges `(2i, 2i+1)` for `i < matching`, then `extra` vertices each
/// wired to one to three distinct earlier vertices.
pub fn planted(matching: u32, extra: u32, seed: u64) -> Graph {
    let mut rng = SplitMix64::new(seed);
    let base = 2 * matching;
    let mut g = Graph::with_vertices(base + extra);
    for i in 0..matching {
        g.add_edge(2 * i, 2 * i + 1).expect("ids in range");
    }
    for e in base..base + extra {
        if e == 0 {
            continue;
        }
        let want = 1 + rng.next_below(3) as usize;
        let mut anchors: Vec<VertexId> = Vec::new();
        while anchors.len() < want.min(e as usize) {
            let a = rng.next_below(e as u64) as VertexId;
            if !anchors.contains(&a) {
                anchors.push(a);
            }
        }
        for a in anchors {
            g.add_edge(e, a).expect("ids in range");
        }
    }
    g
}

pub fn path_graph(n: u32) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).expect("ids in range")
}

pub fn cycle_graph(n: u32) -> Graph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).expect("ids in range")
}

pub fn complete_graph(n: u32) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges).expect("ids in range")
}

/// The Petersen graph: outer 5-cycle 0..4, inner pentagram 5..9, spokes.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, 5 + i));
    }
    Graph::from_edges(10, &edges).expect("ids in range")
}

/// Fixed library: `path_<n>`, `cycle_<n>`, `complete_<n>`, `petersen`.
pub fn named(name: &str) -> Result<Graph, GenError> {
    if name == "petersen" {
        return Ok(petersen());
    }
    let Some((kind, num)) = name.rsplit_once('_') else {
        return Err(GenError::UnknownName(name.to_string()));
    };
    let n: u32 = num
        .parse()
        .map_err(|_| GenError::UnknownName(name.to_string()))?;
    match kind {
        "path" if n >= 1 => Ok(path_graph(n)),
        "cycle" if n >= 3 => Ok(cycle_graph(n)),
        "complete" if n >= 1 => Ok(complete_graph(n)),
        "path" | "cycle" | "complete" => Err(GenError::BadParameter(format!(
            "{kind} graph needs more vertices than {n}"
        ))),
        _ => Err(GenError::UnknownName(name.to_string())),
    }
}
