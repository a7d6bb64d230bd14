//! Bench harness: run kernelizer and solver over a corpus, one CSV row per
//! (instance, budget) pair.
//!
//! Wall times are only measured when asked; the default output depends only
//! on the instances, so seeded runs are byte-identical.

use std::time::Instant;

use crate::graph::Graph;
use crate::kernel::{reduce, Instance, KernelResult};
use crate::solver::{solve_with, SolveConfig};

pub const CSV_HEADER: &str = "id,n,m,k,decision,nodes_total,kernel_n,kernel_k,wall_ms";

#[derive(Debug, Clone)]
pub struct BenchRecord {
    pub id: String,
    pub n: usize,
    pub m: usize,
    pub k: i64,
    pub decision: bool,
    pub nodes_total: u64,
    /// Reduced-instance size, absent when the kernel already answered NO.
    pub kernel_n: Option<usize>,
    pub kernel_k: Option<i64>,
    pub wall_ms: u64,
}

impl BenchRecord {
    pub fn to_csv_row(&self) -> String {
        let opt = |v: Option<i64>| v.map_or("NA".to_string(), |x| x.to_string());
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.id,
            self.n,
            self.m,
            self.k,
            if self.decision { "YES" } else { "NO" },
            self.nodes_total,
            opt(self.kernel_n.map(|x| x as i64)),
            opt(self.kernel_k),
            self.wall_ms
        )
    }
}

/// Runs every `(id, graph, k)` entry in order.
pub fn run_bench(
    corpus: &[(String, Graph, i64)],
    cfg: &SolveConfig,
    timing: bool,
) -> Vec<BenchRecord> {
    corpus
        .iter()
        .map(|(id, g, k)| {
            let started = Instant::now();
            let (kernel_n, kernel_k) = match reduce(&Instance::new(g.clone(), *k)) {
                KernelResult::No => (None, None),
                KernelResult::Reduced { instance, .. } => {
                    (Some(instance.graph.vertex_count()), Some(instance.k))
                }
            };
            let result = solve_with(&Instance::new(g.clone(), *k), cfg, None);
            let wall_ms = if timing {
                started.elapsed().as_millis() as u64
            } else {
                0
            };
            BenchRecord {
                id: id.clone(),
                n: g.vertex_count(),
                m: g.edge_count(),
                k: *k,
                decision: result.decision,
                nodes_total: result.stats.nodes_total,
                kernel_n,
                kernel_k,
                wall_ms,
            }
        })
        .collect()
}

pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.to_csv_row());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    #[test]
    fn rows_match_corpus_order() {
        let corpus = vec![
            ("a".to_string(), gen::path_graph(4), 2),
            ("b".to_string(), gen::cycle_graph(5), 1),
            ("c".to_string(), gen::complete_graph(4), 2),
        ];
        let records = run_bench(&corpus, &SolveConfig::default(), false);
        assert_eq!(records.len(), 3);
        assert_eq!(records[0].id, "a");
        assert!(records[0].decision);
        assert!(!records[1].decision);
        assert_eq!(records.iter().map(|r| r.wall_ms).max(), Some(0));
    }

    #[test]
    fn empty_corpus_is_header_only() {
        assert_eq!(to_csv(&[]), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn planted_corpus_says_yes_at_planted_budget() {
        let corpus: Vec<_> = (0..3)
            .map(|i| {
                let g = gen::planted(4, 3, 100 + i);
                (format!("planted{i}"), g, 3)
            })
            .collect();
        let records = run_bench(&corpus, &SolveConfig::default(), false);
        assert!(records.iter().all(|r| r.decision));
    }
}
