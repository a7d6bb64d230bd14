//! `aimkit` command-line tool.
//!
//! Exit codes: 0 for YES/valid/success, 1 for NO/invalid, 2 for input errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use aimkit::analysis::{branching_factor, verify_step_factors, Recurrence, DEFAULT_TOL};
use aimkit::bench::{run_bench, to_csv};
use aimkit::gen::{self, GenSpec};
use aimkit::graph::{Graph, VertexSet};
use aimkit::kernel::{reduce_traced, Instance, KernelResult};
use aimkit::oracle;
use aimkit::solver::{find_min_k, solve_with, verify_solution, SolveConfig, StepLabel};
use aimkit::textio;

#[derive(Parser)]
#[command(
    name = "aimkit",
    version,
    about = "Exact solver toolkit for almost induced matching"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded instance in the text graph format
    Gen(GenArgs),
    /// Shrink an instance to at most 6k vertices or answer NO
    Kernelize(KernelizeArgs),
    /// Decide whether k deletions suffice
    Solve(SolveArgs),
    /// Brute-force minimum deletion set (small graphs only)
    Oracle(OracleArgs),
    /// Check a claimed deletion set
    Verify(VerifyArgs),
    /// Branching factors of recurrences, or the built-in step table
    Factors(FactorsArgs),
    /// Run the kernelizer and solver over a generated corpus, CSV out
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    ErdosRenyi,
    Planted,
    Named,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: GenKind,
    /// Vertex count (erdos-renyi)
    #[arg(long)]
    n: Option<u32>,
    /// Edge probability (erdos-renyi)
    #[arg(long)]
    p: Option<f64>,
    /// Planted matching edges
    #[arg(long)]
    matching: Option<u32>,
    /// Planted extra vertices
    #[arg(long)]
    extra: Option<u32>,
    /// Library name: path_<n>, cycle_<n>, complete_<n>, petersen
    #[arg(long)]
    name: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write to a file instead of stdout
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct KernelizeArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long)]
    k: i64,
    /// Report each fired reduction step on stderr
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(short, long)]
    input: PathBuf,
    /// Budget; required unless --min is given
    #[arg(long)]
    k: Option<i64>,
    /// Print the deletion set on YES
    #[arg(long)]
    witness: bool,
    /// Print per-step node counts as CSV
    #[arg(long)]
    stats: bool,
    /// Search for the minimum feasible k instead of deciding one budget
    #[arg(long)]
    min: bool,
    /// Report each search node on stderr
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(short, long)]
    input: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long)]
    k: i64,
    /// File with the claimed deletion set
    #[arg(long)]
    witness: PathBuf,
}

#[derive(Args)]
struct FactorsArgs {
    /// Verify the built-in table of step recurrences
    #[arg(long)]
    table: bool,
    /// Recurrences as comma-separated budget decreases, e.g. 1,3,3
    recurrences: Vec<String>,
    #[arg(long, value_parser = ["csv"], default_value = "csv")]
    format: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchKind {
    Er,
    Planted,
    Named,
    Mixed,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum, default_value = "mixed")]
    kind: BenchKind,
    #[arg(long, default_value_t = 12)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Fixed budget; defaults to a per-instance policy
    #[arg(long)]
    k: Option<i64>,
    /// Measure wall times (makes output nondeterministic)
    #[arg(long)]
    timing: bool,
    #[arg(long, value_parser = ["csv"], default_value = "csv")]
    format: String,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    // die quietly when a downstream pipe closes, like other unix tools
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            2
        }
    };
    ExitCode::from(code)
}

fn run(command: Command) -> Result<u8, String> {
    match command {
        Command::Gen(args) => cmd_gen(args),
        Command::Kernelize(args) => cmd_kernelize(args),
        Command::Solve(args) => cmd_solve(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Factors(args) => cmd_factors(args),
        Command::Bench(args) => cmd_bench(args),
    }
}

fn read_graph(path: &Path) -> Result<Graph, String> {
    textio::read_graph_file(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(output: Option<&PathBuf>, text: &str) -> Result<(), String> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn ids(set: &VertexSet) -> String {
    set.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_gen(args: GenArgs) -> Result<u8, String> {
    let need =
        |opt: Option<u32>, name: &str| opt.ok_or(format!("--{name} is required for this kind"));
    let spec = match args.kind {
        GenKind::ErdosRenyi => GenSpec::ErdosRenyi {
            n: need(args.n, "n")?,
            p: args.p.ok_or("--p is required for this kind")?,
            seed: args.seed,
        },
        GenKind::Planted => GenSpec::Planted {
            matching: need(args.matching, "matching")?,
            extra: need(args.extra, "extra")?,
            seed: args.seed,
        },
        GenKind::Named => GenSpec::Named {
            name: args.name.ok_or("--name is required for this kind")?,
        },
    };
    let g = gen::generate(&spec).map_err(|e| e.to_string())?;
    emit(args.output.as_ref(), &textio::write_graph(&g))?;
    Ok(0)
}

fn cmd_kernelize(args: KernelizeArgs) -> Result<u8, String> {
    let g = read_graph(&args.input)?;
    let mut sink: Box<dyn FnMut(&str)> = if args.trace {
        Box::new(|line: &str| eprintln!("{line}"))
    } else {
        Box::new(|_| {})
    };
    match reduce_traced(&Instance::new(g, args.k), &mut sink) {
        KernelResult::No => {
            println!("NO");
            Ok(1)
        }
        KernelResult::Reduced { instance, .. } => {
            println!(
                "REDUCED n'={} k'={}",
                instance.graph.vertex_count(),
                instance.k
            );
            print!("{}", textio::write_graph(&instance.graph));
            Ok(0)
        }
    }
}

fn cmd_solve(args: SolveArgs) -> Result<u8, String> {
    let g = read_graph(&args.input)?;
    let cfg = SolveConfig::default();
    let mut trace_sink = |line: &str| eprintln!("{line}");

    let (result, header) = if args.min {
        let (min_k, result) = find_min_k(&g, &cfg);
        (result, format!("MINK {min_k}\n"))
    } else {
        let k = args.k.ok_or("--k is required unless --min is given")?;
        let trace = args
            .trace
            .then_some(&mut trace_sink as &mut dyn FnMut(&str));
        let result = solve_with(&Instance::new(g, k), &cfg, trace);
        let line = if result.decision { "YES\n" } else { "NO\n" };
        (result, line.to_string())
    };

    print!("{header}");
    if args.witness {
        if let Some(w) = &result.witness {
            println!("S: {}", ids(w));
        }
    }
    if args.stats {
        println!("step,nodes");
        for label in StepLabel::ALL {
            let count = result
                .stats
                .nodes_per_step
                .get(&label)
                .copied()
                .unwrap_or(0);
            println!("{},{count}", label.as_str());
        }
    }
    Ok(if result.decision { 0 } else { 1 })
}

fn oracle_limit() -> usize {
    std::env::var("AIMKIT_ORACLE_MAX_N")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(oracle::DEFAULT_MAX_N)
}

fn cmd_oracle(args: OracleArgs) -> Result<u8, String> {
    let g = read_graph(&args.input)?;
    let result =
        oracle::min_aim_deletion_with_limit(&g, oracle_limit()).map_err(|e| e.to_string())?;
    println!(
        "MIM={} MIN_DELETION={} S: {}",
        result.mim_edges,
        result.min_deletion,
        ids(&result.witness)
    );
    Ok(0)
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, String> {
    let g = read_graph(&args.input)?;
    let text = std::fs::read_to_string(&args.witness)
        .map_err(|e| format!("{}: {e}", args.witness.display()))?;
    let witness = textio::parse_vertex_set(&text).map_err(|e| e.to_string())?;
    let ok = verify_solution(&g, args.k, &witness).map_err(|e| e.to_string())?;
    if ok {
        println!("VALID");
        Ok(0)
    } else {
        println!("INVALID");
        Ok(1)
    }
}

fn cmd_factors(args: FactorsArgs) -> Result<u8, String> {
    if args.table {
        println!("label,decreases,expected,computed,pass");
        let mut all_pass = true;
        for row in verify_step_factors() {
            all_pass &= row.pass;
            println!(
                "{},{},{:.4},{:.4},{}",
                row.label,
                row.recurrence
                    .decreases()
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join("+"),
                row.expected,
                row.computed,
                if row.pass { "pass" } else { "fail" }
            );
        }
        return Ok(if all_pass { 0 } else { 1 });
    }
    if args.recurrences.is_empty() {
        return Err("give recurrences like `1,3,3` or use --table".into());
    }
    for spec in &args.recurrences {
        let decreases: Result<Vec<u32>, _> = spec.split(',').map(|t| t.trim().parse()).collect();
        let decreases = decreases.map_err(|_| format!("bad recurrence `{spec}`"))?;
        let r = Recurrence::new(decreases).map_err(|e| e.to_string())?;
        println!("{} -> {:.6}", r, branching_factor(&r, DEFAULT_TOL).value);
    }
    Ok(0)
}

fn cmd_bench(args: BenchArgs) -> Result<u8, String> {
    let corpus = bench_corpus(args.kind, args.count, args.seed, args.k)?;
    let records = run_bench(&corpus, &SolveConfig::default(), args.timing);
    emit(args.output.as_ref(), &to_csv(&records))?;
    Ok(0)
}

/// Deterministic corpus: instance `i` of a kind is fully determined by
/// `(seed, i)`, and the default budget policy is per-kind.
fn bench_corpus(
    kind: BenchKind,
    count: usize,
    seed: u64,
    k: Option<i64>,
) -> Result<Vec<(String, Graph, i64)>, String> {
    let er_sizes = [10u32, 20, 30, 40, 50, 60];
    let er_ps = [0.05, 0.1, 0.2, 0.4];
    let names = [
        "path_10",
        "cycle_9",
        "petersen",
        "complete_6",
        "path_16",
        "cycle_12",
    ];
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let pick = |kind: BenchKind| -> Result<(String, Graph, i64), String> {
            match kind {
                BenchKind::Er => {
                    let n = er_sizes[i % er_sizes.len()];
                    let p = er_ps[(i / er_sizes.len()) % er_ps.len()];
                    let g = gen::erdos_renyi(n, p, seed + i as u64).map_err(|e| e.to_string())?;
                    let budget = k.unwrap_or((n as i64) / 4);
                    Ok((format!("er_{i}_n{n}"), g, budget))
                }
                BenchKind::Planted => {
                    let matching = 2 + (i as u32) % 9;
                    let extra = 1 + (i as u32) % 10;
                    let g = gen::planted(matching, extra, seed + i as u64);
                    let budget = k.unwrap_or(extra as i64);
                    Ok((format!("planted_{i}_m{matching}_x{extra}"), g, budget))
                }
                BenchKind::Named => {
                    let name = names[i % names.len()];
                    let g = gen::named(name).map_err(|e| e.to_string())?;
                    let budget = k.unwrap_or((g.vertex_count() as i64) / 3);
                    Ok((name.to_string(), g, budget))
                }
                BenchKind::Mixed => unreachable!("mixed resolves to a concrete kind"),
            }
        };
        let concrete = match kind {
            BenchKind::Mixed => [BenchKind::Er, BenchKind::Planted, BenchKind::Named][i % 3],
            other => other,
        };
        out.push(pick(concrete)?);
    }
    Ok(out)
}
