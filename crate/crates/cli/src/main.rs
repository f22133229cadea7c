//! `modex`: compute exact graph invariants, generate benchmark families,
//! issue component split verdicts, run partition-building decompositions,
//! and execute the verification suites.
//!
//! Exit codes: 0 success, 1 failed verification property, 2 parse or
//! parameter error, 3 enumeration cap exceeded, 4 isolated vertices where
//! forbidden, 5 decomposition hypothesis violated.

mod suites;

use clap::{Parser, Subcommand, ValueEnum};
use modex::bounds::{classic_resolution_bound, resolution_verdict};
use modex::decompose::{build_partition, split_non_expander, volume_decompose, TraceRound};
use modex::expansion::ExpansionValue;
use modex::modularity::score;
use modex::spectral::spectral_gap;
use modex::{families, Error, Graph, Limits, Partition, Ratio, Scalar, VertexSet};
use serde_json::json;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "modex",
    version,
    about = "Exact modularity and edge-expansion toolkit"
)]
struct Cli {
    /// Input graph file (default: stdin).
    #[arg(short, long, global = true)]
    input: Option<PathBuf>,
    /// Output file (default: stdout).
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Output style; `json` emits one object per record with the same fields.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Override every enumeration cap (see `--help` of the library docs).
    #[arg(long, global = true)]
    max_n: Option<usize>,
    /// Seed for the randomized verification suites.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Sample count for the randomized verification suites.
    #[arg(long, global = true)]
    samples: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Compute an invariant of the input graph.
    Compute {
        #[arg(long, value_enum)]
        what: What,
        /// Partition as `/`-separated parts of `,`-separated vertex ids
        /// (required for `score`).
        #[arg(long)]
        partition: Option<String>,
        /// Also print decimal renderings of exact values.
        #[arg(long)]
        decimal: bool,
    },
    /// Generate a benchmark family graph (edge-list on stdout or --output).
    Generate {
        #[command(subcommand)]
        family: Family,
    },
    /// Split verdict for connected components of the input graph.
    Verdict {
        /// Only the component containing this vertex.
        #[arg(long)]
        component_of: Option<usize>,
        /// Every component (the default).
        #[arg(long)]
        all_components: bool,
    },
    /// Run a partition-building decomposition and print its trace.
    Decompose {
        #[arg(long, value_enum)]
        mode: Mode,
        /// Edge threshold for a single splitter pass (edges mode).
        #[arg(long)]
        e0: Option<String>,
        /// Relative size for the k-round builder (edges mode).
        #[arg(long)]
        alpha: Option<String>,
        /// Relative volume threshold (volume mode).
        #[arg(long)]
        beta: Option<String>,
        #[arg(long)]
        delta: String,
    },
    /// Run a verification suite; exits 1 if any property fails.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteName,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum What {
    /// Maximum modularity.
    Q,
    /// Score of the partition given with --partition.
    Score,
    /// Conductance.
    H,
    /// Expansion-by-products.
    Hh,
    /// Expansion-by-edges.
    Hprime,
    /// Normalized-Laplacian spectral gap.
    Gap,
}

#[derive(Copy, Clone, ValueEnum)]
enum Mode {
    Edges,
    Volume,
}

#[derive(Copy, Clone, ValueEnum)]
pub enum SuiteName {
    Bounds,
    ZeroMod,
    Constructions,
    Decomposition,
    Resolution,
    All,
}

#[derive(Subcommand)]
enum Family {
    /// Pad the --input graph with disjoint unit edges up to m edges total.
    #[command(name = "g-h")]
    GH {
        #[arg(long)]
        m: u64,
    },
    /// Union of cliques and edges with m edges total.
    GAlpha {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        m: u64,
    },
    /// Star with a perfect matching on its 2l leaves.
    Windmill {
        #[arg(long)]
        l: u64,
    },
    /// Clique with l leaves per vertex; with --alpha, padded by disjoint
    /// edges to relative size alpha.
    CliqueLeaves {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        l: u64,
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Weighted clique with loops; with --alpha, padded by disjoint edges.
    WeightedCliqueLoops {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        alpha: Option<String>,
    },
    /// k-ary tree of depth two.
    Kary2 {
        #[arg(long)]
        k: u64,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::SizeLimitExceeded { .. } => 3,
            Error::IsolatedVerticesPresent => 4,
            Error::HypothesisViolated { .. } => 5,
            _ => 2,
        };
        Failure::new(code, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    match run(&cli, &mut out) {
        Ok(code) => {
            if let Err(e) = write_output(&cli, &out) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Err(failure) => {
            // Emit whatever was produced before the failure, then report.
            let _ = write_output(&cli, &out);
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn write_output(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.output {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn limits(cli: &Cli) -> Limits {
    match cli.max_n {
        Some(n) => Limits::with_max_n(n),
        None => Limits::default(),
    }
}

fn read_graph(cli: &Cli) -> Result<Graph<Ratio>, Failure> {
    let text = match &cli.input {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Failure::new(2, format!("cannot read {}: {e}", path.display())))?,
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Failure::new(2, format!("cannot read stdin: {e}")))?;
            buf
        }
    };
    Ok(Graph::parse(&text)?)
}

fn parse_ratio(text: &str, name: &str) -> Result<Ratio, Failure> {
    <Ratio as Scalar>::parse_weight(text)
        .ok_or_else(|| Failure::new(2, format!("invalid rational for --{name}: {text}")))
}

fn parse_partition(text: &str, n: usize) -> Result<Partition, Failure> {
    let mut parts = Vec::new();
    for chunk in text.split('/') {
        let mut set = VertexSet::empty(n);
        for tok in chunk.split(',') {
            let tok = tok.trim();
            if tok.is_empty() {
                continue;
            }
            let v: usize = tok
                .parse()
                .map_err(|_| Failure::new(2, format!("invalid vertex id in partition: {tok}")))?;
            if v >= n {
                return Err(Failure::new(
                    2,
                    format!("partition vertex {v} out of range"),
                ));
            }
            set.insert(v);
        }
        if !set.is_empty() {
            parts.push(set);
        }
    }
    Partition::new(n, parts).map_err(Failure::from)
}

fn ratio_value(v: &Ratio, decimal: bool) -> String {
    if decimal {
        format!("{v} ({})", v.to_f64())
    } else {
        format!("{v}")
    }
}

fn set_ids(s: &VertexSet) -> Vec<usize> {
    s.iter().collect()
}

fn run(cli: &Cli, out: &mut String) -> Result<u8, Failure> {
    match &cli.command {
        Command::Compute {
            what,
            partition,
            decimal,
        } => cmd_compute(cli, *what, partition.as_deref(), *decimal, out),
        Command::Generate { family } => cmd_generate(cli, family, out),
        Command::Verdict { component_of, .. } => cmd_verdict(cli, *component_of, out),
        Command::Decompose {
            mode,
            e0,
            alpha,
            beta,
            delta,
        } => cmd_decompose(
            cli,
            *mode,
            e0.as_deref(),
            alpha.as_deref(),
            beta.as_deref(),
            delta,
            out,
        ),
        Command::Verify { suite } => cmd_verify(cli, *suite, out),
    }
}

fn cmd_compute(
    cli: &Cli,
    what: What,
    partition: Option<&str>,
    decimal: bool,
    out: &mut String,
) -> Result<u8, Failure> {
    let g = read_graph(cli)?;
    let limits = limits(cli);
    let json_mode = cli.format == Format::Json;
    match what {
        What::Q => {
            let rep = modex::modularity::maximize_with_limits(&g, limits)?;
            if json_mode {
                out.push_str(
                    &json!({
                        "what": "q",
                        "value": rep.q_star.to_string(),
                        "optimal": rep.optimal.parts().iter().map(set_ids).collect::<Vec<_>>(),
                    })
                    .to_string(),
                );
                out.push('\n');
            } else {
                out.push_str(&format!("q* = {}\n", ratio_value(&rep.q_star, decimal)));
                out.push_str(&format!("optimal = {}\n", rep.optimal));
            }
        }
        What::Score => {
            let spec = partition
                .ok_or_else(|| Failure::new(2, "--what score requires --partition".to_string()))?;
            let p = parse_partition(spec, g.vertex_count())?;
            let breakdown = score(&g, &p)?;
            if json_mode {
                out.push_str(
                    &json!({
                        "what": "score",
                        "q": breakdown.q.to_string(),
                        "coverage": breakdown.coverage.to_string(),
                        "degree_tax": breakdown.degree_tax.to_string(),
                    })
                    .to_string(),
                );
                out.push('\n');
            } else {
                out.push_str(&format!("q = {}\n", ratio_value(&breakdown.q, decimal)));
                out.push_str(&format!(
                    "qE = {}\n",
                    ratio_value(&breakdown.coverage, decimal)
                ));
                out.push_str(&format!(
                    "qD = {}\n",
                    ratio_value(&breakdown.degree_tax, decimal)
                ));
            }
        }
        What::H | What::Hh | What::Hprime => {
            let (label, rep) = match what {
                What::H => ("h", conductance_with(&g, limits)?),
                What::Hh => ("hh", expansion_by_products_with(&g, limits)?),
                _ => ("hprime", expansion_by_edges_with(&g, limits)?),
            };
            let value = match &rep.value {
                ExpansionValue::Finite(v) => ratio_value(v, decimal),
                ExpansionValue::Infinite => "inf".to_string(),
            };
            if json_mode {
                out.push_str(
                    &json!({
                        "what": label,
                        "value": rep.value.to_string(),
                        "witness": set_ids(&rep.witness),
                    })
                    .to_string(),
                );
                out.push('\n');
            } else {
                out.push_str(&format!("{label} = {value}\n"));
                out.push_str(&format!("witness = {}\n", rep.witness));
            }
        }
        What::Gap => {
            let rep = spectral_gap(&g)?;
            if json_mode {
                out.push_str(
                    &json!({
                        "what": "gap",
                        "value": rep.gap,
                        "eigenvalues": rep.eigenvalues,
                    })
                    .to_string(),
                );
                out.push('\n');
            } else {
                out.push_str(&format!("gap = {:.12}\n", rep.gap));
                let rendered: Vec<String> =
                    rep.eigenvalues.iter().map(|l| format!("{l:.12}")).collect();
                out.push_str(&format!("eigenvalues = {}\n", rendered.join(" ")));
            }
        }
    }
    Ok(0)
}

fn conductance_with(
    g: &Graph<Ratio>,
    limits: Limits,
) -> Result<modex::expansion::ExpansionReport<Ratio>, Failure> {
    Ok(modex::expansion::conductance_with_limits(g, limits)?)
}

fn expansion_by_products_with(
    g: &Graph<Ratio>,
    limits: Limits,
) -> Result<modex::expansion::ExpansionReport<Ratio>, Failure> {
    Ok(modex::expansion::expansion_by_products_with_limits(
        g, limits,
    )?)
}

fn expansion_by_edges_with(
    g: &Graph<Ratio>,
    limits: Limits,
) -> Result<modex::expansion::ExpansionReport<Ratio>, Failure> {
    Ok(modex::expansion::expansion_by_edges_with_limits(g, limits)?)
}

fn cmd_generate(cli: &Cli, family: &Family, out: &mut String) -> Result<u8, Failure> {
    let g: Graph<Ratio> = match family {
        Family::GH { m } => {
            let h = read_graph(cli)?;
            families::g_h_padding(&h, *m)?
        }
        Family::GAlpha { alpha, m } => {
            let alpha = parse_ratio(alpha, "alpha")?;
            families::g_alpha(&alpha, *m)?
        }
        Family::Windmill { l } => families::windmill(*l)?,
        Family::CliqueLeaves { k, l, alpha } => {
            let h = families::clique_with_leaves(*k, *l)?;
            match alpha {
                Some(a) => families::with_disjoint_edges(&h, &parse_ratio(a, "alpha")?)?,
                None => h,
            }
        }
        Family::WeightedCliqueLoops { a, b, k, alpha } => {
            let hw =
                families::weighted_clique_loops(&parse_ratio(a, "a")?, &parse_ratio(b, "b")?, *k)?;
            match alpha {
                Some(a) => families::with_disjoint_edges(&hw, &parse_ratio(a, "alpha")?)?,
                None => hw,
            }
        }
        Family::Kary2 { k } => families::kary_depth2(*k)?,
    };
    out.push_str(&g.to_text());
    Ok(0)
}

fn cmd_verdict(cli: &Cli, component_of: Option<usize>, out: &mut String) -> Result<u8, Failure> {
    let g = read_graph(cli)?;
    let limits = limits(cli);
    let comps = g.components();
    let selected: Vec<&VertexSet> = match component_of {
        Some(v) => {
            if v >= g.vertex_count() {
                return Err(Failure::new(2, format!("vertex {v} out of range")));
            }
            comps.iter().filter(|c| c.contains(v)).collect()
        }
        None => comps.iter().collect(),
    };
    for comp in selected {
        let verdict = resolution_verdict(&g, comp, limits)?;
        let classic = classic_resolution_bound(&g, comp)?;
        let id = comp.first().unwrap();
        if cli.format == Format::Json {
            out.push_str(
                &json!({
                    "component": id,
                    "alpha": verdict.alpha.to_string(),
                    "hh": verdict.hh_component.to_string(),
                    "decision": verdict.decision.to_string(),
                    "classic": classic,
                })
                .to_string(),
            );
            out.push('\n');
        } else {
            out.push_str(&format!(
                "component {id} alpha {} hh {} decision {} classic {classic}\n",
                verdict.alpha, verdict.hh_component, verdict.decision
            ));
        }
    }
    Ok(0)
}

fn push_rounds(out: &mut String, rounds: &[TraceRound<Ratio>]) {
    let mut running = modex::rint(0);
    for (i, round) in rounds.iter().enumerate() {
        running += round.boundary_added.clone();
        out.push_str(&format!(
            "round {} extracted {} boundary {} running {}\n",
            i + 1,
            round.extracted,
            round.boundary_added,
            running
        ));
    }
}

fn push_partition(out: &mut String, p: &Partition) {
    for (i, part) in p.parts().iter().enumerate() {
        out.push_str(&format!("part {i} = {part}\n"));
    }
}

fn cmd_decompose(
    cli: &Cli,
    mode: Mode,
    e0: Option<&str>,
    alpha: Option<&str>,
    beta: Option<&str>,
    delta: &str,
    out: &mut String,
) -> Result<u8, Failure> {
    let g = read_graph(cli)?;
    let limits = limits(cli);
    let delta = parse_ratio(delta, "delta")?;
    let json_mode = cli.format == Format::Json;
    match mode {
        Mode::Edges => {
            if let Some(alpha) = alpha {
                let alpha = parse_ratio(alpha, "alpha")?;
                let outcome = build_partition(&g, &alpha, &delta, limits)?;
                if json_mode {
                    out.push_str(
                        &json!({
                            "mode": "edges",
                            "alpha": alpha.to_string(),
                            "delta": delta.to_string(),
                            "q": outcome.score.q.to_string(),
                            "bound": outcome.bound.to_string(),
                            "rounds": outcome.rounds.len(),
                            "parts": outcome.partition.parts().iter().map(set_ids).collect::<Vec<_>>(),
                        })
                        .to_string(),
                    );
                    out.push('\n');
                } else {
                    out.push_str(&format!(
                        "params mode=edges alpha={alpha} e0={} delta={delta} delta_prime={} rho={}\n",
                        outcome.e0, outcome.delta_prime, outcome.rho
                    ));
                    push_rounds(out, &outcome.rounds);
                    push_partition(out, &outcome.partition);
                    out.push_str(&format!("q = {}\n", outcome.score.q));
                    out.push_str(&format!("bound = {}\n", outcome.bound));
                    out.push_str("postconditions ok\n");
                }
            } else {
                let e0 = parse_ratio(
                    e0.ok_or_else(|| Failure::new(2, "edges mode needs --e0 or --alpha"))?,
                    "e0",
                )?;
                let trace = split_non_expander(&g, &e0, &delta, limits)?;
                if json_mode {
                    out.push_str(
                        &json!({
                            "mode": "edges",
                            "e0": e0.to_string(),
                            "delta": delta.to_string(),
                            "rounds": trace.rounds.len(),
                            "parts": trace.final_partition.parts().iter().map(set_ids).collect::<Vec<_>>(),
                        })
                        .to_string(),
                    );
                    out.push('\n');
                } else {
                    out.push_str(&format!(
                        "params mode=edges e0={e0} delta={delta} delta_prime={} rho={}\n",
                        trace.delta_prime, trace.rho
                    ));
                    push_rounds(out, &trace.rounds);
                    push_partition(out, &trace.final_partition);
                    out.push_str("postconditions ok\n");
                }
            }
        }
        Mode::Volume => {
            let beta = parse_ratio(
                beta.ok_or_else(|| Failure::new(2, "volume mode needs --beta"))?,
                "beta",
            )?;
            let outcome = volume_decompose(&g, &beta, &delta, limits)?;
            if json_mode {
                out.push_str(
                    &json!({
                        "mode": "volume",
                        "beta": beta.to_string(),
                        "delta": delta.to_string(),
                        "q": outcome.score.q.to_string(),
                        "bound": outcome.bound.to_string(),
                        "deleted": outcome.deleted_total.to_string(),
                        "parts": outcome.partition.parts().iter().map(set_ids).collect::<Vec<_>>(),
                    })
                    .to_string(),
                );
                out.push('\n');
            } else {
                out.push_str(&format!("params mode=volume beta={beta} delta={delta}\n"));
                push_rounds(out, &outcome.rounds);
                push_partition(out, &outcome.partition);
                out.push_str(&format!("deleted = {}\n", outcome.deleted_total));
                out.push_str(&format!("q = {}\n", outcome.score.q));
                out.push_str(&format!("bound = {}\n", outcome.bound));
                out.push_str("postconditions ok\n");
            }
        }
    }
    Ok(0)
}

fn cmd_verify(cli: &Cli, suite: SuiteName, out: &mut String) -> Result<u8, Failure> {
    let samples = cli.samples.unwrap_or(100);
    let results = suites::run_suite(suite, cli.seed, samples, limits(cli));
    let mut failed = 0;
    for check in &results {
        if cli.format == Format::Json {
            out.push_str(
                &json!({
                    "property": check.name,
                    "pass": check.pass,
                    "counterexample": check.counterexample,
                })
                .to_string(),
            );
            out.push('\n');
        } else {
            out.push_str(&format!(
                "property {}: {}\n",
                check.name,
                if check.pass { "pass" } else { "fail" }
            ));
            if let Some(cx) = &check.counterexample {
                out.push_str("counterexample:\n");
                out.push_str(cx);
                if !cx.ends_with('\n') {
                    out.push('\n');
                }
            }
        }
        if !check.pass {
            failed += 1;
        }
    }
    if cli.format == Format::Text {
        out.push_str(&format!(
            "{} properties, {} failed\n",
            results.len(),
            failed
        ));
    }
    Ok(if failed > 0 { 1 } else { 0 })
}
