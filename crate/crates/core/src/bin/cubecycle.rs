use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use cubecycle::bounds::{
    literature_exponents, lower_bound_exponent, upper_bound_pipeline, LiteratureRow,
};
use cubecycle::budget::{BUDGET_ENV, DEFAULT_BUDGET};
use cubecycle::cycles::{check_counting_bound, BoundRow};
use cubecycle::exact::{ex_cube, ex_graph, ExactOptions};
use cubecycle::hypergraph::{extract_two_lift, star_count, two_lift, two_lift_labels};
use cubecycle::partite::{
    check_kpartite_representation, check_representation, GroundLabels, RepresentationDoc,
};
use cubecycle::prob::{
    lll_report, make_params, mono_cycle_stats, params_with_colors, run_trial, ConstructionResult,
};
use cubecycle::{
    build_qn, build_representation, census, count_cycles, enumerate_cycles, is_cycle_free, Budget,
    Error, Representation, SimpleGraph, Subgraph, ThreeGraph,
};

#[derive(Parser, Debug)]
#[command(
    name = "cubecycle",
    version,
    about = "Even cycles in hypercubes: constructions, counts and exact oracles"
)]
struct Cli {
    /// Output format. CSV is available for table-shaped results only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Work-unit budget for enumeration and search.
    #[arg(long, global = true, env = BUDGET_ENV, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Write the run manifest to this file instead of stderr.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Layer 2/3 embedding of C_2ℓ and its 3-partite representation.
    #[command(subcommand)]
    Rep(RepCmd),
    /// Cycle counting, enumeration and certification in Q_n.
    #[command(subcommand)]
    Cycles(CyclesCmd),
    /// Random colouring plus deletion: a certified C_2ℓ-free subgraph of Q_n.
    Construct(ConstructArgs),
    /// Local lemma condition for the colouring construction.
    LllReport(LllArgs),
    /// Monochromatic cycle counts over many random colourings.
    MonoStats(MonoArgs),
    /// Exact extremal numbers by exhaustive search.
    #[command(subcommand)]
    Exact(ExactCmd),
    /// Exponent pipeline and literature table for C_2ℓ.
    Bounds {
        #[arg(long)]
        ell: u32,
    },
    /// Two-lifts of graphs and their extraction from dense 3-graphs.
    #[command(subcommand)]
    Lift(LiftCmd),
}

#[derive(Subcommand, Debug)]
enum RepCmd {
    /// Build the representation; JSON output feeds `rep verify`.
    Build {
        #[arg(long)]
        ell: u32,
        /// Ground set size; defaults to ell.
        #[arg(long)]
        n: Option<u32>,
        /// JSON file with {a, b, xs, ys}.
        #[arg(long)]
        labels: Option<PathBuf>,
    },
    /// Check all six clauses of a representation document. Exit 1 on failure.
    Verify {
        /// Representation JSON; stdin when absent or `-`.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Search for a k-partite representation of a layer k-1/k subgraph. Exit 1 when none exists.
    Kpartite {
        /// Edge-list file; stdin when absent or `-`.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        k: u32,
    },
}

#[derive(Args, Debug)]
struct GraphSource {
    /// Use the full hypercube Q_n.
    #[arg(long, conflicts_with = "input")]
    n: Option<u32>,
    /// Edge-list file of a subgraph; `-` for stdin.
    #[arg(long)]
    input: Option<PathBuf>,
}

impl GraphSource {
    fn load(&self) -> Result<Subgraph, Error> {
        match (&self.n, &self.input) {
            (Some(n), _) => build_qn(*n),
            (None, input) => Subgraph::parse_edge_list(&read_input(input.as_deref())?),
        }
    }
}

#[derive(Subcommand, Debug)]
enum CyclesCmd {
    /// Count 2ℓ-cycles. With --n, runs the full census of Q_n with per-edge counts.
    Count {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        two_ell: usize,
    },
    /// List 2ℓ-cycles in canonical form.
    Enumerate {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        two_ell: usize,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Table of N(Q_n, C_2ℓ) / (n^ℓ 2^n).
    CheckBound {
        /// Dimensions, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u32>,
        #[arg(long)]
        two_ell: usize,
    },
    /// Certify that a subgraph has no 2ℓ-cycle. Exit 1 with a witness otherwise.
    Free {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        two_ell: usize,
    },
}

#[derive(Args, Debug)]
struct ConstructArgs {
    /// Dimensions, comma separated; more than one gives a sweep.
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<u32>,
    #[arg(long)]
    ell: u32,
    /// Constants c in p = c n^(-a), comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    c: Vec<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    trials: u64,
    /// Write the kept edges of a single run to this file.
    #[arg(long)]
    edges_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct LllArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<u32>,
    #[arg(long)]
    ell: u32,
    #[arg(long, value_delimiter = ',', required = true)]
    c: Vec<f64>,
}

#[derive(Args, Debug)]
struct MonoArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    ell: u32,
    #[arg(long)]
    colors: u32,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum ExactCmd {
    /// ex(n, H) for a pattern graph H given in the `n=`/`i j` text format.
    Graph {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        pattern: PathBuf,
        /// Plain branch and bound without symmetry breaking.
        #[arg(long)]
        naive: bool,
        /// Allow hosts above the default cap.
        #[arg(long)]
        lift_caps: bool,
    },
    /// ex(Q_n, C_2ℓ).
    Cube {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        two_ell: usize,
        #[arg(long)]
        naive: bool,
        #[arg(long)]
        lift_caps: bool,
    },
}

#[derive(Subcommand, Debug)]
enum LiftCmd {
    /// Two-lift of a bipartite graph, with fresh labels n+1 and n+2.
    Build {
        /// Graph file in the `n=`/`i j` format; `-` for stdin.
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Star count and two-lift search inside a 3-graph.
    Extract {
        /// 3-graph file in the `n=`/`i j k` format; `-` for stdin.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Target graph file; defaults to the 4-cycle.
        #[arg(long)]
        target: Option<PathBuf>,
    },
}

/// Rendered result plus the exit status it implies.
struct Outcome {
    body: String,
    status: u8,
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    let started = unix_millis();
    let budget = Budget(cli.budget);
    let (outcome, error) = match run(&cli, budget) {
        Ok(o) => (o, None),
        Err(e) => (
            Outcome {
                body: String::new(),
                status: e.exit_code() as u8,
            },
            Some(e),
        ),
    };
    let mut stdout = io::stdout().lock();
    let _ = stdout.write_all(outcome.body.as_bytes());
    let _ = stdout.flush();
    if let Some(e) = &error {
        eprintln!("error: {e}");
    }
    let manifest = json!({
        "tool": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "subcommand": subcommand_name(&cli.command),
        "args": &argv[1..],
        "seed": seed_of(&cli.command),
        "budget": cli.budget,
        "exit_status": outcome.status,
        "started_unix_ms": started,
        "finished_unix_ms": unix_millis(),
        "output_sha256": hex(&Sha256::digest(outcome.body.as_bytes())),
    });
    let line = format!("{manifest}\n");
    match &cli.manifest {
        Some(path) => {
            if let Err(e) = fs::write(path, line) {
                eprintln!("error: cannot write manifest {}: {e}", path.display());
            }
        }
        None => eprint!("{line}"),
    }
    ExitCode::from(outcome.status)
}

fn unix_millis() -> u128 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_millis())
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn subcommand_name(c: &Command) -> &'static str {
    match c {
        Command::Rep(RepCmd::Build { .. }) => "rep build",
        Command::Rep(RepCmd::Verify { .. }) => "rep verify",
        Command::Rep(RepCmd::Kpartite { .. }) => "rep kpartite",
        Command::Cycles(CyclesCmd::Count { .. }) => "cycles count",
        Command::Cycles(CyclesCmd::Enumerate { .. }) => "cycles enumerate",
        Command::Cycles(CyclesCmd::CheckBound { .. }) => "cycles check-bound",
        Command::Cycles(CyclesCmd::Free { .. }) => "cycles free",
        Command::Construct(_) => "construct",
        Command::LllReport(_) => "lll-report",
        Command::MonoStats(_) => "mono-stats",
        Command::Exact(ExactCmd::Graph { .. }) => "exact graph",
        Command::Exact(ExactCmd::Cube { .. }) => "exact cube",
        Command::Bounds { .. } => "bounds",
        Command::Lift(LiftCmd::Build { .. }) => "lift build",
        Command::Lift(LiftCmd::Extract { .. }) => "lift extract",
    }
}

fn seed_of(c: &Command) -> Option<u64> {
    match c {
        Command::Construct(a) => Some(a.seed),
        Command::MonoStats(a) => Some(a.seed),
        _ => None,
    }
}

fn read_input(path: Option<&Path>) -> Result<String, Error> {
    match path {
        Some(p) if p != Path::new("-") => fs::read_to_string(p)
            .map_err(|e| Error::InvalidParameter(format!("cannot read {}: {e}", p.display()))),
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::InvalidParameter(format!("cannot read stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn json_body<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

fn ok(body: String) -> Result<Outcome, Error> {
    Ok(Outcome { body, status: 0 })
}

fn no_csv(format: Format, what: &str) -> Result<(), Error> {
    if format == Format::Csv {
        return Err(Error::InvalidParameter(format!(
            "CSV output is not available for {what}"
        )));
    }
    Ok(())
}

fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for r in rows {
        out.push_str(&r.join(","));
        out.push('\n');
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn run(cli: &Cli, budget: Budget) -> Result<Outcome, Error> {
    let format = cli.format;
    match &cli.command {
        Command::Rep(cmd) => run_rep(cmd, format, budget),
        Command::Cycles(cmd) => run_cycles(cmd, format, budget),
        Command::Construct(a) => run_construct(a, format, budget),
        Command::LllReport(a) => run_lll(a, format, budget),
        Command::MonoStats(a) => {
            no_csv(format, "mono-stats")?;
            let params = params_with_colors(a.n, a.ell, a.colors, a.seed)?;
            let stats = mono_cycle_stats(&params, a.trials, budget)?;
            ok(json_body(
                &json!({ "params": params, "stats": stats, "z_score": stats.z_score() }),
            ))
        }
        Command::Exact(cmd) => run_exact(cmd, format, budget),
        Command::Bounds { ell } => run_bounds(*ell, format),
        Command::Lift(cmd) => run_lift(cmd, format, budget),
    }
}

fn run_rep(cmd: &RepCmd, format: Format, budget: Budget) -> Result<Outcome, Error> {
    no_csv(format, "rep")?;
    match cmd {
        RepCmd::Build { ell, n, labels } => {
            let labels = match labels {
                Some(p) => Some(
                    serde_json::from_str::<GroundLabels>(&read_input(Some(p))?)
                        .map_err(|e| Error::InvalidParameter(format!("labels: {e}")))?,
                ),
                None => None,
            };
            let rep = build_representation(*ell, n.unwrap_or(*ell), labels)?;
            if format == Format::Text {
                return ok(rep.subgraph()?.to_edge_list());
            }
            ok(json_body(&rep.to_doc()))
        }
        RepCmd::Verify { input } => {
            let doc: RepresentationDoc = serde_json::from_str(&read_input(input.as_deref())?)
                .map_err(|e| Error::Parse {
                    line: e.line(),
                    message: e.to_string(),
                })?;
            let rep = Representation::from_doc(&doc)?;
            let report = check_representation(&rep);
            let status = if report.passed { 0 } else { 1 };
            if let Some(f) = report.first_failure() {
                eprintln!(
                    "verification failed at clause ({}) {}: {}",
                    f.clause, f.name, f.detail
                );
            }
            let body = if format == Format::Text {
                report
                    .clauses
                    .iter()
                    .map(|c| {
                        format!(
                            "({}) {:<40} {}\n",
                            c.clause,
                            c.name,
                            if c.passed { "pass" } else { "FAIL" }
                        )
                    })
                    .collect()
            } else {
                json_body(&report)
            };
            Ok(Outcome { body, status })
        }
        RepCmd::Kpartite { input, k } => {
            let h = Subgraph::parse_edge_list(&read_input(input.as_deref())?)?;
            let outcome = check_kpartite_representation(&h, *k, budget)?;
            let status = if outcome.parts().is_some() { 0 } else { 1 };
            Ok(Outcome {
                body: json_body(&outcome),
                status,
            })
        }
    }
}

fn bound_row_csv(rows: &[BoundRow]) -> String {
    csv_table(
        &["n", "two_ell", "N", "x", "ratio"],
        rows.iter().map(|r| {
            vec![
                r.n.to_string(),
                r.two_ell.to_string(),
                r.total.to_string(),
                r.x.to_string(),
                r.ratio.to_string(),
            ]
        }),
    )
}

fn run_cycles(cmd: &CyclesCmd, format: Format, budget: Budget) -> Result<Outcome, Error> {
    match cmd {
        CyclesCmd::Count { source, two_ell } => match source.n {
            Some(n) => {
                let row = census(n, *two_ell, budget)?.bound_row()?;
                match format {
                    Format::Csv => ok(bound_row_csv(&[row])),
                    _ => ok(json_body(&json!({
                        "n": row.n,
                        "two_ell": row.two_ell,
                        "N": row.total,
                        "x": row.x,
                        "ratio": row.ratio,
                        "identity_holds": true,
                    }))),
                }
            }
            None => {
                no_csv(format, "subgraph cycle counts")?;
                let g = source.load()?;
                let total = count_cycles(&g, *two_ell, budget)?;
                ok(json_body(
                    &json!({ "dim": g.dim(), "edges": g.len(), "two_ell": two_ell, "N": total }),
                ))
            }
        },
        CyclesCmd::Enumerate {
            source,
            two_ell,
            limit,
        } => {
            no_csv(format, "cycle lists")?;
            let g = source.load()?;
            let cycles = enumerate_cycles(&g, *two_ell, *limit, budget)?;
            if format == Format::Text {
                return ok(cycles
                    .iter()
                    .map(|c| c.to_text())
                    .collect::<Vec<_>>()
                    .join("\n"));
            }
            ok(json_body(
                &json!({ "two_ell": two_ell, "count": cycles.len(), "cycles": cycles }),
            ))
        }
        CyclesCmd::CheckBound { n, two_ell } => {
            let rows = check_counting_bound(n, *two_ell, budget)?;
            match format {
                Format::Csv => ok(bound_row_csv(&rows)),
                _ => ok(json_body(&rows)),
            }
        }
        CyclesCmd::Free { source, two_ell } => {
            no_csv(format, "cycles free")?;
            let g = source.load()?;
            let result = is_cycle_free(&g, *two_ell, budget)?;
            let witness = result.witness();
            if format == Format::Text {
                let body = witness.map_or_else(|| "free\n".to_string(), |w| w.to_text());
                return Ok(Outcome {
                    body,
                    status: u8::from(witness.is_some()),
                });
            }
            Ok(Outcome {
                body: json_body(
                    &json!({ "two_ell": two_ell, "free": result.is_free(), "witness": witness }),
                ),
                status: u8::from(witness.is_some()),
            })
        }
    }
}

fn construction_csv(results: &[ConstructionResult]) -> String {
    csv_table(
        &[
            "n",
            "ell",
            "c",
            "seed",
            "trial",
            "p",
            "num_colors",
            "class_edges",
            "mono_cycles",
            "deletions",
            "kept",
            "certified",
            "density_ratio",
        ],
        results.iter().map(|r| {
            let p = &r.params;
            vec![
                p.n.to_string(),
                p.ell.to_string(),
                p.c.to_string(),
                p.seed.to_string(),
                r.trial.to_string(),
                p.p.to_string(),
                p.num_colors.to_string(),
                r.edges_before_deletion.to_string(),
                r.mono_cycles_found.to_string(),
                r.deletions.to_string(),
                r.kept_edge_count.to_string(),
                r.certified.to_string(),
                r.density_ratio.to_string(),
            ]
        }),
    )
}

fn run_construct(a: &ConstructArgs, format: Format, budget: Budget) -> Result<Outcome, Error> {
    if a.trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let mut results = Vec::new();
    for &n in &a.n {
        for &c in &a.c {
            let params = make_params(n, a.ell, c, a.seed)?;
            for t in 0..a.trials {
                results.push(run_trial(&params, t, budget)?);
            }
        }
    }
    if let Some(path) = &a.edges_out {
        let [only] = results.as_slice() else {
            return Err(Error::InvalidParameter(
                "--edges-out needs a single run".into(),
            ));
        };
        fs::write(path, only.kept_edges.to_edge_list()).map_err(|e| {
            Error::InvalidParameter(format!("cannot write {}: {e}", path.display()))
        })?;
    }
    if results.iter().any(|r| !r.certified) {
        return Err(Error::VerificationFailure {
            clause: "certification".into(),
            detail: "a constructed subgraph still contains a cycle".into(),
        });
    }
    match format {
        Format::Csv | Format::Text => ok(construction_csv(&results)),
        Format::Json if results.len() == 1 => ok(json_body(&results[0])),
        Format::Json => ok(json_body(&results)),
    }
}

fn run_lll(a: &LllArgs, format: Format, budget: Budget) -> Result<Outcome, Error> {
    let mut rows = Vec::new();
    for &n in &a.n {
        for &c in &a.c {
            let params = make_params(n, a.ell, c, 0)?;
            rows.push((params, lll_report(&params, budget)));
        }
    }
    match format {
        Format::Csv | Format::Text => ok(csv_table(
            &[
                "n",
                "ell",
                "c",
                "p",
                "p_bound",
                "x",
                "x_mode",
                "d_bound",
                "condition",
                "satisfied",
            ],
            rows.iter().map(|(p, r)| {
                vec![
                    p.n.to_string(),
                    p.ell.to_string(),
                    p.c.to_string(),
                    p.p.to_string(),
                    r.p_bound.to_string(),
                    r.x.to_string(),
                    serde_json::to_value(r.x_mode)
                        .expect("mode")
                        .as_str()
                        .unwrap_or_default()
                        .to_string(),
                    r.d_bound.to_string(),
                    r.condition.to_string(),
                    r.satisfied.to_string(),
                ]
            }),
        )),
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|(p, r)| json!({ "params": p, "report": r }))
                .collect();
            match items.as_slice() {
                [one] => ok(json_body(one)),
                _ => ok(json_body(&items)),
            }
        }
    }
}

fn run_exact(cmd: &ExactCmd, format: Format, budget: Budget) -> Result<Outcome, Error> {
    no_csv(format, "exact")?;
    let options = |naive: bool, lift_caps: bool| ExactOptions {
        symmetry: !naive,
        budget,
        lift_caps,
    };
    let result = match cmd {
        ExactCmd::Graph {
            n,
            pattern,
            naive,
            lift_caps,
        } => {
            let h = SimpleGraph::parse_text(&read_input(Some(pattern))?)?;
            ex_graph(*n, &h, &options(*naive, *lift_caps))?
        }
        ExactCmd::Cube {
            n,
            two_ell,
            naive,
            lift_caps,
        } => ex_cube(*n, *two_ell, &options(*naive, *lift_caps))?,
    };
    if !result.witness_certified {
        return Err(Error::VerificationFailure {
            clause: "witness".into(),
            detail: "the extremal witness failed independent certification".into(),
        });
    }
    if format == Format::Text {
        return ok(format!(
            "# {} forbidding {}: {}\n{}",
            result.host,
            result.forbidden,
            result.value,
            result.witness.to_text()
        ));
    }
    ok(json_body(&result))
}

fn literature_text(rows: &[LiteratureRow]) -> String {
    let width = rows.iter().map(|r| r.source.len()).max().unwrap_or(0);
    rows.iter()
        .map(|r| {
            let value = r
                .exponent
                .map_or_else(|| r.symbolic.clone().unwrap_or_default(), |e| e.to_string());
            let kind = serde_json::to_value(&r.kind).expect("kind");
            format!(
                "{:<width$}  {:<5}  {:<28}  {}\n",
                r.source,
                kind.as_str().unwrap_or_default(),
                value,
                r.note
            )
        })
        .collect()
}

fn run_bounds(ell: u32, format: Format) -> Result<Outcome, Error> {
    let literature = literature_exponents(ell)?;
    let pipeline = (ell >= 7 && ell % 2 == 1)
        .then(|| upper_bound_pipeline(ell))
        .transpose()?;
    match format {
        Format::Json => ok(json_body(&json!({
            "ell": ell,
            "lower_bound": lower_bound_exponent(ell)?,
            "pipeline": pipeline,
            "literature": literature,
        }))),
        Format::Csv => ok(csv_table(
            &["source", "kind", "exponent", "symbolic", "note"],
            literature.iter().map(|r| {
                vec![
                    csv_field(r.source),
                    serde_json::to_value(&r.kind)
                        .expect("kind")
                        .as_str()
                        .unwrap_or_default()
                        .to_string(),
                    r.exponent.map(|e| e.to_string()).unwrap_or_default(),
                    csv_field(r.symbolic.as_deref().unwrap_or_default()),
                    csv_field(&r.note),
                ]
            }),
        )),
        Format::Text => {
            let mut out = String::new();
            if let Some(p) = pipeline {
                out.push_str(&format!(
                    "ell = {}\ngamma     = {}\nsigma     = {}\nalpha_exp = {}\nfinal     = {}\n\n",
                    p.ell, p.gamma, p.sigma, p.alpha_exp, p.final_exp
                ));
            }
            out.push_str(&literature_text(&literature));
            ok(out)
        }
    }
}

fn run_lift(cmd: &LiftCmd, format: Format, budget: Budget) -> Result<Outcome, Error> {
    no_csv(format, "lift")?;
    match cmd {
        LiftCmd::Build { graph } => {
            let h = SimpleGraph::parse_text(&read_input(graph.as_deref())?)?;
            let lifted = two_lift(&h)?;
            if format == Format::Text {
                return ok(lifted.to_text());
            }
            let (a, b) = two_lift_labels(&h);
            ok(json_body(
                &json!({ "a": a, "b": b, "edges": lifted.edges(), "text": lifted.to_text() }),
            ))
        }
        LiftCmd::Extract { input, target } => {
            let g = ThreeGraph::parse_text(&read_input(input.as_deref())?)?;
            let target = match target {
                Some(p) => SimpleGraph::parse_text(&read_input(Some(p))?)?,
                None => SimpleGraph::cycle(4)?,
            };
            let stars = star_count(&g);
            let outcome = extract_two_lift(&g, &target, budget)?;
            ok(json_body(&json!({ "stars": stars, "outcome": outcome })))
        }
    }
}
