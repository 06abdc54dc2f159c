use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qindex::enumerate::{
    connected_graphs, ClassCatalog, GraphFilter, FILTERED_LIMIT, NO_ISOLATED_LIMIT,
};
use qindex::families::{construct_splus, construct_star, construct_star_union_edge};
use qindex::graph::{from_graph6, parse_edge_list, to_edge_list, to_graph6, DEFAULT_CANON_LIMIT};
use qindex::optimize::{local_search, SearchConfig, SEARCH_LIMIT};
use qindex::spectral::{
    perron_dominant, spectrum_dense, DEFAULT_MAX_ITER, DEFAULT_TOL, DENSE_LIMIT,
};
use qindex::verify::{self, LemmaOptions, MRange};
use qindex::witness::find_c4;
use qindex::{Certificate, Error, ExtremalParams, Graph, TOOL_VERSION};

#[derive(Parser)]
#[command(
    name = "qindex",
    version,
    about = "Signless Laplacian spectral radius toolkit"
)]
struct Cli {
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Print every default tolerance, ceiling and budget as JSON and exit.
    #[arg(long)]
    show_defaults: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Q-index and Perron vector summary of a graph file.
    Q {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Full Q-spectrum of a graph file.
    Spectrum {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Build a named graph.
    Construct {
        #[arg(value_enum)]
        family: Family,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = GraphFormat::Edgelist)]
        format: GraphFormat,
    },
    /// Look for a forbidden subgraph.
    Witness {
        #[arg(value_enum)]
        kind: WitnessKind,
        file: PathBuf,
        /// Star size for `star`.
        #[arg(long)]
        s: Option<usize>,
    },
    /// Run a verification harness and emit a certificate.
    Verify(VerifyArgs),
    /// List isomorphism classes with m edges and no isolated vertex.
    Enumerate {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        connected: bool,
        #[arg(long)]
        c4_free: bool,
        /// Exclude K_{1,s}, i.e. require maximum degree below s.
        #[arg(long)]
        max_star: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Seeded local search for the admissible graph of largest Q-index.
    Search {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        move_cap: usize,
        #[arg(long)]
        no_screening: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    check: Check,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// `lo:hi` or `auto:hi` (from the theorem threshold for each k).
    #[arg(long)]
    m_range: Option<String>,
    /// `lo:hi` or a single value.
    #[arg(long)]
    k_range: Option<String>,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = verify::RANDOM_N_LIMIT)]
    n_max: usize,
    #[arg(long, default_value_t = 20)]
    restarts: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Check-specific tolerance; see --show-defaults.
    #[arg(long)]
    tol: Option<f64>,
    /// Run the check's negative control (corrupted input).
    #[arg(long)]
    negative_control: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Edgelist,
    Graph6,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Splus,
    Star,
    StarUnionEdge,
}

#[derive(Clone, Copy, ValueEnum)]
enum WitnessKind {
    C4,
    Star,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    LemmaBounds,
    Zhai,
    Quotient,
    Feng,
    Rotation,
    Claims,
    ExtremalSmall,
    TheoremProbe,
}

/// Failure of a command: message plus exit status.
struct Failure(String, u8);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NoConvergence { .. } => 3,
            _ => 2,
        };
        Failure(e.to_string(), code)
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure(msg.into(), 2)
}

fn defaults() -> serde_json::Value {
    let search = SearchConfig::default();
    json!({
        "tool_version": TOOL_VERSION,
        "perron": { "tol": DEFAULT_TOL, "max_iter": DEFAULT_MAX_ITER },
        "ceilings": {
            "dense_vertices": DENSE_LIMIT,
            "canonical_form_vertices": DEFAULT_CANON_LIMIT,
            "enumerate_no_isolated_m": NO_ISOLATED_LIMIT,
            "enumerate_filtered_m": FILTERED_LIMIT,
            "search_m": SEARCH_LIMIT,
            "lemma_cross_check_m": verify::CROSS_CHECK_CEILING,
        },
        "search": search,
        "verify": {
            "lemma_bounds": { "tol": DEFAULT_TOL, "cross_check_relative": verify::CROSS_CHECK_REL,
                              "k_range": "0:5", "m_range": "auto:2000" },
            "zhai": { "tol": verify::TIE_TOL },
            "quotient": { "tol": DEFAULT_TOL, "eigenvalue_match": verify::QUOTIENT_EIG_TOL,
                          "q_match": verify::QUOTIENT_Q_TOL },
            "feng": { "tol": verify::FENG_SLACK, "trials": 1000, "n_max": verify::RANDOM_N_LIMIT, "seed": 1 },
            "rotation": { "tol": verify::ROTATION_SLACK, "trials": 1000, "seed": 1 },
            "claims": { "tol": DEFAULT_TOL, "pendant": verify::PENDANT_TOL },
            "extremal_small": { "tol": verify::TIE_TOL },
            "theorem_probe": { "restarts": 20, "seed": 1, "below": verify::PROBE_BELOW,
                               "above": verify::PROBE_ABOVE },
        },
    })
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let g = if path.extension().is_some_and(|e| e == "g6") {
        from_graph6(text.trim())?
    } else {
        parse_edge_list(&text)?
    };
    Ok(g)
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            let mut stdout = io::stdout().lock();
            let newline = if text.ends_with('\n') { "" } else { "\n" };
            let _ = write!(stdout, "{text}{newline}");
            Ok(())
        }
    }
}

fn parse_pair(s: &str, what: &str) -> Result<(usize, usize), Failure> {
    let bad = || usage(format!("bad {what} '{s}', expected lo:hi"));
    match s.split_once(':') {
        Some((a, b)) => Ok((
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        )),
        None => {
            let v = s.trim().parse().map_err(|_| bad())?;
            Ok((v, v))
        }
    }
}

fn parse_m_range(s: &str) -> Result<MRange, Failure> {
    match s.split_once(':') {
        Some(("auto", hi)) => hi
            .trim()
            .parse()
            .map(MRange::Auto)
            .map_err(|_| usage(format!("bad m-range '{s}'"))),
        _ => parse_pair(s, "m-range").map(|(a, b)| MRange::Explicit(a, b)),
    }
}

fn params(a: &VerifyArgs) -> Result<ExtremalParams, Failure> {
    let m = a.m.ok_or_else(|| usage("this check needs --m"))?;
    Ok(ExtremalParams::new(m, a.k.unwrap_or(0)))
}

fn run_verify(a: &VerifyArgs) -> Result<u8, Failure> {
    let mut grid = None;
    let cert: Certificate = match a.check {
        Check::LemmaBounds => {
            let k_range = parse_pair(a.k_range.as_deref().unwrap_or("0:5"), "k-range")?;
            let m_range = parse_m_range(a.m_range.as_deref().unwrap_or("auto:2000"))?;
            let opts = LemmaOptions {
                corrupt_cubic: a.negative_control,
                ..LemmaOptions::default()
            };
            let (cert, rows) = verify::verify_lemma_bounds_with(
                k_range,
                m_range,
                a.tol.unwrap_or(DEFAULT_TOL),
                &opts,
            );
            grid = Some(rows);
            cert
        }
        Check::Zhai => {
            let m = a.m.ok_or_else(|| usage("zhai needs --m"))?;
            verify::verify_zhai(m, a.tol.unwrap_or(verify::TIE_TOL))
        }
        Check::Quotient => verify::verify_quotient_with(
            &params(a)?,
            a.tol.unwrap_or(DEFAULT_TOL),
            a.negative_control,
        ),
        Check::Feng => verify::verify_feng(
            a.trials,
            a.n_max,
            a.seed,
            a.tol.unwrap_or(verify::FENG_SLACK),
        ),
        Check::Rotation => {
            verify::verify_rotation(a.trials, a.seed, a.tol.unwrap_or(verify::ROTATION_SLACK))
        }
        Check::Claims => verify::verify_claims_on_splus(&params(a)?, a.tol.unwrap_or(DEFAULT_TOL)),
        Check::ExtremalSmall => {
            verify::verify_extremal_small(&params(a)?, a.tol.unwrap_or(verify::TIE_TOL))
        }
        Check::TheoremProbe => {
            let p = params(a)?;
            if a.negative_control {
                verify::verify_theorem_probe_relaxed(&p, a.restarts, a.seed)
            } else {
                verify::verify_theorem_probe(&p, a.restarts, a.seed)
            }
        }
    };
    let text = match a.format {
        Format::Json => cert.to_json(),
        Format::Text => cert.to_text(),
        Format::Csv => match grid {
            Some(rows) => {
                let mut s = String::from(verify::BoundRow::CSV_HEADER);
                for r in rows {
                    s.push('\n');
                    s += &r.csv_row();
                }
                s
            }
            None => format!("{}\n{}", Certificate::CSV_HEADER, cert.csv_row()),
        },
    };
    emit(&text, a.out.as_deref())?;
    Ok(cert.verdict.exit_code() as u8)
}

fn run(cmd: Command) -> Result<u8, Failure> {
    match cmd {
        Command::Q { file, format, tol } => {
            let g = read_graph(&file)?;
            let pr = perron_dominant(&g, None, tol, DEFAULT_MAX_ITER)?;
            let argmax = pr.argmax();
            let text = if format == Format::Json {
                json!({
                    "n": g.n(), "m": g.m(), "q": pr.q, "iterations": pr.iterations,
                    "residual": pr.residual, "argmax": argmax, "x": pr.x,
                })
                .to_string()
            } else {
                format!(
                    "n {}\nm {}\nq {}\niterations {}\nresidual {:e}\nargmax {} ({})",
                    g.n(),
                    g.m(),
                    pr.q,
                    pr.iterations,
                    pr.residual,
                    argmax,
                    pr.x[argmax]
                )
            };
            emit(&text, None)?;
        }
        Command::Spectrum { file, format } => {
            let g = read_graph(&file)?;
            let s = spectrum_dense::<f64>(&g)?;
            let text = match format {
                Format::Json => json!({ "eigenvalues": s.eigenvalues }).to_string(),
                _ => s
                    .eigenvalues
                    .iter()
                    .map(f64::to_string)
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
            emit(&text, None)?;
        }
        Command::Construct {
            family,
            m,
            k,
            out,
            format,
        } => {
            let g = match family {
                Family::Splus => construct_splus(&ExtremalParams::new(m, k))?.graph,
                Family::Star => construct_star(m)?,
                Family::StarUnionEdge => construct_star_union_edge(m)?,
            };
            let text = match format {
                GraphFormat::Edgelist => to_edge_list(&g),
                GraphFormat::Graph6 => to_graph6(&g),
            };
            emit(&text, out.as_deref())?;
        }
        Command::Witness { kind, file, s } => {
            let g = read_graph(&file)?;
            let text = match kind {
                WitnessKind::C4 => match find_c4(&g) {
                    Some(c) => format!("c4 {} {} {} {}", c[0], c[1], c[2], c[3]),
                    None => "none".to_string(),
                },
                WitnessKind::Star => {
                    let s = s.ok_or_else(|| usage("star needs --s"))?;
                    match (0..g.n()).find(|&u| g.neighbors(u).len() >= s) {
                        Some(u) => {
                            let leaves: Vec<String> =
                                g.neighbors(u)[..s].iter().map(usize::to_string).collect();
                            format!("star {u} {}", leaves.join(" "))
                        }
                        None => "none".to_string(),
                    }
                }
            };
            emit(&text, None)?;
        }
        Command::Verify(a) => return run_verify(&a),
        Command::Enumerate {
            m,
            connected,
            c4_free,
            max_star,
            format,
        } => {
            let filter = GraphFilter {
                c4_free,
                max_degree: max_star.map(|s| s.saturating_sub(1)),
            };
            let scored: Vec<(Graph, f64)> = if connected {
                connected_graphs(m, m + 1, &filter)?
                    .into_iter()
                    .map(|g| {
                        let q = qindex::spectral::q_index_default(&g)?;
                        Ok((g, q))
                    })
                    .collect::<Result<_, Error>>()?
            } else {
                let cat = ClassCatalog::build(m, &filter)?;
                cat.composites
                    .iter()
                    .map(|c| (cat.assemble(c), cat.q(c)))
                    .collect()
            };
            let text = match format {
                Format::Json => {
                    let rows: Vec<_> = scored
                        .iter()
                        .map(|(g, q)| json!({ "graph6": to_graph6(g), "n": g.n(), "q": q }))
                        .collect();
                    serde_json::to_string_pretty(&rows).expect("json")
                }
                Format::Csv => {
                    let mut s = String::from("graph6,n,q");
                    for (g, q) in &scored {
                        s += &format!("\n{},{},{}", to_graph6(g), g.n(), q);
                    }
                    s
                }
                Format::Text => {
                    let mut s = format!("{} classes", scored.len());
                    for (g, q) in &scored {
                        s += &format!("\n{} {}", to_graph6(g), q);
                    }
                    s
                }
            };
            emit(&text, None)?;
        }
        Command::Search {
            m,
            k,
            restarts,
            seed,
            move_cap,
            no_screening,
            format,
        } => {
            let cfg = SearchConfig {
                restarts,
                seed,
                move_cap,
                screening: !no_screening,
                ..SearchConfig::default()
            };
            let p = ExtremalParams::new(m, k);
            if m > SEARCH_LIMIT {
                return Err(usage(format!("search supports m <= {SEARCH_LIMIT}")));
            }
            let outcome = local_search(&p, &cfg)?;
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&json!({
                    "m": m, "k": k, "q": outcome.q, "best_graph6": to_graph6(&outcome.best),
                    "best_restart": outcome.best_restart, "trace": outcome.trace,
                }))
                .expect("json"),
                _ => format!(
                    "q {}\nbest {}\nrestart {}",
                    outcome.q,
                    to_graph6(&outcome.best),
                    outcome.best_restart
                ),
            };
            emit(&text, None)?;
            if outcome.trace.iter().any(|t| !t.local_optimum) {
                return Ok(3);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if n == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    if cli.show_defaults {
        let text = serde_json::to_string_pretty(&defaults()).expect("json");
        let _ = emit(&text, None);
        return ExitCode::SUCCESS;
    }
    let Some(cmd) = cli.command else {
        eprintln!("error: no subcommand given; try --help");
        return ExitCode::from(2);
    };
    match run(cmd) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(msg, code)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
