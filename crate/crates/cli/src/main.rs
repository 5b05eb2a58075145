//! `inertia`: command-line front end for the inertia-bound toolkit.
//!
//! Graph arguments are a JSON file path or the shorthands `paley:<q>` and
//! `paley:<q>-v<k>` (vertex `k` deleted). Exit codes: 0 on success or a
//! verdict, 1 on bad input or a rejected certificate, 2 when a computation
//! ran out of budget.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand};
use serde_json::json;

use inertia_core::certify::{
    certify_not_tight, enumerate_gadgets, verify_certificate, GadgetClaim, NonTightnessCertificate,
    Verdict,
};
use inertia_core::exactla::{inertia, MatrixJson, WeightMatrix};
use inertia_core::graphs::{Graph, PaleyParams};
use inertia_core::independence::{independence_number, is_alpha_critical, IndependenceError};
use inertia_core::search::{
    grid_search_circulant, random_edge_search_with, Best, RandomSearchConfig, SearchError, DEFAULT_RADIUS,
};

#[derive(Parser, Debug)]
#[command(name = "inertia", version, about = "Exact inertia bounds and non-tightness certificates")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel stages.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the Paley graph P(q) as JSON.
    Paley { q: usize },
    /// Independence number with a witness.
    Alpha { graph: String },
    /// α-criticality check with per-edge witnesses.
    Critical { graph: String },
    /// Exact inertia of a matrix file.
    Inertia { matrix: PathBuf },
    /// Inertia bound of a weight matrix for a graph.
    Bound { graph: String, matrix: PathBuf },
    /// List triangles (with edge classes for Paley shorthands).
    Triangles { graph: String },
    /// List gadgets on 2α+1 vertices.
    Gadgets { graph: String },
    /// Try to certify that no weight matrix attains the inertia bound.
    Certify {
        graph: String,
        /// Write the certificate here when one is found.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a certificate against a graph.
    Verify { graph: String, certificate: PathBuf },
    /// Exhaustive search over per-class circulant weightings of P(q).
    SearchCirculant {
        q: usize,
        /// Inclusive weight range `a..b`.
        #[arg(long, allow_hyphen_values = true, default_value_t = format!("{}..{}", -DEFAULT_RADIUS, DEFAULT_RADIUS))]
        range: String,
    },
    /// Seeded random search over integer edge weights.
    SearchRandom {
        graph: String,
        #[arg(long, default_value_t = 10_000)]
        iters: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Perturb one edge at a time and keep non-worsening moves.
        #[arg(long)]
        hill_climb: bool,
        /// Draw positive weights only.
        #[arg(long)]
        nonnegative: bool,
    },
}

enum Failure {
    Input(anyhow::Error),
    Budget(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

impl From<IndependenceError> for Failure {
    fn from(e: IndependenceError) -> Self {
        match e {
            IndependenceError::BudgetExceeded(_) => Failure::Budget(e.to_string()),
            IndependenceError::TooLarge(_) => Failure::Input(e.into()),
        }
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::Independence(i) => i.into(),
            other => Failure::Input(other.into()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn parse_graph(arg: &str) -> anyhow::Result<Graph> {
    if let Some(rest) = arg.strip_prefix("paley:") {
        let (q, deleted) = match rest.split_once("-v") {
            Some((q, k)) => (q, Some(k)),
            None => (rest, None),
        };
        let q: usize = q.parse().with_context(|| format!("bad prime in {arg:?}"))?;
        let g = PaleyParams::new(q)?.graph();
        return match deleted {
            None => Ok(g),
            Some(k) => {
                let k: usize = k.parse().with_context(|| format!("bad vertex in {arg:?}"))?;
                Ok(g.delete_vertex(k)?.graph)
            }
        };
    }
    let text = fs::read_to_string(arg).with_context(|| format!("reading graph file {arg}"))?;
    Graph::from_json_str(&text).with_context(|| format!("parsing graph file {arg}"))
}

fn paley_params(arg: &str) -> Option<PaleyParams> {
    let q = arg.strip_prefix("paley:")?.parse().ok()?;
    PaleyParams::new(q).ok()
}

fn read_matrix(path: &Path) -> anyhow::Result<MatrixJson> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading matrix file {}", path.display()))?;
    MatrixJson::parse(&text).with_context(|| format!("parsing matrix file {}", path.display()))
}

fn parse_range(s: &str) -> anyhow::Result<std::ops::RangeInclusive<i64>> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| anyhow!("range must look like a..b, got {s:?}"))?;
    let a: i64 = a.trim().parse().with_context(|| format!("bad range start {a:?}"))?;
    let b: i64 = b.trim().trim_start_matches('=').parse().with_context(|| format!("bad range end {b:?}"))?;
    if a > b {
        bail!("empty range {s:?}");
    }
    Ok(a..=b)
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn run(cli: Cli) -> Outcome {
    let json = cli.json;
    match cli.command {
        Command::Paley { q } => {
            let g = PaleyParams::new(q).map_err(anyhow::Error::from)?.graph();
            println!("{}", g.to_json_string());
        }
        Command::Alpha { graph } => {
            let g = parse_graph(&graph)?;
            let r = independence_number(&g)?;
            if json {
                print_json(&r);
            } else {
                println!("{}", r.alpha);
                println!("witness: {:?}", r.witness);
            }
        }
        Command::Critical { graph } => {
            let g = parse_graph(&graph)?;
            let r = is_alpha_critical(&g)?;
            if json {
                print_json(&r);
            } else if r.is_critical {
                println!("critical (alpha = {})", r.alpha);
                for (e, w) in &r.witnesses {
                    println!("  {e}: {w:?}");
                }
            } else {
                let e = r.failing_edge.expect("non-critical graphs name an edge");
                println!("not critical: deleting {e} leaves alpha = {}", r.alpha);
            }
        }
        Command::Inertia { matrix } => {
            let m = read_matrix(&matrix)?.to_sym_matrix().map_err(anyhow::Error::from)?;
            let i = inertia(&m);
            if json {
                print_json(&i);
            } else {
                println!("{i}");
            }
        }
        Command::Bound { graph, matrix } => {
            let g = parse_graph(&graph)?;
            let m = read_matrix(&matrix)?.to_sym_matrix().map_err(anyhow::Error::from)?;
            let w = WeightMatrix::from_sym_matrix(&g, &m).map_err(anyhow::Error::from)?;
            let i = inertia(&w.to_sym_matrix());
            let alpha = independence_number(&g)?.alpha;
            if json {
                print_json(&json!({
                    "inertia": i,
                    "bound": i.bound(),
                    "alpha": alpha,
                    "gap": i.bound() - alpha,
                }));
            } else {
                println!("inertia {i}, bound {}, alpha {alpha}, gap {}", i.bound(), i.bound() - alpha);
            }
        }
        Command::Triangles { graph } => {
            let g = parse_graph(&graph)?;
            let params = paley_params(&graph);
            let ts = g.triangles();
            let classes: Vec<Option<[usize; 3]>> = ts
                .iter()
                .map(|&t| params.as_ref().and_then(|p| p.triangle_pattern(t).ok()))
                .collect();
            if json {
                let list: Vec<_> = ts
                    .iter()
                    .zip(&classes)
                    .map(|(t, c)| json!({ "vertices": t.vertices(), "classes": c }))
                    .collect();
                print_json(&json!({ "count": ts.len(), "triangles": list }));
            } else {
                println!("{} triangles", ts.len());
                for (t, c) in ts.iter().zip(&classes) {
                    match c {
                        Some([a, b, c]) => println!("  {t}  {a}-{b}-{c}"),
                        None => println!("  {t}"),
                    }
                }
            }
        }
        Command::Gadgets { graph } => {
            let g = parse_graph(&graph)?;
            let alpha = independence_number(&g)?.alpha;
            let gadgets = enumerate_gadgets(&g, alpha).map_err(|e| {
                if e.is_budget() {
                    Failure::Budget(e.to_string())
                } else {
                    Failure::Input(e.into())
                }
            })?;
            if json {
                let claims: Vec<GadgetClaim> = gadgets.iter().map(GadgetClaim::from).collect();
                print_json(&json!({ "alpha": alpha, "count": claims.len(), "gadgets": claims }));
            } else {
                println!("{} gadgets on {} vertices (alpha = {alpha})", gadgets.len(), 2 * alpha + 1);
                for x in &gadgets {
                    let odd: Vec<String> = x.odd_support.iter().map(|e| e.to_string()).collect();
                    let sign = if x.const_negative { '-' } else { '+' };
                    println!("  {:?}  {sign}  odd support {}", x.vertices, odd.join(" "));
                }
            }
        }
        Command::Certify { graph, output } => {
            let g = parse_graph(&graph)?;
            let verdict = certify_not_tight(&g);
            if let (Some(path), Some(cert)) = (&output, verdict.certificate()) {
                fs::write(path, cert.to_json_string())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            if json {
                let mut v = json!({ "verdict": verdict.to_string() });
                if let Verdict::Unknown {
                    sign_class: Some((s, d)),
                    ..
                } = &verdict
                {
                    v["sign_class"] = json!({ "negative_edges": s.negative_edges(), "direction": d });
                }
                if let Some(cert) = verdict.certificate() {
                    v["farkas_rows"] = json!(cert.farkas_rows);
                    v["gadgets"] = json!(cert.gadgets.len());
                }
                print_json(&v);
            } else {
                println!("{verdict}");
                if let Some(cert) = verdict.certificate() {
                    println!(
                        "{} gadgets, {} farkas rows",
                        cert.gadgets.len(),
                        cert.farkas_rows.len()
                    );
                }
            }
            if let Verdict::Unknown { budget: true, reason, .. } = verdict {
                return Err(Failure::Budget(reason));
            }
        }
        Command::Verify { graph, certificate } => {
            let g = parse_graph(&graph)?;
            let text = fs::read_to_string(&certificate)
                .with_context(|| format!("reading {}", certificate.display()))?;
            let cert = NonTightnessCertificate::from_json_str(&text)
                .with_context(|| format!("parsing certificate {}", certificate.display()))?;
            match verify_certificate(&g, &cert) {
                Ok(()) => {
                    if json {
                        print_json(&json!({ "valid": true }));
                    } else {
                        println!("VALID");
                    }
                }
                Err(f) => {
                    if json {
                        print_json(&json!({ "valid": false, "reason": f.code(), "detail": f.to_string() }));
                    } else {
                        println!("INVALID: {f}");
                    }
                    return Err(Failure::Input(anyhow!("certificate rejected: {f}")));
                }
            }
        }
        Command::SearchCirculant { q, range } => {
            let params = PaleyParams::new(q).map_err(anyhow::Error::from)?;
            let r = grid_search_circulant(&params, parse_range(&range)?)?;
            if json {
                print_json(&r);
            } else {
                println!(
                    "best bound {} (alpha {}, gap {}), inertia {}, {} points{}",
                    r.bound,
                    r.alpha,
                    r.best_gap(),
                    r.inertia,
                    r.iterations,
                    if r.partial { ", partial" } else { "" }
                );
                if let Best::Weights(w) = &r.best {
                    println!("weights {}", serde_json::to_string(w).expect("serializable"));
                }
                println!("{} minimizers", r.argmin_total);
            }
            if r.partial {
                return Err(Failure::Budget("grid budget exceeded".into()));
            }
        }
        Command::SearchRandom {
            graph,
            iters,
            seed,
            hill_climb,
            nonnegative,
        } => {
            let g = parse_graph(&graph)?;
            let alpha = independence_number(&g)?.alpha;
            let cfg = RandomSearchConfig {
                iterations: iters,
                seed,
                hill_climb,
                nonnegative,
            };
            let r = random_edge_search_with(&g, alpha, cfg);
            if json {
                print_json(&r);
            } else {
                println!(
                    "best bound {} (alpha {}, gap {}), inertia {}, {} iterations, seed {}",
                    r.bound,
                    r.alpha,
                    r.best_gap(),
                    r.inertia,
                    r.iterations,
                    seed
                );
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.max(1))
        .build_global()
    {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("budget exceeded: {msg}");
            ExitCode::from(2)
        }
    }
}
