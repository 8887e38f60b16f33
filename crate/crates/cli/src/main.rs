//! pseudocheck: analyze parity-check matrices from the command line.
//!
//! Exit codes: 0 on success, 1 for a verified negative answer (a failing
//! vector, a witness request on a matrix that needs none), 2 for input
//! errors, 3 when a guard or budget cut a search short.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use pseudocheck::cover::{oracle_pc_set, OracleGuards};
use pseudocheck::decode::{run_bsc_trials, MinSumConfig};
use pseudocheck::error::Error;
use pseudocheck::gf2::{BitMatrix, BitVec};
use pseudocheck::io::{parse_alist, parse_auto, parse_dense};
use pseudocheck::perfect::{
    construct_witness, decide_with_reference, find_cycle_free_representation,
    find_cycle_free_subrepresentation, CycleFreeReference, PerfectGuards,
};
use pseudocheck::pseudo::{
    enumerate_pseudocodewords, irreducible_pseudocodewords, is_reducible, verify_pseudocodeword,
    EnumGuards, PseudoVector,
};
use pseudocheck::report::{VerdictReport, VerifyReport};
use pseudocheck::tanner::TannerGraph;

#[derive(Parser)]
#[command(
    name = "pseudocheck",
    version,
    about = "Parity-check matrix analysis: Tanner graphs, pseudocodewords, perfection verdicts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, PartialEq, ValueEnum)]
enum Format {
    /// Detect from extension and content.
    #[default]
    Auto,
    Dense,
    Alist,
}

#[derive(Args)]
struct GuardArgs {
    /// Null-space dimension cap for codeword enumeration.
    #[arg(long, default_value_t = 20)]
    dim_guard: usize,
    /// Row-count cap for the exhaustive row-subset search.
    #[arg(long, default_value_t = 24)]
    subset_guard: usize,
    /// Dual-dimension cap for the representation search.
    #[arg(long, default_value_t = 16)]
    dual_guard: usize,
    /// Node cap for the representation search.
    #[arg(long, default_value_t = 10_000_000)]
    rep_budget: u64,
    /// Node cap for cone enumeration and reducibility searches.
    #[arg(long, default_value_t = 50_000_000)]
    node_budget: u64,
    /// Cap on cover specifications examined by --via-covers.
    #[arg(long, default_value_t = 1_000_000)]
    cover_budget: u64,
}

impl GuardArgs {
    fn enum_guards(&self) -> EnumGuards {
        EnumGuards {
            dim_guard: self.dim_guard,
            node_budget: self.node_budget,
        }
    }

    fn perfect_guards(&self) -> PerfectGuards {
        PerfectGuards {
            row_guard: self.subset_guard,
            dual_dim_guard: self.dual_guard,
            rep_node_budget: self.rep_budget,
            ..Default::default()
        }
    }

    fn oracle_guards(&self) -> OracleGuards {
        OracleGuards {
            spec_budget: self.cover_budget,
            dim_guard: self.dim_guard,
            fix_tree_edges: true,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Summarize a matrix: shape, Tanner graph, perfection verdict.
    Analyze {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Also enumerate pseudocodewords with entries up to this bound.
        #[arg(long, value_name = "BOUND")]
        pseudocodewords: Option<u64>,
        /// Write the Tanner graph in dot form to this path.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        guards: GuardArgs,
    },
    /// Check one vector: cone membership and check parities.
    VerifyPc {
        path: PathBuf,
        /// Space-separated nonnegative integers, e.g. "2 2 8 8".
        vector: String,
        /// For passing vectors, also search for a reduction to codewords.
        #[arg(long)]
        certificate: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        guards: GuardArgs,
    },
    /// List pseudocodewords, sorted and deduplicated.
    Enumerate {
        path: PathBuf,
        /// Entry bound for the cone scan; ignored with --via-covers.
        #[arg(long, default_value_t = 2)]
        bound: u64,
        /// Keep only vectors that are not sums of codewords.
        #[arg(long)]
        irreducible_only: bool,
        /// Realize vectors from graph covers of degree up to M instead of
        /// scanning the cone.
        #[arg(long, value_name = "M")]
        via_covers: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        guards: GuardArgs,
    },
    /// Construct a pseudocodeword separating the matrix from a cycle-free
    /// reference representation.
    Witness {
        path: PathBuf,
        /// Cycle-free matrix with the same row space; discovered when absent.
        #[arg(long, value_name = "PATH")]
        reference: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        guards: GuardArgs,
    },
    /// Min-sum Monte-Carlo over a binary symmetric channel; CSV on stdout.
    DecodeSim {
        path: PathBuf,
        /// Crossover probability, 0 < p < 0.5.
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        max_iters: usize,
        #[arg(long, default_value_t = 50.0)]
        clip: f64,
        #[arg(long, default_value_t = 0.0)]
        damping: f64,
        /// Attribute failures to the nearest irreducible pseudocodeword
        /// with entries up to this bound.
        #[arg(long, value_name = "BOUND")]
        pc_bound: Option<u64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[command(flatten)]
        guards: GuardArgs,
    },
}

fn load_matrix(path: &Path, format: Format) -> Result<BitMatrix, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    match format {
        Format::Dense => parse_dense(&text),
        Format::Alist => parse_alist(&text),
        Format::Auto => {
            if path.extension().is_some_and(|e| e == "alist") {
                parse_alist(&text)
            } else {
                parse_auto(&text)
            }
        }
    }
}

fn exit_for(err: &Error) -> u8 {
    match err {
        Error::DimGuardExceeded { .. }
        | Error::SubsetGuardExceeded { .. }
        | Error::DualGuardExceeded { .. }
        | Error::BudgetExceeded { .. } => 3,
        Error::OutOfHypothesis => 1,
        _ => 2,
    }
}

#[derive(Serialize)]
struct MatrixSummary {
    rows: usize,
    cols: usize,
    rank: usize,
    row_weights: Vec<usize>,
}

#[derive(Serialize)]
struct GraphSummary {
    forest: bool,
    girth: Option<usize>,
    components: usize,
    check_degrees: Vec<usize>,
}

#[derive(Serialize)]
struct AnalysisReport {
    matrix: MatrixSummary,
    graph: GraphSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<VerdictReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pseudocodewords: Option<Vec<Vec<u64>>>,
    /// Messages for searches a guard cut short; report is partial when
    /// nonempty.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    partial: Vec<String>,
}

fn print_verdict_human(verdict: &VerdictReport) {
    match verdict {
        VerdictReport::Perfect { kept_rows } => {
            println!("verdict: perfect");
            let rows: Vec<String> = kept_rows.iter().map(|j| j.to_string()).collect();
            println!("kept rows: {}", rows.join(" "));
        }
        VerdictReport::Imperfect {
            witness,
            pivotal_check,
            component,
            component_bits,
            reference_matrix,
        } => {
            println!("verdict: imperfect");
            let entries: Vec<String> = witness.iter().map(|v| v.to_string()).collect();
            println!("witness: {}", entries.join(" "));
            println!("pivotal check: {pivotal_check}");
            let bits: Vec<String> = component_bits.iter().map(|i| i.to_string()).collect();
            println!("component: {component} (bits {})", bits.join(" "));
            println!("reference rows:");
            for row in reference_matrix {
                println!("  {row}");
            }
        }
        VerdictReport::OutOfHypothesis => {
            println!("verdict: out-of-hypothesis");
            println!("no cycle-free representation of this code exists within the guards");
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_analyze(
    path: &Path,
    format: Format,
    pseudocodewords: Option<u64>,
    dot: Option<&Path>,
    json: bool,
    guards: &GuardArgs,
) -> Result<u8, Error> {
    let start = Instant::now();
    let h = load_matrix(path, format)?;
    let graph = TannerGraph::from_matrix(&h);
    let matrix = MatrixSummary {
        rows: h.rows(),
        cols: h.cols(),
        rank: h.rank(),
        row_weights: (0..h.rows()).map(|j| h.row(j).weight()).collect(),
    };
    let graph_summary = GraphSummary {
        forest: graph.is_forest(),
        girth: graph.girth(),
        components: graph.connected_components().len(),
        check_degrees: graph.check_degrees(),
    };
    if let Some(dot_path) = dot {
        std::fs::write(dot_path, graph.to_dot())
            .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", dot_path.display())))?;
    }

    let mut partial = Vec::new();
    let verdict = match decide_with_reference(&h, &guards.perfect_guards()) {
        Ok((v, reference)) => Some(VerdictReport::from_verdict(&v, reference.matrix())),
        Err(Error::OutOfHypothesis) => Some(VerdictReport::out_of_hypothesis()),
        Err(e) if exit_for(&e) == 3 => {
            partial.push(format!("verdict unresolved: {e}"));
            None
        }
        Err(e) => return Err(e),
    };
    let pseudocodewords = match pseudocodewords {
        None => None,
        Some(bound) => match enumerate_pseudocodewords(&h, bound, guards.node_budget) {
            Ok(set) => Some(set.iter().map(|p| p.entries().to_vec()).collect()),
            Err(e) if exit_for(&e) == 3 => {
                partial.push(format!("enumeration unresolved: {e}"));
                None
            }
            Err(e) => return Err(e),
        },
    };

    let report = AnalysisReport {
        matrix,
        graph: graph_summary,
        verdict,
        pseudocodewords,
        partial,
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        let m = &report.matrix;
        println!("matrix: {} rows, {} cols, rank {}", m.rows, m.cols, m.rank);
        let weights: Vec<String> = m.row_weights.iter().map(|w| w.to_string()).collect();
        println!("row weights: {}", weights.join(" "));
        let g = &report.graph;
        let girth = match g.girth {
            Some(girth) => girth.to_string(),
            None => "none".to_string(),
        };
        println!(
            "graph: forest = {}, girth = {}, components = {}",
            g.forest, girth, g.components
        );
        let degrees: Vec<String> = g.check_degrees.iter().map(|d| d.to_string()).collect();
        println!("check degrees: {}", degrees.join(" "));
        match &report.verdict {
            Some(v) => print_verdict_human(v),
            None => println!("verdict: unresolved"),
        }
        if let Some(pcs) = &report.pseudocodewords {
            println!("pseudocodewords ({}):", pcs.len());
            for p in pcs {
                let entries: Vec<String> = p.iter().map(|v| v.to_string()).collect();
                println!("  {}", entries.join(" "));
            }
        }
        for note in &report.partial {
            println!("partial: {note}");
        }
        println!("elapsed: {} ms", start.elapsed().as_millis());
    }
    Ok(if report.partial.is_empty() { 0 } else { 3 })
}

fn cmd_verify_pc(
    path: &Path,
    vector: &str,
    want_certificate: bool,
    format: Format,
    json: bool,
    guards: &GuardArgs,
) -> Result<u8, Error> {
    let h = load_matrix(path, format)?;
    let v: PseudoVector = vector.parse()?;
    let violation = verify_pseudocodeword(&h, &v)?;
    let certificate = if want_certificate && violation.is_none() {
        let words = h.null_space_codewords(guards.dim_guard)?;
        is_reducible(&v, &words, guards.node_budget)?
    } else {
        None
    };
    let report = VerifyReport::new(&v, violation.as_ref(), certificate.as_ref());
    if json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else if report.is_pseudocodeword {
        println!("pass");
        if want_certificate {
            match &report.certificate {
                Some(cert) if cert.terms.is_empty() => {
                    println!("reduction: empty combination (zero vector)")
                }
                Some(cert) => {
                    let terms: Vec<String> = cert
                        .terms
                        .iter()
                        .map(|(word, k)| format!("{k} x {word}"))
                        .collect();
                    println!("reduction: {}", terms.join(" + "));
                }
                None => println!("irreducible: no reduction to codewords exists"),
            }
        }
    } else {
        match (report.failing_kind.as_deref(), report.failing_row, report.failing_position) {
            (Some("cone"), Some(row), Some(pos)) => {
                println!("fail at row {row}, position {pos} (cone)")
            }
            (_, Some(row), _) => println!("fail at row {row} (parity)"),
            _ => unreachable!("violation carries a row"),
        }
    }
    Ok(if report.is_pseudocodeword { 0 } else { 1 })
}

#[derive(Serialize)]
struct EnumerationReport {
    vectors: Vec<Vec<u64>>,
    complete: bool,
}

fn cmd_enumerate(
    path: &Path,
    bound: u64,
    irreducible_only: bool,
    via_covers: Option<usize>,
    format: Format,
    json: bool,
    guards: &GuardArgs,
) -> Result<u8, Error> {
    let h = load_matrix(path, format)?;
    let (set, complete): (BTreeSet<PseudoVector>, bool) = match via_covers {
        None => {
            if irreducible_only {
                (
                    irreducible_pseudocodewords(&h, bound, &guards.enum_guards())?,
                    true,
                )
            } else {
                (
                    enumerate_pseudocodewords(&h, bound, guards.node_budget)?,
                    true,
                )
            }
        }
        Some(m_max) => {
            let oracle = oracle_pc_set(&h, m_max, &guards.oracle_guards())?;
            let set = if irreducible_only {
                let words = h.null_space_codewords(guards.dim_guard)?;
                let mut kept = BTreeSet::new();
                for p in oracle.vectors {
                    if is_reducible(&p, &words, guards.node_budget)?.is_none() {
                        kept.insert(p);
                    }
                }
                kept
            } else {
                oracle.vectors
            };
            if !oracle.complete {
                eprintln!(
                    "note: truncated after {} cover specifications; list is partial",
                    oracle.specs_examined
                );
            }
            (set, oracle.complete)
        }
    };
    if json {
        let report = EnumerationReport {
            vectors: set.iter().map(|p| p.entries().to_vec()).collect(),
            complete,
        };
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        for p in &set {
            println!("{p}");
        }
    }
    Ok(if complete { 0 } else { 3 })
}

#[derive(Serialize)]
struct WitnessReport {
    witness: Vec<u64>,
    pivotal_check: usize,
    d: u64,
    component: usize,
    component_bits: Vec<usize>,
    reference_matrix: Vec<String>,
    on_reference: VerifyReport,
    on_input: VerifyReport,
}

fn cmd_witness(
    path: &Path,
    reference: Option<&Path>,
    format: Format,
    json: bool,
    guards: &GuardArgs,
) -> Result<u8, Error> {
    let h = load_matrix(path, format)?;
    if let Some(rows) = find_cycle_free_subrepresentation(&h, guards.subset_guard)? {
        let shown: Vec<String> = rows.iter().map(|j| (j + 1).to_string()).collect();
        if json {
            println!(
                "{}",
                serde_json::json!({
                    "applicable": false,
                    "kept_rows": rows.iter().map(|j| j + 1).collect::<Vec<_>>(),
                })
            );
        } else {
            println!(
                "not applicable: rows {} already form a cycle-free representation",
                shown.join(" ")
            );
        }
        return Ok(1);
    }
    let reference = match reference {
        Some(ref_path) => CycleFreeReference::new(&load_matrix(ref_path, format)?, &h)?,
        None => find_cycle_free_representation(&h, &guards.perfect_guards())?
            .ok_or(Error::OutOfHypothesis)?,
    };
    let outcome = construct_witness(&h, &reference)?;
    let on_ref_violation = verify_pseudocodeword(reference.matrix(), &outcome.witness)?;
    let on_input_violation = verify_pseudocodeword(&h, &outcome.witness)?;
    let report = WitnessReport {
        witness: outcome.witness.entries().to_vec(),
        pivotal_check: outcome.pivotal_check + 1,
        d: outcome.witness.entries()[outcome.component_bits[0]] / 2,
        component: outcome.component + 1,
        component_bits: outcome.component_bits.iter().map(|i| i + 1).collect(),
        reference_matrix: (0..reference.matrix().rows())
            .map(|j| reference.matrix().row(j).to_string())
            .collect(),
        on_reference: VerifyReport::new(&outcome.witness, on_ref_violation.as_ref(), None),
        on_input: VerifyReport::new(&outcome.witness, on_input_violation.as_ref(), None),
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        let entries: Vec<String> = report.witness.iter().map(|v| v.to_string()).collect();
        println!("witness: {}", entries.join(" "));
        println!("pivotal row: {} (d = {})", report.pivotal_check, report.d);
        let bits: Vec<String> = report.component_bits.iter().map(|i| i.to_string()).collect();
        println!("component: {} (bits {})", report.component, bits.join(" "));
        match (&report.on_reference.failing_row, &report.on_reference.failing_position) {
            (Some(row), Some(pos)) => {
                println!("on reference: fail at row {row}, position {pos} (cone)")
            }
            (Some(row), None) => println!("on reference: fail at row {row} (parity)"),
            _ => println!("on reference: pass"),
        }
        println!(
            "on input: {}",
            if report.on_input.is_pseudocodeword {
                "pass"
            } else {
                "fail"
            }
        );
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_decode_sim(
    path: &Path,
    p: f64,
    trials: usize,
    seed: u64,
    config: MinSumConfig,
    pc_bound: Option<u64>,
    format: Format,
    guards: &GuardArgs,
) -> Result<u8, Error> {
    let h = load_matrix(path, format)?;
    let pc_list: Vec<PseudoVector> = match pc_bound {
        Some(bound) => irreducible_pseudocodewords(&h, bound, &guards.enum_guards())?
            .into_iter()
            .collect(),
        None => Vec::new(),
    };
    let word = BitVec::zeros(h.cols());
    let records = run_bsc_trials(&h, &word, p, trials, seed, &config, &pc_list)?;
    println!("seed,p,converged,iterations,correct,nearest_pc_index");
    let mut correct = 0usize;
    let mut converged = 0usize;
    for rec in &records {
        correct += usize::from(rec.correct);
        converged += usize::from(rec.converged);
        let nearest = rec
            .nearest_pc
            .map(|k| (k + 1).to_string())
            .unwrap_or_default();
        println!(
            "{},{},{},{},{},{}",
            rec.seed, rec.p, rec.converged, rec.iterations, rec.correct, nearest
        );
    }
    eprintln!("{correct}/{trials} correct, {converged}/{trials} converged");
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Analyze {
            path,
            format,
            pseudocodewords,
            dot,
            json,
            guards,
        } => cmd_analyze(&path, format, pseudocodewords, dot.as_deref(), json, &guards),
        Command::VerifyPc {
            path,
            vector,
            certificate,
            format,
            json,
            guards,
        } => cmd_verify_pc(&path, &vector, certificate, format, json, &guards),
        Command::Enumerate {
            path,
            bound,
            irreducible_only,
            via_covers,
            format,
            json,
            guards,
        } => cmd_enumerate(
            &path,
            bound,
            irreducible_only,
            via_covers,
            format,
            json,
            &guards,
        ),
        Command::Witness {
            path,
            reference,
            format,
            json,
            guards,
        } => cmd_witness(&path, reference.as_deref(), format, json, &guards),
        Command::DecodeSim {
            path,
            p,
            trials,
            seed,
            max_iters,
            clip,
            damping,
            pc_bound,
            format,
            guards,
        } => cmd_decode_sim(
            &path,
            p,
            trials,
            seed,
            MinSumConfig {
                max_iters,
                clip,
                damping,
            },
            pc_bound,
            format,
            &guards,
        ),
    }
}

fn main() -> ExitCode {
    // Die quietly when a pipe reader stops early, like any line-oriented
    // tool; Rust resets SIGPIPE to ignore, which turns EPIPE into a panic.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
