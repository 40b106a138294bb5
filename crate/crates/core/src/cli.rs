//! The `invdeg` command line.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::certify::{self, TypeClass};
use crate::error::{Error, Result};
use crate::families;
use crate::graph::Graph;
use crate::io;
use crate::lowerbound::{self, LevelSequence};
use crate::rational::{frac, Frac};
use crate::report::{Report, Verdict};
use crate::search;
use crate::surgery;

#[derive(Debug, Parser)]
#[command(name = "invdeg", version, about = "Exact certificates for diameter versus inverse degree in connected planar graphs")]
pub struct Cli {
    /// Compact JSON on stdout and no summary on stderr.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Inequality certificates.
    #[command(subcommand)]
    Certify(CertifyCommand),
    /// Extremal families.
    #[command(subcommand)]
    Families(FamiliesCommand),
    /// Level surgery.
    #[command(subcommand)]
    Surgery(SurgeryCommand),
    /// Exhaustive check over small connected planar graphs.
    Search {
        #[arg(long, default_value_t = search::DEFAULT_SEARCH_N)]
        n_max: usize,
        /// Permit n_max = 9 (long run).
        #[arg(long = "allow-9")]
        allow_9: bool,
        /// Write equality and minimum-slack witnesses here.
        #[arg(long)]
        emit_graphs: Option<PathBuf>,
    },
    /// The full certification suite.
    All,
}

#[derive(Debug, Subcommand)]
pub enum CertifyCommand {
    /// (★) over the finite grid of all 14 surgery pairs.
    Star {
        #[arg(long, default_value_t = 120)]
        x_max: u64,
    },
    /// (★) against its linear lower bound on the extended grid.
    Tail {
        #[arg(long, default_value_t = 2000)]
        x_max: u64,
    },
    /// (✠) at w = 2, x = 6 for all 14 pairs.
    Maltese,
    /// Shortest path in the certification digraph.
    Dp,
    /// The simple-case inequality n²/(6n−12) ≥ (2/5)(n+1)/3.
    Simplecase {
        #[arg(long, default_value_t = 10000)]
        n_max: u64,
    },
    /// The four diameter bounds for one graph.
    Bounds {
        /// Edge-list text ("n m" header, one edge per line) or graph6.
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum FamiliesCommand {
    /// Compare every family with its closed forms.
    Check {
        #[arg(long, default_value_t = 300)]
        max_n: usize,
    },
    /// Write one family member in the text graph format.
    Emit {
        #[arg(long, value_enum)]
        family: Family,
        /// Vertex count; not used by k5-minus.
        #[arg(long, required_if_eq_any = [("family", "l"), ("family", "t"), ("family", "path"), ("family", "l-tail"), ("family", "t-tail")])]
        n: Option<usize>,
        /// Edge target for the tailed triangulation.
        #[arg(long)]
        m: Option<usize>,
        /// Destination file; stdout receives the graph when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Family {
    L,
    T,
    Path,
    LTail,
    TTail,
    K5Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Graph6,
}

#[derive(Debug, Subcommand)]
pub enum SurgeryCommand {
    /// Apply one surgery and print the before/after accounting.
    Demo {
        /// Graph file; defaults to a structured level graph.
        #[arg(long, requires_all = ["source", "left", "right"])]
        input: Option<PathBuf>,
        #[arg(long)]
        source: Option<usize>,
        #[arg(long)]
        left: Option<usize>,
        #[arg(long)]
        right: Option<usize>,
    },
}

/// Parses `argv`, runs the command, prints the report and returns the
/// exit code: 0 pass, 1 fail, 2 usage or input error.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(Outcome::Report(report)) => {
            println!("{}", report.to_json(!cli.json));
            if !cli.json {
                eprintln!("{}: {}", report.command, summary(&report));
            }
            report.verdict.exit_code()
        }
        Ok(Outcome::Raw(text)) => {
            print!("{text}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn summary(report: &Report) -> String {
    match report.verdict {
        Verdict::Pass => format!("PASS ({} ms)", report.wall_time_ms),
        Verdict::Fail => format!("FAIL ({} ms)", report.wall_time_ms),
    }
}

pub enum Outcome {
    Report(Report),
    Raw(String),
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    let start = Instant::now();
    let mut out = match &cli.command {
        Command::Certify(c) => Outcome::Report(certify_command(c)?),
        Command::Families(FamiliesCommand::Check { max_n }) => Outcome::Report(families_check(*max_n)?),
        Command::Families(FamiliesCommand::Emit { family, n, m, output, format }) => {
            families_emit(*family, *n, *m, output.as_deref(), *format)?
        }
        Command::Surgery(SurgeryCommand::Demo { input, source, left, right }) => {
            Outcome::Report(surgery_demo(input.as_deref(), *source, *left, *right)?)
        }
        Command::Search { n_max, allow_9, emit_graphs } => {
            Outcome::Report(search_command(*n_max, *allow_9, emit_graphs.as_deref())?)
        }
        Command::All => Outcome::Report(run_all()?),
    };
    if let Outcome::Report(r) = &mut out {
        r.wall_time_ms = start.elapsed().as_millis() as u64;
    }
    Ok(out)
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
    if first.split_whitespace().count() == 1 {
        io::from_graph6(first.trim())
    } else {
        io::from_text(&text)
    }
}

fn certify_command(c: &CertifyCommand) -> Result<Report> {
    Ok(match c {
        CertifyCommand::Star { x_max } => star_report(*x_max)?,
        CertifyCommand::Tail { x_max } => tail_report(*x_max),
        CertifyCommand::Maltese => maltese_report(),
        CertifyCommand::Dp => dp_report(),
        CertifyCommand::Simplecase { n_max } => simplecase_report(*n_max)?,
        CertifyCommand::Bounds { input } => {
            let g = read_graph(input)?;
            let b = certify::check_bounds(&g)?;
            Report::new("certify bounds", Verdict::from_bool(b.all_hold()), &b)
                .param("input", input.display().to_string())
        }
    })
}

pub fn star_report(x_max: u64) -> Result<Report> {
    let r = certify::verify_star_grid(x_max)?;
    let details = json!({
        "claim": "(★) > 0 except at (w, x) in {(1,3), (2,6)}",
        "grid": { "x_min": r.x_min, "x_max": r.x_max, "w": r.w_rule, "pairs": r.pairs, "cells": r.cells },
        "exceptions": r.exception_points,
        "exception_cells": r.exceptions,
        "only_expected_points": r.only_expected_points,
        "every_expected_point_hit": r.every_expected_point_hit,
    });
    Ok(Report::new("certify star", Verdict::from_bool(r.holds()), details).param("x_max", x_max))
}

pub fn tail_report(x_max: u64) -> Report {
    let r = certify::verify_star_tail(x_max);
    let details = json!({
        "claim": "(★) > x/6 − 4 − (2/5)w and x/6 − 2x/15 − 4 > 0 for x > 120",
        "grid": { "x_min": 2, "x_max": r.x_max, "w": "0 <= w <= floor(x/3)", "cells": r.cells },
        "linear_bound_holds": r.linear_bound_holds,
        "tail_positive": r.tail_positive,
        "first_failure": r.first_failure,
        "chain": r.chain,
    });
    Report::new("certify tail", Verdict::from_bool(r.holds()), details).param("x_max", x_max)
}

pub fn maltese_report() -> Report {
    let r = certify::maltese_report();
    let details = json!({
        "claim": "(✠) > 0 at w = 2, x = 6 for every pair except ω–ω",
        "values": r.values,
        "minimum": r.minimum,
        "all_positive": r.all_positive,
    });
    Report::new("certify maltese", Verdict::from_bool(r.all_positive), details)
}

pub fn dp_report() -> Report {
    let r = lowerbound::digraph_report();
    let arcs: Vec<_> = r
        .arcs
        .iter()
        .map(|(a, b, c)| json!({ "from": a, "to": b, "cost": c }))
        .collect();
    let details = json!({
        "claim": "shortest s→t cost is 37/60 and there is no negative cycle",
        "nodes": r.nodes,
        "arcs": arcs,
        "shortest_path": r.shortest_path,
        "optimal_path": r.optimal_path,
        "optimal_sequence": r.optimal_sequence,
        "negative_cycle": r.negative_cycle,
        "no_negative_cycle": r.negative_cycle.is_none(),
    });
    Report::new("certify dp", Verdict::from_bool(r.holds()), details)
}

pub fn simplecase_report(n_max: u64) -> Result<Report> {
    let r = certify::simplecase_report(n_max)?;
    Ok(Report::new("certify simplecase", Verdict::from_bool(r.holds), &r).param("n_max", n_max))
}

pub fn families_check(max_n: usize) -> Result<Report> {
    let r = families::check_families(max_n)?;
    let details = json!({
        "l_family": {
            "n_range": [4, max_n],
            "closed_forms_match": r.l_family.mismatches.is_empty(),
            "mismatches": r.l_family.mismatches,
            "gap_constant": r.l_family.gaps.len() == 1,
            "gap": r.l_family.gaps.first(),
        },
        "t_family": {
            "n_range": [9, max_n],
            "closed_forms_match": r.t_family.mismatches.is_empty(),
            "mismatches": r.t_family.mismatches,
            "aux_slack_constant": r.t_family.aux_slacks.len() == 1,
            "aux_slack": r.t_family.aux_slacks.first(),
            "octahedron": r.t_family.octahedron,
        },
        "paths": {
            "n_range": [2, max_n],
            "closed_forms_match": r.paths.mismatches.is_empty(),
            "aux_slack": r.paths.aux_slacks.first(),
        },
        "corollary": r.corollary,
        "tailed_t": r.tailed_t,
    });
    Ok(Report::new("families check", Verdict::from_bool(r.holds()), details).param("max_n", max_n))
}

fn families_emit(family: Family, n: Option<usize>, m: Option<usize>, output: Option<&Path>, format: Format) -> Result<Outcome> {
    let n = match (family, n) {
        (Family::K5Minus, _) => 5,
        (_, Some(n)) => n,
        (_, None) => return Err(Error::InvalidParameter("--n is required".into())),
    };
    let g = match family {
        Family::L => families::gen_l(n)?,
        Family::T => families::gen_t(n)?,
        Family::Path => families::gen_path(n)?,
        Family::LTail => families::gen_l_with_tail(n)?,
        Family::TTail => {
            let m = m.ok_or_else(|| Error::InvalidParameter("--m is required for t-tail".into()))?;
            families::gen_t_with_tail(n, m)?.graph
        }
        Family::K5Minus => families::gen_k5_minus(),
    };
    let text = match format {
        Format::Text => io::to_text(&g),
        Format::Graph6 => format!("{}\n", io::to_graph6(&g)),
    };
    let Some(path) = output else {
        return Ok(Outcome::Raw(text));
    };
    std::fs::write(path, &text).map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))?;
    let metrics = families::FamilyMetrics::measure(&g).ok();
    let details = json!({ "output": path.display().to_string(), "n": g.vertex_count(), "m": g.edge_count(), "metrics": metrics });
    Ok(Outcome::Report(
        Report::new("families emit", Verdict::Pass, details)
            .param("family", format!("{family:?}"))
            .param("n", n)
            .param("m", m),
    ))
}

/// Default demo instance: sizes 1,2,1,1,1,2,1 cut between levels 1 and 5.
pub fn demo_instance() -> (Graph, usize, usize, usize) {
    let seq = LevelSequence::new(vec![1, 2, 1, 1, 1, 2, 1]).expect("valid sequence");
    (lowerbound::gen_structured_graph(&seq), 0, 1, 5)
}

fn surgery_demo(input: Option<&Path>, source: Option<usize>, left: Option<usize>, right: Option<usize>) -> Result<Report> {
    let (g, s, l, r) = match input {
        Some(path) => (read_graph(path)?, source.unwrap(), left.unwrap(), right.unwrap()),
        None => demo_instance(),
    };
    let (after, report) = surgery::apply_surgery(&g, s, l, r)?;
    let holds = report.contract.as_ref().is_none_or(|c| c.holds());
    let details = json!({
        "report": report,
        "result_graph": io::to_text(&after),
        "contract_applies": report.contract.is_some(),
        "contract_holds": report.contract.as_ref().map(|c| c.holds()),
    });
    Ok(Report::new("surgery demo", Verdict::from_bool(holds), details)
        .param("input", input.map(|p| p.display().to_string()))
        .param("source", s)
        .param("left", l)
        .param("right", r))
}

fn search_command(n_max: usize, allow_9: bool, emit: Option<&Path>) -> Result<Report> {
    if n_max > search::DEFAULT_SEARCH_N && !allow_9 {
        return Err(Error::InvalidParameter(format!(
            "n_max {n_max} exceeds {}; pass --allow-9 for the long run",
            search::DEFAULT_SEARCH_N
        )));
    }
    let r = search::verify_small_graphs(n_max)?;
    if let Some(dir) = emit {
        emit_witnesses(dir, &r)?;
    }
    Ok(Report::new("search", Verdict::from_bool(r.holds()), &r)
        .param("n_max", n_max)
        .param("allow_9", allow_9)
        .param("emit_graphs", emit.map(|p| p.display().to_string())))
}

fn emit_witnesses(dir: &Path, r: &search::SearchReport) -> Result<()> {
    let fail = |e: std::io::Error| Error::Parse(format!("cannot write to {}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(fail)?;
    let write = |name: String, g6: &str| -> Result<()> {
        let g = io::from_graph6(g6)?;
        std::fs::write(dir.join(name), io::to_text(&g)).map_err(fail)
    };
    for (i, w) in r.equality_witnesses.iter().enumerate() {
        write(format!("equality_{i}.txt"), &w.graph6)?;
    }
    if let Some(w) = &r.min_slack {
        write("min_slack.txt".into(), &w.graph.graph6)?;
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct ClaimResult {
    claim: &'static str,
    verdict: Verdict,
    statement: &'static str,
    details: serde_json::Value,
}

fn claim(claim: &'static str, statement: &'static str, report: Report) -> ClaimResult {
    ClaimResult { claim, verdict: report.verdict, statement, details: report.details }
}

/// Every certificate except the opt-in n = 9 search.
pub fn run_all() -> Result<Report> {
    let mut claims = vec![
        claim("star-grid", "(★) positive on 2 <= x <= 120 outside (1,3) and (2,6)", star_report(120)?),
        claim("star-tail", "(★) exceeds its linear bound and the tail is positive up to x = 2000", tail_report(2000)),
        claim("maltese", "(✠) positive at w = 2, x = 6", maltese_report()),
        claim("shortest-path", "certification digraph has shortest path 37/60", dp_report()),
        claim("simple-case", "n²/(6n−12) >= (2/5)(n+1)/3 for 3 <= n <= 10000", simplecase_report(10000)?),
        claim("families-tightness", "L, T and path families match their closed forms", families_check(300)?),
    ];
    let corollary = families::check_corollary(&families::COROLLARY_NS)?;
    claims.push(claim(
        "corollary-tightness",
        "4n²/(3mD) decreases toward 1 on tailed L",
        Report::new("", Verdict::from_bool(corollary.holds()), &corollary),
    ));
    let bonus_ok = certify::surgery_pairs().iter().all(|&(a, b)| {
        certify::bonus(a, b) == certify::bonus(b, a) && certify::bonus(a, b) >= frac(0, 1)
    }) && certify::bonus(TypeClass::Omega, TypeClass::Alpha) == frac(8, 15);
    claims.push(claim(
        "bonus-table",
        "bonus values are symmetric and non-negative",
        Report::new("", Verdict::from_bool(bonus_ok), json!({ "omega_alpha": Frac(certify::bonus(TypeClass::Omega, TypeClass::Alpha)) })),
    ));
    let structured = lowerbound::verify_structured_theorem(200, 30, lowerbound::DEFAULT_SEED)?;
    claims.push(claim(
        "structured-theorem",
        "r >= (2/5)D + 37/60 on sampled structured sequences",
        Report::new("", Verdict::from_bool(structured.holds()), &structured),
    ));
    claims.push(claim("surgery-contract", "surgery shortens D by R − L − 1", surgery_demo(None, None, None, None)?));
    claims.push(claim(
        "small-graph-search",
        "all bounds hold for connected planar graphs with n <= 8; equality only at K5 minus an edge",
        search_command(search::DEFAULT_SEARCH_N, false, None)?,
    ));
    let ok = claims.iter().all(|c| c.verdict.is_pass());
    let failed: Vec<&str> = claims.iter().filter(|c| !c.verdict.is_pass()).map(|c| c.claim).collect();
    Ok(Report::new("all", Verdict::from_bool(ok), json!({ "claims": claims, "failed": failed })))
}
