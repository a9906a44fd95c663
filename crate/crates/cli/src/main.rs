//! `lvk`: command-line front end for long virtual knot diagrams.
//!
//! Every command prints one report per line. With `--json` each line is a
//! JSON object; otherwise a short human-readable summary. Exit status is 0 on
//! success whatever the verdict, 2 on input errors and 3 on invalid budgets.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use lvk_core::gauss::parse_lines;
use lvk_core::invariants::{catalog, default_catalog, Colorer, ColoringMatrix};
use lvk_core::monoid::concat_all;
use lvk_core::search::{equivalent_within_with, min_genus_in_orbit, PrimeScanReport, SearchReport};
use lvk_core::surface::{build_band_surface, summarize};
use lvk_core::{commute_check, cut_points, odd_writhe, prime_scan, Budget, FiniteBiquandle, GaussDiagram};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "lvk", version, about = "Long virtual knots as open Gauss diagrams")]
struct Cli {
    /// Emit JSON lines instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate codes and print their canonical form.
    Parse(Inputs),
    /// Euler characteristic, boundary components and genus of the band surface.
    Genus {
        #[command(flatten)]
        inputs: Inputs,
        /// Also search the move orbit for a smaller genus within the budget.
        #[arg(long)]
        orbit: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Concatenate two or more codes, left to right.
    Concat(Inputs),
    /// Odd writhe and coloring matrices.
    Invariants {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        structures: StructureArgs,
    },
    /// Search for a move sequence between two codes.
    Equiv {
        #[command(flatten)]
        pair: Pair,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        structures: StructureArgs,
    },
    /// Decide whether A#B and B#A can be told apart or connected.
    Commute {
        #[command(flatten)]
        pair: Pair,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        structures: StructureArgs,
    },
    /// Look for certified decompositions in the move orbit.
    PrimeScan {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Args)]
struct Inputs {
    /// Codes given directly.
    codes: Vec<String>,
    /// A code; may be repeated.
    #[arg(long = "code")]
    code: Vec<String>,
    /// A file with one code per line; `#` lines are comments.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct Pair {
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    b: Option<String>,
    #[command(flatten)]
    inputs: Inputs,
}

#[derive(Args)]
struct BudgetArgs {
    #[arg(long)]
    max_crossings: Option<usize>,
    #[arg(long)]
    max_states: Option<usize>,
    #[arg(long)]
    max_depth: Option<usize>,
}

#[derive(Args)]
struct StructureArgs {
    /// dihedral:M, trivial:M or file:PATH; may be repeated.
    #[arg(long)]
    structure: Vec<String>,
    /// Use every catalog structure of size at most M.
    #[arg(long, value_name = "M")]
    scan_structures: Option<usize>,
}

enum Failure {
    Input(String),
    Budget(String),
}

type Outcome<T> = Result<T, Failure>;

fn input_error(msg: impl ToString) -> Failure {
    Failure::Input(msg.to_string())
}

fn parse_code(text: &str) -> Outcome<GaussDiagram> {
    text.parse().map_err(|e| input_error(format!("{text:?}: {e}")))
}

impl Inputs {
    fn diagrams(&self) -> Outcome<Vec<GaussDiagram>> {
        let mut out = Vec::new();
        for c in self.codes.iter().chain(&self.code) {
            out.push(parse_code(c)?);
        }
        if let Some(path) = &self.file {
            let text = std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
            let ds = parse_lines(&text).map_err(|(line, e)| input_error(format!("{}:{line}: {e}", path.display())))?;
            out.extend(ds);
        }
        if out.is_empty() {
            return Err(input_error("no input codes (use CODE, --code or --file)"));
        }
        Ok(out)
    }
}

impl Pair {
    fn diagrams(&self) -> Outcome<(GaussDiagram, GaussDiagram)> {
        let mut all = Vec::new();
        if let Some(a) = &self.a {
            all.push(parse_code(a)?);
        }
        if let Some(b) = &self.b {
            all.push(parse_code(b)?);
        }
        if !self.inputs.codes.is_empty() || !self.inputs.code.is_empty() || self.inputs.file.is_some() {
            all.extend(self.inputs.diagrams()?);
        }
        match <[GaussDiagram; 2]>::try_from(all) {
            Ok([a, b]) => Ok((a, b)),
            Err(v) => Err(input_error(format!("expected exactly two codes, got {}", v.len()))),
        }
    }
}

impl BudgetArgs {
    fn resolve(&self, inputs: &[&GaussDiagram]) -> Outcome<Budget> {
        let d = Budget::default_for(inputs);
        Budget::new(
            self.max_crossings.unwrap_or(d.max_crossings),
            self.max_states.unwrap_or(d.max_states),
            self.max_depth.unwrap_or(d.max_depth),
        )
        .map_err(|e| Failure::Budget(e.to_string()))
    }
}

impl StructureArgs {
    fn resolve(&self) -> Outcome<Vec<FiniteBiquandle>> {
        let mut out = Vec::new();
        if let Some(m) = self.scan_structures {
            if m == 0 {
                return Err(input_error("--scan-structures must be at least 1"));
            }
            out.extend(catalog(m));
        }
        for spec in &self.structure {
            let x = FiniteBiquandle::from_spec(spec).and_then(|x| x.validated()).map_err(input_error)?;
            out.push(x);
        }
        if out.is_empty() {
            out = default_catalog();
        }
        Ok(out)
    }
}

/// One output line: the command, its canonical inputs, the operation's own
/// fields and the elapsed time.
#[derive(Serialize)]
struct RunReport {
    command: &'static str,
    inputs: Vec<GaussDiagram>,
    #[serde(flatten)]
    outputs: serde_json::Map<String, Value>,
    timings: Timings,
}

#[derive(Serialize)]
struct Timings {
    wall_ms: u64,
}

struct Line {
    report: RunReport,
    text: String,
}

fn object(v: impl Serialize) -> serde_json::Map<String, Value> {
    match serde_json::to_value(v).expect("reports serialize") {
        Value::Object(m) => m,
        other => panic!("report is not an object: {other}"),
    }
}

fn line(command: &'static str, inputs: &[&GaussDiagram], start: Instant, outputs: Value, text: String) -> Line {
    Line {
        report: RunReport {
            command,
            inputs: inputs.iter().map(|d| d.canonicalize()).collect(),
            outputs: object(outputs),
            timings: Timings { wall_ms: start.elapsed().as_millis() as u64 },
        },
        text,
    }
}

fn show(d: &GaussDiagram) -> String {
    if d.is_trivial() {
        "(trivial)".to_string()
    } else {
        d.to_string()
    }
}

fn verdict_text(r: &SearchReport) -> String {
    let v = serde_json::to_value(r).expect("reports serialize");
    let verdict = v["verdict"].as_str().unwrap_or("?").to_string();
    match &r.verdict {
        lvk_core::Verdict::Equivalent { path } => format!("{verdict}, path of {} moves", path.len()),
        lvk_core::Verdict::Distinct { .. } => format!("{verdict}, witness {}", v["witness"]),
        lvk_core::Verdict::Inconclusive { .. } => format!("{verdict}, {} states visited", r.states_visited),
    }
}

fn matrix_text(m: &ColoringMatrix) -> String {
    m.rows.iter().map(|r| r.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join(" / ")
}

fn run(command: &Command) -> Outcome<Vec<Line>> {
    let mut out = Vec::new();
    match command {
        Command::Parse(inputs) => {
            for d in inputs.diagrams()? {
                let start = Instant::now();
                let c = d.canonicalize();
                let outputs = json!({ "code": c, "crossings": c.crossings(), "was_canonical": d.is_canonical() });
                out.push(line("parse", &[&d], start, outputs, show(&c)));
            }
        }
        Command::Genus { inputs, orbit, budget } => {
            for d in inputs.diagrams()? {
                let start = Instant::now();
                let s = summarize(&build_band_surface(&d)).map_err(input_error)?;
                let mut outputs = json!({
                    "code": d.canonicalize(),
                    "chi": s.chi,
                    "boundary_total": s.boundary_total,
                    "boundary_distinguished": s.boundary_distinguished,
                    "genus": s.genus,
                });
                let mut text = format!("{}: chi {} boundary {} genus {}", show(&d), s.chi, s.boundary_total, s.genus);
                if *orbit {
                    let b = budget.resolve(&[&d])?;
                    let r = min_genus_in_orbit(&d, &b);
                    text.push_str(&format!(", least in orbit {} ({} states)", r.genus, r.states_visited));
                    outputs["orbit"] = serde_json::to_value(&r).expect("reports serialize");
                }
                out.push(line("genus", &[&d], start, outputs, text));
            }
        }
        Command::Concat(inputs) => {
            let ds = inputs.diagrams()?;
            if ds.len() < 2 {
                return Err(input_error("concat needs at least two codes"));
            }
            let start = Instant::now();
            let c = concat_all(&ds);
            let cuts: Vec<usize> = cut_points(&c).iter().map(|p| p.gap).collect();
            let outputs = json!({ "code": c, "crossings": c.crossings(), "cut_points": cuts });
            let refs: Vec<&GaussDiagram> = ds.iter().collect();
            out.push(line("concat", &refs, start, outputs, show(&c)));
        }
        Command::Invariants { inputs, structures } => {
            let xs = structures.resolve()?;
            let colorers: Vec<Colorer> = xs.iter().map(|x| Colorer::new(x).map_err(input_error)).collect::<Result<_, _>>()?;
            for d in inputs.diagrams()? {
                let start = Instant::now();
                let mut matrices = Vec::new();
                let mut text = format!("{}: odd writhe {}", show(&d), odd_writhe(&d));
                for (x, c) in xs.iter().zip(&colorers) {
                    let m = c.matrix(&d).map_err(input_error)?;
                    text.push_str(&format!("\n  {}: {}", x.name, matrix_text(&m)));
                    matrices.push(json!({ "structure": x.name, "matrix": m }));
                }
                let outputs = json!({ "code": d.canonicalize(), "odd_writhe": odd_writhe(&d), "matrices": matrices });
                out.push(line("invariants", &[&d], start, outputs, text));
            }
        }
        Command::Equiv { pair, budget, structures } => {
            let (a, b) = pair.diagrams()?;
            let bud = budget.resolve(&[&a, &b])?;
            // structures only matter for the invariant pre-check
            let xs = structures.resolve()?;
            let start = Instant::now();
            let r = equivalent_within_with(&a, &b, &bud, &xs);
            let text = format!("{} vs {}: {}", show(&a), show(&b), verdict_text(&r));
            out.push(line("equiv", &[&a, &b], start, serde_json::to_value(&r).expect("reports serialize"), text));
        }
        Command::Commute { pair, budget, structures } => {
            let (a, b) = pair.diagrams()?;
            let ab = lvk_core::concat(&a, &b);
            let bud = budget.resolve(&[&ab])?;
            let xs = structures.resolve()?;
            let start = Instant::now();
            let r = commute_check(&a, &b, &bud, &xs);
            let mut outputs = serde_json::to_value(&r).expect("reports serialize");
            outputs["structures_scanned"] = json!(xs.len());
            let text = format!("{} # {} vs reverse order: {}", show(&a), show(&b), verdict_text(&r));
            out.push(line("commute", &[&a, &b], start, outputs, text));
        }
        Command::PrimeScan { inputs, budget } => {
            for d in inputs.diagrams()? {
                let b = budget.resolve(&[&d])?;
                let start = Instant::now();
                let r: PrimeScanReport = prime_scan(&d, &b);
                let text = format!(
                    "{}: {} certified decomposition(s), {} uncertified cut(s), {} states",
                    show(&d),
                    r.decompositions_found,
                    r.uncertified_cuts,
                    r.states_visited
                );
                out.push(line("prime-scan", &[&d], start, serde_json::to_value(&r).expect("reports serialize"), text));
            }
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let lines = match run(&cli.command) {
        Ok(lines) => lines,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: invalid budget: {msg}");
            return ExitCode::from(3);
        }
    };
    let mut buf = String::new();
    for l in &lines {
        if cli.json {
            buf.push_str(&serde_json::to_string(&l.report).expect("reports serialize"));
        } else {
            buf.push_str(&l.text);
        }
        buf.push('\n');
    }
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(buf.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::FAILURE;
    }
    ExitCode::SUCCESS
}
