//! Command-line interface: documents, commands and exit codes.
//!
//! Exit codes: 0 success, 1 invalid input or failed verification, 2 proven
//! infeasibility, 3 search budget exhausted.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::ops::ControlFlow;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::assemble::{build_square, render_frame};
use crate::construct::build_border;
use crate::corners::{audit_order_m, construct_with_corners, missing_pairs};
use crate::enumerate::{
    count_omega, for_each_border, CornerScope, OmegaKey, Outcome, SearchBudget,
};
use crate::error::{Error, Result};
use crate::numbers::InnerOrder;
use crate::plan::{BorderFrame, BorderPlan, MagicSquare};
use crate::tables::seed_tables;
use crate::transform::orbit;
use crate::verify::{verify_border, verify_bordered, verify_frame, verify_square, CheckReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Exit code for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Infeasible { .. } => EXIT_INFEASIBLE,
        Error::BudgetExhausted { .. } => EXIT_BUDGET,
        _ => EXIT_INVALID,
    }
}

fn parse_err(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        location: location.into(),
        message: message.into(),
    }
}

// ---------------------------------------------------------------- documents

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GridFormat {
    /// Whitespace-aligned text, `.` for empty cells.
    Grid,
    Csv,
    /// `{"order": N, "cells": [...]}`, row-major, `null` for empty cells.
    Json,
}

/// A square grid, possibly with empty cells (a frame's interior).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridDocument {
    pub order: usize,
    pub cells: Vec<Option<i64>>,
}

impl GridDocument {
    pub fn from_square(sq: &MagicSquare) -> Self {
        Self {
            order: sq.order(),
            cells: sq.cells().iter().map(|&x| Some(x)).collect(),
        }
    }

    pub fn from_frame(frame: &BorderFrame) -> Self {
        Self {
            order: frame.size(),
            cells: frame.cells().to_vec(),
        }
    }

    fn check(self) -> Result<Self> {
        if self.order == 0 || self.cells.len() != self.order * self.order {
            return Err(parse_err(
                "grid",
                format!(
                    "order {} needs {} cells, found {}",
                    self.order,
                    self.order * self.order,
                    self.cells.len()
                ),
            ));
        }
        Ok(self)
    }

    /// The grid as a square, if every cell is filled.
    pub fn to_square(&self) -> Option<MagicSquare> {
        let cells: Option<Vec<i64>> = self.cells.iter().copied().collect();
        MagicSquare::new(self.order, cells?).ok()
    }

    pub fn to_frame(&self) -> Result<BorderFrame> {
        BorderFrame::from_grid(self.order, self.cells.clone())
    }

    pub fn render(&self, format: GridFormat) -> String {
        let cell = |x: &Option<i64>| x.map_or_else(|| ".".to_string(), |v| v.to_string());
        match format {
            GridFormat::Grid => {
                let width = self.cells.iter().map(|x| cell(x).len()).max().unwrap_or(1);
                let mut out = String::new();
                for row in self.cells.chunks(self.order) {
                    let line: Vec<String> =
                        row.iter().map(|x| format!("{:>width$}", cell(x))).collect();
                    writeln!(out, "{}", line.join(" ")).expect("write to string");
                }
                out
            }
            GridFormat::Csv => {
                let mut w = csv::WriterBuilder::new()
                    .has_headers(false)
                    .from_writer(Vec::new());
                for row in self.cells.chunks(self.order) {
                    let fields: Vec<String> = row
                        .iter()
                        .map(|x| x.map(|v| v.to_string()).unwrap_or_default())
                        .collect();
                    w.write_record(&fields).expect("write to memory");
                }
                String::from_utf8(w.into_inner().expect("flush to memory"))
                    .expect("csv output is utf-8")
            }
            GridFormat::Json => serde_json::to_string(self).expect("grid serializes") + "\n",
        }
    }

    /// Parses any of the three formats, detecting which from the text.
    pub fn parse(text: &str) -> Result<Self> {
        let body = text.trim_start();
        if body.starts_with('{') {
            let doc: GridDocument = serde_json::from_str(body).map_err(|e| {
                parse_err(
                    format!("line {}, column {}", e.line(), e.column()),
                    e.to_string(),
                )
            })?;
            return doc.check();
        }
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        let csv_like = lines.iter().any(|(_, l)| l.contains(','));
        let mut cells = Vec::new();
        let mut order = None;
        for (lineno, line) in lines {
            let fields: Vec<&str> = if csv_like {
                line.split(',').map(str::trim).collect()
            } else {
                line.split_whitespace().collect()
            };
            let width = *order.get_or_insert(fields.len());
            if fields.len() != width {
                return Err(parse_err(
                    format!("line {lineno}"),
                    format!("expected {width} cells, found {}", fields.len()),
                ));
            }
            for (col, f) in fields.into_iter().enumerate() {
                let value = match f {
                    "" | "." => None,
                    _ => Some(f.parse::<i64>().map_err(|_| {
                        parse_err(
                            format!("line {lineno}, column {}", col + 1),
                            format!("`{f}` is not an integer"),
                        )
                    })?),
                };
                cells.push(value);
            }
        }
        Self {
            order: order.unwrap_or(0),
            cells,
        }
        .check()
    }
}

/// A border plan as structured text: `{"n", "v", "w", "b", "c"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanDocument {
    pub n: usize,
    pub v: i64,
    pub w: i64,
    pub b: Vec<i64>,
    pub c: Vec<i64>,
    /// Set on orbit output to name the symmetry that produced the plan.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetry: Option<String>,
}

impl PlanDocument {
    pub fn from_plan(plan: &BorderPlan) -> Self {
        Self {
            n: plan.n.get(),
            v: plan.v,
            w: plan.w,
            b: plan.b.clone(),
            c: plan.c.clone(),
            symmetry: None,
        }
    }

    pub fn to_plan(&self) -> Result<BorderPlan> {
        let plan = BorderPlan::new(
            InnerOrder::new(self.n)?,
            self.v,
            self.w,
            self.b.clone(),
            self.c.clone(),
        );
        for (name, line) in [("b", &plan.b), ("c", &plan.c)] {
            if line.len() != self.n {
                return Err(parse_err(
                    "plan",
                    format!("`{name}` has {} values, expected {}", line.len(), self.n),
                ));
            }
        }
        if let Some(x) = plan.selected().find(|&x| !plan.n.contains(x)) {
            return Err(Error::NotInPool {
                value: x,
                n: self.n,
            });
        }
        Ok(plan)
    }

    pub fn render(&self) -> String {
        serde_json::to_string(self).expect("plan serializes")
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text.trim()).map_err(|e| {
            parse_err(
                format!("line {}, column {}", e.line(), e.column()),
                e.to_string(),
            )
        })
    }
}

/// Any input document the CLI accepts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Plan(PlanDocument),
    Grid(GridDocument),
}

impl Document {
    pub fn parse(text: &str) -> Result<Self> {
        let body = text.trim_start();
        if body.starts_with('{') {
            let value: serde_json::Value = serde_json::from_str(body).map_err(|e| {
                parse_err(
                    format!("line {}, column {}", e.line(), e.column()),
                    e.to_string(),
                )
            })?;
            if value.get("n").is_some() {
                return PlanDocument::parse(body).map(Document::Plan);
            }
        }
        GridDocument::parse(text).map(Document::Grid)
    }

    /// Reads a plan directly or from a frame's top row and left column.
    pub fn to_plan(&self) -> Result<BorderPlan> {
        match self {
            Document::Plan(p) => p.to_plan(),
            Document::Grid(g) => Ok(g.to_frame()?.to_plan()),
        }
    }
}

// ---------------------------------------------------------------- arguments

#[derive(Debug, Parser)]
#[command(
    name = "bordered-magic",
    version,
    about = "Magic borders and bordered magic squares"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a bordered magic square, or a single border.
    Build(BuildArgs),
    /// Verify a square, a frame or a plan document.
    Verify(VerifyArgs),
    /// Enumerate borders with given corners, or count them per corner pair.
    Enumerate(EnumerateArgs),
    /// Print the eight symmetry images of a border.
    Orbit(OrbitArgs),
    /// List or check the shipped seed tables.
    Tables(TablesArgs),
}

fn parse_corners(s: &str) -> std::result::Result<(i64, i64), String> {
    let (v, w) = s.split_once(',').ok_or("expected `v,w`")?;
    let num = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|_| format!("`{}` is not an integer", t.trim()))
    };
    Ok((num(v)?, num(w)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Grid,
    Csv,
    Json,
    /// Plan document (borders only).
    Plan,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    /// Square order N, or the inner order n with --border-only.
    #[arg(long)]
    pub order: usize,
    /// Emit a single border of inner order `order` instead of a square.
    #[arg(long)]
    pub border_only: bool,
    /// Upper corners `v,w` (even inner orders, with --border-only).
    #[arg(long, value_parser = parse_corners)]
    pub corners: Option<(i64, i64)>,
    /// Output format; squares default to grid, borders to plan.
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Input document; `-` or absent reads stdin.
    pub input: Option<PathBuf>,
    /// Also check every concentric subsquare.
    #[arg(long)]
    pub bordered: bool,
    /// Print the report as JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    /// Inner order n.
    #[arg(long)]
    pub order: usize,
    /// Upper corners `v,w`; without them a count table is printed.
    #[arg(long, value_parser = parse_corners)]
    pub corners: Option<(i64, i64)>,
    /// Print only the number of borders.
    #[arg(long)]
    pub count_only: bool,
    /// Stop after this many borders.
    #[arg(long)]
    pub limit: Option<usize>,
    /// Give up after visiting this many search nodes (per corner pair).
    #[arg(long)]
    pub max_nodes: Option<u64>,
    /// Give up after this many seconds (per corner pair).
    #[arg(long)]
    pub timeout: Option<f64>,
    /// Count over all pool corners rather than `1..=2n+2`.
    #[arg(long)]
    pub all_corners: bool,
}

#[derive(Debug, Args)]
pub struct OrbitArgs {
    /// Plan or frame document; `-` or absent reads stdin.
    pub input: Option<PathBuf>,
    /// Print frames in grid format instead of plan documents.
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    /// Verify every entry, repairing parameterized ones where possible.
    #[arg(long)]
    pub check: bool,
    /// Orders at which to instantiate the parameterized table.
    #[arg(long = "m", default_values_t = [8usize])]
    pub m: Vec<usize>,
}

// ---------------------------------------------------------------- commands

/// Text written by a command and its exit code.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            ..Self::default()
        }
    }

    fn fail(err: &Error) -> Self {
        Self {
            stderr: format!("error: {err}\n"),
            code: exit_code(err),
            ..Self::default()
        }
    }
}

fn read_input(path: &Option<PathBuf>, stdin: &mut dyn Read) -> Result<String> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p)
                .map_err(|e| parse_err(p.display().to_string(), e.to_string()))?
        }
        _ => {
            stdin
                .read_to_string(&mut text)
                .map_err(|e| parse_err("stdin", e.to_string()))?;
        }
    }
    Ok(text)
}

fn emit_plan(plan: &BorderPlan, format: OutputFormat) -> Result<String> {
    Ok(match format {
        OutputFormat::Plan => PlanDocument::from_plan(plan).render() + "\n",
        OutputFormat::Grid => {
            GridDocument::from_frame(&render_frame(plan)?).render(GridFormat::Grid)
        }
        OutputFormat::Csv => GridDocument::from_frame(&render_frame(plan)?).render(GridFormat::Csv),
        OutputFormat::Json => {
            GridDocument::from_frame(&render_frame(plan)?).render(GridFormat::Json)
        }
    })
}

pub fn cmd_build(args: &BuildArgs) -> Result<String> {
    if args.border_only {
        let plan = match args.corners {
            Some((v, w)) => construct_with_corners(args.order, v, w)?.plan,
            None => build_border(args.order)?,
        };
        let report = verify_border(&plan);
        if !report.valid {
            return Err(Error::InvalidPlan(report.to_string()));
        }
        return emit_plan(&plan, args.format.unwrap_or(OutputFormat::Plan));
    }
    if args.corners.is_some() {
        return Err(parse_err(
            "--corners",
            "corners apply to single borders; add --border-only",
        ));
    }
    let sq = build_square(args.order)?;
    let report = verify_bordered(&sq);
    if !report.valid {
        return Err(Error::InvalidPlan(report.to_string()));
    }
    let format = match args.format.unwrap_or(OutputFormat::Grid) {
        OutputFormat::Grid => GridFormat::Grid,
        OutputFormat::Csv => GridFormat::Csv,
        OutputFormat::Json => GridFormat::Json,
        OutputFormat::Plan => return Err(parse_err("--format", "plan output needs --border-only")),
    };
    Ok(GridDocument::from_square(&sq).render(format))
}

/// Verifies a document; returns the report and a heading naming what was
/// checked.
pub fn cmd_verify(doc: &Document, bordered: bool) -> Result<(&'static str, CheckReport)> {
    Ok(match doc {
        Document::Plan(p) => ("border plan", verify_border(&p.to_plan()?)),
        Document::Grid(g) => match g.to_square() {
            Some(sq) if bordered => ("bordered square", verify_bordered(&sq)),
            Some(sq) => ("square", verify_square(&sq)),
            None => ("border frame", verify_frame(&g.to_frame()?)),
        },
    })
}

fn budget(args: &EnumerateArgs) -> SearchBudget {
    let mut b = SearchBudget::unlimited();
    if let Some(k) = args.limit {
        b = b.with_solutions(k);
    }
    if let Some(k) = args.max_nodes {
        b = b.with_nodes(k);
    }
    if let Some(t) = args.timeout {
        b = b.with_time(Duration::from_secs_f64(t.max(0.0)));
    }
    b
}

pub fn cmd_enumerate(args: &EnumerateArgs, out: &mut dyn Write) -> Result<Outcome> {
    let n = InnerOrder::new(args.order)?;
    let io = |e: std::io::Error| parse_err("stdout", e.to_string());
    let Some((v, w)) = args.corners else {
        let scope = if args.all_corners {
            CornerScope::Full
        } else {
            CornerScope::Small
        };
        let counts = count_omega(n, scope, budget(args))?;
        writeln!(out, "v,w,count").map_err(io)?;
        for ((v, w), k) in counts {
            writeln!(out, "{v},{w},{k}").map_err(io)?;
        }
        return Ok(Outcome::Complete);
    };
    let key = OmegaKey::new(n, v, w)?;
    let mut count = 0u64;
    let mut failure = None;
    let (outcome, _) = for_each_border(key, budget(args), |border| {
        count += 1;
        if !args.count_only {
            let line = PlanDocument::from_plan(&border.to_plan()).render();
            if let Err(e) = writeln!(out, "{line}") {
                failure = Some(e);
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    });
    if let Some(e) = failure {
        return Err(io(e));
    }
    if args.count_only {
        writeln!(out, "{count}").map_err(io)?;
    }
    Ok(outcome)
}

pub fn cmd_orbit(plan: &BorderPlan, format: OutputFormat) -> Result<String> {
    let report = verify_border(plan);
    if !report.valid {
        return Err(Error::InvalidPlan(report.to_string()));
    }
    let mut text = String::new();
    for (s, image) in orbit(plan) {
        let report = verify_border(&image);
        if !report.valid {
            return Err(Error::InvalidPlan(format!("{} image: {report}", s.name())));
        }
        if format == OutputFormat::Plan {
            let mut doc = PlanDocument::from_plan(&image);
            doc.symmetry = Some(s.name().to_string());
            writeln!(text, "{}", doc.render()).expect("write to string");
        } else {
            writeln!(text, "# {}", s.name()).expect("write to string");
            text.push_str(&emit_plan(&image, format)?);
            text.push('\n');
        }
    }
    Ok(text)
}

/// Seed table listing or audit. The flag is true when the order-4 table is valid
/// and every parameterized entry is served from the table, mended or not.
pub fn cmd_tables(args: &TablesArgs) -> Result<(String, bool)> {
    let table = seed_tables();
    let mut text = String::new();
    let mut ok = true;
    let order4 = InnerOrder::new(4)?;
    writeln!(text, "order 4 seeds ({} entries)", table.order4.len()).expect("write to string");
    for e in &table.order4 {
        let plan = e.plan();
        let status = if args.check {
            let r = verify_border(&plan);
            ok &= r.valid;
            if r.valid {
                "valid".to_string()
            } else {
                r.to_string()
            }
        } else {
            String::new()
        };
        let doc = PlanDocument::from_plan(&plan);
        writeln!(
            text,
            "  ({:>2}, {:>2}) b={:?} c={:?} {status}",
            e.v, e.w, doc.b, doc.c
        )
        .expect("write to string");
        debug_assert_eq!(plan.n, order4);
    }
    for &m in &args.m {
        if m < 8 || m % 4 != 0 {
            return Err(Error::Order(
                m as i64,
                "parameterized seeds need m ≡ 0 mod 4, m ≥ 8",
            ));
        }
        writeln!(text, "order {m}: corner pairs not reached by extension")
            .expect("write to string");
        if !args.check {
            for (v, w) in missing_pairs(m) {
                let entry = table
                    .param_entry(m, v, w)
                    .map(|e| e.label())
                    .unwrap_or_else(|| "absent".into());
                writeln!(text, "  ({v:>3}, {w:>3}) {entry}").expect("write to string");
            }
            continue;
        }
        let mut served = 0;
        for r in audit_order_m(m)? {
            let entry = r.entry.as_deref().unwrap_or("-");
            ok &= r.status.from_table();
            let verified = verify_border(&r.plan).valid && r.plan.corners() == (r.v, r.w);
            served += usize::from(verified);
            ok &= verified;
            writeln!(
                text,
                "  ({:>3}, {:>3}) entry {entry}: {}; plan {}",
                r.v,
                r.w,
                r.status.label(),
                if verified { "verified" } else { "NOT verified" }
            )
            .expect("write to string");
            if let Some(raw) = r.raw.as_ref().filter(|raw| !raw.valid) {
                for v in &raw.violations {
                    writeln!(text, "      {v}").expect("write to string");
                }
            }
        }
        writeln!(text, "  {served}/20 pairs served by a verified plan").expect("write to string");
    }
    Ok((text, ok))
}

/// Runs a parsed command line.
pub fn run(cli: &Cli, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Output {
    let result = match &cli.command {
        Command::Build(args) => cmd_build(args).and_then(|text| match &args.output {
            Some(path) => std::fs::write(path, &text)
                .map(|_| Output::ok(String::new()))
                .map_err(|e| parse_err(path.display().to_string(), e.to_string())),
            None => Ok(Output::ok(text)),
        }),
        Command::Verify(args) => read_input(&args.input, stdin)
            .and_then(|text| Document::parse(&text))
            .and_then(|doc| cmd_verify(&doc, args.bordered))
            .map(|(what, report)| {
                let stdout = if args.json {
                    serde_json::to_string(&report).expect("report serializes") + "\n"
                } else {
                    format!("{what}: {report}\n")
                };
                Output {
                    stdout,
                    code: if report.valid { EXIT_OK } else { EXIT_INVALID },
                    ..Output::default()
                }
            }),
        Command::Enumerate(args) => {
            let warning = if args.order > 6 {
                format!("warning: exhaustive enumeration at inner order {} may not finish; consider --max-nodes or --timeout\n", args.order)
            } else {
                String::new()
            };
            cmd_enumerate(args, stdout).map(|outcome| match outcome {
                Outcome::Exhausted { nodes } => Output {
                    stderr: format!(
                        "{warning}search budget exhausted after {nodes} nodes; output is partial\n"
                    ),
                    code: EXIT_BUDGET,
                    ..Output::default()
                },
                _ => Output {
                    stderr: warning,
                    ..Output::default()
                },
            })
        }
        Command::Orbit(args) => read_input(&args.input, stdin)
            .and_then(|text| Document::parse(&text))
            .and_then(|doc| doc.to_plan())
            .and_then(|plan| cmd_orbit(&plan, args.format.unwrap_or(OutputFormat::Plan)))
            .map(Output::ok),
        Command::Tables(args) => cmd_tables(args).map(|(text, ok)| Output {
            stdout: text,
            code: if ok { EXIT_OK } else { EXIT_INVALID },
            ..Output::default()
        }),
    };
    result.unwrap_or_else(|e| Output::fail(&e))
}

/// Parses `args` and runs the command.
pub fn main_with<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, stdin, stdout),
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            if e.use_stderr() {
                Output {
                    stderr: text,
                    code,
                    ..Output::default()
                }
            } else {
                Output {
                    stdout: text,
                    code,
                    ..Output::default()
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], stdin: &str) -> Output {
        let mut input = stdin.as_bytes();
        let mut streamed = Vec::new();
        let mut out = main_with(
            std::iter::once("bordered-magic").chain(args.iter().copied()),
            &mut input,
            &mut streamed,
        );
        out.stdout = String::from_utf8(streamed).unwrap() + &out.stdout;
        out
    }

    #[test]
    fn grid_round_trips() {
        let sq = build_square(6).unwrap();
        let doc = GridDocument::from_square(&sq);
        for f in [GridFormat::Grid, GridFormat::Csv, GridFormat::Json] {
            assert_eq!(GridDocument::parse(&doc.render(f)).unwrap(), doc, "{f:?}");
        }
        let frame = GridDocument::from_frame(&render_frame(&build_border(4).unwrap()).unwrap());
        for f in [GridFormat::Grid, GridFormat::Csv, GridFormat::Json] {
            assert_eq!(
                GridDocument::parse(&frame.render(f)).unwrap(),
                frame,
                "{f:?}"
            );
        }
    }

    #[test]
    fn plan_round_trips() {
        let doc = PlanDocument::from_plan(&build_border(7).unwrap());
        assert_eq!(PlanDocument::parse(&doc.render()).unwrap(), doc);
        assert_eq!(Document::parse(&doc.render()).unwrap(), Document::Plan(doc));
    }

    #[test]
    fn parse_errors_name_a_location() {
        let err = GridDocument::parse("1 2\n3 x\n").unwrap_err();
        assert!(err.to_string().contains("line 2, column 2"), "{err}");
        let err = GridDocument::parse("1 2\n3\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn build_and_verify() {
        let out = call(&["build", "--order", "9"], "");
        assert_eq!(out.code, 0);
        let back = call(&["verify", "--bordered"], &out.stdout);
        assert_eq!(
            (back.code, back.stdout.trim()),
            (0, "bordered square: valid")
        );
    }

    #[test]
    fn corner_feasibility_codes() {
        let ok = call(
            &[
                "build",
                "--order",
                "10",
                "--border-only",
                "--corners",
                "1,4",
            ],
            "",
        );
        assert_eq!(ok.code, 0);
        let doc = PlanDocument::parse(&ok.stdout).unwrap();
        assert_eq!((doc.v, doc.w), (1, 4));
        let bad = call(
            &[
                "build",
                "--order",
                "10",
                "--border-only",
                "--corners",
                "1,3",
            ],
            "",
        );
        assert_eq!(bad.code, EXIT_INFEASIBLE);
        assert!(bad.stderr.contains("opposite parity"), "{}", bad.stderr);
        assert_eq!(call(&["build", "--order", "2"], "").code, EXIT_INVALID);
        assert_eq!(call(&["build", "--order", "x"], "").code, EXIT_INVALID);
    }

    #[test]
    fn perturbed_frame_names_the_line() {
        let frame = call(
            &["build", "--order", "4", "--border-only", "--format", "grid"],
            "",
        )
        .stdout;
        assert_eq!(call(&["verify"], &frame).code, 0);
        let doc = GridDocument::parse(&frame).unwrap();
        let mut cells = doc.cells.clone();
        cells[1] = cells[1].map(|x| x + 1);
        cells[31] = cells[31].map(|x| x - 1);
        let text = GridDocument { cells, ..doc }.render(GridFormat::Grid);
        let out = call(&["verify"], &text);
        assert_eq!(out.code, EXIT_INVALID);
        assert!(out.stdout.contains("top row"), "{}", out.stdout);
    }

    #[test]
    fn enumerate_commands() {
        let none = call(
            &[
                "enumerate",
                "--order",
                "4",
                "--corners",
                "1,3",
                "--count-only",
            ],
            "",
        );
        assert_eq!((none.code, none.stdout.trim()), (0, "0"));
        let one = call(
            &[
                "enumerate",
                "--order",
                "4",
                "--corners",
                "1,2",
                "--limit",
                "1",
            ],
            "",
        );
        assert_eq!(one.code, 0);
        let plan = PlanDocument::parse(one.stdout.trim())
            .unwrap()
            .to_plan()
            .unwrap();
        assert!(verify_border(&plan).valid);
        let tight = call(
            &[
                "enumerate",
                "--order",
                "4",
                "--corners",
                "1,2",
                "--max-nodes",
                "5",
            ],
            "",
        );
        assert_eq!(tight.code, EXIT_BUDGET);
    }

    #[test]
    fn orbit_command() {
        let seed = PlanDocument::from_plan(&crate::corners::seed_order4(1, 2).unwrap()).render();
        let out = call(&["orbit"], &seed);
        assert_eq!(out.code, 0);
        let images: Vec<PlanDocument> = out
            .stdout
            .lines()
            .map(|l| PlanDocument::parse(l).unwrap())
            .collect();
        assert_eq!(images.len(), 8);
        assert_eq!(
            PlanDocument {
                symmetry: None,
                ..images[0].clone()
            }
            .render(),
            seed
        );
        let broken = seed.replace("\"b\":[34", "\"b\":[35");
        assert_ne!(broken, seed);
        assert_eq!(call(&["orbit"], &broken).code, EXIT_INVALID);
    }

    #[test]
    fn tables_check() {
        let out = call(&["tables", "--check", "--m", "8"], "");
        assert_eq!(out.code, 0, "{}", out.stdout);
        assert!(out.stdout.contains("repaired (85 -> 86)"));
        assert!(out.stdout.contains("20/20 pairs served"));
    }
}
