//! Command-line front end.
//!
//! Exit codes: 0 success or match, 1 input error, 2 uncertified or unknown,
//! 3 invariant breach (a valid closed form disagrees with the oracle, or the
//! cycle-extension search was exhausted).

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::degseq::{parse_sequences, DegreeSequence};
use crate::error::Error;
use crate::extension::{extend_cycle, ExtensionContext};
use crate::graph::{CycleWitness, PatternGraph, SimpleGraph};
use crate::sigma::{
    check_longer_cycle_hypotheses, closed_form, records_to_csv, sigma_oracle, longer_cycle_scan,
    verify_lower_bound, CycleParity, HypothesisFailure, HypothesisVerdict, OracleOptions,
    SigmaRecord, SigmaValue,
};
use crate::switchspace::{is_forcibly, is_potentially, Forcible, Potential, SearchBudget};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_UNCERTIFIED: i32 = 2;
pub const EXIT_BREACH: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "potgraph", version, about = "Potentially H-graphic sequences and σ(H, n) thresholds")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct PatternArgs {
    /// Cycle C_K; comma-separated lengths are accepted by `table`.
    #[arg(long, value_delimiter = ',')]
    pub cycle: Option<Vec<usize>>,
    /// Clique K_K.
    #[arg(long, value_delimiter = ',')]
    pub clique: Option<Vec<usize>>,
    /// Matching of P disjoint edges.
    #[arg(long, value_delimiter = ',')]
    pub matching: Option<Vec<usize>>,
}

type PatternCtor = fn(usize) -> Result<PatternGraph, Error>;

impl PatternArgs {
    fn patterns(&self) -> Result<Vec<PatternGraph>, Error> {
        let (sizes, make): (&Vec<usize>, PatternCtor) =
            match (&self.cycle, &self.clique, &self.matching) {
                (Some(s), _, _) => (s, PatternGraph::cycle),
                (_, Some(s), _) => (s, PatternGraph::clique),
                (_, _, Some(s)) => (s, PatternGraph::matching),
                _ => return Err(Error::InvalidInput("a pattern flag is required".into())),
            };
        sizes.iter().map(|&k| make(k)).collect()
    }

    fn single(&self) -> Result<PatternGraph, Error> {
        match self.patterns()?.as_slice() {
            [h] => Ok(*h),
            _ => Err(Error::InvalidInput("exactly one pattern size expected".into())),
        }
    }
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    /// Cap on distinct realizations visited per sequence.
    #[arg(long, default_value_t = SearchBudget::DEFAULT_MAX_STATES)]
    pub max_states: u64,
    /// Cap on 2-switch applications per sequence.
    #[arg(long, default_value_t = SearchBudget::DEFAULT_MAX_MOVES)]
    pub max_moves: u64,
}

impl BudgetArgs {
    fn budget(&self) -> Result<SearchBudget, Error> {
        SearchBudget::new(self.max_states, self.max_moves)
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Graphicality and σ(S) for each sequence.
    Check {
        /// Sequences such as "3,3,1,1" or "8 8 8 3 3 3 3 3 3".
        sequences: Vec<String>,
        /// Read sequences (one per line) from a file.
        #[arg(long)]
        file: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print one realization in the graph text format.
    Realize { sequence: String },
    /// Does some realization contain the pattern?
    Potentially {
        sequence: String,
        #[command(flatten)]
        pattern: PatternArgs,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Write the witness graph here ("-" for stdout).
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Does every realization contain the pattern?
    Forcibly {
        sequence: String,
        #[command(flatten)]
        pattern: PatternArgs,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Brute-force σ(H, n).
    Sigma {
        #[command(flatten)]
        pattern: PatternArgs,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Oracle values next to the closed forms over a range of n.
    Table {
        #[command(flatten)]
        pattern: PatternArgs,
        /// Inclusive range such as 5..8.
        #[arg(long, conflicts_with = "n")]
        n_range: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Extend a k-cycle to a (k+1)-cycle in a same-sequence realization.
    Extend {
        /// Graph text file.
        #[arg(long)]
        graph: PathBuf,
        /// Cycle vertices in order, e.g. "0,1,2,3".
        #[arg(long)]
        cycle: String,
        #[arg(long)]
        x: usize,
        #[arg(long)]
        w: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Certify that the join construction's sequence avoids the target cycle.
    LowerBound {
        #[arg(long)]
        kind: CycleParity,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check the odd-cycle sum bound over all n-term sequences, or decide its
    /// hypotheses for one sequence.
    Hypotheses {
        #[arg(long)]
        m: usize,
        #[arg(long, required_unless_present = "sequence")]
        n: Option<usize>,
        #[arg(long)]
        sequence: Option<String>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

impl clap::ValueEnum for CycleParity {
    fn value_variants<'a>() -> &'a [Self] {
        &[Self::Odd, Self::Even]
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(clap::builder::PossibleValue::new(match self {
            Self::Odd => "odd",
            Self::Even => "even",
        }))
    }
}

/// One sigma-table row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub pattern: PatternGraph,
    pub n: usize,
    pub sigma_oracle: SigmaValue,
    pub sigma_formula: Option<i64>,
    pub valid: bool,
    /// `None` when no comparison applies.
    #[serde(rename = "match")]
    pub matches: Option<bool>,
    pub witness: Option<DegreeSequence>,
    pub sequences_checked: u64,
    pub unknown: u64,
}

impl TableRow {
    pub fn from_record(r: &SigmaRecord) -> Self {
        let formula = closed_form(r.pattern, r.n);
        let matches = match (r.sigma, formula) {
            (SigmaValue::Value(v), Some(f)) if f.valid => Some(v as i64 == f.value),
            _ => None,
        };
        Self {
            pattern: r.pattern,
            n: r.n,
            sigma_oracle: r.sigma,
            sigma_formula: formula.map(|f| f.value),
            valid: formula.is_some_and(|f| f.valid),
            matches,
            witness: r.witness.clone(),
            sequences_checked: r.sequences_checked,
            unknown: r.unknown_count,
        }
    }
}

struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } => EXIT_UNCERTIFIED,
            Error::ExtensionExhausted { .. } => EXIT_BREACH,
            _ => EXIT_INPUT,
        };
        Failure(code, e.to_string())
    }
}

fn io_err(e: std::io::Error) -> Failure {
    Failure(EXIT_INPUT, e.to_string())
}

fn emit(out: &mut dyn Write, path: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(io_err),
        None => out.write_all(text.as_bytes()).map_err(io_err),
    }
}

fn write_witness(out: &mut dyn Write, path: &Option<PathBuf>, g: &SimpleGraph) -> Result<(), Failure> {
    match path {
        Some(p) if p.as_os_str() == "-" => out.write_all(g.to_text().as_bytes()).map_err(io_err),
        Some(p) => fs::write(p, g.to_text()).map_err(io_err),
        None => Ok(()),
    }
}

fn options(budget: &BudgetArgs, jobs: Option<usize>) -> Result<OracleOptions, Failure> {
    let mut opts = OracleOptions {
        budget: budget.budget()?,
        ..OracleOptions::default()
    };
    if let Some(j) = jobs {
        if j == 0 {
            return Err(Failure(EXIT_INPUT, "--jobs must be positive".into()));
        }
        opts.jobs = j;
    }
    Ok(opts)
}

fn parse_range(text: &str) -> Result<Vec<usize>, Failure> {
    let bad = || Failure(EXIT_INPUT, format!("bad range {text:?}; expected A..B"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a..=b).collect())
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn run_check(
    out: &mut dyn Write,
    sequences: &[String],
    file: &Option<PathBuf>,
    output: &OutputArgs,
) -> Result<i32, Failure> {
    let mut all: Vec<DegreeSequence> = Vec::new();
    if let Some(path) = file {
        all.extend(parse_sequences(&fs::read_to_string(path).map_err(io_err)?)?);
    }
    for s in sequences {
        all.push(s.parse()?);
    }
    #[derive(Serialize)]
    struct Line<'a> {
        sequence: &'a DegreeSequence,
        graphical: bool,
        sigma: u64,
    }
    let lines: Vec<Line> = all
        .iter()
        .map(|s| Line { sequence: s, graphical: s.is_graphical(), sigma: s.sigma_sum() })
        .collect();
    let text = match output.format {
        Format::Json => to_json(&lines),
        Format::Csv => {
            let mut t = String::from("sequence,graphical,sigma\n");
            for l in &lines {
                t.push_str(&format!("\"{}\",{},{}\n", l.sequence, l.graphical, l.sigma));
            }
            t
        }
        Format::Text => lines
            .iter()
            .map(|l| {
                format!(
                    "{} {} σ={}\n",
                    l.sequence,
                    if l.graphical { "graphical" } else { "not graphical" },
                    l.sigma
                )
            })
            .collect(),
    };
    emit(out, &output.out, &text)?;
    Ok(EXIT_OK)
}

fn run_table(
    out: &mut dyn Write,
    patterns: &[PatternGraph],
    ns: &[usize],
    opts: &OracleOptions,
    output: &OutputArgs,
) -> Result<i32, Failure> {
    let mut rows = Vec::new();
    for &h in patterns {
        for &n in ns {
            rows.push(TableRow::from_record(&sigma_oracle(h, n, opts)?));
        }
    }
    let fmt_opt = |v: Option<String>| v.unwrap_or_default();
    let text = match output.format {
        Format::Json => to_json(&rows),
        Format::Csv | Format::Text => {
            let sep = if output.format == Format::Csv { "," } else { "\t" };
            let mut t = ["pattern", "n", "sigma_oracle", "sigma_formula", "valid", "match", "unknown"]
                .join(sep);
            t.push('\n');
            for r in &rows {
                let cells = [
                    r.pattern.to_string(),
                    r.n.to_string(),
                    r.sigma_oracle.to_string(),
                    fmt_opt(r.sigma_formula.map(|v| v.to_string())),
                    r.valid.to_string(),
                    fmt_opt(r.matches.map(|v| v.to_string())),
                    r.unknown.to_string(),
                ];
                t.push_str(&cells.join(sep));
                t.push('\n');
            }
            t
        }
    };
    emit(out, &output.out, &text)?;
    if rows.iter().any(|r| r.unknown > 0) {
        return Ok(EXIT_UNCERTIFIED);
    }
    if rows.iter().any(|r| r.matches == Some(false)) {
        return Ok(EXIT_BREACH);
    }
    Ok(EXIT_OK)
}

fn dispatch(cfg: RunConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    match cfg.command {
        Command::Check { sequences, file, output } => run_check(out, &sequences, &file, &output),
        Command::Realize { sequence } => {
            let s: DegreeSequence = sequence.parse()?;
            out.write_all(s.realize()?.to_text().as_bytes()).map_err(io_err)?;
            Ok(EXIT_OK)
        }
        Command::Potentially { sequence, pattern, budget, witness } => {
            let s: DegreeSequence = sequence.parse()?;
            match is_potentially(&s, pattern.single()?, budget.budget()?)? {
                Potential::Yes(g) => {
                    writeln!(out, "yes").map_err(io_err)?;
                    write_witness(out, &witness, &g)?;
                    Ok(EXIT_OK)
                }
                Potential::No => {
                    writeln!(out, "no").map_err(io_err)?;
                    Ok(EXIT_OK)
                }
                Potential::Unknown => {
                    writeln!(out, "unknown").map_err(io_err)?;
                    Ok(EXIT_UNCERTIFIED)
                }
            }
        }
        Command::Forcibly { sequence, pattern, budget, witness } => {
            let s: DegreeSequence = sequence.parse()?;
            match is_forcibly(&s, pattern.single()?, budget.budget()?)? {
                Forcible::Yes => {
                    writeln!(out, "yes").map_err(io_err)?;
                    Ok(EXIT_OK)
                }
                Forcible::No(g) => {
                    writeln!(out, "no").map_err(io_err)?;
                    write_witness(out, &witness, &g)?;
                    Ok(EXIT_OK)
                }
                Forcible::Unknown => {
                    writeln!(out, "unknown").map_err(io_err)?;
                    Ok(EXIT_UNCERTIFIED)
                }
            }
        }
        Command::Sigma { pattern, n, budget, jobs, output } => {
            let opts = options(&budget, jobs)?;
            let record = sigma_oracle(pattern.single()?, n, &opts)?;
            let text = match output.format {
                Format::Json => record.to_json() + "\n",
                Format::Csv => records_to_csv(std::slice::from_ref(&record)),
                Format::Text => format!(
                    "σ({}, {}) = {}\nwitness: {}\nsequences checked: {}\nunknown: {}\n",
                    record.pattern,
                    record.n,
                    record.sigma,
                    record.witness.as_ref().map_or("none".to_string(), |w| w.to_string()),
                    record.sequences_checked,
                    record.unknown_count
                ),
            };
            emit(out, &output.out, &text)?;
            Ok(if record.is_certified() { EXIT_OK } else { EXIT_UNCERTIFIED })
        }
        Command::Table { pattern, n_range, n, budget, jobs, output } => {
            let opts = options(&budget, jobs)?;
            let ns = match (n_range, n) {
                (Some(r), _) => parse_range(&r)?,
                (None, Some(n)) => vec![n],
                (None, None) => return Err(Failure(EXIT_INPUT, "--n or --n-range is required".into())),
            };
            run_table(out, &pattern.patterns()?, &ns, &opts, &output)
        }
        Command::Extend { graph, cycle, x, w, budget } => {
            let g = SimpleGraph::parse_text(&fs::read_to_string(&graph).map_err(io_err)?)?;
            let vertices = cycle
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| Error::InvalidInput(format!("bad vertex {t:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let ctx = ExtensionContext::new(g, CycleWitness::new(vertices)?, x, w)?;
            let ext = extend_cycle(&ctx, budget.budget()?)?;
            let cyc: Vec<String> = ext.cycle.vertices().iter().map(usize::to_string).collect();
            write!(out, "{}", ext.graph.to_text()).map_err(io_err)?;
            writeln!(out, "# cycle {}", cyc.join(",")).map_err(io_err)?;
            writeln!(out, "# strategy {:?}", ext.strategy).map_err(io_err)?;
            Ok(EXIT_OK)
        }
        Command::LowerBound { kind, m, n, budget, output } => {
            let report = verify_lower_bound(kind, m, n, budget.budget()?)?;
            let text = match output.format {
                Format::Json | Format::Csv => to_json(&report),
                Format::Text => format!(
                    "{:?} m={} n={} target {}: sequence {} σ={} threshold={} realizations={} containing={} certified={}\n",
                    report.kind, report.m, report.n, report.target, report.sequence,
                    report.sequence_sum, report.threshold, report.realizations,
                    report.containing, report.certified
                ),
            };
            emit(out, &output.out, &text)?;
            Ok(if report.certified { EXIT_OK } else { EXIT_UNCERTIFIED })
        }
        Command::Hypotheses { m, n, sequence, budget, jobs, output } => {
            let opts = options(&budget, jobs)?;
            if let Some(seq) = sequence {
                let s: DegreeSequence = seq.parse()?;
                let verdict = check_longer_cycle_hypotheses(&s, m, opts.budget)?;
                let line = match &verdict {
                    HypothesisVerdict::Holds { cycle, .. } => format!("holds (cycle {:?})", cycle.vertices()),
                    HypothesisVerdict::Fails(HypothesisFailure::NoQualifyingCycle) => {
                        "fails: no qualifying odd cycle".to_string()
                    }
                    HypothesisVerdict::Fails(HypothesisFailure::LongerCycle(_)) => {
                        "fails: a realization has the longer cycle".to_string()
                    }
                    HypothesisVerdict::Unknown => "unknown".to_string(),
                };
                emit(out, &output.out, &format!("{s} {line}\n"))?;
                return Ok(if verdict == HypothesisVerdict::Unknown { EXIT_UNCERTIFIED } else { EXIT_OK });
            }
            let n = n.expect("clap requires n without sequence");
            let scan = longer_cycle_scan(m, n, &opts)?;
            let text = match output.format {
                Format::Json | Format::Csv => to_json(&scan),
                Format::Text => format!(
                    "m={} n={} bound={} examined={} in_scope={}{} unknown={} violations={}\n",
                    scan.m,
                    scan.n,
                    scan.bound,
                    scan.sequences_examined,
                    scan.in_scope,
                    if scan.is_vacuous() { " (vacuous)" } else { "" },
                    scan.unknown,
                    scan.violations.len()
                ),
            };
            emit(out, &output.out, &text)?;
            Ok(if !scan.violations.is_empty() {
                EXIT_BREACH
            } else if scan.unknown > 0 {
                EXIT_UNCERTIFIED
            } else {
                EXIT_OK
            })
        }
    }
}

/// Parses `args` (including the program name) and runs the command, writing
/// reports to `out` and diagnostics to stderr. Returns the exit code.
pub fn run_with<I, S>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cfg, out) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            code
        }
    }
}
