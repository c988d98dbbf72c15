//! `axlab` subcommands.
//!
//! Exit codes: 0 success, 1 mismatch or countersatisfiable goal, 2 usage
//! error, 3 a bound was exhausted without a verdict.

use std::ffi::OsString;
use std::io::{IsTerminal, Write};
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use axlab_core::corpus::{axiom, get_definition, get_system, signed_set, SignPattern, SYSTEM_NAMES};
use axlab_core::experiments::{run_experiment, Config, ExperimentReport, EXPERIMENTS};
use axlab_core::finder::{find_model, independence_scan_with, minimal_model_size, SizeVerdict, DEFAULT_CAP};
use axlab_core::formula::Formula;
use axlab_core::prover::{entails, export_tptp, needed_axioms, EntailmentVerdict, Limits, Need, Premise};
use axlab_core::Error;
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::pool::Threaded;
use crate::report::{self, exit_code, minimality_json, model_inline, model_json, model_text, verdict_json, Format};

#[derive(Debug, Parser)]
#[command(name = "axlab", version, about = "Model finding and entailment checks for betweenness axiom systems")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Search for a model of a signed system with exactly N elements.
    FindModel {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        size: usize,
    },
    /// Least size of a model of a signed system.
    MinModel {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Minimal model size for every sign pattern of a system.
    Independence {
        #[arg(long)]
        system: String,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Decide whether the premises entail the goal.
    Derive {
        #[command(flatten)]
        obligation: Obligation,
        #[command(flatten)]
        limits: LimitArgs,
        /// Shrink the reported premise core by deletion.
        #[arg(long)]
        minimize: bool,
    },
    /// For each premise, whether the goal still follows without it.
    Needed {
        #[command(flatten)]
        obligation: Obligation,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Run named experiments against their expected results.
    Reproduce {
        #[arg(value_parser = ["table1", "table2", "table3", "equivalence", "separation", "all"])]
        experiment: String,
        /// Write one file per experiment and a summary into DIR.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include wall-clock timings in the output.
        #[arg(long)]
        timing: bool,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Write an obligation as a TPTP problem.
    ExportTptp {
        #[command(flatten)]
        obligation: Obligation,
        /// Destination file (default: standard output).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct Target {
    #[arg(long)]
    system: String,
    /// Holds/fails marks in axiom order, e.g. "-++-+" (default: all hold).
    #[arg(long, allow_hyphen_values = true)]
    pattern: Option<String>,
    /// Extra sentences to add, e.g. hyp.nontrivial.
    #[arg(long = "with", value_delimiter = ',')]
    with: Vec<String>,
}

#[derive(Debug, Args)]
struct Obligation {
    /// Comma-separated systems, axioms and definitions.
    #[arg(long, value_delimiter = ',', required = true)]
    premises: Vec<String>,
    #[arg(long)]
    goal: String,
    /// Premises to drop after expansion.
    #[arg(long, value_delimiter = ',')]
    without: Vec<String>,
}

#[derive(Debug, Args)]
struct LimitArgs {
    #[arg(long, default_value_t = Limits::default().depth_cap)]
    depth_cap: usize,
    #[arg(long, default_value_t = Limits::default().size_cap)]
    size_cap: usize,
}

impl LimitArgs {
    fn limits(&self, minimize: bool) -> Limits {
        Limits { depth_cap: self.depth_cap, size_cap: self.size_cap, minimize }
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let code = match e.downcast_ref::<Error>() {
                Some(Error::GoalNotDerivable(_)) => 1,
                _ => 2,
            };
            eprintln!("error: {e:#} (see `axlab --help`)");
            code
        }
    }
}

fn color() -> bool {
    std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty()) && std::io::stdout().is_terminal()
}

fn pool(cli: &Cli) -> Threaded {
    cli.jobs.map_or_else(Threaded::available, Threaded::new)
}

/// A system, axiom, definition or hypothesis name, expanded to premises.
fn expand(name: &str) -> anyhow::Result<Vec<Premise>> {
    if SYSTEM_NAMES.contains(&name) {
        let s = get_system(name)?;
        return Ok(s.axioms.iter().map(|a| Premise::new(&a.name, a.formula.clone())).collect());
    }
    if let Ok(a) = axiom(name) {
        return Ok(vec![Premise::new(&a.name, a.formula)]);
    }
    let f = get_definition(name).map_err(|_| anyhow!("unknown system, axiom or definition `{name}`"))?;
    Ok(vec![Premise::new(name, f)])
}

fn sentence(name: &str) -> anyhow::Result<Formula> {
    match expand(name)?.as_slice() {
        [one] => Ok(one.formula.clone()),
        _ => bail!("`{name}` names a system; give a single axiom"),
    }
}

fn resolve(ob: &Obligation) -> anyhow::Result<(Vec<Premise>, Formula)> {
    let mut premises: Vec<Premise> = Vec::new();
    for name in &ob.premises {
        for p in expand(name.trim())? {
            if !premises.iter().any(|q| q.name == p.name) {
                premises.push(p);
            }
        }
    }
    for name in &ob.without {
        let before = premises.len();
        let name = name.trim();
        premises.retain(|p| p.name != name && p.name.rsplit('.').next() != Some(name));
        if premises.len() == before {
            bail!("--without `{name}` matches no premise");
        }
    }
    Ok((premises, sentence(&ob.goal)?))
}

fn target_formulas(t: &Target) -> anyhow::Result<(Vec<Formula>, Option<SignPattern>)> {
    let system = get_system(&t.system)?;
    let pattern = match &t.pattern {
        Some(p) => p.parse::<SignPattern>()?,
        None => SignPattern::all_holds(system.len()),
    };
    let mut fs = signed_set(&system, &pattern)?;
    for name in &t.with {
        fs.push(sentence(name.trim())?);
    }
    Ok((fs, Some(pattern)))
}

fn write_verdict(out: &mut dyn Write, format: Format, v: &EntailmentVerdict) -> anyhow::Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&verdict_json(v))?)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["verdict", "detail"])?;
            match v {
                EntailmentVerdict::Proved(p) => w.write_record(["proved", &p.used.join(" ")])?,
                EntailmentVerdict::Countermodel(m) => w.write_record(["countermodel", &model_inline(m)])?,
                EntailmentVerdict::Unknown { .. } => w.write_record(["unknown", ""])?,
            }
            out.write_all(&w.into_inner()?)?;
        }
        Format::Text => match v {
            EntailmentVerdict::Proved(p) => {
                writeln!(out, "proved")?;
                writeln!(out, "uses: {}", if p.used.is_empty() { "(nothing)".to_string() } else { p.used.join(", ") })?;
                if !p.goal_used {
                    writeln!(out, "note: the premises are inconsistent")?;
                }
            }
            EntailmentVerdict::Countermodel(m) => {
                writeln!(out, "countermodel")?;
                write!(out, "{}", model_text(m))?;
            }
            EntailmentVerdict::Unknown { depth_cap, size_cap } => {
                writeln!(out, "unknown (depth cap {depth_cap}, size cap {size_cap})")?;
            }
        },
    }
    Ok(())
}

fn verdict_code(v: &EntailmentVerdict) -> i32 {
    match v {
        EntailmentVerdict::Proved(_) => 0,
        EntailmentVerdict::Countermodel(_) => 1,
        EntailmentVerdict::Unknown { .. } => 3,
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> anyhow::Result<i32> {
    let format = cli.format;
    match &cli.command {
        Command::FindModel { target, size } => {
            if *size == 0 {
                bail!("--size must be at least 1");
            }
            let (fs, _) = target_formulas(target)?;
            let verdict = find_model(&fs, *size)?;
            match (format, &verdict) {
                (Format::Json, _) => {
                    let v = json!({ "size": size, "model": verdict.model().map(model_json) });
                    writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
                }
                (_, SizeVerdict::Satisfiable(m)) => write!(out, "{}", model_text(m))?,
                (_, SizeVerdict::Unsatisfiable) => writeln!(out, "unsatisfiable at size {size}")?,
            }
            Ok(0)
        }
        Command::MinModel { target, cap } => {
            let (fs, pattern) = target_formulas(target)?;
            let mut r = minimal_model_size(&fs, (*cap).max(1))?;
            r.pattern = pattern;
            match format {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&minimality_json(&r))?)?,
                _ => match (&r.size, &r.witness) {
                    (Some(n), Some(w)) => {
                        writeln!(out, "{n}")?;
                        write!(out, "{}", model_text(w))?;
                    }
                    _ => writeln!(out, "none up to {}", r.cap)?,
                },
            }
            Ok(if r.size.is_some() { 0 } else { 3 })
        }
        Command::Independence { system, cap } => {
            let system = get_system(system)?;
            let scan = independence_scan_with(&system, (*cap).max(1), &pool(cli))?;
            match format {
                Format::Json => {
                    let v: Vec<_> = scan.iter().map(minimality_json).collect();
                    writeln!(out, "{}", serde_json::to_string_pretty(&json!({ "system": system.name, "patterns": v }))?)?;
                }
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(["pattern", "minimal_cardinality", "witness"])?;
                    for r in &scan {
                        w.write_record([
                            r.pattern.as_ref().map(|p| p.to_string()).unwrap_or_default(),
                            r.size.map(|n| n.to_string()).unwrap_or_default(),
                            r.witness.as_ref().map(model_inline).unwrap_or_default(),
                        ])?;
                    }
                    out.write_all(&w.into_inner()?)?;
                }
                Format::Text => {
                    let names: Vec<&str> = system.axioms.iter().map(|a| a.short_name()).collect();
                    writeln!(out, "{} | min | witness", names.join(" "))?;
                    for r in &scan {
                        let marks: Vec<String> =
                            r.pattern.as_ref().map(|p| p.to_string().chars().map(String::from).collect()).unwrap_or_default();
                        let size = r.size.map_or_else(|| format!(">{}", r.cap), |n| n.to_string());
                        let witness = r.witness.as_ref().map(model_inline).unwrap_or_default();
                        writeln!(out, "{} | {size:>3} | {witness}", marks.join(" "))?;
                    }
                    let found = scan.iter().filter(|r| r.size.is_some()).count();
                    writeln!(out, "{found} of {} patterns satisfiable within {cap} elements", scan.len())?;
                }
            }
            Ok(if scan.iter().all(|r| r.size.is_some()) { 0 } else { 3 })
        }
        Command::Derive { obligation, limits, minimize } => {
            let (premises, goal) = resolve(obligation)?;
            let v = entails(&premises, &goal, &limits.limits(*minimize))?;
            write_verdict(out, format, &v)?;
            Ok(verdict_code(&v))
        }
        Command::Needed { obligation, limits } => {
            let (premises, goal) = resolve(obligation)?;
            let verdicts = needed_axioms(&premises, &goal, &limits.limits(false))?;
            match format {
                Format::Json => {
                    let v: Vec<_> = verdicts
                        .iter()
                        .map(|(name, need)| match need {
                            Need::Needed(m) => json!({ "premise": name, "needed": "yes", "countermodel": model_json(m) }),
                            Need::NotNeeded => json!({ "premise": name, "needed": "no" }),
                            Need::Unknown => json!({ "premise": name, "needed": "unknown" }),
                        })
                        .collect();
                    writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
                }
                _ => {
                    for (name, need) in &verdicts {
                        match need {
                            Need::Needed(m) => writeln!(out, "{name}: yes (countermodel {})", model_inline(m))?,
                            Need::NotNeeded => writeln!(out, "{name}: no")?,
                            Need::Unknown => writeln!(out, "{name}: unknown")?,
                        }
                    }
                }
            }
            Ok(if verdicts.iter().any(|(_, n)| *n == Need::Unknown) { 3 } else { 0 })
        }
        Command::Reproduce { experiment, out: dir, timing, cap } => {
            let names: Vec<&str> = if experiment == "all" { EXPERIMENTS.to_vec() } else { vec![experiment.as_str()] };
            let config = Config { cap: (*cap).max(1), ..Config::default() };
            let pool = pool(cli);
            let mut reports: Vec<ExperimentReport> = Vec::new();
            for name in names {
                let start = Instant::now();
                let mut r = run_experiment(name, &pool, &config)?;
                r.elapsed_ms = Some(start.elapsed().as_millis() as u64);
                reports.push(r);
            }
            let color = color() && dir.is_none();
            let shown: Vec<ExperimentReport> = reports
                .iter()
                .cloned()
                .map(|mut r| {
                    if !*timing {
                        r.elapsed_ms = None;
                    }
                    r
                })
                .collect();
            match dir {
                Some(dir) => {
                    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                    for r in &shown {
                        let path = dir.join(format!("{}.{}", r.name, format.extension()));
                        std::fs::write(&path, report::render(r, format, false, *timing))
                            .with_context(|| format!("writing {}", path.display()))?;
                    }
                    let path = dir.join(format!("summary.{}", format.extension()));
                    std::fs::write(&path, report::summary(&reports, format, *timing))?;
                    write!(out, "{}", report::summary(&reports, Format::Text, *timing))?;
                }
                None => {
                    for r in &shown {
                        write!(out, "{}", report::render(r, format, color, *timing))?;
                    }
                    if reports.len() > 1 && format == Format::Text {
                        write!(out, "{}", report::summary(&reports, Format::Text, *timing))?;
                    }
                }
            }
            Ok(exit_code(&reports))
        }
        Command::ExportTptp { obligation, out: path } => {
            let (premises, goal) = resolve(obligation)?;
            let text = export_tptp(&premises, &obligation.goal, &goal);
            match path {
                Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
                None => write!(out, "{text}")?,
            }
            Ok(0)
        }
    }
}
