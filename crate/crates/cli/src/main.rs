use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use repsens::factor::*;
use repsens::measures::{delta, is_attractor, smallest_attractor_with_limit, smallest_bms_with_limit, AttractorSet};
use repsens::repair::{attractor_repair, bms_repair, lzend_repair, RepairReport};
use repsens::sensitivity::{
    exhaustive_sensitivity, growth_fit, random_sensitivity, sensitivity_of_string, witness_record, write_csv, Measure,
    SensitivityRecord,
};
use repsens::witness::{Expected, Family};
use repsens::{Edit, EditKind, Exec, Factorization, Flavor, Limits, SymbolString};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(version, about = "Repetitiveness measures, LZ factorizations and their sensitivity to single edits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a string and print the factorization text form
    Factorize {
        #[command(flatten)]
        input: InputArgs,
        /// lzss-overlap, lzss-nonoverlap, lz77-overlap, lz77-nonoverlap, lzend, lzend-opt or lz78
        #[arg(long)]
        flavor: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute one measure of a string
    Measure {
        #[command(flatten)]
        input: InputArgs,
        /// A factorizer name, delta, attractor-min, bms-min or is-attractor
        #[arg(long)]
        what: String,
        /// Positions for is-attractor, e.g. "5 7"
        #[arg(long)]
        positions: Option<String>,
        /// Also print the attractor or scheme found
        #[arg(long)]
        show: bool,
    },
    /// Repair an attractor, macro scheme or LZ-End parsing after one edit
    Repair {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum)]
        procedure: Procedure,
        /// sub:I:SYM, ins:I:SYM or del:I
        #[arg(long)]
        edit: String,
        /// Attractor positions; the smallest attractor when omitted
        #[arg(long)]
        positions: Option<String>,
        /// Scheme or parsing in factorization text form; a greedy parse when omitted
        #[arg(long)]
        structure: Option<PathBuf>,
        /// Print the case-by-case phrase ledger
        #[arg(long)]
        trace: bool,
        /// Where to write the repaired structure
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a lower-bound witness string and its edited variants
    Witness {
        /// lz or lz78
        #[arg(long)]
        family: Family,
        #[arg(long)]
        p: usize,
        /// Print symbol names instead of numbers
        #[arg(long)]
        render: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        /// JSON-lines file with expected counts and the symbol table
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Worst-case sensitivity of a measure, written as CSV
    Sensitivity(SensitivityArgs),
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Inline string
    #[arg(long, conflicts_with = "input")]
    text: Option<String>,
    /// File holding the string
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Bytes)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Format {
    /// One symbol per byte
    Bytes,
    /// Whitespace-separated decimal symbols, first non-empty line
    Symbolic,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Procedure {
    Attractor,
    Bms,
    Lzend,
}

#[derive(Args, Debug)]
struct SensitivityArgs {
    #[arg(long)]
    measure: Measure,
    /// Measure of the unedited string, for witness gaps such as lzss-overlap against lzend
    #[arg(long)]
    baseline: Option<Measure>,
    /// sub, ins, del or all
    #[arg(long, default_value = "all")]
    edit: String,
    /// Every string of length --n over --sigma symbols
    #[arg(long, requires_all = ["n", "sigma"], conflicts_with_all = ["samples", "family"])]
    exhaustive: bool,
    /// Random strings of length --n over --sigma symbols
    #[arg(long, requires_all = ["n", "sigma"], conflicts_with = "family")]
    samples: Option<usize>,
    /// Witness family; --p takes a number, a list "3,5,8" or a range "3..12"
    #[arg(long, requires = "p")]
    family: Option<Family>,
    #[arg(long)]
    p: Option<String>,
    /// Lengths: a number, a list or a range
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    sigma: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads; 1 runs sequentially
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print a log-log growth fit to stderr when there are enough rows
    #[arg(long)]
    fit: bool,
    #[command(flatten)]
    input: OptionalInput,
}

#[derive(Args, Debug)]
struct OptionalInput {
    /// Single string to analyse
    #[arg(long, conflicts_with = "input")]
    text: Option<String>,
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Bytes)]
    format: Format,
}

fn read_text(text: Option<&str>, path: Option<&Path>, format: Format) -> Result<SymbolString> {
    let raw = match (text, path) {
        (Some(t), _) => t.as_bytes().to_vec(),
        (None, Some(p)) => fs::read(p).with_context(|| format!("reading {}", p.display()))?,
        (None, None) => bail!("give the string with --text or --input"),
    };
    Ok(match format {
        Format::Bytes => SymbolString::from_bytes(&raw),
        Format::Symbolic => {
            let s = String::from_utf8(raw).context("symbolic input must be UTF-8")?;
            let line = s.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
            SymbolString::parse_symbolic(line)?
        }
    })
}

impl InputArgs {
    fn load(&self) -> Result<SymbolString> {
        read_text(self.text.as_deref(), self.input.as_deref(), self.format)
    }
}

/// Writes to `out`, or stdout when absent.
fn emit(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, content).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn factorizer(name: &str) -> Result<fn(&SymbolString, &Limits) -> repsens::Result<Factorization>> {
    Ok(match name {
        "lzss-overlap" => |t, _| lzss_overlapping(t),
        "lzss-nonoverlap" => |t, _| lzss_nonoverlapping(t),
        "lz77-overlap" => |t, _| lz77_overlapping(t),
        "lz77-nonoverlap" => |t, _| lz77_nonoverlapping(t),
        "lzend" => |t, _| lz_end_greedy(t),
        "lzend-opt" => |t, l| lz_end_optimal_with_limit(t, l.lzend_opt),
        "lz78" => |t, _| lz78(t),
        _ => bail!("unknown flavor {name:?}"),
    })
}

fn cmd_factorize(input: &InputArgs, flavor: &str, out: Option<&Path>) -> Result<()> {
    let parse = factorizer(flavor)?;
    let text = input.load()?;
    let f = parse(&text, &Limits::from_env())?;
    emit(out, &format!("{}phrases {}\n", f.to_text(), f.count()))
}

fn cmd_measure(input: &InputArgs, what: &str, positions: Option<&str>, show: bool) -> Result<()> {
    let text = input.load()?;
    let limits = Limits::from_env();
    match what {
        "delta" => println!("{}", delta(&text)?),
        "attractor-min" | "gamma" => {
            let g = smallest_attractor_with_limit(&text, limits.attractor)?;
            println!("{}", g.len());
            if show {
                println!("{g}");
            }
        }
        "bms-min" | "bms" => {
            let s = smallest_bms_with_limit(&text, limits.bms)?;
            println!("{}", s.count());
            if show {
                print!("{}", s.to_text());
            }
        }
        "is-attractor" => {
            let g: AttractorSet = positions.context("is-attractor needs --positions")?.parse()?;
            println!("{}", is_attractor(&text, &g));
        }
        name => {
            let f = factorizer(name)?(&text, &limits)?;
            println!("{}", f.count());
            if show {
                print!("{}", f.to_text());
            }
        }
    }
    Ok(())
}

fn load_structure(path: &Path, flavor: Flavor) -> Result<Factorization> {
    let s = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let f = Factorization::parse_text(&s)?;
    Ok(if f.flavor == flavor { f } else { f.reinterpret(flavor) })
}

#[allow(clippy::too_many_arguments)]
fn cmd_repair(
    input: &InputArgs,
    procedure: Procedure,
    edit: &str,
    positions: Option<&str>,
    structure: Option<&Path>,
    trace: bool,
    out: Option<&Path>,
) -> Result<()> {
    let text = input.load()?;
    let edit: Edit = edit.parse()?;
    let limits = Limits::from_env();
    let (report, repaired): (RepairReport, String) = match procedure {
        Procedure::Attractor => {
            let g = match positions {
                Some(p) => p.parse()?,
                None => smallest_attractor_with_limit(&text, limits.attractor)?,
            };
            let r = attractor_repair(&text, &g, &edit)?;
            (r.report, format!("{}\n", r.output))
        }
        Procedure::Bms => {
            let scheme = match structure {
                Some(p) => load_structure(p, Flavor::Bms)?,
                None => lzss_overlapping(&text)?.reinterpret(Flavor::Bms),
            };
            let r = bms_repair(&text, &scheme, &edit)?;
            (r.report, r.output.to_text())
        }
        Procedure::Lzend => {
            let parsing = match structure {
                Some(p) => load_structure(p, Flavor::LzEnd)?,
                None => lz_end_greedy(&text)?,
            };
            let r = lzend_repair(&text, &parsing, &edit)?;
            (r.report, r.output.to_text())
        }
    };
    let mut shown = format!("{}\n{}", RepairReport::CSV_HEADER, report.csv_row());
    if trace {
        for line in report.trace_lines() {
            shown.push_str(&line);
            shown.push('\n');
        }
    }
    if let Some(p) = out {
        emit(Some(p), &repaired)?;
    }
    emit(None, &shown)
}

fn cmd_witness(family: Family, p: usize, render: bool, out: Option<&Path>, sidecar: Option<&Path>) -> Result<()> {
    let w = family.build(p)?;
    let show = |s: &SymbolString| if render { w.render(s) } else { s.to_symbolic() };
    let mut lines = vec![show(&w.base)];
    for (_, t2) in w.edited.values() {
        lines.push(show(t2));
    }
    emit(out, &(lines.join("\n") + "\n"))?;
    if let Some(path) = sidecar {
        let mut exact = serde_json::Map::new();
        let mut at_least = serde_json::Map::new();
        for (name, e) in &w.expected {
            match e {
                Expected::Exact(v) => exact.insert(name.clone(), json!(v)),
                Expected::AtLeast(v) => at_least.insert(name.clone(), json!(v)),
            };
        }
        let edits: BTreeMap<String, String> =
            w.edited.iter().map(|(k, (e, _))| (k.name().to_string(), e.to_string())).collect();
        let sidecar_lines = [
            json!({"family": family.name(), "p": p, "n": w.n(), "lines": ["T", "sub", "ins", "del"]}),
            json!({"expected": exact}),
            json!({"at_least": at_least}),
            json!({"edits": edits}),
            json!({"symbols": w.symbols}),
        ];
        let body: Vec<String> = sidecar_lines.iter().map(|v| v.to_string()).collect();
        emit(Some(path), &(body.join("\n") + "\n"))?;
    }
    Ok(())
}

/// `7`, `3,5,8` or `3..12` (inclusive).
fn parse_values(s: &str) -> Result<Vec<usize>> {
    if let Some((a, b)) = s.split_once("..") {
        let (a, b): (usize, usize) = (a.trim().parse()?, b.trim().parse()?);
        if a > b {
            bail!("empty range {s:?}");
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|v| v.trim().parse::<usize>().with_context(|| format!("bad value {v:?}"))).collect()
}

fn edit_kinds(s: &str) -> Result<Vec<EditKind>> {
    if s == "all" {
        return Ok(EditKind::ALL.to_vec());
    }
    Ok(vec![s.parse()?])
}

fn cmd_sensitivity(a: &SensitivityArgs) -> Result<()> {
    let limits = Limits::from_env();
    let exec = match a.jobs {
        Some(0) => bail!("--jobs must be at least 1"),
        Some(1) => Exec::Sequential,
        Some(_j) => {
            #[cfg(feature = "parallel")]
            rayon::ThreadPoolBuilder::new().num_threads(_j).build_global().context("starting worker threads")?;
            Exec::Parallel
        }
        None => Exec::Parallel,
    };
    let kinds = edit_kinds(&a.edit)?;
    let mut records: Vec<SensitivityRecord> = Vec::new();
    if let Some(family) = a.family {
        for p in parse_values(a.p.as_deref().unwrap_or_default())? {
            let w = family.build(p)?;
            for &kind in &kinds {
                records.push(witness_record(&w, a.measure, a.baseline, kind, &limits)?);
            }
        }
    } else if a.exhaustive || a.samples.is_some() {
        let sigma = a.sigma.context("--sigma is required")?;
        for n in parse_values(a.n.as_deref().unwrap_or_default())? {
            for &kind in &kinds {
                records.push(match a.samples {
                    Some(k) => random_sensitivity(a.measure, n, sigma, kind, k, a.seed, exec, &limits)?,
                    None => exhaustive_sensitivity(a.measure, n, sigma, kind, exec, &limits)?,
                });
            }
        }
    } else {
        let text = read_text(a.input.text.as_deref(), a.input.input.as_deref(), a.input.format)?;
        for &kind in &kinds {
            records.push(sensitivity_of_string(a.measure, &text, kind, &text.alphabet(), &limits)?);
        }
    }
    let mut buf = Vec::new();
    write_csv(&mut buf, &records)?;
    emit(a.out.as_deref(), &String::from_utf8(buf)?)?;
    if a.fit {
        for &kind in &kinds {
            let rows: Vec<SensitivityRecord> = records.iter().filter(|r| r.kind == kind).cloned().collect();
            match growth_fit(&rows) {
                Ok(f) => eprintln!("{kind}: slope {:.4} intercept {:.4} residual {:.4} over {} points", f.slope, f.intercept, f.residual, f.points),
                Err(e) => eprintln!("{kind}: no fit ({e})"),
            }
        }
    }
    Ok(())
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Factorize { input, flavor, out } => cmd_factorize(input, flavor, out.as_deref()),
        Command::Measure { input, what, positions, show } => cmd_measure(input, what, positions.as_deref(), *show),
        Command::Repair { input, procedure, edit, positions, structure, trace, out } => {
            cmd_repair(input, *procedure, edit, positions.as_deref(), structure.as_deref(), *trace, out.as_deref())
        }
        Command::Witness { family, p, render, out, sidecar } => {
            cmd_witness(*family, *p, *render, out.as_deref(), sidecar.as_deref())
        }
        Command::Sensitivity(args) => cmd_sensitivity(args),
    }
}
