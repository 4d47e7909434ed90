//! `periodsets`: enumerate, certify, realize and analyse period sets.
//!
//! Exit status is 0 on success, 1 for a negative answer (INVALID, EPSILON,
//! a failed verification) and 2 for usage or input format errors.

mod plot;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use periodsets::certify::{certify_lothaire, certify_rules, CertResult};
use periodsets::fate::{annotate_gamma_file, build_parental_tree, classify_fate, FateRecord};
use periodsets::format::{gamma_file_name, parse_list, write_gamma, GammaReader};
use periodsets::gamma::{enumerate_range, with_jobs, Certifier, GammaStats};
use periodsets::oracle::{brute_force_gamma, population_report, verify_gamma_file, VerifyMode};
use periodsets::realize::{binary_realize, certify_constructive, multi_symbol_realize};
use periodsets::PeriodSet;

#[derive(Parser)]
#[command(name = "periodsets", version, about = "Period sets of strings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write n.gamma files for every length up to --to.
    Enum {
        #[arg(long)]
        to: usize,
        #[arg(long)]
        out: PathBuf,
        /// Resume from the highest n.gamma found here.
        #[arg(long)]
        from_dir: Option<PathBuf>,
        #[arg(long, default_value = "pair")]
        certifier: Certifier,
        /// Worker threads; 0 uses every core.
        #[arg(long, env = "PERIODSETS_JOBS", default_value_t = 0)]
        jobs: usize,
    },
    /// Decide whether a set is a period set at length n.
    Certify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        set: String,
        #[arg(long, value_enum, default_value_t = Method::Rules)]
        method: Method,
    },
    /// Build a witness word, or report EPSILON.
    Realize {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        set: String,
        /// Print the construction table.
        #[arg(long)]
        trace: bool,
        /// Use a fresh symbol wherever the construction allows one.
        #[arg(long)]
        multi: bool,
    },
    /// Birth, next extension and death length of a set, or of every set in a file.
    Fate {
        #[arg(long, conflicts_with = "input", required_unless_present = "input")]
        set: Option<String>,
        /// Classify the set at this length.
        #[arg(long, requires = "set")]
        at: Option<usize>,
        /// Annotate every set of a .gamma file as CSV.
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
        #[arg(long, requires = "input")]
        csv: Option<PathBuf>,
    },
    /// Histogram of a .gamma file by basic period or weight.
    Stats {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = By::BasicPeriod)]
        by: By,
        /// Write CSV here instead of stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write an SVG bar chart.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Γn by brute force over all words.
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        alphabet: u32,
        /// Lift the length guard.
        #[arg(long)]
        force: bool,
        /// Print how many words share each period set instead.
        #[arg(long)]
        population: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a .gamma file.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Oracle)]
        mode: Mode,
        /// Γ(n-1) file for the projection check; defaults to (n-1).gamma next to the input.
        #[arg(long)]
        prev: Option<PathBuf>,
    },
    /// Export the parental tree up to length --to as DOT.
    Tree {
        #[arg(long)]
        to: usize,
        #[arg(long)]
        dot: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Rules,
    Lothaire,
    Constructive,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum By {
    BasicPeriod,
    Weight,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Oracle,
    Witness,
}

/// Parses a set literal, sorting it if needed.
fn parse_set(text: &str) -> Result<Vec<usize>> {
    let raw = parse_list(text).map_err(anyhow::Error::msg)?;
    let mut set = raw.clone();
    set.sort_unstable();
    set.dedup();
    if set != raw {
        let shown: Vec<String> = set.iter().map(usize::to_string).collect();
        eprintln!("warning: set normalized to {}", shown.join(","));
    }
    Ok(set)
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let f = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    Ok(BufWriter::new(f))
}

fn verdict(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Enum { to, out, from_dir, certifier, jobs } => {
            if to == 0 {
                bail!("--to must be at least 1");
            }
            let stdout = io::stdout();
            with_jobs(jobs, || {
                enumerate_range(to, &out, from_dir.as_deref(), certifier, |s| {
                    let mut lock = stdout.lock();
                    // a closed stdout must not abort the enumeration
                    let _ = writeln!(lock, "n={} kappa={} dying={}", s.n, s.kappa, s.dying);
                })
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Certify { n, set, method } => {
            let set = parse_set(&set)?;
            PeriodSet::new(n, set.clone())?;
            let res: CertResult = match method {
                Method::Rules => certify_rules(&set, n),
                Method::Lothaire => certify_lothaire(&set, n),
                Method::Constructive => certify_constructive(n, &set)?.0,
            };
            println!("{res}");
            Ok(verdict(res.is_valid()))
        }
        Command::Realize { n, set, trace, multi } => {
            let set = parse_set(&set)?;
            let r = binary_realize(n, &set)?;
            if trace {
                print!("{}", r.trace.render());
            }
            let word = if multi { multi_symbol_realize(n, &set)? } else { r.word };
            if word.is_empty() {
                println!("EPSILON");
                return Ok(ExitCode::from(1));
            }
            println!("{word}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Fate { set, at, input, csv } => {
            if let Some(path) = input {
                let rows = match csv {
                    Some(p) => annotate_gamma_file(&path, create(&p)?)?,
                    None => annotate_gamma_file(&path, io::stdout().lock())?,
                };
                eprintln!("{rows} sets annotated");
                return Ok(ExitCode::SUCCESS);
            }
            let periods = parse_set(set.as_deref().unwrap_or_default())?;
            let rec = FateRecord::from_periods(&periods)?;
            if !certify_rules(rec.set.periods(), rec.birth).is_valid() {
                eprintln!("warning: {} is not a period set at length {}", rec.set, rec.birth);
            }
            println!("{rec}");
            if let Some(n) = at {
                println!("n={n} fate={}", classify_fate(&rec.set, n));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Stats { input, by, csv, plot } => {
            let mut stats = GammaStats::default();
            let reader = GammaReader::open(&input, true)?;
            let n = reader.n();
            for set in reader {
                stats.add(&set?);
            }
            let (label, hist) = match by {
                By::BasicPeriod => ("basic_period", &stats.by_basic_period),
                By::Weight => ("weight", &stats.by_weight),
            };
            let write = |mut out: Box<dyn Write>| -> io::Result<()> {
                writeln!(out, "{label},count")?;
                for (k, c) in hist {
                    writeln!(out, "{k},{c}")?;
                }
                out.flush()
            };
            match &csv {
                Some(p) => write(Box::new(create(p)?)),
                None => write(Box::new(io::stdout().lock())),
            }
            .context("writing CSV")?;
            if let Some(p) = plot {
                let title = format!("n={n}, by {}", label.replace('_', " "));
                plot::write_bar_chart(create(&p)?, &title, label, hist).context("writing plot")?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle { n, alphabet, force, population, out } => {
            if alphabet < 2 {
                bail!("--alphabet must be at least 2");
            }
            let mut sink: Box<dyn Write> = match &out {
                Some(p) => Box::new(create(p)?),
                None => Box::new(io::stdout().lock()),
            };
            if population {
                let report = population_report(n, alphabet, force)?;
                writeln!(sink, "set,words")?;
                for (set, c) in &report.counts {
                    writeln!(sink, "\"{set}\",{c}")?;
                }
                sink.flush()?;
            } else {
                write_gamma(sink, &brute_force_gamma(n, alphabet, force)?)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { n, input, mode, prev } => {
            let mode = match mode {
                Mode::Oracle => VerifyMode::Oracle,
                Mode::Witness => VerifyMode::Witness,
            };
            let prev = prev.or_else(|| {
                let guess = input.with_file_name(gamma_file_name(n.checked_sub(1)?));
                guess.is_file().then_some(guess)
            });
            let report = verify_gamma_file(&input, n, mode, prev.as_deref())?;
            println!("{report}");
            Ok(verdict(report.passed()))
        }
        Command::Tree { to, dot } => {
            let tree = build_parental_tree(to)?;
            tree.write_dot(create(&dot)?).context("writing DOT")?;
            let sizes: Vec<String> = tree.layers().iter().map(|g| g.kappa().to_string()).collect();
            println!("layers={} sizes={}", to, sizes.join(","));
            println!("dead_ends={}", tree.dead_ends().len());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
