use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use biquandle::format::emit_records;
use biquandle::{
    baut, bhomcount, bhomlist, biqlist_parallel, bisolist, classify, Biquandle, BlockMatrix,
    Equivalence, Pattern, Presentation, PresentationVector,
};
use clap::{Parser, Subcommand, ValueEnum};

/// Finite biquandles: enumeration, classification and knot counting invariants.
#[derive(Parser, Debug)]
#[command(name = "biq", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Test whether a matrix satisfies the biquandle axioms.
    Check { file: PathBuf },
    /// List every biquandle completing a partial matrix (0 = blank).
    Complete {
        file: PathBuf,
        /// Print at most N completions (after sorting).
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// List every biquandle of a given order.
    Enumerate {
        #[arg(long)]
        order: usize,
        /// Keep only connected biquandles.
        #[arg(long)]
        connected: bool,
        /// Drop biquandles whose lower or upper operations are trivial.
        #[arg(long)]
        non_qbiq: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Enumerate, then keep one representative per class.
    Classify {
        #[arg(long)]
        order: usize,
        #[arg(long = "mod", value_enum)]
        modulo: Mode,
        #[arg(long)]
        connected: bool,
        #[arg(long)]
        non_qbiq: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Exchange left and right operations.
    Obverse { file: PathBuf },
    /// Exchange upper and lower operations.
    Flip { file: PathBuf },
    /// Count (or list) homomorphisms from a presented biquandle.
    Hom {
        /// A `.pv`, `.pres` or `.biq` presentation.
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        list: bool,
    },
    /// List the isomorphisms between two biquandles.
    Iso { a: PathBuf, b: PathBuf },
    /// Automorphism group of a biquandle.
    Aut { file: PathBuf },
    /// Counting invariant of a knot given by its presentation vector.
    Invariant {
        #[arg(long)]
        knot: PathBuf,
        #[arg(long)]
        target: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Iso,
    IsoFlipObverse,
}

impl From<Mode> for Equivalence {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Iso => Equivalence::Iso,
            Mode::IsoFlipObverse => Equivalence::IsoFlipObverse,
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_matrix(path: &Path) -> Result<BlockMatrix> {
    read(path)?
        .parse()
        .with_context(|| format!("{}", path.display()))
}

fn load_biquandle(path: &Path) -> Result<Biquandle> {
    let m = load_matrix(path)?;
    Biquandle::try_from(m).with_context(|| format!("{}", path.display()))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn census(order: usize, connected: bool, non_qbiq: bool, jobs: usize) -> Result<Vec<Biquandle>> {
    if !(1..=255).contains(&order) {
        bail!("order {order} outside 1..=255");
    }
    let mut all = biqlist_parallel(&Pattern::blank(order), jobs);
    all.retain(|b| (!connected || b.is_connected()) && (!non_qbiq || !b.is_quandle_like()));
    Ok(all)
}

fn run(cmd: Command, out: &mut impl Write) -> Result<()> {
    match cmd {
        Command::Check { file } => {
            let m = load_matrix(&file)?;
            match m.check_axioms() {
                Ok(()) => writeln!(out, "biquandle")?,
                Err(axiom) => writeln!(out, "not a biquandle: axiom {axiom} fails")?,
            }
        }
        Command::Complete { file, limit, jobs } => {
            let p: Pattern = read(&file)?
                .parse()
                .with_context(|| format!("{}", file.display()))?;
            let mut found = biqlist_parallel(&p, jobs);
            if let Some(limit) = limit {
                found.truncate(limit);
            }
            write!(out, "{}", emit_records(&found))?;
        }
        Command::Enumerate {
            order,
            connected,
            non_qbiq,
            jobs,
        } => {
            let all = census(order, connected, non_qbiq, jobs)?;
            write!(out, "{}", emit_records(&all))?;
        }
        Command::Classify {
            order,
            modulo,
            connected,
            non_qbiq,
            jobs,
        } => {
            let all = census(order, connected, non_qbiq, jobs)?;
            let classes = classify(&all, modulo.into());
            let records: Vec<String> = classes
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    format!(
                        "# class {} self-flip {} self-obverse {} aut {} members {}\n{}",
                        i + 1,
                        yes_no(c.self_flip),
                        yes_no(c.self_obverse),
                        c.aut,
                        c.members,
                        c.representative
                    )
                })
                .collect();
            write!(out, "{}", records.join("\n"))?;
            writeln!(out, "\n# {} classes", classes.len())?;
        }
        Command::Obverse { file } => write!(out, "{}", load_matrix(&file)?.obverse())?,
        Command::Flip { file } => write!(out, "{}", load_matrix(&file)?.flip())?,
        Command::Hom {
            source,
            target,
            list,
        } => {
            let p = Presentation::parse_any(&read(&source)?)
                .with_context(|| format!("{}", source.display()))?;
            let t = load_biquandle(&target)?;
            if list {
                for map in bhomlist(&p, &t) {
                    writeln!(out, "{map}")?;
                }
            } else {
                writeln!(out, "{}", bhomcount(&p, &t))?;
            }
        }
        Command::Iso { a, b } => {
            let isos = bisolist(&load_biquandle(&a)?, &load_biquandle(&b)?);
            writeln!(out, "{}", if isos.is_empty() { "not isomorphic" } else { "isomorphic" })?;
            for map in isos {
                writeln!(out, "{map}")?;
            }
        }
        Command::Aut { file } => {
            let (maps, label) = baut(&load_biquandle(&file)?);
            writeln!(out, "{label} order {}", label.order)?;
            for map in maps {
                writeln!(out, "{map}")?;
            }
        }
        Command::Invariant { knot, target } => {
            let pv: PresentationVector = read(&knot)?
                .parse()
                .with_context(|| format!("{}", knot.display()))?;
            let t = load_biquandle(&target)?;
            writeln!(out, "{}", bhomcount(&pv.to_presentation(), &t))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out).and_then(|()| Ok(out.flush()?));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
