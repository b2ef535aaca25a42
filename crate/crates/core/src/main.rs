use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use doxa::formula::{parse, Alphabet};
use doxa::horn::{self, classify_redundancy, horn_equiv_negation};
use doxa::reductions::{generate, Reduction};
use doxa::scenario::{RunError, Scenario};
use doxa::{Error, Operator};

const EXIT_PARSE: u8 = 2;
const EXIT_SEMANTIC: u8 = 3;

#[derive(Parser)]
#[command(name = "doxa", version, about = "Iterated belief revision toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file and print the answer to each query.
    Run { file: PathBuf },
    /// Decide a question about two Horn clause files.
    Horn {
        mode: HornMode,
        first: PathBuf,
        second: PathBuf,
    },
    /// Print a scenario whose query answer depends on the satisfiability of
    /// the injected formulae.
    Gen {
        #[arg(long, value_enum)]
        reduction: ReductionKind,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: Option<String>,
        /// Operator for the nsr reduction.
        #[arg(long, value_enum, default_value = "nat")]
        op: NsrOp,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum HornMode {
    /// Is lex(first) redundant before lex(second) from the flat state?
    Redundant,
    /// Is the first formula equivalent to the negation of the second?
    NegEquiv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReductionKind {
    HeteroHard,
    HeteroFlat,
    Nsr,
    Full,
    Msev,
    Dsev,
}

#[derive(Clone, Copy, ValueEnum)]
enum NsrOp {
    Nat,
    Sev,
    Res,
}

fn exit_for(e: &Error) -> ExitCode {
    ExitCode::from(if e.is_parse_error() {
        EXIT_PARSE
    } else {
        EXIT_SEMANTIC
    })
}

fn read(path: &Path) -> Result<String, ExitCode> {
    fs::read_to_string(path).map_err(|e| {
        eprintln!("{}: {e}", path.display());
        ExitCode::from(EXIT_PARSE)
    })
}

fn run(file: &Path) -> Result<(), ExitCode> {
    let text = read(file)?;
    let scenario = Scenario::parse(&text).map_err(|e| {
        eprintln!("{}:{}: {e}", file.display(), e.line);
        exit_for(&e.error)
    })?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = scenario.run(&mut out);
    let _ = out.flush();
    match result {
        Ok(()) => Ok(()),
        Err(RunError::Scenario(e)) => {
            eprintln!("{}:{}: {e}", file.display(), e.line);
            Err(exit_for(&e.error))
        }
        Err(RunError::Io(e)) => {
            eprintln!("{e}");
            Err(ExitCode::FAILURE)
        }
    }
}

fn horn_check(mode: HornMode, first: &Path, second: &Path) -> Result<(), ExitCode> {
    let (t1, t2) = (read(first)?, read(second)?);
    let fail = |path: &Path, e: Error| {
        eprintln!("{}: {e}", path.display());
        exit_for(&e)
    };
    let alphabet = horn::infer_alphabet([t1.as_str(), t2.as_str()]).map_err(|e| fail(first, e))?;
    let f1 = horn::parse(&t1, &alphabet).map_err(|e| fail(first, e))?;
    let f2 = horn::parse(&t2, &alphabet).map_err(|e| fail(second, e))?;
    match mode {
        HornMode::Redundant => match classify_redundancy(&f1, &f2) {
            Some(case) => println!("true ({case})"),
            None => println!("false"),
        },
        HornMode::NegEquiv => println!("{}", horn_equiv_negation(&f1, &f2).result),
    }
    Ok(())
}

fn gen(kind: ReductionKind, f: &str, g: Option<&str>, op: NsrOp) -> Result<(), ExitCode> {
    let reduction = match kind {
        ReductionKind::HeteroHard => Reduction::HeteroHard,
        ReductionKind::HeteroFlat => Reduction::HeteroFlat,
        ReductionKind::Nsr => Reduction::Nsr(match op {
            NsrOp::Nat => Operator::Nat,
            NsrOp::Sev => Operator::Sev,
            NsrOp::Res => Operator::Res,
        }),
        ReductionKind::Full => Reduction::Full,
        ReductionKind::Msev => Reduction::Msev,
        ReductionKind::Dsev => Reduction::Dsev,
    };
    let fail = |e: Error| {
        eprintln!("gen: {e}");
        exit_for(&e)
    };
    if g.is_some() && !reduction.takes_g() {
        return Err(fail(Error::InvalidState(format!(
            "{} takes no second formula",
            reduction.name()
        ))));
    }
    let texts: Vec<&str> = std::iter::once(f).chain(g).collect();
    let injected = Alphabet::infer(texts.iter().copied()).map_err(fail)?;
    let f = parse(f, &injected).map_err(fail)?;
    let g = g.map(|g| parse(g, &injected)).transpose().map_err(fail)?;
    let instance = generate(reduction, &injected, &f, g.as_ref()).map_err(fail)?;
    print!("{}", instance.to_scenario());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run { file } => run(file),
        Command::Horn {
            mode,
            first,
            second,
        } => horn_check(*mode, first, second),
        Command::Gen {
            reduction,
            f,
            g,
            op,
        } => gen(*reduction, f, g.as_deref(), *op),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => code,
    }
}
