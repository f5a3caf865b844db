use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use locikit::fixture::Fixture;
use locikit::invariants::ModuleAnalysis;
use locikit::loci::{compute_locus, pointwise, LocusKind};
use locikit::modres::free_resolution;
use locikit::verify::run_fixture;
use locikit::Error;

// A closed stdout (e.g. piping into `head`) ends the process quietly.
macro_rules! outn {
    ($($t:tt)*) => {{
        use std::io::Write;
        if std::io::stdout().lock().write_fmt(format_args!($($t)*)).is_err() {
            std::process::exit(0);
        }
    }};
}

macro_rules! out {
    ($($t:tt)*) => {{
        outn!($($t)*);
        outn!("\n");
    }};
}

/// Loci of finitely presented modules over affine Q-algebras.
#[derive(Parser)]
#[command(name = "locikit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a locus of a fixture module.
    Compute {
        #[arg(long)]
        fixture: PathBuf,
        #[arg(long)]
        module: String,
        /// supp, free, cm, mcm, sn:N, tn:N, fid or gor
        #[arg(long)]
        locus: LocusKind,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether a fixture prime lies in a locus.
    Member {
        #[arg(long)]
        fixture: PathBuf,
        #[arg(long)]
        module: String,
        #[arg(long)]
        locus: LocusKind,
        #[arg(long)]
        prime: String,
    },
    /// Local invariants of a module at a fixture prime.
    Profile {
        #[arg(long)]
        fixture: PathBuf,
        #[arg(long)]
        module: String,
        #[arg(long)]
        prime: String,
        #[arg(long)]
        json: bool,
    },
    /// Run the checks of a fixture.
    Verify {
        #[arg(long)]
        fixture: PathBuf,
        #[arg(long)]
        check: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Print a free resolution.
    Resolve {
        #[arg(long)]
        fixture: PathBuf,
        #[arg(long)]
        module: String,
        #[arg(long)]
        length: usize,
    },
    /// Print a fixture in canonical form.
    Fmt {
        #[arg(long)]
        fixture: PathBuf,
    },
}

const PASS: u8 = 0;
const INCONCLUSIVE: u8 = 2;
const USAGE: u8 = 3;

fn load(path: &PathBuf) -> Result<Fixture, (u8, String)> {
    let text = std::fs::read_to_string(path).map_err(|e| (USAGE, format!("{}: {e}", path.display())))?;
    Fixture::parse(&text).map_err(|e| (USAGE, format!("{}: {e}", path.display())))
}

fn classify(e: Error) -> (u8, String) {
    match e {
        Error::ResourceLimit { .. } => (INCONCLUSIVE, e.to_string()),
        _ => (USAGE, e.to_string()),
    }
}

fn run(cmd: Command) -> Result<u8, (u8, String)> {
    match cmd {
        Command::Compute { fixture, module, locus, json } => {
            let fx = load(&fixture)?;
            let a = ModuleAnalysis::new(fx.module(&module).map_err(classify)?).with_catalog(fx.sample_primes().to_vec());
            let rep = compute_locus(&a, locus).map_err(classify)?;
            let names = fx.ring().names();
            if json {
                out!("{}", serde_json::to_string_pretty(&rep.to_json(names)).unwrap());
            } else {
                let j = fx.ring().relations();
                let note = if rep.subset.is_empty(j).map_err(classify)? == Some(true) {
                    " (empty)"
                } else if rep.subset.is_everything(j).map_err(classify)? == Some(true) {
                    " (everything)"
                } else {
                    ""
                };
                out!("{}: {}{note}", rep.kind, rep.subset.describe(names));
                out!("mode: {}", serde_json::to_value(rep.mode).unwrap().as_str().unwrap());
                for c in &rep.caveats {
                    out!("caveat: {c}");
                }
                for (p, v) in &rep.sample_verdicts {
                    out!("  {p}: {}", serde_json::to_string(v).unwrap());
                }
            }
            Ok(PASS)
        }
        Command::Member { fixture, module, locus, prime } => {
            let fx = load(&fixture)?;
            let p = fx.prime(&prime).map_err(classify)?.clone();
            let a = ModuleAnalysis::new(fx.module(&module).map_err(classify)?).with_catalog(fx.sample_primes().to_vec());
            let rep = compute_locus(&a, locus).map_err(classify)?;
            let answer = match rep.member(&p) {
                Some(b) => Some(b),
                None => pointwise(&a, locus, &p).map_err(classify)?.as_bool(),
            };
            match answer {
                Some(b) => {
                    out!("{b}");
                    Ok(PASS)
                }
                None => {
                    out!("inconclusive");
                    Ok(INCONCLUSIVE)
                }
            }
        }
        Command::Profile { fixture, module, prime, json } => {
            let fx = load(&fixture)?;
            let p = fx.prime(&prime).map_err(classify)?.clone();
            let a = ModuleAnalysis::new(fx.module(&module).map_err(classify)?).with_catalog(fx.sample_primes().to_vec());
            let prof = a.profile(&p).map_err(classify)?;
            if json {
                out!("{}", serde_json::to_string_pretty(&prof).unwrap());
            } else {
                let v = serde_json::to_value(&prof).unwrap();
                for (k, x) in v.as_object().unwrap() {
                    out!("{k}: {x}");
                }
            }
            Ok(PASS)
        }
        Command::Verify { fixture, check, json } => {
            let fx = load(&fixture)?;
            let report = run_fixture(&fx, check.as_deref()).map_err(|e| (USAGE, e.to_string()))?;
            if json {
                out!("{}", report.to_json_string());
            } else {
                outn!("{}", report.table());
            }
            Ok(report.exit_code() as u8)
        }
        Command::Resolve { fixture, module, length } => {
            let fx = load(&fixture)?;
            let m = fx.module(&module).map_err(classify)?;
            let res = free_resolution(&m, length).map_err(classify)?;
            let names = fx.ring().names();
            out!("ranks: {:?}{}", res.ranks(), if res.is_complete() { " (complete)" } else { "" });
            for (k, d) in res.differentials().iter().enumerate() {
                out!("d{}:\n{}", k + 1, d.fmt_with(names));
            }
            Ok(PASS)
        }
        Command::Fmt { fixture } => {
            outn!("{}", load(&fixture)?.print());
            Ok(PASS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { PASS };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
