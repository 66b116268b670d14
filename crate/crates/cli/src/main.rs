use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use toric_cli::commands::{self, CmdError, CmdResult, Source, VerifyFlags};
use toric_cli::report;
use toric_core::scalar::parse_rat;

#[derive(Parser)]
#[command(name = "toric", version, about = "Exact positivity checks for torus-invariant divisors")]
struct Cli {
    /// Emit the machine-readable JSON report instead of aligned text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verdicts, local data and wall values for D, D' and D + D'
    Analyze {
        /// Input file, optionally followed by D=NAME and Dprime=NAME
        args: Vec<String>,
        #[arg(long)]
        builtin: Option<String>,
        #[arg(long = "d")]
        d: Option<String>,
        #[arg(long = "dprime")]
        dprime: Option<String>,
        /// Run the Hilbert-basis generation test on Cartier divisors
        #[arg(long)]
        very_ample: bool,
    },
    /// Check one statement on an input file, a builtin, or random instances
    Verify {
        /// theorem2, fujino, corollary, proposition, lemma1, lemma3 or lemma4
        statement: String,
        /// Input file, optionally followed by D=NAME, Dprime=NAME, sigma=K
        args: Vec<String>,
        #[arg(long)]
        builtin: Option<String>,
        #[arg(long, num_args = 3, value_names = ["DIM", "SEED", "COUNT"])]
        fuzz: Option<Vec<u64>>,
        #[arg(long = "d")]
        d: Option<String>,
        #[arg(long = "dprime")]
        dprime: Option<String>,
        /// Restrict per-cone statements to one maximal cone
        #[arg(long)]
        sigma: Option<usize>,
        /// Radius of the local hypotheses of the proposition, e.g. 1/2
        #[arg(long)]
        r: Option<String>,
        /// Coordinate bound for the interior points of lemma3
        #[arg(long)]
        interior_bound: Option<u32>,
    },
    /// Hilbert basis of the dual of a maximal cone
    Hilbert {
        /// Input file, optionally followed by sigma=K
        args: Vec<String>,
        #[arg(long)]
        builtin: Option<String>,
        #[arg(long)]
        cone: Option<usize>,
        /// Classify basis elements against the lattice points of this divisor's polytope
        #[arg(long)]
        divisor: Option<String>,
    },
    /// List or write the built-in example instances
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
}

#[derive(Subcommand)]
enum ExamplesAction {
    List,
    /// Write the example catalog, or the given builtin specs, as JSON files
    Emit { dir: PathBuf, specs: Vec<String> },
}

/// Positional arguments: at most one input path plus `KEY=VALUE` pairs.
struct Positional {
    input: Option<PathBuf>,
    pairs: Vec<(String, String)>,
}

impl Positional {
    fn parse(args: &[String]) -> Result<Self, CmdError> {
        let mut input = None;
        let mut pairs = Vec::new();
        for a in args {
            match a.split_once('=') {
                Some((k, v)) => pairs.push((k.to_string(), v.to_string())),
                None if input.is_none() => input = Some(PathBuf::from(a)),
                None => return Err(CmdError::Usage(format!("unexpected argument {a:?}"))),
            }
        }
        Ok(Self { input, pairs })
    }

    fn get(&self, keys: &[&str]) -> Option<String> {
        self.pairs.iter().find(|(k, _)| keys.contains(&k.as_str())).map(|(_, v)| v.clone())
    }

    fn check_keys(&self, allowed: &[&str]) -> Result<(), CmdError> {
        match self.pairs.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
            Some((k, _)) => Err(CmdError::Usage(format!("unknown parameter {k:?}"))),
            None => Ok(()),
        }
    }

    fn source(&self, builtin: Option<String>) -> Result<Source, CmdError> {
        match (&self.input, builtin) {
            (Some(p), None) => Ok(Source::File(p.clone())),
            (None, Some(b)) => Ok(Source::Builtin(b)),
            (Some(_), Some(_)) => Err(CmdError::Usage("give either an input file or --builtin, not both".into())),
            (None, None) => Err(CmdError::Usage("an input file or --builtin is required".into())),
        }
    }
}

const D_KEYS: [&str; 2] = ["D", "d"];
const DP_KEYS: [&str; 4] = ["Dprime", "dprime", "D'", "Dp"];
const SIGMA_KEYS: [&str; 3] = ["sigma", "σ", "cone"];

fn usize_param(s: Option<String>, what: &str) -> Result<Option<usize>, CmdError> {
    s.map(|v| v.parse().map_err(|_| CmdError::Usage(format!("{what} must be a non-negative integer, got {v:?}"))))
        .transpose()
}

fn run(cmd: Command) -> CmdResult {
    match cmd {
        Command::Analyze { args, builtin, d, dprime, very_ample } => {
            let pos = Positional::parse(&args)?;
            pos.check_keys(&[&D_KEYS[..], &DP_KEYS[..]].concat())?;
            let src = pos.source(builtin)?;
            let d = d.or(pos.get(&D_KEYS));
            let dp = dprime.or(pos.get(&DP_KEYS));
            commands::analyze(&src, d.as_deref(), dp.as_deref(), very_ample)
        }
        Command::Verify { statement, args, builtin, fuzz, d, dprime, sigma, r, interior_bound } => {
            let st = commands::parse_statement(&statement)?;
            let pos = Positional::parse(&args)?;
            pos.check_keys(&[&D_KEYS[..], &DP_KEYS[..], &SIGMA_KEYS[..], &["r"]].concat())?;
            let r = r.or(pos.get(&["r"]));
            let flags = VerifyFlags {
                d: d.or(pos.get(&D_KEYS)),
                dprime: dprime.or(pos.get(&DP_KEYS)),
                sigma: sigma.or(usize_param(pos.get(&SIGMA_KEYS), "sigma")?),
                r: r.map(|s| parse_rat(&s).ok_or_else(|| CmdError::Usage(format!("--r: not a rational: {s:?}"))))
                    .transpose()?,
                interior_bound,
            };
            match fuzz {
                Some(f) => {
                    if pos.input.is_some() || builtin.is_some() {
                        return Err(CmdError::Usage("--fuzz takes no input file or --builtin".into()));
                    }
                    commands::verify_fuzz(st, f[0] as usize, f[1], f[2] as usize, &flags)
                }
                None => commands::verify(st, &pos.source(builtin)?, &flags),
            }
        }
        Command::Hilbert { args, builtin, cone, divisor } => {
            let pos = Positional::parse(&args)?;
            pos.check_keys(&[&SIGMA_KEYS[..], &["divisor"]].concat())?;
            let src = pos.source(builtin)?;
            let sigma = cone
                .or(usize_param(pos.get(&SIGMA_KEYS), "cone")?)
                .ok_or_else(|| CmdError::Usage("--cone is required".into()))?;
            let divisor = divisor.or(pos.get(&["divisor"]));
            commands::hilbert(&src, sigma, divisor.as_deref())
        }
        Command::Examples { action: ExamplesAction::List } => commands::examples_list(),
        Command::Examples { action: ExamplesAction::Emit { dir, specs } } => commands::examples_emit(&dir, &specs),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(v) => {
            if cli.json {
                print!("{}", report::to_json(&v));
            } else {
                print!("{}", report::to_text(&v));
            }
            ExitCode::from(commands::exit_status(&v) as u8)
        }
        Err(e) => {
            let code = e.exit_code();
            if cli.json {
                let v = serde_json::json!({ "error": e.to_string(), "exit_status": code });
                print!("{}", report::to_json(&v));
            }
            eprintln!("error: {e}");
            ExitCode::from(code as u8)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positional_split() {
        let args: Vec<String> = ["p2.json", "D=3H", "Dprime=K"].iter().map(|s| s.to_string()).collect();
        let p = Positional::parse(&args).unwrap();
        assert_eq!(p.input, Some(PathBuf::from("p2.json")));
        assert_eq!(p.get(&D_KEYS).as_deref(), Some("3H"));
        assert_eq!(p.get(&DP_KEYS).as_deref(), Some("K"));
        assert!(Positional::parse(&["a".into(), "b".into()]).is_err());
    }
}
