//! `drinfeld`: command-line access to the Legendre-family computations.
//!
//! Exit status: 0 success, 1 verification failure, 2 usage or validation
//! error, 3 resource bound exceeded.

mod cache;
mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use drinfeld::Error;

#[derive(Parser)]
#[command(
    name = "drinfeld",
    version,
    about = "Rank-2 Drinfeld modules over F_q[T]: periods and supersingular polynomials"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Directory for cached p_n, mu_n and gamma_n.
    #[arg(long, env = "DRINFELD_CACHE_DIR", global = true)]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Sparse,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Rec,
    Closed,
}

/// `q` as a prime power, written `4` or `2^2`.
#[derive(Clone, Copy, Debug)]
pub struct QSpec {
    pub p: u64,
    pub e: u32,
}

fn parse_q(s: &str) -> Result<QSpec, String> {
    let (p, e) = match s.split_once('^') {
        Some((p, e)) => {
            let p: u64 = p
                .trim()
                .parse()
                .map_err(|_| format!("bad prime in q = {s}"))?;
            let e: u32 = e
                .trim()
                .parse()
                .map_err(|_| format!("bad exponent in q = {s}"))?;
            (p, e)
        }
        None => {
            let q: u64 = s
                .trim()
                .parse()
                .map_err(|_| format!("q = {s} is not an integer"))?;
            if q < 2 {
                return Err(format!("q = {q} is not a prime power"));
            }
            let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
            let mut e = 0;
            let mut rest = q;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            if rest != 1 {
                return Err(format!("q = {q} is not a prime power"));
            }
            (p, e)
        }
    };
    if e == 0 {
        return Err("the exponent of q must be positive".into());
    }
    Ok(QSpec { p, e })
}

#[derive(Args)]
struct QArg {
    /// Size of the constant field, `p^e` or its value.
    #[arg(long, value_parser = parse_q)]
    q: QSpec,
}

#[derive(Subcommand)]
enum Command {
    /// The polynomial p_n(x).
    Pn {
        #[command(flatten)]
        q: QArg,
        /// Index, at least -1.
        #[arg(long, allow_negative_numbers = true)]
        n: i32,
        /// Three-term recursion or subset-sum closed form.
        #[arg(long, value_enum, default_value_t = ModeArg::Closed)]
        mode: ModeArg,
    },
    /// The normalized period coefficient b_n in D.
    Bn {
        #[command(flatten)]
        q: QArg,
        /// Index.
        #[arg(long)]
        n: u32,
        /// Three-term recursion or subset-sum closed form.
        #[arg(long, value_enum, default_value_t = ModeArg::Closed)]
        mode: ModeArg,
    },
    /// mu_n(j).
    Mu {
        #[command(flatten)]
        q: QArg,
        /// Index.
        #[arg(long)]
        n: u32,
    },
    /// gamma_n(j).
    Gamma {
        #[command(flatten)]
        q: QArg,
        /// Index.
        #[arg(long)]
        n: u32,
    },
    /// Supersingular j-invariants modulo a prime, with mu_n and gamma_n mod p.
    Ss {
        #[command(flatten)]
        q: QArg,
        /// A monic irreducible polynomial in T.
        #[arg(long)]
        prime: String,
    },
    /// Both supersingularity tests for the Legendre module with a given Delta.
    Sstest {
        #[command(flatten)]
        q: QArg,
        /// A monic irreducible polynomial in T.
        #[arg(long)]
        prime: String,
        /// Delta, a nonzero polynomial in T.
        #[arg(long)]
        delta: String,
    },
    /// The shadowed partitions P_2(n).
    Partitions {
        /// Index.
        #[arg(long)]
        n: u32,
    },
    /// Term valuations and residual of the period partial sums.
    Period {
        #[command(flatten)]
        q: QArg,
        /// Delta, a nonzero polynomial in T.
        #[arg(long)]
        delta: String,
        /// Last term index N of the partial sum.
        #[arg(long)]
        terms: u32,
    },
    /// Run the identity and congruence suites and print the JSON report.
    Verify {
        #[command(flatten)]
        q: QArg,
        /// Largest index or prime degree exercised, clamped to the resource bounds.
        #[arg(long)]
        max_n: u32,
        /// Seed for the randomized suites.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        _ if e.is_resource_bound() => 3,
        Error::Internal(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cache = cache::Cache::new(cli.cache_dir);
    match commands::run(cli.command, cli.format, &cache) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(out.text.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
            ExitCode::from(if out.failed { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_forms() {
        let q = parse_q("4").unwrap();
        assert_eq!((q.p, q.e), (2, 2));
        let q = parse_q("3^2").unwrap();
        assert_eq!((q.p, q.e), (3, 2));
        assert!(parse_q("6").is_err());
        assert!(parse_q("1").is_err());
        assert!(parse_q("2^0").is_err());
    }
}
