//! `cuboid`: identity batches, interval reports, root certification, sign
//! checks, region classification and the checkpointed search.
//!
//! Every subcommand prints one JSON document on stdout. Exit codes:
//! 0 success, 1 verification failure or I/O error, 2 hypothesis not met or
//! usage error, 3 checkpoint mismatch.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cuboid_core::{Error, Integer, Rational, SeedPair};

#[derive(Parser)]
#[command(
    name = "cuboid",
    version,
    about = "Exact tools for the reduced cuboid polynomial Q_pq"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct SeedArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    q: u64,
}

impl SeedArgs {
    fn seed(self) -> Result<SeedPair, Error> {
        SeedPair::new(self.p, self.q)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the factorization and reversion identities for all coprime pairs.
    Identities {
        #[arg(long)]
        p_max: u64,
        #[arg(long)]
        q_max: u64,
        /// Perturb one coefficient of Q_pq before checking.
        #[arg(long, hide = true)]
        inject_corruption: bool,
    },
    /// Print the forward and reverse asymptotic intervals.
    Intervals {
        #[command(flatten)]
        seed: SeedArgs,
    },
    /// Isolate the five upper-half-plane roots and check containment.
    Certify {
        #[command(flatten)]
        seed: SeedArgs,
        /// Absolute isolation width, `NUM/DEN`.
        #[arg(long, default_value = "1/1048576", value_parser = parse_ratio)]
        width: Rational,
    },
    /// Sign-change and residual-bound checks of the shifted equations.
    SignChecks {
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Region of the quadrant and the integer-point predicates.
    Regions {
        #[command(flatten)]
        seed: SeedArgs,
    },
    /// Sieve all coprime seeds with q <= q-max, p <= p-max.
    Search {
        #[arg(long)]
        q_max: u64,
        #[arg(long)]
        p_max: u64,
        #[arg(long, default_value = "1/1048576", value_parser = parse_ratio)]
        width: Rational,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        report: PathBuf,
        /// Checkpoint output; defaults to `<report>.checkpoint`.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Resume from this checkpoint.
        #[arg(long)]
        resume: Option<PathBuf>,
        #[arg(long, hide = true)]
        stop_after_rows: Option<u64>,
    },
}

/// `NUM/DEN` or a bare integer.
fn parse_ratio(s: &str) -> Result<Rational, String> {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: Integer = n
        .trim()
        .parse()
        .map_err(|e| format!("bad numerator: {e}"))?;
    let d: Integer = d
        .trim()
        .parse()
        .map_err(|e| format!("bad denominator: {e}"))?;
    if d == Integer::from(0) {
        return Err("denominator is zero".into());
    }
    Ok(Rational::new(n, d))
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::HypothesisNotMet { .. }
        | Error::InvalidSeed { .. }
        | Error::InvalidConfig(_)
        | Error::NonPositiveWidth(_) => 2,
        Error::CheckpointMismatch { .. } => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Identities {
            p_max,
            q_max,
            inject_corruption,
        } => commands::identities(p_max, q_max, inject_corruption),
        Command::Intervals { seed } => seed.seed().and_then(commands::intervals),
        Command::Certify { seed, width } => seed.seed().and_then(|s| commands::certify(s, width)),
        Command::SignChecks { seed, samples } => {
            seed.seed().and_then(|s| commands::sign_checks(s, samples))
        }
        Command::Regions { seed } => seed.seed().and_then(commands::regions),
        Command::Search {
            q_max,
            p_max,
            width,
            workers,
            report,
            checkpoint,
            resume,
            stop_after_rows,
        } => {
            let mut config = cuboid_core::SearchConfig::new(q_max, p_max, width, report);
            config.workers = workers;
            if let Some(ck) = checkpoint {
                config.checkpoint_path = ck;
            }
            config.resume_path = resume;
            config.stop_after_rows = stop_after_rows;
            commands::search(&config)
        }
    };
    match result {
        Ok(out) => {
            println!("{}", out.json);
            ExitCode::from(if out.ok { 0 } else { 1 })
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
    fn ratio_forms() {
        assert_eq!(
            parse_ratio("3/6").unwrap(),
            Rational::new(1.into(), 2.into())
        );
        assert_eq!(parse_ratio("7").unwrap(), Rational::from_integer(7.into()));
        assert!(parse_ratio("1/0").is_err());
        assert!(parse_ratio("a/2").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(
            exit_code(&Error::HypothesisNotMet {
                p: 1,
                q: 2,
                requirement: "x"
            }),
            2
        );
        assert_eq!(
            exit_code(&Error::CheckpointMismatch {
                expected: "a".into(),
                found: "b".into()
            }),
            3
        );
        assert_eq!(exit_code(&Error::Io("disk".into())), 1);
    }
}
