//! File formats and command implementations behind the `chainring` binary.
//!
//! Every command reads JSON instance files and returns a JSON document;
//! [`run`] dispatches a parsed command line.

pub mod commands;
pub mod error;
pub mod format;
pub mod system;
pub mod verify;

use clap::{Parser, Subcommand};
use serde_json::Value;

use crate::commands::{GbArgs, MinRankArgs, RankArgs, RankDecodeArgs, SolveArgs, SolveLocalArgs};
use crate::error::CliResult;
use crate::verify::VerifyArgs;

#[derive(Debug, Parser)]
#[command(name = "chainring", version, about = "Polynomial systems, MinRank and rank-metric decoding over finite chain rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Strong Gröbner basis of a polynomial system.
    Gb(GbArgs),
    /// All solutions of a polynomial system.
    Solve(SolveArgs),
    /// Solutions of a system over a finite local ring given by a presentation.
    SolveLocal(SolveLocalArgs),
    /// Rank and Smith normal form of a matrix.
    Rank(RankArgs),
    /// Solutions of a MinRank instance.
    Minrank(MinRankArgs),
    /// Decodes a received word of a linear code in the rank metric.
    RankDecode(RankDecodeArgs),
    /// Re-checks a result against its instance.
    Verify(VerifyArgs),
}

pub fn run(cli: &Cli) -> CliResult<Value> {
    match &cli.command {
        Command::Gb(a) => commands::gb(a),
        Command::Solve(a) => commands::solve(a),
        Command::SolveLocal(a) => commands::solve_local(a),
        Command::Rank(a) => commands::rank(a),
        Command::Minrank(a) => commands::minrank(a),
        Command::RankDecode(a) => commands::rank_decode(a),
        Command::Verify(a) => verify::verify(a),
    }
}
