use std::net::SocketAddr;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use mbrg_core::harness::ReportFormat;
use mbrg_core::session::Engine;
use mbrg_core::Player;

/// Maker-Breaker resolving game lab.
///
/// Graphs are expressions such as `corona(path(2),cycle(4))` or `petersen`,
/// or edge-list text (`n` then one `u v` pair per line) read with `@FILE`.
#[derive(Debug, Parser)]
#[command(name = "mbrg", version)]
pub struct Cli {
    /// Send requests to a running service instead of computing locally.
    #[arg(long, global = true, value_name = "URL", env = "MBRG_SERVER")]
    pub server: Option<String>,
    /// Print the full JSON document instead of the plain summary.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GraphArg {
    /// Graph expression, or `@FILE` for edge-list text.
    pub graph: String,
}

#[derive(Debug, Args)]
pub struct CapArg {
    /// Override the operation's order cap.
    #[arg(long)]
    pub cap: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a graph and print its metrics and edge list.
    Graph(GraphArg),
    /// Metric dimension and a lexicographically first basis.
    Dim {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Outcome class R, S or N.
    Outcome {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Winner, optimal move count and best opening for one starting player.
    Solve {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, default_value = "resolver")]
        first: Player,
        #[command(flatten)]
        cap: CapArg,
    },
    /// R_MB, R'_MB, S_MB, S'_MB.
    Numbers {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Search for a pairing resolving set.
    Pairing {
        #[command(flatten)]
        graph: GraphArg,
        /// Only look for pairings of this many pairs.
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        cap: CapArg,
    },
    /// List the strategy catalog, with applicability when a graph is given.
    Strategies { graph: Option<String> },
    /// Check a catalog strategy against every opponent line.
    StrategyValidate {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, short)]
        strategy: String,
        /// Only this starting player; both by default.
        #[arg(long)]
        first: Option<Player>,
        #[command(flatten)]
        cap: CapArg,
    },
    /// List the verifiable claims.
    Theorems,
    /// Run verification campaigns and print a report.
    Verify(VerifyArgs),
    /// Run the HTTP service.
    Serve(ServeArgs),
    /// Play a game from standard input.
    Play(PlayArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Claim id (see `theorems`); the default campaign when omitted.
    #[arg(long, short)]
    pub theorem: Option<String>,
    /// TOML file with caps, seed and corpora.
    #[arg(long, short)]
    pub config: Option<PathBuf>,
    #[arg(long, short, default_value = "md")]
    pub format: ReportFormat,
    /// Write the report here instead of stdout.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Seed for randomized playouts.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Exact solver cap.
    #[arg(long)]
    pub cap: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, default_value = "127.0.0.1:8080")]
    pub bind: SocketAddr,
    /// Directory of built browser assets to serve at `/`.
    #[arg(long)]
    pub static_dir: Option<PathBuf>,
    /// Keep sessions as JSON files here across restarts.
    #[arg(long)]
    pub data_dir: Option<PathBuf>,
    /// Allowed CORS origin (any when omitted).
    #[arg(long)]
    pub cors_origin: Option<String>,
}

#[derive(Debug, Args)]
pub struct PlayArgs {
    #[command(flatten)]
    pub graph: GraphArg,
    #[arg(long, default_value = "resolver")]
    pub human: Player,
    #[arg(long, default_value = "resolver")]
    pub first: Player,
    /// `optimal` or a strategy name for the other side.
    #[arg(long, default_value = "optimal")]
    pub engine: Engine,
}
