mod args;
mod backend;
mod play;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use mbrg_client::ClientError;
use mbrg_core::api::{ApiError, ErrorKind};
use mbrg_core::harness::HarnessError;
use mbrg_server::ServeError;
use thiserror::Error;

use args::{Cli, Command};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Api(#[from] ApiError),
    #[error(transparent)]
    Client(#[from] ClientError),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Serve(#[from] ServeError),
    /// Computation finished but a claim or strategy did not hold.
    #[error("{0}")]
    Mismatch(String),
}

impl From<HarnessError> for CliError {
    fn from(e: HarnessError) -> Self {
        CliError::Api(e.into())
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        let bad_input = |kind| {
            matches!(
                kind,
                ErrorKind::BadRequest | ErrorKind::NotFound | ErrorKind::Conflict
            )
        };
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Api(e) if bad_input(e.kind) => 2,
            CliError::Client(c) if c.api().is_some_and(|e| bad_input(e.kind)) => 2,
            _ => 3,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Serve(args) => serve(args),
        _ => tokio::runtime::Builder::new_current_thread()
            .enable_all()
            .build()
            .map_err(|source| CliError::Io {
                path: "runtime".into(),
                source,
            })
            .and_then(|rt| rt.block_on(backend::dispatch(&cli))),
    };
    let _ = std::io::stdout().flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mbrg: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn serve(args: &args::ServeArgs) -> Result<(), CliError> {
    tracing_subscriber::fmt()
        .with_writer(std::io::stderr)
        .with_env_filter(
            tracing_subscriber::EnvFilter::try_from_default_env().unwrap_or_else(|_| "info".into()),
        )
        .init();
    let options = mbrg_server::ServerOptions {
        bind: args.bind,
        static_dir: args.static_dir.clone(),
        data_dir: args.data_dir.clone(),
        cors_origin: args.cors_origin.clone(),
    };
    let rt = tokio::runtime::Runtime::new().map_err(|source| CliError::Io {
        path: "runtime".into(),
        source,
    })?;
    Ok(rt.block_on(mbrg_server::serve(options))?)
}
