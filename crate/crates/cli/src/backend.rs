//! Runs each command locally or against `--server`, so both paths share
//! request types and rendering.

use std::path::Path;

use mbrg_client::Client;
use mbrg_core::api::{
    self, CappedRequest, GraphRequest, PairingRequest, SolveRequest, ValidateRequest, VerifyRequest,
};
use mbrg_core::harness::{report, HarnessConfig, ReportFormat};
use serde::Serialize;

use crate::args::{CapArg, Cli, Command, GraphArg, VerifyArgs};
use crate::{play, render, CliError};

pub enum Backend {
    Local,
    Remote(Client),
}

impl Backend {
    pub fn new(server: Option<&str>) -> Result<Self, CliError> {
        Ok(match server {
            Some(url) => Backend::Remote(Client::new(url)?),
            None => Backend::Local,
        })
    }
}

/// Local or remote call with one request value.
macro_rules! call {
    ($backend:expr, $op:ident, $req:expr) => {{
        let req = $req;
        match $backend {
            Backend::Local => api::$op(&req).map_err(CliError::from),
            Backend::Remote(c) => c.$op(&req).await.map_err(CliError::from),
        }
    }};
}

/// `@FILE` reads edge-list text; anything else is passed through.
pub fn graph_input(arg: &GraphArg) -> Result<String, CliError> {
    match arg.graph.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.into(),
            source,
        }),
        None => Ok(arg.graph.clone()),
    }
}

fn capped(graph: &GraphArg, cap: &CapArg) -> Result<CappedRequest, CliError> {
    Ok(CappedRequest {
        graph: graph_input(graph)?,
        cap: cap.cap,
    })
}

fn emit<T: Serialize>(json: bool, value: &T, plain: impl FnOnce(&T) -> String) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(value).expect("documents serialize")
        );
    } else {
        print!("{}", plain(value));
    }
}

pub async fn dispatch(cli: &Cli) -> Result<(), CliError> {
    let backend = Backend::new(cli.server.as_deref())?;
    let json = cli.json;
    match &cli.command {
        Command::Graph(g) => {
            let info = call!(
                &backend,
                graph_info,
                GraphRequest {
                    graph: graph_input(g)?
                }
            )?;
            emit(json, &info, render::graph);
        }
        Command::Dim { graph, cap } => {
            let basis = call!(&backend, dim, capped(graph, cap)?)?;
            emit(json, &basis, |b| format!("{}\n", b.dimension));
        }
        Command::Outcome { graph, cap } => {
            let o = call!(&backend, outcome, capped(graph, cap)?)?;
            emit(json, &o, |o| format!("{}\n", o.outcome));
        }
        Command::Solve { graph, first, cap } => {
            let req = SolveRequest {
                graph: graph_input(graph)?,
                first: *first,
                cap: cap.cap,
            };
            let s = call!(&backend, solve, req)?;
            emit(json, &s, render::solve);
        }
        Command::Numbers { graph, cap } => {
            let n = call!(&backend, numbers, capped(graph, cap)?)?;
            emit(json, &n, render::numbers);
        }
        Command::Pairing { graph, k, cap } => {
            let req = PairingRequest {
                graph: graph_input(graph)?,
                k: *k,
                cap: cap.cap,
            };
            let p = call!(&backend, pairing, req)?;
            emit(json, &p, render::pairing);
        }
        Command::Strategies { graph } => {
            let list = match &backend {
                Backend::Local => api::strategies(graph.as_deref())?,
                Backend::Remote(c) => c.strategies(graph.as_deref()).await?,
            };
            emit(json, &list, |l| render::strategies(l));
        }
        Command::StrategyValidate {
            graph,
            strategy,
            first,
            cap,
        } => {
            let req = ValidateRequest {
                graph: graph_input(graph)?,
                strategy: strategy.clone(),
                first: *first,
                cap: cap.cap,
            };
            let reports = call!(&backend, validate, req)?;
            emit(json, &reports, |r| render::validation(r));
            if let Some(bad) = reports.iter().find(|r| !r.wins_all()) {
                return Err(CliError::Mismatch(format!(
                    "`{}` loses with {} moving first",
                    bad.strategy, bad.first
                )));
            }
        }
        Command::Theorems => {
            let list = match &backend {
                Backend::Local => api::theorems(),
                Backend::Remote(c) => c.theorems().await?,
            };
            emit(json, &list, |l| render::theorems(l));
        }
        Command::Verify(args) => verify(&backend, args, json).await?,
        Command::Play(args) => play::run(&backend, args).await?,
        Command::Serve(_) => unreachable!("served before dispatch"),
    }
    Ok(())
}

async fn verify(backend: &Backend, args: &VerifyArgs, json: bool) -> Result<(), CliError> {
    let mut config = match &args.config {
        Some(path) => HarnessConfig::load(path)?,
        None => HarnessConfig::default(),
    };
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(cap) = args.cap {
        config.solver_cap = cap;
    }
    let req = VerifyRequest {
        theorem: args.theorem.clone(),
        config: Some(config),
    };
    let outcome = call!(backend, verify, req)?;
    let format = if json {
        ReportFormat::Json
    } else {
        args.format
    };
    let text = report(format, &outcome.cases);
    match &args.out {
        Some(path) => write(path, &text)?,
        None => print!("{text}"),
    }
    let failed = outcome.cases.iter().filter(|c| !c.passed).count();
    eprintln!("{} cases, {failed} failed", outcome.cases.len());
    if failed > 0 {
        return Err(CliError::Mismatch(format!(
            "{failed} verification case(s) did not match"
        )));
    }
    Ok(())
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}
