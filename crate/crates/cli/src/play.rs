//! Line-driven play: a vertex number claims it; `hint [strategy]`, `undo`,
//! `show` and `quit` do what they say.

use std::io::BufRead;

use mbrg_client::Client;
use mbrg_core::api::ApiError;
use mbrg_core::session::{Hint, Session, SessionConfig, SessionView, Status};

use crate::args::PlayArgs;
use crate::backend::{graph_input, Backend};
use crate::CliError;

enum Game<'a> {
    Local(Box<Session>),
    Remote(&'a Client, String),
}

impl Game<'_> {
    async fn view(&self) -> Result<SessionView, CliError> {
        match self {
            Game::Local(s) => Ok(s.view()),
            Game::Remote(c, id) => Ok(c.session(id).await?),
        }
    }

    async fn play(&mut self, v: usize) -> Result<SessionView, CliError> {
        match self {
            Game::Local(s) => {
                s.play(v).map_err(ApiError::from)?;
                Ok(s.view())
            }
            Game::Remote(c, id) => Ok(c.play(id, v).await?),
        }
    }

    async fn undo(&mut self) -> Result<SessionView, CliError> {
        match self {
            Game::Local(s) => {
                s.undo().map_err(ApiError::from)?;
                Ok(s.view())
            }
            Game::Remote(c, id) => Ok(c.undo(id).await?),
        }
    }

    async fn hint(&mut self, strategy: Option<&str>) -> Result<Hint, CliError> {
        match self {
            Game::Local(s) => Ok(s.hint(strategy).map_err(ApiError::from)?),
            Game::Remote(c, id) => Ok(c.hint(id, strategy).await?),
        }
    }
}

fn board(v: &SessionView) -> String {
    let set = |vs: &[usize]| {
        vs.iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(",")
    };
    let mut line = format!(
        "resolver={{{}}} spoiler={{{}}}",
        set(&v.resolver),
        set(&v.spoiler)
    );
    match (v.status, v.to_move, v.winner) {
        (Status::Finished, _, Some(w)) => line += &format!(" winner={w}"),
        (_, Some(p), _) => {
            line += &format!(
                " to_move={p} unresolved_pairs={}",
                v.meters.unresolved_pairs
            )
        }
        _ => {}
    }
    line
}

pub async fn run(backend: &Backend, args: &PlayArgs) -> Result<(), CliError> {
    let config = SessionConfig {
        graph: graph_input(&args.graph)?,
        human: args.human,
        first: args.first,
        engine: args.engine.clone(),
    };
    let mut game = match backend {
        Backend::Local => Game::Local(Box::new(
            Session::new("local", config).map_err(ApiError::from)?,
        )),
        Backend::Remote(c) => Game::Remote(c, c.create_session(&config).await?.id),
    };
    let mut view = game.view().await?;
    eprintln!(
        "vertices 0-{}; you are {}",
        view.order.saturating_sub(1),
        view.human
    );
    println!("{}", board(&view));
    for line in std::io::stdin().lock().lines() {
        if view.status == Status::Finished {
            break;
        }
        let line = line.map_err(|source| CliError::Io {
            path: "stdin".into(),
            source,
        })?;
        let mut words = line.split_whitespace();
        let result = match words.next() {
            None => continue,
            Some("quit" | "q") => break,
            Some("show") => game.view().await,
            Some("undo") => game.undo().await,
            Some("hint") => match game.hint(words.next()).await {
                Ok(h) => {
                    println!("hint vertex={} tag={}", h.vertex, h.tag);
                    continue;
                }
                Err(e) => Err(e),
            },
            Some(word) => match word.parse() {
                Ok(v) => game.play(v).await,
                Err(_) => Err(CliError::Usage(format!(
                    "expected a vertex, hint, undo, show or quit; got `{word}`"
                ))),
            },
        };
        match result {
            Ok(next) => {
                view = next;
                println!("{}", board(&view));
            }
            Err(e) => eprintln!("{e}"),
        }
    }
    if view.status == Status::Finished {
        let moves: Vec<String> = view
            .transcript
            .iter()
            .map(|m| format!("{} {}", m.player, m.vertex))
            .collect();
        println!("transcript: {}", moves.join(", "));
    }
    Ok(())
}
