use std::time::{Duration, Instant};

use mbrg_core::game::{solve, Move, SolverConfig, Transcript};
use mbrg_core::graph::parse_graph_expr;
use mbrg_core::resolving::{is_resolving, ResolvingOracle};
use mbrg_core::session::{
    Engine, Session, SessionConfig, SessionDocument, SessionError, Status, OPTIMAL_TAG,
};
use mbrg_core::{Player, VertexSet};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use Player::{Resolver, Spoiler};

fn config(graph: &str, human: Player, first: Player, engine: &str) -> SessionConfig {
    SessionConfig {
        graph: graph.into(),
        human,
        first,
        engine: engine.parse().unwrap(),
    }
}

fn session(graph: &str, human: Player, first: Player, engine: &str) -> Session {
    Session::new("t", config(graph, human, first, engine)).unwrap()
}

fn at(graph: &str, human: Player, first: Player, moves: &[(Player, usize)]) -> Session {
    let moves = moves
        .iter()
        .map(|&(player, vertex)| Move { player, vertex })
        .collect();
    let doc = SessionDocument {
        id: "t".into(),
        config: config(graph, human, first, "optimal"),
        transcript: Transcript { first, moves },
    };
    Session::from_document(doc).unwrap()
}

fn free(s: &Session) -> Vec<usize> {
    s.state().unclaimed(s.graph().order()).to_vec()
}

#[test]
fn engine_opens_when_it_moves_first() {
    let s = session("corona(path(2),cycle(4))", Spoiler, Resolver, "optimal");
    let v = s.view();
    assert_eq!(v.transcript.len(), 1);
    assert_eq!(v.transcript[0].player, Resolver);
    assert_eq!(v.to_move, Some(Spoiler));
    assert_eq!(v.layout.len(), 10);
    assert_eq!(v.labels.as_ref().map(Vec::len), Some(10));
}

#[test]
fn creation_errors() {
    let err = Session::new("t", config("cycle(2)", Resolver, Resolver, "optimal")).unwrap_err();
    assert_eq!(err.code(), "invalid-graph");
    let err = Session::new(
        "t",
        config("corona(path(3),path(6))", Resolver, Resolver, "optimal"),
    )
    .unwrap_err();
    assert_eq!(err.code(), "too-large");
    let err = Session::new(
        "t",
        config("corona(path(2),path(7))", Resolver, Resolver, "optimal"),
    )
    .unwrap_err();
    assert_eq!(err.code(), "invalid-engine");
    let err = Session::new(
        "t",
        config("corona(path(2),path(5))", Spoiler, Resolver, "spoiler-p5"),
    )
    .unwrap_err();
    assert_eq!(err.code(), "invalid-engine");
    let err = Session::new(
        "t",
        config("corona(path(2),path(5))", Resolver, Resolver, "nope"),
    )
    .unwrap_err();
    assert_eq!(err.code(), "invalid-strategy");
    assert!("".parse::<Engine>().is_err());
    assert_eq!(
        "strategy:paths".parse::<Engine>().unwrap(),
        Engine::Strategy("paths".into())
    );
}

#[test]
fn strategy_engine_beats_every_random_resolver_on_p5_copies() {
    for seed in 0..20 {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut s = session("corona(path(2),path(5))", Resolver, Resolver, "spoiler-p5");
        while s.winner().is_none() {
            let v = *free(&s).choose(&mut rng).unwrap();
            s.play(v).unwrap();
        }
        assert_eq!(s.winner(), Some(Spoiler), "seed {seed}");
        let view = s.view();
        assert_eq!(view.status, Status::Finished);
        assert!(!view.meters.complement_resolving);
        assert_eq!(view.meters.spoiler_meter, "killed");
    }
}

#[test]
fn move_errors() {
    let mut s = session("path(4)", Resolver, Spoiler, "optimal");
    let engine_vertex = s.view().transcript[0].vertex;
    let err = s.play(engine_vertex).unwrap_err();
    assert!(matches!(err, SessionError::Claimed(v) if v == engine_vertex));
    assert!(err.is_conflict());
    assert_eq!(s.play(9).unwrap_err().code(), "out-of-range");
    assert_eq!(s.view().transcript.len(), 1);
}

#[test]
fn winning_human_move() {
    let mut s = session("path(2)", Resolver, Resolver, "optimal");
    s.play(0).unwrap();
    assert_eq!(s.winner(), Some(Resolver));
    assert!(is_resolving(s.graph(), s.state().resolver));
    assert!(matches!(s.play(1), Err(SessionError::GameOver)));
    let err = s.hint(None).unwrap_err();
    assert_eq!(err.to_string(), "game over");
}

#[test]
fn meters_and_undo() {
    let mut s = session("path(2)", Resolver, Resolver, "optimal");
    let fresh = s.view();
    assert_eq!(fresh.meters.unresolved_pairs, 1);
    assert_eq!(fresh.meters.spoiler_meter, "alive");
    assert!(matches!(s.undo(), Err(SessionError::NothingToUndo)));
    s.play(1).unwrap();
    assert_eq!(s.view().meters.unresolved_pairs, 0);
    s.undo().unwrap();
    assert_eq!(s.view(), fresh);
}

#[test]
fn undo_pops_the_engine_reply_too() {
    let mut s = session("cycle(6)", Resolver, Resolver, "optimal");
    s.play(0).unwrap();
    let after_one = s.view();
    assert_eq!(after_one.transcript.len(), 2);
    s.play(free(&s)[0]).unwrap();
    s.undo().unwrap();
    assert_eq!(s.view(), after_one);
    s.undo().unwrap();
    assert!(s.view().transcript.is_empty());
}

#[test]
fn strategy_hints_carry_mechanism_tags() {
    // Spoiler took v1 of the first copy (vertex 2); the block partner is v2.
    let mut s = at(
        "corona(path(2),cycle(6))",
        Resolver,
        Spoiler,
        &[(Spoiler, 2)],
    );
    let h = s.hint(Some("cycles")).unwrap();
    assert_eq!((h.vertex, h.tag.as_str()), (3, "block transversal"));
    assert_eq!(h.predicted_winner, Some(Resolver));

    let mut s = session("corona(path(2),path(5))", Spoiler, Spoiler, "optimal");
    let h = s.hint(Some("spoiler-p5")).unwrap();
    assert_eq!((h.vertex, h.tag.as_str()), (4, "spoiler-p5"));

    let h = s.hint(None).unwrap();
    assert_eq!(h.tag, OPTIMAL_TAG);
    assert_eq!(h.predicted_winner, Some(Spoiler));
    assert!(s.hint(Some("paths")).is_err());
}

#[test]
fn hints_above_the_solver_cap() {
    let mut s = session("corona(path(2),path(8))", Spoiler, Resolver, "paths");
    assert_eq!(s.state().resolver.len(), 1);
    assert!(matches!(
        s.hint(None),
        Err(SessionError::HintUnavailable(_))
    ));
    assert!(matches!(
        s.hint(Some("optimal")),
        Err(SessionError::HintUnavailable(_))
    ));
    let mut s = session("corona(path(3),path(5))", Resolver, Resolver, "spoiler-p5");
    assert!(matches!(
        s.hint(None),
        Err(SessionError::HintUnavailable(_))
    ));
    let err = s.hint(Some("spoiler-p5")).unwrap_err();
    assert!(matches!(err, SessionError::HintUnavailable(_)), "{err}");
}

/// Follows hints for the human against every opponent line.
fn hints_hold(s: &mut Session, expected: Player, lines: &mut usize) {
    if let Some(w) = s.winner() {
        assert_eq!(w, expected, "{}", s.transcript());
        *lines += 1;
        return;
    }
    let mover = s.state().to_move();
    let doc = s.document();
    let choices = if mover == s.config().human {
        vec![s.hint(None).unwrap().vertex]
    } else {
        free(s)
    };
    for v in choices {
        let mut next = doc.clone();
        next.transcript.moves.push(Move {
            player: mover,
            vertex: v,
        });
        hints_hold(&mut Session::from_document(next).unwrap(), expected, lines);
    }
}

#[test]
fn hints_never_lose_a_won_position() {
    for graph in [
        "path(4)",
        "cycle(5)",
        "paw",
        "star(3)",
        "corona(path(2),path(2))",
        "corona(k1,cycle(4))",
        "corona(path(2),cycle(3))",
    ] {
        let g = parse_graph_expr(graph).unwrap();
        for human in [Resolver, Spoiler] {
            for first in [Resolver, Spoiler] {
                let value = solve(&g, first, SolverConfig::default()).unwrap();
                if value.winner != human {
                    continue;
                }
                let mut lines = 0;
                hints_hold(&mut at(graph, human, first, &[]), human, &mut lines);
                assert!(lines > 0);
            }
        }
    }
}

#[test]
fn documents_replay_to_the_same_view() {
    let mut rng = StdRng::seed_from_u64(3);
    let mut s = session("corona(path(2),cycle(4))", Resolver, Spoiler, "optimal");
    while s.winner().is_none() {
        let v = *free(&s).choose(&mut rng).unwrap();
        s.play(v).unwrap();
    }
    let json = serde_json::to_string(&s.document()).unwrap();
    let back = Session::from_document(serde_json::from_str(&json).unwrap()).unwrap();
    assert_eq!(back.view(), s.view());
    let replay = s
        .transcript()
        .replay(&ResolvingOracle::for_graph(s.graph()))
        .unwrap();
    assert_eq!(replay.winner, s.winner());
}

#[test]
fn tampered_documents_are_rejected() {
    let mut doc = session("path(4)", Resolver, Resolver, "optimal").document();
    doc.transcript.moves.push(Move {
        player: Spoiler,
        vertex: 0,
    });
    assert_eq!(
        Session::from_document(doc).unwrap_err().code(),
        "invalid-transcript"
    );
}

#[test]
fn engine_replies_quickly_at_the_solver_cap() {
    let mut s = session("corona(path(2),path(6))", Resolver, Resolver, "optimal");
    let start = Instant::now();
    s.play(2).unwrap();
    assert!(
        start.elapsed() < Duration::from_secs(2),
        "{:?}",
        start.elapsed()
    );
    assert_eq!(s.state().spoiler.len(), 1);
    assert_eq!(s.state().resolver, VertexSet::singleton(2));
}
