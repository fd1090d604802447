use std::collections::HashSet;

use mbrg_core::game::{solve, terminal_status, GameState, Move, Player, SolverConfig, Transcript};
use mbrg_core::graph::{parse_graph_expr, CoronaFactors, Graph};
use mbrg_core::resolving::{
    find_pairing_resolving, is_pairing_resolving, is_strictly_locating, PairingSystem,
    ResolvingOracle,
};
use mbrg_core::strategy::{
    build, catalog, memory_after, pick_from_history, validate, CopywiseResolver, Memory,
    PairBlocks, PairingStrategy, Strategy, Validation, DEFAULT_VALIDATION_CAP,
};
use mbrg_core::VertexSet;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const BOTH: [Player; 2] = [Player::Resolver, Player::Spoiler];

fn graph(expr: &str) -> Graph {
    parse_graph_expr(expr).unwrap()
}

fn wins_all(expr: &str, name: &str, first: Player) -> bool {
    let g = graph(expr);
    let s = build(name, &g).unwrap();
    validate(&g, s.as_ref(), first, DEFAULT_VALIDATION_CAP.max(g.order()))
        .unwrap()
        .wins_all()
}

fn counterexample(expr: &str, name: &str, first: Player) -> String {
    let g = graph(expr);
    let s = build(name, &g).unwrap();
    match validate(&g, s.as_ref(), first, DEFAULT_VALIDATION_CAP)
        .unwrap()
        .result
    {
        Validation::Counterexample { transcript } => transcript.to_string(),
        Validation::WinsAll => panic!("{name} unexpectedly wins on {expr}"),
    }
}

#[test]
fn pairing_on_p4_as_corona() {
    for first in BOTH {
        assert!(wins_all("corona(path(2),path(1))", "paths-case1", first));
    }
}

#[test]
fn single_pair_wins_immediately() {
    let g = graph("path(2)");
    let s = PairingStrategy::new("pairing", PairingSystem::new(vec![(0, 1)]).unwrap(), 2);
    for first in BOTH {
        let report = validate(&g, &s, first, 18).unwrap();
        assert!(report.wins_all());
    }
    let state = GameState::new(Player::Resolver);
    let v = s.pick(&state, &Memory::new()).unwrap().vertex;
    let oracle = ResolvingOracle::for_graph(&g);
    assert_eq!(
        terminal_status(&oracle, &state.with_move(Player::Resolver, v)),
        Some(Player::Resolver)
    );
}

#[test]
fn searched_pairing_on_c4() {
    let g = graph("cycle(4)");
    let a = find_pairing_resolving(&g, 2, 14).unwrap().unwrap();
    assert!(is_pairing_resolving(&g, &a).unwrap());
    let s = PairingStrategy::new("pairing", a, 4);
    for first in BOTH {
        assert!(validate(&g, &s, first, 18).unwrap().wins_all());
        assert!(wins_all("cycle(4)", "pairing", first));
    }
}

#[test]
fn copywise_diam2_on_c4_copies() {
    for first in BOTH {
        assert!(wins_all(
            "corona(path(2),cycle(4))",
            "copywise-diam2",
            first
        ));
    }
}

#[test]
fn copywise_diam2_single_copy_of_petersen() {
    let g = graph("corona(k1,petersen)");
    let s = build("copywise-diam2", &g).unwrap();
    for first in BOTH {
        let report = validate(&g, s.as_ref(), first, 18).unwrap();
        assert!(report.wins_all());
    }
    // Resolver never touches the base vertex
    let mut state = GameState::new(Player::Resolver);
    let memory = s.initial_memory();
    state = state.with_move(Player::Resolver, s.pick(&state, &memory).unwrap().vertex);
    assert!(!state.resolver.contains(0));
}

#[test]
fn copywise_diam2_rejects_k1_when_a_fiber_vertex_is_universal() {
    let g = graph("corona(k1,path(3))");
    let err = build("copywise-diam2", &g).unwrap_err().to_string();
    assert!(err.contains("Δ(H)"), "{err}");
}

#[test]
fn paths_theorem_instances() {
    for expr in [
        "corona(path(2),path(6))",
        "corona(path(2),path(7))",
        "corona(path(2),path(3))",
    ] {
        for first in BOTH {
            assert!(wins_all(expr, "paths", first), "{expr} {first}");
        }
    }
}

#[test]
fn paths_rejects_p5_and_cycles_rejects_c3() {
    assert!(build("paths", &graph("corona(path(2),path(5))")).is_err());
    assert!(build("cycles", &graph("corona(path(2),cycle(3))")).is_err());
    assert!(build("paths", &graph("corona(path(2),cycle(6))")).is_err());
}

#[test]
fn cycles_theorem_instances() {
    for expr in [
        "corona(k1,cycle(4))",
        "corona(path(2),cycle(6))",
        "corona(k1,cycle(7))",
        "corona(path(2),cycle(5))",
    ] {
        for first in BOTH {
            assert!(wins_all(expr, "cycles", first), "{expr} {first}");
        }
    }
}

#[test]
fn hint_tag_for_block_transversal() {
    let g = graph("corona(path(2),cycle(6))");
    let s = build("cycles", &g).unwrap();
    let f = g.corona_factors().unwrap();
    let v1 = f.copy_vertex(0, 0);
    let history = [Move {
        player: Player::Spoiler,
        vertex: v1,
    }];
    let pick = pick_from_history(s.as_ref(), Player::Spoiler, &history).unwrap();
    assert_eq!(pick.vertex, f.copy_vertex(0, 1));
    assert_eq!(pick.tag, "block transversal");
}

#[test]
fn spoiler_copy_on_triangles() {
    for first in BOTH {
        assert!(wins_all("corona(path(2),cycle(3))", "spoiler-copy", first));
    }
    assert!(build("spoiler-copy", &graph("corona(k1,cycle(3))")).is_err());
    assert!(build("spoiler-copy", &graph("corona(path(2),cycle(4))")).is_err());
}

#[test]
fn spoiler_p5_lines() {
    for first in BOTH {
        assert!(wins_all("corona(path(2),path(5))", "spoiler-p5", first));
    }
    assert!(wins_all(
        "corona(k1,path(5))",
        "spoiler-p5",
        Player::Spoiler
    ));
    assert_eq!(
        counterexample("corona(k1,path(5))", "spoiler-p5", Player::Resolver),
        "first resolver\nR 1\nS 3\nR 5\n"
    );
    assert!(build("spoiler-p5", &graph("corona(path(2),path(4))")).is_err());
}

#[test]
fn spoiler_p5_opens_in_the_centre() {
    let g = graph("corona(path(2),path(5))");
    let s = build("spoiler-p5", &g).unwrap();
    let pick = s
        .pick(&GameState::new(Player::Spoiler), &s.initial_memory())
        .unwrap();
    assert_eq!(pick.vertex, g.corona_factors().unwrap().copy_vertex(0, 2));
    assert_eq!(pick.tag, "spoiler-p5");
}

#[test]
fn spoiler_wins_inside_a_copy_of_p11() {
    for first in BOTH {
        assert!(
            wins_all("corona(path(2),path(11))", "spoiler-locating", first),
            "{first}"
        );
        assert!(
            wins_all("corona(path(2),path(5))", "spoiler-locating", first),
            "{first}"
        );
    }
    assert!(wins_all(
        "corona(k1,path(11))",
        "spoiler-locating",
        Player::Spoiler
    ));
    assert!(build("spoiler-locating", &graph("corona(path(2),path(7))")).is_err());
    assert!(build("paths", &graph("corona(path(2),path(11))")).is_err());
    assert!(build("paths", &graph("corona(path(2),path(13))")).is_ok());
}

#[test]
fn misapplied_pairing_is_refuted() {
    // the P_4 pairing lifted onto copies of P_5 leaves the last vertex out
    let g = graph("corona(path(2),path(5))");
    let factors = g.corona_factors().unwrap().clone();
    let plan = PairBlocks {
        pairs: vec![(0, 2), (1, 3)],
        base: false,
        tag: "pairing reply",
    };
    let s = CopywiseResolver::new("misapplied", factors, Box::new(plan));
    for first in BOTH {
        let report = validate(&g, &s, first, 18).unwrap();
        let Validation::Counterexample { transcript } = report.result else {
            panic!("misapplied pairing survived");
        };
        let replay = transcript.replay(&ResolvingOracle::for_graph(&g)).unwrap();
        assert_eq!(replay.winner, Some(Player::Spoiler));
    }
}

#[test]
fn literal_odd_path_rule_has_counterexamples() {
    assert_eq!(
        counterexample(
            "corona(path(2),path(7))",
            "paths-case7-literal",
            Player::Spoiler
        ),
        "first spoiler\nS 3\nR 2\nS 6\nR 5\nS 7\nR 8\nS 4\n"
    );
    assert_eq!(
        counterexample(
            "corona(path(2),path(7))",
            "paths-case7-literal",
            Player::Resolver
        ),
        "first resolver\nR 2\nS 6\nR 5\nS 7\nR 8\nS 3\nR 9\nS 4\n"
    );
    for expr in ["corona(k1,path(9))", "corona(k1,path(11))"] {
        assert!(
            !wins_all(expr, "paths-case7-literal", Player::Resolver),
            "{expr}"
        );
    }
}

#[test]
fn literal_odd_cycle_rule_has_counterexamples() {
    for expr in [
        "corona(k1,cycle(7))",
        "corona(path(2),cycle(7))",
        "corona(k1,cycle(9))",
    ] {
        for first in BOTH {
            assert!(
                !wins_all(expr, "cycles-odd-literal", first),
                "{expr} {first}"
            );
            assert!(wins_all(expr, "cycles-odd", first), "{expr} {first}");
        }
    }
}

#[test]
fn counterexamples_replay_to_a_loss() {
    let g = graph("corona(k1,cycle(9))");
    let s = build("cycles-odd-literal", &g).unwrap();
    let Validation::Counterexample { transcript } = validate(&g, s.as_ref(), Player::Resolver, 18)
        .unwrap()
        .result
    else {
        panic!()
    };
    let text = transcript.to_string();
    let parsed: Transcript = text.parse().unwrap();
    assert_eq!(parsed, transcript);
    let replay = parsed.replay(&ResolvingOracle::for_graph(&g)).unwrap();
    assert_eq!(replay.winner, Some(Player::Spoiler));
    // every Resolver move on the line is the strategy's own choice
    for (i, m) in parsed
        .moves
        .iter()
        .enumerate()
        .filter(|(_, m)| m.player == Player::Resolver)
    {
        let pick = pick_from_history(s.as_ref(), parsed.first, &parsed.moves[..i]).unwrap();
        assert_eq!(pick.vertex, m.vertex);
    }
}

/// Strategies whose claims are meant to hold on each instance below.
const AGREEMENT_CORPUS: &[&str] = &[
    "corona(path(2),path(1))",
    "corona(path(2),path(2))",
    "corona(path(2),path(3))",
    "corona(path(2),path(4))",
    "corona(path(2),path(5))",
    "corona(path(2),cycle(3))",
    "corona(path(2),cycle(4))",
    "corona(path(2),cycle(5))",
    "corona(path(2),paw)",
    "corona(path(3),path(2))",
    "corona(path(3),cycle(3))",
    "corona(k1,path(2))",
    "corona(k1,path(3))",
    "corona(k1,path(4))",
    "corona(k1,path(5))",
    "corona(k1,path(6))",
    "corona(k1,path(7))",
    "corona(k1,path(8))",
    "corona(k1,cycle(4))",
    "corona(k1,cycle(5))",
    "corona(k1,cycle(6))",
    "corona(k1,cycle(7))",
    "corona(k1,cycle(8))",
    "corona(k1,petersen)",
    "cycle(4)",
    "path(5)",
];

#[test]
fn strategies_agree_with_the_solver() {
    let mut disagreements = Vec::new();
    for expr in AGREEMENT_CORPUS {
        let g = graph(expr);
        assert!(g.order() <= 12);
        let winners: Vec<Player> = BOTH
            .iter()
            .map(|&first| solve(&g, first, SolverConfig::default()).unwrap().winner)
            .collect();
        for entry in catalog().iter().filter(|e| !e.name.ends_with("-literal")) {
            let Ok(s) = build(entry.name, &g) else {
                continue;
            };
            for (first, winner) in BOTH.into_iter().zip(&winners) {
                let report = validate(&g, s.as_ref(), first, 18).unwrap();
                if report.wins_all() != (*winner == s.role()) {
                    disagreements.push(format!("{expr} {} {first}", entry.name));
                }
            }
        }
    }
    // K1 ⊙ P_3 lies outside the order-two hypothesis of the paths theorem
    assert_eq!(
        disagreements,
        [
            "corona(k1,path(3)) paths spoiler",
            "corona(k1,path(3)) paths-case3 spoiler"
        ]
    );
}

/// Follows `s` against all opponent moves, ignoring wins, until `s` has
/// nothing left to do but fill; calls `at_end` on each such position.
fn for_each_completed_plan(
    g: &Graph,
    s: &dyn Strategy,
    first: Player,
    at_end: &mut dyn FnMut(&GameState),
) {
    let n = g.order();
    let mut seen = HashSet::new();
    let mut stack = vec![(GameState::new(first), s.initial_memory())];
    while let Some((state, memory)) = stack.pop() {
        if !seen.insert((state.resolver, state.spoiler, memory.clone())) {
            continue;
        }
        let mover = state.to_move();
        let moves: Vec<usize> = if mover == s.role() {
            match s.pick(&state, &memory) {
                Some(p) if p.tag != "filler" => vec![p.vertex],
                _ => {
                    at_end(&state);
                    continue;
                }
            }
        } else {
            state.unclaimed(n).to_vec()
        };
        for v in moves {
            let mut m = memory.clone();
            s.observe(&mut m, &state, mover, v);
            stack.push((state.with_move(mover, v), m));
        }
    }
}

/// Follows `s` against all opponent moves and calls `at_end` on each
/// decided position.
fn for_each_ending(g: &Graph, s: &dyn Strategy, first: Player, at_end: &mut dyn FnMut(&GameState)) {
    let oracle = ResolvingOracle::for_graph(g);
    let n = g.order();
    let mut seen = HashSet::new();
    let mut stack = vec![(GameState::new(first), s.initial_memory())];
    while let Some((state, memory)) = stack.pop() {
        if !seen.insert((state.resolver, state.spoiler, memory.clone())) {
            continue;
        }
        if terminal_status(&oracle, &state).is_some() {
            at_end(&state);
            continue;
        }
        let mover = state.to_move();
        let moves: Vec<usize> = if mover == s.role() {
            vec![s.pick(&state, &memory).unwrap().vertex]
        } else {
            state.unclaimed(n).to_vec()
        };
        for v in moves {
            let mut m = memory.clone();
            s.observe(&mut m, &state, mover, v);
            stack.push((state.with_move(mover, v), m));
        }
    }
}

fn copy_set(f: &CoronaFactors, set: VertexSet, copy: usize) -> VertexSet {
    (0..f.fiber_order())
        .filter(|&j| set.contains(f.copy_vertex(copy, j)))
        .collect()
}

#[test]
fn resolver_copies_end_strictly_locating() {
    let cases = [
        ("corona(path(2),path(4))", "paths"),
        ("corona(path(2),path(6))", "paths"),
        ("corona(k1,path(7))", "paths"),
        ("corona(k1,path(9))", "paths"),
        ("corona(k1,cycle(4))", "cycles"),
        ("corona(path(2),cycle(5))", "cycles"),
        ("corona(path(2),cycle(6))", "cycles"),
        ("corona(k1,cycle(9))", "cycles"),
    ];
    for (expr, name) in cases {
        let g = graph(expr);
        let f = g.corona_factors().unwrap().clone();
        let s = build(name, &g).unwrap();
        for first in BOTH {
            let mut endings = 0;
            for_each_completed_plan(&g, s.as_ref(), first, &mut |state| {
                endings += 1;
                for copy in 0..f.base_order() {
                    let local = copy_set(&f, state.resolver, copy);
                    assert!(
                        is_strictly_locating(&f.fiber, local),
                        "{expr} {first} copy {copy}: {local:?}"
                    );
                }
            });
            assert!(endings > 0);
        }
    }
}

#[test]
fn copies_are_only_locating_when_the_game_stops() {
    // with two copies the base vertex is told apart through the other copy,
    // so a copy can stop short of strictly locating
    let g = graph("corona(path(2),path(6))");
    let f = g.corona_factors().unwrap().clone();
    let s = build("paths", &g).unwrap();
    let mut weak = 0;
    for_each_ending(&g, s.as_ref(), Player::Resolver, &mut |state| {
        for c in 0..2 {
            let local = copy_set(&f, state.resolver, c);
            assert!(mbrg_core::resolving::is_locating(&f.fiber, local));
            weak += usize::from(!is_strictly_locating(&f.fiber, local));
        }
    });
    assert!(weak > 0);
}

#[test]
fn short_fibers_need_not_end_strictly_locating() {
    // on P_3 the end vertex alone is not strictly locating: the centre sees it
    let g = graph("corona(path(2),path(3))");
    let f = g.corona_factors().unwrap().clone();
    let s = build("paths", &g).unwrap();
    let mut failing = 0;
    for_each_ending(&g, s.as_ref(), Player::Spoiler, &mut |state| {
        failing += (0..2)
            .filter(|&c| !is_strictly_locating(&f.fiber, copy_set(&f, state.resolver, c)))
            .count();
    });
    assert!(failing > 0);
}

/// Plays `s` against a random opponent that passes with probability
/// `skip`, in which case `s` moves again.
fn skipping_playout(
    g: &Graph,
    s: &dyn Strategy,
    first: Player,
    skip: f64,
    rng: &mut StdRng,
) -> Option<Player> {
    let oracle = ResolvingOracle::for_graph(g);
    let n = g.order();
    let mut state = GameState::new(first);
    let mut memory = s.initial_memory();
    let mut mover = first;
    loop {
        if let Some(w) = terminal_status(&oracle, &state) {
            return Some(w);
        }
        let free = state.unclaimed(n).to_vec();
        if free.is_empty() {
            return None;
        }
        let v = if mover == s.role() {
            s.pick(&state, &memory).unwrap().vertex
        } else if rng.gen_bool(skip) {
            mover = mover.opponent();
            continue;
        } else {
            free[rng.gen_range(0..free.len())]
        };
        s.observe(&mut memory, &state, mover, v);
        state = state.with_move(mover, v);
        mover = mover.opponent();
    }
}

#[test]
fn opponent_passes_never_turn_a_win_into_a_loss() {
    let cases = [
        ("corona(path(2),path(6))", "paths"),
        ("corona(path(2),path(7))", "paths"),
        ("corona(path(3),path(3))", "paths"),
        ("corona(path(2),cycle(7))", "cycles"),
        ("corona(path(2),cycle(4))", "copywise-diam2"),
        ("corona(path(3),cycle(3))", "spoiler-copy"),
        ("corona(path(2),path(5))", "spoiler-p5"),
        ("cycle(6)", "pairing"),
    ];
    let mut rng = StdRng::seed_from_u64(7);
    for (expr, name) in cases {
        let g = graph(expr);
        let s = build(name, &g).unwrap();
        for first in BOTH {
            assert!(
                validate(&g, s.as_ref(), first, 18).unwrap().wins_all(),
                "{expr} {name} {first}"
            );
            for _ in 0..200 {
                let winner = skipping_playout(&g, s.as_ref(), first, 0.3, &mut rng);
                assert_eq!(winner, Some(s.role()), "{expr} {name} {first}");
            }
        }
    }
}

#[test]
fn picks_replay_deterministically() {
    let mut rng = StdRng::seed_from_u64(11);
    for (expr, name) in [
        ("corona(path(2),cycle(7))", "cycles-odd"),
        ("corona(path(3),path(5))", "spoiler-p5"),
    ] {
        let g = graph(expr);
        let s = build(name, &g).unwrap();
        let t = build(name, &g).unwrap();
        for first in BOTH {
            let mut history: Vec<Move> = Vec::new();
            let mut state = GameState::new(first);
            let oracle = ResolvingOracle::for_graph(&g);
            while terminal_status(&oracle, &state).is_none() {
                let player = state.to_move();
                let vertex = if player == s.role() {
                    pick_from_history(s.as_ref(), first, &history)
                        .unwrap()
                        .vertex
                } else {
                    let free = state.unclaimed(g.order()).to_vec();
                    free[rng.gen_range(0..free.len())]
                };
                history.push(Move { player, vertex });
                state = state.with_move(player, vertex);
            }
            for (i, m) in history
                .iter()
                .enumerate()
                .filter(|(_, m)| m.player == s.role())
            {
                let before = &history[..i];
                let again = pick_from_history(t.as_ref(), first, before).unwrap();
                assert_eq!(again.vertex, m.vertex);
                assert_eq!(
                    memory_after(s.as_ref(), first, before),
                    memory_after(t.as_ref(), first, before)
                );
            }
        }
    }
}

#[test]
fn catalog_names_are_unique_and_buildable_somewhere() {
    let names: HashSet<_> = catalog().iter().map(|e| e.name).collect();
    assert_eq!(names.len(), catalog().len());
    let corpus = [
        "cycle(4)",
        "corona(path(2),path(1))",
        "corona(path(2),path(2))",
        "corona(path(2),path(3))",
        "corona(path(2),path(4))",
        "corona(path(2),path(5))",
        "corona(path(2),path(6))",
        "corona(path(2),path(7))",
        "corona(path(2),cycle(3))",
        "corona(path(2),cycle(4))",
        "corona(path(2),cycle(6))",
        "corona(path(2),cycle(7))",
    ];
    for entry in catalog() {
        assert!(
            corpus.iter().any(|e| build(entry.name, &graph(e)).is_ok()),
            "{}",
            entry.name
        );
    }
    assert!(build("no-such", &graph("path(2)")).is_err());
}
