//! Strategies addressable by name.

use serde::Serialize;

use super::copywise::{
    AdjacentPair, CopyPlan, LocalGamePlan, OddCycleAnchored, OddPathTriple, PairBlocks,
};
use super::{
    not_applicable, CopywiseResolver, LocalGame, PairingStrategy, SpoilerCopy, SpoilerP5, Strategy,
    StrategyError, LOCAL_GAME_CAP,
};
use crate::game::{outcome, Outcome, Player, SolverConfig};
use crate::graph::{corona, generate, metrics, CoronaFactors, Family, Graph};
use crate::resolving::{
    find_pairing_resolving, is_locating, is_strictly_locating, ResolvingOracle, DEFAULT_PAIRING_CAP,
};
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub role: Player,
    pub summary: &'static str,
}

const fn entry(name: &'static str, role: Player, summary: &'static str) -> CatalogEntry {
    CatalogEntry {
        name,
        role,
        summary,
    }
}

const CATALOG: &[CatalogEntry] = &[
    entry("pairing", Player::Resolver, "pairing resolving set found by search; answer each endpoint with its partner"),
    entry("paths", Player::Resolver, "G ⊙ P_k for k ≠ 5, dispatching to the case below"),
    entry("paths-case1", Player::Resolver, "G ⊙ P_1: pairs {base, pendant}"),
    entry("paths-case2", Player::Resolver, "G ⊙ P_2: pairs {v1, v2} per copy"),
    entry("paths-case3", Player::Resolver, "G ⊙ P_3: one end vertex per copy via pairs {v1, v3}"),
    entry("paths-case4", Player::Resolver, "G ⊙ P_4: pairs {v1, v3}, {v2, v4} per copy"),
    entry("paths-case6", Player::Resolver, "G ⊙ P_2l, l ≥ 3: one vertex of every block {v2j-1, v2j}"),
    entry("paths-case7", Player::Resolver, "G ⊙ P_2l+1, l ≥ 3: exact strictly-locating game per copy"),
    entry("paths-case7-literal", Player::Resolver, "G ⊙ P_2l+1: pair blocks plus the end triple rules as stated"),
    entry("cycles", Player::Resolver, "G ⊙ C_k for k ≥ 4, dispatching to the regime below"),
    entry("cycles-small", Player::Resolver, "G ⊙ C_4, G ⊙ C_5: two adjacent vertices per copy"),
    entry("cycles-even", Player::Resolver, "G ⊙ C_2l, l ≥ 3: one vertex of every block {v2j-1, v2j}"),
    entry("cycles-odd", Player::Resolver, "G ⊙ C_2l+1, l ≥ 3: exact strictly-locating game per copy"),
    entry("cycles-odd-literal", Player::Resolver, "G ⊙ C_2l+1: anchored blocks with the Z′ triple rules as stated"),
    entry("copywise-diam2", Player::Resolver, "o(H) = R and diam(H) ≤ 2 (for n(G) = 1 also Δ(H) ≤ n(H) − 2): win the game on H in every copy"),
    entry("copywise-k1", Player::Resolver, "o(K1 ⊙ H) = R: win the game on K1 ⊙ H in every copy"),
    entry("spoiler-copy", Player::Spoiler, "o(H) ∈ {N, S}: win the game on H inside one copy"),
    entry("spoiler-p5", Player::Spoiler, "G ⊙ P_5: centre first, then the mirrored replies"),
    entry("spoiler-locating", Player::Spoiler, "Spoiler wins the locating game on H moving first: win it inside one copy"),
];

pub fn catalog() -> &'static [CatalogEntry] {
    CATALOG
}

/// Whether a catalog strategy can be built for a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Applicability {
    #[serde(flatten)]
    pub entry: CatalogEntry,
    pub applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl Applicability {
    pub fn for_graph(g: &Graph) -> Vec<Applicability> {
        CATALOG
            .iter()
            .map(|&entry| {
                let reason = build(entry.name, g).err().map(|e| match e {
                    StrategyError::NotApplicable { reason, .. } => reason,
                    other => other.to_string(),
                });
                Applicability {
                    entry,
                    applicable: reason.is_none(),
                    reason,
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Fiber {
    Path(usize),
    Cycle(usize),
    Other,
}

fn fiber_of(factors: &CoronaFactors) -> Fiber {
    let h = &factors.fiber;
    let k = h.order();
    let is = |family, args: &[usize]| generate(family, args).is_ok_and(|f| f.same_structure(h));
    if is(Family::Path, &[k]) {
        Fiber::Path(k)
    } else if k >= 3 && is(Family::Cycle, &[k]) {
        Fiber::Cycle(k)
    } else {
        Fiber::Other
    }
}

fn factors_of(name: &str, g: &Graph) -> Result<CoronaFactors, StrategyError> {
    g.corona_factors()
        .cloned()
        .ok_or_else(|| not_applicable(name, "needs a corona product G ⊙ H"))
}

fn copywise(
    name: &str,
    factors: CoronaFactors,
    plan: impl CopyPlan + 'static,
) -> Box<dyn Strategy> {
    Box::new(CopywiseResolver::new(name, factors, Box::new(plan)))
}

fn pairs(pairs: &[(usize, usize)], tag: &'static str) -> PairBlocks {
    PairBlocks {
        pairs: pairs.to_vec(),
        base: false,
        tag,
    }
}

fn block_pairs(k: usize) -> PairBlocks {
    let blocks: Vec<_> = (0..k / 2).map(|j| (2 * j, 2 * j + 1)).collect();
    pairs(&blocks, "block transversal")
}

/// Local game on the copy whose goal is a strictly locating set of `h`,
/// provided Resolver wins it when Spoiler opens in the copy.
fn strictly_locating_game(name: &str, h: &Graph) -> Result<LocalGame, StrategyError> {
    let game = LocalGame::new(h.order(), |r| is_strictly_locating(h, r));
    if game.resolver_wins_waiting(VertexSet::EMPTY, VertexSet::EMPTY) {
        Ok(game)
    } else {
        Err(not_applicable(
            name,
            "Spoiler wins the strictly locating game on H when she opens in the copy",
        ))
    }
}

fn solver_outcome(name: &str, g: &Graph) -> Result<Outcome, StrategyError> {
    outcome(g, SolverConfig::default())
        .map_err(|e| not_applicable(name, format!("cannot solve the factor: {e}")))
}

fn local_cap(name: &str, order: usize) -> Result<(), StrategyError> {
    if order > LOCAL_GAME_CAP {
        Err(not_applicable(
            name,
            format!("copy order {order} exceeds the local game cap {LOCAL_GAME_CAP}"),
        ))
    } else {
        Ok(())
    }
}

/// Builds the named strategy for `g`, checking its preconditions.
pub fn build(name: &str, g: &Graph) -> Result<Box<dyn Strategy>, StrategyError> {
    let needs = |ok: bool, reason: &str| {
        if ok {
            Ok(())
        } else {
            Err(not_applicable(name, reason))
        }
    };
    match name {
        "pairing" => {
            let n = g.order();
            for k in 1..=n / 2 {
                if let Some(a) = find_pairing_resolving(g, k, DEFAULT_PAIRING_CAP)? {
                    return Ok(Box::new(PairingStrategy::new(name, a, n)));
                }
            }
            Err(not_applicable(name, "no pairing resolving set exists"))
        }
        "paths" | "cycles" => {
            let factors = factors_of(name, g)?;
            let target = match (name, fiber_of(&factors)) {
                ("paths", Fiber::Path(5)) => {
                    return Err(not_applicable(name, "Spoiler wins on G ⊙ P_5"))
                }
                ("paths", Fiber::Path(k)) => match k {
                    1 => "paths-case1",
                    2 => "paths-case2",
                    3 => "paths-case3",
                    4 => "paths-case4",
                    k if k % 2 == 0 => "paths-case6",
                    _ => "paths-case7",
                },
                ("cycles", Fiber::Cycle(3)) => {
                    return Err(not_applicable(name, "Spoiler wins on G ⊙ C_3"))
                }
                ("cycles", Fiber::Cycle(k)) => match k {
                    4 | 5 => "cycles-small",
                    k if k % 2 == 0 => "cycles-even",
                    _ => "cycles-odd",
                },
                _ => {
                    return Err(not_applicable(
                        name,
                        format!("second factor is not a {}", &name[..name.len() - 1]),
                    ))
                }
            };
            build(target, g)
        }
        "paths-case1"
        | "paths-case2"
        | "paths-case3"
        | "paths-case4"
        | "paths-case6"
        | "paths-case7"
        | "paths-case7-literal"
        | "spoiler-p5" => {
            let factors = factors_of(name, g)?;
            let Fiber::Path(k) = fiber_of(&factors) else {
                return Err(not_applicable(name, "second factor must be a path"));
            };
            match name {
                "paths-case1" => {
                    needs(k == 1, "needs P_1")?;
                    let plan = PairBlocks {
                        pairs: vec![(1, 0)],
                        base: true,
                        tag: "pairing reply",
                    };
                    Ok(copywise(name, factors, plan))
                }
                "paths-case2" => {
                    needs(k == 2, "needs P_2")?;
                    Ok(copywise(name, factors, pairs(&[(0, 1)], "pairing reply")))
                }
                "paths-case3" => {
                    needs(k == 3, "needs P_3")?;
                    Ok(copywise(name, factors, pairs(&[(0, 2)], "end vertex")))
                }
                "paths-case4" => {
                    needs(k == 4, "needs P_4")?;
                    Ok(copywise(
                        name,
                        factors,
                        pairs(&[(0, 2), (1, 3)], "pairing reply"),
                    ))
                }
                "paths-case6" => {
                    needs(k >= 6 && k % 2 == 0, "needs P_k with k even, k ≥ 6")?;
                    Ok(copywise(name, factors, block_pairs(k)))
                }
                "paths-case7" => {
                    needs(k >= 7 && k % 2 == 1, "needs P_k with k odd, k ≥ 7")?;
                    local_cap(name, k)?;
                    let game = strictly_locating_game(name, &factors.fiber)?;
                    Ok(copywise(
                        name,
                        factors,
                        LocalGamePlan {
                            game,
                            base: false,
                            tag: "locating game",
                        },
                    ))
                }
                "paths-case7-literal" => {
                    needs(k >= 7 && k % 2 == 1, "needs P_k with k odd, k ≥ 7")?;
                    Ok(copywise(name, factors, OddPathTriple { k }))
                }
                _ => {
                    needs(k == 5, "needs P_5")?;
                    Ok(Box::new(SpoilerP5::new(factors)))
                }
            }
        }
        "cycles-small" | "cycles-even" | "cycles-odd" | "cycles-odd-literal" => {
            let factors = factors_of(name, g)?;
            let Fiber::Cycle(k) = fiber_of(&factors) else {
                return Err(not_applicable(name, "second factor must be a cycle"));
            };
            match name {
                "cycles-small" => {
                    needs(k == 4 || k == 5, "needs C_4 or C_5")?;
                    Ok(copywise(name, factors, AdjacentPair { k }))
                }
                "cycles-even" => {
                    needs(k >= 6 && k % 2 == 0, "needs C_k with k even, k ≥ 6")?;
                    Ok(copywise(name, factors, block_pairs(k)))
                }
                "cycles-odd" => {
                    needs(k >= 7 && k % 2 == 1, "needs C_k with k odd, k ≥ 7")?;
                    local_cap(name, k)?;
                    let game = strictly_locating_game(name, &factors.fiber)?;
                    Ok(copywise(
                        name,
                        factors,
                        LocalGamePlan {
                            game,
                            base: false,
                            tag: "locating game",
                        },
                    ))
                }
                _ => {
                    needs(k >= 7 && k % 2 == 1, "needs C_k with k odd, k ≥ 7")?;
                    Ok(copywise(name, factors, OddCycleAnchored { k }))
                }
            }
        }
        "copywise-diam2" => {
            let factors = factors_of(name, g)?;
            let h = factors.fiber.clone();
            let m = metrics(&h);
            needs(
                h.order() >= 2 && m.connected,
                "H must be connected with at least two vertices",
            )?;
            needs(m.diameter <= 2, "needs diam(H) ≤ 2")?;
            if factors.base_order() == 1 {
                // no other copy tells the base apart from a vertex of H
                // adjacent to all of H
                needs(
                    m.diameter == 2 && m.max_degree + 2 <= h.order(),
                    "with n(G) = 1 needs diam(H) = 2 and Δ(H) ≤ n(H) − 2",
                )?;
            }
            local_cap(name, h.order())?;
            needs(solver_outcome(name, &h)? == Outcome::R, "needs o(H) = R")?;
            let oracle = ResolvingOracle::for_graph(&h);
            let game = LocalGame::new(h.order(), |r| oracle.resolves(r));
            Ok(copywise(
                name,
                factors,
                LocalGamePlan {
                    game,
                    base: false,
                    tag: "optimal in copy",
                },
            ))
        }
        "copywise-k1" => {
            let factors = factors_of(name, g)?;
            let h = factors.fiber.clone();
            local_cap(name, h.order() + 1)?;
            let k1h = corona(&generate(Family::K1, &[])?, &h)?;
            needs(
                solver_outcome(name, &k1h)? == Outcome::R,
                "needs o(K1 ⊙ H) = R",
            )?;
            let oracle = ResolvingOracle::for_graph(&k1h);
            let nh = h.order();
            // Local index nh is the base; in K1 ⊙ H the base is 0 and copy
            // vertex j is j + 1.
            let to_k1h = move |r: VertexSet| {
                let copy = r.bits() & ((1u64 << nh) - 1);
                VertexSet::from_bits((copy << 1) | u64::from(r.contains(nh)))
            };
            let game = LocalGame::new(nh + 1, |r| oracle.resolves(to_k1h(r)));
            Ok(copywise(
                name,
                factors,
                LocalGamePlan {
                    game,
                    base: true,
                    tag: "optimal in copy",
                },
            ))
        }
        "spoiler-copy" => {
            let factors = factors_of(name, g)?;
            let h = factors.fiber.clone();
            needs(factors.base_order() >= 2, "needs n(G) ≥ 2")?;
            needs(
                h.order() >= 2 && h.is_connected(),
                "H must be connected with at least two vertices",
            )?;
            local_cap(name, h.order())?;
            needs(
                solver_outcome(name, &h)? != Outcome::R,
                "needs o(H) ∈ {N, S}",
            )?;
            let oracle = ResolvingOracle::for_graph(&h);
            let game = LocalGame::new(h.order(), |r| oracle.resolves(r));
            Ok(Box::new(SpoilerCopy::new(name, factors, game)))
        }
        "spoiler-locating" => {
            let factors = factors_of(name, g)?;
            let h = factors.fiber.clone();
            needs(h.order() >= 2, "H needs at least two vertices")?;
            local_cap(name, h.order())?;
            // two vertices of one copy are separated only inside that copy
            let game = LocalGame::new(h.order(), |r| is_locating(&h, r));
            let none = VertexSet::EMPTY;
            needs(
                !game.resolver_wins_waiting(none, none),
                "Resolver wins the locating game on H as second player",
            )?;
            Ok(Box::new(SpoilerCopy::new(name, factors, game)))
        }
        other => Err(StrategyError::Unknown(other.to_string())),
    }
}
