use std::fmt::Display;

use rand::rngs::StdRng;
use rand::SeedableRng;

use super::{Check, HarnessConfig, HarnessError, Job, Method};
use crate::game::{game_numbers, outcome, GameNumbers, Outcome, Player, SolverConfig};
use crate::graph::{distances, metrics, parse_graph_expr, CoronaLabel, Graph, UNREACHABLE};
use crate::resolving::{
    is_resolving, is_resolving_with, is_strictly_locating, metric_dimension, resolves_within,
    ResolvingOracle, DEFAULT_DIMENSION_CAP,
};
use crate::strategy::{build, random_playouts, validate, Strategy, StrategyError, Validation};
use crate::vertex_set::VertexSet;

/// Orders up to this are swept over all vertex subsets.
const SUBSET_SWEEP_CAP: usize = 20;

pub(crate) fn jobs(id: &str, config: &HarnessConfig) -> Result<Vec<Job>, HarnessError> {
    let c = &config.corpora;
    let mut jobs: Vec<Job> = Vec::new();
    match id {
        "transversal-lemma" => {
            for &l in &c.transversal_l {
                for family in ["path", "cycle"] {
                    jobs.push(Box::new(move |_, _| {
                        Ok(vec![transversals(
                            &format!("{family}({})", 2 * l),
                            l,
                            true,
                        )?])
                    }));
                }
            }
            jobs.push(Box::new(|_, _| {
                Ok(vec![transversals("path(4)", 2, false)?])
            }));
        }
        "k1-equivalence" => {
            for h in c.equivalence.clone() {
                jobs.push(Box::new(move |_, _| Ok(vec![k1_equivalence(&h)?])));
            }
        }
        "restriction" => {
            for (g, h) in pairs(&c.path_bases, &c.fibers) {
                jobs.push(Box::new(move |_, _| restriction(&g, &h)));
            }
        }
        "pairing" => {
            for g in c.pairing.clone() {
                jobs.push(Box::new(move |cfg, seed| pairing(&g, cfg, seed)));
            }
        }
        "paths" => {
            for g in c.path_bases.clone() {
                for &k in &c.path_k {
                    let (expected, strategy) = if k == 5 {
                        (Outcome::S, "spoiler-p5")
                    } else {
                        (Outcome::R, "paths")
                    };
                    let inst = format!("corona({g},path({k}))");
                    jobs.push(Box::new(move |cfg, seed| {
                        outcome_checks(&inst, expected, Some(strategy), cfg, seed)
                    }));
                }
            }
        }
        "paths-k11" => {
            jobs.push(Box::new(|cfg, seed| {
                outcome_checks("corona(k1,path(11))", Outcome::R, None, cfg, seed)
            }));
            jobs.push(Box::new(|cfg, _| {
                Ok(vec![refuting_validation(
                    "corona(path(2),path(11))",
                    Outcome::R,
                    "spoiler-locating",
                    cfg,
                )?])
            }));
        }
        "k1-paths" => {
            for &k in &c.k1_path_k {
                let expected = if k == 2 || k == 5 {
                    Outcome::N
                } else {
                    Outcome::R
                };
                let inst = format!("corona(k1,path({k}))");
                jobs.push(Box::new(move |cfg, seed| {
                    outcome_checks(&inst, expected, None, cfg, seed)
                }));
            }
        }
        "cycles" => {
            for g in c.cycle_bases.clone() {
                for &k in &c.cycle_k {
                    let (expected, strategy) = if k == 3 {
                        (Outcome::S, "spoiler-copy")
                    } else {
                        (Outcome::R, "cycles")
                    };
                    let inst = format!("corona({g},cycle({k}))");
                    jobs.push(Box::new(move |cfg, seed| {
                        outcome_checks(&inst, expected, Some(strategy), cfg, seed)
                    }));
                }
            }
        }
        "paw" => {
            jobs.push(Box::new(|cfg, seed| {
                outcome_checks("paw", Outcome::R, None, cfg, seed)
            }));
            jobs.push(Box::new(|cfg, seed| {
                outcome_checks("corona(k1,paw)", Outcome::N, None, cfg, seed)
            }));
        }
        "spoiler-copy" => {
            for h in ["cycle(3)", "star(3)"] {
                jobs.push(Box::new(move |cfg, seed| spoiler_copy(h, cfg, seed)));
            }
        }
        "sufficient-conditions" => {
            for h in ["cycle(4)", "cycle(5)", "paw", "path(3)"] {
                jobs.push(Box::new(move |cfg, seed| sufficient(h, false, cfg, seed)));
            }
            for h in ["path(3)", "path(4)", "cycle(4)"] {
                jobs.push(Box::new(move |cfg, seed| sufficient(h, true, cfg, seed)));
            }
        }
        "move-count" => {
            for h in ["cycle(4)", "paw", "cycle(5)"] {
                jobs.push(Box::new(move |cfg, _| move_count("path(2)", h, cfg)));
            }
        }
        "k1-diam2" => {
            for h in ["petersen", "cycle(4)", "cycle(5)"] {
                jobs.push(Box::new(move |cfg, _| k1_diam2(h, cfg)));
            }
        }
        "sandwich" => {
            for (g, h) in pairs(&c.path_bases, &c.fibers) {
                jobs.push(Box::new(move |cfg, _| sandwich(&g, &h, cfg)));
            }
        }
        "invariants" => {
            for inst in invariant_corpus() {
                jobs.push(Box::new(move |cfg, _| invariants(&inst, cfg)));
            }
        }
        other => return Err(HarnessError::UnknownTheorem(other.to_string())),
    }
    Ok(jobs)
}

fn pairs(a: &[String], b: &[String]) -> Vec<(String, String)> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| (x.clone(), y.clone())))
        .collect()
}

/// Every instance solved in the acceptance corpus of the other campaigns.
pub(crate) fn invariant_corpus() -> Vec<String> {
    let mut v: Vec<String> = (1..=6)
        .map(|k| format!("corona(path(2),path({k}))"))
        .collect();
    v.extend((2..=7).map(|k| format!("corona(k1,path({k}))")));
    for g in ["k1", "path(2)"] {
        v.extend((3..=5).map(|k| format!("corona({g},cycle({k}))")));
    }
    v.extend(
        [
            "paw",
            "corona(k1,paw)",
            "cycle(3)",
            "cycle(4)",
            "petersen",
            "corona(k1,petersen)",
        ]
        .map(String::from),
    );
    v
}

fn parse(expr: &str) -> Result<Graph, HarnessError> {
    Ok(parse_graph_expr(expr)?)
}

fn case_error(instance: &str, message: impl Into<String>) -> HarnessError {
    HarnessError::Case {
        instance: instance.to_string(),
        message: message.into(),
    }
}

fn solver(config: &HarnessConfig) -> SolverConfig {
    SolverConfig {
        cap: config.solver_cap,
        heuristic_order: config.heuristic_order,
    }
}

fn check(
    instance: &str,
    expected: impl Display,
    got: impl Display,
    method: Method,
    passed: bool,
) -> Check {
    Check {
        instance: instance.to_string(),
        expected: expected.to_string(),
        got: got.to_string(),
        method,
        strategy: None,
        passed,
    }
}

fn same(instance: &str, expected: impl Display, got: impl Display, method: Method) -> Check {
    let (e, g) = (expected.to_string(), got.to_string());
    let passed = e == g;
    check(instance, e, g, method, passed)
}

fn with_strategy(mut c: Check, name: &str) -> Check {
    c.strategy = Some(name.to_string());
    c
}

fn owner(o: Outcome) -> Option<Player> {
    match o {
        Outcome::R => Some(Player::Resolver),
        Outcome::S => Some(Player::Spoiler),
        Outcome::N => None,
    }
}

fn outcome_of(winner: Player) -> Outcome {
    match winner {
        Player::Resolver => Outcome::R,
        Player::Spoiler => Outcome::S,
    }
}

/// Exhaustive validation of `strategy` for both starts. `None` when it
/// wins all, else a description of the first start it loses.
fn validate_both(
    g: &Graph,
    strategy: &dyn Strategy,
    cap: usize,
) -> Result<Option<String>, HarnessError> {
    for first in [Player::Resolver, Player::Spoiler] {
        let report = validate(g, strategy, first, cap)?;
        if let Validation::Counterexample { transcript } = report.result {
            let line: Vec<String> = transcript
                .to_string()
                .lines()
                .skip(1)
                .map(str::to_string)
                .collect();
            return Ok(Some(format!(
                "loses with {} first: {}",
                first.name(),
                line.join(", ")
            )));
        }
    }
    Ok(None)
}

/// Checks an outcome claim by every tier that fits the caps: the exact
/// solver, then exhaustive validation of a strategy for the claimed winner,
/// then (only when neither ran) random playouts of that strategy.
pub(crate) fn outcome_checks(
    instance: &str,
    expected: Outcome,
    strategy: Option<&str>,
    config: &HarnessConfig,
    seed: u64,
) -> Result<Vec<Check>, HarnessError> {
    let g = parse(instance)?;
    let n = g.order();
    let mut checks = Vec::new();
    if n <= config.solver_cap {
        let got = outcome(&g, solver(config))?;
        checks.push(same(instance, expected, got, Method::ExactSolver));
    }
    if let (Some(name), Some(_)) = (strategy, owner(expected)) {
        let strat = match build(name, &g) {
            Ok(s) => s,
            // the exact tier already decided the claim
            Err(StrategyError::NotApplicable { .. }) if !checks.is_empty() => return Ok(checks),
            Err(e) => return Err(e.into()),
        };
        if n <= config.validation_cap {
            let got = match validate_both(&g, strat.as_ref(), config.validation_cap)? {
                None => expected.to_string(),
                Some(loss) => loss,
            };
            checks.push(with_strategy(
                same(instance, expected, got, Method::StrategyValidation),
                name,
            ));
        } else if checks.is_empty() {
            let mut rng = StdRng::seed_from_u64(seed);
            let mut lost = None;
            for first in [Player::Resolver, Player::Spoiler] {
                let report = random_playouts(&g, strat.as_ref(), first, config.playouts, &mut rng)?;
                if report.wins < report.games && lost.is_none() {
                    lost = Some(format!(
                        "lost {} of {} playouts with {} first",
                        report.games - report.wins,
                        report.games,
                        first.name()
                    ));
                }
            }
            let got = lost.unwrap_or_else(|| expected.to_string());
            checks.push(with_strategy(
                same(instance, expected, got, Method::RandomizedPlayouts),
                name,
            ));
        }
    }
    if checks.is_empty() {
        return Err(case_error(
            instance,
            format!(
                "order {n} exceeds the solver cap {} and no strategy tier applies",
                config.solver_cap
            ),
        ));
    }
    Ok(checks)
}

/// A claim refuted by a strategy for the other side: `got` is that side's
/// outcome when the strategy wins every line from both starts.
fn refuting_validation(
    instance: &str,
    claimed: Outcome,
    name: &str,
    config: &HarnessConfig,
) -> Result<Check, HarnessError> {
    let g = parse(instance)?;
    let strat = build(name, &g)?;
    let got = match validate_both(&g, strat.as_ref(), config.validation_cap.max(g.order()))? {
        None => outcome_of(strat.role()).to_string(),
        Some(loss) => loss,
    };
    Ok(with_strategy(
        same(instance, claimed, got, Method::StrategyValidation),
        name,
    ))
}

fn transversals(instance: &str, l: usize, all: bool) -> Result<Check, HarnessError> {
    let g = parse(instance)?;
    let total = 1usize << l;
    let good = (0..total)
        .filter(|mask| {
            let t: VertexSet = (0..l).map(|i| 2 * i + (mask >> i & 1)).collect();
            is_strictly_locating(&g, t)
        })
        .count();
    Ok(if all {
        same(
            instance,
            format!("{total}/{total} strictly locating"),
            format!("{good}/{total} strictly locating"),
            Method::ExhaustivePredicate,
        )
    } else {
        let failing = total - good;
        check(
            instance,
            "some transversal fails",
            format!("{failing}/{total} fail"),
            Method::ExhaustivePredicate,
            failing > 0,
        )
    })
}

fn k1_equivalence(h_expr: &str) -> Result<Check, HarnessError> {
    let h = parse(h_expr)?;
    let instance = format!("corona(k1,{h_expr})");
    let g = parse(&instance)?;
    let oracle = ResolvingOracle::for_graph(&g);
    let nh = h.order();
    let total = 1usize << nh;
    let agree = (0..total as u64)
        .filter(|&bits| {
            let s: VertexSet = (0..nh).filter(|i| bits >> i & 1 == 1).collect();
            let shifted: VertexSet = s.iter().map(|v| v + 1).collect();
            oracle.resolves(shifted) == is_strictly_locating(&h, s)
        })
        .count();
    Ok(same(
        &instance,
        format!("{total}/{total} subsets agree"),
        format!("{agree}/{total} subsets agree"),
        Method::ExhaustivePredicate,
    ))
}

fn copy_sets(g: &Graph) -> Vec<VertexSet> {
    let factors = g.corona_factors().expect("corona");
    (0..factors.base_order())
        .map(|c| {
            (0..factors.fiber_order())
                .map(|j| factors.copy_vertex(c, j))
                .collect()
        })
        .collect()
}

/// All subsets of `0..n` accepted by `keep`.
fn subsets(n: usize, keep: impl Fn(VertexSet) -> bool) -> Vec<VertexSet> {
    (0..1u64 << n)
        .map(|bits| (0..n).filter(|i| bits >> i & 1 == 1).collect::<VertexSet>())
        .filter(|&s| keep(s))
        .collect()
}

fn restriction(g_expr: &str, h_expr: &str) -> Result<Vec<Check>, HarnessError> {
    let instance = format!("corona({g_expr},{h_expr})");
    let g = parse(&instance)?;
    let h = parse(h_expr)?;
    let n = g.order();
    if n > SUBSET_SWEEP_CAP {
        return Err(case_error(
            &instance,
            format!("order {n} exceeds the subset sweep cap {SUBSET_SWEEP_CAP}"),
        ));
    }
    let d = distances(&g);
    let dh = distances(&h);
    let oracle = ResolvingOracle::for_graph(&g);
    let copies = copy_sets(&g);
    let offsets: Vec<usize> = copies.iter().map(|c| c.first().unwrap_or(0)).collect();
    let resolving = subsets(n, |s| oracle.resolves(s));
    let mut standalone = 0;
    let mut within = 0;
    for &s in &resolving {
        for (copy, &off) in copies.iter().zip(&offsets) {
            let local = s.intersection(*copy);
            let shifted: VertexSet = local.iter().map(|v| v - off).collect();
            standalone += usize::from(!is_resolving(&h, shifted));
            within += usize::from(!resolves_within(&d, *copy, local));
        }
    }
    let m = resolving.len();
    let mut checks = vec![
        same(
            &format!("{instance} [H distances]"),
            format!("0/{m} violate"),
            format!("{standalone}/{m} violate"),
            Method::ExhaustivePredicate,
        ),
        same(
            &format!("{instance} [corona distances]"),
            format!("0/{m} violate"),
            format!("{within}/{m} violate"),
            Method::ExhaustivePredicate,
        ),
    ];
    if dh.diameter() <= 2 && copies.len() >= 2 {
        let local = subsets(h.order(), |s| is_resolving_with(&dh, s));
        let place = |w: VertexSet, off: usize| w.iter().map(|v| v + off).collect::<VertexSet>();
        let mut bad = 0;
        let mut total = 0;
        for &a in &local {
            for &b in &local {
                let mut u = place(a, offsets[0]);
                for &off in &offsets[1..] {
                    u = u.union(place(b, off));
                }
                total += 1;
                bad += usize::from(!oracle.resolves(u));
            }
        }
        checks.push(same(
            &format!("{instance} [unions]"),
            format!("0/{total} fail"),
            format!("{bad}/{total} fail"),
            Method::ExhaustivePredicate,
        ));
    }
    Ok(checks)
}

fn pairing(instance: &str, config: &HarnessConfig, seed: u64) -> Result<Vec<Check>, HarnessError> {
    let g = parse(instance)?;
    match build("pairing", &g) {
        Ok(_) => outcome_checks(instance, Outcome::R, Some("pairing"), config, seed),
        Err(StrategyError::NotApplicable { .. }) => Ok(vec![check(
            instance,
            "pairing ⇒ R",
            "no pairing resolving set (vacuous)",
            Method::ExhaustivePredicate,
            true,
        )]),
        Err(e) => Err(e.into()),
    }
}

fn spoiler_copy(
    h_expr: &str,
    config: &HarnessConfig,
    seed: u64,
) -> Result<Vec<Check>, HarnessError> {
    let h = parse(h_expr)?;
    let o = outcome(&h, solver(config))?;
    let mut checks = vec![check(
        h_expr,
        "N or S",
        o,
        Method::ExactSolver,
        o != Outcome::R,
    )];
    checks.extend(outcome_checks(
        &format!("corona(path(2),{h_expr})"),
        Outcome::S,
        Some("spoiler-copy"),
        config,
        seed,
    )?);
    Ok(checks)
}

fn sufficient(
    h_expr: &str,
    via_k1: bool,
    config: &HarnessConfig,
    seed: u64,
) -> Result<Vec<Check>, HarnessError> {
    let h = parse(h_expr)?;
    let mut checks = Vec::new();
    let strategy = if via_k1 {
        let inst = format!("corona(k1,{h_expr})");
        let o = outcome(&parse(&inst)?, solver(config))?;
        checks.push(same(&inst, Outcome::R, o, Method::ExactSolver));
        "copywise-k1"
    } else {
        let o = outcome(&h, solver(config))?;
        let diam = metrics(&h).diameter;
        checks.push(same(
            h_expr,
            "R, diam ≤ 2",
            format!(
                "{o}, diam {}",
                if diam <= 2 {
                    "≤ 2".to_string()
                } else {
                    format!("= {diam}")
                }
            ),
            Method::ExactSolver,
        ));
        "copywise-diam2"
    };
    checks.extend(outcome_checks(
        &format!("corona(path(2),{h_expr})"),
        Outcome::R,
        Some(strategy),
        config,
        seed,
    )?);
    Ok(checks)
}

fn numbers(expr: &str, config: &HarnessConfig) -> Result<(Graph, GameNumbers), HarnessError> {
    let g = parse(expr)?;
    let nums = game_numbers(&g, solver(config))?;
    Ok((g, nums))
}

fn fmt_opt(v: Option<u32>) -> String {
    v.map_or("-".to_string(), |x| x.to_string())
}

fn move_count(
    g_expr: &str,
    h_expr: &str,
    config: &HarnessConfig,
) -> Result<Vec<Check>, HarnessError> {
    let (h, nh) = numbers(h_expr, config)?;
    let diam = metrics(&h).diameter;
    let mut checks = vec![check(
        h_expr,
        "o = R, diam = 2",
        format!(
            "R_MB {}, R'_MB {}, diam {diam}",
            fmt_opt(nh.r_mb),
            fmt_opt(nh.r_mb_prime)
        ),
        Method::ExactSolver,
        nh.r_mb.is_some() && nh.r_mb_prime.is_some() && diam == 2,
    )];
    let (Some(r), Some(rp)) = (nh.r_mb, nh.r_mb_prime) else {
        return Ok(checks);
    };
    let inst = format!("corona({g_expr},{h_expr})");
    let (g, ng) = numbers(&inst, config)?;
    let base = g.corona_factors().map_or(1, |f| f.base_order()) as u32;
    let got = format!(
        "R_MB {}, R'_MB {}",
        fmt_opt(ng.r_mb),
        fmt_opt(ng.r_mb_prime)
    );
    let bounded =
        matches!((ng.r_mb, ng.r_mb_prime), (Some(a), Some(b)) if a <= b && b <= base * rp);
    checks.push(check(
        &inst,
        format!("R_MB ≤ R'_MB ≤ {}", base * rp),
        &got,
        Method::ExactSolver,
        bounded,
    ));
    if r == rp {
        let want = base * r;
        checks.push(check(
            &inst,
            format!("R_MB = R'_MB = {want}"),
            &got,
            Method::ExactSolver,
            ng.r_mb == Some(want) && ng.r_mb_prime == Some(want),
        ));
    }
    Ok(checks)
}

fn k1_diam2(h_expr: &str, config: &HarnessConfig) -> Result<Vec<Check>, HarnessError> {
    let (h, nh) = numbers(h_expr, config)?;
    let m = metrics(&h);
    let premise = m.diameter == 2
        && m.max_degree + 2 <= h.order()
        && nh.r_mb.is_some()
        && nh.r_mb_prime.is_some();
    let mut checks = vec![check(
        h_expr,
        "diam 2, Δ ≤ n - 2, o = R",
        format!(
            "diam {}, Δ {}, n {}, R_MB {}, R'_MB {}",
            m.diameter,
            m.max_degree,
            h.order(),
            fmt_opt(nh.r_mb),
            fmt_opt(nh.r_mb_prime)
        ),
        Method::ExactSolver,
        premise,
    )];
    if premise {
        let inst = format!("corona(k1,{h_expr})");
        let (_, nk) = numbers(&inst, config)?;
        let o = Outcome::from_winners(
            if nk.r_mb.is_some() {
                Player::Resolver
            } else {
                Player::Spoiler
            },
            if nk.r_mb_prime.is_some() {
                Player::Resolver
            } else {
                Player::Spoiler
            },
        )?;
        checks.push(same(&inst, Outcome::R, o, Method::ExactSolver));
        checks.push(same(
            &inst,
            format!(
                "R_MB {}, R'_MB {}",
                fmt_opt(nh.r_mb),
                fmt_opt(nh.r_mb_prime)
            ),
            format!(
                "R_MB {}, R'_MB {}",
                fmt_opt(nk.r_mb),
                fmt_opt(nk.r_mb_prime)
            ),
            Method::ExactSolver,
        ));
    }
    Ok(checks)
}

fn sandwich(
    g_expr: &str,
    h_expr: &str,
    config: &HarnessConfig,
) -> Result<Vec<Check>, HarnessError> {
    let inst = format!("corona({g_expr},{h_expr})");
    let g = parse(&inst)?;
    let h = parse(h_expr)?;
    let base = g.corona_factors().map_or(1, |f| f.base_order());
    if g.order() > config.solver_cap || metrics(&h).diameter > 2 || h.order() < 2 || base < 2 {
        return Ok(Vec::new());
    }
    let (_, nh) = numbers(h_expr, config)?;
    let (Some(r), Some(rp)) = (nh.r_mb, nh.r_mb_prime) else {
        return Ok(Vec::new());
    };
    let (_, ng) = numbers(&inst, config)?;
    let (Some(rg), Some(_)) = (ng.r_mb, ng.r_mb_prime) else {
        return Ok(Vec::new());
    };
    let base = base as u32;
    let (lo, hi) = (base * r, r + (base - 1) * rp);
    Ok(vec![check(
        &inst,
        format!("{lo} ≤ R_MB ≤ {hi}"),
        format!("R_MB {rg}"),
        Method::ExactSolver,
        lo <= rg && rg <= hi,
    )])
}

fn invariants(inst: &str, config: &HarnessConfig) -> Result<Vec<Check>, HarnessError> {
    let (g, nums) = numbers(inst, config)?;
    let dim = metric_dimension(&g, DEFAULT_DIMENSION_CAP.max(config.solver_cap))?.dimension as u32;
    let r_first = if nums.r_mb.is_some() {
        Player::Resolver
    } else {
        Player::Spoiler
    };
    let s_first = if nums.r_mb_prime.is_some() {
        Player::Resolver
    } else {
        Player::Spoiler
    };
    let mut checks = vec![check(
        inst,
        "no second-player win in both games",
        format!("R-game {}, S-game {}", r_first.name(), s_first.name()),
        Method::ExactSolver,
        Outcome::from_winners(r_first, s_first).is_ok(),
    )];
    let got = format!(
        "dim {dim}, R_MB {}, R'_MB {}, S_MB {}, S'_MB {}",
        fmt_opt(nums.r_mb),
        fmt_opt(nums.r_mb_prime),
        fmt_opt(nums.s_mb),
        fmt_opt(nums.s_mb_prime)
    );
    let resolver_ok = nums.r_mb.is_none_or(|r| r >= dim)
        && nums
            .r_mb_prime
            .is_none_or(|rp| nums.r_mb.is_none_or(|r| rp >= r));
    checks.push(check(
        inst,
        "R'_MB ≥ R_MB ≥ dim",
        &got,
        Method::ExactSolver,
        resolver_ok,
    ));
    if let (Some(s), Some(sp)) = (nums.s_mb, nums.s_mb_prime) {
        checks.push(check(
            inst,
            "S_MB ≥ S'_MB",
            &got,
            Method::ExactSolver,
            s >= sp,
        ));
    }
    if g.corona_factors().is_some() {
        checks.push(distance_law(inst, &g));
    }
    Ok(checks)
}

/// BFS distances of a corona against the closed form in the factors.
pub(crate) fn distance_law(inst: &str, g: &Graph) -> Check {
    let f = g.corona_factors().expect("corona");
    let d = distances(g);
    let dg = distances(&f.base);
    let dh = distances(&f.fiber);
    let n = g.order();
    let expected = |u: usize, v: usize| -> u8 {
        let lu = g.label(u).expect("labelled");
        let lv = g.label(v).expect("labelled");
        match (lu, lv) {
            (CoronaLabel::Base { index: a }, CoronaLabel::Base { index: b }) => dg.get(a, b),
            (CoronaLabel::Base { index: a }, CoronaLabel::Copy { copy, .. })
            | (CoronaLabel::Copy { copy, .. }, CoronaLabel::Base { index: a }) => {
                dg.get(a, copy) + 1
            }
            (CoronaLabel::Copy { copy: a, index: i }, CoronaLabel::Copy { copy: b, index: j }) => {
                if a == b {
                    let h = dh.get(i, j);
                    if h == UNREACHABLE {
                        2
                    } else {
                        h.min(2)
                    }
                } else {
                    dg.get(a, b) + 2
                }
            }
        }
    };
    let total = n * n;
    let agree = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| d.get(u, v) == expected(u, v))
        .count();
    same(
        &format!("{inst} [distance law]"),
        format!("{total}/{total} pairs"),
        format!("{agree}/{total} pairs"),
        Method::ExhaustivePredicate,
    )
}
