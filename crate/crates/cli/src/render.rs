//! Plain-text forms: one `key=value` or one record per line.

use std::fmt::Write;

use mbrg_core::api::{GraphInfo, PairingResponse, SolveResponse, StrategyInfo, TheoremInfo};
use mbrg_core::game::GameNumbers;
use mbrg_core::strategy::{Validation, ValidationReport};

fn opt(n: Option<u32>) -> String {
    n.map_or_else(|| "-".into(), |n| n.to_string())
}

pub fn graph(g: &GraphInfo) -> String {
    let mut s = String::new();
    if let Some(expr) = &g.expr {
        writeln!(s, "expr={expr}").unwrap();
    }
    writeln!(
        s,
        "order={}\nsize={}\ndiameter={}\nmax_degree={}\nconnected={}",
        g.order, g.size, g.diameter, g.max_degree, g.connected
    )
    .unwrap();
    s.push_str(&g.text);
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

pub fn solve(r: &SolveResponse) -> String {
    let best = r.best_move.map_or_else(|| "-".into(), |v| v.to_string());
    format!(
        "winner={}\nmoves={}\nbest_move={best}\n",
        r.winner, r.winner_moves
    )
}

pub fn numbers(n: &GameNumbers) -> String {
    format!(
        "R_MB={}\nR'_MB={}\nS_MB={}\nS'_MB={}\n",
        opt(n.r_mb),
        opt(n.r_mb_prime),
        opt(n.s_mb),
        opt(n.s_mb_prime)
    )
}

pub fn pairing(p: &PairingResponse) -> String {
    match &p.pairs {
        None => "none\n".into(),
        Some(pairs) => pairs.iter().map(|(a, b)| format!("{a} {b}\n")).collect(),
    }
}

pub fn strategies(list: &[StrategyInfo]) -> String {
    let mut s = String::new();
    for e in list {
        let status = match (&e.reason, e.applicable) {
            (_, true) => "applicable".to_string(),
            (Some(r), false) => format!("n/a: {r}"),
            (None, false) => "n/a".to_string(),
        };
        writeln!(s, "{}\t{}\t{}\t{}", e.name, e.role, status, e.summary).unwrap();
    }
    s
}

pub fn theorems(list: &[TheoremInfo]) -> String {
    list.iter()
        .map(|t| {
            format!(
                "{}\t{}\t{}\n",
                t.id,
                if t.default { "default" } else { "extra" },
                t.claim
            )
        })
        .collect()
}

pub fn validation(reports: &[ValidationReport]) -> String {
    let mut s = String::new();
    for r in reports {
        match &r.result {
            Validation::WinsAll => writeln!(
                s,
                "{} first={} wins-all positions={}",
                r.strategy, r.first, r.positions
            )
            .unwrap(),
            Validation::Counterexample { transcript } => {
                let line: Vec<String> = transcript
                    .to_string()
                    .lines()
                    .skip(1)
                    .map(str::to_string)
                    .collect();
                writeln!(
                    s,
                    "{} first={} counterexample: {}",
                    r.strategy,
                    r.first,
                    line.join(", ")
                )
                .unwrap()
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use mbrg_core::Player;

    #[test]
    fn missing_numbers_show_as_dashes() {
        let n = GameNumbers {
            r_mb: Some(4),
            r_mb_prime: Some(4),
            s_mb: None,
            s_mb_prime: None,
        };
        assert_eq!(numbers(&n), "R_MB=4\nR'_MB=4\nS_MB=-\nS'_MB=-\n");
    }

    #[test]
    fn solve_lines() {
        let r = SolveResponse {
            first: Player::Spoiler,
            winner: Player::Resolver,
            winner_moves: 2,
            best_move: None,
        };
        assert_eq!(solve(&r), "winner=resolver\nmoves=2\nbest_move=-\n");
    }

    #[test]
    fn no_pairing() {
        assert_eq!(pairing(&PairingResponse { pairs: None }), "none\n");
        assert_eq!(
            pairing(&PairingResponse {
                pairs: Some(vec![(0, 1), (2, 3)])
            }),
            "0 1\n2 3\n"
        );
    }
}
