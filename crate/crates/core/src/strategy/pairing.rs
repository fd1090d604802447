use super::{Pick, Strategy};
use crate::game::{GameState, Player};
use crate::resolving::PairingSystem;

/// Resolver answers a claimed endpoint with its partner and otherwise opens
/// the first untouched pair.
#[derive(Debug, Clone)]
pub struct PairingStrategy {
    name: String,
    pairs: PairingSystem,
    n: usize,
}

impl PairingStrategy {
    pub fn new(name: impl Into<String>, pairs: PairingSystem, n: usize) -> Self {
        PairingStrategy {
            name: name.into(),
            pairs,
            n,
        }
    }

    pub fn pairs(&self) -> &PairingSystem {
        &self.pairs
    }
}

impl Strategy for PairingStrategy {
    fn name(&self) -> &str {
        &self.name
    }

    fn role(&self) -> Player {
        Player::Resolver
    }

    fn pick(&self, state: &GameState, _memory: &super::Memory) -> Option<Pick> {
        let free = state.unclaimed(self.n);
        let (r, s) = (state.resolver, state.spoiler);
        for &(u, v) in self.pairs.pairs() {
            if r.contains(u) || r.contains(v) {
                continue;
            }
            if s.contains(u) && free.contains(v) {
                return Some(Pick {
                    vertex: v,
                    tag: "pairing reply",
                });
            }
            if s.contains(v) && free.contains(u) {
                return Some(Pick {
                    vertex: u,
                    tag: "pairing reply",
                });
            }
        }
        let open = self
            .pairs
            .pairs()
            .iter()
            .find(|&&(u, v)| free.contains(u) && free.contains(v))
            .map(|&(u, _)| Pick {
                vertex: u,
                tag: "pairing",
            });
        open.or_else(|| {
            free.first().map(|vertex| Pick {
                vertex,
                tag: "filler",
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph_expr;
    use crate::strategy::Memory;

    #[test]
    fn replies_with_partner() {
        let g = parse_graph_expr("cycle(4)").unwrap();
        let a = PairingSystem::new(vec![(0, 2), (1, 3)]).unwrap();
        let s = PairingStrategy::new("pairing", a, g.order());
        let state = GameState::new(Player::Spoiler).play(3, 4).unwrap();
        assert_eq!(
            s.pick(&state, &Memory::new()).unwrap(),
            Pick {
                vertex: 1,
                tag: "pairing reply"
            }
        );
        let state = GameState::new(Player::Resolver);
        assert_eq!(s.pick(&state, &Memory::new()).unwrap().vertex, 0);
    }
}
