//! Resolver strategies on `G ⊙ H` built from one plan per copy of `H`.
//!
//! The scheduler answers an urgent threat in the lowest copy that has one,
//! otherwise opens the lowest copy whose plan is unfinished, otherwise
//! claims the lowest free vertex. Plans work in local coordinates: copy
//! vertex `j` is local `j`, and the copy's base vertex is local `n(H)`.

use super::local::LocalGame;
use super::{Memory, Pick, Strategy};
use crate::game::{GameState, Player};
use crate::graph::{CoronaFactors, Vertex};
use crate::vertex_set::VertexSet;

/// Both players' claims inside one copy, in local coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalSets {
    pub r: VertexSet,
    pub s: VertexSet,
    /// Local vertices, base included when the plan uses it.
    pub all: VertexSet,
}

impl LocalSets {
    pub fn free(&self) -> VertexSet {
        self.all.difference(self.r.union(self.s))
    }

    pub fn is_free(&self, v: usize) -> bool {
        self.free().contains(v)
    }
}

pub type PlanMove = (usize, &'static str);

pub trait CopyPlan: Send + Sync {
    fn uses_base(&self) -> bool {
        false
    }

    fn initial(&self) -> u8 {
        0
    }

    /// Sees every move inside this copy, with the local sets before it.
    fn observe(&self, _memory: &mut u8, _before: LocalSets, _mover: Player, _v: usize) {}

    /// A reply the plan cannot postpone.
    fn urgent(&self, sets: LocalSets, memory: u8) -> Option<PlanMove>;

    /// A move in a copy Resolver is free to develop; `None` once finished.
    fn open(&self, sets: LocalSets, memory: u8) -> Option<PlanMove>;
}

pub struct CopywiseResolver {
    name: String,
    factors: CoronaFactors,
    plan: Box<dyn CopyPlan>,
}

impl CopywiseResolver {
    pub fn new(name: impl Into<String>, factors: CoronaFactors, plan: Box<dyn CopyPlan>) -> Self {
        CopywiseResolver {
            name: name.into(),
            factors,
            plan,
        }
    }

    fn copies(&self) -> usize {
        self.factors.base_order()
    }

    fn order(&self) -> usize {
        self.factors.base_order() * (1 + self.factors.fiber_order())
    }

    fn local(&self, copy: usize, state: &GameState) -> LocalSets {
        let h = self.factors.fiber_order();
        let offset = self.factors.copy_vertex(copy, 0);
        let mask = (1u64 << h) - 1;
        let project = |set: VertexSet| {
            let mut local = VertexSet::from_bits((set.bits() >> offset) & mask);
            if self.plan.uses_base() && set.contains(copy) {
                local.insert(h);
            }
            local
        };
        let all = if self.plan.uses_base() {
            VertexSet::full(h + 1)
        } else {
            VertexSet::full(h)
        };
        LocalSets {
            r: project(state.resolver),
            s: project(state.spoiler),
            all,
        }
    }

    fn global(&self, copy: usize, v: usize) -> Vertex {
        if v == self.factors.fiber_order() {
            copy
        } else {
            self.factors.copy_vertex(copy, v)
        }
    }

    /// `(copy, local index)` of a vertex the plan can see.
    fn place(&self, v: Vertex) -> Option<(usize, usize)> {
        match self.factors.locate(v) {
            Some(place) => Some(place),
            None => self
                .plan
                .uses_base()
                .then(|| (v, self.factors.fiber_order())),
        }
    }
}

impl Strategy for CopywiseResolver {
    fn name(&self) -> &str {
        &self.name
    }

    fn role(&self) -> Player {
        Player::Resolver
    }

    fn initial_memory(&self) -> Memory {
        std::iter::repeat_n(self.plan.initial(), self.copies()).collect()
    }

    fn observe(&self, memory: &mut Memory, before: &GameState, mover: Player, vertex: Vertex) {
        if let Some((copy, v)) = self.place(vertex) {
            let sets = self.local(copy, before);
            self.plan.observe(&mut memory[copy], sets, mover, v);
        }
    }

    fn pick(&self, state: &GameState, memory: &Memory) -> Option<Pick> {
        let free = state.unclaimed(self.order());
        if free.is_empty() {
            return None;
        }
        let locals: Vec<LocalSets> = (0..self.copies()).map(|c| self.local(c, state)).collect();
        let choose = |copy: usize, (v, tag): PlanMove| {
            let vertex = self.global(copy, v);
            debug_assert!(free.contains(vertex), "plan picked a claimed vertex");
            Pick { vertex, tag }
        };
        for (copy, sets) in locals.iter().enumerate() {
            if let Some(m) = self.plan.urgent(*sets, memory[copy]) {
                return Some(choose(copy, m));
            }
        }
        for (copy, sets) in locals.iter().enumerate() {
            if let Some(m) = self.plan.open(*sets, memory[copy]) {
                return Some(choose(copy, m));
            }
        }
        free.first().map(|vertex| Pick {
            vertex,
            tag: "filler",
        })
    }
}

/// Disjoint pairs: answer a claimed endpoint with its partner.
#[derive(Debug, Clone)]
pub struct PairBlocks {
    pub pairs: Vec<(usize, usize)>,
    pub base: bool,
    pub tag: &'static str,
}

impl CopyPlan for PairBlocks {
    fn uses_base(&self) -> bool {
        self.base
    }

    fn urgent(&self, sets: LocalSets, _memory: u8) -> Option<PlanMove> {
        pair_reply(&self.pairs, sets).map(|v| (v, self.tag))
    }

    fn open(&self, sets: LocalSets, _memory: u8) -> Option<PlanMove> {
        open_pair(&self.pairs, sets).map(|v| (v, self.tag))
    }
}

fn pair_reply(pairs: &[(usize, usize)], sets: LocalSets) -> Option<usize> {
    pairs.iter().find_map(|&(u, v)| {
        if sets.r.contains(u) || sets.r.contains(v) {
            None
        } else if sets.s.contains(u) && sets.is_free(v) {
            Some(v)
        } else if sets.s.contains(v) && sets.is_free(u) {
            Some(u)
        } else {
            None
        }
    })
}

fn open_pair(pairs: &[(usize, usize)], sets: LocalSets) -> Option<usize> {
    pairs
        .iter()
        .filter(|&&(u, v)| !sets.r.contains(u) && !sets.r.contains(v))
        .find_map(|&(u, v)| [u, v].into_iter().find(|&x| sets.is_free(x)))
}

/// Two adjacent vertices of a short cycle.
#[derive(Debug, Clone)]
pub struct AdjacentPair {
    pub k: usize,
}

impl AdjacentPair {
    fn neighbours(&self, v: usize) -> [usize; 2] {
        [(v + self.k - 1) % self.k, (v + 1) % self.k]
    }

    fn done(&self, sets: LocalSets) -> bool {
        sets.r
            .iter()
            .any(|v| self.neighbours(v).iter().any(|&u| sets.r.contains(u)))
    }

    /// Complete a pair, else create a double threat.
    fn advance(&self, sets: LocalSets) -> Option<PlanMove> {
        let complete = sets
            .r
            .iter()
            .find_map(|v| self.neighbours(v).into_iter().find(|&u| sets.is_free(u)));
        if let Some(u) = complete {
            return Some((u, "adjacent pair"));
        }
        sets.free()
            .iter()
            .find(|&z| self.neighbours(z).iter().all(|&u| sets.is_free(u)))
            .map(|z| (z, "adjacent pair"))
    }
}

impl CopyPlan for AdjacentPair {
    fn urgent(&self, sets: LocalSets, _memory: u8) -> Option<PlanMove> {
        let threat = sets
            .r
            .iter()
            .any(|v| self.neighbours(v).iter().all(|&u| sets.is_free(u)));
        if sets.s.is_empty() || self.done(sets) || threat {
            None
        } else {
            self.advance(sets)
        }
    }

    fn open(&self, sets: LocalSets, _memory: u8) -> Option<PlanMove> {
        if self.done(sets) {
            None
        } else {
            self.advance(sets)
                .or_else(|| sets.free().first().map(|v| (v, "filler")))
        }
    }
}

const UNSET: u8 = u8::MAX;

/// Odd cycle `C_{2l+1}`, `l ≥ 3`, labelled from the first move in the copy:
/// Spoiler's opening vertex is `v_{2l+1}` (or the vertex after Resolver's
/// opening is). Blocks `{v_{2i-1}, v_{2i}}` for `i ≤ l-2` and the triple
/// `Z' = {v_{2l-3}, v_{2l-2}, v_{2l-1}}`.
#[derive(Debug, Clone)]
pub struct OddCycleAnchored {
    pub k: usize,
}

impl OddCycleAnchored {
    /// Local index of `v_j`, 1-based `j`.
    fn v(&self, anchor: u8, j: usize) -> usize {
        (anchor as usize + j) % self.k
    }

    fn pairs(&self, anchor: u8) -> Vec<(usize, usize)> {
        let l = self.k / 2;
        (1..=l - 2)
            .map(|i| (self.v(anchor, 2 * i - 1), self.v(anchor, 2 * i)))
            .collect()
    }

    fn triple(&self, anchor: u8) -> [usize; 3] {
        let l = self.k / 2;
        [
            self.v(anchor, 2 * l - 3),
            self.v(anchor, 2 * l - 2),
            self.v(anchor, 2 * l - 1),
        ]
    }
}

impl CopyPlan for OddCycleAnchored {
    fn initial(&self) -> u8 {
        UNSET
    }

    fn observe(&self, memory: &mut u8, before: LocalSets, mover: Player, v: usize) {
        if *memory == UNSET && before.r.is_empty() && before.s.is_empty() {
            *memory = match mover {
                Player::Spoiler => v as u8,
                Player::Resolver => ((v + 1) % self.k) as u8,
            };
        }
    }

    fn urgent(&self, sets: LocalSets, anchor: u8) -> Option<PlanMove> {
        if anchor == UNSET {
            return None;
        }
        let l = self.k / 2;
        let top = self.v(anchor, 2 * l);
        if sets.is_free(top) {
            return Some((top, "anchor reply"));
        }
        if let Some(v) = pair_reply(&self.pairs(anchor), sets) {
            return Some((v, "block transversal"));
        }
        let [a, b, c] = self.triple(anchor);
        let r_in = [a, b, c].iter().any(|&x| sets.r.contains(x));
        let s_in = [a, b, c].iter().any(|&x| sets.s.contains(x));
        if r_in || !s_in {
            return None;
        }
        let wanted = if sets.s.contains(b) { c } else { b };
        let reply = if sets.is_free(wanted) {
            Some(wanted)
        } else {
            [a, b, c].into_iter().find(|&x| sets.is_free(x))
        };
        reply.map(|v| (v, "Z′ reply"))
    }

    fn open(&self, sets: LocalSets, anchor: u8) -> Option<PlanMove> {
        if anchor == UNSET {
            return sets.is_free(0).then_some((0, "anchor"));
        }
        let l = self.k / 2;
        let top = self.v(anchor, 2 * l);
        if sets.is_free(top) {
            return Some((top, "anchor"));
        }
        if let Some(v) = open_pair(&self.pairs(anchor), sets) {
            return Some((v, "block transversal"));
        }
        let [a, b, c] = self.triple(anchor);
        if [a, b, c].iter().any(|&x| sets.r.contains(x)) {
            return None;
        }
        [b, a, c]
            .into_iter()
            .find(|&x| sets.is_free(x))
            .map(|v| (v, "Z′ reply"))
    }
}

/// Odd path `P_{2l+1}`, `l ≥ 3`, played with pair blocks
/// `{v_{2j-1}, v_{2j}}` for `j < l` and the end triple, following the
/// triple rules word for word. The memory records how the triple was first
/// entered by Spoiler.
#[derive(Debug, Clone)]
pub struct OddPathTriple {
    pub k: usize,
}

const TRIPLE_UNTOUCHED: u8 = 0;
const A_WITH_Q_FREE: u8 = 1;
const A_WITH_Q_RESOLVER: u8 = 2;
const A_WITH_Q_SPOILER: u8 = 3;
const END_FIRST: u8 = 4;

impl OddPathTriple {
    fn pairs(&self) -> Vec<(usize, usize)> {
        let l = self.k / 2;
        (1..l).map(|j| (2 * j - 2, 2 * j - 1)).collect()
    }

    /// `(q, a, b, c)` = `(v_{2l-2}, v_{2l-1}, v_{2l}, v_{2l+1})`.
    fn tail(&self) -> (usize, usize, usize, usize) {
        let k = self.k;
        (k - 4, k - 3, k - 2, k - 1)
    }
}

impl CopyPlan for OddPathTriple {
    fn observe(&self, memory: &mut u8, before: LocalSets, mover: Player, v: usize) {
        let (q, a, b, c) = self.tail();
        let triple_touched = [a, b, c].iter().any(|&x| !before.is_free(x));
        if *memory != TRIPLE_UNTOUCHED || mover != Player::Spoiler || triple_touched {
            return;
        }
        if v == a {
            *memory = if before.is_free(q) {
                A_WITH_Q_FREE
            } else if before.r.contains(q) {
                A_WITH_Q_RESOLVER
            } else {
                A_WITH_Q_SPOILER
            };
        } else if v == b || v == c {
            *memory = END_FIRST;
        }
    }

    fn urgent(&self, sets: LocalSets, memory: u8) -> Option<PlanMove> {
        let (q, a, b, c) = self.tail();
        let owns_end = sets.r.contains(b) || sets.r.contains(c);
        let first_free = |xs: &[usize]| xs.iter().copied().find(|&x| sets.is_free(x));
        let triple = match memory {
            A_WITH_Q_FREE if sets.is_free(q) => Some(q),
            A_WITH_Q_FREE if !owns_end && (sets.s.contains(b) || sets.s.contains(c)) => {
                first_free(&[b, c])
            }
            A_WITH_Q_RESOLVER if !owns_end => first_free(&[b, c]),
            A_WITH_Q_SPOILER if !owns_end => first_free(&[c, b]),
            END_FIRST if !sets.r.contains(a) => first_free(&[a]),
            _ => None,
        };
        if let Some(v) = triple {
            return Some((v, "triple reply"));
        }
        pair_reply(&self.pairs(), sets).map(|v| (v, "block transversal"))
    }

    fn open(&self, sets: LocalSets, _memory: u8) -> Option<PlanMove> {
        if let Some(v) = open_pair(&self.pairs(), sets) {
            return Some((v, "block transversal"));
        }
        let (_, a, b, c) = self.tail();
        if [a, b, c].iter().any(|&x| sets.r.contains(x)) {
            return None;
        }
        [a, b, c]
            .into_iter()
            .find(|&x| sets.is_free(x))
            .map(|v| (v, "triple reply"))
    }
}

/// Plays an exactly solved local game in every copy: reply whenever the
/// copy would otherwise be lost, and develop copies whose goal is unmet.
pub struct LocalGamePlan {
    pub game: LocalGame,
    pub base: bool,
    pub tag: &'static str,
}

impl LocalGamePlan {
    fn satisfied(&self, sets: LocalSets) -> bool {
        self.game
            .resolver_wins_waiting(sets.r, sets.all.difference(sets.r))
    }
}

impl CopyPlan for LocalGamePlan {
    fn uses_base(&self) -> bool {
        self.base
    }

    fn urgent(&self, sets: LocalSets, _memory: u8) -> Option<PlanMove> {
        if self.game.resolver_wins_waiting(sets.r, sets.s) {
            return None;
        }
        self.game
            .resolver_move(sets.r, sets.s)
            .map(|v| (v, self.tag))
    }

    fn open(&self, sets: LocalSets, _memory: u8) -> Option<PlanMove> {
        if self.satisfied(sets) || sets.free().is_empty() {
            return None;
        }
        let v = self
            .game
            .resolver_move(sets.r, sets.s)
            .or_else(|| sets.free().first())?;
        Some((v, self.tag))
    }
}
