use crate::vertex_set::VertexSet;

/// Largest local game tabulated eagerly (3^n positions per side to move).
pub const LOCAL_GAME_CAP: usize = 13;

/// Exact table of a Maker-Breaker game on a few vertices with a monotone
/// goal: Resolver wins iff his final set satisfies the goal.
#[derive(Debug, Clone)]
pub struct LocalGame {
    n: usize,
    pow3: Vec<usize>,
    /// Two bits per position: resolver-to-move win, spoiler-to-move win.
    table: Vec<u8>,
}

impl LocalGame {
    pub fn new(n: usize, goal: impl Fn(VertexSet) -> bool) -> Self {
        assert!(n <= LOCAL_GAME_CAP, "local game of order {n} too large");
        let pow3: Vec<usize> = (0..=n).map(|i| 3usize.pow(i as u32)).collect();
        let mut game = LocalGame {
            n,
            pow3,
            table: vec![0; 3usize.pow(n as u32)],
        };
        // Children have one free vertex fewer, so fill by increasing free count.
        let size = game.table.len();
        let mut order: Vec<usize> = (0..size).collect();
        let free_count = |mut idx: usize| {
            let mut free = 0;
            for _ in 0..n {
                if idx.is_multiple_of(3) {
                    free += 1;
                }
                idx /= 3;
            }
            free
        };
        order.sort_by_key(|&i| free_count(i));
        for idx in order {
            let (r, s) = game.decode(idx);
            let free = VertexSet::full(n).difference(r.union(s));
            let bits = if free.is_empty() {
                if goal(r) {
                    0b11
                } else {
                    0
                }
            } else {
                let r_wins = free
                    .iter()
                    .any(|v| game.table[idx + game.pow3[v]] & 0b10 != 0);
                let s_loses = free
                    .iter()
                    .all(|v| game.table[idx + 2 * game.pow3[v]] & 0b01 != 0);
                u8::from(r_wins) | (u8::from(s_loses) << 1)
            };
            game.table[idx] = bits;
        }
        game
    }

    fn decode(&self, mut idx: usize) -> (VertexSet, VertexSet) {
        let mut r = VertexSet::EMPTY;
        let mut s = VertexSet::EMPTY;
        for v in 0..self.n {
            match idx % 3 {
                1 => r.insert(v),
                2 => s.insert(v),
                _ => {}
            }
            idx /= 3;
        }
        (r, s)
    }

    fn index(&self, r: VertexSet, s: VertexSet) -> usize {
        r.iter().map(|v| self.pow3[v]).sum::<usize>()
            + s.iter().map(|v| 2 * self.pow3[v]).sum::<usize>()
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Does Resolver win from `(r, s)` when it is his move?
    pub fn resolver_wins_moving(&self, r: VertexSet, s: VertexSet) -> bool {
        self.table[self.index(r, s)] & 0b01 != 0
    }

    /// Does Resolver win from `(r, s)` when Spoiler moves next?
    pub fn resolver_wins_waiting(&self, r: VertexSet, s: VertexSet) -> bool {
        self.table[self.index(r, s)] & 0b10 != 0
    }

    fn free(&self, r: VertexSet, s: VertexSet) -> VertexSet {
        VertexSet::full(self.n).difference(r.union(s))
    }

    /// Lowest Resolver move keeping a win with Spoiler to reply.
    pub fn resolver_move(&self, r: VertexSet, s: VertexSet) -> Option<usize> {
        self.free(r, s)
            .iter()
            .find(|&v| self.resolver_wins_waiting(r.with(v), s))
    }

    /// Lowest Spoiler move after which Resolver (to move) loses.
    pub fn spoiler_move(&self, r: VertexSet, s: VertexSet) -> Option<usize> {
        self.free(r, s)
            .iter()
            .find(|&v| !self.resolver_wins_moving(r, s.with(v)))
    }
}
