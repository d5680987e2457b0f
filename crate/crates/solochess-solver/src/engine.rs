//! The packed-state search engine behind [`solve`](crate::solve).
//!
//! Boards with at most 64 occupied squares (every board the gadget and
//! compiler pipelines verify exhaustively) are packed into a `u128`: two
//! bits per square holding the budget, with `3` marking an empty square.
//! Occupancy is tracked alongside as a `u64` bitmask. Larger boards fall
//! back to a map-based search with the same goal semantics.

use std::collections::{HashMap, HashSet};

use solochess_core::{Capture, Configuration, Square};
use solochess_graph::build_graph;

use crate::{PruningRules, SolveOptions, SolveResult};

const EMPTY: u8 = 3;

pub(crate) fn solve(config: &Configuration, options: &SolveOptions) -> SolveResult {
    let node_limit = options.node_limit.max(1);

    // Frozen squares must be occupied: captures never land on empty squares.
    for &square in &options.frozen_squares {
        if !config.is_occupied(square) {
            return SolveResult::Unclearable;
        }
    }
    if let Some(required) = options.required_final_square {
        if !config.is_occupied(required) {
            // The final piece must stand somewhere that was occupied from
            // the start; occupancy only ever shrinks.
            return SolveResult::Unclearable;
        }
        if !options.frozen_squares.is_empty() && !options.frozen_squares.contains(&required) {
            return SolveResult::Unclearable;
        }
    }

    let rules = options.effective_rules();

    // Rule: antenna reduction. Repeatedly play the forced opening of any
    // two-edge antenna whose leaf holds budget 2 and whose first two squares
    // cannot host the goal; playing it first never loses solutions.
    let mut prefix: Vec<Capture> = Vec::new();
    let mut start = config.clone();
    if rules.antenna_reduction {
        loop {
            let Some((u, v, w)) = forced_antenna(&start, options) else {
                break;
            };
            start = start
                .apply(Capture::new(u, v))
                .and_then(|c| c.apply(Capture::new(v, w)))
                .expect("antenna moves are legal by construction");
            prefix.push(Capture::new(u, v));
            prefix.push(Capture::new(v, w));
        }
    }

    if start.piece_count() > 64 {
        return solve_big(&start, options, rules, node_limit, prefix);
    }

    let mut engine = Packed::new(&start, options, rules, node_limit);
    let initial = engine.initial_state();
    let occ = engine.initial_occupancy();
    let movable = engine.initial_movable_budget();
    match engine.dfs(initial, occ, movable) {
        Outcome::Found => {
            let mut witness = prefix;
            witness.extend(
                engine
                    .path
                    .iter()
                    .map(|&(i, j)| Capture::new(engine.squares[i as usize], engine.squares[j as usize])),
            );
            SolveResult::Clearable(witness)
        }
        Outcome::Fail => SolveResult::Unclearable,
        Outcome::Exhausted => SolveResult::ResourceExhausted(engine.nodes),
    }
}

/// Finds a two-edge antenna `(u, v, w)` whose forced opening `u > v > w`
/// may be pre-played: leaf budget exactly 2, and neither `u` nor `v` can
/// host the goal (they are not the required final square, not frozen; in
/// clearing mode without a required final square nothing is forced).
fn forced_antenna(
    config: &Configuration,
    options: &SolveOptions,
) -> Option<(Square, Square, Square)> {
    let frozen_mode = !options.frozen_squares.is_empty();
    if !frozen_mode && options.required_final_square.is_none() {
        return None;
    }
    let graph = build_graph(config);
    for antenna in graph.find_antennae() {
        if antenna.path.len() != 3 || antenna.leaf_budget != 2 {
            continue;
        }
        let (u, v, w) = (antenna.path[0], antenna.path[1], antenna.path[2]);
        let goal_on_head = if frozen_mode {
            options.frozen_squares.contains(&u) || options.frozen_squares.contains(&v)
        } else {
            let f = options.required_final_square.expect("checked above");
            f == u || f == v
        };
        if !goal_on_head {
            return Some((u, v, w));
        }
    }
    None
}

enum Outcome {
    Found,
    Fail,
    Exhausted,
}

enum Goal {
    /// Exactly one piece left, anywhere.
    Clear,
    /// Exactly one piece left, on this square index.
    ClearAt(usize),
    /// Occupancy equals this mask.
    Frozen(u64),
}

struct Packed {
    squares: Vec<Square>,
    /// Per square index, the indices it attacks.
    attacks: Vec<Vec<usize>>,
    /// Per square index, the attacked indices as a bitmask.
    attack_mask: Vec<u64>,
    frozen_mask: u64,
    goal: Goal,
    goal_count: u32,
    required_idx: Option<usize>,
    rules: PruningRules,
    node_limit: u64,
    nodes: u64,
    /// States fully explored without success.
    failed: HashSet<u128>,
    /// Antichains of failed states per occupancy mask, for the dominance rule.
    dominance: HashMap<u64, Vec<u128>>,
    /// Square indices that are articulation points of the *initial* graph;
    /// used only for move ordering.
    root_cuts: u64,
    /// Moves of the current search path, as (from, to) square indices.
    path: Vec<(u8, u8)>,
    initial: u128,
}

impl Packed {
    fn new(
        config: &Configuration,
        options: &SolveOptions,
        rules: PruningRules,
        node_limit: u64,
    ) -> Packed {
        let squares: Vec<Square> = config.pieces().keys().copied().collect();
        let n = squares.len();
        let index_of = |sq: Square| squares.binary_search(&sq).ok();

        let mut attacks = Vec::with_capacity(n);
        let mut attack_mask = vec![0u64; n];
        for (i, &square) in squares.iter().enumerate() {
            let targets: Vec<usize> = config
                .kind()
                .attacks(square)
                .into_iter()
                .filter_map(index_of)
                .collect();
            for &j in &targets {
                attack_mask[i] |= 1 << j;
            }
            attacks.push(targets);
        }

        let mut frozen_mask = 0u64;
        for &square in &options.frozen_squares {
            if let Some(i) = index_of(square) {
                frozen_mask |= 1 << i;
            }
        }

        let required_idx = options.required_final_square.and_then(index_of);
        let (goal, goal_count) = if frozen_mask != 0 {
            (Goal::Frozen(frozen_mask), frozen_mask.count_ones())
        } else if let Some(r) = required_idx {
            (Goal::ClearAt(r), 1)
        } else {
            (Goal::Clear, 1)
        };

        let root_cuts = {
            let graph = build_graph(config);
            let mut mask = 0u64;
            for square in graph.articulation_points() {
                if let Some(i) = index_of(square) {
                    mask |= 1 << i;
                }
            }
            mask
        };

        let mut initial: u128 = 0;
        for (i, &budget) in config.pieces().values().enumerate() {
            initial |= (budget as u128) << (2 * i);
        }

        Packed {
            squares,
            attacks,
            attack_mask,
            frozen_mask,
            goal,
            goal_count,
            required_idx,
            rules,
            node_limit,
            nodes: 0,
            failed: HashSet::new(),
            dominance: HashMap::new(),
            root_cuts,
            path: Vec::new(),
            initial,
        }
    }

    fn initial_state(&self) -> u128 {
        let occupied = self.initial_occupancy();
        let mut state = self.initial;
        // Mark absent squares (none initially, but keep the invariant that
        // every index outside the occupancy mask reads EMPTY).
        for i in 0..self.squares.len() {
            if occupied & (1 << i) == 0 {
                state |= (EMPTY as u128) << (2 * i);
            }
        }
        state
    }

    fn initial_occupancy(&self) -> u64 {
        // All footprint squares start occupied by construction.
        if self.squares.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.squares.len()) - 1
        }
    }

    fn initial_movable_budget(&self) -> u32 {
        let mut total = 0;
        for i in 0..self.squares.len() {
            if self.frozen_mask & (1 << i) == 0 {
                total += self.budget_of(self.initial_state(), i) as u32;
            }
        }
        total
    }

    #[inline]
    fn budget_of(&self, state: u128, i: usize) -> u8 {
        ((state >> (2 * i)) & 3) as u8
    }

    #[inline]
    fn goal_reached(&self, occ: u64) -> bool {
        match self.goal {
            Goal::Clear => occ.count_ones() == 1,
            Goal::ClearAt(r) => occ == 1 << r,
            Goal::Frozen(mask) => occ == mask,
        }
    }

    fn dfs(&mut self, state: u128, occ: u64, movable: u32) -> Outcome {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Outcome::Exhausted;
        }
        if self.goal_reached(occ) {
            return Outcome::Found;
        }
        if self.failed.contains(&state) {
            return Outcome::Fail;
        }
        if self.rules.dominance && self.dominated_by_failure(state, occ) {
            return Outcome::Fail;
        }
        if self.prune(state, occ, movable) {
            // Prunes prove no goal state is reachable from here, so this
            // state may join the failure caches.
            self.record_failure(state, occ);
            return Outcome::Fail;
        }

        if self.rules.antenna_reduction {
            if let Some([(u, v), (_, w)]) = self.forced_antenna_moves(state, occ) {
                // The opening is a forced macro: the goal is reachable from
                // here if and only if it is reachable after playing both
                // captures `u > v`, `v > w` back to back.
                let (s1, o1, m1) = self.apply(state, occ, movable, u, v);
                let (s2, o2, m2) = self.apply(s1, o1, m1, v, w);
                self.path.push((u as u8, v as u8));
                self.path.push((v as u8, w as u8));
                match self.dfs(s2, o2, m2) {
                    Outcome::Found => return Outcome::Found,
                    Outcome::Exhausted => return Outcome::Exhausted,
                    Outcome::Fail => {
                        self.path.pop();
                        self.path.pop();
                    }
                }
                self.record_failure(state, occ);
                return Outcome::Fail;
            }
        }

        for (i, j) in self.ordered_moves(state, occ) {
            let (next_state, next_occ, next_movable) = self.apply(state, occ, movable, i, j);
            self.path.push((i as u8, j as u8));
            match self.dfs(next_state, next_occ, next_movable) {
                Outcome::Found => return Outcome::Found,
                Outcome::Exhausted => return Outcome::Exhausted,
                Outcome::Fail => {
                    self.path.pop();
                }
            }
        }

        self.record_failure(state, occ);
        Outcome::Fail
    }

    #[inline]
    fn apply(
        &self,
        state: u128,
        occ: u64,
        movable: u32,
        i: usize,
        j: usize,
    ) -> (u128, u64, u32) {
        let mover = self.budget_of(state, i);
        let victim = self.budget_of(state, j);
        let mut next = state;
        next |= (EMPTY as u128) << (2 * i); // origin becomes empty
        next &= !((3u128) << (2 * j));
        next |= ((mover - 1) as u128) << (2 * j);
        let next_occ = occ & !(1 << i);
        // The mover spends one unit; the victim's budget disappears unless it
        // was frozen (then it never counted); budget landing on a frozen
        // square becomes immovable.
        let mut next_movable = movable - 1;
        if self.frozen_mask & (1 << j) == 0 {
            next_movable -= victim as u32;
        } else {
            next_movable -= (mover - 1) as u32;
        }
        (next, next_occ, next_movable)
    }

    /// All legal moves, captures into initial articulation points first,
    /// then lexicographic.
    fn ordered_moves(&self, state: u128, occ: u64) -> Vec<(usize, usize)> {
        let mut moves: Vec<(usize, usize)> = Vec::new();
        let mut from_bits = occ & !self.frozen_mask;
        while from_bits != 0 {
            let i = from_bits.trailing_zeros() as usize;
            from_bits &= from_bits - 1;
            if self.budget_of(state, i) == 0 {
                continue;
            }
            for &j in &self.attacks[i] {
                if occ & (1 << j) != 0 {
                    moves.push((i, j));
                }
            }
        }
        moves.sort_by_key(|&(i, j)| (self.root_cuts & (1 << j) == 0, i, j));
        moves
    }

    /// When a two-edge antenna `(u, v, w)` with a budget-2 leaf exists whose
    /// `u`, `v` cannot host the goal, its opening `u > v > w` is forced.
    fn forced_antenna_moves(&self, state: u128, occ: u64) -> Option<[(usize, usize); 2]> {
        let blocked = match self.goal {
            Goal::Clear => return None,
            Goal::ClearAt(r) => 1u64 << r,
            Goal::Frozen(mask) => mask,
        };
        let mut bits = occ;
        while bits != 0 {
            let u = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let u_bit = 1u64 << u;
            if blocked & u_bit != 0 || self.budget_of(state, u) != 2 {
                continue;
            }
            let u_neighbors = self.attack_mask[u] & occ;
            if u_neighbors.count_ones() != 1 {
                continue;
            }
            let v = u_neighbors.trailing_zeros() as usize;
            if blocked & (1 << v) != 0 {
                continue;
            }
            let v_others = self.attack_mask[v] & occ & !u_bit;
            if v_others.count_ones() != 1 {
                continue;
            }
            let w = v_others.trailing_zeros() as usize;
            return Some([(u, v), (v, w)]);
        }
        None
    }

    /// Static reasons why no goal state can be reached from `state`.
    fn prune(&self, state: u128, occ: u64, movable: u32) -> bool {
        if self.rules.budget_bound {
            let to_capture = occ.count_ones() - self.goal_count;
            if movable < to_capture {
                return true;
            }
        }

        let structural = self.rules.disconnected || self.rules.stranded_leaf || self.rules.long_antenna;
        if !structural {
            return false;
        }

        if self.rules.disconnected && self.split_components(occ) {
            return true;
        }

        if self.rules.stranded_leaf || self.rules.long_antenna {
            // Allowed final squares in clearing mode; `None` = unconstrained.
            let mut allowed: Option<u64> = self.required_idx.map(|r| 1u64 << r);
            let frozen_mode = self.frozen_mask != 0;

            let mut bits = occ;
            while bits != 0 {
                let leaf = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if (self.attack_mask[leaf] & occ).count_ones() != 1 {
                    continue;
                }
                let budget = self.budget_of(state, leaf) as usize;

                if self.rules.stranded_leaf && budget == 0 {
                    // This square can never be emptied.
                    if frozen_mode {
                        if self.frozen_mask & (1 << leaf) == 0 {
                            return true;
                        }
                        continue;
                    }
                    match constrain(&mut allowed, 1u64 << leaf) {
                        false => return true,
                        true => continue,
                    }
                }

                if self.rules.long_antenna {
                    let (path_mask, length, prefix_mask) = self.walk_antenna(occ, leaf, budget);
                    if budget < length {
                        if frozen_mode {
                            // All antenna squares would have to be emptied.
                            if path_mask & self.frozen_mask == 0 {
                                return true;
                            }
                        } else if !constrain(&mut allowed, prefix_mask) {
                            return true;
                        }
                    }
                }
            }
        }

        false
    }

    /// Walks the antenna starting at `leaf`, returning the mask of all its
    /// squares (anchor included), its edge count, and the mask of
    /// `v_0 ..= v_min(budget, length)` — the only squares that could host a
    /// final piece if the antenna is too long for the leaf's budget.
    fn walk_antenna(&self, occ: u64, leaf: usize, leaf_budget: usize) -> (u64, usize, u64) {
        let mut path_mask = 1u64 << leaf;
        let mut prefix_mask = 1u64 << leaf;
        let mut length = 0usize;
        let mut prev_bit = 1u64 << leaf;
        let mut current = (self.attack_mask[leaf] & occ).trailing_zeros() as usize;
        loop {
            length += 1;
            path_mask |= 1 << current;
            if length <= leaf_budget {
                prefix_mask |= 1 << current;
            }
            let onward = self.attack_mask[current] & occ & !prev_bit & !path_mask;
            if (self.attack_mask[current] & occ).count_ones() != 2 || onward.count_ones() != 1 {
                break;
            }
            prev_bit = 1 << current;
            current = onward.trailing_zeros() as usize;
        }
        (path_mask, length, prefix_mask)
    }

    /// True when the occupied squares split into parts that cannot all be
    /// cleared: two components in clearing mode, or a component without a
    /// frozen square in frozen mode.
    fn split_components(&self, occ: u64) -> bool {
        let mut rest = occ;
        let mut first = true;
        while rest != 0 {
            let seed = rest & rest.wrapping_neg();
            let mut comp = seed;
            loop {
                let mut grow = comp;
                let mut bits = comp;
                while bits != 0 {
                    let i = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    grow |= self.attack_mask[i] & occ;
                }
                if grow == comp {
                    break;
                }
                comp = grow;
            }
            if self.frozen_mask != 0 {
                if comp & self.frozen_mask == 0 {
                    return true;
                }
            } else if !first {
                return true;
            }
            first = false;
            rest &= !comp;
        }
        false
    }

    fn dominated_by_failure(&self, state: u128, occ: u64) -> bool {
        let Some(bucket) = self.dominance.get(&occ) else {
            return false;
        };
        bucket
            .iter()
            .any(|&failed| dominates(failed, state, occ))
    }

    fn record_failure(&mut self, state: u128, occ: u64) {
        self.failed.insert(state);
        if !self.rules.dominance {
            return;
        }
        let bucket = self.dominance.entry(occ).or_default();
        if bucket.iter().any(|&f| dominates(f, state, occ)) {
            return;
        }
        bucket.retain(|&f| !dominates(state, f, occ));
        bucket.push(state);
    }
}

/// Componentwise budget comparison of two states over the same occupancy.
#[inline]
fn dominates(a: u128, b: u128, occ: u64) -> bool {
    let mut bits = occ;
    while bits != 0 {
        let i = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        if ((a >> (2 * i)) & 3) < ((b >> (2 * i)) & 3) {
            return false;
        }
    }
    true
}

fn constrain(allowed: &mut Option<u64>, mask: u64) -> bool {
    let next = match *allowed {
        None => mask,
        Some(current) => current & mask,
    };
    *allowed = Some(next);
    next != 0
}

/// Fallback for boards with more than 64 pieces: map-based depth-first
/// search with a transposition table and the budget bound. Such boards are
/// far beyond exhaustive search, but the engine must stay total.
fn solve_big(
    start: &Configuration,
    options: &SolveOptions,
    rules: PruningRules,
    node_limit: u64,
    prefix: Vec<Capture>,
) -> SolveResult {
    struct Big<'a> {
        options: &'a SolveOptions,
        rules: PruningRules,
        node_limit: u64,
        nodes: u64,
        failed: HashSet<Configuration>,
        path: Vec<Capture>,
    }

    impl Big<'_> {
        fn dfs(&mut self, config: &Configuration) -> Outcome {
            self.nodes += 1;
            if self.nodes > self.node_limit {
                return Outcome::Exhausted;
            }
            if crate::naive_goal(config, self.options) {
                return Outcome::Found;
            }
            if self.failed.contains(config) {
                return Outcome::Fail;
            }
            if self.rules.budget_bound {
                let movable: u32 = config
                    .pieces()
                    .iter()
                    .filter(|(sq, _)| !self.options.frozen_squares.contains(sq))
                    .map(|(_, &b)| b as u32)
                    .sum();
                let goal_count = if self.options.frozen_squares.is_empty() {
                    1
                } else {
                    self.options.frozen_squares.len()
                };
                if (movable as usize) < config.piece_count().saturating_sub(goal_count) {
                    self.failed.insert(config.clone());
                    return Outcome::Fail;
                }
            }
            for capture in config.legal_captures() {
                if self.options.frozen_squares.contains(&capture.from) {
                    continue;
                }
                let next = config.apply(capture).expect("legal capture");
                self.path.push(capture);
                match self.dfs(&next) {
                    Outcome::Found => return Outcome::Found,
                    Outcome::Exhausted => return Outcome::Exhausted,
                    Outcome::Fail => {
                        self.path.pop();
                    }
                }
            }
            self.failed.insert(config.clone());
            Outcome::Fail
        }
    }

    let mut big = Big {
        options,
        rules,
        node_limit,
        nodes: 0,
        failed: HashSet::new(),
        path: Vec::new(),
    };
    match big.dfs(start) {
        Outcome::Found => {
            let mut witness = prefix;
            witness.extend(big.path);
            SolveResult::Clearable(witness)
        }
        Outcome::Fail => SolveResult::Unclearable,
        Outcome::Exhausted => SolveResult::ResourceExhausted(big.nodes),
    }
}
