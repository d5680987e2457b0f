//! Exhaustive enumeration of normalized outputs.
//!
//! A capture sequence is *normalized* for a set of port squares when it
//! clears every square outside the ports. [`enumerate_outputs`] visits the
//! exact reachable state space of a configuration and collects, over all
//! normalized sequences, every signal tuple readable at the given ports.
//!
//! Unlike [`solve`](crate::solve), enumeration never uses the dominance
//! rule: raising budgets can turn a readable port state into an unreadable
//! one (a knight-column inner square with budget 2, a pair port holding two
//! 2-kings), so dominated states cannot be skipped without losing tuples.
//! The structural prunes it does use (budget bound, dead components,
//! stranded leaves, starved antennae) only discard states from which *no*
//! normalized state is reachable, keeping the enumeration exact.

use std::collections::{BTreeSet, HashSet};

use solochess_core::{read_port, Configuration, PortBinding, Signal, Square};

use crate::{EnumerateError, SolveOptions};

const EMPTY: u8 = 3;

/// The result of [`enumerate_outputs`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputEnumeration {
    /// Every signal tuple readable at the ports after some normalized
    /// sequence, in the port order given to the call.
    pub tuples: BTreeSet<Vec<Signal>>,
    /// Number of distinct normalized states whose port occupancy falls
    /// outside the read conventions' alphabets.
    pub unreadable_states: u64,
    /// States visited.
    pub nodes: u64,
}

/// Enumerates the signal tuples readable at `ports` over all normalized
/// sequences of `config`. Exhaustive: either the complete set is returned
/// or the node limit aborts the run with
/// [`EnumerateError::ResourceExhausted`].
///
/// Of `options`, only `node_limit` and `use_pruning` (gating the structural
/// prunes described on the module) are consulted.
pub fn enumerate_outputs(
    config: &Configuration,
    ports: &[PortBinding],
    options: &SolveOptions,
) -> Result<OutputEnumeration, EnumerateError> {
    let squares: Vec<Square> = config.pieces().keys().copied().collect();
    for port in ports {
        for &square in &port.squares {
            if !config.is_occupied(square) {
                return Err(EnumerateError::PortOffBoard { square });
            }
        }
    }
    assert!(
        squares.len() <= 64,
        "enumeration supports at most 64 squares"
    );

    let index_of = |sq: Square| squares.binary_search(&sq).expect("checked on-board");
    let n = squares.len();
    let mut attack_mask = vec![0u64; n];
    let mut attacks: Vec<Vec<usize>> = Vec::with_capacity(n);
    for (i, &square) in squares.iter().enumerate() {
        let targets: Vec<usize> = config
            .kind()
            .attacks(square)
            .into_iter()
            .filter_map(|s| squares.binary_search(&s).ok())
            .collect();
        for &j in &targets {
            attack_mask[i] |= 1 << j;
        }
        attacks.push(targets);
    }

    let mut ports_mask = 0u64;
    for port in ports {
        for &square in &port.squares {
            ports_mask |= 1 << index_of(square);
        }
    }

    let mut initial: u128 = 0;
    for (i, &budget) in config.pieces().values().enumerate() {
        initial |= (budget as u128) << (2 * i);
    }
    let initial_occ: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };

    let mut driver = Driver {
        kind: config.kind(),
        squares,
        attacks,
        attack_mask,
        ports,
        ports_mask,
        prune: options.use_pruning,
        node_limit: options.node_limit.max(1),
        nodes: 0,
        visited: HashSet::new(),
        tuples: BTreeSet::new(),
        unreadable_states: 0,
    };
    if !driver.dfs(initial, initial_occ) {
        return Err(EnumerateError::ResourceExhausted {
            nodes: driver.nodes,
        });
    }
    Ok(OutputEnumeration {
        tuples: driver.tuples,
        unreadable_states: driver.unreadable_states,
        nodes: driver.nodes,
    })
}

struct Driver<'a> {
    kind: solochess_core::PieceKind,
    squares: Vec<Square>,
    attacks: Vec<Vec<usize>>,
    attack_mask: Vec<u64>,
    ports: &'a [PortBinding],
    ports_mask: u64,
    prune: bool,
    node_limit: u64,
    nodes: u64,
    visited: HashSet<u128>,
    tuples: BTreeSet<Vec<Signal>>,
    unreadable_states: u64,
}

impl Driver<'_> {
    /// Returns `false` when the node limit was exhausted.
    fn dfs(&mut self, state: u128, occ: u64) -> bool {
        if !self.visited.insert(state) {
            return true;
        }
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return false;
        }

        if occ & !self.ports_mask == 0 {
            self.record(state, occ);
        }

        if self.prune && self.hopeless(state, occ) {
            return true;
        }

        let mut from_bits = occ;
        while from_bits != 0 {
            let i = from_bits.trailing_zeros() as usize;
            from_bits &= from_bits - 1;
            let mover = ((state >> (2 * i)) & 3) as u8;
            if mover == 0 {
                continue;
            }
            for k in 0..self.attacks[i].len() {
                let j = self.attacks[i][k];
                if occ & (1 << j) == 0 {
                    continue;
                }
                let mut next = state;
                next |= (EMPTY as u128) << (2 * i);
                next &= !(3u128 << (2 * j));
                next |= ((mover - 1) as u128) << (2 * j);
                if !self.dfs(next, occ & !(1 << i)) {
                    return false;
                }
            }
        }
        true
    }

    /// Reads the ports off a normalized state and records the tuple.
    fn record(&mut self, state: u128, occ: u64) {
        let pieces = {
            let mut v = Vec::new();
            let mut bits = occ;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                v.push((self.squares[i], ((state >> (2 * i)) & 3) as u8));
            }
            v
        };
        let snapshot =
            Configuration::new(self.kind, pieces).expect("budgets stay in range during search");
        let mut tuple = Vec::with_capacity(self.ports.len());
        for port in self.ports {
            match read_port(&snapshot, port) {
                Some(signal) => tuple.push(signal),
                None => {
                    self.unreadable_states += 1;
                    return;
                }
            }
        }
        self.tuples.insert(tuple);
    }

    /// True when provably no normalized state is reachable from here. Must
    /// stay conservative: every discarded state really is a dead end, so the
    /// enumeration stays exact.
    fn hopeless(&self, state: u128, occ: u64) -> bool {
        // Budget bound: every square outside the ports still occupied must be
        // emptied, each such capture spending one budget unit.
        let off_ports = (occ & !self.ports_mask).count_ones();
        let mut budget_total = 0u32;
        let mut bits = occ;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            budget_total += ((state >> (2 * i)) & 3) as u32;
        }
        if budget_total < off_ports {
            return true;
        }

        // A 0-budget piece on a leaf square off the ports can never be
        // cleared; an antenna entirely off the ports whose leaf budget is
        // smaller than its edge count cannot be emptied either.
        let mut bits = occ;
        while bits != 0 {
            let leaf = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if (self.attack_mask[leaf] & occ).count_ones() != 1 {
                continue;
            }
            let budget = ((state >> (2 * leaf)) & 3) as usize;
            if budget == 0 && self.ports_mask & (1 << leaf) == 0 {
                return true;
            }
            let (path_mask, length) = self.antenna_of(occ, leaf);
            if budget < length && path_mask & self.ports_mask == 0 {
                return true;
            }
        }

        // A connected component without any port square must vanish
        // entirely, which is impossible.
        let mut rest = occ;
        while rest != 0 {
            let seed = rest & rest.wrapping_neg();
            let mut comp = seed;
            loop {
                let mut grow = comp;
                let mut cbits = comp;
                while cbits != 0 {
                    let i = cbits.trailing_zeros() as usize;
                    cbits &= cbits - 1;
                    grow |= self.attack_mask[i] & occ;
                }
                if grow == comp {
                    break;
                }
                comp = grow;
            }
            if comp & self.ports_mask == 0 {
                return true;
            }
            rest &= !comp;
        }

        false
    }

    fn antenna_of(&self, occ: u64, leaf: usize) -> (u64, usize) {
        let mut path_mask = 1u64 << leaf;
        let mut length = 0usize;
        let mut current = (self.attack_mask[leaf] & occ).trailing_zeros() as usize;
        loop {
            length += 1;
            path_mask |= 1 << current;
            let onward = self.attack_mask[current] & occ & !path_mask;
            if (self.attack_mask[current] & occ).count_ones() != 2 || onward.count_ones() != 1 {
                break;
            }
            current = onward.trailing_zeros() as usize;
        }
        (path_mask, length)
    }
}
