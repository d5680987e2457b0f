//! Exhaustive solver for 2-Solo Chess.
//!
//! The solver answers three questions about a configuration:
//!
//! * [`solve`] — is there a capture sequence reaching the goal (clear the
//!   board, optionally onto a required final square; or, with frozen
//!   squares, clear everything except exactly those squares)? Returns a
//!   witness sequence when one exists.
//! * [`enumerate_outputs`] — over *all* normalized sequences (those that
//!   clear everything except designated port squares), which signal tuples
//!   can be read off the ports? Used to machine-check gadget semantics.
//! * [`check_sequence`] — replay a given sequence and profile it.
//!
//! [`solve`] explores the exact state space (occupancy plus per-piece
//! budgets) depth-first with a transposition table, optionally sharpened by
//! six independently toggleable pruning rules derived from structural
//! properties of capture graphs; see [`PruningRules`]. [`naive_solve`] is a
//! deliberately independent plain depth-first implementation used as an
//! oracle in tests: same goal semantics, no shared search code, no pruning
//! beyond the trivial budget bound.

mod enumerate;
mod engine;

pub use enumerate::{enumerate_outputs, OutputEnumeration};

use std::collections::BTreeSet;

use solochess_core::{
    Capture, CaptureSequence, Configuration, CoreError, SequenceProfile, Square,
};
use thiserror::Error;

/// The six pruning rules of [`solve`], individually toggleable so tests can
/// compare each rule against the naive oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PruningRules {
    /// Fail when the total budget of movable pieces is smaller than the
    /// number of pieces that still have to be captured.
    pub budget_bound: bool,
    /// Fail when the capture graph splits into parts that cannot all reach
    /// the goal (two components in clearing mode; a component without a
    /// frozen square in frozen mode).
    pub disconnected: bool,
    /// A 0-budget piece on a degree-1 vertex never moves and its square can
    /// never be emptied, so it must be the final square (or frozen).
    pub stranded_leaf: bool,
    /// Before searching, repeatedly play the forced openings of two-edge
    /// antennae (leaf budget 2, goal not on the antenna): the leaf captures
    /// through its path, and doing so first never hurts.
    pub antenna_reduction: bool,
    /// An antenna whose leaf budget is smaller than its edge count pins the
    /// final square onto the antenna; fail states contradicting that.
    pub long_antenna: bool,
    /// Remember failed states per occupancy pattern and fail any state some
    /// failed state dominates budget-for-budget.
    pub dominance: bool,
}

impl PruningRules {
    pub const fn all() -> Self {
        PruningRules {
            budget_bound: true,
            disconnected: true,
            stranded_leaf: true,
            antenna_reduction: true,
            long_antenna: true,
            dominance: true,
        }
    }

    pub const fn none() -> Self {
        PruningRules {
            budget_bound: false,
            disconnected: false,
            stranded_leaf: false,
            antenna_reduction: false,
            long_antenna: false,
            dominance: false,
        }
    }
}

impl Default for PruningRules {
    fn default() -> Self {
        PruningRules::all()
    }
}

/// Options shared by [`solve`], [`naive_solve`] and [`enumerate_outputs`].
#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Clearing mode only: the square the last piece must stand on.
    pub required_final_square: Option<Square>,
    /// When non-empty, switches to *frozen* (normalized) mode: pieces on
    /// these squares never move, captures into them are still allowed, and
    /// the goal is to occupy exactly these squares. Every frozen square must
    /// be occupied initially, since captures never land on empty squares.
    pub frozen_squares: BTreeSet<Square>,
    /// Search budget in visited states; must be positive.
    pub node_limit: u64,
    /// Master switch for the pruning rules; `false` leaves only the
    /// transposition table.
    pub use_pruning: bool,
    /// Individual rule toggles, effective only when `use_pruning` is set.
    pub rules: PruningRules,
    /// Force a fixed, reproducible exploration order. The current engine is
    /// single-threaded and always deterministic; the flag is part of the
    /// interface so callers can state their requirement.
    pub deterministic: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            required_final_square: None,
            frozen_squares: BTreeSet::new(),
            node_limit: 10_000_000,
            use_pruning: true,
            rules: PruningRules::all(),
            deterministic: true,
        }
    }
}

impl SolveOptions {
    /// The rules actually in effect.
    pub(crate) fn effective_rules(&self) -> PruningRules {
        if self.use_pruning {
            self.rules
        } else {
            PruningRules::none()
        }
    }
}

/// Outcome of [`solve`] / [`naive_solve`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveResult {
    /// A goal-reaching sequence exists; the witness replays from the input
    /// configuration to the goal.
    Clearable(CaptureSequence),
    /// The full reachable space was explored without reaching the goal.
    Unclearable,
    /// The node limit was hit before the search space was exhausted; the
    /// payload is the number of states visited.
    ResourceExhausted(u64),
}

impl SolveResult {
    pub fn is_clearable(&self) -> bool {
        matches!(self, SolveResult::Clearable(_))
    }
}

/// Errors of [`check_sequence`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    /// Some capture in the sequence is illegal; reports its index.
    #[error("capture #{index} is illegal: {source}")]
    IllegalCapture {
        index: usize,
        #[source]
        source: CoreError,
    },
    /// The sequence was required to clear onto `expected` but did not.
    #[error("expected final square {expected}, got {}",
        .actual.map(|s| s.to_string()).unwrap_or_else(|| "an uncleared board".into()))]
    WrongFinalSquare {
        expected: Square,
        /// The single final square, or `None` when the board is not cleared.
        actual: Option<Square>,
    },
}

/// Errors of [`enumerate_outputs`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("node limit exhausted after visiting {nodes} states")]
    ResourceExhausted { nodes: u64 },
    #[error("port square {square} is not part of the configuration")]
    PortOffBoard { square: Square },
}

/// Searches for a goal-reaching capture sequence. See [`SolveOptions`] for
/// the goal modes and [`PruningRules`] for the pruning rules.
pub fn solve(config: &Configuration, options: &SolveOptions) -> SolveResult {
    engine::solve(config, options)
}

/// Plain depth-first reference solver: identical goal semantics to
/// [`solve`], but no transposition table and no pruning beyond the trivial
/// budget bound. Exponentially slower; exists to cross-check [`solve`].
pub fn naive_solve(config: &Configuration, options: &SolveOptions) -> SolveResult {
    let goal_count = if options.frozen_squares.is_empty() {
        1
    } else {
        // Frozen squares must be occupied from the start: captures never
        // land on empty squares, so an empty frozen square stays empty.
        for &square in &options.frozen_squares {
            if !config.is_occupied(square) {
                return SolveResult::Unclearable;
            }
        }
        options.frozen_squares.len()
    };
    if let (Some(required), false) = (
        options.required_final_square,
        options.frozen_squares.is_empty(),
    ) {
        if !options.frozen_squares.contains(&required) {
            return SolveResult::Unclearable;
        }
    }

    let mut nodes = 0u64;
    let mut witness = Vec::new();
    match naive_dfs(config, options, goal_count, &mut nodes, &mut witness) {
        NaiveOutcome::Found => SolveResult::Clearable(witness),
        NaiveOutcome::Fail => SolveResult::Unclearable,
        NaiveOutcome::Exhausted => SolveResult::ResourceExhausted(nodes),
    }
}

enum NaiveOutcome {
    Found,
    Fail,
    Exhausted,
}

pub(crate) fn naive_goal(config: &Configuration, options: &SolveOptions) -> bool {
    if options.frozen_squares.is_empty() {
        config.piece_count() == 1
            && options
                .required_final_square
                .map_or(true, |f| config.is_occupied(f))
    } else {
        config.piece_count() == options.frozen_squares.len()
            && options
                .frozen_squares
                .iter()
                .all(|&s| config.is_occupied(s))
    }
}

fn naive_dfs(
    config: &Configuration,
    options: &SolveOptions,
    goal_count: usize,
    nodes: &mut u64,
    witness: &mut Vec<Capture>,
) -> NaiveOutcome {
    *nodes += 1;
    if *nodes > options.node_limit {
        return NaiveOutcome::Exhausted;
    }
    if naive_goal(config, options) {
        return NaiveOutcome::Found;
    }
    // Trivial budget bound: every capture spends one budget unit of a piece
    // standing on a movable square.
    let movable_budget: u32 = config
        .pieces()
        .iter()
        .filter(|(sq, _)| !options.frozen_squares.contains(sq))
        .map(|(_, &b)| b as u32)
        .sum();
    let to_capture = config.piece_count().saturating_sub(goal_count) as u32;
    if movable_budget < to_capture {
        return NaiveOutcome::Fail;
    }

    for capture in config.legal_captures() {
        if options.frozen_squares.contains(&capture.from) {
            continue;
        }
        let next = config.apply(capture).expect("legal capture");
        witness.push(capture);
        match naive_dfs(&next, options, goal_count, nodes, witness) {
            NaiveOutcome::Found => return NaiveOutcome::Found,
            NaiveOutcome::Exhausted => return NaiveOutcome::Exhausted,
            NaiveOutcome::Fail => {
                witness.pop();
            }
        }
    }
    NaiveOutcome::Fail
}

/// Replays `sequence` on `config` and returns its profile. With
/// `expect_final` set, additionally requires the sequence to clear the
/// configuration onto that square.
pub fn check_sequence(
    config: &Configuration,
    sequence: &[Capture],
    expect_final: Option<Square>,
) -> Result<SequenceProfile, CheckError> {
    let profile = config
        .profile(sequence)
        .map_err(|e| CheckError::IllegalCapture {
            index: e.index,
            source: e.source,
        })?;
    if let Some(expected) = expect_final {
        if profile.final_square != Some(expected) {
            return Err(CheckError::WrongFinalSquare {
                expected,
                actual: profile.final_square,
            });
        }
    }
    Ok(profile)
}
