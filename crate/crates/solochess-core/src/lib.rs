//! Board model for 2-Solo Chess.
//!
//! 2-Solo Chess is a single-player game played with same-colored pieces on an
//! unbounded quarter-plane board. Every move is a capture of one of the
//! player's own pieces, and every piece carries a budget of at most two moves.
//! A configuration is *cleared* when exactly one piece remains.
//!
//! This crate provides the ground-truth rules used by every other crate in
//! the workspace:
//!
//! * [`Square`], [`PieceKind`], [`Configuration`] — the board itself,
//! * [`Capture`], [`CaptureSequence`] — moves and move sequences,
//! * [`Configuration::legal_captures`], [`Configuration::apply`],
//!   [`Configuration::apply_sequence`] — the transition relation,
//! * [`SequenceProfile`] / [`Configuration::profile`] — replay analysis
//!   (virtual-0 / virtual-2 classification, budget accounting),
//! * [`config_geq`] — the budget-dominance partial order on configurations,
//! * [`Signal`], [`PortBinding`], [`read_port`] — the signal alphabet and
//!   port read conventions used by gadget verification.
//!
//! Coordinates grow rightwards (`x`) and downwards (`y`), with the origin at
//! the top-left corner. The board is unbounded towards positive `x` and `y`.

mod board;
mod profile;
mod signal;

pub use board::{
    Capture, CaptureSequence, Configuration, CoreError, IllegalCaptureReason, PieceKind,
    SequenceError, Square,
};
pub use profile::SequenceProfile;
pub use signal::{read_port, signal_leq, tuple_leq, PortBinding, PortRole, ReadConvention, Signal};

/// Budget-dominance order: `a >= b` iff both configurations have the same
/// piece kind, occupy exactly the same squares, and every piece of `a` has at
/// least the budget of the corresponding piece of `b`.
///
/// This is the order under which clearability is monotone: any sequence valid
/// on `b` is valid on `a`, and replaying it on `a` dominates the result on
/// `b` square-for-square.
pub fn config_geq(a: &Configuration, b: &Configuration) -> bool {
    if a.kind() != b.kind() || a.piece_count() != b.piece_count() {
        return false;
    }
    a.pieces()
        .iter()
        .zip(b.pieces().iter())
        .all(|((sq_a, bud_a), (sq_b, bud_b))| sq_a == sq_b && bud_a >= bud_b)
}
