//! Replay analysis of capture sequences.
//!
//! Pieces have no identity in a [`Configuration`]; this module recovers
//! identities by replaying a sequence from its initial configuration and
//! tracking which initial piece currently stands on which square.

use std::collections::{BTreeMap, BTreeSet};

use crate::board::{Capture, Configuration, SequenceError, Square};

/// What a replay of a capture sequence reveals about the pieces involved.
///
/// Pieces are identified by their square in the *initial* configuration.
/// With respect to the analyzed sequence a piece is *virtual-0* when it
/// never moves (it may still be captured, and may hold any budget) and
/// *virtual-2* when it moves at least once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceProfile {
    /// Initial squares of the pieces that never move in the sequence.
    pub virtual_zero: BTreeSet<Square>,
    /// Initial squares of the pieces that move at least once.
    pub virtual_two: BTreeSet<Square>,
    /// Budget that dies unspent on a moving piece: the sum, over pieces
    /// that move at least once and are later captured, of the budget they
    /// hold at the moment of capture. Budgets of pieces that never move do
    /// not count (they are virtually zero), and budget remaining on a
    /// surviving mover is a delivered value, not a loss. Equivalently this
    /// is the movers' total initial budget, minus captures made, minus
    /// budget remaining on surviving movers.
    pub lost_budget: u32,
    /// Number of captures each moving piece performed, keyed by initial
    /// square. Pieces that never move are absent.
    pub captures_made: BTreeMap<Square, u32>,
    /// The single occupied square after the sequence, when the sequence
    /// clears the configuration; `None` when two or more pieces remain.
    pub final_square: Option<Square>,
    /// Piece count after the sequence.
    pub remaining_pieces: usize,
}

impl Configuration {
    /// Replays `sequence` from this configuration and classifies every piece.
    ///
    /// Fails with the index of the first illegal capture, exactly like
    /// [`Configuration::apply_sequence`].
    pub fn profile(&self, sequence: &[Capture]) -> Result<SequenceProfile, SequenceError> {
        // identity[square] = initial square of the piece currently there.
        let mut identity: BTreeMap<Square, Square> =
            self.pieces().keys().map(|&sq| (sq, sq)).collect();
        let mut captures_made: BTreeMap<Square, u32> = BTreeMap::new();
        let mut lost_budget: u32 = 0;
        let mut current = self.clone();

        for (index, &capture) in sequence.iter().enumerate() {
            let victim_budget = current.budget(capture.to);
            let next = current
                .apply(capture)
                .map_err(|source| SequenceError { index, source })?;
            let victim = identity
                .get(&capture.to)
                .copied()
                .expect("apply validated target occupancy");
            if captures_made.contains_key(&victim) {
                lost_budget += victim_budget.expect("target was occupied") as u32;
            }
            let mover = identity
                .remove(&capture.from)
                .expect("apply validated origin occupancy");
            identity.insert(capture.to, mover);
            *captures_made.entry(mover).or_insert(0) += 1;
            current = next;
        }

        let virtual_two: BTreeSet<Square> = captures_made.keys().copied().collect();
        let virtual_zero: BTreeSet<Square> = self
            .pieces()
            .keys()
            .filter(|sq| !virtual_two.contains(sq))
            .copied()
            .collect();

        Ok(SequenceProfile {
            virtual_zero,
            virtual_two,
            lost_budget,
            captures_made,
            final_square: if current.piece_count() == 1 {
                current.pieces().keys().next().copied()
            } else {
                None
            },
            remaining_pieces: current.piece_count(),
        })
    }
}
