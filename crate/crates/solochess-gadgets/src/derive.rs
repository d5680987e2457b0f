//! Search for capture sequences reaching an exact target arrangement.
//!
//! Used by the catalog builders to derive the canonical scripts that are not
//! transcribed by hand. The search is deterministic (capture candidates are
//! explored in sorted order), so a derived script is stable across runs and
//! can be frozen by tests.

use std::collections::{BTreeMap, HashSet};

use solochess_core::{Capture, CaptureSequence, Configuration, Square};

/// Encodes a configuration over `universe` as two bits per square
/// (0 = empty, else budget + 1). The universe must have at most 64 squares.
fn encode(config: &Configuration, universe: &[Square]) -> u128 {
    let mut code = 0u128;
    for (i, square) in universe.iter().enumerate() {
        let bits = match config.budget(*square) {
            None => 0u128,
            Some(b) => b as u128 + 1,
        };
        code |= bits << (2 * i);
    }
    code
}

/// Finds a capture sequence from `start` to exactly `target` (same squares,
/// same budgets, everything else empty), beginning with `prefix`.
///
/// Returns `None` when no sequence exists (or the prefix is illegal). The
/// prefix pins down the start of the play; it is how builders select one
/// branch of a gadget with several normalized plays.
pub fn find_sequence(
    start: &Configuration,
    target: &BTreeMap<Square, u8>,
    prefix: &[Capture],
) -> Option<CaptureSequence> {
    let universe: Vec<Square> = start.pieces().keys().copied().collect();
    assert!(
        universe.len() <= 64,
        "script derivation supports at most 64 squares, got {}",
        universe.len()
    );
    for square in target.keys() {
        if !start.is_occupied(*square) {
            return None;
        }
    }

    let mut current = start.clone();
    for &capture in prefix {
        current = current.apply(capture).ok()?;
    }

    let target_budget: u32 = target.values().map(|&b| b as u32).sum();
    let mut visited = HashSet::new();
    let mut sequence: CaptureSequence = prefix.to_vec();
    if dfs(
        &current,
        target,
        target_budget,
        &universe,
        &mut visited,
        &mut sequence,
    ) {
        Some(sequence)
    } else {
        None
    }
}

fn dfs(
    config: &Configuration,
    target: &BTreeMap<Square, u8>,
    target_budget: u32,
    universe: &[Square],
    visited: &mut HashSet<u128>,
    sequence: &mut CaptureSequence,
) -> bool {
    let surplus = match config.piece_count().checked_sub(target.len()) {
        Some(s) => s as u32,
        None => return false,
    };
    if surplus == 0 {
        return target
            .iter()
            .all(|(&square, &budget)| config.budget(square) == Some(budget));
    }

    // Each remaining capture removes one piece and changes total budget by
    // -1, -2 or -3 (victim's budget lost, mover pays 1).
    let budget_gap = match config.total_budget().checked_sub(target_budget) {
        Some(g) => g,
        None => return false,
    };
    if budget_gap < surplus || budget_gap > 3 * surplus {
        return false;
    }
    // Budgets only decrease and empty squares stay empty.
    for (&square, &budget) in target {
        match config.budget(square) {
            None => return false,
            Some(b) if b < budget => return false,
            _ => {}
        }
    }

    if !visited.insert(encode(config, universe)) {
        return false;
    }

    for capture in config.legal_captures() {
        let next = config
            .apply(capture)
            .expect("legal_captures yields applicable captures");
        sequence.push(capture);
        if dfs(&next, target, target_budget, universe, visited, sequence) {
            return true;
        }
        sequence.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use solochess_core::PieceKind;

    fn sq(x: u32, y: u32) -> Square {
        Square::new(x, y)
    }

    #[test]
    fn derives_a_line_clearing() {
        // Three kings in a row clear to a single piece on the right end.
        let config = Configuration::new(
            PieceKind::King,
            [(sq(1, 1), 2), (sq(2, 1), 2), (sq(3, 1), 2)],
        )
        .unwrap();
        let target = BTreeMap::from([(sq(3, 1), 0)]);
        let script = find_sequence(&config, &target, &[]).unwrap();
        assert_eq!(script.len(), 2);
        let end = config.apply_sequence(&script).unwrap();
        assert_eq!(end.pieces(), &target);
    }

    #[test]
    fn respects_prefix_and_reports_dead_ends() {
        let config =
            Configuration::new(PieceKind::King, [(sq(1, 1), 2), (sq(2, 1), 2)]).unwrap();
        // Impossible: final budget too high.
        let target = BTreeMap::from([(sq(1, 1), 2)]);
        assert!(find_sequence(&config, &target, &[]).is_none());
        // Possible with the forced first move.
        let target = BTreeMap::from([(sq(1, 1), 1)]);
        let prefix = [Capture::new(sq(2, 1), sq(1, 1))];
        let script = find_sequence(&config, &target, &prefix).unwrap();
        assert_eq!(script, prefix.to_vec());
    }
}
