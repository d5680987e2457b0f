//! Board-model tests: the worked 8-king example, replay conservation
//! invariants, dominance monotony, and the occupancy subset property.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use solochess_core::{
    config_geq, Capture, CaptureSequence, Configuration, CoreError, IllegalCaptureReason,
    PieceKind, Square,
};

fn sq(x: u32, y: u32) -> Square {
    Square::new(x, y)
}

fn cap(fx: u32, fy: u32, tx: u32, ty: u32) -> Capture {
    Capture::new(sq(fx, fy), sq(tx, ty))
}

fn board(kind: PieceKind, pieces: &[(u32, u32, u8)]) -> Configuration {
    Configuration::new(kind, pieces.iter().map(|&(x, y, b)| (sq(x, y), b))).unwrap()
}

/// The 8-king example board: all pieces budget 2.
fn eight_kings() -> Configuration {
    board(
        PieceKind::King,
        &[
            (2, 1, 2),
            (3, 1, 2),
            (1, 2, 2),
            (2, 2, 2),
            (4, 2, 2),
            (3, 3, 2),
            (4, 3, 2),
            (5, 3, 2),
        ],
    )
}

/// Its published clearing sequence.
fn eight_kings_clearing() -> CaptureSequence {
    vec![
        cap(2, 1, 3, 1),
        cap(3, 1, 4, 2),
        cap(1, 2, 2, 2),
        cap(2, 2, 3, 3),
        cap(5, 3, 4, 2),
        cap(4, 3, 3, 3),
        cap(3, 3, 4, 2),
    ]
}

#[test]
fn eight_king_example_clears_to_expected_square() {
    let start = eight_kings();
    let end = start.apply_sequence(&eight_kings_clearing()).unwrap();
    assert!(end.is_cleared());
    assert_eq!(end.budget(sq(4, 2)), Some(0));
}

#[test]
fn eight_king_example_profile() {
    let start = eight_kings();
    let profile = start.profile(&eight_kings_clearing()).unwrap();
    assert_eq!(profile.final_square, Some(sq(4, 2)));
    assert_eq!(profile.remaining_pieces, 1);

    let virtual_zero: Vec<Square> = profile.virtual_zero.iter().copied().collect();
    assert_eq!(virtual_zero, vec![sq(2, 2), sq(3, 1), sq(3, 3), sq(4, 2)]);
    let virtual_two: Vec<Square> = profile.virtual_two.iter().copied().collect();
    assert_eq!(virtual_two, vec![sq(1, 2), sq(2, 1), sq(4, 3), sq(5, 3)]);

    // The piece from (5, 3) moves once and is then captured holding one
    // budget unit; that unit is the only budget lost.
    assert_eq!(profile.lost_budget, 1);
    assert_eq!(profile.captures_made.get(&sq(5, 3)), Some(&1));
    assert_eq!(profile.captures_made.get(&sq(2, 1)), Some(&2));
}

#[test]
fn lost_budget_counts_only_captured_movers() {
    let c = board(PieceKind::King, &[(0, 0, 2), (1, 0, 2), (2, 0, 1)]);

    // A mover that survives holding budget delivers it, losing nothing;
    // capturing unmoved pieces loses nothing either, whatever they hold.
    let p = c.profile(&[cap(0, 0, 1, 0)]).unwrap();
    assert_eq!(p.lost_budget, 0);

    // Capturing a piece that has moved and still holds a unit loses it.
    let p = c.profile(&[cap(0, 0, 1, 0), cap(2, 0, 1, 0)]).unwrap();
    assert_eq!(p.lost_budget, 1);
    assert_eq!(p.final_square, Some(sq(1, 0)));
}

#[test]
fn empty_sequence_profile_is_all_virtual_zero() {
    let start = eight_kings();
    let profile = start.profile(&[]).unwrap();
    assert_eq!(profile.virtual_zero.len(), 8);
    assert!(profile.virtual_two.is_empty());
    assert_eq!(profile.lost_budget, 0);
    assert_eq!(profile.final_square, None);
    assert_eq!(profile.remaining_pieces, 8);
}

#[test]
fn apply_conserves_counts_and_budget() {
    let mut current = eight_kings();
    for capture in eight_kings_clearing() {
        let before_pieces = current.piece_count();
        let before_mover = current.budget(capture.from).unwrap();
        let next = current.apply(capture).unwrap();
        assert_eq!(next.piece_count(), before_pieces - 1);
        assert_eq!(next.budget(capture.to), Some(before_mover - 1));
        assert!(!next.is_occupied(capture.from));
        current = next;
    }
}

#[test]
fn illegal_captures_are_rejected_with_reasons() {
    let c = board(PieceKind::King, &[(0, 0, 2), (1, 1, 2), (3, 3, 2), (4, 4, 0)]);

    let check = |capture: Capture, want: IllegalCaptureReason| {
        match c.apply(capture) {
            Err(CoreError::IllegalCapture { reason, .. }) => assert_eq!(reason, want),
            other => panic!("expected IllegalCapture({want:?}), got {other:?}"),
        }
    };

    check(cap(2, 2, 1, 1), IllegalCaptureReason::FromEmpty);
    check(cap(0, 0, 0, 1), IllegalCaptureReason::ToEmpty);
    check(cap(0, 0, 0, 0), IllegalCaptureReason::SameSquare);
    check(cap(0, 0, 3, 3), IllegalCaptureReason::NotAttacking);
    check(cap(4, 4, 3, 3), IllegalCaptureReason::NoBudget);

    // Knights cannot make king steps and vice versa.
    let n = board(PieceKind::Knight, &[(0, 0, 2), (1, 1, 2), (1, 2, 2)]);
    match n.apply(cap(0, 0, 1, 1)) {
        Err(CoreError::IllegalCapture { reason, .. }) => {
            assert_eq!(reason, IllegalCaptureReason::NotAttacking)
        }
        other => panic!("expected IllegalCapture, got {other:?}"),
    }
    n.apply(cap(0, 0, 1, 2)).unwrap();
}

#[test]
fn sequence_error_reports_first_bad_index() {
    let start = eight_kings();
    let mut sequence = eight_kings_clearing();
    sequence[3] = cap(9, 9, 8, 8); // nonsense in the middle
    let err = start.apply_sequence(&sequence).unwrap_err();
    assert_eq!(err.index, 3);

    let err = start.profile(&sequence).unwrap_err();
    assert_eq!(err.index, 3);
}

#[test]
fn constructor_rejects_bad_budgets_and_duplicates() {
    let err = Configuration::new(PieceKind::King, vec![(sq(0, 0), 3)]).unwrap_err();
    assert!(matches!(err, CoreError::InvalidBudget { budget: 3, .. }));

    let err =
        Configuration::new(PieceKind::King, vec![(sq(0, 0), 2), (sq(0, 0), 1)]).unwrap_err();
    assert!(matches!(err, CoreError::DuplicateSquare { .. }));
}

#[test]
fn attack_sets_match_piece_kind() {
    // Interior king: all eight neighbours.
    assert_eq!(PieceKind::King.attacks(sq(2, 2)).len(), 8);
    // Corner king: clipped to the board.
    assert_eq!(
        PieceKind::King.attacks(sq(0, 0)),
        vec![sq(0, 1), sq(1, 0), sq(1, 1)]
    );
    // Corner knight.
    assert_eq!(
        PieceKind::Knight.attacks(sq(0, 0)),
        vec![sq(1, 2), sq(2, 1)]
    );
    // Knight moves always change square color.
    for target in PieceKind::Knight.attacks(sq(5, 4)) {
        assert_ne!(target.color(), sq(5, 4).color());
    }
}

/// Draws a random configuration of `n` pieces inside a small box.
fn random_board(rng: &mut ChaCha8Rng, kind: PieceKind, n: usize) -> Configuration {
    let mut pieces = std::collections::BTreeMap::new();
    while pieces.len() < n {
        let square = sq(rng.gen_range(0..6), rng.gen_range(0..6));
        pieces.entry(square).or_insert_with(|| rng.gen_range(0..=2u8));
    }
    Configuration::new(kind, pieces).unwrap()
}

/// Plays random legal captures as long as any exist.
fn random_playout(rng: &mut ChaCha8Rng, start: &Configuration) -> CaptureSequence {
    let mut sequence = Vec::new();
    let mut current = start.clone();
    loop {
        let moves = current.legal_captures();
        if moves.is_empty() {
            return sequence;
        }
        let capture = moves[rng.gen_range(0..moves.len())];
        current = current.apply(capture).unwrap();
        sequence.push(capture);
    }
}

#[test]
fn monotony_raising_budgets_preserves_sequence_validity() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for kind in [PieceKind::King, PieceKind::Knight] {
        for _ in 0..200 {
            let low = random_board(&mut rng, kind, 6);
            let sequence = random_playout(&mut rng, &low);

            // Raise a few budgets to build a dominating configuration.
            let high = Configuration::new(
                kind,
                low.pieces().iter().map(|(&square, &budget)| {
                    let raised = if rng.gen_bool(0.5) { 2 } else { budget };
                    (square, budget.max(raised))
                }),
            )
            .unwrap();
            assert!(config_geq(&high, &low));

            // The same sequence stays valid and dominates square-for-square.
            let low_end = low.apply_sequence(&sequence).unwrap();
            let high_end = high
                .apply_sequence(&sequence)
                .expect("sequence valid on dominating configuration");
            assert!(config_geq(&high_end, &low_end));
        }
    }
}

#[test]
fn reachable_occupancy_is_subset_of_initial() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    for kind in [PieceKind::King, PieceKind::Knight] {
        for _ in 0..100 {
            let start = random_board(&mut rng, kind, 7);
            let initial: Vec<Square> = start.pieces().keys().copied().collect();
            let mut current = start.clone();
            for capture in random_playout(&mut rng, &start) {
                current = current.apply(capture).unwrap();
                for square in current.pieces().keys() {
                    assert!(initial.contains(square), "capture landed off-footprint");
                }
            }
        }
    }
}

#[test]
fn config_geq_requires_same_shape() {
    let a = board(PieceKind::King, &[(0, 0, 2), (1, 1, 1)]);
    let b = board(PieceKind::King, &[(0, 0, 1), (1, 1, 1)]);
    let c = board(PieceKind::King, &[(0, 0, 2), (2, 2, 1)]);
    let d = board(PieceKind::Knight, &[(0, 0, 2), (1, 1, 1)]);

    assert!(config_geq(&a, &b));
    assert!(!config_geq(&b, &a));
    assert!(config_geq(&a, &a));
    assert!(!config_geq(&a, &c), "different squares are incomparable");
    assert!(!config_geq(&a, &d), "different kinds are incomparable");
}
