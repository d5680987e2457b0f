//! Solver tests: frozen worked examples, goal-mode semantics, and a quick
//! oracle cross-check (the full randomized battery lives in the acceptance
//! suite).

use std::collections::BTreeSet;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use solochess_core::{
    Capture, Configuration, PieceKind, PortBinding, PortRole, ReadConvention, Signal, Square,
};
use solochess_solver::{
    check_sequence, enumerate_outputs, naive_solve, solve, CheckError, SolveOptions, SolveResult,
};

fn sq(x: u32, y: u32) -> Square {
    Square::new(x, y)
}

fn board(kind: PieceKind, pieces: &[(u32, u32, u8)]) -> Configuration {
    Configuration::new(kind, pieces.iter().map(|&(x, y, b)| (sq(x, y), b))).unwrap()
}

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

#[test]
fn eight_king_example_is_clearable_onto_expected_square() {
    let c = eight_kings();
    let options = SolveOptions {
        required_final_square: Some(sq(4, 2)),
        ..SolveOptions::default()
    };
    let SolveResult::Clearable(witness) = solve(&c, &options) else {
        panic!("expected clearable");
    };
    let profile = check_sequence(&c, &witness, Some(sq(4, 2))).unwrap();
    assert_eq!(profile.final_square, Some(sq(4, 2)));

    // Any final square works too, and the naive oracle agrees.
    assert!(solve(&c, &SolveOptions::default()).is_clearable());
    assert!(naive_solve(&c, &SolveOptions::default()).is_clearable());
}

#[test]
fn stranded_leaf_pins_the_final_square() {
    // u(0,0) has no budget and a single neighbor: its square can never be
    // emptied, so u is the only possible final square.
    let c = board(PieceKind::King, &[(0, 0, 0), (1, 0, 2), (2, 0, 2)]);

    let onto_leaf = SolveOptions {
        required_final_square: Some(sq(0, 0)),
        ..SolveOptions::default()
    };
    let SolveResult::Clearable(witness) = solve(&c, &onto_leaf) else {
        panic!("expected clearable onto the stranded leaf");
    };
    check_sequence(&c, &witness, Some(sq(0, 0))).unwrap();
    assert!(naive_solve(&c, &onto_leaf).is_clearable());

    for other in [sq(1, 0), sq(2, 0)] {
        let options = SolveOptions {
            required_final_square: Some(other),
            ..SolveOptions::default()
        };
        assert_eq!(solve(&c, &options), SolveResult::Unclearable);
        assert_eq!(naive_solve(&c, &options), SolveResult::Unclearable);
    }
}

#[test]
fn disconnected_boards_are_unclearable() {
    let c = board(PieceKind::King, &[(0, 0, 2), (1, 0, 2), (5, 5, 2)]);
    assert_eq!(solve(&c, &SolveOptions::default()), SolveResult::Unclearable);
    assert_eq!(
        naive_solve(&c, &SolveOptions::default()),
        SolveResult::Unclearable
    );
}

#[test]
fn node_limit_reports_exhaustion() {
    let options = SolveOptions {
        node_limit: 1,
        ..SolveOptions::default()
    };
    match solve(&eight_kings(), &options) {
        SolveResult::ResourceExhausted(nodes) => assert!(nodes >= 1),
        other => panic!("expected exhaustion, got {other:?}"),
    }
}

#[test]
fn frozen_squares_stay_put_and_goal_is_exact() {
    // Middle piece may capture either frozen neighbor's occupant.
    let frozen: BTreeSet<Square> = [sq(0, 0), sq(2, 0)].into_iter().collect();
    let c = board(PieceKind::King, &[(0, 0, 2), (1, 0, 2), (2, 0, 2)]);
    let options = SolveOptions {
        frozen_squares: frozen.clone(),
        ..SolveOptions::default()
    };
    let SolveResult::Clearable(witness) = solve(&c, &options) else {
        panic!("expected clearable to frozen squares");
    };
    let end = c.apply_sequence(&witness).unwrap();
    let occupied: BTreeSet<Square> = end.pieces().keys().copied().collect();
    assert_eq!(occupied, frozen);
    // No frozen square ever acts as an origin.
    assert!(witness.iter().all(|cap| !frozen.contains(&cap.from)));
    assert_eq!(solve(&c, &options), naive_solve(&c, &options));

    // A frozen square that starts empty can never be filled.
    let empty_frozen = SolveOptions {
        frozen_squares: [sq(9, 9)].into_iter().collect(),
        ..SolveOptions::default()
    };
    assert_eq!(solve(&c, &empty_frozen), SolveResult::Unclearable);
    assert_eq!(naive_solve(&c, &empty_frozen), SolveResult::Unclearable);
}

#[test]
fn wire_clears_onto_its_output_in_frozen_mode() {
    // A king wire carrying signal 1: input king with budget 1 at (1, 2),
    // body and connector kings with budget 2, output square (5, 2).
    let wire = board(
        PieceKind::King,
        &[
            (1, 2, 1),
            (2, 1, 2),
            (2, 2, 2),
            (3, 1, 2),
            (3, 2, 2),
            (4, 1, 2),
            (4, 2, 2),
            (4, 3, 2),
            (5, 2, 2),
        ],
    );
    let options = SolveOptions {
        frozen_squares: [sq(5, 2)].into_iter().collect(),
        ..SolveOptions::default()
    };
    let SolveResult::Clearable(witness) = solve(&wire, &options) else {
        panic!("wire should normalize onto its output");
    };
    let end = wire.apply_sequence(&witness).unwrap();
    assert_eq!(end.piece_count(), 1);
    assert!(end.is_occupied(sq(5, 2)));
}

#[test]
fn check_sequence_validates_final_square() {
    let c = eight_kings();
    let witness = vec![
        Capture::new(sq(2, 1), sq(3, 1)),
        Capture::new(sq(3, 1), sq(4, 2)),
        Capture::new(sq(1, 2), sq(2, 2)),
        Capture::new(sq(2, 2), sq(3, 3)),
        Capture::new(sq(5, 3), sq(4, 2)),
        Capture::new(sq(4, 3), sq(3, 3)),
        Capture::new(sq(3, 3), sq(4, 2)),
    ];
    check_sequence(&c, &witness, Some(sq(4, 2))).unwrap();
    match check_sequence(&c, &witness, Some(sq(0, 0))) {
        Err(CheckError::WrongFinalSquare { actual, .. }) => {
            assert_eq!(actual, Some(sq(4, 2)));
        }
        other => panic!("expected WrongFinalSquare, got {other:?}"),
    }
    // (2, 1) is empty after its piece moves away: index 1 is illegal.
    let bad = vec![
        Capture::new(sq(2, 1), sq(3, 1)),
        Capture::new(sq(2, 1), sq(2, 2)),
    ];
    match check_sequence(&c, &bad, None) {
        Err(CheckError::IllegalCapture { index: 1, .. }) => {}
        other => panic!("expected IllegalCapture at 1, got {other:?}"),
    }
}

#[test]
fn enumerate_outputs_on_a_three_piece_line() {
    let c = board(PieceKind::King, &[(0, 0, 2), (1, 0, 2), (2, 0, 1)]);
    let port = PortBinding::new(
        PortRole::Output,
        vec![sq(2, 0)],
        ReadConvention::KingSingle,
    );
    let result = enumerate_outputs(&c, &[port.clone()], &SolveOptions::default()).unwrap();
    let expected: std::collections::BTreeSet<Vec<Signal>> =
        [vec![Signal::King(0)]].into_iter().collect();
    assert_eq!(result.tuples, expected);
    assert_eq!(result.unreadable_states, 0);

    // Pruning only skips dead ends: the exact same set comes back raw.
    let raw = SolveOptions {
        use_pruning: false,
        ..SolveOptions::default()
    };
    assert_eq!(enumerate_outputs(&c, &[port], &raw).unwrap().tuples, expected);
}

#[test]
fn solver_is_deterministic() {
    let c = eight_kings();
    let SolveResult::Clearable(w1) = solve(&c, &SolveOptions::default()) else {
        panic!();
    };
    let SolveResult::Clearable(w2) = solve(&c, &SolveOptions::default()) else {
        panic!();
    };
    assert_eq!(w1, w2);
}

fn random_board(rng: &mut ChaCha8Rng, kind: PieceKind, max_pieces: usize) -> Configuration {
    let n = rng.gen_range(2..=max_pieces);
    let span = rng.gen_range(3..=5);
    let mut pieces = std::collections::BTreeMap::new();
    while pieces.len() < n {
        let square = sq(rng.gen_range(0..span), rng.gen_range(0..span));
        pieces
            .entry(square)
            .or_insert_with(|| rng.gen_range(0..=2u8));
    }
    Configuration::new(kind, pieces).unwrap()
}

#[test]
fn pruned_solver_matches_naive_oracle_on_random_boards() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    for kind in [PieceKind::King, PieceKind::Knight] {
        for round in 0..60 {
            let c = random_board(&mut rng, kind, 6);
            let mut options = SolveOptions::default();
            let squares: Vec<Square> = c.pieces().keys().copied().collect();
            // Sometimes pin the final square or freeze a subset, to
            // exercise the goal-specific prunes.
            match rng.gen_range(0..10) {
                0..=3 => {
                    options.required_final_square = Some(*squares.choose(&mut rng).unwrap());
                }
                4..=6 => {
                    let count = rng.gen_range(1..=2.min(squares.len()));
                    options.frozen_squares = squares
                        .choose_multiple(&mut rng, count)
                        .copied()
                        .collect();
                }
                _ => {}
            }

            let fast = solve(&c, &options);
            let naive = naive_solve(&c, &options);
            let unpruned = solve(
                &c,
                &SolveOptions {
                    use_pruning: false,
                    ..options.clone()
                },
            );
            let status = |r: &SolveResult| match r {
                SolveResult::Clearable(_) => "clearable",
                SolveResult::Unclearable => "unclearable",
                SolveResult::ResourceExhausted(_) => "exhausted",
            };
            assert_eq!(
                status(&fast),
                status(&naive),
                "{kind} round {round}: {c}, options {options:?}"
            );
            assert_eq!(status(&fast), status(&unpruned), "{kind} round {round}");
            if let SolveResult::Clearable(witness) = &fast {
                let end = c.apply_sequence(witness).expect("witness must replay");
                if options.frozen_squares.is_empty() {
                    assert_eq!(end.piece_count(), 1);
                    if let Some(f) = options.required_final_square {
                        assert!(end.is_occupied(f));
                    }
                } else {
                    let occupied: BTreeSet<Square> = end.pieces().keys().copied().collect();
                    assert_eq!(occupied, options.frozen_squares);
                    assert!(witness
                        .iter()
                        .all(|cap| !options.frozen_squares.contains(&cap.from)));
                }
            }
        }
    }
}
