//! Signal-order and port read-convention tests.

use solochess_core::{
    read_port, signal_leq, tuple_leq, Configuration, PieceKind, PortBinding, PortRole,
    ReadConvention, Signal, Square,
};

fn sq(x: u32, y: u32) -> Square {
    Square::new(x, y)
}

fn board(kind: PieceKind, pieces: &[(u32, u32, u8)]) -> Configuration {
    Configuration::new(kind, pieces.iter().map(|&(x, y, b)| (sq(x, y), b))).unwrap()
}

#[test]
fn king_signal_order_is_total() {
    let k = Signal::King;
    assert!(signal_leq(&k(0), &k(1)));
    assert!(signal_leq(&k(1), &k(2)));
    assert!(signal_leq(&k(0), &k(2)));
    assert!(!signal_leq(&k(2), &k(1)));
    assert!(signal_leq(&k(1), &k(1)));
}

#[test]
fn knight_signal_order_is_componentwise() {
    let n = Signal::Knight;
    assert!(signal_leq(&n(0, 0), &n(1, 0)));
    assert!(signal_leq(&n(0, 0), &n(0, 1)));
    assert!(signal_leq(&n(1, 0), &n(1, 1)));
    assert!(signal_leq(&n(0, 1), &n(1, 1)));
    // The two unit signals are incomparable.
    assert!(!signal_leq(&n(1, 0), &n(0, 1)));
    assert!(!signal_leq(&n(0, 1), &n(1, 0)));
    // Families never compare.
    assert!(!signal_leq(&Signal::King(0), &n(1, 1)));
}

#[test]
fn tuple_order_is_componentwise() {
    let k = Signal::King;
    assert!(tuple_leq(&[k(0), k(1)], &[k(1), k(1)]));
    assert!(!tuple_leq(&[k(1), k(0)], &[k(0), k(1)]));
    assert!(!tuple_leq(&[k(1)], &[k(1), k(1)]), "length mismatch");
}

#[test]
fn king_single_reads_budget_or_zero_when_empty() {
    let port = PortBinding::new(
        PortRole::Output,
        vec![sq(3, 3)],
        ReadConvention::KingSingle,
    );
    let empty = board(PieceKind::King, &[(0, 0, 2)]);
    assert_eq!(read_port(&empty, &port), Some(Signal::King(0)));

    for budget in 0..=2 {
        let c = board(PieceKind::King, &[(3, 3, budget)]);
        assert_eq!(read_port(&c, &port), Some(Signal::King(budget)));
    }
}

#[test]
fn king_pair_reads_two_signal_in_either_arrangement() {
    let port = PortBinding::new(
        PortRole::Output,
        vec![sq(4, 7), sq(5, 7)],
        ReadConvention::KingPair2Signal,
    );

    // 0 and 1 live on the primary square, secondary empty.
    let zero = board(PieceKind::King, &[(4, 7, 0)]);
    assert_eq!(read_port(&zero, &port), Some(Signal::King(0)));
    let one = board(PieceKind::King, &[(4, 7, 1)]);
    assert_eq!(read_port(&one, &port), Some(Signal::King(1)));

    // A 2-signal is a (2-king, 1-king) pair, either way round.
    let two_a = board(PieceKind::King, &[(4, 7, 2), (5, 7, 1)]);
    assert_eq!(read_port(&two_a, &port), Some(Signal::King(2)));
    let two_b = board(PieceKind::King, &[(4, 7, 1), (5, 7, 2)]);
    assert_eq!(read_port(&two_b, &port), Some(Signal::King(2)));

    // Everything else is outside the alphabet.
    for bad in [
        board(PieceKind::King, &[(4, 7, 2)]),          // lone 2-king
        board(PieceKind::King, &[(5, 7, 1)]),          // secondary only
        board(PieceKind::King, &[(4, 7, 2), (5, 7, 2)]), // double 2
        board(PieceKind::King, &[(4, 7, 0), (5, 7, 1)]), // 0 next to 1
        board(PieceKind::King, &[(0, 0, 1)]),          // both empty
    ] {
        assert_eq!(read_port(&bad, &port), None, "{bad}");
    }
}

#[test]
fn knight_column_reads_outer_and_inner() {
    // Even-colored column: components read (outer, inner) directly.
    let even = PortBinding::new(
        PortRole::Input,
        vec![sq(1, 1), sq(1, 3)],
        ReadConvention::KnightColumn,
    );
    assert_eq!(sq(1, 1).color(), 0);

    let n = Signal::Knight;
    let read =
        |pieces: &[(u32, u32, u8)], port: &PortBinding| read_port(&board(PieceKind::Knight, pieces), port);

    assert_eq!(read(&[(1, 1, 2), (1, 3, 0)], &even), Some(n(1, 0)));
    assert_eq!(read(&[(1, 1, 2), (1, 3, 1)], &even), Some(n(1, 1)));
    assert_eq!(read(&[(1, 3, 1)], &even), Some(n(0, 1)));
    assert_eq!(read(&[(1, 3, 0)], &even), Some(n(0, 0)));

    // Outside the alphabet: outer present without full budget, inner empty,
    // inner with budget 2.
    assert_eq!(read(&[(1, 1, 1), (1, 3, 0)], &even), None);
    assert_eq!(read(&[(1, 1, 0), (1, 3, 0)], &even), None);
    assert_eq!(read(&[(1, 1, 2)], &even), None);
    assert_eq!(read(&[(1, 1, 2), (1, 3, 2)], &even), None);

    // Odd-colored column: the same occupancies report swapped components.
    let odd = PortBinding::new(
        PortRole::Output,
        vec![sq(2, 1), sq(2, 3)],
        ReadConvention::KnightColumn,
    );
    assert_eq!(sq(2, 1).color(), 1);
    assert_eq!(read(&[(2, 1, 2), (2, 3, 0)], &odd), Some(n(0, 1)));
    assert_eq!(read(&[(2, 3, 1)], &odd), Some(n(1, 0)));
    assert_eq!(read(&[(2, 1, 2), (2, 3, 1)], &odd), Some(n(1, 1)));
    assert_eq!(read(&[(2, 3, 0)], &odd), Some(n(0, 0)));
}
