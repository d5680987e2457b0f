//! Capture-graph tests frozen against the gadget footprints and the
//! structural lemmas they rely on.

use std::collections::BTreeSet;

use solochess_core::{Configuration, PieceKind, Square};
use solochess_graph::build_graph;

fn sq(x: u32, y: u32) -> Square {
    Square::new(x, y)
}

fn board(kind: PieceKind, squares: &[(u32, u32)]) -> Configuration {
    Configuration::new(kind, squares.iter().map(|&(x, y)| (sq(x, y), 2u8))).unwrap()
}

/// Six columns of a knight wire: outer and inner square per column.
fn knight_wire() -> Configuration {
    board(
        PieceKind::Knight,
        &[
            (1, 1),
            (1, 3),
            (3, 2),
            (3, 4),
            (5, 1),
            (5, 3),
            (7, 2),
            (7, 4),
            (9, 1),
            (9, 3),
            (11, 2),
            (11, 4),
        ],
    )
}

/// The nine kings of a horizontal king wire with its connector column.
fn king_wire() -> Configuration {
    board(
        PieceKind::King,
        &[
            (1, 2),
            (2, 1),
            (2, 2),
            (3, 1),
            (3, 2),
            (4, 1),
            (4, 2),
            (4, 3),
            (5, 2),
        ],
    )
}

#[test]
fn knight_wire_degrees() {
    let g = build_graph(&knight_wire());
    // Interior inner squares sit on four edges, interior outer squares on
    // two; the first and last outer squares are leaves.
    for inner in [sq(3, 2), sq(5, 3), sq(7, 2), sq(9, 3)] {
        assert_eq!(g.degree(inner), 4, "inner {inner}");
    }
    for outer in [sq(3, 4), sq(5, 1), sq(7, 4), sq(9, 1)] {
        assert_eq!(g.degree(outer), 2, "outer {outer}");
    }
    assert_eq!(g.degree(sq(1, 1)), 1);
    assert_eq!(g.degree(sq(11, 4)), 1);
    assert!(g.is_connected());
    assert!(g.is_bipartite_by_color(), "knight graphs alternate colors");
}

#[test]
fn king_wire_has_two_cuts_but_no_articulation_point() {
    let g = build_graph(&king_wire());
    assert!(g.is_connected());
    assert!(
        g.articulation_points().is_empty(),
        "no single king disconnects a wire"
    );
    // Each interior column is a vertex cut of size two.
    let col2: BTreeSet<Square> = [sq(2, 1), sq(2, 2)].into_iter().collect();
    let col3: BTreeSet<Square> = [sq(3, 1), sq(3, 2)].into_iter().collect();
    assert!(g.is_vertex_cut(&col2));
    assert!(g.is_vertex_cut(&col3));
    // Diagonal contacts join same-colored squares.
    assert!(!g.is_bipartite_by_color());
}

#[test]
fn knight_crossing_overlay_has_two_components() {
    // Two knight wires crossing each other: their squares interleave on the
    // board but the capture graph splits into one component per wire.
    let horizontal = [
        (1u32, 4u32),
        (1, 6),
        (3, 5),
        (3, 7),
        (5, 4),
        (5, 6),
        (7, 5),
        (7, 7),
        (9, 4),
        (9, 6),
        (11, 5),
        (11, 7),
    ];
    let vertical = [
        (5u32, 1u32),
        (9, 1),
        (3, 2),
        (7, 2),
        (5, 3),
        (9, 3),
        (3, 4),
        (7, 4),
        (5, 5),
        (9, 5),
        (3, 6),
        (7, 6),
        (5, 7),
        (9, 7),
        (3, 8),
        (7, 8),
        (5, 9),
        (9, 9),
    ];
    let mut all = horizontal.to_vec();
    all.extend_from_slice(&vertical);
    let g = build_graph(&board(PieceKind::Knight, &all));

    let components = g.connected_components();
    assert_eq!(components.len(), 2);
    let horizontal_set: BTreeSet<Square> =
        horizontal.iter().map(|&(x, y)| sq(x, y)).collect();
    let vertical_set: BTreeSet<Square> = vertical.iter().map(|&(x, y)| sq(x, y)).collect();
    assert!(components.contains(&horizontal_set));
    assert!(components.contains(&vertical_set));
}

#[test]
fn max_gadget_has_expected_antenna() {
    // The 21-knight MAX gadget: a long wire, a side branch, and a
    // three-square antenna hanging off the junction.
    let max = board(
        PieceKind::Knight,
        &[
            (1, 4),
            (1, 6),
            (3, 5),
            (3, 7),
            (5, 4),
            (5, 6),
            (7, 5),
            (7, 7),
            (9, 4),
            (9, 6),
            (11, 5),
            (11, 7),
            (3, 1),
            (5, 1),
            (4, 3),
            (6, 3),
            (5, 5),
            (4, 7),
            (5, 9),
            (6, 8),
            (7, 8),
        ],
    );
    let g = build_graph(&max);
    assert!(g.is_connected());

    let antennae = g.find_antennae();
    assert_eq!(antennae.len(), 4);
    let two_antenna = antennae
        .iter()
        .find(|a| a.path[0] == sq(7, 8))
        .expect("leaf at (7, 8)");
    assert_eq!(two_antenna.path, vec![sq(7, 8), sq(5, 9), sq(4, 7)]);
    assert_eq!(two_antenna.length(), 2);
    assert_eq!(two_antenna.leaf_budget, 2);
}

#[test]
fn antennae_on_path_components() {
    // A bare three-square knight path is an antenna from either end.
    let path = board(PieceKind::Knight, &[(0, 0), (1, 2), (2, 4)]);
    let g = build_graph(&path);
    let antennae = g.find_antennae();
    assert_eq!(antennae.len(), 2);
    assert_eq!(antennae[0].path, vec![sq(0, 0), sq(1, 2), sq(2, 4)]);
    assert_eq!(antennae[1].path, vec![sq(2, 4), sq(1, 2), sq(0, 0)]);
}

#[test]
fn neighborhood_is_open() {
    let g = build_graph(&king_wire());
    let x: BTreeSet<Square> = [sq(2, 1), sq(2, 2)].into_iter().collect();
    let n = g.neighborhood(&x);
    assert!(!n.contains(&sq(2, 1)) && !n.contains(&sq(2, 2)));
    let expected: BTreeSet<Square> =
        [sq(1, 2), sq(3, 1), sq(3, 2)].into_iter().collect();
    assert_eq!(n, expected);
}

#[test]
fn eight_king_example_satisfies_zero_piece_lemmas() {
    let c = board(
        PieceKind::King,
        &[
            (2, 1),
            (3, 1),
            (1, 2),
            (2, 2),
            (4, 2),
            (3, 3),
            (4, 3),
            (5, 3),
        ],
    );
    let clearing = vec![
        solochess_core::Capture::new(sq(2, 1), sq(3, 1)),
        solochess_core::Capture::new(sq(3, 1), sq(4, 2)),
        solochess_core::Capture::new(sq(1, 2), sq(2, 2)),
        solochess_core::Capture::new(sq(2, 2), sq(3, 3)),
        solochess_core::Capture::new(sq(5, 3), sq(4, 2)),
        solochess_core::Capture::new(sq(4, 3), sq(3, 3)),
        solochess_core::Capture::new(sq(3, 3), sq(4, 2)),
    ];
    let profile = c.profile(&clearing).unwrap();
    let g = build_graph(&c);

    // The pieces that never move form a connected subgraph…
    assert!(g.is_connected_subset(&profile.virtual_zero));
    // …and every articulation point holds such a piece.
    for cut_vertex in g.articulation_points() {
        assert!(profile.virtual_zero.contains(&cut_vertex));
    }
}
