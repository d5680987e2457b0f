//! The king gadget catalog: wires, corner, 1-TEST, VAR, OR, AND, MOD-WIRE,
//! the three X-building blocks IN-A / IN-B / OUT, and the composites 2VAR,
//! X* and X.
//!
//! Footprints and canonical scripts of the atomic gadgets are transcribed
//! square-for-square; composite layouts are assembled from placed atoms and
//! wire stubs with machine-checked junctions (see [`crate::compose`]).

use std::collections::{BTreeMap, BTreeSet};

use crate::compose::{assemble, PartDef, ScriptPlan};
use crate::{cap, sq, transform_spec, GadgetSpec, SemanticTable, Semantics, Transform};
use solochess_core::{
    Capture, CaptureSequence, PieceKind, PortBinding, PortRole, ReadConvention, Signal, Square,
};

const K0: Signal = Signal::King(0);
const K1: Signal = Signal::King(1);
const K2: Signal = Signal::King(2);

/// Captures along a chain of squares: `chain(&[a, b, c])` is `a>b, b>c`.
fn chain(squares: &[Square]) -> CaptureSequence {
    squares.windows(2).map(|w| cap(w[0], w[1])).collect()
}

fn single(role: PortRole, square: Square) -> PortBinding {
    PortBinding::new(role, vec![square], ReadConvention::KingSingle)
}

fn pair(role: PortRole, primary: Square, secondary: Square) -> PortBinding {
    PortBinding::new(role, vec![primary, secondary], ReadConvention::KingPair2Signal)
}

fn footprint(squares: &[Square]) -> BTreeMap<Square, u8> {
    squares.iter().map(|&s| (s, 2)).collect()
}

fn atom(
    name: &str,
    squares: &[Square],
    inputs: Vec<PortBinding>,
    outputs: Vec<PortBinding>,
    semantics: Semantics,
    scripts: Vec<(Vec<Signal>, CaptureSequence)>,
) -> GadgetSpec {
    GadgetSpec {
        name: name.to_owned(),
        kind: PieceKind::King,
        footprint: footprint(squares),
        inputs,
        outputs,
        semantics,
        scripts: scripts.into_iter().collect(),
        symmetries: Transform::ALL.to_vec(),
        composition: None,
    }
}

fn function_rows(rows: Vec<(Vec<Signal>, Option<Vec<Signal>>)>) -> Semantics {
    Semantics::Function(SemanticTable::new(rows))
}

/// WIRE-k: a horizontal signal wire of interior length `k`.
///
/// Input `(1, 2)`; body columns `(x, 1), (x, 2)` for `x = 2 ..= k+1`; a
/// three-square connector column at `x = k+2`; output `(k+3, 2)`. The
/// connector's third king re-boosts the carried value onto the output square.
fn wire(k: u32) -> GadgetSpec {
    assert!((2..=6).contains(&k));
    let mut squares = Vec::new();
    for x in 2..=k + 1 {
        squares.push(sq(x, 1));
        squares.push(sq(x, 2));
    }
    squares.extend([sq(k + 2, 1), sq(k + 2, 2), sq(k + 2, 3), sq(k + 3, 2)]);

    let mut script0 = vec![cap(sq(2, 1), sq(1, 2)), cap(sq(1, 2), sq(2, 2))];
    for x in 2..=k + 1 {
        script0.push(cap(sq(x + 1, 1), sq(x, 2)));
        script0.push(cap(sq(x, 2), sq(x + 1, 2)));
    }
    script0.push(cap(sq(k + 2, 3), sq(k + 2, 2)));
    script0.push(cap(sq(k + 2, 2), sq(k + 3, 2)));

    let mut script1 = vec![cap(sq(1, 2), sq(2, 2))];
    for x in 2..=k + 1 {
        script1.push(cap(sq(x, 1), sq(x, 2)));
        script1.push(cap(sq(x, 2), sq(x + 1, 2)));
    }
    script1.extend([
        cap(sq(k + 2, 1), sq(k + 2, 2)),
        cap(sq(k + 2, 2), sq(k + 3, 2)),
        cap(sq(k + 2, 3), sq(k + 3, 2)),
    ]);

    atom(
        &format!("WIRE-{k}"),
        &squares,
        vec![single(PortRole::Input, sq(1, 2))],
        vec![single(PortRole::Output, sq(k + 3, 2))],
        function_rows(vec![
            (vec![K0], Some(vec![K0])),
            (vec![K1], Some(vec![K1])),
        ]),
        vec![(vec![K0], script0), (vec![K1], script1)],
    )
}

/// CORNER: turns a rightward wire downward (input `(1,2)`, output `(4,3)`).
fn corner() -> GadgetSpec {
    let squares = [sq(2, 1), sq(2, 2), sq(3, 1), sq(3, 2), sq(4, 2), sq(4, 3)];
    let script0 = vec![
        cap(sq(2, 1), sq(1, 2)),
        cap(sq(1, 2), sq(2, 2)),
        cap(sq(3, 1), sq(2, 2)),
        cap(sq(2, 2), sq(3, 2)),
        cap(sq(4, 2), sq(3, 2)),
        cap(sq(3, 2), sq(4, 3)),
    ];
    let script1 = vec![
        cap(sq(1, 2), sq(2, 2)),
        cap(sq(2, 1), sq(2, 2)),
        cap(sq(2, 2), sq(3, 2)),
        cap(sq(3, 1), sq(3, 2)),
        cap(sq(3, 2), sq(4, 3)),
        cap(sq(4, 2), sq(4, 3)),
    ];
    atom(
        "CORNER",
        &squares,
        vec![single(PortRole::Input, sq(1, 2))],
        vec![single(PortRole::Output, sq(4, 3))],
        function_rows(vec![
            (vec![K0], Some(vec![K0])),
            (vec![K1], Some(vec![K1])),
        ]),
        vec![(vec![K0], script0), (vec![K1], script1)],
    )
}

/// 1-TEST: clearable exactly when the input carries a 1.
fn one_test() -> GadgetSpec {
    let squares = [sq(2, 2), sq(2, 3), sq(2, 4)];
    let script1 = vec![
        cap(sq(2, 4), sq(2, 3)),
        cap(sq(2, 3), sq(2, 2)),
        cap(sq(2, 1), sq(2, 2)),
    ];
    atom(
        "1-TEST",
        &squares,
        vec![single(PortRole::Input, sq(2, 1))],
        vec![],
        function_rows(vec![(vec![K0], None), (vec![K1], Some(vec![]))]),
        vec![(vec![K1], script1)],
    )
}

/// VAR: produces complementary values on its two output squares.
fn var() -> GadgetSpec {
    let squares = [
        sq(1, 2),
        sq(1, 3),
        sq(2, 3),
        sq(3, 3),
        sq(4, 3),
        sq(5, 3),
        sq(6, 3),
        sq(7, 2),
        sq(7, 3),
    ];
    let script10 = vec![
        cap(sq(4, 3), sq(5, 3)),
        cap(sq(5, 3), sq(6, 3)),
        cap(sq(7, 3), sq(7, 2)),
        cap(sq(7, 2), sq(6, 3)),
        cap(sq(3, 3), sq(2, 3)),
        cap(sq(1, 2), sq(2, 3)),
        cap(sq(1, 3), sq(2, 3)),
    ];
    // The (0, 1) branch is the x -> 8-x mirror image of the (1, 0) branch.
    let script01 = vec![
        cap(sq(4, 3), sq(3, 3)),
        cap(sq(3, 3), sq(2, 3)),
        cap(sq(1, 3), sq(1, 2)),
        cap(sq(1, 2), sq(2, 3)),
        cap(sq(5, 3), sq(6, 3)),
        cap(sq(7, 2), sq(6, 3)),
        cap(sq(7, 3), sq(6, 3)),
    ];
    atom(
        "VAR",
        &squares,
        vec![],
        vec![
            single(PortRole::Output, sq(2, 3)),
            single(PortRole::Output, sq(6, 3)),
        ],
        Semantics::ValueProduction(BTreeSet::from([vec![K1, K0], vec![K0, K1]])),
        vec![(vec![K1, K0], script10), (vec![K0, K1], script01)],
    )
}

/// OR: two 0/1 inputs, output their disjunction.
fn or_gate() -> GadgetSpec {
    let a = sq(3, 1); // input
    let b = sq(1, 3); // input
    let c = sq(3, 2);
    let d = sq(4, 2);
    let e = sq(2, 3);
    let f = sq(3, 3);
    let g = sq(4, 3);
    let h = sq(2, 4);
    let i = sq(3, 4);
    let j = sq(4, 4);
    let k = sq(4, 5); // output
    let squares = [c, d, e, f, g, h, i, j, k];

    let s00 = [
        chain(&[d, a, c]),
        chain(&[h, b, e]),
        chain(&[g, c, e]),
        chain(&[f, e, i]),
        chain(&[j, i, k]),
    ]
    .concat();
    let s10 = [
        chain(&[h, b, e]),
        chain(&[a, c]),
        chain(&[d, c, e]),
        chain(&[f, e, i]),
        chain(&[g, i, k]),
        chain(&[j, k]),
    ]
    .concat();
    let s01 = [
        chain(&[b, e]),
        chain(&[d, a, c]),
        chain(&[g, c, e]),
        chain(&[h, e, i]),
        chain(&[f, i, k]),
        chain(&[j, k]),
    ]
    .concat();

    atom(
        "OR",
        &squares,
        vec![single(PortRole::Input, a), single(PortRole::Input, b)],
        vec![single(PortRole::Output, k)],
        function_rows(vec![
            (vec![K0, K0], Some(vec![K0])),
            (vec![K0, K1], Some(vec![K1])),
            (vec![K1, K0], Some(vec![K1])),
            (vec![K1, K1], Some(vec![K1])),
        ]),
        vec![
            (vec![K0, K0], s00),
            (vec![K0, K1], s01),
            (vec![K1, K0], s10.clone()),
            // The (1, 0) sequence also realizes (1, 1): the budgets differ
            // but every capture stays legal and the end state is the same.
            (vec![K1, K1], s10),
        ],
    )
}

/// AND: two 0/1 inputs, output their conjunction.
fn and_gate() -> GadgetSpec {
    let a = sq(4, 1); // input
    let b = sq(1, 4); // input
    let c = sq(4, 2);
    let d = sq(5, 2);
    let e = sq(3, 3);
    let f = sq(4, 3);
    let g = sq(5, 3);
    let h = sq(6, 3);
    let i = sq(2, 4);
    let j = sq(3, 4);
    let k = sq(5, 4);
    let l = sq(6, 4);
    let m = sq(2, 5);
    let n = sq(3, 5);
    let o = sq(4, 5);
    let p = sq(6, 5);
    let q = sq(4, 6); // output
    let squares = [c, d, e, f, g, h, i, j, k, l, m, n, o, p, q];

    let s00 = [
        chain(&[m, b, i]),
        chain(&[e, i, j]),
        chain(&[f, j, o]),
        chain(&[c, a, d]),
        chain(&[h, d, g]),
        chain(&[l, g, k]),
        chain(&[p, k, o]),
        chain(&[n, o, q]),
    ]
    .concat();
    let s11 = [
        chain(&[b, i]),
        chain(&[a, c]),
        chain(&[m, i, e]),
        chain(&[f, e, c]),
        chain(&[d, c, g]),
        chain(&[h, g, k]),
        chain(&[l, k]),
        chain(&[p, k, o]),
        chain(&[j, o, q]),
        chain(&[n, q]),
    ]
    .concat();

    atom(
        "AND",
        &squares,
        vec![single(PortRole::Input, a), single(PortRole::Input, b)],
        vec![single(PortRole::Output, q)],
        function_rows(vec![
            (vec![K0, K0], Some(vec![K0])),
            (vec![K0, K1], Some(vec![K0])),
            (vec![K1, K0], Some(vec![K0])),
            (vec![K1, K1], Some(vec![K1])),
        ]),
        vec![
            (vec![K0, K0], s00.clone()),
            // The all-zero sequence stays legal when either input carries a
            // budget; the output value is unchanged.
            (vec![K0, K1], s00.clone()),
            (vec![K1, K0], s00),
            (vec![K1, K1], s11),
        ],
    )
}

/// MOD-WIRE: a 4x2 block moving a full 2-signal one block rightwards.
fn mod_wire() -> GadgetSpec {
    let b = sq(1, 3); // input primary
    let a = sq(1, 2); // input secondary
    let c = sq(2, 2);
    let d = sq(2, 3);
    let e = sq(3, 2);
    let f = sq(3, 3);
    let g = sq(4, 2);
    let h = sq(4, 3);
    let i = sq(5, 2); // output secondary
    let j = sq(5, 3); // output primary
    let squares = [c, d, e, f, g, h, i, j];

    let s0 = [chain(&[c, b, d]), chain(&[e, d, f]), chain(&[g, f, h]), chain(&[i, h, j])].concat();
    let s1 = [
        chain(&[b, d]),
        chain(&[c, d, f]),
        chain(&[e, f, h]),
        chain(&[g, h, j]),
        chain(&[i, j]),
    ]
    .concat();
    let s2 = [
        chain(&[b, d]),
        chain(&[a, d, f]),
        chain(&[c, f, h]),
        chain(&[e, h, j]),
        chain(&[g, j]),
    ]
    .concat();

    atom(
        "MOD-WIRE",
        &squares,
        vec![pair(PortRole::Input, b, a)],
        vec![pair(PortRole::Output, j, i)],
        function_rows(vec![
            (vec![K0], Some(vec![K0])),
            (vec![K1], Some(vec![K1])),
            (vec![K2], Some(vec![K2])),
        ]),
        vec![(vec![K0], s0), (vec![K1], s1), (vec![K2], s2)],
    )
}

/// Shared footprint of IN-A and IN-B (the two gadgets differ only в which
/// input carries which operand).
struct InBlock {
    squares: [Square; 17],
    scripts: BTreeMap<(u8, u8), CaptureSequence>,
}

/// Builds the IN footprint and its scripts keyed by `(upper, left)`.
fn in_block() -> InBlock {
    let a = sq(4, 1); // upper input, primary
    let t = sq(5, 1); // upper input, secondary
    let b = sq(1, 4); // left input
    let c = sq(4, 2);
    let d = sq(5, 2);
    let e = sq(3, 3);
    let f = sq(4, 3);
    let g = sq(5, 3);
    let h = sq(6, 3);
    let i = sq(2, 4);
    let j = sq(3, 4);
    let k = sq(6, 4);
    let l = sq(2, 5);
    let m = sq(6, 5);
    let n = sq(3, 6);
    let o = sq(4, 6);
    let p = sq(5, 6);
    let q = sq(6, 6);
    let r = sq(4, 7); // output primary
    let s = sq(5, 7); // output secondary
    let squares = [c, d, e, f, g, h, i, j, k, l, m, n, o, p, q, r, s];

    let s00 = [
        chain(&[d, a, c]),
        chain(&[e, c, g]),
        chain(&[f, g, k]),
        chain(&[h, k, m]),
        chain(&[q, m, p]),
        chain(&[s, p, r]),
        chain(&[i, b, l]),
        chain(&[j, l, n]),
        chain(&[o, n, r]),
    ]
    .concat();
    let s01 = [
        chain(&[c, a, d]),
        chain(&[h, d, f]),
        chain(&[g, f, j]),
        chain(&[e, j, l]),
        chain(&[b, l]),
        chain(&[i, l, n]),
        chain(&[o, n, r]),
        chain(&[k, m, p]),
        chain(&[q, p, r]),
        chain(&[s, r]),
    ]
    .concat();
    let s11 = [
        chain(&[b, i]),
        chain(&[l, i, e]),
        chain(&[j, e, c]),
        chain(&[a, c]),
        chain(&[f, c, g]),
        chain(&[d, g, k]),
        chain(&[h, k, m]),
        chain(&[q, m, p]),
        chain(&[o, p, r]),
        chain(&[n, r]),
    ]
    .concat();
    let s20 = [
        chain(&[l, b, i]),
        chain(&[j, i, e]),
        chain(&[f, e, c]),
        chain(&[a, c]),
        chain(&[t, c, g]),
        chain(&[d, g, k]),
        chain(&[h, k, m]),
        chain(&[q, m, p]),
        chain(&[o, p, r]),
        chain(&[n, r]),
    ]
    .concat();

    let mut scripts = BTreeMap::new();
    scripts.insert((0, 0), s00.clone());
    // A 1 on the upper input only changes the budget consumed by the first
    // capture; the all-zero sequence stays legal and the output stays 0.
    scripts.insert((1, 0), s00);
    scripts.insert((0, 1), s01);
    scripts.insert((1, 1), s11);
    scripts.insert((2, 0), s20.clone());
    scripts.insert((2, 1), s20);

    InBlock { squares, scripts }
}

/// IN-B: merges the accumulated upper 2-signal with the left operand.
fn in_b() -> GadgetSpec {
    let block = in_block();
    let rows = vec![
        (vec![K0, K0], Some(vec![K0])),
        (vec![K0, K1], Some(vec![K1])),
        (vec![K1, K0], Some(vec![K0])),
        (vec![K1, K1], Some(vec![K2])),
        (vec![K2, K0], Some(vec![K2])),
        (vec![K2, K1], Some(vec![K2])),
    ];
    let scripts = block
        .scripts
        .iter()
        .map(|(&(upper, left), seq)| {
            (vec![Signal::King(upper), Signal::King(left)], seq.clone())
        })
        .collect();
    GadgetSpec {
        name: "IN-B".to_owned(),
        kind: PieceKind::King,
        footprint: footprint(&block.squares),
        inputs: vec![
            pair(PortRole::Input, sq(4, 1), sq(5, 1)),
            single(PortRole::Input, sq(1, 4)),
        ],
        outputs: vec![pair(PortRole::Output, sq(4, 7), sq(5, 7))],
        semantics: function_rows(rows),
        scripts,
        symmetries: Transform::ALL.to_vec(),
        composition: None,
    }
}

/// IN-A: same block as IN-B with the operands swapped — the left input
/// carries the variable `a`, the upper pair the incoming chain value.
fn in_a() -> GadgetSpec {
    let block = in_block();
    let rows = vec![
        (vec![K0, K0], Some(vec![K0])),
        (vec![K0, K1], Some(vec![K0])),
        (vec![K1, K0], Some(vec![K1])),
        (vec![K1, K1], Some(vec![K2])),
    ];
    let scripts = block
        .scripts
        .iter()
        .filter(|(&(upper, _), _)| upper <= 1)
        .map(|(&(upper, left), seq)| {
            (vec![Signal::King(left), Signal::King(upper)], seq.clone())
        })
        .collect();
    GadgetSpec {
        name: "IN-A".to_owned(),
        kind: PieceKind::King,
        footprint: footprint(&block.squares),
        inputs: vec![
            single(PortRole::Input, sq(1, 4)),
            pair(PortRole::Input, sq(4, 1), sq(5, 1)),
        ],
        outputs: vec![pair(PortRole::Output, sq(4, 7), sq(5, 7))],
        semantics: function_rows(rows),
        scripts,
        symmetries: Transform::ALL.to_vec(),
        composition: None,
    }
}

/// OUT: collapses the accumulated 2-signal against the gang value and emits
/// the final 0/1; traps when both are zero.
fn out_gate() -> GadgetSpec {
    let b = sq(1, 5); // left input, primary
    let qs = sq(1, 6); // left input, secondary
    let a = sq(4, 1); // upper input
    let c = sq(3, 2);
    let d = sq(4, 2);
    let e = sq(5, 2);
    let f = sq(3, 3);
    let g = sq(4, 3);
    let h = sq(4, 4);
    let i = sq(5, 4);
    let j = sq(2, 5);
    let k = sq(3, 5);
    let l = sq(5, 5);
    let m = sq(2, 6);
    let n = sq(4, 6);
    let o = sq(5, 6);
    let p = sq(3, 7); // output
    let squares = [c, d, e, f, g, h, i, j, k, l, m, n, o, p];

    let s10 = [
        chain(&[e, a, d]),
        chain(&[c, d, g]),
        chain(&[f, g, h]),
        chain(&[o, l, h]),
        chain(&[i, h, k]),
        chain(&[n, k, m]),
        chain(&[b, m]),
        chain(&[j, m, p]),
    ]
    .concat();
    let s20 = [
        chain(&[e, a, d]),
        chain(&[c, d, g]),
        chain(&[f, g, h]),
        chain(&[o, l, h]),
        chain(&[i, h, k]),
        chain(&[b, m]),
        chain(&[j, k, m]),
        chain(&[qs, m, p]),
        chain(&[n, p]),
    ]
    .concat();
    let s01 = [
        chain(&[a, d]),
        chain(&[e, d, g]),
        chain(&[c, g, h]),
        chain(&[f, h, l]),
        chain(&[i, l, n]),
        chain(&[o, n, p]),
        chain(&[j, b, m]),
        chain(&[k, m, p]),
    ]
    .concat();

    atom(
        "OUT",
        &squares,
        vec![pair(PortRole::Input, b, qs), single(PortRole::Input, a)],
        vec![single(PortRole::Output, p)],
        function_rows(vec![
            (vec![K0, K0], None),
            (vec![K0, K1], Some(vec![K0])),
            (vec![K1, K0], Some(vec![K0])),
            (vec![K1, K1], Some(vec![K0])),
            (vec![K2, K0], Some(vec![K1])),
            (vec![K2, K1], Some(vec![K1])),
        ]),
        vec![
            (vec![K0, K1], s01),
            (vec![K1, K0], s10.clone()),
            // With upper = 1 the first capture consumes a budget-1 king
            // instead of a budget-0 one; the sequence stays legal.
            (vec![K1, K1], s10),
            (vec![K2, K0], s20.clone()),
            (vec![K2, K1], s20),
        ],
    )
}

/// Places a catalog atom inside a composite.
fn place(name: &str, spec: &GadgetSpec, transform: Transform, dx: i64, dy: i64) -> PartDef {
    PartDef {
        name: name.to_owned(),
        spec: transform_spec(spec, transform, dx, dy).expect("composite part placement is valid"),
    }
}

fn by_name<'a>(atoms: &'a [GadgetSpec], name: &str) -> &'a GadgetSpec {
    atoms
        .iter()
        .find(|s| s.name == name)
        .unwrap_or_else(|| panic!("king atom {name} not built yet"))
}

/// 2VAR: two VARs whose positive sides are wired into an AND, producing one
/// positive copy and two negative copies of a variable value.
///
/// Outputs `[pos, neg1, neg2]` with producible maxima `(1,0,0)` and
/// `(0,1,1)`.
fn two_var(atoms: &[GadgetSpec]) -> GadgetSpec {
    let wire2 = by_name(atoms, "WIRE-2");
    let wire4 = by_name(atoms, "WIRE-4");
    let var = by_name(atoms, "VAR");
    let corner = by_name(atoms, "CORNER");
    let and = by_name(atoms, "AND");

    let parts = vec![
        place("VAR1", var, Transform::Identity, 0, 0),
        // Negative copy 1 drops straight down from VAR1's right output.
        place("STUB-N1", wire2, Transform::MirrorD, 4, 2),
        // Positive chain from VAR1's left output down to the AND.
        place("STUB-P1A", wire2, Transform::MirrorD, 0, 2),
        place("STUB-P1B", wire2, Transform::MirrorD, 0, 6),
        place("STUB-P1C", wire4, Transform::MirrorD, 0, 10),
        place("VAR2", var, Transform::Identity, 4, 10),
        place("STUB-P2", wire2, Transform::MirrorD, 4, 12),
        place("STUB-N2", wire2, Transform::MirrorD, 8, 12),
        place("CORNER-P1", corner, Transform::MirrorD, 0, 16),
        place("AND", and, Transform::MirrorD, 2, 16),
    ];

    let outputs = vec![
        single(PortRole::Output, sq(8, 20)),  // pos (the AND's output)
        single(PortRole::Output, sq(6, 7)),   // neg1
        single(PortRole::Output, sq(10, 17)), // neg2
    ];
    let plans = vec![
        ScriptPlan {
            key: vec![K1, K0, K0],
            choices: BTreeMap::from([
                ("VAR1".to_owned(), vec![K1, K0]),
                ("VAR2".to_owned(), vec![K1, K0]),
            ]),
        },
        ScriptPlan {
            key: vec![K0, K1, K1],
            choices: BTreeMap::from([
                ("VAR1".to_owned(), vec![K0, K1]),
                ("VAR2".to_owned(), vec![K0, K1]),
            ]),
        },
    ];
    assemble(
        "2VAR",
        PieceKind::King,
        parts,
        vec![],
        outputs,
        Semantics::ValueProduction(BTreeSet::from([
            vec![K1, K0, K0],
            vec![K0, K1, K1],
        ])),
        plans,
    )
}

/// X*: the IN-A / IN-B / OUT column computing `ã` from `(a, b, n, n)`.
///
/// The gang value `n` enters twice — as the pair feeding IN-A's upper input
/// and as the single feeding OUT — so the table duplicates it. Traps exactly
/// when `b = 0` and `n = 0`.
fn x_star(atoms: &[GadgetSpec]) -> GadgetSpec {
    let in_a = by_name(atoms, "IN-A");
    let in_b = by_name(atoms, "IN-B");
    let out = by_name(atoms, "OUT");

    let parts = vec![
        place("IN-A", in_a, Transform::Identity, 0, 0),
        place("IN-B", in_b, Transform::Identity, 0, 6),
        place("OUT", out, Transform::MirrorD, -1, 12),
    ];
    let inputs = vec![
        single(PortRole::Input, sq(1, 4)),           // a
        single(PortRole::Input, sq(1, 10)),          // b
        pair(PortRole::Input, sq(4, 1), sq(5, 1)),   // n (pair form)
        single(PortRole::Input, sq(0, 16)),          // n (single form)
    ];
    let outputs = vec![single(PortRole::Output, sq(6, 15))];

    let mut rows = Vec::new();
    for a in 0..=1u8 {
        for b in 0..=1u8 {
            for n in 0..=1u8 {
                let key = vec![
                    Signal::King(a),
                    Signal::King(b),
                    Signal::King(n),
                    Signal::King(n),
                ];
                let value = if b == 0 && n == 0 {
                    None
                } else {
                    Some(vec![Signal::King(a)])
                };
                rows.push((key, value));
            }
        }
    }
    assemble(
        "X*",
        PieceKind::King,
        parts,
        inputs,
        outputs,
        function_rows(rows),
        vec![],
    )
}

/// X: a 2VAR feeding its negative copies into an X*, realizing the identity
/// on `(a, b)` while keeping the crossing planar.
fn x_full(atoms: &[GadgetSpec], two_var: &GadgetSpec, x_star: &GadgetSpec) -> GadgetSpec {
    let wire2 = by_name(atoms, "WIRE-2");
    let wire4 = by_name(atoms, "WIRE-4");
    let wire5 = by_name(atoms, "WIRE-5");
    let corner = by_name(atoms, "CORNER");
    let mod_wire = by_name(atoms, "MOD-WIRE");

    let parts = vec![
        place("2VAR", two_var, Transform::Identity, 0, 0),
        // neg1 eastwards and down into the MOD-WIRE above the n-pair.
        place("N1-CORNER-A", corner, Transform::MirrorD, 4, 6),
        place("N1-WIRE", wire5, Transform::Identity, 6, 8),
        place("N1-CORNER-B", corner, Transform::Identity, 13, 8),
        place("N1-DROP-A", wire4, Transform::MirrorD, 15, 10),
        place("N1-DROP-B", wire2, Transform::MirrorD, 15, 16),
        place("N1-MOD", mod_wire, Transform::Rot90, 20, 20),
        // neg2 down, west around the AND, down the left margin and east
        // under the X* column into OUT's gang input.
        place("N2-DROP-A", wire4, Transform::Rot90, 12, 16),
        place("N2-CORNER-A", corner, Transform::Rot90, 12, 22),
        place("N2-WIRE-A", wire2, Transform::MirrorY, 10, 24),
        place("N2-CORNER-B", corner, Transform::MirrorY, 6, 24),
        place("N2-DROP-B", wire2, Transform::MirrorD, 0, 26),
        place("N2-DROP-C", wire4, Transform::MirrorD, 0, 30),
        place("N2-CORNER-C", corner, Transform::MirrorD, 0, 36),
        place("N2-WIRE-B", wire2, Transform::Identity, 2, 38),
        place("N2-WIRE-C", wire4, Transform::Identity, 6, 38),
        place("XSTAR", x_star, Transform::Identity, 13, 24),
    ];
    let inputs = vec![
        single(PortRole::Input, sq(14, 28)), // a
        single(PortRole::Input, sq(14, 34)), // b
    ];
    let outputs = vec![
        single(PortRole::Output, sq(19, 39)), // ã
        single(PortRole::Output, sq(8, 20)),  // b̃ (the 2VAR's positive copy)
    ];

    let mut rows = Vec::new();
    let mut plans = Vec::new();
    for a in 0..=1u8 {
        for b in 0..=1u8 {
            let key = vec![Signal::King(a), Signal::King(b)];
            rows.push((key.clone(), Some(key.clone())));
            // The 2VAR branch is chosen by b: its positive copy *is* the
            // emitted b̃, and both negative copies carry 1 - b into X*.
            let choice = if b == 1 {
                vec![K1, K0, K0]
            } else {
                vec![K0, K1, K1]
            };
            plans.push(ScriptPlan {
                key,
                choices: BTreeMap::from([("2VAR".to_owned(), choice)]),
            });
        }
    }
    assemble(
        "X",
        PieceKind::King,
        parts,
        inputs,
        outputs,
        function_rows(rows),
        plans,
    )
}

/// Builds the complete king catalog.
pub(crate) fn catalog() -> Vec<GadgetSpec> {
    let mut specs: Vec<GadgetSpec> = (2..=6).map(wire).collect();
    specs.push(corner());
    specs.push(one_test());
    specs.push(var());
    specs.push(or_gate());
    specs.push(and_gate());
    specs.push(mod_wire());
    specs.push(in_a());
    specs.push(in_b());
    specs.push(out_gate());
    let two_var = two_var(&specs);
    let x_star = x_star(&specs);
    let x = x_full(&specs, &two_var, &x_star);
    specs.push(two_var);
    specs.push(x_star);
    specs.push(x);
    specs
}
