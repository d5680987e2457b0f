//! Machine verification of catalog gadgets.
//!
//! An *atomic* gadget is verified directly against its semantic table:
//! every canonical script is replayed and must reproduce the expected end
//! state exactly, and an exhaustive enumeration of all normalized plays
//! (via [`solochess_solver::enumerate_outputs`]) must realize exactly the
//! declared maximal signal tuples — `∅` for trapping rows.
//!
//! A *composite* gadget is verified in stages. Its flat parts are grouped
//! into blobs (see [`crate::compose::blob_structure`]): parts that touch
//! each other anywhere besides their junction squares are merged and
//! explored as one state space, so no interaction escapes the check. Blobs
//! are processed in dataflow order; the verifier carries every reachable
//! *physical* assignment of the live junction squares (never just the
//! abstract signals), enumerates each blob's complete end-state relation
//! with a dedicated exhaustive search, and finally reads the output ports
//! of every terminal assignment. The achieved maximal tuples must again
//! match the table exactly.
//!
//! Dominance shortcuts are never used anywhere in verification: a dominating
//! state can be *unreadable* while the dominated one reads a value, so
//! pruning dominated states could hide achievable tuples and, worse, let a
//! trapping row pass. Every state space here is walked exactly.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::compose::blob_structure;
use crate::{format_tuple, write_port, GadgetError, GadgetSpec, Semantics};
use solochess_core::{read_port, Configuration, Signal, Square};
use solochess_solver::{enumerate_outputs, solve, EnumerateError, SolveOptions, SolveResult};

/// Options for [`verify_gadget`].
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Abort once a single exhaustive search visits this many states.
    pub node_limit: u64,
    /// Run the exhaustive enumerations (scripts are always replayed).
    /// Disabled for gadgets whose acceptance argument is structural, such
    /// as the wire-crossing overlay.
    pub enumeration: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            node_limit: 200_000_000,
            enumeration: true,
        }
    }
}

/// Statistics of a successful verification.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub name: String,
    /// Semantic table rows (or produced tuples) checked.
    pub rows_checked: usize,
    /// Canonical scripts replayed.
    pub scripts_replayed: usize,
    /// States visited across all exhaustive searches.
    pub nodes: u64,
    /// Number of blobs of the staged pass (0 for atoms).
    pub staged_blobs: usize,
}

/// `a` dominates `b` (componentwise, same shape).
fn signal_ge(a: Signal, b: Signal) -> bool {
    match (a, b) {
        (Signal::King(x), Signal::King(y)) => x >= y,
        (Signal::Knight(p, q), Signal::Knight(r, s)) => p >= r && q >= s,
        _ => false,
    }
}

fn tuple_dominates(a: &[Signal], b: &[Signal]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(&x, &y)| signal_ge(x, y))
}

/// The maximal elements of a tuple set under componentwise dominance.
pub fn maximal_tuples(tuples: &BTreeSet<Vec<Signal>>) -> BTreeSet<Vec<Signal>> {
    tuples
        .iter()
        .filter(|t| {
            !tuples
                .iter()
                .any(|other| other != *t && tuple_dominates(other, t))
        })
        .cloned()
        .collect()
}

fn mismatch(
    spec: &GadgetSpec,
    tuple: &[Signal],
    expected: &BTreeSet<Vec<Signal>>,
    achieved: &BTreeSet<Vec<Signal>>,
) -> GadgetError {
    GadgetError::SemanticsMismatch {
        name: spec.name.clone(),
        tuple: format_tuple(tuple),
        expected: format!(
            "{{{}}}",
            expected
                .iter()
                .map(|t| format_tuple(t))
                .collect::<Vec<_>>()
                .join(", ")
        ),
        achieved: format!(
            "{{{}}}",
            achieved
                .iter()
                .map(|t| format_tuple(t))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    }
}

fn bad_script(spec: &GadgetSpec, key: &[Signal], err: solochess_core::SequenceError) -> GadgetError {
    GadgetError::BadScript {
        name: spec.name.clone(),
        tuple: format_tuple(key),
        index: err.index,
        message: err.source.to_string(),
    }
}

fn wrong_end(spec: &GadgetSpec, key: &[Signal], end: &Configuration) -> GadgetError {
    GadgetError::BadScript {
        name: spec.name.clone(),
        tuple: format_tuple(key),
        index: usize::MAX,
        message: format!(
            "script ends in the wrong state: {:?}",
            end.pieces()
        ),
    }
}

fn solver_options(opts: &VerifyOptions) -> SolveOptions {
    SolveOptions {
        node_limit: opts.node_limit,
        ..SolveOptions::default()
    }
}

/// Replays the canonical script for `key` from `written` and checks the
/// exact end state.
fn replay_script(
    spec: &GadgetSpec,
    key: &[Signal],
    written: &Configuration,
    expected_out: &[Signal],
) -> Result<(), GadgetError> {
    let script = spec.scripted_sequence(key)?;
    let end = written
        .apply_sequence(&script)
        .map_err(|e| bad_script(spec, key, e))?;
    if spec.outputs.is_empty() {
        if !end.is_cleared() {
            return Err(wrong_end(spec, key, &end));
        }
        return Ok(());
    }
    let expected = spec.expected_end(expected_out)?;
    if end.pieces() != &expected {
        return Err(wrong_end(spec, key, &end));
    }
    Ok(())
}

/// Verifies an atomic or composite gadget against its declared semantics.
pub fn verify_gadget(spec: &GadgetSpec, opts: &VerifyOptions) -> Result<VerifyReport, GadgetError> {
    if spec.composition.is_some() {
        verify_composite(spec, opts)
    } else {
        verify_atom(spec, opts)
    }
}

fn verify_atom(spec: &GadgetSpec, opts: &VerifyOptions) -> Result<VerifyReport, GadgetError> {
    let mut report = VerifyReport {
        name: spec.name.clone(),
        rows_checked: 0,
        scripts_replayed: 0,
        nodes: 0,
        staged_blobs: 0,
    };
    let solve_opts = solver_options(opts);

    match &spec.semantics {
        Semantics::Function(table) => {
            for (key, value) in &table.rows {
                report.rows_checked += 1;
                let written = spec.written_config(key)?;
                if spec.outputs.is_empty() {
                    // Clearing gadget: the table says clearable or trapping.
                    match value {
                        Some(out) => {
                            assert!(out.is_empty(), "clearing gadgets emit no outputs");
                            replay_script(spec, key, &written, out)?;
                            report.scripts_replayed += 1;
                        }
                        None => match solve(&written, &solve_opts) {
                            SolveResult::Unclearable => {}
                            SolveResult::Clearable(_) => {
                                return Err(mismatch(
                                    spec,
                                    key,
                                    &BTreeSet::new(),
                                    &BTreeSet::from([vec![]]),
                                ));
                            }
                            SolveResult::ResourceExhausted(_) => {
                                return Err(GadgetError::ResourceExhausted {
                                    name: spec.name.clone(),
                                });
                            }
                        },
                    }
                    continue;
                }
                if let Some(out) = value {
                    replay_script(spec, key, &written, out)?;
                    report.scripts_replayed += 1;
                }
                if opts.enumeration {
                    let expected: BTreeSet<Vec<Signal>> =
                        value.iter().cloned().collect();
                    let result = enumerate_outputs(&written, &spec.outputs, &solve_opts)
                        .map_err(|e| enum_error(spec, e))?;
                    report.nodes += result.nodes;
                    let achieved = maximal_tuples(&result.tuples);
                    if achieved != expected {
                        return Err(mismatch(spec, key, &expected, &achieved));
                    }
                }
            }
        }
        Semantics::ValueProduction(set) => {
            for tuple in set {
                report.rows_checked += 1;
                replay_script(spec, tuple, &spec.initial_config(), tuple)?;
                report.scripts_replayed += 1;
            }
            if opts.enumeration {
                let result =
                    enumerate_outputs(&spec.initial_config(), &spec.outputs, &solve_opts)
                        .map_err(|e| enum_error(spec, e))?;
                report.nodes += result.nodes;
                let achieved = maximal_tuples(&result.tuples);
                if &achieved != set {
                    return Err(mismatch(spec, &[], set, &achieved));
                }
            }
        }
    }
    Ok(report)
}

fn enum_error(spec: &GadgetSpec, err: EnumerateError) -> GadgetError {
    match err {
        EnumerateError::ResourceExhausted { .. } => GadgetError::ResourceExhausted {
            name: spec.name.clone(),
        },
        EnumerateError::PortOffBoard { square } => GadgetError::Format(format!(
            "{}: output port square {square} is not occupied initially",
            spec.name
        )),
    }
}

fn verify_composite(spec: &GadgetSpec, opts: &VerifyOptions) -> Result<VerifyReport, GadgetError> {
    let structure = blob_structure(spec);
    let mut report = VerifyReport {
        name: spec.name.clone(),
        rows_checked: 0,
        scripts_replayed: 0,
        nodes: 0,
        staged_blobs: structure.blobs.len(),
    };

    // Replay every canonical script.
    for key in spec.scripts.keys() {
        let (written, out_tuple) = match &spec.semantics {
            Semantics::Function(table) => {
                let out = table
                    .rows
                    .get(key)
                    .cloned()
                    .flatten()
                    .expect("composite scripts exist only for non-trapping rows");
                (spec.written_config(key)?, out)
            }
            Semantics::ValueProduction(_) => (spec.initial_config(), key.clone()),
        };
        replay_script(spec, key, &written, &out_tuple)?;
        report.scripts_replayed += 1;
    }

    if !opts.enumeration {
        return Ok(report);
    }

    let mut memo = StagedMemo::new();
    match &spec.semantics {
        Semantics::Function(table) => {
            for (key, value) in &table.rows {
                report.rows_checked += 1;
                let mut external: BTreeMap<Square, u8> = BTreeMap::new();
                for (port, &signal) in spec.inputs.iter().zip(key) {
                    external.extend(write_port(port, signal)?);
                }
                let achieved = staged_outputs(spec, &structure, external, opts, &mut memo, &mut report.nodes)?;
                let expected: BTreeSet<Vec<Signal>> = value.iter().cloned().collect();
                if achieved != expected {
                    return Err(mismatch(spec, key, &expected, &achieved));
                }
            }
        }
        Semantics::ValueProduction(set) => {
            report.rows_checked += 1;
            let achieved =
                staged_outputs(spec, &structure, BTreeMap::new(), opts, &mut memo, &mut report.nodes)?;
            if &achieved != set {
                return Err(mismatch(spec, &[], set, &achieved));
            }
        }
    }
    Ok(report)
}

/// Runs the staged frontier over the blobs and reads the output ports of
/// every terminal physical assignment, returning the maximal tuples.
fn staged_outputs(
    spec: &GadgetSpec,
    structure: &crate::compose::BlobStructure,
    external: BTreeMap<Square, u8>,
    opts: &VerifyOptions,
    memo: &mut StagedMemo,
    nodes: &mut u64,
) -> Result<BTreeSet<Vec<Signal>>, GadgetError> {
    let mut frontier: BTreeSet<BTreeMap<Square, u8>> = BTreeSet::from([external]);

    for blob in &structure.blobs {
        let mut next = BTreeSet::new();
        for alpha in &frontier {
            let mut in_state: BTreeMap<Square, u8> = BTreeMap::new();
            let mut rest: BTreeMap<Square, u8> = BTreeMap::new();
            for (&s, &b) in alpha {
                if blob.in_squares.contains(&s) {
                    in_state.insert(s, b);
                } else {
                    rest.insert(s, b);
                }
            }
            let mut start = blob.start.clone();
            for (&s, &b) in &in_state {
                assert!(
                    start.insert(s, b).is_none(),
                    "{}: junction square {s} collides with a footprint",
                    spec.name
                );
            }
            let ends = memo.end_states(spec, &start, &blob.out_squares, opts, nodes)?;
            for end in ends {
                let mut merged = rest.clone();
                merged.extend(end.iter().map(|(&s, &b)| (s, b)));
                next.insert(merged);
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }

    let mut tuples = BTreeSet::new();
    for alpha in &frontier {
        let config = Configuration::new(spec.kind, alpha.iter().map(|(&s, &b)| (s, b)))
            .expect("staged states are valid configurations");
        let mut tuple = Vec::with_capacity(spec.outputs.len());
        let mut readable = true;
        for port in &spec.outputs {
            match read_port(&config, port) {
                Some(sig) => tuple.push(sig),
                None => {
                    readable = false;
                    break;
                }
            }
        }
        if readable {
            tuples.insert(tuple);
        }
    }
    Ok(maximal_tuples(&tuples))
}

/// Memo for blob end-state relations, keyed by the translated-to-origin
/// start assignment and boundary so that congruent blobs (the same part
/// shape at different offsets, or repeated in-states) are enumerated once.
struct StagedMemo {
    map: HashMap<MemoKey, Vec<Vec<(u32, u32, u8)>>>,
}

type MemoKey = (Vec<(u32, u32, u8)>, Vec<(u32, u32)>);

impl StagedMemo {
    fn new() -> Self {
        StagedMemo {
            map: HashMap::new(),
        }
    }

    fn end_states(
        &mut self,
        spec: &GadgetSpec,
        start: &BTreeMap<Square, u8>,
        boundary: &BTreeSet<Square>,
        opts: &VerifyOptions,
        nodes: &mut u64,
    ) -> Result<Vec<BTreeMap<Square, u8>>, GadgetError> {
        let min_x = start.keys().map(|s| s.x).min().expect("non-empty blob");
        let min_y = start.keys().map(|s| s.y).min().expect("non-empty blob");
        let key: MemoKey = (
            start
                .iter()
                .map(|(&s, &b)| (s.x - min_x, s.y - min_y, b))
                .collect(),
            boundary
                .iter()
                .map(|s| (s.x - min_x, s.y - min_y))
                .collect(),
        );
        if !self.map.contains_key(&key) {
            let ends = enumerate_end_states(spec, start, boundary, opts, nodes)?;
            let canonical = ends
                .iter()
                .map(|end| {
                    end.iter()
                        .map(|(&s, &b)| (s.x - min_x, s.y - min_y, b))
                        .collect()
                })
                .collect();
            self.map.insert(key.clone(), canonical);
        }
        Ok(self.map[&key]
            .iter()
            .map(|end| {
                end.iter()
                    .map(|&(x, y, b)| (Square::new(x + min_x, y + min_y), b))
                    .collect()
            })
            .collect())
    }
}

const EMPTY: u128 = 3;

/// Exhaustively enumerates every reachable state of `start` whose occupied
/// squares all lie on `boundary`, continuing past recorded states (an end
/// state may still shrink further). Prunes only provably dead branches:
///
/// * more pieces off the boundary than total budget can ever remove, or
/// * an occupied attack-component containing no boundary square (such a
///   component never empties and never reaches the boundary).
fn enumerate_end_states(
    spec: &GadgetSpec,
    start: &BTreeMap<Square, u8>,
    boundary: &BTreeSet<Square>,
    opts: &VerifyOptions,
    nodes: &mut u64,
) -> Result<BTreeSet<BTreeMap<Square, u8>>, GadgetError> {
    let squares: Vec<Square> = start.keys().copied().collect();
    let n = squares.len();
    assert!(n <= 64, "{}: blob exceeds 64 squares", spec.name);
    for s in boundary {
        assert!(
            start.contains_key(s),
            "{}: boundary square {s} outside the blob",
            spec.name
        );
    }

    let mut boundary_mask = 0u64;
    for (i, s) in squares.iter().enumerate() {
        if boundary.contains(s) {
            boundary_mask |= 1 << i;
        }
    }
    let mut attack_mask = vec![0u64; n];
    for (i, &s) in squares.iter().enumerate() {
        for t in spec.kind.attacks(s) {
            if let Ok(j) = squares.binary_search(&t) {
                attack_mask[i] |= 1 << j;
            }
        }
    }

    let encode = |pieces: &BTreeMap<Square, u8>| -> (u128, u64) {
        let mut state = 0u128;
        let mut occ = 0u64;
        for (i, s) in squares.iter().enumerate() {
            match pieces.get(s) {
                Some(&b) => {
                    state |= (b as u128) << (2 * i);
                    occ |= 1 << i;
                }
                None => state |= EMPTY << (2 * i),
            }
        }
        (state, occ)
    };
    let budget_at = |state: u128, i: usize| -> u8 { ((state >> (2 * i)) & 3) as u8 };

    // Dead-branch test; see the function docs.
    let hopeless = |state: u128, occ: u64| -> bool {
        let outside = (occ & !boundary_mask).count_ones();
        let mut total: u32 = 0;
        let mut bits = occ;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            total += budget_at(state, i) as u32;
        }
        if outside > total {
            return true;
        }
        // Flood from occupied boundary squares along attacks within occ.
        let mut reached = occ & boundary_mask;
        loop {
            let mut grown = reached;
            let mut frontier = reached;
            while frontier != 0 {
                let i = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                grown |= attack_mask[i] & occ;
            }
            if grown == reached {
                break;
            }
            reached = grown;
        }
        reached != occ
    };

    let (init_state, init_occ) = encode(start);
    let mut results = BTreeSet::new();
    let mut visited: HashSet<u128> = HashSet::new();
    let mut stack: Vec<(u128, u64)> = Vec::new();
    visited.insert(init_state);
    if !hopeless(init_state, init_occ) {
        stack.push((init_state, init_occ));
    }

    while let Some((state, occ)) = stack.pop() {
        if occ & !boundary_mask == 0 {
            let mut pieces = BTreeMap::new();
            let mut bits = occ;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                pieces.insert(squares[i], budget_at(state, i));
            }
            results.insert(pieces);
        }
        let mut movers = occ;
        while movers != 0 {
            let i = movers.trailing_zeros() as usize;
            movers &= movers - 1;
            let b = budget_at(state, i);
            if b == 0 {
                continue;
            }
            let mut victims = attack_mask[i] & occ;
            while victims != 0 {
                let j = victims.trailing_zeros() as usize;
                victims &= victims - 1;
                let mut next = state;
                next &= !(3u128 << (2 * i));
                next |= EMPTY << (2 * i);
                next &= !(3u128 << (2 * j));
                next |= ((b - 1) as u128) << (2 * j);
                let next_occ = occ & !(1 << i);
                if !visited.insert(next) {
                    continue;
                }
                *nodes += 1;
                if *nodes > opts.node_limit {
                    return Err(GadgetError::ResourceExhausted {
                        name: spec.name.clone(),
                    });
                }
                if !hopeless(next, next_occ) {
                    stack.push((next, next_occ));
                }
            }
        }
    }
    Ok(results)
}
