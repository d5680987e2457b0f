//! Assembly of composite gadgets from placed parts.
//!
//! [`assemble`] wires part ports together by square identity, synthesizes
//! per-row capture scripts by evaluating the parts' semantic tables along the
//! dataflow, flattens nested composites, and validates the layout geometry.
//!
//! Layout violations panic: composites are static catalog data, so a broken
//! layout is a programming error, not a runtime condition.
//!
//! # Junction discipline
//!
//! Distinct parts may touch each other (in the attack sense) only at
//! *junction* squares — squares shared between the two parts' footprints and
//! ports — or at *inert* squares, which provably never hold a piece. Part
//! pairs violating that discipline are not rejected; they are merged into a
//! single verification *blob* (see [`blob_structure`]), and the staged
//! verifier explores the merged state space exhaustively instead of relying
//! on part isolation.

use std::collections::{BTreeMap, BTreeSet};

use crate::{write_port, Composition, GadgetSpec, PlacedPart, Semantics};
use solochess_core::{
    CaptureSequence, PieceKind, PortBinding, PortRole, ReadConvention, Signal, Square,
};

/// A named part placed (already transformed) into composite coordinates.
pub struct PartDef {
    pub name: String,
    pub spec: GadgetSpec,
}

/// One canonical play of a composite: for a function gadget, `key` is an
/// input tuple; for a value production, the produced tuple. `choices` picks
/// the branch of every value-production part by name.
pub struct ScriptPlan {
    pub key: Vec<Signal>,
    pub choices: BTreeMap<String, Vec<Signal>>,
}

/// Where a part input (or a composite output) gets its value from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Feeder {
    /// Composite input port by index.
    External(usize),
    /// Output port `port` of part `part`.
    Part { part: usize, port: usize },
}

/// Whether `feeder` can feed `consumer` directly: the ports must agree on
/// squares and convention, except that a king single may feed the primary
/// square of a king 2-signal pair (the secondary stays empty, which reads as
/// the same 0/1 value).
fn ports_join(feeder: &PortBinding, consumer: &PortBinding) -> bool {
    if feeder.squares == consumer.squares && feeder.convention == consumer.convention {
        return true;
    }
    feeder.convention == ReadConvention::KingSingle
        && consumer.convention == ReadConvention::KingPair2Signal
        && feeder.squares[0] == consumer.squares[0]
}

/// Resolves the feeder of every part input against the composite inputs and
/// the outputs of earlier parts. Every feeder feeds exactly one consumer.
fn wire_parts(
    name: &str,
    parts: &[(String, &GadgetSpec)],
    inputs: &[PortBinding],
) -> Vec<Vec<Feeder>> {
    let mut input_used = vec![false; inputs.len()];
    let mut output_used: Vec<Vec<bool>> =
        parts.iter().map(|(_, s)| vec![false; s.outputs.len()]).collect();
    let mut feeders: Vec<Vec<Feeder>> = Vec::new();

    for (pi, (pname, spec)) in parts.iter().enumerate() {
        let mut part_feeders = Vec::new();
        'ports: for port in &spec.inputs {
            for (ii, cin) in inputs.iter().enumerate() {
                if !input_used[ii] && ports_join(cin, port) {
                    input_used[ii] = true;
                    part_feeders.push(Feeder::External(ii));
                    continue 'ports;
                }
            }
            for fi in 0..pi {
                for (oi, fout) in parts[fi].1.outputs.iter().enumerate() {
                    if !output_used[fi][oi] && ports_join(fout, port) {
                        output_used[fi][oi] = true;
                        part_feeders.push(Feeder::Part { part: fi, port: oi });
                        continue 'ports;
                    }
                }
            }
            panic!(
                "{name}: no feeder for input port {:?} of part {pname}",
                port.squares
            );
        }
        feeders.push(part_feeders);
    }

    for (ii, used) in input_used.iter().enumerate() {
        assert!(
            *used,
            "{name}: composite input {ii} ({:?}) is not consumed by any part",
            inputs[ii].squares
        );
    }
    feeders
}

/// Matches each declared composite output against an unconsumed part output
/// (exact squares and convention), returning its source per output.
fn wire_outputs(
    name: &str,
    parts: &[(String, &GadgetSpec)],
    feeders: &[Vec<Feeder>],
    outputs: &[PortBinding],
) -> Vec<(usize, usize)> {
    let mut consumed: BTreeSet<(usize, usize)> = BTreeSet::new();
    for pf in feeders {
        for f in pf {
            if let Feeder::Part { part, port } = f {
                consumed.insert((*part, *port));
            }
        }
    }
    let mut sources = Vec::new();
    let mut claimed: BTreeSet<(usize, usize)> = BTreeSet::new();
    for out in outputs {
        let mut found = None;
        for (pi, (_, spec)) in parts.iter().enumerate() {
            for (oi, pout) in spec.outputs.iter().enumerate() {
                if pout.squares == out.squares && pout.convention == out.convention {
                    found = Some((pi, oi));
                }
            }
        }
        let (pi, oi) = found.unwrap_or_else(|| {
            panic!(
                "{name}: composite output {:?} matches no part output",
                out.squares
            )
        });
        assert!(
            !consumed.contains(&(pi, oi)),
            "{name}: composite output {:?} is already consumed internally",
            out.squares
        );
        assert!(
            claimed.insert((pi, oi)),
            "{name}: two composite outputs claim the same part output {:?}",
            out.squares
        );
        sources.push((pi, oi));
    }
    // No part output may dangle: every one is either consumed internally or
    // declared a composite output, otherwise its pieces would be garbage.
    for (pi, (pname, spec)) in parts.iter().enumerate() {
        for oi in 0..spec.outputs.len() {
            assert!(
                consumed.contains(&(pi, oi)) || claimed.contains(&(pi, oi)),
                "{name}: output {oi} of part {pname} is neither consumed nor exposed"
            );
        }
    }
    sources
}

/// Evaluates one plan: walks the parts in order, computing every part's
/// input tuple from its feeders, and returns the concatenated script plus
/// the composite output tuple.
fn evaluate_plan(
    name: &str,
    parts: &[(String, &GadgetSpec)],
    feeders: &[Vec<Feeder>],
    out_sources: &[(usize, usize)],
    external: &[Signal],
    plan: &ScriptPlan,
) -> (CaptureSequence, Vec<Signal>) {
    let mut produced: Vec<Vec<Signal>> = Vec::new();
    let mut script = CaptureSequence::new();

    for (pi, (pname, spec)) in parts.iter().enumerate() {
        let in_tuple: Vec<Signal> = feeders[pi]
            .iter()
            .map(|f| match *f {
                Feeder::External(i) => external[i],
                Feeder::Part { part, port } => produced[part][port],
            })
            .collect();
        let (key, out_tuple) = match &spec.semantics {
            Semantics::Function(table) => {
                let row = table.rows.get(&in_tuple).unwrap_or_else(|| {
                    panic!("{name}: part {pname} has no semantics row for its inputs")
                });
                let out = row.clone().unwrap_or_else(|| {
                    panic!("{name}: plan routes a trapping tuple into part {pname}")
                });
                (in_tuple, out)
            }
            Semantics::ValueProduction(set) => {
                let choice = plan.choices.get(pname).unwrap_or_else(|| {
                    panic!("{name}: plan provides no branch choice for part {pname}")
                });
                assert!(
                    set.contains(choice),
                    "{name}: plan's branch for {pname} is not producible"
                );
                (choice.clone(), choice.clone())
            }
        };
        script.extend(
            spec.scripted_sequence(&key)
                .unwrap_or_else(|e| panic!("{name}: part {pname}: {e}"))
                .iter()
                .copied(),
        );
        produced.push(out_tuple);
    }

    let comp_out: Vec<Signal> = out_sources
        .iter()
        .map(|&(pi, oi)| produced[pi][oi])
        .collect();
    (script, comp_out)
}

/// Recursively flattens parts to atoms, prefixing nested names.
fn flatten(parts: Vec<PartDef>) -> Vec<PlacedPart> {
    let mut flat = Vec::new();
    for part in parts {
        match part.spec.composition {
            Some(comp) => {
                for inner in comp.parts {
                    flat.push(PlacedPart {
                        name: format!("{}.{}", part.name, inner.name),
                        spec: inner.spec,
                    });
                }
            }
            None => flat.push(PlacedPart {
                name: part.name,
                spec: part.spec,
            }),
        }
    }
    flat
}

/// Assembles a composite gadget. Parts must be listed in dataflow order
/// (feeders before consumers). `plans` may be empty for function composites
/// without value-production parts; canonical plays are then generated from
/// the semantic table.
pub fn assemble(
    name: &str,
    kind: PieceKind,
    parts: Vec<PartDef>,
    inputs: Vec<PortBinding>,
    outputs: Vec<PortBinding>,
    semantics: Semantics,
    plans: Vec<ScriptPlan>,
) -> GadgetSpec {
    for part in &parts {
        assert_eq!(part.spec.kind, kind, "{name}: part {} kind mismatch", part.name);
    }
    let part_refs: Vec<(String, &GadgetSpec)> =
        parts.iter().map(|p| (p.name.clone(), &p.spec)).collect();
    let feeders = wire_parts(name, &part_refs, &inputs);
    let out_sources = wire_outputs(name, &part_refs, &feeders, &outputs);

    let plans = if plans.is_empty() {
        let Semantics::Function(table) = &semantics else {
            panic!("{name}: value productions need explicit script plans");
        };
        assert!(
            part_refs
                .iter()
                .all(|(_, s)| matches!(s.semantics, Semantics::Function(_))),
            "{name}: auto-generated plans require all parts to be functions"
        );
        table
            .rows
            .iter()
            .filter(|(_, v)| v.is_some())
            .map(|(k, _)| ScriptPlan {
                key: k.clone(),
                choices: BTreeMap::new(),
            })
            .collect()
    } else {
        plans
    };

    let mut scripts: BTreeMap<Vec<Signal>, CaptureSequence> = BTreeMap::new();
    for plan in &plans {
        let external: Vec<Signal> = match &semantics {
            Semantics::Function(_) => plan.key.clone(),
            Semantics::ValueProduction(_) => Vec::new(),
        };
        assert_eq!(
            external.len(),
            inputs.len(),
            "{name}: plan key arity does not match the composite inputs"
        );
        let (script, comp_out) =
            evaluate_plan(name, &part_refs, &feeders, &out_sources, &external, plan);
        match &semantics {
            Semantics::Function(table) => {
                let expected = table.rows.get(&plan.key).cloned().flatten();
                assert_eq!(
                    expected.as_ref(),
                    Some(&comp_out),
                    "{name}: dataflow for {:?} computes {:?}, table disagrees",
                    plan.key,
                    comp_out
                );
            }
            Semantics::ValueProduction(set) => {
                assert_eq!(
                    plan.key, comp_out,
                    "{name}: plan for {:?} actually produces {:?}",
                    plan.key, comp_out
                );
                assert!(set.contains(&comp_out), "{name}: plan tuple not declared");
            }
        }
        assert!(
            scripts.insert(plan.key.clone(), script).is_none(),
            "{name}: duplicate plan for {:?}",
            plan.key
        );
    }
    if let Semantics::Function(table) = &semantics {
        for (key, value) in &table.rows {
            assert!(
                value.is_none() || scripts.contains_key(key),
                "{name}: non-trapping row {key:?} has no script plan"
            );
        }
    }

    let flat = flatten(parts);
    let mut footprint: BTreeMap<Square, u8> = BTreeMap::new();
    for part in &flat {
        for (&square, &budget) in &part.spec.footprint {
            assert!(
                footprint.insert(square, budget).is_none(),
                "{name}: footprints overlap at {square}"
            );
        }
    }
    for port in &inputs {
        for s in &port.squares {
            assert!(
                !footprint.contains_key(s),
                "{name}: composite input square {s} lies inside a footprint"
            );
        }
    }

    let spec = GadgetSpec {
        name: name.to_owned(),
        kind,
        footprint,
        inputs,
        outputs,
        semantics,
        scripts,
        symmetries: vec![crate::Transform::Identity],
        composition: Some(Composition { parts: flat }),
    };
    // Validate the flat geometry eagerly: junction discipline, blob merging
    // and an acyclic blob dataflow. The result is recomputed on demand by
    // the verifier.
    blob_structure(&spec);
    spec
}

/// A group of flat parts verified as one unit.
pub(crate) struct Blob {
    /// Indices into `composition.parts`, ascending.
    pub parts: Vec<usize>,
    /// Initial pieces: the union of the member footprints.
    pub start: BTreeMap<Square, u8>,
    /// Squares where pieces arrive from outside the blob (externally fed
    /// input ports of member parts).
    pub in_squares: BTreeSet<Square>,
    /// Squares whose final content is read from outside: member output
    /// ports consumed by other blobs or exposed as composite outputs.
    pub out_squares: BTreeSet<Square>,
}

pub(crate) struct BlobStructure {
    /// Blobs in dataflow (topological) order.
    pub blobs: Vec<Blob>,
    /// Flat feeders: `feeders[part][input_port]`.
    pub feeders: Vec<Vec<Feeder2>>,
}

/// Flat-level feeder (separate from the unflattened [`Feeder`] to keep the
/// two wirings from being mixed up).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Feeder2 {
    External(usize),
    Part { part: usize, port: usize },
}

/// All squares a composite input port can occupy across the declared
/// semantics domain.
fn external_occupancy(spec: &GadgetSpec) -> BTreeSet<Square> {
    let mut occ = BTreeSet::new();
    if let Semantics::Function(table) = &spec.semantics {
        for key in table.rows.keys() {
            for (port, &signal) in spec.inputs.iter().zip(key) {
                if let Ok(writes) = write_port(port, signal) {
                    occ.extend(writes.into_iter().map(|(s, _)| s));
                }
            }
        }
    }
    occ
}

/// Computes the blob decomposition of a composite's flat parts: resolves the
/// flat wiring, classifies every cross-part attack adjacency as junction,
/// inert or dirty, merges dirty pairs, and topologically orders the result.
///
/// Panics if the flat wiring does not resolve or the blob dataflow is
/// cyclic.
pub(crate) fn blob_structure(spec: &GadgetSpec) -> BlobStructure {
    let comp = spec
        .composition
        .as_ref()
        .expect("blob_structure needs a composite");
    let parts = &comp.parts;
    let name = &spec.name;

    // Flat wiring. Junctions are exact at the flat level, so feeders resolve
    // by square identity alone; uniqueness follows from footprint
    // disjointness.
    let mut feeders: Vec<Vec<Feeder2>> = Vec::new();
    for part in parts.iter() {
        let mut pf = Vec::new();
        'ports: for port in &part.spec.inputs {
            for (ii, cin) in spec.inputs.iter().enumerate() {
                if ports_join(cin, port) {
                    pf.push(Feeder2::External(ii));
                    continue 'ports;
                }
            }
            for (fi, feeder) in parts.iter().enumerate() {
                for (oi, fout) in feeder.spec.outputs.iter().enumerate() {
                    if ports_join(fout, port) {
                        pf.push(Feeder2::Part { part: fi, port: oi });
                        continue 'ports;
                    }
                }
            }
            panic!(
                "{name}: flat wiring unresolved for input {:?} of part {}",
                port.squares, part.name
            );
        }
        feeders.push(pf);
    }

    // Square ownership (footprint plus own ports) per part.
    let mut owners: BTreeMap<Square, Vec<usize>> = BTreeMap::new();
    let mut owned: Vec<BTreeSet<Square>> = Vec::new();
    for (pi, part) in parts.iter().enumerate() {
        let mut set: BTreeSet<Square> = part.spec.footprint.keys().copied().collect();
        for port in part.spec.inputs.iter().chain(&part.spec.outputs) {
            set.extend(port.squares.iter().copied());
        }
        for &s in &set {
            owners.entry(s).or_default().push(pi);
        }
        owned.push(set);
    }

    // A square is occupiable if it belongs to a footprint or can be written
    // by a composite input; all other squares are inert and may be attacked
    // freely.
    let mut occupiable: BTreeSet<Square> = spec.footprint.keys().copied().collect();
    occupiable.extend(external_occupancy(spec));

    // Union-find over parts; dirty adjacencies merge their owners.
    let mut uf: Vec<usize> = (0..parts.len()).collect();
    fn find(uf: &mut Vec<usize>, i: usize) -> usize {
        if uf[i] != i {
            let root = find(uf, uf[i]);
            uf[i] = root;
        }
        uf[i]
    }
    for (&a, owners_a) in &owners {
        for b in spec.kind.attacks(a) {
            if b <= a {
                continue;
            }
            let Some(owners_b) = owners.get(&b) else {
                continue;
            };
            if owners_a.iter().any(|p| owners_b.contains(p)) {
                continue; // internal to some part, or junction-incident
            }
            if !occupiable.contains(&a) || !occupiable.contains(&b) {
                continue; // one endpoint can never hold a piece
            }
            let ra = find(&mut uf, owners_a[0]);
            for &p in owners_a.iter().chain(owners_b) {
                let rp = find(&mut uf, p);
                uf[rp] = ra;
            }
        }
    }

    // Group parts by root, keyed by the smallest member index.
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for pi in 0..parts.len() {
        let root = find(&mut uf, pi);
        groups.entry(root).or_default().push(pi);
    }
    let group_list: Vec<Vec<usize>> = {
        let mut list: Vec<Vec<usize>> = groups.into_values().collect();
        list.sort_by_key(|g| g[0]);
        list
    };
    let blob_of: BTreeMap<usize, usize> = group_list
        .iter()
        .enumerate()
        .flat_map(|(bi, g)| g.iter().map(move |&p| (p, bi)))
        .collect();

    // Topological order over blob dataflow edges.
    let n = group_list.len();
    let mut succs: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    let mut indeg = vec![0usize; n];
    for (pi, pf) in feeders.iter().enumerate() {
        for f in pf {
            if let Feeder2::Part { part, .. } = f {
                let (from, to) = (blob_of[part], blob_of[&pi]);
                if from != to && succs[from].insert(to) {
                    indeg[to] += 1;
                }
            }
        }
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&b| indeg[b] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(&b) = ready.iter().next() {
        ready.remove(&b);
        order.push(b);
        for &s in &succs[b] {
            indeg[s] -= 1;
            if indeg[s] == 0 {
                ready.insert(s);
            }
        }
    }
    assert_eq!(order.len(), n, "{name}: blob dataflow is cyclic");

    // Composite outputs (for out_squares).
    let mut exposed: BTreeSet<Square> = BTreeSet::new();
    for out in &spec.outputs {
        exposed.extend(out.squares.iter().copied());
    }

    let blobs = order
        .into_iter()
        .map(|bi| {
            let members = &group_list[bi];
            let member_set: BTreeSet<usize> = members.iter().copied().collect();
            let mut start = BTreeMap::new();
            let mut in_squares = BTreeSet::new();
            let mut out_squares = BTreeSet::new();
            for &pi in members {
                start.extend(parts[pi].spec.footprint.iter().map(|(&s, &b)| (s, b)));
                for (port, f) in parts[pi].spec.inputs.iter().zip(&feeders[pi]) {
                    let external = match f {
                        Feeder2::External(_) => true,
                        Feeder2::Part { part, .. } => !member_set.contains(part),
                    };
                    if external {
                        in_squares.extend(port.squares.iter().copied());
                    }
                }
            }
            // An output port counts as outward if any other blob consumes it
            // or it is exposed; ports consumed inside the blob stay private.
            for (pi, pf) in feeders.iter().enumerate() {
                if member_set.contains(&pi) {
                    continue;
                }
                for f in pf {
                    if let Feeder2::Part { part, port } = f {
                        if member_set.contains(part) {
                            out_squares
                                .extend(parts[*part].spec.outputs[*port].squares.iter().copied());
                        }
                    }
                }
            }
            for &pi in members {
                for port in &parts[pi].spec.outputs {
                    if port.squares.iter().any(|s| exposed.contains(s)) {
                        out_squares.extend(port.squares.iter().copied());
                    }
                }
            }
            Blob {
                parts: members.clone(),
                start,
                in_squares,
                out_squares,
            }
        })
        .collect();

    BlobStructure { blobs, feeders }
}
