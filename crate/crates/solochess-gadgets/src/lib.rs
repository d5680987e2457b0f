//! Machine-verified catalog of 2-Solo-Chess gadgets.
//!
//! A *gadget* is a finite arrangement of pieces (its *footprint*, every piece
//! starting with budget 2) together with designated input and output ports.
//! Input ports are empty squares next to the footprint: a harness (or an
//! upstream gadget) writes a signal there as pieces. Output ports are
//! footprint squares on which the gadget leaves its result. A *script* is a
//! canonical capture sequence that consumes the footprint and the written
//! inputs and leaves exactly the output arrangement.
//!
//! The catalog records, for every gadget, its footprint, ports, semantics
//! (an input/output table, or the set of producible value tuples), scripts,
//! and the symmetry transforms under which it may be instantiated.
//! [`verify::verify_gadget`] checks all of it mechanically: scripts replay to
//! the exact expected end state, and exhaustive enumeration of normalized
//! plays confirms the semantic table (directly for atomic gadgets, stagewise
//! over parts for composites).

pub mod compose;
mod derive;
pub mod format;
mod king;
mod knight;
pub mod verify;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use thiserror::Error;

pub use solochess_core::{
    read_port, Capture, CaptureSequence, Configuration, PieceKind, PortBinding, PortRole,
    ReadConvention, Signal, Square,
};

/// Environment variable naming an external `gadgets/1` data file that
/// overrides the built-in catalog geometry.
pub const GADGET_PATH_ENV: &str = "SOLOCHESS_GADGET_PATH";

/// One of the eight symmetries of the square grid (the dihedral group D4).
///
/// All eight preserve king adjacency, knight adjacency and square color, so
/// a gadget instantiated under any of them keeps its capture structure. The
/// names fix one concrete matrix each; `MirrorD` is reflection across the
/// main diagonal, `MirrorA` across the antidiagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Transform {
    Identity,
    Rot90,
    Rot180,
    Rot270,
    MirrorX,
    MirrorY,
    MirrorD,
    MirrorA,
}

impl Transform {
    pub const ALL: [Transform; 8] = [
        Transform::Identity,
        Transform::Rot90,
        Transform::Rot180,
        Transform::Rot270,
        Transform::MirrorX,
        Transform::MirrorY,
        Transform::MirrorD,
        Transform::MirrorA,
    ];

    /// Applies the transform to a lattice point.
    pub fn apply(self, x: i64, y: i64) -> (i64, i64) {
        match self {
            Transform::Identity => (x, y),
            Transform::Rot90 => (-y, x),
            Transform::Rot180 => (-x, -y),
            Transform::Rot270 => (y, -x),
            Transform::MirrorX => (x, -y),
            Transform::MirrorY => (-x, y),
            Transform::MirrorD => (y, x),
            Transform::MirrorA => (-y, -x),
        }
    }

    /// The token used in the `gadgets/1` data format.
    pub fn token(self) -> &'static str {
        match self {
            Transform::Identity => "identity",
            Transform::Rot90 => "rot90",
            Transform::Rot180 => "rot180",
            Transform::Rot270 => "rot270",
            Transform::MirrorX => "mirror-x",
            Transform::MirrorY => "mirror-y",
            Transform::MirrorD => "mirror-d",
            Transform::MirrorA => "mirror-a",
        }
    }

    pub fn from_token(token: &str) -> Option<Transform> {
        Transform::ALL.into_iter().find(|t| t.token() == token)
    }
}

impl std::fmt::Display for Transform {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.token())
    }
}

/// Total input/output table of a function gadget over its declared domain.
///
/// Keys are input tuples (one signal per input port, in port order); the
/// value is the output tuple the gadget computes, or `None` for ⊥ (no
/// normalized play exists for that input).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SemanticTable {
    pub rows: BTreeMap<Vec<Signal>, Option<Vec<Signal>>>,
}

impl SemanticTable {
    pub fn new<I>(rows: I) -> SemanticTable
    where
        I: IntoIterator<Item = (Vec<Signal>, Option<Vec<Signal>>)>,
    {
        SemanticTable {
            rows: rows.into_iter().collect(),
        }
    }
}

/// What a gadget means.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Semantics {
    /// The gadget computes a function of its inputs, given by a total table
    /// over the declared domain.
    Function(SemanticTable),
    /// The gadget has no inputs and can be played to exactly these maximal
    /// output tuples (plus tuples dominated by them).
    ValueProduction(BTreeSet<Vec<Signal>>),
}

/// A placed part of a composite gadget, in composite coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlacedPart {
    /// Name of the part within the composite (unique per composite); for
    /// catalog atoms this is the catalog name, routing segments get
    /// descriptive names.
    pub name: String,
    /// The part's spec with footprint, ports and scripts already moved into
    /// composite coordinates. Parts stored here are atomic.
    pub spec: GadgetSpec,
}

/// The parts a composite gadget is assembled from, flattened to atoms and
/// listed in topological order: every input port of a part either is one of
/// the composite's own input ports or coincides with an output port of an
/// earlier part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Composition {
    pub parts: Vec<PlacedPart>,
}

/// A catalog gadget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetSpec {
    pub name: String,
    pub kind: PieceKind,
    /// Initial budget per footprint square.
    pub footprint: BTreeMap<Square, u8>,
    pub inputs: Vec<PortBinding>,
    pub outputs: Vec<PortBinding>,
    pub semantics: Semantics,
    /// Canonical capture scripts, keyed by input tuple for function gadgets
    /// and by produced output tuple for value-production gadgets. Inputs
    /// mapping to ⊥ have no script.
    pub scripts: BTreeMap<Vec<Signal>, CaptureSequence>,
    /// Transforms under which [`instantiate`] accepts this gadget.
    pub symmetries: Vec<Transform>,
    /// For composite gadgets: the flattened placed parts (used by staged
    /// verification); `None` for atomic gadgets.
    pub composition: Option<Composition>,
}

impl GadgetSpec {
    /// The configuration holding exactly the footprint pieces.
    pub fn initial_config(&self) -> Configuration {
        Configuration::new(self.kind, self.footprint.iter().map(|(&s, &b)| (s, b)))
            .expect("catalog footprints are valid configurations")
    }

    /// The footprint plus `inputs` written onto the input ports.
    pub fn written_config(&self, inputs: &[Signal]) -> Result<Configuration, GadgetError> {
        if inputs.len() != self.inputs.len() {
            return Err(GadgetError::ArityMismatch {
                name: self.name.clone(),
                expected: self.inputs.len(),
                got: inputs.len(),
            });
        }
        let mut pieces = self.footprint.clone();
        for (port, &signal) in self.inputs.iter().zip(inputs) {
            for (square, budget) in write_port(port, signal)? {
                if pieces.insert(square, budget).is_some() {
                    panic!(
                        "gadget {}: input square {square} overlaps the footprint",
                        self.name
                    );
                }
            }
        }
        Ok(Configuration::new(self.kind, pieces).expect("written configurations are valid"))
    }

    /// The exact piece arrangement a play realizing `outputs` must end in.
    pub fn expected_end(&self, outputs: &[Signal]) -> Result<BTreeMap<Square, u8>, GadgetError> {
        let mut end = BTreeMap::new();
        for (port, &signal) in self.outputs.iter().zip(outputs) {
            for (square, budget) in write_port(port, signal)? {
                end.insert(square, budget);
            }
        }
        Ok(end)
    }

    /// The canonical script for `key` (an input tuple, or a produced tuple
    /// for value-production gadgets).
    pub fn scripted_sequence(&self, key: &[Signal]) -> Result<CaptureSequence, GadgetError> {
        self.scripts
            .get(key)
            .cloned()
            .ok_or_else(|| GadgetError::NoScript {
                name: self.name.clone(),
                inputs: format_tuple(key),
            })
    }

    /// Footprint squares plus all port squares.
    pub fn all_squares(&self) -> BTreeSet<Square> {
        let mut squares: BTreeSet<Square> = self.footprint.keys().copied().collect();
        for port in self.inputs.iter().chain(&self.outputs) {
            squares.extend(port.squares.iter().copied());
        }
        squares
    }
}

/// A gadget placed on the board.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetInstance {
    /// Catalog name of the source spec.
    pub spec_name: String,
    pub transform: Transform,
    pub translation: (i64, i64),
    /// The placed spec: footprint, ports and scripts in board coordinates.
    pub placed: GadgetSpec,
}

impl GadgetInstance {
    /// Resolved input ports in board coordinates.
    pub fn inputs(&self) -> &[PortBinding] {
        &self.placed.inputs
    }

    /// Resolved output ports in board coordinates.
    pub fn outputs(&self) -> &[PortBinding] {
        &self.placed.outputs
    }

    /// The canonical script for `key`, in board coordinates.
    pub fn scripted_sequence(&self, key: &[Signal]) -> Result<CaptureSequence, GadgetError> {
        self.placed.scripted_sequence(key)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("gadget data file: {0}")]
    Format(String),
    #[error("cannot read gadget data from {path}: {message}")]
    Io { path: String, message: String },
    #[error("unknown gadget {name} ({kind})")]
    UnknownGadget { name: String, kind: PieceKind },
    #[error("transform {transform} is not an allowed symmetry of {name}")]
    IllegalTransform { name: String, transform: Transform },
    #[error(
        "knight gadget {name} translated by ({dx}, {dy}) lands on squares of the wrong color"
    )]
    ParityViolation { name: String, dx: i64, dy: i64 },
    #[error("gadget {name} placed outside the board (negative coordinates)")]
    OutOfBounds { name: String },
    #[error("gadget {name} has no script for inputs [{inputs}]")]
    NoScript { name: String, inputs: String },
    #[error("gadget {name} expects {expected} input signals, got {got}")]
    ArityMismatch {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("signal {signal} cannot be written to a {convention} port")]
    UnwritableSignal {
        signal: Signal,
        convention: ReadConvention,
    },
    #[error("{name}: semantics mismatch on [{tuple}]: expected {expected}, achieved {achieved}")]
    SemanticsMismatch {
        name: String,
        tuple: String,
        expected: String,
        achieved: String,
    },
    #[error("verification of {name} exhausted its node budget")]
    ResourceExhausted { name: String },
    #[error("{name}: script for [{tuple}] is illegal at capture {index}: {message}")]
    BadScript {
        name: String,
        tuple: String,
        index: usize,
        message: String,
    },
}

pub(crate) fn format_tuple(signals: &[Signal]) -> String {
    signals
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// The piece arrangement that writes `signal` onto `port`.
///
/// This is the canonical inverse of [`read_port`]: a king single carries its
/// value as the budget of a king on the square; a king pair carries 0/1 on
/// the primary square with the secondary empty, and 2 as a 1-king on the
/// primary plus a 2-king on the secondary; a knight column carries its first
/// component as presence of a 2-knight on the outer square and its second as
/// the budget of a knight on the inner square, with the components swapped on
/// columns of odd color.
pub fn write_port(port: &PortBinding, signal: Signal) -> Result<Vec<(Square, u8)>, GadgetError> {
    let unwritable = || GadgetError::UnwritableSignal {
        signal,
        convention: port.convention,
    };
    match (port.convention, signal) {
        (ReadConvention::KingSingle, Signal::King(v)) if v <= 1 => Ok(vec![(port.squares[0], v)]),
        (ReadConvention::KingPair2Signal, Signal::King(v)) if v <= 1 => {
            Ok(vec![(port.squares[0], v)])
        }
        (ReadConvention::KingPair2Signal, Signal::King(2)) => {
            Ok(vec![(port.squares[0], 1), (port.squares[1], 2)])
        }
        (ReadConvention::KnightColumn, Signal::Knight(a, b)) if a <= 1 && b <= 1 => {
            let (outer, inner) = (port.squares[0], port.squares[1]);
            let (first, second) = if outer.color() == 1 { (b, a) } else { (a, b) };
            let mut pieces = Vec::new();
            if first == 1 {
                pieces.push((outer, 2));
            }
            pieces.push((inner, second));
            Ok(pieces)
        }
        _ => Err(unwritable()),
    }
}

/// Maps a square through `transform` plus `(dx, dy)`, failing on negative
/// coordinates.
pub(crate) fn map_square(
    transform: Transform,
    dx: i64,
    dy: i64,
    square: Square,
) -> Result<Square, ()> {
    let (x, y) = transform.apply(square.x as i64, square.y as i64);
    let (x, y) = (x + dx, y + dy);
    if x < 0 || y < 0 {
        return Err(());
    }
    Ok(Square::new(x as u32, y as u32))
}

/// Applies `transform` plus `(dx, dy)` to every square of `spec`: footprint,
/// ports, scripts, and (for composites) the placed parts.
///
/// Errors with [`GadgetError::OutOfBounds`] if any square leaves the board
/// and with [`GadgetError::ParityViolation`] if a knight gadget would land on
/// squares of the opposite color (all eight symmetries preserve color, so
/// this happens exactly when `dx + dy` is odd).
pub(crate) fn transform_spec(
    spec: &GadgetSpec,
    transform: Transform,
    dx: i64,
    dy: i64,
) -> Result<GadgetSpec, GadgetError> {
    if spec.kind == PieceKind::Knight && (dx + dy).rem_euclid(2) != 0 {
        return Err(GadgetError::ParityViolation {
            name: spec.name.clone(),
            dx,
            dy,
        });
    }
    let map = |s: Square| {
        map_square(transform, dx, dy, s).map_err(|()| GadgetError::OutOfBounds {
            name: spec.name.clone(),
        })
    };
    let map_port = |port: &PortBinding| -> Result<PortBinding, GadgetError> {
        Ok(PortBinding::new(
            port.role,
            port.squares
                .iter()
                .map(|&s| map(s))
                .collect::<Result<Vec<_>, _>>()?,
            port.convention,
        ))
    };
    let mut footprint = BTreeMap::new();
    for (&square, &budget) in &spec.footprint {
        footprint.insert(map(square)?, budget);
    }
    let mut scripts = BTreeMap::new();
    for (key, sequence) in &spec.scripts {
        let mapped = sequence
            .iter()
            .map(|c| Ok(Capture::new(map(c.from)?, map(c.to)?)))
            .collect::<Result<CaptureSequence, GadgetError>>()?;
        scripts.insert(key.clone(), mapped);
    }
    let composition = match &spec.composition {
        None => None,
        Some(composition) => Some(Composition {
            parts: composition
                .parts
                .iter()
                .map(|part| {
                    Ok(PlacedPart {
                        name: part.name.clone(),
                        spec: transform_spec(&part.spec, transform, dx, dy)?,
                    })
                })
                .collect::<Result<Vec<_>, GadgetError>>()?,
        }),
    };
    Ok(GadgetSpec {
        name: spec.name.clone(),
        kind: spec.kind,
        footprint,
        inputs: spec
            .inputs
            .iter()
            .map(map_port)
            .collect::<Result<Vec<_>, _>>()?,
        outputs: spec
            .outputs
            .iter()
            .map(map_port)
            .collect::<Result<Vec<_>, _>>()?,
        semantics: spec.semantics.clone(),
        scripts,
        symmetries: spec.symmetries.clone(),
        composition,
    })
}

/// Places `spec` on the board under `transform` plus `translation`.
///
/// The transform must be one of the spec's declared symmetries; knight
/// gadgets additionally require a color-preserving translation.
pub fn instantiate(
    spec: &GadgetSpec,
    transform: Transform,
    translation: (i64, i64),
) -> Result<GadgetInstance, GadgetError> {
    if !spec.symmetries.contains(&transform) {
        return Err(GadgetError::IllegalTransform {
            name: spec.name.clone(),
            transform,
        });
    }
    let placed = transform_spec(spec, transform, translation.0, translation.1)?;
    Ok(GadgetInstance {
        spec_name: spec.name.clone(),
        transform,
        translation,
        placed,
    })
}

fn builtin_catalog_storage() -> &'static Vec<GadgetSpec> {
    static CATALOG: OnceLock<Vec<GadgetSpec>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let mut specs = king::catalog();
        specs.extend(knight::catalog());
        specs
    })
}

/// The built-in catalog: all king gadgets followed by all knight gadgets.
pub fn builtin_catalog() -> &'static [GadgetSpec] {
    builtin_catalog_storage()
}

/// The active catalog.
///
/// Without `SOLOCHESS_GADGET_PATH` this is the built-in catalog. When the
/// variable names a `gadgets/1` file, that file decides which gadgets exist
/// and their geometry (footprint, ports, symmetries); semantics and scripts
/// are attached from the built-in gadget of the same name and kind. A file
/// entry with no built-in counterpart is an error.
pub fn catalog() -> Result<Vec<GadgetSpec>, GadgetError> {
    let builtin = builtin_catalog();
    let Some(path) = std::env::var_os(GADGET_PATH_ENV) else {
        return Ok(builtin.to_vec());
    };
    let text = std::fs::read_to_string(&path).map_err(|e| GadgetError::Io {
        path: path.to_string_lossy().into_owned(),
        message: e.to_string(),
    })?;
    let parsed = format::parse_catalog(&text)?;
    parsed
        .into_iter()
        .map(|geometry| {
            let base = builtin
                .iter()
                .find(|spec| spec.name == geometry.name && spec.kind == geometry.kind)
                .ok_or_else(|| GadgetError::UnknownGadget {
                    name: geometry.name.clone(),
                    kind: geometry.kind,
                })?;
            Ok(GadgetSpec {
                name: geometry.name,
                kind: geometry.kind,
                footprint: geometry.footprint,
                inputs: geometry.inputs,
                outputs: geometry.outputs,
                symmetries: geometry.symmetries,
                semantics: base.semantics.clone(),
                scripts: base.scripts.clone(),
                composition: base.composition.clone(),
            })
        })
        .collect()
}

/// Looks up a gadget by kind and name.
pub fn find_gadget<'a>(
    catalog: &'a [GadgetSpec],
    kind: PieceKind,
    name: &str,
) -> Option<&'a GadgetSpec> {
    catalog
        .iter()
        .find(|spec| spec.kind == kind && spec.name == name)
}

/// Shorthand for a board square.
pub(crate) const fn sq(x: u32, y: u32) -> Square {
    Square { x, y }
}

/// Shorthand for a capture.
pub(crate) const fn cap(from: Square, to: Square) -> Capture {
    Capture::new(from, to)
}
