//! Squares, pieces, configurations and the capture transition relation.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

/// A board square. Coordinates are non-negative; `x` grows rightwards and
/// `y` grows downwards, so `(0, 0)` is the top-left corner of the board.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Square {
    pub x: u32,
    pub y: u32,
}

impl Square {
    pub const fn new(x: u32, y: u32) -> Self {
        Square { x, y }
    }

    /// Checkerboard color of the square: `0` for squares where `x + y` is
    /// even, `1` where it is odd. Knight moves always change the color;
    /// translations of knight gadgets must preserve it.
    pub fn color(&self) -> u8 {
        ((self.x + self.y) % 2) as u8
    }

    /// The square translated by `(dx, dy)`.
    pub fn translated(&self, dx: u32, dy: u32) -> Square {
        Square::new(self.x + dx, self.y + dy)
    }
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// The piece type a configuration is played with. All pieces of a
/// configuration share one kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PieceKind {
    King,
    Knight,
}

impl PieceKind {
    /// All squares attacked from `from`, clipped to the board (coordinates
    /// never go negative), in lexicographic order.
    pub fn attacks(&self, from: Square) -> Vec<Square> {
        let deltas: &[(i64, i64)] = match self {
            PieceKind::King => &[
                (-1, -1),
                (-1, 0),
                (-1, 1),
                (0, -1),
                (0, 1),
                (1, -1),
                (1, 0),
                (1, 1),
            ],
            PieceKind::Knight => &[
                (-2, -1),
                (-2, 1),
                (-1, -2),
                (-1, 2),
                (1, -2),
                (1, 2),
                (2, -1),
                (2, 1),
            ],
        };
        let mut out = Vec::with_capacity(8);
        for &(dx, dy) in deltas {
            let x = from.x as i64 + dx;
            let y = from.y as i64 + dy;
            if x >= 0 && y >= 0 {
                out.push(Square::new(x as u32, y as u32));
            }
        }
        out.sort();
        out
    }

    /// Whether a piece of this kind on `from` attacks `to`.
    pub fn attacks_square(&self, from: Square, to: Square) -> bool {
        let dx = (from.x as i64 - to.x as i64).abs();
        let dy = (from.y as i64 - to.y as i64).abs();
        match self {
            PieceKind::King => dx <= 1 && dy <= 1 && (dx, dy) != (0, 0),
            PieceKind::Knight => (dx, dy) == (1, 2) || (dx, dy) == (2, 1),
        }
    }
}

impl fmt::Display for PieceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PieceKind::King => write!(f, "king"),
            PieceKind::Knight => write!(f, "knight"),
        }
    }
}

/// One capture move: the piece on `from` captures the piece on `to` and
/// comes to rest on `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Capture {
    pub from: Square,
    pub to: Square,
}

impl Capture {
    pub const fn new(from: Square, to: Square) -> Self {
        Capture { from, to }
    }
}

impl fmt::Display for Capture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} > {}", self.from, self.to)
    }
}

/// A sequence of captures, applied left to right.
pub type CaptureSequence = Vec<Capture>;

/// Why a single capture is illegal in a given configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IllegalCaptureReason {
    /// The origin square holds no piece.
    FromEmpty,
    /// The target square holds no piece (every move must capture).
    ToEmpty,
    /// Origin and target are the same square.
    SameSquare,
    /// The moving piece does not attack the target square.
    NotAttacking,
    /// The moving piece has no moves left.
    NoBudget,
}

impl fmt::Display for IllegalCaptureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            IllegalCaptureReason::FromEmpty => "origin square is empty",
            IllegalCaptureReason::ToEmpty => "target square is empty",
            IllegalCaptureReason::SameSquare => "origin and target coincide",
            IllegalCaptureReason::NotAttacking => "target is not attacked by the moving piece",
            IllegalCaptureReason::NoBudget => "moving piece has no budget left",
        };
        f.write_str(msg)
    }
}

/// Errors of the board model.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("piece on {square} has budget {budget}, allowed budgets are 0, 1, 2")]
    InvalidBudget { square: Square, budget: u8 },
    #[error("square {square} is listed twice")]
    DuplicateSquare { square: Square },
    #[error("illegal capture {capture}: {reason}")]
    IllegalCapture {
        capture: Capture,
        reason: IllegalCaptureReason,
    },
}

/// An error while applying a sequence: the offending capture index plus the
/// underlying single-capture error.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("capture #{index} is invalid: {source}")]
pub struct SequenceError {
    /// Zero-based index into the sequence.
    pub index: usize,
    #[source]
    pub source: CoreError,
}

/// A 2-Solo Chess position: a piece kind plus, for every occupied square,
/// the remaining move budget (0, 1 or 2) of the piece standing there.
///
/// Pieces have no identity beyond their current square; replay-based
/// analyses such as [`Configuration::profile`] recover identities by
/// tracking moves from the initial position.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    kind: PieceKind,
    pieces: BTreeMap<Square, u8>,
}

impl Configuration {
    /// Builds a configuration from `(square, budget)` pairs.
    ///
    /// Fails on budgets outside `0..=2` and on duplicate squares.
    pub fn new(
        kind: PieceKind,
        pieces: impl IntoIterator<Item = (Square, u8)>,
    ) -> Result<Self, CoreError> {
        let mut map = BTreeMap::new();
        for (square, budget) in pieces {
            if budget > 2 {
                return Err(CoreError::InvalidBudget { square, budget });
            }
            if map.insert(square, budget).is_some() {
                return Err(CoreError::DuplicateSquare { square });
            }
        }
        Ok(Configuration { kind, pieces: map })
    }

    pub fn kind(&self) -> PieceKind {
        self.kind
    }

    /// The occupied squares with their budgets, in lexicographic square order.
    pub fn pieces(&self) -> &BTreeMap<Square, u8> {
        &self.pieces
    }

    pub fn piece_count(&self) -> usize {
        self.pieces.len()
    }

    /// Budget of the piece on `square`, or `None` when the square is empty.
    pub fn budget(&self, square: Square) -> Option<u8> {
        self.pieces.get(&square).copied()
    }

    pub fn is_occupied(&self, square: Square) -> bool {
        self.pieces.contains_key(&square)
    }

    /// Sum of the budgets of all pieces on the board.
    pub fn total_budget(&self) -> u32 {
        self.pieces.values().map(|&b| b as u32).sum()
    }

    /// All captures legal in this configuration, lexicographically ordered
    /// by origin square, then target square.
    pub fn legal_captures(&self) -> Vec<Capture> {
        let mut out = Vec::new();
        for (&from, &budget) in &self.pieces {
            if budget == 0 {
                continue;
            }
            for to in self.kind.attacks(from) {
                if self.pieces.contains_key(&to) {
                    out.push(Capture::new(from, to));
                }
            }
        }
        out
    }

    /// Checks a single capture against this configuration without applying it.
    pub fn validate(&self, capture: Capture) -> Result<(), CoreError> {
        let reason = if capture.from == capture.to {
            Some(IllegalCaptureReason::SameSquare)
        } else {
            match self.pieces.get(&capture.from) {
                None => Some(IllegalCaptureReason::FromEmpty),
                Some(0) => Some(IllegalCaptureReason::NoBudget),
                Some(_) if !self.pieces.contains_key(&capture.to) => {
                    Some(IllegalCaptureReason::ToEmpty)
                }
                Some(_) if !self.kind.attacks_square(capture.from, capture.to) => {
                    Some(IllegalCaptureReason::NotAttacking)
                }
                Some(_) => None,
            }
        };
        match reason {
            Some(reason) => Err(CoreError::IllegalCapture { capture, reason }),
            None => Ok(()),
        }
    }

    /// Applies one capture, returning the successor configuration.
    ///
    /// The piece on `capture.from` (which must have positive budget and
    /// attack `capture.to`) replaces the piece on `capture.to`, spending one
    /// budget unit. The piece count drops by exactly one.
    pub fn apply(&self, capture: Capture) -> Result<Configuration, CoreError> {
        self.validate(capture)?;
        let mut next = self.clone();
        let budget = next.pieces.remove(&capture.from).expect("validated");
        next.pieces.insert(capture.to, budget - 1);
        Ok(next)
    }

    /// Applies a whole sequence; on failure reports the index of the first
    /// illegal capture.
    pub fn apply_sequence(&self, sequence: &[Capture]) -> Result<Configuration, SequenceError> {
        let mut current = self.clone();
        for (index, &capture) in sequence.iter().enumerate() {
            current = current
                .apply(capture)
                .map_err(|source| SequenceError { index, source })?;
        }
        Ok(current)
    }

    /// Whether this configuration is cleared: exactly one piece remains.
    pub fn is_cleared(&self) -> bool {
        self.pieces.len() == 1
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} configuration:", self.kind)?;
        for (square, budget) in &self.pieces {
            write!(f, " {square}:{budget}")?;
        }
        Ok(())
    }
}
