//! Signals and port read conventions.
//!
//! Gadgets exchange values through *ports*: one or two designated squares
//! whose end-of-sequence occupancy encodes a signal. King gadgets carry a
//! single value in `{0, 1, 2}`; knight gadgets carry a pair of bits.

use std::fmt;

use crate::board::{Configuration, Square};

/// A signal value carried by a port.
///
/// # Ordering
///
/// The *semantic* signal order — total `0 < 1 < 2` for kings, componentwise
/// for knight pairs, leaving `(1, 0)` and `(0, 1)` incomparable — is exposed
/// through [`signal_leq`] / [`Signal::leq`]. The derived `Ord` instance is an
/// arbitrary total order used only to keep signals in deterministic
/// containers; do not use it for dominance reasoning.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Signal {
    /// King signal: 0, 1 or 2. The value 2 only occurs on the internal ports
    /// of the crossing construction.
    King(u8),
    /// Knight signal: a pair of bits, one per budget unit a wire can carry.
    Knight(u8, u8),
}

impl Signal {
    /// Semantic partial order on signals. See [`signal_leq`].
    pub fn leq(&self, other: &Signal) -> bool {
        signal_leq(self, other)
    }

    /// The all-zero signal of the same family.
    pub fn zero_like(&self) -> Signal {
        match self {
            Signal::King(_) => Signal::King(0),
            Signal::Knight(_, _) => Signal::Knight(0, 0),
        }
    }
}

impl fmt::Display for Signal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Signal::King(v) => write!(f, "{v}"),
            Signal::Knight(a, b) => write!(f, "({a},{b})"),
        }
    }
}

/// Semantic partial order on signals: for kings the total order
/// `0 <= 1 <= 2`; for knight pairs the componentwise order, under which
/// `(1, 0)` and `(0, 1)` are incomparable. Signals of different families are
/// never comparable.
pub fn signal_leq(a: &Signal, b: &Signal) -> bool {
    match (a, b) {
        (Signal::King(x), Signal::King(y)) => x <= y,
        (Signal::Knight(x0, x1), Signal::Knight(y0, y1)) => x0 <= y0 && x1 <= y1,
        _ => false,
    }
}

/// Componentwise semantic order on signal tuples of equal length.
pub fn tuple_leq(a: &[Signal], b: &[Signal]) -> bool {
    a.len() == b.len() && a.iter().zip(b.iter()).all(|(x, y)| signal_leq(x, y))
}

/// Whether a port carries values into or out of its gadget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PortRole {
    Input,
    Output,
}

impl fmt::Display for PortRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PortRole::Input => write!(f, "input"),
            PortRole::Output => write!(f, "output"),
        }
    }
}

/// How the end-of-sequence occupancy of a port's squares encodes a signal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ReadConvention {
    /// One square; the signal is the budget of the occupant, or 0 when the
    /// square is empty. Carries values 0 and 1.
    KingSingle,
    /// Two squares (primary, secondary). Values 0 and 1 are read like
    /// [`ReadConvention::KingSingle`] off the primary square with the
    /// secondary square empty; value 2 is a (2-king, 1-king) pair in either
    /// arrangement — different gadgets of the crossing emit the pair in
    /// different orders, and all of them accept both.
    KingPair2Signal,
    /// Two squares of a knight wire column, listed as (outer, inner). Raw
    /// components: the first is 1 iff the outer square holds a 2-knight, the
    /// second is the budget of the inner occupant (the inner square must be
    /// occupied with budget 0 or 1). On columns whose squares have odd color
    /// the two components are swapped, so that reported signals are
    /// independent of where a gadget sits on the board.
    KnightColumn,
}

impl fmt::Display for ReadConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReadConvention::KingSingle => write!(f, "king-single"),
            ReadConvention::KingPair2Signal => write!(f, "king-pair-2signal"),
            ReadConvention::KnightColumn => write!(f, "knight-column"),
        }
    }
}

/// A port: its role, its board squares (one or two, meaning fixed by the
/// convention) and the read convention.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PortBinding {
    pub role: PortRole,
    /// One square for [`ReadConvention::KingSingle`]; (primary, secondary)
    /// for [`ReadConvention::KingPair2Signal`]; (outer, inner) for
    /// [`ReadConvention::KnightColumn`].
    pub squares: Vec<Square>,
    pub convention: ReadConvention,
}

impl PortBinding {
    pub fn new(role: PortRole, squares: Vec<Square>, convention: ReadConvention) -> Self {
        debug_assert!(matches!(squares.len(), 1 | 2));
        PortBinding {
            role,
            squares,
            convention,
        }
    }

    /// The port translated by `(dx, dy)`.
    pub fn translated(&self, dx: u32, dy: u32) -> PortBinding {
        PortBinding {
            role: self.role,
            squares: self.squares.iter().map(|s| s.translated(dx, dy)).collect(),
            convention: self.convention,
        }
    }
}

/// Reads the signal a port carries in `config`, or `None` when the port
/// squares are in a state outside the convention's alphabet (for example a
/// lone 2-king on a pair port, or an empty inner square of a knight column).
///
/// Only occupancy of the port squares is inspected; the rest of the board is
/// ignored.
pub fn read_port(config: &Configuration, port: &PortBinding) -> Option<Signal> {
    match port.convention {
        ReadConvention::KingSingle => {
            let sq = port.squares[0];
            Some(Signal::King(config.budget(sq).unwrap_or(0)))
        }
        ReadConvention::KingPair2Signal => {
            let primary = config.budget(port.squares[0]);
            let secondary = config.budget(port.squares[1]);
            match (primary, secondary) {
                // 0/1 live on the primary square with the secondary empty.
                (Some(v @ (0 | 1)), None) => Some(Signal::King(v)),
                // A 2-signal is a (2-king, 1-king) pair in either arrangement.
                (Some(2), Some(1)) | (Some(1), Some(2)) => Some(Signal::King(2)),
                _ => None,
            }
        }
        ReadConvention::KnightColumn => {
            let outer = config.budget(port.squares[0]);
            let inner = config.budget(port.squares[1]);
            let first = match outer {
                None => 0,
                Some(2) => 1,
                Some(_) => return None,
            };
            let second = match inner {
                Some(b @ (0 | 1)) => b,
                _ => return None,
            };
            if port.squares[0].color() == 1 {
                Some(Signal::Knight(second, first))
            } else {
                Some(Signal::Knight(first, second))
            }
        }
    }
}
