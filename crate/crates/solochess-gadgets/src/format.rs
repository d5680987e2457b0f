//! The `gadgets/1` catalog data format.
//!
//! A catalog file is line-oriented text:
//!
//! ```text
//! gadgets/1
//! gadget WIRE-2 king
//! square 2 1 2
//! ...
//! input 1 2 king-single
//! output 5 2 king-single
//! symmetries identity rot90 ...
//! end
//! gadget ...
//! ```
//!
//! Records cover geometry only (footprint, ports, symmetries); semantics and
//! scripts stay with the built-in catalog. `input`/`output` lines carry one
//! square for single-square conventions and two (primary then secondary, or
//! outer then inner) for pair conventions. Blank lines and `#` comments are
//! accepted when parsing.

use std::collections::BTreeMap;

use crate::{GadgetError, GadgetSpec, Transform};
use solochess_core::{PieceKind, PortBinding, PortRole, ReadConvention, Square};

pub const HEADER: &str = "gadgets/1";

/// Geometry of one gadget as read from a catalog file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedGadget {
    pub name: String,
    pub kind: PieceKind,
    pub footprint: BTreeMap<Square, u8>,
    pub inputs: Vec<PortBinding>,
    pub outputs: Vec<PortBinding>,
    pub symmetries: Vec<Transform>,
}

fn convention_token(convention: ReadConvention) -> &'static str {
    match convention {
        ReadConvention::KingSingle => "king-single",
        ReadConvention::KingPair2Signal => "king-pair-2signal",
        ReadConvention::KnightColumn => "knight-column",
    }
}

fn convention_from_token(token: &str) -> Option<ReadConvention> {
    match token {
        "king-single" => Some(ReadConvention::KingSingle),
        "king-pair-2signal" => Some(ReadConvention::KingPair2Signal),
        "knight-column" => Some(ReadConvention::KnightColumn),
        _ => None,
    }
}

fn port_arity(convention: ReadConvention) -> usize {
    match convention {
        ReadConvention::KingSingle => 1,
        ReadConvention::KingPair2Signal | ReadConvention::KnightColumn => 2,
    }
}

fn kind_token(kind: PieceKind) -> &'static str {
    match kind {
        PieceKind::King => "king",
        PieceKind::Knight => "knight",
    }
}

/// Serializes a catalog's geometry to `gadgets/1` text.
pub fn serialize_catalog(specs: &[GadgetSpec]) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    for spec in specs {
        out.push_str(&format!("gadget {} {}\n", spec.name, kind_token(spec.kind)));
        for (square, budget) in &spec.footprint {
            out.push_str(&format!("square {} {} {}\n", square.x, square.y, budget));
        }
        for (label, ports) in [("input", &spec.inputs), ("output", &spec.outputs)] {
            for port in ports.iter() {
                let coords = port
                    .squares
                    .iter()
                    .map(|s| format!("{} {}", s.x, s.y))
                    .collect::<Vec<_>>()
                    .join(" ");
                out.push_str(&format!(
                    "{label} {coords} {}\n",
                    convention_token(port.convention)
                ));
            }
        }
        let tokens = spec
            .symmetries
            .iter()
            .map(|t| t.token())
            .collect::<Vec<_>>()
            .join(" ");
        out.push_str(&format!("symmetries {tokens}\n"));
        out.push_str("end\n");
    }
    out
}

struct PendingGadget {
    parsed: ParsedGadget,
    line: usize,
}

/// Parses `gadgets/1` text into per-gadget geometry.
pub fn parse_catalog(text: &str) -> Result<Vec<ParsedGadget>, GadgetError> {
    let err = |line: usize, message: String| GadgetError::Format(format!("line {line}: {message}"));
    let mut lines = text.lines().enumerate();
    let header = loop {
        match lines.next() {
            None => return Err(GadgetError::Format("empty catalog file".into())),
            Some((_, raw)) => {
                let trimmed = strip_comment(raw);
                if !trimmed.is_empty() {
                    break trimmed.to_owned();
                }
            }
        }
    };
    if header != HEADER {
        return Err(GadgetError::Format(format!(
            "expected header {HEADER:?}, found {header:?}"
        )));
    }

    let mut gadgets = Vec::new();
    let mut current: Option<PendingGadget> = None;
    for (index, raw) in lines {
        let line_no = index + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        let keyword = words.next().expect("non-empty line has a first word");
        let rest: Vec<&str> = words.collect();
        match keyword {
            "gadget" => {
                if current.is_some() {
                    return Err(err(line_no, "gadget record not closed with `end`".into()));
                }
                let [name, kind] = rest.as_slice() else {
                    return Err(err(line_no, "expected `gadget <name> <king|knight>`".into()));
                };
                let kind = match *kind {
                    "king" => PieceKind::King,
                    "knight" => PieceKind::Knight,
                    other => return Err(err(line_no, format!("unknown piece kind {other:?}"))),
                };
                current = Some(PendingGadget {
                    parsed: ParsedGadget {
                        name: (*name).to_owned(),
                        kind,
                        footprint: BTreeMap::new(),
                        inputs: Vec::new(),
                        outputs: Vec::new(),
                        symmetries: Vec::new(),
                    },
                    line: line_no,
                });
            }
            "square" => {
                let gadget = current
                    .as_mut()
                    .ok_or_else(|| err(line_no, "`square` outside a gadget record".into()))?;
                let [x, y, budget] = rest.as_slice() else {
                    return Err(err(line_no, "expected `square <x> <y> <budget>`".into()));
                };
                let square = parse_square(x, y).map_err(|m| err(line_no, m))?;
                let budget: u8 = budget
                    .parse()
                    .ok()
                    .filter(|b| *b <= 2)
                    .ok_or_else(|| err(line_no, format!("invalid budget {budget:?}")))?;
                if gadget.parsed.footprint.insert(square, budget).is_some() {
                    return Err(err(line_no, format!("duplicate footprint square {square}")));
                }
            }
            "input" | "output" => {
                let gadget = current
                    .as_mut()
                    .ok_or_else(|| err(line_no, format!("`{keyword}` outside a gadget record")))?;
                let Some((convention_token, coords)) = rest.split_last() else {
                    return Err(err(line_no, format!("incomplete `{keyword}` line")));
                };
                let convention = convention_from_token(convention_token).ok_or_else(|| {
                    err(line_no, format!("unknown convention {convention_token:?}"))
                })?;
                let arity = port_arity(convention);
                if coords.len() != arity * 2 {
                    return Err(err(
                        line_no,
                        format!(
                            "{keyword} with convention {convention_token} needs {arity} squares"
                        ),
                    ));
                }
                let squares = coords
                    .chunks(2)
                    .map(|pair| parse_square(pair[0], pair[1]))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|m| err(line_no, m))?;
                let role = if keyword == "input" {
                    PortRole::Input
                } else {
                    PortRole::Output
                };
                let port = PortBinding::new(role, squares, convention);
                if keyword == "input" {
                    gadget.parsed.inputs.push(port);
                } else {
                    gadget.parsed.outputs.push(port);
                }
            }
            "symmetries" => {
                let gadget = current
                    .as_mut()
                    .ok_or_else(|| err(line_no, "`symmetries` outside a gadget record".into()))?;
                if !gadget.parsed.symmetries.is_empty() {
                    return Err(err(line_no, "duplicate `symmetries` line".into()));
                }
                if rest.is_empty() {
                    return Err(err(line_no, "`symmetries` needs at least one token".into()));
                }
                for token in rest {
                    let transform = Transform::from_token(token)
                        .ok_or_else(|| err(line_no, format!("unknown transform {token:?}")))?;
                    gadget.parsed.symmetries.push(transform);
                }
            }
            "end" => {
                let gadget = current
                    .take()
                    .ok_or_else(|| err(line_no, "`end` outside a gadget record".into()))?;
                if gadget.parsed.symmetries.is_empty() {
                    return Err(err(
                        gadget.line,
                        format!("gadget {} has no `symmetries` line", gadget.parsed.name),
                    ));
                }
                gadgets.push(gadget.parsed);
            }
            other => return Err(err(line_no, format!("unknown keyword {other:?}"))),
        }
    }
    if let Some(gadget) = current {
        return Err(err(
            gadget.line,
            format!("gadget {} not closed with `end`", gadget.parsed.name),
        ));
    }
    Ok(gadgets)
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => line[..pos].trim(),
        None => line.trim(),
    }
}

fn parse_square(x: &str, y: &str) -> Result<Square, String> {
    let x: u32 = x
        .parse()
        .map_err(|_| format!("invalid coordinate {x:?}"))?;
    let y: u32 = y
        .parse()
        .map_err(|_| format!("invalid coordinate {y:?}"))?;
    Ok(Square::new(x, y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_a_small_catalog() {
        let text = "gadgets/1\n\
                    # comment\n\
                    gadget DEMO king\n\
                    square 2 1 2\n\
                    square 2 2 1\n\
                    input 1 2 king-single\n\
                    output 2 2 king-single\n\
                    symmetries identity rot90\n\
                    end\n";
        let parsed = parse_catalog(text).unwrap();
        assert_eq!(parsed.len(), 1);
        let gadget = &parsed[0];
        assert_eq!(gadget.name, "DEMO");
        assert_eq!(gadget.kind, PieceKind::King);
        assert_eq!(gadget.footprint.len(), 2);
        assert_eq!(gadget.inputs.len(), 1);
        assert_eq!(gadget.outputs.len(), 1);
        assert_eq!(
            gadget.symmetries,
            vec![Transform::Identity, Transform::Rot90]
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_catalog("").is_err());
        assert!(parse_catalog("gadgets/2\n").is_err());
        assert!(parse_catalog("gadgets/1\nsquare 1 1 2\n").is_err());
        assert!(parse_catalog("gadgets/1\ngadget X king\nsquare 1 1 3\nend\n").is_err());
        assert!(parse_catalog("gadgets/1\ngadget X king\nsymmetries identity\n").is_err());
        assert!(parse_catalog("gadgets/1\ngadget X king\nend\n").is_err());
    }
}
