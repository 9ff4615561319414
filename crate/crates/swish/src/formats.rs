//! Text formats for card sets, digraphs, and placement lists.
//!
//! All formats are line-oriented ASCII. Fields are separated by runs of
//! spaces or tabs, `#` starts a comment that runs to the end of the line,
//! blank lines are ignored, and both LF and CRLF line endings are accepted.
//! Coordinates and indices are 1-based so files read naturally against a
//! drawn grid.
//!
//! Card file: a header `h w`, then one card per line as `i1 j1 i2 j2`
//! (hoop row/column, then ball row/column). Line order defines card indices.
//!
//! Digraph file: a header `n m`, then exactly `m` lines `u v`, each a
//! directed edge; self-loops are rejected.
//!
//! Placement list: lines `c t` where `c` is a 1-based card index and `t` is
//! one of the tokens `I`, `F`, `R`, `V` (identity, horizontal flip,
//! 180-degree rotation, vertical flip).

use crate::cards::{Card, CardSet, Placement};
use crate::grid::{GridDims, Transform};
use crate::reductions::{Digraph, DigraphError};
use std::fmt::Write as _;
use thiserror::Error;

/// A parse failure with its 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub reason: String,
}

impl ParseError {
    fn new(line: usize, reason: impl Into<String>) -> Self {
        ParseError {
            line,
            reason: reason.into(),
        }
    }
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(idx, raw)| {
        let stripped = raw.split('#').next().unwrap_or("").trim();
        (!stripped.is_empty()).then_some((idx + 1, stripped))
    })
}

fn parse_fields<const N: usize>(
    line_no: usize,
    line: &str,
    what: &str,
) -> Result<[usize; N], ParseError> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != N {
        return Err(ParseError::new(
            line_no,
            format!("expected {N} fields for {what}, found {}", fields.len()),
        ));
    }
    let mut out = [0usize; N];
    for (slot, field) in out.iter_mut().zip(fields) {
        *slot = field
            .parse()
            .map_err(|_| ParseError::new(line_no, format!("invalid number {field:?}")))?;
    }
    Ok(out)
}

/// Parse a card file.
pub fn parse_card_file(text: &str) -> Result<CardSet, ParseError> {
    let mut lines = content_lines(text);
    let (header_no, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "missing header line \"h w\""))?;
    let [h, w] = parse_fields(header_no, header, "header \"h w\"")?;
    let dims = GridDims::new(h, w)
        .map_err(|e| ParseError::new(header_no, e.to_string()))?;
    let mut cards = Vec::new();
    for (line_no, line) in lines {
        let [i1, j1, i2, j2] = parse_fields(line_no, line, "card \"i1 j1 i2 j2\"")?;
        let card = Card::from_coords(i1, j1, i2, j2);
        for p in [card.hoop, card.ball] {
            if !dims.contains(p) {
                return Err(ParseError::new(
                    line_no,
                    format!("point {p} outside the {dims} grid"),
                ));
            }
        }
        cards.push(card);
    }
    Ok(CardSet::new(dims, cards).expect("bounds checked above"))
}

/// Serialize a card set; `parse_card_file` reads it back identically.
pub fn emit_card_file(cards: &CardSet) -> String {
    let dims = cards.dims();
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", dims.rows(), dims.cols());
    for card in cards.cards() {
        let _ = writeln!(
            out,
            "{} {} {} {}",
            card.hoop.i, card.hoop.j, card.ball.i, card.ball.j
        );
    }
    out
}

/// Parse a digraph file.
pub fn parse_digraph_file(text: &str) -> Result<Digraph, ParseError> {
    let mut lines = content_lines(text);
    let (header_no, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "missing header line \"n m\""))?;
    let [n, m] = parse_fields(header_no, header, "header \"n m\"")?;
    let mut edges = Vec::with_capacity(m);
    let mut last_line = header_no;
    for (line_no, line) in lines {
        last_line = line_no;
        if edges.len() == m {
            return Err(ParseError::new(
                line_no,
                format!("more than the {m} edges promised by the header"),
            ));
        }
        let [u, v] = parse_fields(line_no, line, "edge \"u v\"")?;
        for x in [u, v] {
            if x < 1 || x > n {
                return Err(ParseError::new(
                    line_no,
                    format!("vertex {x} outside 1..={n}"),
                ));
            }
        }
        if u == v {
            return Err(ParseError::new(line_no, format!("self-loop at vertex {u}")));
        }
        edges.push((u - 1, v - 1));
    }
    if edges.len() != m {
        return Err(ParseError::new(
            last_line,
            format!("header promised {m} edges, found {}", edges.len()),
        ));
    }
    Digraph::new(n, edges).map_err(|e| match e {
        DigraphError::SelfLoop { vertex } => {
            ParseError::new(last_line, format!("self-loop at vertex {}", vertex + 1))
        }
        DigraphError::VertexOutOfRange { vertex, count } => ParseError::new(
            last_line,
            format!("vertex {} outside 1..={count}", vertex + 1),
        ),
    })
}

/// Serialize a digraph; `parse_digraph_file` reads it back identically.
pub fn emit_digraph_file(g: &Digraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{} {}", u + 1, v + 1);
    }
    out
}

/// Parse a placement list against a card set of `card_count` cards.
pub fn parse_placement_list(text: &str, card_count: usize) -> Result<Vec<Placement>, ParseError> {
    let mut placements = Vec::new();
    for (line_no, line) in content_lines(text) {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [index_field, token_field] = fields[..] else {
            return Err(ParseError::new(
                line_no,
                format!(
                    "expected 2 fields for placement \"index token\", found {}",
                    fields.len()
                ),
            ));
        };
        let index: usize = index_field
            .parse()
            .map_err(|_| ParseError::new(line_no, format!("invalid number {index_field:?}")))?;
        if index < 1 || index > card_count {
            return Err(ParseError::new(
                line_no,
                format!("card index {index} outside 1..={card_count}"),
            ));
        }
        let transform = token_field
            .chars()
            .next()
            .filter(|_| token_field.len() == 1)
            .and_then(Transform::from_token)
            .ok_or_else(|| {
                ParseError::new(
                    line_no,
                    format!("invalid transform token {token_field:?}, expected I, F, R, or V"),
                )
            })?;
        placements.push(Placement::new(index - 1, transform));
    }
    Ok(placements)
}

/// Serialize placements as 1-based `index token` lines.
pub fn emit_placement_list(placements: &[Placement]) -> String {
    let mut out = String::new();
    for p in placements {
        let _ = writeln!(out, "{} {}", p.card_index + 1, p.transform.token());
    }
    out
}
