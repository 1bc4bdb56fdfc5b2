//! Line-oriented spec documents.
//!
//! ```text
//! piece A vertex
//! piece B vertex
//! match a1: A.2 ~ B.4 (1 2 3)   # left prong k glues to right prong p_k
//! disks all
//! ```
//!
//! `#` starts a comment at the beginning of a line or after whitespace, so
//! names such as `A#2` stay intact. `disk <i>` attaches a disk along curve
//! `i` (0-based, in tracing order); `disks none` attaches no disks.

use std::fmt;

use thiserror::Error;

use crate::gluing::{DiskPolicy, GluingSpec, Matching, PieceDecl, TEndSlot};
use crate::pieces::{PieceKind, ProngPerm};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '#' | '\'' | '-')
}

pub fn is_valid_name(name: &str) -> bool {
    !name.is_empty() && !name.starts_with('#') && name.chars().all(is_name_char)
}

fn strip_comment(line: &str) -> &str {
    let mut prev_space = true;
    for (i, c) in line.char_indices() {
        if c == '#' && prev_space {
            return &line[..i];
        }
        prev_space = c.is_whitespace();
    }
    line
}

struct Cursor<'a> {
    line: usize,
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn column(&self) -> usize {
        self.text[..self.pos].chars().count() + 1
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column: self.column(), message: message.into() }
    }

    fn skip_space(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn at_end(&mut self) -> bool {
        self.skip_space();
        self.pos == self.text.len()
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing text"))
        }
    }

    fn expect_char(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_space();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn name(&mut self, what: &str) -> Result<&'a str, ParseError> {
        self.skip_space();
        let rest = &self.text[self.pos..];
        let len = rest.find(|c| !is_name_char(c)).unwrap_or(rest.len());
        if len == 0 {
            return Err(self.error(format!("expected {what}")));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn number(&mut self, what: &str) -> Result<usize, ParseError> {
        self.skip_space();
        let rest = &self.text[self.pos..];
        let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        let value = rest[..len].parse().map_err(|_| self.error(format!("expected {what}")))?;
        self.pos += len;
        Ok(value)
    }

    fn slot(&mut self) -> Result<TEndSlot, ParseError> {
        self.skip_space();
        let rest = &self.text[self.pos..];
        let len = rest.find(|c| !is_name_char(c)).unwrap_or(rest.len());
        if len == 0 {
            return Err(self.error("expected T-end `<piece>.<t>`"));
        }
        let piece = &rest[..len];
        self.pos += len;
        if self.peek() != Some('.') {
            return Err(self.error("expected `.` between piece name and T-end number"));
        }
        self.pos += 1;
        let start = self.column();
        let t = self.number("T-end number")?;
        let t_end = u8::try_from(t).map_err(|_| ParseError {
            line: self.line,
            column: start,
            message: format!("T-end number {t} is out of range"),
        })?;
        Ok(TEndSlot::new(piece, t_end))
    }

    fn perm(&mut self) -> Result<ProngPerm, ParseError> {
        self.expect_char('(')?;
        let start = self.column();
        let mut images = [0u8; 3];
        for image in &mut images {
            let v = self.number("prong number")?;
            *image = u8::try_from(v).unwrap_or(0);
        }
        self.expect_char(')')?;
        ProngPerm::from_images(images).ok_or(ParseError {
            line: self.line,
            column: start,
            message: format!("({} {} {}) is not a permutation of 1 2 3", images[0], images[1], images[2]),
        })
    }
}

/// Parses a spec document. Only syntax is checked here; use
/// [`GluingSpec::validate`] for matching errors.
pub fn parse_spec(text: &str) -> Result<GluingSpec, ParseError> {
    let mut pieces = Vec::new();
    let mut matchings = Vec::new();
    let mut disks: Option<DiskPolicy> = None;

    for (i, raw) in text.lines().enumerate() {
        let mut c = Cursor { line: i + 1, text: strip_comment(raw), pos: 0 };
        if c.at_end() {
            continue;
        }
        let keyword_at = c.column();
        let keyword = c.name("keyword")?;
        match keyword {
            "piece" => {
                let name = c.name("piece name")?;
                c.skip_space();
                let kind_at = c.column();
                let kind = match c.name("piece kind")? {
                    "vertex" => PieceKind::Vertex,
                    "bar" => PieceKind::Bar,
                    other => {
                        return Err(ParseError {
                            line: c.line,
                            column: kind_at,
                            message: format!("unknown piece kind `{other}`; expected `vertex` or `bar`"),
                        })
                    }
                };
                c.expect_end()?;
                pieces.push(PieceDecl::new(name, kind));
            }
            "match" => {
                let id = c.name("matching id")?;
                c.expect_char(':')?;
                let left = c.slot()?;
                c.expect_char('~')?;
                let right = c.slot()?;
                let perm = c.perm()?;
                c.expect_end()?;
                matchings.push(Matching::new(id, left, right, perm));
            }
            "disks" => {
                c.skip_space();
                let word_at = c.column();
                let policy = match c.name("`all` or `none`")? {
                    "all" => DiskPolicy::All,
                    "none" => DiskPolicy::Explicit(Vec::new()),
                    other => {
                        return Err(ParseError {
                            line: c.line,
                            column: word_at,
                            message: format!("expected `all` or `none`, found `{other}`"),
                        })
                    }
                };
                c.expect_end()?;
                if disks.is_some() {
                    return Err(ParseError {
                        line: c.line,
                        column: keyword_at,
                        message: "disk policy given more than once".into(),
                    });
                }
                disks = Some(policy);
            }
            "disk" => {
                let index = c.number("curve index")?;
                c.expect_end()?;
                match &mut disks {
                    None => disks = Some(DiskPolicy::Explicit(vec![index])),
                    Some(DiskPolicy::Explicit(list)) if !list.is_empty() => list.push(index),
                    Some(_) => {
                        return Err(ParseError {
                            line: c.line,
                            column: keyword_at,
                            message: "`disk` conflicts with an earlier `disks` line".into(),
                        })
                    }
                }
            }
            other => {
                return Err(ParseError {
                    line: c.line,
                    column: keyword_at,
                    message: format!("unknown keyword `{other}`"),
                })
            }
        }
    }
    Ok(GluingSpec::new(pieces, matchings, disks.unwrap_or_default()))
}

/// Prints in the document grammar; `parse_spec` reads it back unchanged.
impl fmt::Display for GluingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.pieces {
            writeln!(f, "piece {} {}", p.name, p.kind)?;
        }
        for m in &self.matchings {
            writeln!(f, "match {}: {} ~ {} {}", m.id, m.left, m.right, m.perm)?;
        }
        match &self.disks {
            DiskPolicy::All => writeln!(f, "disks all"),
            DiskPolicy::Explicit(list) if list.is_empty() => writeln!(f, "disks none"),
            DiskPolicy::Explicit(list) => list.iter().try_for_each(|d| writeln!(f, "disk {d}")),
        }
    }
}
