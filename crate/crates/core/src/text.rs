//! The Gauss-code text format.
//!
//! ```text
//! link 3
//! component 1*: O1+ U2-
//! component 2: U1+ O2-
//! component 3:
//! ```
//!
//! `*` marks a based component (base point before the first token). Blank
//! lines and `#` comments are ignored.

use thiserror::Error;

use crate::gauss::{End, GaussDiagram, Sign, Token, Violations, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Invalid(#[from] Violations),
}

impl ParseError {
    pub(crate) fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }
}

/// A non-blank input line with its 1-based number and comment stripped.
pub(crate) struct Line<'a> {
    pub number: usize,
    pub text: &'a str,
}

pub(crate) fn content_lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let text = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let text = text.trim_end();
            if text.trim().is_empty() {
                None
            } else {
                Some(Line {
                    number: i + 1,
                    text,
                })
            }
        })
        .collect()
}

/// Whitespace-separated fields with their 1-based columns.
pub(crate) fn fields(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in text.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &text[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &text[s..]));
    }
    out
}

pub(crate) fn parse_token(field: &str, line: usize, column: usize) -> Result<Token, ParseError> {
    let mut chars = field.chars();
    let end = match chars.next() {
        Some('O') => End::Tail,
        Some('U') => End::Head,
        _ => {
            return Err(ParseError::at(
                line,
                column,
                format!("expected O or U in token `{field}`"),
            ))
        }
    };
    let rest = &field[1..];
    let sign = rest
        .chars()
        .last()
        .and_then(Sign::from_symbol)
        .ok_or_else(|| {
            ParseError::at(
                line,
                column + field.len() - 1,
                format!("expected + or - at end of `{field}`"),
            )
        })?;
    let id = &rest[..rest.len() - 1];
    if id.is_empty() || !id.chars().all(|c| c.is_ascii_alphanumeric()) {
        return Err(ParseError::at(
            line,
            column + 1,
            format!("expected alphanumeric crossing label in `{field}`"),
        ));
    }
    Ok(Token {
        id: id.to_string(),
        end,
        sign,
    })
}

/// Parses a token list following a `name:` prefix; `column` is where the list starts.
pub(crate) fn parse_tokens(
    text: &str,
    line: usize,
    column: usize,
) -> Result<Vec<Token>, ParseError> {
    fields(text)
        .into_iter()
        .map(|(c, f)| parse_token(f, line, column + c - 1))
        .collect()
}

pub fn parse_gauss_code(text: &str) -> Result<GaussDiagram, ParseError> {
    let lines = content_lines(text);
    let mut iter = lines.iter();
    let header = iter
        .next()
        .ok_or_else(|| ParseError::at(1, 1, "expected `link <n>`"))?;
    let head_fields = fields(header.text);
    let n = match head_fields.as_slice() {
        [(_, "link"), (c, n)] => n
            .parse::<usize>()
            .map_err(|_| ParseError::at(header.number, *c, format!("bad component count `{n}`")))?,
        _ => return Err(ParseError::at(header.number, 1, "expected `link <n>`")),
    };

    let mut words: Vec<Word> = Vec::with_capacity(n);
    for line in iter {
        let colon = line
            .text
            .find(':')
            .ok_or_else(|| ParseError::at(line.number, 1, "expected `component <i>[*]:`"))?;
        let head = fields(&line.text[..colon]);
        let (label_col, label) = match head.as_slice() {
            [(_, "component"), (c, label)] => (*c, *label),
            _ => {
                return Err(ParseError::at(
                    line.number,
                    1,
                    "expected `component <i>[*]:`",
                ))
            }
        };
        let (digits, based) = match label.strip_suffix('*') {
            Some(d) => (d, true),
            None => (label, false),
        };
        let index: usize = digits.parse().map_err(|_| {
            ParseError::at(
                line.number,
                label_col,
                format!("bad component index `{label}`"),
            )
        })?;
        if index != words.len() + 1 {
            return Err(ParseError::at(
                line.number,
                label_col,
                format!("expected component {}, found {index}", words.len() + 1),
            ));
        }
        if index > n {
            return Err(ParseError::at(
                line.number,
                label_col,
                format!("component {index} exceeds link {n}"),
            ));
        }
        let tokens = parse_tokens(&line.text[colon + 1..], line.number, colon + 2)?;
        words.push(Word { based, tokens });
    }
    if words.len() != n {
        let last = lines.last().map(|l| l.number).unwrap_or(1);
        return Err(ParseError::at(
            last,
            1,
            format!("expected {n} components, found {}", words.len()),
        ));
    }
    Ok(GaussDiagram::from_words(&words)?)
}

pub(crate) fn token_list(tokens: &[Token]) -> String {
    tokens
        .iter()
        .map(|t| t.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn serialize_gauss_code(diagram: &GaussDiagram) -> String {
    let mut out = format!("link {}\n", diagram.component_count());
    for (i, word) in diagram.words().iter().enumerate() {
        out.push_str(&format!(
            "component {}{}:",
            i + 1,
            if word.based { "*" } else { "" }
        ));
        if !word.tokens.is_empty() {
            out.push(' ');
            out.push_str(&token_list(&word.tokens));
        }
        out.push('\n');
    }
    out
}
