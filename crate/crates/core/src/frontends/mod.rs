//! Builders that turn circuits, one-way patterns and named states into
//! diagrams.

mod circuit;
mod pattern;
mod states;

pub use circuit::{compile_circuit, parse_circuit, Circuit, Gate};
pub use pattern::{compile_pattern, parse_pattern, Command, Pattern};
pub use states::{
    cluster_by_cz, cluster_by_fusion, ghz_state, graph_state, teleport_branch, transfer_projector,
    transfer_protocol,
};

use crate::error::{Error, Result};
use crate::phase::Phase;

/// A whitespace-separated word with its 1-based source position.
#[derive(Clone, Debug)]
pub(crate) struct Token<'a> {
    pub text: &'a str,
    pub line: usize,
    pub col: usize,
}

/// Splits `text` into commands (by newline, and also by `;` if
/// `semicolons`), dropping `#` comments and empty commands.
pub(crate) fn commands(text: &str, semicolons: bool) -> Vec<Vec<Token<'_>>> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let line_body = line.split('#').next().unwrap_or("");
        let mut cur: Vec<Token> = Vec::new();
        let mut start: Option<usize> = None;
        for (ci, ch) in line_body.char_indices().chain(std::iter::once((line_body.len(), ' '))) {
            let sep = semicolons && ch == ';';
            if ch.is_whitespace() || sep {
                if let Some(s) = start.take() {
                    cur.push(Token {
                        text: &line_body[s..ci],
                        line: li + 1,
                        col: line_body[..s].chars().count() + 1,
                    });
                }
                if sep && !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            } else if start.is_none() {
                start = Some(ci);
            }
        }
        if !cur.is_empty() {
            out.push(cur);
        }
    }
    out
}

pub(crate) fn syntax(t: &Token, msg: impl Into<String>) -> Error {
    Error::Syntax {
        line: t.line,
        col: t.col,
        msg: msg.into(),
    }
}

pub(crate) fn parse_index(t: &Token) -> Result<usize> {
    t.text
        .parse()
        .map_err(|_| syntax(t, format!("expected a qubit index, found `{}`", t.text)))
}

pub(crate) fn parse_phase(t: &Token) -> Result<Phase> {
    t.text.parse().map_err(|e| match e {
        Error::Syntax { col, msg, .. } => Error::Syntax {
            line: t.line,
            col: t.col + col - 1,
            msg,
        },
        other => other,
    })
}

/// Checks the argument count of a command whose head is `cmd[0]`.
pub(crate) fn arity(cmd: &[Token], n: usize) -> Result<()> {
    if cmd.len() != n + 1 {
        let at = cmd.get(n + 1).unwrap_or(&cmd[0]);
        return Err(syntax(
            at,
            format!("`{}` takes {n} argument(s), found {}", cmd[0].text, cmd.len() - 1),
        ));
    }
    Ok(())
}
