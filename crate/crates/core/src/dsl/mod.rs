//! A small text format for congruence tasks between truncated sums.
//!
//! ```text
//! verify
//! params: a
//! lhs: sum k=0..M: qint(4*k-1) * poch(a*q^-1; q^2; k) / poch(q^2/a; q^2; k)
//! rhs: sum k=0..0: 0
//! modulus: [n] * (1-a*q^n) * (a-q^n)
//! ```

mod ast;
mod lexer;
mod lower;
mod parser;

use std::fmt;

use thiserror::Error;

pub use ast::{render, render_bound, Factor, Op, SpecAst, SumAst, TermAst};
pub use lower::lower;
pub use parser::{parse_factor, parse_task, parse_term};

use crate::congruence::CongruenceTask;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    /// 1-based.
    pub line: usize,
    /// 1-based, in characters.
    pub column: usize,
    pub expected: Vec<String>,
    pub message: String,
}

impl ParseError {
    pub(crate) fn at(text: &str, offset: usize, expected: Vec<String>, message: String) -> Self {
        let before = &text[..offset];
        let line = before.matches('\n').count() + 1;
        let line_start = before.rfind('\n').map_or(0, |i| i + 1);
        let column = text[line_start..offset].chars().count() + 1;
        ParseError { offset, line, column, expected, message }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{message}")]
pub struct SemanticError {
    pub message: String,
}

impl SemanticError {
    pub(crate) fn new(message: impl Into<String>) -> Self {
        SemanticError { message: message.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("invalid task: {0}")]
    Semantic(#[from] SemanticError),
}

/// Parses and lowers in one step.
pub fn load_task(text: &str) -> Result<CongruenceTask, DslError> {
    Ok(lower(&parse_task(text)?)?)
}
