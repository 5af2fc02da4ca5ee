use num_bigint::BigInt;

use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Word(String),
    Int(BigInt),
    Sym(&'static str),
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("'{w}'"),
            Tok::Int(i) => format!("'{i}'"),
            Tok::Sym(s) => format!("'{s}'"),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub offset: usize,
}

const SYMBOLS: [&str; 14] = ["..", "(", ")", "[", "]", ";", ":", ",", "*", "/", "^", "+", "-", "="];

/// Splits the input into tokens; `#` starts a comment running to the end
/// of the line.
pub fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c == b'#' {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token { tok: Tok::Word(text[start..i].to_string()), offset: start });
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let v: BigInt = text[start..i].parse().expect("digits");
            out.push(Token { tok: Tok::Int(v), offset: start });
        } else if let Some(s) = SYMBOLS.iter().find(|s| text[i..].starts_with(**s)) {
            out.push(Token { tok: Tok::Sym(s), offset: i });
            i += s.len();
        } else {
            let ch = text[i..].chars().next().expect("in bounds");
            return Err(ParseError::at(text, i, Vec::new(), format!("unexpected character {ch:?}")));
        }
    }
    out.push(Token { tok: Tok::Eof, offset: text.len() });
    Ok(out)
}
