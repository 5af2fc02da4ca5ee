use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::exact::rat::BigRat;
use crate::qseries::catalog::ModFactor;
use crate::qseries::{Bound, ExpPoly, Monomial, Named, Param};

use super::ast::{Factor, Op, SpecAst, SumAst, TermAst};
use super::lexer::{tokenize, Tok, Token};
use super::ParseError;

const FACTOR_START: &[&str] = &["qint", "poch", "omega", "theta", "rq", "sq", "a", "b", "c", "d", "q", "(", "integer"];

struct Parser<'a> {
    text: &'a str,
    toks: Vec<Token>,
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, ahead: usize) -> &Tok {
        &self.toks[(self.pos + ahead).min(self.toks.len() - 1)].tok
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].offset
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let mut exp: Vec<String> = expected.iter().map(|s| s.to_string()).collect();
        exp.sort();
        exp.dedup();
        let msg = format!("unexpected {}", self.peek().describe());
        ParseError::at(self.text, self.offset(), exp, msg)
    }

    fn error_msg(&self, offset: usize, msg: impl Into<String>) -> ParseError {
        ParseError::at(self.text, offset, Vec::new(), msg.into())
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(x) if *x == s)
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Word(x) if x == w)
    }

    fn sym(&mut self, s: &'static str) -> PResult<()> {
        if self.is_sym(s) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[s]))
        }
    }

    fn word(&mut self, w: &'static str) -> PResult<()> {
        if self.is_word(w) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[w]))
        }
    }

    fn int(&mut self) -> PResult<BigInt> {
        match self.peek() {
            Tok::Int(v) => {
                let v = v.clone();
                self.bump();
                Ok(v)
            }
            _ => Err(self.error(&["integer"])),
        }
    }

    fn small_int(&mut self) -> PResult<i64> {
        let off = self.offset();
        let v = self.int()?;
        v.to_i64().filter(|x| x.abs() < 1 << 20).ok_or_else(|| self.error_msg(off, "integer too large"))
    }

    fn signed_int(&mut self) -> PResult<i64> {
        let neg = self.is_sym("-");
        if neg {
            self.bump();
        }
        let v = self.small_int()?;
        Ok(if neg { -v } else { v })
    }

    /// Optional `^ int` after a factor.
    fn power(&mut self) -> PResult<i64> {
        if self.is_sym("^") {
            self.bump();
            self.signed_int()
        } else {
            Ok(1)
        }
    }

    // exponent expressions in k and n

    fn expr(&mut self) -> PResult<ExpPoly> {
        let mut acc = if self.is_sym("-") {
            self.bump();
            -self.product()?
        } else {
            self.product()?
        };
        loop {
            if self.is_sym("+") {
                self.bump();
                acc = acc + self.product()?;
            } else if self.is_sym("-") {
                self.bump();
                acc = acc - self.product()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> PResult<ExpPoly> {
        let mut acc = self.power_expr()?;
        loop {
            let off = self.offset();
            if self.is_sym("*") {
                self.bump();
                let rhs = self.power_expr()?;
                acc = acc.checked_mul(&rhs).ok_or_else(|| self.error_msg(off, "exponent exceeds degree two"))?;
            } else if self.is_sym("/") {
                self.bump();
                let off = self.offset();
                let d = self.small_int()?;
                if d == 0 {
                    return Err(self.error_msg(off, "division by zero"));
                }
                acc = acc.div_int(d);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power_expr(&mut self) -> PResult<ExpPoly> {
        let base = self.atom_expr()?;
        if !self.is_sym("^") {
            return Ok(base);
        }
        self.bump();
        let off = self.offset();
        let e = self.small_int()?;
        let mut acc = ExpPoly::constant(1);
        for _ in 0..e {
            acc = acc.checked_mul(&base).ok_or_else(|| self.error_msg(off, "exponent exceeds degree two"))?;
        }
        Ok(acc)
    }

    fn atom_expr(&mut self) -> PResult<ExpPoly> {
        match self.peek().clone() {
            Tok::Int(_) => Ok(ExpPoly::constant(self.small_int()?)),
            Tok::Word(w) if w == "k" => {
                self.bump();
                Ok(ExpPoly::k())
            }
            Tok::Word(w) if w == "n" => {
                self.bump();
                Ok(ExpPoly::n())
            }
            Tok::Sym("(") => {
                self.bump();
                let e = self.expr()?;
                self.sym(")")?;
                Ok(e)
            }
            _ => Err(self.error(&["integer", "k", "n", "("])),
        }
    }

    // monomials

    fn mono_atom(&mut self) -> PResult<Monomial> {
        let off = self.offset();
        match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                if v.is_zero() {
                    return Err(self.error_msg(off, "monomial coefficient must be nonzero"));
                }
                Ok(Monomial::constant(BigRat::from_integer(v)))
            }
            Tok::Word(w) => {
                let sym = match w.as_str() {
                    "a" | "b" | "c" | "d" | "q" => w.chars().next().expect("one letter"),
                    _ => return Err(self.error(&["a", "b", "c", "d", "q", "integer"])),
                };
                self.bump();
                let e = if self.is_sym("^") {
                    self.bump();
                    self.signed_int()?
                } else {
                    1
                };
                Ok(match Param::from_symbol(sym) {
                    Some(p) => Monomial::one().times(p, e),
                    None => Monomial::q(e),
                })
            }
            _ => Err(self.error(&["a", "b", "c", "d", "q", "integer"])),
        }
    }

    fn mono(&mut self) -> PResult<Monomial> {
        let neg = self.is_sym("-");
        if neg {
            self.bump();
        }
        let mut m = self.mono_atom()?;
        loop {
            if self.is_sym("*") {
                self.bump();
                m = m.mul(&self.mono_atom()?);
            } else if self.is_sym("/") {
                self.bump();
                let d = self.mono_atom()?;
                let inv = Monomial { params: d.params.map(|e| -e), q_exp: -d.q_exp, coeff: d.coeff.recip() };
                m = m.mul(&inv);
            } else {
                break;
            }
        }
        if neg {
            m.coeff = -m.coeff;
        }
        Ok(m)
    }

    /// Exponent after `(mono)^`: `k`, `n`, an integer or `(expr)`.
    fn mono_exponent(&mut self) -> PResult<ExpPoly> {
        match self.peek().clone() {
            Tok::Word(w) if w == "k" || w == "n" => self.atom_expr(),
            Tok::Sym("(") => self.atom_expr(),
            Tok::Int(_) | Tok::Sym("-") => Ok(ExpPoly::constant(self.signed_int()?)),
            _ => Err(self.error(&["k", "n", "integer", "("])),
        }
    }

    // factors and terms

    fn factor(&mut self) -> PResult<Factor> {
        match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                Ok(Factor::Number(v))
            }
            Tok::Word(w) => match w.as_str() {
                "qint" => {
                    self.bump();
                    self.sym("(")?;
                    let arg = self.expr()?;
                    self.sym(")")?;
                    Ok(Factor::QInt { arg, power: self.power()? })
                }
                "poch" => {
                    self.bump();
                    self.sym("(")?;
                    let base = self.mono()?;
                    self.sym(";")?;
                    self.word("q")?;
                    self.sym("^")?;
                    let off = self.offset();
                    if self.small_int()? != 2 {
                        return Err(self.error_msg(off, "only the step q^2 is supported"));
                    }
                    self.sym(";")?;
                    let len = self.expr()?;
                    self.sym(")")?;
                    Ok(Factor::Poch { base, len, power: self.power()? })
                }
                "omega" | "theta" | "rq" | "sq" => {
                    self.bump();
                    let which = match w.as_str() {
                        "omega" => Named::Omega,
                        "theta" => Named::Theta,
                        "rq" => Named::Rq,
                        _ => Named::Sq,
                    };
                    Ok(Factor::Named { which, power: self.power()? })
                }
                "q" if self.peek_at(1) == &Tok::Sym("^") && self.peek_at(2) == &Tok::Sym("(") => {
                    self.bump();
                    self.bump();
                    self.bump();
                    let e = self.expr()?;
                    self.sym(")")?;
                    Ok(Factor::QExp(e))
                }
                "a" | "b" | "c" | "d" | "q" => {
                    Ok(Factor::MonoPow { base: self.mono_atom()?, exp: ExpPoly::constant(1) })
                }
                _ => Err(self.error(FACTOR_START)),
            },
            Tok::Sym("(") => {
                self.bump();
                let base = self.mono()?;
                self.sym(")")?;
                let exp = if self.is_sym("^") {
                    self.bump();
                    self.mono_exponent()?
                } else {
                    ExpPoly::constant(1)
                };
                if base == Monomial::constant(-BigRat::one()) && exp.is_k() {
                    Ok(Factor::SignK)
                } else {
                    Ok(Factor::MonoPow { base, exp })
                }
            }
            _ => Err(self.error(FACTOR_START)),
        }
    }

    fn term(&mut self) -> PResult<TermAst> {
        let mut out = vec![(Op::Mul, self.factor()?)];
        loop {
            let op = if self.is_sym("*") {
                Op::Mul
            } else if self.is_sym("/") {
                Op::Div
            } else {
                return Ok(TermAst(out));
            };
            self.bump();
            out.push((op, self.factor()?));
        }
    }

    fn bound(&mut self) -> PResult<Bound> {
        let off = self.offset();
        let bad = |p: &Self| p.error_msg(off, "bound must be M, (n+1)/2, n-1, (n-3)/2 or an integer");
        match self.peek().clone() {
            Tok::Word(w) if w == "M" => {
                self.bump();
                Ok(Bound::Selectable)
            }
            Tok::Int(_) => {
                let v = self.small_int()?;
                u32::try_from(v).map(Bound::Fixed).map_err(|_| bad(self))
            }
            Tok::Word(w) if w == "n" => {
                self.bump();
                self.sym("-")?;
                let v = self.small_int()?;
                if v == 1 {
                    Ok(Bound::NMinus1)
                } else {
                    Err(bad(self))
                }
            }
            Tok::Sym("(") => {
                self.bump();
                self.word("n")?;
                let plus = if self.is_sym("+") {
                    true
                } else if self.is_sym("-") {
                    false
                } else {
                    return Err(self.error(&["+", "-"]));
                };
                self.bump();
                let v = self.small_int()?;
                self.sym(")")?;
                self.sym("/")?;
                let d = self.small_int()?;
                match (plus, v, d) {
                    (true, 1, 2) => Ok(Bound::HalfUp),
                    (false, 3, 2) => Ok(Bound::HalfDown3),
                    _ => Err(bad(self)),
                }
            }
            _ => Err(self.error(&["M", "n", "(", "integer"])),
        }
    }

    fn sum(&mut self) -> PResult<SumAst> {
        self.word("sum")?;
        self.word("k")?;
        self.sym("=")?;
        let off = self.offset();
        if !self.int()?.is_zero() {
            return Err(self.error_msg(off, "sums start at k = 0"));
        }
        self.sym("..")?;
        let bound = self.bound()?;
        self.sym(":")?;
        let term = self.term()?;
        let prefactor = if self.is_word("prefactor") {
            self.bump();
            self.sym(":")?;
            Some(self.term()?)
        } else {
            None
        };
        Ok(SumAst { bound, term, prefactor })
    }

    fn mod_factor(&mut self) -> PResult<ModFactor> {
        match self.peek().clone() {
            Tok::Word(w) if w == "Phi" => {
                self.bump();
                self.sym("(")?;
                self.word("n")?;
                self.sym(")")?;
                Ok(ModFactor::Cyclotomic(self.mod_power()?))
            }
            Tok::Sym("[") => {
                self.bump();
                self.word("n")?;
                self.sym("]")?;
                Ok(ModFactor::QInt(self.mod_power()?))
            }
            Tok::Sym("(") => {
                self.bump();
                let f = match self.peek().clone() {
                    Tok::Int(v) if v.is_one() => {
                        self.bump();
                        self.sym("-")?;
                        self.word("a")?;
                        self.sym("*")?;
                        ModFactor::OneMinusAQn
                    }
                    Tok::Word(w) if w == "a" || w == "b" => {
                        self.bump();
                        self.sym("-")?;
                        if w == "a" {
                            ModFactor::AMinusQn
                        } else {
                            ModFactor::BMinusQn
                        }
                    }
                    _ => return Err(self.error(&["1", "a", "b"])),
                };
                self.word("q")?;
                self.sym("^")?;
                self.word("n")?;
                self.sym(")")?;
                Ok(f)
            }
            _ => Err(self.error(&["Phi", "[", "("])),
        }
    }

    fn mod_power(&mut self) -> PResult<u32> {
        if !self.is_sym("^") {
            return Ok(1);
        }
        self.bump();
        let off = self.offset();
        let v = self.small_int()?;
        u32::try_from(v)
            .ok()
            .filter(|&e| e >= 1)
            .ok_or_else(|| self.error_msg(off, "modulus exponents must be positive"))
    }

    fn task(&mut self) -> PResult<SpecAst> {
        self.word("verify")?;
        let mut params = Vec::new();
        if self.is_word("params") {
            self.bump();
            self.sym(":")?;
            loop {
                let p = match self.peek() {
                    Tok::Word(w) if w.len() == 1 => Param::from_symbol(w.chars().next().expect("one letter")),
                    _ => None,
                }
                .filter(|p| Param::MONOMIAL_PARAMS.contains(p))
                .ok_or_else(|| self.error(&["a", "b", "c", "d"]))?;
                self.bump();
                params.push(p);
                if !self.is_sym(",") {
                    break;
                }
                self.bump();
            }
        }
        self.word("lhs")?;
        self.sym(":")?;
        let lhs = self.sum()?;
        if !self.is_word("rhs") {
            return Err(self.error(&["*", "/", "prefactor", "rhs"]));
        }
        self.bump();
        self.sym(":")?;
        let rhs = self.sum()?;
        if !self.is_word("modulus") {
            return Err(self.error(&["*", "/", "prefactor", "modulus"]));
        }
        self.bump();
        self.sym(":")?;
        let mut modulus = vec![self.mod_factor()?];
        while self.is_sym("*") {
            self.bump();
            modulus.push(self.mod_factor()?);
        }
        if self.peek() != &Tok::Eof {
            return Err(self.error(&["*", "end of input"]));
        }
        Ok(SpecAst { params, lhs, rhs, modulus })
    }
}

/// Parses one task.
pub fn parse_task(text: &str) -> Result<SpecAst, ParseError> {
    let toks = tokenize(text)?;
    Parser { text, toks, pos: 0 }.task()
}

/// Parses a single factor, e.g. `qint(4*k-1)`.
pub fn parse_factor(text: &str) -> Result<Factor, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { text, toks, pos: 0 };
    let f = p.factor()?;
    if p.peek() != &Tok::Eof {
        return Err(p.error(&["end of input"]));
    }
    Ok(f)
}

/// Parses a product of factors.
pub fn parse_term(text: &str) -> Result<TermAst, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { text, toks, pos: 0 };
    let t = p.term()?;
    if p.peek() != &Tok::Eof {
        return Err(p.error(&["*", "/", "end of input"]));
    }
    Ok(t)
}
