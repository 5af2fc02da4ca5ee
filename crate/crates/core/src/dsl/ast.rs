use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::qseries::catalog::ModFactor;
use crate::qseries::{Bound, ExpPoly, Monomial, Named, Param};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Op {
    Mul,
    Div,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Factor {
    /// A bare integer literal.
    Number(BigInt),
    /// `qint(arg)^power`
    QInt {
        arg: ExpPoly,
        power: i64,
    },
    /// `poch(base; q^2; len)^power`
    Poch {
        base: Monomial,
        len: ExpPoly,
        power: i64,
    },
    /// `base^exp`, written `(base)^exp` unless `base` is a single symbol
    /// power and `exp = 1`.
    MonoPow {
        base: Monomial,
        exp: ExpPoly,
    },
    /// `(-1)^k`
    SignK,
    /// `q^(exp)`
    QExp(ExpPoly),
    Named {
        which: Named,
        power: i64,
    },
}

/// Factors in order, each multiplied or divided in.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TermAst(pub Vec<(Op, Factor)>);

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SumAst {
    pub bound: Bound,
    pub term: TermAst,
    pub prefactor: Option<TermAst>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpecAst {
    /// Declared parameters in the order written.
    pub params: Vec<Param>,
    pub lhs: SumAst,
    pub rhs: SumAst,
    pub modulus: Vec<ModFactor>,
}

fn power_suffix(p: i64) -> String {
    if p == 1 {
        String::new()
    } else {
        format!("^{p}")
    }
}

fn single_atom(m: &Monomial) -> bool {
    let nonzero = m.params.iter().filter(|&&e| e != 0).count() + usize::from(m.q_exp != 0);
    m.coeff.is_one() && nonzero == 1
}

/// Exponent after `^`: bare when it is `k`, `n` or an integer.
pub fn render_exponent(e: &ExpPoly) -> String {
    if *e == ExpPoly::k() || *e == ExpPoly::n() {
        return e.to_string();
    }
    match e.as_constant() {
        Some(c) if c.is_integer() => c.to_string(),
        _ => format!("({e})"),
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Number(v) => write!(f, "{v}"),
            Factor::QInt { arg, power } => write!(f, "qint({arg}){}", power_suffix(*power)),
            Factor::Poch { base, len, power } => write!(f, "poch({base}; q^2; {len}){}", power_suffix(*power)),
            Factor::MonoPow { base, exp } => {
                if *exp == ExpPoly::constant(1) {
                    if single_atom(base) {
                        write!(f, "{base}")
                    } else {
                        write!(f, "({base})")
                    }
                } else {
                    write!(f, "({base})^{}", render_exponent(exp))
                }
            }
            Factor::SignK => f.write_str("(-1)^k"),
            Factor::QExp(e) => write!(f, "q^({e})"),
            Factor::Named { which, power } => write!(f, "{}{}", which.keyword(), power_suffix(*power)),
        }
    }
}

impl fmt::Display for TermAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (op, factor)) in self.0.iter().enumerate() {
            match (i, op) {
                (0, Op::Mul) => {}
                (0, Op::Div) => f.write_str("1 / ")?,
                (_, Op::Mul) => f.write_str(" * ")?,
                (_, Op::Div) => f.write_str(" / ")?,
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

pub fn render_bound(b: Bound) -> String {
    match b {
        Bound::Selectable => "M".into(),
        Bound::HalfUp => "(n+1)/2".into(),
        Bound::NMinus1 => "n-1".into(),
        Bound::HalfDown3 => "(n-3)/2".into(),
        Bound::Fixed(u) => u.to_string(),
    }
}

impl fmt::Display for SumAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sum k=0..{}: {}", render_bound(self.bound), self.term)?;
        if let Some(p) = &self.prefactor {
            write!(f, "\n  prefactor: {p}")?;
        }
        Ok(())
    }
}

/// Canonical text of a task; parsing it gives back the same tree.
pub fn render(ast: &SpecAst) -> String {
    let mut out = String::from("verify\n");
    if !ast.params.is_empty() {
        let names: Vec<String> = ast.params.iter().map(|p| p.symbol().to_string()).collect();
        out.push_str(&format!("params: {}\n", names.join(", ")));
    }
    out.push_str(&format!("lhs: {}\n", ast.lhs));
    out.push_str(&format!("rhs: {}\n", ast.rhs));
    let m: Vec<String> = ast.modulus.iter().map(|f| f.render()).collect();
    out.push_str(&format!("modulus: {}\n", m.join(" * ")));
    out
}

impl fmt::Display for SpecAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}
