use std::collections::BTreeSet;

use num_traits::Zero;

use crate::congruence::CongruenceTask;
use crate::exact::rat::{rat_pow, BigRat};
use crate::qseries::{ExpPoly, Param, SumSpec, TermSpec};

use super::ast::{Factor, Op, SpecAst, SumAst, TermAst};
use super::SemanticError;

fn lower_term(t: &TermAst) -> Result<TermSpec, SemanticError> {
    let mut out = TermSpec::one();
    for (op, f) in &t.0 {
        let sign = if *op == Op::Div { -1 } else { 1 };
        out = match f {
            Factor::Number(v) => {
                if v.is_zero() && sign < 0 {
                    return Err(SemanticError::new("division by zero"));
                }
                let c = BigRat::from_integer(v.clone());
                out.constant(if sign < 0 { c.recip() } else { c })
            }
            Factor::QInt { arg, power } => out.qint(arg.clone(), sign * power),
            Factor::Poch { base, len, power } => out.poch(base.clone(), len.clone(), sign * power),
            Factor::MonoPow { base, exp } => {
                let exp = exp.clone() * sign;
                match exp.as_constant() {
                    // a plain number to an integer power becomes part of the constant
                    Some(e) if !base.has_params() && e.is_integer() => {
                        let e = i64::try_from(e.to_integer()).map_err(|_| SemanticError::new("exponent too large"))?;
                        out.constant(rat_pow(&base.coeff, e)).q_pow(ExpPoly::constant(base.q_exp * e))
                    }
                    _ => out.mono_pow(base.clone(), exp),
                }
            }
            Factor::SignK => out.sign_k(),
            Factor::QExp(e) => out.q_pow(e.clone() * sign),
            Factor::Named { which, power } => out.named(*which, sign * power),
        };
    }
    Ok(out)
}

fn lower_sum(s: &SumAst) -> Result<SumSpec, SemanticError> {
    let term = lower_term(&s.term)?;
    let pre = match &s.prefactor {
        Some(p) => lower_term(p)?,
        None => TermSpec::one(),
    };
    if pre.depends_on_k() {
        return Err(SemanticError::new("a prefactor cannot depend on k"));
    }
    if term.constant.is_zero() || pre.constant.is_zero() {
        return Ok(SumSpec::zero());
    }
    Ok(SumSpec::new(s.bound, term, pre))
}

/// Turns a parsed task into the engine's representation, checking that
/// every parameter in use is declared.
pub fn lower(ast: &SpecAst) -> Result<CongruenceTask, SemanticError> {
    let mut seen = BTreeSet::new();
    for p in &ast.params {
        if !seen.insert(*p) {
            return Err(SemanticError::new(format!("parameter {} is declared twice", p.symbol())));
        }
    }
    let lhs = lower_sum(&ast.lhs)?;
    let rhs = lower_sum(&ast.rhs)?;
    for side in [&ast.lhs, &ast.rhs] {
        for t in std::iter::once(&side.term).chain(side.prefactor.iter()) {
            for (_, f) in &t.0 {
                if let Factor::Named { which, .. } = f {
                    for p in which.required_params() {
                        if !seen.contains(p) {
                            return Err(SemanticError::new(format!(
                                "{} needs parameter {}, which is not declared",
                                which.keyword(),
                                p.symbol()
                            )));
                        }
                    }
                }
            }
        }
    }
    let mut used: BTreeSet<Param> = lhs.mentions();
    used.extend(rhs.mentions());
    if let Some(p) = used.iter().find(|p| !seen.contains(p)) {
        return Err(SemanticError::new(format!("parameter {} is used but not declared", p.symbol())));
    }
    for f in &ast.modulus {
        if let Some(p) = f.required_param().filter(|p| !seen.contains(p)) {
            return Err(SemanticError::new(format!(
                "modulus factor {} needs parameter {}, which is not declared",
                f.render(),
                p.symbol()
            )));
        }
    }
    if ast.modulus.is_empty() {
        return Err(SemanticError::new("empty modulus"));
    }
    Ok(CongruenceTask { lhs, rhs, modulus: ast.modulus.clone(), params: ast.params.clone() })
}
