//! Polynomial moduli and p-integral divisibility of rational functions.

mod checks;
mod modulus;
mod targets;

pub use checks::{
    central_term_check, lemma_a_symmetry_check, lemma_b_check, lhopital_limit_check, lhopital_values,
    rs_consistency_check, watson_identity_check, WatsonParams,
};
pub use modulus::{modulus_atoms, modulus_build, Atom};
pub use targets::{proof_step_check, verify_target, verify_task, CongruenceTask};

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::exact::factored::gcd_with_factor;
use crate::exact::zpoly::ZPoly;
use crate::exact::{poly_gcd, ExactError, Fraction, LaurentPoly, RatFn};
use crate::qseries::SeriesError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

impl From<ExactError> for CheckError {
    fn from(e: ExactError) -> Self {
        CheckError::Series(SeriesError::Exact(e))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// `delta / P` on success, either reduced or in factored form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cofactor {
    Reduced(RatFn),
    Factored(Fraction),
}

impl Cofactor {
    pub fn render(&self) -> String {
        match self {
            Cofactor::Reduced(r) => r.render("q"),
            Cofactor::Factored(f) => f.render(),
        }
    }

    pub fn to_ratfn(&self) -> RatFn {
        match self {
            Cofactor::Reduced(r) => r.clone(),
            Cofactor::Factored(f) => f.to_ratfn(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub cofactor: Option<Cofactor>,
    /// Common factor of the reduced denominator and the modulus; a nonzero
    /// constant whenever the verdict passes.
    pub evidence: Option<LaurentPoly>,
    pub diagnostics: String,
    pub parts: Vec<(String, Verdict)>,
}

impl Verdict {
    pub fn pass(cofactor: Cofactor, diagnostics: impl Into<String>) -> Self {
        Verdict {
            status: Status::Pass,
            cofactor: Some(cofactor),
            evidence: Some(LaurentPoly::one()),
            diagnostics: diagnostics.into(),
            parts: Vec::new(),
        }
    }

    pub fn fail(diagnostics: impl Into<String>) -> Self {
        Verdict {
            status: Status::Fail,
            cofactor: None,
            evidence: None,
            diagnostics: diagnostics.into(),
            parts: Vec::new(),
        }
    }

    pub fn skipped(diagnostics: impl Into<String>) -> Self {
        Verdict { status: Status::Skipped, ..Self::fail(diagnostics) }
    }

    /// Passes only if every part passes or is skipped, and at least one
    /// part ran.
    pub fn composite(parts: Vec<(String, Verdict)>) -> Self {
        let status = if parts.iter().any(|(_, v)| v.status == Status::Fail) {
            Status::Fail
        } else if parts.iter().all(|(_, v)| v.status == Status::Skipped) {
            Status::Skipped
        } else {
            Status::Pass
        };
        let failed: Vec<&str> =
            parts.iter().filter(|(_, v)| v.status == Status::Fail).map(|(l, _)| l.as_str()).collect();
        let diagnostics = if failed.is_empty() {
            format!("{} parts", parts.len())
        } else {
            format!("failing parts: {}", failed.join(", "))
        };
        Verdict { status, cofactor: None, evidence: None, diagnostics, parts }
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }

    /// Deterministic text covering status, cofactor, evidence and parts,
    /// suitable for hashing.
    pub fn witness_text(&self) -> String {
        let mut out = String::from(self.status.label());
        if let Some(c) = &self.cofactor {
            out.push_str("|cofactor=");
            out.push_str(&c.render());
        }
        if let Some(e) = &self.evidence {
            out.push_str("|gcd=");
            out.push_str(&e.render("q"));
        }
        for (label, v) in &self.parts {
            out.push_str(&format!("|[{label}:{}]", v.witness_text()));
        }
        out
    }
}

/// Checks `delta ≡ 0 (mod P)` in the p-integral sense: in lowest terms the
/// denominator of `delta` is coprime to `P` and `P` divides the numerator.
pub fn congruent(delta: &RatFn, p: &LaurentPoly) -> Result<Verdict, CheckError> {
    if p.is_zero() || !p.is_polynomial() || p.coeff(0).is_zero() {
        return Err(CheckError::InvalidModulus(format!(
            "modulus must be a polynomial with nonzero constant term, got {}",
            p.render("q")
        )));
    }
    if delta.is_zero() {
        return Ok(Verdict::pass(Cofactor::Reduced(RatFn::zero()), "difference is zero"));
    }
    let g = poly_gcd(delta.den(), p)?;
    if !g.is_constant() {
        let mut v = Verdict::fail(format!("denominator shares the factor {} with the modulus", g.render("q")));
        v.evidence = Some(g);
        return Ok(v);
    }
    let shift = delta.num().min_exp();
    let num = delta.num().shift(-shift);
    let (quot, rem) = num.divrem(p)?;
    if !rem.is_zero() {
        return Ok(Verdict {
            evidence: Some(g),
            ..Verdict::fail(format!("modulus leaves a remainder of degree {}", rem.degree()))
        });
    }
    let cof = RatFn::new(quot.shift(shift), delta.den().clone())?;
    debug_assert_eq!(&(&cof * &RatFn::from_poly(p.clone())), delta);
    Ok(Verdict::pass(Cofactor::Reduced(cof), "denominator coprime, numerator divisible"))
}

/// Coprimality of integer polynomials, with a modular shortcut.
fn coprime(a: &ZPoly, b: &ZPoly) -> bool {
    use crate::exact::modp;
    let lead_ok = |z: &ZPoly| modp::from_int(z.lead()) != 0;
    if (lead_ok(a) || lead_ok(b)) && modp::gcd_degree(a.to_modp(), b.to_modp()) == Some(0) {
        return true;
    }
    gcd_with_factor(a, b).degree() == 0
}

/// The same decision as [`congruent`] for a factored, unreduced `delta`
/// and a modulus given as pairwise coprime squarefree atoms with
/// exponents. Returns `None` when the atoms interact with the denominator
/// in a way this path does not handle, in which case the caller reduces
/// fully and uses [`congruent`].
pub fn congruent_factored(delta: &Fraction, atoms: &[Atom]) -> Option<Verdict> {
    if delta.is_zero() {
        return Some(Verdict::pass(Cofactor::Reduced(RatFn::zero()), "difference is zero"));
    }
    for (i, x) in atoms.iter().enumerate() {
        for y in &atoms[i + 1..] {
            if !coprime(&x.poly, &y.poly) {
                return None;
            }
        }
    }
    let mut den: BTreeMap<ZPoly, u32> = delta.den_factors().clone();
    let mut scalar = delta.scalar().clone();
    let mut num = delta.num().clone();
    let mut removed = ZPoly::one();
    let mut notes = Vec::new();
    for atom in atoms {
        let mut v = 0u32;
        let mut next = BTreeMap::new();
        for (d, m) in den {
            let mut d = d;
            let mut j = 0u32;
            while !coprime(&d, &atom.poly) {
                {
                    let q = d.exact_div(&atom.poly)?;
                    d = q;
                    j += 1;
                }
            }
            v += j * m;
            if d.degree() == 0 {
                let c = crate::exact::BigRat::from_integer(d.coeffs()[0].clone());
                scalar /= crate::exact::rat::rat_pow(&c, m as i64);
            } else {
                *next.entry(d).or_insert(0) += m;
            }
        }
        den = next;
        let need = v + atom.exp;
        for i in 0..need {
            match num.exact_div(&atom.poly) {
                Some(q) => num = q,
                None => {
                    let text = atom.label.clone();
                    let mut verdict = if i < v {
                        Verdict::fail(format!(
                            "denominator keeps the factor {text}: numerator has it {i} times, denominator {v}"
                        ))
                    } else {
                        Verdict::fail(format!(
                            "numerator divisible by {text} only {} times beyond the denominator, need {}",
                            i - v,
                            atom.exp
                        ))
                    };
                    verdict.evidence = Some(if i < v { atom.poly.to_laurent() } else { LaurentPoly::one() });
                    return Some(verdict);
                }
            }
        }
        removed = removed.mul(&atom.poly.pow(need));
        notes.push(format!("{}: den {v}, need {need}", atom.label));
    }
    // the witness re-multiplies exactly
    assert_eq!(num.mul(&removed), *delta.num(), "factored congruence witness mismatch");
    for atom in atoms {
        scalar /= &atom.unit;
    }
    let cof = Fraction::from_parts(scalar, delta.shift(), num, den);
    Some(Verdict::pass(Cofactor::Factored(cof), notes.join("; ")))
}

/// Factored path with a full-reduction fallback.
pub fn congruent_atoms(delta: &Fraction, atoms: &[Atom]) -> Result<Verdict, CheckError> {
    if let Some(v) = congruent_factored(delta, atoms) {
        return Ok(v);
    }
    let p = atoms.iter().fold(LaurentPoly::one(), |acc, a| acc * a.poly.to_laurent().pow(a.exp).scale(&a.unit));
    congruent(&delta.to_ratfn(), &p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::cyclotomic;
    use crate::exact::rat::rat;

    fn lp(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_ints(c)
    }

    #[test]
    fn zero_passes() {
        let v = congruent(&RatFn::zero(), &lp(&[1, 1, 1])).unwrap();
        assert!(v.is_pass());
        assert_eq!(v.cofactor, Some(Cofactor::Reduced(RatFn::zero())));
    }

    #[test]
    fn constructed_multiple_passes() {
        let phi3 = cyclotomic(3).unwrap();
        let r = RatFn::new(lp(&[2, 1]), lp(&[5, 1])).unwrap();
        let delta = &r * &RatFn::from_poly(phi3.clone());
        let v = congruent(&delta, &phi3).unwrap();
        assert!(v.is_pass());
        assert_eq!(v.cofactor, Some(Cofactor::Reduced(r)));
        assert!(v.evidence.unwrap().is_constant());
    }

    #[test]
    fn shared_denominator_fails() {
        let phi3 = cyclotomic(3).unwrap();
        let delta = RatFn::new(LaurentPoly::one(), phi3.clone()).unwrap();
        let v = congruent(&delta, &phi3).unwrap();
        assert_eq!(v.status, Status::Fail);
        assert_eq!(v.evidence, Some(phi3));
    }

    #[test]
    fn bad_modulus_is_an_error() {
        assert!(congruent(&RatFn::one(), &lp(&[0, 1])).is_err());
        assert!(congruent(&RatFn::one(), &LaurentPoly::zero()).is_err());
    }

    #[test]
    fn q_power_units_do_not_obstruct() {
        let phi3 = cyclotomic(3).unwrap();
        let delta = RatFn::from_poly(phi3.shift(-4).scale(&rat(3)));
        assert!(congruent(&delta, &phi3).unwrap().is_pass());
    }
}
