use crate::exact::{cyclotomic, poly_gcd, Fraction};
use crate::qseries::catalog::{special_parts, ModFactor, TargetId, TargetKind};
use crate::qseries::{omega, MMode, Named, Param, Params, SumSpec};

use super::{congruent, congruent_atoms, modulus_atoms, modulus_build, CheckError, Verdict};

fn uses_omega(spec: &SumSpec) -> bool {
    spec.prefactor.named.iter().chain(&spec.term.named).any(|(w, _)| *w == Named::Omega)
}

/// The denominator of Omega must be coprime to `Phi_n` for the
/// congruences that carry it to make sense.
fn omega_denominator(n: i64) -> Result<Result<(), String>, CheckError> {
    let w = omega(n)?;
    let g = poly_gcd(w.den(), &cyclotomic(n as u64)?)?;
    Ok(if g.is_constant() { Ok(()) } else { Err(format!("denominator of Omega shares {} with Phi_n", g.render("q"))) })
}

/// A congruence between two truncated sums, as built in the catalog or
/// lowered from a spec file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceTask {
    pub lhs: SumSpec,
    pub rhs: SumSpec,
    pub modulus: Vec<ModFactor>,
    pub params: Vec<Param>,
}

impl CongruenceTask {
    /// The catalog entry as a task, if it is a summation target.
    pub fn from_target(id: TargetId) -> Option<CongruenceTask> {
        let t = id.target();
        let (lhs, rhs) = t.sides()?;
        Some(CongruenceTask {
            lhs: lhs.clone(),
            rhs: rhs.clone(),
            modulus: t.modulus.clone(),
            params: t.params.clone(),
        })
    }
}

fn check_sums(task: &CongruenceTask, n: i64, mode: MMode, params: &Params) -> Result<(Verdict, Fraction), CheckError> {
    let atoms = modulus_atoms(&task.modulus, n, params)?;
    let l = task.lhs.evaluate(n, mode, params)?;
    let r = task.rhs.evaluate(n, mode, params)?;
    let delta: Fraction = l.sub(&r);
    let mut v = congruent_atoms(&delta, &atoms)?;
    if uses_omega(&task.lhs) || uses_omega(&task.rhs) {
        match omega_denominator(n)? {
            Ok(()) => v.diagnostics.push_str("; Omega denominator coprime to Phi_n"),
            Err(msg) => v = Verdict::fail(msg),
        }
    }
    Ok((v, delta))
}

/// `LHS - RHS ≡ 0` for a task; `n` must be odd and greater than one.
pub fn verify_task(task: &CongruenceTask, n: i64, mode: MMode, params: &Params) -> Result<Verdict, CheckError> {
    if n <= 1 || n % 2 == 0 {
        return Ok(Verdict::skipped(format!("n = {n} is not an odd integer greater than 1")));
    }
    Ok(check_sums(task, n, mode, params)?.0)
}

/// `LHS - RHS ≡ 0` modulo the target's modulus for one truncation mode
/// and one parameter sample. Inadmissible `n` gives a skipped verdict.
pub fn verify_target(id: TargetId, n: i64, mode: MMode, params: &Params) -> Result<Verdict, CheckError> {
    let target = id.target();
    if let Err(e) = target.admits(n) {
        return Ok(Verdict::skipped(e.to_string()));
    }
    match &target.kind {
        TargetKind::Sums { .. } => {
            let task = CongruenceTask::from_target(id).expect("summation target");
            let (mut v, delta) = check_sums(&task, n, mode, params)?;
            if id == TargetId::Thm12 && v.is_pass() {
                let weak = modulus_atoms(&[ModFactor::Cyclotomic(1)], n, params)?;
                if congruent_atoms(&delta, &weak)?.is_pass() {
                    v.diagnostics.push_str("; also holds modulo Phi_n");
                } else {
                    v = Verdict::fail("passes modulo [n]Phi_n^3 but not modulo Phi_n");
                }
            }
            Ok(v)
        }
        TargetKind::Special => {
            let p = modulus_build(&target.modulus, n, params)?;
            let mut parts = Vec::new();
            for part in special_parts(id, n, params)? {
                parts.push((part.label, congruent(&(&part.lhs - &part.rhs), &p)?));
            }
            if parts.len() == 1 {
                Ok(parts.pop().expect("one part").1)
            } else {
                Ok(Verdict::composite(parts))
            }
        }
    }
}

/// One of the intermediate congruences of the proofs, with `M = (n+1)/2`.
pub fn proof_step_check(step: TargetId, n: i64, params: &Params) -> Result<Verdict, CheckError> {
    if !TargetId::PROOF_STEPS.contains(&step) {
        return Err(CheckError::Precondition(format!("{step} is not a proof step")));
    }
    verify_target(step, n, MMode::Half, params)
}
