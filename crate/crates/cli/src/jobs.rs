//! Expansion of a run into independent checks and their parallel execution.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use qcl_core::congruence::{
    central_term_check, lemma_a_symmetry_check, lhopital_limit_check, proof_step_check, rs_consistency_check,
    verify_target, verify_task, CheckError, CongruenceTask, Verdict,
};
use qcl_core::exact::rat::BigRat;
use qcl_core::qseries::catalog::{render_modulus, ModFactor};
use qcl_core::qseries::{MMode, Param, Params, TargetId};
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::report::Entry;
use crate::sample::samples;

#[derive(Clone, Debug)]
pub enum Check {
    Target(TargetId),
    Task { label: String, task: Arc<CongruenceTask> },
    ProofStep(TargetId),
    LemmaA,
    CentralTerm,
    RsConsistency,
    Lhopital(BigRat),
}

impl Check {
    pub fn label(&self) -> String {
        match self {
            Check::Target(id) | Check::ProofStep(id) => id.name().to_string(),
            Check::Task { label, .. } => label.clone(),
            Check::LemmaA => "LEMMA-A".into(),
            Check::CentralTerm => "CENTRAL-TERM".into(),
            Check::RsConsistency => "RS-CONSISTENCY".into(),
            Check::Lhopital(_) => "LHOPITAL".into(),
        }
    }

    fn params(&self) -> Vec<Param> {
        match self {
            Check::Target(id) | Check::ProofStep(id) => id.target().params.clone(),
            Check::Task { task, .. } => task.params.clone(),
            Check::LemmaA | Check::CentralTerm => TargetId::Thm11.target().params.clone(),
            Check::RsConsistency => vec![Param::A],
            Check::Lhopital(_) => Vec::new(),
        }
    }

    fn modulus(&self) -> Vec<ModFactor> {
        match self {
            Check::Target(id) | Check::ProofStep(id) => id.target().modulus.clone(),
            Check::Task { task, .. } => task.modulus.clone(),
            Check::LemmaA => vec![ModFactor::Cyclotomic(1)],
            Check::CentralTerm => vec![ModFactor::QInt(1)],
            Check::RsConsistency => vec![ModFactor::Cyclotomic(1), ModFactor::OneMinusAQn, ModFactor::AMinusQn],
            Check::Lhopital(_) => Vec::new(),
        }
    }

    /// Whether the two truncation modes give different checks.
    fn uses_m(&self) -> bool {
        match self {
            Check::Target(id) => id.target().uses_m(),
            Check::Task { task, .. } => {
                task.lhs.upper == qcl_core::qseries::Bound::Selectable
                    || task.rhs.upper == qcl_core::qseries::Bound::Selectable
            }
            _ => false,
        }
    }

    fn run(&self, n: i64, mode: MMode, params: &Params) -> Result<Verdict, CheckError> {
        match self {
            Check::Target(id) => verify_target(*id, n, mode, params),
            Check::Task { task, .. } => verify_task(task, n, mode, params),
            Check::ProofStep(id) => proof_step_check(*id, n, params),
            Check::LemmaA => lemma_a_symmetry_check(n, params),
            Check::CentralTerm => central_term_check(n, params),
            Check::RsConsistency => rs_consistency_check(n, params.get(Param::A)?),
            Check::Lhopital(q) => lhopital_limit_check(n, q),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Job {
    pub check: Arc<Check>,
    /// Position of the check in the run; the primary sort key.
    pub order: usize,
    pub n: i64,
    pub mode: Option<MMode>,
    pub sample: usize,
    pub params: Params,
}

/// Every (check, n, mode, sample) combination, in canonical order.
pub fn expand(checks: Vec<Check>, ns: &[i64], modes: &[MMode], count: usize, seed: u64) -> Vec<Job> {
    let mut jobs = Vec::new();
    for (order, check) in checks.into_iter().enumerate() {
        let check = Arc::new(check);
        let drawn = samples(&check.params(), &check.label(), seed, count);
        let run_modes: Vec<Option<MMode>> =
            if check.uses_m() { modes.iter().map(|m| Some(*m)).collect() } else { vec![None] };
        for &n in ns {
            for &mode in &run_modes {
                for (sample, params) in drawn.iter().enumerate() {
                    jobs.push(Job { check: check.clone(), order, n, mode, sample, params: params.clone() });
                }
            }
        }
    }
    jobs.sort_by_key(|j| (j.order, j.n, j.mode.map(|m| m as u8), j.sample));
    jobs
}

fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

pub fn run_job(job: &Job, timings: bool) -> Entry {
    let start = Instant::now();
    let outcome = job.check.run(job.n, job.mode.unwrap_or(MMode::Half), &job.params);
    let elapsed = if timings { start.elapsed().as_millis() as u64 } else { 0 };
    let (status, witness, diagnostics) = match outcome {
        Ok(v) => (v.status.label().to_string(), v.witness_text(), v.diagnostics),
        Err(e) => ("FAIL".to_string(), format!("ERROR|{e}"), format!("error: {e}")),
    };
    let mut sample: BTreeMap<String, String> =
        job.params.iter().map(|(p, v)| (p.symbol().to_string(), v.to_string())).collect();
    if let Check::Lhopital(q) = job.check.as_ref() {
        sample.insert("q".into(), q.to_string());
    }
    let modulus = render_modulus(&job.check.modulus()).replace('n', &job.n.to_string());
    Entry {
        target: job.check.label(),
        n: job.n,
        m_mode: job.mode.map_or("fixed", |m| m.label()).to_string(),
        sample,
        modulus,
        status,
        elapsed_ms: elapsed,
        witness_digest: digest(&witness),
        diagnostics,
    }
}

/// Runs the jobs on `threads` workers; results keep the order of `jobs`.
pub fn run_all(jobs: &[Job], threads: usize, timings: bool) -> Vec<Entry> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build().expect("thread pool");
    pool.install(|| jobs.par_iter().map(|j| run_job(j, timings)).collect())
}
