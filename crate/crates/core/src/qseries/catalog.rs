//! Every congruence the engine knows by name.

use std::fmt;
use std::sync::OnceLock;

use crate::exact::rat::{rat, rat_pow, BigRat};
use crate::exact::{Product, RatFn};

use super::expo::ExpPoly;
use super::monomial::{Monomial, Param, Params};
use super::prefactors::{r_brace, r_brace_reduced, require_odd};
use super::spec::{poch_product, Bound, MMode, Named, SumSpec, TermSpec};
use super::SeriesError;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum TargetId {
    Thm11,
    Thm12,
    Thm31,
    Eq12,
    Eq13,
    Eq14,
    Eq14Strong,
    GenCdq3,
    GenCdq3Ab,
    Cor13,
    Cor14,
    Cor15,
    Cor16,
    Cor17,
    WeiE,
    WeiF,
    WeiG,
    WeiH,
    Gs54,
    GuoL1,
    GuoL2,
}

impl TargetId {
    pub const ALL: [TargetId; 21] = [
        TargetId::Thm11,
        TargetId::Thm12,
        TargetId::Thm31,
        TargetId::Eq12,
        TargetId::Eq13,
        TargetId::Eq14,
        TargetId::Eq14Strong,
        TargetId::GenCdq3,
        TargetId::GenCdq3Ab,
        TargetId::Cor13,
        TargetId::Cor14,
        TargetId::Cor15,
        TargetId::Cor16,
        TargetId::Cor17,
        TargetId::WeiE,
        TargetId::WeiF,
        TargetId::WeiG,
        TargetId::WeiH,
        TargetId::Gs54,
        TargetId::GuoL1,
        TargetId::GuoL2,
    ];

    pub const PROOF_STEPS: [TargetId; 7] = [
        TargetId::WeiE,
        TargetId::WeiF,
        TargetId::WeiG,
        TargetId::WeiH,
        TargetId::Gs54,
        TargetId::GuoL1,
        TargetId::GuoL2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TargetId::Thm11 => "THM11",
            TargetId::Thm12 => "THM12",
            TargetId::Thm31 => "THM31",
            TargetId::Eq12 => "EQ12",
            TargetId::Eq13 => "EQ13",
            TargetId::Eq14 => "EQ14",
            TargetId::Eq14Strong => "EQ14-STRONG",
            TargetId::GenCdq3 => "GEN-CDQ3",
            TargetId::GenCdq3Ab => "GEN-CDQ3-AB",
            TargetId::Cor13 => "COR13",
            TargetId::Cor14 => "COR14",
            TargetId::Cor15 => "COR15",
            TargetId::Cor16 => "COR16",
            TargetId::Cor17 => "COR17",
            TargetId::WeiE => "WEI-E",
            TargetId::WeiF => "WEI-F",
            TargetId::WeiG => "WEI-G",
            TargetId::WeiH => "WEI-H",
            TargetId::Gs54 => "GS54",
            TargetId::GuoL1 => "GUO-L1",
            TargetId::GuoL2 => "GUO-L2",
        }
    }

    /// Lower-case name used on the command line.
    pub fn cli_name(self) -> &'static str {
        match self {
            TargetId::Thm11 => "thm-a",
            TargetId::Thm12 => "thm-b",
            TargetId::Thm31 => "thm-c",
            TargetId::Eq12 => "eq12",
            TargetId::Eq13 => "eq13",
            TargetId::Eq14 => "eq14",
            TargetId::Eq14Strong => "eq14-strong",
            TargetId::GenCdq3 => "gen-cdq3",
            TargetId::GenCdq3Ab => "gen-cdq3-ab",
            TargetId::Cor13 => "cor13",
            TargetId::Cor14 => "cor14",
            TargetId::Cor15 => "cor15",
            TargetId::Cor16 => "cor16",
            TargetId::Cor17 => "cor17",
            TargetId::WeiE => "wei-e",
            TargetId::WeiF => "wei-f",
            TargetId::WeiG => "wei-g",
            TargetId::WeiH => "wei-h",
            TargetId::Gs54 => "gs54",
            TargetId::GuoL1 => "guo-l1",
            TargetId::GuoL2 => "guo-l2",
        }
    }

    /// Accepts either the command-line name or the upper-case id.
    pub fn parse(s: &str) -> Option<TargetId> {
        let s = s.trim();
        Self::ALL.into_iter().find(|t| t.cli_name().eq_ignore_ascii_case(s) || t.name().eq_ignore_ascii_case(s))
    }

    pub fn target(self) -> &'static Target {
        let all = CATALOG.get_or_init(|| TargetId::ALL.into_iter().map(build).collect());
        &all[self as usize]
    }
}

impl fmt::Display for TargetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One factor of a modulus; exponents are at least one.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ModFactor {
    /// `Phi_n(q)^e`
    Cyclotomic(u32),
    /// `[n]^e`
    QInt(u32),
    /// `1 - a q^n`
    OneMinusAQn,
    /// `a - q^n`
    AMinusQn,
    /// `b - q^n`
    BMinusQn,
}

impl ModFactor {
    pub fn render(self) -> String {
        match self {
            ModFactor::Cyclotomic(1) => "Phi(n)".into(),
            ModFactor::Cyclotomic(e) => format!("Phi(n)^{e}"),
            ModFactor::QInt(1) => "[n]".into(),
            ModFactor::QInt(e) => format!("[n]^{e}"),
            ModFactor::OneMinusAQn => "(1-a*q^n)".into(),
            ModFactor::AMinusQn => "(a-q^n)".into(),
            ModFactor::BMinusQn => "(b-q^n)".into(),
        }
    }

    pub fn required_param(self) -> Option<Param> {
        match self {
            ModFactor::OneMinusAQn | ModFactor::AMinusQn => Some(Param::A),
            ModFactor::BMinusQn => Some(Param::B),
            _ => None,
        }
    }
}

pub fn render_modulus(factors: &[ModFactor]) -> String {
    factors.iter().map(|f| f.render()).collect::<Vec<_>>().join("*")
}

#[derive(Clone, Debug)]
pub enum TargetKind {
    Sums {
        lhs: SumSpec,
        rhs: SumSpec,
    },
    /// Both sides are closed expressions evaluated by dedicated code; a
    /// target may bundle several such congruences.
    Special,
}

#[derive(Clone, Debug)]
pub struct Target {
    pub id: TargetId,
    pub kind: TargetKind,
    pub modulus: Vec<ModFactor>,
    pub params: Vec<Param>,
    pub min_n: i64,
}

impl Target {
    pub fn admits(&self, n: i64) -> Result<(), SeriesError> {
        require_odd(n)?;
        if n < self.min_n {
            return Err(SeriesError::InadmissibleN { n, reason: format!("{} needs n >= {}", self.id, self.min_n) });
        }
        Ok(())
    }

    /// Whether the truncation mode changes anything for this target.
    pub fn uses_m(&self) -> bool {
        match &self.kind {
            TargetKind::Sums { lhs, rhs } => lhs.upper == Bound::Selectable || rhs.upper == Bound::Selectable,
            TargetKind::Special => false,
        }
    }

    pub fn sides(&self) -> Option<(&SumSpec, &SumSpec)> {
        match &self.kind {
            TargetKind::Sums { lhs, rhs } => Some((lhs, rhs)),
            TargetKind::Special => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Lhs,
    Rhs,
}

static CATALOG: OnceLock<Vec<Target>> = OnceLock::new();

fn mono(c: BigRat, pw: [i64; 4], qe: i64) -> Monomial {
    Monomial { params: pw, q_exp: qe, coeff: c }
}

fn qm(qe: i64) -> Monomial {
    Monomial::q(qe)
}

fn k() -> ExpPoly {
    ExpPoly::k()
}

fn half() -> ExpPoly {
    ExpPoly::linear_n(1, 1, 2)
}

fn two() -> ExpPoly {
    ExpPoly::constant(2)
}

fn base_term() -> TermSpec {
    TermSpec::one().qint(ExpPoly::linear_k(4, -1), 1)
}

fn one() -> BigRat {
    rat(1)
}

/// The summand of the four-parameter theorem.
pub fn beta_term() -> TermSpec {
    base_term()
        .pochs(
            [
                mono(one(), [1, 0, 0, 0], -1),
                mono(one(), [-1, 0, 0, 0], -1),
                mono(one(), [0, -1, 0, 0], -1),
                mono(one(), [0, 0, 1, 0], -1),
                mono(one(), [0, 0, 0, 1], -1),
                qm(-1),
            ],
            &k(),
            1,
        )
        .pochs(
            [
                mono(one(), [-1, 0, 0, 0], 2),
                mono(one(), [1, 0, 0, 0], 2),
                mono(one(), [0, 1, 0, 0], 2),
                mono(one(), [0, 0, -1, 0], 2),
                mono(one(), [0, 0, 0, -1], 2),
                qm(2),
            ],
            &k(),
            -1,
        )
        .mono_pow(mono(one(), [0, 1, -1, -1], 7), k())
}

/// `(bq)^h (q^-2/b;q^2)_h / (bq^2;q^2)_h`.
fn b_block() -> TermSpec {
    TermSpec::one().mono_pow(mono(one(), [0, 1, 0, 0], 1), half()).poch(mono(one(), [0, -1, 0, 0], -2), half(), 1).poch(
        mono(one(), [0, 1, 0, 0], 2),
        half(),
        -1,
    )
}

/// The summand shared by the right-hand sides with four parameters.
fn four_phi_three() -> TermSpec {
    TermSpec::one()
        .pochs(
            [
                mono(one(), [1, 0, 0, 0], -1),
                mono(one(), [-1, 0, 0, 0], -1),
                mono(one(), [0, -1, 0, 0], -1),
                mono(one(), [0, 0, -1, -1], 3),
            ],
            &k(),
            1,
        )
        .pochs(
            [qm(2), mono(one(), [0, -1, 0, 0], -2), mono(one(), [0, 0, -1, 0], 2), mono(one(), [0, 0, 0, -1], 2)],
            &k(),
            -1,
        )
        .q_pow(ExpPoly::linear_k(2, 0))
}

fn qn() -> TermSpec {
    TermSpec::one().qint(ExpPoly::n(), 1)
}

/// `(q^-1;q^2)_k^e / (q^2;q^2)_k^e`.
fn balanced(t: TermSpec, e: i64) -> TermSpec {
    t.poch(qm(-1), k(), e).poch(qm(2), k(), -e)
}

fn omega_rhs(pre: TermSpec, pos: &[i64], neg: &[i64]) -> TermSpec {
    let mut pre = pre.named(Named::Omega, 1);
    for &m in pos {
        pre = pre.qint(ExpPoly::constant(m), 1);
    }
    for &m in neg {
        pre = pre.qint(ExpPoly::constant(m), -1);
    }
    pre
}

/// `(q^3;q^2)_k^3 (q^top;q^2)_k / (q^2, q^6, ...; q^2)_k * q^2k` with the given
/// denominator bases.
fn cor_rhs_term(top: Option<i64>, den: &[i64]) -> TermSpec {
    let mut t = TermSpec::one().poch(qm(3), k(), 3).q_pow(ExpPoly::linear_k(2, 0));
    if let Some(e) = top {
        t = t.poch(qm(e), k(), 1);
    }
    for &e in den {
        t = t.poch(qm(e), k(), -1);
    }
    t
}

fn sums(lhs: SumSpec, rhs: SumSpec) -> TargetKind {
    TargetKind::Sums { lhs, rhs }
}

fn eq12_lhs() -> SumSpec {
    let t = balanced(base_term(), 5).sign_k().q_pow(ExpPoly::quad_k(1, 5));
    SumSpec::new(Bound::Selectable, t, TermSpec::one())
}

fn eq14_lhs() -> SumSpec {
    let t = balanced(base_term(), 2)
        .pochs([mono(one(), [1, 0, 0, 0], -1), mono(one(), [-1, 0, 0, 0], -1)], &k(), 1)
        .pochs([mono(one(), [-1, 0, 0, 0], 2), mono(one(), [1, 0, 0, 0], 2)], &k(), -1)
        .q_pow(ExpPoly::linear_k(4, 0));
    SumSpec::new(Bound::Selectable, t, TermSpec::one())
}

fn cdq3_lhs() -> SumSpec {
    let t = base_term()
        .pochs(
            [mono(one(), [1, 0, 0, 0], -1), mono(one(), [-1, 0, 0, 0], -1), mono(one(), [0, -1, 0, 0], -1), qm(-1)],
            &k(),
            1,
        )
        .pochs(
            [mono(one(), [-1, 0, 0, 0], 2), mono(one(), [1, 0, 0, 0], 2), mono(one(), [0, 1, 0, 0], 2), qm(2)],
            &k(),
            -1,
        )
        .mono_pow(mono(one(), [0, 1, 0, 0], 4), k());
    SumSpec::new(Bound::Selectable, t, TermSpec::one())
}

/// The two-parameter sum `(c, d)` of the [n]Phi_n^3 theorem.
fn cd_lhs() -> SumSpec {
    let t = balanced(base_term(), 4)
        .pochs([mono(one(), [0, 0, 1, 0], -1), mono(one(), [0, 0, 0, 1], -1)], &k(), 1)
        .pochs([mono(one(), [0, 0, -1, 0], 2), mono(one(), [0, 0, 0, -1], 2)], &k(), -1)
        .mono_pow(mono(one(), [0, 0, -1, -1], 7), k());
    SumSpec::new(Bound::Selectable, t, TermSpec::one())
}

/// Left side of the two steps that carry R and S.
fn acd_lhs() -> SumSpec {
    let t = balanced(base_term(), 2)
        .pochs(
            [
                mono(one(), [1, 0, 0, 0], -1),
                mono(one(), [-1, 0, 0, 0], -1),
                mono(one(), [0, 0, 1, 0], -1),
                mono(one(), [0, 0, 0, 1], -1),
            ],
            &k(),
            1,
        )
        .pochs(
            [
                mono(one(), [-1, 0, 0, 0], 2),
                mono(one(), [1, 0, 0, 0], 2),
                mono(one(), [0, 0, -1, 0], 2),
                mono(one(), [0, 0, 0, -1], 2),
            ],
            &k(),
            -1,
        )
        .mono_pow(mono(one(), [0, 0, -1, -1], 7), k());
    SumSpec::new(Bound::Selectable, t, TermSpec::one())
}

fn acd_rhs(named: Named, extra_q: bool) -> SumSpec {
    let mut pre = qn()
        .named(named, 1)
        .pochs(
            [mono(one(), [1, 0, 0, 0], -1), mono(one(), [-1, 0, 0, 0], -1), mono(one(), [0, 0, -1, -1], 3)],
            &two(),
            1,
        )
        .pochs([mono(one(), [0, 0, -1, 0], 2), mono(one(), [0, 0, 0, -1], 2)], &two(), -1)
        // 1 + q^2 = [4]/[2]
        .qint(ExpPoly::constant(4), -1)
        .qint(ExpPoly::constant(2), -1);
    if extra_q {
        pre = pre.q_pow(ExpPoly::linear_n(1, 9, 2));
    }
    let t = TermSpec::one()
        .pochs(
            [qm(3), mono(one(), [1, 0, 0, 0], 3), mono(one(), [-1, 0, 0, 0], 3), mono(one(), [0, 0, -1, -1], 7)],
            &k(),
            1,
        )
        .pochs([qm(2), qm(6), mono(one(), [0, 0, -1, 0], 6), mono(one(), [0, 0, 0, -1], 6)], &k(), -1)
        .q_pow(ExpPoly::linear_k(2, 0));
    SumSpec::new(Bound::HalfDown3, t, pre)
}

fn build(id: TargetId) -> Target {
    use ModFactor::*;
    use Param::*;
    let thm11_lhs = || SumSpec::new(Bound::Selectable, beta_term(), TermSpec::one());
    let abcd = vec![A, B, C, D];
    let (kind, modulus, params, min_n) = match id {
        TargetId::Thm11 => (
            sums(thm11_lhs(), SumSpec::new(Bound::HalfUp, four_phi_three(), qn().mul_spec(&b_block()))),
            vec![Cyclotomic(1), OneMinusAQn, AMinusQn],
            abcd,
            3,
        ),
        TargetId::Thm12 => {
            let pre = TermSpec::one()
                .poch(qm(1), ExpPoly::constant(1), 2)
                .poch(mono(one(), [0, 0, -1, -1], 3), two(), 1)
                .qint(ExpPoly::constant(2), -2)
                .pochs([mono(one(), [0, 0, -1, 0], 2), mono(one(), [0, 0, 0, -1], 2)], &two(), -1)
                .named(Named::Omega, 1);
            let t = TermSpec::one()
                .poch(qm(3), k(), 3)
                .poch(mono(one(), [0, 0, -1, -1], 7), k(), 1)
                .pochs([qm(2), qm(6), mono(one(), [0, 0, -1, 0], 6), mono(one(), [0, 0, 0, -1], 6)], &k(), -1)
                .q_pow(ExpPoly::linear_k(2, 0));
            (sums(cd_lhs(), SumSpec::new(Bound::HalfDown3, t, pre)), vec![QInt(1), Cyclotomic(3)], vec![C, D], 3)
        }
        TargetId::Thm31 => (
            sums(thm11_lhs(), SumSpec::new(Bound::HalfUp, four_phi_three(), qn().named(Named::Theta, 1))),
            vec![Cyclotomic(1), OneMinusAQn, AMinusQn, BMinusQn],
            abcd,
            3,
        ),
        TargetId::Eq12 => {
            let pre = qn().mono_pow(
                mono(rat(-1), [0; 4], 1),
                ExpPoly::linear_n(1, 1, 1).checked_mul(&ExpPoly::linear_n(1, -3, 4)).expect("quadratic"),
            );
            let t = TermSpec::one()
                .poch(qm(-1), k(), 2)
                .poch(qm(3), k(), 1)
                .poch(qm(2), k(), -3)
                .q_pow(ExpPoly::linear_k(3, 0));
            (sums(eq12_lhs(), SumSpec::new(Bound::HalfUp, t, pre)), vec![QInt(1), Cyclotomic(2)], vec![], 3)
        }
        TargetId::Eq13 => {
            let t = balanced(base_term(), 4).q_pow(ExpPoly::linear_k(4, 0));
            (
                sums(SumSpec::new(Bound::Selectable, t, TermSpec::one()), SumSpec::zero()),
                vec![QInt(1), Cyclotomic(2)],
                vec![],
                3,
            )
        }
        TargetId::Eq14 => {
            (sums(eq14_lhs(), SumSpec::zero()), vec![QInt(1), Cyclotomic(1), OneMinusAQn, AMinusQn], vec![A], 3)
        }
        TargetId::Eq14Strong => (sums(eq14_lhs(), SumSpec::zero()), vec![QInt(2), OneMinusAQn, AMinusQn], vec![A], 3),
        TargetId::GenCdq3 => (
            sums(cdq3_lhs(), SumSpec::closed_form(qn().mul_spec(&b_block()))),
            vec![QInt(1), OneMinusAQn, AMinusQn],
            vec![A, B],
            3,
        ),
        TargetId::GenCdq3Ab => (
            sums(cdq3_lhs(), SumSpec::closed_form(qn().named(Named::Theta, 1))),
            vec![QInt(1), OneMinusAQn, AMinusQn, BMinusQn],
            vec![A, B],
            3,
        ),
        TargetId::Cor13 => {
            let pre = omega_rhs(TermSpec::one(), &[], &[2, 2, 2, 4]);
            let t = TermSpec::one()
                .poch(qm(3), k(), 3)
                .poch(qm(2), k(), -1)
                .poch(qm(6), k(), -2)
                .q_pow(ExpPoly::linear_k(2, 0));
            (sums(eq12_lhs(), SumSpec::new(Bound::HalfDown3, t, pre)), vec![QInt(1), Cyclotomic(3)], vec![], 3)
        }
        TargetId::Cor14 => {
            let l = balanced(base_term(), 4)
                .sign_k()
                .poch(qm(-3), k(), 1)
                .poch(qm(4), k(), -1)
                .q_pow(ExpPoly::quad_k(1, 7));
            let pre = omega_rhs(TermSpec::one(), &[], &[2, 2, 4, 6]);
            (
                sums(
                    SumSpec::new(Bound::Selectable, l, TermSpec::one()),
                    SumSpec::new(Bound::HalfDown3, cor_rhs_term(None, &[2, 6, 8]), pre),
                ),
                vec![QInt(1), Cyclotomic(3)],
                vec![],
                5,
            )
        }
        TargetId::Cor15 => {
            let l = balanced(base_term(), 6).q_pow(ExpPoly::linear_k(7, 0));
            let pre = omega_rhs(TermSpec::one(), &[3, 5], &[2, 2, 2, 2, 4, 4]);
            (
                sums(
                    SumSpec::new(Bound::Selectable, l, TermSpec::one()),
                    SumSpec::new(Bound::HalfDown3, cor_rhs_term(Some(7), &[2, 6, 6, 6]), pre),
                ),
                vec![QInt(1), Cyclotomic(3)],
                vec![],
                3,
            )
        }
        TargetId::Cor16 => {
            let l = balanced(base_term(), 5).poch(qm(-3), k(), 1).poch(qm(4), k(), -1).q_pow(ExpPoly::linear_k(9, 0));
            let pre = omega_rhs(TermSpec::one(), &[5, 7], &[2, 2, 2, 4, 4, 6]);
            (
                sums(
                    SumSpec::new(Bound::Selectable, l, TermSpec::one()),
                    SumSpec::new(Bound::HalfDown3, cor_rhs_term(Some(9), &[2, 6, 6, 8]), pre),
                ),
                vec![QInt(1), Cyclotomic(3)],
                vec![],
                5,
            )
        }
        TargetId::Cor17 => {
            let l = balanced(base_term(), 4).poch(qm(-3), k(), 2).poch(qm(4), k(), -2).q_pow(ExpPoly::linear_k(11, 0));
            let pre = omega_rhs(TermSpec::one(), &[7, 9], &[2, 2, 4, 4, 6, 6]);
            (
                sums(
                    SumSpec::new(Bound::Selectable, l, TermSpec::one()),
                    SumSpec::new(Bound::HalfDown3, cor_rhs_term(Some(11), &[2, 6, 8, 8]), pre),
                ),
                vec![QInt(1), Cyclotomic(3)],
                vec![],
                5,
            )
        }
        TargetId::WeiE => {
            let pre = qn()
                .poch(mono(one(), [0, 1, 0, 0], 0), two(), 1)
                .poch(qm(-1), half(), 2)
                .poch(qm(-1), two(), -1)
                .pochs([mono(one(), [-1, 0, 0, 0], 2), mono(one(), [1, 0, 0, 0], 2)], &half(), -1);
            (sums(thm11_lhs(), SumSpec::new(Bound::HalfUp, four_phi_three(), pre)), vec![BMinusQn], abcd, 3)
        }
        TargetId::WeiF => {
            (sums(acd_lhs(), acd_rhs(Named::Rq, false)), vec![Cyclotomic(2), OneMinusAQn, AMinusQn], vec![A, C, D], 3)
        }
        TargetId::WeiH => {
            (sums(acd_lhs(), acd_rhs(Named::Sq, true)), vec![Cyclotomic(2), OneMinusAQn, AMinusQn], vec![A, C, D], 3)
        }
        TargetId::WeiG => (TargetKind::Special, vec![Cyclotomic(1)], vec![A], 3),
        TargetId::Gs54 => (TargetKind::Special, vec![Cyclotomic(1)], vec![Param::X], 3),
        TargetId::GuoL1 | TargetId::GuoL2 => (TargetKind::Special, vec![Cyclotomic(1)], vec![A], 3),
    };
    Target { id, kind, modulus, params, min_n }
}

fn side_spec(id: TargetId, side: Side) -> Result<&'static SumSpec, SeriesError> {
    match id.target().sides() {
        Some((l, r)) => Ok(if side == Side::Lhs { l } else { r }),
        None => Err(SeriesError::Degenerate(format!("{id} has no summation form"))),
    }
}

/// The `k`-th summand of one side, prefactor excluded.
pub fn catalog_term(id: TargetId, side: Side, k: i64, n: i64, params: &Params) -> Result<RatFn, SeriesError> {
    id.target().admits(n)?;
    Ok(side_spec(id, side)?.term_at(k, n, params)?.to_ratfn())
}

/// One side summed and multiplied by its prefactor, reduced.
pub fn catalog_sum(id: TargetId, side: Side, n: i64, mode: MMode, params: &Params) -> Result<RatFn, SeriesError> {
    let target = id.target();
    target.admits(n)?;
    match &target.kind {
        TargetKind::Sums { lhs, rhs } => {
            let spec = if side == Side::Lhs { lhs } else { rhs };
            Ok(spec.evaluate(n, mode, params)?.to_ratfn())
        }
        TargetKind::Special => {
            let mut parts = special_parts(id, n, params)?;
            if parts.len() != 1 {
                return Err(SeriesError::Degenerate(format!("{id} bundles {} congruences", parts.len())));
            }
            let p = parts.pop().expect("one part");
            Ok(if side == Side::Lhs { p.lhs } else { p.rhs })
        }
    }
}

/// One congruence of a special target, both sides evaluated.
#[derive(Clone, Debug)]
pub struct SpecialPart {
    pub label: String,
    pub lhs: RatFn,
    pub rhs: RatFn,
}

fn poch2(c: &BigRat, e: i64, len: i64) -> Product {
    poch_product(c, e, 2, len as u64)
}

/// `(-1)^{(n-1)/2} (1 - a^n) / ((1 - a) a^{(n-1)/2})`.
fn guo_constant(n: i64, a: &BigRat) -> Result<BigRat, SeriesError> {
    let m = (n - 1) / 2;
    let den = (one() - a) * rat_pow(a, m);
    if den == rat(0) {
        return Err(SeriesError::Degenerate("needs a not in {0, 1}".into()));
    }
    let sign = if m % 2 == 0 { one() } else { rat(-1) };
    Ok(sign * (one() - rat_pow(a, n)) / den)
}

pub fn special_parts(id: TargetId, n: i64, params: &Params) -> Result<Vec<SpecialPart>, SeriesError> {
    id.target().admits(n)?;
    let h = (n + 1) / 2;
    let m = (n - 1) / 2;
    let part = |label: String, lhs: RatFn, rhs: RatFn| SpecialPart { label, lhs, rhs };
    match id {
        TargetId::WeiG => {
            let a = params.get(Param::A)?;
            Ok(vec![part(String::new(), r_brace(n, a)?, r_brace_reduced(n, a)?)])
        }
        TargetId::GuoL1 | TargetId::GuoL2 => {
            let a = params.get(Param::A)?;
            if a == &rat(0) {
                return Err(SeriesError::Degenerate("parameter a is zero".into()));
            }
            let c = guo_constant(n, a)?;
            let (e, qe) = if id == TargetId::GuoL1 { (2, -(n - 1) * (n - 1) / 4) } else { (1, (1 - n * n) / 4) };
            let lhs = poch2(a, e, m).mul(&poch2(&a.recip(), e, m));
            Ok(vec![part(String::new(), lhs.to_ratfn(), RatFn::monomial(c, qe))])
        }
        TargetId::Gs54 => {
            let x = params.get(Param::X)?;
            if x == &rat(0) {
                return Err(SeriesError::Degenerate("parameter x is zero".into()));
            }
            let ratio =
                |len: i64| -> Result<Product, SeriesError> { Ok(poch2(x, -1, len).div(&poch2(&x.recip(), 2, len))?) };
            (0..=h)
                .map(|k| {
                    let lhs = ratio(h - k)?;
                    let rhs = Product::monomial(rat_pow(&-x.clone(), h - 2 * k), (n - 1) * (n - 1) / 4 + 3 * k - 1)
                        .mul(&ratio(k)?);
                    Ok(part(format!("k={k}"), lhs.to_ratfn(), rhs.to_ratfn()))
                })
                .collect()
        }
        _ => Err(SeriesError::Degenerate(format!("{id} is not a special target"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::LaurentPoly;

    fn sample() -> Params {
        Params::new().with(Param::A, rat(2)).with(Param::B, rat(3)).with(Param::C, rat(5)).with(Param::D, rat(7))
    }

    #[test]
    fn names_round_trip() {
        for id in TargetId::ALL {
            assert_eq!(TargetId::parse(id.cli_name()), Some(id));
            assert_eq!(TargetId::parse(id.name()), Some(id));
            assert_eq!(id.target().id, id);
        }
        assert_eq!(TargetId::parse("bogus"), None);
    }

    #[test]
    fn declared_params_cover_mentions() {
        for id in TargetId::ALL {
            let t = id.target();
            if let Some((l, r)) = t.sides() {
                for p in l.mentions().into_iter().chain(r.mentions()) {
                    assert!(t.params.contains(&p), "{id} uses {p:?}");
                }
            }
            for f in &t.modulus {
                if let Some(p) = f.required_param() {
                    assert!(t.params.contains(&p), "{id} modulus uses {p:?}");
                }
            }
        }
    }

    #[test]
    fn first_summand() {
        let t = catalog_term(TargetId::Thm11, Side::Lhs, 0, 3, &sample()).unwrap();
        assert_eq!(t, RatFn::monomial(rat(-1), -1));
    }

    #[test]
    fn second_summand_of_eq13() {
        let t = catalog_term(TargetId::Eq13, Side::Lhs, 1, 5, &Params::new()).unwrap();
        let one_plus_q = LaurentPoly::from_ints(&[1, 1]);
        let expect = RatFn::new(LaurentPoly::from_ints(&[1, 1, 1]), one_plus_q.pow(4)).unwrap();
        assert_eq!(t, expect);
    }

    #[test]
    fn inadmissible() {
        assert!(catalog_term(TargetId::Cor14, Side::Lhs, 0, 3, &Params::new()).is_err());
        assert!(catalog_term(TargetId::Eq13, Side::Lhs, 0, 4, &Params::new()).is_err());
        assert!(catalog_term(TargetId::Eq13, Side::Lhs, 5, 5, &Params::new()).is_err());
    }
}
