//! Classical (q = 1) supercongruences modulo p^(r+3), checked with exact
//! rationals and p-adic valuations.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::congruence::{verify_target, Status};
use crate::exact::rat::{int_valuation, rat, ratio, BigRat};
use crate::qseries::{MMode, Params, TargetId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PadicError {
    #[error("valuation of zero is infinite")]
    Zero,
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("r must be at least 1")]
    BadExponent,
    #[error("p^r is too large")]
    TooLarge,
}

/// Rising factorial `(x)_k = x (x+1) ... (x+k-1)`.
pub fn rising(x: &BigRat, k: u32) -> BigRat {
    let mut acc = BigRat::one();
    let mut t = x.clone();
    for _ in 0..k {
        acc *= &t;
        t += BigRat::one();
    }
    acc
}

pub fn factorial(k: u32) -> BigRat {
    rising(&BigRat::one(), k)
}

/// `v_p(x)` for nonzero `x`.
pub fn vp(x: &BigRat, p: u64) -> Result<i64, PadicError> {
    if x.is_zero() {
        return Err(PadicError::Zero);
    }
    let p = BigInt::from(p);
    Ok(int_valuation(x.numer(), &p) as i64 - int_valuation(x.denom(), &p) as i64)
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum PadicId {
    Pad13,
    Pad14,
    Pad15,
    Pad16,
    Pad17,
}

/// One side of a display: `sum_k sign^k * lin(k) * prod (base)_k^e / prod (k+shift)!^e`.
struct SideRecipe {
    alternating: bool,
    linear: bool,
    risings: &'static [((i64, i64), u32)],
    factorials: &'static [(u32, u32)],
}

const HALF_NEG: (i64, i64) = (-1, 2);
const THREE_HALF_NEG: (i64, i64) = (-3, 2);
const THREE_HALF: (i64, i64) = (3, 2);

impl PadicId {
    pub const ALL: [PadicId; 5] = [PadicId::Pad13, PadicId::Pad14, PadicId::Pad15, PadicId::Pad16, PadicId::Pad17];

    pub fn name(self) -> &'static str {
        match self {
            PadicId::Pad13 => "PAD13",
            PadicId::Pad14 => "PAD14",
            PadicId::Pad15 => "PAD15",
            PadicId::Pad16 => "PAD16",
            PadicId::Pad17 => "PAD17",
        }
    }

    pub fn cli_name(self) -> String {
        self.name().to_ascii_lowercase()
    }

    pub fn parse(s: &str) -> Option<PadicId> {
        Self::ALL.into_iter().find(|id| id.name().eq_ignore_ascii_case(s))
    }

    /// Whether the display states `p > 3`.
    pub fn needs_p_gt_3(self) -> bool {
        self != PadicId::Pad15
    }

    /// The q-analogue whose `q -> 1` limit this display is.
    pub fn q_analogue(self) -> TargetId {
        match self {
            PadicId::Pad13 => TargetId::Cor13,
            PadicId::Pad14 => TargetId::Cor14,
            PadicId::Pad15 => TargetId::Cor15,
            PadicId::Pad16 => TargetId::Cor16,
            PadicId::Pad17 => TargetId::Cor17,
        }
    }

    pub fn constant(self) -> BigRat {
        match self {
            PadicId::Pad13 | PadicId::Pad14 => ratio(1, 16),
            PadicId::Pad15 => ratio(15, 64),
            PadicId::Pad16 => ratio(35, 64),
            PadicId::Pad17 => ratio(63, 64),
        }
    }

    fn lhs(self) -> SideRecipe {
        let (alternating, risings, factorials): (bool, &'static [_], &'static [_]) = match self {
            PadicId::Pad13 => (true, &[(HALF_NEG, 5)], &[(0, 5)]),
            PadicId::Pad14 => (true, &[(HALF_NEG, 4), (THREE_HALF_NEG, 1)], &[(0, 4), (1, 1)]),
            PadicId::Pad15 => (false, &[(HALF_NEG, 6)], &[(0, 6)]),
            PadicId::Pad16 => (false, &[(HALF_NEG, 5), (THREE_HALF_NEG, 1)], &[(0, 5), (1, 1)]),
            PadicId::Pad17 => (false, &[(HALF_NEG, 4), (THREE_HALF_NEG, 2)], &[(0, 4), (1, 2)]),
        };
        SideRecipe { alternating, linear: true, risings, factorials }
    }

    fn rhs(self) -> SideRecipe {
        let (risings, factorials): (&'static [_], &'static [_]) = match self {
            PadicId::Pad13 => (&[(THREE_HALF, 3)], &[(0, 1), (2, 2)]),
            PadicId::Pad14 => (&[(THREE_HALF, 3)], &[(0, 1), (2, 1), (3, 1)]),
            PadicId::Pad15 => (&[(THREE_HALF, 3), ((7, 2), 1)], &[(0, 1), (2, 3)]),
            PadicId::Pad16 => (&[(THREE_HALF, 3), ((9, 2), 1)], &[(0, 1), (2, 2), (3, 1)]),
            PadicId::Pad17 => (&[(THREE_HALF, 3), ((11, 2), 1)], &[(0, 1), (2, 1), (3, 2)]),
        };
        SideRecipe { alternating: false, linear: false, risings, factorials }
    }
}

impl fmt::Display for PadicId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl SideRecipe {
    fn term(&self, k: u32) -> BigRat {
        let mut t = if self.alternating && k % 2 == 1 { -BigRat::one() } else { BigRat::one() };
        if self.linear {
            t *= rat(4 * k as i64 - 1);
        }
        for &((n, d), e) in self.risings {
            t *= rising(&ratio(n, d), k).pow(e as i32);
        }
        for &(s, e) in self.factorials {
            t /= factorial(k + s).pow(e as i32);
        }
        t
    }

    fn sum(&self, upper: Option<u32>) -> BigRat {
        upper.map_or_else(BigRat::zero, |m| (0..=m).map(|k| self.term(k)).sum())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicVerdict {
    pub status: Status,
    /// `v_p(LHS - RHS)`, `None` when the two sides are equal.
    pub valuation: Option<i64>,
    pub required: i64,
    pub lhs: Option<BigRat>,
    pub rhs: Option<BigRat>,
    pub rhs_valuation: Option<i64>,
    pub notes: Vec<String>,
}

/// Both sides of the display for `p^r`, the left summed to `(p^r+1)/2`
/// and the right to `(p^r-3)/2`.
pub fn classical_sides(id: PadicId, p: u64, r: u32) -> Result<(BigRat, BigRat), PadicError> {
    let pr = p.checked_pow(r).filter(|&x| x < 1 << 20).ok_or(PadicError::TooLarge)?;
    let lhs = id.lhs().sum(Some(pr.div_ceil(2) as u32));
    let rhs_sum = id.rhs().sum(pr.checked_sub(3).map(|x| (x / 2) as u32));
    let pr = BigRat::from_integer(BigInt::from(pr));
    let p2 = &pr * &pr;
    let pre = &pr * (&p2 - &p2 * &p2 - BigRat::one()) / (&p2 - BigRat::one()) * id.constant();
    Ok((lhs, pre * rhs_sum))
}

/// PASS iff `v_p(LHS - RHS) >= r + 3`.
pub fn classical_check(id: PadicId, p: u64, r: u32) -> Result<PadicVerdict, PadicError> {
    if p.is_multiple_of(2) || !is_prime(p) {
        return Err(PadicError::NotOddPrime(p));
    }
    if r == 0 {
        return Err(PadicError::BadExponent);
    }
    let required = r as i64 + 3;
    let mut notes = Vec::new();
    if p <= 3 {
        if id.needs_p_gt_3() {
            return Ok(PadicVerdict {
                status: Status::Skipped,
                valuation: None,
                required,
                lhs: None,
                rhs: None,
                rhs_valuation: None,
                notes: vec![format!("{id} is stated for p > 3")],
            });
        }
        notes.push(format!("{id} states no condition p > 3; p = {p} is checked as is"));
    }
    let (lhs, rhs) = classical_sides(id, p, r)?;
    let rhs_valuation = vp(&rhs, p).ok();
    if let Some(v) = rhs_valuation.filter(|v| *v < 0) {
        notes.push(format!("right-hand side has negative valuation {v}"));
    }
    let delta = &lhs - &rhs;
    let valuation = vp(&delta, p).ok();
    let status = match valuation {
        Some(v) if v < required => Status::Fail,
        _ => Status::Pass,
    };
    Ok(PadicVerdict { status, valuation, required, lhs: Some(lhs), rhs: Some(rhs), rhs_valuation, notes })
}

/// The q-analogue's verdict at `n = p`, reported next to the classical
/// check.
pub fn q_side_status(id: PadicId, p: u64, params: &Params) -> Status {
    match verify_target(id.q_analogue(), p as i64, MMode::Half, params) {
        Ok(v) => v.status,
        Err(_) => Status::Fail,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rising_examples() {
        assert_eq!(rising(&ratio(-1, 2), 2), ratio(-1, 4));
        assert_eq!(rising(&ratio(3, 2), 0), rat(1));
        assert_eq!(rising(&ratio(3, 2), 2), ratio(15, 4));
        assert_eq!(factorial(5), rat(120));
    }

    #[test]
    fn valuations() {
        assert_eq!(vp(&ratio(50, 3), 5), Ok(2));
        assert_eq!(vp(&ratio(1, 25), 5), Ok(-2));
        assert_eq!(vp(&rat(7), 5), Ok(0));
        assert_eq!(vp(&rat(0), 5), Err(PadicError::Zero));
    }

    #[test]
    fn documented_cases() {
        let v = classical_check(PadicId::Pad13, 5, 1).unwrap();
        assert_eq!(v.status, Status::Pass);
        assert!(v.valuation.is_none_or(|x| x >= 4));
        assert_eq!(classical_check(PadicId::Pad15, 7, 1).unwrap().status, Status::Pass);
        assert_eq!(PadicId::Pad15.constant(), ratio(15, 64));
        assert_eq!(classical_check(PadicId::Pad13, 3, 1).unwrap().status, Status::Skipped);
        assert!(classical_check(PadicId::Pad13, 9, 1).is_err());
        assert!(classical_check(PadicId::Pad13, 5, 0).is_err());
    }
}
