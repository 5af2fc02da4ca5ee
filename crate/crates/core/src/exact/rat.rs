//! Arbitrary-precision rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficient field for every polynomial in the crate. Always stored in
/// lowest terms with a positive denominator.
pub type BigRat = BigRational;

pub fn rat(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

/// `x^e` for any integer `e`; panics on `0^e` with `e < 0`.
pub fn rat_pow(x: &BigRat, e: i64) -> BigRat {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        assert!(!x.is_zero(), "zero raised to a negative power");
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

/// Parses `"7"`, `"-3/2"` and similar.
pub fn parse_rat(s: &str) -> Option<BigRat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRat::new(n, d))
        }
        None => Some(BigRat::from_integer(s.parse().ok()?)),
    }
}

/// Multiplicity of the prime `p` in a nonzero integer.
pub fn int_valuation(x: &BigInt, p: &BigInt) -> u64 {
    debug_assert!(!x.is_zero());
    let mut v = 0;
    let mut x = x.abs();
    loop {
        let (q, r) = x.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        x = q;
        v += 1;
    }
}

pub fn lcm_denominators<'a>(xs: impl IntoIterator<Item = &'a BigRat>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}
