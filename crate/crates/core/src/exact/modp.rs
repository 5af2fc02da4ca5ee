//! Arithmetic in the prime field F_p for p = 2^61 - 1.
//!
//! Used only as a filter: if two integer polynomials whose leading
//! coefficients are nonzero mod p are coprime in F_p[q], they are coprime
//! in Q[q]. Exact answers are always produced over Q.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::rat::BigRat;

pub const P: u64 = (1u64 << 61) - 1;

#[inline]
pub fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

#[inline]
pub fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

pub fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

pub fn inv(a: u64) -> u64 {
    debug_assert!(a != 0);
    pow(a, P - 2)
}

pub fn from_int(x: &BigInt) -> u64 {
    x.mod_floor(&BigInt::from(P)).to_u64().expect("reduced residue fits")
}

/// `None` when the denominator vanishes mod p.
pub fn from_rat(x: &BigRat) -> Option<u64> {
    let d = from_int(x.denom());
    if d == 0 {
        return None;
    }
    Some(mul(from_int(x.numer()), inv(d)))
}

/// Dense polynomial over F_p, index = exponent, no trailing zeros.
pub type PolyP = Vec<u64>;

pub fn trim(p: &mut PolyP) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

/// Remainder of `a` modulo a nonzero `b`.
pub fn rem(mut a: PolyP, b: &[u64]) -> PolyP {
    trim(&mut a);
    let db = b.len() - 1;
    let lead_inv = inv(b[db]);
    while a.len() > db {
        let top = a.len() - 1;
        let c = mul(a[top], lead_inv);
        if c != 0 {
            let off = top - db;
            for (j, &bj) in b.iter().enumerate() {
                if bj != 0 {
                    a[off + j] = sub(a[off + j], mul(c, bj));
                }
            }
        }
        a.pop();
        trim(&mut a);
    }
    a
}

/// Degree of gcd(a, b) in F_p[q]; `None` when both are zero.
pub fn gcd_degree(a: PolyP, b: PolyP) -> Option<usize> {
    let (mut a, mut b) = (a, b);
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(a, &b);
        a = b;
        b = r;
    }
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}
