//! Dense integer polynomials, the workhorse behind large truncated sums.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::laurent::LaurentPoly;
use super::modp;
use super::rat::{lcm_denominators, BigRat};

/// Coefficient of `q^i` at index `i`; no trailing zeros.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct ZPoly(Vec<BigInt>);

impl ZPoly {
    pub fn new(mut v: Vec<BigInt>) -> Self {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        ZPoly(v)
    }

    pub fn from_i64s(v: &[i64]) -> Self {
        Self::new(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        ZPoly(Vec::new())
    }

    pub fn one() -> Self {
        ZPoly(vec![BigInt::one()])
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn lead(&self) -> &BigInt {
        self.0.last().expect("nonzero polynomial")
    }

    /// Number of zero coefficients below the first nonzero one.
    pub fn low_zeros(&self) -> usize {
        self.0.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn shift_down(&self, k: usize) -> Self {
        ZPoly(self.0[k.min(self.0.len())..].to_vec())
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.0.iter().cloned());
        ZPoly(v)
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.0 {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ZPoly(self.0.iter().map(|x| x * c).collect())
    }

    /// Divides every coefficient by `c`, which must divide them all.
    pub fn div_scalar(&self, c: &BigInt) -> Self {
        ZPoly(self.0.iter().map(|x| x / c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i);
            let b = other.0.get(i);
            v.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::new(v)
    }

    pub fn neg(&self) -> Self {
        ZPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Schoolbook product that skips zero coefficients of the shorter
    /// operand, so multiplying by a binomial costs two passes.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (big, small) = if self.0.len() >= other.0.len() { (self, other) } else { (other, self) };
        let mut v = vec![BigInt::zero(); big.0.len() + small.0.len() - 1];
        for (j, s) in small.0.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            if s.is_one() {
                for (i, b) in big.0.iter().enumerate() {
                    v[i + j] += b;
                }
            } else {
                for (i, b) in big.0.iter().enumerate() {
                    v[i + j] += b * s;
                }
            }
        }
        Self::new(v)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact quotient by a primitive `d` with nonzero constant term.
    ///
    /// By Gauss's lemma a primitive divisor of an integer polynomial leaves
    /// an integer quotient, so a non-integral step proves non-divisibility.
    pub fn exact_div(&self, d: &ZPoly) -> Option<ZPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dd = d.0.len() - 1;
        if self.0.len() <= dd {
            return None;
        }
        let lead = d.lead();
        let nz: Vec<(usize, &BigInt)> = d.0.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        let mut r = self.0.clone();
        let mut quot = vec![BigInt::zero(); r.len() - dd];
        for top in (dd..r.len()).rev() {
            if r[top].is_zero() {
                continue;
            }
            let (c, rem) = r[top].div_rem(lead);
            if !rem.is_zero() {
                return None;
            }
            let off = top - dd;
            for &(j, dj) in &nz {
                r[off + j] -= &c * dj;
            }
            quot[off] = c;
        }
        if r[..dd].iter().all(Zero::is_zero) {
            Some(Self::new(quot))
        } else {
            None
        }
    }

    pub fn to_modp(&self) -> modp::PolyP {
        let mut v: modp::PolyP = self.0.iter().map(modp::from_int).collect();
        modp::trim(&mut v);
        v
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_coeffs(self.0.iter().map(|c| BigRat::from_integer(c.clone())).collect())
    }

    /// Splits an ordinary polynomial over Q as `scalar * self` with an
    /// integer primitive `self`.
    pub fn from_rational(p: &LaurentPoly) -> (BigRat, ZPoly) {
        if p.is_zero() {
            return (BigRat::zero(), Self::zero());
        }
        let dense = p.to_dense();
        let l = lcm_denominators(dense.iter());
        let ints: Vec<BigInt> = dense.iter().map(|c| (c * &l).to_integer()).collect();
        let z = Self::new(ints);
        let g = z.content();
        (BigRat::new(g.clone(), l), z.div_scalar(&g))
    }

    /// Primitive representative with positive constant term, together with
    /// the scalar it was divided by. Requires a nonzero constant term.
    pub fn canonical_factor(&self) -> (BigInt, ZPoly) {
        let mut g = self.content();
        if self.0[0].is_negative() {
            g = -g;
        }
        (g.clone(), self.div_scalar(&g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_division() {
        let a = ZPoly::from_i64s(&[-1, 0, 1]);
        let b = ZPoly::from_i64s(&[-1, 1]);
        assert_eq!(a.exact_div(&b), Some(ZPoly::from_i64s(&[1, 1])));
        assert_eq!(ZPoly::from_i64s(&[1, 0, 1]).exact_div(&b), None);
        // 2 - 3q does not divide 1 + q + q^2 over Q
        assert_eq!(ZPoly::from_i64s(&[1, 1, 1]).exact_div(&ZPoly::from_i64s(&[2, -3])), None);
        let c = ZPoly::from_i64s(&[2, -3]).mul(&ZPoly::from_i64s(&[5, 0, 7]));
        assert_eq!(c.exact_div(&ZPoly::from_i64s(&[2, -3])), Some(ZPoly::from_i64s(&[5, 0, 7])));
    }

    #[test]
    fn rational_split() {
        let p = LaurentPoly::from_coeffs(vec![BigRat::new(1.into(), 2.into()), BigRat::new((-3).into(), 4.into())]);
        let (s, z) = ZPoly::from_rational(&p);
        assert_eq!(z, ZPoly::from_i64s(&[2, -3]));
        assert_eq!(s, BigRat::new(1.into(), 4.into()));
    }
}
