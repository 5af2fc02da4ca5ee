//! Reduced quotients of Laurent polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::laurent::{poly_gcd, LaurentPoly};
use super::rat::BigRat;
use super::ExactError;

/// `num / den` in canonical form: `den` is an ordinary monic polynomial
/// with nonzero constant term, every power of `q` lives in `num`, and the
/// polynomial part of `num` is coprime to `den`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFn {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFn {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let den_shift = den.min_exp();
        let den = den.shift(-den_shift);
        let num = num.shift(-den_shift);
        let num_shift = num.min_exp();
        let num_poly = num.shift(-num_shift);
        let g = poly_gcd(&num_poly, &den)?;
        let (num_poly, den) = if g.is_one() {
            (num_poly, den)
        } else {
            (
                num_poly.exact_div(&g)?.expect("gcd divides numerator"),
                den.exact_div(&g)?.expect("gcd divides denominator"),
            )
        };
        let lead = den.lead().recip();
        Ok(RatFn { num: num_poly.shift(num_shift).scale(&lead), den: den.scale(&lead) })
    }

    /// Assembles parts already known to satisfy the canonical invariants.
    pub(crate) fn from_canonical_parts(num: LaurentPoly, den: LaurentPoly) -> Self {
        debug_assert!(den.min_exp() == 0 && den.lead().is_one());
        RatFn { num, den }
    }

    pub fn zero() -> Self {
        RatFn { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RatFn { num: p, den: LaurentPoly::one() }
    }

    pub fn constant(c: BigRat) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn monomial(c: BigRat, e: i64) -> Self {
        Self::from_poly(LaurentPoly::monomial(c, e))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Re-runs canonicalization; a fixed point on canonical input.
    pub fn reduce(&self) -> Self {
        Self::new(self.num.clone(), self.den.clone()).expect("canonical denominator is nonzero")
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ExactError> {
        if other.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Self::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        Self::one().checked_div(self)
    }

    pub fn pow(&self, e: i64) -> Result<Self, ExactError> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let e = e.unsigned_abs() as u32;
        Ok(RatFn { num: base.num.pow(e), den: base.den.pow(e) })
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFn { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn shift(&self, e: i64) -> Self {
        RatFn { num: self.num.shift(e), den: self.den.clone() }
    }

    /// `None` when the denominator vanishes at `x` or `x = 0` meets a
    /// negative exponent.
    pub fn eval(&self, x: &BigRat) -> Option<BigRat> {
        let d = self.den.eval(x)?;
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x)? / d)
    }

    pub fn render(&self, var: &str) -> String {
        if self.den.is_one() {
            self.num.render(var)
        } else {
            format!("({})/({})", self.num.render(var), self.den.render(var))
        }
    }
}

fn add_fracs(a: &RatFn, b: &RatFn, negate: bool) -> RatFn {
    let bn = if negate { -&b.num } else { b.num.clone() };
    if a.den == b.den {
        return RatFn::new(&a.num + &bn, a.den.clone()).expect("nonzero denominator");
    }
    let g = poly_gcd(&a.den, &b.den).expect("denominators are nonzero");
    let ad = a.den.exact_div(&g).unwrap().expect("gcd divides");
    let bd = b.den.exact_div(&g).unwrap().expect("gcd divides");
    RatFn::new(&(&a.num * &bd) + &(&bn * &ad), &a.den * &bd).expect("nonzero denominator")
}

fn mul_fracs(a: &RatFn, b: &RatFn) -> RatFn {
    if a.is_zero() || b.is_zero() {
        return RatFn::zero();
    }
    RatFn::new(&a.num * &b.num, &a.den * &b.den).expect("nonzero denominator")
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&RatFn> for &RatFn {
            type Output = RatFn;
            fn $method(self, rhs: &RatFn) -> RatFn {
                $body(self, rhs)
            }
        }
        impl $trait<RatFn> for RatFn {
            type Output = RatFn;
            fn $method(self, rhs: RatFn) -> RatFn {
                $body(&self, &rhs)
            }
        }
        impl $trait<&RatFn> for RatFn {
            type Output = RatFn;
            fn $method(self, rhs: &RatFn) -> RatFn {
                $body(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| add_fracs(a, b, false));
forward_binop!(Sub, sub, |a, b| add_fracs(a, b, true));
forward_binop!(Mul, mul, mul_fracs);

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        -&self
    }
}

impl From<LaurentPoly> for RatFn {
    fn from(p: LaurentPoly) -> Self {
        RatFn::from_poly(p)
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("q"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;

    fn p(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_ints(c)
    }

    #[test]
    fn arithmetic_examples() {
        let inv_q = RatFn::monomial(rat(1), -1);
        assert!((&inv_q + &(-&inv_q)).is_zero());
        assert_eq!(&inv_q * &RatFn::monomial(rat(1), 3), RatFn::monomial(rat(1), 2));
        let x = RatFn::new(p(&[-1, 0, 1]), p(&[1, 1])).unwrap();
        assert!((&x - &RatFn::from_poly(p(&[-1, 1]))).is_zero());
    }

    #[test]
    fn q_powers_move_out_of_the_denominator() {
        // 1 / (q^2 + q^3) = q^-2 / (1 + q)
        let x = RatFn::new(LaurentPoly::one(), p(&[0, 0, 1, 1])).unwrap();
        assert_eq!(x.num(), &LaurentPoly::monomial(rat(1), -2));
        assert_eq!(x.den(), &p(&[1, 1]));
    }

    #[test]
    fn denominator_is_monic() {
        let x = RatFn::new(p(&[1]), p(&[2, 4])).unwrap();
        assert!(x.den().lead().is_one());
        assert_eq!(x.eval(&rat(1)), Some(num_rational::BigRational::new(1.into(), 6.into())));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(RatFn::new(p(&[1]), LaurentPoly::zero()), Err(ExactError::DivisionByZero));
        assert_eq!(RatFn::one().checked_div(&RatFn::zero()), Err(ExactError::DivisionByZero));
    }

    #[test]
    fn reduce_is_a_fixed_point() {
        let x = RatFn::new(p(&[3, 0, 5, 1]), p(&[0, 6, 1, 2, 7])).unwrap();
        assert_eq!(x.reduce(), x);
    }
}
