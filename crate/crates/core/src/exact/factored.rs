//! Factored representations used to evaluate long truncated sums without
//! running Euclid on large polynomials.
//!
//! A [`Product`] is `scalar * q^shift * prod f_i^{m_i}` with canonical
//! integer factors `f_i`. A [`Fraction`] keeps an expanded integer
//! numerator over a still-factored denominator; reducing it only ever
//! computes gcds against one small denominator factor at a time.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::laurent::{poly_gcd, LaurentPoly};
use super::modp;
use super::rat::{rat_pow, BigRat};
use super::ratfn::RatFn;
use super::zpoly::ZPoly;
use super::ExactError;

/// Canonical factor keys: primitive integer polynomials of positive degree
/// with positive constant term.
pub type FactorMap = BTreeMap<ZPoly, i64>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Product {
    scalar: BigRat,
    shift: i64,
    factors: FactorMap,
}

impl Product {
    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    pub fn zero() -> Self {
        Self::constant(BigRat::zero())
    }

    pub fn constant(c: BigRat) -> Self {
        Product { scalar: c, shift: 0, factors: FactorMap::new() }
    }

    /// `c * q^e`.
    pub fn monomial(c: BigRat, e: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Product { scalar: c, shift: e, factors: FactorMap::new() }
    }

    /// `1 - c*q^e`.
    pub fn binomial(c: &BigRat, e: i64) -> Self {
        Self::from_laurent(&LaurentPoly::binomial(c.clone(), e))
    }

    pub fn from_laurent(p: &LaurentPoly) -> Self {
        if p.is_zero() {
            return Self::zero();
        }
        let shift = p.min_exp();
        let (scalar, z) = ZPoly::from_rational(&p.shift(-shift));
        if z.degree() == 0 {
            return Self::monomial(scalar * BigRat::from_integer(z.coeffs()[0].clone()), shift);
        }
        let (g, key) = z.canonical_factor();
        let mut factors = FactorMap::new();
        factors.insert(key, 1);
        Product { scalar: scalar * BigRat::from_integer(g), shift, factors }
    }

    pub fn from_ratfn(r: &RatFn) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self::from_laurent(r.num()).mul(&Self::from_laurent(r.den()).recip().expect("denominator is nonzero"))
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero()
    }

    pub fn scalar(&self) -> &BigRat {
        &self.scalar
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn factors(&self) -> &FactorMap {
        &self.factors
    }

    fn add_factor(&mut self, key: &ZPoly, m: i64) {
        let e = self.factors.entry(key.clone()).or_insert(0);
        *e += m;
        if *e == 0 {
            self.factors.remove(key);
        }
    }

    pub fn mul(&self, other: &Product) -> Product {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = self.clone();
        out.scalar *= &other.scalar;
        out.shift += other.shift;
        for (k, &m) in &other.factors {
            out.add_factor(k, m);
        }
        out
    }

    pub fn recip(&self) -> Result<Product, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Product {
            scalar: self.scalar.recip(),
            shift: -self.shift,
            factors: self.factors.iter().map(|(k, &m)| (k.clone(), -m)).collect(),
        })
    }

    pub fn div(&self, other: &Product) -> Result<Product, ExactError> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn pow(&self, e: i64) -> Result<Product, ExactError> {
        if self.is_zero() {
            return if e > 0 {
                Ok(Self::zero())
            } else if e == 0 {
                Ok(Self::one())
            } else {
                Err(ExactError::DivisionByZero)
            };
        }
        Ok(Product {
            scalar: rat_pow(&self.scalar, e),
            shift: self.shift * e,
            factors: self.factors.iter().map(|(k, &m)| (k.clone(), m * e)).collect(),
        })
    }

    pub fn to_fraction(&self) -> Fraction {
        if self.is_zero() {
            return Fraction::zero();
        }
        let mut num = ZPoly::one();
        let mut den = BTreeMap::new();
        for (k, &m) in &self.factors {
            if m > 0 {
                num = num.mul(&k.pow(m as u32));
            } else {
                den.insert(k.clone(), (-m) as u32);
            }
        }
        Fraction { scalar: self.scalar.clone(), shift: self.shift, num, den }.normalized()
    }

    pub fn to_ratfn(&self) -> RatFn {
        self.to_fraction().to_ratfn()
    }
}

/// `scalar * q^shift * num / prod den_i^{m_i}`, not necessarily reduced.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fraction {
    scalar: BigRat,
    shift: i64,
    num: ZPoly,
    den: BTreeMap<ZPoly, u32>,
}

impl Fraction {
    pub fn zero() -> Self {
        Fraction { scalar: BigRat::zero(), shift: 0, num: ZPoly::zero(), den: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn scalar(&self) -> &BigRat {
        &self.scalar
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// Primitive integer numerator with nonzero constant term.
    pub fn num(&self) -> &ZPoly {
        &self.num
    }

    pub fn den_factors(&self) -> &BTreeMap<ZPoly, u32> {
        &self.den
    }

    pub fn den_poly(&self) -> ZPoly {
        self.den.iter().fold(ZPoly::one(), |acc, (k, &m)| acc.mul(&k.pow(m)))
    }

    fn normalized(mut self) -> Self {
        if self.num.is_zero() || self.scalar.is_zero() {
            return Self::zero();
        }
        let low = self.num.low_zeros();
        if low > 0 {
            self.num = self.num.shift_down(low);
            self.shift += low as i64;
        }
        let mut g = self.num.content();
        if self.num.coeffs()[0].is_negative() {
            g = -g;
        }
        if !g.is_one() {
            self.num = self.num.div_scalar(&g);
            self.scalar *= BigRat::from_integer(g);
        }
        self
    }

    /// Assembles a fraction from raw parts; `den` keys need only be
    /// nonconstant.
    pub(crate) fn from_parts(scalar: BigRat, shift: i64, num: ZPoly, den: BTreeMap<ZPoly, u32>) -> Self {
        Fraction { scalar, shift, num, den }.normalized()
    }

    /// Deterministic text of the factored form.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = format!("{}*q^{}*({})", self.scalar, self.shift, self.num.to_laurent().render("q"));
        for (k, m) in &self.den {
            out.push_str(&format!("/({})^{}", k.to_laurent().render("q"), m));
        }
        out
    }

    pub fn from_product(p: &Product) -> Self {
        p.to_fraction()
    }

    /// Sum over a common denominator assembled from the factor maps.
    pub fn sum(terms: &[Product]) -> Fraction {
        let terms: Vec<&Product> = terms.iter().filter(|t| !t.is_zero()).collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let mut den: BTreeMap<ZPoly, u32> = BTreeMap::new();
        for t in &terms {
            for (k, &m) in &t.factors {
                if m < 0 {
                    let e = den.entry(k.clone()).or_insert(0);
                    *e = (*e).max((-m) as u32);
                }
            }
        }
        let s0 = terms.iter().map(|t| t.shift).min().unwrap();
        let l = terms.iter().fold(BigInt::one(), |acc, t| acc.lcm(t.scalar.denom()));
        let lq = BigRat::from_integer(l.clone());
        let mut acc = ZPoly::zero();
        for t in &terms {
            let mut mults: Vec<(&ZPoly, u32)> = Vec::new();
            for (k, &m) in &t.factors {
                if m > 0 {
                    mults.push((k, m as u32));
                }
            }
            for (k, &d) in &den {
                let have = t.factors.get(k).map_or(0, |&m| if m < 0 { (-m) as u32 } else { 0 });
                if d > have {
                    mults.push((k, d - have));
                }
            }
            let c = (&t.scalar * &lq).to_integer();
            let poly = expand(ZPoly::constant(c), &mults);
            acc = acc.add(&poly.shift_up((t.shift - s0) as usize));
        }
        Fraction { scalar: lq.recip(), shift: s0, num: acc, den }.normalized()
    }

    pub fn mul_product(&self, p: &Product) -> Fraction {
        if self.is_zero() || p.is_zero() {
            return Self::zero();
        }
        let mut den = self.den.clone();
        let mut mults = Vec::new();
        for (k, &m) in &p.factors {
            if m > 0 {
                let m = m as u32;
                let have = den.get(k).copied().unwrap_or(0);
                let cancel = have.min(m);
                if cancel == have && have > 0 {
                    den.remove(k);
                } else if cancel > 0 {
                    den.insert(k.clone(), have - cancel);
                }
                if m > cancel {
                    mults.push((k, m - cancel));
                }
            } else {
                *den.entry(k.clone()).or_insert(0) += (-m) as u32;
            }
        }
        Fraction {
            scalar: &self.scalar * &p.scalar,
            shift: self.shift + p.shift,
            num: expand(self.num.clone(), &mults),
            den,
        }
        .normalized()
    }

    pub fn neg(&self) -> Fraction {
        let mut out = self.clone();
        out.scalar = -out.scalar;
        out
    }

    pub fn add(&self, other: &Fraction) -> Fraction {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut den = self.den.clone();
        for (k, &m) in &other.den {
            let e = den.entry(k.clone()).or_insert(0);
            *e = (*e).max(m);
        }
        let s0 = self.shift.min(other.shift);
        let l = self.scalar.denom().lcm(other.scalar.denom());
        let lq = BigRat::from_integer(l);
        let lift = |f: &Fraction| {
            let mults: Vec<(&ZPoly, u32)> = den
                .iter()
                .filter_map(|(k, &d)| {
                    let have = f.den.get(k).copied().unwrap_or(0);
                    (d > have).then_some((k, d - have))
                })
                .collect();
            let c = (&f.scalar * &lq).to_integer();
            expand(f.num.scale(&c), &mults).shift_up((f.shift - s0) as usize)
        };
        let num = lift(self).add(&lift(other));
        Fraction { scalar: lq.recip(), shift: s0, num, den }.normalized()
    }

    pub fn sub(&self, other: &Fraction) -> Fraction {
        self.add(&other.neg())
    }

    /// Cancels every common factor of numerator and denominator.
    ///
    /// Each denominator factor is tested against the current numerator;
    /// a factor whose gcd with the numerator is `g` is replaced by its
    /// cofactor `f/g`, which is queued and tested again. The result is in
    /// lowest terms because a prime that survives in a denominator factor
    /// has already been removed from the numerator entirely.
    pub fn reduce(&self) -> Fraction {
        if self.is_zero() {
            return Self::zero();
        }
        let mut num = self.num.clone();
        let mut num_p = num.to_modp();
        let mut pending: Vec<(ZPoly, u32)> = self.den.iter().map(|(k, &m)| (k.clone(), m)).collect();
        let mut out: BTreeMap<ZPoly, u32> = BTreeMap::new();
        while let Some((f, m)) = pending.pop() {
            let f_p = f.to_modp();
            let mut left = m;
            while left > 0 {
                if modp::gcd_degree(num_p.clone(), f_p.clone()) == Some(0) {
                    break;
                }
                let g = gcd_with_factor(&num, &f);
                if g.degree() == 0 {
                    break;
                }
                num = num.exact_div(&g).expect("gcd divides the numerator");
                num_p = num.to_modp();
                let cof = f.exact_div(&g).expect("gcd divides the factor");
                if cof.degree() > 0 {
                    pending.push((cof, 1));
                }
                left -= 1;
            }
            if left > 0 {
                *out.entry(f).or_insert(0) += left;
            }
        }
        Fraction { scalar: self.scalar.clone(), shift: self.shift, num, den: out }.normalized()
    }

    /// Canonical reduced rational function.
    pub fn to_ratfn(&self) -> RatFn {
        let red = self.reduce();
        if red.is_zero() {
            return RatFn::zero();
        }
        red.to_ratfn_unreduced()
    }

    /// Expands without reducing; canonical only when already reduced.
    pub(crate) fn to_ratfn_unreduced(&self) -> RatFn {
        if self.is_zero() {
            return RatFn::zero();
        }
        let den = self.den_poly();
        let lead = BigRat::from_integer(den.lead().clone()).recip();
        let num = self.num.to_laurent().scale(&(&self.scalar * &lead)).shift(self.shift);
        RatFn::from_canonical_parts(num, den.to_laurent().scale(&lead))
    }
}

/// Multiplies `base` by each `k^m`, smallest factors first.
fn expand(base: ZPoly, mults: &[(&ZPoly, u32)]) -> ZPoly {
    let mut order: Vec<&(&ZPoly, u32)> = mults.iter().collect();
    order.sort_by_key(|(k, _)| k.degree());
    let mut acc = base;
    for (k, m) in order {
        for _ in 0..*m {
            acc = acc.mul(k);
        }
    }
    acc
}

/// Canonical gcd of a large integer polynomial with a small factor.
pub(crate) fn gcd_with_factor(num: &ZPoly, f: &ZPoly) -> ZPoly {
    let f_l = f.to_laurent();
    let r = if f.lead().abs().is_one() {
        int_rem(num, f).to_laurent()
    } else {
        num.to_laurent().rem(&f_l).expect("nonzero polynomial divisor")
    };
    let g = poly_gcd(&f_l, &r).expect("factor is nonzero");
    let (_, z) = ZPoly::from_rational(&g);
    if z.degree() <= 0 {
        return ZPoly::one();
    }
    z.canonical_factor().1
}

/// Remainder by a divisor with unit leading coefficient, in integers.
fn int_rem(a: &ZPoly, d: &ZPoly) -> ZPoly {
    let dd = d.coeffs().len() - 1;
    let mut r = a.coeffs().to_vec();
    if r.len() <= dd {
        return a.clone();
    }
    let sign = d.lead().clone();
    let nz: Vec<(usize, &BigInt)> = d.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    for top in (dd..r.len()).rev() {
        if r[top].is_zero() {
            continue;
        }
        let c = &r[top] * &sign;
        let off = top - dd;
        for &(j, dj) in &nz {
            r[off + j] -= &c * dj;
        }
    }
    r.truncate(dd);
    ZPoly::new(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::{rat, ratio};

    fn lp(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_ints(c)
    }

    #[test]
    fn binomial_with_negative_exponent() {
        // 1 - q^-1 = -q^-1 (1 - q)
        let b = Product::binomial(&rat(1), -1);
        assert_eq!(b.to_ratfn(), RatFn::from_poly(LaurentPoly::binomial(rat(1), -1)));
        assert_eq!(b.shift(), -1);
    }

    #[test]
    fn sum_reduces_to_canonical_form() {
        // 1/(1-q) - q/(1-q) = 1
        let t1 = Product::binomial(&rat(1), 1).recip().unwrap();
        let t2 = Product::monomial(rat(-1), 1).mul(&t1);
        let s = Fraction::sum(&[t1, t2]);
        assert_eq!(s.to_ratfn(), RatFn::one());
    }

    #[test]
    fn reduce_splits_partially_cancelling_factors() {
        // (1+q) / (1-q^2) = 1/(1-q)
        let num = Product::from_laurent(&lp(&[1, 1]));
        let den = Product::binomial(&rat(1), 2);
        let f = num.div(&den).unwrap().to_fraction();
        let expected = RatFn::new(LaurentPoly::one(), lp(&[1, -1])).unwrap();
        assert_eq!(f.to_ratfn(), expected);
    }

    #[test]
    fn agrees_with_generic_ratfn_arithmetic() {
        let terms: Vec<Product> = (0..5)
            .map(|k| {
                let mut t = Product::monomial(ratio(3, 2), k);
                for j in 0..k {
                    t = t.mul(&Product::binomial(&ratio(5, 3), 2 * j - 1));
                    t = t.div(&Product::binomial(&rat(7), 2 * j + 2)).unwrap();
                }
                t
            })
            .collect();
        let fast = Fraction::sum(&terms).to_ratfn();
        let slow = terms.iter().fold(RatFn::zero(), |acc, t| acc + t.to_ratfn());
        assert_eq!(fast, slow);
    }
}
