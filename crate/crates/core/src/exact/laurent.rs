//! Univariate Laurent polynomials over Q with a dense coefficient vector.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::modp;
use super::rat::{rat, BigRat};
use super::ExactError;

/// `sum_i coeffs[i] * q^(min_exp + i)`.
///
/// Canonical: the first and last coefficients are nonzero; the zero
/// polynomial is the empty vector with `min_exp == 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LaurentPoly {
    min_exp: i64,
    coeffs: Vec<BigRat>,
}

impl LaurentPoly {
    pub fn new(min_exp: i64, coeffs: Vec<BigRat>) -> Self {
        let mut p = LaurentPoly { min_exp, coeffs };
        p.canonicalize();
        p
    }

    /// Ordinary polynomial from coefficients in ascending degree.
    pub fn from_coeffs(coeffs: Vec<BigRat>) -> Self {
        Self::new(0, coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    pub fn constant(c: BigRat) -> Self {
        Self::new(0, vec![c])
    }

    /// `c * q^e`.
    pub fn monomial(c: BigRat, e: i64) -> Self {
        Self::new(e, vec![c])
    }

    /// The variable itself.
    pub fn q() -> Self {
        Self::monomial(BigRat::one(), 1)
    }

    /// `1 - c*q^e`.
    pub fn binomial(c: BigRat, e: i64) -> Self {
        Self::one() - Self::monomial(c, e)
    }

    fn canonicalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == self.coeffs.len() {
            self.coeffs.clear();
            self.min_exp = 0;
            return;
        }
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.min_exp += lead_zeros as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.min_exp == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Nonzero constant or zero.
    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.min_exp == 0 && self.coeffs.len() == 1)
    }

    /// True when no negative exponent occurs.
    pub fn is_polynomial(&self) -> bool {
        self.is_zero() || self.min_exp >= 0
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    /// Highest exponent; `None` for zero.
    pub fn max_exp(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.min_exp + self.coeffs.len() as i64 - 1)
        }
    }

    /// Degree of an ordinary polynomial; zero has degree `-1` here.
    pub fn degree(&self) -> i64 {
        self.max_exp().unwrap_or(-1)
    }

    pub fn coeff(&self, e: i64) -> BigRat {
        let i = e - self.min_exp;
        if i < 0 || i >= self.coeffs.len() as i64 {
            BigRat::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// Coefficients starting at `min_exp`.
    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRat)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| (self.min_exp + i as i64, c))
    }

    pub fn lead(&self) -> BigRat {
        self.coeffs.last().cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn trailing(&self) -> BigRat {
        self.coeffs.first().cloned().unwrap_or_else(BigRat::zero)
    }

    /// Dense coefficients of an ordinary polynomial, index = exponent.
    pub fn to_dense(&self) -> Vec<BigRat> {
        assert!(self.is_polynomial(), "negative exponent in to_dense");
        if self.is_zero() {
            return Vec::new();
        }
        let mut v = vec![BigRat::zero(); self.min_exp as usize];
        v.extend(self.coeffs.iter().cloned());
        v
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { min_exp: self.min_exp + e, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { min_exp: self.min_exp, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.lead().recip())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `None` when `x = 0` and a negative exponent is present.
    pub fn eval(&self, x: &BigRat) -> Option<BigRat> {
        if self.is_zero() {
            return Some(BigRat::zero());
        }
        if x.is_zero() && self.min_exp < 0 {
            return None;
        }
        let mut acc = BigRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        Some(if self.min_exp >= 0 {
            acc * num_traits::pow(x.clone(), self.min_exp as usize)
        } else {
            acc / num_traits::pow(x.clone(), (-self.min_exp) as usize)
        })
    }

    /// Polynomial long division over Q: `self = other*Q + R`, `deg R < deg other`.
    pub fn divrem(&self, other: &Self) -> Result<(Self, Self), ExactError> {
        if other.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if !self.is_polynomial() || !other.is_polynomial() {
            return Err(ExactError::NotPolynomial);
        }
        let db = other.degree() as usize;
        let b = other.to_dense();
        let lead_inv = b[db].recip();
        let mut r = self.to_dense();
        if r.len() <= db {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigRat::zero(); r.len() - db];
        for top in (db..r.len()).rev() {
            if r[top].is_zero() {
                continue;
            }
            let c = &r[top] * &lead_inv;
            let off = top - db;
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    r[off + j] -= &c * bj;
                }
            }
            quot[off] = c;
        }
        r.truncate(db);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(r)))
    }

    pub fn rem(&self, other: &Self) -> Result<Self, ExactError> {
        Ok(self.divrem(other)?.1)
    }

    /// Exact quotient, or `None` if `other` does not divide `self`.
    pub fn exact_div(&self, other: &Self) -> Result<Option<Self>, ExactError> {
        let (q, r) = self.divrem(other)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Residues in F_p when every coefficient denominator is invertible.
    pub(crate) fn to_modp(&self) -> Option<modp::PolyP> {
        let mut v = vec![0u64; self.min_exp.max(0) as usize];
        for c in &self.coeffs {
            v.push(modp::from_rat(c)?);
        }
        modp::trim(&mut v);
        Some(v)
    }

    /// Renders with an arbitrary variable name, highest power first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let power = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            if power.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&power);
            } else {
                out.push_str(&format!("{mag}*{power}"));
            }
        }
        out
    }
}

/// Monic gcd of two polynomials; `gcd(0, 0)` is rejected.
pub fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly, ExactError> {
    if !a.is_polynomial() || !b.is_polynomial() {
        return Err(ExactError::NotPolynomial);
    }
    if a.is_zero() && b.is_zero() {
        return Err(ExactError::ZeroGcd);
    }
    if a.is_zero() {
        return Ok(b.monic());
    }
    if b.is_zero() {
        return Ok(a.monic());
    }
    if coprime_modp(a, b) {
        return Ok(LaurentPoly::one());
    }
    let (mut x, mut y) = if a.degree() >= b.degree() { (a.monic(), b.monic()) } else { (b.monic(), a.monic()) };
    while !y.is_zero() {
        let r = x.rem(&y)?.monic();
        x = y;
        y = r;
    }
    Ok(x)
}

/// Sound coprimality shortcut: coprime in F_p with both leading
/// coefficients nonzero mod p implies coprime over Q.
pub(crate) fn coprime_modp(a: &LaurentPoly, b: &LaurentPoly) -> bool {
    let (Some(ap), Some(bp)) = (a.to_modp(), b.to_modp()) else {
        return false;
    };
    if ap.len() as i64 - 1 != a.degree() || bp.len() as i64 - 1 != b.degree() {
        return false;
    }
    modp::gcd_degree(ap, bp) == Some(0)
}

/// Extended Euclid: `(G, U, V)` with `U*A + V*B = G`, `G` monic.
pub fn poly_ext_gcd(a: &LaurentPoly, b: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly, LaurentPoly), ExactError> {
    if !a.is_polynomial() || !b.is_polynomial() {
        return Err(ExactError::NotPolynomial);
    }
    if a.is_zero() && b.is_zero() {
        return Err(ExactError::ZeroGcd);
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (LaurentPoly::one(), LaurentPoly::zero());
    let (mut t0, mut t1) = (LaurentPoly::zero(), LaurentPoly::one());
    while !r1.is_zero() {
        let (quo, rem) = r0.divrem(&r1)?;
        let s2 = &s0 - &(&quo * &s1);
        let t2 = &t0 - &(&quo * &t1);
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let inv = r0.lead().recip();
    Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
}

/// Chinese remainder for coprime moduli: the unique `R` with
/// `deg R < deg(P*Q)`, `R = rp mod P`, `R = rq mod Q`.
pub fn crt_pair(
    p: &LaurentPoly,
    rp: &LaurentPoly,
    q: &LaurentPoly,
    rq: &LaurentPoly,
) -> Result<LaurentPoly, ExactError> {
    let (g, u, _) = poly_ext_gcd(p, q)?;
    if !g.is_one() {
        return Err(ExactError::NotCoprime);
    }
    let rp = rp.rem(p)?;
    let rq = rq.rem(q)?;
    // u*p = 1 mod q
    let t = (&(rq - &rp) * &u).rem(q)?;
    let r = &rp + &(p * &t);
    r.rem(&(p * q))
}

fn add_into(a: &LaurentPoly, b: &LaurentPoly, negate_b: bool) -> LaurentPoly {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate_b { -b.clone() } else { b.clone() };
    }
    let lo = a.min_exp.min(b.min_exp);
    let hi = a.max_exp().unwrap().max(b.max_exp().unwrap());
    let mut v = vec![BigRat::zero(); (hi - lo + 1) as usize];
    for (i, c) in a.coeffs.iter().enumerate() {
        v[(a.min_exp - lo) as usize + i] += c;
    }
    for (i, c) in b.coeffs.iter().enumerate() {
        let slot = &mut v[(b.min_exp - lo) as usize + i];
        if negate_b {
            *slot -= c;
        } else {
            *slot += c;
        }
    }
    LaurentPoly::new(lo, v)
}

fn mul_poly(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() || b.is_zero() {
        return LaurentPoly::zero();
    }
    let mut v = vec![BigRat::zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            if !y.is_zero() {
                v[i + j] += x * y;
            }
        }
    }
    LaurentPoly::new(a.min_exp + b.min_exp, v)
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                $body(self, rhs)
            }
        }
        impl $trait<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                $body(&self, &rhs)
            }
        }
        impl $trait<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                $body(&self, rhs)
            }
        }
        impl $trait<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| add_into(a, b, false));
forward_binop!(Sub, sub, |a, b| add_into(a, b, true));
forward_binop!(Mul, mul, mul_poly);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in &mut self.coeffs {
            *c = -c.clone();
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("q"))
    }
}
