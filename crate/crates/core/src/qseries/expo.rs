//! Exponent expressions: polynomials of degree at most two in the summation
//! index `k` and the modulus index `n`, with rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::rat::{rat, BigRat};

/// Coefficients of `1, k, n, k^2, k*n, n^2`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ExpPoly([BigRat; 6]);

const ONE: usize = 0;
const K: usize = 1;
const N: usize = 2;
const KK: usize = 3;
const KN: usize = 4;
const NN: usize = 5;

impl Default for ExpPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl ExpPoly {
    pub fn zero() -> Self {
        ExpPoly(std::array::from_fn(|_| BigRat::zero()))
    }

    pub fn constant(c: i64) -> Self {
        Self::constant_rat(rat(c))
    }

    pub fn constant_rat(c: BigRat) -> Self {
        let mut e = Self::zero();
        e.0[ONE] = c;
        e
    }

    pub fn k() -> Self {
        let mut e = Self::zero();
        e.0[K] = BigRat::one();
        e
    }

    pub fn n() -> Self {
        let mut e = Self::zero();
        e.0[N] = BigRat::one();
        e
    }

    /// `alpha*k + beta`.
    pub fn linear_k(alpha: i64, beta: i64) -> Self {
        Self::k() * alpha + Self::constant(beta)
    }

    /// `(alpha*n + beta) / den`.
    pub fn linear_n(alpha: i64, beta: i64, den: i64) -> Self {
        (Self::n() * alpha + Self::constant(beta)).div_int(den)
    }

    /// `alpha*k^2 + beta*k`.
    pub fn quad_k(alpha: i64, beta: i64) -> Self {
        let mut e = Self::k() * beta;
        e.0[KK] = rat(alpha);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn as_constant(&self) -> Option<&BigRat> {
        self.0[1..].iter().all(Zero::is_zero).then_some(&self.0[ONE])
    }

    pub fn depends_on_k(&self) -> bool {
        !(self.0[K].is_zero() && self.0[KK].is_zero() && self.0[KN].is_zero())
    }

    pub fn is_k(&self) -> bool {
        *self == Self::k()
    }

    pub fn div_int(&self, d: i64) -> Self {
        let d = rat(d);
        ExpPoly(std::array::from_fn(|i| &self.0[i] / &d))
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        ExpPoly(std::array::from_fn(|i| &self.0[i] * c))
    }

    /// Product, or `None` when the degree would exceed two.
    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        if let Some(c) = self.as_constant() {
            return Some(other.scale(c));
        }
        if let Some(c) = other.as_constant() {
            return Some(self.scale(c));
        }
        let lin = |e: &Self| e.0[KK].is_zero() && e.0[KN].is_zero() && e.0[NN].is_zero();
        if !lin(self) || !lin(other) {
            return None;
        }
        let (a, b) = (&self.0, &other.0);
        let mut out = Self::zero();
        out.0[ONE] = &a[ONE] * &b[ONE];
        out.0[K] = &a[ONE] * &b[K] + &a[K] * &b[ONE];
        out.0[N] = &a[ONE] * &b[N] + &a[N] * &b[ONE];
        out.0[KK] = &a[K] * &b[K];
        out.0[KN] = &a[K] * &b[N] + &a[N] * &b[K];
        out.0[NN] = &a[N] * &b[N];
        Some(out)
    }

    pub fn eval_rat(&self, k: i64, n: i64) -> BigRat {
        let (k, n) = (rat(k), rat(n));
        let c = &self.0;
        &c[ONE] + &c[K] * &k + &c[N] * &n + &c[KK] * &k * &k + &c[KN] * &k * &n + &c[NN] * &n * &n
    }

    /// Integer value at `(k, n)`, or `None` if it is fractional.
    pub fn eval(&self, k: i64, n: i64) -> Option<i64> {
        let v = self.eval_rat(k, n);
        if !v.is_integer() {
            return None;
        }
        i64::try_from(v.to_integer()).ok()
    }
}

impl Add for ExpPoly {
    type Output = ExpPoly;
    fn add(self, rhs: ExpPoly) -> ExpPoly {
        ExpPoly(std::array::from_fn(|i| &self.0[i] + &rhs.0[i]))
    }
}

impl Sub for ExpPoly {
    type Output = ExpPoly;
    fn sub(self, rhs: ExpPoly) -> ExpPoly {
        self + (-rhs)
    }
}

impl Neg for ExpPoly {
    type Output = ExpPoly;
    fn neg(self) -> ExpPoly {
        ExpPoly(std::array::from_fn(|i| -self.0[i].clone()))
    }
}

impl Mul<i64> for ExpPoly {
    type Output = ExpPoly;
    fn mul(self, rhs: i64) -> ExpPoly {
        self.scale(&rat(rhs))
    }
}

/// Canonical text: `k^2+5*k`, `(n+1)/2`, `(n^2-2*n-3)/4`, `-1`.
impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den = self.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let order = [(KK, "k^2"), (KN, "k*n"), (NN, "n^2"), (K, "k"), (N, "n"), (ONE, "")];
        let mut body = String::new();
        for (idx, name) in order {
            let c = (&self.0[idx] * BigRat::from_integer(den.clone())).to_integer();
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if neg {
                body.push('-');
            } else if !body.is_empty() {
                body.push('+');
            }
            if name.is_empty() {
                body.push_str(&mag.to_string());
            } else if mag.is_one() {
                body.push_str(name);
            } else {
                body.push_str(&format!("{mag}*{name}"));
            }
        }
        if body.is_empty() {
            body.push('0');
        }
        if den.is_one() {
            f.write_str(&body)
        } else {
            write!(f, "({body})/{den}")
        }
    }
}
