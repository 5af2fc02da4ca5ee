//! Free parameters and monomials `coeff * a^i b^j c^k d^l * q^e`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::exact::rat::{rat_pow, BigRat};

use super::SeriesError;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Param {
    A,
    B,
    C,
    D,
    /// Extra variable of the reflection formula used in the lemma proof.
    X,
}

impl Param {
    pub const MONOMIAL_PARAMS: [Param; 4] = [Param::A, Param::B, Param::C, Param::D];

    pub fn symbol(self) -> char {
        match self {
            Param::A => 'a',
            Param::B => 'b',
            Param::C => 'c',
            Param::D => 'd',
            Param::X => 'x',
        }
    }

    pub fn from_symbol(c: char) -> Option<Param> {
        Some(match c {
            'a' => Param::A,
            'b' => Param::B,
            'c' => Param::C,
            'd' => Param::D,
            'x' => Param::X,
            _ => return None,
        })
    }
}

/// An exact rational value for each parameter in use.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Params(BTreeMap<Param, BigRat>);

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, p: Param, v: BigRat) -> Self {
        self.0.insert(p, v);
        self
    }

    pub fn set(&mut self, p: Param, v: BigRat) {
        self.0.insert(p, v);
    }

    pub fn get(&self, p: Param) -> Result<&BigRat, SeriesError> {
        self.0.get(&p).ok_or(SeriesError::UnassignedParameter(p.symbol()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Param, &BigRat)> {
        self.0.iter().map(|(&p, v)| (p, v))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Restriction to the given parameters.
    pub fn restrict(&self, keep: &[Param]) -> Params {
        Params(self.0.iter().filter(|(p, _)| keep.contains(p)).map(|(&p, v)| (p, v.clone())).collect())
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(p, v)| format!("{}={}", p.symbol(), v)).collect();
        f.write_str(&parts.join(", "))
    }
}

/// `coeff * a^e_a * b^e_b * c^e_c * d^e_d * q^q_exp` with `coeff != 0`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial {
    pub params: [i64; 4],
    pub q_exp: i64,
    pub coeff: BigRat,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { params: [0; 4], q_exp: 0, coeff: BigRat::one() }
    }

    pub fn q(e: i64) -> Self {
        Monomial { q_exp: e, ..Self::one() }
    }

    pub fn constant(c: BigRat) -> Self {
        assert!(!c.is_zero(), "monomial coefficient must be nonzero");
        Monomial { coeff: c, ..Self::one() }
    }

    /// Multiplies in `p^e`; `p` must be one of a, b, c, d.
    pub fn times(mut self, p: Param, e: i64) -> Self {
        let idx = Self::slot(p);
        self.params[idx] += e;
        self
    }

    pub fn with_coeff(mut self, c: BigRat) -> Self {
        assert!(!c.is_zero(), "monomial coefficient must be nonzero");
        self.coeff = c;
        self
    }

    fn slot(p: Param) -> usize {
        match p {
            Param::A => 0,
            Param::B => 1,
            Param::C => 2,
            Param::D => 3,
            Param::X => panic!("x is not a monomial parameter"),
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            params: std::array::from_fn(|i| self.params[i] + other.params[i]),
            q_exp: self.q_exp + other.q_exp,
            coeff: &self.coeff * &other.coeff,
        }
    }

    pub fn has_params(&self) -> bool {
        self.params.iter().any(|&e| e != 0)
    }

    pub fn mentions(&self) -> impl Iterator<Item = Param> + '_ {
        Param::MONOMIAL_PARAMS.into_iter().filter(|&p| self.params[Self::slot(p)] != 0)
    }

    /// `(value, q exponent)` after substituting the parameters.
    pub fn eval(&self, params: &Params) -> Result<(BigRat, i64), SeriesError> {
        let mut c = self.coeff.clone();
        for p in Param::MONOMIAL_PARAMS {
            let e = self.params[Self::slot(p)];
            if e != 0 {
                let v = params.get(p)?;
                if v.is_zero() {
                    return Err(SeriesError::Degenerate(format!("parameter {} is zero", p.symbol())));
                }
                c *= rat_pow(v, e);
            }
        }
        Ok((c, self.q_exp))
    }
}

/// Canonical text: `-3/2*a*q^-1*b^-1`, `q^2`, `1`.
impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        let mag = self.coeff.abs();
        if !mag.is_one() {
            parts.push(mag.to_string());
        }
        for p in Param::MONOMIAL_PARAMS {
            match self.params[Self::slot(p)] {
                0 => {}
                1 => parts.push(p.symbol().to_string()),
                e => parts.push(format!("{}^{}", p.symbol(), e)),
            }
        }
        match self.q_exp {
            0 => {}
            1 => parts.push("q".into()),
            e => parts.push(format!("q^{e}")),
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        if self.coeff.is_negative() {
            f.write_str("-")?;
        }
        f.write_str(&parts.join("*"))
    }
}
