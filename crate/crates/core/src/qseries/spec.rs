//! Structured descriptions of summands, prefactors and truncated sums.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};

use crate::exact::rat::{rat, BigRat};
use crate::exact::{Fraction, Product};

use super::expo::ExpPoly;
use super::monomial::{Monomial, Param, Params};
use super::prefactors;
use super::SeriesError;

/// Which of the two admissible truncation points the selectable bound uses.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum MMode {
    /// `M = (n+1)/2`
    Half,
    /// `M = n-1`
    NMinus1,
}

impl MMode {
    pub const BOTH: [MMode; 2] = [MMode::Half, MMode::NMinus1];

    pub fn value(self, n: i64) -> i64 {
        match self {
            MMode::Half => (n + 1) / 2,
            MMode::NMinus1 => n - 1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            MMode::Half => "(n+1)/2",
            MMode::NMinus1 => "n-1",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Bound {
    /// `M`, either `(n+1)/2` or `n-1`.
    Selectable,
    HalfUp,
    NMinus1,
    /// `(n-3)/2`
    HalfDown3,
    Fixed(u32),
}

impl Bound {
    pub fn value(self, n: i64, mode: MMode) -> i64 {
        match self {
            Bound::Selectable => mode.value(n),
            Bound::HalfUp => (n + 1) / 2,
            Bound::NMinus1 => n - 1,
            Bound::HalfDown3 => (n - 3) / 2,
            Bound::Fixed(u) => u as i64,
        }
    }

    /// Largest index any truncation mode can reach.
    pub fn max_value(self, n: i64) -> i64 {
        match self {
            Bound::Selectable => MMode::Half.value(n).max(MMode::NMinus1.value(n)),
            other => other.value(n, MMode::Half),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Named {
    Omega,
    Theta,
    Rq,
    Sq,
}

impl Named {
    pub fn keyword(self) -> &'static str {
        match self {
            Named::Omega => "omega",
            Named::Theta => "theta",
            Named::Rq => "rq",
            Named::Sq => "sq",
        }
    }

    pub fn required_params(self) -> &'static [Param] {
        match self {
            Named::Omega => &[],
            Named::Theta => &[Param::A, Param::B],
            Named::Rq | Named::Sq => &[Param::A],
        }
    }

    fn eval(self, n: i64, params: &Params) -> Result<Product, SeriesError> {
        let r = match self {
            Named::Omega => prefactors::omega(n)?,
            Named::Theta => prefactors::theta(n, params.get(Param::A)?, params.get(Param::B)?)?,
            Named::Rq => prefactors::proof_prefactor(prefactors::ProofStep::Rq, n, params.get(Param::A)?)?,
            Named::Sq => prefactors::proof_prefactor(prefactors::ProofStep::Sq, n, params.get(Param::A)?)?,
        };
        Ok(Product::from_ratfn(&r))
    }
}

/// `(base; q^step)_len ^ power`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Poch {
    pub base: Monomial,
    pub step: i64,
    pub len: ExpPoly,
    pub power: i64,
}

/// A product of factors that may depend on `k`, `n` and the parameters.
///
/// Two specs describing the same product compare equal after
/// [`TermSpec::normalized`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TermSpec {
    pub constant: BigRat,
    /// Carries a factor `(-1)^k`.
    pub sign_k: bool,
    pub q_exp: ExpPoly,
    /// Monomials without a `q` part raised to exponent expressions.
    pub mono_pows: Vec<(Monomial, ExpPoly)>,
    /// q-integers `[arg]^power`.
    pub qints: Vec<(ExpPoly, i64)>,
    pub pochs: Vec<Poch>,
    pub named: Vec<(Named, i64)>,
}

impl Default for TermSpec {
    fn default() -> Self {
        Self::one()
    }
}

impl TermSpec {
    pub fn one() -> Self {
        TermSpec {
            constant: BigRat::one(),
            sign_k: false,
            q_exp: ExpPoly::zero(),
            mono_pows: Vec::new(),
            qints: Vec::new(),
            pochs: Vec::new(),
            named: Vec::new(),
        }
    }

    pub fn zero() -> Self {
        TermSpec { constant: BigRat::zero(), ..Self::one() }
    }

    pub fn constant(mut self, c: BigRat) -> Self {
        self.constant *= c;
        self
    }

    pub fn sign_k(mut self) -> Self {
        self.sign_k = !self.sign_k;
        self
    }

    pub fn q_pow(mut self, e: ExpPoly) -> Self {
        self.q_exp = self.q_exp + e;
        self
    }

    pub fn mono_pow(mut self, m: Monomial, e: ExpPoly) -> Self {
        self.mono_pows.push((m, e));
        self
    }

    pub fn qint(mut self, arg: ExpPoly, power: i64) -> Self {
        self.qints.push((arg, power));
        self
    }

    /// `(base; q^2)_len ^ power`.
    pub fn poch(mut self, base: Monomial, len: ExpPoly, power: i64) -> Self {
        self.pochs.push(Poch { base, step: 2, len, power });
        self
    }

    pub fn named(mut self, which: Named, power: i64) -> Self {
        self.named.push((which, power));
        self
    }

    /// Concatenation of two products.
    pub fn mul_spec(mut self, other: &TermSpec) -> Self {
        self.constant *= &other.constant;
        self.sign_k ^= other.sign_k;
        self.q_exp = self.q_exp + other.q_exp.clone();
        self.mono_pows.extend(other.mono_pows.iter().cloned());
        self.qints.extend(other.qints.iter().cloned());
        self.pochs.extend(other.pochs.iter().cloned());
        self.named.extend(other.named.iter().cloned());
        self
    }

    /// Several `(base; q^2)_len` factors sharing a length and a power.
    pub fn pochs(self, bases: impl IntoIterator<Item = Monomial>, len: &ExpPoly, power: i64) -> Self {
        bases.into_iter().fold(self, |t, b| t.poch(b, len.clone(), power))
    }

    /// Canonical form: `q` parts of monomial powers folded into `q_exp`,
    /// equal keys merged, zero powers dropped, everything sorted.
    pub fn normalized(&self) -> TermSpec {
        let mut q_exp = self.q_exp.clone();
        let mut sign_k = self.sign_k;
        let mut monos: BTreeMap<ExpPoly, Monomial> = BTreeMap::new();
        for (m, e) in &self.mono_pows {
            if m.q_exp != 0 {
                q_exp = q_exp + e.clone() * m.q_exp;
            }
            let rest = Monomial { q_exp: 0, ..m.clone() };
            let slot = monos.entry(e.clone()).or_insert_with(Monomial::one);
            *slot = slot.mul(&rest);
        }
        let mut mono_pows = Vec::new();
        for (e, mut m) in monos {
            if e.is_k() && m.coeff.is_negative() {
                sign_k = !sign_k;
                m.coeff = -m.coeff;
            }
            if e.is_zero() || (!m.has_params() && m.coeff.is_one()) {
                continue;
            }
            mono_pows.push((m, e));
        }

        let mut qints: BTreeMap<ExpPoly, i64> = BTreeMap::new();
        for (a, p) in &self.qints {
            *qints.entry(a.clone()).or_insert(0) += p;
        }
        let mut pochs: BTreeMap<(Monomial, i64, ExpPoly), i64> = BTreeMap::new();
        for p in &self.pochs {
            *pochs.entry((p.base.clone(), p.step, p.len.clone())).or_insert(0) += p.power;
        }
        let mut named: BTreeMap<Named, i64> = BTreeMap::new();
        for (w, p) in &self.named {
            *named.entry(*w).or_insert(0) += p;
        }
        if self.constant.is_zero() {
            return TermSpec::zero();
        }
        TermSpec {
            constant: self.constant.clone(),
            sign_k,
            q_exp,
            mono_pows,
            qints: qints.into_iter().filter(|(_, p)| *p != 0).collect(),
            pochs: pochs
                .into_iter()
                .filter(|(_, p)| *p != 0)
                .map(|((base, step, len), power)| Poch { base, step, len, power })
                .collect(),
            named: named.into_iter().filter(|(_, p)| *p != 0).collect(),
        }
    }

    /// Whether any factor varies with the summation index.
    pub fn depends_on_k(&self) -> bool {
        self.sign_k
            || self.q_exp.depends_on_k()
            || self.mono_pows.iter().any(|(_, e)| e.depends_on_k())
            || self.qints.iter().any(|(a, _)| a.depends_on_k())
            || self.pochs.iter().any(|p| p.len.depends_on_k())
    }

    /// Every parameter that evaluation will look up.
    pub fn mentions(&self) -> BTreeSet<Param> {
        let mut out = BTreeSet::new();
        for (m, _) in &self.mono_pows {
            out.extend(m.mentions());
        }
        for p in &self.pochs {
            out.extend(p.base.mentions());
        }
        for (w, _) in &self.named {
            out.extend(w.required_params().iter().copied());
        }
        out
    }

    pub fn eval(&self, k: i64, n: i64, params: &Params) -> Result<Product, SeriesError> {
        let int =
            |e: &ExpPoly| e.eval(k, n).ok_or_else(|| SeriesError::NonIntegralExponent(format!("{e} at k={k}, n={n}")));
        if self.constant.is_zero() {
            return Ok(Product::zero());
        }
        let mut acc = Product::monomial(self.constant.clone(), int(&self.q_exp)?);
        if self.sign_k && k % 2 != 0 {
            acc = acc.mul(&Product::constant(rat(-1)));
        }
        for (m, e) in &self.mono_pows {
            let (c, qe) = m.eval(params)?;
            let e = int(e)?;
            acc = acc.mul(&Product::monomial(c, qe).pow(e)?);
        }
        for (arg, p) in &self.qints {
            acc = acc.mul(
                &qint_product(int(arg)?)
                    .pow(*p)
                    .map_err(|_| SeriesError::Degenerate(format!("[{arg}] vanishes in a denominator")))?,
            );
        }
        for p in &self.pochs {
            let len = int(&p.len)?;
            if len < 0 {
                return Err(SeriesError::Degenerate(format!("negative Pochhammer length {len}")));
            }
            let (c, qe) = p.base.eval(params)?;
            let value = poch_product(&c, qe, p.step, len as u64);
            acc = acc.mul(&value.pow(p.power).map_err(|_| {
                SeriesError::Degenerate(format!("({}; q^{})_{} vanishes in a denominator", p.base, p.step, len))
            })?);
        }
        for (w, p) in &self.named {
            acc = acc.mul(&w.eval(n, params)?.pow(*p)?);
        }
        Ok(acc)
    }
}

/// `[m] = (1 - q^m)/(1 - q)` for any integer `m`.
pub fn qint_product(m: i64) -> Product {
    if m == 0 {
        return Product::zero();
    }
    Product::binomial(&BigRat::one(), m).div(&Product::binomial(&BigRat::one(), 1)).expect("1 - q is nonzero")
}

/// `prod_{j<len} (1 - c q^{e + step*j})`.
pub fn poch_product(c: &BigRat, e: i64, step: i64, len: u64) -> Product {
    (0..len as i64).fold(Product::one(), |acc, j| acc.mul(&Product::binomial(c, e + step * j)))
}

/// A truncated sum `prefactor * sum_{k=0}^{upper} term(k)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SumSpec {
    pub upper: Bound,
    pub term: TermSpec,
    pub prefactor: TermSpec,
}

impl SumSpec {
    pub fn new(upper: Bound, term: TermSpec, prefactor: TermSpec) -> Self {
        SumSpec { upper, term: term.normalized(), prefactor: prefactor.normalized() }
    }

    /// A side with no sum at all: the prefactor alone.
    pub fn closed_form(prefactor: TermSpec) -> Self {
        Self::new(Bound::Fixed(0), TermSpec::one(), prefactor)
    }

    pub fn zero() -> Self {
        Self::new(Bound::Fixed(0), TermSpec::zero(), TermSpec::one())
    }

    pub fn mentions(&self) -> BTreeSet<Param> {
        let mut s = self.term.mentions();
        s.extend(self.prefactor.mentions());
        s
    }

    pub fn term_at(&self, k: i64, n: i64, params: &Params) -> Result<Product, SeriesError> {
        let max = self.upper.max_value(n);
        if k < 0 || k > max {
            return Err(SeriesError::IndexOutOfRange { k, max });
        }
        self.term.eval(k, n, params)
    }

    pub fn terms(&self, n: i64, mode: MMode, params: &Params) -> Result<Vec<Product>, SeriesError> {
        let upper = self.upper.value(n, mode);
        (0..=upper).map(|k| self.term.eval(k, n, params)).collect()
    }

    /// Prefactor times the sum, assembled over a common denominator but
    /// not yet reduced.
    pub fn evaluate(&self, n: i64, mode: MMode, params: &Params) -> Result<Fraction, SeriesError> {
        let terms = self.terms(n, mode, params)?;
        let pre = self.prefactor.eval(0, n, params)?;
        Ok(Fraction::sum(&terms).mul_product(&pre))
    }
}
