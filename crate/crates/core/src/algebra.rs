//! Exact polynomials in `q`, `t`, `s` with big-integer coefficients, and
//! rational functions built from them.
//!
//! Every generating function in the crate is a [`MultiPoly`]. Terms are kept
//! in a `BTreeMap` keyed by the exponent triple `(e_q, e_t, e_s)`, with zero
//! coefficients never stored, so two polynomials are equal exactly when their
//! term maps are equal.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exponent triple `(e_q, e_t, e_s)`.
pub type Exponents = [u64; 3];

/// A polynomial in `q`, `t`, `s` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Exponents, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, [0, 0, 0])
    }

    pub fn monomial(c: impl Into<BigInt>, exps: Exponents) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self { terms }
    }

    pub fn q() -> Self {
        Self::monomial(1, [1, 0, 0])
    }

    pub fn t() -> Self {
        Self::monomial(1, [0, 1, 0])
    }

    pub fn s() -> Self {
        Self::monomial(1, [0, 0, 1])
    }

    /// `q^e`.
    pub fn q_pow(e: u64) -> Self {
        Self::monomial(1, [e, 0, 0])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (lexicographic exponent) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: Exponents) -> BigInt {
        self.terms.get(&exps).cloned().unwrap_or_default()
    }

    /// Coefficients of a polynomial in `q` alone, from `q^0` up to the degree.
    ///
    /// Terms involving `t` or `s` are an error.
    pub fn q_coefficients(&self) -> Result<Vec<BigInt>> {
        let mut out: Vec<BigInt> = Vec::new();
        for (e, c) in &self.terms {
            if e[1] != 0 || e[2] != 0 {
                return Err(Error::Invariant(format!("{self} is not univariate in q")));
            }
            let idx = e[0] as usize;
            if out.len() <= idx {
                out.resize(idx + 1, BigInt::zero());
            }
            out[idx] = c.clone();
        }
        Ok(out)
    }

    /// Degree in `q` (`None` for the zero polynomial).
    pub fn q_degree(&self) -> Option<u64> {
        self.terms.keys().map(|e| e[0]).max()
    }

    /// Sum of all coefficients, i.e. the value at `q = t = s = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Substitute `t = a`, `s = b` for constants `a`, `b` in {0, 1}-like
    /// integer values, leaving a polynomial in `q`.
    pub fn specialize_ts(&self, t: i64, s: i64) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let factor = BigInt::from(t).pow(e[1] as u32) * BigInt::from(s).pow(e[2] as u32);
            out.add_term([e[0], 0, 0], c * factor);
        }
        out
    }

    /// Replace `q` by `q^m`.
    pub fn subst_q_power(&self, m: u64) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term([e[0] * m, e[1], e[2]], c.clone());
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn add_term(&mut self, exps: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    fn leading(&self) -> Option<(Exponents, &BigInt)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    /// Exact division. Fails with [`Error::InexactDivision`] if `divisor`
    /// does not divide `self` over the integers.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Result<MultiPoly> {
        let (lead_e, lead_c) = divisor.leading().ok_or(Error::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while let Some((e, c)) = rem.leading() {
            if !(0..3).all(|i| e[i] >= lead_e[i]) || !(c % lead_c).is_zero() {
                return Err(Error::InexactDivision { dividend: self.to_string(), divisor: divisor.to_string() });
            }
            let shift = [e[0] - lead_e[0], e[1] - lead_e[1], e[2] - lead_e[2]];
            let term = MultiPoly::monomial(c / lead_c, shift);
            rem = &rem - &(&term * divisor);
            quot = &quot + &term;
        }
        Ok(quot)
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], ca * cb);
            }
        }
        out
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for MultiPoly {
    fn sum<I: Iterator<Item = MultiPoly>>(iter: I) -> Self {
        iter.fold(MultiPoly::zero(), |acc, p| acc + p)
    }
}

impl std::iter::Product for MultiPoly {
    fn product<I: Iterator<Item = MultiPoly>>(iter: I) -> Self {
        iter.fold(MultiPoly::one(), |acc, p| acc * p)
    }
}

impl From<i64> for MultiPoly {
    fn from(c: i64) -> Self {
        MultiPoly::constant(c)
    }
}

impl fmt::Display for MultiPoly {
    /// Canonical text form, e.g. `1 + 2*q + 3*q^2*t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || *e == [0, 0, 0] {
                factors.push(mag.to_string());
            }
            for (var, &exp) in ["q", "t", "s"].iter().zip(e.iter()) {
                match exp {
                    0 => {}
                    1 => factors.push((*var).to_string()),
                    _ => factors.push(format!("{var}^{exp}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl FromStr for MultiPoly {
    type Err = Error;

    /// Parses the canonical text form (and any reordering of its terms).
    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a polynomial: {text:?}"));
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        // split into signed terms
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 {
                terms.push((negative, std::mem::take(&mut current)));
                negative = ch == '-';
            } else if ch == '-' && i == 0 {
                negative = true;
            } else {
                current.push(ch);
            }
        }
        terms.push((negative, current));

        let mut out = MultiPoly::zero();
        for (neg, body) in terms {
            if body.is_empty() {
                return Err(bad());
            }
            let mut coeff = BigInt::one();
            let mut exps = [0u64; 3];
            for factor in body.split('*') {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (b, e.parse::<u64>().map_err(|_| bad())?),
                    None => (factor, 1),
                };
                match base {
                    "q" => exps[0] += exp,
                    "t" => exps[1] += exp,
                    "s" => exps[2] += exp,
                    digits => {
                        let value: BigInt = digits.parse().map_err(|_| bad())?;
                        coeff *= value.pow(exp as u32);
                    }
                }
            }
            if neg {
                coeff = -coeff;
            }
            out.add_term(exps, coeff);
        }
        Ok(out)
    }
}

impl serde::Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for MultiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// A quotient of two polynomials with nonzero denominator.
///
/// No normalisation is attempted; equality is decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalFn {
    numerator: MultiPoly,
    denominator: MultiPoly,
}

impl RationalFn {
    pub fn new(numerator: MultiPoly, denominator: MultiPoly) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self { numerator, denominator })
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        Self { numerator: p, denominator: MultiPoly::one() }
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.denominator
    }

    /// The polynomial this function equals, if the division is exact.
    pub fn to_poly(&self) -> Result<MultiPoly> {
        self.numerator.div_exact(&self.denominator)
    }
}

impl PartialEq for RationalFn {
    fn eq(&self, other: &Self) -> bool {
        &self.numerator * &other.denominator == &other.numerator * &self.denominator
    }
}

impl Add<&RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &RationalFn) -> RationalFn {
        if self.denominator == rhs.denominator {
            return RationalFn { numerator: &self.numerator + &rhs.numerator, denominator: self.denominator.clone() };
        }
        RationalFn {
            numerator: &(&self.numerator * &rhs.denominator) + &(&rhs.numerator * &self.denominator),
            denominator: &self.denominator * &rhs.denominator,
        }
    }
}

impl Sub<&RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: &RationalFn) -> RationalFn {
        let negated = RationalFn { numerator: -&rhs.numerator, denominator: rhs.denominator.clone() };
        self + &negated
    }
}

impl Mul<&RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        RationalFn { numerator: &self.numerator * &rhs.numerator, denominator: &self.denominator * &rhs.denominator }
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator == MultiPoly::one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / ({})", self.numerator, self.denominator)
        }
    }
}

/// `[n]_q = 1 + q + ... + q^(n-1)`; `[0]_q = 0`.
pub fn qint(n: u64) -> MultiPoly {
    (0..n).map(MultiPoly::q_pow).sum()
}

/// `[n]_q! = [1]_q [2]_q ... [n]_q`.
pub fn qfact(n: u64) -> MultiPoly {
    (1..=n).map(qint).product()
}

/// Gaussian binomial `[a choose b]_q`, zero when `b < 0` or `b > a`.
pub fn qbinom(a: u64, b: i64) -> MultiPoly {
    if b < 0 || b as u64 > a {
        return MultiPoly::zero();
    }
    let b = b as u64;
    let denominator = &qfact(a - b) * &qfact(b);
    qfact(a).div_exact(&denominator).expect("Gaussian binomials divide exactly")
}

/// `(1 - q)`.
pub fn one_minus_q() -> MultiPoly {
    &MultiPoly::one() - &MultiPoly::q()
}

/// Ordinary binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
