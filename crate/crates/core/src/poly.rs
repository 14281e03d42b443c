//! Sparse bivariate Laurent polynomials over the rationals.
//!
//! Exponents live in `(1/2)·Z` and are stored doubled ([`HalfInt`]), so the
//! half-integer delta-matroid rank never needs floating point. Coefficients
//! are arbitrary-precision rationals. Terms are kept in a `BTreeMap` keyed by
//! `(ex, ey)`, which is also the canonical serialization order.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A number of the form `k/2`, stored as `k`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt {
    doubled: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { doubled: 0 };
    pub const ONE: HalfInt = HalfInt { doubled: 2 };

    pub const fn from_int(n: i64) -> Self {
        HalfInt { doubled: 2 * n }
    }

    pub const fn from_doubled(doubled: i64) -> Self {
        HalfInt { doubled }
    }

    pub const fn doubled(self) -> i64 {
        self.doubled
    }

    pub const fn is_integer(self) -> bool {
        self.doubled % 2 == 0
    }

    pub fn to_int(self) -> Option<i64> {
        self.is_integer().then_some(self.doubled / 2)
    }

    pub fn is_negative(self) -> bool {
        self.doubled < 0
    }

    pub fn to_rational(self) -> BigRational {
        BigRational::new(BigInt::from(self.doubled), BigInt::from(2))
    }

    /// Exact conversion; `None` unless the denominator divides 2.
    pub fn from_rational(r: &BigRational) -> Option<Self> {
        let twice = r * BigRational::from_integer(BigInt::from(2));
        if !twice.is_integer() {
            return None;
        }
        twice.to_integer().to_i64().map(HalfInt::from_doubled)
    }
}

impl From<i64> for HalfInt {
    fn from(n: i64) -> Self {
        HalfInt::from_int(n)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_doubled(self.doubled + rhs.doubled)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_doubled(self.doubled - rhs.doubled)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::from_doubled(-self.doubled)
    }
}

impl Mul<i64> for HalfInt {
    type Output = HalfInt;
    fn mul(self, rhs: i64) -> HalfInt {
        HalfInt::from_doubled(self.doubled * rhs)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_int() {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "{}/2", self.doubled),
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let r = parse_rational(s)?;
        HalfInt::from_rational(&r).ok_or_else(|| Error::parse(format!("`{s}` is not a half-integer")))
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match &v {
            serde_json::Value::String(s) => s.parse().map_err(D::Error::custom),
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(HalfInt::from_int)
                .ok_or_else(|| D::Error::custom(format!("`{n}` is not an integer"))),
            other => Err(D::Error::custom(format!("expected half-integer, got {other}"))),
        }
    }
}

/// Parses `"p/q"` or `"p"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = || Error::parse(format!("`{s}` is not a rational number"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

pub fn rational_to_string(r: &BigRational) -> String {
    r.to_string()
}

pub(crate) fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| BigRational::new(n, d))
}

/// `base^k` for a half-integer `k`.
///
/// Fractional powers are only defined at squares of rationals; the
/// nonnegative square root is taken.
pub fn rational_pow(base: &BigRational, k: HalfInt) -> Result<BigRational> {
    if base.is_zero() {
        return match k.doubled().signum() {
            0 => Ok(BigRational::one()),
            1 => Ok(BigRational::zero()),
            _ => Err(Error::Domain(format!("0 raised to negative power {k}"))),
        };
    }
    let (root, e) = if k.is_integer() {
        (base.clone(), k.doubled() / 2)
    } else {
        let root = rational_sqrt(base).ok_or_else(|| {
            Error::Unsupported(format!("{base} raised to fractional power {k}"))
        })?;
        (root, k.doubled())
    };
    let e = i32::try_from(e).map_err(|_| Error::Resource(format!("exponent {k} too large")))?;
    Ok(root.pow(e))
}

type Exponent = (HalfInt, HalfInt);

/// Sparse Laurent polynomial in `x`, `y` with exponents in `(1/2)·Z`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BiLaurent {
    terms: BTreeMap<Exponent, BigRational>,
}

impl BiLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, HalfInt::ZERO, HalfInt::ZERO)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(int(c))
    }

    pub fn x() -> Self {
        Self::monomial(BigRational::one(), HalfInt::ONE, HalfInt::ZERO)
    }

    pub fn y() -> Self {
        Self::monomial(BigRational::one(), HalfInt::ZERO, HalfInt::ONE)
    }

    pub fn monomial(c: BigRational, ex: HalfInt, ey: HalfInt) -> Self {
        let mut p = Self::zero();
        p.add_term(ex, ey, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order: ascending `(ex, ey)`.
    pub fn terms(&self) -> impl Iterator<Item = (HalfInt, HalfInt, &BigRational)> {
        self.terms.iter().map(|(&(ex, ey), c)| (ex, ey, c))
    }

    pub fn coeff(&self, ex: HalfInt, ey: HalfInt) -> BigRational {
        self.terms.get(&(ex, ey)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, ex: HalfInt, ey: HalfInt, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((ex, ey)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BiLaurent { terms: self.terms.iter().map(|(&e, v)| (e, v * c)).collect() }
    }

    /// Multiplies by `x^ex y^ey`.
    pub fn shift_exponents(&self, ex: HalfInt, ey: HalfInt) -> Self {
        BiLaurent { terms: self.terms.iter().map(|(&(a, b), v)| ((a + ex, b + ey), v.clone())).collect() }
    }

    /// True when every exponent is a nonnegative integer.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|&(a, b)| a.is_integer() && b.is_integer() && !a.is_negative() && !b.is_negative())
    }

    pub fn has_integer_exponents(&self) -> bool {
        self.terms.keys().all(|&(a, b)| a.is_integer() && b.is_integer())
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&(HalfInt::ZERO, HalfInt::ZERO)).cloned(),
            _ => None,
        }
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn swap_variables(&self) -> Self {
        BiLaurent { terms: self.terms.iter().map(|(&(a, b), v)| ((b, a), v.clone())).collect() }
    }

    pub fn pow_int(&self, k: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `self^k` for a half-integer `k`.
    ///
    /// Monomials admit any exponent that keeps the result in `(1/2)·Z`
    /// (the coefficient is raised with [`rational_pow`]); other polynomials
    /// only admit nonnegative integer powers.
    pub fn pow(&self, k: HalfInt) -> Result<Self> {
        if k == HalfInt::ZERO {
            return Ok(Self::one());
        }
        if self.is_zero() {
            return if k.is_negative() {
                Err(Error::Domain(format!("zero polynomial raised to power {k}")))
            } else {
                Ok(Self::zero())
            };
        }
        if self.terms.len() == 1 {
            let (&(a, b), c) = self.terms.iter().next().expect("one term");
            let scale = |e: HalfInt| -> Result<HalfInt> {
                let p = e.doubled() * k.doubled();
                if p % 2 != 0 {
                    return Err(Error::Unsupported(format!("exponent {e} raised to power {k} is not a half-integer")));
                }
                Ok(HalfInt::from_doubled(p / 2))
            };
            return Ok(Self::monomial(rational_pow(c, k)?, scale(a)?, scale(b)?));
        }
        match k.to_int() {
            Some(n) if n >= 0 => Ok(self.pow_int(
                u32::try_from(n).map_err(|_| Error::Resource(format!("power {k} too large")))?,
            )),
            _ => Err(Error::Unsupported(format!("polynomial with {} terms raised to power {k}", self.terms.len()))),
        }
    }

    /// Exact value at `(x0, y0)`.
    pub fn eval(&self, x0: &BigRational, y0: &BigRational) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (&(a, b), c) in &self.terms {
            acc += c * rational_pow(x0, a)? * rational_pow(y0, b)?;
        }
        Ok(acc)
    }

    /// Substitutes `x = x0`, leaving a Laurent polynomial in `y`.
    pub fn eval_x(&self, x0: &BigRational) -> Result<Self> {
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            out.add_term(HalfInt::ZERO, b, c * rational_pow(x0, a)?);
        }
        Ok(out)
    }

    /// Substitutes `y = y0`, leaving a Laurent polynomial in `x`.
    pub fn eval_y(&self, y0: &BigRational) -> Result<Self> {
        Ok(self.swap_variables().eval_x(y0)?.swap_variables())
    }

    /// Substitutes `x -> x + dx`, `y -> y + dy`.
    ///
    /// Requires nonnegative integer exponents whenever the corresponding
    /// shift is nonzero, since otherwise the result is not a Laurent
    /// polynomial.
    pub fn translate(&self, dx: &BigRational, dy: &BigRational) -> Result<Self> {
        let power = |e: HalfInt, d: &BigRational, var_x: bool| -> Result<Self> {
            let var = if var_x { Self::x() } else { Self::y() };
            if d.is_zero() {
                return var.pow(e);
            }
            match e.to_int() {
                Some(n) if n >= 0 => Ok((&var + &Self::constant(d.clone())).pow_int(n as u32)),
                _ => Err(Error::Unsupported(format!("cannot translate term with exponent {e}"))),
            }
        };
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            let t = &power(a, dx, true)? * &power(b, dy, false)?;
            out += &t.scale(c);
        }
        Ok(out)
    }
}

impl fmt::Display for BiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest degree first reads more naturally
        for (i, (&(a, b), c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            for (v, e) in [("x", a), ("y", b)] {
                match e {
                    HalfInt::ZERO => {}
                    HalfInt::ONE => factors.push(v.to_string()),
                    e if e.is_integer() && !e.is_negative() => factors.push(format!("{v}^{e}")),
                    e => factors.push(format!("{v}^({e})")),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    if abs.is_integer() {
                        write!(f, "{abs}*")?;
                    } else {
                        write!(f, "({abs})*")?;
                    }
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl AddAssign<&BiLaurent> for BiLaurent {
    fn add_assign(&mut self, rhs: &BiLaurent) {
        for (&(a, b), c) in &rhs.terms {
            self.add_term(a, b, c.clone());
        }
    }
}

impl Add for &BiLaurent {
    type Output = BiLaurent;
    fn add(self, rhs: &BiLaurent) -> BiLaurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for BiLaurent {
    type Output = BiLaurent;
    fn add(mut self, rhs: BiLaurent) -> BiLaurent {
        self += &rhs;
        self
    }
}

impl Neg for &BiLaurent {
    type Output = BiLaurent;
    fn neg(self) -> BiLaurent {
        BiLaurent { terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect() }
    }
}

impl Neg for BiLaurent {
    type Output = BiLaurent;
    fn neg(self) -> BiLaurent {
        -&self
    }
}

impl Sub for &BiLaurent {
    type Output = BiLaurent;
    fn sub(self, rhs: &BiLaurent) -> BiLaurent {
        self + &(-rhs)
    }
}

impl Sub for BiLaurent {
    type Output = BiLaurent;
    fn sub(self, rhs: BiLaurent) -> BiLaurent {
        &self - &rhs
    }
}

impl Mul for &BiLaurent {
    type Output = BiLaurent;
    fn mul(self, rhs: &BiLaurent) -> BiLaurent {
        let mut out = BiLaurent::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for BiLaurent {
    type Output = BiLaurent;
    fn mul(self, rhs: BiLaurent) -> BiLaurent {
        &self * &rhs
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    x: String,
    y: String,
    c: String,
}

impl BiLaurent {
    pub(crate) fn to_term_json(&self) -> serde_json::Value {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(&(a, b), c)| TermJson { x: a.to_string(), y: b.to_string(), c: rational_to_string(c) })
            .collect();
        serde_json::to_value(terms).expect("terms serialize")
    }

    pub(crate) fn from_term_json(v: &serde_json::Value) -> Result<Self> {
        let terms: Vec<TermJson> =
            serde_json::from_value(v.clone()).map_err(|e| Error::parse(format!("polynomial terms: {e}")))?;
        let mut out = BiLaurent::zero();
        for t in terms {
            let key = (t.x.parse::<HalfInt>()?, t.y.parse::<HalfInt>()?);
            if out.terms.contains_key(&key) {
                return Err(Error::parse(format!("duplicate exponent ({}, {})", key.0, key.1)));
            }
            let c = parse_rational(&t.c)?;
            if !c.is_zero() {
                out.terms.insert(key, c);
            }
        }
        Ok(out)
    }
}

impl Serialize for BiLaurent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serde_json::Map::new();
        map.insert("terms".into(), self.to_term_json());
        serde_json::Value::Object(map).serialize(s)
    }
}

impl<'de> Deserialize<'de> for BiLaurent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let obj = v.as_object().ok_or_else(|| D::Error::custom("expected an object"))?;
        if obj.keys().any(|k| k != "terms") {
            return Err(D::Error::custom("unexpected key in polynomial"));
        }
        let terms = obj.get("terms").ok_or_else(|| D::Error::custom("missing `terms`"))?;
        BiLaurent::from_term_json(terms).map_err(D::Error::custom)
    }
}
