//! Integers and rationals as canonicalized equivalence classes of pairs.
//!
//! An [`IntClass`] is the class of a pair `(a, b)` of naturals under
//! `(a, b) ~ (c, d) ⇔ a + d = b + c`, read as `a - b`. A [`RatClass`] is the
//! class of an integer pair `(p, q)` with `q ≠ 0` under cross-multiplication.
//! Both types store the unique canonical representative — `min(a, b) = 0` for
//! integers, lowest terms with positive denominator for rationals — so class
//! equality is plain representational equality.
//!
//! Arithmetic is defined on representatives with the standard formulas and
//! re-canonicalized afterwards; the choice of representative never shows in
//! the result. The originating construction gives only the technique, not
//! the formulas, so the relations used here are the usual textbook ones.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NumberError {
    /// A rational was requested with denominator zero.
    ZeroDenominator,
    /// The inverse of zero was requested.
    InverseOfZero,
    /// Text could not be read as a number.
    Parse(String),
}

impl fmt::Display for NumberError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ZeroDenominator => write!(f, "denominator is zero"),
            Self::InverseOfZero => write!(f, "zero has no inverse"),
            Self::Parse(s) => write!(f, "cannot parse {s:?} as a rational"),
        }
    }
}

impl std::error::Error for NumberError {}

// ---------------------------------------------------------------------------
// Integers
// ---------------------------------------------------------------------------

/// The class of a pair of naturals `(pos, neg)` representing `pos - neg`,
/// stored canonically with `min(pos, neg) = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntClass {
    pos: BigUint,
    neg: BigUint,
}

impl IntClass {
    /// Canonical representative of the class of `(a, b)`. Two pairs land in
    /// the same class exactly when `a + d = b + c`.
    pub fn from_pair(a: BigUint, b: BigUint) -> Self {
        match a.cmp(&b) {
            Ordering::Greater => Self {
                pos: a - b,
                neg: BigUint::zero(),
            },
            Ordering::Less => Self {
                pos: BigUint::zero(),
                neg: b - a,
            },
            Ordering::Equal => Self {
                pos: BigUint::zero(),
                neg: BigUint::zero(),
            },
        }
    }

    pub fn zero() -> Self {
        Self::from_pair(BigUint::zero(), BigUint::zero())
    }

    pub fn one() -> Self {
        Self::from(1u64)
    }

    /// The canonical pair `(a, b)` with `min(a, b) = 0`.
    pub fn canonical_pair(&self) -> (&BigUint, &BigUint) {
        (&self.pos, &self.neg)
    }

    /// Representative-level addition: `(a,b) + (c,d) = (a+c, b+d)`.
    pub fn add(&self, rhs: &Self) -> Self {
        Self::from_pair(&self.pos + &rhs.pos, &self.neg + &rhs.neg)
    }

    /// Representative-level multiplication:
    /// `(a,b)·(c,d) = (ac + bd, ad + bc)`.
    pub fn mul(&self, rhs: &Self) -> Self {
        Self::from_pair(
            &self.pos * &rhs.pos + &self.neg * &rhs.neg,
            &self.pos * &rhs.neg + &self.neg * &rhs.pos,
        )
    }

    /// Representative-level negation: `-(a,b) = (b,a)`.
    pub fn neg(&self) -> Self {
        Self::from_pair(self.neg.clone(), self.pos.clone())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn is_zero(&self) -> bool {
        self.pos.is_zero() && self.neg.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        !self.pos.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        !self.neg.is_zero()
    }

    /// Distance from zero as a natural; on canonical pairs one side is zero,
    /// so this is just the other side.
    pub fn magnitude(&self) -> BigUint {
        &self.pos + &self.neg
    }
}

impl PartialOrd for IntClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for IntClass {
    fn cmp(&self, other: &Self) -> Ordering {
        // (a,b) <= (c,d)  ⇔  a + d <= c + b
        (&self.pos + &other.neg).cmp(&(&other.pos + &self.neg))
    }
}

impl From<BigUint> for IntClass {
    fn from(n: BigUint) -> Self {
        Self::from_pair(n, BigUint::zero())
    }
}

impl From<u64> for IntClass {
    fn from(n: u64) -> Self {
        Self::from(BigUint::from(n))
    }
}

impl From<i64> for IntClass {
    fn from(n: i64) -> Self {
        if n >= 0 {
            Self::from(n as u64)
        } else {
            Self::from(n.unsigned_abs()).neg()
        }
    }
}

impl fmt::Display for IntClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_negative() {
            write!(f, "-{}", self.neg)
        } else {
            write!(f, "{}", self.pos)
        }
    }
}

impl FromStr for IntClass {
    type Err = NumberError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let (negate, digits) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t.strip_prefix('+').unwrap_or(t)),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(NumberError::Parse(s.to_string()));
        }
        let n: BigUint = digits.parse().expect("digits only");
        let v = Self::from(n);
        Ok(if negate { v.neg() } else { v })
    }
}

// ---------------------------------------------------------------------------
// Rationals
// ---------------------------------------------------------------------------

/// The class of `(p, q)` with integer `p`, nonzero integer `q`, under
/// `(p,q) ~ (r,s) ⇔ p·s = r·q`. Canonical form: lowest terms, denominator
/// at least one, sign carried by the numerator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatClass {
    num: IntClass,
    den: BigUint,
}

impl RatClass {
    /// Canonical representative of `p / q`; fails when `q` is zero.
    pub fn make(p: &IntClass, q: &IntClass) -> Result<Self, NumberError> {
        if q.is_zero() {
            return Err(NumberError::ZeroDenominator);
        }
        let num = if q.is_negative() { p.neg() } else { p.clone() };
        Ok(Self::reduce(num, q.magnitude()))
    }

    fn reduce(num: IntClass, den: BigUint) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self {
                num: IntClass::zero(),
                den: BigUint::one(),
            };
        }
        let g = num.magnitude().gcd(&den);
        let den = den / &g;
        let mag = num.magnitude() / g;
        let num = if num.is_negative() {
            IntClass::from(mag).neg()
        } else {
            IntClass::from(mag)
        };
        Self { num, den }
    }

    pub fn zero() -> Self {
        Self::from(0i64)
    }

    pub fn one() -> Self {
        Self::from(1i64)
    }

    pub fn numerator(&self) -> &IntClass {
        &self.num
    }

    pub fn denominator(&self) -> &BigUint {
        &self.den
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let num = self
            .num
            .mul(&IntClass::from(rhs.den.clone()))
            .add(&rhs.num.mul(&IntClass::from(self.den.clone())));
        Self::reduce(num, &self.den * &rhs.den)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::reduce(self.num.mul(&rhs.num), &self.den * &rhs.den)
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self, NumberError> {
        if self.num.is_zero() {
            return Err(NumberError::InverseOfZero);
        }
        let mag = IntClass::from(self.den.clone());
        let num = if self.num.is_negative() {
            mag.neg()
        } else {
            mag
        };
        Ok(Self {
            num,
            den: self.num.magnitude(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.num.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Decimal rendering truncated toward zero to exactly `digits` places.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = BigUint::from(10u32).pow(digits as u32);
        let scaled = self.num.magnitude() * &scale / &self.den;
        self.format_scaled(scaled, &scale, digits)
    }

    /// Decimal rendering rounded to nearest (half away from zero) to exactly
    /// `digits` places.
    pub fn to_decimal_rounded(&self, digits: usize) -> String {
        let scale = BigUint::from(10u32).pow(digits as u32);
        let twice = self.num.magnitude() * &scale * BigUint::from(2u32) / &self.den;
        let scaled = (twice + BigUint::from(1u32)) / BigUint::from(2u32);
        self.format_scaled(scaled, &scale, digits)
    }

    fn format_scaled(&self, scaled: BigUint, scale: &BigUint, digits: usize) -> String {
        let int_part = &scaled / scale;
        let frac_part = &scaled % scale;
        let sign = if self.is_negative() && !scaled.is_zero() {
            "-"
        } else {
            ""
        };
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part:0>width$}", width = digits)
        }
    }
}

impl PartialOrd for RatClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RatClass {
    fn cmp(&self, other: &Self) -> Ordering {
        // p/q <= r/s  ⇔  p·s <= r·q, denominators positive.
        self.num
            .mul(&IntClass::from(other.den.clone()))
            .cmp(&other.num.mul(&IntClass::from(self.den.clone())))
    }
}

impl From<IntClass> for RatClass {
    fn from(n: IntClass) -> Self {
        Self {
            num: n,
            den: BigUint::one(),
        }
    }
}

impl From<i64> for RatClass {
    fn from(n: i64) -> Self {
        Self::from(IntClass::from(n))
    }
}

impl From<u64> for RatClass {
    fn from(n: u64) -> Self {
        Self::from(IntClass::from(n))
    }
}

impl fmt::Display for RatClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for RatClass {
    type Err = NumberError;

    /// Accepts integers (`-2`), fractions (`-1/2`), decimals (`0.25`), and
    /// scientific notation (`1e-6`, `2.5e-3`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.is_empty() {
            return Err(NumberError::Parse(s.to_string()));
        }
        if let Some((num, den)) = t.split_once('/') {
            let p: IntClass = num.parse()?;
            let q: IntClass = den.parse().map_err(|_| NumberError::Parse(s.to_string()))?;
            return Self::make(&p, &q).map_err(|_| NumberError::Parse(s.to_string()));
        }

        let (mantissa, exponent) = match t.split_once(['e', 'E']) {
            Some((m, e)) => {
                let exp: i64 = e.parse().map_err(|_| NumberError::Parse(s.to_string()))?;
                (m, exp)
            }
            None => (t, 0),
        };

        let (int_text, frac_text) = match mantissa.split_once('.') {
            Some((i, f)) => (i, f),
            None => (mantissa, ""),
        };
        if !frac_text.bytes().all(|b| b.is_ascii_digit()) {
            return Err(NumberError::Parse(s.to_string()));
        }
        let int_part: IntClass = if int_text.is_empty() || int_text == "-" || int_text == "+" {
            return Err(NumberError::Parse(s.to_string()));
        } else {
            int_text
                .parse()
                .map_err(|_| NumberError::Parse(s.to_string()))?
        };

        // value = (int_part ± frac) · 10^exponent, sign distributing over
        // the fractional digits.
        let mut value = RatClass::from(int_part.clone());
        if !frac_text.is_empty() {
            let frac_digits: BigUint = frac_text.parse().expect("digits only");
            let denom = BigUint::from(10u32).pow(frac_text.len() as u32);
            let frac = Self::reduce(IntClass::from(frac_digits), denom);
            let frac = if int_part.is_negative() || int_text.starts_with('-') {
                frac.neg()
            } else {
                frac
            };
            value = value.add(&frac);
        }
        let ten = RatClass::from(10i64);
        let scale = if exponent >= 0 {
            let mut acc = RatClass::one();
            for _ in 0..exponent {
                acc = acc.mul(&ten);
            }
            acc
        } else {
            let mut acc = RatClass::one();
            for _ in 0..(-exponent) {
                acc = acc.mul(&ten);
            }
            acc.inv().expect("powers of ten are nonzero")
        };
        Ok(value.mul(&scale))
    }
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
