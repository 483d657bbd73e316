//! Exact arithmetic over Q and real quadratic fields Q(sqrt D).
//!
//! The scalar type [`Qfe`] stores `a + b*sqrt(D)` with arbitrary-precision
//! rational `a`, `b`. The rational subfield is marked by the sentinel
//! `d = 0` (with `b` forced to zero), so rational and quadratic values share
//! one type and collapse canonically whenever a computed `b` vanishes.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rational = num_rational::BigRational;

/// Largest argument accepted by [`squarefree_part`]; trial division stays
/// at desk scale below this.
pub const SQUAREFREE_BOUND: u64 = 1_000_000_000_000;

/// Default cap on the Pell-search index `y` in [`fundamental_unit`].
pub const UNIT_SEARCH_CAP: u64 = 100_000;

/// An element a + b*sqrt(d) of Q(sqrt d), with d = 0 denoting Q itself.
///
/// Values are kept canonical: `b == 0` implies `d == 0`. Together with
/// reduced rationals this makes structural equality coincide with equality
/// of real numbers, so the type can be hashed for cycle detection.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Qfe {
    a: Rational,
    b: Rational,
    d: u64,
}

impl Qfe {
    /// Builds a + b*sqrt(d), canonicalizing and checking that d is squarefree.
    pub fn new(a: Rational, b: Rational, d: u64) -> Result<Self> {
        if b.is_zero() {
            return Ok(Qfe { a, b, d: 0 });
        }
        if d == 0 {
            return Err(Error::BadDiscriminant(0));
        }
        if !is_squarefree(d) {
            return Err(Error::NotSquarefree(d));
        }
        if d == 1 {
            // sqrt(1) collapses into the rational part.
            return Ok(Qfe {
                a: a + b,
                b: Rational::zero(),
                d: 0,
            });
        }
        Ok(Qfe { a, b, d })
    }

    pub fn from_rational(a: Rational) -> Self {
        Qfe {
            a,
            b: Rational::zero(),
            d: 0,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(Int::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::new(Int::from(num), Int::from(den)))
    }

    /// sqrt(d) itself.
    pub fn sqrt_d(d: u64) -> Result<Self> {
        Qfe::new(Rational::zero(), Rational::one(), d)
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn surd_part(&self) -> &Rational {
        &self.b
    }

    pub fn field_d(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.is_rational() {
            Some(&self.a)
        } else {
            None
        }
    }

    /// The common field of two interoperating values, or an error when both
    /// are genuinely quadratic over different D.
    fn unify_d(&self, other: &Qfe) -> Result<u64> {
        match (self.d, other.d) {
            (0, d) | (d, 0) => Ok(d),
            (d1, d2) if d1 == d2 => Ok(d1),
            (d1, d2) => Err(Error::IncompatibleFields(d1, d2)),
        }
    }

    pub fn checked_add(&self, other: &Qfe) -> Result<Qfe> {
        let d = self.unify_d(other)?;
        Qfe::new(&self.a + &other.a, &self.b + &other.b, d)
    }

    pub fn checked_sub(&self, other: &Qfe) -> Result<Qfe> {
        let d = self.unify_d(other)?;
        Qfe::new(&self.a - &other.a, &self.b - &other.b, d)
    }

    pub fn checked_mul(&self, other: &Qfe) -> Result<Qfe> {
        let d = self.unify_d(other)?;
        let dr = Rational::from_integer(Int::from(d));
        let a = &self.a * &other.a + &self.b * &other.b * dr;
        let b = &self.a * &other.b + &self.b * &other.a;
        Qfe::new(a, b, d)
    }

    pub fn checked_div(&self, other: &Qfe) -> Result<Qfe> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ninv = other.norm().recip();
        let conj = other.conj();
        let num = self.checked_mul(&conj)?;
        Qfe::new(num.a * &ninv, num.b * &ninv, num.d)
    }

    pub fn neg(&self) -> Qfe {
        Qfe {
            a: -&self.a,
            b: -&self.b,
            d: self.d,
        }
    }

    /// The Galois conjugate a - b*sqrt(D); fixes rationals.
    pub fn conj(&self) -> Qfe {
        Qfe {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d,
        }
    }

    /// Field norm x * conj(x) = a^2 - b^2 D, always rational.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(Int::from(self.d))
    }

    /// Exact sign of the real number a + b*sqrt(D), no floating point.
    ///
    /// When a and b disagree in sign the outcome is decided by comparing
    /// a^2 against b^2 D.
    pub fn sign(&self) -> i8 {
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        // Mixed signs: |a| vs |b| sqrt(D) via squares.
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * Rational::from_integer(Int::from(self.d));
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0, // unreachable for squarefree d > 1 with b != 0
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    pub fn abs(&self) -> Qfe {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Ordering consistent with real-number order, as sign(self - other).
    pub fn checked_cmp(&self, other: &Qfe) -> Result<Ordering> {
        let diff = self.checked_sub(other)?;
        Ok(match diff.sign() {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        })
    }

    /// Integer scalar multiplication, used for denominator clearing.
    pub fn scale(&self, k: &Int) -> Qfe {
        let kr = Rational::from_integer(k.clone());
        Qfe {
            a: &self.a * &kr,
            b: &self.b * &kr,
            d: self.d,
        }
    }
}

impl std::ops::Add for &Qfe {
    type Output = Qfe;
    fn add(self, rhs: &Qfe) -> Qfe {
        self.checked_add(rhs).expect("incompatible fields in +")
    }
}

impl std::ops::Sub for &Qfe {
    type Output = Qfe;
    fn sub(self, rhs: &Qfe) -> Qfe {
        self.checked_sub(rhs).expect("incompatible fields in -")
    }
}

impl std::ops::Mul for &Qfe {
    type Output = Qfe;
    fn mul(self, rhs: &Qfe) -> Qfe {
        self.checked_mul(rhs).expect("incompatible fields in *")
    }
}

impl std::ops::Neg for &Qfe {
    type Output = Qfe;
    fn neg(self) -> Qfe {
        Qfe::neg(self)
    }
}

impl PartialOrd for Qfe {
    fn partial_cmp(&self, other: &Qfe) -> Option<Ordering> {
        self.checked_cmp(other).ok()
    }
}

impl fmt::Display for Qfe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if !self.a.is_zero() {
            write!(f, "{}", self.a)?;
            if self.b.is_positive() {
                write!(f, "+")?;
            }
        }
        if self.b == -Rational::one() {
            write!(f, "-")?;
        } else if self.b != Rational::one() {
            write!(f, "{}", self.b)?;
        }
        write!(f, "√{}", self.d)
    }
}

impl fmt::Debug for Qfe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Qfe({self})")
    }
}

fn rational_str(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn rational_from_str(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n = Int::from_str(n.trim()).ok()?;
            let d = Int::from_str(d.trim()).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(Int::from_str(s.trim()).ok()?)),
    }
}

#[derive(Serialize, Deserialize)]
struct QfeWire {
    a: String,
    b: String,
    d: u64,
}

impl Serialize for Qfe {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        QfeWire {
            a: rational_str(&self.a),
            b: rational_str(&self.b),
            d: self.d,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Qfe {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = QfeWire::deserialize(deserializer)?;
        let a = rational_from_str(&wire.a).ok_or_else(|| D::Error::custom("bad rational"))?;
        let b = rational_from_str(&wire.b).ok_or_else(|| D::Error::custom("bad rational"))?;
        Qfe::new(a, b, wire.d).map_err(D::Error::custom)
    }
}

/// Serde helper: big integers as decimal strings, matching the Qfe wire.
pub fn ser_int<S: Serializer>(x: &Int, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Serde helper: rationals as "p/q" or "p" strings, matching the Qfe wire.
pub fn ser_rational<S: Serializer>(
    x: &Rational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational_str(x))
}

fn rational_sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// True when no prime square divides n (n >= 1).
pub fn is_squarefree(n: u64) -> bool {
    matches!(squarefree_part(n), Ok((d, _)) if d == n)
}

/// Writes n = D * f^2 with D squarefree, by trial division.
pub fn squarefree_part(n: u64) -> Result<(u64, u64)> {
    if n == 0 {
        return Err(Error::SquarefreeOfZero);
    }
    if n > SQUAREFREE_BOUND {
        return Err(Error::DeskScaleExceeded("squarefree_part"));
    }
    let mut m = n;
    let mut d = 1u64;
    let mut f = 1u64;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut e = 0u32;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            f *= p.pow(e / 2);
            if e % 2 == 1 {
                d *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // Whatever remains is a prime.
    d *= m;
    Ok((d, f))
}

/// Like [`squarefree_part`], via checked narrowing from a big integer.
pub fn squarefree_part_big(n: &Int) -> Result<(u64, u64)> {
    if n.is_negative() {
        return Err(Error::SquarefreeOfZero);
    }
    let small = u64::try_from(n).map_err(|_| Error::DeskScaleExceeded("squarefree_part"))?;
    squarefree_part(small)
}

/// The fundamental unit of the ring of integers of Q(sqrt D).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FundamentalUnit {
    pub value: Qfe,
    pub d: u64,
}

/// Smallest unit > 1 of O_K for K = Q(sqrt D), by brute-force search over
/// x^2 - D y^2 = +-4 in increasing y. Half-integer coordinates (x + y sqrt D)/2
/// come out automatically: t^2 - x t -+ 1 is monic integral for every solution.
pub fn fundamental_unit(d: u64) -> Result<FundamentalUnit> {
    fundamental_unit_capped(d, UNIT_SEARCH_CAP)
}

pub fn fundamental_unit_capped(d: u64, cap: u64) -> Result<FundamentalUnit> {
    if d <= 1 || !is_squarefree(d) {
        return Err(Error::BadDiscriminant(d));
    }
    let big_d = Int::from(d);
    for y in 1..=cap {
        let dy2 = &big_d * Int::from(y) * Int::from(y);
        // Prefer the -4 branch: for fixed y it yields the smaller x.
        for rhs in [&dy2 - Int::from(4), &dy2 + Int::from(4)] {
            if rhs.is_negative() {
                continue;
            }
            let x = rhs.sqrt();
            if &x * &x != rhs {
                continue;
            }
            let value = Qfe::new(
                Rational::new(x, Int::from(2)),
                Rational::new(Int::from(y), Int::from(2)),
                d,
            )?;
            debug_assert!(value.norm().abs() == Rational::one());
            return Ok(FundamentalUnit { value, d });
        }
    }
    Err(Error::UnitSearchExceeded(d))
}
