//! Exact rationals with a machine-word fast path.
//!
//! Values whose reduced numerator and denominator fit in `i64` are stored
//! inline; anything larger spills into a heap-allocated [`BigRational`].
//! Every result is normalised back to the small form whenever it fits, so
//! structural equality and hashing agree with numeric equality.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone)]
pub enum Rat {
    /// Reduced, denominator strictly positive.
    Small(i64, i64),
    Big(Box<BigRational>),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rat {
    pub const ZERO: Rat = Rat::Small(0, 1);
    pub const ONE: Rat = Rat::Small(1, 1);

    pub fn int(n: i64) -> Rat {
        Rat::Small(n, 1)
    }

    /// Builds `n/d` from wide integers, reducing and choosing the compact form.
    pub fn from_i128(n: i128, d: i128) -> Rat {
        assert!(d != 0, "zero denominator");
        if n == 0 {
            return Rat::ZERO;
        }
        let neg = (n < 0) != (d < 0);
        let (un, ud) = (n.unsigned_abs(), d.unsigned_abs());
        let g = gcd_u128(un, ud);
        let (un, ud) = (un / g, ud / g);
        if un <= i64::MAX as u128 && ud <= i64::MAX as u128 {
            let n = un as i64;
            Rat::Small(if neg { -n } else { n }, ud as i64)
        } else {
            let mut bn = BigInt::from(un);
            if neg {
                bn = -bn;
            }
            Rat::Big(Box::new(BigRational::new_raw(bn, BigInt::from(ud))))
        }
    }

    pub fn new(n: i64, d: i64) -> Rat {
        Rat::from_i128(n as i128, d as i128)
    }

    fn from_big(r: BigRational) -> Rat {
        // BigRational arithmetic keeps values reduced.
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            Rat::Small(n, d)
        } else {
            Rat::Big(Box::new(r))
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rat::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rat::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rat::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rat::Small(_, d) => *d == 1,
            Rat::Big(b) => b.is_integer(),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Rat::Small(n, _) => n.signum() as i32,
            Rat::Big(b) => {
                if b.is_positive() {
                    1
                } else if b.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn abs(&self) -> Rat {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Rat {
        match self {
            Rat::Small(n, d) => {
                assert!(*n != 0, "reciprocal of zero");
                Rat::from_i128(*d as i128, *n as i128)
            }
            Rat::Big(b) => Rat::from_big(b.recip()),
        }
    }

    /// Exact integer value, if this is an integer that fits in `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Rat::Small(n, 1) => Some(*n),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Rat::Small(n, d) => *n as f64 / *d as f64,
            Rat::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    /// Residue modulo the prime `p`, or `None` when `p` divides the denominator.
    pub fn mod_p(&self, p: u64) -> Option<u64> {
        let (n, d) = match self {
            Rat::Small(n, d) => (
                (*n as i128).rem_euclid(p as i128) as u64,
                (*d as i128).rem_euclid(p as i128) as u64,
            ),
            Rat::Big(b) => {
                let bp = BigInt::from(p);
                let n = b.numer().mod_floor(&bp).to_u64().unwrap();
                let d = b.denom().mod_floor(&bp).to_u64().unwrap();
                (n, d)
            }
        };
        if d == 0 {
            return None;
        }
        Some(crate::modp::mul(n, crate::modp::inv(d, p), p))
    }

    pub fn numer_denom_strings(&self) -> (String, String) {
        match self {
            Rat::Small(n, d) => (n.to_string(), d.to_string()),
            Rat::Big(b) => (b.numer().to_string(), b.denom().to_string()),
        }
    }
}

impl Default for Rat {
    fn default() -> Self {
        Rat::ZERO
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::Small(n, 1)
    }
}

impl From<i32> for Rat {
    fn from(n: i32) -> Rat {
        Rat::Small(n as i64, 1)
    }
}

impl PartialEq for Rat {
    fn eq(&self, other: &Rat) -> bool {
        match (self, other) {
            (Rat::Small(a, b), Rat::Small(c, d)) => a == c && b == d,
            (Rat::Big(a), Rat::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Rat {}

impl Hash for Rat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Rat::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Rat::Big(b) => {
                1u8.hash(state);
                b.numer().hash(state);
                b.denom().hash(state);
            }
        }
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Rat) -> Ordering {
        match (self, other) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128)))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn add_ref(x: &Rat, y: &Rat) -> Rat {
    match (x, y) {
        (Rat::Small(0, _), _) => y.clone(),
        (_, Rat::Small(0, _)) => x.clone(),
        (Rat::Small(a, b), Rat::Small(c, d)) => {
            if b == d {
                return Rat::from_i128(*a as i128 + *c as i128, *b as i128);
            }
            let n = (*a as i128) * (*d as i128) + (*c as i128) * (*b as i128);
            Rat::from_i128(n, (*b as i128) * (*d as i128))
        }
        _ => Rat::from_big(x.to_big() + y.to_big()),
    }
}

fn mul_ref(x: &Rat, y: &Rat) -> Rat {
    match (x, y) {
        (Rat::Small(0, _), _) | (_, Rat::Small(0, _)) => Rat::ZERO,
        (Rat::Small(1, 1), _) => y.clone(),
        (_, Rat::Small(1, 1)) => x.clone(),
        (Rat::Small(a, b), Rat::Small(c, d)) => {
            Rat::from_i128((*a as i128) * (*c as i128), (*b as i128) * (*d as i128))
        }
        _ => Rat::from_big(x.to_big() * y.to_big()),
    }
}

fn neg_ref(x: &Rat) -> Rat {
    match x {
        Rat::Small(n, d) => {
            if *n == i64::MIN {
                Rat::from_i128(-(*n as i128), *d as i128)
            } else {
                Rat::Small(-n, *d)
            }
        }
        Rat::Big(b) => Rat::from_big(-(**b).clone()),
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        neg_ref(&self)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        neg_ref(self)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:expr) => {
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                $f(&self, &rhs)
            }
        }
        impl $tr<&Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                $f(&self, rhs)
            }
        }
        impl $tr<Rat> for &Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                $f(self, &rhs)
            }
        }
        impl $tr<&Rat> for &Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                $f(self, rhs)
            }
        }
    };
}

binop!(Add, add, add_ref);
binop!(Mul, mul, mul_ref);
binop!(Sub, sub, |x: &Rat, y: &Rat| add_ref(x, &neg_ref(y)));
binop!(Div, div, |x: &Rat, y: &Rat| mul_ref(x, &y.recip()));

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        *self = add_ref(self, rhs);
    }
}

impl AddAssign<Rat> for Rat {
    fn add_assign(&mut self, rhs: Rat) {
        *self = add_ref(self, &rhs);
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        *self = add_ref(self, &neg_ref(rhs));
    }
}

impl SubAssign<Rat> for Rat {
    fn sub_assign(&mut self, rhs: Rat) {
        *self = add_ref(self, &neg_ref(&rhs));
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        *self = mul_ref(self, rhs);
    }
}

impl std::iter::Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.numer_denom_strings();
        if d == "1" {
            write!(f, "{n}")
        } else {
            write!(f, "{n}/{d}")
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed rational {0:?}")]
pub struct ParseRatError(pub String);

impl FromStr for Rat {
    type Err = ParseRatError;

    fn from_str(s: &str) -> Result<Rat, ParseRatError> {
        let err = || ParseRatError(s.to_string());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: BigInt = n.parse().map_err(|_| err())?;
        let d: BigInt = d.parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        Ok(Rat::from_big(BigRational::new(n, d)))
    }
}

/// Serialised as the string `"p/q"` (or `"p"` for integers).
impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Zero for Rat {
    fn zero() -> Rat {
        Rat::ZERO
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
}

impl One for Rat {
    fn one() -> Rat {
        Rat::ONE
    }
}
