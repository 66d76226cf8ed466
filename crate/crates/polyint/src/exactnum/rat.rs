//! Exact rational scalars.
//!
//! [`Rat`] is an arbitrary-precision rational kept in lowest terms with a
//! positive denominator. All arithmetic is exact; there is no rounding
//! anywhere. The serialized form is the decimal string `"p/q"`, shortened to
//! `"p"` for integers, and that format is shared by every module.
//!
//! Values whose numerator and denominator both fit in `i64` are stored
//! inline and combined through `i128` cross products, which covers nearly
//! every number this crate ever touches; anything larger falls back to a
//! heap-allocated big rational. The representation is canonical — a value is
//! stored inline exactly when it fits — so structural equality and hashing
//! agree with numeric equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Storage for one rational; every variant is in lowest terms with positive
/// denominator. `Small` is used whenever both parts fit in `i64`, `Med`
/// whenever they fit in `i128` but not `i64`, and `Big` beyond that, so the
/// representation of a value is unique.
#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(i64, i64),
    Med(i128, i128),
    Big(Box<BigRational>),
}

/// An exact rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rat(Repr);

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    // 128-bit division is slow; fold into 64 bits as soon as possible.
    while a > u64::MAX as u128 || b > u64::MAX as u128 {
        if b == 0 {
            return a;
        }
        (a, b) = (b, a % b);
    }
    gcd_u64(a as u64, b as u64) as u128
}

/// Wraps `n/d` already in lowest terms with `d > 0`.
fn fit(n: i128, d: i128) -> Rat {
    debug_assert!(d > 0);
    match (i64::try_from(n), i64::try_from(d)) {
        (Ok(n), Ok(d)) => Rat(Repr::Small(n, d)),
        _ => Rat(Repr::Med(n, d)),
    }
}

/// The value as an `i128` pair, unless it lives on the big tier.
fn parts(r: &Rat) -> Option<(i128, i128)> {
    match &r.0 {
        Repr::Small(n, d) => Some((*n as i128, *d as i128)),
        Repr::Med(n, d) => Some((*n, *d)),
        Repr::Big(_) => None,
    }
}

/// Canonicalizes `n/d` with `d != 0`; the products feeding this stay well
/// inside `i128`, so the arithmetic here cannot overflow.
fn from_i128(mut n: i128, mut d: i128) -> Rat {
    debug_assert!(d != 0, "rational with zero denominator");
    if d < 0 {
        n = -n;
        d = -d;
    }
    if n == 0 {
        return Rat(Repr::Small(0, 1));
    }
    let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
    fit(n / g, d / g)
}

/// Demotes a reduced big rational to an inline tier when it fits.
fn from_big(r: BigRational) -> Rat {
    match (r.numer().to_i128(), r.denom().to_i128()) {
        (Some(n), Some(d)) => fit(n, d),
        _ => Rat(Repr::Big(Box::new(r))),
    }
}

impl Rat {
    /// The additive identity.
    pub fn zero() -> Rat {
        Rat(Repr::Small(0, 1))
    }

    /// The multiplicative identity.
    pub fn one() -> Rat {
        Rat(Repr::Small(1, 1))
    }

    /// Builds `p/q`, reducing to lowest terms. Fails if `q == 0`.
    pub fn new(p: BigInt, q: BigInt) -> Result<Rat> {
        if q.is_zero() {
            return Err(Error::Input("rational with zero denominator".into()));
        }
        Ok(from_big(BigRational::new(p, q)))
    }

    /// Builds `p/q` from machine integers. Panics if `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Rat {
        assert!(q != 0, "rational with zero denominator");
        from_i128(p as i128, q as i128)
    }

    /// The integer `n` as a rational.
    pub fn int(n: i64) -> Rat {
        Rat(Repr::Small(n, 1))
    }

    /// Numerator in lowest terms (sign lives here).
    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Med(n, _) => BigInt::from(*n),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    /// Denominator in lowest terms, always positive.
    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Med(_, d) => BigInt::from(*d),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    /// The value as a big rational in lowest terms.
    fn big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => {
                BigRational::new_raw(BigInt::from(*n), BigInt::from(*d))
            }
            Repr::Med(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    /// True iff the value is 0.
    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    /// True iff the value is strictly positive.
    pub fn is_positive(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n > 0,
            Repr::Med(n, _) => *n > 0,
            Repr::Big(b) => b.is_positive(),
        }
    }

    /// True iff the value is strictly negative.
    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Med(n, _) => *n < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    /// True iff the denominator is 1.
    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Med(_, d) => *d == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    /// Sign as -1, 0, or 1.
    pub fn signum(&self) -> i8 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }

    /// Absolute value.
    pub fn abs(&self) -> Rat {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Rat {
        assert!(!self.is_zero(), "reciprocal of zero");
        match &self.0 {
            Repr::Small(n, d) if *n > 0 => Rat(Repr::Small(*d, *n)),
            Repr::Small(n, d) => fit(-(*d as i128), -(*n as i128)),
            Repr::Med(n, d) if *n > 0 => fit(*d, *n),
            Repr::Med(n, d) if *n != i128::MIN => fit(-*d, -*n),
            _ => from_big(self.big().recip()),
        }
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        match parts(self) {
            Some((n, d)) => BigInt::from(n.div_euclid(d)),
            None => match &self.0 {
                Repr::Big(b) => b.floor().to_integer(),
                _ => unreachable!(),
            },
        }
    }

    /// Smallest integer not below the value.
    pub fn ceil(&self) -> BigInt {
        match parts(self) {
            Some((n, d)) => {
                BigInt::from(n.div_euclid(d) + i128::from(n.rem_euclid(d) != 0))
            }
            None => match &self.0 {
                Repr::Big(b) => b.ceil().to_integer(),
                _ => unreachable!(),
            },
        }
    }

    /// `min` by value.
    pub fn min(self, other: Rat) -> Rat {
        if self <= other {
            self
        } else {
            other
        }
    }

    /// `max` by value.
    pub fn max(self, other: Rat) -> Rat {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl Default for Rat {
    fn default() -> Self {
        Rat::zero()
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::int(n)
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Rat {
        from_big(BigRational::from_integer(n))
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Rat) -> Ordering {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &other.0) {
            return (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128));
        }
        if let (Some((a, b)), Some((c, d))) = (parts(self), parts(other)) {
            if let (Some(l), Some(r)) = (a.checked_mul(d), c.checked_mul(b)) {
                return l.cmp(&r);
            }
        }
        self.big().cmp(&other.big())
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Med(n, 1) => write!(f, "{n}"),
            Repr::Med(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = Error;

    /// Parses `"p"` or `"p/q"` with optional leading sign on either part.
    fn from_str(s: &str) -> Result<Rat> {
        let bad = || Error::Input(format!("malformed rational {s:?}"));
        let mut parts = s.splitn(2, '/');
        let p = parts.next().ok_or_else(bad)?;
        let p: BigInt = p.parse().map_err(|_| bad())?;
        match parts.next() {
            None => Ok(from_big(BigRational::from_integer(p))),
            Some(q) => {
                let q: BigInt = q.parse().map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(Error::Input(format!("zero denominator in {s:?}")));
                }
                Ok(from_big(BigRational::new(p, q)))
            }
        }
    }
}

impl serde::Serialize for Rat {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Rat {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Rat, D::Error> {
        struct V;
        impl serde::de::Visitor<'_> for V {
            type Value = Rat;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational as \"p/q\" or an integer string")
            }
            fn visit_str<E: serde::de::Error>(self, s: &str) -> std::result::Result<Rat, E> {
                s.parse().map_err(|e| E::custom(e))
            }
            fn visit_i64<E: serde::de::Error>(self, n: i64) -> std::result::Result<Rat, E> {
                Ok(Rat::int(n))
            }
            fn visit_u64<E: serde::de::Error>(self, n: u64) -> std::result::Result<Rat, E> {
                Ok(from_big(BigRational::from_integer(BigInt::from(n))))
            }
        }
        de.deserialize_any(V)
    }
}

/// Sum of two reduced small rationals, after Knuth 4.5.1: with `t` the gcd
/// of the denominators, the only candidate common factor of the combined
/// numerator and denominator is `t` itself, so at most two small gcds run.
fn add_small(a: i64, b: i64, c: i64, d: i64) -> Rat {
    if b == d {
        if b == 1 {
            return match a.checked_add(c) {
                Some(n) => Rat(Repr::Small(n, 1)),
                None => fit(a as i128 + c as i128, 1),
            };
        }
        let n = a as i128 + c as i128;
        let g = gcd_u64((n.unsigned_abs() % b as u128) as u64, b as u64) as i128;
        return fit(n / g, b as i128 / g);
    }
    let t = gcd_u64(b as u64, d as u64) as i64;
    if t == 1 {
        return fit(
            a as i128 * d as i128 + c as i128 * b as i128,
            b as i128 * d as i128,
        );
    }
    let (b1, d1) = (b / t, d / t);
    let n = a as i128 * d1 as i128 + c as i128 * b1 as i128;
    let g = gcd_u128(n.unsigned_abs(), t as u128) as i128;
    fit(n / g, b1 as i128 * (d as i128 / g))
}

/// Sum of two reduced rationals in 128-bit arithmetic; `None` on overflow.
fn add_med(a: i128, b: i128, c: i128, d: i128) -> Option<Rat> {
    let t = gcd_u128(b as u128, d as u128) as i128;
    let (b1, d1) = (b / t, d / t);
    let n = a.checked_mul(d1)?.checked_add(c.checked_mul(b1)?)?;
    let g = gcd_u128(n.unsigned_abs(), t as u128) as i128;
    let den = b1.checked_mul(d / g)?;
    Some(fit(n / g, den))
}

fn add_impl(x: &Rat, y: &Rat) -> Rat {
    if let (Repr::Small(a, b), Repr::Small(c, d)) = (&x.0, &y.0) {
        return add_small(*a, *b, *c, *d);
    }
    if let (Some((a, b)), Some((c, d))) = (parts(x), parts(y)) {
        if let Some(r) = add_med(a, b, c, d) {
            return r;
        }
    }
    from_big(x.big() + y.big())
}

fn sub_impl(x: &Rat, y: &Rat) -> Rat {
    if let (Repr::Small(a, b), Repr::Small(c, d)) = (&x.0, &y.0) {
        if *c != i64::MIN {
            return add_small(*a, *b, -*c, *d);
        }
    }
    if let (Some((a, b)), Some((c, d))) = (parts(x), parts(y)) {
        if c != i128::MIN {
            if let Some(r) = add_med(a, b, -c, d) {
                return r;
            }
        }
    }
    from_big(x.big() - y.big())
}

/// Product of two reduced small rationals; cross-cancelling first leaves
/// nothing further to reduce.
fn mul_small(a: i64, b: i64, c: i64, d: i64) -> Rat {
    if a == 0 || c == 0 {
        return Rat(Repr::Small(0, 1));
    }
    if b == 1 && d == 1 {
        return match a.checked_mul(c) {
            Some(n) => Rat(Repr::Small(n, 1)),
            None => fit(a as i128 * c as i128, 1),
        };
    }
    let g1 = gcd_u64(a.unsigned_abs(), d as u64) as i128;
    let g2 = gcd_u64(c.unsigned_abs(), b as u64) as i128;
    fit(
        (a as i128 / g1) * (c as i128 / g2),
        (b as i128 / g2) * (d as i128 / g1),
    )
}

/// Product of two reduced rationals in 128-bit arithmetic; `None` on overflow.
fn mul_med(a: i128, b: i128, c: i128, d: i128) -> Option<Rat> {
    if a == 0 || c == 0 {
        return Some(Rat(Repr::Small(0, 1)));
    }
    let g1 = gcd_u128(a.unsigned_abs(), d as u128) as i128;
    let g2 = gcd_u128(c.unsigned_abs(), b as u128) as i128;
    let n = (a / g1).checked_mul(c / g2)?;
    let den = (b / g2).checked_mul(d / g1)?;
    Some(fit(n, den))
}

fn mul_impl(x: &Rat, y: &Rat) -> Rat {
    if let (Repr::Small(a, b), Repr::Small(c, d)) = (&x.0, &y.0) {
        return mul_small(*a, *b, *c, *d);
    }
    if let (Some((a, b)), Some((c, d))) = (parts(x), parts(y)) {
        if let Some(r) = mul_med(a, b, c, d) {
            return r;
        }
    }
    from_big(x.big() * y.big())
}

fn div_impl(x: &Rat, y: &Rat) -> Rat {
    assert!(!y.is_zero(), "division by zero");
    if let (Repr::Small(a, b), Repr::Small(c, d)) = (&x.0, &y.0) {
        return if *c > 0 {
            mul_small(*a, *b, *d, *c)
        } else if *c != i64::MIN {
            mul_small(*a, *b, -*d, -*c)
        } else {
            from_i128(*a as i128 * *d as i128, *b as i128 * *c as i128)
        };
    }
    if let (Some((a, b)), Some((c, d))) = (parts(x), parts(y)) {
        let flipped = if c > 0 {
            mul_med(a, b, d, c)
        } else if c != i128::MIN {
            mul_med(a, b, -d, -c)
        } else {
            None
        };
        if let Some(r) = flipped {
            return r;
        }
    }
    from_big(x.big() / y.big())
}

fn neg_impl(x: &Rat) -> Rat {
    match &x.0 {
        Repr::Small(n, d) => match n.checked_neg() {
            Some(n) => Rat(Repr::Small(n, *d)),
            None => fit(-(*n as i128), *d as i128),
        },
        Repr::Med(n, d) if *n != i128::MIN => fit(-*n, *d),
        _ => from_big(-x.big()),
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $impl_fn:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                $impl_fn(&self, &rhs)
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                $impl_fn(&self, rhs)
            }
        }
        impl $trait<Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                $impl_fn(self, &rhs)
            }
        }
        impl $trait<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                $impl_fn(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, sub_impl);
forward_binop!(Mul, mul, mul_impl);
forward_binop!(Div, div, div_impl);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        neg_impl(&self)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        neg_impl(self)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        *self = add_impl(self, rhs);
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        *self = sub_impl(self, rhs);
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        *self = mul_impl(self, rhs);
    }
}

/// Total order is by value; useful with `Ordering` pattern matches.
pub fn cmp_rat(a: &Rat, b: &Rat) -> Ordering {
    a.cmp(b)
}
