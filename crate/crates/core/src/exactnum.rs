//! Exact Gaussian rationals.
//!
//! `Rational` keeps small values in machine words and widens to
//! `BigRational` only when an intermediate no longer fits.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithmeticError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed scalar `{0}`")]
    Parse(String),
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Reduced, denominator positive.
    Small(i64, i64),
    /// Only used when the reduced value does not fit `Small`.
    Big(Box<BigRational>),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i128
}

impl Rational {
    pub const ZERO: Rational = Rational(Repr::Small(0, 1));
    pub const ONE: Rational = Rational(Repr::Small(1, 1));

    pub fn from_int(n: i64) -> Self {
        Self::from_i128(n as i128, 1)
    }

    pub fn new(num: i64, den: i64) -> Result<Self, ArithmeticError> {
        if den == 0 {
            return Err(ArithmeticError::DivisionByZero);
        }
        Ok(Self::from_i128(num as i128, den as i128))
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let g = gcd_i128(num, den);
        let (mut n, mut d) = if g > 1 { (num / g, den / g) } else { (num, den) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        if let (Ok(n64), Ok(d64)) = (i64::try_from(n), i64::try_from(d)) {
            if n64 != i64::MIN {
                return Rational(Repr::Small(n64, d64));
            }
        }
        Rational(Repr::Big(Box::new(BigRational::new_raw(
            BigInt::from(n),
            BigInt::from(d),
        ))))
    }

    pub fn from_big(r: BigRational) -> Self {
        // BigRational::new reduces; downcast when possible.
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if n != i64::MIN {
                return Rational(Repr::Small(n, d));
            }
        }
        Rational(Repr::Big(Box::new(r)))
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Result<Self, ArithmeticError> {
        if den.is_zero() {
            return Err(ArithmeticError::DivisionByZero);
        }
        Ok(Self::from_big(BigRational::new(num, den)))
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(n, _) => n.signum() as i32,
            Repr::Big(b) => {
                if b.is_negative() {
                    -1
                } else if b.is_zero() {
                    0
                } else {
                    1
                }
            }
        }
    }

    pub fn inv(&self) -> Result<Self, ArithmeticError> {
        match &self.0 {
            Repr::Small(0, _) => Err(ArithmeticError::DivisionByZero),
            Repr::Small(n, d) => Ok(Self::from_i128(*d as i128, *n as i128)),
            Repr::Big(b) => Ok(Self::from_big(b.recip())),
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ArithmeticError> {
        Ok(self * &other.inv()?)
    }

    fn add_ref(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    return Self::from_i128(*a as i128 + *c as i128, 1);
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Self::from_i128(a * d + c * b, b * d)
            }
            _ => Self::from_big(self.to_big() + other.to_big()),
        }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Self::from_big(self.to_big() * other.to_big()),
        }
    }

    fn neg_ref(&self) -> Self {
        match &self.0 {
            Repr::Small(n, d) => Rational(Repr::Small(-n, *d)),
            Repr::Big(b) => Self::from_big(-(**b).clone()),
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::ZERO
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ArithmeticError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ArithmeticError::Parse(s.to_string());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        Rational::from_bigints(n, d)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                self.$imp(rhs)
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                (&self).$imp(&rhs)
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                (&self).$imp(rhs)
            }
        }
    };
}

impl Rational {
    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_ref()
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_ref()
    }
}

/// Element of Q(i).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

/// Scalars used throughout the crate.
pub type Scalar = GaussianRational;

impl GaussianRational {
    pub const ZERO: GaussianRational = GaussianRational {
        re: Rational::ZERO,
        im: Rational::ZERO,
    };
    pub const ONE: GaussianRational = GaussianRational {
        re: Rational::ONE,
        im: Rational::ZERO,
    };

    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational {
            re: Rational::from_int(n),
            im: Rational::ZERO,
        }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational {
            re,
            im: Rational::ZERO,
        }
    }

    pub fn i() -> Self {
        GaussianRational {
            re: Rational::ZERO,
            im: Rational::ONE,
        }
    }

    pub fn ratio(num: i64, den: i64) -> Result<Self, ArithmeticError> {
        Ok(Self::real(Rational::new(num, den)?))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_gaussian_integer(&self) -> bool {
        self.re.is_integer() && self.im.is_integer()
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// |z|^2
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self, ArithmeticError> {
        if self.im.is_zero() {
            return Ok(Self::real(self.re.inv()?));
        }
        let n = self.norm_sqr().inv()?;
        Ok(GaussianRational {
            re: &self.re * &n,
            im: -(&self.im * &n),
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ArithmeticError> {
        Ok(self * &other.inv()?)
    }

    fn add_ref(&self, o: &Self) -> Self {
        GaussianRational {
            re: &self.re + &o.re,
            im: if self.im.is_zero() && o.im.is_zero() {
                Rational::ZERO
            } else {
                &self.im + &o.im
            },
        }
    }

    fn sub_ref(&self, o: &Self) -> Self {
        GaussianRational {
            re: &self.re - &o.re,
            im: if self.im.is_zero() && o.im.is_zero() {
                Rational::ZERO
            } else {
                &self.im - &o.im
            },
        }
    }

    fn mul_ref(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return Self::real(&self.re * &o.re);
        }
        GaussianRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        Self::real(r)
    }
}

macro_rules! forward_gauss {
    ($tr:ident, $m:ident, $imp:ident, $atr:ident, $am:ident) => {
        impl $tr<&GaussianRational> for &GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: &GaussianRational) -> GaussianRational {
                self.$imp(rhs)
            }
        }
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$imp(&rhs)
            }
        }
        impl $tr<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$imp(rhs)
            }
        }
        impl $atr<&GaussianRational> for GaussianRational {
            fn $am(&mut self, rhs: &GaussianRational) {
                *self = (&*self).$imp(rhs);
            }
        }
        impl $atr<GaussianRational> for GaussianRational {
            fn $am(&mut self, rhs: GaussianRational) {
                *self = (&*self).$imp(&rhs);
            }
        }
    };
}

forward_gauss!(Add, add, add_ref, AddAssign, add_assign);
forward_gauss!(Sub, sub, sub_ref, SubAssign, sub_assign);
forward_gauss!(Mul, mul, mul_ref, MulAssign, mul_assign);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl fmt::Display for GaussianRational {
    /// Canonical text form `a/b+c/d*i`; zero parts are dropped.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let im = if self.im.is_one() {
            "i".to_string()
        } else if self.im == -Rational::ONE {
            "-i".to_string()
        } else {
            format!("{}*i", self.im)
        };
        if self.re.is_zero() {
            write!(f, "{im}")
        } else if im.starts_with('-') {
            write!(f, "{}{}", self.re, im)
        } else {
            write!(f, "{}+{}", self.re, im)
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GaussianRational {
    type Err = ArithmeticError;

    /// Accepts `a/b`, `c/d*i`, `a/b+c/d*i`, `a/b-c/d*i`, `i`, `-i`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || ArithmeticError::Parse(s.to_string());
        if t.is_empty() {
            return Err(bad());
        }
        if !t.ends_with('i') {
            return Ok(Self::real(t.parse().map_err(|_| bad())?));
        }
        let body = &t[..t.len() - 1];
        let body = body.strip_suffix('*').unwrap_or(body);
        // split at the last sign that is not the leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(k, _)| k)
            .last();
        let (re_s, im_s) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let im_s = im_s.strip_prefix('+').unwrap_or(im_s);
        let im = match im_s {
            "" => Rational::ONE,
            "-" => -Rational::ONE,
            _ => im_s.parse().map_err(|_| bad())?,
        };
        let re = if re_s.is_empty() {
            Rational::ZERO
        } else {
            re_s.parse().map_err(|_| bad())?
        };
        Ok(GaussianRational { re, im })
    }
}

fn pair_of(r: &Rational) -> (serde_json::Value, serde_json::Value) {
    let n = r.numer();
    let d = r.denom();
    let as_val = |b: &BigInt| match b.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::String(b.to_string()),
    };
    (as_val(&n), as_val(&d))
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (rn, rd) = pair_of(&self.re);
        let (in_, id) = pair_of(&self.im);
        let mut st = s.serialize_struct("GaussianRational", 2)?;
        st.serialize_field("re", &[rn, rd])?;
        st.serialize_field("im", &[in_, id])?;
        st.end()
    }
}

fn rational_from_json(v: &serde_json::Value) -> Result<Rational, String> {
    let big = |x: &serde_json::Value| -> Result<BigInt, String> {
        match x {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(BigInt::from)
                .ok_or_else(|| format!("non-integer component {n}")),
            serde_json::Value::String(s) => s.parse().map_err(|_| format!("bad integer `{s}`")),
            other => Err(format!("bad integer {other}")),
        }
    };
    match v {
        serde_json::Value::Array(a) if a.len() == 2 => {
            Rational::from_bigints(big(&a[0])?, big(&a[1])?).map_err(|e| e.to_string())
        }
        serde_json::Value::Number(_) => Ok(Rational::from_big(BigRational::from_integer(big(v)?))),
        serde_json::Value::String(s) => s.parse().map_err(|e: ArithmeticError| e.to_string()),
        other => Err(format!("bad rational {other}")),
    }
}

impl GaussianRational {
    /// Accepts the object form, the text form, or a bare integer.
    pub fn from_json(v: &serde_json::Value) -> Result<Self, String> {
        match v {
            serde_json::Value::Object(m) => {
                let re = m.get("re").map(rational_from_json).transpose()?;
                let im = m.get("im").map(rational_from_json).transpose()?;
                Ok(GaussianRational {
                    re: re.unwrap_or_default(),
                    im: im.unwrap_or_default(),
                })
            }
            serde_json::Value::String(s) => s.parse().map_err(|e: ArithmeticError| e.to_string()),
            serde_json::Value::Number(_) => Ok(Self::real(rational_from_json(v)?)),
            other => Err(format!("bad scalar {other}")),
        }
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        GaussianRational::from_json(&v).map_err(de::Error::custom)
    }
}

/// Convenience constructor for integer scalars.
pub fn q(n: i64) -> Scalar {
    Scalar::from_int(n)
}

/// Convenience constructor for `num/den`. Panics on a zero denominator.
pub fn qr(num: i64, den: i64) -> Scalar {
    Scalar::ratio(num, den).expect("nonzero denominator")
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::ZERO
    }
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::ONE
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gauss(a: i64, b: i64, c: i64, d: i64) -> Scalar {
        GaussianRational::new(Rational::new(a, b).unwrap(), Rational::new(c, d).unwrap())
    }

    #[test]
    fn text_round_trip() {
        for s in ["0", "1", "-3/4", "i", "-i", "1/2+i", "1/2-3/5*i", "2*i", "-7/3+2/9*i"] {
            let z: Scalar = s.parse().unwrap();
            let back: Scalar = z.to_string().parse().unwrap();
            assert_eq!(z, back, "{s}");
        }
        assert_eq!("1/2+1/3*i".parse::<Scalar>().unwrap(), gauss(1, 2, 1, 3));
    }

    #[test]
    fn json_form() {
        let z = gauss(1, 2, -1, 3);
        let v = serde_json::to_value(&z).unwrap();
        assert_eq!(v, serde_json::json!({"re": [1, 2], "im": [-1, 3]}));
        let back: Scalar = serde_json::from_value(v).unwrap();
        assert_eq!(back, z);
        let t: Scalar = serde_json::from_value(serde_json::json!("1/2-1/3*i")).unwrap();
        assert_eq!(t, z);
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(Scalar::ZERO.inv(), Err(ArithmeticError::DivisionByZero));
        assert!(Rational::new(1, 0).is_err());
    }

    #[test]
    fn overflow_widens() {
        let big = Rational::from_int(i64::MAX);
        let sq = &big * &big;
        assert_eq!(sq.numer(), BigInt::from(i64::MAX) * BigInt::from(i64::MAX));
        let back = sq.checked_div(&big).unwrap();
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small(..)));
        let m = Rational::from_int(i64::MIN);
        assert_eq!((-&m).numer(), -BigInt::from(i64::MIN));
    }

    #[test]
    fn i_squared() {
        assert_eq!(Scalar::i() * Scalar::i(), q(-1));
        assert_eq!(gauss(1, 1, 1, 1).inv().unwrap(), gauss(1, 2, -1, 2));
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (any::<i64>(), 1i64..i64::MAX).prop_map(|(n, d)| Rational::new(n, d).unwrap())
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (arb_rational(), arb_rational()).prop_map(|(a, b)| GaussianRational::new(a, b))
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!((&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
            prop_assert_eq!(&a - &a, Scalar::ZERO);
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), Scalar::ONE);
            }
        }

        #[test]
        fn conj_is_field_automorphism(a in arb_scalar(), b in arb_scalar()) {
            prop_assert_eq!((&a * &b).conj(), a.conj() * b.conj());
            prop_assert_eq!((&a + &b).conj(), a.conj() + b.conj());
            prop_assert_eq!(a.conj().conj(), a);
        }

        #[test]
        fn text_and_json_round_trip(a in arb_scalar()) {
            let t: Scalar = a.to_string().parse().unwrap();
            prop_assert_eq!(&t, &a);
            let j: Scalar = serde_json::from_value(serde_json::to_value(&a).unwrap()).unwrap();
            prop_assert_eq!(j, a);
        }

        #[test]
        fn small_and_big_agree(a in arb_rational(), b in arb_rational()) {
            let s = &a * &b + &a;
            let big = a.to_big() * b.to_big() + a.to_big();
            prop_assert_eq!(s, Rational::from_big(big));
        }
    }
}
