//! Exact rational arithmetic.
//!
//! Values are kept in lowest terms with a positive denominator. Small values
//! (the overwhelmingly common case in Gaussian elimination over presentation
//! data) live in a pair of `i64`s; anything that would overflow is promoted
//! to an arbitrary-precision `BigRational`. A value that fits the small
//! representation is always stored small, so structural equality and hashing
//! are canonical.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// numerator, denominator; denominator > 0, gcd = 1
    Small(i64, i64),
    Big(Box<BigRational>),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Reduce a signed fraction held in i128s and store it small if it fits.
fn make_i128(mut num: i128, mut den: i128) -> Rational {
    debug_assert!(den != 0);
    if den < 0 {
        num = -num;
        den = -den;
    }
    if num == 0 {
        return Rational(Repr::Small(0, 1));
    }
    let g = gcd_u128(num.unsigned_abs(), den as u128) as i128;
    num /= g;
    den /= g;
    if let (Ok(n), Ok(d)) = (i64::try_from(num), i64::try_from(den)) {
        Rational(Repr::Small(n, d))
    } else {
        Rational(Repr::Big(Box::new(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        ))))
    }
}

/// Store a BigRational (assumed reduced by num-rational) small if it fits.
fn make_big(r: BigRational) -> Rational {
    if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
        Rational(Repr::Small(n, d))
    } else {
        Rational(Repr::Big(Box::new(r)))
    }
}

impl Rational {
    pub fn new<N: Into<BigInt>, D: Into<BigInt>>(num: N, den: D) -> Rational {
        let den = den.into();
        assert!(!den.is_zero(), "zero denominator");
        make_big(BigRational::new(num.into(), den))
    }

    pub fn zero() -> Rational {
        Rational(Repr::Small(0, 1))
    }

    pub fn one() -> Rational {
        Rational(Repr::Small(1, 1))
    }

    pub fn from_int(n: i64) -> Rational {
        Rational(Repr::Small(n, 1))
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
            Repr::Big(r) => r.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(r) => r.is_negative(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(n, 1) => Some(*n),
            _ => None,
        }
    }

    pub fn abs(&self) -> Rational {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Rational {
        assert!(!self.is_zero(), "division by zero");
        match &self.0 {
            Repr::Small(n, d) => {
                if *n < 0 {
                    make_i128(-(*d as i128), -(*n as i128))
                } else {
                    Rational(Repr::Small(*d, *n))
                }
            }
            Repr::Big(r) => make_big(r.recip()),
        }
    }

    /// Total bit size of numerator and denominator; the pivot-selection
    /// heuristic for exact Gaussian elimination.
    pub fn bit_size(&self) -> u64 {
        match &self.0 {
            Repr::Small(n, d) => {
                let nb = 64 - n.unsigned_abs().leading_zeros() as u64;
                let db = 64 - (*d as u64).leading_zeros() as u64;
                nb + db
            }
            Repr::Big(r) => r.numer().bits() + r.denom().bits(),
        }
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(r) => (**r).clone(),
        }
    }

    /// Render as a plain decimal string with the given number of fractional
    /// digits, computed by exact long division (round toward zero).
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let num = self.numer();
        let den = self.denom();
        let neg = num.is_negative();
        let num = num.abs();
        let int = &num / &den;
        let mut rem = &num % &den;
        let mut frac = String::new();
        for _ in 0..digits {
            rem *= 10;
            frac.push_str(&(&rem / &den).to_string());
            rem = &rem % &den;
        }
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        make_big(r)
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
            (Repr::Small(an, ad), Repr::Small(bn, bd)) => {
                (*an as i128 * *bd as i128).cmp(&(*bn as i128 * *ad as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl Add for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small(an, ad), Repr::Small(bn, bd)) => {
                let (an, ad, bn, bd) = (*an as i128, *ad as i128, *bn as i128, *bd as i128);
                make_i128(an * bd + bn * ad, ad * bd)
            }
            _ => make_big(self.to_big() + rhs.to_big()),
        }
    }
}

impl Sub for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small(an, ad), Repr::Small(bn, bd)) => {
                let (an, ad, bn, bd) = (*an as i128, *ad as i128, *bn as i128, *bd as i128);
                make_i128(an * bd - bn * ad, ad * bd)
            }
            _ => make_big(self.to_big() - rhs.to_big()),
        }
    }
}

impl Mul for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small(an, ad), Repr::Small(bn, bd)) => {
                make_i128(*an as i128 * *bn as i128, *ad as i128 * *bd as i128)
            }
            _ => make_big(self.to_big() * rhs.to_big()),
        }
    }
}

impl Div for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        match (&self.0, &rhs.0) {
            (Repr::Small(an, ad), Repr::Small(bn, bd)) => {
                let num = *an as i128 * *bd as i128;
                let den = *ad as i128 * *bn as i128;
                make_i128(num, den)
            }
            _ => make_big(self.to_big() / rhs.to_big()),
        }
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.0 {
            Repr::Small(n, d) => make_i128(-(*n as i128), *d as i128),
            Repr::Big(r) => make_big(-(**r).clone()),
        }
    }
}

macro_rules! owned_ops {
    ($($trait:ident $fn:ident),*) => {$(
        impl $trait for Rational {
            type Output = Rational;
            fn $fn(self, rhs: Rational) -> Rational { $trait::$fn(&self, &rhs) }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $fn(self, rhs: &Rational) -> Rational { $trait::$fn(&self, rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        *self = &*self * rhs;
    }
}

impl DivAssign<&Rational> for Rational {
    fn div_assign(&mut self, rhs: &Rational) {
        *self = &*self / rhs;
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = crate::error::Error;

    /// Parses `p` or `p/q` with arbitrary-precision integers; `q` must be
    /// nonzero.
    fn from_str(s: &str) -> crate::error::Result<Rational> {
        let s = s.trim();
        let bad = || crate::error::Error::Parse(format!("invalid rational {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(crate::error::Error::Parse(format!(
                "invalid rational {s:?}: zero denominator"
            )));
        }
        Ok(make_big(BigRational::new(num, den)))
    }
}

impl Rational {
    /// True when the value is a square in the rationals. Zero counts as a
    /// square; negatives never do.
    pub fn is_square(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        if self.is_negative() {
            return false;
        }
        let num = self.numer();
        let den = self.denom();
        num.sqrt().pow(2) == num && den.sqrt().pow(2) == den
    }
}

/// Sum of a slice of rationals.
pub fn sum<'a>(items: impl IntoIterator<Item = &'a Rational>) -> Rational {
    let mut acc = Rational::zero();
    for x in items {
        acc += x;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn reduction_and_sign() {
        assert_eq!(q(2, 4), q(1, 2));
        assert_eq!(q(1, -2), q(-1, 2));
        assert_eq!(q(-3, -6), q(1, 2));
        assert_eq!(q(0, 5), Rational::zero());
        assert!(q(-1, 3).is_negative());
    }

    #[test]
    fn arithmetic_basics() {
        assert_eq!(&q(1, 2) + &q(1, 3), q(5, 6));
        assert_eq!(&q(1, 2) - &q(1, 2), Rational::zero());
        assert_eq!(&q(2, 3) * &q(3, 4), q(1, 2));
        assert_eq!(&q(1, 2) / &q(1, 4), q(2, 1));
        assert_eq!(q(7, 3).recip(), q(3, 7));
        assert_eq!(-q(1, 2), q(-1, 2));
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Rational::from_int(i64::MAX);
        let sq = &big * &big;
        assert_eq!(sq.to_string(), format!("{}", (i64::MAX as i128).pow(2)));
        // dividing back down demotes to the small representation
        let back = &sq / &big;
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small(_, _)));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("3/4".parse::<Rational>().unwrap(), q(3, 4));
        assert_eq!("-6/8".parse::<Rational>().unwrap(), q(-3, 4));
        assert_eq!("5".parse::<Rational>().unwrap(), q(5, 1));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        assert_eq!(q(-3, 4).to_string(), "-3/4");
        assert_eq!(q(8, 2).to_string(), "4");
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(q(1, 3).to_decimal_string(4), "0.3333");
        assert_eq!(q(-7, 2).to_decimal_string(2), "-3.50");
        assert_eq!(q(5, 1).to_decimal_string(0), "5");
    }

    #[test]
    fn square_detection() {
        assert!(q(4, 9).is_square());
        assert!(q(0, 1).is_square());
        assert!(!q(-4, 9).is_square());
        assert!(!q(2, 1).is_square());
        assert!(!q(4, 3).is_square());
    }

    proptest! {
        // The small fast path must agree with BigRational arithmetic.
        #[test]
        fn matches_bigrational(an in -10_000i64..10_000, ad in 1i64..200,
                               bn in -10_000i64..10_000, bd in 1i64..200) {
            let a = q(an, ad);
            let b = q(bn, bd);
            let (ba, bb) = (a.to_big(), b.to_big());
            prop_assert_eq!((&a + &b).to_big(), &ba + &bb);
            prop_assert_eq!((&a - &b).to_big(), &ba - &bb);
            prop_assert_eq!((&a * &b).to_big(), &ba * &bb);
            if !b.is_zero() {
                prop_assert_eq!((&a / &b).to_big(), &ba / &bb);
            }
            prop_assert_eq!(a.cmp(&b), ba.cmp(&bb));
        }

        // exercise the promotion boundary: operands near i64::MAX force the
        // big path, and every result must sit in its canonical
        // representation (small whenever it fits)
        #[test]
        fn promotion_boundary_matches_bigrational(
            an in (i64::MAX / 2)..i64::MAX, ad in 1i64..5,
            bn in 1i64..1000, bd in (i64::MAX / 2)..i64::MAX,
        ) {
            let a = q(an, ad);
            let b = q(bn, bd);
            let (ba, bb) = (a.to_big(), b.to_big());
            prop_assert_eq!((&a + &b).to_big(), &ba + &bb);
            prop_assert_eq!((&a - &b).to_big(), &ba - &bb);
            prop_assert_eq!((&a * &b).to_big(), &ba * &bb);
            prop_assert_eq!((&a * &a).to_big(), &ba * &ba);
            // cancellation demotes back to the small form
            let cancel = &(&a * &b) / &b;
            prop_assert_eq!(&cancel, &a);
            prop_assert!(matches!(cancel.0, Repr::Small(_, _)));
        }

        #[test]
        fn canonical_representation(n in -1000i64..1000, d in 1i64..1000) {
            let a = q(n, d);
            let g = num_integer::gcd(n.unsigned_abs(), d as u64) as i64;
            if n != 0 {
                prop_assert_eq!(a.numer(), BigInt::from(n / g));
                prop_assert_eq!(a.denom(), BigInt::from(d / g));
            }
        }
    }
}
