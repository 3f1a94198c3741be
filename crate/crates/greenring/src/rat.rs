//! Arbitrary-precision rational numbers with an inline `i64` fast path.
//!
//! Coefficient growth in exact row reduction makes fixed-width arithmetic
//! unsound, but almost all intermediate values in practice are tiny. `Rat`
//! keeps a reduced `i64/i64` fraction inline and promotes to `BigInt`
//! numerator/denominator pairs only when a result no longer fits.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Debug)]
enum Repr {
    /// Reduced fraction, denominator > 0.
    Small(i64, i64),
    /// Reduced fraction, denominator > 0, at least one side outside `i64`.
    Big(Box<(BigInt, BigInt)>),
}

/// An exact rational number.
#[derive(Clone, Debug)]
pub struct Rat(Repr);

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Build from an unnormalized i128 fraction. Never overflows internally.
fn norm_i128(num: i128, den: i128) -> Rat {
    debug_assert!(den != 0);
    let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
    if num == 0 {
        return Rat(Repr::Small(0, 1));
    }
    let g = gcd_i128(num, den);
    num /= g;
    den /= g;
    match (i64::try_from(num), i64::try_from(den)) {
        (Ok(n), Ok(d)) => Rat(Repr::Small(n, d)),
        _ => Rat(Repr::Big(Box::new((BigInt::from(num), BigInt::from(den))))),
    }
}

fn norm_big(num: BigInt, den: BigInt) -> Rat {
    debug_assert!(!den.is_zero());
    let (mut num, mut den) = if den.is_negative() { (-num, -den) } else { (num, den) };
    if num.is_zero() {
        return Rat(Repr::Small(0, 1));
    }
    let g = num.gcd(&den);
    num /= &g;
    den /= &g;
    match (num.to_i64(), den.to_i64()) {
        (Some(n), Some(d)) => Rat(Repr::Small(n, d)),
        _ => Rat(Repr::Big(Box::new((num, den)))),
    }
}

impl Rat {
    pub fn zero() -> Self {
        Rat(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Rat(Repr::Small(1, 1))
    }

    pub fn from_int(n: i64) -> Self {
        Rat(Repr::Small(n, 1))
    }

    /// `num/den`; panics when `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        norm_i128(num as i128, den as i128)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(b) => b.0.is_negative(),
        }
    }

    fn to_big(&self) -> (BigInt, BigInt) {
        match &self.0 {
            Repr::Small(n, d) => (BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (b.0.clone(), b.1.clone()),
        }
    }

    pub fn add_ref(&self, other: &Rat) -> Rat {
        match (&self.0, &other.0) {
            (Repr::Small(n1, d1), Repr::Small(n2, d2)) => {
                let (n1, d1, n2, d2) = (*n1 as i128, *d1 as i128, *n2 as i128, *d2 as i128);
                norm_i128(n1 * d2 + n2 * d1, d1 * d2)
            }
            _ => {
                let (n1, d1) = self.to_big();
                let (n2, d2) = other.to_big();
                norm_big(&n1 * &d2 + &n2 * &d1, d1 * d2)
            }
        }
    }

    pub fn sub_ref(&self, other: &Rat) -> Rat {
        match (&self.0, &other.0) {
            (Repr::Small(n1, d1), Repr::Small(n2, d2)) => {
                let (n1, d1, n2, d2) = (*n1 as i128, *d1 as i128, *n2 as i128, *d2 as i128);
                norm_i128(n1 * d2 - n2 * d1, d1 * d2)
            }
            _ => {
                let (n1, d1) = self.to_big();
                let (n2, d2) = other.to_big();
                norm_big(&n1 * &d2 - &n2 * &d1, d1 * d2)
            }
        }
    }

    pub fn mul_ref(&self, other: &Rat) -> Rat {
        match (&self.0, &other.0) {
            (Repr::Small(n1, d1), Repr::Small(n2, d2)) => {
                norm_i128(*n1 as i128 * *n2 as i128, *d1 as i128 * *d2 as i128)
            }
            _ => {
                let (n1, d1) = self.to_big();
                let (n2, d2) = other.to_big();
                norm_big(n1 * n2, d1 * d2)
            }
        }
    }

    /// Panics when `other` is zero.
    pub fn div_ref(&self, other: &Rat) -> Rat {
        assert!(!other.is_zero(), "division by zero");
        match (&self.0, &other.0) {
            (Repr::Small(n1, d1), Repr::Small(n2, d2)) => {
                norm_i128(*n1 as i128 * *d2 as i128, *d1 as i128 * *n2 as i128)
            }
            _ => {
                let (n1, d1) = self.to_big();
                let (n2, d2) = other.to_big();
                norm_big(n1 * d2, d1 * n2)
            }
        }
    }

    pub fn neg_ref(&self) -> Rat {
        match &self.0 {
            Repr::Small(n, d) => Rat(Repr::Small(-n, *d)),
            Repr::Big(b) => Rat(Repr::Big(Box::new((-&b.0, b.1.clone())))),
        }
    }

    pub fn recip(&self) -> Rat {
        assert!(!self.is_zero(), "reciprocal of zero");
        match &self.0 {
            Repr::Small(n, d) => {
                if *n < 0 {
                    Rat(Repr::Small(-d, -n))
                } else {
                    Rat(Repr::Small(*d, *n))
                }
            }
            Repr::Big(b) => norm_big(b.1.clone(), b.0.clone()),
        }
    }

    /// Parses `a` or `a/b` in base 10.
    pub fn parse(s: &str) -> Option<Rat> {
        let s = s.trim();
        match s.split_once('/') {
            None => {
                let n: BigInt = s.parse().ok()?;
                Some(norm_big(n, BigInt::from(1)))
            }
            Some((a, b)) => {
                let n: BigInt = a.trim().parse().ok()?;
                let d: BigInt = b.trim().parse().ok()?;
                if d.is_zero() {
                    return None;
                }
                Some(norm_big(n, d))
            }
        }
    }
}

impl PartialEq for Rat {
    fn eq(&self, other: &Self) -> bool {
        // Both sides are reduced with positive denominator, so representations
        // are canonical per value.
        match (&self.0, &other.0) {
            (Repr::Small(n1, d1), Repr::Small(n2, d2)) => n1 == n2 && d1 == d2,
            (Repr::Big(a), Repr::Big(b)) => a.0 == b.0 && a.1 == b.1,
            _ => false,
        }
    }
}

impl Eq for Rat {}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(n1, d1), Repr::Small(n2, d2)) => {
                (*n1 as i128 * *d2 as i128).cmp(&(*n2 as i128 * *d1 as i128))
            }
            _ => {
                let (n1, d1) = self.to_big();
                let (n2, d2) = other.to_big();
                (n1 * d2).cmp(&(n2 * d1))
            }
        }
    }
}

impl std::hash::Hash for Rat {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        let (n, d) = self.to_big();
        n.hash(state);
        d.hash(state);
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{}", n),
            Repr::Small(n, d) => write!(f, "{}/{}", n, d),
            Repr::Big(b) if b.1 == BigInt::from(1) => write!(f, "{}", b.0),
            Repr::Big(b) => write!(f, "{}/{}", b.0, b.1),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl $trait for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                self.$inner(rhs)
            }
        }
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                self.$inner(&rhs)
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                self.$inner(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Div, div, div_ref);

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        self.neg_ref()
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        self.neg_ref()
    }
}
