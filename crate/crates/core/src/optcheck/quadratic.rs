//! Exact arithmetic in the quadratic field Q(√7).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

const RADICAND: i64 = 7;

/// `a + b·√7` with arbitrary-precision rational `a`, `b`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticRational {
    a: BigRational,
    b: BigRational,
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl QuadraticRational {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QuadraticRational { a, b }
    }

    /// `an/ad + (bn/bd)·√7`.
    pub fn from_parts(an: i64, ad: i64, bn: i64, bd: i64) -> Self {
        QuadraticRational::new(ratio(an, ad), ratio(bn, bd))
    }

    pub fn rational(num: i64, den: i64) -> Self {
        QuadraticRational::from_parts(num, den, 0, 1)
    }

    pub fn integer(k: i64) -> Self {
        QuadraticRational::rational(k, 1)
    }

    pub fn from_bigint(k: BigInt) -> Self {
        QuadraticRational::new(BigRational::from_integer(k), BigRational::zero())
    }

    pub fn sqrt7() -> Self {
        QuadraticRational::from_parts(0, 1, 1, 1)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn radical_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// `a - b·√7`.
    pub fn conjugate(&self) -> Self {
        QuadraticRational::new(self.a.clone(), -self.b.clone())
    }

    /// Field norm `a² - 7b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(RADICAND.into()) * &self.b * &self.b
    }

    /// Sign of the represented real number, decided without floating point.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (x, y) if x == y => x,
            // opposite signs: compare a² with 7b²
            (sa, _) => {
                let diff = self.norm();
                match diff.cmp(&BigRational::zero()) {
                    Ordering::Greater => sa,
                    Ordering::Less => sa.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn recip(&self) -> Option<Self> {
        let norm = self.norm();
        if norm.is_zero() {
            return None;
        }
        let c = self.conjugate();
        Some(QuadraticRational::new(c.a / &norm, c.b / &norm))
    }

    /// `⌊x⌋`, exact.
    pub fn floor(&self) -> BigInt {
        // guess from a truncated approximation, then correct exactly
        let scale = BigInt::from(10u32).pow(20);
        let approx = self.scaled_approx(&scale);
        let mut k = approx.div_floor(&scale);
        loop {
            let kq = QuadraticRational::from_bigint(k.clone());
            if kq > *self {
                k -= 1;
                continue;
            }
            let next = QuadraticRational::from_bigint(&k + 1);
            if next <= *self {
                k += 1;
                continue;
            }
            return k;
        }
    }

    /// An integer within a few units of `x · scale`.
    fn scaled_approx(&self, scale: &BigInt) -> BigInt {
        let a_scaled = (&self.a * BigRational::from_integer(scale.clone()))
            .floor()
            .to_integer();
        let b = &self.b;
        // |b|·√7·scale = sqrt(7·b²·scale²)
        let b2s2 = b * b * BigRational::from_integer(scale * scale * RADICAND);
        let root = b2s2.floor().to_integer().sqrt();
        if b.is_negative() {
            a_scaled - root
        } else {
            a_scaled + root
        }
    }

    /// Decimal rendering rounded half-up to `digits` fractional digits.
    pub fn to_decimal(&self, digits: u32) -> String {
        let scale = BigInt::from(10u32).pow(digits);
        let shifted = self * &QuadraticRational::from_bigint(scale.clone()) + QuadraticRational::rational(1, 2);
        let k = shifted.floor();
        let negative = k.sign() == Sign::Minus;
        let mag = k.abs();
        let (int_part, frac_part) = mag.div_rem(&scale);
        let sign = if negative { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!(
                "{sign}{int_part}.{:0>width$}",
                frac_part.to_string(),
                width = digits as usize
            )
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * (RADICAND as f64).sqrt()
    }
}

impl PartialOrd for QuadraticRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadraticRational {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl fmt::Debug for QuadraticRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for QuadraticRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "({})√7", self.b)
        } else {
            write!(f, "{} + ({})√7", self.a, self.b)
        }
    }
}

impl From<BigRational> for QuadraticRational {
    fn from(a: BigRational) -> Self {
        QuadraticRational::new(a, BigRational::zero())
    }
}

impl From<i64> for QuadraticRational {
    fn from(k: i64) -> Self {
        QuadraticRational::integer(k)
    }
}

impl Neg for QuadraticRational {
    type Output = QuadraticRational;
    fn neg(self) -> Self {
        QuadraticRational::new(-self.a, -self.b)
    }
}

impl Add for &QuadraticRational {
    type Output = QuadraticRational;
    fn add(self, rhs: &QuadraticRational) -> QuadraticRational {
        QuadraticRational::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &QuadraticRational {
    type Output = QuadraticRational;
    fn sub(self, rhs: &QuadraticRational) -> QuadraticRational {
        QuadraticRational::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul for &QuadraticRational {
    type Output = QuadraticRational;
    fn mul(self, rhs: &QuadraticRational) -> QuadraticRational {
        let seven = BigRational::from_integer(RADICAND.into());
        QuadraticRational::new(
            &self.a * &rhs.a + seven * &self.b * &rhs.b,
            &self.a * &rhs.b + &self.b * &rhs.a,
        )
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Div for &QuadraticRational {
    type Output = QuadraticRational;
    /// Panics on division by zero.
    fn div(self, rhs: &QuadraticRational) -> QuadraticRational {
        self * &rhs.recip().expect("division by zero in Q(√7)")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QuadraticRational {
            type Output = QuadraticRational;
            fn $m(self, rhs: QuadraticRational) -> QuadraticRational {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QuadraticRational> for QuadraticRational {
            type Output = QuadraticRational;
            fn $m(self, rhs: &QuadraticRational) -> QuadraticRational {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Zero for QuadraticRational {
    fn zero() -> Self {
        QuadraticRational::integer(0)
    }
    fn is_zero(&self) -> bool {
        QuadraticRational::is_zero(self)
    }
}

impl One for QuadraticRational {
    fn one() -> Self {
        QuadraticRational::integer(1)
    }
}
