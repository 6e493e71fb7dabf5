//! Real scalar abstraction for distance and bound evaluation.
//!
//! Exact combinatorial quantities live in big integers and rationals; the
//! distance curves and theorem bounds are evaluated in a floating scalar
//! chosen by the caller. `f64` is the cheap lane; [`DoubleDouble`] is the
//! default high-precision lane (~106-bit mantissa), used wherever long sums
//! or extreme exponents would erode plain doubles.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Floating scalar for distance values and bound evaluation.
pub trait Real:
    Copy
    + fmt::Debug
    + fmt::Display
    + PartialOrd
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;
    fn sqrt(self) -> Self;
    fn ln(self) -> Self;
    fn exp(self) -> Self;
    fn abs(self) -> Self;
    fn infinity() -> Self;
    fn is_finite(self) -> bool;

    fn from_u64(x: u64) -> Self {
        Self::from_f64(x as f64)
    }

    /// Exact-integer ratio, rounded once into the scalar.
    fn from_int_ratio(num: i64, den: u64) -> Self;

    /// Big-integer ratio, rounded once into the scalar.
    fn from_big_ratio(num: &BigInt, den: &BigInt) -> Self;

    /// Natural log of a positive big integer, computed without overflow.
    fn ln_big(x: &BigUint) -> Self;

    /// Integer power by binary exponentiation.
    fn powu(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

macro_rules! impl_real_primitive {
    ($t:ty) => {
        impl Real for $t {
            fn from_f64(x: f64) -> Self {
                x as $t
            }
            fn to_f64(self) -> f64 {
                self as f64
            }
            fn sqrt(self) -> Self {
                <$t>::sqrt(self)
            }
            fn ln(self) -> Self {
                <$t>::ln(self)
            }
            fn exp(self) -> Self {
                <$t>::exp(self)
            }
            fn abs(self) -> Self {
                <$t>::abs(self)
            }
            fn infinity() -> Self {
                <$t>::INFINITY
            }
            fn is_finite(self) -> bool {
                <$t>::is_finite(self)
            }
            fn from_int_ratio(num: i64, den: u64) -> Self {
                (num as f64 / den as f64) as $t
            }
            fn from_big_ratio(num: &BigInt, den: &BigInt) -> Self {
                DoubleDouble::from_big_ratio(num, den).to_f64() as $t
            }
            fn ln_big(x: &BigUint) -> Self {
                DoubleDouble::ln_big(x).to_f64() as $t
            }
        }
    };
}

impl_real_primitive!(f32);
impl_real_primitive!(f64);

// ---------------------------------------------------------------------------
// double-double arithmetic
// ---------------------------------------------------------------------------

/// Unevaluated sum of two doubles with non-overlapping mantissas,
/// giving roughly 106 bits of precision.
///
/// The algorithms are the classical error-free transformations (Dekker,
/// Knuth) as popularized by the QD library.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Exact scaling by a power of two, valid for any exponent.
fn ldexp(x: f64, e: i64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let mut r = x;
    let mut e = e;
    while e > 900 {
        r *= 2f64.powi(900);
        e -= 900;
    }
    while e < -900 {
        r *= 2f64.powi(-900);
        e += 900;
    }
    r * 2f64.powi(e as i32)
}

impl DoubleDouble {
    pub const LN2: Self = Self {
        hi: std::f64::consts::LN_2,
        lo: 2.3190468138462996e-17,
    };

    #[inline]
    pub fn new(hi: f64, lo: f64) -> Self {
        let (hi, lo) = quick_two_sum(hi, lo);
        Self { hi, lo }
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn from_i64(x: i64) -> Self {
        let hi = x as f64;
        let rem = x.wrapping_sub(hi as i64);
        Self::new(hi, rem as f64)
    }

    fn from_u128(v: u128) -> Self {
        debug_assert!(v < 1 << 120);
        let hi = v as f64;
        let rem = (v as i128).wrapping_sub(hi as i128);
        Self::new(hi, rem as f64)
    }

    /// Splits a big integer into a double-double mantissa and a binary
    /// exponent so that the value equals `mantissa * 2^exp`.
    fn big_mantissa(x: &BigUint) -> (Self, i64) {
        let bits = x.bits();
        if bits <= 100 {
            let mut v: u128 = 0;
            for (i, d) in x.to_u64_digits().into_iter().enumerate() {
                v |= (d as u128) << (64 * i);
            }
            (Self::from_u128(v), 0)
        } else {
            let shift = bits - 100;
            let top = x >> shift;
            let mut v: u128 = 0;
            for (i, d) in top.to_u64_digits().into_iter().enumerate() {
                v |= (d as u128) << (64 * i);
            }
            (Self::from_u128(v), shift as i64)
        }
    }

    fn scale2(self, e: i64) -> Self {
        Self {
            hi: ldexp(self.hi, e),
            lo: ldexp(self.lo, e),
        }
    }

    fn mul_f64(self, b: f64) -> Self {
        let (p1, p2) = two_prod(self.hi, b);
        Self::new(p1, p2 + self.lo * b)
    }

    fn div_f64(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let r = self - Self::from(q1).mul_f64(b);
        let q2 = r.hi / b;
        let r = r - Self::from(q2).mul_f64(b);
        let q3 = r.hi / b;
        let (s, e) = quick_two_sum(q1, q2);
        Self::new(s, e + q3)
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (s1, s2) = two_sum(self.hi, rhs.hi);
        let (t1, t2) = two_sum(self.lo, rhs.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        Self::new(s1, s2 + t2)
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (p1, p2) = two_prod(self.hi, rhs.hi);
        Self::new(p1, p2 + self.hi * rhs.lo + self.lo * rhs.hi)
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let q1 = self.hi / rhs.hi;
        let r = self - rhs.mul_f64(q1);
        let q2 = r.hi / rhs.hi;
        let r = r - rhs.mul_f64(q2);
        let q3 = r.hi / rhs.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Self::new(s, e + q3)
    }
}

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(std::cmp::Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}

impl fmt::Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

impl std::ops::Rem for DoubleDouble {
    type Output = Self;
    fn rem(self, rhs: Self) -> Self {
        let q = (self / rhs).to_f64().trunc();
        self - rhs.mul_f64(q)
    }
}

impl num_traits::Num for DoubleDouble {
    type FromStrRadixErr = num_traits::ParseFloatError;
    fn from_str_radix(s: &str, radix: u32) -> std::result::Result<Self, Self::FromStrRadixErr> {
        <f64 as num_traits::Num>::from_str_radix(s, radix).map(Self::from)
    }
}

impl num_traits::Signed for DoubleDouble {
    fn abs(&self) -> Self {
        Real::abs(*self)
    }
    fn abs_sub(&self, other: &Self) -> Self {
        if self <= other {
            Self::zero()
        } else {
            *self - *other
        }
    }
    fn signum(&self) -> Self {
        Self::from(if self.is_zero() {
            0.0
        } else if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -1.0
        } else {
            1.0
        })
    }
    fn is_positive(&self) -> bool {
        !self.is_zero() && self.signum().hi > 0.0
    }
    fn is_negative(&self) -> bool {
        self.signum().hi < 0.0
    }
}

impl Zero for DoubleDouble {
    fn zero() -> Self {
        Self { hi: 0.0, lo: 0.0 }
    }
    fn is_zero(&self) -> bool {
        self.hi == 0.0 && self.lo == 0.0
    }
}

impl One for DoubleDouble {
    fn one() -> Self {
        Self { hi: 1.0, lo: 0.0 }
    }
}

impl Real for DoubleDouble {
    fn from_f64(x: f64) -> Self {
        Self::from(x)
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    fn from_u64(x: u64) -> Self {
        let hi = x as f64;
        let rem = (x as i128).wrapping_sub(hi as i128);
        Self::new(hi, rem as f64)
    }

    fn from_int_ratio(num: i64, den: u64) -> Self {
        Self::from_i64(num) / Self::from_u64(den)
    }

    fn from_big_ratio(num: &BigInt, den: &BigInt) -> Self {
        let (sn, nm) = match num.sign() {
            Sign::Minus => (-1.0, num.magnitude().clone()),
            _ => (1.0, num.magnitude().clone()),
        };
        if nm.is_zero() {
            return Self::zero();
        }
        let (sd, dm) = match den.sign() {
            Sign::Minus => (-1.0, den.magnitude().clone()),
            _ => (1.0, den.magnitude().clone()),
        };
        let (mn, en) = Self::big_mantissa(&nm);
        let (md, ed) = Self::big_mantissa(&dm);
        (mn / md).scale2(en - ed).mul_f64(sn * sd)
    }

    fn ln_big(x: &BigUint) -> Self {
        if x.is_zero() {
            return Self::from(f64::NEG_INFINITY);
        }
        let (m, e) = Self::big_mantissa(x);
        m.ln() + Self::LN2.mul_f64(e as f64)
    }

    fn sqrt(self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        if self.hi < 0.0 {
            return Self::from(f64::NAN);
        }
        let x = self.hi.sqrt();
        let xdd = Self::from(x);
        xdd + (self - xdd * xdd).div_f64(2.0 * x)
    }

    fn exp(self) -> Self {
        if self.hi > 709.7 {
            return Self::from(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Self::zero();
        }
        let k = (self.hi / Self::LN2.hi).round();
        let r = self - Self::LN2.mul_f64(k);
        // Taylor series on |r| <= ln2/2.
        let mut term = r;
        let mut sum = Self::one() + r;
        for i in 2..40u32 {
            term = (term * r).div_f64(i as f64);
            sum = sum + term;
            if term.hi.abs() < sum.hi.abs() * 1e-35 {
                break;
            }
        }
        sum.scale2(k as i64)
    }

    fn ln(self) -> Self {
        if self.is_zero() {
            return Self::from(f64::NEG_INFINITY);
        }
        if self.hi < 0.0 || !self.hi.is_finite() {
            return Self::from(self.hi.ln());
        }
        // One Newton step on exp(y) = x from the double-precision estimate.
        let y0 = self.hi.ln();
        let corr = self * Self::from(-y0).exp() - Self::one();
        Self::from(y0) + corr
    }

    fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    fn infinity() -> Self {
        Self::from(f64::INFINITY)
    }

    fn is_finite(self) -> bool {
        self.hi.is_finite()
    }
}

// ---------------------------------------------------------------------------
// summation helpers
// ---------------------------------------------------------------------------

/// Neumaier-compensated accumulator.
#[derive(Clone, Copy, Debug)]
pub struct CompensatedSum<R: Real> {
    sum: R,
    comp: R,
}

impl<R: Real> Default for CompensatedSum<R> {
    fn default() -> Self {
        Self {
            sum: R::zero(),
            comp: R::zero(),
        }
    }
}

impl<R: Real> CompensatedSum<R> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: R) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp = self.comp + ((self.sum - t) + x);
        } else {
            self.comp = self.comp + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    pub fn value(&self) -> R {
        self.sum + self.comp
    }
}

/// Streaming log-sum-exp: accumulates `sum exp(l_i)` given the `l_i`,
/// immune to overflow and underflow of the individual terms.
#[derive(Clone, Copy, Debug)]
pub struct LogSumExp<R: Real> {
    max: Option<R>,
    sum: R,
}

impl<R: Real> Default for LogSumExp<R> {
    fn default() -> Self {
        Self {
            max: None,
            sum: R::zero(),
        }
    }
}

impl<R: Real> LogSumExp<R> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_ln(&mut self, l: R) {
        match self.max {
            None => {
                self.max = Some(l);
                self.sum = R::one();
            }
            Some(m) => {
                if l <= m {
                    self.sum = self.sum + (l - m).exp();
                } else {
                    self.sum = self.sum * (m - l).exp() + R::one();
                    self.max = Some(l);
                }
            }
        }
    }

    /// ln of the accumulated sum; negative infinity when empty.
    pub fn ln_value(&self) -> R {
        match self.max {
            None => R::from_f64(f64::NEG_INFINITY),
            Some(m) => m + self.sum.ln(),
        }
    }
}
