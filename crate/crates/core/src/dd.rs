//! Double-double arithmetic: an unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`,
//! giving roughly 106 bits of significand.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Rem, Sub, SubAssign};

use num_traits::{Float, Num, One, Zero};

use crate::real::Real;

#[derive(Clone, Copy, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

const SPLITTER: f64 = 134_217_729.0; // 2^27 + 1

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn split(a: f64) -> (f64, f64) {
    let t = SPLITTER * a;
    let hi = t - (t - a);
    (hi, a - hi)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    (p, ((ah * bh - p) + ah * bl + al * bh) + al * bl)
}

impl Dd {
    pub const PI: Dd = Dd { hi: 3.141592653589793, lo: 1.2246467991473532e-16 };
    pub const TAU: Dd = Dd { hi: 6.283185307179586, lo: 2.4492935982947064e-16 };
    pub const FRAC_PI_2: Dd = Dd { hi: 1.5707963267948966, lo: 6.123233995736766e-17 };
    pub const LN_2: Dd = Dd { hi: 0.6931471805599453, lo: 2.3190468138462996e-17 };
    pub const EPSILON: f64 = 4.930380657631324e-32; // 2^-104

    pub const fn new(hi: f64, lo: f64) -> Self {
        Dd { hi, lo }
    }

    pub fn from_sum(a: f64, b: f64) -> Self {
        let (hi, lo) = two_sum(a, b);
        Dd { hi, lo }
    }

    pub fn from_prod(a: f64, b: f64) -> Self {
        let (hi, lo) = two_prod(a, b);
        Dd { hi, lo }
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite()
    }

    /// Exact multiplication by `2^k`.
    pub fn ldexp(self, k: i32) -> Self {
        Dd { hi: libm::scalbn(self.hi, k), lo: libm::scalbn(self.lo, k) }
    }

    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Dd { hi, lo }
    }

    pub fn sqr(self) -> Self {
        self * self
    }

    pub fn floor(self) -> Self {
        let f = Float::floor(self.hi);
        if f == self.hi {
            Dd::from_sum(f, Float::floor(self.lo))
        } else {
            Dd { hi: f, lo: 0.0 }
        }
    }

    pub fn round(self) -> Self {
        (self + Dd::from(0.5)).floor()
    }

    pub fn trunc(self) -> Self {
        if self.hi >= 0.0 {
            let f = Float::floor(self.hi);
            if f == self.hi {
                Dd::from_sum(f, Float::floor(self.lo))
            } else {
                Dd { hi: f, lo: 0.0 }
            }
        } else {
            -(-self).trunc()
        }
    }

    fn exp_impl(self) -> Self {
        if self.hi > 709.78 {
            return Dd { hi: f64::INFINITY, lo: 0.0 };
        }
        if self.hi < -745.0 {
            return Dd::zero();
        }
        if self.hi == 0.0 && self.lo == 0.0 {
            return Dd::one();
        }
        let k = Float::round(self.hi / Self::LN_2.hi);
        let r = self - Self::LN_2.mul_f64(k);
        // reduce further so the Taylor series converges in a few terms
        const SQUARINGS: i32 = 10;
        let r = r.ldexp(-SQUARINGS);
        // s = e^r - 1
        let mut s = r;
        let mut term = r;
        let mut i = 2.0;
        loop {
            term = term * r;
            term = term / Dd::from(i);
            s = s + term;
            if Float::abs(term.hi) <= 1e-36 * Float::abs(s.hi).max(1e-300) || i > 40.0 {
                break;
            }
            i += 1.0;
        }
        for _ in 0..SQUARINGS {
            s = s.ldexp(1) + s * s;
        }
        (s + Dd::one()).ldexp(k as i32)
    }

    fn ln_impl(self) -> Self {
        if self.hi <= 0.0 {
            return Dd { hi: f64::NAN, lo: 0.0 };
        }
        let mut y = Dd::from(Float::ln(self.hi));
        for _ in 0..2 {
            y = y + self * (-y).exp_impl() - Dd::one();
        }
        y
    }

    fn sin_cos_taylor(t: Dd) -> (Dd, Dd) {
        // |t| <= pi/4
        let t2 = t * t;
        let mut s = t;
        let mut term = t;
        let mut k = 1.0;
        loop {
            term = -(term * t2) / Dd::from((k + 1.0) * (k + 2.0));
            s = s + term;
            k += 2.0;
            if Float::abs(term.hi) < 1e-35 || k > 60.0 {
                break;
            }
        }
        let mut c = Dd::one();
        let mut term = Dd::one();
        let mut k = 0.0;
        loop {
            term = -(term * t2) / Dd::from((k + 1.0) * (k + 2.0));
            c = c + term;
            k += 2.0;
            if Float::abs(term.hi) < 1e-35 || k > 60.0 {
                break;
            }
        }
        (s, c)
    }

    fn sin_cos_impl(self) -> (Dd, Dd) {
        let k = (self / Self::TAU).round();
        let r = self - Self::TAU * k;
        let j = Float::round(r.hi / Self::FRAC_PI_2.hi);
        let t = r - Self::FRAC_PI_2.mul_f64(j);
        let (s, c) = Self::sin_cos_taylor(t);
        match (j as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    fn sqrt_impl(self) -> Self {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 { Dd::zero() } else { Dd { hi: f64::NAN, lo: 0.0 } };
        }
        let x = Float::sqrt(self.hi);
        let (p, e) = two_prod(x, x);
        let r = (self - Dd { hi: p, lo: e }).hi / (2.0 * x);
        Dd::from_sum(x, r)
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }
}

impl fmt::Debug for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dd({:e} + {:e})", self.hi, self.lo)
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.hi + self.lo)
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
        }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let (hi, lo) = quick_two_sum(p, e + (self.hi * b.lo + self.lo * b.hi));
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from(q3)
    }
}

impl Rem for Dd {
    type Output = Dd;
    fn rem(self, b: Dd) -> Dd {
        self - b * (self / b).trunc()
    }
}

impl AddAssign for Dd {
    fn add_assign(&mut self, b: Dd) {
        *self = *self + b;
    }
}

impl SubAssign for Dd {
    fn sub_assign(&mut self, b: Dd) {
        *self = *self - b;
    }
}

impl MulAssign for Dd {
    fn mul_assign(&mut self, b: Dd) {
        *self = *self * b;
    }
}

impl Zero for Dd {
    fn zero() -> Self {
        Dd { hi: 0.0, lo: 0.0 }
    }
    fn is_zero(&self) -> bool {
        self.hi == 0.0 && self.lo == 0.0
    }
}

impl One for Dd {
    fn one() -> Self {
        Dd { hi: 1.0, lo: 0.0 }
    }
}

impl Num for Dd {
    type FromStrRadixErr = num_traits::ParseFloatError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        <f64 as Num>::from_str_radix(s, radix).map(Dd::from)
    }
}

impl Real for Dd {
    fn from_f64(x: f64) -> Self {
        Dd::from(x)
    }
    fn to_f64(&self) -> f64 {
        self.hi + self.lo
    }
    fn sqrt(&self) -> Self {
        self.sqrt_impl()
    }
    fn exp(&self) -> Self {
        self.exp_impl()
    }
    fn ln(&self) -> Self {
        self.ln_impl()
    }
    fn sin_cos(&self) -> (Self, Self) {
        self.sin_cos_impl()
    }
    fn pi() -> Self {
        Dd::PI
    }
    fn epsilon() -> f64 {
        Dd::EPSILON
    }
    fn abs(&self) -> Self {
        if self.hi < 0.0 {
            -*self
        } else {
            *self
        }
    }
    fn from_usize(k: usize) -> Self {
        let hi = k as f64;
        let lo = (k - hi as usize) as f64;
        Dd::from_sum(hi, lo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_third_times_three() {
        let third = Dd::one() / Dd::from(3.0);
        let back = third * Dd::from(3.0);
        assert!(Float::abs((back - Dd::one()).to_f64()) < 1e-31);
        assert!(third.lo != 0.0);
    }

    #[test]
    fn sqrt_two_squared() {
        let s = Dd::from(2.0).sqrt();
        assert!(Float::abs((s * s - Dd::from(2.0)).to_f64()) < 1e-31);
        // sqrt(2) = 1.41421356237309504880168872420969807856967
        assert_eq!(s.hi, 1.4142135623730951);
        assert!(Float::abs(s.lo - (-9.667293313452913e-17)) < 1e-31, "{:e}", s.lo);
    }

    #[test]
    fn exp_ln_roundtrip() {
        for &x in &[-30.0, -2.5, -1e-5, 0.3, 1.0, 7.25, 40.0] {
            let d = Dd::from(x) + Dd::from(x * 1e-17);
            let back = d.exp().ln();
            assert!(Float::abs((back - d).to_f64()) < 1e-30 * Float::abs(x).max(1.0), "x = {x}");
        }
        // e = 2.71828182845904523536028747135266249775724709
        let e = Dd::one().exp();
        assert_eq!(e.hi, 2.718281828459045);
        assert!(Float::abs(e.lo - 1.4456468917292502e-16) < 1e-31);
    }

    #[test]
    fn sin_cos_identities() {
        for &x in &[-7.0, -1.3, 0.0, 0.2, 0.785, 1.5, 3.0, 12.5] {
            let (s, c) = Dd::from(x).sin_cos();
            assert!(Float::abs((s * s + c * c - Dd::one()).to_f64()) < 1e-30);
            assert!(Float::abs(s.to_f64() - Float::sin(x)) < 1e-15);
            assert!(Float::abs(c.to_f64() - Float::cos(x)) < 1e-15);
        }
        let (s, c) = (Dd::PI / Dd::from(6.0)).sin_cos();
        assert!(Float::abs((s - Dd::from(0.5)).to_f64()) < 1e-31);
        assert!(Float::abs((c * c - Dd::from(0.75)).to_f64()) < 1e-31);
    }

    #[test]
    fn ordering_uses_low_part() {
        let a = Dd::new(1.0, 1e-20);
        let b = Dd::new(1.0, -1e-20);
        assert!(b < a);
        assert_eq!(a.round(), Dd::one());
    }
}
