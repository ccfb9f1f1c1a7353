//! Scalar abstraction shared by the binary64, double-double and
//! multiple-precision back ends of the oracle.

use core::fmt::Debug;
use core::ops::Neg;

use num_complex::Complex;
use num_traits::{Float, Num};

use crate::C64;

/// Real field with the handful of transcendental functions the oracle needs.
///
/// Only `Clone` is required so that heap-backed big floats can implement it.
pub trait Real: Clone + Debug + PartialOrd + Num + Neg<Output = Self> + Send + Sync {
    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn sqrt(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sin_cos(&self) -> (Self, Self);
    fn pi() -> Self;
    /// Unit roundoff of the format.
    fn epsilon() -> f64;

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn from_usize(k: usize) -> Self {
        Self::from_f64(k as f64)
    }
}

impl Real for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn sqrt(&self) -> Self {
        Float::sqrt(*self)
    }
    fn exp(&self) -> Self {
        Float::exp(*self)
    }
    fn ln(&self) -> Self {
        Float::ln(*self)
    }
    fn sin_cos(&self) -> (Self, Self) {
        Float::sin_cos(*self)
    }
    fn pi() -> Self {
        core::f64::consts::PI
    }
    fn epsilon() -> f64 {
        f64::EPSILON / 2.0
    }
    fn abs(&self) -> Self {
        Float::abs(*self)
    }
}

pub fn lift<T: Real>(z: C64) -> Complex<T> {
    Complex::new(T::from_f64(z.re), T::from_f64(z.im))
}

pub fn lower<T: Real>(z: &Complex<T>) -> C64 {
    C64::new(z.re.to_f64(), z.im.to_f64())
}

pub fn cexp<T: Real>(z: &Complex<T>) -> Complex<T> {
    let m = z.re.exp();
    let (s, c) = z.im.sin_cos();
    Complex::new(m.clone() * c, m * s)
}

/// `e^{iθ}`.
pub fn expi<T: Real>(theta: &T) -> Complex<T> {
    let (s, c) = theta.sin_cos();
    Complex::new(c, s)
}

pub fn norm_sqr<T: Real>(z: &Complex<T>) -> T {
    z.re.clone() * z.re.clone() + z.im.clone() * z.im.clone()
}

pub fn cabs<T: Real>(z: &Complex<T>) -> T {
    norm_sqr(z).sqrt()
}

pub fn conj<T: Real>(z: &Complex<T>) -> Complex<T> {
    Complex::new(z.re.clone(), -z.im.clone())
}

pub fn scale<T: Real>(z: &Complex<T>, s: &T) -> Complex<T> {
    Complex::new(z.re.clone() * s.clone(), z.im.clone() * s.clone())
}

pub fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

pub fn cone<T: Real>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}
