//! Arbitrary-precision scalar for the oracle, backed by astro-float.
//!
//! The working precision is process-wide and must be set before any value is
//! created; mixing values of different precisions rounds to the wider one.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_traits::{Num, One, Zero};
use szego_core::real::Real;

const RM: RoundingMode = RoundingMode::ToEven;

static BITS: AtomicUsize = AtomicUsize::new(256);

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constant cache"));
}

/// Sets the working precision from a count of decimal digits, plus a guard word.
pub fn set_digits(digits: u32) {
    let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 64;
    BITS.store(bits.max(128), AtomicOrdering::Relaxed);
}

pub fn bits() -> usize {
    BITS.load(AtomicOrdering::Relaxed)
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

#[derive(Clone, Debug)]
pub struct MpReal(pub BigFloat);

impl MpReal {
    fn wrap(v: BigFloat) -> Self {
        MpReal(v)
    }
}

impl PartialEq for MpReal {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for MpReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

impl Add for MpReal {
    type Output = MpReal;
    fn add(self, rhs: Self) -> Self {
        MpReal::wrap(self.0.add(&rhs.0, bits(), RM))
    }
}

impl Sub for MpReal {
    type Output = MpReal;
    fn sub(self, rhs: Self) -> Self {
        MpReal::wrap(self.0.sub(&rhs.0, bits(), RM))
    }
}

impl Mul for MpReal {
    type Output = MpReal;
    fn mul(self, rhs: Self) -> Self {
        MpReal::wrap(self.0.mul(&rhs.0, bits(), RM))
    }
}

impl Div for MpReal {
    type Output = MpReal;
    fn div(self, rhs: Self) -> Self {
        MpReal::wrap(self.0.div(&rhs.0, bits(), RM))
    }
}

impl Rem for MpReal {
    type Output = MpReal;
    fn rem(self, rhs: Self) -> Self {
        MpReal::wrap(self.0.rem(&rhs.0))
    }
}

impl Neg for MpReal {
    type Output = MpReal;
    fn neg(self) -> Self {
        MpReal::wrap(-self.0)
    }
}

impl Zero for MpReal {
    fn zero() -> Self {
        MpReal::wrap(BigFloat::new(bits()))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for MpReal {
    fn one() -> Self {
        MpReal::wrap(BigFloat::from_f64(1.0, bits()))
    }
}

impl Num for MpReal {
    type FromStrRadixErr = &'static str;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        if radix != 10 {
            return Err("only radix 10 is supported");
        }
        let v = with_consts(|cc| BigFloat::parse(s, astro_float::Radix::Dec, bits(), RM, cc));
        if v.is_nan() {
            return Err("not a number");
        }
        Ok(MpReal(v))
    }
}

impl Real for MpReal {
    fn from_f64(x: f64) -> Self {
        MpReal::wrap(BigFloat::from_f64(x, bits()))
    }

    fn to_f64(&self) -> f64 {
        let v = &self.0;
        if v.is_nan() {
            return f64::NAN;
        }
        let neg = v.sign() == Some(Sign::Neg);
        if v.is_inf() {
            return if neg { f64::NEG_INFINITY } else { f64::INFINITY };
        }
        if v.is_zero() {
            return 0.0;
        }
        // value = 0.m × 2^e with the mantissa words little-endian
        let words = v.mantissa_digits().unwrap_or(&[]);
        let e = v.exponent().unwrap_or(0) as i32;
        let top = *words.last().unwrap_or(&0) as u64;
        let next = if words.len() > 1 { words[words.len() - 2] as u64 } else { 0 };
        let m = top as f64 + next as f64 * 2f64.powi(-64);
        let k = e - 64;
        let r = m * 2f64.powi(k / 2) * 2f64.powi(k - k / 2);
        if neg { -r } else { r }
    }

    fn sqrt(&self) -> Self {
        MpReal::wrap(self.0.sqrt(bits(), RM))
    }

    fn exp(&self) -> Self {
        MpReal::wrap(with_consts(|cc| self.0.exp(bits(), RM, cc)))
    }

    fn ln(&self) -> Self {
        MpReal::wrap(with_consts(|cc| self.0.ln(bits(), RM, cc)))
    }

    fn sin_cos(&self) -> (Self, Self) {
        with_consts(|cc| (MpReal(self.0.sin(bits(), RM, cc)), MpReal(self.0.cos(bits(), RM, cc))))
    }

    fn pi() -> Self {
        MpReal::wrap(with_consts(|cc| cc.pi(bits(), RM)))
    }

    fn epsilon() -> f64 {
        2f64.powi(-(bits() as i32 - 1))
    }

    fn abs(&self) -> Self {
        MpReal::wrap(self.0.abs())
    }
}
