//! Weight specifications, their closed-form Szegő data and singularity
//! classification.
//!
//! Every supported weight is written on the unit circle as
//! `w = |R|^2` (rational kinds), `w = |exp(±1/(a−t))|^2` (essential kinds) or
//! `log w = Σ ℓ_k t^k` (finite log-Laurent kind). For each we have
//! `D_i`, `D_e`, `τ = 1/D_i(0)` and `F = D_i·D_e` explicitly.

use alloc::vec::Vec;

use num_complex::Complex;
use crate::real::{cexp, cone, conj, lift, norm_sqr, Real};
use crate::{Error, Result, C64};

/// Zeros or poles of modulus within this distance of 1 are rejected.
pub const CIRCLE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EssentialSign {
    /// `w = |exp(1/(a−t))|^2`
    Plus,
    /// `w = |exp(1/(t−a))|^2`, the reciprocal of `Plus`
    Minus,
}

impl EssentialSign {
    fn factor(self) -> f64 {
        match self {
            EssentialSign::Plus => 1.0,
            EssentialSign::Minus => -1.0,
        }
    }
}

/// A point with multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub z: C64,
    pub mult: u32,
}

impl Point {
    pub fn new(z: C64, mult: u32) -> Self {
        Point { z, mult }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum WeightSpec {
    /// `Π |t − z_j|^{2 m_j}`
    PolynomialModSq { zeros: Vec<Point> },
    /// `Π |t − z_j|^{2 m_j} / Π |t − p_k|^{2 n_k}`
    RationalModSq { zeros: Vec<Point>, poles: Vec<Point> },
    EssentialExp { a: C64, sign: EssentialSign },
    /// `log w(t) = Σ ℓ_k t^k`; entries for `k > 0` determine `ℓ_{-k} = conj ℓ_k`
    LogLaurent { coeffs: Vec<(i64, C64)> },
}

/// Singularity data of `D_e` inside the unit disc.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightMeta {
    pub rho: f64,
    /// Poles of `D_e` in `0 < |z| < 1`.
    pub de_poles: Vec<Point>,
    /// Zeros of `D_e` in `0 < |z| < 1` (Nevai–Totik points when `|z| > rho`).
    pub de_zeros: Vec<Point>,
    /// Isolated essential singularity of `D_e`, if any.
    pub essential: Option<C64>,
}

#[derive(Debug, Clone, PartialEq)]
enum Form {
    // w = |R|^2 with R(z) = c Π((z−p)/z)^m / Π((z−q)/z)^n, all p, q in the open unit disc
    Rational { c: f64, p: Vec<Point>, q: Vec<Point> },
    Essential { a: C64, sign: EssentialSign },
    // ℓ_0 and ℓ_k for k >= 1
    LogLaurent { l0: f64, l: Vec<(u32, C64)> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Weight {
    spec: WeightSpec,
    form: Form,
}

fn merge(points: &mut Vec<Point>) {
    let mut out: Vec<Point> = Vec::new();
    for p in points.drain(..) {
        if p.mult == 0 {
            continue;
        }
        match out.iter_mut().find(|q| (q.z - p.z).norm() <= 1e-14) {
            Some(q) => q.mult += p.mult,
            None => out.push(p),
        }
    }
    *points = out;
}

// Reflect a point outside the disc into it; returns the inner point and the
// modulus factor |z|^mult picked up by the normalisation.
fn normalise(points: &[Point], pole: bool) -> Result<(Vec<Point>, f64)> {
    let mut inner = Vec::new();
    let mut log_scale = 0.0;
    for p in points {
        let r = p.z.norm();
        if !r.is_finite() {
            return Err(Error::InvalidWeight("non-finite zero or pole"));
        }
        if (r - 1.0).abs() < CIRCLE_TOL {
            return Err(if pole {
                Error::PoleOnCircle { re: p.z.re, im: p.z.im }
            } else {
                Error::ZeroOnCircle { re: p.z.re, im: p.z.im }
            });
        }
        if p.mult == 0 {
            return Err(Error::InvalidWeight("multiplicity must be positive"));
        }
        if r == 0.0 {
            // |t|^2 = 1 on the circle
            continue;
        }
        if r < 1.0 {
            inner.push(*p);
        } else {
            inner.push(Point::new(1.0 / p.z.conj(), p.mult));
            log_scale += p.mult as f64 * r.ln();
        }
    }
    Ok((inner, log_scale))
}

pub fn make_polynomial_weight(zeros: &[Point]) -> Result<Weight> {
    let (mut p, ls) = normalise(zeros, false)?;
    merge(&mut p);
    Ok(Weight {
        spec: WeightSpec::PolynomialModSq { zeros: zeros.to_vec() },
        form: Form::Rational { c: ls.exp(), p, q: Vec::new() },
    })
}

pub fn make_rational_weight(zeros: &[Point], poles: &[Point]) -> Result<Weight> {
    let (mut p, lz) = normalise(zeros, false)?;
    let (mut q, lp) = normalise(poles, true)?;
    merge(&mut p);
    merge(&mut q);
    // cancel common factors
    for a in p.iter_mut() {
        for b in q.iter_mut() {
            if (a.z - b.z).norm() <= 1e-14 {
                let k = a.mult.min(b.mult);
                a.mult -= k;
                b.mult -= k;
            }
        }
    }
    p.retain(|x| x.mult > 0);
    q.retain(|x| x.mult > 0);
    Ok(Weight {
        spec: WeightSpec::RationalModSq { zeros: zeros.to_vec(), poles: poles.to_vec() },
        form: Form::Rational { c: (lz - lp).exp(), p, q },
    })
}

pub fn make_essential_weight(a: C64, sign: EssentialSign) -> Result<Weight> {
    let m = a.norm();
    if !(m > 0.0 && m < 1.0) {
        return Err(Error::BadCenter { modulus: m });
    }
    Ok(Weight { spec: WeightSpec::EssentialExp { a, sign }, form: Form::Essential { a, sign } })
}

pub fn make_log_laurent_weight(coeffs: &[(i64, C64)]) -> Result<Weight> {
    let mut l0 = 0.0;
    let mut pos: Vec<(u32, C64)> = Vec::new();
    let mut put = |k: u32, v: C64| -> Result<()> {
        match pos.iter_mut().find(|e| e.0 == k) {
            Some(e) => {
                if (e.1 - v).norm() > 1e-12 * (1.0 + v.norm()) {
                    return Err(Error::InvalidWeight("log-Laurent coefficients are not conjugate-symmetric"));
                }
            }
            None => pos.push((k, v)),
        }
        Ok(())
    };
    for &(k, v) in coeffs {
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::InvalidWeight("non-finite log-Laurent coefficient"));
        }
        if k == 0 {
            if v.im.abs() > 1e-12 * (1.0 + v.re.abs()) {
                return Err(Error::InvalidWeight("l_0 must be real"));
            }
            l0 = v.re;
        } else if k > 0 {
            put(k as u32, v)?;
        } else {
            put((-k) as u32, v.conj())?;
        }
    }
    pos.retain(|e| e.1.norm() != 0.0);
    pos.sort_by_key(|e| e.0);
    Ok(Weight { spec: WeightSpec::LogLaurent { coeffs: coeffs.to_vec() }, form: Form::LogLaurent { l0, l: pos } })
}

/// `w ≡ 1`.
pub fn lebesgue() -> Weight {
    make_polynomial_weight(&[]).expect("empty zero set is valid")
}

pub fn make_weight(spec: &WeightSpec) -> Result<Weight> {
    match spec {
        WeightSpec::PolynomialModSq { zeros } => make_polynomial_weight(zeros),
        WeightSpec::RationalModSq { zeros, poles } => make_rational_weight(zeros, poles),
        WeightSpec::EssentialExp { a, sign } => make_essential_weight(*a, *sign),
        WeightSpec::LogLaurent { coeffs } => make_log_laurent_weight(coeffs),
    }
}

fn cpowi<T: Real>(z: &Complex<T>, mut k: u32) -> Complex<T> {
    let mut base = z.clone();
    let mut acc = cone::<T>();
    while k > 0 {
        if k & 1 == 1 {
            acc = acc * base.clone();
        }
        base = base.clone() * base;
        k >>= 1;
    }
    acc
}

impl Weight {
    pub fn spec(&self) -> &WeightSpec {
        &self.spec
    }

    /// `true` when `D_i`, `D_e` are rational.
    pub fn is_rational(&self) -> bool {
        matches!(self.form, Form::Rational { .. })
    }

    /// Szegő constant `τ = 1/D_i(0) = exp(−ℓ_0/2)`.
    pub fn tau(&self) -> f64 {
        match &self.form {
            Form::Rational { c, .. } => 1.0 / c,
            Form::Essential { .. } => 1.0,
            Form::LogLaurent { l0, .. } => (-l0 / 2.0).exp(),
        }
    }

    /// `log w(e^{iθ})`.
    pub fn log_w(&self, theta: f64) -> f64 {
        let t = C64::from_polar(1.0, theta);
        match &self.spec {
            WeightSpec::PolynomialModSq { zeros } => {
                zeros.iter().map(|p| p.mult as f64 * (t - p.z).norm_sqr().ln()).sum()
            }
            WeightSpec::RationalModSq { zeros, poles } => {
                let a: f64 = zeros.iter().map(|p| p.mult as f64 * (t - p.z).norm_sqr().ln()).sum();
                let b: f64 = poles.iter().map(|p| p.mult as f64 * (t - p.z).norm_sqr().ln()).sum();
                a - b
            }
            WeightSpec::EssentialExp { a, sign } => 2.0 * sign.factor() * (1.0 / (a - t)).re,
            WeightSpec::LogLaurent { .. } => {
                let Form::LogLaurent { l0, l } = &self.form else { unreachable!() };
                l0 + 2.0 * l.iter().map(|(k, v)| (v * t.powu(*k)).re).sum::<f64>()
            }
        }
    }

    /// `w(e^{iθ})` in binary64.
    pub fn eval(&self, theta: f64) -> f64 {
        self.log_w(theta).exp()
    }

    /// `w(t)` for `t` on the unit circle, in any precision.
    pub fn eval_on_circle<T: Real>(&self, t: &Complex<T>) -> T {
        match &self.spec {
            WeightSpec::PolynomialModSq { zeros } => {
                let mut acc = T::one();
                for p in zeros {
                    let d = norm_sqr(&(t.clone() - lift::<T>(p.z)));
                    for _ in 0..p.mult {
                        acc = acc * d.clone();
                    }
                }
                acc
            }
            WeightSpec::RationalModSq { zeros, poles } => {
                let mut num = T::one();
                for p in zeros {
                    let d = norm_sqr(&(t.clone() - lift::<T>(p.z)));
                    for _ in 0..p.mult {
                        num = num * d.clone();
                    }
                }
                let mut den = T::one();
                for p in poles {
                    let d = norm_sqr(&(t.clone() - lift::<T>(p.z)));
                    for _ in 0..p.mult {
                        den = den * d.clone();
                    }
                }
                num / den
            }
            WeightSpec::EssentialExp { a, sign } => {
                let q = cone::<T>() / (lift::<T>(*a) - t.clone());
                (q.re * T::from_f64(2.0 * sign.factor())).exp()
            }
            WeightSpec::LogLaurent { .. } => {
                let Form::LogLaurent { l0, l } = &self.form else { unreachable!() };
                let mut s = T::zero();
                for (k, v) in l {
                    s = s + (lift::<T>(*v) * cpowi(t, *k)).re;
                }
                (T::from_f64(*l0) + T::from_f64(2.0) * s).exp()
            }
        }
    }

    /// Interior Szegő function `D_i(z)`; finite wherever `D_i` has no pole.
    pub fn d_i_generic<T: Real>(&self, z: &Complex<T>) -> Complex<T> {
        match &self.form {
            Form::Rational { c, p, q } => {
                let mut acc = Complex::new(T::from_f64(*c), T::zero());
                for a in p {
                    acc = acc * cpowi(&(cone::<T>() - conj(&lift::<T>(a.z)) * z.clone()), a.mult);
                }
                for b in q {
                    acc = acc / cpowi(&(cone::<T>() - conj(&lift::<T>(b.z)) * z.clone()), b.mult);
                }
                acc
            }
            Form::Essential { a, sign } => {
                let e = z.clone() / (conj(&lift::<T>(*a)) * z.clone() - cone::<T>());
                cexp(&(e * Complex::new(T::from_f64(sign.factor()), T::zero())))
            }
            Form::LogLaurent { l0, l } => {
                let mut s = Complex::new(T::from_f64(l0 / 2.0), T::zero());
                for (k, v) in l {
                    s = s + lift::<T>(*v) * cpowi(z, *k);
                }
                cexp(&s)
            }
        }
    }

    /// Exterior Szegő function `D_e(z)`.
    pub fn d_e_generic<T: Real>(&self, z: &Complex<T>) -> Complex<T> {
        match &self.form {
            Form::Rational { c, p, q } => {
                let deg: i64 = p.iter().map(|x| x.mult as i64).sum::<i64>() - q.iter().map(|x| x.mult as i64).sum::<i64>();
                let mut acc = Complex::new(T::one() / T::from_f64(*c), T::zero());
                for b in q {
                    acc = acc * cpowi(&(z.clone() - lift::<T>(b.z)), b.mult);
                }
                for a in p {
                    acc = acc / cpowi(&(z.clone() - lift::<T>(a.z)), a.mult);
                }
                if deg >= 0 {
                    acc * cpowi(z, deg as u32)
                } else {
                    acc / cpowi(z, (-deg) as u32)
                }
            }
            Form::Essential { a, sign } => {
                let e = cone::<T>() / (z.clone() - lift::<T>(*a));
                cexp(&(e * Complex::new(T::from_f64(sign.factor()), T::zero())))
            }
            Form::LogLaurent { l0, l } => {
                let mut s = Complex::new(T::from_f64(-l0 / 2.0), T::zero());
                let zi = cone::<T>() / z.clone();
                for (k, v) in l {
                    s = s - conj(&lift::<T>(*v)) * cpowi(&zi, *k);
                }
                cexp(&s)
            }
        }
    }

    /// `F = D_i·D_e`.
    pub fn f_generic<T: Real>(&self, z: &Complex<T>) -> Complex<T> {
        match &self.form {
            Form::Essential { a, sign } => {
                let al = lift::<T>(*a);
                let e = z.clone() / (conj(&al) * z.clone() - cone::<T>()) + cone::<T>() / (z.clone() - al);
                cexp(&(e * Complex::new(T::from_f64(sign.factor()), T::zero())))
            }
            Form::LogLaurent { l, .. } => {
                let mut s = Complex::new(T::zero(), T::zero());
                let zi = cone::<T>() / z.clone();
                for (k, v) in l {
                    s = s + lift::<T>(*v) * cpowi(z, *k) - conj(&lift::<T>(*v)) * cpowi(&zi, *k);
                }
                cexp(&s)
            }
            Form::Rational { .. } => self.d_i_generic(z) * self.d_e_generic(z),
        }
    }

    pub fn d_i(&self, z: C64) -> C64 {
        self.d_i_generic(&z)
    }

    pub fn d_e(&self, z: C64) -> C64 {
        self.d_e_generic(&z)
    }

    /// `1/D_i(z)`; holomorphic in `|z| < 1/rho`.
    pub fn inv_d_i(&self, z: C64) -> C64 {
        match &self.form {
            Form::Rational { c, p, q } => {
                let mut acc = C64::new(1.0 / c, 0.0);
                for b in q {
                    acc *= (1.0 - b.z.conj() * z).powu(b.mult);
                }
                for a in p {
                    acc /= (1.0 - a.z.conj() * z).powu(a.mult);
                }
                acc
            }
            _ => 1.0 / self.d_i(z),
        }
    }

    pub fn f(&self, z: C64) -> C64 {
        self.f_generic(&z)
    }

    /// Principal branch of `log F` for the essential and log-Laurent kinds.
    pub fn log_f(&self, z: C64) -> Option<C64> {
        match &self.form {
            Form::Essential { a, sign } => Some(sign.factor() * (z / (a.conj() * z - 1.0) + 1.0 / (z - a))),
            Form::LogLaurent { l, .. } => Some(
                l.iter().map(|(k, v)| v * z.powu(*k) - v.conj() * z.powu(*k).inv()).sum(),
            ),
            Form::Rational { .. } => None,
        }
    }

    /// Exact `ℓ_k` when the kind determines it in closed form.
    pub fn log_coefficient(&self, k: i64) -> Option<C64> {
        match &self.form {
            Form::LogLaurent { l0, l } => Some(if k == 0 {
                C64::new(*l0, 0.0)
            } else {
                let v = l.iter().find(|e| e.0 as i64 == k.abs()).map(|e| e.1).unwrap_or_default();
                if k > 0 { v } else { v.conj() }
            }),
            Form::Essential { a, sign } => Some(if k == 0 {
                C64::new(0.0, 0.0)
            } else if k > 0 {
                -sign.factor() * a.conj().powu((k - 1) as u32)
            } else {
                -sign.factor() * a.powu((-k - 1) as u32)
            }),
            Form::Rational { c, p, q } => Some(if k == 0 {
                C64::new(2.0 * c.ln(), 0.0)
            } else {
                // log D_i = log c + Σ m log(1 − p̄ z) − Σ n log(1 − q̄ z)
                let kk = k.unsigned_abs() as u32;
                let mut s = C64::new(0.0, 0.0);
                for a in p {
                    s -= a.mult as f64 * a.z.conj().powu(kk) / kk as f64;
                }
                for b in q {
                    s += b.mult as f64 * b.z.conj().powu(kk) / kk as f64;
                }
                if k > 0 { s } else { s.conj() }
            }),
        }
    }

    /// Limit `lim_{z→a} (z−a)^m D_e(z)` at a pole `a` of order `m`.
    pub fn de_hat(&self, a: C64, m: u32) -> Option<C64> {
        let Form::Rational { c, p, q } = &self.form else { return None };
        let deg: i64 = p.iter().map(|x| x.mult as i64).sum::<i64>() - q.iter().map(|x| x.mult as i64).sum::<i64>();
        let mut acc = C64::new(1.0 / c, 0.0) * a.powi(deg as i32);
        for b in q {
            acc *= (a - b.z).powu(b.mult);
        }
        let mut found = false;
        for x in p {
            if (x.z - a).norm() <= 1e-14 {
                if x.mult != m {
                    return None;
                }
                found = true;
            } else {
                acc /= (a - x.z).powu(x.mult);
            }
        }
        found.then_some(acc)
    }

    /// Singularities of `D_e` inside the disc.
    pub fn classify_singularities(&self) -> Result<WeightMeta> {
        match &self.form {
            Form::Rational { p, q, .. } => {
                let rho = p.iter().map(|x| x.z.norm()).fold(0.0, f64::max);
                Ok(WeightMeta { rho, de_poles: p.clone(), de_zeros: q.clone(), essential: None })
            }
            Form::Essential { a, .. } => Ok(WeightMeta {
                rho: a.norm(),
                de_poles: Vec::new(),
                de_zeros: Vec::new(),
                essential: Some(*a),
            }),
            Form::LogLaurent { .. } => Err(Error::UnknownStructure),
        }
    }

    /// Poles of `D_e` with maximal modulus, and among those maximal order.
    pub fn dominant_poles(&self) -> Result<Vec<Point>> {
        let meta = self.classify_singularities()?;
        if meta.de_poles.is_empty() {
            return Err(Error::NoPoles);
        }
        let rho = meta.rho;
        let on: Vec<Point> = meta.de_poles.iter().copied().filter(|x| (x.z.norm() - rho).abs() <= 1e-12 * rho.max(1e-300)).collect();
        let m = on.iter().map(|x| x.mult).max().unwrap_or(0);
        Ok(on.into_iter().filter(|x| x.mult == m).collect())
    }

    /// Essential kind parameters.
    pub fn essential(&self) -> Option<(C64, EssentialSign)> {
        match self.form {
            Form::Essential { a, sign } => Some((a, sign)),
            _ => None,
        }
    }
}
