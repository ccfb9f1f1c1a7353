//! Φ_n, α_n and κ_n from the iterated Cauchy-transform series.

use alloc::vec::Vec;

use crate::cauchy_ops::{iterate, Bounded, CanonicalSeries, IterateOptions, SeriesKind, CONTOUR_BAND};
use crate::fft::Fft;
use crate::poly::MonicPolynomial;
use crate::szego::SzegoData;
use crate::{Error, Result, C64};

const U: f64 = f64::EPSILON / 2.0;
/// Relative step used when a point sits on one of the contours.
pub const RERADIUS_STEP: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalRegion {
    /// `|z| < r`
    Inside,
    /// `r < |z| < 1/r`
    Middle,
    /// `|z| > 1/r`
    Outside,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiValue {
    pub value: C64,
    pub bound: f64,
    pub region: EvalRegion,
    /// radius of the series that produced the value
    pub r: f64,
}

pub fn region(z: C64, r: f64) -> EvalRegion {
    let m = z.norm();
    if m < r {
        EvalRegion::Inside
    } else if m < 1.0 / r {
        EvalRegion::Middle
    } else {
        EvalRegion::Outside
    }
}

fn near_contour(z: C64, r: f64) -> bool {
    let m = z.norm();
    (m - r).abs() < CONTOUR_BAND || (m - 1.0 / r).abs() < CONTOUR_BAND
}

fn outer_part(z: C64, s: &CanonicalSeries, sz: &SzegoData) -> Result<(C64, f64)> {
    let e: Bounded = s.eval_series(SeriesKind::E, z)?;
    let pre = z.powi(s.n as i32) * sz.weight().d_e(z) / s.tau;
    let v = pre * e.value;
    Ok((v, pre.norm() * e.bound() + (s.n as f64 + 16.0) * U * v.norm()))
}

fn inner_part(z: C64, s: &CanonicalSeries, sz: &SzegoData) -> Result<(C64, f64)> {
    let i = s.eval_series(SeriesKind::I, z)?;
    let pre = sz.weight().inv_d_i(z) * s.tau;
    let v = pre * i.value;
    Ok((v, pre.norm() * i.bound() + 16.0 * U * v.norm()))
}

/// Φ_n(z) from one series, with the region picked by `|z|` against `r`.
///
/// Fails with `OnContour` inside the exclusion band of either contour.
pub fn eval_phi(z: C64, s: &CanonicalSeries, sz: &SzegoData) -> Result<PhiValue> {
    if near_contour(z, s.r) {
        return Err(Error::OnContour);
    }
    let reg = region(z, s.r);
    let (value, bound) = match reg {
        EvalRegion::Inside => {
            let (v, b) = inner_part(z, s, sz)?;
            (-v, b)
        }
        EvalRegion::Middle => {
            let (a, ba) = outer_part(z, s, sz)?;
            let (b, bb) = inner_part(z, s, sz)?;
            (a - b, ba + bb + 2.0 * U * (a.norm() + b.norm()))
        }
        EvalRegion::Outside => outer_part(z, s, sz)?,
    };
    Ok(PhiValue { value, bound, region: reg, r: s.r })
}

/// Evaluates Φ_n at many points, rebuilding the series at a nearby radius
/// for points that fall on a contour.
pub struct PhiEvaluator<'a> {
    sz: &'a SzegoData,
    n: usize,
    opts: IterateOptions,
    series: Vec<CanonicalSeries>,
}

impl<'a> PhiEvaluator<'a> {
    pub fn new(n: usize, sz: &'a SzegoData, r: Option<f64>) -> Result<Self> {
        Self::with_options(n, sz, r, IterateOptions::default())
    }

    pub fn with_options(n: usize, sz: &'a SzegoData, r: Option<f64>, opts: IterateOptions) -> Result<Self> {
        let s = iterate(n, r, sz, opts)?;
        Ok(PhiEvaluator { sz, n, opts, series: alloc::vec![s] })
    }

    pub fn primary(&self) -> &CanonicalSeries {
        &self.series[0]
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn alternate(&mut self, z: C64) -> Result<usize> {
        let r0 = self.series[0].r;
        let mut last = Error::OnContour;
        for f in [1.0 + RERADIUS_STEP, 1.0 - RERADIUS_STEP] {
            let r = r0 * f;
            if !(r > self.sz.rho_hat && r < 1.0) || near_contour(z, r) {
                continue;
            }
            if let Some(i) = self.series.iter().position(|s| s.r == r) {
                return Ok(i);
            }
            match iterate(self.n, Some(r), self.sz, self.opts) {
                Ok(s) => {
                    self.series.push(s);
                    return Ok(self.series.len() - 1);
                }
                Err(e) => last = e,
            }
        }
        Err(last)
    }

    /// Φ_n(z); among cached series valid at `z` the smallest bound wins.
    pub fn eval(&mut self, z: C64) -> Result<PhiValue> {
        if near_contour(z, self.series[0].r) {
            self.alternate(z)?;
        }
        let mut best: Option<PhiValue> = None;
        for s in &self.series {
            if let Ok(v) = eval_phi(z, s, self.sz) {
                if best.is_none_or(|b| v.bound < b.bound) {
                    best = Some(v);
                }
            }
        }
        best.ok_or(Error::OnContour)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerblunskyValue {
    pub alpha: C64,
    pub bound: f64,
    /// `−conj(c_{−n−1})`
    pub leading: C64,
    /// bound on `|α_n − leading|`
    pub gap_bound: f64,
}

/// `α_n = conj(τ² I_{n+1}(0))`.
pub fn verblunsky_canonical(n: usize, sz: &SzegoData, r: Option<f64>) -> Result<VerblunskyValue> {
    let s = iterate(n + 1, r, sz, IterateOptions::default())?;
    verblunsky_from_series(&s, sz)
}

/// α_{s.n − 1} from a series built for degree `s.n`.
pub fn verblunsky_from_series(s: &CanonicalSeries, sz: &SzegoData) -> Result<VerblunskyValue> {
    let i = s.eval_series(SeriesKind::I, C64::new(0.0, 0.0))?;
    let t2 = s.tau * s.tau;
    let alpha = (i.value * t2).conj();
    let leading = -sz.c(-(s.n as i64)).conj();
    Ok(VerblunskyValue {
        alpha,
        bound: t2 * i.bound() + 4.0 * U * alpha.norm(),
        leading,
        gap_bound: t2 * s.tail_from(3) / s.r,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaValue {
    pub kappa: f64,
    pub bound: f64,
    pub kappa_sq: f64,
    pub kappa_sq_bound: f64,
}

/// `κ_n² = (τ²/2π) Σ_k g_{n+1}^{(2k)}(0)`.
///
/// The sum over the degree-`m` sequence is the square of the leading
/// coefficient of φ_{m−1}, the same shift as for α.
pub fn kappa_canonical(n: usize, sz: &SzegoData, r: Option<f64>) -> Result<KappaValue> {
    let s = iterate(n + 1, r, sz, IterateOptions::default())?;
    kappa_from_series(&s)
}

/// κ_{s.n − 1} from a series built for degree `s.n`.
pub fn kappa_from_series(s: &CanonicalSeries) -> Result<KappaValue> {
    let g = s.g_even_at_zero();
    let c = s.tau * s.tau / (2.0 * core::f64::consts::PI);
    let kappa_sq = c * g.value.re;
    let kappa_sq_bound = c * g.bound() + 4.0 * U * kappa_sq.abs();
    if !(kappa_sq > 0.0) {
        return Err(Error::NegativeSquare(kappa_sq));
    }
    let kappa = kappa_sq.sqrt();
    Ok(KappaValue { kappa, bound: kappa_sq_bound / (2.0 * kappa) + U * kappa, kappa_sq, kappa_sq_bound })
}

/// Monic coefficients of Φ_n read off samples on the unit circle, with a
/// bound on the coefficient error.
pub fn phi_coefficients(s: &CanonicalSeries, sz: &SzegoData) -> Result<(MonicPolynomial, f64)> {
    let n = s.n;
    let m = 2 * (n + 1).next_power_of_two();
    let h = 2.0 * core::f64::consts::PI / m as f64;
    let mut vals = Vec::with_capacity(m);
    let mut bound: f64 = 0.0;
    for j in 0..m {
        let v = eval_phi(C64::from_polar(1.0, h * j as f64), s, sz)?;
        bound = bound.max(v.bound);
        vals.push(v.value);
    }
    let fft = Fft::<f64>::new(m);
    let c = fft.coefficients(&vals);
    let lead = c[n];
    if (lead - 1.0).norm() > 1e-6 {
        return Err(Error::LeadingCoeffMismatch((lead - 1.0).norm()));
    }
    let scale: f64 = vals.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let bound = bound + 2.0 * (m.trailing_zeros() as f64 + 2.0) * U * scale;
    Ok((MonicPolynomial::new(c[..=n].to_vec()), bound))
}
