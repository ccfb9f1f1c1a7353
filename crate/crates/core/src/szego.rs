//! Fourier data of `log w`, the Szegő functions `D_i`, `D_e` and the Laurent
//! coefficients of `F = D_i·D_e`.

use alloc::vec::Vec;

use num_complex::Complex;

use crate::fft::{wrap, Fft};
use crate::real::{lift, Real};
use crate::weights::{Weight, WeightMeta};
use crate::{Error, Result, C64};

/// Largest sample count tried by the adaptive transforms.
pub const MAX_NODES: usize = 1 << 20;

/// `ℓ_k = (1/2π) ∫ log w(e^{iθ}) e^{-ikθ} dθ` for `|k| <= kmax`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierLog {
    pub n_nodes: usize,
    pub kmax: usize,
    coeffs: Vec<C64>,
    /// Largest `|ℓ_k|` over `N/4 <= |k| < N/2`.
    pub tail: f64,
}

impl FourierLog {
    pub fn get(&self, k: i64) -> C64 {
        if k.unsigned_abs() as usize > self.kmax {
            return C64::new(0.0, 0.0);
        }
        self.coeffs[(k + self.kmax as i64) as usize]
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Drops coefficients beyond the last one above `floor`; keeps the series
    /// usable off the circle, where noise in the high modes would be amplified.
    pub fn trim(&mut self, floor: f64) {
        let k = (0..=self.kmax as i64)
            .rev()
            .find(|&k| self.get(k).norm() > floor || self.get(-k).norm() > floor)
            .unwrap_or(0) as usize;
        let drop = self.kmax - k;
        self.coeffs = self.coeffs[drop..self.coeffs.len() - drop].to_vec();
        self.kmax = k;
    }
}

fn check_nodes(n: usize) -> Result<()> {
    if n < 64 || !n.is_power_of_two() {
        return Err(Error::BadNodeCount(n));
    }
    Ok(())
}

/// Trapezoidal Fourier coefficients of `log w` on `n_nodes` equispaced nodes.
pub fn log_fourier(w: &Weight, n_nodes: usize) -> Result<FourierLog> {
    check_nodes(n_nodes)?;
    let h = 2.0 * core::f64::consts::PI / n_nodes as f64;
    let mut s = Vec::with_capacity(n_nodes);
    for j in 0..n_nodes {
        let th = h * j as f64;
        let v = w.log_w(th);
        if !v.is_finite() {
            let z = C64::from_polar(1.0, th);
            return Err(if v > 0.0 {
                Error::PoleOnCircle { re: z.re, im: z.im }
            } else {
                Error::ZeroOnCircle { re: z.re, im: z.im }
            });
        }
        s.push(C64::new(v, 0.0));
    }
    let c = Fft::<f64>::new(n_nodes).coefficients(&s);
    let kmax = n_nodes / 2 - 1;
    let coeffs: Vec<C64> = (-(kmax as i64)..=kmax as i64).map(|k| c[wrap(k, n_nodes)]).collect();
    let tail = (-(kmax as i64)..=kmax as i64)
        .filter(|k| k.unsigned_abs() as usize >= n_nodes / 4)
        .map(|k| c[wrap(k, n_nodes)].norm())
        .fold(0.0, f64::max);
    Ok(FourierLog { n_nodes, kmax, coeffs, tail })
}

/// Doubles the node count from 512 until the tail falls below
/// `1e-14·max|ℓ|`, then trims the band at the rounding floor.
pub fn log_fourier_adaptive(w: &Weight) -> Result<FourierLog> {
    let mut n = 512;
    loop {
        let mut fl = log_fourier(w, n)?;
        let scale = fl.max_abs();
        if fl.tail <= 1e-14 * scale || scale == 0.0 {
            let sum: f64 = fl.coeffs.iter().map(|c| c.norm()).sum();
            fl.trim((1e-16 * scale).max(4.0 * f64::EPSILON * sum));
            return Ok(fl);
        }
        if n >= MAX_NODES {
            return Err(Error::TailTooLarge { tail: fl.tail });
        }
        n *= 2;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Interior,
    Exterior,
}

/// Laurent coefficients `c_k` of `F` computed from `n` samples on the circle
/// of the given radius, for `-n/2 <= k < n/2`, in any precision.
pub fn laurent_coefficients<T: Real>(w: &Weight, radius: f64, n: usize) -> Vec<Complex<T>> {
    let fft = Fft::<T>::new(n);
    let r = T::from_f64(radius);
    let step = T::pi() * T::from_f64(2.0) / T::from_usize(n);
    let samples: Vec<Complex<T>> = (0..n)
        .map(|j| {
            let (s, c) = (step.clone() * T::from_usize(j)).sin_cos();
            let t = Complex::new(r.clone() * c, r.clone() * s);
            w.f_generic(&t)
        })
        .collect();
    let c = fft.coefficients(&samples);
    let half = (n / 2) as i64;
    let inv_r = T::one() / r.clone();
    (-half..half)
        .map(|k| {
            let mut scale = T::one();
            let base = if k >= 0 { inv_r.clone() } else { r.clone() };
            for _ in 0..k.unsigned_abs() {
                scale = scale * base.clone();
            }
            let v = c[wrap(k, n)].clone();
            Complex::new(v.re * scale.clone(), v.im * scale)
        })
        .collect()
}

/// Everything derived from the weight that the operators need.
#[derive(Debug, Clone)]
pub struct SzegoData {
    weight: Weight,
    pub tau: f64,
    pub log: FourierLog,
    c: Vec<C64>,
    pub c_kmax: usize,
    pub c_nodes: usize,
    pub rho_hat: f64,
    pub meta: Option<WeightMeta>,
}

/// Builds `τ`, `ℓ_k`, the band of `c_k` above `1e-16·max|c|` and the decay
/// radius.
pub fn build_szego(w: &Weight) -> Result<SzegoData> {
    let log = log_fourier_adaptive(w)?;
    let mut n = 512;
    let (raw, n, floor) = loop {
        let c: Vec<C64> = laurent_coefficients::<f64>(w, 1.0, n);
        let cmax = c.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let half = (n / 2) as i64;
        let tail = (-half..half)
            .filter(|k| k.unsigned_abs() as usize >= n / 4)
            .map(|k| c[(k + half) as usize].norm())
            .fold(0.0, f64::max);
        if !cmax.is_finite() {
            return Err(Error::InvalidWeight("F is not finite on the unit circle"));
        }
        // FFT rounding leaves noise near U·Σ|c_k|; nothing below that is resolvable.
        let floor = (1e-16 * cmax).max(4.0 * f64::EPSILON * c.iter().map(|v| v.norm()).sum::<f64>());
        if tail <= floor {
            break (c, n, floor);
        }
        if n >= MAX_NODES {
            return Err(Error::TailTooLarge { tail: tail / cmax });
        }
        n *= 2;
    };
    let half = (n / 2) as i64;
    let kmax = (-half..half)
        .filter(|&k| raw[(k + half) as usize].norm() >= floor)
        .map(|k| k.unsigned_abs() as usize)
        .max()
        .unwrap_or(0);
    let c: Vec<C64> = (-(kmax as i64)..=kmax as i64).map(|k| raw[(k + half) as usize]).collect();
    let meta = w.classify_singularities().ok();
    let mut sz = SzegoData { weight: w.clone(), tau: w.tau(), log, c, c_kmax: kmax, c_nodes: n, rho_hat: 0.0, meta };
    sz.rho_hat = match &sz.meta {
        Some(m) => m.rho,
        None => estimate_rho(&sz)?,
    };
    Ok(sz)
}

/// Decay radius of `c_{-k}`.
///
/// Closed-form kinds return the exact value. Otherwise a least-squares slope
/// of `log|c_{-k}|` over the last 60% of the coefficients above the noise
/// floor is used. When fewer than ten coefficients clear the floor the decay
/// is faster than any geometric rate that could be fitted, and the
/// conservative bound `(floor/max)^{1/(K+1)}` is returned instead.
pub fn estimate_rho(sz: &SzegoData) -> Result<f64> {
    if let Some(m) = &sz.meta {
        return Ok(m.rho);
    }
    let cmax = sz.c.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if cmax == 0.0 {
        return Ok(0.0);
    }
    let floor = (1e-14 * cmax).max(1e-300);
    let big = (1..=sz.c_kmax as i64).filter(|&k| sz.c(-k).norm() > floor).max().unwrap_or(0);
    if big == 0 {
        return Ok(0.0);
    }
    if big < 10 {
        return Ok((floor / cmax).powf(1.0 / (big as f64 + 1.0)));
    }
    let from = ((0.4 * big as f64).ceil() as i64).max(1);
    let pts: Vec<(f64, f64)> = (from..=big)
        .filter_map(|k| {
            let v = sz.c(-k).norm();
            (v > floor).then(|| (k as f64, v.ln()))
        })
        .collect();
    if pts.len() < 2 {
        return Err(Error::InsufficientDecay);
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let rho = (sxy / sxx).exp();
    if !(rho < 1.0 - 1e-9) {
        return Err(Error::InsufficientDecay);
    }
    Ok(rho.max(0.0))
}

impl SzegoData {
    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    /// `c_k`, zero outside the stored band.
    pub fn c(&self, k: i64) -> C64 {
        if k.unsigned_abs() as usize > self.c_kmax {
            return C64::new(0.0, 0.0);
        }
        self.c[(k + self.c_kmax as i64) as usize]
    }

    /// Closed-form `D_i` or `D_e`, restricted to the side's natural region.
    pub fn eval_d(&self, side: Side, z: C64) -> Result<C64> {
        let r = z.norm();
        match side {
            Side::Interior => {
                if self.rho_hat > 0.0 && r >= 1.0 / self.rho_hat {
                    return Err(Error::OutOfDomain { re: z.re, im: z.im });
                }
                Ok(self.weight.d_i(z))
            }
            Side::Exterior => {
                if r <= self.rho_hat {
                    return Err(Error::OutOfDomain { re: z.re, im: z.im });
                }
                Ok(self.weight.d_e(z))
            }
        }
    }

    /// `D_i` or `D_e` from the truncated `ℓ_k` series; accurate near the circle.
    pub fn eval_d_series(&self, side: Side, z: C64) -> Result<C64> {
        let r = z.norm();
        let l0 = self.log.get(0).re;
        match side {
            Side::Interior => {
                if r > 1.0 + 1e-12 && self.rho_hat > 0.0 && r >= 1.0 / self.rho_hat {
                    return Err(Error::OutOfDomain { re: z.re, im: z.im });
                }
                let mut s = C64::new(0.0, 0.0);
                for k in (1..=self.log.kmax as i64).rev() {
                    s = (s + self.log.get(k)) * z;
                }
                Ok((s + l0 / 2.0).exp())
            }
            Side::Exterior => {
                if r <= self.rho_hat {
                    return Err(Error::OutOfDomain { re: z.re, im: z.im });
                }
                let zi = 1.0 / z;
                let mut s = C64::new(0.0, 0.0);
                for k in (1..=self.log.kmax as i64).rev() {
                    s = (s + self.log.get(-k)) * zi;
                }
                Ok((-s - l0 / 2.0).exp())
            }
        }
    }

    /// `Σ c_k z^k` over the stored band.
    pub fn f_series(&self, z: C64) -> C64 {
        let k = self.c_kmax as i64;
        let mut pos = C64::new(0.0, 0.0);
        for j in (0..=k).rev() {
            pos = pos * z + self.c(j);
        }
        let zi = 1.0 / z;
        let mut neg = C64::new(0.0, 0.0);
        for j in (1..=k).rev() {
            neg = (neg + self.c(-j)) * zi;
        }
        pos + neg
    }

    pub fn f(&self, z: C64) -> C64 {
        self.weight.f(z)
    }

    /// `c_k` in any precision from samples on a circle of radius `radius`
    /// with `n` nodes.
    pub fn c_precise<T: Real>(&self, k: i64, radius: f64, n: usize) -> Complex<T> {
        let all = laurent_coefficients::<T>(&self.weight, radius, n);
        let half = (n / 2) as i64;
        if k < -half || k >= half {
            return lift(C64::new(0.0, 0.0));
        }
        all[(k + half) as usize].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dd::Dd;
    use crate::weights::{lebesgue, make_essential_weight, make_log_laurent_weight, make_polynomial_weight, EssentialSign, Point};

    #[test]
    fn log_fourier_of_single_zero() {
        let w = make_polynomial_weight(&[Point::new(C64::new(0.5, 0.0), 1)]).unwrap();
        let fl = log_fourier(&w, 512).unwrap();
        assert!(fl.get(0).norm() < 1e-15);
        for k in 1..12i64 {
            let want = -(0.5f64).powi(k as i32) / k as f64;
            assert!((fl.get(k) - want).norm() < 1e-15);
            assert!((fl.get(-k) - want).norm() < 1e-15);
        }
        assert!(matches!(log_fourier(&w, 100), Err(Error::BadNodeCount(100))));
        assert!(matches!(log_fourier(&w, 32), Err(Error::BadNodeCount(32))));
    }

    #[test]
    fn essential_plus_log_coefficients() {
        let w = make_essential_weight(C64::new(0.5, 0.0), EssentialSign::Plus).unwrap();
        let fl = log_fourier_adaptive(&w).unwrap();
        for k in -8i64..=8 {
            assert!((fl.get(k) - w.log_coefficient(k).unwrap()).norm() < 1e-14, "k = {k}");
        }
    }

    #[test]
    fn lebesgue_data() {
        let sz = build_szego(&lebesgue()).unwrap();
        assert_eq!(sz.tau, 1.0);
        assert_eq!(sz.rho_hat, 0.0);
        assert!((sz.c(0) - 1.0).norm() < 1e-15);
        assert!(sz.c(3).norm() < 1e-15);
    }

    #[test]
    fn laurent_coefficients_of_single_zero() {
        let w = make_polynomial_weight(&[Point::new(C64::new(0.5, 0.0), 1)]).unwrap();
        let sz = build_szego(&w).unwrap();
        // c_{-m} = (3/4) 2^{-m}
        for m in 1..20 {
            let want = 0.75 * (0.5f64).powi(m);
            assert!((sz.c(-m as i64) - want).norm() < 1e-15, "m = {m}");
        }
        assert!((sz.c(0) - 0.75).norm() < 1e-15);
        assert!((sz.c(1) + 0.5).norm() < 1e-15);
        let c31: Complex<Dd> = sz.c_precise(-31, 0.75, 1024);
        let want = Dd::from(0.75 * (0.5f64).powi(31));
        let err = (c31.re - want).abs().to_f64();
        assert!(err < 1e-34, "{err:e}");
    }

    #[test]
    fn log_laurent_rho_is_small() {
        let w = make_log_laurent_weight(&[(1, C64::new(0.3, 0.0))]).unwrap();
        let sz = build_szego(&w).unwrap();
        assert!(sz.rho_hat < 0.2, "{}", sz.rho_hat);
        // F = exp(0.3(z − 1/z)) has c_k = J_k(0.6)
        assert!((sz.c(1).re - 0.2867009880639157).abs() < 1e-15);
        assert!((sz.c(-1).re + 0.2867009880639157).abs() < 1e-15);
    }

    #[test]
    fn series_and_closed_form_agree() {
        let b = C64::new(0.0, 0.5);
        let w = make_polynomial_weight(&[Point::new(C64::new(0.5, 0.0), 1), Point::new(b, 1)]).unwrap();
        let sz = build_szego(&w).unwrap();
        for z in [C64::new(0.9, 0.1), C64::new(-0.2, 0.8), C64::new(0.0, -0.95)] {
            let a = sz.eval_d(Side::Interior, z).unwrap();
            let s = sz.eval_d_series(Side::Interior, z).unwrap();
            assert!((a - s).norm() < 1e-12 * a.norm());
            let zo = 1.0 / z.conj();
            let a = sz.eval_d(Side::Exterior, zo).unwrap();
            let s = sz.eval_d_series(Side::Exterior, zo).unwrap();
            assert!((a - s).norm() < 1e-12 * a.norm());
        }
        assert!(matches!(sz.eval_d(Side::Exterior, C64::new(0.4, 0.0)), Err(Error::OutOfDomain { .. })));
    }
}
