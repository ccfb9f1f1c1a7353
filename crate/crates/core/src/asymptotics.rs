//! Large-n approximations: exterior limit, residue and dominant-pole sums,
//! the `G_n` kernel, clock statistics, accumulation sets of spurious zeros,
//! and saddle points for the essential-singularity weights.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use crate::fft::Fft;
use crate::poly::{aberth, MonicPolynomial};
use crate::special::{binomial, log_binomial};
use crate::szego::SzegoData;
use crate::weights::{EssentialSign, Point, Weight};
use crate::{Error, Result, C64};

/// Pole of `D_e` with the local data the approximations need.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleData {
    pub a: C64,
    pub mult: u32,
    /// `D_i(a)`
    pub di_at: C64,
    /// `lim_{z→a} (z−a)^m D_e(z)`
    pub de_hat: C64,
    pub dominant: bool,
}

impl PoleData {
    /// `D_i(a) Ď_e(a)`, the leading principal coefficient of `F` at `a`.
    pub fn strength(&self) -> C64 {
        self.di_at * self.de_hat
    }
}

/// All poles of `D_e` inside the disc, dominant ones flagged.
pub fn pole_data(w: &Weight) -> Result<Vec<PoleData>> {
    let meta = w.classify_singularities()?;
    let dom = w.dominant_poles().unwrap_or_default();
    meta.de_poles
        .iter()
        .map(|p| {
            let de_hat = w.de_hat(p.z, p.mult).ok_or(Error::UnknownStructure)?;
            Ok(PoleData {
                a: p.z,
                mult: p.mult,
                di_at: w.d_i(p.z),
                de_hat,
                dominant: dom.iter().any(|d| d.z == p.z),
            })
        })
        .collect()
}

/// Default pole exclusion radius `0.05 ρ`.
pub fn default_epsilon(rho: f64) -> f64 {
    0.05 * rho
}

fn check_distance(z: C64, poles: &[PoleData], eps: f64) -> Result<()> {
    for p in poles {
        let d = (z - p.a).norm();
        if d < eps {
            return Err(Error::TooCloseToPole { dist: d });
        }
    }
    Ok(())
}

/// `zⁿ D_e(z)/τ`.
pub fn exterior_approx(n: usize, z: C64, sz: &SzegoData) -> Result<C64> {
    let rho = sz.meta.as_ref().map_or(sz.rho_hat, |m| m.rho);
    if z.norm() <= rho {
        return Err(Error::OutOfDomain { re: z.re, im: z.im });
    }
    Ok(z.powi(n as i32) * sz.weight().d_e(z) / sz.tau)
}

/// Principal-part coefficients `F_{−1}, …, F_{−m}` of `F` at a pole, read
/// off samples on a small circle around it.
pub fn principal_part(w: &Weight, pole: &PoleData, others: &[C64]) -> Vec<C64> {
    let a = pole.a;
    let mut delta = 0.5 * a.norm();
    for s in others {
        let d = (a - s).norm();
        if d > 0.0 {
            delta = delta.min(0.5 * d);
        }
    }
    let n = 128;
    let fft = Fft::<f64>::new(n);
    let h = TAU / n as f64;
    let samples: Vec<C64> = (0..n).map(|j| w.f(a + C64::from_polar(delta, h * j as f64))).collect();
    let c = fft.coefficients(&samples);
    (1..=pole.mult as usize).map(|j| c[n - j] * delta.powi(j as i32)).collect()
}

fn singular_points(w: &Weight, poles: &[PoleData]) -> Vec<C64> {
    let mut s: Vec<C64> = poles.iter().map(|p| p.a).collect();
    if let Ok(meta) = w.classify_singularities() {
        // poles of D_i sit at the reflections of the zeros of D_e
        s.extend(meta.de_zeros.iter().filter(|q| q.z.norm() > 0.0).map(|q| 1.0 / q.z.conj()));
    }
    s
}

/// `res_{t=a} F(t) tⁿ/(t−z)` from the principal part of `F` at `a`.
pub fn residue(n: usize, z: C64, a: C64, principal: &[C64]) -> C64 {
    let d = a - z;
    let mut acc = C64::new(0.0, 0.0);
    for (j, fj) in principal.iter().enumerate() {
        // (t−a)^j coefficient of tⁿ/(t−z)
        let mut hj = C64::new(0.0, 0.0);
        for i in 0..=j.min(n) {
            let l = j - i;
            let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
            hj += binomial(n as u64, i as u64) * a.powi((n - i) as i32) * sign / d.powi(l as i32 + 1);
        }
        acc += fj * hj;
    }
    acc
}

/// `zⁿD_e(z)/τ + (τ D_i(z))^{−1} Σ_k res_{a_k} F(t)tⁿ/(t−z)` over all `poles`.
pub fn residue_approx(n: usize, z: C64, poles: &[PoleData], sz: &SzegoData, eps: f64) -> Result<C64> {
    check_distance(z, poles, eps)?;
    let w = sz.weight();
    let sing = singular_points(w, poles);
    let mut s = C64::new(0.0, 0.0);
    for p in poles {
        let others: Vec<C64> = sing.iter().copied().filter(|x| *x != p.a).collect();
        s += residue(n, z, p.a, &principal_part(w, p, &others));
    }
    Ok(z.powi(n as i32) * w.d_e(z) / sz.tau + s * w.inv_d_i(z) / sz.tau)
}

/// Dominant-pole approximation with `C(n, m−1) a^{n−m+1} D_i(a)Ď_e(a)/(a−z)`.
pub fn dominant_approx(n: usize, z: C64, poles: &[PoleData], sz: &SzegoData, eps: f64) -> Result<C64> {
    check_distance(z, poles, eps)?;
    let dom: Vec<&PoleData> = poles.iter().filter(|p| p.dominant).collect();
    if dom.is_empty() {
        return Err(Error::NoPoles);
    }
    let w = sz.weight();
    let mut s = C64::new(0.0, 0.0);
    for p in dom {
        let m = p.mult as usize;
        let k = m - 1;
        if n < k {
            return Err(Error::DegreeTooSmall { n, min: k });
        }
        s += binomial(n as u64, k as u64) * p.a.powi((n - k) as i32) * p.strength() / (p.a - z);
    }
    Ok(z.powi(n as i32) * w.d_e(z) / sz.tau + s * w.inv_d_i(z) / sz.tau)
}

fn dominant_of(poles: &[PoleData]) -> Result<Vec<PoleData>> {
    let d: Vec<PoleData> = poles.iter().copied().filter(|p| p.dominant).collect();
    if d.is_empty() {
        return Err(Error::NoPoles);
    }
    Ok(d)
}

/// `θ_k` with `a_k/|a_k| = e^{2πiθ_k} a_1/|a_1|`, in `[0, 1)`.
pub fn thetas(dominant: &[PoleData]) -> Vec<f64> {
    let base = dominant[0].a.arg();
    dominant
        .iter()
        .map(|p| {
            let t = (p.a.arg() - base) / TAU;
            t - t.floor()
        })
        .collect()
}

/// Weights `D_i(a_k)Ď_e(a_k) e^{2πi(n−m+1)θ_k}` of the `G_n` kernel.
fn gn_weights(n: usize, dominant: &[PoleData]) -> Vec<C64> {
    let m = dominant[0].mult as i64;
    let j = n as i64 - m + 1;
    thetas(dominant)
        .iter()
        .zip(dominant)
        .map(|(t, p)| p.strength() * C64::from_polar(1.0, TAU * (j as f64 * t).fract()))
        .collect()
}

/// `G_n(z) = Σ_k D_i(a_k)Ď_e(a_k) e^{2πi(n−m+1)θ_k}/(a_k − z)` over dominant poles.
pub fn eval_gn(n: usize, z: C64, poles: &[PoleData]) -> Result<C64> {
    let dom = dominant_of(poles)?;
    let wts = gn_weights(n, &dom);
    Ok(dom.iter().zip(&wts).map(|(p, c)| c / (p.a - z)).sum())
}

/// Zeros of `Σ_k c_k/(a_k − t)`: roots of `Σ_k c_k Π_{j≠k}(a_j − t)`.
fn kernel_zeros(a: &[C64], c: &[C64]) -> Result<Vec<C64>> {
    let l = a.len();
    let mut num = alloc::vec![C64::new(0.0, 0.0); l];
    for k in 0..l {
        let mut poly = alloc::vec![c[k]];
        for (j, aj) in a.iter().enumerate() {
            if j == k {
                continue;
            }
            // multiply by (a_j − t)
            let mut next = alloc::vec![C64::new(0.0, 0.0); poly.len() + 1];
            for (i, v) in poly.iter().enumerate() {
                next[i] += v * aj;
                next[i + 1] -= v;
            }
            poly = next;
        }
        for (i, v) in poly.into_iter().enumerate() {
            num[i] += v;
        }
    }
    let scale = num.iter().map(|v| v.norm()).fold(0.0, f64::max);
    while num.len() > 1 && num.last().is_some_and(|v| v.norm() <= 1e-14 * scale) {
        num.pop();
    }
    if num.len() <= 1 {
        return Ok(Vec::new());
    }
    let lead = *num.last().unwrap();
    let p = MonicPolynomial::new(num.iter().map(|v| v / lead).collect());
    aberth(&p, 1e-15, 500)
}

/// Zeros of `G_n`, at most `ℓ − 1` of them.
pub fn gn_zeros(n: usize, poles: &[PoleData]) -> Result<Vec<C64>> {
    let dom = dominant_of(poles)?;
    let a: Vec<C64> = dom.iter().map(|p| p.a).collect();
    kernel_zeros(&a, &gn_weights(n, &dom))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClockPrediction {
    pub n: usize,
    pub m: u32,
    pub rho: f64,
    /// `ρ C(n, m−1)^{1/n}`
    pub v_n: f64,
    /// `ρ (1 + log C(n, m−1)/n)`
    pub radius: f64,
    /// `2π/n`
    pub spacing: f64,
}

pub fn clock_predict(n: usize, m: u32, rho: f64) -> ClockPrediction {
    let lc = log_binomial(n as u64, m.saturating_sub(1) as u64);
    let nf = n as f64;
    ClockPrediction {
        n,
        m,
        rho,
        v_n: rho * (lc / nf).exp(),
        radius: rho * (1.0 + lc / nf),
        spacing: TAU / nf,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExcludedKind {
    Pole,
    GnZero,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Excluded {
    pub kind: ExcludedKind,
    pub z: C64,
}

/// Angular spacing larger than `1.5·2π/n` between consecutive bulk zeros.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gap {
    /// argument of the zero opening the gap (counter-clockwise)
    pub start: f64,
    pub end: f64,
    /// spacing in units of `2π/n`
    pub width: f64,
    pub nearest: Option<Excluded>,
    /// angle from the middle of the gap to `nearest`
    pub nearest_angle: f64,
}

impl Gap {
    /// Whether the arc of the gap, widened by `slack` radians, covers `arg`.
    pub fn covers(&self, arg: f64, slack: f64) -> bool {
        let len = (self.end - self.start).rem_euclid(TAU);
        let off = (arg - self.start + slack).rem_euclid(TAU);
        off <= len + 2.0 * slack
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClockReport {
    pub n: usize,
    pub window: f64,
    pub count: usize,
    pub median_radius: f64,
    pub mean_radius: f64,
    /// largest `||z| − radius|` over the bulk
    pub max_radial_dev: f64,
    /// mean of the non-gap spacings in units of `2π/n`
    pub mean_spacing: f64,
    /// largest `|spacing·n/2π − 1|` over non-gap spacings
    pub max_spacing_dev: f64,
    pub gaps: Vec<Gap>,
}

/// Gap threshold in units of `2π/n`.
pub const GAP_FACTOR: f64 = 1.5;

/// Bulk statistics of zeros with `||z| − v_n| < window`.
pub fn clock_report(zeros: &[C64], pred: &ClockPrediction, excluded: &[Excluded], window: f64) -> Result<ClockReport> {
    let mut bulk: Vec<C64> = zeros.iter().copied().filter(|z| (z.norm() - pred.v_n).abs() < window).collect();
    let n = pred.n;
    if bulk.len() < n.div_ceil(2) || bulk.len() < 2 {
        return Err(Error::NoBulkZeros);
    }
    bulk.sort_by(|a, b| a.arg().total_cmp(&b.arg()));
    let mut radii: Vec<f64> = bulk.iter().map(|z| z.norm()).collect();
    radii.sort_by(f64::total_cmp);
    let k = radii.len();
    let median = if k % 2 == 1 { radii[k / 2] } else { 0.5 * (radii[k / 2 - 1] + radii[k / 2]) };
    let mean_radius = radii.iter().sum::<f64>() / k as f64;
    let max_radial_dev = radii.iter().map(|r| (r - pred.radius).abs()).fold(0.0, f64::max);
    let unit = TAU / n as f64;
    let mut gaps = Vec::new();
    let mut normal = Vec::new();
    for i in 0..k {
        let s = bulk[i].arg();
        let e = bulk[(i + 1) % k].arg();
        let sp = (e - s).rem_euclid(TAU);
        let sp = if k == 1 { TAU } else { sp };
        let wdt = sp / unit;
        if wdt > GAP_FACTOR {
            let mid = s + 0.5 * sp;
            let mut best: Option<(Excluded, f64)> = None;
            for x in excluded {
                let d = (x.z.arg() - mid + PI).rem_euclid(TAU) - PI;
                if best.is_none_or(|(_, bd)| d.abs() < bd.abs()) {
                    best = Some((*x, d));
                }
            }
            gaps.push(Gap {
                start: s,
                end: e,
                width: wdt,
                nearest: best.map(|b| b.0),
                nearest_angle: best.map_or(f64::NAN, |b| b.1),
            });
        } else {
            normal.push(wdt);
        }
    }
    let mean_spacing = if normal.is_empty() { f64::NAN } else { normal.iter().sum::<f64>() / normal.len() as f64 };
    let max_spacing_dev = normal.iter().map(|w| (w - 1.0).abs()).fold(0.0, f64::max);
    Ok(ClockReport {
        n,
        window,
        count: k,
        median_radius: median,
        mean_radius,
        max_radial_dev,
        mean_spacing,
        max_spacing_dev,
        gaps,
    })
}

/// Declared arithmetic nature of a pole argument `θ_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseDecl {
    /// `θ_k = p/q`
    Rational { p: i64, q: u64 },
    /// irrational and independent of the other declared phases
    Independent,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Accumulation {
    /// finitely many limit points
    Points(Vec<C64>),
    /// samples of a curve (one free phase)
    Curve(Vec<C64>),
    /// samples of a region (several free phases)
    Cloud(Vec<C64>),
}

impl Accumulation {
    pub fn points(&self) -> &[C64] {
        match self {
            Accumulation::Points(p) | Accumulation::Curve(p) | Accumulation::Cloud(p) => p,
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Limit points of zeros of `Φ_n` inside `|t| < ρ` produced by the dominant
/// poles. `decls[k]` describes `θ_{k+1}` for the second and later dominant
/// poles (`θ_1 = 0`). `samples` is the grid size per free phase.
pub fn accumulation_points(poles: &[PoleData], decls: &[PhaseDecl], samples: usize) -> Result<Accumulation> {
    let dom = dominant_of(poles)?;
    if decls.len() + 1 != dom.len() {
        return Err(Error::UndeclaredArithmeticType);
    }
    let rho = dom[0].a.norm();
    let a: Vec<C64> = dom.iter().map(|p| p.a).collect();
    let base: Vec<C64> = dom.iter().map(|p| p.strength()).collect();
    if dom.len() == 1 {
        return Ok(Accumulation::Points(Vec::new()));
    }
    let mut period: u64 = 1;
    for d in decls {
        if let PhaseDecl::Rational { q, .. } = d {
            if *q == 0 {
                return Err(Error::UndeclaredArithmeticType);
            }
            period = period / gcd(period, *q) * q;
        }
    }
    let free: Vec<usize> = decls
        .iter()
        .enumerate()
        .filter(|(_, d)| matches!(d, PhaseDecl::Independent))
        .map(|(i, _)| i + 1)
        .collect();
    let grid = if free.is_empty() { 1 } else { samples.max(1) };
    let total = grid.pow(free.len() as u32);
    let mut out: Vec<C64> = Vec::new();
    for j in 0..period {
        for g in 0..total {
            let mut c = base.clone();
            let mut idx = g;
            for (k, d) in decls.iter().enumerate() {
                let phase = match d {
                    PhaseDecl::Rational { p, q } => ((j as i128 * *p as i128).rem_euclid(*q as i128)) as f64 / *q as f64,
                    PhaseDecl::Independent => {
                        let s = idx % grid;
                        idx /= grid;
                        s as f64 / grid as f64
                    }
                };
                c[k + 1] *= C64::from_polar(1.0, TAU * phase);
            }
            for t in kernel_zeros(&a, &c)? {
                if t.norm() < rho && !out.iter().any(|u| (u - t).norm() < 1e-10) {
                    out.push(t);
                }
            }
        }
    }
    Ok(match free.len() {
        0 => Accumulation::Points(out),
        1 => Accumulation::Curve(out),
        _ => Accumulation::Cloud(out),
    })
}

/// `log F` for the essential weights with real centre `a`.
pub fn essential_log_f(sign: EssentialSign, a: f64, t: C64) -> C64 {
    let v = t / (a * t - 1.0) + 1.0 / (t - a);
    match sign {
        EssentialSign::Plus => v,
        EssentialSign::Minus => -v,
    }
}

fn log_f_d1(sign: EssentialSign, a: f64, t: C64) -> C64 {
    let v = -(1.0 / (a * t - 1.0).powi(2) + 1.0 / (t - a).powi(2));
    match sign {
        EssentialSign::Plus => v,
        EssentialSign::Minus => -v,
    }
}

fn log_f_d2(sign: EssentialSign, a: f64, t: C64) -> C64 {
    let v = 2.0 * a / (a * t - 1.0).powi(3) + 2.0 / (t - a).powi(3);
    match sign {
        EssentialSign::Plus => v,
        EssentialSign::Minus => -v,
    }
}

/// `Ψ(t) = log t + log F(t)/m`.
pub fn psi(sign: EssentialSign, a: f64, m: f64, t: C64) -> C64 {
    t.ln() + essential_log_f(sign, a, t) / m
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaddleData {
    pub sign: EssentialSign,
    pub a: f64,
    pub n: usize,
    /// `m` in `Ψ(t) = log t + log F(t)/m`
    pub exponent: f64,
    pub t_plus: C64,
    pub t_minus: C64,
    pub psi_at: C64,
    pub f_at: C64,
    /// `|Ψ'(t_+)|`
    pub residual: f64,
}

fn newton(sign: EssentialSign, a: f64, m: f64, mut t: C64) -> Result<(C64, f64)> {
    for _ in 0..100 {
        let g = 1.0 / t + log_f_d1(sign, a, t) / m;
        let dg = -1.0 / (t * t) + log_f_d2(sign, a, t) / m;
        let step = g / dg;
        if !step.is_finite() {
            return Err(Error::NewtonDiverged);
        }
        t -= step;
        let r = (1.0 / t + log_f_d1(sign, a, t) / m).norm();
        if r <= 1e-13 {
            return Ok((t, r));
        }
    }
    Err(Error::NewtonDiverged)
}

/// Saddle of `Ψ` with exponent `m`, seeded at `a ± √(a/m)` (Plus) or
/// `a ± i√(a/m)` (Minus).
pub fn saddle_point(sign: EssentialSign, a: f64, n: usize, m: f64) -> Result<SaddleData> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::BadCenter { modulus: a.abs() });
    }
    if n < 4 {
        return Err(Error::DegreeTooSmall { n, min: 4 });
    }
    let d = (a / m).sqrt();
    let (sp, sm) = match sign {
        EssentialSign::Plus => (C64::new(a + d, 0.0), C64::new(a - d, 0.0)),
        EssentialSign::Minus => (C64::new(a, d), C64::new(a, -d)),
    };
    let (t_plus, residual) = newton(sign, a, m, sp)?;
    let (t_minus, _) = newton(sign, a, m, sm)?;
    Ok(SaddleData {
        sign,
        a,
        n,
        exponent: m,
        t_plus,
        t_minus,
        psi_at: psi(sign, a, m, t_plus),
        f_at: essential_log_f(sign, a, t_plus).exp(),
        residual,
    })
}

/// The saddle governing `α_n`: exponent `n + 1`.
pub fn saddle_solve(sign: EssentialSign, a: f64, n: usize) -> Result<SaddleData> {
    saddle_point(sign, a, n, n as f64 + 1.0)
}

/// Leading-order α_n for the essential weights:
/// Plus `−t_+ⁿF(t_+)(a/n)^{3/4}/(2√π)`, Minus `−(a/n)^{3/4} Re(t_+ⁿF(t_+))/√π`.
pub fn essential_verblunsky(sign: EssentialSign, a: f64, n: usize) -> Result<C64> {
    let s = saddle_solve(sign, a, n)?;
    let v = s.t_plus.powi(n as i32) * s.f_at;
    let c = (a / n as f64).powf(0.75) / PI.sqrt();
    Ok(match sign {
        EssentialSign::Plus => -0.5 * c * v,
        EssentialSign::Minus => C64::new(-c * v.re, 0.0),
    })
}

/// α_n ≈ −conj(c_{−n−1}) with `c_{−n−1} = (2πi)^{−1}∮ e^{h}`, `h = n log t + log F`,
/// each saddle contributing `e^{h}/√(2π h'')`.
pub fn essential_verblunsky_steepest(sign: EssentialSign, a: f64, n: usize) -> Result<C64> {
    let s = saddle_point(sign, a, n, n as f64)?;
    let t = s.t_plus;
    let nf = n as f64;
    let h = nf * t.ln() + essential_log_f(sign, a, t);
    let h2 = -nf / (t * t) + log_f_d2(sign, a, t);
    let term = h.exp() / (TAU * h2).sqrt();
    let c = match sign {
        EssentialSign::Plus => term,
        EssentialSign::Minus => C64::new(2.0 * term.re, 0.0),
    };
    Ok(-c.conj())
}

/// `Ψ_n − Ψ_n(t_+)` on a `res × res` grid over `[x0, x1] × [y0, y1]`, with
/// `Ψ_n = log t + log F(t)/n`. Rows are `(x, y, Re, Im)`.
pub fn psi_grid(sign: EssentialSign, a: f64, n: usize, window: [f64; 4], res: usize) -> Result<Vec<[f64; 4]>> {
    let s = saddle_point(sign, a, n, n as f64)?;
    let [x0, x1, y0, y1] = window;
    let res = res.max(2);
    let mut out = Vec::with_capacity(res * res);
    for i in 0..res {
        let y = y0 + (y1 - y0) * i as f64 / (res - 1) as f64;
        for j in 0..res {
            let x = x0 + (x1 - x0) * j as f64 / (res - 1) as f64;
            let v = psi(sign, a, n as f64, C64::new(x, y)) - s.psi_at;
            out.push([x, y, v.re, v.im]);
        }
    }
    Ok(out)
}

/// Dominant multiplicity and `ρ` of a weight's `D_e`.
pub fn dominant_multiplicity(w: &Weight) -> Result<(u32, f64)> {
    let d: Vec<Point> = w.dominant_poles()?;
    Ok((d[0].mult, d[0].z.norm()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::szego::build_szego;
    use crate::weights::{make_polynomial_weight, Point};

    fn half() -> Weight {
        make_polynomial_weight(&[Point::new(C64::new(0.5, 0.0), 1)]).unwrap()
    }

    fn two_pole() -> Weight {
        make_polynomial_weight(&[Point::new(C64::new(0.5, 0.0), 1), Point::new(C64::new(0.0, 0.5), 1)]).unwrap()
    }

    #[test]
    fn exterior_value() {
        let sz = build_szego(&half()).unwrap();
        let v = exterior_approx(10, C64::new(2.0, 0.0), &sz).unwrap();
        assert!((v.re - 1365.3333333333333).abs() < 1e-10);
        assert!(exterior_approx(10, C64::new(0.3, 0.0), &sz).is_err());
    }

    #[test]
    fn single_pole_residue_is_exact_first_iterate() {
        let sz = build_szego(&half()).unwrap();
        let poles = pole_data(sz.weight()).unwrap();
        assert!((poles[0].strength() - C64::new(0.375, 0.0)).norm() < 1e-15);
        let n = 9;
        let z = C64::new(0.1, 0.2);
        let a: f64 = 0.5;
        let c = 0.75 * a.powi(n as i32 + 1);
        let want = z.powi(n as i32 + 1) / (z - a) + c / ((a - z) * (1.0 - a * z));
        let r = residue_approx(n, z, &poles, &sz, 0.025).unwrap();
        let d = dominant_approx(n, z, &poles, &sz, 0.025).unwrap();
        assert!((r - want).norm() < 1e-14, "{r} {want}");
        assert!((d - want).norm() < 1e-14);
        assert!(matches!(residue_approx(n, C64::new(0.51, 0.0), &poles, &sz, 0.025), Err(Error::TooCloseToPole { .. })));
    }

    #[test]
    fn spurious_limits() {
        let sz = build_szego(&two_pole()).unwrap();
        let poles = pole_data(sz.weight()).unwrap();
        let s1 = C64::new(3.0 / 16.0, 3.0 / 16.0);
        let s2 = C64::new(-1.0 / 6.0, -1.0 / 6.0);
        let z0 = gn_zeros(40, &poles).unwrap();
        assert!(z0.len() == 1 && (z0[0] - s1).norm() < 1e-12, "{z0:?}");
        let z3 = gn_zeros(43, &poles).unwrap();
        assert!(z3.len() == 1 && (z3[0] - s2).norm() < 1e-12, "{z3:?}");
        let acc = accumulation_points(&poles, &[PhaseDecl::Rational { p: 1, q: 4 }], 0).unwrap();
        let pts = acc.points();
        assert!(pts.iter().any(|p| (p - s1).norm() < 1e-12));
        assert!(pts.iter().any(|p| (p - s2).norm() < 1e-12));
        assert!(pts.iter().all(|p| p.norm() < 0.5));
    }

    #[test]
    fn irrational_pair_gives_line_through_origin() {
        let b = C64::from_polar(0.5, PI * 2f64.sqrt());
        let w = make_polynomial_weight(&[Point::new(C64::new(0.5, 0.0), 1), Point::new(b, 1)]).unwrap();
        let poles = pole_data(&w).unwrap();
        let acc = accumulation_points(&poles, &[PhaseDecl::Independent], 400).unwrap();
        let pts = acc.points();
        assert!(matches!(acc, Accumulation::Curve(_)) && pts.len() > 10);
        let dir = pts.iter().max_by(|a, b| a.norm().total_cmp(&b.norm())).unwrap();
        let dir = dir / dir.norm();
        for p in pts {
            assert!((p * dir.conj()).im.abs() < 1e-9, "{p}");
        }
        assert_eq!(accumulation_points(&poles, &[], 4), Err(Error::UndeclaredArithmeticType));
    }

    #[test]
    fn clock_numbers() {
        let p = clock_predict(75, 10, 0.5);
        assert!((p.radius - 0.6704).abs() < 1e-3);
        assert!((p.v_n - 0.703).abs() < 1e-3);
        assert!((p.spacing - TAU / 75.0).abs() < 1e-15);
        let p1 = clock_predict(30, 1, 0.5);
        assert_eq!(p1.radius, 0.5);
    }

    #[test]
    fn saddles() {
        let s = saddle_solve(EssentialSign::Plus, 0.5, 30).unwrap();
        assert!(s.t_plus.im == 0.0 && s.t_minus.re < 0.5 && s.t_plus.re > 0.5);
        assert!((s.t_plus.re - 0.627).abs() < 0.03);
        assert!(s.residual <= 1e-13);
        let m = saddle_solve(EssentialSign::Minus, 0.5, 30).unwrap();
        assert!(m.t_plus.im > 0.0 && (m.t_plus - m.t_minus.conj()).norm() < 1e-13);
        assert!((m.t_plus - C64::new(0.5, 0.127)).norm() < 0.03);
        assert!(essential_verblunsky(EssentialSign::Plus, 0.5, 40).unwrap().re < 0.0);
    }
}
