//! Cauchy-transform operators `M^i_n`, `M^e_n` and the iterate sequences
//! they generate.
//!
//! A function analytic off one circle is stored as two truncated Laurent
//! branches referenced to that circle: `Σ_{k>=0} a_k (z/R)^k` inside and
//! `Σ_{k<0} a_k (z/R)^k` outside. Each operator samples its integrand on the
//! defining circle, transforms, and splits the coefficients; this is the
//! Sokhotski–Plemelj decomposition `P_+ − P_-` done coefficient-wise.

use alloc::vec::Vec;

use crate::fft::{wrap, Fft};
use crate::szego::SzegoData;
use crate::{Error, Result, C64};

/// Points closer than this to a contour are rejected by branch evaluation.
pub const CONTOUR_BAND: f64 = 1e-3;
/// Safety factor applied to the sampled maximum of `|F|`.
pub const LAMBDA_SAFETY: f64 = 1.05;
const U: f64 = f64::EPSILON / 2.0;
const MAX_FFT: usize = 1 << 18;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchKind {
    /// non-negative powers, valid inside the reference circle
    Disc,
    /// negative powers, valid outside the reference circle
    Exterior,
}

/// Truncated Laurent branch `Σ a_k (z/R)^k`.
///
/// `coeffs[j]` holds `a_j` for a disc branch and `a_{-(j+1)}` for an
/// exterior branch. `err` bounds the ℓ2 norm of the coefficient errors.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentBranch {
    pub kind: BranchKind,
    pub radius: f64,
    pub coeffs: Vec<C64>,
    pub err: f64,
}

impl LaurentBranch {
    pub fn zero(kind: BranchKind, radius: f64) -> Self {
        LaurentBranch { kind, radius, coeffs: Vec::new(), err: 0.0 }
    }

    /// Convergence ratio at `|z|`, below one inside the branch's region.
    pub fn ratio(&self, modulus: f64) -> f64 {
        match self.kind {
            BranchKind::Disc => modulus / self.radius,
            BranchKind::Exterior => self.radius / modulus,
        }
    }

    pub fn eval(&self, z: C64) -> C64 {
        match self.kind {
            BranchKind::Disc => {
                let q = z / self.radius;
                self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &a| acc * q + a)
            }
            BranchKind::Exterior => {
                let q = self.radius / z;
                self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &a| (acc + a) * q)
            }
        }
    }

    /// `Σ |a_k| q^k`.
    pub fn abs_sum(&self, modulus: f64) -> f64 {
        let q = self.ratio(modulus);
        let s = self.coeffs.iter().rev().fold(0.0, |acc, a| acc * q + a.norm());
        match self.kind {
            BranchKind::Disc => s,
            BranchKind::Exterior => s * q,
        }
    }

    /// Bound on the evaluation error at modulus `|z|` from coefficient error
    /// and Horner rounding.
    pub fn error_at(&self, modulus: f64) -> f64 {
        let q = self.ratio(modulus);
        if !(q < 1.0) {
            return f64::INFINITY;
        }
        self.err / (1.0 - q * q).sqrt() + 2.0 * (self.coeffs.len() as f64 + 1.0) * U * self.abs_sum(modulus)
    }

    /// Values at `radius·e^{2πij/n}` and a bound on their error.
    pub fn sample(&self, radius: f64, n: usize, fft: &Fft<f64>) -> (Vec<C64>, f64) {
        let q = match self.kind {
            BranchKind::Disc => radius / self.radius,
            BranchKind::Exterior => self.radius / radius,
        };
        let mut scaled = Vec::with_capacity(self.coeffs.len());
        let mut p = 1.0;
        for &a in &self.coeffs {
            if self.kind == BranchKind::Exterior {
                p *= q;
            }
            scaled.push(a * p);
            if self.kind == BranchKind::Disc {
                p *= q;
            }
        }
        let vals = match self.kind {
            BranchKind::Disc => fft.synthesize(0, &scaled),
            BranchKind::Exterior => {
                let rev: Vec<C64> = scaled.iter().rev().copied().collect();
                fft.synthesize(-(rev.len() as i64), &rev)
            }
        };
        let abs: f64 = scaled.iter().map(|a| a.norm()).sum();
        let err = self.error_at(radius) + 2.0 * (n.trailing_zeros() as f64 + 2.0) * U * abs;
        (vals, err)
    }

    fn trim(&mut self, floor: f64) {
        while let Some(last) = self.coeffs.last() {
            if last.norm() <= floor {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }
}

/// Function analytic off the circle `|z| = contour`, vanishing at infinity.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnulusFunction {
    pub contour: f64,
    pub inner: LaurentBranch,
    pub outer: LaurentBranch,
}

impl AnnulusFunction {
    pub fn branch_at(&self, modulus: f64) -> Result<&LaurentBranch> {
        if (modulus - self.contour).abs() < CONTOUR_BAND {
            return Err(Error::OnContour);
        }
        Ok(if modulus < self.contour { &self.inner } else { &self.outer })
    }

    pub fn eval(&self, z: C64) -> Result<C64> {
        Ok(self.branch_at(z.norm())?.eval(z))
    }
}

/// Split samples on the circle `|z| = radius` into `P_+` and `P_-` parts,
/// multiplied by `scale_plus` and `scale_minus`.
pub fn laurent_project(samples: &[C64], radius: f64, scale_plus: f64, scale_minus: f64) -> AnnulusFunction {
    let n = samples.len();
    let fft = Fft::<f64>::new(n);
    let c = fft.coefficients(samples);
    split(&c, radius, scale_plus, scale_minus)
}

fn split(c: &[C64], radius: f64, scale_plus: f64, scale_minus: f64) -> AnnulusFunction {
    let n = c.len();
    let inner: Vec<C64> = (0..n / 2).map(|k| c[k] * scale_plus).collect();
    let outer: Vec<C64> = (1..=n / 2).map(|k| c[wrap(-(k as i64), n)] * scale_minus).collect();
    let mut a = AnnulusFunction {
        contour: radius,
        inner: LaurentBranch { kind: BranchKind::Disc, radius, coeffs: inner, err: 0.0 },
        outer: LaurentBranch { kind: BranchKind::Exterior, radius, coeffs: outer, err: 0.0 },
    };
    let floor = 1e-19 * a.inner.max_abs().max(a.outer.max_abs());
    a.inner.trim(floor);
    a.outer.trim(floor);
    a
}

/// What an operator is applied to.
#[derive(Debug, Clone, Copy)]
pub enum Source<'a> {
    One,
    Branch(&'a LaurentBranch),
}

/// Cached samples of `F` on `T_r` and `1/F` on `T_{1/r}` for one `(n, r)`.
pub struct OperatorContext<'a> {
    pub sz: &'a SzegoData,
    pub n: usize,
    pub r: f64,
    pub lambda: f64,
    cache: Vec<(usize, Vec<C64>, Vec<C64>)>,
}

fn circle_points(radius: f64, n: usize) -> impl Iterator<Item = C64> {
    let h = 2.0 * core::f64::consts::PI / n as f64;
    (0..n).map(move |j| C64::from_polar(radius, h * j as f64))
}

/// `Λ`: 1.05 times the larger of `max_{T_r}|F|` and `max_{T_{1/r}} 1/|F|`.
pub fn lambda(sz: &SzegoData, r: f64) -> f64 {
    let n = 4096;
    let a = circle_points(r, n).map(|t| sz.f(t).norm()).fold(0.0, f64::max);
    let b = circle_points(1.0 / r, n).map(|t| 1.0 / sz.f(t).norm()).fold(0.0, f64::max);
    LAMBDA_SAFETY * a.max(b)
}

impl<'a> OperatorContext<'a> {
    pub fn new(sz: &'a SzegoData, n: usize, r: f64) -> Result<Self> {
        if !(r > sz.rho_hat && r < 1.0) {
            return Err(Error::BadRadius { r, rho: sz.rho_hat });
        }
        let lambda = lambda(sz, r);
        if !lambda.is_finite() {
            return Err(Error::BadRadius { r, rho: sz.rho_hat });
        }
        Ok(OperatorContext { sz, n, r, lambda, cache: Vec::new() })
    }

    fn kernels(&mut self, m: usize) -> (Vec<C64>, Vec<C64>) {
        if let Some(e) = self.cache.iter().find(|e| e.0 == m) {
            return (e.1.clone(), e.2.clone());
        }
        let n = self.n as i32;
        let r = self.r;
        let inner: Vec<C64> = circle_points(r, m).map(|t| self.sz.f(t) * t.powi(n)).collect();
        let outer: Vec<C64> = circle_points(1.0 / r, m).map(|t| 1.0 / (self.sz.f(t) * t.powi(n))).collect();
        self.cache.push((m, inner.clone(), outer.clone()));
        (inner, outer)
    }

    fn initial_size(&self) -> usize {
        (8 * (self.n + 1)).next_power_of_two().max(256)
    }

    fn apply(&mut self, src: Source<'_>, interior: bool) -> AnnulusFunction {
        let tau2 = self.sz.tau * self.sz.tau;
        let radius = if interior { self.r } else { 1.0 / self.r };
        let mut m = self.initial_size();
        loop {
            let fft = Fft::<f64>::new(m);
            let (kin, kout) = self.kernels(m);
            let kernel = if interior { kin } else { kout };
            let (vals, in_err) = match src {
                Source::One => (alloc::vec![C64::new(1.0, 0.0); m], 0.0),
                Source::Branch(b) => b.sample(radius, m, &fft),
            };
            let g: Vec<C64> = vals.iter().zip(&kernel).map(|(v, k)| v * k).collect();
            let c = fft.coefficients(&g);
            let gmax = g.iter().map(|v| v.norm()).fold(0.0, f64::max);
            let cmax = c.iter().map(|v| v.norm()).fold(0.0, f64::max);
            let tail = (3 * m / 8..5 * m / 8).map(|j| c[j].norm()).fold(0.0, f64::max);
            let floor = (1e-17 * cmax).max(16.0 * U * gmax);
            if tail <= floor || cmax == 0.0 || m >= MAX_FFT {
                let kmax = kernel.iter().map(|v| v.norm()).fold(0.0, f64::max);
                let (sp, sm) = if interior { (-1.0 / tau2, 1.0 / tau2) } else { (tau2, -tau2) };
                let mut a = split(&c, radius, sp, sm);
                let err = (in_err * kmax
                    + (2.0 * m.trailing_zeros() as f64 + 6.0) * U * gmax
                    + (m as f64).sqrt() * tail)
                    * sp.abs();
                a.inner.err = err;
                a.outer.err = err;
                return a;
            }
            m *= 2;
        }
    }

    /// `M^i_n(f)`, analytic off `T_r`.
    pub fn apply_mi(&mut self, src: Source<'_>) -> AnnulusFunction {
        self.apply(src, true)
    }

    /// `M^e_n(f)`, analytic off `T_{1/r}`.
    pub fn apply_me(&mut self, src: Source<'_>) -> AnnulusFunction {
        self.apply(src, false)
    }
}

/// Distance-free prefactor of the a-priori bound on the `k`-th iterate:
/// odd `k` is measured against `1/||z|−r|`, even `k` against `1/||z|−1/r|`.
pub fn term_bound(k: usize, n: usize, r: f64, lambda: f64, tau: f64) -> f64 {
    let k_f = k as f64;
    let log = k_f * lambda.ln() + k_f * n as f64 * r.ln() - (k_f - 1.0) * (1.0 / r - r).ln();
    let pre = if k % 2 == 1 { r / (tau * tau) } else { 1.0 };
    pre * log.exp()
}

/// Smallest `n` with `Λ r^n < 1/r − r`.
pub fn min_degree(r: f64, lambda: f64) -> usize {
    let gap = 1.0 / r - r;
    if lambda < gap {
        return 0;
    }
    let x = (gap / lambda).ln() / r.ln();
    let mut n = x.floor().max(0.0) as usize;
    while lambda * r.powi(n as i32) >= gap {
        n += 1;
    }
    n
}

/// Iterates of both sequences together with their a-priori bounds.
#[derive(Debug, Clone)]
pub struct CanonicalSeries {
    pub n: usize,
    pub r: f64,
    pub tau: f64,
    pub lambda: f64,
    /// `q = Λ r^n / (1/r − r)`
    pub q: f64,
    /// `f^{(1)}, f^{(2)}, …`
    pub f: Vec<AnnulusFunction>,
    /// `g^{(1)}, g^{(2)}, …`
    pub g: Vec<AnnulusFunction>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterateOptions {
    /// Stop once the remaining a-priori tail drops below this.
    pub tol: f64,
    pub max_depth: usize,
}

impl Default for IterateOptions {
    fn default() -> Self {
        IterateOptions { tol: 1e-20, max_depth: 80 }
    }
}

/// `r = (1 + ρ̂)/2`.
pub fn default_radius(sz: &SzegoData) -> f64 {
    0.5 * (1.0 + sz.rho_hat)
}

/// Builds `f^{(k)}` and `g^{(k)}` until the bounds on the remaining terms
/// fall below `opts.tol` or `opts.max_depth` terms are stored.
pub fn iterate(n: usize, r: Option<f64>, sz: &SzegoData, opts: IterateOptions) -> Result<CanonicalSeries> {
    let r = r.unwrap_or_else(|| default_radius(sz));
    let mut ctx = OperatorContext::new(sz, n, r)?;
    let lambda = ctx.lambda;
    let n_min = min_degree(r, lambda);
    if n < n_min {
        return Err(Error::ConvergenceConditionViolated { n, r, n_min });
    }
    let tau = sz.tau;
    let q = lambda * r.powi(n as i32) / (1.0 / r - r);
    let mut f: Vec<AnnulusFunction> = Vec::new();
    let mut g: Vec<AnnulusFunction> = Vec::new();
    for k in 1..=opts.max_depth.max(2) {
        let next_f = {
            let src = match f.last() {
                None => Source::One,
                Some(prev) => Source::Branch(if k % 2 == 1 { &prev.inner } else { &prev.outer }),
            };
            if k % 2 == 1 { ctx.apply_mi(src) } else { ctx.apply_me(src) }
        };
        let next_g = {
            let src = match g.last() {
                None => Source::One,
                Some(prev) => Source::Branch(if k % 2 == 1 { &prev.outer } else { &prev.inner }),
            };
            if k % 2 == 1 { ctx.apply_me(src) } else { ctx.apply_mi(src) }
        };
        f.push(next_f);
        g.push(next_g);
        if k >= 2 {
            let rest = term_bound(k + 1, n, r, lambda, tau).max(term_bound(k + 2, n, r, lambda, tau)) / (1.0 - q * q);
            if rest <= opts.tol {
                break;
            }
        }
    }
    Ok(CanonicalSeries { n, r, tau, lambda, q, f, g })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    /// `E_n = Σ_k f^{(2k)}`, `f^{(0)} = 1`
    E,
    /// `I_n = Σ_k f^{(2k+1)}`
    I,
}

/// Value and error bound of a partial sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounded {
    pub value: C64,
    /// Bound on the omitted terms.
    pub truncation: f64,
    /// Bound on rounding and coefficient errors.
    pub rounding: f64,
}

impl Bounded {
    pub fn bound(&self) -> f64 {
        self.truncation + self.rounding
    }
}

impl CanonicalSeries {
    pub fn term_bound(&self, k: usize) -> f64 {
        term_bound(k, self.n, self.r, self.lambda, self.tau)
    }

    /// A-priori bound on `Σ_{j>=k, j ≡ k mod 2}` of the iterate prefactors.
    pub fn tail_from(&self, k: usize) -> f64 {
        if self.q >= 1.0 {
            return f64::INFINITY;
        }
        self.term_bound(k) / (1.0 - self.q * self.q)
    }

    /// Number of stored iterates of each sequence.
    pub fn depth(&self) -> usize {
        self.f.len()
    }

    /// `E_n(z)` or `I_n(z)` using the branch that is valid at `z`.
    pub fn eval_series(&self, kind: SeriesKind, z: C64) -> Result<Bounded> {
        let m = z.norm();
        let (contour, first) = match kind {
            SeriesKind::E => (1.0 / self.r, 2),
            SeriesKind::I => (self.r, 1),
        };
        if (m - contour).abs() < CONTOUR_BAND {
            return Err(Error::OnContour);
        }
        let mut value = if kind == SeriesKind::E { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
        let mut rounding = 0.0;
        let mut k = first;
        while k <= self.f.len() {
            let b = self.f[k - 1].branch_at(m)?;
            value += b.eval(z);
            rounding += b.error_at(m);
            k += 2;
        }
        let truncation = self.tail_from(k) / (m - contour).abs();
        rounding += 2.0 * (self.f.len() as f64) * U * value.norm();
        Ok(Bounded { value, truncation, rounding })
    }

    /// `Σ_{k>=0} g^{(2k)}(0)` with `g^{(0)} = 1`.
    pub fn g_even_at_zero(&self) -> Bounded {
        let mut value = C64::new(1.0, 0.0);
        let mut rounding = 0.0;
        let mut k = 2;
        while k <= self.g.len() {
            let b = &self.g[k - 1].inner;
            value += b.coeffs.first().copied().unwrap_or_default();
            rounding += b.error_at(0.0);
            k += 2;
        }
        // |g^{(2j)}(0)| <= Λ^{2j} r^{2jn-1} / (1/r − r)^{2j-1}
        let j = k / 2;
        let first = ((2 * j) as f64 * self.lambda.ln() + ((2 * j * self.n) as f64 - 1.0) * self.r.ln()
            - ((2 * j) as f64 - 1.0) * (1.0 / self.r - self.r).ln())
        .exp();
        let truncation = if self.q < 1.0 { first / (1.0 - self.q * self.q) } else { f64::INFINITY };
        Bounded { value, truncation, rounding }
    }
}
