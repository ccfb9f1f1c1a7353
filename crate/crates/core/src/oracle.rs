//! Reference values independent of the series machinery: trigonometric
//! moments, the Szegő recurrence driven by moment inner products, and zeros.

use alloc::vec::Vec;

use num_complex::Complex;

use crate::canonical::{kappa_from_series, phi_coefficients, verblunsky_from_series};
use crate::cauchy_ops::{iterate, IterateOptions};
use crate::dd::Dd;
use crate::fft::Fft;
use crate::poly::{aberth, cluster_roots, MonicPolynomial, RootCluster};
use crate::real::{conj, czero, cone, expi, lower, norm_sqr, Real};
use crate::szego::SzegoData;
use crate::weights::Weight;
use crate::{Error, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    Binary64,
    DoubleDouble,
    /// decimal digits; served by an arbitrary-precision type outside this crate
    Digits(u32),
}

impl Precision {
    pub fn tag(&self) -> &'static str {
        match self {
            Precision::Binary64 => "binary64",
            Precision::DoubleDouble => "double-double",
            Precision::Digits(_) => "digits",
        }
    }
}

/// `m_k = ∫ e^{−ikθ} w dθ` for `0 <= k <= n_max`; negative indices by symmetry.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentTable<T: Real> {
    pub m: Vec<Complex<T>>,
    pub nodes: usize,
}

impl<T: Real> MomentTable<T> {
    pub fn get(&self, k: i64) -> Complex<T> {
        if k >= 0 {
            self.m[k as usize].clone()
        } else {
            conj(&self.m[(-k) as usize])
        }
    }

    pub fn n_max(&self) -> usize {
        self.m.len() - 1
    }
}

const MAX_QUAD: usize = 1 << 20;

fn moments_at<T: Real>(w: &Weight, n_max: usize, nodes: usize) -> Vec<Complex<T>> {
    let fft = Fft::<T>::new(nodes);
    let h = T::pi() * T::from_f64(2.0) / T::from_usize(nodes);
    let samples: Vec<Complex<T>> = (0..nodes)
        .map(|j| {
            let t = expi(&(h.clone() * T::from_usize(j)));
            Complex::new(w.eval_on_circle(&t), T::zero())
        })
        .collect();
    let c = fft.coefficients(&samples);
    let two_pi = T::pi() * T::from_f64(2.0);
    (0..=n_max).map(|k| c[k].clone() * two_pi.clone()).collect()
}

/// Trapezoidal moments on at least `max(4 n_max, 1024)` nodes, doubled until
/// two successive tables agree to `64·eps·m_0`.
pub fn moments<T: Real>(w: &Weight, n_max: usize) -> Result<MomentTable<T>> {
    let mut nodes = (4 * n_max.max(1)).max(1024).next_power_of_two();
    let mut prev = moments_at::<T>(w, n_max, nodes);
    let tol = T::from_f64(64.0 * T::epsilon()) * prev[0].re.clone();
    while nodes < MAX_QUAD {
        nodes *= 2;
        let next = moments_at::<T>(w, n_max, nodes);
        let diff = prev
            .iter()
            .zip(&next)
            .map(|(a, b)| norm_sqr(&(a.clone() - b.clone())).sqrt())
            .fold(T::zero(), |m, d| if d > m { d } else { m });
        if diff <= tol {
            return Ok(MomentTable { m: next, nodes });
        }
        prev = next;
    }
    Err(Error::QuadratureStall { nodes })
}

/// α_0…α_{n−1}, κ_0…κ_n and the monic coefficient tables Φ_0…Φ_n.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult<T: Real> {
    pub alphas: Vec<Complex<T>>,
    pub kappas: Vec<T>,
    pub phis: Vec<Vec<Complex<T>>>,
}

/// `Σ_{j,k} f_j conj(g_k) m_{k−j}`
fn inner<T: Real>(f: &[Complex<T>], f_shift: usize, g: &[Complex<T>], m: &MomentTable<T>) -> Complex<T> {
    let mut acc = czero::<T>();
    for (j, fj) in f.iter().enumerate() {
        for (k, gk) in g.iter().enumerate() {
            acc = acc + fj.clone() * conj(gk) * m.get(k as i64 - (j + f_shift) as i64);
        }
    }
    acc
}

pub fn levinson<T: Real>(m: &MomentTable<T>, n_max: usize) -> Result<OracleResult<T>> {
    let n_max = n_max.min(m.n_max());
    let mut phi: Vec<Complex<T>> = alloc::vec![cone::<T>()];
    let mut alphas = Vec::with_capacity(n_max);
    let mut kappas = Vec::with_capacity(n_max + 1);
    let mut phis = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let norm2 = inner(&phi, 0, &phi, m).re;
        if !(norm2 > T::zero()) {
            return Err(Error::LostPositivity { n });
        }
        kappas.push(T::one() / norm2.clone().sqrt());
        phis.push(phi.clone());
        if n == n_max {
            break;
        }
        // conj(α_n) = <zΦ_n, 1>/‖Φ_n‖²
        let one = [cone::<T>()];
        let a_bar = inner(&phi, 1, &one, m) / norm2;
        if !(T::one() - norm_sqr(&a_bar) > T::zero()) {
            return Err(Error::LostPositivity { n });
        }
        let mut next = alloc::vec![czero::<T>(); n + 2];
        for (j, c) in phi.iter().enumerate() {
            next[j + 1] = next[j + 1].clone() + c.clone();
        }
        // Φ_n^*: reversed conjugate coefficients
        for (j, c) in phi.iter().enumerate() {
            next[n - j] = next[n - j].clone() - a_bar.clone() * conj(c);
        }
        alphas.push(conj(&a_bar));
        phi = next;
    }
    Ok(OracleResult { alphas, kappas, phis })
}

/// Oracle values rounded to binary64.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleF64 {
    pub precision: Precision,
    pub alphas: Vec<C64>,
    pub kappas: Vec<f64>,
    pub phis: Vec<MonicPolynomial>,
}

impl<T: Real> OracleResult<T> {
    pub fn lower(&self, precision: Precision) -> OracleF64 {
        OracleF64 {
            precision,
            alphas: self.alphas.iter().map(lower).collect(),
            kappas: self.kappas.iter().map(|k| k.to_f64()).collect(),
            phis: self.phis.iter().map(|p| MonicPolynomial::new(p.iter().map(lower).collect())).collect(),
        }
    }
}

/// Moments plus recurrence in one of the natively available precisions.
pub fn run_oracle(w: &Weight, n_max: usize, precision: Precision) -> Result<OracleF64> {
    match precision {
        Precision::Binary64 => Ok(levinson(&moments::<f64>(w, n_max + 1)?, n_max)?.lower(precision)),
        Precision::DoubleDouble => Ok(levinson(&moments::<Dd>(w, n_max + 1)?, n_max)?.lower(precision)),
        Precision::Digits(_) => Err(Error::UnsupportedPrecision("digits")),
    }
}

/// Aberth–Ehrlich zeros, at most 500 sweeps.
pub fn zeros_aberth(p: &MonicPolynomial, tol: f64) -> Result<Vec<C64>> {
    aberth(p, tol, 500)
}

/// Zeros grouped into clusters of radius `tol^{1/2}`.
pub fn zeros_clustered(p: &MonicPolynomial, tol: f64) -> Result<Vec<RootCluster>> {
    let z = zeros_aberth(p, tol)?;
    Ok(cluster_roots(&z, tol.sqrt()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareRow {
    pub n: usize,
    pub coeff_err: f64,
    pub coeff_bound: f64,
    pub alpha_err: f64,
    pub alpha_bound: f64,
    pub kappa_err: f64,
    pub kappa_bound: f64,
}

impl CompareRow {
    pub fn coeff_ok(&self) -> bool {
        self.coeff_err <= self.coeff_bound
    }
    pub fn alpha_ok(&self) -> bool {
        self.alpha_err <= self.alpha_bound
    }
    pub fn kappa_ok(&self) -> bool {
        self.kappa_err <= self.kappa_bound
    }
    pub fn ok(&self) -> bool {
        self.coeff_ok() && self.alpha_ok() && self.kappa_ok()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareReport {
    pub rows: Vec<CompareRow>,
}

impl CompareReport {
    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(CompareRow::ok)
    }
}

/// Canonical Φ_n, α_n and κ_n against the oracle for each `n` in `ns`.
///
/// The oracle must reach degree `max(ns) + 1`. The bounds carry a rounding
/// allowance for the binary64 oracle values of `4·eps·max(1, |value|)`.
pub fn compare(
    sz: &SzegoData,
    oracle: &OracleF64,
    ns: impl IntoIterator<Item = usize>,
    r: Option<f64>,
) -> Result<CompareReport> {
    let eps = 4.0 * f64::EPSILON;
    let mut rows = Vec::new();
    for n in ns {
        let s = iterate(n, r, sz, IterateOptions::default())?;
        let (p, pb) = phi_coefficients(&s, sz)?;
        let q = &oracle.phis[n];
        let coeff_err = p.coeffs().iter().zip(q.coeffs()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        let s1 = iterate(n + 1, r, sz, IterateOptions::default())?;
        let k = kappa_from_series(&s1)?;
        let a = verblunsky_from_series(&s1, sz)?;
        let oa = oracle.alphas[n];
        rows.push(CompareRow {
            n,
            coeff_err,
            coeff_bound: pb + eps,
            alpha_err: (a.alpha - oa).norm(),
            alpha_bound: a.bound + eps * oa.norm().max(f64::MIN_POSITIVE),
            kappa_err: (k.kappa - oracle.kappas[n]).abs(),
            kappa_bound: k.bound + eps * oracle.kappas[n],
        });
    }
    Ok(CompareReport { rows })
}
