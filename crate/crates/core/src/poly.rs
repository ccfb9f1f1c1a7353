//! Monic polynomials and simultaneous root finding.

use alloc::vec;
use alloc::vec::Vec;


use crate::{Error, Result, C64};

/// `z^n + c_{n-1} z^{n-1} + … + c_0`, coefficients stored in ascending order
/// with the trailing `1` included.
#[derive(Debug, Clone, PartialEq)]
pub struct MonicPolynomial {
    coeffs: Vec<C64>,
}

impl MonicPolynomial {
    /// Forces the leading coefficient to exactly one.
    pub fn new(mut coeffs: Vec<C64>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(C64::new(1.0, 0.0));
        } else {
            let n = coeffs.len() - 1;
            coeffs[n] = C64::new(1.0, 0.0);
        }
        MonicPolynomial { coeffs }
    }

    pub fn from_roots(roots: &[C64]) -> Self {
        let mut c = vec![C64::new(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![C64::new(0.0, 0.0); c.len() + 1];
            for (i, &a) in c.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= r * a;
            }
            c = next;
        }
        MonicPolynomial::new(c)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// `(p(z), p'(z))` by Horner.
    pub fn eval_with_derivative(&self, z: C64) -> (C64, C64) {
        let mut p = C64::new(0.0, 0.0);
        let mut d = C64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            d = d * z + p;
            p = p * z + c;
        }
        (p, d)
    }

    /// `Σ |c_k| |z|^k`, the scale against which rounding in `eval` is measured.
    pub fn abs_eval(&self, z: C64) -> f64 {
        let r = z.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }

    /// `z^n conj(p(1/conj z))`.
    pub fn reversed(&self) -> Vec<C64> {
        self.coeffs.iter().rev().map(|c| c.conj()).collect()
    }
}

/// A root together with the number of computed roots merged into it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootCluster {
    pub z: C64,
    pub size: usize,
}

/// All roots of `p` by the Aberth–Ehrlich iteration.
///
/// Exact zero roots (vanishing trailing coefficients) are split off first.
/// The remaining iterates start on a circle whose radius is the geometric
/// mean of `|c_0|^{1/n}` and 1. A root is accepted once
/// `|p(z)| <= tol · Σ|c_k||z|^k` or its Newton correction stalls at
/// roundoff level.
pub fn aberth(p: &MonicPolynomial, tol: f64, max_sweeps: usize) -> Result<Vec<C64>> {
    let c = p.coeffs();
    let shift = c.iter().take_while(|v| v.norm() == 0.0).count();
    let mut roots = vec![C64::new(0.0, 0.0); shift];
    let q = MonicPolynomial::new(c[shift..].to_vec());
    let n = q.degree();
    if n == 0 {
        return Ok(roots);
    }
    if n == 1 {
        roots.push(-q.coeffs()[0]);
        return Ok(roots);
    }
    let c0 = q.coeffs()[0].norm();
    let radius = (c0.powf(1.0 / n as f64)).sqrt().max(1e-3);
    let mut z: Vec<C64> = (0..n)
        .map(|k| C64::from_polar(radius, 2.0 * core::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    let mut done = vec![false; n];
    let eps = f64::EPSILON;
    for _sweep in 0..max_sweeps {
        let mut all = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (pv, dv) = q.eval_with_derivative(z[i]);
            let scale = q.abs_eval(z[i]);
            if pv.norm() <= tol * scale {
                done[i] = true;
                continue;
            }
            all = false;
            let ratio = pv / dv;
            let mut s = C64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let d = z[i] - z[j];
                    if d.norm() > 0.0 {
                        s += 1.0 / d;
                    }
                }
            }
            let step = ratio / (1.0 - ratio * s);
            if !step.re.is_finite() || !step.im.is_finite() {
                let bump = C64::new(1e-8, 1e-8) * (1.0 + z[i].norm());
                z[i] += bump;
                continue;
            }
            z[i] -= step;
            if step.norm() <= 4.0 * eps * z[i].norm().max(f64::MIN_POSITIVE) {
                done[i] = true;
            }
        }
        if all {
            roots.extend_from_slice(&z);
            return Ok(roots);
        }
    }
    Err(Error::NoConvergence { sweeps: max_sweeps })
}

/// Merge roots closer than `radius` (single linkage).
pub fn cluster_roots(roots: &[C64], radius: f64) -> Vec<RootCluster> {
    let n = roots.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(l: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while l[i] != i {
            l[i] = l[l[i]];
            i = l[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (roots[i] - roots[j]).norm() <= radius {
                let a = find(&mut label, i);
                let b = find(&mut label, j);
                if a != b {
                    label[b] = a;
                }
            }
        }
    }
    let mut out: Vec<(usize, C64, usize)> = Vec::new();
    for i in 0..n {
        let r = find(&mut label, i);
        match out.iter_mut().find(|e| e.0 == r) {
            Some(e) => {
                e.1 += roots[i];
                e.2 += 1;
            }
            None => out.push((r, roots[i], 1)),
        }
    }
    out.into_iter().map(|(_, s, k)| RootCluster { z: s / k as f64, size: k }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aberth_recovers_known_roots() {
        let want = [C64::new(0.5, 0.0), C64::new(-0.3, 0.4), C64::new(0.0, -0.9), C64::new(1.2, 0.7)];
        let p = MonicPolynomial::from_roots(&want);
        let got = aberth(&p, 1e-14, 500).unwrap();
        for w in want {
            assert!(got.iter().any(|g| (g - w).norm() < 1e-12), "{w}");
        }
    }

    #[test]
    fn monomial_roots_are_exact_zeros() {
        let mut c = vec![C64::new(0.0, 0.0); 7];
        c.push(C64::new(1.0, 0.0));
        let p = MonicPolynomial::new(c);
        let r = aberth(&p, 1e-14, 500).unwrap();
        assert_eq!(r.len(), 7);
        assert!(r.iter().all(|z| z.norm() == 0.0));
        let cl = cluster_roots(&r, 1e-8);
        assert_eq!(cl, vec![RootCluster { z: C64::new(0.0, 0.0), size: 7 }]);
    }

    #[test]
    fn reversed_polynomial() {
        let p = MonicPolynomial::from_roots(&[C64::new(0.5, 0.5)]);
        let r = p.reversed();
        assert_eq!(r[0], C64::new(1.0, 0.0));
        assert_eq!(r[1], C64::new(-0.5, 0.5));
    }
}
