//! Iterative radix-2 FFT over any [`Real`] scalar.
//!
//! Convention: `forward` computes `X_k = Σ_j x_j e^{-2πi jk/N}`, `inverse` the
//! same sum with `+i`. Neither normalises. Laurent coefficients of samples
//! `f(R e^{2πij/N})` are `forward(..)[k mod N] / N`, scaled by `R^k`.

use alloc::vec::Vec;

use num_complex::Complex;

use crate::real::{conj, czero, expi, Real};

pub struct Fft<T: Real> {
    n: usize,
    // e^{-2πi j/N}, j < N/2
    twiddles: Vec<Complex<T>>,
}

impl<T: Real> Fft<T> {
    /// Panics unless `n` is a power of two.
    pub fn new(n: usize) -> Self {
        assert!(n.is_power_of_two(), "FFT size must be a power of two");
        let mut twiddles = Vec::with_capacity(n / 2);
        let step = T::pi() * T::from_f64(2.0) / T::from_usize(n);
        for j in 0..n / 2 {
            let w = expi(&(step.clone() * T::from_usize(j)));
            twiddles.push(conj(&w));
        }
        Fft { n, twiddles }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    fn run(&self, x: &mut [Complex<T>], inverse: bool) {
        let n = self.n;
        assert_eq!(x.len(), n);
        if n <= 1 {
            return;
        }
        let bits = n.trailing_zeros();
        for i in 0..n {
            let j = i.reverse_bits() >> (usize::BITS - bits);
            if j > i {
                x.swap(i, j);
            }
        }
        let mut len = 2;
        while len <= n {
            let half = len / 2;
            let stride = n / len;
            for start in (0..n).step_by(len) {
                for k in 0..half {
                    let tw = &self.twiddles[k * stride];
                    let w = if inverse { conj(tw) } else { tw.clone() };
                    let u = x[start + k].clone();
                    let v = x[start + k + half].clone() * w;
                    x[start + k] = u.clone() + v.clone();
                    x[start + k + half] = u - v;
                }
            }
            len <<= 1;
        }
    }

    pub fn forward(&self, x: &mut [Complex<T>]) {
        self.run(x, false);
    }

    pub fn inverse(&self, x: &mut [Complex<T>]) {
        self.run(x, true);
    }

    /// Normalised DFT coefficients `(1/N) Σ x_j e^{-2πi jk/N}`, indexed mod N.
    pub fn coefficients(&self, samples: &[Complex<T>]) -> Vec<Complex<T>> {
        let mut x = samples.to_vec();
        self.forward(&mut x);
        let inv = T::one() / T::from_usize(self.n);
        for v in x.iter_mut() {
            *v = Complex::new(v.re.clone() * inv.clone(), v.im.clone() * inv.clone());
        }
        x
    }

    /// Values `Σ_k a_k e^{2πi jk/N}` of a trigonometric sum whose coefficients
    /// are given for `k = k0, k0+1, …`; indices are folded mod N.
    pub fn synthesize(&self, k0: i64, coeffs: &[Complex<T>]) -> Vec<Complex<T>> {
        let mut x = alloc::vec![czero::<T>(); self.n];
        for (i, a) in coeffs.iter().enumerate() {
            let idx = wrap(k0 + i as i64, self.n);
            x[idx] = x[idx].clone() + a.clone();
        }
        self.inverse(&mut x);
        x
    }
}

/// Position of Laurent index `k` in a length-`n` DFT buffer.
pub fn wrap(k: i64, n: usize) -> usize {
    k.rem_euclid(n as i64) as usize
}

/// Signed Laurent index of DFT slot `j`: slots `>= n/2` are negative indices.
pub fn signed_index(j: usize, n: usize) -> i64 {
    if j < n / 2 {
        j as i64
    } else {
        j as i64 - n as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dd::Dd;
    use crate::C64;

    fn naive(x: &[C64]) -> Vec<C64> {
        let n = x.len();
        (0..n)
            .map(|k| {
                x.iter()
                    .enumerate()
                    .map(|(j, v)| {
                        let th = -2.0 * core::f64::consts::PI * (j * k) as f64 / n as f64;
                        v * C64::new(th.cos(), th.sin())
                    })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn matches_naive_dft() {
        let x: Vec<C64> = (0..16).map(|j| C64::new((j as f64).sin(), 0.3 * j as f64)).collect();
        let mut y = x.clone();
        Fft::new(16).forward(&mut y);
        for (a, b) in y.iter().zip(naive(&x)) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn recovers_laurent_coefficients() {
        // f(t) = 2 t^{-2} + 3 + (1 - i) t^3
        let n = 32;
        let fft = Fft::<f64>::new(n);
        let s: Vec<C64> = (0..n)
            .map(|j| {
                let t = C64::from_polar(1.0, 2.0 * core::f64::consts::PI * j as f64 / n as f64);
                2.0 / (t * t) + 3.0 + C64::new(1.0, -1.0) * t * t * t
            })
            .collect();
        let c = fft.coefficients(&s);
        assert!((c[wrap(-2, n)] - 2.0).norm() < 1e-14);
        assert!((c[0] - 3.0).norm() < 1e-14);
        assert!((c[3] - C64::new(1.0, -1.0)).norm() < 1e-14);
        assert!(c[5].norm() < 1e-14);
        let back = fft.synthesize(-2, &[C64::new(2.0, 0.0), 0.0.into(), 3.0.into()]);
        assert!((back[0] - 5.0).norm() < 1e-14);
    }

    #[test]
    fn double_double_round_trip() {
        let n = 64;
        let fft = Fft::<Dd>::new(n);
        let x: Vec<Complex<Dd>> = (0..n)
            .map(|j| Complex::new(Dd::from(j as f64) / Dd::from(3.0), Dd::from(1.0 / (j as f64 + 1.0))))
            .collect();
        let mut y = x.clone();
        fft.forward(&mut y);
        fft.inverse(&mut y);
        for (a, b) in x.iter().zip(&y) {
            let d = a.clone() - b.clone() / Complex::new(Dd::from(n as f64), Dd::from(0.0));
            assert!(d.re.to_f64().abs() < 1e-29 && d.im.to_f64().abs() < 1e-29);
        }
    }
}
