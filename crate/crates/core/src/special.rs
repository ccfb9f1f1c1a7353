//! Small special-function helpers.


/// Kahan–Babuška (Neumaier) running sum.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// `log C(n, k)`.
///
/// Short products are summed term by term; long ones go through
/// `lgamma`, which stays accurate to a few ulps of the result for the sizes
/// used here (n up to 10^6).
pub fn log_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let k = k.min(n - k);
    if k == 0 {
        return 0.0;
    }
    if k <= 4096 {
        let mut s = CompensatedSum::default();
        for i in 1..=k {
            s.add(((n - k + i) as f64 / i as f64).ln());
        }
        s.value()
    } else {
        let mut s = CompensatedSum::default();
        s.add(libm::lgamma(n as f64 + 1.0));
        s.add(-libm::lgamma(k as f64 + 1.0));
        s.add(-libm::lgamma((n - k) as f64 + 1.0));
        s.value()
    }
}

pub fn binomial(n: u64, k: u64) -> f64 {
    log_binomial(n, k).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_binomials_exact() {
        assert_eq!(binomial(10, 3).round(), 120.0);
        assert!((binomial(75, 9) - 125_595_622_175.0).abs() / 1.256e11 < 1e-12);
        assert_eq!(log_binomial(5, 0), 0.0);
        assert_eq!(log_binomial(3, 5), f64::NEG_INFINITY);
    }

    #[test]
    fn large_binomial_matches_stirling_regime() {
        // log C(2m, m) ~ 2m log 2 - log(sqrt(pi m))
        let m = 500_000u64;
        let exact = log_binomial(2 * m, m);
        let approx = 2.0 * m as f64 * core::f64::consts::LN_2
            - (core::f64::consts::PI * m as f64).sqrt().ln()
            - 1.0 / (8.0 * m as f64);
        assert!((exact - approx).abs() < 1e-6 * exact);
    }
}
