//! Acceptance run: one PASS/FAIL line per criterion, tolerances pinned.
//!
//! Oracle values come from the double-double moment recurrence and are
//! evaluated in double-double before rounding.

use std::f64::consts::{PI, TAU};
use std::time::{Duration, Instant};

use szego_core::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use szego_core::asymptotics::{clock_predict, essential_verblunsky, essential_verblunsky_steepest, pole_data, Excluded, ExcludedKind};
use szego_core::canonical::{kappa_canonical, verblunsky_canonical, PhiEvaluator};
use szego_core::cauchy_ops::{iterate, IterateOptions, SeriesKind};
use szego_core::dd::Dd;
use szego_core::oracle::{levinson, moments, zeros_aberth, OracleResult};
use szego_core::poly::MonicPolynomial;
use szego_core::real::{lift, Real};
use szego_core::szego::{build_szego, SzegoData};
use szego_core::weights::{lebesgue, make_essential_weight, make_log_laurent_weight, make_polynomial_weight, EssentialSign, Point, Weight};
use szego_core::C64;

struct Outcome {
    pass: bool,
    detail: String,
}

fn pt(re: f64, im: f64, m: u32) -> Point {
    Point::new(C64::new(re, im), m)
}

fn half() -> Weight {
    make_polynomial_weight(&[pt(0.5, 0.0, 1)]).unwrap()
}

fn two_pole() -> Weight {
    make_polynomial_weight(&[pt(0.5, 0.0, 1), pt(0.0, 0.5, 1)]).unwrap()
}

fn log_laurent() -> Weight {
    make_log_laurent_weight(&[(1, C64::new(0.3, 0.0))]).unwrap()
}

fn clock_weight() -> Weight {
    let b = C64::from_polar(0.5, PI * 2f64.sqrt());
    make_polynomial_weight(&[pt(0.5, 0.0, 10), Point::new(b, 3)]).unwrap()
}

fn essential(sign: EssentialSign) -> Weight {
    make_essential_weight(C64::new(0.5, 0.0), sign).unwrap()
}

fn oracle(w: &Weight, n_max: usize) -> OracleResult<Dd> {
    levinson(&moments::<Dd>(w, n_max + 1).unwrap(), n_max).unwrap()
}

fn eval_dd(coeffs: &[Complex<Dd>], z: C64) -> C64 {
    let z: Complex<Dd> = lift(z);
    let mut acc = Complex::new(Dd::from(0.0), Dd::from(0.0));
    for c in coeffs.iter().rev() {
        acc = acc * z + *c;
    }
    C64::new(acc.re.hi, acc.im.hi)
}

fn monic(coeffs: &[Complex<Dd>]) -> MonicPolynomial {
    MonicPolynomial::new(coeffs.iter().map(|c| C64::new(c.re.hi, c.im.hi)).collect())
}

fn disc_points(rng: &mut ChaCha8Rng, count: usize, rmax: f64) -> Vec<C64> {
    (0..count)
        .map(|_| {
            let r = rmax * rng.gen::<f64>().sqrt();
            C64::from_polar(r, TAU * rng.gen::<f64>())
        })
        .collect()
}

/// Least-squares slope of `log y` against `x`, returned as a ratio per step.
fn geometric_rate(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in xs.iter().zip(&ly) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    (num / den).exp()
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> (Outcome, Duration, bool) {
    let t = Instant::now();
    let o = f();
    let el = t.elapsed();
    let in_time = limit.is_none_or(|l| el <= l);
    (o, el, in_time)
}

fn lebesgue_exactness() -> Outcome {
    let sz = build_szego(&lebesgue()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let pts = disc_points(&mut rng, 100, 2.0);
    let mut phi_err: f64 = 0.0;
    let mut alpha_err: f64 = 0.0;
    let mut kappa_err: f64 = 0.0;
    let k0 = 1.0 / TAU.sqrt();
    for n in 0..=30 {
        let mut ev = PhiEvaluator::new(n, &sz, None).unwrap();
        for z in &pts {
            let v = ev.eval(*z).unwrap().value;
            let want = z.powi(n as i32);
            phi_err = phi_err.max((v - want).norm() / want.norm().max(1.0));
        }
        alpha_err = alpha_err.max(verblunsky_canonical(n, &sz, None).unwrap().alpha.norm());
        kappa_err = kappa_err.max((kappa_canonical(n, &sz, None).unwrap().kappa - k0).abs());
    }
    Outcome {
        pass: phi_err <= 1e-12 && alpha_err <= 1e-14 && kappa_err <= 1e-13,
        detail: format!("max Φ err {phi_err:.2e} (≤1e-12), max |α| {alpha_err:.2e} (≤1e-14), max κ err {kappa_err:.2e} (≤1e-13)"),
    }
}

fn oracle_equivalence() -> Outcome {
    let weights = [("|z-1/2|^2", half()), ("two-pole", two_pole()), ("log-laurent 0.3", log_laurent())];
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let pts = disc_points(&mut rng, 50, 0.9);
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, w) in &weights {
        let sz = build_szego(w).unwrap();
        let o = oracle(w, 24);
        let mut worst_ratio: f64 = 0.0;
        let mut bound24: f64 = 0.0;
        for n in [8, 12, 16, 24] {
            let mut ev = match PhiEvaluator::new(n, &sz, None) {
                Ok(e) => e,
                Err(e) => {
                    pass = false;
                    parts.push(format!("{name} n={n}: {e}"));
                    continue;
                }
            };
            for z in &pts {
                let v = ev.eval(*z).unwrap();
                let err = (v.value - eval_dd(&o.phis[n], *z)).norm();
                worst_ratio = worst_ratio.max(err / v.bound);
                if n == 24 {
                    bound24 = bound24.max(v.bound);
                }
            }
        }
        pass &= worst_ratio <= 10.0 && bound24 <= 1e-4;
        parts.push(format!("{name}: max err/bound {worst_ratio:.2e}, max bound@24 {bound24:.2e}"));
    }
    Outcome { pass, detail: format!("{} (err ≤ 10·bound, bound@24 ≤ 1e-4)", parts.join("; ")) }
}

fn verblunsky_leading_order() -> Outcome {
    let w = half();
    let sz = build_szego(&w).unwrap();
    let o = oracle(&w, 31);
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for n in 10..=30 {
        let c: Complex<Dd> = sz.c_precise(-(n as i64) - 1, 0.75, 1024);
        let a = o.alphas[n];
        let d = a + c.conj();
        let e = (d.re * d.re + d.im * d.im).sqrt().hi;
        xs.push(n as f64);
        ys.push(e);
    }
    let rate = geometric_rate(&xs, &ys);
    let limit = 0.75f64.powi(3) * 1.1;
    let a5 = o.alphas[5].re.hi;
    let rel = (a5 + 0.01171875).abs() / 0.01171875;
    let can5 = verblunsky_canonical(5, &sz, None).unwrap().alpha.re;
    let rel_can = (can5 - a5).abs() / a5.abs();
    Outcome {
        pass: rate <= limit && rel <= 2e-3 && rel_can <= 2e-3,
        detail: format!(
            "fitted rate {rate:.4} (≤ {limit:.4}); α_5 oracle {a5:.10e} rel dev {rel:.2e}, canonical rel dev {rel_can:.2e} (≤2e-3)"
        ),
    }
}

fn leading_coefficient() -> Outcome {
    let w = half();
    let sz = build_szego(&w).unwrap();
    let o = oracle(&w, 15);
    let k = kappa_canonical(12, &sz, None).unwrap().kappa;
    let ko = o.kappas[12].hi;
    let rel = (k - ko).abs() / ko;
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for n in 6..=14 {
        let k2 = kappa_canonical(n, &sz, None).unwrap().kappa_sq;
        let want = (1.0 - 0.25f64.powi(n as i32) * 0.75) / TAU;
        let tol = 10.0 * 0.75f64.powi(4 * n as i32);
        let d = (k2 - want).abs();
        ok &= d <= tol;
        worst = worst.max(d / tol);
    }
    Outcome {
        pass: rel <= 1e-8 && ok,
        detail: format!("κ_12 rel err {rel:.2e} (≤1e-8); max |κ²−display|/tol over n=6..14 {worst:.2e} (≤1)"),
    }
}

fn exterior_asymptotics() -> Outcome {
    let w = two_pole();
    let sz = build_szego(&w).unwrap();
    let o = oracle(&w, 30);
    let pts: Vec<C64> = (0..256).map(|j| C64::from_polar(1.5, TAU * j as f64 / 256.0)).collect();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for n in 5..=30 {
        let mut sup: f64 = 0.0;
        for z in &pts {
            let v = eval_dd(&o.phis[n], *z) / z.powi(n as i32) - w.d_e(*z) / sz.tau;
            sup = sup.max(v.norm());
        }
        xs.push(n as f64);
        ys.push(sup);
    }
    let rate = geometric_rate(&xs, &ys);
    Outcome { pass: rate <= 0.8, detail: format!("fitted rate {rate:.4} over n=5..30 (≤0.8)") }
}

fn clock_law() -> Outcome {
    let w = clock_weight();
    let o = oracle(&w, 75);
    let p = monic(&o.phis[75]);
    let zeros = zeros_aberth(&p, 1e-15).unwrap();
    let pred = clock_predict(75, 10, 0.5);
    let poles = pole_data(&w).unwrap();
    let excl: Vec<Excluded> = poles.iter().map(|p| Excluded { kind: ExcludedKind::Pole, z: p.a }).collect();
    let rep = szego_core::asymptotics::clock_report(&zeros, &pred, &excl, 0.15).unwrap();
    let a_ok = (rep.median_radius - pred.radius).abs() <= 2.0 / 75.0;
    let b_ok = (0.9..=1.1).contains(&rep.mean_spacing);
    let unit = TAU / 75.0;
    let c_ok = rep.gaps.iter().any(|g| g.covers(0.0, unit));
    let inside = zeros.iter().all(|z| z.norm() < 1.0);
    Outcome {
        pass: a_ok && b_ok && c_ok && inside,
        detail: format!(
            "(a) median radius {:.4} vs {:.4} (±{:.4}) {}; (b) mean spacing {:.4} {}; (c) gap at arg 0 {}; {} bulk zeros, {} gaps",
            rep.median_radius,
            pred.radius,
            2.0 / 75.0,
            if a_ok { "ok" } else { "no" },
            rep.mean_spacing,
            if b_ok { "ok" } else { "no" },
            if c_ok { "ok" } else { "no" },
            rep.count,
            rep.gaps.len()
        ),
    }
}

fn spurious_zeros() -> Outcome {
    let w = two_pole();
    let o = oracle(&w, 52);
    let s0 = C64::new(3.0 / 16.0, 3.0 / 16.0);
    let s3 = C64::new(-1.0 / 6.0, -1.0 / 6.0);
    let mut worst: f64 = 0.0;
    let mut pass = true;
    for (n, target) in [(40, s0), (44, s0), (48, s0), (52, s0), (43, s3), (47, s3), (51, s3)] {
        let zs = zeros_aberth(&monic(&o.phis[n]), 1e-15).unwrap();
        let d = zs.iter().filter(|z| z.norm() < 0.45).map(|z| (z - target).norm()).fold(f64::INFINITY, f64::min);
        pass &= d <= 0.02;
        worst = worst.max(d);
    }
    Outcome { pass, detail: format!("max distance to limit over n ∈ {{40,44,48,52,43,47,51}}: {worst:.2e} (≤0.02)") }
}

fn crossings(s: &[f64], n0: usize) -> Vec<usize> {
    (1..s.len()).filter(|&i| s[i].signum() != s[i - 1].signum()).map(|i| n0 + i).collect()
}

fn essential_plus() -> Outcome {
    let o = oracle(&essential(EssentialSign::Plus), 61);
    let mut devs = Vec::new();
    for n in [20, 30, 40, 60] {
        let asy = essential_verblunsky(EssentialSign::Plus, 0.5, n).unwrap();
        let a = C64::new(o.alphas[n].re.hi, o.alphas[n].im.hi);
        devs.push((n, (a / asy - 1.0).norm()));
    }
    let d40 = devs[2].1;
    let decreasing = devs.windows(2).all(|p| p[1].1 < p[0].1);
    Outcome {
        pass: d40 <= 0.35 && decreasing,
        detail: format!(
            "Plus |α/α_asymp − 1|: {} (≤0.35 at 40, decreasing)",
            devs.iter().map(|(n, d)| format!("n={n}: {d:.3}")).collect::<Vec<_>>().join(", ")
        ),
    }
}

fn essential_minus() -> Outcome {
    let o = oracle(&essential(EssentialSign::Minus), 61);
    let ns: Vec<usize> = (20..=60).collect();
    let so: Vec<f64> = ns.iter().map(|&n| o.alphas[n].re.hi).collect();
    let sa: Vec<f64> = ns.iter().map(|&n| essential_verblunsky(EssentialSign::Minus, 0.5, n).unwrap().re).collect();
    let ss: Vec<f64> = ns.iter().map(|&n| essential_verblunsky_steepest(EssentialSign::Minus, 0.5, n).unwrap().re).collect();
    let co = crossings(&so, 20);
    let ca = crossings(&sa, 20);
    let cs = crossings(&ss, 20);
    let matched = |a: &[usize], b: &[usize]| {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.abs_diff(*y) <= 1)
    };
    Outcome {
        pass: matched(&co, &ca),
        detail: format!(
            "Minus sign changes: oracle {co:?}, Re(t_+ⁿF(t_+)) formula {ca:?} (must match within 1); steepest-descent variant {cs:?}"
        ),
    }
}

fn bound_soundness() -> Outcome {
    let weights = [
        ("|z-1/2|^2", half()),
        ("two-pole", two_pole()),
        ("log-laurent 0.3", log_laurent()),
        ("clock", clock_weight()),
        ("essential+", essential(EssentialSign::Plus)),
        ("essential-", essential(EssentialSign::Minus)),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut checks = 0usize;
    let mut violations = Vec::new();
    for (name, w) in &weights {
        let sz = build_szego(w).unwrap();
        let r = szego_core::cauchy_ops::default_radius(&sz);
        let lam = szego_core::cauchy_ops::lambda(&sz, r);
        let n0 = szego_core::cauchy_ops::min_degree(r, lam).max(4);
        let ns: Vec<usize> = (0..4).map(|i| n0 + 3 * i).collect();
        let o = oracle(w, ns[3] + 1);
        for &n in &ns {
            let s = iterate(n, Some(r), &sz, IterateOptions::default()).unwrap();
            let rad: Vec<f64> = vec![0.3 * r, 0.9 * r, 1.1 * r, 0.5 * (r + 1.0 / r), 1.1 / r, 2.0 / r];
            // iterate sizes against a-priori bounds
            for (k, f) in s.f.iter().enumerate().take(6) {
                let k = k + 1;
                let c = if k % 2 == 1 { r } else { 1.0 / r };
                for &m in &rad {
                    if (m - c).abs() < 1e-2 {
                        continue;
                    }
                    for _ in 0..16 {
                        let z = C64::from_polar(m, TAU * rng.gen::<f64>());
                        let v = f.eval(z).unwrap().norm();
                        let b = s.term_bound(k) / (m - c).abs();
                        checks += 1;
                        if v > b * (1.0 + 1e-12) + 1e-300 {
                            violations.push(format!("{name} n={n} f^({k}) |z|={m:.3}: {v:e} > {b:e}"));
                        }
                    }
                }
            }
            // truncated series against the oracle
            let mut ev = PhiEvaluator::new(n, &sz, Some(r)).unwrap();
            for z in disc_points(&mut rng, 60, 1.6) {
                let Ok(v) = ev.eval(z) else { continue };
                let e = (v.value - eval_dd(&o.phis[n], z)).norm();
                checks += 1;
                if e > v.bound {
                    violations.push(format!("{name} n={n} Φ at {z:.3}: err {e:e} > bound {:e}", v.bound));
                }
            }
            let a = verblunsky_canonical(n, &sz, Some(r)).unwrap();
            let ao = C64::new(o.alphas[n].re.hi, o.alphas[n].im.hi);
            checks += 1;
            if (a.alpha - ao).norm() > a.bound {
                violations.push(format!("{name} n={n} α: {:e} > {:e}", (a.alpha - ao).norm(), a.bound));
            }
            let k = kappa_canonical(n, &sz, Some(r)).unwrap();
            checks += 1;
            if (k.kappa - o.kappas[n].hi).abs() > k.bound {
                violations.push(format!("{name} n={n} κ: {:e} > {:e}", (k.kappa - o.kappas[n].hi).abs(), k.bound));
            }
            // E and I remainders: partial sums with one term fewer stay within the reported gap
            for z in disc_points(&mut rng, 20, 2.0) {
                for kind in [SeriesKind::E, SeriesKind::I] {
                    let Ok(full) = s.eval_series(kind, z) else { continue };
                    let mut short = s.clone();
                    let keep = if s.f.len() > 2 { s.f.len() - 2 } else { s.f.len() };
                    short.f.truncate(keep);
                    let Ok(part) = short.eval_series(kind, z) else { continue };
                    checks += 1;
                    if (full.value - part.value).norm() > part.bound() + full.rounding {
                        violations.push(format!("{name} n={n} {kind:?} truncation at {z:.3}"));
                    }
                }
            }
        }
    }
    let first = violations.first().cloned().unwrap_or_default();
    Outcome {
        pass: violations.is_empty() && checks >= 10_000,
        detail: format!("{checks} assertions (≥10000), {} violations {first}", violations.len()),
    }
}

fn symmetries() -> Outcome {
    let weights = [
        ("|z-1/2|^2", half()),
        ("two-pole", two_pole()),
        ("log-laurent 0.3", log_laurent()),
        ("clock", clock_weight()),
        ("essential+", essential(EssentialSign::Plus)),
        ("essential-", essential(EssentialSign::Minus)),
        ("lebesgue", lebesgue()),
    ];
    let mut worst_mod: f64 = 0.0;
    let mut worst_ref: f64 = 0.0;
    for (_, w) in &weights {
        let sz: SzegoData = build_szego(w).unwrap();
        let rho = sz.rho_hat;
        let off = 0.5 * (1.0 + rho.max(0.5));
        for j in 0..200 {
            let th = TAU * (j as f64 + 0.5) / 200.0;
            let t = C64::from_polar(1.0, th);
            worst_mod = worst_mod.max((sz.f_series(t).norm() - 1.0).abs());
            // closed-form F deep in the annulus, the truncated Laurent band near the circle
            let z = C64::from_polar(off, th);
            let v = sz.f(1.0 / z.conj()).conj() * sz.f(z);
            worst_ref = worst_ref.max((v - 1.0).norm());
            let z = C64::from_polar(0.95, th);
            let v = sz.f_series(1.0 / z.conj()).conj() * sz.f_series(z);
            worst_ref = worst_ref.max((v - 1.0).norm());
        }
    }
    Outcome {
        pass: worst_mod <= 1e-8 && worst_ref <= 1e-8,
        detail: format!("max ||F|−1| {worst_mod:.2e}, max |conj F(1/z̄)·F(z) − 1| {worst_ref:.2e} (≤1e-8, 200 points × 7 weights)"),
    }
}

fn main() {
    type Crit = (&'static str, Option<u64>, fn() -> Outcome);
    let criteria: [Crit; 11] = [
        ("1 Lebesgue exactness", Some(5), lebesgue_exactness),
        ("2 oracle equivalence", Some(60), oracle_equivalence),
        ("3 Verblunsky leading order", None, verblunsky_leading_order),
        ("4 leading coefficient", None, leading_coefficient),
        ("5 exterior asymptotics", Some(20), exterior_asymptotics),
        ("6 clock law", Some(120), clock_law),
        ("7 spurious-zero limits", None, spurious_zeros),
        ("8a essential Plus ratio", None, essential_plus),
        ("8b essential Minus sign changes", None, essential_minus),
        ("9 bound soundness", Some(60), bound_soundness),
        ("10 symmetries of F", None, symmetries),
    ];
    let mut failed = Vec::new();
    for (name, limit, f) in criteria {
        let (o, el, in_time) = timed(limit.map(Duration::from_secs), f);
        let pass = o.pass && in_time;
        let budget = limit.map_or(String::new(), |l| format!(" / {l} s"));
        println!(
            "criterion {name}: {} [{:.2} s{budget}] {}",
            if pass { "PASS" } else { "FAIL" },
            el.as_secs_f64(),
            o.detail
        );
        if !pass {
            failed.push(name);
        }
    }
    if !failed.is_empty() {
        println!("failed: {}", failed.join(", "));
        std::process::exit(1);
    }
}
