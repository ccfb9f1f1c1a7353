//! One function per subcommand.

use rayon::prelude::*;
use serde::Serialize;
use szego_core::asymptotics::{
    clock_predict, clock_report, default_epsilon, dominant_approx, dominant_multiplicity, essential_verblunsky,
    essential_verblunsky_steepest, exterior_approx, gn_zeros, pole_data, psi_grid, residue_approx, saddle_solve,
    Excluded, ExcludedKind, PoleData,
};
use szego_core::canonical::{kappa_canonical, verblunsky_canonical, PhiEvaluator};
use szego_core::cauchy_ops::{default_radius, lambda, min_degree, IterateOptions};
use szego_core::oracle::{compare, levinson, moments, run_oracle, zeros_clustered, OracleF64, Precision};
use szego_core::szego::{build_szego, SzegoData};
use szego_core::weights::{EssentialSign, Weight};
use szego_core::{Error, C64};

use crate::config::{missing, RunConfig};
use crate::mp::{self, MpReal};
use crate::output::{csv_bytes, emit, json_bytes, read_points, Cell, JsonC};
use crate::svg::{render, Plot};
use crate::CliError;

const ZERO_TOL: f64 = 1e-14;
const DEFAULT_BAND: f64 = 0.15;

fn iterate_options(cfg: &RunConfig) -> IterateOptions {
    let d = IterateOptions::default();
    IterateOptions { tol: cfg.tol.unwrap_or(d.tol), max_depth: cfg.max_depth.unwrap_or(d.max_depth) }
}

/// Smallest degree whose series converges at the chosen radius.
fn first_degree(sz: &SzegoData, r: Option<f64>) -> usize {
    let r = r.unwrap_or_else(|| default_radius(sz));
    min_degree(r, lambda(sz, r))
}

pub fn oracle_for(w: &Weight, n_max: usize, precision: Precision) -> Result<OracleF64, CliError> {
    match precision {
        Precision::Digits(d) => {
            mp::set_digits(d);
            let m = moments::<MpReal>(w, n_max + 1)?;
            Ok(levinson(&m, n_max)?.lower(precision))
        }
        p => Ok(run_oracle(w, n_max, p)?),
    }
}

fn oracle_zeros(w: &Weight, n: usize, precision: Precision) -> Result<Vec<(C64, usize)>, CliError> {
    let o = oracle_for(w, n, precision)?;
    Ok(zeros_clustered(&o.phis[n], ZERO_TOL)?.into_iter().map(|c| (c.z, c.size)).collect())
}

fn zeros_from(cfg: &RunConfig, w: &Weight, n: usize) -> Result<Vec<C64>, CliError> {
    let pts = match &cfg.zeros {
        Some(p) => read_points(p)?,
        None => oracle_zeros(w, n, cfg.precision()?)?,
    };
    Ok(pts.into_iter().flat_map(|(z, k)| std::iter::repeat_n(z, k.max(1))).collect())
}

#[derive(Serialize)]
struct Coeff {
    k: i64,
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct Dump {
    tau: f64,
    rho_hat: f64,
    l_coeffs: Vec<Coeff>,
    c_coeffs: Vec<Coeff>,
}

pub fn dump(cfg: &RunConfig) -> Result<(), CliError> {
    let sz = build_szego(&cfg.weight()?)?;
    let lk = sz.log.kmax as i64;
    let ck = sz.c_kmax as i64;
    let coeff = |k: i64, v: C64| Coeff { k, re: v.re, im: v.im };
    let d = Dump {
        tau: sz.tau,
        rho_hat: sz.rho_hat,
        l_coeffs: (-lk..=lk).map(|k| coeff(k, sz.log.get(k))).collect(),
        c_coeffs: (-ck..=ck).map(|k| coeff(k, sz.c(k))).collect(),
    };
    emit(cfg.out.as_deref(), &json_bytes(&d)?)
}

pub fn phi(cfg: &RunConfig) -> Result<(), CliError> {
    let sz = build_szego(&cfg.weight()?)?;
    let n = cfg.n()?;
    let grid = read_points(cfg.grid.as_deref().ok_or_else(|| missing("grid"))?)?;
    let mut ev = PhiEvaluator::with_options(n, &sz, cfg.r, iterate_options(cfg))?;
    let mut rows = Vec::with_capacity(grid.len());
    for (z, _) in grid {
        let v = ev.eval(z)?;
        rows.push(vec![Cell::Num(z.re), Cell::Num(z.im), Cell::Num(v.value.re), Cell::Num(v.value.im), Cell::Num(v.bound)]);
    }
    emit(cfg.out.as_deref(), &csv_bytes(&["re_z", "im_z", "re_phi", "im_phi", "bound"], rows)?)
}

/// `α_n` for `nmin <= n < nmax`; by default the range starts at the first
/// degree the series reaches.
pub fn verblunsky(cfg: &RunConfig) -> Result<(), CliError> {
    let sz = build_szego(&cfg.weight()?)?;
    let nmax = cfg.nmax()?;
    let nmin = cfg.nmin.unwrap_or_else(|| first_degree(&sz, cfg.r).saturating_sub(1));
    let vals: Vec<_> = (nmin..nmax).into_par_iter().map(|n| verblunsky_canonical(n, &sz, cfg.r).map(|v| (n, v))).collect::<Result<_, Error>>()?;
    let rows = vals.into_iter().map(|(n, v)| {
        vec![Cell::Int(n as i64), Cell::Num(v.alpha.re), Cell::Num(v.alpha.im), Cell::Num(v.bound)]
    });
    emit(cfg.out.as_deref(), &csv_bytes(&["n", "re_alpha", "im_alpha", "bound"], rows)?)
}

pub fn kappa(cfg: &RunConfig) -> Result<(), CliError> {
    let sz = build_szego(&cfg.weight()?)?;
    let nmax = cfg.nmax()?;
    let nmin = cfg.nmin.unwrap_or_else(|| first_degree(&sz, cfg.r).saturating_sub(1));
    let vals: Vec<_> = (nmin..=nmax).into_par_iter().map(|n| kappa_canonical(n, &sz, cfg.r).map(|v| (n, v))).collect::<Result<_, Error>>()?;
    let rows = vals.into_iter().map(|(n, v)| {
        vec![Cell::Int(n as i64), Cell::Num(v.kappa), Cell::Num(v.bound), Cell::Num(v.kappa_sq), Cell::Num(v.kappa_sq_bound)]
    });
    emit(cfg.out.as_deref(), &csv_bytes(&["n", "kappa", "bound", "kappa_sq", "kappa_sq_bound"], rows)?)
}

#[derive(Serialize)]
struct OracleDoc {
    precision: &'static str,
    digits: Option<u32>,
    nmax: usize,
    alphas: Vec<JsonC>,
    kappas: Vec<f64>,
    /// monic coefficients, constant term first
    phis: Vec<Vec<JsonC>>,
}

pub fn oracle(cfg: &RunConfig) -> Result<(), CliError> {
    let w = cfg.weight()?;
    let nmax = cfg.nmax()?;
    let precision = cfg.precision()?;
    let o = oracle_for(&w, nmax, precision)?;
    let doc = OracleDoc {
        precision: precision.tag(),
        digits: match precision {
            Precision::Digits(d) => Some(d),
            _ => None,
        },
        nmax,
        alphas: o.alphas.iter().map(|&a| a.into()).collect(),
        kappas: o.kappas.clone(),
        phis: o.phis.iter().map(|p| p.coeffs().iter().map(|&c| c.into()).collect()).collect(),
    };
    emit(cfg.out.as_deref(), &json_bytes(&doc)?)
}

#[derive(Serialize)]
struct CompareRowDoc {
    n: usize,
    coeff_err: f64,
    coeff_bound: f64,
    coeff_ok: bool,
    alpha_err: f64,
    alpha_bound: f64,
    alpha_ok: bool,
    kappa_err: f64,
    kappa_bound: f64,
    kappa_ok: bool,
}

#[derive(Serialize)]
struct CompareDoc {
    precision: &'static str,
    all_ok: bool,
    rows: Vec<CompareRowDoc>,
}

pub fn compare_cmd(cfg: &RunConfig) -> Result<(), CliError> {
    let w = cfg.weight()?;
    let sz = build_szego(&w)?;
    let nmax = cfg.nmax()?;
    let nmin = cfg.nmin.unwrap_or_else(|| first_degree(&sz, cfg.r));
    let precision = cfg.precision()?;
    let o = oracle_for(&w, nmax + 1, precision)?;
    let rep = compare(&sz, &o, nmin..=nmax, cfg.r)?;
    let doc = CompareDoc {
        precision: precision.tag(),
        all_ok: rep.all_ok(),
        rows: rep
            .rows
            .iter()
            .map(|r| CompareRowDoc {
                n: r.n,
                coeff_err: r.coeff_err,
                coeff_bound: r.coeff_bound,
                coeff_ok: r.coeff_ok(),
                alpha_err: r.alpha_err,
                alpha_bound: r.alpha_bound,
                alpha_ok: r.alpha_ok(),
                kappa_err: r.kappa_err,
                kappa_bound: r.kappa_bound,
                kappa_ok: r.kappa_ok(),
            })
            .collect(),
    };
    emit(cfg.out.as_deref(), &json_bytes(&doc)?)
}

pub fn zeros(cfg: &RunConfig) -> Result<(), CliError> {
    let w = cfg.weight()?;
    let z = oracle_zeros(&w, cfg.n()?, cfg.precision()?)?;
    let rows = z.into_iter().map(|(z, k)| vec![Cell::Num(z.re), Cell::Num(z.im), Cell::Int(k as i64)]);
    emit(cfg.out.as_deref(), &csv_bytes(&["re", "im", "cluster_size"], rows)?)
}

pub fn asymp(cfg: &RunConfig) -> Result<(), CliError> {
    let w = cfg.weight()?;
    let sz = build_szego(&w)?;
    let n = cfg.n()?;
    let grid = read_points(cfg.grid.as_deref().ok_or_else(|| missing("grid"))?)?;
    let mode = cfg.mode.as_deref().unwrap_or("dominant");
    let poles: Vec<PoleData> = match mode {
        "exterior" => Vec::new(),
        "residue" | "dominant" => pole_data(&w)?,
        other => return Err(CliError::Config(format!("unknown mode '{other}' (exterior, residue, dominant)"))),
    };
    let eps = cfg.eps.unwrap_or_else(|| default_epsilon(sz.rho_hat));
    let mut rows = Vec::with_capacity(grid.len());
    for (z, _) in grid {
        let v = match mode {
            "exterior" => exterior_approx(n, z, &sz)?,
            "residue" => residue_approx(n, z, &poles, &sz, eps)?,
            _ => dominant_approx(n, z, &poles, &sz, eps)?,
        };
        rows.push(vec![Cell::Num(z.re), Cell::Num(z.im), Cell::Num(v.re), Cell::Num(v.im)]);
    }
    emit(cfg.out.as_deref(), &csv_bytes(&["re_z", "im_z", "re_approx", "im_approx"], rows)?)
}

#[derive(Serialize)]
struct ExcludedDoc {
    kind: &'static str,
    z: JsonC,
}

fn excluded_doc(e: &Excluded) -> ExcludedDoc {
    ExcludedDoc {
        kind: match e.kind {
            ExcludedKind::Pole => "pole",
            ExcludedKind::GnZero => "gn_zero",
        },
        z: e.z.into(),
    }
}

#[derive(Serialize)]
struct GapDoc {
    start: f64,
    end: f64,
    width: f64,
    nearest: Option<ExcludedDoc>,
    nearest_angle: f64,
}

#[derive(Serialize)]
struct ClockDoc {
    n: usize,
    m: u32,
    rho: f64,
    v_n: f64,
    predicted_radius: f64,
    window: f64,
    count: usize,
    median_radius: f64,
    mean_radius: f64,
    max_radial_dev: f64,
    mean_spacing: f64,
    max_spacing_dev: f64,
    gaps: Vec<GapDoc>,
}

fn excluded_points(w: &Weight, n: usize) -> Vec<Excluded> {
    let poles = pole_data(w).unwrap_or_default();
    let mut out: Vec<Excluded> = poles.iter().map(|p| Excluded { kind: ExcludedKind::Pole, z: p.a }).collect();
    if let Ok(zs) = gn_zeros(n, &poles) {
        out.extend(zs.into_iter().map(|z| Excluded { kind: ExcludedKind::GnZero, z }));
    }
    out
}

pub fn clock(cfg: &RunConfig) -> Result<(), CliError> {
    let w = cfg.weight()?;
    let n = cfg.n()?;
    let (m, rho) = dominant_multiplicity(&w)?;
    let zeros = zeros_from(cfg, &w, n)?;
    let pred = clock_predict(n, m, rho);
    let rep = clock_report(&zeros, &pred, &excluded_points(&w, n), cfg.band.unwrap_or(DEFAULT_BAND))?;
    let doc = ClockDoc {
        n,
        m,
        rho,
        v_n: pred.v_n,
        predicted_radius: pred.radius,
        window: rep.window,
        count: rep.count,
        median_radius: rep.median_radius,
        mean_radius: rep.mean_radius,
        max_radial_dev: rep.max_radial_dev,
        mean_spacing: rep.mean_spacing,
        max_spacing_dev: rep.max_spacing_dev,
        gaps: rep
            .gaps
            .iter()
            .map(|g| GapDoc {
                start: g.start,
                end: g.end,
                width: g.width,
                nearest: g.nearest.as_ref().map(excluded_doc),
                nearest_angle: g.nearest_angle,
            })
            .collect(),
    };
    emit(cfg.out.as_deref(), &json_bytes(&doc)?)
}

fn essential_centre(w: &Weight) -> Result<(f64, EssentialSign), CliError> {
    let (a, sign) = w.essential().ok_or_else(|| CliError::Config("weight is not of essential kind".into()))?;
    if a.im != 0.0 {
        return Err(CliError::Config("saddle analysis needs a real centre a".into()));
    }
    Ok((a.re, sign))
}

#[derive(Serialize)]
struct SaddleDoc {
    sign: &'static str,
    a: f64,
    n: usize,
    exponent: f64,
    t_plus: JsonC,
    t_minus: JsonC,
    psi_at: JsonC,
    f_at: JsonC,
    residual: f64,
    alpha_asymptotic: JsonC,
    alpha_steepest: JsonC,
}

pub fn saddle(cfg: &RunConfig) -> Result<(), CliError> {
    let (a, sign) = essential_centre(&cfg.weight()?)?;
    let n = cfg.n()?;
    let s = saddle_solve(sign, a, n)?;
    let doc = SaddleDoc {
        sign: match sign {
            EssentialSign::Plus => "plus",
            EssentialSign::Minus => "minus",
        },
        a,
        n,
        exponent: s.exponent,
        t_plus: s.t_plus.into(),
        t_minus: s.t_minus.into(),
        psi_at: s.psi_at.into(),
        f_at: s.f_at.into(),
        residual: s.residual,
        alpha_asymptotic: essential_verblunsky(sign, a, n)?.into(),
        alpha_steepest: essential_verblunsky_steepest(sign, a, n)?.into(),
    };
    emit(cfg.out.as_deref(), &json_bytes(&doc)?)
}

pub fn psi_grid_cmd(cfg: &RunConfig) -> Result<(), CliError> {
    let (a, sign) = essential_centre(&cfg.weight()?)?;
    let window = cfg.window()?.unwrap_or([-0.2, 1.2, -0.7, 0.7]);
    let g = psi_grid(sign, a, cfg.n()?, window, cfg.res.unwrap_or(400))?;
    let rows = g.into_iter().map(|r| r.iter().map(|&x| Cell::Num(x)).collect());
    emit(cfg.out.as_deref(), &csv_bytes(&["re_t", "im_t", "re_psi", "im_psi"], rows)?)
}

pub fn plot_zeros(cfg: &RunConfig) -> Result<(), CliError> {
    let w = cfg.weight()?;
    let n = cfg.n()?;
    let zeros = zeros_from(cfg, &w, n)?;
    let mut guides = Vec::new();
    if let Ok((m, rho)) = dominant_multiplicity(&w) {
        guides.push(clock_predict(n, m, rho).radius);
    }
    if let Some(g) = &cfg.guides {
        guides.extend(g.0.iter().copied());
    }
    let poles = if cfg.no_poles.unwrap_or(false) {
        Vec::new()
    } else {
        let mut p: Vec<C64> = pole_data(&w).unwrap_or_default().iter().map(|p| p.a).collect();
        if let Some((a, _)) = w.essential() {
            p.push(a);
        }
        p
    };
    emit(cfg.out.as_deref(), render(&Plot { zeros, guides, poles }).as_bytes())
}
