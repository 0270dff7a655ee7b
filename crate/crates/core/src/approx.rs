//! Best rational approximation of Blaschke products by pole optimization.
//!
//! For a degree-`N` Blaschke product `f` and an approximant degree `n < N`,
//! the concentrated criterion
//!
//! ```text
//! J(b_n) = || P_-( f^♯ b_n ) ||_2,     b_n Blaschke of degree n,
//! ```
//!
//! measures the approximation error left after the optimal numerator has been
//! eliminated; minimizing it over the zeros of `b_n` (the poles of the
//! approximant) solves the best-approximation problem. On the circle
//! `f^♯ = conj(f)`, so `g = f^♯ b_n` is sampled as `conj(f) b_n` on an
//! adaptive grid, the negative-index mass is read off the DFT, and
//! `sqrt(1 - Σ_{k>=0} |a_k|^2)` is computed alongside as a Parseval
//! cross-check (the samples are unimodular).
//!
//! Poles live in an unconstrained chart `u -> u / sqrt(1 + |u|^2)` mapping
//! the plane onto the open disk, so plain derivative-free descent applies.
//! The solver is a deterministic multistart Nelder-Mead with local-minimum
//! certification by coordinate probes; the sweep over increasing degrees
//! warm-starts each level from the local minima of the previous one,
//! augmented by an extra pole at the origin (which provably never increases
//! the criterion) and at random disk points.

use std::collections::HashMap;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::blaschke::{reciprocal_polynomial, sharp, BlaschkeProduct};
use crate::error::{Error, Result};
use crate::laurent::{self, fft_forward, unit_points};
use crate::poly::{Polynomial, RationalFunction};

/// Zeros of the candidate `b_n`, equivalently poles of the approximant.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleConfig {
    points: Vec<Complex64>,
    real_symmetric: bool,
}

impl PoleConfig {
    /// Validates that every point lies strictly inside the unit disk and,
    /// when `real_symmetric` is set, that the multiset is closed under
    /// conjugation (within `1e-12`, snapped to exact closure).
    pub fn new(points: Vec<Complex64>, real_symmetric: bool) -> Result<Self> {
        for p in &points {
            if p.norm() >= 1.0 {
                return Err(Error::Domain(format!(
                    "pole of modulus {} is not inside the open disk",
                    p.norm()
                )));
            }
        }
        let points = if real_symmetric { symmetrize(&points)? } else { points };
        Ok(PoleConfig { points, real_symmetric })
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn real_symmetric(&self) -> bool {
        self.real_symmetric
    }
}

/// Splits a conjugate-closed multiset into exact real points and exact
/// conjugate pairs, snapping within `1e-12`.
fn symmetrize(points: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut reals = Vec::new();
    let mut ups: Vec<Complex64> = Vec::new();
    let mut downs: Vec<Complex64> = Vec::new();
    for p in points {
        if p.im.abs() <= 1e-12 {
            reals.push(Complex64::new(p.re, 0.0));
        } else if p.im > 0.0 {
            ups.push(*p);
        } else {
            downs.push(*p);
        }
    }
    if ups.len() != downs.len() {
        return Err(Error::Domain("pole multiset is not conjugate-closed".into()));
    }
    let mut out = reals;
    let mut used = vec![false; downs.len()];
    for u in &ups {
        let mut found = false;
        for (j, d) in downs.iter().enumerate() {
            if !used[j] && (d - u.conj()).norm() <= 1e-12 {
                used[j] = true;
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::Domain("pole multiset is not conjugate-closed".into()));
        }
        out.push(*u);
        out.push(u.conj());
    }
    Ok(out)
}

/// Multistart solver configuration.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    /// Fresh random starts per degree.
    pub n_starts: usize,
    /// Master seed; results are bit-reproducible given the seed.
    pub seed: u64,
    /// Total simplex-iteration budget per start.
    pub max_iterations: usize,
    /// Convergence tolerance on the criterion decrease.
    pub tol: f64,
    /// Per-coefficient aliasing tolerance for the boundary grids.
    pub grid_tol: f64,
    /// Restrict the search to conjugate-closed pole configurations.
    pub real_symmetric: bool,
    /// Extra user-supplied starting configurations.
    pub warm_starts: Vec<PoleConfig>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            n_starts: 32,
            seed: 17,
            max_iterations: 2000,
            tol: 1e-10,
            grid_tol: 1e-12,
            real_symmetric: false,
            warm_starts: Vec::new(),
        }
    }
}

/// Outcome of a solve: the best pole configuration found, the criterion
/// value there, and the recovered approximant in the analytic convention
/// (poles outside the disk).
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub poles: PoleConfig,
    /// Criterion value at the returned poles; equals the approximation error
    /// of `approximant` against `f`.
    pub error: f64,
    pub approximant: RationalFunction,
    pub starts_used: usize,
    pub best_start_index: usize,
    /// Simplex iterations spent by the best start.
    pub iterations: usize,
    /// Largest boundary grid used by the best start.
    pub grid_size: usize,
    /// Whether the best start converged and passed local-minimum
    /// certification.
    pub converged: bool,
}

// ---------------------------------------------------------------------------
// criterion evaluation

struct GridData {
    points: Vec<Complex64>,
    f_conj: Vec<Complex64>,
}

struct Evaluator<'a> {
    f: &'a BlaschkeProduct,
    m_f: usize,
    tail_tol: f64,
    cap: usize,
    cache: HashMap<usize, GridData>,
    max_grid: usize,
}

impl<'a> Evaluator<'a> {
    fn new(f: &'a BlaschkeProduct, grid_tol: f64, cap: usize) -> Result<Self> {
        if grid_tol <= 0.0 {
            return Err(Error::Domain("grid tolerance must be positive".into()));
        }
        let tail_tol = (grid_tol * grid_tol).max(1e-30);
        let m_f =
            laurent::adaptive_grid_size(f.degree(), f.max_zero_modulus(), 64, tail_tol, cap)?;
        Ok(Evaluator { f, m_f, tail_tol, cap, cache: HashMap::new(), max_grid: 0 })
    }

    fn grid(&mut self, m: usize) -> &GridData {
        let f = self.f;
        self.cache.entry(m).or_insert_with(|| {
            let points = unit_points(m);
            let f_conj = f.values_at(&points).into_iter().map(|v| v.conj()).collect();
            GridData { points, f_conj }
        })
    }

    /// Both Parseval forms of the criterion:
    /// `sqrt(Σ_{k<0} |a_k|^2)` and `sqrt(1 - Σ_{k>=0} |a_k|^2)`.
    fn forms(&mut self, poles: &[Complex64]) -> Result<(f64, f64)> {
        let lambda_b = poles.iter().map(|p| p.norm()).fold(0.0, f64::max);
        if lambda_b >= 1.0 {
            return Err(Error::Domain("pole on or outside the unit circle".into()));
        }
        let m_b =
            laurent::adaptive_grid_size(poles.len(), lambda_b, 64, self.tail_tol, self.cap)?;
        let m = self.m_f.max(m_b);
        self.max_grid = self.max_grid.max(m);
        let grid = self.grid(m);
        let one = Complex64::new(1.0, 0.0);
        let mut buf: Vec<Complex64> = Vec::with_capacity(m);
        for (z, fc) in grid.points.iter().zip(&grid.f_conj) {
            let mut b = one;
            for zero in poles {
                b *= (z - zero) / (one - zero.conj() * z);
            }
            buf.push(fc * b);
        }
        fft_forward(&mut buf);
        let scale = 1.0 / (m as f64 * m as f64);
        let half = m / 2;
        let mut neg = 0.0;
        let mut pos = 0.0;
        for (j, v) in buf.iter().enumerate() {
            if j < half {
                pos += v.norm_sqr();
            } else {
                neg += v.norm_sqr();
            }
        }
        Ok(((neg * scale).sqrt(), (1.0 - pos * scale).max(0.0).sqrt()))
    }

    fn eval(&mut self, poles: &[Complex64]) -> Result<f64> {
        let (minus, complement) = self.forms(poles)?;
        if (minus - complement).abs() > 1e-10 {
            return Err(Error::ParsevalMismatch { minus_form: minus, complement_form: complement });
        }
        Ok(minus)
    }
}

fn check_criterion_inputs(f: &BlaschkeProduct, n: usize) -> Result<()> {
    let big_n = f.degree();
    if big_n == 0 {
        return Err(Error::Domain("f must have degree at least 1".into()));
    }
    if n >= big_n {
        return Err(Error::Domain(format!(
            "need n < degree(f), got n = {n}, degree = {big_n}"
        )));
    }
    Ok(())
}

/// The concentrated criterion `|| P_-( f^♯ b_n ) ||_2` where `b_n` is the
/// unit-constant Blaschke product with the given zeros.
///
/// The two Parseval forms are computed from the same spectrum and must agree
/// to `1e-10`; disagreement is reported as an error.
pub fn criterion(f: &BlaschkeProduct, poles: &PoleConfig) -> Result<f64> {
    check_criterion_inputs(f, poles.len())?;
    Evaluator::new(f, 1e-12, laurent::DEFAULT_GRID_CAP)?.eval(poles.points())
}

/// Both Parseval forms of the criterion, in the order
/// (negative-mass form, unimodular-complement form).
pub fn criterion_forms(f: &BlaschkeProduct, poles: &PoleConfig) -> Result<(f64, f64)> {
    check_criterion_inputs(f, poles.len())?;
    Evaluator::new(f, 1e-12, laurent::DEFAULT_GRID_CAP)?.forms(poles.points())
}

// ---------------------------------------------------------------------------
// pole charts

/// Square-root chart of the open disk: `u -> u / sqrt(1 + |u|^2)`.
fn disk_from_plane(a: f64, b: f64) -> Complex64 {
    let s = (1.0 + a * a + b * b).sqrt();
    Complex64::new(a / s, b / s)
}

fn plane_from_disk(w: Complex64) -> (f64, f64) {
    let r2 = w.norm_sqr().min(1.0 - 1e-15);
    let s = (1.0 - r2).sqrt();
    (w.re / s, w.im / s)
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Chart {
    /// `n` free disk points; dimension `2n`.
    Complex { n: usize },
    /// `n_real` points on the real diameter plus `n_pairs` conjugate pairs;
    /// dimension `n_real + 2 n_pairs`.
    RealSym { n_real: usize, n_pairs: usize },
}

impl Chart {
    fn dim(&self) -> usize {
        match *self {
            Chart::Complex { n } => 2 * n,
            Chart::RealSym { n_real, n_pairs } => n_real + 2 * n_pairs,
        }
    }

    fn poles(&self, params: &[f64]) -> Vec<Complex64> {
        match *self {
            Chart::Complex { n } => (0..n)
                .map(|i| disk_from_plane(params[2 * i], params[2 * i + 1]))
                .collect(),
            Chart::RealSym { n_real, n_pairs } => {
                let mut out = Vec::with_capacity(n_real + 2 * n_pairs);
                for &u in &params[..n_real] {
                    out.push(Complex64::new(u / (1.0 + u * u).sqrt(), 0.0));
                }
                for i in 0..n_pairs {
                    let w = disk_from_plane(params[n_real + 2 * i], params[n_real + 2 * i + 1]);
                    out.push(w);
                    out.push(w.conj());
                }
                out
            }
        }
    }
}

/// Chart and parameters reproducing a given pole multiset.
fn chart_for_poles(points: &[Complex64], real_symmetric: bool) -> Result<(Chart, Vec<f64>)> {
    if !real_symmetric {
        let mut params = Vec::with_capacity(2 * points.len());
        for p in points {
            let (a, b) = plane_from_disk(*p);
            params.push(a);
            params.push(b);
        }
        return Ok((Chart::Complex { n: points.len() }, params));
    }
    let snapped = symmetrize(points)?;
    let reals: Vec<f64> = snapped.iter().filter(|p| p.im == 0.0).map(|p| p.re).collect();
    let ups: Vec<Complex64> = snapped.iter().filter(|p| p.im > 0.0).copied().collect();
    let mut params = Vec::with_capacity(reals.len() + 2 * ups.len());
    for &r in &reals {
        let r = r.clamp(-1.0 + 1e-15, 1.0 - 1e-15);
        params.push(r / (1.0 - r * r).sqrt());
    }
    for w in &ups {
        let (a, b) = plane_from_disk(*w);
        params.push(a);
        params.push(b);
    }
    Ok((Chart::RealSym { n_real: reals.len(), n_pairs: ups.len() }, params))
}

// ---------------------------------------------------------------------------
// Nelder-Mead with local-minimum certification

struct NmOutcome {
    x: Vec<f64>,
    value: f64,
    iterations: usize,
    converged: bool,
}

fn nelder_mead(
    obj: &mut dyn FnMut(&[f64]) -> f64,
    x0: &[f64],
    step: f64,
    tol: f64,
    max_iters: usize,
) -> NmOutcome {
    let d = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(d + 1);
    simplex.push((x0.to_vec(), obj(x0)));
    for i in 0..d {
        let mut x = x0.to_vec();
        x[i] += step;
        let v = obj(&x);
        simplex.push((x, v));
    }

    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iters {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal));
        let spread = simplex[d].1 - simplex[0].1;
        if spread.is_nan() || spread <= tol {
            converged = !spread.is_nan();
            break;
        }
        iterations += 1;

        let mut centroid = vec![0.0; d];
        for (x, _) in simplex.iter().take(d) {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / d as f64;
            }
        }
        let worst = simplex[d].clone();
        let point = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&worst.0)
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let xr = point(1.0);
        let fr = obj(&xr);
        if fr < simplex[0].1 {
            let xe = point(2.0);
            let fe = obj(&xe);
            simplex[d] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[d - 1].1 {
            simplex[d] = (xr, fr);
            continue;
        }
        if fr < worst.1 {
            let xoc = point(0.5);
            let foc = obj(&xoc);
            if foc <= fr {
                simplex[d] = (xoc, foc);
                continue;
            }
        } else {
            let xic = point(-0.5);
            let fic = obj(&xic);
            if fic < worst.1 {
                simplex[d] = (xic, fic);
                continue;
            }
        }
        // shrink toward the best vertex
        let best = simplex[0].0.clone();
        for entry in simplex.iter_mut().skip(1) {
            let x: Vec<f64> =
                best.iter().zip(&entry.0).map(|(b, x)| b + 0.5 * (x - b)).collect();
            let v = obj(&x);
            *entry = (x, v);
        }
    }

    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal));
    let (x, value) = simplex.swap_remove(0);
    NmOutcome { x, value, iterations, converged }
}

/// Descends from `x0` and certifies the result: at the returned point the
/// criterion must not drop by more than `10 tol` along any of the `2 dim`
/// coordinate probes of size `1e-5`. A failed probe restarts the descent
/// from the improving point while the iteration budget lasts.
fn minimize_certified(
    obj: &mut dyn FnMut(&[f64]) -> f64,
    x0: Vec<f64>,
    tol: f64,
    max_iters: usize,
) -> (Vec<f64>, f64, usize, bool) {
    let mut x = x0;
    let mut spent = 0usize;
    loop {
        let budget = max_iters - spent;
        let out = nelder_mead(obj, &x, 0.3, tol, budget);
        spent += out.iterations.max(1);
        x = out.x;
        let fx = out.value;
        if !fx.is_finite() {
            return (x, fx, spent, false);
        }

        let mut improving: Option<Vec<f64>> = None;
        'probes: for i in 0..x.len() {
            for sign in [1.0, -1.0] {
                let mut xp = x.clone();
                xp[i] += sign * 1e-5;
                if obj(&xp) < fx - 10.0 * tol {
                    improving = Some(xp);
                    break 'probes;
                }
            }
        }
        match improving {
            None => return (x, fx, spent, out.converged),
            Some(xp) => {
                if spent >= max_iters {
                    return (x, fx, spent, false);
                }
                x = xp;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// multistart driver

#[derive(Debug, Clone)]
struct StartOutcome {
    index: usize,
    poles: Vec<Complex64>,
    value: f64,
    iterations: usize,
    certified: bool,
    max_grid: usize,
}

fn real_chart_cycle(n: usize) -> Vec<Chart> {
    let mut charts = Vec::new();
    let mut n_real = n % 2;
    loop {
        charts.push(Chart::RealSym { n_real, n_pairs: (n - n_real) / 2 });
        if n_real + 2 > n {
            break;
        }
        n_real += 2;
    }
    charts
}

fn random_disk_point(rng: &mut ChaCha8Rng) -> Complex64 {
    let r = rng.gen_range(0.0..0.98f64).sqrt();
    let th = rng.gen_range(0.0..std::f64::consts::TAU);
    Complex64::from_polar(r, th)
}

fn make_starts(
    n: usize,
    cfg: &SolverConfig,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<(Chart, Vec<f64>)>> {
    let mut starts = Vec::with_capacity(cfg.warm_starts.len() + cfg.n_starts);
    for warm in &cfg.warm_starts {
        if warm.len() != n {
            return Err(Error::Domain(format!(
                "warm start with {} poles for a degree-{n} solve",
                warm.len()
            )));
        }
        starts.push(chart_for_poles(warm.points(), cfg.real_symmetric)?);
    }
    let real_charts = real_chart_cycle(n);
    for i in 0..cfg.n_starts {
        if cfg.real_symmetric {
            let chart = real_charts[i % real_charts.len()];
            let (n_real, n_pairs) = match chart {
                Chart::RealSym { n_real, n_pairs } => (n_real, n_pairs),
                Chart::Complex { .. } => unreachable!(),
            };
            let mut params = Vec::with_capacity(chart.dim());
            for _ in 0..n_real {
                let r = rng.gen_range(0.0..0.98f64).sqrt()
                    * if rng.gen::<bool>() { 1.0 } else { -1.0 };
                params.push(r / (1.0 - r * r).sqrt());
            }
            for _ in 0..n_pairs {
                let (a, b) = plane_from_disk(random_disk_point(rng));
                params.push(a);
                params.push(b);
            }
            starts.push((chart, params));
        } else {
            let mut params = Vec::with_capacity(2 * n);
            for _ in 0..n {
                let (a, b) = plane_from_disk(random_disk_point(rng));
                params.push(a);
                params.push(b);
            }
            starts.push((Chart::Complex { n }, params));
        }
    }
    Ok(starts)
}

fn run_starts(
    f: &BlaschkeProduct,
    n: usize,
    cfg: &SolverConfig,
) -> Result<Vec<StartOutcome>> {
    if cfg.n_starts == 0 && cfg.warm_starts.is_empty() {
        return Err(Error::Domain("at least one start is required".into()));
    }
    if cfg.max_iterations == 0 || cfg.tol <= 0.0 {
        return Err(Error::Domain("iteration budget and tolerance must be positive".into()));
    }
    // Validate once that f itself admits a grid at this tolerance.
    Evaluator::new(f, cfg.grid_tol, laurent::DEFAULT_GRID_CAP)?;

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let starts = make_starts(n, cfg, &mut rng)?;

    let outcomes: Vec<StartOutcome> = starts
        .into_par_iter()
        .enumerate()
        .map(|(index, (chart, x0))| {
            let mut ev = Evaluator::new(f, cfg.grid_tol, laurent::DEFAULT_GRID_CAP)
                .expect("validated above");
            let mut obj = |x: &[f64]| -> f64 {
                ev.eval(&chart.poles(x)).unwrap_or(f64::INFINITY)
            };
            let (x, value, iterations, certified) =
                minimize_certified(&mut obj, x0, cfg.tol, cfg.max_iterations);
            StartOutcome {
                index,
                poles: chart.poles(&x),
                value,
                iterations,
                certified,
                max_grid: ev.max_grid,
            }
        })
        .collect();
    Ok(outcomes)
}

fn best_outcome(outcomes: &[StartOutcome]) -> &StartOutcome {
    outcomes
        .iter()
        .min_by(|a, b| {
            a.value
                .partial_cmp(&b.value)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.index.cmp(&b.index))
        })
        .expect("at least one start")
}

fn result_from_outcome(
    f: &BlaschkeProduct,
    n: usize,
    cfg: &SolverConfig,
    best: &StartOutcome,
    starts_used: usize,
) -> Result<SolveResult> {
    let poles = PoleConfig::new(best.poles.clone(), cfg.real_symmetric)?;
    let q = Polynomial::monic_from_roots(poles.points());
    let p = optimal_numerator(&f.sharp_rational(), &q, n)?;
    let r_bar = RationalFunction::new(p, q)?;
    let approximant = sharp(&r_bar).add_scalar(f.value_at_origin());
    Ok(SolveResult {
        poles,
        error: best.value,
        approximant,
        starts_used,
        best_start_index: best.index,
        iterations: best.iterations,
        grid_size: best.max_grid,
        converged: best.certified,
    })
}

fn solve_rab_outcomes(
    f: &BlaschkeProduct,
    n: usize,
    cfg: &SolverConfig,
) -> Result<(SolveResult, Vec<StartOutcome>)> {
    let outcomes = run_starts(f, n, cfg)?;
    let best = best_outcome(&outcomes);
    if !best.value.is_finite() {
        return Err(Error::Domain(
            "no start produced a finite criterion value (grid cap reached everywhere)".into(),
        ));
    }
    let result = result_from_outcome(f, n, cfg, best, outcomes.len())?;
    Ok((result, outcomes))
}

/// Solves the degree-`n` best-approximation problem for `f` by multistart
/// descent of the concentrated criterion.
///
/// Requires `1 <= n`; for `n >= degree(f)` the problem is degenerate and `f`
/// itself is returned with error 0. The reported `error` is in the analytic
/// convention (it equals `|| f - approximant ||_2`), and the approximant has
/// all poles outside the closed disk. Non-convergence of every start is
/// reported through `converged = false` on a best-effort result, not as an
/// error.
pub fn solve_rab(f: &BlaschkeProduct, n: usize, cfg: &SolverConfig) -> Result<SolveResult> {
    let big_n = f.degree();
    if big_n == 0 {
        return Err(Error::Domain("f must have degree at least 1".into()));
    }
    if n == 0 {
        return Err(Error::Domain("approximant degree n must be at least 1".into()));
    }
    if n >= big_n {
        return Ok(SolveResult {
            poles: PoleConfig::new(f.zeros().to_vec(), false)?,
            error: 0.0,
            approximant: f.to_rational(),
            starts_used: 0,
            best_start_index: 0,
            iterations: 0,
            grid_size: 0,
            converged: true,
        });
    }
    solve_rab_outcomes(f, n, cfg).map(|(result, _)| result)
}

/// Solves degrees `n = 1..=n_max` in sequence, warm-starting each level from
/// the distinct local minima of the previous one augmented by an extra pole
/// at the origin and at 4 random disk points, plus `cfg.n_starts` fresh
/// random starts. The error sequence is checked to be non-increasing; a
/// regression triggers one rerun with doubled starts, keeping the better
/// outcome.
pub fn solve_sweep(
    f: &BlaschkeProduct,
    n_max: usize,
    cfg: &SolverConfig,
) -> Result<Vec<SolveResult>> {
    let big_n = f.degree();
    if n_max == 0 || n_max >= big_n {
        return Err(Error::Domain(format!(
            "need 1 <= n_max < degree(f), got n_max = {n_max}, degree = {big_n}"
        )));
    }
    let mut aug_rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(0xA5A5_A5A5));
    let mut results: Vec<SolveResult> = Vec::with_capacity(n_max);
    let mut prev_minima: Vec<Vec<Complex64>> = Vec::new();

    for n in 1..=n_max {
        let mut warm: Vec<PoleConfig> = cfg
            .warm_starts
            .iter()
            .filter(|w| w.len() == n)
            .cloned()
            .collect();
        for pm in prev_minima.iter().take(6) {
            let mut with_zero = pm.clone();
            with_zero.push(Complex64::new(0.0, 0.0));
            warm.push(PoleConfig::new(with_zero, cfg.real_symmetric)?);
            for _ in 0..4 {
                let extra = if cfg.real_symmetric {
                    let r = aug_rng.gen_range(0.0..0.98f64).sqrt()
                        * if aug_rng.gen::<bool>() { 1.0 } else { -1.0 };
                    Complex64::new(r, 0.0)
                } else {
                    random_disk_point(&mut aug_rng)
                };
                let mut pts = pm.clone();
                pts.push(extra);
                warm.push(PoleConfig::new(pts, cfg.real_symmetric)?);
            }
        }
        let mut cfg_n = cfg.clone();
        cfg_n.warm_starts = warm;
        cfg_n.seed = cfg.seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        let (mut result, mut outcomes) = solve_rab_outcomes(f, n, &cfg_n)?;

        if let Some(prev) = results.last() {
            if result.error > prev.error + 1e-9 {
                let mut retry = cfg_n.clone();
                retry.n_starts *= 2;
                retry.seed ^= 0x5DEE_CE66;
                let (r2, o2) = solve_rab_outcomes(f, n, &retry)?;
                if r2.error < result.error {
                    result = r2;
                    outcomes = o2;
                }
            }
        }

        prev_minima = distinct_minima(&outcomes, 6);
        results.push(result);
    }
    Ok(results)
}

/// Distinct finite local minima, ordered by criterion value, deduplicated by
/// value within `1e-7`.
fn distinct_minima(outcomes: &[StartOutcome], keep: usize) -> Vec<Vec<Complex64>> {
    let mut sorted: Vec<&StartOutcome> = outcomes.iter().filter(|o| o.value.is_finite()).collect();
    sorted.sort_by(|a, b| {
        a.value
            .partial_cmp(&b.value)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.index.cmp(&b.index))
    });
    let mut out: Vec<Vec<Complex64>> = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for o in sorted {
        if out.len() >= keep {
            break;
        }
        if o.value > last + 1e-7 || out.is_empty() {
            out.push(o.poles.clone());
            last = o.value;
        }
    }
    out
}

// ---------------------------------------------------------------------------
// numerator recovery and direct error

/// Relative band-mass threshold for accepting a sampled spectrum: the top
/// quarter of the positive and negative index ranges must carry less than
/// this fraction of the total mass.
const BAND_TOL: f64 = 1e-22;

/// Samples `eval` on boundary grids of doubling size until the outer
/// quarter-bands of the spectrum are negligible, then returns the grid size
/// and the 1/M-normalized DFT bins.
fn sampled_spectrum_adaptive(
    eval: &dyn Fn(Complex64) -> Result<Complex64>,
    m0: usize,
    cap: usize,
) -> Result<(usize, Vec<Complex64>)> {
    let mut m = m0.max(64).next_power_of_two();
    loop {
        let points = unit_points(m);
        let mut buf = Vec::with_capacity(m);
        for z in &points {
            buf.push(eval(*z)?);
        }
        fft_forward(&mut buf);
        let inv_m = 1.0 / m as f64;
        for v in buf.iter_mut() {
            *v *= inv_m;
        }
        let total: f64 = buf.iter().map(|v| v.norm_sqr()).sum();
        let band: f64 = buf[m / 4..3 * m / 4].iter().map(|v| v.norm_sqr()).sum();
        // the absolute floor accepts noise-level spectra (e.g. an identically
        // zero difference function), whose bands never decay relatively
        if band <= (BAND_TOL * total).max(1e-24) {
            return Ok((m, buf));
        }
        if m >= cap {
            return Err(Error::GridCapExceeded { required: 2 * m, cap });
        }
        m *= 2;
    }
}

/// The minimizing numerator `p_{n-1} = q~_n P_+( f_sharp q / q~_n )` for a
/// fixed denominator `q` with all roots in the open disk.
///
/// `f_sharp` must be a rational function that is holomorphic outside the
/// closed disk up to an additive constant (poles strictly inside; bounded at
/// infinity); the constant is removed internally. The product is computed by
/// boundary sampling and Riesz projection, and certified by re-expansion:
/// every recovered coefficient of index `>= n` must stay below `1e-9`,
/// otherwise the numerics have broken down and an error is returned.
pub fn optimal_numerator(
    f_sharp: &RationalFunction,
    q: &Polynomial,
    n: usize,
) -> Result<Polynomial> {
    if q.is_zero() {
        return Err(Error::Domain("denominator q must be nonzero".into()));
    }
    if q.degree() > n {
        return Err(Error::Domain(format!(
            "deg q = {} exceeds the requested degree n = {n}",
            q.degree()
        )));
    }
    let num = f_sharp.numerator();
    let den = f_sharp.denominator();
    if !num.is_zero() && num.degree() > den.degree() {
        return Err(Error::Domain(
            "f_sharp grows at infinity; expected poles in the disk plus a constant".into(),
        ));
    }
    let c_inf = if !num.is_zero() && num.degree() == den.degree() {
        num.coeff(num.degree()) / den.coeff(den.degree())
    } else {
        Complex64::new(0.0, 0.0)
    };
    let g = f_sharp.add_scalar(-c_inf);
    let qt = reciprocal_polynomial(q, n)?;

    let sample = |z: Complex64| -> Result<Complex64> {
        let qt_v = qt.eval(z);
        if qt_v.norm() < 1e-14 {
            return Err(Error::EvaluationAtPole { denom_modulus: qt_v.norm() });
        }
        Ok(g.eval(z)? * q.eval(z) / qt_v)
    };
    let m0 = (4 * (den.degree() + n + 64)).next_power_of_two();
    let (m, bins) = sampled_spectrum_adaptive(&sample, m0, laurent::DEFAULT_GRID_CAP)?;

    // convolve q~ with the non-negative part of the spectrum
    let half = m / 2;
    let mut p_full = vec![Complex64::new(0.0, 0.0); half];
    for (i, &qi) in qt.coeffs().iter().enumerate() {
        if qi.norm() == 0.0 {
            continue;
        }
        for j in i..half {
            p_full[j] += qi * bins[j - i];
        }
    }
    let residual = p_full[n..].iter().map(|c| c.norm()).fold(0.0, f64::max);
    if residual >= 1e-9 {
        return Err(Error::DegreeCertification { residual, degree: n });
    }
    Ok(Polynomial::new(p_full[..n].to_vec()))
}

/// Direct Parseval evaluation of the approximation error.
///
/// `r` is matched to a convention by its pole locations: all poles strictly
/// outside the closed disk (or none) means the analytic form and the value
/// is `|| f - r ||_2`; all poles strictly inside means the conjugate form
/// and the value is `|| f^♯ - r ||_2`. A pole within `1e-9` of the circle,
/// or a mix of inside/outside poles, is rejected.
pub fn approximant_error_direct(f: &BlaschkeProduct, r: &RationalFunction) -> Result<f64> {
    if f.degree() == 0 {
        return Err(Error::Domain("f must have degree at least 1".into()));
    }
    let mut inside = 0usize;
    let mut outside = 0usize;
    for pole in r.poles()? {
        let m = pole.norm();
        if (m - 1.0).abs() < 1e-9 {
            return Err(Error::RootNearCircle { modulus: m });
        }
        if m < 1.0 {
            inside += 1;
        } else {
            outside += 1;
        }
    }
    if inside > 0 && outside > 0 {
        return Err(Error::Domain(
            "approximant has poles on both sides of the circle; convention is ambiguous".into(),
        ));
    }
    let analytic = inside == 0;

    let m_f = laurent::adaptive_grid_size(
        f.degree(),
        f.max_zero_modulus(),
        64,
        1e-24,
        laurent::DEFAULT_GRID_CAP,
    )?;
    let m0 = m_f.max(4 * (r.degree() + 2)).next_power_of_two();
    let sample = |z: Complex64| -> Result<Complex64> {
        let fv = f.evaluate(z)?;
        let target = if analytic { fv } else { fv.conj() };
        Ok(target - r.eval(z)?)
    };
    let (m, _) = sampled_spectrum_adaptive(&sample, m0, laurent::DEFAULT_GRID_CAP)?;
    let mut sum = 0.0;
    for z in unit_points(m) {
        sum += sample(z)?.norm_sqr();
    }
    Ok((sum / m as f64).sqrt())
}
