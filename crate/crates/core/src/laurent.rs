//! Laurent/Fourier series on the unit circle.
//!
//! A [`LaurentSeries`] is a finite, contiguous window of Fourier coefficients
//! `a_k`, `k_min <= k <= k_max`, of a boundary function
//! `f(e^{iθ}) = Σ_k a_k e^{ikθ}`. A [`BoundaryGrid`] carries samples of such a
//! function at the `M`-th roots of unity. The module provides the discrete
//! Fourier analysis/synthesis pair between the two, the Riesz projections
//! `P_+`/`P_-`, Parseval norms, and the two winding-number computations
//! (`Σ k |a_k|^2` for unimodular boundary functions, and zero/pole counting
//! for rational ones).

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::poly::{RationalFunction, CIRCLE_TOL};

/// Hard cap on adaptive boundary-grid sizes.
pub const DEFAULT_GRID_CAP: usize = 1 << 22;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
    static FWD_CACHE: RefCell<HashMap<usize, Arc<dyn Fft<f64>>>> = RefCell::new(HashMap::new());
    static INV_CACHE: RefCell<HashMap<usize, Arc<dyn Fft<f64>>>> = RefCell::new(HashMap::new());
}

/// In-place forward DFT: `X_k = Σ_j x_j e^{-2πi jk/M}` (unnormalized).
pub(crate) fn fft_forward(buf: &mut [Complex64]) {
    let n = buf.len();
    let fft = FWD_CACHE.with(|c| {
        c.borrow_mut()
            .entry(n)
            .or_insert_with(|| PLANNER.with(|p| p.borrow_mut().plan_fft_forward(n)))
            .clone()
    });
    fft.process(buf);
}

/// In-place inverse DFT: `x_j = Σ_k X_k e^{+2πi jk/M}` (unnormalized).
pub(crate) fn fft_inverse(buf: &mut [Complex64]) {
    let n = buf.len();
    let fft = INV_CACHE.with(|c| {
        c.borrow_mut()
            .entry(n)
            .or_insert_with(|| PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(n)))
            .clone()
    });
    fft.process(buf);
}

/// Samples of a boundary function at the `M`-th roots of unity, `M` a power
/// of two. Sample `j` is the value at `exp(2πi j / M)`.
#[derive(Debug, Clone)]
pub struct BoundaryGrid {
    samples: Vec<Complex64>,
}

impl BoundaryGrid {
    pub fn new(samples: Vec<Complex64>) -> Result<Self> {
        let m = samples.len();
        if m < 2 || !m.is_power_of_two() {
            return Err(Error::Domain(format!(
                "boundary grid size must be a power of two >= 2, got {m}"
            )));
        }
        Ok(BoundaryGrid { samples })
    }

    /// Samples `f` at the `size`-th roots of unity.
    pub fn from_fn(size: usize, mut f: impl FnMut(Complex64) -> Complex64) -> Result<Self> {
        if size < 2 || !size.is_power_of_two() {
            return Err(Error::Domain(format!(
                "boundary grid size must be a power of two >= 2, got {size}"
            )));
        }
        Ok(BoundaryGrid { samples: unit_points(size).into_iter().map(&mut f).collect() })
    }

    pub fn size(&self) -> usize {
        self.samples.len()
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }
}

/// The `size`-th roots of unity, `exp(2πi j / size)` for `j = 0..size`.
pub fn unit_points(size: usize) -> Vec<Complex64> {
    let step = 2.0 * std::f64::consts::PI / size as f64;
    (0..size)
        .map(|j| {
            let (s, c) = (step * j as f64).sin_cos();
            Complex64::new(c, s)
        })
        .collect()
}

/// A contiguous window of Fourier coefficients. The coefficient at position
/// `j` of `coeffs` has index `k_min + j`. The empty window is allowed (it
/// arises naturally from the Riesz projections) and behaves as the zero
/// series.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentSeries {
    k_min: i64,
    coeffs: Vec<Complex64>,
}

impl LaurentSeries {
    pub fn new(k_min: i64, coeffs: Vec<Complex64>) -> Self {
        LaurentSeries { k_min, coeffs }
    }

    pub fn empty() -> Self {
        LaurentSeries { k_min: 0, coeffs: Vec::new() }
    }

    /// Taylor window starting at index 0.
    pub fn from_taylor(coeffs: Vec<Complex64>) -> Self {
        LaurentSeries { k_min: 0, coeffs }
    }

    pub fn k_min(&self) -> i64 {
        self.k_min
    }

    /// Index of the last stored coefficient; `None` for the empty window.
    pub fn k_max(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.k_min + self.coeffs.len() as i64 - 1)
        }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient `a_k`; zero outside the stored window.
    pub fn coeff(&self, k: i64) -> Complex64 {
        if k < self.k_min {
            return Complex64::new(0.0, 0.0);
        }
        let j = (k - self.k_min) as usize;
        self.coeffs.get(j).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs.iter().enumerate().map(move |(j, &c)| (self.k_min + j as i64, c))
    }

    /// The same coefficients re-indexed by `k -> k + shift` (multiplication
    /// by `z^shift`).
    pub fn shifted(&self, shift: i64) -> LaurentSeries {
        LaurentSeries { k_min: self.k_min + shift, coeffs: self.coeffs.clone() }
    }

    /// Riesz projection `P_+`: keeps indices `k >= 0`.
    pub fn project_plus(&self) -> LaurentSeries {
        self.slice_from(0, true)
    }

    /// Riesz projection `P_-`: keeps indices `k < 0`.
    pub fn project_minus(&self) -> LaurentSeries {
        self.slice_from(0, false)
    }

    fn slice_from(&self, split: i64, upper: bool) -> LaurentSeries {
        if self.coeffs.is_empty() {
            return LaurentSeries::empty();
        }
        let k_max = self.k_min + self.coeffs.len() as i64 - 1;
        if upper {
            if k_max < split {
                return LaurentSeries::empty();
            }
            let start = (split.max(self.k_min) - self.k_min) as usize;
            LaurentSeries {
                k_min: self.k_min.max(split),
                coeffs: self.coeffs[start..].to_vec(),
            }
        } else {
            if self.k_min >= split {
                return LaurentSeries::empty();
            }
            let end = ((split.min(k_max + 1)) - self.k_min) as usize;
            LaurentSeries { k_min: self.k_min, coeffs: self.coeffs[..end].to_vec() }
        }
    }

    /// Squared Parseval norm `Σ |a_k|^2` over the window.
    pub fn l2_norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Parseval norm `sqrt(Σ |a_k|^2)`.
    pub fn l2_norm(&self) -> f64 {
        self.l2_norm_sq().sqrt()
    }

    /// The winding-number sum `Σ k |a_k|^2` over the window.
    ///
    /// For an adequately truncated expansion of a continuous unimodular
    /// function this approximates the integer winding number; the caller is
    /// responsible for the truncation error.
    pub fn brezis_winding(&self) -> f64 {
        self.iter().map(|(k, c)| k as f64 * c.norm_sqr()).sum()
    }
}

/// Estimates the Fourier coefficients `a_k`, `k_min <= k <= k_max`, of the
/// function sampled on `grid` by the discrete Fourier transform.
///
/// DFT bin `j` is interpreted as index `j` for `j < M/2` and as `j - M`
/// for `j >= M/2`; an arbitrary window of width at most `M` is served by
/// reducing each requested index modulo `M`. Aliasing error is the caller's
/// responsibility (see [`adaptive_grid_size`]).
pub fn dft_coefficients(grid: &BoundaryGrid, k_min: i64, k_max: i64) -> Result<LaurentSeries> {
    if k_min > k_max {
        return Err(Error::Domain(format!("empty coefficient window [{k_min}, {k_max}]")));
    }
    let m = grid.size();
    let width = (k_max - k_min + 1) as u128;
    if width > m as u128 {
        return Err(Error::WindowExceedsGrid { k_min, k_max, size: m });
    }
    let mut buf = grid.samples().to_vec();
    fft_forward(&mut buf);
    let scale = 1.0 / m as f64;
    let mi = m as i64;
    let coeffs = (k_min..=k_max)
        .map(|k| buf[(k.rem_euclid(mi)) as usize] * scale)
        .collect();
    Ok(LaurentSeries { k_min, coeffs })
}

/// Evaluates the trigonometric polynomial with the given coefficients at the
/// `size`-th roots of unity. The window must fit inside `[-M/2, M/2)`.
pub fn synthesize(series: &LaurentSeries, size: usize) -> Result<BoundaryGrid> {
    if size < 2 || !size.is_power_of_two() {
        return Err(Error::Domain(format!(
            "boundary grid size must be a power of two >= 2, got {size}"
        )));
    }
    let half = (size / 2) as i64;
    if let Some(k_max) = series.k_max() {
        if series.k_min() < -half || k_max >= half {
            return Err(Error::WindowExceedsGrid { k_min: series.k_min(), k_max, size });
        }
    }
    let mut bins = vec![Complex64::new(0.0, 0.0); size];
    for (k, c) in series.iter() {
        bins[k.rem_euclid(size as i64) as usize] = c;
    }
    fft_inverse(&mut bins);
    BoundaryGrid::new(bins)
}

/// Winding number of a rational function on the unit circle: zeros minus
/// poles inside the open disk, counted with multiplicity.
///
/// Fails when a zero or pole has modulus within `1e-9` of 1.
pub fn winding_rational(f: &RationalFunction) -> Result<i64> {
    if f.numerator().is_zero() {
        return Err(Error::Domain("winding number of the zero function".into()));
    }
    let mut inside = 0i64;
    for z in f.zeros()? {
        let m = z.norm();
        if (m - 1.0).abs() < CIRCLE_TOL {
            return Err(Error::RootNearCircle { modulus: m });
        }
        if m < 1.0 {
            inside += 1;
        }
    }
    for p in f.poles()? {
        let m = p.norm();
        if (m - 1.0).abs() < CIRCLE_TOL {
            return Err(Error::RootNearCircle { modulus: m });
        }
        if m < 1.0 {
            inside -= 1;
        }
    }
    Ok(inside)
}

/// Smallest power-of-two grid size `M >= min_size` such that the certified
/// squared-coefficient tail of a degree-`degree` Blaschke product with zero
/// moduli at most `lambda`, summed from `M/2`, is below `tail_tol`.
///
/// The certificate is the geometric tail estimate behind
/// [`crate::bounds::coeff_tail_bound`], evaluated at the split parameter
/// `α = α_0/2`. A product whose zeros all sit at the origin has an exactly
/// finite window, handled separately.
pub fn adaptive_grid_size(
    degree: usize,
    lambda: f64,
    min_size: usize,
    tail_tol: f64,
    cap: usize,
) -> Result<usize> {
    if !(0.0..1.0).contains(&lambda) {
        return Err(Error::Domain(format!("zero modulus bound {lambda} outside [0, 1)")));
    }
    if tail_tol <= 0.0 {
        return Err(Error::Domain("tail tolerance must be positive".into()));
    }
    let k0 = if lambda == 0.0 || degree == 0 {
        (degree + 1) as f64
    } else {
        let alpha = 0.5 * (1.0 - lambda) / (1.0 + lambda);
        let s = crate::bounds::s_star(lambda, alpha)?;
        let rho = (s - lambda) / (1.0 - lambda * s);
        let n = degree as f64;
        let k_tail = (2.0 * n * rho.ln() + (s * s / (s * s - 1.0)).ln() - tail_tol.ln())
            / (2.0 * s.ln());
        k_tail.max(n / alpha).max(1.0)
    };
    let needed = 2.0 * (k0 + 1.0);
    if !needed.is_finite() || needed > cap as f64 {
        return Err(Error::GridCapExceeded {
            required: if needed.is_finite() { needed as usize } else { usize::MAX },
            cap,
        });
    }
    let m = (needed.ceil() as usize).max(min_size).max(2).next_power_of_two();
    if m > cap {
        return Err(Error::GridCapExceeded { required: m, cap });
    }
    Ok(m)
}
