//! Complex polynomials and rational functions.
//!
//! Coefficients are stored in ascending powers. Polynomials are kept trimmed
//! (no zero leading coefficient) except for the zero polynomial, which is a
//! single zero coefficient.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance used to decide that a root is numerically on the unit circle.
pub const CIRCLE_TOL: f64 = 1e-9;

/// A univariate polynomial with complex coefficients, ascending powers.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    /// Builds a polynomial from ascending-power coefficients, trimming
    /// trailing zeros.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let mut p = Polynomial { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![Complex64::new(0.0, 0.0)] }
    }

    pub fn one() -> Self {
        Polynomial { coeffs: vec![Complex64::new(1.0, 0.0)] }
    }

    pub fn constant(c: Complex64) -> Self {
        Polynomial::new(vec![c])
    }

    /// The monic polynomial with exactly the given roots.
    pub fn monic_from_roots(roots: &[Complex64]) -> Self {
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for &r in roots {
            // multiply by (z - r)
            let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= r * c;
            }
            coeffs = next;
        }
        Polynomial { coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 {
            let last = self.coeffs[self.coeffs.len() - 1];
            if last.norm() == 0.0 {
                self.coeffs.pop();
            } else {
                break;
            }
        }
        if self.coeffs.is_empty() {
            self.coeffs.push(Complex64::new(0.0, 0.0));
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^k`, zero outside the stored range.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Degree after trimming; the zero polynomial reports degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.norm() == 0.0)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Derivative with respect to `z`.
    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * (k as f64))
            .collect();
        Polynomial::new(coeffs)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
        for (i, c) in coeffs.iter_mut().enumerate() {
            *c = self.coeff(i) + other.coeff(i);
        }
        Polynomial::new(coeffs)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs =
            vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::new(coeffs)
    }

    pub fn scale(&self, s: Complex64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// All complex roots, with multiplicity, by the Aberth-Ehrlich method.
    ///
    /// Roots are accepted on a backward-error test, so clusters coming from
    /// multiple roots are returned as clusters. The result is sorted by
    /// (re, im) for reproducibility.
    pub fn roots(&self) -> Result<Vec<Complex64>> {
        if self.is_zero() {
            return Err(Error::Domain("roots of the zero polynomial".into()));
        }
        let deg = self.degree();
        if deg == 0 {
            return Ok(Vec::new());
        }
        if deg > 4096 {
            return Err(Error::Domain(format!("root finding capped at degree 4096, got {deg}")));
        }

        // Strip roots at the origin first.
        let mut k0 = 0;
        while k0 < self.coeffs.len() && self.coeffs[k0].norm() == 0.0 {
            k0 += 1;
        }
        let mut roots = vec![Complex64::new(0.0, 0.0); k0];
        let reduced = Polynomial::new(self.coeffs[k0..].to_vec());
        let d = reduced.degree();
        if d == 0 {
            roots.sort_by(cmp_complex);
            return Ok(roots);
        }

        let p = &reduced;
        let dp = p.derivative();
        let lead = p.coeff(d).norm();
        let tail = p.coeff(0).norm();
        // Initial guesses on a circle of radius ~ geometric mean bound.
        let r0 = (tail / lead).powf(1.0 / d as f64).clamp(1e-6, 1e6);
        let mut zs: Vec<Complex64> = (0..d)
            .map(|j| {
                let th = 2.0 * std::f64::consts::PI * (j as f64) / (d as f64) + 0.437;
                Complex64::from_polar(r0, th)
            })
            .collect();

        let scale_at = |z: Complex64| -> f64 {
            let az = z.norm();
            let mut s = 0.0;
            let mut pw = 1.0;
            for c in p.coeffs() {
                s += c.norm() * pw;
                pw *= az;
            }
            s.max(f64::MIN_POSITIVE)
        };

        let mut done = vec![false; d];
        for _iter in 0..600 {
            let mut moved = 0.0f64;
            for i in 0..d {
                if done[i] {
                    continue;
                }
                let zi = zs[i];
                let pv = p.eval(zi);
                if pv.norm() <= 8.0 * f64::EPSILON * scale_at(zi) {
                    done[i] = true;
                    continue;
                }
                let dv = dp.eval(zi);
                let newton = if dv.norm() == 0.0 {
                    Complex64::new(1e-8, 1e-8)
                } else {
                    pv / dv
                };
                let mut sum = Complex64::new(0.0, 0.0);
                for (j, &zj) in zs.iter().enumerate() {
                    if j != i {
                        let diff = zi - zj;
                        if diff.norm() > 1e-300 {
                            sum += diff.inv();
                        }
                    }
                }
                let denom = Complex64::new(1.0, 0.0) - newton * sum;
                let w = if denom.norm() < 1e-12 { newton } else { newton / denom };
                zs[i] = zi - w;
                moved = moved.max(w.norm() / (1.0 + zs[i].norm()));
            }
            if done.iter().all(|&f| f) || moved < 1e-15 {
                break;
            }
        }

        for z in &zs {
            if p.eval(*z).norm() > 1e-8 * scale_at(*z) {
                return Err(Error::RootsDiverged { degree: deg });
            }
        }
        roots.extend_from_slice(&zs);
        roots.sort_by(cmp_complex);
        Ok(roots)
    }
}

fn cmp_complex(a: &Complex64, b: &Complex64) -> std::cmp::Ordering {
    a.re.partial_cmp(&b.re)
        .unwrap_or(std::cmp::Ordering::Equal)
        .then(a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal))
}

/// A quotient of two polynomials. The denominator is never identically zero;
/// no common-factor reduction is attempted.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction {
    numerator: Polynomial,
    denominator: Polynomial,
}

impl RationalFunction {
    pub fn new(numerator: Polynomial, denominator: Polynomial) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::Domain("rational function with zero denominator".into()));
        }
        Ok(RationalFunction { numerator, denominator })
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        RationalFunction { numerator: p, denominator: Polynomial::one() }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }

    /// Exact degree as a rational function: max of the trimmed degrees.
    pub fn degree(&self) -> usize {
        self.numerator.degree().max(self.denominator.degree())
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let den = self.denominator.eval(z);
        if den.norm() < 1e-12 * (1.0 + self.numerator.eval(z).norm()) {
            return Err(Error::EvaluationAtPole { denom_modulus: den.norm() });
        }
        Ok(self.numerator.eval(z) / den)
    }

    /// Poles: roots of the denominator (no cancellation against the
    /// numerator is attempted).
    pub fn poles(&self) -> Result<Vec<Complex64>> {
        self.denominator.roots()
    }

    /// Zeros of the numerator.
    pub fn zeros(&self) -> Result<Vec<Complex64>> {
        if self.numerator.is_zero() {
            return Err(Error::Domain("zeros of the identically-zero numerator".into()));
        }
        self.numerator.roots()
    }

    /// `self + c` as a rational function over the same denominator.
    pub fn add_scalar(&self, c: Complex64) -> RationalFunction {
        RationalFunction {
            numerator: self.numerator.add(&self.denominator.scale(c)),
            denominator: self.denominator.clone(),
        }
    }
}
