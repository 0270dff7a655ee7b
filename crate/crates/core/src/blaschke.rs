//! Finite Blaschke products and the tilde/sharp involutions.
//!
//! A finite Blaschke product is stored as a unimodular constant `c` and a
//! multiset of zeros `ζ_l` in the open unit disk,
//!
//! ```text
//! b(z) = c · Π_l (z - ζ_l) / (1 - conj(ζ_l) z).
//! ```
//!
//! The raw factors `(z - ζ)/(1 - conj(ζ) z)` are used, with any unimodular
//! normalization absorbed into `c`; every quantity consumed downstream
//! (coefficient moduli, norms, criteria) is invariant under unimodular
//! constants, and the raw form admits zeros at the origin. Taylor
//! coefficients come in two independent flavors: a slow exact oracle by
//! multiplying truncated factor expansions, and a fast boundary-sampling DFT
//! whose aliasing is controlled by the geometric tail certificate.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::laurent::{self, BoundaryGrid, LaurentSeries};
use crate::poly::{Polynomial, RationalFunction};

/// Rejection threshold for zeros: moduli at or above `1 - 1e-12` are
/// considered on the circle and refused.
const ZERO_MODULUS_TOL: f64 = 1e-12;

/// A finite Blaschke product.
#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeProduct {
    constant: Complex64,
    zeros: Vec<Complex64>,
}

impl BlaschkeProduct {
    /// Validates `|constant| = 1` (to `1e-12`) and every zero strictly inside
    /// the disk (modulus below `1 - 1e-12`). Zeros exactly at the origin are
    /// allowed; they contribute monomial factors `z`.
    pub fn new(constant: Complex64, zeros: Vec<Complex64>) -> Result<Self> {
        if (constant.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!(
                "Blaschke constant must be unimodular, |c| = {}",
                constant.norm()
            )));
        }
        for z in &zeros {
            if z.norm() >= 1.0 - ZERO_MODULUS_TOL {
                return Err(Error::Domain(format!(
                    "Blaschke zero of modulus {} is not strictly inside the disk",
                    z.norm()
                )));
            }
        }
        Ok(BlaschkeProduct { constant, zeros })
    }

    /// The product with unit constant and the given zeros.
    pub fn from_zeros(zeros: Vec<Complex64>) -> Result<Self> {
        BlaschkeProduct::new(Complex64::new(1.0, 0.0), zeros)
    }

    /// The monomial `z^n`.
    pub fn monomial(n: usize) -> Self {
        BlaschkeProduct {
            constant: Complex64::new(1.0, 0.0),
            zeros: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    pub fn constant(&self) -> Complex64 {
        self.constant
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    /// Number of zeros with multiplicity.
    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    /// Largest zero modulus (0 for the empty product).
    pub fn max_zero_modulus(&self) -> f64 {
        self.zeros.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Value at the origin, `c · Π (-ζ_l)`.
    pub fn value_at_origin(&self) -> Complex64 {
        let mut v = self.constant;
        for z in &self.zeros {
            v *= -z;
        }
        v
    }

    /// Evaluates the product at `z`. Fails when `z` is within `1e-12` of a
    /// pole `1/conj(ζ_l)`.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        let mut v = self.constant;
        for zero in &self.zeros {
            let den = Complex64::new(1.0, 0.0) - zero.conj() * z;
            if den.norm() < 1e-12 {
                return Err(Error::EvaluationAtPole { denom_modulus: den.norm() });
            }
            v *= (z - zero) / den;
        }
        Ok(v)
    }

    /// Values at the given circle points. No pole checks: on `|z| = 1` every
    /// factor denominator satisfies `|1 - conj(ζ) z| >= 1 - |ζ| > 0`.
    pub fn values_at(&self, points: &[Complex64]) -> Vec<Complex64> {
        points
            .iter()
            .map(|&z| {
                let mut v = self.constant;
                for zero in &self.zeros {
                    v *= (z - zero) / (Complex64::new(1.0, 0.0) - zero.conj() * z);
                }
                v
            })
            .collect()
    }

    /// The product as the rational function `c q / q~`, where `q` is the
    /// monic polynomial with the zeros as roots and `q~` its reciprocal.
    pub fn to_rational(&self) -> RationalFunction {
        let q = Polynomial::monic_from_roots(&self.zeros);
        let qt = reciprocal_polynomial(&q, self.degree()).expect("deg q = n");
        RationalFunction::new(q.scale(self.constant), qt).expect("q~ is not zero")
    }

    /// `b^♯ = 1/b` as a rational function: `conj(c) q~ / q`.
    pub fn sharp_rational(&self) -> RationalFunction {
        let q = Polynomial::monic_from_roots(&self.zeros);
        let qt = reciprocal_polynomial(&q, self.degree()).expect("deg q = n");
        RationalFunction::new(qt.scale(self.constant.conj()), q).expect("q is not zero")
    }

    /// Taylor coefficients `a_0..a_k_max` by multiplying truncated
    /// elementary-factor expansions
    /// `b_w(z) = -w + (1 - |w|^2) Σ_{k>=1} conj(w)^{k-1} z^k`,
    /// each factor truncated once `|w|^k (1 - |w|^2) < 1e-15`. This is the
    /// slow exact oracle for the fast DFT path.
    pub fn taylor_coeffs_series(&self, k_max: usize) -> LaurentSeries {
        let mut acc = vec![Complex64::new(0.0, 0.0); k_max + 1];
        acc[0] = self.constant;
        for w in &self.zeros {
            let factor = elementary_factor_coeffs(*w, k_max);
            acc = convolve_truncated(&acc, &factor, k_max);
        }
        LaurentSeries::from_taylor(acc)
    }

    /// Taylor coefficients `a_0..a_k_max` by boundary sampling and DFT on an
    /// adaptively sized grid; agrees with [`Self::taylor_coeffs_series`]
    /// within `tol`.
    ///
    /// The grid is sized so that the certified squared-coefficient tail at
    /// `M/2` is below `tol^2`, which keeps the per-coefficient aliasing error
    /// below `tol`. Fails when zeros sit so close to the circle that the
    /// required grid exceeds the cap.
    pub fn taylor_coeffs_fft(&self, k_max: usize, tol: f64) -> Result<LaurentSeries> {
        if tol <= 0.0 {
            return Err(Error::Domain("tolerance must be positive".into()));
        }
        let tail_tol = (tol * tol).max(1e-30);
        let m = laurent::adaptive_grid_size(
            self.degree(),
            self.max_zero_modulus(),
            2 * (k_max + 1),
            tail_tol,
            laurent::DEFAULT_GRID_CAP,
        )?;
        let grid = BoundaryGrid::new(self.values_at(&laurent::unit_points(m)))?;
        laurent::dft_coefficients(&grid, 0, k_max as i64)
    }

    /// Parses the plain-text format: whitespace-separated real/imaginary
    /// pairs, the first pair being the constant and each following pair a
    /// zero. `#` starts a comment running to the end of the line.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut tokens = Vec::new();
        for line in text.lines() {
            let body = line.split('#').next().unwrap_or("");
            tokens.extend(body.split_whitespace().map(str::to_owned));
        }
        if tokens.len() < 2 {
            return Err(Error::Parse("expected at least the constant `c_re c_im`".into()));
        }
        if tokens.len() % 2 != 0 {
            return Err(Error::Parse(format!(
                "odd number of values ({}); expected re/im pairs",
                tokens.len()
            )));
        }
        let mut values = Vec::with_capacity(tokens.len() / 2);
        for pair in tokens.chunks(2) {
            let re: f64 = pair[0]
                .parse()
                .map_err(|_| Error::Parse(format!("bad number {:?}", pair[0])))?;
            let im: f64 = pair[1]
                .parse()
                .map_err(|_| Error::Parse(format!("bad number {:?}", pair[1])))?;
            values.push(Complex64::new(re, im));
        }
        let constant = values[0];
        BlaschkeProduct::new(constant, values[1..].to_vec())
    }

    /// Serializes to the plain-text format accepted by [`Self::from_text`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{:.16e} {:.16e}\n", self.constant.re, self.constant.im));
        for z in &self.zeros {
            out.push_str(&format!("{:.16e} {:.16e}\n", z.re, z.im));
        }
        out
    }
}

fn elementary_factor_coeffs(w: Complex64, k_max: usize) -> Vec<Complex64> {
    let r = w.norm();
    if r == 0.0 {
        return vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
    }
    let head = 1.0 - r * r;
    // smallest L with r^L * (1 - r^2) < 1e-15
    let len = ((1e-15 / head).ln() / r.ln()).ceil().max(1.0) as usize;
    let len = len.min(k_max.max(1));
    let mut coeffs = Vec::with_capacity(len + 1);
    coeffs.push(-w);
    let mut pw = Complex64::new(head, 0.0);
    for _ in 1..=len {
        coeffs.push(pw);
        pw *= w.conj();
    }
    coeffs
}

fn convolve_truncated(a: &[Complex64], b: &[Complex64], k_max: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); k_max + 1];
    for (i, &ai) in a.iter().enumerate() {
        if i > k_max {
            break;
        }
        let top = (k_max - i).min(b.len().saturating_sub(1));
        for (j, &bj) in b.iter().enumerate().take(top + 1) {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// The reciprocal polynomial `q~_n(z) = z^n conj(q(1/conj(z)))`: coefficient
/// `j` of the result is the conjugate of coefficient `n - j` of `q`,
/// zero-padded. Requires `deg q <= n`; the operation at fixed `n` is an
/// involution.
pub fn reciprocal_polynomial(q: &Polynomial, n: usize) -> Result<Polynomial> {
    if q.degree() > n && !q.is_zero() {
        return Err(Error::Domain(format!(
            "reciprocal at degree {n} of a polynomial of degree {}",
            q.degree()
        )));
    }
    let coeffs = (0..=n).map(|j| q.coeff(n - j).conj()).collect();
    Ok(Polynomial::new(coeffs))
}

/// The involution `f^♯(z) = conj(f(1/conj(z)))` on rational functions.
///
/// Realized as the quotient of the two reciprocals taken at the common
/// degree `d = max(deg p, deg q)`; the degree is preserved. For a Blaschke
/// product `b` this is `1/b` up to normalization.
pub fn sharp(f: &RationalFunction) -> RationalFunction {
    let d = f.numerator().degree().max(f.denominator().degree());
    let num = reciprocal_polynomial(f.numerator(), d).expect("deg <= d");
    let den = reciprocal_polynomial(f.denominator(), d).expect("deg <= d");
    RationalFunction::new(num, den).expect("reciprocal of a nonzero polynomial is nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn validation() {
        assert!(BlaschkeProduct::new(c(2.0, 0.0), vec![]).is_err());
        assert!(BlaschkeProduct::from_zeros(vec![c(1.0, 0.0)]).is_err());
        assert!(BlaschkeProduct::from_zeros(vec![c(1.0 - 1e-13, 0.0)]).is_err());
        assert!(BlaschkeProduct::from_zeros(vec![c(0.999, 0.0)]).is_ok());
    }

    #[test]
    fn evaluate_examples() {
        let b = BlaschkeProduct::monomial(3);
        assert!((b.evaluate(c(0.0, 2.0)).unwrap() - c(0.0, -8.0)).norm() < 1e-12);

        let b = BlaschkeProduct::from_zeros(vec![c(0.5, 0.0)]).unwrap();
        assert!(b.evaluate(c(0.5, 0.0)).unwrap().norm() < 1e-15);
        assert!((b.evaluate(c(1.0, 0.0)).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        assert!(matches!(b.evaluate(c(2.0, 0.0)), Err(Error::EvaluationAtPole { .. })));
    }

    #[test]
    fn reciprocal_examples() {
        // q = z - 0.5, n = 1  ->  -0.5 z + 1
        let q = Polynomial::new(vec![c(-0.5, 0.0), c(1.0, 0.0)]);
        let qt = reciprocal_polynomial(&q, 1).unwrap();
        assert_eq!(qt.coeffs(), &[c(1.0, 0.0), c(-0.5, 0.0)]);

        // q = 1, n = 2  ->  z^2
        let qt = reciprocal_polynomial(&Polynomial::one(), 2).unwrap();
        assert_eq!(qt.coeffs(), &[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);

        // involution
        let q = Polynomial::new(vec![c(0.3, -0.4), c(1.0, 2.0), c(0.0, 0.5)]);
        let back = reciprocal_polynomial(&reciprocal_polynomial(&q, 4).unwrap(), 4).unwrap();
        assert_eq!(back, q);

        assert!(reciprocal_polynomial(&q, 1).is_err());
    }

    #[test]
    fn sharp_examples() {
        // z^3 -> 1/z^3
        let f = RationalFunction::from_polynomial(Polynomial::monic_from_roots(&[
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
        ]));
        let fs = sharp(&f);
        assert_eq!(fs.numerator(), &Polynomial::one());
        assert_eq!(fs.denominator().degree(), 3);

        // b_{0.5} -> (1 - 0.5 z)/(z - 0.5), checked by evaluation
        let b = BlaschkeProduct::from_zeros(vec![c(0.5, 0.0)]).unwrap();
        let fs = sharp(&b.to_rational());
        for z in [c(0.3, 0.4), c(-1.7, 0.2), c(0.0, 2.0)] {
            let want = b.evaluate((z.conj()).inv()).unwrap().conj();
            assert!((fs.eval(z).unwrap() - want).norm() < 1e-12);
        }

        // double application returns f
        let f = RationalFunction::new(
            Polynomial::new(vec![c(1.0, -2.0), c(0.5, 0.0)]),
            Polynomial::monic_from_roots(&[c(0.2, 0.1), c(-0.4, 0.0)]),
        )
        .unwrap();
        let ff = sharp(&sharp(&f));
        for z in [c(0.9, 0.1), c(-0.2, 0.6)] {
            assert!((ff.eval(z).unwrap() - f.eval(z).unwrap()).norm() < 1e-12);
        }
    }

    #[test]
    fn taylor_series_examples() {
        let b = BlaschkeProduct::monomial(2);
        let s = b.taylor_coeffs_series(5);
        for k in 0..=5 {
            let want = if k == 2 { 1.0 } else { 0.0 };
            assert!((s.coeff(k) - c(want, 0.0)).norm() < 1e-15);
        }

        let b = BlaschkeProduct::from_zeros(vec![c(0.5, 0.0)]).unwrap();
        let s = b.taylor_coeffs_series(2);
        assert!((s.coeff(0) - c(-0.5, 0.0)).norm() < 1e-15);
        assert!((s.coeff(1) - c(0.75, 0.0)).norm() < 1e-15);
        assert!((s.coeff(2) - c(0.375, 0.0)).norm() < 1e-15);

        // Parseval: truncated mass never exceeds 1
        let b = BlaschkeProduct::from_zeros(vec![c(0.3, 0.5), c(-0.6, 0.1), c(0.0, 0.8)]).unwrap();
        assert!(b.taylor_coeffs_series(200).l2_norm_sq() <= 1.0 + 1e-12);
    }

    #[test]
    fn taylor_fft_matches_series() {
        let b = BlaschkeProduct::monomial(5);
        let s = b.taylor_coeffs_fft(8, 1e-12).unwrap();
        for k in 0..=8 {
            let want = if k == 5 { 1.0 } else { 0.0 };
            assert!((s.coeff(k) - c(want, 0.0)).norm() < 1e-12);
        }

        let b = BlaschkeProduct::new(
            Complex64::from_polar(1.0, 0.73),
            vec![c(0.3, 0.5), c(-0.62, 0.11), c(0.0, 0.0), c(0.45, -0.3)],
        )
        .unwrap();
        let fast = b.taylor_coeffs_fft(120, 1e-10).unwrap();
        let slow = b.taylor_coeffs_series(120);
        for k in 0..=120 {
            assert!((fast.coeff(k) - slow.coeff(k)).norm() < 1e-10, "k={k}");
        }
    }

    #[test]
    fn taylor_fft_grid_cap() {
        let b = BlaschkeProduct::from_zeros(vec![c(1.0 - 1e-9, 0.0)]).unwrap();
        assert!(matches!(
            b.taylor_coeffs_fft(10, 1e-12),
            Err(Error::GridCapExceeded { .. })
        ));
    }

    #[test]
    fn text_round_trip() {
        let text = "# a Blaschke product\n1.0 0.0\n0.5 0.0  # real zero\n-0.25 0.125\n";
        let b = BlaschkeProduct::from_text(text).unwrap();
        assert_eq!(b.degree(), 2);
        let again = BlaschkeProduct::from_text(&b.to_text()).unwrap();
        assert_eq!(b, again);
        assert!(BlaschkeProduct::from_text("1.0").is_err());
        assert!(BlaschkeProduct::from_text("1.0 0.0\nbogus 0.1").is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn unimodular_on_circle(
            seeds in proptest::collection::vec((0.0f64..0.95, 0.0f64..std::f64::consts::TAU), 1..20),
            theta in 0.0f64..std::f64::consts::TAU,
        ) {
            let zeros: Vec<Complex64> = seeds
                .iter()
                .map(|&(r, th)| Complex64::from_polar(r, th))
                .collect();
            let b = BlaschkeProduct::from_zeros(zeros).unwrap();
            let v = b.evaluate(Complex64::from_polar(1.0, theta)).unwrap();
            prop_assert!((v.norm() - 1.0).abs() < 1e-10);
        }

        #[test]
        fn q_over_q_tilde_representation(
            seeds in proptest::collection::vec((0.0f64..0.9, 0.0f64..std::f64::consts::TAU), 1..10),
            theta in 0.0f64..std::f64::consts::TAU,
        ) {
            let zeros: Vec<Complex64> = seeds
                .iter()
                .map(|&(r, th)| Complex64::from_polar(r, th))
                .collect();
            let n = zeros.len();
            let b = BlaschkeProduct::from_zeros(zeros.clone()).unwrap();
            let q = Polynomial::monic_from_roots(&zeros);
            let qt = reciprocal_polynomial(&q, n).unwrap();
            let z = Complex64::from_polar(1.0, theta);
            let lhs = b.evaluate(z).unwrap() * qt.eval(z);
            let rhs = b.constant() * q.eval(z);
            prop_assert!((lhs - rhs).norm() < 1e-9);
        }
    }
}
