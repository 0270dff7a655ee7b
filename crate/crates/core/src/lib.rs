//! Rational approximation of finite Blaschke products in the Hardy space of
//! the unit disk, with certified lower bounds on the achievable error.
//!
//! The crate has four layers:
//!
//! * [`laurent`] — Fourier windows on the circle: DFT analysis/synthesis,
//!   Riesz projections, Parseval norms, winding numbers.
//! * [`blaschke`] — finite Blaschke products, the tilde/sharp involutions,
//!   and Taylor coefficients by two independent routes.
//! * [`bounds`] — lower bounds for degree-`n` approximation of a degree-`N`
//!   product (the delay bound `sqrt(1 - n/N)` and the general
//!   zero-modulus-aware bound with its `α`/`β` parameter optimization),
//!   plus the coefficient decay estimates behind them.
//! * [`approx`] — the solver: minimization of the concentrated criterion
//!   `||P_-(f^♯ b_n)||_2` over pole configurations, numerator recovery, and
//!   direct error cross-checks.
//!
//! ```
//! use h2rab::{solve_rab, BlaschkeProduct, SolverConfig};
//!
//! let f = BlaschkeProduct::monomial(2); // f = z^2
//! let res = solve_rab(&f, 1, &SolverConfig::default()).unwrap();
//! assert!((res.error - 3f64.sqrt() / 2.0).abs() < 1e-6);
//! ```

pub mod approx;
pub mod blaschke;
pub mod bounds;
pub mod error;
pub mod laurent;
pub mod poly;

pub use approx::{
    approximant_error_direct, criterion, criterion_forms, optimal_numerator, solve_rab,
    solve_sweep, PoleConfig, SolveResult, SolverConfig,
};
pub use blaschke::{reciprocal_polynomial, sharp, BlaschkeProduct};
pub use bounds::{
    alpha_max, beta_star, coeff_bound_blaschke, coeff_tail_bound, delay_bound, general_bound,
    k_beta, optimize_alpha_beta, polylog, product_coeff_bound, s_star, BoundParams, BoundReport,
};
pub use error::{Error, Result};
pub use laurent::{
    adaptive_grid_size, dft_coefficients, synthesize, unit_points, winding_rational,
    BoundaryGrid, LaurentSeries, DEFAULT_GRID_CAP,
};
pub use poly::{Polynomial, RationalFunction};
