//! High-precision computations for the perturbed sextic Freud weight
//!
//! ```text
//! W_s(x; t) = |x|^(2s+1) exp(-[c x^6 + t (x^4 - x^2)]),   c > 0, s > -1/2
//! ```
//!
//! on the real line: moments, recurrence coefficients (by Stieltjes, Hankel
//! and string-recursion routes), the monic orthogonal polynomials S_n,
//! ladder/ODE coefficients, quasi-orthogonality expansion, zeros, and a
//! numerical certification of every identity tying them together — the
//! string equation, the Toda-type flow in t, the ladder compatibility
//! conditions, the second-order ODE and the electrostatic equilibrium of
//! the zeros.
//!
//! Everything runs at a configurable decimal precision (default tolerances
//! derive from it) on MPFR arithmetic; all operations are pure functions of
//! their inputs and every table is immutable once built.

// domain guards use `!(x > 0)` so that NaN is rejected alongside the
// out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod ladder;
pub mod moments;
pub mod numerics;
pub mod polynomials;
pub mod recurrence;
pub mod report;
pub mod weight;
pub mod zeros;

pub use error::{Error, Result};
pub use numerics::{gamma_fn, tridiag_eigenvalues, Poly, PrecisionContext, Real};
pub use report::{ParamsEcho, ReportItem, VerificationReport};
pub use weight::{
    airy_weight, potential_v, potential_v_prime, weight_eval, AiryWeight, WeightParams,
};

pub use moments::{
    airy_moment, airy_moment_quadrature, check_derivative_identity, check_shift_identity,
    moment_quadrature, moment_series, MomentMethod, MomentTable,
};
pub use recurrence::{
    check_second_order_dde, check_second_order_dde_sweep, check_string_equation, check_toda,
    check_toda_sweep, gamma_hankel, gamma_initial, gamma_stieltjes, gamma_string_recursion,
    GammaMethod, RecurrenceTable,
};

pub use ladder::{
    check_a_from_b, check_lowering, check_m1, check_m2prime, check_ode, check_quasi, ladder_coeffs,
    ode_coeffs, quasi_coeffs, LadderCoeffs, OdeCoeffsAt, QuasiCoeffs,
};
pub use polynomials::{
    build_sn, check_hankel_product, check_wqr_form, chi, norm_gamma, psi_coeff, symmetrize, Parity,
    PolynomialRep, SymmetrizedPair,
};
pub use zeros::{
    check_interlacing, compute_zeros, electro_residuals, electrostatic_residual, interlacing_item,
    zero_property_items, ZeroSet,
};
