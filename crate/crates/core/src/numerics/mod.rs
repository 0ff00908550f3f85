//! Precision-parameterized arithmetic kernels.
//!
//! Everything else in the crate builds on this module: a working-precision
//! context, the Gamma function, dense polynomial arithmetic and a Sturm
//! bisection eigensolver for symmetric tridiagonal matrices.
//!
//! Floats are MPFR floats (`rug::Float`). All values produced under one
//! [`PrecisionContext`] share the same bit precision, which is the requested
//! decimal digit count plus a fixed guard margin so that `digits`-accurate
//! results survive the cancellation in downstream identities.

mod gamma;
pub mod poly;
mod tridiag;

pub use gamma::gamma_fn;
pub use poly::Poly;
pub use tridiag::tridiag_eigenvalues;

use crate::error::{Error, Result};
use rug::float::Round;
use rug::ops::AssignRound;
use rug::Float;
use std::cmp::Ordering;

/// Arbitrary-precision real number (MPFR float).
pub type Real = rug::Float;

/// Decimal guard digits added on top of the requested precision.
const GUARD_DIGITS: u32 = 30;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Working precision plus the tolerances derived from it.
///
/// Invariants: `digits >= 30` and `0 < tol_quadrature < tol_identity < 1`.
#[derive(Clone, Debug)]
pub struct PrecisionContext {
    digits: u32,
    prec: u32,
    tol_identity: Real,
    tol_quadrature: Real,
    tol_electro: Real,
}

impl PrecisionContext {
    /// Context with default tolerances: `tol_identity = 10^(-digits/2)`,
    /// `tol_quadrature = 10^(-digits+10)`, `tol_electro = 10^(-digits/4)`.
    pub fn new(digits: u32) -> Result<Self> {
        Self::with_tolerances(digits, None, None, None)
    }

    /// Context with tolerance overrides (given as decimal strings so the CLI
    /// can pass exact values).
    pub fn with_tolerances(
        digits: u32,
        tol_identity: Option<&str>,
        tol_quadrature: Option<&str>,
        tol_electro: Option<&str>,
    ) -> Result<Self> {
        if digits < 30 {
            return Err(Error::Precondition(format!(
                "digits must be >= 30, got {digits}"
            )));
        }
        let prec = (((digits + GUARD_DIGITS) as f64) * LOG2_10).ceil() as u32 + 8;
        let pow10 = |e: f64| -> Real {
            let ten = Float::with_val(prec, 10u32);
            ten.pow(Float::with_val(prec, e))
        };
        let parse = |s: &str| -> Result<Real> {
            Float::parse(s)
                .map(|v| Float::with_val(prec, v))
                .map_err(|e| Error::Config(format!("bad tolerance {s:?}: {e}")))
        };
        let tol_identity = match tol_identity {
            Some(s) => parse(s)?,
            None => pow10(-(digits as f64) / 2.0),
        };
        let tol_quadrature = match tol_quadrature {
            Some(s) => parse(s)?,
            None => pow10(-(digits as f64) + 10.0),
        };
        let tol_electro = match tol_electro {
            Some(s) => parse(s)?,
            None => pow10(-(digits as f64) / 4.0),
        };
        if !(tol_quadrature > 0 && tol_quadrature < tol_identity && tol_identity < 1) {
            return Err(Error::Precondition(
                "tolerances must satisfy 0 < tol_quadrature < tol_identity < 1".into(),
            ));
        }
        Ok(Self {
            digits,
            prec,
            tol_identity,
            tol_quadrature,
            tol_electro,
        })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Working precision in bits.
    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn tol_identity(&self) -> &Real {
        &self.tol_identity
    }

    pub fn tol_quadrature(&self) -> &Real {
        &self.tol_quadrature
    }

    pub fn tol_electro(&self) -> &Real {
        &self.tol_electro
    }

    /// Finite-difference step for t-derivative checks: `10^(-digits/4)`.
    pub fn fd_step(&self) -> Real {
        let ten = Float::with_val(self.prec, 10u32);
        ten.pow(Float::with_val(self.prec, -(self.digits as f64) / 4.0))
    }

    /// New real at working precision.
    pub fn real<T>(&self, val: T) -> Real
    where
        Real: AssignRound<T, Round = Round, Ordering = Ordering>,
    {
        Float::with_val(self.prec, val)
    }

    /// Parse a decimal string at working precision.
    pub fn parse(&self, s: &str) -> Result<Real> {
        Float::parse(s)
            .map(|v| Float::with_val(self.prec, v))
            .map_err(|e| Error::Config(format!("cannot parse real {s:?}: {e}")))
    }

    /// 10^e at working precision.
    pub fn pow10(&self, e: i32) -> Real {
        Float::with_val(self.prec, 10u32).pow(e)
    }

    /// Format with `digits` significant decimals, locale-free.
    pub fn format(&self, x: &Real) -> String {
        format_real(x, self.digits)
    }
}

/// Scientific-notation decimal string with `digits` significant digits.
pub fn format_real(x: &Real, digits: u32) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.to_string_radix(10, Some(digits as usize))
}

/// Determinant via LU with partial pivoting, at the operands' precision.
/// Used for the Hankel-matrix routes; matrices stay small (k <= 16).
pub(crate) fn lu_det(mut m: Vec<Vec<Real>>) -> Real {
    let n = m.len();
    if n == 0 {
        // empty determinant is 1 by convention
        return Float::with_val(64, 1u32);
    }
    let prec = m[0][0].prec();
    let mut det = Float::with_val(prec, 1u32);
    for col in 0..n {
        let mut piv = col;
        for row in col + 1..n {
            if m[row][col].clone().abs() > m[piv][col].clone().abs() {
                piv = row;
            }
        }
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        if m[col][col].is_zero() {
            return Float::with_val(prec, 0u32);
        }
        det *= &m[col][col];
        for row in col + 1..n {
            let factor = Float::with_val(prec, &m[row][col] / &m[col][col]);
            for k in col..n {
                let sub = Float::with_val(prec, &factor * &m[col][k]);
                m[row][k] -= sub;
            }
        }
    }
    det
}

use rug::ops::Pow;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn context_invariants() {
        let ctx = PrecisionContext::new(120).unwrap();
        assert_eq!(ctx.digits(), 120);
        assert!(ctx.tol_quadrature() < ctx.tol_identity());
        assert!(*ctx.tol_identity() < 1);
        assert!(*ctx.tol_quadrature() > 0);
        assert!(PrecisionContext::new(29).is_err());
    }

    #[test]
    fn default_tolerance_values() {
        let ctx = PrecisionContext::new(120).unwrap();
        // 10^-60 and 10^-110
        let t1 = ctx.real(ctx.tol_identity() / ctx.pow10(-60));
        let t2 = ctx.real(ctx.tol_quadrature() / ctx.pow10(-110));
        let one = ctx.real(1u32);
        assert!(ctx.real(&t1 - &one).abs() < ctx.pow10(-30));
        assert!(ctx.real(&t2 - &one).abs() < ctx.pow10(-30));
    }

    #[test]
    fn formatting_is_stable() {
        let ctx = PrecisionContext::new(30).unwrap();
        let x = ctx.parse("0.5").unwrap();
        let s1 = ctx.format(&x);
        let s2 = ctx.format(&x);
        assert_eq!(s1, s2);
        assert!(s1.starts_with("5.0"));
        assert_eq!(ctx.format(&ctx.real(0u32)), "0");
    }

    #[test]
    fn lu_det_small_cases() {
        let ctx = PrecisionContext::new(40).unwrap();
        let m = vec![
            vec![ctx.real(2u32), ctx.real(1u32)],
            vec![ctx.real(1u32), ctx.real(2u32)],
        ];
        let d = lu_det(m);
        assert!(ctx.real(&d - 3u32).abs() < ctx.pow10(-35));
        // empty determinant convention
        let e = lu_det(Vec::new());
        assert!(e == 1);
    }
}
