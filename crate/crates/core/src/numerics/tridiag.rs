//! Sturm bisection eigensolver for symmetric tridiagonal matrices.
//!
//! The LDLT pivot recurrence q_i = (d_i - lambda) - e_{i-1}^2 / q_{i-1}
//! counts eigenvalues below lambda; each eigenvalue is then isolated by
//! bisection. Robust at high precision and trivially parallel per index,
//! which is why it is preferred over QR-style iterations here.

use super::{PrecisionContext, Real};
use crate::error::{Error, Result};
use rug::Float;

/// Number of eigenvalues strictly less than `lambda`.
fn sturm_count(diag: &[Real], offdiag_sq: &[Real], lambda: &Real, guard: &Real) -> usize {
    let prec = lambda.prec();
    let mut count = 0;
    let mut q = Float::with_val(prec, &diag[0] - lambda);
    if q < 0 {
        count += 1;
    }
    for i in 1..diag.len() {
        if q.is_zero() {
            q = guard.clone();
        }
        let ratio = Float::with_val(prec, &offdiag_sq[i - 1] / &q);
        q = Float::with_val(prec, &diag[i] - lambda) - ratio;
        if q < 0 {
            count += 1;
        }
    }
    count
}

/// All eigenvalues, sorted ascending, each accurate to `tol_quadrature`.
///
/// Preconditions: `offdiag.len() == diag.len() - 1` and every off-diagonal
/// entry strictly positive.
pub fn tridiag_eigenvalues(
    diag: &[Real],
    offdiag: &[Real],
    ctx: &PrecisionContext,
) -> Result<Vec<Real>> {
    let n = diag.len();
    if n == 0 {
        return Err(Error::Precondition("empty diagonal".into()));
    }
    if offdiag.len() + 1 != n {
        return Err(Error::Precondition(format!(
            "offdiag length {} does not match diagonal length {}",
            offdiag.len(),
            n
        )));
    }
    for (i, e) in offdiag.iter().enumerate() {
        if !(*e > 0) {
            return Err(Error::Precondition(format!(
                "off-diagonal entry {i} must be positive, got {}",
                ctx.format(e)
            )));
        }
    }
    if n == 1 {
        return Ok(vec![diag[0].clone()]);
    }

    let prec = ctx.prec();
    let offdiag_sq: Vec<Real> = offdiag.iter().map(|e| e.clone().square()).collect();
    // subnormal-free pivot guard, far below anything tol-relevant
    let guard = Float::with_val(prec, Float::i_exp(1, -(2 * prec as i32)));

    // Gershgorin bounds
    let mut lo = diag[0].clone();
    let mut hi = diag[0].clone();
    for i in 0..n {
        let mut r = Float::with_val(prec, 0u32);
        if i > 0 {
            r += &offdiag[i - 1];
        }
        if i < n - 1 {
            r += &offdiag[i];
        }
        lo = lo.min(&Float::with_val(prec, &diag[i] - &r));
        hi = hi.max(&Float::with_val(prec, &diag[i] + &r));
    }
    lo -= 1;
    hi += 1;

    let max_iter = 2 * prec as usize + 64;
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut a = lo.clone();
        let mut b = hi.clone();
        for _ in 0..max_iter {
            let mid = Float::with_val(prec, &a + &b) / 2u32;
            let width = Float::with_val(prec, &b - &a);
            let scale = Float::with_val(prec, mid.abs_ref()).max(&Float::with_val(prec, 1u32));
            if width < Float::with_val(prec, ctx.tol_quadrature() * &scale) {
                break;
            }
            if sturm_count(diag, &offdiag_sq, &mid, &guard) <= k {
                a = mid;
            } else {
                b = mid;
            }
        }
        out.push(Float::with_val(prec, &a + &b) / 2u32);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(40).unwrap()
    }

    #[test]
    fn single_entry() {
        let ctx = ctx();
        let ev = tridiag_eigenvalues(&[ctx.real(0u32)], &[], &ctx).unwrap();
        assert_eq!(ev.len(), 1);
        assert!(ev[0].is_zero());
    }

    #[test]
    fn two_by_two_symmetric() {
        // diag [0,0], offdiag [b] -> eigenvalues -b, +b
        let ctx = ctx();
        let b = ctx.parse("0.75").unwrap();
        let ev =
            tridiag_eigenvalues(&[ctx.real(0u32), ctx.real(0u32)], &[b.clone()], &ctx).unwrap();
        assert!(ctx.real(&ev[0] + &b).abs() < *ctx.tol_quadrature());
        assert!(ctx.real(&ev[1] - &b).abs() < *ctx.tol_quadrature());
    }

    #[test]
    fn three_by_three_zero_diag() {
        // eigenvalues of the 3x3 zero-diagonal matrix with offdiag sqrt(g1), sqrt(g2):
        // characteristic cubic gives {-sqrt(g1+g2), 0, sqrt(g1+g2)}
        let ctx = ctx();
        let g1 = ctx.parse("0.505").unwrap();
        let g2 = ctx.parse("0.318").unwrap();
        let d = vec![ctx.real(0u32); 3];
        let e = vec![g1.clone().sqrt(), g2.clone().sqrt()];
        let ev = tridiag_eigenvalues(&d, &e, &ctx).unwrap();
        let r = ctx.real(&g1 + &g2).sqrt();
        assert!(ctx.real(&ev[0] + &r).abs() < *ctx.tol_quadrature());
        assert!(ev[1].clone().abs() < *ctx.tol_quadrature());
        assert!(ctx.real(&ev[2] - &r).abs() < *ctx.tol_quadrature());
    }

    #[test]
    fn zero_diag_spectrum_symmetric() {
        // spectrum of a zero-diagonal tridiagonal matrix is symmetric about 0
        let ctx = ctx();
        let n = 9;
        let d = vec![ctx.real(0u32); n];
        let e: Vec<Real> = (1..n).map(|i| ctx.real(i as u32).sqrt() / 2u32).collect();
        let ev = tridiag_eigenvalues(&d, &e, &ctx).unwrap();
        for j in 0..n {
            let sum = ctx.real(&ev[j] + &ev[n - 1 - j]);
            assert!(
                sum.abs() < ctx.real(ctx.tol_quadrature() * 10u32),
                "pair {j}"
            );
        }
    }

    #[test]
    fn rejects_bad_preconditions() {
        let ctx = ctx();
        let d = vec![ctx.real(0u32); 3];
        assert!(tridiag_eigenvalues(&d, &[ctx.real(1u32)], &ctx).is_err());
        assert!(
            tridiag_eigenvalues(&d, &[ctx.real(1u32), ctx.real(0u32)], &ctx).is_err(),
            "nonpositive off-diagonal must be rejected"
        );
    }
}
