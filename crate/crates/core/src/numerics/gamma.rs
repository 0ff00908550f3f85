//! Gamma function on the positive half line.

use super::{PrecisionContext, Real};
use crate::error::{Error, Result};
use rug::Float;

/// Gamma(x) for x > 0 at working precision.
///
/// Backed by MPFR's correctly rounded `gamma`; with the context's guard
/// digits the relative error is far below `tol_quadrature`.
pub fn gamma_fn(x: &Real, ctx: &PrecisionContext) -> Result<Real> {
    if !(*x > 0) {
        return Err(Error::Domain(format!(
            "gamma_fn requires x > 0, got {}",
            ctx.format(x)
        )));
    }
    Ok(Float::with_val(ctx.prec(), x.gamma_ref()))
}
