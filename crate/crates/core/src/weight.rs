//! The perturbed sextic Freud weight and its companions.
//!
//! `W_s(x; t) = |x|^(2s+1) exp(-[c x^6 + t (x^4 - x^2)])` on the real line,
//! with potential `v = -ln W`. Substituting `xi = x^2` symmetrizes the weight
//! into two Airy-type weights `w1, w2` on the positive half line.

use crate::error::{Error, Result};
use crate::numerics::{PrecisionContext, Real};
use rug::Float;

/// Parameter triple (c, t, sigma) plus the working precision.
///
/// `c > 0` and `sigma > -1/2` (integrability at the origin) are enforced.
/// `sigma <= 0` is admitted with a warning flag: every identity in this crate
/// remains valid on the wider range even though sigma > 0 is the usual one.
#[derive(Clone, Debug)]
pub struct WeightParams {
    c: Real,
    t: Real,
    sigma: Real,
    ctx: PrecisionContext,
    sigma_warning: bool,
}

impl WeightParams {
    pub fn new(c: Real, t: Real, sigma: Real, ctx: PrecisionContext) -> Result<Self> {
        if !(c > 0) {
            return Err(Error::Precondition(format!(
                "c must be positive, got {}",
                ctx.format(&c)
            )));
        }
        let minus_half = ctx.real(-1i32) / ctx.real(2u32);
        if !(sigma > minus_half) {
            return Err(Error::Precondition(format!(
                "sigma must exceed -1/2 for integrability, got {}",
                ctx.format(&sigma)
            )));
        }
        let sigma_warning = !(sigma > 0);
        Ok(Self {
            c,
            t,
            sigma,
            ctx,
            sigma_warning,
        })
    }

    /// Parameters from f64 literals (exact for the usual grid values).
    pub fn from_f64(c: f64, t: f64, sigma: f64, ctx: PrecisionContext) -> Result<Self> {
        let (c, t, sigma) = (ctx.real(c), ctx.real(t), ctx.real(sigma));
        Self::new(c, t, sigma, ctx)
    }

    /// Same parameters at a different deformation time (used by t-derivative
    /// finite differences).
    pub fn with_t(&self, t: Real) -> Self {
        Self {
            c: self.c.clone(),
            t,
            sigma: self.sigma.clone(),
            ctx: self.ctx.clone(),
            sigma_warning: self.sigma_warning,
        }
    }

    /// Same parameters under a higher-precision context (auto-raise retries).
    pub fn with_digits(&self, digits: u32) -> Result<Self> {
        let ctx = PrecisionContext::new(digits)?;
        let c = ctx.real(&self.c);
        let t = ctx.real(&self.t);
        let sigma = ctx.real(&self.sigma);
        Self::new(c, t, sigma, ctx)
    }

    pub fn c(&self) -> &Real {
        &self.c
    }

    pub fn t(&self) -> &Real {
        &self.t
    }

    pub fn sigma(&self) -> &Real {
        &self.sigma
    }

    pub fn ctx(&self) -> &PrecisionContext {
        &self.ctx
    }

    /// True when sigma <= 0 (outside the usual sigma > 0 range).
    pub fn sigma_warning(&self) -> bool {
        self.sigma_warning
    }

    /// 2*sigma + 1, the exponent of |x| and the strength of the 1/x terms.
    pub fn alpha(&self) -> Real {
        self.ctx.real(2u32) * &self.sigma + 1u32
    }
}

/// Which of the two symmetrized Airy-type weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AiryWeight {
    W1,
    W2,
}

/// W_s(x; t) = |x|^(2s+1) exp(-[c x^6 + t (x^4 - x^2)]); zero at x = 0.
pub fn weight_eval(p: &WeightParams, x: &Real) -> Real {
    let prec = p.ctx.prec();
    if x.is_zero() {
        return Float::with_val(prec, 0u32);
    }
    let ax = Float::with_val(prec, x.abs_ref());
    let x2 = Float::with_val(prec, x.square_ref());
    let x4 = x2.clone().square();
    let x6 = x4.clone() * &x2;
    // exp(alpha ln|x| - c x^6 - t (x^4 - x^2)) in one exponential
    let expo = p.alpha() * ax.ln()
        - Float::with_val(prec, &p.c * &x6)
        - Float::with_val(prec, &x4 - &x2) * &p.t;
    expo.exp()
}

/// Potential v(x) = -(2s+1) ln|x| + c x^6 + t (x^4 - x^2), x != 0.
pub fn potential_v(p: &WeightParams, x: &Real) -> Result<Real> {
    if x.is_zero() {
        return Err(Error::Singularity("potential_v at x = 0".into()));
    }
    let prec = p.ctx.prec();
    let ax = Float::with_val(prec, x.abs_ref());
    let x2 = Float::with_val(prec, x.square_ref());
    let x4 = x2.clone().square();
    let x6 = x4.clone() * &x2;
    Ok(-(p.alpha() * ax.ln())
        + Float::with_val(prec, &p.c * &x6)
        + Float::with_val(prec, &x4 - &x2) * &p.t)
}

/// v'(x) = -(2s+1)/x + 6c x^5 + t (4x^3 - 2x), x != 0.
pub fn potential_v_prime(p: &WeightParams, x: &Real) -> Result<Real> {
    if x.is_zero() {
        return Err(Error::Singularity("potential_v_prime at x = 0".into()));
    }
    let prec = p.ctx.prec();
    let x2 = Float::with_val(prec, x.square_ref());
    let x3 = x2.clone() * x;
    let x5 = x3.clone() * &x2;
    let singular = -(p.alpha() / x.clone());
    let sextic = Float::with_val(prec, 6u32) * &p.c * &x5;
    let quartic = (Float::with_val(prec, 4u32) * &x3 - Float::with_val(prec, 2u32) * x) * &p.t;
    Ok(singular + sextic + quartic)
}

/// Airy-type weights on xi > 0:
/// w1 = xi^s exp(-[c xi^3 + t (xi^2 - xi)]), w2 = xi * w1.
pub fn airy_weight(p: &WeightParams, which: AiryWeight, xi: &Real) -> Result<Real> {
    if !(*xi > 0) {
        return Err(Error::Domain(format!(
            "airy_weight requires xi > 0, got {}",
            p.ctx.format(xi)
        )));
    }
    let prec = p.ctx.prec();
    let power = match which {
        AiryWeight::W1 => p.sigma.clone(),
        AiryWeight::W2 => p.ctx.real(&p.sigma + 1u32),
    };
    let xi2 = Float::with_val(prec, xi.square_ref());
    let xi3 = xi2.clone() * xi;
    let expo = power * Float::with_val(prec, xi.ln_ref())
        - Float::with_val(prec, &p.c * &xi3)
        - Float::with_val(prec, &xi2 - xi) * &p.t;
    Ok(expo.exp())
}
