//! Moments of the perturbed sextic Freud weight, by two independent routes.
//!
//! Even moments eta_{2k}(t; s) = 2 int_0^inf x^{2k} W_s(x; t) dx are computed
//! either from the exact Gamma series in t (expand exp(-t(x^4-x^2)) and
//! integrate term by term against exp(-c x^6), using
//! int_0^inf x^a e^{-c x^6} dx = (1/6) c^{-(a+1)/6} Gamma((a+1)/6)), or by
//! adaptive tanh-sinh quadrature with a certified truncation point. Odd
//! moments vanish by parity and are never computed.
//!
//! The series is the reference oracle; the quadrature keeps it honest.

mod quadrature;

pub(crate) use quadrature::TanhSinh;

use crate::error::{Error, Result};
use crate::numerics::{gamma_fn, Poly, Real};
use crate::report::{ReportItem, VerificationReport};
use crate::weight::{AiryWeight, WeightParams};
use quadrature::truncation_point;
use rug::{Float, Integer};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MomentMethod {
    Series,
    Quadrature,
}

/// Table of even moments eta_{2k}, k = 0..=k_max, with method and an
/// estimate of the worst relative error across entries.
#[derive(Clone, Debug)]
pub struct MomentTable {
    params: WeightParams,
    values: Vec<Real>,
    method: MomentMethod,
    est_error: Real,
}

impl MomentTable {
    pub fn build(params: &WeightParams, k_max: usize, method: MomentMethod) -> Result<Self> {
        let ctx = params.ctx();
        let mut values = Vec::with_capacity(k_max + 1);
        let mut est_error = ctx.real(0u32);
        match method {
            MomentMethod::Series => {
                for k in 0..=k_max {
                    let (v, rel) = eta_series(params, k, 8)?;
                    if rel > est_error {
                        est_error = rel;
                    }
                    values.push(v);
                }
            }
            MomentMethod::Quadrature => {
                let mut engine = TanhSinh::new(ctx.prec(), ctx.digits());
                for k in 0..=k_max {
                    let (v, rel) = eta_quadrature_with(params, k, &mut engine)?;
                    if rel > est_error {
                        est_error = rel;
                    }
                    values.push(v);
                }
            }
        }
        for (k, v) in values.iter().enumerate() {
            if !v.is_finite() || !(*v > 0) {
                return Err(Error::Precision {
                    n: k,
                    detail: format!("moment eta_{} not positive/finite", 2 * k),
                    required_digits: ctx.digits() + 40,
                });
            }
        }
        Ok(MomentTable {
            params: params.clone(),
            values,
            method,
            est_error,
        })
    }

    pub fn params(&self) -> &WeightParams {
        &self.params
    }

    pub fn k_max(&self) -> usize {
        self.values.len() - 1
    }

    /// eta_{2k}.
    pub fn eta(&self, k: usize) -> &Real {
        &self.values[k]
    }

    pub fn method(&self) -> MomentMethod {
        self.method
    }

    pub fn est_error(&self) -> &Real {
        &self.est_error
    }

    /// <p, q> under the weight, via the exact coefficient expansion of p*q.
    /// Odd powers integrate to zero by parity and are skipped.
    pub fn inner_product(&self, p: &Poly, q: &Poly) -> Result<Real> {
        self.weighted_sum(&p.mul(q)).map(|(v, _)| v)
    }

    /// <p, p> plus a cancellation diagnostic (decimal digits lost).
    pub fn norm_sq_with_diag(&self, p: &Poly) -> Result<(Real, f64)> {
        self.weighted_sum(&p.mul(p))
    }

    fn weighted_sum(&self, prod: &Poly) -> Result<(Real, f64)> {
        let ctx = self.params.ctx();
        let mut acc = ctx.real(0u32);
        let mut max_term = ctx.real(0u32);
        for (d, coeff) in prod.coeffs().iter().enumerate() {
            if coeff.is_zero() || d % 2 == 1 {
                continue;
            }
            let k = d / 2;
            if k > self.k_max() {
                return Err(Error::Precondition(format!(
                    "moment table holds k <= {}, need k = {k}",
                    self.k_max()
                )));
            }
            let term = ctx.real(coeff * &self.values[k]);
            let mag = term.clone().abs();
            if mag > max_term {
                max_term = mag;
            }
            acc += term;
        }
        let lost = if acc.is_zero() || max_term.is_zero() {
            0.0
        } else {
            let ratio = ctx.real(&max_term / &acc).abs();
            ratio.ln().to_f64() / std::f64::consts::LN_10
        };
        Ok((acc, lost.max(0.0)))
    }
}

/// eta_{2k} by the Gamma series in t, truncated with a certified tail bound.
/// At least `terms` series terms are taken; more are added until the bound
/// is far below `tol_quadrature`.
pub fn moment_series(params: &WeightParams, k: usize, terms: usize) -> Result<Real> {
    eta_series(params, k, terms).map(|(v, _)| v)
}

/// eta_{2k} by tanh-sinh quadrature over (0, X] with the tail dropped at a
/// point where it is provably below tolerance.
pub fn moment_quadrature(params: &WeightParams, k: usize) -> Result<Real> {
    let mut engine = TanhSinh::new(params.ctx().prec(), params.ctx().digits());
    eta_quadrature_with(params, k, &mut engine).map(|(v, _)| v)
}

fn eta_series(params: &WeightParams, k: usize, min_terms: usize) -> Result<(Real, Real)> {
    let ctx = params.ctx();
    let prec = ctx.prec();
    let t = params.t();

    // g(i) = (1/3) c^(-kappa/3) Gamma(kappa/3), kappa = sigma + k + 1 + i.
    // ln g is convex in kappa, so maxima over index ranges sit at endpoints.
    let base = ctx.real(params.sigma() + (k as u32 + 1));
    let third = ctx.real(1u32) / ctx.real(3u32);
    let ln_c = Float::with_val(prec, params.c().ln_ref());
    let mut cache: Vec<Real> = Vec::new();
    let ensure = |cache: &mut Vec<Real>, upto: usize| -> Result<()> {
        while cache.len() <= upto {
            let i = cache.len();
            let kappa3 = ctx.real(&base + i as u32) * &third;
            let g = gamma_fn(&kappa3, ctx)?;
            cache.push(g * (-(kappa3 * &ln_c)).exp() / 3u32);
        }
        Ok(())
    };

    let mut total = ctx.real(0u32);
    let mut coef = ctx.real(1u32); // (-t)^m / m!
    let mut pow2 = ctx.real(1u32); // 2^m
    let mut binrow: Vec<Integer> = vec![Integer::from(1)];
    let threshold_rel = ctx.pow10(-(ctx.digits() as i32 + 25));
    let floor = ctx.pow10(-(ctx.digits() as i32));
    let mut streak = 0u32;
    let mut m = 0usize;
    loop {
        ensure(&mut cache, 2 * m + 2)?;
        let mut tm = ctx.real(0u32);
        for (j, b) in binrow.iter().enumerate() {
            let term = ctx.real(b) * &cache[2 * m - j];
            if j % 2 == 0 {
                tm += term;
            } else {
                tm -= term;
            }
        }
        total += ctx.real(&coef * &tm);

        // |coef * T_m| <= |coef| 2^m max(g(m), g(2m)); same shape for m+1
        let coef_abs = coef.clone().abs();
        let end_max = cache[m].clone().max(&cache[2 * m]);
        let bound = ctx.real(&coef_abs * &pow2) * end_max;
        let coef_next = coef_abs * Float::with_val(prec, t.clone().abs() / (m as u32 + 1));
        let end_max_next = cache[m + 1].clone().max(&cache[2 * m + 2]);
        let bound_next = coef_next * ctx.real(&pow2 * 2u32) * end_max_next;

        let scale = total.clone().abs().max(&floor);
        let threshold = ctx.real(&threshold_rel * &scale);
        // The bound ratio rho_m = 2|t| c^(+-2/3) Gamma-growth / (m+1) decays
        // monotonically in m, so once rho < 1 the geometric majorant
        // bound_next / (1 - rho) dominates the whole tail.
        let tail_est = if bound_next.is_zero() {
            ctx.real(0u32)
        } else {
            let rho = ctx.real(&bound_next / &bound);
            if rho >= 0.95f64 {
                ctx.real(&threshold * 2u32) // not yet in the contracting regime
            } else {
                let denom = ctx.real(1u32) - &rho;
                ctx.real(&bound_next / &denom)
            }
        };
        if tail_est < threshold {
            streak += 1;
        } else {
            streak = 0;
        }
        if m + 1 >= min_terms && streak >= 2 {
            let rel = ctx.real(&tail_est / &scale);
            return Ok((total, rel));
        }

        coef *= Float::with_val(prec, -t.clone() / (m as u32 + 1));
        pow2 *= 2u32;
        binrow.push(Integer::from(1));
        for j in (1..binrow.len() - 1).rev() {
            let prev = binrow[j - 1].clone();
            binrow[j] += prev;
        }
        m += 1;
        if m > 4000 {
            return Err(Error::Accuracy {
                achieved: "series tail not certified after 4000 terms".into(),
                requested: ctx.format(ctx.tol_quadrature()),
            });
        }
    }
}

fn eta_quadrature_with(
    params: &WeightParams,
    k: usize,
    engine: &mut TanhSinh,
) -> Result<(Real, Real)> {
    let ctx = params.ctx();
    let prec = ctx.prec();
    let a_pow = ctx.real(2u32 * k as u32) + params.alpha();
    let x_cut = truncation_point(
        params.c().to_f64(),
        params.t().to_f64().abs(),
        a_pow.to_f64(),
        ctx.digits(),
        6,
        4,
    );
    let c = params.c().clone();
    let t = params.t().clone();
    let f = |x: &Real| -> Real {
        let x2 = Float::with_val(prec, x.square_ref());
        let x4 = x2.clone().square();
        let x6 = x4.clone() * &x2;
        let expo = a_pow.clone() * Float::with_val(prec, x.ln_ref())
            - Float::with_val(prec, &c * &x6)
            - Float::with_val(prec, &x4 - &x2) * &t;
        expo.exp()
    };
    let (total, err) = panel_quadrature(params, f, x_cut, engine)?;
    // even weight: 2 * int_0^inf
    let total = ctx.real(&total * 2u32);
    let err = ctx.real(&err * 2u32);
    let rel = ctx.real(&err / &total).abs();
    if rel > *ctx.tol_quadrature() {
        return Err(Error::Accuracy {
            achieved: ctx.format(&rel),
            requested: ctx.format(ctx.tol_quadrature()),
        });
    }
    Ok((total, rel))
}

/// Integrate f over (0, x_cut] in unit panels (plus a final partial panel).
fn panel_quadrature<F>(
    params: &WeightParams,
    f: F,
    x_cut: f64,
    engine: &mut TanhSinh,
) -> Result<(Real, Real)>
where
    F: Fn(&Real) -> Real,
{
    let ctx = params.ctx();
    let mut boundaries: Vec<Real> = Vec::new();
    let mut b = 0.0f64;
    while b < x_cut {
        boundaries.push(ctx.real(b));
        b += 1.0;
    }
    boundaries.push(ctx.real(x_cut));

    let tol = ctx.real(ctx.tol_quadrature() / 10u32);
    let mut total = ctx.real(0u32);
    let mut err_sum = ctx.real(0u32);
    for w in boundaries.windows(2) {
        let floor = ctx.real(&tol * total.clone().abs());
        let (v, e, ok) = engine.integrate(&f, &w[0], &w[1], &tol, &floor, 11);
        if !ok {
            return Err(Error::Accuracy {
                achieved: ctx.format(
                    &ctx.real(&e / v.clone().abs().max(&ctx.pow10(-(ctx.digits() as i32)))),
                ),
                requested: ctx.format(ctx.tol_quadrature()),
            });
        }
        total += v;
        err_sum += e;
    }
    Ok((total, err_sum))
}

/// eta_{2k}(t; s) = eta_0(t; s + k): both sides through the series.
pub fn check_shift_identity(params: &WeightParams, k: usize) -> Result<VerificationReport> {
    let ctx = params.ctx();
    let lhs = moment_series(params, k, 8)?;
    let shifted = WeightParams::new(
        params.c().clone(),
        params.t().clone(),
        ctx.real(params.sigma() + k as u32),
        ctx.clone(),
    )?;
    let rhs = moment_series(&shifted, 0, 8)?;
    let rel = ctx.real(&lhs - &rhs).abs() / rhs.clone().abs();
    let items = vec![ReportItem::with_note(
        format!("eta_{}(t;sigma) vs eta_0(t;sigma+{k})", 2 * k),
        rel,
        format!("lhs = {}", ctx.format(&lhs)),
    )];
    Ok(VerificationReport::from_items(
        "moment_shift_identity",
        params,
        ctx.tol_identity().clone(),
        items,
        true,
        vec![],
    ))
}

/// d^n/dt^n eta_0 = sum_k (-1)^(n+k) C(n,k) eta_{4n-2k}, checked by a central
/// finite difference of order n in t against the series evaluation.
pub fn check_derivative_identity(
    params: &WeightParams,
    n: u32,
    h: &Real,
) -> Result<VerificationReport> {
    if !(1..=3).contains(&n) {
        return Err(Error::Precondition(format!(
            "derivative identity implemented for n in 1..=3, got {n}"
        )));
    }
    let ctx = params.ctx();
    let eta0_at = |dt: i32| -> Result<Real> {
        let t = ctx.real(params.t() + ctx.real(h * dt));
        moment_series(&params.with_t(t), 0, 8)
    };

    let fd = match n {
        1 => {
            let (p1, m1) = (eta0_at(1)?, eta0_at(-1)?);
            ctx.real(&p1 - &m1) / (ctx.real(2u32) * h)
        }
        2 => {
            let (p1, z0, m1) = (eta0_at(1)?, eta0_at(0)?, eta0_at(-1)?);
            (ctx.real(&p1 + &m1) - ctx.real(2u32) * &z0) / ctx.real(h * h)
        }
        _ => {
            let (p2, p1, m1, m2) = (eta0_at(2)?, eta0_at(1)?, eta0_at(-1)?, eta0_at(-2)?);
            let num = ctx.real(&p2 - &m2) - ctx.real(2u32) * ctx.real(&p1 - &m1);
            num / (ctx.real(2u32) * ctx.real(h * h) * h)
        }
    };

    // rhs: sum_{k=0}^{n} (-1)^(n+k) C(n,k) eta_{4n-2k}
    let table = MomentTable::build(params, 2 * n as usize, MomentMethod::Series)?;
    let mut rhs = ctx.real(0u32);
    for k in 0..=n {
        let binom = Integer::from(n).binomial(k);
        let term = ctx.real(&binom) * table.eta((2 * n - k) as usize);
        if (n + k) % 2 == 0 {
            rhs += term;
        } else {
            rhs -= term;
        }
    }

    let scale = rhs.clone().abs().max(&ctx.real(1u32));
    let resid = ctx.real(&fd - &rhs).abs() / scale;
    let tol = ctx.real(h * h).max(ctx.tol_identity());
    let items = vec![ReportItem::with_note(
        format!("d^{n}/dt^{n} eta_0 vs moment sum"),
        resid,
        format!("fd = {}, sum = {}", ctx.format(&fd), ctx.format(&rhs)),
    )];
    Ok(VerificationReport::from_items(
        "moment_derivative_identity",
        params,
        tol,
        items,
        true,
        vec![],
    ))
}

/// Moments of the Airy-type weights w1/w2 on the half line, in closed Gamma
/// series form. By the substitution xi = x^2 these coincide with eta_{2(i+j)}
/// (w1) and eta_{2(i+j)+2} (w2).
pub fn airy_moment(params: &WeightParams, i: usize, j: usize, which: AiryWeight) -> Result<Real> {
    let k = match which {
        AiryWeight::W1 => i + j,
        AiryWeight::W2 => i + j + 1,
    };
    moment_series(params, k, 8)
}

/// Same moment by direct tanh-sinh quadrature in the xi variable; the
/// independent oracle for `airy_moment`.
pub fn airy_moment_quadrature(
    params: &WeightParams,
    i: usize,
    j: usize,
    which: AiryWeight,
) -> Result<Real> {
    let ctx = params.ctx();
    let prec = ctx.prec();
    let s = match which {
        AiryWeight::W1 => i + j,
        AiryWeight::W2 => i + j + 1,
    };
    // integrand xi^(sigma + s) exp(-c xi^3 - t (xi^2 - xi))
    let a_pow = ctx.real(params.sigma() + s as u32);
    let x_cut = truncation_point(
        params.c().to_f64(),
        params.t().to_f64().abs(),
        a_pow.to_f64(),
        ctx.digits(),
        3,
        2,
    );
    let c = params.c().clone();
    let t = params.t().clone();
    let f = |xi: &Real| -> Real {
        let xi2 = Float::with_val(prec, xi.square_ref());
        let xi3 = xi2.clone() * xi;
        let expo = a_pow.clone() * Float::with_val(prec, xi.ln_ref())
            - Float::with_val(prec, &c * &xi3)
            - Float::with_val(prec, &xi2 - xi) * &t;
        expo.exp()
    };
    let mut engine = TanhSinh::new(prec, ctx.digits());
    let (total, err) = panel_quadrature(params, f, x_cut, &mut engine)?;
    let rel = ctx.real(&err / &total).abs();
    if rel > *ctx.tol_quadrature() {
        return Err(Error::Accuracy {
            achieved: ctx.format(&rel),
            requested: ctx.format(ctx.tol_quadrature()),
        });
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::PrecisionContext;

    // (1/3) Gamma(1/3) and (1/3) Gamma(2/3), mpmath at 45 digits
    const ETA0_REF: &str = "0.8929795115692492112185643136582258813762";
    const ETA2_REF: &str = "0.4513726464754668056484293427181712618398";

    fn params(c: f64, t: f64, sigma: f64, digits: u32) -> WeightParams {
        let ctx = PrecisionContext::new(digits).unwrap();
        WeightParams::from_f64(c, t, sigma, ctx).unwrap()
    }

    #[test]
    fn series_matches_gamma_closed_form_at_t0() {
        let p = params(1.0, 0.0, 0.0, 42);
        let ctx = p.ctx();
        let e0 = moment_series(&p, 0, 8).unwrap();
        let e2 = moment_series(&p, 1, 8).unwrap();
        let r0 = ctx.parse(ETA0_REF).unwrap();
        let r2 = ctx.parse(ETA2_REF).unwrap();
        assert!(ctx.real(&e0 - &r0).abs() < ctx.pow10(-39));
        assert!(ctx.real(&e2 - &r2).abs() < ctx.pow10(-39));
    }

    #[test]
    fn series_vs_quadrature_cross_check() {
        for (c, t, s) in [(1.0, 0.0, 0.0), (1.0, 1.0, 0.5), (0.5, -1.0, 0.25)] {
            let p = params(c, t, s, 40);
            let ctx = p.ctx();
            for k in [0usize, 2, 5] {
                let a = moment_series(&p, k, 8).unwrap();
                let b = moment_quadrature(&p, k).unwrap();
                let rel = ctx.real(&a - &b).abs() / a.clone();
                assert!(
                    rel < *ctx.tol_identity(),
                    "c={c} t={t} s={s} k={k}: rel = {rel}"
                );
            }
        }
    }

    #[test]
    fn moments_positive_and_log_convex_at_t0() {
        let p = params(1.0, 0.0, 0.0, 40);
        let ctx = p.ctx();
        let table = MomentTable::build(&p, 8, MomentMethod::Series).unwrap();
        for k in 0..=8 {
            assert!(*table.eta(k) > 0);
        }
        // eta_{2k}^2 < eta_{2k-2} eta_{2k+2}: moment sequence of a positive measure
        for k in 1..8 {
            let lhs = table.eta(k).clone().square();
            let rhs = ctx.real(table.eta(k - 1) * table.eta(k + 1));
            assert!(lhs < rhs, "log-convexity fails at k={k}");
        }
    }

    #[test]
    fn shift_identity_reports_pass() {
        for k in [0usize, 1, 3] {
            let p = params(1.0, 2.0, 0.5, 40);
            let rep = check_shift_identity(&p, k).unwrap();
            assert!(rep.pass, "k = {k}");
        }
    }

    #[test]
    fn derivative_identity_first_and_second_order() {
        let p = params(1.0, 0.0, 0.0, 40);
        let h = p.ctx().fd_step();
        let rep = check_derivative_identity(&p, 1, &h).unwrap();
        assert!(rep.pass, "n=1: {}", rep.max_residual);
        let p = params(1.0, 1.0, 0.5, 40);
        let rep = check_derivative_identity(&p, 2, &h).unwrap();
        assert!(rep.pass, "n=2: {}", rep.max_residual);
    }

    #[test]
    fn derivative_identity_third_order_and_range() {
        let p = params(1.0, -1.0, 0.25, 40);
        let h = p.ctx().fd_step();
        let rep = check_derivative_identity(&p, 3, &h).unwrap();
        assert!(rep.pass, "n=3: {}", rep.max_residual);
        assert!(check_derivative_identity(&p, 0, &h).is_err());
        assert!(check_derivative_identity(&p, 4, &h).is_err());
    }

    #[test]
    fn derivative_identity_fd_against_quadrature_oracle() {
        // same verdict when eta_0(t +- h) comes from the quadrature route
        let p = params(1.0, 0.0, 0.0, 35);
        let ctx = p.ctx();
        let h = ctx.fd_step();
        let eta0 = |dt: i32| {
            let t = ctx.real(p.t() + ctx.real(&h * dt));
            moment_quadrature(&p.with_t(t), 0).unwrap()
        };
        let fd = ctx.real(eta0(1) - eta0(-1)) / (ctx.real(2u32) * &h);
        let table = MomentTable::build(&p, 2, MomentMethod::Series).unwrap();
        let rhs = ctx.real(table.eta(1) - table.eta(2));
        let rel = ctx.real(&fd - &rhs).abs() / rhs.clone().abs();
        let tol = ctx.real(&h * &h).max(ctx.tol_identity());
        assert!(rel < tol, "rel = {rel}");
    }

    #[test]
    fn airy_moments_match_eta_and_quadrature() {
        let p = params(1.0, 0.0, 0.0, 40);
        let ctx = p.ctx();
        // w1, i=j=0 at (1,0,0): int e^{-xi^3} = Gamma(4/3) = eta_0
        let a = airy_moment(&p, 0, 0, AiryWeight::W1).unwrap();
        let r0 = ctx.parse(ETA0_REF).unwrap();
        assert!(ctx.real(&a - &r0).abs() < ctx.pow10(-38));
        // w2 equals w1 with i+j shifted by one
        let w2 = airy_moment(&p, 1, 2, AiryWeight::W2).unwrap();
        let w1 = airy_moment(&p, 2, 2, AiryWeight::W1).unwrap();
        assert!(ctx.real(&w2 - &w1).abs() < ctx.real(&w1 * ctx.tol_quadrature()));
        // independent xi-space quadrature agrees
        let p = params(1.0, 1.0, 0.5, 40);
        let ctx = p.ctx();
        let a = airy_moment(&p, 1, 1, AiryWeight::W1).unwrap();
        let b = airy_moment_quadrature(&p, 1, 1, AiryWeight::W1).unwrap();
        let rel = ctx.real(&a - &b).abs() / a.clone();
        assert!(rel < *ctx.tol_identity(), "rel = {rel}");
    }

    #[test]
    fn inner_product_uses_even_moments_only() {
        let p = params(1.0, 0.0, 0.0, 40);
        let ctx = p.ctx();
        let table = MomentTable::build(&p, 3, MomentMethod::Series).unwrap();
        // <x, x> = eta_2; <1, x> = 0 by parity
        let x = Poly::x(ctx.prec());
        let one = Poly::one(ctx.prec());
        let ip = table.inner_product(&x, &x).unwrap();
        assert!(ctx.real(&ip - table.eta(1)).abs() < ctx.real(table.eta(1) * ctx.tol_quadrature()));
        let z = table.inner_product(&one, &x).unwrap();
        assert!(z.is_zero());
        // out-of-range degree errors
        let big = x.mul_xk(7);
        assert!(table.inner_product(&big, &big).is_err());
    }
}
