//! Recurrence coefficients gamma_n(t; s) by three routes, plus the nonlinear
//! identities they satisfy.
//!
//! The symmetric three-term recurrence is S_{n+1} = x S_n - gamma_n S_{n-1}
//! with gamma_0 = 0 and gamma_1 = eta_2/eta_0. The Stieltjes route is the
//! authoritative producer: it builds the polynomials with exact coefficient
//! arithmetic and reads gamma_n = <S_n,S_n>/<S_{n-1},S_{n-1}> off the moment
//! table. The Hankel-determinant route cross-validates it, and the forward
//! string recursion is a verification subject whose instability is measured,
//! not fought.
//!
//! Checked identities, writing Xi_n = gamma_n (gamma_{n-1} + gamma_n +
//! gamma_{n+1}) and Omega_n = (1 - (-1)^n)/2:
//!
//! * string equation:
//!   6c [gamma_n (Xi_{n-1} + Xi_n + Xi_{n+1}) + gamma_{n-1} gamma_n
//!   gamma_{n+1}] + 4t Xi_n - 2t gamma_n = n + (2s+1) Omega_n;
//! * Toda-type flow: d gamma_n/dt = gamma_n [(gamma_{n+1} - Xi_{n+1}) -
//!   (gamma_{n-1} - Xi_{n-1})];
//! * a second-order differential-recurrence relation whose left side is
//!   measured under both plausible readings (non-gating diagnostic).

use crate::error::{Error, Result};
use crate::moments::{moment_series, MomentMethod, MomentTable};
use crate::numerics::{lu_det, Real};
use crate::report::{ReportItem, VerificationReport};
use crate::weight::WeightParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaMethod {
    Stieltjes,
    Hankel,
    String,
}

impl GammaMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            GammaMethod::Stieltjes => "stieltjes",
            GammaMethod::Hankel => "hankel",
            GammaMethod::String => "string",
        }
    }
}

/// gamma_0..gamma_N with norms and per-n diagnostics, plus the moment table
/// the construction consumed (reused by downstream inner products).
#[derive(Clone, Debug)]
pub struct RecurrenceTable {
    params: WeightParams,
    gammas: Vec<Real>,
    norms: Vec<Real>,
    method: GammaMethod,
    /// Stieltjes/Hankel: decimal digits lost to cancellation at each n.
    /// String: relative divergence from the Stieltjes table at each n.
    diagnostics: Vec<f64>,
    moments: MomentTable,
}

impl RecurrenceTable {
    pub fn params(&self) -> &WeightParams {
        &self.params
    }

    pub fn n_max(&self) -> usize {
        self.gammas.len() - 1
    }

    pub fn gamma(&self, n: usize) -> &Real {
        &self.gammas[n]
    }

    /// Norm Gamma_hat_n = <S_n, S_n>.
    pub fn norm(&self, n: usize) -> &Real {
        &self.norms[n]
    }

    pub fn method(&self) -> GammaMethod {
        self.method
    }

    pub fn diagnostics(&self) -> &[f64] {
        &self.diagnostics
    }

    pub fn moments(&self) -> &MomentTable {
        &self.moments
    }

    /// Xi_n = gamma_n (gamma_{n-1} + gamma_n + gamma_{n+1}); Xi_0 = 0.
    pub fn xi(&self, n: usize) -> Real {
        let ctx = self.params.ctx();
        if n == 0 {
            return ctx.real(0u32);
        }
        assert!(
            n + 1 <= self.n_max(),
            "Xi_{n} needs gamma_{}, table holds n <= {}",
            n + 1,
            self.n_max()
        );
        let sum = ctx.real(&self.gammas[n - 1] + &self.gammas[n]) + &self.gammas[n + 1];
        sum * &self.gammas[n]
    }

    /// Omega_n = 1 for odd n, 0 for even n.
    pub fn omega(n: usize) -> u32 {
        (n % 2) as u32
    }

    /// gamma_i extended by zero to negative indices.
    pub(crate) fn gamma_ext(&self, i: i64) -> Real {
        if i < 0 {
            self.params.ctx().real(0u32)
        } else {
            self.gammas[i as usize].clone()
        }
    }
}

/// Initial condition gamma_1 = eta_2 / eta_0.
pub fn gamma_initial(params: &WeightParams) -> Result<Real> {
    let e0 = moment_series(params, 0, 8)?;
    let e2 = moment_series(params, 1, 8)?;
    Ok(e2 / e0)
}

/// Stieltjes procedure: build S_0..S_N with exact coefficients, take norms
/// through the moment table, and read off gamma_n as norm ratios.
pub fn gamma_stieltjes(params: &WeightParams, n_max: usize) -> Result<RecurrenceTable> {
    if n_max < 1 {
        return Err(Error::Precondition(
            "gamma_stieltjes needs n_max >= 1".into(),
        ));
    }
    let moments = MomentTable::build(params, n_max + 1, MomentMethod::Series)?;
    stieltjes_from_moments(params, n_max, moments)
}

fn stieltjes_from_moments(
    params: &WeightParams,
    n_max: usize,
    moments: MomentTable,
) -> Result<RecurrenceTable> {
    let ctx = params.ctx();
    let prec = ctx.prec();
    use crate::numerics::Poly;

    let mut polys = vec![Poly::one(prec), Poly::x(prec)];
    let mut norms = vec![moments.eta(0).clone(), moments.eta(1).clone()];
    let mut gammas = vec![ctx.real(0u32), ctx.real(moments.eta(1) / moments.eta(0))];
    let mut diagnostics = vec![0.0f64, 0.0];

    for n in 1..n_max {
        let next = polys[n].mul_xk(1).sub(&polys[n - 1].scale(&gammas[n]));
        let (norm, lost) = moments.norm_sq_with_diag(&next)?;
        if !(norm > 0) || !norm.is_finite() {
            return Err(Error::Precision {
                n: n + 1,
                detail: "Stieltjes norm <S_n,S_n> not positive".into(),
                required_digits: ctx.digits() + lost.ceil() as u32 + 20,
            });
        }
        gammas.push(ctx.real(&norm / &norms[n]));
        norms.push(norm);
        diagnostics.push(lost);
        polys.push(next);
    }

    for (n, g) in gammas.iter().enumerate().skip(1) {
        if !(*g > 0) {
            return Err(Error::Precision {
                n,
                detail: "gamma_n not positive".into(),
                required_digits: ctx.digits() + 40,
            });
        }
    }

    Ok(RecurrenceTable {
        params: params.clone(),
        gammas,
        norms,
        method: GammaMethod::Stieltjes,
        diagnostics,
        moments,
    })
}

/// Hankel-determinant route, parity-reduced: with Delta_n the determinant of
/// the full n x n moment matrix, the even/odd split gives
/// Delta_{2k} = Dt_k Dh_k and Delta_{2k+1} = Dt_{k+1} Dh_k where Dt/Dh are
/// built from eta_{2(i+j)} and eta_{2(i+j)+2}; then
/// gamma_n = Delta_{n+1} Delta_{n-1} / Delta_n^2.
///
/// Retries at +40 and +80 digits if a minor degenerates.
pub fn gamma_hankel(params: &WeightParams, n_max: usize) -> Result<RecurrenceTable> {
    if n_max < 1 {
        return Err(Error::Precondition("gamma_hankel needs n_max >= 1".into()));
    }
    let ctx = params.ctx();
    let mut last_err = None;
    for extra in [0u32, 40, 80] {
        let attempt = if extra == 0 {
            params.clone()
        } else {
            params.with_digits(ctx.digits() + extra)?
        };
        match hankel_attempt(&attempt, n_max) {
            Ok((gammas, norms, diagnostics)) => {
                // round back to the requested precision
                let gammas: Vec<Real> = gammas.iter().map(|g| ctx.real(g)).collect();
                let norms: Vec<Real> = norms.iter().map(|g| ctx.real(g)).collect();
                let moments = MomentTable::build(params, n_max + 1, MomentMethod::Series)?;
                return Ok(RecurrenceTable {
                    params: params.clone(),
                    gammas,
                    norms,
                    method: GammaMethod::Hankel,
                    diagnostics,
                    moments,
                });
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap())
}

fn hankel_attempt(params: &WeightParams, n_max: usize) -> Result<(Vec<Real>, Vec<Real>, Vec<f64>)> {
    let ctx = params.ctx();
    let moments = MomentTable::build(params, n_max + 2, MomentMethod::Series)?;
    // Delta_n is needed up to n = n_max + 1, touching blocks of size
    // n_max/2 + 1 and moments up to eta_{2(n_max+1)}
    let k_top = n_max / 2 + 1;

    let det_of = |shift: usize, k: usize| -> (Real, f64) {
        if k == 0 {
            return (ctx.real(1u32), 0.0);
        }
        let m: Vec<Vec<Real>> = (0..k)
            .map(|i| (0..k).map(|j| moments.eta(i + j + shift).clone()).collect())
            .collect();
        // Hadamard bound tracks how many digits the elimination ate
        let mut hadamard = ctx.real(1u32);
        for row in &m {
            let mut s = ctx.real(0u32);
            for e in row {
                s += ctx.real(e * e);
            }
            hadamard *= s.sqrt();
        }
        let d = lu_det(m);
        let lost = if d.is_zero() {
            f64::INFINITY
        } else {
            (ctx.real(&hadamard / d.clone().abs()).ln() / std::f64::consts::LN_10).to_f64()
        };
        (d, lost.max(0.0))
    };

    let mut dt = Vec::with_capacity(k_top + 1);
    let mut dh = Vec::with_capacity(k_top + 1);
    let mut lost_t = Vec::new();
    let mut lost_h = Vec::new();
    for k in 0..=k_top {
        let (d, l) = det_of(0, k);
        if !(d > 0) {
            return Err(Error::Precision {
                n: 2 * k,
                detail: format!("even-block Hankel minor of size {k} not positive"),
                required_digits: ctx.digits() + 40,
            });
        }
        dt.push(d);
        lost_t.push(l);
        let (d, l) = det_of(1, k);
        if !(d > 0) {
            return Err(Error::Precision {
                n: 2 * k + 1,
                detail: format!("odd-block Hankel minor of size {k} not positive"),
                required_digits: ctx.digits() + 40,
            });
        }
        dh.push(d);
        lost_h.push(l);
    }

    let delta = |n: usize| -> Real {
        let k = n / 2;
        if n % 2 == 0 {
            ctx.real(&dt[k] * &dh[k])
        } else {
            ctx.real(&dt[k + 1] * &dh[k])
        }
    };
    let lost_at = |n: usize| -> f64 {
        let k = n / 2;
        if n % 2 == 0 {
            lost_t[k].max(lost_h[k])
        } else {
            lost_t[k + 1].max(lost_h[k])
        }
    };

    let mut gammas = vec![ctx.real(0u32)];
    let mut norms = vec![delta(1)];
    let mut diagnostics = vec![0.0f64];
    for n in 1..=n_max {
        let g = ctx.real(&delta(n + 1) * &delta(n - 1)) / ctx.real(delta(n).square());
        if !(g > 0) || !g.is_finite() {
            return Err(Error::Precision {
                n,
                detail: "Hankel gamma_n not positive".into(),
                required_digits: ctx.digits() + 40,
            });
        }
        norms.push(ctx.real(delta(n + 1) / delta(n)));
        gammas.push(g);
        diagnostics.push(lost_at(n + 1));
    }
    Ok((gammas, norms, diagnostics))
}

/// Forward solve of the string equation from seeds (gamma_1, gamma_2): the
/// equation at index n is linear in gamma_{n+2} with pivot 6c gamma_n
/// gamma_{n+1}. Diagnostics record the relative divergence from a Stieltjes
/// table, the known forward instability of this recursion.
pub fn gamma_string_recursion(
    params: &WeightParams,
    n_max: usize,
    seed: (&Real, &Real),
) -> Result<RecurrenceTable> {
    if n_max < 2 {
        return Err(Error::Precondition(
            "gamma_string_recursion needs n_max >= 2".into(),
        ));
    }
    let ctx = params.ctx();
    let six_c = ctx.real(6u32) * params.c();
    let two_t = ctx.real(2u32) * params.t();
    let four_t = ctx.real(4u32) * params.t();
    let alpha = params.alpha();

    let mut g = vec![ctx.real(0u32), seed.0.clone(), seed.1.clone()];
    for n in 1..=n_max.saturating_sub(2) {
        let gm = |i: i64| -> Real {
            if i < 0 {
                ctx.real(0u32)
            } else {
                g[i as usize].clone()
            }
        };
        let xi = |i: i64| -> Real {
            if i <= 0 {
                ctx.real(0u32)
            } else {
                gm(i) * (gm(i - 1) + gm(i) + gm(i + 1))
            }
        };
        let ni = n as i64;
        let pivot = ctx.real(&six_c * &g[n]) * &g[n + 1];
        if pivot.clone().abs() < ctx.pow10(-(2 * ctx.digits() as i32)) {
            return Err(Error::Instability {
                n,
                detail: "vanishing pivot 6c gamma_n gamma_{n+1}".into(),
            });
        }
        // 6c gamma_n Xi_{n+1} = pivot * gamma_{n+2} + 6c gamma_n gamma_{n+1} (gamma_n + gamma_{n+1})
        let known = ctx.real(&six_c * &g[n]) * (xi(ni - 1) + xi(ni))
            + pivot.clone() * ctx.real(&g[n] + &g[n + 1])
            + ctx.real(&six_c * &gm(ni - 1)) * ctx.real(&g[n] * &g[n + 1])
            + four_t.clone() * xi(ni)
            - two_t.clone() * &g[n];
        let rhs = ctx.real(n as u32) + ctx.real(&alpha * RecurrenceTable::omega(n));
        let next = ctx.real(&rhs - &known) / pivot;
        if !(next > 0) {
            return Err(Error::Instability {
                n,
                detail: format!("produced gamma_{} = {} <= 0", n + 2, ctx.format(&next)),
            });
        }
        g.push(next);
    }

    let moments = MomentTable::build(params, n_max + 1, MomentMethod::Series)?;
    let mut norms = vec![moments.eta(0).clone()];
    for n in 1..=n_max {
        norms.push(ctx.real(&g[n] * &norms[n - 1]));
    }

    // expected forward divergence, measured against the Stieltjes table
    let reference = stieltjes_from_moments(params, n_max, moments.clone())?;
    let diagnostics: Vec<f64> = (0..=n_max)
        .map(|n| {
            if n == 0 {
                0.0
            } else {
                let rel = ctx.real(&g[n] - reference.gamma(n)).abs() / reference.gamma(n).clone();
                rel.to_f64()
            }
        })
        .collect();

    Ok(RecurrenceTable {
        params: params.clone(),
        gammas: g,
        norms,
        method: GammaMethod::String,
        diagnostics,
        moments,
    })
}

/// String-equation residual at index n, under both algebraic groupings.
/// Residuals are normalized by the right-hand scale n + (2s+1).
pub fn check_string_equation(table: &RecurrenceTable, n: usize) -> Result<VerificationReport> {
    if n < 1 || n + 2 > table.n_max() {
        return Err(Error::Precondition(format!(
            "string equation needs 1 <= n <= {}, got {n}",
            table.n_max().saturating_sub(2)
        )));
    }
    let params = table.params();
    let ctx = params.ctx();
    let items = string_equation_items(table, n)?;
    Ok(VerificationReport::from_items(
        "string_equation",
        params,
        ctx.tol_identity().clone(),
        items,
        true,
        vec![],
    ))
}

pub(crate) fn string_equation_items(table: &RecurrenceTable, n: usize) -> Result<Vec<ReportItem>> {
    let params = table.params();
    let ctx = params.ctx();
    let six_c = ctx.real(6u32) * params.c();
    let alpha = params.alpha();
    let g = |i: i64| table.gamma_ext(i);
    let ni = n as i64;

    let rhs = ctx.real(n as u32) + ctx.real(&alpha * RecurrenceTable::omega(n));
    let scale = ctx.real(n as u32) + &alpha;

    let lhs_a = six_c.clone()
        * (g(ni) * (table.xi(n - 1) + table.xi(n) + table.xi(n + 1))
            + g(ni - 1) * g(ni) * g(ni + 1))
        + ctx.real(4u32) * params.t() * table.xi(n)
        - ctx.real(2u32) * params.t() * g(ni);
    let res_a = ctx.real(&lhs_a - &rhs).abs() / scale.clone();

    let lhs_b = six_c
        * ((g(ni) + g(ni - 1)) * table.xi(n)
            + g(ni) * table.xi(n + 1)
            + g(ni) * g(ni - 1) * g(ni - 2))
        + ctx.real(4u32) * params.t() * (g(ni) * (g(ni - 1) + g(ni) + g(ni + 1)))
        - ctx.real(2u32) * params.t() * g(ni);
    let res_b = ctx.real(&lhs_b - &rhs).abs() / scale.clone();

    let grouping_gap = ctx.real(&lhs_a - &lhs_b).abs() / scale;
    Ok(vec![
        ReportItem::new(format!("n={n} residual"), res_a),
        ReportItem::new(format!("n={n} residual (regrouped)"), res_b),
        ReportItem::new(format!("n={n} grouping difference"), grouping_gap),
    ])
}

/// Toda-type flow at index n: central t-difference of gamma_n (each side a
/// fresh Stieltjes table) against gamma_n [(gamma_{n+1} - Xi_{n+1}) -
/// (gamma_{n-1} - Xi_{n-1})]. Residual normalized by max(1, |rhs|).
pub fn check_toda(params: &WeightParams, n: usize, h: &Real) -> Result<VerificationReport> {
    check_toda_sweep(params, n, n, h)
}

/// Toda residuals for every n in lo..=hi, sharing the three tables.
pub fn check_toda_sweep(
    params: &WeightParams,
    lo: usize,
    hi: usize,
    h: &Real,
) -> Result<VerificationReport> {
    if lo < 1 || lo > hi {
        return Err(Error::Precondition(format!(
            "toda sweep needs 1 <= lo <= hi, got {lo}..={hi}"
        )));
    }
    let ctx = params.ctx();
    let n_table = hi + 2;
    let center = gamma_stieltjes(params, n_table)?;
    let plus = gamma_stieltjes(&params.with_t(ctx.real(params.t() + h)), n_table)?;
    let minus = gamma_stieltjes(&params.with_t(ctx.real(params.t() - h)), n_table)?;

    let tol = ctx.real(h * h).max(ctx.tol_identity());
    let mut items = Vec::new();
    for n in lo..=hi {
        let fd = ctx.real(plus.gamma(n) - minus.gamma(n)) / (ctx.real(2u32) * h);
        let rhs = center.gamma(n).clone()
            * ((center.gamma(n + 1).clone() - center.xi(n + 1))
                - (center.gamma_ext(n as i64 - 1) - center.xi(n - 1)));
        let scale = rhs.clone().abs().max(&ctx.real(1u32));
        let resid = ctx.real(&fd - &rhs).abs() / scale;
        items.push(ReportItem::new(format!("n={n} dgamma/dt"), resid));
    }
    Ok(VerificationReport::from_items(
        "toda_flow",
        params,
        tol,
        items,
        true,
        vec![],
    ))
}

/// Second-order differential-recurrence diagnostic (non-gating). The printed
/// left side is ambiguous, so both readings are measured against the long
/// right-hand polynomial: the second t-derivative of gamma_n, and the first
/// t-derivative of gamma_n^2.
pub fn check_second_order_dde(
    params: &WeightParams,
    n: usize,
    h: &Real,
) -> Result<VerificationReport> {
    check_second_order_dde_sweep(params, n, n, h)
}

pub fn check_second_order_dde_sweep(
    params: &WeightParams,
    lo: usize,
    hi: usize,
    h: &Real,
) -> Result<VerificationReport> {
    if lo < 1 || lo > hi {
        return Err(Error::Precondition(format!(
            "dde2 sweep needs 1 <= lo <= hi, got {lo}..={hi}"
        )));
    }
    let ctx = params.ctx();
    let n_table = hi + 4;
    let center = gamma_stieltjes(params, n_table)?;
    let plus = gamma_stieltjes(&params.with_t(ctx.real(params.t() + h)), n_table)?;
    let minus = gamma_stieltjes(&params.with_t(ctx.real(params.t() - h)), n_table)?;

    let tol = ctx.real(h * h).max(ctx.tol_identity());
    let mut items = Vec::new();
    let mut matched_any = false;
    for n in lo..=hi {
        let rhs = dde2_rhs(&center, n);
        let scale = rhs.clone().abs().max(&ctx.real(1u32));

        let d2 = (ctx.real(plus.gamma(n) + minus.gamma(n)) - ctx.real(2u32) * center.gamma(n))
            / ctx.real(h * h);
        let res_d2 = ctx.real(&d2 - &rhs).abs() / scale.clone();

        let dsq = (ctx.real(plus.gamma(n).clone().square())
            - ctx.real(minus.gamma(n).clone().square()))
            / (ctx.real(2u32) * h);
        let res_dsq = ctx.real(&dsq - &rhs).abs() / scale;

        let m2 = res_d2 <= tol;
        let m1 = res_dsq <= tol;
        matched_any |= m2 || m1;
        items.push(ReportItem::with_note(
            format!("n={n} reading d2 gamma/dt2"),
            res_d2,
            if m2 { "matched" } else { "not matched" },
        ));
        items.push(ReportItem::with_note(
            format!("n={n} reading d(gamma^2)/dt"),
            res_dsq,
            if m1 { "matched" } else { "not matched" },
        ));
    }
    let notes = vec![
        "informational: the printed left side is ambiguous; both readings are measured and the build never fails on this check".to_string(),
        format!("at least one reading matched: {matched_any}"),
    ];
    // pass stays honest (max over both readings vs tolerance); the report is
    // non-gating, so a mismatching reading never fails a run
    Ok(VerificationReport::from_items(
        "second_order_dde",
        params,
        tol,
        items,
        false,
        notes,
    ))
}

/// The long right-hand polynomial of the second-order differential-recurrence
/// relation, in gamma_{n-4}..gamma_{n+4}, plus
/// (1/6c)[n + (2s+1) Omega_n - theta] with
/// theta = 2t gamma_n [2(gamma_{n-1}+gamma_n+gamma_{n+1}) - 1].
fn dde2_rhs(table: &RecurrenceTable, n: usize) -> Real {
    let params = table.params();
    let ctx = params.ctx();
    let ni = n as i64;
    let g = |i: i64| table.gamma_ext(i);
    let r = |v: u32| ctx.real(v);

    let gn = g(ni);
    let gm1 = g(ni - 1);
    let gm2 = g(ni - 2);
    let gm3 = g(ni - 3);
    let gm4 = g(ni - 4);
    let gp1 = g(ni + 1);
    let gp2 = g(ni + 2);
    let gp3 = g(ni + 3);
    let gp4 = g(ni + 4);
    let sq = |x: &Real| x.clone().square();
    let cu = |x: &Real| x.clone().square() * x;

    let theta = r(2) * params.t() * &gn * (r(2) * ctx.real(&gm1 + &gn) + r(2) * &gp1 - 1u32);
    let head = (ctx.real(n as u32) + params.alpha() * RecurrenceTable::omega(n) - theta)
        / (r(6) * params.c());

    let c4 = -(gm1.clone() + &gp1);

    let c3 = -(gm2.clone() * &gm1)
        - sq(&gm1)
        - r(6) * ctx.real(&gm1 * &gp1)
        - sq(&gp1)
        - gp1.clone() * &gp2
        + r(2) * &gm1
        + r(2) * &gp1;

    let c2 = gm3.clone() * &gm2 * &gm1 + sq(&gm2) * &gm1 + r(2) * gm2.clone() * sq(&gm1)
        - r(4) * gm2.clone() * &gm1 * &gp1
        + cu(&gm1)
        - r(5) * sq(&gm1) * &gp1
        - r(4) * gm1.clone() * &gp1 * &gp2
        - r(5) * gm1.clone() * sq(&gp1)
        + cu(&gp1)
        + r(2) * sq(&gp1) * &gp2
        + gp1.clone() * sq(&gp2)
        + gp1.clone() * &gp2 * &gp3
        + r(8) * gm1.clone() * &gp1
        - gm1.clone()
        - gp1.clone();

    let c1 = gm4.clone() * &gm3 * &gm2 * &gm1
        + sq(&gm3) * &gm2 * &gm1
        + r(2) * gm3.clone() * sq(&gm2) * &gm1
        + r(2) * gm3.clone() * &gm2 * sq(&gm1)
        + cu(&gm2) * &gm1
        + r(3) * sq(&gm2) * sq(&gm1)
        + r(3) * gm2.clone() * cu(&gm1)
        - r(2) * gm2.clone() * &gm1 * sq(&gp1)
        - r(2) * gm2.clone() * &gm1 * &gp1 * &gp2
        + sq(&gm1).square()
        - r(2) * sq(&gm1) * sq(&gp1)
        - r(2) * sq(&gm1) * &gp1 * &gp2
        + sq(&gp1).square()
        + r(3) * cu(&gp1) * &gp2
        + r(3) * sq(&gp1) * sq(&gp2)
        + r(2) * sq(&gp1) * &gp2 * &gp3
        + gp1.clone() * cu(&gp2)
        + r(2) * gp1.clone() * sq(&gp2) * &gp3
        + gp1.clone() * &gp2 * sq(&gp3)
        - r(2) * sq(&gm2) * &gm1
        + gp1.clone() * &gp2 * &gp3 * &gp4
        - r(2) * gm3.clone() * &gm2 * &gm1
        - r(4) * gm2.clone() * sq(&gm1)
        + r(2) * gm2.clone() * &gm1 * &gp1
        - r(2) * cu(&gm1)
        + r(2) * sq(&gm1) * &gp1
        + r(2) * gm1.clone() * sq(&gp1)
        + r(2) * gm1.clone() * &gp1 * &gp2
        - r(2) * cu(&gp1)
        - r(4) * sq(&gp1) * &gp2
        - sq(&gn)
        - r(2) * gp1.clone() * sq(&gp2)
        - r(2) * gp1.clone() * &gp2 * &gp3
        - r(2) * gm1.clone() * &gp1
        - r(2) * gn.clone() * &gm1
        - r(2) * gn.clone() * &gp1
        - gp1.clone() * &gm1;

    head + c4 * sq(&gn).square() + c3 * cu(&gn) + c2 * sq(&gn) + c1 * &gn
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::PrecisionContext;

    // mpmath references at 30 digits
    const GAMMA1_100: &str = "0.505468088156089278032068745404"; // c=1, t=0, s=0
    const GAMMA1_SIGMA1: &str = "0.7384881116216483129357543751645976411688"; // = 1/Gamma(2/3)
    const GAMMA1_HALF2: &str = "0.592948743848755853118636841167"; // c=1/2, t=2, s=1/4

    fn params(c: f64, t: f64, sigma: f64, digits: u32) -> WeightParams {
        let ctx = PrecisionContext::new(digits).unwrap();
        WeightParams::from_f64(c, t, sigma, ctx).unwrap()
    }

    #[test]
    fn gamma_initial_reference_values() {
        let p = params(1.0, 0.0, 0.0, 40);
        let ctx = p.ctx();
        let g1 = gamma_initial(&p).unwrap();
        let expect = ctx.parse(GAMMA1_100).unwrap();
        assert!(ctx.real(&g1 - &expect).abs() < ctx.pow10(-28));

        let p = params(1.0, 0.0, 1.0, 40);
        let g1 = gamma_initial(&p).unwrap();
        let expect = p.ctx().parse(GAMMA1_SIGMA1).unwrap();
        assert!(p.ctx().real(&g1 - &expect).abs() < ctx.pow10(-37));

        let p = params(0.5, 2.0, 0.25, 40);
        let g1 = gamma_initial(&p).unwrap();
        let expect = p.ctx().parse(GAMMA1_HALF2).unwrap();
        assert!(p.ctx().real(&g1 - &expect).abs() < ctx.pow10(-28));
    }

    #[test]
    fn stieltjes_table_basics() {
        let p = params(1.0, 0.0, 0.0, 40);
        let ctx = p.ctx();
        let table = gamma_stieltjes(&p, 10).unwrap();
        assert!(table.gamma(0).is_zero());
        let g1 = gamma_initial(&p).unwrap();
        assert!(ctx.real(table.gamma(1) - &g1).abs() < ctx.real(&g1 * ctx.tol_identity()));
        for n in 1..=10 {
            assert!(*table.gamma(n) > 0, "gamma_{n} must be positive");
        }
        // norms multiply down the line: Gamma_hat_n = gamma_n Gamma_hat_{n-1}
        for n in 1..=10 {
            let lhs = table.norm(n).clone();
            let rhs = ctx.real(table.gamma(n) * table.norm(n - 1));
            let rel = ctx.real(&lhs - &rhs).abs() / lhs;
            assert!(rel < *ctx.tol_identity());
        }
    }

    #[test]
    fn hankel_agrees_with_stieltjes() {
        for (c, t, s) in [(1.0, 1.0, 0.5), (1.0, -1.0, 0.25)] {
            let p = params(c, t, s, 45);
            let ctx = p.ctx();
            let st = gamma_stieltjes(&p, 12).unwrap();
            let hk = gamma_hankel(&p, 12).unwrap();
            assert_eq!(hk.method(), GammaMethod::Hankel);
            for n in 1..=12 {
                let rel = ctx.real(st.gamma(n) - hk.gamma(n)).abs() / st.gamma(n).clone();
                assert!(rel < *ctx.tol_identity(), "c={c} t={t} s={s} n={n}: {rel}");
            }
            // 1x1 minors reproduce gamma_1 = eta_2/eta_0
            let g1 = gamma_initial(&p).unwrap();
            let rel = ctx.real(hk.gamma(1) - &g1).abs() / g1;
            assert!(rel < *ctx.tol_identity());
        }
    }

    #[test]
    fn string_recursion_follows_stieltjes_with_exact_seeds() {
        let p = params(1.0, 0.0, 0.0, 50);
        let ctx = p.ctx();
        let st = gamma_stieltjes(&p, 10).unwrap();
        let table = gamma_string_recursion(&p, 10, (st.gamma(1), st.gamma(2))).unwrap();
        assert!(table.gamma(0).is_zero());
        for n in 1..=10 {
            let rel = ctx.real(table.gamma(n) - st.gamma(n)).abs() / st.gamma(n).clone();
            assert!(rel < *ctx.tol_identity(), "n={n}: rel={rel}");
            assert!(
                table.diagnostics()[n] < 1e-20,
                "divergence diagnostic n={n}"
            );
        }
    }

    #[test]
    fn string_equation_residuals_small() {
        for (c, t, s) in [(1.0, 0.0, 0.0), (0.5, 2.0, 0.25)] {
            let p = params(c, t, s, 60);
            let table = gamma_stieltjes(&p, 12).unwrap();
            for n in 1..=10 {
                let rep = check_string_equation(&table, n).unwrap();
                assert!(rep.pass, "c={c} t={t} s={s} n={n}: {}", rep.max_residual);
            }
        }
        // out-of-range n rejected
        let p = params(1.0, 0.0, 0.0, 40);
        let table = gamma_stieltjes(&p, 5).unwrap();
        assert!(check_string_equation(&table, 4).is_err());
        assert!(check_string_equation(&table, 0).is_err());
    }

    #[test]
    fn omega_parity() {
        assert_eq!(RecurrenceTable::omega(2), 0);
        assert_eq!(RecurrenceTable::omega(3), 1);
    }

    #[test]
    fn toda_flow_matches_finite_difference() {
        let p = params(1.0, 0.0, 0.0, 40);
        let h = p.ctx().fd_step();
        let rep = check_toda(&p, 1, &h).unwrap();
        assert!(rep.pass, "n=1: {}", rep.max_residual);
        let p = params(1.0, 1.0, 0.5, 40);
        let rep = check_toda_sweep(&p, 1, 5, &h).unwrap();
        assert!(rep.pass, "sweep: {}", rep.max_residual);
    }

    #[test]
    fn dde2_second_derivative_reading_matches() {
        let p = params(1.0, 0.0, 0.0, 60);
        let h = p.ctx().fd_step();
        let rep = check_second_order_dde(&p, 3, &h).unwrap();
        assert!(!rep.gating, "dde2 must be non-gating");
        assert!(
            !rep.failed_gating(),
            "informational report cannot fail a run"
        );
        // the d2/dt2 reading is the one that matches
        let d2_item = &rep.items[0];
        assert_eq!(d2_item.note.as_deref(), Some("matched"));
        assert!(rep.notes.iter().any(|n| n.contains("matched: true")));
    }
}
