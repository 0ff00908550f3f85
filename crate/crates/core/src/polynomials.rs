//! The monic polynomials S_n(x; t), their coefficient combinatorics, the
//! symmetrized Airy-type pair, and the Hankel product identity.
//!
//! S_n is parity-sparse: S_n(-x) = (-1)^n S_n(x), so only every other
//! coefficient is nonzero and the x^(n-2) coefficient equals
//! chi(n) = -sum_{k<n} gamma_k. The full coefficient array is
//! Psi_k(n) (coefficient of x^(n-2k)), generated by the recursion
//! Psi_k(q+1) - Psi_k(q) = -gamma_q Psi_{k-1}(q-1) with Psi_0 = 1, or
//! equivalently by sums of gamma products over index sets with gaps >= 2.

use crate::error::{Error, Result};
use crate::numerics::{lu_det, Poly, Real};
use crate::recurrence::{gamma_stieltjes, RecurrenceTable};
use crate::report::{ReportItem, VerificationReport};
use crate::weight::WeightParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Monic S_n with its parity tag.
#[derive(Clone, Debug)]
pub struct PolynomialRep {
    pub n: usize,
    pub coeffs: Poly,
    pub parity: Parity,
}

/// The symmetrized pair: S_{2m}(x) = Pt_m(x^2) and S_{2m+1}(x) = x Ph_m(x^2),
/// with norms under the two Airy-type weights.
#[derive(Clone, Debug)]
pub struct SymmetrizedPair {
    pub m: usize,
    pub ptilde: Poly,
    pub phat: Poly,
    pub h_tilde: Real,
    pub h_hat: Real,
}

/// Build S_n from the recurrence S_{n+1} = x S_n - gamma_n S_{n-1}.
pub fn build_sn(table: &RecurrenceTable, n: usize) -> Result<PolynomialRep> {
    if n > table.n_max() {
        return Err(Error::Precondition(format!(
            "build_sn: n = {n} exceeds table n_max = {}",
            table.n_max()
        )));
    }
    let prec = table.params().ctx().prec();
    let mut prev = Poly::one(prec);
    if n == 0 {
        return Ok(PolynomialRep {
            n,
            coeffs: prev,
            parity: Parity::Even,
        });
    }
    let mut cur = Poly::x(prec);
    for m in 1..n {
        let next = cur.mul_xk(1).sub(&prev.scale(table.gamma(m)));
        prev = cur;
        cur = next;
    }
    Ok(PolynomialRep {
        n,
        coeffs: cur,
        parity: if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        },
    })
}

/// chi(n) = -sum_{k=0}^{n-1} gamma_k, the x^(n-2) coefficient of S_n;
/// chi(0) = 0.
pub fn chi(table: &RecurrenceTable, n: usize) -> Result<Real> {
    let ctx = table.params().ctx();
    if n == 0 {
        return Ok(ctx.real(0u32));
    }
    if n - 1 > table.n_max() {
        return Err(Error::Precondition(format!(
            "chi({n}) needs gammas up to {}, table holds {}",
            n - 1,
            table.n_max()
        )));
    }
    let mut acc = ctx.real(0u32);
    for k in 0..n {
        acc += table.gamma(k);
    }
    Ok(-acc)
}

/// Psi_k(q), the x^(q-2k) coefficient of S_q, via the difference recursion.
pub fn psi_coeff(table: &RecurrenceTable, k: usize, q: usize) -> Result<Real> {
    if k > q / 2 {
        return Err(Error::Precondition(format!(
            "psi_coeff: k = {k} out of range for q = {q}"
        )));
    }
    if q > table.n_max() {
        return Err(Error::Precondition(format!(
            "psi_coeff: q = {q} exceeds table n_max = {}",
            table.n_max()
        )));
    }
    Ok(psi_triangle(table, q)[q][k].clone())
}

/// Full triangle Psi_k(qq) for qq <= q; Psi_k(q) = 0 when 2k > q.
fn psi_triangle(table: &RecurrenceTable, q: usize) -> Vec<Vec<Real>> {
    let ctx = table.params().ctx();
    let mut tri: Vec<Vec<Real>> = Vec::with_capacity(q + 1);
    for qq in 0..=q {
        let kmax = qq / 2;
        let mut row = vec![ctx.real(0u32); kmax + 1];
        row[0] = ctx.real(1u32);
        for k in 1..=kmax {
            // Psi_k(qq) = Psi_k(qq-1) - gamma_{qq-1} Psi_{k-1}(qq-2)
            let mut v = ctx.real(0u32);
            if k <= (qq - 1) / 2 {
                v += &tri[qq - 1][k];
            }
            if k - 1 <= (qq - 2) / 2 {
                v -= ctx.real(table.gamma(qq - 1) * &tri[qq - 2][k - 1]);
            }
            row[k] = v;
        }
        tri.push(row);
    }
    tri
}

/// Coefficient combinatorics: the x^(q-2r) coefficient of S_q equals
/// (-1)^r sum over W(q,r) = {1 <= k_1, k_{j+1} >= k_j + 2, k_r < q} of
/// gamma_{k_1} ... gamma_{k_r}. Enumerates the index sets directly and
/// compares them against both the Psi recursion and the built polynomial;
/// also confirms that admitting k_1 = 0 changes nothing (gamma_0 = 0).
pub fn check_wqr_form(table: &RecurrenceTable, q: usize) -> Result<VerificationReport> {
    if q > 12 {
        return Err(Error::Precondition(format!(
            "check_wqr_form: enumeration is restricted to q <= 12, got {q}"
        )));
    }
    if q > table.n_max() {
        return Err(Error::Precondition(format!(
            "check_wqr_form: q = {q} exceeds table n_max = {}",
            table.n_max()
        )));
    }
    let params = table.params();
    let ctx = params.ctx();
    let sq = build_sn(table, q)?;
    let tri = psi_triangle(table, q);

    fn enumerate(
        table: &RecurrenceTable,
        q: usize,
        r: usize,
        start: usize,
        acc: &Real,
        total: &mut Real,
    ) {
        let ctx = table.params().ctx();
        if r == 0 {
            *total += acc;
            return;
        }
        // k_r < q and successors need room: k <= q - 1 - 2(r - 1)
        let hi = q - 1 - 2 * (r - 1);
        for k in start..=hi {
            let next = ctx.real(acc * table.gamma(k));
            enumerate(table, q, r - 1, k + 2, &next, total);
        }
    }

    let mut items = Vec::new();
    for r in 1..=q / 2 {
        let mut sum1 = ctx.real(0u32);
        enumerate(table, q, r, 1, &ctx.real(1u32), &mut sum1);
        let mut sum0 = ctx.real(0u32);
        enumerate(table, q, r, 0, &ctx.real(1u32), &mut sum0);

        let signed = if r % 2 == 0 {
            sum1.clone()
        } else {
            -sum1.clone()
        };
        let coeff = sq.coeffs.coeff(q - 2 * r);
        let scale = coeff.clone().abs().max(&ctx.real(1u32));
        let vs_extraction = ctx.real(&signed - &coeff).abs() / scale.clone();
        let vs_recursion = ctx.real(&signed - &tri[q][r]).abs() / scale;
        let base_gap = ctx.real(&sum1 - &sum0).abs();
        items.push(ReportItem::new(
            format!("q={q} r={r} vs coefficient"),
            vs_extraction,
        ));
        items.push(ReportItem::new(
            format!("q={q} r={r} vs recursion"),
            vs_recursion,
        ));
        items.push(ReportItem::with_note(
            format!("q={q} r={r} index base 0 vs 1"),
            base_gap,
            "identical because gamma_0 = 0",
        ));
    }
    // roughly machine-exact arithmetic on both sides
    let tol = ctx.pow10(-(ctx.digits() as i32 + 10));
    Ok(VerificationReport::from_items(
        "coefficient_combinatorics",
        params,
        tol,
        items,
        true,
        vec![],
    ))
}

/// Normalization constant Gamma_hat_n = sum_k Psi_k(n) eta_{2n-2k},
/// cross-checkable against the inner-product route stored in the table.
pub fn norm_gamma(table: &RecurrenceTable, n: usize) -> Result<Real> {
    if n > table.n_max() {
        return Err(Error::Precondition(format!(
            "norm_gamma: n = {n} exceeds table n_max = {}",
            table.n_max()
        )));
    }
    let ctx = table.params().ctx();
    let tri = psi_triangle(table, n);
    let mut acc = ctx.real(0u32);
    for k in 0..=n / 2 {
        acc += ctx.real(&tri[n][k] * table.moments().eta(n - k));
    }
    Ok(acc)
}

/// Split S_{2m} and S_{2m+1} into the monic Airy-type pair in xi = x^2.
pub fn symmetrize(table: &RecurrenceTable, m: usize) -> Result<SymmetrizedPair> {
    if 2 * m + 1 > table.n_max() {
        return Err(Error::Precondition(format!(
            "symmetrize: needs 2m+1 = {} <= n_max = {}",
            2 * m + 1,
            table.n_max()
        )));
    }
    let even = build_sn(table, 2 * m)?;
    let odd = build_sn(table, 2 * m + 1)?;
    let ptilde = Poly::new((0..=m).map(|i| even.coeffs.coeff(2 * i)).collect());
    let phat = Poly::new((0..=m).map(|i| odd.coeffs.coeff(2 * i + 1)).collect());
    Ok(SymmetrizedPair {
        m,
        ptilde,
        phat,
        h_tilde: table.norm(2 * m).clone(),
        h_hat: table.norm(2 * m + 1).clone(),
    })
}

/// Hankel product identity: with Delta_n = prod_{j<n} Gamma_hat_j and
/// Dt_k/Dh_k the Hankel determinants of the two Airy-type moment sequences,
/// Delta_{2k} = Dt_k Dh_k and Delta_{2k+1} = Dt_{k+1} Dh_k (Dh_0 = 1 as the
/// empty determinant). Retries once at raised digits if a determinant
/// degenerates.
pub fn check_hankel_product(params: &WeightParams, n: usize) -> Result<VerificationReport> {
    if n < 1 || n > 14 {
        return Err(Error::Precondition(format!(
            "check_hankel_product: n must be in 1..=14, got {n}"
        )));
    }
    let ctx = params.ctx();
    match hankel_product_items(params, n) {
        Ok(items) => Ok(VerificationReport::from_items(
            "hankel_product",
            params,
            ctx.tol_identity().clone(),
            items,
            true,
            vec![],
        )),
        Err(Error::Precision { .. }) => {
            let raised = params.with_digits(ctx.digits() + 40)?;
            let items = hankel_product_items(&raised, n)?;
            // residuals come back at raised precision; round to ours
            let items = items
                .into_iter()
                .map(|it| ReportItem {
                    residual: ctx.real(&it.residual),
                    ..it
                })
                .collect();
            Ok(VerificationReport::from_items(
                "hankel_product",
                params,
                ctx.tol_identity().clone(),
                items,
                true,
                vec!["determinants recomputed at +40 digits".into()],
            ))
        }
        Err(e) => Err(e),
    }
}

fn hankel_product_items(params: &WeightParams, n: usize) -> Result<Vec<ReportItem>> {
    let ctx = params.ctx();
    let table = gamma_stieltjes(params, n.max(2))?;
    let moments = table.moments();

    let det_of = |shift: usize, k: usize| -> Result<Real> {
        if k == 0 {
            return Ok(ctx.real(1u32));
        }
        let m: Vec<Vec<Real>> = (0..k)
            .map(|i| (0..k).map(|j| moments.eta(i + j + shift).clone()).collect())
            .collect();
        let d = lu_det(m);
        if !(d > 0) {
            return Err(Error::Precision {
                n: k,
                detail: format!("Hankel determinant (shift {shift}, size {k}) not positive"),
                required_digits: ctx.digits() + 40,
            });
        }
        Ok(d)
    };

    let mut items = Vec::new();
    let mut delta = ctx.real(1u32);
    for nn in 1..=n {
        delta *= table.norm(nn - 1);
        let k = nn / 2;
        let product = if nn % 2 == 0 {
            ctx.real(det_of(0, k)? * det_of(1, k)?)
        } else {
            ctx.real(det_of(0, k + 1)? * det_of(1, k)?)
        };
        let rel = ctx.real(&delta - &product).abs() / delta.clone().abs();
        items.push(ReportItem::with_note(
            format!("n={nn} Delta vs determinant product"),
            rel,
            format!("Delta = {}", ctx.format(&delta)),
        ));
    }
    Ok(items)
}
