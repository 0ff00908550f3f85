//! Zeros of S_n through the Jacobi matrix, and the electrostatic picture.
//!
//! The zeros are the eigenvalues of the n x n zero-diagonal symmetric
//! tridiagonal matrix with off-diagonals sqrt(gamma_1)..sqrt(gamma_{n-1}).
//! Each eigenvalue gets one Newton polish step against the exact polynomial,
//! decoupling zero accuracy from the eigensolver tolerance. At every
//! non-origin zero x_j the ODE forces S_n''/S_n' = -U_n, which turns the
//! log-derivative pair sum into the equilibrium condition
//! 2 sum_{k != j} 1/(x_j - x_k) + U_n(x_j) = 0.

use crate::error::{Error, Result};
use crate::ladder::ode_coeffs;
use crate::numerics::{tridiag_eigenvalues, Real};
use crate::polynomials::build_sn;
use crate::recurrence::{GammaMethod, RecurrenceTable};
use crate::report::{ReportItem, VerificationReport};
use rug::ops::Pow;
use rug::Float;

/// Sorted zeros of S_n with the producing gamma route recorded.
#[derive(Clone, Debug)]
pub struct ZeroSet {
    pub n: usize,
    pub zeros: Vec<Real>,
    pub gamma_source: GammaMethod,
}

/// Zeros of S_n as Jacobi-matrix eigenvalues plus one Newton step. For odd n
/// the middle zero is pinned to exactly 0 (parity forces the root).
pub fn compute_zeros(table: &RecurrenceTable, n: usize) -> Result<ZeroSet> {
    if n < 1 || n > table.n_max() {
        return Err(Error::Precondition(format!(
            "compute_zeros needs 1 <= n <= {}, got {n}",
            table.n_max()
        )));
    }
    let ctx = table.params().ctx();
    let prec = ctx.prec();
    let diag = vec![ctx.real(0u32); n];
    let offdiag: Vec<Real> = (1..n).map(|i| table.gamma(i).clone().sqrt()).collect();
    let mut zeros = tridiag_eigenvalues(&diag, &offdiag, ctx)?;

    let sn = build_sn(table, n)?.coeffs;
    let dsn = sn.derive();
    for (j, z) in zeros.iter_mut().enumerate() {
        if n % 2 == 1 && j == n / 2 {
            *z = ctx.real(0u32);
            continue;
        }
        let step = Float::with_val(prec, sn.eval(z) / dsn.eval(z));
        *z -= step;
    }
    zeros.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(ZeroSet {
        n,
        zeros,
        gamma_source: table.method(),
    })
}

/// One interlacing item: the zeros of `inner` (degree n-1) between the zeros
/// of `outer` (degree n), residual 0 when strict.
pub fn interlacing_item(table: &RecurrenceTable, outer: &ZeroSet, inner: &ZeroSet) -> ReportItem {
    let ctx = table.params().ctx();
    let mut worst_margin = ctx.real(1u32);
    for j in 0..inner.zeros.len() {
        // x_n[j] < x_{n-1}[j] < x_n[j+1], margins relative to the gap
        let gap = ctx.real(&outer.zeros[j + 1] - &outer.zeros[j]);
        let left = ctx.real(&inner.zeros[j] - &outer.zeros[j]) / gap.clone();
        let right = ctx.real(&outer.zeros[j + 1] - &inner.zeros[j]) / gap;
        let m = left.min(&right);
        if m < worst_margin {
            worst_margin = m;
        }
    }
    let strict = worst_margin > 0;
    ReportItem::with_note(
        format!("n={} strict interlacing", outer.n),
        if strict {
            ctx.real(0u32)
        } else {
            ctx.real(1u32)
        },
        format!("worst relative margin {}", ctx.format(&worst_margin)),
    )
}

/// Strict interlacing of the zeros of S_{n-1} between the zeros of S_n.
pub fn check_interlacing(table: &RecurrenceTable, n: usize) -> Result<VerificationReport> {
    if n < 2 {
        return Err(Error::Precondition("check_interlacing needs n >= 2".into()));
    }
    let params = table.params();
    let ctx = params.ctx();
    let outer = compute_zeros(table, n)?;
    let inner = compute_zeros(table, n - 1)?;
    let items = vec![interlacing_item(table, &outer, &inner)];
    Ok(VerificationReport::from_items(
        "zero_interlacing",
        params,
        ctx.tol_identity().clone(),
        items,
        true,
        vec![],
    ))
}

/// Structural items for one zero set: strict ordering, negation symmetry,
/// each zero actually on the polynomial (|S_n(x_j)| <= tol (1+|x_j|)^n),
/// and the origin zero appearing exactly for odd n.
pub fn zero_property_items(table: &RecurrenceTable, zs: &ZeroSet) -> Result<Vec<ReportItem>> {
    let ctx = table.params().ctx();
    let n = zs.n;
    let sn = build_sn(table, n)?.coeffs;

    let mut sorted_ok = true;
    for j in 1..n {
        if !(zs.zeros[j] > zs.zeros[j - 1]) {
            sorted_ok = false;
        }
    }
    let mut symm = ctx.real(0u32);
    let mut on_poly = ctx.real(0u32);
    for j in 0..n {
        let s = ctx.real(&zs.zeros[j] + &zs.zeros[n - 1 - j]).abs();
        if s > symm {
            symm = s;
        }
        let bound = (ctx.real(1u32) + zs.zeros[j].clone().abs()).pow(n as u32);
        let r = sn.eval(&zs.zeros[j]).abs() / bound;
        if r > on_poly {
            on_poly = r;
        }
    }
    let origin_count = zs.zeros.iter().filter(|z| z.is_zero()).count();
    let origin_ok = origin_count == n % 2;

    Ok(vec![
        ReportItem::new(
            format!("n={n} zeros simple and sorted"),
            if sorted_ok {
                ctx.real(0u32)
            } else {
                ctx.real(1u32)
            },
        ),
        ReportItem::new(format!("n={n} negation symmetry"), symm),
        ReportItem::new(format!("n={n} polynomial residual at zeros"), on_poly),
        ReportItem::new(
            format!("n={n} origin zero iff odd degree"),
            if origin_ok {
                ctx.real(0u32)
            } else {
                ctx.real(1u32)
            },
        ),
    ])
}

/// Electrostatic equilibrium residual
/// |2 sum_{k != j} 1/(x_j - x_k) + U_n(x_j)| at every non-origin zero,
/// normalized by max(1, |U_n(x_j)|) and gated by tol_electro. The origin
/// zero of odd n is excluded (U_n has a 1/x pole there and the pair sum
/// vanishes by symmetry); a zero landing on a root of A_n is skipped with a
/// notice.
pub fn electrostatic_residual(table: &RecurrenceTable, n: usize) -> Result<VerificationReport> {
    let params = table.params();
    let ctx = params.ctx();
    let (zs, residuals, notes) = electro_residuals(table, n)?;

    let mut items = Vec::new();
    for (j, r) in residuals.iter().enumerate() {
        if let Some(resid) = r {
            items.push(ReportItem::new(
                format!("n={n} zero {j} at x={}", ctx.format(&zs.zeros[j])),
                resid.clone(),
            ));
        }
    }
    Ok(VerificationReport::from_items(
        "electrostatic_equilibrium",
        params,
        ctx.tol_electro().clone(),
        items,
        true,
        notes,
    ))
}

/// Scaled equilibrium residual per zero; None at the origin zero (odd n) and
/// at any zero sitting on a root of A_n (recorded in the notes).
pub fn electro_residuals(
    table: &RecurrenceTable,
    n: usize,
) -> Result<(ZeroSet, Vec<Option<Real>>, Vec<String>)> {
    if n < 2 {
        return Err(Error::Precondition(
            "electrostatic_residual needs n >= 2".into(),
        ));
    }
    let ctx = table.params().ctx();
    let zs = compute_zeros(table, n)?;

    let mut residuals = Vec::with_capacity(n);
    let mut notes = Vec::new();
    for (j, xj) in zs.zeros.iter().enumerate() {
        if xj.is_zero() {
            residuals.push(None);
            continue;
        }
        let coeffs = match ode_coeffs(table, n, xj) {
            Ok(c) => c,
            Err(Error::Singularity(msg)) => {
                notes.push(format!("zero {j} skipped: {msg}"));
                residuals.push(None);
                continue;
            }
            Err(e) => return Err(e),
        };
        let mut pair_sum = ctx.real(0u32);
        for (k, xk) in zs.zeros.iter().enumerate() {
            if k != j {
                pair_sum += ctx.real(1u32) / ctx.real(xj - xk);
            }
        }
        let resid = ctx.real(2u32) * &pair_sum + &coeffs.u;
        let scale = coeffs.u.clone().abs().max(&ctx.real(1u32));
        residuals.push(Some(resid.abs() / scale));
    }
    Ok((zs, residuals, notes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::PrecisionContext;
    use crate::recurrence::gamma_stieltjes;
    use crate::weight::WeightParams;

    fn table(c: f64, t: f64, sigma: f64, digits: u32, n: usize) -> RecurrenceTable {
        let ctx = PrecisionContext::new(digits).unwrap();
        let p = WeightParams::from_f64(c, t, sigma, ctx).unwrap();
        gamma_stieltjes(&p, n).unwrap()
    }

    #[test]
    fn small_degree_zeros_in_closed_form() {
        let tb = table(1.0, 0.0, 0.0, 40, 6);
        let ctx = tb.params().ctx();
        // S_2 = x^2 - gamma_1: zeros +-sqrt(gamma_1)
        let z2 = compute_zeros(&tb, 2).unwrap();
        let r = tb.gamma(1).clone().sqrt();
        assert!(ctx.real(&z2.zeros[0] + &r).abs() < ctx.real(&r * ctx.tol_identity()));
        assert!(ctx.real(&z2.zeros[1] - &r).abs() < ctx.real(&r * ctx.tol_identity()));
        // S_3 = x(x^2 - (gamma_1 + gamma_2)): zeros {-sqrt, 0, +sqrt}
        let z3 = compute_zeros(&tb, 3).unwrap();
        let r = ctx.real(tb.gamma(1) + tb.gamma(2)).sqrt();
        assert!(z3.zeros[1].is_zero(), "odd degree carries the origin zero");
        assert!(ctx.real(&z3.zeros[2] - &r).abs() < ctx.real(&r * ctx.tol_identity()));
    }

    #[test]
    fn zeros_symmetric_simple_and_on_curve() {
        let tb = table(1.0, 0.0, 0.0, 45, 10);
        let ctx = tb.params().ctx();
        let zs = compute_zeros(&tb, 8).unwrap().zeros;
        assert_eq!(zs.len(), 8);
        // strictly increasing, symmetric under negation
        for j in 1..8 {
            assert!(zs[j] > zs[j - 1], "simple and sorted");
        }
        for j in 0..8 {
            let s = ctx.real(&zs[j] + &zs[7 - j]).abs();
            assert!(s < *ctx.tol_identity(), "symmetry at {j}");
        }
        // |S_n(x_j)| <= tol_identity (1 + |x_j|)^n
        let sn = build_sn(&tb, 8).unwrap().coeffs;
        for z in &zs {
            let bound = (ctx.real(1u32) + z.clone().abs()).pow(8u32);
            assert!(sn.eval(z).abs() < ctx.real(&bound * ctx.tol_identity()));
        }
        // even degree has no origin zero
        for z in &zs {
            assert!(!z.is_zero());
        }
    }

    #[test]
    fn interlacing_small_degrees() {
        let tb = table(1.0, 1.0, 0.5, 45, 10);
        for n in 2..=8 {
            let rep = check_interlacing(&tb, n).unwrap();
            assert!(rep.pass, "n={n}");
        }
    }

    #[test]
    fn electrostatic_equilibrium_two_zero_case() {
        // n=2: 2/(x_1 - x_2) + U_2(x_1) = 0 at x_1 = sqrt(gamma_1)
        let tb = table(1.0, 0.0, 0.0, 45, 6);
        let rep = electrostatic_residual(&tb, 2).unwrap();
        assert!(rep.pass, "{}", rep.max_residual);
        // residual magnitudes are negation-symmetric
        let a = &rep.items[0].residual;
        let b = &rep.items[1].residual;
        let ctx = tb.params().ctx();
        assert!(ctx.real(a - b).abs() < *ctx.tol_electro());
    }

    #[test]
    fn electrostatic_equilibrium_odd_degree() {
        let tb = table(1.0, -1.0, 0.5, 45, 12);
        let rep = electrostatic_residual(&tb, 9).unwrap();
        assert!(rep.pass, "{}", rep.max_residual);
        // origin zero excluded: 9 zeros, 8 items
        assert_eq!(rep.items.len(), 8);
    }
}
