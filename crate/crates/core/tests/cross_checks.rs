//! Cross-module invariants: identities whose two sides live in different
//! modules (recurrence <-> polynomials <-> moments <-> zeros).

use freud6::*;

fn table(c: f64, t: f64, sigma: f64, digits: u32, n: usize) -> RecurrenceTable {
    let ctx = PrecisionContext::new(digits).unwrap();
    let p = WeightParams::from_f64(c, t, sigma, ctx).unwrap();
    gamma_stieltjes(&p, n).unwrap()
}

#[test]
fn values_and_tables_are_shareable_across_threads() {
    fn check<T: Send + Sync>() {}
    check::<PrecisionContext>();
    check::<WeightParams>();
    check::<Poly>();
    check::<MomentTable>();
    check::<RecurrenceTable>();
    check::<PolynomialRep>();
    check::<LadderCoeffs>();
    check::<QuasiCoeffs>();
    check::<ZeroSet>();
    check::<VerificationReport>();
}

#[test]
fn telescoped_gammas_equal_chi_and_extracted_coefficient() {
    let tb = table(1.0, 1.0, 0.5, 45, 12);
    let ctx = tb.params().ctx();
    for n in 2..=12usize {
        let mut acc = ctx.real(0u32);
        for k in 0..n {
            acc += tb.gamma(k);
        }
        let lhs = -acc;
        let chi_n = chi(&tb, n).unwrap();
        let coeff = build_sn(&tb, n).unwrap().coeffs.coeff(n - 2);
        let scale = chi_n.clone().abs();
        assert!(
            ctx.real(&lhs - &chi_n).abs() / scale.clone() < ctx.pow10(-60),
            "n={n}"
        );
        assert!(
            ctx.real(&chi_n - &coeff).abs() / scale < ctx.pow10(-60),
            "n={n}"
        );
    }
}

#[test]
fn polynomials_are_orthogonal_under_the_moment_functional() {
    let tb = table(1.0, -1.0, 0.25, 45, 10);
    let ctx = tb.params().ctx();
    let polys: Vec<Poly> = (0..=8).map(|n| build_sn(&tb, n).unwrap().coeffs).collect();
    for n in 0..=8usize {
        for m in 0..n {
            let ip = tb.moments().inner_product(&polys[n], &polys[m]).unwrap();
            let scale = ctx.real(tb.norm(n) * tb.norm(m)).sqrt();
            assert!(
                ip.clone().abs() <= ctx.real(&scale * ctx.tol_identity()),
                "<S_{n}, S_{m}> = {ip}"
            );
        }
        // diagonal reproduces the stored norm
        let nn = tb.moments().inner_product(&polys[n], &polys[n]).unwrap();
        let rel = ctx.real(&nn - tb.norm(n)).abs() / tb.norm(n).clone();
        assert!(rel < *ctx.tol_identity());
    }
}

#[test]
fn norm_route_agreement_psi_vs_inner_product() {
    // Gamma_hat_n via sum_k Psi_k(n) eta_{2n-2k} against the table's
    // inner-product construction
    let tb = table(0.5, 2.0, 0.25, 45, 10);
    let ctx = tb.params().ctx();
    for n in 0..=10 {
        let a = norm_gamma(&tb, n).unwrap();
        let b = tb.norm(n);
        let rel = ctx.real(&a - b).abs() / b.clone();
        assert!(rel < *ctx.tol_identity(), "n={n}: {rel}");
    }
}

#[test]
fn three_gamma_routes_agree() {
    let ctx = PrecisionContext::new(50).unwrap();
    let p = WeightParams::from_f64(1.0, 1.0, 0.5, ctx.clone()).unwrap();
    let st = gamma_stieltjes(&p, 10).unwrap();
    let hk = gamma_hankel(&p, 10).unwrap();
    let sr = gamma_string_recursion(&p, 10, (st.gamma(1), st.gamma(2))).unwrap();
    for n in 1..=10 {
        let rel_h = ctx.real(st.gamma(n) - hk.gamma(n)).abs() / st.gamma(n).clone();
        let rel_s = ctx.real(st.gamma(n) - sr.gamma(n)).abs() / st.gamma(n).clone();
        assert!(rel_h < *ctx.tol_identity(), "hankel n={n}");
        assert!(rel_s < *ctx.tol_identity(), "string n={n}");
    }
}

#[test]
fn zeros_are_method_independent() {
    let ctx = PrecisionContext::new(45).unwrap();
    let p = WeightParams::from_f64(1.0, 0.0, 0.5, ctx.clone()).unwrap();
    let st = gamma_stieltjes(&p, 8).unwrap();
    let hk = gamma_hankel(&p, 8).unwrap();
    let za = compute_zeros(&st, 8).unwrap();
    let zb = compute_zeros(&hk, 8).unwrap();
    assert_eq!(za.gamma_source, GammaMethod::Stieltjes);
    assert_eq!(zb.gamma_source, GammaMethod::Hankel);
    for j in 0..8 {
        let d = ctx.real(&za.zeros[j] - &zb.zeros[j]).abs();
        assert!(d < *ctx.tol_identity(), "zero {j}");
    }
}

#[test]
fn symmetrized_norms_factor_the_hankel_products() {
    // h_tilde/h_hat from the symmetrized pair are the norms whose partial
    // products the Hankel identity factors
    let tb = table(1.0, 0.0, 0.0, 45, 9);
    let pair = symmetrize(&tb, 2).unwrap();
    assert!(pair.h_tilde == *tb.norm(4));
    assert!(pair.h_hat == *tb.norm(5));
    let rep = check_hankel_product(tb.params(), 6).unwrap();
    assert!(rep.pass, "{}", rep.max_residual);
}

#[test]
fn quasi_projection_between_modules() {
    // <x S_n', S_n>/Gamma_hat_n = n connects ladder, polynomials and moments
    let tb = table(1.0, 1.0, 0.5, 50, 13);
    let ctx = tb.params().ctx();
    for n in [6usize, 9] {
        let sn = build_sn(&tb, n).unwrap().coeffs;
        let xdsn = sn.derive().mul_xk(1);
        let proj = tb.moments().inner_product(&xdsn, &sn).unwrap() / tb.norm(n).clone();
        let rel = ctx.real(&proj - n as u32).abs() / ctx.real(n as u32);
        assert!(rel < *ctx.tol_identity(), "n={n}: {proj}");
    }
}

#[test]
fn report_json_round_trip_is_stable() {
    let tb = table(1.0, 0.0, 0.0, 40, 6);
    let rep = check_string_equation(&tb, 2).unwrap();
    let a = serde_json::to_string(&rep.to_json()).unwrap();
    let b = serde_json::to_string(&rep.to_json()).unwrap();
    assert_eq!(a, b);
    assert!(a.contains("\"check\":\"string_equation\""));
    assert!(a.contains("\"pass\":true"));
}
