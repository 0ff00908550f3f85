//! Tanh-sinh (double exponential) panel quadrature.
//!
//! Nodes for the reference interval (-1, 1) are x = tanh((pi/2) sinh u) with
//! weights w = (pi/2) cosh u / cosh^2((pi/2) sinh u). Successive levels halve
//! the step h, reusing previous evaluations; convergence is measured by the
//! difference of consecutive levels. Nodes are stored as the distance
//! delta = 1 - x from the nearer endpoint so that panel endpoints map without
//! cancellation.

use crate::numerics::Real;
use rug::Float;

pub(crate) struct TanhSinh {
    prec: u32,
    digits: u32,
    u_max: f64,
    /// levels[l] holds the (delta, weight) pairs new at level l, for u > 0.
    levels: Vec<Vec<(Real, Real)>>,
    /// weight at u = 0 (node at the panel midpoint)
    w0: Real,
}

impl TanhSinh {
    pub fn new(prec: u32, digits: u32) -> Self {
        // Beyond u_max the weights drop under ~10^-(digits+42) and the nodes
        // contribute nothing at the target accuracy.
        let u_max =
            (((digits + 42) as f64) * std::f64::consts::LN_10 / std::f64::consts::PI).asinh();
        let w0 = Float::with_val(prec, rug::float::Constant::Pi) / 2u32;
        TanhSinh {
            prec,
            digits,
            u_max,
            levels: Vec::new(),
            w0,
        }
    }

    fn node(&self, u: f64) -> (Real, Real) {
        let prec = self.prec;
        let uu = Float::with_val(prec, u);
        let half_pi = Float::with_val(prec, rug::float::Constant::Pi) / 2u32;
        let theta = uu.clone().sinh() * &half_pi;
        // delta = 1 - tanh(theta) = 2 / (e^(2 theta) + 1)
        let e2t = Float::with_val(prec, 2u32 * &theta).exp();
        let delta = Float::with_val(prec, 2u32) / (e2t + 1u32);
        let cosh_theta = theta.cosh();
        let w = half_pi * uu.cosh() / cosh_theta.square();
        (delta, w)
    }

    fn ensure_level(&mut self, level: usize) {
        while self.levels.len() <= level {
            let l = self.levels.len();
            let h = 0.5f64.powi(l as i32);
            let mut nodes = Vec::new();
            let w_cut = Float::with_val(
                self.prec,
                Float::parse(format!("1e-{}", self.digits + 45)).unwrap(),
            );
            if l == 0 {
                let mut j = 1u64;
                while (j as f64) * h <= self.u_max {
                    let nw = self.node(j as f64 * h);
                    if nw.1 > w_cut {
                        nodes.push(nw);
                    }
                    j += 1;
                }
            } else {
                let mut j = 1u64;
                while (j as f64) * h <= self.u_max {
                    let nw = self.node(j as f64 * h);
                    if nw.1 > w_cut {
                        nodes.push(nw);
                    }
                    j += 2;
                }
            }
            self.levels.push(nodes);
        }
    }

    /// Integrate f over (a, b). Converged when the level-to-level difference
    /// drops under max(tol_rel * |I|, abs_floor); returns
    /// (value, error estimate, converged).
    pub fn integrate<F>(
        &mut self,
        mut f: F,
        a: &Real,
        b: &Real,
        tol_rel: &Real,
        abs_floor: &Real,
        max_level: usize,
    ) -> (Real, Real, bool)
    where
        F: FnMut(&Real) -> Real,
    {
        let prec = self.prec;
        let half = Float::with_val(prec, b - a) / 2u32;
        let mid = Float::with_val(prec, a + b) / 2u32;
        let mid_val = f(&mid);

        let mut eval_nodes = |ts: &TanhSinh, level: usize| -> Real {
            let mut s = Float::with_val(prec, 0u32);
            for (delta, w) in &ts.levels[level] {
                let off = Float::with_val(prec, &half * delta);
                let xr = Float::with_val(prec, b - &off);
                let xl = Float::with_val(prec, a + &off);
                s += Float::with_val(prec, f(&xl) + f(&xr)) * w;
            }
            s
        };

        self.ensure_level(0);
        let mut integral = self.w0.clone() * mid_val + eval_nodes(self, 0);
        let mut h = Float::with_val(prec, 1u32);
        let mut err = Float::with_val(prec, integral.abs_ref());
        let mut converged = false;
        for level in 1..=max_level {
            self.ensure_level(level);
            h /= 2u32;
            let s_new = eval_nodes(self, level);
            let refined = Float::with_val(prec, &integral / 2u32) + s_new * &h;
            err = Float::with_val(prec, &refined - &integral).abs() * &half;
            integral = refined;
            let scale = Float::with_val(prec, integral.abs_ref()) * &half;
            let goal = Float::with_val(prec, tol_rel * &scale).max(abs_floor);
            if level >= 3 && err <= goal {
                converged = true;
                break;
            }
        }
        (integral * &half, err, converged)
    }
}

/// Smallest truncation point X (on a grid of 1/8 steps) with
/// c X^p - |t| X^q - a ln X >= (digits + 20) ln 10 and locally increasing,
/// so the dropped tail of the half-line integral sits below tolerance.
pub(crate) fn truncation_point(c: f64, t_abs: f64, a_pow: f64, digits: u32, p: i32, q: i32) -> f64 {
    let target = ((digits + 20) as f64) * std::f64::consts::LN_10;
    let f = |x: f64| c * x.powi(p) - t_abs * x.powi(q) - a_pow.max(0.0) * x.ln();
    let mut x = 1.0f64;
    loop {
        if f(x) >= target && f(x + 0.125) > f(x) {
            return x + 0.125;
        }
        x += 0.125;
        assert!(x < 1e6, "truncation point diverged");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::PrecisionContext;

    #[test]
    fn integrates_exp_on_panel() {
        // int_0^1 e^x dx = e - 1
        let ctx = PrecisionContext::new(50).unwrap();
        let mut ts = TanhSinh::new(ctx.prec(), ctx.digits());
        let zero = ctx.real(0u32);
        let one = ctx.real(1u32);
        let floor = ctx.real(0u32);
        let (v, _err, ok) = ts.integrate(
            |x| x.clone().exp(),
            &zero,
            &one,
            ctx.tol_quadrature(),
            &floor,
            11,
        );
        assert!(ok);
        let expect = ctx.real(1u32).exp() - 1u32;
        let rel = ctx.real(&v - &expect).abs() / expect;
        assert!(rel < *ctx.tol_quadrature(), "rel = {rel}");
    }

    #[test]
    fn handles_algebraic_endpoint_singularity() {
        // int_0^1 x^(1/2) dx = 2/3 (derivative singular at 0)
        let ctx = PrecisionContext::new(50).unwrap();
        let mut ts = TanhSinh::new(ctx.prec(), ctx.digits());
        let zero = ctx.real(0u32);
        let one = ctx.real(1u32);
        let floor = ctx.real(0u32);
        let (v, _err, ok) = ts.integrate(
            |x| x.clone().sqrt(),
            &zero,
            &one,
            ctx.tol_quadrature(),
            &floor,
            11,
        );
        assert!(ok);
        let expect = ctx.real(2u32) / ctx.real(3u32);
        let rel = ctx.real(&v - &expect).abs() / expect;
        assert!(rel < *ctx.tol_quadrature(), "rel = {rel}");
    }

    #[test]
    fn truncation_point_grows_with_digits() {
        let x40 = truncation_point(1.0, 0.0, 1.0, 40, 6, 4);
        let x120 = truncation_point(1.0, 0.0, 1.0, 120, 6, 4);
        assert!(x120 > x40);
        let v = 1.0 * x40.powi(6) - 1.0 * x40.ln();
        assert!(v >= 60.0 * std::f64::consts::LN_10);
    }
}
