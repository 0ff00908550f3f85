//! Dense polynomial arithmetic, exact in working precision.
//!
//! Coefficients are stored by monomial degree. Degrees stay small (<= ~60 at
//! desk scale), so dense storage and schoolbook multiplication are the right
//! tools.

use super::Real;
use rug::Float;

#[derive(Clone, Debug)]
pub struct Poly {
    coeffs: Vec<Real>,
}

impl Poly {
    /// Build from coefficients (index = degree). Trailing exact zeros are
    /// trimmed; the zero polynomial keeps a single zero coefficient.
    pub fn new(coeffs: Vec<Real>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "Poly::new needs at least one coefficient"
        );
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn zero(prec: u32) -> Self {
        Poly {
            coeffs: vec![Float::with_val(prec, 0u32)],
        }
    }

    pub fn one(prec: u32) -> Self {
        Poly {
            coeffs: vec![Float::with_val(prec, 1u32)],
        }
    }

    /// The monomial x.
    pub fn x(prec: u32) -> Self {
        Poly {
            coeffs: vec![Float::with_val(prec, 0u32), Float::with_val(prec, 1u32)],
        }
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs.last().unwrap().is_zero() {
            self.coeffs.pop();
        }
    }

    fn prec(&self) -> u32 {
        self.coeffs[0].prec()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn coeffs(&self) -> &[Real] {
        &self.coeffs
    }

    /// Coefficient of x^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Real {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| Float::with_val(self.prec(), 0u32))
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Real) -> Real {
        let mut acc = Float::with_val(self.prec(), 0u32);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derive(&self) -> Poly {
        if self.degree() == 0 {
            return Poly::zero(self.prec());
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| Float::with_val(self.prec(), c * i as u32))
            .collect();
        Poly::new(coeffs)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let prec = self.prec();
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let mut c = Float::with_val(prec, 0u32);
            if let Some(a) = self.coeffs.get(k) {
                c += a;
            }
            if let Some(b) = other.coeffs.get(k) {
                c += b;
            }
            coeffs.push(c);
        }
        Poly::new(coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&Float::with_val(self.prec(), -1i32)))
    }

    pub fn scale(&self, s: &Real) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .map(|c| Float::with_val(self.prec(), c * s))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let prec = self.prec();
        if self.is_zero() || other.is_zero() {
            return Poly::zero(prec);
        }
        let mut coeffs = vec![Float::with_val(prec, 0u32); self.degree() + other.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += Float::with_val(prec, a * b);
            }
        }
        Poly::new(coeffs)
    }

    /// Multiply by x^k.
    pub fn mul_xk(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let prec = self.prec();
        let mut coeffs = vec![Float::with_val(prec, 0u32); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly::new(coeffs)
    }
}
