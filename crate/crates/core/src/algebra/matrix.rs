use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::{AlgebraError, IntPoly, LaurentPoly};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Complex 2x2 matrix `[[a11, a12], [a21, a22]]`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Mat2 {
    pub a11: Complex64,
    pub a12: Complex64,
    pub a21: Complex64,
    pub a22: Complex64,
}

impl Mat2 {
    pub const fn new(a11: Complex64, a12: Complex64, a21: Complex64, a22: Complex64) -> Self {
        Mat2 { a11, a12, a21, a22 }
    }

    pub fn from_real(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        Mat2::new(a11.into(), a12.into(), a21.into(), a22.into())
    }

    pub const fn identity() -> Self {
        Mat2::new(ONE, ZERO, ZERO, ONE)
    }

    pub const fn zero() -> Self {
        Mat2::new(ZERO, ZERO, ZERO, ZERO)
    }

    pub fn det(&self) -> Complex64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    pub fn trace(&self) -> Complex64 {
        self.a11 + self.a22
    }

    /// Adjugate; the inverse for special-linear matrices.
    pub fn adjugate(&self) -> Self {
        Mat2::new(self.a22, -self.a12, -self.a21, self.a11)
    }

    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d == ZERO {
            return None;
        }
        Some(self.adjugate().scale(d.inv()))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Mat2::new(self.a11 * c, self.a12 * c, self.a21 * c, self.a22 * c)
    }

    pub fn entries(&self) -> [Complex64; 4] {
        [self.a11, self.a12, self.a21, self.a22]
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.entries()
            .iter()
            .map(|e| e.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_special_linear(&self, tol: f64) -> bool {
        (self.det() - ONE).norm() < tol
    }

    pub fn check_special_linear(&self, tol: f64) -> Result<(), AlgebraError> {
        if self.is_special_linear(tol) {
            Ok(())
        } else {
            Err(AlgebraError::NotSpecialLinear { det: self.det() })
        }
    }

    /// Power by repeated squaring; negative exponents use the adjugate.
    pub fn pow(&self, k: i64) -> Self {
        let mut base = if k < 0 { self.adjugate() } else { *self };
        let mut e = k.unsigned_abs();
        let mut acc = Mat2::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn conjugate_by(&self, g: &Mat2) -> Self {
        *g * *self * g.adjugate().scale(g.det().inv())
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, r: Mat2) -> Mat2 {
        Mat2::new(
            self.a11 * r.a11 + self.a12 * r.a21,
            self.a11 * r.a12 + self.a12 * r.a22,
            self.a21 * r.a11 + self.a22 * r.a21,
            self.a21 * r.a12 + self.a22 * r.a22,
        )
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, r: Mat2) -> Mat2 {
        Mat2::new(
            self.a11 + r.a11,
            self.a12 + r.a12,
            self.a21 + r.a21,
            self.a22 + r.a22,
        )
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, r: Mat2) -> Mat2 {
        Mat2::new(
            self.a11 - r.a11,
            self.a12 - r.a12,
            self.a21 - r.a21,
            self.a22 - r.a22,
        )
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale(-ONE)
    }
}

/// 2x2 matrix of Laurent polynomials in `t`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct LaurentMat2 {
    pub e: [LaurentPoly; 4],
}

impl LaurentMat2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::monomial(&Mat2::identity(), 0)
    }

    /// `m * t^exp`.
    pub fn monomial(m: &Mat2, exp: i64) -> Self {
        LaurentMat2 {
            e: m.entries().map(|c| LaurentPoly::monomial(c, exp)),
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.e[2 * i + j]
    }

    pub fn det(&self) -> LaurentPoly {
        &(&self.e[0] * &self.e[3]) - &(&self.e[1] * &self.e[2])
    }

    pub fn eval(&self, t: Complex64) -> Mat2 {
        let [a, b, c, d] = &self.e;
        Mat2::new(a.eval(t), b.eval(t), c.eval(t), d.eval(t))
    }

    pub fn normalize(&self, relative_threshold: f64) -> Self {
        LaurentMat2 {
            e: self.e.clone().map(|p| p.normalize(relative_threshold)),
        }
    }
}

impl Add for &LaurentMat2 {
    type Output = LaurentMat2;
    fn add(self, r: &LaurentMat2) -> LaurentMat2 {
        LaurentMat2 {
            e: std::array::from_fn(|i| &self.e[i] + &r.e[i]),
        }
    }
}

impl Sub for &LaurentMat2 {
    type Output = LaurentMat2;
    fn sub(self, r: &LaurentMat2) -> LaurentMat2 {
        LaurentMat2 {
            e: std::array::from_fn(|i| &self.e[i] - &r.e[i]),
        }
    }
}

impl Mul for &LaurentMat2 {
    type Output = LaurentMat2;
    fn mul(self, r: &LaurentMat2) -> LaurentMat2 {
        let s = &self.e;
        let o = &r.e;
        LaurentMat2 {
            e: [
                &(&s[0] * &o[0]) + &(&s[1] * &o[2]),
                &(&s[0] * &o[1]) + &(&s[1] * &o[3]),
                &(&s[2] * &o[0]) + &(&s[3] * &o[2]),
                &(&s[2] * &o[1]) + &(&s[3] * &o[3]),
            ],
        }
    }
}

/// 2x2 matrix over `Z[z]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMat2 {
    pub e: [IntPoly; 4],
}

impl IntMat2 {
    pub fn new(a11: IntPoly, a12: IntPoly, a21: IntPoly, a22: IntPoly) -> Self {
        IntMat2 {
            e: [a11, a12, a21, a22],
        }
    }

    pub fn identity() -> Self {
        IntMat2::new(
            IntPoly::one(),
            IntPoly::zero(),
            IntPoly::zero(),
            IntPoly::one(),
        )
    }

    pub fn a11(&self) -> &IntPoly {
        &self.e[0]
    }
    pub fn a12(&self) -> &IntPoly {
        &self.e[1]
    }
    pub fn a21(&self) -> &IntPoly {
        &self.e[2]
    }
    pub fn a22(&self) -> &IntPoly {
        &self.e[3]
    }

    pub fn det(&self) -> IntPoly {
        &(&self.e[0] * &self.e[3]) - &(&self.e[1] * &self.e[2])
    }

    pub fn trace(&self) -> IntPoly {
        &self.e[0] + &self.e[3]
    }

    pub fn adjugate(&self) -> Self {
        IntMat2::new(
            self.e[3].clone(),
            -&self.e[1],
            -&self.e[2],
            self.e[0].clone(),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = IntMat2::identity();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, z: Complex64) -> Mat2 {
        let [a, b, c, d] = &self.e;
        Mat2::new(
            a.eval_complex(z),
            b.eval_complex(z),
            c.eval_complex(z),
            d.eval_complex(z),
        )
    }
}

impl Mul for &IntMat2 {
    type Output = IntMat2;
    fn mul(self, r: &IntMat2) -> IntMat2 {
        let s = &self.e;
        let o = &r.e;
        IntMat2::new(
            &(&s[0] * &o[0]) + &(&s[1] * &o[2]),
            &(&s[0] * &o[1]) + &(&s[1] * &o[3]),
            &(&s[2] * &o[0]) + &(&s[3] * &o[2]),
            &(&s[2] * &o[1]) + &(&s[3] * &o[3]),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn parabolic_power() {
        let p = Mat2::from_real(1.0, 1.0, 0.0, 1.0);
        assert_eq!(p.pow(3), Mat2::from_real(1.0, 3.0, 0.0, 1.0));
        assert_eq!(p.pow(-2), Mat2::from_real(1.0, -2.0, 0.0, 1.0));
        assert_eq!(p.pow(0), Mat2::identity());
    }

    #[test]
    fn inverse_and_conjugation() {
        let g = Mat2::new(c(2.0, 1.0), c(0.5, 0.0), c(-1.0, 0.3), c(1.0, -1.0));
        let inv = g.inverse().unwrap();
        assert!((g * inv - Mat2::identity()).norm() < 1e-14);
        let a = Mat2::from_real(1.0, 1.0, 0.0, 1.0);
        let h = a.conjugate_by(&g);
        assert!((h.trace() - a.trace()).norm() < 1e-13);
    }

    #[test]
    fn laurent_matrix_det() {
        // I - tA for the parabolic A has det (1 - t)^2
        let a = Mat2::from_real(1.0, 1.0, 0.0, 1.0);
        let m = &LaurentMat2::identity() - &LaurentMat2::monomial(&a, 1);
        assert_eq!(m.det(), LaurentPoly::from_real(0, &[1.0, -2.0, 1.0]));
    }

    #[test]
    fn int_matrix_power_and_det() {
        let z = IntPoly::x();
        let b = IntMat2::new(
            IntPoly::one(),
            IntPoly::zero(),
            &IntPoly::from_i64(&[2]) - &z,
            IntPoly::one(),
        );
        assert_eq!(b.det(), IntPoly::one());
        let b3 = b.pow(3);
        assert_eq!(b3.a21(), &IntPoly::from_i64(&[6, -3]));
        assert_eq!((&b3 * &b.adjugate()), b.pow(2));
    }
}
