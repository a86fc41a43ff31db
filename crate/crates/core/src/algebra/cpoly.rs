use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use super::IntPoly;

/// Dense polynomial with complex coefficients, `coeffs[k]` multiplies `z^k`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ComplexPoly {
    coeffs: Vec<Complex64>,
}

impl ComplexPoly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs
            .last()
            .is_some_and(|c| *c == Complex64::new(0.0, 0.0))
        {
            coeffs.pop();
        }
        ComplexPoly { coeffs }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::new(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)])
    }

    pub fn from_int(p: &IntPoly) -> Self {
        Self::new(
            p.coeffs()
                .iter()
                .map(|c| {
                    Complex64::new(num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::NAN), 0.0)
                })
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * k as f64)
                .collect(),
        )
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }
}

impl Add for &ComplexPoly {
    type Output = ComplexPoly;
    fn add(self, r: &ComplexPoly) -> ComplexPoly {
        let n = self.coeffs.len().max(r.coeffs.len());
        let get = |v: &[Complex64], i: usize| v.get(i).copied().unwrap_or_default();
        ComplexPoly::new(
            (0..n)
                .map(|i| get(&self.coeffs, i) + get(&r.coeffs, i))
                .collect(),
        )
    }
}

impl Sub for &ComplexPoly {
    type Output = ComplexPoly;
    fn sub(self, r: &ComplexPoly) -> ComplexPoly {
        self + &r.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul for &ComplexPoly {
    type Output = ComplexPoly;
    fn mul(self, r: &ComplexPoly) -> ComplexPoly {
        if self.coeffs.is_empty() || r.coeffs.is_empty() {
            return ComplexPoly::default();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + r.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in r.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ComplexPoly::new(out)
    }
}
