use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::AlgebraError;

/// Complex Laurent polynomial `sum_i coeffs[i] t^(lo + i)`.
///
/// After [`LaurentPoly::normalize`] the first and last stored coefficients are
/// nonzero; the zero polynomial has no coefficients (and `lo == 0`).
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct LaurentPoly {
    lo: i64,
    coeffs: Vec<Complex64>,
}

impl Default for LaurentPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            lo: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(Complex64::new(1.0, 0.0), 0)
    }

    pub fn monomial(c: Complex64, exp: i64) -> Self {
        Self::new(exp, vec![c])
    }

    /// Builds without thresholding; exact zeros at either end are trimmed.
    pub fn new(lo: i64, coeffs: Vec<Complex64>) -> Self {
        let mut p = LaurentPoly { lo, coeffs };
        p.trim_exact();
        p
    }

    pub fn from_real(lo: i64, coeffs: &[f64]) -> Self {
        Self::new(lo, coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    fn trim_exact(&mut self) {
        while self
            .coeffs
            .last()
            .is_some_and(|c| *c == Complex64::new(0.0, 0.0))
        {
            self.coeffs.pop();
        }
        let lead = self
            .coeffs
            .iter()
            .take_while(|c| **c == Complex64::new(0.0, 0.0))
            .count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.lo = 0;
            return;
        }
        self.coeffs.drain(..lead);
        self.lo += lead as i64;
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest stored exponent (`None` for zero).
    pub fn hi(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then(|| self.lo + self.coeffs.len() as i64 - 1)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> Complex64 {
        let i = exp - self.lo;
        if i < 0 {
            return Complex64::new(0.0, 0.0);
        }
        self.coeffs
            .get(i as usize)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn span(&self) -> Option<i64> {
        self.hi().map(|h| h - self.lo)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, t: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc * t.powi(self.lo as i32)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.lo, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            lo: self.lo + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Zero every coefficient below `relative_threshold * max|coeff|` and trim.
    pub fn normalize(&self, relative_threshold: f64) -> Self {
        self.normalize_with_floor(relative_threshold, 0.0)
    }

    /// As [`normalize`](Self::normalize), additionally zeroing everything
    /// below the absolute `floor`.
    pub fn normalize_with_floor(&self, relative_threshold: f64, floor: f64) -> Self {
        let cut = (relative_threshold * self.max_abs()).max(floor);
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                if c.norm() < cut {
                    Complex64::new(0.0, 0.0)
                } else {
                    *c
                }
            })
            .collect();
        Self::new(self.lo, coeffs)
    }

    /// Quotient `Q` with `num = den * Q` up to relative residual `tol`
    /// (max-coefficient norm), dividing from the top coefficient down.
    pub fn divide_exact(&self, den: &LaurentPoly, tol: f64) -> Result<LaurentPoly, AlgebraError> {
        let (Some(dhi), Some(_)) = (den.hi(), den.span()) else {
            return Err(AlgebraError::DivisionByZero);
        };
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let nhi = self.hi().expect("nonzero");
        let qhi = nhi - dhi;
        let qlo = self.lo - den.lo;
        if qhi < qlo {
            return Err(AlgebraError::InexactDivision { residual: 1.0, tol });
        }
        let dlead = den.coeffs[den.coeffs.len() - 1];
        let qlen = (qhi - qlo + 1) as usize;
        let mut rem = self.coeffs.clone();
        // rem index i holds exponent self.lo + i
        let mut quot = vec![Complex64::new(0.0, 0.0); qlen];
        for k in (0..qlen).rev() {
            // quotient exponent qlo + k pairs den's top with rem exponent qlo + k + dhi
            let ri = (qlo + k as i64 + dhi - self.lo) as usize;
            let q = rem[ri] / dlead;
            quot[k] = q;
            for (j, dc) in den.coeffs.iter().enumerate() {
                let idx = ri as i64 - (den.coeffs.len() as i64 - 1) + j as i64;
                if idx >= 0 {
                    rem[idx as usize] -= q * dc;
                }
            }
        }
        let quotient = LaurentPoly::new(qlo, quot);
        let back = den * &quotient;
        let residual = (self - &back).max_abs() / self.max_abs();
        if residual < tol {
            Ok(quotient)
        } else {
            Err(AlgebraError::InexactDivision { residual, tol })
        }
    }

    /// Coefficient map `exponent -> [re, im]` for reports.
    pub fn to_map(&self) -> std::collections::BTreeMap<i64, [f64; 2]> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != Complex64::new(0.0, 0.0))
            .map(|(i, c)| (self.lo + i as i64, [c.re, c.im]))
            .collect()
    }

    /// Inverse of [`to_map`](Self::to_map).
    pub fn from_map(map: &std::collections::BTreeMap<i64, [f64; 2]>) -> Self {
        let (Some((&lo, _)), Some((&hi, _))) = (map.first_key_value(), map.last_key_value()) else {
            return Self::zero();
        };
        let mut coeffs = vec![Complex64::new(0.0, 0.0); (hi - lo + 1) as usize];
        for (e, [re, im]) in map {
            coeffs[(e - lo) as usize] = Complex64::new(*re, *im);
        }
        Self::new(lo, coeffs)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(rhs.lo);
        let hi = self.hi().unwrap().max(rhs.hi().unwrap());
        let coeffs = (lo..=hi).map(|e| self.coeff(e) + rhs.coeff(e)).collect();
        LaurentPoly::new(lo, coeffs)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly::new(self.lo + rhs.lo, coeffs)
    }
}
