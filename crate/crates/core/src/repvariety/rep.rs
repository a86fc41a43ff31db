use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Character, RepError};
use crate::algebra::{ComplexPoly, Mat2};
use crate::chebyshev::cheb_eval_s;
use crate::freegroup::Word;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParabolicRep {
    pub z: Complex64,
    pub a: Mat2,
    pub b: Mat2,
}

impl ParabolicRep {
    pub fn mats(&self) -> [Mat2; 2] {
        [self.a, self.b]
    }
}

pub fn parabolic_rep(z: Complex64) -> ParabolicRep {
    ParabolicRep {
        z,
        a: Mat2::from_real(1.0, 1.0, 0.0, 1.0),
        b: Mat2::new(
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            2.0 - z,
            Complex64::new(1.0, 0.0),
        ),
    }
}

/// An eigenvalue `s` of trace `q`: `s + 1/s = q`.
fn eigen(q: Complex64) -> Complex64 {
    let s = (q + (q * q - 4.0).sqrt()) / 2.0;
    if s.norm() >= 1.0 {
        s
    } else {
        1.0 / s
    }
}

/// Upper/lower triangular representative of a character, with the two
/// off-diagonal entries scaled to the same modulus.
pub fn rep_from_character(ch: &Character, tol: f64) -> Result<[Mat2; 2], RepError> {
    let s = eigen(ch.x);
    let u = eigen(ch.y);
    let r = s / u + u / s - ch.z;
    let scale = 1.0 + (s / u).norm() + (u / s).norm();
    if r.norm() < tol * scale {
        return Err(RepError::Reducible { r: r.norm() });
    }
    let q = Complex64::new(r.norm().sqrt(), 0.0);
    let zero = Complex64::new(0.0, 0.0);
    Ok([
        Mat2::new(s, q, zero, s.inv()),
        Mat2::new(u, zero, r / q, u.inv()),
    ])
}

/// `rho(w)`; inverses are adjugates, so images should be special linear.
pub fn word_matrix(w: &Word, mats: &[Mat2]) -> Mat2 {
    let inverses: Vec<Mat2> = mats.iter().map(Mat2::adjugate).collect();
    w.letters().iter().fold(Mat2::identity(), |acc, l| {
        let g = l.gen as usize;
        acc * if l.inverse { inverses[g] } else { mats[g] }
    })
}

/// `|A W - W A| / |W|` for `W = rho(w)`.
pub fn commutation_residual(w: &Word, mats: &[Mat2]) -> f64 {
    let wm = word_matrix(w, mats);
    let a = mats[0];
    (a * wm - wm * a).norm() / wm.norm()
}

pub fn trace_v(m: u32, x: Complex64, y: Complex64, z: Complex64) -> Complex64 {
    let sm = cheb_eval_s(m as i64, z);
    let sm1 = cheb_eval_s(m as i64 - 1, z);
    (x * sm - y * sm1) * (y * sm - x * sm1) - z * (sm * sm + sm1 * sm1) + 4.0 * sm * sm1
}

/// `R(x, y, z) = S_{m-1}(z) S_n(v) - S_m(z) S_{n-1}(v)`.
pub fn char_variety_eval(m: u32, n: u32, ch: &Character) -> Complex64 {
    let v = trace_v(m, ch.x, ch.y, ch.z);
    cheb_eval_s(m as i64 - 1, ch.z) * cheb_eval_s(n as i64, v)
        - cheb_eval_s(m as i64, ch.z) * cheb_eval_s(n as i64 - 1, v)
}

fn s_pair(k: u32, q: &ComplexPoly) -> (ComplexPoly, ComplexPoly) {
    let mut prev = ComplexPoly::new(vec![]);
    let mut cur = ComplexPoly::constant(Complex64::new(1.0, 0.0));
    for _ in 0..k {
        let next = &(q * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    (prev, cur)
}

/// `R(x, y, .)` as a polynomial in `z`.
pub fn char_variety_poly_z(m: u32, n: u32, x: Complex64, y: Complex64) -> ComplexPoly {
    let z = ComplexPoly::x();
    let (sm1, sm) = s_pair(m, &z);
    let c = ComplexPoly::constant;
    let left = &(&sm * &c(x)) - &(&sm1 * &c(y));
    let right = &(&sm * &c(y)) - &(&sm1 * &c(x));
    let squares = &(&sm * &sm) + &(&sm1 * &sm1);
    let v = &(&(&left * &right) - &(&z * &squares)) + &(&sm * &sm1).scale(Complex64::new(4.0, 0.0));
    let (sn1, sn) = s_pair(n, &v);
    &(&sm1 * &sn) - &(&sm * &sn1)
}
