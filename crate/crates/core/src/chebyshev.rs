//! Chebyshev polynomials `S_k` (second kind, `S_0 = 1`, `S_1 = q`) and `T_k`
//! (first kind, `T_0 = 2`, `T_1 = q`), both with `f_{k+1} = q f_k - f_{k-1}`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::algebra::{AlgebraError, IntPoly, Mat2};

/// Below this distance from `q = 2` the ratio `(T_k(q) - 2)/(q - 2)` takes its limit `k^2`.
pub const RATIO_POLE_GUARD: f64 = 1e-7;
/// Recurrence for `|q| <= 2 + EVAL_SPLIT`, closed form outside.
pub const EVAL_SPLIT: f64 = 1e-3;

/// Cached exact `S_0..=S_max` and `T_0..=T_max`.
#[derive(Clone, Debug)]
pub struct ChebCache {
    s_polys: Vec<IntPoly>,
    t_polys: Vec<IntPoly>,
}

impl ChebCache {
    pub fn new(max: usize) -> Self {
        let q = IntPoly::x();
        let mut s_polys = vec![IntPoly::one(), q.clone()];
        let mut t_polys = vec![IntPoly::from_i64(&[2]), q.clone()];
        for k in 1..max {
            s_polys.push(&(&q * &s_polys[k]) - &s_polys[k - 1]);
            t_polys.push(&(&q * &t_polys[k]) - &t_polys[k - 1]);
        }
        s_polys.truncate(max + 1);
        t_polys.truncate(max + 1);
        ChebCache { s_polys, t_polys }
    }

    pub fn max(&self) -> usize {
        self.s_polys.len() - 1
    }

    /// `S_k` for any integer `k`; indices beyond the cache are computed on the fly.
    pub fn s(&self, k: i64) -> IntPoly {
        if k < 0 {
            return if k == -1 {
                IntPoly::zero()
            } else {
                -self.s(-k - 2)
            };
        }
        match self.s_polys.get(k as usize) {
            Some(p) => p.clone(),
            None => cheb_s(k),
        }
    }

    pub fn t(&self, k: i64) -> IntPoly {
        match self.t_polys.get(k.unsigned_abs() as usize) {
            Some(p) => p.clone(),
            None => cheb_t(k),
        }
    }
}

pub fn cheb_s(k: i64) -> IntPoly {
    if k < 0 {
        return if k == -1 {
            IntPoly::zero()
        } else {
            -cheb_s(-k - 2)
        };
    }
    let q = IntPoly::x();
    let (mut prev, mut cur) = (IntPoly::zero(), IntPoly::one());
    for _ in 0..k {
        let next = &(&q * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

pub fn cheb_t(k: i64) -> IntPoly {
    let q = IntPoly::x();
    let (mut prev, mut cur) = (q.clone(), IntPoly::from_i64(&[2]));
    for _ in 0..k.unsigned_abs() {
        let next = &(&q * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `(S_{k-1}(q), S_k(q))` for a polynomial argument `q`, `k >= 0`.
pub fn s_pair_composed(k: u32, q: &IntPoly) -> (IntPoly, IntPoly) {
    let (mut prev, mut cur) = (IntPoly::zero(), IntPoly::one());
    for _ in 0..k {
        let next = &(q * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    (prev, cur)
}

/// `v` with `v + 1/v = q` and `|v| >= 1`.
fn v_of(q: Complex64) -> Complex64 {
    let root = (q * q - 4.0).sqrt();
    let v = (q + root) / 2.0;
    if v.norm() >= 1.0 {
        v
    } else {
        (q - root) / 2.0
    }
}

pub fn cheb_eval_s(k: i64, q: Complex64) -> Complex64 {
    if k < 0 {
        return if k == -1 {
            Complex64::new(0.0, 0.0)
        } else {
            -cheb_eval_s(-k - 2, q)
        };
    }
    if (q - 2.0).norm() == 0.0 {
        return Complex64::new((k + 1) as f64, 0.0);
    }
    if (q + 2.0).norm() == 0.0 {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        return Complex64::new(sign * (k + 1) as f64, 0.0);
    }
    if q.norm() <= 2.0 + EVAL_SPLIT {
        let (mut prev, mut cur) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
        for _ in 0..k {
            let next = q * cur - prev;
            prev = cur;
            cur = next;
        }
        cur
    } else {
        let v = v_of(q);
        let vi = v.inv();
        (v.powi(k as i32 + 1) - vi.powi(k as i32 + 1)) / (v - vi)
    }
}

pub fn cheb_eval_t(k: i64, q: Complex64) -> Complex64 {
    let k = k.abs();
    if q.norm() <= 2.0 + EVAL_SPLIT {
        let (mut prev, mut cur) = (q, Complex64::new(2.0, 0.0));
        for _ in 0..k {
            let next = q * cur - prev;
            prev = cur;
            cur = next;
        }
        cur
    } else {
        let v = v_of(q);
        v.powi(k as i32) + v.inv().powi(k as i32)
    }
}

/// The `k` roots `2 cos(j pi/(k+1))` of `S_k`, in decreasing order.
pub fn roots_s(k: usize) -> Vec<f64> {
    (1..=k)
        .map(|j| 2.0 * (j as f64 * PI / (k + 1) as f64).cos())
        .collect()
}

/// Roots of `T_k - 2` with multiplicity.
pub fn roots_t_minus_2(k: usize) -> Vec<(f64, u32)> {
    let mut out = vec![(2.0, 1)];
    if k % 2 == 0 {
        out.push((-2.0, 1));
    }
    for j in 1..k.div_ceil(2) {
        out.push((2.0 * (2.0 * j as f64 * PI / k as f64).cos(), 2));
    }
    out
}

/// Roots of `T_k - q` following the two parity cases of the factorization.
///
/// For `k = 1` the odd-case product degenerates (`T_1 - q` is identically
/// zero) and the formula's two linear factors `{2, -2}` are returned.
pub fn roots_t_minus_q(k: usize) -> Vec<f64> {
    let mut out = vec![2.0];
    let (lower, upper) = if k % 2 == 1 {
        out.push(-2.0);
        ((k as i64 - 3) / 2, (k as i64 - 1) / 2)
    } else {
        ((k as i64 - 2) / 2, k as i64 / 2)
    };
    for j in 1..=lower {
        out.push(2.0 * (2.0 * j as f64 * PI / (k - 1) as f64).cos());
    }
    for j in 1..=upper {
        out.push(2.0 * (2.0 * j as f64 * PI / (k + 1) as f64).cos());
    }
    out
}

/// `(T_k(q) - 2)/(q - 2)`, equal to `S_{k-1}(w)^2` with `w^2 = q + 2`.
pub fn ratio_t_minus_2(k: u32, q: Complex64) -> Complex64 {
    if (q - 2.0).norm() < RATIO_POLE_GUARD {
        return Complex64::new((k as f64) * (k as f64), 0.0);
    }
    let s = cheb_eval_s(k as i64 - 1, (q + 2.0).sqrt());
    s * s
}

/// `Q^k` for special-linear `Q`, from `S_k(tr Q)` and `S_{k-1}(tr Q)`.
pub fn sl2_power(q: &Mat2, k: u32, tol: f64) -> Result<Mat2, AlgebraError> {
    q.check_special_linear(tol)?;
    let tr = q.trace();
    let sk = cheb_eval_s(k as i64, tr);
    let sk1 = cheb_eval_s(k as i64 - 1, tr);
    Ok(Mat2::new(
        sk - q.a22 * sk1,
        q.a12 * sk1,
        q.a21 * sk1,
        sk - q.a11 * sk1,
    ))
}

/// Checks `S_k S_{l-1} - S_{k-1} S_l = S_{l-k-1}` exactly and returns the right side.
pub fn cheb_cross_identity(k: i64, l: i64) -> IntPoly {
    let lhs = &(&cheb_s(k) * &cheb_s(l - 1)) - &(&cheb_s(k - 1) * &cheb_s(l));
    let rhs = cheb_s(l - k - 1);
    assert_eq!(
        lhs, rhs,
        "S_k S_(l-1) - S_(k-1) S_l != S_(l-k-1) at k={k}, l={l}"
    );
    rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn small_polys() {
        assert_eq!(cheb_s(0), IntPoly::one());
        assert_eq!(cheb_s(1), IntPoly::x());
        assert_eq!(cheb_s(-1), IntPoly::zero());
        assert_eq!(cheb_s(3), IntPoly::from_i64(&[0, -2, 0, 1]));
        assert_eq!(cheb_s(-4), -cheb_s(2));
        assert_eq!(cheb_t(0), IntPoly::from_i64(&[2]));
        assert_eq!(cheb_t(2), IntPoly::from_i64(&[-2, 0, 1]));
        assert_eq!(cheb_t(-3), cheb_t(3));
        assert_eq!(cheb_t(3).eval_int(&2.into()), 2.into());
    }

    #[test]
    fn cache_matches_direct() {
        let cache = ChebCache::new(12);
        for k in -14..20 {
            assert_eq!(cache.s(k), cheb_s(k), "S_{k}");
            assert_eq!(cache.t(k), cheb_t(k), "T_{k}");
        }
    }

    #[test]
    fn numeric_special_values() {
        assert_eq!(cheb_eval_s(5, c(2.0)), c(6.0));
        assert_eq!(cheb_eval_s(4, c(-2.0)), c(5.0));
        assert!(cheb_eval_s(2, c(1.0)).norm() < 1e-15);
        let q = Complex64::new(3.5, -1.25);
        let exact = cheb_s(9).eval_complex(q);
        assert!((cheb_eval_s(9, q) - exact).norm() < 1e-10 * exact.norm());
        let exact = cheb_t(7).eval_complex(q);
        assert!((cheb_eval_t(7, q) - exact).norm() < 1e-10 * exact.norm());
    }

    #[test]
    fn root_lists() {
        assert_eq!(roots_s(1).len(), 1);
        assert!(roots_s(1)[0].abs() < 1e-15);
        let r = roots_s(3);
        assert!(
            (r[0] - 2f64.sqrt()).abs() < 1e-14
                && r[1].abs() < 1e-14
                && (r[2] + 2f64.sqrt()).abs() < 1e-14
        );
        assert_eq!(roots_t_minus_2(1), vec![(2.0, 1)]);
        assert_eq!(roots_t_minus_2(2), vec![(2.0, 1), (-2.0, 1)]);
        let r3 = roots_t_minus_2(3);
        assert_eq!(r3.len(), 2);
        assert!((r3[1].0 + 1.0).abs() < 1e-14 && r3[1].1 == 2);
        assert_eq!(roots_t_minus_q(1), vec![2.0, -2.0]);
        let r = roots_t_minus_q(2);
        assert!(r.len() == 2 && (r[1] + 1.0).abs() < 1e-14);
        let r = roots_t_minus_q(3);
        assert!(r.len() == 3 && r[2].abs() < 1e-15);
    }

    #[test]
    fn ratio_values() {
        assert!((ratio_t_minus_2(2, c(0.0)) - c(2.0)).norm() < 1e-14);
        assert_eq!(ratio_t_minus_2(3, c(2.0)), c(9.0));
        assert!((ratio_t_minus_2(1, Complex64::new(0.3, 4.0)) - c(1.0)).norm() < 1e-14);
    }

    #[test]
    fn powers() {
        let id = sl2_power(&Mat2::identity(), 5, 1e-10).unwrap();
        assert_eq!(id, Mat2::identity());
        let p = sl2_power(&Mat2::from_real(1.0, 1.0, 0.0, 1.0), 3, 1e-10).unwrap();
        assert_eq!(p, Mat2::from_real(1.0, 3.0, 0.0, 1.0));
        assert!(sl2_power(&Mat2::from_real(2.0, 0.0, 0.0, 2.0), 2, 1e-10).is_err());
    }

    #[test]
    fn composed_pairs() {
        let q = IntPoly::from_i64(&[1, 0, 2]);
        let (s4, s5) = s_pair_composed(5, &q);
        assert_eq!(s5, cheb_s(5).compose(&q));
        assert_eq!(s4, cheb_s(4).compose(&q));
        assert_eq!(s_pair_composed(0, &q), (IntPoly::zero(), IntPoly::one()));
    }

    #[test]
    fn cross_identity_examples() {
        assert_eq!(cheb_cross_identity(0, 1), IntPoly::one());
        assert_eq!(cheb_cross_identity(1, 3), IntPoly::x());
        assert_eq!(cheb_cross_identity(4, 4), IntPoly::zero());
    }
}
