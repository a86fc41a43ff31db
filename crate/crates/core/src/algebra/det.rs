use std::f64::consts::TAU;

use num_complex::Complex64;

use super::{AlgebraError, LaurentPoly};

/// Relative size of interpolation noise tolerated at the off-grid check points.
const RESIDUAL_TOL: f64 = 1e-7;
/// Absolute noise floor, as a fraction of the largest Hadamard bound seen.
const NOISE_FLOOR: f64 = 1e-12;

/// Determinant of a complex matrix by LU with partial pivoting.
pub fn det_numeric(mut a: Vec<Vec<Complex64>>) -> Complex64 {
    let n = a.len();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
            .unwrap();
        if a[pivot][col].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col];
        det *= p;
        let (top, rest) = a.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in rest {
            let f = row[col] / p;
            if f == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (x, v) in row[col..n].iter_mut().zip(&pivot_row[col..n]) {
                *x -= f * v;
            }
        }
    }
    det
}

/// Determinant of a square matrix of Laurent polynomials.
///
/// The determinant times `t^-shift` (shift = sum of row minimum exponents) is
/// an ordinary polynomial; it is sampled at the `degree_bound + 1` roots of
/// unity, recovered by an inverse DFT and checked at the off-grid midpoints.
pub fn det_block(m: &[Vec<LaurentPoly>], degree_bound: usize) -> Result<LaurentPoly, AlgebraError> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(AlgebraError::NotSquare);
    }
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    let mut shift = 0i64;
    for row in m {
        match row.iter().filter(|p| !p.is_zero()).map(|p| p.lo()).min() {
            Some(lo) => shift += lo,
            None => return Ok(LaurentPoly::zero()),
        }
    }
    let samples = degree_bound + 1;
    let sample = |t: Complex64| -> (Complex64, f64) {
        let rows: Vec<Vec<Complex64>> = m
            .iter()
            .map(|row| row.iter().map(|p| p.eval(t)).collect())
            .collect();
        let hadamard: f64 = rows
            .iter()
            .map(|r| r.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt())
            .product();
        (det_numeric(rows) * t.powi(-shift as i32), hadamard)
    };
    let mut values = Vec::with_capacity(samples);
    let mut scale = 0.0f64;
    for k in 0..samples {
        let (v, h) = sample(Complex64::from_polar(1.0, TAU * k as f64 / samples as f64));
        values.push(v);
        scale = scale.max(h);
    }
    let twiddle: Vec<Complex64> = (0..samples)
        .map(|i| Complex64::from_polar(1.0, -TAU * i as f64 / samples as f64))
        .collect();
    let coeffs: Vec<Complex64> = (0..samples)
        .map(|j| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, v) in values.iter().enumerate() {
                acc += v * twiddle[(j * k) % samples];
            }
            acc / samples as f64
        })
        .collect();
    let poly = LaurentPoly::new(0, coeffs);
    for k in 0..samples.min(4) {
        let t = Complex64::from_polar(1.0, TAU * (k as f64 + 0.5) / samples as f64);
        let (want, h) = sample(t);
        scale = scale.max(h);
        let residual = (poly.eval(t) - want).norm()
            / (want.norm().max(poly.max_abs()).max(scale * NOISE_FLOOR));
        if residual > RESIDUAL_TOL {
            return Err(AlgebraError::DegreeBoundTooSmall {
                residual,
                bound: degree_bound,
            });
        }
    }
    Ok(poly
        .normalize_with_floor(0.0, scale * NOISE_FLOOR)
        .shift(shift))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(lo: i64, c: &[f64]) -> LaurentPoly {
        LaurentPoly::from_real(lo, c)
    }

    fn close(a: &LaurentPoly, b: &LaurentPoly) -> bool {
        (a - b).normalize_with_floor(0.0, 1e-12).is_zero()
    }

    #[test]
    fn small_examples() {
        let d = det_block(&[vec![lp(0, &[1.0, 1.0])]], 3).unwrap();
        assert!(close(&d, &lp(0, &[1.0, 1.0])));
        let t = lp(1, &[1.0]);
        let d = det_block(
            &[
                vec![t.clone(), LaurentPoly::zero()],
                vec![LaurentPoly::zero(), t.clone()],
            ],
            4,
        )
        .unwrap();
        assert!(close(&d, &lp(2, &[1.0])));
        let one = LaurentPoly::one();
        let d = det_block(&[vec![one.clone(), t.clone()], vec![t, one]], 4).unwrap();
        assert!(close(&d, &lp(0, &[1.0, 0.0, -1.0])));
    }

    #[test]
    fn negative_exponents() {
        let a = lp(-2, &[1.0, 3.0]);
        let b = lp(-1, &[2.0]);
        let c = lp(1, &[1.0, 0.0, 1.0]);
        let d = lp(0, &[5.0]);
        let want = &(&a * &d) - &(&b * &c);
        let got = det_block(&[vec![a, b], vec![c, d]], 6).unwrap();
        assert!(close(&got, &want));
    }

    #[test]
    fn underestimated_bound_is_detected() {
        let a = lp(0, &[1.0, 2.0, 3.0, 4.0, 5.0]);
        assert!(matches!(
            det_block(&[vec![a]], 2),
            Err(AlgebraError::DegreeBoundTooSmall { .. })
        ));
    }

    #[test]
    fn zero_row_gives_zero() {
        let m = vec![
            vec![LaurentPoly::zero(), LaurentPoly::zero()],
            vec![LaurentPoly::one(), LaurentPoly::one()],
        ];
        assert!(det_block(&m, 2).unwrap().is_zero());
    }
}
