use std::f64::consts::TAU;

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_traits::{FromPrimitive, ToPrimitive, Zero};
use rayon::prelude::*;

use super::{AlgebraError, ComplexPoly, IntPoly};

/// Roots with `|im| < REALITY_THRESHOLD * (1 + |r|)` are flagged real.
pub const REALITY_THRESHOLD: f64 = 1e-8;
const MAX_ITER: usize = 500;
const POLISH_STEPS: usize = 3;
/// Cap for the adaptive evaluation precision.
const MAX_WORKING_BITS: u64 = 1 << 17;
const DYADIC_SPAN: i64 = 1100;

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Root {
    pub value: Complex64,
    pub multiplicity: u32,
    pub is_real: bool,
}

/// All complex roots of an integer polynomial.
///
/// Each squarefree factor of the Yun decomposition is solved by Aberth
/// iteration; Newton corrections are evaluated at the dyadic rational nearest
/// the current iterate in big-float arithmetic carrying the coefficient height
/// plus 192 bits, doubled whenever cancellation leaves fewer than 64 bits. Roots come back sorted by (re, im).
pub fn find_roots(p: &IntPoly, precision: f64) -> Result<Vec<Root>, AlgebraError> {
    match p.degree() {
        None => return Err(AlgebraError::ZeroPolynomial),
        Some(0) => return Err(AlgebraError::ConstantPolynomial),
        _ => {}
    }
    let mut out = Vec::new();
    for (factor, mult) in p.squarefree_decomposition() {
        if factor.degree().unwrap_or(0) == 0 {
            continue;
        }
        let wide = WidePoly::new(&factor);
        let approx = aberth(
            factor.degree().unwrap(),
            &initial_guesses_int(&factor),
            |z| wide.newton_ratio(z),
        )?;
        let polished: Vec<Complex64> = approx.into_par_iter().map(|z| polish(z, &wide)).collect();
        for mut z in conjugate_pairs(polished)? {
            if z.1 {
                z.0 = polish(z.0, &wide);
            }
            let ratio = wide.residual_ratio(z.0);
            if ratio.is_nan() || ratio >= precision {
                return Err(AlgebraError::ResidualTooLarge {
                    root: z.0,
                    ratio,
                    precision,
                });
            }
            out.push(Root {
                value: z.0,
                multiplicity: mult,
                is_real: z.1,
            });
        }
    }
    sort_roots(&mut out);
    Ok(out)
}

/// All roots of a complex-coefficient polynomial. The coefficients are exact
/// dyadic rationals, so they are scaled to Gaussian integers and solved like
/// [`find_roots`] without multiplicity detection: every root is reported
/// once, multiplicity 1.
pub fn find_roots_complex(p: &ComplexPoly, precision: f64) -> Result<Vec<Root>, AlgebraError> {
    let d = match p.degree() {
        None => return Err(AlgebraError::ZeroPolynomial),
        Some(0) => return Err(AlgebraError::ConstantPolynomial),
        Some(d) => d,
    };
    let wide = WidePoly::from_complex(&p.coeffs()[..=d]);
    let start = initial_guesses(
        &p.coeffs()[..=d]
            .iter()
            .map(|c| c.norm())
            .collect::<Vec<_>>(),
    );
    let roots = aberth(d, &start, |z| wide.newton_ratio(z))?;
    let mut out = Vec::with_capacity(d);
    for z in roots
        .into_par_iter()
        .map(|z| polish(z, &wide))
        .collect::<Vec<_>>()
    {
        let ratio = wide.residual_ratio(z);
        if ratio.is_nan() || ratio >= precision {
            return Err(AlgebraError::ResidualTooLarge {
                root: z,
                ratio,
                precision,
            });
        }
        out.push(Root {
            value: z,
            multiplicity: 1,
            is_real: z.im.abs() < REALITY_THRESHOLD * (1.0 + z.norm()),
        });
    }
    sort_roots(&mut out);
    Ok(out)
}

fn sort_roots(roots: &mut [Root]) {
    roots.sort_by(|a, b| {
        a.value
            .re
            .total_cmp(&b.value.re)
            .then(a.value.im.total_cmp(&b.value.im))
    });
}

fn initial_guesses_int(p: &IntPoly) -> Vec<Complex64> {
    let mags: Vec<f64> = p.coeffs().iter().map(log2_abs).collect();
    initial_guesses_log(&mags)
}

fn initial_guesses(abs_coeffs: &[f64]) -> Vec<Complex64> {
    let logs: Vec<f64> = abs_coeffs
        .iter()
        .map(|c| {
            if *c > 0.0 {
                c.log2()
            } else {
                f64::NEG_INFINITY
            }
        })
        .collect();
    initial_guesses_log(&logs)
}

/// Points on circles whose radii come from the upper convex hull of the
/// Newton polygon (log2 |c_k| against k).
fn initial_guesses_log(logs: &[f64]) -> Vec<Complex64> {
    let pts: Vec<(usize, f64)> = logs
        .iter()
        .enumerate()
        .filter(|(_, l)| l.is_finite())
        .map(|(k, l)| (k, *l))
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let (k1, l1) = hull[hull.len() - 2];
            let (k2, l2) = hull[hull.len() - 1];
            let cross = (k2 - k1) as f64 * (p.1 - l1) - (l2 - l1) * (p.0 - k1) as f64;
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let d = logs.len() - 1;
    let mut out = Vec::with_capacity(d);
    // a zero constant term contributes roots at the origin; place them nearby
    let lowest = hull[0].0;
    for i in 0..lowest {
        out.push(Complex64::from_polar(
            1e-3,
            TAU * i as f64 / lowest as f64 + 0.3,
        ));
    }
    for w in hull.windows(2) {
        let (k1, l1) = w[0];
        let (k2, l2) = w[1];
        let count = k2 - k1;
        let radius = ((l1 - l2) / count as f64).exp2();
        for i in 0..count {
            let angle = TAU * i as f64 / count as f64 + TAU * k1 as f64 / d as f64 + 0.4;
            out.push(Complex64::from_polar(radius, angle));
        }
    }
    out
}

/// Jacobi-style Aberth iteration; `ratio` returns p(z)/p'(z).
fn aberth<F>(d: usize, start: &[Complex64], ratio: F) -> Result<Vec<Complex64>, AlgebraError>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    debug_assert_eq!(start.len(), d);
    let mut z = start.to_vec();
    let mut done = vec![false; d];
    let mut last = vec![f64::INFINITY; d];
    for _ in 0..MAX_ITER {
        let steps: Vec<Option<Complex64>> = (0..d)
            .into_par_iter()
            .map(|i| {
                if done[i] {
                    return None;
                }
                let n = ratio(z[i]);
                let mut repulsion = Complex64::new(0.0, 0.0);
                for (j, zj) in z.iter().enumerate() {
                    if j != i {
                        repulsion += (z[i] - zj).inv();
                    }
                }
                let w = n / (Complex64::new(1.0, 0.0) - n * repulsion);
                Some(if w.is_finite() {
                    w
                } else if n.is_finite() {
                    n
                } else {
                    Complex64::new(1e-3 * (1.0 + z[i].norm()), 1e-3)
                })
            })
            .collect();
        for (i, s) in steps.into_iter().enumerate() {
            if let Some(w) = s {
                z[i] -= w;
                let size = w.norm();
                let stalled = size > 0.5 * last[i] && size < 1e-10 * (1.0 + z[i].norm());
                if size <= 4.0 * f64::EPSILON * z[i].norm() || size < 1e-300 || stalled {
                    done[i] = true;
                }
                last[i] = size;
            }
        }
        if done.iter().all(|d| *d) {
            return Ok(z);
        }
    }
    Err(AlgebraError::NonConvergence {
        iterations: MAX_ITER,
        unconverged: done.iter().filter(|d| !**d).count(),
    })
}

fn polish(mut z: Complex64, wide: &WidePoly) -> Complex64 {
    for _ in 0..POLISH_STEPS {
        let step = wide.newton_ratio(z);
        if !step.is_finite() || step.norm() == 0.0 {
            break;
        }
        z -= step;
    }
    z
}

/// Snaps near-real roots onto the axis and replaces each lower half-plane
/// root by the conjugate of an upper one.
fn conjugate_pairs(roots: Vec<Complex64>) -> Result<Vec<(Complex64, bool)>, AlgebraError> {
    let mut real = Vec::new();
    let mut upper = Vec::new();
    let mut lower = 0usize;
    for z in roots {
        if z.im.abs() < REALITY_THRESHOLD * (1.0 + z.norm()) {
            real.push((Complex64::new(z.re, 0.0), true));
        } else if z.im > 0.0 {
            upper.push(z);
        } else {
            lower += 1;
        }
    }
    if upper.len() != lower {
        return Err(AlgebraError::ConjugateMismatch {
            upper: upper.len(),
            lower,
        });
    }
    let mut out = real;
    for z in upper {
        out.push((z, false));
        out.push((z.conj(), false));
    }
    Ok(out)
}

fn log2_abs(c: &BigInt) -> f64 {
    if c.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = c.bits();
    let shift = bits.saturating_sub(60);
    let top = (c.magnitude() >> shift).to_f64().unwrap_or(f64::MAX);
    top.log2() + shift as f64
}

/// A big integer as `mantissa * 2^exp`.
fn split(c: &BigInt, shift: u64) -> f64 {
    let m = (c.magnitude() >> shift).to_f64().unwrap_or(0.0);
    if c.sign() == Sign::Minus {
        -m
    } else {
        m
    }
}

/// Gaussian big-float `(re + i im) 2^exp` whose mantissa is kept to a fixed
/// number of bits.
#[derive(Clone)]
struct Gauss {
    re: BigInt,
    im: BigInt,
    exp: i64,
}

impl Gauss {
    fn int(c: &(BigInt, BigInt)) -> Self {
        Gauss {
            re: c.0.clone(),
            im: c.1.clone(),
            exp: 0,
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn bits(&self) -> u64 {
        self.re.bits().max(self.im.bits())
    }

    /// `floor(log2 |value|)` up to one bit; very negative for zero.
    fn magnitude(&self) -> i64 {
        if self.is_zero() {
            return i64::MIN / 4;
        }
        self.bits() as i64 + self.exp
    }

    /// Times `(zr + i zi) 2^-e`.
    fn mul_dyadic(&self, zr: &BigInt, zi: &BigInt, e: u32) -> Self {
        Gauss {
            re: &self.re * zr - &self.im * zi,
            im: &self.re * zi + &self.im * zr,
            exp: self.exp - e as i64,
        }
    }

    fn add(&self, other: &Gauss) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (lo, hi) = if self.exp <= other.exp {
            (self, other)
        } else {
            (other, self)
        };
        let shift = (hi.exp - lo.exp) as usize;
        Gauss {
            re: &lo.re + (&hi.re << shift),
            im: &lo.im + (&hi.im << shift),
            exp: lo.exp,
        }
    }

    fn truncate(mut self, precision: u64) -> Self {
        let bits = self.bits();
        if bits > precision {
            let s = bits - precision;
            self.re >>= s as usize;
            self.im >>= s as usize;
            self.exp += s as i64;
        }
        self
    }

    /// Value as (f64 complex, binary exponent).
    fn approx(&self) -> (Complex64, i64) {
        let shift = self.bits().saturating_sub(60);
        (
            Complex64::new(split(&self.re, shift), split(&self.im, shift)),
            shift as i64 + self.exp,
        )
    }
}

/// Polynomial with Gaussian integer coefficients `(re, im)`.
struct WidePoly {
    coeffs: Vec<(BigInt, BigInt)>,
    log_abs: Vec<f64>,
    /// Mantissa bits kept during evaluation.
    precision: u64,
}

impl WidePoly {
    fn new(p: &IntPoly) -> Self {
        Self::gaussian(
            p.coeffs()
                .iter()
                .map(|c| (c.clone(), BigInt::zero()))
                .collect(),
        )
    }

    /// Coefficients times a common power of two. Parts more than
    /// [`DYADIC_SPAN`] bits below the largest are dropped.
    fn from_complex(c: &[Complex64]) -> Self {
        let parts: Vec<f64> = c.iter().flat_map(|z| [z.re, z.im]).collect();
        let top = parts.iter().map(|v| v.abs()).fold(0.0, f64::max);
        let floor = top.log2().floor() as i64 - DYADIC_SPAN;
        let exact = |v: f64| -> (BigInt, i64) {
            if v == 0.0 || !v.is_finite() || (v.abs().log2().floor() as i64) < floor {
                return (BigInt::zero(), i64::MAX);
            }
            let (mantissa, exp, sign) = num_traits::Float::integer_decode(v);
            (BigInt::from(mantissa) * sign as i64, exp as i64)
        };
        let decoded: Vec<(BigInt, i64)> = parts.iter().map(|v| exact(*v)).collect();
        let low = decoded.iter().map(|d| d.1).min().unwrap_or(0).min(0);
        let scaled: Vec<BigInt> = decoded
            .into_iter()
            .map(|(m, e)| {
                if m.is_zero() {
                    m
                } else {
                    m << (e - low) as usize
                }
            })
            .collect();
        Self::gaussian(
            scaled
                .chunks(2)
                .map(|p| (p[0].clone(), p[1].clone()))
                .collect(),
        )
    }

    fn gaussian(coeffs: Vec<(BigInt, BigInt)>) -> Self {
        let height = coeffs
            .iter()
            .map(|c| c.0.bits().max(c.1.bits()))
            .max()
            .unwrap_or(0);
        let log_abs = coeffs
            .iter()
            .map(|(re, im)| {
                let (a, b) = (log2_abs(re), log2_abs(im));
                let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
                hi + 0.5 * (1.0 + (2.0 * (lo - hi)).exp2()).log2()
            })
            .collect();
        let precision = height + 2 * (64 - (coeffs.len() as u64).leading_zeros() as u64) + 192;
        WidePoly {
            coeffs,
            log_abs,
            precision,
        }
    }

    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Dyadic representation `Z / 2^e` of `z` with about 60 significant bits.
    fn dyadic(z: Complex64) -> (BigInt, BigInt, u32) {
        let m = z.re.abs().max(z.im.abs());
        let e = if m > 0.0 {
            (60 - m.log2().floor() as i64).clamp(0, 1000)
        } else {
            60
        } as i32;
        let scale = 2f64.powi(e);
        let re = BigInt::from_f64((z.re * scale).round()).unwrap_or_default();
        let im = BigInt::from_f64((z.im * scale).round()).unwrap_or_default();
        (re, im, e as u32)
    }

    /// `(p(z), p'(z))` at the dyadic point, mantissas truncated to `precision`
    /// bits after every step. Also returns the fewest significant bits left
    /// in either result, from a running log2 bound on the propagated
    /// truncation error.
    fn horner_at(&self, zr: &BigInt, zi: &BigInt, e: u32, precision: u64) -> (Gauss, Gauss, i64) {
        let d = self.degree();
        let log_z = {
            let (zv, ze) = Gauss {
                re: zr.clone(),
                im: zi.clone(),
                exp: -(e as i64),
            }
            .approx();
            zv.norm().log2() + ze as f64
        };
        let grow = |err: f64, fresh: f64| {
            let carried = err + log_z;
            let (hi, lo) = if carried > fresh {
                (carried, fresh)
            } else {
                (fresh, carried)
            };
            hi + (1.0 + (lo - hi).exp2()).log2()
        };
        let p = precision as f64;
        let mut acc = Gauss::int(&self.coeffs[d]);
        let mut dacc = Gauss::int(&(BigInt::zero(), BigInt::zero()));
        let (mut err, mut derr) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for k in (0..d).rev() {
            dacc = dacc.mul_dyadic(zr, zi, e).add(&acc).truncate(precision);
            derr = grow(derr, err.max(dacc.magnitude() as f64 - p));
            acc = acc
                .mul_dyadic(zr, zi, e)
                .add(&Gauss::int(&self.coeffs[k]))
                .truncate(precision);
            err = grow(err, acc.magnitude() as f64 - p);
        }
        let left = |g: &Gauss, err: f64| {
            if err == f64::NEG_INFINITY {
                i64::MAX
            } else {
                g.magnitude() - err.ceil() as i64
            }
        };
        let kept = left(&acc, err).min(if d > 0 { left(&dacc, derr) } else { i64::MAX });
        (acc, dacc, kept)
    }

    /// [`horner_at`](Self::horner_at), doubling the working precision until
    /// 64 significant bits survive (an exact zero ends the search).
    fn horner(&self, zr: &BigInt, zi: &BigInt, e: u32) -> (Gauss, Gauss) {
        let mut precision = self.precision;
        loop {
            let (p, dp, kept) = self.horner_at(zr, zi, e, precision);
            if kept >= 64 || p.is_zero() || precision > MAX_WORKING_BITS {
                return (p, dp);
            }
            precision *= 2;
        }
    }

    fn newton_ratio(&self, z: Complex64) -> Complex64 {
        let (zr, zi, e) = Self::dyadic(z);
        let (p, dp) = self.horner(&zr, &zi, e);
        if dp.is_zero() {
            return Complex64::new(f64::INFINITY, 0.0);
        }
        let (pv, pe) = p.approx();
        let (dv, de) = dp.approx();
        (pv / dv) * 2f64.powi((pe - de).clamp(-1000, 1000) as i32)
    }

    /// `|p(z)| / sum |c_k| |z|^k`, both sides in log2 to survive large degree.
    fn residual_ratio(&self, z: Complex64) -> f64 {
        let (zr, zi, e) = Self::dyadic(z);
        let (p, _) = self.horner(&zr, &zi, e);
        if p.is_zero() {
            return 0.0;
        }
        let (pv, pe) = p.approx();
        let log_p = pv.norm().log2() + pe as f64;
        let log_r = z.norm().log2();
        let terms: Vec<f64> = self
            .log_abs
            .iter()
            .enumerate()
            .filter(|(_, l)| l.is_finite())
            .map(|(k, l)| l + k as f64 * log_r)
            .collect();
        let top = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let log_scale = top + terms.iter().map(|t| (t - top).exp2()).sum::<f64>().log2();
        (log_p - log_scale).exp2()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn has(roots: &[Root], z: Complex64, mult: u32) -> bool {
        roots
            .iter()
            .any(|r| (r.value - z).norm() < 1e-12 && r.multiplicity == mult)
    }

    #[test]
    fn quadratic() {
        let r = find_roots(&ip(&[2, -2, 1]), 1e-10).unwrap();
        assert_eq!(r.len(), 2);
        assert!(has(&r, Complex64::new(1.0, 1.0), 1));
        assert!(has(&r, Complex64::new(1.0, -1.0), 1));
        assert!(r.iter().all(|x| !x.is_real));
    }

    #[test]
    fn linear_and_cubic() {
        let r = find_roots(&ip(&[-2, 1]), 1e-10).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].is_real && r[0].value == Complex64::new(2.0, 0.0));
        let r = find_roots(&ip(&[-4, 6, -4, 1]), 1e-10).unwrap();
        assert_eq!(r.len(), 3);
        assert!(has(&r, Complex64::new(2.0, 0.0), 1));
        assert!(has(&r, Complex64::new(1.0, 1.0), 1));
    }

    #[test]
    fn multiplicities_from_yun() {
        // (z - 1)^3 (z + 2)^2 z
        let p = &(&ip(&[-1, 1]).pow(3) * &ip(&[2, 1]).pow(2)) * &ip(&[0, 1]);
        let r = find_roots(&p, 1e-10).unwrap();
        assert!(has(&r, Complex64::new(1.0, 0.0), 3));
        assert!(has(&r, Complex64::new(-2.0, 0.0), 2));
        assert!(has(&r, Complex64::new(0.0, 0.0), 1));
        assert_eq!(r.iter().map(|x| x.multiplicity).sum::<u32>(), 6);
    }

    #[test]
    fn wilkinson_twenty() {
        let mut p = IntPoly::one();
        for k in 1..=20 {
            p = &p * &ip(&[-k, 1]);
        }
        let r = find_roots(&p, 1e-10).unwrap();
        assert_eq!(r.len(), 20);
        for (i, root) in r.iter().enumerate() {
            assert!(root.is_real);
            assert!((root.value.re - (i + 1) as f64).abs() < 1e-10);
        }
    }

    #[test]
    fn rejects_constants() {
        assert_eq!(
            find_roots(&IntPoly::zero(), 1e-10),
            Err(AlgebraError::ZeroPolynomial)
        );
        assert_eq!(
            find_roots(&ip(&[3]), 1e-10),
            Err(AlgebraError::ConstantPolynomial)
        );
    }

    #[test]
    fn complex_coefficients() {
        // (z - i)(z - 2)
        let p = ComplexPoly::new(vec![
            Complex64::new(0.0, 2.0),
            Complex64::new(-2.0, -1.0),
            Complex64::new(1.0, 0.0),
        ]);
        let r = find_roots_complex(&p, 1e-10).unwrap();
        assert_eq!(r.len(), 2);
        assert!(has(&r, Complex64::new(0.0, 1.0), 1));
        assert!(has(&r, Complex64::new(2.0, 0.0), 1));
    }
}
