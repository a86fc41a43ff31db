use num_bigint::BigInt;

use crate::algebra::{find_roots, AlgebraError, IntMat2, IntPoly, Root};
use crate::chebyshev::{cheb_s, s_pair_composed};
use crate::freegroup::Word;
use crate::linkfamilies::{c_words, j_words};

/// Roots this close to `z = 2` give reducible (abelian) representations.
pub const REDUCIBLE_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct RileyData {
    pub poly: IntPoly,
    /// Roots away from `z = 2`, sorted by (re, im).
    pub roots: Vec<Root>,
    pub reducible: Vec<Root>,
}

impl RileyData {
    pub fn new(poly: IntPoly, precision: f64) -> Result<Self, AlgebraError> {
        let (reducible, roots) = find_roots(&poly, precision)?
            .into_iter()
            .partition(|r| (r.value - 2.0).norm() < REDUCIBLE_TOL);
        Ok(RileyData {
            poly,
            roots,
            reducible,
        })
    }

    pub fn nonreal(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| !r.is_real)
    }
}

fn z() -> IntPoly {
    IntPoly::x()
}

fn k(c: i64) -> IntPoly {
    IntPoly::from_i64(&[c])
}

/// `R(2, 2, z)` for `J(2m+1, 2n+1)`.
pub fn slice_poly_j(m: u32, n: u32) -> IntPoly {
    let sm = cheb_s(m as i64);
    let sm1 = cheb_s(m as i64 - 1);
    let d = (&sm - &sm1).scale(&BigInt::from(2));
    let squares = &(&sm * &sm) + &(&sm1 * &sm1);
    let v = &(&(&d * &d) - &(&z() * &squares)) + &(&sm * &sm1).scale(&BigInt::from(4));
    let (sn1, sn) = s_pair_composed(n, &v);
    &(&sm1 * &sn) - &(&sm * &sn1)
}

pub fn parabolic_slice_j(m: u32, n: u32, precision: f64) -> Result<RileyData, AlgebraError> {
    RileyData::new(slice_poly_j(m, n), precision)
}

/// `W'_21` for `C(2m, 2n, -2p)` through the entries of `V`, `V^n` and `U`.
pub fn w21_prime_c(m: u32, n: u32, p: u32) -> IntPoly {
    let sm = cheb_s(m as i64);
    let sm1 = cheb_s(m as i64 - 1);
    let zm2 = &z() - &k(2);
    let sq1 = &sm1 * &sm1;
    let v12 = &zm2 * &sq1;
    let v11 = &(&(&sm * &sm) - &(&sm * &sm1).scale(&BigInt::from(2))) + &(&(&k(3) - &z()) * &sq1);
    let v22 = &(&(&sm * &sm) + &(&(&k(2) - &z().scale(&BigInt::from(2))) * &(&sm * &sm1)))
        + &(&IntPoly::from_i64(&[3, -3, 1]) * &sq1);
    let vbar = &v11 + &v22;
    let (sn1, sn) = s_pair_composed(n, &vbar);
    let alpha = &sn - &(&v22 * &sn1);
    let beta = &v12 * &sn1;
    let ubar = &k(2) + &(&zm2 * &(&alpha * &alpha));
    let (sp1, sp) = s_pair_composed(p, &ubar);
    let first = &(&(&alpha * &alpha) * &(&sm - &sm1)) * &sp1;
    let inner = &sp + &(&(&(&zm2 * &(&alpha * &beta)) - &k(1)) * &sp1);
    &first - &(&sm1 * &inner)
}

pub fn riley_poly_c(m: u32, n: u32, p: u32, precision: f64) -> Result<RileyData, AlgebraError> {
    RileyData::new(w21_prime_c(m, n, p), precision)
}

/// `rho(w)` over `Z[z]` for the parabolic representation.
pub fn word_matrix_int(w: &Word) -> IntMat2 {
    let one = IntPoly::one;
    let zero = IntPoly::zero;
    let letters = [
        IntMat2::new(one(), one(), zero(), one()),
        IntMat2::new(one(), zero(), &k(2) - &z(), one()),
    ];
    let inverses = [letters[0].adjugate(), letters[1].adjugate()];
    w.letters().iter().fold(IntMat2::identity(), |acc, l| {
        let g = l.gen as usize;
        &acc * if l.inverse { &inverses[g] } else { &letters[g] }
    })
}

fn w21_over_2_minus_z(w: &Word) -> Option<IntPoly> {
    word_matrix_int(w).a21().div_exact(&(&k(2) - &z()))
}

/// `W_21 / (2 - z)` from the word product for `J`.
pub fn riley_j_oracle(m: u32, n: u32) -> Option<IntPoly> {
    w21_over_2_minus_z(&j_words(m, n).0)
}

/// `W_21 / (2 - z)` from the word product for `C`.
pub fn riley_c_oracle(m: u32, n: u32, p: u32) -> Option<IntPoly> {
    w21_over_2_minus_z(&c_words(m, n, p).0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn same_up_to_sign(a: &IntPoly, b: &IntPoly) -> bool {
        a == b || *a == -b
    }

    #[test]
    fn whitehead_slice() {
        let r = slice_poly_j(1, 1);
        assert_eq!(r, IntPoly::from_i64(&[4, -6, 4, -1]));
        let data = RileyData::new(r, 1e-10).unwrap();
        assert_eq!(data.reducible.len(), 1);
        let nonreal: Vec<_> = data.nonreal().map(|r| r.value).collect();
        assert_eq!(nonreal.len(), 2);
        for z in nonreal {
            assert!((z.re - 1.0).abs() < 1e-10 && (z.im.abs() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn j_slice_degrees() {
        for ((m, n), d) in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 3), (4, 4)]
            .into_iter()
            .zip([3, 6, 6, 11, 23, 39])
        {
            assert_eq!(slice_poly_j(m, n).degree(), Some(d), "m={m} n={n}");
        }
    }

    #[test]
    fn j_word_product_oracle() {
        for m in 1..=3 {
            for n in 1..=3 {
                let oracle = riley_j_oracle(m, n).expect("(2 - z) divides W_21");
                assert!(same_up_to_sign(&oracle, &slice_poly_j(m, n)), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn c_word_product_oracle() {
        for m in 1..=2 {
            for n in 1..=2 {
                for p in 1..=2 {
                    let oracle = riley_c_oracle(m, n, p).expect("(2 - z) divides W_21");
                    assert!(
                        same_up_to_sign(&oracle, &w21_prime_c(m, n, p)),
                        "({m},{n},{p})"
                    );
                }
            }
        }
    }

    #[test]
    fn c_trace_of_v() {
        for m in 1..=5u32 {
            let sm1 = cheb_s(m as i64 - 1);
            let zm2 = &z() - &k(2);
            let want = &k(2) + &(&(&zm2 * &zm2) * &(&sm1 * &sm1));
            let (_, _, v) = c_words(m, 1, 1);
            assert_eq!(word_matrix_int(&v).trace(), want);
        }
    }
}
