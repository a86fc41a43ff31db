use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::chebyshev::{cheb_eval_s, ratio_t_minus_2};

/// `tr V` and `tr U` for the `C` family at the parabolic character `(2, 2, z)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceData {
    pub v_bar: Complex64,
    pub u_bar: Complex64,
}

struct Chain {
    sm: Complex64,
    sm1: Complex64,
    alpha: Complex64,
    beta: Complex64,
    v_bar: Complex64,
    u_bar: Complex64,
}

fn chain(m: u32, n: u32, z: Complex64) -> Chain {
    let sm = cheb_eval_s(m as i64, z);
    let sm1 = cheb_eval_s(m as i64 - 1, z);
    let sq1 = sm1 * sm1;
    let v11 = sm * sm - 2.0 * sm * sm1 + (3.0 - z) * sq1;
    let v12 = (z - 2.0) * sq1;
    let v22 = sm * sm + (2.0 - 2.0 * z) * sm * sm1 + (3.0 - 3.0 * z + z * z) * sq1;
    let v_bar = v11 + v22;
    let sn = cheb_eval_s(n as i64, v_bar);
    let sn1 = cheb_eval_s(n as i64 - 1, v_bar);
    let alpha = sn - v22 * sn1;
    let beta = v12 * sn1;
    let u_bar = 2.0 + (z - 2.0) * alpha * alpha;
    Chain {
        sm,
        sm1,
        alpha,
        beta,
        v_bar,
        u_bar,
    }
}

pub fn trace_data(m: u32, n: u32, z: Complex64) -> TraceData {
    let c = chain(m, n, z);
    TraceData {
        v_bar: c.v_bar,
        u_bar: c.u_bar,
    }
}

/// `W'_21(z)` evaluated numerically.
pub fn riley_c_eval(m: u32, n: u32, p: u32, z: Complex64) -> Complex64 {
    let c = chain(m, n, z);
    let sp = cheb_eval_s(p as i64, c.u_bar);
    let sp1 = cheb_eval_s(p as i64 - 1, c.u_bar);
    c.alpha * c.alpha * (c.sm - c.sm1) * sp1
        - c.sm1 * (sp + ((z - 2.0) * c.alpha * c.beta - 1.0) * sp1)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseReport {
    /// `(T_m(z)-2)/(z-2)`, `(T_n(v)-2)/(v-2)`, `(T_p(u)-2)/(u-2)`.
    pub factors: [Complex64; 3],
    pub vanishing: [bool; 3],
    pub riley_value: Complex64,
    /// Reduced form of `W'_21(z)` for each vanishing factor.
    pub reductions: [Option<Complex64>; 3],
    /// Every reduction agrees with `riley_value`.
    pub consistent: bool,
}

impl CaseReport {
    pub fn any_vanishing(&self) -> bool {
        self.vanishing.iter().any(|&v| v)
    }
}

pub fn parity_cases(m: u32, n: u32, p: u32, z: Complex64, tol: f64) -> CaseReport {
    let t = trace_data(m, n, z);
    let factors = [
        ratio_t_minus_2(m, z),
        ratio_t_minus_2(n, t.v_bar),
        ratio_t_minus_2(p, t.u_bar),
    ];
    let vanishing = factors.map(|f| f.norm() < tol);
    let riley_value = riley_c_eval(m, n, p, z);
    let reduced = [
        cheb_eval_s(p as i64 - 1, z),
        cheb_eval_s(p as i64 - m as i64 - 1, z),
        -cheb_eval_s(m as i64 - 1, z),
    ];
    let reductions = [0, 1, 2].map(|i| vanishing[i].then_some(reduced[i]));
    let consistent = reductions
        .iter()
        .flatten()
        .all(|r| (r - riley_value).norm() <= 1e-6 * (1.0 + riley_value.norm()));
    CaseReport {
        factors,
        vanishing,
        riley_value,
        reductions,
        consistent,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkfamilies::c_words;
    use crate::repvariety::{parabolic_rep, riley::w21_prime_c, word_matrix};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn numeric_chain_matches_words() {
        for (m, n, p) in [(1, 1, 1), (2, 1, 3), (3, 2, 1)] {
            let (w, u, v) = c_words(m, n, p);
            for z in [c(0.4, 0.9), c(-1.3, 0.2)] {
                let mats = parabolic_rep(z).mats();
                let t = trace_data(m, n, z);
                assert!((word_matrix(&v, &mats).trace() - t.v_bar).norm() < 1e-9);
                assert!((word_matrix(&u, &mats).trace() - t.u_bar).norm() < 1e-9 * t.u_bar.norm());
                let w21 = word_matrix(&w, &mats).a21 / (2.0 - z);
                let exact = w21_prime_c(m, n, p).eval_complex(z);
                let chain = riley_c_eval(m, n, p, z);
                assert!((chain - exact).norm() < 1e-8 * (1.0 + exact.norm()));
                assert!(
                    (w21 - exact).norm() < 1e-8 * (1.0 + exact.norm())
                        || (w21 + exact).norm() < 1e-8 * (1.0 + exact.norm())
                );
            }
        }
    }

    #[test]
    fn case_one_witness() {
        let z = c(-1.0, 0.0);
        let rep = parity_cases(3, 1, 9, z, 1e-9);
        assert!(rep.vanishing[0]);
        assert!(rep.reductions[0].unwrap().norm() < 1e-12);
        assert!(rep.riley_value.norm() < 1e-9);
        assert!(rep.consistent);
    }

    #[test]
    fn coprime_case_one_never_a_root() {
        for (m, p) in [(3, 5), (5, 3), (5, 7)] {
            for j in 1..=(m - 1) / 2 {
                let z = c(
                    2.0 * (2.0 * j as f64 * std::f64::consts::PI / m as f64).cos(),
                    0.0,
                );
                let rep = parity_cases(m, 1, p, z, 1e-9);
                assert!(rep.vanishing[0] && rep.consistent);
                assert!(rep.riley_value.norm() > 1e-3);
            }
        }
    }
}
