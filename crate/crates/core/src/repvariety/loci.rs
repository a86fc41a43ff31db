use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{char_variety_eval, trace_v, Character, RepError};
use crate::algebra::{find_roots_complex, ComplexPoly};
use crate::chebyshev::cheb_eval_s;
use crate::linkfamilies::{FamilyKind, FamilySpec, Orientation};

/// Absolute tolerance on each defining equation.
pub const LOCUS_TOL: f64 = 1e-7;

/// Exceptional subsets of the `J` character variety. Unprimed loci belong to
/// the default orientation, primed ones to the flipped one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "tag")]
pub enum LocusLabel {
    Y,
    Yjk { j: u32, k: u32 },
    Zl { l: u32 },
    Zjk { j: u32, k: u32 },
    Yprime,
    Ypjk { j: u32, k: u32 },
    ZprimeL { l: u32 },
    Zpjk { j: u32, k: u32 },
}

impl LocusLabel {
    /// Value of the extreme-coefficient factor on this locus: 0 where the
    /// degree drops, 1 where the polynomial turns monic. `Y` and `Y'` switch
    /// role with the parity of `m` and `n` respectively.
    pub fn target_factor(&self, f: &FamilySpec) -> f64 {
        match self {
            LocusLabel::Y => (f.m % 2) as f64,
            LocusLabel::Yprime => (f.n % 2) as f64,
            LocusLabel::Yjk { .. } | LocusLabel::Ypjk { .. } => 0.0,
            LocusLabel::Zl { .. }
            | LocusLabel::Zjk { .. }
            | LocusLabel::ZprimeL { .. }
            | LocusLabel::Zpjk { .. } => 1.0,
        }
    }

    pub fn is_primed(&self) -> bool {
        matches!(
            self,
            LocusLabel::Yprime
                | LocusLabel::Ypjk { .. }
                | LocusLabel::ZprimeL { .. }
                | LocusLabel::Zpjk { .. }
        )
    }

    /// Family name without indices, e.g. `Z'_l`.
    pub fn family(&self) -> &'static str {
        match self {
            LocusLabel::Y => "Y",
            LocusLabel::Yjk { .. } => "Y_jk",
            LocusLabel::Zl { .. } => "Z_l",
            LocusLabel::Zjk { .. } => "Z_jk",
            LocusLabel::Yprime => "Y'",
            LocusLabel::Ypjk { .. } => "Y'_jk",
            LocusLabel::ZprimeL { .. } => "Z'_l",
            LocusLabel::Zpjk { .. } => "Z'_jk",
        }
    }
}

impl fmt::Display for LocusLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocusLabel::Y => write!(f, "Y"),
            LocusLabel::Yprime => write!(f, "Y'"),
            LocusLabel::Yjk { j, k } => write!(f, "Y_{{{j},{k}}}"),
            LocusLabel::Zjk { j, k } => write!(f, "Z_{{{j},{k}}}"),
            LocusLabel::Ypjk { j, k } => write!(f, "Y'_{{{j},{k}}}"),
            LocusLabel::Zpjk { j, k } => write!(f, "Z'_{{{j},{k}}}"),
            LocusLabel::Zl { l } => write!(f, "Z_{{{l}}}"),
            LocusLabel::ZprimeL { l } => write!(f, "Z'_{{{l}}}"),
        }
    }
}

fn cos2(num: f64, den: u32) -> f64 {
    2.0 * (num * PI / den as f64).cos()
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Indices `1 <= j` with `2j < bound`.
fn below_half(bound: u32) -> impl Iterator<Item = u32> {
    (1..).take_while(move |j| 2 * j < bound)
}

/// Every label whose index range is nonempty for `f` and `o`.
pub fn loci_for(f: &FamilySpec, o: Orientation) -> Vec<LocusLabel> {
    if f.kind != FamilyKind::J {
        return Vec::new();
    }
    let (m, n) = (f.m, f.n);
    let mut out = Vec::new();
    if !o.flip {
        out.push(LocusLabel::Y);
        for j in below_half(m) {
            out.extend((1..n).map(|k| LocusLabel::Yjk { j, k }));
        }
        out.extend(below_half(m.saturating_sub(1)).map(|l| LocusLabel::Zl { l }));
        for j in below_half(m + 1) {
            out.extend((1..=n).map(|k| LocusLabel::Zjk { j, k }));
        }
    } else {
        out.push(LocusLabel::Yprime);
        for j in below_half(n) {
            out.extend((1..m).map(|k| LocusLabel::Ypjk { j, k }));
        }
        out.extend(below_half(n.saturating_sub(1)).map(|l| LocusLabel::ZprimeL { l }));
        for j in below_half(n + 1) {
            out.extend((1..=m).map(|k| LocusLabel::Zpjk { j, k }));
        }
    }
    out.sort();
    out
}

fn v1(m: u32, ch: &Character) -> Complex64 {
    let mm = (m * m + m) as f64;
    ch.x * ch.y + 2.0 + mm * (ch.x + ch.y) * (ch.x + ch.y)
}

fn v2(ch: &Character) -> Complex64 {
    let Character { x, y, z } = *ch;
    x * y - (x * x + y * y - 3.0) * z + x * y * z * z - z * z * z
}

/// `a S_k(q) + b S_{k-1}(q)`.
fn s_combo(k: u32, a: Complex64, b: Complex64, q: Complex64) -> Complex64 {
    a * cheb_eval_s(k as i64, q) + b * cheb_eval_s(k as i64 - 1, q)
}

/// Residuals of the defining equations; the label holds when all are below tol.
fn residuals(f: &FamilySpec, label: LocusLabel, ch: &Character) -> [Complex64; 2] {
    let (m, n) = (f.m, f.n);
    let xyz = ch.x * ch.y - ch.z;
    let v = trace_v(m, ch.x, ch.y, ch.z);
    match label {
        LocusLabel::Yjk { j, k } => [ch.z - cos2(2.0 * j as f64, m), xyz - cos2(k as f64, n)],
        LocusLabel::Y => [
            ch.z + 2.0,
            s_combo(n, re(m as f64), re((m + 1) as f64), v1(m, ch)),
        ],
        LocusLabel::Zjk { j, k } => [
            ch.z - cos2(2.0 * j as f64, m + 1),
            xyz - cos2(k as f64, n + 1),
        ],
        LocusLabel::Zl { l } => [
            ch.z - cos2(2.0 * l as f64, m - 1),
            s_combo(n, re(1.0), -ch.z, v2(ch)),
        ],
        LocusLabel::Ypjk { j, k } => [xyz - cos2(2.0 * j as f64, n), ch.z - cos2(k as f64, m)],
        LocusLabel::Yprime => [v + 2.0, s_combo(m, re(n as f64), re((n + 1) as f64), ch.z)],
        LocusLabel::Zpjk { j, k } => [
            xyz - cos2(2.0 * j as f64, n + 1),
            ch.z - cos2(k as f64, m + 1),
        ],
        LocusLabel::ZprimeL { l } => [
            v - cos2(2.0 * l as f64, n - 1),
            s_combo(m, re(1.0), -v, ch.z),
        ],
    }
}

/// All loci of `f` under orientation `o` containing `ch`.
pub fn locus_membership(
    f: &FamilySpec,
    o: Orientation,
    ch: &Character,
    tol: f64,
) -> Vec<LocusLabel> {
    loci_for(f, o)
        .into_iter()
        .filter(|&label| residuals(f, label, ch).iter().all(|r| r.norm() < tol))
        .collect()
}

/// `z` on `Y'` as a function of `x, y`.
pub fn yprime_locus_z(n: u32, x: Complex64, y: Complex64) -> Complex64 {
    ((n * n + n) as f64) * (x + y) * (x + y) + x * y + 2.0
}

/// `z` on `Z'_l` as a function of `v, x, y`.
pub fn zprime_locus_z(v: Complex64, x: Complex64, y: Complex64) -> Complex64 {
    -v * v * v + v * v * x * y - v * (x * x + y * y - 3.0) + x * y
}

/// Roots of `a S_k + b S_{k-1}` as a polynomial.
fn combo_roots(k: u32, a: Complex64, b: Complex64) -> Result<Vec<Complex64>, RepError> {
    let q = ComplexPoly::x();
    let (mut prev, mut cur) = (ComplexPoly::new(vec![]), ComplexPoly::constant(re(1.0)));
    for _ in 0..k {
        let next = &(&q * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    let p = &cur.scale(a) + &prev.scale(b);
    Ok(find_roots_complex(&p, 1e-10)?
        .into_iter()
        .map(|r| r.value)
        .collect())
}

/// Root number `pick % 2` of `a y^2 + b y + c`.
fn quadratic(a: Complex64, b: Complex64, c: Complex64, pick: usize) -> Complex64 {
    if a.norm() < 1e-14 * (b.norm() + c.norm()) {
        return -c / b;
    }
    let d = (b * b - 4.0 * a * c).sqrt();
    let q = if (b + d).norm() >= (b - d).norm() {
        -(b + d) / 2.0
    } else {
        -(b - d) / 2.0
    };
    if pick % 2 == 0 {
        q / a
    } else {
        c / q
    }
}

/// Solves `trace_v(m, x, y, z) = target` for `y`.
fn y_for_v(m: u32, x: Complex64, z: Complex64, target: Complex64, pick: usize) -> Complex64 {
    let sm = cheb_eval_s(m as i64, z);
    let sm1 = cheb_eval_s(m as i64 - 1, z);
    let (p, sq) = (sm * sm1, sm * sm + sm1 * sm1);
    quadratic(-p, x * sq, -x * x * p - z * sq + 4.0 * p - target, pick)
}

/// A character on `label` with first trace `x`. `pick` selects among the
/// finitely many completions.
pub fn point_on_locus(
    f: &FamilySpec,
    label: LocusLabel,
    x: Complex64,
    pick: usize,
) -> Result<Character, RepError> {
    let o = if label.is_primed() {
        Orientation::FLIPPED
    } else {
        Orientation::DEFAULT
    };
    if !loci_for(f, o).contains(&label) {
        return Err(RepError::EmptyLocus(label.to_string()));
    }
    let (m, n) = (f.m, f.n);
    let on_line = |z: f64, xy_minus_z: f64| Character::new(x, (xy_minus_z + z) / x, re(z));
    let nth = |roots: Vec<Complex64>| roots[pick % roots.len()];
    let step = |len: usize| pick / len.max(1);
    let ch = match label {
        LocusLabel::Yjk { j, k } => on_line(cos2(2.0 * j as f64, m), cos2(k as f64, n)),
        LocusLabel::Zjk { j, k } => on_line(cos2(2.0 * j as f64, m + 1), cos2(k as f64, n + 1)),
        LocusLabel::Ypjk { j, k } => on_line(cos2(k as f64, m), cos2(2.0 * j as f64, n)),
        LocusLabel::Zpjk { j, k } => on_line(cos2(k as f64, m + 1), cos2(2.0 * j as f64, n + 1)),
        LocusLabel::Y => {
            let roots = combo_roots(n, re(m as f64), re((m + 1) as f64))?;
            let (len, w) = (roots.len(), nth(roots));
            let mm = (m * m + m) as f64;
            let y = quadratic(
                re(mm),
                x * (2.0 * mm + 1.0),
                mm * x * x + 2.0 - w,
                step(len),
            );
            Character::new(x, y, re(-2.0))
        }
        LocusLabel::Zl { l } => {
            let z = re(cos2(2.0 * l as f64, m - 1));
            let roots = combo_roots(n, re(1.0), -z)?;
            let (len, w) = (roots.len(), nth(roots));
            let y = quadratic(
                -z,
                x * (1.0 + z * z),
                -z * x * x + 3.0 * z - z * z * z - w,
                step(len),
            );
            Character::new(x, y, z)
        }
        LocusLabel::Yprime => {
            let roots = combo_roots(m, re(n as f64), re((n + 1) as f64))?;
            let (len, z) = (roots.len(), nth(roots));
            Character::new(x, y_for_v(m, x, z, re(-2.0), step(len)), z)
        }
        LocusLabel::ZprimeL { l } => {
            let v = re(cos2(2.0 * l as f64, n - 1));
            let roots = combo_roots(m, re(1.0), -v)?;
            let (len, z) = (roots.len(), nth(roots));
            Character::new(x, y_for_v(m, x, z, v, step(len)), z)
        }
    };
    let residual = char_variety_eval(m, n, &ch).norm();
    let v = trace_v(m, ch.x, ch.y, ch.z);
    let scale = 1.0 + (cheb_eval_s(m as i64, ch.z) * cheb_eval_s(n as i64 - 1, v)).norm();
    if residual > 1e-9 * scale {
        return Err(RepError::OffVariety { residual });
    }
    Ok(ch)
}
