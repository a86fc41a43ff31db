use std::collections::BTreeMap;

use num_complex::{Complex, Complex64};
use num_traits::{One, ToPrimitive, Zero};
use twofloat::TwoFloat;

use super::{EngineConfig, RepAssignment, TwistedError, TwistedPoly};
use crate::algebra::{det_block, LaurentMat2, LaurentPoly, Mat2};
use crate::freegroup::{fox_derivative, GroupRingElement, Presentation, Word};
use crate::linkfamilies::commutator_relator;

fn word_degree(w: &Word, degrees: &[i64]) -> i64 {
    w.letters()
        .iter()
        .map(|l| l.sign() * degrees[l.gen as usize])
        .sum()
}

fn check_assigned(e: &GroupRingElement, count: usize) -> Result<(), TwistedError> {
    for w in e.terms().keys() {
        if let Some(l) = w.letters().iter().find(|l| l.gen as usize >= count) {
            return Err(TwistedError::UnassignedGenerator {
                gen: l.gen as usize,
                assigned: count,
            });
        }
    }
    Ok(())
}

fn laurent_from_map(map: BTreeMap<i64, Complex64>) -> LaurentPoly {
    let (Some(&lo), Some(&hi)) = (map.keys().next(), map.keys().next_back()) else {
        return LaurentPoly::zero();
    };
    let mut coeffs = vec![Complex64::new(0.0, 0.0); (hi - lo + 1) as usize];
    for (e, c) in map {
        coeffs[(e - lo) as usize] = c;
    }
    LaurentPoly::new(lo, coeffs)
}

/// `Phi(e) = sum c_w t^deg(w) rho(w)`.
pub fn phi_apply(e: &GroupRingElement, rep: &RepAssignment) -> Result<LaurentMat2, TwistedError> {
    check_assigned(e, rep.mats().len())?;
    let inverses: Vec<Mat2> = rep.mats().iter().map(Mat2::adjugate).collect();
    let mut acc: BTreeMap<i64, Mat2> = BTreeMap::new();
    for (w, c) in e.terms() {
        let m = w.letters().iter().fold(Mat2::identity(), |m, l| {
            let g = l.gen as usize;
            m * if l.inverse {
                inverses[g]
            } else {
                rep.mats()[g]
            }
        });
        let c = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
        let slot = acc
            .entry(word_degree(w, rep.degrees()))
            .or_insert(Mat2::zero());
        *slot = *slot + m.scale(c);
    }
    let entry =
        |f: fn(&Mat2) -> Complex64| laurent_from_map(acc.iter().map(|(&k, m)| (k, f(m))).collect());
    Ok(LaurentMat2 {
        e: [
            entry(|m| m.a11),
            entry(|m| m.a12),
            entry(|m| m.a21),
            entry(|m| m.a22),
        ],
    })
}

/// `Phi(e)` for the trivial 1-dimensional representation.
pub fn phi_scalar(e: &GroupRingElement, degrees: &[i64]) -> LaurentPoly {
    let mut acc: BTreeMap<i64, Complex64> = BTreeMap::new();
    for (w, c) in e.terms() {
        *acc.entry(word_degree(w, degrees)).or_default() += c.to_f64().unwrap_or(f64::NAN);
    }
    laurent_from_map(acc)
}

/// Sum over scalar rows of (highest - lowest exponent), plus a margin.
fn degree_bound(rows: &[Vec<LaurentPoly>]) -> usize {
    let spans: i64 = rows
        .iter()
        .map(|row| {
            let lo = row
                .iter()
                .filter(|p| !p.is_zero())
                .map(LaurentPoly::lo)
                .min();
            let hi = row.iter().filter_map(LaurentPoly::hi).max();
            match (lo, hi) {
                (Some(lo), Some(hi)) => hi - lo,
                _ => 0,
            }
        })
        .sum();
    spans as usize + 4
}

fn check_shape(pres: &Presentation) -> Result<(), TwistedError> {
    let (gens, relators) = (pres.generator_count(), pres.relators().len());
    if relators + 1 != gens {
        return Err(TwistedError::WrongRelatorCount { gens, relators });
    }
    Ok(())
}

/// `det M_j / det Phi(1 - x_j)` with the Fox matrix column `j = remove` deleted.
pub fn twisted_alexander(
    pres: &Presentation,
    rep: &RepAssignment,
    remove: usize,
    cfg: &EngineConfig,
) -> Result<TwistedPoly, TwistedError> {
    check_shape(pres)?;
    let q = pres.generator_count();
    if rep.mats().len() < q {
        return Err(TwistedError::UnassignedGenerator {
            gen: rep.mats().len(),
            assigned: rep.mats().len(),
        });
    }
    let mut rows: Vec<Vec<LaurentPoly>> = Vec::with_capacity(2 * (q - 1));
    for r in pres.relators() {
        let blocks = (0..q)
            .filter(|&j| j != remove)
            .map(|j| phi_apply(&fox_derivative(r, j), rep))
            .collect::<Result<Vec<_>, _>>()?;
        for i in 0..2 {
            rows.push(
                blocks
                    .iter()
                    .flat_map(|b| [b.entry(i, 0).clone(), b.entry(i, 1).clone()])
                    .collect(),
            );
        }
    }
    let num = det_block(&rows, degree_bound(&rows))?;
    let x = LaurentMat2::monomial(&rep.mats()[remove], rep.degrees()[remove]);
    let den = (&LaurentMat2::identity() - &x).det().normalize(1e-14);
    if den.is_zero() {
        return Err(TwistedError::SingularDenominator { remove });
    }
    let delta = num.divide_exact(&den, cfg.division_tol)?;
    Ok(TwistedPoly::from_raw(&delta, cfg))
}

/// Complex double-double scalar.
type Dd = Complex<TwoFloat>;

/// 2x2 matrix over [`Dd`], row order.
#[derive(Clone, Copy)]
struct DdMat([Dd; 4]);

impl DdMat {
    fn from_mat(m: &Mat2) -> Self {
        let c = |z: Complex64| Dd::new(TwoFloat::from(z.re), TwoFloat::from(z.im));
        DdMat([c(m.a11), c(m.a12), c(m.a21), c(m.a22)])
    }

    fn identity() -> Self {
        DdMat([Dd::one(), Dd::zero(), Dd::zero(), Dd::one()])
    }

    fn mul(&self, o: &DdMat) -> DdMat {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = o.0;
        DdMat([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h])
    }

    fn adjugate(&self) -> DdMat {
        let [a, b, c, d] = self.0;
        DdMat([d, -b, -c, a])
    }

    /// `g^-1 self g`, with the inverse taken exactly.
    fn conjugate_by(&self, g: &DdMat) -> DdMat {
        let [a, b, c, d] = g.0;
        let det = a * d - b * c;
        let inv = g.adjugate();
        let scaled = DdMat(inv.0.map(|x| x / det));
        scaled.mul(self).mul(g)
    }
}

/// `det Phi(dw/db)` with every operation in double-double precision. The
/// determinant cancels by about the square of the image entries, which is
/// far beyond `f64` at characters with large traces.
fn fastpath_det(w: &Word, mats: &[DdMat; 2], degrees: &[i64]) -> LaurentPoly {
    let inverses = [mats[0].adjugate(), mats[1].adjugate()];
    let mut acc: BTreeMap<i64, DdMat> = BTreeMap::new();
    let mut add = |deg: i64, m: &DdMat, sign: f64| {
        let slot = acc.entry(deg).or_insert(DdMat([Dd::zero(); 4]));
        for (s, x) in slot.0.iter_mut().zip(m.0) {
            *s += x * TwoFloat::from(sign);
        }
    };
    // d(u b)/db = du/db + u and d(u b^-1)/db = du/db - u b^-1
    let (mut prefix, mut deg) = (DdMat::identity(), 0i64);
    for l in w.letters() {
        let g = l.gen as usize;
        if g == 1 && !l.inverse {
            add(deg, &prefix, 1.0);
        }
        prefix = prefix.mul(if l.inverse { &inverses[g] } else { &mats[g] });
        deg += l.sign() * degrees[g];
        if g == 1 && l.inverse {
            add(deg, &prefix, -1.0);
        }
    }
    let (Some(&lo), Some(&hi)) = (acc.keys().next(), acc.keys().next_back()) else {
        return LaurentPoly::zero();
    };
    let mut det = vec![Dd::zero(); (2 * (hi - lo) + 1) as usize];
    for (&i, x) in &acc {
        for (&j, y) in &acc {
            det[(i + j - 2 * lo) as usize] += x.0[0] * y.0[3] - x.0[1] * y.0[2];
        }
    }
    let coeffs = det
        .into_iter()
        .map(|z| Complex64::new(z.re.into(), z.im.into()))
        .collect();
    LaurentPoly::new(2 * lo, coeffs)
}

fn check_fastpath_shape(
    pres: &Presentation,
    w: &Word,
    rep: &RepAssignment,
) -> Result<[DdMat; 2], TwistedError> {
    if pres.generator_count() != 2 || pres.relators() != [commutator_relator(w)] {
        return Err(TwistedError::ShapeMismatch);
    }
    if rep.mats().len() < 2 {
        return Err(TwistedError::UnassignedGenerator {
            gen: rep.mats().len(),
            assigned: rep.mats().len(),
        });
    }
    Ok([
        DdMat::from_mat(&rep.mats()[0]),
        DdMat::from_mat(&rep.mats()[1]),
    ])
}

/// `det Phi(dw/db)` for the presentation `<a, b | a w a^-1 w^-1>`.
pub fn twisted_alexander_fastpath(
    pres: &Presentation,
    w: &Word,
    rep: &RepAssignment,
    cfg: &EngineConfig,
) -> Result<TwistedPoly, TwistedError> {
    let mats = check_fastpath_shape(pres, w, rep)?;
    Ok(TwistedPoly::from_raw(
        &fastpath_det(w, &mats, rep.degrees()),
        cfg,
    ))
}

/// [`twisted_alexander_fastpath`] at the representation conjugated by `g`,
/// where the conjugated images are kept in double-double precision.
pub fn twisted_alexander_fastpath_conjugated(
    pres: &Presentation,
    w: &Word,
    rep: &RepAssignment,
    g: &Mat2,
    cfg: &EngineConfig,
) -> Result<TwistedPoly, TwistedError> {
    let g = DdMat::from_mat(g);
    let mats = check_fastpath_shape(pres, w, rep)?.map(|m| m.conjugate_by(&g));
    Ok(TwistedPoly::from_raw(
        &fastpath_det(w, &mats, rep.degrees()),
        cfg,
    ))
}

/// `(t - 1)` times the invariant for the trivial 1-dimensional
/// representation, which is the reduced Alexander polynomial of a link.
/// Normalized to lowest exponent 0.
pub fn reduced_alexander(
    pres: &Presentation,
    remove: usize,
    cfg: &EngineConfig,
) -> Result<LaurentPoly, TwistedError> {
    check_shape(pres)?;
    let q = pres.generator_count();
    let rows: Vec<Vec<LaurentPoly>> = pres
        .relators()
        .iter()
        .map(|r| {
            (0..q)
                .filter(|&j| j != remove)
                .map(|j| phi_scalar(&fox_derivative(r, j), pres.degrees()))
                .collect()
        })
        .collect();
    let num = det_block(&rows, degree_bound(&rows))?;
    let d = pres.degrees()[remove];
    let den =
        (&LaurentPoly::one() - &LaurentPoly::monomial(Complex64::new(1.0, 0.0), d)).normalize(0.0);
    if den.is_zero() {
        return Err(TwistedError::SingularDenominator { remove });
    }
    let wada = num.divide_exact(&den, cfg.division_tol)?;
    let t_minus_1 = LaurentPoly::from_real(0, &[-1.0, 1.0]);
    let out = (&wada * &t_minus_1).normalize(cfg.span_threshold);
    Ok(out.shift(-out.lo()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::parse_word;
    use crate::linkfamilies::{presentation_c, presentation_j, FamilySpec, Orientation};
    use crate::repvariety::{parabolic_rep, parabolic_slice_j};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn parabolic(pres: &Presentation, z: Complex64) -> RepAssignment {
        RepAssignment::for_presentation(pres, parabolic_rep(z).mats().to_vec(), 1e-10).unwrap()
    }

    #[test]
    fn phi_examples() {
        let pres = presentation_j(1, 1, Orientation::DEFAULT);
        let rep = parabolic(&pres, c(1.0, 1.0));
        let one = phi_apply(&GroupRingElement::one(), &rep).unwrap();
        assert_eq!(one, LaurentMat2::identity());
        let a = Word::gen(0);
        let pa = phi_apply(&GroupRingElement::from_word(a.clone()), &rep).unwrap();
        assert_eq!(pa, LaurentMat2::monomial(&rep.mats()[0], 1));
        let e = &GroupRingElement::one() - &GroupRingElement::from_word(a);
        let pe = phi_apply(&e, &rep).unwrap();
        assert_eq!(
            pe,
            &LaurentMat2::identity() - &LaurentMat2::monomial(&rep.mats()[0], 1)
        );
        let bad = GroupRingElement::from_word(Word::gen(2));
        assert!(matches!(
            phi_apply(&bad, &rep),
            Err(TwistedError::UnassignedGenerator { gen: 2, .. })
        ));
    }

    #[test]
    fn phi_is_multiplicative() {
        let g = ["a", "b"];
        let x = GroupRingElement::from_word(parse_word("a b A", &g).unwrap());
        let y = &GroupRingElement::one()
            - &GroupRingElement::from_word(parse_word("b b a", &g).unwrap());
        let rep = RepAssignment::new(
            parabolic_rep(c(0.3, 0.8)).mats().to_vec(),
            vec![1, -1],
            1e-10,
        )
        .unwrap();
        let lhs = phi_apply(&(&x * &y), &rep).unwrap();
        let rhs = &phi_apply(&x, &rep).unwrap() * &phi_apply(&y, &rep).unwrap();
        for t in [c(0.5, 0.5), c(-1.2, 0.1)] {
            assert!((lhs.eval(t) - rhs.eval(t)).norm() < 1e-12);
        }
    }

    #[test]
    fn whitehead_both_paths() {
        let f = FamilySpec::j(1, 1).unwrap();
        let pres = f.presentation(Orientation::DEFAULT);
        let cfg = EngineConfig::default();
        let rep = parabolic(&pres, c(1.0, 1.0));
        let general = twisted_alexander(&pres, &rep, 0, &cfg).unwrap();
        let fast = twisted_alexander_fastpath(&pres, &f.word_w(), &rep, &cfg).unwrap();
        assert_eq!(general.span, Some(4));
        assert!(general.monic);
        assert!(general.distance(&fast) < 1e-9);
        assert_eq!(general.raw_lo, fast.raw_lo);
        assert_eq!(fast.raw_lo, -2);
        let other = twisted_alexander(&pres, &rep, 1, &cfg).unwrap();
        assert!(general.distance(&other) < 1e-9);
    }

    #[test]
    fn j52_non_monic() {
        let pres = presentation_j(2, 1, Orientation::DEFAULT);
        let cfg = EngineConfig::default();
        for root in parabolic_slice_j(2, 1, 1e-10).unwrap().nonreal() {
            let tp = twisted_alexander(&pres, &parabolic(&pres, root.value), 0, &cfg).unwrap();
            assert_eq!(tp.span, Some(4));
            assert!((tp.top_coeff - (root.value + 2.0)).norm() < 1e-8);
        }
    }

    #[test]
    fn fastpath_rejects_other_shapes() {
        let pres = presentation_c(1, 1, 1, Orientation::DEFAULT);
        let rep = parabolic(&pres, c(0.5, 1.0));
        let w = FamilySpec::j(1, 1).unwrap().word_w();
        assert_eq!(
            twisted_alexander_fastpath(&pres, &w, &rep, &EngineConfig::default()),
            Err(TwistedError::ShapeMismatch)
        );
    }

    #[test]
    fn reduced_alexander_whitehead() {
        let pres = presentation_j(1, 1, Orientation::DEFAULT);
        let d = reduced_alexander(&pres, 0, &EngineConfig::default()).unwrap();
        assert_eq!(d.span(), Some(3));
    }

    #[test]
    fn wrong_relator_count() {
        let pres = Presentation::new(vec!["a".into()], vec![Word::gen(0)], vec![1]).unwrap();
        let rep = RepAssignment::new(vec![Mat2::identity()], vec![1], 1e-10).unwrap();
        assert!(matches!(
            twisted_alexander(&pres, &rep, 0, &EngineConfig::default()),
            Err(TwistedError::WrongRelatorCount { .. })
        ));
    }
}
