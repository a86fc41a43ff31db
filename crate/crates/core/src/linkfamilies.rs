//! The double twist links `J(2m+1, 2n+1)` and the links `C(2m, 2n, -2p)`:
//! two-generator presentations `<a, b | a w a^-1 w^-1>` and known genus data.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::freegroup::{Presentation, Word};

pub const A: usize = 0;
pub const B: usize = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyKind {
    J,
    C,
}

impl std::str::FromStr for FamilyKind {
    type Err = FamilyError;
    fn from_str(s: &str) -> Result<Self, FamilyError> {
        match s {
            "J" | "j" => Ok(FamilyKind::J),
            "C" | "c" => Ok(FamilyKind::C),
            other => Err(FamilyError::UnknownKind(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("unknown family `{0}` (expected J or C)")]
    UnknownKind(String),
    #[error("parameters must be at least 1 (got m={m}, n={n}, p={p})")]
    OutOfRange { m: i64, n: i64, p: i64 },
    #[error("theorem mode needs m, n, p odd and m != p (got m={m}, n={n}, p={p})")]
    NotTheoremMode { m: u32, n: u32, p: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub m: u32,
    pub n: u32,
    /// Unused for `J`.
    pub p: u32,
}

impl FamilySpec {
    pub fn j(m: i64, n: i64) -> Result<Self, FamilyError> {
        if m < 1 || n < 1 {
            return Err(FamilyError::OutOfRange { m, n, p: 0 });
        }
        Ok(FamilySpec {
            kind: FamilyKind::J,
            m: m as u32,
            n: n as u32,
            p: 0,
        })
    }

    pub fn c(m: i64, n: i64, p: i64) -> Result<Self, FamilyError> {
        if m < 1 || n < 1 || p < 1 {
            return Err(FamilyError::OutOfRange { m, n, p });
        }
        Ok(FamilySpec {
            kind: FamilyKind::C,
            m: m as u32,
            n: n as u32,
            p: p as u32,
        })
    }

    /// The `C` hypotheses under which detection is decided by `gcd(m, p)`.
    pub fn check_theorem_mode(&self) -> Result<(), FamilyError> {
        let ok = self.m % 2 == 1 && self.n % 2 == 1 && self.p % 2 == 1 && self.m != self.p;
        if self.kind == FamilyKind::C && !ok {
            return Err(FamilyError::NotTheoremMode {
                m: self.m,
                n: self.n,
                p: self.p,
            });
        }
        Ok(())
    }

    pub fn presentation(&self, o: Orientation) -> Presentation {
        match self.kind {
            FamilyKind::J => presentation_j(self.m, self.n, o),
            FamilyKind::C => presentation_c(self.m, self.n, self.p, o),
        }
    }

    /// The word `w` of the relator `a w a^-1 w^-1`.
    pub fn word_w(&self) -> Word {
        match self.kind {
            FamilyKind::J => j_words(self.m, self.n).0,
            FamilyKind::C => c_words(self.m, self.n, self.p).0,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FamilyKind::J => write!(f, "J({},{})", 2 * self.m + 1, 2 * self.n + 1),
            FamilyKind::C => write!(f, "C({},{},-{})", 2 * self.m, 2 * self.n, 2 * self.p),
        }
    }
}

/// `flip` reverses the component of `b` (for `J`) or of `a` (for `C`).
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct Orientation {
    pub flip: bool,
}

impl Orientation {
    pub const DEFAULT: Orientation = Orientation { flip: false };
    pub const FLIPPED: Orientation = Orientation { flip: true };
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub genus: u32,
    /// `None` where no fiberedness statement is available.
    pub fibered: Option<bool>,
    pub thurston_norm: u32,
    pub degree_prediction: u32,
}

impl GroundTruth {
    fn from_genus(genus: u32, fibered: Option<bool>) -> Self {
        GroundTruth {
            genus,
            fibered,
            thurston_norm: 2 * genus,
            degree_prediction: 4 * genus,
        }
    }
}

pub fn ground_truth(f: &FamilySpec, o: Orientation) -> GroundTruth {
    match (f.kind, o.flip) {
        (FamilyKind::J, false) => GroundTruth::from_genus(f.n, Some(f.m == 1)),
        (FamilyKind::J, true) => GroundTruth::from_genus(f.m, Some(f.n == 1)),
        (FamilyKind::C, false) => GroundTruth::from_genus(1, None),
        (FamilyKind::C, true) => GroundTruth::from_genus(f.m + f.p - 1, None),
    }
}

fn a() -> Word {
    Word::gen(A)
}

fn b() -> Word {
    Word::gen(B)
}

/// `(x y)^k`.
fn alt(x: &Word, y: &Word, k: u32) -> Word {
    x.mul(y).pow(k as i64)
}

/// `(w, u)` with `u = (b a^-1)^m b a (b^-1 a)^m` and `w = (b^-1 a)^m u^n`.
pub fn j_words(m: u32, n: u32) -> (Word, Word) {
    let (ai, bi) = (a().inverse(), b().inverse());
    let u = alt(&b(), &ai, m)
        .mul(&b())
        .mul(&a())
        .mul(&alt(&bi, &a(), m));
    let w = alt(&bi, &a(), m).mul(&u.pow(n as i64));
    (w, u)
}

/// `(w, u, v)` with `v = (a^-1 b)^m (a b^-1)^m`, `u = a^-1 v^-n b v^n` and
/// `w = (b^-1 a)^m u^p`.
pub fn c_words(m: u32, n: u32, p: u32) -> (Word, Word, Word) {
    let (ai, bi) = (a().inverse(), b().inverse());
    let v = alt(&ai, &b(), m).mul(&alt(&a(), &bi, m));
    let vn = v.pow(n as i64);
    let u = ai.mul(&vn.inverse()).mul(&b()).mul(&vn);
    let w = alt(&bi, &a(), m).mul(&u.pow(p as i64));
    (w, u, v)
}

/// `a w a^-1 w^-1`.
pub fn commutator_relator(w: &Word) -> Word {
    a().mul(w).mul(&a().inverse()).mul(&w.inverse())
}

fn two_generator(w: &Word, degrees: [i64; 2]) -> Presentation {
    Presentation::new(
        vec!["a".into(), "b".into()],
        vec![commutator_relator(w)],
        degrees.to_vec(),
    )
    .expect("two generators, one relator")
}

pub fn presentation_j(m: u32, n: u32, o: Orientation) -> Presentation {
    let deg = if o.flip { [1, -1] } else { [1, 1] };
    two_generator(&j_words(m, n).0, deg)
}

pub fn presentation_c(m: u32, n: u32, p: u32, o: Orientation) -> Presentation {
    let deg = if o.flip { [-1, 1] } else { [1, 1] };
    two_generator(&c_words(m, n, p).0, deg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::parse_word;

    fn word(s: &str) -> Word {
        parse_word(s, &["a", "b"]).unwrap()
    }

    #[test]
    fn whitehead_relator() {
        let (w, u) = j_words(1, 1);
        assert_eq!(u, word("b A b a B a"));
        assert_eq!(w, word("B a b A b a B a"));
        let p = presentation_j(1, 1, Orientation::DEFAULT);
        assert_eq!(p.relators()[0].len(), 16);
    }

    #[test]
    fn u_squared_length() {
        let (w, u) = j_words(1, 2);
        assert_eq!(u.len(), 6);
        assert_eq!(w, word("B a").mul(&u).mul(&u));
    }

    #[test]
    fn c_small_case() {
        let (w, u, v) = c_words(1, 1, 1);
        assert_eq!(v, word("A b a B"));
        assert_eq!(u, word("A").mul(&v.inverse()).mul(&word("b")).mul(&v));
        assert_eq!(w, word("B a").mul(&u));
        assert_eq!(w.len(), 8);
    }

    #[test]
    fn relators_abelianize_trivially() {
        for m in 1..4 {
            for n in 1..4 {
                for o in [Orientation::DEFAULT, Orientation::FLIPPED] {
                    let p = presentation_j(m, n, o);
                    let r = &p.relators()[0];
                    assert_eq!((r.exponent_sum(A), r.exponent_sum(B)), (0, 0));
                    for k in 1..4 {
                        let p = presentation_c(m, n, k, o);
                        let r = &p.relators()[0];
                        assert_eq!((r.exponent_sum(A), r.exponent_sum(B)), (0, 0));
                    }
                }
            }
        }
    }

    #[test]
    fn c_word_length_formula() {
        for m in 1..4u32 {
            for n in 1..4u32 {
                for p in 1..10u32 {
                    let (w, _, _) = c_words(m, n, p);
                    assert_eq!(w.len() as u32, 2 * m + p * (8 * m * n + 2) - 4 * m);
                }
            }
        }
    }

    #[test]
    fn ground_truth_table() {
        let j11 = FamilySpec::j(1, 1).unwrap();
        let gt = ground_truth(&j11, Orientation::DEFAULT);
        assert_eq!(
            (gt.genus, gt.fibered, gt.degree_prediction),
            (1, Some(true), 4)
        );
        let j23 = FamilySpec::j(2, 3).unwrap();
        let gt = ground_truth(&j23, Orientation::FLIPPED);
        assert_eq!(
            (gt.genus, gt.fibered, gt.degree_prediction),
            (2, Some(false), 8)
        );
        let c = FamilySpec::c(3, 1, 9).unwrap();
        let gt = ground_truth(&c, Orientation::FLIPPED);
        assert_eq!((gt.genus, gt.fibered, gt.degree_prediction), (11, None, 44));
        assert_eq!(gt.thurston_norm, 22);
    }

    #[test]
    fn parameter_checks() {
        assert!(FamilySpec::j(0, 1).is_err());
        assert!(FamilySpec::c(1, 1, -1).is_err());
        assert!(FamilySpec::c(3, 1, 9).unwrap().check_theorem_mode().is_ok());
        assert!(FamilySpec::c(3, 1, 3)
            .unwrap()
            .check_theorem_mode()
            .is_err());
        assert!(FamilySpec::c(2, 1, 3)
            .unwrap()
            .check_theorem_mode()
            .is_err());
        assert_eq!(FamilySpec::c(3, 1, 9).unwrap().to_string(), "C(6,2,-18)");
        assert_eq!(FamilySpec::j(2, 1).unwrap().to_string(), "J(5,3)");
    }

    #[test]
    fn text_round_trip() {
        for o in [Orientation::DEFAULT, Orientation::FLIPPED] {
            let p = presentation_c(2, 1, 3, o);
            assert_eq!(Presentation::parse(&p.to_text()).unwrap(), p);
        }
    }

    // v of the C family against the inverse of u of the J family
    #[test]
    fn shared_builder_structure() {
        for m in 1..5 {
            let (_, u_j) = j_words(m, 1);
            let (_, _, v_c) = c_words(m, 1, 1);
            let left = word("A b").pow(m as i64);
            let right = word("a B").pow(m as i64);
            assert_eq!(u_j.inverse(), left.mul(&word("A B")).mul(&right));
            assert_eq!(v_c, left.mul(&right));
        }
    }
}
