use num_bigint::BigInt;
use proptest::prelude::*;

use talex_core::freegroup::{fox_derivative, Letter};
use talex_core::linkfamilies::{c_words, commutator_relator, j_words, A, B};
use talex_core::{GroupRingElement, Word};

const GENS: usize = 3;

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..GENS, any::<bool>()), 0..=max_len)
        .prop_map(|ls| Word::from_letters(ls.into_iter().map(|(g, inv)| Letter::new(g, inv))))
}

fn element(w: &Word) -> GroupRingElement {
    GroupRingElement::from_word(w.clone())
}

fn one() -> GroupRingElement {
    GroupRingElement::one()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn fundamental_identity(w in word(40)) {
        let mut sum = GroupRingElement::zero();
        for j in 0..GENS {
            let d = fox_derivative(&w, j);
            sum = &sum + &(&d.right_mul_word(&Word::gen(j)) - &d);
        }
        prop_assert_eq!(sum, &element(&w) - &one());
    }

    #[test]
    fn product_rule(u in word(20), v in word(20), j in 0..GENS) {
        let lhs = fox_derivative(&u.mul(&v), j);
        let rhs = &fox_derivative(&u, j) + &fox_derivative(&v, j).left_mul_word(&u);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_rule(w in word(30), j in 0..GENS) {
        let lhs = fox_derivative(&w.inverse(), j);
        let rhs = fox_derivative(&w, j).left_mul_word(&w.inverse()).scale(&BigInt::from(-1));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn augmentation_is_exponent_sum(w in word(40), j in 0..GENS) {
        prop_assert_eq!(fox_derivative(&w, j).augmentation(), BigInt::from(w.exponent_sum(j)));
    }
}

/// `d(a w a^-1 w^-1)/db = a (1 - w a^-1 w^-1) dw/db`.
fn commutator_shape(w: &Word) {
    let r = commutator_relator(w);
    let tail = w.mul(&Word::gen_inv(A)).mul(&w.inverse());
    let dw = fox_derivative(w, B);
    let want = (&dw - &dw.left_mul_word(&tail)).left_mul_word(&Word::gen(A));
    assert_eq!(fox_derivative(&r, B), want);
}

#[test]
fn commutator_derivative_on_family_words() {
    for m in 1..=3 {
        for n in 1..=3 {
            commutator_shape(&j_words(m, n).0);
            for p in 1..=3 {
                commutator_shape(&c_words(m, n, p).0);
            }
        }
    }
}

#[test]
fn relator_is_balanced() {
    for m in 1..=3 {
        for n in 1..=3 {
            let r = commutator_relator(&j_words(m, n).0);
            assert_eq!((r.exponent_sum(A), r.exponent_sum(B)), (0, 0));
        }
    }
}
