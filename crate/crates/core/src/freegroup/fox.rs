use num_bigint::BigInt;
use num_traits::One;

use super::{GroupRingElement, Word};

/// Free derivative of `w` with respect to generator `gen`.
///
/// Each occurrence of `gen` contributes the prefix before it, each occurrence
/// of its inverse minus the prefix through it.
pub fn fox_derivative(w: &Word, gen: usize) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    for (i, l) in w.letters().iter().enumerate() {
        if l.gen as usize != gen {
            continue;
        }
        if l.inverse {
            out.add_term(w.prefix(i + 1), -BigInt::one());
        } else {
            out.add_term(w.prefix(i), BigInt::one());
        }
    }
    out
}

/// Jacobian row `(d r/d x_0, ..., d r/d x_{q-1})`.
pub fn fox_jacobian_row(r: &Word, generators: usize) -> Vec<GroupRingElement> {
    (0..generators).map(|g| fox_derivative(r, g)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::{geometric_sum, Letter};

    const A: Letter = Letter::new(0, false);
    const B: Letter = Letter::new(1, false);

    #[test]
    fn axioms() {
        let a = Word::gen(0);
        assert_eq!(fox_derivative(&a, 0), GroupRingElement::one());
        assert!(fox_derivative(&a, 1).is_zero());
        assert_eq!(
            fox_derivative(&Word::from_letters([A, B]), 0),
            GroupRingElement::one()
        );
        assert_eq!(
            fox_derivative(&a.inverse(), 0),
            -&GroupRingElement::from_word(a.inverse())
        );
        assert_eq!(fox_derivative(&a.pow(3), 0), geometric_sum(&a, 2));
    }

    #[test]
    fn fundamental_identity_small() {
        let w = Word::from_letters([A, B, A, B.inv(), A.inv(), A.inv(), B]);
        let mut total = GroupRingElement::zero();
        for g in 0..2 {
            let x = Word::gen(g);
            let d = fox_derivative(&w, g);
            total = &total + &(&d.right_mul_word(&x) - &d);
        }
        assert_eq!(
            total,
            &GroupRingElement::from_word(w) - &GroupRingElement::one()
        );
    }
}
