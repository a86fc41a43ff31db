use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Word;

/// Element of the integral group ring of a free group.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, BigInt>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::identity())
    }

    pub fn from_word(w: Word) -> Self {
        Self::term(w, BigInt::one())
    }

    pub fn term(w: Word, c: BigInt) -> Self {
        let mut out = Self::zero();
        out.add_term(w, c);
        out
    }

    pub fn add_term(&mut self, w: Word, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Word, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        GroupRingElement {
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
        }
    }

    /// `w * self`.
    pub fn left_mul_word(&self, w: &Word) -> Self {
        let mut out = Self::zero();
        for (u, c) in &self.terms {
            out.add_term(w.mul(u), c.clone());
        }
        out
    }

    /// `self * w`.
    pub fn right_mul_word(&self, w: &Word) -> Self {
        let mut out = Self::zero();
        for (u, c) in &self.terms {
            out.add_term(u.mul(w), c.clone());
        }
        out
    }

    /// Augmentation: sum of coefficients.
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }
}

impl Add for &GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, r: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, c) in &r.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        GroupRingElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, r: &GroupRingElement) -> GroupRingElement {
        self + &(-r)
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;
    fn mul(self, r: &GroupRingElement) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (u, a) in &self.terms {
            for (v, b) in &r.terms {
                out.add_term(u.mul(v), a * b);
            }
        }
        out
    }
}

/// `1 + h + ... + h^k`.
pub fn geometric_sum(h: &Word, k: usize) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let mut p = Word::identity();
    for _ in 0..=k {
        out.add_term(p.clone(), BigInt::one());
        p = p.mul(h);
    }
    out
}
