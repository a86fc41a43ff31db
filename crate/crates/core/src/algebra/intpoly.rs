//! Dense univariate polynomials over arbitrary-precision integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Polynomial with `BigInt` coefficients, `coeffs[i]` multiplying `x^i`.
///
/// The highest stored coefficient is always nonzero; the zero polynomial is
/// the empty vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    /// The variable itself.
    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: BigInt, power: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); power + 1];
        coeffs[power] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// Lowest degree first.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(inner)`, by Horner's rule.
    pub fn compose(&self, inner: &IntPoly) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Self::constant(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Nonnegative gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    /// Exact quotient over the integers, or `None` when `divisor` does not
    /// divide `self` in `Z[x]`.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let dd = divisor.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let nd = self.degree()?;
        if nd < dd {
            return None;
        }
        let lead = divisor.leading()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * dc;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(quot))
    }

    /// Pseudo-remainder: some `lc(divisor)^k * self` reduced modulo `divisor`.
    pub fn pseudo_rem(&self, divisor: &IntPoly) -> IntPoly {
        let dd = divisor.degree().expect("pseudo_rem by zero polynomial");
        let lead = divisor.leading().cloned().unwrap_or_default();
        let mut rem = self.clone();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let top = rem.leading().cloned().unwrap_or_default();
            rem = &rem.scale(&lead) - &divisor.shift(rd - dd).scale(&top);
        }
        rem
    }

    /// Primitive greatest common divisor with positive leading coefficient.
    /// `gcd(p, 0)` is the primitive part of `p`.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        if b.degree() == Some(0) || modular_coprime(&a, &b) {
            return Self::one();
        }
        // primitive PRS
        loop {
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                return b;
            }
            if r.degree() == Some(0) {
                return Self::one();
            }
            a = b;
            b = r.primitive_part();
        }
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Product of the distinct irreducible factors (primitive, positive
    /// leading coefficient).
    pub fn squarefree_part(&self) -> Option<IntPoly> {
        if self.is_zero() {
            return None;
        }
        if self.degree() == Some(0) {
            return Some(Self::one());
        }
        let g = self.gcd(&self.derivative());
        let pp = self.primitive_part();
        Some(
            pp.div_exact(&g)
                .expect("gcd with derivative divides the primitive part")
                .primitive_part(),
        )
    }

    /// Yun's algorithm: `[(f_1, 1), (f_2, 2), ...]` with each `f_i` squarefree,
    /// pairwise coprime and `pp(self) = prod f_i^i`. Constant factors are
    /// omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPoly, u32)> {
        let mut out = Vec::new();
        let Some(deg) = self.degree() else {
            return out;
        };
        if deg == 0 {
            return out;
        }
        let f = self.primitive_part();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0).expect("exact");
        let mut c = df.div_exact(&a0).expect("exact");
        let mut d = &c - &b.derivative();
        let mut i = 1u32;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a).expect("exact");
            c = d.div_exact(&a).expect("exact");
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Double-precision Horner evaluation; adequate only for low degree or
    /// small coefficients.
    pub fn eval_complex(&self, z: num_complex::Complex64) -> num_complex::Complex64 {
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Bit length of the largest coefficient.
    pub fn height_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }

    pub fn display_var<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, var }
    }
}

struct PolyDisplay<'a> {
    poly: &'a IntPoly,
    var: &'a str,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.poly.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}", self.var)?,
                _ => write!(f, "{}^{}", self.var, i)?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_var("x"))
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        IntPoly::from_coeffs(coeffs)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: &IntPoly) -> IntPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

const PRIMES: [u64; 4] = [2_147_483_647, 2_147_483_629, 2_147_483_587, 2_147_483_579];

/// True when some prime not dividing either leading coefficient makes the
/// reductions coprime; then the integer gcd is trivial as well.
fn modular_coprime(a: &IntPoly, b: &IntPoly) -> bool {
    PRIMES.iter().any(|&p| {
        let pb = BigInt::from(p);
        let reduce = |f: &IntPoly| -> Vec<u64> {
            f.coeffs
                .iter()
                .map(|c| c.mod_floor(&pb).to_u64().unwrap_or(0))
                .collect()
        };
        let (ra, rb) = (reduce(a), reduce(b));
        if ra.last() == Some(&0) || rb.last() == Some(&0) {
            return false;
        }
        gcd_mod_p_degree(ra, rb, p) == 0
    })
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn gcd_mod_p_degree(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> usize {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a <- a mod b
        let inv = inv_mod(*b.last().unwrap(), p);
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let factor = a.last().unwrap() * inv % p;
            for (j, &bc) in b.iter().enumerate() {
                a[shift + j] = (a[shift + j] + p - factor * bc % p) % p;
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p(&[0, 1]) * &p(&[0, 1]), p(&[0, 0, 1]));
        assert_eq!(&p(&[-1, 0, 1]) - &p(&[-2, 0, 1]), p(&[1]));
        let sum = &p(&[0, -2, 0, 1]) + &p(&[0, 2, 0, -1]);
        assert!(sum.is_zero());
        assert!(sum.coeffs().is_empty());
    }

    #[test]
    fn compose_examples() {
        assert_eq!(p(&[0, 0, 1]).compose(&p(&[1, 1])), p(&[1, 2, 1]));
        let inner = p(&[3, -1, 4, 1]);
        assert_eq!(p(&[0, 1]).compose(&inner), inner);
        assert_eq!(p(&[-1, 0, 1]).compose(&p(&[0, 0, 1])), p(&[-1, 0, 0, 0, 1]));
    }

    #[test]
    fn gcd_examples() {
        // gcd(S_2, S_8) = S_2
        let s2 = p(&[-1, 0, 1]);
        let s8 = p(&[1, 0, -10, 0, 15, 0, -7, 0, 1]);
        assert_eq!(s2.gcd(&s8), s2);
        assert_eq!(p(&[0, 1]).gcd(&s2), IntPoly::one());
        assert_eq!(p(&[-4, 0, -6]).gcd(&IntPoly::zero()), p(&[2, 0, 3]));
        assert!(IntPoly::zero().gcd(&IntPoly::zero()).is_zero());
        // common factor hidden behind contents
        let f = &p(&[1, 1]) * &p(&[2, 0, 3]);
        let g = &p(&[1, 1]).scale(&BigInt::from(6)) * &p(&[-5, 7]);
        assert_eq!(f.gcd(&g), p(&[1, 1]));
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(p(&[1, -2, 1]).squarefree_part().unwrap(), p(&[-1, 1]));
        assert_eq!(p(&[-1, 0, 1]).squarefree_part().unwrap(), p(&[-1, 0, 1]));
        let f = &p(&[-1, 0, 1]) * &p(&[0, 0, 1]);
        assert_eq!(f.squarefree_part().unwrap(), p(&[0, -1, 0, 1]));
        assert!(IntPoly::zero().squarefree_part().is_none());
    }

    #[test]
    fn yun_decomposition() {
        // (x-1) (x+2)^2 x^3
        let f = &(&p(&[-1, 1]) * &p(&[2, 1]).pow(2)) * &p(&[0, 1]).pow(3);
        let dec = f.squarefree_decomposition();
        assert_eq!(
            dec,
            vec![(p(&[-1, 1]), 1), (p(&[2, 1]), 2), (p(&[0, 1]), 3)]
        );
    }

    #[test]
    fn exact_division() {
        let f = &p(&[1, 1]) * &p(&[-3, 0, 2]);
        assert_eq!(f.div_exact(&p(&[1, 1])), Some(p(&[-3, 0, 2])));
        assert_eq!(f.div_exact(&p(&[1, 2])), None);
        assert_eq!(p(&[1, 0, 1]).div_exact(&p(&[0, 2])), None);
    }

    #[test]
    fn display() {
        assert_eq!(
            p(&[-4, 6, -4, 1]).display_var("z").to_string(),
            "z^3 - 4z^2 + 6z - 4"
        );
        assert_eq!(p(&[0, -1]).to_string(), "-x");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn modular_detects_coprime_only_when_true() {
        let a = &p(&[1, 1]) * &p(&[5, 0, 1]);
        let b = &p(&[1, 1]) * &p(&[0, 3]);
        assert!(!modular_coprime(&a, &b));
        assert!(modular_coprime(&p(&[5, 0, 1]), &p(&[0, 3])));
    }
}
