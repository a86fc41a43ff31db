use std::fmt;

/// One generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: u16,
    pub inverse: bool,
}

impl Letter {
    pub const fn new(gen: usize, inverse: bool) -> Self {
        Letter {
            gen: gen as u16,
            inverse,
        }
    }

    pub fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// Freely reduced word in the free group on indexed generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn gen(g: usize) -> Self {
        Word {
            letters: vec![Letter::new(g, false)],
        }
    }

    pub fn gen_inv(g: usize) -> Self {
        Word {
            letters: vec![Letter::new(g, true)],
        }
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut w = Word::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    /// Appends a letter, cancelling against the last one if possible.
    pub fn push(&mut self, l: Letter) {
        if self.letters.last() == Some(&l.inv()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.clone();
        for &l in &other.letters {
            out.push(l);
        }
        out
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Exponent sum of generator `g`.
    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.gen as usize == g)
            .map(|l| l.sign())
            .sum()
    }

    /// Prefix of the first `k` letters (already reduced).
    pub fn prefix(&self, k: usize) -> Word {
        Word {
            letters: self.letters[..k].to_vec(),
        }
    }

    /// Renders with the given generator names; single lowercase letters
    /// print their inverses as uppercase, other names as `name^-1`.
    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        WordDisplay { word: self, names }
    }
}

struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.word.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let name = &self.names[l.gen as usize];
            let single_lower = name.len() == 1 && name.chars().all(|c| c.is_ascii_lowercase());
            match (l.inverse, single_lower) {
                (false, _) => write!(f, "{name}")?,
                (true, true) => write!(f, "{}", name.to_ascii_uppercase())?,
                (true, false) => write!(f, "{name}^-1")?,
            }
        }
        Ok(())
    }
}
