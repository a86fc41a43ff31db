use std::fmt::Write as _;

use super::parse::{Namespace, ParseError};
use super::Word;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresentationError {
    #[error("line {line}: {source}")]
    Parse { line: usize, source: ParseError },
    #[error("line {line}: `gens:` must come first and only once")]
    MisplacedGens { line: usize },
    #[error("line {line}: unknown directive `{text}`")]
    UnknownDirective { line: usize, text: String },
    #[error("line {line}: bad degree entry `{text}`")]
    BadDegree { line: usize, text: String },
    #[error("line {line}: bad macro definition `{text}`")]
    BadMacro { line: usize, text: String },
    #[error("presentation has no generators")]
    NoGenerators,
    #[error("relator uses generator index {index} but only {count} are declared")]
    UndeclaredGenerator { index: usize, count: usize },
    #[error("{degrees} degrees given for {count} generators")]
    DegreeCount { degrees: usize, count: usize },
}

/// Finite presentation with an abelianization degree per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    gens: Vec<String>,
    relators: Vec<Word>,
    degrees: Vec<i64>,
}

impl Presentation {
    pub fn new(
        gens: Vec<String>,
        relators: Vec<Word>,
        degrees: Vec<i64>,
    ) -> Result<Self, PresentationError> {
        if gens.is_empty() {
            return Err(PresentationError::NoGenerators);
        }
        if degrees.len() != gens.len() {
            return Err(PresentationError::DegreeCount {
                degrees: degrees.len(),
                count: gens.len(),
            });
        }
        for r in &relators {
            if let Some(l) = r.letters().iter().find(|l| l.gen as usize >= gens.len()) {
                return Err(PresentationError::UndeclaredGenerator {
                    index: l.gen as usize,
                    count: gens.len(),
                });
            }
        }
        Ok(Presentation {
            gens,
            relators,
            degrees,
        })
    }

    pub fn gens(&self) -> &[String] {
        &self.gens
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn generator_count(&self) -> usize {
        self.gens.len()
    }

    pub fn with_degrees(&self, degrees: Vec<i64>) -> Result<Self, PresentationError> {
        Presentation::new(self.gens.clone(), self.relators.clone(), degrees)
    }

    /// Abelianized degree of a word under the generator degrees.
    pub fn word_degree(&self, w: &Word) -> i64 {
        w.letters()
            .iter()
            .map(|l| l.sign() * self.degrees[l.gen as usize])
            .sum()
    }

    /// Text form accepted by [`Presentation::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("gens: {}\ndeg:", self.gens.join(" "));
        for (g, d) in self.gens.iter().zip(&self.degrees) {
            let _ = write!(out, " {g}={d}");
        }
        out.push('\n');
        for r in &self.relators {
            let _ = writeln!(out, "rel: {}", r.display(&self.gens));
        }
        out
    }

    /// Reads the line format
    ///
    /// ```text
    /// gens: a b
    /// deg: a=1 b=-1
    /// let v = (A b) (a B)
    /// rel: a v A V
    /// ```
    ///
    /// `#` starts a comment. Generators without a `deg:` entry get degree 1.
    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        let mut ns: Option<Namespace> = None;
        let mut degrees: Vec<i64> = Vec::new();
        let mut relators = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, rest) = match content.split_once(':') {
                Some((k, r)) => (k.trim(), r),
                None if content.starts_with("let ") => ("let", &content[4..]),
                None => {
                    return Err(PresentationError::UnknownDirective {
                        line,
                        text: content.to_string(),
                    })
                }
            };
            match (key, ns.as_mut()) {
                ("gens", None) => {
                    let names: Vec<&str> = rest.split_whitespace().collect();
                    if names.is_empty() {
                        return Err(PresentationError::NoGenerators);
                    }
                    degrees = vec![1; names.len()];
                    ns = Some(Namespace::new(&names));
                }
                ("gens", Some(_)) | (_, None) => {
                    return Err(PresentationError::MisplacedGens { line })
                }
                ("deg", Some(ns)) => {
                    for item in rest.split_whitespace() {
                        let bad = || PresentationError::BadDegree {
                            line,
                            text: item.to_string(),
                        };
                        let (name, value) = item.split_once('=').ok_or_else(bad)?;
                        let i = ns.gens().iter().position(|g| g == name).ok_or_else(bad)?;
                        degrees[i] = value.parse().map_err(|_| bad())?;
                    }
                }
                ("let", Some(ns)) => {
                    let bad = || PresentationError::BadMacro {
                        line,
                        text: rest.trim().to_string(),
                    };
                    let (name, body) = rest.split_once('=').ok_or_else(bad)?;
                    let name = name.trim();
                    let valid = name.chars().next().is_some_and(char::is_alphabetic)
                        && name.chars().all(|c| c.is_alphanumeric() || c == '_');
                    if !valid || ns.gens().iter().any(|g| g == name) {
                        return Err(bad());
                    }
                    let w = ns
                        .parse(body)
                        .map_err(|source| PresentationError::Parse { line, source })?;
                    ns.define(name, w);
                }
                ("rel", Some(ns)) => {
                    let w = ns
                        .parse(rest)
                        .map_err(|source| PresentationError::Parse { line, source })?;
                    relators.push(w);
                }
                (other, Some(_)) => {
                    return Err(PresentationError::UnknownDirective {
                        line,
                        text: other.to_string(),
                    })
                }
            }
        }
        let ns = ns.ok_or(PresentationError::NoGenerators)?;
        Presentation::new(ns.gens().to_vec(), relators, degrees)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const WHITEHEAD: &str = "\
# J(3,3)
gens: a b
deg: a=1 b=1
let u = b A b a B a
let w = B a u
rel: a w A W
";

    #[test]
    fn parses_macros() {
        let p = Presentation::parse(WHITEHEAD).unwrap();
        assert_eq!(p.gens(), &["a", "b"]);
        assert_eq!(p.degrees(), &[1, 1]);
        assert_eq!(p.relators().len(), 1);
        assert_eq!(p.relators()[0].len(), 16);
        assert_eq!(p.word_degree(&p.relators()[0]), 0);
    }

    #[test]
    fn round_trip() {
        let p = Presentation::parse(WHITEHEAD)
            .unwrap()
            .with_degrees(vec![1, -1])
            .unwrap();
        let q = Presentation::parse(&p.to_text()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            Presentation::parse("rel: a"),
            Err(PresentationError::MisplacedGens { line: 1 })
        ));
        assert!(matches!(
            Presentation::parse("gens: a\ndeg: b=1"),
            Err(PresentationError::BadDegree { line: 2, .. })
        ));
        assert!(matches!(
            Presentation::parse("gens: a b\nrel: a c"),
            Err(PresentationError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            Presentation::parse("gens: a\nfoo: a"),
            Err(PresentationError::UnknownDirective { line: 2, .. })
        ));
    }
}
