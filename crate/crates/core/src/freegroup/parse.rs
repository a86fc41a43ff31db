use std::collections::BTreeMap;

use super::Word;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("unknown generator `{name}` at column {pos}")]
    UnknownGenerator { name: String, pos: usize },
    #[error("malformed exponent at column {pos}")]
    MalformedExponent { pos: usize },
    #[error("unbalanced parenthesis at column {pos}")]
    UnbalancedParen { pos: usize },
    #[error("unexpected `{ch}` at column {pos}")]
    UnexpectedChar { ch: char, pos: usize },
    #[error("empty word at column {pos}")]
    EmptyWord { pos: usize },
}

/// Names visible to the word parser: generators by index plus word macros.
#[derive(Clone, Debug, Default)]
pub struct Namespace {
    gens: Vec<String>,
    macros: BTreeMap<String, Word>,
}

impl Namespace {
    pub fn new<S: AsRef<str>>(gens: &[S]) -> Self {
        Namespace {
            gens: gens.iter().map(|s| s.as_ref().to_string()).collect(),
            macros: BTreeMap::new(),
        }
    }

    pub fn gens(&self) -> &[String] {
        &self.gens
    }

    pub fn define(&mut self, name: &str, w: Word) {
        self.macros.insert(name.to_string(), w);
    }

    pub fn is_defined(&self, name: &str) -> bool {
        self.gens.iter().any(|g| g == name) || self.macros.contains_key(name)
    }

    fn lookup_exact(&self, name: &str) -> Option<Word> {
        if let Some(i) = self.gens.iter().position(|g| g == name) {
            return Some(Word::gen(i));
        }
        self.macros.get(name).cloned()
    }

    fn lookup(&self, name: &str) -> Option<Word> {
        if let Some(w) = self.lookup_exact(name) {
            return Some(w);
        }
        let mut chars = name.chars();
        if let (Some(c), None) = (chars.next(), chars.next()) {
            if c.is_ascii_uppercase() {
                return self
                    .lookup_exact(&c.to_ascii_lowercase().to_string())
                    .map(|w| w.inverse());
            }
        }
        None
    }

    fn resolve(&self, name: &str, pos: usize) -> Result<Word, ParseError> {
        if let Some(w) = self.lookup(name) {
            return Ok(w);
        }
        // juxtaposed one-letter names such as `abAB`
        let mut out = Word::identity();
        for c in name.chars() {
            match self.lookup(&c.to_string()) {
                Some(w) => out = out.mul(&w),
                None => {
                    return Err(ParseError::UnknownGenerator {
                        name: name.to_string(),
                        pos,
                    })
                }
            }
        }
        Ok(out)
    }

    pub fn parse(&self, text: &str) -> Result<Word, ParseError> {
        let chars: Vec<char> = text.chars().collect();
        let mut p = Parser {
            ns: self,
            chars: &chars,
            pos: 0,
        };
        let w = p.word()?;
        p.skip_ws();
        match p.peek() {
            None => Ok(w),
            Some(')') => Err(ParseError::UnbalancedParen { pos: p.pos }),
            Some(ch) => Err(ParseError::UnexpectedChar { ch, pos: p.pos }),
        }
    }
}

/// Parses with a namespace holding only the given generators.
pub fn parse_word<S: AsRef<str>>(text: &str, gens: &[S]) -> Result<Word, ParseError> {
    Namespace::new(gens).parse(text)
}

struct Parser<'a> {
    ns: &'a Namespace,
    chars: &'a [char],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        let start = self.pos;
        let mut out = Word::identity();
        let mut terms = 0;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c == '(' || c == '1' || c.is_alphabetic() || c == '_' => {
                    out = out.mul(&self.term()?);
                    terms += 1;
                }
                _ => break,
            }
        }
        if terms == 0 {
            return Err(match self.peek() {
                Some(ch) if ch != ')' => ParseError::UnexpectedChar { ch, pos: self.pos },
                _ => ParseError::EmptyWord { pos: start },
            });
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<Word, ParseError> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        let mut text = String::new();
        if let Some(c @ ('-' | '+')) = self.peek() {
            text.push(c);
            self.pos += 1;
        }
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            text.push(c);
            self.pos += 1;
        }
        let k: i64 = text
            .parse()
            .map_err(|_| ParseError::MalformedExponent { pos: start })?;
        Ok(base.pow(k))
    }

    fn atom(&mut self) -> Result<Word, ParseError> {
        let start = self.pos;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(ParseError::UnbalancedParen { pos: start });
                }
                self.pos += 1;
                Ok(w)
            }
            Some('1') => {
                self.pos += 1;
                Ok(Word::identity())
            }
            _ => {
                let mut name = String::new();
                while let Some(c) = self.peek().filter(|c| c.is_alphanumeric() || *c == '_') {
                    name.push(c);
                    self.pos += 1;
                }
                self.ns.resolve(&name, start)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::Letter;

    const A: Letter = Letter::new(0, false);
    const B: Letter = Letter::new(1, false);

    #[test]
    fn examples() {
        let g = ["a", "b"];
        assert_eq!(
            parse_word("a b^-1", &g).unwrap(),
            Word::from_letters([A, B.inv()])
        );
        assert_eq!(
            parse_word("(a B)^2", &g).unwrap(),
            Word::from_letters([A, B.inv(), A, B.inv()])
        );
        assert!(parse_word("a A", &g).unwrap().is_identity());
        assert_eq!(parse_word("abAB", &g).unwrap().len(), 4);
        assert_eq!(parse_word(" ( a ) ^ +3 ", &g).unwrap(), Word::gen(0).pow(3));
    }

    #[test]
    fn errors_carry_positions() {
        let g = ["a", "b"];
        assert_eq!(
            parse_word("a c", &g),
            Err(ParseError::UnknownGenerator {
                name: "c".into(),
                pos: 2
            })
        );
        assert_eq!(
            parse_word("a^x", &g),
            Err(ParseError::MalformedExponent { pos: 2 })
        );
        assert_eq!(
            parse_word("(a b", &g),
            Err(ParseError::UnbalancedParen { pos: 0 })
        );
        assert_eq!(
            parse_word("a b)", &g),
            Err(ParseError::UnbalancedParen { pos: 3 })
        );
        assert!(matches!(
            parse_word("", &g),
            Err(ParseError::EmptyWord { .. })
        ));
    }

    #[test]
    fn macros_and_inverse_shorthand() {
        let mut ns = Namespace::new(&["a", "b"]);
        ns.define("v", parse_word("A b a B", &["a", "b"]).unwrap());
        let w = ns.parse("v V").unwrap();
        assert!(w.is_identity());
        assert_eq!(ns.parse("v^2").unwrap().len(), 8);
    }
}
