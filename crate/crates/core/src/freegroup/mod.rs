//! Free groups on named generators, their integral group rings, free
//! derivatives and finite presentations.

mod fox;
mod parse;
mod presentation;
mod ring;
mod word;

pub use fox::{fox_derivative, fox_jacobian_row};
pub use parse::{parse_word, Namespace, ParseError};
pub use presentation::{Presentation, PresentationError};
pub use ring::{geometric_sum, GroupRingElement};
pub use word::{Letter, Word};
