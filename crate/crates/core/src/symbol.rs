//! Alphabet symbols and the words built from them.
//!
//! A symbol is any non-empty token without whitespace. Words read from the
//! command line or from compact strings may be written either as
//! whitespace-separated tokens (`"a b b a"`) or, when every symbol is a single
//! character, run together (`"abba"`).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Symbol(String);

impl Symbol {
    pub fn new(token: impl Into<String>) -> Result<Self> {
        let token = token.into();
        if token.is_empty() || token.chars().any(char::is_whitespace) {
            return Err(Error::InvalidSymbol(token));
        }
        Ok(Symbol(token))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    fn is_single_char(&self) -> bool {
        self.0.chars().count() == 1
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl TryFrom<String> for Symbol {
    type Error = Error;

    fn try_from(value: String) -> Result<Self> {
        Symbol::new(value)
    }
}

impl TryFrom<&str> for Symbol {
    type Error = Error;

    fn try_from(value: &str) -> Result<Self> {
        Symbol::new(value)
    }
}

impl From<Symbol> for String {
    fn from(s: Symbol) -> String {
        s.0
    }
}

/// An ordered sequence of symbols: a generation, an n-gram, a CA row.
pub type Word = Vec<Symbol>;

/// Parses a word. Input containing whitespace is split into tokens; otherwise
/// every character is its own symbol. The empty string is the empty word.
pub fn parse_word(text: &str) -> Result<Word> {
    let text = text.trim();
    if text.chars().any(char::is_whitespace) {
        text.split_whitespace().map(Symbol::new).collect()
    } else {
        text.chars().map(|c| Symbol::new(c.to_string())).collect()
    }
}

/// Renders a word compactly when every symbol is one character, and as
/// space-separated tokens otherwise.
pub fn render(word: &[Symbol]) -> String {
    if word.iter().all(Symbol::is_single_char) {
        word.iter().map(Symbol::as_str).collect()
    } else {
        word.iter().map(Symbol::as_str).collect::<Vec<_>>().join(" ")
    }
}

/// Shorthand for building words in tests and fixtures. Panics on invalid input.
pub fn word(text: &str) -> Word {
    parse_word(text).expect("valid word literal")
}

/// Shorthand for a single symbol. Panics on invalid input.
pub fn sym(token: &str) -> Symbol {
    Symbol::new(token).expect("valid symbol literal")
}
