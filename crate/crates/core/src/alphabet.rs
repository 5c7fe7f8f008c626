//! Finite alphabets of named symbols and words over them.
//!
//! Symbols are kept in sorted order; a symbol is referred to by its index in that
//! order. The padding token `⊥` (and its ASCII spelling `_` used in files) is
//! reserved and never a member.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of a symbol inside its [`Alphabet`].
pub type Sym = u32;

/// A finite word, as a sequence of symbol indices.
pub type Word = Vec<Sym>;

pub const PAD_TOKEN: &str = "⊥";
pub const PAD_ASCII: &str = "_";

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Arc<Vec<String>>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet must be non-empty".into()));
        }
        for s in &symbols {
            if s.is_empty() {
                return Err(Error::InvalidAlphabet("empty symbol name".into()));
            }
            if s == PAD_TOKEN || s == PAD_ASCII {
                return Err(Error::InvalidAlphabet(format!("`{s}` is the reserved padding token")));
            }
            if s.chars().any(|c| c.is_whitespace() || "()\"".contains(c)) {
                return Err(Error::InvalidAlphabet(format!("symbol `{s}` contains a reserved character")));
            }
        }
        let n = symbols.len();
        symbols.sort();
        symbols.dedup();
        if symbols.len() != n {
            return Err(Error::InvalidAlphabet("duplicate symbols".into()));
        }
        Ok(Alphabet { symbols: Arc::new(symbols) })
    }

    /// Alphabet of single-character symbols, e.g. `Alphabet::chars("ab")`.
    pub fn chars(s: &str) -> Result<Self> {
        Alphabet::new(s.chars().map(|c| c.to_string()))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn name(&self, sym: Sym) -> &str {
        &self.symbols[sym as usize]
    }

    pub fn index(&self, name: &str) -> Option<Sym> {
        self.symbols.binary_search_by(|s| s.as_str().cmp(name)).ok().map(|i| i as Sym)
    }

    pub fn sym(&self, name: &str) -> Result<Sym> {
        self.index(name).ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index(name).is_some()
    }

    /// Alphabet containing the symbols of both.
    pub fn union(&self, other: &Alphabet) -> Alphabet {
        let mut all: Vec<String> = self.symbols.iter().chain(other.symbols.iter()).cloned().collect();
        all.sort();
        all.dedup();
        Alphabet { symbols: Arc::new(all) }
    }

    pub fn is_subset_of(&self, other: &Alphabet) -> bool {
        self.symbols.iter().all(|s| other.contains(s))
    }

    fn single_chars(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Parses a word. Over single-character alphabets symbols are juxtaposed
    /// (`aab`); otherwise they are separated by `.` (`1.1|q0`). `ε` or the empty
    /// string denote the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Vec::new());
        }
        if self.single_chars() && !text.contains('.') {
            text.chars().map(|c| self.sym(&c.to_string())).collect()
        } else {
            text.split('.').map(|s| self.sym(s)).collect()
        }
    }

    pub fn format_word(&self, word: &[Sym]) -> String {
        if word.is_empty() {
            return "ε".to_string();
        }
        let sep = if self.single_chars() { "" } else { "." };
        word.iter().map(|&s| self.name(s)).collect::<Vec<_>>().join(sep)
    }

    /// All words of length at most `max_len`, in shortlex order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        let n = self.len() as Sym;
        let mut out = vec![Vec::new()];
        let mut layer: Vec<Word> = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * n as usize);
            for w in &layer {
                for s in 0..n {
                    let mut v = w.clone();
                    v.push(s);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.symbols.join(","))
    }
}

/// Shortlex comparison of words.
pub fn shortlex_cmp(a: &[Sym], b: &[Sym]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}
