//! Regular expressions for 1-track languages.
//!
//! Syntax: a symbol is a single character, or `<name>` for multi-character
//! names; `.` is any symbol, `ε` the empty word and `∅` the empty language.
//! Postfix `*`, `+`, `?`; juxtaposition concatenates; `|` is alternation.
//! Whitespace is ignored.

use super::{Automaton, StateId};
use crate::alphabet::Alphabet;
use crate::error::{Error, Result};

impl Automaton {
    pub fn from_regex(alphabet: &Alphabet, text: &str) -> Result<Automaton> {
        let chars: Vec<char> = text.chars().collect();
        let mut p = Parser { alphabet, chars: &chars, pos: 0 };
        let a = p.alt()?;
        p.skip_ws();
        if p.pos < chars.len() {
            return Err(p.error(format!("unexpected `{}`", chars[p.pos])));
        }
        Ok(a)
    }

    /// Concatenation of 1-track languages.
    pub fn concat(&self, other: &Automaton) -> Result<Automaton> {
        self.check_compatible(other)?;
        require_one_track(self)?;
        let off = self.num_states() as StateId;
        let other_eps = other.initial.iter().any(|&s| other.is_accepting(s));
        let mut trans = self.trans.clone();
        for row in &mut trans {
            let extra: Vec<_> = row
                .iter()
                .filter(|&&(_, d)| self.is_accepting(d))
                .flat_map(|&(l, _)| other.initial.iter().map(move |&i| (l, i + off)))
                .collect();
            row.extend(extra);
        }
        trans.extend(other.trans.iter().map(|row| row.iter().map(|&(l, d)| (l, d + off)).collect()));
        let accepting = self.accepting.iter().map(|&a| a && other_eps).chain(other.accepting.iter().copied()).collect();
        let mut initial = self.initial.clone();
        if self.initial.iter().any(|&s| self.is_accepting(s)) {
            initial.extend(other.initial.iter().map(|&i| i + off));
        }
        Ok(Automaton::from_parts(self.alphabet.clone(), self.codec.clone(), initial, accepting, trans))
    }

    /// Kleene star of a 1-track language.
    pub fn star(&self) -> Result<Automaton> {
        require_one_track(self)?;
        // state 0 is a fresh accepting start; entering an accepting state may
        // also return to it
        let shifted: Vec<Vec<_>> = self
            .trans
            .iter()
            .map(|row| {
                let mut r: Vec<_> = row.iter().map(|&(l, d)| (l, d + 1)).collect();
                r.extend(row.iter().filter(|&&(_, d)| self.is_accepting(d)).map(|&(l, _)| (l, 0)));
                r
            })
            .collect();
        let start: Vec<_> = self.initial.iter().flat_map(|&i| shifted[i as usize].iter().copied()).collect();
        let mut trans = vec![start];
        trans.extend(shifted);
        let mut accepting = vec![true];
        accepting.extend(self.accepting.iter().copied());
        Ok(Automaton::from_parts(self.alphabet.clone(), self.codec.clone(), vec![0], accepting, trans))
    }
}

fn require_one_track(a: &Automaton) -> Result<()> {
    if a.tracks() != 1 {
        return Err(Error::Arity("concatenation and star are defined for 1-track automata only".into()));
    }
    Ok(())
}

struct Parser<'a> {
    alphabet: &'a Alphabet,
    chars: &'a [char],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: String) -> Error {
        Error::Parse { line: 1, column: self.pos + 1, message }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn alt(&mut self) -> Result<Automaton> {
        let mut a = self.seq()?;
        while self.peek() == Some('|') {
            self.pos += 1;
            a = a.union(&self.seq()?)?;
        }
        Ok(a)
    }

    fn seq(&mut self) -> Result<Automaton> {
        let mut a = Automaton::from_words(self.alphabet, &[Vec::new()])?;
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            a = a.concat(&self.postfix()?)?;
        }
        Ok(a)
    }

    fn postfix(&mut self) -> Result<Automaton> {
        let mut a = self.atom()?;
        while let Some(c) = self.peek() {
            a = match c {
                '*' => a.star()?,
                '+' => a.concat(&a.star()?)?,
                '?' => a.union(&Automaton::from_words(self.alphabet, &[Vec::new()])?)?,
                _ => break,
            };
            self.pos += 1;
        }
        Ok(a)
    }

    fn atom(&mut self) -> Result<Automaton> {
        let c = self.peek().ok_or_else(|| self.error("unexpected end of expression".into()))?;
        self.pos += 1;
        match c {
            '(' => {
                let a = self.alt()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`".into()));
                }
                self.pos += 1;
                Ok(a)
            }
            '.' => {
                let all: Vec<_> = (0..self.alphabet.len() as u32).map(|s| vec![s]).collect();
                Automaton::from_words(self.alphabet, &all)
            }
            'ε' => Automaton::from_words(self.alphabet, &[Vec::new()]),
            '∅' => Automaton::empty(self.alphabet, 1),
            '<' => {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos] != '>' {
                    self.pos += 1;
                }
                if self.pos == self.chars.len() {
                    self.pos = start - 1;
                    return Err(self.error("unterminated `<`".into()));
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                self.pos += 1;
                self.symbol(&name, start - 1)
            }
            '*' | '+' | '?' | '|' | ')' => {
                self.pos -= 1;
                Err(self.error(format!("unexpected `{c}`")))
            }
            c => self.symbol(&c.to_string(), self.pos - 1),
        }
    }

    fn symbol(&mut self, name: &str, at: usize) -> Result<Automaton> {
        match self.alphabet.index(name) {
            Some(s) => Automaton::from_words(self.alphabet, &[vec![s]]),
            None => {
                self.pos = at;
                Err(self.error(format!("symbol `{name}` is not in the alphabet")))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lang(a: &Alphabet, re: &str, max: usize) -> Vec<String> {
        Automaton::from_regex(a, re).unwrap().enumerate(max).unwrap().iter().map(|t| a.format_word(&t[0])).collect()
    }

    #[test]
    fn basic_operators() {
        let a = Alphabet::chars("ab").unwrap();
        assert_eq!(lang(&a, "a*", 2), ["ε", "a", "aa"]);
        assert_eq!(lang(&a, "(ab)+", 4), ["ab", "abab"]);
        assert_eq!(lang(&a, "a?b", 3), ["b", "ab"]);
        assert_eq!(lang(&a, "a|ε", 3), ["ε", "a"]);
        assert_eq!(lang(&a, ".", 3), ["a", "b"]);
        assert!(lang(&a, "∅", 3).is_empty());
        assert_eq!(lang(&a, "(a|b)*b(a|b)", 2), ["ba", "bb"]);
    }

    #[test]
    fn multi_character_symbols() {
        let a = Alphabet::new(["B", "R", "1|q0"]).unwrap();
        assert!(Automaton::from_regex(&a, "B<1|q0>*").unwrap().contains_str(&["B.1|q0.1|q0"]).unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        let a = Alphabet::chars("ab").unwrap();
        assert!(matches!(Automaton::from_regex(&a, "a(b"), Err(Error::Parse { column: 4, .. })));
        assert!(matches!(Automaton::from_regex(&a, "ac"), Err(Error::Parse { column: 2, .. })));
        assert!(matches!(Automaton::from_regex(&a, "*a"), Err(Error::Parse { column: 1, .. })));
    }
}
