//! Turing machines as generators of automatic graphs.
//!
//! A configuration is a word over `Γ ∪ (Γ_⊥ × Q)`: the tape contents with the
//! cell under the head replaced by the pair (symbol, state). When the head is on
//! the blank just past the written part, the pair `(⊥, q)` is the last letter.
//! Pair symbols are alphabet tokens written `γ|q`, with `_|q` for the blank.

pub mod checks;
pub mod fixtures;
mod graph;
mod pad;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Word, PAD_ASCII, PAD_TOKEN};
use crate::error::{Error, Result};

pub use checks::{wf_checks, BackwardCheck, WfReport};
pub use graph::{config_graph, configs_language, reach_bfs, simulated_reach, thm4_coloring, thm4_graph, ReachResult};
pub use pad::pad_transform;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Move {
    L,
    R,
}

/// `δ(q, s) = (q′, s′, m)`; `read == None` is the blank.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rule {
    pub state: usize,
    pub read: Option<usize>,
    pub next: usize,
    pub write: usize,
    pub dir: Move,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuringMachine {
    states: Vec<String>,
    tape: Vec<String>,
    initial: usize,
    finals: Vec<bool>,
    delta: BTreeMap<(usize, Option<usize>), (usize, usize, Move)>,
}

fn check_name(kind: &str, s: &str) -> Result<()> {
    if s.is_empty() || s.contains('|') || s == PAD_ASCII || s == PAD_TOKEN {
        return Err(Error::Machine(format!("invalid {kind} name `{s}`")));
    }
    if s.chars().any(|c| c.is_whitespace() || "()\".".contains(c)) {
        return Err(Error::Machine(format!("{kind} name `{s}` contains a reserved character")));
    }
    Ok(())
}

impl TuringMachine {
    /// Builds a machine from names. In `delta`, a read symbol of `"_"` (or `"⊥"`)
    /// is the blank; written symbols must be tape symbols.
    pub fn new(
        states: &[&str],
        tape: &[&str],
        initial: &str,
        finals: &[&str],
        delta: &[(&str, &str, &str, &str, Move)],
    ) -> Result<Self> {
        let owned = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let d: Vec<_> = delta
            .iter()
            .map(|&(q, s, q2, s2, m)| (q.to_string(), s.to_string(), q2.to_string(), s2.to_string(), m))
            .collect();
        Self::from_names(owned(states), owned(tape), initial, &owned(finals), &d)
    }

    fn from_names(
        states: Vec<String>,
        tape: Vec<String>,
        initial: &str,
        finals: &[String],
        delta: &[(String, String, String, String, Move)],
    ) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::Machine("no states".into()));
        }
        for s in &states {
            check_name("state", s)?;
        }
        for s in &tape {
            check_name("tape symbol", s)?;
        }
        let dup = |v: &[String]| {
            let mut w = v.to_vec();
            w.sort();
            w.windows(2).any(|p| p[0] == p[1])
        };
        if dup(&states) || dup(&tape) {
            return Err(Error::Machine("duplicate state or tape symbol".into()));
        }
        let state =
            |n: &str| states.iter().position(|s| s == n).ok_or_else(|| Error::Machine(format!("unknown state `{n}`")));
        let symbol = |n: &str| {
            tape.iter().position(|s| s == n).ok_or_else(|| Error::Machine(format!("unknown tape symbol `{n}`")))
        };
        let initial = state(initial)?;
        let mut fin = vec![false; states.len()];
        for f in finals {
            fin[state(f)?] = true;
        }
        let mut map = BTreeMap::new();
        for (q, s, q2, s2, m) in delta {
            let q = state(q)?;
            if fin[q] {
                return Err(Error::Machine(format!("transition out of final state `{}`", states[q])));
            }
            let read = if s == PAD_ASCII || s == PAD_TOKEN { None } else { Some(symbol(s)?) };
            if s2 == PAD_ASCII || s2 == PAD_TOKEN {
                return Err(Error::Machine("machines never write the blank".into()));
            }
            let entry = (state(q2)?, symbol(s2)?, *m);
            if map.insert((q, read), entry).is_some() {
                return Err(Error::Machine(format!("two transitions for state `{}` on `{s}`", states[q])));
            }
        }
        Ok(TuringMachine { states, tape, initial, finals: fin, delta: map })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn tape(&self) -> &[String] {
        &self.tape
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn rules(&self) -> impl Iterator<Item = Rule> + '_ {
        self.delta.iter().map(|(&(state, read), &(next, write, dir))| Rule { state, read, next, write, dir })
    }

    pub fn rule(&self, state: usize, read: Option<usize>) -> Option<Rule> {
        self.delta.get(&(state, read)).map(|&(next, write, dir)| Rule { state, read, next, write, dir })
    }

    pub fn symbol_name(&self, s: Option<usize>) -> &str {
        s.map_or(PAD_ASCII, |i| self.tape[i].as_str())
    }

    pub fn pair_name(&self, s: Option<usize>, q: usize) -> String {
        format!("{}|{}", self.symbol_name(s), self.states[q])
    }

    /// `A_T = Γ ∪ (Γ_⊥ × Q)`.
    pub fn config_alphabet(&self) -> Result<Alphabet> {
        let mut names: Vec<String> = self.tape.clone();
        for q in 0..self.states.len() {
            names.push(self.pair_name(None, q));
            for s in 0..self.tape.len() {
                names.push(self.pair_name(Some(s), q));
            }
        }
        Alphabet::new(names)
    }

    pub fn initial_config(&self) -> Config {
        Config { tape: Vec::new(), head: 0, state: self.initial }
    }

    /// The successor configuration, if any. A left move from the first cell has none.
    pub fn step(&self, c: &Config) -> Option<Config> {
        let read = c.tape.get(c.head).copied();
        let r = self.rule(c.state, read)?;
        let mut tape = c.tape.clone();
        if c.head == tape.len() {
            tape.push(r.write);
        } else {
            tape[c.head] = r.write;
        }
        let head = match r.dir {
            Move::R => c.head + 1,
            Move::L => c.head.checked_sub(1)?,
        };
        Some(Config { tape, head, state: r.next })
    }

    pub fn encode(&self, alphabet: &Alphabet, c: &Config) -> Result<Word> {
        let mut w = Vec::with_capacity(c.tape.len() + 1);
        for (i, &s) in c.tape.iter().enumerate() {
            let name = if i == c.head { self.pair_name(Some(s), c.state) } else { self.tape[s].clone() };
            w.push(alphabet.sym(&name)?);
        }
        if c.head == c.tape.len() {
            w.push(alphabet.sym(&self.pair_name(None, c.state))?);
        }
        Ok(w)
    }

    /// Inverse of [`TuringMachine::encode`]; `None` for words outside `Configs`.
    pub fn decode(&self, alphabet: &Alphabet, w: &[u32]) -> Option<Config> {
        let mut tape = Vec::with_capacity(w.len());
        let mut head = None;
        for (i, &x) in w.iter().enumerate() {
            let name = alphabet.name(x);
            match name.split_once('|') {
                None => tape.push(self.tape.iter().position(|s| s == name)?),
                Some((s, q)) => {
                    if head.is_some() {
                        return None;
                    }
                    let q = self.states.iter().position(|x| x == q)?;
                    if s == PAD_ASCII {
                        if i + 1 != w.len() {
                            return None;
                        }
                        head = Some((i, q));
                    } else {
                        tape.push(self.tape.iter().position(|x| x == s)?);
                        head = Some((i, q));
                    }
                }
            }
        }
        let (head, state) = head?;
        Some(Config { tape, head, state })
    }

    pub fn to_json(&self) -> String {
        let j = TmJson {
            states: self.states.clone(),
            tape: self.tape.clone(),
            blank: PAD_ASCII.to_string(),
            initial: self.states[self.initial].clone(),
            finals: (0..self.states.len()).filter(|&q| self.finals[q]).map(|q| self.states[q].clone()).collect(),
            delta: self
                .rules()
                .map(|r| {
                    (
                        self.states[r.state].clone(),
                        self.symbol_name(r.read).to_string(),
                        self.states[r.next].clone(),
                        self.tape[r.write].clone(),
                        r.dir,
                    )
                })
                .collect(),
        };
        serde_json::to_string(&j).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: TmJson = serde_json::from_str(text)?;
        if j.blank != PAD_ASCII && j.blank != PAD_TOKEN {
            return Err(Error::Machine(format!("blank must be `{PAD_ASCII}`")));
        }
        Self::from_names(j.states, j.tape, &j.initial, &j.finals, &j.delta)
    }
}

#[derive(Serialize, Deserialize)]
struct TmJson {
    states: Vec<String>,
    tape: Vec<String>,
    blank: String,
    initial: String,
    #[serde(rename = "final")]
    finals: Vec<String>,
    delta: Vec<(String, String, String, String, Move)>,
}

/// Tape contents (tape symbol indices), head position (`head == tape.len()` is
/// the blank past the end) and state.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Config {
    pub tape: Vec<usize>,
    pub head: usize,
    pub state: usize,
}

impl fmt::Display for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}@{}/q{}", self.tape, self.head, self.state)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let t = fixtures::three_state_halting();
        let back = TuringMachine::from_json(&t.to_json()).unwrap();
        assert_eq!(t, back);
    }

    #[test]
    fn rejects_malformed_machines() {
        assert!(TuringMachine::new(&["q"], &["1"], "p", &[], &[]).is_err());
        assert!(TuringMachine::new(&["q"], &["a|b"], "q", &[], &[]).is_err());
        assert!(TuringMachine::new(&["q", "f"], &["1"], "q", &["f"], &[("f", "_", "q", "1", Move::R)]).is_err());
        assert!(TuringMachine::new(&["q"], &["1"], "q", &[], &[("q", "_", "q", "_", Move::R)]).is_err());
        let dup = [("q", "_", "q", "1", Move::R), ("q", "⊥", "q", "1", Move::L)];
        assert!(TuringMachine::new(&["q"], &["1"], "q", &[], &dup).is_err());
    }

    #[test]
    fn encoding_round_trip() {
        let t = fixtures::three_state_halting();
        let a = t.config_alphabet().unwrap();
        let mut c = t.initial_config();
        loop {
            let w = t.encode(&a, &c).unwrap();
            assert_eq!(t.decode(&a, &w), Some(c.clone()));
            match t.step(&c) {
                Some(n) => c = n,
                None => break,
            }
        }
        assert!(t.is_final(c.state));
        assert_eq!(t.encode(&a, &t.initial_config()).unwrap(), a.parse_word("_|q0").unwrap());
    }
}
