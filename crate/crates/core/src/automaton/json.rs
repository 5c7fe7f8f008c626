use serde::{Deserialize, Serialize};

use super::{Automaton, TrackSymbol};
use crate::alphabet::{Alphabet, PAD_ASCII, PAD_TOKEN};
use crate::error::{Error, Result};

/// Serialized form of an automaton. `"_"` encodes `⊥`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonJson {
    pub tracks: usize,
    pub alphabet: Vec<String>,
    pub states: usize,
    pub initial: Vec<u32>,
    pub accepting: Vec<u32>,
    pub transitions: Vec<(u32, Vec<String>, u32)>,
}

impl Automaton {
    pub fn to_json_value(&self) -> AutomatonJson {
        let transitions = (0..self.num_states() as u32)
            .flat_map(|s| {
                self.transitions(s).iter().map(move |&(l, d)| {
                    let names = TrackSymbol::decode(&self.codec, l)
                        .0
                        .into_iter()
                        .map(|e| e.map_or(PAD_ASCII.to_string(), |x| self.alphabet.name(x).to_string()))
                        .collect();
                    (s, names, d)
                })
            })
            .collect();
        AutomatonJson {
            tracks: self.tracks(),
            alphabet: self.alphabet.symbols().to_vec(),
            states: self.num_states(),
            initial: self.initial.clone(),
            accepting: self.accepting_states().collect(),
            transitions,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("plain data serializes")
    }

    pub fn from_json_value(j: &AutomatonJson) -> Result<Automaton> {
        let alphabet = Alphabet::new(j.alphabet.iter().cloned())?;
        let mut b = Automaton::builder(&alphabet, j.tracks)?;
        if j.states == 0 {
            return Err(Error::Malformed("an automaton needs at least one state".into()));
        }
        b.add_states(j.states);
        let check = |s: u32| {
            if (s as usize) < j.states {
                Ok(s)
            } else {
                Err(Error::Malformed(format!("state {s} out of range (states = {})", j.states)))
            }
        };
        for &s in &j.initial {
            b.add_initial(check(s)?);
        }
        for &s in &j.accepting {
            b.set_accepting(check(s)?, true);
        }
        for (src, syms, dst) in &j.transitions {
            let names: Vec<&str> = syms.iter().map(|s| if s == PAD_TOKEN { PAD_ASCII } else { s.as_str() }).collect();
            if names.len() != j.tracks {
                return Err(Error::Arity(format!(
                    "transition symbol {syms:?} has {} entries, expected {}",
                    names.len(),
                    j.tracks
                )));
            }
            b.add(check(*src)?, &names, check(*dst)?)?;
        }
        let a = b.build()?;
        if !a.is_valid_padded() {
            return Err(Error::Malformed("accepted language contains an invalidly padded word".into()));
        }
        Ok(a)
    }

    pub fn from_json(text: &str) -> Result<Automaton> {
        Automaton::from_json_value(&serde_json::from_str(text)?)
    }
}
