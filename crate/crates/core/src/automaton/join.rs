//! Lazy synchronous product of automata placed on chosen output tracks.
//!
//! Each component reads some of the output tracks. A component may stop early
//! (from an accepting state), after which all of its tracks carry `⊥`. Tracks not
//! read by any component are unconstrained. Cylindrification, the 3-track
//! intermediates of compositions and the incompatibility construction are all
//! instances of this one product.

use std::collections::HashMap;

use super::{Automaton, Codec, Letter, StateId};
use crate::alphabet::{Alphabet, Sym};
use crate::error::{check_states, Error, Result};

const FINISHED: u32 = u32::MAX;

/// An automaton together with the output track each of its tracks is mapped to.
#[derive(Clone, Copy, Debug)]
pub struct Component<'a> {
    pub automaton: &'a Automaton,
    pub tracks: &'a [usize],
}

impl<'a> Component<'a> {
    pub fn new(automaton: &'a Automaton, tracks: &'a [usize]) -> Self {
        Component { automaton, tracks }
    }
}

struct Ctx<'a> {
    comps: &'a [Component<'a>],
    codec: Codec,
    free: Vec<usize>,
}

pub(crate) fn join(alphabet: &Alphabet, out_tracks: usize, comps: &[Component<'_>]) -> Result<Automaton> {
    let codec = Codec::new(alphabet.len(), out_tracks)?;
    let mut covered = vec![false; out_tracks];
    for c in comps {
        if &c.automaton.alphabet != alphabet {
            return Err(Error::AlphabetMismatch(format!("{:?} vs {:?}", c.automaton.alphabet, alphabet)));
        }
        if c.tracks.len() != c.automaton.tracks() {
            return Err(Error::Arity(format!(
                "component has {} tracks but {} were mapped",
                c.automaton.tracks(),
                c.tracks.len()
            )));
        }
        let mut seen = vec![false; out_tracks];
        for &t in c.tracks {
            if t >= out_tracks {
                return Err(Error::IndexOutOfRange { index: t, bound: out_tracks });
            }
            if seen[t] {
                return Err(Error::Arity(format!("track {t} mapped twice by one component")));
            }
            seen[t] = true;
            covered[t] = true;
        }
    }
    let ctx = Ctx { comps, codec: codec.clone(), free: (0..out_tracks).filter(|&t| !covered[t]).collect() };

    let mut ids: HashMap<Vec<u32>, StateId> = HashMap::new();
    let mut keys: Vec<Vec<u32>> = Vec::new();
    let mut initial = Vec::new();

    // cartesian product of initial states, mask 0
    let mut starts: Vec<Vec<u32>> = vec![Vec::new()];
    for c in comps {
        let mut next = Vec::new();
        for s in &starts {
            for &i in c.automaton.initial() {
                let mut v = s.clone();
                v.push(i);
                next.push(v);
            }
        }
        starts = next;
    }
    for mut s in starts {
        s.push(0);
        let id = intern(&mut ids, &mut keys, s)?;
        initial.push(id);
    }

    let mut trans: Vec<Vec<(Letter, StateId)>> = Vec::new();
    let mut accepting = Vec::new();
    let mut i = 0;
    let mut succ = Vec::new();
    while i < keys.len() {
        let key = keys[i].clone();
        let (states, mask) = key.split_at(comps.len());
        let mask = mask[0];
        accepting.push(states.iter().zip(comps).all(|(&s, c)| s == FINISHED || c.automaton.is_accepting(s)));
        succ.clear();
        let mut digits: Vec<Option<Sym>> = vec![None; out_tracks];
        let mut next = states.to_vec();
        ctx.expand(0, mask, &mut digits, &mut next, &mut succ);
        let mut row = Vec::with_capacity(succ.len());
        for (letter, mut target) in succ.drain(..) {
            target.push(mask | codec.pad_mask(letter));
            let id = intern(&mut ids, &mut keys, target)?;
            row.push((letter, id));
        }
        trans.push(row);
        i += 1;
    }
    Ok(Automaton::from_parts(alphabet.clone(), codec, initial, accepting, trans))
}

fn intern(ids: &mut HashMap<Vec<u32>, StateId>, keys: &mut Vec<Vec<u32>>, key: Vec<u32>) -> Result<StateId> {
    if let Some(&id) = ids.get(&key) {
        return Ok(id);
    }
    check_states(keys.len() + 1)?;
    let id = keys.len() as StateId;
    ids.insert(key.clone(), id);
    keys.push(key);
    Ok(id)
}

impl Ctx<'_> {
    fn expand(
        &self,
        ci: usize,
        mask: u32,
        digits: &mut Vec<Option<Sym>>,
        next: &mut Vec<u32>,
        out: &mut Vec<(Letter, Vec<u32>)>,
    ) {
        if ci == self.comps.len() {
            self.fill_free(0, mask, digits, next, out);
            return;
        }
        let comp = &self.comps[ci];
        let a = comp.automaton;
        let pad = self.codec.pad();
        let s = next[ci];

        if s == FINISHED || a.is_accepting(s) {
            // the component stops (or has stopped): its tracks are padded
            let mut assigned = Vec::new();
            if comp.tracks.iter().all(|&t| digits[t].is_none_or(|d| d == pad)) {
                for &t in comp.tracks {
                    if digits[t].is_none() {
                        digits[t] = Some(pad);
                        assigned.push(t);
                    }
                }
                next[ci] = FINISHED;
                self.expand(ci + 1, mask, digits, next, out);
                next[ci] = s;
                for t in assigned {
                    digits[t] = None;
                }
            }
            if s == FINISHED {
                return;
            }
        }

        let ac = a.codec();
        let fully_assigned = comp.tracks.iter().all(|&t| digits[t].is_some());
        if fully_assigned {
            let local: Vec<Sym> = comp.tracks.iter().map(|&t| digits[t].unwrap()).collect();
            if local.iter().all(|&d| d == pad) {
                return;
            }
            let l = ac.encode(&local);
            for d in a.step(s, l) {
                next[ci] = d;
                self.expand(ci + 1, mask, digits, next, out);
            }
            next[ci] = s;
            return;
        }
        'outer: for &(l, d) in a.transitions(s) {
            let mut assigned = Vec::new();
            for (i, &t) in comp.tracks.iter().enumerate() {
                let x = ac.digit(l, i);
                match digits[t] {
                    Some(y) if y != x => {
                        for t in assigned {
                            digits[t] = None;
                        }
                        continue 'outer;
                    }
                    Some(_) => {}
                    None => {
                        if mask & (1 << t) != 0 && x != pad {
                            for t in assigned {
                                digits[t] = None;
                            }
                            continue 'outer;
                        }
                        digits[t] = Some(x);
                        assigned.push(t);
                    }
                }
            }
            next[ci] = d;
            self.expand(ci + 1, mask, digits, next, out);
            for t in assigned {
                digits[t] = None;
            }
        }
        next[ci] = s;
    }

    fn fill_free(
        &self,
        fi: usize,
        mask: u32,
        digits: &mut Vec<Option<Sym>>,
        next: &[u32],
        out: &mut Vec<(Letter, Vec<u32>)>,
    ) {
        let pad = self.codec.pad();
        if fi == self.free.len() {
            let d: Vec<Sym> = digits.iter().map(|x| x.expect("all tracks assigned")).collect();
            if d.iter().all(|&x| x == pad) {
                return;
            }
            // padding must persist on every track
            if d.iter().enumerate().any(|(t, &x)| mask & (1 << t) != 0 && x != pad) {
                return;
            }
            out.push((self.codec.encode(&d), next.to_vec()));
            return;
        }
        let t = self.free[fi];
        let range = if mask & (1 << t) != 0 { pad..=pad } else { 0..=pad };
        for x in range {
            digits[t] = Some(x);
            self.fill_free(fi + 1, mask, digits, next, out);
        }
        digits[t] = None;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn join_of_two_successor_relations() {
        // fc1 on (0,1) and fc1 on (1,2): (aⁿ, aⁿ⁺¹, aⁿ⁺²)
        let a = Alphabet::chars("a").unwrap();
        let mut b = Automaton::builder(&a, 2).unwrap();
        let s = b.add_states(2);
        b.add_initial(s[0]);
        b.add(s[0], &["a", "a"], s[0]).unwrap();
        b.add(s[0], &["_", "a"], s[1]).unwrap();
        b.set_accepting(s[1], true);
        let fc1 = b.build().unwrap();
        let j = join(&a, 3, &[Component::new(&fc1, &[0, 1]), Component::new(&fc1, &[1, 2])]).unwrap();
        assert!(j.contains_str(&["a", "aa", "aaa"]).unwrap());
        assert!(j.contains_str(&["", "a", "aa"]).unwrap());
        assert!(!j.contains_str(&["a", "aa", "aa"]).unwrap());
        assert!(j.is_valid_padded());
    }

    #[test]
    fn free_track_is_unconstrained() {
        let a = Alphabet::chars("ab").unwrap();
        let astar = crate::automaton::Automaton::from_regex(&a, "a*").unwrap();
        let j = join(&a, 2, &[Component::new(&astar, &[0])]).unwrap();
        assert!(j.contains_str(&["aa", "babab"]).unwrap());
        assert!(j.contains_str(&["", ""]).unwrap());
        assert!(!j.contains_str(&["ab", ""]).unwrap());
    }
}
