use std::collections::HashMap;

use super::join::{join, Component};
use super::{Automaton, Codec, Letter, StateId};
use crate::alphabet::Sym;
use crate::error::{check_states, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoolMode {
    Intersect,
    Union,
    Difference,
}

impl Automaton {
    pub fn boolean(&self, other: &Automaton, mode: BoolMode) -> Result<Automaton> {
        match mode {
            BoolMode::Intersect => self.intersect(other),
            BoolMode::Union => self.union(other),
            BoolMode::Difference => self.difference(other),
        }
    }

    pub fn intersect(&self, other: &Automaton) -> Result<Automaton> {
        self.check_compatible(other)?;
        let mut ids: HashMap<(StateId, StateId), StateId> = HashMap::new();
        let mut pairs = Vec::new();
        let mut initial = Vec::new();
        for &p in &self.initial {
            for &q in &other.initial {
                let id = pairs.len() as StateId;
                ids.insert((p, q), id);
                pairs.push((p, q));
                initial.push(id);
            }
        }
        let mut trans = Vec::new();
        let mut accepting = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            accepting.push(self.is_accepting(p) && other.is_accepting(q));
            let (ra, rb) = (self.transitions(p), other.transitions(q));
            let mut row = Vec::new();
            let (mut x, mut y) = (0, 0);
            while x < ra.len() && y < rb.len() {
                let (la, lb) = (ra[x].0, rb[y].0);
                if la < lb {
                    x += 1;
                } else if lb < la {
                    y += 1;
                } else {
                    let xe = x + ra[x..].iter().take_while(|t| t.0 == la).count();
                    let ye = y + rb[y..].iter().take_while(|t| t.0 == la).count();
                    for &(_, da) in &ra[x..xe] {
                        for &(_, db) in &rb[y..ye] {
                            let id = match ids.get(&(da, db)) {
                                Some(&id) => id,
                                None => {
                                    check_states(pairs.len() + 1)?;
                                    let id = pairs.len() as StateId;
                                    ids.insert((da, db), id);
                                    pairs.push((da, db));
                                    id
                                }
                            };
                            row.push((la, id));
                        }
                    }
                    x = xe;
                    y = ye;
                }
            }
            trans.push(row);
            i += 1;
        }
        Ok(Automaton::from_parts(self.alphabet.clone(), self.codec.clone(), initial, accepting, trans))
    }

    pub fn union(&self, other: &Automaton) -> Result<Automaton> {
        self.check_compatible(other)?;
        let off = self.num_states() as StateId;
        check_states(self.num_states() + other.num_states())?;
        let initial = self.initial.iter().copied().chain(other.initial.iter().map(|&s| s + off)).collect();
        let accepting = self.accepting.iter().chain(&other.accepting).copied().collect();
        let trans = self
            .trans
            .iter()
            .cloned()
            .chain(other.trans.iter().map(|row| row.iter().map(|&(l, d)| (l, d + off)).collect()))
            .collect();
        Ok(Automaton::from_parts(self.alphabet.clone(), self.codec.clone(), initial, accepting, trans))
    }

    /// `L(self) \ L(other)`.
    pub fn difference(&self, other: &Automaton) -> Result<Automaton> {
        self.check_compatible(other)?;
        let b = other.minimize()?;
        const DEAD: StateId = StateId::MAX;
        let mut ids: HashMap<(StateId, StateId), StateId> = HashMap::new();
        let mut pairs = Vec::new();
        let mut initial = Vec::new();
        for &p in &self.initial {
            let id = pairs.len() as StateId;
            ids.insert((p, 0), id);
            pairs.push((p, 0));
            initial.push(id);
        }
        let mut trans = Vec::new();
        let mut accepting = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            accepting.push(self.is_accepting(p) && (q == DEAD || !b.is_accepting(q)));
            let mut row = Vec::new();
            for &(l, dp) in self.transitions(p) {
                let dq = if q == DEAD { DEAD } else { b.step(q, l).next().unwrap_or(DEAD) };
                let id = match ids.get(&(dp, dq)) {
                    Some(&id) => id,
                    None => {
                        check_states(pairs.len() + 1)?;
                        let id = pairs.len() as StateId;
                        ids.insert((dp, dq), id);
                        pairs.push((dp, dq));
                        id
                    }
                };
                row.push((l, id));
            }
            trans.push(row);
            i += 1;
        }
        Ok(Automaton::from_parts(self.alphabet.clone(), self.codec.clone(), initial, accepting, trans))
    }

    /// `ValidPad(t) \ L(self)`.
    pub fn complement_relative(&self) -> Result<Automaton> {
        let d = self.minimize()?;
        let codec = &self.codec;
        const DEAD: StateId = StateId::MAX;
        let mut ids: HashMap<(StateId, u32), StateId> = HashMap::new();
        let mut keys = vec![(0 as StateId, 0u32)];
        ids.insert((0, 0), 0);
        let mut letters_by_mask: HashMap<u32, Vec<Letter>> = HashMap::new();
        let mut trans = Vec::new();
        let mut accepting = Vec::new();
        let mut i = 0;
        while i < keys.len() {
            let (q, mask) = keys[i];
            accepting.push(q == DEAD || !d.is_accepting(q));
            let letters = letters_by_mask.entry(mask).or_insert_with(|| codec.letters_respecting(mask));
            let mut row = Vec::with_capacity(letters.len());
            for &l in letters.iter() {
                let dq = if q == DEAD { DEAD } else { d.step(q, l).next().unwrap_or(DEAD) };
                let key = (dq, mask | codec.pad_mask(l));
                let id = match ids.get(&key) {
                    Some(&id) => id,
                    None => {
                        check_states(keys.len() + 1)?;
                        let id = keys.len() as StateId;
                        ids.insert(key, id);
                        keys.push(key);
                        id
                    }
                };
                row.push((l, id));
            }
            trans.push(row);
            i += 1;
        }
        Ok(Automaton::from_parts(self.alphabet.clone(), codec.clone(), vec![0], accepting, trans))
    }

    /// Existentially quantifies track `track` away.
    ///
    /// Letters that become all-`⊥` on the remaining tracks can only occur as a
    /// suffix; they are treated as silent moves at the end of the word and then
    /// removed.
    pub fn project(&self, track: usize) -> Result<Automaton> {
        let t = self.tracks();
        if t < 2 {
            return Err(Error::Arity("cannot project a 1-track automaton".into()));
        }
        if track >= t {
            return Err(Error::IndexOutOfRange { index: track, bound: t });
        }
        let codec = Codec::new(self.alphabet.len(), t - 1)?;
        let pad = codec.pad();
        let n = self.num_states();
        let mut trans: Vec<Vec<(Letter, StateId)>> = vec![Vec::new(); n];
        let mut silent_rev: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for (s, out) in self.trans.iter().enumerate() {
            for &(l, d) in out {
                let digits: Vec<Sym> = (0..t).filter(|&i| i != track).map(|i| self.codec.digit(l, i)).collect();
                if digits.iter().all(|&x| x == pad) {
                    silent_rev[d as usize].push(s as StateId);
                } else {
                    trans[s].push((codec.encode(&digits), d));
                }
            }
        }
        let mut accepting = self.accepting.clone();
        let mut stack: Vec<StateId> = self.accepting_states().collect();
        while let Some(s) = stack.pop() {
            for &p in &silent_rev[s as usize] {
                if !accepting[p as usize] {
                    accepting[p as usize] = true;
                    stack.push(p);
                }
            }
        }
        Ok(Automaton::from_parts(self.alphabet.clone(), codec, self.initial.clone(), accepting, trans).trim())
    }

    /// Inserts a fresh unconstrained track at position `at` (0 ≤ at ≤ t).
    pub fn cylindrify(&self, at: usize) -> Result<Automaton> {
        let t = self.tracks();
        if at > t {
            return Err(Error::IndexOutOfRange { index: at, bound: t + 1 });
        }
        let map: Vec<usize> = (0..t).map(|i| if i < at { i } else { i + 1 }).collect();
        join(&self.alphabet, t + 1, &[Component::new(self, &map)])
    }

    /// Reorders tracks: input track `i` becomes output track `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Automaton> {
        let t = self.tracks();
        if perm.len() != t {
            return Err(Error::Permutation(format!("expected {t} entries, got {}", perm.len())));
        }
        let mut seen = vec![false; t];
        for &p in perm {
            if p >= t || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Permutation(format!("{perm:?} is not a permutation of 0..{t}")));
            }
        }
        let trans = self
            .trans
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&(l, d)| {
                        let mut digits = vec![0; t];
                        for (i, &p) in perm.iter().enumerate() {
                            digits[p] = self.codec.digit(l, i);
                        }
                        (self.codec.encode(&digits), d)
                    })
                    .collect()
            })
            .collect();
        Ok(Automaton::from_parts(
            self.alphabet.clone(),
            self.codec.clone(),
            self.initial.clone(),
            self.accepting.clone(),
            trans,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;

    fn fc(a: &Alphabet, c: usize) -> Automaton {
        let mut b = Automaton::builder(a, 2).unwrap();
        let s = b.add_states(c + 1);
        b.add_initial(s[0]);
        b.add(s[0], &["a", "a"], s[0]).unwrap();
        for i in 0..c {
            b.add(s[i], &["_", "a"], s[i + 1]).unwrap();
        }
        b.set_accepting(s[c], true);
        b.build().unwrap()
    }

    #[test]
    fn disjoint_offsets_intersect_to_empty() {
        let a = Alphabet::chars("a").unwrap();
        assert!(fc(&a, 1).intersect(&fc(&a, 2)).unwrap().is_empty());
    }

    #[test]
    fn regular_intersection() {
        let a = Alphabet::chars("a").unwrap();
        let x = Automaton::from_regex(&a, "a*").unwrap();
        let y = Automaton::from_regex(&a, "(aa)*").unwrap();
        assert!(x.intersect(&y).unwrap().equivalent(&y).unwrap());
    }

    #[test]
    fn projections_of_successor() {
        let a = Alphabet::chars("a").unwrap();
        let r = fc(&a, 1);
        let first = r.project(1).unwrap();
        let second = r.project(0).unwrap();
        assert!(first.equivalent(&Automaton::from_regex(&a, "a*").unwrap()).unwrap());
        assert!(second.equivalent(&Automaton::from_regex(&a, "a+").unwrap()).unwrap());
        assert!(r.project(2).is_err());
    }

    #[test]
    fn complement_within_valid_pad() {
        let a = Alphabet::chars("a").unwrap();
        let r = fc(&a, 1);
        let c = r.complement_relative().unwrap();
        assert!(c.is_valid_padded());
        assert!(c.contains_str(&["aa", "a"]).unwrap());
        assert!(!c.contains_str(&["a", "aa"]).unwrap());
        assert!(c.complement_relative().unwrap().equivalent(&r).unwrap());
        let e = Automaton::empty(&a, 2).unwrap().complement_relative().unwrap();
        assert!(e.equivalent(&Automaton::universal(&a, 2).unwrap()).unwrap());
    }

    #[test]
    fn permutation_inverts() {
        let a = Alphabet::chars("a").unwrap();
        let inv = fc(&a, 1).permute(&[1, 0]).unwrap();
        assert!(inv.contains_str(&["aa", "a"]).unwrap());
        assert!(fc(&a, 1).permute(&[0, 0]).is_err());
        assert!(fc(&a, 1).permute(&[0, 1]).unwrap().equivalent(&fc(&a, 1)).unwrap());
    }

    #[test]
    fn cylindrify_then_project_is_identity() {
        let a = Alphabet::chars("ab").unwrap();
        let x = Automaton::from_regex(&a, "a*").unwrap();
        let c = x.cylindrify(1).unwrap();
        assert!(c.contains_str(&["aa", "bbb"]).unwrap());
        assert!(c.project(1).unwrap().equivalent(&x).unwrap());
        assert!(x.cylindrify(3).is_err());
    }
}
