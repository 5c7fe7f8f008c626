use std::collections::{BTreeSet, VecDeque};

use super::{deconvolve, Automaton, Letter, StateId};
use crate::alphabet::Word;
use crate::error::Result;

impl Automaton {
    pub fn is_empty(&self) -> bool {
        let co = self.coreachable();
        let mut seen = vec![false; self.num_states()];
        let mut stack: Vec<StateId> = self.initial.clone();
        while let Some(s) = stack.pop() {
            if co[s as usize] {
                return false;
            }
            if std::mem::replace(&mut seen[s as usize], true) {
                continue;
            }
            stack.extend(self.transitions(s).iter().map(|&(_, d)| d));
        }
        true
    }

    /// The shortlex-least accepted letter sequence, if any.
    pub fn shortest_letters(&self) -> Option<Vec<Letter>> {
        let n = self.num_states();
        // dist[s]: length of the shortest accepted continuation from s
        let mut rev: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for (s, row) in self.trans.iter().enumerate() {
            for &(_, d) in row {
                rev[d as usize].push(s as StateId);
            }
        }
        let mut dist = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for s in self.accepting_states() {
            dist[s as usize] = 0;
            queue.push_back(s);
        }
        while let Some(s) = queue.pop_front() {
            for &p in &rev[s as usize] {
                if dist[p as usize] == usize::MAX {
                    dist[p as usize] = dist[s as usize] + 1;
                    queue.push_back(p);
                }
            }
        }
        let len = self.initial.iter().map(|&s| dist[s as usize]).min()?;
        if len == usize::MAX {
            return None;
        }
        // every prefix of length i reaches only states with dist ≥ len − i, so a
        // greedy choice of the least letter keeping dist = remaining is optimal
        let mut cur: BTreeSet<StateId> = self.initial.iter().copied().filter(|&s| dist[s as usize] == len).collect();
        let mut word = Vec::with_capacity(len);
        for rem in (1..=len).rev() {
            let best = cur
                .iter()
                .flat_map(|&s| self.transitions(s).iter())
                .filter(|&&(_, d)| dist[d as usize] == rem - 1)
                .map(|&(l, _)| l)
                .min()
                .expect("distance invariant");
            cur = cur.iter().flat_map(|&s| self.step(s, best)).filter(|&d| dist[d as usize] == rem - 1).collect();
            word.push(best);
        }
        Some(word)
    }

    /// The shortlex-least accepted tuple (ordered by its convolution), if any.
    pub fn shortest_tuple(&self) -> Option<Vec<Word>> {
        self.shortest_letters().map(|w| deconvolve(&self.codec, &w))
    }

    /// `L(self) ⊆ L(other)`.
    pub fn included_in(&self, other: &Automaton) -> Result<bool> {
        Ok(self.difference(other)?.is_empty())
    }

    /// Shortlex-least tuple in `L(self) \ L(other)`.
    pub fn inclusion_counterexample(&self, other: &Automaton) -> Result<Option<Vec<Word>>> {
        Ok(self.difference(other)?.shortest_tuple())
    }

    pub fn equivalent(&self, other: &Automaton) -> Result<bool> {
        self.check_compatible(other)?;
        let (a, b) = (self.minimize()?, other.minimize()?);
        if a == b {
            return Ok(true);
        }
        // distinct canonical forms always mean distinct languages; the symmetric
        // difference is kept as the authoritative test
        Ok(a.difference(&b)?.is_empty() && b.difference(&a)?.is_empty())
    }

    /// Shortlex-least tuple in the symmetric difference.
    pub fn distinguishing_tuple(&self, other: &Automaton) -> Result<Option<Vec<Word>>> {
        self.check_compatible(other)?;
        let x = self.difference(other)?.shortest_letters();
        let y = other.difference(self)?.shortest_letters();
        let best = match (x, y) {
            (Some(x), Some(y)) => Some(if (x.len(), &x) <= (y.len(), &y) { x } else { y }),
            (x, y) => x.or(y),
        };
        Ok(best.map(|w| deconvolve(&self.codec, &w)))
    }

    /// All accepted tuples whose convolution has length at most `max_len`, in
    /// shortlex order of convolutions.
    pub fn enumerate(&self, max_len: usize) -> Result<Vec<Vec<Word>>> {
        let d = self.minimize()?;
        let co = d.coreachable();
        let mut out = Vec::new();
        let mut layer: Vec<(Vec<Letter>, StateId)> = vec![(Vec::new(), 0)];
        for len in 0..=max_len {
            for (w, s) in &layer {
                if d.is_accepting(*s) {
                    out.push(deconvolve(&d.codec, w));
                }
            }
            if len == max_len {
                break;
            }
            let mut next = Vec::new();
            for (w, s) in &layer {
                for &(l, t) in d.transitions(*s) {
                    if co[t as usize] {
                        let mut v = w.clone();
                        v.push(l);
                        next.push((v, t));
                    }
                }
            }
            layer = next;
        }
        Ok(out)
    }
}
