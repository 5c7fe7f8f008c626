use std::collections::{BTreeMap, HashMap, VecDeque};

use super::{Automaton, Letter, StateId};
use crate::error::{check_states, Result};

impl Automaton {
    /// Drops states that are unreachable or cannot reach acceptance.
    pub fn trim(&self) -> Automaton {
        let n = self.num_states();
        let mut reach = vec![false; n];
        let mut stack: Vec<StateId> = self.initial.clone();
        while let Some(s) = stack.pop() {
            if std::mem::replace(&mut reach[s as usize], true) {
                continue;
            }
            stack.extend(self.transitions(s).iter().map(|&(_, d)| d));
        }
        let co = self.coreachable();
        let keep: Vec<bool> = (0..n).map(|i| reach[i] && co[i]).collect();
        if !keep.iter().any(|&k| k) {
            return Automaton::empty(&self.alphabet, self.tracks()).expect("codec already valid");
        }
        let mut remap = vec![u32::MAX; n];
        let mut next = 0;
        for i in 0..n {
            if keep[i] {
                remap[i] = next;
                next += 1;
            }
        }
        let initial = self.initial.iter().filter(|&&s| keep[s as usize]).map(|&s| remap[s as usize]).collect();
        let accepting = (0..n).filter(|&i| keep[i]).map(|i| self.accepting[i]).collect();
        let trans = (0..n)
            .filter(|&i| keep[i])
            .map(|i| {
                self.trans[i].iter().filter(|&&(_, d)| keep[d as usize]).map(|&(l, d)| (l, remap[d as usize])).collect()
            })
            .collect();
        Automaton::from_parts(self.alphabet.clone(), self.codec.clone(), initial, accepting, trans)
    }

    /// States from which some accepting state is reachable.
    pub(crate) fn coreachable(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut rev: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for (s, row) in self.trans.iter().enumerate() {
            for &(_, d) in row {
                rev[d as usize].push(s as StateId);
            }
        }
        let mut co = vec![false; n];
        let mut stack: Vec<StateId> = self.accepting_states().collect();
        while let Some(s) = stack.pop() {
            if std::mem::replace(&mut co[s as usize], true) {
                continue;
            }
            stack.extend(rev[s as usize].iter().copied());
        }
        co
    }

    /// Subset construction. The result is a partial DFA over reachable subsets.
    pub fn determinize(&self) -> Result<Automaton> {
        if self.deterministic {
            return Ok(self.clone());
        }
        let mut ids: HashMap<Vec<StateId>, StateId> = HashMap::new();
        let mut sets: Vec<Vec<StateId>> = Vec::new();
        let start = self.initial.clone();
        ids.insert(start.clone(), 0);
        sets.push(start);
        let mut trans = Vec::new();
        let mut accepting = Vec::new();
        let mut i = 0;
        while i < sets.len() {
            let set = sets[i].clone();
            accepting.push(set.iter().any(|&s| self.is_accepting(s)));
            let mut by_letter: BTreeMap<Letter, Vec<StateId>> = BTreeMap::new();
            for &s in &set {
                for &(l, d) in self.transitions(s) {
                    by_letter.entry(l).or_default().push(d);
                }
            }
            let mut row = Vec::with_capacity(by_letter.len());
            for (l, mut ds) in by_letter {
                ds.sort_unstable();
                ds.dedup();
                let id = match ids.get(&ds) {
                    Some(&id) => id,
                    None => {
                        check_states(sets.len() + 1)?;
                        let id = sets.len() as StateId;
                        ids.insert(ds.clone(), id);
                        sets.push(ds);
                        id
                    }
                };
                row.push((l, id));
            }
            trans.push(row);
            i += 1;
        }
        Ok(Automaton::from_parts(self.alphabet.clone(), self.codec.clone(), vec![0], accepting, trans))
    }

    /// Minimal trim DFA with canonical numbering: states are numbered in
    /// breadth-first order from the initial state, following letters in
    /// increasing order. Equal languages give identical automata. The empty
    /// language is a single non-accepting state.
    pub fn minimize(&self) -> Result<Automaton> {
        let dfa = self.trim().determinize()?.trim();
        let n = dfa.num_states();
        // Moore refinement; a missing transition leads to the implicit dead class
        let any_accepting = dfa.accepting.iter().any(|&x| x);
        let all_accepting = dfa.accepting.iter().all(|&x| x);
        let mut class: Vec<u32> = (0..n).map(|i| (dfa.accepting[i] && !all_accepting) as u32).collect();
        let mut count = if any_accepting && !all_accepting { 2 } else { 1 };
        loop {
            let mut sig_ids: HashMap<(u32, Vec<(Letter, u32)>), u32> = HashMap::new();
            let mut next = vec![0u32; n];
            for s in 0..n {
                let sig: Vec<(Letter, u32)> = dfa.trans[s].iter().map(|&(l, d)| (l, class[d as usize])).collect();
                let len = sig_ids.len() as u32;
                next[s] = *sig_ids.entry((class[s], sig)).or_insert(len);
            }
            let new_count = sig_ids.len() as u32;
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        // canonical BFS renumbering of the quotient
        let rep: Vec<usize> = {
            let mut rep = vec![usize::MAX; count as usize];
            for s in (0..n).rev() {
                rep[class[s] as usize] = s;
            }
            rep
        };
        let mut order = vec![u32::MAX; count as usize];
        let start = class[dfa.initial[0] as usize];
        order[start as usize] = 0;
        let mut queue = VecDeque::from([start]);
        let mut numbered = 1;
        let mut classes_in_order = Vec::new();
        while let Some(c) = queue.pop_front() {
            classes_in_order.push(c);
            for &(_, d) in &dfa.trans[rep[c as usize]] {
                let dc = class[d as usize];
                if order[dc as usize] == u32::MAX {
                    order[dc as usize] = numbered;
                    numbered += 1;
                    queue.push_back(dc);
                }
            }
        }
        let accepting = classes_in_order.iter().map(|&c| dfa.accepting[rep[c as usize]]).collect();
        let trans = classes_in_order
            .iter()
            .map(|&c| dfa.trans[rep[c as usize]].iter().map(|&(l, d)| (l, order[class[d as usize] as usize])).collect())
            .collect();
        Ok(Automaton::from_parts(self.alphabet.clone(), self.codec.clone(), vec![0], accepting, trans))
    }
}
