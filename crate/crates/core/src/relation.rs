//! Binary automatic relations: 2-track automata read as relations on words, or
//! as the edge set of a graph whose vertices are all words.

use std::collections::BTreeSet;

use crate::alphabet::{shortlex_cmp, Alphabet, Sym, Word};
use crate::automaton::{join, Automaton, Component};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomaticRelation {
    base: Automaton,
}

/// Vertices and edges of a finite slice of a graph.
pub type Slice = (Vec<Word>, Vec<(Word, Word)>);

/// Words related to a fixed word, up to a length cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Neighbours {
    pub words: Vec<Word>,
    /// Some related word was longer than the cap and is missing.
    pub truncated: bool,
}

impl AutomaticRelation {
    pub fn new(base: Automaton) -> Result<Self> {
        if base.tracks() != 2 {
            return Err(Error::Arity(format!("a relation needs 2 tracks, got {}", base.tracks())));
        }
        if !base.is_valid_padded() {
            return Err(Error::Malformed("accepted language contains an invalidly padded word".into()));
        }
        Ok(AutomaticRelation { base })
    }

    /// Wraps an automaton produced by a construction known to respect padding.
    pub(crate) fn trusted(base: Automaton) -> Self {
        debug_assert_eq!(base.tracks(), 2);
        AutomaticRelation { base }
    }

    pub fn automaton(&self) -> &Automaton {
        &self.base
    }

    pub fn into_automaton(self) -> Automaton {
        self.base
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.base.alphabet()
    }

    pub fn identity(alphabet: &Alphabet) -> Result<Self> {
        let mut b = Automaton::builder(alphabet, 2)?;
        let s = b.add_state(true);
        b.add_initial(s);
        for x in alphabet.symbols() {
            b.add(s, &[x, x], s)?;
        }
        Ok(Self::trusted(b.build()?))
    }

    /// Pairs of words of equal length.
    pub fn equal_length(alphabet: &Alphabet) -> Result<Self> {
        let mut b = Automaton::builder(alphabet, 2)?;
        let s = b.add_state(true);
        b.add_initial(s);
        for x in alphabet.symbols() {
            for y in alphabet.symbols() {
                b.add(s, &[x, y], s)?;
            }
        }
        Ok(Self::trusted(b.build()?))
    }

    /// `Σ* × Σ*`.
    pub fn all(alphabet: &Alphabet) -> Result<Self> {
        Ok(Self::trusted(Automaton::universal(alphabet, 2)?))
    }

    pub fn empty(alphabet: &Alphabet) -> Result<Self> {
        Ok(Self::trusted(Automaton::empty(alphabet, 2)?))
    }

    /// `{(xⁿ, xⁿ⁺ᶜ) : n ≥ 0}` for the symbol `x`.
    pub fn offset_successor(alphabet: &Alphabet, x: &str, c: usize) -> Result<Self> {
        if c == 0 {
            return Err(Error::NotApplicable("offset must be at least 1".into()));
        }
        let mut b = Automaton::builder(alphabet, 2)?;
        let s = b.add_states(c + 1);
        b.add_initial(s[0]);
        b.add(s[0], &[x, x], s[0])?;
        for i in 0..c {
            b.add(s[i], &["_", x], s[i + 1])?;
        }
        b.set_accepting(s[c], true);
        Ok(Self::trusted(b.build()?))
    }

    pub fn from_pairs(alphabet: &Alphabet, pairs: &[(Word, Word)]) -> Result<Self> {
        let tuples: Vec<Vec<Word>> = pairs.iter().map(|(u, v)| vec![u.clone(), v.clone()]).collect();
        Ok(Self::trusted(Automaton::from_tuples(alphabet, 2, &tuples)?))
    }

    /// `A × B` for 1-track languages.
    pub fn product(left: &Automaton, right: &Automaton) -> Result<Self> {
        for l in [left, right] {
            if l.tracks() != 1 {
                return Err(Error::Arity("product components must be 1-track languages".into()));
            }
        }
        if left.alphabet() != right.alphabet() {
            return Err(Error::AlphabetMismatch(format!("{:?} vs {:?}", left.alphabet(), right.alphabet())));
        }
        let j = join(left.alphabet(), 2, &[Component::new(left, &[0]), Component::new(right, &[1])])?;
        Ok(Self::trusted(j))
    }

    pub fn contains(&self, u: &[Sym], v: &[Sym]) -> Result<bool> {
        self.base.contains(&[u.to_vec(), v.to_vec()])
    }

    pub fn contains_str(&self, u: &str, v: &str) -> Result<bool> {
        self.base.contains_str(&[u, v])
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        Ok(Self::trusted(self.base.union(&other.base)?))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        Ok(Self::trusted(self.base.intersect(&other.base)?))
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        Ok(Self::trusted(self.base.difference(&other.base)?))
    }

    /// `(Σ* × Σ*) \ R`.
    pub fn complement(&self) -> Result<Self> {
        Ok(Self::trusted(self.base.complement_relative()?))
    }

    pub fn minimize(&self) -> Result<Self> {
        Ok(Self::trusted(self.base.minimize()?))
    }

    pub fn inverse(&self) -> Self {
        Self::trusted(self.base.permute(&[1, 0]).expect("valid permutation"))
    }

    pub fn symmetric_closure(&self) -> Result<Self> {
        self.union(&self.inverse())
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        let j = join(self.alphabet(), 3, &[Component::new(&self.base, &[0, 2]), Component::new(&other.base, &[2, 1])])?;
        Ok(Self::trusted(j.project(2)?))
    }

    /// `R[X] = {v : ∃u ∈ X, (u,v) ∈ R}`.
    pub fn image(&self, x: &Automaton) -> Result<Automaton> {
        require_language(x)?;
        let j = join(self.alphabet(), 2, &[Component::new(&self.base, &[0, 1]), Component::new(x, &[0])])?;
        j.project(0)
    }

    /// `R⁻¹[X] = {u : ∃v ∈ X, (u,v) ∈ R}`.
    pub fn preimage(&self, x: &Automaton) -> Result<Automaton> {
        require_language(x)?;
        let j = join(self.alphabet(), 2, &[Component::new(&self.base, &[0, 1]), Component::new(x, &[1])])?;
        j.project(1)
    }

    /// `π1(R)`.
    pub fn domain(&self) -> Result<Automaton> {
        self.base.project(1)
    }

    /// `π2(R)`.
    pub fn range(&self) -> Result<Automaton> {
        self.base.project(0)
    }

    /// Words with no predecessor: `Σ* \ π2(R)`.
    pub fn init_set(&self) -> Result<Automaton> {
        self.range()?.complement_relative()
    }

    /// Shortlex-least `(u, v, v′)` with `v ≠ v′` and both `(u,v), (u,v′) ∈ R`.
    pub fn functional_violation(&self) -> Result<Option<(Word, Word, Word)>> {
        let neq = Self::identity(self.alphabet())?.complement()?;
        let j = join(
            self.alphabet(),
            3,
            &[
                Component::new(&self.base, &[0, 1]),
                Component::new(&self.base, &[0, 2]),
                Component::new(&neq.base, &[1, 2]),
            ],
        )?;
        Ok(j.shortest_tuple().map(triple))
    }

    /// Shortlex-least `(v, u, u′)` with `u ≠ u′` and both `(u,v), (u′,v) ∈ R`.
    pub fn co_functional_violation(&self) -> Result<Option<(Word, Word, Word)>> {
        self.inverse().functional_violation()
    }

    /// Every word has at most one successor.
    pub fn functional(&self) -> Result<bool> {
        Ok(self.functional_violation()?.is_none())
    }

    /// Every word has at most one predecessor.
    pub fn co_functional(&self) -> Result<bool> {
        Ok(self.co_functional_violation()?.is_none())
    }

    pub fn equivalent(&self, other: &Self) -> Result<bool> {
        self.base.equivalent(&other.base)
    }

    pub fn included_in(&self, other: &Self) -> Result<bool> {
        self.base.included_in(&other.base)
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    /// Shortlex-least pair of the relation (by convolution).
    pub fn shortest_pair(&self) -> Option<(Word, Word)> {
        self.base.shortest_tuple().map(pair)
    }

    /// All `v` with `(u, v) ∈ R` and `|v| ≤ max_len`, in shortlex order.
    pub fn successors(&self, u: &[Sym], max_len: usize) -> Result<Neighbours> {
        self.neighbours(0, u, max_len)
    }

    /// All `u` with `(u, v) ∈ R` and `|u| ≤ max_len`, in shortlex order.
    pub fn predecessors(&self, v: &[Sym], max_len: usize) -> Result<Neighbours> {
        self.neighbours(1, v, max_len)
    }

    fn neighbours(&self, fixed: usize, word: &[Sym], max_len: usize) -> Result<Neighbours> {
        crate::automaton::check_symbols(self.alphabet(), &[word.to_vec()])?;
        let a = &self.base;
        let codec = a.codec();
        let pad = codec.pad();
        let other = 1 - fixed;
        let mut found: BTreeSet<(usize, Word)> = BTreeSet::new();
        let mut truncated = false;
        // (state, other word so far, other track closed)
        let mut layer: BTreeSet<(u32, Word, bool)> = a.initial().iter().map(|&s| (s, Vec::new(), false)).collect();
        let mut pos = 0;
        while !layer.is_empty() {
            if pos >= word.len() {
                for (s, v, _) in &layer {
                    if a.is_accepting(*s) {
                        found.insert((v.len(), v.clone()));
                    }
                }
            }
            let want = word.get(pos).copied().unwrap_or(pad);
            let mut next = BTreeSet::new();
            for (s, v, closed) in &layer {
                for &(l, d) in a.transitions(*s) {
                    if codec.digit(l, fixed) != want {
                        continue;
                    }
                    let y = codec.digit(l, other);
                    if y == pad {
                        next.insert((d, v.clone(), true));
                    } else if !closed {
                        if v.len() == max_len {
                            truncated = true;
                            continue;
                        }
                        let mut w = v.clone();
                        w.push(y);
                        next.insert((d, w, false));
                    }
                }
            }
            layer = next;
            pos += 1;
        }
        let mut words: Vec<Word> = found.into_iter().map(|(_, w)| w).collect();
        words.sort_by(|x, y| shortlex_cmp(x, y));
        Ok(Neighbours { words, truncated })
    }

    /// Words of length ≤ `max_len` and the edges among them, in shortlex order.
    pub fn slice(&self, max_len: usize) -> Result<Slice> {
        let vertices = self.alphabet().words_up_to(max_len);
        let mut edges = Vec::new();
        for u in &vertices {
            for v in self.successors(u, max_len)?.words {
                edges.push((u.clone(), v));
            }
        }
        Ok((vertices, edges))
    }
}

fn require_language(x: &Automaton) -> Result<()> {
    if x.tracks() != 1 {
        return Err(Error::Arity(format!("expected a 1-track language, got {} tracks", x.tracks())));
    }
    Ok(())
}

fn pair(mut t: Vec<Word>) -> (Word, Word) {
    let v = t.pop().expect("two tracks");
    let u = t.pop().expect("two tracks");
    (u, v)
}

fn triple(mut t: Vec<Word>) -> (Word, Word, Word) {
    let z = t.pop().expect("three tracks");
    let (x, y) = pair(t);
    (x, y, z)
}
