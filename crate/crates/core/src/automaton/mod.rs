//! Finite automata over `t`-track padded alphabets.
//!
//! A letter of a `t`-track automaton is a tuple of `t` entries, each either an
//! alphabet symbol or the padding token `⊥`, never all padding. Letters are packed
//! into a single integer: the tuple is read as a base-`(n+1)` numeral with track 0
//! as the most significant digit and `⊥` as the largest digit `n`. Integer order on
//! letters is therefore the track-wise lexicographic order with `⊥` last, which is
//! the order used for every shortlex tie-break in the crate.
//!
//! Every automaton produced here accepts only words of `ValidPad(t)`: on each track,
//! once `⊥` appears it persists to the end of the word.

mod join;
mod json;
mod minimize;
mod ops;
mod regex;
mod search;

use std::collections::BTreeSet;

use crate::alphabet::{Alphabet, Sym, Word};
use crate::error::{Error, Result};

pub(crate) use join::join;
pub use join::Component;
pub use json::AutomatonJson;
pub use ops::BoolMode;

pub type StateId = u32;
pub type Letter = u32;

/// Packs and unpacks multi-track letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Codec {
    base: u32,
    tracks: usize,
    powers: Vec<u32>,
}

impl Codec {
    pub fn new(alphabet_len: usize, tracks: usize) -> Result<Self> {
        if tracks == 0 {
            return Err(Error::Arity("an automaton needs at least one track".into()));
        }
        if tracks > 16 {
            return Err(Error::Arity(format!("{tracks} tracks is more than supported (16)")));
        }
        let base = alphabet_len as u64 + 1;
        let mut powers = vec![0u32; tracks];
        let mut p: u64 = 1;
        for i in (0..tracks).rev() {
            powers[i] = p as u32;
            p = p.checked_mul(base).filter(|&v| v <= u32::MAX as u64).ok_or_else(|| {
                Error::Arity(format!("{tracks} tracks over {alphabet_len} symbols overflows the letter encoding"))
            })?;
        }
        Ok(Codec { base: base as u32, tracks, powers })
    }

    pub fn tracks(&self) -> usize {
        self.tracks
    }

    /// The digit used for `⊥`.
    pub fn pad(&self) -> Sym {
        self.base - 1
    }

    /// One past the largest letter code (the all-`⊥` tuple is this minus one).
    pub fn letter_space(&self) -> u32 {
        self.powers[0] * self.base
    }

    pub fn all_pad(&self) -> Letter {
        self.letter_space() - 1
    }

    pub fn encode(&self, digits: &[Sym]) -> Letter {
        debug_assert_eq!(digits.len(), self.tracks);
        digits.iter().zip(&self.powers).map(|(&d, &p)| d * p).sum()
    }

    pub fn digit(&self, letter: Letter, track: usize) -> Sym {
        (letter / self.powers[track]) % self.base
    }

    pub fn decode(&self, letter: Letter) -> Vec<Sym> {
        (0..self.tracks).map(|i| self.digit(letter, i)).collect()
    }

    /// Bit `i` is set when track `i` carries `⊥`.
    pub fn pad_mask(&self, letter: Letter) -> u32 {
        let pad = self.pad();
        (0..self.tracks).fold(0, |m, i| if self.digit(letter, i) == pad { m | (1 << i) } else { m })
    }

    pub fn full_mask(&self) -> u32 {
        (1u32 << self.tracks) - 1
    }

    /// Every legal letter (not all-`⊥`) whose padded tracks include `mask`.
    pub fn letters_respecting(&self, mask: u32) -> Vec<Letter> {
        let mut out = Vec::new();
        let mut digits = vec![0 as Sym; self.tracks];
        self.fill(0, mask, &mut digits, &mut out);
        out.sort_unstable();
        out
    }

    fn fill(&self, i: usize, mask: u32, digits: &mut Vec<Sym>, out: &mut Vec<Letter>) {
        if i == self.tracks {
            let l = self.encode(digits);
            if l != self.all_pad() {
                out.push(l);
            }
            return;
        }
        if mask & (1 << i) != 0 {
            digits[i] = self.pad();
            self.fill(i + 1, mask, digits, out);
        } else {
            for d in 0..self.base {
                digits[i] = d;
                self.fill(i + 1, mask, digits, out);
            }
        }
    }
}

/// A track symbol in readable form: `None` is `⊥`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TrackSymbol(pub Vec<Option<Sym>>);

impl TrackSymbol {
    pub fn encode(&self, codec: &Codec) -> Result<Letter> {
        if self.0.len() != codec.tracks() {
            return Err(Error::Arity(format!(
                "track symbol has {} entries, expected {}",
                self.0.len(),
                codec.tracks()
            )));
        }
        if self.0.iter().all(Option::is_none) {
            return Err(Error::Malformed("the all-padding track symbol is illegal".into()));
        }
        let digits: Vec<Sym> = self
            .0
            .iter()
            .map(|e| match e {
                Some(s) if *s < codec.pad() => Ok(*s),
                Some(s) => Err(Error::IndexOutOfRange { index: *s as usize, bound: codec.pad() as usize }),
                None => Ok(codec.pad()),
            })
            .collect::<Result<_>>()?;
        Ok(codec.encode(&digits))
    }

    pub fn decode(codec: &Codec, letter: Letter) -> Self {
        let pad = codec.pad();
        TrackSymbol(codec.decode(letter).into_iter().map(|d| (d != pad).then_some(d)).collect())
    }
}

/// Convolution of a word tuple: shorter components are padded with `⊥`.
pub fn convolve(codec: &Codec, words: &[Word]) -> Vec<Letter> {
    let len = words.iter().map(Vec::len).max().unwrap_or(0);
    let pad = codec.pad();
    (0..len)
        .map(|i| {
            let digits: Vec<Sym> = words.iter().map(|w| w.get(i).copied().unwrap_or(pad)).collect();
            codec.encode(&digits)
        })
        .collect()
}

/// Inverse of [`convolve`] on validly padded words.
pub fn deconvolve(codec: &Codec, letters: &[Letter]) -> Vec<Word> {
    let pad = codec.pad();
    (0..codec.tracks()).map(|t| letters.iter().map(|&l| codec.digit(l, t)).filter(|&d| d != pad).collect()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automaton {
    alphabet: Alphabet,
    codec: Codec,
    initial: Vec<StateId>,
    accepting: Vec<bool>,
    trans: Vec<Vec<(Letter, StateId)>>,
    deterministic: bool,
}

impl Automaton {
    pub(crate) fn from_parts(
        alphabet: Alphabet,
        codec: Codec,
        mut initial: Vec<StateId>,
        accepting: Vec<bool>,
        mut trans: Vec<Vec<(Letter, StateId)>>,
    ) -> Self {
        initial.sort_unstable();
        initial.dedup();
        for row in &mut trans {
            row.sort_unstable();
            row.dedup();
        }
        let deterministic = initial.len() == 1 && trans.iter().all(|row| row.windows(2).all(|w| w[0].0 != w[1].0));
        Automaton { alphabet, codec, initial, accepting, trans, deterministic }
    }

    pub fn builder(alphabet: &Alphabet, tracks: usize) -> Result<Builder> {
        Ok(Builder {
            alphabet: alphabet.clone(),
            codec: Codec::new(alphabet.len(), tracks)?,
            initial: Vec::new(),
            accepting: Vec::new(),
            trans: Vec::new(),
        })
    }

    /// The automaton accepting nothing.
    pub fn empty(alphabet: &Alphabet, tracks: usize) -> Result<Self> {
        let codec = Codec::new(alphabet.len(), tracks)?;
        Ok(Automaton::from_parts(alphabet.clone(), codec, vec![0], vec![false], vec![Vec::new()]))
    }

    /// The automaton accepting every validly padded word, i.e. `ValidPad(t)`.
    /// For one track this is `Σ*`.
    pub fn universal(alphabet: &Alphabet, tracks: usize) -> Result<Self> {
        let codec = Codec::new(alphabet.len(), tracks)?;
        // states are pad masks, excluding the full mask
        let full = codec.full_mask();
        let states = full as usize;
        let mut trans = vec![Vec::new(); states];
        for mask in 0..full {
            for l in codec.letters_respecting(mask) {
                let m2 = mask | codec.pad_mask(l);
                if m2 != full {
                    trans[mask as usize].push((l, m2));
                }
            }
        }
        Ok(Automaton::from_parts(alphabet.clone(), codec, vec![0], vec![true; states], trans))
    }

    /// 1-track automaton for a finite set of words.
    pub fn from_words(alphabet: &Alphabet, words: &[Word]) -> Result<Self> {
        Automaton::from_tuples(alphabet, 1, &words.iter().map(|w| vec![w.clone()]).collect::<Vec<_>>())
    }

    /// Automaton for a finite set of word tuples (a trie over convolutions).
    pub fn from_tuples(alphabet: &Alphabet, tracks: usize, tuples: &[Vec<Word>]) -> Result<Self> {
        let codec = Codec::new(alphabet.len(), tracks)?;
        let mut trans: Vec<Vec<(Letter, StateId)>> = vec![Vec::new()];
        let mut accepting = vec![false];
        for t in tuples {
            if t.len() != tracks {
                return Err(Error::Arity(format!("tuple of arity {}, expected {tracks}", t.len())));
            }
            check_symbols(alphabet, t)?;
            let mut s = 0usize;
            for l in convolve(&codec, t) {
                let next = trans[s].iter().find(|(x, _)| *x == l).map(|&(_, d)| d as usize);
                s = match next {
                    Some(d) => d,
                    None => {
                        trans.push(Vec::new());
                        accepting.push(false);
                        let d = trans.len() - 1;
                        trans[s].push((l, d as StateId));
                        d
                    }
                };
            }
            accepting[s] = true;
        }
        Ok(Automaton::from_parts(alphabet.clone(), codec, vec![0], accepting, trans))
    }

    pub fn tracks(&self) -> usize {
        self.codec.tracks()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn codec(&self) -> &Codec {
        &self.codec
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.trans.iter().map(Vec::len).sum()
    }

    pub fn initial(&self) -> &[StateId] {
        &self.initial
    }

    pub fn is_accepting(&self, s: StateId) -> bool {
        self.accepting[s as usize]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = StateId> + '_ {
        self.accepting.iter().enumerate().filter(|(_, &a)| a).map(|(i, _)| i as StateId)
    }

    /// Outgoing transitions of `s`, sorted by letter.
    pub fn transitions(&self, s: StateId) -> &[(Letter, StateId)] {
        &self.trans[s as usize]
    }

    pub fn is_deterministic(&self) -> bool {
        self.deterministic
    }

    /// Targets of `s` on `letter`.
    pub fn step(&self, s: StateId, letter: Letter) -> impl Iterator<Item = StateId> + '_ {
        let row = &self.trans[s as usize];
        let lo = row.partition_point(|&(l, _)| l < letter);
        row[lo..].iter().take_while(move |&&(l, _)| l == letter).map(|&(_, d)| d)
    }

    pub fn accepts_letters(&self, letters: &[Letter]) -> bool {
        let mut cur: BTreeSet<StateId> = self.initial.iter().copied().collect();
        for &l in letters {
            cur = cur.iter().flat_map(|&s| self.step(s, l)).collect();
            if cur.is_empty() {
                return false;
            }
        }
        cur.iter().any(|&s| self.is_accepting(s))
    }

    /// Membership of a word tuple, via its convolution.
    pub fn contains(&self, words: &[Word]) -> Result<bool> {
        if words.len() != self.tracks() {
            return Err(Error::Arity(format!("tuple of arity {}, expected {}", words.len(), self.tracks())));
        }
        check_symbols(&self.alphabet, words)?;
        Ok(self.accepts_letters(&convolve(&self.codec, words)))
    }

    /// Membership with words in textual form (see [`Alphabet::parse_word`]).
    pub fn contains_str(&self, words: &[&str]) -> Result<bool> {
        let ws = words.iter().map(|w| self.alphabet.parse_word(w)).collect::<Result<Vec<_>>>()?;
        self.contains(&ws)
    }

    pub(crate) fn check_compatible(&self, other: &Automaton) -> Result<()> {
        if self.tracks() != other.tracks() {
            return Err(Error::Arity(format!("{} tracks vs {} tracks", self.tracks(), other.tracks())));
        }
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(format!("{:?} vs {:?}", self.alphabet, other.alphabet)));
        }
        Ok(())
    }

    /// Checks `L(self) ⊆ ValidPad(t)`: explores (state, pad mask) pairs and looks for
    /// an accepting state reachable through a padding violation.
    pub fn is_valid_padded(&self) -> bool {
        let codec = &self.codec;
        let full = codec.full_mask();
        let mut seen = BTreeSet::new();
        let mut stack: Vec<(StateId, u32, bool)> = self.initial.iter().map(|&s| (s, 0, false)).collect();
        while let Some((s, mask, bad)) = stack.pop() {
            if !seen.insert((s, mask, bad)) {
                continue;
            }
            if bad && self.is_accepting(s) {
                return false;
            }
            for &(l, d) in self.transitions(s) {
                let lm = codec.pad_mask(l);
                let violation = lm == full || (mask & !lm) != 0;
                stack.push((d, mask | lm, bad || violation));
            }
        }
        true
    }

    /// Re-expresses the automaton over a larger alphabet containing the current one.
    pub fn extend_alphabet(&self, larger: &Alphabet) -> Result<Automaton> {
        if !self.alphabet.is_subset_of(larger) {
            return Err(Error::AlphabetMismatch(format!("{:?} is not a subset of {:?}", self.alphabet, larger)));
        }
        let codec = Codec::new(larger.len(), self.tracks())?;
        let remap: Vec<Sym> = self
            .alphabet
            .symbols()
            .iter()
            .map(|s| larger.index(s).expect("subset"))
            .chain(std::iter::once(codec.pad()))
            .collect();
        let trans = self
            .trans
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&(l, d)| {
                        let digits: Vec<Sym> = self.codec.decode(l).into_iter().map(|x| remap[x as usize]).collect();
                        (codec.encode(&digits), d)
                    })
                    .collect()
            })
            .collect();
        Ok(Automaton::from_parts(larger.clone(), codec, self.initial.clone(), self.accepting.clone(), trans))
    }
}

pub(crate) fn check_symbols(alphabet: &Alphabet, words: &[Word]) -> Result<()> {
    for w in words {
        for &s in w {
            if s as usize >= alphabet.len() {
                return Err(Error::UnknownSymbol(format!("#{s}")));
            }
        }
    }
    Ok(())
}

/// Incremental construction of an automaton from named symbols.
#[derive(Debug, Clone)]
pub struct Builder {
    alphabet: Alphabet,
    codec: Codec,
    initial: Vec<StateId>,
    accepting: Vec<bool>,
    trans: Vec<Vec<(Letter, StateId)>>,
}

impl Builder {
    pub fn add_state(&mut self, accepting: bool) -> StateId {
        self.accepting.push(accepting);
        self.trans.push(Vec::new());
        (self.accepting.len() - 1) as StateId
    }

    pub fn add_states(&mut self, n: usize) -> Vec<StateId> {
        (0..n).map(|_| self.add_state(false)).collect()
    }

    pub fn set_accepting(&mut self, s: StateId, accepting: bool) {
        self.accepting[s as usize] = accepting;
    }

    pub fn add_initial(&mut self, s: StateId) {
        self.initial.push(s);
    }

    pub fn codec(&self) -> &Codec {
        &self.codec
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn add_letter(&mut self, src: StateId, letter: Letter, dst: StateId) {
        self.trans[src as usize].push((letter, dst));
    }

    pub fn add_track_symbol(&mut self, src: StateId, sym: &TrackSymbol, dst: StateId) -> Result<()> {
        let l = sym.encode(&self.codec)?;
        self.add_letter(src, l, dst);
        Ok(())
    }

    /// Adds a transition labelled by symbol names; `_` or `⊥` stands for padding.
    pub fn add(&mut self, src: StateId, names: &[&str], dst: StateId) -> Result<()> {
        let entries = names
            .iter()
            .map(|n| {
                if *n == crate::alphabet::PAD_ASCII || *n == crate::alphabet::PAD_TOKEN {
                    Ok(None)
                } else {
                    self.alphabet.sym(n).map(Some)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        self.add_track_symbol(src, &TrackSymbol(entries), dst)
    }

    pub fn build(self) -> Result<Automaton> {
        let n = self.accepting.len() as StateId;
        if n == 0 {
            return Automaton::empty(&self.alphabet, self.codec.tracks());
        }
        if self.initial.iter().any(|&s| s >= n) || self.trans.iter().flatten().any(|&(_, d)| d >= n) {
            return Err(Error::Malformed("state id out of range".into()));
        }
        Ok(Automaton::from_parts(self.alphabet, self.codec, self.initial, self.accepting, self.trans))
    }
}
