//! Regular colorings of automatic graphs: verification and bounded synthesis.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Word};
use crate::automaton::{convolve, Automaton, AutomatonJson, Codec, StateId};
use crate::error::{Error, Result, StepBudget};
use crate::recognizable::{partition_defect, PartitionDefect};
use crate::relation::AutomaticRelation;

/// A list of regular languages `V₁ … V_k` claimed to partition `Σ*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularColoring {
    alphabet: Alphabet,
    colors: Vec<Automaton>,
}

impl RegularColoring {
    /// Builds a coloring without checking the partition property; see
    /// [`verify_coloring`] or [`RegularColoring::validated`].
    pub fn new(alphabet: &Alphabet, colors: Vec<Automaton>) -> Result<Self> {
        for c in &colors {
            if c.tracks() != 1 {
                return Err(Error::Arity("colors must be 1-track languages".into()));
            }
            if c.alphabet() != alphabet {
                return Err(Error::AlphabetMismatch(format!("{:?} vs {:?}", c.alphabet(), alphabet)));
            }
        }
        Ok(RegularColoring { alphabet: alphabet.clone(), colors })
    }

    /// As [`RegularColoring::new`], rejecting lists that are not partitions.
    pub fn validated(alphabet: &Alphabet, colors: Vec<Automaton>) -> Result<Self> {
        let c = RegularColoring::new(alphabet, colors)?;
        if let Some(d) = partition_defect(alphabet, &c.colors)? {
            return Err(Error::InvalidColoring(describe_defect(alphabet, &d)));
        }
        Ok(c)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn colors(&self) -> &[Automaton] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Index of the first color containing `w`.
    pub fn color_of(&self, w: &[u32]) -> Result<Option<usize>> {
        for (i, c) in self.colors.iter().enumerate() {
            if c.contains(&[w.to_vec()])? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    pub fn to_json(&self) -> String {
        let j = ColoringJson {
            alphabet: Some(self.alphabet.symbols().to_vec()),
            colors: self.colors.iter().map(Automaton::to_json_value).collect(),
        };
        serde_json::to_string(&j).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: ColoringJson = serde_json::from_str(text)?;
        let colors: Vec<Automaton> = j.colors.iter().map(Automaton::from_json_value).collect::<Result<_>>()?;
        let alphabet = match (&j.alphabet, colors.first()) {
            (Some(a), _) => Alphabet::new(a.iter().cloned())?,
            (None, Some(c)) => c.alphabet().clone(),
            (None, None) => return Err(Error::Json("a coloring needs at least one color".into())),
        };
        RegularColoring::new(&alphabet, colors)
    }
}

#[derive(Serialize, Deserialize)]
struct ColoringJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alphabet: Option<Vec<String>>,
    colors: Vec<AutomatonJson>,
}

/// One-line message naming the offending word.
pub fn describe_defect(alphabet: &Alphabet, d: &PartitionDefect) -> String {
    match d {
        PartitionDefect::Overlap { word, blocks: (i, j) } => {
            format!("{} has colors {i} and {j}", alphabet.format_word(word))
        }
        PartitionDefect::Uncovered { word } => format!("{} has no color", alphabet.format_word(word)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColoringVerdict {
    Proper,
    NotPartition(PartitionDefect),
    /// Shortlex-least edge (by convolution) with both ends in `color`.
    MonochromeEdge {
        u: Word,
        v: Word,
        color: usize,
    },
}

impl ColoringVerdict {
    pub fn is_proper(&self) -> bool {
        matches!(self, ColoringVerdict::Proper)
    }
}

/// Shortlex key of a pair, by its convolution.
pub(crate) fn pair_key(codec: &Codec, u: &Word, v: &Word) -> (usize, Vec<u32>) {
    let c = convolve(codec, &[u.clone(), v.clone()]);
    (c.len(), c)
}

pub fn verify_coloring(e: &AutomaticRelation, c: &RegularColoring) -> Result<ColoringVerdict> {
    if e.alphabet() != c.alphabet() {
        return Err(Error::AlphabetMismatch(format!("{:?} vs {:?}", e.alphabet(), c.alphabet())));
    }
    if let Some(d) = partition_defect(&c.alphabet, &c.colors)? {
        return Ok(ColoringVerdict::NotPartition(d));
    }
    let codec = e.automaton().codec();
    let mut best: Option<((usize, Vec<u32>), ColoringVerdict)> = None;
    for (i, v) in c.colors.iter().enumerate() {
        let mono = e.intersect(&AutomaticRelation::product(v, v)?)?;
        if let Some((x, y)) = mono.shortest_pair() {
            let key = pair_key(codec, &x, &y);
            if best.as_ref().is_none_or(|(k, _)| key < *k) {
                best = Some((key, ColoringVerdict::MonochromeEdge { u: x, v: y, color: i }));
            }
        }
    }
    Ok(best.map_or(ColoringVerdict::Proper, |(_, v)| v))
}

/// Searches colorings `w ↦ label(δ*(q₀, w))` for complete DFAs with at most
/// `state_bound` states and `k`-labelings of their states.
///
/// DFAs are enumerated by number of states, then by transition table in
/// lexicographic order, restricted to tables in breadth-first canonical form
/// (so every initially connected DFA appears once). Labelings are tried in
/// lexicographic order. Returns the first proper coloring; `None` only means
/// that no coloring of this shape exists.
pub fn bounded_color_search(
    e: &AutomaticRelation,
    k: usize,
    state_bound: usize,
    budget: &mut StepBudget,
) -> Result<Option<RegularColoring>> {
    if k == 0 || state_bound == 0 {
        return Err(Error::NotApplicable("k and the state bound must be positive".into()));
    }
    let alphabet = e.alphabet().clone();
    let n = alphabet.len();
    let graph = e.automaton().minimize()?;
    for m in 1..=state_bound {
        let mut table = vec![0u32; m * n];
        let mut found = None;
        enumerate_tables(&mut table, 0, 0, m, n, &mut |t| {
            budget.tick()?;
            let pairs = state_pairs(&graph, t, n)?;
            if let Some(labels) = label_states(m, k, &pairs, budget)? {
                found = Some(labels);
                return Ok(true);
            }
            Ok(false)
        })?;
        if let Some(labels) = found {
            // the enumerator stops with `table` holding the successful DFA
            let coloring = coloring_from_dfa(&alphabet, &table, m, &labels, k)?;
            if !verify_coloring(e, &coloring)?.is_proper() {
                return Err(Error::Internal("synthesized coloring is not proper".into()));
            }
            return Ok(Some(coloring));
        }
    }
    Ok(None)
}

/// Fills `table[pos..]` in lexicographic order with canonical entries; calls
/// `visit` on complete tables and stops (leaving the table intact) once it
/// returns `true`.
fn enumerate_tables(
    table: &mut [u32],
    pos: usize,
    max_seen: u32,
    m: usize,
    n: usize,
    visit: &mut dyn FnMut(&[u32]) -> Result<bool>,
) -> Result<bool> {
    if pos == table.len() {
        if (max_seen as usize) + 1 != m {
            return Ok(false);
        }
        return visit(table);
    }
    let row = pos / n;
    if pos.is_multiple_of(n) && row as u32 > max_seen {
        // state `row` is unreachable under this prefix
        return Ok(false);
    }
    let hi = (max_seen + 1).min(m as u32 - 1);
    for x in 0..=hi {
        table[pos] = x;
        if enumerate_tables(table, pos + 1, max_seen.max(x), m, n, visit)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Pairs `(δ*(u), δ*(v))` over all edges `(u, v)`.
fn state_pairs(graph: &Automaton, table: &[u32], n: usize) -> Result<BTreeSet<(u32, u32)>> {
    let codec = graph.codec();
    let pad = codec.pad();
    let mut seen: HashMap<(StateId, u32, u32), ()> = HashMap::new();
    let mut stack: Vec<(StateId, u32, u32)> = graph.initial().iter().map(|&s| (s, 0, 0)).collect();
    let mut out = BTreeSet::new();
    while let Some(key) = stack.pop() {
        if seen.insert(key, ()).is_some() {
            continue;
        }
        let (s, p, q) = key;
        if graph.is_accepting(s) {
            out.insert((p, q));
        }
        for &(l, d) in graph.transitions(s) {
            let x = codec.digit(l, 0);
            let y = codec.digit(l, 1);
            let np = if x == pad { p } else { table[p as usize * n + x as usize] };
            let nq = if y == pad { q } else { table[q as usize * n + y as usize] };
            stack.push((d, np, nq));
        }
    }
    Ok(out)
}

/// Lexicographically least labeling in `0..k` with distinct labels on every pair.
fn label_states(
    m: usize,
    k: usize,
    pairs: &BTreeSet<(u32, u32)>,
    budget: &mut StepBudget,
) -> Result<Option<Vec<usize>>> {
    if pairs.iter().any(|&(p, q)| p == q) {
        return Ok(None);
    }
    let mut adj = vec![Vec::new(); m];
    for &(p, q) in pairs {
        adj[p as usize].push(q as usize);
        adj[q as usize].push(p as usize);
    }
    let mut labels = vec![usize::MAX; m];
    fn go(i: usize, k: usize, adj: &[Vec<usize>], labels: &mut [usize], budget: &mut StepBudget) -> Result<bool> {
        if i == labels.len() {
            return Ok(true);
        }
        for c in 0..k {
            budget.tick()?;
            if adj[i].iter().all(|&j| j >= i || labels[j] != c) {
                labels[i] = c;
                if go(i + 1, k, adj, labels, budget)? {
                    return Ok(true);
                }
            }
        }
        labels[i] = usize::MAX;
        Ok(false)
    }
    Ok(go(0, k, &adj, &mut labels, budget)?.then_some(labels))
}

fn coloring_from_dfa(
    alphabet: &Alphabet,
    table: &[u32],
    m: usize,
    labels: &[usize],
    k: usize,
) -> Result<RegularColoring> {
    let n = alphabet.len();
    let colors = (0..k)
        .map(|c| {
            let mut b = Automaton::builder(alphabet, 1)?;
            b.add_states(m);
            b.add_initial(0);
            for q in 0..m {
                b.set_accepting(q as StateId, labels[q] == c);
                for x in 0..n {
                    let l = b.codec().encode(&[x as u32]);
                    b.add_letter(q as StateId, l, table[q * n + x]);
                }
            }
            b.build()?.minimize()
        })
        .collect::<Result<_>>()?;
    RegularColoring::new(alphabet, colors)
}
