use std::collections::{HashSet, VecDeque};

use super::{Move, TuringMachine};
use crate::alphabet::{Alphabet, Sym, Word};
use crate::automaton::{join, Automaton, Component};
use crate::error::{Error, Result};
use crate::relation::AutomaticRelation;

/// `Configs`: words over `A_T` with exactly one pair letter, where a blank pair
/// may only come last.
pub fn configs_language(t: &TuringMachine, alphabet: &Alphabet) -> Result<Automaton> {
    let mut b = Automaton::builder(alphabet, 1)?;
    let before = b.add_state(false);
    let after = b.add_state(true);
    let end = b.add_state(true);
    b.add_initial(before);
    for g in t.tape() {
        b.add(before, &[g], before)?;
        b.add(after, &[g], after)?;
    }
    for q in 0..t.states().len() {
        b.add(before, &[&t.pair_name(None, q)], end)?;
        for s in 0..t.tape().len() {
            b.add(before, &[&t.pair_name(Some(s), q)], after)?;
        }
    }
    b.build()
}

/// The successor relation on configurations, over [`TuringMachine::config_alphabet`].
pub fn config_graph(t: &TuringMachine) -> Result<AutomaticRelation> {
    let a = t.config_alphabet()?;
    config_graph_over(t, &a)
}

fn config_graph_over(t: &TuringMachine, a: &Alphabet) -> Result<AutomaticRelation> {
    let mut b = Automaton::builder(a, 2)?;
    let n = t.states().len();
    let p = b.add_state(false);
    let copy = b.add_state(true);
    let fin = b.add_state(true);
    b.add_initial(p);
    let gamma: Vec<&str> = t.tape().iter().map(String::as_str).collect();
    for g in &gamma {
        b.add(p, &[g, g], p)?;
        b.add(copy, &[g, g], copy)?;
    }
    // after a right move into state q: next cell of c, or the blank past the end
    let right_gamma: Vec<_> = (0..n).map(|_| b.add_state(false)).collect();
    let right_blank: Vec<_> = (0..n).map(|_| b.add_state(false)).collect();
    // after the cell left of the head, for a left move into state q
    let left: Vec<_> = (0..n).map(|_| b.add_state(false)).collect();
    for q in 0..n {
        for (i, g) in gamma.iter().enumerate() {
            b.add(right_gamma[q], &[g, &t.pair_name(Some(i), q)], copy)?;
        }
        b.add(right_gamma[q], &["_", &t.pair_name(None, q)], fin)?;
        b.add(right_blank[q], &["_", &t.pair_name(None, q)], fin)?;
    }
    let mut left_used = vec![false; n];
    for r in t.rules() {
        let here = t.pair_name(r.read, r.state);
        let written = t.tape()[r.write].as_str();
        match r.dir {
            Move::R => {
                let to = if r.read.is_some() { right_gamma[r.next] } else { right_blank[r.next] };
                b.add(p, &[&here, written], to)?;
            }
            Move::L => {
                left_used[r.next] = true;
                let to = if r.read.is_some() { copy } else { fin };
                b.add(left[r.next], &[&here, written], to)?;
            }
        }
    }
    for q in (0..n).filter(|&q| left_used[q]) {
        for (i, g) in gamma.iter().enumerate() {
            b.add(p, &[g, &t.pair_name(Some(i), q)], left[q])?;
        }
    }
    AutomaticRelation::new(b.build()?.minimize()?)
}

fn prefixed(a: &Alphabet, x: Sym, y: Sym, rel: &Automaton) -> Result<Automaton> {
    let codec = rel.codec().clone();
    let mut b = Automaton::builder(a, 2)?;
    b.add_states(rel.num_states());
    let start = b.add_state(false);
    b.add_initial(start);
    for s in 0..rel.num_states() as u32 {
        b.set_accepting(s, rel.is_accepting(s));
        for &(l, d) in rel.transitions(s) {
            b.add_letter(s, l, d);
        }
    }
    let first = codec.encode(&[x, y]);
    for &i in rel.initial() {
        b.add_letter(start, first, i);
    }
    b.build()
}

fn symbol_prefix(a: &Alphabet, x: Sym, lang: &Automaton) -> Result<Automaton> {
    Automaton::from_words(a, &[vec![x]])?.concat(lang)
}

fn clique_names(k: usize) -> Vec<String> {
    (1..k.saturating_sub(1)).map(|i| format!("C#{i}")).collect()
}

/// Alphabet `{B, R} ∪ A_T`, plus clique symbols `C#1 … C#(k−2)`.
fn thm4_alphabet(t: &TuringMachine, k: usize) -> Result<Alphabet> {
    let base = t.config_alphabet()?;
    let mut extra = vec!["B".to_string(), "R".to_string()];
    extra.extend(clique_names(k));
    for x in &extra {
        if base.contains(x) {
            return Err(Error::SymbolClash(x.clone()));
        }
    }
    Ok(base.union(&Alphabet::new(extra)?))
}

/// The gadget graph: `(Bc, Rc)` for every configuration, `(Rc, Bc′)` for every
/// step `c → c′`, and `(Bc_init, Bc′)` for every other configuration `c′` of
/// in-degree 0. For `k > 2` a `(k−2)`-clique is joined to every vertex with an
/// edge, so the result is k-colorable iff the 2-coloring exists.
pub fn thm4_graph(t: &TuringMachine, k: usize) -> Result<AutomaticRelation> {
    if k < 2 {
        return Err(Error::NotApplicable("k must be at least 2".into()));
    }
    let a = thm4_alphabet(t, k)?;
    let (bs, rs) = (a.sym("B")?, a.sym("R")?);
    let configs = configs_language(t, &a)?.minimize()?;
    let g = config_graph_over(t, &a)?;
    let init = configs.difference(&g.range()?)?.minimize()?;
    let c_init = t.encode(&a, &t.initial_config())?;
    let others = init.difference(&Automaton::from_words(&a, std::slice::from_ref(&c_init))?)?.minimize()?;

    let id = AutomaticRelation::identity(&a)?;
    let id_configs = join(&a, 2, &[Component::new(id.automaton(), &[0, 1]), Component::new(&configs, &[0])])?;
    let e1 = prefixed(&a, bs, rs, &id_configs)?;
    let e2 = prefixed(&a, rs, bs, g.automaton())?;
    let jump = AutomaticRelation::product(&Automaton::from_words(&a, &[c_init])?, &others)?;
    let e3 = prefixed(&a, bs, bs, jump.automaton())?;
    let mut e = AutomaticRelation::new(e1.union(&e2)?.union(&e3)?.minimize()?)?;

    let clique: Vec<Word> = clique_names(k).iter().map(|x| Ok(vec![a.sym(x)?])).collect::<Result<_>>()?;
    if !clique.is_empty() {
        let touched = e.domain()?.union(&e.range()?)?.minimize()?;
        let mut pairs = Vec::new();
        for u in &clique {
            for v in &clique {
                if u != v {
                    pairs.push((u.clone(), v.clone()));
                }
            }
        }
        let inner = AutomaticRelation::from_pairs(&a, &pairs)?;
        let spokes = AutomaticRelation::product(&Automaton::from_words(&a, &clique)?, &touched)?;
        e = e.union(&inner)?.union(&spokes)?.minimize()?;
    }
    Ok(e)
}

/// The coloring `{B}·Reach ∪ {R}·(Configs \ Reach)` against its complement, with
/// one extra color per clique vertex when `k > 2`. `reach` is a language over
/// [`TuringMachine::config_alphabet`].
pub fn thm4_coloring(t: &TuringMachine, k: usize, reach: &Automaton) -> Result<crate::coloring::RegularColoring> {
    if k < 2 {
        return Err(Error::NotApplicable("k must be at least 2".into()));
    }
    let a = thm4_alphabet(t, k)?;
    let reach = reach.extend_alphabet(&a)?;
    let configs = configs_language(t, &a)?;
    let unreached = configs.difference(&reach)?;
    let names = clique_names(k);
    let clique: Vec<Word> = names.iter().map(|x| Ok(vec![a.sym(x)?])).collect::<Result<_>>()?;
    let c1 = symbol_prefix(&a, a.sym("B")?, &reach)?.union(&symbol_prefix(&a, a.sym("R")?, &unreached)?)?.minimize()?;
    let mut colors = vec![c1.clone()];
    let mut rest = c1;
    for w in &clique {
        let single = Automaton::from_words(&a, std::slice::from_ref(w))?;
        rest = rest.union(&single)?;
        colors.push(single);
    }
    colors.insert(1, rest.complement_relative()?.minimize()?);
    crate::coloring::RegularColoring::new(&a, colors)
}

/// Encoded configurations visited by simulating `t` from the initial
/// configuration; `None` if it has not halted after `max_steps` steps.
pub fn simulated_reach(t: &TuringMachine, alphabet: &Alphabet, max_steps: usize) -> Result<Option<Vec<Word>>> {
    let mut c = t.initial_config();
    let mut out = vec![t.encode(alphabet, &c)?];
    for _ in 0..max_steps {
        match t.step(&c) {
            None => return Ok(Some(out)),
            Some(n) => {
                out.push(t.encode(alphabet, &n)?);
                c = n;
            }
        }
    }
    Ok(t.step(&c).is_none().then_some(out))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachResult {
    /// Visited words in BFS order.
    pub words: Vec<Word>,
    /// Some successor was longer than `max_len`, or `max_vertices` was hit.
    pub truncated: bool,
}

/// Breadth-first search over `R` from `start`, restricted to words of length
/// at most `max_len` and to at most `max_vertices` visited words.
pub fn reach_bfs(r: &AutomaticRelation, start: &[Sym], max_len: usize, max_vertices: usize) -> Result<ReachResult> {
    let mut seen: HashSet<Word> = HashSet::from([start.to_vec()]);
    let mut words = vec![start.to_vec()];
    let mut queue = VecDeque::from([start.to_vec()]);
    let mut truncated = false;
    while let Some(u) = queue.pop_front() {
        let n = r.successors(&u, max_len)?;
        truncated |= n.truncated;
        for v in n.words {
            if seen.contains(&v) {
                continue;
            }
            if words.len() >= max_vertices {
                return Ok(ReachResult { words, truncated: true });
            }
            seen.insert(v.clone());
            words.push(v.clone());
            queue.push_back(v);
        }
    }
    Ok(ReachResult { words, truncated })
}
