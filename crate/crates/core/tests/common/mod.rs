#![allow(dead_code)]

use autorel::{
    coloring_from_rec_separator, coloring_from_separator, identity_separator_from_coloring, incompatibility_graph,
    separator_from_coloring, verify_coloring, verify_separator, Alphabet, AutomaticRelation, Automaton, Config,
    Product, RecognizableRelation, RegularColoring, Sym, TrackSymbol, TuringMachine, Word,
};
use rand::Rng;

/// A raw NFA kept next to the automaton built from it, so membership can be
/// checked by a separate simulation.
#[derive(Clone, Debug)]
pub struct RawNfa {
    pub tracks: usize,
    pub states: usize,
    pub initial: Vec<usize>,
    pub accepting: Vec<bool>,
    pub trans: Vec<(usize, Vec<Option<Sym>>, usize)>,
}

impl RawNfa {
    pub fn random<R: Rng>(rng: &mut R, alphabet: &Alphabet, tracks: usize, max_states: usize) -> Self {
        let states = rng.gen_range(1..=max_states);
        let n = alphabet.len() as u32;
        let mut trans = Vec::new();
        for s in 0..states {
            for _ in 0..rng.gen_range(1..=3 * tracks + 1) {
                let letter: Vec<Option<Sym>> = (0..tracks)
                    .map(|_| {
                        let x = rng.gen_range(0..=n);
                        (x < n).then_some(x)
                    })
                    .collect();
                if letter.iter().all(Option::is_none) {
                    continue;
                }
                trans.push((s, letter, rng.gen_range(0..states)));
            }
        }
        let accepting = (0..states).map(|_| rng.gen_bool(0.4)).collect();
        RawNfa { tracks, states, initial: vec![0], accepting, trans }
    }

    pub fn build(&self, alphabet: &Alphabet) -> Automaton {
        let mut b = Automaton::builder(alphabet, self.tracks).unwrap();
        let ids = b.add_states(self.states);
        for &i in &self.initial {
            b.add_initial(ids[i]);
        }
        for (s, &acc) in self.accepting.iter().enumerate() {
            b.set_accepting(ids[s], acc);
        }
        for (s, l, d) in &self.trans {
            b.add_track_symbol(ids[*s], &TrackSymbol(l.clone()), ids[*d]).unwrap();
        }
        b.build().unwrap()
    }

    pub fn accepts(&self, letters: &[Vec<Option<Sym>>]) -> bool {
        let mut cur: Vec<bool> = vec![false; self.states];
        for &i in &self.initial {
            cur[i] = true;
        }
        for l in letters {
            let mut next = vec![false; self.states];
            for (s, t, d) in &self.trans {
                if cur[*s] && t == l {
                    next[*d] = true;
                }
            }
            cur = next;
        }
        (0..self.states).any(|s| cur[s] && self.accepting[s])
    }

    pub fn accepts_tuple(&self, words: &[Word]) -> bool {
        self.accepts(&conv(words))
    }
}

/// Convolution by hand: position `i` holds the `i`-th symbol of every word, or
/// `None` past its end.
pub fn conv(words: &[Word]) -> Vec<Vec<Option<Sym>>> {
    let n = words.iter().map(Vec::len).max().unwrap_or(0);
    (0..n).map(|i| words.iter().map(|w| w.get(i).copied()).collect()).collect()
}

/// A random automatic relation with at most `max_states` states, plus its raw NFA.
/// Relations are the raw NFA's language restricted to well-padded words.
pub fn random_relation<R: Rng>(rng: &mut R, alphabet: &Alphabet, max_states: usize) -> (AutomaticRelation, RawNfa) {
    let raw = RawNfa::random(rng, alphabet, 2, max_states);
    let a = raw.build(alphabet).intersect(&Automaton::universal(alphabet, 2).unwrap()).unwrap();
    (AutomaticRelation::new(a).unwrap(), raw)
}

pub fn random_language<R: Rng>(rng: &mut R, alphabet: &Alphabet, max_states: usize) -> (Automaton, RawNfa) {
    let raw = RawNfa::random(rng, alphabet, 1, max_states);
    (raw.build(alphabet), raw)
}

pub fn ab() -> Alphabet {
    Alphabet::chars("ab").unwrap()
}

pub fn lang(a: &Alphabet, re: &str) -> Automaton {
    Automaton::from_regex(a, re).unwrap()
}

/// Words of `a*b*` as `(p, q)`.
pub fn ab_shape(w: &[Sym]) -> Option<(usize, usize)> {
    let p = w.iter().take_while(|&&x| x == 0).count();
    w[p..].iter().all(|&x| x == 1).then_some((p, w.len() - p))
}

/// Groups `words` by their row and column signature against `probe` under
/// `rel`: a bounded stand-in for `~_R`. Returns the class index of each word.
pub fn signature_classes(words: &[Word], probe: &[Word], rel: impl Fn(&Word, &Word) -> bool) -> Vec<usize> {
    let mut sigs: Vec<(Vec<bool>, Vec<bool>)> = Vec::new();
    words
        .iter()
        .map(|w| {
            let sig = (
                probe.iter().map(|v| rel(w, v)).collect::<Vec<_>>(),
                probe.iter().map(|v| rel(v, w)).collect::<Vec<_>>(),
            );
            match sigs.iter().position(|s| *s == sig) {
                Some(i) => i,
                None => {
                    sigs.push(sig);
                    sigs.len() - 1
                }
            }
        })
        .collect()
}

/// Number of residual classes of a complete DFA for `accepts`, distinguishing
/// prefixes up to `prefix_len` by suffixes up to `suffix_len` over `letters`.
pub fn myhill_nerode_count<L: Clone + PartialEq>(
    letters: &[L],
    prefix_len: usize,
    suffix_len: usize,
    accepts: impl Fn(&[L]) -> bool,
) -> usize {
    let all = |n: usize| {
        let mut out: Vec<Vec<L>> = vec![vec![]];
        let mut layer: Vec<Vec<L>> = vec![vec![]];
        for _ in 0..n {
            layer = layer
                .iter()
                .flat_map(|w| {
                    letters.iter().map(move |l| {
                        let mut x = w.clone();
                        x.push(l.clone());
                        x
                    })
                })
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    };
    let suffixes = all(suffix_len);
    let mut sigs: Vec<Vec<bool>> = Vec::new();
    for p in all(prefix_len) {
        let sig: Vec<bool> = suffixes
            .iter()
            .map(|s| {
                let mut w = p.clone();
                w.extend(s.iter().cloned());
                accepts(&w)
            })
            .collect();
        if !sigs.contains(&sig) {
            sigs.push(sig);
        }
    }
    sigs.len()
}

/// Proper 2-colorability of a finite undirected graph by BFS.
pub fn is_bipartite(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut color = vec![None; n];
    for s in 0..n {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(false);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            let c = color[u].unwrap();
            for &v in &adj[u] {
                match color[v] {
                    None => {
                        color[v] = Some(!c);
                        stack.push(v);
                    }
                    Some(d) if d == c => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

/// Minimum number of all-ones rectangles whose union is exactly the ones of
/// `m`, by trying every combination of closed rectangles.
pub fn exhaustive_min_cover(m: &[Vec<bool>]) -> usize {
    let rows = m.len();
    let mut rects: Vec<(u32, u32)> = Vec::new();
    for subset in 1u32..(1 << rows) {
        let mut cols = u32::MAX;
        for (r, row) in m.iter().enumerate() {
            if subset >> r & 1 == 1 {
                let bits = row.iter().enumerate().fold(0u32, |acc, (j, &b)| if b { acc | 1 << j } else { acc });
                cols &= bits;
            }
        }
        if cols == 0 {
            continue;
        }
        let closed = (0..rows).fold(0u32, |acc, r| {
            let bits = m[r].iter().enumerate().fold(0u32, |acc, (j, &b)| if b { acc | 1 << j } else { acc });
            if bits & cols == cols {
                acc | 1 << r
            } else {
                acc
            }
        });
        if !rects.contains(&(closed, cols)) {
            rects.push((closed, cols));
        }
    }
    let target: Vec<u32> = m
        .iter()
        .map(|row| row.iter().enumerate().fold(0u32, |acc, (j, &b)| if b { acc | 1 << j } else { acc }))
        .collect();
    if target.iter().all(|&r| r == 0) {
        return 0;
    }
    fn search(rects: &[(u32, u32)], start: usize, left: usize, cover: &mut Vec<u32>, target: &[u32]) -> bool {
        if cover == target {
            return true;
        }
        if left == 0 {
            return false;
        }
        for i in start..rects.len() {
            let (rs, cs) = rects[i];
            let saved = cover.clone();
            for (r, c) in cover.iter_mut().enumerate() {
                if rs >> r & 1 == 1 {
                    *c |= cs;
                }
            }
            if search(rects, i + 1, left - 1, cover, target) {
                return true;
            }
            *cover = saved;
        }
        false
    }
    (1..=rects.len()).find(|&k| search(&rects, 0, k, &mut vec![0; rows], &target)).expect("all rectangles cover")
}

/// A random 2-coloring `(V, Σ* \ V)` and a nonempty random graph it colors
/// properly: a random relation cut down to `V×V′ ∪ V′×V`. Resamples until
/// both colors and the graph are nonempty.
pub fn colored_instance<R: Rng>(rng: &mut R, alphabet: &Alphabet) -> (AutomaticRelation, RegularColoring) {
    loop {
        let v = random_language(rng, alphabet, 3).0.minimize().unwrap();
        let w = v.complement_relative().unwrap().minimize().unwrap();
        if v.is_empty() || w.is_empty() {
            continue;
        }
        let cut = AutomaticRelation::product(&v, &w).unwrap().symmetric_closure().unwrap();
        let (r, _) = random_relation(rng, alphabet, 3);
        let e = r.intersect(&cut).unwrap().minimize().unwrap();
        if !e.is_empty() {
            return (e, RegularColoring::new(alphabet, vec![v, w]).unwrap());
        }
    }
}

/// A random separator `S` (one or two products) and nonempty relations on
/// either side of it.
pub fn separated_instance<R: Rng>(
    rng: &mut R,
    alphabet: &Alphabet,
) -> (AutomaticRelation, AutomaticRelation, RecognizableRelation) {
    loop {
        let n = rng.gen_range(1..=2);
        let products = (0..n)
            .map(|_| Product::new(random_language(rng, alphabet, 2).0, random_language(rng, alphabet, 2).0))
            .collect();
        let s = RecognizableRelation::new(alphabet, products).unwrap();
        let sa = s.to_automatic().unwrap();
        let r1 = random_relation(rng, alphabet, 3).0.intersect(&sa).unwrap().minimize().unwrap();
        let r2 = random_relation(rng, alphabet, 3).0.difference(&sa).unwrap().minimize().unwrap();
        if !r1.is_empty() && !r2.is_empty() {
            return (r1, r2, s);
        }
    }
}

/// Coloring → separator → coloring on a colored instance of `(E, Id)`, and the
/// incompatibility-graph route through `separator_from_coloring`.
pub fn coloring_round_trip(e: &AutomaticRelation, c: &RegularColoring) -> Result<(), String> {
    let id = AutomaticRelation::identity(e.alphabet()).unwrap();
    if !verify_coloring(e, c).unwrap().is_proper() {
        return Err("instance coloring is not proper".into());
    }
    let s = identity_separator_from_coloring(c).unwrap();
    let v = verify_separator(&s.to_recognizable(), e, &id).unwrap();
    if !v.separates() {
        return Err(format!("union of Vi x Vj does not separate: {v:?}"));
    }
    let back = coloring_from_separator(&s).unwrap();
    if !verify_coloring(e, &back).unwrap().is_proper() {
        return Err("coloring read back from the separator is not proper".into());
    }
    let g = incompatibility_graph(e, &id).unwrap();
    if !verify_coloring(&g, c).unwrap().is_proper() {
        return Err("coloring does not color the incompatibility graph".into());
    }
    separator_from_coloring(e, &id, c).map_err(|x| x.to_string())?;
    Ok(())
}

/// Separator → coloring → separator → coloring on `(R1, R2)` separated by `s`.
pub fn separator_round_trip(
    r1: &AutomaticRelation,
    r2: &AutomaticRelation,
    s: &RecognizableRelation,
) -> Result<(), String> {
    if !verify_separator(s, r1, r2).unwrap().separates() {
        return Err("instance separator does not separate".into());
    }
    let g = incompatibility_graph(r1, r2).unwrap();
    let c = coloring_from_rec_separator(s).unwrap();
    let v = verify_coloring(&g, &c).unwrap();
    if !v.is_proper() {
        return Err(format!("coloring from the separator is not proper: {v:?}"));
    }
    let s2 = separator_from_coloring(r1, r2, &c).map_err(|x| x.to_string())?;
    if !verify_separator(&s2, r1, r2).unwrap().separates() {
        return Err("rebuilt separator does not separate".into());
    }
    let c2 = coloring_from_rec_separator(&s2).unwrap();
    if !verify_coloring(&g, &c2).unwrap().is_proper() {
        return Err("coloring from the rebuilt separator is not proper".into());
    }
    Ok(())
}

/// Every configuration whose encoding has at most `max_len` symbols, built
/// directly from tapes, heads and states.
pub fn all_configs(t: &TuringMachine, max_len: usize) -> Vec<Config> {
    let g = t.tape().len();
    let mut out = Vec::new();
    for n in 0..=max_len {
        let mut tapes: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..n {
            tapes = tapes.iter().flat_map(|x| (0..g).map(move |s| [x.clone(), vec![s]].concat())).collect();
        }
        for tape in tapes {
            for state in 0..t.states().len() {
                // head on a cell: length n; head past the end: length n + 1
                for head in 0..n {
                    out.push(Config { tape: tape.clone(), head, state });
                }
                if n < max_len {
                    out.push(Config { tape: tape.clone(), head: n, state });
                }
            }
        }
    }
    out
}

/// The `{a, b}` content of a padded configuration, with head marks removed and
/// the end marker read as `b`.
pub fn ab_projection(p: &TuringMachine, a: &Alphabet, w: &[u32]) -> String {
    let c = p.decode(a, w).expect("configuration");
    c.tape
        .iter()
        .filter_map(|&s| match p.tape()[s].as_str() {
            "a" => Some('a'),
            "b" | "b^" => Some('b'),
            _ => None,
        })
        .collect()
}
