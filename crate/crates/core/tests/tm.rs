mod common;

use std::collections::{BTreeSet, HashMap};

use autorel::fixtures::fc;
use autorel::tm::fixtures::{one_step_halting, right_mover, thm4_demo, three_state_halting, MACHINE_NAMES};
use autorel::tm::{
    config_graph, configs_language, pad_transform, reach_bfs, simulated_reach, thm4_coloring, thm4_graph, wf_checks,
};
use autorel::{verify_coloring, Alphabet, AutomaticRelation, Automaton, Config, Error, Move, TuringMachine, Word};
use common::{ab_projection, all_configs, is_bipartite};

fn assert_graph_matches_simulator(t: &TuringMachine, max_len: usize) {
    let g = config_graph(t).unwrap();
    let a = g.alphabet().clone();
    let configs = configs_language(t, &a).unwrap();
    assert!(g.domain().unwrap().difference(&configs).unwrap().is_empty());
    assert!(g.range().unwrap().difference(&configs).unwrap().is_empty());
    let all = all_configs(t, max_len);
    assert!(!all.is_empty());
    for c in &all {
        let w = t.encode(&a, c).unwrap();
        assert!(w.len() <= max_len);
        assert!(configs.contains(std::slice::from_ref(&w)).unwrap());
        let expect: Vec<Word> = t.step(c).map(|n| t.encode(&a, &n).unwrap()).into_iter().collect();
        assert_eq!(g.successors(&w, max_len + 1).unwrap().words, expect, "{c}");
    }
}

#[test]
fn config_graphs_match_the_simulator() {
    assert_graph_matches_simulator(&three_state_halting(), 6);
    for name in MACHINE_NAMES {
        assert_graph_matches_simulator(&autorel::tm::fixtures::machine(name).unwrap(), 4);
    }
}

#[test]
fn configs_language_is_exactly_the_encodings() {
    let t = three_state_halting();
    let a = t.config_alphabet().unwrap();
    let configs = configs_language(&t, &a).unwrap();
    let encoded: BTreeSet<Word> = all_configs(&t, 4).iter().map(|c| t.encode(&a, c).unwrap()).collect();
    let listed: BTreeSet<Word> = configs.enumerate(4).unwrap().into_iter().map(|mut x| x.remove(0)).collect();
    assert_eq!(encoded, listed);
}

#[test]
fn single_step_edge() {
    let t = one_step_halting();
    let g = config_graph(&t).unwrap();
    let a = g.alphabet();
    let start = a.parse_word("_|q0").unwrap();
    assert_eq!(g.successors(&start, 4).unwrap().words, vec![a.parse_word("1._|qf").unwrap()]);
}

#[test]
fn empty_machine() {
    let t = TuringMachine::new(&["q0"], &["1"], "q0", &[], &[]).unwrap();
    assert!(config_graph(&t).unwrap().is_empty());
    let r = wf_checks(&t, 8, 3).unwrap();
    assert!(r.initial_in_degree_zero && r.functional_violation.is_none() && r.co_functional_violation.is_none());
    assert!(r.passes());
}

#[test]
fn initial_configuration_has_no_predecessor() {
    for name in MACHINE_NAMES {
        let t = autorel::tm::fixtures::machine(name).unwrap();
        let g = config_graph(&t).unwrap();
        let start = t.encode(g.alphabet(), &t.initial_config()).unwrap();
        // no fixture moves into q0 over a blank at cell 0
        assert!(g.init_set().unwrap().contains(&[start]).unwrap(), "{name}");
    }
}

#[test]
fn reach_examples() {
    let f1 = fc(1).unwrap();
    let r = reach_bfs(&f1, &[], 4, 100).unwrap();
    assert_eq!(r.words, (0..=4).map(|n| vec![0; n]).collect::<Vec<_>>());
    assert!(r.truncated);
    let id = AutomaticRelation::identity(f1.alphabet()).unwrap();
    let r = reach_bfs(&id, &[0], 4, 100).unwrap();
    assert_eq!(r.words, vec![vec![0]]);
    assert!(!r.truncated);

    let t = thm4_demo();
    let g = config_graph(&t).unwrap();
    let start = t.encode(g.alphabet(), &t.initial_config()).unwrap();
    let r = reach_bfs(&g, &start, 8, 100).unwrap();
    assert_eq!(r.words.len(), 3);
    assert!(!r.truncated);
    assert_eq!(Some(r.words), simulated_reach(&t, g.alphabet(), 10).unwrap());
    let r = reach_bfs(&f1, &[], 100, 3).unwrap();
    assert!(r.truncated && r.words.len() == 3);
}

fn assert_pad_exact(t: &TuringMachine) -> TuringMachine {
    let p = pad_transform(t).unwrap();
    let g = config_graph(&p).unwrap();
    assert!(g.functional().unwrap(), "functional");
    assert!(g.co_functional().unwrap(), "co-functional");
    p
}

#[test]
fn padded_machines_are_deterministic_and_reversible() {
    assert_pad_exact(&one_step_halting());
    assert_pad_exact(&right_mover());
}

#[test]
fn padded_three_state_machine_is_exact() {
    assert_pad_exact(&three_state_halting());
}

#[test]
fn padded_halting_machine_has_finite_reach() {
    let p = pad_transform(&one_step_halting()).unwrap();
    let a = p.config_alphabet().unwrap();
    let visited = simulated_reach(&p, &a, 1000).unwrap().expect("halts");
    let g = config_graph(&p).unwrap();
    let r = reach_bfs(&g, &visited[0], 64, 10_000).unwrap();
    assert!(!r.truncated);
    assert_eq!(r.words.len(), visited.len());
}

#[test]
fn padded_right_mover_keeps_the_suffix_shape() {
    let p = pad_transform(&right_mover()).unwrap();
    let g = config_graph(&p).unwrap();
    let a = g.alphabet().clone();
    let start = p.encode(&a, &p.initial_config()).unwrap();
    let r = reach_bfs(&g, &start, 14, 5000).unwrap();
    assert!(r.words.len() > 50);
    let mut longest = 0;
    for w in &r.words {
        let s = ab_projection(&p, &a, w);
        let n = s.chars().take_while(|&c| c == 'a').count();
        let m = s.len() - n;
        assert!(s[n..].chars().all(|c| c == 'b'), "{s}");
        assert!(m + 2 >= n && m <= n + 2, "{s}");
        longest = longest.max(n);
    }
    assert!(longest >= 3);
}

#[test]
fn pad_rejects_irreversible_machines() {
    let t = autorel::tm::fixtures::merging_machine();
    assert!(matches!(pad_transform(&t), Err(Error::NotApplicable(_))));
}

fn thm4_setup() -> (TuringMachine, AutomaticRelation, Alphabet) {
    let t = thm4_demo();
    let g = thm4_graph(&t, 2).unwrap();
    let a = g.alphabet().clone();
    (t, g, a)
}

fn tagged(a: &Alphabet, tag: &str, t: &TuringMachine, c: &Config) -> Word {
    let mut w = vec![a.sym(tag).unwrap()];
    w.extend(t.encode(a, c).unwrap());
    w
}

#[test]
fn thm4_initial_vertex_neighbours() {
    let (t, g, a) = thm4_setup();
    let init = t.initial_config();
    let b_init = tagged(&a, "B", &t, &init);
    let out: BTreeSet<Word> = g.successors(&b_init, 5).unwrap().words.into_iter().collect();
    assert!(out.contains(&tagged(&a, "R", &t, &init)));
    // configurations without a predecessor, by brute force
    let configs = all_configs(&t, 4);
    let has_pred: BTreeSet<Word> =
        configs.iter().filter_map(|c| t.step(c)).map(|n| t.encode(&a, &n).unwrap()).collect();
    let mut expect = BTreeSet::from([tagged(&a, "R", &t, &init)]);
    for c in &configs {
        let w = t.encode(&a, c).unwrap();
        if *c != init && !has_pred.contains(&w) {
            expect.insert(tagged(&a, "B", &t, c));
        }
    }
    assert_eq!(out, expect);
}

#[test]
fn thm4_red_vertices_have_out_degree_at_most_one() {
    let (_, g, a) = thm4_setup();
    let r_words = Automaton::from_regex(&a, "R").unwrap();
    let tail = Automaton::universal(&a, 1).unwrap();
    let red = r_words.concat(&tail).unwrap();
    let from_red = g.intersect(&AutomaticRelation::product(&red, &tail).unwrap()).unwrap();
    assert!(!from_red.is_empty());
    assert!(from_red.functional().unwrap());
}

/// Undirected acyclicity by union-find.
fn is_forest(vertices: &[Word], edges: &[(Word, Word)]) -> bool {
    let index: HashMap<&Word, usize> = vertices.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut parent: Vec<usize> = (0..vertices.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut seen = BTreeSet::new();
    for (u, v) in edges {
        let (i, j) = (index[u], index[v]);
        if !seen.insert((i.min(j), i.max(j))) {
            continue;
        }
        let (x, y) = (find(&mut parent, i), find(&mut parent, j));
        if x == y {
            return false;
        }
        parent[x] = y;
    }
    true
}

#[test]
fn thm4_slices() {
    let (t, g, _) = thm4_setup();
    let (v4, e4) = g.slice(4).unwrap();
    assert!(!e4.is_empty());
    assert!(is_forest(&v4, &e4));

    let (v5, e5) = g.slice(5).unwrap();
    let index: HashMap<&Word, usize> = v5.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let edges: Vec<(usize, usize)> = e5.iter().map(|(u, v)| (index[u], index[v])).collect();
    assert!(is_bipartite(v5.len(), &edges));

    let reach: Vec<Word> = simulated_reach(&t, &t.config_alphabet().unwrap(), 10).unwrap().unwrap();
    let ca = t.config_alphabet().unwrap();
    let reach = Automaton::from_words(&ca, &reach).unwrap();
    let c = thm4_coloring(&t, 2, &reach).unwrap();
    assert!(verify_coloring(&g, &c).unwrap().is_proper());
    for (u, v) in &e5 {
        assert_ne!(c.color_of(u).unwrap(), c.color_of(v).unwrap());
    }
}

#[test]
fn thm4_clique_extension() {
    let t = thm4_demo();
    let g = thm4_graph(&t, 3).unwrap();
    let a = g.alphabet().clone();
    let clique = vec![a.sym("C#1").unwrap()];
    let b_init = tagged(&a, "B", &t, &t.initial_config());
    assert!(g.contains(&clique, &b_init).unwrap());
    let ca = t.config_alphabet().unwrap();
    let reach = Automaton::from_words(&ca, &simulated_reach(&t, &ca, 10).unwrap().unwrap()).unwrap();
    let c = thm4_coloring(&t, 3, &reach).unwrap();
    assert_eq!(c.len(), 3);
    assert!(verify_coloring(&g, &c).unwrap().is_proper());
    assert!(matches!(thm4_graph(&t, 1), Err(Error::NotApplicable(_))));
}

#[test]
fn machine_json_round_trips() {
    for name in MACHINE_NAMES {
        let t = autorel::tm::fixtures::machine(name).unwrap();
        assert_eq!(TuringMachine::from_json(&t.to_json()).unwrap(), t);
    }
    let p = pad_transform(&right_mover()).unwrap();
    assert_eq!(TuringMachine::from_json(&p.to_json()).unwrap(), p);
    let bad = TuringMachine::new(&["q0"], &["1"], "q0", &[], &[("q0", "_", "q9", "1", Move::R)]);
    assert!(bad.is_err());
}
