//! Padding: a machine that simulates `T` while keeping the suffix `aᵐbᵐ⁻¹b^`
//! to the right of the simulated tape, and grows it by one `a` and one `b`
//! per simulated step. A cell `a` is read as the blank.
//!
//! Every simulated transition `τ = δ(p, s) = (q, t, M)` gets its own helper
//! states. The head writes the marked symbol `t^`, walks right to extend the
//! suffix, walks back to the mark, restores `t` and moves in direction `M`.
//! When `s` is the blank, the written `t` extends the simulated tape and eats
//! an `a`, so the suffix is extended twice.

use super::{Move, TuringMachine};
use crate::alphabet::PAD_ASCII;
use crate::error::{Error, Result};

const A: &str = "a";
const B: &str = "b";
const END: &str = "b^";

fn marked(t: &str) -> String {
    format!("{t}^")
}

struct Rules {
    states: Vec<String>,
    rules: Vec<(String, String, String, String, Move)>,
}

impl Rules {
    fn state(&mut self, name: String) -> String {
        self.states.push(name.clone());
        name
    }

    fn add(&mut self, q: &str, read: &str, next: &str, write: &str, dir: Move) {
        self.rules.push((q.into(), read.into(), next.into(), write.into(), dir));
    }

    /// Move over every symbol in `over` without changing it.
    fn sweep(&mut self, q: &str, over: &[String], dir: Move) {
        for x in over {
            self.add(q, x, q, x, dir);
        }
    }
}

/// Requires the configuration graph of `t` to be co-functional.
pub fn pad_transform(t: &TuringMachine) -> Result<TuringMachine> {
    if let Some((c, _, _)) = super::config_graph(t)?.co_functional_violation()? {
        let a = t.config_alphabet()?;
        return Err(Error::NotApplicable(format!(
            "machine is not reversible: configuration {} has two predecessors",
            a.format_word(&c)
        )));
    }
    let gamma: Vec<String> = t.tape().to_vec();
    for g in &gamma {
        if g == A || g == B || g.ends_with('^') {
            return Err(Error::SymbolClash(g.clone()));
        }
    }
    let mut r = Rules { states: t.states().to_vec(), rules: Vec::new() };
    for q in t.states() {
        if q.contains(':') {
            return Err(Error::SymbolClash(q.clone()));
        }
    }
    let with =
        |extra: &[&str]| -> Vec<String> { gamma.iter().cloned().chain(extra.iter().map(|s| s.to_string())).collect() };
    let right_over = with(&[A]);
    let left_over = with(&[A, B]);

    for (i, rule) in t.rules().enumerate() {
        let p = t.states()[rule.state].clone();
        let q = t.states()[rule.next].clone();
        let tn = gamma[rule.write].clone();
        let tm = marked(&tn);
        let mut st = |tag: &str| r.state(format!("{tag}:{i}"));
        let (apf, lw) = (st("apf"), st("lw"));
        // shared tail: append the end marker, walk back, restore t
        r.add(&apf, PAD_ASCII, &lw, END, Move::L);
        r.sweep(&lw, &left_over, Move::L);
        r.add(&lw, &tm, &q, &tn, rule.dir);
        match rule.read {
            Some(s) => {
                let (rw1, rw2, ap1) =
                    (r.state(format!("rw1:{i}")), r.state(format!("rw2:{i}")), r.state(format!("ap1:{i}")));
                r.add(&p, &gamma[s], &rw1, &tm, Move::R);
                extend(&mut r, &rw1, &rw2, &ap1, &right_over);
                r.add(&ap1, PAD_ASCII, &apf, B, Move::R);
            }
            None => {
                let names: Vec<String> = ["b1", "b2", "b3", "b4", "lwb", "rb1", "rb2", "rc"]
                    .iter()
                    .map(|x| r.state(format!("{x}:{i}")))
                    .collect();
                let [b1, b2, b3, b4, lwb, rb1, rb2, rc] = <[String; 8]>::try_from(names).expect("eight names");
                // blank read as `a`
                r.add(&p, A, &b1, &tm, Move::R);
                extend(&mut r, &b1, &b2, &b3, &right_over);
                r.add(&b3, PAD_ASCII, &b4, B, Move::R);
                r.add(&b4, PAD_ASCII, &lwb, END, Move::L);
                r.sweep(&lwb, &left_over, Move::L);
                r.add(&lwb, &tm, &rb1, &tm, Move::R);
                r.sweep(&rb1, &right_over, Move::R);
                r.add(&rb1, B, &rb2, A, Move::R);
                r.add(&rb2, B, &rb2, B, Move::R);
                r.add(&rb2, END, &apf, B, Move::R);
                // the very first step, on the empty tape
                r.add(&p, PAD_ASCII, &rc, &tm, Move::R);
                r.add(&rc, PAD_ASCII, &apf, A, Move::R);
            }
        }
    }

    let mut tape = gamma.clone();
    tape.extend([A, B, END].map(String::from));
    tape.extend(gamma.iter().map(|g| marked(g)));
    let finals: Vec<String> = (0..t.states().len()).filter(|&q| t.is_final(q)).map(|q| t.states()[q].clone()).collect();
    TuringMachine::from_names(r.states, tape, &t.states()[t.initial()], &finals, &r.rules)
}

/// Walk right to the first `b`, turn it into `a`, then turn the end marker
/// into `b`, landing in `done`. With no plain `b` the end marker becomes `a`.
fn extend(r: &mut Rules, walk: &str, walk_b: &str, done: &str, over: &[String]) {
    r.sweep(walk, over, Move::R);
    r.add(walk, B, walk_b, A, Move::R);
    r.add(walk, END, done, A, Move::R);
    r.add(walk_b, B, walk_b, B, Move::R);
    r.add(walk_b, END, done, B, Move::R);
}

#[cfg(test)]
mod tests {
    use super::super::{fixtures, Config};
    use super::*;

    fn count(t: &TuringMachine, c: &Config, names: &[&str]) -> usize {
        c.tape.iter().filter(|&&s| names.contains(&t.tape()[s].as_str())).count()
    }

    /// Runs the padded machine and checks it against the original at each
    /// simulated step, and the `a`/`b` balance everywhere.
    fn check_simulation(t: &TuringMachine, steps: usize) {
        let p = pad_transform(t).unwrap();
        let mut c = t.initial_config();
        let mut d = p.initial_config();
        let mut m = 0;
        for _ in 0..steps {
            let Some(next) = t.step(&c) else {
                assert!(p.step(&d).is_none());
                return;
            };
            c = next;
            m += 1;
            loop {
                d = p.step(&d).expect("padded machine keeps running");
                let (na, nb) = (count(&p, &d, &[A]), count(&p, &d, &[B, END]));
                assert!(na <= nb + 2 && nb <= na + 2, "unbalanced at {d}");
                if d.state < t.states().len() {
                    break;
                }
            }
            assert_eq!(d.state, c.state);
            assert_eq!(d.head, c.head);
            let w = c.tape.len();
            let names: Vec<&str> = d.tape.iter().map(|&s| p.tape()[s].as_str()).collect();
            let orig: Vec<&str> = c.tape.iter().map(|&s| t.tape()[s].as_str()).collect();
            assert_eq!(&names[..w], &orig[..]);
            let mut suffix = vec![A; m];
            suffix.extend(vec![B; m - 1]);
            suffix.push(END);
            assert_eq!(&names[w..], &suffix[..]);
        }
    }

    #[test]
    fn simulates_the_original_machine() {
        check_simulation(&fixtures::three_state_halting(), 10);
        check_simulation(&fixtures::one_step_halting(), 10);
        check_simulation(&fixtures::right_mover(), 8);
        check_simulation(&fixtures::thm4_demo(), 10);
    }

    #[test]
    fn rejects_irreversible_machines() {
        assert!(matches!(pad_transform(&fixtures::merging_machine()), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn rejects_reserved_symbols() {
        let t = TuringMachine::new(&["q"], &["a"], "q", &[], &[]).unwrap();
        assert!(matches!(pad_transform(&t), Err(Error::SymbolClash(_))));
    }
}
