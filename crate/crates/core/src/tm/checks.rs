//! Well-formedness of a machine's configuration graph: the initial
//! configuration has no predecessor, the graph is functional and
//! co-functional (exact), and no backward path is infinite (bounded, advisory).

use std::collections::HashSet;

use super::graph::{config_graph, configs_language};
use super::TuringMachine;
use crate::alphabet::{Alphabet, Word};
use crate::error::Result;
use crate::relation::AutomaticRelation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BackwardCheck {
    pub depth: usize,
    /// Configurations the backward search started from.
    pub sampled: usize,
    /// A cycle found by following predecessors: an infinite backward path.
    pub cycle: Option<Vec<Word>>,
    /// Starting points whose backward search was still going at `depth`.
    pub deep: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WfReport {
    pub alphabet: Alphabet,
    pub initial_in_degree_zero: bool,
    /// `(c, c′, c″)` with two distinct successors `c′`, `c″` of `c`.
    pub functional_violation: Option<(Word, Word, Word)>,
    /// `(c, c′, c″)` with two distinct predecessors `c′`, `c″` of `c`.
    pub co_functional_violation: Option<(Word, Word, Word)>,
    pub backward: BackwardCheck,
}

impl WfReport {
    /// The exact checks pass and no backward cycle was found.
    pub fn passes(&self) -> bool {
        self.initial_in_degree_zero
            && self.functional_violation.is_none()
            && self.co_functional_violation.is_none()
            && self.backward.cycle.is_none()
    }
}

/// Runs all checks. The backward search starts from every configuration of
/// length at most `sample_len` that has a predecessor and follows predecessors
/// for up to `depth` steps.
pub fn wf_checks(t: &TuringMachine, depth: usize, sample_len: usize) -> Result<WfReport> {
    let g = config_graph(t)?;
    let alphabet = g.alphabet().clone();
    let start = t.encode(&alphabet, &t.initial_config())?;
    let initial_in_degree_zero = g.predecessors(&start, start.len() + 1)?.words.is_empty();
    let functional_violation = g.functional_violation()?;
    let co_functional_violation = g.co_functional_violation()?;
    let backward = backward_check(t, &g, depth, sample_len)?;
    Ok(WfReport { alphabet, initial_in_degree_zero, functional_violation, co_functional_violation, backward })
}

fn backward_check(t: &TuringMachine, g: &AutomaticRelation, depth: usize, sample_len: usize) -> Result<BackwardCheck> {
    let configs = configs_language(t, g.alphabet())?;
    let targets = g.range()?.intersect(&configs)?;
    let samples: Vec<Word> = targets.enumerate(sample_len)?.into_iter().map(|mut t| t.remove(0)).collect();
    let mut report = BackwardCheck { depth, sampled: samples.len(), cycle: None, deep: 0 };
    for s in samples {
        let mut path = vec![s];
        let mut on_path = HashSet::from([path[0].clone()]);
        let (cycle, deep) = walk(g, &mut path, &mut on_path, depth)?;
        if deep {
            report.deep += 1;
        }
        if cycle.is_some() {
            report.cycle = cycle;
            break;
        }
    }
    Ok(report)
}

/// Depth-first over predecessors. Steps never shorten the tape, so
/// predecessors are at most as long as their successor.
fn walk(
    g: &AutomaticRelation,
    path: &mut Vec<Word>,
    on_path: &mut HashSet<Word>,
    depth: usize,
) -> Result<(Option<Vec<Word>>, bool)> {
    let last = path.last().expect("nonempty path").clone();
    if path.len() > depth {
        return Ok((None, true));
    }
    let mut deep = false;
    for p in g.predecessors(&last, last.len())?.words {
        if on_path.contains(&p) {
            let from = path.iter().position(|w| *w == p).expect("on path");
            let mut cycle = path[from..].to_vec();
            cycle.reverse();
            return Ok((Some(cycle), deep));
        }
        on_path.insert(p.clone());
        path.push(p);
        let (cycle, d) = walk(g, path, on_path, depth)?;
        deep |= d;
        let p = path.pop().expect("pushed");
        on_path.remove(&p);
        if cycle.is_some() {
            return Ok((cycle, deep));
        }
    }
    Ok((None, deep))
}

#[cfg(test)]
mod tests {
    use super::super::fixtures;
    use super::*;

    #[test]
    fn reversible_halting_machine_is_well_formed() {
        let r = wf_checks(&fixtures::three_state_halting(), 4, 2).unwrap();
        assert!(r.passes(), "{r:?}");
        assert!(r.backward.sampled > 0);
    }

    #[test]
    fn cycle_is_flagged() {
        let r = wf_checks(&fixtures::cycle_machine(), 4, 2).unwrap();
        assert!(r.functional_violation.is_none());
        assert!(r.co_functional_violation.is_none());
        let cycle = r.backward.cycle.as_ref().expect("two-cycle");
        assert_eq!(cycle.len(), 2);
        assert!(!r.passes());
    }

    #[test]
    fn merging_machine_is_not_co_functional() {
        let r = wf_checks(&fixtures::merging_machine(), 2, 1).unwrap();
        assert!(r.functional_violation.is_none());
        let (c, u, v) = r.co_functional_violation.expect("two predecessors");
        assert_ne!(u, v);
        assert!(!c.is_empty());
    }
}
