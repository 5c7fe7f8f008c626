//! The equivalence `~_R` (same rows and same columns of `R`), its classes, and
//! kREC / kPROD definability.

pub mod cover;

use crate::alphabet::Word;
use crate::automaton::{join, Automaton, Component};
use crate::error::{Error, Result, StepBudget};
use crate::recognizable::{PartitionedRecognizable, Product, RecognizableRelation};
use crate::relation::AutomaticRelation;

pub use cover::{rectangle_cover, Rectangle};

/// `w ~ w′` iff `(w,v) ∈ R ⇔ (w′,v) ∈ R` and `(v,w) ∈ R ⇔ (v,w′) ∈ R` for all `v`.
pub fn build_equiv(r: &AutomaticRelation) -> Result<AutomaticRelation> {
    let rc = r.complement()?;
    let a = r.alphabet();
    // X: some v with (w,v) ∈ R and (w′,v) ∉ R; Y: the same on columns
    let x =
        join(a, 3, &[Component::new(r.automaton(), &[0, 2]), Component::new(rc.automaton(), &[1, 2])])?.project(2)?;
    let y =
        join(a, 3, &[Component::new(r.automaton(), &[2, 0]), Component::new(rc.automaton(), &[2, 1])])?.project(2)?;
    let x = AutomaticRelation::new(x.minimize()?)?;
    let y = AutomaticRelation::new(y.minimize()?)?;
    let d = x.union(&x.inverse())?.union(&y)?.union(&y.inverse())?;
    d.complement()?.minimize()
}

#[derive(Clone, Debug)]
pub struct EquivalenceDecomposition {
    pub relation: AutomaticRelation,
    pub equiv: AutomaticRelation,
    /// Shortlex-least word of each class, in order of discovery.
    pub representatives: Vec<Word>,
    pub classes: Vec<Automaton>,
    /// More than `bound` classes exist; the first `bound + 1` are listed.
    pub truncated: bool,
}

impl EquivalenceDecomposition {
    pub fn index(&self) -> Option<usize> {
        (!self.truncated).then_some(self.classes.len())
    }

    /// Entry `(i, j)` is `(repᵢ, repⱼ) ∈ R`.
    pub fn quotient_matrix(&self) -> Result<QuotientMatrix> {
        let reps = &self.representatives;
        let entries = reps
            .iter()
            .map(|u| reps.iter().map(|v| self.relation.contains(u, v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(QuotientMatrix { entries })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMatrix {
    pub entries: Vec<Vec<bool>>,
}

impl QuotientMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.entries[i][j]
    }
}

/// Repeatedly takes the shortlex-least uncovered word as a new representative
/// and removes its class, until nothing is left or more than `bound` classes
/// have been found.
pub fn decompose(r: &AutomaticRelation, bound: usize) -> Result<EquivalenceDecomposition> {
    if bound == 0 {
        return Err(Error::NotApplicable("bound must be at least 1".into()));
    }
    let equiv = build_equiv(r)?;
    decompose_with(r, equiv, bound)
}

fn decompose_with(r: &AutomaticRelation, equiv: AutomaticRelation, bound: usize) -> Result<EquivalenceDecomposition> {
    let a = r.alphabet();
    let mut uncovered = Automaton::universal(a, 1)?;
    let mut representatives = Vec::new();
    let mut classes = Vec::new();
    let mut truncated = false;
    while let Some(t) = uncovered.shortest_tuple() {
        let rep = t.into_iter().next().expect("one track");
        let class = equiv.image(&Automaton::from_words(a, std::slice::from_ref(&rep))?)?.minimize()?;
        uncovered = uncovered.difference(&class)?.minimize()?;
        representatives.push(rep);
        classes.push(class);
        if representatives.len() > bound {
            truncated = true;
            break;
        }
    }
    Ok(EquivalenceDecomposition { relation: r.clone(), equiv, representatives, classes, truncated })
}

/// R is in kREC iff `~_R` has at most `k` classes; the witness is the class
/// partition with the pairs read off the quotient matrix.
pub fn krec_definability(r: &AutomaticRelation, k: usize) -> Result<Option<PartitionedRecognizable>> {
    if k == 0 {
        return Err(Error::NotApplicable("k must be at least 1".into()));
    }
    let dec = decompose(r, k)?;
    if dec.truncated {
        return Ok(None);
    }
    let q = dec.quotient_matrix()?;
    let m = q.size();
    let pairs = (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).filter(|&(i, j)| q.get(i, j)).collect();
    let w = PartitionedRecognizable::new(r.alphabet(), dec.classes.clone(), pairs)?;
    if !w.to_automatic()?.equivalent(r)? {
        return Err(Error::Internal("kREC witness differs from the relation".into()));
    }
    Ok(Some(w))
}

/// Outcome of the kPROD search on a fixed decomposition.
fn kprod_on(dec: &EquivalenceDecomposition, k: usize, budget: &mut StepBudget) -> Result<Option<RecognizableRelation>> {
    let q = dec.quotient_matrix()?;
    let rows = cover::matrix_rows(&q.entries)?;
    let Some(rects) = rectangle_cover(&rows, k, budget)? else {
        return Ok(None);
    };
    let a = dec.relation.alphabet();
    let union_of = |idx: Vec<usize>| -> Result<Automaton> {
        let mut acc = Automaton::empty(a, 1)?;
        for i in idx {
            acc = acc.union(&dec.classes[i])?;
        }
        acc.minimize()
    };
    let products = rects
        .iter()
        .map(|rect| Ok(Product::new(union_of(rect.row_indices())?, union_of(rect.col_indices())?)))
        .collect::<Result<Vec<_>>>()?;
    let s = RecognizableRelation::new(a, products)?;
    if !s.to_automatic()?.equivalent(&dec.relation)? {
        return Err(Error::Internal("kPROD witness differs from the relation".into()));
    }
    Ok(Some(s))
}

/// Class bound for kPROD: a union of k products is in `2^{2k}`REC.
pub fn kprod_class_bound(k: usize) -> usize {
    1usize.checked_shl(2 * k as u32).unwrap_or(usize::MAX)
}

/// Decides whether R is a union of at most `k` products of regular languages.
/// Products can be taken to be unions of `~_R` classes, so this is an exact
/// rectangle cover of the quotient matrix.
pub fn kprod_definability(
    r: &AutomaticRelation,
    k: usize,
    budget: &mut StepBudget,
) -> Result<Option<RecognizableRelation>> {
    if k == 0 {
        return Err(Error::NotApplicable("k must be at least 1".into()));
    }
    let dec = decompose(r, kprod_class_bound(k).min(cover::MAX_SIZE))?;
    if dec.truncated && kprod_class_bound(k) <= cover::MAX_SIZE {
        return Ok(None);
    }
    if dec.truncated {
        return Err(Error::NotApplicable(format!(
            "more than {} classes; the rectangle cover is limited to that size",
            cover::MAX_SIZE
        )));
    }
    kprod_on(&dec, k, budget)
}

/// Least `k ≤ kmax` for which R is kPROD-definable.
pub fn min_prod(
    r: &AutomaticRelation,
    kmax: usize,
    budget: &mut StepBudget,
) -> Result<Option<(usize, RecognizableRelation)>> {
    if kmax == 0 {
        return Err(Error::NotApplicable("kmax must be at least 1".into()));
    }
    let bound = kprod_class_bound(kmax).min(cover::MAX_SIZE);
    let dec = decompose(r, bound)?;
    let m = dec.representatives.len();
    for k in 1..=kmax {
        if m > kprod_class_bound(k) {
            continue;
        }
        if dec.truncated {
            return Err(Error::NotApplicable(format!(
                "more than {} classes; the rectangle cover is limited to that size",
                cover::MAX_SIZE
            )));
        }
        if let Some(s) = kprod_on(&dec, k, budget)? {
            return Ok(Some((k, s)));
        }
    }
    Ok(None)
}
