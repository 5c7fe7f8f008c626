//! The incompatibility graph and the reductions between REC-separability and
//! regular colorability.

use crate::automaton::{join, Component};
use crate::coloring::{verify_coloring, ColoringVerdict, RegularColoring};
use crate::error::{Error, Result};
use crate::recognizable::{verify_separator, PartitionedRecognizable, Product, RecognizableRelation};
use crate::relation::AutomaticRelation;

/// `{(u, u′) : ∃v, (x(u,u′,v)) ∈ R1 ∧ (y(u,u′,v)) ∈ R2}` with the two track maps
/// given over the layout `(u, u′, v) = (0, 1, 2)`.
fn exists_v(
    r1: &AutomaticRelation,
    t1: [usize; 2],
    r2: &AutomaticRelation,
    t2: [usize; 2],
) -> Result<AutomaticRelation> {
    let j = join(r1.alphabet(), 3, &[Component::new(r1.automaton(), &t1), Component::new(r2.automaton(), &t2)])?;
    AutomaticRelation::new(j.project(2)?.minimize()?)
}

/// Edge `(u, u′)` iff `u` is not compatible with `u′`: some `v` has
/// `(u,v) ∈ R1 ∧ (u′,v) ∈ R2`, or `(u′,v) ∈ R1 ∧ (u,v) ∈ R2`, or
/// `(v,u) ∈ R1 ∧ (v,u′) ∈ R2`, or `(v,u′) ∈ R1 ∧ (v,u) ∈ R2`.
pub fn incompatibility_graph(r1: &AutomaticRelation, r2: &AutomaticRelation) -> Result<AutomaticRelation> {
    if r1.alphabet() != r2.alphabet() {
        return Err(Error::AlphabetMismatch(format!("{:?} vs {:?}", r1.alphabet(), r2.alphabet())));
    }
    let not_l = exists_v(r1, [0, 2], r2, [1, 2])?;
    let not_r = exists_v(r1, [2, 0], r2, [2, 1])?;
    // the primed conditions are the same relations with u and u′ swapped
    let g = not_l.union(&not_l.inverse())?.union(&not_r)?.union(&not_r.inverse())?;
    g.minimize()
}

/// Separability instance to colorability instance.
pub fn reduce_sep_to_coloring(r1: &AutomaticRelation, r2: &AutomaticRelation) -> Result<AutomaticRelation> {
    incompatibility_graph(r1, r2)
}

/// Colorability instance `E` to the separability instance `(E, Id)`.
pub fn reduce_coloring_to_sep(e: &AutomaticRelation) -> Result<(AutomaticRelation, AutomaticRelation)> {
    Ok((e.clone(), AutomaticRelation::identity(e.alphabet())?))
}

/// `S = ⋃ᵢ (Aᵢ × R1[Aᵢ]) ∪ (R1⁻¹[Aᵢ] × Aᵢ)` for a proper coloring `(Aᵢ)` of the
/// incompatibility graph. The result is checked to separate `R1` from `R2`.
pub fn separator_from_coloring(
    r1: &AutomaticRelation,
    r2: &AutomaticRelation,
    c: &RegularColoring,
) -> Result<RecognizableRelation> {
    let g = incompatibility_graph(r1, r2)?;
    match verify_coloring(&g, c)? {
        ColoringVerdict::Proper => {}
        ColoringVerdict::NotPartition(d) => {
            return Err(Error::InvalidColoring(crate::coloring::describe_defect(c.alphabet(), &d)));
        }
        ColoringVerdict::MonochromeEdge { u, v, color } => {
            let a = c.alphabet();
            return Err(Error::InvalidColoring(format!(
                "edge ({}, {}) of the incompatibility graph is monochrome in color {color}",
                a.format_word(&u),
                a.format_word(&v)
            )));
        }
    }
    let inv = r1.inverse();
    let mut products = Vec::with_capacity(2 * c.len());
    for a in c.colors() {
        products.push(Product::new(a.clone(), r1.image(a)?.minimize()?));
        products.push(Product::new(inv.image(a)?.minimize()?, a.clone()));
    }
    let s = RecognizableRelation::new(c.alphabet(), products)?;
    if !verify_separator(&s, r1, r2)?.separates() {
        return Err(Error::Internal("separator built from a proper coloring does not separate".into()));
    }
    Ok(s)
}

/// `⋃_{i≠j} Vᵢ × Vⱼ` on the partition `(Vᵢ)`: a kREC separator of `(E, Id)`
/// whenever `(Vᵢ)` properly colors `E`.
pub fn identity_separator_from_coloring(c: &RegularColoring) -> Result<PartitionedRecognizable> {
    let k = c.len();
    let pairs = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
    PartitionedRecognizable::new(c.alphabet(), c.colors().to_vec(), pairs)
}

/// The coloring given by the partition of a kREC separator.
pub fn coloring_from_separator(s: &PartitionedRecognizable) -> Result<RegularColoring> {
    RegularColoring::new(s.alphabet(), s.partition().to_vec())
}

/// The coloring by the atoms of an arbitrary separator's languages.
pub fn coloring_from_rec_separator(s: &RecognizableRelation) -> Result<RegularColoring> {
    coloring_from_separator(&s.to_partitioned()?)
}

/// Definability of `R` as the separability instance `(R, (Σ*×Σ*) \ R)`.
pub fn definability_to_separability(r: &AutomaticRelation) -> Result<(AutomaticRelation, AutomaticRelation)> {
    Ok((r.clone(), r.complement()?))
}
