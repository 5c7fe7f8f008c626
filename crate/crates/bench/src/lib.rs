//! Instances shared by the benchmarks.

use autorel::fixtures::{appendix_b, fc, tree};
use autorel::{AutomaticRelation, Result};

/// Relations of growing size: fc(1..=4), the tree, and the length-difference pair.
pub fn relations() -> Result<Vec<(String, AutomaticRelation)>> {
    let mut out = Vec::new();
    for c in 1..=4 {
        out.push((format!("fc{c}"), fc(c)?));
    }
    out.push(("tree".into(), tree()?));
    let (r1, r2) = appendix_b()?;
    out.push(("appendixB-r1".into(), r1));
    out.push(("appendixB-r2".into(), r2));
    Ok(out)
}
