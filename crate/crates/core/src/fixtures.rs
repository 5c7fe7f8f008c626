//! Named relations, separators and colorings used as worked examples.

use crate::alphabet::Alphabet;
use crate::automaton::Automaton;
use crate::coloring::RegularColoring;
use crate::error::{Error, Result};
use crate::recognizable::{Product, RecognizableRelation};
use crate::relation::AutomaticRelation;

pub fn unary() -> Alphabet {
    Alphabet::chars("a").expect("valid alphabet")
}

pub fn binary() -> Alphabet {
    Alphabet::chars("ab").expect("valid alphabet")
}

fn lang(a: &Alphabet, re: &str) -> Automaton {
    Automaton::from_regex(a, re).expect("fixture regex").minimize().expect("small automaton")
}

/// `{(aⁿ, aⁿ⁺ᶜ) : n ≥ 0}` over `{a}`.
pub fn fc(c: usize) -> Result<AutomaticRelation> {
    AutomaticRelation::offset_successor(&unary(), "a", c)
}

/// The tree over `{a,b}` with edges `(aᵖbᵠ, aᵖ⁺¹bᵠ⁺¹)` and `(ε, aᵖ)`, `(ε, bᵠ)`
/// for `p, q ≥ 1`. Words outside `a*b*` are isolated vertices.
pub fn tree() -> Result<AutomaticRelation> {
    let a = binary();
    let mut b = Automaton::builder(&a, 2)?;
    let s = b.add_states(5);
    b.add_initial(s[0]);
    b.add(s[0], &["a", "a"], s[0])?;
    b.add(s[0], &["b", "a"], s[1])?;
    b.add(s[0], &["_", "a"], s[3])?;
    b.add(s[1], &["b", "b"], s[1])?;
    b.add(s[1], &["_", "b"], s[2])?;
    b.add(s[2], &["_", "b"], s[4])?;
    b.add(s[3], &["_", "b"], s[4])?;
    b.set_accepting(s[4], true);
    // root edges
    let t = b.add_states(3);
    b.add_initial(t[0]);
    b.add(t[0], &["_", "a"], t[1])?;
    b.add(t[1], &["_", "a"], t[1])?;
    b.add(t[0], &["_", "b"], t[2])?;
    b.add(t[2], &["_", "b"], t[2])?;
    b.set_accepting(t[1], true);
    b.set_accepting(t[2], true);
    AutomaticRelation::new(b.build()?)
}

/// Equal-length relation over `{a,b}`, and `{(u, ua)} ∪ {(u, ub)}`.
pub fn appendix_b() -> Result<(AutomaticRelation, AutomaticRelation)> {
    let a = binary();
    let mut b = Automaton::builder(&a, 2)?;
    let s = b.add_states(2);
    b.add_initial(s[0]);
    for x in ["a", "b"] {
        b.add(s[0], &[x, x], s[0])?;
        b.add(s[0], &["_", x], s[1])?;
    }
    b.set_accepting(s[1], true);
    Ok((AutomaticRelation::equal_length(&a)?, AutomaticRelation::new(b.build()?)?))
}

/// `(A_even × A_odd) ∪ (A_odd × A_even)` over `{a}`.
pub fn example2_separator() -> Result<RecognizableRelation> {
    let a = unary();
    let (even, odd) = (lang(&a, "(aa)*"), lang(&a, "a(aa)*"));
    RecognizableRelation::new(&a, vec![Product::new(even.clone(), odd.clone()), Product::new(odd, even)])
}

/// `(A_even × A_even) ∪ (A_odd × A_odd)`: the mutated, non-separating variant.
pub fn example2_mutated_separator() -> Result<RecognizableRelation> {
    let a = unary();
    let (even, odd) = (lang(&a, "(aa)*"), lang(&a, "a(aa)*"));
    RecognizableRelation::new(&a, vec![Product::new(even.clone(), even), Product::new(odd.clone(), odd)])
}

/// `V₁ = {aⁿ : n mod 2c < c}`, `V₂ = Σ* \ V₁`.
pub fn fc_coloring(c: usize) -> Result<RegularColoring> {
    if c == 0 {
        return Err(Error::NotApplicable("offset must be at least 1".into()));
    }
    let a = unary();
    let mut b = Automaton::builder(&a, 1)?;
    let s = b.add_states(2 * c);
    b.add_initial(s[0]);
    for i in 0..2 * c {
        b.add(s[i], &["a"], s[(i + 1) % (2 * c)])?;
        b.set_accepting(s[i], i < c);
    }
    let v1 = b.build()?.minimize()?;
    let v2 = v1.complement_relative()?.minimize()?;
    RegularColoring::new(&a, vec![v1, v2])
}

/// Words of even length, words of odd length.
pub fn length_parity_coloring(alphabet: &Alphabet) -> Result<RegularColoring> {
    let even = length_parity(alphabet, true)?;
    let odd = length_parity(alphabet, false)?;
    RegularColoring::new(alphabet, vec![even, odd])
}

fn length_parity(alphabet: &Alphabet, even: bool) -> Result<Automaton> {
    let mut b = Automaton::builder(alphabet, 1)?;
    let s = b.add_states(2);
    b.add_initial(s[0]);
    b.set_accepting(if even { s[0] } else { s[1] }, true);
    for x in alphabet.symbols() {
        b.add(s[0], &[x], s[1])?;
        b.add(s[1], &[x], s[0])?;
    }
    b.build()?.minimize()
}

/// Pairs `(u, v)` with `|u| ≡ |v| (mod 2)`.
pub fn same_length_parity(alphabet: &Alphabet) -> Result<RecognizableRelation> {
    let even = length_parity(alphabet, true)?;
    let odd = length_parity(alphabet, false)?;
    RecognizableRelation::new(alphabet, vec![Product::new(even.clone(), even), Product::new(odd.clone(), odd)])
}

/// 3-coloring of [`tree`]: `{ε}`, then `aᵖbᵠ` by the parity of `p` (words outside
/// `a*b*` join the even class).
pub fn tree_coloring() -> Result<RegularColoring> {
    let a = binary();
    let root = lang(&a, "ε");
    let odd = lang(&a, "a(aa)*b*");
    let even = root.union(&odd)?.complement_relative()?.minimize()?;
    RegularColoring::new(&a, vec![root, even, odd])
}

/// 3-coloring of [`tree`] by the parity of `p − q` instead of `p`. Edges
/// `(aᵖbᵠ, aᵖ⁺¹bᵠ⁺¹)` keep `p − q`, so this one is not proper.
pub fn tree_coloring_by_difference() -> Result<RegularColoring> {
    let a = binary();
    let root = lang(&a, "ε");
    let odd = lang(&a, "a*b*").intersect(&lang(&a, "(a|b)((a|b)(a|b))*"))?.minimize()?;
    let even = root.union(&odd)?.complement_relative()?.minimize()?;
    RegularColoring::new(&a, vec![root, even, odd])
}

/// Names accepted by [`relation`].
pub const RELATION_NAMES: &[&str] =
    &["fc", "tree", "appendix-b-r1", "appendix-b-r2", "example2-r1", "example2-r2", "thm4"];

/// Looks up a named relation. `fc` takes the offset `c`; `thm4` takes `k` and
/// uses [`crate::tm::fixtures::thm4_demo`].
pub fn relation(name: &str, params: &[usize]) -> Result<AutomaticRelation> {
    let one = |default: usize| -> Result<usize> {
        match params {
            [] => Ok(default),
            [x] => Ok(*x),
            _ => Err(Error::NotApplicable(format!("`{name}` takes at most one parameter"))),
        }
    };
    match name {
        "fc" => fc(one(1)?),
        "tree" => tree(),
        "appendix-b-r1" => Ok(appendix_b()?.0),
        "appendix-b-r2" => Ok(appendix_b()?.1),
        "example2-r1" => fc(1),
        "example2-r2" => fc(2),
        "thm4" => {
            let k = one(2)?;
            crate::tm::thm4_graph(&crate::tm::fixtures::thm4_demo(), k)
        }
        _ => Err(Error::UnknownFixture(name.to_string())),
    }
}
