//! Recognizable relations (finite unions of products of regular languages),
//! separator verification and the decidable small-k separability procedures.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Word};
use crate::automaton::{Automaton, AutomatonJson};
use crate::error::{Error, Result};
use crate::relation::AutomaticRelation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Product {
    pub left: Automaton,
    pub right: Automaton,
}

impl Product {
    pub fn new(left: Automaton, right: Automaton) -> Self {
        Product { left, right }
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty() || self.right.is_empty()
    }
}

/// `⋃ᵢ Aᵢ × Bᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecognizableRelation {
    alphabet: Alphabet,
    products: Vec<Product>,
}

fn require_languages(alphabet: &Alphabet, langs: &[&Automaton]) -> Result<()> {
    for l in langs {
        if l.tracks() != 1 {
            return Err(Error::Arity(format!("expected a 1-track language, got {} tracks", l.tracks())));
        }
        if l.alphabet() != alphabet {
            return Err(Error::AlphabetMismatch(format!("{:?} vs {:?}", l.alphabet(), alphabet)));
        }
    }
    Ok(())
}

impl RecognizableRelation {
    pub fn new(alphabet: &Alphabet, products: Vec<Product>) -> Result<Self> {
        for p in &products {
            require_languages(alphabet, &[&p.left, &p.right])?;
        }
        Ok(RecognizableRelation { alphabet: alphabet.clone(), products })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn products(&self) -> &[Product] {
        &self.products
    }

    pub fn len(&self) -> usize {
        self.products.len()
    }

    pub fn is_empty(&self) -> bool {
        self.products.is_empty()
    }

    /// Indices of products with an empty side (permitted, but they count towards k).
    pub fn empty_products(&self) -> Vec<usize> {
        (0..self.products.len()).filter(|&i| self.products[i].is_empty()).collect()
    }

    pub fn contains(&self, u: &[u32], v: &[u32]) -> Result<bool> {
        for p in &self.products {
            if p.left.contains(&[u.to_vec()])? && p.right.contains(&[v.to_vec()])? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn to_automatic(&self) -> Result<AutomaticRelation> {
        let mut acc = AutomaticRelation::empty(&self.alphabet)?;
        for p in &self.products {
            acc = acc.union(&AutomaticRelation::product(&p.left, &p.right)?)?;
        }
        Ok(acc)
    }

    /// Products with both sides minimized.
    pub fn canonical(&self) -> Result<Self> {
        let products = self
            .products
            .iter()
            .map(|p| Ok(Product::new(p.left.minimize()?, p.right.minimize()?)))
            .collect::<Result<_>>()?;
        Ok(RecognizableRelation { alphabet: self.alphabet.clone(), products })
    }

    /// The partition of `Σ*` into the nonempty Boolean combinations of all
    /// product sides, with the pairs of blocks whose product lies in the relation.
    pub fn to_partitioned(&self) -> Result<PartitionedRecognizable> {
        let mut blocks = vec![Automaton::universal(&self.alphabet, 1)?];
        for p in &self.products {
            for lang in [&p.left, &p.right] {
                let mut next = Vec::with_capacity(2 * blocks.len());
                for b in &blocks {
                    for part in [b.intersect(lang)?, b.difference(lang)?] {
                        if !part.is_empty() {
                            next.push(part.minimize()?);
                        }
                    }
                }
                blocks = next;
            }
        }
        let reps: Vec<Word> = blocks.iter().map(|b| b.shortest_tuple().expect("nonempty block").remove(0)).collect();
        let mut pairs = BTreeSet::new();
        for (i, u) in reps.iter().enumerate() {
            for (j, v) in reps.iter().enumerate() {
                if self.contains(u, v)? {
                    pairs.insert((i, j));
                }
            }
        }
        PartitionedRecognizable::new(&self.alphabet, blocks, pairs)
    }

    pub fn to_json(&self) -> String {
        let j = RecognizableJson {
            alphabet: Some(self.alphabet.symbols().to_vec()),
            products: self
                .products
                .iter()
                .map(|p| ProductJson { left: p.left.to_json_value(), right: p.right.to_json_value() })
                .collect(),
        };
        serde_json::to_string(&j).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: RecognizableJson = serde_json::from_str(text)?;
        let products: Vec<Product> = j
            .products
            .iter()
            .map(|p| Ok(Product::new(Automaton::from_json_value(&p.left)?, Automaton::from_json_value(&p.right)?)))
            .collect::<Result<_>>()?;
        let alphabet = match (&j.alphabet, products.first()) {
            (Some(a), _) => Alphabet::new(a.iter().cloned())?,
            (None, Some(p)) => p.left.alphabet().clone(),
            (None, None) => return Err(Error::Json("an empty product list needs an \"alphabet\" field".into())),
        };
        RecognizableRelation::new(&alphabet, products)
    }
}

#[derive(Serialize, Deserialize)]
struct ProductJson {
    left: AutomatonJson,
    right: AutomatonJson,
}

#[derive(Serialize, Deserialize)]
struct RecognizableJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alphabet: Option<Vec<String>>,
    products: Vec<ProductJson>,
}

/// A kREC witness: a partition `(Aᵢ)` of `Σ*` and the pairs `(i, j)` whose
/// products `Aᵢ × Aⱼ` make up the relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionedRecognizable {
    alphabet: Alphabet,
    partition: Vec<Automaton>,
    pairs: BTreeSet<(usize, usize)>,
}

impl PartitionedRecognizable {
    /// Checks that the blocks are pairwise disjoint and cover `Σ*`.
    pub fn new(alphabet: &Alphabet, partition: Vec<Automaton>, pairs: BTreeSet<(usize, usize)>) -> Result<Self> {
        let refs: Vec<&Automaton> = partition.iter().collect();
        require_languages(alphabet, &refs)?;
        check_partition(alphabet, &partition).map_err(Error::Malformed)?;
        for &(i, j) in &pairs {
            let bound = partition.len();
            if i >= bound || j >= bound {
                return Err(Error::IndexOutOfRange { index: i.max(j), bound });
            }
        }
        Ok(PartitionedRecognizable { alphabet: alphabet.clone(), partition, pairs })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn partition(&self) -> &[Automaton] {
        &self.partition
    }

    pub fn pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.pairs
    }

    pub fn to_recognizable(&self) -> RecognizableRelation {
        let products = self
            .pairs
            .iter()
            .map(|&(i, j)| Product::new(self.partition[i].clone(), self.partition[j].clone()))
            .collect();
        RecognizableRelation { alphabet: self.alphabet.clone(), products }
    }

    pub fn to_automatic(&self) -> Result<AutomaticRelation> {
        self.to_recognizable().to_automatic()
    }

    pub fn to_json(&self) -> String {
        let j = PartitionJson {
            alphabet: Some(self.alphabet.symbols().to_vec()),
            partition: self.partition.iter().map(Automaton::to_json_value).collect(),
            pairs: self.pairs.iter().map(|&(i, j)| [i, j]).collect(),
        };
        serde_json::to_string(&j).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: PartitionJson = serde_json::from_str(text)?;
        let partition: Vec<Automaton> = j.partition.iter().map(Automaton::from_json_value).collect::<Result<_>>()?;
        let alphabet = match (&j.alphabet, partition.first()) {
            (Some(a), _) => Alphabet::new(a.iter().cloned())?,
            (None, Some(p)) => p.alphabet().clone(),
            (None, None) => return Err(Error::Json("a partition needs at least one block".into())),
        };
        PartitionedRecognizable::new(&alphabet, partition, j.pairs.iter().map(|p| (p[0], p[1])).collect())
    }
}

#[derive(Serialize, Deserialize)]
struct PartitionJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alphabet: Option<Vec<String>>,
    partition: Vec<AutomatonJson>,
    pairs: Vec<[usize; 2]>,
}

/// Why a list of languages fails to partition `Σ*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionDefect {
    /// The shortlex-least word lying in two blocks, and the first such pair of blocks.
    Overlap { word: Word, blocks: (usize, usize) },
    /// The shortlex-least word in no block.
    Uncovered { word: Word },
}

/// Returns the shortlex-least defect, if any.
pub fn partition_defect(alphabet: &Alphabet, blocks: &[Automaton]) -> Result<Option<PartitionDefect>> {
    let mut best: Option<(Word, PartitionDefect)> = None;
    let consider = |w: Word, d: PartitionDefect, best: &mut Option<(Word, PartitionDefect)>| {
        let better = match best {
            None => true,
            Some((b, _)) => crate::alphabet::shortlex_cmp(&w, b).is_lt(),
        };
        if better {
            *best = Some((w, d));
        }
    };
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            if let Some(t) = blocks[i].intersect(&blocks[j])?.shortest_tuple() {
                let w = t[0].clone();
                consider(w.clone(), PartitionDefect::Overlap { word: w, blocks: (i, j) }, &mut best);
            }
        }
    }
    let mut union = Automaton::empty(alphabet, 1)?;
    for b in blocks {
        union = union.union(b)?;
    }
    if let Some(t) = union.complement_relative()?.shortest_tuple() {
        let w = t[0].clone();
        consider(w.clone(), PartitionDefect::Uncovered { word: w }, &mut best);
    }
    Ok(best.map(|(_, d)| d))
}

fn check_partition(alphabet: &Alphabet, blocks: &[Automaton]) -> std::result::Result<(), String> {
    match partition_defect(alphabet, blocks) {
        Ok(None) => Ok(()),
        Ok(Some(PartitionDefect::Overlap { word, blocks: (i, j) })) => {
            Err(format!("blocks {i} and {j} both contain {}", alphabet.format_word(&word)))
        }
        Ok(Some(PartitionDefect::Uncovered { word })) => {
            Err(format!("{} lies in no block", alphabet.format_word(&word)))
        }
        Err(e) => Err(e.to_string()),
    }
}

/// Outcome of checking `R1 ⊆ S` and `R2 ∩ S = ∅`. Both conditions are always
/// checked, so a separator can fail both at once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatorVerdict {
    /// Shortlex-least pair of `R1` outside `S`.
    pub containment: Option<(Word, Word)>,
    /// Shortlex-least pair of `R2` inside `S`.
    pub disjoint: Option<(Word, Word)>,
}

impl SeparatorVerdict {
    pub fn separates(&self) -> bool {
        self.containment.is_none() && self.disjoint.is_none()
    }

    pub fn fails_containment(&self) -> bool {
        self.containment.is_some()
    }

    pub fn fails_disjoint(&self) -> bool {
        self.disjoint.is_some()
    }
}

pub fn verify_separator(
    s: &RecognizableRelation,
    r1: &AutomaticRelation,
    r2: &AutomaticRelation,
) -> Result<SeparatorVerdict> {
    verify_separator_relation(&s.to_automatic()?, r1, r2)
}

/// As [`verify_separator`], for a separator already given as an automatic relation.
pub fn verify_separator_relation(
    s: &AutomaticRelation,
    r1: &AutomaticRelation,
    r2: &AutomaticRelation,
) -> Result<SeparatorVerdict> {
    Ok(SeparatorVerdict { containment: r1.difference(s)?.shortest_pair(), disjoint: r2.intersect(s)?.shortest_pair() })
}

/// 1-PROD separability: `π1(R1) × π2(R1)` is the least single product
/// containing `R1`, so it separates iff any single product does.
pub fn one_prod_separability(r1: &AutomaticRelation, r2: &AutomaticRelation) -> Result<Option<RecognizableRelation>> {
    let s = RecognizableRelation::new(
        r1.alphabet(),
        vec![Product::new(r1.domain()?.minimize()?, r1.range()?.minimize()?)],
    )?;
    Ok(verify_separator(&s, r1, r2)?.separates().then_some(s))
}

/// Rewrites `(A1 × B1) ∪ (B2 × A2)` with `Aᵢ ∩ Bᵢ = ∅` into the symmetric form
/// `(A × B) ∪ (B × A)` with `A = A1 ∩ A2`, `B = B1 ∩ B2`, which equals `S ∩ S⁻¹`.
///
/// With a context relation `R` (which must be symmetric and separated from `Id`
/// by the input), the result is checked to separate `R` from `Id` as well.
pub fn normalize_symmetric_separator(
    s: &RecognizableRelation,
    context: Option<&AutomaticRelation>,
) -> Result<RecognizableRelation> {
    if s.len() != 2 {
        return Err(Error::NotApplicable(format!("expected 2 products, got {}", s.len())));
    }
    let (a1, b1) = (&s.products[0].left, &s.products[0].right);
    let (b2, a2) = (&s.products[1].left, &s.products[1].right);
    for (i, (x, y)) in [(a1, b1), (a2, b2)].into_iter().enumerate() {
        if let Some(w) = x.intersect(y)?.shortest_tuple() {
            return Err(Error::NotApplicable(format!(
                "A{0} and B{0} share the word {1}",
                i + 1,
                s.alphabet.format_word(&w[0])
            )));
        }
    }
    let id = AutomaticRelation::identity(&s.alphabet)?;
    if let Some(r) = context {
        if !r.equivalent(&r.inverse())? {
            return Err(Error::NotApplicable("context relation is not symmetric".into()));
        }
        if !verify_separator(s, r, &id)?.separates() {
            return Err(Error::NotApplicable("input does not separate the context relation from Id".into()));
        }
    }
    let a = a1.intersect(a2)?.minimize()?;
    let b = b1.intersect(b2)?.minimize()?;
    let out = RecognizableRelation::new(&s.alphabet, vec![Product::new(a.clone(), b.clone()), Product::new(b, a)])?;
    if let Some(r) = context {
        if !verify_separator(&out, r, &id)?.separates() {
            return Err(Error::Internal("symmetric normal form no longer separates".into()));
        }
    }
    Ok(out)
}

/// The instance produced by [`lift_to_kprod`].
#[derive(Clone, Debug)]
pub struct Lifted {
    pub r1: AutomaticRelation,
    pub r2: AutomaticRelation,
    pub alphabet: Alphabet,
    /// `(aᵢ, bᵢ)` symbol names, `i = 1..k−2`.
    pub fresh: Vec<(String, String)>,
}

/// Extends `(R1, R2)` with `2(k−2)` fresh symbols so that 2-PROD separability of
/// the original pair matches k-PROD separability of the result:
/// `R1′ = R1 ∪ {(aᵢ,bᵢ)}` and `R2′ = R2 ∪ {aᵢ}×Σ* ∪ Σ*×{bᵢ} ∪ {(aᵢ,bⱼ) : i≠j} ∪ {(bᵢ,aⱼ)}`.
pub fn lift_to_kprod(r1: &AutomaticRelation, r2: &AutomaticRelation, k: usize) -> Result<Lifted> {
    if k < 2 {
        return Err(Error::NotApplicable("k must be at least 2".into()));
    }
    let base = r1.alphabet();
    if r2.alphabet() != base {
        return Err(Error::AlphabetMismatch(format!("{:?} vs {:?}", base, r2.alphabet())));
    }
    let fresh: Vec<(String, String)> = (1..=k - 2).map(|i| (format!("a#{i}"), format!("b#{i}"))).collect();
    for (a, b) in &fresh {
        for s in [a, b] {
            if base.contains(s) {
                return Err(Error::SymbolClash(s.clone()));
            }
        }
    }
    let names = fresh.iter().flat_map(|(a, b)| [a.clone(), b.clone()]);
    let alphabet = base.union(&Alphabet::new(names.chain(base.symbols().iter().cloned()))?);
    let lift = |r: &AutomaticRelation| -> Result<AutomaticRelation> {
        AutomaticRelation::new(r.automaton().extend_alphabet(&alphabet)?)
    };
    let word = |name: &str| -> Result<Automaton> { Automaton::from_words(&alphabet, &[vec![alphabet.sym(name)?]]) };
    let sigma_star = Automaton::universal(base, 1)?.extend_alphabet(&alphabet)?;

    let mut r1x = lift(r1)?;
    let mut r2x = lift(r2)?;
    for (i, (ai, bi)) in fresh.iter().enumerate() {
        r1x = r1x.union(&AutomaticRelation::product(&word(ai)?, &word(bi)?)?)?;
        r2x = r2x.union(&AutomaticRelation::product(&word(ai)?, &sigma_star)?)?;
        r2x = r2x.union(&AutomaticRelation::product(&sigma_star, &word(bi)?)?)?;
        for (j, (aj, bj)) in fresh.iter().enumerate() {
            if i != j {
                r2x = r2x.union(&AutomaticRelation::product(&word(ai)?, &word(bj)?)?)?;
            }
            r2x = r2x.union(&AutomaticRelation::product(&word(bi)?, &word(aj)?)?)?;
        }
    }
    Ok(Lifted { r1: r1x.minimize()?, r2: r2x.minimize()?, alphabet, fresh })
}

impl Lifted {
    /// Transfers a separator of the original pair: `S ∪ ⋃ᵢ {aᵢ}×{bᵢ}`.
    pub fn lift_separator(&self, s: &RecognizableRelation) -> Result<RecognizableRelation> {
        let mut products = s
            .products()
            .iter()
            .map(|p| {
                Ok(Product::new(p.left.extend_alphabet(&self.alphabet)?, p.right.extend_alphabet(&self.alphabet)?))
            })
            .collect::<Result<Vec<_>>>()?;
        for (a, b) in &self.fresh {
            let wa = Automaton::from_words(&self.alphabet, &[vec![self.alphabet.sym(a)?]])?;
            let wb = Automaton::from_words(&self.alphabet, &[vec![self.alphabet.sym(b)?]])?;
            products.push(Product::new(wa, wb));
        }
        RecognizableRelation::new(&self.alphabet, products)
    }
}
