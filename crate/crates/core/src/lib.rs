//! Automatic relations on finite words: synchronous multitrack automata,
//! recognizable relations, kREC/kPROD definability, REC-separability, regular
//! colorings of automatic graphs, and Turing-machine gadgets.

pub mod alphabet;
pub mod automaton;
pub mod coloring;
pub mod definability;
pub mod dot;
pub mod error;
pub mod fixtures;
pub mod recognizable;
pub mod relation;
pub mod relspec;
pub mod separability;
pub mod tm;

pub use alphabet::{shortlex_cmp, Alphabet, Sym, Word};
pub use automaton::{convolve, deconvolve, Automaton, BoolMode, Codec, Component, Letter, StateId, TrackSymbol};
pub use coloring::{bounded_color_search, verify_coloring, ColoringVerdict, RegularColoring};
pub use definability::{
    decompose, kprod_definability, krec_definability, min_prod, EquivalenceDecomposition, QuotientMatrix,
};
pub use error::{set_state_budget, state_budget, Error, Result, StepBudget, DEFAULT_STATE_BUDGET};
pub use recognizable::{
    lift_to_kprod, normalize_symmetric_separator, one_prod_separability, partition_defect, verify_separator,
    verify_separator_relation, Lifted, PartitionDefect, PartitionedRecognizable, Product, RecognizableRelation,
    SeparatorVerdict,
};
pub use relation::{AutomaticRelation, Neighbours, Slice};
pub use relspec::{parse_relation, Evaluator};
pub use separability::{
    coloring_from_rec_separator, coloring_from_separator, definability_to_separability,
    identity_separator_from_coloring, incompatibility_graph, reduce_coloring_to_sep, reduce_sep_to_coloring,
    separator_from_coloring,
};
pub use tm::{Config, Move, TuringMachine};
