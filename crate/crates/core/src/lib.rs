//! Finite "context" analysis: timelines over entities and time, consistency
//! contexts, determinability and iterators, plus the construction of modal
//! contexts from Kripke models by quotienting worlds on their theories.
//!
//! Everything is extensional. A [`Context`] is an explicitly enumerated set of
//! [`Instance`]s over a shared [`Signature`], so every check is a finite
//! enumeration and every output has a canonical order.

pub mod cli;
pub mod context;
pub mod determinability;
pub mod formats;
pub mod generators;
pub mod logic;
pub mod modal_context;

mod error;

pub use context::{
    build_full_space, consistency_context, curry_entity, curry_time, restrict, uncurry_entity,
    uncurry_time, Context, EntityId, Instance, Signature, Snapshot, StateId, TimeId, DEFAULT_GUARD,
};
pub use determinability::{
    extract_iterator, future_bundle, generate_from_iterator, has_iterator, is_determinable,
    is_deterministic, next_snapshot_set, suffix_iso, DeterminabilityReport, IteratorConflict,
    IteratorMap, Mode, SuffixIso,
};
pub use error::{Error, Result};
pub use logic::{
    formula_universe, parse_formula, Connective, Connectives, Formula, FormulaUniverse,
    KripkeModel, ParseError, DEFAULT_UNIVERSE_GUARD,
};
pub use modal_context::{
    is_modal_context, prove_in_context, quotient, to_modal_context, verify_representation,
    ModalContext, Violation, WorldClass,
};
