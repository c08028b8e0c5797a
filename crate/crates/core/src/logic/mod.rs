//! Modal formulas, their parser, Kripke models and finite formula universes.

mod formula;
mod kripke;
mod parse;
mod universe;

pub use formula::Formula;
pub(crate) use kripke::valid_world_name;
pub use kripke::KripkeModel;
pub use parse::{is_atom_name, parse_formula, ParseError};
pub use universe::{
    check_modal_operator, formula_universe, Connective, Connectives, FormulaUniverse,
    ModalOperatorReport, DEFAULT_CAP, DEFAULT_UNIVERSE_GUARD,
};
