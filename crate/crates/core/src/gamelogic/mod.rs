//! Game formulas and theories: parsing, evaluation, compilation to rule
//! systems, and first-order theories grounded over finite models.

mod compile;
mod first_order;
mod formula;
mod linear;
mod parse;

pub use compile::{
    compile_propositional, compile_with_scope, minimal_models, models, CompiledTheory,
    IntroductionScope,
};
pub use first_order::{
    expansions, ground_atoms, ground_theory, minimal_expansions, Expansion, ExpansionSpace,
    FoFormula, FoModel, FoSequent, FoSignature, FoTheory, GroundAtom, RelationSymbol, Table, Term,
};
pub use formula::{eval_formula, GameFormula, GameSequent, GameTheory};
pub use linear::{
    linear_extensions, linear_extensions_with_totality, linear_order_theory, totality_sequent,
    LinearityReport, Poset, EQUIVALENCE, LINEAR, ORDER,
};
pub use parse::{parse_formula, parse_theory, ParseError};
