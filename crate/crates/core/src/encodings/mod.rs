//! Rule systems for concrete constructions: prime ideals, total relations,
//! bisimulations, and the translation between clause systems and finitary
//! rule systems.

mod bisim;
mod fullness;
mod ring;
mod sga;

pub use bisim::{bisimilar, bisimulation_rules, largest_bisimulation, pair_universe, Graph};
pub use fullness::FullnessSystem;
pub use ring::{prime_ideal_rules, FiniteRing};
pub use sga::{models_of_sga, nid_to_sga, sga_to_nid, SgaClause, SgaInstance, SgaTranslation};
