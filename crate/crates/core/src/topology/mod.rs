//! Finite formal spaces presented by basic covers: points, flatness, the
//! generated cover relation and continuous morphisms.

mod cover;
mod morphisms;
mod points;
mod space;

pub use cover::{is_presentation, presentation_closure, saturate_cover, CoverRelation, MAX_SATURATED_BASICS};
pub use morphisms::{enumerate_morphisms, morphism_theory, pair_universe, relation_letter, CoverClosure};
pub use points::{enumerate_points, flatness, is_flat, points_rules, FlatnessReport};
pub use space::FormalSpace;

#[cfg(test)]
mod tests;
