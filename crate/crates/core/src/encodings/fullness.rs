use crate::closure::least_generating_family;
use crate::rules::{Rule, RuleSystem};
use crate::subset::{Subset, SubsetFamily, Universe};
use crate::{Limits, Result};

/// The elementary system on `1 + A + A×B` with rules `{*} ⊢ {a}` for each
/// `a ∈ A` and `{a} ⊢ {(a,b) : b ∈ B}`. A closed set containing `*` holds a
/// total relation from `A` to `B`.
#[derive(Clone, Debug)]
pub struct FullnessSystem {
    rules: RuleSystem,
    a_size: usize,
    b_size: usize,
}

impl FullnessSystem {
    pub fn new(a_size: usize, b_size: usize, limits: Limits) -> Result<Self> {
        let n = 1 + a_size + a_size * b_size;
        limits.check(n)?;
        let names = std::iter::once("*".to_owned())
            .chain((0..a_size).map(|a| format!("a{a}")))
            .chain((0..a_size).flat_map(|a| (0..b_size).map(move |b| format!("(a{a},b{b})"))));
        let universe = Universe::new(names)?;
        let mut rules = Vec::new();
        for a in 0..a_size {
            rules.push(Rule::new(
                Subset::from_indices(n, [0]),
                Subset::from_indices(n, [1 + a]),
            ));
            rules.push(Rule::new(
                Subset::from_indices(n, [1 + a]),
                Subset::from_indices(n, (0..b_size).map(|b| 1 + a_size + a * b_size + b)),
            ));
        }
        Ok(Self {
            rules: RuleSystem::new(universe, rules)?,
            a_size,
            b_size,
        })
    }

    pub fn rules(&self) -> &RuleSystem {
        &self.rules
    }

    /// Universe of pairs `(a_i, b_j)`, index `i·|B| + j`.
    pub fn pair_universe(&self) -> Universe {
        Universe::new((0..self.a_size).flat_map(|a| (0..self.b_size).map(move |b| format!("(a{a},b{b})"))))
            .expect("pair names are distinct")
    }

    /// `{I ∩ A×B : I generating, * ∈ I}`: total relations such that every
    /// total relation contains one of them.
    pub fn derive_full_relations(&self, limits: Limits) -> Result<SubsetFamily> {
        let generators = least_generating_family(&self.rules, limits)?;
        let offset = 1 + self.a_size;
        let pairs = self.a_size * self.b_size;
        SubsetFamily::new(
            pairs,
            generators.iter().filter(|g| g.contains(0)).map(|g| {
                Subset::from_indices(pairs, g.iter().filter(|&i| i >= offset).map(|i| i - offset))
            }),
        )
    }

    /// Whether `rel` (over [`Self::pair_universe`]) relates every `a` to some `b`.
    pub fn is_total(&self, rel: &Subset) -> bool {
        (0..self.a_size).all(|a| (0..self.b_size).any(|b| rel.contains(a * self.b_size + b)))
    }
}
