use std::collections::HashMap;

use crate::closure::{enumerate_closed, least_generating_family};
use crate::rules::{Rule, RuleSystem};
use crate::subset::{all_subsets, Subset, SubsetFamily, Universe};
use crate::{Error, Limits, Result};

/// One clause `(σ, Γ)`: whenever `σ ⊆ α`, some `U ∈ Γ` must satisfy `U ⊆ α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SgaClause {
    pub sigma: Subset,
    pub gamma: Vec<Subset>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SgaInstance {
    base: Universe,
    clauses: Vec<SgaClause>,
}

impl SgaInstance {
    pub fn new(base: Universe, clauses: Vec<SgaClause>) -> Result<Self> {
        for c in &clauses {
            c.sigma.check_len(base.len())?;
            for u in &c.gamma {
                u.check_len(base.len())?;
            }
        }
        Ok(Self { base, clauses })
    }

    pub fn base(&self) -> &Universe {
        &self.base
    }

    pub fn clauses(&self) -> &[SgaClause] {
        &self.clauses
    }

    pub fn is_model(&self, alpha: &Subset) -> bool {
        self.clauses
            .iter()
            .all(|c| !c.sigma.is_subset(alpha) || c.gamma.iter().any(|u| u.is_subset(alpha)))
    }
}

/// The class `M(Z)`, by direct evaluation over every subset of the base.
pub fn models_of_sga(z: &SgaInstance, limits: Limits) -> Result<SubsetFamily> {
    let n = z.base.len();
    limits.check(n)?;
    if n >= 64 {
        return Err(Error::CapExceeded { size: n, cap: 63 });
    }
    SubsetFamily::new(n, all_subsets(n).filter(|a| z.is_model(a)))
}

/// `Z = {(a, {{x} : x ∈ b}) : (a, b) rule}`, so that `M(Z)` is the closed family.
pub fn nid_to_sga(r: &RuleSystem) -> SgaInstance {
    let n = r.size();
    let clauses = r
        .rules()
        .iter()
        .map(|rule| SgaClause {
            sigma: rule.premise.clone(),
            gamma: rule
                .conclusion
                .iter()
                .map(|x| Subset::from_indices(n, [x]))
                .collect(),
        })
        .collect();
    SgaInstance {
        base: r.universe().clone(),
        clauses,
    }
}

/// Finitary rule system over `Pow(S)`, with the decoder back
/// to subsets of `S`.
#[derive(Clone, Debug)]
pub struct SgaTranslation {
    system: RuleSystem,
    elements: Vec<Subset>,
    base_len: usize,
}

impl SgaTranslation {
    pub fn system(&self) -> &RuleSystem {
        &self.system
    }

    /// The subset of `S` each universe element stands for.
    pub fn elements(&self) -> &[Subset] {
        &self.elements
    }

    /// `γ ↦ {s ∈ S : {s} ∈ γ}`. Singletons occupy the first `|S|` indices.
    pub fn decode(&self, gamma: &Subset) -> Subset {
        Subset::from_indices(self.base_len, gamma.iter().filter(|&i| i < self.base_len))
    }

    pub fn decode_family(&self, fam: &SubsetFamily) -> SubsetFamily {
        SubsetFamily::new(self.base_len, fam.iter().map(|g| self.decode(g)))
            .expect("decoded over the base")
    }

    pub fn decoded_closed(&self, limits: Limits) -> Result<SubsetFamily> {
        Ok(self.decode_family(&enumerate_closed(&self.system, limits)?))
    }

    /// Decoded least generating family; it strongly generates `M(Z)`.
    pub fn decoded_generators(&self, limits: Limits) -> Result<SubsetFamily> {
        Ok(self.decode_family(&least_generating_family(&self.system, limits)?))
    }
}

/// Builds the rule system over `Pow(S)` (every subset of a finite set is
/// finite): `{σ} ⊢ Γ` for each clause, `{U} ⊢ {{u}}` for `u ∈ U`, and
/// `{{s} : s ∈ σ} ⊢ {σ}` for every `σ`.
///
/// Singletons come first, in base order, followed by the remaining subsets in
/// canonical order. The closed sets are exactly `Pow(α)` for `α ∈ M(Z)`.
pub fn sga_to_nid(z: &SgaInstance, limits: Limits) -> Result<SgaTranslation> {
    let n = z.base.len();
    if n >= 64 {
        return Err(Error::CapExceeded { size: n, cap: 63 });
    }
    let elements: Vec<Subset> = (0..n)
        .map(|s| Subset::from_indices(n, [s]))
        .chain(all_subsets(n).filter(|e| e.count() != 1))
        .collect();
    let size = elements.len();
    limits.check(size)?;
    let position: HashMap<&Subset, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();

    let universe = Universe::new(elements.iter().map(|e| format!("{{{}}}", z.base.render(e).join(","))))?;
    let one = |i: usize| Subset::from_indices(size, [i]);
    let mut rules = Vec::new();
    for c in &z.clauses {
        rules.push(Rule::new(
            one(position[&c.sigma]),
            Subset::from_indices(size, c.gamma.iter().map(|u| position[u])),
        ));
    }
    for (i, e) in elements.iter().enumerate() {
        for u in e.iter() {
            rules.push(Rule::new(one(i), one(u)));
        }
        rules.push(Rule::new(Subset::from_indices(size, e.iter()), one(i)));
    }
    Ok(SgaTranslation {
        system: RuleSystem::new(universe, rules)?,
        elements,
        base_len: n,
    })
}
