use super::space::FormalSpace;
use crate::closure::enumerate_closed;
use crate::rules::{Rule, RuleSystem};
use crate::subset::{Subset, SubsetFamily};
use crate::{Limits, Result};

/// Rules whose inhabited closed sets are the points: upward closure
/// `{p} ⊢ {q}` for `p ≤ q`, directedness `{p, q} ⊢ {r : r ≤ p, r ≤ q}`, and
/// `{p} ⊢ ↓S` for each basic cover `S` of `p`.
pub fn points_rules(fs: &FormalSpace, limits: Limits) -> Result<RuleSystem> {
    let n = fs.size();
    limits.check(n)?;
    let one = |i: usize| Subset::from_indices(n, [i]);
    let mut rules = Vec::new();
    for (p, q) in fs.order_pairs() {
        rules.push(Rule::new(one(p), one(q)));
    }
    for p in 0..n {
        for q in p..n {
            rules.push(Rule::new(Subset::from_indices(n, [p, q]), fs.common_lower(p, q)));
        }
    }
    for p in 0..n {
        for s in fs.bcov(p) {
            rules.push(Rule::new(one(p), fs.down(s)));
        }
    }
    RuleSystem::new(fs.basics().clone(), rules)
}

pub fn enumerate_points(fs: &FormalSpace, limits: Limits) -> Result<SubsetFamily> {
    let closed = enumerate_closed(&points_rules(fs, limits)?, limits)?;
    Ok(closed.filter(|c| !c.is_empty()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatnessReport {
    pub points: SubsetFamily,
    /// No point strictly contains another.
    pub all_minimal: bool,
    /// No point is strictly contained in another.
    pub all_maximal: bool,
}

impl FlatnessReport {
    pub fn is_flat(&self) -> bool {
        self.all_minimal
    }
}

pub fn flatness(fs: &FormalSpace, limits: Limits) -> Result<FlatnessReport> {
    let points = enumerate_points(fs, limits)?;
    let all_minimal = points.minimal().len() == points.len();
    let all_maximal = points.maximal().len() == points.len();
    Ok(FlatnessReport {
        points,
        all_minimal,
        all_maximal,
    })
}

pub fn is_flat(fs: &FormalSpace, limits: Limits) -> Result<bool> {
    Ok(flatness(fs, limits)?.is_flat())
}
