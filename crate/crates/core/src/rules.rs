//! Rules and rule systems.
//!
//! Every rule over a finite universe has a finite premise, so every system
//! built here is finitary; there is no separate flag for it.

use crate::subset::{Subset, Universe};
use crate::Result;
#[cfg(test)]
use crate::Error;

/// A pair `(premise, conclusion)`: whenever a closed set contains the whole
/// premise, it must contain some element of the conclusion.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rule {
    pub premise: Subset,
    pub conclusion: Subset,
}

impl Rule {
    pub fn new(premise: Subset, conclusion: Subset) -> Self {
        Self {
            premise,
            conclusion,
        }
    }

    pub fn is_elementary(&self) -> bool {
        self.premise.count() == 1
    }

    pub fn is_deterministic(&self) -> bool {
        self.conclusion.count() == 1
    }

    /// `premise ⊆ y ⇒ conclusion ∩ y ≠ ∅`.
    pub fn is_satisfied_by(&self, y: &Subset) -> bool {
        !self.premise.is_subset(y) || self.conclusion.meets(y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub elementary: bool,
    pub deterministic: bool,
    pub max_premise: usize,
    pub max_conclusion: usize,
}

/// How [`RuleSystem::star_extend`] treats the fresh element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StarMode {
    /// The same rules, read over the enlarged universe.
    Plain,
    /// Additionally the rule `(∅, {*})`.
    WithStarRule,
}

/// Name of the element adjoined by [`RuleSystem::star_extend`].
pub const STAR: &str = "*";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleSystem {
    universe: Universe,
    rules: Vec<Rule>,
    classification: Classification,
}

impl RuleSystem {
    /// Builds a system, dropping duplicate rules (first occurrence wins).
    pub fn new(universe: Universe, rules: impl IntoIterator<Item = Rule>) -> Result<Self> {
        let n = universe.len();
        let mut seen = std::collections::HashSet::new();
        let mut kept = Vec::new();
        for rule in rules {
            rule.premise.check_len(n)?;
            rule.conclusion.check_len(n)?;
            if seen.insert(rule.clone()) {
                kept.push(rule);
            }
        }
        let classification = classify_rules(&kept);
        Ok(Self {
            universe,
            rules: kept,
            classification,
        })
    }

    /// Builds a system from named premise/conclusion lists.
    pub fn from_names<P, C, S>(universe: Universe, rules: impl IntoIterator<Item = (P, C)>) -> Result<Self>
    where
        P: IntoIterator<Item = S>,
        C: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut built = Vec::new();
        for (premise, conclusion) in rules {
            built.push(Rule::new(universe.subset(premise)?, universe.subset(conclusion)?));
        }
        Self::new(universe, built)
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn size(&self) -> usize {
        self.universe.len()
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn classify(&self) -> Classification {
        self.classification
    }

    pub fn is_elementary(&self) -> bool {
        self.classification.elementary
    }

    pub fn is_deterministic(&self) -> bool {
        self.classification.deterministic
    }

    /// The same system with one more rule.
    pub fn with_rule(&self, rule: Rule) -> Result<Self> {
        Self::new(
            self.universe.clone(),
            self.rules.iter().cloned().chain([rule]),
        )
    }

    /// Adjoins a fresh element `*` (always the last index).
    pub fn star_extend(&self, mode: StarMode) -> Result<Self> {
        let universe = self.universe.extended(STAR)?;
        let n = universe.len();
        let mut rules: Vec<Rule> = self
            .rules
            .iter()
            .map(|r| Rule::new(r.premise.resized(n), r.conclusion.resized(n)))
            .collect();
        if mode == StarMode::WithStarRule {
            rules.push(Rule::new(
                Subset::empty(n),
                Subset::from_indices(n, [n - 1]),
            ));
        }
        Self::new(universe, rules)
    }

    pub(crate) fn check_subset(&self, y: &Subset) -> Result<()> {
        y.check_len(self.size())
    }
}

fn classify_rules(rules: &[Rule]) -> Classification {
    Classification {
        elementary: rules.iter().all(Rule::is_elementary),
        deterministic: rules.iter().all(Rule::is_deterministic),
        max_premise: rules.iter().map(|r| r.premise.count()).max().unwrap_or(0),
        max_conclusion: rules.iter().map(|r| r.conclusion.count()).max().unwrap_or(0),
    }
}

impl std::fmt::Display for RuleSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let u = &self.universe;
        for r in &self.rules {
            writeln!(
                f,
                "{{{}}} ⊢ {{{}}}",
                u.render(&r.premise).join(","),
                u.render(&r.conclusion).join(",")
            )?;
        }
        Ok(())
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn classification() {
        let c = r1().classify();
        assert!(c.elementary && c.deterministic);
        let c = r2().classify();
        assert!(!c.elementary && !c.deterministic);
        assert_eq!((c.max_premise, c.max_conclusion), (0, 2));
    }

    #[test]
    fn duplicate_rules_are_dropped() {
        let u = Universe::new(["x"]).unwrap();
        let r = RuleSystem::from_names(u, [(vec!["x"], vec!["x"]), (vec!["x"], vec!["x"])]).unwrap();
        assert_eq!(r.rules().len(), 1);
    }

    #[test]
    fn star_extension_modes() {
        let plain = r1().star_extend(StarMode::Plain).unwrap();
        assert_eq!(plain.universe().names(), ["1", "2", "*"]);
        assert_eq!(plain.rules().len(), 1);
        let starred = r1().star_extend(StarMode::WithStarRule).unwrap();
        assert_eq!(starred.rules().len(), 2);
        let last = &starred.rules()[1];
        assert!(last.premise.is_empty());
        assert_eq!(last.conclusion.iter().collect::<Vec<_>>(), vec![2]);
    }

    #[test]
    fn star_extension_of_empty_system() {
        let r = RuleSystem::new(Universe::new(Vec::<String>::new()).unwrap(), []).unwrap();
        let s = r.star_extend(StarMode::Plain).unwrap();
        assert_eq!(s.universe().names(), ["*"]);
    }

    #[test]
    fn star_name_clash() {
        let r = RuleSystem::new(Universe::new(["*"]).unwrap(), []).unwrap();
        assert_eq!(
            r.star_extend(StarMode::Plain).unwrap_err(),
            Error::NameClash("*".into())
        );
    }

    #[test]
    fn rules_must_share_the_universe() {
        let u = Universe::new(["a"]).unwrap();
        let err = RuleSystem::new(u, [Rule::new(Subset::empty(2), Subset::empty(1))]).unwrap_err();
        assert_eq!(err, Error::UniverseMismatch { expected: 1, found: 2 });
    }
}
