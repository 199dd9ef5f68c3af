use std::collections::HashMap;

use super::formula::{GameFormula, GameTheory};
use crate::closure::{closed_sets_unbounded, enumerate_closed};
use crate::rules::{Rule, RuleSystem};
use crate::subset::{all_subsets, Subset, SubsetFamily, Universe};
use crate::{Error, Limits, Result};

/// Which formulas receive a conjunction-introduction rule.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum IntroductionScope {
    /// Every formula; at finite scale the finitary and full variants agree.
    #[default]
    All,
    /// Only conjunction-free formulas.
    ConjunctionFree,
}

/// A theory compiled to a rule system over its letters and subformulas.
#[derive(Clone, Debug)]
pub struct CompiledTheory {
    system: RuleSystem,
    formulas: Vec<GameFormula>,
    letters: usize,
    scope: IntroductionScope,
}

impl CompiledTheory {
    pub fn system(&self) -> &RuleSystem {
        &self.system
    }

    /// Universe elements: letters first, then compound subformulas.
    pub fn formulas(&self) -> &[GameFormula] {
        &self.formulas
    }

    pub fn letter_count(&self) -> usize {
        self.letters
    }

    pub fn index_of(&self, phi: &GameFormula) -> Option<usize> {
        self.formulas.iter().position(|f| f == phi)
    }

    /// `X ↦ X ∩ P`.
    pub fn decode(&self, x: &Subset) -> Subset {
        Subset::from_indices(self.letters, x.iter().filter(|&i| i < self.letters))
    }

    pub fn decode_family(&self, fam: &SubsetFamily) -> SubsetFamily {
        SubsetFamily::new(self.letters, fam.iter().map(|x| self.decode(x))).expect("letters prefix")
    }

    /// Closed sets of the compiled system. Letters come first and every other
    /// element is forced once they are decided, so with full introduction the
    /// cap applies to the letter count.
    pub fn closed_sets(&self, limits: Limits) -> Result<SubsetFamily> {
        match self.scope {
            IntroductionScope::All => {
                limits.check(self.letters)?;
                Ok(closed_sets_unbounded(&self.system))
            }
            IntroductionScope::ConjunctionFree => enumerate_closed(&self.system, limits),
        }
    }

    pub fn decoded_models(&self, limits: Limits) -> Result<SubsetFamily> {
        Ok(self.decode_family(&self.closed_sets(limits)?))
    }

    pub fn decoded_minimal_models(&self, limits: Limits) -> Result<SubsetFamily> {
        Ok(self.decoded_models(limits)?.minimal())
    }
}

struct Builder {
    formulas: Vec<GameFormula>,
    index: HashMap<GameFormula, usize>,
}

impl Builder {
    fn add(&mut self, phi: &GameFormula) -> usize {
        if let Some(&i) = self.index.get(phi) {
            return i;
        }
        if let GameFormula::Conj(xs) | GameFormula::Disj(xs) = phi {
            for x in xs {
                self.add(x);
            }
        }
        let i = self.formulas.len();
        self.formulas.push(phi.clone());
        self.index.insert(phi.clone(), i);
        i
    }
}

pub fn compile_propositional(t: &GameTheory) -> Result<CompiledTheory> {
    compile_with_scope(t, IntroductionScope::All)
}

pub fn compile_with_scope(t: &GameTheory, scope: IntroductionScope) -> Result<CompiledTheory> {
    let letters = t.letters().len();
    let mut b = Builder {
        formulas: Vec::new(),
        index: HashMap::new(),
    };
    for name in t.letters().names() {
        b.add(&GameFormula::Atom(name.clone()));
    }
    let sequents: Vec<(usize, usize)> = t
        .sequents()
        .iter()
        .map(|s| (b.add(&s.hypothesis), b.add(&s.conclusion)))
        .collect();

    let n = b.formulas.len();
    let set = |xs: &mut dyn Iterator<Item = usize>| Subset::from_indices(n, xs);
    let one = |i: usize| Subset::from_indices(n, [i]);
    let mut rules = Vec::new();
    for (i, phi) in b.formulas.iter().enumerate() {
        match phi {
            GameFormula::Atom(_) => {}
            GameFormula::Conj(xs) => {
                let children: Vec<usize> = xs.iter().map(|x| b.index[x]).collect();
                for &c in &children {
                    rules.push(Rule::new(one(i), one(c)));
                }
                if scope == IntroductionScope::All || phi.is_conjunction_free() {
                    rules.push(Rule::new(set(&mut children.into_iter()), one(i)));
                }
            }
            GameFormula::Disj(xs) => {
                let children: Vec<usize> = xs.iter().map(|x| b.index[x]).collect();
                for &c in &children {
                    rules.push(Rule::new(one(c), one(i)));
                }
                rules.push(Rule::new(one(i), set(&mut children.into_iter())));
            }
        }
    }
    for (h, c) in sequents {
        rules.push(Rule::new(one(h), one(c)));
    }
    let universe = Universe::new(b.formulas.iter().map(ToString::to_string))?;
    Ok(CompiledTheory {
        system: RuleSystem::new(universe, rules)?,
        formulas: b.formulas,
        letters,
        scope,
    })
}

/// Models by direct evaluation over every subset of the letters.
pub fn models(t: &GameTheory, limits: Limits) -> Result<SubsetFamily> {
    let n = t.letters().len();
    limits.check(n)?;
    if n >= 64 {
        return Err(Error::CapExceeded { size: n, cap: 63 });
    }
    SubsetFamily::new(n, all_subsets(n).filter(|m| t.is_model(m)))
}

pub fn minimal_models(t: &GameTheory, limits: Limits) -> Result<SubsetFamily> {
    Ok(models(t, limits)?.minimal())
}
