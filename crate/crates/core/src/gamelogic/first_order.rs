use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::compile::{compile_propositional, CompiledTheory};
use super::formula::{GameFormula, GameSequent, GameTheory};
use crate::closure::{closed_sets_unbounded, least_generators_of};
use crate::rules::{Rule, RuleSystem};
use crate::subset::{Subset, SubsetFamily, Universe};
use crate::{Error, Limits, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSymbol {
    pub name: String,
    pub arity: usize,
}

impl RelationSymbol {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        Self {
            name: name.into(),
            arity,
        }
    }
}

/// Relation symbols split into the base ones, interpreted by a model, and the
/// added ones an expansion has to interpret.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoSignature {
    base: Vec<RelationSymbol>,
    added: Vec<RelationSymbol>,
}

impl FoSignature {
    pub fn new(base: Vec<RelationSymbol>, added: Vec<RelationSymbol>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for r in base.iter().chain(&added) {
            if !seen.insert(r.name.as_str()) {
                return Err(Error::Signature(format!("relation `{}` declared twice", r.name)));
            }
        }
        Ok(Self { base, added })
    }

    pub fn base(&self) -> &[RelationSymbol] {
        &self.base
    }

    pub fn added(&self) -> &[RelationSymbol] {
        &self.added
    }

    pub fn relations(&self) -> impl Iterator<Item = &RelationSymbol> {
        self.base.iter().chain(&self.added)
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.relations().find(|r| r.name == name).map(|r| r.arity)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    /// A carrier element, by name.
    Elem(String),
}

impl Term {
    pub fn var(name: &str) -> Self {
        Self::Var(name.to_owned())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FoFormula {
    Atom { relation: String, args: Vec<Term> },
    Conj(Vec<FoFormula>),
    Disj(Vec<FoFormula>),
    Forall(String, Box<FoFormula>),
    Exists(String, Box<FoFormula>),
}

impl FoFormula {
    pub fn atom(relation: &str, vars: &[&str]) -> Self {
        Self::Atom {
            relation: relation.to_owned(),
            args: vars.iter().map(|v| Term::var(v)).collect(),
        }
    }

    pub fn top() -> Self {
        Self::Conj(Vec::new())
    }

    pub fn forall(var: &str, body: FoFormula) -> Self {
        Self::Forall(var.to_owned(), Box::new(body))
    }

    pub fn exists(var: &str, body: FoFormula) -> Self {
        Self::Exists(var.to_owned(), Box::new(body))
    }
}

/// `∀ vars. hypothesis → conclusion`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoSequent {
    pub vars: Vec<String>,
    pub hypothesis: FoFormula,
    pub conclusion: FoFormula,
}

impl FoSequent {
    pub fn new(vars: &[&str], hypothesis: FoFormula, conclusion: FoFormula) -> Self {
        Self {
            vars: vars.iter().map(|v| (*v).to_owned()).collect(),
            hypothesis,
            conclusion,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FoTheory {
    pub sequents: Vec<FoSequent>,
}

pub type Table = BTreeSet<Vec<usize>>;

/// A finite carrier with tables for the base relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoModel {
    carrier: Universe,
    tables: BTreeMap<String, Table>,
}

impl FoModel {
    pub fn new(carrier: Universe, tables: BTreeMap<String, Table>) -> Self {
        Self { carrier, tables }
    }

    pub fn carrier(&self) -> &Universe {
        &self.carrier
    }

    pub fn table(&self, relation: &str) -> Option<&Table> {
        self.tables.get(relation)
    }

    fn check(&self, sig: &FoSignature) -> Result<()> {
        for (name, table) in &self.tables {
            let Some(r) = sig.base.iter().find(|r| &r.name == name) else {
                return Err(Error::Signature(format!("model interprets `{name}`, not a base relation")));
            };
            for t in table {
                if t.len() != r.arity || t.iter().any(|&e| e >= self.carrier.len()) {
                    return Err(Error::Signature(format!("bad tuple {t:?} for `{name}`")));
                }
            }
        }
        Ok(())
    }
}

/// Interpretations of the added relations.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Expansion {
    pub tables: BTreeMap<String, Table>,
}

impl Expansion {
    pub fn holds(&self, relation: &str, args: &[usize]) -> bool {
        self.tables.get(relation).is_some_and(|t| t.contains(args))
    }

    /// Relation-wise inclusion.
    pub fn is_contained_in(&self, other: &Self) -> bool {
        self.tables
            .iter()
            .all(|(r, t)| t.iter().all(|args| other.holds(r, args)))
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut tables = self.tables.clone();
        for (r, t) in &other.tables {
            tables.entry(r.clone()).or_default().extend(t.iter().cloned());
        }
        Self { tables }
    }
}

/// A relation applied to carrier elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroundAtom {
    pub relation: String,
    pub args: Vec<usize>,
}

impl GroundAtom {
    pub fn name(&self, carrier: &Universe) -> String {
        if self.args.is_empty() {
            self.relation.clone()
        } else {
            let args: Vec<&str> = self.args.iter().map(|&a| carrier.name(a)).collect();
            format!("{}({})", self.relation, args.join(","))
        }
    }
}

fn tuples(n: usize, arity: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |e| {
                    let mut t = t.clone();
                    t.push(e);
                    t
                })
            })
            .collect();
    }
    out
}

/// Every atomic sentence, base relations first, tuples in lexicographic order.
pub fn ground_atoms(sig: &FoSignature, carrier: &Universe) -> Vec<GroundAtom> {
    sig.relations()
        .flat_map(|r| {
            tuples(carrier.len(), r.arity).into_iter().map(|args| GroundAtom {
                relation: r.name.clone(),
                args,
            })
        })
        .collect()
}

struct Grounder<'a> {
    sig: &'a FoSignature,
    carrier: &'a Universe,
}

impl Grounder<'_> {
    fn term(&self, t: &Term, env: &HashMap<String, usize>) -> Result<usize> {
        match t {
            Term::Var(v) => env.get(v).copied().ok_or_else(|| Error::UnboundVariable(v.clone())),
            Term::Elem(e) => self.carrier.lookup(e),
        }
    }

    fn formula(&self, phi: &FoFormula, env: &mut HashMap<String, usize>) -> Result<GameFormula> {
        Ok(match phi {
            FoFormula::Atom { relation, args } => {
                let arity = self
                    .sig
                    .arity(relation)
                    .ok_or_else(|| Error::Signature(format!("unknown relation `{relation}`")))?;
                if arity != args.len() {
                    return Err(Error::Signature(format!(
                        "`{relation}` has arity {arity}, applied to {} arguments",
                        args.len()
                    )));
                }
                let args = args
                    .iter()
                    .map(|t| self.term(t, env))
                    .collect::<Result<Vec<_>>>()?;
                let atom = GroundAtom {
                    relation: relation.clone(),
                    args,
                };
                GameFormula::Atom(atom.name(self.carrier))
            }
            FoFormula::Conj(xs) => GameFormula::Conj(
                xs.iter().map(|x| self.formula(x, env)).collect::<Result<_>>()?,
            ),
            FoFormula::Disj(xs) => GameFormula::Disj(
                xs.iter().map(|x| self.formula(x, env)).collect::<Result<_>>()?,
            ),
            FoFormula::Forall(v, body) => GameFormula::Conj(self.instances(v, body, env)?),
            FoFormula::Exists(v, body) => GameFormula::Disj(self.instances(v, body, env)?),
        })
    }

    fn instances(
        &self,
        var: &str,
        body: &FoFormula,
        env: &mut HashMap<String, usize>,
    ) -> Result<Vec<GameFormula>> {
        let saved = env.get(var).copied();
        let mut out = Vec::with_capacity(self.carrier.len());
        for e in 0..self.carrier.len() {
            env.insert(var.to_owned(), e);
            let grounded = self.formula(body, env);
            match grounded {
                Ok(g) => out.push(g),
                Err(err) => {
                    restore(env, var, saved);
                    return Err(err);
                }
            }
        }
        restore(env, var, saved);
        Ok(out)
    }
}

fn restore(env: &mut HashMap<String, usize>, var: &str, saved: Option<usize>) {
    match saved {
        Some(e) => env.insert(var.to_owned(), e),
        None => env.remove(var),
    };
}

/// Propositional theory over all atomic sentences with carrier constants:
/// quantifiers become conjunctions and disjunctions over the carrier, each
/// sequent is instantiated at every assignment of its variables, and every
/// base atom true in `m` is added as a fact.
pub fn ground_theory(sig: &FoSignature, m: &FoModel, t: &FoTheory) -> Result<GameTheory> {
    m.check(sig)?;
    let carrier = m.carrier();
    let g = Grounder { sig, carrier };
    let mut sequents = Vec::new();
    for s in &t.sequents {
        for assignment in tuples(carrier.len(), s.vars.len()) {
            let mut env: HashMap<String, usize> =
                s.vars.iter().cloned().zip(assignment).collect();
            let h = g.formula(&s.hypothesis, &mut env)?;
            let c = g.formula(&s.conclusion, &mut env)?;
            sequents.push(GameSequent::new(h, c));
        }
    }
    for r in sig.base() {
        for args in m.table(&r.name).into_iter().flatten() {
            let atom = GroundAtom {
                relation: r.name.clone(),
                args: args.clone(),
            };
            sequents.push(GameSequent::fact(GameFormula::Atom(atom.name(carrier))));
        }
    }
    let letters = Universe::new(ground_atoms(sig, carrier).iter().map(|a| a.name(carrier)))?;
    GameTheory::new(letters, sequents)
}

/// Expansions of a model satisfying a first-order theory, computed from the
/// compiled grounded theory with every base atom false in the model
/// prohibited by a rule with empty conclusion.
#[derive(Clone, Debug)]
pub struct ExpansionSpace {
    compiled: CompiledTheory,
    system: RuleSystem,
    carrier: Universe,
    added: Vec<GroundAtom>,
    offset: usize,
}

impl ExpansionSpace {
    pub fn new(sig: &FoSignature, m: &FoModel, t: &FoTheory) -> Result<Self> {
        let grounded = ground_theory(sig, m, t)?;
        let compiled = compile_propositional(&grounded)?;
        let atoms = ground_atoms(sig, m.carrier());
        let offset = atoms.iter().take_while(|a| sig.base().iter().any(|r| r.name == a.relation)).count();
        let n = compiled.system().size();
        let prohibitions = atoms[..offset]
            .iter()
            .enumerate()
            .filter(|(_, a)| !m.table(&a.relation).is_some_and(|t| t.contains(&a.args)))
            .map(|(i, _)| Rule::new(Subset::from_indices(n, [i]), Subset::empty(n)));
        let system = RuleSystem::new(
            compiled.system().universe().clone(),
            compiled.system().rules().iter().cloned().chain(prohibitions),
        )?;
        Ok(Self {
            compiled,
            system,
            carrier: m.carrier().clone(),
            added: atoms[offset..].to_vec(),
            offset,
        })
    }

    pub fn compiled(&self) -> &CompiledTheory {
        &self.compiled
    }

    /// Atoms of the added relations, the coordinates of [`Self::family`].
    pub fn added_atoms(&self) -> &[GroundAtom] {
        &self.added
    }

    pub fn atom_universe(&self) -> Universe {
        Universe::new(self.added.iter().map(|a| a.name(&self.carrier))).expect("distinct atoms")
    }

    /// Expansions as subsets of [`Self::added_atoms`]. The search branches on
    /// added atoms only, so the cap applies to their number.
    pub fn family(&self, limits: Limits) -> Result<SubsetFamily> {
        limits.check(self.added.len())?;
        let closed = closed_sets_unbounded(&self.system);
        Ok(self.project(&closed))
    }

    /// Least generating family of the compiled system, projected: every
    /// expansion is the union of the members below it.
    pub fn generators(&self, limits: Limits) -> Result<SubsetFamily> {
        limits.check(self.added.len())?;
        let closed = closed_sets_unbounded(&self.system);
        Ok(self.project(&least_generators_of(&closed)))
    }

    fn project(&self, fam: &SubsetFamily) -> SubsetFamily {
        let k = self.added.len();
        let range = self.offset..self.offset + k;
        SubsetFamily::new(
            k,
            fam.iter().map(|x| {
                Subset::from_indices(k, x.iter().filter(|i| range.contains(i)).map(|i| i - self.offset))
            }),
        )
        .expect("projection stays in range")
    }

    pub fn decode(&self, x: &Subset) -> Expansion {
        let mut tables: BTreeMap<String, Table> = BTreeMap::new();
        for a in &self.added {
            tables.entry(a.relation.clone()).or_default();
        }
        for i in x.iter() {
            let a = &self.added[i];
            tables.get_mut(&a.relation).unwrap().insert(a.args.clone());
        }
        Expansion { tables }
    }

    pub fn expansions(&self, limits: Limits) -> Result<Vec<Expansion>> {
        Ok(self.family(limits)?.iter().map(|x| self.decode(x)).collect())
    }

    pub fn minimal_expansions(&self, limits: Limits) -> Result<Vec<Expansion>> {
        Ok(self.family(limits)?.minimal().iter().map(|x| self.decode(x)).collect())
    }
}

pub fn expansions(sig: &FoSignature, m: &FoModel, t: &FoTheory, limits: Limits) -> Result<Vec<Expansion>> {
    ExpansionSpace::new(sig, m, t)?.expansions(limits)
}

pub fn minimal_expansions(
    sig: &FoSignature,
    m: &FoModel,
    t: &FoTheory,
    limits: Limits,
) -> Result<Vec<Expansion>> {
    ExpansionSpace::new(sig, m, t)?.minimal_expansions(limits)
}
