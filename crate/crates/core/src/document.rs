//! JSON input documents, tagged by `"kind"`, and their conversion into the
//! library's types. Every element is referred to by name.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cotrees::{Coalgebra, Signature};
use crate::encodings::{FiniteRing, Graph, SgaClause, SgaInstance};
use crate::gamelogic::{parse_formula, parse_theory, GameFormula, GameSequent, GameTheory, Poset};
use crate::rules::RuleSystem;
use crate::subset::{Subset, Universe};
use crate::topology::FormalSpace;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Document {
    Rules(RulesDoc),
    Ring(RingDoc),
    GraphPair(GraphPairDoc),
    Poset(PosetDoc),
    FormalSpace(SpaceDoc),
    SpacePair(SpacePairDoc),
    Coalgebra(CoalgebraDoc),
    Theory(TheoryDoc),
    TheoryText(TheoryTextDoc),
    Sga(SgaDoc),
    Fullness(FullnessDoc),
}

impl Document {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Rules(_) => "rules",
            Self::Ring(_) => "ring",
            Self::GraphPair(_) => "graph-pair",
            Self::Poset(_) => "poset",
            Self::FormalSpace(_) => "formal-space",
            Self::SpacePair(_) => "space-pair",
            Self::Coalgebra(_) => "coalgebra",
            Self::Theory(_) => "theory",
            Self::TheoryText(_) => "theory-text",
            Self::Sga(_) => "sga",
            Self::Fullness(_) => "fullness",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RuleDoc {
    #[serde(default)]
    pub all_of: Vec<String>,
    #[serde(default)]
    pub one_of: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RulesDoc {
    pub universe: Vec<String>,
    #[serde(default)]
    pub rules: Vec<RuleDoc>,
    /// Starting set for least fixed points.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<Vec<String>>,
}

impl RulesDoc {
    pub fn system(&self) -> Result<RuleSystem> {
        let universe = Universe::new(&self.universe)?;
        RuleSystem::from_names(universe, self.rules.iter().map(|r| (&r.all_of, &r.one_of)))
    }

    pub fn seed(&self, r: &RuleSystem) -> Result<Subset> {
        r.universe().subset(self.seed.iter().flatten())
    }
}

/// Either `{"modulus": n}` or explicit tables over named elements.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RingDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub one: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub add: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mul: Option<Vec<Vec<String>>>,
}

impl RingDoc {
    pub fn ring(&self) -> Result<FiniteRing> {
        if let Some(n) = self.modulus {
            if self.elements.is_some() {
                return Err(Error::Document("give either a modulus or explicit tables".into()));
            }
            return FiniteRing::modular(n);
        }
        let missing = |f: &str| Error::Document(format!("ring without modulus needs `{f}`"));
        let elements = self.elements.as_ref().ok_or_else(|| missing("elements"))?;
        let carrier = Universe::new(elements)?;
        let table = |t: &Option<Vec<Vec<String>>>, f: &str| -> Result<Vec<Vec<usize>>> {
            let t = t.as_ref().ok_or_else(|| missing(f))?;
            if t.len() != carrier.len() || t.iter().any(|row| row.len() != carrier.len()) {
                return Err(Error::InvalidRing(format!("`{f}` must be a square table over the elements")));
            }
            t.iter()
                .map(|row| row.iter().map(|x| carrier.lookup(x)).collect())
                .collect()
        };
        let add = table(&self.add, "add")?;
        let mul = table(&self.mul, "mul")?;
        let zero = carrier.lookup(self.zero.as_ref().ok_or_else(|| missing("zero"))?)?;
        let one = carrier.lookup(self.one.as_ref().ok_or_else(|| missing("one"))?)?;
        FiniteRing::new(carrier, add, mul, zero, one)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub nodes: Vec<String>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
}

impl GraphDoc {
    pub fn graph(&self) -> Result<Graph> {
        Graph::from_names(Universe::new(&self.nodes)?, &self.edges)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphPairDoc {
    pub left: GraphDoc,
    pub right: GraphDoc,
    /// Optional pair of nodes to test for bisimilarity.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub query: Option<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PosetDoc {
    pub elements: Vec<String>,
    /// Pairs `[a, b]` with `a ≤ b`; closed reflexively and transitively.
    #[serde(default)]
    pub order: Vec<(String, String)>,
}

impl PosetDoc {
    pub fn poset(&self) -> Result<Poset> {
        let elements = Universe::new(&self.elements)?;
        let pairs = named_pairs(&elements, &self.order)?;
        Poset::generated_by(elements, pairs)
    }
}

fn named_pairs(u: &Universe, pairs: &[(String, String)]) -> Result<Vec<(usize, usize)>> {
    pairs.iter().map(|(a, b)| Ok((u.lookup(a)?, u.lookup(b)?))).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpaceDoc {
    pub basics: Vec<String>,
    /// Pairs `[p, q]` with `p ≤ q`; closed reflexively and transitively.
    #[serde(default)]
    pub order: Vec<(String, String)>,
    /// Basic covers of each basic; basics not listed have none.
    #[serde(default)]
    pub covers: BTreeMap<String, Vec<Vec<String>>>,
}

impl SpaceDoc {
    pub fn space(&self) -> Result<FormalSpace> {
        let basics = Universe::new(&self.basics)?;
        let order = named_pairs(&basics, &self.order)?;
        let mut bcov = vec![Vec::new(); basics.len()];
        for (p, covers) in &self.covers {
            let p = basics.lookup(p)?;
            for s in covers {
                bcov[p].push(basics.subset(s)?);
            }
        }
        FormalSpace::generated(basics, order, bcov)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpacePairDoc {
    pub source: SpaceDoc,
    pub target: SpaceDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateDoc {
    pub name: String,
    pub label: String,
    /// Child along each edge leaving the label.
    #[serde(default)]
    pub children: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoalgebraDoc {
    pub labels: Vec<String>,
    /// Pairs `[edge, label]`: the edge leaves the label.
    #[serde(default)]
    pub edges: Vec<(String, String)>,
    pub states: Vec<StateDoc>,
    /// State to unfold; all states when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state: Option<String>,
    /// Second state, compared with `state` for tree equality.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub other: Option<String>,
}

impl CoalgebraDoc {
    pub fn coalgebra(&self) -> Result<Coalgebra> {
        let labels = Universe::new(&self.labels)?;
        let edges = Universe::new(self.edges.iter().map(|(b, _)| b))?;
        let fiber = self
            .edges
            .iter()
            .map(|(_, a)| labels.lookup(a))
            .collect::<Result<Vec<_>>>()?;
        let sig = Signature::new(labels, edges, fiber)?;
        let states = Universe::new(self.states.iter().map(|s| &s.name))?;
        let step = self
            .states
            .iter()
            .map(|s| {
                let children = s
                    .children
                    .iter()
                    .map(|(b, x)| Ok((sig.edges().lookup(b)?, states.lookup(x)?)))
                    .collect::<Result<BTreeMap<_, _>>>()?;
                Ok((sig.labels().lookup(&s.label)?, children))
            })
            .collect::<Result<Vec<_>>>()?;
        Coalgebra::new(sig, states, step)
    }
}

/// A formula as text in the sequent grammar, or as a tree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FormulaDoc {
    Text(String),
    Atom { atom: String },
    And { and: Vec<FormulaDoc> },
    Or { or: Vec<FormulaDoc> },
}

impl FormulaDoc {
    pub fn formula(&self) -> Result<GameFormula> {
        Ok(match self {
            Self::Text(t) => parse_formula(t)?,
            Self::Atom { atom } => GameFormula::Atom(atom.clone()),
            Self::And { and } => GameFormula::Conj(and.iter().map(Self::formula).collect::<Result<_>>()?),
            Self::Or { or } => GameFormula::Disj(or.iter().map(Self::formula).collect::<Result<_>>()?),
        })
    }
}

/// A sequent as a line of text, or as its two sides.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SequentDoc {
    Text(String),
    Sides {
        #[serde(default = "top_doc")]
        hypothesis: FormulaDoc,
        conclusion: FormulaDoc,
    },
}

fn top_doc() -> FormulaDoc {
    FormulaDoc::And { and: Vec::new() }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoryDoc {
    /// Declared letters; inferred from the sequents when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub letters: Option<Vec<String>>,
    pub sequents: Vec<SequentDoc>,
}

impl TheoryDoc {
    pub fn theory(&self) -> Result<GameTheory> {
        let mut sequents = Vec::new();
        for s in &self.sequents {
            match s {
                SequentDoc::Text(t) => {
                    let parsed = parse_theory(t)?;
                    sequents.extend(parsed.sequents().iter().cloned());
                }
                SequentDoc::Sides {
                    hypothesis,
                    conclusion,
                } => sequents.push(GameSequent::new(hypothesis.formula()?, conclusion.formula()?)),
            }
        }
        match &self.letters {
            Some(names) => GameTheory::new(Universe::new(names)?, sequents),
            None => Ok(GameTheory::inferred(sequents)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoryTextDoc {
    pub text: String,
}

impl TheoryTextDoc {
    pub fn theory(&self) -> Result<GameTheory> {
        parse_theory(&self.text)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClauseDoc {
    #[serde(default)]
    pub sigma: Vec<String>,
    #[serde(default)]
    pub gamma: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SgaDoc {
    pub base: Vec<String>,
    #[serde(default)]
    pub clauses: Vec<ClauseDoc>,
}

impl SgaDoc {
    pub fn instance(&self) -> Result<SgaInstance> {
        let base = Universe::new(&self.base)?;
        let clauses = self
            .clauses
            .iter()
            .map(|c| {
                Ok(SgaClause {
                    sigma: base.subset(&c.sigma)?,
                    gamma: c.gamma.iter().map(|u| base.subset(u)).collect::<Result<_>>()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        SgaInstance::new(base, clauses)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FullnessDoc {
    pub a_size: usize,
    pub b_size: usize,
}
