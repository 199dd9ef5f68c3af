use std::collections::{BTreeMap, BTreeSet};

use super::first_order::{
    Expansion, ExpansionSpace, FoFormula, FoModel, FoSequent, FoSignature, FoTheory, RelationSymbol,
};
use crate::subset::Universe;
use crate::{Error, Limits, Result};

pub const ORDER: &str = "le";
pub const EQUIVALENCE: &str = "sim";
pub const LINEAR: &str = "lin";

/// A finite partial order, stored as its full relation matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    elements: Universe,
    le: Vec<bool>,
}

impl Poset {
    /// Checks that `pairs` is reflexive, antisymmetric and transitive.
    pub fn new(elements: Universe, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let n = elements.len();
        let mut le = vec![false; n * n];
        for (a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::NotPartialOrder(format!("pair ({a},{b}) out of range")));
            }
            le[a * n + b] = true;
        }
        let p = Self { elements, le };
        p.check()?;
        Ok(p)
    }

    /// The reflexive-transitive closure of `pairs`, which must be acyclic.
    pub fn generated_by(elements: Universe, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let n = elements.len();
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        for (a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::NotPartialOrder(format!("pair ({a},{b}) out of range")));
            }
            le[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if le[i * n + k] && le[k * n + j] {
                        le[i * n + j] = true;
                    }
                }
            }
        }
        let p = Self { elements, le };
        p.check()?;
        Ok(p)
    }

    pub fn antichain(n: usize) -> Self {
        Self::generated_by(Universe::numbered(n), []).expect("discrete order")
    }

    pub fn chain(n: usize) -> Self {
        Self::generated_by(Universe::numbered(n), (1..n).map(|i| (i - 1, i))).expect("chain")
    }

    fn check(&self) -> Result<()> {
        let n = self.size();
        for a in 0..n {
            if !self.le(a, a) {
                return Err(Error::NotPartialOrder(format!("not reflexive at {}", self.elements.name(a))));
            }
            for b in 0..n {
                if a != b && self.le(a, b) && self.le(b, a) {
                    return Err(Error::NotPartialOrder(format!(
                        "{} and {} are distinct but mutually below each other",
                        self.elements.name(a),
                        self.elements.name(b)
                    )));
                }
                for c in 0..n {
                    if self.le(a, b) && self.le(b, c) && !self.le(a, c) {
                        return Err(Error::NotPartialOrder("not transitive".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn elements(&self) -> &Universe {
        &self.elements
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.le[a * self.size() + b]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.size();
        (0..n).flat_map(move |a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| self.le(a, b))
    }
}

/// `∀ p q. ⊤ → p ⊴ q ∨ q ⊴ p`.
pub fn totality_sequent() -> FoSequent {
    FoSequent::new(
        &["p", "q"],
        FoFormula::top(),
        FoFormula::Disj(vec![
            FoFormula::atom(LINEAR, &["p", "q"]),
            FoFormula::atom(LINEAR, &["q", "p"]),
        ]),
    )
}

/// The order `le` as base relation, an equivalence `sim` and a preorder `lin`
/// as added relations, and eight sequents making `lin` a preorder extending
/// `le` whose symmetric part is `sim`.
pub fn linear_order_theory(poset: &Poset) -> (FoSignature, FoModel, FoTheory) {
    let sig = FoSignature::new(
        vec![RelationSymbol::new(ORDER, 2)],
        vec![RelationSymbol::new(EQUIVALENCE, 2), RelationSymbol::new(LINEAR, 2)],
    )
    .expect("distinct relation names");
    let tables = BTreeMap::from([(
        ORDER.to_owned(),
        poset.pairs().map(|(a, b)| vec![a, b]).collect::<BTreeSet<_>>(),
    )]);
    let model = FoModel::new(poset.elements().clone(), tables);

    let sim = |a, b| FoFormula::atom(EQUIVALENCE, &[a, b]);
    let lin = |a, b| FoFormula::atom(LINEAR, &[a, b]);
    let and = FoFormula::Conj;
    let sequents = vec![
        FoSequent::new(&["p"], FoFormula::top(), sim("p", "p")),
        FoSequent::new(&["p", "q"], sim("p", "q"), sim("q", "p")),
        FoSequent::new(&["p", "q", "r"], and(vec![sim("p", "q"), sim("q", "r")]), sim("p", "r")),
        FoSequent::new(&["p", "q"], FoFormula::atom(ORDER, &["p", "q"]), lin("p", "q")),
        FoSequent::new(&["p"], FoFormula::top(), lin("p", "p")),
        FoSequent::new(&["p", "q"], and(vec![lin("p", "q"), lin("q", "p")]), sim("p", "q")),
        FoSequent::new(&["p", "q", "r"], and(vec![lin("p", "q"), lin("q", "r")]), lin("p", "r")),
        FoSequent::new(
            &["p", "q", "p'", "q'"],
            and(vec![sim("p", "p'"), sim("q", "q'"), lin("p", "q")]),
            lin("p'", "q'"),
        ),
    ];
    (sig, model, FoTheory { sequents })
}

fn is_equality(e: &Expansion, n: usize) -> bool {
    (0..n).all(|a| (0..n).all(|b| e.holds(EQUIVALENCE, &[a, b]) == (a == b)))
}

fn is_total(e: &Expansion, n: usize) -> bool {
    (0..n).all(|a| (0..n).all(|b| e.holds(LINEAR, &[a, b]) || e.holds(LINEAR, &[b, a])))
}

/// A linear order as the list of elements from least to greatest.
fn as_sequence(e: &Expansion, n: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&a| (0..n).filter(|&b| e.holds(LINEAR, &[b, a])).count());
    order
}

/// Counts gathered while reading linear extensions off expansions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearityReport {
    pub expansions: usize,
    pub minimal_expansions: usize,
    /// Minimal expansions whose `sim` is equality.
    pub minimal_with_equality: usize,
    /// Of those, the ones whose `lin` is total.
    pub minimal_with_equality_total: usize,
    /// Expansions with `sim` equality and total `lin`, minimal among themselves.
    pub linear_extensions: Vec<Vec<usize>>,
}

/// Linear extensions of `poset` read off the expansions of the eight-sequent
/// theory: keep those with `sim` equal to equality and total `lin`, then take
/// the minimal ones.
pub fn linear_extensions(poset: &Poset, limits: Limits) -> Result<LinearityReport> {
    let (sig, model, theory) = linear_order_theory(poset);
    let space = ExpansionSpace::new(&sig, &model, &theory)?;
    let n = poset.size();
    let family = space.family(limits)?;
    let minimal: Vec<Expansion> = family.minimal().iter().map(|x| space.decode(x)).collect();
    let with_equality: Vec<&Expansion> = minimal.iter().filter(|e| is_equality(e, n)).collect();
    let filtered = family.filter(|x| {
        let e = space.decode(x);
        is_equality(&e, n) && is_total(&e, n)
    });
    Ok(LinearityReport {
        expansions: family.len(),
        minimal_expansions: minimal.len(),
        minimal_with_equality: with_equality.len(),
        minimal_with_equality_total: with_equality.iter().filter(|e| is_total(e, n)).count(),
        linear_extensions: filtered.minimal().iter().map(|x| as_sequence(&space.decode(x), n)).collect(),
    })
}

/// Minimal expansions of the theory extended by [`totality_sequent`]; these
/// are the linear extensions, each with `sim` equal to equality.
pub fn linear_extensions_with_totality(poset: &Poset, limits: Limits) -> Result<Vec<Vec<usize>>> {
    let (sig, model, mut theory) = linear_order_theory(poset);
    theory.sequents.push(totality_sequent());
    let space = ExpansionSpace::new(&sig, &model, &theory)?;
    let n = poset.size();
    Ok(space
        .minimal_expansions(limits)?
        .iter()
        .filter(|e| is_equality(e, n) && is_total(e, n))
        .map(|e| as_sequence(e, n))
        .collect())
}
