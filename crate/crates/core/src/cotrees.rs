//! Trees over a branching signature `f: B → A`: truncated M-type elements as
//! sets of paths, unfolding of coalgebras, and well-founded states.

use std::collections::{BTreeMap, BTreeSet};

use crate::closure::lfp;
use crate::rules::{Rule, RuleSystem};
use crate::subset::{Subset, Universe};
use crate::{Error, Result};

/// Labels `A`, edge names `B`, and the map sending each edge to the label it
/// leaves from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    labels: Universe,
    edges: Universe,
    fiber: Vec<usize>,
}

impl Signature {
    pub fn new(labels: Universe, edges: Universe, fiber: Vec<usize>) -> Result<Self> {
        if fiber.len() != edges.len() {
            return Err(Error::InvalidCoalgebra(format!(
                "fiber map has {} entries for {} edges",
                fiber.len(),
                edges.len()
            )));
        }
        if let Some(b) = fiber.iter().position(|&a| a >= labels.len()) {
            return Err(Error::InvalidCoalgebra(format!("edge {} maps outside the labels", edges.name(b))));
        }
        Ok(Self {
            labels,
            edges,
            fiber,
        })
    }

    pub fn labels(&self) -> &Universe {
        &self.labels
    }

    pub fn edges(&self) -> &Universe {
        &self.edges
    }

    /// The label edge `b` leaves from.
    pub fn source(&self, b: usize) -> usize {
        self.fiber[b]
    }

    /// Edges leaving label `a`, in edge order.
    pub fn fiber_of(&self, a: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&b| self.fiber[b] == a).collect()
    }
}

/// `⟨a0, b0, a1, …, an⟩`, stored as its labels and the edges between them.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub labels: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Path {
    pub fn root(a: usize) -> Self {
        Self {
            labels: vec![a],
            edges: Vec::new(),
        }
    }

    /// Number of edges.
    pub fn steps(&self) -> usize {
        self.edges.len()
    }

    pub fn last_label(&self) -> usize {
        *self.labels.last().expect("paths are non-empty")
    }

    pub fn extended(&self, b: usize, a: usize) -> Self {
        let mut p = self.clone();
        p.edges.push(b);
        p.labels.push(a);
        p
    }

    pub fn parent(&self) -> Option<Self> {
        (self.steps() > 0).then(|| Self {
            labels: self.labels[..self.labels.len() - 1].to_vec(),
            edges: self.edges[..self.edges.len() - 1].to_vec(),
        })
    }

    pub fn render(&self, sig: &Signature) -> Vec<String> {
        let mut out = vec![sig.labels.name(self.labels[0]).to_owned()];
        for (b, a) in self.edges.iter().zip(&self.labels[1..]) {
            out.push(sig.edges.name(*b).to_owned());
            out.push(sig.labels.name(*a).to_owned());
        }
        out
    }

    fn check(&self, sig: &Signature) -> Result<()> {
        if self.labels.len() != self.edges.len() + 1 {
            return Err(Error::MalformedPath("labels and edges do not alternate".into()));
        }
        if let Some(&a) = self.labels.iter().find(|&&a| a >= sig.labels.len()) {
            return Err(Error::MalformedPath(format!("unknown label index {a}")));
        }
        for (i, &b) in self.edges.iter().enumerate() {
            if b >= sig.edges.len() {
                return Err(Error::MalformedPath(format!("unknown edge index {b}")));
            }
            if sig.fiber[b] != self.labels[i] {
                return Err(Error::MalformedPath(format!(
                    "edge {} does not leave label {}",
                    sig.edges.name(b),
                    sig.labels.name(self.labels[i])
                )));
            }
        }
        Ok(())
    }
}

/// A tree truncated after `depth` edges, as its set of paths from the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSet {
    pub paths: BTreeSet<Path>,
    pub depth: usize,
}

impl PathSet {
    pub fn new(paths: impl IntoIterator<Item = Path>, depth: usize) -> Self {
        Self {
            paths: paths.into_iter().collect(),
            depth,
        }
    }

    pub fn roots(&self) -> impl Iterator<Item = &Path> {
        self.paths.iter().filter(|p| p.steps() == 0)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that `m` has a unique root, that every path shorter than the depth
/// extends uniquely along each edge of its last label, and that it is closed
/// under initial segments. Paths that break the signature are an error rather
/// than a violation.
pub fn validate_mtype_element(sig: &Signature, m: &PathSet) -> Result<ValidationReport> {
    for p in &m.paths {
        p.check(sig)?;
    }
    let mut violations = Vec::new();
    let roots = m.roots().count();
    if roots != 1 {
        violations.push(format!("expected exactly one root, found {roots}"));
    }
    for p in &m.paths {
        if p.steps() > m.depth {
            violations.push(format!("path {:?} is deeper than {}", p.render(sig), m.depth));
            continue;
        }
        if let Some(parent) = p.parent() {
            if !m.paths.contains(&parent) {
                violations.push(format!("path {:?} is missing its initial segment", p.render(sig)));
            }
        }
        if p.steps() < m.depth {
            for b in sig.fiber_of(p.last_label()) {
                let n = (0..sig.labels.len())
                    .filter(|&a| m.paths.contains(&p.extended(b, a)))
                    .count();
                if n != 1 {
                    violations.push(format!(
                        "path {:?} has {n} extensions along {}",
                        p.render(sig),
                        sig.edges.name(b)
                    ));
                }
            }
        }
    }
    Ok(ValidationReport { violations })
}

/// States with a label each and, for every edge leaving that label, a child.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coalgebra {
    sig: Signature,
    states: Universe,
    label: Vec<usize>,
    children: Vec<BTreeMap<usize, usize>>,
}

impl Coalgebra {
    /// `step[x] = (label, edge ↦ child)`; the edges must be exactly those
    /// leaving the label.
    pub fn new(sig: Signature, states: Universe, step: Vec<(usize, BTreeMap<usize, usize>)>) -> Result<Self> {
        if step.len() != states.len() {
            return Err(Error::InvalidCoalgebra(format!(
                "{} steps for {} states",
                step.len(),
                states.len()
            )));
        }
        let mut label = Vec::with_capacity(step.len());
        let mut children = Vec::with_capacity(step.len());
        for (x, (a, kids)) in step.into_iter().enumerate() {
            if a >= sig.labels.len() {
                return Err(Error::InvalidCoalgebra(format!("state {} has an unknown label", states.name(x))));
            }
            let expected = sig.fiber_of(a);
            if kids.keys().copied().collect::<Vec<_>>() != expected {
                return Err(Error::InvalidCoalgebra(format!(
                    "children of {} must be indexed by the edges leaving {}",
                    states.name(x),
                    sig.labels.name(a)
                )));
            }
            if kids.values().any(|&y| y >= states.len()) {
                return Err(Error::InvalidCoalgebra(format!("state {} has an unknown child", states.name(x))));
            }
            label.push(a);
            children.push(kids);
        }
        Ok(Self {
            sig,
            states,
            label,
            children,
        })
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn states(&self) -> &Universe {
        &self.states
    }

    pub fn label(&self, x: usize) -> usize {
        self.label[x]
    }

    pub fn children(&self, x: usize) -> &BTreeMap<usize, usize> {
        &self.children[x]
    }

    /// Both coalgebras side by side; states of `other` are shifted by
    /// `self.states().len()` and names are prefixed with `0.` and `1.`.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self> {
        if self.sig != other.sig {
            return Err(Error::InvalidCoalgebra("signatures differ".into()));
        }
        let shift = self.states.len();
        let names = self
            .states
            .names()
            .iter()
            .map(|n| format!("0.{n}"))
            .chain(other.states.names().iter().map(|n| format!("1.{n}")));
        let step = (0..shift)
            .map(|x| (self.label[x], self.children[x].clone()))
            .chain((0..other.states.len()).map(|x| {
                let kids = other.children[x].iter().map(|(&b, &y)| (b, y + shift)).collect();
                (other.label[x], kids)
            }))
            .collect();
        Self::new(self.sig.clone(), Universe::new(names)?, step)
    }
}

/// Every path of at most `depth` edges traced from `x`.
pub fn unfold(coalg: &Coalgebra, x: usize, depth: usize) -> PathSet {
    let mut paths = BTreeSet::new();
    let mut stack = vec![(Path::root(coalg.label[x]), x)];
    while let Some((p, y)) = stack.pop() {
        if p.steps() < depth {
            for (&b, &z) in &coalg.children[y] {
                stack.push((p.extended(b, coalg.label[z]), z));
            }
        }
        paths.insert(p);
    }
    PathSet { paths, depth }
}

/// Root label and, for each edge leaving it, the subtree `{σ : ⟨a,b⟩·σ ∈ m}`
/// one level shallower.
pub fn root_and_subtrees(sig: &Signature, m: &PathSet) -> Result<(usize, BTreeMap<usize, PathSet>)> {
    let report = validate_mtype_element(sig, m)?;
    if !report.is_valid() {
        return Err(Error::InvalidPathSet(report.violations.join("; ")));
    }
    let root = m.roots().next().expect("validated").labels[0];
    let fiber = sig.fiber_of(root);
    if m.depth == 0 {
        if fiber.is_empty() {
            return Ok((root, BTreeMap::new()));
        }
        return Err(Error::InvalidPathSet("depth 0 has no subtrees".into()));
    }
    let subtrees = fiber
        .into_iter()
        .map(|b| {
            let paths = m
                .paths
                .iter()
                .filter(|p| p.steps() >= 1 && p.edges[0] == b)
                .map(|p| Path {
                    labels: p.labels[1..].to_vec(),
                    edges: p.edges[1..].to_vec(),
                });
            (b, PathSet::new(paths, m.depth - 1))
        })
        .collect();
    Ok((root, subtrees))
}

/// Least set of states containing every state all of whose children it
/// contains, as the least fixed point of `{children(x)} ⊢ {x}`.
pub fn wellfounded_states(coalg: &Coalgebra) -> Subset {
    let n = coalg.states.len();
    let rules = (0..n).map(|x| {
        Rule::new(
            Subset::from_indices(n, coalg.children[x].values().copied()),
            Subset::from_indices(n, [x]),
        )
    });
    let system = RuleSystem::new(coalg.states.clone(), rules).expect("rules over the states");
    lfp(&system, &Subset::empty(n)).expect("rules are deterministic")
}

/// Equality of the trees denoted by two states, compared by unfolding to a
/// depth of the number of states.
pub fn mtype_equal(coalg: &Coalgebra, x: usize, y: usize) -> bool {
    let d = coalg.states.len();
    unfold(coalg, x, d) == unfold(coalg, y, d)
}
