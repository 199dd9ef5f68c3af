use std::collections::BTreeSet;

use crate::closure::greatest_closed;
use crate::rules::{Rule, RuleSystem};
use crate::subset::{Subset, Universe};
use crate::{Error, Limits, Result};

/// A finite directed graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    nodes: Universe,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(nodes: Universe, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let n = nodes.len();
        let edges: BTreeSet<_> = edges.into_iter().collect();
        if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= n || b >= n) {
            return Err(Error::InvalidGraph(format!("edge ({a}, {b}) leaves the node set")));
        }
        Ok(Self { nodes, edges })
    }

    pub fn from_names<S: AsRef<str>>(nodes: Universe, edges: &[(S, S)]) -> Result<Self> {
        let edges = edges
            .iter()
            .map(|(a, b)| Ok((nodes.lookup(a.as_ref())?, nodes.lookup(b.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(nodes, edges)
    }

    pub fn nodes(&self) -> &Universe {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a, b))
    }

    pub fn successors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.range((a, 0)..(a + 1, 0)).map(|&(_, b)| b)
    }
}

/// Universe `A × B` with pair `(a, b)` at index `a·|B| + b`.
pub fn pair_universe(left: &Universe, right: &Universe) -> Result<Universe> {
    Universe::new(
        left.names()
            .iter()
            .flat_map(|a| right.names().iter().map(move |b| format!("({a},{b})"))),
    )
}

/// Rules on `A × B` whose closed sets are exactly the bisimulations:
/// `{(a,b)} ⊢ {(a',b') : b S b'}` for every edge `a R a'`, and symmetrically.
pub fn bisimulation_rules(left: &Graph, right: &Graph, limits: Limits) -> Result<RuleSystem> {
    let (n, m) = (left.len(), right.len());
    limits.check(n * m)?;
    let universe = pair_universe(left.nodes(), right.nodes())?;
    let idx = |a: usize, b: usize| a * m + b;
    let mut rules = Vec::new();
    for a in 0..n {
        for b in 0..m {
            let premise = Subset::from_indices(n * m, [idx(a, b)]);
            for a2 in left.successors(a) {
                let conclusion = Subset::from_indices(n * m, right.successors(b).map(|b2| idx(a2, b2)));
                rules.push(Rule::new(premise.clone(), conclusion));
            }
            for b2 in right.successors(b) {
                let conclusion = Subset::from_indices(n * m, left.successors(a).map(|a2| idx(a2, b2)));
                rules.push(Rule::new(premise.clone(), conclusion));
            }
        }
    }
    RuleSystem::new(universe, rules)
}

/// The largest bisimulation, as the greatest closed set of the
/// bisimulation rules.
pub fn largest_bisimulation(left: &Graph, right: &Graph) -> Result<Subset> {
    let rules = bisimulation_rules(left, right, Limits::with_max_universe(usize::MAX))?;
    greatest_closed(&rules)
}

/// Whether some bisimulation relates `a` and `b`.
pub fn bisimilar(left: &Graph, right: &Graph, a: usize, b: usize) -> Result<bool> {
    if a >= left.len() || b >= right.len() {
        return Err(Error::InvalidGraph(format!("no node pair ({a}, {b})")));
    }
    Ok(largest_bisimulation(left, right)?.contains(a * right.len() + b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::enumerate_closed;

    fn loop_graph(name: &str) -> Graph {
        Graph::from_names(Universe::new([name]).unwrap(), &[(name, name)]).unwrap()
    }

    fn point(name: &str) -> Graph {
        Graph::new(Universe::new([name]).unwrap(), []).unwrap()
    }

    #[test]
    fn loops_are_bisimilar() {
        let (g1, g2) = (loop_graph("x"), loop_graph("y"));
        let r = bisimulation_rules(&g1, &g2, Limits::default()).unwrap();
        assert_eq!(
            enumerate_closed(&r, Limits::default()).unwrap().render(r.universe()),
            vec![vec![], vec!["(x,y)"]]
        );
        assert!(bisimilar(&g1, &g2, 0, 0).unwrap());
    }

    #[test]
    fn loop_and_point_are_not() {
        let (g1, g2) = (loop_graph("x"), point("y"));
        let r = bisimulation_rules(&g1, &g2, Limits::default()).unwrap();
        assert_eq!(enumerate_closed(&r, Limits::default()).unwrap().len(), 1);
        assert!(!bisimilar(&g1, &g2, 0, 0).unwrap());
    }

    #[test]
    fn edgeless_nodes_allow_everything() {
        let r = bisimulation_rules(&point("x"), &point("y"), Limits::default()).unwrap();
        assert!(r.rules().is_empty());
        assert_eq!(enumerate_closed(&r, Limits::default()).unwrap().len(), 2);
    }

    #[test]
    fn identity_is_a_bisimulation() {
        let u = Universe::new(["a", "b", "c"]).unwrap();
        let g = Graph::from_names(u, &[("a", "b"), ("b", "c"), ("c", "a"), ("a", "c")]).unwrap();
        for a in 0..3 {
            assert!(bisimilar(&g, &g, a, a).unwrap());
        }
    }

    #[test]
    fn edges_must_stay_inside() {
        assert!(Graph::new(Universe::numbered(2), [(0, 2)]).is_err());
    }
}
