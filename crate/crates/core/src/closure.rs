//! Closed sets of rule systems: enumeration, minimal and full families,
//! generating families and deterministic least fixed points.

use crate::rules::{RuleSystem, StarMode};
use crate::subset::{Subset, SubsetFamily};
use crate::{Error, Limits, Result};

/// `true` iff `y` is closed under every rule of `r`.
pub fn is_closed(r: &RuleSystem, y: &Subset) -> Result<bool> {
    r.check_subset(y)?;
    Ok(r.rules().iter().all(|rule| rule.is_satisfied_by(y)))
}

/// All closed subsets of `r`, in canonical order.
pub fn enumerate_closed(r: &RuleSystem, limits: Limits) -> Result<SubsetFamily> {
    limits.check(r.size())?;
    let mut found = Vec::new();
    Search::new(r).run(&Subset::empty(r.size()), &mut |s| found.push(s));
    SubsetFamily::new(r.size(), found)
}

/// Enumeration without the universe cap, for encodings whose search only
/// branches on a bounded prefix of the universe.
pub(crate) fn closed_sets_unbounded(r: &RuleSystem) -> SubsetFamily {
    let mut found = Vec::new();
    Search::new(r).run(&Subset::empty(r.size()), &mut |s| found.push(s));
    SubsetFamily::new(r.size(), found).expect("search stays in the universe")
}

pub fn minimal_closed(r: &RuleSystem, limits: Limits) -> Result<SubsetFamily> {
    minimal_closed_supersets(r, &Subset::empty(r.size()), limits)
}

pub fn maximal_closed(r: &RuleSystem, limits: Limits) -> Result<SubsetFamily> {
    Ok(enumerate_closed(r, limits)?.maximal())
}

/// Inclusion-minimal closed sets containing `seed`.
pub fn minimal_closed_supersets(
    r: &RuleSystem,
    seed: &Subset,
    limits: Limits,
) -> Result<SubsetFamily> {
    limits.check(r.size())?;
    r.check_subset(seed)?;
    let mut found = Vec::new();
    Search::new(r).run(seed, &mut |s| found.push(s));
    Ok(SubsetFamily::new(r.size(), found)?.minimal())
}

/// The family obtained by adjoining a fresh element `*`, taking the least
/// generating family of the extension and keeping the members containing `*`
/// with `*` removed. Every closed set contains one of its members, and its
/// minimal members are exactly the minimal closed sets.
pub fn refining_family(r: &RuleSystem, limits: Limits) -> Result<SubsetFamily> {
    limits.check(r.size())?;
    let starred = r.star_extend(StarMode::Plain)?;
    let star = starred.size() - 1;
    let generators =
        least_generating_family(&starred, Limits::with_max_universe(limits.max_universe + 1))?;
    SubsetFamily::new(
        r.size(),
        generators
            .iter()
            .filter(|g| g.contains(star))
            .map(|g| g.resized(r.size())),
    )
}

/// A family of closed sets that is full in both directions: every closed set
/// contains some member and is contained in some member.
///
/// Consists of [`refining_family`] together with the inclusion-maximal closed
/// sets.
pub fn full_family(r: &RuleSystem, limits: Limits) -> Result<SubsetFamily> {
    let below = refining_family(r, limits)?;
    let above = maximal_closed(r, limits)?;
    Ok(below.union(&above))
}

/// The least generating family: for each element `x`, the inclusion-minimal
/// closed sets containing `x`.
///
/// Any generating family must contain every such set, so this one is
/// contained in all of them.
pub fn least_generating_family(r: &RuleSystem, limits: Limits) -> Result<SubsetFamily> {
    let closed = enumerate_closed(r, limits)?;
    Ok(least_generators_of(&closed))
}

pub(crate) fn least_generators_of(class: &SubsetFamily) -> SubsetFamily {
    let n = class.universe_len();
    let mut out = Vec::new();
    for x in 0..n {
        out.extend(class.filter(|c| c.contains(x)).minimal().iter().cloned());
    }
    SubsetFamily::new(n, out).expect("members share the universe")
}

/// `true` iff every closed `α` and every `x ∈ α` admit `β ∈ g` with
/// `x ∈ β ⊆ α`. Fails with [`Error::NotClosed`] when `g` has a non-closed member.
pub fn is_generating(r: &RuleSystem, g: &SubsetFamily, limits: Limits) -> Result<bool> {
    check_members_closed(r, g)?;
    Ok(generates(&enumerate_closed(r, limits)?, g))
}

/// `true` iff every closed `α` and every `σ ⊆ α` admit `β ∈ g` with
/// `σ ⊆ β ⊆ α`. Every subset of a finite set is finite, so `σ` ranges over
/// the whole powerset of `α`.
pub fn is_strongly_generating(r: &RuleSystem, g: &SubsetFamily, limits: Limits) -> Result<bool> {
    check_members_closed(r, g)?;
    Ok(strongly_generates(&enumerate_closed(r, limits)?, g))
}

fn check_members_closed(r: &RuleSystem, g: &SubsetFamily) -> Result<()> {
    if g.universe_len() != r.size() {
        return Err(Error::UniverseMismatch {
            expected: r.size(),
            found: g.universe_len(),
        });
    }
    for m in g {
        if !is_closed(r, m)? {
            return Err(Error::NotClosed(m.iter().collect()));
        }
    }
    Ok(())
}

/// Extensional form of generation: `class` is the union-closure target.
pub fn generates(class: &SubsetFamily, g: &SubsetFamily) -> bool {
    class.iter().all(|alpha| {
        let below: Vec<&Subset> = g.iter().filter(|b| b.is_subset(alpha)).collect();
        alpha.iter().all(|x| below.iter().any(|b| b.contains(x)))
    })
}

pub fn strongly_generates(class: &SubsetFamily, g: &SubsetFamily) -> bool {
    class.iter().all(|alpha| {
        let below: Vec<&Subset> = g.iter().filter(|b| b.is_subset(alpha)).collect();
        let elems: Vec<usize> = alpha.iter().collect();
        submasks(elems.len()).all(|pick| {
            let sigma = Subset::from_indices(
                alpha.universe_len(),
                elems
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| pick >> i & 1 == 1)
                    .map(|(_, &e)| e),
            );
            below.iter().any(|b| sigma.is_subset(b))
        })
    })
}

fn submasks(k: usize) -> impl Iterator<Item = u128> {
    assert!(k < 128, "powerset of {k} elements is out of reach");
    0..1u128 << k
}

/// Least closed superset of `seed` for a deterministic system, by firing
/// every applicable rule until nothing changes.
pub fn lfp(r: &RuleSystem, seed: &Subset) -> Result<Subset> {
    if !r.is_deterministic() {
        return Err(Error::NotDeterministic);
    }
    r.check_subset(seed)?;
    let mut current = seed.clone();
    loop {
        let mut next = current.clone();
        for rule in r.rules() {
            if rule.premise.is_subset(&current) {
                next = next.union(&rule.conclusion);
            }
        }
        if next == current {
            return Ok(current);
        }
        current = next;
    }
}

/// Largest closed set of an elementary system: start from the whole
/// universe and delete premises whose conclusions have been emptied.
///
/// Closed sets of an elementary system are closed under unions, so this is the
/// union of all of them.
pub fn greatest_closed(r: &RuleSystem) -> Result<Subset> {
    if !r.is_elementary() {
        return Err(Error::NotElementary);
    }
    let mut current = Subset::full(r.size());
    loop {
        let mut changed = false;
        for rule in r.rules() {
            if rule.premise.is_subset(&current) && !rule.conclusion.meets(&current) {
                current = current.difference(&rule.premise);
                changed = true;
            }
        }
        if !changed {
            return Ok(current);
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Value {
    Unknown,
    In,
    Out,
}

enum Check {
    Fine,
    Conflict,
    Force(usize, Value),
}

/// Backtracking enumeration of closed sets with rule propagation.
///
/// A rule whose premise is entirely in and whose conclusion has a single
/// undecided element forces that element in; a rule whose conclusion is
/// entirely out and whose premise has a single undecided element forces that
/// element out.
struct Search {
    premises: Vec<Vec<usize>>,
    conclusions: Vec<Vec<usize>>,
    occurs: Vec<Vec<usize>>,
    value: Vec<Value>,
    trail: Vec<usize>,
    queue: Vec<usize>,
    queued: Vec<bool>,
}

impl Search {
    fn new(r: &RuleSystem) -> Self {
        let n = r.size();
        let premises: Vec<Vec<usize>> = r.rules().iter().map(|x| x.premise.iter().collect()).collect();
        let conclusions: Vec<Vec<usize>> =
            r.rules().iter().map(|x| x.conclusion.iter().collect()).collect();
        let mut occurs = vec![Vec::new(); n];
        for (i, (p, c)) in premises.iter().zip(&conclusions).enumerate() {
            for &e in p.iter().chain(c) {
                if occurs[e].last() != Some(&i) {
                    occurs[e].push(i);
                }
            }
        }
        let rules = premises.len();
        Self {
            premises,
            conclusions,
            occurs,
            value: vec![Value::Unknown; n],
            trail: Vec::new(),
            queue: Vec::new(),
            queued: vec![false; rules],
        }
    }

    fn run(&mut self, seed: &Subset, visit: &mut dyn FnMut(Subset)) {
        for e in seed.iter() {
            self.assign(e, Value::In);
        }
        for i in 0..self.premises.len() {
            self.enqueue(i);
        }
        if self.propagate() {
            self.branch(visit);
        }
    }

    fn branch(&mut self, visit: &mut dyn FnMut(Subset)) {
        let Some(e) = self.value.iter().position(|&v| v == Value::Unknown) else {
            let n = self.value.len();
            visit(Subset::from_indices(
                n,
                (0..n).filter(|&i| self.value[i] == Value::In),
            ));
            return;
        };
        for v in [Value::Out, Value::In] {
            let mark = self.trail.len();
            self.assign(e, v);
            if self.propagate() {
                self.branch(visit);
            }
            self.undo(mark);
        }
    }

    fn assign(&mut self, e: usize, v: Value) {
        debug_assert!(self.value[e] == Value::Unknown);
        self.value[e] = v;
        self.trail.push(e);
        for k in 0..self.occurs[e].len() {
            let rule = self.occurs[e][k];
            self.enqueue(rule);
        }
    }

    fn enqueue(&mut self, rule: usize) {
        if !self.queued[rule] {
            self.queued[rule] = true;
            self.queue.push(rule);
        }
    }

    fn undo(&mut self, mark: usize) {
        for e in self.trail.drain(mark..) {
            self.value[e] = Value::Unknown;
        }
    }

    fn propagate(&mut self) -> bool {
        while let Some(rule) = self.queue.pop() {
            self.queued[rule] = false;
            match self.check(rule) {
                Check::Fine => {}
                Check::Conflict => {
                    for r in self.queue.drain(..) {
                        self.queued[r] = false;
                    }
                    return false;
                }
                Check::Force(e, v) => self.assign(e, v),
            }
        }
        true
    }

    fn check(&self, rule: usize) -> Check {
        let mut open_premise = None;
        let mut open_premise_count = 0;
        for &e in &self.premises[rule] {
            match self.value[e] {
                Value::Out => return Check::Fine,
                Value::Unknown => {
                    open_premise = Some(e);
                    open_premise_count += 1;
                }
                Value::In => {}
            }
        }
        let mut open_conclusion = None;
        let mut open_conclusion_count = 0;
        for &e in &self.conclusions[rule] {
            match self.value[e] {
                Value::In => return Check::Fine,
                Value::Unknown => {
                    open_conclusion = Some(e);
                    open_conclusion_count += 1;
                }
                Value::Out => {}
            }
        }
        match (open_premise_count, open_conclusion_count) {
            (0, 0) => Check::Conflict,
            (0, 1) => Check::Force(open_conclusion.unwrap(), Value::In),
            (1, 0) => Check::Force(open_premise.unwrap(), Value::Out),
            _ => Check::Fine,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::fixtures::{r1, r2};
    use crate::rules::Rule;
    use crate::subset::{all_subsets, Universe};
    use proptest::prelude::*;

    fn names(r: &RuleSystem, fam: &SubsetFamily) -> Vec<Vec<String>> {
        fam.render(r.universe())
    }

    fn lim() -> Limits {
        Limits::default()
    }

    /// Filter of the whole powerset by the closure condition, written out
    /// directly against the rule list.
    fn powerset_closed(r: &RuleSystem) -> SubsetFamily {
        let fam: Vec<Subset> = all_subsets(r.size())
            .filter(|y| {
                r.rules()
                    .iter()
                    .all(|rule| !rule.premise.is_subset(y) || rule.conclusion.meets(y))
            })
            .collect();
        SubsetFamily::new(r.size(), fam).unwrap()
    }

    #[test]
    fn is_closed_examples() {
        let r = r1();
        let u = r.universe().clone();
        assert!(is_closed(&r, &u.subset(["2"]).unwrap()).unwrap());
        assert!(!is_closed(&r, &u.subset(["1"]).unwrap()).unwrap());
        let empty = RuleSystem::new(Universe::new(["x", "y"]).unwrap(), []).unwrap();
        for y in all_subsets(2) {
            assert!(is_closed(&empty, &y).unwrap());
        }
        assert!(matches!(
            is_closed(&r, &Subset::empty(3)),
            Err(Error::UniverseMismatch { .. })
        ));
    }

    #[test]
    fn enumerate_closed_examples() {
        let r = r1();
        assert_eq!(
            names(&r, &enumerate_closed(&r, lim()).unwrap()),
            vec![vec![], vec!["2"], vec!["1", "2"]]
        );
        let r = r2();
        let closed = enumerate_closed(&r, lim()).unwrap();
        assert_eq!(closed.len(), 6);
        assert!(closed.iter().all(|s| s.contains(0) || s.contains(1)));
        let r = RuleSystem::new(Universe::new(["1"]).unwrap(), []).unwrap();
        assert_eq!(
            names(&r, &enumerate_closed(&r, lim()).unwrap()),
            vec![vec![], vec!["1"]]
        );
    }

    #[test]
    fn cap_is_enforced() {
        let r = RuleSystem::new(Universe::numbered(25), []).unwrap();
        assert_eq!(
            enumerate_closed(&r, lim()).unwrap_err(),
            Error::CapExceeded { size: 25, cap: 24 }
        );
    }

    #[test]
    fn rule_with_nothing_on_either_side_forbids_everything() {
        let u = Universe::new(["x"]).unwrap();
        let r = RuleSystem::new(u, [Rule::new(Subset::empty(1), Subset::empty(1))]).unwrap();
        assert!(enumerate_closed(&r, lim()).unwrap().is_empty());
    }

    #[test]
    fn minimal_closed_examples() {
        assert_eq!(names(&r1(), &minimal_closed(&r1(), lim()).unwrap()), vec![Vec::<String>::new()]);
        assert_eq!(
            names(&r2(), &minimal_closed(&r2(), lim()).unwrap()),
            vec![vec!["a"], vec!["b"]]
        );
    }

    #[test]
    fn minimal_closed_supersets_examples() {
        let r = r2();
        let seed = r.universe().subset(["c"]).unwrap();
        assert_eq!(
            names(&r, &minimal_closed_supersets(&r, &seed, lim()).unwrap()),
            vec![vec!["a", "c"], vec!["b", "c"]]
        );
        let r = r1();
        let seed = r.universe().subset(["2"]).unwrap();
        assert_eq!(
            names(&r, &minimal_closed_supersets(&r, &seed, lim()).unwrap()),
            vec![vec!["2"]]
        );
    }

    #[test]
    fn full_family_examples() {
        let r = r1();
        let full = full_family(&r, lim()).unwrap();
        let top = r.universe().subset(["1", "2"]).unwrap();
        assert!(full.contains(&top));
        let closed = enumerate_closed(&r, lim()).unwrap();
        assert!(closed.iter().all(|c| c.is_subset(&top)));

        let r = r2();
        assert!(full_family(&r, lim())
            .unwrap()
            .contains(&Subset::full(3)));

        let u = Universe::new(["x"]).unwrap();
        let r = RuleSystem::from_names(u, [(vec!["x"], Vec::<&str>::new())]).unwrap();
        let full = full_family(&r, lim()).unwrap();
        assert_eq!(full.members(), &[Subset::empty(1)]);
    }

    #[test]
    fn refining_family_has_the_minimal_closed_sets_at_the_bottom() {
        for r in [r1(), r2()] {
            let fam = refining_family(&r, lim()).unwrap();
            assert_eq!(fam.minimal(), minimal_closed(&r, lim()).unwrap());
        }
    }

    #[test]
    fn least_generating_family_examples() {
        let r = r1();
        assert_eq!(
            names(&r, &least_generating_family(&r, lim()).unwrap()),
            vec![vec!["2"], vec!["1", "2"]]
        );
        let r = r2();
        assert_eq!(
            names(&r, &least_generating_family(&r, lim()).unwrap()),
            vec![vec!["a"], vec!["b"], vec!["a", "c"], vec!["b", "c"]]
        );
        let r = RuleSystem::new(Universe::new(["1"]).unwrap(), []).unwrap();
        assert_eq!(
            names(&r, &least_generating_family(&r, lim()).unwrap()),
            vec![vec!["1"]]
        );
    }

    #[test]
    fn generation_examples() {
        let r = r1();
        let u = r.universe().clone();
        let fam = |sets: &[&[&str]]| {
            SubsetFamily::new(2, sets.iter().map(|s| u.subset(s.iter()).unwrap())).unwrap()
        };
        assert!(is_generating(&r, &fam(&[&["2"], &["1", "2"]]), lim()).unwrap());
        assert!(!is_generating(&r, &fam(&[&["1", "2"]]), lim()).unwrap());
        let all = enumerate_closed(&r, lim()).unwrap();
        assert!(is_generating(&r, &all, lim()).unwrap());
        assert!(matches!(
            is_generating(&r, &fam(&[&["1"]]), lim()),
            Err(Error::NotClosed(_))
        ));

        assert!(is_strongly_generating(&r, &all, lim()).unwrap());
        assert!(!is_strongly_generating(&r, &fam(&[&["2"], &["1", "2"]]), lim()).unwrap());
        assert!(is_strongly_generating(&r, &fam(&[&[], &["2"], &["1", "2"]]), lim()).unwrap());
    }

    #[test]
    fn lfp_examples() {
        let u = Universe::new(["1", "2", "3"]).unwrap();
        let r = RuleSystem::from_names(u.clone(), [(vec!["1"], vec!["2"]), (vec!["2"], vec!["3"])]).unwrap();
        assert_eq!(lfp(&r, &u.subset(["1"]).unwrap()).unwrap(), Subset::full(3));
        assert_eq!(lfp(&r, &Subset::empty(3)).unwrap(), Subset::empty(3));
        assert_eq!(lfp(&r2(), &Subset::empty(3)).unwrap_err(), Error::NotDeterministic);
    }

    #[test]
    fn greatest_closed_needs_elementary_rules() {
        assert_eq!(greatest_closed(&r2()).unwrap_err(), Error::NotElementary);
        assert_eq!(greatest_closed(&r1()).unwrap(), Subset::full(2));
    }

    fn arb_system(max_n: usize, max_rules: usize) -> impl Strategy<Value = RuleSystem> {
        (0..=max_n).prop_flat_map(move |n| {
            let side = prop::collection::vec(0..n.max(1), 0..=3.min(n));
            prop::collection::vec((side.clone(), side), 0..=max_rules).prop_map(move |rules| {
                RuleSystem::new(
                    Universe::numbered(n),
                    rules.into_iter().map(|(p, c)| {
                        Rule::new(
                            Subset::from_indices(n, p.into_iter().filter(|&i| i < n)),
                            Subset::from_indices(n, c.into_iter().filter(|&i| i < n)),
                        )
                    }),
                )
                .unwrap()
            })
        })
    }

    fn arb_deterministic(max_n: usize) -> impl Strategy<Value = RuleSystem> {
        (1..=max_n).prop_flat_map(|n| {
            prop::collection::vec((prop::collection::vec(0..n, 0..=2), 0..n), 0..10).prop_map(
                move |rules| {
                    RuleSystem::new(
                        Universe::numbered(n),
                        rules.into_iter().map(|(p, c)| {
                            Rule::new(Subset::from_indices(n, p), Subset::from_indices(n, [c]))
                        }),
                    )
                    .unwrap()
                },
            )
        })
    }

    proptest! {
        #[test]
        fn enumeration_matches_powerset_filter(r in arb_system(10, 12)) {
            prop_assert_eq!(enumerate_closed(&r, lim()).unwrap(), powerset_closed(&r));
        }

        #[test]
        fn least_generators_are_least(r in arb_system(7, 8)) {
            let g = least_generating_family(&r, lim()).unwrap();
            prop_assert!(is_generating(&r, &g, lim()).unwrap());
            for b in &g {
                prop_assert!(!is_generating(&r, &g.without(b), lim()).unwrap());
            }
        }

        #[test]
        fn strong_generation_is_containment(r in arb_system(6, 8), drop in any::<u64>()) {
            let closed = enumerate_closed(&r, lim()).unwrap();
            let g = SubsetFamily::new(
                r.size(),
                closed.iter().enumerate().filter(|(i, _)| drop >> (i % 64) & 1 == 0).map(|(_, s)| s.clone()),
            ).unwrap();
            prop_assert_eq!(is_strongly_generating(&r, &g, lim()).unwrap(), closed.is_subfamily(&g));
        }

        #[test]
        fn full_family_is_full_both_ways(r in arb_system(7, 8)) {
            let closed = enumerate_closed(&r, lim()).unwrap();
            let full = full_family(&r, lim()).unwrap();
            prop_assert!(full.is_subfamily(&closed));
            for a in &closed {
                prop_assert!(full.iter().any(|f| a.is_subset(f)));
                prop_assert!(full.iter().any(|f| f.is_subset(a)));
            }
            prop_assert_eq!(refining_family(&r, lim()).unwrap().minimal(), minimal_closed(&r, lim()).unwrap());
        }

        #[test]
        fn star_extension_keeps_closed_sets(r in arb_system(6, 8)) {
            let starred = r.star_extend(StarMode::Plain).unwrap();
            let star = r.size();
            for a in &enumerate_closed(&r, lim()).unwrap() {
                let lifted = a.resized(starred.size()).with(star);
                prop_assert!(is_closed(&starred, &lifted).unwrap());
            }
        }

        #[test]
        fn adding_a_rule_never_adds_closed_sets(r in arb_system(6, 6), extra in arb_system(6, 1)) {
            if let Some(rule) = extra.rules().first().filter(|_| extra.size() == r.size()) {
                let bigger = r.with_rule(rule.clone()).unwrap();
                prop_assert!(enumerate_closed(&bigger, lim()).unwrap()
                    .is_subfamily(&enumerate_closed(&r, lim()).unwrap()));
            }
        }

        #[test]
        fn elementary_systems_are_union_closed(r in arb_system(6, 8)) {
            if r.is_elementary() {
                let closed = enumerate_closed(&r, lim()).unwrap();
                for a in &closed {
                    for b in &closed {
                        prop_assert!(closed.contains(&a.union(b)));
                    }
                }
                let top = closed.iter().fold(Subset::empty(r.size()), |acc, c| acc.union(c));
                prop_assert_eq!(greatest_closed(&r).unwrap(), top);
            }
        }

        #[test]
        fn deterministic_lfp_is_intersection_of_closed_supersets(r in arb_deterministic(7), seed in any::<u8>()) {
            let closed = enumerate_closed(&r, lim()).unwrap();
            for a in &closed {
                for b in &closed {
                    prop_assert!(closed.contains(&a.intersection(b)));
                }
            }
            let seed = Subset::from_mask(r.size(), seed as u64);
            let meet = closed
                .iter()
                .filter(|c| seed.is_subset(c))
                .fold(Subset::full(r.size()), |acc, c| acc.intersection(c));
            prop_assert_eq!(lfp(&r, &seed).unwrap(), meet);
        }

        #[test]
        fn supersets_from_empty_seed_are_minimal_closed(r in arb_system(6, 8)) {
            prop_assert_eq!(
                minimal_closed_supersets(&r, &Subset::empty(r.size()), lim()).unwrap(),
                minimal_closed(&r, lim()).unwrap()
            );
        }
    }
}
