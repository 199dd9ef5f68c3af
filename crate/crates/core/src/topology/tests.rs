use proptest::prelude::*;

use super::*;
use crate::closure::{enumerate_closed, is_generating, least_generating_family};
use crate::oracles::{brute_morphisms, brute_points, Covering};
use crate::subset::{Subset, Universe};
use crate::Limits;

fn lim() -> Limits {
    Limits::default()
}

/// `u ≤ t`.
fn sierpinski(cover_t_by_u: bool) -> FormalSpace {
    let u = Universe::new(["t", "u"]).unwrap();
    let bcov = if cover_t_by_u {
        vec![vec![u.subset(["u"]).unwrap()], vec![]]
    } else {
        vec![vec![], vec![]]
    };
    FormalSpace::generated(u, [(1, 0)], bcov).unwrap()
}

fn single(bcov: Vec<Subset>) -> FormalSpace {
    FormalSpace::generated(Universe::new(["p"]).unwrap(), [], vec![bcov]).unwrap()
}

#[test]
fn sierpinski_points() {
    let fs = sierpinski(false);
    let closed = enumerate_closed(&points_rules(&fs, lim()).unwrap(), lim()).unwrap();
    assert_eq!(closed.render(fs.basics()), vec![vec![], vec!["t"], vec!["t", "u"]]);
    let points = enumerate_points(&fs, lim()).unwrap();
    assert_eq!(points.render(fs.basics()), vec![vec!["t"], vec!["t", "u"]]);
    assert!(!is_flat(&fs, lim()).unwrap());

    let fs = sierpinski(true);
    assert_eq!(enumerate_points(&fs, lim()).unwrap().render(fs.basics()), vec![vec!["t", "u"]]);
}

#[test]
fn degenerate_spaces() {
    let empty = FormalSpace::generated(Universe::numbered(0), [], vec![]).unwrap();
    let closed = enumerate_closed(&points_rules(&empty, lim()).unwrap(), lim()).unwrap();
    assert_eq!(closed.len(), 1);
    assert!(enumerate_points(&empty, lim()).unwrap().is_empty());

    let fs = single(vec![Subset::empty(1)]);
    assert!(enumerate_points(&fs, lim()).unwrap().is_empty());
    assert!(is_flat(&single(vec![]), lim()).unwrap());
}

#[test]
fn incomparable_basics_are_flat() {
    let fs = FormalSpace::generated(Universe::new(["a", "b"]).unwrap(), [], vec![]).unwrap();
    let report = flatness(&fs, lim()).unwrap();
    assert_eq!(report.points.render(fs.basics()), vec![vec!["a"], vec!["b"]]);
    assert!(report.is_flat() && report.all_maximal);
}

#[test]
fn rejects_non_preorders() {
    let u = Universe::numbered(2);
    assert!(FormalSpace::new(u.clone(), [(0, 1)], vec![]).is_err());
    assert!(FormalSpace::new(u, [(0, 0), (1, 1), (0, 1)], vec![]).is_ok());
}

#[test]
fn saturation_examples() {
    let fs = sierpinski(false);
    let cov = saturate_cover(&fs).unwrap();
    for m in 0..4u64 {
        let u = Subset::from_mask(2, m);
        assert_eq!(cov.covered_by(&u), fs.down(&u));
    }
    let fs = sierpinski(true);
    let cov = saturate_cover(&fs).unwrap();
    assert!(cov.covers(0, &fs.basics().subset(["u"]).unwrap()));
    assert!((0..2).all(|p| cov.covers(p, &Subset::full(2))));
}

#[test]
fn morphisms_between_single_basics() {
    let fs = single(vec![Subset::full(1)]);
    let theory = morphism_theory(&fs, &fs, CoverClosure::default()).unwrap();
    assert_eq!(theory.letters().names(), ["F(p,p)"]);
    let morphisms = enumerate_morphisms(&fs, &fs, CoverClosure::default(), lim()).unwrap();
    assert_eq!(morphisms.members(), &[Subset::full(1)]);

    // without basic covers condition (3) has no witness
    let bare = single(vec![]);
    assert!(enumerate_morphisms(&bare, &fs, CoverClosure::default(), lim()).unwrap().is_empty());

    // into the empty space only the empty relation remains, and it needs an empty cover
    let empty = FormalSpace::generated(Universe::numbered(0), [], vec![]).unwrap();
    assert!(enumerate_morphisms(&fs, &empty, CoverClosure::default(), lim()).unwrap().is_empty());
    let vanishing = single(vec![Subset::empty(1)]);
    assert_eq!(
        enumerate_morphisms(&vanishing, &empty, CoverClosure::default(), lim()).unwrap().members(),
        &[Subset::empty(0)]
    );
    assert_eq!(
        enumerate_morphisms(&empty, &fs, CoverClosure::default(), lim()).unwrap().members(),
        &[Subset::empty(0)]
    );
}

#[test]
fn identity_is_a_morphism() {
    let fs = presentation_closure(&sierpinski(true)).unwrap();
    let morphisms = enumerate_morphisms(&fs, &fs, CoverClosure::default(), lim()).unwrap();
    // the identity is p ◁ {q}; here t ◁ {u}, so every pair is related
    let cov = saturate_cover(&fs).unwrap();
    let n = fs.size();
    let id = Subset::from_indices(
        n * n,
        (0..n * n).filter(|i| cov.covers(i / n, &Subset::from_indices(n, [i % n]))),
    );
    assert_eq!(id, Subset::full(4));
    assert!(morphisms.contains(&id));
}

#[test]
fn target_side_cover_closure_diverges() {
    // ℙ = {a, b} discrete with BCov(a) = {{b}}; ℚ = {q} with BCov(q) = {{q}}
    let src = FormalSpace::generated(
        Universe::new(["a", "b"]).unwrap(),
        [],
        vec![vec![Subset::from_indices(2, [1])], vec![Subset::from_indices(2, [1])]],
    )
    .unwrap();
    let src = presentation_closure(&src).unwrap();
    let dst = presentation_closure(&single(vec![Subset::full(1)])).unwrap();
    let cs = saturate_cover(&src).unwrap();
    let cd = saturate_cover(&dst).unwrap();
    let expected = brute_morphisms(&src, &dst, &cs, &cd).unwrap();
    let source = enumerate_morphisms(&src, &dst, CoverClosure::SourceCovers, lim()).unwrap();
    let target = enumerate_morphisms(&src, &dst, CoverClosure::TargetCovers, lim()).unwrap();
    assert_eq!(source, expected);
    assert_ne!(target, expected);
}

fn arb_space(max: usize) -> impl Strategy<Value = FormalSpace> {
    (0..=max).prop_flat_map(|n| {
        let pairs = prop::collection::vec((0..n.max(1), 0..n.max(1)), 0..=n);
        let covers = prop::collection::vec(prop::collection::vec(0u64..1 << n, 0..=2), n);
        (pairs, covers).prop_map(move |(pairs, covers)| {
            let pairs = if n == 0 { vec![] } else { pairs };
            let bcov = covers
                .into_iter()
                .map(|cs| cs.into_iter().map(|m| Subset::from_mask(n, m)).collect())
                .collect();
            FormalSpace::generated(Universe::numbered(n), pairs, bcov).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn points_match_both_oracles(fs in arb_space(5)) {
        let cov = saturate_cover(&fs).unwrap();
        let points = enumerate_points(&fs, lim()).unwrap();
        prop_assert_eq!(&points, &brute_points(&fs, Covering::Saturated(&cov)).unwrap());
        prop_assert_eq!(&points, &brute_points(&fs, Covering::Basic).unwrap());
    }

    #[test]
    fn point_rules_generate_points(fs in arb_space(5)) {
        let r = points_rules(&fs, lim()).unwrap();
        let g = least_generating_family(&r, lim()).unwrap();
        prop_assert!(is_generating(&r, &g, lim()).unwrap());
    }

    #[test]
    fn flatness_is_pairwise_incomparability(fs in arb_space(5)) {
        let report = flatness(&fs, lim()).unwrap();
        let pts = report.points.members();
        let incomparable = pts.iter().all(|a| pts.iter().all(|b| !a.is_proper_subset(b)));
        prop_assert_eq!(report.is_flat(), incomparable);
        prop_assert_eq!(report.all_minimal, report.all_maximal);
    }

    #[test]
    fn saturation_is_sound(fs in arb_space(5)) {
        let n = fs.size();
        let cov = saturate_cover(&fs).unwrap();
        for m in 0..1u64 << n {
            let u = Subset::from_mask(n, m);
            let c = cov.covered_by(&u);
            prop_assert!(u.is_subset(&c));
            for bit in 0..n {
                prop_assert!(c.is_subset(&cov.covered_by(&u.clone().with(bit))));
            }
        }
        for p in 0..n {
            for s in fs.bcov(p) {
                prop_assert!(cov.covers(p, s));
            }
        }
    }

    #[test]
    fn presentation_closure_presents_its_cover(fs in arb_space(4)) {
        let closed = presentation_closure(&fs).unwrap();
        prop_assert!(is_presentation(&closed).unwrap());
        prop_assert_eq!(saturate_cover(&closed).unwrap(), saturate_cover(&fs).unwrap());
    }

    #[test]
    fn morphisms_match_the_oracle(src in arb_space(2), dst in arb_space(2)) {
        let src = presentation_closure(&src).unwrap();
        let dst = presentation_closure(&dst).unwrap();
        let expected = brute_morphisms(
            &src,
            &dst,
            &saturate_cover(&src).unwrap(),
            &saturate_cover(&dst).unwrap(),
        )
        .unwrap();
        prop_assert_eq!(enumerate_morphisms(&src, &dst, CoverClosure::default(), lim()).unwrap(), expected);
    }
}
