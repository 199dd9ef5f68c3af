use super::space::FormalSpace;
use crate::gamelogic::{compile_propositional, GameFormula, GameSequent, GameTheory};
use crate::subset::{SubsetFamily, Universe};
use crate::{Limits, Result};

/// Form of the sequents expressing that `{p : F(p, q)}` is closed under covers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CoverClosure {
    /// `⋀_{p' ∈ S} F(p', q) → F(p, q)` for `S ∈ BCov(p)`.
    #[default]
    SourceCovers,
    /// `⋀_{q' ∈ T} F(p, q') → F(p, q)` for `T ∈ BCov'(q)`.
    TargetCovers,
}

/// Letter name for the pair `(p, q)`.
pub fn relation_letter(src: &FormalSpace, dst: &FormalSpace, p: usize, q: usize) -> String {
    format!("F({},{})", src.basics().name(p), dst.basics().name(q))
}

/// Universe of pairs `(p,q)`, index `p·|ℚ| + q`.
pub fn pair_universe(src: &FormalSpace, dst: &FormalSpace) -> Universe {
    let names = (0..src.size()).flat_map(|p| {
        (0..dst.size()).map(move |q| format!("({},{})", src.basics().name(p), dst.basics().name(q)))
    });
    Universe::new(names).unwrap_or_else(|_| Universe::numbered(src.size() * dst.size()))
}

/// The propositional theory whose models are the continuous morphisms from
/// `src` to `dst`, over letters `F(p,q)` in pair order.
pub fn morphism_theory(src: &FormalSpace, dst: &FormalSpace, closure: CoverClosure) -> Result<GameTheory> {
    let (np, nq) = (src.size(), dst.size());
    let f = |p: usize, q: usize| GameFormula::Atom(relation_letter(src, dst, p, q));
    let letters = Universe::new((0..np).flat_map(|p| (0..nq).map(move |q| (p, q))).map(|(p, q)| {
        relation_letter(src, dst, p, q)
    }))?;
    // ⋁_{S ∈ BCov(p)} ⋀_{p' ∈ S} ⋁_{q' ∈ targets} F(p', q')
    let some_cover = |p: usize, targets: &dyn Fn(usize) -> bool| {
        GameFormula::Disj(
            src.bcov(p)
                .iter()
                .map(|s| {
                    GameFormula::Conj(
                        s.iter()
                            .map(|p2| GameFormula::Disj((0..nq).filter(|&q2| targets(q2)).map(|q2| f(p2, q2)).collect()))
                            .collect(),
                    )
                })
                .collect(),
        )
    };

    let mut sequents = Vec::new();
    for p in 0..np {
        for q in 0..nq {
            for p2 in (0..np).filter(|&p2| src.le(p2, p)) {
                for q2 in (0..nq).filter(|&q2| dst.le(q, q2)) {
                    if (p2, q2) != (p, q) {
                        sequents.push(GameSequent::new(f(p, q), f(p2, q2)));
                    }
                }
            }
        }
    }
    match closure {
        CoverClosure::SourceCovers => {
            for p in 0..np {
                for s in src.bcov(p) {
                    for q in 0..nq {
                        let hyp = GameFormula::Conj(s.iter().map(|p2| f(p2, q)).collect());
                        sequents.push(GameSequent::new(hyp, f(p, q)));
                    }
                }
            }
        }
        CoverClosure::TargetCovers => {
            for q in 0..nq {
                for t in dst.bcov(q) {
                    for p in 0..np {
                        let hyp = GameFormula::Conj(t.iter().map(|q2| f(p, q2)).collect());
                        sequents.push(GameSequent::new(hyp, f(p, q)));
                    }
                }
            }
        }
    }
    for p in 0..np {
        sequents.push(GameSequent::fact(some_cover(p, &|_| true)));
    }
    for p in 0..np {
        for q0 in 0..nq {
            for q1 in 0..nq {
                let hyp = GameFormula::Conj(vec![f(p, q0), f(p, q1)]);
                let below = |q2: usize| dst.le(q2, q0) && dst.le(q2, q1);
                sequents.push(GameSequent::new(hyp, some_cover(p, &below)));
            }
        }
    }
    for p in 0..np {
        for q in 0..nq {
            for t in dst.bcov(q) {
                sequents.push(GameSequent::new(f(p, q), some_cover(p, &|q2| t.contains(q2))));
            }
        }
    }
    GameTheory::new(letters, sequents)
}

/// Continuous morphisms as relations over [`pair_universe`]. The cap applies
/// to `|ℙ × ℚ|`.
pub fn enumerate_morphisms(
    src: &FormalSpace,
    dst: &FormalSpace,
    closure: CoverClosure,
    limits: Limits,
) -> Result<SubsetFamily> {
    limits.check(src.size() * dst.size())?;
    let theory = morphism_theory(src, dst, closure)?;
    compile_propositional(&theory)?.decoded_models(limits)
}
