use nid::closure::{
    enumerate_closed, full_family, greatest_closed, is_generating, is_strongly_generating, least_generating_family,
    lfp, maximal_closed, minimal_closed, strongly_generates,
};
use nid::cotrees::{mtype_equal, root_and_subtrees, unfold, validate_mtype_element, wellfounded_states};
use nid::document::Document;
use nid::encodings::{
    bisimilar, bisimulation_rules, largest_bisimulation, models_of_sga, nid_to_sga, prime_ideal_rules, sga_to_nid,
    FullnessSystem,
};
use nid::gamelogic::{compile_propositional, linear_extensions, minimal_models, models};
use nid::oracles::{
    bisimilar_states, brute_bisimulations, brute_closed, brute_linear_extensions, brute_morphisms, brute_points,
    brute_prime_ideals, greatest_bisimulation, states_reaching_cycles, Covering,
};
use nid::topology::{
    enumerate_morphisms, enumerate_points, flatness, presentation_closure, saturate_cover, CoverClosure,
};
use nid::{Error, Subset, SubsetFamily};
use serde_json::{json, Value};

use crate::commands::{coalgebra, graphs, rule_system, seed, space, space_pair, theory, Body};
use crate::{Input, Outcome};

/// Largest pair universe whose total relations are enumerated outright.
const TOTAL_RELATIONS_CAP: usize = 16;

struct Checks {
    perturb: bool,
    results: Vec<(String, bool)>,
}

impl Checks {
    fn flag(&mut self, name: impl Into<String>, engine: bool, oracle: bool) {
        let engine = engine ^ self.perturb;
        self.results.push((name.into(), engine == oracle));
    }

    fn holds(&mut self, name: impl Into<String>, engine: bool) {
        self.flag(name, engine, true);
    }

    fn family(&mut self, name: impl Into<String>, engine: SubsetFamily, oracle: &SubsetFamily) {
        let engine = if self.perturb { toggle_empty(&engine) } else { engine };
        self.results.push((name.into(), &engine == oracle));
    }

    fn set(&mut self, name: impl Into<String>, engine: Subset, oracle: &Subset) {
        let engine = if self.perturb {
            engine.complement()
        } else {
            engine
        };
        self.results.push((name.into(), &engine == oracle));
    }
}

fn toggle_empty(fam: &SubsetFamily) -> SubsetFamily {
    let empty = Subset::empty(fam.universe_len());
    if fam.contains(&empty) {
        fam.without(&empty)
    } else {
        fam.union(&SubsetFamily::new(fam.universe_len(), [empty]).expect("same universe"))
    }
}

/// Runs every oracle check that applies to the document.
pub fn verify(input: &Input, perturb: bool) -> Outcome<(Body, bool)> {
    let mut c = Checks {
        perturb,
        results: Vec::new(),
    };
    let limits = input.limits;
    match &input.doc {
        Document::Rules(_) => {
            let r = rule_system(input)?;
            let oracle = brute_closed(&r)?;
            c.family("closed sets", enumerate_closed(&r, limits)?, &oracle);
            c.family("minimal closed sets", minimal_closed(&r, limits)?, &oracle.minimal());
            c.family("maximal closed sets", maximal_closed(&r, limits)?, &oracle.maximal());
            let g = least_generating_family(&r, limits)?;
            c.holds("least generating family generates", is_generating(&r, &g, limits)?);
            c.flag(
                "strong generation needs every closed set",
                is_strongly_generating(&r, &g, limits)?,
                oracle.is_subfamily(&g),
            );
            let full = full_family(&r, limits)?;
            c.holds(
                "full family bounds every closed set",
                oracle.iter().all(|a| full.iter().any(|f| a.is_subset(f))),
            );
            c.family(
                "clause translation has the same models",
                models_of_sga(&nid_to_sga(&r), limits)?,
                &oracle,
            );
            if r.is_deterministic() {
                let seed = seed(input, &r)?;
                let above = oracle.filter(|a| seed.is_subset(a));
                let meet = above.iter().fold(Subset::full(r.size()), |acc, a| acc.intersection(a));
                c.set("least fixed point", lfp(&r, &seed)?, &meet);
            }
            if r.is_elementary() {
                let union = oracle.iter().fold(Subset::empty(r.size()), |acc, a| acc.union(a));
                c.set("greatest closed set", greatest_closed(&r)?, &union);
            }
        }
        Document::Ring(doc) => {
            let ring = doc.ring()?;
            let engine = enumerate_closed(&prime_ideal_rules(&ring), limits)?.filter(|s| !s.is_empty());
            c.family("prime ideals", engine, &brute_prime_ideals(&ring)?);
        }
        Document::GraphPair(doc) => {
            let (l, r) = graphs(doc)?;
            let rules = bisimulation_rules(&l, &r, limits)?;
            let closed = enumerate_closed(&rules, limits)?;
            c.family("bisimulations", closed.clone(), &brute_bisimulations(&l, &r)?);
            let greatest = greatest_bisimulation(&l, &r);
            c.family(
                "maximal closed set",
                closed.maximal(),
                &SubsetFamily::new(greatest.universe_len(), [greatest.clone()])?,
            );
            c.set("largest bisimulation", largest_bisimulation(&l, &r)?, &greatest);
            let m = r.len();
            let agrees = (0..l.len()).all(|a| {
                (0..m).all(|b| bisimilar(&l, &r, a, b).map(|v| v == greatest.contains(a * m + b)).unwrap_or(false))
            });
            c.holds("bisimilar pairs", agrees);
        }
        Document::Poset(doc) => {
            let poset = doc.poset()?;
            let mut engine = linear_extensions(&poset, limits)?.linear_extensions;
            let mut oracle = brute_linear_extensions(&poset)?;
            engine.sort();
            oracle.sort();
            if perturb {
                engine.pop();
            }
            c.results.push(("linear extensions".into(), engine == oracle));
        }
        Document::FormalSpace(_) => {
            let fs = space(input)?;
            let cov = saturate_cover(&fs)?;
            let points = enumerate_points(&fs, limits)?;
            c.family("points under the generated cover", points.clone(), &brute_points(&fs, Covering::Saturated(&cov))?);
            c.family("points under the basic covers", points.clone(), &brute_points(&fs, Covering::Basic)?);
            let incomparable = points.iter().all(|a| points.iter().all(|b| !a.is_proper_subset(b)));
            c.flag("flatness", flatness(&fs, limits)?.is_flat(), incomparable);
        }
        Document::SpacePair(_) => {
            let (src, dst) = space_pair(input)?;
            let (src, dst) = (presentation_closure(&src)?, presentation_closure(&dst)?);
            let oracle = brute_morphisms(&src, &dst, &saturate_cover(&src)?, &saturate_cover(&dst)?)?;
            let engine = enumerate_morphisms(&src, &dst, CoverClosure::SourceCovers, limits)?;
            c.family("morphisms between the presentation closures", engine, &oracle);
        }
        Document::Coalgebra(_) => {
            let co = coalgebra(input)?;
            let sig = co.signature();
            let n = co.states().len();
            let mut valid = true;
            let mut coherent = true;
            for x in 0..n {
                for d in 0..=input.depth {
                    let t = unfold(&co, x, d);
                    valid &= validate_mtype_element(sig, &t)?.is_valid();
                    if d == 0 {
                        continue;
                    }
                    let (root, subtrees) = root_and_subtrees(sig, &t)?;
                    coherent &= root == co.label(x)
                        && subtrees.len() == co.children(x).len()
                        && co.children(x).iter().all(|(b, &y)| subtrees.get(b) == Some(&unfold(&co, y, d - 1)));
                }
            }
            c.holds("unfolded trees are well formed", valid);
            c.holds("root and subtrees match the children", coherent);
            c.set(
                "well-founded states",
                wellfounded_states(&co),
                &states_reaching_cycles(&co).complement(),
            );
            let bisimilar = bisimilar_states(&co);
            let agrees = (0..n).all(|x| (0..n).all(|y| mtype_equal(&co, x, y) == bisimilar[x][y]));
            c.holds("tree equality is bisimilarity", agrees);
        }
        Document::Theory(_) | Document::TheoryText(_) => {
            let t = theory(input)?;
            let compiled = compile_propositional(&t)?;
            c.family("models", compiled.decoded_models(limits)?, &models(&t, limits)?);
            c.family("minimal models", compiled.decoded_minimal_models(limits)?, &minimal_models(&t, limits)?);
        }
        Document::Sga(doc) => {
            let z = doc.instance()?;
            let translation = sga_to_nid(&z, limits)?;
            let oracle = models_of_sga(&z, limits)?;
            c.family("models", translation.decoded_closed(limits)?, &oracle);
            c.holds(
                "generators strongly generate the models",
                strongly_generates(&oracle, &translation.decoded_generators(limits)?),
            );
        }
        Document::Fullness(doc) => {
            let sys = FullnessSystem::new(doc.a_size, doc.b_size, limits)?;
            let k = doc.a_size * doc.b_size;
            if k > TOTAL_RELATIONS_CAP {
                return Err(Error::CapExceeded {
                    size: k,
                    cap: TOTAL_RELATIONS_CAP,
                }
                .into());
            }
            let full = sys.derive_full_relations(limits)?;
            let totals: Vec<Subset> = (0..1u64 << k)
                .map(|m| Subset::from_mask(k, m))
                .filter(|rel| (0..doc.a_size).all(|a| (0..doc.b_size).any(|b| rel.contains(a * doc.b_size + b))))
                .collect();
            c.holds(
                "every total relation contains a full one",
                totals.iter().all(|t| full.iter().any(|f| f.is_subset(t))),
            );
            c.holds("full relations are total", full.iter().all(|f| totals.contains(f)));
        }
    }
    let passed = c.results.iter().all(|(_, ok)| *ok);
    let checks: Vec<Value> = c
        .results
        .iter()
        .map(|(name, ok)| json!({"check": name, "pass": ok}))
        .collect();
    let mut body = Body::new();
    body.insert("checks".into(), Value::Array(checks));
    body.insert("passed".into(), json!(passed));
    Ok((body, passed))
}
