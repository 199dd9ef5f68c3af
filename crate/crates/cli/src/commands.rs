use std::collections::BTreeMap;

use nid::closure::{
    enumerate_closed, full_family, greatest_closed, least_generating_family, lfp as least_fixed_point,
    maximal_closed, minimal_closed, minimal_closed_supersets, refining_family,
};
use nid::cotrees::{mtype_equal, unfold, wellfounded_states, Coalgebra, PathSet};
use nid::document::{Document, GraphPairDoc};
use nid::encodings::{
    bisimilar, bisimulation_rules, largest_bisimulation, pair_universe, prime_ideal_rules, sga_to_nid,
    FullnessSystem, Graph,
};
use nid::gamelogic::{compile_propositional, linear_extensions, GameTheory};
use nid::topology::{self, enumerate_morphisms, enumerate_points, flatness, points_rules, CoverClosure, FormalSpace};
use nid::{RuleSystem, Subset, SubsetFamily, Universe};
use serde_json::{json, Map, Value};

use crate::{BisimMode, Failure, FullMode, GameMode, Input, LfpMode, MorphismMode, Outcome};

pub type Body = Map<String, Value>;

pub fn render(fam: &SubsetFamily, u: &Universe) -> Value {
    json!(fam.render(u))
}

pub fn render_set(s: &Subset, u: &Universe) -> Value {
    json!(u.render(s))
}

fn body<const N: usize>(entries: [(&str, Value); N]) -> Body {
    entries.into_iter().map(|(k, v)| (k.to_owned(), v)).collect()
}

fn wrong_kind(doc: &Document, wanted: &str) -> Failure {
    Failure::Usage(format!("expected a {wanted} document, found `{}`", doc.kind()))
}

/// The rule system a document denotes, for the commands that work on any.
pub fn rule_system(input: &Input) -> Outcome<RuleSystem> {
    let limits = input.limits;
    Ok(match &input.doc {
        Document::Rules(r) => r.system()?,
        Document::Ring(r) => prime_ideal_rules(&r.ring()?),
        Document::GraphPair(g) => {
            let (l, r) = graphs(g)?;
            bisimulation_rules(&l, &r, limits)?
        }
        Document::FormalSpace(s) => points_rules(&s.space()?, limits)?,
        Document::Theory(_) | Document::TheoryText(_) => compile_propositional(&theory(input)?)?.system().clone(),
        Document::Sga(s) => sga_to_nid(&s.instance()?, limits)?.system().clone(),
        Document::Fullness(f) => FullnessSystem::new(f.a_size, f.b_size, limits)?.rules().clone(),
        other => return Err(wrong_kind(other, "rule-bearing")),
    })
}

pub fn graphs(g: &GraphPairDoc) -> Outcome<(Graph, Graph)> {
    Ok((g.left.graph()?, g.right.graph()?))
}

pub fn theory(input: &Input) -> Outcome<GameTheory> {
    match &input.doc {
        Document::Theory(t) => Ok(t.theory()?),
        Document::TheoryText(t) => Ok(t.theory()?),
        other => Err(wrong_kind(other, "theory")),
    }
}

pub fn space(input: &Input) -> Outcome<FormalSpace> {
    match &input.doc {
        Document::FormalSpace(s) => Ok(s.space()?),
        other => Err(wrong_kind(other, "formal-space")),
    }
}

pub fn space_pair(input: &Input) -> Outcome<(FormalSpace, FormalSpace)> {
    match &input.doc {
        Document::SpacePair(p) => Ok((p.source.space()?, p.target.space()?)),
        other => Err(wrong_kind(other, "space-pair")),
    }
}

pub fn coalgebra(input: &Input) -> Outcome<Coalgebra> {
    match &input.doc {
        Document::Coalgebra(c) => Ok(c.coalgebra()?),
        other => Err(wrong_kind(other, "coalgebra")),
    }
}

pub fn seed(input: &Input, r: &RuleSystem) -> Outcome<Subset> {
    match &input.doc {
        Document::Rules(doc) => Ok(doc.seed(r)?),
        _ => Ok(Subset::empty(r.size())),
    }
}

pub fn closed(input: &Input) -> Outcome<Body> {
    let r = rule_system(input)?;
    let fam = enumerate_closed(&r, input.limits)?;
    Ok(body([("closed", render(&fam, r.universe()))]))
}

pub fn minimal(input: &Input) -> Outcome<Body> {
    let r = rule_system(input)?;
    let fam = minimal_closed(&r, input.limits)?;
    Ok(body([("minimal", render(&fam, r.universe()))]))
}

pub fn generators(input: &Input) -> Outcome<Body> {
    let r = rule_system(input)?;
    let fam = least_generating_family(&r, input.limits)?;
    Ok(body([("generators", render(&fam, r.universe()))]))
}

pub fn full(input: &Input, mode: FullMode) -> Outcome<Body> {
    let r = rule_system(input)?;
    let u = r.universe();
    Ok(match mode {
        FullMode::Full => body([("full", render(&full_family(&r, input.limits)?, u))]),
        FullMode::Refining => body([("refining", render(&refining_family(&r, input.limits)?, u))]),
        FullMode::Maximal => body([("maximal", render(&maximal_closed(&r, input.limits)?, u))]),
        FullMode::Greatest => body([("greatest", render_set(&greatest_closed(&r)?, u))]),
    })
}

pub fn lfp(input: &Input, mode: LfpMode) -> Outcome<Body> {
    let r = rule_system(input)?;
    let seed = seed(input, &r)?;
    let u = r.universe();
    Ok(match mode {
        LfpMode::Least => body([("lfp", render_set(&least_fixed_point(&r, &seed)?, u))]),
        LfpMode::Supersets => body([(
            "minimal-supersets",
            render(&minimal_closed_supersets(&r, &seed, input.limits)?, u),
        )]),
    })
}

pub fn classify(input: &Input) -> Outcome<Body> {
    let r = rule_system(input)?;
    let c = r.classify();
    Ok(body([
        ("universe-size", json!(r.size())),
        ("rules", json!(r.rules().len())),
        ("elementary", json!(c.elementary)),
        ("deterministic", json!(c.deterministic)),
        ("finitary", json!(true)),
        ("max-premise", json!(c.max_premise)),
        ("max-conclusion", json!(c.max_conclusion)),
    ]))
}

pub fn prime_ideals(input: &Input) -> Outcome<Body> {
    let Document::Ring(doc) = &input.doc else {
        return Err(wrong_kind(&input.doc, "ring"));
    };
    let ring = doc.ring()?;
    let fam = enumerate_closed(&prime_ideal_rules(&ring), input.limits)?.filter(|s| !s.is_empty());
    Ok(body([("prime-ideals", render(&fam, ring.carrier()))]))
}

pub fn bisim(input: &Input, mode: BisimMode) -> Outcome<Body> {
    let Document::GraphPair(doc) = &input.doc else {
        return Err(wrong_kind(&input.doc, "graph-pair"));
    };
    let (l, r) = graphs(doc)?;
    let pairs = pair_universe(l.nodes(), r.nodes())?;
    let mut out = match mode {
        BisimMode::Greatest => {
            input.limits.check(pairs.len())?;
            body([("greatest", render_set(&largest_bisimulation(&l, &r)?, &pairs))])
        }
        BisimMode::All => {
            let rules = bisimulation_rules(&l, &r, input.limits)?;
            body([("bisimulations", render(&enumerate_closed(&rules, input.limits)?, &pairs))])
        }
    };
    if let Some((a, b)) = &doc.query {
        let verdict = bisimilar(&l, &r, l.nodes().lookup(a)?, r.nodes().lookup(b)?)?;
        out.insert("bisimilar".into(), json!(verdict));
    }
    Ok(out)
}

pub fn fullness(input: &Input) -> Outcome<Body> {
    let Document::Fullness(doc) = &input.doc else {
        return Err(wrong_kind(&input.doc, "fullness"));
    };
    let sys = FullnessSystem::new(doc.a_size, doc.b_size, input.limits)?;
    let fam = sys.derive_full_relations(input.limits)?;
    Ok(body([("full-relations", render(&fam, &sys.pair_universe()))]))
}

pub fn sga(input: &Input) -> Outcome<Body> {
    let Document::Sga(doc) = &input.doc else {
        return Err(wrong_kind(&input.doc, "sga"));
    };
    let z = doc.instance()?;
    let t = sga_to_nid(&z, input.limits)?;
    Ok(body([
        ("models", render(&t.decoded_closed(input.limits)?, z.base())),
        ("generators", render(&t.decoded_generators(input.limits)?, z.base())),
    ]))
}

pub fn game(input: &Input, mode: GameMode) -> Outcome<Body> {
    let t = theory(input)?;
    let compiled = compile_propositional(&t)?;
    let letters = json!(t.letters().names());
    Ok(match mode {
        GameMode::Models => body([
            ("letters", letters),
            ("models", render(&compiled.decoded_models(input.limits)?, t.letters())),
        ]),
        GameMode::Minimal => body([
            ("letters", letters),
            ("minimal-models", render(&compiled.decoded_minimal_models(input.limits)?, t.letters())),
        ]),
    })
}

pub fn linext(input: &Input) -> Outcome<Body> {
    let Document::Poset(doc) = &input.doc else {
        return Err(wrong_kind(&input.doc, "poset"));
    };
    let poset = doc.poset()?;
    let report = linear_extensions(&poset, input.limits)?;
    let names = |seq: &Vec<usize>| -> Vec<&str> { seq.iter().map(|&i| poset.elements().name(i)).collect() };
    Ok(body([
        ("linear-extensions", json!(report.linear_extensions.iter().map(names).collect::<Vec<_>>())),
        ("expansions", json!(report.expansions)),
        ("minimal-expansions", json!(report.minimal_expansions)),
        ("minimal-with-equality", json!(report.minimal_with_equality)),
        ("minimal-with-equality-total", json!(report.minimal_with_equality_total)),
    ]))
}

pub fn points(input: &Input) -> Outcome<Body> {
    let fs = space(input)?;
    Ok(body([("points", render(&enumerate_points(&fs, input.limits)?, fs.basics()))]))
}

pub fn flat(input: &Input) -> Outcome<Body> {
    let fs = space(input)?;
    let report = flatness(&fs, input.limits)?;
    Ok(body([
        ("flat", json!(report.is_flat())),
        ("all-minimal", json!(report.all_minimal)),
        ("all-maximal", json!(report.all_maximal)),
        ("points", render(&report.points, fs.basics())),
    ]))
}

pub fn closure_of(mode: MorphismMode) -> CoverClosure {
    match mode {
        MorphismMode::Source => CoverClosure::SourceCovers,
        MorphismMode::Target => CoverClosure::TargetCovers,
    }
}

pub fn morphisms(input: &Input, mode: MorphismMode) -> Outcome<Body> {
    let (src, dst) = space_pair(input)?;
    let fam = enumerate_morphisms(&src, &dst, closure_of(mode), input.limits)?;
    Ok(body([("morphisms", render(&fam, &topology::pair_universe(&src, &dst)))]))
}

pub fn render_tree(c: &Coalgebra, t: &PathSet) -> Value {
    json!(t.paths.iter().map(|p| p.render(c.signature())).collect::<Vec<_>>())
}

/// States named by the document, or all of them.
pub fn selected_states(input: &Input, c: &Coalgebra) -> Outcome<Vec<usize>> {
    let Document::Coalgebra(doc) = &input.doc else {
        return Err(wrong_kind(&input.doc, "coalgebra"));
    };
    Ok(match &doc.state {
        Some(x) => vec![c.states().lookup(x)?],
        None => (0..c.states().len()).collect(),
    })
}

pub fn mtype(input: &Input) -> Outcome<Body> {
    let c = coalgebra(input)?;
    let Document::Coalgebra(doc) = &input.doc else {
        unreachable!("coalgebra() checked the kind");
    };
    let trees: BTreeMap<&str, Value> = selected_states(input, &c)?
        .into_iter()
        .map(|x| (c.states().name(x), render_tree(&c, &unfold(&c, x, input.depth))))
        .collect();
    let mut out = body([
        ("depth", json!(input.depth)),
        ("trees", json!(trees)),
        ("wellfounded", render_set(&wellfounded_states(&c), c.states())),
    ]);
    if let (Some(x), Some(y)) = (&doc.state, &doc.other) {
        let equal = mtype_equal(&c, c.states().lookup(x)?, c.states().lookup(y)?);
        out.insert("equal".into(), json!(equal));
    }
    Ok(out)
}
