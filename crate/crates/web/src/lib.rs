//! wasm-bindgen exports behind `www/index.html`. Each takes a JSON document
//! and returns a JSON string; failures come back as `{"error": "..."}`.

use nid::closure::enumerate_closed;
use nid::cotrees::unfold;
use nid::document::Document;
use nid::gamelogic::linear_extensions as extensions;
use nid::{Limits, Result};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Universes in the page stay small enough to draw.
const PAGE_LIMITS: Limits = Limits { max_universe: 16 };

fn respond(result: Result<Value>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

fn parse(text: &str) -> Result<Document> {
    Document::parse(text)
}

/// Closed sets of a `rules` document together with the covering pairs of
/// the inclusion order, as indices into `closed`.
#[wasm_bindgen]
pub fn closed_sets(doc: &str) -> String {
    respond((|| {
        let Document::Rules(rules) = parse(doc)? else {
            return Err(nid::Error::Document("expected a rules document".into()));
        };
        let r = rules.system()?;
        let fam = enumerate_closed(&r, PAGE_LIMITS)?;
        let members = fam.members();
        let mut hasse = Vec::new();
        for (i, a) in members.iter().enumerate() {
            for (j, b) in members.iter().enumerate() {
                let between = members
                    .iter()
                    .any(|c| a.is_proper_subset(c) && c.is_proper_subset(b));
                if a.is_proper_subset(b) && !between {
                    hasse.push([i, j]);
                }
            }
        }
        Ok(json!({
            "universe": r.universe().names(),
            "closed": fam.render(r.universe()),
            "hasse": hasse,
        }))
    })())
}

/// Linear extensions of a `poset` document, each from least to greatest.
#[wasm_bindgen]
pub fn linear_extensions(doc: &str) -> String {
    respond((|| {
        let Document::Poset(p) = parse(doc)? else {
            return Err(nid::Error::Document("expected a poset document".into()));
        };
        let poset = p.poset()?;
        let report = extensions(&poset, Limits::with_max_universe(64))?;
        let names: Vec<Vec<&str>> = report
            .linear_extensions
            .iter()
            .map(|seq| seq.iter().map(|&i| poset.elements().name(i)).collect())
            .collect();
        Ok(json!({ "extensions": names, "expansions": report.expansions }))
    })())
}

/// The tree unfolded from `state` to `depth`, as nested `{label, children}`
/// nodes with children keyed by edge.
#[wasm_bindgen]
pub fn unfold_tree(doc: &str, state: &str, depth: usize) -> String {
    respond((|| {
        let Document::Coalgebra(c) = parse(doc)? else {
            return Err(nid::Error::Document("expected a coalgebra document".into()));
        };
        let co = c.coalgebra()?;
        let x = co.states().lookup(state)?;
        let tree = unfold(&co, x, depth.min(8));
        let sig = co.signature();
        let mut root = json!({ "label": sig.labels().name(co.label(x)), "children": {} });
        for p in tree.paths.iter().filter(|p| p.steps() > 0) {
            let mut node = &mut root;
            for (b, a) in p.edges.iter().zip(&p.labels[1..]) {
                let children = node["children"].as_object_mut().expect("nodes carry children");
                node = children
                    .entry(sig.edges().name(*b))
                    .or_insert_with(|| json!({ "label": sig.labels().name(*a), "children": {} }));
            }
        }
        Ok(root)
    })())
}
