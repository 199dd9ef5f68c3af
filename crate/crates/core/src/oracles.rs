//! Brute-force reference implementations. Each one follows a definition
//! literally, shares no search code with the engine, and has a small cap.

use std::collections::BTreeSet;

use crate::cotrees::Coalgebra;
use crate::encodings::{FiniteRing, Graph};
use crate::gamelogic::Poset;
use crate::rules::RuleSystem;
use crate::subset::{Subset, SubsetFamily};
use crate::topology::{CoverRelation, FormalSpace};
use crate::{Error, Result};

pub const BRUTE_CLOSED_CAP: usize = 16;
pub const BRUTE_RING_CAP: usize = 16;
/// Rings above [`BRUTE_RING_CAP`] are searched through their ideal lattice.
pub const IDEAL_LATTICE_CAP: usize = 64;
pub const BRUTE_LINEAR_CAP: usize = 7;
pub const BRUTE_POINTS_CAP: usize = 10;
pub const BRUTE_MORPHISMS_CAP: usize = 12;
/// Bound on `|A × B|`.
pub const BRUTE_BISIMULATION_CAP: usize = 36;

fn cap(size: usize, cap: usize) -> Result<()> {
    if size > cap {
        Err(Error::CapExceeded { size, cap })
    } else {
        Ok(())
    }
}

fn masks(n: usize) -> impl Iterator<Item = u64> {
    0..1u64 << n
}

fn bit(mask: u64, i: usize) -> bool {
    mask >> i & 1 == 1
}

/// Closed sets by filtering every subset through the definition.
pub fn brute_closed(r: &RuleSystem) -> Result<SubsetFamily> {
    let n = r.size();
    cap(n, BRUTE_CLOSED_CAP)?;
    let rules: Vec<(u64, u64)> = r
        .rules()
        .iter()
        .map(|rule| (rule.premise.to_mask(), rule.conclusion.to_mask()))
        .collect();
    let closed = masks(n).filter(|&y| rules.iter().all(|&(a, b)| a & !y != 0 || b & y != 0));
    SubsetFamily::new(n, closed.map(|y| Subset::from_mask(n, y)))
}

fn is_prime_ideal(ring: &FiniteRing, p: &[bool]) -> bool {
    let n = ring.size();
    let inhabited = p.iter().any(|&x| x);
    let additive = (0..n).all(|r| (0..n).all(|s| !(p[r] && p[s]) || p[ring.add(r, s)]));
    let absorbing = (0..n).all(|r| (0..n).all(|s| !p[s] || p[ring.mul(r, s)]));
    let proper = !p[ring.one()];
    let prime = (0..n).all(|r| (0..n).all(|s| !p[ring.mul(r, s)] || p[r] || p[s]));
    inhabited && additive && absorbing && proper && prime
}

/// Prime ideals: inhabited, closed under addition, absorbing multiplication,
/// missing 1, and containing a factor of each of their products.
///
/// Small rings are searched over every subset. Larger ones walk the lattice of
/// ideals generated from `{0}` one element at a time and filter it the same way.
pub fn brute_prime_ideals(ring: &FiniteRing) -> Result<SubsetFamily> {
    let n = ring.size();
    let members: Vec<Vec<bool>> = if n <= BRUTE_RING_CAP {
        masks(n).map(|m| (0..n).map(|i| bit(m, i)).collect()).collect()
    } else {
        cap(n, IDEAL_LATTICE_CAP)?;
        ideal_lattice(ring)
    };
    SubsetFamily::new(
        n,
        members
            .into_iter()
            .filter(|p| is_prime_ideal(ring, p))
            .map(|p| Subset::from_indices(n, (0..n).filter(|&i| p[i]))),
    )
}

fn ideal_lattice(ring: &FiniteRing) -> Vec<Vec<bool>> {
    let n = ring.size();
    let generate = |mut ideal: Vec<bool>| {
        loop {
            let mut grew = false;
            for r in 0..n {
                for s in 0..n {
                    if ideal[r] && ideal[s] && !ideal[ring.add(r, s)] {
                        ideal[ring.add(r, s)] = true;
                        grew = true;
                    }
                    if ideal[s] && !ideal[ring.mul(r, s)] {
                        ideal[ring.mul(r, s)] = true;
                        grew = true;
                    }
                }
            }
            if !grew {
                return ideal;
            }
        }
    };
    let mut zero = vec![false; n];
    zero[ring.zero()] = true;
    let mut seen = BTreeSet::from([generate(zero)]);
    let mut frontier: Vec<Vec<bool>> = seen.iter().cloned().collect();
    while let Some(ideal) = frontier.pop() {
        for x in (0..n).filter(|&x| !ideal[x]) {
            let mut bigger = ideal.clone();
            bigger[x] = true;
            let bigger = generate(bigger);
            if seen.insert(bigger.clone()) {
                frontier.push(bigger);
            }
        }
    }
    seen.into_iter().collect()
}

/// Both transfer conditions for `k` over pairs indexed `a·|B| + b`.
pub fn is_bisimulation(left: &Graph, right: &Graph, k: &Subset) -> bool {
    let nb = right.len();
    let rel = |a: usize, b: usize| k.contains(a * nb + b);
    (0..left.len()).all(|a| {
        (0..nb).all(|b| {
            !rel(a, b)
                || ((0..left.len())
                    .filter(|&a2| left.has_edge(a, a2))
                    .all(|a2| (0..nb).any(|b2| right.has_edge(b, b2) && rel(a2, b2)))
                    && (0..nb)
                        .filter(|&b2| right.has_edge(b, b2))
                        .all(|b2| (0..left.len()).any(|a2| left.has_edge(a, a2) && rel(a2, b2))))
        })
    })
}

/// Start from all pairs and delete violating pairs until none remain.
pub fn greatest_bisimulation(left: &Graph, right: &Graph) -> Subset {
    let (na, nb) = (left.len(), right.len());
    let mut k = vec![true; na * nb];
    loop {
        let mut changed = false;
        for a in 0..na {
            for b in 0..nb {
                if !k[a * nb + b] {
                    continue;
                }
                let forth = (0..na)
                    .filter(|&a2| left.has_edge(a, a2))
                    .all(|a2| (0..nb).any(|b2| right.has_edge(b, b2) && k[a2 * nb + b2]));
                let back = (0..nb)
                    .filter(|&b2| right.has_edge(b, b2))
                    .all(|b2| (0..na).any(|a2| left.has_edge(a, a2) && k[a2 * nb + b2]));
                if !(forth && back) {
                    k[a * nb + b] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            return Subset::from_indices(na * nb, (0..na * nb).filter(|&i| k[i]));
        }
    }
}

/// Every bisimulation. Each one lies inside the greatest, so the relation is
/// chosen row by row (one row per left node, inside the greatest) and the two
/// transfer conditions of a pair are tested once every row they mention is
/// fixed.
pub fn brute_bisimulations(left: &Graph, right: &Graph) -> Result<SubsetFamily> {
    let (na, nb) = (left.len(), right.len());
    cap(na * nb, BRUTE_BISIMULATION_CAP)?;
    let top = greatest_bisimulation(left, right);
    let allowed: Vec<u64> = (0..na)
        .map(|a| (0..nb).filter(|&b| top.contains(a * nb + b)).fold(0, |m, b| m | 1 << b))
        .collect();
    let succ_left: Vec<Vec<usize>> = (0..na).map(|a| left.successors(a).collect()).collect();
    let succ_right: Vec<u64> = (0..nb).map(|b| right.successors(b).fold(0, |m, c| m | 1 << c)).collect();
    // left nodes whose conditions become decidable once row i is chosen
    let mut ready = vec![Vec::new(); na];
    for a in 0..na {
        let last = succ_left[a].iter().copied().chain([a]).max().unwrap();
        ready[last].push(a);
    }
    let pair_ok = |rows: &[u64], a: usize, b: usize| {
        let forth = succ_left[a].iter().all(|&a2| rows[a2] & succ_right[b] != 0);
        let reached = succ_left[a].iter().fold(0, |m, &a2| m | rows[a2]);
        forth && succ_right[b] & !reached == 0
    };
    let mut found = Vec::new();
    let mut rows = vec![0u64; na];
    extend_rows(0, &allowed, &ready, &pair_ok, &mut rows, &mut |rows| {
        found.push(Subset::from_indices(
            na * nb,
            (0..na).flat_map(|a| (0..nb).filter(move |&b| bit(rows[a], b)).map(move |b| a * nb + b)),
        ))
    });
    SubsetFamily::new(na * nb, found)
}

fn extend_rows(
    i: usize,
    allowed: &[u64],
    ready: &[Vec<usize>],
    pair_ok: &impl Fn(&[u64], usize, usize) -> bool,
    rows: &mut Vec<u64>,
    emit: &mut impl FnMut(&[u64]),
) {
    if i == allowed.len() {
        emit(rows);
        return;
    }
    // every submask of the allowed row, the empty one included
    let mut sub = allowed[i];
    loop {
        rows[i] = sub;
        let ok = ready[i]
            .iter()
            .all(|&a| (0..64).filter(|&b| bit(rows[a], b)).all(|b| pair_ok(rows, a, b)));
        if ok {
            extend_rows(i + 1, allowed, ready, pair_ok, rows, emit);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & allowed[i];
    }
    rows[i] = 0;
}

/// Permutations whose order contains the partial order, each listed from
/// least to greatest, in lexicographic order.
pub fn brute_linear_extensions(poset: &Poset) -> Result<Vec<Vec<usize>>> {
    let n = poset.size();
    cap(n, BRUTE_LINEAR_CAP)?;
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let pos: Vec<usize> = {
            let mut pos = vec![0; n];
            for (i, &x) in perm.iter().enumerate() {
                pos[x] = i;
            }
            pos
        };
        if (0..n).all(|a| (0..n).all(|b| !poset.le(a, b) || pos[a] <= pos[b])) {
            out.push(perm.clone());
        }
        if !next_permutation(&mut perm) {
            return Ok(out);
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Which covers condition (3) of a point quantifies over.
#[derive(Clone, Copy, Debug)]
pub enum Covering<'a> {
    /// Every `U` with `a ◁ U`.
    Saturated(&'a CoverRelation),
    /// Only the basic covers.
    Basic,
}

/// Inhabited subsets that are upward closed, downward directed and meet
/// every cover of each of their members.
pub fn brute_points(fs: &FormalSpace, covering: Covering<'_>) -> Result<SubsetFamily> {
    let n = fs.size();
    cap(n, BRUTE_POINTS_CAP)?;
    let covers: Vec<Vec<u64>> = (0..n)
        .map(|a| match covering {
            Covering::Saturated(cov) => masks(n)
                .filter(|&u| cov.covers(a, &Subset::from_mask(n, u)))
                .collect(),
            Covering::Basic => fs.bcov(a).iter().map(Subset::to_mask).collect(),
        })
        .collect();
    let points = masks(n).filter(|&alpha| {
        let inhabited = alpha != 0;
        let upward = (0..n).all(|p| (0..n).all(|q| !(bit(alpha, p) && fs.le(p, q)) || bit(alpha, q)));
        let directed = (0..n).all(|p| {
            (0..n).all(|q| {
                !(bit(alpha, p) && bit(alpha, q))
                    || (0..n).any(|r| bit(alpha, r) && fs.le(r, p) && fs.le(r, q))
            })
        });
        let meets_covers = (0..n).all(|a| !bit(alpha, a) || covers[a].iter().all(|&u| u & alpha != 0));
        inhabited && upward && directed && meets_covers
    });
    SubsetFamily::new(n, points.map(|m| Subset::from_mask(n, m)))
}

/// Relations `F ⊆ ℙ × ℚ` (index `p·|ℚ| + q`) satisfying the five conditions
/// of a continuous map, every cover taken from the given relations.
pub fn brute_morphisms(
    src: &FormalSpace,
    dst: &FormalSpace,
    cov_src: &CoverRelation,
    cov_dst: &CoverRelation,
) -> Result<SubsetFamily> {
    let (np, nq) = (src.size(), dst.size());
    cap(np * nq, BRUTE_MORPHISMS_CAP)?;
    let src_covers: Vec<Vec<u64>> = (0..np)
        .map(|p| masks(np).filter(|&u| cov_src.covers(p, &Subset::from_mask(np, u))).collect())
        .collect();
    let dst_covers: Vec<Vec<u64>> = (0..nq)
        .map(|q| masks(nq).filter(|&t| cov_dst.covers(q, &Subset::from_mask(nq, t))).collect())
        .collect();
    // some cover of p lies inside `good`
    let covered_by = |p: usize, good: u64| src_covers[p].iter().any(|&u| u & !good == 0);

    let found = masks(np * nq).filter(|&f| {
        let rel = |p: usize, q: usize| bit(f, p * nq + q);
        let related_into = |pred: &dyn Fn(usize) -> bool| -> u64 {
            (0..np)
                .filter(|&p2| (0..nq).any(|q2| pred(q2) && rel(p2, q2)))
                .fold(0, |m, p2| m | 1 << p2)
        };
        let c1 = (0..np).all(|p| {
            (0..nq).all(|q| {
                !rel(p, q)
                    || (0..np).all(|p2| (0..nq).all(|q2| !(src.le(p2, p) && dst.le(q, q2)) || rel(p2, q2)))
            })
        });
        let c2 = (0..nq).all(|q| {
            let fiber = related_into(&|q2| q2 == q);
            (0..np).all(|p| rel(p, q) || !src_covers[p].iter().any(|&u| u & !fiber == 0))
        });
        let c3 = {
            let anywhere = related_into(&|_| true);
            (0..np).all(|p| covered_by(p, anywhere))
        };
        let c4 = (0..np).all(|p| {
            (0..nq).all(|q0| {
                (0..nq).all(|q1| {
                    !(rel(p, q0) && rel(p, q1))
                        || covered_by(p, related_into(&|q2| dst.le(q2, q0) && dst.le(q2, q1)))
                })
            })
        });
        let c5 = (0..np).all(|p| {
            (0..nq).all(|q| {
                !rel(p, q) || dst_covers[q].iter().all(|&t| covered_by(p, related_into(&|q2| bit(t, q2))))
            })
        });
        c1 && c2 && c3 && c4 && c5
    });
    SubsetFamily::new(np * nq, found.map(|m| Subset::from_mask(np * nq, m)))
}

/// States from which a cycle of the child graph can be reached.
pub fn states_reaching_cycles(coalg: &Coalgebra) -> Subset {
    let n = coalg.states().len();
    // reach[x][y]: y reachable from x in one or more steps
    let mut reach = vec![vec![false; n]; n];
    for x in 0..n {
        let mut stack: Vec<usize> = coalg.children(x).values().copied().collect();
        while let Some(y) = stack.pop() {
            if !reach[x][y] {
                reach[x][y] = true;
                stack.extend(coalg.children(y).values().copied());
            }
        }
    }
    let on_cycle: Vec<bool> = (0..n).map(|z| reach[z][z]).collect();
    Subset::from_indices(n, (0..n).filter(|&x| on_cycle[x] || (0..n).any(|z| reach[x][z] && on_cycle[z])))
}

/// Greatest relation on states with equal labels and related children along
/// each edge.
pub fn bisimilar_states(coalg: &Coalgebra) -> Vec<Vec<bool>> {
    let n = coalg.states().len();
    let mut rel: Vec<Vec<bool>> = (0..n)
        .map(|x| (0..n).map(|y| coalg.label(x) == coalg.label(y)).collect())
        .collect();
    loop {
        let mut changed = false;
        for x in 0..n {
            for y in 0..n {
                if rel[x][y] {
                    let ok = coalg
                        .children(x)
                        .iter()
                        .all(|(b, &cx)| coalg.children(y).get(b).is_some_and(|&cy| rel[cx][cy]));
                    if !ok {
                        rel[x][y] = false;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return rel;
        }
    }
}

/// Warshall's algorithm.
pub fn transitive_closure(n: usize, pairs: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut t = vec![vec![false; n]; n];
    for &(a, b) in pairs {
        t[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if t[i][k] {
                for j in 0..n {
                    if t[k][j] {
                        t[i][j] = true;
                    }
                }
            }
        }
    }
    t
}
