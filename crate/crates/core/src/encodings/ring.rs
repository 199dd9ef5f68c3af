use crate::rules::{Rule, RuleSystem};
use crate::subset::{Subset, Universe};
use crate::{Error, Result};

/// A finite commutative ring with unit, given by operation tables over
/// element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRing {
    carrier: Universe,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    zero: usize,
    one: usize,
}

impl FiniteRing {
    /// Validates every ring axiom exhaustively.
    pub fn new(
        carrier: Universe,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        zero: usize,
        one: usize,
    ) -> Result<Self> {
        let ring = Self {
            carrier,
            add,
            mul,
            zero,
            one,
        };
        ring.validate()?;
        Ok(ring)
    }

    /// `ℤ/n`, elements named `0..n-1`.
    pub fn modular(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRing("modulus must be positive".into()));
        }
        let table = |f: fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
            (0..n).map(|a| (0..n).map(|b| f(a, b) % n).collect()).collect()
        };
        Self::new(
            Universe::numbered(n),
            table(|a, b| a + b),
            table(|a, b| a * b),
            0,
            1 % n,
        )
    }

    fn validate(&self) -> Result<()> {
        let n = self.carrier.len();
        let bad = |msg: String| Err(Error::InvalidRing(msg));
        if n == 0 {
            return bad("empty carrier".into());
        }
        for (name, t) in [("addition", &self.add), ("multiplication", &self.mul)] {
            if t.len() != n || t.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
                return bad(format!("{name} table is not a total operation on {n} elements"));
            }
        }
        if self.zero >= n || self.one >= n {
            return bad("zero or one outside the carrier".into());
        }
        let elems = 0..n;
        for a in elems.clone() {
            if self.add(self.zero, a) != a {
                return bad(format!("zero is not an additive identity for {}", self.name(a)));
            }
            if self.mul(self.one, a) != a {
                return bad(format!("one is not a multiplicative identity for {}", self.name(a)));
            }
            if !elems.clone().any(|b| self.add(a, b) == self.zero) {
                return bad(format!("{} has no additive inverse", self.name(a)));
            }
            for b in elems.clone() {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return bad(format!("not commutative at ({}, {})", self.name(a), self.name(b)));
                }
                for c in elems.clone() {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c))
                        || self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
                    {
                        return bad("not associative".into());
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return bad("not distributive".into());
                    }
                }
            }
        }
        Ok(())
    }

    pub fn carrier(&self) -> &Universe {
        &self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.len()
    }

    pub fn name(&self, a: usize) -> &str {
        self.carrier.name(a)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }
}

/// Rules whose closed sets are `∅` and the prime ideals:
/// `{r,s} ⊢ {r+s}`, `{s} ⊢ {rs}`, `{rs} ⊢ {r,s}` and `{1} ⊢ ∅`.
pub fn prime_ideal_rules(ring: &FiniteRing) -> RuleSystem {
    let n = ring.size();
    let set = |xs: &[usize]| Subset::from_indices(n, xs.iter().copied());
    let mut rules = Vec::with_capacity(3 * n * n + 1);
    for r in 0..n {
        for s in 0..n {
            rules.push(Rule::new(set(&[r, s]), set(&[ring.add(r, s)])));
            rules.push(Rule::new(set(&[s]), set(&[ring.mul(r, s)])));
            rules.push(Rule::new(set(&[ring.mul(r, s)]), set(&[r, s])));
        }
    }
    rules.push(Rule::new(set(&[ring.one()]), Subset::empty(n)));
    RuleSystem::new(ring.carrier().clone(), rules).expect("rules built over the carrier")
}
