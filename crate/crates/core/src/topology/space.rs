use crate::subset::{Subset, Universe};
use crate::{Error, Result};

/// Basics with a preorder and, for each basic, a finite list of basic covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSpace {
    basics: Universe,
    le: Vec<bool>,
    bcov: Vec<Vec<Subset>>,
}

impl FormalSpace {
    /// `order` must already be reflexive and transitive.
    pub fn new(
        basics: Universe,
        order: impl IntoIterator<Item = (usize, usize)>,
        bcov: Vec<Vec<Subset>>,
    ) -> Result<Self> {
        let n = basics.len();
        let le = Self::matrix(n, order)?;
        let fs = Self::assemble(basics, le, bcov)?;
        for p in 0..n {
            if !fs.le(p, p) {
                return Err(Error::InvalidSpace(format!("order not reflexive at {}", fs.basics.name(p))));
            }
            for q in 0..n {
                for r in 0..n {
                    if fs.le(p, q) && fs.le(q, r) && !fs.le(p, r) {
                        return Err(Error::InvalidSpace("order not transitive".into()));
                    }
                }
            }
        }
        Ok(fs)
    }

    /// Uses the reflexive-transitive closure of `order`.
    pub fn generated(
        basics: Universe,
        order: impl IntoIterator<Item = (usize, usize)>,
        bcov: Vec<Vec<Subset>>,
    ) -> Result<Self> {
        let n = basics.len();
        let mut le = Self::matrix(n, order)?;
        for i in 0..n {
            le[i * n + i] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if le[i * n + k] && le[k * n + j] {
                        le[i * n + j] = true;
                    }
                }
            }
        }
        Self::assemble(basics, le, bcov)
    }

    fn matrix(n: usize, order: impl IntoIterator<Item = (usize, usize)>) -> Result<Vec<bool>> {
        let mut le = vec![false; n * n];
        for (a, b) in order {
            if a >= n || b >= n {
                return Err(Error::InvalidSpace(format!("order pair ({a},{b}) out of range")));
            }
            le[a * n + b] = true;
        }
        Ok(le)
    }

    fn assemble(basics: Universe, le: Vec<bool>, mut bcov: Vec<Vec<Subset>>) -> Result<Self> {
        let n = basics.len();
        if bcov.is_empty() && n > 0 {
            bcov = vec![Vec::new(); n];
        }
        if bcov.len() != n {
            return Err(Error::InvalidSpace(format!(
                "covers given for {} basics, expected {n}",
                bcov.len()
            )));
        }
        for covers in &mut bcov {
            for s in covers.iter() {
                s.check_len(n)?;
            }
            covers.sort();
            covers.dedup();
        }
        Ok(Self { basics, le, bcov })
    }

    pub fn basics(&self) -> &Universe {
        &self.basics
    }

    pub fn size(&self) -> usize {
        self.basics.len()
    }

    pub fn le(&self, p: usize, q: usize) -> bool {
        self.le[p * self.size() + q]
    }

    pub fn order_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.size();
        (0..n).flat_map(move |p| (0..n).map(move |q| (p, q))).filter(|&(p, q)| self.le(p, q))
    }

    pub fn bcov(&self, p: usize) -> &[Subset] {
        &self.bcov[p]
    }

    /// `↓S = {r : r ≤ s for some s ∈ S}`.
    pub fn down(&self, s: &Subset) -> Subset {
        let n = self.size();
        Subset::from_indices(n, (0..n).filter(|&r| s.iter().any(|x| self.le(r, x))))
    }

    /// `{r : r ≤ p and r ≤ q}`.
    pub fn common_lower(&self, p: usize, q: usize) -> Subset {
        let n = self.size();
        Subset::from_indices(n, (0..n).filter(|&r| self.le(r, p) && self.le(r, q)))
    }

    pub fn with_bcov(&self, bcov: Vec<Vec<Subset>>) -> Result<Self> {
        Self::assemble(self.basics.clone(), self.le.clone(), bcov)
    }
}
