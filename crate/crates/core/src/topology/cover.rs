use super::space::FormalSpace;
use crate::subset::{Subset, SubsetFamily};
use crate::{Error, Result};

/// Largest basic set for which covers are saturated exhaustively.
pub const MAX_SATURATED_BASICS: usize = 12;

/// `p ◁ U` for every basic `p` and every subset `U`, stored as one mask of
/// covered basics per subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverRelation {
    size: usize,
    covered: Vec<u32>,
}

impl CoverRelation {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn covers(&self, p: usize, u: &Subset) -> bool {
        self.covered[u.to_mask() as usize] >> p & 1 == 1
    }

    /// `{p : p ◁ U}`.
    pub fn covered_by(&self, u: &Subset) -> Subset {
        Subset::from_mask(self.size, self.covered[u.to_mask() as usize] as u64)
    }

    /// `Cov(p)`, every subset covering `p`.
    pub fn covers_of(&self, p: usize) -> SubsetFamily {
        SubsetFamily::new(
            self.size,
            (0..self.covered.len())
                .filter(|&u| self.covered[u] >> p & 1 == 1)
                .map(|u| Subset::from_mask(self.size, u as u64)),
        )
        .expect("masks within size")
    }

    pub fn minimal_covers_of(&self, p: usize) -> SubsetFamily {
        self.covers_of(p).minimal()
    }
}

/// The least cover relation containing `↓U` for each `U` and closed under the
/// localized axiom rule: if `p ≤ q`, `S ∈ BCov(q)` and every element of
/// `↓p ∩ ↓S` is covered by `U`, then `p ◁ U`.
pub fn saturate_cover(fs: &FormalSpace) -> Result<CoverRelation> {
    let n = fs.size();
    if n > MAX_SATURATED_BASICS {
        return Err(Error::CapExceeded {
            size: n,
            cap: MAX_SATURATED_BASICS,
        });
    }
    let mask = |s: &Subset| s.to_mask() as u32;
    let down_of: Vec<u32> = (0..n)
        .map(|p| mask(&fs.down(&Subset::from_indices(n, [p]))))
        .collect();
    let down = |m: u32| (0..n).filter(|&x| m >> x & 1 == 1).fold(0u32, |acc, x| acc | down_of[x]);
    // for each p, the sets ↓p ∩ ↓S over q ≥ p and S ∈ BCov(q)
    let premises: Vec<Vec<u32>> = (0..n)
        .map(|p| {
            (0..n)
                .filter(|&q| fs.le(p, q))
                .flat_map(|q| fs.bcov(q).iter().map(|s| down_of[p] & down(mask(s))))
                .collect()
        })
        .collect();
    let covered = (0..1u32 << n)
        .map(|u| {
            let mut c = down(u);
            loop {
                let before = c;
                for p in 0..n {
                    if c >> p & 1 == 0 && premises[p].iter().any(|&m| m & !c == 0) {
                        c |= 1 << p;
                    }
                }
                if c == before {
                    return c;
                }
            }
        })
        .collect();
    Ok(CoverRelation { size: n, covered })
}

/// The same space with `BCov(p)` replaced by the minimal saturated covers of
/// `p`, so that `U` covers `p` exactly when it contains a basic cover.
pub fn presentation_closure(fs: &FormalSpace) -> Result<FormalSpace> {
    let cov = saturate_cover(fs)?;
    let bcov = (0..fs.size())
        .map(|p| cov.minimal_covers_of(p).members().to_vec())
        .collect();
    fs.with_bcov(bcov)
}

/// Whether every saturated cover of each basic contains one of its basic covers.
pub fn is_presentation(fs: &FormalSpace) -> Result<bool> {
    let cov = saturate_cover(fs)?;
    Ok((0..fs.size()).all(|p| {
        cov.minimal_covers_of(p)
            .iter()
            .all(|u| fs.bcov(p).iter().any(|s| s.is_subset(u)))
            && fs.bcov(p).iter().all(|s| cov.covers(p, s))
    }))
}
