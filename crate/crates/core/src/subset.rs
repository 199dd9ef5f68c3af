//! Universes, bit-vector subsets and canonically ordered families of subsets.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

/// An ordered list of distinct element names. Element `i` is the `i`-th name.
#[derive(Clone, PartialEq, Eq)]
pub struct Universe {
    inner: Arc<UniverseInner>,
}

#[derive(PartialEq, Eq)]
struct UniverseInner {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl Universe {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        Ok(Self {
            inner: Arc::new(UniverseInner { names, index }),
        })
    }

    /// Universe `{0, 1, ..., n-1}` named by decimal indices.
    pub fn numbered(n: usize) -> Self {
        Self::new((0..n).map(|i| i.to_string())).expect("decimal names are distinct")
    }

    pub fn len(&self) -> usize {
        self.inner.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.inner.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.inner.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.inner.index.get(name).copied()
    }

    pub fn lookup(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownElement(name.to_owned()))
    }

    /// Builds a subset from element names.
    pub fn subset<I, S>(&self, names: I) -> Result<Subset>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut s = Subset::empty(self.len());
        for name in names {
            s.insert(self.lookup(name.as_ref())?);
        }
        Ok(s)
    }

    /// Element names of `s`, in declaration order.
    pub fn render(&self, s: &Subset) -> Vec<String> {
        s.iter().map(|i| self.name(i).to_owned()).collect()
    }

    /// Same universe with one more element appended.
    pub fn extended(&self, name: &str) -> Result<Self> {
        if self.index_of(name).is_some() {
            return Err(Error::NameClash(name.to_owned()));
        }
        Self::new(self.names().iter().cloned().chain([name.to_owned()]))
    }
}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names()).finish()
    }
}

const WORD: usize = 64;

/// A subset of a universe of `len` elements, stored as a bit vector.
///
/// Subsets compare by the numeric value of the bit vector, with element 0 as
/// the least significant bit.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    len: usize,
    words: Vec<u64>,
}

impl Subset {
    pub fn empty(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut s = Self::empty(len);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Subset whose bits are the low `len` bits of `mask`. Requires `len <= 64`.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= WORD, "mask subsets are limited to 64 elements");
        let mut s = Self::empty(len);
        if len > 0 {
            let keep = if len == WORD { u64::MAX } else { (1u64 << len) - 1 };
            s.words[0] = mask & keep;
        }
        s
    }

    /// Low 64 bits of the bit vector.
    pub fn to_mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    /// Size of the ambient universe.
    pub fn universe_len(&self) -> usize {
        self.len
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "element {i} outside universe of {}", self.len);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    pub fn remove(&mut self, i: usize) {
        if i < self.len {
            self.words[i / WORD] &= !(1 << (i % WORD));
        }
    }

    pub fn with(mut self, i: usize) -> Self {
        self.insert(i);
        self
    }

    /// Number of members.
    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_proper_subset(&self, other: &Self) -> bool {
        self.is_subset(other) && self != other
    }

    /// `true` when the intersection is inhabited.
    pub fn meets(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> Self {
        Self::full(self.len).difference(self)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        debug_assert_eq!(self.len, other.len);
        Self {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// Member indices in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &bits)| {
            let mut bits = bits;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let tz = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * WORD + tz)
            })
        })
    }

    /// Re-embeds into a universe of `len` elements, keeping members below `len`.
    pub fn resized(&self, len: usize) -> Self {
        Self::from_indices(len, self.iter().filter(|&i| i < len))
    }

    pub(crate) fn check_len(&self, expected: usize) -> Result<()> {
        if self.len == expected {
            Ok(())
        } else {
            Err(Error::UniverseMismatch {
                expected,
                found: self.len,
            })
        }
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            self.words
                .iter()
                .rev()
                .cmp(other.words.iter().rev())
        })
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A duplicate-free collection of subsets in ascending bit-vector order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SubsetFamily {
    universe_len: usize,
    members: Vec<Subset>,
}

impl SubsetFamily {
    pub fn empty(universe_len: usize) -> Self {
        Self {
            universe_len,
            members: Vec::new(),
        }
    }

    /// Canonicalizes `members`: sorts and removes duplicates.
    pub fn new(universe_len: usize, members: impl IntoIterator<Item = Subset>) -> Result<Self> {
        let mut members: Vec<Subset> = members.into_iter().collect();
        for m in &members {
            m.check_len(universe_len)?;
        }
        members.sort_unstable();
        members.dedup();
        Ok(Self {
            universe_len,
            members,
        })
    }

    pub(crate) fn from_sorted(universe_len: usize, members: Vec<Subset>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Self {
            universe_len,
            members,
        }
    }

    pub fn universe_len(&self) -> usize {
        self.universe_len
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Subset> {
        self.members.iter()
    }

    pub fn contains(&self, s: &Subset) -> bool {
        self.members.binary_search(s).is_ok()
    }

    /// `true` when every member of `self` belongs to `other`.
    pub fn is_subfamily(&self, other: &Self) -> bool {
        self.members.iter().all(|m| other.contains(m))
    }

    pub fn filter(&self, mut keep: impl FnMut(&Subset) -> bool) -> Self {
        Self::from_sorted(
            self.universe_len,
            self.members.iter().filter(|m| keep(m)).cloned().collect(),
        )
    }

    pub fn without(&self, s: &Subset) -> Self {
        self.filter(|m| m != s)
    }

    /// Inclusion-minimal members.
    pub fn minimal(&self) -> Self {
        // A proper subset has a strictly smaller bit-vector value, so scanning in
        // canonical order only needs to compare against minimal sets found so far.
        let mut out: Vec<Subset> = Vec::new();
        for m in &self.members {
            if !out.iter().any(|k| k.is_subset(m)) {
                out.push(m.clone());
            }
        }
        Self::from_sorted(self.universe_len, out)
    }

    /// Inclusion-maximal members.
    pub fn maximal(&self) -> Self {
        let mut out: Vec<Subset> = Vec::new();
        for m in self.members.iter().rev() {
            if !out.iter().any(|k| m.is_subset(k)) {
                out.push(m.clone());
            }
        }
        out.reverse();
        Self::from_sorted(self.universe_len, out)
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::new(
            self.universe_len,
            self.members.iter().chain(&other.members).cloned(),
        )
        .expect("families over the same universe")
    }

    pub fn render(&self, universe: &Universe) -> Vec<Vec<String>> {
        self.members.iter().map(|m| universe.render(m)).collect()
    }
}

impl<'a> IntoIterator for &'a SubsetFamily {
    type Item = &'a Subset;
    type IntoIter = std::slice::Iter<'a, Subset>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// Every subset of a universe of `len <= 63` elements, in canonical order.
pub(crate) fn all_subsets(len: usize) -> impl Iterator<Item = Subset> {
    assert!(len < WORD);
    (0..1u64 << len).map(move |mask| Subset::from_mask(len, mask))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn universe_rejects_duplicates() {
        assert_eq!(
            Universe::new(["a", "b", "a"]).unwrap_err(),
            Error::DuplicateName("a".into())
        );
    }

    #[test]
    fn canonical_order_is_numeric_with_element_zero_lowest() {
        let u = Universe::new(["a", "b", "c"]).unwrap();
        let fam = SubsetFamily::new(
            3,
            [
                u.subset(["b", "c"]).unwrap(),
                u.subset(["a"]).unwrap(),
                u.subset(["a", "c"]).unwrap(),
                u.subset(["b"]).unwrap(),
                u.subset(["a"]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(
            fam.render(&u),
            vec![vec!["a"], vec!["b"], vec!["a", "c"], vec!["b", "c"]]
        );
    }

    #[test]
    fn wide_subsets_order_by_high_word_first() {
        let lo = Subset::from_indices(130, [0, 1, 2]);
        let hi = Subset::from_indices(130, [129]);
        assert!(lo < hi);
        assert_eq!(hi.iter().collect::<Vec<_>>(), vec![129]);
    }

    #[test]
    fn minimal_and_maximal() {
        let fam = SubsetFamily::new(3, all_subsets(3).filter(|s| s.count() == 1 || s.count() == 2))
            .unwrap();
        assert_eq!(fam.minimal().len(), 3);
        assert!(fam.minimal().iter().all(|s| s.count() == 1));
        assert!(fam.maximal().iter().all(|s| s.count() == 2));
    }

    proptest! {
        #[test]
        fn order_agrees_with_mask_value(a in any::<u32>(), b in any::<u32>()) {
            let sa = Subset::from_mask(32, a as u64);
            let sb = Subset::from_mask(32, b as u64);
            prop_assert_eq!(sa.cmp(&sb), a.cmp(&b));
            prop_assert_eq!(sa.is_subset(&sb), a & !b == 0);
            prop_assert_eq!(sa.meets(&sb), a & b != 0);
            prop_assert_eq!(sa.union(&sb).to_mask(), (a | b) as u64);
        }

        #[test]
        fn minimal_members_are_pairwise_incomparable(masks in prop::collection::vec(0u64..64, 0..12)) {
            let fam = SubsetFamily::new(6, masks.into_iter().map(|m| Subset::from_mask(6, m))).unwrap();
            let min = fam.minimal();
            for x in &fam {
                prop_assert!(min.iter().any(|m| m.is_subset(x)));
            }
            for a in &min {
                for b in &min {
                    prop_assert!(a == b || !a.is_subset(b));
                }
            }
        }
    }
}
