//! Finite subsets of {0, ..., 63} and their shadow data.

use std::fmt;

use crate::algebra::field::FieldContext;
use crate::algebra::poly::FqPoly;
use crate::error::{Error, Result};

/// A subset of {0, ..., 63} as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet(u64);

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);

    pub fn from_bits(bits: u64) -> IndexSet {
        IndexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// {0, ..., n-1}.
    pub fn range(n: u32) -> IndexSet {
        assert!(n <= 64, "index sets hold at most 64 elements");
        IndexSet(if n == 64 { u64::MAX } else { (1u64 << n) - 1 })
    }

    pub fn contains(self, i: u32) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn with(self, i: u32) -> IndexSet {
        IndexSet(self.0 | 1 << i)
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: IndexSet) -> IndexSet {
        IndexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: IndexSet) -> IndexSet {
        IndexSet(self.0 & other.0)
    }

    /// `S + 1`; `None` if 63 is in S.
    pub fn shifted(self) -> Option<IndexSet> {
        (self.0 >> 63 == 0).then_some(IndexSet(self.0 << 1))
    }

    pub fn iter(self) -> impl Iterator<Item = u32> {
        (0..64).filter(move |&i| self.contains(i))
    }

    /// `M(S) = {i in S : i - 1 not in S}`, the first element of each run.
    pub fn shadow(self) -> IndexSet {
        IndexSet(self.0 & !(self.0 << 1))
    }

    /// `w(S) = sum_{i in S} q^i`, or `None` on overflow.
    pub fn weight(self, q: u64) -> Option<u128> {
        self.iter().try_fold(0u128, |acc, i| {
            let term = (q as u128).checked_pow(i)?;
            acc.checked_add(term)
        })
    }

    /// Exponent of `m(S) = T^(w(M(S)) - |M(S)|)`.
    pub fn monomial_degree(self, q: u64) -> Option<u128> {
        let m = self.shadow();
        Some(m.weight(q)? - m.len() as u128)
    }

    /// All subsets of {0, ..., n-1}, in increasing bitmask order.
    pub fn subsets(n: u32) -> impl Iterator<Item = IndexSet> {
        assert!(n < 64, "subset enumeration needs n < 64");
        (0..1u64 << n).map(IndexSet)
    }
}

impl FromIterator<u32> for IndexSet {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> IndexSet {
        iter.into_iter().fold(IndexSet::EMPTY, IndexSet::with)
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Checked weight, with the configured degree bound applied.
pub(crate) fn bounded_weight(s: IndexSet, fq: &FieldContext, what: &'static str) -> Result<u64> {
    let w = s.weight(fq.q()).ok_or(Error::bound(
        what,
        u128::MAX,
        fq.limits().max_degree as u128,
    ))?;
    fq.limits().check_degree(what, w)?;
    Ok(w as u64)
}

/// `(M(S), w(S), m(S))`.
pub fn shadow_stats(s: IndexSet, fq: &FieldContext) -> Result<(IndexSet, u64, FqPoly)> {
    let w = bounded_weight(s, fq, "w(S)")?;
    let m = s.shadow();
    let deg = bounded_weight(m, fq, "deg m(S)")? - m.len() as u64;
    Ok((m, w, FqPoly::t_pow(deg as usize)))
}
