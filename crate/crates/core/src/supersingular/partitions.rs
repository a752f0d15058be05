//! Shadowed partitions `P_2(n)` and the bracket products attached to them.

use crate::algebra::poly::{FqPoly, PolyRing};
use crate::error::{Error, Result};
use crate::legendre::index::IndexSet;

pub const MAX_PARTITION_N: u32 = 30;

/// `(S_1, S_2)` with `S_1`, `S_2`, `S_2 + 1` partitioning {0, ..., n-1}:
/// a tiling by monominoes (S_1) and dominoes starting at S_2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ShadowedPair {
    pub s1: IndexSet,
    pub s2: IndexSet,
    pub n: u32,
}

impl ShadowedPair {
    pub fn union(&self) -> IndexSet {
        self.s1.union(self.s2)
    }

    /// The partition predicate, with empty parts allowed.
    pub fn is_valid(&self) -> bool {
        let Some(shifted) = self.s2.shifted() else {
            return false;
        };
        let parts = [self.s1, self.s2, shifted];
        let disjoint =
            (0..3).all(|a| (a + 1..3).all(|b| parts[a].intersection(parts[b]).is_empty()));
        let all = parts.iter().fold(IndexSet::EMPTY, |acc, s| acc.union(*s));
        disjoint && self.n <= 64 && all == IndexSet::range(self.n)
    }
}

/// All of `P_2(n)`, monomino-first depth-first order.
pub fn enum_p2(n: u32) -> Result<Vec<ShadowedPair>> {
    if n > MAX_PARTITION_N {
        return Err(Error::bound("n for P_2(n)", n, MAX_PARTITION_N));
    }
    let mut out = Vec::new();
    let mut stack = vec![(0u32, IndexSet::EMPTY, IndexSet::EMPTY)];
    while let Some((i, s1, s2)) = stack.pop() {
        if i == n {
            out.push(ShadowedPair { s1, s2, n });
            continue;
        }
        // Pushed in reverse so the monomino branch is explored first.
        if i + 1 < n {
            stack.push((i + 2, s1, s2.with(i)));
        }
        stack.push((i + 1, s1.with(i), s2));
    }
    Ok(out)
}

/// `(D_n(S), L_n(S))` with `D_n(S) = prod_{i in S} [n-i]^(q^i)` and
/// `L_n(S) = (-1)^|S| [n] prod_{0 != i in S} [i]`.
pub fn weight_products(r: &PolyRing, n: u32, s: IndexSet) -> Result<(FqPoly, FqPoly)> {
    check_subset(n, s)?;
    let mut d = FqPoly::one();
    for f in d_factors(r, n, s)? {
        d = r.mul(&d, &f);
    }
    let mut l = FqPoly::one();
    for f in l_factors(r, n, s)? {
        l = r.mul(&l, &f);
    }
    Ok((d, sign(r, s.len(), l)))
}

/// `D_n / D_n(S)` and `(-1)^n L_n / L_n(S)`, by exact division one factor
/// at a time.
pub fn product_quotients(
    r: &PolyRing,
    n: u32,
    s: IndexSet,
    d_n: &FqPoly,
    l_n: &FqPoly,
) -> Result<(FqPoly, FqPoly)> {
    check_subset(n, s)?;
    let mut d = d_n.clone();
    for f in d_factors(r, n, s)? {
        d = r.exact_div(&d, &f)?;
    }
    let mut l = sign(r, n, l_n.clone());
    for f in l_factors(r, n, s)? {
        l = r.exact_div(&l, &f)?;
    }
    Ok((d, sign(r, s.len(), l)))
}

fn check_subset(n: u32, s: IndexSet) -> Result<()> {
    if n == 0 || n > 63 {
        return Err(Error::pre("weight products need 1 <= n <= 63"));
    }
    if s.intersection(IndexSet::range(n)) != s {
        return Err(Error::pre(format!("{s:?} is not a subset of N({n})")));
    }
    Ok(())
}

fn d_factors(r: &PolyRing, n: u32, s: IndexSet) -> Result<Vec<FqPoly>> {
    s.iter().map(|i| r.bracket_frobenius(n - i, i)).collect()
}

fn l_factors(r: &PolyRing, n: u32, s: IndexSet) -> Result<Vec<FqPoly>> {
    std::iter::once(n)
        .chain(s.iter().filter(|&i| i != 0))
        .map(|i| r.bracket(i))
        .collect()
}

fn sign(r: &PolyRing, k: u32, p: FqPoly) -> FqPoly {
    if k % 2 == 1 && !r.fq().is_char_two() {
        r.neg(&p)
    } else {
        p
    }
}
