//! Fixed-width subset masks over a ground set of at most 64 elements.

use std::fmt;

use crate::error::{Error, Result};

/// A subset of the ground set, bit `e` set iff element `e` (0-based) is present.
pub type SubsetMask = u64;

pub const MAX_GROUND: usize = 64;

/// Number of elements of a ground set `{0, .., n-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundSet {
    n: usize,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::GroundTooLarge(n));
        }
        Ok(GroundSet { n })
    }

    pub fn len(self) -> usize {
        self.n
    }

    pub fn is_empty(self) -> bool {
        self.n == 0
    }

    pub fn full(self) -> SubsetMask {
        full_mask(self.n)
    }

    pub fn contains(self, set: SubsetMask) -> bool {
        set & !self.full() == 0
    }

    pub fn complement(self, set: SubsetMask) -> SubsetMask {
        self.full() & !set
    }
}

#[inline]
pub fn bit(e: usize) -> SubsetMask {
    1u64 << e
}

#[inline]
pub fn full_mask(n: usize) -> SubsetMask {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
pub fn popcount(set: SubsetMask) -> usize {
    set.count_ones() as usize
}

#[inline]
pub fn is_subset(a: SubsetMask, b: SubsetMask) -> bool {
    a & !b == 0
}

/// Elements of `set` in ascending order.
pub fn elements(set: SubsetMask) -> Elements {
    Elements(set)
}

pub struct Elements(SubsetMask);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = popcount(self.0);
        (c, Some(c))
    }
}

impl ExactSizeIterator for Elements {}

pub fn from_elements<I: IntoIterator<Item = usize>>(it: I) -> SubsetMask {
    it.into_iter().fold(0, |acc, e| acc | bit(e))
}

/// All `k`-element subsets of `{0, .., n-1}` in increasing numeric order (Gosper's hack).
pub fn subsets_of_size(n: usize, k: usize) -> KSubsets {
    let next = if k > n {
        None
    } else if k == 0 {
        Some(0)
    } else {
        Some(full_mask(k))
    };
    KSubsets { limit: full_mask(n), next }
}

pub struct KSubsets {
    limit: SubsetMask,
    next: Option<SubsetMask>,
}

impl Iterator for KSubsets {
    type Item = SubsetMask;

    fn next(&mut self) -> Option<SubsetMask> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur.wrapping_add(c);
            if r == 0 {
                None
            } else {
                let nxt = (((r ^ cur) >> 2) / c) | r;
                (nxt & !self.limit == 0).then_some(nxt)
            }
        };
        Some(cur)
    }
}

/// All `k`-element subsets of an arbitrary mask, in increasing order of their
/// index pattern within `set`.
pub fn subsets_of_size_within(set: SubsetMask, k: usize) -> impl Iterator<Item = SubsetMask> {
    let elems: Vec<usize> = elements(set).collect();
    subsets_of_size(elems.len(), k).map(move |idx| {
        elements(idx).fold(0, |acc, i| acc | bit(elems[i]))
    })
}

/// All submasks of `set`, including `0` and `set` itself.
pub fn submasks(set: SubsetMask) -> impl Iterator<Item = SubsetMask> {
    let mut cur = Some(set);
    std::iter::from_fn(move || {
        let s = cur?;
        cur = if s == 0 { None } else { Some((s - 1) & set) };
        Some(s)
    })
}

/// Canonical order for families of subsets: popcount, then numeric value.
pub fn canonical_cmp(a: &SubsetMask, b: &SubsetMask) -> std::cmp::Ordering {
    popcount(*a).cmp(&popcount(*b)).then(a.cmp(b))
}

pub fn canonicalize(family: &mut Vec<SubsetMask>) {
    family.sort_by(canonical_cmp);
    family.dedup();
}

pub fn to_one_based(set: SubsetMask) -> Vec<usize> {
    elements(set).map(|e| e + 1).collect()
}

/// Builds a mask from 1-based labels, rejecting labels outside `[n]`.
pub fn from_one_based(labels: &[usize], n: usize) -> Result<SubsetMask> {
    let mut set = 0;
    for &l in labels {
        if l == 0 || l > n {
            return Err(Error::ElementOutOfRange { element: l, n });
        }
        set |= bit(l - 1);
    }
    Ok(set)
}

/// Display wrapper printing a set as `{1,2,7,8}` with 1-based labels.
pub struct OneBased(pub SubsetMask);

impl fmt::Display for OneBased {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in elements(self.0).enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", e + 1)?;
        }
        f.write_str("}")
    }
}

/// Compacts `set` onto the elements of `keep`: the i-th element of `keep`
/// becomes element i.
pub fn compress(set: SubsetMask, keep: SubsetMask) -> SubsetMask {
    let mut out = 0;
    for (i, e) in elements(keep).enumerate() {
        if set & bit(e) != 0 {
            out |= bit(i);
        }
    }
    out
}

/// Inverse of [`compress`].
pub fn expand(set: SubsetMask, keep: SubsetMask) -> SubsetMask {
    let mut out = 0;
    for (i, e) in elements(keep).enumerate() {
        if set & bit(i) != 0 {
            out |= bit(e);
        }
    }
    out
}
