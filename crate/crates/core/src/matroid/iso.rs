//! Matroid isomorphism by backtracking over element images.
//!
//! Elements are first bucketed by a signature (how many circuits of each size
//! contain them, refined by the multiset of neighbour signatures). Candidate
//! images must share the signature, and every circuit that becomes fully
//! mapped is checked on both sides.

use std::collections::{HashMap, HashSet};

use super::Matroid;
use crate::bits::{bit, elements, is_subset, popcount, SubsetMask};

pub const DEFAULT_ISO_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoOutcome {
    /// `perm[e]` is the image in the second matroid of element `e` of the first.
    Isomorphic(Vec<usize>),
    NonIsomorphic,
    BudgetExceeded,
}

impl IsoOutcome {
    pub fn permutation(&self) -> Option<&[usize]> {
        match self {
            IsoOutcome::Isomorphic(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoOutcome::Isomorphic(_))
    }
}

fn degree_signatures(m: &Matroid) -> Vec<Vec<usize>> {
    let n = m.n();
    let mut sig = vec![vec![0usize; n + 1]; n];
    for &c in m.circuits() {
        let k = popcount(c);
        for e in elements(c) {
            sig[e][k] += 1;
        }
    }
    sig
}

type Signature = (Vec<usize>, Vec<(usize, Vec<usize>)>);

/// Second-round refinement: each element also records, for every other
/// element, how many circuits the two share together with that element's
/// first-round signature.
fn refined_signatures(m: &Matroid) -> Vec<Signature> {
    let base = degree_signatures(m);
    let n = m.n();
    let mut together = vec![vec![0usize; n]; n];
    for &c in m.circuits() {
        for a in elements(c) {
            for b in elements(c) {
                if a != b {
                    together[a][b] += 1;
                }
            }
        }
    }
    (0..n)
        .map(|a| {
            let mut nbr: Vec<(usize, Vec<usize>)> =
                (0..n).filter(|&b| b != a).map(|b| (together[a][b], base[b].clone())).collect();
            nbr.sort_unstable();
            (base[a].clone(), nbr)
        })
        .collect()
}

struct Search<'a> {
    m1: &'a Matroid,
    m2: &'a Matroid,
    c2: HashSet<SubsetMask>,
    c1: HashSet<SubsetMask>,
    candidates: Vec<Vec<usize>>,
    order: Vec<usize>,
    map: Vec<usize>,
    inv: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn image(&self, set: SubsetMask) -> SubsetMask {
        elements(set).fold(0, |acc, e| acc | bit(self.map[e]))
    }

    fn preimage(&self, set: SubsetMask) -> SubsetMask {
        elements(set).fold(0, |acc, e| acc | bit(self.inv[e]))
    }

    fn consistent(&self, x: usize, y: usize, done1: SubsetMask, done2: SubsetMask) -> bool {
        self.m1.by_element[x]
            .iter()
            .filter(|&&c| is_subset(c, done1))
            .all(|&c| self.c2.contains(&self.image(c)))
            && self.m2.by_element[y]
                .iter()
                .filter(|&&c| is_subset(c, done2))
                .all(|&c| self.c1.contains(&self.preimage(c)))
    }

    /// `Some(true)` found, `Some(false)` exhausted, `None` budget hit.
    fn extend(&mut self, depth: usize, done1: SubsetMask, done2: SubsetMask) -> Option<bool> {
        if depth == self.order.len() {
            return Some(true);
        }
        let x = self.order[depth];
        for i in 0..self.candidates[x].len() {
            let y = self.candidates[x][i];
            if done2 & bit(y) != 0 {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            self.map[x] = y;
            self.inv[y] = x;
            let (d1, d2) = (done1 | bit(x), done2 | bit(y));
            if self.consistent(x, y, d1, d2) && self.extend(depth + 1, d1, d2)? {
                return Some(true);
            }
        }
        Some(false)
    }
}

/// Searches for a bijection mapping the circuits of `m1` onto those of `m2`.
pub fn is_isomorphic(m1: &Matroid, m2: &Matroid, budget: u64) -> IsoOutcome {
    let n = m1.n();
    if n != m2.n() || m1.full_rank() != m2.full_rank() || m1.circuits().len() != m2.circuits().len() {
        return IsoOutcome::NonIsomorphic;
    }
    let mut sizes1: Vec<usize> = m1.circuits().iter().map(|&c| popcount(c)).collect();
    let mut sizes2: Vec<usize> = m2.circuits().iter().map(|&c| popcount(c)).collect();
    sizes1.sort_unstable();
    sizes2.sort_unstable();
    if sizes1 != sizes2 {
        return IsoOutcome::NonIsomorphic;
    }
    let s1 = refined_signatures(m1);
    let s2 = refined_signatures(m2);
    let mut count: HashMap<_, isize> = HashMap::new();
    for s in &s1 {
        *count.entry(s).or_default() += 1;
    }
    for s in &s2 {
        *count.entry(s).or_default() -= 1;
    }
    if count.values().any(|&v| v != 0) {
        return IsoOutcome::NonIsomorphic;
    }
    let candidates: Vec<Vec<usize>> =
        (0..n).map(|a| (0..n).filter(|&b| s1[a] == s2[b]).collect()).collect();
    // Most constrained first; ties broken towards elements sharing circuits
    // with already-ordered ones so checks fire early.
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed: SubsetMask = 0;
    while order.len() < n {
        let next = (0..n)
            .filter(|&e| placed & bit(e) == 0)
            .min_by_key(|&e| {
                let touching = m1.by_element[e].iter().filter(|&&c| c & placed != 0).count();
                (candidates[e].len(), std::cmp::Reverse(touching), e)
            })
            .unwrap();
        order.push(next);
        placed |= bit(next);
    }
    let mut search = Search {
        m1,
        m2,
        c1: m1.circuits().iter().copied().collect(),
        c2: m2.circuits().iter().copied().collect(),
        candidates,
        order,
        map: vec![usize::MAX; n],
        inv: vec![usize::MAX; n],
        nodes: 0,
        budget,
    };
    match search.extend(0, 0, 0) {
        Some(true) => IsoOutcome::Isomorphic(search.map),
        Some(false) => IsoOutcome::NonIsomorphic,
        None => IsoOutcome::BudgetExceeded,
    }
}
