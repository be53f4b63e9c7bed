use std::collections::HashMap;
use std::fmt;

use super::{validate_circuits, Matroid};
use crate::bits::{canonicalize, is_subset, popcount, GroundSet, OneBased, SubsetMask};
use crate::error::{Error, Result};

/// A candidate hyperplane family together with the rank it should produce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperplaneFamily {
    pub hyperplanes: Vec<SubsetMask>,
    pub claimed_rank: usize,
}

impl HyperplaneFamily {
    pub fn new(mut hyperplanes: Vec<SubsetMask>, claimed_rank: usize) -> Self {
        canonicalize(&mut hyperplanes);
        HyperplaneFamily { hyperplanes, claimed_rank }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HyperplaneViolation {
    OutsideGround(SubsetMask),
    WholeGround,
    NotAntichain { smaller: SubsetMask, larger: SubsetMask },
    Exchange { h1: SubsetMask, h2: SubsetMask, element: usize },
}

impl fmt::Display for HyperplaneViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            HyperplaneViolation::OutsideGround(h) => write!(f, "{} is not inside the ground set", OneBased(h)),
            HyperplaneViolation::WholeGround => write!(f, "the whole ground set is listed"),
            HyperplaneViolation::NotAntichain { smaller, larger } => {
                write!(f, "{} is contained in {}", OneBased(smaller), OneBased(larger))
            }
            HyperplaneViolation::Exchange { h1, h2, element } => write!(
                f,
                "no member contains {} n {} together with {}",
                OneBased(h1),
                OneBased(h2),
                element + 1
            ),
        }
    }
}

/// Hyperplane axioms: proper subsets of the ground set, pairwise incomparable,
/// and for distinct `H1, H2` and `e` outside both, some member contains
/// `(H1 n H2) + e`.
pub fn validate_hyperplanes(family: &HyperplaneFamily, ground: GroundSet) -> Result<(), HyperplaneViolation> {
    let fam = &family.hyperplanes;
    for &h in fam {
        if !ground.contains(h) {
            return Err(HyperplaneViolation::OutsideGround(h));
        }
        if h == ground.full() {
            return Err(HyperplaneViolation::WholeGround);
        }
    }
    for (i, &a) in fam.iter().enumerate() {
        for &b in &fam[i + 1..] {
            if is_subset(a, b) || is_subset(b, a) {
                let (smaller, larger) = if popcount(a) <= popcount(b) { (a, b) } else { (b, a) };
                return Err(HyperplaneViolation::NotAntichain { smaller, larger });
            }
        }
    }
    // reach(I) = union of all members containing I
    let mut reach: HashMap<SubsetMask, SubsetMask> = HashMap::new();
    for (i, &a) in fam.iter().enumerate() {
        for &b in &fam[i + 1..] {
            let meet = a & b;
            let covered = *reach
                .entry(meet)
                .or_insert_with(|| fam.iter().filter(|&&h| is_subset(meet, h)).fold(0, |acc, &h| acc | h));
            let missing = ground.complement(a | b) & !covered;
            if missing != 0 {
                return Err(HyperplaneViolation::Exchange { h1: a, h2: b, element: missing.trailing_zeros() as usize });
            }
        }
    }
    Ok(())
}

/// Builds the matroid with the given hyperplanes. The complements are the
/// cocircuits, i.e. the circuits of the dual; the rank function is recovered
/// as `r(X) = |X| + r*(E - X) - r*(E)`.
pub fn matroid_from_hyperplanes(family: &HyperplaneFamily, ground: GroundSet) -> Result<Matroid> {
    validate_hyperplanes(family, ground).map_err(Error::InvalidHyperplanes)?;
    let cocircuits: Vec<SubsetMask> = family.hyperplanes.iter().map(|&h| ground.complement(h)).collect();
    validate_circuits(&cocircuits, ground).map_err(Error::InvalidCircuits)?;
    let dual = Matroid::from_circuits_unchecked(ground.len(), cocircuits);
    let full = ground.full();
    let dual_rank = dual.full_rank();
    let computed = ground.len() - dual_rank;
    if computed != family.claimed_rank {
        return Err(Error::RankMismatch { claimed: family.claimed_rank, computed });
    }
    Matroid::from_rank_fn(ground.len(), |x| popcount(x) + dual.rank(full & !x) - dual_rank)
}
