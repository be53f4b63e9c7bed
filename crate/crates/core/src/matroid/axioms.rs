use std::fmt;

use crate::bits::{bit, canonicalize, elements, is_subset, GroundSet, OneBased, SubsetMask};

/// First violation found by [`validate_circuits`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CircuitViolation {
    Empty,
    OutsideGround(SubsetMask),
    NotAntichain { smaller: SubsetMask, larger: SubsetMask },
    Elimination { c1: SubsetMask, c2: SubsetMask, element: usize },
}

impl fmt::Display for CircuitViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CircuitViolation::Empty => write!(f, "the empty set is listed as a circuit"),
            CircuitViolation::OutsideGround(c) => write!(f, "{} is not inside the ground set", OneBased(c)),
            CircuitViolation::NotAntichain { smaller, larger } => {
                write!(f, "{} is contained in {}", OneBased(smaller), OneBased(larger))
            }
            CircuitViolation::Elimination { c1, c2, element } => write!(
                f,
                "no circuit inside ({} u {}) - {}",
                OneBased(c1),
                OneBased(c2),
                element + 1
            ),
        }
    }
}

/// Checks the circuit axioms: nonempty members, antichain, and elimination
/// (for distinct `C1, C2` and `e` in both, some circuit lies in `(C1 u C2) - e`).
pub fn validate_circuits(family: &[SubsetMask], ground: GroundSet) -> Result<(), CircuitViolation> {
    let mut fam = family.to_vec();
    canonicalize(&mut fam);
    for &c in &fam {
        if c == 0 {
            return Err(CircuitViolation::Empty);
        }
        if !ground.contains(c) {
            return Err(CircuitViolation::OutsideGround(c));
        }
    }
    for (i, &a) in fam.iter().enumerate() {
        for &b in &fam[i + 1..] {
            if is_subset(a, b) {
                return Err(CircuitViolation::NotAntichain { smaller: a, larger: b });
            }
        }
    }
    // Elimination fails for (C1, C2, e) iff e lies in every circuit inside C1 u C2.
    for (i, &a) in fam.iter().enumerate() {
        for &b in &fam[i + 1..] {
            let shared = a & b;
            if shared == 0 {
                continue;
            }
            let union = a | b;
            let mut bad = shared;
            for &c in &fam {
                if is_subset(c, union) {
                    bad &= c;
                    if bad == 0 {
                        break;
                    }
                }
            }
            if bad != 0 {
                return Err(CircuitViolation::Elimination {
                    c1: a,
                    c2: b,
                    element: bad.trailing_zeros() as usize,
                });
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankViolationKind {
    /// `r(empty) != 0`
    Normalization,
    /// `r(X) > r(X + e)`
    Monotone,
    /// `r(X + e) > r(X) + 1`
    UnitIncrease,
    /// `r(X u Y) + r(X n Y) > r(X) + r(Y)`
    Submodular,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankViolation {
    pub kind: RankViolationKind,
    pub x: SubsetMask,
    pub y: SubsetMask,
}

impl fmt::Display for RankViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} fails at X = {}, Y = {}", self.kind, OneBased(self.x), OneBased(self.y))
    }
}

/// Exhaustive check of the rank axioms in local form: `r(empty) = 0`,
/// `r(X) <= r(X+e) <= r(X)+1` and `r(X+a) + r(X+b) >= r(X+a+b) + r(X)`.
/// Together these are equivalent to normalization, monotonicity, unit
/// increase and submodularity.
pub fn check_rank_axioms<F: Fn(SubsetMask) -> usize>(n: usize, rank: F) -> Result<(), RankViolation> {
    assert!(n <= 24, "exhaustive rank check needs n <= 24");
    let table: Vec<usize> = (0..1u64 << n).map(&rank).collect();
    if table[0] != 0 {
        return Err(RankViolation { kind: RankViolationKind::Normalization, x: 0, y: 0 });
    }
    let full = crate::bits::full_mask(n);
    for x in 0..=full {
        let rx = table[x as usize];
        let outside = full & !x;
        for a in elements(outside) {
            let xa = x | bit(a);
            let ra = table[xa as usize];
            if ra < rx {
                return Err(RankViolation { kind: RankViolationKind::Monotone, x, y: xa });
            }
            if ra > rx + 1 {
                return Err(RankViolation { kind: RankViolationKind::UnitIncrease, x, y: xa });
            }
            for b in elements(outside & !((bit(a) << 1) - 1)) {
                let xb = x | bit(b);
                if ra + table[xb as usize] < table[(xa | xb) as usize] + rx {
                    return Err(RankViolation { kind: RankViolationKind::Submodular, x: xa, y: xb });
                }
            }
        }
    }
    Ok(())
}

/// Submodularity over every pair of subsets. Quadratic in `2^n`.
pub fn check_submodular_pairs<F: Fn(SubsetMask) -> usize>(n: usize, rank: F) -> Result<(), RankViolation> {
    assert!(n <= 12, "pairwise submodularity check needs n <= 12");
    let table: Vec<usize> = (0..1u64 << n).map(&rank).collect();
    let size = 1u64 << n;
    for x in 0..size {
        for y in x + 1..size {
            if table[(x | y) as usize] + table[(x & y) as usize] > table[x as usize] + table[y as usize] {
                return Err(RankViolation { kind: RankViolationKind::Submodular, x, y });
            }
        }
    }
    Ok(())
}
