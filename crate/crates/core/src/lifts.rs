//! Lifts of a matroid `M`.
//!
//! An elementary lift comes from a linear class of circuits: the rank of `X`
//! goes up by one exactly when `M|X` has a circuit outside the class. The
//! general lift `M^N` takes a matroid `N` whose elements are the circuits of
//! `M` (in canonical order) and sets
//! `r(X) = r_M(X) + r_N({C : C a circuit of M|X})`, which is a matroid rank
//! function whenever every modular pair `C1, C2` has every circuit inside
//! `C1 u C2` in `cl_N({C1, C2})`.

use crate::bits::{bit, is_subset, popcount, SubsetMask};
use crate::error::{Error, Result};
use crate::matroid::{check_rank_axioms, Matroid, RankViolation};

/// A set of circuits of a base matroid, by index into its canonical circuit list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearClass {
    members: Vec<bool>,
}

impl LinearClass {
    pub fn from_indices(m: &Matroid, indices: &[usize]) -> Result<Self> {
        let count = m.circuits().len();
        let mut members = vec![false; count];
        for &i in indices {
            if i >= count {
                return Err(Error::CircuitIndexOutOfRange { index: i, count });
            }
            members[i] = true;
        }
        Ok(LinearClass { members })
    }

    pub fn all(m: &Matroid) -> Self {
        LinearClass { members: vec![true; m.circuits().len()] }
    }

    pub fn empty(m: &Matroid) -> Self {
        LinearClass { members: vec![false; m.circuits().len()] }
    }

    /// All circuits of `m` contained in `set`; always a linear class.
    pub fn circuits_inside(m: &Matroid, set: SubsetMask) -> Self {
        LinearClass { members: m.circuits().iter().map(|&c| is_subset(c, set)).collect() }
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members[index]
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..self.members.len()).filter(|&i| self.members[i]).collect()
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `|C1 u C2| - r(C1 u C2) = 2`.
pub fn is_modular_pair(m: &Matroid, c1: SubsetMask, c2: SubsetMask) -> bool {
    let u = c1 | c2;
    c1 != c2 && popcount(u) - m.rank(u) == 2
}

/// A collection of circuits is perfect when its union has nullity equal to
/// its size and no member lies in the union of the others.
pub fn is_perfect(m: &Matroid, collection: &[SubsetMask]) -> bool {
    if collection.is_empty() {
        return true;
    }
    let union = collection.iter().fold(0, |a, &c| a | c);
    if popcount(union) - m.rank(union) != collection.len() {
        return false;
    }
    (0..collection.len()).all(|i| {
        let others = collection
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(0, |a, (_, &c)| a | c);
        !is_subset(collection[i], others)
    })
}

/// First modular pair of the class spanning a circuit outside it.
fn linear_class_violation(m: &Matroid, class: &LinearClass) -> Option<(SubsetMask, SubsetMask, SubsetMask)> {
    let circuits = m.circuits();
    let members = class.indices();
    for (a, &i) in members.iter().enumerate() {
        for &j in &members[a + 1..] {
            let (c1, c2) = (circuits[i], circuits[j]);
            if !is_modular_pair(m, c1, c2) {
                continue;
            }
            let u = c1 | c2;
            if let Some(k) = (0..circuits.len()).find(|&k| !class.contains(k) && is_subset(circuits[k], u)) {
                return Some((c1, c2, circuits[k]));
            }
        }
    }
    None
}

pub fn is_linear_class(m: &Matroid, class: &LinearClass) -> bool {
    linear_class_violation(m, class).is_none()
}

/// The elementary lift of `m` determined by a linear class.
pub fn elementary_lift(m: &Matroid, class: &LinearClass) -> Result<Matroid> {
    if let Some((c1, c2, outside)) = linear_class_violation(m, class) {
        return Err(Error::NotLinearClass { c1, c2, outside });
    }
    let outside: Vec<SubsetMask> = m
        .circuits()
        .iter()
        .enumerate()
        .filter(|&(i, _)| !class.contains(i))
        .map(|(_, &c)| c)
        .collect();
    Matroid::from_rank_fn(m.n(), |x| {
        m.rank(x) + usize::from(outside.iter().any(|&c| is_subset(c, x)))
    })
}

/// A base matroid together with an overlay matroid on its circuits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftSpec {
    base: Matroid,
    overlay: Matroid,
}

impl LiftSpec {
    pub fn new(base: Matroid, overlay: Matroid) -> Result<Self> {
        let circuits = base.circuits().len();
        if overlay.n() != circuits {
            return Err(Error::OverlaySizeMismatch { overlay: overlay.n(), circuits });
        }
        Ok(LiftSpec { base, overlay })
    }

    pub fn base(&self) -> &Matroid {
        &self.base
    }

    pub fn overlay(&self) -> &Matroid {
        &self.overlay
    }

    /// Circuits of the base inside `x`, as a subset of the overlay's ground set.
    pub fn circuits_inside(&self, x: SubsetMask) -> SubsetMask {
        self.base.circuit_indices_within(x)
    }

    /// `r_M(X) + r_N({C : C a circuit of M|X})`.
    pub fn lift_rank(&self, x: SubsetMask) -> usize {
        self.base.rank(x) + self.overlay.rank(self.circuits_inside(x))
    }

    fn overlay_closure_contains(&self, gens: SubsetMask, idx: usize) -> bool {
        self.overlay.rank(gens | bit(idx)) == self.overlay.rank(gens)
    }
}

/// Failure of the modular-pair condition, as indices into the base's circuits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarPrimeWitness {
    pub c1: usize,
    pub c2: usize,
    pub circuit: usize,
}

/// Failure of the perfect-collection condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarWitness {
    pub collection: Vec<usize>,
    pub circuit: usize,
}

/// For every modular pair `{C1, C2}` of the base, each circuit inside
/// `C1 u C2` lies in `cl_N({C1, C2})`.
pub fn check_star_prime(spec: &LiftSpec) -> Result<(), StarPrimeWitness> {
    let circuits = spec.base.circuits();
    for i in 0..circuits.len() {
        for j in i + 1..circuits.len() {
            if !is_modular_pair(&spec.base, circuits[i], circuits[j]) {
                continue;
            }
            let u = circuits[i] | circuits[j];
            let gens = bit(i) | bit(j);
            for k in 0..circuits.len() {
                if k != i && k != j && is_subset(circuits[k], u) && !spec.overlay_closure_contains(gens, k) {
                    return Err(StarPrimeWitness { c1: i, c2: j, circuit: k });
                }
            }
        }
    }
    Ok(())
}

/// For every perfect collection `P` of base circuits, each circuit inside
/// `uP` lies in `cl_N(P)`. Collections are enumerated by size; subsets of
/// perfect collections are perfect, so non-perfect prefixes are not extended.
pub fn check_star(spec: &LiftSpec) -> Result<(), StarWitness> {
    let m = &spec.base;
    let circuits = m.circuits();
    let mut level: Vec<Vec<usize>> = (0..circuits.len()).map(|i| vec![i]).collect();
    while !level.is_empty() {
        let mut next = Vec::new();
        for coll in &level {
            let sets: Vec<SubsetMask> = coll.iter().map(|&i| circuits[i]).collect();
            if coll.len() > 1 {
                let union = sets.iter().fold(0, |a, &c| a | c);
                let gens = coll.iter().fold(0, |a, &i| a | bit(i));
                for k in 0..circuits.len() {
                    if gens & bit(k) == 0
                        && is_subset(circuits[k], union)
                        && !spec.overlay_closure_contains(gens, k)
                    {
                        return Err(StarWitness { collection: coll.clone(), circuit: k });
                    }
                }
            }
            let last = *coll.last().expect("nonempty collection");
            for k in last + 1..circuits.len() {
                let mut ext = sets.clone();
                ext.push(circuits[k]);
                if is_perfect(m, &ext) {
                    let mut c = coll.clone();
                    c.push(k);
                    next.push(c);
                }
            }
        }
        level = next;
    }
    Ok(())
}

/// The lift `M^N`. Refuses specs failing the modular-pair condition.
pub fn build_lift(spec: &LiftSpec) -> Result<Matroid> {
    if let Err(w) = check_star_prime(spec) {
        let c = spec.base.circuits();
        return Err(Error::StarPrimeFails { c1: c[w.c1], c2: c[w.c2], circuit: c[w.circuit] });
    }
    Matroid::from_rank_fn(spec.base.n(), |x| spec.lift_rank(x))
}

/// Outcome of evaluating the lift formula without the precondition.
#[derive(Debug)]
pub struct ForcedLift {
    pub star_prime: Result<(), StarPrimeWitness>,
    pub rank_violation: Option<RankViolation>,
    pub matroid: Option<Matroid>,
}

/// Diagnostic mode: evaluates the lift formula regardless of the
/// modular-pair condition and reports the first rank-axiom violation.
pub fn build_lift_forced(spec: &LiftSpec) -> Result<ForcedLift> {
    let n = spec.base.n();
    if n > 20 {
        return Err(Error::TooLarge(format!("forced lift needs an exhaustive rank check; n = {n}")));
    }
    let star_prime = check_star_prime(spec);
    let rank_violation = check_rank_axioms(n, |x| spec.lift_rank(x)).err();
    let matroid = match rank_violation {
        None => Some(Matroid::from_rank_fn(n, |x| spec.lift_rank(x))?),
        Some(_) => None,
    };
    Ok(ForcedLift { star_prime, rank_violation, matroid })
}

/// Rank-1 overlay whose loops are exactly the class and whose other elements
/// are pairwise parallel.
pub fn overlay_for_class(m: &Matroid, class: &LinearClass) -> Result<Matroid> {
    let count = m.circuits().len();
    if count > 64 {
        return Err(Error::TooManyCircuits(count));
    }
    let mut circuits = Vec::new();
    let outside: Vec<usize> = (0..count).filter(|&i| !class.contains(i)).collect();
    for i in 0..count {
        if class.contains(i) {
            circuits.push(bit(i));
        }
    }
    for (a, &i) in outside.iter().enumerate() {
        for &j in &outside[a + 1..] {
            circuits.push(bit(i) | bit(j));
        }
    }
    Matroid::from_circuits(count, circuits)
}

/// Builds `M^N` for the rank-1 overlay of a linear class and compares it
/// with the elementary lift on every subset.
pub fn lift_agrees_with_elementary(m: &Matroid, class: &LinearClass) -> Result<bool> {
    let elementary = elementary_lift(m, class)?;
    let spec = LiftSpec::new(m.clone(), overlay_for_class(m, class)?)?;
    let general = build_lift(&spec)?;
    Ok(same_rank_function(&elementary, &general))
}

/// Exhaustive rank comparison.
pub fn same_rank_function(a: &Matroid, b: &Matroid) -> bool {
    a.n() == b.n() && (0..=a.full()).all(|x| a.rank(x) == b.rank(x))
}

/// The circuits of `m` that are still circuits of `lift`.
pub fn surviving_circuits(m: &Matroid, lift: &Matroid) -> Vec<SubsetMask> {
    m.circuits().iter().copied().filter(|&c| lift.is_circuit(c)).collect()
}
