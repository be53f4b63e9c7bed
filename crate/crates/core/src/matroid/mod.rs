//! Circuit-based matroid kernel.
//!
//! A [`Matroid`] is stored as its canonical circuit family. Rank is computed by
//! greedy extension in ascending element order and memoized per matroid.

mod axioms;
mod hyperplanes;
mod iso;
mod minor;

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::RwLock;

use crate::bits::{
    bit, canonicalize, compress, elements, full_mask, is_subset, popcount, subsets_of_size,
    GroundSet, OneBased, SubsetMask,
};
use crate::error::{Error, Result};

pub use axioms::{
    check_rank_axioms, check_submodular_pairs, validate_circuits, CircuitViolation,
    RankViolation, RankViolationKind,
};
pub use hyperplanes::{matroid_from_hyperplanes, validate_hyperplanes, HyperplaneFamily, HyperplaneViolation};
pub use iso::{is_isomorphic, IsoOutcome, DEFAULT_ISO_BUDGET};
pub use minor::{for_each_minor, has_minor_isomorphic_to, MinorWitness};

const RANK_CACHE_LIMIT: usize = 1 << 20;

/// Thread-safe rank memo. Inserts are idempotent; once the table holds
/// `RANK_CACHE_LIMIT` entries new values are computed but not stored.
#[derive(Default)]
struct RankCache(RwLock<HashMap<SubsetMask, u8>>);

impl RankCache {
    fn get(&self, set: SubsetMask) -> Option<usize> {
        self.0.read().ok()?.get(&set).map(|&r| r as usize)
    }

    fn insert(&self, set: SubsetMask, rank: usize) {
        if let Ok(mut map) = self.0.write() {
            if map.len() < RANK_CACHE_LIMIT {
                map.insert(set, rank as u8);
            }
        }
    }
}

/// A matroid on `{0, .., n-1}` given by its circuits.
pub struct Matroid {
    ground: GroundSet,
    circuits: Vec<SubsetMask>,
    by_element: Vec<Vec<SubsetMask>>,
    rank: usize,
    cache: RankCache,
}

impl Clone for Matroid {
    fn clone(&self) -> Self {
        Matroid::from_canonical(self.ground, self.circuits.clone())
    }
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.circuits == other.circuits
    }
}

impl Eq for Matroid {}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid")
            .field("n", &self.ground.len())
            .field("rank", &self.rank)
            .field("circuits", &self.circuits.len())
            .finish()
    }
}

impl Matroid {
    /// Builds a matroid from a circuit family, canonicalizing and validating it.
    pub fn from_circuits(n: usize, circuits: Vec<SubsetMask>) -> Result<Matroid> {
        let ground = GroundSet::new(n)?;
        let mut circuits = circuits;
        canonicalize(&mut circuits);
        validate_circuits(&circuits, ground).map_err(Error::InvalidCircuits)?;
        Ok(Matroid::from_canonical(ground, circuits))
    }

    /// Builds a matroid from a family already known to satisfy the circuit axioms.
    pub(crate) fn from_circuits_unchecked(n: usize, circuits: Vec<SubsetMask>) -> Matroid {
        let mut circuits = circuits;
        canonicalize(&mut circuits);
        Matroid::from_canonical(GroundSet::new(n).expect("ground size"), circuits)
    }

    fn from_canonical(ground: GroundSet, circuits: Vec<SubsetMask>) -> Matroid {
        let mut by_element = vec![Vec::new(); ground.len()];
        for &c in &circuits {
            for e in elements(c) {
                by_element[e].push(c);
            }
        }
        let mut m = Matroid { ground, circuits, by_element, rank: 0, cache: RankCache::default() };
        m.rank = m.greedy_rank(ground.full());
        m
    }

    /// Materializes the matroid whose rank function is `rank_fn`: the circuits
    /// are the sets `X` with `r(X) = |X| - 1` all of whose one-element
    /// deletions are independent. The resulting family is validated.
    pub fn from_rank_fn<F: Fn(SubsetMask) -> usize>(n: usize, rank_fn: F) -> Result<Matroid> {
        let circuits = circuits_from_rank_fn(n, &rank_fn)?;
        Matroid::from_circuits(n, circuits)
    }

    pub fn uniform(r: usize, n: usize) -> Result<Matroid> {
        if r > n {
            return Err(Error::Precondition(format!("U({r},{n}) needs r <= n")));
        }
        GroundSet::new(n)?;
        let circuits = if r == n { Vec::new() } else { subsets_of_size(n, r + 1).collect() };
        Ok(Matroid::from_circuits_unchecked(n, circuits))
    }

    pub fn free(n: usize) -> Result<Matroid> {
        Matroid::uniform(n, n)
    }

    /// Rank-`r` sparse paving matroid with the given circuit-hyperplanes.
    /// Fails unless no two of them meet in `r - 1` elements.
    pub fn sparse_paving(n: usize, r: usize, circuit_hyperplanes: &[SubsetMask]) -> Result<Matroid> {
        let ground = GroundSet::new(n)?;
        if r > n {
            return Err(Error::Precondition(format!("rank {r} exceeds ground size {n}")));
        }
        for (i, &a) in circuit_hyperplanes.iter().enumerate() {
            if popcount(a) != r || !ground.contains(a) {
                return Err(Error::Precondition(format!("{} is not an {r}-subset of [{n}]", OneBased(a))));
            }
            for &b in &circuit_hyperplanes[i + 1..] {
                if a != b && popcount(a & b) >= r - 1 {
                    return Err(Error::Precondition(format!(
                        "{} and {} meet in {} elements",
                        OneBased(a),
                        OneBased(b),
                        popcount(a & b)
                    )));
                }
            }
        }
        let mut circuits = circuit_hyperplanes.to_vec();
        if r < n {
            circuits.extend(
                subsets_of_size(n, r + 1)
                    .filter(|&s| !circuit_hyperplanes.iter().any(|&h| is_subset(h, s))),
            );
        }
        // The intersection condition already guarantees the circuit axioms.
        Ok(Matroid::from_circuits_unchecked(n, circuits))
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn full(&self) -> SubsetMask {
        self.ground.full()
    }

    pub fn circuits(&self) -> &[SubsetMask] {
        &self.circuits
    }

    /// Rank of the whole ground set.
    pub fn full_rank(&self) -> usize {
        self.rank
    }

    fn greedy_rank(&self, set: SubsetMask) -> usize {
        let mut indep: SubsetMask = 0;
        for e in elements(set) {
            let cand = indep | bit(e);
            if !self.by_element[e].iter().any(|&c| is_subset(c, cand)) {
                indep = cand;
            }
        }
        popcount(indep)
    }

    pub fn rank(&self, set: SubsetMask) -> usize {
        debug_assert!(self.ground.contains(set));
        if set == self.full() {
            return self.rank;
        }
        if let Some(r) = self.cache.get(set) {
            return r;
        }
        let r = self.greedy_rank(set);
        self.cache.insert(set, r);
        r
    }

    pub fn is_independent(&self, set: SubsetMask) -> bool {
        !self.circuits.iter().any(|&c| is_subset(c, set))
    }

    pub fn is_circuit(&self, set: SubsetMask) -> bool {
        self.circuits.binary_search_by(|c| crate::bits::canonical_cmp(c, &set)).is_ok()
    }

    /// Index of `set` in the canonical circuit list.
    pub fn circuit_index(&self, set: SubsetMask) -> Option<usize> {
        self.circuits.binary_search_by(|c| crate::bits::canonical_cmp(c, &set)).ok()
    }

    pub fn closure(&self, set: SubsetMask) -> SubsetMask {
        let r = self.rank(set);
        let mut cl = set;
        for e in elements(self.ground.complement(set)) {
            if self.rank(set | bit(e)) == r {
                cl |= bit(e);
            }
        }
        cl
    }

    pub fn is_flat(&self, set: SubsetMask) -> bool {
        self.closure(set) == set
    }

    pub fn loops(&self) -> SubsetMask {
        self.closure(0)
    }

    /// All flats, sorted canonically.
    pub fn flats(&self) -> Vec<SubsetMask> {
        let bottom = self.closure(0);
        let mut seen: HashSet<SubsetMask> = HashSet::from([bottom]);
        let mut queue = VecDeque::from([bottom]);
        while let Some(f) = queue.pop_front() {
            let mut rest = self.ground.complement(f);
            while rest != 0 {
                let e = rest.trailing_zeros() as usize;
                let g = self.closure(f | bit(e));
                rest &= !g;
                if seen.insert(g) {
                    queue.push_back(g);
                }
            }
        }
        let mut out: Vec<_> = seen.into_iter().collect();
        canonicalize(&mut out);
        out
    }

    pub fn hyperplanes(&self) -> Vec<SubsetMask> {
        if self.rank == 0 {
            return Vec::new();
        }
        self.flats().into_iter().filter(|&f| self.rank(f) + 1 == self.rank).collect()
    }

    /// The circuits of `M|X`, in canonical order.
    pub fn circuits_within(&self, set: SubsetMask) -> Vec<SubsetMask> {
        self.circuits.iter().copied().filter(|&c| is_subset(c, set)).collect()
    }

    /// Indices (into [`Matroid::circuits`]) of the circuits contained in `set`.
    pub fn circuit_indices_within(&self, set: SubsetMask) -> SubsetMask {
        let mut out = 0;
        for (i, &c) in self.circuits.iter().enumerate() {
            if is_subset(c, set) {
                out |= bit(i);
            }
        }
        out
    }

    pub fn circuit_hyperplanes(&self) -> Vec<SubsetMask> {
        if self.rank == 0 {
            return Vec::new();
        }
        self.circuits
            .iter()
            .copied()
            .filter(|&c| popcount(c) == self.rank && self.is_flat(c))
            .collect()
    }

    /// Every `r`-subset is a basis or a circuit-hyperplane.
    pub fn is_sparse_paving(&self) -> bool {
        let r = self.rank;
        self.circuits.iter().all(|&c| {
            let k = popcount(c);
            k > r || (k == r && self.is_flat(c))
        })
    }

    pub fn delete(&self, set: SubsetMask) -> Result<Matroid> {
        let m = self.delete_unchecked(set);
        validate_circuits(&m.circuits, m.ground).map_err(Error::InvalidCircuits)?;
        Ok(m)
    }

    pub fn contract(&self, set: SubsetMask) -> Result<Matroid> {
        let m = self.contract_unchecked(set);
        validate_circuits(&m.circuits, m.ground).map_err(Error::InvalidCircuits)?;
        Ok(m)
    }

    pub fn restrict(&self, set: SubsetMask) -> Result<Matroid> {
        self.delete(self.ground.complement(set))
    }

    /// Deletion with the remaining elements renumbered in increasing order.
    pub(crate) fn delete_unchecked(&self, set: SubsetMask) -> Matroid {
        let keep = self.ground.complement(set);
        let circuits = self
            .circuits
            .iter()
            .filter(|&&c| c & set == 0)
            .map(|&c| compress(c, keep))
            .collect();
        Matroid::from_circuits_unchecked(popcount(keep), circuits)
    }

    /// Contraction: minimal nonempty members of `{C - set}`, renumbered.
    pub(crate) fn contract_unchecked(&self, set: SubsetMask) -> Matroid {
        let keep = self.ground.complement(set);
        let mut cands: Vec<SubsetMask> = self
            .circuits
            .iter()
            .map(|&c| c & keep)
            .filter(|&c| c != 0)
            .collect();
        canonicalize(&mut cands);
        let minimal = minimal_members(&cands);
        let circuits = minimal.into_iter().map(|c| compress(c, keep)).collect();
        Matroid::from_circuits_unchecked(popcount(keep), circuits)
    }

    /// The dual matroid, via `r*(X) = |X| + r(E - X) - r(E)`.
    pub fn dual(&self) -> Result<Matroid> {
        let full = self.full();
        Matroid::from_rank_fn(self.n(), |x| popcount(x) + self.rank(full & !x) - self.rank)
    }

    /// Relaxes the circuit-hyperplane `h` into a basis.
    pub fn relax(&self, h: SubsetMask) -> Result<Matroid> {
        if !(self.is_circuit(h) && popcount(h) == self.rank && self.is_flat(h)) {
            return Err(Error::NotCircuitHyperplane(h));
        }
        let r = self.rank;
        Matroid::from_rank_fn(self.n(), |x| if x == h { r } else { self.rank(x) })
    }

    /// Exhaustive rank table (index = subset mask). Only for small ground sets.
    pub fn rank_table(&self) -> Vec<u8> {
        assert!(self.n() <= 24, "rank table needs n <= 24");
        (0..1u64 << self.n()).map(|x| self.rank(x) as u8).collect()
    }

    /// Full axiom audit: circuit axioms plus the rank axioms checked on every
    /// subset (local form), with all-pairs submodularity when `n <= 10`.
    pub fn audit_axioms(&self) -> Result<()> {
        validate_circuits(&self.circuits, self.ground).map_err(Error::InvalidCircuits)?;
        if self.n() <= 20 {
            check_rank_axioms(self.n(), |x| self.rank(x)).map_err(Error::InvalidRank)?;
        }
        if self.n() <= 10 {
            check_submodular_pairs(self.n(), |x| self.rank(x)).map_err(Error::InvalidRank)?;
        }
        Ok(())
    }
}

/// Lift/quotient oracle: `true` iff every flat of `q` is a flat of `l`.
pub fn is_quotient(q: &Matroid, l: &Matroid) -> bool {
    q.n() == l.n() && q.flats().into_iter().all(|f| l.is_flat(f))
}

/// Keeps the inclusion-minimal members of a canonically sorted family.
pub(crate) fn minimal_members(sorted: &[SubsetMask]) -> Vec<SubsetMask> {
    let mut out: Vec<SubsetMask> = Vec::new();
    for &c in sorted {
        if !out.iter().any(|&d| is_subset(d, c)) {
            out.push(c);
        }
    }
    out
}

/// Minimal dependent sets of a rank function on `{0, .., n-1}`.
pub(crate) fn circuits_from_rank_fn<F: Fn(SubsetMask) -> usize>(
    n: usize,
    rank_fn: &F,
) -> Result<Vec<SubsetMask>> {
    GroundSet::new(n)?;
    if n > 30 {
        return Err(Error::TooLarge(format!("rank-oracle materialization on {n} elements")));
    }
    let top = rank_fn(full_mask(n));
    let mut circuits = Vec::new();
    for k in 1..=(top + 1).min(n) {
        for x in subsets_of_size(n, k) {
            if rank_fn(x) + 1 == k && elements(x).all(|e| rank_fn(x & !bit(e)) + 1 == k) {
                circuits.push(x);
            }
        }
    }
    Ok(circuits)
}
