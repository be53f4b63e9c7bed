//! The sparse paving family `K(r, t)` on `[2t + 2]`.
//!
//! With `C_i = {1 + 2(i-1), ..., (r-2) + 2(i-1)}` (labels wrapped into `[2t]`)
//! and `X = {2t+1, 2t+2}`, the circuit-hyperplanes are the sets `C_i u X` and
//! `C_i u C_{i+1}`.

use std::collections::HashSet;
use std::fmt;
use std::ops::ControlFlow;

use crate::bits::{bit, elements, is_subset, popcount, subsets_of_size, subsets_of_size_within, OneBased, SubsetMask};
use crate::error::{Error, Result};
use crate::lifts::is_modular_pair;
use crate::matroid::{for_each_minor, has_minor_isomorphic_to, Matroid};

/// Largest ground set the minor scans accept.
pub const MAX_SCAN_GROUND: usize = 14;
/// Largest ground set `build_krt` accepts.
pub const MAX_BUILD_GROUND: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KrtSpec {
    r: usize,
    t: usize,
}

impl KrtSpec {
    pub fn new(r: usize, t: usize) -> Result<Self> {
        if r < 4 || t < 3 || r + 2 > 2 * t || 2 * t + 2 > MAX_BUILD_GROUND {
            return Err(Error::KrtOutOfRange { r, t });
        }
        Ok(KrtSpec { r, t })
    }

    pub fn r(self) -> usize {
        self.r
    }

    pub fn t(self) -> usize {
        self.t
    }

    pub fn n(self) -> usize {
        2 * self.t + 2
    }

    /// `r <= 2t - 3`
    pub fn in_antichain_regime(self) -> bool {
        self.r + 3 <= 2 * self.t
    }

    /// `r >= 5` and `r <= 2t - 3`
    pub fn in_ingleton_regime(self) -> bool {
        self.r >= 5 && self.in_antichain_regime()
    }

    /// `C_i` for `i` in `1..=t` (0-based bits).
    pub fn c(self, i: usize) -> SubsetMask {
        assert!((1..=self.t).contains(&i));
        let m = 2 * self.t;
        (1..=self.r - 2)
            .map(|v| v + 2 * (i - 1))
            .fold(0, |acc, v| acc | bit((v - 1) % m))
    }

    pub fn x(self) -> SubsetMask {
        bit(2 * self.t) | bit(2 * self.t + 1)
    }

    pub fn c_prime(self) -> Vec<SubsetMask> {
        (1..=self.t).map(|i| self.c(i) | self.x()).collect()
    }

    pub fn c_double_prime(self) -> Vec<SubsetMask> {
        (1..self.t).map(|i| self.c(i) | self.c(i + 1)).collect()
    }

    pub fn circuit_hyperplanes(self) -> Vec<SubsetMask> {
        let mut all = self.c_prime();
        all.extend(self.c_double_prime());
        all
    }
}

impl fmt::Display for KrtSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K({},{})", self.r, self.t)
    }
}

pub fn build_krt(spec: KrtSpec) -> Result<Matroid> {
    Matroid::sparse_paving(spec.n(), spec.r, &spec.circuit_hyperplanes())
}

/// No two circuit-hyperplanes meet in `r - 1` or more elements.
pub fn intersection_certificate(spec: KrtSpec) -> bool {
    let chs = spec.circuit_hyperplanes();
    chs.iter()
        .enumerate()
        .all(|(i, &a)| chs[i + 1..].iter().all(|&b| popcount(a & b) <= spec.r - 2))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularPairFact {
    /// 1-based indices of the two sets `C_i`, `C_j`.
    pub i: usize,
    pub j: usize,
    pub union_size: usize,
    pub rank_m: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankGapFact {
    pub i: usize,
    pub j: usize,
    pub rank_l: usize,
    pub rank_m: usize,
    pub expected_gap: usize,
    pub holds: bool,
}

/// Facts (a)-(d) for `M = K/X` and `L = K \ X`, plus the derivation that no
/// overlay `N` on the circuits of `M` has `M^N = L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    pub spec: KrtSpec,
    /// Every `C_i` is a circuit of `M`.
    pub c_are_circuits_of_m: bool,
    /// Every `C_i` is independent in `L`, hence a non-loop of any `N`.
    pub c_independent_in_l: bool,
    pub a: Vec<ModularPairFact>,
    pub b: ModularPairFact,
    pub c: Vec<RankGapFact>,
    pub d: RankGapFact,
    pub derivation: Vec<String>,
}

impl ObstructionReport {
    pub fn fact_a(&self) -> bool {
        self.a.iter().all(|f| f.holds)
    }

    pub fn fact_b(&self) -> bool {
        self.b.holds
    }

    pub fn fact_c(&self) -> bool {
        self.c.iter().all(|f| f.holds)
    }

    pub fn fact_d(&self) -> bool {
        self.d.holds
    }

    /// All four facts and both side conditions hold.
    pub fn certifies(&self) -> bool {
        self.c_are_circuits_of_m
            && self.c_independent_in_l
            && self.fact_a()
            && self.fact_b()
            && self.fact_c()
            && self.fact_d()
    }
}

pub fn obstruction_report(spec: KrtSpec) -> Result<ObstructionReport> {
    let k = build_krt(spec)?;
    let x = spec.x();
    // X is the last two elements, so the labels of E - X are unchanged.
    let m = k.contract(x)?;
    let l = k.delete(x)?;
    let t = spec.t;
    let cs: Vec<SubsetMask> = (1..=t).map(|i| spec.c(i)).collect();
    let c_are_circuits_of_m = cs.iter().all(|&c| m.is_circuit(c));
    let c_independent_in_l = cs.iter().all(|&c| l.is_independent(c));

    let pair = |i: usize, j: usize| {
        let u = cs[i - 1] | cs[j - 1];
        ModularPairFact {
            i,
            j,
            union_size: popcount(u),
            rank_m: m.rank(u),
            holds: m.is_circuit(cs[i - 1]) && m.is_circuit(cs[j - 1]) && is_modular_pair(&m, cs[i - 1], cs[j - 1]),
        }
    };
    let gap = |i: usize, j: usize, expected_gap: usize| {
        let u = cs[i - 1] | cs[j - 1];
        let (rank_l, rank_m) = (l.rank(u), m.rank(u));
        RankGapFact { i, j, rank_l, rank_m, expected_gap, holds: rank_l == rank_m + expected_gap }
    };
    let a: Vec<ModularPairFact> = (1..t).map(|i| pair(i, i + 1)).collect();
    let b = pair(1, t);
    let c: Vec<RankGapFact> = (1..t).map(|i| gap(i, i + 1, 1)).collect();
    let d = gap(1, t, 2);

    let mut report = ObstructionReport {
        spec,
        c_are_circuits_of_m,
        c_independent_in_l,
        a,
        b,
        c,
        d,
        derivation: Vec::new(),
    };
    report.derivation = derive_contradiction(&report);
    Ok(report)
}

/// Replays the argument step by step from the computed facts. In `M^N` the
/// rank gap on a set `Y` is `r_N` of the circuits of `M` inside `Y`.
fn derive_contradiction(r: &ObstructionReport) -> Vec<String> {
    let t = r.spec.t;
    let mut out = Vec::new();
    if !r.c_are_circuits_of_m || !r.c_independent_in_l {
        out.push("some C_i is not a circuit of M independent in L; no conclusion".into());
        return out;
    }
    out.push(format!("each C_i (i = 1..{t}) is a circuit of M and independent in L, so it is a non-loop of N"));
    for (fa, fc) in r.a.iter().zip(&r.c) {
        if !(fa.holds && fc.holds) {
            out.push(format!("chain breaks at C_{} and C_{}; no conclusion", fa.i, fa.j));
            return out;
        }
        out.push(format!(
            "(C_{i}, C_{j}) is a modular pair and r_L - r_M = {} on their union = r_N({{C_{i}, C_{j}}}) ({} - {}), so C_{i} and C_{j} are parallel in N",
            fc.rank_l - fc.rank_m,
            fc.rank_l,
            fc.rank_m,
            i = fa.i,
            j = fa.j,
        ));
    }
    out.push(format!("parallelism is transitive, so C_1 and C_{t} are parallel in N"));
    if !(r.b.holds && r.d.holds) {
        out.push("facts (b) and (d) do not both hold; no contradiction".into());
        return out;
    }
    out.push(format!(
        "(C_1, C_{t}) is a modular pair, so every circuit of M inside C_1 u C_{t} is spanned in N by C_1 and C_{t}, and r_L - r_M = {} on the union forces C_1 and C_{t} independent in N",
        r.d.rank_l - r.d.rank_m
    ));
    out.push("contradiction: no N on the circuits of M has M^N = L".into());
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IngletonEval {
    pub satisfied: bool,
    pub lhs: usize,
    pub rhs: usize,
}

/// Evaluates `r(AB) + r(AC) + r(AD) + r(BC) + r(BD)` against
/// `r(A) + r(B) + r(ABC) + r(ABD) + r(CD)`. Representable matroids satisfy
/// `lhs >= rhs` for every choice of sets.
pub fn ingleton_inequality(m: &Matroid, a: SubsetMask, b: SubsetMask, c: SubsetMask, d: SubsetMask) -> IngletonEval {
    let r = |s: SubsetMask| m.rank(s);
    let lhs = r(a | b) + r(a | c) + r(a | d) + r(b | c) + r(b | d);
    let rhs = r(a) + r(b) + r(a | b | c) + r(a | b | d) + r(c | d);
    IngletonEval { satisfied: lhs >= rhs, lhs, rhs }
}

/// Disjoint `I, P1..P4` with `|I| = r - 4`, `|P_k| = 2`, every `I u P_i u P_j`
/// a circuit except `I u P3 u P4`, which is a basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IngletonWitness {
    pub i: SubsetMask,
    pub pairs: [SubsetMask; 4],
}

impl IngletonWitness {
    /// `(I u P1, I u P2, I u P3, I u P4)`, a violating quadruple.
    pub fn quadruple(&self) -> [SubsetMask; 4] {
        self.pairs.map(|p| p | self.i)
    }
}

impl fmt::Display for IngletonWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I={}", OneBased(self.i))?;
        for (k, p) in self.pairs.iter().enumerate() {
            write!(f, " P{}={}", k + 1, OneBased(*p))?;
        }
        Ok(())
    }
}

fn two_element_splits(s: SubsetMask) -> Vec<(SubsetMask, SubsetMask)> {
    let lowest = s & s.wrapping_neg();
    elements(s & !lowest).map(|e| (lowest | bit(e), s & !(lowest | bit(e)))).collect()
}

/// Searches `S = {H - I : H a circuit-hyperplane containing I}` (4-sets) for
/// the pair pattern above.
fn pair_pattern(links: &HashSet<SubsetMask>, i: SubsetMask) -> Option<IngletonWitness> {
    let mut sorted: Vec<SubsetMask> = links.iter().copied().collect();
    sorted.sort_unstable();
    for &s in &sorted {
        for (p1, p2) in two_element_splits(s) {
            let used = p1 | p2;
            let partners: Vec<SubsetMask> = sorted
                .iter()
                .filter(|&&u| is_subset(p1, u) && u & p2 == 0)
                .map(|&u| u & !p1)
                .filter(|&q| links.contains(&(p2 | q)) && q & used == 0)
                .collect();
            for (a, &p3) in partners.iter().enumerate() {
                for &p4 in &partners[a + 1..] {
                    if p3 & p4 == 0 && !links.contains(&(p3 | p4)) {
                        return Some(IngletonWitness { i, pairs: [p1, p2, p3, p4] });
                    }
                }
            }
        }
    }
    None
}

/// Decides whether a sparse paving matroid satisfies Ingleton's inequality
/// everywhere, via the pair criterion. Returns a witness when it does not.
pub fn is_ingleton_sparse_paving(m: &Matroid) -> Result<(bool, Option<IngletonWitness>)> {
    if !m.is_sparse_paving() {
        return Err(Error::Precondition("matroid is not sparse paving".into()));
    }
    let r = m.full_rank();
    if r < 4 || m.n() < r + 4 {
        return Ok((true, None));
    }
    let chs = m.circuit_hyperplanes();
    // I lies in at least five circuit-hyperplanes, so inside a pairwise meet.
    let mut candidates: Vec<SubsetMask> = Vec::new();
    for (a, &h1) in chs.iter().enumerate() {
        for &h2 in &chs[a + 1..] {
            candidates.extend(subsets_of_size_within(h1 & h2, r - 4));
        }
    }
    if m.n() <= 12 {
        candidates.extend(subsets_of_size(m.n(), r - 4));
    }
    candidates.sort_unstable();
    candidates.dedup();
    for i in candidates {
        let links: HashSet<SubsetMask> = chs.iter().filter(|&&h| is_subset(i, h)).map(|&h| h & !i).collect();
        if links.len() < 5 {
            continue;
        }
        if let Some(w) = pair_pattern(&links, i) {
            return Ok((false, Some(w)));
        }
    }
    Ok((true, None))
}

/// A partition of an 8-element ground set into pairs where exactly five of
/// the six pairwise unions are circuits; `missing` indexes the other one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VamosPartition {
    pub pairs: [SubsetMask; 4],
    pub missing: (usize, usize),
}

/// The 105 partitions of an 8-set into pairs, blocks ordered by least element.
pub fn pair_partitions(ground: SubsetMask) -> Vec<[SubsetMask; 4]> {
    fn go(rest: SubsetMask, acc: &mut Vec<SubsetMask>, out: &mut Vec<[SubsetMask; 4]>) {
        if rest == 0 {
            out.push([acc[0], acc[1], acc[2], acc[3]]);
            return;
        }
        let low = rest & rest.wrapping_neg();
        for e in elements(rest & !low) {
            acc.push(low | bit(e));
            go(rest & !(low | bit(e)), acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if popcount(ground) == 8 {
        go(ground, &mut Vec::new(), &mut out);
    }
    out
}

pub fn is_vamos_like(m: &Matroid) -> Result<Option<VamosPartition>> {
    if m.n() != 8 || m.full_rank() != 4 || !m.is_sparse_paving() {
        return Err(Error::Precondition("expected an 8-element rank-4 sparse paving matroid".into()));
    }
    for pairs in pair_partitions(m.full()) {
        let mut non_circuits = Vec::new();
        for a in 0..4 {
            for b in a + 1..4 {
                if !m.is_circuit(pairs[a] | pairs[b]) {
                    non_circuits.push((a, b));
                }
            }
        }
        if let [missing] = non_circuits[..] {
            return Ok(Some(VamosPartition { pairs, missing }));
        }
    }
    Ok(None)
}

/// A Vámos-like minor `M / contracted \ deleted` (labels of `M`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VamosMinor {
    pub contracted: SubsetMask,
    pub deleted: SubsetMask,
    pub partition: VamosPartition,
}

/// Every rank-4, 8-element minor that is Vámos-like.
pub fn scan_vamos_like_minors(m: &Matroid) -> Result<Vec<VamosMinor>> {
    if m.n() > MAX_SCAN_GROUND {
        return Err(Error::TooLarge(format!("minor scan needs at most {MAX_SCAN_GROUND} elements")));
    }
    let r = m.full_rank();
    if r < 4 || m.n() < 8 + (r - 4) {
        return Ok(Vec::new());
    }
    let (k, d) = (r - 4, m.n() - 8 - (r - 4));
    let mut found = Vec::new();
    let mut error = None;
    for_each_minor(m, k, d, |w| {
        if !w.minor.is_sparse_paving() {
            return ControlFlow::Continue(());
        }
        match is_vamos_like(w.minor) {
            Ok(Some(partition)) => {
                found.push(VamosMinor { contracted: w.contracted, deleted: w.deleted, partition })
            }
            Ok(None) => {}
            Err(e) => {
                error = Some(e);
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    });
    match error {
        Some(e) => Err(e),
        None => Ok(found),
    }
}

/// `true` iff `K(big)` has no proper minor isomorphic to `K(small)`.
pub fn antichain_check(big: KrtSpec, small: KrtSpec) -> Result<bool> {
    if !big.in_antichain_regime() || !small.in_antichain_regime() {
        return Err(Error::Precondition("both parameter pairs need r <= 2t - 3".into()));
    }
    if big.n() > MAX_SCAN_GROUND {
        return Err(Error::TooLarge(format!("minor scan needs at most {MAX_SCAN_GROUND} elements")));
    }
    let kb = build_krt(big)?;
    let ks = build_krt(small)?;
    Ok(!has_minor_isomorphic_to(&kb, &ks, true))
}
