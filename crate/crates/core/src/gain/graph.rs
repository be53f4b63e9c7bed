use std::collections::BTreeSet;
use std::fmt;

use super::group::{primitive_partition, FinGroup, GroupPartition};
use crate::bits::{bit, elements, popcount, GroundSet, SubsetMask};
use crate::error::{Error, Result};
use crate::lifts::{elementary_lift, LinearClass};
use crate::matroid::{is_quotient, matroid_from_hyperplanes, HyperplaneFamily, Matroid};

/// Edge `({i, j}, label)` oriented from `i` to `j`, with `i < j` (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GainEdge {
    pub i: usize,
    pub j: usize,
    pub label: usize,
}

/// The full gain graph `K_n^Γ`. Edge index is `pair * |Γ| + label`, pairs in
/// lexicographic order.
#[derive(Clone, Debug)]
pub struct GainGraph {
    group: FinGroup,
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl fmt::Display for GainEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.i + 1, self.j + 1, self.label)
    }
}

pub fn full_gain_graph(group: &FinGroup, n: usize) -> Result<GainGraph> {
    if n < 2 {
        return Err(Error::Precondition("a gain graph needs at least 2 vertices".into()));
    }
    let edges = n * (n - 1) / 2 * group.order();
    if edges > 64 {
        return Err(Error::TooLarge(format!("{edges} edges exceed 64")));
    }
    let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    Ok(GainGraph { group: group.clone(), n, pairs })
}

impl GainGraph {
    pub fn group(&self) -> &FinGroup {
        &self.group
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.pairs.len() * self.group.order()
    }

    pub fn all_edges(&self) -> SubsetMask {
        crate::bits::full_mask(self.edge_count())
    }

    pub fn edge(&self, index: usize) -> GainEdge {
        let k = self.group.order();
        let (i, j) = self.pairs[index / k];
        GainEdge { i, j, label: index % k }
    }

    pub fn index(&self, i: usize, j: usize, label: usize) -> usize {
        let (i, j, label) = if i < j { (i, j, label) } else { (j, i, self.group.inv(label)) };
        let p = self.pairs.iter().position(|&q| q == (i, j)).expect("vertex pair");
        p * self.group.order() + label
    }

    pub fn edges(&self, set: SubsetMask) -> Vec<GainEdge> {
        elements(set).map(|e| self.edge(e)).collect()
    }

    /// All edges between `i` and `j`.
    pub fn pair_edges(&self, i: usize, j: usize) -> SubsetMask {
        (0..self.group.order()).fold(0, |acc, a| acc | bit(self.index(i, j, a)))
    }

    /// `E_A`: every edge whose label is in `labels`.
    pub fn labelled(&self, labels: SubsetMask) -> SubsetMask {
        let mut out = 0;
        for &(i, j) in &self.pairs {
            for a in elements(labels) {
                out |= bit(self.index(i, j, a));
            }
        }
        out
    }

    pub fn format_edge(&self, e: GainEdge) -> String {
        format!("{}_{}{}", self.group.name(e.label), e.i + 1, e.j + 1)
    }

    /// Oriented label product around a cycle; `None` if `set` is not a cycle.
    /// Traversal starts at the least vertex and leaves along its lowest-index
    /// edge; edges crossed against their orientation contribute inverses.
    pub fn cycle_product(&self, set: SubsetMask) -> Option<usize> {
        self.cycle_product_from(set, None)
    }

    fn cycle_product_from(&self, set: SubsetMask, start: Option<(usize, usize)>) -> Option<usize> {
        let edges = self.edges(set);
        if edges.len() < 2 {
            return None;
        }
        let mut degree = vec![0usize; self.n];
        for e in &edges {
            degree[e.i] += 1;
            degree[e.j] += 1;
        }
        if degree.iter().any(|&d| d != 0 && d != 2) {
            return None;
        }
        let g = &self.group;
        let (first_vertex, first_edge) = start.unwrap_or_else(|| {
            let v = degree.iter().position(|&d| d == 2).unwrap();
            (v, edges.iter().position(|e| e.i == v || e.j == v).unwrap())
        });
        let mut used = vec![false; edges.len()];
        let mut at = first_vertex;
        let mut edge = first_edge;
        let mut product = g.identity();
        for _ in 0..edges.len() {
            let e = edges[edge];
            used[edge] = true;
            let (factor, next) = if e.i == at { (e.label, e.j) } else { (g.inv(e.label), e.i) };
            product = g.mul(product, factor);
            at = next;
            match (0..edges.len()).find(|&x| !used[x] && (edges[x].i == at || edges[x].j == at)) {
                Some(x) => edge = x,
                None => break,
            }
        }
        (used.iter().all(|&u| u) && at == first_vertex).then_some(product)
    }

    pub fn is_cycle(&self, set: SubsetMask) -> bool {
        self.cycle_product(set).is_some()
    }

    pub fn is_balanced(&self, set: SubsetMask) -> Result<bool> {
        self.cycle_product(set).map(|p| p == self.group.identity()).ok_or(Error::NotACycle)
    }

    /// Balance computed from every start vertex and direction.
    pub fn balance_from_every_start(&self, set: SubsetMask) -> Vec<bool> {
        let edges = self.edges(set);
        let mut out = Vec::new();
        for (x, e) in edges.iter().enumerate() {
            for v in [e.i, e.j] {
                if let Some(p) = self.cycle_product_from(set, Some((v, x))) {
                    out.push(p == self.group.identity());
                }
            }
        }
        out
    }

    /// Switching at vertex `k` with value `beta`.
    pub fn switch(&self, set: SubsetMask, k: usize, beta: usize) -> SubsetMask {
        let g = &self.group;
        elements(set).fold(0, |acc, x| {
            let e = self.edge(x);
            let label = if e.i == k {
                g.mul(g.inv(beta), e.label)
            } else if e.j == k {
                g.mul(e.label, beta)
            } else {
                e.label
            };
            acc | bit(self.index(e.i, e.j, label))
        })
    }

    /// Switching at every vertex `v` with `betas[v]`: `α_ij -> b_i⁻¹ α b_j`.
    pub fn switch_all(&self, set: SubsetMask, betas: &[usize]) -> SubsetMask {
        let g = &self.group;
        elements(set).fold(0, |acc, x| {
            let e = self.edge(x);
            let label = g.mul(g.mul(g.inv(betas[e.i]), e.label), betas[e.j]);
            acc | bit(self.index(e.i, e.j, label))
        })
    }

    /// All cycles: parallel pairs and, for each cyclic vertex sequence of
    /// length at least 3, every choice of labels.
    pub fn cycles(&self) -> Vec<SubsetMask> {
        let k = self.group.order();
        let mut out = Vec::new();
        for &(i, j) in &self.pairs {
            for a in 0..k {
                for b in a + 1..k {
                    out.push(bit(self.index(i, j, a)) | bit(self.index(i, j, b)));
                }
            }
        }
        for len in 3..=self.n {
            for seq in vertex_cycles(self.n, len) {
                let slots: Vec<(usize, usize)> =
                    (0..len).map(|x| (seq[x], seq[(x + 1) % len])).collect();
                let mut labels = vec![0usize; len];
                loop {
                    out.push(
                        slots.iter().zip(&labels).fold(0, |acc, (&(u, v), &a)| acc | bit(self.index(u.min(v), u.max(v), a))),
                    );
                    let Some(pos) = labels.iter().position(|&a| a + 1 < k) else {
                        break;
                    };
                    labels[pos] += 1;
                    for l in labels.iter_mut().take(pos) {
                        *l = 0;
                    }
                }
            }
        }
        out
    }
}

/// Cyclic vertex sequences of a given length, one per undirected cycle:
/// least vertex first and second vertex smaller than the last.
fn vertex_cycles(n: usize, len: usize) -> Vec<Vec<usize>> {
    fn extend(n: usize, len: usize, seq: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if seq.len() == len {
            if seq[1] < seq[len - 1] {
                out.push(seq.clone());
            }
            return;
        }
        for v in seq[0] + 1..n {
            if !seq.contains(&v) {
                seq.push(v);
                extend(n, len, seq, out);
                seq.pop();
            }
        }
    }
    let mut out = Vec::new();
    for start in 0..n {
        extend(n, len, &mut vec![start], &mut out);
    }
    out
}

/// The canonical form (least mask) and the full orbit under switching.
pub fn switching_orbit(gg: &GainGraph, set: SubsetMask) -> Result<(SubsetMask, Vec<SubsetMask>)> {
    let k = gg.group().order();
    if gg.n() != 3 || k > 8 {
        return Err(Error::TooLarge("switching orbits need n = 3 and |Γ| <= 8".into()));
    }
    let mut orbit = BTreeSet::new();
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                orbit.insert(gg.switch_all(set, &[a, b, c]));
            }
        }
    }
    let orbit: Vec<SubsetMask> = orbit.into_iter().collect();
    Ok((orbit[0], orbit))
}

/// Circuits are the edge sets of cycles of the underlying multigraph.
pub fn graphic_matroid(gg: &GainGraph) -> Result<Matroid> {
    if gg.n() > 5 {
        return Err(Error::TooLarge("cycle enumeration supports at most 5 vertices".into()));
    }
    Ok(Matroid::from_circuits_unchecked(gg.edge_count(), gg.cycles()))
}

/// The elementary lift whose linear class is the balanced cycles.
pub fn zaslavsky_lift(gg: &GainGraph) -> Result<Matroid> {
    let graphic = graphic_matroid(gg)?;
    let members: Vec<usize> = graphic
        .circuits()
        .iter()
        .enumerate()
        .filter(|&(_, &c)| gg.is_balanced(c).unwrap_or(false))
        .map(|(i, _)| i)
        .collect();
    let class = LinearClass::from_indices(&graphic, &members)?;
    elementary_lift(&graphic, &class).map_err(|e| Error::Internal(format!("balanced cycles: {e}")))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleRow {
    pub cycle: SubsetMask,
    pub balanced: bool,
    pub circuit: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceAudit {
    pub rows: Vec<CycleRow>,
    pub pass: bool,
}

impl BalanceAudit {
    pub fn mismatches(&self) -> impl Iterator<Item = &CycleRow> {
        self.rows.iter().filter(|r| r.balanced != r.circuit)
    }
}

/// Compares "balanced" with "circuit of `m`" on every cycle of `gg`.
pub fn balanced_circuit_audit(m: &Matroid, gg: &GainGraph) -> Result<BalanceAudit> {
    if m.n() != gg.edge_count() {
        return Err(Error::Precondition("matroid is not on the edge set of the gain graph".into()));
    }
    let rows: Vec<CycleRow> = gg
        .cycles()
        .into_iter()
        .map(|c| CycleRow { cycle: c, balanced: gg.is_balanced(c).unwrap_or(false), circuit: m.is_circuit(c) })
        .collect();
    let pass = rows.iter().all(|r| r.balanced == r.circuit);
    Ok(BalanceAudit { rows, pass })
}

/// The rank-2 lift of `M(K_3^Γ)` together with its ingredients.
#[derive(Clone, Debug)]
pub struct Rank2Lift {
    pub graph: GainGraph,
    pub partition: GroupPartition,
    pub hyperplanes: HyperplaneFamily,
    /// Canonical switching form of `E_{A+ε}` for each part `A`, in part order.
    pub seeds: Vec<SubsetMask>,
    pub matroid: Matroid,
    pub graphic: Matroid,
    pub audit: BalanceAudit,
}

/// Hyperplanes: switchings of `E_{A+ε}` for each primitive part `A`, plus the
/// three sets of all edges between a vertex pair.
pub fn rank2_hyperplanes(gg: &GainGraph, partition: &GroupPartition) -> Result<(Vec<SubsetMask>, Vec<SubsetMask>)> {
    let eps = bit(gg.group().identity());
    let mut family = BTreeSet::new();
    let mut seeds = Vec::new();
    for &a in partition.parts() {
        let (canon, orbit) = switching_orbit(gg, gg.labelled(a | eps))?;
        seeds.push(canon);
        family.extend(orbit);
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        family.insert(gg.pair_edges(i, j));
    }
    Ok((family.into_iter().collect(), seeds))
}

pub fn rank2_lift_k3(group: &FinGroup) -> Result<Rank2Lift> {
    if group.order() > 8 {
        return Err(Error::TooLarge(format!("group order {} exceeds 8", group.order())));
    }
    let partition = primitive_partition(group)?.ok_or(Error::NoNontrivialPartition)?;
    let graph = full_gain_graph(group, 3)?;
    let (hs, seeds) = rank2_hyperplanes(&graph, &partition)?;
    let hyperplanes = HyperplaneFamily::new(hs, 4);
    let matroid = matroid_from_hyperplanes(&hyperplanes, GroundSet::new(graph.edge_count())?)?;
    let graphic = graphic_matroid(&graph)?;
    if matroid.full_rank() != graphic.full_rank() + 2 {
        return Err(Error::Internal("lift does not raise the rank by 2".into()));
    }
    if !is_quotient(&graphic, &matroid) {
        return Err(Error::Internal("graphic matroid is not a quotient of the lift".into()));
    }
    let audit = balanced_circuit_audit(&matroid, &graph)?;
    if !audit.pass {
        return Err(Error::Internal("a cycle's balance disagrees with its circuit status".into()));
    }
    Ok(Rank2Lift { graph, partition, hyperplanes, seeds, matroid, graphic, audit })
}

/// Number of edges of `set` joining each vertex pair.
pub fn pair_profile(gg: &GainGraph, set: SubsetMask) -> Vec<usize> {
    let k = gg.group().order();
    (0..gg.pairs.len())
        .map(|p| popcount(set & (crate::bits::full_mask(k) << (p * k))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: usize) -> FinGroup {
        FinGroup::cyclic(m).unwrap()
    }

    #[test]
    fn edge_counts() {
        assert_eq!(full_gain_graph(&z(2), 3).unwrap().edge_count(), 6);
        assert_eq!(full_gain_graph(&FinGroup::symmetric3(), 3).unwrap().edge_count(), 18);
        assert_eq!(full_gain_graph(&FinGroup::builtin("z2^2").unwrap(), 4).unwrap().edge_count(), 24);
        assert!(full_gain_graph(&z(8), 5).is_err());
    }

    #[test]
    fn balance_examples() {
        let gg = full_gain_graph(&z(3), 3).unwrap();
        let tri = |a, b, c| bit(gg.index(0, 1, a)) | bit(gg.index(1, 2, b)) | bit(gg.index(0, 2, c));
        assert_eq!(gg.is_balanced(tri(0, 0, 0)), Ok(true));
        assert_eq!(gg.is_balanced(tri(1, 1, 2)), Ok(true));
        assert_eq!(gg.is_balanced(tri(1, 1, 1)), Ok(false));
        let two = bit(gg.index(0, 1, 0)) | bit(gg.index(0, 1, 2));
        assert_eq!(gg.is_balanced(two), Ok(false));
        assert_eq!(gg.is_balanced(bit(0) | bit(3) | bit(4)), Err(Error::NotACycle));
    }

    #[test]
    fn switching_inverts() {
        let g = FinGroup::symmetric3();
        let gg = full_gain_graph(&g, 3).unwrap();
        let set = 0b101_100_011;
        assert_eq!(gg.switch(set, 1, g.identity()), set);
        for beta in 0..6 {
            let there = gg.switch(set, 1, beta);
            assert_eq!(gg.switch(there, 1, g.inv(beta)), set);
        }
    }

    #[test]
    fn graphic_counts() {
        let m = graphic_matroid(&full_gain_graph(&z(2), 3).unwrap()).unwrap();
        assert_eq!(m.circuits().len(), 3 + 8);
        assert_eq!(m.full_rank(), 2);
        let s3 = graphic_matroid(&full_gain_graph(&FinGroup::symmetric3(), 3).unwrap()).unwrap();
        assert_eq!(s3.circuits().len(), 45 + 216);
    }

    #[test]
    fn zaslavsky_on_z2() {
        let gg = full_gain_graph(&z(2), 3).unwrap();
        let lift = zaslavsky_lift(&gg).unwrap();
        assert_eq!(lift.full_rank(), 3);
        assert!(balanced_circuit_audit(&lift, &gg).unwrap().pass);
        let graphic = graphic_matroid(&gg).unwrap();
        assert!(!balanced_circuit_audit(&graphic, &gg).unwrap().pass);
    }

    #[test]
    fn z4_refused() {
        assert_eq!(rank2_lift_k3(&z(4)).unwrap_err(), Error::NoNontrivialPartition);
        assert_eq!(Error::NoNontrivialPartition.to_string(), "no nontrivial partition");
    }
}
