use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::bits::{bit, elements, is_subset, popcount, SubsetMask};
use crate::error::{Error, Result};

pub const MAX_GROUP_ORDER: usize = 64;

/// A finite group given by its Cayley table: `mul(g, h) = table[g][h] = g·h`.
#[derive(Clone, PartialEq, Eq)]
pub struct FinGroup {
    names: Vec<String>,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl fmt::Debug for FinGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinGroup(order {}, {:?})", self.order(), self.names)
    }
}

/// Checks closure, identity, inverses and associativity.
pub fn group_from_table(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<FinGroup> {
    let k = names.len();
    if k == 0 {
        return Err(Error::GroupAxiom("empty group".into()));
    }
    if k > MAX_GROUP_ORDER {
        return Err(Error::TooLarge(format!("group order {k} exceeds {MAX_GROUP_ORDER}")));
    }
    let distinct: HashSet<&String> = names.iter().collect();
    if distinct.len() != k {
        return Err(Error::GroupAxiom("element names are not distinct".into()));
    }
    if table.len() != k || table.iter().any(|row| row.len() != k) {
        return Err(Error::GroupAxiom(format!("Cayley table is not {k}x{k}")));
    }
    if let Some((g, h)) = (0..k).flat_map(|g| (0..k).map(move |h| (g, h))).find(|&(g, h)| table[g][h] >= k) {
        return Err(Error::GroupAxiom(format!("{}·{} is not an element", names[g], names[h])));
    }
    let identity = (0..k)
        .find(|&e| (0..k).all(|x| table[e][x] == x && table[x][e] == x))
        .ok_or_else(|| Error::GroupAxiom("no identity element".into()))?;
    let mut inverse = Vec::with_capacity(k);
    for g in 0..k {
        let inv = (0..k)
            .find(|&h| table[g][h] == identity && table[h][g] == identity)
            .ok_or_else(|| Error::GroupAxiom(format!("{} has no inverse", names[g])))?;
        inverse.push(inv);
    }
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(Error::GroupAxiom(format!(
                        "associativity fails for ({}, {}, {})",
                        names[a], names[b], names[c]
                    )));
                }
            }
        }
    }
    Ok(FinGroup { names, table: table.concat(), identity, inverse })
}

fn from_rule(names: Vec<String>, mul: impl Fn(usize, usize) -> usize) -> FinGroup {
    let k = names.len();
    let table = (0..k).map(|a| (0..k).map(|b| mul(a, b)).collect()).collect();
    group_from_table(names, table).expect("builtin group tables are groups")
}

impl FinGroup {
    pub fn cyclic(m: usize) -> Result<FinGroup> {
        if m == 0 || m > MAX_GROUP_ORDER {
            return Err(Error::Precondition(format!("cyclic group order {m} out of range")));
        }
        Ok(from_rule((0..m).map(|a| a.to_string()).collect(), |a, b| (a + b) % m))
    }

    /// `Z_p^j`, elements written as dot-separated coordinate tuples.
    pub fn elementary_abelian(p: usize, j: usize) -> Result<FinGroup> {
        let order = (0..j).try_fold(1usize, |acc, _| acc.checked_mul(p)).unwrap_or(usize::MAX);
        let prime = p >= 2 && (2..p).all(|d| !p.is_multiple_of(d));
        if !prime || j == 0 || order > MAX_GROUP_ORDER {
            return Err(Error::Precondition(format!("Z_{p}^{j} out of range")));
        }
        let digits = |mut a: usize| {
            let mut d = vec![0; j];
            for slot in d.iter_mut() {
                *slot = a % p;
                a /= p;
            }
            d
        };
        let names = (0..order)
            .map(|a| digits(a).iter().rev().map(|x| x.to_string()).collect::<Vec<_>>().join("."))
            .collect();
        Ok(from_rule(names, |a, b| {
            let (da, db) = (digits(a), digits(b));
            (0..j).rev().fold(0, |acc, i| acc * p + (da[i] + db[i]) % p)
        }))
    }

    /// Dihedral group of order `2m`; element `b*m + a` is `r^a s^b`.
    pub fn dihedral(m: usize) -> Result<FinGroup> {
        if m < 2 || 2 * m > MAX_GROUP_ORDER {
            return Err(Error::Precondition(format!("D_{m} out of range")));
        }
        let name = |a: usize, b: usize| {
            let rot = match a {
                0 => String::new(),
                1 => "r".to_string(),
                _ => format!("r{a}"),
            };
            match (b, rot.is_empty()) {
                (0, true) => "e".to_string(),
                (0, false) => rot,
                (_, _) => format!("{rot}s"),
            }
        };
        let names = (0..2 * m).map(|x| name(x % m, x / m)).collect();
        Ok(from_rule(names, |x, y| {
            let (a, b, c, d) = (x % m, x / m, y % m, y / m);
            let rot = if b == 0 { (a + c) % m } else { (a + m - c) % m };
            ((b + d) % 2) * m + rot
        }))
    }

    /// Permutations of `{1,2,3}` in one-line notation; `(g·h)(x) = g(h(x))`.
    pub fn symmetric3() -> FinGroup {
        let perms: [[usize; 3]; 6] = [[1, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1]];
        let names = perms.iter().map(|p| p.iter().map(|x| x.to_string()).collect()).collect();
        from_rule(names, |g, h| {
            let composed = [0, 1, 2].map(|x| perms[g][perms[h][x] - 1]);
            perms.iter().position(|p| *p == composed).unwrap()
        })
    }

    /// `{±1, ±i, ±j, ±k}`; element `2u + s` is `(-1)^s` times unit `u`.
    pub fn quaternion() -> FinGroup {
        const UNITS: [&str; 4] = ["1", "i", "j", "k"];
        // unit products as (unit, negated)
        const PROD: [[(usize, bool); 4]; 4] = [
            [(0, false), (1, false), (2, false), (3, false)],
            [(1, false), (0, true), (3, false), (2, true)],
            [(2, false), (3, true), (0, true), (1, false)],
            [(3, false), (2, false), (1, true), (0, true)],
        ];
        let names = (0..8)
            .map(|x| format!("{}{}", if x % 2 == 1 { "-" } else { "" }, UNITS[x / 2]))
            .collect();
        from_rule(names, |x, y| {
            let (u, neg) = PROD[x / 2][y / 2];
            let sign = (x % 2 + y % 2 + usize::from(neg)) % 2;
            2 * u + sign
        })
    }

    /// `z<m>`, `z<p>^<j>`, `d<m>`, `s3`, `q8`.
    pub fn builtin(name: &str) -> Result<FinGroup> {
        let bad = || Error::Precondition(format!("unknown builtin group '{name}'"));
        let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
        let lower = name.to_ascii_lowercase();
        if lower == "s3" {
            return Ok(FinGroup::symmetric3());
        }
        if lower == "q8" {
            return Ok(FinGroup::quaternion());
        }
        if let Some(rest) = lower.strip_prefix('z') {
            return match rest.split_once('^') {
                Some((p, j)) => FinGroup::elementary_abelian(num(p)?, num(j)?),
                None => FinGroup::cyclic(num(rest)?),
            };
        }
        if let Some(rest) = lower.strip_prefix('d') {
            return FinGroup::dihedral(num(rest)?);
        }
        Err(bad())
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order()).map(|r| r.to_vec()).collect()
    }

    /// `g · a · g⁻¹`
    pub fn conjugate(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn conjugate_set(&self, g: usize, set: SubsetMask) -> SubsetMask {
        elements(set).fold(0, |acc, a| acc | bit(self.conjugate(g, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != self.identity {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn all(&self) -> SubsetMask {
        crate::bits::full_mask(self.order())
    }

    /// Subgroup generated by a set of elements.
    pub fn generated(&self, gens: SubsetMask) -> SubsetMask {
        let mut h = gens | bit(self.identity);
        loop {
            let mut next = h;
            for a in elements(h) {
                for b in elements(gens) {
                    next |= bit(self.mul(a, b));
                }
            }
            if next == h {
                return h;
            }
            h = next;
        }
    }

    pub fn is_subgroup(&self, set: SubsetMask) -> bool {
        set & bit(self.identity) != 0
            && elements(set).all(|a| elements(set).all(|b| set & bit(self.mul(a, self.inv(b))) != 0))
    }

    /// All subgroups, ordered by size then mask.
    pub fn subgroups(&self) -> Vec<SubsetMask> {
        let mut found: BTreeSet<(usize, SubsetMask)> = BTreeSet::new();
        let mut queue: Vec<SubsetMask> = Vec::new();
        for a in 0..self.order() {
            let h = self.generated(bit(a));
            if found.insert((popcount(h), h)) {
                queue.push(h);
            }
        }
        while let Some(h) = queue.pop() {
            for a in elements(self.all() & !h) {
                let j = self.generated(h | bit(a));
                if found.insert((popcount(j), j)) {
                    queue.push(j);
                }
            }
        }
        found.into_iter().map(|(_, h)| h).collect()
    }

    pub fn format_set(&self, set: SubsetMask) -> String {
        let names: Vec<&str> = elements(set).map(|a| self.name(a)).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// A partition of the non-identity elements into parts `A` with `A + ε` a
/// subgroup. Parts are ordered by least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupPartition {
    parts: Vec<SubsetMask>,
}

impl GroupPartition {
    pub fn new(group: &FinGroup, mut parts: Vec<SubsetMask>) -> Result<Self> {
        let eps = bit(group.identity());
        let mut covered = 0;
        for &p in &parts {
            if p == 0 || p & eps != 0 || p & covered != 0 || !group.is_subgroup(p | eps) {
                return Err(Error::Precondition(format!("{} is not a valid part", group.format_set(p))));
            }
            covered |= p;
        }
        if covered != group.all() & !eps {
            return Err(Error::Precondition("parts do not cover the non-identity elements".into()));
        }
        parts.sort_unstable_by_key(|p| p.trailing_zeros());
        Ok(GroupPartition { parts })
    }

    pub fn parts(&self) -> &[SubsetMask] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_nontrivial(&self) -> bool {
        self.parts.len() >= 2
    }

    pub fn part_containing(&self, a: usize) -> Option<SubsetMask> {
        self.parts.iter().copied().find(|&p| p & bit(a) != 0)
    }

    /// Every part of `other` is a union of parts of `self`.
    pub fn refines(&self, other: &GroupPartition) -> bool {
        self.parts.iter().all(|&p| other.parts.iter().any(|&q| is_subset(p, q)))
    }

    /// `γ·A·γ⁻¹` is again a part for every part `A` and every `γ`.
    pub fn is_conjugation_closed(&self, group: &FinGroup) -> bool {
        (0..group.order()).all(|g| self.parts.iter().all(|&a| self.parts.contains(&group.conjugate_set(g, a))))
    }
}

/// All nontrivial partitions, by exact cover of the non-identity elements
/// with sets `H - ε` for proper nontrivial subgroups `H`.
pub fn group_partitions(group: &FinGroup) -> Vec<GroupPartition> {
    let eps = bit(group.identity());
    let target = group.all() & !eps;
    let blocks: Vec<SubsetMask> = group
        .subgroups()
        .into_iter()
        .filter(|&h| h != eps && h != group.all())
        .map(|h| h & !eps)
        .collect();
    fn cover(
        target: SubsetMask,
        covered: SubsetMask,
        blocks: &[SubsetMask],
        chosen: &mut Vec<SubsetMask>,
        out: &mut Vec<Vec<SubsetMask>>,
    ) {
        let free = target & !covered;
        if free == 0 {
            out.push(chosen.clone());
            return;
        }
        let low = free & free.wrapping_neg();
        for &b in blocks {
            if b & low != 0 && b & covered == 0 {
                chosen.push(b);
                cover(target, covered | b, blocks, chosen, out);
                chosen.pop();
            }
        }
    }
    let mut raw = Vec::new();
    cover(target, 0, &blocks, &mut Vec::new(), &mut raw);
    raw.into_iter()
        .map(|parts| GroupPartition::new(group, parts).expect("exact cover yields a partition"))
        .collect()
}

/// The nontrivial partition refining every other one, if any partition
/// exists. Errors if none is universal or it is not conjugation-closed.
pub fn primitive_partition(group: &FinGroup) -> Result<Option<GroupPartition>> {
    let all = group_partitions(group);
    if all.is_empty() {
        return Ok(None);
    }
    let primitive = all
        .iter()
        .find(|p| all.iter().all(|q| p.refines(q)))
        .cloned()
        .ok_or_else(|| Error::Internal("no partition refines all others".into()))?;
    if !primitive.is_conjugation_closed(group) {
        return Err(Error::Internal("primitive partition is not closed under conjugation".into()));
    }
    Ok(Some(primitive))
}
