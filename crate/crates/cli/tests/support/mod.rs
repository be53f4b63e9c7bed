//! Random instance generators and brute-force oracles for the acceptance run.

#![allow(dead_code)]

use matlift::bits::{bit, elements, is_subset, popcount, SubsetMask};
use matlift::gain::FinGroup;
use matlift::gf::{column_matroid, GfMatrix, PrimeField, WitnessProblem};
use matlift::lifts::{overlay_for_class, LiftSpec, LinearClass};
use matlift::Matroid;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn matrix(rng: &mut StdRng, p: u32, rows: usize, cols: usize, zero_bias: f64) -> GfMatrix {
    let entries: Vec<i64> =
        (0..rows * cols).map(|_| if rng.gen_bool(zero_bias) { 0 } else { rng.gen_range(1..p as i64) }).collect();
    GfMatrix::new(PrimeField::new(p).unwrap(), rows, cols, &entries).unwrap()
}

/// A random represented `K` over GF(p), p in {2,3,5,7}, with at most 9
/// columns and a set `X` of at most two columns.
pub fn witness_problem(rng: &mut StdRng) -> WitnessProblem {
    let p = *[2u32, 3, 5, 7].choose(rng).unwrap();
    let rows = rng.gen_range(1..=4);
    let cols = rng.gen_range(1..=9);
    let a = matrix(rng, p, rows, cols, 0.3);
    let size = rng.gen_range(0..=2.min(cols));
    let mut picks: Vec<usize> = (0..cols).collect();
    picks.shuffle(rng);
    let x = picks[..size].iter().fold(0, |acc, &e| acc | bit(e));
    WitnessProblem { a, x }
}

/// A column matroid on at most `max_n` elements with between 1 and
/// `max_circuits` circuits.
pub fn base_matroid(rng: &mut StdRng, max_n: usize, max_circuits: usize) -> Matroid {
    loop {
        let p = *[2u32, 3].choose(rng).unwrap();
        let rows = rng.gen_range(2..=4);
        let cols = rng.gen_range(3..=max_n);
        let m = column_matroid(&matrix(rng, p, rows, cols, 0.35)).unwrap();
        let c = m.circuits().len();
        if (1..=max_circuits).contains(&c) {
            return m;
        }
    }
}

/// A lift spec `(M, N)` with `|E(M)| <= 8`. Overlays are random column
/// matroids on the circuits of `M`, or the rank-1 overlay of a random
/// linear class.
pub fn lift_spec(rng: &mut StdRng) -> LiftSpec {
    let m = base_matroid(rng, 8, 14);
    let c = m.circuits().len();
    let n = if rng.gen_bool(0.25) {
        let set = rng.gen::<u64>() & m.full();
        overlay_for_class(&m, &LinearClass::circuits_inside(&m, set)).unwrap()
    } else {
        let p = *[2u32, 3].choose(rng).unwrap();
        let rows = rng.gen_range(1..=3);
        let bias = *[0.2, 0.5, 0.8].choose(rng).unwrap();
        column_matroid(&matrix(rng, p, rows, c, bias)).unwrap()
    };
    LiftSpec::new(m, n).unwrap()
}

pub fn circuit_union_nullity(m: &Matroid, set: SubsetMask) -> usize {
    popcount(set) - m.rank(set)
}

/// Definition check: every modular pair of class members has all circuits
/// of its union in the class.
pub fn is_linear_class_oracle(m: &Matroid, members: &[bool]) -> bool {
    let cs = m.circuits();
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            if !(members[i] && members[j]) {
                continue;
            }
            let u = cs[i] | cs[j];
            if circuit_union_nullity(m, u) != 2 {
                continue;
            }
            if (0..cs.len()).any(|k| is_subset(cs[k], u) && !members[k]) {
                return false;
            }
        }
    }
    true
}

/// A random linear class: random circuit subsets that pass the oracle,
/// otherwise all circuits inside a random set.
pub fn linear_class(rng: &mut StdRng, m: &Matroid) -> (LinearClass, Vec<bool>) {
    let c = m.circuits().len();
    for _ in 0..20 {
        let members: Vec<bool> = (0..c).map(|_| rng.gen_bool(0.5)).collect();
        if is_linear_class_oracle(m, &members) {
            let idx: Vec<usize> = (0..c).filter(|&i| members[i]).collect();
            return (LinearClass::from_indices(m, &idx).unwrap(), members);
        }
    }
    let set = rng.gen::<u64>() & m.full();
    let members: Vec<bool> = m.circuits().iter().map(|&x| is_subset(x, set)).collect();
    (LinearClass::circuits_inside(m, set), members)
}

fn closure_contains(n: &Matroid, gens: SubsetMask, k: usize) -> bool {
    n.rank(gens | bit(k)) == n.rank(gens)
}

/// Perfect collection by definition: nullity of the union equals the size,
/// and no member lies inside the union of the others.
fn is_perfect_oracle(m: &Matroid, coll: SubsetMask) -> bool {
    let cs = m.circuits();
    let union = elements(coll).fold(0, |a, i| a | cs[i]);
    if circuit_union_nullity(m, union) != popcount(coll) {
        return false;
    }
    elements(coll).all(|i| {
        let others = elements(coll & !bit(i)).fold(0, |a, j| a | cs[j]);
        !is_subset(cs[i], others)
    })
}

/// The perfect-collection condition by enumerating every collection of at
/// least two circuits.
pub fn star_oracle(spec: &LiftSpec) -> bool {
    let m = spec.base();
    let cs = m.circuits();
    assert!(cs.len() <= 16);
    (1u64..1 << cs.len()).filter(|&coll| popcount(coll) >= 2).all(|coll| {
        if !is_perfect_oracle(m, coll) {
            return true;
        }
        let union = elements(coll).fold(0, |a, i| a | cs[i]);
        (0..cs.len()).all(|k| !is_subset(cs[k], union) || closure_contains(spec.overlay(), coll, k))
    })
}

/// The modular-pair condition by definition.
pub fn star_prime_oracle(spec: &LiftSpec) -> bool {
    let m = spec.base();
    let cs = m.circuits();
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            let u = cs[i] | cs[j];
            if circuit_union_nullity(m, u) != 2 {
                continue;
            }
            if (0..cs.len()).any(|k| is_subset(cs[k], u) && !closure_contains(spec.overlay(), bit(i) | bit(j), k)) {
                return false;
            }
        }
    }
    true
}

/// Rank axioms straight from the rank table: normalization, monotonicity,
/// unit increase, and submodularity over all pairs when `n <= 10` (the
/// local exchange form above that). Also checks that the listed circuits
/// are exactly the minimal dependent sets.
pub fn axiom_oracle(m: &Matroid) -> Result<(), String> {
    let n = m.n();
    if n > 20 {
        return Err(format!("n = {n} is beyond the exhaustive range"));
    }
    let r: Vec<u8> = (0..1u64 << n).map(|x| m.rank(x) as u8).collect();
    if r[0] != 0 {
        return Err("r(empty) != 0".into());
    }
    for x in 0..1usize << n {
        for e in 0..n {
            if x & (1 << e) != 0 {
                continue;
            }
            let y = x | 1 << e;
            if r[y] < r[x] || r[y] > r[x] + 1 {
                return Err(format!("unit increase fails at {x:#b} + {e}"));
            }
        }
    }
    if n <= 10 {
        for x in 0..1usize << n {
            for y in x + 1..1usize << n {
                if r[x | y] as usize + r[x & y] as usize > r[x] as usize + r[y] as usize {
                    return Err(format!("submodularity fails at {x:#b}, {y:#b}"));
                }
            }
        }
    } else {
        for x in 0..1usize << n {
            for a in 0..n {
                for b in a + 1..n {
                    if x & (1 << a | 1 << b) != 0 {
                        continue;
                    }
                    let (xa, xb) = (x | 1 << a, x | 1 << b);
                    if r[xa | xb] as usize + r[x] as usize > r[xa] as usize + r[xb] as usize {
                        return Err(format!("local submodularity fails at {x:#b}, {a}, {b}"));
                    }
                }
            }
        }
    }
    let dependent = |s: usize| (r[s] as usize) < s.count_ones() as usize;
    let minimal: Vec<SubsetMask> = (1..1usize << n)
        .filter(|&s| dependent(s) && (0..n).all(|e| s & (1 << e) == 0 || !dependent(s & !(1 << e))))
        .map(|s| s as SubsetMask)
        .collect();
    let mut listed = m.circuits().to_vec();
    listed.sort_unstable();
    if listed != minimal {
        return Err("circuits are not the minimal dependent sets of the rank function".into());
    }
    Ok(())
}

/// Every set partition of the non-identity elements whose parts close to
/// subgroups, by direct enumeration of set partitions.
pub fn partitions_oracle(g: &FinGroup) -> Vec<Vec<SubsetMask>> {
    let eps = g.identity();
    let items: Vec<usize> = (0..g.order()).filter(|&a| a != eps).collect();
    let closed = |part: SubsetMask| {
        let h = part | bit(eps);
        elements(h).all(|a| elements(h).all(|b| h & bit(g.mul(a, b)) != 0))
    };
    fn go(items: &[usize], blocks: &mut Vec<SubsetMask>, out: &mut Vec<Vec<SubsetMask>>) {
        let Some((&first, rest)) = items.split_first() else {
            out.push(blocks.clone());
            return;
        };
        for i in 0..blocks.len() {
            blocks[i] |= bit(first);
            go(rest, blocks, out);
            blocks[i] &= !bit(first);
        }
        blocks.push(bit(first));
        go(rest, blocks, out);
        blocks.pop();
    }
    let mut all = Vec::new();
    go(&items, &mut Vec::new(), &mut all);
    let mut out: Vec<Vec<SubsetMask>> = all
        .into_iter()
        .filter(|p| p.len() >= 2 && p.iter().all(|&b| closed(b)))
        .map(|mut p| {
            p.sort_by_key(|b| b.trailing_zeros());
            p
        })
        .collect();
    out.sort();
    out
}

/// `true` iff every part of `fine` lies inside a part of `coarse`.
pub fn refines(fine: &[SubsetMask], coarse: &[SubsetMask]) -> bool {
    fine.iter().all(|&a| coarse.iter().any(|&b| is_subset(a, b)))
}

/// Conjugation closure computed from the multiplication table.
pub fn conjugation_closed(g: &FinGroup, parts: &[SubsetMask]) -> bool {
    (0..g.order()).all(|x| {
        let xi = g.inv(x);
        parts.iter().all(|&p| {
            let conj = elements(p).fold(0, |acc, a| acc | bit(g.mul(g.mul(x, a), xi)));
            parts.contains(&conj)
        })
    })
}
