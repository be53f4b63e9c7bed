//! Linear algebra over prime fields and the representable lift witness.
//!
//! Given a matrix `A` whose column matroid is `K` and an independent set `X`
//! of columns, the witness construction pivots the `X` columns to distinct
//! standard basis vectors, reads off `A_L` (drop the `X` columns) and `A_M`
//! (also drop the pivot rows), and builds the overlay `N` as the column
//! matroid of `B = [A_L x_C]` over the circuits `C` of `M = K/X`, where `x_C`
//! is the kernel vector of `A_M` supported on `C`.

use crate::bits::{bit, compress, elements, popcount, SubsetMask};
use crate::error::{Error, Result};
use crate::lifts::{build_lift, check_star_prime, same_rank_function, LiftSpec};
use crate::matroid::Matroid;

/// `GF(p)` for a prime `p <= 251`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        let prime = p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
        if !prime || p > 251 {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn order(self) -> u32 {
        self.p
    }

    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        a * b % self.p
    }

    pub fn neg(self, a: u32) -> u32 {
        (self.p - a) % self.p
    }

    /// Multiplicative inverse via Fermat; `a` must be nonzero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "zero has no inverse");
        let (mut base, mut exp, mut acc) = (a % self.p, self.p - 2, 1);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

/// Dense row-major matrix over a prime field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GfMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl GfMatrix {
    pub fn new(field: PrimeField, rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let data = entries.iter().map(|&v| field.reduce(v)).collect();
        Ok(GfMatrix { field, rows, cols, data })
    }

    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        GfMatrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = GfMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.field.p;
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Columns in `keep`, in increasing order.
    pub fn select_columns(&self, keep: SubsetMask) -> GfMatrix {
        let cols: Vec<usize> = elements(keep).filter(|&c| c < self.cols).collect();
        let mut out = GfMatrix::zeros(self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    /// Rows whose index is not in `drop`.
    pub fn delete_rows(&self, drop: &[usize]) -> GfMatrix {
        let keep: Vec<usize> = (0..self.rows).filter(|r| !drop.contains(r)).collect();
        let mut out = GfMatrix::zeros(self.field, keep.len(), self.cols);
        for (i, &r) in keep.iter().enumerate() {
            for c in 0..self.cols {
                out.set(i, c, self.get(r, c));
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[u32]) -> Vec<u32> {
        assert_eq!(x.len(), self.cols);
        let f = self.field;
        (0..self.rows)
            .map(|r| (0..self.cols).fold(0, |acc, c| f.add(acc, f.mul(self.get(r, c), x[c]))))
            .collect()
    }

    fn scale_row(&mut self, r: usize, s: u32) {
        for c in 0..self.cols {
            let v = self.field.mul(self.get(r, c), s);
            self.set(r, c, v);
        }
    }

    /// `row[target] -= s * row[source]`
    fn sub_row(&mut self, target: usize, source: usize, s: u32) {
        for c in 0..self.cols {
            let v = self.field.sub(self.get(target, c), self.field.mul(s, self.get(source, c)));
            self.set(target, c, v);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (GfMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.field.inv(m.get(row, col));
            m.scale_row(row, inv);
            for r in 0..m.rows {
                if r != row && m.get(r, col) != 0 {
                    let s = m.get(r, col);
                    m.sub_row(r, row, s);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn column_rank(&self, cols: SubsetMask) -> usize {
        self.select_columns(cols).rank()
    }

    /// A basis of the right kernel.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let (r, pivots) = self.rref();
        let f = self.field;
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![0; self.cols];
                v[free] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(i, free));
                }
                v
            })
            .collect()
    }
}

/// Incremental echelon basis that remembers how each basis row is written in
/// terms of the original vectors added so far.
#[derive(Clone)]
struct TrackedBasis {
    field: PrimeField,
    rows: Vec<(usize, Vec<u32>, Vec<u32>)>,
    members: usize,
}

impl TrackedBasis {
    fn new(field: PrimeField) -> Self {
        TrackedBasis { field, rows: Vec::new(), members: 0 }
    }

    /// Reduces `v`; returns the residual and the combination of members it
    /// subtracted (so `v = residual + sum combo[i] * member_i`).
    fn reduce(&self, v: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let f = self.field;
        let mut w = v.to_vec();
        let mut combo = vec![0; self.members];
        for (pivot, row, rc) in &self.rows {
            let s = w[*pivot];
            if s == 0 {
                continue;
            }
            for (wi, &ri) in w.iter_mut().zip(row) {
                *wi = f.sub(*wi, f.mul(s, ri));
            }
            for (ci, &ri) in combo.iter_mut().zip(rc) {
                *ci = f.add(*ci, f.mul(s, ri));
            }
        }
        (w, combo)
    }

    /// Adds a vector whose residual is nonzero.
    fn push(&self, residual: Vec<u32>, combo: Vec<u32>) -> TrackedBasis {
        let f = self.field;
        let pivot = residual.iter().position(|&x| x != 0).expect("nonzero residual");
        let inv = f.inv(residual[pivot]);
        // new member = residual + sum combo * old members, so
        // residual = new member - sum combo * old members
        let mut rc: Vec<u32> = combo.iter().map(|&c| f.neg(c)).collect();
        rc.push(1);
        let row: Vec<u32> = residual.iter().map(|&x| f.mul(x, inv)).collect();
        let rc: Vec<u32> = rc.iter().map(|&x| f.mul(x, inv)).collect();
        let mut rows: Vec<(usize, Vec<u32>, Vec<u32>)> = self
            .rows
            .iter()
            .map(|(p, r, c)| {
                let mut c = c.clone();
                c.push(0);
                (*p, r.clone(), c)
            })
            .collect();
        // keep rows reduced at the new pivot
        for (_, r, c) in rows.iter_mut() {
            let s = r[pivot];
            if s != 0 {
                for (ri, &ni) in r.iter_mut().zip(&row) {
                    *ri = f.sub(*ri, f.mul(s, ni));
                }
                for (ci, &ni) in c.iter_mut().zip(&rc) {
                    *ci = f.sub(*ci, f.mul(s, ni));
                }
            }
        }
        rows.push((pivot, row, rc));
        TrackedBasis { field: f, rows, members: self.members + 1 }
    }
}

/// Circuits of the column matroid: DFS over independent column sets in
/// increasing order; `I + e` (with `e > max I`) is a circuit iff `e` is
/// dependent on `I` with every coefficient nonzero.
fn column_circuits(a: &GfMatrix) -> Vec<SubsetMask> {
    let cols: Vec<Vec<u32>> = (0..a.cols).map(|c| a.column(c)).collect();
    let mut out = Vec::new();
    let mut members = Vec::new();
    fn dfs(
        cols: &[Vec<u32>],
        start: usize,
        basis: &TrackedBasis,
        members: &mut Vec<usize>,
        out: &mut Vec<SubsetMask>,
    ) {
        for e in start..cols.len() {
            let (residual, combo) = basis.reduce(&cols[e]);
            if residual.iter().any(|&x| x != 0) {
                let next = basis.push(residual, combo);
                members.push(e);
                dfs(cols, e + 1, &next, members, out);
                members.pop();
            } else if combo.iter().all(|&c| c != 0) {
                out.push(members.iter().fold(bit(e), |acc, &m| acc | bit(m)));
            }
        }
    }
    dfs(&cols, 0, &TrackedBasis::new(a.field), &mut members, &mut out);
    out
}

pub fn column_matroid(a: &GfMatrix) -> Result<Matroid> {
    if a.cols > 64 {
        return Err(Error::GroundTooLarge(a.cols));
    }
    Ok(Matroid::from_circuits_unchecked(a.cols, column_circuits(a)))
}

/// The kernel vector of `a_m` supported exactly on the circuit `c`,
/// normalized so its first nonzero entry is 1.
pub fn circuit_vector(a_m: &GfMatrix, c: SubsetMask) -> Result<Vec<u32>> {
    if c == 0 || c >> a_m.cols != 0 {
        return Err(Error::NotAColumnCircuit(c));
    }
    let sub = a_m.select_columns(c);
    let kernel = sub.kernel();
    if kernel.len() != 1 {
        return Err(Error::NotAColumnCircuit(c));
    }
    let k = &kernel[0];
    if k.contains(&0) {
        return Err(Error::NotAColumnCircuit(c));
    }
    let f = a_m.field;
    let inv = f.inv(k[0]);
    let mut v = vec![0; a_m.cols];
    for (i, e) in elements(c).enumerate() {
        v[e] = f.mul(k[i], inv);
    }
    Ok(v)
}

/// A represented matroid `K` (column matroid of `a`) with a column set `x`.
#[derive(Clone, Debug)]
pub struct WitnessProblem {
    pub a: GfMatrix,
    pub x: SubsetMask,
}

/// Everything produced by [`lift_witness`].
#[derive(Clone, Debug)]
pub struct LiftWitness {
    /// `A` after pivoting the `X` columns to standard basis vectors.
    pub pivoted: GfMatrix,
    pub a_m: GfMatrix,
    pub a_l: GfMatrix,
    /// Columns `A_L x_C`, one per circuit of `M` in canonical order.
    pub b: GfMatrix,
    pub m: Matroid,
    pub l: Matroid,
    pub n: Matroid,
    pub spec: LiftSpec,
}

/// Replaces a dependent `X` by a basis `X'` of it, deleting the columns of
/// `X - X'`. Contraction and deletion of `X` in the original agree with those
/// of `X'` in the reduced matrix. Returns the reduced problem (with `X'`
/// renumbered) and the deleted columns.
pub fn independent_reduction(problem: &WitnessProblem) -> (WitnessProblem, SubsetMask) {
    let a = &problem.a;
    let mut basis = 0;
    for e in elements(problem.x) {
        if a.column_rank(basis | bit(e)) == popcount(basis) + 1 {
            basis |= bit(e);
        }
    }
    let dropped = problem.x & !basis;
    let keep = crate::bits::full_mask(a.cols) & !dropped;
    let reduced = WitnessProblem { a: a.select_columns(keep), x: compress(basis, keep) };
    (reduced, dropped)
}

pub fn lift_witness(problem: &WitnessProblem) -> Result<LiftWitness> {
    let a = &problem.a;
    let x = problem.x;
    if a.cols > 64 || x >> a.cols != 0 {
        return Err(Error::Dimension(format!("column set outside the {} columns", a.cols)));
    }
    if a.column_rank(x) != popcount(x) {
        return Err(Error::DependentColumns(x));
    }
    let f = a.field;
    let mut pivoted = a.clone();
    let mut used_rows: Vec<usize> = Vec::new();
    for col in elements(x) {
        let row = (0..pivoted.rows)
            .find(|r| !used_rows.contains(r) && pivoted.get(*r, col) != 0)
            .ok_or_else(|| Error::Internal("independent column lost its pivot".into()))?;
        let inv = f.inv(pivoted.get(row, col));
        pivoted.scale_row(row, inv);
        for r in 0..pivoted.rows {
            if r != row && pivoted.get(r, col) != 0 {
                let s = pivoted.get(r, col);
                pivoted.sub_row(r, row, s);
            }
        }
        used_rows.push(row);
    }
    let keep = crate::bits::full_mask(a.cols) & !x;
    let a_l = pivoted.select_columns(keep);
    let a_m = a_l.delete_rows(&used_rows);
    let m = column_matroid(&a_m)?;
    let l = column_matroid(&a_l)?;
    let count = m.circuits().len();
    if count > 64 {
        return Err(Error::TooManyCircuits(count));
    }
    let mut b = GfMatrix::zeros(f, a_l.rows, count);
    for (j, &c) in m.circuits().iter().enumerate() {
        let xc = circuit_vector(&a_m, c)?;
        for (r, v) in a_l.mul_vec(&xc).into_iter().enumerate() {
            b.set(r, j, v);
        }
    }
    let n = column_matroid(&b)?;
    let spec = LiftSpec::new(m.clone(), n.clone())?;
    if let Err(w) = check_star_prime(&spec) {
        return Err(Error::Internal(format!(
            "witness overlay fails the modular-pair condition at circuits {}, {}, {}",
            w.c1, w.c2, w.circuit
        )));
    }
    Ok(LiftWitness { pivoted, a_m, a_l, b, m, l, n, spec })
}

/// `true` iff `M^N` and `l` have the same rank on every subset.
pub fn verify_witness(spec: &LiftSpec, l: &Matroid) -> Result<bool> {
    let lift = build_lift(spec)?;
    Ok(same_rank_function(&lift, l))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn mat(p: u32, rows: usize, cols: usize, e: &[i64]) -> GfMatrix {
        GfMatrix::new(gf(p), rows, cols, e).unwrap()
    }

    #[test]
    fn field_checks() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(257).is_err());
        let f = gf(7);
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        assert_eq!(f.reduce(-1), 6);
    }

    #[test]
    fn rref_examples() {
        let id = GfMatrix::identity(gf(5), 3);
        assert_eq!(id.rref(), (id.clone(), vec![0, 1, 2]));
        let z = GfMatrix::zeros(gf(5), 2, 3);
        assert_eq!(z.rref(), (z.clone(), vec![]));
        let ones = mat(2, 2, 2, &[1, 1, 1, 1]);
        assert_eq!(ones.rref(), (mat(2, 2, 2, &[1, 1, 0, 0]), vec![0]));
    }

    #[test]
    fn column_matroid_examples() {
        let id = GfMatrix::identity(gf(3), 4);
        assert_eq!(column_matroid(&id).unwrap(), Matroid::free(4).unwrap());
        let a = mat(2, 2, 3, &[1, 0, 1, 0, 1, 1]);
        assert_eq!(column_matroid(&a).unwrap(), Matroid::uniform(2, 3).unwrap());
        let with_loop = mat(3, 1, 3, &[1, 0, 2]);
        let m = column_matroid(&with_loop).unwrap();
        assert_eq!(m.circuits(), &[0b010, 0b101]);
    }

    #[test]
    fn circuit_vectors() {
        assert_eq!(circuit_vector(&mat(2, 1, 2, &[1, 1]), 0b11).unwrap(), vec![1, 1]);
        assert_eq!(circuit_vector(&mat(3, 1, 2, &[1, 2]), 0b11).unwrap(), vec![1, 1]);
        assert!(circuit_vector(&GfMatrix::identity(gf(3), 2), 0b11).is_err());
    }

    #[test]
    fn u24_over_gf3_witness() {
        // columns e1, e2, e1+e2, e1+2e2 represent U(2,4) over GF(3)
        let a = mat(3, 2, 4, &[1, 0, 1, 1, 0, 1, 1, 2]);
        let w = lift_witness(&WitnessProblem { a, x: 0b0001 }).unwrap();
        assert_eq!(w.m, Matroid::uniform(1, 3).unwrap());
        assert_eq!(w.l, Matroid::uniform(2, 3).unwrap());
        assert_eq!(w.n.full_rank(), 1);
        assert!(verify_witness(&w.spec, &w.l).unwrap());
    }

    #[test]
    fn empty_x_gives_loop_overlay() {
        let a = mat(2, 2, 4, &[1, 0, 1, 1, 0, 1, 1, 0]);
        let w = lift_witness(&WitnessProblem { a: a.clone(), x: 0 }).unwrap();
        assert_eq!(w.n.full_rank(), 0);
        let k = column_matroid(&a).unwrap();
        assert_eq!(w.m, k);
        assert_eq!(w.l, k);
        assert!(verify_witness(&w.spec, &w.l).unwrap());
    }

    #[test]
    fn dependent_x_rejected_and_reduced() {
        let a = mat(2, 2, 3, &[1, 1, 0, 0, 0, 1]);
        let problem = WitnessProblem { a, x: 0b011 };
        assert!(matches!(lift_witness(&problem), Err(Error::DependentColumns(0b011))));
        let (reduced, dropped) = independent_reduction(&problem);
        assert_eq!(dropped, 0b010);
        assert_eq!(reduced.x, 0b01);
        assert!(lift_witness(&reduced).is_ok());
    }

    #[test]
    fn kernel_is_annihilated() {
        let a = mat(5, 2, 4, &[1, 2, 3, 4, 0, 1, 1, 2]);
        for v in a.kernel() {
            assert!(a.mul_vec(&v).iter().all(|&x| x == 0));
        }
        assert_eq!(a.kernel().len(), 2);
    }
}
