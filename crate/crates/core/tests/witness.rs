use matlift::bits::{bit, elements, full_mask, popcount};
use matlift::gf::{
    circuit_vector, column_matroid, independent_reduction, lift_witness, verify_witness, GfMatrix, PrimeField,
    WitnessProblem,
};
use matlift::lifts::check_star_prime;
use matlift::matroid::validate_circuits;
use matlift::{Error, Matroid};
use proptest::prelude::*;

fn matrix_strategy() -> impl Strategy<Value = (GfMatrix, u64)> {
    (prop::sample::select(vec![2u32, 3, 5, 7]), 1usize..=4, 1usize..=8)
        .prop_flat_map(|(p, rows, cols)| {
            (
                Just(p),
                Just(rows),
                Just(cols),
                proptest::collection::vec(0..p as i64, rows * cols),
                any::<u64>(),
            )
        })
        .prop_map(|(p, rows, cols, entries, xbits)| {
            let a = GfMatrix::new(PrimeField::new(p).unwrap(), rows, cols, &entries).unwrap();
            // at most two columns
            let x = elements(xbits & full_mask(cols)).take(2).fold(0, |acc, e| acc | bit(e));
            (a, x)
        })
}

/// Rank of every column subset by direct elimination.
fn brute_rank_agrees(a: &GfMatrix, m: &Matroid) -> bool {
    (0..1u64 << a.cols()).all(|s| a.column_rank(s) == m.rank(s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn column_matroid_matches_elimination((a, _x) in matrix_strategy()) {
        let m = column_matroid(&a).unwrap();
        prop_assert_eq!(validate_circuits(m.circuits(), m.ground()), Ok(()));
        prop_assert!(brute_rank_agrees(&a, &m));
    }

    #[test]
    fn kernel_vectors_are_annihilated((a, _x) in matrix_strategy()) {
        for v in a.kernel() {
            prop_assert!(a.mul_vec(&v).iter().all(|&x| x == 0));
        }
        prop_assert_eq!(a.kernel().len() + a.rank(), a.cols());
    }

    #[test]
    fn circuit_vectors_have_circuit_support((a, _x) in matrix_strategy()) {
        let m = column_matroid(&a).unwrap();
        for &c in m.circuits() {
            let v = circuit_vector(&a, c).unwrap();
            let support = v.iter().enumerate().filter(|(_, &x)| x != 0).fold(0u64, |acc, (i, _)| acc | bit(i));
            prop_assert_eq!(support, c);
            prop_assert!(a.mul_vec(&v).iter().all(|&x| x == 0));
            prop_assert_eq!(v[c.trailing_zeros() as usize], 1);
        }
    }

    #[test]
    fn witness_reproduces_the_lift((a, x) in matrix_strategy()) {
        let problem = WitnessProblem { a: a.clone(), x };
        let (problem, _) = independent_reduction(&problem);
        let w = match lift_witness(&problem) {
            Err(Error::TooManyCircuits(_)) => return Ok(()),
            other => other.unwrap(),
        };
        let k = column_matroid(&problem.a).unwrap();
        prop_assert_eq!(&w.m, &k.contract(problem.x).unwrap());
        prop_assert_eq!(&w.l, &k.delete(problem.x).unwrap());
        prop_assert!(check_star_prime(&w.spec).is_ok());
        prop_assert!(verify_witness(&w.spec, &w.l).unwrap());
        prop_assert_eq!(w.n.n(), w.m.circuits().len());
        prop_assert!(w.n.full_rank() <= popcount(problem.x));
    }
}

#[test]
fn dependent_set_reduction_preserves_minors() {
    // columns: e1, e1, e2, e1+e2 over GF(3); X = {0, 1} is dependent
    let a = GfMatrix::new(PrimeField::new(3).unwrap(), 2, 4, &[1, 1, 0, 1, 0, 0, 1, 1]).unwrap();
    let k = column_matroid(&a).unwrap();
    let (reduced, dropped) = independent_reduction(&WitnessProblem { a, x: 0b0011 });
    assert_eq!(dropped, 0b0010);
    let k2 = column_matroid(&reduced.a).unwrap();
    assert_eq!(k2.contract(reduced.x).unwrap(), k.contract(0b0011).unwrap());
    assert_eq!(k2.delete(reduced.x).unwrap(), k.delete(0b0011).unwrap());
}

fn gf2_example() -> GfMatrix {
    // e1, e2, then e1+e2, e1+e3, e2+e3, e1+e2+e3
    GfMatrix::new(
        PrimeField::new(2).unwrap(),
        3,
        6,
        &[1, 0, 1, 1, 0, 1, 0, 1, 1, 0, 1, 1, 0, 0, 0, 1, 1, 1],
    )
    .unwrap()
}

#[test]
fn gf2_example_witness() {
    let problem = WitnessProblem { a: gf2_example(), x: 0b11 };
    let w = lift_witness(&problem).unwrap();
    let k = column_matroid(&problem.a).unwrap();
    assert_eq!(w.m, k.contract(0b11).unwrap());
    assert_eq!(w.l, k.delete(0b11).unwrap());
    assert_eq!(w.l.full_rank() - w.m.full_rank(), w.n.full_rank());
    assert!(verify_witness(&w.spec, &w.l).unwrap());
}

#[test]
fn rescaling_circuit_vectors_keeps_the_overlay() {
    let a = GfMatrix::new(PrimeField::new(5).unwrap(), 3, 6, &[1, 0, 2, 3, 1, 4, 0, 1, 1, 2, 3, 3, 1, 1, 0, 4, 2, 1]).unwrap();
    let w = lift_witness(&WitnessProblem { a, x: 0b1 }).unwrap();
    let f = w.b.field();
    let mut scaled = w.b.clone();
    for c in 0..scaled.cols() {
        let s = (c as u32 % 4) + 1;
        for r in 0..scaled.rows() {
            scaled.set(r, c, f.mul(s, w.b.get(r, c)));
        }
    }
    assert_eq!(column_matroid(&scaled).unwrap(), w.n);
}

#[test]
fn loop_overlay_fails_when_the_lift_is_proper() {
    let w = lift_witness(&WitnessProblem { a: gf2_example(), x: 0b11 }).unwrap();
    assert_ne!(w.l, w.m);
    let c = w.m.circuits().len();
    let loops = Matroid::from_circuits(c, (0..c).map(bit).collect()).unwrap();
    let spec = matlift::lifts::LiftSpec::new(w.m.clone(), loops).unwrap();
    assert!(!verify_witness(&spec, &w.l).unwrap());
    assert!(verify_witness(&spec, &w.m).unwrap());
}
