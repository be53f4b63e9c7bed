use matlift::bits::{full_mask, popcount};
use matlift::format::{emit_group, emit_lift, emit_matrix, emit_matroid, parse_group, parse_lift, parse_matrix, parse_matroid};
use matlift::gain::FinGroup;
use matlift::gf::{GfMatrix, PrimeField};
use matlift::lifts::LiftSpec;
use matlift::Matroid;
use proptest::prelude::*;

fn sparse_paving_strategy() -> impl Strategy<Value = Matroid> {
    (4usize..=8, 2usize..=4, proptest::collection::vec(any::<u64>(), 0..8)).prop_map(|(n, r, raw)| {
        let r = r.min(n - 1);
        let mut chs: Vec<u64> = Vec::new();
        for x in raw {
            // fold a random word into an r-subset of [n]
            let mut h = 0u64;
            let mut bits = x;
            while popcount(h) < r {
                h |= 1 << (bits % n as u64);
                bits = bits / n as u64 + 7;
            }
            if chs.iter().all(|&c| c != h && popcount(c & h) + 2 <= r) {
                chs.push(h);
            }
        }
        Matroid::sparse_paving(n, r, &chs).unwrap()
    })
}

proptest! {
    #[test]
    fn matroid_round_trip(m in sparse_paving_strategy()) {
        let text = emit_matroid(&m);
        let back = parse_matroid(&text).unwrap();
        prop_assert_eq!(&back, &m);
        prop_assert_eq!(emit_matroid(&back), text);
    }

    #[test]
    fn matrix_round_trip(p in prop::sample::select(vec![2u32, 3, 5, 7]), rows in 1usize..4, cols in 1usize..7, seed in any::<u64>()) {
        let entries: Vec<i64> = (0..rows * cols).map(|i| ((seed >> (i % 60)) % 11) as i64 - 5).collect();
        let a = GfMatrix::new(PrimeField::new(p).unwrap(), rows, cols, &entries).unwrap();
        prop_assert_eq!(parse_matrix(&emit_matrix(&a)).unwrap(), a);
    }

    #[test]
    fn lift_round_trip(m in sparse_paving_strategy(), loops in any::<u64>()) {
        prop_assume!(m.circuits().len() <= 64);
        let c = m.circuits().len();
        let overlay = Matroid::from_circuits(c, (0..c).filter(|i| loops >> i & 1 == 1).map(|i| 1u64 << i).collect()).unwrap();
        let spec = LiftSpec::new(m, overlay).unwrap();
        let back = parse_lift(&emit_lift(&spec)).unwrap();
        prop_assert_eq!(back.base(), spec.base());
        prop_assert_eq!(back.overlay(), spec.overlay());
    }
}

#[test]
fn builtin_groups_round_trip() {
    for name in ["z2", "z4", "z6", "z2^2", "z2^3", "z3^2", "d4", "d5", "s3", "q8"] {
        let g = FinGroup::builtin(name).unwrap();
        assert_eq!(parse_group(&emit_group(&g)).unwrap(), g, "{name}");
    }
}

#[test]
fn uniform_round_trips() {
    for n in 1..=7 {
        for r in 0..=n {
            let m = Matroid::uniform(r, n).unwrap();
            assert_eq!(parse_matroid(&emit_matroid(&m)).unwrap(), m);
        }
    }
    assert_eq!(full_mask(3), 0b111);
}
