use std::collections::HashSet;
use std::ops::ControlFlow;

use super::{is_isomorphic, IsoOutcome, Matroid, DEFAULT_ISO_BUDGET};
use crate::bits::{expand, subsets_of_size, SubsetMask};

/// A minor `M / contracted \ deleted`, both sets in the labels of `M`.
pub struct MinorWitness<'a> {
    pub contracted: SubsetMask,
    pub deleted: SubsetMask,
    pub minor: &'a Matroid,
}

/// Visits every minor of rank `r(M) - k` on `|E| - k - d` elements, written
/// as an independent contraction of size `k` followed by a coindependent
/// deletion of size `d`. Every such minor arises this way.
pub fn for_each_minor<F>(m: &Matroid, k: usize, d: usize, mut visit: F)
where
    F: FnMut(MinorWitness<'_>) -> ControlFlow<()>,
{
    if k > m.full_rank() || k + d > m.n() {
        return;
    }
    for a in subsets_of_size(m.n(), k) {
        if m.rank(a) != k {
            continue;
        }
        let con = m.contract_unchecked(a);
        let keep = m.ground().complement(a);
        let target_rank = con.full_rank();
        for dl in subsets_of_size(con.n(), d) {
            if con.rank(con.ground().complement(dl)) != target_rank {
                continue;
            }
            let minor = con.delete_unchecked(dl);
            let w = MinorWitness { contracted: a, deleted: expand(dl, keep), minor: &minor };
            if visit(w).is_break() {
                return;
            }
        }
    }
}

/// Whether some minor of `m` is isomorphic to `target`. With `proper`, the
/// trivial minor (nothing contracted or deleted) is excluded.
pub fn has_minor_isomorphic_to(m: &Matroid, target: &Matroid, proper: bool) -> bool {
    if target.n() > m.n() || target.full_rank() > m.full_rank() {
        return false;
    }
    let k = m.full_rank() - target.full_rank();
    let Some(d) = (m.n() - target.n()).checked_sub(k) else {
        return false;
    };
    if proper && k == 0 && d == 0 {
        return false;
    }
    let mut seen: HashSet<Vec<SubsetMask>> = HashSet::new();
    let mut found = false;
    for_each_minor(m, k, d, |w| {
        if !seen.insert(w.minor.circuits().to_vec()) {
            return ControlFlow::Continue(());
        }
        match is_isomorphic(w.minor, target, DEFAULT_ISO_BUDGET) {
            IsoOutcome::Isomorphic(_) => {
                found = true;
                ControlFlow::Break(())
            }
            _ => ControlFlow::Continue(()),
        }
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_minors() {
        let u24 = Matroid::uniform(2, 4).unwrap();
        let u13 = Matroid::uniform(1, 3).unwrap();
        assert!(has_minor_isomorphic_to(&u24, &u13, false));
        assert!(has_minor_isomorphic_to(&u24, &u24, false));
        assert!(!has_minor_isomorphic_to(&u24, &u24, true));
        let u02 = Matroid::uniform(0, 2).unwrap();
        assert!(has_minor_isomorphic_to(&u24, &u02, true));
        let u33 = Matroid::uniform(3, 3).unwrap();
        assert!(!has_minor_isomorphic_to(&u24, &u33, true));
    }

    #[test]
    fn minor_count_of_uniform() {
        let u35 = Matroid::uniform(3, 5).unwrap();
        let mut count = 0;
        for_each_minor(&u35, 1, 1, |w| {
            assert_eq!(w.minor.n(), 3);
            assert_eq!(w.minor.full_rank(), 2);
            assert_eq!(w.contracted & w.deleted, 0);
            count += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(count, 5 * 4);
    }
}
