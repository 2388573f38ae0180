use nwalk_sumset::{frobenius_number, IntSet, SumsetType};
use proptest::prelude::*;

fn small_set() -> impl Strategy<Value = IntSet> {
    prop::collection::vec(-10i64..=10, 0..=6).prop_map(IntSet::new)
}

fn nonempty_set() -> impl Strategy<Value = IntSet> {
    prop::collection::vec(-10i64..=10, 1..=6).prop_map(IntSet::new)
}

fn subset_of(bits: u32, width: u32) -> IntSet {
    IntSet::new((0..width as i64).filter(|i| bits >> i & 1 == 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn sumset_is_commutative(s in small_set(), t in small_set()) {
        prop_assert_eq!(s.sumset(&t), t.sumset(&s));
    }

    #[test]
    fn sumset_is_associative(s in small_set(), t in small_set(), r in small_set()) {
        prop_assert_eq!(s.sumset(&t).sumset(&r), s.sumset(&t.sumset(&r)));
    }

    #[test]
    fn identity_and_absorbing(s in small_set()) {
        prop_assert_eq!(s.sumset(&IntSet::singleton(0)), s.clone());
        prop_assert_eq!(s.sumset(&IntSet::empty()), IntSet::empty());
    }

    #[test]
    fn size_and_norm_bounds(s in nonempty_set(), t in nonempty_set()) {
        let st = s.sumset(&t);
        prop_assert!(st.len() <= s.len() * t.len());
        prop_assert_eq!(st.norm(), s.norm() + t.norm());
    }

    #[test]
    fn conjugate_is_involution(s in small_set()) {
        prop_assert_eq!(s.conjugate().conjugate(), s);
    }

    #[test]
    fn packing_is_faithful(s in small_set(), t in small_set()) {
        prop_assert_eq!(s.pack().unpack(), s.clone());
        prop_assert_eq!(s.pack() == t.pack(), s == t);
    }

    #[test]
    fn normalized_type_agrees_past_threshold(
        g in 1i64..=4,
        k in 0i64..=3,
        a in prop::collection::vec(0i64..=5, 0..=2),
        b in prop::collection::vec(0i64..=6, 0..=3),
        c in prop::collection::vec(0i64..=5, 0..=2),
    ) {
        let mut b = IntSet::new(b);
        b = IntSet::new(b.iter().chain([0]));
        let t = SumsetType::new(g, k, IntSet::new(a), b, IntSet::new(c)).unwrap();
        let (p, threshold) = t.normalize().unwrap();
        prop_assert!(p.is_proper(), "{:?}", p);
        for j in threshold.max(t.k)..threshold.max(t.k) + 12 {
            let inst = t.raw_instance(j, 3);
            if inst.is_empty() {
                continue;
            }
            prop_assert!(p.member(&inst), "index {} of {:?}: {} not in {:?}", j, t, inst, p);
        }
    }
}

#[test]
fn pruning_conjugation_duality_exhaustive() {
    // conj(s) ⊎− t is a translate of conj(s ⊖ t), for all s, t within [0, 8]
    for sb in 1u32..(1 << 9) {
        let s = subset_of(sb, 9);
        for tb in 0u32..(1 << 9) {
            let t = subset_of(tb, 9);
            let lhs = s.conjugate().prune_bottom(&t);
            let rhs = s.prune_top(&t).conjugate();
            assert!(lhs.equivalent(&rhs), "s={s} t={t}: {lhs} vs {rhs}");
        }
    }
}

fn representable_up_to(gens: &[i64], bound: i64) -> Vec<bool> {
    // Independent oracle: enumerate combinations by unbounded knapsack over coins.
    let mut rep = vec![false; bound as usize + 1];
    rep[0] = true;
    for &gen in gens {
        for v in gen..=bound {
            if rep[(v - gen) as usize] {
                rep[v as usize] = true;
            }
        }
    }
    rep
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

#[test]
fn frobenius_matches_representability_table() {
    let mut checked = 0;
    for x in 1..=12i64 {
        for y in x + 1..=12 {
            for z in std::iter::once(None).chain((y + 1..=12).map(Some)) {
                let gens: Vec<i64> = [Some(x), Some(y), z].into_iter().flatten().collect();
                if gens.iter().fold(0, |acc, &v| gcd(acc, v)) != 1 {
                    continue;
                }
                let top = *gens.last().unwrap();
                let rep = representable_up_to(&gens, top * top);
                let expected = rep.iter().rposition(|&r| !r).map_or(-1, |p| p as i64);
                let got = frobenius_number(&gens.iter().copied().collect()).unwrap();
                assert_eq!(got, expected, "{gens:?}");
                checked += 1;
            }
        }
    }
    assert!(checked > 200);
}
