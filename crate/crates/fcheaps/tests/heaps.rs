use std::collections::{BTreeSet, VecDeque};

use fcheaps::coxeter::{commutation_class, is_fc_reduced, CoxeterSpec, Word};
use fcheaps::reduction::{reduce, reduce_random};
use fcheaps::tl::tau_alpha;
use fcheaps::Heap;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Every word reachable by braid moves of any order.
fn braid_class(spec: CoxeterSpec, w: &[u8]) -> BTreeSet<Vec<u8>> {
    let mut seen = BTreeSet::from([w.to_vec()]);
    let mut queue = VecDeque::from([w.to_vec()]);
    while let Some(u) = queue.pop_front() {
        for i in 0..u.len() {
            for j in i + 1..u.len() {
                let (s, t) = (u[i], u[j]);
                if s == t {
                    continue;
                }
                let m = spec.m(s, t) as usize;
                if m == 0 || i + m > u.len() {
                    continue;
                }
                let alt = |a, b| (0..m).map(move |p| if p % 2 == 0 { a } else { b });
                if !u[i..i + m].iter().copied().eq(alt(s, t)) {
                    continue;
                }
                let mut v = u.clone();
                v.splice(i..i + m, alt(t, s));
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
    }
    seen
}

fn fc_by_search(spec: CoxeterSpec, w: &[u8]) -> bool {
    let class = braid_class(spec, w);
    let reduced = class.iter().all(|u| u.windows(2).all(|p| p[0] != p[1]));
    let commutations = commutation_class(&Word::new(spec, w.to_vec()).unwrap()).unwrap();
    reduced && class == commutations
}

fn all_words(rank: u8, len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (1..=rank).map(move |s| {
                    let mut v = w.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
    }
    out
}

#[test]
fn fc_tests_agree_with_braid_search() {
    for spec in [CoxeterSpec::type_a(3), CoxeterSpec::ctilde(2)] {
        for len in 0..=6 {
            for w in all_words(spec.rank() as u8, len) {
                let want = fc_by_search(spec, &w);
                let word = Word::new(spec, w.clone()).unwrap();
                assert_eq!(is_fc_reduced(&word).unwrap(), want, "{w:?}");
                assert_eq!(Heap::from_letters(spec, &w).is_fc(), want, "{w:?}");
            }
        }
    }
}

fn ctilde_word() -> impl Strategy<Value = (usize, Vec<u8>)> {
    (2usize..=5).prop_flat_map(|n| (Just(n), prop::collection::vec(1u8..=(n as u8 + 1), 0..14)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn heap_fc_matches_stembridge((n, w) in ctilde_word()) {
        let spec = CoxeterSpec::ctilde(n);
        let word = Word::new(spec, w.clone()).unwrap();
        prop_assert_eq!(Heap::from_letters(spec, &w).is_fc(), is_fc_reduced(&word).unwrap());
    }

    #[test]
    fn fork_order_does_not_matter((n, w) in ctilde_word(), seed in any::<u64>()) {
        let spec = CoxeterSpec::ctilde(n);
        let h = Heap::from_letters(spec, &w);
        prop_assume!(h.is_fc());
        let oracle = tau_alpha(&h).unwrap();
        prop_assert_eq!(reduce(&h).unwrap(), oracle.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert_eq!(reduce_random(&h, &mut rng).unwrap(), oracle);
    }
}
