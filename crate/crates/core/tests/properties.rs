use delcode::editops::{apply, compose, script_from_pair, EditOp, EditScript};
use delcode::graph::DeletionGraph;
use delcode::lcsscs::{lcs_len, lcs_set, phi, phi_invert, scs_count, scs_len};
use delcode::{packed, Word};
use proptest::prelude::*;

fn dp_lcs(u: &[u8], v: &[u8]) -> usize {
    let mut prev = vec![0usize; v.len() + 1];
    for &a in u {
        let mut cur = vec![0usize; v.len() + 1];
        for (j, &b) in v.iter().enumerate() {
            cur[j + 1] = if a == b {
                prev[j] + 1
            } else {
                prev[j + 1].max(cur[j])
            };
        }
        prev = cur;
    }
    prev[v.len()]
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0u8..2, 0..=max).prop_map(Word::from_bits)
}

/// A valid script on a word of length `n`: at each position, right to left,
/// an optional insertion followed by an optional deletion.
fn script(n: usize) -> impl Strategy<Value = EditScript> {
    prop::collection::vec(
        (prop::option::of(0u8..2), prop::bool::weighted(0.25)),
        n + 1,
    )
    .prop_map(move |slots| {
        let mut ops = Vec::new();
        for (p, (ins, del)) in slots.into_iter().enumerate().rev() {
            if let Some(bit) = ins.filter(|_| p % 3 == 0) {
                ops.push(EditOp::ins(p, bit));
            }
            if del && p >= 1 {
                ops.push(EditOp::del(p));
            }
        }
        EditScript::new(n, ops)
    })
}

proptest! {
    #[test]
    fn bit_parallel_lcs_matches_dp(a in any::<u64>(), b in any::<u64>(), m in 0usize..=63, n in 0usize..=63) {
        let u = Word::from_index(a & ((1u64 << m) - 1), m);
        let v = Word::from_index(b & ((1u64 << n) - 1), n);
        let expect = dp_lcs(&u.to_vec(), &v.to_vec());
        prop_assert_eq!(packed::lcs_len(u.to_index(), m, v.to_index(), n), expect);
        prop_assert_eq!(lcs_len(&u, &v), expect);
    }

    #[test]
    fn symmetric_quantities(u in word(12), v in word(12)) {
        prop_assert_eq!(lcs_len(&u, &v), lcs_len(&v, &u));
        prop_assert_eq!(scs_len(&u, &v), scs_len(&v, &u));
        prop_assert_eq!(scs_count(&u, &v), scs_count(&v, &u));
        prop_assert_eq!(lcs_set(&u, &v).unwrap().count, lcs_set(&v, &u).unwrap().count);
    }

    #[test]
    fn derived_script_round_trip(u in word(10), v in word(10)) {
        let s = script_from_pair(&u, &v);
        let l = lcs_len(&u, &v);
        prop_assert!(s.validate());
        prop_assert_eq!(apply(&u, &s).unwrap(), v.clone());
        prop_assert_eq!(s.deletions(), u.len() - l);
        prop_assert_eq!(s.insertions(), v.len() - l);
    }

    #[test]
    fn composition_matches_double_application(
        u in prop::collection::vec(0u8..2, 10).prop_map(Word::from_bits),
        s1 in script(10),
        seed in any::<u64>(),
    ) {
        prop_assert!(s1.validate());
        let mid = apply(&u, &s1).unwrap();
        // Second script derived from mid towards a word determined by the seed.
        let target = Word::from_index(seed & ((1u64 << mid.len().min(63)) - 1), mid.len().min(63));
        let s2 = script_from_pair(&mid, &target);
        let s3 = compose(&u, &s1, &s2).unwrap();
        prop_assert!(s3.validate());
        prop_assert!(s3.len() <= s1.len() + s2.len());
        prop_assert_eq!(apply(&u, &s3).unwrap(), apply(&mid, &s2).unwrap());
    }

    #[test]
    fn random_scripts_compose(u in prop::collection::vec(0u8..2, 6).prop_map(Word::from_bits), s1 in script(6), s2_seed in 0usize..4) {
        let mid = apply(&u, &s1).unwrap();
        let s2 = match s2_seed {
            0 => EditScript::empty(mid.len()),
            _ if mid.is_empty() => EditScript::empty(0),
            k => EditScript::new(mid.len(), vec![EditOp::del(1 + (k * 7) % mid.len())]),
        };
        let s3 = compose(&u, &s1, &s2).unwrap();
        prop_assert_eq!(apply(&u, &s3).unwrap(), apply(&mid, &s2).unwrap());
    }

    #[test]
    fn phi_round_trip(u in word(9), v in word(9)) {
        for w in lcs_set(&u, &v).unwrap().iter() {
            let y = phi(&u, &v, w).unwrap();
            prop_assert_eq!(y.len(), scs_len(&u, &v));
            prop_assert_eq!(&phi_invert(&u, &v, &y).unwrap(), w);
        }
    }

    #[test]
    fn adjacency_symmetric(a in 0u64..1024, b in 0u64..1024, k in 1usize..=4) {
        let g = DeletionGraph::new(10, k).unwrap();
        let (u, v) = (Word::from_index(a, 10), Word::from_index(b, 10));
        prop_assert_eq!(g.adjacent(&u, &v).unwrap(), g.adjacent(&v, &u).unwrap());
        let wider = DeletionGraph::new(10, k + 1).unwrap();
        prop_assert!(!g.adjacent(&u, &v).unwrap() || wider.adjacent(&u, &v).unwrap());
    }

    #[test]
    fn word_text_round_trip(u in word(140)) {
        let text = u.to_string();
        prop_assert_eq!(Word::parse(&text).unwrap(), u.clone());
        let json = serde_json::to_string(&u).unwrap();
        prop_assert_eq!(serde_json::from_str::<Word>(&json).unwrap(), u);
    }

    #[test]
    fn index_order_is_lexicographic(a in 0u64..4096, b in 0u64..4096) {
        let (u, v) = (Word::from_index(a, 12), Word::from_index(b, 12));
        prop_assert_eq!(a.cmp(&b), u.cmp(&v));
        prop_assert_eq!(u.to_index(), a);
    }
}
