use std::collections::BTreeSet;

use proptest::prelude::*;
use txtex_core::agents::{exp_query_search, make_msd_pair, pow2_teacher_pair, query_bound};
use txtex_core::codec::{canonical_decode, canonical_encode, pair, unpair, PolyCode};
use txtex_core::descriptor::{build_descriptor, described_number, marker, Recognizer, Status};
use txtex_core::engine::{Budget, Text};
use txtex_core::families::registry::{ids, LearnerRegistry};
use txtex_core::families::{brute_min_index, make_basic_family, make_csd, make_msd, BasicKind, IndexedFamily, MarkerVariant};
use txtex_core::verify::verify_suite;
use txtex_core::Nat;

#[test]
fn module_suites_pass() {
    for s in ["engine", "families", "agents", "adversary"] {
        let summary = verify_suite(s).unwrap();
        assert!(summary.passed(), "{}", summary.render());
    }
}

proptest! {
    #[test]
    fn pairing_roundtrips(a in 0u128..1u128 << 60, b in 0u128..1u128 << 60) {
        let z = pair(a, b).unwrap();
        prop_assert_eq!(unpair(z), (a, b));
        prop_assert!(a <= z && b <= z);
    }

    #[test]
    fn canonical_codes_roundtrip(s in prop::collection::btree_set(0u128..120, 0..30)) {
        prop_assert_eq!(canonical_decode(canonical_encode(&s).unwrap()), s);
    }

    #[test]
    fn recognizer_fires_on_last_element(
        n in 0u128..5_000,
        floor in 0u128..50_000,
        markers in prop::collection::btree_set(0u128..40, 1..12),
        order in any::<u64>(),
    ) {
        let markers: BTreeSet<Nat> = markers.into_iter().map(|j| marker(j).unwrap()).collect();
        let d = build_descriptor(n, 0, floor, &markers).unwrap();
        prop_assert_eq!(described_number(&d).unwrap(), n);
        let mut els: Vec<Nat> = d.elements.iter().copied().collect();
        let mut rng = order;
        for i in (1..els.len()).rev() {
            rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            els.swap(i, (rng >> 33) as usize % (i + 1));
        }
        let mut r = Recognizer::new(0);
        for (k, &x) in els.iter().enumerate() {
            let s = r.push(x);
            if k + 1 < els.len() {
                prop_assert_eq!(s, Status::Partial);
            } else {
                prop_assert_eq!(s, Status::Complete(n));
            }
        }
        // Repeats are ignored after completion.
        prop_assert_eq!(r.push(els[0]), Status::Ignored);
    }

    #[test]
    fn exp_search_is_exact(n in 0u128..1u128 << 40, base in 2u128..5) {
        let (found, q) = exp_query_search(&mut |x| x <= n, base);
        prop_assert_eq!(found, n);
        prop_assert!(q as Nat <= query_bound(n, base));
    }

    #[test]
    fn analytic_min_index_matches_brute_force(n in 0u128..400) {
        for kind in [BasicKind::PairIntervals, BasicKind::FiniteCanonical, BasicKind::TupleContents(2)] {
            let f = make_basic_family(kind);
            prop_assert_eq!(f.min_index(n).unwrap(), brute_min_index(&f, n).unwrap());
        }
        let csd = make_csd();
        if n < 60 {
            prop_assert_eq!(csd.min_index(n).unwrap(), brute_min_index(&csd, n).unwrap());
        }
    }

    #[test]
    fn sessions_are_deterministic(n in 0u128..8, seed in any::<u64>()) {
        let f = make_basic_family(BasicKind::Pow2);
        let t = f.member(n).unwrap();
        let text = Text::seeded(t, seed).unwrap();
        let b = Budget::for_size(1 + (1 << n));
        prop_assert_eq!(pow2_teacher_pair().run(None, &text, &b).to_jsonl(), pow2_teacher_pair().run(None, &text, &b).to_jsonl());
    }

    #[test]
    fn msd_pair_learns_any_text(n in 0u128..60, seed in any::<u64>()) {
        let reg = LearnerRegistry::standard();
        let f = make_msd(&reg, ids::CSD_ORACLE, PolyCode(19), MarkerVariant::Single).unwrap();
        let t = f.member(n).unwrap();
        let size = t.finite_elements().map_or(0, |e| e.len()) + n as usize;
        let text = Text::seeded(t, seed).unwrap();
        let tr = make_msd_pair().run(None, &text, &Budget::new(1_000_000, 3 * size + 64, size + 16));
        prop_assert_eq!(tr.final_hypothesis(), Some(n));
    }
}
