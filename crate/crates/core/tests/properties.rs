mod common;

use std::collections::BTreeSet;

use moduli_aut::cli::{build_report, ReportDocument};
use moduli_aut::finabel::{enumerate_subgroups, Element, FiniteAbelianGroup, IntegerMatrix};
use moduli_aut::groupclass::{enumerate_forms, SimplyConnected};
use moduli_aut::moduli::{delta_local, delta_total, RamificationEntry, RamificationProfile};
use moduli_aut::rational::RationalVector;
use moduli_aut::rootdata::{DynkinType, DEFAULT_MAX_RANK};
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

fn small_group() -> impl Strategy<Value = FiniteAbelianGroup> {
    let groups = common::groups_up_to(16);
    (0..groups.len()).prop_map(move |i| groups[i].clone())
}

fn any_type() -> impl Strategy<Value = DynkinType> {
    let types = DynkinType::all_up_to(DEFAULT_MAX_RANK);
    (0..types.len()).prop_map(move |i| types[i])
}

fn entry() -> impl Strategy<Value = RamificationEntry> {
    (0u64..=8, 0u64..=6).prop_map(|(drop, k)| RamificationEntry::new(drop + 2 * k, drop))
}

fn profile() -> impl Strategy<Value = RamificationProfile> {
    prop::collection::vec(entry(), 0..10).prop_map(RamificationProfile::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn smith_normal_form_round_trips(rows in matrix()) {
        let m = IntegerMatrix::from_rows(&rows);
        prop_assert!(common::check_smith(&m).is_ok(), "{:?}", common::check_smith(&m));
    }

    #[test]
    fn cokernel_order_is_the_determinant(rows in matrix()) {
        let n = rows.len().min(rows[0].len());
        let square: Vec<Vec<i64>> = rows.iter().take(n).map(|r| r[..n].to_vec()).collect();
        let m = IntegerMatrix::from_rows(&square);
        let det = m.determinant();
        let product = moduli_aut::finabel::smith_normal_form(&m)
            .diagonal()
            .into_iter()
            .fold(num_bigint::BigInt::from(1), |acc, d| acc * d);
        prop_assert_eq!(num_traits::Signed::abs(&det), product);
    }

    #[test]
    fn subgroups_match_brute_force(g in small_group()) {
        let ours: BTreeSet<BTreeSet<Element>> = enumerate_subgroups(&g).iter().map(|h| h.elements().clone()).collect();
        prop_assert_eq!(ours, common::brute_force_subgroups(&g));
    }

    #[test]
    fn subgroup_orders_divide(g in small_group()) {
        for h in enumerate_subgroups(&g) {
            prop_assert_eq!(g.order() % h.order(), 0);
            prop_assert_eq!(h.isomorphism_type().order(), h.order());
        }
    }

    #[test]
    fn delta_is_additive(p in profile(), q in profile()) {
        let (dp, dq) = (delta_total(&p).unwrap(), delta_total(&q).unwrap());
        prop_assert_eq!(delta_total(&p.union(&q)).unwrap(), dp + dq);
    }

    #[test]
    fn delta_vanishes_exactly_on_transversal_profiles(p in profile()) {
        let zero = delta_total(&p).unwrap() == 0;
        prop_assert_eq!(zero, p.points.iter().all(RamificationEntry::is_transversal));
    }

    #[test]
    fn parity_violations_are_rejected(deg in 0u64..30, drop in 0u64..30) {
        let e = RamificationEntry::new(deg, drop);
        prop_assert_eq!(delta_local(&e).is_ok(), deg >= drop && (deg - drop) % 2 == 0);
    }

    #[test]
    fn weight_projection_is_a_homomorphism(
        t in any_type(),
        a in prop::collection::vec(-5i64..=5, 8),
        b in prop::collection::vec(-5i64..=5, 8),
    ) {
        let sc = SimplyConnected::get(t);
        let rd = sc.root_datum();
        let q = sc.weight_classes();
        let g = q.group();
        let r = rd.rank();
        let dim = rd.ambient_dim();
        let x = RationalVector::int_combination(&a[..r], rd.fundamental_weights(), dim);
        let y = RationalVector::int_combination(&b[..r], rd.fundamental_weights(), dim);
        prop_assert_eq!(q.project(&(&x + &y)).unwrap(), g.add(&q.project(&x).unwrap(), &q.project(&y).unwrap()));
        let root = RationalVector::int_combination(&a[..r], rd.simple_roots(), dim);
        prop_assert_eq!(q.project(&root).unwrap(), g.zero());
    }

    #[test]
    fn symmetry_actions_compose(t in any_type()) {
        let sc = SimplyConnected::get(t);
        let g = sc.weight_classes().group();
        for s in sc.symmetries() {
            for u in sc.symmetries() {
                let composed = sc.weight_class_map(&s.compose(u));
                let stepwise = sc.weight_class_map(s).then(&sc.weight_class_map(u), g);
                for x in g.elements() {
                    prop_assert_eq!(composed.apply(g, &x), stepwise.apply(g, &x));
                }
            }
        }
    }

    #[test]
    fn reports_round_trip_through_json(t in any_type(), pick in 0usize..8, genus in 2u32..9) {
        let forms = enumerate_forms(t);
        let gf = &forms[pick % forms.len()];
        let pi1 = gf.fundamental_group();
        let elements = pi1.elements();
        let delta = elements[pick % elements.len()].clone();
        let doc = build_report(gf, genus, &delta).unwrap();
        let json = serde_json::to_string(&doc).unwrap();
        let back: ReportDocument = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, doc);
    }
}
