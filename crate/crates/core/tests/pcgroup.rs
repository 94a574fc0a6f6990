use bogomolov::pcgroup::rewrite::{rewrite_normal_form, tail_normal_form};
use bogomolov::pcgroup::*;
use proptest::prelude::*;

fn group(params: CatalogParams) -> PcGroup {
    PcGroup::new(catalog(&params).unwrap()).unwrap()
}

fn word_strategy(ngens: usize, len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..ngens, -3i64..=3), 0..len)
}

#[test]
fn catalog_members_are_consistent_with_expected_orders() {
    let cases = [
        (CatalogParams::Phi15 { p: 5 }, 15_625u128),
        (CatalogParams::Phi15 { p: 7 }, 117_649),
        (CatalogParams::Phi28 { p: 5 }, 15_625),
        (CatalogParams::Phi29 { p: 7 }, 117_649),
        (
            CatalogParams::Heisenberg {
                r: 6,
                d: vec![1, 2],
            },
            7776,
        ),
        (CatalogParams::FreestSpecial { p: 3, d: 3 }, 729),
        (CatalogParams::Cyclic { n: 12 }, 12),
        (CatalogParams::ElementaryAbelian { p: 2, rank: 4 }, 16),
        (
            CatalogParams::DirectProduct {
                factors: vec![
                    CatalogParams::Cyclic { n: 4 },
                    CatalogParams::Heisenberg { r: 2, d: vec![1] },
                ],
            },
            32,
        ),
    ];
    for (params, order) in cases {
        let pres = catalog(&params).unwrap();
        assert_eq!(pres.order(), order, "{}", params.label());
        assert!(
            consistency_check(&pres).is_consistent(),
            "{}",
            params.label()
        );
    }
}

#[test]
fn phi_families_refuse_small_primes() {
    for p in [2, 3] {
        assert!(catalog(&CatalogParams::Phi15 { p }).is_err());
        assert!(catalog(&CatalogParams::Phi28 { p }).is_err());
        assert!(catalog(&CatalogParams::Phi29 { p }).is_err());
    }
    assert!(catalog(&CatalogParams::Phi15 { p: 9 }).is_err());
}

#[test]
fn phi15_commutator_relation() {
    let p = 7;
    let g = group(CatalogParams::Phi15 { p });
    let r = primitive_root(p) as i64;
    let lhs = g.commutator(&g.collect_str("a2").unwrap(), &g.collect_str("a4").unwrap());
    let rhs = g.power(&g.collect_str("b2").unwrap(), r);
    assert_eq!(lhs, rhs);
}

#[test]
fn broken_presentation_reports_an_overlap() {
    let text = "group broken { gens x, y, z; order x = 2; order y = 2; order z = 2; pow x^2 = y; comm [y,x] = z; }";
    let pres = parse_pc(text).unwrap();
    assert!(!consistency_check(&pres).is_consistent());
    assert!(matches!(PcGroup::new(pres), Err(PcError::Inconsistent(..))));
}

#[test]
fn dsl_round_trip_preserves_the_group() {
    for params in [
        CatalogParams::Phi28 { p: 5 },
        CatalogParams::FreestSpecial { p: 2, d: 3 },
    ] {
        let pres = catalog(&params).unwrap();
        let again = parse_pc(&pres.to_dsl()).unwrap();
        assert_eq!(again.order(), pres.order());
        let (a, b) = (PcGroup::new(pres).unwrap(), PcGroup::new(again).unwrap());
        for i in 0..a.ngens() {
            for j in 0..i {
                assert_eq!(
                    a.commutator(&a.gen(i), &a.gen(j)),
                    b.commutator(&b.gen(i), &b.gen(j))
                );
            }
            assert_eq!(
                a.power(&a.gen(i), a.relative_orders()[i] as i64),
                b.power(&b.gen(i), b.relative_orders()[i] as i64)
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(64) })]

    #[test]
    fn collection_matches_naive_rewriting(w in word_strategy(3, 12)) {
        let g = group(CatalogParams::Heisenberg { r: 2, d: vec![1] });
        let e = g.collect(&w).unwrap();
        prop_assert_eq!(e.exponents(), &rewrite_normal_form(g.presentation(), &w)[..]);
        prop_assert_eq!(e.exponents(), &tail_normal_form(g.presentation(), &w)[..]);
    }

    #[test]
    fn tail_rewriting_matches_collection_in_phi28(w in word_strategy(5, 10)) {
        let g = group(CatalogParams::Phi28 { p: 5 });
        let e = g.collect(&w).unwrap();
        prop_assert_eq!(e.exponents(), &tail_normal_form(g.presentation(), &w)[..]);
    }

    #[test]
    fn multiplication_is_associative(a in word_strategy(6, 8), b in word_strategy(6, 8), c in word_strategy(6, 8)) {
        let g = group(CatalogParams::Phi15 { p: 5 });
        let (x, y, z) = (g.collect(&a).unwrap(), g.collect(&b).unwrap(), g.collect(&c).unwrap());
        prop_assert_eq!(g.multiply(&g.multiply(&x, &y), &z), g.multiply(&x, &g.multiply(&y, &z)));
    }

    #[test]
    fn inverses_and_commutators(a in word_strategy(5, 8), b in word_strategy(5, 8)) {
        let g = group(CatalogParams::Phi29 { p: 5 });
        let (x, y) = (g.collect(&a).unwrap(), g.collect(&b).unwrap());
        prop_assert!(g.multiply(&x, &g.inverse(&x)).is_identity());
        let xy = g.multiply(&x, &y);
        let yx_c = g.multiply(&g.multiply(&y, &x), &g.commutator(&x, &y));
        prop_assert_eq!(xy, yx_c);
        prop_assert_eq!(g.conjugate(&x, &y), g.multiply(&g.multiply(&g.inverse(&y), &x), &y));
        let ord = g.element_order(&x);
        prop_assert!(g.power(&x, ord as i64).is_identity());
        prop_assert!([1, 5, 25].contains(&ord));
    }
}
