use bogomolov::groupkit::*;
use bogomolov::pcgroup::{catalog, CatalogParams, PcGroup};
use proptest::prelude::*;

fn pc(params: CatalogParams) -> PcGroup {
    PcGroup::new(catalog(&params).unwrap()).unwrap()
}

fn table(params: CatalogParams) -> GroupTable {
    enumerate(&pc(params), 1 << 20).unwrap()
}

fn small_groups() -> Vec<CatalogParams> {
    vec![
        CatalogParams::Heisenberg { r: 2, d: vec![1] },
        CatalogParams::Heisenberg { r: 3, d: vec![1] },
        CatalogParams::Heisenberg { r: 4, d: vec![2] },
        CatalogParams::FreestSpecial { p: 2, d: 3 },
        CatalogParams::FreestSpecial { p: 3, d: 2 },
        CatalogParams::ElementaryAbelian { p: 2, rank: 3 },
        CatalogParams::DirectProduct {
            factors: vec![
                CatalogParams::Heisenberg { r: 2, d: vec![1] },
                CatalogParams::Cyclic { n: 2 },
            ],
        },
    ]
}

#[test]
fn abelianization_and_derived_subgroup_are_complementary() {
    for params in small_groups()
        .into_iter()
        .chain([CatalogParams::Phi28 { p: 5 }, CatalogParams::Phi15 { p: 5 }])
    {
        let g = pc(params.clone());
        let t = enumerate(&g, 1 << 20).unwrap();
        let ab = abelianization(&g);
        assert_eq!(
            ab.invariants.order() * t.derived_subgroup().order() as u128,
            t.order() as u128,
            "{}",
            params.label()
        );
        assert_eq!(
            pc_nilpotency_class(&g),
            t.nilpotency_class().ok(),
            "{}",
            params.label()
        );
    }
}

#[test]
fn bilinear_commuting_pairs_match_the_exhaustive_scan() {
    for params in small_groups() {
        let t = table(params.clone());
        let z = t.center();
        let mut expanded: Vec<(u32, u32)> = t
            .commuting_pairs_bilinear()
            .unwrap()
            .into_iter()
            .flat_map(|(a, b)| {
                let z = &z;
                let t = &t;
                z.members().iter().flat_map(move |&c| {
                    z.members().iter().map(move |&d| (t.mul(a, c), t.mul(b, d)))
                })
            })
            .collect();
        expanded.sort_unstable();
        let before = expanded.len();
        expanded.dedup();
        assert_eq!(before, expanded.len(), "{}", params.label());
        assert_eq!(
            expanded,
            t.commuting_pairs_exhaustive(),
            "{}",
            params.label()
        );
    }
}

#[test]
fn commutator_closure_of_freest_special_groups() {
    let t = table(CatalogParams::FreestSpecial { p: 2, d: 4 });
    assert_eq!(t.order(), 1024);
    assert!(!t.is_commutator_closed());
    assert!(table(CatalogParams::FreestSpecial { p: 2, d: 3 }).is_commutator_closed());
    assert!(!freest_special_is_commutator(2, 4, &[1, 0, 0, 0, 0, 1]));
    assert!(freest_special_is_commutator(2, 4, &[1, 0, 0, 0, 0, 0]));
}

#[test]
fn lower_central_series_of_phi28_has_class_four() {
    let t = table(CatalogParams::Phi28 { p: 5 });
    let orders: Vec<usize> = t
        .lower_central_series()
        .iter()
        .map(Subgroup::order)
        .collect();
    assert_eq!(orders, vec![15_625, 125, 25, 5, 1]);
    assert_eq!(t.center().order(), 5);
}

#[test]
fn gluing_two_freest_special_groups() {
    let h = table(CatalogParams::FreestSpecial { p: 2, d: 4 });
    let n = table(CatalogParams::FreestSpecial { p: 2, d: 4 });
    let a = h.id_of_word("c21*c43").unwrap();
    let b = n.id_of_word("c21").unwrap();
    let cp = CentralProduct::new(CentralProductSpec {
        left: h,
        right: n,
        h1_gens: vec![a],
        n1_gens: vec![b],
        xi: vec![(a, b)],
    })
    .unwrap();
    assert_eq!(cp.order(), 1024 * 1024 / 2);
    assert!(central_product_b0(&cp, None).is_err());
    let out = central_product_b0(&cp, Some(FactorHypothesis::Asserted)).unwrap();
    assert_eq!(out.invariants.factors(), &[2]);
    assert!(out.condition_i);
    assert_eq!(out.z_derived_order, 2);
    assert_eq!(out.z_commutator_span_order, 1);
}

#[test]
fn gluing_heisenberg_centers_is_unramified() {
    let h = table(CatalogParams::Heisenberg { r: 4, d: vec![1] });
    let z = h.center().gens()[0];
    let cp = CentralProduct::new(CentralProductSpec {
        left: h.clone(),
        right: h.clone(),
        h1_gens: vec![z],
        n1_gens: vec![z],
        xi: vec![(z, z)],
    })
    .unwrap();
    let out = central_product_b0(&cp, Some(FactorHypothesis::Asserted)).unwrap();
    assert!(out.invariants.is_trivial());
    assert!(out.condition_i);
}

#[test]
fn gluing_rejects_non_central_or_non_isomorphic_data() {
    let h = table(CatalogParams::Heisenberg { r: 2, d: vec![1] });
    let n = table(CatalogParams::Cyclic { n: 4 });
    let x = h.generators()[0];
    let spec = CentralProductSpec {
        left: h.clone(),
        right: n.clone(),
        h1_gens: vec![x],
        n1_gens: vec![],
        xi: vec![],
    };
    assert!(CentralProduct::new(spec).is_err());
    let z = h.center().gens()[0];
    let y = n.generators()[0];
    let spec = CentralProductSpec {
        left: h,
        right: n,
        h1_gens: vec![z],
        n1_gens: vec![y],
        xi: vec![(z, y)],
    };
    assert!(CentralProduct::new(spec).is_err());
}

#[test]
fn transgression_detects_the_quotient_multiplier() {
    let t = table(CatalogParams::FreestSpecial { p: 2, d: 4 });
    let x = t.id_of_word("c21*c43").unwrap();
    let normal = t.normal_closure(&[x]);
    assert_eq!(transgression_image(&t, &normal).unwrap().factors(), &[2]);
    let y = t.id_of_word("c21").unwrap();
    assert!(transgression_image(&t, &t.normal_closure(&[y]))
        .unwrap()
        .is_trivial());
    let g = t.generators()[0];
    assert!(transgression_image(&t, &t.closure(&[g])).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(48) })]

    #[test]
    fn table_agrees_with_collection(a in 0u32..512, b in 0u32..512, c in 0u32..512) {
        let g = pc(CatalogParams::FreestSpecial { p: 2, d: 3 });
        let t = enumerate(&g, 1 << 12).unwrap();
        prop_assume!(t.order() == 64);
        let (a, b, c) = (a % 64, b % 64, c % 64);
        let prod = g.multiply(&t.element(a).unwrap(), &t.element(b).unwrap());
        prop_assert_eq!(t.mul(a, b), t.id_of(&prod).unwrap());
        prop_assert_eq!(t.mul(t.mul(a, b), c), t.mul(a, t.mul(b, c)));
        prop_assert_eq!(t.commutator(a, b), t.id_of(&g.commutator(&t.element(a).unwrap(), &t.element(b).unwrap())).unwrap());
        prop_assert_eq!(t.mul(a, t.inv(a)), t.identity());
    }
}
