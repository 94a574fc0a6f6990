use bogomolov::cohomology::{b0_oracle, SubgroupMode};
use bogomolov::groupkit::{enumerate, transgression_image};
use bogomolov::pcgroup::*;
use bogomolov::wedge::*;
use bogomolov::zlattice::AbelianInvariants;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const FIXTURE: &str = include_str!("../../../data/b0_z2_order64.pc");
const PHI28_CERT: &str = include_str!("../../../certs/phi28.json");
const PHI29_CERT: &str = include_str!("../../../certs/phi29.json");

fn group(params: &CatalogParams) -> PcGroup {
    PcGroup::new(catalog(params).unwrap()).unwrap()
}

fn fixture() -> PcGroup {
    PcGroup::new(parse_pc(FIXTURE).unwrap()).unwrap()
}

/// `ε(v) = Π [g_i, g_j]^{v_ij}`.
fn evaluate(g: &PcGroup, v: &WedgeVector) -> Element {
    let basis = WedgeBasis::new(g.ngens());
    basis
        .pairs()
        .iter()
        .zip(&v.0)
        .fold(g.identity(), |acc, (&(i, j), &c)| {
            g.multiply(&acc, &g.power(&g.commutator(&g.gen(i), &g.gen(j)), c))
        })
}

fn word_strategy(ngens: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..ngens, -4i64..=4), 1..6)
}

fn phi28_witnesses(g: &PcGroup) -> Vec<(Word, Word)> {
    let cert = Certificate::from_json(PHI28_CERT).unwrap();
    let mut w = cert
        .witness_words(g, &bindings_for(&CatalogParams::Phi28 { p: 5 }))
        .unwrap();
    let names = g.presentation().names();
    for (a, b) in [("a4", "a"), ("a3", "a4"), ("a1", "a3*a4"), ("a2", "a3")] {
        w.push((parse_word(a, names).unwrap(), parse_word(b, names).unwrap()));
    }
    w
}

#[test]
fn certificates_prove_triviality_and_pass_the_audit() {
    for (text, params) in [
        (PHI28_CERT, CatalogParams::Phi28 { p: 5 }),
        (PHI28_CERT, CatalogParams::Phi28 { p: 7 }),
        (PHI29_CERT, CatalogParams::Phi29 { p: 5 }),
        (PHI29_CERT, CatalogParams::Phi29 { p: 7 }),
    ] {
        let g = group(&params);
        let cert = Certificate::from_json(text).unwrap();
        let out = verify_certificate(&g, &cert, &bindings_for(&params)).unwrap();
        assert_eq!(out.verdict, Verdict::CertifiedTrivial, "{}", params.label());
        let audit = audit_trace(g.presentation(), &out.trace).unwrap();
        assert_eq!(audit.verified, audit.steps);
        assert!(audit.proves_trivial);
        let again = from_json_lines(&to_json_lines(&out.trace)).unwrap();
        assert_eq!(again, out.trace);
    }
}

#[test]
fn relator_relations_alone_are_one_sided_for_heisenberg_groups() {
    let params = CatalogParams::Heisenberg { r: 4, d: vec![2] };
    let g = group(&params);
    let bound = b0_upper_bound(&g, &[]).unwrap();
    assert_eq!(bound.invariants, AbelianInvariants::from_cyclic_orders([2]));
    assert!(b0_class2(&g).unwrap().is_trivial());
    let t = enumerate(&g, 1 << 12).unwrap();
    assert!(b0_oracle(&t, SubgroupMode::Bicyclic).unwrap().is_trivial());
}

#[test]
fn basis_commutators_generate_the_derived_subgroup() {
    for g in [
        group(&CatalogParams::Phi28 { p: 5 }),
        group(&CatalogParams::Phi29 { p: 5 }),
        fixture(),
    ] {
        let t = enumerate(&g, 1 << 20).unwrap();
        let images: Vec<u32> = WedgeBasis::new(g.ngens())
            .pairs()
            .iter()
            .map(|&(i, j)| t.id_of(&g.commutator(&g.gen(i), &g.gen(j))).unwrap())
            .collect();
        assert_eq!(t.closure(&images).members(), t.derived_subgroup().members());
        let derived: Vec<u32> = derived_generators(&g)
            .iter()
            .map(|e| t.id_of(e).unwrap())
            .collect();
        assert_eq!(
            t.closure(&derived).members(),
            t.derived_subgroup().members()
        );
    }
}

#[test]
fn fixture_bounds_are_consistent_with_the_oracle() {
    let g = fixture();
    assert_eq!(nilpotency_class(&g).unwrap(), 3);
    assert!(b0_class2(&g).is_err());
    let bound = b0_upper_bound(&g, &[]).unwrap().invariants;
    assert_eq!(bound.order() % 2, 0);
    let found = search_witnesses(&g, 2, 20_000).unwrap();
    assert_eq!(found.bound, AbelianInvariants::from_cyclic_orders([2]));
}

#[test]
fn class2_quotient_maps_onto_the_derived_subgroup() {
    for params in [
        CatalogParams::Phi15 { p: 5 },
        CatalogParams::Phi15 { p: 7 },
        CatalogParams::FreestSpecial { p: 2, d: 4 },
        CatalogParams::FreestSpecial { p: 3, d: 3 },
        CatalogParams::Heisenberg {
            r: 6,
            d: vec![1, 2],
        },
    ] {
        let g = group(&params);
        let a = class2_analysis(&g, 1 << 20).unwrap();
        assert_eq!(
            a.wedge_quotient.order(),
            a.b0_dual.order() * a.derived_order,
            "{}",
            params.label()
        );
        let table_derived = enumerate(&g, 1 << 20).map(|t| t.derived_subgroup().order() as u128);
        if let Ok(d) = table_derived {
            assert_eq!(d, a.derived_order, "{}", params.label());
        }
    }
}

#[test]
fn glued_freest_special_quotient_has_nontrivial_multiplier() {
    let text = "group q { gens a1, a2, a3, a4, c21, c31, c32, c41, c42; \
        order a1 = 2; order a2 = 2; order a3 = 2; order a4 = 2; \
        order c21 = 2; order c31 = 2; order c32 = 2; order c41 = 2; order c42 = 2; \
        comm [a2,a1] = c21; comm [a3,a1] = c31; comm [a3,a2] = c32; \
        comm [a4,a1] = c41; comm [a4,a2] = c42; comm [a4,a3] = c21; }";
    let g = PcGroup::new(parse_pc(text).unwrap()).unwrap();
    let a = class2_analysis(&g, 1 << 20).unwrap();
    let z2 = AbelianInvariants::from_cyclic_orders([2]);
    assert_eq!(a.b0_dual, z2);
    assert_eq!(a.derived_order, 32);
    assert_eq!(
        a.wedge_quotient,
        AbelianInvariants::from_cyclic_orders([2; 6])
    );
    assert_eq!(b0_upper_bound(&g, &[]).unwrap().invariants, z2);
    let fs = enumerate(
        &group(&CatalogParams::FreestSpecial { p: 2, d: 4 }),
        1 << 12,
    )
    .unwrap();
    let normal = fs.normal_closure(&[fs.id_of_word("c21*c43").unwrap()]);
    assert_eq!(transgression_image(&fs, &normal).unwrap(), z2);
}

#[test]
fn phi15_multiplier_is_trivial() {
    for p in [5, 7] {
        let g = group(&CatalogParams::Phi15 { p });
        let a = class2_analysis(&g, 1 << 20).unwrap();
        assert!(a.b0_dual.is_trivial());
        assert_eq!(a.derived_order, (p * p) as u128);
    }
}

fn random_class2_presentation(rng: &mut StdRng, top: usize, central: usize) -> PcPresentation {
    let names: Vec<String> = (0..top + central).map(|i| format!("g{}", i + 1)).collect();
    let mut pres = PcPresentation::new("random", names, vec![2; top + central]).unwrap();
    let central_word = |rng: &mut StdRng| -> Word {
        (top..top + central)
            .filter(|_| rng.gen_bool(0.5))
            .map(|i| (i, 1))
            .collect()
    };
    for i in 0..top {
        pres.set_power(i, central_word(rng)).unwrap();
        for j in 0..i {
            pres.set_comm(i, j, central_word(rng)).unwrap();
        }
    }
    pres
}

#[test]
fn class2_engine_matches_the_oracle_on_random_groups() {
    let mut rng = StdRng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 24 {
        let pres = random_class2_presentation(&mut rng, 4, 2);
        let Ok(g) = PcGroup::new(pres) else { continue };
        let t = enumerate(&g, 64).unwrap();
        let oracle = b0_oracle(&t, SubgroupMode::Bicyclic).unwrap();
        assert_eq!(
            b0_class2(&g).unwrap(),
            oracle,
            "{}",
            g.presentation().to_dsl()
        );
        let bound = b0_upper_bound(&g, &[]).unwrap().invariants;
        assert_eq!(bound.order() % oracle.order(), 0);
        checked += 1;
    }
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(48) })]

    #[test]
    fn expansions_evaluate_to_the_commutator(u in word_strategy(5), v in word_strategy(5)) {
        for g in [group(&CatalogParams::Phi28 { p: 5 }), group(&CatalogParams::Phi29 { p: 7 })] {
            let x = g.collect(&u).unwrap();
            let y = g.collect(&v).unwrap();
            let w = wedge_expand(&g, &u, &v).unwrap();
            prop_assert_eq!(evaluate(&g, &w), g.commutator(&x, &y));
        }
    }

    #[test]
    fn fixture_expansions_evaluate_to_the_commutator(u in word_strategy(6), v in word_strategy(6)) {
        let g = fixture();
        let w = wedge_expand(&g, &u, &v).unwrap();
        prop_assert_eq!(evaluate(&g, &w), g.commutator(&g.collect(&u).unwrap(), &g.collect(&v).unwrap()));
    }

    #[test]
    fn more_witnesses_never_enlarge_the_bound(mask in prop::collection::vec(any::<bool>(), 6)) {
        let g = group(&CatalogParams::Phi28 { p: 5 });
        let all = phi28_witnesses(&g);
        let subset: Vec<(Word, Word)> = all.iter().zip(&mask).filter(|(_, &m)| m).map(|(w, _)| w.clone()).collect();
        let small = b0_upper_bound(&g, &subset).unwrap().invariants;
        let large = b0_upper_bound(&g, &all).unwrap().invariants;
        prop_assert!(large.is_trivial());
        let mut extended = subset.clone();
        extended.push(all[0].clone());
        let mid = b0_upper_bound(&g, &extended).unwrap().invariants;
        prop_assert_eq!(small.order() % mid.order(), 0);
    }
}
