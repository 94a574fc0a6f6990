use bogomolov::cohomology::*;
use bogomolov::groupkit::{enumerate, GroupTable};
use bogomolov::pcgroup::{catalog, parse_pc, CatalogParams, PcGroup};
use bogomolov::zlattice::AbelianInvariants;
use proptest::prelude::*;

const FIXTURE: &str = include_str!("../../../data/b0_z2_order64.pc");
const Q8: &str = "group q8 { gens x, y, z; order x = 2; order y = 2; order z = 2; pow x^2 = z; pow y^2 = z; comm [y,x] = z; }";

fn table(params: CatalogParams) -> GroupTable {
    enumerate(&PcGroup::new(catalog(&params).unwrap()).unwrap(), 1 << 12).unwrap()
}

fn from_dsl(text: &str) -> GroupTable {
    enumerate(&PcGroup::new(parse_pc(text).unwrap()).unwrap(), 1 << 12).unwrap()
}

fn multiplier(g: &GroupTable) -> AbelianInvariants {
    h2_mod(g, g.order() as u64, 64).unwrap().multiplier_dual()
}

#[test]
fn schur_multipliers_of_small_groups() {
    let cases = [
        (
            table(CatalogParams::ElementaryAbelian { p: 2, rank: 3 }),
            vec![2, 2, 2],
        ),
        (
            table(CatalogParams::DirectProduct {
                factors: vec![
                    CatalogParams::Cyclic { n: 4 },
                    CatalogParams::Cyclic { n: 2 },
                ],
            }),
            vec![2],
        ),
        (
            table(CatalogParams::Heisenberg { r: 3, d: vec![1] }),
            vec![3, 3],
        ),
        (table(CatalogParams::Cyclic { n: 8 }), vec![]),
        (from_dsl(Q8), vec![]),
    ];
    for (g, want) in cases {
        assert_eq!(multiplier(&g), AbelianInvariants::from_cyclic_orders(want));
    }
}

#[test]
fn fixture_has_multiplier_z2_in_both_modes() {
    let g = from_dsl(FIXTURE);
    assert_eq!(g.order(), 64);
    let z2 = AbelianInvariants::from_cyclic_orders([2]);
    for mode in [SubgroupMode::Abelian, SubgroupMode::Bicyclic] {
        assert_eq!(b0_oracle_with(&g, mode, 64, 64).unwrap(), z2);
        assert_eq!(b0_oracle_with(&g, mode, 128, 64).unwrap(), z2);
    }
}

#[test]
fn groups_of_order_at_most_32_have_trivial_multiplier() {
    let groups = [
        table(CatalogParams::Heisenberg { r: 2, d: vec![1] }),
        table(CatalogParams::Heisenberg { r: 4, d: vec![1] }),
        table(CatalogParams::Heisenberg { r: 3, d: vec![1] }),
        table(CatalogParams::FreestSpecial { p: 2, d: 2 }),
        table(CatalogParams::ElementaryAbelian { p: 2, rank: 4 }),
        table(CatalogParams::DirectProduct {
            factors: vec![
                CatalogParams::Heisenberg { r: 2, d: vec![1] },
                CatalogParams::Cyclic { n: 4 },
            ],
        }),
        from_dsl(Q8),
    ];
    for g in &groups {
        assert!(b0_oracle(g, SubgroupMode::Abelian).unwrap().is_trivial());
        assert!(b0_oracle(g, SubgroupMode::Bicyclic).unwrap().is_trivial());
    }
}

#[test]
fn oracle_respects_the_cap_and_modulus() {
    let g = table(CatalogParams::FreestSpecial { p: 2, d: 3 });
    assert!(matches!(
        b0_oracle_with(&g, SubgroupMode::Bicyclic, 64, 32),
        Err(CohomologyError::CapExceeded { .. })
    ));
    assert!(matches!(
        b0_oracle_with(&g, SubgroupMode::Bicyclic, 96, 64),
        Err(CohomologyError::BadModulus { .. })
    ));
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(24) })]

    #[test]
    fn labelings_round_trip_through_cocycles(coeffs in prop::collection::vec(0u64..8, 0..12)) {
        let g = table(CatalogParams::Heisenberg { r: 2, d: vec![1] });
        let h2 = h2_mod(&g, 8, 64).unwrap();
        let mut labeling = vec![0u64; h2.unknowns()];
        for (sol, c) in h2.solutions.iter().zip(&coeffs) {
            for (slot, x) in labeling.iter_mut().zip(sol) {
                *slot = (*slot + c * x) % 8;
            }
        }
        let c = h2.cocycle(&g, &labeling);
        prop_assert!(c.is_cocycle(&g));
        let back = h2.labeling_of(&g, &c);
        let diff: Vec<u64> = back.iter().zip(&labeling).map(|(a, b)| (a + 8 - b) % 8).collect();
        prop_assert!(h2.is_trivial_class(&diff));
    }

    #[test]
    fn coboundaries_are_trivial_classes(phi in prop::collection::vec(0u64..8, 8)) {
        let g = table(CatalogParams::Heisenberg { r: 2, d: vec![1] });
        let h2 = h2_mod(&g, 8, 64).unwrap();
        let elements: Vec<u32> = (0..8).collect();
        let mut phi = phi;
        phi[0] = 0;
        let c = Cocycle::coboundary(&g, &elements, &phi, 8);
        prop_assert!(c.is_cocycle(&g));
        prop_assert!(h2.is_trivial_class(&h2.labeling_of(&g, &c)));
    }
}
