use bogomolov::zlattice::*;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix_strategy(
    max_rows: usize,
    cols: usize,
    bound: i64,
) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-bound..=bound, cols), 0..=max_rows)
}

fn all_vectors(width: usize, n: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..width {
        out = out
            .into_iter()
            .flat_map(|v| (0..n).map(move |x| [v.clone(), vec![x]].concat()))
            .collect();
    }
    out
}

fn dot_mod(a: &[u64], b: &[u64], n: u64) -> u64 {
    a.iter().zip(b).map(|(x, y)| x * y % n).sum::<u64>() % n
}

#[test]
fn smith_form_examples() {
    let m =
        IntMatrix::from_rows(3, &[vec![2i64, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).unwrap();
    let d: Vec<BigInt> = smith_normal_form(&m).diagonal();
    assert_eq!(d, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    let (inv, free) = cokernel(&m).unwrap();
    assert_eq!(inv, AbelianInvariants::from_cyclic_orders([2, 6, 12]));
    assert_eq!(free, 0);
    let m = IntMatrix::from_rows(3, &[vec![1i64, 2, 3]]).unwrap();
    let (inv, free) = cokernel(&m).unwrap();
    assert!(inv.is_trivial());
    assert_eq!(free, 2);
}

#[test]
fn invariants_combine_primary_parts() {
    let a = AbelianInvariants::from_cyclic_orders([4, 6]);
    assert_eq!(a, AbelianInvariants::from_cyclic_orders([2, 12]));
    assert_eq!(a.order(), 24);
    assert_eq!(
        a.direct_sum(&AbelianInvariants::from_cyclic_orders([3]))
            .order(),
        72
    );
    assert_eq!(
        AbelianInvariants::from_cyclic_orders([1, 1]),
        AbelianInvariants::trivial()
    );
}

#[test]
fn kernel_mod_twelve() {
    let rows = vec![vec![2u64, 3, 0], vec![0, 4, 6]];
    let kernel = kernel_mod(&rows, 3, 12);
    let mut span = HowellBasis::new(12, 3);
    for v in &kernel {
        span.insert(v);
    }
    let brute: Vec<Vec<u64>> = all_vectors(3, 12)
        .into_iter()
        .filter(|x| rows.iter().all(|r| dot_mod(r, x, 12) == 0))
        .collect();
    assert_eq!(span.cardinality(), brute.len() as u128);
    assert!(brute.iter().all(|x| span.contains(x)));
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(96) })]

    #[test]
    fn smith_form_is_a_valid_decomposition(rows in matrix_strategy(4, 3, 9)) {
        let m = IntMatrix::from_rows(3, &rows).unwrap();
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert!(s.d.is_diagonal());
        prop_assert_eq!(s.u.determinant().abs(), BigInt::one());
        prop_assert_eq!(s.v.determinant().abs(), BigInt::one());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            if w[1].is_zero() {
                continue;
            }
            prop_assert!(!w[0].is_zero());
            prop_assert!((&w[1] % &w[0]).is_zero());
            prop_assert!(!w[0].is_negative());
        }
        if rows.len() == 3 {
            let prod: BigInt = diag.iter().product();
            prop_assert_eq!(prod, m.determinant().abs());
        }
    }

    #[test]
    fn kernel_mod_matches_brute_force(rows in matrix_strategy(3, 3, 20), n in 2u64..=8) {
        let rows: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| x.rem_euclid(n as i64) as u64).collect()).collect();
        let kernel = kernel_mod(&rows, 3, n);
        let mut span = HowellBasis::new(n, 3);
        for v in &kernel {
            prop_assert!(rows.iter().all(|r| dot_mod(r, v, n) == 0));
            span.insert(v);
        }
        let brute = all_vectors(3, n).into_iter().filter(|x| rows.iter().all(|r| dot_mod(r, x, n) == 0)).count();
        prop_assert_eq!(span.cardinality(), brute as u128);
    }

    #[test]
    fn cokernel_mod_matches_integer_cokernel(rows in matrix_strategy(4, 3, 20), n in 2u64..=12) {
        let reduced: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| x.rem_euclid(n as i64) as u64).collect()).collect();
        let mut all = rows.clone();
        for i in 0..3 {
            let mut e = vec![0i64; 3];
            e[i] = n as i64;
            all.push(e);
        }
        let (want, free) = cokernel(&IntMatrix::from_rows(3, &all).unwrap()).unwrap();
        prop_assert_eq!(free, 0);
        prop_assert_eq!(cokernel_mod(&reduced, 3, n), want);
    }

    #[test]
    fn lattice_membership(rows in matrix_strategy(3, 3, 6), coeffs in prop::collection::vec(-4i64..=4, 3)) {
        let mut lat = IntLattice::new(3);
        for r in &rows {
            lat.insert(r.iter().map(|&x| BigInt::from(x)).collect());
        }
        let mut v = vec![BigInt::zero(); 3];
        for (r, c) in rows.iter().zip(&coeffs) {
            for (slot, x) in v.iter_mut().zip(r) {
                *slot += BigInt::from(x * c);
            }
        }
        prop_assert!(lat.contains(&v));
        let rank = smith_normal_form(&IntMatrix::from_rows(3, &rows).unwrap()).rank();
        prop_assert_eq!(lat.rank(), rank);
    }
}
