//! Commutator membership in the freest special `p`-group on `d` generators.
//!
//! Its derived subgroup is `Λ²(F_p^d)` with `[a_i, a_j]` the basis form
//! `e_i ∧ e_j`, and `[x, y]` is the decomposable form `x̄ ∧ ȳ`. An element of
//! `H'` is therefore a commutator exactly when its alternating matrix has
//! rank at most 2.

/// Rank over `F_p` of the alternating matrix of an element of `H'`, given
/// by the exponents of `c21, c31, c32, c41, ...` (the catalog ordering, where
/// `c_ji = [a_j, a_i]`).
pub fn freest_special_commutator_rank(p: u64, d: usize, derived_exponents: &[u32]) -> usize {
    assert_eq!(derived_exponents.len(), d * (d - 1) / 2);
    let mut m = vec![vec![0u64; d]; d];
    let mut idx = 0;
    for j in 1..d {
        for i in 0..j {
            let e = derived_exponents[idx] as u64 % p;
            m[j][i] = e;
            m[i][j] = (p - e) % p;
            idx += 1;
        }
    }
    rank_mod_p(m, p)
}

/// Whether the element of `H'` with the given exponents lies in `K(H)`.
pub fn freest_special_is_commutator(p: u64, d: usize, derived_exponents: &[u32]) -> bool {
    freest_special_commutator_rank(p, d, derived_exponents) <= 2
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1;
    let (mut b, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn rank_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = inv_mod(m[rank][c], p);
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c];
                for k in 0..cols {
                    m[r][k] = (m[r][k] + p * p - f * m[rank][k] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupkit::enumerate;
    use crate::pcgroup::{catalog, CatalogParams, PcGroup};

    #[test]
    fn rank_shortcut_matches_exhaustive_scan_at_p2() {
        let (p, d) = (2u64, 4usize);
        let g = PcGroup::new(catalog(&CatalogParams::FreestSpecial { p, d }).unwrap()).unwrap();
        let t = enumerate(&g, 1 << 12).unwrap();
        let k = t.commutator_mask();
        let derived = t.derived_subgroup();
        assert_eq!(derived.order(), 64);
        let mut count = 0;
        for &c in derived.members() {
            let e = t.element(c).unwrap();
            assert!(e.0[..d].iter().all(|&x| x == 0));
            assert_eq!(
                freest_special_is_commutator(p, d, &e.0[d..]),
                k[c as usize],
                "{e:?}"
            );
            count += k[c as usize] as usize;
        }
        assert!(count < 64);
    }
}
