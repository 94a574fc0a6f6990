//! Central products `(H x N) / Z` with `Z = {(a, xi(a)^-1) : a in H_1}` and
//! the finite terms `(Z ∩ (H' x N')) / <Z ∩ (K(H) x K(N))>` and
//! `(N ∩ G') / <N ∩ K(G)>`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{AbelianCoords, GroupError, GroupTable, Subgroup};
use crate::zlattice::AbelianInvariants;

/// Two groups, central subgroups generated by `h1_gens` and `n1_gens`, and
/// `xi` given on generators of `H_1` as pairs `(h, xi(h))`.
#[derive(Clone, Debug)]
pub struct CentralProductSpec {
    pub left: GroupTable,
    pub right: GroupTable,
    pub h1_gens: Vec<u32>,
    pub n1_gens: Vec<u32>,
    pub xi: Vec<(u32, u32)>,
}

/// A validated central product; elements are canonical pairs `(h, n)`,
/// the least representative of the coset `(h, n) Z`.
#[derive(Clone, Debug)]
pub struct CentralProduct {
    spec: CentralProductSpec,
    h1: Subgroup,
    /// `(a, xi(a))` for every `a` in `H_1`.
    xi_map: Vec<(u32, u32)>,
    /// `(a, xi(a)^-1)`, the elements of `Z`.
    z: Vec<(u32, u32)>,
}

impl CentralProduct {
    pub fn new(spec: CentralProductSpec) -> Result<Self, GroupError> {
        let (h, n) = (&spec.left, &spec.right);
        let h1 = h.closure(&spec.h1_gens);
        let n1 = n.closure(&spec.n1_gens);
        if !h.is_central(&h1) {
            return Err(GroupError::NotCentral("H_1 is not in Z(H)".into()));
        }
        if !n.is_central(&n1) {
            return Err(GroupError::NotCentral("N_1 is not in Z(N)".into()));
        }
        let xi_gens: Vec<u32> = spec.xi.iter().map(|&(a, _)| a).collect();
        if h.closure(&xi_gens).members() != h1.members() {
            return Err(GroupError::BadIsomorphism(
                "the xi sources do not generate H_1".into(),
            ));
        }
        // extend xi along a breadth-first search; every edge must agree
        let mut map: HashMap<u32, u32> = HashMap::from([(0, 0)]);
        let mut queue = vec![0u32];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &(a, b) in &spec.xi {
                let y = h.mul(x, a);
                let image = n.mul(map[&x], b);
                match map.get(&y) {
                    Some(&old) if old != image => {
                        return Err(GroupError::BadIsomorphism(
                            "xi does not extend to a homomorphism".into(),
                        ))
                    }
                    Some(_) => {}
                    None => {
                        map.insert(y, image);
                        queue.push(y);
                    }
                }
            }
        }
        let mut images: Vec<u32> = map.values().copied().collect();
        images.sort_unstable();
        images.dedup();
        if images.len() != map.len() {
            return Err(GroupError::BadIsomorphism("xi is not injective".into()));
        }
        if images != n1.members() {
            return Err(GroupError::BadIsomorphism("xi(H_1) is not N_1".into()));
        }
        let mut xi_map: Vec<(u32, u32)> = map.into_iter().collect();
        xi_map.sort_unstable();
        let z = xi_map.iter().map(|&(a, b)| (a, n.inv(b))).collect();
        Ok(Self {
            spec,
            h1,
            xi_map,
            z,
        })
    }

    pub fn spec(&self) -> &CentralProductSpec {
        &self.spec
    }

    pub fn h1(&self) -> &Subgroup {
        &self.h1
    }

    /// Elements `(a, xi(a)^-1)` of `Z`.
    pub fn z(&self) -> &[(u32, u32)] {
        &self.z
    }

    pub fn xi(&self, a: u32) -> Option<u32> {
        self.xi_map
            .binary_search_by_key(&a, |&(x, _)| x)
            .ok()
            .map(|i| self.xi_map[i].1)
    }

    pub fn order(&self) -> u128 {
        self.spec.left.order() as u128 * self.spec.right.order() as u128 / self.z.len() as u128
    }

    pub fn canonical(&self, h: u32, n: u32) -> (u32, u32) {
        let (l, r) = (&self.spec.left, &self.spec.right);
        self.z
            .iter()
            .map(|&(a, b)| (l.mul(h, a), r.mul(n, b)))
            .min()
            .unwrap()
    }

    pub fn mul(&self, x: (u32, u32), y: (u32, u32)) -> (u32, u32) {
        self.canonical(self.spec.left.mul(x.0, y.0), self.spec.right.mul(x.1, y.1))
    }

    /// Materializes the product as a table together with the images of `H`
    /// and `N`; fails above `cap` elements.
    pub fn to_table(&self, cap: usize) -> Result<(GroupTable, Vec<u32>, Vec<u32>), GroupError> {
        let order = self.order();
        if order > cap as u128 {
            return Err(GroupError::CapExceeded {
                required: order,
                cap,
            });
        }
        let (l, r) = (&self.spec.left, &self.spec.right);
        let mut reps = Vec::with_capacity(order as usize);
        for h in 0..l.order() as u32 {
            for n in 0..r.order() as u32 {
                if self.canonical(h, n) == (h, n) {
                    reps.push((h, n));
                }
            }
        }
        let index: HashMap<(u32, u32), u32> = reps
            .iter()
            .enumerate()
            .map(|(i, &x)| (x, i as u32))
            .collect();
        let rows: Vec<Vec<u32>> = reps
            .iter()
            .map(|&x| reps.iter().map(|&y| index[&self.mul(x, y)]).collect())
            .collect();
        let table = GroupTable::from_rows(reps.len(), &rows)?;
        let left = (0..l.order() as u32)
            .map(|h| index[&self.canonical(h, 0)])
            .collect();
        let right = (0..r.order() as u32)
            .map(|n| index[&self.canonical(0, n)])
            .collect();
        Ok((table, left, right))
    }
}

/// How `B_0(H) = B_0(N) = 0` was established by the caller.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorHypothesis {
    Asserted,
    VerifiedByOracle,
    VerifiedByClass2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralB0 {
    pub invariants: AbelianInvariants,
    pub hypothesis: FactorHypothesis,
    /// `xi(H_1 ∩ H') ⊆ N_1 ∩ K(N)`, checked element by element.
    pub condition_i: bool,
    /// `|Z ∩ (H' x N')|`.
    pub z_derived_order: usize,
    /// `|<Z ∩ (K(H) x K(N))>|`.
    pub z_commutator_span_order: usize,
}

/// `B_0((H x N)/Z)` as `(Z ∩ (H' x N')) / <Z ∩ (K(H) x K(N))>`, valid when
/// `B_0(H) = B_0(N) = 0`. Only `H`, `N` and `Z` are scanned.
pub fn central_product_b0(
    cp: &CentralProduct,
    hypothesis: Option<FactorHypothesis>,
) -> Result<CentralB0, GroupError> {
    let hypothesis = hypothesis.ok_or_else(|| {
        GroupError::Hypothesis("B_0(H) = B_0(N) = 0 must be asserted or verified".into())
    })?;
    let (h, n) = (&cp.spec.left, &cp.spec.right);
    let (dh, dn) = (h.derived_subgroup(), n.derived_subgroup());
    let (kh, kn) = (h.commutator_mask(), n.commutator_mask());
    let derived: Vec<u32> =
        cp.z.iter()
            .filter(|&&(a, b)| dh.contains(a) && dn.contains(b))
            .map(|&(a, _)| a)
            .collect();
    let span: Vec<u32> =
        cp.z.iter()
            .filter(|&&(a, b)| kh[a as usize] && kn[b as usize])
            .map(|&(a, _)| a)
            .collect();
    // Z is isomorphic to H_1 through the first coordinate
    let coords = AbelianCoords::new(derived.clone(), 0u32, |x, y| h.mul(*x, *y));
    let invariants = coords.quotient_invariants(&span);
    let span_order = h.closure(&span).order();
    let condition_i = cp
        .xi_map
        .iter()
        .filter(|&&(a, _)| dh.contains(a))
        .all(|&(_, b)| kn[b as usize]);
    Ok(CentralB0 {
        invariants,
        hypothesis,
        condition_i,
        z_derived_order: derived.len(),
        z_commutator_span_order: span_order,
    })
}

/// `(N ∩ G') / <N ∩ K(G)>` for a normal subgroup `N`; this embeds into
/// `B_0(G/N)`, so a nontrivial result bounds `B_0(G/N)` from below.
pub fn transgression_image(
    g: &GroupTable,
    normal: &Subgroup,
) -> Result<AbelianInvariants, GroupError> {
    if !g.is_normal(normal) {
        return Err(GroupError::NotNormal);
    }
    let derived = g.derived_subgroup();
    let k = g.commutator_mask();
    let a: Vec<u32> = normal
        .members()
        .iter()
        .copied()
        .filter(|&x| derived.contains(x))
        .collect();
    let b_gens: Vec<u32> = a.iter().copied().filter(|&x| k[x as usize]).collect();
    let b = g.closure(&b_gens);
    // the quotient is abelian; work with least coset representatives
    let rep = |x: u32| b.members().iter().map(|&y| g.mul(x, y)).min().unwrap();
    let reps: Vec<u32> = {
        let mut r: Vec<u32> = a.iter().map(|&x| rep(x)).collect();
        r.sort_unstable();
        r.dedup();
        r
    };
    let coords = AbelianCoords::new(reps, 0u32, |x, y| rep(g.mul(*x, *y)));
    Ok(coords.invariants())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupkit::enumerate;
    use crate::pcgroup::{catalog, CatalogParams, PcGroup};

    fn table(params: CatalogParams) -> GroupTable {
        enumerate(&PcGroup::new(catalog(&params).unwrap()).unwrap(), 1 << 20).unwrap()
    }

    #[test]
    fn trivial_gluing_is_direct_product() {
        let h = table(CatalogParams::Heisenberg { r: 2, d: vec![1] });
        let n = table(CatalogParams::Cyclic { n: 4 });
        let spec = CentralProductSpec {
            left: h,
            right: n,
            h1_gens: vec![],
            n1_gens: vec![],
            xi: vec![],
        };
        let cp = CentralProduct::new(spec).unwrap();
        assert_eq!(cp.order(), 32);
        let (t, _, _) = cp.to_table(1000).unwrap();
        assert_eq!(t.order(), 32);
        let r = central_product_b0(&cp, Some(FactorHypothesis::Asserted)).unwrap();
        assert!(r.invariants.is_trivial());
        assert!(central_product_b0(&cp, None).is_err());
    }

    #[test]
    fn d4_with_z4_over_shared_center() {
        let h = table(CatalogParams::Heisenberg { r: 2, d: vec![1] });
        let n = table(CatalogParams::Cyclic { n: 4 });
        let z = h.id_of_word("z").unwrap();
        let c2 = n.id_of_word("a^2").unwrap();
        let spec = CentralProductSpec {
            left: h,
            right: n,
            h1_gens: vec![z],
            n1_gens: vec![c2],
            xi: vec![(z, c2)],
        };
        let cp = CentralProduct::new(spec).unwrap();
        let (t, left, right) = cp.to_table(1000).unwrap();
        assert_eq!(t.order(), 16);
        assert_eq!(left[z as usize], right[c2 as usize]);
    }

    #[test]
    fn bad_xi_is_rejected() {
        let h = table(CatalogParams::Heisenberg { r: 2, d: vec![1] });
        let n = table(CatalogParams::Cyclic { n: 4 });
        let z = h.id_of_word("z").unwrap();
        let a = n.id_of_word("a").unwrap();
        let spec = CentralProductSpec {
            left: h.clone(),
            right: n.clone(),
            h1_gens: vec![z],
            n1_gens: vec![a],
            xi: vec![(z, a)],
        };
        assert!(matches!(
            CentralProduct::new(spec),
            Err(GroupError::BadIsomorphism(_))
        ));
        let x = h.id_of_word("x1").unwrap();
        let spec = CentralProductSpec {
            left: h,
            right: n,
            h1_gens: vec![x],
            n1_gens: vec![a],
            xi: vec![(x, a)],
        };
        assert!(matches!(
            CentralProduct::new(spec),
            Err(GroupError::NotCentral(_))
        ));
    }

    #[test]
    fn transgression_edge_cases() {
        let g = table(CatalogParams::Heisenberg { r: 4, d: vec![1] });
        assert!(transgression_image(&g, &g.whole()).unwrap().is_trivial());
        assert!(transgression_image(&g, &g.trivial_subgroup())
            .unwrap()
            .is_trivial());
        let x = g.id_of_word("x1").unwrap();
        assert_eq!(
            transgression_image(&g, &g.closure(&[x])),
            Err(GroupError::NotNormal)
        );
    }
}
