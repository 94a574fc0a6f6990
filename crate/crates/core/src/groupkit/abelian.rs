//! Coordinates on a finite abelian group given by generators and a
//! multiplication function.
//!
//! A breadth-first search over the Cayley graph assigns each element a
//! coordinate vector in `Z^k`; every non-tree edge `x -> x g_i` yields the
//! relation `c(x) + e_i - c(x g_i)`, and these relations generate the kernel
//! of `Z^k -> A`.

use std::collections::{HashMap, HashSet};
use std::hash::Hash;

use num_bigint::BigInt;

use crate::zlattice::{cokernel, AbelianInvariants, IntLattice};

#[derive(Clone, Debug)]
pub struct AbelianCoords<T> {
    gens: Vec<T>,
    coords: HashMap<T, Vec<i64>>,
    relations: IntLattice,
}

impl<T: Clone + Eq + Hash> AbelianCoords<T> {
    /// The group generated by `gens`, which must commute pairwise.
    pub fn new(gens: Vec<T>, identity: T, mul: impl Fn(&T, &T) -> T) -> Self {
        let k = gens.len();
        let mut coords = HashMap::new();
        coords.insert(identity.clone(), vec![0i64; k]);
        let mut queue = vec![identity];
        let mut head = 0;
        let mut rels: HashSet<Vec<i64>> = HashSet::new();
        while head < queue.len() {
            let x = queue[head].clone();
            head += 1;
            let cx = coords[&x].clone();
            for (i, g) in gens.iter().enumerate() {
                let y = mul(&x, g);
                let mut cy = cx.clone();
                cy[i] += 1;
                match coords.get(&y) {
                    Some(old) => {
                        let r: Vec<i64> = cy.iter().zip(old).map(|(a, b)| a - b).collect();
                        if r.iter().any(|&v| v != 0) {
                            rels.insert(r);
                        }
                    }
                    None => {
                        coords.insert(y.clone(), cy);
                        queue.push(y);
                    }
                }
            }
        }
        let mut relations = IntLattice::new(k);
        let mut sorted: Vec<Vec<i64>> = rels.into_iter().collect();
        sorted.sort();
        for r in sorted {
            relations.insert(r.into_iter().map(BigInt::from).collect());
        }
        Self {
            gens,
            coords,
            relations,
        }
    }

    pub fn gens(&self) -> &[T] {
        &self.gens
    }

    pub fn order(&self) -> usize {
        self.coords.len()
    }

    pub fn contains(&self, x: &T) -> bool {
        self.coords.contains_key(x)
    }

    /// Coordinates of `x` with respect to the generators.
    pub fn coords(&self, x: &T) -> Option<&[i64]> {
        self.coords.get(x).map(Vec::as_slice)
    }

    /// Basis of the relation lattice of `Z^k -> A`.
    pub fn relations(&self) -> Vec<Vec<BigInt>> {
        self.relations.basis()
    }

    pub fn invariants(&self) -> AbelianInvariants {
        self.quotient_invariants(&[])
    }

    /// Invariants of `A / <sub>`; elements of `sub` outside `A` are ignored
    /// by contract of the caller and panic here.
    pub fn quotient_invariants(&self, sub: &[T]) -> AbelianInvariants {
        let mut lat = self.relations.clone();
        for x in sub {
            let c = self.coords(x).expect("element of the subgroup");
            lat.insert(c.iter().map(|&v| BigInt::from(v)).collect());
        }
        let (inv, free) = cokernel(&lat.to_matrix()).expect("lattice rows have full width");
        assert_eq!(free, 0, "finite groups have torsion quotients");
        inv
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_products() {
        // Z/4 x Z/6 inside Z/12 x Z/12 written additively
        let add = |a: &(u32, u32), b: &(u32, u32)| ((a.0 + b.0) % 12, (a.1 + b.1) % 12);
        let c = AbelianCoords::new(vec![(3, 0), (0, 2)], (0, 0), add);
        assert_eq!(c.order(), 24);
        assert_eq!(c.invariants().factors(), &[2, 12]);
        assert_eq!(c.quotient_invariants(&[(6, 0)]).factors(), &[2, 6]);
        // redundant generators
        let d = AbelianCoords::new(vec![(1, 0), (5, 0), (0, 0)], (0, 0), add);
        assert_eq!(d.invariants().factors(), &[12]);
    }
}
