//! Presentations of the group families studied here.
//!
//! * `phi15`, `phi28`, `phi29`: representatives of James's isoclinism
//!   families of order `p^6` (`p > 3`), with `g` the smallest primitive root
//!   and `nu` the smallest quadratic non-residue mod `p`.
//! * `heisenberg`: `H^{d_1|...|d_n|r}_{2n+1}(Z/r)` with
//!   `[x_i, y_i] = z^{d_i}` and `x_i^r = y_i^r = z^r = 1`.
//! * `freest_special`: the special `p`-group on `d` generators whose
//!   commutators `[a_i, a_j]` are independent. Generator `p`-th powers are
//!   taken trivial.
//! * `cyclic`, `elementary_abelian`, `direct_product`.
//!
//! The pc ordering stores commutators as `[later, earlier]`, so relations
//! stated the other way round are inverted here.

use serde::{Deserialize, Serialize};

use super::{PcError, PcPresentation, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Phi15,
    Phi28,
    Phi29,
    Heisenberg,
    FreestSpecial,
    Cyclic,
    ElementaryAbelian,
    DirectProduct,
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::Phi15 => "phi15",
            Family::Phi28 => "phi28",
            Family::Phi29 => "phi29",
            Family::Heisenberg => "heisenberg",
            Family::FreestSpecial => "freest_special",
            Family::Cyclic => "cyclic",
            Family::ElementaryAbelian => "elementary_abelian",
            Family::DirectProduct => "direct_product",
        }
    }

    pub fn from_tag(s: &str) -> Option<Self> {
        Some(match s {
            "phi15" => Family::Phi15,
            "phi28" => Family::Phi28,
            "phi29" => Family::Phi29,
            "heisenberg" => Family::Heisenberg,
            "freest_special" | "freest-special" => Family::FreestSpecial,
            "cyclic" => Family::Cyclic,
            "elementary_abelian" | "elementary-abelian" => Family::ElementaryAbelian,
            "direct_product" | "direct-product" => Family::DirectProduct,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum CatalogParams {
    Phi15 { p: u64 },
    Phi28 { p: u64 },
    Phi29 { p: u64 },
    Heisenberg { r: u64, d: Vec<u64> },
    FreestSpecial { p: u64, d: usize },
    Cyclic { n: u64 },
    ElementaryAbelian { p: u64, rank: usize },
    DirectProduct { factors: Vec<CatalogParams> },
}

const PRIME_CAP: u64 = 10_000;

pub fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

fn modpow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Smallest primitive root mod an odd prime `p`, by scanning from 2.
pub fn primitive_root(p: u64) -> u64 {
    let phi = p - 1;
    let mut factors = Vec::new();
    let mut m = phi;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&q| modpow(g, phi / q, p) != 1))
        .expect("primes have primitive roots")
}

/// Smallest positive quadratic non-residue mod an odd prime `p`.
pub fn smallest_nonresidue(p: u64) -> u64 {
    (2..p)
        .find(|&a| modpow(a, (p - 1) / 2, p) == p - 1)
        .expect("odd primes have non-residues")
}

impl CatalogParams {
    pub fn family(&self) -> Family {
        match self {
            CatalogParams::Phi15 { .. } => Family::Phi15,
            CatalogParams::Phi28 { .. } => Family::Phi28,
            CatalogParams::Phi29 { .. } => Family::Phi29,
            CatalogParams::Heisenberg { .. } => Family::Heisenberg,
            CatalogParams::FreestSpecial { .. } => Family::FreestSpecial,
            CatalogParams::Cyclic { .. } => Family::Cyclic,
            CatalogParams::ElementaryAbelian { .. } => Family::ElementaryAbelian,
            CatalogParams::DirectProduct { .. } => Family::DirectProduct,
        }
    }

    /// Short identifier used as the group name.
    pub fn label(&self) -> String {
        match self {
            CatalogParams::Phi15 { p } => format!("phi15_p{p}"),
            CatalogParams::Phi28 { p } => format!("phi28_p{p}"),
            CatalogParams::Phi29 { p } => format!("phi29_p{p}"),
            CatalogParams::Heisenberg { r, d } => {
                let ds: Vec<String> = d.iter().map(u64::to_string).collect();
                format!("heisenberg_r{r}_d{}", ds.join("_"))
            }
            CatalogParams::FreestSpecial { p, d } => format!("freest_special_p{p}_d{d}"),
            CatalogParams::Cyclic { n } => format!("cyclic{n}"),
            CatalogParams::ElementaryAbelian { p, rank } => format!("elab_p{p}_r{rank}"),
            CatalogParams::DirectProduct { factors } => {
                let fs: Vec<String> = factors.iter().map(CatalogParams::label).collect();
                format!("dp_{}", fs.join("_x_"))
            }
        }
    }

    pub fn validate(&self) -> Result<(), PcError> {
        let prime = |p: u64| {
            if !is_prime(p) {
                Err(PcError::Catalog(format!("{p} is not prime")))
            } else if p > PRIME_CAP {
                Err(PcError::Catalog(format!(
                    "p = {p} exceeds the supported cap {PRIME_CAP}"
                )))
            } else {
                Ok(())
            }
        };
        match self {
            CatalogParams::Phi15 { p }
            | CatalogParams::Phi28 { p }
            | CatalogParams::Phi29 { p } => {
                prime(*p)?;
                if *p <= 3 {
                    return Err(PcError::Catalog(format!(
                        "{} requires p>3, got p={p}",
                        self.family().tag()
                    )));
                }
            }
            CatalogParams::Heisenberg { r, d } => {
                if *r < 2 {
                    return Err(PcError::Catalog("heisenberg requires r >= 2".into()));
                }
                if d.is_empty() || d.contains(&0) {
                    return Err(PcError::Catalog(
                        "heisenberg requires positive d_1, ..., d_n".into(),
                    ));
                }
                let chain: Vec<u64> = d.iter().copied().chain(std::iter::once(*r)).collect();
                if let Some(w) = chain.windows(2).find(|w| w[1] % w[0] != 0) {
                    return Err(PcError::Catalog(format!(
                        "divisibility chain d_1|...|d_n|r violated: {} does not divide {}",
                        w[0], w[1]
                    )));
                }
            }
            CatalogParams::FreestSpecial { p, d } => {
                prime(*p)?;
                if *d < 2 {
                    return Err(PcError::Catalog("freest_special requires d >= 2".into()));
                }
            }
            CatalogParams::Cyclic { n } => {
                if *n < 2 {
                    return Err(PcError::Catalog("cyclic requires n >= 2".into()));
                }
            }
            CatalogParams::ElementaryAbelian { p, rank } => {
                prime(*p)?;
                if *rank == 0 {
                    return Err(PcError::Catalog(
                        "elementary_abelian requires rank >= 1".into(),
                    ));
                }
            }
            CatalogParams::DirectProduct { factors } => {
                if factors.is_empty() {
                    return Err(PcError::Catalog(
                        "direct_product requires at least one factor".into(),
                    ));
                }
                for f in factors {
                    f.validate()?;
                }
            }
        }
        Ok(())
    }
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn phi15(p: u64) -> Result<PcPresentation, PcError> {
    let g = primitive_root(p) as i64;
    let mut pr = PcPresentation::new(
        &format!("phi15_p{p}"),
        names(&["a1", "a2", "a3", "a4", "b1", "b2"]),
        vec![p; 6],
    )?;
    // [a1,a2] = [a3,a4] = b1, [a1,a3] = b2, [a2,a4] = b2^g
    pr.set_comm(1, 0, vec![(4, -1)])?;
    pr.set_comm(3, 2, vec![(4, -1)])?;
    pr.set_comm(2, 0, vec![(5, -1)])?;
    pr.set_comm(3, 1, vec![(5, -g)])?;
    Ok(pr)
}

/// `phi28` (`twisted = false`) or `phi29` (`twisted = true`), generators
/// `a, a1, a2, a3, a4` with `a` of relative order `p^2`.
fn phi28_29(p: u64, twisted: bool) -> Result<PcPresentation, PcError> {
    let tag = if twisted { "phi29" } else { "phi28" };
    let nu = if twisted {
        smallest_nonresidue(p) as i64
    } else {
        1
    };
    let pi = p as i64;
    let mut pr = PcPresentation::new(
        &format!("{tag}_p{p}"),
        names(&["a", "a1", "a2", "a3", "a4"]),
        vec![p * p, p, p, p, p],
    )?;
    // [a1,a] = a2, [a2,a] = a3, [a3,a] = [a1,a2] = a4
    pr.set_comm(1, 0, vec![(2, 1)])?;
    pr.set_comm(2, 0, vec![(3, 1)])?;
    pr.set_comm(3, 0, vec![(4, 1)])?;
    pr.set_comm(2, 1, vec![(4, -1)])?;
    // a3^nu = a1^p a2^{p(p-1)/2} and a4^nu = a2^p, solved for a1^p and a2^p
    pr.set_power(1, vec![(3, nu), (4, -nu * (pi - 1) / 2)])?;
    pr.set_power(2, vec![(4, nu)])?;
    Ok(pr)
}

fn heisenberg(r: u64, d: &[u64]) -> Result<PcPresentation, PcError> {
    let n = d.len();
    let mut ns = Vec::new();
    for i in 1..=n {
        ns.push(format!("x{i}"));
        ns.push(format!("y{i}"));
    }
    ns.push("z".into());
    let label = CatalogParams::Heisenberg { r, d: d.to_vec() }.label();
    let mut pr = PcPresentation::new(&label, ns, vec![r; 2 * n + 1])?;
    let z = 2 * n;
    for (i, &di) in d.iter().enumerate() {
        // [y_i, x_i] = [x_i, y_i]^-1 = z^{-d_i}
        let e = (r - di % r) % r;
        if e != 0 {
            pr.set_comm(2 * i + 1, 2 * i, vec![(z, e as i64)])?;
        }
    }
    Ok(pr)
}

fn freest_special(p: u64, d: usize) -> Result<PcPresentation, PcError> {
    let mut ns: Vec<String> = (1..=d).map(|i| format!("a{i}")).collect();
    let mut index = std::collections::BTreeMap::new();
    for j in 1..d {
        for i in 0..j {
            index.insert((j, i), ns.len());
            ns.push(format!("c{}{}", j + 1, i + 1));
        }
    }
    let k = ns.len();
    let mut pr = PcPresentation::new(&format!("freest_special_p{p}_d{d}"), ns, vec![p; k])?;
    for (&(j, i), &c) in &index {
        pr.set_comm(j, i, vec![(c, 1)])?;
    }
    Ok(pr)
}

fn direct_product(factors: &[PcPresentation], label: &str) -> Result<PcPresentation, PcError> {
    let mut ns = Vec::new();
    let mut orders = Vec::new();
    let mut offsets = Vec::new();
    for (k, f) in factors.iter().enumerate() {
        offsets.push(ns.len());
        for (n, &m) in f.names().iter().zip(f.relative_orders()) {
            ns.push(format!("{n}_{}", k + 1));
            orders.push(m);
        }
    }
    let mut pr = PcPresentation::new(label, ns, orders)?;
    let shift = |w: &Word, off: usize| -> Word { w.iter().map(|&(g, e)| (g + off, e)).collect() };
    for (f, &off) in factors.iter().zip(&offsets) {
        for i in 0..f.len() {
            pr.set_power(i + off, shift(f.power_rhs(i), off))?;
        }
        for (&(j, i), w) in f.comm_relations() {
            pr.set_comm(j + off, i + off, shift(w, off))?;
        }
    }
    Ok(pr)
}

/// Presentation for a catalog family member.
pub fn catalog(params: &CatalogParams) -> Result<PcPresentation, PcError> {
    params.validate()?;
    match params {
        CatalogParams::Phi15 { p } => phi15(*p),
        CatalogParams::Phi28 { p } => phi28_29(*p, false),
        CatalogParams::Phi29 { p } => phi28_29(*p, true),
        CatalogParams::Heisenberg { r, d } => heisenberg(*r, d),
        CatalogParams::FreestSpecial { p, d } => freest_special(*p, *d),
        CatalogParams::Cyclic { n } => {
            PcPresentation::new(&params.label(), vec!["a".into()], vec![*n])
        }
        CatalogParams::ElementaryAbelian { p, rank } => PcPresentation::new(
            &params.label(),
            (1..=*rank).map(|i| format!("e{i}")).collect(),
            vec![*p; *rank],
        ),
        CatalogParams::DirectProduct { factors } => {
            let fs = factors.iter().map(catalog).collect::<Result<Vec<_>, _>>()?;
            direct_product(&fs, &params.label())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcgroup::PcGroup;

    #[test]
    fn residue_scans() {
        // primitive roots mod 5, 7, 11, 13 by brute-force order computation
        for p in [5u64, 7, 11, 13] {
            let g = (2..p)
                .find(|&g| (1..p - 1).all(|k| modpow(g, k, p) != 1))
                .unwrap();
            assert_eq!(primitive_root(p), g);
            let nu = (2..p).find(|&a| (1..p).all(|x| x * x % p != a)).unwrap();
            assert_eq!(smallest_nonresidue(p), nu);
        }
        assert_eq!(primitive_root(5), 2);
        assert_eq!(smallest_nonresidue(5), 2);
        assert_eq!(smallest_nonresidue(7), 3);
    }

    #[test]
    fn parameter_errors() {
        assert!(catalog(&CatalogParams::Phi28 { p: 3 })
            .unwrap_err()
            .to_string()
            .contains("requires p>3"));
        assert!(catalog(&CatalogParams::Phi15 { p: 9 }).is_err());
        assert!(catalog(&CatalogParams::Heisenberg { r: 4, d: vec![3] }).is_err());
        assert!(catalog(&CatalogParams::Heisenberg {
            r: 4,
            d: vec![2, 1]
        })
        .is_err());
        assert!(catalog(&CatalogParams::Heisenberg {
            r: 4,
            d: vec![1, 2]
        })
        .is_ok());
    }

    fn group(params: CatalogParams) -> PcGroup {
        PcGroup::new(catalog(&params).unwrap()).unwrap()
    }

    #[test]
    fn phi_families_are_consistent_of_order_p6() {
        for p in [5u64, 7, 11] {
            for params in [
                CatalogParams::Phi15 { p },
                CatalogParams::Phi28 { p },
                CatalogParams::Phi29 { p },
            ] {
                let g = group(params);
                assert_eq!(g.order(), (p as u128).pow(6));
            }
        }
    }

    #[test]
    fn phi15_relations() {
        let p = 7;
        let g = group(CatalogParams::Phi15 { p });
        let gi = primitive_root(p) as i64;
        let a: Vec<_> = (0..4).map(|i| g.gen(i)).collect();
        let (b1, b2) = (g.gen(4), g.gen(5));
        assert_eq!(g.commutator(&a[0], &a[1]), b1);
        assert_eq!(g.commutator(&a[2], &a[3]), b1);
        assert_eq!(g.commutator(&a[0], &a[2]), b2);
        assert_eq!(g.commutator(&a[1], &a[3]), g.power(&b2, gi));
        assert!(g.commutator(&a[0], &a[3]).is_identity());
        assert!(g.commutator(&a[1], &a[2]).is_identity());
        for x in a.iter().chain([&b1, &b2]) {
            assert_eq!(g.element_order(x), p);
        }
    }

    #[test]
    fn phi28_phi29_relations() {
        for (p, twisted) in [(5u64, false), (5, true), (7, false), (7, true)] {
            let g = group(if twisted {
                CatalogParams::Phi29 { p }
            } else {
                CatalogParams::Phi28 { p }
            });
            let nu = if twisted {
                smallest_nonresidue(p) as i64
            } else {
                1
            };
            let pi = p as i64;
            let (a, a1, a2, a3, a4) = (g.gen(0), g.gen(1), g.gen(2), g.gen(3), g.gen(4));
            assert_eq!(g.commutator(&a1, &a), a2);
            assert_eq!(g.commutator(&a2, &a), a3);
            assert_eq!(g.commutator(&a3, &a), a4);
            assert_eq!(g.commutator(&a1, &a2), a4);
            assert!(g.power(&a, pi * pi).is_identity() && g.power(&a3, pi).is_identity());
            assert_eq!(g.element_order(&a), p * p);
            let lhs = g.power(&a3, nu);
            let rhs = g.multiply(&g.power(&a1, pi), &g.power(&a2, pi * (pi - 1) / 2));
            assert_eq!(lhs, rhs);
            assert_eq!(g.power(&a4, nu), g.power(&a2, pi));
        }
    }

    #[test]
    fn heisenberg_and_freest() {
        let g = group(CatalogParams::Heisenberg {
            r: 4,
            d: vec![1, 2],
        });
        assert_eq!(g.order(), 4u128.pow(5));
        let z = g.gen(4);
        assert_eq!(g.commutator(&g.gen(0), &g.gen(1)), z);
        assert_eq!(g.commutator(&g.gen(2), &g.gen(3)), g.power(&z, 2));
        let f = group(CatalogParams::FreestSpecial { p: 3, d: 3 });
        assert_eq!(f.order(), 3u128.pow(6));
        assert_eq!(f.commutator(&f.gen(1), &f.gen(0)), f.gen(3));
        let d = group(CatalogParams::DirectProduct {
            factors: vec![
                CatalogParams::Cyclic { n: 4 },
                CatalogParams::Heisenberg { r: 2, d: vec![1] },
            ],
        });
        assert_eq!(d.order(), 32);
        assert_eq!(d.name(1), "x1_2");
    }

    #[test]
    fn serde_round_trip() {
        let p = CatalogParams::DirectProduct {
            factors: vec![
                CatalogParams::Cyclic { n: 4 },
                CatalogParams::Heisenberg { r: 2, d: vec![1] },
            ],
        };
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<CatalogParams>(&s).unwrap(), p);
    }
}
