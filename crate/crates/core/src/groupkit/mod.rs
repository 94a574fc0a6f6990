//! Enumerated groups, subgroups, commutator sets, central products and the
//! finite terms of the inflation-restriction sequences.
//!
//! Elements are dense ids `0..|G|` with `0` the identity. A table backed by a
//! pc group numbers normal forms in lexicographic order of exponent vectors,
//! so ids are mixed-radix integers and decoding needs no lookup.

mod abelian;
mod central;
mod special;

use serde::Deserialize;
use thiserror::Error;

use crate::pcgroup::{Element, PcGroup};
use crate::zlattice::{smith_normal_form, AbelianInvariants, IntMatrix};

pub use abelian::AbelianCoords;
pub use central::{
    central_product_b0, transgression_image, CentralB0, CentralProduct, CentralProductSpec,
    FactorHypothesis,
};
pub use special::{freest_special_commutator_rank, freest_special_is_commutator};

/// Enumeration cap used when none is given.
pub const DEFAULT_ENUM_CAP: usize = 1 << 21;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("enumeration requires {required} elements, cap is {cap}")]
    CapExceeded { required: u128, cap: usize },
    #[error("invalid multiplication table: {0}")]
    BadTable(String),
    #[error("element is not in the group")]
    NotAnElement,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup is not central: {0}")]
    NotCentral(String),
    #[error("xi is not an isomorphism: {0}")]
    BadIsomorphism(String),
    #[error("operation requires nilpotency class at most {max}, group has class {class}")]
    ClassTooLarge { max: usize, class: usize },
    #[error("group is not nilpotent")]
    NotNilpotent,
    #[error("unverified hypothesis: {0}")]
    Hypothesis(String),
    #[error(transparent)]
    Pc(#[from] crate::pcgroup::PcError),
}

#[derive(Clone, Debug)]
enum Mult {
    /// `step[a * k + i] = a * g_i`; ids decode through `places`.
    Steps {
        step: Vec<u32>,
        orders: Vec<u32>,
        places: Vec<u32>,
    },
    /// Full Cayley table, row-major.
    Table(Vec<u32>),
}

/// A finite group with elements numbered `0..order`, `0` the identity.
#[derive(Clone, Debug)]
pub struct GroupTable {
    order: usize,
    mult: Mult,
    inverses: Vec<u32>,
    generators: Vec<u32>,
    pc: Option<PcGroup>,
}

#[derive(Deserialize)]
struct TableJson {
    order: usize,
    table: Vec<Vec<u32>>,
}

/// Lists all elements of `g`; fails when `|G| > cap`.
pub fn enumerate(g: &PcGroup, cap: usize) -> Result<GroupTable, GroupError> {
    GroupTable::from_pc(g, cap)
}

impl GroupTable {
    pub fn from_pc(g: &PcGroup, cap: usize) -> Result<Self, GroupError> {
        let order = g.order();
        if order > cap as u128 {
            return Err(GroupError::CapExceeded {
                required: order,
                cap,
            });
        }
        let n = order as usize;
        let k = g.ngens();
        let orders: Vec<u32> = g.relative_orders().iter().map(|&m| m as u32).collect();
        let mut places = vec![1u32; k];
        for i in (0..k.saturating_sub(1)).rev() {
            places[i] = places[i + 1] * orders[i + 1];
        }
        let id_of = |e: &Element| -> u32 { e.0.iter().zip(&places).map(|(&x, &p)| x * p).sum() };
        let gens: Vec<Element> = (0..k).map(|i| g.gen(i)).collect();
        let mut step = vec![0u32; n * k];
        let mut inverses = vec![0u32; n];
        for a in 0..n {
            let ea = decode(a as u32, &orders, &places);
            for (i, gi) in gens.iter().enumerate() {
                step[a * k + i] = id_of(&g.multiply(&ea, gi));
            }
            inverses[a] = id_of(&g.inverse(&ea));
        }
        let generators = (0..k).map(|i| places[i]).collect();
        Ok(Self {
            order: n,
            mult: Mult::Steps {
                step,
                orders,
                places,
            },
            inverses,
            generators,
            pc: Some(g.clone()),
        })
    }

    /// Reads `{"order": k, "table": [[...]]}` with `0` the identity; checks
    /// the group axioms exhaustively.
    pub fn from_json(text: &str) -> Result<Self, GroupError> {
        let t: TableJson =
            serde_json::from_str(text).map_err(|e| GroupError::BadTable(e.to_string()))?;
        Self::from_rows(t.order, &t.table)
    }

    pub fn from_rows(order: usize, rows: &[Vec<u32>]) -> Result<Self, GroupError> {
        let n = order;
        if n == 0 || rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(GroupError::BadTable(format!("expected a {n}x{n} table")));
        }
        if rows.iter().flatten().any(|&x| x as usize >= n) {
            return Err(GroupError::BadTable("entry out of range".into()));
        }
        for a in 0..n {
            if rows[0][a] as usize != a || rows[a][0] as usize != a {
                return Err(GroupError::BadTable("0 is not the identity".into()));
            }
        }
        let table: Vec<u32> = rows.iter().flatten().copied().collect();
        let mut inverses = vec![u32::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| table[a * n + b] == 0) {
                Some(b) if table[b * n + a] == 0 => inverses[a] = b as u32,
                _ => {
                    return Err(GroupError::BadTable(format!(
                        "element {a} has no two-sided inverse"
                    )))
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b] as usize;
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c] as usize] {
                        return Err(GroupError::BadTable(format!(
                            "not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let mut t = Self {
            order: n,
            mult: Mult::Table(table),
            inverses,
            generators: Vec::new(),
            pc: None,
        };
        // greedy generating set
        let mut gens = Vec::new();
        let mut closure = t.closure(&[]);
        for a in 0..n as u32 {
            if !closure.contains(a) {
                gens.push(a);
                closure = t.closure(&gens);
            }
        }
        t.generators = gens;
        Ok(t)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u32 {
        0
    }

    /// Generators: the pc generators, or a greedy generating set for tables.
    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn pc(&self) -> Option<&PcGroup> {
        self.pc.as_ref()
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.mult {
            Mult::Table(t) => t[a as usize * self.order + b as usize],
            Mult::Steps {
                step,
                orders,
                places,
            } => {
                let k = orders.len();
                let mut x = a;
                for i in 0..k {
                    let e = (b / places[i]) % orders[i];
                    for _ in 0..e {
                        x = step[x as usize * k + i];
                    }
                }
                x
            }
        }
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    /// `b^-1 a b`.
    pub fn conjugate(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(self.inv(b), a), b)
    }

    pub fn power(&self, a: u32, k: i64) -> u32 {
        let base = if k < 0 { self.inv(a) } else { a };
        (0..k.unsigned_abs()).fold(0, |x, _| self.mul(x, base))
    }

    pub fn element_order(&self, a: u32) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn commutes(&self, a: u32, b: u32) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter().all(|&a| g.iter().all(|&b| self.commutes(a, b)))
    }

    /// Normal form of an id (pc-backed tables only).
    pub fn element(&self, a: u32) -> Option<Element> {
        match &self.mult {
            Mult::Steps { orders, places, .. } => Some(decode(a, orders, places)),
            Mult::Table(_) => None,
        }
    }

    /// Id of a normal form (pc-backed tables only).
    pub fn id_of(&self, e: &Element) -> Result<u32, GroupError> {
        match &self.mult {
            Mult::Steps { orders, places, .. } => {
                if e.0.len() != orders.len() || e.0.iter().zip(orders).any(|(&x, &m)| x >= m) {
                    return Err(GroupError::NotAnElement);
                }
                Ok(e.0.iter().zip(places).map(|(&x, &p)| x * p).sum())
            }
            Mult::Table(_) => Err(GroupError::NotAnElement),
        }
    }

    /// Id of a word in the pc generators (pc-backed tables only).
    pub fn id_of_word(&self, word: &str) -> Result<u32, GroupError> {
        let pc = self.pc.as_ref().ok_or(GroupError::NotAnElement)?;
        self.id_of(&pc.collect_str(word)?)
    }

    /// Smallest subgroup containing `gens`.
    pub fn closure(&self, gens: &[u32]) -> Subgroup {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut members = vec![0u32];
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        Subgroup {
            members,
            gens: gens.to_vec(),
            mask: seen,
        }
    }

    /// Smallest normal subgroup containing `gens`.
    pub fn normal_closure(&self, gens: &[u32]) -> Subgroup {
        let mut gs = gens.to_vec();
        let mut h = self.closure(&gs);
        loop {
            let mut grew = false;
            for i in 0..gs.len() {
                for &g in &self.generators {
                    let c = self.conjugate(gs[i], g);
                    if !h.contains(c) {
                        gs.push(c);
                        h = self.closure(&gs);
                        grew = true;
                    }
                }
            }
            if !grew {
                return h;
            }
        }
    }

    pub fn whole(&self) -> Subgroup {
        let members: Vec<u32> = (0..self.order as u32).collect();
        Subgroup {
            members,
            gens: self.generators.clone(),
            mask: vec![true; self.order],
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.closure(&[])
    }

    pub fn center(&self) -> Subgroup {
        let zs: Vec<u32> = (0..self.order as u32)
            .filter(|&z| self.generators.iter().all(|&g| self.commutes(z, g)))
            .collect();
        let mut mask = vec![false; self.order];
        for &z in &zs {
            mask[z as usize] = true;
        }
        Subgroup {
            gens: zs.clone(),
            members: zs,
            mask,
        }
    }

    /// `G'` as the normal closure of the commutators of generators.
    pub fn derived_subgroup(&self) -> Subgroup {
        let g = &self.generators;
        let mut cs = Vec::new();
        for (i, &a) in g.iter().enumerate() {
            for &b in &g[..i] {
                let c = self.commutator(a, b);
                if c != 0 && !cs.contains(&c) {
                    cs.push(c);
                }
            }
        }
        self.normal_closure(&cs)
    }

    /// Sorted representatives of the cosets `gZ(G)`, each the least id.
    pub fn central_transversal(&self) -> Vec<u32> {
        let z = self.center();
        let mut covered = vec![false; self.order];
        let mut reps = Vec::new();
        for a in 0..self.order as u32 {
            if covered[a as usize] {
                continue;
            }
            reps.push(a);
            for &c in &z.members {
                covered[self.mul(a, c) as usize] = true;
            }
        }
        reps
    }

    /// Membership mask of the commutator set `K(G) = {[x, y]}`. Commutators
    /// only depend on cosets of the center, so a transversal suffices.
    pub fn commutator_mask(&self) -> Vec<bool> {
        let t = self.central_transversal();
        let mut mask = vec![false; self.order];
        mask[0] = true;
        for (i, &a) in t.iter().enumerate() {
            for &b in &t[..i] {
                mask[self.commutator(a, b) as usize] = true;
            }
        }
        mask
    }

    /// The sorted set `K(G)`.
    pub fn commutator_set(&self) -> Vec<u32> {
        mask_to_ids(&self.commutator_mask())
    }

    pub fn is_commutator_closed(&self) -> bool {
        let k = self.commutator_mask();
        self.derived_subgroup()
            .members
            .iter()
            .all(|&c| k[c as usize])
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        h.members.iter().all(|&x| {
            self.generators
                .iter()
                .all(|&g| h.contains(self.conjugate(x, g)))
        })
    }

    pub fn is_central(&self, h: &Subgroup) -> bool {
        h.members
            .iter()
            .all(|&x| self.generators.iter().all(|&g| self.commutes(x, g)))
    }

    /// Lower central series `G = γ_1 > γ_2 > ...` down to its last term.
    pub fn lower_central_series(&self) -> Vec<Subgroup> {
        let mut series = vec![self.whole()];
        loop {
            let last = series.last().unwrap();
            let mut cs = Vec::new();
            for &x in &last.members {
                for &g in &self.generators {
                    let c = self.commutator(x, g);
                    if c != 0 && !cs.contains(&c) {
                        cs.push(c);
                    }
                }
            }
            let next = self.normal_closure(&cs);
            if next.order() == last.order() {
                return series;
            }
            series.push(next);
        }
    }

    /// Nilpotency class; `Err(NotNilpotent)` when the series stalls above 1.
    pub fn nilpotency_class(&self) -> Result<usize, GroupError> {
        let s = self.lower_central_series();
        if s.last().unwrap().order() != 1 {
            return Err(GroupError::NotNilpotent);
        }
        Ok(s.len() - 1)
    }

    /// All ordered pairs `(a, b)` with `ab = ba`.
    pub fn commuting_pairs_exhaustive(&self) -> Vec<(u32, u32)> {
        let n = self.order as u32;
        (0..n)
            .flat_map(|a| {
                (0..n)
                    .filter(move |&b| self.commutes(a, b))
                    .map(move |b| (a, b))
            })
            .collect()
    }

    /// Commuting pairs of the central transversal; every commuting pair of
    /// `G` is `(a z, b z')` for exactly one listed `(a, b)` and `z, z'` in the
    /// center. Requires class at most 2.
    pub fn commuting_pairs_bilinear(&self) -> Result<Vec<(u32, u32)>, GroupError> {
        let c = self.nilpotency_class()?;
        if c > 2 {
            return Err(GroupError::ClassTooLarge { max: 2, class: c });
        }
        let t = self.central_transversal();
        let mut out = Vec::new();
        for &a in &t {
            for &b in &t {
                if self.commutes(a, b) {
                    out.push((a, b));
                }
            }
        }
        Ok(out)
    }

    /// Distinct subgroups `<x, y>` with `[x, y] = 1`, smallest first; this
    /// includes every cyclic subgroup.
    pub fn bicyclic_subgroups(&self) -> Vec<Subgroup> {
        let cyclic = self.cyclic_subgroups();
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::new();
        let mut push = |s: Subgroup, out: &mut Vec<Subgroup>| {
            if seen.insert(s.members.clone()) {
                out.push(s);
            }
        };
        for c in &cyclic {
            push(c.clone(), &mut out);
        }
        // <x, y> only depends on the cyclic subgroups generated by x and y
        let gens: Vec<u32> = cyclic
            .iter()
            .map(|c| c.gens.first().copied().unwrap_or(0))
            .collect();
        for (i, &x) in gens.iter().enumerate() {
            for &y in &gens[..i] {
                if x != 0 && y != 0 && self.commutes(x, y) {
                    push(self.closure(&[x, y]), &mut out);
                }
            }
        }
        out.sort_by(|a, b| {
            a.order()
                .cmp(&b.order())
                .then_with(|| a.members.cmp(&b.members))
        });
        out
    }

    /// Distinct cyclic subgroups, each with its least generator.
    pub fn cyclic_subgroups(&self) -> Vec<Subgroup> {
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::new();
        for a in 0..self.order as u32 {
            let s = self.closure(&[a]);
            if seen.insert(s.members.clone()) {
                out.push(s);
            }
        }
        out
    }

    /// All abelian subgroups, found by extending abelian subgroups one
    /// commuting generator at a time from the cyclic ones.
    pub fn abelian_subgroups(&self) -> Vec<Subgroup> {
        let mut seen = std::collections::BTreeSet::new();
        let mut out: Vec<Subgroup> = Vec::new();
        let mut frontier: Vec<Subgroup> = Vec::new();
        for c in self.cyclic_subgroups() {
            seen.insert(c.members.clone());
            frontier.push(c.clone());
            out.push(c);
        }
        while let Some(a) = frontier.pop() {
            // elements centralizing a but outside it
            for x in 0..self.order as u32 {
                if a.contains(x) || !a.gens.iter().all(|&g| self.commutes(g, x)) {
                    continue;
                }
                let mut gs = a.gens.clone();
                gs.push(x);
                let b = self.closure(&gs);
                if seen.insert(b.members.clone()) {
                    frontier.push(b.clone());
                    out.push(b);
                }
            }
        }
        out.sort_by(|a, b| {
            a.order()
                .cmp(&b.order())
                .then_with(|| a.members.cmp(&b.members))
        });
        out
    }
}

fn decode(a: u32, orders: &[u32], places: &[u32]) -> Element {
    Element(
        orders
            .iter()
            .zip(places)
            .map(|(&m, &p)| (a / p) % m)
            .collect(),
    )
}

pub(crate) fn mask_to_ids(mask: &[bool]) -> Vec<u32> {
    mask.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i as u32)
        .collect()
}

/// A subgroup as a sorted member list, the generators it was built from and
/// a membership mask over the ambient group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<u32>,
    gens: Vec<u32>,
    mask: Vec<bool>,
}

impl Subgroup {
    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn gens(&self) -> &[u32] {
        &self.gens
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, a: u32) -> bool {
        self.mask.get(a as usize).copied().unwrap_or(false)
    }

    pub fn intersect_mask(&self, other: &[bool]) -> Vec<u32> {
        self.members
            .iter()
            .copied()
            .filter(|&a| other[a as usize])
            .collect()
    }
}

/// Abelianization of a pc group from its relation matrix, with the image of
/// each pc generator in the invariant-factor coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Abelianization {
    pub invariants: AbelianInvariants,
    /// `images[i][k]`: coordinate `k` (mod `invariants.factors()[k]`) of `g_i`.
    pub images: Vec<Vec<u64>>,
}

pub fn abelianization(g: &PcGroup) -> Abelianization {
    let pres = g.presentation();
    let k = pres.len();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let abel = |w: &[(usize, i64)]| {
        let mut v = vec![0i64; k];
        for &(x, e) in w {
            v[x] += e;
        }
        v
    };
    for i in 0..k {
        let mut v = abel(pres.power_rhs(i));
        for x in v.iter_mut() {
            *x = -*x;
        }
        v[i] += pres.relative_orders()[i] as i64;
        rows.push(v);
    }
    for (_, w) in pres.comm_relations() {
        rows.push(abel(w));
    }
    let m = IntMatrix::from_rows(k, &rows).expect("rows have k columns");
    let snf = smith_normal_form(&m);
    let d = snf.diagonal();
    let mut factors = Vec::new();
    let mut coords = Vec::new();
    for c in 0..k {
        let dc: u64 = if c < d.len() {
            d[c].clone().try_into().unwrap_or(0)
        } else {
            0
        };
        assert!(dc != 0, "pc groups are finite");
        if dc > 1 {
            factors.push(dc);
            coords.push(c);
        }
    }
    let images = (0..k)
        .map(|i| {
            coords
                .iter()
                .zip(&factors)
                .map(|(&c, &f)| {
                    let x: i128 = (snf.v.get(i, c) % num_bigint::BigInt::from(f))
                        .try_into()
                        .unwrap();
                    x.rem_euclid(f as i128) as u64
                })
                .collect()
        })
        .collect();
    let invariants = AbelianInvariants::from_cyclic_orders(factors.iter().copied());
    debug_assert_eq!(invariants.factors(), &factors[..]);
    Abelianization { invariants, images }
}

/// Nilpotency class of a pc group with every relative order a power of one
/// prime, by left-normed commutators of generators; no enumeration needed.
/// Returns `None` for other presentations.
pub fn pc_nilpotency_class(g: &PcGroup) -> Option<usize> {
    let orders = g.relative_orders();
    let p = orders.iter().map(|&m| smallest_prime_factor(m)).min()?;
    if orders.iter().any(|&m| !is_power_of(m, p)) {
        return None;
    }
    let gens: Vec<Element> = (0..g.ngens()).map(|i| g.gen(i)).collect();
    let mut layer: Vec<Element> = gens.iter().filter(|x| !x.is_identity()).cloned().collect();
    let mut class = 0;
    while !layer.is_empty() {
        class += 1;
        let mut next = std::collections::BTreeSet::new();
        for x in &layer {
            for y in &gens {
                let c = g.commutator(x, y);
                if !c.is_identity() {
                    next.insert(c);
                }
            }
        }
        layer = next.into_iter().collect();
    }
    Some(class)
}

fn smallest_prime_factor(m: u64) -> u64 {
    (2..)
        .find(|d| m.is_multiple_of(*d) || d * d > m)
        .map(|d| if m.is_multiple_of(d) { d } else { m })
        .unwrap()
}

fn is_power_of(mut m: u64, p: u64) -> bool {
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcgroup::{catalog, CatalogParams};

    fn table(params: CatalogParams) -> GroupTable {
        let g = PcGroup::new(catalog(&params).unwrap()).unwrap();
        enumerate(&g, 1 << 20).unwrap()
    }

    fn d4() -> GroupTable {
        table(CatalogParams::Heisenberg { r: 2, d: vec![1] })
    }

    #[test]
    fn enumeration_and_cap() {
        assert_eq!(d4().order(), 8);
        let g = PcGroup::new(catalog(&CatalogParams::Phi15 { p: 5 }).unwrap()).unwrap();
        let err = enumerate(&g, 1000).unwrap_err();
        assert!(err.to_string().contains("requires 15625"), "{err}");
    }

    #[test]
    fn ids_match_collection() {
        let g = PcGroup::new(catalog(&CatalogParams::Heisenberg { r: 4, d: vec![2] }).unwrap())
            .unwrap();
        let t = enumerate(&g, 1000).unwrap();
        for a in (0..t.order() as u32).step_by(7) {
            for b in (0..t.order() as u32).step_by(5) {
                let prod = g.multiply(&t.element(a).unwrap(), &t.element(b).unwrap());
                assert_eq!(t.mul(a, b), t.id_of(&prod).unwrap());
            }
        }
    }

    #[test]
    fn d4_structure() {
        let t = d4();
        assert_eq!(t.commuting_pairs_exhaustive().len(), 40);
        assert_eq!(t.derived_subgroup().order(), 2);
        assert_eq!(t.center().order(), 2);
        assert_eq!(t.nilpotency_class().unwrap(), 2);
        assert!(t.is_commutator_closed());
        let z = t.center().members()[1];
        let s = t.closure(&[z]);
        assert_eq!(s.order(), 2);
        assert!(t.is_normal(&s));
        let bicyclic = t.bicyclic_subgroups();
        assert!(bicyclic
            .iter()
            .any(|s| s.order() == 4 && s.members().iter().any(|&x| t.element_order(x) == 4)));
        assert!(bicyclic
            .iter()
            .any(|s| s.order() == 4 && s.members().iter().all(|&x| t.element_order(x) <= 2)));
    }

    #[test]
    fn json_tables() {
        // Klein four group
        let json = r#"{"order": 4, "table": [[0,1,2,3],[1,0,3,2],[2,3,0,1],[3,2,1,0]]}"#;
        let t = GroupTable::from_json(json).unwrap();
        assert!(t.is_abelian());
        assert_eq!(t.bicyclic_subgroups().len(), 5);
        let bad = r#"{"order": 3, "table": [[0,1,2],[1,1,0],[2,0,1]]}"#;
        assert!(GroupTable::from_json(bad).is_err());
    }

    #[test]
    fn phi15_derived_subgroup_and_class() {
        let t = table(CatalogParams::Phi15 { p: 5 });
        assert_eq!(t.derived_subgroup().order(), 25);
        let g = t.pc().unwrap();
        assert_eq!(pc_nilpotency_class(g), Some(2));
        let phi28 = PcGroup::new(catalog(&CatalogParams::Phi28 { p: 5 }).unwrap()).unwrap();
        assert_eq!(pc_nilpotency_class(&phi28), Some(4));
    }

    #[test]
    fn abelianization_of_heisenberg() {
        let g = PcGroup::new(catalog(&CatalogParams::Heisenberg { r: 4, d: vec![2] }).unwrap())
            .unwrap();
        let ab = abelianization(&g);
        // G/G' = Z/4 x Z/4 x Z/2 since G' = <z^2>
        assert_eq!(ab.invariants.factors(), &[2, 4, 4]);
        assert_eq!(ab.images.len(), 3);
    }

    #[test]
    fn cyclic_group_subgroups() {
        let t = table(CatalogParams::Cyclic { n: 8 });
        let b = t.bicyclic_subgroups();
        assert_eq!(b.len(), 4);
        assert_eq!(b.last().unwrap().order(), 8);
        assert_eq!(t.abelian_subgroups().len(), 4);
    }
}
