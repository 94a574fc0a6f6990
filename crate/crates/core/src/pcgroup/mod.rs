//! Finite groups given by polycyclic presentations.
//!
//! A presentation lists generators `g_1, ..., g_n` with relative orders
//! `m_i`, power relations `g_i^{m_i} = w_i` and commutator relations
//! `[g_j, g_i] = w_{ji}` (`j > i`), every right-hand side mentioning only
//! generators after `g_i`. Commutators are `[x, y] = x^-1 y^-1 x y`
//! throughout the crate.

mod catalog;
mod collect;
mod dsl;
pub mod rewrite;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use catalog::{catalog, primitive_root, smallest_nonresidue, CatalogParams, Family};
pub use dsl::{parse_pc, parse_word, ParseError};

/// A word as `(generator index, exponent)` syllables.
pub type Word = Vec<(usize, i64)>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PcError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator index {0} out of range")]
    GeneratorOutOfRange(usize),
    #[error("relative order of `{name}` is {order}; must be at least 2")]
    BadOrder { name: String, order: u64 },
    #[error("relation for {relation} mentions `{generator}`, which is not strictly later than `{bound}`")]
    Ordering {
        relation: String,
        generator: String,
        bound: String,
    },
    #[error("presentation is inconsistent: {0} failing overlap(s), first: {1}")]
    Inconsistent(usize, String),
    #[error("invalid catalog parameters: {0}")]
    Catalog(String),
    #[error("element has {found} exponents, group has {expected} generators")]
    Malformed { expected: usize, found: usize },
}

/// A polycyclic presentation, structurally validated but not yet checked
/// for consistency.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PcPresentation {
    pub name: String,
    names: Vec<String>,
    relative_orders: Vec<u64>,
    power_rhs: Vec<Word>,
    /// `(j, i) -> [g_j, g_i]` for `j > i`; absent pairs commute.
    comm_rhs: BTreeMap<(usize, usize), Word>,
}

impl PcPresentation {
    /// Presentation with the given generators and orders and no relations yet.
    pub fn new(name: &str, names: Vec<String>, relative_orders: Vec<u64>) -> Result<Self, PcError> {
        assert_eq!(names.len(), relative_orders.len());
        for (n, &m) in names.iter().zip(&relative_orders) {
            if m < 2 {
                return Err(PcError::BadOrder {
                    name: n.clone(),
                    order: m,
                });
            }
        }
        let k = names.len();
        Ok(Self {
            name: name.to_string(),
            names,
            relative_orders,
            power_rhs: vec![Vec::new(); k],
            comm_rhs: BTreeMap::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relative_orders(&self) -> &[u64] {
        &self.relative_orders
    }

    pub fn power_rhs(&self, i: usize) -> &Word {
        &self.power_rhs[i]
    }

    /// Right-hand side of `[g_j, g_i]`, `j > i`; empty for trivial commutators.
    pub fn comm_rhs(&self, j: usize, i: usize) -> &[(usize, i64)] {
        self.comm_rhs.get(&(j, i)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn comm_relations(&self) -> impl Iterator<Item = (&(usize, usize), &Word)> {
        self.comm_rhs.iter()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Product of the relative orders (the group order when consistent).
    pub fn order(&self) -> u128 {
        self.relative_orders.iter().map(|&m| m as u128).product()
    }

    fn check_rhs(&self, relation: String, bound: usize, w: &Word) -> Result<(), PcError> {
        for &(g, _) in w {
            if g >= self.len() {
                return Err(PcError::GeneratorOutOfRange(g));
            }
            if g <= bound {
                return Err(PcError::Ordering {
                    relation,
                    generator: self.names[g].clone(),
                    bound: self.names[bound].clone(),
                });
            }
        }
        Ok(())
    }

    pub fn set_power(&mut self, i: usize, rhs: Word) -> Result<(), PcError> {
        self.check_rhs(
            format!("{}^{}", self.names[i], self.relative_orders[i]),
            i,
            &rhs,
        )?;
        self.power_rhs[i] = normalize_word(rhs);
        Ok(())
    }

    /// Sets `[g_j, g_i] = rhs` with `j > i`.
    pub fn set_comm(&mut self, j: usize, i: usize, rhs: Word) -> Result<(), PcError> {
        if j <= i {
            return Err(PcError::Ordering {
                relation: format!("[{},{}]", self.names[j], self.names[i]),
                generator: self.names[j].clone(),
                bound: self.names[i].clone(),
            });
        }
        self.check_rhs(format!("[{},{}]", self.names[j], self.names[i]), i, &rhs)?;
        let rhs = normalize_word(rhs);
        if rhs.is_empty() {
            self.comm_rhs.remove(&(j, i));
        } else {
            self.comm_rhs.insert((j, i), rhs);
        }
        Ok(())
    }

    pub fn format_word(&self, w: &[(usize, i64)]) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.iter()
            .map(|&(g, e)| {
                if e == 1 {
                    self.names[g].clone()
                } else {
                    format!("{}^{}", self.names[g], e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Emits the presentation in the text format read by [`parse_pc`].
    pub fn to_dsl(&self) -> String {
        let mut s = format!(
            "group {} {{\n  gens {};\n",
            self.name,
            self.names.join(", ")
        );
        for (n, m) in self.names.iter().zip(&self.relative_orders) {
            s += &format!("  order {n} = {m};\n");
        }
        for (i, w) in self.power_rhs.iter().enumerate() {
            if !w.is_empty() {
                s += &format!(
                    "  pow {}^{} = {};\n",
                    self.names[i],
                    self.relative_orders[i],
                    self.format_word(w)
                );
            }
        }
        for (&(j, i), w) in &self.comm_rhs {
            s += &format!(
                "  comm [{},{}] = {};\n",
                self.names[j],
                self.names[i],
                self.format_word(w)
            );
        }
        s += "}\n";
        s
    }
}

/// Merges adjacent syllables of the same generator and drops zero exponents.
pub fn normalize_word(w: Word) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for (g, e) in w {
        if let Some(last) = out.last_mut() {
            if last.0 == g {
                last.1 += e;
                if last.1 == 0 {
                    out.pop();
                }
                continue;
            }
        }
        if e != 0 {
            out.push((g, e));
        }
    }
    out
}

/// Inverse of a word, syllable by syllable.
pub fn invert_word(w: &[(usize, i64)]) -> Word {
    w.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

/// Normal form: exponent vector with `0 <= e_i < m_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(pub Vec<u32>);

impl Element {
    pub fn identity(n: usize) -> Self {
        Element(vec![0; n])
    }

    pub fn generator(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Element(e)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// The normal form read as a word.
    pub fn to_word(&self) -> Word {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| (i, e as i64))
            .collect()
    }

    /// Index of the first generator with nonzero exponent.
    pub fn leading(&self) -> Option<usize> {
        self.0.iter().position(|&e| e != 0)
    }
}

/// One failing overlap from [`consistency_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OverlapFailure {
    pub overlap: String,
    pub left: Vec<u32>,
    pub right: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub overlaps_checked: usize,
    pub failures: Vec<OverlapFailure>,
}

impl ConsistencyReport {
    pub fn is_consistent(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A consistent presentation with its collector tables.
#[derive(Clone, Debug)]
pub struct PcGroup {
    pres: PcPresentation,
    tables: collect::Tables,
}

impl PcGroup {
    /// Validates consistency; inconsistent presentations are refused.
    pub fn new(pres: PcPresentation) -> Result<Self, PcError> {
        let g = Self::new_unchecked(pres);
        let report = g.consistency_report();
        if let Some(first) = report.failures.first() {
            return Err(PcError::Inconsistent(
                report.failures.len(),
                first.overlap.clone(),
            ));
        }
        Ok(g)
    }

    fn new_unchecked(pres: PcPresentation) -> Self {
        let tables = collect::Tables::build(&pres);
        Self { pres, tables }
    }

    pub fn presentation(&self) -> &PcPresentation {
        &self.pres
    }

    pub fn ngens(&self) -> usize {
        self.pres.len()
    }

    pub fn order(&self) -> u128 {
        self.pres.order()
    }

    pub fn relative_orders(&self) -> &[u64] {
        &self.pres.relative_orders
    }

    pub fn name(&self, i: usize) -> &str {
        &self.pres.names[i]
    }

    pub fn identity(&self) -> Element {
        Element::identity(self.ngens())
    }

    pub fn gen(&self, i: usize) -> Element {
        Element::generator(self.ngens(), i)
    }

    /// Normal form of a word.
    pub fn collect(&self, w: &[(usize, i64)]) -> Result<Element, PcError> {
        for &(g, _) in w {
            if g >= self.ngens() {
                return Err(PcError::GeneratorOutOfRange(g));
            }
        }
        let mut e = vec![0u32; self.ngens()];
        self.tables.apply_word(&mut e, w);
        Ok(Element(e))
    }

    /// Normal form of a word given in the text word syntax, e.g. `a1^-1*a2`.
    pub fn collect_str(&self, word: &str) -> Result<Element, PcError> {
        let w = parse_word(word, &self.pres.names)?;
        self.collect(&w)
    }

    pub fn check(&self, a: &Element) -> Result<(), PcError> {
        if a.0.len() != self.ngens() {
            return Err(PcError::Malformed {
                expected: self.ngens(),
                found: a.0.len(),
            });
        }
        Ok(())
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        let mut e = a.0.clone();
        self.tables.apply_element(&mut e, &b.0);
        Element(e)
    }

    pub fn inverse(&self, a: &Element) -> Element {
        let mut e = vec![0u32; self.ngens()];
        for i in (0..self.ngens()).rev() {
            for _ in 0..a.0[i] {
                self.tables
                    .apply_element(&mut e, &self.tables.inverse_gen[i]);
            }
        }
        Element(e)
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(&self, a: &Element, b: &Element) -> Element {
        let ab = self.multiply(a, b);
        let ba = self.multiply(b, a);
        // [a,b] = (ba)^-1 (ab)
        self.multiply(&self.inverse(&ba), &ab)
    }

    /// Left-normed commutator `[x_1, ..., x_k]`.
    pub fn commutator_n(&self, xs: &[&Element]) -> Element {
        let mut c = xs[0].clone();
        for x in &xs[1..] {
            c = self.commutator(&c, x);
        }
        c
    }

    pub fn power(&self, a: &Element, k: i64) -> Element {
        let base = if k < 0 { self.inverse(a) } else { a.clone() };
        let mut k = k.unsigned_abs();
        let mut acc = self.identity();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.multiply(&acc, &sq);
            }
            k >>= 1;
            if k > 0 {
                sq = self.multiply(&sq, &sq);
            }
        }
        acc
    }

    /// `a^-1 b a`.
    pub fn conjugate(&self, b: &Element, a: &Element) -> Element {
        self.multiply(&self.multiply(&self.inverse(a), b), a)
    }

    pub fn element_order(&self, a: &Element) -> u64 {
        let mut x = a.clone();
        let mut k = 1;
        while !x.is_identity() {
            x = self.multiply(&x, a);
            k += 1;
        }
        k
    }

    pub fn format(&self, a: &Element) -> String {
        self.pres.format_word(&a.to_word())
    }

    pub fn consistency_report(&self) -> ConsistencyReport {
        consistency_check_tables(&self.pres, &self.tables)
    }
}

/// Checks every overlap of the presentation; failures are listed, not raised.
pub fn consistency_check(pres: &PcPresentation) -> ConsistencyReport {
    let tables = collect::Tables::build(pres);
    consistency_check_tables(pres, &tables)
}

fn consistency_check_tables(pres: &PcPresentation, t: &collect::Tables) -> ConsistencyReport {
    let n = pres.len();
    let m = &pres.relative_orders;
    let names = &pres.names;
    let nf = |w: &[(usize, i64)]| {
        let mut e = vec![0u32; n];
        t.apply_word(&mut e, w);
        e
    };
    // (X) * Y: collect X first, then multiply by the letters of Y
    let left = |x: &[(usize, i64)], y: &[(usize, i64)]| {
        let mut e = nf(x);
        t.apply_word(&mut e, y);
        e
    };
    // X * (Y): start from X, multiply by the normal form of Y
    let right = |x: &[(usize, i64)], y: &[(usize, i64)]| {
        let ny = nf(y);
        let mut e = nf(x);
        t.apply_element(&mut e, &ny);
        e
    };
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut record = |label: String, l: Vec<u32>, r: Vec<u32>| {
        if l != r {
            failures.push(OverlapFailure {
                overlap: label,
                left: l,
                right: r,
            });
        }
    };
    for k in 0..n {
        for j in 0..k {
            for i in 0..j {
                checked += 1;
                let l = left(&[(k, 1), (j, 1)], &[(i, 1)]);
                let r = right(&[(k, 1)], &[(j, 1), (i, 1)]);
                record(format!("{}({}{})", names[k], names[j], names[i]), l, r);
            }
        }
    }
    for j in 0..n {
        for i in 0..j {
            checked += 2;
            let mj = m[j] as i64;
            let mi = m[i] as i64;
            let l = left(&[(j, mj)], &[(i, 1)]);
            let r = right(&[(j, mj - 1)], &[(j, 1), (i, 1)]);
            record(format!("({}^{}){}", names[j], mj, names[i]), l, r);
            let l = right(&[(j, 1)], &[(i, mi)]);
            let r = left(&[(j, 1), (i, 1)], &[(i, mi - 1)]);
            record(format!("{}({}^{})", names[j], names[i], mi), l, r);
        }
    }
    for i in 0..n {
        checked += 1;
        let mi = m[i] as i64;
        let l = left(&[(i, mi)], &[(i, 1)]);
        let r = right(&[(i, 1)], &[(i, mi)]);
        record(format!("{}^{}", names[i], mi + 1), l, r);
    }
    ConsistencyReport {
        overlaps_checked: checked,
        failures,
    }
}

impl fmt::Display for PcPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_dsl())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heis5() -> PcGroup {
        let p = parse_pc(
            "group h { gens x, y, z; order x = 5; order y = 5; order z = 5; comm [y,x] = z; }",
        )
        .unwrap();
        PcGroup::new(p).unwrap()
    }

    #[test]
    fn identity_and_empty_word() {
        let g = heis5();
        assert!(g.collect(&[]).unwrap().is_identity());
        let a = g.collect_str("x^3*y*z^2").unwrap();
        assert!(g.multiply(&a, &g.inverse(&a)).is_identity());
        assert!(g.commutator(&a, &a).is_identity());
    }

    #[test]
    fn commutator_orientation() {
        let g = heis5();
        let (x, y, z) = (g.gen(0), g.gen(1), g.gen(2));
        assert_eq!(g.commutator(&y, &x), z);
        assert_eq!(g.commutator(&x, &y), g.power(&z, -1));
        assert_eq!(g.collect_str("y^-1*x^-1*y*x").unwrap(), z);
    }

    #[test]
    fn broken_overlap_is_reported() {
        let p = parse_pc("group bad { gens g1, g2, g3; order g1 = 5; order g2 = 3; order g3 = 5; comm [g2,g1] = g3; }")
            .unwrap();
        let report = consistency_check(&p);
        assert!(!report.is_consistent());
        assert!(
            report.failures.iter().any(|f| f.overlap == "(g2^3)g1"),
            "{:?}",
            report.failures
        );
        assert!(matches!(PcGroup::new(p), Err(PcError::Inconsistent(..))));
    }

    #[test]
    fn abelian_presentation_is_consistent() {
        let p =
            parse_pc("group a { gens a, b, c; order a = 4; order b = 6; order c = 9; }").unwrap();
        assert!(consistency_check(&p).is_consistent());
    }

    #[test]
    fn composite_relative_orders() {
        // Z/4 as a single generator of relative order 4, and as two of order 2
        let p = parse_pc("group c4 { gens a, b; order a = 2; order b = 2; pow a^2 = b; }").unwrap();
        let g = PcGroup::new(p).unwrap();
        let a = g.gen(0);
        assert_eq!(g.element_order(&a), 4);
        assert_eq!(g.power(&a, 2), g.gen(1));
        assert_eq!(g.power(&a, -1), g.collect_str("a*b").unwrap());
    }
}
