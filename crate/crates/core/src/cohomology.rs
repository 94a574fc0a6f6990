//! `B_0(G)` from its cohomological definition, for small enumerated groups.
//!
//! Coefficients `Q/Z` are replaced by `Z/n` with `|G|` dividing `n`: the
//! sequence `0 -> Z/n -> Q/Z -> Q/Z -> 0` makes `H^2(G, Z/n) -> H^2(G, Q/Z)`
//! onto with kernel the Bockstein image of `Hom(G, Q/Z)`.
//!
//! Classes in `H^2(G, Z/n)` are central extensions `E` of `G` by `Z/n`.
//! Fixing a section `σ` and lifts `ŝ` of the generators, `E` is recorded by
//! labels `f(x, s)` with `σ(x) ŝ = σ(xs) + f(x, s)`, one per edge of the
//! Cayley graph. Labels on a spanning tree are gauged to zero, which fixes
//! `σ`; a labeling defines an extension exactly when every relator lifts to
//! the same central element from every starting vertex. The remaining
//! freedom is the choice of lifts `ŝ -> ŝ + κ(s)`. Hence
//! `H^2(G, Z/n) = {consistent labelings} / {κ-gauge labelings}`, and the
//! normalized cocycle of a labeling is `c(x, y) = L(x, w_y)`, the label sum
//! along the tree path to `y` started at `x`.

use thiserror::Error;

use crate::groupkit::{GroupTable, Subgroup};
use crate::zlattice::{kernel_mod, quotient_invariants_mod, AbelianInvariants, HowellBasis};

pub const DEFAULT_ORACLE_CAP: usize = 72;
pub const HARD_ORACLE_CAP: usize = 128;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("group of order {order} exceeds the oracle cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("coefficient modulus {n} is not a multiple of |G| = {order}")]
    BadModulus { n: u64, order: usize },
    #[error("not a subgroup of the group")]
    NotSubgroup,
    #[error("cochain has {found} values, expected {expected}")]
    BadCochain { expected: usize, found: usize },
}

/// Which subgroups the classes must vanish on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubgroupMode {
    /// Every abelian subgroup (the definition).
    Abelian,
    /// Subgroups `<x, y>` with `[x, y] = 1`.
    Bicyclic,
}

/// A normalized 2-cochain with values in `Z/n` on the pairs of
/// non-identity members of `elements` (sorted group ids, identity first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    pub n: u64,
    pub elements: Vec<u32>,
    /// Row-major over `(x, y)`, both non-identity, in `elements` order.
    pub values: Vec<u64>,
}

impl Cocycle {
    fn dim(&self) -> usize {
        self.elements.len() - 1
    }

    fn pos(&self, x: u32) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    /// Value at `(x, y)`; zero when either argument is the identity.
    pub fn value(&self, x: u32, y: u32) -> u64 {
        let (i, j) = (self.pos(x).expect("member"), self.pos(y).expect("member"));
        if i == 0 || j == 0 {
            return 0;
        }
        self.values[(i - 1) * self.dim() + (j - 1)]
    }

    /// `c(x,y) + c(xy,z) = c(y,z) + c(x,yz)` on all triples.
    pub fn is_cocycle(&self, g: &GroupTable) -> bool {
        let n = self.n;
        let e = &self.elements;
        e.iter().all(|&x| {
            e.iter().all(|&y| {
                e.iter().all(|&z| {
                    (self.value(x, y) + self.value(g.mul(x, y), z)) % n
                        == (self.value(y, z) + self.value(x, g.mul(y, z))) % n
                })
            })
        })
    }

    /// `δφ(x, y) = φ(x) + φ(y) - φ(xy)` for `φ` given on `elements`.
    pub fn coboundary(g: &GroupTable, elements: &[u32], phi: &[u64], n: u64) -> Self {
        let pos = |x: u32| elements.binary_search(&x).unwrap();
        Self::from_fn(elements, n, |x, y| {
            (phi[pos(x)] + phi[pos(y)] + n - phi[pos(g.mul(x, y))] % n) % n
        })
    }

    /// Bockstein of a homomorphism `a: A -> Z/n` given on `elements`:
    /// `(ã(x) + ã(y) - ã(xy)) / n` with `ã` the lift to `[0, n)`.
    pub fn bockstein(g: &GroupTable, elements: &[u32], hom: &[u64], n: u64) -> Self {
        let pos = |x: u32| elements.binary_search(&x).unwrap();
        Self::from_fn(elements, n, |x, y| {
            let s = hom[pos(x)] + hom[pos(y)] - hom[pos(g.mul(x, y))];
            debug_assert!(s.is_multiple_of(n));
            s / n
        })
    }

    fn from_fn(elements: &[u32], n: u64, f: impl Fn(u32, u32) -> u64) -> Self {
        let mut values = Vec::with_capacity((elements.len() - 1).pow(2));
        for &x in &elements[1..] {
            for &y in &elements[1..] {
                values.push(f(x, y) % n);
            }
        }
        Self {
            n,
            elements: elements.to_vec(),
            values,
        }
    }
}

/// Pointwise restriction to a subgroup.
pub fn restrict_class(
    g: &GroupTable,
    a: &Subgroup,
    c: &Cocycle,
) -> Result<Cocycle, CohomologyError> {
    if a.members().iter().any(|&x| c.pos(x).is_none())
        || a.members()
            .iter()
            .any(|&x| a.members().iter().any(|&y| !a.contains(g.mul(x, y))))
    {
        return Err(CohomologyError::NotSubgroup);
    }
    Ok(Cocycle::from_fn(a.members(), c.n, |x, y| c.value(x, y)))
}

/// Spanning tree of the Cayley graph and the numbering of non-tree edges.
#[derive(Clone, Debug)]
struct CayleyTree {
    gens: Vec<u32>,
    /// `var[x * k + i]`: unknown index of edge `(x, g_i)`, `None` on the tree.
    var: Vec<Option<usize>>,
    /// Tree edge `(parent, generator index)` reaching each element, BFS order.
    order: Vec<u32>,
    parent: Vec<Option<(u32, usize)>>,
    unknowns: usize,
}

impl CayleyTree {
    fn new(g: &GroupTable, gens: &[u32]) -> Self {
        let n = g.order();
        let k = gens.len();
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        let mut is_tree = vec![false; n * k];
        seen[0] = true;
        let mut order = vec![0u32];
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for (i, &s) in gens.iter().enumerate() {
                let y = g.mul(x, s);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    parent[y as usize] = Some((x, i));
                    is_tree[x as usize * k + i] = true;
                    order.push(y);
                }
            }
        }
        assert_eq!(order.len(), n, "generators must generate the group");
        let mut var = vec![None; n * k];
        let mut unknowns = 0;
        for (e, t) in is_tree.iter().enumerate() {
            if !t {
                var[e] = Some(unknowns);
                unknowns += 1;
            }
        }
        Self {
            gens: gens.to_vec(),
            var,
            order,
            parent,
            unknowns,
        }
    }

    fn k(&self) -> usize {
        self.gens.len()
    }

    /// Label-coefficient vector of the path spelled by `word` from `start`.
    fn path(
        &self,
        g: &GroupTable,
        start: u32,
        word: &[(usize, i64)],
        n: u64,
        out: &mut [u64],
    ) -> u32 {
        let k = self.k();
        let mut cur = start;
        for &(i, e) in word {
            let s = self.gens[i];
            for _ in 0..e.unsigned_abs() {
                if e > 0 {
                    if let Some(v) = self.var[cur as usize * k + i] {
                        out[v] = (out[v] + 1) % n;
                    }
                    cur = g.mul(cur, s);
                } else {
                    let prev = g.mul(cur, g.inv(s));
                    if let Some(v) = self.var[prev as usize * k + i] {
                        out[v] = (out[v] + n - 1) % n;
                    }
                    cur = prev;
                }
            }
        }
        cur
    }

    /// Tree word from the identity to `x`.
    fn tree_word(&self, mut x: u32) -> Vec<(usize, i64)> {
        let mut w = Vec::new();
        while let Some((p, i)) = self.parent[x as usize] {
            w.push((i, 1));
            x = p;
        }
        w.reverse();
        w
    }

    /// Labeling of a gauge `φ` (fixed by the tree) and lift shift `κ`:
    /// `f(x, s) = φ(x) - φ(xs) + κ(s)`, with `φ(1) = 0` and tree labels zero.
    fn gauge_labeling(&self, g: &GroupTable, kappa: &[u64], n: u64) -> Vec<u64> {
        let k = self.k();
        let mut phi = vec![0u64; g.order()];
        for &y in &self.order[1..] {
            let (p, i) = self.parent[y as usize].unwrap();
            phi[y as usize] = (phi[p as usize] + kappa[i]) % n;
        }
        let mut out = vec![0u64; self.unknowns];
        for x in 0..g.order() {
            for i in 0..k {
                if let Some(v) = self.var[x * k + i] {
                    let y = g.mul(x as u32, self.gens[i]) as usize;
                    out[v] = (phi[x] + n - phi[y] + kappa[i]) % n;
                }
            }
        }
        out
    }

    /// Full edge-label table `f[x * k + i]` of a labeling.
    fn labels(&self, labeling: &[u64], order: usize) -> Vec<u64> {
        let k = self.k();
        (0..order * k)
            .map(|e| self.var[e].map_or(0, |v| labeling[v]))
            .collect()
    }
}

/// `Hom(A, Z/n)` generators as value lists over `members` (sorted, identity
/// first), for an abelian or arbitrary subgroup generated by `gens`.
fn homs_to_zn(g: &GroupTable, members: &[u32], gens: &[u32], n: u64) -> Vec<Vec<u64>> {
    let k = gens.len();
    if k == 0 {
        return Vec::new();
    }
    let pos = |x: u32| members.binary_search(&x).unwrap();
    // word exponent counts of a BFS tree path to each member
    let mut counts: Vec<Option<Vec<u64>>> = vec![None; members.len()];
    counts[0] = Some(vec![0; k]);
    let mut queue = vec![0u32];
    let mut head = 0;
    let mut rows = Vec::new();
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let cx = counts[pos(x)].clone().unwrap();
        for (i, &s) in gens.iter().enumerate() {
            let y = g.mul(x, s);
            let mut cy = cx.clone();
            cy[i] = (cy[i] + 1) % n;
            match &counts[pos(y)] {
                Some(old) => rows.push(cy.iter().zip(old).map(|(a, b)| (a + n - b) % n).collect()),
                None => {
                    counts[pos(y)] = Some(cy);
                    queue.push(y);
                }
            }
        }
    }
    kernel_mod(&rows, k, n)
        .into_iter()
        .map(|a| {
            counts
                .iter()
                .map(|c| {
                    c.as_ref()
                        .unwrap()
                        .iter()
                        .zip(&a)
                        .map(|(x, y)| x * y % n)
                        .sum::<u64>()
                        % n
                })
                .collect()
        })
        .collect()
}

/// `H^2(G, Z/n)` as consistent labelings modulo lift shifts, together with
/// the Bockstein image of `Hom(G, Z/n)`.
#[derive(Clone, Debug)]
pub struct H2Presentation {
    pub n: u64,
    tree: CayleyTree,
    elements: Vec<u32>,
    /// Generators of the consistent labelings.
    pub solutions: Vec<Vec<u64>>,
    /// Labelings of lift shifts; classes are solutions modulo these.
    pub gauge: Vec<Vec<u64>>,
    /// Labelings representing the Bockstein image.
    pub bockstein: Vec<Vec<u64>>,
}

impl H2Presentation {
    pub fn unknowns(&self) -> usize {
        self.tree.unknowns
    }

    /// Invariants of `H^2(G, Z/n)`.
    pub fn h2_invariants(&self) -> AbelianInvariants {
        quotient_invariants_mod(&self.solutions, &self.gauge, self.unknowns(), self.n)
    }

    /// Invariants of `H^2(G, Q/Z)`, the dual of the Schur multiplier.
    pub fn multiplier_dual(&self) -> AbelianInvariants {
        let rels: Vec<Vec<u64>> = self.gauge.iter().chain(&self.bockstein).cloned().collect();
        quotient_invariants_mod(&self.solutions, &rels, self.unknowns(), self.n)
    }

    /// The normalized cocycle `c(x, y) = L(x, w_y)` of a labeling.
    pub fn cocycle(&self, g: &GroupTable, labeling: &[u64]) -> Cocycle {
        let table = self.cocycle_table(g, labeling);
        let ord = g.order();
        Cocycle::from_fn(&self.elements, self.n, |x, y| {
            table[x as usize * ord + y as usize]
        })
    }

    /// Dense `c[x * |G| + y]`, filled along the tree in the second argument.
    fn cocycle_table(&self, g: &GroupTable, labeling: &[u64]) -> Vec<u64> {
        let n = self.n;
        let ord = g.order();
        let k = self.tree.k();
        let f = self.tree.labels(labeling, ord);
        let mut c = vec![0u64; ord * ord];
        for &ys in &self.tree.order[1..] {
            let (y, i) = self.tree.parent[ys as usize].unwrap();
            for x in 0..ord {
                let xy = g.mul(x as u32, y) as usize;
                c[x * ord + ys as usize] = (c[x * ord + y as usize] + f[xy * k + i]) % n;
            }
        }
        c
    }

    /// Gauge-fixed labeling of the class of a cocycle on `G`.
    pub fn labeling_of(&self, g: &GroupTable, c: &Cocycle) -> Vec<u64> {
        let n = self.n;
        let k = self.tree.k();
        let mut phi = vec![0u64; g.order()];
        for &y in &self.tree.order[1..] {
            let (p, i) = self.tree.parent[y as usize].unwrap();
            phi[y as usize] = (phi[p as usize] + c.value(p, self.tree.gens[i])) % n;
        }
        let mut out = vec![0u64; self.unknowns()];
        for x in 0..g.order() {
            for i in 0..k {
                if let Some(v) = self.tree.var[x * k + i] {
                    let s = self.tree.gens[i];
                    let y = g.mul(x as u32, s) as usize;
                    out[v] = (c.value(x as u32, s) + phi[x] + n - phi[y]) % n;
                }
            }
        }
        out
    }

    /// Whether a labeling is a combination of the gauge labelings.
    pub fn is_trivial_class(&self, labeling: &[u64]) -> bool {
        let mut h = HowellBasis::new(self.n, self.unknowns());
        for v in &self.gauge {
            h.insert(v);
        }
        h.contains(labeling)
    }
}

fn relators(g: &GroupTable, tree: &CayleyTree) -> Vec<Vec<(usize, i64)>> {
    if let Some(pc) = g.pc() {
        // pc relators, plus g^{o(g)} for each generator
        let pres = pc.presentation();
        let k = pres.len();
        let mut out = Vec::new();
        for i in 0..k {
            let mut w = vec![(i, pres.relative_orders()[i] as i64)];
            w.extend(crate::pcgroup::invert_word(pres.power_rhs(i)));
            out.push(w);
            out.push(vec![(i, g.element_order(tree.gens[i]) as i64)]);
        }
        for j in 0..k {
            for i in 0..j {
                // g_j g_i = g_i g_j w_ji
                let mut w = vec![(j, 1), (i, 1)];
                w.extend(crate::pcgroup::invert_word(pres.comm_rhs(j, i)));
                w.extend([(j, -1), (i, -1)]);
                out.push(w);
            }
        }
        out
    } else {
        // fundamental cycles of the spanning tree
        let k = tree.k();
        let mut out = Vec::new();
        for x in 0..g.order() as u32 {
            for i in 0..k {
                if tree.var[x as usize * k + i].is_some() {
                    let mut w = tree.tree_word(x);
                    w.push((i, 1));
                    w.extend(
                        tree.tree_word(g.mul(x, tree.gens[i]))
                            .iter()
                            .rev()
                            .map(|&(s, e)| (s, -e)),
                    );
                    out.push(w);
                }
            }
        }
        out
    }
}

/// `H^2(G, Z/n)` with its Bockstein subgroup.
pub fn h2_mod(g: &GroupTable, n: u64, cap: usize) -> Result<H2Presentation, CohomologyError> {
    let order = g.order();
    if order > cap.min(HARD_ORACLE_CAP) {
        return Err(CohomologyError::CapExceeded {
            order,
            cap: cap.min(HARD_ORACLE_CAP),
        });
    }
    if !n.is_multiple_of(order as u64) {
        return Err(CohomologyError::BadModulus { n, order });
    }
    let gens = if g.generators().is_empty() {
        vec![]
    } else {
        g.generators().to_vec()
    };
    let tree = CayleyTree::new(g, &gens);
    let u = tree.unknowns;
    let mut eqs = HowellBasis::new(n, u);
    for r in relators(g, &tree) {
        let mut base = vec![0u64; u];
        tree.path(g, 0, &r, n, &mut base);
        for x in 1..order as u32 {
            let mut row = vec![0u64; u];
            let end = tree.path(g, x, &r, n, &mut row);
            debug_assert_eq!(end, x, "relators are trivial in G");
            for (a, b) in row.iter_mut().zip(&base) {
                *a = (*a + n - b) % n;
            }
            eqs.insert(&row);
        }
    }
    let solutions = kernel_mod(&eqs.rows(), u, n);
    let gauge = (0..tree.k())
        .map(|i| {
            let mut kappa = vec![0u64; tree.k()];
            kappa[i] = 1;
            tree.gauge_labeling(g, &kappa, n)
        })
        .collect();
    let elements: Vec<u32> = (0..order as u32).collect();
    let mut pres = H2Presentation {
        n,
        tree,
        elements: elements.clone(),
        solutions,
        gauge,
        bockstein: Vec::new(),
    };
    let homs = homs_to_zn(g, &elements, &gens, n);
    pres.bockstein = homs
        .iter()
        .map(|a| pres.labeling_of(g, &Cocycle::bockstein(g, &elements, a, n)))
        .collect();
    Ok(pres)
}

/// Spanning set of `B^2(A, Z/n) + Bockstein(Hom(A, Z/n))` as cochains on `A`.
fn trivial_on_subgroup(g: &GroupTable, a: &Subgroup, n: u64) -> Vec<Vec<u64>> {
    let m = a.members();
    let mut out = Vec::new();
    for i in 1..m.len() {
        let mut phi = vec![0u64; m.len()];
        phi[i] = 1;
        out.push(Cocycle::coboundary(g, m, &phi, n).values);
    }
    for hom in homs_to_zn(g, m, a.gens(), n) {
        out.push(Cocycle::bockstein(g, m, &hom, n).values);
    }
    out
}

/// Members of `family` not strictly contained in another member.
fn maximal(family: Vec<Subgroup>) -> Vec<Subgroup> {
    let keep: Vec<bool> = family
        .iter()
        .map(|s| {
            !family
                .iter()
                .any(|t| t.order() > s.order() && s.members().iter().all(|&x| t.contains(x)))
        })
        .collect();
    family
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(s, _)| s)
        .collect()
}

/// `B_0(G)` with `n = |G|` and the default cap.
pub fn b0_oracle(g: &GroupTable, mode: SubgroupMode) -> Result<AbelianInvariants, CohomologyError> {
    b0_oracle_with(g, mode, g.order() as u64, DEFAULT_ORACLE_CAP)
}

/// Classes of `H^2(G, Z/n)` whose restriction to every subgroup of the
/// family lies in that subgroup's Bockstein image, modulo the Bockstein
/// image of `G`. Restriction from a larger subgroup of the family covers the
/// smaller ones, so only maximal members are tested.
pub fn b0_oracle_with(
    g: &GroupTable,
    mode: SubgroupMode,
    n: u64,
    cap: usize,
) -> Result<AbelianInvariants, CohomologyError> {
    let h2 = h2_mod(g, n, cap)?;
    let family = match mode {
        SubgroupMode::Abelian => g.abelian_subgroups(),
        SubgroupMode::Bicyclic => g.bicyclic_subgroups(),
    };
    let family = maximal(family);
    // current generators of the surviving labelings
    let mut surviving: Vec<Vec<u64>> = h2.solutions.clone();
    let tables: Vec<Vec<u64>> = h2
        .solutions
        .iter()
        .map(|s| h2.cocycle_table(g, s))
        .collect();
    let ord = g.order();
    for a in &family {
        let m = a.members();
        let dim = (m.len() - 1) * (m.len() - 1);
        if dim == 0 {
            continue;
        }
        let triv = trivial_on_subgroup(g, a, n);
        let mut tb = HowellBasis::new(n, dim);
        for t in &triv {
            tb.insert(t);
        }
        // surviving labelings as coefficient vectors over the solutions
        let coeffs = express(&surviving, &h2.solutions, n);
        let restricted: Vec<Vec<u64>> = coeffs
            .iter()
            .map(|cf| {
                let mut v = vec![0u64; dim];
                for (c, tab) in cf.iter().zip(&tables) {
                    if *c == 0 {
                        continue;
                    }
                    let mut idx = 0;
                    for &x in &m[1..] {
                        for &y in &m[1..] {
                            v[idx] = (v[idx] + c * tab[x as usize * ord + y as usize]) % n;
                            idx += 1;
                        }
                    }
                }
                v
            })
            .collect();
        if restricted.iter().all(|v| tb.contains(v)) {
            continue;
        }
        // combinations u with sum u_j restricted_j in the trivial span
        let basis = tb.rows();
        let cols = restricted.len() + basis.len();
        let mut rows = vec![vec![0u64; cols]; dim];
        for (j, v) in restricted.iter().chain(&basis).enumerate() {
            let neg = j >= restricted.len();
            for (r, &x) in v.iter().enumerate() {
                rows[r][j] = if neg { (n - x) % n } else { x };
            }
        }
        let ker = kernel_mod(&rows, cols, n);
        let u = h2.unknowns();
        surviving = ker
            .iter()
            .map(|kv| {
                let mut s = vec![0u64; u];
                for (c, sv) in kv[..restricted.len()].iter().zip(&surviving) {
                    for (a, b) in s.iter_mut().zip(sv) {
                        *a = (*a + c * b) % n;
                    }
                }
                s
            })
            .collect();
        let mut hb = HowellBasis::new(n, u);
        for s in &surviving {
            hb.insert(s);
        }
        surviving = hb.rows();
    }
    let rels: Vec<Vec<u64>> = h2.gauge.iter().chain(&h2.bockstein).cloned().collect();
    Ok(quotient_invariants_mod(&surviving, &rels, h2.unknowns(), n))
}

/// Coefficients of each target vector over `basis` (targets must lie in
/// its span), found from a kernel of `[basis; -target]`.
fn express(targets: &[Vec<u64>], basis: &[Vec<u64>], n: u64) -> Vec<Vec<u64>> {
    if targets.is_empty() {
        return Vec::new();
    }
    let width = targets[0].len();
    let b = basis.len();
    targets
        .iter()
        .map(|t| {
            if let Some(i) = basis.iter().position(|v| v == t) {
                let mut c = vec![0u64; b];
                c[i] = 1;
                return c;
            }
            let mut rows = vec![vec![0u64; b + 1]; width];
            for (j, v) in basis.iter().enumerate() {
                for (r, &x) in v.iter().enumerate() {
                    rows[r][j] = x;
                }
            }
            for (r, &x) in t.iter().enumerate() {
                rows[r][b] = (n - x) % n;
            }
            let ker = kernel_mod(&rows, b + 1, n);
            // a kernel element with last coordinate 1 exists; combine to find it
            let mut hb = HowellBasis::new(n, b + 1);
            let mut perm: Vec<Vec<u64>> = ker
                .iter()
                .map(|v| {
                    let mut w = vec![v[b]];
                    w.extend_from_slice(&v[..b]);
                    w
                })
                .collect();
            for v in &perm {
                hb.insert(v);
            }
            perm = hb.rows();
            let lead = perm.iter().find(|v| v[0] != 0).expect("target in span");
            assert_eq!(lead[0], 1, "target in span");
            lead[1..].to_vec()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupkit::enumerate;
    use crate::pcgroup::{catalog, CatalogParams, PcGroup};

    fn table(params: CatalogParams) -> GroupTable {
        enumerate(&PcGroup::new(catalog(&params).unwrap()).unwrap(), 1 << 12).unwrap()
    }

    #[test]
    fn solutions_are_cocycles() {
        let g = table(CatalogParams::Heisenberg { r: 2, d: vec![1] });
        let h2 = h2_mod(&g, 8, 72).unwrap();
        for s in &h2.solutions {
            assert!(h2.cocycle(&g, s).is_cocycle(&g));
        }
        for s in h2.gauge.iter().chain(&h2.bockstein) {
            assert!(h2.cocycle(&g, s).is_cocycle(&g));
        }
    }

    #[test]
    fn cyclic_groups() {
        for k in [2u64, 3, 4, 6] {
            let g = table(CatalogParams::Cyclic { n: k });
            let h2 = h2_mod(&g, 2 * k, 72).unwrap();
            // H^2(Z/k, Z/n) = Z/gcd(k, n) = Z/k here; H^2(Z/k, Q/Z) = 0
            assert_eq!(h2.h2_invariants().factors(), &[k]);
            assert!(h2.multiplier_dual().is_trivial());
        }
    }

    #[test]
    fn klein_four_and_d4_multipliers() {
        let v4 = table(CatalogParams::ElementaryAbelian { p: 2, rank: 2 });
        let h2 = h2_mod(&v4, 4, 72).unwrap();
        assert_eq!(h2.h2_invariants().order(), 8);
        assert_eq!(h2.multiplier_dual().factors(), &[2]);
        let d4 = table(CatalogParams::Heisenberg { r: 2, d: vec![1] });
        assert_eq!(
            h2_mod(&d4, 8, 72).unwrap().multiplier_dual().factors(),
            &[2]
        );
    }

    #[test]
    fn errors() {
        let g = table(CatalogParams::Cyclic { n: 4 });
        assert_eq!(
            h2_mod(&g, 6, 72).unwrap_err(),
            CohomologyError::BadModulus { n: 6, order: 4 }
        );
        assert!(matches!(
            h2_mod(&g, 4, 3),
            Err(CohomologyError::CapExceeded { .. })
        ));
    }

    #[test]
    fn small_b0_vanishes() {
        for params in [
            CatalogParams::Heisenberg { r: 2, d: vec![1] },
            CatalogParams::ElementaryAbelian { p: 2, rank: 3 },
            CatalogParams::Heisenberg { r: 3, d: vec![1] },
        ] {
            let g = table(params);
            for mode in [SubgroupMode::Abelian, SubgroupMode::Bicyclic] {
                assert!(b0_oracle(&g, mode).unwrap().is_trivial());
            }
        }
    }
}
