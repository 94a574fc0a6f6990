//! Exterior-square calculus in `τ(G)`.
//!
//! Everything is computed in the abelian quotient `Q = [G, G^φ] / M0*(G)`,
//! generated by the symbols `w_ij`, the images of `[g_i, g_j^φ]` for
//! `i > j`. The evaluation `ε: w_ij -> [g_i, g_j]` maps `Q` onto `G'` with
//! kernel `M*(G) / M0*(G) ≅ B̃0(G)`, the dual of `B0(G)`.
//!
//! A relation lattice `L` of true relations of `Q` gives a surjection
//! `ker ε / L -> B̃0(G)`. Relator expansions plus all commuting pairs make
//! `L` complete for class 2 ([`b0_class2`]); relator expansions plus
//! witness pairs give the sound upper bound of [`b0_upper_bound`].

mod cert;
mod expand;
pub mod trace;

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groupkit::{
    enumerate, pc_nilpotency_class, AbelianCoords, GroupError, DEFAULT_ENUM_CAP,
};
use crate::pcgroup::{Element, PcError, PcGroup, Word};
use crate::zlattice::{
    cokernel, kernel_mod, quotient_invariants_mod, subquotient_invariants, AbelianInvariants,
    HowellBasis, IntLattice, IntMatrix, LatticeError,
};

pub use cert::{bindings_for, substitute, Bindings, Certificate, Expectation, GroupRef};
pub use expand::{check_central_series, letters, Expander};
pub use trace::{
    audit_trace, from_json_lines, to_json_lines, AuditError, AuditReport, RelationKind, TraceStep,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WedgeError {
    #[error(transparent)]
    Pc(#[from] PcError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("nilpotency class {class} exceeds the supported maximum {max}")]
    ClassTooLarge { max: usize, class: usize },
    #[error("group is not a nilpotent p-group presentation")]
    NotNilpotent,
    #[error("derived subgroup is not abelian: {0}")]
    DerivedNonabelian(String),
    #[error("pc series is not central: {0}")]
    NotCentralSeries(String),
    #[error("expansion exceeded depth {0}")]
    NonTermination(usize),
    #[error("certificate rejected: witness {index} ({u}, {v}) does not commute, commutator is {commutator}")]
    WitnessRejected {
        index: usize,
        u: String,
        v: String,
        commutator: String,
    },
    #[error("invalid certificate: {0}")]
    BadCertificate(String),
    #[error("exponent variable `{0}` is not bound")]
    UnboundExponent(String),
}

/// The symbols `w_ij`, `i > j`, indexed `i(i-1)/2 + j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeBasis {
    k: usize,
    pairs: Vec<(usize, usize)>,
}

impl WedgeBasis {
    pub fn new(k: usize) -> Self {
        let pairs = (1..k).flat_map(|i| (0..i).map(move |j| (i, j))).collect();
        Self { k, pairs }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        debug_assert!(j < i && i < self.k);
        i * (i - 1) / 2 + j
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.pairs.len()]
    }
}

/// A coefficient vector over the symbols `w_ij`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WedgeVector(pub Vec<i64>);

impl WedgeVector {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// `2 w(a2,a1) - w(a3,a1)` style rendering.
    pub fn format(&self, g: &PcGroup) -> String {
        let basis = WedgeBasis::new(g.ngens());
        let mut out = String::new();
        for (&c, &(i, j)) in self.0.iter().zip(basis.pairs()) {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if c.abs() != 1 {
                out.push_str(&format!("{}", c.abs()));
            }
            out.push_str(&format!("w({},{})", g.name(i), g.name(j)));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Nilpotency class of `g`, from the presentation when it is a `p`-group
/// and by enumeration otherwise.
pub fn nilpotency_class(g: &PcGroup) -> Result<usize, WedgeError> {
    if let Some(c) = pc_nilpotency_class(g) {
        return Ok(c);
    }
    let t = enumerate(g, DEFAULT_ENUM_CAP)?;
    t.nilpotency_class().map_err(|_| WedgeError::NotNilpotent)
}

/// Generators of `G'`: all left-normed commutators of weight at least 2 in
/// the pc generators. Requires `g` nilpotent.
pub fn derived_generators(g: &PcGroup) -> Vec<Element> {
    let gens: Vec<Element> = (0..g.ngens()).map(|i| g.gen(i)).collect();
    let mut layer = gens.clone();
    let mut all = std::collections::BTreeSet::new();
    while !layer.is_empty() {
        let mut next = std::collections::BTreeSet::new();
        for x in &layer {
            for y in &gens {
                let c = g.commutator(x, y);
                if !c.is_identity() && all.insert(c.clone()) {
                    next.insert(c);
                }
            }
        }
        layer = next.into_iter().collect();
    }
    all.into_iter().collect()
}

/// Checks the preconditions shared by every expansion: nilpotency class at
/// most `max_class`, abelian `G'`, central pc series.
pub fn check_preconditions(g: &PcGroup, max_class: usize) -> Result<usize, WedgeError> {
    let class = nilpotency_class(g)?;
    if class > max_class {
        return Err(WedgeError::ClassTooLarge {
            max: max_class,
            class,
        });
    }
    let d = derived_generators(g);
    for (a, x) in d.iter().enumerate() {
        for y in &d[a + 1..] {
            if !g.commutator(x, y).is_identity() {
                return Err(WedgeError::DerivedNonabelian(format!(
                    "[{}, {}] ≠ 1",
                    g.format(x),
                    g.format(y)
                )));
            }
        }
    }
    check_central_series(g)?;
    Ok(class)
}

fn binomial(n: i64, k: u32) -> i64 {
    (0..k as i64).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// The right-hand side of `[x^n, y] = [x,y]^n [x,y,x]^C(n,2) [x,y,x,x]^C(n,3)
/// [x,y,x,x,x]^C(n,4) [x,y,x,[x,y]]^σ(n)`, `σ(n) = n(n-1)(2n-1)/6`, evaluated
/// by collection. Valid for class at most 5.
pub fn power_comm_expand(
    g: &PcGroup,
    x: &Element,
    y: &Element,
    n: u64,
) -> Result<Element, WedgeError> {
    let class = nilpotency_class(g)?;
    if class > 5 {
        return Err(WedgeError::ClassTooLarge { max: 5, class });
    }
    let n = n as i64;
    let c1 = g.commutator(x, y);
    let c2 = g.commutator(&c1, x);
    let c3 = g.commutator(&c2, x);
    let c4 = g.commutator(&c3, x);
    let c5 = g.commutator(&c2, &c1);
    let sigma = n * (n - 1) * (2 * n - 1) / 6;
    let factors = [
        (c1, n),
        (c2, binomial(n, 2)),
        (c3, binomial(n, 3)),
        (c4, binomial(n, 4)),
        (c5, sigma),
    ];
    Ok(factors.iter().fold(g.identity(), |acc, (c, e)| {
        g.multiply(&acc, &g.power(c, *e))
    }))
}

/// Syllables of a word as elements, the factorisation used for expansion.
fn factors_of(g: &PcGroup, w: &[(usize, i64)]) -> Vec<Element> {
    w.iter().map(|&(i, e)| g.power(&g.gen(i), e)).collect()
}

/// The image of `u ∧ v` in `Q`, short-circuiting to 0 when `[u, v] = 1`.
pub fn wedge_expand(g: &PcGroup, u: &Word, v: &Word) -> Result<WedgeVector, WedgeError> {
    check_preconditions(g, 4)?;
    let mut ex = Expander::new(g)?;
    let (u, v) = (g.collect(u)?, g.collect(v)?);
    if g.commutator(&u, &v).is_identity() {
        return Ok(WedgeVector(ex.basis().zero()));
    }
    let raw = ex.expand(&u, &v)?;
    Ok(WedgeVector(ex.reduced(raw)))
}

/// Relations from every defining relator against every generator, in
/// both slots.
fn relator_relations(ex: &mut Expander) -> Result<Vec<Vec<i64>>, WedgeError> {
    let g = ex.group();
    let k = g.ngens();
    let pres = g.presentation();
    let mut pairs: Vec<(Vec<Element>, Vec<Element>)> = Vec::new();
    for i in 0..k {
        let lhs = vec![g.gen(i); pres.relative_orders()[i] as usize];
        pairs.push((lhs, factors_of(g, pres.power_rhs(i))));
    }
    for j in 1..k {
        for i in 0..j {
            let mut rhs = vec![g.gen(i), g.gen(j)];
            rhs.extend(factors_of(g, pres.comm_rhs(j, i)));
            pairs.push((vec![g.gen(j), g.gen(i)], rhs));
        }
    }
    let gens: Vec<Vec<Element>> = (0..k).map(|i| vec![g.gen(i)]).collect();
    let mut out = Vec::new();
    for j in 1..k {
        for i in 0..j {
            if pres.comm_rhs(j, i).is_empty() {
                out.push(ex.commuting_relation(RelationKind::Commuting, &gens[j], &gens[i])?);
            }
        }
    }
    for (lhs, rhs) in &pairs {
        for gk in &gens {
            out.push(ex.relator_relation((lhs, gk), (rhs, gk))?);
            out.push(ex.relator_relation((gk, lhs), (gk, rhs))?);
        }
    }
    Ok(out)
}

/// Coordinates of `G'` on the images `[g_i, g_j]` of the symbols; the
/// relation lattice is `ker ε`.
fn evaluation(g: &PcGroup, basis: &WedgeBasis) -> AbelianCoords<Element> {
    let gens: Vec<Element> = basis
        .pairs()
        .iter()
        .map(|&(i, j)| g.commutator(&g.gen(i), &g.gen(j)))
        .collect();
    AbelianCoords::new(gens, g.identity(), |a, b| g.multiply(a, b))
}

fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Details of an exact class-2 computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Class2Analysis {
    /// `B̃0(G) = ker ε / L`.
    pub b0_dual: AbelianInvariants,
    /// `Z^W / L`, which is `Q` itself.
    pub wedge_quotient: AbelianInvariants,
    pub derived_order: u128,
    pub relator_relations: usize,
    pub commuting_relations: usize,
}

/// Exact `B̃0(G)` for a group of class at most 2.
pub fn b0_class2(g: &PcGroup) -> Result<AbelianInvariants, WedgeError> {
    Ok(class2_analysis(g, DEFAULT_ENUM_CAP)?.b0_dual)
}

/// [`b0_class2`] with its intermediate data; `cap` bounds `|G / Z(G)|`.
pub fn class2_analysis(g: &PcGroup, cap: usize) -> Result<Class2Analysis, WedgeError> {
    let class = check_preconditions(g, 2)?;
    debug_assert!(class <= 2);
    let mut ex = Expander::new(g)?;
    let basis = ex.basis().clone();
    let w = basis.len();
    let k = g.ngens();
    let rel_rows = relator_relations(&mut ex)?;
    let coords = evaluation(g, &basis);
    let derived_order = coords.order() as u128;
    let mut rel_lat = IntLattice::new(w);
    for r in &rel_rows {
        rel_lat.insert(to_big(r));
    }
    let (rel_quot, free) = cokernel(&rel_lat.to_matrix())?;
    if free > 0 {
        return Err(LatticeError::InfiniteQuotient(free).into());
    }
    if rel_quot.is_trivial() {
        return Ok(Class2Analysis {
            b0_dual: AbelianInvariants::trivial(),
            wedge_quotient: AbelianInvariants::trivial(),
            derived_order,
            relator_relations: rel_rows.len(),
            commuting_relations: 0,
        });
    }
    // the exponent e of Z^W / L_rel satisfies e Z^W ⊆ L_rel ⊆ L ⊆ ker ε,
    // so the whole computation can be done in (Z/e)^W
    let e = rel_quot.factors().last().copied().unwrap_or(1);
    let bil: Vec<Vec<Vec<i64>>> = (0..k)
        .map(|i| (0..k).map(|j| ex.expand(&g.gen(i), &g.gen(j))).collect())
        .collect::<Result<_, _>>()?;
    let reduce =
        |v: &[i64]| -> Vec<u64> { v.iter().map(|&x| x.rem_euclid(e as i64) as u64).collect() };
    let pairing = |a: &[u64], b: &[u64]| -> Vec<u64> {
        let mut acc = vec![0i64; w];
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                let c = (ai % e) * (bj % e) % e;
                if c != 0 {
                    expand::add_into(&mut acc, &bil[i][j], c as i64);
                }
            }
        }
        reduce(&acc)
    };
    let centralizers = Centralizers::new(g, &coords, e);
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    for z in centralizers.center() {
        for i in 0..k {
            seen.insert(pairing(&z, &unit_vec(k, i)));
        }
    }
    for a in centralizers.quotient_by_center(cap)? {
        for b in centralizers.centralizer(&a) {
            seen.insert(pairing(&a, &b));
        }
    }
    seen.remove(&vec![0u64; w]);
    let mut rows: Vec<Vec<u64>> = seen.into_iter().collect();
    rows.sort();
    let commuting_relations = rows.len();
    let mut howell = HowellBasis::new(e, w);
    for r in rel_lat.basis() {
        let v: Vec<i64> = r
            .iter()
            .map(|x| x.to_i64().expect("relator coefficients are small"))
            .collect();
        howell.insert(&reduce(&v));
    }
    for r in &rows {
        howell.insert(r);
    }
    let lrows = howell.rows();
    let ker: Vec<Vec<u64>> = coords
        .relations()
        .iter()
        .map(|r| {
            reduce(
                &r.iter()
                    .map(|x| x.to_i64().expect("small kernel basis"))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let b0_dual = quotient_invariants_mod(&ker, &lrows, w, e);
    let wedge_quotient = crate::zlattice::cokernel_mod(&lrows, w, e);
    Ok(Class2Analysis {
        b0_dual,
        wedge_quotient,
        derived_order,
        relator_relations: rel_rows.len(),
        commuting_relations,
    })
}

fn unit_vec(k: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0u64; k];
    v[i] = 1;
    v
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Commutation in a class-2 group through exponent vectors. With
/// `x^a = g_1^a_1 ... g_k^a_k`, the map `a -> x^a Z(G)` is a homomorphism
/// and `[x^a, x^b] = Π [g_i, g_j]^(a_i b_j)`, so centralizers are kernels
/// of linear maps into `G'`. Vectors are taken mod `n`, a multiple of both
/// the exponent of `G'` and the modulus of the caller.
struct Centralizers {
    k: usize,
    n: u64,
    /// `c[i][j]`: coordinates of `[g_i, g_j]` on the generators of `G'`.
    c: Vec<Vec<Vec<u64>>>,
    /// Relations among the generators of `G'`, mod `n`.
    rel: Vec<Vec<u64>>,
    rel_basis: HowellBasis,
}

impl Centralizers {
    fn new(g: &PcGroup, coords: &AbelianCoords<Element>, modulus: u64) -> Self {
        let k = g.ngens();
        let exponent = coords.invariants().factors().last().copied().unwrap_or(1);
        let n = modulus / gcd(modulus, exponent) * exponent;
        let c = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        let x = g.commutator(&g.gen(i), &g.gen(j));
                        coords
                            .coords(&x)
                            .expect("commutators lie in G'")
                            .iter()
                            .map(|&v| v.rem_euclid(n as i64) as u64)
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let width = coords.gens().len();
        let rel: Vec<Vec<u64>> = coords
            .relations()
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.to_i64().expect("small relation").rem_euclid(n as i64) as u64)
                    .collect()
            })
            .collect();
        let mut rel_basis = HowellBasis::new(n, width.max(1));
        for r in &rel {
            if !r.is_empty() {
                rel_basis.insert(r);
            }
        }
        Self {
            k,
            n,
            c,
            rel,
            rel_basis,
        }
    }

    fn width(&self) -> usize {
        self.rel_basis.width()
    }

    /// `[x^a, g_j]` in coordinates, reduced to a canonical representative.
    fn image(&self, a: &[u64]) -> Vec<u64> {
        let w = self.width();
        let mut out = Vec::with_capacity(w * self.k);
        for j in 0..self.k {
            let mut v = vec![0u64; w];
            for (i, &ai) in a.iter().enumerate() {
                for (t, &x) in self.c[i][j].iter().enumerate() {
                    v[t] = (v[t] + ai * x) % self.n;
                }
            }
            out.extend(self.rel_basis.reduce(&v));
        }
        out
    }

    /// Generators of `{b : Σ_j b_j vecs[j] ∈ <rel>}` for vectors split
    /// into blocks of the width of `G'`.
    fn solve(&self, vecs: &[Vec<u64>], blocks: usize) -> Vec<Vec<u64>> {
        let w = self.width();
        let m = vecs.len();
        let extra = self.rel.len() * blocks;
        let mut eqs = vec![vec![0u64; m + extra]; w * blocks];
        for (j, v) in vecs.iter().enumerate() {
            for (row, &x) in v.iter().enumerate() {
                eqs[row][j] = x;
            }
        }
        for b in 0..blocks {
            for (s, r) in self.rel.iter().enumerate() {
                for (t, &x) in r.iter().enumerate() {
                    eqs[b * w + t][m + b * self.rel.len() + s] = x;
                }
            }
        }
        kernel_mod(&eqs, m + extra, self.n)
            .into_iter()
            .map(|v| v[..m].to_vec())
            .collect()
    }

    /// Generators of the preimage of `Z(G)`.
    fn center(&self) -> Vec<Vec<u64>> {
        let vecs: Vec<Vec<u64>> = (0..self.k)
            .map(|i| (0..self.k).flat_map(|j| self.c[i][j].clone()).collect())
            .collect();
        self.solve(&vecs, self.k)
    }

    /// Generators of the preimage of the centralizer of `x^a`.
    fn centralizer(&self, a: &[u64]) -> Vec<Vec<u64>> {
        let w = self.width();
        let vecs: Vec<Vec<u64>> = (0..self.k)
            .map(|j| {
                let mut v = vec![0u64; w];
                for (i, &ai) in a.iter().enumerate() {
                    for (t, &x) in self.c[i][j].iter().enumerate() {
                        v[t] = (v[t] + ai * x) % self.n;
                    }
                }
                v
            })
            .collect();
        self.solve(&vecs, 1)
    }

    /// One exponent vector per element of `G / Z(G)`, by breadth-first
    /// search on the images; fails when there are more than `cap`.
    fn quotient_by_center(&self, cap: usize) -> Result<Vec<Vec<u64>>, WedgeError> {
        let zero = vec![0u64; self.k];
        let mut seen: HashSet<Vec<u64>> = HashSet::from([self.image(&zero)]);
        let mut reps = vec![zero];
        let mut head = 0;
        while head < reps.len() {
            let a = reps[head].clone();
            head += 1;
            for j in 0..self.k {
                let mut b = a.clone();
                b[j] = (b[j] + 1) % self.n;
                if seen.insert(self.image(&b)) {
                    if reps.len() >= cap {
                        return Err(GroupError::CapExceeded {
                            required: reps.len() as u128 + 1,
                            cap,
                        }
                        .into());
                    }
                    reps.push(b);
                }
            }
        }
        Ok(reps)
    }
}

/// A sound upper bound: `B̃0(G)` is a quotient of `invariants`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperBound {
    pub invariants: AbelianInvariants,
    pub tag: String,
    pub relations: usize,
    #[serde(skip)]
    pub trace: Vec<TraceStep>,
}

pub const SOUND_UPPER_BOUND: &str = "sound-upper-bound";

/// `ker ε / L` for `L` spanned by relator expansions and the expansions of
/// the witness pairs along their written factorisations.
pub fn b0_upper_bound(g: &PcGroup, witnesses: &[(Word, Word)]) -> Result<UpperBound, WedgeError> {
    check_preconditions(g, 4)?;
    let mut checked = Vec::with_capacity(witnesses.len());
    for (index, (u, v)) in witnesses.iter().enumerate() {
        let (eu, ev) = (g.collect(u)?, g.collect(v)?);
        let c = g.commutator(&eu, &ev);
        if !c.is_identity() {
            let pres = g.presentation();
            return Err(WedgeError::WitnessRejected {
                index,
                u: pres.format_word(u),
                v: pres.format_word(v),
                commutator: g.format(&c),
            });
        }
        checked.push((factors_of(g, u), factors_of(g, v)));
    }
    let mut ex = Expander::new(g)?;
    let basis = ex.basis().clone();
    let mut lat = IntLattice::new(basis.len());
    let mut count = 0;
    for r in relator_relations(&mut ex)? {
        lat.insert(to_big(&r));
        count += 1;
    }
    for (a, b) in &checked {
        lat.insert(to_big(&ex.commuting_relation(
            RelationKind::Witness,
            a,
            b,
        )?));
        count += 1;
    }
    let coords = evaluation(g, &basis);
    let ker = coords.relations();
    let invariants = if basis.is_empty() {
        AbelianInvariants::trivial()
    } else {
        let gens = IntMatrix::from_big_rows(basis.len(), ker)?;
        let rels = IntMatrix::from_big_rows(basis.len(), lat.basis())?;
        subquotient_invariants(&gens, &rels, &vec![0; basis.len()])?
    };
    Ok(UpperBound {
        invariants,
        tag: SOUND_UPPER_BOUND.into(),
        relations: count,
        trace: ex.trace(),
    })
}

/// Result of [`search_witnesses`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessSearch {
    pub witnesses: Vec<(Word, Word)>,
    pub bound: AbelianInvariants,
    pub pairs_tried: usize,
}

/// Greedy search for witnesses among commuting pairs of elements whose
/// normal forms have at most `max_syllables` syllables. A pair is kept when
/// its relation shrinks the current bound; the search stops at the trivial
/// bound or after `budget` commuting pairs.
pub fn search_witnesses(
    g: &PcGroup,
    max_syllables: usize,
    budget: usize,
) -> Result<WitnessSearch, WedgeError> {
    check_preconditions(g, 4)?;
    let mut ex = Expander::new(g)?;
    let basis = ex.basis().clone();
    let mut lat = IntLattice::new(basis.len());
    for r in relator_relations(&mut ex)? {
        lat.insert(to_big(&r));
    }
    let ker = evaluation(g, &basis).relations();
    let bound_of = |lat: &IntLattice| -> Result<AbelianInvariants, WedgeError> {
        if basis.is_empty() {
            return Ok(AbelianInvariants::trivial());
        }
        let gens = IntMatrix::from_big_rows(basis.len(), ker.clone())?;
        let rels = IntMatrix::from_big_rows(basis.len(), lat.basis())?;
        Ok(subquotient_invariants(&gens, &rels, &vec![0; basis.len()])?)
    };
    let mut bound = bound_of(&lat)?;
    let mut witnesses = Vec::new();
    let mut tried = 0;
    let candidates = short_elements(g, max_syllables);
    'outer: for (a, x) in candidates.iter().enumerate() {
        for y in &candidates[a + 1..] {
            if bound.is_trivial() || tried >= budget {
                break 'outer;
            }
            if !g.commutator(x, y).is_identity() {
                continue;
            }
            tried += 1;
            let (fx, fy) = (factors_of(g, &x.to_word()), factors_of(g, &y.to_word()));
            let (r, _) = ex.expand_seq(&fx, &fy)?;
            let r = to_big(&r);
            if lat.contains(&r) {
                continue;
            }
            let mut next = lat.clone();
            next.insert(r);
            let nb = bound_of(&next)?;
            if nb.order() < bound.order() {
                lat = next;
                bound = nb;
                witnesses.push((x.to_word(), y.to_word()));
            }
        }
    }
    Ok(WitnessSearch {
        witnesses,
        bound,
        pairs_tried: tried,
    })
}

/// Non-identity elements with at most `s` nonzero exponents, fewest
/// syllables first.
fn short_elements(g: &PcGroup, s: usize) -> Vec<Element> {
    let orders = g.relative_orders().to_vec();
    let mut out = Vec::new();
    let mut cur = vec![0u32; orders.len()];
    fn rec(pos: usize, left: usize, orders: &[u64], cur: &mut Vec<u32>, out: &mut Vec<Element>) {
        if pos == orders.len() {
            if cur.iter().any(|&e| e != 0) {
                out.push(Element(cur.clone()));
            }
            return;
        }
        rec(pos + 1, left, orders, cur, out);
        if left > 0 {
            for e in 1..orders[pos] as u32 {
                cur[pos] = e;
                rec(pos + 1, left - 1, orders, cur, out);
            }
            cur[pos] = 0;
        }
    }
    rec(0, s, &orders, &mut cur, &mut out);
    out.sort_by_key(|e| {
        (
            e.0.iter().filter(|&&x| x != 0).count(),
            e.0.iter().map(|&x| x as u64).sum::<u64>(),
        )
    });
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "Certified-Trivial")]
    CertifiedTrivial,
    #[serde(rename = "Inconclusive")]
    Inconclusive,
    #[serde(rename = "Rejected")]
    Rejected,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateOutcome {
    pub verdict: Verdict,
    /// The upper bound, absent when the certificate was rejected.
    pub bound: Option<AbelianInvariants>,
    pub reason: Option<String>,
    #[serde(skip)]
    pub trace: Vec<TraceStep>,
}

/// Runs [`b0_upper_bound`] on the certificate's witnesses.
pub fn verify_certificate(
    g: &PcGroup,
    cert: &Certificate,
    vars: &Bindings,
) -> Result<CertificateOutcome, WedgeError> {
    let words = cert.witness_words(g, vars)?;
    match b0_upper_bound(g, &words) {
        Ok(ub) => Ok(CertificateOutcome {
            verdict: if ub.invariants.is_trivial() {
                Verdict::CertifiedTrivial
            } else {
                Verdict::Inconclusive
            },
            reason: (!ub.invariants.is_trivial())
                .then(|| format!("upper bound {} is not trivial", ub.invariants)),
            bound: Some(ub.invariants),
            trace: ub.trace,
        }),
        Err(e @ WedgeError::WitnessRejected { .. }) => Ok(CertificateOutcome {
            verdict: Verdict::Rejected,
            bound: None,
            reason: Some(e.to_string()),
            trace: vec![],
        }),
        Err(e) => Err(e),
    }
}
