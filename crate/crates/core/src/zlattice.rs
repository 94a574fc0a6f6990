//! Exact integer and modular linear algebra.
//!
//! Two independent routes to the invariant factors of a finite abelian group
//! live here: an unbounded-integer Smith normal form ([`smith_normal_form`],
//! [`subquotient_invariants`]) and a Howell-form route over `Z/n`
//! ([`HowellBasis`], [`kernel_mod`], [`quotient_invariants_mod`]) used by the
//! cocycle oracle, where every module is killed by a fixed modulus.
//!
//! Vectors are rows throughout: a generating set is a matrix whose rows are
//! the generators.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected} columns, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("quotient is infinite (free rank {0})")]
    InfiniteQuotient(usize),
    #[error("invariant factor {0} does not fit in 64 bits")]
    Overflow(String),
}

/// A finite abelian group as invariant factors `d_1 | d_2 | ... | d_k`, each
/// at least 2. The empty list is the trivial group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AbelianInvariants {
    factors: Vec<u64>,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        Self {
            factors: Vec::new(),
        }
    }

    /// Normalizes an arbitrary list of cyclic orders (`Z/a_1 + ... + Z/a_k`)
    /// into invariant factors. Orders 0 are not allowed; orders 1 vanish.
    pub fn from_cyclic_orders<I: IntoIterator<Item = u64>>(orders: I) -> Self {
        // prime -> exponents of the prime-power parts
        let mut parts: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for mut a in orders {
            assert!(a > 0, "cyclic order 0 is not a finite group");
            let mut p = 2u64;
            while p * p <= a {
                if a % p == 0 {
                    let mut e = 0;
                    while a % p == 0 {
                        a /= p;
                        e += 1;
                    }
                    parts.entry(p).or_default().push(e);
                }
                p += 1;
            }
            if a > 1 {
                parts.entry(a).or_default().push(1);
            }
        }
        let len = parts.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; len];
        for (p, mut exps) in parts {
            exps.sort_unstable();
            // largest exponents go to the largest factors
            let offset = len - exps.len();
            for (i, e) in exps.into_iter().enumerate() {
                factors[offset + i] *= p.pow(e);
            }
        }
        Self { factors }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn order(&self) -> u128 {
        self.factors.iter().map(|&d| d as u128).product()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::from_cyclic_orders(self.factors.iter().chain(other.factors.iter()).copied())
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Dense row-major matrix of unbounded integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Copy>(
        cols: usize,
        rows: &[Vec<T>],
    ) -> Result<Self, LatticeError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LatticeError::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r.iter().map(|&x| x.into()));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_big_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Result<Self, LatticeError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            if r.len() != cols {
                return Err(LatticeError::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(Self {
            rows: n,
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Determinant of a square matrix by fraction-free elimination (Bareiss).
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * k;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * k;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = v;
        }
    }
}

/// `u * m * v == d` with `d` diagonal, diagonal entries non-negative and
/// forming a divisibility chain (zeros last); `u`, `v` unimodular.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero magnitude in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = d.get(i, j);
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = d.get(i, t).div_floor(d.get(t, t));
                let nq = -q;
                d.add_row(i, t, &nq);
                u.add_row(i, t, &nq);
                if !d.get(i, t).is_zero() {
                    d.swap_rows(t, i);
                    u.swap_rows(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = d.get(t, j).div_floor(d.get(t, t));
                let nq = -q;
                d.add_col(j, t, &nq);
                v.add_col(j, t, &nq);
                if !d.get(t, j).is_zero() {
                    d.swap_cols(t, j);
                    v.swap_cols(t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility: pull a non-multiple into the pivot row
            let p = d.get(t, t).clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(d.get(i, j) % &p).is_zero()));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    Snf { u, d, v }
}

/// Cokernel invariants of the row lattice of `m` in `Z^cols`: returns
/// `(finite invariant factors, free rank)`.
pub fn cokernel(m: &IntMatrix) -> Result<(AbelianInvariants, usize), LatticeError> {
    let snf = smith_normal_form(m);
    let diag = snf.diagonal();
    let rank = diag.iter().filter(|x| !x.is_zero()).count();
    let mut orders = Vec::new();
    for x in diag.iter().filter(|x| !x.is_zero()) {
        orders.push(
            x.to_u64()
                .ok_or_else(|| LatticeError::Overflow(x.to_string()))?,
        );
    }
    Ok((AbelianInvariants::from_cyclic_orders(orders), m.cols - rank))
}

/// Incrementally maintained row-echelon basis of a sublattice of `Z^width`.
#[derive(Clone, Debug)]
pub struct IntLattice {
    width: usize,
    // pivot column -> row with positive pivot at that column
    rows: BTreeMap<usize, Vec<BigInt>>,
}

impl IntLattice {
    pub fn new(width: usize) -> Self {
        Self {
            width,
            rows: BTreeMap::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, mut v: Vec<BigInt>) {
        assert_eq!(v.len(), self.width);
        let mut c = 0;
        while c < self.width {
            if v[c].is_zero() {
                c += 1;
                continue;
            }
            match self.rows.get_mut(&c) {
                None => {
                    if v[c].is_negative() {
                        v.iter_mut().for_each(|x| *x = -std::mem::take(x));
                    }
                    self.rows.insert(c, v);
                    self.reduce_above(c);
                    return;
                }
                Some(r) => {
                    let eg = r[c].extended_gcd(&v[c]);
                    let (g, s, t) = (eg.gcd, eg.x, eg.y);
                    let rc = &r[c] / &g;
                    let vc = &v[c] / &g;
                    let mut new_r = Vec::with_capacity(self.width);
                    let mut new_v = Vec::with_capacity(self.width);
                    for j in 0..self.width {
                        new_r.push(&s * &r[j] + &t * &v[j]);
                        new_v.push(&vc * &r[j] - &rc * &v[j]);
                    }
                    *r = new_r;
                    v = new_v;
                    self.reduce_above(c);
                    c += 1;
                }
            }
        }
    }

    /// Reduces entries in pivot column `c` of earlier rows modulo the pivot.
    fn reduce_above(&mut self, c: usize) {
        let pivot_row = self.rows[&c].clone();
        let p = pivot_row[c].clone();
        for (_, r) in self.rows.range_mut(..c) {
            let q = r[c].div_floor(&p);
            if !q.is_zero() {
                for j in c..self.width {
                    let x = &q * &pivot_row[j];
                    r[j] -= x;
                }
            }
        }
    }

    pub fn basis(&self) -> Vec<Vec<BigInt>> {
        self.rows.values().cloned().collect()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let mut v = v.to_vec();
        for (&c, r) in &self.rows {
            for x in v.iter().take(c) {
                if !x.is_zero() {
                    return false;
                }
            }
            let (q, rem) = v[c].div_rem(&r[c]);
            if !rem.is_zero() {
                return false;
            }
            for j in c..self.width {
                let x = &q * &r[j];
                v[j] -= x;
            }
        }
        v.iter().all(Zero::is_zero)
    }

    pub fn to_matrix(&self) -> IntMatrix {
        IntMatrix::from_big_rows(self.width, self.basis()).expect("rows have lattice width")
    }
}

/// Invariant factors of `(<gens> + <rels> + A) / (<rels> + A)` inside the
/// ambient group `Z/a_1 x ... x Z/a_m`, where `A` is the lattice of ambient
/// orders. An ambient order of 0 means a free `Z` coordinate.
pub fn subquotient_invariants(
    gens: &IntMatrix,
    rels: &IntMatrix,
    ambient_orders: &[u64],
) -> Result<AbelianInvariants, LatticeError> {
    let m = ambient_orders.len();
    for mat in [gens, rels] {
        if mat.rows > 0 && mat.cols != m {
            return Err(LatticeError::DimensionMismatch {
                expected: m,
                found: mat.cols,
            });
        }
    }
    let k = gens.rows;
    if k == 0 {
        return Ok(AbelianInvariants::trivial());
    }
    // relation lattice R' = rels + ambient orders, reduced to echelon form
    let mut rel = IntLattice::new(m);
    for i in 0..rels.rows {
        rel.insert(rels.row(i).to_vec());
    }
    for (j, &a) in ambient_orders.iter().enumerate() {
        if a != 0 {
            let mut v = vec![BigInt::zero(); m];
            v[j] = BigInt::from(a);
            rel.insert(v);
        }
    }
    // stacked [gens; R'] ; its left kernel projected to the first k
    // coordinates is the lattice of gens-combinations landing in R'
    let rbasis = rel.basis();
    let mut stacked = Vec::with_capacity(k + rbasis.len());
    for i in 0..k {
        stacked.push(gens.row(i).to_vec());
    }
    stacked.extend(rbasis);
    let total = stacked.len();
    let st = IntMatrix::from_big_rows(m, stacked)?;
    let snf = smith_normal_form(&st);
    let rank = snf.rank();
    let mut lambda = IntLattice::new(k);
    for i in rank..total {
        lambda.insert(snf.u.row(i)[..k].to_vec());
    }
    let (inv, free) = cokernel(&lambda.to_matrix())?;
    if free > 0 {
        return Err(LatticeError::InfiniteQuotient(free));
    }
    Ok(inv)
}

// ---------------------------------------------------------------------------
// Arithmetic over Z/n
// ---------------------------------------------------------------------------

fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// `(g, s, t)` with `s*a + t*b = g = gcd(a, b)`.
fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// A unit `u` mod `n` with `u * a = gcd(a, n) (mod n)`.
fn normalizing_unit(a: u64, n: u64) -> u64 {
    let g = gcd_u64(a, n);
    if g == n {
        return 1;
    }
    let m = n / g;
    let (_, s, _) = egcd((a / g) as i128, m as i128);
    let mut u = s.rem_euclid(m as i128) as u64;
    while gcd_u64(u, n) != 1 {
        u += m;
    }
    u % n
}

#[inline]
fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// Howell basis of a submodule of `(Z/n)^width`, maintained incrementally.
///
/// Rows are stored by pivot column; each pivot is a proper divisor of `n`
/// and `(n / pivot) * row` always lies in the span of rows with later pivots,
/// so the span of rows whose leading `c` entries vanish is exactly the set of
/// module elements whose leading `c` entries vanish.
#[derive(Clone, Debug)]
pub struct HowellBasis {
    n: u64,
    width: usize,
    rows: Vec<Option<Vec<u64>>>,
}

impl HowellBasis {
    pub fn new(n: u64, width: usize) -> Self {
        assert!(n >= 2, "modulus must be at least 2");
        Self {
            n,
            width,
            rows: vec![None; width],
        }
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn insert(&mut self, v: &[u64]) {
        assert_eq!(v.len(), self.width);
        let n = self.n;
        let mut queue: Vec<Vec<u64>> = vec![v.iter().map(|&x| x % n).collect()];
        while let Some(mut v) = queue.pop() {
            let mut c = 0;
            while c < self.width {
                if v[c] == 0 {
                    c += 1;
                    continue;
                }
                match &mut self.rows[c] {
                    None => {
                        let u = normalizing_unit(v[c], n);
                        if u != 1 {
                            v.iter_mut().for_each(|x| *x = mulmod(*x, u, n));
                        }
                        let p = v[c];
                        let closure: Vec<u64> = v.iter().map(|&x| mulmod(x, n / p, n)).collect();
                        if closure.iter().any(|&x| x != 0) {
                            queue.push(closure);
                        }
                        self.rows[c] = Some(v);
                        break;
                    }
                    Some(r) => {
                        let p = r[c];
                        if v[c] % p == 0 {
                            let q = n - (v[c] / p) % n;
                            for j in c..self.width {
                                if r[j] != 0 {
                                    v[j] = (v[j] + mulmod(q, r[j], n)) % n;
                                }
                            }
                            c += 1;
                            continue;
                        }
                        // combine two rows into a smaller pivot and a remainder
                        let (g, s, t) = egcd(p as i128, v[c] as i128);
                        let rc = (p as i128 / g).rem_euclid(n as i128) as u64;
                        let vc = (v[c] as i128 / g).rem_euclid(n as i128) as u64;
                        let s = s.rem_euclid(n as i128) as u64;
                        let t = t.rem_euclid(n as i128) as u64;
                        let mut new_r = vec![0u64; self.width];
                        let mut new_v = vec![0u64; self.width];
                        for j in c..self.width {
                            new_r[j] = (mulmod(s, r[j], n) + mulmod(t, v[j], n)) % n;
                            new_v[j] = (mulmod(vc, r[j], n) + n - mulmod(rc, v[j], n)) % n;
                        }
                        // span{r, v} = span{new_r, new_v}; both are re-inserted so
                        // the new pivot gets normalized and its closure added
                        self.rows[c] = None;
                        queue.push(new_v);
                        queue.push(new_r);
                        break;
                    }
                }
            }
        }
    }

    /// Reduces `v` against the basis; the result is zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let n = self.n;
        let mut v: Vec<u64> = v.iter().map(|&x| x % n).collect();
        for c in 0..self.width {
            if v[c] == 0 {
                continue;
            }
            let Some(r) = &self.rows[c] else { return v };
            let p = r[c];
            if !v[c].is_multiple_of(p) {
                return v;
            }
            let q = n - (v[c] / p) % n;
            for j in c..self.width {
                if r[j] != 0 {
                    v[j] = (v[j] + mulmod(q, r[j], n)) % n;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Basis rows in pivot order, with entries above each pivot reduced.
    pub fn rows(&self) -> Vec<Vec<u64>> {
        let n = self.n;
        let mut out: Vec<(usize, Vec<u64>)> = self
            .rows
            .iter()
            .enumerate()
            .filter_map(|(c, r)| r.clone().map(|r| (c, r)))
            .collect();
        for i in 0..out.len() {
            let (c, pivot_row) = (out[i].0, out[i].1.clone());
            let p = pivot_row[c];
            for (_, r) in out.iter_mut().take(i) {
                let q = r[c] / p;
                if q != 0 {
                    for j in c..self.width {
                        r[j] = (r[j] + n - mulmod(q, pivot_row[j], n)) % n;
                    }
                }
            }
        }
        out.into_iter().map(|(_, r)| r).collect()
    }

    pub fn pivots(&self) -> Vec<(usize, u64)> {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(c, r)| r.as_ref().map(|r| (c, r[c])))
            .collect()
    }

    /// Number of elements of the spanned submodule.
    pub fn cardinality(&self) -> u128 {
        self.pivots()
            .iter()
            .map(|&(_, p)| (self.n / p) as u128)
            .product()
    }
}

/// Generating set of `{x in (Z/n)^cols : M x = 0}` where `M` is given by rows.
pub fn kernel_mod(rows: &[Vec<u64>], cols: usize, n: u64) -> Vec<Vec<u64>> {
    // same row span, same solution set
    let mut h = HowellBasis::new(n, cols);
    for r in rows {
        h.insert(r);
    }
    let reduced = h.rows();
    let r = reduced.len();
    // rows of [M^T | I]; the Howell property yields the whole kernel
    let mut aug = HowellBasis::new(n, r + cols);
    for j in 0..cols {
        let mut row = vec![0u64; r + cols];
        for (i, rr) in reduced.iter().enumerate() {
            row[i] = rr[j];
        }
        row[r + j] = 1;
        aug.insert(&row);
    }
    aug.rows()
        .into_iter()
        .filter(|row| row[..r].iter().all(|&x| x == 0))
        .map(|row| row[r..].to_vec())
        .collect()
}

/// Invariant factors of `(Z/n)^width / <rows>`.
pub fn cokernel_mod(rows: &[Vec<u64>], width: usize, n: u64) -> AbelianInvariants {
    // Z^width / (rows + nZ^width), echelonized before the Smith form
    let mut lat = IntLattice::new(width);
    for j in 0..width {
        let mut v = vec![BigInt::zero(); width];
        v[j] = BigInt::from(n);
        lat.insert(v);
    }
    for r in rows {
        lat.insert(r.iter().map(|&x| BigInt::from(x % n)).collect());
    }
    let (inv, free) = cokernel(&lat.to_matrix()).expect("entries bounded by the modulus");
    debug_assert_eq!(free, 0);
    inv
}

/// Invariant factors of `(<gens> + <rels>) / <rels>` inside `(Z/n)^width`.
pub fn quotient_invariants_mod(
    gens: &[Vec<u64>],
    rels: &[Vec<u64>],
    width: usize,
    n: u64,
) -> AbelianInvariants {
    let k = gens.len();
    if k == 0 {
        return AbelianInvariants::trivial();
    }
    // coefficient vectors (lambda, mu) with sum lambda_i g_i + sum mu_j r_j = 0
    let mut cols_as_rows: Vec<Vec<u64>> = vec![vec![0u64; k + rels.len()]; width];
    for (i, g) in gens.iter().chain(rels.iter()).enumerate() {
        assert_eq!(g.len(), width);
        for (c, &x) in g.iter().enumerate() {
            cols_as_rows[c][i] = x % n;
        }
    }
    let ker = kernel_mod(&cols_as_rows, k + rels.len(), n);
    let lambda: Vec<Vec<u64>> = ker.into_iter().map(|v| v[..k].to_vec()).collect();
    cokernel_mod(&lambda, k, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(m: &IntMatrix) -> Vec<i64> {
        smith_normal_form(m)
            .diagonal()
            .iter()
            .map(|x| x.to_i64().unwrap())
            .collect()
    }

    #[test]
    fn invariants_normalize() {
        let a = AbelianInvariants::from_cyclic_orders([6, 4, 1]);
        assert_eq!(a.factors(), &[2, 12]);
        assert_eq!(a.order(), 24);
        assert!(AbelianInvariants::from_cyclic_orders([1, 1]).is_trivial());
        assert_eq!(a.to_string(), "Z/2 + Z/12");
    }

    #[test]
    fn snf_small_examples() {
        let m = IntMatrix::from_rows(2, &[vec![2i64, 0], vec![0, 4]]).unwrap();
        assert_eq!(diag(&m), vec![2, 4]);
        let m = IntMatrix::from_rows(2, &[vec![2i64, 1], vec![0, 2]]).unwrap();
        assert_eq!(diag(&m), vec![1, 4]);
        let z = IntMatrix::zeros(3, 3);
        assert_eq!(diag(&z), vec![0, 0, 0]);
        let (inv, free) = cokernel(&z).unwrap();
        assert!(inv.is_trivial());
        assert_eq!(free, 3);
    }

    #[test]
    fn snf_transforms_are_unimodular() {
        let m = IntMatrix::from_rows(
            3,
            &[
                vec![6i64, 4, 2],
                vec![3, 9, 12],
                vec![-5, 7, 1],
                vec![2, 2, 2],
            ],
        )
        .unwrap();
        let s = smith_normal_form(&m);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        assert!(s.d.is_diagonal());
        assert_eq!(s.u.determinant().abs(), BigInt::one());
        assert_eq!(s.v.determinant().abs(), BigInt::one());
    }

    #[test]
    fn empty_matrix_snf() {
        let m = IntMatrix::zeros(0, 0);
        let s = smith_normal_form(&m);
        assert!(s.diagonal().is_empty());
    }

    #[test]
    fn subquotient_examples() {
        let g = IntMatrix::from_rows(1, &[vec![1i64]]).unwrap();
        let r = IntMatrix::from_rows(1, &[vec![2i64]]).unwrap();
        assert_eq!(
            subquotient_invariants(&g, &r, &[4]).unwrap().factors(),
            &[2]
        );
        let g = IntMatrix::from_rows(2, &[vec![1i64, 1]]).unwrap();
        let r = IntMatrix::zeros(0, 2);
        assert_eq!(
            subquotient_invariants(&g, &r, &[2, 2]).unwrap().factors(),
            &[2]
        );
        let err = subquotient_invariants(&g, &r, &[0, 0]).unwrap_err();
        assert_eq!(err, LatticeError::InfiniteQuotient(1));
        let bad = IntMatrix::from_rows(3, &[vec![1i64, 1, 1]]).unwrap();
        assert!(matches!(
            subquotient_invariants(&bad, &r, &[2, 2]),
            Err(LatticeError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn kernel_mod_examples() {
        let k = kernel_mod(&[vec![2]], 1, 4);
        let mut h = HowellBasis::new(4, 1);
        for v in &k {
            h.insert(v);
        }
        assert_eq!(h.rows(), vec![vec![2]]);
        let id: Vec<Vec<u64>> = (0..3)
            .map(|i| (0..3).map(|j| (i == j) as u64).collect())
            .collect();
        let k = kernel_mod(&id, 3, 12);
        assert!(k.iter().all(|v| v.iter().all(|&x| x == 0)));
    }

    #[test]
    fn howell_cardinality() {
        let mut h = HowellBasis::new(12, 2);
        h.insert(&[4, 6]);
        // span of (4,6) in (Z/12)^2 has order 6: multiples k*(4,6), k=0..5
        assert_eq!(h.cardinality(), 6);
        assert!(h.contains(&[0, 6]));
        assert!(!h.contains(&[0, 3]));
    }

    #[test]
    fn cokernel_mod_matches_integer_route() {
        let rows = vec![vec![2u64, 4, 0], vec![0, 6, 3]];
        let modular = cokernel_mod(&rows, 3, 12);
        let mut ints: Vec<Vec<i64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| x as i64).collect())
            .collect();
        for j in 0..3 {
            let mut v = vec![0i64; 3];
            v[j] = 12;
            ints.push(v);
        }
        let (integer, free) = cokernel(&IntMatrix::from_rows(3, &ints).unwrap()).unwrap();
        assert_eq!(free, 0);
        assert_eq!(modular, integer);
    }
}
