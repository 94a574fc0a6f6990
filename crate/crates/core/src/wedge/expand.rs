//! Recursive expansion of `u ∧ v` into the symbols `w_ij`.
//!
//! With `x^c = c^-1 x c`, the quotient `[G, G^φ] / M0*(G)` satisfies
//!
//! * `xy ∧ z = (x^y ∧ z^y) + (y ∧ z)`  (SPLIT-L)
//! * `x ∧ yz = (x ∧ z) + (x^z ∧ y^z)`  (SPLIT-R)
//! * `g_i ∧ g_j = w_ij` for `i > j` and `-w_ji` for `i < j`  (BASE)
//! * `x ∧ y = 0` whenever `[x, y] = 1`  (COMMUTE-ZERO)
//!
//! BASE takes precedence, so a commuting generator pair keeps its symbol
//! and `w_ij = 0` enters the relation lattice as a commuting relation.
//! Unrolled over a factorisation `x = a_1 ... a_m`, `y = b_1 ... b_n` this
//! gives `x ∧ y = Σ_{t,q} a_t^c ∧ b_q^c` with `c = r_q s_t`, where `s_t` and
//! `r_q` are the products of the factors after `a_t` and after `b_q`.
//! Elements are split into the letters of their normal forms. The pc series
//! must be central, so that conjugating `g_i` only appends letters after
//! `g_i`; every correction then lives deeper in the series and the
//! recursion terminates.

use std::collections::HashMap;

use crate::pcgroup::{Element, PcGroup};

use super::trace::{RelationKind, SeqExpansion, TraceStep};
use super::{WedgeBasis, WedgeError};

const MAX_DEPTH: usize = 512;

#[derive(Clone, Debug)]
enum Rule {
    CommuteZero,
    Base,
    SplitL,
    SplitR,
}

#[derive(Clone, Debug)]
struct Node {
    u: Element,
    v: Element,
    rule: Rule,
    children: Vec<usize>,
    value: Vec<i64>,
}

/// Memoised expander over a fixed group. Node ids are assigned in
/// post-order, so a node's children always precede it in the trace.
pub struct Expander<'g> {
    g: &'g PcGroup,
    basis: WedgeBasis,
    memo: HashMap<(Element, Element), usize>,
    nodes: Vec<Node>,
    relations: Vec<(RelationKind, Vec<SeqExpansion>, Vec<i64>)>,
    depth: usize,
}

impl<'g> Expander<'g> {
    pub fn new(g: &'g PcGroup) -> Result<Self, WedgeError> {
        check_central_series(g)?;
        Ok(Self {
            g,
            basis: WedgeBasis::new(g.ngens()),
            memo: HashMap::new(),
            nodes: Vec::new(),
            relations: Vec::new(),
            depth: 0,
        })
    }

    pub fn basis(&self) -> &WedgeBasis {
        &self.basis
    }

    pub fn group(&self) -> &'g PcGroup {
        self.g
    }

    /// Number of distinct `(u, v)` pairs expanded so far.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// `u ∧ v` for elements in normal form.
    pub fn expand(&mut self, u: &Element, v: &Element) -> Result<Vec<i64>, WedgeError> {
        let id = self.node(u, v)?;
        Ok(self.nodes[id].value.clone())
    }

    /// Clears the symbols of commuting generator pairs, which vanish in the
    /// quotient.
    pub fn reduced(&self, mut v: Vec<i64>) -> Vec<i64> {
        for (n, &(i, j)) in self.basis.pairs().iter().enumerate() {
            if self.g.presentation().comm_rhs(i, j).is_empty() {
                v[n] = 0;
            }
        }
        v
    }

    /// `(Π a) ∧ (Π b)` expanded along the given factorisations, without the
    /// commuting short-circuit at the top level. Returns the value and the
    /// node ids of the terms in `(t, q)` order.
    pub fn expand_seq(
        &mut self,
        a: &[Element],
        b: &[Element],
    ) -> Result<(Vec<i64>, Vec<usize>), WedgeError> {
        let g = self.g;
        let suffix = |xs: &[Element]| -> Vec<Element> {
            let mut out = vec![g.identity(); xs.len()];
            for t in (0..xs.len().saturating_sub(1)).rev() {
                out[t] = g.multiply(&xs[t + 1], &out[t + 1]);
            }
            out
        };
        let s = suffix(a);
        let r = suffix(b);
        let mut value = self.basis.zero();
        let mut terms = Vec::with_capacity(a.len() * b.len());
        for (at, st) in a.iter().zip(&s) {
            for (bq, rq) in b.iter().zip(&r) {
                let c = g.multiply(rq, st);
                let id = self.node(&g.conjugate(at, &c), &g.conjugate(bq, &c))?;
                add_into(&mut value, &self.nodes[id].value, 1);
                terms.push(id);
            }
        }
        Ok((value, terms))
    }

    /// Records `(Π a1) ∧ (Π b1) - (Π a2) ∧ (Π b2) = 0`, valid when the
    /// products agree. Returns the relation vector.
    pub fn relator_relation(
        &mut self,
        first: (&[Element], &[Element]),
        second: (&[Element], &[Element]),
    ) -> Result<Vec<i64>, WedgeError> {
        let (v1, t1) = self.expand_seq(first.0, first.1)?;
        let (v2, t2) = self.expand_seq(second.0, second.1)?;
        let mut value = v1;
        add_into(&mut value, &v2, -1);
        let exps = vec![self.seq_record(first, t1), self.seq_record(second, t2)];
        self.relations
            .push((RelationKind::Relator, exps, value.clone()));
        Ok(value)
    }

    /// Records `(Π a) ∧ (Π b) = 0` for a commuting pair; the caller has
    /// verified that the products commute.
    pub fn commuting_relation(
        &mut self,
        kind: RelationKind,
        a: &[Element],
        b: &[Element],
    ) -> Result<Vec<i64>, WedgeError> {
        let (value, terms) = self.expand_seq(a, b)?;
        let exps = vec![self.seq_record((a, b), terms)];
        self.relations.push((kind, exps, value.clone()));
        Ok(value)
    }

    /// The trace: every expansion node in post-order, then the relation
    /// records, so that references always point backwards.
    pub fn trace(&self) -> Vec<TraceStep> {
        let mut out: Vec<TraceStep> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(id, n)| node_step(id, n))
            .collect();
        for (k, (kind, expansions, value)) in self.relations.iter().enumerate() {
            out.push(TraceStep::Relator {
                step: self.nodes.len() + k,
                kind: *kind,
                expansions: expansions.clone(),
                value: value.clone(),
            });
        }
        out
    }

    fn seq_record(&self, (a, b): (&[Element], &[Element]), terms: Vec<usize>) -> SeqExpansion {
        SeqExpansion {
            left: a.iter().map(|x| x.0.clone()).collect(),
            right: b.iter().map(|x| x.0.clone()).collect(),
            terms,
        }
    }

    fn node(&mut self, u: &Element, v: &Element) -> Result<usize, WedgeError> {
        if let Some(&id) = self.memo.get(&(u.clone(), v.clone())) {
            return Ok(id);
        }
        if self.depth >= MAX_DEPTH {
            return Err(WedgeError::NonTermination(MAX_DEPTH));
        }
        self.depth += 1;
        let built = self.build(u, v);
        self.depth -= 1;
        let (rule, children, value) = built?;
        let id = self.nodes.len();
        self.nodes.push(Node {
            u: u.clone(),
            v: v.clone(),
            rule,
            children,
            value,
        });
        self.memo.insert((u.clone(), v.clone()), id);
        Ok(id)
    }

    fn build(
        &mut self,
        u: &Element,
        v: &Element,
    ) -> Result<(Rule, Vec<usize>, Vec<i64>), WedgeError> {
        let g = self.g;
        let lu = letters(u);
        let lv = letters(v);
        if lu.len() == 1 && lv.len() == 1 && lu != lv {
            let mut value = self.basis.zero();
            let (i, j) = (lu[0], lv[0]);
            if i > j {
                value[self.basis.index(i, j)] = 1;
            } else {
                value[self.basis.index(j, i)] = -1;
            }
            return Ok((Rule::Base, vec![], value));
        }
        if g.commutator(u, v).is_identity() {
            return Ok((Rule::CommuteZero, vec![], self.basis.zero()));
        }
        let (rule, a, b) = if lu.len() > 1 {
            (
                Rule::SplitL,
                lu.iter().map(|&i| g.gen(i)).collect::<Vec<_>>(),
                vec![v.clone()],
            )
        } else {
            (
                Rule::SplitR,
                vec![u.clone()],
                lv.iter().map(|&j| g.gen(j)).collect(),
            )
        };
        let (value, children) = self.expand_seq(&a, &b)?;
        Ok((rule, children, value))
    }
}

/// Letters of a normal form, `g_i^e` contributing `e` copies of `i`.
pub fn letters(x: &Element) -> Vec<usize> {
    x.0.iter()
        .enumerate()
        .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
        .collect()
}

pub(crate) fn add_into(acc: &mut [i64], v: &[i64], sign: i64) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += sign * b;
    }
}

fn node_step(id: usize, n: &Node) -> TraceStep {
    let (u, v) = (n.u.0.clone(), n.v.0.clone());
    match n.rule {
        Rule::CommuteZero => TraceStep::CommuteZero { step: id, u, v },
        Rule::Base => TraceStep::Base {
            step: id,
            u,
            v,
            value: n.value.clone(),
        },
        Rule::SplitL => TraceStep::SplitL {
            step: id,
            u,
            v,
            children: n.children.clone(),
            value: n.value.clone(),
        },
        Rule::SplitR => TraceStep::SplitR {
            step: id,
            u,
            v,
            children: n.children.clone(),
            value: n.value.clone(),
        },
    }
}

/// Every commutator relation `[g_j, g_i] = w` (`j > i`) must mention only
/// generators after `g_j`, i.e. the pc series is central.
pub fn check_central_series(g: &PcGroup) -> Result<(), WedgeError> {
    let pres = g.presentation();
    for (&(j, i), w) in pres.comm_relations() {
        if let Some(&(h, _)) = w.iter().find(|&&(h, e)| e != 0 && h <= j) {
            return Err(WedgeError::NotCentralSeries(format!(
                "[{},{}] mentions {}",
                pres.names()[j],
                pres.names()[i],
                pres.names()[h]
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcgroup::{parse_pc, PcGroup};

    #[test]
    fn letters_repeat_exponents() {
        assert_eq!(letters(&Element(vec![2, 0, 1])), vec![0, 0, 2]);
        assert!(letters(&Element(vec![0, 0])).is_empty());
    }

    #[test]
    fn non_central_series_is_refused() {
        let g = PcGroup::new(
            parse_pc(
                "group q { gens a, b, c; order a = 2; order b = 2; order c = 2; comm [c,a] = b; }",
            )
            .unwrap(),
        )
        .unwrap();
        assert!(matches!(
            Expander::new(&g),
            Err(WedgeError::NotCentralSeries(_))
        ));
    }

    #[test]
    fn memoised_nodes_precede_their_parents() {
        let g = PcGroup::new(
            parse_pc(
                "group h { gens x, y, z; order x = 3; order y = 3; order z = 3; comm [y,x] = z; }",
            )
            .unwrap(),
        )
        .unwrap();
        let mut ex = Expander::new(&g).unwrap();
        let u = Element(vec![2, 1, 0]);
        let v = Element(vec![1, 1, 1]);
        let raw = ex.expand(&u, &v).unwrap();
        let value = ex.reduced(raw);
        // bilinear in class 2: (2x + y) ∧ (x + y) = 2 x∧y + y∧x = x∧y = -w(y,x)
        assert_eq!(value, vec![-1, 0, 0]);
        for step in ex.trace() {
            if let TraceStep::SplitL { step, children, .. }
            | TraceStep::SplitR { step, children, .. } = step
            {
                assert!(children.iter().all(|&c| c < step));
            }
        }
    }
}
