//! Replayable expansion traces and an independent checker.
//!
//! The checker shares no arithmetic with the expander: it decides every
//! group identity by table-free collection from the defining relations,
//! using only positive words, and recomputes every value from the base
//! steps up.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groupkit::AbelianCoords;
use crate::pcgroup::rewrite::tail_normal_form;
use crate::pcgroup::{invert_word, PcPresentation, Word};
use crate::zlattice::IntLattice;

use super::WedgeBasis;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationKind {
    /// Two factorisations of the same pair of elements.
    Relator,
    /// A certificate witness pair.
    Witness,
    /// A commuting pair from the class-2 enumeration.
    Commuting,
}

/// One unrolled expansion `(Π left) ∧ (Π right)`, with the node ids of its
/// terms in `(t, q)` order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeqExpansion {
    pub left: Vec<Vec<u32>>,
    pub right: Vec<Vec<u32>>,
    pub terms: Vec<usize>,
}

/// One line of the trace. Elements are normal-form exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule")]
pub enum TraceStep {
    #[serde(rename = "COMMUTE-ZERO")]
    CommuteZero {
        step: usize,
        u: Vec<u32>,
        v: Vec<u32>,
    },
    #[serde(rename = "BASE")]
    Base {
        step: usize,
        u: Vec<u32>,
        v: Vec<u32>,
        value: Vec<i64>,
    },
    #[serde(rename = "SPLIT-L")]
    SplitL {
        step: usize,
        u: Vec<u32>,
        v: Vec<u32>,
        children: Vec<usize>,
        value: Vec<i64>,
    },
    #[serde(rename = "SPLIT-R")]
    SplitR {
        step: usize,
        u: Vec<u32>,
        v: Vec<u32>,
        children: Vec<usize>,
        value: Vec<i64>,
    },
    #[serde(rename = "RELATOR")]
    Relator {
        step: usize,
        kind: RelationKind,
        expansions: Vec<SeqExpansion>,
        value: Vec<i64>,
    },
}

impl TraceStep {
    pub fn step(&self) -> usize {
        match self {
            TraceStep::CommuteZero { step, .. }
            | TraceStep::Base { step, .. }
            | TraceStep::SplitL { step, .. }
            | TraceStep::SplitR { step, .. }
            | TraceStep::Relator { step, .. } => *step,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            TraceStep::CommuteZero { .. } => "COMMUTE-ZERO",
            TraceStep::Base { .. } => "BASE",
            TraceStep::SplitL { .. } => "SPLIT-L",
            TraceStep::SplitR { .. } => "SPLIT-R",
            TraceStep::Relator { .. } => "RELATOR",
        }
    }
}

/// Serialises a trace as JSON lines.
pub fn to_json_lines(steps: &[TraceStep]) -> String {
    let mut out = String::new();
    for s in steps {
        out.push_str(&serde_json::to_string(s).expect("trace steps serialise"));
        out.push('\n');
    }
    out
}

pub fn from_json_lines(text: &str) -> Result<Vec<TraceStep>, serde_json::Error> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(serde_json::from_str)
        .collect()
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("trace step {step}: {reason}")]
pub struct AuditError {
    pub step: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub steps: usize,
    pub verified: usize,
    pub relations: usize,
    /// Whether every element of `ker ε` lies in the span of the relations,
    /// i.e. the trace by itself proves `B0(G) = 0`.
    pub proves_trivial: bool,
}

struct Referee<'p> {
    pres: &'p PcPresentation,
}

impl Referee<'_> {
    fn nf(&self, parts: &[&[u32]]) -> Vec<u32> {
        let w: Word = parts
            .iter()
            .flat_map(|e| {
                e.iter()
                    .enumerate()
                    .filter(|(_, &x)| x > 0)
                    .map(|(i, &x)| (i, x as i64))
            })
            .collect();
        tail_normal_form(self.pres, &w)
    }

    fn product(&self, xs: &[Vec<u32>]) -> Vec<u32> {
        let parts: Vec<&[u32]> = xs.iter().map(Vec::as_slice).collect();
        self.nf(&parts)
    }

    /// `c^-1 x c = y`, checked as `x c = c y`.
    fn is_conjugate(&self, x: &[u32], c: &[u32], y: &[u32]) -> bool {
        self.nf(&[x, c]) == self.nf(&[c, y])
    }

    fn commute(&self, x: &[u32], y: &[u32]) -> bool {
        self.nf(&[x, y]) == self.nf(&[y, x])
    }

    fn commutator_of_gens(&self, i: usize, j: usize) -> Vec<u32> {
        let mut w = invert_word(&[(i, 1)]);
        w.extend(invert_word(&[(j, 1)]));
        w.push((i, 1));
        w.push((j, 1));
        tail_normal_form(self.pres, &w)
    }
}

fn unit(k: usize, i: usize) -> Vec<u32> {
    let mut e = vec![0; k];
    e[i] = 1;
    e
}

fn letters(x: &[u32]) -> Vec<Vec<u32>> {
    x.iter()
        .enumerate()
        .flat_map(|(i, &e)| std::iter::repeat_n(unit(x.len(), i), e as usize))
        .collect()
}

/// Verified nodes: both operands in normal form and their expansion.
type Nodes = HashMap<usize, (Vec<u32>, Vec<u32>, Vec<i64>)>;

/// Replays every step of `steps` against the presentation and checks that
/// the relation records are valid relations. The final claim is rederived:
/// `ker ε` is computed by breadth-first search with table-free collection.
pub fn audit_trace(pres: &PcPresentation, steps: &[TraceStep]) -> Result<AuditReport, AuditError> {
    let k = pres.len();
    let basis = WedgeBasis::new(k);
    let re = Referee { pres };
    let mut nodes: Nodes = HashMap::new();
    let mut relations = IntLattice::new(basis.len());
    let mut relation_count = 0;
    let fail = |step: usize, reason: &str| AuditError {
        step,
        reason: reason.to_string(),
    };
    for (pos, s) in steps.iter().enumerate() {
        let step = s.step();
        if step != pos {
            return Err(fail(step, "steps out of order"));
        }
        let check_elem = |x: &[u32]| {
            x.len() == k
                && x.iter()
                    .zip(pres.relative_orders())
                    .all(|(&e, &m)| (e as u64) < m)
        };
        match s {
            TraceStep::CommuteZero { u, v, .. } => {
                if !check_elem(u) || !check_elem(v) || !re.commute(u, v) {
                    return Err(fail(step, "COMMUTE-ZERO on a non-commuting pair"));
                }
                nodes.insert(step, (u.clone(), v.clone(), basis.zero()));
            }
            TraceStep::Base { u, v, value, .. } => {
                let (lu, lv) = (letters(u), letters(v));
                if lu.len() != 1 || lv.len() != 1 || !check_elem(u) || !check_elem(v) {
                    return Err(fail(step, "BASE on non-generators"));
                }
                let i = u.iter().position(|&e| e == 1).unwrap();
                let j = v.iter().position(|&e| e == 1).unwrap();
                if i == j {
                    return Err(fail(step, "BASE on equal generators"));
                }
                let mut want = basis.zero();
                if i > j {
                    want[basis.index(i, j)] = 1;
                } else {
                    want[basis.index(j, i)] = -1;
                }
                if &want != value {
                    return Err(fail(step, "BASE value mismatch"));
                }
                nodes.insert(step, (u.clone(), v.clone(), want));
            }
            TraceStep::SplitL {
                u,
                v,
                children,
                value,
                ..
            }
            | TraceStep::SplitR {
                u,
                v,
                children,
                value,
                ..
            } => {
                if !check_elem(u) || !check_elem(v) {
                    return Err(fail(step, "malformed element"));
                }
                let (a, b) = match s {
                    TraceStep::SplitL { .. } => {
                        if letters(u).len() < 2 {
                            return Err(fail(step, "SPLIT-L on a single letter"));
                        }
                        (letters(u), vec![v.clone()])
                    }
                    _ => {
                        if letters(v).len() < 2 {
                            return Err(fail(step, "SPLIT-R on a single letter"));
                        }
                        (vec![u.clone()], letters(v))
                    }
                };
                let got =
                    check_seq(&re, &nodes, &basis, &a, &b, children).map_err(|r| fail(step, &r))?;
                if &got != value {
                    return Err(fail(step, "split value mismatch"));
                }
                nodes.insert(step, (u.clone(), v.clone(), got));
            }
            TraceStep::Relator {
                kind,
                expansions,
                value,
                ..
            } => {
                let got = match (kind, expansions.as_slice()) {
                    (RelationKind::Relator, [e1, e2]) => {
                        if re.product(&e1.left) != re.product(&e2.left)
                            || re.product(&e1.right) != re.product(&e2.right)
                        {
                            return Err(fail(
                                step,
                                "relator factorisations have different products",
                            ));
                        }
                        let mut v1 = check_seq(&re, &nodes, &basis, &e1.left, &e1.right, &e1.terms)
                            .map_err(|r| fail(step, &r))?;
                        let v2 = check_seq(&re, &nodes, &basis, &e2.left, &e2.right, &e2.terms)
                            .map_err(|r| fail(step, &r))?;
                        super::expand::add_into(&mut v1, &v2, -1);
                        v1
                    }
                    (RelationKind::Witness | RelationKind::Commuting, [e]) => {
                        if !re.commute(&re.product(&e.left), &re.product(&e.right)) {
                            return Err(fail(step, "witness pair does not commute"));
                        }
                        check_seq(&re, &nodes, &basis, &e.left, &e.right, &e.terms)
                            .map_err(|r| fail(step, &r))?
                    }
                    _ => return Err(fail(step, "malformed relation record")),
                };
                if &got != value {
                    return Err(fail(step, "relation value mismatch"));
                }
                relations.insert(got.into_iter().map(BigInt::from).collect());
                relation_count += 1;
            }
        }
    }
    let proves_trivial = kernel_in_span(&re, &basis, &relations);
    Ok(AuditReport {
        steps: steps.len(),
        verified: steps.len(),
        relations: relation_count,
        proves_trivial,
    })
}

/// Checks the terms of `(Π a) ∧ (Π b)` and returns their sum.
fn check_seq(
    re: &Referee,
    nodes: &Nodes,
    basis: &WedgeBasis,
    a: &[Vec<u32>],
    b: &[Vec<u32>],
    terms: &[usize],
) -> Result<Vec<i64>, String> {
    if terms.len() != a.len() * b.len() {
        return Err(format!(
            "expected {} terms, found {}",
            a.len() * b.len(),
            terms.len()
        ));
    }
    let mut sum = basis.zero();
    for (t, at) in a.iter().enumerate() {
        for (q, bq) in b.iter().enumerate() {
            let id = terms[t * b.len() + q];
            let (u, v, val) = nodes
                .get(&id)
                .ok_or_else(|| format!("term refers to unknown step {id}"))?;
            // conjugator r_q s_t as a positive word
            let mut c: Vec<Vec<u32>> = b[q + 1..].to_vec();
            c.extend_from_slice(&a[t + 1..]);
            let c = re.product(&c);
            if !re.is_conjugate(at, &c, u) || !re.is_conjugate(bq, &c, v) {
                return Err(format!("term ({t},{q}) is not the expected conjugate pair"));
            }
            super::expand::add_into(&mut sum, val, 1);
        }
    }
    Ok(sum)
}

fn kernel_in_span(re: &Referee, basis: &WedgeBasis, relations: &IntLattice) -> bool {
    let k = re.pres.len();
    let gens: Vec<Vec<u32>> = basis
        .pairs()
        .iter()
        .map(|&(i, j)| re.commutator_of_gens(i, j))
        .collect();
    if !gens.iter().all(|x| gens.iter().all(|y| re.commute(x, y))) {
        return false;
    }
    let coords = AbelianCoords::new(gens, vec![0u32; k], |x, y| re.nf(&[x, y]));
    coords.relations().iter().all(|r| relations.contains(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcgroup::{catalog, parse_word, CatalogParams, PcGroup};
    use crate::wedge::b0_upper_bound;

    fn phi28_trace() -> (PcGroup, Vec<TraceStep>) {
        let g = PcGroup::new(catalog(&CatalogParams::Phi28 { p: 5 }).unwrap()).unwrap();
        let names = g.presentation().names().to_vec();
        let w = |s: &str| parse_word(s, &names).unwrap();
        let ub =
            b0_upper_bound(&g, &[(w("a3*a"), w("a*a1^5")), (w("a1*a^5"), w("a1*a2"))]).unwrap();
        (g, ub.trace)
    }

    #[test]
    fn json_lines_round_trip() {
        let (_, trace) = phi28_trace();
        let text = to_json_lines(&trace);
        assert_eq!(text.lines().count(), trace.len());
        assert!(text.lines().next().unwrap().starts_with("{\"rule\":"));
        assert_eq!(from_json_lines(&text).unwrap(), trace);
    }

    #[test]
    fn audit_accepts_and_proves() {
        let (g, trace) = phi28_trace();
        let report = audit_trace(g.presentation(), &trace).unwrap();
        assert_eq!(report.verified, trace.len());
        assert!(report.proves_trivial);
    }

    #[test]
    fn audit_catches_tampering() {
        let (g, trace) = phi28_trace();
        let pos = trace
            .iter()
            .position(|s| matches!(s, TraceStep::Base { .. }))
            .unwrap();
        let mut bad = trace.clone();
        if let TraceStep::Base { value, .. } = &mut bad[pos] {
            value.iter_mut().for_each(|x| *x = -*x);
        }
        assert_eq!(audit_trace(g.presentation(), &bad).unwrap_err().step, pos);

        let pos = trace
            .iter()
            .position(|s| matches!(s, TraceStep::CommuteZero { u, v, .. } if u != v))
            .unwrap();
        let mut bad = trace.clone();
        if let TraceStep::CommuteZero { u, .. } = &mut bad[pos] {
            *u = vec![0, 1, 0, 0, 0];
        }
        if let TraceStep::CommuteZero { v, .. } = &mut bad[pos] {
            *v = vec![1, 0, 0, 0, 0];
        }
        assert!(audit_trace(g.presentation(), &bad).is_err());

        // dropping the witness relations leaves a valid trace that no longer proves triviality
        let trimmed: Vec<TraceStep> = trace
            .iter()
            .filter(|s| {
                !matches!(
                    s,
                    TraceStep::Relator {
                        kind: RelationKind::Witness,
                        ..
                    }
                )
            })
            .cloned()
            .collect();
        let report = audit_trace(g.presentation(), &trimmed).unwrap();
        assert!(!report.proves_trivial);
    }
}
