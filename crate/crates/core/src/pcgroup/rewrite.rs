//! Normal forms computed straight from the defining relations, with no
//! precomputed tables, used to cross-check the collector and to audit
//! traces.
//!
//! * [`rewrite_normal_form`] is deliberately naive: the leftmost descent
//!   `g_j g_i` (`j > i`) is replaced by `g_i g_j [g_j, g_i]` and any run of
//!   `m_k` copies of `g_k` by its power relation, until neither applies.
//! * [`tail_normal_form`] multiplies letter by letter, using
//!   `x g = A g B^g` where `A` holds the letters of `x` up to `g` and `B` the
//!   rest, and `h^g = h [h, g]`.

use super::{PcPresentation, Word};

fn expand(pres: &PcPresentation, w: &[(usize, i64)], out: &mut Vec<usize>) {
    for &(g, e) in w {
        if e >= 0 {
            out.extend(std::iter::repeat_n(g, e as usize));
        } else {
            // g^-1 = g^{m-1} (rhs)^-1
            let m = pres.relative_orders()[g] as usize;
            let inv_rhs = super::invert_word(pres.power_rhs(g));
            for _ in 0..(-e) {
                out.extend(std::iter::repeat_n(g, m - 1));
                expand(pres, &inv_rhs, out);
            }
        }
    }
}

/// Normal form exponents of `w`, computed by naive rewriting.
pub fn rewrite_normal_form(pres: &PcPresentation, w: &Word) -> Vec<u32> {
    let mut letters = Vec::new();
    expand(pres, w, &mut letters);
    loop {
        if let Some(pos) = letters.windows(2).position(|p| p[0] > p[1]) {
            let (j, i) = (letters[pos], letters[pos + 1]);
            let mut repl = vec![i, j];
            expand(pres, pres.comm_rhs(j, i), &mut repl);
            letters.splice(pos..pos + 2, repl);
            continue;
        }
        let mut run_found = None;
        let mut start = 0;
        while start < letters.len() {
            let g = letters[start];
            let end = letters[start..]
                .iter()
                .position(|&x| x != g)
                .map_or(letters.len(), |k| start + k);
            let m = pres.relative_orders()[g] as usize;
            if end - start >= m {
                run_found = Some((start, g, m));
                break;
            }
            start = end;
        }
        match run_found {
            Some((s, g, m)) => {
                let mut repl = Vec::new();
                expand(pres, pres.power_rhs(g), &mut repl);
                letters.splice(s..s + m, repl);
            }
            None => break,
        }
    }
    let mut e = vec![0u32; pres.len()];
    for g in letters {
        e[g] += 1;
    }
    e
}

/// Normal form exponents of `w`, computed by tail conjugation.
pub fn tail_normal_form(pres: &PcPresentation, w: &Word) -> Vec<u32> {
    let mut letters = Vec::new();
    expand(pres, w, &mut letters);
    let mut e = vec![0u32; pres.len()];
    for g in letters {
        mul_letter(pres, &mut e, g);
    }
    e
}

fn mul_letter(pres: &PcPresentation, e: &mut [u32], g: usize) {
    let tail: Vec<(usize, u32)> = (g + 1..e.len())
        .filter(|&h| e[h] > 0)
        .map(|h| (h, e[h]))
        .collect();
    for &(h, _) in &tail {
        e[h] = 0;
    }
    e[g] += 1;
    if e[g] as u64 == pres.relative_orders()[g] {
        e[g] = 0;
        let mut rhs = Vec::new();
        expand(pres, pres.power_rhs(g), &mut rhs);
        for x in rhs {
            mul_letter(pres, e, x);
        }
    }
    for (h, c) in tail {
        let mut conj = vec![h];
        expand(pres, pres.comm_rhs(h, g), &mut conj);
        for _ in 0..c {
            for &x in &conj {
                mul_letter(pres, e, x);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcgroup::{parse_pc, PcGroup};

    #[test]
    fn agrees_with_collector_on_small_words() {
        let p = parse_pc(
            "group q { gens a, b, c, d; order a = 3; order b = 3; order c = 3; order d = 3; \
             comm [b,a] = c; comm [c,a] = d; }",
        )
        .unwrap();
        let g = PcGroup::new(p.clone()).unwrap();
        let words: Vec<Word> = vec![
            vec![(1, 1), (0, 1)],
            vec![(2, 2), (1, 2), (0, 2)],
            vec![(0, -1), (1, -1), (0, 1), (1, 1)],
            vec![(3, 1), (2, 1), (1, 1), (0, 1), (1, -2)],
        ];
        for w in words {
            assert_eq!(
                rewrite_normal_form(&p, &w),
                g.collect(&w).unwrap().0,
                "{w:?}"
            );
            assert_eq!(tail_normal_form(&p, &w), g.collect(&w).unwrap().0, "{w:?}");
        }
    }
}
