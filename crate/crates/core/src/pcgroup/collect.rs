//! Collection from the left.
//!
//! The state is a normal form `e` and a stack of pending positive letters
//! `(generator, count)`. Multiplying `e = head * tail` by `g_k`, where `tail`
//! only involves generators after `g_k`, rewrites to `head * g_k * tail^{g_k}`
//! and pushes the conjugated tail back on the stack.

use super::PcPresentation;

type Letters = Vec<(usize, u32)>;

#[derive(Clone, Debug)]
pub(super) struct Tables {
    orders: Vec<u32>,
    power: Vec<Letters>,
    /// `conj[l][k]` for `l > k`: letters of `g_l^{g_k} = g_l [g_l, g_k]`.
    conj: Vec<Vec<Letters>>,
    /// `commutes[l][k]`: `g_l` and `g_k` commute.
    commutes: Vec<Vec<bool>>,
    pub(super) inverse_gen: Vec<Vec<u32>>,
}

impl Tables {
    pub(super) fn build(pres: &PcPresentation) -> Self {
        let n = pres.len();
        let orders: Vec<u32> = pres.relative_orders().iter().map(|&m| m as u32).collect();
        let mut t = Tables {
            orders,
            power: vec![Vec::new(); n],
            conj: vec![vec![Vec::new(); n]; n],
            commutes: vec![vec![true; n]; n],
            inverse_gen: vec![Vec::new(); n],
        };
        // bottom-up: relations at level i only involve generators > i, whose
        // inverses are already known
        for i in (0..n).rev() {
            t.power[i] = t.positive(pres.power_rhs(i));
            for l in i + 1..n {
                let rhs = pres.comm_rhs(l, i);
                let mut w = vec![(l, 1u32)];
                w.extend(t.positive(rhs));
                t.commutes[l][i] = rhs.is_empty();
                t.commutes[i][l] = rhs.is_empty();
                t.conj[l][i] = w;
            }
            // g_i^-1 = g_i^{m_i - 1} * (power rhs)^-1
            let mut e = vec![0u32; n];
            let mut letters = vec![(i, t.orders[i] - 1)];
            letters.extend(t.positive(&super::invert_word(pres.power_rhs(i))));
            t.apply_letters(&mut e, &letters);
            t.inverse_gen[i] = e;
        }
        t
    }

    /// Rewrites a word into positive letters using the generator inverses.
    fn positive(&self, w: &[(usize, i64)]) -> Letters {
        let mut out = Vec::with_capacity(w.len());
        for &(g, e) in w {
            if e >= 0 {
                if e > 0 {
                    out.push((g, e as u32));
                }
            } else {
                let inv = &self.inverse_gen[g];
                for _ in 0..(-e) {
                    out.extend(
                        inv.iter()
                            .enumerate()
                            .filter(|(_, &x)| x != 0)
                            .map(|(i, &x)| (i, x)),
                    );
                }
            }
        }
        out
    }

    pub(super) fn apply_word(&self, e: &mut [u32], w: &[(usize, i64)]) {
        let letters = self.positive(w);
        self.apply_letters(e, &letters);
    }

    pub(super) fn apply_element(&self, e: &mut [u32], nf: &[u32]) {
        let letters: Letters = nf
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| (i, x))
            .collect();
        self.apply_letters(e, &letters);
    }

    fn push_rev(stack: &mut Letters, w: &[(usize, u32)]) {
        stack.extend(w.iter().rev().copied());
    }

    pub(super) fn apply_letters(&self, e: &mut [u32], letters: &[(usize, u32)]) {
        let n = e.len();
        let mut stack: Letters = Vec::with_capacity(64);
        Self::push_rev(&mut stack, letters);
        while let Some((k, c)) = stack.pop() {
            if c == 0 {
                continue;
            }
            let tail_start = k + 1;
            let tail_commutes = (tail_start..n).all(|l| e[l] == 0 || self.commutes[l][k]);
            if tail_commutes {
                let total = e[k] as u64 + c as u64;
                let m = self.orders[k] as u64;
                e[k] = (total % m) as u32;
                let q = total / m;
                if q > 0 {
                    // head * g_k^r * rhs^q * tail
                    let tail: Letters = (tail_start..n)
                        .filter(|&l| e[l] != 0)
                        .map(|l| (l, e[l]))
                        .collect();
                    for x in e[tail_start..].iter_mut() {
                        *x = 0;
                    }
                    Self::push_rev(&mut stack, &tail);
                    for _ in 0..q {
                        Self::push_rev(&mut stack, &self.power[k]);
                    }
                }
                continue;
            }
            // move one g_k past a non-commuting tail
            let tail: Vec<(usize, u32)> = (tail_start..n)
                .filter(|&l| e[l] != 0)
                .map(|l| (l, e[l]))
                .collect();
            for x in e[tail_start..].iter_mut() {
                *x = 0;
            }
            stack.push((k, c - 1));
            for &(l, t) in tail.iter().rev() {
                if self.commutes[l][k] {
                    stack.push((l, t));
                } else {
                    for _ in 0..t {
                        Self::push_rev(&mut stack, &self.conj[l][k]);
                    }
                }
            }
            e[k] += 1;
            if e[k] == self.orders[k] {
                e[k] = 0;
                Self::push_rev(&mut stack, &self.power[k]);
            }
        }
    }
}
