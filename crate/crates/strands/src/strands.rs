//! The strands algebra `A(n,k,S)` in array notation.
//!
//! A basis element is keyed by its left idempotent `x`, a square-free
//! monomial in the `C_i` (`i ∈ S`) and one column `(p_i, q_i)` per circle:
//! `p_i` is the speed of the strand leaving `z_i^-`, `q_i` the speed of the
//! strand leaving `z_i^+`. The right idempotent is derived, never stored.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chain::Chain;
use crate::combinatorics::{far, v, IState};
use crate::error::{Error, Result};
use crate::grading::Grading;

/// The parameters `(n, k, S)` shared by both algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ctx {
    n: usize,
    k: usize,
    /// Bit `i` set iff line `i ∈ S`.
    s: u64,
}

impl Ctx {
    pub fn new(n: usize, k: usize, s: &[usize]) -> Result<Self> {
        let mut mask = 0;
        for &i in s {
            if i == 0 || i > n {
                return Err(Error::param(format!("line {i} of S outside [1,{n}]")));
            }
            mask |= 1 << i;
        }
        Ctx::from_mask(n, k, mask)
    }

    pub fn from_mask(n: usize, k: usize, s: u64) -> Result<Self> {
        if n == 0 || n > crate::combinatorics::MAX_N {
            return Err(Error::param(format!("n = {n} outside [1,{}]", crate::combinatorics::MAX_N)));
        }
        if k > n + 1 {
            return Err(Error::param(format!("k = {k} exceeds n+1 = {}", n + 1)));
        }
        if s & 1 != 0 || s >> (n + 1) != 0 {
            return Err(Error::param(format!("S mask {s:#b} outside [1,{n}]")));
        }
        Ok(Ctx { n, k, s })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn s_mask(&self) -> u64 {
        self.s
    }

    pub fn in_s(&self, i: usize) -> bool {
        self.s >> i & 1 == 1
    }

    pub fn s_lines(&self) -> Vec<usize> {
        (1..=self.n).filter(|&i| self.in_s(i)).collect()
    }

    /// The context with `S` replaced by `ρ(S) = {n+1-i}`.
    pub fn rho(&self) -> Ctx {
        Ctx { s: reverse_lines(self.n, self.s), ..*self }
    }

    pub fn istates(&self) -> Vec<IState> {
        crate::combinatorics::enumerate_istates(self.n, self.k).expect("validated context")
    }

    /// Every subset of `[1,n]` as a mask, in increasing mask order.
    pub fn all_s_masks(n: usize) -> impl Iterator<Item = u64> {
        (0..1u64 << n).map(|m| m << 1)
    }

    fn check_state(&self, x: &IState) -> Result<()> {
        if x.n() != self.n || x.len() != self.k {
            return Err(Error::param(format!("{x} is not in V({},{})", self.n, self.k)));
        }
        Ok(())
    }
}

impl fmt::Display for Ctx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.s_lines().iter().map(|i| i.to_string()).collect();
        write!(f, "(n={}, k={}, S={{{}}})", self.n, self.k, s.join(","))
    }
}

/// Maps bit `i` to bit `n+1-i` for `i ∈ [1,n]`.
pub(crate) fn reverse_lines(n: usize, mask: u64) -> u64 {
    (1..=n).filter(|&i| mask >> i & 1 == 1).fold(0, |m, i| m | 1 << (n + 1 - i))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrandsGen {
    pub x: IState,
    /// Bit `i` set iff `C_i` divides the generator.
    pub c: u64,
    /// `pq[i-1] = (p_i, q_i)`.
    pub pq: Vec<(u32, u32)>,
}

impl StrandsGen {
    pub fn idempotent(x: IState) -> Self {
        StrandsGen { x, c: 0, pq: vec![(0, 0); x.n()] }
    }

    pub fn n(&self) -> usize {
        self.pq.len()
    }

    /// `p_i`, zero outside `[1,n]`.
    pub fn p(&self, i: usize) -> u32 {
        if i >= 1 && i <= self.pq.len() {
            self.pq[i - 1].0
        } else {
            0
        }
    }

    /// `q_i`, zero outside `[1,n]`.
    pub fn q(&self, i: usize) -> u32 {
        if i >= 1 && i <= self.pq.len() {
            self.pq[i - 1].1
        } else {
            0
        }
    }

    pub fn has_c(&self, i: usize) -> bool {
        self.c >> i & 1 == 1
    }

    /// Doubled refined weights `2 c(i) + p_i + q_i`.
    pub fn weight2(&self) -> Vec<u32> {
        (1..=self.n())
            .map(|i| 2 * self.has_c(i) as u32 + self.p(i) + self.q(i))
            .collect()
    }

    pub fn is_idempotent(&self) -> bool {
        self.c == 0 && self.pq.iter().all(|&c| c == (0, 0))
    }

    fn with_column(&self, i: usize, col: (u32, u32)) -> Self {
        let mut g = self.clone();
        g.pq[i - 1] = col;
        g
    }

    /// Derives the right idempotent without checking validity.
    pub fn right_unchecked(&self) -> IState {
        let mut bits = 0u64;
        for i in self.x.iter() {
            let j = if self.q(i) % 2 == 1 {
                i - 1
            } else if self.p(i + 1) % 2 == 1 {
                i + 1
            } else {
                i
            };
            bits |= 1 << j;
        }
        IState::from_bits(self.x.n(), bits)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truncation {
    /// `0 ∉ x, y`
    Right,
    /// `n ∉ x, y`
    Left,
    Both,
}

pub type StrandsElement = Chain<StrandsGen>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StrandsAlgebra {
    pub ctx: Ctx,
}

impl StrandsAlgebra {
    pub fn new(ctx: Ctx) -> Self {
        StrandsAlgebra { ctx }
    }

    fn check_shape(&self, g: &StrandsGen) -> Result<()> {
        self.ctx.check_state(&g.x)?;
        if g.pq.len() != self.ctx.n {
            return Err(Error::param(format!("{} columns for n = {}", g.pq.len(), self.ctx.n)));
        }
        Ok(())
    }

    /// Checks the basis conditions and returns the right idempotent.
    pub fn validate(&self, g: &StrandsGen) -> Result<IState> {
        self.check_shape(g)?;
        let n = self.ctx.n;
        let bad = |cond, at| Err(Error::InvalidGenerator { cond, at });
        if g.c & !self.ctx.s != 0 {
            let at = (1..=n).find(|&i| g.has_c(i) && !self.ctx.in_s(i)).unwrap_or(0);
            return bad("C outside S", at);
        }
        for i in 1..n {
            if g.q(i) * g.p(i + 1) != 0 {
                return bad("two strands start in one region", i);
            }
        }
        for i in 0..=n {
            if !g.x.has(i) && (g.q(i) != 0 || g.p(i + 1) != 0) {
                return bad("strand leaves an unoccupied region", i);
            }
        }
        for i in 1..n {
            if g.p(i) * g.q(i + 1) % 2 == 1 {
                return bad("two odd strands end in one region", i);
            }
        }
        for i in 1..=n {
            let (p, q) = (g.p(i), g.q(i));
            if p != 0 && q != 0 && (p + q) % 2 == 1 {
                return bad("mixed-parity column", i);
            }
        }
        for i in 1..=n {
            if g.x.has(i - 1) && g.x.has(i) {
                let (p, q) = (g.p(i), g.q(i));
                if p % 2 == 1 && q == 0 && g.p(i + 1).is_multiple_of(2) {
                    return bad("odd strand ends on an occupied region", i);
                }
                if p == 0 && q % 2 == 1 && g.q(i - 1).is_multiple_of(2) {
                    return bad("odd strand ends on an occupied region", i);
                }
            }
        }
        let y = g.right_unchecked();
        if y.len() != g.x.len() {
            return bad("endpoints collide", 0);
        }
        Ok(y)
    }

    pub fn is_valid(&self, g: &StrandsGen) -> bool {
        self.validate(g).is_ok()
    }

    pub fn idempotent(&self, x: &IState) -> Result<StrandsGen> {
        self.ctx.check_state(x)?;
        Ok(StrandsGen::idempotent(*x))
    }

    /// Product of two valid generators; no context checks.
    pub fn mul_raw(&self, a: &StrandsGen, b: &StrandsGen) -> Option<StrandsGen> {
        if a.c & b.c != 0 || a.right_unchecked() != b.x {
            return None;
        }
        let n = self.ctx.n;
        let mut pq = Vec::with_capacity(n);
        for i in 1..=n {
            let (p, q) = a.pq[i - 1];
            let (p2, q2) = b.pq[i - 1];
            let (p_odd, q_odd) = (p % 2 == 1, q % 2 == 1);
            let next = b.p(i + 1);
            let prev = b.q(i - 1);
            if (p_odd && next != 0)
                || (p != 0 && !p_odd && prev != 0)
                || (q_odd && prev != 0)
                || (q != 0 && !q_odd && next != 0)
            {
                return None;
            }
            let turn = (p as i64 - q as i64) * (p2 as i64 - q2 as i64);
            if (!p_odd && !q_odd && turn < 0) || (p_odd && q_odd && turn > 0) {
                return None;
            }
            let r = if p_odd {
                p + q2
            } else if !q_odd {
                p + p2
            } else {
                0
            };
            let s = if q_odd {
                q + p2
            } else if !p_odd {
                q + q2
            } else {
                0
            };
            pq.push((r, s));
        }
        Some(StrandsGen { x: a.x, c: a.c | b.c, pq })
    }

    pub fn mul_gen(&self, a: &StrandsGen, b: &StrandsGen) -> Result<StrandsElement> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(self.mul_raw(a, b).into_iter().collect())
    }

    pub fn mul_chain(&self, a: &StrandsElement, b: &StrandsElement) -> StrandsElement {
        let mut out = Chain::zero();
        for g in a.iter() {
            for h in b.iter() {
                if let Some(gh) = self.mul_raw(g, h) {
                    out.toggle(gh);
                }
            }
        }
        out
    }

    pub fn mul(&self, a: &StrandsElement, b: &StrandsElement) -> Result<StrandsElement> {
        for g in a.iter().chain(b.iter()) {
            self.validate(g)?;
        }
        Ok(self.mul_chain(a, b))
    }

    /// The part of the differential resolving a crossing on circle `i`.
    pub fn d0(&self, g: &StrandsGen, i: usize) -> Vec<StrandsGen> {
        if !(g.x.has(i - 1) && g.x.has(i)) || g.q(i - 1) != 0 || g.p(i + 1) != 0 {
            return Vec::new();
        }
        let (p, q) = g.pq[i - 1];
        let (lo, hi) = (p.min(q), p.max(q));
        match hi - lo {
            2 => vec![g.with_column(i, (lo + 1, hi - 1))],
            d if d >= 4 && d % 2 == 0 => vec![
                g.with_column(i, (lo + 1, hi - 1)),
                g.with_column(i, (hi - 1, lo + 1)),
            ],
            _ => Vec::new(),
        }
    }

    /// The part of the differential removing `C_i`.
    pub fn dc(&self, g: &StrandsGen, i: usize) -> Vec<StrandsGen> {
        if !g.has_c(i) {
            return Vec::new();
        }
        let mut h = g.clone();
        h.c &= !(1 << i);
        let (p, q) = g.pq[i - 1];
        let mut cols = Vec::new();
        if p == q && p != 0 {
            cols.extend([(p + 2, q), (p, q + 2)]);
        } else if p > q {
            cols.push((p + 2, q));
        } else if p < q {
            cols.push((p, q + 2));
        } else {
            if g.x.has(i - 1) && g.q(i - 1) == 0 {
                cols.push((2, 0));
            }
            if g.x.has(i) && g.p(i + 1) == 0 {
                cols.push((0, 2));
            }
        }
        cols.into_iter().map(|col| h.with_column(i, col)).collect()
    }

    pub fn diff_gen(&self, g: &StrandsGen) -> StrandsElement {
        let mut out = Chain::zero();
        for i in 1..=self.ctx.n {
            for h in self.d0(g, i).into_iter().chain(self.dc(g, i)) {
                out.toggle(h);
            }
        }
        out
    }

    pub fn diff(&self, a: &StrandsElement) -> StrandsElement {
        let mut out = Chain::zero();
        for g in a.iter() {
            out += &self.diff_gen(g);
        }
        out
    }

    pub fn grade(&self, g: &StrandsGen) -> Grading {
        let n = self.ctx.n;
        let mut gr = Grading::zero(n);
        let mut maslov2 = 0i64;
        for i in 1..=n {
            let (p, q) = (g.p(i) as i64, g.q(i) as i64);
            let c = g.has_c(i) as i64;
            let sign = if self.ctx.in_s(i) { -1 } else { 1 };
            let w2 = 2 * c + p + q;
            maslov2 += (p - q).abs() - 2 * (p + q) + sign * w2;
            gr.unrefined[i - 1] = (c + p / 2 + (q + 1) / 2, c + (p + 1) / 2 + q / 2);
            gr.refined2[i - 1] = w2;
            gr.alex2 += sign * w2;
        }
        debug_assert!(maslov2 % 2 == 0, "half-integral Maslov grading on {g:?}");
        gr.maslov = maslov2 / 2;
        gr
    }

    /// The componentwise-minimal generator from `x` to `y`.
    pub fn g_min(&self, x: &IState, y: &IState) -> Result<StrandsGen> {
        self.ctx.check_state(x)?;
        self.ctx.check_state(y)?;
        if far(x, y) {
            return Err(Error::Far { x: x.to_string(), y: y.to_string() });
        }
        let pq = (1..=self.ctx.n)
            .map(|i| match v(x, y, i) {
                1 => (1, 0),
                -1 => (0, 1),
                _ => (0, 0),
            })
            .collect();
        Ok(StrandsGen { x: *x, c: 0, pq })
    }

    /// The index-reversing symmetry; the image lives in `A(n,k,ρ(S))`.
    pub fn rho(&self, g: &StrandsGen) -> StrandsGen {
        let n = self.ctx.n;
        StrandsGen {
            x: g.x.rho(),
            c: reverse_lines(n, g.c),
            pq: (1..=n).map(|i| (g.q(n + 1 - i), g.p(n + 1 - i))).collect(),
        }
    }

    /// The opposite-algebra symmetry: starts at the old right idempotent.
    /// Reversing time swaps the endpoints of an odd strand, so odd columns
    /// are exchanged; an even strand returns to its own basepoint and its
    /// column is kept.
    pub fn o(&self, g: &StrandsGen) -> StrandsGen {
        StrandsGen {
            x: g.right_unchecked(),
            c: g.c,
            pq: g
                .pq
                .iter()
                .map(|&(p, q)| if (p | q) & 1 == 1 { (q, p) } else { (p, q) })
                .collect(),
        }
    }

    pub fn rho_chain(&self, a: &StrandsElement) -> StrandsElement {
        a.flat_map(|g| [self.rho(g)])
    }

    pub fn o_chain(&self, a: &StrandsElement) -> StrandsElement {
        a.flat_map(|g| [self.o(g)])
    }

    pub fn in_truncation(&self, g: &StrandsGen, which: Truncation) -> bool {
        let y = g.right_unchecked();
        let n = self.ctx.n;
        let r = !g.x.has(0) && !y.has(0);
        let l = !g.x.has(n) && !y.has(n);
        match which {
            Truncation::Right => r,
            Truncation::Left => l,
            Truncation::Both => r && l,
        }
    }

    fn check_cap(&self, cap2: &[u32]) -> Result<()> {
        if cap2.len() != self.ctx.n {
            return Err(Error::param(format!("{} caps for n = {}", cap2.len(), self.ctx.n)));
        }
        Ok(())
    }

    /// All generators leaving `x` with `2 w_i <= cap2[i-1]`, sorted by
    /// `(c, pq)`.
    pub fn enumerate_from(&self, x: &IState, cap2: &[u32]) -> Vec<StrandsGen> {
        let mut out = Vec::new();
        let mut pq = vec![(0, 0); self.ctx.n];
        self.extend(x, cap2, 1, 0, &mut pq, &mut out);
        out.sort_by(|a, b| (a.c, &a.pq).cmp(&(b.c, &b.pq)));
        out
    }

    fn extend(&self, x: &IState, cap2: &[u32], i: usize, c: u64, pq: &mut Vec<(u32, u32)>, out: &mut Vec<StrandsGen>) {
        if i > self.ctx.n {
            let g = StrandsGen { x: *x, c, pq: pq.clone() };
            if self.is_valid(&g) {
                out.push(g);
            }
            return;
        }
        let cap = cap2[i - 1];
        let c_max = if self.ctx.in_s(i) { 1 } else { 0 };
        for ci in 0..=c_max {
            if 2 * ci > cap {
                break;
            }
            let rem = cap - 2 * ci;
            for p in 0..=rem {
                if p > 0 && (!x.has(i - 1) || (i >= 2 && pq[i - 2].1 != 0)) {
                    break;
                }
                for q in 0..=rem - p {
                    if q > 0 && !x.has(i) {
                        break;
                    }
                    if p > 0 && q > 0 && (p + q) % 2 == 1 {
                        continue;
                    }
                    pq[i - 1] = (p, q);
                    self.extend(x, cap2, i + 1, c | (ci as u64) << i, pq, out);
                }
            }
        }
        pq[i - 1] = (0, 0);
    }

    /// All generators from `x` to `y` within the per-line caps (doubled).
    /// Far pairs give an empty list.
    pub fn enumerate_basis(&self, x: &IState, y: &IState, cap2: &[u32]) -> Result<Vec<StrandsGen>> {
        self.ctx.check_state(x)?;
        self.ctx.check_state(y)?;
        self.check_cap(cap2)?;
        if far(x, y) {
            return Ok(Vec::new());
        }
        Ok(self
            .enumerate_from(x, cap2)
            .into_iter()
            .filter(|g| g.right_unchecked() == *y)
            .collect())
    }

    /// Convenience wrapper: caps the total doubled weight instead.
    pub fn enumerate_total(&self, x: &IState, y: &IState, total2: u32) -> Result<Vec<StrandsGen>> {
        let all = self.enumerate_basis(x, y, &vec![total2; self.ctx.n])?;
        Ok(all
            .into_iter()
            .filter(|g| g.weight2().iter().sum::<u32>() <= total2)
            .collect())
    }
}

/// Serializable form used by the CLI.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenRecord {
    pub x: Vec<usize>,
    pub c: Vec<usize>,
    pub pq: Vec<[u32; 2]>,
}

impl From<&StrandsGen> for GenRecord {
    fn from(g: &StrandsGen) -> Self {
        GenRecord {
            x: g.x.members(),
            c: (1..=g.n()).filter(|&i| g.has_c(i)).collect(),
            pq: g.pq.iter().map(|&(p, q)| [p, q]).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(n: usize, m: &[usize]) -> IState {
        IState::new(n, m).unwrap()
    }

    fn gen(x: IState, c: &[usize], cols: &[(usize, u32, u32)]) -> StrandsGen {
        let mut g = StrandsGen::idempotent(x);
        for &i in c {
            g.c |= 1 << i;
        }
        for &(i, p, q) in cols {
            g.pq[i - 1] = (p, q);
        }
        g
    }

    fn alg(n: usize, k: usize, s: &[usize]) -> StrandsAlgebra {
        StrandsAlgebra::new(Ctx::new(n, k, s).unwrap())
    }

    #[test]
    fn validation_examples() {
        let a = alg(5, 6, &[2, 4, 5]);
        let g = gen(IState::full(5), &[2, 4, 5], &[(1, 1, 9), (3, 0, 2), (5, 1, 1)]);
        assert!(a.validate(&g).is_ok());

        let a = alg(2, 2, &[]);
        let g = gen(st(2, &[0, 1]), &[], &[(1, 0, 1), (2, 1, 0)]);
        assert_eq!(a.validate(&g), Err(Error::InvalidGenerator { cond: "two strands start in one region", at: 1 }));

        let a = alg(1, 1, &[]);
        let g = gen(st(1, &[0]), &[], &[(1, 1, 0)]);
        assert_eq!(a.validate(&g).unwrap(), st(1, &[1]));

        let g = gen(st(1, &[0]), &[1], &[]);
        assert_eq!(a.validate(&g), Err(Error::InvalidGenerator { cond: "C outside S", at: 1 }));
    }

    #[test]
    fn idempotents() {
        let a = alg(2, 2, &[]);
        let jx = a.idempotent(&st(2, &[0, 2])).unwrap();
        let jy = a.idempotent(&st(2, &[0, 1])).unwrap();
        assert_eq!(a.mul_raw(&jx, &jx), Some(jx.clone()));
        assert_eq!(a.mul_raw(&jx, &jy), None);
    }

    #[test]
    fn product_examples() {
        let a = alg(2, 2, &[]);
        let x = st(2, &[0, 2]);
        let r1 = gen(x, &[], &[(1, 1, 0)]);
        let y = a.validate(&r1).unwrap();
        let down2 = gen(y, &[], &[(2, 0, 2)]);
        assert_eq!(a.mul_raw(&r1, &down2), Some(gen(x, &[], &[(1, 1, 0), (2, 0, 2)])));

        let a = alg(2, 1, &[]);
        let r1 = gen(st(2, &[0]), &[], &[(1, 1, 0)]);
        let r2 = gen(st(2, &[1]), &[], &[(2, 1, 0)]);
        assert_eq!(a.mul_raw(&r1, &r2), None);

        let a = alg(1, 2, &[1]);
        let x = IState::full(1);
        let up = gen(x, &[], &[(1, 2, 0)]);
        let down = gen(x, &[], &[(1, 0, 2)]);
        assert_eq!(a.mul_raw(&up, &down), None);
        let c = gen(x, &[1], &[]);
        assert_eq!(a.mul_raw(&c, &c), None);
    }

    #[test]
    fn square_of_u_image() {
        let a = alg(1, 2, &[]);
        let x = IState::full(1);
        let u: StrandsElement = [gen(x, &[], &[(1, 2, 0)]), gen(x, &[], &[(1, 0, 2)])].into_iter().collect();
        let u2: StrandsElement = [gen(x, &[], &[(1, 4, 0)]), gen(x, &[], &[(1, 0, 4)])].into_iter().collect();
        assert_eq!(a.mul(&u, &u).unwrap(), u2);
        assert!(a.mul(&u, &Chain::zero()).unwrap().is_zero());
    }

    #[test]
    fn differential_examples() {
        let a = alg(2, 3, &[1, 2]);
        let x = IState::full(2);
        // Neighbour columns clear: line 1 has q_0 = 0 and p_2 = 0.
        assert_eq!(a.d0(&gen(x, &[], &[(1, 2, 0)]), 1), vec![gen(x, &[], &[(1, 1, 1)])]);
        assert_eq!(
            a.d0(&gen(x, &[], &[(1, 4, 0)]), 1),
            vec![gen(x, &[], &[(1, 1, 3)]), gen(x, &[], &[(1, 3, 1)])]
        );
        assert!(a.d0(&StrandsGen::idempotent(x), 1).is_empty());

        assert_eq!(
            a.dc(&gen(x, &[1], &[]), 1),
            vec![gen(x, &[], &[(1, 2, 0)]), gen(x, &[], &[(1, 0, 2)])]
        );
        assert_eq!(a.dc(&gen(x, &[1], &[(1, 3, 1)]), 1), vec![gen(x, &[], &[(1, 5, 1)])]);
        assert!(a.dc(&gen(x, &[], &[(1, 3, 1)]), 1).is_empty());

        let a = alg(1, 0, &[1]);
        let empty = st(1, &[]);
        assert!(a.diff_gen(&gen(empty, &[1], &[])).is_zero());
        assert!(a.diff_gen(&StrandsGen::idempotent(empty)).is_zero());
    }

    #[test]
    fn grading_examples() {
        let a = alg(1, 1, &[]);
        let g = gen(st(1, &[1]), &[], &[(1, 1, 9)]);
        let gr = a.grade(&g);
        assert_eq!(gr.maslov, -1);
        assert_eq!(gr.refined2, vec![10]);
        assert_eq!(gr.unrefined, vec![(5, 5)]);

        let a = alg(1, 1, &[1]);
        let gr = a.grade(&gen(st(1, &[1]), &[], &[(1, 0, 2)]));
        assert_eq!((gr.maslov, gr.refined2[0]), (-2, 2));
        assert_eq!(a.grade(&StrandsGen::idempotent(st(1, &[1]))), Grading::zero(1));
    }

    #[test]
    fn minimal_generators() {
        let a = alg(5, 4, &[]);
        let x = st(5, &[0, 1, 2, 5]);
        let y = st(5, &[0, 2, 3, 4]);
        assert_eq!(a.g_min(&x, &y).unwrap(), gen(x, &[], &[(2, 1, 0), (3, 1, 0), (5, 0, 1)]));
        assert_eq!(a.g_min(&x, &x).unwrap(), StrandsGen::idempotent(x));
        assert!(a.g_min(&st(5, &[0, 1, 2, 3]), &st(5, &[0, 1, 2, 5])).is_err());
    }

    #[test]
    fn symmetries() {
        let a = alg(2, 2, &[1]);
        let x = IState::full(2).without(0);
        let g = gen(x, &[1], &[(2, 3, 1)]);
        assert!(a.is_valid(&g));
        let r = a.rho(&g);
        assert_eq!(r, gen(x.rho(), &[2], &[(1, 1, 3)]));
        assert_eq!(StrandsAlgebra::new(a.ctx.rho()).rho(&r), g);

        let a = alg(1, 1, &[]);
        let up = gen(st(1, &[0]), &[], &[(1, 1, 0)]);
        assert_eq!(a.o(&up), gen(st(1, &[1]), &[], &[(1, 0, 1)]));
        assert_eq!(a.o(&a.o(&up)), up);
        // Even columns stay put; swapping them would leave the idempotent.
        let wrap = gen(st(1, &[0]), &[], &[(1, 2, 0)]);
        assert_eq!(a.o(&wrap), wrap);
    }

    #[test]
    fn truncations() {
        let a = alg(2, 2, &[]);
        assert!(a.in_truncation(&StrandsGen::idempotent(st(2, &[1, 2])), Truncation::Right));
        let a = alg(1, 1, &[]);
        assert!(!a.in_truncation(&StrandsGen::idempotent(st(1, &[0])), Truncation::Right));
        let down = gen(st(1, &[1]), &[], &[(1, 0, 1)]);
        assert!(!a.in_truncation(&down, Truncation::Right));
        assert!(!a.in_truncation(&down, Truncation::Left));
    }

    #[test]
    fn enumeration_examples() {
        let a = alg(1, 1, &[]);
        let x = st(1, &[0]);
        let basis = a.enumerate_basis(&x, &x, &[4]).unwrap();
        let cols: Vec<_> = basis.iter().map(|g| g.pq[0]).collect();
        assert_eq!(cols, vec![(0, 0), (2, 0), (4, 0)]);

        let a = alg(2, 1, &[]);
        assert!(a.enumerate_basis(&st(2, &[0]), &st(2, &[2]), &[6, 6]).unwrap().is_empty());

        let a = alg(1, 2, &[]);
        let x = IState::full(1);
        for r in 0..5u32 {
            let n = a
                .enumerate_basis(&x, &x, &[2 * r])
                .unwrap()
                .iter()
                .filter(|g| g.weight2()[0] == 2 * r)
                .count();
            assert_eq!(n as u32, 2 * r + 1);
        }
    }
}
