//! The algebra `B(n,k,S)` in normal form.
//!
//! Every nonzero homogeneous piece `I_x B I_y` of fixed `C`-content and
//! Alexander multidegree is at most one-dimensional, spanned by
//! `U^r C^c γ_{x,y}`. A basis element is therefore the tuple `(x, y, c, r)`
//! with `U^r` not divisible by `p_G` for any generating interval `G` of
//! `(x, y)`. Products add exponents plus the weight lost by shortcutting
//! `γ_{x,y} γ_{y,z}` to `γ_{x,z}`.

use serde::{Deserialize, Serialize};

use crate::chain::Chain;
use crate::combinatorics::{classify, far, v, IState, Label, LabelKind};
use crate::error::{Error, Result};
use crate::grading::Grading;
use crate::strands::{reverse_lines, Ctx};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OsGen {
    pub x: IState,
    pub y: IState,
    /// Bit `i` set iff `C_i` divides the generator.
    pub c: u64,
    /// `r[i-1]` is the exponent of `U_i`.
    pub r: Vec<u32>,
}

impl OsGen {
    pub fn idempotent(x: IState) -> Self {
        OsGen { x, y: x, c: 0, r: vec![0; x.n()] }
    }

    pub fn n(&self) -> usize {
        self.r.len()
    }

    pub fn has_c(&self, i: usize) -> bool {
        self.c >> i & 1 == 1
    }

    /// Doubled refined weights `2 r_i + 2 c(i) + |v_i|`.
    pub fn weight2(&self) -> Vec<u32> {
        (1..=self.n())
            .map(|i| 2 * self.r[i - 1] + 2 * self.has_c(i) as u32 + v(&self.x, &self.y, i).unsigned_abs() as u32)
            .collect()
    }
}

pub type OsElement = Chain<OsGen>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OszAlgebra {
    pub ctx: Ctx,
}

impl OszAlgebra {
    pub fn new(ctx: Ctx) -> Self {
        OszAlgebra { ctx }
    }

    fn check_state(&self, x: &IState) -> Result<()> {
        if x.n() != self.ctx.n() || x.len() != self.ctx.k() {
            return Err(Error::param(format!("{x} is not in V({},{})", self.ctx.n(), self.ctx.k())));
        }
        Ok(())
    }

    pub fn validate(&self, g: &OsGen) -> Result<()> {
        self.check_state(&g.x)?;
        self.check_state(&g.y)?;
        if g.r.len() != self.ctx.n() {
            return Err(Error::param(format!("{} exponents for n = {}", g.r.len(), self.ctx.n())));
        }
        if far(&g.x, &g.y) {
            return Err(Error::Far { x: g.x.to_string(), y: g.y.to_string() });
        }
        if let Some(i) = (1..=self.ctx.n()).find(|&i| g.has_c(i) && !self.ctx.in_s(i)) {
            return Err(Error::InvalidGenerator { cond: "C outside S", at: i });
        }
        if let Some(iv) = classify(&g.x, &g.y).divisible(&g.r) {
            return Err(Error::Divisible { lo: iv.lo, hi: iv.hi });
        }
        Ok(())
    }

    pub fn is_valid(&self, g: &OsGen) -> bool {
        self.validate(g).is_ok()
    }

    /// `(x, y, c, r)` if it is a normal form, `None` if `U^r` is killed.
    /// Assumes a not-far pair.
    pub fn normal(&self, x: IState, y: IState, c: u64, r: Vec<u32>) -> Option<OsGen> {
        if classify(&x, &y).divisible(&r).is_some() {
            None
        } else {
            Some(OsGen { x, y, c, r })
        }
    }

    pub fn gamma_generator(&self, x: &IState, y: &IState) -> Result<OsGen> {
        self.check_state(x)?;
        self.check_state(y)?;
        if far(x, y) {
            return Err(Error::Far { x: x.to_string(), y: y.to_string() });
        }
        Ok(OsGen { x: *x, y: *y, c: 0, r: vec![0; self.ctx.n()] })
    }

    /// Product of two normal forms; no context checks.
    pub fn mul_raw(&self, a: &OsGen, b: &OsGen) -> Option<OsGen> {
        if a.y != b.x || a.c & b.c != 0 || far(&a.x, &b.y) {
            return None;
        }
        let r = (1..=self.ctx.n())
            .map(|i| {
                let lost = v(&a.x, &a.y, i).abs() + v(&b.x, &b.y, i).abs() - v(&a.x, &b.y, i).abs();
                assert!(lost >= 0 && lost % 2 == 0, "weight transfer {lost} on line {i}");
                a.r[i - 1] + b.r[i - 1] + (lost / 2) as u32
            })
            .collect();
        self.normal(a.x, b.y, a.c | b.c, r)
    }

    pub fn mul_gen(&self, a: &OsGen, b: &OsGen) -> Result<OsElement> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(self.mul_raw(a, b).into_iter().collect())
    }

    pub fn mul_chain(&self, a: &OsElement, b: &OsElement) -> OsElement {
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

    pub fn mul(&self, a: &OsElement, b: &OsElement) -> Result<OsElement> {
        for g in a.iter().chain(b.iter()) {
            self.validate(g)?;
        }
        Ok(self.mul_chain(a, b))
    }

    /// The basis element carried by a single edge leaving `x`.
    pub fn letter(&self, x: &IState, label: Label) -> Result<OsElement> {
        let illegal = || Error::IllegalMove { label: label.to_string(), state: x.to_string() };
        let target = label.step(x).ok_or_else(illegal)?;
        let n = self.ctx.n();
        let i = label.index;
        Ok(match label.kind {
            LabelKind::R | LabelKind::L => Chain::single(OsGen { x: *x, y: target, c: 0, r: vec![0; n] }),
            LabelKind::U => {
                let mut r = vec![0; n];
                r[i - 1] = 1;
                self.normal(*x, *x, 0, r).into_iter().collect()
            }
            LabelKind::C => {
                if !self.ctx.in_s(i) {
                    return Err(illegal());
                }
                Chain::single(OsGen { x: *x, y: *x, c: 1 << i, r: vec![0; n] })
            }
        })
    }

    /// Right-multiplies every term by the edge `label` at its right idempotent.
    pub fn apply_letter(&self, e: &OsElement, label: Label) -> Result<OsElement> {
        let mut out = Chain::zero();
        for g in e.iter() {
            let step = self.letter(&g.y, label)?;
            out += &self.mul_chain(&Chain::single(g.clone()), &step);
        }
        Ok(out)
    }

    /// The class of a path given by its labels, starting at `x`.
    pub fn evaluate_path(&self, x: &IState, labels: &[Label]) -> Result<OsElement> {
        self.check_state(x)?;
        let mut e = Chain::single(OsGen::idempotent(*x));
        let mut at = *x;
        for &label in labels {
            let next = label
                .step(&at)
                .ok_or_else(|| Error::IllegalMove { label: label.to_string(), state: at.to_string() })?;
            e = self.apply_letter(&e, label)?;
            at = next;
        }
        Ok(e)
    }

    pub fn diff_gen(&self, g: &OsGen) -> OsElement {
        let mut out = Chain::zero();
        for i in 1..=self.ctx.n() {
            if g.has_c(i) {
                let mut r = g.r.clone();
                r[i - 1] += 1;
                if let Some(h) = self.normal(g.x, g.y, g.c & !(1 << i), r) {
                    out.toggle(h);
                }
            }
        }
        out
    }

    pub fn diff(&self, a: &OsElement) -> OsElement {
        let mut out = Chain::zero();
        for g in a.iter() {
            out += &self.diff_gen(g);
        }
        out
    }

    pub fn grade(&self, g: &OsGen) -> Grading {
        let n = self.ctx.n();
        let mut gr = Grading::zero(n);
        let mut s_weight2 = 0;
        for i in 1..=n {
            let base = g.r[i - 1] as i64 + g.has_c(i) as i64;
            let vi = v(&g.x, &g.y, i);
            let w2 = 2 * base + vi.abs();
            gr.unrefined[i - 1] = (base + vi.max(0), base + (-vi).max(0));
            gr.refined2[i - 1] = w2;
            if self.ctx.in_s(i) {
                s_weight2 += w2;
                gr.alex2 -= w2;
            } else {
                gr.alex2 += w2;
            }
        }
        gr.maslov = g.c.count_ones() as i64 - s_weight2;
        gr
    }

    /// Index reversal; the image lives in `B(n,k,ρ(S))`.
    pub fn rho(&self, g: &OsGen) -> OsGen {
        let n = self.ctx.n();
        OsGen {
            x: g.x.rho(),
            y: g.y.rho(),
            c: reverse_lines(n, g.c),
            r: g.r.iter().rev().copied().collect(),
        }
    }

    /// The opposite-algebra symmetry.
    pub fn o(&self, g: &OsGen) -> OsGen {
        OsGen { x: g.y, y: g.x, ..g.clone() }
    }

    /// All normal forms from `x` to `y` with `2 w_i <= cap2[i-1]`, sorted by
    /// `(c, r)`.
    pub fn enumerate_basis(&self, x: &IState, y: &IState, cap2: &[u32]) -> Result<Vec<OsGen>> {
        self.check_state(x)?;
        self.check_state(y)?;
        let n = self.ctx.n();
        if cap2.len() != n {
            return Err(Error::param(format!("{} caps for n = {n}", cap2.len())));
        }
        if far(x, y) {
            return Ok(Vec::new());
        }
        let cls = classify(x, y);
        let vabs: Vec<u32> = (1..=n).map(|i| v(x, y, i).unsigned_abs() as u32).collect();
        let mut out = Vec::new();
        let s = self.ctx.s_mask();
        // Subsets of S by the standard submask walk.
        let mut c = s;
        loop {
            let room: Option<Vec<u32>> = (1..=n)
                .map(|i| {
                    let used = vabs[i - 1] + 2 * (c >> i & 1) as u32;
                    cap2[i - 1].checked_sub(used).map(|left| left / 2)
                })
                .collect();
            if let Some(room) = room {
                let mut r = vec![0u32; n];
                loop {
                    if cls.divisible(&r).is_none() {
                        out.push(OsGen { x: *x, y: *y, c, r: r.clone() });
                    }
                    // Odometer over 0..=room.
                    let Some(i) = (0..n).find(|&i| r[i] < room[i]) else { break };
                    r[i] += 1;
                    r[..i].iter_mut().for_each(|e| *e = 0);
                }
            }
            if c == 0 {
                break;
            }
            c = (c - 1) & s;
        }
        out.sort_by(|a, b| (a.c, &a.r).cmp(&(b.c, &b.r)));
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OsRecord {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub c: Vec<usize>,
    pub r: Vec<u32>,
}

impl From<&OsGen> for OsRecord {
    fn from(g: &OsGen) -> Self {
        OsRecord {
            x: g.x.members(),
            y: g.y.members(),
            c: (1..=g.n()).filter(|&i| g.has_c(i)).collect(),
            r: g.r.clone(),
        }
    }
}
