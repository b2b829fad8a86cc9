//! The dg homomorphism `Φ: B(n,k,S) → A(n,k,S)`.

use crate::chain::Chain;
use crate::combinatorics::{classify, gamma, v, IState, Label, LabelKind};
use crate::error::{Error, Result};
use crate::report::Report;
use crate::osz::{OsElement, OsGen, OszAlgebra};
use crate::strands::{Ctx, StrandsAlgebra, StrandsElement, StrandsGen};

#[derive(Clone, Copy, Debug)]
pub struct Phi {
    pub a: StrandsAlgebra,
    pub b: OszAlgebra,
}

pub type PhiReport = Report;

fn column(x: IState, c: u64, i: usize, col: (u32, u32)) -> StrandsGen {
    let mut g = StrandsGen::idempotent(x);
    g.c = c;
    g.pq[i - 1] = col;
    g
}

impl Phi {
    pub fn new(ctx: Ctx) -> Self {
        Phi { a: StrandsAlgebra::new(ctx), b: OszAlgebra::new(ctx) }
    }

    pub fn phi_label(&self, x: &IState, label: Label) -> Result<StrandsElement> {
        let illegal = || Error::IllegalMove { label: label.to_string(), state: x.to_string() };
        label.step(x).ok_or_else(illegal)?;
        let i = label.index;
        Ok(match label.kind {
            LabelKind::R => Chain::single(column(*x, 0, i, (1, 0))),
            LabelKind::L => Chain::single(column(*x, 0, i, (0, 1))),
            LabelKind::U => {
                let mut e = Chain::zero();
                if x.has(i - 1) {
                    e.toggle(column(*x, 0, i, (2, 0)));
                }
                if x.has(i) {
                    e.toggle(column(*x, 0, i, (0, 2)));
                }
                e
            }
            LabelKind::C => {
                if !self.a.ctx.in_s(i) {
                    return Err(illegal());
                }
                Chain::single(column(*x, 1 << i, i, (0, 0)))
            }
        })
    }

    /// Product of the letter images along a path from `x`.
    pub fn phi_word(&self, x: &IState, labels: &[Label]) -> Result<StrandsElement> {
        let mut e = Chain::single(StrandsGen::idempotent(*x));
        let mut at = *x;
        for &label in labels {
            e = self.a.mul_chain(&e, &self.phi_label(&at, label)?);
            at = label.step(&at).expect("checked by phi_label");
        }
        Ok(e)
    }

    /// `Φ` on a normal form, by multiplying letter images: `γ_{x,y}` first,
    /// then the `U` and `C` loops at `x` on the left.
    pub fn phi_basis(&self, g: &OsGen) -> StrandsElement {
        let mut e = self.phi_word(&g.x, &gamma(&g.x, &g.y)).expect("γ is a legal path");
        for i in 1..=g.n() {
            let u = self.phi_label(&g.x, Label::u(i)).expect("U loops always exist");
            for _ in 0..g.r[i - 1] {
                e = self.a.mul_chain(&u, &e);
            }
            if g.has_c(i) {
                let c = self.phi_label(&g.x, Label::c(i)).expect("c ⊆ S");
                e = self.a.mul_chain(&c, &e);
            }
        }
        e
    }

    /// `Φ` on a normal form via the explicit product of columns.
    pub fn phi_closed_form(&self, g: &OsGen) -> StrandsElement {
        let n = g.n();
        let cls = classify(&g.x, &g.y);
        // Each line offers one or two columns; expand the product.
        let choices: Vec<Vec<(u32, u32)>> = (1..=n)
            .map(|i| {
                let r = g.r[i - 1];
                match v(&g.x, &g.y, i) {
                    1 => vec![(1 + 2 * r, 0)],
                    -1 => vec![(0, 1 + 2 * r)],
                    _ if r == 0 => vec![(0, 0)],
                    _ => {
                        debug_assert!(!cls.is_crossed(i));
                        vec![(2 * r, 0), (0, 2 * r)]
                    }
                }
            })
            .collect();
        let mut out = Chain::zero();
        for pq in itertools::Itertools::multi_cartesian_product(choices.into_iter().map(|c| c.into_iter())) {
            let h = StrandsGen { x: g.x, c: g.c, pq };
            if self.a.validate(&h) == Ok(g.y) {
                out.toggle(h);
            }
        }
        out
    }

    pub fn phi_elem(&self, e: &OsElement) -> StrandsElement {
        let mut out = Chain::zero();
        for g in e.iter() {
            out += &self.phi_closed_form(g);
        }
        out
    }

    /// Evaluates every relation instance at every state, on both sides of
    /// `Φ`.
    pub fn relation_check(&self) -> PhiReport {
        let mut report = PhiReport::default();
        for x in self.a.ctx.istates() {
            for (lhs, rhs) in relation_instances(&self.a.ctx, &x) {
                report.checked += 1;
                let lb = self.b.evaluate_path(&x, &lhs);
                let rb = match &rhs {
                    Some(w) => self.b.evaluate_path(&x, w),
                    None => Ok(Chain::zero()),
                };
                let la = self.phi_word(&x, &lhs);
                let ra = match &rhs {
                    Some(w) => self.phi_word(&x, w),
                    None => Ok(Chain::zero()),
                };
                let words = || {
                    let w = |l: &[Label]| l.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ");
                    format!("{} = {} at {x}", w(&lhs), rhs.as_deref().map_or("0".into(), w))
                };
                match (lb, rb, la, ra) {
                    (Ok(lb), Ok(rb), Ok(la), Ok(ra)) => {
                        if lb != rb {
                            report.failures.push(format!("B: {}", words()));
                        }
                        if la != ra {
                            report.failures.push(format!("A: {}", words()));
                        }
                    }
                    _ => report.failures.push(format!("illegal word: {}", words())),
                }
            }
        }
        report
    }
}

type Word = Vec<Label>;

fn legal(x: &IState, w: &[Label]) -> bool {
    let mut at = *x;
    for l in w {
        match l.step(&at) {
            Some(next) => at = next,
            None => return false,
        }
    }
    true
}

/// The defining relations of `B`, instantiated at `x`. A missing right-hand
/// side means the word is zero.
pub fn relation_instances(ctx: &Ctx, x: &IState) -> Vec<(Word, Option<Word>)> {
    let n = ctx.n();
    let mut out: Vec<(Word, Option<Word>)> = Vec::new();
    let mut push = |lhs: Word, rhs: Option<Word>| {
        if legal(x, &lhs) && rhs.as_ref().is_none_or(|r| legal(x, r)) {
            out.push((lhs, rhs));
        }
    };
    let moves: Vec<Label> = (1..=n).flat_map(|i| [Label::r(i), Label::l(i)]).collect();
    let mut letters = moves.clone();
    letters.extend((1..=n).map(Label::u));
    letters.extend(ctx.s_lines().into_iter().map(Label::c));

    for i in 1..=n {
        push(vec![Label::r(i), Label::l(i)], Some(vec![Label::u(i)]));
        push(vec![Label::l(i), Label::r(i)], Some(vec![Label::u(i)]));
        if !x.has(i - 1) && !x.has(i) {
            push(vec![Label::u(i)], None);
        }
        if i < n {
            push(vec![Label::r(i), Label::r(i + 1)], None);
            push(vec![Label::l(i + 1), Label::l(i)], None);
        }
    }
    for &a in &moves {
        for &b in &moves {
            if a.index.abs_diff(b.index) > 1 {
                push(vec![a, b], Some(vec![b, a]));
            }
        }
    }
    for &central in letters.iter().filter(|l| matches!(l.kind, LabelKind::U | LabelKind::C)) {
        for &a in &letters {
            if a != central {
                push(vec![central, a], Some(vec![a, central]));
            }
        }
    }
    for i in ctx.s_lines() {
        push(vec![Label::c(i), Label::c(i)], None);
    }
    out
}
