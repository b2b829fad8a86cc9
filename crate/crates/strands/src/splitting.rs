//! Tensor splitting of `J_x A(n,k) J_y` along crossed lines and
//! generating/edge intervals, and the maximal-Maslov cycles `a^r`.

use std::collections::BTreeMap;

use crate::chain::Chain;
use crate::combinatorics::{classify, v, IState, Interval, IntervalKind};
use crate::error::{Error, Result};
use crate::grading::Grading;
use crate::strands::{Ctx, StrandsAlgebra, StrandsElement, StrandsGen};

/// One interval factor: its position in `[1,n]`, its kind, and a generator
/// of the matching interval algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub interval: Interval,
    pub kind: IntervalKind,
    pub local: StrandsGen,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factorization {
    pub x: IState,
    pub y: IState,
    /// Exponent of `U_i` on each crossed line.
    pub crossed: BTreeMap<usize, u32>,
    pub factors: Vec<Factor>,
}

/// The interval algebra of a given kind and length, with its idempotent:
/// `Ā(l) ⊂ A(l,l-1)` at `[1,l-1]`, `Ā_λ ⊂ A(l,l)` at `[0,l-1]`,
/// `Ā_ρ ⊂ A(l,l)` at `[1,l]`, `Ā_λρ = A(l,l+1)`.
pub fn local_algebra(kind: IntervalKind, l: usize) -> (StrandsAlgebra, IState) {
    let members: Vec<usize> = match kind {
        IntervalKind::Generating => (1..l).collect(),
        IntervalKind::LeftEdge => (0..l).collect(),
        IntervalKind::RightEdge => (1..=l).collect(),
        IntervalKind::TwoFaced => (0..=l).collect(),
    };
    let ctx = Ctx::new(l, members.len(), &[]).expect("interval algebra context");
    (StrandsAlgebra::new(ctx), IState::new(l, &members).expect("interval idempotent"))
}

/// Columns of `g` on `interval`, reindexed to start at line 1.
pub fn restrict(g: &StrandsGen, interval: Interval, kind: IntervalKind) -> Result<StrandsGen> {
    if interval.hi > g.n() || interval.lo == 0 {
        return Err(Error::param(format!("interval {interval} outside [1,{}]", g.n())));
    }
    let (alg, x) = local_algebra(kind, interval.len());
    let local = StrandsGen {
        x,
        c: (g.c >> (interval.lo - 1)) & ((1 << (interval.len() + 1)) - 2),
        pq: g.pq[interval.lo - 1..interval.hi].to_vec(),
    };
    match alg.validate(&local) {
        Ok(y) if y == x => Ok(local),
        _ => Err(Error::param(format!("{interval} is not a {kind:?} interval of this generator"))),
    }
}

pub fn split_psi(ctx: &Ctx, g: &StrandsGen) -> Result<Factorization> {
    if ctx.s_mask() != 0 {
        return Err(Error::Unsupported("splitting is only defined for S = ∅".into()));
    }
    let y = StrandsAlgebra::new(*ctx).validate(g)?;
    let cls = classify(&g.x, &y);
    let crossed = cls
        .crossed
        .iter()
        .map(|&i| {
            let total = g.p(i) + g.q(i);
            debug_assert!(total % 2 == 1);
            (i, (total - 1) / 2)
        })
        .collect();
    let factors = cls
        .intervals(ctx.n())
        .into_iter()
        .map(|(interval, kind)| Ok(Factor { interval, kind, local: restrict(g, interval, kind)? }))
        .collect::<Result<_>>()?;
    Ok(Factorization { x: g.x, y, crossed, factors })
}

pub fn unsplit_phi(ctx: &Ctx, f: &Factorization) -> Result<StrandsGen> {
    let n = ctx.n();
    let malformed = |why: &str| Error::param(format!("malformed factorization: {why}"));
    let cls = classify(&f.x, &f.y);
    if cls.crossed.iter().copied().ne(f.crossed.keys().copied()) {
        return Err(malformed("crossed lines do not match"));
    }
    let intervals = cls.intervals(n);
    if intervals.len() != f.factors.len()
        || intervals.iter().zip(&f.factors).any(|(&(iv, k), fac)| iv != fac.interval || k != fac.kind)
    {
        return Err(malformed("intervals do not match"));
    }
    let mut g = StrandsGen::idempotent(f.x);
    for (&i, &r) in &f.crossed {
        g.pq[i - 1] = if v(&f.x, &f.y, i) > 0 { (1 + 2 * r, 0) } else { (0, 1 + 2 * r) };
    }
    for fac in &f.factors {
        if fac.local.n() != fac.interval.len() {
            return Err(malformed("factor width"));
        }
        g.pq[fac.interval.lo - 1..fac.interval.hi].copy_from_slice(&fac.local.pq);
        g.c |= fac.local.c << (fac.interval.lo - 1);
    }
    match StrandsAlgebra::new(*ctx).validate(&g) {
        Ok(y) if y == f.y => Ok(g),
        _ => Err(malformed("result is not a generator from x to y")),
    }
}

/// The differential on the tensor product: the crossed-line polynomial
/// algebra has none, each interval factor contributes its own.
pub fn diff_factorization(f: &Factorization) -> Chain<Factorization> {
    let mut out = Chain::zero();
    for (slot, fac) in f.factors.iter().enumerate() {
        let (alg, _) = local_algebra(fac.kind, fac.interval.len());
        for local in alg.diff_gen(&fac.local) {
            let mut h = f.clone();
            h.factors[slot].local = local;
            out.toggle(h);
        }
    }
    out
}

/// Gradings of the factorized form, assembled line by line.
pub fn grade_factorization(f: &Factorization) -> Grading {
    let n = f.x.n();
    let mut gr = Grading::zero(n);
    for (&i, &r) in &f.crossed {
        let r = r as i64;
        gr.unrefined[i - 1] = if v(&f.x, &f.y, i) > 0 { (r, r + 1) } else { (r + 1, r) };
        gr.refined2[i - 1] = 2 * r + 1;
    }
    for fac in &f.factors {
        let (alg, _) = local_algebra(fac.kind, fac.interval.len());
        let local = alg.grade(&fac.local);
        gr.maslov += local.maslov;
        for (t, i) in fac.interval.lines().enumerate() {
            gr.unrefined[i - 1] = local.unrefined[t];
            gr.refined2[i - 1] = local.refined2[t];
        }
    }
    gr.alex2 = gr.refined2.iter().sum();
    gr
}

/// `a^r = J · ∏_{r_i ≠ 0} ([2r_i/0]_i + [0/2r_i]_i) · J` in the interval
/// algebra of `kind`, computed as an honest product.
pub fn max_maslov_cycle(kind: IntervalKind, r: &[u32]) -> (StrandsAlgebra, StrandsElement) {
    let (alg, x) = local_algebra(kind, r.len());
    let mut e = Chain::single(StrandsGen::idempotent(x));
    for (t, &ri) in r.iter().enumerate() {
        if ri == 0 {
            continue;
        }
        let factor: StrandsElement = [(2 * ri, 0), (0, 2 * ri)]
            .into_iter()
            .map(|col| {
                let mut g = StrandsGen::idempotent(x);
                g.pq[t] = col;
                g
            })
            .filter(|g| alg.is_valid(g))
            .collect();
        e = alg.mul_chain(&e, &factor);
    }
    (alg, e)
}
