//! Piecewise homology over F2.
//!
//! Both differentials preserve the idempotent pair and the refined weight,
//! so each algebra splits into finite complexes indexed by `(x, y, w)`.
//! These pieces are independent and are swept in parallel.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Debug;
use std::hash::Hash;

use crate::chain::Chain;
use crate::combinatorics::{classify, far, v, IState};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::f2linalg::{self, Echelon, F2Matrix};
use crate::grading::half;
use crate::osz::{OsGen, OszAlgebra};
use crate::phi::Phi;
use crate::report::Report;
use crate::strands::{Ctx, StrandsAlgebra, StrandsGen};

/// What the homology engine needs from an algebra.
pub trait DgAlgebra: Sync {
    type Gen: Ord + Clone + Hash + Debug + Send + Sync;
    fn ctx(&self) -> Ctx;
    fn basis(&self, x: &IState, y: &IState, cap2: &[u32]) -> Vec<Self::Gen>;
    fn differential(&self, g: &Self::Gen) -> Chain<Self::Gen>;
    fn maslov(&self, g: &Self::Gen) -> i64;
    fn weight2(&self, g: &Self::Gen) -> Vec<u32>;
}

impl DgAlgebra for StrandsAlgebra {
    type Gen = StrandsGen;
    fn ctx(&self) -> Ctx {
        self.ctx
    }
    fn basis(&self, x: &IState, y: &IState, cap2: &[u32]) -> Vec<StrandsGen> {
        self.enumerate_basis(x, y, cap2).expect("states from this context")
    }
    fn differential(&self, g: &StrandsGen) -> Chain<StrandsGen> {
        self.diff_gen(g)
    }
    fn maslov(&self, g: &StrandsGen) -> i64 {
        self.grade(g).maslov
    }
    fn weight2(&self, g: &StrandsGen) -> Vec<u32> {
        g.weight2()
    }
}

impl DgAlgebra for OszAlgebra {
    type Gen = OsGen;
    fn ctx(&self) -> Ctx {
        self.ctx
    }
    fn basis(&self, x: &IState, y: &IState, cap2: &[u32]) -> Vec<OsGen> {
        self.enumerate_basis(x, y, cap2).expect("states from this context")
    }
    fn differential(&self, g: &OsGen) -> Chain<OsGen> {
        self.diff_gen(g)
    }
    fn maslov(&self, g: &OsGen) -> i64 {
        self.grade(g).maslov
    }
    fn weight2(&self, g: &OsGen) -> Vec<u32> {
        g.weight2()
    }
}

/// The finite complex of generators from `x` to `y` with refined weight
/// exactly `w`.
#[derive(Clone, Debug)]
pub struct GradedPiece<G> {
    pub x: IState,
    pub y: IState,
    /// Doubled refined weight.
    pub w2: Vec<u32>,
    pub levels: BTreeMap<i64, Vec<G>>,
    /// `boundaries[m]` maps level `m` to level `m - 1`.
    pub boundaries: BTreeMap<i64, F2Matrix>,
}

impl<G: Ord + Clone + Hash + Debug> GradedPiece<G> {
    fn assemble<A: DgAlgebra<Gen = G>>(alg: &A, x: IState, y: IState, w2: Vec<u32>, gens: Vec<G>) -> Result<Self> {
        let mut levels: BTreeMap<i64, Vec<G>> = BTreeMap::new();
        for g in gens {
            levels.entry(alg.maslov(&g)).or_default().push(g);
        }
        let index: HashMap<&G, (i64, usize)> = levels
            .iter()
            .flat_map(|(&m, gs)| gs.iter().enumerate().map(move |(t, g)| (g, (m, t))))
            .collect();
        let mut boundaries = BTreeMap::new();
        for (&m, gs) in &levels {
            let rows = levels.get(&(m - 1)).map_or(0, Vec::len);
            let mut d = F2Matrix::zeros(rows, gs.len());
            for (col, g) in gs.iter().enumerate() {
                for h in alg.differential(g).iter() {
                    match index.get(h) {
                        Some(&(mh, row)) if mh == m - 1 => d.toggle(row, col),
                        _ => {
                            return Err(Error::Consistency(format!("∂{g:?} has the term {h:?} outside the piece")));
                        }
                    }
                }
            }
            boundaries.insert(m, d);
        }
        let piece = GradedPiece { x, y, w2, levels, boundaries };
        for &m in piece.levels.keys() {
            if !piece.d_out(m - 1).mul(&piece.d_out(m))?.is_zero() {
                return Err(Error::Consistency(format!("∂∂ ≠ 0 at Maslov {m}")));
            }
        }
        Ok(piece)
    }

    pub fn dim(&self, m: i64) -> usize {
        self.levels.get(&m).map_or(0, Vec::len)
    }

    /// The boundary leaving level `m`, possibly empty.
    pub fn d_out(&self, m: i64) -> F2Matrix {
        self.boundaries
            .get(&m)
            .cloned()
            .unwrap_or_else(|| F2Matrix::zeros(self.dim(m - 1), self.dim(m)))
    }

    /// The boundary arriving at level `m`.
    pub fn d_in(&self, m: i64) -> F2Matrix {
        self.d_out(m + 1)
    }

    pub fn vector(&self, m: i64, e: &Chain<G>) -> Result<Vec<bool>> {
        let gens = self.levels.get(&m).map(Vec::as_slice).unwrap_or(&[]);
        let mut out = vec![false; gens.len()];
        let mut found = 0;
        for (t, g) in gens.iter().enumerate() {
            if e.contains(g) {
                out[t] = true;
                found += 1;
            }
        }
        if found != e.len() {
            return Err(Error::Consistency(format!("element leaves Maslov level {m} of the piece")));
        }
        Ok(out)
    }

    pub fn element(&self, m: i64, vec: &[bool]) -> Chain<G> {
        self.levels[&m]
            .iter()
            .zip(vec)
            .filter(|(_, &b)| b)
            .map(|(g, _)| g.clone())
            .collect()
    }

    pub fn label(&self) -> String {
        let w: Vec<String> = self.w2.iter().map(|&w| half(w as i64)).collect();
        format!("{}->{} w=({})", self.x, self.y, w.join(","))
    }
}

pub fn graded_piece<A: DgAlgebra>(alg: &A, x: &IState, y: &IState, w2: &[u32]) -> Result<GradedPiece<A::Gen>> {
    let gens = alg
        .basis(x, y, w2)
        .into_iter()
        .filter(|g| alg.weight2(g) == w2)
        .collect();
    GradedPiece::assemble(alg, *x, *y, w2.to_vec(), gens)
}

/// Every nonempty piece from `x` to `y` with weights under the caps.
pub fn pieces<A: DgAlgebra>(alg: &A, x: &IState, y: &IState, cap2: &[u32]) -> Result<Vec<GradedPiece<A::Gen>>> {
    let mut buckets: BTreeMap<Vec<u32>, Vec<A::Gen>> = BTreeMap::new();
    for g in alg.basis(x, y, cap2) {
        buckets.entry(alg.weight2(&g)).or_default().push(g);
    }
    buckets
        .into_iter()
        .map(|(w2, gens)| GradedPiece::assemble(alg, *x, *y, w2, gens))
        .collect()
}

/// Nonzero homology dimensions by Maslov degree.
pub fn homology_dims<G: Ord + Clone + Hash + Debug>(p: &GradedPiece<G>) -> BTreeMap<i64, usize> {
    p.levels
        .keys()
        .filter_map(|&m| {
            let h = p.dim(m) - f2linalg::rank(&p.d_out(m)) - f2linalg::rank(&p.d_in(m));
            (h > 0).then_some((m, h))
        })
        .collect()
}

/// Cycle representatives of a homology basis, by Maslov degree.
pub fn homology_basis<G: Ord + Clone + Hash + Debug>(p: &GradedPiece<G>) -> Result<Vec<(i64, Chain<G>)>> {
    let mut out = Vec::new();
    for &m in p.levels.keys() {
        for z in f2linalg::homology_reps(&p.d_out(m), &p.d_in(m))? {
            out.push((m, p.element(m, &z)));
        }
    }
    Ok(out)
}

/// Whether the cycle `z` at level `m` represents a nonzero class.
pub fn is_nonzero_class<G: Ord + Clone + Hash + Debug>(p: &GradedPiece<G>, m: i64, z: &Chain<G>) -> Result<bool> {
    let v = p.vector(m, z)?;
    if !p.d_out(m).apply(&v).iter().all(|b| !b) {
        return Err(Error::Consistency("not a cycle".into()));
    }
    let d_in = p.d_in(m);
    let mut span = Echelon::new(p.dim(m));
    for c in 0..d_in.cols() {
        let col: Vec<bool> = (0..d_in.rows()).map(|r| d_in.get(r, c)).collect();
        span.insert(&col);
    }
    Ok(!span.contains(&v))
}

/// Closed-form homology of `I_x B(n,k,S) I_y` at refined weight `w`, from
/// the basis `p · γ · ∏ (C_{i_a} p_a / U_{i_a})^{ε_a}`. Zero dimensions are
/// omitted.
pub fn predicted_dims(ctx: &Ctx, x: &IState, y: &IState, w2: &[u32]) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    if far(x, y) {
        return out;
    }
    let n = ctx.n();
    let cls = classify(x, y);
    let with_s: Vec<_> = cls
        .generating
        .iter()
        .filter(|g| g.lines().any(|i| ctx.in_s(i)))
        .copied()
        .collect();
    let s_weight2: i64 = (1..=n).filter(|&i| ctx.in_s(i)).map(|i| w2[i - 1] as i64).sum();
    for eps in 0u64..1 << with_s.len() {
        let mut extra = vec![0i64; n];
        for (a, g) in with_s.iter().enumerate() {
            if eps >> a & 1 == 1 {
                g.lines().for_each(|i| extra[i - 1] += 1);
            }
        }
        let r: Option<Vec<u32>> = (1..=n)
            .map(|i| {
                let r2 = w2[i - 1] as i64 - v(x, y, i).abs() - 2 * extra[i - 1];
                let ok = r2 >= 0 && r2 % 2 == 0 && !(ctx.in_s(i) && r2 > 0);
                ok.then_some((r2 / 2) as u32)
            })
            .collect();
        if let Some(r) = r {
            if cls.divisible(&r).is_none() {
                let m = eps.count_ones() as i64 - s_weight2;
                *out.entry(m).or_insert(0) += 1;
            }
        }
    }
    out
}

/// Comparison of one `(x, y, w)` piece across `Φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceCheck {
    pub label: String,
    pub b_dims: BTreeMap<i64, usize>,
    pub a_dims: BTreeMap<i64, usize>,
    pub predicted: BTreeMap<i64, usize>,
    /// Rank of the induced map on homology, by Maslov degree.
    pub induced_rank: BTreeMap<i64, usize>,
}

impl PieceCheck {
    pub fn bijective(&self) -> bool {
        self.b_dims == self.a_dims && self.b_dims == self.induced_rank
    }

    pub fn ok(&self) -> bool {
        self.bijective() && self.b_dims == self.predicted
    }
}

fn quasi_iso_piece(phi: &Phi, b: &GradedPiece<OsGen>, a: &GradedPiece<StrandsGen>) -> Result<PieceCheck> {
    let mut induced_rank = BTreeMap::new();
    for &m in b.levels.keys() {
        let d_a = a.d_in(m);
        let mut span = Echelon::new(a.dim(m));
        for c in 0..d_a.cols() {
            let col: Vec<bool> = (0..d_a.rows()).map(|r| d_a.get(r, c)).collect();
            span.insert(&col);
        }
        let base = span.rank();
        for z in f2linalg::kernel_basis(&b.d_out(m)) {
            let image = phi.phi_elem(&b.element(m, &z));
            span.insert(&a.vector(m, &image)?);
        }
        if span.rank() > base {
            induced_rank.insert(m, span.rank() - base);
        }
    }
    Ok(PieceCheck {
        label: b.label(),
        b_dims: homology_dims(b),
        a_dims: homology_dims(a),
        predicted: predicted_dims(&phi.a.ctx, &b.x, &b.y, &b.w2),
        induced_rank,
    })
}

/// Not-far idempotent pairs of a context, in lexicographic order.
pub fn pairs(ctx: &Ctx) -> Vec<(IState, IState)> {
    let states = ctx.istates();
    let mut out = Vec::new();
    for x in &states {
        for y in &states {
            if !far(x, y) {
                out.push((*x, *y));
            }
        }
    }
    out
}

/// All piece comparisons for one idempotent pair.
pub fn quasi_iso_pair(phi: &Phi, x: &IState, y: &IState, cap2: &[u32]) -> Result<Vec<PieceCheck>> {
    let b_pieces: BTreeMap<Vec<u32>, GradedPiece<OsGen>> =
        pieces(&phi.b, x, y, cap2)?.into_iter().map(|p| (p.w2.clone(), p)).collect();
    let a_pieces: BTreeMap<Vec<u32>, GradedPiece<StrandsGen>> =
        pieces(&phi.a, x, y, cap2)?.into_iter().map(|p| (p.w2.clone(), p)).collect();
    let weights: BTreeSet<&Vec<u32>> = b_pieces.keys().chain(a_pieces.keys()).collect();
    weights
        .into_iter()
        .map(|w2| {
            let empty_b = || GradedPiece::assemble(&phi.b, *x, *y, w2.clone(), Vec::new());
            let empty_a = || GradedPiece::assemble(&phi.a, *x, *y, w2.clone(), Vec::new());
            let b = b_pieces.get(w2).cloned().map_or_else(empty_b, Ok)?;
            let a = a_pieces.get(w2).cloned().map_or_else(empty_a, Ok)?;
            quasi_iso_piece(phi, &b, &a)
        })
        .collect()
}

/// Checks that `Φ` induces isomorphisms on every piece within the caps, and
/// that both sides match the closed-form count.
pub fn quasi_iso_check(ctx: &Ctx, cap2: &[u32], exec: Exec) -> Report {
    let phi = Phi::new(*ctx);
    let reports = exec.map(pairs(ctx), |(x, y)| {
        let mut r = Report::new();
        match quasi_iso_pair(&phi, &x, &y, cap2) {
            Ok(checks) => {
                for c in checks {
                    r.check(c.ok(), || {
                        format!(
                            "{ctx} {}: H(B)={:?} H(A)={:?} predicted={:?} rank Φ*={:?}",
                            c.label, c.b_dims, c.a_dims, c.predicted, c.induced_rank
                        )
                    });
                }
            }
            Err(e) => r.check(false, || format!("{ctx} {x}->{y}: {e}")),
        }
        r
    });
    Report::merged(reports)
}

/// Homology of every piece of `A` against the closed-form count.
pub fn homology_check(ctx: &Ctx, cap2: &[u32], exec: Exec) -> Report {
    let alg = StrandsAlgebra::new(*ctx);
    let reports = exec.map(pairs(ctx), |(x, y)| {
        let mut r = Report::new();
        let all = match pieces(&alg, &x, &y, cap2) {
            Ok(p) => p,
            Err(e) => {
                r.check(false, || format!("{ctx} {x}->{y}: {e}"));
                return r;
            }
        };
        let mut seen = BTreeSet::new();
        for p in &all {
            seen.insert(p.w2.clone());
            let got = homology_dims(p);
            let want = predicted_dims(ctx, &x, &y, &p.w2);
            r.check(got == want, || format!("{ctx} {}: H={got:?} predicted={want:?}", p.label()));
        }
        // Predicted classes must live in pieces that actually exist.
        for g in OszAlgebra::new(*ctx).enumerate_basis(&x, &y, cap2).unwrap_or_default() {
            let w2 = g.weight2();
            if !seen.contains(&w2) && !predicted_dims(ctx, &x, &y, &w2).is_empty() {
                r.check(false, || format!("{ctx} {x}->{y}: no A-piece at predicted weight {w2:?}"));
            }
        }
        r
    });
    Report::merged(reports)
}
