//! Exhaustive and sampled verification sweeps.
//!
//! Each suite returns a [`Report`]; the sweep bounds are fixed per suite and
//! clipped by `n_max`. Per-line caps are weights, so `cap 3` means
//! `2 w_i <= 6`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Debug};
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::chain::Chain;
use crate::combinatorics::{IState, IntervalKind};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::f2linalg::Echelon;
use crate::grading::Grading;
use crate::groups::{self, deg_prime, deg_prime_from_diagram, GPrime, HomologyClass, SectionRule};
use crate::homology::{self, graded_piece, homology_dims, is_nonzero_class};
use crate::osz::{OsGen, OszAlgebra};
use crate::phi::Phi;
use crate::report::Report;
use crate::splitting::{
    diff_factorization, grade_factorization, local_algebra, max_maslov_cycle, split_psi, unsplit_phi, Factor,
    Factorization,
};
use crate::strands::{Ctx, StrandsAlgebra, StrandsGen, Truncation};
use crate::text;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    D2,
    Laws,
    Gradings,
    Groups,
    Splitting,
    Interval,
    Homology,
    QuasiIso,
    Relations,
    Symmetries,
    ClosedForm,
    Text,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::D2,
        Suite::Laws,
        Suite::Gradings,
        Suite::Groups,
        Suite::Splitting,
        Suite::Interval,
        Suite::Homology,
        Suite::QuasiIso,
        Suite::Relations,
        Suite::Symmetries,
        Suite::ClosedForm,
        Suite::Text,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::D2 => "d2",
            Suite::Laws => "laws",
            Suite::Gradings => "gradings",
            Suite::Groups => "groups",
            Suite::Splitting => "splitting",
            Suite::Interval => "interval",
            Suite::Homology => "homology",
            Suite::QuasiIso => "quasi-iso",
            Suite::Relations => "relations",
            Suite::Symmetries => "symmetries",
            Suite::ClosedForm => "closed-form",
            Suite::Text => "text",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::param(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub n_max: usize,
    pub exec: Exec,
    pub seed: u64,
    /// Random triples drawn at `n = 3` by the law suites.
    pub samples: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { n_max: 3, exec: Exec::default(), seed: 0, samples: 10_000 }
    }
}

pub fn run_suite(suite: Suite, opts: &Options) -> Report {
    match suite {
        Suite::D2 => d2(opts),
        Suite::Laws => laws(opts),
        Suite::Gradings => gradings(opts),
        Suite::Groups => group_gradings(opts),
        Suite::Splitting => splitting(opts),
        Suite::Interval => interval_homology(opts),
        Suite::Homology => full_homology(opts),
        Suite::QuasiIso => quasi_iso(opts),
        Suite::Relations => relations(opts),
        Suite::Symmetries => symmetries(opts),
        Suite::ClosedForm => closed_form(opts),
        Suite::Text => text_round_trip(opts),
    }
}

/// Every `(n, k, S)` with `n <= n_max`.
pub fn contexts(n_max: usize) -> Vec<Ctx> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for k in 0..=n + 1 {
            for s in Ctx::all_s_masks(n) {
                out.push(Ctx::from_mask(n, k, s).expect("valid context"));
            }
        }
    }
    out
}

fn caps(ctx: &Ctx, w: u32) -> Vec<u32> {
    vec![2 * w; ctx.n()]
}

/// What the law sweeps need from either algebra.
trait LawAlgebra: Sync {
    type G: Ord + Clone + Debug + Send + Sync;
    fn ctx(&self) -> Ctx;
    fn gens(&self, cap2: &[u32]) -> Vec<Self::G>;
    fn left(&self, g: &Self::G) -> IState;
    fn right(&self, g: &Self::G) -> IState;
    fn valid(&self, g: &Self::G) -> bool;
    fn mul(&self, a: &Self::G, b: &Self::G) -> Option<Self::G>;
    fn diff(&self, g: &Self::G) -> Chain<Self::G>;
    fn grade(&self, g: &Self::G) -> Grading;

    fn mul_chain(&self, a: &Chain<Self::G>, b: &Chain<Self::G>) -> Chain<Self::G> {
        let mut out = Chain::zero();
        for g in a.iter() {
            for h in b.iter() {
                if let Some(gh) = self.mul(g, h) {
                    out.toggle(gh);
                }
            }
        }
        out
    }

    fn diff_chain(&self, a: &Chain<Self::G>) -> Chain<Self::G> {
        let mut out = Chain::zero();
        for g in a.iter() {
            out += &self.diff(g);
        }
        out
    }
}

impl LawAlgebra for StrandsAlgebra {
    type G = StrandsGen;
    fn ctx(&self) -> Ctx {
        self.ctx
    }
    fn gens(&self, cap2: &[u32]) -> Vec<StrandsGen> {
        self.ctx.istates().iter().flat_map(|x| self.enumerate_from(x, cap2)).collect()
    }
    fn left(&self, g: &StrandsGen) -> IState {
        g.x
    }
    fn right(&self, g: &StrandsGen) -> IState {
        g.right_unchecked()
    }
    fn valid(&self, g: &StrandsGen) -> bool {
        self.is_valid(g)
    }
    fn mul(&self, a: &StrandsGen, b: &StrandsGen) -> Option<StrandsGen> {
        self.mul_raw(a, b)
    }
    fn diff(&self, g: &StrandsGen) -> Chain<StrandsGen> {
        self.diff_gen(g)
    }
    fn grade(&self, g: &StrandsGen) -> Grading {
        StrandsAlgebra::grade(self, g)
    }
}

impl LawAlgebra for OszAlgebra {
    type G = OsGen;
    fn ctx(&self) -> Ctx {
        self.ctx
    }
    fn gens(&self, cap2: &[u32]) -> Vec<OsGen> {
        homology::pairs(&self.ctx)
            .into_iter()
            .flat_map(|(x, y)| self.enumerate_basis(&x, &y, cap2).expect("states from this context"))
            .collect()
    }
    fn left(&self, g: &OsGen) -> IState {
        g.x
    }
    fn right(&self, g: &OsGen) -> IState {
        g.y
    }
    fn valid(&self, g: &OsGen) -> bool {
        self.is_valid(g)
    }
    fn mul(&self, a: &OsGen, b: &OsGen) -> Option<OsGen> {
        self.mul_raw(a, b)
    }
    fn diff(&self, g: &OsGen) -> Chain<OsGen> {
        self.diff_gen(g)
    }
    fn grade(&self, g: &OsGen) -> Grading {
        OszAlgebra::grade(self, g)
    }
}

fn by_left<A: LawAlgebra>(alg: &A, gens: &[A::G]) -> BTreeMap<IState, Vec<A::G>> {
    let mut out: BTreeMap<IState, Vec<A::G>> = BTreeMap::new();
    for g in gens {
        out.entry(alg.left(g)).or_default().push(g.clone());
    }
    out
}

/// `∂∂ = 0`, with every term of `∂g` valid and one Maslov degree lower.
fn d2_one<A: LawAlgebra>(alg: &A, cap: u32, r: &mut Report) {
    let ctx = alg.ctx();
    for g in alg.gens(&caps(&ctx, cap)) {
        let d = alg.diff(&g);
        r.check(alg.diff_chain(&d).is_zero(), || format!("{ctx}: ∂∂{g:?} ≠ 0"));
        for h in d.iter() {
            r.check(alg.valid(h), || format!("{ctx}: ∂{g:?} has invalid term {h:?}"));
        }
    }
}

fn d2(opts: &Options) -> Report {
    let reports = opts.exec.map(contexts(opts.n_max.min(3)), |ctx| {
        let mut r = Report::new();
        d2_one(&StrandsAlgebra::new(ctx), 3, &mut r);
        d2_one(&OszAlgebra::new(ctx), 3, &mut r);
        r
    });
    Report::merged(reports)
}

/// Checks on one composable triple `(a, b, c)`; `c` may be absent.
fn law_checks<A: LawAlgebra>(alg: &A, a: &A::G, b: &A::G, c: Option<&A::G>, laws: bool, grades: bool, r: &mut Report) {
    let ctx = alg.ctx();
    let one = |g: &A::G| Chain::single(g.clone());
    let ab = alg.mul_chain(&one(a), &one(b));
    if laws {
        let lhs = alg.diff_chain(&ab);
        let rhs = &alg.mul_chain(&alg.diff(a), &one(b)) + &alg.mul_chain(&one(a), &alg.diff(b));
        r.check(lhs == rhs, || format!("{ctx}: Leibniz fails on {a:?}, {b:?}"));
        if let Some(c) = c {
            let l = alg.mul_chain(&ab, &one(c));
            let rr = alg.mul_chain(&one(a), &alg.mul_chain(&one(b), &one(c)));
            r.check(l == rr, || format!("{ctx}: associativity fails on {a:?}, {b:?}, {c:?}"));
        }
    }
    if grades {
        if let Some(p) = ab.as_single() {
            r.check(alg.valid(p), || format!("{ctx}: invalid product {a:?}·{b:?}"));
            r.check(alg.grade(p) == &alg.grade(a) + &alg.grade(b), || {
                format!("{ctx}: grading not additive on {a:?}·{b:?}")
            });
        }
        for g in [a, b] {
            let m = alg.grade(g);
            for h in alg.diff(g).iter() {
                let gh = alg.grade(h);
                r.check(gh.maslov == m.maslov - 1, || format!("{ctx}: Maslov of ∂{g:?} ∋ {h:?}"));
                r.check(gh.alexander() == m.alexander(), || format!("{ctx}: Alexander of ∂{g:?} ∋ {h:?}"));
            }
        }
    }
}

fn exhaustive<A: LawAlgebra>(alg: &A, cap: u32, laws: bool, grades: bool) -> Report {
    let mut r = Report::new();
    let gens = alg.gens(&caps(&alg.ctx(), cap));
    let from = by_left(alg, &gens);
    let empty = Vec::new();
    for a in &gens {
        for b in from.get(&alg.right(a)).unwrap_or(&empty) {
            law_checks(alg, a, b, None, laws, grades, &mut r);
            if laws {
                for c in from.get(&alg.right(b)).unwrap_or(&empty) {
                    law_checks(alg, a, b, Some(c), true, false, &mut r);
                }
            }
        }
    }
    r
}

/// An algebra, its generators, and the same generators keyed by left idempotent.
type Pool<A> = (A, Vec<<A as LawAlgebra>::G>, BTreeMap<IState, Vec<<A as LawAlgebra>::G>>);

/// `samples` composable triples at `n = 3`, drawn from a seeded stream.
fn sampled<A: LawAlgebra>(make: impl Fn(Ctx) -> A, opts: &Options, laws: bool, grades: bool) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let pools: Vec<Pool<A>> = contexts(3)
        .into_iter()
        .filter(|c| c.n() == 3)
        .map(|ctx| {
            let alg = make(ctx);
            let gens = alg.gens(&caps(&ctx, 2));
            let from = by_left(&alg, &gens);
            (alg, gens, from)
        })
        .filter(|(_, gens, _)| !gens.is_empty())
        .collect();
    let mut r = Report::new();
    let mut drawn = 0;
    while drawn < opts.samples {
        let (alg, gens, from) = pools.choose(&mut rng).expect("nonempty pools");
        let a = gens.choose(&mut rng).expect("nonempty");
        let Some(b) = from.get(&alg.right(a)).and_then(|v| v.choose(&mut rng)) else { continue };
        let Some(c) = from.get(&alg.right(b)).and_then(|v| v.choose(&mut rng)) else { continue };
        law_checks(alg, a, b, Some(c), laws, grades, &mut r);
        drawn += 1;
    }
    r
}

fn law_sweep(opts: &Options, laws: bool, grades: bool) -> Report {
    let small: Vec<Ctx> = contexts(opts.n_max.min(2));
    let mut reports = opts.exec.map(small, |ctx| {
        let mut r = exhaustive(&StrandsAlgebra::new(ctx), 2, laws, grades);
        r.merge(exhaustive(&OszAlgebra::new(ctx), 2, laws, grades));
        r
    });
    if opts.n_max >= 3 && opts.samples > 0 {
        reports.push(sampled(StrandsAlgebra::new, opts, laws, grades));
        reports.push(sampled(OszAlgebra::new, opts, laws, grades));
    }
    Report::merged(reports)
}

fn laws(opts: &Options) -> Report {
    law_sweep(opts, true, false)
}

fn gradings(opts: &Options) -> Report {
    law_sweep(opts, false, true)
}

fn group_gradings(opts: &Options) -> Report {
    let mut reports = opts.exec.map(contexts(opts.n_max.min(3)), |ctx| {
        let mut r = Report::new();
        let alg = StrandsAlgebra::new(ctx);
        let gens = alg.gens(&caps(&ctx, 3));
        for g in &gens {
            let d = deg_prime(g);
            let gr = alg.grade(g);
            r.check(GPrime::new(d.j2, d.alpha.clone()).is_ok(), || format!("{ctx}: deg′{g:?} violates j ≡ ε(α)"));
            match groups::theta(&ctx, &d) {
                Ok((m, alpha)) => {
                    r.check(m == gr.maslov && alpha.as_pairs() == gr.unrefined, || {
                        format!("{ctx}: Θ(deg′{g:?}) = ({m}, {alpha:?})")
                    });
                    let (m2, w2) = groups::psi_refine(m, &alpha);
                    r.check(m2 == gr.maslov && w2 == gr.refined2, || format!("{ctx}: Ψ on {g:?}"));
                }
                Err(e) => r.check(false, || format!("{ctx}: {g:?}: {e}")),
            }
            for rule in [SectionRule::Plus, SectionRule::Minus] {
                r.check(deg_prime_from_diagram(g, rule) == d, || format!("{ctx}: diagram deg′ of {g:?} ({rule:?})"));
            }
        }
        if ctx.n() <= 2 {
            let from = by_left(&alg, &gens);
            for a in &gens {
                for b in from.get(&a.right_unchecked()).into_iter().flatten() {
                    if let Some(ab) = alg.mul_raw(a, b) {
                        let prod = deg_prime(a).mul(&deg_prime(b));
                        r.check(prod.as_ref().ok() == Some(&deg_prime(&ab)), || {
                            format!("{ctx}: deg′ not multiplicative on {a:?}·{b:?}")
                        });
                    }
                }
            }
        }
        r
    });
    let mut l = Report::new();
    for n in 1..=opts.n_max.min(3) {
        for a in HomologyClass::basis(n) {
            for b in HomologyClass::basis(n) {
                l.check(groups::linking2(&a, &b) == 0, || format!("L({a:?}, {b:?}) ≠ 0"));
            }
        }
    }
    reports.push(l);
    Report::merged(reports)
}

/// Every factorization from `x` to `y` assembled from local bases.
fn local_factorizations(ctx: &Ctx, x: &IState, y: &IState, cap2: &[u32]) -> Vec<Factorization> {
    let cls = crate::combinatorics::classify(x, y);
    let mut partial = vec![Factorization { x: *x, y: *y, crossed: BTreeMap::new(), factors: Vec::new() }];
    for &i in &cls.crossed {
        let top = cap2[i - 1];
        partial = partial
            .into_iter()
            .flat_map(|f| {
                (0..).take_while(move |r| 2 * r < top).map(move |r| {
                    let mut f = f.clone();
                    f.crossed.insert(i, r);
                    f
                })
            })
            .collect();
    }
    for (interval, kind) in cls.intervals(ctx.n()) {
        let (alg, lx) = local_algebra(kind, interval.len());
        let local = alg.enumerate_basis(&lx, &lx, &cap2[interval.lo - 1..interval.hi]).expect("local basis");
        partial = partial
            .into_iter()
            .flat_map(|f| {
                local.iter().map(move |g| {
                    let mut f = f.clone();
                    f.factors.push(Factor { interval, kind, local: g.clone() });
                    f
                })
            })
            .collect();
    }
    partial
}

fn splitting(opts: &Options) -> Report {
    let ctxs: Vec<Ctx> = contexts(opts.n_max.min(3)).into_iter().filter(|c| c.s_mask() == 0).collect();
    let reports = opts.exec.map(ctxs, |ctx| {
        let mut r = Report::new();
        let alg = StrandsAlgebra::new(ctx);
        let cap2 = caps(&ctx, 3);
        for (x, y) in homology::pairs(&ctx) {
            let basis = alg.enumerate_basis(&x, &y, &cap2).expect("basis");
            for g in &basis {
                let f = match split_psi(&ctx, g) {
                    Ok(f) => f,
                    Err(e) => {
                        r.check(false, || format!("{ctx}: ψ{g:?}: {e}"));
                        continue;
                    }
                };
                r.check(unsplit_phi(&ctx, &f).as_ref().ok() == Some(g), || format!("{ctx}: φψ{g:?} ≠ id"));
                r.check(grade_factorization(&f) == alg.grade(g), || format!("{ctx}: ψ changes gradings of {g:?}"));
                let image: Result<Chain<Factorization>> = alg.diff_gen(g).iter().map(|h| split_psi(&ctx, h)).collect();
                r.check(image.ok() == Some(diff_factorization(&f)), || format!("{ctx}: ψ∂{g:?} ≠ ∂ψ{g:?}"));
            }
            let local = local_factorizations(&ctx, &x, &y, &cap2);
            r.check(local.len() == basis.len(), || {
                format!("{ctx} {x}->{y}: {} factorizations vs {} generators", local.len(), basis.len())
            });
            for f in &local {
                let back = unsplit_phi(&ctx, f).and_then(|g| split_psi(&ctx, &g));
                r.check(back.as_ref().ok() == Some(f), || format!("{ctx}: ψφ ≠ id on {f:?}"));
            }
        }
        r
    });
    Report::merged(reports)
}

fn interval_homology(opts: &Options) -> Report {
    let kinds = [IntervalKind::Generating, IntervalKind::LeftEdge, IntervalKind::RightEdge, IntervalKind::TwoFaced];
    let mut jobs = Vec::new();
    for kind in kinds {
        for l in 1..=opts.n_max.min(3) {
            let count = 4usize.pow(l as u32);
            for code in 0..count {
                let r: Vec<u32> = (0..l).map(|t| (code / 4usize.pow(t as u32) % 4) as u32).collect();
                jobs.push((kind, r));
            }
        }
    }
    let reports = opts.exec.map(jobs, |(kind, r)| {
        let mut rep = Report::new();
        let (alg, x) = local_algebra(kind, r.len());
        let w2: Vec<u32> = r.iter().map(|ri| 2 * ri).collect();
        let piece = match graded_piece(&alg, &x, &x, &w2) {
            Ok(p) => p,
            Err(e) => {
                rep.check(false, || format!("{kind:?} r={r:?}: {e}"));
                return rep;
            }
        };
        let dims = homology_dims(&piece);
        let expect = match kind {
            IntervalKind::Generating if !r.contains(&0) => BTreeMap::new(),
            _ => BTreeMap::from([(0, 1)]),
        };
        rep.check(dims == expect, || format!("{kind:?} r={r:?}: H = {dims:?}, expected {expect:?}"));
        if kind != IntervalKind::Generating {
            let (_, a) = max_maslov_cycle(kind, &r);
            rep.check(is_nonzero_class(&piece, 0, &a).unwrap_or(false), || {
                format!("{kind:?} r={r:?}: a^r is not a nonzero cycle")
            });
            // a^r · a^r' = a^(r+r') whenever both fit under the sweep bound.
            for code in 0..4usize.pow(r.len() as u32) {
                let r2: Vec<u32> = (0..r.len()).map(|t| (code / 4usize.pow(t as u32) % 4) as u32).collect();
                let sum: Vec<u32> = r.iter().zip(&r2).map(|(a, b)| a + b).collect();
                if sum.iter().any(|&s| s > 3) {
                    continue;
                }
                let (_, b) = max_maslov_cycle(kind, &r2);
                let (_, ab) = max_maslov_cycle(kind, &sum);
                rep.check(alg.mul_chain(&a, &b) == ab, || format!("{kind:?}: a^{r:?} a^{r2:?} ≠ a^{sum:?}"));
            }
        }
        rep
    });
    Report::merged(reports)
}

fn full_homology(opts: &Options) -> Report {
    let ctxs: Vec<Ctx> = contexts(opts.n_max.min(3)).into_iter().filter(|c| c.s_mask() == 0).collect();
    Report::merged(ctxs.iter().map(|ctx| homology::homology_check(ctx, &caps(ctx, 3), opts.exec)))
}

fn quasi_iso(opts: &Options) -> Report {
    let n3 = |c: &Ctx| c.n() < 3 || [0, 1 << 2, 0b1110].contains(&c.s_mask());
    let ctxs: Vec<Ctx> = contexts(opts.n_max.min(3)).into_iter().filter(n3).collect();
    Report::merged(ctxs.iter().map(|ctx| homology::quasi_iso_check(ctx, &caps(ctx, 2), opts.exec)))
}

/// Rank of `Φ` restricted to each `(x, y, w)` piece of `B`.
fn full_rank(phi: &Phi, cap2: &[u32], r: &mut Report) {
    let ctx = phi.a.ctx;
    for (x, y) in homology::pairs(&ctx) {
        let mut pieces: BTreeMap<Vec<u32>, Vec<OsGen>> = BTreeMap::new();
        for g in phi.b.enumerate_basis(&x, &y, cap2).expect("basis") {
            pieces.entry(g.weight2()).or_default().push(g);
        }
        let a_gens = phi.a.enumerate_basis(&x, &y, cap2).expect("basis");
        for (w2, gens) in pieces {
            let index: HashMap<&StrandsGen, usize> =
                a_gens.iter().filter(|h| h.weight2() == w2).enumerate().map(|(t, h)| (h, t)).collect();
            let mut span = Echelon::new(index.len());
            let mut inside = true;
            for g in &gens {
                let mut v = vec![false; index.len()];
                for h in phi.phi_closed_form(g).iter() {
                    match index.get(h) {
                        Some(&t) => v[t] = true,
                        None => inside = false,
                    }
                }
                span.insert(&v);
            }
            r.check(inside && span.rank() == gens.len(), || {
                format!("{ctx} {x}->{y} w={w2:?}: Φ has rank {} on {} generators", span.rank(), gens.len())
            });
        }
    }
}

fn relations(opts: &Options) -> Report {
    let reports = opts.exec.map(contexts(opts.n_max.min(3)), |ctx| {
        let phi = Phi::new(ctx);
        let mut r = phi.relation_check();
        full_rank(&phi, &caps(&ctx, 2), &mut r);
        if ctx.n() <= 2 {
            let gens = phi.b.gens(&caps(&ctx, 2));
            let from = by_left(&phi.b, &gens);
            for a in &gens {
                for b in from.get(&a.y).into_iter().flatten() {
                    let lhs = phi.phi_elem(&phi.b.mul_raw(a, b).into_iter().collect());
                    let rhs = phi.a.mul_chain(&phi.phi_closed_form(a), &phi.phi_closed_form(b));
                    r.check(lhs == rhs, || format!("{ctx}: Φ({a:?}·{b:?}) ≠ Φ(a)Φ(b)"));
                }
            }
        }
        r
    });
    Report::merged(reports)
}

fn symmetries(opts: &Options) -> Report {
    let reports = opts.exec.map(contexts(opts.n_max.min(3)), |ctx| {
        let mut r = Report::new();
        let phi = Phi::new(ctx);
        let mirror = Phi::new(ctx.rho());
        let (a, b) = (phi.a, phi.b);
        let cap2 = caps(&ctx, 2);
        let a_gens = a.gens(&cap2);
        for g in &a_gens {
            let rg = a.rho(g);
            r.check(mirror.a.is_valid(&rg), || format!("{ctx}: ρ{g:?} invalid"));
            r.check(a.is_valid(&a.o(g)), || format!("{ctx}: o{g:?} invalid"));
            r.check(mirror.a.rho(&rg) == *g, || format!("{ctx}: ρ² ≠ id on {g:?}"));
            r.check(a.o(&a.o(g)) == *g, || format!("{ctx}: o² ≠ id on {g:?}"));
            r.check(a.o(&rg) == mirror.a.rho(&a.o(g)), || format!("{ctx}: ρo ≠ oρ on {g:?}"));
            r.check(mirror.a.diff_gen(&rg) == a.rho_chain(&a.diff_gen(g)), || format!("{ctx}: ρ∂ ≠ ∂ρ on {g:?}"));
            r.check(a.diff_gen(&a.o(g)) == a.o_chain(&a.diff_gen(g)), || format!("{ctx}: o∂ ≠ ∂o on {g:?}"));
        }
        if ctx.n() <= 2 {
            let from = by_left(&a, &a_gens);
            for g in &a_gens {
                for h in from.get(&g.right_unchecked()).into_iter().flatten() {
                    let gh: Chain<StrandsGen> = a.mul_raw(g, h).into_iter().collect();
                    let rho_prod: Chain<StrandsGen> = mirror.a.mul_raw(&a.rho(g), &a.rho(h)).into_iter().collect();
                    let o_prod: Chain<StrandsGen> = a.mul_raw(&a.o(h), &a.o(g)).into_iter().collect();
                    r.check(a.rho_chain(&gh) == rho_prod, || format!("{ctx}: ρ not multiplicative on {g:?}·{h:?}"));
                    r.check(a.o_chain(&gh) == o_prod, || format!("{ctx}: o not anti-multiplicative on {g:?}·{h:?}"));
                }
            }
        }
        for g in b.gens(&cap2) {
            let image = phi.phi_closed_form(&g);
            let rg = b.rho(&g);
            r.check(mirror.b.rho(&rg) == g && b.o(&b.o(&g)) == g, || format!("{ctx}: involutions on {g:?}"));
            r.check(b.o(&rg) == mirror.b.rho(&b.o(&g)), || format!("{ctx}: ρo ≠ oρ on {g:?}"));
            r.check(mirror.phi_closed_form(&rg) == a.rho_chain(&image), || format!("{ctx}: Φρ ≠ ρΦ on {g:?}"));
            r.check(phi.phi_closed_form(&b.o(&g)) == a.o_chain(&image), || format!("{ctx}: Φo ≠ oΦ on {g:?}"));
            let n = ctx.n();
            for (which, ok) in [
                (Truncation::Right, !g.x.has(0) && !g.y.has(0)),
                (Truncation::Left, !g.x.has(n) && !g.y.has(n)),
                (Truncation::Both, !g.x.has(0) && !g.y.has(0) && !g.x.has(n) && !g.y.has(n)),
            ] {
                if ok {
                    r.check(image.iter().all(|h| a.in_truncation(h, which)), || {
                        format!("{ctx}: Φ{g:?} leaves the {which:?} truncation")
                    });
                }
            }
        }
        r
    });
    Report::merged(reports)
}

fn closed_form(opts: &Options) -> Report {
    let reports = opts.exec.map(contexts(opts.n_max.min(3)), |ctx| {
        let mut r = Report::new();
        let phi = Phi::new(ctx);
        for g in phi.b.gens(&caps(&ctx, 3)) {
            let image = phi.phi_closed_form(&g);
            r.check(phi.phi_basis(&g) == image, || format!("{ctx}: letter path and closed form differ on {g:?}"));
            if g.c == 0 && g.r.iter().all(|&ri| ri == 0) {
                let gmin = phi.a.g_min(&g.x, &g.y).map(Chain::single);
                r.check(gmin.ok() == Some(image), || format!("{ctx}: Φ(γ) ≠ g_min at {g:?}"));
            }
        }
        r
    });
    Report::merged(reports)
}

fn text_round_trip(opts: &Options) -> Report {
    let reports = opts.exec.map(contexts(opts.n_max.min(3)), |ctx| {
        let mut r = Report::new();
        let phi = Phi::new(ctx);
        for g in phi.a.gens(&caps(&ctx, 2)) {
            let e = Chain::single(g);
            let src = text::format_strands(&e);
            r.check(text::parse_strands(&phi.a, &src).ok() == Some(e), || format!("{ctx}: round trip of '{src}'"));
        }
        for g in phi.b.gens(&caps(&ctx, 2)) {
            let e = Chain::single(g);
            let src = text::format_os(&e);
            r.check(text::parse_os(&phi.b, &src).ok() == Some(e), || format!("{ctx}: round trip of '{src}'"));
        }
        r
    });
    Report::merged(reports)
}
