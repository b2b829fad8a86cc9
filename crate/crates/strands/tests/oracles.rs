//! Brute-force oracles written from the definitions, independent of the
//! library's own shortcuts.

use std::collections::{BTreeMap, BTreeSet};

use strands::chain::Chain;
use strands::combinatorics::{classify, enumerate_istates, far, gamma, v, IState, Interval, IntervalKind};
use strands::f2linalg::{self, F2Matrix};
use strands::homology::{self, homology_dims};
use strands::osz::{OsGen, OszAlgebra};
use strands::phi::Phi;
use strands::strands::{Ctx, StrandsAlgebra, StrandsGen};

fn st(n: usize, m: &[usize]) -> IState {
    IState::new(n, m).unwrap()
}

fn all_pairs(n: usize, k: usize) -> Vec<(IState, IState)> {
    let states = enumerate_istates(n, k).unwrap();
    states.iter().flat_map(|x| states.iter().map(move |y| (*x, *y))).collect()
}

// ---------------------------------------------------------------- states

fn oracle_v(x: &[usize], y: &[usize], i: usize) -> i64 {
    y.iter().filter(|&&a| a >= i).count() as i64 - x.iter().filter(|&&a| a >= i).count() as i64
}

fn oracle_far(x: &[usize], y: &[usize]) -> bool {
    x.iter().zip(y).any(|(a, b)| a.abs_diff(*b) > 1)
}

#[test]
fn weights_and_farness() {
    let (x, y) = (st(5, &[0, 1, 2, 5]), st(5, &[0, 2, 3, 4]));
    assert_eq!(v(&x, &y, 2), 1);
    assert_eq!(v(&x, &y, 5), -1);
    assert!(!far(&x, &y));
    for n in 1..=5 {
        for k in 0..=n + 1 {
            for (x, y) in all_pairs(n, k) {
                let (xm, ym) = (x.members(), y.members());
                assert_eq!(far(&x, &y), oracle_far(&xm, &ym));
                for i in 1..=n {
                    assert_eq!(v(&x, &y, i), oracle_v(&xm, &ym, i));
                }
            }
        }
    }
}

/// Intervals straight from the fully-used definition.
fn oracle_intervals(n: usize, x: &[usize], y: &[usize]) -> (Vec<usize>, Vec<(Interval, IntervalKind)>) {
    let full = |i: usize| x.contains(&i) && y.contains(&i);
    let crossed: Vec<usize> = (1..=n).filter(|&i| oracle_v(x, y, i) != 0).collect();
    let everything: Vec<usize> = (0..=n).collect();
    if x == everything && y == everything {
        return (crossed, vec![(Interval { lo: 1, hi: n }, IntervalKind::TwoFaced)]);
    }
    let mut out = Vec::new();
    for j in 0..=n {
        for end in j + 1..=n {
            if !full(j) && !full(end) && (j + 1..end).all(full) && (j + 1..=end).all(|i| !crossed.contains(&i)) {
                out.push((Interval { lo: j + 1, hi: end }, IntervalKind::Generating));
            }
        }
    }
    for l in 1..=n {
        if !full(l) && (0..l).all(full) {
            out.push((Interval { lo: 1, hi: l }, IntervalKind::LeftEdge));
        }
        if !full(n - l) && (n - l + 1..=n).all(full) {
            out.push((Interval { lo: n - l + 1, hi: n }, IntervalKind::RightEdge));
        }
    }
    out.sort();
    (crossed, out)
}

#[test]
fn classification_matches_definition() {
    let c = classify(&st(2, &[1]), &st(2, &[1]));
    assert!(c.crossed.is_empty());
    assert_eq!(c.intervals(2), vec![(Interval { lo: 1, hi: 2 }, IntervalKind::Generating)]);
    let c = classify(&st(1, &[0]), &st(1, &[0]));
    assert_eq!(c.intervals(1), vec![(Interval { lo: 1, hi: 1 }, IntervalKind::LeftEdge)]);

    for n in 1..=5 {
        for k in 0..=n + 1 {
            for (x, y) in all_pairs(n, k) {
                if far(&x, &y) {
                    continue;
                }
                let c = classify(&x, &y);
                let (crossed, intervals) = oracle_intervals(n, &x.members(), &y.members());
                assert_eq!(c.crossed, crossed, "{x} {y}");
                assert_eq!(c.intervals(n), intervals, "{x} {y}");
                // The blocks partition [1,n].
                let mut covered: Vec<usize> = crossed.clone();
                for (iv, _) in &intervals {
                    covered.extend(iv.lines());
                }
                covered.sort();
                assert_eq!(covered, (1..=n).collect::<Vec<_>>(), "{x} {y}");
            }
        }
    }
}

/// The literal recursion on `k - |x ∩ y|`, on sorted coordinate lists.
fn oracle_gamma(x: Vec<usize>, y: &[usize]) -> Vec<String> {
    if x == y {
        return Vec::new();
    }
    let mut next = x.clone();
    let label;
    if let Some(a) = (0..x.len()).rev().find(|&a| x[a] < y[a]) {
        next[a] += 1;
        label = format!("R{}", x[a] + 1);
    } else {
        let a = (0..x.len()).find(|&a| x[a] > y[a]).expect("x ≠ y");
        next[a] -= 1;
        label = format!("L{}", x[a]);
    }
    let mut rest = oracle_gamma(next, y);
    rest.insert(0, label);
    rest
}

#[test]
fn gamma_matches_recursion() {
    let g: Vec<String> = gamma(&st(5, &[0, 1, 2, 5]), &st(5, &[0, 2, 3, 4])).iter().map(|l| l.to_string()).collect();
    assert_eq!(g, ["R3", "R2", "L5"]);
    for n in 1..=5 {
        for k in 0..=n + 1 {
            for (x, y) in all_pairs(n, k) {
                if far(&x, &y) {
                    continue;
                }
                let got: Vec<String> = gamma(&x, &y).iter().map(|l| l.to_string()).collect();
                assert_eq!(got, oracle_gamma(x.members(), &y.members()), "{x} -> {y}");
                // Each line is crossed |v_i| times.
                for i in 1..=n {
                    let hits = got.iter().filter(|l| l[1..] == i.to_string()).count() as i64;
                    assert_eq!(hits, v(&x, &y, i).abs());
                }
            }
        }
    }
}

// ---------------------------------------------------------- linear algebra

fn brute_kernel_dim(m: &F2Matrix) -> usize {
    let count = (0u32..1 << m.cols())
        .filter(|&bits| {
            let v: Vec<bool> = (0..m.cols()).map(|c| bits >> c & 1 == 1).collect();
            m.apply(&v).iter().all(|b| !b)
        })
        .count();
    count.trailing_zeros() as usize
}

#[test]
fn linear_algebra_by_enumeration() {
    let ones = F2Matrix::from_dense(&[vec![1, 1], vec![1, 1]]);
    assert_eq!(f2linalg::rank(&ones), 1);
    assert_eq!(f2linalg::kernel_basis(&ones), vec![vec![true, true]]);
    let row = F2Matrix::from_dense(&[vec![1, 1]]);
    assert_eq!(f2linalg::kernel_basis(&row), vec![vec![true, true]]);

    // Every 3x4 matrix, plus a deterministic scatter of 5x6 ones.
    for bits in 0u32..1 << 12 {
        let dense: Vec<Vec<u8>> = (0..3).map(|r| (0..4).map(|c| (bits >> (4 * r + c) & 1) as u8).collect()).collect();
        let m = F2Matrix::from_dense(&dense);
        let k = brute_kernel_dim(&m);
        assert_eq!(f2linalg::kernel_basis(&m).len(), k);
        assert_eq!(f2linalg::rank(&m), 4 - k);
        for z in f2linalg::kernel_basis(&m) {
            assert!(m.apply(&z).iter().all(|b| !b));
        }
    }
    let mut state = 0x9e3779b97f4a7c15u64;
    for _ in 0..200 {
        let dense: Vec<Vec<u8>> = (0..5)
            .map(|_| {
                (0..6)
                    .map(|_| {
                        state ^= state << 13;
                        state ^= state >> 7;
                        state ^= state << 17;
                        u8::from(state & 3 == 0)
                    })
                    .collect()
            })
            .collect();
        let m = F2Matrix::from_dense(&dense);
        assert_eq!(f2linalg::rank(&m), 6 - brute_kernel_dim(&m));
    }
}

// ---------------------------------------------------- strands generators

/// Generators leaving `x`, found by placing actual strands.
///
/// Region `j` pairs `z_j^+` with `z_{j+1}^-`; `z_0^+` and `z_{n+1}^-` are on
/// the linear backbones and only carry constant strands. Each region of `x`
/// contributes one strand starting at one of its two basepoints. A valid
/// k-strand ends on distinct basepoints, no two of them matched.
fn oracle_strands(ctx: &Ctx, x: &IState, max_speed: u32) -> BTreeMap<(u64, Vec<(u32, u32)>), IState> {
    let n = ctx.n();
    let regions = x.members();
    // (circle, side) with side 0 for z^-, 1 for z^+.
    let mut choices: Vec<Vec<(usize, u32, u32)>> = Vec::new();
    for &j in &regions {
        let mut opts = Vec::new();
        for speed in 0..=max_speed {
            if j >= 1 || speed == 0 {
                opts.push((j, 1, speed));
            }
            if j < n || speed == 0 {
                opts.push((j + 1, 0, speed));
            }
        }
        choices.push(opts);
    }
    let mut found = BTreeMap::new();
    let mut pick = vec![0usize; regions.len()];
    loop {
        let strands: Vec<(usize, u32, u32)> = pick.iter().zip(&choices).map(|(&t, c)| c[t]).collect();
        let ends: Vec<(usize, u32)> = strands.iter().map(|&(circle, side, s)| (circle, (side + s) % 2)).collect();
        let region = |(circle, side): (usize, u32)| if side == 1 { circle } else { circle - 1 };
        let distinct = ends.iter().collect::<BTreeSet<_>>().len() == ends.len();
        let unmatched = ends.iter().map(|&e| region(e)).collect::<BTreeSet<_>>().len() == ends.len();
        if distinct && unmatched {
            let mut pq = vec![(0, 0); n];
            for &(circle, side, s) in &strands {
                if s > 0 {
                    let col = &mut pq[circle - 1];
                    if side == 0 {
                        col.0 = s;
                    } else {
                        col.1 = s;
                    }
                }
            }
            let members: Vec<usize> = ends.iter().map(|&e| region(e)).collect();
            let y = IState::new(n, &members).unwrap();
            for c in 0u64..1 << (n + 1) {
                if c & 1 == 0 && c & !ctx.s_mask() == 0 {
                    let prev = found.insert((c, pq.clone()), y);
                    assert!(prev.is_none() || prev == Some(y));
                }
            }
        }
        // Odometer.
        let mut t = 0;
        loop {
            if t == pick.len() {
                return found;
            }
            pick[t] += 1;
            if pick[t] < choices[t].len() {
                break;
            }
            pick[t] = 0;
            t += 1;
        }
    }
}

#[test]
fn strands_basis_from_pictures() {
    let a = StrandsAlgebra::new(Ctx::new(1, 1, &[]).unwrap());
    let x = st(1, &[0]);
    let cols: Vec<_> = a.enumerate_basis(&x, &x, &[4]).unwrap().into_iter().map(|g| g.pq[0]).collect();
    assert_eq!(cols, vec![(0, 0), (2, 0), (4, 0)]);

    for n in 1..=3 {
        for k in 0..=n + 1 {
            for s in Ctx::all_s_masks(n) {
                let ctx = Ctx::from_mask(n, k, s).unwrap();
                let alg = StrandsAlgebra::new(ctx);
                let max_speed = 4;
                for x in ctx.istates() {
                    let want: BTreeMap<_, _> = oracle_strands(&ctx, &x, max_speed)
                        .into_iter()
                        .filter(|((c, pq), _)| {
                            (1..=n).all(|i| 2 * (c >> i & 1) as u32 + pq[i - 1].0 + pq[i - 1].1 <= max_speed)
                        })
                        .collect();
                    let got: BTreeMap<_, _> = alg
                        .enumerate_from(&x, &vec![max_speed; n])
                        .into_iter()
                        .map(|g| ((g.c, g.pq.clone()), alg.validate(&g).unwrap()))
                        .collect();
                    assert_eq!(got, want, "{ctx} from {x}");
                }
            }
        }
    }
}

#[test]
fn grading_example() {
    let a = StrandsAlgebra::new(Ctx::new(1, 2, &[]).unwrap());
    let g = StrandsGen { x: IState::full(1), c: 0, pq: vec![(1, 9)] };
    let gr = a.grade(&g);
    assert_eq!(gr.maslov, -1);
    assert_eq!(gr.refined2, vec![10]);
    assert_eq!(gr.unrefined, vec![(5, 5)]);
}

#[test]
fn differential_of_lonely_loop() {
    // C_i with no dots next to circle i has nothing to resolve.
    let a = StrandsAlgebra::new(Ctx::new(3, 1, &[2]).unwrap());
    let g = StrandsGen { x: st(3, &[0]), c: 1 << 2, pq: vec![(0, 0); 3] };
    assert!(a.is_valid(&g));
    assert!(a.diff_gen(&g).is_zero());
}

// ------------------------------------------------------------- B side

#[test]
fn quiver_algebra_examples() {
    let b = OszAlgebra::new(Ctx::new(2, 1, &[]).unwrap());
    let x = st(2, &[1]);
    assert!(b.validate(&OsGen { x, y: x, c: 0, r: vec![1, 1] }).is_err());
    assert!(b.validate(&OsGen { x, y: x, c: 0, r: vec![3, 0] }).is_ok());
    let rs: Vec<_> = b.enumerate_basis(&x, &x, &[2, 2]).unwrap().into_iter().map(|g| g.r).collect();
    assert_eq!(rs, vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
    let u1 = OsGen { x, y: x, c: 0, r: vec![1, 0] };
    let u2 = OsGen { x, y: x, c: 0, r: vec![0, 1] };
    assert_eq!(b.mul_raw(&u1, &u2), None);

    let b = OszAlgebra::new(Ctx::new(1, 1, &[]).unwrap());
    let x = st(1, &[0]);
    assert_eq!(b.enumerate_basis(&x, &x, &[4]).unwrap().len(), 3);

    let b = OszAlgebra::new(Ctx::new(1, 0, &[1]).unwrap());
    let empty = st(1, &[]);
    let c1 = OsGen { x: empty, y: empty, c: 0b10, r: vec![0] };
    assert!(b.diff_gen(&c1).is_zero());
}

#[test]
fn phi_of_u_squared() {
    let phi = Phi::new(Ctx::new(1, 2, &[]).unwrap());
    let x = IState::full(1);
    let u = OsGen { x, y: x, c: 0, r: vec![1] };
    let image = phi.phi_basis(&u);
    let sq = phi.a.mul_chain(&image, &image);
    let want: Chain<StrandsGen> = [(4, 0), (0, 4)].into_iter().map(|col| StrandsGen { x, c: 0, pq: vec![col] }).collect();
    assert_eq!(sq, want);
}

// ------------------------------------------------------------ homology

/// Homology dimensions by listing every chain of each level.
fn brute_homology<G: Ord + Clone + std::hash::Hash + std::fmt::Debug>(
    p: &homology::GradedPiece<G>,
    diff: impl Fn(&G) -> Chain<G>,
) -> BTreeMap<i64, usize> {
    let chains = |m: i64| -> Vec<Chain<G>> {
        let gens = p.levels.get(&m).cloned().unwrap_or_default();
        (0u32..1 << gens.len())
            .map(|bits| gens.iter().enumerate().filter(|(t, _)| bits >> t & 1 == 1).map(|(_, g)| g.clone()).collect())
            .collect()
    };
    let d = |e: &Chain<G>| -> Chain<G> {
        let mut out = Chain::zero();
        for g in e.iter() {
            out += &diff(g);
        }
        out
    };
    let mut out = BTreeMap::new();
    for &m in p.levels.keys() {
        let cycles = chains(m).into_iter().filter(|e| d(e).is_zero()).count();
        let boundaries: BTreeSet<Chain<G>> = chains(m + 1).iter().map(d).collect();
        let h = (cycles / boundaries.len()).trailing_zeros() as usize;
        if h > 0 {
            out.insert(m, h);
        }
    }
    out
}

#[test]
fn homology_by_enumeration() {
    let mut nonzero = 0;
    for n in 1..=2 {
        for k in 0..=n + 1 {
            for s in Ctx::all_s_masks(n) {
                let ctx = Ctx::from_mask(n, k, s).unwrap();
                let a = StrandsAlgebra::new(ctx);
                let b = OszAlgebra::new(ctx);
                for (x, y) in homology::pairs(&ctx) {
                    for p in homology::pieces(&a, &x, &y, &vec![4; n]).unwrap() {
                        if p.levels.values().all(|l| l.len() <= 12) {
                            let h = homology_dims(&p);
                            assert_eq!(h, brute_homology(&p, |g| a.diff_gen(g)), "{ctx} {}", p.label());
                            nonzero += h.values().sum::<usize>();
                        }
                    }
                    for p in homology::pieces(&b, &x, &y, &vec![4; n]).unwrap() {
                        if p.levels.values().all(|l| l.len() <= 12) {
                            assert_eq!(homology_dims(&p), brute_homology(&p, |g| b.diff_gen(g)), "{ctx} {}", p.label());
                        }
                    }
                }
            }
        }
    }
    assert!(nonzero > 100, "only {nonzero} classes seen");
}

#[test]
fn edge_polynomial_homology() {
    let ctx = Ctx::new(1, 1, &[]).unwrap();
    let x = st(1, &[0]);
    let a = StrandsAlgebra::new(ctx);
    for r in 0..6u32 {
        let p = homology::graded_piece(&a, &x, &x, &[2 * r]).unwrap();
        assert_eq!(homology_dims(&p), BTreeMap::from([(0, 1)]));
    }
    let y = st(1, &[1]);
    let p = homology::graded_piece(&a, &x, &y, &[3]).unwrap();
    let gens: Vec<_> = p.levels.values().flatten().map(|g| g.pq.clone()).collect();
    assert_eq!(gens, vec![vec![(3, 0)]]);
}
