use proptest::prelude::*;
use proptest::sample::Index;

use strands::chain::Chain;
use strands::combinatorics::IState;
use strands::osz::{OsGen, OszAlgebra};
use strands::phi::Phi;
use strands::strands::{Ctx, StrandsAlgebra, StrandsGen};
use strands::text;

fn ctx_strategy() -> impl Strategy<Value = Ctx> {
    (1usize..=3)
        .prop_flat_map(|n| (Just(n), 0..=n + 1, 0u64..1 << n))
        .prop_map(|(n, k, s)| Ctx::from_mask(n, k, s << 1).unwrap())
}

fn pick<T: Clone>(items: &[T], i: Index) -> Option<T> {
    (!items.is_empty()).then(|| items[i.index(items.len())].clone())
}

/// A generator of A starting at a chosen idempotent, with small weights.
fn a_gen(alg: &StrandsAlgebra, x: &IState, i: Index) -> Option<StrandsGen> {
    pick(&alg.enumerate_from(x, &vec![3; alg.ctx.n()]), i)
}

fn b_gen(alg: &OszAlgebra, x: &IState, yi: Index, i: Index) -> Option<OsGen> {
    let y = pick(&alg.ctx.istates(), yi)?;
    pick(&alg.enumerate_basis(x, &y, &vec![4; alg.ctx.n()]).ok()?, i)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn differential_squares_to_zero(ctx in ctx_strategy(), xi: Index, gi: Index) {
        let a = StrandsAlgebra::new(ctx);
        let x = pick(&ctx.istates(), xi).unwrap();
        if let Some(g) = a_gen(&a, &x, gi) {
            prop_assert!(a.diff(&a.diff_gen(&g)).is_zero());
            // The differential drops the Maslov grading by one.
            let m = a.grade(&g).maslov;
            for h in a.diff_gen(&g).iter() {
                prop_assert_eq!(a.grade(h).maslov, m - 1);
                prop_assert_eq!(a.grade(h).refined2, a.grade(&g).refined2.clone());
            }
        }
    }

    #[test]
    fn leibniz_and_associativity(ctx in ctx_strategy(), xi: Index, i1: Index, i2: Index, i3: Index) {
        let a = StrandsAlgebra::new(ctx);
        let x = pick(&ctx.istates(), xi).unwrap();
        let Some(g1) = a_gen(&a, &x, i1) else { return Ok(()) };
        let y = a.validate(&g1).unwrap();
        let Some(g2) = a_gen(&a, &y, i2) else { return Ok(()) };
        let z = a.validate(&g2).unwrap();
        let Some(g3) = a_gen(&a, &z, i3) else { return Ok(()) };
        let (e1, e2, e3) = (Chain::single(g1.clone()), Chain::single(g2.clone()), Chain::single(g3));

        let prod = a.mul_chain(&e1, &e2);
        let lhs = a.diff(&prod);
        let rhs = &a.mul_chain(&a.diff(&e1), &e2) + &a.mul_chain(&e1, &a.diff(&e2));
        prop_assert_eq!(lhs, rhs);

        let left = a.mul_chain(&prod, &e3);
        let right = a.mul_chain(&e1, &a.mul_chain(&e2, &e3));
        prop_assert_eq!(left, right);

        if let Some(p) = a.mul_raw(&g1, &g2) {
            let (gp, g1g, g2g) = (a.grade(&p), a.grade(&g1), a.grade(&g2));
            prop_assert_eq!(gp.maslov, g1g.maslov + g2g.maslov);
            prop_assert_eq!(gp.alex2, g1g.alex2 + g2g.alex2);
        }
    }

    #[test]
    fn quiver_side_laws(ctx in ctx_strategy(), xi: Index, y1: Index, i1: Index, y2: Index, i2: Index) {
        let b = OszAlgebra::new(ctx);
        let x = pick(&ctx.istates(), xi).unwrap();
        let Some(g1) = b_gen(&b, &x, y1, i1) else { return Ok(()) };
        let Some(g2) = b_gen(&b, &g1.y, y2, i2) else { return Ok(()) };
        let (e1, e2) = (Chain::single(g1), Chain::single(g2));
        prop_assert!(b.diff(&b.diff(&e1)).is_zero());
        let prod = b.mul_chain(&e1, &e2);
        let rhs = &b.mul_chain(&b.diff(&e1), &e2) + &b.mul_chain(&e1, &b.diff(&e2));
        prop_assert_eq!(b.diff(&prod), rhs);
    }

    #[test]
    fn phi_is_a_chain_map(ctx in ctx_strategy(), xi: Index, y1: Index, i1: Index, y2: Index, i2: Index) {
        let phi = Phi::new(ctx);
        let x = pick(&ctx.istates(), xi).unwrap();
        let Some(g1) = b_gen(&phi.b, &x, y1, i1) else { return Ok(()) };
        let image = phi.phi_basis(&g1);
        prop_assert_eq!(phi.phi_elem(&phi.b.diff_gen(&g1)), phi.a.diff(&image));
        prop_assert_eq!(phi.phi_closed_form(&g1), image.clone());
        let Some(g2) = b_gen(&phi.b, &g1.y, y2, i2) else { return Ok(()) };
        let prod = phi.b.mul_chain(&Chain::single(g1), &Chain::single(g2.clone()));
        prop_assert_eq!(phi.phi_elem(&prod), phi.a.mul_chain(&image, &phi.phi_basis(&g2)));
    }

    #[test]
    fn text_round_trip(ctx in ctx_strategy(), xi: Index, picks in prop::collection::vec(any::<Index>(), 0..4)) {
        let a = StrandsAlgebra::new(ctx);
        let x = pick(&ctx.istates(), xi).unwrap();
        let e: Chain<StrandsGen> = picks.into_iter().filter_map(|i| a_gen(&a, &x, i)).collect();
        let shown = text::format_strands(&e);
        prop_assert_eq!(text::parse_strands(&a, &shown).unwrap(), e);

        let b = OszAlgebra::new(ctx);
        let u: Chain<OsGen> = b.enumerate_basis(&x, &x, &vec![4; ctx.n()]).unwrap().into_iter().collect();
        prop_assert_eq!(text::parse_os(&b, &text::format_os(&u)).unwrap(), u);
    }

    #[test]
    fn symmetries_are_involutions(ctx in ctx_strategy(), xi: Index, gi: Index) {
        let a = StrandsAlgebra::new(ctx);
        let x = pick(&ctx.istates(), xi).unwrap();
        if let Some(g) = a_gen(&a, &x, gi) {
            let o = a.o(&g);
            prop_assert!(a.is_valid(&o));
            prop_assert_eq!(a.o(&o), g.clone());
            let flipped = StrandsAlgebra::new(ctx.rho());
            let r = a.rho(&g);
            prop_assert!(flipped.is_valid(&r));
            prop_assert_eq!(flipped.rho(&r), g);
        }
    }
}
