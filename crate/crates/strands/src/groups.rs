//! Group-valued gradings on `A(n,k,S)`.
//!
//! Arc convention: `β_i` is the arc of circle `i` from `z_i^-` to `z_i^+`,
//! `τ_i` the arc from `z_i^+` back to `z_i^-`. Circles have length 2 with
//! `z_i^-` at 0 and `z_i^+` at 1. All half-integers are stored doubled.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::strands::{Ctx, StrandsGen};

/// `Σ a^τ_i τ_i + a^β_i β_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HomologyClass {
    pub tau: Vec<i64>,
    pub beta: Vec<i64>,
}

impl HomologyClass {
    pub fn zero(n: usize) -> Self {
        HomologyClass { tau: vec![0; n], beta: vec![0; n] }
    }

    pub fn tau(n: usize, i: usize) -> Self {
        let mut a = Self::zero(n);
        a.tau[i - 1] = 1;
        a
    }

    pub fn beta(n: usize, i: usize) -> Self {
        let mut a = Self::zero(n);
        a.beta[i - 1] = 1;
        a
    }

    pub fn n(&self) -> usize {
        self.tau.len()
    }

    /// `a^τ_i + a^β_i`, twice the multiplicity at either basepoint of circle `i`.
    pub fn total(&self, i: usize) -> i64 {
        self.tau[i - 1] + self.beta[i - 1]
    }

    pub fn add(&self, other: &Self) -> Self {
        HomologyClass {
            tau: self.tau.iter().zip(&other.tau).map(|(a, b)| a + b).collect(),
            beta: self.beta.iter().zip(&other.beta).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn as_pairs(&self) -> Vec<(i64, i64)> {
        self.tau.iter().copied().zip(self.beta.iter().copied()).collect()
    }

    /// The classes `τ_1, β_1, …, τ_n, β_n`.
    pub fn basis(n: usize) -> Vec<Self> {
        (1..=n).flat_map(|i| [Self::tau(n, i), Self::beta(n, i)]).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Minus,
    Plus,
}

/// `z_i^±`. Circle `0` carries only `z_0^+` and circle `n+1` only
/// `z_{n+1}^-`; both sit on the linear backbones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Basepoint {
    pub circle: usize,
    pub side: Side,
}

/// Doubled multiplicity of `alpha` at a basepoint.
pub fn multiplicity2(alpha: &HomologyClass, z: Basepoint) -> i64 {
    if z.circle == 0 || z.circle > alpha.n() {
        0
    } else {
        alpha.total(z.circle)
    }
}

/// Doubled `L(α_1, α_2) = m(α_2, ∂α_1)`, evaluated literally.
pub fn linking2(a1: &HomologyClass, a2: &HomologyClass) -> i64 {
    (1..=a1.n())
        .map(|i| {
            // ∂β_i = z_i^+ - z_i^-, ∂τ_i = z_i^- - z_i^+
            let at_plus = a1.beta[i - 1] - a1.tau[i - 1];
            let at_minus = -at_plus;
            at_plus * multiplicity2(a2, Basepoint { circle: i, side: Side::Plus })
                + at_minus * multiplicity2(a2, Basepoint { circle: i, side: Side::Minus })
        })
        .sum::<i64>()
        / 2
}

/// Doubled `ε(α)`, either 0 or 1.
pub fn epsilon2(alpha: &HomologyClass) -> i64 {
    (1..=alpha.n()).filter(|&i| alpha.total(i) % 2 != 0).count() as i64 % 2
}

/// An element `(j, α)` of `G′(Z(n))`, with `j` doubled.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GPrime {
    pub j2: i64,
    pub alpha: HomologyClass,
}

impl GPrime {
    pub fn new(j2: i64, alpha: HomologyClass) -> Result<Self> {
        if (j2 - epsilon2(&alpha)).rem_euclid(2) != 0 {
            return Err(Error::Consistency(format!("j = {j2}/2 is not congruent to ε(α) mod 1")));
        }
        Ok(GPrime { j2, alpha })
    }

    pub fn identity(n: usize) -> Self {
        GPrime { j2: 0, alpha: HomologyClass::zero(n) }
    }

    /// `λ = (1, 0)`.
    pub fn lambda(n: usize) -> Self {
        GPrime { j2: 2, alpha: HomologyClass::zero(n) }
    }

    pub fn mul(&self, other: &GPrime) -> Result<GPrime> {
        let j2 = self.j2 + other.j2 + 2 * linking2(&self.alpha, &other.alpha);
        GPrime::new(j2, self.alpha.add(&other.alpha))
    }
}

/// `[s, c]` from the closed form.
pub fn homology_class(g: &StrandsGen) -> HomologyClass {
    let n = g.n();
    let mut a = HomologyClass::zero(n);
    for i in 1..=n {
        let (p, q, c) = (g.p(i) as i64, g.q(i) as i64, g.has_c(i) as i64);
        a.tau[i - 1] = c + p / 2 + (q + 1) / 2;
        a.beta[i - 1] = c + (p + 1) / 2 + q / 2;
    }
    a
}

pub fn deg_prime(g: &StrandsGen) -> GPrime {
    let j2 = g
        .pq
        .iter()
        .map(|&(p, q)| (p as i64 - q as i64).abs() - 2 * (p as i64 + q as i64))
        .sum();
    GPrime { j2, alpha: homology_class(g) }
}

/// Where constant strands of idle regions are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SectionRule {
    /// Region `j` at `z_j^+` (the linear backbone for `j = 0`).
    Plus,
    /// Region `j` at `z_{j+1}^-` (the linear backbone for `j = n`).
    Minus,
}

/// `deg′` read off a concrete strand picture: `inv − m([s,c], [s(0)])`,
/// paired with the class swept out by the picture.
pub fn deg_prime_from_diagram(g: &StrandsGen, rule: SectionRule) -> GPrime {
    let n = g.n();
    // Starting points per circle, and the arcs swept by moving strands.
    let mut starts = vec![0usize; n + 2];
    let mut alpha = HomologyClass::zero(n);
    for j in g.x.iter() {
        let (circle, pos, speed) = if g.q(j) > 0 {
            (j, 1, g.q(j))
        } else if g.p(j + 1) > 0 {
            (j + 1, 0, g.p(j + 1))
        } else {
            match rule {
                SectionRule::Plus => (j, 1, 0),
                SectionRule::Minus => (j + 1, 0, 0),
            }
        };
        starts[circle] += 1;
        for t in pos..pos + speed {
            if t % 2 == 0 {
                alpha.beta[circle - 1] += 1;
            } else {
                alpha.tau[circle - 1] += 1;
            }
        }
    }
    for i in 1..=n {
        if g.has_c(i) {
            alpha.tau[i - 1] += 1;
            alpha.beta[i - 1] += 1;
        }
    }
    let mut inv2 = 0i64;
    let mut m2 = 0i64;
    for (i, &st) in starts.iter().enumerate().take(n + 1).skip(1) {
        let c = g.has_c(i) as i64;
        inv2 += match st {
            0 => 0,
            1 => 2 * c,
            _ => (g.p(i) as i64 - g.q(i) as i64).abs() + 4 * c,
        };
        m2 += st as i64 * alpha.total(i);
    }
    GPrime { j2: inv2 - m2, alpha }
}

/// `Θ_S`: shifts `j` by the signed multiplicities. Returns `(j, α)` with an
/// integral `j`.
pub fn theta(ctx: &Ctx, g: &GPrime) -> Result<(i64, HomologyClass)> {
    let shift: i64 = (1..=g.alpha.n())
        .map(|i| if ctx.in_s(i) { -g.alpha.total(i) } else { g.alpha.total(i) })
        .sum();
    let j2 = g.j2 + shift;
    if j2 % 2 != 0 {
        return Err(Error::Consistency(format!("Θ_S gives half-integral j = {j2}/2")));
    }
    Ok((j2 / 2, g.alpha.clone()))
}

/// `Ψ`: collapses an unrefined class to doubled refined weights.
pub fn psi_refine(j: i64, alpha: &HomologyClass) -> (i64, Vec<i64>) {
    (j, (1..=alpha.n()).map(|i| alpha.total(i)).collect())
}
