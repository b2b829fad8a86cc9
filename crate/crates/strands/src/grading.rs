//! The four combinatorial gradings shared by both algebras.
//!
//! Half-integers are stored doubled.

use std::ops::Add;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Grading {
    pub maslov: i64,
    /// Coefficients `(τ_i, β_i)` of the unrefined Alexander grading.
    pub unrefined: Vec<(i64, i64)>,
    /// Doubled refined Alexander grading `2 w_i`.
    pub refined2: Vec<i64>,
    /// Doubled single Alexander grading.
    pub alex2: i64,
}

impl Grading {
    pub fn zero(n: usize) -> Self {
        Grading { maslov: 0, unrefined: vec![(0, 0); n], refined2: vec![0; n], alex2: 0 }
    }

    /// The unrefined grading with `τ_i` and `β_i` exchanged on every line.
    pub fn swap_tau_beta(&self) -> Self {
        Grading {
            unrefined: self.unrefined.iter().map(|&(t, b)| (b, t)).collect(),
            ..self.clone()
        }
    }

    /// Everything except the Maslov component.
    pub fn alexander(&self) -> (&[(i64, i64)], &[i64], i64) {
        (&self.unrefined, &self.refined2, self.alex2)
    }
}

impl Add for &Grading {
    type Output = Grading;
    fn add(self, rhs: &Grading) -> Grading {
        Grading {
            maslov: self.maslov + rhs.maslov,
            unrefined: self
                .unrefined
                .iter()
                .zip(&rhs.unrefined)
                .map(|(a, b)| (a.0 + b.0, a.1 + b.1))
                .collect(),
            refined2: self.refined2.iter().zip(&rhs.refined2).map(|(a, b)| a + b).collect(),
            alex2: self.alex2 + rhs.alex2,
        }
    }
}

/// Formats a doubled half-integer.
pub fn half(v2: i64) -> String {
    if v2 % 2 == 0 {
        format!("{}", v2 / 2)
    } else {
        format!("{}/2", v2)
    }
}
