//! Formal F2 sums of basis elements.

use std::collections::BTreeSet;
use std::ops::{Add, AddAssign};

/// A finite set of basis elements standing for their sum over F2.
/// Adding an element already present cancels it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain<G: Ord> {
    terms: BTreeSet<G>,
}

impl<G: Ord> Default for Chain<G> {
    fn default() -> Self {
        Chain { terms: BTreeSet::new() }
    }
}

impl<G: Ord + Clone> Chain<G> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(g: G) -> Self {
        let mut c = Self::zero();
        c.toggle(g);
        c
    }

    pub fn toggle(&mut self, g: G) {
        if !self.terms.remove(&g) {
            self.terms.insert(g);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, g: &G) -> bool {
        self.terms.contains(g)
    }

    pub fn iter(&self) -> impl Iterator<Item = &G> {
        self.terms.iter()
    }

    /// The unique term, if there is exactly one.
    pub fn as_single(&self) -> Option<&G> {
        if self.terms.len() == 1 {
            self.terms.first()
        } else {
            None
        }
    }

    /// Bilinear extension of a map on basis elements.
    pub fn flat_map<H: Ord + Clone, I: IntoIterator<Item = H>>(&self, mut f: impl FnMut(&G) -> I) -> Chain<H> {
        let mut out = Chain::zero();
        for g in &self.terms {
            for h in f(g) {
                out.toggle(h);
            }
        }
        out
    }
}

impl<G: Ord + Clone> FromIterator<G> for Chain<G> {
    fn from_iter<I: IntoIterator<Item = G>>(iter: I) -> Self {
        let mut c = Chain::zero();
        for g in iter {
            c.toggle(g);
        }
        c
    }
}

impl<G: Ord + Clone> IntoIterator for Chain<G> {
    type Item = G;
    type IntoIter = std::collections::btree_set::IntoIter<G>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<G: Ord + Clone> AddAssign<&Chain<G>> for Chain<G> {
    fn add_assign(&mut self, rhs: &Chain<G>) {
        for g in &rhs.terms {
            self.toggle(g.clone());
        }
    }
}

impl<G: Ord + Clone> Add<&Chain<G>> for &Chain<G> {
    type Output = Chain<G>;
    fn add(self, rhs: &Chain<G>) -> Chain<G> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn addition_is_symmetric_difference() {
        let a: Chain<u8> = [1, 2].into_iter().collect();
        let b: Chain<u8> = [2, 3].into_iter().collect();
        assert_eq!(&a + &b, [1, 3].into_iter().collect());
        assert!((&a + &a).is_zero());
        assert_eq!([4, 4, 4].into_iter().collect::<Chain<u8>>(), Chain::single(4));
    }
}
