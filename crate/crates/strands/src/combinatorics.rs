//! I-states, the weights `v_i`, farness, line classification and the
//! canonical paths `γ_{x,y}`.
//!
//! Coordinates (the regions between lines) run over `[0,n]`; lines over
//! `[1,n]`. Line `i` separates coordinates `i-1` and `i`.

use std::cmp::Ordering;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported width. Members are packed into a `u64`.
pub const MAX_N: usize = 62;

/// A subset of `[0,n]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct IState {
    n: usize,
    bits: u64,
}

impl IState {
    pub fn new(n: usize, members: &[usize]) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::param(format!("n = {n} outside [1,{MAX_N}]")));
        }
        let mut bits = 0u64;
        for &m in members {
            if m > n {
                return Err(Error::param(format!("coordinate {m} outside [0,{n}]")));
            }
            if bits & (1 << m) != 0 {
                return Err(Error::param(format!("coordinate {m} repeated")));
            }
            bits |= 1 << m;
        }
        Ok(IState { n, bits })
    }

    /// Panics if `bits` has members beyond `n`.
    pub fn from_bits(n: usize, bits: u64) -> Self {
        assert!((1..=MAX_N).contains(&n) && bits >> (n + 1) == 0);
        IState { n, bits }
    }

    pub fn full(n: usize) -> Self {
        IState::from_bits(n, (1u64 << (n + 1)) - 1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    /// Out-of-range coordinates (including negative ones) are never members.
    pub fn contains(&self, i: isize) -> bool {
        i >= 0 && (i as usize) <= self.n && self.bits & (1 << i) != 0
    }

    pub fn has(&self, i: usize) -> bool {
        i <= self.n && self.bits & (1 << i) != 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..=self.n).filter(move |&i| self.has(i))
    }

    pub fn members(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// `|x ∩ [i,n]|`
    pub fn count_from(&self, i: usize) -> i64 {
        if i > self.n {
            0
        } else {
            (self.bits >> i).count_ones() as i64
        }
    }

    pub fn with(&self, i: usize) -> Self {
        IState::from_bits(self.n, self.bits | 1 << i)
    }

    pub fn without(&self, i: usize) -> Self {
        IState::from_bits(self.n, self.bits & !(1 << i))
    }

    /// `{n-i : i ∈ x}`
    pub fn rho(&self) -> Self {
        let mut bits = 0;
        for i in self.iter() {
            bits |= 1 << (self.n - i);
        }
        IState::from_bits(self.n, bits)
    }
}

impl Ord for IState {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for IState {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.iter().join(","))
    }
}

/// All `k`-subsets of `[0,n]` in lexicographic order.
pub fn enumerate_istates(n: usize, k: usize) -> Result<Vec<IState>> {
    if n == 0 || n > MAX_N {
        return Err(Error::param(format!("n = {n} outside [1,{MAX_N}]")));
    }
    if k > n + 1 {
        return Err(Error::param(format!("k = {k} exceeds n+1 = {}", n + 1)));
    }
    Ok((0..=n)
        .combinations(k)
        .map(|c| IState::new(n, &c).expect("in range"))
        .collect())
}

fn same_shape(x: &IState, y: &IState) -> Result<()> {
    if x.n != y.n || x.len() != y.len() {
        return Err(Error::param(format!("{x} and {y} live in different V(n,k)")));
    }
    Ok(())
}

/// `v_i(x,y) = |y ∩ [i,n]| - |x ∩ [i,n]|`, unchecked.
pub fn v(x: &IState, y: &IState, i: usize) -> i64 {
    y.count_from(i) - x.count_from(i)
}

/// `v_1..v_n` at positions `0..n`.
pub fn v_vector(x: &IState, y: &IState) -> Vec<i64> {
    (1..=x.n).map(|i| v(x, y, i)).collect()
}

pub fn weight_v(x: &IState, y: &IState, i: usize) -> Result<i64> {
    same_shape(x, y)?;
    if i == 0 || i > x.n {
        return Err(Error::param(format!("line {i} outside [1,{}]", x.n)));
    }
    Ok(v(x, y, i))
}

/// Unchecked farness; assumes equal sizes.
pub fn far(x: &IState, y: &IState) -> bool {
    x.iter()
        .zip(y.iter())
        .any(|(a, b)| a.abs_diff(b) > 1)
}

pub fn is_far(x: &IState, y: &IState) -> Result<bool> {
    same_shape(x, y)?;
    Ok(far(x, y))
}

/// Closed range of lines.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

impl Interval {
    pub fn len(&self) -> usize {
        self.hi + 1 - self.lo
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, i: usize) -> bool {
        self.lo <= i && i <= self.hi
    }

    pub fn lines(&self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IntervalKind {
    Generating,
    LeftEdge,
    RightEdge,
    TwoFaced,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LineClassification {
    pub crossed: Vec<usize>,
    pub generating: Vec<Interval>,
    pub left_edge: Option<Interval>,
    pub right_edge: Option<Interval>,
    pub two_faced: bool,
}

impl LineClassification {
    /// Every non-crossed block in left-to-right order. The two-faced case
    /// yields the whole of `[1,n]`.
    pub fn intervals(&self, n: usize) -> Vec<(Interval, IntervalKind)> {
        if self.two_faced {
            return vec![(Interval { lo: 1, hi: n }, IntervalKind::TwoFaced)];
        }
        let mut out = Vec::new();
        out.extend(self.left_edge.map(|g| (g, IntervalKind::LeftEdge)));
        out.extend(self.generating.iter().map(|&g| (g, IntervalKind::Generating)));
        out.extend(self.right_edge.map(|g| (g, IntervalKind::RightEdge)));
        out.sort();
        out
    }

    pub fn is_crossed(&self, i: usize) -> bool {
        self.crossed.contains(&i)
    }

    /// Whether `U^r` is divisible by some `p_G`; `r[i-1]` is the exponent of `U_i`.
    pub fn divisible(&self, r: &[u32]) -> Option<Interval> {
        self.generating
            .iter()
            .copied()
            .find(|g| g.lines().all(|i| r[i - 1] > 0))
    }
}

/// Unchecked classification; assumes a not-far pair.
pub fn classify(x: &IState, y: &IState) -> LineClassification {
    let n = x.n;
    let full = x.bits & y.bits;
    let open: Vec<usize> = (0..=n).filter(|&j| full & (1 << j) == 0).collect();
    let mut out = LineClassification::default();
    let (Some(&first), Some(&last)) = (open.first(), open.last()) else {
        out.two_faced = true;
        return out;
    };
    if first > 0 {
        out.left_edge = Some(Interval { lo: 1, hi: first });
    }
    if last < n {
        out.right_edge = Some(Interval { lo: last + 1, hi: n });
    }
    for (&a, &b) in open.iter().tuple_windows() {
        // v is constant across a fully used coordinate.
        if v(x, y, b) != 0 {
            out.crossed.extend(a + 1..=b);
        } else {
            out.generating.push(Interval { lo: a + 1, hi: b });
        }
    }
    out
}

pub fn classify_lines(x: &IState, y: &IState) -> Result<LineClassification> {
    if is_far(x, y)? {
        return Err(Error::Far { x: x.to_string(), y: y.to_string() });
    }
    Ok(classify(x, y))
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LabelKind {
    R,
    L,
    U,
    C,
}

/// A quiver edge label such as `R_3`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Label {
    pub kind: LabelKind,
    pub index: usize,
}

impl Label {
    pub fn r(i: usize) -> Self {
        Label { kind: LabelKind::R, index: i }
    }
    pub fn l(i: usize) -> Self {
        Label { kind: LabelKind::L, index: i }
    }
    pub fn u(i: usize) -> Self {
        Label { kind: LabelKind::U, index: i }
    }
    pub fn c(i: usize) -> Self {
        Label { kind: LabelKind::C, index: i }
    }

    /// Target of this edge when leaving `x`, or `None` if it does not leave `x`.
    pub fn step(&self, x: &IState) -> Option<IState> {
        let i = self.index;
        if i == 0 || i > x.n() {
            return None;
        }
        let (lo, hi) = (x.has(i - 1), x.has(i));
        match self.kind {
            LabelKind::R if lo && !hi => Some(x.without(i - 1).with(i)),
            LabelKind::L if hi && !lo => Some(x.without(i).with(i - 1)),
            LabelKind::U | LabelKind::C => Some(*x),
            _ => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            LabelKind::R => 'R',
            LabelKind::L => 'L',
            LabelKind::U => 'U',
            LabelKind::C => 'C',
        };
        write!(f, "{k}{}", self.index)
    }
}

/// Unchecked `γ_{x,y}`; assumes a not-far pair.
pub fn gamma(x: &IState, y: &IState) -> Vec<Label> {
    let ys = y.members();
    let mut cur = *x;
    let mut path = Vec::new();
    loop {
        let xs = cur.members();
        let label = if let Some(a) = (0..xs.len()).rev().find(|&a| xs[a] < ys[a]) {
            Label::r(xs[a] + 1)
        } else if let Some(a) = (0..xs.len()).find(|&a| xs[a] > ys[a]) {
            Label::l(xs[a])
        } else {
            return path;
        };
        cur = label.step(&cur).expect("γ only takes legal steps");
        path.push(label);
    }
}

pub fn gamma_path(x: &IState, y: &IState) -> Result<Vec<Label>> {
    if is_far(x, y)? {
        return Err(Error::Far { x: x.to_string(), y: y.to_string() });
    }
    Ok(gamma(x, y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(n: usize, m: &[usize]) -> IState {
        IState::new(n, m).unwrap()
    }

    #[test]
    fn enumerates_in_lex_order() {
        assert_eq!(enumerate_istates(1, 1).unwrap(), vec![st(1, &[0]), st(1, &[1])]);
        let v53 = enumerate_istates(5, 3).unwrap();
        assert_eq!(v53.len(), 20);
        assert!(v53.contains(&st(5, &[1, 3, 4])) && v53.contains(&st(5, &[0, 2, 5])));
        assert!(v53.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(enumerate_istates(2, 3).unwrap(), vec![IState::full(2)]);
        assert!(enumerate_istates(2, 4).is_err());
    }

    #[test]
    fn weights_and_farness() {
        let x = st(5, &[0, 1, 2, 5]);
        let y = st(5, &[0, 2, 3, 4]);
        assert_eq!(weight_v(&x, &y, 2).unwrap(), 1);
        assert_eq!(weight_v(&x, &y, 5).unwrap(), -1);
        assert!(!is_far(&x, &y).unwrap());
        assert!(is_far(&st(2, &[0]), &st(2, &[2])).unwrap());
        assert!(is_far(&st(2, &[0]), &st(2, &[0, 1])).is_err());
    }

    #[test]
    fn classification_examples() {
        let c = classify_lines(&st(2, &[1]), &st(2, &[1])).unwrap();
        assert_eq!(c.generating, vec![Interval { lo: 1, hi: 2 }]);
        assert!(c.crossed.is_empty() && c.left_edge.is_none() && c.right_edge.is_none());

        let c = classify_lines(&st(1, &[0]), &st(1, &[0])).unwrap();
        assert_eq!(c.left_edge, Some(Interval { lo: 1, hi: 1 }));
        assert!(c.generating.is_empty() && c.right_edge.is_none() && !c.two_faced);

        let c = classify_lines(&st(1, &[0, 1]), &st(1, &[0, 1])).unwrap();
        assert!(c.two_faced);
        assert!(classify_lines(&st(2, &[0]), &st(2, &[2])).is_err());
    }

    #[test]
    fn gamma_examples() {
        let x = st(5, &[0, 1, 2, 5]);
        let y = st(5, &[0, 2, 3, 4]);
        assert_eq!(gamma_path(&x, &y).unwrap(), vec![Label::r(3), Label::r(2), Label::l(5)]);
        assert_eq!(gamma_path(&st(1, &[0]), &st(1, &[1])).unwrap(), vec![Label::r(1)]);
        assert!(gamma_path(&x, &x).unwrap().is_empty());
    }

    #[test]
    fn rho_reverses() {
        assert_eq!(st(3, &[0, 1]).rho(), st(3, &[2, 3]));
        assert_eq!(st(3, &[0, 1]).rho().rho(), st(3, &[0, 1]));
    }
}
