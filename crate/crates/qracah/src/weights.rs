//! Dominant weights, the alcove, dominance order and signed-permutation orbits.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use itertools::Itertools;

use crate::{Error, Result};

/// A weakly decreasing vector of nonnegative integers.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Weight(Vec<u32>);

/// An element of the hyperoctahedral orbit of a weight.
pub type SignedVector = Vec<i32>;

impl Weight {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidInput("weight needs at least one part".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!("parts {parts:?} are not weakly decreasing")));
        }
        Ok(Weight(parts))
    }

    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    /// `(1, .., 1, 0, .., 0)` with `r` leading ones.
    pub fn fundamental(n: usize, r: usize) -> Self {
        Weight((0..n).map(|j| u32::from(j < r)).collect())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn in_alcove(&self, big_n: u32) -> bool {
        self.0[0] <= big_n
    }

    /// `self + delta`, or `None` when the result leaves the dominant cone.
    pub fn shifted(&self, delta: &[i32]) -> Option<Weight> {
        let mut out = Vec::with_capacity(self.0.len());
        for (&p, &d) in self.0.iter().zip(delta) {
            let v = i64::from(p) + i64::from(d);
            if v < 0 {
                return None;
            }
            out.push(v as u32);
        }
        if out.windows(2).any(|w| w[0] < w[1]) {
            return None;
        }
        Some(Weight(out))
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Number of signed permutations fixing the weight.
    pub fn stabilizer_size(&self) -> usize {
        let zeros = self.0.iter().filter(|&&p| p == 0).count();
        let mut size = factorial(zeros) << zeros;
        for (part, group) in &self.0.iter().chunk_by(|&&p| p) {
            if part != 0 {
                size *= factorial(group.count());
            }
        }
        size
    }
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

impl Ord for Weight {
    fn cmp(&self, other: &Self) -> Ordering {
        total_compare(self, other)
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded lexicographic order; refines dominance.
pub fn total_compare(mu: &Weight, lambda: &Weight) -> Ordering {
    mu.size().cmp(&lambda.size()).then_with(|| mu.0.cmp(&lambda.0))
}

/// `mu <= lambda` in dominance order: every partial sum of `mu` is bounded by
/// the corresponding partial sum of `lambda`.
pub fn dominance_leq(mu: &Weight, lambda: &Weight) -> Result<bool> {
    if mu.len() != lambda.len() {
        return Err(Error::InvalidInput(format!(
            "cannot compare weights of lengths {} and {}",
            mu.len(),
            lambda.len()
        )));
    }
    let (mut a, mut b) = (0u32, 0u32);
    for (x, y) in mu.0.iter().zip(&lambda.0) {
        a += x;
        b += y;
        if a > b {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn dominated(mu: &Weight, lambda: &Weight) -> bool {
    dominance_leq(mu, lambda).unwrap_or(false)
}

/// All weights with parts at most `big_n`, sorted by [`total_compare`].
pub fn enumerate_alcove(n: usize, big_n: u32) -> Vec<Weight> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fill(n, big_n, &mut current, &mut out);
    out.sort();
    out
}

fn fill(n: usize, cap: u32, current: &mut Vec<u32>, out: &mut Vec<Weight>) {
    if current.len() == n {
        out.push(Weight(current.clone()));
        return;
    }
    for p in 0..=cap {
        current.push(p);
        fill(n, p, current, out);
        current.pop();
    }
}

/// All dominant weights dominated by `lambda` (which need not lie in any
/// particular alcove), in total order.
pub fn dominated_span(lambda: &Weight) -> Vec<Weight> {
    enumerate_alcove(lambda.len(), lambda.0[0])
        .into_iter()
        .filter(|mu| dominated(mu, lambda))
        .collect()
}

/// Distinct signed permutations of `lambda`.
pub fn orbit(lambda: &Weight) -> Vec<SignedVector> {
    let n = lambda.len();
    let mut seen = BTreeSet::new();
    for perm in permutation_orbit(lambda) {
        let nonzero: Vec<usize> = (0..n).filter(|&j| perm[j] != 0).collect();
        for mask in 0u32..(1 << nonzero.len()) {
            let mut v: SignedVector = perm.iter().map(|&p| p as i32).collect();
            for (bit, &j) in nonzero.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    v[j] = -v[j];
                }
            }
            seen.insert(v);
        }
    }
    seen.into_iter().collect()
}

/// Distinct permutations of the parts of `lambda`.
pub fn permutation_orbit(lambda: &Weight) -> Vec<Vec<u32>> {
    let n = lambda.len();
    lambda
        .0
        .iter()
        .copied()
        .permutations(n)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// The alcove as an indexed set.
#[derive(Clone, Debug)]
pub struct Alcove {
    n: usize,
    big_n: u32,
    weights: Vec<Weight>,
    index: HashMap<Weight, usize>,
}

impl Alcove {
    pub fn new(n: usize, big_n: u32) -> Self {
        let weights = enumerate_alcove(n, big_n);
        let index = weights.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        Alcove { n, big_n, weights, index }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn level(&self) -> u32 {
        self.big_n
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn get(&self, i: usize) -> &Weight {
        &self.weights[i]
    }

    pub fn index_of(&self, w: &Weight) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Index of `w + delta` when it stays inside the alcove.
    pub fn shift_index(&self, w: &Weight, delta: &[i32]) -> Option<usize> {
        w.shifted(delta).and_then(|s| self.index_of(&s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(p: &[u32]) -> Weight {
        Weight::new(p.to_vec()).unwrap()
    }

    #[test]
    fn small_alcoves() {
        assert_eq!(enumerate_alcove(2, 1), vec![w(&[0, 0]), w(&[1, 0]), w(&[1, 1])]);
        assert_eq!(enumerate_alcove(1, 5).len(), 6);
        assert_eq!(enumerate_alcove(3, 2).len(), 10);
    }

    #[test]
    fn order_examples() {
        assert!(dominance_leq(&w(&[1, 1]), &w(&[2, 0])).unwrap());
        assert!(!dominance_leq(&w(&[2, 0]), &w(&[1, 1])).unwrap());
        assert!(dominance_leq(&w(&[2, 1]), &w(&[2, 1])).unwrap());
        assert!(dominance_leq(&w(&[1]), &w(&[1, 0])).is_err());
        assert_eq!(total_compare(&w(&[1, 1]), &w(&[2, 0])), Ordering::Less);
        assert_eq!(total_compare(&w(&[2, 1]), &w(&[3, 0])), Ordering::Less);
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(orbit(&w(&[0, 0])), vec![vec![0, 0]]);
        assert_eq!(orbit(&w(&[1, 0])).len(), 4);
        assert_eq!(orbit(&w(&[2, 1])).len(), 8);
        assert_eq!(orbit(&w(&[1, 1, 0])).len(), 12);
    }

    #[test]
    fn rejects_increasing_parts() {
        assert!(Weight::new(vec![0, 1]).is_err());
    }

    #[test]
    fn shifting_respects_the_cone() {
        assert_eq!(w(&[1, 1]).shifted(&[0, 1]), None);
        assert_eq!(w(&[1, 0]).shifted(&[0, -1]), None);
        assert_eq!(w(&[2, 1]).shifted(&[0, -1]), Some(w(&[2, 0])));
    }
}
