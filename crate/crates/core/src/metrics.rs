//! Bottleneck distance between barcodes with exact endpoints.
//!
//! Points are matched to points or to the diagonal. The cost of a pair is the
//! ℓ∞ distance of the endpoints (`∞ - ∞` counts as zero), the cost of sending
//! a bar to the diagonal is half its length. The distance is the smallest
//! edge cost at which the bipartite graph on `D ∪ diag(D')` versus
//! `D' ∪ diag(D)` has a perfect matching.

use std::collections::VecDeque;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::complex::TimeValue;
use crate::exactla::{ratio, Scalar};
use crate::persistence::Barcode;

/// Largest side accepted by [`bottleneck_bruteforce`].
pub const BRUTEFORCE_LIMIT: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricsError {
    #[error("barcodes have different dimensions ({0} and {1})")]
    DimensionMismatch(usize, usize),
    #[error("brute force handles at most {BRUTEFORCE_LIMIT} bars per side, got {0} and {1}")]
    TooLarge(usize, usize),
}

/// One entry of an optimal matching, indices into the bars of each side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatchedPair {
    Bars(usize, usize),
    LeftToDiagonal(usize),
    RightToDiagonal(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub cost: TimeValue,
    pub pairs: Vec<MatchedPair>,
}

type Interval = (Scalar, TimeValue);

fn pair_cost(a: &Interval, b: &Interval) -> TimeValue {
    let births = (&a.0 - &b.0).abs();
    match (&a.1, &b.1) {
        (TimeValue::Finite(x), TimeValue::Finite(y)) => TimeValue::Finite(births.max((x - y).abs())),
        (TimeValue::Infinite, TimeValue::Infinite) => TimeValue::Finite(births),
        _ => TimeValue::Infinite,
    }
}

fn diagonal_cost(a: &Interval) -> TimeValue {
    match &a.1 {
        TimeValue::Finite(d) => TimeValue::Finite((d - &a.0) * ratio(1, 2)),
        TimeValue::Infinite => TimeValue::Infinite,
    }
}

fn check_dims(a: &Barcode, b: &Barcode) -> Result<(), MetricsError> {
    if a.dim() != b.dim() {
        return Err(MetricsError::DimensionMismatch(a.dim(), b.dim()));
    }
    Ok(())
}

/// Edge costs of the doubled bipartite graph. `None` marks a missing edge.
/// Left vertex `k < n` is bar `k` of `a`, left vertex `n + l` is the
/// diagonal copy of bar `l` of `b`; right vertices mirror this.
struct Graph {
    n: usize,
    m: usize,
    a: Vec<Interval>,
    b: Vec<Interval>,
}

impl Graph {
    fn size(&self) -> usize {
        self.n + self.m
    }

    fn cost(&self, left: usize, right: usize) -> Option<TimeValue> {
        let (n, m) = (self.n, self.m);
        match (left < n, right < m) {
            (true, true) => Some(pair_cost(&self.a[left], &self.b[right])),
            (true, false) => (right - m == left).then(|| diagonal_cost(&self.a[left])),
            (false, true) => (left - n == right).then(|| diagonal_cost(&self.b[right])),
            (false, false) => Some(TimeValue::Finite(Scalar::zero())),
        }
    }

    fn candidates(&self) -> Vec<TimeValue> {
        let mut out: Vec<TimeValue> = Vec::new();
        for l in 0..self.size() {
            for r in 0..self.size() {
                if l >= self.n && r >= self.m {
                    continue;
                }
                if let Some(c) = self.cost(l, r) {
                    out.push(c);
                }
            }
        }
        out.push(TimeValue::Finite(Scalar::zero()));
        out.sort();
        out.dedup();
        out
    }

    /// Perfect matching using only edges of cost at most `bound`.
    fn perfect_matching(&self, bound: &TimeValue) -> Option<Vec<usize>> {
        let size = self.size();
        let adjacency: Vec<Vec<usize>> =
            (0..size).map(|l| (0..size).filter(|&r| self.cost(l, r).is_some_and(|c| &c <= bound)).collect()).collect();
        let matched = hopcroft_karp(&adjacency, size);
        matched.iter().all(Option::is_some).then(|| matched.into_iter().flatten().collect())
    }
}

/// Maximum bipartite matching; returns the right partner of every left vertex.
fn hopcroft_karp(adjacency: &[Vec<usize>], right_size: usize) -> Vec<Option<usize>> {
    const FREE: usize = usize::MAX;
    let left_size = adjacency.len();
    let mut pair_left = vec![FREE; left_size];
    let mut pair_right = vec![FREE; right_size];
    let mut layer = vec![0usize; left_size];

    loop {
        // layered BFS from all free left vertices
        let mut queue = VecDeque::new();
        let mut found = false;
        for l in 0..left_size {
            if pair_left[l] == FREE {
                layer[l] = 0;
                queue.push_back(l);
            } else {
                layer[l] = usize::MAX;
            }
        }
        while let Some(l) = queue.pop_front() {
            for &r in &adjacency[l] {
                let next = pair_right[r];
                if next == FREE {
                    found = true;
                } else if layer[next] == usize::MAX {
                    layer[next] = layer[l] + 1;
                    queue.push_back(next);
                }
            }
        }
        if !found {
            break;
        }
        for l in 0..left_size {
            if pair_left[l] == FREE {
                augment(l, adjacency, &mut pair_left, &mut pair_right, &mut layer);
            }
        }
    }
    pair_left.into_iter().map(|r| (r != FREE).then_some(r)).collect()
}

fn augment(
    l: usize,
    adjacency: &[Vec<usize>],
    pair_left: &mut [usize],
    pair_right: &mut [usize],
    layer: &mut [usize],
) -> bool {
    for &r in &adjacency[l] {
        let next = pair_right[r];
        let ok = next == usize::MAX
            || (layer[next] == layer[l] + 1 && augment(next, adjacency, pair_left, pair_right, layer));
        if ok {
            pair_left[l] = r;
            pair_right[r] = l;
            return true;
        }
    }
    layer[l] = usize::MAX;
    false
}

fn graph(a: &Barcode, b: &Barcode) -> Graph {
    let a = a.intervals();
    let b = b.intervals();
    Graph { n: a.len(), m: b.len(), a, b }
}

/// Bottleneck distance, exact. Infinite when the numbers of infinite bars
/// differ.
pub fn bottleneck(a: &Barcode, b: &Barcode) -> Result<TimeValue, MetricsError> {
    Ok(bottleneck_matching(a, b)?.cost)
}

/// Bottleneck distance together with an optimal matching.
pub fn bottleneck_matching(a: &Barcode, b: &Barcode) -> Result<Matching, MetricsError> {
    check_dims(a, b)?;
    let g = graph(a, b);
    let candidates = g.candidates();
    // the largest candidate always admits the matching sending everything
    // to the diagonal
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if g.perfect_matching(&candidates[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let cost = candidates[lo].clone();
    let partner = g.perfect_matching(&cost).expect("feasible at the optimum");
    let mut pairs = Vec::new();
    for (l, &r) in partner.iter().enumerate() {
        match (l < g.n, r < g.m) {
            (true, true) => pairs.push(MatchedPair::Bars(l, r)),
            (true, false) => pairs.push(MatchedPair::LeftToDiagonal(l)),
            (false, true) => pairs.push(MatchedPair::RightToDiagonal(r)),
            (false, false) => {}
        }
    }
    Ok(Matching { cost, pairs })
}

/// Bottleneck distance by enumerating every partial injection. Only for
/// small barcodes; used as a reference.
pub fn bottleneck_bruteforce(a: &Barcode, b: &Barcode) -> Result<TimeValue, MetricsError> {
    check_dims(a, b)?;
    if a.len() > BRUTEFORCE_LIMIT || b.len() > BRUTEFORCE_LIMIT {
        return Err(MetricsError::TooLarge(a.len(), b.len()));
    }
    let a = a.intervals();
    let b = b.intervals();
    let mut used = vec![false; b.len()];
    Ok(search(&a, &b, 0, &mut used, TimeValue::Finite(Scalar::zero())))
}

fn search(a: &[Interval], b: &[Interval], k: usize, used: &mut [bool], worst: TimeValue) -> TimeValue {
    if k == a.len() {
        return b
            .iter()
            .zip(used.iter())
            .filter(|(_, u)| !**u)
            .map(|(iv, _)| diagonal_cost(iv))
            .fold(worst, std::cmp::max);
    }
    let mut best = search(a, b, k + 1, used, worst.clone().max(diagonal_cost(&a[k])));
    for j in 0..b.len() {
        if !used[j] {
            used[j] = true;
            best = best.min(search(a, b, k + 1, used, worst.clone().max(pair_cost(&a[k], &b[j]))));
            used[j] = false;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::int;

    fn fin(n: i64) -> TimeValue {
        TimeValue::Finite(int(n))
    }

    fn bc(dim: usize, bars: &[(i64, Option<i64>)]) -> Barcode {
        Barcode::from_intervals(dim, bars.iter().map(|&(b, d)| (int(b), d.map_or(TimeValue::Infinite, fin))))
    }

    #[test]
    fn examples() {
        let a = bc(1, &[(0, Some(4))]);
        let b = bc(1, &[(1, Some(4))]);
        assert_eq!(bottleneck(&a, &b).unwrap(), fin(1));
        assert_eq!(bottleneck(&a, &bc(1, &[])).unwrap(), fin(2));
        let inf = bc(1, &[(0, None)]);
        assert_eq!(bottleneck(&inf, &bc(1, &[])).unwrap(), TimeValue::Infinite);
        assert_eq!(bottleneck(&inf, &bc(1, &[(3, None)])).unwrap(), fin(3));
        assert_eq!(bottleneck(&bc(1, &[]), &bc(1, &[])).unwrap(), fin(0));
        let odd = bc(1, &[(0, Some(1))]);
        assert_eq!(bottleneck(&odd, &bc(1, &[])).unwrap(), TimeValue::Finite(ratio(1, 2)));
        let shifted = Barcode::from_intervals(1, [(ratio(1, 2), TimeValue::Finite(ratio(7, 2)))]);
        assert_eq!(bottleneck(&bc(1, &[(0, Some(3))]), &shifted).unwrap(), TimeValue::Finite(ratio(1, 2)));
        let short = bc(1, &[(0, Some(1)), (0, Some(4))]);
        assert_eq!(bottleneck(&short, &bc(1, &[(0, Some(4))])).unwrap(), TimeValue::Finite(ratio(1, 2)));
        assert_eq!(bottleneck_bruteforce(&short, &bc(1, &[(0, Some(4))])).unwrap(), TimeValue::Finite(ratio(1, 2)));
        assert_eq!(bottleneck_bruteforce(&inf, &bc(1, &[])).unwrap(), TimeValue::Infinite);
    }

    #[test]
    fn dimension_mismatch() {
        assert_eq!(bottleneck(&bc(0, &[]), &bc(1, &[])), Err(MetricsError::DimensionMismatch(0, 1)));
    }

    #[test]
    fn bruteforce_agrees_and_limits() {
        let a = bc(1, &[(0, Some(4)), (1, Some(6)), (2, None)]);
        let b = bc(1, &[(1, Some(5)), (3, None), (0, Some(2))]);
        assert_eq!(bottleneck(&a, &b).unwrap(), bottleneck_bruteforce(&a, &b).unwrap());
        let big = bc(1, &[(0, Some(1)); 7]);
        assert_eq!(bottleneck_bruteforce(&big, &a), Err(MetricsError::TooLarge(7, 3)));
    }

    #[test]
    fn matching_witness_achieves_cost() {
        let a = bc(1, &[(0, Some(10)), (5, Some(6))]);
        let b = bc(1, &[(1, Some(9))]);
        let m = bottleneck_matching(&a, &b).unwrap();
        assert_eq!(m.cost, fin(1));
        let ai = a.intervals();
        let bi = b.intervals();
        let mut worst = fin(0);
        for p in &m.pairs {
            let c = match p {
                MatchedPair::Bars(i, j) => pair_cost(&ai[*i], &bi[*j]),
                MatchedPair::LeftToDiagonal(i) => diagonal_cost(&ai[*i]),
                MatchedPair::RightToDiagonal(j) => diagonal_cost(&bi[*j]),
            };
            worst = worst.max(c);
        }
        assert_eq!(worst, m.cost);
    }
}
