//! Ordinary persistence through the standard left-to-right column reduction.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::complex::{Chain, Filtration, TimeValue};
use crate::exactla::{int, rank, Scalar};

/// A half-open interval `[birth, death)` in dimension `dim`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bar {
    pub dim: usize,
    pub birth: Scalar,
    pub death: TimeValue,
    pub representative: Option<Chain>,
}

impl Bar {
    pub fn new(dim: usize, birth: Scalar, death: TimeValue) -> Self {
        Self { dim, birth, death, representative: None }
    }

    pub fn with_representative(mut self, chain: Chain) -> Self {
        self.representative = Some(chain);
        self
    }

    pub fn interval(&self) -> (Scalar, TimeValue) {
        (self.birth.clone(), self.death.clone())
    }

    pub fn is_alive_at(&self, t: &Scalar) -> bool {
        &self.birth <= t && TimeValue::Finite(t.clone()) < self.death
    }

    fn is_degenerate(&self) -> bool {
        self.death <= TimeValue::Finite(self.birth.clone())
    }
}

/// A multiset of bars of one dimension, sorted by `(birth, death)`.
/// Zero-length intervals are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Barcode {
    dim: usize,
    bars: Vec<Bar>,
}

impl Barcode {
    pub fn new(dim: usize, bars: impl IntoIterator<Item = Bar>) -> Self {
        let mut bars: Vec<Bar> = bars
            .into_iter()
            .inspect(|b| assert_eq!(b.dim, dim, "bar dimension differs from barcode dimension"))
            .filter(|b| !b.is_degenerate())
            .collect();
        bars.sort_by(|a, b| a.birth.cmp(&b.birth).then_with(|| a.death.cmp(&b.death)));
        Self { dim, bars }
    }

    pub fn from_intervals(dim: usize, intervals: impl IntoIterator<Item = (Scalar, TimeValue)>) -> Self {
        Self::new(dim, intervals.into_iter().map(|(b, d)| Bar::new(dim, b, d)))
    }

    pub fn empty(dim: usize) -> Self {
        Self { dim, bars: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bars(&self) -> &[Bar] {
        &self.bars
    }

    pub fn len(&self) -> usize {
        self.bars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    /// The bars as intervals, representatives dropped.
    pub fn intervals(&self) -> Vec<(Scalar, TimeValue)> {
        self.bars.iter().map(Bar::interval).collect()
    }

    pub fn alive_at(&self, t: &Scalar) -> usize {
        self.bars.iter().filter(|b| b.is_alive_at(t)).count()
    }

    /// `"birth death"` per line with `inf` for an infinite death.
    pub fn to_text(&self) -> String {
        self.bars.iter().map(|b| format!("{} {}\n", TimeValue::Finite(b.birth.clone()), b.death)).collect()
    }
}

/// Birth and (optional) death simplex, as global filtration positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PersistencePair {
    pub birth: usize,
    pub death: Option<usize>,
}

/// Result of reducing the full boundary matrix.
#[derive(Clone, Debug)]
pub struct Reduction {
    /// Sorted by birth position.
    pub pairs: Vec<PersistencePair>,
    /// Reduced columns `R = ∂V`, rows and columns in global order.
    pub reduced: Vec<BTreeMap<usize, Scalar>>,
    /// One cycle per pair: the reduced death column for finite pairs, the
    /// kernel column of `V` at the birth for essential ones.
    pub representatives: Vec<Chain>,
}

type Column = BTreeMap<usize, Scalar>;

fn sub_scaled(target: &mut Column, factor: &Scalar, source: &Column) {
    for (r, v) in source {
        let entry = target.entry(*r).or_insert_with(Scalar::zero);
        *entry -= factor * v;
        if entry.is_zero() {
            target.remove(r);
        }
    }
}

/// Standard persistence reduction over the rationals, in filtration order.
pub fn reduce(f: &Filtration) -> Reduction {
    let n = f.len();
    let mut reduced: Vec<Column> = Vec::with_capacity(n);
    let mut v_cols: Vec<Column> = Vec::with_capacity(n);
    let mut pivot_of_low: HashMap<usize, usize> = HashMap::new();

    for (j, s) in f.simplices().iter().enumerate() {
        let mut col: Column =
            s.boundary().map(|(sign, face)| (f.index_of(&face).expect("closed filtration"), int(sign))).collect();
        let mut v: Column = BTreeMap::from([(j, int(1))]);
        while let Some((&low, low_val)) = col.last_key_value() {
            let Some(&k) = pivot_of_low.get(&low) else { break };
            let factor = low_val / &reduced[k][&low];
            sub_scaled(&mut col, &factor, &reduced[k]);
            sub_scaled(&mut v, &factor, &v_cols[k]);
        }
        if let Some((&low, _)) = col.last_key_value() {
            pivot_of_low.insert(low, j);
        }
        reduced.push(col);
        v_cols.push(v);
    }

    let chain_of = |dim: usize, col: &Column| {
        Chain::from_terms(dim, col.iter().map(|(&r, c)| (f.simplices()[r].clone(), c.clone())))
    };
    let mut pairs = Vec::new();
    let mut representatives = Vec::new();
    for j in 0..n {
        if !reduced[j].is_empty() {
            continue;
        }
        let dim = f.simplices()[j].dim();
        match pivot_of_low.get(&j) {
            Some(&d) => {
                pairs.push(PersistencePair { birth: j, death: Some(d) });
                representatives.push(chain_of(dim, &reduced[d]));
            }
            None => {
                pairs.push(PersistencePair { birth: j, death: None });
                representatives.push(chain_of(dim, &v_cols[j]));
            }
        }
    }
    Reduction { pairs, reduced, representatives }
}

/// Dimension-`p` persistence barcode with a representative cycle on each bar.
pub fn persistence_barcode(f: &Filtration, p: usize) -> Barcode {
    barcode_from_reduction(f, &reduce(f), p)
}

pub fn barcode_from_reduction(f: &Filtration, red: &Reduction, p: usize) -> Barcode {
    let bars = red.pairs.iter().zip(&red.representatives).filter_map(|(pair, rep)| {
        if f.simplices()[pair.birth].dim() != p {
            return None;
        }
        let death = match pair.death {
            Some(d) => TimeValue::Finite(f.time(d).clone()),
            None => TimeValue::Infinite,
        };
        Some(Bar::new(p, f.time(pair.birth).clone(), death).with_representative(rep.clone()))
    });
    Barcode::new(p, bars)
}

/// `β_p(K_t) = dim ker ∂_p(t) - rank ∂_{p+1}(t)` at every critical time,
/// computed from matrix ranks alone.
pub fn betti_table(f: &Filtration, p: usize) -> BTreeMap<Scalar, usize> {
    f.critical_times()
        .iter()
        .map(|t| {
            let d_p = f.boundary_matrix(p, t);
            let cycles = d_p.ncols() - rank(&d_p);
            let boundaries = rank(&f.boundary_matrix(p + 1, t));
            (t.clone(), cycles - boundaries)
        })
        .collect()
}
