//! Incremental row reduction over two storage backends.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::scalar::Scalar;

/// Row storage used by elimination. The contract for both backends is the
/// same exact arithmetic; only the memory layout differs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Backend {
    #[default]
    Sparse,
    Dense,
}

impl Backend {
    pub const ALL: [Backend; 2] = [Backend::Sparse, Backend::Dense];
}

pub(crate) trait RowVector: Clone {
    fn from_sparse(len: usize, entries: Vec<(usize, Scalar)>) -> Self;
    fn leading(&self) -> Option<usize>;
    fn coeff(&self, col: usize) -> Scalar;
    /// `self -= factor * other`
    fn sub_scaled(&mut self, factor: &Scalar, other: &Self);
    fn scale(&mut self, factor: &Scalar);
    fn to_dense(&self, len: usize) -> Vec<Scalar>;
}

/// Sorted `(column, value)` pairs, never storing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct SparseRow(Vec<(usize, Scalar)>);

impl RowVector for SparseRow {
    fn from_sparse(_len: usize, mut entries: Vec<(usize, Scalar)>) -> Self {
        entries.retain(|(_, v)| !v.is_zero());
        entries.sort_by_key(|(c, _)| *c);
        Self(entries)
    }

    fn leading(&self) -> Option<usize> {
        self.0.first().map(|(c, _)| *c)
    }

    fn coeff(&self, col: usize) -> Scalar {
        match self.0.binary_search_by_key(&col, |(c, _)| *c) {
            Ok(i) => self.0[i].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    fn sub_scaled(&mut self, factor: &Scalar, other: &Self) {
        if factor.is_zero() {
            return;
        }
        let mut merged = Vec::with_capacity(self.0.len() + other.0.len());
        let mut a = std::mem::take(&mut self.0).into_iter().peekable();
        let mut b = other.0.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((ca, _)), Some((cb, _))) if ca < cb => merged.push(a.next().unwrap()),
                (Some((ca, _)), Some((cb, _))) if ca > cb => {
                    let (c, v) = b.next().unwrap();
                    merged.push((*c, -(factor * v)));
                }
                (Some(_), Some(_)) => {
                    let (c, va) = a.next().unwrap();
                    let (_, vb) = b.next().unwrap();
                    let v = va - factor * vb;
                    if !v.is_zero() {
                        merged.push((c, v));
                    }
                }
                (Some(_), None) => merged.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (c, v) = b.next().unwrap();
                    merged.push((*c, -(factor * v)));
                }
                (None, None) => break,
            }
        }
        self.0 = merged;
    }

    fn scale(&mut self, factor: &Scalar) {
        for (_, v) in &mut self.0 {
            *v *= factor;
        }
    }

    fn to_dense(&self, len: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); len];
        for (c, v) in &self.0 {
            out[*c] = v.clone();
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct DenseRow(Vec<Scalar>);

impl RowVector for DenseRow {
    fn from_sparse(len: usize, entries: Vec<(usize, Scalar)>) -> Self {
        let mut out = vec![Scalar::zero(); len];
        for (c, v) in entries {
            out[c] = v;
        }
        Self(out)
    }

    fn leading(&self) -> Option<usize> {
        self.0.iter().position(|v| !v.is_zero())
    }

    fn coeff(&self, col: usize) -> Scalar {
        self.0[col].clone()
    }

    fn sub_scaled(&mut self, factor: &Scalar, other: &Self) {
        if factor.is_zero() {
            return;
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if !b.is_zero() {
                *a -= factor * b;
            }
        }
    }

    fn scale(&mut self, factor: &Scalar) {
        for v in &mut self.0 {
            if !v.is_zero() {
                *v *= factor;
            }
        }
    }

    fn to_dense(&self, _len: usize) -> Vec<Scalar> {
        self.0.clone()
    }
}

/// Row space grown one row at a time. Pivot rows are kept normalized so their
/// leading coefficient is one.
#[derive(Clone, Debug)]
pub(crate) struct RowReducer<R> {
    ncols: usize,
    rows: Vec<R>,
    pivot_of: HashMap<usize, usize>,
}

impl<R: RowVector> RowReducer<R> {
    pub fn new(ncols: usize) -> Self {
        Self { ncols, rows: Vec::new(), pivot_of: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the current pivots; keeps it and returns true
    /// when it is independent of the rows seen so far.
    pub fn insert(&mut self, entries: Vec<(usize, Scalar)>) -> bool {
        debug_assert!(entries.iter().all(|(c, _)| *c < self.ncols));
        let mut row = R::from_sparse(self.ncols, entries);
        loop {
            let Some(lead) = row.leading() else { return false };
            match self.pivot_of.get(&lead) {
                Some(&k) => {
                    let factor = row.coeff(lead);
                    row.sub_scaled(&factor, &self.rows[k]);
                }
                None => {
                    let inv = Scalar::one() / row.coeff(lead);
                    row.scale(&inv);
                    self.pivot_of.insert(lead, self.rows.len());
                    self.rows.push(row);
                    return true;
                }
            }
        }
    }

    /// Back-substitutes to reduced row echelon form. Returns the pivot
    /// columns in ascending order with their dense rows.
    pub fn into_rref(self) -> (Vec<usize>, Vec<Vec<Scalar>>) {
        let mut order: Vec<(usize, usize)> = self.pivot_of.iter().map(|(&c, &k)| (c, k)).collect();
        order.sort_unstable();
        let mut rows = self.rows;
        for &(col, k) in order.iter().rev() {
            let pivot = rows[k].clone();
            for &(other_col, other) in &order {
                if other_col >= col {
                    break;
                }
                let factor = rows[other].coeff(col);
                rows[other].sub_scaled(&factor, &pivot);
            }
        }
        let pivots = order.iter().map(|(c, _)| *c).collect();
        let dense = order.iter().map(|(_, k)| rows[*k].to_dense(self.ncols)).collect();
        (pivots, dense)
    }
}

/// Incremental rank over the selected backend.
#[derive(Clone, Debug)]
pub struct IncrementalRank(Inner);

#[derive(Clone, Debug)]
enum Inner {
    Sparse(RowReducer<SparseRow>),
    Dense(RowReducer<DenseRow>),
}

impl IncrementalRank {
    pub fn new(ncols: usize, backend: Backend) -> Self {
        Self(match backend {
            Backend::Sparse => Inner::Sparse(RowReducer::new(ncols)),
            Backend::Dense => Inner::Dense(RowReducer::new(ncols)),
        })
    }

    /// Adds a sparse row; returns true when it raised the rank.
    pub fn insert(&mut self, entries: Vec<(usize, Scalar)>) -> bool {
        match &mut self.0 {
            Inner::Sparse(r) => r.insert(entries),
            Inner::Dense(r) => r.insert(entries),
        }
    }

    pub fn rank(&self) -> usize {
        match &self.0 {
            Inner::Sparse(r) => r.rank(),
            Inner::Dense(r) => r.rank(),
        }
    }
}
