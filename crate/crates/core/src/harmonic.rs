//! Harmonic cycles of a growing complex: harmonic bases, harmonic spans, the
//! rank table `r[i][j] = dim(Har(K_{t_i}) ∩ Har(K_{t_j}))`, the canonical
//! harmonic chain barcode, and the barcode obtained by following persistence
//! representatives (the subordinate barcode).
//!
//! A `p`-chain is harmonic in `K_t` when it is both a cycle and a cocycle
//! there. Cycles of `K_{t_i}` only gain coboundary rows as time goes on, so
//! once a cycle stops being a cocycle it never becomes one again. This is why
//! every harmonic span is a single interval, and why `Z(K_{t_i}) ∩ Har(K_{t_j})`
//! coincides with `Har(K_{t_i}) ∩ Har(K_{t_j})` for `i <= j`.

use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::complex::{Chain, Filtration, Simplex, TimeValue};
use crate::exactla::{
    int, intersection_dim_by_kernel, intersection_dim_with, kernel_basis_with, solve, Backend, ExactMatrix,
    IncrementalRank, Scalar,
};
use crate::persistence::{Bar, Barcode};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HarmonicError {
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("chain is zero")]
    ZeroChain,
    #[error("chain mentions simplex {0} which is not present at the requested time")]
    OutsideComplex(Simplex),
    #[error("no harmonic repair exists for the bar born at {birth} at time {time}")]
    RepairInfeasible { birth: String, time: String },
    #[error("persistence bar born at {0} has no representative cycle")]
    MissingRepresentative(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

/// Basis of `Har_p(K_t)`, one column per basis cycle. Rows follow the column
/// order of the `p`-simplices present at `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonicBasis {
    pub time: Scalar,
    pub dim: usize,
    pub basis: ExactMatrix,
}

impl HarmonicBasis {
    pub fn h(&self) -> usize {
        self.basis.ncols()
    }

    pub fn chains(&self, f: &Filtration) -> Vec<Chain> {
        self.basis.columns().iter().map(|c| f.chain_from_vector(self.dim, c)).collect()
    }
}

/// `[∂_p(t); δ^p(t)]`, whose kernel is `Har_p(K_t)`.
fn stacked_operator(f: &Filtration, p: usize, t: &Scalar) -> ExactMatrix {
    f.boundary_matrix(p, t).vstack(&f.coboundary_matrix(p, t))
}

pub fn harmonic_basis(f: &Filtration, p: usize, t: &Scalar) -> HarmonicBasis {
    harmonic_basis_with(f, p, t, Backend::default())
}

pub fn harmonic_basis_with(f: &Filtration, p: usize, t: &Scalar, backend: Backend) -> HarmonicBasis {
    let basis = kernel_basis_with(&stacked_operator(f, p, t), backend);
    HarmonicBasis { time: t.clone(), dim: p, basis }
}

/// Interval of times during which a fixed cycle is a nonzero harmonic cycle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HarmonicSpan {
    /// The cycle already has a coboundary when it appears.
    Empty,
    Interval {
        start: Scalar,
        end: TimeValue,
    },
}

impl HarmonicSpan {
    /// `end - start`, `None` for an infinite span, zero for the empty span.
    pub fn length(&self) -> Option<Scalar> {
        match self {
            Self::Empty => Some(Scalar::zero()),
            Self::Interval { start, end } => end.finite().map(|e| e - start),
        }
    }

    pub fn contains(&self, t: &Scalar) -> bool {
        match self {
            Self::Empty => false,
            Self::Interval { start, end } => start <= t && &TimeValue::Finite(t.clone()) < end,
        }
    }
}

/// Span of a nonzero cycle of the final complex. It starts when the last
/// simplex of its support appears and ends at the first time some
/// `(p+1)`-simplex `σ` with `<∂σ, z> != 0` is present.
pub fn harmonic_span(f: &Filtration, z: &Chain) -> Result<HarmonicSpan, HarmonicError> {
    if z.is_zero() {
        return Err(HarmonicError::ZeroChain);
    }
    let start = support_time_checked(f, z)?;
    if !z.boundary().is_zero() {
        return Err(HarmonicError::NotACycle);
    }
    let p = z.dim();
    let mut end = TimeValue::Infinite;
    for &i in f.indices_of_dim(p + 1) {
        let sigma = &f.simplices()[i];
        let pairing: Scalar = sigma.boundary().map(|(sign, face)| z.coefficient(&face) * int(sign)).sum();
        if !pairing.is_zero() {
            // simplices of one dimension are in time order
            end = TimeValue::Finite(f.time(i).clone());
            break;
        }
    }
    if end <= TimeValue::Finite(start.clone()) {
        return Ok(HarmonicSpan::Empty);
    }
    Ok(HarmonicSpan::Interval { start, end })
}

fn support_time_checked(f: &Filtration, z: &Chain) -> Result<Scalar, HarmonicError> {
    for (s, _) in z.terms() {
        if f.index_of(s).is_none() {
            return Err(HarmonicError::OutsideComplex(s.clone()));
        }
    }
    Ok(f.support_time(z).expect("nonzero chain inside the complex"))
}

/// Triangular table `r[i][j]` for `i <= j` over the critical times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankTable {
    pub dim: usize,
    pub times: Vec<Scalar>,
    rows: Vec<Vec<usize>>,
}

impl RankTable {
    pub fn from_rows(dim: usize, times: Vec<Scalar>, rows: Vec<Vec<usize>>) -> Self {
        assert_eq!(rows.len(), times.len());
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), times.len() - i, "row {i} has the wrong length");
        }
        Self { dim, times, rows }
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// `r[i][j]`; requires `i <= j`.
    pub fn get(&self, i: usize, j: usize) -> usize {
        assert!(i <= j, "rank table is upper triangular");
        self.rows[i][j - i]
    }

    /// `h[i] = dim Har(K_{t_i})`.
    pub fn h(&self, i: usize) -> usize {
        self.get(i, i)
    }
}

/// Computes `r[i][j]` as the nullity of `[∂_p(t_i); δ^p(t_j)|C_p(K_{t_i})]`:
/// cycles of `K_{t_i}` whose coboundary vanishes at `t_j`. For fixed `i` the
/// coboundary rows are fed into one incremental elimination in time order,
/// so a whole row of the table costs a single reduction. Rows are computed in
/// parallel.
pub fn rank_table(f: &Filtration, p: usize) -> RankTable {
    rank_table_with(f, p, Backend::default())
}

pub fn rank_table_with(f: &Filtration, p: usize, backend: Backend) -> RankTable {
    let times = f.critical_times().to_vec();
    let faces = if p == 0 { Vec::new() } else { transpose_columns(&f.boundary_columns(p), f.count_of_dim(p - 1)) };
    let cofaces = f.boundary_columns(p + 1);
    let coface_times: Vec<&Scalar> = f.indices_of_dim(p + 1).iter().map(|&i| f.time(i)).collect();

    let rows = (0..times.len())
        .into_par_iter()
        .map(|i| {
            let t_i = &times[i];
            let n = f.count_at(p, t_i);
            let mut acc = IncrementalRank::new(n, backend);
            if p > 0 {
                for row in faces.iter().take(f.count_at(p - 1, t_i)) {
                    acc.insert(restrict(row, n));
                }
            }
            let mut next = 0;
            let mut row = Vec::with_capacity(times.len() - i);
            for t_j in &times[i..] {
                while next < cofaces.len() && coface_times[next] <= t_j {
                    acc.insert(restrict(&cofaces[next], n));
                    next += 1;
                }
                row.push(n - acc.rank());
            }
            row
        })
        .collect();
    RankTable::from_rows(p, times, rows)
}

fn transpose_columns(columns: &[Vec<(usize, i64)>], nrows: usize) -> Vec<Vec<(usize, i64)>> {
    let mut rows = vec![Vec::new(); nrows];
    for (c, col) in columns.iter().enumerate() {
        for &(r, v) in col {
            rows[r].push((c, v));
        }
    }
    rows
}

fn restrict(entries: &[(usize, i64)], ncols: usize) -> Vec<(usize, Scalar)> {
    entries.iter().filter(|(c, _)| *c < ncols).map(|&(c, v)| (c, int(v))).collect()
}

/// The same table through explicit harmonic bases: the basis at `t_i` is
/// padded with zero rows for simplices arriving later and intersected with
/// the basis at `t_j` via `rank A + rank B - rank [A|B]`.
pub fn rank_table_by_intersection(f: &Filtration, p: usize, backend: Backend) -> RankTable {
    let times = f.critical_times().to_vec();
    let bases: Vec<ExactMatrix> = times.iter().map(|t| harmonic_basis_with(f, p, t, backend).basis).collect();
    let rows = (0..times.len())
        .map(|i| {
            (i..times.len())
                .map(|j| intersection_dim_with(&bases[i].pad_rows(bases[j].nrows()), &bases[j], backend))
                .collect()
        })
        .collect();
    RankTable::from_rows(p, times, rows)
}

/// Third route: intersections through the kernel of `[A | -B]`.
pub fn rank_table_by_kernel(f: &Filtration, p: usize) -> RankTable {
    let times = f.critical_times().to_vec();
    let bases: Vec<ExactMatrix> = times.iter().map(|t| harmonic_basis(f, p, t).basis).collect();
    let rows = (0..times.len())
        .map(|i| {
            (i..times.len())
                .map(|j| intersection_dim_by_kernel(&bases[i].pad_rows(bases[j].nrows()), &bases[j]))
                .collect()
        })
        .collect();
    RankTable::from_rows(p, times, rows)
}

/// Number of canonical bars `[t_i, t_j)` (`j = None` for `[t_i, ∞)`).
///
/// `r` behaves like a persistent Betti table: `r[i][j]` counts bars born at
/// or before `t_i` still alive at `t_j`. The bars born exactly at `t_i` that
/// die entering `t_j` are therefore
/// `(r[i][j-1] - r[i][j]) - (r[i-1][j-1] - r[i-1][j])`, with `r[-1][*] = 0`.
pub fn multiplicity(table: &RankTable, i: usize, j: Option<usize>) -> i64 {
    let r = |a: isize, b: usize| -> i64 {
        if a < 0 {
            0
        } else {
            table.get(a as usize, b) as i64
        }
    };
    let ii = i as isize;
    match j {
        Some(j) => {
            assert!(j > i && j < table.len());
            (r(ii, j - 1) - r(ii, j)) - (r(ii - 1, j - 1) - r(ii - 1, j))
        }
        None => {
            let last = table.len() - 1;
            r(ii, last) - r(ii - 1, last)
        }
    }
}

/// Canonical barcode read off a rank table. Negative multiplicities or a
/// mismatch between bars alive at `t_k` and `h[k]` are reported as internal
/// invariant violations.
pub fn canonical_barcode_from_table(table: &RankTable) -> Result<Barcode, HarmonicError> {
    let m = table.len();
    let mut bars = Vec::new();
    let mut alive = vec![0i64; m];
    for i in 0..m {
        let deaths = (i + 1..m).map(Some).chain(std::iter::once(None));
        for j in deaths {
            let mult = multiplicity(table, i, j);
            if mult < 0 {
                return Err(HarmonicError::InternalInvariantViolation(format!(
                    "negative multiplicity {mult} for bar born at index {i} dying at {j:?}"
                )));
            }
            let until = j.unwrap_or(m);
            for a in &mut alive[i..until] {
                *a += mult;
            }
            let death = j.map_or(TimeValue::Infinite, |j| TimeValue::Finite(table.times[j].clone()));
            for _ in 0..mult {
                bars.push(Bar::new(table.dim, table.times[i].clone(), death.clone()));
            }
        }
    }
    for (k, &count) in alive.iter().enumerate() {
        if count != table.h(k) as i64 {
            return Err(HarmonicError::InternalInvariantViolation(format!(
                "{count} canonical bars alive at index {k} but harmonic dimension is {}",
                table.h(k)
            )));
        }
    }
    Ok(Barcode::new(table.dim, bars))
}

/// The canonical harmonic chain barcode in dimension `p`.
pub fn canonical_barcode(f: &Filtration, p: usize) -> Result<Barcode, HarmonicError> {
    canonical_barcode_with(f, p, Backend::default())
}

pub fn canonical_barcode_with(f: &Filtration, p: usize, backend: Backend) -> Result<Barcode, HarmonicError> {
    canonical_barcode_from_table(&rank_table_with(f, p, backend))
}

/// Basis of `Har(K_{t_i}) ∩ Har(K_{t_j})` in the coordinates of `C_p(K_{t_i})`.
fn surviving_cycles(f: &Filtration, p: usize, t_i: &Scalar, t_j: &Scalar) -> ExactMatrix {
    let n = f.count_at(p, t_i);
    let coboundary = f.coboundary_matrix(p, t_j);
    let mut restricted = ExactMatrix::zeros(coboundary.nrows(), n);
    for r in 0..coboundary.nrows() {
        for c in 0..n {
            restricted.set(r, c, coboundary.get(r, c).clone());
        }
    }
    kernel_basis_with(&f.boundary_matrix(p, t_i).vstack(&restricted), Backend::Sparse)
}

/// Canonical barcode together with a cycle realizing every bar.
///
/// For the bars `[t_i, t_j)` the chosen cycles extend a basis of
/// `W(i-1, j-1) + W(i, j)` inside `W(i, j-1)`, where `W(a, b)` is the space of
/// cycles present at `t_a` and still harmonic at `t_b`. Each chosen cycle is
/// therefore born at `t_i` and first gets a coboundary at `t_j`.
pub fn canonical_barcode_with_representatives(f: &Filtration, p: usize) -> Result<Barcode, HarmonicError> {
    let table = rank_table(f, p);
    let plain = canonical_barcode_from_table(&table)?;
    let times = &table.times;
    let m = times.len();
    let mut bars = Vec::new();
    for i in 0..m {
        let n = f.count_at(p, &times[i]);
        let mut chosen: Vec<Vec<Scalar>> = Vec::new();
        let deaths: Vec<Option<usize>> = std::iter::once(None).chain((i + 1..m).rev().map(Some)).collect();
        for j in deaths {
            let mult = multiplicity(&table, i, j) as usize;
            if mult == 0 {
                continue;
            }
            let last_alive = j.map_or(m - 1, |j| j - 1);
            let mut span = IncrementalRank::new(n, Backend::Sparse);
            if i > 0 {
                for v in surviving_cycles(f, p, &times[i - 1], &times[last_alive]).columns() {
                    span.insert(sparse(&pad(v, n)));
                }
            }
            if let Some(j) = j {
                for v in surviving_cycles(f, p, &times[i], &times[j]).columns() {
                    span.insert(sparse(&v));
                }
            }
            for v in &chosen {
                span.insert(sparse(v));
            }
            let mut picked = 0;
            for v in surviving_cycles(f, p, &times[i], &times[last_alive]).columns() {
                if picked == mult {
                    break;
                }
                if span.insert(sparse(&v)) {
                    let death = j.map_or(TimeValue::Infinite, |j| TimeValue::Finite(times[j].clone()));
                    let chain = f.chain_from_vector(p, &v);
                    bars.push(Bar::new(p, times[i].clone(), death).with_representative(chain));
                    chosen.push(v);
                    picked += 1;
                }
            }
            if picked != mult {
                return Err(HarmonicError::InternalInvariantViolation(format!(
                    "found {picked} of {mult} representatives for bars born at index {i}"
                )));
            }
        }
    }
    let with_reps = Barcode::new(p, bars);
    if with_reps.intervals() != plain.intervals() {
        return Err(HarmonicError::InternalInvariantViolation(
            "representative construction disagrees with the rank table".into(),
        ));
    }
    Ok(with_reps)
}

fn pad(mut v: Vec<Scalar>, n: usize) -> Vec<Scalar> {
    v.resize(n, Scalar::zero());
    v
}

fn sparse(v: &[Scalar]) -> Vec<(usize, Scalar)> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(c, x)| (c, x.clone())).collect()
}

/// The harmonic cycle homologous to `z` in `K_t`: `z + ∂x` where `x` solves
/// `δ_t(∂x) = -δ_t(z)`. Zero when `z` is a boundary at `t`.
pub fn harmonic_projection(f: &Filtration, z: &Chain, t: &Scalar) -> Result<Chain, HarmonicError> {
    repair(f, z, t).and_then(|opt| {
        opt.ok_or_else(|| HarmonicError::InternalInvariantViolation("normal equations are always consistent".into()))
    })
}

fn repair(f: &Filtration, z: &Chain, t: &Scalar) -> Result<Option<Chain>, HarmonicError> {
    if !z.boundary().is_zero() {
        return Err(HarmonicError::NotACycle);
    }
    if z.is_zero() {
        return Ok(Some(z.clone()));
    }
    let p = z.dim();
    let v = f.chain_vector(z, t).ok_or_else(|| {
        let outside = z
            .terms()
            .map(|(s, _)| s)
            .find(|s| f.time_of(s).is_none_or(|st| st > t))
            .expect("some simplex lies outside K_t");
        HarmonicError::OutsideComplex(outside.clone())
    })?;
    let boundary = f.boundary_matrix(p + 1, t);
    if boundary.ncols() == 0 {
        return Ok(Some(z.clone()));
    }
    let coboundary = boundary.transpose();
    let rhs: Vec<Scalar> = coboundary.mul_vec(&v).into_iter().map(|x| -x).collect();
    if rhs.iter().all(Zero::is_zero) {
        return Ok(Some(z.clone()));
    }
    let Some(x) = solve(&coboundary.mul(&boundary), &rhs) else { return Ok(None) };
    let correction = boundary.mul_vec(&x);
    let repaired: Vec<Scalar> = v.iter().zip(&correction).map(|(a, b)| a + b).collect();
    Ok(Some(f.chain_from_vector(p, &repaired)))
}

/// Piece of a persistence bar on which one fixed cycle stays harmonic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubordinateBar {
    pub parent_birth: Scalar,
    pub parent_death: TimeValue,
    pub start: Scalar,
    pub end: TimeValue,
    pub representative: Chain,
}

/// Splits every persistence bar at the times its current harmonic
/// representative acquires a coboundary, replacing the representative by the
/// harmonic cycle of the same class at each split.
pub fn subordinate_barcode(f: &Filtration, p: usize, basis: &Barcode) -> Result<Vec<SubordinateBar>, HarmonicError> {
    let mut out = Vec::new();
    for bar in basis.bars().iter().filter(|b| b.dim == p) {
        let rep =
            bar.representative.as_ref().ok_or_else(|| HarmonicError::MissingRepresentative(bar.birth.to_string()))?;
        let mut z = harmonic_projection(f, rep, &bar.birth)?;
        if z.is_zero() {
            return Err(HarmonicError::InternalInvariantViolation(format!(
                "representative of the bar born at {} is a boundary at birth",
                bar.birth
            )));
        }
        let mut start = bar.birth.clone();
        let later =
            f.critical_times().iter().filter(|t| **t > bar.birth && TimeValue::Finite((*t).clone()) < bar.death);
        for t in later {
            let delta = f.coboundary_matrix(p, t).mul_vec(&f.chain_vector(&z, t).expect("support present"));
            if delta.iter().all(Zero::is_zero) {
                continue;
            }
            out.push(SubordinateBar {
                parent_birth: bar.birth.clone(),
                parent_death: bar.death.clone(),
                start: start.clone(),
                end: TimeValue::Finite(t.clone()),
                representative: z.clone(),
            });
            z = repair(f, &z, t)?
                .ok_or_else(|| HarmonicError::RepairInfeasible { birth: bar.birth.to_string(), time: t.to_string() })?;
            if z.is_zero() {
                return Err(HarmonicError::InternalInvariantViolation(format!(
                    "class of the bar born at {} vanished at {t} before its death",
                    bar.birth
                )));
            }
            start = t.clone();
        }
        out.push(SubordinateBar {
            parent_birth: bar.birth.clone(),
            parent_death: bar.death.clone(),
            start,
            end: bar.death.clone(),
            representative: z,
        });
    }
    Ok(out)
}

/// The sub-bars as an ordinary barcode (with representatives).
pub fn subordinate_as_barcode(p: usize, bars: &[SubordinateBar]) -> Barcode {
    Barcode::new(
        p,
        bars.iter().map(|b| Bar::new(p, b.start.clone(), b.end.clone()).with_representative(b.representative.clone())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::parse_filtration;
    use crate::exactla::ratio;
    use crate::persistence::persistence_barcode;

    const FILLED: &str = "0 0\n0 1\n0 2\n1 0 1\n1 1 2\n1 0 2\n2 0 1 2";
    const HOLLOW: &str = "0 0\n0 1\n0 2\n1 0 1\n1 1 2\n1 0 2";

    fn s(v: &[u32]) -> Simplex {
        Simplex::new(v.to_vec()).unwrap()
    }

    fn fin(n: i64) -> TimeValue {
        TimeValue::Finite(int(n))
    }

    fn triangle_cycle() -> Chain {
        Chain::from_terms(1, [(s(&[0, 1]), int(1)), (s(&[1, 2]), int(1)), (s(&[0, 2]), int(-1))])
    }

    #[test]
    fn harmonic_basis_examples() {
        let hollow = parse_filtration(HOLLOW).unwrap();
        let hb = harmonic_basis(&hollow, 1, &int(1));
        assert_eq!(hb.h(), 1);
        let z = &hb.chains(&hollow)[0];
        assert_eq!(z, &triangle_cycle().scaled(&z.coefficient(&s(&[0, 1]))));

        let filled = parse_filtration(FILLED).unwrap();
        assert_eq!(harmonic_basis(&filled, 1, &int(2)).h(), 0);

        let square = parse_filtration("0 0\n0 1\n0 2\n0 3\n1 0 1\n1 1 2\n1 2 3\n1 0 3").unwrap();
        let hb = harmonic_basis(&square, 1, &int(1));
        assert_eq!(hb.h(), 1);
        let col = hb.basis.column(0);
        assert!(col.iter().all(|v| v == &col[0] || v == &-col[0].clone()));
    }

    #[test]
    fn span_examples() {
        let filled = parse_filtration(FILLED).unwrap();
        let z = triangle_cycle();
        assert_eq!(harmonic_span(&filled, &z).unwrap(), HarmonicSpan::Interval { start: int(1), end: fin(2) });
        // the coboundary at the fill time is three times the triangle
        let delta = filled.coboundary_matrix(1, &int(2)).mul_vec(&filled.chain_vector(&z, &int(2)).unwrap());
        assert_eq!(delta, vec![int(3)]);

        let hollow = parse_filtration(HOLLOW).unwrap();
        assert_eq!(
            harmonic_span(&hollow, &z).unwrap(),
            HarmonicSpan::Interval { start: int(1), end: TimeValue::Infinite }
        );

        let simultaneous = parse_filtration("0 0\n0 1\n0 2\n1 0 1\n1 1 2\n2 0 2\n2 0 1 2").unwrap();
        assert_eq!(harmonic_span(&simultaneous, &z).unwrap(), HarmonicSpan::Empty);
        assert_eq!(HarmonicSpan::Empty.length(), Some(int(0)));
    }

    #[test]
    fn span_errors() {
        let filled = parse_filtration(FILLED).unwrap();
        assert_eq!(harmonic_span(&filled, &Chain::zero(1)), Err(HarmonicError::ZeroChain));
        let edge = Chain::from_terms(1, [(s(&[0, 1]), int(1))]);
        assert_eq!(harmonic_span(&filled, &edge), Err(HarmonicError::NotACycle));
        let foreign = Chain::from_terms(1, [(s(&[5, 6]), int(1))]);
        assert!(matches!(harmonic_span(&filled, &foreign), Err(HarmonicError::OutsideComplex(_))));
    }

    #[test]
    fn rank_table_examples() {
        let filled = parse_filtration(FILLED).unwrap();
        let table = rank_table(&filled, 1);
        // times 0, 1, 2
        assert_eq!((table.h(1), table.h(2)), (1, 0));
        assert_eq!(table.get(1, 2), 0);

        let hollow = parse_filtration(HOLLOW).unwrap();
        let table = rank_table(&hollow, 1);
        assert_eq!(table.get(1, 1), 1);
    }

    #[test]
    fn canonical_triangle() {
        let filled = parse_filtration(FILLED).unwrap();
        assert_eq!(canonical_barcode(&filled, 1).unwrap().intervals(), vec![(int(1), fin(2))]);
        let hollow = parse_filtration(HOLLOW).unwrap();
        assert_eq!(canonical_barcode(&hollow, 1).unwrap().intervals(), vec![(int(1), TimeValue::Infinite)]);
        assert!(canonical_barcode(&Filtration::empty(), 1).unwrap().is_empty());
    }

    #[test]
    fn broken_table_is_reported() {
        let table = RankTable::from_rows(1, vec![int(0), int(1)], vec![vec![1, 2], vec![1]]);
        assert!(matches!(canonical_barcode_from_table(&table), Err(HarmonicError::InternalInvariantViolation(_))));
    }

    #[test]
    fn projection_examples() {
        let hollow = parse_filtration(HOLLOW).unwrap();
        let z = triangle_cycle();
        assert_eq!(harmonic_projection(&hollow, &z, &int(1)).unwrap(), z);
        let filled = parse_filtration(FILLED).unwrap();
        assert!(harmonic_projection(&filled, &z, &int(2)).unwrap().is_zero());
        let edge = Chain::from_terms(1, [(s(&[0, 1]), int(1))]);
        assert_eq!(harmonic_projection(&filled, &edge, &int(2)), Err(HarmonicError::NotACycle));
        assert!(matches!(harmonic_projection(&filled, &z, &int(0)), Err(HarmonicError::OutsideComplex(_))));
    }

    #[test]
    fn subordinate_single_fill() {
        let filled = parse_filtration(FILLED).unwrap();
        let pers = persistence_barcode(&filled, 1);
        let sub = subordinate_barcode(&filled, 1, &pers).unwrap();
        assert_eq!(sub.len(), 1);
        assert_eq!((sub[0].start.clone(), sub[0].end.clone()), (int(1), fin(2)));
        assert_eq!(subordinate_as_barcode(1, &sub).intervals(), pers.intervals());
    }

    /// Two triangles sharing edge 01: the bar of the triangle filled last
    /// gets a coboundary when the other one is filled and is repaired by a
    /// third of the filled triangle's boundary.
    #[test]
    fn repair_uses_one_third() {
        let text = "0 0\n0 1\n0 2\n0 3\n1 0 2\n1 1 2\n2 0 1\n3 0 3\n3 1 3\n4 0 1 3\n5 0 1 2";
        let f = parse_filtration(text).unwrap();
        let pers = persistence_barcode(&f, 1);
        assert_eq!(pers.intervals(), vec![(int(2), fin(5)), (int(3), fin(4))]);
        let z = pers.bars()[0].representative.clone().unwrap();
        let sigma = s(&[0, 1, 3]);
        let d_sigma = Chain::from_terms(2, [(sigma.clone(), int(1))]).boundary();
        let coeff = z.dot(&d_sigma);
        assert_eq!(coeff.clone() * coeff.clone(), int(1));
        assert_eq!(d_sigma.dot(&d_sigma), int(3));
        let sub = subordinate_barcode(&f, 1, &pers).unwrap();
        let pieces: Vec<_> = sub.iter().filter(|b| b.parent_birth == int(2)).collect();
        assert_eq!(pieces.len(), 2);
        assert_eq!(pieces[1].start, int(4));
        let mut expected = z.clone();
        expected.add_scaled(&(-coeff * ratio(1, 3)), &d_sigma);
        assert_eq!(pieces[1].representative, expected);
    }

    #[test]
    fn canonical_representatives_realize_bars() {
        let text = "0 0\n0 1\n0 2\n0 3\n1 0 2\n1 1 2\n2 0 1\n3 0 3\n3 1 3\n4 0 1 3\n5 0 1 2";
        let f = parse_filtration(text).unwrap();
        let bc = canonical_barcode_with_representatives(&f, 1).unwrap();
        assert_eq!(bc.intervals(), canonical_barcode(&f, 1).unwrap().intervals());
        for bar in bc.bars() {
            let span = harmonic_span(&f, bar.representative.as_ref().unwrap()).unwrap();
            assert_eq!(span, HarmonicSpan::Interval { start: bar.birth.clone(), end: bar.death.clone() });
        }
    }
}
