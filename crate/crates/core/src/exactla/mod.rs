//! Exact rational linear algebra: echelon forms, ranks, kernels, solves and
//! subspace intersections.
//!
//! Every routine is a pure function of its inputs. Two elimination backends
//! are provided; both produce the unique reduced row echelon form, so all
//! derived results (kernel bases in particular) are identical across them.

mod matrix;
mod rowspace;
mod scalar;

use num_traits::{One, Zero};

pub use matrix::ExactMatrix;
pub use rowspace::{Backend, IncrementalRank};
pub use scalar::{format_decimal, format_scalar, int, parse_scalar, ratio, to_f64, Scalar};

use rowspace::{RowReducer, SparseRow};

/// Reduced row echelon form of a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub reduced: ExactMatrix,
    pub rank: usize,
    pub pivot_columns: Vec<usize>,
}

pub fn echelon(m: &ExactMatrix) -> Echelon {
    echelon_with(m, Backend::default())
}

pub fn echelon_with(m: &ExactMatrix, backend: Backend) -> Echelon {
    let (pivots, rows) = match backend {
        Backend::Dense => gauss_jordan(m),
        Backend::Sparse => {
            let mut reducer = RowReducer::<SparseRow>::new(m.ncols());
            for r in 0..m.nrows() {
                reducer.insert(m.sparse_row(r));
            }
            reducer.into_rref()
        }
    };
    let rank = pivots.len();
    let mut reduced = ExactMatrix::zeros(m.nrows(), m.ncols());
    for (r, row) in rows.into_iter().enumerate() {
        for (c, v) in row.into_iter().enumerate() {
            if !v.is_zero() {
                reduced.set(r, c, v);
            }
        }
    }
    Echelon { reduced, rank, pivot_columns: pivots }
}

/// Textbook Gauss-Jordan elimination on a dense copy.
fn gauss_jordan(m: &ExactMatrix) -> (Vec<usize>, Vec<Vec<Scalar>>) {
    let mut rows: Vec<Vec<Scalar>> = (0..m.nrows()).map(|r| m.row(r).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..m.ncols() {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let inv = Scalar::one() / &rows[next][c];
        for v in rows[next].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (a, b) in row.iter_mut().zip(&pivot_row) {
                if !b.is_zero() {
                    *a -= &factor * b;
                }
            }
        }
        pivots.push(c);
        next += 1;
    }
    rows.truncate(pivots.len());
    (pivots, rows)
}

pub fn rank(m: &ExactMatrix) -> usize {
    rank_with(m, Backend::default())
}

pub fn rank_with(m: &ExactMatrix, backend: Backend) -> usize {
    let mut acc = IncrementalRank::new(m.ncols(), backend);
    for r in 0..m.nrows() {
        acc.insert(m.sparse_row(r));
    }
    acc.rank()
}

/// Basis of `{x : Mx = 0}` as matrix columns. Free variables are set to one
/// in turn (ascending column order) and pivot variables back-substituted.
pub fn kernel_basis(m: &ExactMatrix) -> ExactMatrix {
    kernel_basis_with(m, Backend::default())
}

pub fn kernel_basis_with(m: &ExactMatrix, backend: Backend) -> ExactMatrix {
    let ech = echelon_with(m, backend);
    kernel_from_echelon(&ech, m.ncols())
}

fn kernel_from_echelon(ech: &Echelon, ncols: usize) -> ExactMatrix {
    let mut is_pivot = vec![false; ncols];
    for &c in &ech.pivot_columns {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..ncols).filter(|&c| !is_pivot[c]).collect();
    let mut basis = ExactMatrix::zeros(ncols, free.len());
    for (k, &f) in free.iter().enumerate() {
        basis.set(f, k, Scalar::one());
        for (r, &pc) in ech.pivot_columns.iter().enumerate() {
            let v = ech.reduced.get(r, f);
            if !v.is_zero() {
                basis.set(pc, k, -v);
            }
        }
    }
    basis
}

/// Some `x` with `Ax = b`, or `None` when the system is inconsistent. Free
/// variables are fixed at zero.
pub fn solve(a: &ExactMatrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    solve_with(a, b, Backend::default())
}

pub fn solve_with(a: &ExactMatrix, b: &[Scalar], backend: Backend) -> Option<Vec<Scalar>> {
    assert_eq!(a.nrows(), b.len(), "right-hand side length must equal row count");
    let augmented = a.hstack(&ExactMatrix::from_columns(a.nrows(), &[b.to_vec()]));
    let ech = echelon_with(&augmented, backend);
    if ech.pivot_columns.last() == Some(&a.ncols()) {
        return None;
    }
    let mut x = vec![Scalar::zero(); a.ncols()];
    for (r, &pc) in ech.pivot_columns.iter().enumerate() {
        x[pc] = ech.reduced.get(r, a.ncols()).clone();
    }
    Some(x)
}

/// `dim(col A ∩ col B) = rank A + rank B - rank [A|B]`.
pub fn intersection_dim(a: &ExactMatrix, b: &ExactMatrix) -> usize {
    intersection_dim_with(a, b, Backend::default())
}

pub fn intersection_dim_with(a: &ExactMatrix, b: &ExactMatrix, backend: Backend) -> usize {
    assert_eq!(a.nrows(), b.nrows(), "subspaces must live in the same ambient space");
    rank_with(a, backend) + rank_with(b, backend) - rank_with(&a.hstack(b), backend)
}

/// Same quantity through the kernel of `[A | -B]`: every kernel vector
/// `(x, y)` gives a common element `Ax = By`, so the intersection is the
/// column space of `A X` where `X` is the A-block of the kernel basis.
pub fn intersection_dim_by_kernel(a: &ExactMatrix, b: &ExactMatrix) -> usize {
    assert_eq!(a.nrows(), b.nrows(), "subspaces must live in the same ambient space");
    let kernel = kernel_basis_with(&a.hstack(&b.neg()), Backend::Dense);
    let mut x_block = ExactMatrix::zeros(a.ncols(), kernel.ncols());
    for r in 0..a.ncols() {
        for c in 0..kernel.ncols() {
            x_block.set(r, c, kernel.get(r, c).clone());
        }
    }
    rank_with(&a.mul(&x_block), Backend::Dense)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(cols: usize, rows: &[Vec<i64>]) -> ExactMatrix {
        ExactMatrix::from_int_rows(cols, rows)
    }

    /// Rows a, b, c; columns ab, bc, ac.
    fn hollow_triangle_boundary() -> ExactMatrix {
        m(3, &[vec![-1, 0, -1], vec![1, -1, 0], vec![0, 1, 1]])
    }

    #[test]
    fn echelon_examples() {
        for backend in Backend::ALL {
            let e = echelon_with(&m(2, &[vec![1, 2], vec![2, 4]]), backend);
            assert_eq!((e.rank, e.pivot_columns.clone()), (1, vec![0]));
            assert_eq!(e.reduced, m(2, &[vec![1, 2], vec![0, 0]]));
            assert_eq!(echelon_with(&ExactMatrix::identity(3), backend).rank, 3);
            assert_eq!(echelon_with(&hollow_triangle_boundary(), backend).rank, 2);
        }
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&hollow_triangle_boundary());
        assert_eq!(k.ncols(), 1);
        // proportional to ab + bc - ac
        let v = k.column(0);
        assert_eq!(v[0].clone() * int(-1), v[2]);
        assert_eq!(v[0], v[1]);
        assert!(!v[0].is_zero());

        assert_eq!(kernel_basis(&ExactMatrix::identity(4)).ncols(), 0);
        let zero = ExactMatrix::zeros(2, 3);
        let k = kernel_basis(&zero);
        assert_eq!(k, ExactMatrix::identity(3));
    }

    #[test]
    fn solve_examples() {
        let b = vec![int(3), ratio(-1, 2)];
        assert_eq!(solve(&ExactMatrix::identity(2), &b), Some(b.clone()));
        let x = solve(&m(2, &[vec![1, 1]]), &[int(2)]).unwrap();
        assert_eq!(x, vec![int(2), int(0)]);
        assert_eq!(solve(&m(1, &[vec![1], vec![2]]), &[int(1), int(1)]), None);
    }

    #[test]
    fn intersection_examples() {
        let id = ExactMatrix::identity(2);
        let e0 = m(1, &[vec![1], vec![0]]);
        let e1 = m(1, &[vec![0], vec![1]]);
        let diag = m(1, &[vec![1], vec![1]]);
        assert_eq!(intersection_dim(&id, &id), 2);
        assert_eq!(intersection_dim(&e0, &e1), 0);
        assert_eq!(intersection_dim(&id, &diag), 1);
        assert_eq!(intersection_dim_by_kernel(&id, &id), 2);
        assert_eq!(intersection_dim_by_kernel(&e0, &e1), 0);
        assert_eq!(intersection_dim_by_kernel(&id, &diag), 1);
    }

    #[test]
    fn empty_shapes() {
        let empty = ExactMatrix::zeros(0, 3);
        assert_eq!(rank(&empty), 0);
        assert_eq!(kernel_basis(&empty).ncols(), 3);
        let no_cols = ExactMatrix::zeros(3, 0);
        assert_eq!(kernel_basis(&no_cols).ncols(), 0);
        assert_eq!(solve(&no_cols, &[int(0), int(0), int(0)]), Some(vec![]));
        assert_eq!(solve(&no_cols, &[int(0), int(1), int(0)]), None);
        assert_eq!(intersection_dim(&no_cols, &ExactMatrix::identity(3)), 0);
    }
}
