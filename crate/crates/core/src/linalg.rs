//! Exact linear algebra over the rationals: dense row reduction and an
//! incremental sparse echelon basis.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalar::Scalar;

/// Reduces `rows` in place to reduced row-echelon form and returns the pivot
/// columns. Pivots are chosen left to right.
pub fn rref(rows: &mut [Vec<Scalar>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let k = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &k * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{x : M x = 0}`, one vector per free column, in column order.
pub fn nullspace(mat: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let mut rows = mat.to_vec();
    let pivots = rref(&mut rows, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Scalar::zero(); ncols];
        v[free] = Scalar::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -rows[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Some solution of `M x = b` (free variables set to zero), or `None` if inconsistent.
pub fn solve(mat: &[Vec<Scalar>], rhs: &[Scalar], ncols: usize) -> Option<Vec<Scalar>> {
    let mut rows: Vec<Vec<Scalar>> = mat
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut rows, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Scalar::zero(); ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = rows[r][ncols].clone();
    }
    Some(x)
}

/// Inverse of a square matrix, if it exists.
pub fn invert(mat: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = mat.len();
    let mut rows: Vec<Vec<Scalar>> = mat
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut rows, n);
    if pivots.len() < n {
        return None;
    }
    Some(rows.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Rank of a dense matrix.
pub fn rank(mat: &[Vec<Scalar>], ncols: usize) -> usize {
    let mut rows = mat.to_vec();
    rref(&mut rows, ncols).len()
}

pub type SparseRow = BTreeMap<usize, Scalar>;

/// Incremental echelon basis of sparse vectors. Each stored row is monic at
/// its pivot, which is its largest index.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon {
    rows: BTreeMap<usize, SparseRow>,
}

/// Outcome of reducing a vector against a [`SparseEchelon`].
#[derive(Clone, Debug)]
pub struct Reduction {
    /// What is left after elimination; empty iff the vector was in the span.
    pub residue: SparseRow,
    /// `(pivot, c)`: the vector equals `residue + sum c * row[pivot]`.
    pub used: Vec<(usize, Scalar)>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn has_pivot(&self, p: usize) -> bool {
        self.rows.contains_key(&p)
    }

    pub fn row(&self, p: usize) -> Option<&SparseRow> {
        self.rows.get(&p)
    }

    pub fn reduce(&self, row: &SparseRow) -> Reduction {
        let mut residue = row.clone();
        let mut used = Vec::new();
        let mut bound = usize::MAX;
        // Eliminate from the top down; entries above a missing pivot stay.
        while let Some((&p, c)) = residue.range(..bound).next_back() {
            let Some(basis) = self.rows.get(&p) else {
                bound = p;
                continue;
            };
            let c = c.clone();
            for (k, v) in basis {
                let slot = residue.entry(*k).or_insert_with(Scalar::zero);
                *slot -= &c * v;
                if slot.is_zero() {
                    residue.remove(k);
                }
            }
            used.push((p, c));
        }
        Reduction { residue, used }
    }

    /// Stores a nonzero residue as a new basis row and returns its pivot and
    /// the leading coefficient it was divided by.
    pub fn insert_residue(&mut self, residue: SparseRow) -> (usize, Scalar) {
        let (&p, lead) = residue.iter().next_back().expect("nonzero residue");
        assert!(!self.rows.contains_key(&p), "pivot {p} already taken");
        let lead = lead.clone();
        let inv = lead.recip();
        let row = residue.into_iter().map(|(k, v)| (k, v * &inv)).collect();
        self.rows.insert(p, row);
        (p, lead)
    }

    /// Reduces and inserts; returns the new pivot if the row was independent.
    pub fn insert(&mut self, row: &SparseRow) -> Option<usize> {
        let red = self.reduce(row);
        if red.residue.is_empty() {
            return None;
        }
        Some(self.insert_residue(red.residue).0)
    }
}

/// Basis of `{x : M x = 0}` for sparse equations, one vector per free column
/// in increasing order. Each vector is 1 at its own free column and 0 at the
/// other free columns.
pub fn sparse_nullspace<I: IntoIterator<Item = SparseRow>>(rows: I, ncols: usize) -> Vec<Vec<Scalar>> {
    let mut echelon = SparseEchelon::new();
    for row in rows {
        echelon.insert(&row);
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !echelon.has_pivot(*c)) {
        let mut x = vec![Scalar::zero(); ncols];
        x[free] = Scalar::one();
        // A pivot row only involves smaller indices, so pivots below `free` stay 0.
        for (&p, row) in echelon.rows.range(free + 1..) {
            let mut acc = Scalar::zero();
            for (j, c) in row.range(..p) {
                if !x[*j].is_zero() {
                    acc -= c * &x[*j];
                }
            }
            x[p] = acc;
        }
        basis.push(x);
    }
    basis
}
