//! Dense exact matrices: rank, reduced echelon form and kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::field::{Field, FieldElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

impl ExactMatrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            field: field.clone(),
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Panics if the rows are ragged or mix fields.
    pub fn from_rows(field: &Field, rows: Vec<Vec<FieldElement>>) -> Self {
        let n = rows.len();
        let cols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix");
            for e in row {
                assert!(e.field() == field, "entry from another field");
                entries.push(e);
            }
        }
        ExactMatrix {
            field: field.clone(),
            rows: n,
            cols,
            entries,
        }
    }

    pub fn from_i64(field: &Field, rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn select_rows(&self, idx: &[usize]) -> ExactMatrix {
        let mut entries = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            entries.extend_from_slice(self.row(r));
        }
        ExactMatrix {
            field: self.field.clone(),
            rows: idx.len(),
            cols: self.cols,
            entries,
        }
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut out = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(&self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.get(r, c) + &(a * other.get(k, c));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m: Vec<Vec<FieldElement>> = self.to_rows();
        let mut pivots = Vec::new();
        let mut pr = 0;
        for col in 0..self.cols {
            if pr == self.rows {
                break;
            }
            let Some(found) = (pr..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(pr, found);
            let inv = m[pr][col].inv().expect("nonzero pivot");
            for v in m[pr].iter_mut().skip(col) {
                *v = &*v * &inv;
            }
            let pivot = m[pr].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r == pr || row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for (v, q) in row.iter_mut().zip(&pivot).skip(col) {
                    if !q.is_zero() {
                        *v -= &(&factor * q);
                    }
                }
            }
            pivots.push(col);
            pr += 1;
        }
        (ExactMatrix::from_rows(&self.field, m), pivots)
    }
}

/// Rank over the matrix's field. Finite fields use plain elimination; the
/// rationals use fraction-free (Bareiss) elimination on integer rows.
pub fn rank(m: &ExactMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    if m.field.is_finite() {
        finite_rank(m)
    } else {
        bareiss_rank(m)
    }
}

fn finite_rank(m: &ExactMatrix) -> usize {
    let mut a: Vec<Vec<FieldElement>> = m.to_rows();
    let mut rank = 0;
    for col in 0..m.cols {
        if rank == m.rows {
            break;
        }
        let Some(found) = (rank..m.rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, found);
        let inv = a[rank][col].inv().expect("nonzero pivot");
        let (top, below) = a.split_at_mut(rank + 1);
        let pivot = &top[rank];
        for row in below.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] * &inv;
            for (v, q) in row.iter_mut().zip(pivot).skip(col) {
                if !q.is_zero() {
                    *v -= &(&factor * q);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn bareiss_rank(m: &ExactMatrix) -> usize {
    // clear denominators row by row
    let mut a: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|r| {
            let row = m.row(r);
            let lcm = row.iter().fold(BigInt::one(), |acc, e| {
                acc.lcm(e.as_rational().expect("rational entry").denom())
            });
            row.iter()
                .map(|e| {
                    let q = e.as_rational().unwrap();
                    q.numer() * (&lcm / q.denom())
                })
                .collect()
        })
        .collect();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..m.cols {
        if rank == m.rows {
            break;
        }
        let Some(found) = (rank..m.rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, found);
        for r in rank + 1..m.rows {
            for c in col + 1..m.cols {
                let v = (&a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c]) / &prev;
                a[r][c] = v;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Basis of the right kernel in canonical form: one vector per non-pivot
/// column `f` of the reduced echelon form, with a 1 in position `f`, zeros
/// in the other free positions, ordered by `f`.
pub fn kernel_basis(m: &ExactMatrix) -> Vec<Vec<FieldElement>> {
    let (r, pivots) = m.rref();
    let field = &m.field;
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![field.zero(); m.cols];
            v[f] = field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, f);
            }
            v
        })
        .collect()
}
