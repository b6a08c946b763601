use std::collections::HashMap;

use super::{AlgebraError, Field, Matrix, Ring};

/// Column-compressed sparse matrix; each column is a list of
/// `(row, value)` pairs sorted by row with no explicit zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<R: Ring> {
    ring: R,
    rows: usize,
    cols: Vec<Vec<(usize, R::Elem)>>,
}

impl<R: Ring> SparseMatrix<R> {
    pub fn new(ring: &R, rows: usize, cols: usize) -> Self {
        Self {
            ring: ring.clone(),
            rows,
            cols: vec![Vec::new(); cols],
        }
    }

    /// Build from columns given as arbitrary `(row, value)` lists; entries with
    /// equal rows are summed and zeros dropped.
    pub fn from_columns(ring: &R, rows: usize, columns: Vec<Vec<(usize, R::Elem)>>) -> Result<Self, AlgebraError> {
        let mut m = Self::new(ring, rows, 0);
        for col in columns {
            m.push_column(col)?;
        }
        Ok(m)
    }

    pub fn push_column(&mut self, mut col: Vec<(usize, R::Elem)>) -> Result<(), AlgebraError> {
        if let Some((r, _)) = col.iter().find(|(r, _)| *r >= self.rows) {
            return Err(AlgebraError::Dimension(format!("row {r} out of range {}", self.rows)));
        }
        col.sort_by_key(|(r, _)| *r);
        let mut out: Vec<(usize, R::Elem)> = Vec::with_capacity(col.len());
        for (r, v) in col {
            match out.last_mut() {
                Some((lr, lv)) if *lr == r => self.ring.add_assign(lv, &v),
                _ => out.push((r, v)),
            }
        }
        out.retain(|(_, v)| !self.ring.is_zero(v));
        self.cols.push(out);
        Ok(())
    }

    pub fn from_dense(m: &Matrix<R>) -> Self {
        let mut cols = vec![Vec::new(); m.cols()];
        for (i, j, v) in m.nonzeros() {
            cols[j].push((i, v.clone()));
        }
        Self {
            ring: m.ring().clone(),
            rows: m.rows(),
            cols,
        }
    }

    pub fn to_dense(&self) -> Matrix<R> {
        let mut m = Matrix::zeros(&self.ring, self.rows, self.cols.len());
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                m.set(*i, j, v.clone());
            }
        }
        m
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, R::Elem)] {
        &self.cols[j]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn max_column_nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn apply(&self, v: &[R::Elem]) -> Result<Vec<R::Elem>, AlgebraError> {
        if v.len() != self.cols.len() {
            return Err(AlgebraError::Dimension(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols.len()
            )));
        }
        let r = &self.ring;
        let mut out = vec![r.zero(); self.rows];
        for (col, x) in self.cols.iter().zip(v) {
            if r.is_zero(x) {
                continue;
            }
            for (i, a) in col {
                r.add_assign(&mut out[*i], &r.mul(a, x));
            }
        }
        Ok(out)
    }

    /// Keep only the listed rows and columns, renumbered in the given order.
    pub fn restrict(&self, rows: &[usize], cols: &[usize]) -> Self {
        let row_map: HashMap<usize, usize> = rows.iter().enumerate().map(|(k, &r)| (r, k)).collect();
        let cols = cols
            .iter()
            .map(|&j| {
                self.cols[j]
                    .iter()
                    .filter_map(|(i, v)| row_map.get(i).map(|&k| (k, v.clone())))
                    .collect::<Vec<_>>()
            })
            .map(|mut c| {
                c.sort_by_key(|(r, _)| *r);
                c
            })
            .collect();
        Self {
            ring: self.ring.clone(),
            rows: rows.len(),
            cols,
        }
    }
}

impl<F: Field> SparseMatrix<F> {
    /// Rank by left-to-right column reduction keyed on the lowest nonzero row.
    pub fn rank(&self) -> usize {
        let f = &self.ring;
        // pivot row -> reduced column whose lowest entry is in that row (normalized to 1)
        let mut pivots: HashMap<usize, Vec<(usize, F::Elem)>> = HashMap::new();
        for col in &self.cols {
            let mut cur = col.clone();
            while let Some((low, lv)) = cur.last().cloned() {
                let Some(p) = pivots.get(&low) else {
                    let inv = f.inv(&lv).expect("nonzero entry");
                    for (_, v) in cur.iter_mut() {
                        *v = f.mul(v, &inv);
                    }
                    pivots.insert(low, cur);
                    break;
                };
                cur = axpy(f, &cur, &f.neg(&lv), p);
            }
        }
        pivots.len()
    }
}

/// `a + s·b` for sorted sparse vectors.
fn axpy<F: Ring>(f: &F, a: &[(usize, F::Elem)], s: &F::Elem, b: &[(usize, F::Elem)]) -> Vec<(usize, F::Elem)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ra = a.get(i).map_or(usize::MAX, |e| e.0);
        let rb = b.get(j).map_or(usize::MAX, |e| e.0);
        if ra < rb {
            out.push(a[i].clone());
            i += 1;
        } else if rb < ra {
            out.push((rb, f.mul(s, &b[j].1)));
            j += 1;
        } else {
            let v = f.add(&a[i].1, &f.mul(s, &b[j].1));
            if !f.is_zero(&v) {
                out.push((ra, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PrimeField, Rationals};

    #[test]
    fn rank_agrees_with_dense() {
        let f3 = PrimeField::new(3).unwrap();
        let m = Matrix::from_rows(
            &f3,
            vec![vec![1, 2, 0, 1], vec![2, 1, 0, 2], vec![0, 0, 1, 1], vec![1, 2, 1, 2]],
        )
        .unwrap();
        let s = SparseMatrix::from_dense(&m);
        assert_eq!(s.rank(), m.rank());
        assert_eq!(s.rank(), 2);
        assert_eq!(s.to_dense(), m);
    }

    #[test]
    fn duplicate_entries_are_summed() {
        let q = Rationals;
        let s = SparseMatrix::from_columns(
            &q,
            2,
            vec![vec![(1, q.from_int(1)), (0, q.from_int(2)), (1, q.from_int(-1))]],
        )
        .unwrap();
        assert_eq!(s.column(0), &[(0, q.from_int(2))]);
        assert!(SparseMatrix::from_columns(&q, 1, vec![vec![(3, q.one())]]).is_err());
    }
}
