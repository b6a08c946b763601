use super::{AlgebraError, Field, LocalRing, PrimeField, Ring};

/// Dense row-major matrix over a ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R: Ring> {
    ring: R,
    rows: usize,
    cols: usize,
    data: Vec<R::Elem>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(ring: &R, rows: usize, cols: usize) -> Self {
        Self {
            data: vec![ring.zero(); rows * cols],
            ring: ring.clone(),
            rows,
            cols,
        }
    }

    pub fn identity(ring: &R, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_fn(ring: &R, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self {
            ring: ring.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(ring: &R, rows: Vec<Vec<R::Elem>>) -> Result<Self, AlgebraError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(AlgebraError::Dimension("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Self {
            ring: ring.clone(),
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &R::Elem {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: R::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.ring.is_zero(e))
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|e| !self.ring.is_zero(e)).count()
    }

    /// Nonzero entries in row-major order.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, &R::Elem)> {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, e)| !self.ring.is_zero(e))
            .map(|(k, e)| (k / self.cols, k % self.cols, e))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ring, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<S: Ring>(&self, ring: &S, f: impl Fn(&R::Elem) -> S::Elem) -> Matrix<S> {
        Matrix {
            ring: ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    fn check_same_shape(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(AlgebraError::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.ring.add(a, b)).collect();
        Ok(Self { data, ..self.clone_shape() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.ring.sub(a, b)).collect();
        Ok(Self { data, ..self.clone_shape() })
    }

    pub fn scale(&self, s: &R::Elem) -> Self {
        let data = self.data.iter().map(|a| self.ring.mul(a, s)).collect();
        Self { data, ..self.clone_shape() }
    }

    fn clone_shape(&self) -> Self {
        Self {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: Vec::new(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let r = &self.ring;
        let mut out = Self::zeros(r, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if r.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if r.is_zero(b) {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    let prod = r.mul(a, b);
                    r.add_assign(&mut out.data[idx], &prod);
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product; the left factor indexes the most significant digit.
    pub fn kron(&self, other: &Self) -> Self {
        let r = &self.ring;
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(r, rows, cols);
        for (i, j, a) in self.nonzeros() {
            for (k, l, b) in other.nonzeros() {
                out.set(i * other.rows + k, j * other.cols + l, r.mul(a, b));
            }
        }
        out
    }

    pub fn apply(&self, v: &[R::Elem]) -> Result<Vec<R::Elem>, AlgebraError> {
        if v.len() != self.cols {
            return Err(AlgebraError::Dimension(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        let r = &self.ring;
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = r.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !r.is_zero(a) && !r.is_zero(b) {
                        r.add_assign(&mut acc, &r.mul(a, b));
                    }
                }
                acc
            })
            .collect())
    }

    /// First entry (row-major) where the two matrices differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some((0, 0));
        }
        self.data
            .iter()
            .zip(&other.data)
            .position(|(a, b)| a != b)
            .map(|k| (k / self.cols, k % self.cols))
    }
}

impl<F: Field> Matrix<F> {
    /// In-place reduced row echelon form; returns pivot columns.
    ///
    /// Pivots are chosen as the first nonzero entry scanning columns left to
    /// right and rows top to bottom, so the result is deterministic.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.ring.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&i| !f.is_zero(self.get(i, col))) else {
                continue;
            };
            if pr != row {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, row * self.cols + j);
                }
            }
            let inv = f.inv(self.get(row, col)).expect("nonzero pivot");
            for j in col..self.cols {
                let v = f.mul(self.get(row, j), &inv);
                self.set(row, j, v);
            }
            for i in 0..self.rows {
                if i == row {
                    continue;
                }
                let factor = self.get(i, col).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in col..self.cols {
                    let pv = self.get(row, j);
                    if f.is_zero(pv) {
                        continue;
                    }
                    let v = f.sub(self.get(i, j), &f.mul(&factor, pv));
                    self.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        // Eliminate along the shorter side.
        if self.rows < self.cols {
            self.clone().rref_in_place().len()
        } else {
            self.transpose().rref_in_place().len()
        }
    }

    /// Basis of `{v : Mv = 0}`, one vector per non-pivot column.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.ring;
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let mut is_pivot = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        (0..self.cols)
            .filter(|&j| is_pivot[j].is_none())
            .map(|free| {
                let mut v = vec![f.zero(); self.cols];
                v[free] = f.one();
                for (r, &c) in pivots.iter().enumerate() {
                    v[c] = f.neg(m.get(r, free));
                }
                v
            })
            .collect()
    }

    /// Some solution of `Mx = b`, or `None` if `b` is outside the image.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(b.len(), self.rows);
        let f = &self.ring;
        let mut aug = Matrix::from_fn(f, self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        if self.rows != self.cols {
            return Err(AlgebraError::Dimension("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let f = &self.ring;
        let mut aug = Matrix::from_fn(f, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                f.one()
            } else {
                f.zero()
            }
        });
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(AlgebraError::Singular);
        }
        Ok(Matrix::from_fn(f, n, n, |i, j| aug.get(i, n + j).clone()))
    }
}

impl<R: LocalRing> Matrix<R> {
    pub fn residue(&self) -> Matrix<PrimeField> {
        let f = self.ring.residue_field();
        self.map(&f, |e| self.ring.residue(e))
    }

    /// Entry-wise order-`k` digits, as a matrix over the residue field.
    pub fn digits(&self, k: usize) -> Matrix<PrimeField> {
        let f = self.ring.residue_field();
        self.map(&f, |e| self.ring.digit(e, k))
    }

    pub fn lift_from_residue(ring: &R, m: &Matrix<PrimeField>, order: usize) -> Self {
        m.map(ring, |d| ring.lift_digit(*d, order))
    }

    /// Minimum valuation over all entries; `None` for the zero matrix.
    pub fn valuation(&self) -> Option<usize> {
        self.data.iter().filter_map(|e| self.ring.valuation(e)).min()
    }

    /// Inverse over the truncated ring: invert the residue matrix over the
    /// residue field, then correct by the nilpotent Neumann series.
    pub fn inverse_local(&self) -> Result<Self, AlgebraError> {
        let r = &self.ring;
        let res_inv = self.residue().inverse()?;
        let x0 = Self::lift_from_residue(r, &res_inv, 0);
        let n = self.rows;
        // M·x0 = I - E with E ≡ 0 mod m, so M⁻¹ = x0·(I + E + E² + …).
        let e = Self::identity(r, n).sub(&self.mul(&x0)?)?;
        let mut sum = Self::identity(r, n);
        let mut pow = Self::identity(r, n);
        for _ in 1..r.precision() {
            pow = pow.mul(&e)?;
            if pow.is_zero() {
                break;
            }
            sum = sum.add(&pow)?;
        }
        x0.mul(&sum)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PowerSeriesRing, Rationals};

    #[test]
    fn rank_examples() {
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(Matrix::identity(&f2, 3).rank(), 3);
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(Matrix::zeros(&f5, 2, 3).rank(), 0);
        let q = Rationals;
        let m = Matrix::from_rows(&q, vec![vec![q.from_int(1), q.from_int(2)], vec![q.from_int(2), q.from_int(4)]]).unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(Matrix::zeros(&f5, 2, 3).kernel_basis().len(), 3);
        assert!(Matrix::identity(&f5, 4).kernel_basis().is_empty());
        let f2 = PrimeField::new(2).unwrap();
        let m = Matrix::from_rows(&f2, vec![vec![1, 1]]).unwrap();
        assert_eq!(m.kernel_basis(), vec![vec![1, 1]]);
    }

    #[test]
    fn solve_detects_image() {
        let f3 = PrimeField::new(3).unwrap();
        let m = Matrix::from_rows(&f3, vec![vec![1, 2], vec![2, 1], vec![0, 0]]).unwrap();
        let x = m.solve(&[1, 2, 0]).unwrap();
        assert_eq!(m.apply(&x).unwrap(), vec![1, 2, 0]);
        assert!(m.solve(&[0, 0, 1]).is_none());
    }

    #[test]
    fn local_inverse() {
        let r = PowerSeriesRing::new(3, 4).unwrap();
        let m = Matrix::from_rows(
            &r,
            vec![
                vec![r.from_coeffs(&[1, 1]), r.from_coeffs(&[0, 2, 1])],
                vec![r.from_coeffs(&[0, 0, 1]), r.from_coeffs(&[2, 0, 0, 1])],
            ],
        )
        .unwrap();
        let inv = m.inverse_local().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(&r, 2));
        assert_eq!(inv.mul(&m).unwrap(), Matrix::identity(&r, 2));
    }
}
