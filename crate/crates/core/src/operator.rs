//! Yang-Baxter operators on `V ⊗ V` with `V` free on a finite rack.
//!
//! Matrices act on coordinate columns: entry `[out][in]` is the coefficient
//! of output basis tuple `out` in the image of `in`. The tensor basis of `Q^n`
//! is lexicographic with the first factor most significant.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{read_matrix, write_matrix, AlgebraError, LocalRing, Matrix, Ring};
use crate::cochain::Cochain;
use crate::rack::RackTable;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OperatorError {
    #[error("strand position {position} out of range for {strands} strands")]
    Position { strands: usize, position: usize },
    #[error("operator must be {expected}x{expected}, got {rows}x{cols}")]
    Shape { expected: usize, rows: usize, cols: usize },
    #[error("gauge transform is not the identity modulo the maximal ideal at ({0}, {1})")]
    GaugeResidue(usize, usize),
    #[error("deformation term has a unit entry at ({0}, {1})")]
    NotInIdeal(usize, usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct YBOperator<R: Ring> {
    n: usize,
    matrix: Matrix<R>,
}

/// Outcome of a braid-relation check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YbeVerdict {
    pub holds: bool,
    /// First differing entry `(row, col)` of the two sides, row-major.
    pub witness: Option<(usize, usize)>,
    /// Lowest order over all entries at which the two sides differ; the
    /// equation therefore holds modulo `m^order`.
    pub failing_order: Option<usize>,
}

impl YbeVerdict {
    /// Whether the equation holds modulo `m^k`.
    pub fn holds_mod(&self, k: usize) -> bool {
        self.failing_order.is_none_or(|o| o >= k)
    }
}

/// `c_1 = id^{⊗(i-1)} ⊗ c ⊗ id^{⊗(n-i-1)}` on `Q^n`, built by index arithmetic.
pub fn lift_matrix<R: Ring>(c: &Matrix<R>, q: usize, strands: usize, position: usize) -> Result<Matrix<R>, OperatorError> {
    if position == 0 || position >= strands {
        return Err(OperatorError::Position { strands, position });
    }
    let left = q.pow(position as u32 - 1);
    let right = q.pow((strands - position - 1) as u32);
    let mid = q * q;
    let dim = left * mid * right;
    let mut out = Matrix::zeros(c.ring(), dim, dim);
    for (p, r, v) in c.nonzeros() {
        for a in 0..left {
            for b in 0..right {
                out.set((a * mid + p) * right + b, (a * mid + r) * right + b, v.clone());
            }
        }
    }
    Ok(out)
}

impl<R: Ring> YBOperator<R> {
    /// `c_Q: (a, b) ↦ (b, a ∗ b)`.
    pub fn from_rack(rack: &RackTable, ring: &R) -> Self {
        let n = rack.size();
        let mut m = Matrix::zeros(ring, n * n, n * n);
        for a in 0..n {
            for b in 0..n {
                m.set(b * n + rack.op(a, b), a * n + b, ring.one());
            }
        }
        Self { n, matrix: m }
    }

    pub fn from_matrix(n: usize, matrix: Matrix<R>) -> Result<Self, OperatorError> {
        if matrix.rows() != n * n || matrix.cols() != n * n {
            return Err(OperatorError::Shape {
                expected: n * n,
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        Ok(Self { n, matrix })
    }

    pub fn rack_size(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Matrix<R> {
        &self.matrix
    }

    pub fn ring(&self) -> &R {
        self.matrix.ring()
    }

    pub fn lift(&self, strands: usize, position: usize) -> Result<Matrix<R>, OperatorError> {
        lift_matrix(&self.matrix, self.n, strands, position)
    }

    pub fn check_ybe(&self) -> YbeVerdict {
        let c1 = self.lift(3, 1).expect("valid position");
        let c2 = self.lift(3, 2).expect("valid position");
        let lhs = c1.mul(&c2).and_then(|m| m.mul(&c1)).expect("square");
        let rhs = c2.mul(&c1).and_then(|m| m.mul(&c2)).expect("square");
        let Some(witness) = lhs.first_difference(&rhs) else {
            return YbeVerdict {
                holds: true,
                witness: None,
                failing_order: None,
            };
        };
        let r = self.ring();
        let diff = lhs.sub(&rhs).expect("same shape");
        let failing_order = diff.nonzeros().filter_map(|(_, _, v)| r.valuation(v)).min();
        YbeVerdict {
            holds: false,
            witness: Some(witness),
            failing_order,
        }
    }

    pub fn to_dump(&self) -> String {
        write_matrix(&self.matrix)
    }

    pub fn from_dump(n: usize, ring: &R, text: &str) -> Result<Self, OperatorError> {
        Self::from_matrix(n, read_matrix(ring, text)?)
    }

    /// `c ∘ (id + f)` with `f` read as the operator `y ⊗ … ↦ Σ f[x][y]`.
    pub fn compose_term(&self, f: &Cochain<R>) -> Result<Self, OperatorError> {
        let r = self.ring();
        let id_plus_f = Matrix::identity(r, self.n * self.n).add(&f.operator_matrix())?;
        Self::from_matrix(self.n, self.matrix.mul(&id_plus_f)?)
    }
}

impl<R: LocalRing> YBOperator<R> {
    /// `c_Q ∘ (id + f)` for a degree-2 cochain with values in the maximal ideal.
    pub fn deform(&self, f: &Cochain<R>) -> Result<Self, OperatorError> {
        let r = self.ring();
        let m = f.operator_matrix();
        if let Some((i, j, _)) = m.nonzeros().find(|(_, _, v)| r.is_unit(v)) {
            return Err(OperatorError::NotInIdeal(i, j));
        }
        self.compose_term(f)
    }

    pub fn inverse(&self) -> Result<Self, OperatorError> {
        Self::from_matrix(self.n, self.matrix.inverse_local()?)
    }

    /// `(α⊗α)⁻¹ ∘ c ∘ (α⊗α)`.
    pub fn gauge_conjugate(&self, alpha: &GaugeTransform<R>) -> Result<Self, OperatorError> {
        let aa = alpha.matrix.kron(&alpha.matrix);
        let inv = alpha.inverse.kron(&alpha.inverse);
        Self::from_matrix(self.n, inv.mul(&self.matrix)?.mul(&aa)?)
    }

    /// Deformation term `c_Q⁻¹ ∘ c − id` relative to a base operator.
    pub fn deformation_term(&self, base: &Self) -> Result<Matrix<R>, OperatorError> {
        let r = self.ring();
        Ok(base.inverse()?.matrix.mul(&self.matrix)?.sub(&Matrix::identity(r, self.n * self.n))?)
    }
}

/// `α ≡ id` modulo the maximal ideal, stored with its inverse.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeTransform<R: Ring> {
    matrix: Matrix<R>,
    inverse: Matrix<R>,
}

impl<R: LocalRing> GaugeTransform<R> {
    pub fn new(matrix: Matrix<R>) -> Result<Self, OperatorError> {
        if matrix.rows() != matrix.cols() {
            return Err(OperatorError::Shape {
                expected: matrix.rows(),
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let residue = matrix.residue();
        for i in 0..matrix.rows() {
            for j in 0..matrix.cols() {
                if *residue.get(i, j) != u64::from(i == j) {
                    return Err(OperatorError::GaugeResidue(i, j));
                }
            }
        }
        let inverse = matrix.inverse_local()?;
        Ok(Self { matrix, inverse })
    }

    /// A scalar unit times a transform congruent to the identity is also
    /// admitted by conjugation, since scalars cancel.
    pub fn scalar(ring: &R, n: usize, u: &R::Elem) -> Result<Self, OperatorError> {
        let matrix = Matrix::identity(ring, n).scale(u);
        let inverse = Matrix::identity(ring, n).scale(&ring.invert_unit(u)?);
        Ok(Self { matrix, inverse })
    }

    pub fn identity(ring: &R, n: usize) -> Self {
        Self {
            matrix: Matrix::identity(ring, n),
            inverse: Matrix::identity(ring, n),
        }
    }

    pub fn matrix(&self) -> &Matrix<R> {
        &self.matrix
    }

    pub fn inverse(&self) -> &Matrix<R> {
        &self.inverse
    }

    /// `self ∘ other` as matrices (so conjugating by the product equals
    /// conjugating by `self`, then by `other`).
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            matrix: self.matrix.mul(&other.matrix).expect("same size"),
            inverse: other.inverse.mul(&self.inverse).expect("same size"),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == Matrix::identity(self.matrix.ring(), self.matrix.rows())
    }
}
