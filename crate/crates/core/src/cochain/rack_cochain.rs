use crate::algebra::{Field, Ring, SparseMatrix};

use super::{Cochain, CochainError, TupleSpace, YbComplex};

/// A map `λ: Q^n → Λ`, stored densely in lexicographic tuple order.
#[derive(Clone, Debug, PartialEq)]
pub struct RackCochain<R: Ring> {
    ring: R,
    q: usize,
    degree: usize,
    values: Vec<R::Elem>,
}

impl<R: Ring> RackCochain<R> {
    pub fn from_fn(ring: &R, q: usize, degree: usize, mut f: impl FnMut(&[usize]) -> R::Elem) -> Self {
        let s = TupleSpace { q, n: degree };
        let values = (0..s.size()).map(|i| f(&s.decode(i))).collect();
        Self {
            ring: ring.clone(),
            q,
            degree,
            values,
        }
    }

    pub fn zero(ring: &R, q: usize, degree: usize) -> Self {
        Self::from_fn(ring, q, degree, |_| ring.zero())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn get(&self, xs: &[usize]) -> &R::Elem {
        &self.values[TupleSpace { q: self.q, n: self.degree }.encode(xs)]
    }

    pub fn values(&self) -> &[R::Elem] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| self.ring.is_zero(v))
    }

    /// The diagonal cochain `f[x][x] = λ(x)`.
    pub fn to_diagonal(&self) -> Cochain<R> {
        Cochain::from_fn(&self.ring, self.q, self.degree, |x, y| {
            if x == y {
                self.get(x).clone()
            } else {
                self.ring.zero()
            }
        })
    }

    /// `λ(x) = f[x][x]`.
    pub fn from_diagonal(f: &Cochain<R>) -> Self {
        Self::from_fn(f.ring(), f.q(), f.degree(), |x| f.get(x, x).clone())
    }
}

impl YbComplex {
    /// `(δλ)(a_0..a_n) = Σ_{i=1}^{n} (−1)^i [λ(a_0..â_i..a_n) − λ(a_0^{a_i}, …, a_{i−1}^{a_i}, a_{i+1}, …, a_n)]`.
    pub fn rack_coboundary<R: Ring>(&self, lambda: &RackCochain<R>) -> Result<RackCochain<R>, CochainError> {
        if lambda.q != self.q() {
            return Err(CochainError::RackSize {
                expected: self.q(),
                found: lambda.q,
            });
        }
        let r = &lambda.ring;
        let n = lambda.degree;
        Ok(RackCochain::from_fn(r, self.q(), n + 1, |a| {
            let mut acc = r.zero();
            for i in 1..=n {
                let plain: Vec<usize> = a[..i].iter().chain(&a[i + 1..]).copied().collect();
                let conj: Vec<usize> = a[..i]
                    .iter()
                    .map(|&z| self.op(z, a[i]))
                    .chain(a[i + 1..].iter().copied())
                    .collect();
                let term = r.sub(lambda.get(&plain), lambda.get(&conj));
                if i % 2 == 0 {
                    r.add_assign(&mut acc, &term);
                } else {
                    r.sub_assign(&mut acc, &term);
                }
            }
            acc
        }))
    }

    pub fn rack_coboundary_matrix<F: Field>(&self, field: &F, degree: usize) -> Result<SparseMatrix<F>, CochainError> {
        let q = self.q();
        let cols = TupleSpace { q, n: degree }.size();
        let rows = TupleSpace { q, n: degree + 1 }.size();
        let mut m = SparseMatrix::new(field, rows, 0);
        let space = TupleSpace { q, n: degree };
        for c in 0..cols {
            let e = RackCochain::from_fn(field, q, degree, |x| if space.encode(x) == c { field.one() } else { field.zero() });
            let image = self.rack_coboundary(&e)?;
            m.push_column(
                image
                    .values
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !field.is_zero(v))
                    .map(|(i, v)| (i, v.clone()))
                    .collect(),
            )
            .expect("rows in range");
        }
        Ok(m)
    }

    pub fn rack_cohomology_dim<F: Field>(&self, field: &F, degree: usize) -> Result<usize, CochainError> {
        let dim = TupleSpace { q: self.q(), n: degree }.size();
        let out = self.rack_coboundary_matrix(field, degree)?.rank();
        let inc = match degree {
            0 => 0,
            n => self.rack_coboundary_matrix(field, n - 1)?.rank(),
        };
        Ok(dim - out - inc)
    }
}
