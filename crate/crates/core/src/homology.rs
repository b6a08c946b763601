//! The dual Yang-Baxter chain complex `C_n = End(V^{⊗n})` and its pairing
//! with cochains.

use crate::algebra::Ring;
use crate::cochain::{Cochain, CochainError, YbComplex};

/// A degree-`n` chain, stored like a cochain; degree 0 is a scalar.
#[derive(Clone, Debug, PartialEq)]
pub struct Chain<R: Ring> {
    table: Cochain<R>,
}

impl<R: Ring> Chain<R> {
    pub fn from_table(table: Cochain<R>) -> Self {
        Self { table }
    }

    pub fn zero(ring: &R, q: usize, degree: usize) -> Self {
        Self::from_table(Cochain::zero(ring, q, degree))
    }

    pub fn table(&self) -> &Cochain<R> {
        &self.table
    }

    pub fn degree(&self) -> usize {
        self.table.degree()
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_zero()
    }

    /// The degree-0 value.
    pub fn scalar(&self) -> Option<&R::Elem> {
        (self.degree() == 0).then(|| self.table.get_flat(0))
    }
}

impl YbComplex {
    /// `∂^i` for `i = 1..=n`, by scattering each entry of `f`.
    pub fn partial_boundary<R: Ring>(&self, f: &Chain<R>, i: usize) -> Result<Chain<R>, CochainError> {
        let n = f.degree();
        if i == 0 || i > n {
            return Err(CochainError::Index { index: i, degree: n });
        }
        let mut out = Chain::zero(f.table.ring(), self.q(), n - 1);
        self.scatter_boundary(f, i - 1, false, &mut out);
        Ok(out)
    }

    fn scatter_boundary<R: Ring>(&self, f: &Chain<R>, j: usize, negate: bool, out: &mut Chain<R>) {
        let r = f.table.ring();
        for (idx, v) in f.table.nonzeros() {
            let (x, y) = f.table.decode(idx);
            let v = if negate { r.neg(v) } else { v.clone() };
            if self.exp(x[j], &x[j + 1..]) == self.exp(y[j], &y[j + 1..]) {
                let a: Vec<usize> = x[..j].iter().chain(&x[j + 1..]).copied().collect();
                let b: Vec<usize> = y[..j].iter().chain(&y[j + 1..]).copied().collect();
                out.table.add_at(&a, &b, &v);
            }
            if x[j] == y[j] {
                let t = x[j];
                let a: Vec<usize> = x[..j].iter().map(|&z| self.op(z, t)).chain(x[j + 1..].iter().copied()).collect();
                let b: Vec<usize> = y[..j].iter().map(|&z| self.op(z, t)).chain(y[j + 1..].iter().copied()).collect();
                out.table.add_at(&a, &b, &r.neg(&v));
            }
        }
    }

    /// `∂ = Σ_{i=1}^{n} (−1)^{i−1} ∂^i`.
    pub fn boundary<R: Ring>(&self, f: &Chain<R>) -> Result<Chain<R>, CochainError> {
        let n = f.degree();
        if n == 0 {
            return Err(CochainError::Index { index: 0, degree: 0 });
        }
        let mut out = Chain::zero(f.table.ring(), self.q(), n - 1);
        for j in 0..n {
            self.scatter_boundary(f, j, j % 2 == 1, &mut out);
        }
        Ok(out)
    }

    /// `⟨f | g⟩ = tr(f g) = Σ f[x][y] g[y][x]`.
    pub fn pairing<R: Ring>(&self, f: &Chain<R>, g: &Cochain<R>) -> Result<R::Elem, CochainError> {
        if f.degree() != g.degree() {
            return Err(CochainError::Degree(f.degree(), g.degree()));
        }
        let r = g.ring();
        let side = g.space().size();
        let mut acc = r.zero();
        for (idx, v) in f.table.nonzeros() {
            let (x, y) = (idx / side, idx % side);
            let w = g.get_flat(y * side + x);
            if !r.is_zero(w) {
                r.add_assign(&mut acc, &r.mul(v, w));
            }
        }
        Ok(acc)
    }
}
