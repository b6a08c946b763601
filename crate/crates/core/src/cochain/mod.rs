//! The Yang-Baxter cochain complex of `c_Q` with matrix-valued cochains.
//!
//! A degree-`n` cochain is a table `f[x][y]` over `Q^n × Q^n`, where
//! `f[x][y]` is the coefficient of `y` in `f(x)`. Tuples are encoded
//! lexicographically (first coordinate most significant) and the flat
//! index of an entry is `xidx · q^n + yidx`.
//!
//! Exponents compose left to right: `a^{b c} = (a ∗ b) ∗ c`.

mod dump;
pub mod naturality;
mod rack_cochain;

use rand::Rng;
use thiserror::Error;

use crate::algebra::{Field, Matrix, Ring, SparseMatrix};
use crate::rack::{BehaviorPartition, RackMorphism, RackTable};

pub use dump::{read_chain, read_cochain, write_chain, write_cochain};
pub use rack_cochain::RackCochain;

pub const DEFAULT_SIZE_CAP: usize = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CochainError {
    #[error("index {index} out of range for degree {degree}")]
    Index { index: usize, degree: usize },
    #[error("degree mismatch: {0} vs {1}")]
    Degree(usize, usize),
    #[error("cochain is over a rack of size {found}, expected {expected}")]
    RackSize { expected: usize, found: usize },
    #[error("coboundary matrix with {rows} rows exceeds the size cap {cap} (|Q| = {q}, degree {degree})")]
    SizeGuard {
        rows: usize,
        cap: usize,
        q: usize,
        degree: usize,
    },
    #[error("cochain is not in C_{required} (level {level}); offending entry {witness:?}")]
    Filtration {
        level: usize,
        required: usize,
        witness: (Vec<usize>, Vec<usize>),
    },
    #[error("not a cocycle: d f is nonzero at {0:?}")]
    NotCocycle((Vec<usize>, Vec<usize>)),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Lexicographic encoding of `Q^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TupleSpace {
    pub q: usize,
    pub n: usize,
}

impl TupleSpace {
    pub fn size(&self) -> usize {
        self.q.pow(self.n as u32)
    }

    pub fn decode_into(&self, mut idx: usize, out: &mut [usize]) {
        for slot in out.iter_mut().rev() {
            *slot = idx % self.q;
            idx /= self.q;
        }
    }

    pub fn decode(&self, idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.n];
        self.decode_into(idx, &mut out);
        out
    }

    pub fn encode(&self, xs: &[usize]) -> usize {
        xs.iter().fold(0, |acc, &x| acc * self.q + x)
    }
}

/// Dense degree-`n` cochain table.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain<R: Ring> {
    ring: R,
    q: usize,
    degree: usize,
    values: Vec<R::Elem>,
}

impl<R: Ring> Cochain<R> {
    pub fn zero(ring: &R, q: usize, degree: usize) -> Self {
        let len = TupleSpace { q, n: degree }.size().pow(2);
        Self {
            ring: ring.clone(),
            q,
            degree,
            values: vec![ring.zero(); len],
        }
    }

    pub fn from_fn(ring: &R, q: usize, degree: usize, mut f: impl FnMut(&[usize], &[usize]) -> R::Elem) -> Self {
        let space = TupleSpace { q, n: degree };
        let side = space.size();
        let mut xs = vec![0; degree];
        let mut ys = vec![0; degree];
        let mut values = Vec::with_capacity(side * side);
        for xi in 0..side {
            space.decode_into(xi, &mut xs);
            for yi in 0..side {
                space.decode_into(yi, &mut ys);
                values.push(f(&xs, &ys));
            }
        }
        Self {
            ring: ring.clone(),
            q,
            degree,
            values,
        }
    }

    pub fn from_values(ring: &R, q: usize, degree: usize, values: Vec<R::Elem>) -> Result<Self, CochainError> {
        let len = TupleSpace { q, n: degree }.size().pow(2);
        if values.len() != len {
            return Err(CochainError::Index {
                index: values.len(),
                degree,
            });
        }
        Ok(Self {
            ring: ring.clone(),
            q,
            degree,
            values,
        })
    }

    /// The identity cochain `id[x][y] = [x = y]`.
    pub fn identity(ring: &R, q: usize, degree: usize) -> Self {
        Self::from_fn(ring, q, degree, |x, y| if x == y { ring.one() } else { ring.zero() })
    }

    /// Cochain with a single entry `value` at `(xs, ys)`.
    pub fn basis(ring: &R, q: usize, xs: &[usize], ys: &[usize], value: R::Elem) -> Self {
        let mut f = Self::zero(ring, q, xs.len());
        f.set(xs, ys, value);
        f
    }

    pub fn random<G: Rng + ?Sized>(ring: &R, q: usize, degree: usize, rng: &mut G) -> Self {
        Self::from_fn(ring, q, degree, |_, _| ring.random_elem(rng))
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn space(&self) -> TupleSpace {
        TupleSpace {
            q: self.q,
            n: self.degree,
        }
    }

    pub fn values(&self) -> &[R::Elem] {
        &self.values
    }

    pub fn into_values(self) -> Vec<R::Elem> {
        self.values
    }

    #[inline]
    pub fn index(&self, xs: &[usize], ys: &[usize]) -> usize {
        let s = self.space();
        s.encode(xs) * s.size() + s.encode(ys)
    }

    #[inline]
    pub fn get(&self, xs: &[usize], ys: &[usize]) -> &R::Elem {
        &self.values[self.index(xs, ys)]
    }

    pub fn get_flat(&self, idx: usize) -> &R::Elem {
        &self.values[idx]
    }

    pub fn set(&mut self, xs: &[usize], ys: &[usize], v: R::Elem) {
        let i = self.index(xs, ys);
        self.values[i] = v;
    }

    pub fn set_flat(&mut self, idx: usize, v: R::Elem) {
        self.values[idx] = v;
    }

    pub fn add_at(&mut self, xs: &[usize], ys: &[usize], v: &R::Elem) {
        let i = self.index(xs, ys);
        self.ring.add_assign(&mut self.values[i], v);
    }

    /// Split a flat index into its tuple pair.
    pub fn decode(&self, idx: usize) -> (Vec<usize>, Vec<usize>) {
        let s = self.space();
        (s.decode(idx / s.size()), s.decode(idx % s.size()))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| self.ring.is_zero(v))
    }

    /// Nonzero entries as `(flat index, value)`.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, &R::Elem)> {
        self.values.iter().enumerate().filter(|(_, v)| !self.ring.is_zero(v))
    }

    pub fn nonzero_count(&self) -> usize {
        self.nonzeros().count()
    }

    /// First nonzero entry, decoded.
    pub fn first_nonzero(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        self.nonzeros().next().map(|(i, _)| self.decode(i))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&R::Elem, &R::Elem) -> R::Elem) -> Self {
        assert_eq!(
            (self.q, self.degree),
            (other.q, other.degree),
            "cochains from different spaces"
        );
        Self {
            ring: self.ring.clone(),
            q: self.q,
            degree: self.degree,
            values: self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| self.ring.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| self.ring.sub(a, b))
    }

    pub fn scale(&self, s: &R::Elem) -> Self {
        self.map(&self.ring, |v| self.ring.mul(v, s))
    }

    pub fn neg(&self) -> Self {
        self.map(&self.ring, |v| self.ring.neg(v))
    }

    pub fn map<S: Ring>(&self, ring: &S, f: impl Fn(&R::Elem) -> S::Elem) -> Cochain<S> {
        Cochain {
            ring: ring.clone(),
            q: self.q,
            degree: self.degree,
            values: self.values.iter().map(f).collect(),
        }
    }

    /// Zero every entry whose tuple pair fails `keep`.
    pub fn restrict(&self, mut keep: impl FnMut(&[usize], &[usize]) -> bool) -> Self {
        let mut out = self.clone();
        let s = self.space();
        let side = s.size();
        let mut xs = vec![0; self.degree];
        let mut ys = vec![0; self.degree];
        for (idx, v) in out.values.iter_mut().enumerate() {
            if self.ring.is_zero(v) {
                continue;
            }
            s.decode_into(idx / side, &mut xs);
            s.decode_into(idx % side, &mut ys);
            if !keep(&xs, &ys) {
                *v = self.ring.zero();
            }
        }
        out
    }

    /// The operator `V^{⊗n} → V^{⊗n}` in column convention: `M[y][x] = f[x][y]`.
    pub fn operator_matrix(&self) -> Matrix<R> {
        let side = self.space().size();
        Matrix::from_fn(&self.ring, side, side, |y, x| self.values[x * side + y].clone())
    }

    pub fn from_operator_matrix(q: usize, degree: usize, m: &Matrix<R>) -> Result<Self, CochainError> {
        let side = TupleSpace { q, n: degree }.size();
        if m.rows() != side || m.cols() != side {
            return Err(CochainError::Degree(m.rows(), side));
        }
        let mut values = Vec::with_capacity(side * side);
        for x in 0..side {
            for y in 0..side {
                values.push(m.get(y, x).clone());
            }
        }
        Self::from_values(m.ring(), q, degree, values)
    }
}

/// Anything that can report entries of a cochain on demand.
pub trait EntrySource<R: Ring> {
    fn degree(&self) -> usize;
    fn entry(&self, xs: &[usize], ys: &[usize]) -> R::Elem;
}

impl<R: Ring> EntrySource<R> for Cochain<R> {
    fn degree(&self) -> usize {
        self.degree
    }

    fn entry(&self, xs: &[usize], ys: &[usize]) -> R::Elem {
        self.get(xs, ys).clone()
    }
}

/// `d f` evaluated entry by entry without materializing it.
pub struct LazyCoboundary<'a, R: Ring, S: EntrySource<R>> {
    complex: &'a YbComplex,
    ring: R,
    inner: &'a S,
}

impl<R: Ring, S: EntrySource<R>> EntrySource<R> for LazyCoboundary<'_, R, S> {
    fn degree(&self) -> usize {
        self.inner.degree() + 1
    }

    fn entry(&self, xs: &[usize], ys: &[usize]) -> R::Elem {
        self.complex.coboundary_entry(&self.ring, self.inner, xs, ys)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComplexKind {
    #[serde(rename = "yb")]
    YangBaxter,
    #[serde(rename = "diag")]
    Diagonal,
    #[serde(rename = "quasidiag")]
    QuasiDiagonal,
}

impl std::str::FromStr for ComplexKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "yb" => Ok(Self::YangBaxter),
            "diag" => Ok(Self::Diagonal),
            "quasidiag" => Ok(Self::QuasiDiagonal),
            _ => Err(format!("unknown complex `{s}` (expected yb, diag or quasidiag)")),
        }
    }
}

impl std::fmt::Display for ComplexKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::YangBaxter => "yb",
            Self::Diagonal => "diag",
            Self::QuasiDiagonal => "quasidiag",
        })
    }
}

/// Rack data shared by all cochain operations.
#[derive(Clone, Debug)]
pub struct YbComplex {
    rack: RackTable,
    q: usize,
    op: Vec<usize>,
    inv: Vec<usize>,
    partition: BehaviorPartition,
    size_cap: usize,
}

impl YbComplex {
    pub fn new(rack: &RackTable) -> Self {
        let q = rack.size();
        let op = (0..q * q).map(|k| rack.op(k / q, k % q)).collect();
        let inv = rack.inverse_op().into_iter().flatten().collect();
        Self {
            rack: rack.clone(),
            q,
            op,
            inv,
            partition: rack.behavior_partition(),
            size_cap: DEFAULT_SIZE_CAP,
        }
    }

    pub fn with_size_cap(mut self, cap: usize) -> Self {
        self.size_cap = cap;
        self
    }

    pub fn rack(&self) -> &RackTable {
        &self.rack
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn partition(&self) -> &BehaviorPartition {
        &self.partition
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.op[x * self.q + y]
    }

    /// `x ∗̄ y`, the unique `z` with `z ∗ y = x`.
    #[inline]
    pub fn inv_op(&self, x: usize, y: usize) -> usize {
        self.inv[x * self.q + y]
    }

    #[inline]
    pub fn equivalent(&self, x: usize, y: usize) -> bool {
        self.partition.equivalent(x, y)
    }

    /// `a^{es[0] es[1] …}`.
    #[inline]
    pub fn exp(&self, a: usize, es: &[usize]) -> usize {
        es.iter().fold(a, |acc, &e| self.op(acc, e))
    }

    fn check<R: Ring>(&self, f: &Cochain<R>) -> Result<(), CochainError> {
        if f.q != self.q {
            return Err(CochainError::RackSize {
                expected: self.q,
                found: f.q,
            });
        }
        Ok(())
    }

    pub fn zero<R: Ring>(&self, ring: &R, degree: usize) -> Cochain<R> {
        Cochain::zero(ring, self.q, degree)
    }

    pub fn random<R: Ring, G: Rng + ?Sized>(&self, ring: &R, degree: usize, rng: &mut G) -> Cochain<R> {
        Cochain::random(ring, self.q, degree, rng)
    }

    /// Random cochain in `C_m^n`: quasi-diagonal in the last `m` coordinates.
    pub fn random_in_filtration<R: Ring, G: Rng + ?Sized>(
        &self,
        ring: &R,
        degree: usize,
        m: usize,
        rng: &mut G,
    ) -> Cochain<R> {
        let start = degree.saturating_sub(m);
        Cochain::from_fn(ring, self.q, degree, |xs, ys| {
            if (start..degree).all(|j| self.equivalent(xs[j], ys[j])) {
                ring.random_elem(rng)
            } else {
                ring.zero()
            }
        })
    }

    pub fn is_diagonal<R: Ring>(&self, f: &Cochain<R>) -> bool {
        f.nonzeros().all(|(i, _)| {
            let (x, y) = f.decode(i);
            x == y
        })
    }

    pub fn is_quasidiagonal<R: Ring>(&self, f: &Cochain<R>) -> bool {
        f.nonzeros().all(|(i, _)| {
            let (x, y) = f.decode(i);
            x.iter().zip(&y).all(|(&a, &b)| self.equivalent(a, b))
        })
    }

    pub fn project_diagonal<R: Ring>(&self, f: &Cochain<R>) -> Cochain<R> {
        f.restrict(|x, y| x == y)
    }

    pub fn project_quasidiagonal<R: Ring>(&self, f: &Cochain<R>) -> Cochain<R> {
        f.restrict(|x, y| x.iter().zip(y).all(|(&a, &b)| self.equivalent(a, b)))
    }

    /// `d_i f` for `i = 0..=n`, computed by scattering each nonzero entry.
    ///
    /// `(d_i f)[x][y] = f[x∖i][y∖i]·[x_i^{x_{i+1}…x_n} = y_i^{y_{i+1}…y_n}]
    ///                − f[x_0^{x_i}…x_{i-1}^{x_i}, x_{i+1}…][same for y]·[x_i = y_i]`.
    pub fn partial_coboundary<R: Ring>(&self, f: &Cochain<R>, i: usize) -> Result<Cochain<R>, CochainError> {
        self.check(f)?;
        let n = f.degree;
        if i > n {
            return Err(CochainError::Index { index: i, degree: n });
        }
        let mut out = Cochain::zero(&f.ring, self.q, n + 1);
        self.scatter_partial(f, i, &f.ring.one(), &mut out);
        Ok(out)
    }

    fn scatter_partial<R: Ring>(&self, f: &Cochain<R>, i: usize, sign: &R::Elem, out: &mut Cochain<R>) {
        let r = &f.ring;
        for (idx, v) in f.nonzeros() {
            let (a, b) = f.decode(idx);
            let v = r.mul(v, sign);
            let nv = r.neg(&v);
            self.scatter_entry(&a, &b, i, |x, y, positive| {
                out.add_at(x, y, if positive { &v } else { &nv });
            });
        }
    }

    /// Visit the support of `d_i` applied to the basis cochain at `(a, b)`;
    /// `positive` tells which summand produced the entry.
    fn scatter_entry(&self, a: &[usize], b: &[usize], i: usize, mut emit: impl FnMut(&[usize], &[usize], bool)) {
        let n = a.len();
        let mut x = vec![0; n + 1];
        let mut y = vec![0; n + 1];
        for t in 0..self.q {
            // first summand: insert t and the matching s at position i
            let e = self.exp(t, &a[i..]);
            let s = b[i..].iter().rev().fold(e, |acc, &bj| self.inv_op(acc, bj));
            insert_into(a, i, t, &mut x);
            insert_into(b, i, s, &mut y);
            emit(&x, &y, true);
            // second summand: undo the conjugation by t on the first i slots
            for j in 0..i {
                x[j] = self.inv_op(a[j], t);
                y[j] = self.inv_op(b[j], t);
            }
            x[i] = t;
            y[i] = t;
            emit(&x, &y, false);
        }
    }

    /// `d = Σ_{i=0}^{n} (−1)^i d_i`.
    pub fn coboundary<R: Ring>(&self, f: &Cochain<R>) -> Result<Cochain<R>, CochainError> {
        self.check(f)?;
        let r = &f.ring;
        let mut out = Cochain::zero(r, self.q, f.degree + 1);
        for i in 0..=f.degree {
            let sign = if i % 2 == 0 { r.one() } else { r.neg(&r.one()) };
            self.scatter_partial(f, i, &sign, &mut out);
        }
        Ok(out)
    }

    /// A single entry of `d_i f` by direct evaluation of both summands.
    pub fn partial_coboundary_entry<R: Ring, S: EntrySource<R> + ?Sized>(
        &self,
        ring: &R,
        f: &S,
        i: usize,
        xs: &[usize],
        ys: &[usize],
    ) -> R::Elem {
        let n = xs.len() - 1;
        debug_assert_eq!(f.degree(), n);
        let mut val = ring.zero();
        if self.exp(xs[i], &xs[i + 1..]) == self.exp(ys[i], &ys[i + 1..]) {
            let a = remove_at(xs, i);
            let b = remove_at(ys, i);
            val = f.entry(&a, &b);
        }
        if xs[i] == ys[i] {
            let t = xs[i];
            let a: Vec<usize> = xs[..i].iter().map(|&z| self.op(z, t)).chain(xs[i + 1..].iter().copied()).collect();
            let b: Vec<usize> = ys[..i].iter().map(|&z| self.op(z, t)).chain(ys[i + 1..].iter().copied()).collect();
            ring.sub_assign(&mut val, &f.entry(&a, &b));
        }
        val
    }

    pub fn coboundary_entry<R: Ring, S: EntrySource<R> + ?Sized>(
        &self,
        ring: &R,
        f: &S,
        xs: &[usize],
        ys: &[usize],
    ) -> R::Elem {
        let mut acc = ring.zero();
        for i in 0..xs.len() {
            let v = self.partial_coboundary_entry(ring, f, i, xs, ys);
            if i % 2 == 0 {
                ring.add_assign(&mut acc, &v);
            } else {
                ring.sub_assign(&mut acc, &v);
            }
        }
        acc
    }

    pub fn lazy_coboundary<'a, R: Ring, S: EntrySource<R>>(&'a self, ring: &R, f: &'a S) -> LazyCoboundary<'a, R, S> {
        LazyCoboundary {
            complex: self,
            ring: ring.clone(),
            inner: f,
        }
    }

    /// Materialize any entry source as a dense cochain.
    pub fn materialize<R: Ring, S: EntrySource<R> + ?Sized>(&self, ring: &R, f: &S) -> Cochain<R> {
        Cochain::from_fn(ring, self.q, f.degree(), |x, y| f.entry(x, y))
    }

    pub fn is_entropic<R: Ring>(&self, f: &Cochain<R>) -> Result<bool, CochainError> {
        for i in 0..=f.degree {
            if !self.partial_coboundary(f, i)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `f[x^{g_1}…][y^{g_1}…] = f[x][y]` for all `g_j ∈ Inn(Q)`, checked on the
    /// generators `ρ(a)` acting on one coordinate at a time.
    pub fn is_fully_equivariant<R: Ring>(&self, f: &Cochain<R>) -> bool {
        let n = f.degree;
        let side = f.space().size();
        let space = f.space();
        let mut xs = vec![0; n];
        let mut ys = vec![0; n];
        for idx in 0..side * side {
            space.decode_into(idx / side, &mut xs);
            space.decode_into(idx % side, &mut ys);
            let v = f.get_flat(idx);
            for j in 0..n {
                for a in 0..self.q {
                    let (x0, y0) = (xs[j], ys[j]);
                    xs[j] = self.op(x0, a);
                    ys[j] = self.op(y0, a);
                    let w = f.get(&xs, &ys);
                    xs[j] = x0;
                    ys[j] = y0;
                    if w != v {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `(φ* f)[x][y] = f[φ(x)][φ(y)]` for a cochain over the target of `φ`.
    ///
    /// This is index substitution only; it does not commute with `d` in
    /// general.
    pub fn pullback<R: Ring>(&self, phi: &RackMorphism, target_q: usize, f: &Cochain<R>) -> Result<Cochain<R>, CochainError> {
        if f.q != target_q {
            return Err(CochainError::RackSize {
                expected: target_q,
                found: f.q,
            });
        }
        if phi.map().len() != self.q {
            return Err(CochainError::RackSize {
                expected: self.q,
                found: phi.map().len(),
            });
        }
        Ok(Cochain::from_fn(&f.ring, self.q, f.degree, |x, y| {
            let fx: Vec<usize> = x.iter().map(|&a| phi.apply(a)).collect();
            let fy: Vec<usize> = y.iter().map(|&a| phi.apply(a)).collect();
            f.get(&fx, &fy).clone()
        }))
    }

    fn guard(&self, degree: usize) -> Result<(), CochainError> {
        let rows = self
            .q
            .checked_pow(2 * (degree as u32 + 1))
            .unwrap_or(usize::MAX);
        if rows > self.size_cap {
            return Err(CochainError::SizeGuard {
                rows,
                cap: self.size_cap,
                q: self.q,
                degree,
            });
        }
        Ok(())
    }

    /// Flat indices of the coordinates spanning the chosen subcomplex in degree `n`.
    pub fn basis_indices(&self, kind: ComplexKind, degree: usize) -> Vec<usize> {
        let s = TupleSpace { q: self.q, n: degree };
        let side = s.size();
        match kind {
            ComplexKind::YangBaxter => (0..side * side).collect(),
            ComplexKind::Diagonal => (0..side).map(|x| x * side + x).collect(),
            ComplexKind::QuasiDiagonal => {
                let mut xs = vec![0; degree];
                let mut ys = vec![0; degree];
                (0..side * side)
                    .filter(|&idx| {
                        s.decode_into(idx / side, &mut xs);
                        s.decode_into(idx % side, &mut ys);
                        xs.iter().zip(&ys).all(|(&a, &b)| self.equivalent(a, b))
                    })
                    .collect()
            }
        }
    }

    /// Matrix of `d^n: C^n → C^{n+1}` in the flat index bases.
    pub fn coboundary_matrix<F: Field>(&self, field: &F, degree: usize) -> Result<SparseMatrix<F>, CochainError> {
        self.coboundary_matrix_on(field, degree, None)
    }

    fn coboundary_matrix_on<F: Field>(
        &self,
        field: &F,
        degree: usize,
        columns: Option<&[usize]>,
    ) -> Result<SparseMatrix<F>, CochainError> {
        self.guard(degree)?;
        let rows = TupleSpace { q: self.q, n: degree + 1 }.size().pow(2);
        let all: Vec<usize>;
        let columns = match columns {
            Some(c) => c,
            None => {
                all = (0..TupleSpace { q: self.q, n: degree }.size().pow(2)).collect();
                &all
            }
        };
        let mut m = SparseMatrix::new(field, rows, 0);
        let side = TupleSpace { q: self.q, n: degree }.size();
        let out_space = TupleSpace { q: self.q, n: degree + 1 };
        let out_side = out_space.size();
        let space = TupleSpace { q: self.q, n: degree };
        let one = field.one();
        let minus = field.neg(&one);
        for &col in columns {
            let a = space.decode(col / side);
            let b = space.decode(col % side);
            let mut entries = Vec::with_capacity(2 * self.q * (degree + 1));
            for i in 0..=degree {
                let odd = i % 2 == 1;
                self.scatter_entry(&a, &b, i, |x, y, positive| {
                    let row = out_space.encode(x) * out_side + out_space.encode(y);
                    entries.push((row, if positive != odd { one.clone() } else { minus.clone() }));
                });
            }
            m.push_column(entries).expect("rows in range");
        }
        Ok(m)
    }

    /// `d^n` restricted to a subcomplex, in the coordinates of [`Self::basis_indices`].
    pub fn restricted_coboundary_matrix<F: Field>(
        &self,
        field: &F,
        kind: ComplexKind,
        degree: usize,
    ) -> Result<SparseMatrix<F>, CochainError> {
        let cols = self.basis_indices(kind, degree);
        let full = self.coboundary_matrix_on(field, degree, Some(&cols))?;
        if kind == ComplexKind::YangBaxter {
            return Ok(full);
        }
        let rows = self.basis_indices(kind, degree + 1);
        let identity: Vec<usize> = (0..cols.len()).collect();
        Ok(full.restrict(&rows, &identity))
    }

    pub fn coboundary_rank<F: Field>(&self, field: &F, kind: ComplexKind, degree: usize) -> Result<usize, CochainError> {
        if degree == 0 {
            return Ok(0);
        }
        Ok(self.restricted_coboundary_matrix(field, kind, degree)?.rank())
    }

    /// `dim H^n = dim C^n − rank d^n − rank d^{n−1}` for the chosen complex.
    pub fn cohomology_dim<F: Field>(&self, field: &F, kind: ComplexKind, degree: usize) -> Result<usize, CochainError> {
        let dim = self.basis_indices(kind, degree).len();
        let rank_out = self.coboundary_rank(field, kind, degree)?;
        let rank_in = match degree {
            0 => 0,
            n => self.coboundary_rank(field, kind, n - 1)?,
        };
        Ok(dim - rank_out - rank_in)
    }
}

fn insert_into(src: &[usize], i: usize, v: usize, out: &mut [usize]) {
    out[..i].copy_from_slice(&src[..i]);
    out[i] = v;
    out[i + 1..].copy_from_slice(&src[i..]);
}

fn remove_at(src: &[usize], i: usize) -> Vec<usize> {
    src[..i].iter().chain(&src[i + 1..]).copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PrimeField;
    use crate::fixtures;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn tuple_encoding_round_trip() {
        let s = TupleSpace { q: 3, n: 3 };
        for i in 0..27 {
            assert_eq!(s.encode(&s.decode(i)), i);
        }
        assert_eq!(s.encode(&[1, 0, 2]), 11);
    }

    #[test]
    fn scatter_matches_gather() {
        let c = YbComplex::new(&fixtures::dihedral3());
        let f3 = PrimeField::new(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 0..3 {
            let f = c.random(&f3, n, &mut rng);
            for i in 0..=n {
                let d = c.partial_coboundary(&f, i).unwrap();
                let lazy = Cochain::from_fn(&f3, 3, n + 1, |x, y| c.partial_coboundary_entry(&f3, &f, i, x, y));
                assert_eq!(d, lazy, "degree {n}, i = {i}");
            }
        }
    }

    #[test]
    fn degree_zero_coboundary_vanishes() {
        let c = YbComplex::new(&fixtures::quandle3());
        let f5 = PrimeField::new(5).unwrap();
        let f = Cochain::from_values(&f5, 3, 0, vec![3]).unwrap();
        assert!(c.coboundary(&f).unwrap().is_zero());
    }

    #[test]
    fn rejects_bad_index() {
        let c = YbComplex::new(&fixtures::trivial(2));
        let f2 = PrimeField::new(2).unwrap();
        let f = c.zero(&f2, 1);
        assert!(c.partial_coboundary(&f, 2).is_err());
    }

    #[test]
    fn size_guard_refuses() {
        let c = YbComplex::new(&fixtures::dihedral4()).with_size_cap(1000);
        let f2 = PrimeField::new(2).unwrap();
        let err = c.coboundary_matrix(&f2, 2).unwrap_err();
        assert!(matches!(err, CochainError::SizeGuard { rows: 4096, .. }));
    }
}
