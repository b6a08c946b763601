//! Homotopy retraction of the Yang-Baxter complex onto its quasi-diagonal
//! subcomplex through the filtration `C_0 ⊃ C_1 ⊃ … ⊃ C_n = C_Δ`, where
//! `C_m^n` consists of cochains quasi-diagonal in the last `m` coordinates.
//!
//! Output coordinates of `s` are numbered `1..n−1`; the formula's `x_2..x_n`
//! are shifted down by one.

use crate::algebra::Ring;
use crate::cochain::{Cochain, CochainError, EntrySource, YbComplex};

/// For every `x ≢ y`, the pair `(u, v) = (z ∗̄ x, z ∗̄ y)` for the smallest
/// `z` making them differ; then `u ≠ v` and `u ∗ x = v ∗ y = z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiMap {
    q: usize,
    pairs: Vec<Option<(usize, usize)>>,
}

impl PsiMap {
    pub fn build(c: &YbComplex) -> Self {
        let q = c.q();
        let mut pairs = vec![None; q * q];
        for x in 0..q {
            for y in 0..q {
                if c.equivalent(x, y) {
                    continue;
                }
                let z = (0..q)
                    .find(|&z| c.inv_op(z, x) != c.inv_op(z, y))
                    .expect("inequivalent elements have distinct inverse translations");
                let (u, v) = (c.inv_op(z, x), c.inv_op(z, y));
                assert!(u != v && c.op(u, x) == z && c.op(v, y) == z);
                pairs[x * q + y] = Some((u, v));
            }
        }
        Self { q, pairs }
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> Option<(usize, usize)> {
        self.pairs[x * self.q + y]
    }

    pub fn len(&self) -> usize {
        self.pairs.iter().flatten().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), (usize, usize))> + '_ {
        self.pairs
            .iter()
            .enumerate()
            .filter_map(|(k, p)| p.map(|uv| ((k / self.q, k % self.q), uv)))
    }
}

pub struct HomotopyKit<'a> {
    complex: &'a YbComplex,
    psi: PsiMap,
}

impl<'a> HomotopyKit<'a> {
    pub fn new(complex: &'a YbComplex) -> Self {
        Self {
            complex,
            psi: PsiMap::build(complex),
        }
    }

    pub fn psi(&self) -> &PsiMap {
        &self.psi
    }

    pub fn complex(&self) -> &YbComplex {
        self.complex
    }

    /// Largest `m` with `f ∈ C_m^n`; `n` when `f` is quasi-diagonal.
    pub fn filtration_level<R: Ring>(&self, f: &Cochain<R>) -> usize {
        let n = f.degree();
        let mut level = n;
        for (idx, _) in f.nonzeros() {
            let (x, y) = f.decode(idx);
            if let Some(j) = (0..n).rev().find(|&j| !self.complex.equivalent(x[j], y[j])) {
                level = level.min(n - 1 - j);
            }
        }
        level
    }

    fn require_level<R: Ring>(&self, f: &Cochain<R>, m: usize) -> Result<(), CochainError> {
        let n = f.degree();
        for (idx, _) in f.nonzeros() {
            let (x, y) = f.decode(idx);
            if (n.saturating_sub(m)..n).any(|j| !self.complex.equivalent(x[j], y[j])) {
                return Err(CochainError::Filtration {
                    level: self.filtration_level(f),
                    required: m,
                    witness: (x, y),
                });
            }
        }
        Ok(())
    }

    /// `s^N_m` on any entry source of degree `N`, without checking the level.
    ///
    /// With `k = N − m ≥ 2`: `(s f)[o][p] = f[o_1..o_{k−2}, u, o_{k−1}..][p_1..p_{k−2}, v, p_{k−1}..]`
    /// when `o_{k−1} ≢ p_{k−1}` and `(u, v) = ψ(o_{k−1}, p_{k−1})`, else 0.
    /// For `k = 1` the formula has no slot to read and `s` is zero, as it is
    /// for `m ≥ N`.
    pub fn s_of<R: Ring, S: EntrySource<R> + ?Sized>(&self, ring: &R, f: &S, m: usize) -> Option<Cochain<R>> {
        let big_n = f.degree();
        if big_n == 0 {
            return None;
        }
        let q = self.complex.q();
        if m + 1 >= big_n {
            return Some(Cochain::zero(ring, q, big_n - 1));
        }
        let slot = big_n - m - 2;
        let mut xs = vec![0; big_n];
        let mut ys = vec![0; big_n];
        Some(Cochain::from_fn(ring, q, big_n - 1, |o, p| {
            let Some((u, v)) = self.psi.get(o[slot], p[slot]) else {
                return ring.zero();
            };
            xs[..slot].copy_from_slice(&o[..slot]);
            ys[..slot].copy_from_slice(&p[..slot]);
            xs[slot] = u;
            ys[slot] = v;
            xs[slot + 1..].copy_from_slice(&o[slot..]);
            ys[slot + 1..].copy_from_slice(&p[slot..]);
            f.entry(&xs, &ys)
        }))
    }

    /// `s^n_m f`; requires `f ∈ C_m^n` and `n ≥ 1`.
    pub fn homotopy_s<R: Ring>(&self, f: &Cochain<R>, m: usize) -> Result<Cochain<R>, CochainError> {
        self.require_level(f, m)?;
        self.s_of(f.ring(), f, m)
            .ok_or(CochainError::Index { index: m, degree: 0 })
    }

    /// `t = d ∘ s − s ∘ d`, with `d f` evaluated lazily inside `s`.
    pub fn homotopy_t<R: Ring>(&self, f: &Cochain<R>, m: usize) -> Result<Cochain<R>, CochainError> {
        self.require_level(f, m)?;
        let r = f.ring();
        let c = self.complex;
        let sd = self.s_of(r, &c.lazy_coboundary(r, f), m).expect("degree ≥ 1");
        Ok(match self.s_of(r, f, m) {
            Some(s) => c.coboundary(&s)?.sub(&sd),
            None => sd.neg(),
        })
    }

    /// `t` computed from the fully materialized `d f`; used as a cross-check.
    pub fn homotopy_t_materialized<R: Ring>(&self, f: &Cochain<R>, m: usize) -> Result<Cochain<R>, CochainError> {
        self.require_level(f, m)?;
        let c = self.complex;
        let df = c.coboundary(f)?;
        let sd = self.homotopy_s(&df, m)?;
        Ok(match self.s_of(f.ring(), f, m) {
            Some(s) => c.coboundary(&s)?.sub(&sd),
            None => sd.neg(),
        })
    }

    /// `p = id − (−1)^{n−m} t`.
    pub fn homotopy_p<R: Ring>(&self, f: &Cochain<R>, m: usize) -> Result<Cochain<R>, CochainError> {
        let t = self.homotopy_t(f, m)?;
        let n = f.degree();
        Ok(if n.abs_diff(m).is_multiple_of(2) { f.sub(&t) } else { f.add(&t) })
    }

    /// `P = p_{n−1} ∘ … ∘ p_0`, landing in the quasi-diagonal subcomplex.
    pub fn project_p<R: Ring>(&self, f: &Cochain<R>) -> Result<Cochain<R>, CochainError> {
        let mut cur = f.clone();
        for m in 0..f.degree() {
            cur = self.homotopy_p(&cur, m)?;
        }
        Ok(cur)
    }

    /// For a 2-cocycle `f`, a quasi-diagonal `f_qd = f + d¹g` together with `g`.
    ///
    /// At level `m` the current cocycle `f_c` satisfies
    /// `p(f_c) = f_c − (−1)^{n−m} d(s f_c)`, so the correction is
    /// `−(−1)^{n−m} s_m(f_c)`.
    pub fn quasidiagonal_representative<R: Ring>(&self, f: &Cochain<R>) -> Result<(Cochain<R>, Cochain<R>), CochainError> {
        let c = self.complex;
        let r = f.ring();
        let n = f.degree();
        if n != 2 {
            return Err(CochainError::Degree(n, 2));
        }
        let df = c.coboundary(f)?;
        if let Some(w) = df.first_nonzero() {
            return Err(CochainError::NotCocycle(w));
        }
        let mut fc = f.clone();
        let mut g = c.zero(r, 1);
        for m in 0..n {
            let s = self.homotopy_s(&fc, m)?;
            let corr = if (n - m).is_multiple_of(2) { s.neg() } else { s };
            let next = fc.add(&c.coboundary(&corr)?);
            debug_assert_eq!(next, self.homotopy_p(&fc, m)?);
            fc = next;
            g = g.add(&corr);
        }
        debug_assert!(c.is_quasidiagonal(&fc));
        Ok((fc, g))
    }
}
