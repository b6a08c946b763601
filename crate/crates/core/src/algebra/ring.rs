use std::fmt::Debug;

use rand::Rng;

use super::{AlgebraError, PrimeField, RingSpec};

/// A commutative ring with explicitly represented elements.
///
/// Ring values are small descriptors (a modulus, a precision); elements are
/// plain data and all arithmetic goes through the descriptor.
pub trait Ring: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    fn sub_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.sub(a, b);
    }

    /// Adic valuation with respect to the maximal ideal; `None` for zero.
    /// Fields report 0 for every nonzero element.
    fn valuation(&self, a: &Self::Elem) -> Option<usize> {
        if self.is_zero(a) {
            None
        } else {
            Some(0)
        }
    }

    fn spec(&self) -> RingSpec;

    fn format_elem(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem, AlgebraError>;

    fn random_elem<G: Rng + ?Sized>(&self, rng: &mut G) -> Self::Elem;
}

pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

/// A complete local ring truncated at a finite precision: `F_p[h]/(h^N)`
/// or `Z/p^N`, with a prime field `F_p` (viewed with `N = 1`) as the
/// degenerate case.
///
/// `digit(a, k)` is the image of `a` in `m^k / m^{k+1}`, which is `F_p` in
/// both settings; `lift_digit(d, k)` is the canonical representative
/// `d·t^k` where `t` is the uniformizer (`h` resp. `p`).
pub trait LocalRing: Ring {
    fn residue_field(&self) -> PrimeField;

    /// `N` such that `m^N = 0`.
    fn precision(&self) -> usize;

    fn digit(&self, a: &Self::Elem, k: usize) -> u64;
    fn lift_digit(&self, d: u64, k: usize) -> Self::Elem;

    fn residue(&self, a: &Self::Elem) -> u64 {
        self.digit(a, 0)
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.residue(a) != 0
    }

    fn invert_unit(&self, a: &Self::Elem) -> Result<Self::Elem, AlgebraError>;

    /// The uniformizer `t^k` (`h^k` resp. `p^k`); zero once `k >= N`.
    fn uniformizer_pow(&self, k: usize) -> Self::Elem {
        self.lift_digit(1, k)
    }

    /// Random element of `m^k`.
    fn random_in_ideal<G: Rng + ?Sized>(&self, rng: &mut G, k: usize) -> Self::Elem {
        let a = self.random_elem(rng);
        self.mul(&a, &self.uniformizer_pow(k))
    }
}
