use rand::Rng;

use super::{AlgebraError, Field, LocalRing, Ring, RingSpec};

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Extended Euclid modulo `m`; `None` if `a` is not invertible.
pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// The prime field `F_p`; elements are residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, AlgebraError> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn from_int(&self, n: i64) -> u64 {
        self.reduce(n)
    }

    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn spec(&self) -> RingSpec {
        RingSpec::Prime(self.p)
    }

    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }

    fn parse_elem(&self, s: &str) -> Result<u64, AlgebraError> {
        let n: i64 = s
            .trim()
            .parse()
            .map_err(|_| AlgebraError::Parse(format!("invalid F_{} element `{s}`", self.p)))?;
        Ok(self.reduce(n))
    }

    fn random_elem<G: Rng + ?Sized>(&self, rng: &mut G) -> u64 {
        rng.gen_range(0..self.p)
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            inv_mod(*a, self.p)
        }
    }
}

impl LocalRing for PrimeField {
    fn residue_field(&self) -> PrimeField {
        *self
    }

    fn precision(&self) -> usize {
        1
    }

    fn digit(&self, a: &u64, k: usize) -> u64 {
        if k == 0 {
            *a
        } else {
            0
        }
    }

    fn lift_digit(&self, d: u64, k: usize) -> u64 {
        if k == 0 {
            d % self.p
        } else {
            0
        }
    }

    fn invert_unit(&self, a: &u64) -> Result<u64, AlgebraError> {
        self.inv(a).ok_or(AlgebraError::NotAUnit {
            value: self.format_elem(a),
            valuation: None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite_modulus() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(7).is_ok());
    }

    #[test]
    fn inverses_mod_p() {
        let f = PrimeField::new(5).unwrap();
        for a in 1..5 {
            let ai = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ai), 1);
        }
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn inv_mod_composite() {
        assert_eq!(inv_mod(3, 16), Some(11));
        assert_eq!(inv_mod(2, 16), None);
    }
}
