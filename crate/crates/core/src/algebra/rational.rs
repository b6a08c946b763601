use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::{AlgebraError, Field, Ring, RingSpec};

/// The field of rational numbers with arbitrary-precision numerator and
/// denominator, always kept reduced with positive denominator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_int(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add_assign(&self, a: &mut BigRational, b: &BigRational) {
        *a += b;
    }

    fn sub_assign(&self, a: &mut BigRational, b: &BigRational) {
        *a -= b;
    }

    fn spec(&self) -> RingSpec {
        RingSpec::Rational
    }

    fn format_elem(&self, a: &BigRational) -> String {
        format!("{}/{}", a.numer(), a.denom())
    }

    fn parse_elem(&self, s: &str) -> Result<BigRational, AlgebraError> {
        let bad = || AlgebraError::Parse(format!("invalid rational `{s}`"));
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(num, den))
    }

    fn random_elem<G: Rng + ?Sized>(&self, rng: &mut G) -> BigRational {
        let num = rng.gen_range(-5i64..=5);
        let den = rng.gen_range(1i64..=3);
        BigRational::new(num.into(), den.into())
    }
}

impl Field for Rationals {
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
}

/// `true` iff the value is stored in lowest terms with a positive denominator.
pub fn is_normalized(a: &BigRational) -> bool {
    use num_integer::Integer;
    a.denom().is_positive() && a.numer().gcd(a.denom()).is_one()
}
