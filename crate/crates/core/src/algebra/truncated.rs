use rand::Rng;

use super::prime::{inv_mod, is_prime};
use super::{AlgebraError, Field, LocalRing, PrimeField, Ring, RingSpec};

/// `F_p[h]/(h^N)`: elements are coefficient vectors `c_0..c_{N-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PowerSeriesRing {
    field: PrimeField,
    precision: usize,
}

impl PowerSeriesRing {
    pub fn new(p: u64, precision: usize) -> Result<Self, AlgebraError> {
        if precision == 0 {
            return Err(AlgebraError::ZeroPrecision);
        }
        Ok(Self {
            field: PrimeField::new(p)?,
            precision,
        })
    }

    pub fn prime(&self) -> u64 {
        self.field.modulus()
    }

    /// The element `h`.
    pub fn h(&self) -> Vec<u64> {
        self.lift_digit(1, 1)
    }

    pub fn from_coeffs(&self, coeffs: &[i64]) -> Vec<u64> {
        let mut out = vec![0; self.precision];
        for (k, c) in coeffs.iter().enumerate().take(self.precision) {
            out[k] = self.field.reduce(*c);
        }
        out
    }
}

impl Ring for PowerSeriesRing {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.precision]
    }

    fn one(&self) -> Vec<u64> {
        self.lift_digit(1, 0)
    }

    fn from_int(&self, n: i64) -> Vec<u64> {
        self.lift_digit(self.field.reduce(n), 0)
    }

    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.field.add(x, y)).collect()
    }

    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| self.field.neg(x)).collect()
    }

    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter()
            .zip(b)
            .map(|(x, y)| self.field.add(x, &self.field.neg(y)))
            .collect()
    }

    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let n = self.precision;
        let p = self.prime();
        let mut out = vec![0u64; n];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(n - i) {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        out
    }

    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|c| *c == 0)
    }

    fn add_assign(&self, a: &mut Vec<u64>, b: &Vec<u64>) {
        for (x, y) in a.iter_mut().zip(b) {
            *x = self.field.add(x, y);
        }
    }

    fn valuation(&self, a: &Vec<u64>) -> Option<usize> {
        a.iter().position(|c| *c != 0)
    }

    fn spec(&self) -> RingSpec {
        RingSpec::PowerSeries {
            p: self.prime(),
            precision: self.precision,
        }
    }

    fn format_elem(&self, a: &Vec<u64>) -> String {
        let terms: Vec<String> = a
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(k, c)| match (k, c) {
                (0, c) => c.to_string(),
                (1, 1) => "h".to_string(),
                (1, c) => format!("{c}h"),
                (k, 1) => format!("h^{k}"),
                (k, c) => format!("{c}h^{k}"),
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }

    fn parse_elem(&self, s: &str) -> Result<Vec<u64>, AlgebraError> {
        let bad = || AlgebraError::Parse(format!("invalid element of {} `{s}`", self.spec()));
        let normalized = s.trim().replace(' ', "").replace('-', "+-");
        let mut out = self.zero();
        for term in normalized.split('+').filter(|t| !t.is_empty()) {
            let (coeff, exp) = match term.split_once('h') {
                None => (term, 0usize),
                Some((c, e)) => {
                    let c = c.trim_end_matches('*');
                    let e = if e.is_empty() {
                        1
                    } else {
                        e.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?
                    };
                    (c, e)
                }
            };
            let coeff: i64 = match coeff {
                "" => 1,
                "-" => -1,
                c => c.parse().map_err(|_| bad())?,
            };
            if exp < self.precision {
                out[exp] = self.field.add(&out[exp], &self.field.reduce(coeff));
            }
        }
        Ok(out)
    }

    fn random_elem<G: Rng + ?Sized>(&self, rng: &mut G) -> Vec<u64> {
        (0..self.precision)
            .map(|_| rng.gen_range(0..self.prime()))
            .collect()
    }
}

impl LocalRing for PowerSeriesRing {
    fn residue_field(&self) -> PrimeField {
        self.field
    }

    fn precision(&self) -> usize {
        self.precision
    }

    fn digit(&self, a: &Vec<u64>, k: usize) -> u64 {
        a.get(k).copied().unwrap_or(0)
    }

    fn lift_digit(&self, d: u64, k: usize) -> Vec<u64> {
        let mut out = self.zero();
        if k < self.precision {
            out[k] = d % self.prime();
        }
        out
    }

    fn invert_unit(&self, a: &Vec<u64>) -> Result<Vec<u64>, AlgebraError> {
        let f = self.field;
        let a0_inv = f.inv(&a[0]).ok_or_else(|| AlgebraError::NotAUnit {
            value: self.format_elem(a),
            valuation: self.valuation(a),
        })?;
        let mut b = vec![0u64; self.precision];
        b[0] = a0_inv;
        for k in 1..self.precision {
            let mut acc = 0u64;
            for j in 1..=k {
                acc = f.add(&acc, &f.mul(&a[j], &b[k - j]));
            }
            b[k] = f.neg(&f.mul(&a0_inv, &acc));
        }
        Ok(b)
    }
}

/// `Z/p^N`: elements are residues in `[0, p^N)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PadicRing {
    p: u64,
    precision: usize,
    modulus: u64,
}

impl PadicRing {
    pub fn new(p: u64, precision: usize) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        if precision == 0 {
            return Err(AlgebraError::ZeroPrecision);
        }
        let modulus = (0..precision)
            .try_fold(1u64, |acc, _| acc.checked_mul(p).filter(|m| *m < 1 << 62))
            .ok_or(AlgebraError::ModulusTooLarge { p, precision })?;
        Ok(Self {
            p,
            precision,
            modulus,
        })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

impl Ring for PadicRing {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.modulus
    }

    fn from_int(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.modulus as i128) as u64
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.modulus as u128) as u64
    }

    fn valuation(&self, a: &u64) -> Option<usize> {
        if *a == 0 {
            return None;
        }
        let mut v = 0;
        let mut x = *a;
        while x.is_multiple_of(self.p) {
            x /= self.p;
            v += 1;
        }
        Some(v)
    }

    fn spec(&self) -> RingSpec {
        RingSpec::Padic {
            p: self.p,
            precision: self.precision,
        }
    }

    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }

    fn parse_elem(&self, s: &str) -> Result<u64, AlgebraError> {
        let n: i128 = s
            .trim()
            .parse()
            .map_err(|_| AlgebraError::Parse(format!("invalid element of {} `{s}`", self.spec())))?;
        Ok(n.rem_euclid(self.modulus as i128) as u64)
    }

    fn random_elem<G: Rng + ?Sized>(&self, rng: &mut G) -> u64 {
        rng.gen_range(0..self.modulus)
    }
}

impl LocalRing for PadicRing {
    fn residue_field(&self) -> PrimeField {
        PrimeField::new(self.p).expect("validated at construction")
    }

    fn precision(&self) -> usize {
        self.precision
    }

    fn digit(&self, a: &u64, k: usize) -> u64 {
        if k >= self.precision {
            return 0;
        }
        (a / self.p.pow(k as u32)) % self.p
    }

    fn lift_digit(&self, d: u64, k: usize) -> u64 {
        if k >= self.precision {
            return 0;
        }
        self.mul(&(d % self.p), &self.p.pow(k as u32))
    }

    fn invert_unit(&self, a: &u64) -> Result<u64, AlgebraError> {
        inv_mod(*a, self.modulus).ok_or_else(|| AlgebraError::NotAUnit {
            value: self.format_elem(a),
            valuation: self.valuation(a),
        })
    }
}
