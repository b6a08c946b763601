//! Pullback along rack homomorphisms does not commute with `d`.
//!
//! Two explicit instances: the projection onto the (trivial) orbit quotient,
//! and the projection of a trivial extension `Q × {0..k}` onto `Q`.

use serde::Serialize;

use crate::algebra::Ring;
use crate::rack::RackTable;

use super::{Cochain, CochainError, YbComplex};

/// An entry of degree 2 at which `d(φ* f)` and `φ*(d f)` differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NaturalityWitness {
    pub input: Vec<usize>,
    pub output: Vec<usize>,
    /// `d(φ* f)` at the entry.
    pub pulled_then_d: String,
    /// `φ*(d f)` at the entry.
    pub d_then_pulled: String,
    /// The value the closed-form expression predicts for the nonzero side.
    pub predicted: String,
}

/// Orbit quotient `φ: Q → Q̄`: with `f` on the trivial quotient, `φ*(d̄ f) = 0`
/// while `d(φ* f)` at `((x, y), (x, z))`, `y ≢ z`, equals `−f[φ y][φ z]`.
///
/// `f[a][b] = 1 + a + 2b` keeps every entry nonzero in characteristic ≠ 2, 3.
pub fn orbit_quotient_witness<R: Ring>(rack: &RackTable, ring: &R) -> Result<Option<NaturalityWitness>, CochainError> {
    let (quot, phi) = rack.orbit_quotient();
    let qb = quot.size();
    let f = Cochain::from_fn(ring, qb, 1, |a, b| ring.from_int(1 + a[0] as i64 + 2 * b[0] as i64));
    let c = YbComplex::new(rack);
    let pulled = c.coboundary(&c.pullback(&phi, qb, &f)?)?;
    let later = c.pullback(&phi, qb, &YbComplex::new(&quot).coboundary(&f)?)?;
    let q = rack.size();
    for x in 0..q {
        for y in 0..q {
            for z in 0..q {
                if c.equivalent(y, z) {
                    continue;
                }
                let (i, o) = ([x, y], [x, z]);
                let (l, r) = (pulled.get(&i, &o), later.get(&i, &o));
                if l != r {
                    return Ok(Some(NaturalityWitness {
                        input: i.to_vec(),
                        output: o.to_vec(),
                        pulled_then_d: ring.format_elem(l),
                        d_then_pulled: ring.format_elem(r),
                        predicted: ring.format_elem(&ring.neg(f.get(&[phi.apply(y)], &[phi.apply(z)]))),
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Trivial extension `φ: Q × {0, 1} → Q` with a diagonal `f` on `Q`: at
/// `((x, y), (x, z))` with `y = (ȳ, 0)`, `z = (ȳ, 1)` one has `d(φ* f) = 0`
/// while `φ*(d f) = f[x̄^ȳ][x̄^ȳ] − f[x̄][x̄]`.
pub fn trivial_extension_witness<R: Ring>(rack: &RackTable, ring: &R) -> Result<Option<NaturalityWitness>, CochainError> {
    let k = 2;
    let (ext, phi) = rack.trivial_extension(k);
    let q = rack.size();
    let f = Cochain::from_fn(ring, q, 1, |a, b| if a == b { ring.from_int(a[0] as i64 + 1) } else { ring.zero() });
    let ce = YbComplex::new(&ext);
    let pulled = ce.coboundary(&ce.pullback(&phi, q, &f)?)?;
    let later = ce.pullback(&phi, q, &YbComplex::new(rack).coboundary(&f)?)?;
    for xb in 0..q {
        for yb in 0..q {
            for xi in 0..k {
                let x = xb * k + xi;
                let (i, o) = ([x, yb * k], [x, yb * k + 1]);
                let (l, r) = (pulled.get(&i, &o), later.get(&i, &o));
                if l != r {
                    let e = rack.op(xb, yb);
                    return Ok(Some(NaturalityWitness {
                        input: i.to_vec(),
                        output: o.to_vec(),
                        pulled_then_d: ring.format_elem(l),
                        d_then_pulled: ring.format_elem(r),
                        predicted: ring.format_elem(&ring.sub(f.get(&[e], &[e]), f.get(&[xb], &[xb]))),
                    }));
                }
            }
        }
    }
    Ok(None)
}
