#![allow(dead_code)]

use rand::Rng;
use yb_core::algebra::{PrimeField, Ring};
use yb_core::cochain::{Cochain, YbComplex};
use yb_core::homology::Chain;
use yb_core::homotopy::HomotopyKit;

pub const FIELDS: [u64; 3] = [2, 3, 5];

/// Identities (a)–(f) for one random `f ∈ C_m^n` and one random `g ∈ C_{m+1}^n`.
pub fn homotopy_identities<G: Rng>(kit: &HomotopyKit, field: &PrimeField, n: usize, m: usize, rng: &mut G) -> Result<(), String> {
    let c = kit.complex();
    let f = c.random_in_filtration(field, n, m, rng);
    let g = c.random_in_filtration(field, n, m + 1, rng);
    let err = |what: &str| format!("n = {n}, m = {m}: {what}");

    let t = kit.homotopy_t(&f, m).map_err(|e| err(&e.to_string()))?;
    let t_ref = kit.homotopy_t_materialized(&f, m).map_err(|e| err(&e.to_string()))?;
    if t != t_ref {
        return Err(err("(a) t ≠ d s − s d"));
    }

    let k = n - m;
    let sign_neg = k % 2 == 1;
    for idx in 0..f.values().len() {
        let (x, y) = f.decode(idx);
        if c.equivalent(x[k - 1], y[k - 1]) {
            continue;
        }
        let want = if sign_neg { field.neg(f.get_flat(idx)) } else { *f.get_flat(idx) };
        if *t.get_flat(idx) != want {
            return Err(err(&format!("(b) (t f){x:?}{y:?} ≠ ±f")));
        }
    }

    if !kit.homotopy_t(&g, m).map_err(|e| err(&e.to_string()))?.is_zero() {
        return Err(err("(c) t ≠ 0 on C_{m+1}"));
    }

    let pf = kit.homotopy_p(&f, m).map_err(|e| err(&e.to_string()))?;
    if kit.filtration_level(&pf) < m + 1 {
        return Err(err("(d) p f ∉ C_{m+1}"));
    }

    if kit.homotopy_p(&g, m).map_err(|e| err(&e.to_string()))? != g {
        return Err(err("(e) p moves C_{m+1}"));
    }

    let df = c.coboundary(&f).map_err(|e| err(&e.to_string()))?;
    let lhs = c.coboundary(&pf).map_err(|e| err(&e.to_string()))?;
    let rhs = kit.homotopy_p(&df, m).map_err(|e| err(&e.to_string()))?;
    if lhs != rhs {
        return Err(err("(f) d p ≠ p d"));
    }
    Ok(())
}

/// `d∘d = 0` and `d_i d_j = d_{j+1} d_i` on a random cochain of degree `n`.
pub fn coboundary_identities<R: Ring, G: Rng>(c: &YbComplex, ring: &R, n: usize, rng: &mut G) -> Result<(), String> {
    let f = c.random(ring, n, rng);
    let e = |e: yb_core::cochain::CochainError| e.to_string();
    let faces: Vec<Cochain<R>> = (0..=n).map(|i| c.partial_coboundary(&f, i)).collect::<Result<_, _>>().map_err(e)?;
    let df = faces
        .iter()
        .enumerate()
        .fold(c.zero(ring, n + 1), |acc, (i, d)| if i % 2 == 0 { acc.add(d) } else { acc.sub(d) });
    if df != c.coboundary(&f).map_err(e)? {
        return Err(format!("degree {n}: d is not the alternating sum of faces"));
    }
    if !c.coboundary(&df).map_err(e)?.is_zero() {
        return Err(format!("degree {n}: d∘d ≠ 0"));
    }
    for j in 0..=n {
        for i in 0..=j {
            if c.partial_coboundary(&faces[j], i).map_err(e)? != c.partial_coboundary(&faces[i], j + 1).map_err(e)? {
                return Err(format!("degree {n}: d_{i} d_{j} ≠ d_{} d_{i}", j + 1));
            }
        }
    }
    Ok(())
}

/// `∂∘∂ = 0` on a random chain of degree `n` and `⟨∂f|g⟩ = ⟨f|dg⟩`, also face by face.
pub fn boundary_identities<R: Ring, G: Rng>(c: &YbComplex, ring: &R, n: usize, rng: &mut G) -> Result<(), String> {
    let e = |e: yb_core::cochain::CochainError| e.to_string();
    let f = Chain::from_table(c.random(ring, n, rng));
    let g = c.random(ring, n - 1, rng);
    let bf = c.boundary(&f).map_err(e)?;
    if n >= 2 && !c.boundary(&bf).map_err(e)?.is_zero() {
        return Err(format!("degree {n}: ∂∘∂ ≠ 0"));
    }
    if c.pairing(&bf, &g).map_err(e)? != c.pairing(&f, &c.coboundary(&g).map_err(e)?).map_err(e)? {
        return Err(format!("degree {n}: ⟨∂f|g⟩ ≠ ⟨f|dg⟩"));
    }
    for i in 1..=n {
        let lhs = c.pairing(&c.partial_boundary(&f, i).map_err(e)?, &g).map_err(e)?;
        let rhs = c.pairing(&f, &c.partial_coboundary(&g, i - 1).map_err(e)?).map_err(e)?;
        if lhs != rhs {
            return Err(format!("degree {n}: ∂^{i} is not dual to d_{}", i - 1));
        }
    }
    Ok(())
}
