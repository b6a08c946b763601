//! Named racks, a sample of small racks for property tests, golden `c_Q`
//! matrices and the parametrised deformation families.
//!
//! Data files live in the workspace `fixtures/` directory and are embedded
//! at build time, so the library and the CLI see the same bytes.

use std::collections::BTreeMap;

use crate::algebra::Ring;
use crate::cochain::{Cochain, CochainError};
use crate::rack::{Permutation, RackTable};

const DIHEDRAL3_RACK: &str = include_str!("../../../fixtures/dihedral3.rack");
const DIHEDRAL4_RACK: &str = include_str!("../../../fixtures/dihedral4.rack");
const QUANDLE3_RACK: &str = include_str!("../../../fixtures/quandle3.rack");
const TRIVIAL4_RACK: &str = include_str!("../../../fixtures/trivial4.rack");

const DIHEDRAL3_CQ: &str = include_str!("../../../fixtures/golden/dihedral3.cq");
const QUANDLE3_CQ: &str = include_str!("../../../fixtures/golden/quandle3.cq");
const DIHEDRAL4_CQ: &str = include_str!("../../../fixtures/golden/dihedral4.cq");

const QUANDLE3_F: &str = include_str!("../../../fixtures/families/quandle3-f.tmpl");
const DIHEDRAL4_F: &str = include_str!("../../../fixtures/families/dihedral4-f.tmpl");
const DIHEDRAL4_G: &str = include_str!("../../../fixtures/families/dihedral4-g.tmpl");

pub const FIXTURE_NAMES: [&str; 4] = ["dihedral3", "quandle3", "dihedral4", "trivial4"];

fn cycles(k: usize, cs: &[&[usize]]) -> Permutation {
    Permutation::from_cycles(k, cs).expect("valid cycle notation")
}

/// Transpositions of `S_3`, in the order `(12), (13), (23)`.
pub fn dihedral3() -> RackTable {
    RackTable::conjugation_rack(&[cycles(3, &[&[1, 2]]), cycles(3, &[&[1, 3]]), cycles(3, &[&[2, 3]])])
        .expect("closed under conjugation")
}

/// `(13), (24), (12)(34), (14)(23)` in `S_4`.
pub fn dihedral4() -> RackTable {
    RackTable::conjugation_rack(&[
        cycles(4, &[&[1, 3]]),
        cycles(4, &[&[2, 4]]),
        cycles(4, &[&[1, 2], &[3, 4]]),
        cycles(4, &[&[1, 4], &[2, 3]]),
    ])
    .expect("closed under conjugation")
}

/// `a ∗ c = b`, `b ∗ c = a`, everything else fixed.
pub fn quandle3() -> RackTable {
    RackTable::validate(&[vec![0, 0, 1], vec![1, 1, 0], vec![2, 2, 2]], true).expect("a quandle")
}

pub fn trivial(n: usize) -> RackTable {
    RackTable::trivial(n)
}

/// A named fixture rack, built in code.
pub fn named(name: &str) -> Option<RackTable> {
    Some(match name {
        "dihedral3" => dihedral3(),
        "quandle3" => quandle3(),
        "dihedral4" => dihedral4(),
        "trivial4" => trivial(4),
        _ => return None,
    })
}

/// The shipped rack file for a fixture name.
pub fn rack_file_text(name: &str) -> Option<&'static str> {
    Some(match name {
        "dihedral3" => DIHEDRAL3_RACK,
        "quandle3" => QUANDLE3_RACK,
        "dihedral4" => DIHEDRAL4_RACK,
        "trivial4" => TRIVIAL4_RACK,
        _ => return None,
    })
}

/// Golden `c_Q` matrix dump (rationals, column convention).
pub fn golden_cq_text(name: &str) -> Option<&'static str> {
    Some(match name {
        "dihedral3" => DIHEDRAL3_CQ,
        "quandle3" => QUANDLE3_CQ,
        "dihedral4" => DIHEDRAL4_CQ,
        _ => return None,
    })
}

pub fn golden_names() -> [&'static str; 3] {
    ["dihedral3", "quandle3", "dihedral4"]
}

fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> RackTable {
    let rows: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| f(x, y)).collect()).collect();
    RackTable::validate(&rows, false).expect("sample rack satisfies the axioms")
}

/// `x ∗ y = σ(x)`; a rack, and a quandle only for `σ = id`.
pub fn permutation_rack(sigma: &Permutation) -> RackTable {
    from_fn(sigma.len(), |x, _| sigma.apply(x))
}

/// Alexander quandle on `Z/n`: `x ∗ y = t x + (1 − t) y`.
pub fn alexander(n: usize, t: usize) -> RackTable {
    from_fn(n, |x, y| (t * x + (n + 1 - t % n) * y) % n)
}

/// Dihedral quandle on `Z/n`: `x ∗ y = 2y − x`.
pub fn dihedral_mod(n: usize) -> RackTable {
    from_fn(n, |x, y| (2 * y + n - x) % n)
}

/// Twenty-odd racks with at most five elements, covering quandles and
/// non-quandle racks, faithful and non-faithful ones.
pub fn sample_racks() -> Vec<(String, RackTable)> {
    let mut out: Vec<(String, RackTable)> = Vec::new();
    for n in 1..=5 {
        out.push((format!("trivial{n}"), trivial(n)));
    }
    for n in 3..=5 {
        out.push((format!("dihedral-mod{n}"), dihedral_mod(n)));
    }
    out.push(("alexander5-t2".into(), alexander(5, 2)));
    out.push(("alexander5-t3".into(), alexander(5, 3)));
    for (name, k, cs) in [
        ("perm2-(12)", 2, vec![vec![1, 2]]),
        ("perm3-(12)", 3, vec![vec![1, 2]]),
        ("perm3-(123)", 3, vec![vec![1, 2, 3]]),
        ("perm4-(1234)", 4, vec![vec![1, 2, 3, 4]]),
        ("perm4-(12)(34)", 4, vec![vec![1, 2], vec![3, 4]]),
        ("perm5-(12345)", 5, vec![vec![1, 2, 3, 4, 5]]),
    ] {
        let cs: Vec<&[usize]> = cs.iter().map(|c| c.as_slice()).collect();
        out.push((name.into(), permutation_rack(&cycles(k, &cs))));
    }
    out.push(("dihedral3".into(), dihedral3()));
    out.push(("quandle3".into(), quandle3()));
    out.push(("dihedral4".into(), dihedral4()));
    // 3-cycles of A_4 in one conjugacy class
    let tetra = RackTable::conjugation_rack(&[
        cycles(4, &[&[1, 2, 3]]),
        cycles(4, &[&[1, 4, 2]]),
        cycles(4, &[&[1, 3, 4]]),
        cycles(4, &[&[2, 4, 3]]),
    ])
    .expect("closed under conjugation");
    out.push(("tetrahedral".into(), tetra));
    // transpositions of S_3 together with a disjoint commuting one
    let union = RackTable::conjugation_rack(&[
        cycles(5, &[&[1, 2]]),
        cycles(5, &[&[1, 3]]),
        cycles(5, &[&[2, 3]]),
        cycles(5, &[&[4, 5]]),
    ])
    .expect("closed under conjugation");
    out.push(("dihedral3+point".into(), union));
    out
}

/// How a family template matrix is laid out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// Row index is the output basis vector, as for `c_Q` itself.
    RowsAreOutputs,
    /// Row index is the input basis vector.
    RowsAreInputs,
}

/// A matrix family template: each nonzero cell holds a parameter name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyTemplate {
    pub name: String,
    pub rack: String,
    pub side: usize,
    pub params: Vec<String>,
    /// `(row, col, parameter index)`.
    pub cells: Vec<(usize, usize, usize)>,
}

impl FamilyTemplate {
    /// Parse `rack <name>` followed by one whitespace-separated row per line,
    /// `.` for a zero cell.
    pub fn parse(name: &str, text: &str) -> Result<Self, CochainError> {
        let bad = |ln: usize, what: String| CochainError::Parse(format!("{name} line {ln}: {what}"));
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (ln, head) = lines.next().ok_or_else(|| bad(1, "empty template".into()))?;
        let rack = head
            .strip_prefix("rack ")
            .ok_or_else(|| bad(ln, "expected `rack <name>`".into()))?
            .trim()
            .to_string();
        let mut params: Vec<String> = Vec::new();
        let mut cells = Vec::new();
        let mut side = None;
        let mut row = 0;
        for (ln, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if *side.get_or_insert(toks.len()) != toks.len() {
                return Err(bad(ln, format!("row has {} cells", toks.len())));
            }
            for (col, tok) in toks.into_iter().enumerate() {
                if tok == "." {
                    continue;
                }
                let p = match params.iter().position(|p| p == tok) {
                    Some(p) => p,
                    None => {
                        params.push(tok.to_string());
                        params.len() - 1
                    }
                };
                cells.push((row, col, p));
            }
            row += 1;
        }
        let side = side.unwrap_or(0);
        if row != side {
            return Err(bad(0, format!("{row} rows but {side} columns")));
        }
        Ok(Self {
            name: name.to_string(),
            rack,
            side,
            params,
            cells,
        })
    }

    /// Degree-2 cochain over a rack of size `q` from parameter values.
    pub fn instantiate<R: Ring>(
        &self,
        ring: &R,
        q: usize,
        values: &[R::Elem],
        orientation: Orientation,
    ) -> Result<Cochain<R>, CochainError> {
        if q * q != self.side {
            return Err(CochainError::RackSize {
                expected: self.side,
                found: q * q,
            });
        }
        if values.len() != self.params.len() {
            return Err(CochainError::Parse(format!(
                "{} expects {} parameters, got {}",
                self.name,
                self.params.len(),
                values.len()
            )));
        }
        let mut flat = vec![ring.zero(); self.side * self.side];
        for &(row, col, p) in &self.cells {
            // cochain entry f[x][y] sits at flat index x·side + y
            let (x, y) = match orientation {
                Orientation::RowsAreOutputs => (col, row),
                Orientation::RowsAreInputs => (row, col),
            };
            ring.add_assign(&mut flat[x * self.side + y], &values[p]);
        }
        Cochain::from_values(ring, q, 2, flat)
    }

    pub fn param_index(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|p| p == name)
    }

    /// Names that differ only in their trailing primes, e.g. `l5'` and `l5''`.
    pub fn primed_pairs(&self) -> Vec<(usize, usize)> {
        let mut by_stem: BTreeMap<&str, Vec<(usize, usize)>> = BTreeMap::new();
        for (i, p) in self.params.iter().enumerate() {
            let stem = p.trim_end_matches('\'');
            let primes = p.len() - stem.len();
            if primes > 0 {
                by_stem.entry(stem).or_default().push((primes, i));
            }
        }
        by_stem
            .into_values()
            .filter_map(|mut v| {
                v.sort();
                match v.as_slice() {
                    [(1, a), (2, b)] => Some((*a, *b)),
                    _ => None,
                }
            })
            .collect()
    }

    /// Parse `name = value` lines, with `#` comments; every parameter must
    /// be assigned exactly once.
    pub fn parse_params<R: Ring>(&self, ring: &R, text: &str) -> Result<Vec<R::Elem>, CochainError> {
        let mut out: Vec<Option<R::Elem>> = vec![None; self.params.len()];
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |what: String| CochainError::Parse(format!("parameters line {}: {what}", i + 1));
            let (k, v) = line.split_once('=').ok_or_else(|| bad("expected `name = value`".into()))?;
            let p = self
                .param_index(k.trim())
                .ok_or_else(|| bad(format!("unknown parameter `{}`", k.trim())))?;
            if out[p].is_some() {
                return Err(bad(format!("`{}` assigned twice", k.trim())));
            }
            out[p] = Some(ring.parse_elem(v.trim()).map_err(|e| bad(e.to_string()))?);
        }
        out.into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| CochainError::Parse(format!("parameter `{}` not assigned", self.params[i]))))
            .collect()
    }
}

pub fn family_names() -> [&'static str; 3] {
    ["quandle3-f", "dihedral4-f", "dihedral4-g"]
}

pub fn family(name: &str) -> Option<FamilyTemplate> {
    let text = match name {
        "quandle3-f" => QUANDLE3_F,
        "dihedral4-f" => DIHEDRAL4_F,
        "dihedral4-g" => DIHEDRAL4_G,
        _ => return None,
    };
    Some(FamilyTemplate::parse(name, text).expect("shipped templates parse"))
}
