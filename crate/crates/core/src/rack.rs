//! Finite racks and quandles.
//!
//! Elements are `0..n` in the order the table was given; `table[x][y]` is
//! `x ∗ y`, written `x^y` in exponent notation. Permutations act on the
//! right, so `p.then(q)` applies `p` first.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const INNER_GROUP_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Axiom {
    Q1,
    Q2,
    Q3,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RackError {
    #[error("table must be a non-empty square array (row {row} has length {len}, expected {size})")]
    Shape { row: usize, len: usize, size: usize },
    #[error("entry table[{row}][{col}] = {value} is out of range 0..{size}")]
    OutOfRange {
        row: usize,
        col: usize,
        value: usize,
        size: usize,
    },
    #[error("axiom {axiom} fails at {witness:?}")]
    Axiom { axiom: Axiom, witness: Vec<usize> },
    #[error("{a}^{b} is not in the generator list")]
    NotClosed { a: usize, b: usize },
    #[error("inner group exceeds {0} elements")]
    InnerGroupTooLarge(usize),
    #[error("map is not a rack homomorphism at ({x}, {y})")]
    NotHomomorphism { x: usize, y: usize },
    #[error("rack file: {0}")]
    File(String),
}

impl RackError {
    /// First violated axiom and witness, if this is an axiom failure.
    pub fn axiom(&self) -> Option<(Axiom, &[usize])> {
        match self {
            RackError::Axiom { axiom, witness } => Some((*axiom, witness)),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Self { images })
    }

    /// Product of cycles on `{1..k}`, written with 1-based points.
    pub fn from_cycles(k: usize, cycles: &[&[usize]]) -> Option<Self> {
        let mut images: Vec<usize> = (0..k).collect();
        for cycle in cycles {
            let mut step: Vec<usize> = (0..k).collect();
            for (i, &a) in cycle.iter().enumerate() {
                let b = cycle[(i + 1) % cycle.len()];
                if a == 0 || b == 0 || a > k || b > k {
                    return None;
                }
                step[a - 1] = b - 1;
            }
            images = images.iter().map(|&x| step[x]).collect();
        }
        Self::from_images(images)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Self) -> Self {
        Self {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Self { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RackTable {
    size: usize,
    table: Vec<usize>,
    quandle: bool,
}

impl RackTable {
    /// Check (Q2), (Q3) and, if requested, (Q1); the returned table records
    /// whether (Q1) holds.
    pub fn validate(table: &[Vec<usize>], require_quandle: bool) -> Result<Self, RackError> {
        let n = table.len();
        for (row, r) in table.iter().enumerate() {
            if r.len() != n {
                return Err(RackError::Shape {
                    row,
                    len: r.len(),
                    size: n,
                });
            }
            for (col, &value) in r.iter().enumerate() {
                if value >= n {
                    return Err(RackError::OutOfRange {
                        row,
                        col,
                        value,
                        size: n,
                    });
                }
            }
        }
        if n == 0 {
            return Err(RackError::Shape {
                row: 0,
                len: 0,
                size: 0,
            });
        }
        let op = |a: usize, b: usize| table[a][b];
        for y in 0..n {
            let mut first = vec![None; n];
            for x in 0..n {
                if let Some(x0) = first[op(x, y)].replace(x) {
                    return Err(RackError::Axiom {
                        axiom: Axiom::Q2,
                        witness: vec![y, x0, x],
                    });
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if op(op(a, b), c) != op(op(a, c), op(b, c)) {
                        return Err(RackError::Axiom {
                            axiom: Axiom::Q3,
                            witness: vec![a, b, c],
                        });
                    }
                }
            }
        }
        let idempotent = (0..n).find(|&a| op(a, a) != a);
        if let (true, Some(a)) = (require_quandle, idempotent) {
            return Err(RackError::Axiom {
                axiom: Axiom::Q1,
                witness: vec![a],
            });
        }
        Ok(Self {
            size: n,
            table: table.iter().flatten().copied().collect(),
            quandle: idempotent.is_none(),
        })
    }

    pub fn trivial(n: usize) -> Self {
        Self::from_fn(n, |x, _| x)
    }

    fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let rows: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| f(x, y)).collect()).collect();
        Self::validate(&rows, false).expect("construction yields a rack")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_quandle(&self) -> bool {
        self.quandle
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    /// Right translation `ρ(a): x ↦ x ∗ a`.
    pub fn rho(&self, a: usize) -> Permutation {
        Permutation {
            images: (0..self.size).map(|x| self.op(x, a)).collect(),
        }
    }

    /// `result[x][y] = z` with `z ∗ y = x`.
    pub fn inverse_op(&self) -> Vec<Vec<usize>> {
        let n = self.size;
        let mut inv = vec![vec![0; n]; n];
        for y in 0..n {
            for z in 0..n {
                inv[self.op(z, y)][y] = z;
            }
        }
        inv
    }

    pub fn inner_group(&self) -> Result<InnerGroup, RackError> {
        self.inner_group_capped(INNER_GROUP_CAP)
    }

    pub fn inner_group_capped(&self, cap: usize) -> Result<InnerGroup, RackError> {
        let gens: Vec<Permutation> = (0..self.size).map(|a| self.rho(a)).collect();
        let id = Permutation::identity(self.size);
        let mut index = HashMap::from([(id.clone(), 0usize)]);
        let mut elements = vec![id];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &gens {
                let p = elements[i].then(g);
                if !index.contains_key(&p) {
                    if elements.len() >= cap {
                        return Err(RackError::InnerGroupTooLarge(cap));
                    }
                    index.insert(p.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(p);
                }
            }
        }
        let generators = gens.iter().map(|g| index[g]).collect();
        Ok(InnerGroup { elements, generators })
    }

    pub fn behavior_partition(&self) -> BehaviorPartition {
        let mut class_of = vec![0; self.size];
        let mut reps: Vec<Permutation> = Vec::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..self.size {
            let r = self.rho(x);
            match reps.iter().position(|p| *p == r) {
                Some(c) => {
                    class_of[x] = c;
                    classes[c].push(x);
                }
                None => {
                    class_of[x] = reps.len();
                    reps.push(r);
                    classes.push(vec![x]);
                }
            }
        }
        BehaviorPartition { class_of, classes }
    }

    /// Rack of the listed permutations under `x ∗ y = y⁻¹ x y`.
    pub fn conjugation_rack(generators: &[Permutation]) -> Result<Self, RackError> {
        let index: HashMap<&Permutation, usize> = generators.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut rows = Vec::with_capacity(generators.len());
        for (a, x) in generators.iter().enumerate() {
            let mut row = Vec::with_capacity(generators.len());
            for (b, y) in generators.iter().enumerate() {
                let c = y.inverse().then(x).then(y);
                row.push(*index.get(&c).ok_or(RackError::NotClosed { a, b })?);
            }
            rows.push(row);
        }
        Self::validate(&rows, true)
    }

    /// Orbits of the inner group, as a trivial rack plus the quotient map.
    pub fn orbit_quotient(&self) -> (RackTable, RackMorphism) {
        let n = self.size;
        let mut orbit = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if orbit[start] != usize::MAX {
                continue;
            }
            orbit[start] = count;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for a in 0..n {
                    let y = self.op(x, a);
                    if orbit[y] == usize::MAX {
                        orbit[y] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        let quotient = RackTable::trivial(count);
        let proj = RackMorphism::new(self, &quotient, orbit).expect("orbit map is a homomorphism");
        (quotient, proj)
    }

    /// `Q × {0..k}` with `(x,i) ∗ (y,j) = (x ∗ y, i)`; `(x,i)` is encoded as `x·k + i`.
    pub fn trivial_extension(&self, k: usize) -> (RackTable, RackMorphism) {
        assert!(k >= 1, "extension factor must be positive");
        let ext = Self::from_fn(self.size * k, |a, b| self.op(a / k, b / k) * k + a % k);
        let proj = RackMorphism::new(&ext, self, (0..self.size * k).map(|a| a / k).collect())
            .expect("projection is a homomorphism");
        (ext, proj)
    }

    pub fn to_file(&self) -> RackFile {
        RackFile {
            size: self.size,
            table: self.rows(),
            quandle: self.quandle,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("plain data")
    }

    pub fn from_json(text: &str) -> Result<Self, RackError> {
        let file: RackFile = serde_json::from_str(text).map_err(|e| RackError::File(e.to_string()))?;
        file.into_rack()
    }

    pub fn read(path: &Path) -> Result<Self, RackError> {
        let text = std::fs::read_to_string(path).map_err(|e| RackError::File(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

/// On-disk shape of a rack.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RackFile {
    pub size: usize,
    pub table: Vec<Vec<usize>>,
    pub quandle: bool,
}

impl RackFile {
    pub fn into_rack(self) -> Result<RackTable, RackError> {
        if self.table.len() != self.size {
            return Err(RackError::File(format!(
                "size {} but table has {} rows",
                self.size,
                self.table.len()
            )));
        }
        RackTable::validate(&self.table, self.quandle)
    }
}

#[derive(Clone, Debug)]
pub struct InnerGroup {
    elements: Vec<Permutation>,
    generators: Vec<usize>,
}

impl InnerGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    /// `ρ(a)` as a group element.
    pub fn rho(&self, a: usize) -> &Permutation {
        &self.elements[self.generators[a]]
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.contains(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BehaviorPartition {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl BehaviorPartition {
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn class_index(&self) -> &[usize] {
        &self.class_of
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    #[inline]
    pub fn equivalent(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    pub fn is_faithful(&self) -> bool {
        self.classes.len() == self.class_of.len()
    }

    /// Number of quasi-diagonal pairs `(x, y)` with `x ≡ y`.
    pub fn quasidiagonal_pairs(&self) -> usize {
        self.classes.iter().map(|c| c.len() * c.len()).sum()
    }
}

/// A map of racks checked to satisfy `φ(x ∗ y) = φ(x) ∗ φ(y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RackMorphism {
    map: Vec<usize>,
}

impl RackMorphism {
    pub fn new(source: &RackTable, target: &RackTable, map: Vec<usize>) -> Result<Self, RackError> {
        if map.len() != source.size() || map.iter().any(|&v| v >= target.size()) {
            return Err(RackError::File("map does not fit source and target".into()));
        }
        for x in 0..source.size() {
            for y in 0..source.size() {
                if map[source.op(x, y)] != target.op(map[x], map[y]) {
                    return Err(RackError::NotHomomorphism { x, y });
                }
            }
        }
        Ok(Self { map })
    }

    pub fn identity(r: &RackTable) -> Self {
        Self {
            map: (0..r.size()).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }
}
