//! Plain-text matrix format.
//!
//! ```text
//! Fp[h]/h^N 3 4        optional ring header
//! 9 9 3                rows cols modulus  (modulus 0 = rationals)
//! 0 0 1+h              row col value, one line per nonzero, 0-based
//! ```

use super::{AlgebraError, Matrix, Ring, RingSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixDump {
    pub ring: Option<RingSpec>,
    pub rows: usize,
    pub cols: usize,
    pub modulus: u64,
    pub entries: Vec<(usize, usize, String)>,
}

impl MatrixDump {
    pub fn parse(text: &str) -> Result<Self, AlgebraError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (mut ln, mut line) = lines.next().ok_or_else(|| AlgebraError::Parse("empty matrix dump".into()))?;
        let mut ring = None;
        if !line.starts_with(|c: char| c.is_ascii_digit()) {
            ring = Some(RingSpec::parse_header(line)?);
            (ln, line) = lines
                .next()
                .ok_or_else(|| AlgebraError::Parse("missing dimension line".into()))?;
        }
        let bad = |ln: usize, what: &str| AlgebraError::Parse(format!("line {ln}: {what}"));
        let head: Vec<&str> = line.split_whitespace().collect();
        if head.len() != 3 {
            return Err(bad(ln, "expected `rows cols modulus`"));
        }
        let num = |s: &str| s.parse::<u64>().map_err(|_| bad(ln, "invalid integer"));
        let rows = num(head[0])? as usize;
        let cols = num(head[1])? as usize;
        let modulus = num(head[2])?;
        if let Some(r) = ring {
            if r.matrix_modulus() != modulus {
                return Err(bad(ln, "modulus does not match ring header"));
            }
        }
        let mut entries = Vec::new();
        for (ln, line) in lines {
            let mut it = line.splitn(3, char::is_whitespace);
            let (Some(i), Some(j), Some(v)) = (it.next(), it.next(), it.next()) else {
                return Err(bad(ln, "expected `row col value`"));
            };
            let i: usize = i.parse().map_err(|_| bad(ln, "invalid row"))?;
            let j: usize = j.parse().map_err(|_| bad(ln, "invalid column"))?;
            if i >= rows || j >= cols {
                return Err(bad(ln, "index out of range"));
            }
            entries.push((i, j, v.trim().to_string()));
        }
        Ok(Self {
            ring,
            rows,
            cols,
            modulus,
            entries,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if let Some(r) = &self.ring {
            s.push_str(&r.header());
            s.push('\n');
        }
        s.push_str(&format!("{} {} {}\n", self.rows, self.cols, self.modulus));
        for (i, j, v) in &self.entries {
            s.push_str(&format!("{i} {j} {v}\n"));
        }
        s
    }
}

pub fn write_matrix<R: Ring>(m: &Matrix<R>) -> String {
    let spec = m.ring().spec();
    MatrixDump {
        ring: Some(spec),
        rows: m.rows(),
        cols: m.cols(),
        modulus: spec.matrix_modulus(),
        entries: m
            .nonzeros()
            .map(|(i, j, v)| (i, j, m.ring().format_elem(v)))
            .collect(),
    }
    .to_text()
}

/// Parse a dump into a matrix over `ring`, rejecting a mismatched header.
pub fn read_matrix<R: Ring>(ring: &R, text: &str) -> Result<Matrix<R>, AlgebraError> {
    let dump = MatrixDump::parse(text)?;
    let spec = ring.spec();
    if dump.ring.is_some_and(|r| r != spec) || dump.modulus != spec.matrix_modulus() {
        return Err(AlgebraError::Parse(format!(
            "matrix is over {}, expected {spec}",
            dump.ring.map_or_else(|| format!("modulus {}", dump.modulus), |r| r.to_string())
        )));
    }
    let mut m = Matrix::zeros(ring, dump.rows, dump.cols);
    for (i, j, v) in &dump.entries {
        m.set(*i, *j, ring.parse_elem(v)?);
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PowerSeriesRing, PrimeField, Rationals};

    #[test]
    fn round_trip() {
        let r = PowerSeriesRing::new(3, 4).unwrap();
        let mut m = Matrix::identity(&r, 3);
        m.set(0, 2, r.from_coeffs(&[0, 1, 2]));
        let text = write_matrix(&m);
        assert!(text.starts_with("Fp[h]/h^N 3 4\n3 3 3\n"));
        assert_eq!(read_matrix(&r, &text).unwrap(), m);
        assert!(read_matrix(&PrimeField::new(3).unwrap(), &text).is_err());
    }

    #[test]
    fn rational_values() {
        let q = Rationals;
        let text = "2 2 0\n0 1 -3/4\n1 0 5\n";
        let m = read_matrix(&q, text).unwrap();
        assert_eq!(write_matrix(&m), "Q\n2 2 0\n0 1 -3/4\n1 0 5/1\n");
        assert!(MatrixDump::parse("2 2 0\n2 0 1\n").is_err());
    }
}
