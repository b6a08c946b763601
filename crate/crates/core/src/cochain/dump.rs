//! Text dumps of cochains and chains.
//!
//! ```text
//! degree 2 ring Fp 3       ("chain degree 2 ring …" for chains)
//! 0 1 1 2 2                x1..xn y1..yn value, one line per nonzero
//! ```

use crate::algebra::{Ring, RingSpec};
use crate::homology::Chain;

use super::{Cochain, CochainError};

fn write(tag: &str, f: &Cochain<impl Ring>) -> String {
    let mut s = format!("{tag}degree {} ring {}\n", f.degree(), f.ring().spec().header());
    for (idx, v) in f.nonzeros() {
        let (x, y) = f.decode(idx);
        for a in x.iter().chain(&y) {
            s.push_str(&a.to_string());
            s.push(' ');
        }
        s.push_str(&f.ring().format_elem(v));
        s.push('\n');
    }
    s
}

fn read<R: Ring>(tag: &str, ring: &R, q: usize, text: &str) -> Result<Cochain<R>, CochainError> {
    let bad = |ln: usize, what: &str| CochainError::Parse(format!("line {ln}: {what}"));
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (ln, head) = lines.next().ok_or_else(|| bad(1, "empty dump"))?;
    let rest = head.strip_prefix(tag).ok_or_else(|| bad(ln, "unexpected header tag"))?;
    let rest = rest.strip_prefix("degree ").ok_or_else(|| bad(ln, "expected `degree n ring …`"))?;
    let (n, ring_header) = rest
        .split_once(" ring ")
        .ok_or_else(|| bad(ln, "expected `degree n ring …`"))?;
    let n: usize = n.trim().parse().map_err(|_| bad(ln, "invalid degree"))?;
    let spec = RingSpec::parse_header(ring_header.trim()).map_err(|e| bad(ln, &e.to_string()))?;
    if spec != ring.spec() {
        return Err(bad(ln, &format!("dump is over {spec}, expected {}", ring.spec())));
    }
    let mut f = Cochain::zero(ring, q, n);
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() < 2 * n + 1 {
            return Err(bad(ln, "too few fields"));
        }
        let idx: Vec<usize> = toks[..2 * n]
            .iter()
            .map(|t| t.parse::<usize>().ok().filter(|&v| v < q))
            .collect::<Option<_>>()
            .ok_or_else(|| bad(ln, "invalid tuple coordinate"))?;
        let v = ring
            .parse_elem(&toks[2 * n..].join(" "))
            .map_err(|e| bad(ln, &e.to_string()))?;
        f.set(&idx[..n], &idx[n..], v);
    }
    Ok(f)
}

pub fn write_cochain<R: Ring>(f: &Cochain<R>) -> String {
    write("", f)
}

pub fn read_cochain<R: Ring>(ring: &R, q: usize, text: &str) -> Result<Cochain<R>, CochainError> {
    read("", ring, q, text)
}

pub fn write_chain<R: Ring>(f: &Chain<R>) -> String {
    write("chain ", f.table())
}

pub fn read_chain<R: Ring>(ring: &R, q: usize, text: &str) -> Result<Chain<R>, CochainError> {
    read("chain ", ring, q, text).map(Chain::from_table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PowerSeriesRing, PrimeField};

    #[test]
    fn cochain_round_trip() {
        let r = PowerSeriesRing::new(2, 3).unwrap();
        let mut f = Cochain::zero(&r, 3, 2);
        f.set(&[0, 1], &[2, 2], r.from_coeffs(&[0, 1, 1]));
        f.set(&[1, 1], &[1, 1], r.one());
        let text = write_cochain(&f);
        assert!(text.starts_with("degree 2 ring Fp[h]/h^N 2 3\n"));
        assert_eq!(read_cochain(&r, 3, &text).unwrap(), f);
        assert!(read_chain(&r, 3, &text).is_err());
    }

    #[test]
    fn chain_round_trip() {
        let f3 = PrimeField::new(3).unwrap();
        let c = Chain::from_table(Cochain::identity(&f3, 2, 1));
        let text = write_chain(&c);
        assert!(text.starts_with("chain degree 1 ring Fp 3\n"));
        assert_eq!(read_chain(&f3, 2, &text).unwrap(), c);
    }
}
