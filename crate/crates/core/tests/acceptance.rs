//! End-to-end acceptance criteria. Each test prints one summary line
//! (written straight to stderr so it survives output capture) and fails on
//! either a wrong result or an exceeded time bound.

mod common;

use std::io::Write as _;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use yb_core::algebra::{read_matrix, LocalRing, PadicRing, PowerSeriesRing, PrimeField, Rationals};
use yb_core::cochain::{naturality, ComplexKind, YbComplex};
use yb_core::deformation::{generic_values, perturbed_input, quasidiagonalize, reconjugate, rigidity_check, verify_fixture, verify_values};
use yb_core::fixtures;
use yb_core::homotopy::HomotopyKit;
use yb_core::operator::YBOperator;

const SAMPLES: usize = 100;

fn report(id: u32, title: &str, start: Instant, bound: Duration, failures: &[String], detail: &str) {
    let elapsed = start.elapsed();
    let ok = failures.is_empty() && elapsed < bound;
    let line = format!(
        "criterion {id:>2} {}: {title} ({:.2} s, bound {} s) {detail}\n",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        bound.as_secs()
    );
    std::io::stderr().write_all(line.as_bytes()).unwrap();
    assert!(failures.is_empty(), "criterion {id}: {} failures, first: {}", failures.len(), failures[0]);
    assert!(elapsed < bound, "criterion {id}: {elapsed:?} exceeds {bound:?}");
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

#[test]
fn criterion_01_golden_c_q_matrices() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for name in ["dihedral3", "dihedral4", "quandle3"] {
        let path = format!("{}/../../fixtures/golden/{name}.cq", env!("CARGO_MANIFEST_DIR"));
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, fixtures::golden_cq_text(name).unwrap());
        let golden = read_matrix(&Rationals, &text).unwrap();
        let computed = YBOperator::from_rack(&fixtures::named(name).unwrap(), &Rationals);
        if let Some(d) = golden.first_difference(computed.matrix()) {
            failures.push(format!("{name}: first difference at {d:?}"));
        }
    }
    report(1, "c_Q equals the golden permutation matrices", start, secs(1), &failures, "");
}

#[test]
fn criterion_02_quandle3_over_f2() {
    let start = Instant::now();
    let c = YbComplex::new(&fixtures::quandle3());
    let dim = c.cohomology_dim(&PrimeField::new(2).unwrap(), ComplexKind::YangBaxter, 2).unwrap();
    let failures: Vec<String> = if dim == 9 { vec![] } else { vec![format!("dimension {dim}")] };
    report(2, "dim H²_YB(quandle-3; F2) = 9", start, secs(10), &failures, &format!("got {dim}"));
}

#[test]
fn criterion_03_dihedral4() {
    let c = YbComplex::new(&fixtures::dihedral4());
    for (p, want) in [(2, 20), (3, 16), (5, 16)] {
        let start = Instant::now();
        let dim = c.cohomology_dim(&PrimeField::new(p).unwrap(), ComplexKind::YangBaxter, 2).unwrap();
        let failures: Vec<String> = if dim == want { vec![] } else { vec![format!("dimension {dim}")] };
        report(3, &format!("dim H²_YB(dihedral-4; F{p}) = {want}"), start, secs(60), &failures, &format!("got {dim}"));
    }
}

#[test]
fn criterion_04_dihedral3_rigidity() {
    let start = Instant::now();
    let rack = fixtures::dihedral3();
    let c = YbComplex::new(&rack);
    let mut failures = Vec::new();
    let mut dims = Vec::new();
    for p in [2, 3, 5] {
        let f = PrimeField::new(p).unwrap();
        let v = rigidity_check(&rack, &f).unwrap();
        let rack_dim = c.rack_cohomology_dim(&f, 2).unwrap();
        dims.push(format!("F{p}: {}/{rack_dim}", v.dimension));
        if !v.rigid || v.dimension != 1 {
            failures.push(format!("F{p}: {v:?}"));
        }
        if rack_dim != 1 {
            failures.push(format!("F{p}: dim H²_R = {rack_dim}"));
        }
    }
    report(4, "dihedral-3 is rigid and dim H²_R = 1", start, secs(10), &failures, &format!("(YB/rack: {})", dims.join(", ")));
}

#[test]
fn criterion_05_quasidiagonal_subcomplex_has_the_same_h2() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut dims = Vec::new();
    for name in fixtures::FIXTURE_NAMES {
        let c = YbComplex::new(&fixtures::named(name).unwrap());
        for p in common::FIELDS {
            let f = PrimeField::new(p).unwrap();
            let yb = c.cohomology_dim(&f, ComplexKind::YangBaxter, 2).unwrap();
            let qd = c.cohomology_dim(&f, ComplexKind::QuasiDiagonal, 2).unwrap();
            dims.push(format!("{name}/F{p} {qd}"));
            if yb != qd {
                failures.push(format!("{name} F{p}: quasi-diagonal {qd}, full {yb}"));
            }
        }
    }
    report(5, "dim H²(C_Δ) = dim H²(C_YB)", start, secs(120), &failures, &format!("({})", dims.join(", ")));
}

#[test]
fn criterion_06_deformation_families() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(600);
    let mut failures = Vec::new();

    let r = PowerSeriesRing::new(5, 4).unwrap();
    for i in 0..SAMPLES {
        let rep = verify_fixture("quandle3-f", &r, None, &mut rng).unwrap();
        if !rep.ybe.holds {
            failures.push(format!("quandle3-f draw {i}: {:?}", rep.params));
        }
    }

    let t = fixtures::family("dihedral4-f").unwrap();
    let rack = fixtures::dihedral4();
    for p in common::FIELDS {
        let r = PowerSeriesRing::new(p, 4).unwrap();
        for symmetric in [true, false] {
            for _ in 0..20 {
                let vals = generic_values(&t, &r, symmetric, &mut rng);
                let rep = verify_values(&t, &rack, &r, &vals).unwrap();
                if rep.ybe.holds != symmetric || !rep.holds_mod[1] {
                    failures.push(format!("dihedral4-f F{p} symmetric = {symmetric}: {:?}", rep.params));
                }
            }
        }
    }

    let t = fixtures::family("dihedral4-g").unwrap();
    let r = PowerSeriesRing::new(2, 3).unwrap();
    let check = |vals: Vec<_>, failures: &mut Vec<String>| {
        let rep = verify_values(&t, &rack, &r, &vals).unwrap();
        let first_order_equal = t.primed_pairs().iter().all(|&(a, b)| r.digit(&vals[a], 1) == r.digit(&vals[b], 1));
        if !rep.holds_mod[1] || rep.holds_mod[2] != first_order_equal || !rep.matches_claim {
            failures.push(format!("dihedral4-g: {:?} holds_mod {:?}", rep.params, rep.holds_mod));
        }
    };
    for symmetric in [true, false] {
        for _ in 0..20 {
            check(generic_values(&t, &r, symmetric, &mut rng), &mut failures);
        }
    }
    for _ in 0..SAMPLES {
        check((0..t.params.len()).map(|_| r.random_in_ideal(&mut rng, 1)).collect(), &mut failures);
    }
    report(6, "deformation family verdicts", start, secs(60), &failures, "");
}

#[test]
fn criterion_07_homotopy_identities() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(700);
    let mut failures = Vec::new();
    let mut checked = 0;
    for name in fixtures::FIXTURE_NAMES {
        let c = YbComplex::new(&fixtures::named(name).unwrap());
        let kit = HomotopyKit::new(&c);
        for p in common::FIELDS {
            let field = PrimeField::new(p).unwrap();
            for n in 1..=3 {
                for m in 0..n {
                    for _ in 0..SAMPLES {
                        checked += 1;
                        if let Err(e) = common::homotopy_identities(&kit, &field, n, m, &mut rng) {
                            failures.push(format!("{name} F{p} {e}"));
                        }
                    }
                }
            }
        }
    }
    report(7, "homotopy identities (a)–(f)", start, secs(300), &failures, &format!("({checked} samples)"));
}

#[test]
fn criterion_08_complex_axioms() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(800);
    let mut failures = Vec::new();
    let mut checked = 0;
    for name in fixtures::FIXTURE_NAMES {
        let c = YbComplex::new(&fixtures::named(name).unwrap());
        for p in common::FIELDS {
            let field = PrimeField::new(p).unwrap();
            for n in 0..=3 {
                for _ in 0..SAMPLES {
                    checked += 1;
                    if let Err(e) = common::coboundary_identities(&c, &field, n, &mut rng) {
                        failures.push(format!("{name} F{p} {e}"));
                    }
                    if n >= 1 {
                        if let Err(e) = common::boundary_identities(&c, &field, n, &mut rng) {
                            failures.push(format!("{name} F{p} {e}"));
                        }
                    }
                }
            }
        }
    }
    report(8, "d∘d = 0, face relations, ∂∘∂ = 0, adjunction", start, secs(300), &failures, &format!("({checked} samples)"));
}

fn oracle<R: LocalRing>(ring: &R, name: &str, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let rack = fixtures::named(name).unwrap();
    let (input, _) = perturbed_input(Some(name), &rack, ring, rng).map_err(|e| e.to_string())?;
    let red = quasidiagonalize(&input).map_err(|e| e.to_string())?;
    let c = YbComplex::new(&rack);
    if !c.is_quasidiagonal(&red.output.term()) {
        return Err("off-quasi-diagonal entries remain".into());
    }
    if !red.output.check_ybe().holds {
        return Err("output is not a Yang-Baxter operator".into());
    }
    if &reconjugate(&red.output, &red.gauge.composite()).map_err(|e| e.to_string())? != input.operator().matrix() {
        return Err("re-conjugation does not reproduce the input".into());
    }
    Ok(())
}

#[test]
fn criterion_09_quasidiagonalization_round_trip() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(900);
    let mut failures = Vec::new();
    let rings = ["F2[h]/h^4", "F3[h]/h^3", "Z/2^2", "Z/3^2"];
    for i in 0..50 {
        let ring = rings[i % 4];
        let name = fixtures::FIXTURE_NAMES[(i / 4) % 4];
        let res = match i % 4 {
            0 => oracle(&PowerSeriesRing::new(2, 4).unwrap(), name, &mut rng),
            1 => oracle(&PowerSeriesRing::new(3, 3).unwrap(), name, &mut rng),
            2 => oracle(&PadicRing::new(2, 2).unwrap(), name, &mut rng),
            _ => oracle(&PadicRing::new(3, 2).unwrap(), name, &mut rng),
        };
        if let Err(e) = res {
            failures.push(format!("input {i} ({name} over {ring}): {e}"));
        }
    }
    report(9, "quasi-diagonalization oracle, 50 inputs", start, secs(300), &failures, "");
}

#[test]
fn criterion_10_pullback_is_not_natural() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let f5 = PrimeField::new(5).unwrap();
    let mut detail = Vec::new();
    match naturality::orbit_quotient_witness(&fixtures::dihedral4(), &f5).unwrap() {
        Some(w) if w.pulled_then_d != w.d_then_pulled && w.pulled_then_d == w.predicted && w.d_then_pulled == "0" => {
            detail.push(format!("orbit quotient {:?}→{:?}: {} vs 0", w.input, w.output, w.pulled_then_d))
        }
        w => failures.push(format!("orbit quotient: {w:?}")),
    }
    match naturality::trivial_extension_witness(&fixtures::dihedral3(), &f5).unwrap() {
        Some(w) if w.pulled_then_d != w.d_then_pulled && w.d_then_pulled == w.predicted && w.pulled_then_d == "0" => {
            detail.push(format!("trivial extension {:?}→{:?}: 0 vs {}", w.input, w.output, w.d_then_pulled))
        }
        w => failures.push(format!("trivial extension: {w:?}")),
    }
    report(10, "d(φ*f) ≠ φ*(d f) witnesses", start, secs(10), &failures, &format!("({})", detail.join("; ")));
}
