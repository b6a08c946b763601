use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use yb_core::algebra::{read_matrix, write_matrix, Field, LocalRing, PadicRing, PowerSeriesRing, PrimeField, Rationals, Ring, RingSpec};
use yb_core::cochain::{naturality, write_cochain, CochainError, ComplexKind, YbComplex};
use yb_core::deformation::{self, DeformationError, TruncatedDeformation};
use yb_core::fixtures;
use yb_core::operator::YBOperator;
use yb_core::rack::{RackError, RackTable};

use crate::report::{RackSummary, RunReport};

/// Errors that are not mathematical verdicts: bad flags, unreadable or
/// malformed input, refused sizes. Exit code 2.
#[derive(Debug)]
pub struct UsageError(pub anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.into())
    }
}


macro_rules! with_local_ring {
    ($spec:expr, $r:ident => $body:expr) => {
        match $spec {
            RingSpec::Prime(p) => {
                let $r = PrimeField::new(p)?;
                $body
            }
            RingSpec::PowerSeries { p, precision } => {
                let $r = PowerSeriesRing::new(p, precision)?;
                $body
            }
            RingSpec::Padic { p, precision } => {
                let $r = PadicRing::new(p, precision)?;
                $body
            }
            RingSpec::Rational => return Err(anyhow!("Q is not a complete local ring; use F<p>, F<p>[h]/h^<N> or Z/<p>^<N>").into()),
        }
    };
}

/// A rack argument is a path to a rack file, or the name of a shipped fixture.
pub fn load_rack(arg: &str) -> Result<(RackTable, Option<String>), RackError> {
    let path = Path::new(arg);
    let rack = if path.exists() {
        RackTable::read(path)?
    } else if let Some(text) = fixtures::rack_file_text(arg) {
        RackTable::from_json(text)?
    } else {
        return Err(RackError::File(format!("{arg}: no such file or shipped fixture")));
    };
    let name = fixtures::FIXTURE_NAMES
        .iter()
        .find(|n| fixtures::named(n).as_ref() == Some(&rack))
        .map(|n| n.to_string());
    Ok((rack, name))
}

fn summarize(report: &mut RunReport, rack: &RackTable) -> Result<(), UsageError> {
    report.rack = Some(RackSummary::of(rack)?);
    Ok(())
}

pub fn validate(report: &mut RunReport, path: &str) -> Result<(), UsageError> {
    match load_rack(path) {
        Ok((rack, name)) => {
            summarize(report, &rack)?;
            let s = report.rack.clone().expect("just set");
            report.check("valid", true, true);
            if let Some(n) = name {
                report.info("fixture", n);
            }
            report.info("quandle", s.quandle);
            report.info("inner_group_order", s.inner_group_order);
            report.info("behavior_classes", s.classes.len());
            report.info("faithful", s.faithful);
            Ok(())
        }
        Err(RackError::File(msg)) => Err(anyhow!(msg).into()),
        Err(e) => {
            report.check("valid", false, false);
            report.info("error", e.to_string());
            if let Some((axiom, witness)) = e.axiom() {
                report.info("axiom", axiom.to_string());
                report.info("witness", witness);
            }
            Ok(())
        }
    }
}

pub struct CohomologyArgs<'a> {
    pub rack: &'a str,
    pub degree: usize,
    pub characteristic: u64,
    pub complex: ComplexKind,
    pub size_cap: Option<usize>,
    pub expect: Option<usize>,
}

pub fn cohomology(report: &mut RunReport, a: &CohomologyArgs) -> Result<(), UsageError> {
    if a.degree < 2 {
        return Err(anyhow!("--degree must be at least 2").into());
    }
    let (rack, _) = load_rack(a.rack)?;
    summarize(report, &rack)?;
    let mut c = YbComplex::new(&rack);
    if let Some(cap) = a.size_cap {
        c = c.with_size_cap(cap);
    }
    let dim = match a.characteristic {
        0 => cohomology_over(&c, &Rationals, a),
        p => cohomology_over(&c, &PrimeField::new(p)?, a),
    };
    let dim = match dim {
        Err(e @ CochainError::SizeGuard { .. }) => return Err(anyhow!(e).context("size guard refused the computation").into()),
        r => r?,
    };
    let field = if a.characteristic == 0 { "Q".to_string() } else { format!("F{}", a.characteristic) };
    report.info("complex", a.complex.to_string());
    report.info("degree", a.degree);
    report.info("field", field);
    let full = c.basis_indices(ComplexKind::YangBaxter, a.degree).len();
    let restricted = c.basis_indices(a.complex, a.degree).len();
    report.info("basis_size", restricted);
    if a.complex != ComplexKind::YangBaxter {
        report.info("full_basis_size", full);
        report.info("basis_reduction", format!("{full} -> {restricted} ({:.1}%)", 100.0 * restricted as f64 / full as f64));
    }
    match a.expect {
        Some(e) => report.check("dimension", dim, dim == e),
        None => report.info("dimension", dim),
    }
    Ok(())
}

fn cohomology_over<F: Field>(c: &YbComplex, field: &F, a: &CohomologyArgs) -> Result<usize, CochainError> {
    c.cohomology_dim(field, a.complex, a.degree)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Section {
    Golden,
    Dimensions,
    Families,
    Rigidity,
    Naturality,
}

/// First entry where the golden dump differs from `c_Q`, as `(row, col, golden, computed)`.
pub fn golden_difference(rack: &RackTable, text: &str) -> anyhow::Result<Option<(usize, usize, String, String)>> {
    let golden = read_matrix(&Rationals, text)?;
    let computed = YBOperator::from_rack(rack, &Rationals);
    let m = computed.matrix();
    if golden.rows() != m.rows() || golden.cols() != m.cols() {
        return Ok(Some((golden.rows(), golden.cols(), "shape".into(), format!("{}x{}", m.rows(), m.cols()))));
    }
    Ok(golden
        .first_difference(m)
        .map(|(i, j)| (i, j, Rationals.format_elem(golden.get(i, j)), Rationals.format_elem(m.get(i, j)))))
}

pub fn worked_examples(report: &mut RunReport, golden_dir: Option<&Path>, only: &[Section], seed: u64) -> Result<(), UsageError> {
    let run = |s: Section| only.is_empty() || only.contains(&s);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if run(Section::Golden) {
        for name in fixtures::golden_names() {
            let text = match golden_dir {
                Some(dir) => {
                    let p = dir.join(format!("{name}.cq"));
                    std::fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?
                }
                None => fixtures::golden_cq_text(name).expect("shipped").to_string(),
            };
            let rack = fixtures::named(name).expect("shipped");
            match golden_difference(&rack, &text)? {
                None => report.check(format!("golden c_Q {name}"), "match", true),
                Some((i, j, g, c)) => report.check(
                    format!("golden c_Q {name}"),
                    format!("first difference at ({i}, {j}): golden {g}, computed {c}"),
                    false,
                ),
            }
        }
    }
    if run(Section::Dimensions) {
        let f2 = PrimeField::new(2)?;
        let f3 = PrimeField::new(3)?;
        let f5 = PrimeField::new(5)?;
        let yb = ComplexKind::YangBaxter;
        let cases: [(&str, &PrimeField, ComplexKind, usize); 5] = [
            ("quandle3", &f2, yb, 9),
            ("dihedral4", &f2, yb, 20),
            ("dihedral4", &f3, yb, 16),
            ("dihedral4", &f5, yb, 16),
            ("dihedral3", &f5, ComplexKind::Diagonal, 1),
        ];
        for (name, field, kind, expected) in cases {
            let c = YbComplex::new(&fixtures::named(name).expect("shipped"));
            let dim = c.cohomology_dim(field, kind, 2)?;
            report.check(format!("H2 {kind} {name} F{}", field.modulus()), dim, dim == expected);
        }
        let c = YbComplex::new(&fixtures::dihedral3());
        let dim = c.rack_cohomology_dim(&f5, 2)?;
        report.check("H2 rack dihedral3 F5", dim, dim == 1);
        for name in fixtures::FIXTURE_NAMES {
            let c = YbComplex::new(&fixtures::named(name).expect("shipped"));
            for field in [&f2, &f3, &f5] {
                let qd = c.cohomology_dim(field, ComplexKind::QuasiDiagonal, 2)?;
                let full = c.cohomology_dim(field, yb, 2)?;
                report.check(format!("H2 quasidiag = yb {name} F{}", field.modulus()), [qd, full], qd == full);
            }
        }
    }
    if run(Section::Families) {
        let cases: [(&str, u64, usize, bool); 5] = [
            ("quandle3-f", 5, 4, false),
            ("dihedral4-f", 3, 4, true),
            ("dihedral4-f", 3, 4, false),
            ("dihedral4-g", 2, 3, true),
            ("dihedral4-g", 2, 3, false),
        ];
        for (name, p, precision, symmetric) in cases {
            let ring = PowerSeriesRing::new(p, precision)?;
            let spec = ring.spec();
            let t = fixtures::family(name).expect("shipped");
            let rack = fixtures::named(&t.rack).expect("shipped");
            let values = deformation::generic_values(&t, &ring, symmetric, &mut rng);
            let rep = deformation::verify_values(&t, &rack, &ring, &values)?;
            let label = if symmetric { "symmetric" } else { "generic" };
            report.check(
                format!("family {name} {spec} {label}"),
                serde_json::json!({ "failing_order": rep.ybe.failing_order, "claim": rep.claim }),
                rep.matches_claim,
            );
        }
    }
    if run(Section::Rigidity) {
        for p in [2, 3, 5] {
            let v = deformation::rigidity_check(&fixtures::dihedral3(), &PrimeField::new(p)?)?;
            report.check(format!("rigid dihedral3 F{p}"), &v, v.rigid);
        }
    }
    if run(Section::Naturality) {
        let f5 = PrimeField::new(5)?;
        let w = naturality::orbit_quotient_witness(&fixtures::dihedral4(), &f5)?;
        let ok = w.as_ref().is_some_and(|w| w.pulled_then_d == w.predicted && w.d_then_pulled == "0");
        report.check("pullback along orbit quotient dihedral4", &w, ok);
        let w = naturality::trivial_extension_witness(&fixtures::dihedral3(), &f5)?;
        let ok = w.as_ref().is_some_and(|w| w.d_then_pulled == w.predicted && w.pulled_then_d == "0");
        report.check("pullback along trivial extension dihedral3", &w, ok);
    }
    Ok(())
}

pub struct QuasidiagArgs<'a> {
    pub rack: &'a str,
    pub ring: RingSpec,
    pub perturb: Option<u64>,
    pub input: Option<&'a Path>,
    pub out_dir: Option<&'a Path>,
}

pub fn quasidiagonalize(report: &mut RunReport, a: &QuasidiagArgs) -> Result<(), UsageError> {
    let (rack, name) = load_rack(a.rack)?;
    summarize(report, &rack)?;
    report.info("ring", a.ring.to_string());
    with_local_ring!(a.ring, r => quasidiagonalize_over(report, &rack, name.as_deref(), &r, a))
}

fn quasidiagonalize_over<R: LocalRing>(
    report: &mut RunReport,
    rack: &RackTable,
    name: Option<&str>,
    ring: &R,
    a: &QuasidiagArgs,
) -> Result<(), UsageError> {
    let input = match (a.perturb, a.input) {
        (Some(seed), None) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            deformation::perturbed_input(name, rack, ring, &mut rng)?.0
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let op = YBOperator::from_dump(rack.size(), ring, &text).with_context(|| format!("parsing {}", path.display()))?;
            TruncatedDeformation::new(rack, op)?
        }
        _ => return Err(anyhow!("exactly one of --perturb and --input is required").into()),
    };
    let complex = YbComplex::new(rack);
    report.info(
        "input_off_quasidiagonal",
        deformation::off_quasidiagonal(&complex, &input.term()).count(),
    );
    let red = match deformation::quasidiagonalize(&input) {
        Ok(red) => red,
        Err(DeformationError::Ybe { order, witness }) => {
            report.check("ybe_input", serde_json::json!({ "failing_order": order, "witness": witness }), false);
            return Ok(());
        }
        Err(e @ (DeformationError::Residue(..) | DeformationError::Cochain(_) | DeformationError::Operator(_))) => {
            return Err(e.into())
        }
        Err(e) => {
            report.check("reduction", e.to_string(), false);
            return Ok(());
        }
    };
    report.check("ybe_input", "holds", true);
    for s in &red.steps {
        report.info(format!("order {}", s.order), s);
    }
    report.check("residual_off_quasidiagonal", red.residual_off_quasidiagonal, red.residual_off_quasidiagonal == 0);
    report.check("ybe_output", &red.ybe, red.ybe.holds);
    let back = deformation::reconjugate(&red.output, &red.gauge.composite())?;
    report.check("reconjugation_reproduces_input", back == *input.operator().matrix(), back == *input.operator().matrix());
    report.info("gauge_trivial", red.gauge.is_trivial());
    let term = write_cochain(&red.output.term());
    let mut dumps: Vec<(String, String)> = red
        .gauge
        .factors()
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_identity())
        .map(|(k, g)| (format!("gauge-{}.mat", k + 1), write_matrix(g.matrix())))
        .collect();
    dumps.push(("term.cochain".into(), term));
    dumps.push(("operator.mat".into(), red.output.operator().to_dump()));
    match a.out_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            for (file, text) in dumps {
                let p: PathBuf = dir.join(&file);
                std::fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?;
                report.info(file, p.display().to_string());
            }
        }
        None => {
            for (file, text) in dumps {
                report.info(file, text);
            }
        }
    }
    Ok(())
}

pub struct FixtureArgs<'a> {
    pub name: &'a str,
    pub ring: RingSpec,
    pub params: Option<&'a Path>,
    pub seed: u64,
}

pub fn verify_fixture(report: &mut RunReport, a: &FixtureArgs) -> Result<(), UsageError> {
    let t = fixtures::family(a.name).ok_or_else(|| {
        anyhow!("unknown fixture `{}` (expected one of {})", a.name, fixtures::family_names().join(", "))
    })?;
    let rack = fixtures::named(&t.rack).expect("templates name shipped racks");
    summarize(report, &rack)?;
    report.info("fixture", a.name);
    report.info("ring", a.ring.to_string());
    with_local_ring!(a.ring, r => verify_fixture_over(report, &t.name, &r, a))
}

fn verify_fixture_over<R: LocalRing>(report: &mut RunReport, name: &str, ring: &R, a: &FixtureArgs) -> Result<(), UsageError> {
    let t = fixtures::family(name).expect("checked");
    let values = match a.params {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Some(t.parse_params(ring, &text)?)
        }
        None => None,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let rep = deformation::verify_fixture(name, ring, values, &mut rng)?;
    for (p, v) in &rep.params {
        report.info(format!("param {p}"), v);
    }
    report.info("symmetric", rep.symmetric);
    report.info("ybe_holds", rep.ybe.holds);
    report.info("failing_order", rep.ybe.failing_order);
    report.info("witness", rep.ybe.witness);
    report.info("holds_mod", &rep.holds_mod);
    report.info("claim", rep.claim);
    report.check("matches_claim", rep.matches_claim, rep.matches_claim);
    Ok(())
}
