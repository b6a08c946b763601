mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use yb_core::algebra::{PrimeField, Ring};
use yb_core::cochain::{Cochain, CochainError, YbComplex};
use yb_core::fixtures;
use yb_core::homotopy::{HomotopyKit, PsiMap};

#[test]
fn psi_pairs_satisfy_their_postcondition() {
    for (name, rack) in fixtures::sample_racks() {
        let c = YbComplex::new(&rack);
        let psi = PsiMap::build(&c);
        let q = rack.size();
        let inequivalent = (0..q * q).filter(|k| !c.equivalent(k / q, k % q)).count();
        assert_eq!(psi.len(), inequivalent, "{name}");
        for ((x, y), (u, v)) in psi.iter() {
            assert!(u != v && rack.op(u, x) == rack.op(v, y), "{name}: ψ({x},{y})");
        }
    }
}

#[test]
fn identities_on_small_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for p in common::FIELDS {
        let field = PrimeField::new(p).unwrap();
        for (name, rack) in fixtures::sample_racks().into_iter().filter(|(_, r)| r.size() <= 3) {
            let c = YbComplex::new(&rack);
            let kit = HomotopyKit::new(&c);
            for n in 1..=3 {
                for m in 0..n {
                    for _ in 0..5 {
                        if let Err(e) = common::homotopy_identities(&kit, &field, n, m, &mut rng) {
                            panic!("{name} F{p}: {e}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn s_and_t_vanish_on_the_trivial_rack() {
    let c = YbComplex::new(&fixtures::trivial(4));
    let kit = HomotopyKit::new(&c);
    let f3 = PrimeField::new(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for n in 1..=3 {
        let f = c.random(&f3, n, &mut rng);
        for m in 0..n {
            assert!(kit.homotopy_s(&f, m).unwrap().is_zero());
            assert!(kit.homotopy_t(&f, m).unwrap().is_zero());
            assert_eq!(kit.homotopy_p(&f, m).unwrap(), f);
        }
        assert_eq!(kit.project_p(&f).unwrap(), f);
        if n == 2 {
            let (fqd, g) = kit.quasidiagonal_representative(&f).unwrap();
            assert_eq!(fqd, f);
            assert!(g.is_zero());
        }
    }
}

#[test]
fn s_requires_the_filtration_level() {
    let c = YbComplex::new(&fixtures::dihedral3());
    let kit = HomotopyKit::new(&c);
    let f2 = PrimeField::new(2).unwrap();
    // x_2 ≢ y_2: level 0
    let f = Cochain::basis(&f2, 3, &[0, 0], &[0, 1], 1);
    assert_eq!(kit.filtration_level(&f), 0);
    assert!(matches!(kit.homotopy_s(&f, 1), Err(CochainError::Filtration { .. })));
    assert!(kit.homotopy_t(&f, 1).is_err());
    assert!(kit.homotopy_s(&f, 0).is_ok());
    // m ≥ n − 1 gives zero
    let g = Cochain::basis(&f2, 3, &[0, 0], &[1, 0], 1);
    assert!(kit.homotopy_s(&g, 1).unwrap().is_zero());
}

#[test]
fn p_raises_the_level_on_dihedral3() {
    let c = YbComplex::new(&fixtures::dihedral3());
    let kit = HomotopyKit::new(&c);
    let f2 = PrimeField::new(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let mut raised = 0;
    for _ in 0..20 {
        let f = c.random(&f2, 2, &mut rng);
        if kit.filtration_level(&f) == 0 {
            raised += 1;
        }
        let pf = kit.homotopy_p(&f, 0).unwrap();
        assert!(kit.filtration_level(&pf) >= 1);
    }
    assert!(raised > 0);
}

#[test]
fn project_p_is_an_idempotent_cochain_map_onto_quasidiagonals() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let f3 = PrimeField::new(3).unwrap();
    for name in fixtures::FIXTURE_NAMES {
        let c = YbComplex::new(&fixtures::named(name).unwrap());
        let kit = HomotopyKit::new(&c);
        for n in 1..=2 {
            let f = c.random(&f3, n, &mut rng);
            let pf = kit.project_p(&f).unwrap();
            assert!(c.is_quasidiagonal(&pf), "{name}");
            assert_eq!(kit.project_p(&pf).unwrap(), pf, "{name}");
            let qd = c.project_quasidiagonal(&f);
            assert_eq!(kit.project_p(&qd).unwrap(), qd, "{name}");
            let df = c.coboundary(&f).unwrap();
            assert_eq!(c.coboundary(&pf).unwrap(), kit.project_p(&df).unwrap(), "{name}");
        }
    }
}

#[test]
fn projection_of_dihedral4_cocycles_is_cohomologous() {
    let f2 = PrimeField::new(2).unwrap();
    let c = YbComplex::new(&fixtures::dihedral4());
    let kit = HomotopyKit::new(&c);
    let d2 = c.coboundary_matrix(&f2, 2).unwrap().to_dense();
    let d1 = c.coboundary_matrix(&f2, 1).unwrap().to_dense();
    let basis = d2.kernel_basis();
    assert_eq!(basis.len() - d1.rank(), 20);
    for v in basis {
        let f = Cochain::from_values(&f2, 4, 2, v).unwrap();
        let pf = kit.project_p(&f).unwrap();
        assert!(c.is_quasidiagonal(&pf));
        assert!(c.coboundary(&pf).unwrap().is_zero());
        assert!(d1.solve(f.sub(&pf).values()).is_some());
        let (fqd, g) = kit.quasidiagonal_representative(&f).unwrap();
        assert_eq!(fqd, pf);
        assert_eq!(fqd, f.add(&c.coboundary(&g).unwrap()));
    }
}

#[test]
fn quasidiagonal_representatives_of_random_cocycles() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for p in common::FIELDS {
        let field = PrimeField::new(p).unwrap();
        for name in ["quandle3", "dihedral3", "dihedral4"] {
            let c = YbComplex::new(&fixtures::named(name).unwrap());
            let kit = HomotopyKit::new(&c);
            // random coboundary plus a random cocycle from the kernel
            let d2 = c.coboundary_matrix(&field, 2).unwrap().to_dense();
            let basis = d2.kernel_basis();
            let mut f = c.coboundary(&c.random(&field, 1, &mut rng)).unwrap();
            for v in &basis {
                let coeff = field.random_elem(&mut rng);
                let b = Cochain::from_values(&field, c.q(), 2, v.clone()).unwrap();
                f = f.add(&b.scale(&coeff));
            }
            let (fqd, g) = kit.quasidiagonal_representative(&f).unwrap();
            assert!(c.is_quasidiagonal(&fqd), "{name} F{p}");
            assert_eq!(fqd, f.add(&c.coboundary(&g).unwrap()), "{name} F{p}");
            // already quasi-diagonal: untouched
            let (again, g0) = kit.quasidiagonal_representative(&fqd).unwrap();
            assert_eq!(again, fqd);
            assert!(g0.is_zero());
        }
    }
    let c = YbComplex::new(&fixtures::quandle3());
    let kit = HomotopyKit::new(&c);
    let f2 = PrimeField::new(2).unwrap();
    let not_cocycle = Cochain::basis(&f2, 3, &[0, 1], &[1, 0], 1);
    assert!(matches!(kit.quasidiagonal_representative(&not_cocycle), Err(CochainError::NotCocycle(_))));
}
