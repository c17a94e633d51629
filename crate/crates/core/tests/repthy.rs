use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use superharm::fischer::{h0, harmonics, tilde_harmonics, ExceptionalIndexSet};
use superharm::linalg::{SparseVector, Subspace, Superspace};
use superharm::operators::OperatorExpr;
use superharm::repthy::{
    branching_dims, casimir_scalar, casimir_structure, check_invariance, check_invariance_expr,
    closure_within, commutant, commutant_idempotent_certificate, fermionic_harmonic_dim,
    invariance_witness, is_submodule, lie_generator_indices, module_closure, random_vector,
    structure_report, submodule_lattice_probe, IdempotentVerdict, InvariantOperator, Verdict,
    DEFAULT_SEED,
};
use superharm::superpoly::binomial;
use superharm::{Error, Polynomial, Rational, SuperspaceConfig};

fn space(m: usize, n: usize) -> Superspace {
    Superspace::new(SuperspaceConfig::new(m, n))
}

#[test]
fn invariance_examples() {
    for (m, n) in [(2, 0), (1, 1), (0, 2), (2, 1)] {
        let s = space(m, n);
        for k in 0..=4 {
            assert!(check_invariance(&s, InvariantOperator::Euler, k));
        }
    }
    let s = space(2, 1);
    for k in 0..=6 {
        assert!(check_invariance(&s, InvariantOperator::Laplace, k), "k={k}");
    }
    for op in InvariantOperator::ALL {
        assert!(check_invariance(&space(1, 2), op, 3), "{op}");
    }
    let x1 = OperatorExpr::multiply_by(SuperspaceConfig::new(2, 0), 1).unwrap();
    assert!(!check_invariance_expr(&x1, 1).unwrap());
}

#[test]
fn invariance_breaks_with_a_defective_metric() {
    let s = Superspace::new(SuperspaceConfig::with_metric_defect(1, 1));
    assert!((1..=3).any(|k| invariance_witness(&s, InvariantOperator::R2, k).is_some()));
}

#[test]
fn closure_examples() {
    let s = space(2, 1);
    let whole = Subspace::whole(*s.config(), 2);
    assert_eq!(module_closure(&s, &whole), whole);
    // bosonic harmonics x1² − x2², x1x2 sitting inside 𝒫_2
    let hb = s
        .span(
            2,
            &[
                Polynomial::parse(*s.config(), "x1^2 - x2^2").unwrap(),
                Polynomial::parse(*s.config(), "x1*x2").unwrap(),
            ],
        )
        .unwrap();
    assert_eq!(module_closure(&s, &hb), *harmonics(&s, 2));
    let hz = h0(&s, 2);
    assert_eq!(module_closure(&s, &hz), *hz);
    let s = space(2, 3);
    let hz = h0(&s, 5);
    let v = &hz.basis_vectors()[hz.dim() / 2];
    assert_eq!(closure_within(&s, v, &tilde_harmonics(&s, 5)), *hz);
}

#[test]
fn closure_is_monotone_and_idempotent() {
    let s = space(1, 1);
    for k in 0..=3 {
        let p = s.basis(k);
        for i in 0..p.len() {
            let seed =
                Subspace::from_vectors(*s.config(), k, &[superharm::linalg::SparseVector::unit(i)]);
            let c = module_closure(&s, &seed);
            assert!(seed.is_subspace_of(&c).unwrap());
            assert_eq!(module_closure(&s, &c), c);
            assert!(is_submodule(&s, &c));
        }
    }
}

#[test]
fn lattice_probe_examples() {
    let s = space(3, 1);
    let h = harmonics(&s, 3);
    let probe = submodule_lattice_probe(&s, &h, &[], 4, DEFAULT_SEED);
    assert_eq!(probe.dims(), vec![0, h.dim()]);

    let s = space(2, 1);
    let (hz, h, ht) = (h0(&s, 2), harmonics(&s, 2), tilde_harmonics(&s, 2));
    let probe = submodule_lattice_probe(&s, &ht, &[&hz, &h], 6, DEFAULT_SEED);
    assert_eq!(probe.dims(), vec![0, 1, 7, 8]);
    assert!(probe.is_chain());
    for p in &probe.probes {
        if !h.contains_vector(&p.vector) {
            assert_eq!(probe.modules[p.generates], *ht);
        }
    }

    let zero = Subspace::zero(*s.config(), 2);
    assert_eq!(
        submodule_lattice_probe(&s, &zero, &[], 3, 1).dims(),
        vec![0]
    );
}

#[test]
fn commutant_examples() {
    let s = space(3, 0);
    let cert = commutant_idempotent_certificate(&s, &harmonics(&s, 2));
    assert_eq!(cert.commutant_dim, Some(1));
    assert_eq!(cert.verdict, IdempotentVerdict::NoIdempotent);

    let s = space(2, 1);
    let cert = commutant_idempotent_certificate(&s, &tilde_harmonics(&s, 2));
    assert_eq!(cert.commutant_dim, Some(2));
    assert_eq!(cert.verdict, IdempotentVerdict::NoIdempotent);
    let nil = cert.nilpotent.unwrap();
    assert!(nil.square_zero && nil.in_commutant);
    assert_eq!(nil.rank, 1);
    assert_eq!(cert.discriminant, Some(Rational::from_integer(0)));

    // 𝒫_2 = H_2 ⊕ R²H_0 classically: projecting on a summand is idempotent
    let s = space(3, 0);
    let cert = commutant_idempotent_certificate(&s, &Subspace::whole(*s.config(), 2));
    assert_eq!(cert.commutant_dim, Some(2));
    assert!(
        matches!(cert.verdict, IdempotentVerdict::Decomposable { rank } if rank == 1 || rank == 5)
    );
}

#[test]
fn commutant_elements_commute() {
    let s = space(1, 1);
    let v = Subspace::whole(*s.config(), 2);
    let basis = commutant(&s, &v).unwrap();
    let gens: Vec<_> = superharm::repthy::generator_matrices(&s, 2)
        .iter()
        .map(|g| superharm::repthy::restrict(&v, g).unwrap())
        .collect();
    assert!(!basis.is_empty());
    for x in &basis {
        for g in &gens {
            assert_eq!(x.mul(g), g.mul(x));
        }
    }
}

#[test]
fn casimir_examples() {
    let s = space(2, 0);
    let c = casimir_structure(&s, &harmonics(&s, 2)).unwrap();
    assert_eq!(c.scalar, Rational::from_integer(-4));
    assert_eq!(c.nilpotent_rank, 0);
    assert!(c.holds());

    for m in (-8..=0).step_by(2) {
        for &k in ExceptionalIndexSet::new(m).indices() {
            let partner = (2 - m - k as i64) as usize;
            assert_eq!(casimir_scalar(k, m), casimir_scalar(partner, m));
        }
    }

    let s = space(2, 1);
    let c = casimir_structure(&s, &tilde_harmonics(&s, 2)).unwrap();
    assert_eq!(c.nilpotent_rank, 1);
    assert!(c.square_zero && c.matches_r2_delta);
}

#[test]
fn branching_examples() {
    let t = branching_dims(SuperspaceConfig::new(2, 1), 2).unwrap();
    let products: Vec<(usize, usize, usize)> =
        t.cells.iter().map(|c| (c.j, c.l, c.product)).collect();
    assert_eq!(products, vec![(0, 0, 2), (0, 1, 1), (1, 0, 4)]);
    assert_eq!(t.total, 7);
    assert!(t.holds());
    for k in 0..=6 {
        let t = branching_dims(SuperspaceConfig::new(3, 0), k).unwrap();
        assert_eq!(t.cells.len(), 1);
        assert_eq!(t.total, 2 * k + 1);
    }
    for k in 0..=6 {
        let t = branching_dims(SuperspaceConfig::new(1, 1), k).unwrap();
        assert_eq!(t.total != 0, k <= 3, "k={k}");
        assert!(t.holds());
    }
    assert!(matches!(
        branching_dims(SuperspaceConfig::new(0, 2), 2),
        Err(Error::Domain(_))
    ));
}

#[test]
fn fermionic_factor_dims() {
    for n in 0..=3 {
        let s = space(0, n);
        for j in 0..=2 * n {
            let expected = binomial(2 * n, j) as i64
                - if j >= 2 {
                    binomial(2 * n, j - 2) as i64
                } else {
                    0
                };
            assert_eq!(
                harmonics(&s, j).dim() as i64,
                expected.max(0),
                "n={n} j={j}"
            );
            assert_eq!(fermionic_harmonic_dim(n, j) as i64, expected.max(0));
        }
    }
}

#[test]
fn structure_at_m2_n1() {
    let s = space(2, 1);
    let r = structure_report(&s, 2, 4, DEFAULT_SEED);
    assert_eq!(r.verdict, Verdict::Holds, "{:?}", r.failed_checks());
    assert_eq!(
        (r.spaces.h0, r.spaces.harmonics, r.spaces.tilde_harmonics),
        (1, 7, 8)
    );
    assert_eq!(r.composition.computed, vec![1, 6, 1]);
    assert_eq!(r.composition.expected, vec![1, 6, 1]);
}

#[test]
fn structure_away_from_exceptional_degrees() {
    let s = space(3, 1);
    for k in 0..=4 {
        let r = structure_report(&s, k, 2, DEFAULT_SEED);
        assert_eq!(r.verdict, Verdict::Holds, "k={k} {:?}", r.failed_checks());
        assert_eq!(r.spaces.harmonics, r.spaces.tilde_harmonics);
        assert_eq!(r.spaces.h0, 0);
    }
}

#[test]
fn structure_at_m2_n3() {
    let s = space(2, 3);
    for k in [4, 5, 6] {
        let r = structure_report(&s, k, 2, DEFAULT_SEED);
        assert_eq!(r.verdict, Verdict::Holds, "k={k} {:?}", r.failed_checks());
        assert_eq!(r.spaces.h0, harmonics(&s, 6 - k).dim());
    }
}

#[test]
fn purely_fermionic_reports_are_flagged() {
    let s = space(0, 2);
    for k in 0..=4 {
        let r = structure_report(&s, k, 2, DEFAULT_SEED);
        assert_eq!(r.verdict, Verdict::OutsideHypothesis);
        assert_eq!(r.spaces.harmonics, harmonics(&s, k).dim());
    }
}

// Closure under every L_ij, computed by brute force.
fn naive_closure(s: &Superspace, seed: &SparseVector, k: usize) -> Subspace {
    let d = s.config().num_vars();
    let gens: Vec<_> = (1..=d)
        .flat_map(|i| (i..=d).map(move |j| (i, j)))
        .map(|(i, j)| s.lij(i, j, k).unwrap())
        .collect();
    let mut current = vec![seed.clone()];
    loop {
        let span = Subspace::from_vectors(*s.config(), k, &current);
        let mut next = current.clone();
        for v in span.basis_vectors() {
            for g in &gens {
                next.push(g.mul_vec(v));
            }
        }
        let grown = Subspace::from_vectors(*s.config(), k, &next);
        if grown.dim() == span.dim() {
            return span;
        }
        current = grown.basis_vectors().to_vec();
    }
}

#[test]
fn generator_subset_gives_the_same_closures() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (m, n) in [(1, 1), (2, 1), (0, 2), (3, 1), (2, 2)] {
        let s = space(m, n);
        let gens = lie_generator_indices(&s);
        assert!(gens.len() >= s.config().num_vars() - 1);
        for k in 1..=4 {
            let basis = s.basis(k);
            let units: Vec<SparseVector> = (0..basis.len()).map(SparseVector::unit).collect();
            for _ in 0..3 {
                let v = random_vector(&units, &mut rng);
                let seed = Subspace::from_vectors(*s.config(), k, std::slice::from_ref(&v));
                assert_eq!(
                    module_closure(&s, &seed),
                    naive_closure(&s, &v, k),
                    "({m},{n}) k={k}"
                );
            }
        }
    }
}
