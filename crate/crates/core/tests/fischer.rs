use proptest::prelude::*;
use superharm::fischer::{
    c_constant, diagram, fischer_decompose, fischer_table, h0, harmonic_splitting_holds, harmonics,
    r2_power_image, tilde_harmonics, verify_commutator_lemma, verify_harmonic_splitting,
    verify_splitting_lemma, verify_tilde_splitting, ExceptionalIndexSet, SummandKind,
};
use superharm::linalg::{rref_naive, SparseMatrix, Subspace, Superspace};
use superharm::{Error, Polynomial, Rational, SuperspaceConfig};

fn space(m: usize, n: usize) -> Superspace {
    Superspace::new(SuperspaceConfig::new(m, n))
}

fn poly(s: &Superspace, text: &str) -> Polynomial {
    Polynomial::parse(*s.config(), text).unwrap()
}

// nullity by textbook Gauss–Jordan on the dense matrix
fn naive_nullity(mx: &SparseMatrix) -> usize {
    let (rows, _) = rref_naive(&mx.to_dense());
    mx.cols() - rows.len()
}

#[test]
fn c_constant_examples() {
    for m in -6..=6 {
        assert_eq!(c_constant(0, 0, m), 2 * m);
    }
    assert_eq!(c_constant(0, 2, -4), 0);
    assert_eq!(c_constant(1, 1, 2), 24);
    assert_eq!(c_constant(1, 0, 0), 8);
    assert_eq!(c_constant(2, 0, -4), 0);
}

#[test]
fn commutator_lemma_examples() {
    let s = space(2, 1);
    assert!(verify_commutator_lemma(&s, 1, 0));
    assert!(verify_commutator_lemma(&space(2, 3), 2, 0));
    for (m, n) in [(1, 0), (2, 1), (0, 2), (3, 1), (1, 2)] {
        let s = space(m, n);
        for j in 0..=2 {
            for k in 0..=4 {
                assert!(verify_commutator_lemma(&s, j, k), "({m},{n}) j={j} k={k}");
            }
        }
    }
}

#[test]
fn commutator_lemma_rejects_a_defective_metric() {
    let s = Superspace::new(SuperspaceConfig::with_metric_defect(1, 1));
    assert!((0..=3).any(|k| !verify_commutator_lemma(&s, 0, k)));
}

#[test]
fn harmonics_examples() {
    assert_eq!(harmonics(&space(2, 1), 0).dim(), 1);
    assert_eq!(harmonics(&space(2, 1), 2).dim(), 7);
    let s = space(1, 1);
    for k in 0..=7 {
        assert_eq!(!harmonics(&s, k).is_zero(), k <= 3, "k={k}");
    }
}

#[test]
fn harmonics_match_naive_kernels() {
    for (m, n) in [(0, 2), (1, 1), (2, 1), (3, 0), (1, 2)] {
        let s = space(m, n);
        for k in 0..=5 {
            assert_eq!(
                harmonics(&s, k).dim(),
                naive_nullity(&s.laplace(k)),
                "({m},{n}) k={k}"
            );
            assert_eq!(
                tilde_harmonics(&s, k).dim(),
                naive_nullity(&s.delta_r2_delta(k)),
                "({m},{n}) k={k}"
            );
        }
    }
}

#[test]
fn tilde_harmonics_examples() {
    let s = space(2, 1);
    assert_eq!(tilde_harmonics(&s, 2).dim(), 8);
    assert_eq!(tilde_harmonics(&s, 2).dim(), s.dim(2));
    for (m, n) in [(3, 0), (5, 1)] {
        let s = space(m, n);
        for k in 0..=6 {
            assert_eq!(
                *tilde_harmonics(&s, k),
                *harmonics(&s, k),
                "({m},{n}) k={k}"
            );
        }
    }
    for (m, n) in [(2, 2), (0, 1), (4, 0)] {
        let s = space(m, n);
        for k in 0..=1 {
            assert_eq!(tilde_harmonics(&s, k).dim(), s.dim(k));
        }
    }
}

#[test]
fn h0_examples() {
    for (m, n) in [(3, 0), (5, 1)] {
        let s = space(m, n);
        assert!((0..=6).all(|k| h0(&s, k).is_zero()));
    }
    let s = space(2, 1);
    let r2 = s
        .span(2, &[poly(&s, "x1^2 + x2^2 - theta1*theta2")])
        .unwrap();
    assert_eq!(*h0(&s, 2), r2);
    let s = space(2, 3);
    assert_eq!(h0(&s, 4).dim(), harmonics(&s, 2).dim());
    assert_eq!(*h0(&s, 4), r2_power_image(&s, &harmonics(&s, 2), 1));
}

#[test]
fn structure_of_exceptional_degrees() {
    for (m, n) in [(2, 1), (1, 2), (2, 2), (2, 3), (1, 3)] {
        let s = space(m, n);
        let big_m = s.config().superdimension();
        let exc = ExceptionalIndexSet::new(big_m);
        for k in 0..=6 {
            let tilde = tilde_harmonics(&s, k);
            let plain = harmonics(&s, k);
            assert!(plain.is_subspace_of(&tilde).unwrap());
            assert_eq!(*tilde == *plain, !exc.contains(k), "({m},{n}) k={k}");
            assert_eq!(!h0(&s, k).is_zero(), exc.contains(k), "({m},{n}) k={k}");
            if let Some(partner) = exc.partner(k) {
                let partner_dim = harmonics(&s, partner).dim();
                assert_eq!(tilde.dim(), plain.dim() + partner_dim);
                assert_eq!(h0(&s, k).dim(), partner_dim);
                let e = (2 * k as i64 + big_m - 2) / 2;
                assert_eq!(
                    *h0(&s, k),
                    r2_power_image(&s, &harmonics(&s, partner), e as usize)
                );
            }
        }
    }
}

#[test]
fn purely_fermionic_exceptional_degrees_can_be_trivial() {
    // m = 0, n = 1: I_{-2} = {3, 4} but 𝒫_3 = 0, so H̃_3 = H_3 = 0
    let s = space(0, 1);
    assert!(ExceptionalIndexSet::new(-2).contains(3));
    assert_eq!(s.dim(3), 0);
    assert!(tilde_harmonics(&s, 3).is_zero());
    assert!(harmonic_splitting_holds(&s, 3));
    // m = 0, n = 2: 𝒫_4 is spanned by θ1θ2θ3θ4 = R⁴/2, which Δ does not kill
    let s = space(0, 2);
    assert_eq!(s.dim(4), 1);
    assert!(tilde_harmonics(&s, 4).is_zero());
    assert!(h0(&s, 4).is_zero());
}

#[test]
fn harmonic_splitting_examples() {
    let s = space(3, 1);
    for k in 0..=8 {
        assert_eq!(verify_harmonic_splitting(&s, k), Ok(true), "k={k}");
    }
    let s = space(2, 1);
    assert_eq!(verify_harmonic_splitting(&s, 1), Ok(true));
    assert!(matches!(
        verify_harmonic_splitting(&s, 2),
        Err(Error::Domain(_))
    ));
    assert!(!harmonic_splitting_holds(&s, 2));
    // R² is itself harmonic there
    assert!(harmonics(&s, 2)
        .contains(&s.basis(2), &poly(&s, "x1^2 + x2^2 - theta1*theta2"))
        .unwrap());
}

#[test]
fn harmonic_splitting_fails_on_every_exceptional_degree() {
    for (m, n) in [(2, 1), (2, 2), (2, 3), (4, 3)] {
        let s = space(m, n);
        let exc = ExceptionalIndexSet::new(s.config().superdimension());
        for &k in exc.indices().iter().filter(|&&k| k <= 6) {
            assert!(!harmonic_splitting_holds(&s, k), "({m},{n}) k={k}");
        }
    }
}

#[test]
fn splitting_lemma_examples() {
    let report = verify_splitting_lemma(&space(2, 1), 4);
    assert!(report.holds(), "{report:?}");
    let report = verify_splitting_lemma(&space(0, 2), 2);
    assert!(report.holds(), "{report:?}");
    let report = verify_splitting_lemma(&space(3, 0), 3);
    assert!(report.holds());
    assert!(report.ker_lk_trivial);
    assert_eq!(report.trivial_kernel_consequences, Some(true));
}

#[test]
fn splitting_lemma_over_small_grid() {
    for (m, n) in [(0, 1), (1, 1), (2, 1), (0, 2), (1, 2), (3, 1)] {
        let s = space(m, n);
        for k in 0..=5 {
            let report = verify_splitting_lemma(&s, k);
            assert!(report.holds(), "({m},{n}) k={k}: {report:?}");
            assert!(verify_tilde_splitting(&s, k));
        }
    }
}

#[test]
fn exceptional_set_of_m2_n3() {
    let s = space(2, 3);
    let table = fischer_table(&s, 6);
    assert_eq!(table.exceptional().indices(), &[4, 5, 6]);
    let chain = table.summand(3).unwrap();
    assert_eq!(chain.source_degree, 0);
    assert_eq!(chain.kind, SummandKind::Zero);
    // R⁴H_0 itself is nonzero; only the next step dies
    assert_eq!(
        fischer_table(&s, 4).summand(2).unwrap().kind,
        SummandKind::Plain
    );
    assert!(table.checks().all(), "{:?}", table.checks());
}

#[test]
fn classical_table_in_degree_four() {
    let s = space(2, 0);
    let table = fischer_table(&s, 4);
    let dims: Vec<usize> = table.summands().iter().map(|x| x.dim()).collect();
    assert_eq!(dims, vec![2, 2, 1]);
    assert_eq!(table.total_dim(), 5);
    let labels: Vec<String> = table.summands().iter().map(|x| x.label()).collect();
    assert_eq!(labels, vec!["H_4", "R^2 H_2", "R^4 H_0"]);
    assert!(table.checks().all());
}

#[test]
fn index_sets_follow_their_definitions() {
    for (m, n) in [(0, 2), (2, 3), (1, 1), (2, 2)] {
        let s = space(m, n);
        let big_m = s.config().superdimension();
        let exc = ExceptionalIndexSet::new(big_m);
        for k in 0..=8 {
            let table = fischer_table(&s, k);
            let sets = table.index_sets();
            assert_eq!(
                sets.n,
                (0..=k / 2).map(|j| k - 2 * j).rev().collect::<Vec<_>>()
            );
            for l in &sets.n {
                let tilde = exc.contains(*l);
                let zero = sets
                    .j_tilde
                    .iter()
                    .any(|t| (2 - big_m - *t as i64) == *l as i64);
                assert_eq!(sets.j_tilde.contains(l), tilde);
                assert_eq!(sets.j_zero.contains(l), zero);
                assert_eq!(sets.j_plain.contains(l), !tilde && !zero);
            }
        }
    }
}

#[test]
fn tables_are_direct_over_small_grid() {
    for (m, n) in [(0, 1), (1, 0), (1, 1), (2, 1), (0, 2), (3, 1), (2, 2)] {
        let s = space(m, n);
        for k in 0..=6 {
            let table = fischer_table(&s, k);
            assert!(
                table.checks().all(),
                "({m},{n}) k={k}: {:?}",
                table.checks()
            );
            assert_eq!(table.total_dim(), s.dim(k));
        }
    }
}

#[test]
fn decompose_examples() {
    let s = space(2, 0);
    let parts = fischer_decompose(&s, &poly(&s, "x1^2")).unwrap();
    assert_eq!(parts.len(), 2);
    assert_eq!((parts[0].j, parts[0].source_degree), (0, 2));
    assert_eq!(parts[0].polynomial, poly(&s, "1/2*x1^2 - 1/2*x2^2"));
    assert_eq!((parts[1].j, parts[1].source_degree), (1, 0));
    assert_eq!(parts[1].polynomial, poly(&s, "1/2*x1^2 + 1/2*x2^2"));

    let s = space(2, 1);
    let h = poly(&s, "x1^2 - 1/2*theta1*theta2");
    let parts = fischer_decompose(&s, &h).unwrap();
    assert_eq!(parts.len(), 1);
    assert_eq!(parts[0].j, 0);
    assert_eq!(parts[0].polynomial, h);

    for text in [
        "x1*x2",
        "theta1*theta2",
        "x1^2 + 3*x2*theta1 - theta1*theta2",
    ] {
        let p = poly(&s, text);
        let parts = fischer_decompose(&s, &p).unwrap();
        assert_eq!(parts.len(), 1, "{text}");
        assert_eq!(parts[0].kind, SummandKind::Tilde);
        assert_eq!(parts[0].polynomial, p);
    }
}

#[test]
fn decompose_rejects_mixed_degrees() {
    let s = space(2, 1);
    assert!(matches!(
        fischer_decompose(&s, &poly(&s, "x1 + x2^2")),
        Err(Error::NotHomogeneous { .. })
    ));
    let table = fischer_table(&s, 3);
    assert!(matches!(
        table.decompose(&s, &poly(&s, "x1^2")),
        Err(Error::NotHomogeneous { .. })
    ));
    assert!(table
        .decompose(&s, &Polynomial::zero(*s.config()))
        .unwrap()
        .is_empty());
}

#[test]
fn purely_fermionic_diagrams_are_triangles() {
    for n in 1..=3 {
        let s = space(0, n);
        let d = diagram(&s, 2 * n);
        assert_eq!(d.rows.len(), n + 1, "n={n}");
        for (ell, row) in d.rows.iter().enumerate() {
            assert_eq!(row.source_degree, ell);
            let nonzero: Vec<_> = row
                .cells
                .iter()
                .filter(|c| c.kind != SummandKind::Zero)
                .collect();
            assert_eq!(nonzero.len(), n - ell + 1, "n={n} l={ell}");
            for (j, cell) in nonzero.iter().enumerate() {
                assert_eq!(cell.j, j);
            }
        }
    }
}

#[test]
fn diagram_rows_stop_after_zero_cell() {
    let s = space(2, 3);
    let d = diagram(&s, 8);
    let row0 = &d.rows[0];
    assert_eq!(row0.cells.len(), 4);
    assert_eq!(row0.cells[3].label, "0");
    for row in &d.rows {
        let zeros = row
            .cells
            .iter()
            .filter(|c| c.kind == SummandKind::Zero)
            .count();
        assert!(zeros <= 1);
        if zeros == 1 {
            assert_eq!(row.cells.last().unwrap().kind, SummandKind::Zero);
        }
    }
    assert!(d.rows.iter().any(|r| r.tilde));
    assert!(d.to_string().contains("R^4 H_0"));
}

fn random_poly(s: &Superspace, k: usize, seed: &[i64]) -> Polynomial {
    let basis = s.basis(k);
    let coeffs: Vec<Rational> = (0..basis.len())
        .map(|i| {
            Rational::new(
                seed[i % seed.len()] * (i as i64 % 3 - 1),
                1 + (i as i64 % 4),
            )
        })
        .collect();
    s.polynomial(k, &superharm::linalg::SparseVector::from_dense(&coeffs))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn decomposition_resums(
        m in 0usize..=3,
        n in 0usize..=2,
        k in 0usize..=5,
        seed in proptest::collection::vec(-5i64..=5, 1..6),
    ) {
        let s = space(m, n);
        let p = random_poly(&s, k, &seed);
        let table = fischer_table(&s, k);
        let parts = table.decompose(&s, &p).unwrap();
        let mut total = Polynomial::zero(*s.config());
        for c in &parts {
            let summand: &Subspace = &table.summand(c.j).unwrap().space;
            prop_assert!(summand.contains(&s.basis(k), &c.polynomial).unwrap());
            total = total.try_add(&c.polynomial).unwrap();
        }
        prop_assert_eq!(total, p);
    }
}
