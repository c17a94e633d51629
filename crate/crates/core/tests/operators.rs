use proptest::prelude::*;
use superharm::linalg::{operator_matrix, SparseMatrix};
use superharm::operators::{
    self, all_lij, casimir, euler, laplace, r2, supercommutator_matrix, OperatorExpr,
};
use superharm::{Error, Polynomial, Rational, SuperspaceConfig};

fn configs() -> Vec<SuperspaceConfig> {
    [
        (0, 1),
        (0, 2),
        (1, 0),
        (1, 1),
        (2, 0),
        (2, 1),
        (3, 1),
        (1, 2),
    ]
    .into_iter()
    .map(|(m, n)| SuperspaceConfig::new(m, n))
    .collect()
}

fn q(v: i64) -> Rational {
    Rational::from_integer(v)
}

fn half_m(cfg: &SuperspaceConfig) -> Rational {
    Rational::new(cfg.superdimension(), 2)
}

#[test]
fn canonical_supercommutators() {
    for cfg in configs() {
        for k in 0..=3 {
            for i in 1..=cfg.num_vars() {
                for j in 1..=cfg.num_vars() {
                    let d = OperatorExpr::derive_by(cfg, i).unwrap();
                    let x = OperatorExpr::multiply_by(cfg, j).unwrap();
                    let c = supercommutator_matrix(&d, &x, k).unwrap();
                    let expect = if i == j { q(1) } else { q(0) };
                    assert!(c.is_scalar(&expect), "{cfg} k={k} i={i} j={j}");
                }
            }
        }
    }
}

#[test]
fn sl2_relations() {
    for cfg in configs() {
        let m = cfg.superdimension();
        let shifted_euler = euler(cfg)
            .plus(&OperatorExpr::scalar(cfg, half_m(&cfg)))
            .unwrap();
        for k in 0..=5 {
            let dr = supercommutator_matrix(&laplace(cfg), &r2(cfg), k).unwrap();
            assert!(dr.is_scalar(&q(4 * k as i64 + 2 * m)), "{cfg} k={k}");
            let de = supercommutator_matrix(&laplace(cfg), &shifted_euler, k).unwrap();
            assert_eq!(de, operator_matrix(&laplace(cfg), k).unwrap().scale(&q(2)));
            let re = supercommutator_matrix(&r2(cfg), &shifted_euler, k).unwrap();
            assert_eq!(re, operator_matrix(&r2(cfg), k).unwrap().scale(&q(-2)));
        }
    }
}

#[test]
fn named_operators_are_invariant() {
    for cfg in configs() {
        for op in [laplace(cfg), euler(cfg), r2(cfg), casimir(cfg)] {
            for ((i, j), l) in all_lij(cfg) {
                for k in 0..=4 {
                    let c = supercommutator_matrix(&op, &l, k).unwrap();
                    assert!(c.is_zero(), "{cfg} {op:?} L{i},{j} k={k}");
                }
            }
        }
    }
}

#[test]
fn multiplication_is_not_invariant() {
    let cfg = SuperspaceConfig::new(2, 0);
    let x1 = OperatorExpr::multiply_by(cfg, 1).unwrap();
    let found = all_lij(cfg)
        .iter()
        .any(|(_, l)| !supercommutator_matrix(&x1, l, 1).unwrap().is_zero());
    assert!(found);
}

#[test]
fn raised_forms_match_split_forms() {
    for cfg in configs() {
        let lap = operators::laplace_bosonic(cfg)
            .plus(&operators::laplace_fermionic(cfg))
            .unwrap();
        let rr = operators::r2_bosonic(cfg)
            .plus(&operators::theta2(cfg))
            .unwrap();
        let ee = operators::euler_bosonic(cfg)
            .plus(&operators::euler_fermionic(cfg))
            .unwrap();
        for k in 0..=4 {
            assert_eq!(
                operator_matrix(&laplace(cfg), k).unwrap(),
                operator_matrix(&lap, k).unwrap()
            );
            assert_eq!(
                operator_matrix(&r2(cfg), k).unwrap(),
                operator_matrix(&rr, k).unwrap()
            );
            assert_eq!(
                operator_matrix(&euler(cfg), k).unwrap(),
                operator_matrix(&ee, k).unwrap()
            );
        }
    }
}

#[test]
fn euler_is_degree() {
    for cfg in configs() {
        for k in 0..=4 {
            assert!(operator_matrix(&euler(cfg), k)
                .unwrap()
                .is_scalar(&q(k as i64)));
        }
    }
}

#[test]
fn casimir_matrix_formula() {
    for cfg in configs() {
        let m = cfg.superdimension();
        for k in 0..=4 {
            let r2d = operator_matrix(&r2(cfg).compose(&laplace(cfg)).unwrap(), k).unwrap();
            let n = r2d.cols();
            let expect = r2d.sub(&SparseMatrix::scalar(n, &q(k as i64 * (m - 2 + k as i64))));
            assert_eq!(operator_matrix(&casimir(cfg), k).unwrap(), expect);
        }
    }
}

#[test]
fn casimir_on_harmonics_is_scalar() {
    let cfg = SuperspaceConfig::new(3, 0);
    let h = Polynomial::parse(cfg, "x1*x2 + x1^2 - x3^2").unwrap();
    assert!(laplace(cfg).apply(&h).unwrap().is_zero());
    // −k(M−2+k) with k = 2, M = 3
    assert_eq!(casimir(cfg).apply(&h).unwrap(), h.scale(&q(-6)));
}

#[test]
fn supercommutator_rejects_mixed_operators() {
    let cfg = SuperspaceConfig::new(1, 1);
    let x = OperatorExpr::multiply_by(cfg, 1).unwrap();
    let t = OperatorExpr::multiply_by(cfg, 2).unwrap();
    let mixed_parity = x.plus(&t).unwrap();
    assert_eq!(
        supercommutator_matrix(&mixed_parity, &x, 1).unwrap_err(),
        Error::InhomogeneousParity
    );
    let d = OperatorExpr::derive_by(cfg, 1).unwrap();
    let mixed_degree = x.plus(&d).unwrap();
    assert_eq!(
        supercommutator_matrix(&mixed_degree, &x, 1).unwrap_err(),
        Error::InhomogeneousDegree
    );
    assert!(supercommutator_matrix(&laplace(cfg), &laplace(cfg), 3)
        .unwrap()
        .is_zero());
}

#[test]
fn defective_metric_breaks_sl2() {
    let cfg = SuperspaceConfig::with_metric_defect(2, 1);
    let dr = supercommutator_matrix(&laplace(cfg), &r2(cfg), 0).unwrap();
    assert!(!dr.is_scalar(&q(2 * cfg.superdimension())));
}

fn arb_poly(cfg: SuperspaceConfig) -> impl Strategy<Value = Polynomial> {
    let factor = prop_oneof![
        (1i64..5, 1i64..4).prop_map(|(p, q)| format!("{p}/{q}")),
        (1..=cfg.m().max(1), 0u32..3).prop_map(|(i, e)| format!("x{i}^{e}")),
        (1..=2 * cfg.n()).prop_map(|i| format!("theta{i}")),
    ];
    let term = prop::collection::vec(factor, 1..4).prop_map(|fs| fs.join("*"));
    prop::collection::vec(term, 1..4)
        .prop_map(move |ts| Polynomial::parse(cfg, &ts.join(" - ")).unwrap())
}

proptest! {
    #[test]
    fn application_is_linear(
        p in arb_poly(SuperspaceConfig::new(2, 1)),
        r in arb_poly(SuperspaceConfig::new(2, 1)),
        a in -4i64..5,
        b in 1i64..5,
    ) {
        let cfg = SuperspaceConfig::new(2, 1);
        let (a, b) = (q(a), Rational::new(1, b));
        for op in [laplace(cfg), r2(cfg), casimir(cfg), operators::lij(cfg, 1, 3).unwrap()] {
            let lhs = op.apply(&(&p.scale(&a) + &r.scale(&b))).unwrap();
            let rhs = &op.apply(&p).unwrap().scale(&a) + &op.apply(&r).unwrap().scale(&b);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn matrix_and_application_agree(p in arb_poly(SuperspaceConfig::new(2, 1))) {
        let cfg = SuperspaceConfig::new(2, 1);
        let basis = superharm::linalg::DegreeBasis::new(cfg, 2);
        let p2 = p.homogeneous_component(2);
        let mx = operator_matrix(&laplace(cfg), 2).unwrap();
        let image = mx.mul_vec(&basis.vector(&p2).unwrap());
        let target = superharm::linalg::DegreeBasis::new(cfg, 0);
        prop_assert_eq!(target.polynomial(&image), laplace(cfg).apply(&p2).unwrap());
    }
}

#[test]
fn zero_expression_has_zero_matrix() {
    let cfg = SuperspaceConfig::new(2, 1);
    let z = OperatorExpr::zero(cfg);
    assert!(operator_matrix(&z, 3).unwrap().is_zero());
    let one = Polynomial::one(cfg);
    assert_eq!(OperatorExpr::identity(cfg).apply(&one).unwrap(), one);
}
