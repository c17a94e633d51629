use num_traits::One;

use super::expr::{Atom, OperatorExpr};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::superpoly::SuperspaceConfig;

fn sum_of(config: SuperspaceConfig, terms: Vec<(Rational, Vec<Atom>)>) -> OperatorExpr {
    OperatorExpr::from_terms(config, terms).expect("indices in range")
}

fn int(v: i64) -> Rational {
    Rational::from_integer(v)
}

/// `Δ = Σ_j ∂_{X^j} ∂_{X_j}`.
pub fn laplace(config: SuperspaceConfig) -> OperatorExpr {
    let terms = (1..=config.num_vars())
        .map(|j| {
            (
                Rational::one(),
                vec![Atom::DeriveByRaised(j), Atom::DeriveBy(j)],
            )
        })
        .collect();
    sum_of(config, terms)
}

/// `𝔼 = Σ_j X_j ∂_{X_j}`.
pub fn euler(config: SuperspaceConfig) -> OperatorExpr {
    let terms = (1..=config.num_vars())
        .map(|j| {
            (
                Rational::one(),
                vec![Atom::MultiplyBy(j), Atom::DeriveBy(j)],
            )
        })
        .collect();
    sum_of(config, terms)
}

/// `R² = Σ_j X^j X_j`.
pub fn r2(config: SuperspaceConfig) -> OperatorExpr {
    let terms = (1..=config.num_vars())
        .map(|j| {
            (
                Rational::one(),
                vec![Atom::MultiplyByRaised(j), Atom::MultiplyBy(j)],
            )
        })
        .collect();
    sum_of(config, terms)
}

/// `Δ_b = Σ_i ∂_{x_i}²`.
pub fn laplace_bosonic(config: SuperspaceConfig) -> OperatorExpr {
    let terms = (1..=config.m())
        .map(|i| (Rational::one(), vec![Atom::DeriveBy(i), Atom::DeriveBy(i)]))
        .collect();
    sum_of(config, terms)
}

/// `Δ_f = −4 Σ_j ∂_{θ_{2j−1}} ∂_{θ_{2j}}`.
pub fn laplace_fermionic(config: SuperspaceConfig) -> OperatorExpr {
    let m = config.m();
    let terms = (1..=config.n())
        .map(|j| {
            (
                int(-4),
                vec![Atom::DeriveBy(m + 2 * j - 1), Atom::DeriveBy(m + 2 * j)],
            )
        })
        .collect();
    sum_of(config, terms)
}

/// `r² = Σ_i x_i²`.
pub fn r2_bosonic(config: SuperspaceConfig) -> OperatorExpr {
    let terms = (1..=config.m())
        .map(|i| {
            (
                Rational::one(),
                vec![Atom::MultiplyBy(i), Atom::MultiplyBy(i)],
            )
        })
        .collect();
    sum_of(config, terms)
}

/// `θ² = −Σ_j θ_{2j−1} θ_{2j}`.
pub fn theta2(config: SuperspaceConfig) -> OperatorExpr {
    let m = config.m();
    let terms = (1..=config.n())
        .map(|j| {
            (
                int(-1),
                vec![Atom::MultiplyBy(m + 2 * j - 1), Atom::MultiplyBy(m + 2 * j)],
            )
        })
        .collect();
    sum_of(config, terms)
}

pub fn euler_bosonic(config: SuperspaceConfig) -> OperatorExpr {
    let terms = (1..=config.m())
        .map(|i| {
            (
                Rational::one(),
                vec![Atom::MultiplyBy(i), Atom::DeriveBy(i)],
            )
        })
        .collect();
    sum_of(config, terms)
}

pub fn euler_fermionic(config: SuperspaceConfig) -> OperatorExpr {
    let terms = (config.m() + 1..=config.num_vars())
        .map(|j| {
            (
                Rational::one(),
                vec![Atom::MultiplyBy(j), Atom::DeriveBy(j)],
            )
        })
        .collect();
    sum_of(config, terms)
}

/// `L_ij = X_i ∂_{X^j} − (−1)^{[i][j]} X_j ∂_{X^i}` for `i ≤ j`.
pub fn lij(config: SuperspaceConfig, i: usize, j: usize) -> Result<OperatorExpr> {
    config.check_index(i)?;
    config.check_index(j)?;
    if i > j {
        return Err(Error::Domain(format!(
            "L_ij needs i <= j, got i = {i}, j = {j}"
        )));
    }
    let sign = config.parity(i).koszul_sign(config.parity(j));
    OperatorExpr::from_terms(
        config,
        [
            (
                Rational::one(),
                vec![Atom::MultiplyBy(i), Atom::DeriveByRaised(j)],
            ),
            (
                int(-sign),
                vec![Atom::MultiplyBy(j), Atom::DeriveByRaised(i)],
            ),
        ],
    )
}

/// All `L_ij` with `i ≤ j`, in lexicographic order of `(i, j)`.
pub fn all_lij(config: SuperspaceConfig) -> Vec<((usize, usize), OperatorExpr)> {
    let d = config.num_vars();
    let mut out = Vec::new();
    for i in 1..=d {
        for j in i..=d {
            out.push(((i, j), lij(config, i, j).expect("valid indices")));
        }
    }
    out
}

/// `C = R²Δ − 𝔼(M − 2 + 𝔼)`.
pub fn casimir(config: SuperspaceConfig) -> OperatorExpr {
    let e = euler(config);
    let shift = int(config.superdimension() - 2);
    let r2_delta = r2(config).compose(&laplace(config)).expect("same config");
    let e_term = e
        .scaled(&shift)
        .plus(&e.compose(&e).expect("same config"))
        .expect("same config");
    r2_delta.minus(&e_term).expect("same config")
}

/// Resolves the operator names used on the command line: `laplace`,
/// `euler`, `r2`, `casimir` and `L<i>,<j>`.
pub fn by_name(config: SuperspaceConfig, name: &str) -> Result<OperatorExpr> {
    let trimmed = name.trim();
    match trimmed {
        "laplace" => return Ok(laplace(config)),
        "euler" => return Ok(euler(config)),
        "r2" => return Ok(r2(config)),
        "casimir" => return Ok(casimir(config)),
        _ => {}
    }
    let unknown = || Error::UnknownOperator(trimmed.to_string());
    let rest = trimmed.strip_prefix('L').ok_or_else(unknown)?;
    let (a, b) = rest.split_once(',').ok_or_else(unknown)?;
    let i: usize = a.trim().parse().map_err(|_| unknown())?;
    let j: usize = b.trim().parse().map_err(|_| unknown())?;
    lij(config, i, j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superpoly::Polynomial;

    fn apply(e: &OperatorExpr, s: &str) -> Polynomial {
        e.apply(&Polynomial::parse(*e.config(), s).unwrap())
            .unwrap()
    }

    fn p(cfg: SuperspaceConfig, s: &str) -> Polynomial {
        Polynomial::parse(cfg, s).unwrap()
    }

    #[test]
    fn laplace_examples() {
        let cfg = SuperspaceConfig::new(2, 1);
        assert_eq!(apply(&laplace(cfg), "x1^2"), p(cfg, "2"));
        assert_eq!(apply(&laplace(cfg), "theta1*theta2"), p(cfg, "4"));
        assert_eq!(apply(&euler(cfg), "x1*theta1"), p(cfg, "2*x1*theta1"));
        assert_eq!(apply(&r2(cfg), "1"), p(cfg, "x1^2 + x2^2 - theta1*theta2"));
    }

    #[test]
    fn rotation_generator() {
        let cfg = SuperspaceConfig::new(2, 0);
        let l = lij(cfg, 1, 2).unwrap();
        assert_eq!(apply(&l, "x1"), p(cfg, "-x2"));
        assert!(apply(&lij(cfg, 1, 1).unwrap(), "x1^3 + x1*x2").is_zero());
        assert!(apply(&l, "7").is_zero());
    }

    #[test]
    fn fermionic_diagonal_lij() {
        let cfg = SuperspaceConfig::new(0, 1);
        // L_11 = 2 θ1 ∂_{θ^1} = 4 θ1 ∂_{θ2}
        assert_eq!(
            apply(&lij(cfg, 1, 1).unwrap(), "theta2"),
            p(cfg, "4*theta1")
        );
        assert_eq!(
            lij(cfg, 1, 2).unwrap().parity(),
            Some(crate::superpoly::Parity::Even)
        );
        let mixed = SuperspaceConfig::new(1, 1);
        assert_eq!(
            lij(mixed, 1, 2).unwrap().parity(),
            Some(crate::superpoly::Parity::Odd)
        );
    }

    #[test]
    fn index_and_name_errors() {
        let cfg = SuperspaceConfig::new(2, 1);
        assert!(matches!(lij(cfg, 1, 5), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(lij(cfg, 2, 1), Err(Error::Domain(_))));
        assert!(by_name(cfg, "L1,4").is_ok());
        assert!(matches!(
            by_name(cfg, "lapl"),
            Err(Error::UnknownOperator(_))
        ));
        assert!(matches!(
            by_name(cfg, "L1,9"),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert_eq!(by_name(cfg, "casimir").unwrap(), casimir(cfg));
    }

    #[test]
    fn casimir_kills_constants() {
        let cfg = SuperspaceConfig::new(3, 1);
        assert!(apply(&casimir(cfg), "5").is_zero());
        assert_eq!(casimir(cfg).degree_shift(), Some(0));
    }
}
