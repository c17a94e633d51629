use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::config::{Parity, SuperspaceConfig};
use super::monomial::Monomial;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// An element of `𝒫 = ℝ[x_1..x_m] ⊗ Λ_{2n}` with exact rational coefficients.
///
/// Terms are kept in canonical monomial order and zero coefficients are never
/// stored, so structural equality is equality of polynomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    config: SuperspaceConfig,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(config: SuperspaceConfig) -> Self {
        Polynomial {
            config,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(config: SuperspaceConfig, c: Rational) -> Self {
        let mut p = Self::zero(config);
        p.add_term(Monomial::one(&config), c);
        p
    }

    pub fn one(config: SuperspaceConfig) -> Self {
        Self::constant(config, Rational::one())
    }

    /// The coordinate `X_j` (one-based).
    pub fn var(config: SuperspaceConfig, j: usize) -> Result<Self> {
        config.check_index(j)?;
        let mono = if config.is_fermionic(j) {
            Monomial::from_parts(vec![0; config.m()], &[j - config.m()]).expect("single factor")
        } else {
            Monomial::one(&config).times_boson(j - 1)
        };
        Ok(Self::from_terms(config, [(mono, Rational::one())]))
    }

    pub fn from_terms(
        config: SuperspaceConfig,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut p = Self::zero(config);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c·mono` in place.
    pub fn add_term(&mut self, mono: Monomial, c: Rational) {
        debug_assert_eq!(mono.exponents().len(), self.config.m());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn config(&self) -> &SuperspaceConfig {
        &self.config
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_same(&self, other: &Polynomial) -> Result<()> {
        if self.config != other.config {
            Err(Error::ConfigMismatch {
                left: self.config,
                right: other.config,
            })
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    /// Graded product: `x`'s commute with everything, `θ`'s anticommute.
    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let mut out = Self::zero(self.config);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((sign, mono)) = a.mul(b) {
                    let c = ca * cb;
                    out.add_term(mono, if sign < 0 { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.config);
        }
        Polynomial {
            config: self.config,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Self::one(self.config);
        for _ in 0..e {
            out = out.try_mul(self).expect("same config");
        }
        out
    }

    /// The degree-`k` part.
    pub fn homogeneous_component(&self, k: usize) -> Polynomial {
        Polynomial {
            config: self.config,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Degrees carrying at least one term.
    pub fn degrees(&self) -> BTreeSet<usize> {
        self.terms.keys().map(Monomial::degree).collect()
    }

    /// `Some(k)` if every term has degree `k`. The zero polynomial reports
    /// `None` since it is homogeneous of every degree.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let degrees = self.degrees();
        (degrees.len() == 1).then(|| *degrees.iter().next().unwrap())
    }

    /// Degree of `p`, failing unless `p` is homogeneous (or zero, when
    /// `default` is used).
    pub fn require_homogeneous(&self, default: usize) -> Result<usize> {
        let degrees = self.degrees();
        match degrees.len() {
            0 => Ok(default),
            1 => Ok(*degrees.iter().next().unwrap()),
            _ => Err(Error::NotHomogeneous {
                degrees: degrees.into_iter().collect(),
            }),
        }
    }

    /// `Some(parity)` when every term has the same number of θ's mod 2.
    pub fn parity(&self) -> Option<Parity> {
        let parities: BTreeSet<Parity> = self.terms.keys().map(Monomial::parity).collect();
        match parities.len() {
            0 => Some(Parity::Even),
            1 => parities.into_iter().next(),
            _ => None,
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", m.format())?;
            } else {
                write!(f, "{abs}*{}", m.format())?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({self})", self.config)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs)
            .expect("polynomials on different superspaces")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs)
            .expect("polynomials on different superspaces")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs)
            .expect("polynomials on different superspaces")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

/// `dim 𝒫_k = Σ_{j ≤ min(2n,k)} C(m−1+k−j, k−j)·C(2n, j)`.
pub fn dim_homogeneous(config: &SuperspaceConfig, k: usize) -> usize {
    let two_n = 2 * config.n();
    (0..=two_n.min(k))
        .map(|j| bosonic_count(config.m(), k - j) * binomial(two_n, j))
        .sum()
}

fn bosonic_count(m: usize, d: usize) -> usize {
    if m == 0 {
        usize::from(d == 0)
    } else {
        binomial(m - 1 + d, d)
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}
