use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// ℤ₂-degree of a homogeneous element or operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_count(count: usize) -> Self {
        if count.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn add(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// The sign `(-1)^{|a||b|}`.
    pub fn koszul_sign(self, other: Parity) -> i64 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }
}

/// The superspace ℝ^{m|2n}: `m` commuting coordinates `x_1..x_m` followed by
/// `2n` anticommuting coordinates `θ_1..θ_{2n}`.
///
/// Variables are addressed with one-based indices `1..=m+2n`; index `j > m`
/// is `θ_{j-m}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SuperspaceConfig {
    m: usize,
    n: usize,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    metric_defect: bool,
}

pub const MAX_FERMIONIC_PAIRS: usize = 32;

impl SuperspaceConfig {
    pub fn new(m: usize, n: usize) -> Self {
        assert!(
            n <= MAX_FERMIONIC_PAIRS,
            "at most {MAX_FERMIONIC_PAIRS} fermionic pairs"
        );
        SuperspaceConfig {
            m,
            n,
            metric_defect: false,
        }
    }

    /// Test hook: a configuration whose raised coordinates `X^j` use a
    /// symplectic block twice too large while `∂_{X^j}` keeps the correct
    /// inverse. Every metric-derived identity should fail on it.
    #[doc(hidden)]
    pub fn with_metric_defect(m: usize, n: usize) -> Self {
        SuperspaceConfig {
            metric_defect: true,
            ..Self::new(m, n)
        }
    }

    pub fn has_metric_defect(&self) -> bool {
        self.metric_defect
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Superdimension `M = m − 2n`.
    pub fn superdimension(&self) -> i64 {
        self.m as i64 - 2 * self.n as i64
    }

    /// Total number of coordinates `m + 2n`.
    pub fn num_vars(&self) -> usize {
        self.m + 2 * self.n
    }

    pub fn check_index(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.num_vars() {
            Err(Error::IndexOutOfRange {
                index: j,
                max: self.num_vars(),
            })
        } else {
            Ok(())
        }
    }

    pub fn is_fermionic(&self, j: usize) -> bool {
        j > self.m
    }

    /// The parity `[j]` of coordinate `j`.
    pub fn parity(&self, j: usize) -> Parity {
        if self.is_fermionic(j) {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// Human-readable name of coordinate `j` (`x3`, `theta2`).
    pub fn var_name(&self, j: usize) -> String {
        if self.is_fermionic(j) {
            format!("theta{}", j - self.m)
        } else {
            format!("x{j}")
        }
    }

    /// Entry `g^{ij}` of the metric (one-based indices).
    pub fn metric_entry(&self, i: usize, j: usize) -> Rational {
        if !self.is_fermionic(i) || !self.is_fermionic(j) {
            return if i == j && !self.is_fermionic(i) {
                Rational::one()
            } else {
                Rational::zero()
            };
        }
        let (a, b) = (i - self.m - 1, j - self.m - 1);
        if a / 2 != b / 2 || a == b {
            return Rational::zero();
        }
        let half = Rational::new(1, 2);
        if a % 2 == 0 {
            -half
        } else {
            half
        }
    }

    /// The full `(m+2n)×(m+2n)` metric matrix `g = (g^{ij})`.
    pub fn metric(&self) -> Vec<Vec<Rational>> {
        let d = self.num_vars();
        (1..=d)
            .map(|i| (1..=d).map(|j| self.metric_entry(i, j)).collect())
            .collect()
    }

    /// `X^j = Σ_i X_i g^{ij}` as a list of `(i, coefficient)`.
    pub fn raised_variable(&self, j: usize) -> Vec<(usize, Rational)> {
        let scale = if self.metric_defect && self.is_fermionic(j) {
            Rational::from_integer(2)
        } else {
            Rational::one()
        };
        (1..=self.num_vars())
            .filter_map(|i| {
                let g = self.metric_entry(i, j);
                (!g.is_zero()).then(|| (i, &g * &scale))
            })
            .collect()
    }

    /// `∂_{X^j} = Σ_i g_{ji} ∂_{X_i}` with `(g_{ij})` the inverse metric, as a
    /// list of `(i, coefficient)`.
    pub fn raised_derivative(&self, j: usize) -> Vec<(usize, Rational)> {
        if !self.is_fermionic(j) {
            return vec![(j, Rational::one())];
        }
        // inverse of (1/2)[[0,-1],[1,0]] is 2[[0,1],[-1,0]]
        let a = j - self.m - 1;
        if a.is_multiple_of(2) {
            vec![(j + 1, Rational::from_integer(2))]
        } else {
            vec![(j - 1, Rational::from_integer(-2))]
        }
    }
}

impl fmt::Display for SuperspaceConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R^({}|{})", self.m, 2 * self.n)?;
        if self.metric_defect {
            write!(f, "[defective metric]")?;
        }
        Ok(())
    }
}
