use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::superpoly::{Monomial, Parity, Polynomial, SuperspaceConfig};

/// One factor of a composition chain. Indices are one-based coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    /// Left multiplication by `X_j`.
    MultiplyBy(usize),
    /// The (left) derivative `∂_{X_j}`.
    DeriveBy(usize),
    /// Left multiplication by `X^j`.
    MultiplyByRaised(usize),
    /// `∂_{X^j}`.
    DeriveByRaised(usize),
}

impl Atom {
    pub fn index(self) -> usize {
        match self {
            Atom::MultiplyBy(j)
            | Atom::DeriveBy(j)
            | Atom::MultiplyByRaised(j)
            | Atom::DeriveByRaised(j) => j,
        }
    }

    pub fn degree_shift(self) -> i64 {
        match self {
            Atom::MultiplyBy(_) | Atom::MultiplyByRaised(_) => 1,
            Atom::DeriveBy(_) | Atom::DeriveByRaised(_) => -1,
        }
    }

    /// `[j]`; raising an index preserves parity since the metric is even.
    pub fn parity(self, config: &SuperspaceConfig) -> Parity {
        config.parity(self.index())
    }

    /// Rewrites raised forms through the metric.
    fn lower(self, config: &SuperspaceConfig) -> Vec<(Rational, PlainAtom)> {
        match self {
            Atom::MultiplyBy(j) => vec![(Rational::one(), PlainAtom::Mul(j))],
            Atom::DeriveBy(j) => vec![(Rational::one(), PlainAtom::Der(j))],
            Atom::MultiplyByRaised(j) => config
                .raised_variable(j)
                .into_iter()
                .map(|(i, c)| (c, PlainAtom::Mul(i)))
                .collect(),
            Atom::DeriveByRaised(j) => config
                .raised_derivative(j)
                .into_iter()
                .map(|(i, c)| (c, PlainAtom::Der(i)))
                .collect(),
        }
    }

    fn fmt_with(self, config: &SuperspaceConfig) -> String {
        match self {
            Atom::MultiplyBy(j) => config.var_name(j),
            Atom::DeriveBy(j) => format!("d/d{}", config.var_name(j)),
            Atom::MultiplyByRaised(j) => format!("{}^", config.var_name(j)),
            Atom::DeriveByRaised(j) => format!("d/d{}^", config.var_name(j)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum PlainAtom {
    Mul(usize),
    Der(usize),
}

/// A chain with raised indices expanded: apply atoms right to left.
#[derive(Debug, Clone)]
pub(crate) struct ExpandedOperator {
    config: SuperspaceConfig,
    chains: Vec<(Rational, Vec<PlainAtom>)>,
}

impl ExpandedOperator {
    /// Image of one monomial as `(coefficient, monomial)` pairs; plain atoms
    /// map a monomial to at most one monomial, so each chain contributes at
    /// most one term.
    pub(crate) fn apply_monomial(&self, mono: &Monomial) -> Vec<(Rational, Monomial)> {
        let m = self.config.m();
        let mut out: Vec<(Rational, Monomial)> = Vec::new();
        'chain: for (c, chain) in &self.chains {
            let mut cur = mono.clone();
            let mut factor: i64 = 1;
            for atom in chain.iter().rev() {
                match *atom {
                    PlainAtom::Mul(j) if j <= m => cur = cur.times_boson(j - 1),
                    PlainAtom::Der(j) if j <= m => match cur.derive_boson(j - 1) {
                        Some((e, next)) => {
                            factor *= e as i64;
                            cur = next;
                        }
                        None => continue 'chain,
                    },
                    PlainAtom::Mul(j) => match cur.times_fermion(j - m - 1) {
                        Some((s, next)) => {
                            factor *= s;
                            cur = next;
                        }
                        None => continue 'chain,
                    },
                    PlainAtom::Der(j) => match cur.derive_fermion(j - m - 1) {
                        Some((s, next)) => {
                            factor *= s;
                            cur = next;
                        }
                        None => continue 'chain,
                    },
                }
            }
            out.push((c * &Rational::from_integer(factor), cur));
        }
        out
    }
}

/// A formal linear combination of composition chains.
///
/// A chain `[A, B, C]` denotes `A∘B∘C`, i.e. `C` acts first. Expressions are
/// never simplified; [`OperatorExpr::apply`] and the matrix routines evaluate
/// them exactly.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OperatorExpr {
    config: SuperspaceConfig,
    terms: Vec<(Rational, Vec<Atom>)>,
}

impl OperatorExpr {
    pub fn zero(config: SuperspaceConfig) -> Self {
        OperatorExpr {
            config,
            terms: Vec::new(),
        }
    }

    pub fn scalar(config: SuperspaceConfig, c: Rational) -> Self {
        let mut e = Self::zero(config);
        if !c.is_zero() {
            e.terms.push((c, Vec::new()));
        }
        e
    }

    pub fn identity(config: SuperspaceConfig) -> Self {
        Self::scalar(config, Rational::one())
    }

    pub fn atom(config: SuperspaceConfig, atom: Atom) -> Result<Self> {
        config.check_index(atom.index())?;
        Ok(OperatorExpr {
            config,
            terms: vec![(Rational::one(), vec![atom])],
        })
    }

    pub fn multiply_by(config: SuperspaceConfig, j: usize) -> Result<Self> {
        Self::atom(config, Atom::MultiplyBy(j))
    }

    pub fn derive_by(config: SuperspaceConfig, j: usize) -> Result<Self> {
        Self::atom(config, Atom::DeriveBy(j))
    }

    pub fn from_terms(
        config: SuperspaceConfig,
        terms: impl IntoIterator<Item = (Rational, Vec<Atom>)>,
    ) -> Result<Self> {
        let terms: Vec<_> = terms.into_iter().filter(|(c, _)| !c.is_zero()).collect();
        for (_, chain) in &terms {
            for a in chain {
                config.check_index(a.index())?;
            }
        }
        Ok(OperatorExpr { config, terms })
    }

    pub fn config(&self) -> &SuperspaceConfig {
        &self.config
    }

    pub fn terms(&self) -> &[(Rational, Vec<Atom>)] {
        &self.terms
    }

    pub fn is_zero_expr(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.config != other.config {
            return Err(Error::ConfigMismatch {
                left: self.config,
                right: other.config,
            });
        }
        Ok(())
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        Ok(out)
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.plus(&other.scaled(&-Rational::one()))
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.config);
        }
        OperatorExpr {
            config: self.config,
            terms: self
                .terms
                .iter()
                .map(|(k, ch)| (k * c, ch.clone()))
                .collect(),
        }
    }

    /// `self ∘ other` (`other` acts first).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut chain = ca.clone();
                chain.extend_from_slice(cb);
                terms.push((a * b, chain));
            }
        }
        Ok(OperatorExpr {
            config: self.config,
            terms,
        })
    }

    pub fn power(&self, e: u32) -> Self {
        let mut out = Self::identity(self.config);
        for _ in 0..e {
            out = out.compose(self).expect("same config");
        }
        out
    }

    /// Common parity of all chains, `None` if they disagree.
    pub fn parity(&self) -> Option<Parity> {
        let mut found: Option<Parity> = None;
        for (_, chain) in &self.terms {
            let p = chain
                .iter()
                .fold(Parity::Even, |acc, a| acc.add(a.parity(&self.config)));
            match found {
                None => found = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        Some(found.unwrap_or(Parity::Even))
    }

    /// Common degree shift of all chains, `None` if they disagree. The zero
    /// expression shifts by 0.
    pub fn degree_shift(&self) -> Option<i64> {
        let mut found: Option<i64> = None;
        for (_, chain) in &self.terms {
            let s: i64 = chain.iter().map(|a| a.degree_shift()).sum();
            match found {
                None => found = Some(s),
                Some(t) if t != s => return None,
                _ => {}
            }
        }
        Some(found.unwrap_or(0))
    }

    pub(crate) fn expand(&self) -> ExpandedOperator {
        let mut merged: HashMap<Vec<PlainAtom>, Rational> = HashMap::new();
        let mut order: Vec<Vec<PlainAtom>> = Vec::new();
        for (c, chain) in &self.terms {
            let mut partial: Vec<(Rational, Vec<PlainAtom>)> = vec![(c.clone(), Vec::new())];
            for atom in chain {
                let lowered = atom.lower(&self.config);
                let mut next = Vec::with_capacity(partial.len() * lowered.len());
                for (pc, pchain) in &partial {
                    for (lc, la) in &lowered {
                        let mut ch = pchain.clone();
                        ch.push(*la);
                        next.push((pc * lc, ch));
                    }
                }
                partial = next;
            }
            for (pc, pchain) in partial {
                match merged.get_mut(&pchain) {
                    Some(v) => *v += &pc,
                    None => {
                        order.push(pchain.clone());
                        merged.insert(pchain, pc);
                    }
                }
            }
        }
        let chains = order
            .into_iter()
            .filter_map(|ch| {
                let c = merged.remove(&ch).expect("recorded");
                (!c.is_zero()).then_some((c, ch))
            })
            .collect();
        ExpandedOperator {
            config: self.config,
            chains,
        }
    }

    /// Applies the operator to a polynomial.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        if *p.config() != self.config {
            return Err(Error::ConfigMismatch {
                left: self.config,
                right: *p.config(),
            });
        }
        let expanded = self.expand();
        let mut out = Polynomial::zero(self.config);
        for (mono, c) in p.terms() {
            for (k, image) in expanded.apply_monomial(mono) {
                out.add_term(image, c * &k);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, chain)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for a in chain {
                write!(f, "·{}", a.fmt_with(&self.config))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OperatorExpr[{}]({self})", self.config)
    }
}

/// `∂_{X_j}` applied to `p`.
pub fn derive(j: usize, p: &Polynomial) -> Result<Polynomial> {
    OperatorExpr::derive_by(*p.config(), j)?.apply(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SuperspaceConfig {
        SuperspaceConfig::new(2, 1)
    }

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(cfg(), s).unwrap()
    }

    #[test]
    fn fermionic_left_derivative() {
        // θ2-index is 4 when m = 2
        assert_eq!(derive(4, &p("theta1*theta2")).unwrap(), p("-theta1"));
        assert_eq!(derive(3, &p("theta1*theta2")).unwrap(), p("theta2"));
        assert_eq!(derive(1, &p("x1^2*x2")).unwrap(), p("2*x1*x2"));
        assert!(derive(3, &p("x1")).unwrap().is_zero());
        assert_eq!(
            derive(5, &p("x1")),
            Err(Error::IndexOutOfRange { index: 5, max: 4 })
        );
    }

    #[test]
    fn parity_and_shift() {
        let c = cfg();
        let x1 = OperatorExpr::multiply_by(c, 1).unwrap();
        let t1 = OperatorExpr::multiply_by(c, 3).unwrap();
        let d1 = OperatorExpr::derive_by(c, 3).unwrap();
        assert_eq!(x1.parity(), Some(Parity::Even));
        assert_eq!(t1.compose(&d1).unwrap().parity(), Some(Parity::Even));
        assert_eq!(x1.compose(&d1).unwrap().parity(), Some(Parity::Odd));
        assert_eq!(x1.plus(&t1).unwrap().parity(), None);
        assert_eq!(x1.plus(&d1).unwrap().degree_shift(), None);
        assert_eq!(OperatorExpr::zero(c).degree_shift(), Some(0));
        assert_eq!(x1.compose(&x1).unwrap().degree_shift(), Some(2));
    }

    #[test]
    fn raised_atoms_lower_through_metric() {
        let c = cfg();
        let raised = OperatorExpr::atom(c, Atom::MultiplyByRaised(3)).unwrap();
        assert_eq!(raised.apply(&Polynomial::one(c)).unwrap(), p("1/2*theta2"));
        let d = OperatorExpr::atom(c, Atom::DeriveByRaised(4)).unwrap();
        assert_eq!(d.apply(&p("theta1")).unwrap(), p("-2"));
    }

    #[test]
    fn composition_order() {
        let c = cfg();
        let t1 = OperatorExpr::multiply_by(c, 3).unwrap();
        let t2 = OperatorExpr::multiply_by(c, 4).unwrap();
        // θ1∘θ2 applied to 1 is θ1θ2
        assert_eq!(
            t1.compose(&t2).unwrap().apply(&Polynomial::one(c)).unwrap(),
            p("theta1*theta2")
        );
        assert_eq!(
            t2.compose(&t1).unwrap().apply(&Polynomial::one(c)).unwrap(),
            p("-theta1*theta2")
        );
    }
}
