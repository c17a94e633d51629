//! Text form of polynomials.
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := int ['/' int] | 'x' int ['^' int] | 'theta' int ['^' int]
//! ```
//! Whitespace is ignored. Fermionic factors may come in any order; the
//! product rule supplies the sign.

use num_traits::One;

use super::config::SuperspaceConfig;
use super::monomial::Monomial;
use super::polynomial::Polynomial;
use crate::error::{Error, Result};
use crate::rational::Rational;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    config: SuperspaceConfig,
}

impl<'a> Parser<'a> {
    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            column: self.pos + 1,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected digits");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn small_int(&mut self, what: &str) -> Result<usize> {
        let start = self.pos;
        let d = self.digits()?;
        d.parse().or_else(|_| {
            self.pos = start;
            self.error(format!("{what} too large"))
        })
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.eat(b'^') {
            let e = self.small_int("exponent")?;
            u32::try_from(e).or_else(|_| self.error("exponent too large"))
        } else {
            Ok(1)
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let cfg = self.config;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let numer = self.digits()?;
                let text = if self.eat(b'/') {
                    let denom_pos = self.pos;
                    let denom = self.digits()?;
                    if denom.bytes().all(|b| b == b'0') {
                        self.pos = denom_pos;
                        return self.error("zero denominator");
                    }
                    format!("{numer}/{denom}")
                } else {
                    numer.to_string()
                };
                let q: Rational = text.parse().expect("validated literal");
                Ok(Polynomial::constant(cfg, q))
            }
            Some(b'x') => {
                let start = self.pos;
                self.pos += 1;
                let i = self.small_int("variable index")?;
                if i == 0 || i > cfg.m() {
                    self.pos = start;
                    return self.error(format!("x{i} is not a coordinate (m = {})", cfg.m()));
                }
                let e = self.exponent()?;
                let mut exps = vec![0; cfg.m()];
                exps[i - 1] = e;
                let mono = Monomial::from_parts(exps, &[]).expect("no fermions");
                Ok(Polynomial::from_terms(cfg, [(mono, Rational::one())]))
            }
            Some(b't') => {
                let start = self.pos;
                if !self.src[self.pos..].starts_with(b"theta") {
                    return self.error("expected `theta`");
                }
                self.pos += 5;
                let i = self.small_int("variable index")?;
                if i == 0 || i > 2 * cfg.n() {
                    self.pos = start;
                    return self.error(format!(
                        "theta{i} is not a coordinate (2n = {})",
                        2 * cfg.n()
                    ));
                }
                let e = self.exponent()?;
                Ok(match e {
                    0 => Polynomial::one(cfg),
                    1 => Polynomial::var(cfg, cfg.m() + i).expect("checked"),
                    _ => Polynomial::zero(cfg),
                })
            }
            Some(c) => self.error(format!("unexpected `{}`", c as char)),
            None => self.error("unexpected end of input"),
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = acc.try_mul(&f)?;
        }
        Ok(acc)
    }

    fn polynomial(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.config);
        let mut negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let t = self.term()?;
            acc = if negate {
                acc.try_sub(&t)?
            } else {
                acc.try_add(&t)?
            };
            match self.peek() {
                None => return Ok(acc),
                Some(b'+') => {
                    self.pos += 1;
                    negate = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    negate = true;
                }
                Some(c) => return self.error(format!("unexpected `{}`", c as char)),
            }
        }
    }
}

impl Polynomial {
    /// Parses the text form, e.g. `3*x1^2*theta1*theta2 - 1/2*x2^4`.
    pub fn parse(config: SuperspaceConfig, text: &str) -> Result<Polynomial> {
        let mut parser = Parser {
            src: text.as_bytes(),
            pos: 0,
            config,
        };
        parser.polynomial()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cfg() -> SuperspaceConfig {
        SuperspaceConfig::new(2, 2)
    }

    #[test]
    fn parses_documented_example() {
        let p = Polynomial::parse(cfg(), "3*x1^2*theta1*theta2 - 1/2*x2^4").unwrap();
        assert_eq!(p.to_string(), "-1/2*x2^4 + 3*x1^2*theta1*theta2");
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn fermion_order_in_input_is_normalized() {
        let a = Polynomial::parse(cfg(), "theta2*theta1").unwrap();
        assert_eq!(a.to_string(), "-theta1*theta2");
        let b = Polynomial::parse(cfg(), " theta3 * x1 * theta1 ").unwrap();
        assert_eq!(b.to_string(), "-x1*theta1*theta3");
        assert!(Polynomial::parse(cfg(), "theta1*theta1").unwrap().is_zero());
        assert!(Polynomial::parse(cfg(), "theta1^2").unwrap().is_zero());
    }

    #[test]
    fn errors_carry_positions() {
        let err = Polynomial::parse(cfg(), "x1 + x3").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                column: 6,
                message: "x3 is not a coordinate (m = 2)".into()
            }
        );
        assert!(matches!(
            Polynomial::parse(cfg(), "x1 +"),
            Err(Error::Parse { column: 5, .. })
        ));
        assert!(matches!(
            Polynomial::parse(cfg(), "2x1"),
            Err(Error::Parse { column: 2, .. })
        ));
        assert!(matches!(
            Polynomial::parse(cfg(), "1/0*x1"),
            Err(Error::Parse { column: 3, .. })
        ));
        assert!(Polynomial::parse(cfg(), "").is_err());
    }

    #[test]
    fn zero_and_constants() {
        assert!(Polynomial::parse(cfg(), "0").unwrap().is_zero());
        assert_eq!(
            Polynomial::parse(cfg(), "-1/2").unwrap().to_string(),
            "-1/2"
        );
        assert!(Polynomial::parse(cfg(), "x1 - x1").unwrap().is_zero());
    }

    fn arb_poly() -> impl Strategy<Value = String> {
        let factor = prop_oneof![
            (1u32..5, 1u32..4).prop_map(|(p, q)| format!("{p}/{q}")),
            (1usize..3, 0u32..3).prop_map(|(i, e)| format!("x{i}^{e}")),
            (1usize..5).prop_map(|i| format!("theta{i}")),
        ];
        let term = prop::collection::vec(factor, 1..4).prop_map(|fs| fs.join("*"));
        prop::collection::vec((any::<bool>(), term), 1..5).prop_map(|ts| {
            ts.into_iter()
                .map(|(neg, t)| format!("{} {t}", if neg { "-" } else { "+" }))
                .collect::<Vec<_>>()
                .join(" ")
        })
    }

    proptest! {
        #[test]
        fn canonical_form_is_a_fixed_point(src in arb_poly()) {
            let p = Polynomial::parse(cfg(), &src).unwrap();
            let printed = p.to_string();
            let q = Polynomial::parse(cfg(), &printed).unwrap();
            prop_assert_eq!(&p, &q);
            prop_assert_eq!(printed, q.to_string());
        }
    }
}
