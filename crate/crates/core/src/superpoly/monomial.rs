use std::cmp::Ordering;
use std::fmt;

use super::config::{Parity, SuperspaceConfig};

/// A monomial `x^a θ_{i_1}⋯θ_{i_s}` with `i_1 < ⋯ < i_s`.
///
/// The fermionic factors are a bit set (bit `i` is `θ_{i+1}`), so the stored
/// form is always the ascending word and `θ_i² = 0` is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
    fermions: u64,
}

fn sign_of(count: u32) -> i64 {
    if count.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl Monomial {
    pub fn one(cfg: &SuperspaceConfig) -> Self {
        Monomial {
            exps: vec![0; cfg.m()],
            fermions: 0,
        }
    }

    /// Builds a monomial from bosonic exponents and a set of one-based θ
    /// indices. Returns `None` if a θ index repeats. The sign of sorting the
    /// θ word is *not* applied here; see [`Monomial::from_word`].
    pub fn from_parts(exps: Vec<u32>, fermions: &[usize]) -> Option<Self> {
        let mut mask = 0u64;
        for &i in fermions {
            assert!((1..=64).contains(&i), "θ index {i} out of range");
            let bit = 1u64 << (i - 1);
            if mask & bit != 0 {
                return None;
            }
            mask |= bit;
        }
        Some(Monomial {
            exps,
            fermions: mask,
        })
    }

    /// Normalizes the word `x^a θ_{w_1}⋯θ_{w_s}` (any order) into
    /// `(sign, monomial)`, or `None` if it vanishes.
    pub fn from_word(exps: Vec<u32>, word: &[usize]) -> Option<(i64, Self)> {
        let mut mono = Monomial { exps, fermions: 0 };
        let mut sign = 1;
        // multiplying on the right by θ_w: count factors already present above w
        for &w in word {
            assert!((1..=64).contains(&w), "θ index {w} out of range");
            let bit = 1u64 << (w - 1);
            if mono.fermions & bit != 0 {
                return None;
            }
            sign *= sign_of((mono.fermions & !(bit | (bit - 1))).count_ones());
            mono.fermions |= bit;
        }
        Some((sign, mono))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn fermion_mask(&self) -> u64 {
        self.fermions
    }

    /// One-based θ indices in ascending order.
    pub fn fermion_indices(&self) -> Vec<usize> {
        (0..64)
            .filter(|b| self.fermions & (1u64 << b) != 0)
            .map(|b| b + 1)
            .collect()
    }

    pub fn bosonic_degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    pub fn fermionic_degree(&self) -> usize {
        self.fermions.count_ones() as usize
    }

    pub fn degree(&self) -> usize {
        self.bosonic_degree() + self.fermionic_degree()
    }

    pub fn parity(&self) -> Parity {
        Parity::from_count(self.fermionic_degree())
    }

    pub fn is_one(&self) -> bool {
        self.fermions == 0 && self.exps.iter().all(|&e| e == 0)
    }

    /// Supercommutative product; `None` when a θ repeats.
    pub fn mul(&self, other: &Monomial) -> Option<(i64, Monomial)> {
        if self.fermions & other.fermions != 0 {
            return None;
        }
        // each θ of `other` moves left past the θ's of `self` with a larger index
        let mut swaps = 0;
        let mut rest = other.fermions;
        while rest != 0 {
            let b = rest.trailing_zeros();
            swaps += (self.fermions >> b >> 1).count_ones();
            rest &= rest - 1;
        }
        let exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a + b)
            .collect();
        Some((
            sign_of(swaps),
            Monomial {
                exps,
                fermions: self.fermions | other.fermions,
            },
        ))
    }

    /// Left multiplication by `x_i` (zero-based bosonic index).
    pub(crate) fn times_boson(&self, i: usize) -> Monomial {
        let mut out = self.clone();
        out.exps[i] += 1;
        out
    }

    /// `∂_{x_i}` (zero-based bosonic index): `(exponent, monomial)`.
    pub(crate) fn derive_boson(&self, i: usize) -> Option<(u32, Monomial)> {
        let e = self.exps[i];
        if e == 0 {
            return None;
        }
        let mut out = self.clone();
        out.exps[i] -= 1;
        Some((e, out))
    }

    /// Left multiplication by `θ_{b+1}`.
    pub(crate) fn times_fermion(&self, b: usize) -> Option<(i64, Monomial)> {
        let bit = 1u64 << b;
        if self.fermions & bit != 0 {
            return None;
        }
        let sign = sign_of((self.fermions & (bit - 1)).count_ones());
        Some((
            sign,
            Monomial {
                exps: self.exps.clone(),
                fermions: self.fermions | bit,
            },
        ))
    }

    /// Left derivative `∂_{θ_{b+1}}`.
    pub(crate) fn derive_fermion(&self, b: usize) -> Option<(i64, Monomial)> {
        let bit = 1u64 << b;
        if self.fermions & bit == 0 {
            return None;
        }
        let sign = sign_of((self.fermions & (bit - 1)).count_ones());
        Some((
            sign,
            Monomial {
                exps: self.exps.clone(),
                fermions: self.fermions & !bit,
            },
        ))
    }

    pub fn format(&self) -> String {
        let mut factors = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(format!("x{}", i + 1)),
                _ => factors.push(format!("x{}^{}", i + 1, e)),
            }
        }
        for i in self.fermion_indices() {
            factors.push(format!("theta{i}"));
        }
        if factors.is_empty() {
            "1".to_string()
        } else {
            factors.join("*")
        }
    }
}

/// Canonical order: total degree, then bosonic degree descending, then the
/// exponent vector lexicographically descending (`x1^2` before `x1*x2`), then
/// the θ index set lexicographically ascending.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.bosonic_degree().cmp(&self.bosonic_degree()))
            .then_with(|| other.exps.cmp(&self.exps))
            .then_with(|| {
                // lexicographic on ascending index lists: the smaller first
                // differing index wins
                let diff = self.fermions ^ other.fermions;
                if diff == 0 {
                    Ordering::Equal
                } else if self.fermions & (diff & diff.wrapping_neg()) != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Monomial({:?}; θ{:?})",
            self.exps,
            self.fermion_indices()
        )
    }
}

/// All monomials of degree `k`, in canonical order.
pub fn monomials_of_degree(cfg: &SuperspaceConfig, k: usize) -> Vec<Monomial> {
    let two_n = 2 * cfg.n();
    let mut out = Vec::new();
    for s in 0..=two_n.min(k) {
        let bos = bosonic_exponents(cfg.m(), k - s);
        let sets = subsets_of_size(two_n, s);
        for exps in &bos {
            for &mask in &sets {
                out.push(Monomial {
                    exps: exps.clone(),
                    fermions: mask,
                });
            }
        }
    }
    out.sort();
    out
}

fn bosonic_exponents(m: usize, d: usize) -> Vec<Vec<u32>> {
    if m == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; m];
    fn rec(pos: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left as u32;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e as u32;
            rec(pos + 1, left - e, cur, out);
        }
    }
    rec(0, d, &mut cur, &mut out);
    out
}

fn subsets_of_size(n: usize, s: usize) -> Vec<u64> {
    (0u64..(1u64 << n))
        .filter(|m| m.count_ones() as usize == s)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_normalization_signs() {
        let (s, m) = Monomial::from_word(vec![], &[2, 1]).unwrap();
        assert_eq!((s, m.fermion_indices()), (-1, vec![1, 2]));
        let (s, m) = Monomial::from_word(vec![], &[3, 1, 2]).unwrap();
        assert_eq!((s, m.fermion_indices()), (1, vec![1, 2, 3]));
        let (s, _) = Monomial::from_word(vec![], &[3, 2, 1]).unwrap();
        assert_eq!(s, -1);
        assert!(Monomial::from_word(vec![], &[1, 2, 1]).is_none());
    }

    #[test]
    fn product_sign_matches_word() {
        // θ2θ3 · θ1 = θ2θ3θ1 = +θ1θ2θ3
        let a = Monomial::from_parts(vec![], &[2, 3]).unwrap();
        let b = Monomial::from_parts(vec![], &[1]).unwrap();
        let (s, p) = a.mul(&b).unwrap();
        assert_eq!((s, p.fermion_indices()), (1, vec![1, 2, 3]));
        let (s, _) = b.mul(&Monomial::from_parts(vec![], &[3]).unwrap()).unwrap();
        assert_eq!(s, 1);
        let (s, _) = Monomial::from_parts(vec![], &[3]).unwrap().mul(&b).unwrap();
        assert_eq!(s, -1);
    }

    #[test]
    fn canonical_order_of_degree_two() {
        let cfg = SuperspaceConfig::new(2, 1);
        let names: Vec<String> = monomials_of_degree(&cfg, 2)
            .iter()
            .map(|m| m.format())
            .collect();
        assert_eq!(
            names,
            [
                "x1^2",
                "x1*x2",
                "x2^2",
                "x1*theta1",
                "x1*theta2",
                "x2*theta1",
                "x2*theta2",
                "theta1*theta2"
            ]
        );
    }

    #[test]
    fn fermionic_sets_lexicographic() {
        let cfg = SuperspaceConfig::new(0, 2);
        let sets: Vec<Vec<usize>> = monomials_of_degree(&cfg, 2)
            .iter()
            .map(|m| m.fermion_indices())
            .collect();
        assert_eq!(
            sets,
            vec![
                vec![1, 2],
                vec![1, 3],
                vec![1, 4],
                vec![2, 3],
                vec![2, 4],
                vec![3, 4]
            ]
        );
    }
}
