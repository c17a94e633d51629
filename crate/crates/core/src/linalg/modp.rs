//! Linear algebra modulo the prime `2^31 − 1`.
//!
//! Used only to certify results computed over `ℚ`: for matrices whose
//! denominators avoid `p`, the span of the orbit of a vector mod `p` is
//! never larger than the span over `ℚ`, so reaching a known upper bound
//! mod `p` pins the rational answer down exactly.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::sparse::{SparseMatrix, SparseVector};
use crate::rational::Rational;

pub const MODULUS: u64 = (1 << 31) - 1;

fn mul(a: u64, b: u64) -> u64 {
    // 2^31 ≡ 1, so the high bits fold onto the low ones
    let x = a * b;
    let folded = (x & MODULUS) + (x >> 31);
    add(folded & MODULUS, folded >> 31)
}

fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= MODULUS {
        s - MODULUS
    } else {
        s
    }
}

fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + MODULUS - b
    }
}

fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    acc
}

fn inv(a: u64) -> u64 {
    pow(a, MODULUS - 2)
}

fn reduce_int(v: &BigInt) -> u64 {
    let m = BigInt::from(MODULUS);
    let r = ((v % &m) + &m) % &m;
    r.to_u64().expect("reduced below the modulus")
}

/// Image of `r` in `𝔽_p`, or `None` if `p` divides its denominator.
pub fn reduce(r: &Rational) -> Option<u64> {
    let d = reduce_int(&r.denom());
    (d != 0).then(|| mul(reduce_int(&r.numer()), inv(d)))
}

/// A matrix over `𝔽_p`, stored by columns.
#[derive(Debug, Clone)]
pub struct ModpMatrix {
    rows: usize,
    columns: Vec<Vec<(usize, u64)>>,
}

impl ModpMatrix {
    pub fn reduce(m: &SparseMatrix) -> Option<Self> {
        let columns = m
            .columns()
            .iter()
            .map(reduce_sparse)
            .collect::<Option<Vec<_>>>()?;
        Some(ModpMatrix {
            rows: m.rows(),
            columns,
        })
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        let mut out = vec![0; self.rows];
        for (c, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for &(r, a) in &self.columns[c] {
                out[r] = add(out[r], mul(a, x));
            }
        }
        out
    }
}

fn reduce_sparse(v: &SparseVector) -> Option<Vec<(usize, u64)>> {
    v.entries()
        .iter()
        .map(|(i, x)| reduce(x).map(|y| (*i, y)))
        .filter(|e| !matches!(e, Some((_, 0))))
        .collect()
}

/// Dense image of `v` in `𝔽_p^len`.
pub fn reduce_vector(v: &SparseVector, len: usize) -> Option<Vec<u64>> {
    let mut out = vec![0; len];
    for (i, x) in reduce_sparse(v)? {
        out[i] = x;
    }
    Some(out)
}

/// Incremental row echelon form over `𝔽_p`; rows are kept sparse.
#[derive(Debug, Clone)]
pub struct ModpEchelon {
    rows: Vec<Option<Vec<(usize, u64)>>>,
    dim: usize,
}

impl ModpEchelon {
    pub fn new(ncols: usize) -> Self {
        ModpEchelon {
            rows: vec![None; ncols],
            dim: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Adds `v`; returns whether it was independent of the rows so far.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        for c in 0..v.len() {
            if v[c] == 0 {
                continue;
            }
            match &self.rows[c] {
                Some(row) => {
                    let f = v[c];
                    for &(i, y) in row {
                        v[i] = sub(v[i], mul(f, y));
                    }
                }
                None => {
                    let s = inv(v[c]);
                    let row = (c..v.len())
                        .filter(|&i| v[i] != 0)
                        .map(|i| (i, mul(v[i], s)))
                        .collect();
                    self.rows[c] = Some(row);
                    self.dim += 1;
                    return true;
                }
            }
        }
        false
    }
}

/// Dimension over `𝔽_p` of the span of `seeds` under repeated application
/// of `gens`, stopping once `bound` is reached.
pub fn spin_dim(ncols: usize, gens: &[ModpMatrix], seeds: Vec<Vec<u64>>, bound: usize) -> usize {
    let mut echelon = ModpEchelon::new(ncols);
    let mut queue = Vec::new();
    for s in seeds {
        if echelon.insert(s.clone()) {
            queue.push(s);
        }
    }
    while let Some(v) = queue.pop() {
        for g in gens {
            if echelon.dim() >= bound {
                return echelon.dim();
            }
            let w = g.mul_vec(&v);
            if echelon.insert(w.clone()) {
                queue.push(w);
            }
        }
    }
    echelon.dim()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_is_a_homomorphism() {
        let a = Rational::new(3, 7);
        let b = Rational::new(-5, 11);
        let ra = reduce(&a).unwrap();
        let rb = reduce(&b).unwrap();
        assert_eq!(reduce(&(&a * &b)).unwrap(), mul(ra, rb));
        assert_eq!(reduce(&(&a - &b)).unwrap(), sub(ra, rb));
        assert_eq!(mul(ra, inv(ra)), 1);
        assert_eq!(mul(MODULUS - 1, MODULUS - 1), 1);
        assert_eq!(mul(1 << 30, 2), 1);
    }

    #[test]
    fn echelon_counts_rank() {
        let mut e = ModpEchelon::new(3);
        assert!(e.insert(vec![1, 2, 3]));
        assert!(e.insert(vec![2, 4, 7]));
        assert!(!e.insert(vec![3, 6, 10]));
        assert_eq!(e.dim(), 2);
    }
}
