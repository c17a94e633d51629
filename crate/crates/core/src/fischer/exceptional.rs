use serde::{Deserialize, Serialize};

/// The exceptional degrees `I_M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalIndexSet {
    superdimension: i64,
    indices: Vec<usize>,
}

/// Whether `M ∈ −2ℕ₀`.
pub fn is_nonpositive_even(m: i64) -> bool {
    m <= 0 && m % 2 == 0
}

impl ExceptionalIndexSet {
    pub fn new(superdimension: i64) -> Self {
        let indices = if is_nonpositive_even(superdimension) {
            let lo = 2 - superdimension / 2;
            let hi = 2 - superdimension;
            (lo..=hi).map(|k| k as usize).collect()
        } else {
            Vec::new()
        };
        ExceptionalIndexSet {
            superdimension,
            indices,
        }
    }

    pub fn superdimension(&self) -> i64 {
        self.superdimension
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, k: usize) -> bool {
        self.indices.binary_search(&k).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    /// The partner degree `2 − M − k` of an exceptional `k`.
    pub fn partner(&self, k: usize) -> Option<usize> {
        self.contains(k)
            .then(|| (2 - self.superdimension - k as i64) as usize)
    }
}

/// `C(j, k) = (2j + 2)(2k + M + 2j)`.
pub fn c_constant(j: usize, k: usize, superdimension: i64) -> i64 {
    let (j, k) = (j as i64, k as i64);
    (2 * j + 2) * (2 * k + superdimension + 2 * j)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form() {
        assert_eq!(ExceptionalIndexSet::new(-4).indices(), &[4, 5, 6]);
        assert_eq!(ExceptionalIndexSet::new(0).indices(), &[2]);
        assert_eq!(ExceptionalIndexSet::new(-2).indices(), &[3, 4]);
        assert!(ExceptionalIndexSet::new(1).is_empty());
        assert!(ExceptionalIndexSet::new(2).is_empty());
        assert!(ExceptionalIndexSet::new(-3).is_empty());
        for m in (-12..=0).step_by(2) {
            assert_eq!(ExceptionalIndexSet::new(m).len() as i64, 1 - m / 2);
        }
        assert_eq!(ExceptionalIndexSet::new(-4).partner(4), Some(2));
        assert_eq!(ExceptionalIndexSet::new(-4).partner(3), None);
    }

    #[test]
    fn constants() {
        for m in [-6, -3, 0, 1, 4] {
            assert_eq!(c_constant(0, 0, m), 2 * m);
        }
        assert_eq!(c_constant(0, 2, -4), 0);
        assert_eq!(c_constant(1, 1, 2), 24);
        assert_eq!(c_constant(1, 0, 0), 8);
        assert_eq!(c_constant(2, 0, -4), 0);
        for m in -8..=4 {
            for j in 0..5 {
                for k in 0..8 {
                    let zero = 2 * (k as i64 + j as i64) == -m;
                    assert_eq!(c_constant(j, k, m) == 0, zero);
                }
            }
        }
    }
}
