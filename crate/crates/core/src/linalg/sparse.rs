use std::fmt;

use num_traits::{One, Zero};

use crate::rational::Rational;

/// A sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct SparseVector {
    entries: Vec<(usize, Rational)>,
}

impl SparseVector {
    pub fn zero() -> Self {
        SparseVector {
            entries: Vec::new(),
        }
    }

    pub fn unit(i: usize) -> Self {
        SparseVector {
            entries: vec![(i, Rational::one())],
        }
    }

    /// Builds from arbitrary `(index, value)` pairs, summing duplicates.
    pub fn from_pairs(mut pairs: Vec<(usize, Rational)>) -> Self {
        pairs.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, Rational)> = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            match entries.last_mut() {
                Some((j, w)) if *j == i => *w += &v,
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        SparseVector { entries }
    }

    /// Trusts the caller: indices increasing and values nonzero.
    pub(crate) fn from_sorted(entries: Vec<(usize, Rational)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, v)| !v.is_zero()));
        SparseVector { entries }
    }

    pub fn from_dense(values: &[Rational]) -> Self {
        SparseVector {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Rational)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Rational)> {
        self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Rational {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub(crate) fn get_ref(&self, i: usize) -> Option<&Rational> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|pos| &self.entries[pos].1)
    }

    pub fn leading(&self) -> Option<(usize, &Rational)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SparseVector {
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    /// `self + c·other` by merging.
    pub fn add_scaled(&self, c: &Rational, other: &SparseVector) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() || b < other.entries.len() {
            let ia = self.entries.get(a).map(|e| e.0).unwrap_or(usize::MAX);
            let ib = other.entries.get(b).map(|e| e.0).unwrap_or(usize::MAX);
            if ia < ib {
                out.push(self.entries[a].clone());
                a += 1;
            } else if ib < ia {
                out.push((ib, c * &other.entries[b].1));
                b += 1;
            } else {
                let v = &self.entries[a].1 + &(c * &other.entries[b].1);
                if !v.is_zero() {
                    out.push((ia, v));
                }
                a += 1;
                b += 1;
            }
        }
        SparseVector { entries: out }
    }

    pub fn dot(&self, other: &SparseVector) -> Rational {
        let mut acc = Rational::zero();
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() && b < other.entries.len() {
            let (ia, ib) = (self.entries[a].0, other.entries[b].0);
            if ia < ib {
                a += 1;
            } else if ib < ia {
                b += 1;
            } else {
                acc += &(&self.entries[a].1 * &other.entries[b].1);
                a += 1;
                b += 1;
            }
        }
        acc
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }
}

impl fmt::Debug for SparseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.entries.iter().map(|(i, v)| (i, v)))
            .finish()
    }
}

/// Scratch space for sums of many sparse vectors of one length.
pub(crate) struct Accumulator {
    values: Vec<Rational>,
    touched: Vec<usize>,
    seen: Vec<bool>,
}

impl Accumulator {
    pub(crate) fn new(len: usize) -> Self {
        Accumulator {
            values: vec![Rational::zero(); len],
            touched: Vec::new(),
            seen: vec![false; len],
        }
    }

    pub(crate) fn add(&mut self, i: usize, v: &Rational) {
        if !self.seen[i] {
            self.seen[i] = true;
            self.touched.push(i);
        }
        self.values[i] += v;
    }

    pub(crate) fn add_scaled(&mut self, c: &Rational, v: &SparseVector) {
        for (i, x) in v.entries() {
            self.add(*i, &(c * x));
        }
    }

    /// Collects the nonzero entries and resets the scratch space.
    pub(crate) fn drain(&mut self) -> SparseVector {
        self.touched.sort_unstable();
        let mut entries = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            self.seen[i] = false;
            let v = std::mem::take(&mut self.values[i]);
            if !v.is_zero() {
                entries.push((i, v));
            }
        }
        self.touched.clear();
        SparseVector { entries }
    }
}

/// A column-major sparse matrix over ℚ.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVector>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            columns: vec![SparseVector::zero(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &Rational::one())
    }

    pub fn scalar(n: usize, c: &Rational) -> Self {
        let columns = (0..n)
            .map(|i| {
                if c.is_zero() {
                    SparseVector::zero()
                } else {
                    SparseVector::from_sorted(vec![(i, c.clone())])
                }
            })
            .collect();
        SparseMatrix {
            rows: n,
            cols: n,
            columns,
        }
    }

    pub fn from_columns(rows: usize, columns: Vec<SparseVector>) -> Self {
        assert!(
            columns
                .iter()
                .all(|c| c.max_index().is_none_or(|i| i < rows)),
            "column entry outside {rows} rows"
        );
        SparseMatrix {
            rows,
            cols: columns.len(),
            columns,
        }
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let columns = (0..ncols)
            .map(|c| {
                SparseVector::from_sorted(
                    (0..nrows)
                        .filter(|&r| !rows[r][c].is_zero())
                        .map(|r| (r, rows[r][c].clone()))
                        .collect(),
                )
            })
            .collect();
        SparseMatrix {
            rows: nrows,
            cols: ncols,
            columns,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> &SparseVector {
        &self.columns[c]
    }

    pub fn columns(&self) -> &[SparseVector] {
        &self.columns
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.columns[c].get(r)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(SparseVector::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(SparseVector::is_zero)
    }

    /// First nonzero entry in column-major order, as `(row, col, value)`.
    pub fn first_nonzero(&self) -> Option<(usize, usize, Rational)> {
        self.columns
            .iter()
            .enumerate()
            .find_map(|(c, col)| col.leading().map(|(r, v)| (r, c, v.clone())))
    }

    /// Whether the matrix equals `c·I`.
    pub fn is_scalar(&self, c: &Rational) -> bool {
        self.rows == self.cols && *self == Self::scalar(self.rows, c)
    }

    pub fn mul_vec(&self, v: &SparseVector) -> SparseVector {
        let mut acc = Accumulator::new(self.rows);
        for (c, x) in v.entries() {
            acc.add_scaled(x, &self.columns[*c]);
        }
        acc.drain()
    }

    /// `self · other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut acc = Accumulator::new(self.rows);
        let columns = other
            .columns
            .iter()
            .map(|col| {
                for (c, x) in col.entries() {
                    acc.add_scaled(x, &self.columns[*c]);
                }
                acc.drain()
            })
            .collect();
        SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            columns,
        }
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        self.combine(&Rational::one(), other)
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.combine(&-Rational::one(), other)
    }

    fn combine(&self, c: &Rational, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            columns: self
                .columns
                .iter()
                .zip(&other.columns)
                .map(|(a, b)| a.add_scaled(c, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> SparseMatrix {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            columns: self.columns.iter().map(|v| v.scale(c)).collect(),
        }
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col.entries() {
                rows[*r].push((c, v.clone()));
            }
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            columns: rows.into_iter().map(SparseVector::from_sorted).collect(),
        }
    }

    /// The rows as sparse vectors over the column index.
    pub fn row_vectors(&self) -> Vec<SparseVector> {
        self.transpose().columns
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col.entries() {
                out[*r][c] = v.clone();
            }
        }
        out
    }

    /// Row-major text dump: one line per row, entries as `p/q` separated by
    /// spaces.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for row in self.to_dense() {
            let line: Vec<String> = row
                .iter()
                .map(|v| format!("{}/{}", v.numer(), v.denom()))
                .collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.to_dense() {
            let line: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "  {}", line.join(" "))?;
        }
        write!(f, "]")
    }
}
