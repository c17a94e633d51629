//! Exact row reduction.
//!
//! Rows are first split into blocks that share no column (union-find over
//! column supports). Operator matrices on `𝒫_k` respect the finer gradings
//! of the monomial basis, so the blocks are small. Each block is brought to
//! reduced row echelon form over ℚ by sparse Gauss–Jordan elimination.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::sparse::{Accumulator, SparseVector};
use crate::rational::Rational;

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root so block order is deterministic
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// A block: its global columns (ascending) and the indices of its rows.
struct Block {
    cols: Vec<usize>,
    rows: Vec<usize>,
}

fn split_blocks(ncols: usize, rows: &[SparseVector]) -> Vec<Block> {
    let mut uf = UnionFind::new(ncols);
    for row in rows {
        let entries = row.entries();
        for w in entries.windows(2) {
            uf.union(w[0].0, w[1].0);
        }
    }
    let mut by_root: HashMap<usize, usize> = HashMap::new();
    let mut blocks: Vec<Block> = Vec::new();
    for (r, row) in rows.iter().enumerate() {
        let Some((c, _)) = row.leading() else {
            continue;
        };
        let root = uf.find(c);
        let id = *by_root.entry(root).or_insert_with(|| {
            blocks.push(Block {
                cols: Vec::new(),
                rows: Vec::new(),
            });
            blocks.len() - 1
        });
        blocks[id].rows.push(r);
    }
    let mut root_block: Vec<Option<usize>> = vec![None; ncols];
    for (&root, &id) in &by_root {
        root_block[root] = Some(id);
    }
    for c in 0..ncols {
        let root = uf.find(c);
        if let Some(id) = root_block[root] {
            blocks[id].cols.push(c);
        }
    }
    blocks
}

/// Textbook Gauss–Jordan over ℚ, kept as an independent reference.
pub fn rref_naive(rows: &[Vec<Rational>]) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut mat: Vec<Vec<Rational>> = rows.to_vec();
    let nrows = mat.len();
    let ncols = mat.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][c].recip();
        for v in mat[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..nrows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for j in 0..ncols {
                    let d = &f * &mat[r][j];
                    mat[i][j] -= &d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    mat.truncate(r);
    (mat, pivots)
}

fn normalize_single(row: &SparseVector) -> SparseVector {
    let (_, lead) = row.leading().expect("nonzero row");
    let inv = lead.recip();
    row.scale(&inv)
}

/// Canonical RREF of the span of `rows` in `ℚ^ncols`: nonzero rows sorted by
/// pivot, and their pivots.
pub(crate) fn rref_sparse(ncols: usize, rows: &[SparseVector]) -> (Vec<SparseVector>, Vec<usize>) {
    let mut out: Vec<SparseVector> = Vec::new();
    for block in split_blocks(ncols, rows) {
        if block.rows.len() == 1 {
            out.push(normalize_single(&rows[block.rows[0]]));
            continue;
        }
        let mut builder = EchelonBuilder::new(ncols);
        for &r in &block.rows {
            builder.insert(&rows[r]);
        }
        out.extend(builder.rows);
    }
    out.sort_by_key(|r| r.leading().expect("nonzero").0);
    let pivots = out
        .iter()
        .map(|r| r.leading().expect("nonzero").0)
        .collect();
    (out, pivots)
}

/// A subspace of `ℚ^ncols` held in canonical reduced row echelon form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RowSpace {
    ncols: usize,
    rows: Vec<SparseVector>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn from_rows(ncols: usize, rows: &[SparseVector]) -> Self {
        debug_assert!(rows.iter().all(|r| r.max_index().is_none_or(|i| i < ncols)));
        let (rows, pivots) = rref_sparse(ncols, rows);
        RowSpace {
            ncols,
            rows,
            pivots,
        }
    }

    pub fn zero(ncols: usize) -> Self {
        RowSpace {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ncols: usize) -> Self {
        RowSpace {
            ncols,
            rows: (0..ncols).map(SparseVector::unit).collect(),
            pivots: (0..ncols).collect(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// `v` minus its projection along pivot coordinates; zero iff `v` lies
    /// in the space.
    pub fn residual(&self, v: &SparseVector) -> SparseVector {
        let mut acc = Accumulator::new(self.ncols);
        acc.add_scaled(&Rational::one(), v);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if let Some(c) = v.get_ref(p) {
                acc.add_scaled(&-c, row);
            }
        }
        acc.drain()
    }

    pub fn contains(&self, v: &SparseVector) -> bool {
        self.residual(v).is_zero()
    }

    /// Coordinates of `v` with respect to the rows, if `v` is in the space.
    pub fn coordinates(&self, v: &SparseVector) -> Option<Vec<Rational>> {
        self.contains(v)
            .then(|| self.pivots.iter().map(|&p| v.get(p)).collect())
    }

    pub fn sum(&self, other: &RowSpace) -> RowSpace {
        assert_eq!(self.ncols, other.ncols);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        RowSpace::from_rows(self.ncols, &rows)
    }

    /// `{w : ⟨u, w⟩ = 0 for all u}`.
    pub fn annihilator(&self) -> RowSpace {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut parts: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.ncols];
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            for (c, v) in row.entries() {
                if *c != p {
                    parts[*c].push((p, -v));
                }
            }
        }
        let vectors: Vec<SparseVector> = (0..self.ncols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut entries = std::mem::take(&mut parts[f]);
                entries.push((f, Rational::one()));
                SparseVector::from_pairs(entries)
            })
            .collect();
        RowSpace::from_rows(self.ncols, &vectors)
    }

    pub fn intersect(&self, other: &RowSpace) -> RowSpace {
        assert_eq!(self.ncols, other.ncols);
        if self.is_zero() || other.is_zero() {
            return RowSpace::zero(self.ncols);
        }
        self.annihilator().sum(&other.annihilator()).annihilator()
    }

    pub fn is_subspace_of(&self, other: &RowSpace) -> bool {
        self.ncols == other.ncols && self.rows.iter().all(|r| other.contains(r))
    }
}

impl std::fmt::Debug for RowSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RowSpace")
            .field("ncols", &self.ncols)
            .field("rows", &self.rows)
            .finish()
    }
}

/// Incremental reduced row echelon form, for growing a span one vector at a
/// time.
#[derive(Clone, Debug)]
pub struct EchelonBuilder {
    ncols: usize,
    rows: Vec<SparseVector>,
    row_of_pivot: Vec<Option<usize>>,
}

impl EchelonBuilder {
    pub fn new(ncols: usize) -> Self {
        EchelonBuilder {
            ncols,
            rows: Vec::new(),
            row_of_pivot: vec![None; ncols],
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn reduce(&self, v: &SparseVector) -> SparseVector {
        let mut acc = Accumulator::new(self.ncols);
        acc.add_scaled(&Rational::one(), v);
        for (c, x) in v.entries() {
            if let Some(r) = self.row_of_pivot[*c] {
                acc.add_scaled(&-x, &self.rows[r]);
            }
        }
        acc.drain()
    }

    pub fn contains(&self, v: &SparseVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v`; returns `true` if the span grew.
    pub fn insert(&mut self, v: &SparseVector) -> bool {
        let reduced = self.reduce(v);
        let Some((p, lead)) = reduced.leading() else {
            return false;
        };
        let row = reduced.scale(&lead.recip());
        for existing in self.rows.iter_mut() {
            if let Some(f) = existing.get_ref(p) {
                let f = -f;
                *existing = existing.add_scaled(&f, &row);
            }
        }
        self.row_of_pivot[p] = Some(self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn rows(&self) -> &[SparseVector] {
        &self.rows
    }

    pub fn into_row_space(self) -> RowSpace {
        let mut rows = self.rows;
        rows.sort_by_key(|r| r.leading().expect("nonzero").0);
        let pivots = rows
            .iter()
            .map(|r| r.leading().expect("nonzero").0)
            .collect();
        RowSpace {
            ncols: self.ncols,
            rows,
            pivots,
        }
    }
}

/// A basis of `{c : Σ c_i v_i = 0}`.
pub fn linear_relations(ncols: usize, vectors: &[SparseVector]) -> Vec<SparseVector> {
    let mut builder = EchelonBuilder::new(ncols + vectors.len());
    let mut relations = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        let mut entries = v.entries().to_vec();
        entries.push((ncols + i, Rational::one()));
        let reduced = builder.reduce(&SparseVector::from_sorted(entries));
        match reduced.leading() {
            Some((p, _)) if p < ncols => {
                builder.insert(&reduced);
            }
            _ => relations.push(SparseVector::from_sorted(
                reduced
                    .into_entries()
                    .into_iter()
                    .map(|(c, x)| (c - ncols, x))
                    .collect(),
            )),
        }
    }
    relations
}

struct SolverBlock {
    /// Pivot rows: global pivot column, reduced row, and the combination of
    /// input vectors producing it.
    rows: Vec<(usize, SparseVector, Vec<(usize, Rational)>)>,
}

/// Precomputed elimination for expressing many targets in the span of a
/// fixed list of vectors.
pub struct SpanSolver {
    ncols: usize,
    count: usize,
    blocks: Vec<SolverBlock>,
}

impl SpanSolver {
    pub fn new(ncols: usize, vectors: &[SparseVector]) -> Self {
        let mut blocks = Vec::new();
        for block in split_blocks(ncols, vectors) {
            // columns past `ncols` record which inputs make up each row
            let mut builder = EchelonBuilder::new(ncols + vectors.len());
            for &r in &block.rows {
                let mut entries = vectors[r].entries().to_vec();
                entries.push((ncols + r, Rational::one()));
                let reduced = builder.reduce(&SparseVector::from_sorted(entries));
                if reduced.leading().is_some_and(|(p, _)| p < ncols) {
                    builder.insert(&reduced);
                }
            }
            let rows = builder
                .into_row_space()
                .rows
                .into_iter()
                .map(|row| {
                    let (main, combo): (Vec<_>, Vec<_>) = row
                        .into_entries()
                        .into_iter()
                        .partition(|(c, _)| *c < ncols);
                    let combo = combo.into_iter().map(|(c, v)| (c - ncols, v)).collect();
                    (main[0].0, SparseVector::from_sorted(main), combo)
                })
                .collect();
            blocks.push(SolverBlock { rows });
        }
        SpanSolver {
            ncols,
            count: vectors.len(),
            blocks,
        }
    }

    /// Coefficients `c` with `Σ c_i v_i = target`, or `None` when the target
    /// is outside the span.
    pub fn solve(&self, target: &SparseVector) -> Option<Vec<Rational>> {
        let mut residual = Accumulator::new(self.ncols);
        residual.add_scaled(&Rational::one(), target);
        let mut coeffs = vec![Rational::zero(); self.count];
        for block in &self.blocks {
            for (p, row, combo) in &block.rows {
                let Some(c) = target.get_ref(*p) else {
                    continue;
                };
                residual.add_scaled(&-c, row);
                for (i, w) in combo {
                    coeffs[*i] += &(c * w);
                }
            }
        }
        residual.drain().is_zero().then_some(coeffs)
    }
}
