use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::linalg::modp::{self, ModpMatrix};
use crate::linalg::{EchelonBuilder, RowSpace, SparseMatrix, SparseVector, Subspace, Superspace};
use crate::rational::Rational;
use crate::superpoly::Parity;

/// Seed used for probe vectors unless another one is given.
pub const DEFAULT_SEED: u64 = 20_240_229;

fn flatten(m: &SparseMatrix) -> SparseVector {
    let rows = m.rows();
    let mut entries = Vec::new();
    for (c, col) in m.columns().iter().enumerate() {
        for (r, v) in col.entries() {
            entries.push((c * rows + r, v.clone()));
        }
    }
    SparseVector::from_pairs(entries)
}

/// Indices `(i, j)` of a set of `L_ij` generating the span of all `L_ij`
/// under supercommutators. Starts from the `L_{i,i+1}` and adds missing
/// `L_ij` until the generated algebra, computed on `𝒫_1` where the action
/// is faithful, is everything. Submodules and commutants only need these.
pub fn lie_generator_indices(space: &Superspace) -> Vec<(usize, usize)> {
    let cfg = *space.config();
    let d = cfg.num_vars();
    let all: Vec<((usize, usize), Parity, SparseMatrix)> = (1..=d)
        .flat_map(|i| (i..=d).map(move |j| (i, j)))
        .map(|(i, j)| {
            let m = (*space.lij(i, j, 1).expect("valid indices")).clone();
            ((i, j), cfg.parity(i).add(cfg.parity(j)), m)
        })
        .collect();
    let full = RowSpace::from_rows(
        d * d,
        &all.iter().map(|(_, _, m)| flatten(m)).collect::<Vec<_>>(),
    );

    let mut chosen: Vec<(usize, usize)> = (1..d).map(|i| (i, i + 1)).collect();
    loop {
        let gens: Vec<(&SparseMatrix, Parity)> = all
            .iter()
            .filter(|(ij, _, _)| chosen.contains(ij))
            .map(|(_, p, m)| (m, *p))
            .collect();
        let mut builder = EchelonBuilder::new(d * d);
        let mut elements: Vec<(SparseMatrix, Parity)> = Vec::new();
        for (m, p) in &gens {
            if builder.insert(&flatten(m)) {
                elements.push(((*m).clone(), *p));
            }
        }
        // iterated brackets [g, x] span the generated algebra
        let mut next = 0;
        while next < elements.len() {
            let (x, px) = elements[next].clone();
            for (g, pg) in &gens {
                let sign = Rational::from_integer(pg.koszul_sign(px));
                let bracket = g.mul(&x).sub(&x.mul(g).scale(&sign));
                if builder.insert(&flatten(&bracket)) {
                    elements.push((bracket, pg.add(px)));
                }
            }
            next += 1;
        }
        let generated = builder.into_row_space();
        if generated.dim() == full.dim() {
            return chosen;
        }
        let missing = all
            .iter()
            .find(|(_, _, m)| !generated.contains(&flatten(m)))
            .expect("some L_ij outside the generated algebra")
            .0;
        chosen.push(missing);
        chosen.sort_unstable();
    }
}

/// Matrices on `𝒫_k` of the generating `L_ij`.
pub fn generator_matrices(space: &Superspace, k: usize) -> Vec<Arc<SparseMatrix>> {
    lie_generator_indices(space)
        .into_iter()
        .map(|(i, j)| space.lij(i, j, k).expect("valid indices"))
        .collect()
}

/// Span of `seeds` under repeated application of `gens`, stopping once
/// `bound` dimensions are reached.
fn spin_up(
    ncols: usize,
    gens: &[SparseMatrix],
    seeds: &[SparseVector],
    bound: Option<usize>,
) -> RowSpace {
    let mut builder = EchelonBuilder::new(ncols);
    let mut queue: VecDeque<SparseVector> = VecDeque::new();
    for v in seeds {
        if builder.insert(v) {
            queue.push_back(v.clone());
        }
    }
    let full = |b: &EchelonBuilder| bound.is_some_and(|d| b.dim() >= d);
    'outer: while let Some(v) = queue.pop_front() {
        if full(&builder) {
            break;
        }
        for g in gens {
            let w = g.mul_vec(&v);
            if !w.is_zero() && builder.insert(&w) {
                queue.push_back(w);
                if full(&builder) {
                    break 'outer;
                }
            }
        }
    }
    builder.into_row_space()
}

/// The `osp(m|2n)`-submodule of `𝒫_k` generated by `s`.
pub fn module_closure(space: &Superspace, s: &Subspace) -> Subspace {
    let k = s.degree();
    let gens: Vec<SparseMatrix> = generator_matrices(space, k)
        .iter()
        .map(|g| (**g).clone())
        .collect();
    let rows = spin_up(space.dim(k), &gens, s.basis_vectors(), None);
    Subspace::new(*space.config(), k, rows)
}

/// The submodule generated by `v` inside an invariant `within ∋ v`.
pub fn closure_within(space: &Superspace, v: &SparseVector, within: &Subspace) -> Subspace {
    let restricted = Restricted::new(space, within);
    if restricted.fills(&[restricted.coords(v)], within.dim()) {
        return within.clone();
    }
    let rows = restricted.closure(&[restricted.coords(v)], Some(within.dim()));
    restricted.to_ambient(&rows)
}

/// Whether every `L_ij` maps `v` into itself.
pub fn is_submodule(space: &Superspace, v: &Subspace) -> bool {
    generator_matrices(space, v.degree())
        .iter()
        .all(|g| v.is_invariant_under(g))
}

/// Matrix of an operator preserving `v`, in the coordinates of the basis
/// of `v`; `None` if `v` is not preserved.
pub fn restrict(v: &Subspace, mx: &SparseMatrix) -> Option<SparseMatrix> {
    let columns = v
        .basis_vectors()
        .iter()
        .map(|b| {
            v.row_space()
                .coordinates(&mx.mul_vec(b))
                .map(|c| SparseVector::from_dense(&c))
        })
        .collect::<Option<Vec<_>>>()?;
    Some(SparseMatrix::from_columns(v.dim(), columns))
}

/// The generators acting on an invariant subspace, in its own coordinates.
struct Restricted<'a> {
    v: &'a Subspace,
    gens: Vec<SparseMatrix>,
    modp: Option<Vec<ModpMatrix>>,
}

impl<'a> Restricted<'a> {
    fn new(space: &Superspace, v: &'a Subspace) -> Self {
        let gens = generator_matrices(space, v.degree())
            .iter()
            .map(|g| restrict(v, g).expect("invariant subspace"))
            .collect::<Vec<_>>();
        let modp = gens.iter().map(ModpMatrix::reduce).collect();
        Restricted { v, gens, modp }
    }

    /// Whether the seeds provably generate a module of dimension `dim`,
    /// given that their closure has dimension at most `dim`.
    fn fills(&self, seeds: &[SparseVector], dim: usize) -> bool {
        let Some(gens) = &self.modp else { return false };
        let d = self.v.dim();
        let Some(reduced) = seeds
            .iter()
            .map(|s| modp::reduce_vector(s, d))
            .collect::<Option<Vec<_>>>()
        else {
            return false;
        };
        modp::spin_dim(d, gens, reduced, dim) == dim
    }

    fn coords(&self, x: &SparseVector) -> SparseVector {
        SparseVector::from_dense(
            &self
                .v
                .row_space()
                .coordinates(x)
                .expect("vector in subspace"),
        )
    }

    fn closure(&self, seeds: &[SparseVector], bound: Option<usize>) -> RowSpace {
        spin_up(self.v.dim(), &self.gens, seeds, bound)
    }

    fn to_ambient(&self, rows: &RowSpace) -> Subspace {
        let basis = self.v.basis_vectors();
        let vectors: Vec<SparseVector> = rows
            .rows()
            .iter()
            .map(|c| {
                let mut acc = SparseVector::zero();
                for (i, x) in c.entries() {
                    acc = acc.add_scaled(x, &basis[*i]);
                }
                acc
            })
            .collect();
        Subspace::from_vectors(*self.v.config(), self.v.degree(), &vectors)
    }
}

/// A random combination of `basis` with small integer coefficients.
pub fn random_vector(basis: &[SparseVector], rng: &mut ChaCha8Rng) -> SparseVector {
    let mut acc = SparseVector::zero();
    for b in basis {
        let c: i64 = rng.gen_range(-5..=5);
        if c != 0 {
            acc = acc.add_scaled(&Rational::from_integer(c), b);
        }
    }
    acc
}

/// Where a probe vector came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeSource {
    BasisVector,
    Distinguished,
    Random,
}

#[derive(Debug, Clone)]
pub struct Probe {
    pub source: ProbeSource,
    pub vector: SparseVector,
    /// Index into [`LatticeProbe::modules`].
    pub generates: usize,
}

/// Distinct submodules found by closing probe vectors, ordered by
/// dimension. The zero module is always listed first.
#[derive(Debug, Clone)]
pub struct LatticeProbe {
    pub modules: Vec<Subspace>,
    /// `(a, b)` whenever `modules[a] ⊊ modules[b]`.
    pub inclusions: Vec<(usize, usize)>,
    pub probes: Vec<Probe>,
}

impl LatticeProbe {
    pub fn dims(&self) -> Vec<usize> {
        self.modules.iter().map(Subspace::dim).collect()
    }

    /// Whether the probed modules form a chain under inclusion.
    pub fn is_chain(&self) -> bool {
        let n = self.modules.len();
        self.inclusions.len() == n * n.saturating_sub(1) / 2
    }

    pub fn position(&self, s: &Subspace) -> Option<usize> {
        self.modules.iter().position(|m| m == s)
    }
}

/// Closes every basis vector of `v`, the given distinguished subspaces
/// intersected with `v`, and `probes` seeded random vectors of `v`.
/// `v` must be a submodule.
pub fn submodule_lattice_probe(
    space: &Superspace,
    v: &Subspace,
    distinguished: &[&Subspace],
    probes: usize,
    seed: u64,
) -> LatticeProbe {
    let restricted = Restricted::new(space, v);
    let d = v.dim();
    // modules in the coordinates of v; v itself serves as a bound only
    let mut modules: Vec<RowSpace> = vec![RowSpace::zero(d), RowSpace::full(d)];
    let mut jobs: Vec<(ProbeSource, SparseVector, Vec<SparseVector>)> = Vec::new();
    for (i, b) in v.basis_vectors().iter().enumerate() {
        jobs.push((
            ProbeSource::BasisVector,
            b.clone(),
            vec![SparseVector::unit(i)],
        ));
    }
    for dist in distinguished {
        let Ok(meet) = dist.intersect(v) else {
            continue;
        };
        let seeds = meet
            .basis_vectors()
            .iter()
            .map(|x| restricted.coords(x))
            .collect();
        let first = meet.basis_vectors().first().cloned().unwrap_or_default();
        jobs.push((ProbeSource::Distinguished, first, seeds));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..probes {
        let r = random_vector(v.basis_vectors(), &mut rng);
        let seeds = vec![restricted.coords(&r)];
        jobs.push((ProbeSource::Random, r, seeds));
    }

    // Each closure is found against a snapshot of the known modules; the
    // result does not depend on the snapshot, so chunks run in parallel and
    // are merged in probe order.
    let close = |modules: &[RowSpace], seeds: &[SparseVector]| -> Result<usize, RowSpace> {
        // the closure lies in every known module holding the seeds
        let (smallest, bound) = modules
            .iter()
            .enumerate()
            .filter(|(_, m)| seeds.iter().all(|s| m.contains(s)))
            .map(|(i, m)| (i, m.dim()))
            .min_by_key(|&(_, dim)| dim)
            .expect("v contains the seeds");
        if restricted.fills(seeds, bound) {
            Ok(smallest)
        } else {
            Err(restricted.closure(seeds, Some(bound)))
        }
    };
    let mut found: Vec<Probe> = Vec::with_capacity(jobs.len());
    let mut chunk = 1;
    let mut rest = jobs.as_slice();
    while !rest.is_empty() {
        let (now, later) = rest.split_at(chunk.min(rest.len()));
        let snapshot = &modules;
        let results: Vec<Result<usize, RowSpace>> = now
            .par_iter()
            .map(|(_, _, seeds)| close(snapshot, seeds))
            .collect();
        for ((source, vector, _), r) in now.iter().zip(results) {
            let idx = r.unwrap_or_else(|m| {
                modules.iter().position(|x| *x == m).unwrap_or_else(|| {
                    modules.push(m);
                    modules.len() - 1
                })
            });
            found.push(Probe {
                source: *source,
                vector: vector.clone(),
                generates: idx,
            });
        }
        rest = later;
        chunk = (chunk * 2).min(64);
    }

    let used: BTreeSet<usize> = found.iter().map(|p| p.generates).chain([0]).collect();
    let kept: Vec<(usize, Subspace)> = used
        .iter()
        .map(|&i| (i, restricted.to_ambient(&modules[i])))
        .collect();
    // sort by dimension, then by representation for determinism
    let mut order: Vec<usize> = (0..kept.len()).collect();
    order.sort_by(|&a, &b| {
        let (x, y) = (&kept[a].1, &kept[b].1);
        x.dim()
            .cmp(&y.dim())
            .then_with(|| x.pivots().cmp(y.pivots()))
    });
    let mut new_index = vec![usize::MAX; modules.len()];
    for (new, &k) in order.iter().enumerate() {
        new_index[kept[k].0] = new;
    }
    let sorted: Vec<Subspace> = order.iter().map(|&k| kept[k].1.clone()).collect();
    for p in &mut found {
        p.generates = new_index[p.generates];
    }
    let mut inclusions = Vec::new();
    for a in 0..sorted.len() {
        for b in a + 1..sorted.len() {
            if sorted[a].dim() < sorted[b].dim()
                && sorted[a].is_subspace_of(&sorted[b]).expect("same ambient")
            {
                inclusions.push((a, b));
            }
        }
    }
    LatticeProbe {
        modules: sorted,
        inclusions,
        probes: found,
    }
}
