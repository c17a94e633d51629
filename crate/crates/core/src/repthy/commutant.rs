use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::linalg::{
    linear_relations, EchelonBuilder, RowSpace, SpanSolver, SparseMatrix, SparseVector, Subspace,
    Superspace,
};
use crate::rational::Rational;

use super::module::{generator_matrices, random_vector, restrict, DEFAULT_SEED};

/// Largest module for which the commutant is solved as a plain linear
/// system in `dim²` unknowns when no cyclic vector turns up.
const DIRECT_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdempotentVerdict {
    /// A nontrivial idempotent of the given rank was found.
    Decomposable { rank: usize },
    /// The search was exhaustive and found only `0` and `Id`.
    NoIdempotent,
    /// Commutant too large for an exhaustive search, or not computed.
    Inconclusive { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilpotentData {
    pub rank: usize,
    pub square_zero: bool,
    /// Whether the element was found inside the computed commutant.
    pub in_commutant: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutantCertificate {
    pub module_dim: usize,
    pub commutant_dim: Option<usize>,
    pub verdict: IdempotentVerdict,
    /// `R²Δ` restricted to the module.
    pub nilpotent: Option<NilpotentData>,
    /// `β² + 4α` for a two-dimensional commutant `⟨Id, Y⟩`, `Y² = α + βY`.
    pub discriminant: Option<Rational>,
}

impl CommutantCertificate {
    pub fn indecomposable(&self) -> bool {
        self.verdict == IdempotentVerdict::NoIdempotent
    }
}

/// The algebra of endomorphisms of `v` commuting with every `L_ij`, as
/// matrices in the coordinates of the basis of `v`. `None` when no cyclic
/// vector was found and `v` is too large for the direct system.
pub fn commutant(space: &Superspace, v: &Subspace) -> Option<Vec<SparseMatrix>> {
    let d = v.dim();
    if d == 0 {
        return Some(Vec::new());
    }
    let gens: Vec<SparseMatrix> = generator_matrices(space, v.degree())
        .iter()
        .map(|g| restrict(v, g).expect("invariant subspace"))
        .collect();
    match cyclic_commutant(d, &gens) {
        Some(basis) => Some(basis),
        None if d <= DIRECT_LIMIT => Some(direct_commutant(d, &gens)),
        None => None,
    }
}

fn kernel_of_all(d: usize, gens: &[SparseMatrix], within: &RowSpace) -> RowSpace {
    let mut cur = within.clone();
    for g in gens {
        if cur.is_zero() {
            break;
        }
        // vectors of `cur` killed by g
        let images: Vec<SparseVector> = cur.rows().iter().map(|b| g.mul_vec(b)).collect();
        let rels = linear_relations(d, &images);
        let vectors: Vec<SparseVector> = rels
            .iter()
            .map(|rel| {
                let mut acc = SparseVector::zero();
                for (i, c) in rel.entries() {
                    acc = acc.add_scaled(c, &cur.rows()[*i]);
                }
                acc
            })
            .collect();
        cur = RowSpace::from_rows(d, &vectors);
    }
    cur
}

struct Spin {
    /// `(parent, generator)` for every basis word after the first.
    tree: Vec<Option<(usize, usize)>>,
    vectors: Vec<SparseVector>,
}

/// Spans the module from `v` by breadth-first application of the
/// generators; `None` unless `v` is cyclic.
fn spin(d: usize, gens: &[SparseMatrix], v: &SparseVector) -> Option<Spin> {
    let mut builder = EchelonBuilder::new(d);
    if !builder.insert(v) {
        return None;
    }
    let mut out = Spin {
        tree: vec![None],
        vectors: vec![v.clone()],
    };
    let mut next = 0;
    while next < out.vectors.len() && out.vectors.len() < d {
        for (gi, g) in gens.iter().enumerate() {
            let w = g.mul_vec(&out.vectors[next]);
            if builder.insert(&w) {
                out.tree.push(Some((next, gi)));
                out.vectors.push(w);
                if out.vectors.len() == d {
                    break;
                }
            }
        }
        next += 1;
    }
    (out.vectors.len() == d).then_some(out)
}

/// Candidates for `Xv` narrowed by the generators that kill `v`, then
/// checked by spinning each candidate along the words of `v`.
fn cyclic_commutant(d: usize, gens: &[SparseMatrix]) -> Option<Vec<SparseMatrix>> {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut pool = RowSpace::full(d);
    let mut chosen: Option<(SparseVector, Spin)> = None;
    let try_cyclic = |space: &RowSpace, rng: &mut ChaCha8Rng| -> Option<(SparseVector, Spin)> {
        for attempt in 0..3 {
            let v = if attempt == 0 {
                space.rows().first()?.clone()
            } else {
                random_vector(space.rows(), rng)
            };
            if let Some(s) = spin(d, gens, &v) {
                return Some((v, s));
            }
        }
        None
    };
    if let Some(found) = try_cyclic(&pool, &mut rng) {
        chosen = Some(found);
    }
    chosen.as_ref()?;
    // shrink the pool by generators while a cyclic vector survives
    for g in gens {
        let narrowed = kernel_of_all(d, std::slice::from_ref(g), &pool);
        if narrowed.is_zero() || narrowed.dim() == pool.dim() {
            continue;
        }
        if let Some(found) = try_cyclic(&narrowed, &mut rng) {
            pool = narrowed;
            chosen = Some(found);
        }
    }
    let (v, spun) = chosen?;
    // Xv must be killed by every generator killing v
    let killers: Vec<SparseMatrix> = gens
        .iter()
        .filter(|g| g.mul_vec(&v).is_zero())
        .cloned()
        .collect();
    let candidates = kernel_of_all(d, &killers, &RowSpace::full(d));

    let words = SpanSolver::new(d, &spun.vectors);
    let inverse: Vec<Vec<Rational>> = (0..d)
        .map(|a| words.solve(&SparseVector::unit(a)).expect("basis"))
        .collect();
    let maps: Vec<SparseMatrix> = candidates
        .rows()
        .iter()
        .map(|w| {
            let mut images: Vec<SparseVector> = Vec::with_capacity(d);
            for node in &spun.tree {
                let img = match node {
                    None => w.clone(),
                    Some((parent, gi)) => gens[*gi].mul_vec(&images[*parent]),
                };
                images.push(img);
            }
            let columns = inverse
                .iter()
                .map(|coeffs| {
                    let mut acc = SparseVector::zero();
                    for (c, img) in coeffs.iter().zip(&images) {
                        if !num_traits::Zero::is_zero(c) {
                            acc = acc.add_scaled(c, img);
                        }
                    }
                    acc
                })
                .collect();
            SparseMatrix::from_columns(d, columns)
        })
        .collect();
    Some(commuting_combinations(d, gens, &maps))
}

/// Flattened `[X, G]` for every generator.
fn commutator_defect(d: usize, gens: &[SparseMatrix], x: &SparseMatrix) -> SparseVector {
    let mut entries = Vec::new();
    for (gi, g) in gens.iter().enumerate() {
        let diff = x.mul(g).sub(&g.mul(x));
        for (c, col) in diff.columns().iter().enumerate() {
            for (r, val) in col.entries() {
                entries.push(((gi * d + c) * d + r, val.clone()));
            }
        }
    }
    SparseVector::from_pairs(entries)
}

/// Basis of the combinations of `maps` commuting with every generator.
fn commuting_combinations(
    d: usize,
    gens: &[SparseMatrix],
    maps: &[SparseMatrix],
) -> Vec<SparseMatrix> {
    let defects: Vec<SparseVector> = maps.iter().map(|x| commutator_defect(d, gens, x)).collect();
    let width = gens.len() * d * d;
    let relations = linear_relations(width, &defects);
    let combos: Vec<SparseMatrix> = relations
        .iter()
        .map(|rel| {
            let mut acc = SparseMatrix::zeros(d, d);
            for (i, c) in rel.entries() {
                acc = acc.add(&maps[*i].scale(c));
            }
            acc
        })
        .collect();
    canonical_matrix_basis(d, &combos)
}

fn flatten(d: usize, x: &SparseMatrix) -> SparseVector {
    let mut entries = Vec::new();
    for (c, col) in x.columns().iter().enumerate() {
        for (r, v) in col.entries() {
            entries.push((c * d + r, v.clone()));
        }
    }
    SparseVector::from_pairs(entries)
}

fn unflatten(d: usize, v: &SparseVector) -> SparseMatrix {
    let mut cols: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); d];
    for (i, x) in v.entries() {
        cols[i / d].push((i % d, x.clone()));
    }
    SparseMatrix::from_columns(d, cols.into_iter().map(SparseVector::from_pairs).collect())
}

/// Reduced echelon basis of a space of matrices, for reproducible output.
fn canonical_matrix_basis(d: usize, maps: &[SparseMatrix]) -> Vec<SparseMatrix> {
    let flat: Vec<SparseVector> = maps.iter().map(|x| flatten(d, x)).collect();
    RowSpace::from_rows(d * d, &flat)
        .rows()
        .iter()
        .map(|v| unflatten(d, v))
        .collect()
}

/// Solves `XG = GX` for all generators in the `d²` entries of `X`.
fn direct_commutant(d: usize, gens: &[SparseMatrix]) -> Vec<SparseMatrix> {
    let idx = |r: usize, c: usize| c * d + r;
    let mut rows = Vec::new();
    for g in gens {
        let dense = g.to_dense();
        for a in 0..d {
            for b in 0..d {
                // (XG − GX)_{ab} = Σ_c X_{ac} G_{cb} − Σ_c G_{ac} X_{cb}
                let mut entries = Vec::new();
                for c in 0..d {
                    if !num_traits::Zero::is_zero(&dense[c][b]) {
                        entries.push((idx(a, c), dense[c][b].clone()));
                    }
                    if !num_traits::Zero::is_zero(&dense[a][c]) {
                        entries.push((idx(c, b), -&dense[a][c]));
                    }
                }
                let row = SparseVector::from_pairs(entries);
                if !row.is_zero() {
                    rows.push(row);
                }
            }
        }
    }
    RowSpace::from_rows(d * d, &rows)
        .annihilator()
        .rows()
        .iter()
        .map(|v| unflatten(d, v))
        .collect()
}

/// Searches the commutant of `v` for idempotents other than `0` and `Id`
/// and reports on `R²Δ|_v`. Everything is over ℚ: a two-dimensional
/// commutant whose discriminant is positive but not a rational square has
/// idempotents over ℝ only, and is reported as having none.
pub fn commutant_idempotent_certificate(space: &Superspace, v: &Subspace) -> CommutantCertificate {
    let d = v.dim();
    let k = v.degree();
    let nil = restrict(v, &space.r2_delta(k));
    let basis = commutant(space, v);
    let nilpotent = nil.as_ref().map(|n| NilpotentData {
        rank: crate::linalg::rank(n),
        square_zero: n.mul(n).is_zero(),
        in_commutant: basis.as_ref().is_some_and(|b| {
            let flat: Vec<SparseVector> = b.iter().map(|x| flatten(d, x)).collect();
            RowSpace::from_rows(d * d, &flat).contains(&flatten(d, n))
        }),
    });
    let Some(basis) = basis else {
        return CommutantCertificate {
            module_dim: d,
            commutant_dim: None,
            verdict: IdempotentVerdict::Inconclusive {
                reason: "no cyclic vector found and the module is too large for the direct system"
                    .to_string(),
            },
            nilpotent,
            discriminant: None,
        };
    };
    let (verdict, discriminant) = match basis.len() {
        0 | 1 => (IdempotentVerdict::NoIdempotent, None),
        2 => two_dimensional(d, &basis),
        n => (
            IdempotentVerdict::Inconclusive {
                reason: format!(
                    "commutant has dimension {n}; the search is exhaustive only up to 2"
                ),
            },
            None,
        ),
    };
    CommutantCertificate {
        module_dim: d,
        commutant_dim: Some(basis.len()),
        verdict,
        nilpotent,
        discriminant,
    }
}

/// Idempotents `xId + yY` of the algebra `⟨Id, Y⟩`.
fn two_dimensional(d: usize, basis: &[SparseMatrix]) -> (IdempotentVerdict, Option<Rational>) {
    let id = SparseMatrix::identity(d);
    let fid = flatten(d, &id);
    // a complement of Id inside the commutant
    let y = basis
        .iter()
        .find(|b| !RowSpace::from_rows(d * d, std::slice::from_ref(&fid)).contains(&flatten(d, b)))
        .expect("two-dimensional commutant")
        .clone();
    let fy = flatten(d, &y);
    let solver = SpanSolver::new(d * d, &[fid, fy]);
    let Some(coeffs) = solver.solve(&flatten(d, &y.mul(&y))) else {
        return (
            IdempotentVerdict::Inconclusive {
                reason: "commutant basis is not closed under products".to_string(),
            },
            None,
        );
    };
    let (alpha, beta) = (&coeffs[0], &coeffs[1]);
    let disc = &(beta * beta) + &(&Rational::from_integer(4) * alpha);
    // nontrivial idempotents need (β² + 4α) y² = 1
    let verdict = match disc.sqrt_exact() {
        Some(root) if !num_traits::Zero::is_zero(&root) => {
            let yc = root.recip();
            let xc = (&Rational::from_integer(1) - &(beta * &yc)) * Rational::new(1, 2);
            let e = id.scale(&xc).add(&y.scale(&yc));
            debug_assert_eq!(e.mul(&e), e);
            IdempotentVerdict::Decomposable {
                rank: crate::linalg::rank(&e),
            }
        }
        _ => IdempotentVerdict::NoIdempotent,
    };
    (verdict, Some(disc))
}
