//! Complexes of projective right modules and minimal projective resolutions
//! by iterated projective covers.
//!
//! A summand `P_v` in a term is a generator at `v`. A map `P_h -> P_g` is
//! left multiplication by an element of `e_g A e_h`, a combination of basis
//! paths from `g` to `h`. Kernels are kept as subspaces of the vertex spaces
//! of the free module they live in.

use crate::algebra::{PathAlgebra, PathRef};
use crate::module::RightModule;
use crate::QuivError;
use exactlin::{Rat, RatMatrix};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// A combination of basis paths from a fixed source to a fixed target,
/// keyed by hom-basis index.
pub type Combination = BTreeMap<usize, Rat>;

#[derive(Clone, Debug, PartialEq)]
pub struct ProjComplex {
    /// `terms[i]` lists the vertex of each indecomposable summand in
    /// homological degree `i`.
    pub terms: Vec<Vec<usize>>,
    /// `differentials[i - 1]` is `d_i`, with rows indexed by `terms[i - 1]`
    /// and columns by `terms[i]`. Entry `(g, h)` lies in `e_g A e_h`.
    pub differentials: Vec<Vec<Vec<Combination>>>,
    /// Images in the resolved module of the degree-0 generators, when the
    /// complex is a resolution.
    pub augmentation: Option<Vec<Vec<Rat>>>,
}

/// Basis of the vertex space at `w` of `⊕ P_{gens[g]}`: pairs of a
/// generator and a hom-basis index from its vertex to `w`.
fn free_basis(alg: &PathAlgebra, gens: &[usize], w: usize) -> Vec<(usize, usize)> {
    gens.iter().enumerate().flat_map(|(g, &v)| (0..alg.hom_dim(v, w)).map(move |i| (g, i))).collect()
}

fn free_offsets(alg: &PathAlgebra, gens: &[usize], w: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(gens.len());
    let mut acc = 0;
    for &v in gens {
        out.push(acc);
        acc += alg.hom_dim(v, w);
    }
    out
}

/// Right action of the basis path `p` on a vector of the free module.
fn free_act(alg: &PathAlgebra, gens: &[usize], p: PathRef, vec: &[Rat]) -> Vec<Rat> {
    let from = free_basis(alg, gens, p.source);
    let offsets = free_offsets(alg, gens, p.target);
    let mut out = vec![Rat::zero(); free_basis(alg, gens, p.target).len()];
    for ((g, i), c) in from.into_iter().zip(vec) {
        if c.is_zero() {
            continue;
        }
        let q = PathRef { source: gens[g], target: p.source, index: i };
        let qp = alg.compose(q, p).expect("composites are basis paths");
        out[offsets[g] + qp.index] += c;
    }
    out
}

fn module_act(m: &RightModule, p: PathRef, vec: &[Rat]) -> Vec<Rat> {
    m.action(p).mul_vec(vec)
}

fn identity_basis(dim: usize) -> Vec<Vec<Rat>> {
    (0..dim).map(|i| (0..dim).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect()).collect()
}

fn span_rank(vectors: &[Vec<Rat>], dim: usize) -> usize {
    exactlin::rat::span_rank(vectors, dim)
}

/// Generators of a submodule modulo its radical: for each vertex, vectors of
/// the submodule completing the images of non-identity paths to a basis.
fn top_generators(
    alg: &PathAlgebra,
    ambient_dims: &[usize],
    sub: &[Vec<Vec<Rat>>],
    act: &dyn Fn(PathRef, &[Rat]) -> Vec<Rat>,
) -> Vec<(usize, Vec<Rat>)> {
    let mut gens = Vec::new();
    for v in 0..alg.vertex_count() {
        if sub[v].is_empty() {
            continue;
        }
        let mut span: Vec<Vec<Rat>> = Vec::new();
        for p in alg.paths_into(v) {
            if !alg.is_identity(p) {
                span.extend(sub[p.source].iter().map(|b| act(p, b)));
            }
        }
        let dim = ambient_dims[v];
        if !span.is_empty() {
            let (r, pivots) = RatMatrix::from_rows(&span, dim).rref();
            span = (0..pivots.len()).map(|i| r.row(i)).collect();
        }
        let mut rank = span.len();
        for b in &sub[v] {
            span.push(b.clone());
            let next = span_rank(&span, dim);
            if next > rank {
                rank = next;
                gens.push((v, b.clone()));
            } else {
                span.pop();
            }
        }
    }
    gens
}

/// Matrix at vertex `w` of the map `⊕ P_{gens} -> ambient` sending each
/// generator to its vector.
fn cover_matrix(
    alg: &PathAlgebra,
    gens: &[(usize, Vec<Rat>)],
    ambient_dim: usize,
    w: usize,
    act: &dyn Fn(PathRef, &[Rat]) -> Vec<Rat>,
) -> RatMatrix {
    let vertices: Vec<usize> = gens.iter().map(|g| g.0).collect();
    let basis = free_basis(alg, &vertices, w);
    let mut m = RatMatrix::zeros(ambient_dim, basis.len());
    for (j, (g, i)) in basis.into_iter().enumerate() {
        let q = PathRef { source: gens[g].0, target: w, index: i };
        for (r, x) in act(q, &gens[g].1).into_iter().enumerate() {
            m.set(r, j, x);
        }
    }
    m
}

/// Projective cover of `m`: the vertices of the summands `P_v` (one per
/// basis vector of the top `M_v / rad M_v`) and the images of their
/// generators in `M`.
pub fn projective_cover(alg: &PathAlgebra, m: &RightModule) -> (Vec<usize>, Vec<Vec<Rat>>) {
    let sub: Vec<Vec<Vec<Rat>>> = m.dims.iter().map(|&d| identity_basis(d)).collect();
    let act = |p: PathRef, v: &[Rat]| module_act(m, p, v);
    top_generators(alg, &m.dims, &sub, &act).into_iter().unzip()
}

/// Minimal projective resolution of `m` by iterated projective covers of
/// kernels. Fails if the resolution would be longer than `bound`.
pub fn minimal_projective_resolution(alg: &PathAlgebra, m: &RightModule, bound: usize) -> Result<ProjComplex, QuivError> {
    let n = alg.vertex_count();
    let module_action = |p: PathRef, v: &[Rat]| module_act(m, p, v);
    let sub: Vec<Vec<Vec<Rat>>> = m.dims.iter().map(|&d| identity_basis(d)).collect();
    let gens = top_generators(alg, &m.dims, &sub, &module_action);
    let mut terms = vec![gens.iter().map(|g| g.0).collect::<Vec<_>>()];
    let augmentation = gens.iter().map(|g| g.1.clone()).collect();
    let mut kernel: Vec<Vec<Vec<Rat>>> =
        (0..n).map(|w| cover_matrix(alg, &gens, m.dims[w], w, &module_action).nullspace()).collect();
    let mut differentials = Vec::new();
    while kernel.iter().any(|k| !k.is_empty()) {
        if terms.len() > bound {
            return Err(QuivError::LengthBoundExceeded { bound });
        }
        let prev = terms.last().unwrap().clone();
        let dims: Vec<usize> = (0..n).map(|w| free_basis(alg, &prev, w).len()).collect();
        let act = |p: PathRef, v: &[Rat]| free_act(alg, &prev, p, v);
        let gens = top_generators(alg, &dims, &kernel, &act);
        let mut d = vec![vec![Combination::new(); gens.len()]; prev.len()];
        for (h, (v, vec)) in gens.iter().enumerate() {
            for ((g, i), c) in free_basis(alg, &prev, *v).into_iter().zip(vec) {
                if !c.is_zero() {
                    d[g][h].insert(i, c.clone());
                }
            }
        }
        kernel = (0..n).map(|w| cover_matrix(alg, &gens, dims[w], w, &act).nullspace()).collect();
        terms.push(gens.iter().map(|g| g.0).collect());
        differentials.push(d);
    }
    Ok(ProjComplex { terms, differentials, augmentation: Some(augmentation) })
}

impl ProjComplex {
    pub fn length(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }

    /// Matrix at vertex `w` of `d_i` for `1 <= i <= length`.
    pub fn differential_at(&self, alg: &PathAlgebra, i: usize, w: usize) -> RatMatrix {
        let (rows_gens, cols_gens) = (&self.terms[i - 1], &self.terms[i]);
        let rows = free_basis(alg, rows_gens, w);
        let cols = free_basis(alg, cols_gens, w);
        let offsets = free_offsets(alg, rows_gens, w);
        let mut m = RatMatrix::zeros(rows.len(), cols.len());
        let d = &self.differentials[i - 1];
        for (j, (h, qi)) in cols.into_iter().enumerate() {
            let q = PathRef { source: cols_gens[h], target: w, index: qi };
            for (g, row) in d.iter().enumerate() {
                for (&pi, c) in &row[h] {
                    let p = PathRef { source: rows_gens[g], target: cols_gens[h], index: pi };
                    let pq = alg.compose(p, q).expect("composites are basis paths");
                    let r = offsets[g] + pq.index;
                    let v = m.get(r, j) + c;
                    m.set(r, j, v);
                }
            }
        }
        m
    }

    /// `d_{i-1} ∘ d_i = 0` computed in the algebra.
    pub fn d_squared_zero(&self, alg: &PathAlgebra) -> bool {
        for i in 2..=self.length() {
            let (outer, inner) = (&self.differentials[i - 2], &self.differentials[i - 1]);
            for (g, row) in outer.iter().enumerate() {
                for k in 0..self.terms[i].len() {
                    let mut sum = Combination::new();
                    for (h, entry) in row.iter().enumerate() {
                        for (&a, x) in entry {
                            for (&b, y) in &inner[h][k] {
                                let p = PathRef { source: self.terms[i - 2][g], target: self.terms[i - 1][h], index: a };
                                let q = PathRef { source: self.terms[i - 1][h], target: self.terms[i][k], index: b };
                                let pq = alg.compose(p, q).expect("composites are basis paths");
                                *sum.entry(pq.index).or_insert_with(Rat::zero) += x * y;
                            }
                        }
                    }
                    if sum.values().any(|c| !c.is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// No differential entry has a nonzero identity-path coefficient.
    pub fn is_minimal(&self, alg: &PathAlgebra) -> bool {
        self.differentials.iter().enumerate().all(|(i, d)| {
            d.iter().enumerate().all(|(g, row)| {
                row.iter().enumerate().all(|(h, entry)| {
                    let (s, t) = (self.terms[i][g], self.terms[i + 1][h]);
                    s != t || entry.get(&alg.identity(s).index).is_none_or(|c| c.is_zero())
                })
            })
        })
    }

    /// Dimensions of the homology at each degree and vertex, ignoring the
    /// augmentation.
    pub fn homology_dims(&self, alg: &PathAlgebra) -> Vec<Vec<usize>> {
        let n = alg.vertex_count();
        let ranks: Vec<Vec<usize>> =
            (1..=self.length()).map(|i| (0..n).map(|w| self.differential_at(alg, i, w).rank()).collect()).collect();
        (0..self.terms.len())
            .map(|i| {
                (0..n)
                    .map(|w| {
                        let dim = free_basis(alg, &self.terms[i], w).len();
                        let out = if i == 0 { 0 } else { ranks[i - 1][w] };
                        let inc = ranks.get(i).map_or(0, |r| r[w]);
                        dim - out - inc
                    })
                    .collect()
            })
            .collect()
    }

    /// The complex with its augmentation is an exact resolution of `m`.
    pub fn resolves(&self, alg: &PathAlgebra, m: &RightModule) -> bool {
        let Some(aug) = &self.augmentation else { return false };
        let gens: Vec<(usize, Vec<Rat>)> = self.terms[0].iter().copied().zip(aug.iter().cloned()).collect();
        let act = |p: PathRef, v: &[Rat]| module_act(m, p, v);
        let homology = self.homology_dims(alg);
        (0..alg.vertex_count()).all(|w| {
            let eps = cover_matrix(alg, &gens, m.dims[w], w, &act);
            let surjective = eps.rank() == m.dims[w];
            let zero_ok = homology[0][w] == m.dims[w];
            let higher_ok = homology.iter().skip(1).all(|h| h[w] == 0);
            surjective && zero_ok && higher_ok
        }) && self.d_squared_zero(alg)
            && self.augmentation_kills_image(alg, m)
    }

    fn augmentation_kills_image(&self, alg: &PathAlgebra, m: &RightModule) -> bool {
        if self.length() == 0 {
            return true;
        }
        let aug = self.augmentation.as_ref().unwrap();
        let gens: Vec<(usize, Vec<Rat>)> = self.terms[0].iter().copied().zip(aug.iter().cloned()).collect();
        let act = |p: PathRef, v: &[Rat]| module_act(m, p, v);
        (0..alg.vertex_count()).all(|w| cover_matrix(alg, &gens, m.dims[w], w, &act).mul(&self.differential_at(alg, 1, w)).is_zero())
    }

    /// The dual complex `Hom_A(-, A)`, a complex of projectives over the
    /// opposite algebra: terms in reverse order and transposed
    /// differentials, each entry keeping its basis path.
    pub fn dual(&self) -> ProjComplex {
        let len = self.length();
        let terms: Vec<Vec<usize>> = self.terms.iter().rev().cloned().collect();
        let differentials = (1..=len)
            .map(|j| {
                let d = &self.differentials[len - j];
                let (rows, cols) = (d.len(), self.terms[len - j + 1].len());
                (0..cols).map(|h| (0..rows).map(|g| d[g][h].clone()).collect()).collect()
            })
            .collect();
        ProjComplex { terms, differentials, augmentation: None }
    }

    /// Multiplicity of each vertex in each degree.
    pub fn multiplicities(&self, vertices: usize) -> Vec<Vec<usize>> {
        self.terms
            .iter()
            .map(|t| {
                let mut m = vec![0; vertices];
                for &v in t {
                    m[v] += 1;
                }
                m
            })
            .collect()
    }
}
