//! Right modules over a path algebra.
//!
//! With composition "`p`, then `q`", a right module `M` has vertex spaces
//! `M_v = M e_v`, and a basis path `p: s -> t` acts as a linear map
//! `M_s -> M_t`. The indecomposable projective `P_v = e_v A` has
//! `(P_v)_w = Hom(v -> w)`.

use crate::algebra::{PathAlgebra, PathRef};
use crate::QuivError;
use exactlin::{rat, RatMatrix};
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct RightModule {
    pub dims: Vec<usize>,
    /// Action of each basis path `s -> t` as a `dims[t] × dims[s]` matrix.
    pub actions: BTreeMap<PathRef, RatMatrix>,
}

impl RightModule {
    /// Validates identities and compatibility with composition.
    pub fn new(alg: &PathAlgebra, dims: Vec<usize>, actions: BTreeMap<PathRef, RatMatrix>) -> Result<Self, QuivError> {
        if dims.len() != alg.vertex_count() {
            return Err(QuivError::InvalidModule(format!(
                "{} vertex dimensions for {} vertices",
                dims.len(),
                alg.vertex_count()
            )));
        }
        let m = RightModule { dims, actions };
        for p in alg.paths() {
            let a = m.actions.get(&p).ok_or_else(|| QuivError::InvalidModule(format!("no action for {p:?}")))?;
            if a.rows() != m.dims[p.target] || a.cols() != m.dims[p.source] {
                return Err(QuivError::InvalidModule(format!("action of {p:?} has the wrong shape")));
            }
            if alg.is_identity(p) && *a != RatMatrix::identity(m.dims[p.source]) {
                return Err(QuivError::InvalidModule(format!("identity {p:?} does not act as the identity")));
            }
        }
        for p in alg.paths() {
            for q in alg.paths().into_iter().filter(|q| q.source == p.target) {
                let pq = alg.compose(p, q).expect("composites are basis paths");
                if m.actions[&q].mul(&m.actions[&p]) != m.actions[&pq] {
                    return Err(QuivError::InvalidModule(format!("action of {p:?} then {q:?} is not multiplicative")));
                }
            }
        }
        Ok(m)
    }

    pub fn action(&self, p: PathRef) -> &RatMatrix {
        &self.actions[&p]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// Dimension one at every vertex, every basis path acting as `1`.
pub fn constant_representation(alg: &PathAlgebra) -> RightModule {
    let actions = alg.paths().into_iter().map(|p| (p, RatMatrix::identity(1))).collect();
    RightModule { dims: vec![1; alg.vertex_count()], actions }
}

/// The simple module at `v`.
pub fn simple_module(alg: &PathAlgebra, v: usize) -> RightModule {
    let dims: Vec<usize> = (0..alg.vertex_count()).map(|w| usize::from(w == v)).collect();
    let actions = alg.paths().into_iter().map(|p| (p, RatMatrix::zeros(dims[p.target], dims[p.source]))).collect();
    let mut m = RightModule { dims, actions };
    m.actions.insert(alg.identity(v), RatMatrix::identity(1));
    m
}

/// The indecomposable projective `P_v`, with the basis of `(P_v)_w` given by
/// the hom basis from `v` to `w`.
pub fn projective_module(alg: &PathAlgebra, v: usize) -> RightModule {
    let dims: Vec<usize> = (0..alg.vertex_count()).map(|w| alg.hom_dim(v, w)).collect();
    let mut actions = BTreeMap::new();
    for p in alg.paths() {
        let mut a = RatMatrix::zeros(dims[p.target], dims[p.source]);
        for index in 0..dims[p.source] {
            let q = PathRef { source: v, target: p.source, index };
            let qp = alg.compose(q, p).expect("composites are basis paths");
            a.set(qp.index, index, rat(1));
        }
        actions.insert(p, a);
    }
    RightModule { dims, actions }
}
