//! Cube and CW stratifications of the mirror torus `T^n = M_R / M` and of
//! subtori `V ⊂ T^n`, computed exactly in a fundamental domain of the deck
//! lattice.

pub mod complex;
pub mod plot;
pub mod subtorus;

pub use complex::{build_complex, Incidence, StratCell, StratComplex, StratumComponent};
pub use subtorus::{subtorus_data, SubtorusData};

use exactlin::{rat, HPolyhedron, PolyError, Rat};
use thiserror::Error;
use toricdata::{LatticeSES, PicClass, ToricError};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum StrataError {
    #[error(transparent)]
    Toric(#[from] ToricError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("morphism targets a lattice of dimension {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// The CW stratification of `ambient`, with cube-strata components attached.
pub fn cw_strata(ses: &LatticeSES, ambient: &SubtorusData) -> Result<StratComplex, StrataError> {
    build_complex(ses, ambient)
}

/// The cube stratification of `ambient`. Its strata are unions of CW cells,
/// so the same complex carries both; the cube strata are
/// [`StratComplex::components`].
pub fn cube_strata(ses: &LatticeSES, ambient: &SubtorusData) -> Result<StratComplex, StrataError> {
    build_complex(ses, ambient)
}

/// Classes of the nonempty cube strata of the torus, ordered by a linear
/// extension of the class order (lexicographic among incomparable classes).
pub fn bondal_classes(ses: &LatticeSES) -> Result<Vec<PicClass>, StrataError> {
    let torus = cube_strata(ses, &SubtorusData::torus(ses.n))?;
    let classes = order_classes(ses, torus.classes());
    Ok(classes.into_iter().map(|c| ses.pic_class(&c)).collect())
}

/// Topological sort of `classes` under `class_leq`, breaking ties
/// lexicographically.
pub fn order_classes(ses: &LatticeSES, mut classes: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    classes.sort();
    classes.dedup();
    let mut out = Vec::with_capacity(classes.len());
    while !classes.is_empty() {
        let pos = (0..classes.len())
            .find(|&i| !classes.iter().enumerate().any(|(j, b)| j != i && ses.class_leq(b, &classes[i])))
            .expect("class order is acyclic");
        out.push(classes.remove(pos));
    }
    out
}

impl StratComplex {
    /// Exit space of a cube-stratum component: `{ Y >= c }` around its
    /// representative lift, a closed bounded polytope in `t`-coordinates.
    pub fn exit_space(&self, comp: &StratumComponent) -> HPolyhedron {
        let mut p = HPolyhedron::new(self.dim);
        for (r, g) in self.directions.iter().enumerate() {
            let normal: Vec<Rat> = g.iter().map(|&x| rat(x)).collect();
            p.ge(normal, rat(comp.corner[r]) - &self.offsets[comp.ambient_component][r]);
        }
        p
    }

    /// Entrance space of a cube-stratum component: `{ Y < c + 1 }`, an open
    /// polytope in `t`-coordinates.
    pub fn entrance_space(&self, comp: &StratumComponent) -> HPolyhedron {
        let mut p = HPolyhedron::new(self.dim);
        for (r, g) in self.directions.iter().enumerate() {
            let normal: Vec<Rat> = g.iter().map(|&x| rat(x)).collect();
            p.lt(normal, rat(comp.corner[r] + 1) - &self.offsets[comp.ambient_component][r]);
        }
        p
    }

    /// Exit space of a CW cell: the closure of its normalized lift.
    pub fn cell_exit_space(&self, cell: &StratCell) -> HPolyhedron {
        cell.polyhedron.closure()
    }
}
