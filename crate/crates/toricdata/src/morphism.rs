//! Finite toric morphisms given by an injective lattice map `f: N1 -> N2`.

use crate::{Fan, ToricError};
use exactlin::{rat, HPolyhedron, IntMatrix, Rat, RatMatrix, Relation};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricMorphism {
    /// `n2 x n1` integer matrix.
    pub matrix: IntMatrix,
    pub source_fan: Option<Fan>,
}

impl ToricMorphism {
    pub fn new(matrix: IntMatrix) -> Self {
        ToricMorphism { matrix, source_fan: None }
    }

    pub fn with_source_fan(mut self, fan: Fan) -> Self {
        self.source_fan = Some(fan);
        self
    }

    pub fn from_rows(rows: &[Vec<i64>], source_dim: usize) -> Self {
        ToricMorphism::new(IntMatrix::from_rows_with_cols(rows, source_dim))
    }

    /// The inclusion of a point: the map from the zero lattice.
    pub fn point(target_dim: usize) -> Self {
        ToricMorphism::new(IntMatrix::zeros(target_dim, 0))
    }

    pub fn identity(dim: usize) -> Self {
        ToricMorphism::new(IntMatrix::identity(dim))
    }

    /// `k * identity`.
    pub fn frobenius(dim: usize, k: i64) -> Self {
        let rows: Vec<Vec<i64>> = (0..dim).map(|i| (0..dim).map(|j| if i == j { k } else { 0 }).collect()).collect();
        ToricMorphism::from_rows(&rows, dim)
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn check_injective(&self) -> Result<(), ToricError> {
        let rank = RatMatrix::from_int(&self.matrix).rank();
        if rank < self.source_dim() {
            return Err(ToricError::NotInjective { rank, source_dim: self.source_dim() });
        }
        Ok(())
    }
}

/// `f^∨: M2 -> M1`, the transpose.
pub fn dual_map(f: &ToricMorphism) -> IntMatrix {
    f.matrix.transpose()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Diagnostics {
    pub passed: bool,
    pub messages: Vec<String>,
    /// The first cone found to be unmatched, tagged with the fan it belongs
    /// to (`"source"` or `"target preimage"`).
    pub offending_cone: Option<(String, Vec<usize>)>,
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "finite morphism check: {}", if self.passed { "pass" } else { "FAIL" })?;
        for m in &self.messages {
            writeln!(f, "  {m}")?;
        }
        Ok(())
    }
}

/// Checks that `f` is injective and that `f_R^{-1}(fan2)` equals `fan1` as a
/// set of cones. A missing source fan is accepted only for the point
/// (`n1 = 0`).
pub fn check_finite_morphism(f: &ToricMorphism, fan1: Option<&Fan>, fan2: &Fan) -> Diagnostics {
    let mut d = Diagnostics { passed: true, ..Default::default() };
    if let Err(e) = f.check_injective() {
        d.passed = false;
        d.messages.push(e.to_string());
        return d;
    }
    if f.target_dim() != fan2.dim() {
        d.passed = false;
        d.messages.push(format!("matrix has {} rows but the target fan lives in dimension {}", f.target_dim(), fan2.dim()));
        return d;
    }
    let n1 = f.source_dim();
    if n1 == 0 {
        d.messages.push("source is a point; the preimage fan is the zero cone".into());
        return d;
    }
    let Some(fan1) = fan1 else {
        d.passed = false;
        d.messages.push("source fan not supplied for a positive-dimensional source".into());
        return d;
    };
    if fan1.dim() != n1 {
        d.passed = false;
        d.messages.push(format!("source fan lives in dimension {} but the matrix has {n1} columns", fan1.dim()));
        return d;
    }

    let preimages: Vec<(Vec<usize>, HPolyhedron)> =
        fan2.all_cones().into_iter().map(|tau| (tau.clone(), preimage_cone(f, fan2, &tau))).collect();
    let sources: Vec<(Vec<usize>, HPolyhedron)> =
        fan1.all_cones().into_iter().map(|s| (s.clone(), cone_polyhedron(fan1, &s))).collect();

    for (s, poly) in &sources {
        if !preimages.iter().any(|(_, q)| same_set(poly, q)) {
            d.passed = false;
            d.messages.push(format!("source cone {s:?} is not the preimage of any target cone"));
            d.offending_cone.get_or_insert(("source".into(), s.clone()));
        }
    }
    for (tau, poly) in &preimages {
        if !sources.iter().any(|(_, q)| same_set(poly, q)) {
            d.passed = false;
            d.messages.push(format!("preimage of target cone {tau:?} is not a cone of the source fan"));
            d.offending_cone.get_or_insert(("target preimage".into(), tau.clone()));
        }
    }
    if d.passed {
        d.messages.push(format!(
            "{} source cones match the preimages of {} target cones",
            sources.len(),
            preimages.len()
        ));
    }
    d
}

/// The cone `cone` of `fan`, in H-form via coordinates in a containing
/// maximal cone's basis.
fn cone_polyhedron(fan: &Fan, cone: &[usize]) -> HPolyhedron {
    let n = fan.dim();
    let id = IntMatrix::identity(n);
    coordinate_cone(fan, cone, &RatMatrix::from_int(&id), n)
}

/// `{x in R^n1 : f x in tau}`.
fn preimage_cone(f: &ToricMorphism, fan2: &Fan, tau: &[usize]) -> HPolyhedron {
    coordinate_cone(fan2, tau, &RatMatrix::from_int(&f.matrix), f.source_dim())
}

/// `{x in R^dim : map(x) in cone}` where `cone` is a cone of `fan`.
fn coordinate_cone(fan: &Fan, cone: &[usize], map: &RatMatrix, dim: usize) -> HPolyhedron {
    let n = fan.dim();
    let sigma = &fan.max_cones[fan.max_cone_containing(cone).expect("cone comes from the fan")];
    let rows: Vec<Vec<Rat>> = sigma.iter().map(|&r| exactlin::to_rat_vec(&fan.rays[r])).collect();
    let basis = RatMatrix::from_rows(&rows, n).transpose();
    let inv = basis.inverse().expect("smooth maximal cones are bases");
    let coords = inv.mul(map);
    let mut p = HPolyhedron::new(dim);
    for (i, r) in sigma.iter().enumerate() {
        let row = coords.row(i);
        if cone.contains(r) {
            p.ge(row, rat(0));
        } else {
            p.equal(row, rat(0));
        }
    }
    p
}

fn same_set(a: &HPolyhedron, b: &HPolyhedron) -> bool {
    contained(a, b) && contained(b, a)
}

/// Closed polyhedra: `a ⊆ b` iff `a` misses the complement of each
/// constraint of `b`.
fn contained(a: &HPolyhedron, b: &HPolyhedron) -> bool {
    b.constraints().iter().all(|c| {
        let mut outside = vec![(c.normal.clone(), c.offset.clone())];
        if c.rel == Relation::Eq {
            let neg: Vec<Rat> = c.normal.iter().map(|x| -x).collect();
            outside.push((neg, -c.offset.clone()));
        }
        outside.into_iter().all(|(normal, offset)| {
            let mut q = a.clone();
            q.gt(normal, offset);
            !q.feasible()
        })
    })
}
