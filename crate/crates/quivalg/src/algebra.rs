//! Finite-dimensional path algebras whose basis paths carry exponent tags.
//!
//! A basis path from `s` to `t` is identified by its tag, a nonnegative
//! exponent vector. Composition `p · q` means "`p`, then `q`" and adds tags,
//! so the composite of two basis paths is again a basis path. Identities are
//! the paths with zero tag from a vertex to itself, and there are no other
//! loops.

use crate::QuivError;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use strata::{StratComplex, StratumComponent};
use toricdata::LatticeSES;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    /// Picard class of the stratum or line bundle.
    pub class: Vec<i64>,
    /// Stratum component for algebras built from a subtorus.
    pub component: Option<usize>,
    pub name: String,
}

/// A basis path: source, target, and index into the hom basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathRef {
    pub source: usize,
    pub target: usize,
    pub index: usize,
}

#[derive(Clone, Debug)]
pub struct PathAlgebra {
    pub vertices: Vec<Vertex>,
    /// Number of exponent coordinates in each tag.
    pub tag_len: usize,
    hom: BTreeMap<(usize, usize), Vec<Vec<i64>>>,
    lookup: HashMap<(usize, usize), HashMap<Vec<i64>, usize>>,
}

impl PathAlgebra {
    /// Builds an algebra from tag lists. Each list is sorted
    /// lexicographically; empty lists are dropped.
    pub fn new(vertices: Vec<Vertex>, tag_len: usize, hom: BTreeMap<(usize, usize), Vec<Vec<i64>>>) -> Self {
        let mut clean = BTreeMap::new();
        let mut lookup = HashMap::new();
        for ((s, t), mut tags) in hom {
            tags.sort();
            tags.dedup();
            if tags.is_empty() {
                continue;
            }
            lookup.insert((s, t), tags.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect());
            clean.insert((s, t), tags);
        }
        PathAlgebra { vertices, tag_len, hom: clean, lookup }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Tags of the basis paths from `s` to `t`.
    pub fn hom_basis(&self, s: usize, t: usize) -> &[Vec<i64>] {
        self.hom.get(&(s, t)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn hom_dim(&self, s: usize, t: usize) -> usize {
        self.hom_basis(s, t).len()
    }

    pub fn tag(&self, p: PathRef) -> &[i64] {
        &self.hom_basis(p.source, p.target)[p.index]
    }

    pub fn find(&self, s: usize, t: usize, tag: &[i64]) -> Option<PathRef> {
        self.lookup.get(&(s, t)).and_then(|m| m.get(tag)).map(|&index| PathRef { source: s, target: t, index })
    }

    pub fn identity(&self, v: usize) -> PathRef {
        self.find(v, v, &vec![0; self.tag_len]).expect("every vertex has an identity path")
    }

    pub fn is_identity(&self, p: PathRef) -> bool {
        p.source == p.target
    }

    /// `p` followed by `q`, when the target of `p` is the source of `q`.
    pub fn compose(&self, p: PathRef, q: PathRef) -> Option<PathRef> {
        if p.target != q.source {
            return None;
        }
        let tag: Vec<i64> = self.tag(p).iter().zip(self.tag(q)).map(|(a, b)| a + b).collect();
        self.find(p.source, q.target, &tag)
    }

    /// All basis paths, ordered by source, target and index.
    pub fn paths(&self) -> Vec<PathRef> {
        self.hom
            .iter()
            .flat_map(|(&(s, t), tags)| (0..tags.len()).map(move |index| PathRef { source: s, target: t, index }))
            .collect()
    }

    /// Basis paths ending at `t`.
    pub fn paths_into(&self, t: usize) -> Vec<PathRef> {
        self.paths().into_iter().filter(|p| p.target == t).collect()
    }

    pub fn dimension(&self) -> usize {
        self.hom.values().map(|v| v.len()).sum()
    }

    /// The same basis with every path reversed.
    pub fn opposite(&self) -> PathAlgebra {
        let hom = self.hom.iter().map(|(&(s, t), tags)| ((t, s), tags.clone())).collect();
        PathAlgebra::new(self.vertices.clone(), self.tag_len, hom)
    }

    /// Every composite of basis paths exists, the only loops are identities,
    /// and composition is associative on all composable triples.
    pub fn check_structure(&self) -> Result<(), QuivError> {
        for v in 0..self.vertex_count() {
            let loops = self.hom_basis(v, v);
            if loops.len() != 1 || loops[0].iter().any(|&x| x != 0) {
                return Err(QuivError::InvalidAlgebra(format!("vertex {v} has loops {loops:?}")));
            }
        }
        let paths = self.paths();
        for &p in &paths {
            if self.tag(p).iter().any(|&x| x < 0) {
                return Err(QuivError::InvalidAlgebra(format!("path {p:?} has a negative tag")));
            }
            for &q in paths.iter().filter(|q| q.source == p.target) {
                let pq = self.compose(p, q).ok_or_else(|| {
                    QuivError::InvalidAlgebra(format!("composite of {p:?} and {q:?} is not a basis path"))
                })?;
                for &r in paths.iter().filter(|r| r.source == q.target) {
                    let left = self.compose(pq, r);
                    let right = self.compose(q, r).and_then(|qr| self.compose(p, qr));
                    if left != right {
                        return Err(QuivError::InvalidAlgebra(format!("associativity fails on {p:?}, {q:?}, {r:?}")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Non-identity basis paths that are not composites of two non-identity
    /// basis paths.
    pub fn arrows(&self) -> Vec<PathRef> {
        let paths = self.paths();
        let decomposable: std::collections::HashSet<PathRef> = paths
            .iter()
            .filter(|p| !self.is_identity(**p))
            .flat_map(|&p| {
                paths
                    .iter()
                    .filter(move |q| q.source == p.target && !self.is_identity(**q))
                    .filter_map(move |&q| self.compose(p, q))
            })
            .collect();
        paths.into_iter().filter(|p| !self.is_identity(*p) && !decomposable.contains(p)).collect()
    }

    /// Quiver presentation: arrows plus a minimal set of relation generators.
    pub fn presentation(&self) -> Presentation {
        crate::presentation::present(self)
    }
}

fn class_name(class: &[i64]) -> String {
    class.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// The algebra of the full strong exceptional collection of line bundles
/// labelled by the cube strata of the torus: vertices are the classes in a
/// linear extension of the class order, and the paths from `[a]` to `[b]`
/// are the Cox monomials of class `b - a`.
pub fn bondal_algebra(ses: &LatticeSES) -> Result<PathAlgebra, QuivError> {
    let classes = strata::bondal_classes(ses)?;
    let vertices: Vec<Vertex> = classes
        .iter()
        .map(|c| Vertex { class: c.class.clone(), component: None, name: format!("[{}]", class_name(&c.class)) })
        .collect();
    let mut hom = BTreeMap::new();
    for (i, a) in classes.iter().enumerate() {
        for (j, b) in classes.iter().enumerate() {
            if !ses.class_leq(&a.class, &b.class) {
                continue;
            }
            let diff: Vec<i64> = b.class.iter().zip(&a.class).map(|(x, y)| x - y).collect();
            let tags: Vec<Vec<i64>> = ses.monomials_of_class(&diff).into_iter().map(|m| m.exponents().to_vec()).collect();
            hom.insert((i, j), tags);
        }
    }
    Ok(PathAlgebra::new(vertices, ses.vars(), hom))
}

/// Exit paths between stratum components of `V`: the basis from `x` to `z`
/// is the set of deck translates of `z`'s lift inside the exit space
/// `{ Y >= c_x }` of `x`'s lift. The tag of a path is the corner difference
/// `c_z + Gλ - c_x`, which is nonnegative.
pub fn exit_algebra(complex: &StratComplex) -> PathAlgebra {
    let comps = &complex.components;
    let vertices: Vec<Vertex> = comps
        .iter()
        .map(|c| Vertex {
            class: c.class.clone(),
            component: Some(c.id),
            name: format!("[{}]#{}", class_name(&c.class), c.id),
        })
        .collect();
    let mut hom = BTreeMap::new();
    for (i, x) in comps.iter().enumerate() {
        for (j, z) in comps.iter().enumerate() {
            if x.ambient_component == z.ambient_component {
                hom.insert((i, j), exit_tags(complex, x, z));
            }
        }
    }
    PathAlgebra::new(vertices, complex.vars, hom)
}

fn exit_tags(complex: &StratComplex, from: &StratumComponent, to: &StratumComponent) -> Vec<Vec<i64>> {
    let mut region = exactlin::HPolyhedron::new(complex.dim);
    for (r, g) in complex.directions.iter().enumerate() {
        let normal = g.iter().map(|&x| exactlin::rat(x)).collect();
        region.ge(normal, exactlin::rat(from.corner[r] - to.corner[r]));
    }
    let points = region.lattice_points().expect("exit spaces are bounded");
    points
        .iter()
        .map(|lambda| {
            let lambda = exactlin::small_vec(lambda).expect("deck translations fit in i64");
            complex.shift_corner(&to.corner, &lambda).iter().zip(&from.corner).map(|(a, b)| a - b).collect()
        })
        .collect()
}

/// A quiver with relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub vertices: Vec<Vertex>,
    pub arrows: Vec<(PathRef, Vec<i64>)>,
    /// Each relation is a combination of arrow words from `source` to
    /// `target`; a word lists arrow indices in traversal order.
    pub relations: Vec<Relation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub source: usize,
    pub target: usize,
    pub terms: Vec<(Vec<usize>, exactlin::Rat)>,
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# quiver v1 vertices={} arrows={} relations={}", self.vertices.len(), self.arrows.len(), self.relations.len())?;
        for (i, v) in self.vertices.iter().enumerate() {
            writeln!(f, "vertex {i} {} class {}", v.name, class_name(&v.class))?;
        }
        for (i, (p, tag)) in self.arrows.iter().enumerate() {
            writeln!(f, "arrow a{i} {} -> {} tag {}", p.source, p.target, class_name(tag))?;
        }
        for r in &self.relations {
            let terms: Vec<String> = r
                .terms
                .iter()
                .map(|(word, c)| {
                    let w: Vec<String> = word.iter().map(|a| format!("a{a}")).collect();
                    format!("{c}*{}", w.join("."))
                })
                .collect();
            writeln!(f, "relation {} -> {} : {}", r.source, r.target, terms.join(" + "))?;
        }
        Ok(())
    }
}
