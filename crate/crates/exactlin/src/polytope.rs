//! Vertices and face lattices of bounded polyhedra (closed constraint systems).

use crate::poly::{Constraint, HPolyhedron, PolyError, Relation};
use crate::rat::{span_rank, RatMatrix};
use crate::Rat;
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Indices into `Polytope::vertices`, ascending.
    pub vertices: Vec<usize>,
    pub dim: usize,
    /// Indices of inequality constraints tight on the whole face.
    pub tight: Vec<usize>,
    /// Indices (into `Polytope::faces`) of the faces of dimension `dim - 1`
    /// contained in this one.
    pub facets: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Polytope {
    pub constraints: Vec<Constraint>,
    pub vertices: Vec<Vec<Rat>>,
    /// Nonempty faces sorted by `(dim, vertices)`; the last one is the polytope.
    pub faces: Vec<Face>,
}

impl Polytope {
    pub fn dim(&self) -> usize {
        self.faces.last().map_or(0, |f| f.dim)
    }

    pub fn top(&self) -> usize {
        self.faces.len() - 1
    }

    /// Average of a face's vertices: a point in its relative interior.
    pub fn barycenter(&self, face: usize) -> Vec<Rat> {
        let vs = &self.faces[face].vertices;
        let n = Rat::from_integer((vs.len() as i64).into());
        let d = self.vertices[0].len();
        (0..d)
            .map(|i| vs.iter().map(|&v| self.vertices[v][i].clone()).sum::<Rat>() / &n)
            .collect()
    }
}

/// Vertices of the closure of `p`, sorted lexicographically. Empty if the
/// closure is empty; error if it is nonempty but has no vertex (unbounded or
/// containing a line).
pub fn vertices(p: &HPolyhedron) -> Result<Vec<Vec<Rat>>, PolyError> {
    let closed = p.closure();
    let d = p.dim();
    let cs = closed.constraints();
    let mut found: BTreeSet<Vec<Rat>> = BTreeSet::new();
    if d == 0 {
        if closed.contains(&[]) {
            found.insert(Vec::new());
        }
    } else {
        for subset in combinations(cs.len(), d) {
            let rows: Vec<Vec<Rat>> = subset.iter().map(|&i| cs[i].normal.clone()).collect();
            let m = RatMatrix::from_rows(&rows, d);
            let Some(inv) = m.inverse() else { continue };
            let rhs: Vec<Rat> = subset.iter().map(|&i| cs[i].offset.clone()).collect();
            let x = inv.mul_vec(&rhs);
            if closed.contains(&x) {
                found.insert(x);
            }
        }
    }
    if found.is_empty() && closed.feasible() {
        return Err(PolyError::Unbounded(0));
    }
    Ok(found.into_iter().collect())
}

/// Face lattice of the closure of `p`, which must be bounded. Returns `None`
/// when the closure is empty.
pub fn face_lattice(p: &HPolyhedron) -> Result<Option<Polytope>, PolyError> {
    let verts = vertices(p)?;
    if verts.is_empty() {
        return Ok(None);
    }
    let closed = p.closure();
    let cs = closed.constraints().to_vec();
    let ineq: Vec<usize> = (0..cs.len()).filter(|&i| cs[i].rel != Relation::Eq).collect();
    let tight_at: Vec<BTreeSet<usize>> =
        verts.iter().map(|v| ineq.iter().copied().filter(|&i| cs[i].is_tight(v)).collect()).collect();

    let all: BTreeSet<usize> = (0..verts.len()).collect();
    let mut sets: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    sets.insert(all.clone());
    for &c in &ineq {
        let s: BTreeSet<usize> = (0..verts.len()).filter(|&v| tight_at[v].contains(&c)).collect();
        if !s.is_empty() {
            sets.insert(s);
        }
    }
    // Close under pairwise intersection.
    loop {
        let list: Vec<BTreeSet<usize>> = sets.iter().cloned().collect();
        let mut grew = false;
        for i in 0..list.len() {
            for j in i + 1..list.len() {
                let s: BTreeSet<usize> = list[i].intersection(&list[j]).copied().collect();
                if !s.is_empty() && sets.insert(s) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }

    let affine_dim = |s: &BTreeSet<usize>| -> usize {
        let base = *s.iter().next().unwrap();
        let diffs: Vec<Vec<Rat>> = s
            .iter()
            .skip(1)
            .map(|&v| verts[v].iter().zip(&verts[base]).map(|(a, b)| a - b).collect())
            .collect();
        if diffs.is_empty() {
            0
        } else {
            span_rank(&diffs, verts[0].len())
        }
    };
    let mut faces: Vec<Face> = sets
        .into_iter()
        .map(|s| {
            let dim = affine_dim(&s);
            let tight: Vec<usize> =
                ineq.iter().copied().filter(|&c| s.iter().all(|&v| tight_at[v].contains(&c))).collect();
            Face { vertices: s.into_iter().collect(), dim, tight, facets: Vec::new() }
        })
        .collect();
    faces.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));
    for i in 0..faces.len() {
        let facets: Vec<usize> = (0..faces.len())
            .filter(|&j| {
                faces[j].dim + 1 == faces[i].dim && faces[j].vertices.iter().all(|v| faces[i].vertices.contains(v))
            })
            .collect();
        faces[i].facets = facets;
    }
    Ok(Some(Polytope { constraints: cs, vertices: verts, faces }))
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
