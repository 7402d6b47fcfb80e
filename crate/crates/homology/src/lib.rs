//! Rational (co)homology of cell complexes and compactly supported cohomology
//! of half-open convex polytopes.
//!
//! For a half-open convex polytope `C \ F`, with `C` a closed polytope and `F`
//! a closed union of faces of its boundary, `H^i_c(C \ F) = H^i(C, F)`, and
//! since `C` is contractible this equals `H̃^{i-1}(F)`. With the convention
//! `H̃^{-1}(∅) = Q` the formula also covers `F = ∅`.

use exactlin::{rat, Polytope, RatMatrix};
use std::collections::BTreeSet;
use std::fmt;
use strata::{StratComplex, StratumComponent};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum HomologyError {
    #[error("cell {cell} is in the sub-collection but its face {face} is not")]
    NotClosedUnderFaces { cell: usize, face: usize },
    #[error("the removed set contains the whole polytope")]
    RemovedTopCell,
}

/// Betti numbers indexed by degree `0..len`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BettiVector(pub Vec<usize>);

impl BettiVector {
    pub fn zeros(len: usize) -> Self {
        BettiVector(vec![0; len])
    }

    pub fn get(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn add_assign(&mut self, other: &BettiVector) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), 0);
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b;
        }
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn euler(&self) -> i64 {
        self.0.iter().enumerate().map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }

    /// Degrees with nonzero entries.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }

    /// Drops trailing zeros.
    pub fn trimmed(mut self) -> Self {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }
}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|b| b.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A chain complex of a cell complex: `bases[t]` lists the `t`-cells and
/// `boundaries[t]` is the matrix of `∂_t: C_t -> C_{t-1}` (rows indexed by
/// `bases[t-1]`). `boundaries[0]` is the zero map to the zero module.
#[derive(Clone, Debug)]
pub struct CellChainComplex {
    pub bases: Vec<Vec<usize>>,
    pub boundaries: Vec<RatMatrix>,
}

impl CellChainComplex {
    /// The signed cellular chain complex of a stratification.
    pub fn from_strata(complex: &StratComplex) -> Self {
        let top = complex.dim;
        let bases: Vec<Vec<usize>> = (0..=top).map(|d| complex.cells_of_dim(d)).collect();
        let mut boundaries = vec![RatMatrix::zeros(0, bases[0].len())];
        for d in 1..=top {
            let mut m = RatMatrix::zeros(bases[d - 1].len(), bases[d].len());
            for inc in &complex.incidences {
                if complex.cells[inc.cell].dim != d {
                    continue;
                }
                let col = bases[d].iter().position(|&c| c == inc.cell).unwrap();
                let row = bases[d - 1].iter().position(|&c| c == inc.face).unwrap();
                let v = m.get(row, col) + rat(inc.sign);
                m.set(row, col, v);
            }
            boundaries.push(m);
        }
        CellChainComplex { bases, boundaries }
    }

    pub fn top_degree(&self) -> usize {
        self.bases.len().saturating_sub(1)
    }

    /// `∂_{t-1} ∘ ∂_t = 0` for all `t`.
    pub fn is_complex(&self) -> bool {
        (2..self.boundaries.len()).all(|t| self.boundaries[t - 1].mul(&self.boundaries[t]).is_zero())
    }

    /// Ranks of the homology groups over `Q`.
    pub fn homology_ranks(&self) -> BettiVector {
        let ranks: Vec<usize> = self.boundaries.iter().map(|m| m.rank()).collect();
        BettiVector(
            (0..self.bases.len())
                .map(|t| {
                    let next = ranks.get(t + 1).copied().unwrap_or(0);
                    self.bases[t].len() - ranks[t] - next
                })
                .collect(),
        )
    }
}

/// A finite regular cell complex given by its face poset: each cell lists its
/// codimension-one faces.
#[derive(Clone, Debug, Default)]
pub struct FaceComplex {
    pub dims: Vec<usize>,
    pub facets: Vec<Vec<usize>>,
}

impl FaceComplex {
    /// The face complex of a closed polytope (all nonempty faces).
    pub fn from_polytope(poly: &Polytope) -> Self {
        FaceComplex {
            dims: poly.faces.iter().map(|f| f.dim).collect(),
            facets: poly.faces.iter().map(|f| f.facets.clone()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// Checks that `members` is closed under taking facets.
    pub fn check_closed(&self, members: &[bool]) -> Result<(), HomologyError> {
        for (cell, &m) in members.iter().enumerate() {
            if m {
                if let Some(&face) = self.facets[cell].iter().find(|&&f| !members[f]) {
                    return Err(HomologyError::NotClosedUnderFaces { cell, face });
                }
            }
        }
        Ok(())
    }

    /// Reduced rational cohomology of the subcomplex `members` (all cells when
    /// `None`), computed on the order complex of its face poset. Entry `i` of
    /// the result is `dim H̃^i`; the second value is `dim H̃^{-1}`, which is 1
    /// exactly for the empty complex.
    pub fn reduced_cohomology(&self, members: Option<&[bool]>) -> Result<(BettiVector, usize), HomologyError> {
        let all = vec![true; self.len()];
        let members = members.unwrap_or(&all);
        self.check_closed(members)?;
        let cells: Vec<usize> = (0..self.len()).filter(|&c| members[c]).collect();
        if cells.is_empty() {
            return Ok((BettiVector::default(), 1));
        }
        // Strict order: x < y iff x is a proper face of y.
        let below: Vec<BTreeSet<usize>> = {
            let mut below: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.len()];
            let mut order: Vec<usize> = cells.clone();
            order.sort_by_key(|&c| self.dims[c]);
            for &c in &order {
                let mut s = BTreeSet::new();
                for &f in &self.facets[c] {
                    s.insert(f);
                    s.extend(below[f].iter().copied());
                }
                below[c] = s;
            }
            below
        };
        // Chains, grouped by length, each listed bottom to top.
        let mut chains: Vec<Vec<Vec<usize>>> = vec![cells.iter().map(|&c| vec![c]).collect()];
        loop {
            let last = chains.last().unwrap();
            let mut next = Vec::new();
            for ch in last {
                let top = *ch.last().unwrap();
                for &c in &cells {
                    if below[c].contains(&top) {
                        let mut e = ch.clone();
                        e.push(c);
                        next.push(e);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            chains.push(next);
        }
        // Simplicial boundary ranks; degree -1 is the augmentation.
        let mut ranks = vec![1usize];
        for d in 1..chains.len() {
            let index: std::collections::HashMap<&Vec<usize>, usize> =
                chains[d - 1].iter().enumerate().map(|(i, c)| (c, i)).collect();
            let mut m = RatMatrix::zeros(chains[d - 1].len(), chains[d].len());
            for (j, ch) in chains[d].iter().enumerate() {
                for drop in 0..ch.len() {
                    let mut face = ch.clone();
                    face.remove(drop);
                    let sign = if drop % 2 == 0 { 1 } else { -1 };
                    m.set(index[&face], j, rat(sign));
                }
            }
            ranks.push(m.rank());
        }
        let betti = (0..chains.len())
            .map(|d| chains[d].len() - ranks[d] - ranks.get(d + 1).copied().unwrap_or(0))
            .collect();
        Ok((BettiVector(betti), 0))
    }
}

/// `H^*_c(C \ F)` for a closed polytope `C` with face complex `complex` (its
/// last cell the polytope itself) and a closed removed set `F ⊆ ∂C`.
pub fn hc_half_open(complex: &FaceComplex, removed: &[bool]) -> Result<BettiVector, HomologyError> {
    let top = complex.len() - 1;
    if removed[top] {
        return Err(HomologyError::RemovedTopCell);
    }
    let (reduced, minus_one) = complex.reduced_cohomology(Some(removed))?;
    let dim = complex.dims[top];
    let mut out = vec![0; dim + 1];
    out[0] = minus_one;
    for i in 1..=dim {
        out[i] = reduced.get(i - 1);
    }
    Ok(BettiVector(out))
}

/// `H^*_c` of one connected component of a cube stratum.
pub fn hc_component(complex: &StratComplex, comp: &StratumComponent) -> BettiVector {
    let (poly, removed) = complex.component_faces(comp);
    let faces = FaceComplex::from_polytope(&poly);
    let mut v = hc_half_open(&faces, &removed).expect("removed faces form a closed proper subcomplex");
    v.0.resize(complex.dim + 1, 0);
    v
}

/// `H^*_c(S_class ∩ V)`, summed over the components of the stratum, as a
/// vector of length `dim V + 1`.
pub fn hc_stratum(class: &[i64], complex: &StratComplex) -> BettiVector {
    let mut total = BettiVector::zeros(complex.dim + 1);
    for comp in complex.components_of_class(class) {
        total.add_assign(&hc_component(complex, comp));
    }
    total
}
