//! The subtorus `V = v̄⁻¹(0)` of the mirror torus, where `v = f^∨`.

use crate::StrataError;
use exactlin::{integer_kernel, ratio, smith_normal_form, small_vec, IntMatrix, Rat};
use num_traits::ToPrimitive;
use toricdata::{dual_map, LatticeSES, ToricMorphism};

/// `V` as a finite union of translated rational subtori
/// `{ base_points[c] + B t : t ∈ R^dim } mod Z^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubtorusData {
    /// `v = f^∨: M2 -> M1`, an `n1 x n2` matrix.
    pub dual_map: IntMatrix,
    /// Saturated basis `B` of `ker v ∩ Z^n2`; these vectors also span the
    /// deck lattice of each component.
    pub kernel_basis: Vec<Vec<i64>>,
    /// One point per connected component, with coordinates in `[0,1)`.
    pub base_points: Vec<Vec<Rat>>,
}

impl SubtorusData {
    /// The whole torus `T^n`, i.e. `V` for the inclusion of a point.
    pub fn torus(n: usize) -> Self {
        SubtorusData {
            dual_map: IntMatrix::zeros(0, n),
            kernel_basis: (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect(),
            base_points: vec![vec![exactlin::rat(0); n]],
        }
    }

    /// Dimension of `V`.
    pub fn dim(&self) -> usize {
        self.kernel_basis.len()
    }

    /// Dimension of the ambient torus.
    pub fn ambient_dim(&self) -> usize {
        self.dual_map.cols()
    }

    pub fn component_count(&self) -> usize {
        self.base_points.len()
    }

    pub fn is_full_torus(&self) -> bool {
        self.dual_map.rows() == 0
    }

    /// The point `base_points[component] + B t` of `M2_R`.
    pub fn point(&self, component: usize, t: &[Rat]) -> Vec<Rat> {
        let mut p = self.base_points[component].clone();
        for (b, tj) in self.kernel_basis.iter().zip(t) {
            for (pi, &bi) in p.iter_mut().zip(b) {
                *pi += tj * Rat::from_integer(bi.into());
            }
        }
        p
    }
}

/// Computes `V` for a finite morphism into the variety of `ses`.
pub fn subtorus_data(ses: &LatticeSES, f: &ToricMorphism) -> Result<SubtorusData, StrataError> {
    f.check_injective()?;
    let n2 = ses.n;
    if f.target_dim() != n2 {
        return Err(StrataError::DimensionMismatch { expected: n2, found: f.target_dim() });
    }
    if f.source_dim() == 0 {
        return Ok(SubtorusData::torus(n2));
    }
    let v = dual_map(f);
    let kernel_basis: Vec<Vec<i64>> = integer_kernel(&v)
        .iter()
        .map(|b| small_vec(b).expect("kernel entries fit in i64"))
        .collect();

    // v m ∈ Z^n1 with v = U D W: in coordinates m' = W m the condition is
    // d_i m'_i ∈ Z for i < rank, the remaining coordinates being free.
    let snf = smith_normal_form(&v);
    let factors: Vec<i64> = snf.invariant_factors().iter().map(|d| d.to_i64().expect("small invariant factor")).collect();
    let mut residues: Vec<Vec<i64>> = vec![Vec::new()];
    for &d in &factors {
        residues = residues
            .into_iter()
            .flat_map(|r| {
                (0..d).map(move |x| {
                    let mut r = r.clone();
                    r.push(x);
                    r
                })
            })
            .collect();
    }
    let mut base_points: Vec<Vec<Rat>> = residues
        .iter()
        .map(|r| {
            let mut mprime: Vec<Rat> = r.iter().zip(&factors).map(|(&x, &d)| ratio(x, d)).collect();
            mprime.resize(n2, exactlin::rat(0));
            (0..n2)
                .map(|i| {
                    let x: Rat = (0..n2).map(|j| Rat::from_integer(snf.w_inv.get(i, j).clone()) * &mprime[j]).sum();
                    let fl = x.floor();
                    x - fl
                })
                .collect()
        })
        .collect();
    base_points.sort();
    debug_assert!(base_points.iter().all(|p| {
        (0..v.rows()).all(|i| {
            let s: Rat = (0..n2).map(|j| Rat::from_integer(v.get(i, j).clone()) * &p[j]).sum();
            s.is_integer()
        })
    }));
    Ok(SubtorusData { dual_map: v, kernel_basis, base_points })
}
