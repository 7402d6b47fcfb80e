//! Fans: rays plus maximal cones, with smoothness and completeness checks.

use crate::ToricError;
use exactlin::{rat, IntMatrix, Rat, RatMatrix};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

impl Fan {
    pub fn new(rays: Vec<Vec<i64>>, max_cones: Vec<Vec<usize>>) -> Self {
        let max_cones = max_cones
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        Fan { rays, max_cones }
    }

    pub fn dim(&self) -> usize {
        self.rays.first().map_or(0, |r| r.len())
    }

    /// Projective space of dimension `n`: rays e_1..e_n and -(e_1+..+e_n).
    pub fn projective_space(n: usize) -> Self {
        let mut rays: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        rays.push(vec![-1; n]);
        let max_cones = (0..=n).map(|skip| (0..=n).filter(|&r| r != skip).collect()).collect();
        Fan::new(rays, max_cones)
    }

    /// Product fan.
    pub fn product(&self, other: &Fan) -> Fan {
        let (a, b) = (self.dim(), other.dim());
        let mut rays = Vec::new();
        for r in &self.rays {
            let mut v = r.clone();
            v.extend(std::iter::repeat_n(0, b));
            rays.push(v);
        }
        for r in &other.rays {
            let mut v = vec![0; a];
            v.extend(r.iter().copied());
            rays.push(v);
        }
        let off = self.rays.len();
        let mut cones = Vec::new();
        for c in &self.max_cones {
            for d in &other.max_cones {
                let mut cone = c.clone();
                cone.extend(d.iter().map(|i| i + off));
                cones.push(cone);
            }
        }
        Fan::new(rays, cones)
    }

    /// Hirzebruch surface fan with rays (1,0), (0,1), (-1,a), (0,-1).
    pub fn hirzebruch(a: i64) -> Fan {
        Fan::new(
            vec![vec![1, 0], vec![0, 1], vec![-1, a], vec![0, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
    }

    /// All cones (faces of maximal cones), each a sorted ray-index set,
    /// including the zero cone.
    pub fn all_cones(&self) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        for c in &self.max_cones {
            for mask in 0u32..(1 << c.len()) {
                let s: Vec<usize> = c.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &r)| r).collect();
                out.insert(s);
            }
        }
        out
    }

    /// A maximal cone containing the cone `cone`.
    pub fn max_cone_containing(&self, cone: &[usize]) -> Option<usize> {
        self.max_cones.iter().position(|m| cone.iter().all(|r| m.contains(r)))
    }

    fn ray_matrix(&self, cone: &[usize]) -> IntMatrix {
        let rows: Vec<Vec<i64>> = cone.iter().map(|&r| self.rays[r].clone()).collect();
        IntMatrix::from_rows_with_cols(&rows, self.dim())
    }

    /// Structural checks, smoothness and completeness.
    pub fn validate(&self) -> Result<(), ToricError> {
        let n = self.dim();
        if self.rays.is_empty() || n == 0 {
            return Err(ToricError::InvalidFan("fan has no rays".into()));
        }
        for (i, r) in self.rays.iter().enumerate() {
            if r.len() != n {
                return Err(ToricError::InvalidFan(format!("ray {i} has length {} instead of {n}", r.len())));
            }
            let g = r.iter().fold(0i64, |g, &x| g.gcd(&x));
            if g != 1 {
                return Err(ToricError::InvalidFan(format!("ray {i} {r:?} is not a primitive nonzero vector")));
            }
        }
        if self.max_cones.is_empty() {
            return Err(ToricError::InvalidFan("fan has no maximal cones".into()));
        }
        for (ci, c) in self.max_cones.iter().enumerate() {
            if let Some(&bad) = c.iter().find(|&&r| r >= self.rays.len()) {
                return Err(ToricError::InvalidFan(format!("cone {ci} references missing ray {bad}")));
            }
            if c.windows(2).any(|w| w[0] == w[1]) {
                return Err(ToricError::InvalidFan(format!("cone {ci} repeats a ray")));
            }
            let snf = exactlin::smith_normal_form(&self.ray_matrix(c));
            let f = snf.invariant_factors();
            if f.len() < c.len() || f.iter().any(|d| !d.is_one()) {
                return Err(ToricError::NotSmooth(format!(
                    "rays of cone {ci} {c:?} do not extend to a lattice basis"
                )));
            }
            if c.len() != n {
                return Err(ToricError::NotComplete(format!("maximal cone {ci} {c:?} is not full-dimensional")));
            }
        }
        self.check_complete()
    }

    fn check_complete(&self) -> Result<(), ToricError> {
        let n = self.dim();
        // Every wall (facet of a maximal cone) lies in exactly two maximal
        // cones, which sit on opposite sides of it.
        let mut walls: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (ci, c) in self.max_cones.iter().enumerate() {
            for skip in 0..c.len() {
                let w: Vec<usize> = c.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &r)| r).collect();
                walls.entry(w).or_default().push(ci);
            }
        }
        for (w, cones) in &walls {
            if cones.len() != 2 {
                return Err(ToricError::NotComplete(format!(
                    "wall {w:?} lies in {} maximal cones instead of 2",
                    cones.len()
                )));
            }
            let side = |ci: usize| -> i64 {
                let extra = self.max_cones[ci].iter().find(|r| !w.contains(r)).copied().unwrap();
                let mut rows: Vec<Vec<i64>> = w.iter().map(|&r| self.rays[r].clone()).collect();
                rows.push(self.rays[extra].clone());
                let d = IntMatrix::from_rows_with_cols(&rows, n).determinant();
                if d.is_positive() {
                    1
                } else {
                    -1
                }
            };
            if side(cones[0]) == side(cones[1]) {
                return Err(ToricError::NotComplete(format!("maximal cones meeting along wall {w:?} overlap")));
            }
        }
        // Covering degree at a generic point must be exactly one.
        let bound = self.rays.iter().flatten().map(|x| x.abs()).max().unwrap_or(1) + 1;
        let mut l = bound;
        let point = loop {
            let p: Vec<Rat> = (0..n as u32).map(|i| rat(l.pow(i))).collect();
            let on_wall = walls.keys().any(|w| {
                let mut rows: Vec<Vec<Rat>> = w.iter().map(|&r| exactlin::to_rat_vec(&self.rays[r])).collect();
                rows.push(p.clone());
                RatMatrix::from_rows(&rows, n).determinant().is_zero()
            });
            if !on_wall {
                break p;
            }
            l += 1;
        };
        let covering = self
            .max_cones
            .iter()
            .filter(|c| {
                let b = RatMatrix::from_int(&self.ray_matrix(c)).transpose();
                match b.solve(&point) {
                    Some(coef) => coef.iter().all(|x| x.is_positive()),
                    None => false,
                }
            })
            .count();
        if covering != 1 {
            return Err(ToricError::NotComplete(format!(
                "a generic point is covered by {covering} maximal cones instead of 1"
            )));
        }
        Ok(())
    }
}
