//! The Picard short exact sequence `0 -> M -> Z^rays -> Pic -> 0`.

use crate::{Fan, ToricError};
use exactlin::{
    cokernel_projection, hermite_normal_form, rat, smith_normal_form, to_rat_vec, HPolyhedron, IntMatrix,
    Rat,
};
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSES {
    pub name: String,
    /// Dimension of `M`.
    pub n: usize,
    /// Picard rank.
    pub k: usize,
    /// `i: M -> Z^(n+k)`; row `r` is the ray `rho_r` as a functional on `M`.
    pub ray_map: IntMatrix,
    /// `pi: Z^(n+k) -> Z^k`, in Hermite normal form.
    pub class_map: IntMatrix,
    /// A right inverse of `class_map`.
    pub section: IntMatrix,
    /// Declared in the input; used only for the uniqueness flag.
    pub product_of_projective_spaces: bool,
    pub fan: Option<Fan>,
}

/// A divisor class with its canonical lift.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PicClass {
    pub class: Vec<i64>,
    pub lift: Vec<i64>,
}

/// An exponent vector with nonnegative entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoxMonomial(Vec<i64>);

impl CoxMonomial {
    pub fn new(exps: Vec<i64>) -> Option<Self> {
        exps.iter().all(|&e| e >= 0).then_some(CoxMonomial(exps))
    }

    pub fn one(vars: usize) -> Self {
        CoxMonomial(vec![0; vars])
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &CoxMonomial) -> CoxMonomial {
        CoxMonomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for CoxMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

pub fn build_ses(fan: &Fan) -> Result<LatticeSES, ToricError> {
    fan.validate()?;
    let mut ses = LatticeSES::from_rays(&fan.rays)?;
    ses.fan = Some(fan.clone());
    Ok(ses)
}

impl LatticeSES {
    /// Builds the sequence from the ray matrix alone (no cone data).
    pub fn from_rays(rays: &[Vec<i64>]) -> Result<Self, ToricError> {
        let n = rays.first().map_or(0, |r| r.len());
        if rays.is_empty() || n == 0 || rays.iter().any(|r| r.len() != n) {
            return Err(ToricError::InvalidFan("ray matrix is empty or ragged".into()));
        }
        let ray_map = IntMatrix::from_rows(rays);
        let snf = smith_normal_form(&ray_map);
        if snf.rank() != n {
            return Err(ToricError::RayMapNotInjective);
        }
        let coker = cokernel_projection(&ray_map);
        if !coker.torsion.is_empty() {
            let t: Vec<String> = coker.torsion.iter().map(|d| d.to_string()).collect();
            return Err(ToricError::TorsionInPicard(t.join(", ")));
        }
        let class_map = hermite_normal_form(&coker.free_projection()).h;
        let k = class_map.rows();
        // Section from the Smith form of pi: pi = U [I 0] W.
        let s = smith_normal_form(&class_map);
        let mut section = IntMatrix::zeros(ray_map.rows(), k);
        for c in 0..k {
            let y = s.u_inv.col(c);
            let mut padded = y.clone();
            padded.resize(ray_map.rows(), Zero::zero());
            let x = s.w_inv.mul_vec(&padded);
            for (r, v) in x.into_iter().enumerate() {
                section.set(r, c, v);
            }
        }
        debug_assert!(class_map.mul(&section) == IntMatrix::identity(k));
        let ses = LatticeSES {
            name: String::new(),
            n,
            k,
            ray_map,
            class_map,
            section,
            product_of_projective_spaces: false,
            fan: None,
        };
        if !ses.effective_cone_strongly_convex() {
            return Err(ToricError::EffectiveConeNotStronglyConvex);
        }
        Ok(ses)
    }

    /// Number of Cox variables, `n + k`.
    pub fn vars(&self) -> usize {
        self.ray_map.rows()
    }

    pub fn rays(&self) -> Vec<Vec<i64>> {
        self.ray_map.to_i64_rows()
    }

    pub fn class_of(&self, a: &[i64]) -> Vec<i64> {
        self.class_map.mul_vec_i64(a)
    }

    /// `i(m)` for an integer point of `M`.
    pub fn embed(&self, m: &[i64]) -> Vec<i64> {
        self.ray_map.mul_vec_i64(m)
    }

    /// Tests `i_R(R^n) ∩ R^(n+k)_{>=0} = {0}`.
    pub fn effective_cone_strongly_convex(&self) -> bool {
        let mut p = HPolyhedron::new(self.n);
        let mut total = vec![rat(0); self.n];
        for r in 0..self.vars() {
            let row = to_rat_vec(&self.ray_map.row_i64(r));
            for (t, x) in total.iter_mut().zip(&row) {
                *t += x;
            }
            p.ge(row, rat(0));
        }
        p.ge(total, rat(1));
        !p.feasible()
    }

    /// True iff `b - a` lies in the real cone `pi(R_{>=0}^(n+k))`.
    pub fn class_leq(&self, a: &[i64], b: &[i64]) -> bool {
        let diff: Vec<i64> = b.iter().zip(a).map(|(x, y)| x - y).collect();
        self.in_effective_cone(&diff)
    }

    pub fn in_effective_cone(&self, c: &[i64]) -> bool {
        let nv = self.vars();
        let mut p = HPolyhedron::new(nv);
        for j in 0..nv {
            let mut e = vec![rat(0); nv];
            e[j] = rat(1);
            p.ge(e, rat(0));
        }
        for (i, &ci) in c.iter().enumerate() {
            p.equal(to_rat_vec(&self.class_map.row_i64(i)), rat(ci));
        }
        p.feasible()
    }

    /// `{m >= 0 : pi(m) = c}`, lexicographically sorted.
    pub fn monomials_of_class(&self, c: &[i64]) -> Vec<CoxMonomial> {
        let nv = self.vars();
        let mut p = HPolyhedron::new(nv);
        for j in 0..nv {
            let mut e = vec![rat(0); nv];
            e[j] = rat(1);
            p.ge(e, rat(0));
        }
        for (i, &ci) in c.iter().enumerate() {
            p.equal(to_rat_vec(&self.class_map.row_i64(i)), rat(ci));
        }
        let pts = p.lattice_points().expect("strong convexity bounds every fibre");
        pts.into_iter()
            .map(|v| CoxMonomial(v.iter().map(|x| x.to_i64().expect("exponent overflow")).collect()))
            .collect()
    }

    /// Canonical lift of a class: the lexicographically smallest nonnegative
    /// representative when the class is effective, the Smith section otherwise.
    pub fn pic_class(&self, c: &[i64]) -> PicClass {
        let lift = match self.monomials_of_class(c).into_iter().next() {
            Some(m) => m.0,
            None => self.section.mul_vec_i64(c),
        };
        PicClass { class: c.to_vec(), lift }
    }

    /// Integer points of `M` in terms of the rational coordinate vector.
    pub fn embed_rat(&self, m: &[Rat]) -> Vec<Rat> {
        (0..self.vars())
            .map(|r| {
                let row = self.ray_map.row_i64(r);
                row.iter().zip(m).map(|(&a, x)| rat(a) * x).sum()
            })
            .collect()
    }

    /// A set of `n` rays forming a lattice basis of `N` (a smooth cone when
    /// fan data is present, otherwise the first unimodular subset found).
    pub fn unimodular_rays(&self) -> Option<Vec<usize>> {
        if let Some(f) = &self.fan {
            return f.max_cones.first().cloned();
        }
        exactlin::polytope::combinations(self.vars(), self.n).into_iter().find(|s| {
            let rows: Vec<Vec<i64>> = s.iter().map(|&r| self.ray_map.row_i64(r)).collect();
            IntMatrix::from_rows(&rows).determinant().abs().is_one()
        })
    }
}

use num_traits::Signed;

pub fn class_leq(a: &PicClass, b: &PicClass, ses: &LatticeSES) -> bool {
    ses.class_leq(&a.class, &b.class)
}

pub fn monomials_of_class(c: &[i64], ses: &LatticeSES) -> Vec<CoxMonomial> {
    ses.monomials_of_class(c)
}
