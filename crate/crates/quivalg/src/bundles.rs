//! Complexes of sums of line bundles `⊕ O(-a)` with Cox-polynomial
//! differentials, and the translation from path-algebra complexes.

use crate::algebra::{PathAlgebra, PathRef};
use crate::resolution::{Combination, ProjComplex};
use crate::QuivError;
use exactlin::{Rat, RatMatrix};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use toricdata::LatticeSES;

/// A polynomial in the Cox variables: exponent vector -> coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly(pub BTreeMap<Vec<i64>, Rat>);

impl Poly {
    pub fn zero() -> Self {
        Poly(BTreeMap::new())
    }

    pub fn monomial(exponents: Vec<i64>, coeff: Rat) -> Self {
        let mut p = Poly::zero();
        p.add_term(exponents, coeff);
        p
    }

    pub fn add_term(&mut self, exponents: Vec<i64>, coeff: Rat) {
        let e = self.0.entry(exponents).or_insert_with(Rat::zero);
        *e += coeff;
        if e.is_zero() {
            self.0.retain(|_, c| !c.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.0 {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|(e, c)| (e.clone(), -c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (e1, c1) in &self.0 {
            for (e2, c2) in &other.0 {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Coefficient of the monomial `1`.
    pub fn constant_term(&self) -> Rat {
        self.0.iter().find(|(e, _)| e.iter().all(|&x| x == 0)).map_or_else(Rat::zero, |(_, c)| c.clone())
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        let mut total = Rat::zero();
        for (e, c) in &self.0 {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    term *= x;
                }
            }
            total += term;
        }
        total
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Rat)> {
        self.0.iter()
    }
}

fn monomial_string(e: &[i64]) -> String {
    let factors: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| if k == 1 { format!("x{i}") } else { format!("x{i}^{k}") })
        .collect();
    if factors.is_empty() {
        "1".to_string()
    } else {
        factors.join("*")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.0.iter().enumerate() {
            let mono = monomial_string(e);
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mag.is_one() {
                write!(f, "{mono}")?;
            } else if mono == "1" {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

/// Classes of the Cox variables, the columns of the class map.
pub fn variable_grading(ses: &LatticeSES) -> Vec<Vec<i64>> {
    (0..ses.vars())
        .map(|j| {
            let mut e = vec![0; ses.vars()];
            e[j] = 1;
            ses.class_of(&e)
        })
        .collect()
}

/// `⊕ O(-a)` terms with polynomial differentials. `terms[i]` lists the
/// classes `a` of the summands in homological degree `i`; `differentials[i-1]`
/// is `d_i` with rows indexed by `terms[i-1]` and columns by `terms[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct LineBundleComplex {
    pub vars: usize,
    pub grading: Vec<Vec<i64>>,
    pub terms: Vec<Vec<Vec<i64>>>,
    pub differentials: Vec<Vec<Vec<Poly>>>,
    pub provenance: String,
}

impl LineBundleComplex {
    pub fn length(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }

    pub fn degree_of(&self, exponents: &[i64]) -> Vec<i64> {
        let k = self.grading.first().map_or(0, |g| g.len());
        let mut out = vec![0; k];
        for (g, &e) in self.grading.iter().zip(exponents) {
            for (o, x) in out.iter_mut().zip(g) {
                *o += e * x;
            }
        }
        out
    }

    /// `d_{i-1} d_i = 0` in Cox arithmetic.
    pub fn d_squared_zero(&self) -> bool {
        (2..=self.length()).all(|i| {
            let (a, b) = (&self.differentials[i - 2], &self.differentials[i - 1]);
            (0..a.len()).all(|r| {
                (0..self.terms[i].len()).all(|c| {
                    let mut sum = Poly::zero();
                    for (m, entry) in a[r].iter().enumerate() {
                        sum = sum.add(&entry.mul(&b[m][c]));
                    }
                    sum.is_zero()
                })
            })
        })
    }

    /// Entry `(r, c)` of `d_i` maps `O(-a_c)` to `O(-a_r)`, so every monomial
    /// in it has class `a_c - a_r`.
    pub fn is_homogeneous(&self) -> bool {
        self.differentials.iter().enumerate().all(|(k, d)| {
            d.iter().enumerate().all(|(r, row)| {
                row.iter().enumerate().all(|(c, entry)| {
                    let want: Vec<i64> =
                        self.terms[k + 1][c].iter().zip(&self.terms[k][r]).map(|(x, y)| x - y).collect();
                    entry.terms().all(|(e, _)| self.degree_of(e) == want)
                })
            })
        })
    }

    /// No entry has a nonzero constant term.
    pub fn is_minimal(&self) -> bool {
        self.differentials.iter().flatten().flatten().all(|p| p.constant_term().is_zero())
    }

    /// `β_{i,a}`: multiplicity of `O(-a)` in degree `i`.
    pub fn betti(&self) -> BTreeMap<(usize, Vec<i64>), usize> {
        let mut out = BTreeMap::new();
        for (i, t) in self.terms.iter().enumerate() {
            for a in t {
                *out.entry((i, a.clone())).or_insert(0) += 1;
            }
        }
        out
    }

    /// The differentials evaluated at a point of the Cox space.
    pub fn evaluate(&self, point: &[Rat]) -> Vec<RatMatrix> {
        self.differentials
            .iter()
            .enumerate()
            .map(|(k, d)| {
                let mut m = RatMatrix::zeros(self.terms[k].len(), self.terms[k + 1].len());
                for (r, row) in d.iter().enumerate() {
                    for (c, p) in row.iter().enumerate() {
                        m.set(r, c, p.eval(point));
                    }
                }
                m
            })
            .collect()
    }
}

/// Translates an exit path `s -> t` of a subtorus to the element of the
/// Bondal algebra from `[class t]` to `[class s]` with the same monomial.
pub fn translate_exit_to_bondal(exit: &PathAlgebra, bondal: &PathAlgebra, p: PathRef) -> Result<PathRef, QuivError> {
    let tag = exit.tag(p);
    if tag.iter().any(|&x| x < 0) {
        return Err(QuivError::TagNotEffective(tag.to_vec()));
    }
    let from = bondal_vertex(bondal, &exit.vertices[p.target].class)?;
    let to = bondal_vertex(bondal, &exit.vertices[p.source].class)?;
    bondal.find(from, to, tag).ok_or_else(|| QuivError::MissingPath { tag: tag.to_vec() })
}

fn bondal_vertex(bondal: &PathAlgebra, class: &[i64]) -> Result<usize, QuivError> {
    bondal
        .vertices
        .iter()
        .position(|v| v.class == class)
        .ok_or_else(|| QuivError::MissingClass(class.to_vec()))
}

/// Pushes a complex over the entrance algebra of a subtorus (the opposite
/// of its exit algebra) to the Bondal algebra: each vertex goes to its
/// class and each path keeps its tag.
pub fn translate_complex(entrance: &PathAlgebra, bondal: &PathAlgebra, c: &ProjComplex) -> Result<ProjComplex, QuivError> {
    let vmap: Vec<usize> =
        entrance.vertices.iter().map(|v| bondal_vertex(bondal, &v.class)).collect::<Result<_, _>>()?;
    let terms: Vec<Vec<usize>> = c.terms.iter().map(|t| t.iter().map(|&v| vmap[v]).collect()).collect();
    let mut differentials = Vec::new();
    for (i, d) in c.differentials.iter().enumerate() {
        let mut out = vec![vec![Combination::new(); c.terms[i + 1].len()]; c.terms[i].len()];
        for (g, row) in d.iter().enumerate() {
            for (h, entry) in row.iter().enumerate() {
                for (&index, coeff) in entry {
                    let p = PathRef { source: c.terms[i][g], target: c.terms[i + 1][h], index };
                    let tag = entrance.tag(p);
                    if tag.iter().any(|&x| x < 0) {
                        return Err(QuivError::TagNotEffective(tag.to_vec()));
                    }
                    let q = bondal
                        .find(terms[i][g], terms[i + 1][h], tag)
                        .ok_or_else(|| QuivError::MissingPath { tag: tag.to_vec() })?;
                    let e = out[g][h].entry(q.index).or_insert_with(Rat::zero);
                    *e += coeff;
                }
            }
        }
        for row in out.iter_mut() {
            for entry in row.iter_mut() {
                entry.retain(|_, c| !c.is_zero());
            }
        }
        differentials.push(out);
    }
    Ok(ProjComplex { terms, differentials, augmentation: None })
}

/// Applies `P_[a] ↦ O(-a)` to a complex over the Bondal algebra; each path
/// becomes its Cox monomial.
pub fn line_bundle_complex(
    bondal: &PathAlgebra,
    c: &ProjComplex,
    grading: Vec<Vec<i64>>,
    provenance: &str,
) -> LineBundleComplex {
    let terms: Vec<Vec<Vec<i64>>> =
        c.terms.iter().map(|t| t.iter().map(|&v| bondal.vertices[v].class.clone()).collect()).collect();
    let differentials = c
        .differentials
        .iter()
        .enumerate()
        .map(|(i, d)| {
            d.iter()
                .enumerate()
                .map(|(g, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(h, entry)| {
                            let mut p = Poly::zero();
                            for (&index, coeff) in entry {
                                let path = PathRef { source: c.terms[i][g], target: c.terms[i + 1][h], index };
                                p.add_term(bondal.tag(path).to_vec(), coeff.clone());
                            }
                            p
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    LineBundleComplex { vars: bondal.tag_len, grading, terms, differentials, provenance: provenance.to_string() }
}
