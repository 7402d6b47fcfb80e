//! Independent checks of a line-bundle complex: `d² = 0`, homogeneity,
//! minimality, Betti agreement, fiber probes at random points, and graded
//! Euler characteristics against a reference complex.

use crate::pipelines::betti_of;
use crate::{bundle_name, BettiTable};
use exactlin::{smith_normal_form, Rat, RatMatrix};
use num_traits::{One, ToPrimitive};
use quivalg::LineBundleComplex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use toricdata::{dual_map, LatticeSES, ToricMorphism};

pub struct VerifyContext<'a> {
    pub ses: &'a LatticeSES,
    pub morphism: &'a ToricMorphism,
    pub seed: u64,
    pub euler_samples: usize,
    /// Another complex resolving the same sheaf, for Euler comparisons.
    pub reference: Option<&'a LineBundleComplex>,
}

/// Homology of the complex evaluated at one point of the Cox space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Probe {
    pub name: String,
    pub point: Vec<Rat>,
    pub homology: Vec<usize>,
    pub expected: Vec<usize>,
}

impl Probe {
    pub fn passed(&self) -> bool {
        self.homology == self.expected
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerSample {
    pub class: Vec<i64>,
    pub value: i64,
    pub reference: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub seed: u64,
    pub d_squared_zero: bool,
    pub homogeneous: bool,
    pub minimal: bool,
    pub betti_match: Option<bool>,
    /// Fiber degree `|coker f^∨|` of the morphism over its image.
    pub fiber_degree: usize,
    pub probes: Vec<Probe>,
    pub euler: Vec<EulerSample>,
}

impl VerifyReport {
    /// All checks except minimality, which is reported as a property.
    pub fn passed(&self) -> bool {
        self.d_squared_zero
            && self.homogeneous
            && self.betti_match != Some(false)
            && self.probes.iter().all(|p| p.passed())
            && self.euler.iter().all(|e| e.value == e.reference)
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verification (seed {})", self.seed)?;
        writeln!(f, "  d^2 = 0: {}", yes_no(self.d_squared_zero))?;
        writeln!(f, "  homogeneous: {}", yes_no(self.homogeneous))?;
        writeln!(f, "  minimal: {}", if self.minimal { "yes" } else { "no" })?;
        if let Some(b) = self.betti_match {
            writeln!(f, "  Betti table matches expected: {}", yes_no(b))?;
        }
        writeln!(f, "  fiber degree |coker f^v|: {}", self.fiber_degree)?;
        for p in &self.probes {
            let point: Vec<String> = p.point.iter().map(|x| x.to_string()).collect();
            writeln!(
                f,
                "  probe {}: homology {:?}, expected {:?}: {} at ({})",
                p.name,
                p.homology,
                p.expected,
                yes_no(p.passed()),
                point.join(", ")
            )?;
        }
        if !self.euler.is_empty() {
            let ok = self.euler.iter().all(|e| e.value == e.reference);
            writeln!(f, "  graded Euler characteristic at {} classes: {}", self.euler.len(), yes_no(ok))?;
            for e in &self.euler {
                writeln!(f, "    {}: {} vs {}", bundle_name(&e.class.iter().map(|x| -x).collect::<Vec<_>>()), e.value, e.reference)?;
            }
        }
        write!(f, "  overall: {}", yes_no(self.passed()))
    }
}

/// `|coker f^∨|`, the number of points of the source torus over a point of
/// its image.
pub fn generic_fiber_degree(f: &ToricMorphism) -> usize {
    let snf = smith_normal_form(&dual_map(f));
    snf.invariant_factors().iter().map(|d| d.to_usize().expect("small invariant factor")).product()
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn homology_at(c: &LineBundleComplex, point: &[Rat]) -> Vec<usize> {
    let mats = c.evaluate(point);
    let ranks: Vec<usize> = mats.iter().map(|m| m.rank()).collect();
    (0..c.terms.len())
        .map(|i| {
            let out = if i == 0 { 0 } else { ranks[i - 1] };
            let inc = ranks.get(i).copied().unwrap_or(0);
            c.terms[i].len() - out - inc
        })
        .collect()
}

fn random_nonzero(rng: &mut ChaCha8Rng) -> Rat {
    let num: i64 = rng.random_range(1..=997);
    let den: i64 = rng.random_range(1..=997);
    let sign = if rng.random_bool(0.5) { 1 } else { -1 };
    exactlin::ratio(sign * num, den)
}

fn power(x: &Rat, e: i64) -> Rat {
    let mut out = Rat::one();
    for _ in 0..e.unsigned_abs() {
        out *= x;
    }
    if e < 0 {
        out = Rat::one() / out;
    }
    out
}

/// Cox coordinates of the image of a source torus point `t`: with a
/// unimodular set of rays `S`, `z_r = Π_j t_j^{A_rj}` where `A` vanishes
/// outside `S` and `A_S = (R_S^T)^{-1} f`.
fn image_point(ses: &LatticeSES, f: &ToricMorphism, t: &[Rat]) -> Option<Vec<Rat>> {
    let basis = ses.unimodular_rays()?;
    let rows: Vec<Vec<i64>> = basis.iter().map(|&r| ses.ray_map.row_i64(r)).collect();
    let r_t = RatMatrix::from_i64_rows(&rows).transpose();
    let a = r_t.inverse()?.mul(&RatMatrix::from_int(&f.matrix));
    let mut z = vec![Rat::one(); ses.vars()];
    for (i, &r) in basis.iter().enumerate() {
        for (j, tj) in t.iter().enumerate() {
            let e = a.get(i, j);
            if !exactlin::is_integer(e) {
                return None;
            }
            z[r] *= power(tj, exactlin::floor_i64(e));
        }
    }
    Some(z)
}

fn euler_value(ses: &LatticeSES, c: &LineBundleComplex, class: &[i64]) -> i64 {
    c.terms
        .iter()
        .enumerate()
        .map(|(i, term)| {
            let count: i64 = term
                .iter()
                .map(|a| {
                    let d: Vec<i64> = class.iter().zip(a).map(|(x, y)| x - y).collect();
                    ses.monomials_of_class(&d).len() as i64
                })
                .sum();
            if i % 2 == 0 {
                count
            } else {
                -count
            }
        })
        .sum()
}

/// Runs every check on `c`.
pub fn verify_complex(c: &LineBundleComplex, expected: Option<&BettiTable>, ctx: &VerifyContext) -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let degree = generic_fiber_degree(ctx.morphism);
    let codim = ctx.ses.n - ctx.morphism.source_dim();
    let len = c.terms.len();
    let mut probes = Vec::new();

    let torus_point: Vec<Rat> = (0..ctx.ses.vars()).map(|_| random_nonzero(&mut rng)).collect();
    let mut expected_torus = vec![0; len];
    if codim == 0 && len > 0 {
        expected_torus[0] = degree;
    }
    probes.push(Probe {
        name: "random torus point".into(),
        homology: homology_at(c, &torus_point),
        point: torus_point,
        expected: expected_torus,
    });

    let t: Vec<Rat> = (0..ctx.morphism.source_dim()).map(|_| random_nonzero(&mut rng)).collect();
    if let Some(z) = image_point(ctx.ses, ctx.morphism, &t) {
        let expected_image = (0..len).map(|i| degree * binomial(codim, i)).collect();
        probes.push(Probe { name: "image point".into(), homology: homology_at(c, &z), point: z, expected: expected_image });
    }

    let mut euler = Vec::new();
    if let Some(reference) = ctx.reference {
        let bondal = strata::bondal_classes(ctx.ses).map(|v| v.into_iter().map(|p| p.class).collect::<Vec<_>>()).unwrap_or_default();
        let grading = &c.grading;
        for _ in 0..ctx.euler_samples {
            let mut class = if bondal.is_empty() { vec![0; ctx.ses.k] } else { bondal[rng.random_range(0..bondal.len())].clone() };
            for g in grading {
                let times: i64 = rng.random_range(0..=3);
                for (x, y) in class.iter_mut().zip(g) {
                    *x += times * y;
                }
            }
            euler.push(EulerSample {
                value: euler_value(ctx.ses, c, &class),
                reference: euler_value(ctx.ses, reference, &class),
                class,
            });
        }
    }

    VerifyReport {
        seed: ctx.seed,
        d_squared_zero: c.d_squared_zero(),
        homogeneous: c.is_homogeneous(),
        minimal: c.is_minimal(),
        betti_match: expected.map(|e| *e == betti_of(c)),
        fiber_degree: degree,
        probes,
        euler,
    }
}
