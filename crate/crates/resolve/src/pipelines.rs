//! The three resolution pipelines and module-level resolutions.

use crate::{BettiTable, ResolveError};
use homology::hc_stratum;
use quivalg::{
    bondal_algebra, constant_representation, exit_algebra, line_bundle_complex, minimal_projective_resolution,
    translate_complex, variable_grading, LineBundleComplex, PathAlgebra, Poly, RightModule,
};
use strata::{cw_strata, subtorus_data, StratComplex};
use toricdata::{check_finite_morphism, LatticeSES, ToricMorphism};

/// A validated morphism with the stratification of its subtorus.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub complex: StratComplex,
    /// Codimension `n2 - n1`.
    pub codim: usize,
}

/// Validates `f` against the target and stratifies `V`. Finiteness is
/// checked whenever the source fan is known (always for the point);
/// otherwise only injectivity is required.
pub fn prepare(ses: &LatticeSES, f: &ToricMorphism) -> Result<Prepared, ResolveError> {
    f.check_injective()?;
    if let Some(fan) = &ses.fan {
        if f.source_fan.is_some() || f.source_dim() == 0 {
            let diag = check_finite_morphism(f, f.source_fan.as_ref(), fan);
            if !diag.passed {
                return Err(ResolveError::NotFinite(diag.to_string()));
            }
        }
    }
    let v = subtorus_data(ses, f)?;
    let complex = cw_strata(ses, &v)?;
    Ok(Prepared { complex, codim: ses.n - f.source_dim() })
}

/// `β_{i,a} = dim H^i_c(S_[a] ∩ V)` over the Bondal classes.
pub fn betti_topological(ses: &LatticeSES, f: &ToricMorphism) -> Result<BettiTable, ResolveError> {
    let prepared = prepare(ses, f)?;
    topological_table(ses, &prepared.complex)
}

fn topological_table(ses: &LatticeSES, complex: &StratComplex) -> Result<BettiTable, ResolveError> {
    let classes = strata::bondal_classes(ses)?;
    Ok(BettiTable::from_entries(classes.iter().flat_map(|c| {
        let h = hc_stratum(&c.class, complex);
        h.0.into_iter().enumerate().map(move |(i, b)| ((i, c.class.clone()), b)).collect::<Vec<_>>()
    })))
}

/// Betti table of a line-bundle complex.
pub fn betti_of(c: &LineBundleComplex) -> BettiTable {
    BettiTable::from_entries(c.betti())
}

/// The minimal resolution: the minimal projective resolution of the
/// constant representation of the entrance algebra of `V`, pushed to the
/// Bondal algebra and then to line bundles. Its Betti table is checked
/// against the topological one.
pub fn minimal_resolution(ses: &LatticeSES, f: &ToricMorphism) -> Result<LineBundleComplex, ResolveError> {
    let prepared = prepare(ses, f)?;
    let entrance = exit_algebra(&prepared.complex).opposite();
    let k = constant_representation(&entrance);
    let res = minimal_projective_resolution(&entrance, &k, prepared.codim)?;
    let bondal = bondal_algebra(ses)?;
    let translated = translate_complex(&entrance, &bondal, &res)?;
    let complex = line_bundle_complex(&bondal, &translated, variable_grading(ses), "minimal");
    let topological = topological_table(ses, &prepared.complex)?;
    let algebraic = betti_of(&complex);
    if topological != algebraic {
        return Err(ResolveError::InternalBettiMismatch { topological, algebraic });
    }
    Ok(complex)
}

/// The cellular resolution: one summand `O(-a(e))` per cell `e` of `V`'s
/// CW stratification, with attaching signs times the monomials of the
/// corner differences.
pub fn cellular_resolution(ses: &LatticeSES, f: &ToricMorphism) -> Result<LineBundleComplex, ResolveError> {
    let prepared = prepare(ses, f)?;
    Ok(cellular_complex(ses, &prepared.complex))
}

fn cellular_complex(ses: &LatticeSES, c: &StratComplex) -> LineBundleComplex {
    let cells: Vec<Vec<usize>> = (0..=c.dim).map(|d| c.cells_of_dim(d)).collect();
    let terms: Vec<Vec<Vec<i64>>> =
        cells.iter().map(|ids| ids.iter().map(|&id| c.cells[id].class.clone()).collect()).collect();
    let mut differentials = Vec::new();
    for d in 1..=c.dim {
        let mut m = vec![vec![Poly::zero(); cells[d].len()]; cells[d - 1].len()];
        for inc in &c.incidences {
            let cell = &c.cells[inc.cell];
            if cell.dim != d {
                continue;
            }
            let col = cells[d].iter().position(|&x| x == inc.cell).unwrap();
            let row = cells[d - 1].iter().position(|&x| x == inc.face).unwrap();
            let exps: Vec<i64> = inc.face_corner.iter().zip(&cell.corner).map(|(a, b)| a - b).collect();
            m[row][col].add_term(exps, exactlin::rat(inc.sign));
        }
        differentials.push(m);
    }
    LineBundleComplex { vars: ses.vars(), grading: variable_grading(ses), terms, differentials, provenance: "cellular".into() }
}

/// Resolves a right module over the Bondal algebra (a presentation of
/// `RHom(T, F)`) and translates it to line bundles.
pub fn resolve_module(ses: &LatticeSES, bondal: &PathAlgebra, m: &RightModule) -> Result<LineBundleComplex, ResolveError> {
    let res = minimal_projective_resolution(bondal, m, ses.n)?;
    Ok(line_bundle_complex(bondal, &res, variable_grading(ses), "module"))
}

/// Whether minimal resolutions are known to be unique for this variety.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Uniqueness {
    Yes,
    Unknown,
}

impl std::fmt::Display for Uniqueness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Uniqueness::Yes => "YES",
            Uniqueness::Unknown => "UNKNOWN",
        })
    }
}

/// `Yes` for varieties declared to be products of projective spaces.
pub fn uniqueness_flag(ses: &LatticeSES) -> Uniqueness {
    if ses.product_of_projective_spaces {
        Uniqueness::Yes
    } else {
        Uniqueness::Unknown
    }
}
