//! The TOML input document.
//!
//! ```toml
//! [variety]
//! name = "P2"
//! rays = [[1, 0], [0, 1], [-1, -1]]
//! max_cones = [[0, 1], [1, 2], [0, 2]]      # optional: omit for a bare ray matrix
//! product_of_projective_spaces = true       # optional, default false
//!
//! [morphism]                                # optional section
//! matrix = [[2], [3]]                       # one row per target coordinate
//! source_rays = [[1], [-1]]                 # optional source fan
//! source_max_cones = [[0], [1]]
//! ```
//!
//! The inclusion of a point is written with empty rows, e.g.
//! `matrix = [[], []]` for a surface. Unknown keys are rejected; every value
//! is an integer literal.

use crate::{build_ses, Fan, LatticeSES, ToricError, ToricMorphism};
use serde::{Deserialize, Serialize};
use toml::Spanned;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDoc {
    variety: RawVariety,
    morphism: Option<RawMorphism>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVariety {
    name: Option<String>,
    rays: Spanned<Vec<Spanned<Vec<i64>>>>,
    max_cones: Option<Spanned<Vec<Spanned<Vec<usize>>>>>,
    product_of_projective_spaces: Option<bool>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMorphism {
    matrix: Spanned<Vec<Spanned<Vec<i64>>>>,
    source_rays: Option<Spanned<Vec<Spanned<Vec<i64>>>>>,
    source_max_cones: Option<Spanned<Vec<Spanned<Vec<usize>>>>>,
}

/// A parsed document with plain values, which is also the emission format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDoc {
    pub variety: VarietySection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub morphism: Option<MorphismSection>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarietySection {
    pub name: String,
    pub rays: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_cones: Option<Vec<Vec<usize>>>,
    pub product_of_projective_spaces: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSection {
    pub matrix: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source_rays: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source_max_cones: Option<Vec<Vec<usize>>>,
}

/// A validated job: the Picard sequence and an optional morphism.
#[derive(Clone, Debug)]
pub struct Job {
    pub doc: InputDoc,
    pub ses: LatticeSES,
    pub morphism: Option<ToricMorphism>,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].bytes().filter(|&b| b == b'\n').count() + 1
}

fn err_at(text: &str, offset: usize, message: impl Into<String>) -> ToricError {
    ToricError::Input { line: line_of(text, offset), message: message.into() }
}

fn check_rows(
    text: &str,
    what: &str,
    rows: &Spanned<Vec<Spanned<Vec<i64>>>>,
    width: Option<usize>,
) -> Result<Vec<Vec<i64>>, ToricError> {
    let Some(first) = rows.get_ref().first() else {
        return Err(err_at(text, rows.span().start, format!("{what} has no rows")));
    };
    let width = width.unwrap_or(first.get_ref().len());
    for (i, row) in rows.get_ref().iter().enumerate() {
        if row.get_ref().len() != width {
            return Err(err_at(
                text,
                row.span().start,
                format!("{what} row {i} {:?} has {} entries, expected {width}", row.get_ref(), row.get_ref().len()),
            ));
        }
    }
    Ok(rows.get_ref().iter().map(|r| r.get_ref().clone()).collect())
}

fn check_cones(
    text: &str,
    what: &str,
    cones: &Spanned<Vec<Spanned<Vec<usize>>>>,
    rays: usize,
) -> Result<Vec<Vec<usize>>, ToricError> {
    for (i, c) in cones.get_ref().iter().enumerate() {
        if let Some(&bad) = c.get_ref().iter().find(|&&r| r >= rays) {
            return Err(err_at(text, c.span().start, format!("{what} entry {i} refers to ray {bad}, but only {rays} rays exist")));
        }
    }
    Ok(cones.get_ref().iter().map(|c| c.get_ref().clone()).collect())
}

/// Parses and validates an input document.
pub fn parse_job(text: &str) -> Result<Job, ToricError> {
    let raw: RawDoc = toml::from_str(text).map_err(|e| ToricError::Input {
        line: e.span().map_or(1, |s| line_of(text, s.start)),
        message: e.message().to_string(),
    })?;
    let rays = check_rows(text, "rays", &raw.variety.rays, None)?;
    if rays[0].is_empty() {
        return Err(err_at(text, raw.variety.rays.span().start, "rays must have at least one coordinate"));
    }
    let max_cones = match &raw.variety.max_cones {
        Some(c) => Some(check_cones(text, "max_cones", c, rays.len())?),
        None => None,
    };
    let product = raw.variety.product_of_projective_spaces.unwrap_or(false);
    let mut ses = match &max_cones {
        Some(cones) => build_ses(&Fan::new(rays.clone(), cones.clone()))?,
        None => LatticeSES::from_rays(&rays)?,
    };
    ses.name = raw.variety.name.clone().unwrap_or_default();
    ses.product_of_projective_spaces = product;

    let mut morphism = None;
    let mut morphism_doc = None;
    if let Some(m) = &raw.morphism {
        let rows: Vec<Vec<i64>> = m.matrix.get_ref().iter().map(|r| r.get_ref().clone()).collect();
        if rows.len() != ses.n {
            return Err(err_at(
                text,
                m.matrix.span().start,
                format!("morphism matrix has {} rows, expected one per coordinate of the variety ({})", rows.len(), ses.n),
            ));
        }
        let matrix = check_rows(text, "matrix", &m.matrix, None)?;
        let source_dim = matrix[0].len();
        let mut f = ToricMorphism::from_rows(&matrix, source_dim);
        f.check_injective().map_err(|e| err_at(text, m.matrix.span().start, e.to_string()))?;
        let source_rays = match &m.source_rays {
            Some(r) => Some(check_rows(text, "source_rays", r, Some(source_dim))?),
            None => None,
        };
        let source_cones = match (&m.source_max_cones, &source_rays) {
            (Some(c), Some(r)) => Some(check_cones(text, "source_max_cones", c, r.len())?),
            (None, None) => None,
            (Some(c), None) => return Err(err_at(text, c.span().start, "source_max_cones given without source_rays")),
            (None, Some(_)) => {
                let span = m.source_rays.as_ref().unwrap().span();
                return Err(err_at(text, span.start, "source_rays given without source_max_cones"));
            }
        };
        if let (Some(r), Some(c)) = (&source_rays, &source_cones) {
            let fan = Fan::new(r.clone(), c.clone());
            fan.validate()?;
            f = f.with_source_fan(fan);
        }
        morphism_doc = Some(MorphismSection { matrix, source_rays, source_max_cones: source_cones });
        morphism = Some(f);
    }

    let doc = InputDoc {
        variety: VarietySection {
            name: ses.name.clone(),
            rays,
            max_cones,
            product_of_projective_spaces: product,
        },
        morphism: morphism_doc,
    };
    Ok(Job { doc, ses, morphism })
}

impl InputDoc {
    /// Canonical TOML text for the document.
    pub fn emit(&self) -> String {
        toml::to_string(self).expect("plain integer document serializes")
    }
}
