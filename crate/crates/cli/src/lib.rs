//! Batch front end: reads a TOML job, runs one command and renders a
//! deterministic plain-text report.

use quivalg::{bondal_algebra, exit_algebra, PathAlgebra};
use resolve::{
    betti_of, betti_topological, bundle_name, cellular_resolution, minimal_resolution, prepare, to_human, to_machine,
    uniqueness_flag, verify_complex, BettiTable, LineBundleComplex, ResolveError, VerifyContext, VerifyReport,
};
use std::fmt::Write as _;
use std::path::Path;
use strata::{bondal_classes, cube_strata, StratComplex, StratumComponent, SubtorusData};
use thiserror::Error;
use toricdata::{parse_job, Job, LatticeSES, ToricMorphism};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("internal cross-check failed: {0}")]
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Mismatch(_) => 3,
        }
    }
}

impl From<ResolveError> for CliError {
    fn from(e: ResolveError) -> Self {
        match e {
            ResolveError::InternalBettiMismatch { .. } | ResolveError::Quiv(_) => CliError::Mismatch(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<strata::StrataError> for CliError {
    fn from(e: strata::StrataError) -> Self {
        CliError::Validation(e.to_string())
    }
}

/// A rendered report and whether every verification passed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            3
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Minimal,
    Cellular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResolveOptions {
    pub method: Method,
    pub format: Format,
    pub seed: u64,
    pub euler_samples: usize,
}

impl Default for ResolveOptions {
    fn default() -> Self {
        ResolveOptions { method: Method::Minimal, format: Format::Human, seed: 1, euler_samples: 10 }
    }
}

pub fn load_job(path: &Path) -> Result<Job, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    parse_job(&text).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

/// Writes through a temporary sibling file and a rename.
pub fn write_atomically(path: &Path, text: &str) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Validation(format!("{}: {e}", path.display()));
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    std::fs::write(&tmp, text).map_err(io)?;
    std::fs::rename(&tmp, path).map_err(io)
}

fn morphism(job: &Job) -> Result<&ToricMorphism, CliError> {
    job.morphism.as_ref().ok_or_else(|| CliError::Validation("this command needs a [morphism] section".into()))
}

fn class_string(c: &[i64]) -> String {
    format!("[{}]", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

fn header(ses: &LatticeSES) -> String {
    format!("variety {} (dimension {}, Picard rank {}, {} rays)", ses.name, ses.n, ses.k, ses.vars())
}

/// Closedness and shape of the closure of one stratum component.
pub fn component_shape(complex: &StratComplex, comp: &StratumComponent) -> String {
    if comp.dim == 0 {
        return "point".into();
    }
    let (poly, removed) = complex.component_faces(comp);
    let proper = &removed[..removed.len() - 1];
    let openness = match proper.iter().filter(|&&r| r).count() {
        0 => "closed",
        n if n == proper.len() => "open",
        _ => "half-open",
    };
    let vertices = poly.vertices.len();
    let shape = match (comp.dim, vertices) {
        (1, _) => "segment".to_string(),
        (2, 3) => "triangle".to_string(),
        (2, 4) => "quadrilateral".to_string(),
        (2, v) => format!("{v}-gon"),
        (d, v) => format!("{d}-polytope with {v} vertices"),
    };
    format!("{openness} {shape}")
}

/// Edges `a < b` of the class order with nothing strictly between.
pub fn hasse_edges(ses: &LatticeSES, classes: &[Vec<i64>]) -> Vec<(usize, usize)> {
    let lt = |a: usize, b: usize| a != b && ses.class_leq(&classes[a], &classes[b]);
    let mut edges = Vec::new();
    for a in 0..classes.len() {
        for b in 0..classes.len() {
            if lt(a, b) && !(0..classes.len()).any(|c| lt(a, c) && lt(c, b)) {
                edges.push((a, b));
            }
        }
    }
    edges
}

pub fn cmd_collection(job: &Job) -> Result<String, CliError> {
    let ses = &job.ses;
    let torus = cube_strata(ses, &SubtorusData::torus(ses.n))?;
    let classes: Vec<Vec<i64>> = bondal_classes(ses)?.into_iter().map(|c| c.class).collect();
    let mut out = String::new();
    writeln!(out, "{}", header(ses)).unwrap();
    writeln!(out, "Bondal collection: {} line bundles", classes.len()).unwrap();
    for c in &classes {
        let comps = torus.components_of_class(c);
        let dim = comps.iter().map(|x| x.dim).max().unwrap_or(0);
        let shapes: Vec<String> = comps.iter().map(|x| component_shape(&torus, x)).collect();
        writeln!(
            out,
            "  {} {}: stratum of dimension {dim}, {} component{}: {}",
            class_string(c),
            bundle_name(c),
            comps.len(),
            if comps.len() == 1 { "" } else { "s" },
            shapes.join(", ")
        )
        .unwrap();
    }
    writeln!(out, "Hasse edges of the class order:").unwrap();
    for (a, b) in hasse_edges(ses, &classes) {
        writeln!(out, "  {} < {}", class_string(&classes[a]), class_string(&classes[b])).unwrap();
    }
    Ok(out)
}

pub fn cmd_betti(job: &Job) -> Result<Outcome, CliError> {
    let ses = &job.ses;
    let f = morphism(job)?;
    let topological = betti_topological(ses, f)?;
    let minimal = minimal_resolution(ses, f)?;
    let algebraic = betti_of(&minimal);
    let mut out = String::new();
    writeln!(out, "{}", header(ses)).unwrap();
    writeln!(out, "Betti numbers (rows: homological degree, columns: summand):").unwrap();
    writeln!(out, "{topological}").unwrap();
    writeln!(out, "length {}, total rank {}", topological.length().unwrap_or(0), total_rank(&topological)).unwrap();
    writeln!(out, "agrees with the minimal resolution: {}", if topological == algebraic { "yes" } else { "NO" }).unwrap();
    writeln!(out, "minimal resolution unique: {}", uniqueness_flag(ses)).unwrap();
    Ok(Outcome { text: out, passed: topological == algebraic })
}

fn total_rank(t: &BettiTable) -> usize {
    t.0.values().sum()
}

/// Runs one pipeline, verifies it against the other, and renders both the
/// complex and the verification report.
pub fn cmd_resolve(job: &Job, opts: &ResolveOptions) -> Result<Outcome, CliError> {
    let ses = &job.ses;
    let f = morphism(job)?;
    let minimal = minimal_resolution(ses, f)?;
    let cellular = cellular_resolution(ses, f)?;
    let (complex, reference): (&LineBundleComplex, &LineBundleComplex) = match opts.method {
        Method::Minimal => (&minimal, &cellular),
        Method::Cellular => (&cellular, &minimal),
    };
    let expected = match opts.method {
        Method::Minimal => Some(betti_topological(ses, f)?),
        Method::Cellular => None,
    };
    let ctx = VerifyContext { ses, morphism: f, seed: opts.seed, euler_samples: opts.euler_samples, reference: Some(reference) };
    let report = verify_complex(complex, expected.as_ref(), &ctx);
    let minimality_ok = opts.method == Method::Cellular || report.minimal;
    let text = match opts.format {
        Format::Human => human_resolve(ses, complex, &report, opts.method),
        Format::Machine => machine_resolve(complex, &report),
    };
    Ok(Outcome { text, passed: report.passed() && minimality_ok })
}

fn human_resolve(ses: &LatticeSES, c: &LineBundleComplex, report: &VerifyReport, method: Method) -> String {
    let mut out = String::new();
    writeln!(out, "{}", header(ses)).unwrap();
    let vars: Vec<String> = (0..c.vars).map(|i| format!("x{i}")).collect();
    writeln!(out, "Cox variables {} follow the ray order", vars.join(", ")).unwrap();
    out.push_str(&to_human(c, "resolution"));
    if method == Method::Minimal {
        writeln!(out, "minimal resolution unique: {}", uniqueness_flag(ses)).unwrap();
    }
    writeln!(out, "{report}").unwrap();
    out
}

fn machine_resolve(c: &LineBundleComplex, report: &VerifyReport) -> String {
    let mut out = to_machine(c);
    for line in report.to_string().lines() {
        writeln!(out, "# {line}").unwrap();
    }
    out
}

fn hom_table(alg: &PathAlgebra, entry: impl Fn(usize, usize) -> String) -> String {
    let mut out = String::new();
    for s in 0..alg.vertex_count() {
        for t in 0..alg.vertex_count() {
            let d = alg.hom_dim(s, t);
            if d > 0 {
                writeln!(out, "  {} = {d}", entry(s, t)).unwrap();
            }
        }
    }
    out
}

/// The Bondal algebra and, when a morphism is given, the exit-path algebra
/// of its subtorus.
pub fn cmd_algebra(job: &Job, presentation: bool) -> Result<String, CliError> {
    let ses = &job.ses;
    let bondal = bondal_algebra(ses).map_err(|e| CliError::Validation(e.to_string()))?;
    let mut out = String::new();
    writeln!(out, "{}", header(ses)).unwrap();
    let names: Vec<String> = bondal.vertices.iter().map(|v| bundle_name(&v.class)).collect();
    writeln!(out, "Bondal algebra: {} vertices, dimension {}", bondal.vertex_count(), bondal.dimension()).unwrap();
    for (i, v) in bondal.vertices.iter().enumerate() {
        writeln!(out, "  vertex {i}: {} {}", class_string(&v.class), names[i]).unwrap();
    }
    out.push_str(&hom_table(&bondal, |s, t| format!("Hom({}, {})", names[t], names[s])));
    if presentation {
        out.push_str(&bondal.presentation().to_string());
    }
    if let Some(f) = &job.morphism {
        let prepared = prepare(ses, f)?;
        let exit = exit_algebra(&prepared.complex);
        let names: Vec<String> = exit
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| format!("s{i}{}", class_string(&v.class)))
            .collect();
        writeln!(out, "exit-path algebra of the subtorus: {} vertices, dimension {}", exit.vertex_count(), exit.dimension())
            .unwrap();
        out.push_str(&hom_table(&exit, |s, t| format!("paths {} -> {}", names[s], names[t])));
        if presentation {
            out.push_str(&exit.presentation().to_string());
        }
    }
    Ok(out)
}
