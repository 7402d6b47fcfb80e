//! Text renderings of line-bundle complexes.
//!
//! The machine format is line based, with single spaces between fields:
//!
//! ```text
//! toricres-complex 1
//! vars <N>
//! grading <class of x0>;<class of x1>;...
//! provenance <word>
//! length <L>
//! term <i> <a>;<a>;...
//! matrix <i> <rows> <cols>
//! entry <row> <col> <coeff> <e0,e1,...> [<coeff> <e0,e1,...> ...]
//! end
//! ```
//!
//! A class is a comma-separated integer list; `term` lines list the classes
//! `a` of the summands `O(-a)` in degree `i`, for `i = 0..=L`. `matrix i`
//! introduces `d_i: term i -> term i-1`, followed by its nonzero entries.
//! Coefficients are rationals `p` or `p/q`; exponent vectors have `N`
//! entries. Variables `x0..x(N-1)` follow the ray order and `grading` gives
//! their classes. Blank lines and lines starting with `#` are ignored.

use crate::{betti::bundle_name, pipelines::betti_of, ResolveError};
use exactlin::Rat;
use quivalg::{LineBundleComplex, Poly};
use std::fmt::Write;

fn join(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn to_machine(c: &LineBundleComplex) -> String {
    let mut out = String::new();
    writeln!(out, "toricres-complex 1").unwrap();
    writeln!(out, "vars {}", c.vars).unwrap();
    writeln!(out, "grading {}", c.grading.iter().map(|g| join(g)).collect::<Vec<_>>().join(";")).unwrap();
    writeln!(out, "provenance {}", c.provenance).unwrap();
    writeln!(out, "length {}", c.length()).unwrap();
    for (i, t) in c.terms.iter().enumerate() {
        writeln!(out, "term {i} {}", t.iter().map(|a| join(a)).collect::<Vec<_>>().join(";")).unwrap();
    }
    for (k, d) in c.differentials.iter().enumerate() {
        let cols = c.terms[k + 1].len();
        writeln!(out, "matrix {} {} {}", k + 1, d.len(), cols).unwrap();
        for (r, row) in d.iter().enumerate() {
            for (col, p) in row.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                let terms: Vec<String> = p.terms().map(|(e, coeff)| format!("{coeff} {}", join(e))).collect();
                writeln!(out, "entry {r} {col} {}", terms.join(" ")).unwrap();
            }
        }
    }
    writeln!(out, "end").unwrap();
    out
}

fn parse_ints(s: &str, line: usize) -> Result<Vec<i64>, ResolveError> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.parse::<i64>().map_err(|e| ResolveError::Format { line, message: format!("{x:?}: {e}") }))
        .collect()
}

fn bad(line: usize, message: &str) -> ResolveError {
    ResolveError::Format { line, message: message.to_string() }
}

/// Reads the machine format back.
pub fn parse_machine(text: &str) -> Result<LineBundleComplex, ResolveError> {
    let mut vars = None;
    let mut grading = Vec::new();
    let mut provenance = String::new();
    let mut terms: Vec<Vec<Vec<i64>>> = Vec::new();
    let mut differentials: Vec<Vec<Vec<Poly>>> = Vec::new();
    let mut seen_header = false;
    let mut ended = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let raw = raw.trim();
        if raw.is_empty() || raw.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = raw.split(' ').collect();
        match fields[0] {
            "toricres-complex" => {
                if fields.get(1) != Some(&"1") {
                    return Err(bad(line, "unsupported version"));
                }
                seen_header = true;
            }
            "vars" => vars = Some(fields.get(1).and_then(|x| x.parse().ok()).ok_or_else(|| bad(line, "bad vars"))?),
            "grading" => {
                grading = fields.get(1).map_or(Ok(Vec::new()), |g| g.split(';').map(|c| parse_ints(c, line)).collect())?
            }
            "provenance" => provenance = fields[1..].join(" "),
            "length" => {}
            "term" => {
                let i: usize = fields.get(1).and_then(|x| x.parse().ok()).ok_or_else(|| bad(line, "bad term index"))?;
                if i != terms.len() {
                    return Err(bad(line, "terms out of order"));
                }
                let classes = match fields.get(2) {
                    Some(list) => list.split(';').map(|c| parse_ints(c, line)).collect::<Result<_, _>>()?,
                    None => Vec::new(),
                };
                terms.push(classes);
            }
            "matrix" => {
                let nums: Vec<usize> = fields[1..].iter().filter_map(|x| x.parse().ok()).collect();
                if nums.len() != 3 || nums[0] != differentials.len() + 1 {
                    return Err(bad(line, "bad matrix header"));
                }
                differentials.push(vec![vec![Poly::zero(); nums[2]]; nums[1]]);
            }
            "entry" => {
                let m = differentials.last_mut().ok_or_else(|| bad(line, "entry before matrix"))?;
                let r: usize = fields.get(1).and_then(|x| x.parse().ok()).ok_or_else(|| bad(line, "bad row"))?;
                let c: usize = fields.get(2).and_then(|x| x.parse().ok()).ok_or_else(|| bad(line, "bad column"))?;
                if r >= m.len() || c >= m[0].len() || fields.len() < 5 || !(fields.len() - 3).is_multiple_of(2) {
                    return Err(bad(line, "bad entry"));
                }
                for pair in fields[3..].chunks(2) {
                    let coeff: Rat = pair[0].parse().map_err(|_| bad(line, "bad coefficient"))?;
                    m[r][c].add_term(parse_ints(pair[1], line)?, coeff);
                }
            }
            "end" => ended = true,
            other => return Err(bad(line, &format!("unknown record {other:?}"))),
        }
    }
    if !seen_header || !ended {
        return Err(bad(0, "missing header or end"));
    }
    let vars = vars.ok_or_else(|| bad(0, "missing vars"))?;
    Ok(LineBundleComplex { vars, grading, terms, differentials, provenance })
}

fn term_string(t: &[Vec<i64>]) -> String {
    if t.is_empty() {
        return "0".into();
    }
    let mut groups: Vec<(Vec<i64>, usize)> = Vec::new();
    for a in t {
        match groups.last_mut() {
            Some((b, n)) if b == a => *n += 1,
            _ => groups.push((a.clone(), 1)),
        }
    }
    groups
        .into_iter()
        .map(|(a, n)| if n == 1 { bundle_name(&a) } else { format!("{}^{n}", bundle_name(&a)) })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Terms, matrices and Betti table.
pub fn to_human(c: &LineBundleComplex, title: &str) -> String {
    let mut out = String::new();
    writeln!(out, "{title} ({} complex, length {})", c.provenance, c.length()).unwrap();
    let shape: Vec<String> = c.terms.iter().rev().map(|t| term_string(t)).collect();
    writeln!(out, "  {} -> 0", shape.join(" -> ")).unwrap();
    for (i, t) in c.terms.iter().enumerate() {
        let names: Vec<String> = t.iter().map(|a| bundle_name(a)).collect();
        writeln!(out, "  degree {i}: [{}]", names.join(", ")).unwrap();
    }
    for (k, d) in c.differentials.iter().enumerate() {
        writeln!(out, "  d_{}: degree {} -> degree {}", k + 1, k + 1, k).unwrap();
        let cells: Vec<Vec<String>> = d.iter().map(|row| row.iter().map(|p| p.to_string()).collect()).collect();
        let width = cells.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
        for row in cells {
            let padded: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            writeln!(out, "    [ {} ]", padded.join("  ")).unwrap();
        }
    }
    writeln!(out, "  Betti table (rows: degree, columns: summand):").unwrap();
    for line in betti_of(c).to_string().lines() {
        writeln!(out, "  {line}").unwrap();
    }
    out
}
