//! Line-based plot data for stratifications of tori of dimension at most 2.
//!
//! Format, one record per line, fields separated by single spaces:
//!
//! ```text
//! # plot-data v1 ambient_dim=<n> dim=<k>
//! cell <id> dim <d> class <c1,..> label <a1,..> component <stratum component id> vertices <x,y>;<x,y>;...
//! ```
//!
//! Vertex coordinates are rationals `p/q` in `M_R`, given for the normalized
//! lift of each cell.

use crate::StratComplex;
use exactlin::Rat;
use std::fmt::Write;

fn join_i64(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn join_rat(v: &[Rat]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Plot data, or `None` when the ambient torus has dimension above 2.
pub fn plot_data(complex: &StratComplex) -> Option<String> {
    let n = complex.ambient.ambient_dim();
    if n > 2 {
        return None;
    }
    let mut out = String::new();
    writeln!(out, "# plot-data v1 ambient_dim={n} dim={}", complex.dim).unwrap();
    for cell in &complex.cells {
        let verts: Vec<String> =
            cell.vertices.iter().map(|t| join_rat(&complex.ambient.point(cell.ambient_component, t))).collect();
        writeln!(
            out,
            "cell {} dim {} class {} label {} component {} vertices {}",
            cell.id,
            cell.dim,
            join_i64(&cell.class),
            join_i64(&cell.label()),
            complex.cell_component[cell.id],
            verts.join(";")
        )
        .unwrap();
    }
    Some(out)
}
