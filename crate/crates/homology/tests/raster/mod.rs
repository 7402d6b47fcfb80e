//! Oracle: relative cubical homology of a rasterization of (closure, removed
//! part), computed modulo a large prime.

use exactlin::{rat, HPolyhedron, Rat};
use homology::BettiVector;
use num_integer::Integer;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use strata::{StratComplex, StratumComponent};

const PRIME: i64 = 1_000_000_007;

/// An elementary grid cube: per coordinate, the lower grid index and whether
/// the coordinate spans a unit interval.
type Cube = Vec<(i64, bool)>;

fn cube_dim(c: &Cube) -> usize {
    c.iter().filter(|(_, open)| *open).count()
}

fn cube_boundary(c: &Cube) -> Vec<(Cube, i64)> {
    let mut out = Vec::new();
    let mut sign = 1;
    for j in 0..c.len() {
        if c[j].1 {
            let mut lo = c.clone();
            lo[j].1 = false;
            let mut hi = lo.clone();
            hi[j].0 += 1;
            out.push((hi, sign));
            out.push((lo, -sign));
            sign = -sign;
        }
    }
    out
}

fn all_faces(c: &Cube) -> Vec<Cube> {
    let mut out = vec![Vec::new()];
    for &(i, open) in c {
        let choices: Vec<(i64, bool)> = if open { vec![(i, true), (i, false), (i + 1, false)] } else { vec![(i, false)] };
        out = out.into_iter().flat_map(|v: Cube| choices.iter().map(move |&x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

/// `p` intersected with the closed box of the top-dimensional grid cube `idx`.
fn meets(p: &HPolyhedron, idx: &[i64], step: &Rat) -> bool {
    let mut q = p.clone();
    for (j, &i) in idx.iter().enumerate() {
        let mut e = vec![rat(0); idx.len()];
        e[j] = rat(1);
        q.ge(e.clone(), rat(i) * step);
        q.le(e, rat(i + 1) * step);
    }
    q.feasible()
}

fn grid_indices(lo: &[i64], hi: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for (a, b) in lo.iter().zip(hi) {
        out = out.into_iter().flat_map(|v: Vec<i64>| (*a..=*b).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

fn closed_star(tops: &[Vec<i64>]) -> BTreeSet<Cube> {
    tops.iter().flat_map(|idx| all_faces(&idx.iter().map(|&i| (i, true)).collect())).collect()
}

/// Rank of a sparse matrix over `Z/PRIME`, columns given as maps row -> value.
fn sparse_rank(mut cols: Vec<BTreeMap<usize, i64>>) -> usize {
    let mut pivot_of: HashMap<usize, usize> = HashMap::new();
    let mut rank = 0;
    for j in 0..cols.len() {
        loop {
            let Some((&low, &v)) = cols[j].iter().next_back() else { break };
            let Some(&k) = pivot_of.get(&low) else {
                pivot_of.insert(low, j);
                rank += 1;
                break;
            };
            let pv = cols[k][&low];
            let factor = (v * inverse_mod(pv)) % PRIME;
            let pivot_col = cols[k].clone();
            for (r, x) in pivot_col {
                let e = cols[j].entry(r).or_insert(0);
                *e = ((*e - factor * x) % PRIME + PRIME) % PRIME;
                if *e == 0 {
                    cols[j].remove(&r);
                }
            }
        }
    }
    rank
}

fn inverse_mod(a: i64) -> i64 {
    let g = i64::extended_gcd(&a.rem_euclid(PRIME), &PRIME);
    g.x.rem_euclid(PRIME)
}

/// `H^*_c` of the half-open component, from a grid of step `1/(16 L)` where
/// `L` clears the denominators of its vertices.
pub fn raster_hc(c: &StratComplex, comp: &StratumComponent) -> BettiVector {
    let dim = c.dim;
    let closure = c.component_closure(comp);
    let (poly, _) = c.component_faces(comp);
    let den = poly.vertices.iter().flatten().fold(1i64, |acc, x| {
        let d: i64 = x.denom().try_into().unwrap();
        acc.lcm(&d)
    });
    let step = exactlin::ratio(1, 16 * den);
    let lo: Vec<i64> = (0..dim)
        .map(|j| exactlin::floor_i64(&(poly.vertices.iter().map(|v| v[j].clone()).min().unwrap() / &step)) - 1)
        .collect();
    let hi: Vec<i64> = (0..dim)
        .map(|j| exactlin::floor_i64(&(poly.vertices.iter().map(|v| v[j].clone()).max().unwrap() / &step)) + 1)
        .collect();
    let grid = grid_indices(&lo, &hi);
    let upper_walls: Vec<HPolyhedron> = (0..c.directions.len())
        .map(|r| {
            let mut q = closure.clone();
            let normal: Vec<Rat> = c.directions[r].iter().map(|&x| rat(x)).collect();
            q.equal(normal, rat(comp.corner[r] + 1) - &c.offsets[comp.ambient_component][r]);
            q
        })
        .collect();
    let k_tops: Vec<Vec<i64>> = grid.iter().filter(|idx| meets(&closure, idx, &step)).cloned().collect();
    let l_tops: Vec<Vec<i64>> =
        k_tops.iter().filter(|idx| upper_walls.iter().any(|w| meets(w, idx, &step))).cloned().collect();
    let k = closed_star(&k_tops);
    let l = closed_star(&l_tops);
    let rel: Vec<Cube> = k.difference(&l).cloned().collect();
    let mut by_dim: Vec<Vec<&Cube>> = vec![Vec::new(); dim + 1];
    for cube in &rel {
        by_dim[cube_dim(cube)].push(cube);
    }
    let index: Vec<HashMap<&Cube, usize>> =
        by_dim.iter().map(|cs| cs.iter().enumerate().map(|(i, c)| (*c, i)).collect()).collect();
    let mut ranks = vec![0usize; dim + 2];
    for d in 1..=dim {
        let cols: Vec<BTreeMap<usize, i64>> = by_dim[d]
            .iter()
            .map(|cube| {
                cube_boundary(cube)
                    .into_iter()
                    .filter_map(|(f, s)| index[d - 1].get(&f).map(|&i| (i, s.rem_euclid(PRIME))))
                    .collect()
            })
            .collect();
        ranks[d] = sparse_rank(cols);
    }
    BettiVector((0..=dim).map(|d| by_dim[d].len() - ranks[d] - ranks[d + 1]).collect())
}
