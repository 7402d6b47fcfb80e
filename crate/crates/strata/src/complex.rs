//! Enumeration of the CW stratification of `V` (or of the whole torus) and of
//! the connected components of its cube strata.
//!
//! A component of `V` is parametrized as `t ↦ Y(t) = offset + G t` inside
//! `R^(n+k)`, where `offset = i(base point)` and `G = i B`. Deck translations
//! act by `t ↦ t + λ`, `λ ∈ Z^dim`, shifting `Y` by `G λ`. A CW cell is the
//! set where `Y_r = c_r` for `r ∉ J` and `c_r < Y_r < c_r + 1` for `r ∈ J`;
//! its cube label is `a = -c`. Every cell is stored in its normalized lift,
//! the translate whose vertex barycenter lies in `[0,1)^dim`.

use crate::{StrataError, SubtorusData};
use exactlin::polytope::combinations;
use exactlin::{face_lattice, floor_i64, rat, HPolyhedron, Polytope, Rat, RatMatrix};
use num_traits::{Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use toricdata::LatticeSES;

#[derive(Clone, Debug)]
pub struct StratCell {
    pub id: usize,
    /// Connected component of `V` containing the cell.
    pub ambient_component: usize,
    pub dim: usize,
    /// `c = ⌊Y⌋` on the normalized lift.
    pub corner: Vec<i64>,
    /// Coordinates `r` with `Y_r` non-integral on the cell.
    pub open_coords: Vec<usize>,
    /// `π(-corner)`.
    pub class: Vec<i64>,
    /// Barycenter of the normalized lift, in `t`-coordinates.
    pub sample: Vec<Rat>,
    /// Vertices of the closure of the normalized lift.
    pub vertices: Vec<Vec<Rat>>,
    /// The relatively open cell in `t`-coordinates.
    pub polyhedron: HPolyhedron,
    /// Ordered basis of the tangent space (reduced row echelon form).
    pub orientation: Vec<Vec<Rat>>,
}

impl StratCell {
    /// The cube label `a = -corner`.
    pub fn label(&self) -> Vec<i64> {
        self.corner.iter().map(|c| -c).collect()
    }
}

/// `face` lies in the closure of `cell` after translating the normalized lift
/// of `face` by `shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Incidence {
    pub cell: usize,
    pub face: usize,
    pub shift: Vec<i64>,
    /// Attaching degree under the stored orientations.
    pub sign: i64,
    /// Corner of the translated face.
    pub face_corner: Vec<i64>,
}

/// One connected component of a cube stratum: the orbit of a single convex
/// set `{ c <= Y < c + 1 }` under the deck group.
#[derive(Clone, Debug)]
pub struct StratumComponent {
    pub id: usize,
    pub ambient_component: usize,
    pub class: Vec<i64>,
    /// Corner of the representative lift (lexicographically minimal label).
    pub corner: Vec<i64>,
    /// Member cells with the deck shift carrying each normalized lift into
    /// the representative lift.
    pub cells: Vec<(usize, Vec<i64>)>,
    pub dim: usize,
}

impl StratumComponent {
    pub fn label(&self) -> Vec<i64> {
        self.corner.iter().map(|c| -c).collect()
    }
}

#[derive(Clone, Debug)]
pub struct StratComplex {
    pub ambient: SubtorusData,
    /// Number of Cox variables `n + k`.
    pub vars: usize,
    /// Dimension of `V`.
    pub dim: usize,
    /// `Y(0)` for each component of `V`.
    pub offsets: Vec<Vec<Rat>>,
    /// Rows of `G = i B`, one per Cox variable.
    pub directions: Vec<Vec<i64>>,
    pub class_map: Vec<Vec<i64>>,
    pub cells: Vec<StratCell>,
    pub incidences: Vec<Incidence>,
    pub components: Vec<StratumComponent>,
    /// Component of the cube stratum containing each cell.
    pub cell_component: Vec<usize>,
}

fn class_of(class_map: &[Vec<i64>], a: &[i64]) -> Vec<i64> {
    class_map.iter().map(|row| row.iter().zip(a).map(|(x, y)| x * y).sum()).collect()
}

impl StratComplex {
    /// `Y(t)` on component `comp`.
    pub fn eval(&self, comp: usize, t: &[Rat]) -> Vec<Rat> {
        eval(&self.offsets[comp], &self.directions, t)
    }

    /// `G λ` for an integer deck translation.
    pub fn shift_corner(&self, corner: &[i64], shift: &[i64]) -> Vec<i64> {
        corner
            .iter()
            .zip(&self.directions)
            .map(|(c, g)| c + g.iter().zip(shift).map(|(x, y)| x * y).sum::<i64>())
            .collect()
    }

    pub fn class_of(&self, a: &[i64]) -> Vec<i64> {
        class_of(&self.class_map, a)
    }

    /// Cells of dimension `d`, by id.
    pub fn cells_of_dim(&self, d: usize) -> Vec<usize> {
        self.cells.iter().filter(|c| c.dim == d).map(|c| c.id).collect()
    }

    /// Incidences with `cell` as the higher-dimensional cell.
    pub fn facets_of(&self, cell: usize) -> impl Iterator<Item = &Incidence> {
        self.incidences.iter().filter(move |i| i.cell == cell)
    }

    /// Distinct classes of the cube strata, sorted lexicographically.
    pub fn classes(&self) -> Vec<Vec<i64>> {
        let s: BTreeSet<Vec<i64>> = self.components.iter().map(|c| c.class.clone()).collect();
        s.into_iter().collect()
    }

    pub fn components_of_class(&self, class: &[i64]) -> Vec<&StratumComponent> {
        self.components.iter().filter(|c| c.class == class).collect()
    }

    /// The half-open convex set `{ c <= Y < c + 1 }` of a component, in the
    /// representative lift.
    pub fn component_polyhedron(&self, comp: &StratumComponent) -> HPolyhedron {
        half_open_box(&self.offsets[comp.ambient_component], &self.directions, &comp.corner, self.dim)
    }

    /// Closure `{ c <= Y <= c + 1 }` of a component's representative lift.
    pub fn component_closure(&self, comp: &StratumComponent) -> HPolyhedron {
        closed_box(&self.offsets[comp.ambient_component], &self.directions, &comp.corner, self.dim)
    }

    /// Face lattice of the closure, with the faces removed to obtain the
    /// half-open set (those on which some upper bound `Y_r <= c_r + 1` is
    /// tight).
    pub fn component_faces(&self, comp: &StratumComponent) -> (Polytope, Vec<bool>) {
        let closure = self.component_closure(comp);
        let poly = face_lattice(&closure).expect("components are bounded").expect("components are nonempty");
        // Constraint 2r is the lower bound of row r, 2r + 1 the upper bound.
        let removed = poly
            .faces
            .iter()
            .map(|f| f.tight.iter().any(|&c| c % 2 == 1))
            .collect();
        (poly, removed)
    }
}

fn eval(offset: &[Rat], directions: &[Vec<i64>], t: &[Rat]) -> Vec<Rat> {
    offset
        .iter()
        .zip(directions)
        .map(|(o, g)| {
            let mut y = o.clone();
            for (x, tj) in g.iter().zip(t) {
                if *x != 0 {
                    y += rat(*x) * tj;
                }
            }
            y
        })
        .collect()
}

fn cell_polyhedron(offset: &[Rat], directions: &[Vec<i64>], corner: &[i64], open: &[usize], dim: usize) -> HPolyhedron {
    let mut p = HPolyhedron::new(dim);
    for (r, g) in directions.iter().enumerate() {
        let normal: Vec<Rat> = g.iter().map(|&x| rat(x)).collect();
        let lo = rat(corner[r]) - &offset[r];
        if open.contains(&r) {
            p.gt(normal.clone(), lo);
            p.lt(normal, rat(corner[r] + 1) - &offset[r]);
        } else {
            p.equal(normal, lo);
        }
    }
    p
}

fn half_open_box(offset: &[Rat], directions: &[Vec<i64>], corner: &[i64], dim: usize) -> HPolyhedron {
    let mut p = HPolyhedron::new(dim);
    for (r, g) in directions.iter().enumerate() {
        let normal: Vec<Rat> = g.iter().map(|&x| rat(x)).collect();
        p.ge(normal.clone(), rat(corner[r]) - &offset[r]);
        p.lt(normal, rat(corner[r] + 1) - &offset[r]);
    }
    p
}

/// Closed box `{ c <= Y <= c + 1 }`, constraint `2r` the lower and `2r + 1`
/// the upper bound of row `r`.
fn closed_box(offset: &[Rat], directions: &[Vec<i64>], corner: &[i64], dim: usize) -> HPolyhedron {
    let mut p = HPolyhedron::new(dim);
    for (r, g) in directions.iter().enumerate() {
        let normal: Vec<Rat> = g.iter().map(|&x| rat(x)).collect();
        p.ge(normal.clone(), rat(corner[r]) - &offset[r]);
        p.le(normal, rat(corner[r] + 1) - &offset[r]);
    }
    p
}

fn floor_vec(v: &[Rat]) -> Vec<i64> {
    v.iter().map(floor_i64).collect()
}

fn label_point(y: &[Rat]) -> (Vec<i64>, Vec<usize>) {
    let corner = floor_vec(y);
    let open = (0..y.len()).filter(|&r| !y[r].is_integer()).collect();
    (corner, open)
}

/// Ordered RREF basis of `{ d : G_r · d = 0 for r ∉ J }`.
fn tangent_basis(directions: &[Vec<i64>], open: &[usize], dim: usize) -> Vec<Vec<Rat>> {
    let rows: Vec<Vec<Rat>> = (0..directions.len())
        .filter(|r| !open.contains(r))
        .map(|r| directions[r].iter().map(|&x| rat(x)).collect())
        .collect();
    let null = if rows.is_empty() {
        (0..dim).map(|i| (0..dim).map(|j| rat(i64::from(i == j))).collect()).collect()
    } else {
        RatMatrix::from_rows(&rows, dim).nullspace()
    };
    if null.is_empty() {
        return null;
    }
    let (r, pivots) = RatMatrix::from_rows(&null, dim).rref();
    (0..pivots.len()).map(|i| r.row(i)).collect()
}

/// Sign of the attaching map of `face` in `cell`: the orientation induced on
/// the face by the outward direction followed by the face basis, compared
/// with the face's own basis.
fn attaching_sign(cell_basis: &[Vec<Rat>], outward: &[Rat], face_basis: &[Vec<Rat>], dim: usize) -> i64 {
    let d = cell_basis.len();
    let cols = RatMatrix::from_rows(cell_basis, dim).transpose();
    let mut coords: Vec<Vec<Rat>> = Vec::with_capacity(d);
    for w in std::iter::once(outward).chain(face_basis.iter().map(|v| v.as_slice())) {
        coords.push(cols.solve(w).expect("face directions lie in the cell's tangent space"));
    }
    let det = RatMatrix::from_rows(&coords, d).determinant();
    assert!(!det.is_zero(), "degenerate attaching map");
    if det.is_positive() {
        1
    } else {
        -1
    }
}

struct Builder<'a> {
    offset: &'a [Rat],
    directions: &'a [Vec<i64>],
    dim: usize,
}

impl Builder<'_> {
    fn shift(&self, corner: &[i64], lambda: &[i64]) -> Vec<i64> {
        corner
            .iter()
            .zip(self.directions)
            .map(|(c, g)| c + g.iter().zip(lambda).map(|(x, y)| x * y).sum::<i64>())
            .collect()
    }

    /// Vertices of the periodic arrangement `{ Y_r ∈ Z }` in `[0,1)^dim`.
    fn arrangement_vertices(&self) -> Vec<Vec<Rat>> {
        let moving: Vec<usize> = (0..self.directions.len()).filter(|&r| self.directions[r].iter().any(|&x| x != 0)).collect();
        let mut out: BTreeSet<Vec<Rat>> = BTreeSet::new();
        for subset in combinations(moving.len(), self.dim) {
            let rows: Vec<usize> = subset.iter().map(|&i| moving[i]).collect();
            let m = RatMatrix::from_rows(
                &rows.iter().map(|&r| self.directions[r].iter().map(|&x| rat(x)).collect()).collect::<Vec<_>>(),
                self.dim,
            );
            let Some(inv) = m.inverse() else { continue };
            let ranges: Vec<(i64, i64)> = rows
                .iter()
                .map(|&r| {
                    let g = &self.directions[r];
                    let lo: i64 = g.iter().filter(|&&x| x < 0).sum();
                    let hi: i64 = g.iter().filter(|&&x| x > 0).sum();
                    let o = &self.offset[r];
                    (floor_i64(&(o + rat(lo))) , floor_i64(&(o + rat(hi))) + 1)
                })
                .collect();
            let mut z: Vec<i64> = ranges.iter().map(|r| r.0).collect();
            loop {
                let rhs: Vec<Rat> = rows.iter().zip(&z).map(|(&r, &zi)| rat(zi) - &self.offset[r]).collect();
                let t = inv.mul_vec(&rhs);
                if t.iter().all(|x| !x.is_negative() && *x < rat(1)) {
                    out.insert(t);
                }
                let mut i = 0;
                loop {
                    if i == z.len() {
                        break;
                    }
                    z[i] += 1;
                    if z[i] <= ranges[i].1 {
                        break;
                    }
                    z[i] = ranges[i].0;
                    i += 1;
                }
                if i == z.len() {
                    break;
                }
            }
        }
        out.into_iter().collect()
    }

    /// Corners of top cells whose closure contains the point `t`.
    fn top_corners_at(&self, t: &[Rat]) -> Vec<Vec<i64>> {
        let y = eval(self.offset, self.directions, t);
        let mut corners: Vec<Vec<i64>> = vec![Vec::new()];
        for (r, yr) in y.iter().enumerate() {
            let moving = self.directions[r].iter().any(|&x| x != 0);
            let fl = floor_i64(yr);
            let choices: Vec<i64> = if moving && yr.is_integer() { vec![fl - 1, fl] } else { vec![fl] };
            corners = corners
                .into_iter()
                .flat_map(|c| {
                    choices.iter().map(move |&x| {
                        let mut c = c.clone();
                        c.push(x);
                        c
                    })
                })
                .collect();
        }
        corners
            .into_iter()
            .filter(|c| {
                let open: Vec<usize> =
                    (0..y.len()).filter(|&r| self.directions[r].iter().any(|&x| x != 0) || !y[r].is_integer()).collect();
                cell_polyhedron(self.offset, self.directions, c, &open, self.dim).feasible()
            })
            .collect()
    }
}

struct RawCell {
    dim: usize,
    corner: Vec<i64>,
    open: Vec<usize>,
    sample: Vec<Rat>,
    vertices: Vec<Vec<Rat>>,
}

/// Builds the CW stratification of `ambient` together with its cube-strata
/// components.
pub fn build_complex(ses: &LatticeSES, ambient: &SubtorusData) -> Result<StratComplex, StrataError> {
    let dim = ambient.dim();
    let vars = ses.vars();
    let rays = ses.rays();
    // G = i B.
    let directions: Vec<Vec<i64>> =
        rays.iter().map(|rho| ambient.kernel_basis.iter().map(|b| rho.iter().zip(b).map(|(x, y)| x * y).sum()).collect()).collect();
    let offsets: Vec<Vec<Rat>> = ambient
        .base_points
        .iter()
        .map(|p| rays.iter().map(|rho| rho.iter().zip(p).map(|(&x, y)| rat(x) * y).sum()).collect())
        .collect();
    let class_map = ses.class_map.to_i64_rows();

    let mut cells: Vec<StratCell> = Vec::new();
    let mut incidences: Vec<Incidence> = Vec::new();

    for (comp, offset) in offsets.iter().enumerate() {
        let builder = Builder { offset, directions: &directions, dim };
        let mut index: BTreeMap<(Vec<i64>, Vec<usize>), usize> = BTreeMap::new();
        let mut raw: Vec<RawCell> = Vec::new();
        let mut local_inc: BTreeSet<(usize, usize, Vec<i64>)> = BTreeSet::new();
        let mut inc_list: Vec<(usize, usize, Vec<i64>, i64)> = Vec::new();

        if dim == 0 {
            let (corner, open) = label_point(offset);
            raw.push(RawCell { dim: 0, corner, open, sample: Vec::new(), vertices: vec![Vec::new()] });
        } else {
            let mut seen_top: BTreeSet<Vec<i64>> = BTreeSet::new();
            for v in builder.arrangement_vertices() {
                for corner in builder.top_corners_at(&v) {
                    let boxed = closed_box(offset, &directions, &corner, dim);
                    let poly = face_lattice(&boxed)?.expect("top cell closure is nonempty");
                    let bary = poly.barycenter(poly.top());
                    let lambda: Vec<i64> = bary.iter().map(|x| -floor_i64(x)).collect();
                    let norm_corner = builder.shift(&corner, &lambda);
                    if !seen_top.insert(norm_corner.clone()) {
                        continue;
                    }
                    let boxed = closed_box(offset, &directions, &norm_corner, dim);
                    let poly = face_lattice(&boxed)?.expect("top cell closure is nonempty");
                    record_faces(&builder, &poly, &mut index, &mut raw, &mut local_inc, &mut inc_list);
                }
            }
        }

        let base = cells.len();
        for (i, rc) in raw.into_iter().enumerate() {
            let label: Vec<i64> = rc.corner.iter().map(|c| -c).collect();
            cells.push(StratCell {
                id: base + i,
                ambient_component: comp,
                dim: rc.dim,
                class: class_of(&class_map, &label),
                polyhedron: cell_polyhedron(offset, &directions, &rc.corner, &rc.open, dim),
                orientation: tangent_basis(&directions, &rc.open, dim),
                corner: rc.corner,
                open_coords: rc.open,
                sample: rc.sample,
                vertices: rc.vertices,
            });
        }
        for (e, f, shift, sign) in inc_list {
            let face_corner = builder.shift(&cells[base + f].corner, &shift);
            incidences.push(Incidence { cell: base + e, face: base + f, shift, sign, face_corner });
        }
    }

    let mut complex = StratComplex {
        ambient: ambient.clone(),
        vars,
        dim,
        offsets,
        directions,
        class_map,
        cells,
        incidences,
        components: Vec::new(),
        cell_component: Vec::new(),
    };
    assign_signs(&mut complex);
    assign_components(&mut complex);
    Ok(complex)
}

fn record_faces(
    builder: &Builder<'_>,
    poly: &Polytope,
    index: &mut BTreeMap<(Vec<i64>, Vec<usize>), usize>,
    raw: &mut Vec<RawCell>,
    local_inc: &mut BTreeSet<(usize, usize, Vec<i64>)>,
    inc_list: &mut Vec<(usize, usize, Vec<i64>, i64)>,
) {
    let mut ids: Vec<usize> = Vec::with_capacity(poly.faces.len());
    let mut mus: Vec<Vec<i64>> = Vec::with_capacity(poly.faces.len());
    for (fi, face) in poly.faces.iter().enumerate() {
        let b = poly.barycenter(fi);
        let (corner, open) = label_point(&eval(builder.offset, builder.directions, &b));
        let mu: Vec<i64> = b.iter().map(|x| -floor_i64(x)).collect();
        let norm_corner = builder.shift(&corner, &mu);
        let key = (norm_corner.clone(), open.clone());
        let id = *index.entry(key).or_insert_with(|| {
            let shift_t = |p: &Vec<Rat>| -> Vec<Rat> { p.iter().zip(&mu).map(|(x, &m)| x + rat(m)).collect() };
            raw.push(RawCell {
                dim: face.dim,
                corner: norm_corner,
                open,
                sample: shift_t(&b),
                vertices: face.vertices.iter().map(|&v| shift_t(&poly.vertices[v])).collect(),
            });
            raw.len() - 1
        });
        debug_assert_eq!(raw[id].dim, face.dim);
        ids.push(id);
        mus.push(mu);
    }
    for (ei, face) in poly.faces.iter().enumerate() {
        for &fi in &face.facets {
            let shift: Vec<i64> = mus[ei].iter().zip(&mus[fi]).map(|(a, b)| a - b).collect();
            if local_inc.insert((ids[ei], ids[fi], shift.clone())) {
                inc_list.push((ids[ei], ids[fi], shift, 0));
            }
        }
    }
}

fn assign_signs(complex: &mut StratComplex) {
    let dim = complex.dim;
    for idx in 0..complex.incidences.len() {
        let inc = &complex.incidences[idx];
        let cell = &complex.cells[inc.cell];
        let face = &complex.cells[inc.face];
        // Face barycenter in the cell's frame minus the cell barycenter.
        let outward: Vec<Rat> =
            (0..dim).map(|j| &face.sample[j] + rat(inc.shift[j]) - &cell.sample[j]).collect();
        let sign = attaching_sign(&cell.orientation, &outward, &face.orientation, dim);
        complex.incidences[idx].sign = sign;
    }
}

fn assign_components(complex: &mut StratComplex) {
    let n = complex.cells.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for inc in &complex.incidences {
        if inc.face_corner == complex.cells[inc.cell].corner {
            let (a, b) = (find(&mut parent, inc.cell), find(&mut parent, inc.face));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        } else {
            debug_assert!(
                complex.class_of(&neg(&inc.face_corner)) != complex.cells[inc.cell].class,
                "adjacent cells of the same class carry different labels"
            );
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for c in 0..n {
        let r = find(&mut parent, c);
        groups.entry(r).or_default().push(c);
    }
    let mut comps: Vec<StratumComponent> = groups
        .into_values()
        .map(|members| {
            let first = &complex.cells[members[0]];
            let rep = members.iter().map(|&m| neg(&complex.cells[m].corner)).min().unwrap();
            let corner = neg(&rep);
            let cells = members
                .iter()
                .map(|&m| (m, solve_shift(&complex.directions, &complex.cells[m].corner, &corner)))
                .collect();
            StratumComponent {
                id: 0,
                ambient_component: first.ambient_component,
                class: first.class.clone(),
                dim: members.iter().map(|&m| complex.cells[m].dim).max().unwrap(),
                corner,
                cells,
            }
        })
        .collect();
    comps.sort_by(|a, b| (&a.class, a.ambient_component, a.label()).cmp(&(&b.class, b.ambient_component, b.label())));
    let mut cell_component = vec![0; n];
    for (i, c) in comps.iter_mut().enumerate() {
        c.id = i;
        for (m, _) in &c.cells {
            cell_component[*m] = i;
        }
    }
    complex.components = comps;
    complex.cell_component = cell_component;
}

fn neg(v: &[i64]) -> Vec<i64> {
    v.iter().map(|x| -x).collect()
}

/// The integer `λ` with `from + G λ = to`.
fn solve_shift(directions: &[Vec<i64>], from: &[i64], to: &[i64]) -> Vec<i64> {
    let dim = directions.first().map_or(0, |g| g.len());
    if dim == 0 {
        assert_eq!(from, to);
        return Vec::new();
    }
    let g = RatMatrix::from_rows(&directions.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect::<Vec<_>>(), dim);
    let rhs: Vec<Rat> = to.iter().zip(from).map(|(a, b)| rat(a - b)).collect();
    let x = g.solve(&rhs).expect("member cells are deck translates of the representative");
    x.iter()
        .map(|v| {
            assert!(v.is_integer(), "non-integral deck shift");
            floor_i64(v)
        })
        .collect()
}
