use exactlin::{face_lattice, floor_i64, rat, ratio, Rat};
use proptest::prelude::*;
use std::collections::BTreeMap;
use strata::*;
use toricdata::{build_ses, Fan, LatticeSES, ToricMorphism};

fn p2() -> LatticeSES {
    build_ses(&Fan::new(vec![vec![0, 1], vec![1, 0], vec![-1, -1]], vec![vec![0, 1], vec![1, 2], vec![0, 2]])).unwrap()
}

fn p1() -> LatticeSES {
    build_ses(&Fan::projective_space(1)).unwrap()
}

fn p1xp1() -> LatticeSES {
    build_ses(&Fan::projective_space(1).product(&Fan::projective_space(1))).unwrap()
}

fn torus(ses: &LatticeSES) -> StratComplex {
    cw_strata(ses, &SubtorusData::torus(ses.n)).unwrap()
}

fn subtorus(ses: &LatticeSES, rows: &[Vec<i64>], source_dim: usize) -> StratComplex {
    let v = subtorus_data(ses, &ToricMorphism::from_rows(rows, source_dim)).unwrap();
    cw_strata(ses, &v).unwrap()
}

fn cubic() -> StratComplex {
    subtorus(&p2(), &[vec![2], vec![3]], 1)
}

fn component_counts(c: &StratComplex) -> BTreeMap<Vec<i64>, usize> {
    let mut m = BTreeMap::new();
    for comp in &c.components {
        *m.entry(comp.class.clone()).or_insert(0) += 1;
    }
    m
}

#[test]
fn p2_bondal_classes() {
    let classes: Vec<Vec<i64>> = bondal_classes(&p2()).unwrap().into_iter().map(|c| c.class).collect();
    assert_eq!(classes, vec![vec![0], vec![1], vec![2]]);
}

#[test]
fn p1_bondal_classes() {
    let classes: Vec<Vec<i64>> = bondal_classes(&p1()).unwrap().into_iter().map(|c| c.class).collect();
    assert_eq!(classes, vec![vec![0], vec![1]]);
}

#[test]
fn p1xp1_bondal_classes() {
    let classes: Vec<Vec<i64>> = bondal_classes(&p1xp1()).unwrap().into_iter().map(|c| c.class).collect();
    assert_eq!(classes, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
}

#[test]
fn p2_cube_strata_are_point_half_open_and_open_triangles() {
    let ses = p2();
    let c = cube_strata(&ses, &SubtorusData::torus(2)).unwrap();
    assert_eq!(c.components.len(), 3);
    let kinds: Vec<(Vec<i64>, usize, usize, bool, bool)> = c
        .components
        .iter()
        .map(|comp| {
            let (poly, removed) = c.component_faces(comp);
            let closed = removed.iter().all(|r| !r);
            let open = removed.iter().enumerate().all(|(i, &r)| r == (poly.faces[i].dim < poly.dim()));
            (comp.class.clone(), comp.dim, poly.vertices.len(), closed, open)
        })
        .collect();
    assert_eq!(
        kinds,
        vec![
            // A point has no proper faces, so it is both closed and open.
            (vec![0], 0, 1, true, true),
            (vec![1], 2, 3, false, false),
            (vec![2], 2, 3, false, true),
        ]
    );
    // Class 0 is the single point {0}.
    assert_eq!(c.components[0].corner, vec![0, 0, 0]);
}

#[test]
fn p2_cw_cells() {
    let c = torus(&p2());
    let mut cells: Vec<(usize, Vec<i64>, Vec<usize>)> =
        c.cells.iter().map(|e| (e.dim, e.class.clone(), e.open_coords.clone())).collect();
    cells.sort();
    assert_eq!(
        cells,
        vec![
            (0, vec![0], vec![]),
            (1, vec![1], vec![0, 1]),
            (1, vec![1], vec![0, 2]),
            (1, vec![1], vec![1, 2]),
            (2, vec![1], vec![0, 1, 2]),
            (2, vec![2], vec![0, 1, 2]),
        ]
    );
}

#[test]
fn p1_cw_cells() {
    let c = torus(&p1());
    let cells: Vec<(usize, Vec<i64>)> = c.cells.iter().map(|e| (e.dim, e.class.clone())).collect();
    assert_eq!(cells.len(), 2);
    assert!(cells.contains(&(0, vec![0])));
    assert!(cells.contains(&(1, vec![1])));
}

#[test]
fn cubic_subtorus_data() {
    let v = subtorus_data(&p2(), &ToricMorphism::from_rows(&[vec![2], vec![3]], 1)).unwrap();
    assert_eq!(v.dim(), 1);
    assert_eq!(v.kernel_basis, vec![vec![3, -2]]);
    assert_eq!(v.component_count(), 1);
}

#[test]
fn frobenius_subtorus_is_a_finite_group() {
    let v = subtorus_data(&p1(), &ToricMorphism::frobenius(1, 3)).unwrap();
    assert_eq!(v.dim(), 0);
    assert_eq!(v.base_points, vec![vec![rat(0)], vec![ratio(1, 3)], vec![ratio(2, 3)]]);
    let v = subtorus_data(&p2(), &ToricMorphism::frobenius(2, 2)).unwrap();
    assert_eq!(v.component_count(), 4);
}

#[test]
fn identity_subtorus_is_the_origin() {
    let ses = p2();
    let v = subtorus_data(&ses, &ToricMorphism::identity(2)).unwrap();
    assert_eq!((v.dim(), v.component_count()), (0, 1));
    let c = cw_strata(&ses, &v).unwrap();
    assert_eq!(c.cells.len(), 1);
    assert_eq!(c.cells[0].class, vec![0]);
}

#[test]
fn non_injective_morphism_is_rejected() {
    assert!(subtorus_data(&p2(), &ToricMorphism::from_rows(&[vec![1, 2], vec![2, 4]], 2)).is_err());
}

#[test]
fn cubic_strata_component_counts() {
    let c = cubic();
    let counts = component_counts(&c);
    assert_eq!(counts, BTreeMap::from([(vec![0], 1), (vec![1], 2), (vec![2], 2)]));
}

#[test]
fn cubic_cw_has_four_vertices_and_four_edges() {
    let c = cubic();
    assert_eq!(c.cells_of_dim(0).len(), 4);
    assert_eq!(c.cells_of_dim(1).len(), 4);
    assert_eq!(c.cells.len(), 8);
}

#[test]
fn p2_exit_and_entrance_spaces() {
    let c = torus(&p2());
    let by_class = |k: i64| c.components.iter().find(|x| x.class == vec![k]).unwrap();
    let top = by_class(2);
    let exit = c.exit_space(top);
    assert!(exit.is_closed());
    let poly = face_lattice(&exit).unwrap().unwrap();
    assert_eq!(poly.vertices.len(), 3);

    let ent = c.entrance_space(top);
    assert!(ent.is_open());
    let ent_poly = face_lattice(&ent).unwrap().unwrap();
    let slice = face_lattice(&c.component_closure(top)).unwrap().unwrap();
    assert_eq!(ent_poly.vertices, slice.vertices);

    let zero = by_class(0);
    let exit0 = face_lattice(&c.exit_space(zero)).unwrap().unwrap();
    assert_eq!(exit0.vertices, vec![vec![rat(0), rat(0)]]);
    let ent0 = face_lattice(&c.entrance_space(zero)).unwrap().unwrap();
    assert_eq!(ent0.vertices, vec![vec![rat(-2), rat(1)], vec![rat(1), rat(-2)], vec![rat(1), rat(1)]]);
}

#[test]
fn p2_top_cell_exit_space_is_its_closure() {
    let c = torus(&p2());
    let cell = c.cells.iter().find(|e| e.dim == 2 && e.class == vec![2]).unwrap();
    let poly = face_lattice(&c.cell_exit_space(cell)).unwrap().unwrap();
    assert_eq!(poly.vertices, vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)], vec![rat(1), rat(1)]]);
}

#[test]
fn p1_point_entrance_space_has_length_two() {
    let c = torus(&p1());
    let zero = c.components.iter().find(|x| x.class == vec![0]).unwrap();
    let range = c.entrance_space(zero).coordinate_range(0).unwrap();
    assert_eq!(range.0, Some((rat(-1), true)));
    assert_eq!(range.1, Some((rat(1), true)));
}

#[test]
fn subtorus_exit_spaces_are_bounded() {
    let c = cubic();
    for comp in &c.components {
        assert!(face_lattice(&c.exit_space(comp)).is_ok());
        assert!(c.exit_space(comp).lattice_points().is_ok());
    }
}

#[test]
fn plot_data_lists_every_cell() {
    let c = torus(&p2());
    let text = plot::plot_data(&c).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("cell ")).count(), 6);
    let three = torus(&build_ses(&Fan::projective_space(3)).unwrap());
    assert!(plot::plot_data(&three).is_none());
}

// ---------------------------------------------------------------------------
// Properties over a family of small inputs.

fn targets() -> Vec<LatticeSES> {
    vec![p1(), p2(), p1xp1(), build_ses(&Fan::hirzebruch(1)).unwrap(), build_ses(&Fan::hirzebruch(2)).unwrap()]
}

/// A random ambient: the torus, a point set, or an injective image.
fn ambient_strategy() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (0usize..5, 0usize..3, prop::collection::vec(-4i64..=4, 4))
}

fn build_case(target: usize, source_dim: usize, entries: &[i64]) -> Option<(LatticeSES, StratComplex)> {
    let ses = targets().swap_remove(target);
    let n = ses.n;
    let s = source_dim.min(n);
    let rows: Vec<Vec<i64>> = (0..n).map(|i| (0..s).map(|j| entries[i * 2 + j]).collect()).collect();
    let f = ToricMorphism::from_rows(&rows, s);
    let v = subtorus_data(&ses, &f).ok()?;
    let c = cw_strata(&ses, &v).ok()?;
    Some((ses, c))
}

fn boundary(c: &StratComplex, d: usize) -> BTreeMap<(usize, usize), i64> {
    let mut m = BTreeMap::new();
    for inc in &c.incidences {
        if c.cells[inc.cell].dim == d {
            *m.entry((inc.face, inc.cell)).or_insert(0) += inc.sign;
        }
    }
    m
}

fn deck_range(c: &StratComplex) -> i64 {
    c.cells.iter().flat_map(|e| e.vertices.iter().flatten()).map(|x| floor_i64(&num_traits::Signed::abs(x))).max().unwrap_or(0) + 2
}

fn shifts(dim: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..dim {
        out = out.into_iter().flat_map(|v| (-r..=r).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn grid_points_lie_in_exactly_one_cell((t, s, e) in ambient_strategy()) {
        let Some((_, c)) = build_case(t, s, &e) else { return Ok(()) };
        let r = deck_range(&c);
        let lambdas = shifts(c.dim, r);
        for comp in 0..c.ambient.component_count() {
            for grid in shifts(c.dim, 3).into_iter().map(|v| v.into_iter().map(|x| x + 3).collect::<Vec<i64>>()) {
                let pt: Vec<Rat> = grid.iter().map(|&x| ratio(x, 7)).collect();
                let mut hits = 0;
                for cell in c.cells.iter().filter(|e| e.ambient_component == comp) {
                    for l in &lambdas {
                        let q: Vec<Rat> = pt.iter().zip(l).map(|(x, &y)| x - rat(y)).collect();
                        if cell.polyhedron.contains(&q) {
                            hits += 1;
                        }
                    }
                }
                prop_assert_eq!(hits, 1, "point {:?}", pt);
            }
        }
    }

    #[test]
    fn euler_characteristic_matches_ambient((t, s, e) in ambient_strategy()) {
        let Some((_, c)) = build_case(t, s, &e) else { return Ok(()) };
        let chi: i64 = c.cells.iter().map(|e| if e.dim % 2 == 0 { 1 } else { -1 }).sum();
        let expected = if c.dim == 0 { c.ambient.component_count() as i64 } else { 0 };
        prop_assert_eq!(chi, expected);
    }

    #[test]
    fn boundary_squares_to_zero((t, s, e) in ambient_strategy()) {
        let Some((_, c)) = build_case(t, s, &e) else { return Ok(()) };
        prop_assert!(c.incidences.iter().all(|i| i.sign == 1 || i.sign == -1));
        for d in 2..=c.dim {
            let hi = boundary(&c, d);
            let lo = boundary(&c, d - 1);
            let mut prod: BTreeMap<(usize, usize), i64> = BTreeMap::new();
            for (&(mid, top), &a) in &hi {
                for (&(bot, m2), &b) in &lo {
                    if m2 == mid {
                        *prod.entry((bot, top)).or_insert(0) += a * b;
                    }
                }
            }
            prop_assert!(prod.values().all(|&v| v == 0));
        }
    }

    #[test]
    fn codimension_one_cells_bound_two_top_cells((t, s, e) in ambient_strategy()) {
        let Some((_, c)) = build_case(t, s, &e) else { return Ok(()) };
        if c.dim == 0 { return Ok(()); }
        for f in c.cells_of_dim(c.dim - 1) {
            let cofaces = c.incidences.iter().filter(|i| i.face == f && c.cells[i.cell].dim == c.dim).count();
            prop_assert_eq!(cofaces, 2);
        }
    }

    #[test]
    fn stored_samples_carry_their_labels((t, s, e) in ambient_strategy()) {
        let Some((ses, c)) = build_case(t, s, &e) else { return Ok(()) };
        for cell in &c.cells {
            prop_assert!(cell.polyhedron.contains(&cell.sample));
            let y = c.eval(cell.ambient_component, &cell.sample);
            let a: Vec<i64> = y.iter().map(|v| -floor_i64(v)).collect();
            prop_assert_eq!(&ses.class_of(&a), &cell.class);
            prop_assert_eq!(cell.orientation.len(), cell.dim);
        }
    }

    #[test]
    fn components_partition_cells_by_class((t, s, e) in ambient_strategy()) {
        let Some((_, c)) = build_case(t, s, &e) else { return Ok(()) };
        let mut seen = vec![0; c.cells.len()];
        for comp in &c.components {
            for (m, shift) in &comp.cells {
                seen[*m] += 1;
                prop_assert_eq!(&c.cells[*m].class, &comp.class);
                prop_assert_eq!(c.shift_corner(&c.cells[*m].corner, shift), comp.corner.clone());
            }
        }
        prop_assert!(seen.iter().all(|&x| x == 1));
    }
}
