use exactlin::*;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn bigs(v: &[i64]) -> Vec<BigInt> {
    big_vec(v)
}

fn check_smith(a: &IntMatrix) {
    let s = smith_normal_form(a);
    assert_eq!(&s.u.mul(&s.d).mul(&s.w), a, "U D W != A");
    assert!(s.u.determinant().abs().is_one());
    assert!(s.w.determinant().abs().is_one());
    assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(a.rows()));
    assert_eq!(s.w.mul(&s.w_inv), IntMatrix::identity(a.cols()));
    for i in 0..s.d.rows() {
        for j in 0..s.d.cols() {
            if i != j {
                assert!(s.d.get(i, j).is_zero());
            }
        }
    }
    let f = s.invariant_factors();
    for w in f.windows(2) {
        assert!(w[1].is_multiple_of(&w[0]) || w[1].is_zero());
    }
    for x in &f {
        assert!(x.is_positive());
    }
}

use num_integer::Integer;

#[test]
fn smith_identity() {
    let s = smith_normal_form(&IntMatrix::identity(2));
    assert_eq!(s.d, IntMatrix::identity(2));
}

#[test]
fn smith_p2_rays() {
    let a = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0], vec![-1, -1]]);
    check_smith(&a);
    let s = smith_normal_form(&a);
    assert_eq!(s.invariant_factors(), bigs(&[1, 1]));
    let c = cokernel_projection(&a);
    assert_eq!(c.free_rank, 1);
    assert!(c.torsion.is_empty());
}

#[test]
fn smith_diag_2_4() {
    let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 4]]);
    let s = smith_normal_form(&a);
    assert_eq!(s.invariant_factors(), bigs(&[2, 4]));
    // Oracle: gcd of entries is d1, |det| = d1 * d2.
    assert_eq!(s.invariant_factors()[0], BigInt::from(2));
    assert_eq!(a.determinant().abs(), BigInt::from(8));
}

#[test]
fn smith_needs_divisibility_fix() {
    // diag(2, 3) has invariant factors (1, 6).
    let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
    check_smith(&a);
    assert_eq!(smith_normal_form(&a).invariant_factors(), bigs(&[1, 6]));
}

#[test]
fn kernel_examples() {
    let k = integer_kernel(&IntMatrix::from_rows(&[vec![2, 3]]));
    assert_eq!(k.len(), 1);
    assert!(k[0] == bigs(&[3, -2]) || k[0] == bigs(&[-3, 2]));
    assert!(integer_kernel(&IntMatrix::identity(3)).is_empty());
    let k = integer_kernel(&IntMatrix::from_rows(&[vec![2, 4]]));
    assert!(k[0] == bigs(&[2, -1]) || k[0] == bigs(&[-2, 1]));
    // Full kernel of the zero map on Z^2 is the standard basis.
    let k = integer_kernel(&IntMatrix::zeros(0, 2));
    assert_eq!(k, vec![bigs(&[1, 0]), bigs(&[0, 1])]);
}

#[test]
fn cokernel_examples() {
    let a = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0], vec![-1, -1]]);
    let c = cokernel_projection(&a);
    // The projection is (a,b,c) -> a+b+c up to sign.
    let p = c.free_projection();
    let row = p.row(0);
    assert!(row == bigs(&[1, 1, 1]) || row == bigs(&[-1, -1, -1]));

    let two = IntMatrix::from_rows(&[vec![2]]);
    let c = cokernel_projection(&two);
    assert_eq!(c.free_rank, 0);
    assert_eq!(c.torsion, bigs(&[2]));
    // Direct enumeration: 0..4 map onto Z/2 with kernel the even numbers.
    let images: Vec<BigInt> = (0..4).map(|x| c.project(&bigs(&[x]))[0].clone()).collect();
    assert_eq!(images, bigs(&[0, 1, 0, 1]));

    let c = cokernel_projection(&IntMatrix::identity(2));
    assert_eq!(c.free_rank, 0);
    assert!(c.torsion.is_empty());
    assert_eq!(c.order_if_finite(), Some(BigInt::one()));
}

fn interval(lo: (i64, Relation), hi: (i64, Relation)) -> HPolyhedron {
    let mut p = HPolyhedron::new(1);
    p.push(vec![rat(-1)], lo.1, rat(-lo.0));
    p.push(vec![rat(1)], hi.1, rat(hi.0));
    p
}

#[test]
fn feasibility_examples() {
    assert!(feasible(&interval((0, Relation::Le), (1, Relation::Lt))));
    let mut p = HPolyhedron::new(1);
    p.lt(vec![rat(1)], rat(0));
    p.gt(vec![rat(1)], rat(0));
    assert!(!feasible(&p));
    // Touching strict bounds: 0 <= x and x < 0.
    assert!(!feasible(&interval((0, Relation::Le), (0, Relation::Lt))));
    assert!(feasible(&interval((0, Relation::Le), (0, Relation::Le))));

    // The class-1 stratum of the projective plane: -a + [0,1)^3 with a=(0,0,1)
    // meeting the image of (x, y) -> (y, x, -x-y).
    let rays = [[0i64, 1], [1, 0], [-1, -1]];
    let a = [0i64, 0, 1];
    let mut s = HPolyhedron::new(2);
    for (r, ray) in rays.iter().enumerate() {
        let n = to_rat_vec(&[ray[0], ray[1]]);
        s.ge(n.clone(), rat(-a[r]));
        s.lt(n, rat(-a[r] + 1));
    }
    assert!(feasible(&s));
}

#[test]
fn lattice_point_examples() {
    let mut sq = HPolyhedron::new(2);
    for j in 0..2 {
        let mut e = vec![rat(0); 2];
        e[j] = rat(1);
        sq.ge(e.clone(), rat(0));
        sq.le(e, rat(1));
    }
    assert_eq!(lattice_points(&sq).unwrap().len(), 4);

    let simplex = |s: i64| {
        let mut p = HPolyhedron::new(3);
        for j in 0..3 {
            let mut e = vec![rat(0); 3];
            e[j] = rat(1);
            p.ge(e, rat(0));
        }
        p.equal(vec![rat(1); 3], rat(s));
        p
    };
    let one = lattice_points(&simplex(1)).unwrap();
    assert_eq!(one, vec![bigs(&[0, 0, 1]), bigs(&[0, 1, 0]), bigs(&[1, 0, 0])]);
    let two = lattice_points(&simplex(2)).unwrap();
    assert_eq!(two.len(), 6);
    let mut sorted = two.clone();
    sorted.sort();
    assert_eq!(sorted, two);

    let mut half = HPolyhedron::new(1);
    half.ge(vec![rat(1)], rat(0));
    assert!(matches!(lattice_points(&half), Err(PolyError::Unbounded(_))));
}

#[test]
fn rank_examples() {
    assert_eq!(rational_rank(&RatMatrix::zeros(3, 2)), 0);
    assert_eq!(rational_rank(&RatMatrix::from_i64_rows(&[vec![1, 1], vec![1, 1]])), 1);
    // Vertex-edge incidence of a triangle (edges 01, 02, 12).
    let b = RatMatrix::from_i64_rows(&[vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]]);
    assert_eq!(rational_rank(&b), 2);
}

#[test]
fn face_lattice_of_triangle() {
    let mut t = HPolyhedron::new(2);
    t.ge(to_rat_vec(&[1, 0]), rat(0));
    t.ge(to_rat_vec(&[0, 1]), rat(0));
    t.le(to_rat_vec(&[1, 1]), rat(1));
    let p = face_lattice(&t).unwrap().unwrap();
    assert_eq!(p.vertices.len(), 3);
    let by_dim: Vec<usize> = (0..3).map(|d| p.faces.iter().filter(|f| f.dim == d).count()).collect();
    assert_eq!(by_dim, vec![3, 3, 1]);
    assert_eq!(p.faces[p.top()].facets.len(), 3);
}

#[test]
fn hermite_is_canonical() {
    let a = IntMatrix::from_rows(&[vec![-1, -1, -1]]);
    let h = hermite_normal_form(&a);
    assert_eq!(h.h.row(0), bigs(&[1, 1, 1]));
    let b = IntMatrix::from_rows(&[vec![1, 1, 0, 0], vec![1, 1, 1, 1]]);
    let h = hermite_normal_form(&b);
    assert_eq!(h.h.to_i64_rows(), vec![vec![1, 1, 0, 0], vec![0, 0, 1, 1]]);
    assert_eq!(h.t.mul(&b), h.h);
}

fn matrix_strategy() -> impl Strategy<Value = IntMatrix> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-9i64..10, r * c).prop_map(move |v| {
            let rows: Vec<Vec<i64>> = v.chunks(c).map(|x| x.to_vec()).collect();
            IntMatrix::from_rows(&rows)
        })
    })
}

proptest! {
    #[test]
    fn smith_reconstructs(a in matrix_strategy()) {
        check_smith(&a);
    }

    #[test]
    fn kernel_is_saturated_basis(a in matrix_strategy()) {
        let k = integer_kernel(&a);
        let r = smith_normal_form(&a).rank();
        prop_assert_eq!(k.len(), a.cols() - r);
        for v in &k {
            prop_assert!(a.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        if !k.is_empty() {
            // Saturation: the basis matrix has trivial invariant factors.
            let b = IntMatrix::from_big_rows(&k, a.cols());
            prop_assert!(smith_normal_form(&b).invariant_factors().iter().all(|d| d.is_one()));
        }
    }

    #[test]
    fn cokernel_kills_columns_and_hits_generators(a in matrix_strategy()) {
        let c = cokernel_projection(&a);
        for j in 0..a.cols() {
            prop_assert!(c.project(&a.col(j)).iter().all(|x| x.is_zero()));
        }
        // Surjectivity: the projection matrix has a right inverse over Z,
        // witnessed by the unimodular U: project(U e_i) = e_i (mod torsion).
        let s = smith_normal_form(&a);
        let nt = c.torsion.len();
        let factors = s.invariant_factors();
        let first_torsion = factors.iter().position(|d| !d.is_one()).unwrap_or(factors.len());
        for (slot, i) in (first_torsion..factors.len()).chain(factors.len()..a.rows()).enumerate() {
            let img = c.project(&s.u.col(i));
            for (t, x) in img.iter().enumerate() {
                let want = if t == slot { 1 } else { 0 };
                prop_assert_eq!(x.clone(), BigInt::from(want));
            }
        }
        prop_assert_eq!(c.projection.rows(), nt + c.free_rank);
    }

    #[test]
    fn feasible_agrees_with_grid_sampling(
        dim in 1usize..4,
        raw in proptest::collection::vec((proptest::collection::vec(-3i64..4, 3), -4i64..5, 0u8..3), 1..6)
    ) {
        let mut p = HPolyhedron::new(dim);
        for (n, b, rel) in &raw {
            let rel = match rel { 0 => Relation::Le, 1 => Relation::Lt, _ => Relation::Eq };
            p.push(to_rat_vec(&n[..dim]), rel, rat(*b));
        }
        // Dense grid at denominator 4 in [-4, 4]^dim.
        let ticks: Vec<Rat> = (-16..=16).map(|i| ratio(i, 4)).collect();
        let mut hit = false;
        let mut idx = vec![0usize; dim];
        'outer: loop {
            let x: Vec<Rat> = idx.iter().map(|&i| ticks[i].clone()).collect();
            if p.contains(&x) { hit = true; break; }
            let mut j = 0;
            loop {
                if j == dim { break 'outer; }
                idx[j] += 1;
                if idx[j] < ticks.len() { break; }
                idx[j] = 0;
                j += 1;
            }
        }
        if hit {
            prop_assert!(feasible(&p));
        }
    }

    #[test]
    fn lattice_points_symmetric_under_permutation(s in 0i64..5, dim in 1usize..4) {
        let mut p = HPolyhedron::new(dim);
        for j in 0..dim {
            let mut e = vec![rat(0); dim];
            e[j] = rat(1);
            p.ge(e, rat(0));
        }
        p.le(vec![rat(1); dim], rat(s));
        let pts = lattice_points(&p).unwrap();
        let set: std::collections::BTreeSet<Vec<BigInt>> = pts.iter().cloned().collect();
        for v in &pts {
            let mut w = v.clone();
            w.reverse();
            prop_assert!(set.contains(&w));
            let mut w = v.clone();
            w.rotate_left(1);
            prop_assert!(set.contains(&w));
        }
    }
}
