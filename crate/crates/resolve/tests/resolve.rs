use exactlin::{rat, Rat};
use proptest::prelude::*;
use quivalg::{bondal_algebra, constant_representation, simple_module};
use resolve::*;
use std::collections::BTreeMap;
use toricdata::{build_ses, Fan, LatticeSES, ToricMorphism};

fn p1() -> LatticeSES {
    build_ses(&Fan::projective_space(1)).unwrap()
}

fn p2() -> LatticeSES {
    build_ses(&Fan::new(vec![vec![0, 1], vec![1, 0], vec![-1, -1]], vec![vec![0, 1], vec![1, 2], vec![0, 2]])).unwrap()
}

fn p1xp1() -> LatticeSES {
    build_ses(&Fan::projective_space(1).product(&Fan::projective_space(1))).unwrap()
}

fn f1() -> LatticeSES {
    build_ses(&Fan::hirzebruch(1)).unwrap()
}

fn curve(a: i64, b: i64) -> ToricMorphism {
    ToricMorphism::from_rows(&[vec![a], vec![b]], 1)
}

fn table(entries: &[(usize, &[i64], usize)]) -> BettiTable {
    BettiTable::from_entries(entries.iter().map(|(i, a, v)| ((*i, a.to_vec()), *v)))
}

fn poly(terms: &[(&[i64], i64)]) -> Poly {
    let mut p = Poly::zero();
    for (e, c) in terms {
        p.add_term(e.to_vec(), rat(*c));
    }
    p
}

fn verify(ses: &LatticeSES, f: &ToricMorphism, c: &LineBundleComplex, reference: &LineBundleComplex) -> VerifyReport {
    let expected = betti_topological(ses, f).ok();
    let ctx = VerifyContext { ses, morphism: f, seed: 11, euler_samples: 10, reference: Some(reference) };
    let expected = if c.provenance == "minimal" { expected } else { None };
    verify_complex(c, expected.as_ref(), &ctx)
}

#[test]
fn p2_point_betti_is_koszul() {
    let ses = p2();
    let f = ToricMorphism::point(2);
    let expected = table(&[(0, &[0], 1), (1, &[1], 2), (2, &[2], 1)]);
    assert_eq!(betti_topological(&ses, &f).unwrap(), expected);
    let m = minimal_resolution(&ses, &f).unwrap();
    assert_eq!(BettiTable::from_entries(m.betti()), expected);
    assert!(m.is_minimal());
    let c = cellular_resolution(&ses, &f).unwrap();
    let report = verify(&ses, &f, &m, &c);
    assert!(report.passed(), "{report}");
    assert_eq!(report.fiber_degree, 1);
}

#[test]
fn p2_point_minimal_differentials_are_linear() {
    let m = minimal_resolution(&p2(), &ToricMorphism::point(2)).unwrap();
    for d in &m.differentials {
        for p in d.iter().flatten() {
            assert!(p.terms().all(|(e, _)| e.iter().sum::<i64>() == 1));
        }
    }
    assert_eq!(m.differentials[0].len(), 1);
    assert_eq!(m.differentials[0][0].len(), 2);
    assert_eq!(m.differentials[1].len(), 2);
}

#[test]
fn quadric_is_a_single_binomial() {
    let ses = p2();
    let f = curve(2, 1);
    assert_eq!(betti_topological(&ses, &f).unwrap(), table(&[(0, &[0], 1), (1, &[2], 1)]));
    let m = minimal_resolution(&ses, &f).unwrap();
    assert_eq!(m.differentials.len(), 1);
    let entry = &m.differentials[0][0][0];
    let quadric = poly(&[(&[2, 0, 0], 1), (&[0, 1, 1], -1)]);
    assert!(*entry == quadric || *entry == quadric.neg(), "{entry}");
}

#[test]
fn cubic_minimal_matrix() {
    let ses = p2();
    let f = curve(2, 3);
    let expected = table(&[(0, &[0], 1), (0, &[1], 1), (1, &[2], 2)]);
    assert_eq!(betti_topological(&ses, &f).unwrap(), expected);
    let m = minimal_resolution(&ses, &f).unwrap();
    let golden = vec![
        vec![poly(&[(&[0, 1, 0], 1)]), poly(&[(&[1, 0, 0], 1)])],
        vec![poly(&[(&[1, 0, 1], -1)]), poly(&[(&[0, 2, 0], -1)])],
    ];
    assert!(equivalent_up_to_signed_permutation(&m.differentials[0], &golden), "{}", to_human(&m, "cubic"));
}

#[test]
fn cubic_cellular_matrix() {
    let ses = p2();
    let f = curve(2, 3);
    let c = cellular_resolution(&ses, &f).unwrap();
    assert_eq!(c.terms.iter().map(|t| t.len()).collect::<Vec<_>>(), vec![4, 4]);
    let x = |e: &[i64], s: i64| poly(&[(e, s)]);
    let z = Poly::zero;
    let golden = vec![
        vec![x(&[0, 1, 0], -1), z(), z(), x(&[1, 0, 1], 1)],
        vec![x(&[0, 0, 0], 1), x(&[0, 1, 0], -1), z(), z()],
        vec![z(), x(&[1, 0, 0], 1), x(&[0, 0, 0], -1), z()],
        vec![z(), z(), x(&[0, 0, 0], 1), x(&[0, 1, 0], -1)],
    ];
    assert!(equivalent_up_to_signed_permutation(&c.differentials[0], &golden), "{}", to_human(&c, "cubic"));
    let m = minimal_resolution(&ses, &f).unwrap();
    let report = verify(&ses, &f, &c, &m);
    assert!(report.passed(), "{report}");
    assert_eq!(report.euler.len(), 10);
    assert!(!report.minimal);
}

#[test]
fn p2_point_cellular_matches_worked_example() {
    let ses = p2();
    let c = cellular_resolution(&ses, &ToricMorphism::point(2)).unwrap();
    let mut top = c.terms[2].clone();
    top.sort();
    assert_eq!(top, vec![vec![1], vec![2]]);
    assert_eq!(c.terms[1], vec![vec![1]; 3]);
    assert_eq!(c.terms[0], vec![vec![0]]);
    let units = |p: &Poly| {
        p.terms().count() == 1 && p.terms().all(|(e, k)| e.iter().sum::<i64>() <= 1 && (*k == rat(1) || *k == rat(-1)))
    };
    assert!(c.differentials[1].iter().flatten().all(units));
    let d1 = vec![vec![
        poly(&[(&[1, 0, 0], 1), (&[0, 1, 0], -1)]),
        poly(&[(&[0, 0, 1], 1), (&[0, 1, 0], -1)]),
        poly(&[(&[1, 0, 0], 1), (&[0, 0, 1], -1)]),
    ]];
    assert!(equivalent_up_to_signed_permutation(&c.differentials[0], &d1), "{}", to_human(&c, "point"));
    let d2 = vec![
        vec![poly(&[(&[0, 0, 0], -1)]), poly(&[(&[0, 0, 1], 1)])],
        vec![poly(&[(&[0, 0, 0], 1)]), poly(&[(&[1, 0, 0], -1)])],
        vec![poly(&[(&[0, 0, 0], 1)]), poly(&[(&[0, 1, 0], -1)])],
    ];
    assert!(equivalent_up_to_signed_permutation(&c.differentials[1], &d2), "{}", to_human(&c, "point"));
}

#[test]
fn identity_gives_structure_sheaf() {
    let ses = p2();
    let f = ToricMorphism::identity(2);
    for c in [minimal_resolution(&ses, &f).unwrap(), cellular_resolution(&ses, &f).unwrap()] {
        assert_eq!(c.terms, vec![vec![vec![0]]]);
        assert!(c.differentials.is_empty());
    }
}

#[test]
fn p1_point_is_a_linear_form() {
    let ses = p1();
    let m = minimal_resolution(&ses, &ToricMorphism::point(1)).unwrap();
    assert_eq!(m.terms, vec![vec![vec![0]], vec![vec![1]]]);
    let entry = &m.differentials[0][0][0];
    let expected = poly(&[(&[1, 0], 1), (&[0, 1], -1)]);
    assert!(*entry == expected || *entry == expected.neg(), "{entry}");
}

#[test]
fn corrupted_sign_is_detected() {
    let ses = p2();
    let f = ToricMorphism::point(2);
    let good = minimal_resolution(&ses, &f).unwrap();
    let mut bad = good.clone();
    bad.differentials[1][0][0] = bad.differentials[1][0][0].neg();
    let report = verify(&ses, &f, &bad, &good);
    assert!(!report.d_squared_zero);
    assert!(!report.passed());
}

#[test]
fn koszul_euler_value_in_degree_two() {
    let ses = p2();
    let f = ToricMorphism::point(2);
    let m = minimal_resolution(&ses, &f).unwrap();
    let c = cellular_resolution(&ses, &f).unwrap();
    let ctx = VerifyContext { ses: &ses, morphism: &f, seed: 3, euler_samples: 25, reference: Some(&c) };
    let report = verify_complex(&m, None, &ctx);
    assert!(report.euler.iter().all(|e| e.value == 1 && e.reference == 1));
    let at_two: i64 = m
        .terms
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let n: i64 = t.iter().map(|a| ses.monomials_of_class(&[2 - a[0]]).len() as i64).sum();
            if i % 2 == 0 { n } else { -n }
        })
        .sum();
    assert_eq!(at_two, 1);
}

/// Class of the stratum through a torsion point `θ`, computed as
/// `π(k·frac(Rθ))/k` from the ray matrix directly.
fn torsion_point_classes(ses: &LatticeSES, k: i64) -> BTreeMap<Vec<i64>, usize> {
    let n = ses.n;
    let rays = ses.rays();
    let mut out = BTreeMap::new();
    let total = (k as usize).pow(n as u32);
    for idx in 0..total {
        let theta: Vec<i64> = (0..n).map(|j| (idx / (k as usize).pow(j as u32)) as i64 % k).collect();
        let lifted: Vec<i64> = rays.iter().map(|r| r.iter().zip(&theta).map(|(a, b)| a * b).sum::<i64>().rem_euclid(k)).collect();
        let scaled = ses.class_of(&lifted);
        assert!(scaled.iter().all(|x| x % k == 0));
        *out.entry(scaled.iter().map(|x| x / k).collect()).or_insert(0) += 1;
    }
    out
}

#[test]
fn frobenius_splits_by_torsion_points() {
    for (ses, k) in [(p1(), 2), (p1(), 3), (p2(), 2), (p2(), 3), (p1xp1(), 2)] {
        let f = ToricMorphism::frobenius(ses.n, k);
        let m = minimal_resolution(&ses, &f).unwrap();
        assert_eq!(m.length(), 0);
        let betti = BettiTable::from_entries(m.betti());
        assert_eq!(betti.degree_total(0), (k as usize).pow(ses.n as u32));
        let counted = torsion_point_classes(&ses, k);
        let from_betti: BTreeMap<Vec<i64>, usize> = betti.0.iter().map(|((_, a), v)| (a.clone(), *v)).collect();
        assert_eq!(from_betti, counted);
        let c = cellular_resolution(&ses, &f).unwrap();
        assert!(verify(&ses, &f, &m, &c).passed());
    }
}

#[test]
fn uniqueness_flag_follows_declaration() {
    let mut ses = p2();
    assert_eq!(uniqueness_flag(&ses), Uniqueness::Unknown);
    ses.product_of_projective_spaces = true;
    assert_eq!(uniqueness_flag(&ses), Uniqueness::Yes);
    assert_eq!(Uniqueness::Yes.to_string(), "YES");
}

#[test]
fn module_resolutions() {
    let ses = p2();
    let bondal = bondal_algebra(&ses).unwrap();
    let k = constant_representation(&bondal);
    let c = resolve_module(&ses, &bondal, &k).unwrap();
    let betti = BettiTable::from_entries(c.betti());
    assert_eq!((0..3).map(|i| betti.degree_total(i)).collect::<Vec<_>>(), vec![1, 2, 1]);
    assert!(c.d_squared_zero());

    let ses = p1();
    let bondal = bondal_algebra(&ses).unwrap();
    let s0 = simple_module(&bondal, 0);
    let c = resolve_module(&ses, &bondal, &s0).unwrap();
    assert_eq!(c.terms, vec![vec![vec![0]], vec![vec![1], vec![1]]]);
}

#[test]
fn machine_format_round_trip() {
    let ses = p2();
    for f in [ToricMorphism::point(2), curve(2, 3), ToricMorphism::identity(2)] {
        for c in [minimal_resolution(&ses, &f).unwrap(), cellular_resolution(&ses, &f).unwrap()] {
            let text = to_machine(&c);
            let back = parse_machine(&text).unwrap();
            assert_eq!(back, c);
            assert_eq!(to_machine(&back), text);
        }
    }
}

#[test]
fn machine_format_rejects_garbage() {
    assert!(matches!(parse_machine("toricres-complex 1\nvars 3\nbogus\nend\n"), Err(ResolveError::Format { line: 3, .. })));
    assert!(parse_machine("vars 3\n").is_err());
    let text = "toricres-complex 1\nvars 2\ngrading 1;1\nprovenance x\nterm 0 0\nterm 1 1\nmatrix 1 1 1\nentry 0 0 1/2 1,0\nend\n";
    let c = parse_machine(text).unwrap();
    assert_eq!(c.differentials[0][0][0], Poly::monomial(vec![1, 0], Rat::new(1.into(), 2.into())));
}

#[test]
fn non_injective_morphism_is_rejected() {
    assert!(minimal_resolution(&p2(), &ToricMorphism::from_rows(&[vec![1, 2], vec![2, 4]], 2)).is_err());
}

#[test]
fn human_report_names_bundles() {
    let m = minimal_resolution(&p2(), &curve(2, 3)).unwrap();
    let text = to_human(&m, "cubic");
    assert!(text.contains("O(-2)^2 -> O + O(-1) -> 0"), "{text}");
    assert!(text.contains("x0*x2"));
}

fn varieties() -> Vec<LatticeSES> {
    vec![p1(), p2(), p1xp1(), f1()]
}

fn random_case() -> impl Strategy<Value = (usize, ToricMorphism)> {
    (0..4usize, 0..3usize, proptest::collection::vec(-4i64..=4, 4)).prop_filter_map("injective", |(v, n1, entries)| {
        let n = varieties()[v].n;
        if n1 > n {
            return None;
        }
        let rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n1).map(|j| entries[i * 2 + j]).collect()).collect();
        let f = ToricMorphism::from_rows(&rows, n1);
        f.check_injective().ok()?;
        Some((v, f))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pipelines_agree((v, f) in random_case()) {
        let ses = &varieties()[v];
        let codim = ses.n - f.source_dim();
        let topo = betti_topological(ses, &f).unwrap();
        let m = minimal_resolution(ses, &f).unwrap();
        let c = cellular_resolution(ses, &f).unwrap();
        let algebraic = BettiTable::from_entries(m.betti());
        prop_assert_eq!(&topo, &algebraic);
        prop_assert_eq!(m.length(), codim);
        prop_assert!(c.length() <= codim);
        if codim >= 1 {
            prop_assert_eq!(algebraic.alternating_sum(), 0);
        } else {
            prop_assert_eq!(algebraic.alternating_sum() as usize, generic_fiber_degree(&f));
        }
        prop_assert!(algebraic.bounded_by(&BettiTable::from_entries(c.betti())));
        prop_assert!(m.is_minimal());
        let has_unit = c.differentials.iter().flatten().flatten().any(|p| p.constant_term() != rat(0));
        prop_assert_eq!(c.is_minimal(), !has_unit);
        prop_assert!(verify(ses, &f, &m, &c).passed());
        prop_assert!(verify(ses, &f, &c, &m).passed());
    }

    #[test]
    fn machine_round_trip_random((v, f) in random_case()) {
        let ses = &varieties()[v];
        let c = cellular_resolution(ses, &f).unwrap();
        prop_assert_eq!(parse_machine(&to_machine(&c)).unwrap(), c);
    }
}
