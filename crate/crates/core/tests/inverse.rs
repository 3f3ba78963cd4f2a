use polymoment::exact::rat;
use polymoment::geometry::{binomial, Simplex, VertexSet, WeightedMeasure};
use polymoment::inverse::{
    build_extended, build_mat_s, det_factor_check, det_ratio, dimension_and_basis,
    explicit_inverse, product_column, qualifying_sets, recover_numerator, select_minor,
    solve_strong, solve_weak, weight_functionals, FormBasis,
};
use polymoment::oracle::{measure_moments, MomentTable};
use polymoment::poly::MultiIndex;
use polymoment::{random, Error, Rat, RatMat};

fn example2() -> VertexSet {
    VertexSet::from_i64(2, &[&[1, 0], &[2, 1], &[1, 2], &[0, 1], &[0, 0]]).unwrap()
}

fn example3() -> VertexSet {
    VertexSet::from_i64(2, &[&[1, 1], &[2, 0], &[2, 2], &[0, 2], &[0, 0]]).unwrap()
}

fn example4() -> VertexSet {
    VertexSet::from_i64(2, &[&[0, 0], &[2, 0], &[1, 1], &[0, 2], &[0, 0]]).unwrap()
}

fn ints(values: &[i64]) -> Vec<Rat> {
    values.iter().map(|&v| Rat::from_int(v)).collect()
}

fn s(indices: &[usize]) -> Simplex {
    Simplex::new(indices.to_vec())
}

fn example2_moments() -> MomentTable {
    MomentTable::from_values(2, 2, ints(&[1, 2, 3, 4, 5, 6])).unwrap()
}

#[test]
fn example2_numerator() {
    let p = recover_numerator(&example2_moments(), &example2()).unwrap();
    let coeffs: Vec<Rat> = MultiIndex::up_to(2, 2).iter().map(|i| p.coeff(i)).collect();
    assert_eq!(coeffs, ints(&[2, 4, 10, 10, 24, 10]));
}

#[test]
fn numerator_of_zero_and_single_triangle() {
    let vs = example2();
    let p = recover_numerator(&MomentTable::zero(2, 2), &vs).unwrap();
    assert!(p.is_zero());

    let tri = VertexSet::from_i64(2, &[&[1, 1], &[2, 5], &[3, 2]]).unwrap();
    let t = MomentTable::from_values(2, 0, vec![rat(7, 2)]).unwrap();
    let p = recover_numerator(&t, &tri).unwrap();
    assert_eq!(p.coeff(&MultiIndex::zero(2)), Rat::from_int(7));
    assert_eq!(p.len(), 1);
}

#[test]
fn numerator_needs_enough_moments() {
    let t = MomentTable::from_values(2, 1, ints(&[1, 2, 3])).unwrap();
    match recover_numerator(&t, &example2()) {
        Err(Error::IncompleteMoments { missing }) => {
            assert_eq!(missing, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn example2_matrix() {
    let basis = FormBasis::through_pivot(&example2(), 4).unwrap();
    let expected = RatMat::from_i64_rows(&[
        &[1, 1, 1, 1, 1, 1],
        &[-3, -2, -1, -3, -2, -1],
        &[-1, -2, -1, -3, -2, -3],
        &[2, 1, 0, 2, 0, 0],
        &[1, 2, 1, 5, 2, 1],
        &[0, 0, 0, 2, 1, 2],
    ])
    .unwrap();
    assert_eq!(build_mat_s(&basis).unwrap(), expected);
    assert_eq!(
        basis.simplices(),
        vec![
            s(&[2, 3, 4]),
            s(&[1, 3, 4]),
            s(&[1, 2, 4]),
            s(&[0, 3, 4]),
            s(&[0, 2, 4]),
            s(&[0, 1, 4])
        ]
    );
}

#[test]
fn example2_explicit_inverse() {
    let basis = FormBasis::through_pivot(&example2(), 4).unwrap();
    let inv = explicit_inverse(&basis).unwrap().scale(&Rat::from_int(4));
    let expected = RatMat::from_i64_rows(&[
        // The printed first row (1,-1,1,1,1,-1) is not orthogonal to the
        // other columns; this is the value the minor formula gives.
        &[1, -1, 1, 1, -1, 1],
        &[-4, 0, -4, 0, 0, -4],
        &[9, 3, 3, 1, 1, 1],
        &[1, 1, 1, 1, 1, 1],
        &[-4, -4, 0, -4, 0, 0],
        &[1, 1, -1, 1, -1, 1],
    ])
    .unwrap();
    assert_eq!(inv, expected);
    let mat = build_mat_s(&basis).unwrap();
    assert!(explicit_inverse(&basis)
        .unwrap()
        .mul(&mat)
        .unwrap()
        .is_identity());
}

#[test]
fn example2_weights() {
    let rec = solve_strong(&example2_moments(), &example2(), 4).unwrap();
    assert_eq!(rec.weight_vector(), ints(&[1, -22, 26, 15, -16, -2]));
    assert!(!rec.singular);
    assert!(rec.is_exact());
    let m = rec.to_measure(&example2()).unwrap();
    let dens: Vec<Rat> = m.density().unwrap().into_iter().map(|(_, d)| d).collect();
    assert_eq!(
        dens,
        vec![
            Rat::one(),
            Rat::from_int(-11),
            rat(26, 3),
            Rat::from_int(15),
            Rat::from_int(-8),
            Rat::from_int(-2)
        ]
    );
    assert_eq!(measure_moments(&m, 2, None).unwrap(), example2_moments());
}

#[test]
fn reconstruction_json_shape() {
    let rec = solve_strong(&example2_moments(), &example2(), 4).unwrap();
    let v: serde_json::Value = serde_json::to_value(&rec).unwrap();
    assert_eq!(v["pivot"], 4);
    assert_eq!(v["singular"], false);
    assert_eq!(v["weights"][1]["simplex"], serde_json::json!([1, 3, 4]));
    assert_eq!(v["weights"][1]["weight"], "-22");
    assert_eq!(v["weights"][1]["degenerate"], false);
    assert!(v.get("residual").is_none());
    let back: polymoment::inverse::Reconstruction = serde_json::from_value(v).unwrap();
    assert_eq!(back, rec);
}

#[test]
fn strong_solver_rejects_degenerate_sets() {
    let t = MomentTable::zero(2, 2);
    match solve_strong(&t, &example3(), 4) {
        Err(Error::NotStronglyNonDegenerate { degenerate }) => {
            assert_eq!(degenerate, vec![vec![0, 1, 3], vec![0, 2, 4]]);
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn single_basis_simplex_gives_unit_vector() {
    let vs = example2();
    for (k, simplex) in FormBasis::through_pivot(&vs, 4)
        .unwrap()
        .simplices()
        .into_iter()
        .enumerate()
    {
        let m = WeightedMeasure::new(vs.clone(), [(simplex, Rat::one())]).unwrap();
        let rec = solve_strong(&measure_moments(&m, 2, None).unwrap(), &vs, 4).unwrap();
        let mut unit = vec![Rat::zero(); 6];
        unit[k] = Rat::one();
        assert_eq!(rec.weight_vector(), unit);
    }
}

#[test]
fn surplus_moments_feed_the_residual() {
    let vs = example2();
    let m = WeightedMeasure::new(vs.clone(), [(s(&[0, 1, 4]), Rat::from_int(3))]).unwrap();
    let good = measure_moments(&m, 4, None).unwrap();
    assert!(solve_strong(&good, &vs, 4).unwrap().is_exact());
    let mut values = good.values();
    let last = values.len() - 1;
    values[last] += Rat::one();
    let bad = MomentTable::from_values(2, 4, values).unwrap();
    let rec = solve_strong(&bad, &vs, 4).unwrap();
    assert_eq!(rec.residual.len(), 1);
    assert_eq!(rec.residual[0].exp, vec![0, 4]);
}

#[test]
fn other_pivots_give_equal_measures() {
    let vs = example2();
    let t = example2_moments();
    for pivot in 0..5 {
        let rec = solve_strong(&t, &vs, pivot).unwrap();
        assert!(rec.weights.iter().all(|e| e.simplex.contains(pivot)));
        let m = rec.to_measure(&vs).unwrap();
        assert_eq!(
            measure_moments(&m, 3, None).unwrap(),
            measure_moments(
                &solve_strong(&t, &vs, 4).unwrap().to_measure(&vs).unwrap(),
                3,
                None
            )
            .unwrap()
        );
        let basis = FormBasis::through_pivot(&vs, pivot).unwrap();
        let inv = explicit_inverse(&basis).unwrap();
        assert_eq!(inv, build_mat_s(&basis).unwrap().inverse().unwrap());
    }
}

#[test]
fn smallest_case_has_one_column() {
    let mut rng = random::rng(5);
    for d in 1..=3 {
        let vs = random::strong_set(&mut rng, d, d + 2);
        let basis = FormBasis::through_pivot(&vs, d + 1).unwrap();
        let mat = build_mat_s(&basis).unwrap();
        assert_eq!(mat.cols(), d + 1);
        for (c, t) in basis.columns().iter().enumerate() {
            assert_eq!(t.len(), 1);
            let mut expected = vec![Rat::one()];
            expected.extend(vs.point(t[0]).iter().map(|x| -x));
            assert_eq!(mat.column(c), expected);
        }
    }
}

#[test]
fn explicit_inverse_on_random_strong_sets() {
    let mut rng = random::rng(11);
    let mut cases = Vec::new();
    for n in 4..=7 {
        cases.push((2, n));
    }
    for n in 5..=6 {
        cases.push((3, n));
    }
    for (d, n) in cases.into_iter().cycle().take(20) {
        let vs = random::strong_set(&mut rng, d, n);
        let basis = FormBasis::through_pivot(&vs, n - 1).unwrap();
        let mat = build_mat_s(&basis).unwrap();
        let inv = explicit_inverse(&basis).unwrap();
        assert!(inv.mul(&mat).unwrap().is_identity(), "d={d} n={n}");
        assert_eq!(inv, mat.inverse().unwrap());
    }
}

#[test]
fn columns_are_homogenized_products() {
    let mut rng = random::rng(2);
    let vs = random::strong_set(&mut rng, 2, 6);
    let basis = FormBasis::through_pivot(&vs, 5).unwrap();
    let mat = build_mat_s(&basis).unwrap();
    let rows = MultiIndex::of_degree(3, 3);
    for (c, t) in basis.columns().iter().enumerate() {
        let prod = t
            .iter()
            .fold(polymoment::Poly::one(2), |acc, &j| &acc * &vs.form(j));
        let h = prod.homogenize(3).unwrap();
        let expected: Vec<Rat> = rows.iter().map(|m| h.coeff(m)).collect();
        assert_eq!(mat.column(c), expected);
        assert_eq!(product_column(&vs, t).unwrap(), expected);
    }
}

#[test]
fn strong_round_trip() {
    let mut rng = random::rng(21);
    for (d, n) in [(2, 4), (2, 5), (2, 6), (2, 7), (3, 5), (3, 6)] {
        let vs = random::strong_set(&mut rng, d, n);
        let basis = FormBasis::through_pivot(&vs, n - 1).unwrap();
        let w = random::weights(&mut rng, basis.len());
        let m =
            WeightedMeasure::new(vs.clone(), basis.simplices().into_iter().zip(w.clone())).unwrap();
        let t = measure_moments(&m, (n - d - 1) as u32, None).unwrap();
        assert_eq!(solve_strong(&t, &vs, n - 1).unwrap().weight_vector(), w);
    }
}

fn example3_extended() -> RatMat {
    RatMat::from_i64_rows(&[
        &[1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
        &[-3, -3, -1, -1, -4, -2, -2, -2, -2, 0],
        &[-1, -3, -3, -1, -2, -2, 0, -4, -2, -2],
        &[2, 2, 0, 0, 4, 0, 0, 0, 0, 0],
        &[2, 4, 2, 0, 4, 4, 0, 4, 0, 0],
        &[0, 2, 2, 0, 0, 0, 0, 4, 0, 0],
    ])
    .unwrap()
}

#[test]
fn example3_extended_matrix() {
    let ext = build_extended(&example3()).unwrap();
    assert_eq!(ext, example3_extended());
    assert_eq!(ext.column(4), ints(&[1, -4, -2, 4, 4, 0]));
    assert_eq!(ext.rank(), 6);
}

#[test]
fn example3_minor_selection() {
    let vs = example3();
    let ext = build_extended(&vs).unwrap();
    let chosen = select_minor(&ext, &vs, 4).unwrap();
    assert_eq!(chosen.extended_numbers(), vec![1, 2, 3, 5, 6, 9]);
    assert!(!build_mat_s(&chosen).unwrap().det().unwrap().is_zero());

    // The set printed with the example is admissible as well.
    let printed = FormBasis::from_extended_numbers(&vs, 4, &[5, 6, 7, 8, 9, 10]).unwrap();
    assert!(!build_mat_s(&printed).unwrap().det().unwrap().is_zero());
    assert_eq!(
        printed.simplices(),
        vec![
            s(&[0, 3, 4]),
            s(&[0, 2, 4]),
            s(&[0, 2, 3]),
            s(&[0, 1, 4]),
            s(&[0, 1, 3]),
            s(&[0, 1, 2])
        ]
    );
}

#[test]
fn example3_weight_formulas() {
    let vs = example3();
    let printed = FormBasis::from_extended_numbers(&vs, 4, &[5, 6, 7, 8, 9, 10]).unwrap();
    let f = weight_functionals(&printed).unwrap();
    // Columns: a00, a10, a01, a20, a11, a02. Rows: w145, w135, w134, w125, w124, w123.
    let expected = RatMat::from_rows(vec![
        vec![
            rat(0, 1),
            rat(0, 1),
            rat(0, 1),
            rat(1, 4),
            rat(0, 1),
            rat(0, 1),
        ],
        vec![
            rat(0, 1),
            rat(0, 1),
            rat(0, 1),
            rat(-1, 4),
            rat(1, 4),
            rat(-1, 4),
        ],
        vec![
            rat(1, 1),
            rat(0, 1),
            rat(1, 2),
            rat(0, 1),
            rat(0, 1),
            rat(1, 4),
        ],
        vec![
            rat(0, 1),
            rat(0, 1),
            rat(0, 1),
            rat(0, 1),
            rat(0, 1),
            rat(1, 4),
        ],
        vec![
            rat(-1, 1),
            rat(-1, 2),
            rat(-1, 2),
            rat(-1, 4),
            rat(-1, 4),
            rat(-1, 4),
        ],
        vec![
            rat(1, 1),
            rat(1, 2),
            rat(0, 1),
            rat(1, 4),
            rat(0, 1),
            rat(0, 1),
        ],
    ])
    .unwrap();
    assert_eq!(f, expected);
}

#[test]
fn example3_square_has_no_singular_part() {
    let vs = example3();
    let square = WeightedMeasure::standard(
        vs.clone(),
        [s(&[0, 1, 2]), s(&[0, 2, 3]), s(&[0, 3, 4]), s(&[0, 1, 4])],
    )
    .unwrap();
    let t = measure_moments(&square, 2, None).unwrap();

    let rec = solve_weak(&t, &vs, 4, None).unwrap();
    assert!(!rec.singular);
    assert_eq!(rec.weight(&s(&[0, 2, 4])), Some(&Rat::zero()));
    assert_eq!(rec.weight(&s(&[0, 1, 3])), Some(&Rat::zero()));

    let printed = FormBasis::from_extended_numbers(&vs, 4, &[5, 6, 7, 8, 9, 10]).unwrap();
    let rec = solve_weak(&t, &vs, 4, Some(&printed)).unwrap();
    assert!(!rec.singular);
    for simplex in [s(&[0, 1, 2]), s(&[0, 2, 3]), s(&[0, 3, 4]), s(&[0, 1, 4])] {
        assert_eq!(rec.weight(&simplex), Some(&Rat::from_int(2)));
    }
}

#[test]
fn example3_perturbed_moments_are_singular() {
    let vs = example3();
    let square = WeightedMeasure::standard(vs.clone(), [s(&[1, 2, 3]), s(&[1, 3, 4])]).unwrap();
    let mut values = measure_moments(&square, 2, None).unwrap().values();
    values[4] += Rat::one();
    let t = MomentTable::from_values(2, 2, values).unwrap();
    let rec = solve_weak(&t, &vs, 4, None).unwrap();
    assert!(rec.singular);
    assert!(!rec.singular_simplices().is_empty());
}

#[test]
fn zero_moments_give_zero_weights() {
    let rec = solve_weak(&MomentTable::zero(2, 2), &example3(), 4, None).unwrap();
    assert!(rec.weights.iter().all(|e| e.weight.is_zero()));
    assert!(!rec.singular);
}

fn example4_extended() -> RatMat {
    RatMat::from_i64_rows(&[
        &[1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
        &[-2, -1, 0, 0, -3, -2, -2, -1, -1, 0],
        &[0, -1, -2, 0, -1, -2, 0, -3, -1, -2],
        &[0, 0, 0, 0, 2, 0, 0, 0, 0, 0],
        &[0, 0, 0, 0, 2, 4, 0, 2, 0, 0],
        &[0, 0, 0, 0, 0, 0, 0, 2, 0, 0],
    ])
    .unwrap()
}

#[test]
fn example4_extended_matrix() {
    // Column 7 is l2*l5 = 1 - 2u1; the printed table has its two linear
    // entries swapped.
    assert_eq!(build_extended(&example4()).unwrap(), example4_extended());
}

#[test]
fn example4_weight_functionals() {
    let vs = example4();
    let basis = FormBasis::from_extended_numbers(&vs, 4, &[1, 3, 4, 5, 6, 8]).unwrap();
    assert_eq!(
        basis.simplices(),
        vec![
            s(&[2, 3, 4]),
            s(&[1, 2, 4]),
            s(&[1, 2, 3]),
            s(&[0, 3, 4]),
            s(&[0, 2, 4]),
            s(&[0, 1, 4])
        ]
    );
    let f = weight_functionals(&basis).unwrap().scale(&Rat::from_int(4));
    let expected = RatMat::from_i64_rows(&[
        &[0, -2, 0, -2, -1, 0],
        &[0, 0, -2, 0, -1, -2],
        &[4, 2, 2, 1, 1, 1],
        &[0, 0, 0, 2, 0, 0],
        &[0, 0, 0, -1, 1, -1],
        &[0, 0, 0, 0, 0, 2],
    ])
    .unwrap();
    assert_eq!(f, expected);
    let ext = build_extended(&vs).unwrap();
    let chosen = select_minor(&ext, &vs, 4).unwrap();
    assert!(!build_mat_s(&chosen).unwrap().det().unwrap().is_zero());
    for n in [4, 5, 6, 8] {
        assert!(chosen.extended_numbers().contains(&n));
    }
}

#[test]
fn example4_polygons_have_no_singular_part() {
    let vs = example4();
    let tri = WeightedMeasure::standard(vs.clone(), [s(&[0, 1, 3])]).unwrap();
    let t = measure_moments(&tri, 2, None).unwrap();
    let rec = solve_weak(&t, &vs, 4, None).unwrap();
    assert!(!rec.singular);
    assert_eq!(
        measure_moments(&rec.to_measure(&vs).unwrap(), 2, None).unwrap(),
        t
    );
}

#[test]
fn dimensions() {
    assert_eq!(dimension_and_basis(&example2(), 4).unwrap().0, 6);
    let (dim, basis) = dimension_and_basis(&example3(), 4).unwrap();
    assert_eq!(dim, binomial(4, 2) - 2);
    assert_eq!(basis.len(), 4);
    assert!(basis.iter().all(|b| b.contains(4)));
    let mut rng = random::rng(8);
    let vs = random::strong_set(&mut rng, 2, 6);
    assert_eq!(dimension_and_basis(&vs, 5).unwrap().0, binomial(5, 2));
}

#[test]
fn weak_round_trip_on_pruned_basis() {
    let vs = example3();
    let (_, basis) = dimension_and_basis(&vs, 4).unwrap();
    let mut rng = random::rng(4);
    for _ in 0..5 {
        let w = random::weights(&mut rng, basis.len());
        let m = WeightedMeasure::new(vs.clone(), basis.iter().cloned().zip(w)).unwrap();
        let t = measure_moments(&m, 2, None).unwrap();
        let rec = solve_weak(&t, &vs, 4, None).unwrap();
        assert!(!rec.singular);
        assert_eq!(
            measure_moments(&rec.to_measure(&vs).unwrap(), 2, None).unwrap(),
            t
        );
    }
}

#[test]
fn non_weak_sets_are_rejected() {
    let vs = VertexSet::from_i64(2, &[&[0, 0], &[1, 0], &[2, 0], &[3, 0], &[0, 1]]).unwrap();
    assert!(matches!(
        solve_weak(&MomentTable::zero(2, 2), &vs, 4, None),
        Err(Error::NotWeaklyNonDegenerate { .. })
    ));
}

#[test]
fn determinant_factorization() {
    let mut rng = random::rng(3);
    let vs = random::strong_set(&mut rng, 2, 4);
    let basis = FormBasis::through_pivot(&vs, 3).unwrap();
    assert_eq!(qualifying_sets(4, 2, basis.columns()).len(), 1);
    let report = det_factor_check(&basis, &mut rng, 5).unwrap();
    assert!(report.passed(), "{report:?}");

    let vs = example2();
    let basis = FormBasis::through_pivot(&vs, 4).unwrap();
    assert_eq!(qualifying_sets(5, 2, basis.columns()).len(), 4);
    let report = det_factor_check(&basis, &mut rng, 3).unwrap();
    assert!(report.passed(), "{report:?}");
    assert_eq!(
        det_ratio(&vs, basis.columns()).unwrap(),
        Some(report.ratios[0].clone())
    );
}
