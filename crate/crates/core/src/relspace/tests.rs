use super::*;
use crate::words::Word;

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn f2() -> FieldSpec {
    FieldSpec::finite(2).unwrap()
}

fn build(n: u32, d: usize, field: FieldSpec, top: usize) -> RelationSpace {
    build_relation_space(n, d, field, top, &BuildOptions::default()).unwrap()
}

#[test]
fn squares_over_f2_with_two_letters() {
    let s = build(2, 2, f2(), 3);
    assert!(s.is_saturated());
    assert_eq!(s.quotient_dims(), vec![2, 1, 0]);
    assert_eq!(s.quotient_basis(), vec![w("x1"), w("x2"), w("x1*x2")]);
    let s2 = build(2, 2, f2(), 2);
    assert!(!s2.is_saturated());
}

#[test]
fn cubes_over_f2_not_saturated_at_five() {
    let s = build(3, 2, f2(), 5);
    assert!(!s.is_saturated());
    assert!(build(3, 2, f2(), 6).is_saturated());
}

#[test]
fn squares_in_characteristic_zero() {
    // x^2 = 0 over Q: xy = -yx and x^2 = 0 give dims (d, d(d-1)/2, ...)
    let s = build(2, 3, FieldSpec::InfiniteChar(0), 3);
    assert!(s.is_saturated());
    assert_eq!(s.quotient_dims(), vec![3, 3, 0]);
}

#[test]
fn relation_test_needs_saturation() {
    let s = build(3, 2, f2(), 5);
    let f = FreePoly::from_word(s.ring(), w("x1*x1*x1"));
    assert!(matches!(s.is_relation(&f), Err(Error::NotCertified { truncation: 5 })));
    let s = build(3, 2, f2(), 6);
    assert!(s.is_relation(&f).unwrap());
    let g = FreePoly::from_word(s.ring(), w("x1*x2"));
    assert!(!s.is_relation(&g).unwrap());
}

#[test]
fn space_is_closed_under_letters() {
    let s = build(3, 2, f2(), 5);
    let ring = s.ring();
    for row in s.rows_as_polys() {
        for x in 0..2u8 {
            let l = FreePoly::from_word(ring, Word::from_letters(vec![x]));
            for p in [l.mul_truncated(&row, 5).unwrap(), row.mul_truncated(&l, 5).unwrap()] {
                assert!(s.contains_truncated(&p).unwrap());
            }
        }
    }
}

#[test]
fn seed_order_does_not_change_the_space() {
    for (n, d, field, top) in [(3, 2, f2(), 5), (3, 2, FieldSpec::finite(3).unwrap(), 5), (3, 2, FieldSpec::InfiniteChar(0), 5)] {
        let a = build(n, d, field, top);
        let opts = BuildOptions {
            seed_order: SeedOrder::Reversed,
            jobs: 3,
            ..Default::default()
        };
        let b = build_relation_space(n, d, field, top, &opts).unwrap();
        assert_eq!(a.canonical_form(), b.canonical_form());
        assert_eq!(a.rank(), b.rank());
    }
}

#[test]
fn block_scheme_does_not_change_the_space() {
    for field in [FieldSpec::finite(3).unwrap(), FieldSpec::InfiniteChar(0), FieldSpec::finite(4).unwrap()] {
        let a = build(3, 2, field, 5);
        let opts = BuildOptions {
            block_scheme: Some(BlockScheme::Single),
            ..Default::default()
        };
        let b = build_relation_space(3, 2, field, 5, &opts).unwrap();
        assert!(a.block_count() > 1);
        assert_eq!(a.canonical_form(), b.canonical_form());
    }
}

#[test]
fn generators_match_literal_powers() {
    let opts = BuildOptions {
        max_arg_degree: Some(1),
        ..Default::default()
    };
    for (n, q) in [(2u32, 2u64), (3, 2), (3, 3), (2, 3)] {
        let gen = build_relation_space(n, 2, FieldSpec::finite(q).unwrap(), 4, &opts).unwrap();
        let lit = oracle_relation_space(n, 2, q, 4, 1, &BuildOptions::default()).unwrap();
        assert_eq!(gen.canonical_form(), lit.canonical_form(), "n={n} q={q}");
    }
}

#[test]
fn saturation_is_monotone() {
    let field = FieldSpec::finite(3).unwrap();
    let sat: Vec<bool> = (3..=8).map(|t| build(3, 2, field, t).is_saturated()).collect();
    let first = sat.iter().position(|&b| b).unwrap();
    assert!(sat[first..].iter().all(|&b| b));
}

#[test]
fn lower_truncation_is_a_projection() {
    let field = f2();
    let big = build(3, 2, field, 5);
    let small = build(3, 2, field, 4);
    for row in big.rows_as_polys() {
        assert!(small.contains_truncated(&row).unwrap());
    }
    // and conversely the truncated big space spans the small one
    let big_trunc: Vec<FreePoly> = big.rows_as_polys().iter().map(|p| p.truncate(4)).collect();
    let mut e = crate::exactla::Echelon::new(Gf2, small.coordinate_count());
    for p in &big_trunc {
        let mut r = Gf2.zero_row(small.coordinate_count());
        for (word, _) in p.terms() {
            if let Some(g) = small.layout().index_of(word).unwrap() {
                Gf2.add_entry(&mut r, g, &1);
            }
        }
        e.insert(r);
    }
    assert_eq!(e.rank(), small.rank());
}

#[test]
fn nilpotency_degrees_of_small_cases() {
    let o = BuildOptions::default();
    let c = |n, d, field| match nilpotency_degree(n, d, field, 12, &o).unwrap().outcome {
        Nilpotency::Reached { c } => c,
        other => panic!("{other:?}"),
    };
    assert_eq!(c(2, 2, f2()), 3);
    assert_eq!(c(3, 2, f2()), 6);
    assert_eq!(c(2, 3, FieldSpec::InfiniteChar(0)), 3);
    assert_eq!(c(3, 1, f2()), 3);
    assert_eq!(c(1, 4, f2()), 1);
}

#[test]
fn search_reports_lower_bound_when_out_of_room() {
    let r = nilpotency_degree(3, 2, f2(), 5, &BuildOptions::default()).unwrap();
    assert_eq!(
        r.outcome,
        Nilpotency::NotReached {
            dmax: 5,
            lower_bound: 6
        }
    );
}

#[test]
fn report_requires_the_nilpotency_degree() {
    let o = BuildOptions::default();
    let r = quotient_report(2, 2, f2(), 3, true, &o).unwrap();
    assert_eq!(r.dims, vec![2, 1, 0]);
    assert_eq!(r.total_dim, 3);
    assert_eq!(r.basis.as_deref(), Some(&["x1".to_string(), "x2".into(), "x1*x2".into()][..]));
    assert!(quotient_report(2, 2, f2(), 4, false, &o).is_err());
    assert!(matches!(quotient_report(2, 2, f2(), 2, false, &o), Err(Error::NotCertified { .. })));
}

#[test]
fn checkpoint_resume_matches_a_fresh_build() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("space.ckpt");
    let field = FieldSpec::finite(3).unwrap();
    let opts = BuildOptions {
        max_rows: Some(20),
        checkpoint: Some(path.clone()),
        ..Default::default()
    };
    let err = build_relation_space(3, 2, field, 6, &opts).unwrap_err();
    assert_eq!(err.checkpoint(), Some(&path));
    let (mut space, header) = RelationSpace::load_checkpoint(&path).unwrap();
    assert_eq!(header.truncation, 6);
    assert!(!space.is_complete());
    space.continue_build(&BuildOptions::default()).unwrap();
    let fresh = build(3, 2, field, 6);
    assert_eq!(space.canonical_form(), fresh.canonical_form());
}

#[test]
fn per_level_checkpoints_resume() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("level.ckpt");
    let opts = BuildOptions {
        checkpoint: Some(path.clone()),
        checkpoint_each_level: true,
        checkpoint_context: serde_json::json!({"probe": 5}),
        ..Default::default()
    };
    let built = build_relation_space(3, 2, FieldSpec::InfiniteChar(0), 5, &opts).unwrap();
    let (loaded, h) = RelationSpace::load_checkpoint(&path).unwrap();
    assert_eq!(h.completed_level, 5);
    assert_eq!(h.context["probe"], 5);
    assert_eq!(loaded.canonical_form(), built.canonical_form());
}

#[test]
fn cancellation_stops_the_build() {
    let flag = Arc::new(AtomicBool::new(true));
    let opts = BuildOptions {
        cancel: Some(flag),
        ..Default::default()
    };
    assert!(matches!(
        build_relation_space(3, 2, f2(), 5, &opts),
        Err(Error::Cancelled { checkpoint: None })
    ));
}

#[test]
fn coordinate_limit_is_enforced() {
    let opts = BuildOptions {
        max_coordinates: Some(100),
        ..Default::default()
    };
    assert!(matches!(
        build_relation_space(3, 2, f2(), 8, &opts),
        Err(Error::BudgetExceeded { .. })
    ));
}

#[test]
fn substitution_of_words() {
    let g = &generator_set(3, &f2())[1];
    let p = substitute(g, &[w("x1"), w("x2")], CoefficientRing::PrimeField(2)).unwrap();
    assert!(!p.is_empty());
    assert_eq!(p.degree(), 3);
}
