mod common;

use common::*;
use corkatlas_core::laurent::LaurentPoly;
use corkatlas_core::linkdiag::{alexander, braid_form, seifert_matrix, PDCode};
use proptest::prelude::*;

fn closed_a(m: i64) -> LaurentPoly {
    let a = m.abs();
    LaurentPoly::from_pairs(&[(a + 1, 1), (a, -1), (1, -1), (0, 3), (-1, -1), (-a, -1), (-a - 1, 1)])
}

fn closed_at(m: i64) -> LaurentPoly {
    let a = m.abs();
    LaurentPoly::from_pairs(&[(a, -1), (a - 1, 1), (1, -1), (0, 3), (-1, -1), (-a + 1, 1), (-a, -1)])
}

#[test]
fn shipped_family_fixtures_match_closed_forms() {
    for m in 1..=3 {
        for n in -1..=1 {
            let k = load_pd(&format!("pd/K_m{m}_n{n}.pd"));
            assert_eq!(alexander(&k).unwrap(), closed_a(m), "K m={m} n={n}");
            let kt = load_pd(&format!("pd/Kt_m{m}_n{n}.pd"));
            assert_eq!(alexander(&kt).unwrap(), closed_at(m), "Kt m={m} n={n}");
        }
    }
}

#[test]
fn shipped_fixtures_round_trip_exactly() {
    let dir = fixture("pd");
    let mut count = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let pd = PDCode::parse(&text).unwrap();
        assert_eq!(pd.to_string(), text, "{}", path.display());
        count += 1;
    }
    assert!(count >= 21);
}

#[test]
fn fixture_writhe_matches_metadata() {
    let k = load_pd("pd/K_m2_n0.pd");
    let recorded: i64 = k.metadata("writhe").unwrap().parse().unwrap();
    assert_eq!(k.writhe(), recorded);
    assert_eq!(PDCode::unknot().writhe(), 0);
    assert_eq!(load_pd("pd/trefoil.pd").writhe(), 3);
}

#[test]
fn twist_links_have_linking_number_m() {
    for m in 1..=3 {
        let l = load_pd(&format!("pd/twist_link_m{m}.pd"));
        assert_eq!(l.linking_number("L1", "L2").unwrap(), m);
        assert_eq!(l.linking_number("L2", "L1").unwrap(), m);
    }
}

#[test]
fn split_unlink_and_hopf_link() {
    let unlink = PDCode::parse("pd v1\nC A: 1\nC B: 2\n").unwrap();
    assert_eq!(unlink.linking_number("A", "B").unwrap(), 0);
    let hopf = closure(&[1, 1], 2);
    assert_eq!(hopf.linking_number("L1", "L2").unwrap(), 1);
}

#[test]
fn named_knots() {
    let trefoil = load_pd("pd/trefoil.pd");
    let v = seifert_matrix(&trefoil).unwrap();
    assert_eq!(v.dim(), 2);
    assert_eq!(v.signature(), -2);
    assert_eq!(alexander(&trefoil).unwrap(), LaurentPoly::from_pairs(&[(-1, 1), (0, -1), (1, 1)]));

    let fig8 = load_pd("pd/figure_eight.pd");
    let v = seifert_matrix(&fig8).unwrap();
    assert_eq!(v.dim(), 2);
    let e = v.entries();
    let d = (e[0][0] - e[0][0]) * (e[1][1] - e[1][1]) - (e[0][1] - e[1][0]) * (e[1][0] - e[0][1]);
    assert_eq!(d, 1);
    assert_eq!(v.signature(), 0);
    assert_eq!(alexander(&fig8).unwrap(), LaurentPoly::from_pairs(&[(-1, -1), (0, 3), (1, -1)]));

    assert_eq!(alexander(&load_pd("pd/unknot.pd")).unwrap(), LaurentPoly::one());
}

#[test]
fn fixtures_agree_with_wirtinger_oracle() {
    for name in ["trefoil", "figure_eight", "K_m1_n0", "K_m3_n1", "Kt_m2_n-1"] {
        let pd = load_pd(&format!("pd/{name}.pd"));
        assert_eq!(alexander(&pd).unwrap(), fox_alexander(&pd), "{name}");
    }
}

#[test]
fn braid_form_of_a_non_braided_diagram() {
    let pd = plat_closure(&[2, 2, 2], 2);
    let braided = braid_form(&pd).unwrap();
    assert!(braided.crossings().len() >= pd.crossings().len());
    assert_eq!(alexander(&pd).unwrap(), LaurentPoly::from_pairs(&[(-1, 1), (0, -1), (1, 1)]));
}

fn knot_word(n: usize) -> impl Strategy<Value = Vec<i32>> {
    let g = (1..n as i32).prop_flat_map(|i| prop_oneof![Just(i), Just(-i)]);
    prop::collection::vec(g, 1..10)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn random_closed_braids_agree_with_oracle(n in 2usize..5, word in knot_word(5)) {
        let word: Vec<i32> = word.into_iter().filter(|g| (g.unsigned_abs() as usize) < n).collect();
        prop_assume!(!word.is_empty());
        let pd = closure(&word, n);
        prop_assume!(pd.components().len() == 1);
        let oracle = fox_alexander(&pd);
        prop_assert_eq!(alexander(&pd).unwrap(), oracle.clone());
        prop_assert_eq!(alexander(&pd.mirror()).unwrap(), oracle);
        let sig = seifert_matrix(&pd).unwrap().signature();
        prop_assert_eq!(seifert_matrix(&pd.mirror()).unwrap().signature(), -sig);
    }

    #[test]
    fn random_plats_agree_with_oracle(word in knot_word(4)) {
        let pd = plat_closure(&word, 2);
        prop_assume!(pd.components().len() == 1);
        prop_assert_eq!(alexander(&pd).unwrap(), fox_alexander(&pd));
    }

    #[test]
    fn reidemeister_moves_preserve_alexander_and_signature(
        n in 2usize..4,
        word in knot_word(4),
        moves in prop::collection::vec((0u8..3, 0usize..64, 0usize..64, 0usize..8), 1..6),
        shift in 0u32..5,
        rotate in 0usize..7,
    ) {
        let word: Vec<i32> = word.into_iter().filter(|g| (g.unsigned_abs() as usize) < n).collect();
        prop_assume!(!word.is_empty());
        let pd = closure(&word, n);
        prop_assume!(pd.components().len() == 1);
        let delta = alexander(&pd).unwrap();
        let sig = seifert_matrix(&pd).unwrap().signature();
        let mut cur = pd;
        for (kind, a, b, v) in moves {
            cur = apply_move(&cur, kind, a, b, v);
        }
        let cur = relabel(&cur, shift, rotate);
        prop_assert_eq!(fox_alexander(&cur), delta.clone());
        prop_assert_eq!(alexander(&cur).unwrap(), delta);
        prop_assert_eq!(seifert_matrix(&cur).unwrap().signature(), sig);
    }
}

#[test]
fn move_engine_applies_every_move_type() {
    let mut counts = [0usize; 3];
    let mut cur = closure(&[1, 2, 1, 2, -1, 2, 1, -2], 3);
    let delta = fox_alexander(&cur);
    for step in 0..60usize {
        let before = cur.clone();
        let kind = (step % 3) as u8;
        cur = apply_move(&cur, kind, step * 7, step * 3, step);
        if cur != before {
            counts[kind as usize] += 1;
        }
        if cur.crossings().len() > 40 {
            cur = closure(&[1, 2, 1, 2, -1, 2, 1, -2], 3);
        }
    }
    assert!(counts.iter().all(|&c| c > 0), "{counts:?}");
    assert_eq!(alexander(&cur).unwrap(), delta);
}
