use num_bigint::BigUint;
use proptest::prelude::*;

use cantor_core::automaton::{
    build_multi, build_multi_direct, build_multi_untrimmed, build_single, count_paths, validate,
    BuildOptions,
};
use cantor_core::langops::{is_equal, is_subset};
use cantor_core::oracle::{brute_count, brute_count_extendable, dim_estimate};
use cantor_core::spectral::{hausdorff_dim, hausdorff_dim_char_poly, DEFAULT_TOL};
use cantor_core::ternary::{
    family_value, from_ternary, lowest_nonzero_digit, normalize, to_ternary, FamilyId, FamilyKind,
};
use cantor_core::Multiplier;

fn m(v: u64) -> Multiplier {
    Multiplier::from(v)
}

const SMALL: [u64; 8] = [4, 7, 10, 13, 16, 19, 22, 25];

fn small_tuples() -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for (i, &a) in SMALL.iter().enumerate() {
        out.push(vec![a]);
        for (j, &b) in SMALL.iter().enumerate().skip(i + 1) {
            out.push(vec![a, b]);
            for &c in &SMALL[j + 1..] {
                out.push(vec![a, b, c]);
            }
        }
    }
    out
}

#[test]
fn every_single_automaton_validates() {
    for v in (1..=1000u64).filter(|v| v % 3 == 1) {
        let g = build_single(&m(v)).unwrap();
        let report = validate(&g, &[m(v)]);
        assert!(report.all_ok(), "M={v}: {report:?}");
        for (id, label) in g.vertices().iter().enumerate() {
            let n = label.carries[0];
            assert!(n <= v / 2, "M={v}: carry {n}");
            let labels: Vec<u8> = g.out_edges(id).iter().map(|&(l, _)| l).collect();
            let expected: &[u8] = match n % 3 {
                0 => &[0, 1],
                1 => &[0],
                _ => &[1],
            };
            assert_eq!(labels, expected, "M={v} carry {n}");
        }
    }
}

#[test]
fn residue_one_means_lowest_digit_one() {
    for v in (1..=100_000u64).filter(|v| v % 3 == 1) {
        assert_eq!(lowest_nonzero_digit(&BigUint::from(v)).unwrap(), 1);
    }
}

#[test]
fn product_and_direct_constructions_agree() {
    let opts = BuildOptions::default();
    for t in small_tuples() {
        let ms: Vec<Multiplier> = t.iter().map(|&v| m(v)).collect();
        let folded = build_multi(&ms).unwrap();
        let direct = build_multi_direct(&ms).unwrap();
        assert!(is_equal(&folded, &direct).unwrap().holds, "{t:?}");
        let untrimmed = build_multi_untrimmed(&ms, &opts).unwrap();
        for n in 0..=12 {
            assert_eq!(
                count_paths(&folded, n).unwrap(),
                brute_count_extendable(&ms, n).unwrap().into(),
                "{t:?} n={n}"
            );
            assert_eq!(
                count_paths(&untrimmed, n).unwrap(),
                brute_count(&ms, n).unwrap().into(),
                "{t:?} n={n}"
            );
        }
    }
}

#[test]
fn fold_order_does_not_matter() {
    for t in small_tuples().into_iter().filter(|t| t.len() == 3) {
        let a = build_multi(&[m(t[0]), m(t[1]), m(t[2])]).unwrap();
        for perm in [[2, 0, 1], [1, 2, 0], [2, 1, 0]] {
            let b = build_multi(&[m(t[perm[0]]), m(t[perm[1]]), m(t[perm[2]])]).unwrap();
            assert!(is_equal(&a, &b).unwrap().holds, "{t:?} {perm:?}");
        }
    }
}

#[test]
fn char_poly_root_agrees_with_power_iteration() {
    for v in (1..=200u64).filter(|v| v % 3 == 1) {
        let g = build_single(&m(v)).unwrap();
        if g.vertex_count() > 64 {
            continue;
        }
        let a = hausdorff_dim(&g, 1e-11).unwrap();
        let b = hausdorff_dim_char_poly(&g).unwrap();
        assert!(
            (a.beta - b.beta).abs() < 1e-8,
            "M={v}: {} vs {}",
            a.beta,
            b.beta
        );
    }
}

#[test]
fn family_values_have_residue_one() {
    for kind in [FamilyKind::L, FamilyKind::N, FamilyKind::P] {
        for k in 1..=40 {
            let v = family_value(FamilyId::new(kind, k).unwrap());
            assert_eq!(&v % 3u8, BigUint::from(1u8), "{kind:?}:{k}");
        }
    }
}

#[test]
fn path_count_estimate_approaches_dimension() {
    for v in [7u64, 19, 25, 40] {
        let g = build_single(&m(v)).unwrap();
        let d = hausdorff_dim(&g, DEFAULT_TOL).unwrap().dim;
        let e = dim_estimate(&g, 2000).unwrap();
        assert!((e - d).abs() < 0.01, "M={v}: estimate {e}, dim {d}");
    }
}

proptest! {
    #[test]
    fn ternary_round_trip(n in 0u64..=3_486_784_401) {
        let b = BigUint::from(n);
        prop_assert_eq!(from_ternary(to_ternary(&b).digits()).unwrap(), b);
    }

    #[test]
    fn normalize_ignores_powers_of_three(v in 1u64..1_000_000, j in 0u32..=10) {
        let base = normalize(&BigUint::from(v)).unwrap();
        let scaled = normalize(&(BigUint::from(v) * BigUint::from(3u8).pow(j))).unwrap();
        prop_assert_eq!(base.value(), scaled.value());
        prop_assert_eq!(base.residue(), scaled.residue());
    }

    #[test]
    fn intersection_is_contained_in_factors(a in 0usize..8, b in 0usize..8) {
        let (x, y) = (m(SMALL[a]), m(SMALL[b]));
        let p = build_multi(&[x.clone(), y.clone()]).unwrap();
        prop_assert!(is_subset(&p, &build_single(&x).unwrap()).unwrap().holds);
        prop_assert!(is_subset(&p, &build_single(&y).unwrap()).unwrap().holds);
        let dp = hausdorff_dim(&p, DEFAULT_TOL).unwrap().dim;
        let dx = hausdorff_dim(&build_single(&x).unwrap(), DEFAULT_TOL).unwrap().dim;
        prop_assert!(dp <= dx + 1e-9);
    }

    #[test]
    fn single_counts_match_oracle(v in (0u64..300).prop_map(|i| 3 * i + 1), n in 0usize..=14) {
        let g = build_single(&m(v)).unwrap();
        prop_assert_eq!(count_paths(&g, n).unwrap(), brute_count(&[m(v)], n).unwrap().into());
    }

    #[test]
    fn dimension_bounded_by_log3_2(v in 1u64..5000) {
        let g = build_single(&m(v)).unwrap();
        let d = hausdorff_dim(&g, DEFAULT_TOL).unwrap();
        prop_assert!(d.dim >= 0.0 && d.dim <= 2f64.ln() / 3f64.ln() + 1e-12);
        prop_assert!(d.beta >= 1.0 - 1e-9 && d.beta <= 2.0 + 1e-9);
    }
}
