use chbound_core::arith::{binom, div_offset};
use chbound_core::bounds::{castelnuovo_bound, gstar, max_term, validate_params};
use chbound_core::extremal::{assemble_extremal_genus, ruled_surface_genus, ConstructionData};
use chbound_core::hilbert::{compare, genus_sum, h_from_h1_profile, h_model, HilbertOrder};
use chbound_core::surface::{surface_genus, H1Profile, SurfaceProfile};
use chbound_core::Int;
use proptest::prelude::*;

/// `(r, s, pi)` with `r >= 4`, `r-1 <= s <= 2r-4`, `0 <= pi <= s-r+1`.
fn surface_params() -> impl Strategy<Value = (i64, i64, i64)> {
    (4i64..=14).prop_flat_map(|r| {
        (r - 1..=2 * r - 4).prop_flat_map(move |s| (Just(r), Just(s), 0..=s - r + 1))
    })
}

fn min_p(r: i64, s: i64, pi: i64) -> i64 {
    let g = s - r + 1 - pi;
    -(g + 1) * g / 2
}

/// Pascal's triangle, row by row.
fn pascal(n: usize, k: usize) -> i128 {
    let mut row = vec![1i128];
    for _ in 0..n {
        let mut next = vec![1i128; row.len() + 1];
        for j in 1..row.len() {
            next[j] = row[j - 1] + row[j];
        }
        row = next;
    }
    row.get(k).copied().unwrap_or(0)
}

/// The model function straight from its definition, summed term by term
/// until it settles at `d`.
fn model_genus_sum(d: i64, s: i64, pi: i64, r: i64) -> i64 {
    let (m, eps) = ((d - 1) / s, (d - 1) % s);
    let p0 = s - r + 1;
    let corr = ((2 * pi - (s - 1 - eps)) as f64 / 2.0).floor() as i64;
    let mut total = 0;
    for i in 1..=m + 5 {
        let h = if i <= m {
            1 - pi + i * s - (p0 - pi - i + 1).max(0)
        } else if i == m + 1 {
            d - corr.max(0)
        } else {
            d
        };
        total += d - h;
    }
    total
}

proptest! {
    #[test]
    fn binom_matches_pascal(n in 0usize..60, k in 0usize..70) {
        prop_assert_eq!(binom(&(n as i128), &(k as i128)).unwrap(), pascal(n, k));
    }

    #[test]
    fn div_offset_matches_euclid(d in 1i64..100_000, s in 1i64..200) {
        let (m, e) = div_offset(&d, &s).unwrap();
        prop_assert_eq!(m * s + e, d - 1);
        prop_assert!((0..s).contains(&e));
    }

    #[test]
    fn castelnuovo_matches_term_sum(n in 2i64..12, extra in 0i64..200) {
        // The genus bound is the sum over i >= 1 of max(0, deg - 1 - i(n-1)).
        let deg = n + extra;
        let oracle: i64 = (1..=deg).map(|i| (deg - 1 - i * (n - 1)).max(0)).sum();
        prop_assert_eq!(castelnuovo_bound(&n, &deg).unwrap(), oracle);
    }

    #[test]
    fn model_genus_sum_is_bound((r, s, pi) in surface_params(), d in 1i64..20_000) {
        // Needs m >= pi0 - pi, which holds for every d > d0(r).
        prop_assume!((d - 1) / s >= s - r + 1 - pi);
        let ps = validate_params(&r, &d, &s, &pi, &min_p(r, s, pi), true).unwrap();
        let oracle = model_genus_sum(d, s, pi, r);
        prop_assert_eq!(genus_sum(&h_model(&ps)).unwrap(), oracle);
        prop_assert_eq!(gstar(&ps).unwrap().value, oracle);
    }

    #[test]
    fn model_genus_sum_falls_short_for_small_m(
        (r, s, pi, d) in surface_params()
            .prop_filter("pi < pi0", |&(r, s, pi)| pi < s - r + 1)
            .prop_flat_map(|(r, s, pi)| (Just(r), Just(s), Just(pi), 1..=s * (s - r + 1 - pi)))
    ) {
        let (m, g) = ((d - 1) / s, s - r + 1 - pi);
        let ps = validate_params(&r, &d, &s, &pi, &min_p(r, s, pi), true).unwrap();
        let sum = genus_sum(&h_model(&ps)).unwrap();
        prop_assert_eq!(sum, model_genus_sum(d, s, pi, r));
        prop_assert_eq!(gstar(&ps).unwrap().value - sum, pascal((g - m + 1) as usize, 2) as i64);
    }

    #[test]
    fn bound_has_slope_minus_one_in_p((r, s, pi) in surface_params(), d in 1i64..20_000, t in 0.0f64..1.0) {
        let lo = min_p(r, s, pi);
        let p = lo + ((-lo) as f64 * t) as i64;
        prop_assume!(p < 0);
        let a = gstar(&validate_params(&r, &d, &s, &pi, &p, true).unwrap()).unwrap().value;
        let b = gstar(&validate_params(&r, &d, &s, &pi, &(p + 1), true).unwrap()).unwrap().value;
        prop_assert_eq!(a - b, 1);
    }

    #[test]
    fn second_difference_in_d_is_s((r, s, pi) in surface_params(), d in 1i64..20_000) {
        let p = min_p(r, s, pi);
        let g = |d: i64| gstar(&validate_params(&r, &d, &s, &pi, &p, true).unwrap()).unwrap().value;
        prop_assert_eq!(g(d + 2 * s) - 2 * g(d + s) + g(d), s);
    }

    #[test]
    fn machine_and_big_integers_agree((r, s, pi) in surface_params(), d in 1i64..1_000_000) {
        let p = min_p(r, s, pi);
        let small = gstar(&validate_params(&r, &d, &s, &pi, &p, true).unwrap()).unwrap().value;
        let big = gstar(&validate_params(
            &Int::from(r), &Int::from(d), &Int::from(s), &Int::from(pi), &Int::from(p), true,
        ).unwrap()).unwrap().value;
        prop_assert_eq!(Int::from(small), big);
    }

    #[test]
    fn relaxed_mode_keeps_strict_values((r, s, pi) in surface_params(), d in 1i64..20_000) {
        let p = min_p(r, s, pi);
        let strict = validate_params(&r, &d, &s, &pi, &p, true).unwrap();
        let relaxed = validate_params(&r, &d, &s, &pi, &p, false).unwrap();
        prop_assert_eq!(gstar(&strict).unwrap().value, gstar(&relaxed).unwrap().value);
        prop_assert_eq!(h_model(&strict), h_model(&relaxed));
        prop_assert!(!relaxed.is_relaxed());
    }

    #[test]
    fn model_is_monotone_and_settles((r, s, pi) in surface_params(), d in 1i64..20_000) {
        let ps = validate_params(&r, &d, &s, &pi, &min_p(r, s, pi), true).unwrap();
        let h = h_model(&ps);
        let m = ps.m as usize;
        for i in 1..=m + 2 {
            prop_assert!(h.value(i) >= h.value(i - 1), "drop at {}", i);
            prop_assert!(h.value(i) <= d);
        }
        prop_assert_eq!(h.value(m + 2), d);
    }

    #[test]
    fn actual_profiles_dominate_the_model(
        (r, s, pi) in surface_params(),
        d in 1i64..5_000,
        pick in any::<prop::sample::Index>(),
    ) {
        let ps = validate_params(&r, &d, &s, &pi, &min_p(r, s, pi), true).unwrap();
        let gap = (s - r + 1 - pi) as usize;
        prop_assume!(gap <= 8);
        let profiles = H1Profile::<i64>::enumerate(gap);
        let h1 = pick.get(&profiles);
        let h = h_from_h1_profile(&ps, h1).unwrap();
        let order = compare(&h, &h_model(&ps));
        let maximal = H1Profile::maximal(&(gap as i64));
        let agrees = (1..=ps.m as usize).all(|i| h1.value(i) == maximal.value(i));
        let expected = if agrees { HilbertOrder::Equal } else { HilbertOrder::Greater };
        prop_assert_eq!(order, expected);
    }

    #[test]
    fn telescoping_and_range(gap in 0usize..=8, pick in any::<prop::sample::Index>()) {
        let profiles = H1Profile::<i64>::enumerate(gap);
        let h1 = pick.get(&profiles).clone();
        let weighted: i64 = h1
            .delta_sequence()
            .iter()
            .enumerate()
            .map(|(k, d)| k as i64 * d)
            .sum();
        prop_assert_eq!(weighted, h1.values().iter().sum::<i64>());

        let r = (gap as i64 + 3).max(4);
        let s = r - 1 + gap as i64;
        let g = surface_genus(&SurfaceProfile::new(s, r, 0, h1.clone(), vec![])).unwrap();
        let lo = -((gap as i64 + 1) * gap as i64 / 2);
        prop_assert!(g.value >= lo && g.value <= 0);
        prop_assert_eq!(g.value == lo, h1.is_maximal());
        prop_assert!(g.warnings.is_empty());
    }

    #[test]
    fn assembly_matches_the_bound((r, s, pi) in surface_params(), m in 2i64..60, eps_pick in 0i64..1000, j in 0i64..1000) {
        let eps = eps_pick % s;
        let d = m * s + eps + 1;
        // k - 1 = mu s + eps with 1 <= mu < m.
        let mu = 1 + j % (m - 1);
        let k = mu * s + eps + 1;
        let cd = ConstructionData::new(r, d, s, pi, k, false).unwrap();
        let rep = assemble_extremal_genus(&cd).unwrap();
        prop_assert!(rep.matched, "{:?}", rep);
        let big = ConstructionData::new(
            Int::from(r), Int::from(d), Int::from(s), Int::from(pi), Int::from(k), false,
        ).unwrap();
        prop_assert_eq!(assemble_extremal_genus(&big).unwrap().assembled, Int::from(rep.assembled));
    }

    #[test]
    fn ruled_surface_falls_short_by_the_max_term((r, s, pi) in surface_params(), d in 1i64..20_000) {
        let ps = validate_params(&r, &d, &s, &pi, &0, false).unwrap();
        let g0 = ruled_surface_genus(&s, &pi, &ps.m, &ps.epsilon, &0).unwrap();
        let at_neg_pi = gstar(&validate_params(&r, &d, &s, &pi, &-pi, false).unwrap()).unwrap().value;
        let mt = max_term(&s, &pi, &ps.epsilon);
        prop_assert_eq!(at_neg_pi - g0, mt);
        if 2 * pi == s + 1 - ps.epsilon {
            prop_assert_eq!(mt, 1);
        }
    }
}

#[test]
fn boundary_case_gap_is_one() {
    // s = 8, eps = 3, pi = 3 gives 2 pi = s + 1 - eps.
    let (r, s, pi) = (6i64, 8i64, 3i64);
    let d = 12 * s + 3 + 1;
    let ps = validate_params(&r, &d, &s, &pi, &-pi, false).unwrap();
    assert_eq!(ps.epsilon, 3);
    let g0 = ruled_surface_genus(&s, &pi, &ps.m, &ps.epsilon, &0).unwrap();
    assert_eq!(gstar(&ps).unwrap().value - g0, 1);
}
