use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::grid::{d0_i64, GridPoint, GridSpec, CHECK_NAMES};
use super::report::{tuple, CheckReport, Outcome, Tuple};
use crate::arith::binom2;
use crate::bounds::{
    castelnuovo_bound, gstar, gstar_value, max_term, min_surface_genus, validate_params, ParamSet,
};
use crate::error::{Error, Result};
use crate::extremal::{
    assemble_extremal_genus, ci_genus, genus_via_surface, ruled_surface_genus, ConstructionData,
};
use crate::hilbert::{compare, genus_sum, h_model, HilbertFunction, HilbertOrder};
use crate::scalar::Scalar;
use crate::surface::{surface_genus, H1Profile, SurfaceProfile};

/// Maps `f` over `items` on `jobs` workers. Output order follows `items`.
fn par_outcomes<I, F>(jobs: usize, items: &[I], f: F) -> Vec<Outcome>
where
    I: Sync,
    F: Fn(&I) -> Vec<Outcome> + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("worker pool");
    let nested: Vec<Vec<Outcome>> = pool.install(|| items.par_iter().map(&f).collect());
    nested.into_iter().flatten().collect()
}

/// Runs `body`, turning an arithmetic error into a violation on `t`.
fn guarded(t: Tuple, body: impl FnOnce(Tuple) -> Result<Outcome>) -> Outcome {
    let echo = t.clone();
    body(t).unwrap_or_else(|e| Outcome::fail(echo, format!("evaluation error: {e}")))
}

fn point_tuple(pt: &GridPoint) -> Tuple {
    tuple(&[("r", &pt.r), ("d", &pt.d), ("s", &pt.s), ("pi", &pt.pi)])
}

/// The point with `p = -binom(pi0 - pi + 1, 2)`, or the rejection reason.
fn minimal_params<T: Scalar>(
    pt: &GridPoint,
    strict: bool,
) -> std::result::Result<ParamSet<T>, String> {
    let (r, d, s, pi) = (T::lit(pt.r), T::lit(pt.d), T::lit(pt.s), T::lit(pt.pi));
    let p = min_surface_genus(&s, &r, &pi).map_err(|e| e.to_string())?;
    validate_params(&r, &d, &s, &pi, &p, strict).map_err(|e| e.to_string())
}

fn profile_text<T: Scalar>(h1: &H1Profile<T>) -> String {
    let v: Vec<String> = h1.values().iter().map(|x| x.to_string()).collect();
    format!("[{}]", v.join(","))
}

/// Genus sum of the model function equals the bound at minimal `p`.
pub fn check_lemma_num_1<T: Scalar>(grid: &GridSpec, jobs: usize) -> Result<CheckReport> {
    check_lemma_num_1_with(grid, jobs, h_model::<T>)
}

/// [`check_lemma_num_1`] with the model function supplied by the caller.
pub fn check_lemma_num_1_with<T, F>(grid: &GridSpec, jobs: usize, model: F) -> Result<CheckReport>
where
    T: Scalar,
    F: Fn(&ParamSet<T>) -> HilbertFunction<T> + Sync + Send,
{
    grid.validate()?;
    let points = grid.points();
    let out = par_outcomes(jobs, &points, |pt| {
        let t = point_tuple(pt);
        let ps = match minimal_params::<T>(pt, grid.strict) {
            Ok(ps) => ps,
            Err(e) => return vec![Outcome::skip(t, e)],
        };
        vec![guarded(t, |t| {
            let lhs = genus_sum(&model(&ps))?;
            let rhs = gstar(&ps)?.value;
            Ok(Outcome::expect(lhs == rhs, t, || {
                format!("genus_sum {lhs} != gstar {rhs}")
            }))
        })]
    });
    Ok(CheckReport::from_outcomes("lemma_num_1", grid, out))
}

/// Lowering `pi` raises the model function and lowers the bound.
pub fn check_lemma_num_2<T: Scalar>(grid: &GridSpec, jobs: usize) -> Result<CheckReport> {
    grid.validate()?;
    // pi' = pi is vacuous, so only pi' < pi is enumerated.
    let items: Vec<(GridPoint, i64)> = grid
        .points()
        .into_iter()
        .flat_map(|pt| (0..pt.pi.max(0)).map(move |lower| (pt, lower)))
        .collect();
    let out = par_outcomes(jobs, &items, |(pt, lower)| {
        let mut t = point_tuple(pt);
        t.insert("pi_prime".into(), lower.to_string());
        let lower_pt = GridPoint { pi: *lower, ..*pt };
        let (hi, lo) = match (
            minimal_params::<T>(pt, grid.strict),
            minimal_params::<T>(&lower_pt, grid.strict),
        ) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return vec![Outcome::skip(t, e)],
        };
        vec![guarded(t, |t| {
            let order = compare(&h_model(&lo), &h_model(&hi));
            let g_lo = gstar(&lo)?.value;
            let g_hi = gstar(&hi)?.value;
            Ok(Outcome::expect(
                order == HilbertOrder::Greater && g_lo < g_hi,
                t,
                || format!("order {order:?}, gstar(pi') {g_lo}, gstar(pi) {g_hi}"),
            ))
        })]
    });
    Ok(CheckReport::from_outcomes("lemma_num_2", grid, out))
}

/// Past `(2s+1)(s+1)`, the maximal-genus section of degree `s+1` beats any
/// section of degree `s`.
pub fn check_lemma_num_3<T: Scalar>(grid: &GridSpec, jobs: usize) -> Result<CheckReport> {
    grid.validate()?;
    let points = grid.points();
    let out = par_outcomes(jobs, &points, |pt| {
        let t = point_tuple(pt);
        let threshold = (2 * pt.s + 1) * (pt.s + 1);
        if grid.enforce_thresholds && pt.d < threshold {
            return vec![Outcome::skip(t, format!("d < (2s+1)(s+1) = {threshold}"))];
        }
        let ps = match minimal_params::<T>(pt, grid.strict) {
            Ok(ps) => ps,
            Err(e) => return vec![Outcome::skip(t, e)],
        };
        vec![guarded(t, |t| {
            let s1 = ps.s.clone() + T::one();
            let pi1 = s1.clone() - ps.r.clone() + T::one();
            let up = validate_params(&ps.r, &ps.d, &s1, &pi1, &T::zero(), false)?;
            let order = compare(&h_model(&up), &h_model(&ps));
            let g_up = gstar(&up)?.value;
            let g = gstar(&ps)?.value;
            Ok(Outcome::expect(
                order == HilbertOrder::Greater && g_up < g,
                t,
                || format!("order {order:?}, gstar(s+1) {g_up}, gstar(s) {g}"),
            ))
        })]
    });
    Ok(CheckReport::from_outcomes("lemma_num_3", grid, out))
}

/// The cone construction's genus pieces add up to the bound.
pub fn check_assembly<T: Scalar>(grid: &GridSpec, jobs: usize) -> Result<CheckReport> {
    grid.validate()?;
    let items: Vec<(GridPoint, std::result::Result<i64, String>)> = grid
        .points()
        .into_iter()
        .flat_map(|pt| grid.k_values(pt.d, pt.s).into_iter().map(move |k| (pt, k)))
        .collect();
    let out = par_outcomes(jobs, &items, |(pt, k)| {
        let mut t = point_tuple(pt);
        let k = match k {
            Ok(k) => *k,
            Err(e) => return vec![Outcome::skip(t, e.clone())],
        };
        t.insert("k".into(), k.to_string());
        let cd = match ConstructionData::new(
            T::lit(pt.r),
            T::lit(pt.d),
            T::lit(pt.s),
            T::lit(pt.pi),
            T::lit(k),
            grid.strict,
        ) {
            Ok(cd) => cd,
            Err(e) => return vec![Outcome::skip(t, e.to_string())],
        };
        vec![guarded(t, |t| {
            let rep = assemble_extremal_genus(&cd)?;
            Ok(Outcome::expect(rep.matched, t, || {
                format!("assembled {} != target {}", rep.assembled, rep.target)
            }))
        })]
    });
    Ok(CheckReport::from_outcomes("assembly", grid, out))
}

fn all_profiles<T: Scalar>(max_gap: usize) -> Vec<(usize, H1Profile<T>)> {
    (0..=max_gap)
        .flat_map(|g| {
            H1Profile::<T>::enumerate(g)
                .into_iter()
                .map(move |h| (g, h))
        })
        .collect()
}

/// `sum (i-1) delta_i` equals the Rao module dimension for every profile.
pub fn check_telescoping<T: Scalar>(grid: &GridSpec, jobs: usize) -> Result<CheckReport> {
    grid.validate()?;
    let items = all_profiles::<T>(grid.max_gap);
    let out = par_outcomes(jobs, &items, |(g, h1)| {
        let t = tuple(&[("gap", g), ("profile", &profile_text(h1))]);
        let weighted = h1
            .delta_sequence()
            .into_iter()
            .enumerate()
            .fold(T::zero(), |acc, (k, d)| acc + T::lit(k as i64) * d);
        let rao = h1.rao_dimension();
        vec![Outcome::expect(weighted == rao, t, || {
            format!("weighted delta sum {weighted} != rao {rao}")
        })]
    });
    Ok(CheckReport::from_outcomes("telescoping", grid, out))
}

/// Surface genus over all profiles with `mu = 0` stays in range and reaches
/// the minimum only at the maximal profile.
pub fn check_surface_range<T: Scalar>(grid: &GridSpec, jobs: usize) -> Result<CheckReport> {
    grid.validate()?;
    let items: Vec<(usize, Option<H1Profile<T>>)> = (0..=grid.max_gap)
        .flat_map(|g| {
            H1Profile::<T>::enumerate(g)
                .into_iter()
                .map(move |h| (g, Some(h)))
                .chain(std::iter::once((g, None)))
        })
        .collect();
    // Representative surface with pi0 - pi = gap: pi = 0, s = r-1+gap <= 2r-4.
    let rep = |g: usize| -> (T, T) {
        let r = (g as i64 + 3).max(4);
        (T::lit(r - 1 + g as i64), T::lit(r))
    };
    let out = par_outcomes(jobs, &items, |(g, h1)| {
        let (s, r) = rep(*g);
        let gap = T::lit(*g as i64);
        let Some(h1) = h1 else {
            // Per-gap summary: the minimum is attained exactly once.
            let t = tuple(&[("gap", g), ("r", &r), ("s", &s), ("pi", &0)]);
            return vec![guarded(t, |t| {
                let lo = min_surface_genus(&s, &r, &T::zero())?;
                let mut hits = 0usize;
                for h in H1Profile::<T>::enumerate(*g) {
                    let sp = SurfaceProfile::new(s.clone(), r.clone(), T::zero(), h, vec![]);
                    if surface_genus(&sp)?.value == lo {
                        hits += 1;
                    }
                }
                Ok(Outcome::expect(hits == 1, t, || {
                    format!("minimum {lo} attained {hits} times")
                }))
            })];
        };
        let t = tuple(&[
            ("gap", g),
            ("r", &r),
            ("s", &s),
            ("pi", &0),
            ("profile", &profile_text(h1)),
        ]);
        vec![guarded(t, |t| {
            let sp = SurfaceProfile::new(s.clone(), r.clone(), T::zero(), h1.clone(), vec![]);
            let value = surface_genus(&sp)?.value;
            let lo = min_surface_genus(&s, &r, &T::zero())?;
            let cap = binom2(&(gap + T::one()))?;
            let rao = h1.rao_dimension();
            let maximal = h1.is_maximal();
            let mut faults = Vec::new();
            if value < lo || value.is_positive() {
                faults.push(format!("p_a {value} outside [{lo}, 0]"));
            }
            if rao > cap || (rao == cap) != maximal {
                faults.push(format!("rao {rao} vs cap {cap}, maximal {maximal}"));
            }
            if (value == lo) != maximal {
                faults.push(format!("p_a {value} at minimum {lo}, maximal {maximal}"));
            }
            Ok(Outcome::expect(faults.is_empty(), t, || faults.join("; ")))
        })]
    });
    Ok(CheckReport::from_outcomes("surface_range", grid, out))
}

enum MiscItem {
    Castelnuovo { r: i64, s: i64 },
    SecondDifference(GridPoint),
}

/// Section genus identities on `(r, s)` and the second-difference law along
/// the grid points.
pub fn check_misc<T: Scalar>(grid: &GridSpec, jobs: usize) -> Result<CheckReport> {
    grid.validate()?;
    let mut items: Vec<MiscItem> = Vec::new();
    for r in grid.r_values() {
        for s in grid.s_values(r, 2 * r - 3) {
            items.push(MiscItem::Castelnuovo { r, s });
        }
    }
    items.extend(grid.points().into_iter().map(MiscItem::SecondDifference));
    let out = par_outcomes(jobs, &items, |item| match item {
        MiscItem::Castelnuovo { r, s } => {
            let t = tuple(&[("r", r), ("s", s)]);
            if *s < r - 1 || (grid.strict && *s > 2 * r - 3) {
                return vec![Outcome::skip(
                    t,
                    format!("s outside [r-1, 2r-3] = [{}, {}]", r - 1, 2 * r - 3),
                )];
            }
            vec![guarded(t, |t| {
                let (rt, st) = (T::lit(*r), T::lit(*s));
                let g = castelnuovo_bound(&(rt.clone() - T::one()), &st)?;
                let p0 = st.clone() - rt.clone() + T::one();
                let lhs = T::two() * (rt - T::two()) * g.clone();
                let sq = st.clone() * st;
                let mut faults = Vec::new();
                if g != p0 {
                    faults.push(format!("G(r-1,s) = {g} != pi0 = {p0}"));
                }
                if lhs > sq {
                    faults.push(format!("2(r-2)G = {lhs} > s^2 = {sq}"));
                }
                Ok(Outcome::expect(faults.is_empty(), t, || faults.join("; ")))
            })]
        }
        MiscItem::SecondDifference(pt) => {
            let t = point_tuple(pt);
            let ps = match minimal_params::<T>(pt, grid.strict) {
                Ok(ps) => ps,
                Err(e) => return vec![Outcome::skip(t, e)],
            };
            vec![guarded(t, |t| {
                let second = second_difference(&ps)?;
                Ok(Outcome::expect(second == ps.s, t, || {
                    format!("second difference {second} != s = {}", ps.s)
                }))
            })]
        }
    });
    Ok(CheckReport::from_outcomes("misc", grid, out))
}

/// `G*(d+2s) - 2 G*(d+s) + G*(d)` at fixed `(r, s, pi, p)`.
fn second_difference<T: Scalar>(ps: &ParamSet<T>) -> Result<T> {
    let at = |j: i64| -> Result<T> {
        let d = ps.d.clone() + T::lit(j) * ps.s.clone();
        let q = validate_params(&ps.r, &d, &ps.s, &ps.pi, &ps.p, ps.strict)?;
        Ok(gstar(&q)?.value)
    };
    Ok(at(2)? - T::two() * at(1)? + at(0)?)
}

/// The second-difference law at seeded random admissible tuples.
pub fn check_second_difference<T: Scalar>(grid: &GridSpec, jobs: usize) -> Result<CheckReport> {
    grid.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(grid.random.seed);
    let [r_lo, r_hi] = grid.r_range;
    let items: Vec<(i64, i64, i64, i64, i64)> = (0..grid.random.count)
        .map(|_| {
            let r = rng.gen_range(r_lo..=r_hi);
            let s = rng.gen_range(r - 1..=2 * r - 4);
            let pi = rng.gen_range(0..=s - r + 1);
            let gap = s - r + 1 - pi;
            let p = rng.gen_range(-(gap + 1) * gap / 2..=0);
            let d = rng.gen_range(1..=2 * d0_i64(r));
            (r, d, s, pi, p)
        })
        .collect();
    let out = par_outcomes(jobs, &items, |&(r, d, s, pi, p)| {
        let t = tuple(&[("r", &r), ("d", &d), ("s", &s), ("pi", &pi), ("p", &p)]);
        vec![guarded(t, |t| {
            let ps = validate_params(
                &T::lit(r),
                &T::lit(d),
                &T::lit(s),
                &T::lit(pi),
                &T::lit(p),
                true,
            )?;
            let second = second_difference(&ps)?;
            Ok(Outcome::expect(second == ps.s, t, || {
                format!("second difference {second} != s = {s}")
            }))
        })]
    });
    Ok(CheckReport::from_outcomes("second_difference", grid, out))
}

/// With `eps = s-1`, the bound exceeds the complete-intersection genus by
/// exactly `-p`.
pub fn check_ci_gap<T: Scalar>(grid: &GridSpec, jobs: usize) -> Result<CheckReport> {
    grid.validate()?;
    let mut items: Vec<(GridPoint, i64)> = Vec::new();
    for pt in grid.points() {
        let d = pt.d + (pt.s - pt.d.rem_euclid(pt.s)) % pt.s;
        let pt = GridPoint { d, ..pt };
        let gap = pt.s - pt.r + 1 - pt.pi;
        if gap < 0 {
            items.push((pt, 0));
            continue;
        }
        for p in -(gap + 1) * gap / 2..=0 {
            items.push((pt, p));
        }
    }
    let out = par_outcomes(jobs, &items, |(pt, p)| {
        let mut t = point_tuple(pt);
        t.insert("p".into(), p.to_string());
        let (r, d, s, pi) = (T::lit(pt.r), T::lit(pt.d), T::lit(pt.s), T::lit(pt.pi));
        let ps = match validate_params(&r, &d, &s, &pi, &T::lit(*p), grid.strict) {
            Ok(ps) => ps,
            Err(e) => return vec![Outcome::skip(t, e.to_string())],
        };
        vec![guarded(t, |t| {
            let g = gstar(&ps)?.value;
            let ci = ci_genus(&ps.s, &ps.pi, &ps.m)?;
            let diff = g.clone() - ci.clone();
            let ok = ps.epsilon == ps.s.clone() - T::one()
                && diff == -ps.p.clone()
                && diff.is_positive() == ps.p.is_negative();
            Ok(Outcome::expect(ok, t, || {
                format!("eps {}, gstar {g}, ci {ci}", ps.epsilon)
            }))
        })]
    });
    Ok(CheckReport::from_outcomes("ci_gap", grid, out))
}

/// Curves on the ruled surface and on a surface of given genus fall short of
/// the bound by exactly the maximum term.
pub fn check_surface_curves<T: Scalar>(grid: &GridSpec, jobs: usize) -> Result<CheckReport> {
    grid.validate()?;
    let points = grid.points();
    let out = par_outcomes(jobs, &points, |pt| {
        let t = point_tuple(pt);
        let ps = match minimal_params::<T>(pt, grid.strict) {
            Ok(ps) => ps,
            Err(e) => return vec![Outcome::skip(t, e)],
        };
        vec![guarded(t, |t| {
            let mt = max_term(&ps.s, &ps.pi, &ps.epsilon);
            let neg_pi = -ps.pi.clone();
            let ruled_bound = gstar_value(&ps.s, &ps.pi, &neg_pi, &ps.m, &ps.epsilon)?;
            let g0 = ruled_surface_genus(&ps.s, &ps.pi, &ps.m, &ps.epsilon, &T::zero())?;
            let on_surface = genus_via_surface(&ps, &ps.p, &[])?;
            let bound = gstar(&ps)?.value;
            let mut faults = Vec::new();
            if ruled_bound.clone() - g0.clone() != mt {
                faults.push(format!(
                    "G*(p=-pi) {ruled_bound} - g(0) {g0} != max term {mt}"
                ));
            }
            if bound.clone() - on_surface.clone() != mt {
                faults.push(format!(
                    "G* {bound} - surface genus {on_surface} != max term {mt}"
                ));
            }
            Ok(Outcome::expect(faults.is_empty(), t, || faults.join("; ")))
        })]
    });
    Ok(CheckReport::from_outcomes("surface_curves", grid, out))
}

/// Runs one check by name.
pub fn run_check<T: Scalar>(name: &str, grid: &GridSpec, jobs: usize) -> Result<CheckReport> {
    let start = Instant::now();
    let mut report = match name {
        "lemma_num_1" => check_lemma_num_1::<T>(grid, jobs),
        "lemma_num_2" => check_lemma_num_2::<T>(grid, jobs),
        "lemma_num_3" => check_lemma_num_3::<T>(grid, jobs),
        "assembly" => check_assembly::<T>(grid, jobs),
        "telescoping" => check_telescoping::<T>(grid, jobs),
        "surface_range" => check_surface_range::<T>(grid, jobs),
        "misc" => check_misc::<T>(grid, jobs),
        "second_difference" => check_second_difference::<T>(grid, jobs),
        "ci_gap" => check_ci_gap::<T>(grid, jobs),
        "surface_curves" => check_surface_curves::<T>(grid, jobs),
        other => Err(Error::UnknownCheck(other.to_string())),
    }?;
    report.wall_time = start.elapsed();
    Ok(report)
}

/// Runs every check named in the grid, in order. Unknown names fail before
/// any check runs.
pub fn run_checks<T: Scalar>(grid: &GridSpec, jobs: usize) -> Result<Vec<CheckReport>> {
    grid.validate()?;
    if let Some(bad) = grid
        .checks
        .iter()
        .find(|c| !CHECK_NAMES.contains(&c.as_str()))
    {
        return Err(Error::UnknownCheck(bad.clone()));
    }
    grid.checks
        .iter()
        .map(|name| run_check::<T>(name, grid, jobs))
        .collect()
}
