//! Closed-form genus bounds and parameter validation.
//!
//! Throughout, `r` is the dimension of the ambient projective space of the
//! curve, so a general hyperplane section of a degree-`s` surface is a curve
//! in projective `(r-1)`-space and [`pi0`]`(s, r) = s - r + 1` is its maximal
//! arithmetic genus in the covered range.

use serde::Serialize;

use crate::arith::{binom2, div_offset, floor_div, pos};
use crate::error::{Constraint, Error, Result};
use crate::scalar::{dec, Scalar};
use crate::warning::Warning;

/// `s - r + 1`; requires `s >= r-1 >= 2`.
pub fn pi0<T: Scalar>(s: &T, r: &T) -> Result<T> {
    if r < &T::lit(3) {
        return Err(Error::param(Constraint::AmbientDefined, format!("r = {r}")));
    }
    if s.clone() < r.clone() - T::one() {
        return Err(Error::param(
            Constraint::SurfaceDegreeMin,
            format!("s = {s}, r = {r}"),
        ));
    }
    Ok(s.clone() - r.clone() + T::one())
}

/// Degree threshold above which the refined bound is sharp.
pub fn d0<T: Scalar>(r: &T) -> Result<T> {
    if r < &T::lit(4) {
        return Err(Error::param(Constraint::AmbientMin, format!("r = {r}")));
    }
    let two = T::two();
    let v = if r <= &T::lit(6) {
        T::lit(16) * (r.clone() - two.clone()) * (T::two() * r.clone() - T::lit(3))
    } else if r <= &T::lit(11) {
        let t = r.clone() - two;
        T::lit(8) * t.clone() * t.clone() * t
    } else {
        let e = r.to_u32().expect("exponent too large") + 1;
        num_traits::pow(T::two(), e as usize)
    };
    Ok(v)
}

/// Castelnuovo's bound for a nondegenerate integral curve of degree `deg` in
/// projective `n`-space: `binom(w, 2)(n-1) + w v` with `deg - 1 = w(n-1) + v`.
pub fn castelnuovo_bound<T: Scalar>(n: &T, deg: &T) -> Result<T> {
    if n < &T::two() {
        return Err(Error::too_small("n", 2, n));
    }
    if deg < n {
        return Err(Error::too_small("deg", n, deg));
    }
    let step = n.clone() - T::one();
    let (w, v) = div_offset(deg, &step)?;
    Ok(binom2(&w)? * step + w * v)
}

/// `max(0, floor((2 pi - (s-1-eps)) / 2))`, the correction at twist `m+1`.
pub fn max_term<T: Scalar>(s: &T, pi: &T, epsilon: &T) -> T {
    let numer = T::two() * pi.clone() - (s.clone() - T::one() - epsilon.clone());
    pos(floor_div(&numer, &T::two()).expect("positive divisor"))
}

/// `binom(m, 2) s + m (eps + pi) - p + max_term`, from pre-divided data.
pub fn gstar_value<T: Scalar>(s: &T, pi: &T, p: &T, m: &T, epsilon: &T) -> Result<T> {
    Ok(
        binom2(m)? * s.clone() + m.clone() * (epsilon.clone() + pi.clone()) - p.clone()
            + max_term(s, pi, epsilon),
    )
}

/// The most negative arithmetic genus a surface of sectional genus `pi` can
/// have: `-binom(pi0 - pi + 1, 2)`.
pub fn min_surface_genus<T: Scalar>(s: &T, r: &T, pi: &T) -> Result<T> {
    let gap = pi0(s, r)? - pi.clone();
    Ok(-binom2(&(gap + T::one()))?)
}

/// A validated `(r, d, s, pi, p)` with its division data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParamSet<T: Scalar> {
    #[serde(with = "dec")]
    pub r: T,
    #[serde(with = "dec")]
    pub d: T,
    #[serde(with = "dec")]
    pub s: T,
    #[serde(with = "dec")]
    pub pi: T,
    #[serde(with = "dec")]
    pub p: T,
    #[serde(with = "dec")]
    pub m: T,
    #[serde(with = "dec")]
    pub epsilon: T,
    pub strict: bool,
    pub warnings: Vec<Warning>,
}

impl<T: Scalar> ParamSet<T> {
    pub fn pi0(&self) -> T {
        self.s.clone() - self.r.clone() + T::one()
    }

    /// `pi0 - pi`, the dimension of `h1` at twist 1.
    pub fn gap(&self) -> T {
        self.pi0() - self.pi.clone()
    }

    /// `-binom(pi0 - pi + 1, 2)` when defined.
    pub fn min_surface_genus(&self) -> Result<T> {
        min_surface_genus(&self.s, &self.r, &self.pi)
    }

    /// The same tuple with `p` replaced. Range warnings on `p` are recomputed.
    pub fn with_p(&self, p: T) -> Result<Self> {
        validate_params(&self.r, &self.d, &self.s, &self.pi, &p, self.strict)
    }

    /// The same tuple with `p = -binom(pi0 - pi + 1, 2)`.
    pub fn with_minimal_p(&self) -> Result<Self> {
        self.with_p(self.min_surface_genus()?)
    }

    pub fn max_term(&self) -> T {
        max_term(&self.s, &self.pi, &self.epsilon)
    }

    pub fn is_relaxed(&self) -> bool {
        self.warnings
            .iter()
            .any(|w| matches!(w, Warning::RelaxedConstraint { .. }))
    }
}

/// Validates `(r, d, s, pi, p)`.
///
/// Strict mode enforces the hypotheses of the refined bound except `d > d0(r)`,
/// which only ever produces a warning. Relaxed mode turns every range
/// violation into a warning; only the definitional requirements `r >= 3`,
/// `s >= r-1` and `d >= 1` stay hard errors.
pub fn validate_params<T: Scalar>(
    r: &T,
    d: &T,
    s: &T,
    pi: &T,
    p: &T,
    strict: bool,
) -> Result<ParamSet<T>> {
    let mut warnings = Vec::new();
    let mut check = |ok: bool, c: Constraint, detail: String| -> Result<()> {
        if ok {
            Ok(())
        } else if strict {
            Err(Error::param(c, detail))
        } else {
            warnings.push(Warning::relaxed(c));
            Ok(())
        }
    };

    if r < &T::lit(3) {
        return Err(Error::param(Constraint::AmbientDefined, format!("r = {r}")));
    }
    if d < &T::one() {
        return Err(Error::param(Constraint::CurveDegreeMin, format!("d = {d}")));
    }
    let p0 = pi0(s, r)?;
    check(r >= &T::lit(4), Constraint::AmbientMin, format!("r = {r}"))?;
    let s_max = T::two() * r.clone() - T::lit(4);
    check(
        s <= &s_max,
        Constraint::SurfaceDegreeMax,
        format!("s = {s}, 2r-4 = {s_max}"),
    )?;
    check(
        !pi.is_negative(),
        Constraint::SectionalGenusMin,
        format!("pi = {pi}"),
    )?;
    check(
        pi <= &p0,
        Constraint::SectionalGenusMax,
        format!("pi = {pi}, pi0 = {p0}"),
    )?;
    // The lower end of the p range is only defined while pi0 - pi + 1 >= 0.
    let gap1 = p0.clone() - pi.clone() + T::one();
    if !gap1.is_negative() {
        let lo = -binom2(&gap1)?;
        check(
            p >= &lo,
            Constraint::SurfaceGenusMin,
            format!("p = {p}, -binom(pi0-pi+1,2) = {lo}"),
        )?;
    }
    check(
        !p.is_positive(),
        Constraint::SurfaceGenusMax,
        format!("p = {p}"),
    )?;
    if let Ok(threshold) = d0(r) {
        if d <= &threshold {
            warnings.push(Warning::BelowDegreeThreshold {
                d: d.to_string(),
                d0: threshold.to_string(),
            });
        }
    }
    let (m, epsilon) = div_offset(d, s)?;
    Ok(ParamSet {
        r: r.clone(),
        d: d.clone(),
        s: s.clone(),
        pi: pi.clone(),
        p: p.clone(),
        m,
        epsilon,
        strict,
        warnings,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Regime<T: Scalar> {
    /// Value of `max(0, floor((2 pi - (s-1-eps)) / 2))`.
    #[serde(with = "dec")]
    pub max_term: T,
    pub max_term_positive: bool,
    /// `2 pi >= s - eps + 1`: the extremal construction needs a scroll.
    pub scroll_regime: bool,
    /// `d > d0(r)`.
    pub above_threshold: bool,
}

impl<T: Scalar> Regime<T> {
    pub fn of(ps: &ParamSet<T>) -> Self {
        let max_term = ps.max_term();
        let scroll_regime =
            T::two() * ps.pi.clone() >= ps.s.clone() - ps.epsilon.clone() + T::one();
        let above_threshold = d0(&ps.r).map(|t| ps.d > t).unwrap_or(false);
        Regime {
            max_term_positive: max_term.is_positive(),
            max_term,
            scroll_regime,
            above_threshold,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport<T: Scalar> {
    #[serde(with = "dec")]
    pub value: T,
    pub regime: Regime<T>,
    pub params: ParamSet<T>,
}

/// The refined bound `G*(r, d, s, pi, p)`.
pub fn gstar<T: Scalar>(ps: &ParamSet<T>) -> Result<BoundReport<T>> {
    let value = gstar_value(&ps.s, &ps.pi, &ps.p, &ps.m, &ps.epsilon)?;
    Ok(BoundReport {
        value,
        regime: Regime::of(ps),
        params: ps.clone(),
    })
}

/// `G*` with `p` replaced by the arithmetic genus of a containing surface.
pub fn gstar_with_surface<T: Scalar>(ps: &ParamSet<T>, pa_s: &T) -> Result<T> {
    let lo = ps.min_surface_genus()?;
    if pa_s < &lo || pa_s.is_positive() {
        return Err(Error::SurfaceGenusRange {
            value: pa_s.to_string(),
            lo: lo.to_string(),
            hi: "0".into(),
        });
    }
    gstar_value(&ps.s, &ps.pi, pa_s, &ps.m, &ps.epsilon)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Sharpness {
    /// `p` is one of `-binom(pi0-pi+1, 2)`, `-(pi0-pi)`, `0`.
    SharpProven { case: SharpCase },
    /// Sharp provided a smooth section curve with Rao module of dimension
    /// `-p` exists. That route needs `p <= -(pi0-pi)`.
    SharpConditional { conditional_route_available: bool },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SharpCase {
    MinimalSurfaceGenus,
    LinearDeficiency,
    Zero,
}

pub fn sharpness_status<T: Scalar>(r: &T, s: &T, pi: &T, p: &T) -> Result<Sharpness> {
    // d plays no role; any value above the threshold keeps validation quiet.
    let d = d0(r)? + T::one();
    let ps = validate_params(r, &d, s, pi, p, true)?;
    let gap = ps.gap();
    if p == &ps.min_surface_genus()? {
        Ok(Sharpness::SharpProven {
            case: SharpCase::MinimalSurfaceGenus,
        })
    } else if p == &(-gap.clone()) {
        Ok(Sharpness::SharpProven {
            case: SharpCase::LinearDeficiency,
        })
    } else if p.is_zero() {
        Ok(Sharpness::SharpProven {
            case: SharpCase::Zero,
        })
    } else {
        Ok(Sharpness::SharpConditional {
            conditional_route_available: p <= &(-gap),
        })
    }
}
