//! Genus bookkeeping for extremal curves on a cone over a section curve, and
//! the auxiliary genus formulas for curves on special surfaces.
//!
//! The extremal curve of degree `d` has a point of multiplicity `k` at the
//! vertex whose tangent cone `R` is itself an extremal configuration of
//! degree `k`. Its genus is the genus of the strict transform on the blown-up
//! cone plus the delta invariant of the vertex singularity. Intersection
//! numbers on the ruled surface are folded into the closed forms below.

use serde::Serialize;

use crate::arith::{binom2, div_offset, HalfInt};
use crate::bounds::{gstar, min_surface_genus, validate_params, ParamSet};
use crate::error::{Error, Result};
use crate::scalar::{dec, Scalar};

/// `-(k + s - 1 - eps) / s`, which equals `-(mu + 1)` for `k - 1 = mu s + eps`.
pub fn cone_a_parameter<T: Scalar>(k: &T, s: &T, epsilon: &T) -> Result<T> {
    if s < &T::two() || epsilon.is_negative() || epsilon >= s {
        return Err(Error::ConeDomain {
            s: s.to_string(),
            epsilon: epsilon.to_string(),
        });
    }
    let numerator = k.clone() + s.clone() - T::one() - epsilon.clone();
    let (q, rem) = numerator.div_rem(s);
    if !rem.is_zero() {
        return Err(Error::ConeNotDivisible {
            numerator: numerator.to_string(),
            s: s.to_string(),
        });
    }
    Ok(-q)
}

/// `binom(m,2) s + m(eps + pi) + pi - a^2 s / 2 + a(pi + eps - s/2)`.
///
/// The two half-integer parts sum to `-a(a+1)s/2`, which is always integral.
pub fn adjunction_genus<T: Scalar>(s: &T, pi: &T, m: &T, epsilon: &T, a: &T) -> Result<T> {
    let integral = binom2(m)? * s.clone()
        + m.clone() * (epsilon.clone() + pi.clone())
        + pi.clone()
        + a.clone() * (pi.clone() + epsilon.clone());
    let halves =
        -HalfInt::half(a.clone() * a.clone() * s.clone()) - HalfInt::half(a.clone() * s.clone());
    let total = HalfInt::from_int(integral) + halves;
    Ok(total
        .to_int()
        .expect("adjunction genus is integral since a(a+1) is even"))
}

/// Genus of a curve of class `(m+a+1) C_0 + b f` on a ruled surface over a
/// curve of genus `pi`; the same polynomial as [`adjunction_genus`].
pub fn ruled_surface_genus<T: Scalar>(s: &T, pi: &T, m: &T, epsilon: &T, a: &T) -> Result<T> {
    adjunction_genus(s, pi, m, epsilon, a)
}

/// Genus of the tangent cone: `G*(r, k, s, pi, -binom(pi0-pi+1, 2))`,
/// evaluated without the degree threshold.
pub fn tangent_cone_genus<T: Scalar>(r: &T, k: &T, s: &T, pi: &T) -> Result<T> {
    if k.clone() < s.clone() + T::one() {
        return Err(Error::too_small("k", s.clone() + T::one(), k));
    }
    let p = min_surface_genus(s, r, pi)?;
    let ps = validate_params(r, k, s, pi, &p, false)?;
    Ok(gstar(&ps)?.value)
}

/// `p_a(R) - (1 - k)`: the genus of the tangent cone minus that of `k`
/// disjoint lines.
pub fn delta_invariant<T: Scalar>(k: &T, pa_r: &T) -> Result<T> {
    if k < &T::one() {
        return Err(Error::too_small("k", 1, k));
    }
    Ok(pa_r.clone() - T::one() + k.clone())
}

/// Degree data for the cone construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionData<T: Scalar> {
    #[serde(with = "dec")]
    pub r: T,
    #[serde(with = "dec")]
    pub d: T,
    #[serde(with = "dec")]
    pub s: T,
    #[serde(with = "dec")]
    pub pi: T,
    /// Multiplicity at the vertex, the degree of the tangent cone.
    #[serde(with = "dec")]
    pub k: T,
    #[serde(with = "dec")]
    pub m: T,
    #[serde(with = "dec")]
    pub epsilon: T,
    /// `mu` with `k - 1 = mu s + eps`.
    #[serde(with = "dec")]
    pub mu_div: T,
    #[serde(with = "dec")]
    pub a: T,
    pub strict: bool,
    #[serde(skip)]
    params: ParamSet<T>,
}

impl<T: Scalar> ConstructionData<T> {
    pub fn new(r: T, d: T, s: T, pi: T, k: T, strict: bool) -> Result<Self> {
        let p = min_surface_genus(&s, &r, &pi)?;
        let params = validate_params(&r, &d, &s, &pi, &p, strict)?;
        let lo = s.clone() + T::one();
        if k < lo || k >= d {
            return Err(Error::ConeDegreeRange {
                k: k.to_string(),
                lo: lo.to_string(),
                d: d.to_string(),
            });
        }
        if !(d.clone() - k.clone()).is_multiple_of(&s) {
            return Err(Error::IncongruentConeDegree {
                k: k.to_string(),
                d: d.to_string(),
                s: s.to_string(),
            });
        }
        let (mu_div, eps_k) = div_offset(&k, &s)?;
        debug_assert_eq!(eps_k, params.epsilon);
        let a = cone_a_parameter(&k, &s, &params.epsilon)?;
        debug_assert_eq!(a, -(mu_div.clone() + T::one()));
        Ok(ConstructionData {
            m: params.m.clone(),
            epsilon: params.epsilon.clone(),
            r,
            d,
            s,
            pi,
            k,
            mu_div,
            a,
            strict,
            params,
        })
    }

    pub fn params(&self) -> &ParamSet<T> {
        &self.params
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssemblyReport<T: Scalar> {
    #[serde(with = "dec")]
    pub a: T,
    #[serde(with = "dec")]
    pub mu: T,
    #[serde(with = "dec")]
    pub adjunction_genus: T,
    #[serde(with = "dec")]
    pub tangent_cone_genus: T,
    #[serde(with = "dec")]
    pub delta_invariant: T,
    #[serde(with = "dec")]
    pub assembled: T,
    #[serde(with = "dec")]
    pub target: T,
    pub matched: bool,
}

/// Adjunction genus plus delta invariant, against the refined bound.
pub fn assemble_extremal_genus<T: Scalar>(cd: &ConstructionData<T>) -> Result<AssemblyReport<T>> {
    let adj = adjunction_genus(&cd.s, &cd.pi, &cd.m, &cd.epsilon, &cd.a)?;
    let cone = tangent_cone_genus(&cd.r, &cd.k, &cd.s, &cd.pi)?;
    let delta = delta_invariant(&cd.k, &cone)?;
    let assembled = adj.clone() + delta.clone();
    let target = gstar(&cd.params)?.value;
    Ok(AssemblyReport {
        a: cd.a.clone(),
        mu: cd.mu_div.clone(),
        adjunction_genus: adj,
        tangent_cone_genus: cone,
        delta_invariant: delta,
        matched: assembled == target,
        assembled,
        target,
    })
}

/// `binom(m,2) s + m(eps + pi) - p_a(S) + sum tail`, where the tail lists the
/// values `d - Delta h_C(i)` for `i >= m+1`.
pub fn genus_via_surface<T: Scalar>(ps: &ParamSet<T>, pa_s: &T, tail: &[T]) -> Result<T> {
    if let Some(index) = tail.iter().position(|t| t.is_negative()) {
        return Err(Error::NegativeTail { index });
    }
    let tail_sum = tail.iter().cloned().fold(T::zero(), |a, v| a + v);
    Ok(
        binom2(&ps.m)? * ps.s.clone() + ps.m.clone() * (ps.epsilon.clone() + ps.pi.clone())
            - pa_s.clone()
            + tail_sum,
    )
}

/// Genus of the complete intersection of a degree-`s` surface of sectional
/// genus `pi` with a hypersurface of degree `m+1`.
pub fn ci_genus<T: Scalar>(s: &T, pi: &T, m: &T) -> Result<T> {
    if m.is_negative() {
        return Err(Error::too_small("m", 0, m));
    }
    Ok(binom2(m)? * s.clone() + m.clone() * (s.clone() - T::one() + pi.clone()) + pi.clone())
}

/// Double points of a general projection to 4-space of a rational normal
/// scroll of degree `s`.
pub fn double_point_count<T: Scalar>(s: &T) -> Result<T> {
    if s < &T::lit(3) {
        return Err(Error::too_small("s", 3, s));
    }
    binom2(&(s.clone() - T::two()))
}

/// `binom(m,2) s + m eps + binom(s-2, 2)`.
pub fn scroll_projection_bound<T: Scalar>(s: &T, m: &T, epsilon: &T) -> Result<T> {
    let nodes = double_point_count(s)?;
    Ok(binom2(m)? * s.clone() + m.clone() * epsilon.clone() + nodes)
}
