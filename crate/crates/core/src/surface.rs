//! Surface-side invariants: `h1` decay profiles of the hyperplane section,
//! the Rao-module dimension, and the arithmetic genus of the surface.

use num_rational::Ratio;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::arith::{binom2, pos};
use crate::bounds::{min_surface_genus, pi0};
use crate::error::{Constraint, Error, ProfileFault, Result};
use crate::scalar::{dec, from_index, Scalar};
use crate::warning::Warning;

/// `h1(I_Sigma(i))` for `i = 1..=T`, zero beyond `T`.
///
/// Trailing zeros are dropped on construction, so two profiles describing the
/// same sequence compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct H1Profile<T> {
    values: Vec<T>,
}

impl<T: Scalar> H1Profile<T> {
    pub fn new(mut values: Vec<T>) -> Self {
        while values.last().is_some_and(|v| v.is_zero()) {
            values.pop();
        }
        H1Profile { values }
    }

    /// `h1(i) = max(0, gap + 1 - i)`, the profile saturating every decay bound.
    pub fn maximal(gap: &T) -> Self {
        let mut values = Vec::new();
        let mut v = gap.clone();
        while v.is_positive() {
            values.push(v.clone());
            v = v - T::one();
        }
        H1Profile { values }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn value(&self, i: usize) -> T {
        if i == 0 {
            return T::zero();
        }
        self.values.get(i - 1).cloned().unwrap_or_else(T::zero)
    }

    /// Checks the anchor `h1(1) = gap` and the decay law.
    pub fn validate_gap(&self, gap: &T) -> Result<()> {
        for (k, v) in self.values.iter().enumerate() {
            if v.is_negative() {
                return Err(Error::InvalidProfile {
                    index: k + 1,
                    fault: ProfileFault::Negative {
                        found: v.to_string(),
                    },
                });
            }
        }
        let first = self.value(1);
        if &first != gap {
            return Err(Error::InvalidProfile {
                index: 1,
                fault: ProfileFault::Anchor {
                    expected: gap.to_string(),
                    found: first.to_string(),
                },
            });
        }
        for i in 2..=self.values.len() {
            let bound = pos(self.value(i - 1) - T::one());
            let found = self.value(i);
            if found > bound {
                return Err(Error::InvalidProfile {
                    index: i,
                    fault: ProfileFault::Decay {
                        bound: bound.to_string(),
                        found: found.to_string(),
                    },
                });
            }
        }
        Ok(())
    }

    pub fn validate(&self, s: &T, r: &T, pi: &T) -> Result<()> {
        self.validate_gap(&(pi0(s, r)? - pi.clone()))
    }

    pub fn is_maximal(&self) -> bool {
        *self == Self::maximal(&self.value(1))
    }

    /// `sum_i h1(i)`.
    pub fn rao_dimension(&self) -> T {
        self.values.iter().cloned().fold(T::zero(), |a, v| a + v)
    }

    /// `delta(1) = 0`, `delta(i) = h1(i-1) - h1(i)` for `i >= 2`, listed up to
    /// the last nonzero entry.
    pub fn delta_sequence(&self) -> Vec<T> {
        let mut out = vec![T::zero()];
        for i in 2..=self.values.len() + 1 {
            out.push(self.value(i - 1) - self.value(i));
        }
        out
    }

    /// Every valid profile with `h1(1) = gap`, in lexicographic order.
    pub fn enumerate(gap: usize) -> Vec<Self> {
        fn walk<T: Scalar>(prefix: &mut Vec<T>, last: usize, out: &mut Vec<H1Profile<T>>) {
            out.push(H1Profile::new(prefix.clone()));
            for next in 1..last {
                prefix.push(from_index(next));
                walk(prefix, next, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if gap == 0 {
            out.push(H1Profile::new(vec![]));
        } else {
            walk(&mut vec![from_index(gap)], gap, &mut out);
        }
        out
    }
}

impl<T: Scalar> Serialize for H1Profile<T> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        dec::seq::serialize(&self.values, ser)
    }
}

/// `max(0, pi0 - pi + 1 - i)`.
pub fn h1_upper<T: Scalar>(i: &T, s: &T, r: &T, pi: &T) -> Result<T> {
    if i < &T::one() {
        return Err(Error::too_small("i", 1, i));
    }
    let gap = pi0(s, r)? - pi.clone();
    if gap.is_negative() {
        return Err(Error::param(
            Constraint::SectionalGenusMax,
            format!("pi = {pi}, s = {s}, r = {r}"),
        ));
    }
    Ok(pos(gap + T::one() - i.clone()))
}

pub fn validate_h1_profile<T: Scalar>(profile: &H1Profile<T>, s: &T, r: &T, pi: &T) -> Result<()> {
    profile.validate(s, r, pi)
}

pub fn rao_dimension<T: Scalar>(profile: &H1Profile<T>) -> T {
    profile.rao_dimension()
}

pub fn delta_sequence<T: Scalar>(profile: &H1Profile<T>) -> Vec<T> {
    profile.delta_sequence()
}

/// Data from which the arithmetic genus of a surface is assembled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceProfile<T> {
    pub s: T,
    pub r: T,
    pub pi: T,
    pub h1: H1Profile<T>,
    /// `mu(1), mu(2), ...`, zero beyond the list.
    pub mu: Vec<T>,
    /// `h_H(1), h_H(2), ...`, equal to `s` beyond the list. `None` selects
    /// `h_H(1) = r-1`, `h_H(i) = s` for `i >= 2`.
    pub h_h: Option<Vec<T>>,
}

impl<T: Scalar> SurfaceProfile<T> {
    pub fn new(s: T, r: T, pi: T, h1: H1Profile<T>, mu: Vec<T>) -> Self {
        SurfaceProfile {
            s,
            r,
            pi,
            h1,
            mu,
            h_h: None,
        }
    }

    pub fn with_point_section(mut self, h_h: Vec<T>) -> Self {
        self.h_h = Some(h_h);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceGenus<T: Scalar> {
    #[serde(with = "dec")]
    pub value: T,
    /// `sum (i-1)(s - h_H(i))`.
    #[serde(with = "dec")]
    pub section_term: T,
    /// `sum (i-1) delta_i`.
    #[serde(with = "dec")]
    pub delta_term: T,
    #[serde(with = "dec")]
    pub mu_sum: T,
    pub warnings: Vec<Warning>,
}

/// `p_a(S) = sum (i-1)(s - h_H(i)) - sum (i-1) delta_i + sum mu_i`.
pub fn surface_genus<T: Scalar>(sp: &SurfaceProfile<T>) -> Result<SurfaceGenus<T>> {
    sp.h1.validate(&sp.s, &sp.r, &sp.pi)?;
    if let Some(index) = sp.mu.iter().position(|v| v.is_negative()) {
        return Err(Error::NegativeMu { index: index + 1 });
    }
    let section_term = match &sp.h_h {
        Some(h_h) => h_h.iter().enumerate().fold(T::zero(), |acc, (k, h)| {
            acc + from_index::<T>(k) * (sp.s.clone() - h.clone())
        }),
        None => {
            let s_max = T::two() * sp.r.clone() - T::lit(4);
            if sp.s > s_max {
                return Err(Error::SectionOutsideRange {
                    s: sp.s.to_string(),
                    r: sp.r.to_string(),
                });
            }
            // h_H(1) carries weight 0 and h_H(i) = s afterwards.
            T::zero()
        }
    };
    let delta_term = sp
        .h1
        .delta_sequence()
        .into_iter()
        .enumerate()
        .fold(T::zero(), |acc, (k, d)| acc + from_index::<T>(k) * d);
    let mu_sum = sp.mu.iter().cloned().fold(T::zero(), |a, v| a + v);
    let value = section_term.clone() - delta_term.clone() + mu_sum.clone();

    let mut warnings = Vec::new();
    let lo = min_surface_genus(&sp.s, &sp.r, &sp.pi)?;
    if value < lo || value.is_positive() {
        warnings.push(Warning::InadmissibleSurfaceGenus {
            value: value.to_string(),
            lo: lo.to_string(),
            hi: "0".into(),
        });
    }
    Ok(SurfaceGenus {
        value,
        section_term,
        delta_term,
        mu_sum,
        warnings,
    })
}

/// `(-binom(pi0 - pi + 1, 2), 0)` under the hypotheses `r >= 4`,
/// `r-1 <= s <= 2r-4`, `0 <= pi <= pi0`.
pub fn surface_genus_range<T: Scalar>(s: &T, r: &T, pi: &T) -> Result<(T, T)> {
    if r < &T::lit(4) {
        return Err(Error::param(Constraint::AmbientMin, format!("r = {r}")));
    }
    let p0 = pi0(s, r)?;
    if s > &(T::two() * r.clone() - T::lit(4)) {
        return Err(Error::param(
            Constraint::SurfaceDegreeMax,
            format!("s = {s}, r = {r}"),
        ));
    }
    if pi.is_negative() {
        return Err(Error::param(
            Constraint::SectionalGenusMin,
            format!("pi = {pi}"),
        ));
    }
    if pi > &p0 {
        return Err(Error::param(
            Constraint::SectionalGenusMax,
            format!("pi = {pi}, pi0 = {p0}"),
        ));
    }
    let lo = -binom2(&(p0 - pi.clone() + T::one()))?;
    Ok((lo, T::zero()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityBound<T: Scalar> {
    pub exact: Ratio<T>,
    pub ceil: T,
}

impl<T: Scalar> Serialize for RegularityBound<T> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("RegularityBound", 3)?;
        st.serialize_field("numerator", &self.exact.numer().to_string())?;
        st.serialize_field("denominator", &self.exact.denom().to_string())?;
        st.serialize_field("ceil", &self.ceil.to_string())?;
        st.end()
    }
}

/// `(s - r + 2)(s^2 / (2(r-2)) + 1) + 1`, an upper bound for the
/// Castelnuovo-Mumford regularity of an integral nondegenerate surface.
pub fn regularity_bound<T: Scalar>(s: &T, r: &T) -> Result<RegularityBound<T>> {
    pi0(s, r)?;
    let one = Ratio::from_integer(T::one());
    let sq = Ratio::new(s.clone() * s.clone(), T::two() * (r.clone() - T::two()));
    let exact = Ratio::from_integer(s.clone() - r.clone() + T::two()) * (sq + one.clone()) + one;
    let ceil = exact.ceil().to_integer();
    Ok(RegularityBound { exact, ceil })
}
