//! Numerical functions modelling Hilbert functions of hyperplane sections.

use std::cmp::Ordering;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::arith::pos;
use crate::bounds::ParamSet;
use crate::error::{Error, Result};
use crate::scalar::{from_index, to_index, Scalar};
use crate::surface::H1Profile;
use crate::warning::Warning;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    Model,
    FromProfile,
    User,
}

/// An integer sequence `i -> h(i)` with `h(0) = 1` that is constant from some
/// index on.
///
/// Values for `1 <= i <= prefix.len()` are stored; every later value equals
/// `tail`. A function *stabilizes* when `tail == degree`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HilbertFunction<T> {
    degree: T,
    prefix: Vec<T>,
    tail: T,
    origin: Origin,
}

impl<T: Scalar> HilbertFunction<T> {
    fn build(degree: T, mut prefix: Vec<T>, tail: T, origin: Origin) -> Self {
        while prefix.last() == Some(&tail) {
            prefix.pop();
        }
        HilbertFunction {
            degree,
            prefix,
            tail,
            origin,
        }
    }

    /// A user-supplied table `h(1), ..., h(N)` followed by `degree` forever.
    pub fn user(degree: T, values: Vec<T>) -> Self {
        let tail = degree.clone();
        Self::build(degree, values, tail, Origin::User)
    }

    /// A user-supplied table whose eventual value `tail` may differ from
    /// `degree`; such a function does not stabilize.
    pub fn user_with_tail(degree: T, values: Vec<T>, tail: T) -> Self {
        Self::build(degree, values, tail, Origin::User)
    }

    pub fn degree(&self) -> &T {
        &self.degree
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    /// Stored values `h(1), ..., h(N)`; `h(i) = tail` for `i > N`.
    pub fn prefix(&self) -> &[T] {
        &self.prefix
    }

    pub fn tail(&self) -> &T {
        &self.tail
    }

    pub fn value(&self, i: usize) -> T {
        if i == 0 {
            T::one()
        } else {
            self.prefix
                .get(i - 1)
                .cloned()
                .unwrap_or_else(|| self.tail.clone())
        }
    }

    /// The least `i >= 1` from which `h(i) = degree`, if the function
    /// stabilizes at its degree.
    pub fn stabilization_index(&self) -> Option<usize> {
        (self.tail == self.degree).then_some(self.prefix.len() + 1)
    }

    /// Indices `i` where `h(i) < h(i-1)`.
    pub fn monotonicity_warnings(&self) -> Vec<Warning> {
        (1..=self.prefix.len() + 1)
            .filter(|&i| self.value(i) < self.value(i - 1))
            .map(|index| Warning::NotMonotone { index })
            .collect()
    }
}

impl<T: Scalar> Serialize for HilbertFunction<T> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("HilbertFunction", 4)?;
        st.serialize_field("degree", &self.degree.to_string())?;
        let prefix: Vec<String> = self.prefix.iter().map(|v| v.to_string()).collect();
        st.serialize_field("prefix", &prefix)?;
        st.serialize_field("stabilization_index", &self.stabilization_index())?;
        st.serialize_field("origin", &self.origin)?;
        st.end()
    }
}

fn index_bound<T: Scalar>(m: &T) -> usize {
    to_index(m).expect("m is a nonnegative index")
}

/// The lower-envelope function: `1 - pi + i s - max(0, pi0 - pi - i + 1)` on
/// `1..=m`, `d - max_term` at `m+1`, then `d`.
pub fn h_model<T: Scalar>(ps: &ParamSet<T>) -> HilbertFunction<T> {
    let gap = ps.gap();
    let m = index_bound(&ps.m);
    let mut prefix = Vec::with_capacity(m + 1);
    for i in 1..=m {
        let it: T = from_index(i);
        let deficiency = pos(gap.clone() - it.clone() + T::one());
        prefix.push(T::one() - ps.pi.clone() + it * ps.s.clone() - deficiency);
    }
    prefix.push(ps.d.clone() - ps.max_term());
    HilbertFunction::build(ps.d.clone(), prefix, ps.d.clone(), Origin::Model)
}

/// The same shape as [`h_model`] with the actual `h1` of the section in place
/// of its maximal value.
pub fn h_from_h1_profile<T: Scalar>(
    ps: &ParamSet<T>,
    profile: &H1Profile<T>,
) -> Result<HilbertFunction<T>> {
    profile.validate(&ps.s, &ps.r, &ps.pi)?;
    let m = index_bound(&ps.m);
    let mut prefix = Vec::with_capacity(m + 1);
    for i in 1..=m {
        let it: T = from_index(i);
        prefix.push(T::one() - ps.pi.clone() + it * ps.s.clone() - profile.value(i));
    }
    prefix.push(ps.d.clone() - ps.max_term());
    Ok(HilbertFunction::build(
        ps.d.clone(),
        prefix,
        ps.d.clone(),
        Origin::FromProfile,
    ))
}

/// `Delta h(i) = h(i) - h(i-1)` for `i = 1..=N+1`, where `N` is the stored
/// prefix length. Every later difference is zero.
pub fn first_difference<T: Scalar>(hf: &HilbertFunction<T>) -> Vec<T> {
    (1..=hf.prefix.len() + 1)
        .map(|i| hf.value(i) - hf.value(i - 1))
        .collect()
}

/// `sum_{i >= 1} (degree - h(i))`.
pub fn genus_sum<T: Scalar>(hf: &HilbertFunction<T>) -> Result<T> {
    if hf.tail != hf.degree {
        return Err(Error::NotStabilizing {
            degree: hf.degree.to_string(),
            tail: hf.tail.to_string(),
        });
    }
    Ok(hf
        .prefix
        .iter()
        .fold(T::zero(), |acc, v| acc + hf.degree.clone() - v.clone()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HilbertOrder {
    Greater,
    Less,
    Equal,
    Incomparable,
}

/// Pointwise partial order: `h1 > h2` when `h1(i) >= h2(i)` everywhere with
/// strict inequality somewhere.
pub fn compare<T: Scalar>(h1: &HilbertFunction<T>, h2: &HilbertFunction<T>) -> HilbertOrder {
    let n = h1.prefix.len().max(h2.prefix.len()) + 1;
    let mut some_greater = false;
    let mut some_less = false;
    for i in 1..=n {
        match h1.value(i).cmp(&h2.value(i)) {
            Ordering::Greater => some_greater = true,
            Ordering::Less => some_less = true,
            Ordering::Equal => {}
        }
    }
    match (some_greater, some_less) {
        (false, false) => HilbertOrder::Equal,
        (true, false) => HilbertOrder::Greater,
        (false, true) => HilbertOrder::Less,
        (true, true) => HilbertOrder::Incomparable,
    }
}
