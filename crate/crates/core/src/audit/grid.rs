use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Names of every check, in the order the default grid runs them.
pub const CHECK_NAMES: &[&str] = &[
    "lemma_num_1",
    "lemma_num_2",
    "lemma_num_3",
    "assembly",
    "telescoping",
    "surface_range",
    "misc",
    "second_difference",
    "ci_gap",
    "surface_curves",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectionMode {
    All,
}

/// `"all"` or an explicit list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Selection {
    Mode(SelectionMode),
    List(Vec<i64>),
}

impl Default for Selection {
    fn default() -> Self {
        Selection::Mode(SelectionMode::All)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DBase {
    /// Absolute value.
    Zero,
    /// `d0(r)`.
    D0,
    /// `(2s+1)(s+1)`, past which degree-`s+1` sections overtake degree `s`.
    Crossover,
}

/// `base + plus + plus_s * s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DSample {
    pub base: DBase,
    #[serde(default)]
    pub plus: i64,
    #[serde(default)]
    pub plus_s: i64,
}

impl DSample {
    pub const fn new(base: DBase, plus: i64, plus_s: i64) -> Self {
        DSample { base, plus, plus_s }
    }

    pub fn resolve(&self, r: i64, s: i64) -> i64 {
        let base = match self.base {
            DBase::Zero => 0,
            DBase::D0 => d0_i64(r),
            DBase::Crossover => (2 * s + 1) * (s + 1),
        };
        base + self.plus + self.plus_s * s
    }
}

pub(crate) fn d0_i64(r: i64) -> i64 {
    crate::bounds::d0(&r).expect("grid r >= 4")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KSamples {
    /// That many values `k ≡ d (mod s)` spread evenly over `[s+1, d)`.
    Spread(usize),
    Values(Vec<i64>),
}

impl Default for KSamples {
    fn default() -> Self {
        KSamples::Spread(4)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomSamples {
    pub count: usize,
    pub seed: u64,
}

impl Default for RandomSamples {
    fn default() -> Self {
        RandomSamples {
            count: 100,
            seed: 7,
        }
    }
}

fn default_d_samples() -> Vec<DSample> {
    vec![
        DSample::new(DBase::D0, 1, 0),
        DSample::new(DBase::D0, 0, 1),
        DSample::new(DBase::D0, 1, 2),
        DSample::new(DBase::Crossover, 0, 0),
        DSample::new(DBase::Crossover, 0, 1),
    ]
}

fn default_checks() -> Vec<String> {
    CHECK_NAMES.iter().map(|s| s.to_string()).collect()
}

fn default_max_gap() -> usize {
    6
}

fn yes() -> bool {
    true
}

/// Which tuples each check runs over.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    /// Inclusive range of `r`.
    pub r_range: [i64; 2],
    #[serde(default)]
    pub s: Selection,
    #[serde(default)]
    pub pi: Selection,
    #[serde(default = "default_d_samples")]
    pub d_samples: Vec<DSample>,
    #[serde(default)]
    pub k_samples: KSamples,
    #[serde(default = "default_checks")]
    pub checks: Vec<String>,
    /// Largest `pi0 - pi` for exhaustive profile enumeration.
    #[serde(default = "default_max_gap")]
    pub max_gap: usize,
    #[serde(default)]
    pub random: RandomSamples,
    /// Reject tuples outside the hypotheses of the bound instead of examining them.
    #[serde(default = "yes")]
    pub strict: bool,
    /// Reject tuples below a check's own degree threshold.
    #[serde(default = "yes")]
    pub enforce_thresholds: bool,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            r_range: [4, 12],
            s: Selection::default(),
            pi: Selection::default(),
            d_samples: default_d_samples(),
            k_samples: KSamples::default(),
            checks: default_checks(),
            max_gap: default_max_gap(),
            random: RandomSamples::default(),
            strict: true,
            enforce_thresholds: true,
        }
    }
}

/// One `(r, s, pi, d)` point of the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridPoint {
    pub r: i64,
    pub s: i64,
    pub pi: i64,
    pub d: i64,
}

impl GridSpec {
    pub fn with_checks<I, S>(mut self, checks: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.checks = checks.into_iter().map(Into::into).collect();
        self
    }

    pub fn validate(&self) -> Result<()> {
        let [lo, hi] = self.r_range;
        if lo > hi {
            return Err(Error::Grid(format!("empty r_range [{lo}, {hi}]")));
        }
        if lo < 4 {
            return Err(Error::Grid(format!("r_range starts below 4 ({lo})")));
        }
        if hi > 60 {
            return Err(Error::Grid(format!("r_range ends above 60 ({hi})")));
        }
        if self.max_gap > 8 {
            return Err(Error::Grid(format!("max_gap {} exceeds 8", self.max_gap)));
        }
        if let KSamples::Spread(0) = self.k_samples {
            return Err(Error::Grid("k_samples spread must be positive".into()));
        }
        Ok(())
    }

    pub fn r_values(&self) -> impl Iterator<Item = i64> {
        self.r_range[0]..=self.r_range[1]
    }

    /// `s` values for `r`, with `"all"` meaning `r-1 ..= s_max`.
    pub fn s_values(&self, r: i64, s_max: i64) -> Vec<i64> {
        match &self.s {
            Selection::Mode(SelectionMode::All) => (r - 1..=s_max).collect(),
            Selection::List(v) => v.clone(),
        }
    }

    /// `pi` values, with `"all"` meaning `0 ..= pi0`.
    pub fn pi_values(&self, r: i64, s: i64) -> Vec<i64> {
        match &self.pi {
            Selection::Mode(SelectionMode::All) => (0..=s - r + 1).collect(),
            Selection::List(v) => v.clone(),
        }
    }

    /// `(r, s, pi)` triples in lexicographic order.
    pub fn triples(&self) -> Vec<(i64, i64, i64)> {
        let mut out = Vec::new();
        for r in self.r_values() {
            for s in self.s_values(r, 2 * r - 4) {
                for pi in self.pi_values(r, s) {
                    out.push((r, s, pi));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Every grid point, sorted. Duplicate `d` samples are kept.
    pub fn points(&self) -> Vec<GridPoint> {
        let mut out = Vec::new();
        for (r, s, pi) in self.triples() {
            for ds in &self.d_samples {
                out.push(GridPoint {
                    r,
                    s,
                    pi,
                    d: ds.resolve(r, s),
                });
            }
        }
        out.sort();
        out
    }

    /// Cone degrees for a point. Entries are `Err` with a reason when fewer
    /// admissible values exist than requested.
    pub fn k_values(&self, d: i64, s: i64) -> Vec<std::result::Result<i64, String>> {
        match &self.k_samples {
            KSamples::Values(v) => v.iter().copied().map(Ok).collect(),
            KSamples::Spread(count) => {
                let count = *count;
                let lo = s + 1;
                let kmin = lo + (d - lo).rem_euclid(s);
                let kmax = d - s;
                let n = if kmax >= kmin {
                    (kmax - kmin) / s + 1
                } else {
                    0
                };
                let n = usize::try_from(n).unwrap_or(0);
                if n >= count {
                    (0..count)
                        .map(|t| {
                            let j = if count == 1 {
                                0
                            } else {
                                t * (n - 1) / (count - 1)
                            };
                            Ok(kmin + j as i64 * s)
                        })
                        .collect()
                } else {
                    let mut v: Vec<_> = (0..n).map(|j| Ok(kmin + j as i64 * s)).collect();
                    for _ in n..count {
                        v.push(Err(format!("only {n} admissible k in [s+1, d)")));
                    }
                    v
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_size() {
        let g = GridSpec::default();
        assert_eq!(g.triples().len(), 219);
        assert_eq!(g.points().len(), 219 * 5);
    }

    #[test]
    fn k_spread_is_congruent_and_in_range() {
        let g = GridSpec::default();
        for (d, s) in [(804, 8), (25, 3), (161, 3), (8193, 20)] {
            let ks: Vec<i64> = g.k_values(d, s).into_iter().map(|k| k.unwrap()).collect();
            assert_eq!(ks.len(), 4);
            for k in &ks {
                assert!(*k > s && *k < d);
                assert_eq!((d - k) % s, 0);
            }
            assert!(ks.windows(2).all(|w| w[0] < w[1]), "{ks:?}");
        }
        let short = g.k_values(10, 3);
        assert_eq!(short.iter().filter(|k| k.is_err()).count(), 2);
    }

    #[test]
    fn parses_minimal_json() {
        let g: GridSpec = serde_json::from_str(r#"{"r_range": [4, 5]}"#).unwrap();
        assert_eq!(g.checks.len(), CHECK_NAMES.len());
        assert!(g.strict);
        let g: GridSpec = serde_json::from_str(
            r#"{"r_range": [6, 6], "s": [8], "pi": "all",
                "d_samples": [{"base": "zero", "plus": 100}],
                "k_samples": {"values": [164]}, "checks": ["assembly"]}"#,
        )
        .unwrap();
        assert_eq!(g.points().len(), 4);
        assert_eq!(g.points()[0].d, 100);
        assert!(serde_json::from_str::<GridSpec>(r#"{"r_range": [4, 5], "bogus": 1}"#).is_err());
    }

    #[test]
    fn validation() {
        let mut g = GridSpec::default();
        assert!(g.validate().is_ok());
        g.r_range = [5, 4];
        assert!(g.validate().is_err());
        g.r_range = [3, 4];
        assert!(g.validate().is_err());
    }
}
