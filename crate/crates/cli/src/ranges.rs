//! Inclusive integer ranges such as `5..47`, `3`, or `1,4..6`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexRange {
    spans: Vec<(u64, u64)>,
}

impl IndexRange {
    pub fn span(lo: u64, hi: u64) -> Self {
        Self {
            spans: vec![(lo, hi)],
        }
    }

    /// Sorted, deduplicated values.
    pub fn values(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self.spans.iter().flat_map(|&(lo, hi)| lo..=hi).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn min(&self) -> u64 {
        self.spans.iter().map(|s| s.0).min().unwrap_or(0)
    }

    pub fn max(&self) -> u64 {
        self.spans.iter().map(|s| s.1).max().unwrap_or(0)
    }
}

impl FromStr for IndexRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| format!("`{t}` is not a non-negative integer"))
        };
        let mut spans = Vec::new();
        for part in s.split(',') {
            let span = match part.split_once("..") {
                Some((lo, hi)) => {
                    let hi = hi.strip_prefix('=').unwrap_or(hi);
                    (parse(lo)?, parse(hi)?)
                }
                None => {
                    let v = parse(part)?;
                    (v, v)
                }
            };
            if span.0 > span.1 {
                return Err(format!("empty range `{part}`"));
            }
            spans.push(span);
        }
        Ok(Self { spans })
    }
}

impl fmt::Display for IndexRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .spans
            .iter()
            .map(|&(lo, hi)| {
                if lo == hi {
                    lo.to_string()
                } else {
                    format!("{lo}..{hi}")
                }
            })
            .collect();
        f.write_str(&parts.join(","))
    }
}

impl Serialize for IndexRange {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `(r, s)` pairs written `2:1,3:1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamPairs(pub Vec<(u32, u32)>);

impl FromStr for ParamPairs {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.split(',')
            .map(|pair| {
                let (r, s) = pair
                    .split_once(':')
                    .ok_or_else(|| format!("`{pair}` is not of the form r:s"))?;
                let r = r.trim().parse().map_err(|_| format!("bad r in `{pair}`"))?;
                let s = s.trim().parse().map_err(|_| format!("bad s in `{pair}`"))?;
                Ok((r, s))
            })
            .collect::<Result<_, _>>()
            .map(ParamPairs)
    }
}

impl fmt::Display for ParamPairs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(r, s)| format!("{r}:{s}")).collect();
        f.write_str(&parts.join(","))
    }
}

impl Serialize for ParamPairs {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
