//! Integer partitions: the index set of every Schur-function quantity.
//!
//! Partitions are stored in canonical form (non-increasing, trailing zeros
//! stripped), so two partitions that differ only by zero padding compare
//! equal. The text form used by the CLI and reports is comma-separated
//! parts, e.g. `"2,1"`; the empty string denotes the empty partition.

use std::fmt;
use std::str::FromStr;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A partition: a non-increasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Canonicalizes `parts`: rejects increasing sequences, strips zeros.
    pub fn new(parts: &[u32]) -> Result<Self> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::BadParameter(format!(
                    "partition parts must be non-increasing, got {parts:?}"
                )));
            }
        }
        let parts: Vec<u32> = parts.iter().copied().take_while(|&p| p > 0).collect();
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Non-zero parts, largest first.
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of non-zero parts.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    /// Sum of the parts.
    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `j`-th part (1-indexed); zero beyond the length.
    pub fn part(&self, j: usize) -> u32 {
        if j >= 1 && j <= self.parts.len() {
            self.parts[j - 1]
        } else {
            0
        }
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        if self.parts.is_empty() {
            return Partition::empty();
        }
        let cols = self.parts[0] as usize;
        let mut out = Vec::with_capacity(cols);
        for t in 0..cols as u32 {
            out.push(self.parts.iter().filter(|&&p| p > t).count() as u32);
        }
        Partition { parts: out }
    }

    /// Shifted parts `f_j = m + lambda_j - j` for `j = 1..m`.
    ///
    /// Strictly decreasing and non-negative; requires `length <= m`.
    pub fn shifted_parts(&self, m: usize) -> Result<Vec<u64>> {
        if self.length() > m {
            return Err(Error::BadParameter(format!(
                "shifted_parts needs length(lambda) <= m, got length {} > m {}",
                self.length(),
                m
            )));
        }
        Ok((1..=m)
            .map(|j| (m as u64 + self.part(j) as u64) - j as u64)
            .collect())
    }
}

/// Every partition with weight `<= max_weight` and length `<= max_length`,
/// ordered by (weight, lexicographic descending). The ordering is fixed so
/// reports and tables are deterministic.
pub fn enumerate_partitions(max_weight: u32, max_length: u32) -> Vec<Partition> {
    let mut out = vec![Partition::empty()];
    for w in 1..=max_weight {
        let mut at_weight = Vec::new();
        collect_exact(w, w, max_length, &mut Vec::new(), &mut at_weight);
        at_weight.sort_by(|a, b| b.parts.cmp(&a.parts));
        out.extend(at_weight);
    }
    out
}

fn collect_exact(
    remaining: u32,
    max_part: u32,
    max_length: u32,
    current: &mut Vec<u32>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    if current.len() as u32 >= max_length {
        return;
    }
    for p in (1..=remaining.min(max_part)).rev() {
        current.push(p);
        collect_exact(remaining - p, p, max_length, current, out);
        current.pop();
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.parts {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts: std::result::Result<Vec<u32>, _> =
            s.split(',').map(|t| t.trim().parse::<u32>()).collect();
        let parts = parts.map_err(|_| Error::PartitionParse(s.to_string()))?;
        Partition::new(&parts).map_err(|_| Error::PartitionParse(s.to_string()))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}
