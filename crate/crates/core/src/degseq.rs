//! Degree sequences: normalization, the Erdős–Gallai test, Havel–Hakimi
//! realization and enumeration of all graphical sequences of a given length.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

/// A nonincreasing sequence of vertex degrees.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<u32>")]
pub struct DegreeSequence(Vec<u32>);

impl DegreeSequence {
    /// Sorts `raw` nonincreasing. Negative entries and entries `>= raw.len()`
    /// are rejected.
    pub fn normalize(raw: &[i64]) -> Result<Self> {
        let n = raw.len() as i64;
        let mut terms = Vec::with_capacity(raw.len());
        for &d in raw {
            if d < 0 {
                return Err(Error::InvalidInput(format!("negative degree {d}")));
            }
            if d >= n {
                return Err(Error::InvalidInput(format!(
                    "degree {d} exceeds n - 1 = {} for a {n}-term sequence",
                    n - 1
                )));
            }
            terms.push(d as u32);
        }
        terms.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self(terms))
    }

    /// Wraps terms already known to be nonincreasing and bounded by `len - 1`.
    pub(crate) fn from_sorted(terms: Vec<u32>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(terms.iter().all(|&d| (d as usize) < terms.len()));
        Self(terms)
    }

    pub fn terms(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// σ(S): the sum of all terms.
    pub fn sigma_sum(&self) -> u64 {
        self.0.iter().map(|&d| d as u64).sum()
    }

    /// Erdős–Gallai: the sum is even and for every k,
    /// `d_1 + .. + d_k <= k(k-1) + sum_{i>k} min(d_i, k)`.
    pub fn is_graphical(&self) -> bool {
        if !self.sigma_sum().is_multiple_of(2) {
            return false;
        }
        let d = &self.0;
        let n = d.len();
        let mut prefix = 0u64;
        for k in 1..=n {
            prefix += d[k - 1] as u64;
            let k64 = k as u64;
            let tail: u64 = d[k..].iter().map(|&x| (x as u64).min(k64)).sum();
            if prefix > k64 * (k64 - 1) + tail {
                return false;
            }
        }
        true
    }

    /// Builds one realization with the Havel–Hakimi construction. Vertex `i`
    /// receives degree `terms()[i]`.
    pub fn realize(&self) -> Result<SimpleGraph> {
        if !self.is_graphical() {
            return Err(Error::NotGraphical(self.clone()));
        }
        let n = self.len();
        let mut graph = SimpleGraph::new(n)?;
        let mut residual: Vec<(u32, usize)> =
            self.0.iter().enumerate().map(|(v, &d)| (d, v)).collect();
        loop {
            // Largest residual first; ties broken by label for determinism.
            residual.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
            let (d, v) = residual[0];
            if d == 0 {
                break;
            }
            residual[0].0 = 0;
            for slot in residual.iter_mut().skip(1).take(d as usize) {
                if slot.0 == 0 {
                    return Err(Error::NotGraphical(self.clone()));
                }
                slot.0 -= 1;
                graph.insert_edge(v, slot.1);
            }
        }
        Ok(graph)
    }
}

impl TryFrom<Vec<i64>> for DegreeSequence {
    type Error = Error;

    fn try_from(raw: Vec<i64>) -> Result<Self> {
        Self::normalize(&raw)
    }
}

impl From<DegreeSequence> for Vec<u32> {
    fn from(s: DegreeSequence) -> Self {
        s.0
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for DegreeSequence {
    type Err = Error;

    /// Integers separated by commas and/or whitespace; surrounding parentheses
    /// are tolerated.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let raw = trimmed
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| Error::InvalidInput(format!("not an integer: {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::normalize(&raw)
    }
}

/// Parses the sequence text format: one sequence per line, blank lines and
/// `#` comments ignored.
pub fn parse_sequences(text: &str) -> Result<Vec<DegreeSequence>> {
    text.lines()
        .enumerate()
        .filter_map(|(lineno, line)| {
            let content = line.split('#').next().unwrap_or("").trim();
            (!content.is_empty()).then(|| {
                content.parse().map_err(|e: Error| match e {
                    Error::InvalidInput(msg) => {
                        Error::InvalidInput(format!("line {}: {msg}", lineno + 1))
                    }
                    other => other,
                })
            })
        })
        .collect()
}

/// Nonincreasing sequences of exactly `len` terms in `0..=max_part` summing
/// to `sum`, in reverse lexicographic order.
#[derive(Debug, Clone)]
pub struct BoundedPartitions {
    current: Option<Vec<u32>>,
}

impl BoundedPartitions {
    pub fn new(len: usize, max_part: u32, sum: u64) -> Self {
        Self {
            current: greedy_fill(len, max_part, sum),
        }
    }
}

/// Lexicographically largest nonincreasing fill, or `None` if `sum` does not fit.
fn greedy_fill(len: usize, cap: u32, sum: u64) -> Option<Vec<u32>> {
    if sum > len as u64 * cap as u64 {
        return None;
    }
    let mut out = Vec::with_capacity(len);
    let mut left = sum;
    for _ in 0..len {
        let take = left.min(cap as u64);
        out.push(take as u32);
        left -= take;
    }
    Some(out)
}

impl Iterator for BoundedPartitions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.current.take()?;
        let len = out.len();
        let mut suffix: u64 = out.last().map_or(0, |&d| d as u64);
        // Rightmost position that can drop by one while its suffix absorbs the unit.
        for i in (0..len.saturating_sub(1)).rev() {
            let v = out[i];
            if v > 0 {
                let cap = v - 1;
                let slots = (len - 1 - i) as u64;
                if slots * cap as u64 > suffix {
                    let mut next = out[..i].to_vec();
                    next.push(cap);
                    next.extend(greedy_fill(len - 1 - i, cap, suffix + 1).expect("fits"));
                    self.current = Some(next);
                    break;
                }
            }
            suffix += v as u64;
        }
        Some(out)
    }
}

/// Graphical sequences of length `n` with sum exactly `sum`.
pub fn graphical_with_sum(n: usize, sum: u64) -> impl Iterator<Item = DegreeSequence> {
    let cap = n.saturating_sub(1) as u32;
    let parts = if sum.is_multiple_of(2) {
        Some(BoundedPartitions::new(n, cap, sum))
    } else {
        None
    };
    parts
        .into_iter()
        .flatten()
        .map(DegreeSequence::from_sorted)
        .filter(DegreeSequence::is_graphical)
}

/// Every graphical sequence of length `n` with sum `>= min_sum`, in
/// decreasing-sum order and reverse lexicographic order within a sum.
pub fn enumerate_graphical_sequences(
    n: usize,
    min_sum: u64,
) -> impl Iterator<Item = DegreeSequence> {
    let max_sum = (n * n.saturating_sub(1)) as u64;
    let top = max_sum - max_sum % 2;
    let sums: Vec<u64> = (0..=top / 2)
        .rev()
        .map(|h| 2 * h)
        .filter(|&s| s >= min_sum)
        .collect();
    sums.into_iter().flat_map(move |s| graphical_with_sum(n, s))
}
