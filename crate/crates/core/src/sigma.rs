//! The brute-force threshold oracle σ(H, n), closed-form threshold formulas,
//! machine checks of the join constructions and the odd-cycle hypothesis
//! checker.

use std::fmt;
use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::degseq::{enumerate_graphical_sequences, graphical_with_sum, DegreeSequence};
use crate::error::{Error, Result};
use crate::graph::{contains_pattern, for_each_cycle, CycleWitness, PatternGraph, SimpleGraph, MAX_VERTICES};
use crate::switchspace::{enumerate_realizations, is_potentially, may_contain, Potential, SearchBudget};

/// σ(H, n), or a marker that H does not fit on n vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SigmaValue {
    Value(u64),
    Impossible,
}

impl Serialize for SigmaValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Self::Value(v) => s.serialize_u64(*v),
            Self::Impossible => s.serialize_str("impossible"),
        }
    }
}

impl<'de> Deserialize<'de> for SigmaValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(Self::Value(v)),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

impl fmt::Display for SigmaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Value(v) => write!(f, "{v}"),
            Self::Impossible => f.write_str("impossible"),
        }
    }
}

impl std::str::FromStr for SigmaValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "impossible" => Ok(Self::Impossible),
            t => t
                .parse()
                .map(Self::Value)
                .map_err(|_| Error::InvalidInput(format!("bad sigma value {t:?}"))),
        }
    }
}

/// Output of [`sigma_oracle`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaRecord {
    pub pattern: PatternGraph,
    pub n: usize,
    pub sigma: SigmaValue,
    /// A sequence with sum `sigma - 2` that is not potentially H.
    pub witness: Option<DegreeSequence>,
    pub sequences_checked: u64,
    /// Budget-limited decisions among the checked sequences.
    #[serde(rename = "unknown")]
    pub unknown_count: u64,
}

impl SigmaRecord {
    pub fn is_certified(&self) -> bool {
        self.unknown_count == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))
    }
}

#[derive(Serialize, Deserialize)]
struct CsvRow {
    pattern: String,
    n: usize,
    sigma: String,
    witness: String,
    sequences_checked: u64,
    unknown: u64,
}

/// Writes records as CSV with header
/// `pattern,n,sigma,witness,sequences_checked,unknown`; the witness is
/// space-separated and empty when absent.
pub fn records_to_csv(records: &[SigmaRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        let witness = r
            .witness
            .as_ref()
            .map(|s| s.terms().iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
            .unwrap_or_default();
        w.serialize(CsvRow {
            pattern: r.pattern.to_string(),
            n: r.n,
            sigma: r.sigma.to_string(),
            witness,
            sequences_checked: r.sequences_checked,
            unknown: r.unknown_count,
        })
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

pub fn records_from_csv(text: &str) -> Result<Vec<SigmaRecord>> {
    let bad = |e: csv::Error| Error::InvalidInput(e.to_string());
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    let mut out = Vec::new();
    for row in rd.deserialize::<CsvRow>() {
        let row = row.map_err(bad)?;
        let witness = if row.witness.trim().is_empty() {
            None
        } else {
            Some(row.witness.parse()?)
        };
        out.push(SigmaRecord {
            pattern: row.pattern.parse()?,
            n: row.n,
            sigma: row.sigma.parse()?,
            witness,
            sequences_checked: row.sequences_checked,
            unknown_count: row.unknown,
        });
    }
    Ok(out)
}

/// Budget and worker pool for oracle runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleOptions {
    pub budget: SearchBudget,
    /// Worker threads; results do not depend on this.
    pub jobs: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            budget: SearchBudget::default(),
            jobs: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

impl OracleOptions {
    fn pool(&self) -> rayon::ThreadPool {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs.max(1))
            .build()
            .expect("thread pool")
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Answer {
    Yes,
    No,
    Unknown,
}

fn decide(s: &DegreeSequence, h: PatternGraph, budget: SearchBudget) -> Answer {
    match is_potentially(s, h, budget).expect("enumerated sequences are graphical") {
        Potential::Yes(_) => Answer::Yes,
        Potential::No => Answer::No,
        Potential::Unknown => Answer::Unknown,
    }
}

/// σ(H, n): two more than the largest sum of an n-term graphical sequence that
/// is not potentially H. Sums are scanned from the top down and the scan stops
/// at the first level holding a non-potentially-H sequence.
///
/// Sequences are decided in deterministic order (decreasing sum, then reverse
/// lexicographic). `sequences_checked` and `unknown_count` cover exactly the
/// sequences up to and including the witness in that order, so records do not
/// depend on `jobs`.
pub fn sigma_oracle(h: PatternGraph, n: usize, opts: &OracleOptions) -> Result<SigmaRecord> {
    if n == 0 || n > MAX_VERTICES {
        return Err(Error::InvalidInput(format!("n = {n} outside 1..={MAX_VERTICES}")));
    }
    let mut record = SigmaRecord {
        pattern: h,
        n,
        sigma: SigmaValue::Impossible,
        witness: None,
        sequences_checked: 0,
        unknown_count: 0,
    };
    if h.order() > n {
        return Ok(record);
    }
    let pool = opts.pool();
    let chunk = 2 * opts.jobs.max(1);
    let top = (n * (n - 1)) as u64;
    for sum in (0..=top / 2).rev().map(|half| 2 * half) {
        let level: Vec<DegreeSequence> = graphical_with_sum(n, sum).collect();
        for batch in level.chunks(chunk) {
            let answers: Vec<Answer> =
                pool.install(|| batch.par_iter().map(|s| decide(s, h, opts.budget)).collect());
            for (s, a) in batch.iter().zip(answers) {
                record.sequences_checked += 1;
                match a {
                    Answer::Yes => {}
                    Answer::Unknown => record.unknown_count += 1,
                    Answer::No => {
                        record.sigma = SigmaValue::Value(sum + 2);
                        record.witness = Some(s.clone());
                        return Ok(record);
                    }
                }
            }
        }
    }
    record.sigma = SigmaValue::Value(0);
    Ok(record)
}

/// A closed-form threshold together with whether the stated range covers it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaValue {
    pub value: i64,
    pub valid: bool,
}

fn join_sum(m: i64, n: i64) -> i64 {
    m * (2 * n - m - 1)
}

/// σ(C_{2m+1}, n) = m(2n − m − 1) + 2. Valid for m ≥ 3, n ≥ 3m, and for
/// m = 2, n ≥ 5 where it coincides with 4n − 4.
pub fn formula_odd_cycle(m: usize, n: usize) -> FormulaValue {
    let (mi, ni) = (m as i64, n as i64);
    FormulaValue {
        value: join_sum(mi, ni) + 2,
        valid: (m >= 3 && n >= 3 * m) || (m == 2 && n >= 5),
    }
}

/// σ(C_{2m+2}, n) = m(2n − m − 1) + 4. Valid for m ≥ 3, n ≥ 5m − 2, and for
/// m = 2, n ≥ 7 where it coincides with 4n − 2.
pub fn formula_even_cycle(m: usize, n: usize) -> FormulaValue {
    let (mi, ni) = (m as i64, n as i64);
    FormulaValue {
        value: join_sum(mi, ni) + 4,
        valid: (m >= 3 && n + 2 >= 5 * m) || (m == 2 && n >= 7),
    }
}

/// Upper bound on σ(C_{2m+2}, 3m + t): m(2n − m − 1) + 2m + 2 − 2⌊t/2⌋.
pub fn even_cycle_upper_bound(m: usize, t: usize) -> Result<i64> {
    if m < 3 || t > 2 * m - 2 {
        return Err(Error::InvalidInput(format!(
            "need m >= 3 and 0 <= t <= 2m - 2, got m={m}, t={t}"
        )));
    }
    let n = (3 * m + t) as i64;
    let mi = m as i64;
    Ok(join_sum(mi, n) + 2 * mi + 2 - 2 * (t as i64 / 2))
}

/// σ(C_4, n) = 2⌊(3n − 1)/2⌋ for n ≥ 4.
pub fn formula_c4(n: usize) -> FormulaValue {
    let ni = n as i64;
    FormulaValue {
        value: 2 * ((3 * ni - 1) / 2),
        valid: n >= 4,
    }
}

/// (p − 1)(2n − 2) + 2 as a threshold for pK_2.
///
/// Flagged valid only for p = 2, n ≥ 4. For p ≥ 3 the exhaustive oracle
/// disagrees once n > 2p: with matching number p − 1 a graph on n vertices
/// has at most max{C(2p−1, 2), C(p−1, 2) + (p−1)(n−p+1)} edges, so
/// σ(3K_2, 7) = 24 rather than 26.
pub fn formula_matching(p: usize, n: usize) -> FormulaValue {
    let (pi, ni) = (p as i64, n as i64);
    FormulaValue {
        value: (pi - 1) * (2 * ni - 2) + 2,
        valid: p == 2 && n >= 4,
    }
}

/// (k − 2)(2n − k + 1) + 2, the clique lower bound conjectured to be exact.
/// Flagged valid only for k = 3, n ≥ 6.
pub fn formula_clique(k: usize, n: usize) -> FormulaValue {
    let (ki, ni) = (k as i64, n as i64);
    FormulaValue {
        value: (ki - 2) * (2 * ni - ki + 1) + 2,
        valid: k == 3 && n >= 6,
    }
}

/// The closed form matching `h`, if one is known.
pub fn closed_form(h: PatternGraph, n: usize) -> Option<FormulaValue> {
    match h {
        PatternGraph::Cycle(4) => Some(formula_c4(n)),
        PatternGraph::Cycle(6) if n == 6 => Some(FormulaValue { value: 24, valid: true }),
        PatternGraph::Cycle(k) if k >= 5 && k % 2 == 1 => Some(formula_odd_cycle(k / 2, n)),
        PatternGraph::Cycle(k) if k >= 6 => Some(formula_even_cycle(k / 2 - 1, n)),
        PatternGraph::Cycle(3) => Some(formula_clique(3, n)),
        PatternGraph::Clique(k) if k >= 3 => Some(formula_clique(k, n)),
        PatternGraph::Matching(p) => Some(formula_matching(p, n)),
        _ => None,
    }
}

/// Which join construction to certify.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CycleParity {
    /// K_m + complement(K_{n−m}) against C_{2m+1}.
    Odd,
    /// K_m + (complement(K_{n−m−2}) ∪ K_2) against C_{2m+2}.
    Even,
}

impl std::str::FromStr for CycleParity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "odd" => Ok(Self::Odd),
            "even" => Ok(Self::Even),
            _ => Err(Error::InvalidInput(format!("expected odd or even, got {s:?}"))),
        }
    }
}

/// Result of [`verify_lower_bound`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBoundReport {
    pub kind: CycleParity,
    pub m: usize,
    pub n: usize,
    pub target: PatternGraph,
    pub sequence: DegreeSequence,
    pub sequence_sum: u64,
    /// The threshold the construction is meant to witness.
    pub threshold: i64,
    pub realizations: u64,
    /// Realizations containing the target cycle.
    pub containing: u64,
    /// The realization walk finished within budget.
    pub complete: bool,
    pub certified: bool,
}

/// Builds the join construction, walks every realization of its degree
/// sequence and certifies that none contains the target cycle and that the
/// sum is exactly `threshold − 2`.
pub fn verify_lower_bound(
    kind: CycleParity,
    m: usize,
    n: usize,
    budget: SearchBudget,
) -> Result<LowerBoundReport> {
    let (graph, target, threshold) = match kind {
        CycleParity::Odd => {
            if m < 1 || n < 2 * m + 1 {
                return Err(Error::InvalidInput(format!("odd construction needs n >= 2m + 1, got m={m}, n={n}")));
            }
            (SimpleGraph::join_empty(m, n)?, PatternGraph::Cycle(2 * m + 1), formula_odd_cycle(m, n).value)
        }
        CycleParity::Even => {
            if m < 1 || n < 2 * m + 2 {
                return Err(Error::InvalidInput(format!("even construction needs n >= 2m + 2, got m={m}, n={n}")));
            }
            (SimpleGraph::join_k2(m, n)?, PatternGraph::Cycle(2 * m + 2), formula_even_cycle(m, n).value)
        }
    };
    let sequence = graph.degree_sequence();
    let mut realizations = 0u64;
    let mut containing = 0u64;
    let mut complete = true;
    for g in enumerate_realizations(&sequence, budget)? {
        match g {
            Ok(g) => {
                realizations += 1;
                if contains_pattern(&g, target) {
                    containing += 1;
                }
            }
            Err(Error::BudgetExceeded { .. }) => complete = false,
            Err(e) => return Err(e),
        }
    }
    let sequence_sum = sequence.sigma_sum();
    Ok(LowerBoundReport {
        kind,
        m,
        n,
        target,
        certified: complete && containing == 0 && sequence_sum as i64 == threshold - 2,
        sequence,
        sequence_sum,
        threshold,
        realizations,
        containing,
        complete,
    })
}

/// Why the odd-cycle hypotheses fail for a sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HypothesisFailure {
    /// No realization has a (2m+1)-cycle whose outside vertices all have
    /// degree m and are pairwise nonadjacent.
    NoQualifyingCycle,
    /// Some realization contains a (2m+2)-cycle.
    LongerCycle(SimpleGraph),
}

/// Outcome of [`check_longer_cycle_hypotheses`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HypothesisVerdict {
    Holds { realization: SimpleGraph, cycle: CycleWitness },
    Fails(HypothesisFailure),
    Unknown,
}

/// The outside set of a (2m+1)-cycle: every vertex has degree m, none adjacent.
fn qualifies(g: &SimpleGraph, cycle_mask: u32, m: usize) -> bool {
    (0..g.order())
        .filter(|&v| cycle_mask >> v & 1 == 0)
        .all(|v| g.degree(v) == m && g.neighbors(v) & !cycle_mask == 0)
}

/// Decides both hypotheses of the odd-cycle sum bound for `s`:
/// (i) some realization has a C_{2m+1} whose outside vertices all have degree
/// m and are pairwise nonadjacent, read existentially over (realization,
/// cycle) pairs; (ii) no realization contains C_{2m+2}.
pub fn check_longer_cycle_hypotheses(
    s: &DegreeSequence,
    m: usize,
    budget: SearchBudget,
) -> Result<HypothesisVerdict> {
    if m < 3 {
        return Err(Error::Precondition(format!("m = {m} < 3")));
    }
    if !s.is_graphical() {
        return Err(Error::NotGraphical(s.clone()));
    }
    let n = s.len();
    let k = 2 * m + 1;
    let outside_count = n.saturating_sub(k);
    let degree_m = s.terms().iter().filter(|&&d| d as usize == m).count();
    // Cycle vertices need degree >= 2 and outside vertices degree m >= 3.
    if n < k || s.terms().iter().any(|&d| d < 2) || degree_m < outside_count {
        return Ok(HypothesisVerdict::Fails(HypothesisFailure::NoQualifyingCycle));
    }
    let longer = PatternGraph::Cycle(k + 1);
    let check_longer = may_contain(s, longer);
    let mut found: Option<(SimpleGraph, CycleWitness)> = None;
    for g in enumerate_realizations(s, budget)? {
        let g = match g {
            Ok(g) => g,
            Err(Error::BudgetExceeded { .. }) => return Ok(HypothesisVerdict::Unknown),
            Err(e) => return Err(e),
        };
        if check_longer && contains_pattern(&g, longer) {
            return Ok(HypothesisVerdict::Fails(HypothesisFailure::LongerCycle(g)));
        }
        if found.is_none() {
            let _ = for_each_cycle(&g, k, |path| {
                let mask = path.iter().fold(0u32, |acc, &v| acc | 1 << v);
                if qualifies(&g, mask, m) {
                    found = Some((g, CycleWitness::new(path.to_vec()).expect("cycle path")));
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            });
        }
    }
    Ok(match found {
        Some((realization, cycle)) => HypothesisVerdict::Holds { realization, cycle },
        None => HypothesisVerdict::Fails(HypothesisFailure::NoQualifyingCycle),
    })
}

/// Summary of [`longer_cycle_scan`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisScan {
    pub m: usize,
    pub n: usize,
    /// m(2n − m − 1) + 2.
    pub bound: i64,
    pub sequences_examined: u64,
    /// Sequences for which both hypotheses hold.
    pub in_scope: u64,
    pub unknown: u64,
    /// In-scope sequences whose sum exceeds the bound.
    pub violations: Vec<DegreeSequence>,
    /// In-scope sequences, in enumeration order.
    pub in_scope_sequences: Vec<DegreeSequence>,
}

impl HypothesisScan {
    pub fn is_vacuous(&self) -> bool {
        self.in_scope == 0
    }
}

/// Checks the odd-cycle sum bound on every graphical n-term sequence.
pub fn longer_cycle_scan(m: usize, n: usize, opts: &OracleOptions) -> Result<HypothesisScan> {
    if m < 3 {
        return Err(Error::Precondition(format!("m = {m} < 3")));
    }
    if n == 0 || n > MAX_VERTICES {
        return Err(Error::InvalidInput(format!("n = {n} outside 1..={MAX_VERTICES}")));
    }
    let bound = formula_odd_cycle(m, n).value;
    let all: Vec<DegreeSequence> = enumerate_graphical_sequences(n, 0).collect();
    let verdicts: Vec<Result<HypothesisVerdict>> = opts.pool().install(|| {
        all.par_iter()
            .map(|s| check_longer_cycle_hypotheses(s, m, opts.budget))
            .collect()
    });
    let mut scan = HypothesisScan {
        m,
        n,
        bound,
        sequences_examined: all.len() as u64,
        in_scope: 0,
        unknown: 0,
        violations: Vec::new(),
        in_scope_sequences: Vec::new(),
    };
    for (s, v) in all.into_iter().zip(verdicts) {
        match v? {
            HypothesisVerdict::Holds { .. } => {
                scan.in_scope += 1;
                if s.sigma_sum() as i64 > bound {
                    scan.violations.push(s.clone());
                }
                scan.in_scope_sequences.push(s);
            }
            HypothesisVerdict::Unknown => scan.unknown += 1,
            HypothesisVerdict::Fails(_) => {}
        }
    }
    Ok(scan)
}
