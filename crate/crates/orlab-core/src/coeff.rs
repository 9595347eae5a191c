//! Weight-space classification and exact coefficient tables.
//!
//! A configuration `(n, k, w1, w2)` selects a space of tangential
//! bidifferential operators built from powers of the ambient Laplacian. The
//! dimension of that space (1, 2, or 3) is governed by membership of the
//! weights in the exceptional sets
//!
//! ```text
//!   input ("I") set:  { -(n-2k)/2 - l : l = 0..k-1 }
//!   output ("O") set: { -(n-2k)/2 + l : l = 0..k-1 }
//! ```
//!
//! where `w1`, `w2` are tested against the input set and `w1+w2` against the
//! output set. Each basis operator is stored as a table of coefficients
//! `a[s,t]` over the simplex `s,t >= 0, s+t <= k`, excluding the multinomial
//! weight `k!/((k-s-t)! s! t!)` which is reinserted at evaluation time. The
//! tables are produced by propagating a seed entry through the two-term
//! tangentiality recursions
//!
//! ```text
//!   (2*w1 + n - 2s - 2) a[s+1,t] = -(2*w1 + 2*w2 + n - 2k - 2s - 2t) a[s,t]
//!   (2*w2 + n - 2t - 2) a[s,t+1] = -(2*w1 + 2*w2 + n - 2k - 2s - 2t) a[s,t]
//! ```
//!
//! and every constructed table is re-checked against both recursions before
//! it is returned. Gamma-function ratios never appear at run time: all of
//! them reduce to finite rising-factorial products because the shifts are
//! integers.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::rational::{format_rational, rat, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoeffError {
    #[error("n must be positive, got {0}")]
    InvalidDimension(u32),
    #[error("classification requires k >= 1 (k = 0 is the trivial scalar case)")]
    TrivialOrder,
    #[error(
        "zero divisor while propagating entry ({s},{t}) with nonzero right-hand side; \
         the support pattern for this case is wrong"
    )]
    ZeroDivisor { s: u32, t: u32 },
    #[error("constructed table for basis index {index} fails the tangentiality recursion")]
    Inconsistent { index: u32 },
}

/// The tuple `(n, k, w1, w2)`: manifold dimension, half the operator order,
/// and the two density weights. `k <= n/2` is required only when the induced
/// operator on the sphere is evaluated, not at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightConfig {
    pub n: u32,
    pub k: u32,
    pub w1: Rational,
    pub w2: Rational,
}

impl WeightConfig {
    pub fn new(n: u32, k: u32, w1: Rational, w2: Rational) -> Self {
        assert!(n >= 1, "manifold dimension must be positive");
        WeightConfig { n, k, w1, w2 }
    }

    /// `(n - 2k)/2` as an exact rational.
    pub fn half_gap(&self) -> Rational {
        Rational::new(
            (i64::from(self.n) - 2 * i64::from(self.k)).into(),
            2.into(),
        )
    }

    /// Index `l` with `w = -(n-2k)/2 - l`, `0 <= l <= k-1`, when `w` lies in
    /// the input exceptional set.
    pub fn input_exceptional_index(&self, w: &Rational) -> Option<u32> {
        let l = -(w.clone() + self.half_gap());
        index_in_range(&l, self.k)
    }

    /// Index `l` with `w1 + w2 = -(n-2k)/2 + l`, `0 <= l <= k-1`, when the
    /// output weight lies in the output exceptional set.
    pub fn output_exceptional_index(&self) -> Option<u32> {
        let l = self.w1.clone() + self.w2.clone() + self.half_gap();
        index_in_range(&l, self.k)
    }

    /// Swaps the two density weights.
    pub fn transposed(&self) -> Self {
        WeightConfig {
            n: self.n,
            k: self.k,
            w1: self.w2.clone(),
            w2: self.w1.clone(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "k": self.k,
            "w1": format_rational(&self.w1),
            "w2": format_rational(&self.w2),
        })
    }
}

fn index_in_range(l: &Rational, k: u32) -> Option<u32> {
    if !l.denom().is_one() || l.is_negative() {
        return None;
    }
    let idx = u32::try_from(l.numer()).ok()?;
    (idx < k).then_some(idx)
}

/// Which combination of exceptional memberships holds, with the side
/// condition resolving the dimension. The first four cases give a
/// one-dimensional operator space, the next three two-dimensional, the last
/// the unique three-dimensional configuration (`n = 2k`, `w1 = w2 = 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    /// At most one of the three memberships holds.
    AtMostOneException,
    /// Both inputs exceptional with deep overlap: `w1 + w2 + n <= k`.
    BothInputsDeep,
    /// First input and output exceptional, `w2 >= k`.
    FirstInputAndOutputLargeSecond,
    /// Second input and output exceptional, `w1 >= k`.
    SecondInputAndOutputLargeFirst,
    /// Both inputs exceptional with shallow overlap: `w1 + w2 + n > k`.
    BothInputsShallow,
    /// First input and output exceptional, `w2 < k`.
    FirstInputAndOutputSmallSecond,
    /// Second input and output exceptional, `w1 < k`.
    SecondInputAndOutputSmallFirst,
    /// All three memberships hold.
    TripleException,
}

impl CaseTag {
    pub fn dimension(self) -> u8 {
        match self {
            CaseTag::AtMostOneException
            | CaseTag::BothInputsDeep
            | CaseTag::FirstInputAndOutputLargeSecond
            | CaseTag::SecondInputAndOutputLargeFirst => 1,
            CaseTag::BothInputsShallow
            | CaseTag::FirstInputAndOutputSmallSecond
            | CaseTag::SecondInputAndOutputSmallFirst => 2,
            CaseTag::TripleException => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::AtMostOneException => "at-most-one-exception",
            CaseTag::BothInputsDeep => "both-inputs-deep",
            CaseTag::FirstInputAndOutputLargeSecond => "first-input-and-output-large-second",
            CaseTag::SecondInputAndOutputLargeFirst => "second-input-and-output-large-first",
            CaseTag::BothInputsShallow => "both-inputs-shallow",
            CaseTag::FirstInputAndOutputSmallSecond => "first-input-and-output-small-second",
            CaseTag::SecondInputAndOutputSmallFirst => "second-input-and-output-small-first",
            CaseTag::TripleException => "triple-exception",
        }
    }
}

/// Outcome of classification: space dimension, the case, and the exceptional
/// indices. `i` records an input-set membership (of `w1` where applicable,
/// otherwise of `w2`); `j` records the second membership for the case — the
/// other input index, or the output index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceClassification {
    pub dimension: u8,
    pub case: CaseTag,
    pub i: Option<u32>,
    pub j: Option<u32>,
}

impl SpaceClassification {
    pub fn to_json(&self) -> Value {
        json!({
            "dimension": self.dimension,
            "case": self.case.as_str(),
            "i": self.i,
            "j": self.j,
        })
    }
}

/// Scale convention carried by a coefficient table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// Seed `a[0,0] = poch(w1+(n-2k)/2, k) * poch(w2+(n-2k)/2, k)`, the
    /// Gamma-ratio normalization of the one-dimensional generic case.
    PaperGamma,
    /// Lexicographically minimal supported entry set to 1.
    CornerOne,
}

impl Normalization {
    pub fn as_str(self) -> &'static str {
        match self {
            Normalization::PaperGamma => "paper-gamma",
            Normalization::CornerOne => "corner-one",
        }
    }
}

/// One basis operator: the map `(s,t) -> a[s,t]` over the index simplex.
/// Entries that are zero are not stored; [`CoeffTable::get`] reads absent
/// in-simplex entries as zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffTable {
    pub config: WeightConfig,
    pub basis_index: u32,
    pub entries: BTreeMap<(u32, u32), Rational>,
    pub normalization: Normalization,
}

impl CoeffTable {
    pub fn get(&self, s: u32, t: u32) -> Rational {
        self.entries
            .get(&(s, t))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn k(&self) -> u32 {
        self.config.k
    }

    /// Returns a copy with `delta` added to the entry at `(s,t)`.
    pub fn perturbed(&self, s: u32, t: u32, delta: &Rational) -> CoeffTable {
        assert!(s + t <= self.config.k);
        let mut out = self.clone();
        let v = out.get(s, t) + delta.clone();
        if v.is_zero() {
            out.entries.remove(&(s, t));
        } else {
            out.entries.insert((s, t), v);
        }
        out
    }

    /// The table with `s` and `t` exchanged, carried by the transposed
    /// configuration.
    pub fn transposed(&self) -> CoeffTable {
        CoeffTable {
            config: self.config.transposed(),
            basis_index: self.basis_index,
            entries: self
                .entries
                .iter()
                .map(|(&(s, t), v)| ((t, s), v.clone()))
                .collect(),
            normalization: self.normalization,
        }
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|(&(s, t), v)| json!([s, t, format_rational(v)]))
            .collect();
        json!({
            "index": self.basis_index,
            "normalization": self.normalization.as_str(),
            "entries": entries,
        })
    }
}

/// Rising factorial `x (x+1) ... (x+m-1)`, with the empty product equal to 1.
pub fn pochhammer(x: &Rational, m: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..m {
        acc *= x.clone() + rat(i64::from(i));
    }
    acc
}

/// `k! / ((k-s-t)! s! t!)`. Requires `s + t <= k`.
pub fn multinomial(k: u32, s: u32, t: u32) -> Rational {
    assert!(s + t <= k, "multinomial index ({s},{t}) outside simplex for k={k}");
    let mut acc = Rational::one();
    // k! / (k-s-t)! = (k-s-t+1) ... k, then divide by s! t!.
    for v in (k - s - t + 1)..=k {
        acc *= rat(i64::from(v));
    }
    for v in 1..=s {
        acc /= rat(i64::from(v));
    }
    for v in 1..=t {
        acc /= rat(i64::from(v));
    }
    acc
}

pub fn binomial(k: u32, s: u32) -> Rational {
    assert!(s <= k);
    multinomial(k, s, 0)
}

/// Assigns the configuration to its case. Total for `k >= 1`: every
/// combination of memberships and side conditions is covered, so an error
/// here would indicate an implementation bug rather than bad input.
pub fn classify(config: &WeightConfig) -> Result<SpaceClassification, CoeffError> {
    if config.n == 0 {
        return Err(CoeffError::InvalidDimension(config.n));
    }
    if config.k == 0 {
        return Err(CoeffError::TrivialOrder);
    }
    let m1 = config.input_exceptional_index(&config.w1);
    let m2 = config.input_exceptional_index(&config.w2);
    let mo = config.output_exceptional_index();
    let kq = rat(i64::from(config.k));

    let cls = match (m1, m2, mo) {
        (Some(i), Some(j), Some(_)) => {
            // Forces n = 2k and w1 = w2 = 0 whenever k <= n/2.
            SpaceClassification {
                dimension: 3,
                case: CaseTag::TripleException,
                i: Some(i),
                j: Some(j),
            }
        }
        (Some(i), Some(j), None) => {
            let deep = config.w1.clone() + config.w2.clone() + rat(i64::from(config.n)) <= kq;
            if deep {
                SpaceClassification {
                    dimension: 1,
                    case: CaseTag::BothInputsDeep,
                    i: Some(i),
                    j: Some(j),
                }
            } else {
                SpaceClassification {
                    dimension: 2,
                    case: CaseTag::BothInputsShallow,
                    i: Some(i),
                    j: Some(j),
                }
            }
        }
        (Some(i), None, Some(j)) => {
            if config.w2 >= kq {
                SpaceClassification {
                    dimension: 1,
                    case: CaseTag::FirstInputAndOutputLargeSecond,
                    i: Some(i),
                    j: Some(j),
                }
            } else {
                SpaceClassification {
                    dimension: 2,
                    case: CaseTag::FirstInputAndOutputSmallSecond,
                    i: Some(i),
                    j: Some(j),
                }
            }
        }
        (None, Some(i), Some(j)) => {
            if config.w1 >= kq {
                SpaceClassification {
                    dimension: 1,
                    case: CaseTag::SecondInputAndOutputLargeFirst,
                    i: Some(i),
                    j: Some(j),
                }
            } else {
                SpaceClassification {
                    dimension: 2,
                    case: CaseTag::SecondInputAndOutputSmallFirst,
                    i: Some(i),
                    j: Some(j),
                }
            }
        }
        (m1, m2, mo) => SpaceClassification {
            dimension: 1,
            case: CaseTag::AtMostOneException,
            i: m1.or(m2),
            j: mo,
        },
    };
    Ok(cls)
}

/// Support pattern of one basis element inside the simplex `s+t <= k`.
#[derive(Debug, Clone, Copy)]
enum Support {
    Full,
    RowsFrom(u32),
    ColsFrom(u32),
    DiagTo(u32),
    Corner(u32, u32),
    RowsFromDiagTo(u32, u32),
    ColsFromDiagTo(u32, u32),
    Single(u32, u32),
}

impl Support {
    fn contains(&self, s: u32, t: u32) -> bool {
        match *self {
            Support::Full => true,
            Support::RowsFrom(s0) => s >= s0,
            Support::ColsFrom(t0) => t >= t0,
            Support::DiagTo(j) => s + t <= j,
            Support::Corner(s0, t0) => s >= s0 && t >= t0,
            Support::RowsFromDiagTo(s0, j) => s >= s0 && s + t <= j,
            Support::ColsFromDiagTo(t0, j) => t >= t0 && s + t <= j,
            Support::Single(s0, t0) => s == s0 && t == t0,
        }
    }

    /// Lexicographically minimal supported position (ordering by `s`, then `t`).
    fn seed(&self) -> (u32, u32) {
        match *self {
            Support::Full | Support::DiagTo(_) => (0, 0),
            Support::RowsFrom(s0) | Support::RowsFromDiagTo(s0, _) => (s0, 0),
            Support::ColsFrom(t0) | Support::ColsFromDiagTo(t0, _) => (0, t0),
            Support::Corner(s0, t0) | Support::Single(s0, t0) => (s0, t0),
        }
    }
}

/// The closed-form coefficient of the one-dimensional generic case:
/// `a[s,t] = poch(z, s+t) poch(alpha, k-s) poch(beta, k-t)` with
/// `z = -w1-w2-(n-2k)/2`, `alpha = w1+(n-2k)/2`, `beta = w2+(n-2k)/2`.
/// This realizes the Gamma-ratio normalization exactly and satisfies both
/// recursions identically in the weights.
pub fn closed_form_entry(config: &WeightConfig, s: u32, t: u32) -> Rational {
    let half_gap = config.half_gap();
    let z = -(config.w1.clone() + config.w2.clone() + half_gap.clone());
    let alpha = config.w1.clone() + half_gap.clone();
    let beta = config.w2.clone() + half_gap;
    pochhammer(&z, s + t) * pochhammer(&alpha, config.k - s) * pochhammer(&beta, config.k - t)
}

fn paper_seed(config: &WeightConfig) -> Rational {
    closed_form_entry(config, 0, 0)
}

/// Builds the basis of the operator space for `config`. The returned list
/// has exactly `classify(config).dimension` tables (a single trivially
/// seeded table for `k = 0`), each of which satisfies [`check_recursion`].
///
/// The construction is sound for `k <= n/2`; outside that range the closing
/// consistency check may reject the support patterns and report an error.
pub fn basis_tables(config: &WeightConfig) -> Result<Vec<CoeffTable>, CoeffError> {
    if config.n == 0 {
        return Err(CoeffError::InvalidDimension(config.n));
    }
    if config.k == 0 {
        let mut entries = BTreeMap::new();
        entries.insert((0, 0), Rational::one());
        return Ok(vec![CoeffTable {
            config: config.clone(),
            basis_index: 1,
            entries,
            normalization: Normalization::PaperGamma,
        }]);
    }
    let k = config.k;
    let m1 = config.input_exceptional_index(&config.w1);
    let m2 = config.input_exceptional_index(&config.w2);
    let mo = config.output_exceptional_index();
    let cls = classify(config)?;

    let plans: Vec<(Support, Normalization)> = match cls.case {
        CaseTag::AtMostOneException => match (m1, m2, mo) {
            (None, None, None) => vec![(Support::Full, Normalization::PaperGamma)],
            (Some(i), None, None) => vec![(Support::RowsFrom(k - i), Normalization::CornerOne)],
            (None, Some(i), None) => vec![(Support::ColsFrom(k - i), Normalization::CornerOne)],
            (None, None, Some(j)) => vec![(Support::DiagTo(j), Normalization::CornerOne)],
            _ => unreachable!("classification picked at-most-one with two memberships"),
        },
        CaseTag::BothInputsDeep => {
            let (i, j) = (m1.unwrap(), m2.unwrap());
            vec![(Support::Corner(k - i, k - j), Normalization::CornerOne)]
        }
        CaseTag::FirstInputAndOutputLargeSecond => {
            let (i, j) = (m1.unwrap(), mo.unwrap());
            vec![(Support::RowsFromDiagTo(k - i, j), Normalization::CornerOne)]
        }
        CaseTag::SecondInputAndOutputLargeFirst => {
            let (i, j) = (m2.unwrap(), mo.unwrap());
            vec![(Support::ColsFromDiagTo(k - i, j), Normalization::CornerOne)]
        }
        CaseTag::BothInputsShallow => {
            let (i, j) = (m1.unwrap(), m2.unwrap());
            vec![
                (Support::RowsFrom(k - i), Normalization::CornerOne),
                (Support::ColsFrom(k - j), Normalization::CornerOne),
            ]
        }
        CaseTag::FirstInputAndOutputSmallSecond => {
            let (i, j) = (m1.unwrap(), mo.unwrap());
            vec![
                (Support::RowsFrom(k - i), Normalization::CornerOne),
                (Support::DiagTo(j), Normalization::CornerOne),
            ]
        }
        CaseTag::SecondInputAndOutputSmallFirst => {
            let (i, j) = (m2.unwrap(), mo.unwrap());
            vec![
                (Support::ColsFrom(k - i), Normalization::CornerOne),
                (Support::DiagTo(j), Normalization::CornerOne),
            ]
        }
        CaseTag::TripleException => vec![
            (Support::Single(0, 0), Normalization::CornerOne),
            (Support::Single(0, k), Normalization::CornerOne),
            (Support::Single(k, 0), Normalization::CornerOne),
        ],
    };

    let mut tables = Vec::with_capacity(plans.len());
    for (index, (support, normalization)) in plans.into_iter().enumerate() {
        let seed_value = match normalization {
            Normalization::PaperGamma => paper_seed(config),
            Normalization::CornerOne => Rational::one(),
        };
        let entries = propagate(config, &support, seed_value)?;
        let table = CoeffTable {
            config: config.clone(),
            basis_index: (index + 1) as u32,
            entries,
            normalization,
        };
        if !check_recursion(&table) {
            return Err(CoeffError::Inconsistent {
                index: table.basis_index,
            });
        }
        tables.push(table);
    }
    Ok(tables)
}

/// Fills the support from its seed, stepping right in `t` and down in `s`.
/// Division happens only by provably nonzero multipliers; a vanishing
/// multiplier against a nonzero right-hand side is reported as an error.
fn propagate(
    config: &WeightConfig,
    support: &Support,
    seed_value: Rational,
) -> Result<BTreeMap<(u32, u32), Rational>, CoeffError> {
    let k = config.k;
    let n = rat(i64::from(config.n));
    let two = rat(2);
    let (s0, t0) = support.seed();
    let mut known: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
    known.insert((s0, t0), seed_value);

    // -(2 w1 + 2 w2 + n - 2k - 2s - 2t), the shared right-hand multiplier.
    let rhs_mult = |s: u32, t: u32| -> Rational {
        -(two.clone() * (config.w1.clone() + config.w2.clone()) + n.clone()
            - rat(2 * i64::from(k))
            - rat(2 * i64::from(s))
            - rat(2 * i64::from(t)))
    };

    for s in 0..=k {
        for t in 0..=(k - s) {
            if (s, t) == (s0, t0) || !support.contains(s, t) {
                continue;
            }
            let mut determined = false;
            // Step in s from (s-1, t), multiplier 2 w1 + n - 2(s-1) - 2.
            if s >= 1 && support.contains(s - 1, t) {
                let prev = known[&(s - 1, t)].clone();
                let lhs = two.clone() * config.w1.clone() + n.clone() - rat(2 * i64::from(s));
                let rhs = rhs_mult(s - 1, t) * prev;
                if !lhs.is_zero() {
                    known.insert((s, t), rhs / lhs);
                    determined = true;
                } else if !rhs.is_zero() {
                    return Err(CoeffError::ZeroDivisor { s, t });
                }
            }
            // Step in t from (s, t-1), multiplier 2 w2 + n - 2(t-1) - 2.
            if !determined && t >= 1 && support.contains(s, t - 1) {
                let prev = known[&(s, t - 1)].clone();
                let lhs = two.clone() * config.w2.clone() + n.clone() - rat(2 * i64::from(t));
                let rhs = rhs_mult(s, t - 1) * prev;
                if !lhs.is_zero() {
                    known.insert((s, t), rhs / lhs);
                    determined = true;
                } else if !rhs.is_zero() {
                    return Err(CoeffError::ZeroDivisor { s, t });
                }
            }
            if !determined {
                // Neither recursion pins this supported position down; the
                // support pattern does not match the configuration.
                return Err(CoeffError::ZeroDivisor { s, t });
            }
        }
    }
    known.retain(|_, v| !v.is_zero());
    Ok(known)
}

/// Exact verification of both tangentiality recursions over the simplex.
/// Absent entries inside the simplex read as zero; a vanishing left
/// multiplier demands a vanishing right-hand side.
pub fn check_recursion(table: &CoeffTable) -> bool {
    check_recursion_first_slot(table) && check_recursion_second_slot(table)
}

/// The `s`-direction recursion alone (tangentiality in the first slot).
pub fn check_recursion_first_slot(table: &CoeffTable) -> bool {
    first_violation(table, true).is_none()
}

/// The `t`-direction recursion alone (tangentiality in the second slot).
pub fn check_recursion_second_slot(table: &CoeffTable) -> bool {
    first_violation(table, false).is_none()
}

/// First `(s, t, lhs - rhs)` violation of the selected recursion, if any.
pub fn first_violation(table: &CoeffTable, s_direction: bool) -> Option<(u32, u32, Rational)> {
    let config = &table.config;
    let k = config.k;
    if k == 0 {
        return None;
    }
    let n = rat(i64::from(config.n));
    let two = rat(2);
    for s in 0..k {
        for t in 0..(k - s) {
            let rhs_mult = -(two.clone() * (config.w1.clone() + config.w2.clone()) + n.clone()
                - rat(2 * i64::from(k))
                - rat(2 * i64::from(s))
                - rat(2 * i64::from(t)));
            let (lhs_mult, target) = if s_direction {
                (
                    two.clone() * config.w1.clone() + n.clone() - rat(2 * i64::from(s)) - two.clone(),
                    table.get(s + 1, t),
                )
            } else {
                (
                    two.clone() * config.w2.clone() + n.clone() - rat(2 * i64::from(t)) - two.clone(),
                    table.get(s, t + 1),
                )
            };
            let residual = lhs_mult * target - rhs_mult * table.get(s, t);
            if !residual.is_zero() {
                return Some((s, t, residual));
            }
        }
    }
    None
}

/// Coefficients `b_s = binom(k,s) poch(l, s) poch(l, k-s)` of the linear
/// operator `u -> sum_s b_s Lap^(k-s)(f Lap^s u)` attached to a fixed scalar
/// `f` of weight `-2l`. For non-positive integer `l` the rising factorials
/// realize the analytic continuation; zeros then mark the degenerate shapes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCoeffTable {
    pub k: u32,
    pub ell: Rational,
    pub entries: Vec<Rational>,
}

pub fn linear_operator_coeffs(k: u32, ell: &Rational) -> LinearCoeffTable {
    let entries = (0..=k)
        .map(|s| binomial(k, s) * pochhammer(ell, s) * pochhammer(ell, k - s))
        .collect();
    LinearCoeffTable {
        k,
        ell: ell.clone(),
        entries,
    }
}

impl LinearCoeffTable {
    /// Lifts the sequence into the bidifferential layout: the `s`-index acts
    /// on the main input (first slot, weight `-(n-2k-2l)/2`), `f` occupies
    /// the undifferentiated second slot (weight `-2l`). In this layout the
    /// entries satisfy the first-slot recursion for every `n`, which is
    /// exactly tangentiality in the main input.
    pub fn as_bidifferential(&self, n: u32) -> CoeffTable {
        let k = self.k;
        let u_weight = -(rat(i64::from(n)) - rat(2 * i64::from(k)) - rat(2) * self.ell.clone())
            / rat(2);
        let config = WeightConfig::new(n, k, u_weight, rat(-2) * self.ell.clone());
        let mut entries = BTreeMap::new();
        for (s, b) in self.entries.iter().enumerate() {
            if !b.is_zero() {
                let a = b.clone() / binomial(k, s as u32);
                entries.insert((s as u32, 0), a);
            }
        }
        CoeffTable {
            config,
            basis_index: 1,
            entries,
            normalization: Normalization::CornerOne,
        }
    }
}

/// Serializes a basis per the wire schema:
/// `{"n", "k", "w1", "w2", "dimension", "basis": [{index, normalization, entries}]}`.
pub fn tables_to_json(config: &WeightConfig, tables: &[CoeffTable]) -> Value {
    json!({
        "n": config.n,
        "k": config.k,
        "w1": format_rational(&config.w1),
        "w2": format_rational(&config.w2),
        "dimension": tables.len(),
        "basis": tables.iter().map(CoeffTable::to_json).collect::<Vec<_>>(),
    })
}
