//! Membership tests for "is `Q` a period set of length `n`?".
//!
//! Two characterizations are implemented independently:
//!
//! * the propagation rules: `0 ∈ Q`, the forward propagation rule (FPR) and
//!   the backward propagation rule (BPR);
//! * the offset characterization: with `n` appended to the sorted periods and
//!   offsets `d_h = p_h - p_(h-1)`, every `h` with `p_h + d_h <= n` needs
//!   (a) `p_h + d_h` in the set and (b) `d_h` not a proper multiple of `d_(h+1)`.
//!
//! On top of those sit the fast checks used during incremental enumeration:
//! BPR through nested Fine and Wilf conditions, a reduced FPR scan, and the
//! combined certification of both incremental candidates.
//!
//! Every check reports the first violation found in scan order (pairs ordered
//! lexicographically), so diagnostics are deterministic.

use std::fmt;

use crate::period_set::{fw_limit_unchecked, Limit, PeriodSet};

/// Why a candidate set is not a period set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    MissingZero,
    OutOfRange { period: usize },
    /// Pair `(p, q)` forces `missing` forward, but it is absent.
    Fpr { p: usize, q: usize, missing: usize },
    /// Pair `(p, q)` forbids `present` backward, but it is a period.
    Bpr { p: usize, q: usize, present: usize },
    /// In the nested set starting at `start`, the two smallest nonzero periods
    /// `(first, second)` have Fine and Wilf limit `limit <= n - start`.
    NestedFw { start: usize, first: usize, second: usize, limit: usize },
    /// Offset condition (a): `p_h + d_h` should be a period.
    LothaireA { h: usize, missing: usize },
    /// Offset condition (b): `d_h = k * d_(h+1)` with `k > 1`.
    LothaireB { h: usize, d_h: usize, d_next: usize },
    /// Binary realization failed while processing `period`.
    Unrealizable { period: usize },
}

impl Violation {
    pub fn tag(&self) -> &'static str {
        match self {
            Violation::MissingZero => "missing-zero",
            Violation::OutOfRange { .. } => "out-of-range",
            Violation::Fpr { .. } => "fpr",
            Violation::Bpr { .. } | Violation::NestedFw { .. } => "bpr",
            Violation::LothaireA { .. } => "lothaire-a",
            Violation::LothaireB { .. } => "lothaire-b",
            Violation::Unrealizable { .. } => "realization",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag())?;
        match self {
            Violation::MissingZero => Ok(()),
            Violation::OutOfRange { period } => write!(f, " (period {period})"),
            Violation::Fpr { p, q, missing } => write!(f, " (pair {p},{q} forces {missing})"),
            Violation::Bpr { p, q, present } => write!(f, " (pair {p},{q} forbids {present})"),
            Violation::NestedFw { start, first, second, limit } => write!(
                f,
                " (nested set at {start}: FW({first},{second})={limit})"
            ),
            Violation::LothaireA { h, missing } => write!(f, " (h={h}: {missing} missing)"),
            Violation::LothaireB { h, d_h, d_next } => {
                write!(f, " (h={h}: d_h={d_h} is {}·{d_next})", d_h / d_next)
            }
            Violation::Unrealizable { period } => write!(f, " (at period {period})"),
        }
    }
}

/// Outcome of a certification: valid, or the first violation found.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CertResult {
    pub violation: Option<Violation>,
}

impl CertResult {
    pub const VALID: CertResult = CertResult { violation: None };

    pub fn invalid(v: Violation) -> Self {
        CertResult { violation: Some(v) }
    }

    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }
}

impl From<Option<Violation>> for CertResult {
    fn from(violation: Option<Violation>) -> Self {
        CertResult { violation }
    }
}

impl fmt::Display for CertResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => f.write_str("VALID"),
            Some(v) => write!(f, "INVALID {v}"),
        }
    }
}

/// Sorts and deduplicates an arbitrary candidate, then checks that it contains
/// zero and fits in `0..n`.
fn shape(candidate: &[usize], n: usize) -> Result<PeriodSet, Violation> {
    let mut periods = candidate.to_vec();
    periods.sort_unstable();
    periods.dedup();
    if periods.first() != Some(&0) {
        return Err(Violation::MissingZero);
    }
    if let Some(&period) = periods.iter().find(|&&p| p >= n) {
        return Err(Violation::OutOfRange { period });
    }
    Ok(PeriodSet::from_sorted_unchecked(n, periods))
}

/// FPR, evaluated literally over every pair: for `p < q` in the set, every
/// `p + i(q - p) < n` with `i >= 2` must be a period.
pub fn check_fpr(set: &PeriodSet) -> CertResult {
    let (n, periods) = (set.n(), set.periods());
    for (a, &p) in periods.iter().enumerate() {
        for &q in &periods[a + 1..] {
            let d = q - p;
            let mut v = q + d;
            while v < n {
                if !set.contains(v) {
                    return CertResult::invalid(Violation::Fpr { p, q, missing: v });
                }
                v += d;
            }
        }
    }
    CertResult::VALID
}

/// FPR restricted to adjacent pairs `(p, q)` that are leftmost for their
/// offset (`p - (q - p)` is not a period). A pair whose left neighbour at the
/// same offset exists is covered by that neighbour's progression.
pub fn check_fpr_reduced(set: &PeriodSet) -> CertResult {
    let n = set.n();
    for w in set.periods().windows(2) {
        let (p, q) = (w[0], w[1]);
        let d = q - p;
        if p >= d && set.contains(p - d) {
            continue;
        }
        let mut v = q + d;
        while v < n {
            if !set.contains(v) {
                return CertResult::invalid(Violation::Fpr { p, q, missing: v });
            }
            v += d;
        }
    }
    CertResult::VALID
}

/// BPR, evaluated literally: for `p < q < 2p` with `2p - q` not a period, no
/// `p - i(q - p)` is a period for `2 <= i <= min(p/(q-p), (n-p)/(q-p))`.
pub fn check_bpr_direct(set: &PeriodSet) -> CertResult {
    let (n, periods) = (set.n(), set.periods());
    for (a, &p) in periods.iter().enumerate() {
        for &q in &periods[a + 1..] {
            if q >= 2 * p || set.contains(2 * p - q) {
                continue;
            }
            let d = q - p;
            let top = (p / d).min((n - p) / d);
            for i in 2..=top {
                let r = p - i * d;
                if set.contains(r) {
                    return CertResult::invalid(Violation::Bpr { p, q, present: r });
                }
            }
        }
    }
    CertResult::VALID
}

/// BPR through Fine and Wilf: in every nested set, the two smallest nonzero
/// periods must have a limit above the nested length. Linear in the weight.
///
/// Agrees with [`check_bpr_direct`] on sets satisfying the FPR, which is the
/// situation of incremental enumeration.
pub fn check_bpr_via_fw(set: &PeriodSet) -> CertResult {
    let (n, periods) = (set.n(), set.periods());
    for w in periods.windows(3) {
        let start = w[0];
        let (first, second) = (w[1] - start, w[2] - start);
        if let Limit::Finite(limit) = fw_limit_unchecked(first, second) {
            if limit <= n - start {
                return CertResult::invalid(Violation::NestedFw { start, first, second, limit });
            }
        }
    }
    CertResult::VALID
}

/// Rule-based certification of an arbitrary candidate set at length `n`:
/// contains zero, fits in `0..n`, satisfies FPR and BPR.
pub fn certify_rules(candidate: &[usize], n: usize) -> CertResult {
    match shape(candidate, n) {
        Ok(set) => certify_set_rules(&set),
        Err(v) => CertResult::invalid(v),
    }
}

pub(crate) fn certify_set_rules(set: &PeriodSet) -> CertResult {
    let fpr = check_fpr(set);
    if !fpr.is_valid() {
        return fpr;
    }
    check_bpr_direct(set)
}

/// Offset-based certification of an arbitrary candidate set at length `n`.
pub fn certify_lothaire(candidate: &[usize], n: usize) -> CertResult {
    match shape(candidate, n) {
        Ok(set) => certify_set_lothaire(&set),
        Err(v) => CertResult::invalid(v),
    }
}

pub(crate) fn certify_set_lothaire(set: &PeriodSet) -> CertResult {
    let n = set.n();
    let periods = set.periods();
    // p_s = n closes the sequence
    let at = |h: usize| if h < periods.len() { periods[h] } else { n };
    let s = periods.len();
    for h in 1..s {
        let d_h = at(h) - at(h - 1);
        let reach = at(h) + d_h;
        if reach > n {
            continue;
        }
        if reach < n && !set.contains(reach) {
            return CertResult::invalid(Violation::LothaireA { h, missing: reach });
        }
        let d_next = at(h + 1) - at(h);
        if d_h % d_next == 0 && d_h != d_next {
            return CertResult::invalid(Violation::LothaireB { h, d_h, d_next });
        }
    }
    CertResult::VALID
}

/// Certifies both incremental candidates of `prev` (assumed to be a period set
/// of length `n - 1`, unchecked): `P` and `Q = P ∪ {n-1}` at length `n`.
///
/// Only the offset conditions whose status can change between `n - 1` and `n`
/// are evaluated, so the cost is `O(|P|)` for the pair.
pub fn certify_incremental_pair(prev: &PeriodSet) -> (CertResult, CertResult) {
    let n = prev.n() + 1;
    let periods = prev.periods();
    let t = periods.len() - 1;

    // Candidate P: offsets close with p_(t+1) = n.
    let mut same = CertResult::VALID;
    // Candidate Q: offsets close with p_(t+1) = n-1, p_(t+2) = n.
    let mut ext = CertResult::VALID;

    for h in 1..=t {
        let d_h = periods[h] - periods[h - 1];
        let reach = periods[h] + d_h;
        if reach == n - 1 {
            // n-1 is forced, P cannot stay as is
            if same.is_valid() {
                same = CertResult::invalid(Violation::LothaireA { h, missing: n - 1 });
            }
        } else if reach <= n && (reach == n || h == t) {
            let d_next = if h < t { periods[h + 1] - periods[h] } else { n - periods[t] };
            if same.is_valid() && d_h.is_multiple_of(d_next) && d_h != d_next {
                same = CertResult::invalid(Violation::LothaireB { h, d_h, d_next });
            }
        }
        if reach == n {
            let d_next = if h < t { periods[h + 1] - periods[h] } else { n - 1 - periods[t] };
            if ext.is_valid() && d_h.is_multiple_of(d_next) && d_h != d_next {
                ext = CertResult::invalid(Violation::LothaireB { h, d_h, d_next });
            }
        }
    }
    (same, ext)
}
