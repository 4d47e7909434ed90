//! Constructive certification: build a word whose period set is exactly the
//! candidate, or return `ε` when no such word exists.
//!
//! The construction walks the periods from the largest down. After handling
//! period `P[i]` the current suffix (length `n - P[i]`) realizes the nested
//! set starting at `P[i]`; its basic period is the offset `P[i+1] - P[i]`.
//! Each step either overlaps two copies of the previous suffix (when the new
//! length is at most twice the previous one) or separates them with a short
//! primitive spacer.

use std::fmt;

use crate::certify::{CertResult, Violation};
use crate::error::Result;
use crate::period_set::PeriodSet;
use crate::word::{is_primitive_slice, merge, period_set_of_word, periods_of, MergeMismatch, Word};

const A: u32 = 0;
const B: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case {
    /// Largest period: the suffix has no nonzero period.
    Base,
    /// Two copies of the previous suffix overlap or abut.
    Overlap,
    /// Two copies of the previous suffix separated by new symbols.
    Spacer,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::Base => "base",
            Case::Overlap => "1",
            Case::Spacer => "2",
        })
    }
}

/// Why a step could not be completed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    /// Offsets must not shrink when moving to smaller periods.
    InnerPeriodDrop { inner: usize, previous: usize },
    /// The previous basic period divides the new one, so it would survive.
    MultipleOfPrevious { inner: usize, previous: usize },
    /// The previous suffix lacks the new inner period.
    Mismatch(MergeMismatch),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::InnerPeriodDrop { inner, previous } => {
                write!(f, "inner period {inner} < previous {previous}")
            }
            Failure::MultipleOfPrevious { inner, previous } => {
                write!(f, "previous inner period {previous} divides {inner}")
            }
            Failure::Mismatch(m) => write!(f, "{m}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRow {
    pub period: usize,
    pub length: usize,
    pub inner_period: usize,
    pub case: Case,
    /// Suffix built at this step; `ε` on the failing row.
    pub suffix: Word,
    pub valid: bool,
    pub failure: Option<Failure>,
}

/// One row per processed period, largest period first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RealizationTrace {
    pub rows: Vec<TraceRow>,
}

impl RealizationTrace {
    /// Fixed-width table: period, length, inner period, case, suffix, valid.
    pub fn render(&self) -> String {
        let suffixes: Vec<String> = self
            .rows
            .iter()
            .map(|r| if r.valid { r.suffix.to_string() } else { "-".into() })
            .collect();
        let width = suffixes.iter().map(String::len).max().unwrap_or(0).max("suffix".len());
        let mut out = format!(
            "{:>6}  {:>6}  {:>12}  {:>4}  {:<width$}  {}\n",
            "period", "length", "inner period", "case", "suffix", "valid"
        );
        for (row, suffix) in self.rows.iter().zip(&suffixes) {
            out.push_str(&format!(
                "{:>6}  {:>6}  {:>12}  {:>4}  {:<width$}  {}",
                row.period, row.length, row.inner_period, row.case.to_string(), suffix, row.valid
            ));
            if let Some(failure) = &row.failure {
                out.push_str(&format!("  ({failure})"));
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    /// The witness, or `ε` when the candidate is not a period set.
    pub word: Word,
    pub trace: RealizationTrace,
}

impl Realization {
    pub fn is_epsilon(&self) -> bool {
        self.word.is_empty()
    }
}

/// Source of the symbols the construction introduces.
trait Symbols {
    fn alphabet_size(&self) -> u32;
    /// Suffix realizing `{0}` at length `len`.
    fn aperiodic(&mut self, len: usize) -> Vec<u32>;
    /// `prefix` followed by `m >= 1` new symbols, primitive as a whole.
    fn spacer(&mut self, prefix: &[u32], m: usize) -> Vec<u32>;
}

struct Binary;

impl Symbols for Binary {
    fn alphabet_size(&self) -> u32 {
        2
    }

    fn aperiodic(&mut self, len: usize) -> Vec<u32> {
        let mut s = vec![B; len];
        s[0] = A;
        s
    }

    fn spacer(&mut self, prefix: &[u32], m: usize) -> Vec<u32> {
        let mut s = prefix.to_vec();
        s.resize(prefix.len() + m, A);
        if !is_primitive_slice(&s) {
            *s.last_mut().unwrap() = B;
        }
        // for any binary w, wa or wb is primitive
        assert!(is_primitive_slice(&s), "spacer prefix must be primitive");
        s
    }
}

#[derive(Default)]
struct Fresh {
    next: u32,
}

impl Fresh {
    fn take(&mut self, len: usize) -> impl Iterator<Item = u32> {
        let start = self.next;
        self.next += len as u32;
        start..self.next
    }
}

impl Symbols for Fresh {
    fn alphabet_size(&self) -> u32 {
        self.next.max(1)
    }

    fn aperiodic(&mut self, len: usize) -> Vec<u32> {
        self.take(len).collect()
    }

    fn spacer(&mut self, prefix: &[u32], m: usize) -> Vec<u32> {
        let mut s = prefix.to_vec();
        s.extend(self.take(m));
        s
    }
}

fn has_period_by_borders(s: &[u32], p: usize) -> bool {
    p >= s.len() || periods_of(s).contains(&p)
}

fn run<S: Symbols>(n: usize, candidate: &[usize], symbols: &mut S) -> Result<Realization> {
    let set = PeriodSet::new(n, candidate.to_vec())?;
    let periods = set.periods();
    let k = periods.len();
    let word = |s: Vec<u32>, sym: &S| Word::from_symbols_unchecked(s, sym.alphabet_size());

    let mut rows = Vec::with_capacity(k);
    let mut prev_lg = n - periods[k - 1];
    let mut prev_ip = prev_lg;
    let mut prev = symbols.aperiodic(prev_lg);
    rows.push(TraceRow {
        period: periods[k - 1],
        length: prev_lg,
        inner_period: prev_ip,
        case: Case::Base,
        suffix: word(prev.clone(), symbols),
        valid: true,
        failure: None,
    });

    for i in (0..k - 1).rev() {
        let lg = n - periods[i];
        let ip = periods[i + 1] - periods[i];
        let case = if lg <= 2 * prev_lg { Case::Overlap } else { Case::Spacer };
        let fail = |failure: Failure| TraceRow {
            period: periods[i],
            length: lg,
            inner_period: ip,
            case,
            suffix: Word::epsilon(),
            valid: false,
            failure: Some(failure),
        };

        if ip < prev_ip {
            rows.push(fail(Failure::InnerPeriodDrop { inner: ip, previous: prev_ip }));
            return Ok(Realization { word: Word::epsilon(), trace: RealizationTrace { rows } });
        }

        let suffix = match case {
            Case::Overlap => {
                let ok = ip == prev_ip
                    || (ip % prev_ip != 0 && (ip == prev_lg || has_period_by_borders(&prev, ip)));
                let prev_word = word(prev.clone(), symbols);
                let merged = merge(&prev_word, &prev_word, prev_lg - ip);
                match (ok, merged) {
                    (true, Ok(w)) => w.symbols().to_vec(),
                    (_, Err(m)) => {
                        rows.push(fail(Failure::Mismatch(m)));
                        return Ok(Realization { word: Word::epsilon(), trace: RealizationTrace { rows } });
                    }
                    (false, Ok(_)) => {
                        rows.push(fail(Failure::MultipleOfPrevious { inner: ip, previous: prev_ip }));
                        return Ok(Realization { word: Word::epsilon(), trace: RealizationTrace { rows } });
                    }
                }
            }
            Case::Spacer => {
                let mut s = symbols.spacer(&prev, lg - 2 * prev_lg);
                s.extend_from_slice(&prev);
                s
            }
            Case::Base => unreachable!(),
        };

        rows.push(TraceRow {
            period: periods[i],
            length: lg,
            inner_period: ip,
            case,
            suffix: word(suffix.clone(), symbols),
            valid: true,
            failure: None,
        });
        prev_lg = lg;
        prev_ip = ip;
        prev = suffix;
    }

    Ok(Realization { word: word(prev, symbols), trace: RealizationTrace { rows } })
}

/// Binary realization of `candidate` at length `n`.
///
/// Malformed input (unsorted, missing zero, period `>= n`, `n = 0`) is an
/// error; a well-formed set that is not a period set yields `ε`.
pub fn binary_realize(n: usize, candidate: &[usize]) -> Result<Realization> {
    run(n, candidate, &mut Binary)
}

/// Same construction, but every new symbol is fresh, maximizing the number of
/// distinct symbols. Returns `ε` exactly when [`binary_realize`] does.
pub fn multi_symbol_realize(n: usize, candidate: &[usize]) -> Result<Word> {
    let mut fresh = Fresh::default();
    Ok(run(n, candidate, &mut fresh)?.word)
}

/// Certify by construction: valid iff a binary witness exists. The witness is
/// re-analysed and must realize the candidate exactly.
pub fn certify_constructive(n: usize, candidate: &[usize]) -> Result<(CertResult, Word)> {
    let realization = binary_realize(n, candidate)?;
    if realization.is_epsilon() {
        let period = realization.trace.rows.last().map_or(0, |r| r.period);
        return Ok((CertResult::invalid(Violation::Unrealizable { period }), realization.word));
    }
    let witness = realization.word;
    let got = period_set_of_word(&witness)?;
    assert_eq!(
        got.periods(),
        candidate,
        "witness {witness} does not realize the candidate at length {n}"
    );
    Ok((CertResult::VALID, witness))
}
