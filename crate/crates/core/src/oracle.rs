//! Brute-force ground truth: enumerate every word of length `n` and collect
//! period sets. Nothing here relies on the certification theory beyond the
//! observation that renaming symbols preserves period sets, which lets the
//! first symbol be fixed.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::fs;
use std::path::Path;

use rayon::prelude::*;

use crate::certify::certify_set_rules;
use crate::error::{Error, Result};
use crate::format::{read_gamma, render_gamma, GammaReader};
use crate::gamma::GammaSet;
use crate::period_set::PeriodSet;
use crate::realize::binary_realize;
use crate::word::{period_set_of_word, periods_of, Word};

/// Largest length the oracle accepts without `force`.
pub const MAX_ORACLE_N: usize = 28;

/// Words per parallel task.
const BLOCK: u64 = 1 << 14;

fn guard(n: usize, force: bool) -> Result<()> {
    if n == 0 || (n > MAX_ORACLE_N && !force) {
        return Err(Error::GuardExceeded { n, max: MAX_ORACLE_N });
    }
    Ok(())
}

/// Counts period sets over all words `w` with `w[..fixed]` all zero and the
/// rest ranging freely, as a map keyed by period sequence.
fn scan(n: usize, alphabet: u32, fixed: usize) -> HashMap<Vec<usize>, u64> {
    let free = (n - fixed) as u32;
    let total = u64::from(alphabet)
        .checked_pow(free)
        .expect("word space too large");
    let blocks = total.div_ceil(BLOCK);
    (0..blocks)
        .into_par_iter()
        .map(|b| {
            let start = b * BLOCK;
            let end = (start + BLOCK).min(total);
            let mut word = vec![0u32; n];
            // little-endian digits: the last position varies fastest
            let mut x = start;
            for slot in word[fixed..].iter_mut().rev() {
                *slot = (x % u64::from(alphabet)) as u32;
                x /= u64::from(alphabet);
            }
            let mut local: HashMap<Vec<usize>, u64> = HashMap::new();
            for _ in start..end {
                *local.entry(periods_of(&word)).or_default() += 1;
                for slot in word[fixed..].iter_mut().rev() {
                    *slot += 1;
                    if *slot < alphabet {
                        break;
                    }
                    *slot = 0;
                }
            }
            local
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        })
}

fn into_gamma(n: usize, counts: HashMap<Vec<usize>, u64>) -> GammaSet {
    let mut sets: Vec<PeriodSet> =
        counts.into_keys().map(|p| PeriodSet::from_sorted_unchecked(n, p)).collect();
    sets.sort();
    GammaSet { n, sets }
}

/// `Γn` by exhaustive enumeration over an alphabet of the given size, with the
/// first symbol fixed.
pub fn brute_force_gamma(n: usize, alphabet: u32, force: bool) -> Result<GammaSet> {
    guard(n, force)?;
    assert!(alphabet >= 2, "alphabet must have at least two symbols");
    Ok(into_gamma(n, scan(n, alphabet, 1)))
}

/// Same as [`brute_force_gamma`] without fixing the first symbol.
pub fn brute_force_gamma_full(n: usize, alphabet: u32, force: bool) -> Result<GammaSet> {
    guard(n, force)?;
    assert!(alphabet >= 2, "alphabet must have at least two symbols");
    Ok(into_gamma(n, scan(n, alphabet, 0)))
}

/// Number of words sharing each period set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PopulationReport {
    pub n: usize,
    pub alphabet_size: u32,
    pub counts: BTreeMap<PeriodSet, u64>,
}

impl PopulationReport {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }
}

pub fn population_report(n: usize, alphabet: u32, force: bool) -> Result<PopulationReport> {
    guard(n, force)?;
    assert!(alphabet >= 2, "alphabet must have at least two symbols");
    // each word starting with symbol 0 stands for `alphabet` renamed copies
    let counts = scan(n, alphabet, 1)
        .into_iter()
        .map(|(p, c)| (PeriodSet::from_sorted_unchecked(n, p), c * u64::from(alphabet)))
        .collect();
    Ok(PopulationReport { n, alphabet_size: alphabet, counts })
}

pub fn population_count(set: &PeriodSet, alphabet: u32, force: bool) -> Result<u64> {
    let report = population_report(set.n(), alphabet, force)?;
    Ok(report.counts.get(set).copied().unwrap_or(0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    /// Byte-level comparison with the brute-force file.
    Oracle,
    /// Per-line binary realization plus projection into `Γ(n-1)`.
    Witness,
}

impl std::str::FromStr for VerifyMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "oracle" => Ok(VerifyMode::Oracle),
            "witness" => Ok(VerifyMode::Witness),
            _ => Err(format!("unknown verify mode {s:?} (oracle|witness)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub n: usize,
    pub checked: usize,
    pub findings: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn summary(&self) -> String {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        format!("VERIFY {verdict} n={} checked={}", self.n, self.checked)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for finding in &self.findings {
            writeln!(f, "{finding}")?;
        }
        write!(f, "{}", self.summary())
    }
}

/// Verifies a `.gamma` file claimed to hold `Γn`.
///
/// Syntax errors are returned as [`Error::Parse`]; semantic problems become
/// findings. In witness mode `prev`, when given, is the `Γ(n-1)` file used for
/// the projection check.
pub fn verify_gamma_file(path: &Path, n: usize, mode: VerifyMode, prev: Option<&Path>) -> Result<VerifyReport> {
    let mut reader = GammaReader::open(path, false)?;
    let mut findings = Vec::new();
    if reader.n() != n {
        findings.push(format!("header: n={} but expected n={n}", reader.n()));
    }
    let declared = reader.declared_count();
    let mut sets = Vec::new();
    let mut lines = Vec::new();
    for set in reader.by_ref() {
        sets.push(set?);
    }
    // line numbers: sets start on line 4
    lines.extend((0..sets.len()).map(|i| i + 4));
    if declared != sets.len() {
        findings.push(format!("header: count={declared} but file has {} sets", sets.len()));
    }
    for i in 1..sets.len() {
        if sets[i - 1] >= sets[i] {
            findings.push(format!("line {}: {} out of canonical order or duplicated", lines[i], sets[i]));
        }
    }

    match mode {
        VerifyMode::Oracle => {
            let expected = brute_force_gamma(n, 2, false)?;
            let actual = fs::read(path).map_err(|e| Error::io(path, e))?;
            if actual != render_gamma(&expected).as_bytes() {
                let truth: HashSet<&PeriodSet> = expected.sets.iter().collect();
                let seen: HashSet<&PeriodSet> = sets.iter().collect();
                for (set, line) in sets.iter().zip(&lines) {
                    if !truth.contains(set) {
                        let why = certify_set_rules(set);
                        findings.push(format!("line {line}: {set} is not a period set ({why})"));
                    }
                }
                for set in expected.sets.iter().filter(|s| !seen.contains(s)) {
                    findings.push(format!("missing period set {set}"));
                }
                if findings.is_empty() {
                    findings.push("file differs from the canonical rendering".into());
                }
            }
        }
        VerifyMode::Witness => {
            let parents: Option<HashSet<PeriodSet>> = match prev {
                Some(p) => Some(read_gamma(p)?.sets.into_iter().collect()),
                None => None,
            };
            let results: Vec<Option<String>> = sets
                .par_iter()
                .zip(&lines)
                .map(|(set, line)| witness_finding(set, *line, parents.as_ref()))
                .collect();
            findings.extend(results.into_iter().flatten());
        }
    }
    Ok(VerifyReport { n, checked: sets.len(), findings })
}

fn witness_finding(set: &PeriodSet, line: usize, parents: Option<&HashSet<PeriodSet>>) -> Option<String> {
    let realization = binary_realize(set.n(), set.periods()).expect("reader yields well-formed sets");
    if realization.is_epsilon() {
        let why = certify_set_rules(set);
        return Some(format!("line {line}: {set} is not realizable ({why})"));
    }
    let witness: &Word = &realization.word;
    let got = period_set_of_word(witness).expect("witness is nonempty");
    if got != *set {
        return Some(format!("line {line}: witness {witness} realizes {got}, not {set}"));
    }
    if let (Some(parents), Some(down)) = (parents, set.project_down()) {
        if !parents.contains(&down) {
            return Some(format!("line {line}: projection {down} missing from the previous length"));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(n: usize, p: &[usize]) -> PeriodSet {
        PeriodSet::new(n, p.to_vec()).unwrap()
    }

    /// Direct check: `p` is a period iff the shifted copy matches.
    fn naive_periods(w: &[u32]) -> Vec<usize> {
        (0..w.len()).filter(|&p| w[..w.len() - p] == w[p..]).collect()
    }

    #[test]
    fn gamma3_against_naive_checker() {
        let mut naive: Vec<Vec<usize>> = (0..8u32)
            .map(|x| (0..3).map(|i| (x >> (2 - i)) & 1).collect::<Vec<_>>())
            .map(|w| naive_periods(&w))
            .collect();
        naive.sort();
        naive.dedup();
        let g = brute_force_gamma(3, 2, false).unwrap();
        assert_eq!(g.sets, [ps(3, &[0]), ps(3, &[0, 2]), ps(3, &[0, 1, 2])]);
        let mut got: Vec<Vec<usize>> = g.sets.iter().map(|s| s.periods().to_vec()).collect();
        got.sort();
        assert_eq!(got, naive);
    }

    #[test]
    fn small_cases() {
        assert_eq!(brute_force_gamma(1, 2, false).unwrap(), GammaSet::base());
        assert!(brute_force_gamma(8, 2, false).unwrap().contains(&ps(8, &[0, 5, 7])));
        assert!(matches!(brute_force_gamma(29, 2, false), Err(Error::GuardExceeded { .. })));
        assert!(brute_force_gamma(0, 2, true).is_err());
    }

    #[test]
    fn populations() {
        assert_eq!(population_count(&ps(2, &[0, 1]), 2, false).unwrap(), 2);
        assert_eq!(population_count(&ps(2, &[0]), 2, false).unwrap(), 2);
        assert_eq!(population_report(8, 2, false).unwrap().total(), 256);
        assert_eq!(population_report(5, 3, false).unwrap().total(), 243);
    }

    #[test]
    fn fixed_first_symbol_matches_full_scan() {
        for n in 1..=12 {
            assert_eq!(
                brute_force_gamma(n, 2, false).unwrap(),
                brute_force_gamma_full(n, 2, false).unwrap(),
                "n={n}"
            );
        }
    }
}
