use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use crate::error::{Error, Result};

/// A length bound that may be unbounded (`+∞`), rendered as `inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Limit {
    Finite(usize),
    Infinite,
}

impl Limit {
    pub fn finite(self) -> Option<usize> {
        match self {
            Limit::Finite(v) => Some(v),
            Limit::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Limit::Infinite)
    }

    /// Adds `k`, keeping `inf` absorbing.
    pub fn plus(self, k: usize) -> Limit {
        match self {
            Limit::Finite(v) => Limit::Finite(v + k),
            Limit::Infinite => Limit::Infinite,
        }
    }

    /// True when the finite value `v` lies strictly below this limit.
    pub fn exceeds(self, v: usize) -> bool {
        Limit::Finite(v) < self
    }
}

impl fmt::Display for Limit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Limit::Finite(v) => write!(f, "{v}"),
            Limit::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Limit {
    type Err = std::num::ParseIntError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s == "inf" {
            Ok(Limit::Infinite)
        } else {
            s.parse().map(Limit::Finite)
        }
    }
}

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Fine and Wilf limit `p + q - gcd(p, q)`: a word of that length (or longer)
/// having both periods also has period `gcd(p, q)`. When one period divides
/// the other the gcd is already one of them and the limit is `inf`.
pub fn fw_limit(p: usize, q: usize) -> Result<Limit> {
    if p == 0 || q == 0 {
        return Err(Error::NonPositivePeriod { p, q });
    }
    Ok(fw_limit_unchecked(p, q))
}

pub(crate) fn fw_limit_unchecked(p: usize, q: usize) -> Limit {
    if p.is_multiple_of(q) || q.is_multiple_of(p) {
        Limit::Infinite
    } else {
        Limit::Finite(p + q - gcd(p, q))
    }
}

/// Membership bitmap; one machine word covers every `n <= 64`.
#[derive(Clone, Debug)]
enum Bits {
    Inline(u64),
    Heap(Box<[u64]>),
}

impl Bits {
    fn build(n: usize, periods: &[usize]) -> Bits {
        if n <= 64 {
            let mut w = 0u64;
            for &p in periods {
                w |= 1 << p;
            }
            Bits::Inline(w)
        } else {
            let mut words = vec![0u64; n.div_ceil(64)].into_boxed_slice();
            for &p in periods {
                words[p / 64] |= 1 << (p % 64);
            }
            Bits::Heap(words)
        }
    }

    #[inline]
    fn contains(&self, i: usize) -> bool {
        match self {
            Bits::Inline(w) => i < 64 && (w >> i) & 1 == 1,
            Bits::Heap(words) => words.get(i / 64).is_some_and(|w| (w >> (i % 64)) & 1 == 1),
        }
    }

    fn words(&self) -> &[u64] {
        match self {
            Bits::Inline(w) => std::slice::from_ref(w),
            Bits::Heap(words) => words,
        }
    }
}

/// The set of periods of some (hypothetical) word of length `n`: a strictly
/// increasing sequence starting with `0`, all values below `n`.
///
/// Construction only checks the shape; whether the set actually belongs to
/// `Γn` is the business of [`crate::certify`].
///
/// Sets are ordered canonically: first by `n`, then lexicographically on the
/// autocorrelation bit string (`'0' < '1'`). That order is preserved by the
/// incremental step `Γ(n-1) -> Γn`, so enumeration output never needs sorting.
#[derive(Clone, Debug)]
pub struct PeriodSet {
    n: usize,
    periods: Vec<usize>,
    bits: Bits,
}

impl PeriodSet {
    pub fn new(n: usize, periods: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPeriodSet("length must be positive".into()));
        }
        if periods.first() != Some(&0) {
            return Err(Error::ZeroNotPeriod);
        }
        if let Some(w) = periods.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPeriodSet(format!(
                "periods not strictly increasing at {},{}",
                w[0], w[1]
            )));
        }
        if let Some(&last) = periods.last().filter(|&&p| p >= n) {
            return Err(Error::InvalidPeriodSet(format!("period {last} not below length {n}")));
        }
        Ok(Self::from_sorted_unchecked(n, periods))
    }

    pub(crate) fn from_sorted_unchecked(n: usize, periods: Vec<usize>) -> Self {
        debug_assert!(periods.first() == Some(&0) && periods.last().is_some_and(|&p| p < n));
        let bits = Bits::build(n, &periods);
        PeriodSet { n, periods, bits }
    }

    /// `{0}` at length `n`.
    pub fn trivial(n: usize) -> Self {
        assert!(n > 0, "length must be positive");
        Self::from_sorted_unchecked(n, vec![0])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn periods(&self) -> &[usize] {
        &self.periods
    }

    /// Cardinality of the set.
    pub fn weight(&self) -> usize {
        self.periods.len()
    }

    #[inline]
    pub fn contains(&self, p: usize) -> bool {
        self.bits.contains(p)
    }

    pub fn max(&self) -> usize {
        *self.periods.last().expect("period sets are never empty")
    }

    /// Smallest nonzero period, or `n` for `{0}`.
    pub fn basic_period(&self) -> usize {
        self.periods.get(1).copied().unwrap_or(self.n)
    }

    /// First length at which this set can occur: `max + 1`.
    pub fn birth(&self) -> usize {
        self.max() + 1
    }

    /// Same periods viewed at another length `n > max`.
    pub fn at_length(&self, n: usize) -> Result<Self> {
        if n <= self.max() {
            return Err(Error::InvalidPeriodSet(format!(
                "period {} not below length {n}",
                self.max()
            )));
        }
        Ok(Self::from_sorted_unchecked(n, self.periods.clone()))
    }

    /// The two incremental candidates at length `n + 1`: this set unchanged and
    /// this set plus the new last position `n`.
    pub fn candidates(&self) -> (PeriodSet, PeriodSet) {
        let n = self.n + 1;
        let same = Self::from_sorted_unchecked(n, self.periods.clone());
        let mut ext = self.periods.clone();
        ext.push(self.n);
        (same, Self::from_sorted_unchecked(n, ext))
    }

    /// The set at length `n - 1` with period `n - 1` dropped. `None` for `n = 1`.
    pub fn project_down(&self) -> Option<PeriodSet> {
        if self.n == 1 {
            return None;
        }
        let mut periods = self.periods.clone();
        if periods.last() == Some(&(self.n - 1)) {
            periods.pop();
        }
        Some(Self::from_sorted_unchecked(self.n - 1, periods))
    }

    /// Nested set starting at period `q`: `{r - q : r in P, r >= q}` at length `n - q`.
    pub fn nested(&self, q: usize) -> Result<PeriodSet> {
        let start = self.periods.binary_search(&q).map_err(|_| Error::NotAPeriod { q })?;
        let periods = self.periods[start..].iter().map(|r| r - q).collect();
        Ok(Self::from_sorted_unchecked(self.n - q, periods))
    }

    pub fn to_autocorrelation(&self) -> Autocorrelation {
        Autocorrelation {
            bits: (0..self.n).map(|i| self.contains(i)).collect(),
        }
    }

    pub fn from_autocorrelation(a: &Autocorrelation) -> Result<Self> {
        a.to_period_set()
    }

    fn cmp_canonical(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| {
            for (a, b) in self.bits.words().iter().zip(other.bits.words()) {
                let diff = a ^ b;
                if diff != 0 {
                    let low = diff & diff.wrapping_neg();
                    return if a & low != 0 { Ordering::Greater } else { Ordering::Less };
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialEq for PeriodSet {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.periods == other.periods
    }
}

impl Eq for PeriodSet {}

impl Hash for PeriodSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.periods.hash(state);
    }
}

impl PartialOrd for PeriodSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PeriodSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_canonical(other)
    }
}

/// Comma-joined periods, e.g. `0,5,7`. The length is not part of this form.
impl fmt::Display for PeriodSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.periods {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

/// Bit-vector form of a period set: bit `i` is set iff `i` is a period.
/// Text form is a `0`/`1` string, leftmost character at position 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Autocorrelation {
    bits: Vec<bool>,
}

impl Autocorrelation {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.first() != Some(&true) {
            return Err(Error::ZeroNotPeriod);
        }
        Ok(Autocorrelation { bits })
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn to_period_set(&self) -> Result<PeriodSet> {
        if self.bits.first() != Some(&true) {
            return Err(Error::ZeroNotPeriod);
        }
        let periods = self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect();
        Ok(PeriodSet::from_sorted_unchecked(self.bits.len(), periods))
    }
}

impl fmt::Display for Autocorrelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl FromStr for Autocorrelation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::AutocorrelationSyntax(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        Autocorrelation::new(bits)
    }
}
