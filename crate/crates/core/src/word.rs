use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::error::{Error, Result};
use crate::period_set::PeriodSet;

/// A finite word over the alphabet `{0, .., alphabet_size - 1}`.
///
/// Symbols render as letters (`0 -> a`, `1 -> b`, ...) when they fit in
/// `a..z`; larger alphabets render as space-separated indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    symbols: Vec<u32>,
    alphabet_size: u32,
}

impl Word {
    pub fn new(symbols: Vec<u32>, alphabet_size: u32) -> Result<Self> {
        if alphabet_size == 0 {
            return Err(Error::SymbolOutOfRange { symbol: 0, alphabet_size });
        }
        if let Some(&symbol) = symbols.iter().find(|&&s| s >= alphabet_size) {
            return Err(Error::SymbolOutOfRange { symbol, alphabet_size });
        }
        Ok(Word { symbols, alphabet_size })
    }

    pub(crate) fn from_symbols_unchecked(symbols: Vec<u32>, alphabet_size: u32) -> Self {
        debug_assert!(symbols.iter().all(|&s| s < alphabet_size));
        Word { symbols, alphabet_size }
    }

    /// The empty word `ε` over the binary alphabet.
    pub fn epsilon() -> Self {
        Word { symbols: Vec::new(), alphabet_size: 2 }
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Number of distinct symbols actually used.
    pub fn distinct_symbols(&self) -> usize {
        let mut seen = self.symbols.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// Does the word have period `p` (shifted copy matches on the overlap)?
    pub fn has_period(&self, p: usize) -> bool {
        has_period(&self.symbols, p)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.symbols.iter().all(|&s| s < 26) {
            let s: String = self.symbols.iter().map(|&s| char::from(b'a' + s as u8)).collect();
            f.write_str(&s)
        } else {
            let parts: Vec<String> = self.symbols.iter().map(u32::to_string).collect();
            f.write_str(&parts.join(" "))
        }
    }
}

/// Parses `a..z` text; the alphabet is the smallest one covering the letters
/// used, and at least binary.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let symbols = s
            .bytes()
            .map(|b| match b {
                b'a'..=b'z' => Ok(u32::from(b - b'a')),
                _ => Err(Error::WordSyntax(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        let alphabet_size = symbols.iter().max().map_or(2, |&m| (m + 1).max(2));
        Ok(Word { symbols, alphabet_size })
    }
}

/// Classical failure function: entry `i` is the length of the longest proper
/// border of `s[0..=i]`.
pub fn border_array<T: PartialEq>(s: &[T]) -> Vec<usize> {
    let mut border = vec![0; s.len()];
    let mut b = 0;
    for i in 1..s.len() {
        while b > 0 && s[i] != s[b] {
            b = border[b - 1];
        }
        if s[i] == s[b] {
            b += 1;
        }
        border[i] = b;
    }
    border
}

/// Periods of `s` in increasing order, read off the border chain of the whole
/// word (each border of length `b` gives the period `len - b`).
pub(crate) fn periods_of<T: PartialEq>(s: &[T]) -> Vec<usize> {
    let n = s.len();
    let border = border_array(s);
    let mut periods = vec![0];
    let mut b = border[n - 1];
    while b > 0 {
        periods.push(n - b);
        b = border[b - 1];
    }
    periods
}

pub(crate) fn has_period<T: PartialEq>(s: &[T], p: usize) -> bool {
    p >= s.len() || s[..s.len() - p] == s[p..]
}

pub fn period_set_of_word(w: &Word) -> Result<PeriodSet> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(PeriodSet::from_sorted_unchecked(w.len(), periods_of(&w.symbols)))
}

/// True iff `w` is not `v^k` for any `k >= 2`.
pub fn is_primitive(w: &Word) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(is_primitive_slice(&w.symbols))
}

pub(crate) fn is_primitive_slice<T: PartialEq>(s: &[T]) -> bool {
    let n = s.len();
    let p = n - border_array(s)[n - 1];
    p == n || !n.is_multiple_of(p)
}

/// Merge failure: the length-`overlap` suffix of `x` differs from the prefix
/// of `y`; `position` is the first mismatching offset inside the overlap.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("overlap of length {overlap} mismatches at overlap position {position}")]
pub struct MergeMismatch {
    pub overlap: usize,
    pub position: usize,
}

/// Merge of `x` and `y` with overlap `j`: `x[..|x|-j] . y`, defined when the
/// last `j` symbols of `x` equal the first `j` symbols of `y`.
pub fn merge(x: &Word, y: &Word, j: usize) -> Result<Word, MergeMismatch> {
    assert!(j <= x.len() && j <= y.len(), "overlap longer than a merged word");
    let tail = &x.symbols[x.len() - j..];
    if let Some(position) = tail.iter().zip(&y.symbols).position(|(a, b)| a != b) {
        return Err(MergeMismatch { overlap: j, position });
    }
    let mut symbols = Vec::with_capacity(x.len() + y.len() - j);
    symbols.extend_from_slice(&x.symbols[..x.len() - j]);
    symbols.extend_from_slice(&y.symbols);
    Ok(Word {
        symbols,
        alphabet_size: x.alphabet_size.max(y.alphabet_size),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn naive_borders(s: &[u32]) -> Vec<usize> {
        (1..s.len()).rev().filter(|&b| s[..b] == s[s.len() - b..]).collect()
    }

    #[test]
    fn border_arrays() {
        assert_eq!(border_array(w("aaaa").symbols()), [0, 1, 2, 3]);
        assert_eq!(border_array(w("ab").symbols()), [0, 0]);
        assert!(border_array::<u32>(&[]).is_empty());

        let word = w("ababaaba");
        let border = border_array(word.symbols());
        let mut chain = Vec::new();
        let mut b = border[7];
        while b > 0 {
            chain.push(b);
            b = border[b - 1];
        }
        assert_eq!(chain, [3, 1]);
        assert_eq!(chain, naive_borders(word.symbols()));
    }

    #[test]
    fn period_sets_of_named_words() {
        let ps = |s: &str| period_set_of_word(&w(s)).unwrap().periods().to_vec();
        assert_eq!(ps("ababaaba"), [0, 5, 7]);
        assert_eq!(ps("abcabcadefgabcabca"), [0, 11, 14, 17]);
        assert_eq!(ps("aaaa"), [0, 1, 2, 3]);
        assert!(matches!(period_set_of_word(&Word::epsilon()), Err(Error::EmptyWord)));
    }

    #[test]
    fn merges() {
        assert_eq!(merge(&w("abaaba"), &w("abaaba"), 3).unwrap(), w("abaabaaba"));
        assert_eq!(
            merge(&w("abab"), &w("abab"), 3),
            Err(MergeMismatch { overlap: 3, position: 0 })
        );
        assert_eq!(merge(&w("ab"), &w("ba"), 0).unwrap(), w("abba"));
    }

    #[test]
    fn primitivity() {
        assert!(!is_primitive(&w("aa")).unwrap());
        assert!(is_primitive(&w("ab")).unwrap());
        assert!(!is_primitive(&w("abaaba")).unwrap());
        assert!(is_primitive(&w("aba")).unwrap());
        assert!(is_primitive(&Word::epsilon()).is_err());
    }

    #[test]
    fn word_codec() {
        let word = w("abcz");
        assert_eq!(word.symbols(), [0, 1, 2, 25]);
        assert_eq!(word.alphabet_size(), 26);
        assert_eq!(word.to_string(), "abcz");
        assert!("aB".parse::<Word>().is_err());
        assert!(Word::new(vec![0, 2], 2).is_err());
        let big = Word::new(vec![0, 30], 31).unwrap();
        assert_eq!(big.to_string(), "0 30");
    }
}
