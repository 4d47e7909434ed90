//! What happens to a period set as the length grows.
//!
//! A set `P` first occurs at its birth length `max(P) + 1`. At each further
//! length it either stays as it is, gains the new last position as a period,
//! does both, or has no descendant at all. Two limits bound how long `P`
//! survives unchanged: the next extension `e(P)`, the smallest value above
//! `max(P)` that the forward rule eventually forces, and the recursive
//! Fine-Wilf limit `rfw(P)`, the first length at which some nested pair of
//! periods would force a smaller period.

use std::fmt;
use std::io::{BufRead, Write};
use std::path::Path;

use crate::certify::certify_set_rules;
use crate::error::{Error, Result};
use crate::format::GammaReader;
use crate::gamma::{incremental_gamma, Certifier, GammaSet};
use crate::period_set::{fw_limit_unchecked, Limit, PeriodSet};

/// Smallest value `>= birth` forced by the forward rule on adjacent periods.
///
/// Pairs are scanned from the top; once `2 * P[i] < birth` no lower pair can
/// reach the birth length, so the scan stops.
pub fn next_extension(set: &PeriodSet) -> Limit {
    let p = set.periods();
    let birth = set.birth();
    let mut limit = Limit::Infinite;
    for i in (1..p.len()).rev() {
        if 2 * p[i] < birth {
            break;
        }
        let forced = 2 * p[i] - p[i - 1];
        if forced >= birth {
            limit = limit.min(Limit::Finite(forced));
        }
    }
    limit
}

/// First length at which a nested pair of periods breaks the Fine-Wilf
/// condition; `inf` when every period is a multiple of the basic period.
pub fn recursive_fw_limit(set: &PeriodSet) -> Limit {
    let p = set.periods();
    let k = p.len();
    if k <= 2 || p[2..].iter().all(|&x| x % p[1] == 0) {
        return Limit::Infinite;
    }
    if k == 3 {
        return fw_limit_unchecked(p[1], p[2]);
    }
    (0..=k - 3)
        .map(|i| fw_limit_unchecked(p[i + 1] - p[i], p[i + 2] - p[i]).plus(p[i]))
        .min()
        .unwrap_or(Limit::Infinite)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FateRecord {
    pub set: PeriodSet,
    pub birth: usize,
    pub next_extension: Limit,
    pub rfw: Limit,
    /// Last length at which the set is present unchanged.
    pub last_unchanged_length: Limit,
    pub dies_at: Limit,
}

impl FateRecord {
    pub fn of(set: &PeriodSet) -> Self {
        let birth = set.birth();
        let next_extension = next_extension(set);
        let rfw = recursive_fw_limit(set);
        let last_unchanged_length = match next_extension.plus(1).min(rfw) {
            Limit::Finite(v) => Limit::Finite(v - 1),
            Limit::Infinite => Limit::Infinite,
        };
        FateRecord {
            set: set.at_length(birth).expect("birth exceeds max"),
            birth,
            next_extension,
            rfw,
            last_unchanged_length,
            dies_at: rfw,
        }
    }

    /// Builds the record from a raw period list, which must contain 0.
    pub fn from_periods(periods: &[usize]) -> Result<Self> {
        let mut sorted = periods.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidPeriodSet("repeated period".into()));
        }
        let n = sorted.last().map_or(1, |m| m + 1);
        Ok(Self::of(&PeriodSet::new(n, sorted)?))
    }

    /// Whether the set is in `Γn` unchanged according to the two limits.
    pub fn alive_unchanged_at(&self, n: usize) -> bool {
        n >= self.birth && Limit::Finite(n) <= self.last_unchanged_length
    }
}

impl fmt::Display for FateRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "birth={} e={} rfw={} dies_at={}",
            self.birth, self.next_extension, self.rfw, self.dies_at
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Fate {
    /// Only `P` itself is in `Γn`.
    Remains,
    /// Only `P ∪ {n-1}` is in `Γn`.
    Extends,
    Both,
    Dies,
    /// `n - 1` is below the birth length.
    NotYetBorn,
}

impl fmt::Display for Fate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Fate::Remains => "remains",
            Fate::Extends => "extends",
            Fate::Both => "both",
            Fate::Dies => "dies",
            Fate::NotYetBorn => "not-yet-born",
        })
    }
}

/// Membership of `P` and `P ∪ {n-1}` in `Γn`.
pub fn classify_fate(set: &PeriodSet, n: usize) -> Fate {
    if n < 2 || n - 1 < set.birth() {
        return Fate::NotYetBorn;
    }
    let same = set.at_length(n).expect("n exceeds max");
    let mut periods = set.periods().to_vec();
    periods.push(n - 1);
    let ext = PeriodSet::new(n, periods).expect("n - 1 exceeds max");
    match (certify_set_rules(&same).is_valid(), certify_set_rules(&ext).is_valid()) {
        (true, true) => Fate::Both,
        (true, false) => Fate::Remains,
        (false, true) => Fate::Extends,
        (false, false) => Fate::Dies,
    }
}

/// Layers `Γ1..Γn_max`, each parent linked to its children in the next layer.
#[derive(Clone, Debug)]
pub struct ParentalTree {
    layers: Vec<GammaSet>,
    /// `children[n - 1][i]`: indices in layer `n + 1` of the children of set `i` in layer `n`.
    children: Vec<Vec<Vec<usize>>>,
}

impl ParentalTree {
    pub fn n_max(&self) -> usize {
        self.layers.len()
    }

    pub fn layer(&self, n: usize) -> &GammaSet {
        &self.layers[n - 1]
    }

    pub fn layers(&self) -> &[GammaSet] {
        &self.layers
    }

    /// Children of set `i` in layer `n`; empty for the last layer.
    pub fn children(&self, n: usize, i: usize) -> &[usize] {
        self.children.get(n - 1).map_or(&[], |c| c[i].as_slice())
    }

    /// Nodes below the last layer that have no child.
    pub fn dead_ends(&self) -> Vec<(usize, &PeriodSet)> {
        let mut out = Vec::new();
        for (li, kids) in self.children.iter().enumerate() {
            for (i, k) in kids.iter().enumerate() {
                if k.is_empty() {
                    out.push((li + 1, &self.layers[li].sets[i]));
                }
            }
        }
        out
    }

    pub fn write_dot<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "digraph parental_tree {{")?;
        writeln!(out, "  rankdir=TB;")?;
        for (li, layer) in self.layers.iter().enumerate() {
            let n = li + 1;
            writeln!(out, "  subgraph cluster_{n} {{")?;
            writeln!(out, "    label=\"n={n}\";")?;
            for (i, set) in layer.sets.iter().enumerate() {
                let dead = self.children.get(li).is_some_and(|c| c[i].is_empty());
                let extra = if dead { ", peripheries=2" } else { "" };
                writeln!(out, "    n{n}_{i} [label=\"{set}\"{extra}];")?;
            }
            writeln!(out, "  }}")?;
        }
        for (li, kids) in self.children.iter().enumerate() {
            let n = li + 1;
            for (i, k) in kids.iter().enumerate() {
                for j in k {
                    writeln!(out, "  n{n}_{i} -> n{}_{j};", n + 1)?;
                }
            }
        }
        writeln!(out, "}}")?;
        out.flush()
    }

    pub fn to_dot(&self) -> String {
        let mut buf = Vec::new();
        self.write_dot(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("dot text is ASCII")
    }
}

pub fn build_parental_tree(n_max: usize) -> Result<ParentalTree> {
    if n_max == 0 {
        return Err(Error::InvalidPeriodSet("tree needs at least one layer".into()));
    }
    let mut layers = vec![GammaSet::base()];
    let mut children = Vec::new();
    for n in 2..=n_max {
        let prev = layers.last().expect("non-empty");
        let next = incremental_gamma(n, prev, Certifier::default())?;
        // children appear in parent order, so a merge-like walk finds them
        let mut links = Vec::with_capacity(prev.kappa());
        let mut j = 0;
        for parent in &prev.sets {
            let mut kids = Vec::new();
            while j < next.sets.len() && next.sets[j].project_down().as_ref() == Some(parent) {
                kids.push(j);
                j += 1;
            }
            links.push(kids);
        }
        debug_assert_eq!(j, next.kappa());
        children.push(links);
        layers.push(next);
    }
    Ok(ParentalTree { layers, children })
}

pub const FATE_CSV_HEADER: &str = "set,birth,next_extension,rfw,last_unchanged_length,dies_at";

pub fn write_fate_row<W: Write>(mut out: W, r: &FateRecord) -> std::io::Result<()> {
    writeln!(
        out,
        "\"{}\",{},{},{},{},{}",
        r.set, r.birth, r.next_extension, r.rfw, r.last_unchanged_length, r.dies_at
    )
}

/// Streams a `.gamma` file and writes one fate row per set. Returns the
/// number of rows.
pub fn annotate_gamma<R: BufRead, W: Write>(reader: GammaReader<R>, mut out: W) -> Result<usize> {
    let io_err = |e| Error::io("<output>", e);
    writeln!(out, "{FATE_CSV_HEADER}").map_err(io_err)?;
    let mut rows = 0;
    for set in reader {
        write_fate_row(&mut out, &FateRecord::of(&set?)).map_err(io_err)?;
        rows += 1;
    }
    out.flush().map_err(io_err)?;
    Ok(rows)
}

pub fn annotate_gamma_file<W: Write>(path: &Path, out: W) -> Result<usize> {
    annotate_gamma(GammaReader::open(path, true)?, out)
}
