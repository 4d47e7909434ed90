//! Incremental enumeration of `Γn`.
//!
//! Every period set of length `n` is either `P` or `P ∪ {n-1}` for some `P` in
//! `Γ(n-1)`, so `Γn` is obtained by certifying the two candidates of every
//! parent. Parents are independent; work is split into contiguous chunks and
//! results are concatenated in chunk order. Because each parent's candidates
//! are adjacent in canonical order, the output needs no sort and no dedup.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;

use crate::certify::{certify_incremental_pair, certify_set_lothaire, certify_set_rules, CertResult};
use crate::error::{Error, Result};
use crate::format::{gamma_file_name, GammaFileWriter, GammaReader};
use crate::period_set::PeriodSet;
use crate::realize::certify_constructive;

/// Parents processed per parallel batch when streaming from disk.
const CHUNK: usize = 4096;

/// `Γn` for one `n`, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaSet {
    pub n: usize,
    pub sets: Vec<PeriodSet>,
}

impl GammaSet {
    /// `Γ1 = {{0}}`.
    pub fn base() -> Self {
        GammaSet { n: 1, sets: vec![PeriodSet::trivial(1)] }
    }

    /// `κn`.
    pub fn kappa(&self) -> usize {
        self.sets.len()
    }

    pub fn contains(&self, set: &PeriodSet) -> bool {
        self.sets.binary_search(set).is_ok()
    }

    pub fn stats(&self) -> GammaStats {
        compute_stats(self)
    }
}

/// Which certification decides the incremental candidates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Certifier {
    /// Propagation rules on each candidate.
    Rules,
    /// Offset characterization on each candidate.
    Lothaire,
    /// Combined offset check of both candidates at once.
    #[default]
    Pair,
    /// Binary realization with witness re-check.
    Constructive,
}

impl Certifier {
    pub const ALL: [Certifier; 4] =
        [Certifier::Rules, Certifier::Lothaire, Certifier::Pair, Certifier::Constructive];

    /// Certifies `P` and `P ∪ {n-1}` at length `n = parent.n() + 1`.
    pub fn certify_children(self, parent: &PeriodSet) -> (CertResult, CertResult) {
        match self {
            Certifier::Pair => certify_incremental_pair(parent),
            Certifier::Rules | Certifier::Lothaire => {
                let (same, ext) = parent.candidates();
                let check = if self == Certifier::Rules { certify_set_rules } else { certify_set_lothaire };
                (check(&same), check(&ext))
            }
            Certifier::Constructive => {
                let (same, ext) = parent.candidates();
                let check = |c: &PeriodSet| {
                    certify_constructive(c.n(), c.periods())
                        .expect("candidates are well formed")
                        .0
                };
                (check(&same), check(&ext))
            }
        }
    }
}

impl fmt::Display for Certifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Certifier::Rules => "rules",
            Certifier::Lothaire => "lothaire",
            Certifier::Pair => "pair",
            Certifier::Constructive => "constructive",
        })
    }
}

impl FromStr for Certifier {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "rules" => Ok(Certifier::Rules),
            "lothaire" => Ok(Certifier::Lothaire),
            "pair" => Ok(Certifier::Pair),
            "constructive" => Ok(Certifier::Constructive),
            _ => Err(format!("unknown certifier {s:?} (rules|lothaire|pair|constructive)")),
        }
    }
}

/// What became of one parent at the next length.
#[derive(Clone, Debug)]
struct Outcome {
    same: Option<PeriodSet>,
    ext: Option<PeriodSet>,
}

impl Outcome {
    fn of(parent: &PeriodSet, certifier: Certifier) -> Self {
        let (same_ok, ext_ok) = certifier.certify_children(parent);
        let (same, ext) = parent.candidates();
        Outcome {
            same: same_ok.is_valid().then_some(same),
            ext: ext_ok.is_valid().then_some(ext),
        }
    }

    fn dies(&self) -> bool {
        self.same.is_none() && self.ext.is_none()
    }
}

fn outcomes(parents: &[PeriodSet], certifier: Certifier) -> Vec<Outcome> {
    parents.par_iter().map(|p| Outcome::of(p, certifier)).collect()
}

fn check_step(prev: &GammaSet, n: usize) -> Result<()> {
    if n < 2 || prev.n != n - 1 {
        return Err(Error::LengthMismatch { expected: n.saturating_sub(1), found: prev.n });
    }
    Ok(())
}

/// `Γn` from `Γ(n-1)`.
pub fn incremental_gamma(n: usize, prev: &GammaSet, certifier: Certifier) -> Result<GammaSet> {
    Ok(incremental_gamma_with_dying(n, prev, certifier)?.0)
}

/// `Γn` from `Γ(n-1)`, plus the members of `Γ(n-1)` that have no child.
pub fn incremental_gamma_with_dying(
    n: usize,
    prev: &GammaSet,
    certifier: Certifier,
) -> Result<(GammaSet, Vec<PeriodSet>)> {
    check_step(prev, n)?;
    let mut sets = Vec::with_capacity(prev.kappa() * 2);
    let mut dying = Vec::new();
    for (parent, outcome) in prev.sets.iter().zip(outcomes(&prev.sets, certifier)) {
        if outcome.dies() {
            dying.push(parent.clone());
        }
        sets.extend(outcome.same);
        sets.extend(outcome.ext);
    }
    Ok((GammaSet { n, sets }, dying))
}

/// `{P \ {n-1} : P in Γn}`: the members of `Γ(n-1)` that have a child at
/// length `n`. Sets dying at `n` are not recovered.
pub fn project_down(g: &GammaSet) -> Result<GammaSet> {
    if g.n < 2 {
        return Err(Error::LengthMismatch { expected: 2, found: g.n });
    }
    let mut sets: Vec<PeriodSet> = g.sets.iter().filter_map(PeriodSet::project_down).collect();
    sets.sort();
    sets.dedup();
    Ok(GammaSet { n: g.n - 1, sets })
}

/// Distribution of `Γn` by basic period (`κn,p`) and by weight.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GammaStats {
    pub by_basic_period: BTreeMap<usize, u64>,
    pub by_weight: BTreeMap<usize, u64>,
}

impl GammaStats {
    pub fn add(&mut self, set: &PeriodSet) {
        *self.by_basic_period.entry(set.basic_period()).or_default() += 1;
        *self.by_weight.entry(set.weight()).or_default() += 1;
    }
}

pub fn compute_stats(g: &GammaSet) -> GammaStats {
    let mut stats = GammaStats::default();
    g.sets.iter().for_each(|s| stats.add(s));
    stats
}

/// Per-length summary of a streamed enumeration step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepSummary {
    pub n: usize,
    pub kappa: usize,
    pub dying: usize,
    pub path: PathBuf,
}

/// Runs `f` on a pool with `jobs` workers (`0` = the global pool).
pub fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    if jobs == 0 {
        return f();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("failed to build worker pool")
        .install(f)
}

/// Streams `Γ(n-1)` from `prev_path` into `Γn` at `out_path`. Memory use is
/// bounded by one chunk of parents and their children, independent of `κn`.
pub fn extend_file(prev_path: &Path, out_path: &Path, certifier: Certifier) -> Result<StepSummary> {
    let mut reader = GammaReader::open(prev_path, true)?;
    let n = reader.n() + 1;
    let mut writer = GammaFileWriter::create(out_path, n)?;
    let mut dying = 0;
    let mut chunk = Vec::with_capacity(CHUNK);
    loop {
        chunk.clear();
        for set in reader.by_ref().take(CHUNK) {
            chunk.push(set?);
        }
        if chunk.is_empty() {
            break;
        }
        for outcome in outcomes(&chunk, certifier) {
            dying += usize::from(outcome.dies());
            for child in outcome.same.iter().chain(&outcome.ext) {
                writer.push(child)?;
            }
        }
    }
    let kappa = writer.count();
    let path = writer.finish()?;
    Ok(StepSummary { n, kappa, dying, path })
}

/// Highest `n` with an `n.gamma` file in `dir`, if any.
pub fn latest_gamma_file(dir: &Path) -> Result<Option<(usize, PathBuf)>> {
    let entries = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut best: Option<(usize, PathBuf)> = None;
    for entry in entries {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        let n = path
            .file_name()
            .and_then(|f| f.to_str())
            .and_then(|f| f.strip_suffix(".gamma"))
            .and_then(|s| s.parse::<usize>().ok());
        if let Some(n) = n.filter(|&n| n > 0) {
            if best.as_ref().is_none_or(|(b, _)| n > *b) {
                best = Some((n, path));
            }
        }
    }
    Ok(best)
}

/// Writes `n.gamma` files into `out_dir` up to `n_max`.
///
/// Starts from the highest valid file in `from_dir` when given (the file is
/// fully validated first), otherwise from `Γ1`. Returns one summary per file
/// written, in increasing `n`.
pub fn enumerate_range(
    n_max: usize,
    out_dir: &Path,
    from_dir: Option<&Path>,
    certifier: Certifier,
    mut on_step: impl FnMut(&StepSummary),
) -> Result<Vec<StepSummary>> {
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let mut summaries = Vec::new();

    let resume = match from_dir {
        Some(dir) => latest_gamma_file(dir)?,
        None => None,
    };
    let (mut n, mut prev_path) = match resume {
        Some((n, path)) => {
            // full format check before trusting the file
            let g = crate::format::read_gamma(&path)?;
            if g.n != n {
                return Err(Error::LengthMismatch { expected: n, found: g.n });
            }
            (n, path)
        }
        None => {
            let path = out_dir.join(gamma_file_name(1));
            let mut w = GammaFileWriter::create(&path, 1)?;
            w.push(&PeriodSet::trivial(1))?;
            let path = w.finish()?;
            let s = StepSummary { n: 1, kappa: 1, dying: 0, path: path.clone() };
            on_step(&s);
            summaries.push(s);
            (1, path)
        }
    };

    while n < n_max {
        n += 1;
        let out = out_dir.join(gamma_file_name(n));
        let s = extend_file(&prev_path, &out, certifier)?;
        on_step(&s);
        prev_path = s.path.clone();
        summaries.push(s);
    }
    Ok(summaries)
}

/// `Γ1..=Γn_max` in memory.
pub fn gamma_up_to(n_max: usize, certifier: Certifier) -> Vec<GammaSet> {
    let mut layers = vec![GammaSet::base()];
    for n in 2..=n_max {
        let next = incremental_gamma(n, layers.last().unwrap(), certifier).expect("lengths line up");
        layers.push(next);
    }
    layers
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(n: usize, p: &[usize]) -> PeriodSet {
        PeriodSet::new(n, p.to_vec()).unwrap()
    }

    #[test]
    fn first_steps() {
        let g2 = incremental_gamma(2, &GammaSet::base(), Certifier::Pair).unwrap();
        assert_eq!(g2.sets, [ps(2, &[0]), ps(2, &[0, 1])]);
        let g3 = incremental_gamma(3, &g2, Certifier::Rules).unwrap();
        assert_eq!(g3.sets, [ps(3, &[0]), ps(3, &[0, 2]), ps(3, &[0, 1, 2])]);
    }

    #[test]
    fn small_kappas() {
        let kappas: Vec<_> = gamma_up_to(5, Certifier::Pair).iter().map(GammaSet::kappa).collect();
        assert_eq!(kappas, [1, 2, 3, 4, 6]);
    }

    #[test]
    fn wrong_length_is_rejected() {
        let g = GammaSet::base();
        assert!(matches!(
            incremental_gamma(3, &g, Certifier::Pair),
            Err(Error::LengthMismatch { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn dying_sets_named() {
        let layers = gamma_up_to(7, Certifier::Pair);
        let (_, dying) = incremental_gamma_with_dying(8, &layers[6], Certifier::Rules).unwrap();
        assert!(dying.contains(&ps(7, &[0, 4, 6])));
        assert!(!dying.contains(&ps(7, &[0, 3, 6])));
    }

    #[test]
    fn stats_of_gamma3() {
        let g3 = &gamma_up_to(3, Certifier::Pair)[2];
        let stats = compute_stats(g3);
        assert_eq!(stats.by_basic_period, BTreeMap::from([(1, 1), (2, 1), (3, 1)]));
        assert_eq!(stats.by_weight, BTreeMap::from([(1, 1), (2, 1), (3, 1)]));
    }

    #[test]
    fn projection_of_gamma2() {
        let g2 = &gamma_up_to(2, Certifier::Pair)[1];
        assert_eq!(project_down(g2).unwrap(), GammaSet::base());
        let g3 = &gamma_up_to(3, Certifier::Pair)[2];
        let down = project_down(g3).unwrap();
        assert_eq!(down.kappa(), 2);
        assert!(project_down(&GammaSet::base()).is_err());
    }

    #[test]
    fn certifier_names() {
        for c in Certifier::ALL {
            assert_eq!(c.to_string().parse::<Certifier>().unwrap(), c);
        }
        assert!("xi".parse::<Certifier>().is_err());
    }
}
