//! On-disk formats.
//!
//! A `.gamma` file holds one `Γn`:
//!
//! ```text
//! # gamma v1
//! n=<N>
//! count=<kappa>
//! 0
//! 0,5,7
//! ...
//! ```
//!
//! one period set per line, periods ascending and comma-joined, LF endings,
//! sets in canonical order. Stats are written as CSV with a `basic_period`
//! section, a blank line, then a `weight` section.

use std::fs::{self, File};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::gamma::{GammaSet, GammaStats};
use crate::period_set::PeriodSet;

pub const GAMMA_MAGIC: &str = "# gamma v1";

/// File name used for `Γn` inside an output directory.
pub fn gamma_file_name(n: usize) -> String {
    format!("{n}.gamma")
}

/// Parses a comma-separated list of integers (no ordering requirements).
pub fn parse_list(s: &str) -> std::result::Result<Vec<usize>, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| format!("bad period {t:?}: {e}")))
        .collect()
}

pub fn write_gamma<W: Write>(mut out: W, g: &GammaSet) -> io::Result<()> {
    writeln!(out, "{GAMMA_MAGIC}")?;
    writeln!(out, "n={}", g.n)?;
    writeln!(out, "count={}", g.kappa())?;
    for set in &g.sets {
        writeln!(out, "{set}")?;
    }
    out.flush()
}

pub fn render_gamma(g: &GammaSet) -> String {
    let mut buf = Vec::new();
    write_gamma(&mut buf, g).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("gamma text is ASCII")
}

/// Streaming reader over a `.gamma` file.
///
/// Each line is checked for syntax (integers, strictly increasing, starting
/// at 0, below `n`). With `strict` set, canonical order and the declared count
/// are enforced too; otherwise they are left to the caller.
pub struct GammaReader<R> {
    lines: io::Lines<R>,
    path: PathBuf,
    n: usize,
    count: usize,
    line_no: usize,
    read: usize,
    strict: bool,
    last: Option<PeriodSet>,
}

impl GammaReader<BufReader<File>> {
    pub fn open(path: impl AsRef<Path>, strict: bool) -> Result<Self> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        GammaReader::new(BufReader::new(file), path, strict)
    }
}

impl<R: BufRead> GammaReader<R> {
    pub fn new(reader: R, path: impl Into<PathBuf>, strict: bool) -> Result<Self> {
        let mut r = GammaReader {
            lines: reader.lines(),
            path: path.into(),
            n: 0,
            count: 0,
            line_no: 0,
            read: 0,
            strict,
            last: None,
        };
        let magic = r.next_line()?.unwrap_or_default();
        if magic != GAMMA_MAGIC {
            return Err(r.error(format!("expected header {GAMMA_MAGIC:?}, found {magic:?}")));
        }
        r.n = r.header_field("n")?;
        if r.n == 0 {
            return Err(r.error("length must be positive".into()));
        }
        r.count = r.header_field("count")?;
        Ok(r)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Count declared in the header.
    pub fn declared_count(&self) -> usize {
        self.count
    }

    /// Line number of the most recently returned set.
    pub fn line(&self) -> usize {
        self.line_no
    }

    fn error(&self, msg: String) -> Error {
        Error::Parse { path: self.path.clone(), line: self.line_no, msg }
    }

    fn next_line(&mut self) -> Result<Option<String>> {
        match self.lines.next() {
            None => Ok(None),
            Some(Err(e)) => Err(Error::io(&self.path, e)),
            Some(Ok(l)) => {
                self.line_no += 1;
                Ok(Some(l))
            }
        }
    }

    fn header_field(&mut self, key: &str) -> Result<usize> {
        let line = self.next_line()?.unwrap_or_default();
        line.strip_prefix(key)
            .and_then(|rest| rest.strip_prefix('='))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| self.error(format!("expected {key}=<integer>, found {line:?}")))
    }

    fn parse_set(&self, line: &str) -> Result<PeriodSet> {
        if line.is_empty() || !line.bytes().all(|b| b.is_ascii_digit() || b == b',') {
            return Err(self.error(format!("malformed line {line:?}")));
        }
        let periods = parse_list(line).map_err(|m| self.error(m))?;
        PeriodSet::new(self.n, periods).map_err(|e| self.error(e.to_string()))
    }
}

impl<R: BufRead> Iterator for GammaReader<R> {
    type Item = Result<PeriodSet>;

    fn next(&mut self) -> Option<Self::Item> {
        let line = match self.next_line() {
            Err(e) => return Some(Err(e)),
            Ok(None) => {
                if self.strict && self.read != self.count {
                    let msg = format!("header declares {} sets, found {}", self.count, self.read);
                    self.strict = false;
                    return Some(Err(self.error(msg)));
                }
                return None;
            }
            Ok(Some(l)) => l,
        };
        let set = match self.parse_set(&line) {
            Ok(s) => s,
            Err(e) => return Some(Err(e)),
        };
        self.read += 1;
        if self.strict {
            if let Some(last) = &self.last {
                if *last >= set {
                    return Some(Err(self.error(format!("{set} out of canonical order"))));
                }
            }
            self.last = Some(set.clone());
        }
        Some(Ok(set))
    }
}

/// Reads a whole `.gamma` file, enforcing order and count.
pub fn read_gamma(path: impl AsRef<Path>) -> Result<GammaSet> {
    let reader = GammaReader::open(path, true)?;
    let n = reader.n();
    let sets = reader.collect::<Result<Vec<_>>>()?;
    Ok(GammaSet { n, sets })
}

/// Writes a `.gamma` file without knowing the count up front: sets are
/// streamed to a side file and the final file is assembled on [`finish`].
///
/// [`finish`]: GammaFileWriter::finish
pub struct GammaFileWriter {
    path: PathBuf,
    body_path: PathBuf,
    body: BufWriter<File>,
    n: usize,
    count: usize,
}

impl GammaFileWriter {
    pub fn create(path: impl Into<PathBuf>, n: usize) -> Result<Self> {
        let path = path.into();
        let body_path = path.with_extension("gamma.body");
        let body = File::create(&body_path).map_err(|e| Error::io(&body_path, e))?;
        Ok(GammaFileWriter { path, body_path, body: BufWriter::new(body), n, count: 0 })
    }

    pub fn push(&mut self, set: &PeriodSet) -> Result<()> {
        debug_assert_eq!(set.n(), self.n);
        writeln!(self.body, "{set}").map_err(|e| Error::io(&self.body_path, e))?;
        self.count += 1;
        Ok(())
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn finish(self) -> Result<PathBuf> {
        let GammaFileWriter { path, body_path, body, n, count } = self;
        body.into_inner().map_err(|e| Error::io(&body_path, e.into_error()))?;

        let tmp = path.with_extension("gamma.tmp");
        let assemble = || -> io::Result<()> {
            let mut out = BufWriter::new(File::create(&tmp)?);
            writeln!(out, "{GAMMA_MAGIC}")?;
            writeln!(out, "n={n}")?;
            writeln!(out, "count={count}")?;
            io::copy(&mut File::open(&body_path)?, &mut out)?;
            out.flush()
        };
        assemble().map_err(|e| Error::io(&tmp, e))?;
        fs::rename(&tmp, &path).map_err(|e| Error::io(&path, e))?;
        fs::remove_file(&body_path).map_err(|e| Error::io(&body_path, e))?;
        Ok(path)
    }
}

pub fn write_stats_csv<W: Write>(mut out: W, stats: &GammaStats) -> io::Result<()> {
    writeln!(out, "basic_period,count")?;
    for (p, c) in &stats.by_basic_period {
        writeln!(out, "{p},{c}")?;
    }
    writeln!(out)?;
    writeln!(out, "weight,count")?;
    for (w, c) in &stats.by_weight {
        writeln!(out, "{w},{c}")?;
    }
    out.flush()
}
