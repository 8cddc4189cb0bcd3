//! Benchmark harness over a manifest of graphs.
//!
//! Manifest lines read `name path expected_n paper_sep ratio_threshold`;
//! relative paths resolve against the manifest's directory, and blank lines
//! and `#` comments are skipped.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use cbpsep_core::SolveParams;

use crate::{run_solve, CliError};

#[derive(Debug, Clone, PartialEq)]
pub struct ManifestEntry {
    pub name: String,
    pub path: PathBuf,
    pub expected_n: usize,
    pub paper_sep: u64,
    pub ratio_threshold: f64,
}

pub fn parse_manifest(text: &str, base: &Path) -> Result<Vec<ManifestEntry>, CliError> {
    let mut out = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = t.split_whitespace().collect();
        let bad = |what: &str| CliError::Usage(format!("manifest line {}: {what}", no + 1));
        if f.len() != 5 {
            return Err(bad(
                "expected `name path expected_n paper_sep ratio_threshold`",
            ));
        }
        let path = PathBuf::from(f[1]);
        out.push(ManifestEntry {
            name: f[0].to_string(),
            path: if path.is_absolute() {
                path
            } else {
                base.join(path)
            },
            expected_n: f[2].parse().map_err(|_| bad("bad expected_n"))?,
            paper_sep: f[3].parse().map_err(|_| bad("bad paper_sep"))?,
            ratio_threshold: f[4].parse().map_err(|_| bad("bad ratio_threshold"))?,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub name: String,
    pub n: usize,
    pub expected_n: usize,
    /// `2m / (n(n−1))`: share of off-diagonal entries that are nonzero.
    pub sparsity: f64,
    pub obtained: Option<u64>,
    pub paper_sep: u64,
    pub ratio_threshold: f64,
    pub seconds: f64,
    pub error: Option<String>,
}

impl BenchRow {
    pub fn ratio(&self) -> Option<f64> {
        self.obtained
            .map(|w| w as f64 / self.paper_sep.max(1) as f64)
    }

    pub fn passed(&self) -> bool {
        self.error.is_none()
            && self.n == self.expected_n
            && self.ratio().is_some_and(|r| r <= self.ratio_threshold)
    }
}

/// Paths listed in the manifest that do not exist.
pub fn missing_files(entries: &[ManifestEntry]) -> Vec<PathBuf> {
    entries
        .iter()
        .filter(|e| !e.path.is_file())
        .map(|e| e.path.clone())
        .collect()
}

pub fn run_manifest(manifest: &Path, params: &SolveParams) -> Result<Vec<BenchRow>, CliError> {
    let text = std::fs::read_to_string(manifest).map_err(|e| {
        CliError::Usage(format!("cannot read manifest {}: {e}", manifest.display()))
    })?;
    let base = manifest.parent().unwrap_or_else(|| Path::new("."));
    let entries = parse_manifest(&text, base)?;
    let missing = missing_files(&entries);
    if !missing.is_empty() {
        let list: Vec<String> = missing.iter().map(|p| p.display().to_string()).collect();
        return Err(CliError::Usage(format!(
            "missing benchmark files: {}",
            list.join(", ")
        )));
    }
    Ok(entries.iter().map(|e| run_entry(e, params)).collect())
}

pub fn run_entry(entry: &ManifestEntry, params: &SolveParams) -> BenchRow {
    let started = Instant::now();
    let result = run_solve(&entry.path, None, params);
    let seconds = started.elapsed().as_secs_f64();
    let mut row = BenchRow {
        name: entry.name.clone(),
        n: 0,
        expected_n: entry.expected_n,
        sparsity: f64::NAN,
        obtained: None,
        paper_sep: entry.paper_sep,
        ratio_threshold: entry.ratio_threshold,
        seconds,
        error: None,
    };
    match result {
        Ok(report) => {
            row.n = report.n;
            row.sparsity = if report.n > 1 {
                2.0 * report.m as f64 / (report.n as f64 * (report.n as f64 - 1.0))
            } else {
                0.0
            };
            row.obtained = Some(report.separator_weight);
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    row
}

pub fn render_table(rows: &[BenchRow]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<14} {:>8} {:>10} {:>10} {:>9} {:>7} {:>8}  status",
        "problem", "n", "2m/n(n-1)", "obtained", "reference", "ratio", "time(s)"
    );
    for r in rows {
        let obtained = r.obtained.map_or("-".to_string(), |w| w.to_string());
        let ratio = r.ratio().map_or("-".to_string(), |x| format!("{x:.3}"));
        let status = match (&r.error, r.passed()) {
            (Some(e), _) => format!("ERROR {e}"),
            (None, true) => "ok".to_string(),
            (None, false) if r.n != r.expected_n => format!("FAIL n != {}", r.expected_n),
            (None, false) => format!("FAIL ratio > {}", r.ratio_threshold),
        };
        let _ = writeln!(
            s,
            "{:<14} {:>8} {:>10.4} {:>10} {:>9} {:>7} {:>8.2}  {}",
            r.name, r.n, r.sparsity, obtained, r.paper_sep, ratio, r.seconds, status
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_parsing() {
        let text = "# comment\n\nbcspwr09 data/bcspwr09.mtx 1723 8 1.5\nsherman1 /abs/sherman1.mtx 1000 28 1.5\n";
        let e = parse_manifest(text, Path::new("/bench")).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e[0].path, PathBuf::from("/bench/data/bcspwr09.mtx"));
        assert_eq!(e[0].paper_sep, 8);
        assert_eq!(e[1].path, PathBuf::from("/abs/sherman1.mtx"));
        assert_eq!(e[1].expected_n, 1000);
        assert!(parse_manifest("a b c\n", Path::new(".")).is_err());
        assert!(parse_manifest("a b x 1 1.5\n", Path::new(".")).is_err());
        assert!(parse_manifest("", Path::new(".")).unwrap().is_empty());
    }

    #[test]
    fn row_pass_rules() {
        let mut r = BenchRow {
            name: "x".into(),
            n: 10,
            expected_n: 10,
            sparsity: 0.1,
            obtained: Some(12),
            paper_sep: 8,
            ratio_threshold: 1.5,
            seconds: 0.0,
            error: None,
        };
        assert!(r.passed());
        r.obtained = Some(13);
        assert!(!r.passed());
        r.obtained = Some(8);
        r.n = 9;
        assert!(!r.passed());
        assert!(render_table(&[r]).contains("FAIL n != 10"));
    }
}
