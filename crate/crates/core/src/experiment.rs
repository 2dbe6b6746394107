//! Trend tables: exact desk-scale counts next to the asymptotic curves they
//! are compared against, one row per word length.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use crate::codes::{greedy_code, unique_scs_census, unique_scs_reference, vt_sizes, GreedyOrder};
use crate::error::{Error, Result};
use crate::graph::{
    good_triple_census, triangle_reference, triple_reference, triple_reference_alt, DeletionGraph,
};
use crate::limits::Limits;
use crate::report::ExperimentRow;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrendKind {
    Triangles,
    GoodTriples,
    UniqueScs,
    CodeSizes,
}

impl FromStr for TrendKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "triangles" => Ok(TrendKind::Triangles),
            "good-triples" => Ok(TrendKind::GoodTriples),
            "unique-scs" => Ok(TrendKind::UniqueScs),
            "code-sizes" => Ok(TrendKind::CodeSizes),
            _ => Err(Error::input(format!(
                "unknown experiment '{s}' (triangles, good-triples, unique-scs, code-sizes)"
            ))),
        }
    }
}

impl fmt::Display for TrendKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TrendKind::Triangles => "triangles",
            TrendKind::GoodTriples => "good-triples",
            TrendKind::UniqueScs => "unique-scs",
            TrendKind::CodeSizes => "code-sizes",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrendSpec {
    pub kind: TrendKind,
    pub n_min: usize,
    pub n_max: usize,
    pub k: usize,
    /// Radii for good triples; `(k, k, k)` when absent.
    pub abc: Option<(usize, usize, usize)>,
}

impl TrendSpec {
    pub fn new(kind: TrendKind, n_min: usize, n_max: usize, k: usize) -> Self {
        TrendSpec {
            kind,
            n_min,
            n_max,
            k,
            abc: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n_min < 2 || self.n_min > self.n_max {
            return Err(Error::input(format!(
                "need 2 <= n_min <= n_max, got {}..{}",
                self.n_min, self.n_max
            )));
        }
        if self.k == 0 {
            return Err(Error::input("k must be at least 1"));
        }
        Ok(())
    }

    fn radii(&self) -> (usize, usize, usize) {
        self.abc.unwrap_or((self.k, self.k, self.k))
    }
}

/// Computes one row.
pub fn trend_row(spec: &TrendSpec, n: usize, limits: &Limits) -> Result<ExperimentRow> {
    let k = spec.k;
    Ok(match spec.kind {
        TrendKind::Triangles => {
            let t = DeletionGraph::new(n, k.min(n))?.triangle_census(limits)?;
            ExperimentRow::new(n, k, t, triangle_reference(n, k))
        }
        TrendKind::GoodTriples => {
            let (a, b, c) = spec.radii();
            let g = good_triple_census(n, a, b, c, limits)?;
            let mut row = ExperimentRow::new(n, k, g, triple_reference(n, a, b, c));
            row.extra.insert("a".into(), a as u64);
            row.extra.insert("b".into(), b as u64);
            row.extra.insert("c".into(), c as u64);
            row
        }
        TrendKind::UniqueScs => {
            let r = unique_scs_census(n, k, limits)?;
            let mut row = ExperimentRow::new(n, k, r.count, unique_scs_reference(n, k));
            row.extra.insert("pairs_at_distance_k".into(), r.checked);
            row
        }
        TrendKind::CodeSizes => {
            let vt = *vt_sizes(n, limits)?.iter().max().expect("n >= 1");
            let greedy = greedy_code(n, k, GreedyOrder::Lex, limits)?.len() as u64;
            let mut row = ExperimentRow::new(n, k, greedy, code_ref_upper(n, k));
            row.extra.insert("vt".into(), vt);
            row.extra.insert("greedy".into(), greedy);
            row
        }
    })
}

/// `2^n / n^k`.
fn code_ref_upper(n: usize, k: usize) -> f64 {
    2f64.powi(n as i32) / (n as f64).powi(k as i32)
}

/// `2^n / n^(2k)`.
fn code_ref_lower(n: usize, k: usize) -> f64 {
    2f64.powi(n as i32) / (n as f64).powi(2 * k as i32)
}

/// `2^n log n / n^(2k)`.
fn code_ref_improved(n: usize, k: usize) -> f64 {
    code_ref_lower(n, k) * (n as f64).log2()
}

pub fn experiment_trends(spec: &TrendSpec, limits: &Limits) -> Result<Vec<ExperimentRow>> {
    spec.validate()?;
    (spec.n_min..=spec.n_max)
        .map(|n| trend_row(spec, n, limits))
        .collect()
}

/// CSV header for a kind.
pub fn csv_header(kind: TrendKind) -> &'static str {
    match kind {
        TrendKind::Triangles => "n,k,measured,reference,ratio",
        TrendKind::GoodTriples => "n,a,b,c,measured,reference,ratio,reference_alt,ratio_alt",
        TrendKind::UniqueScs => "n,k,pairs_at_distance_k,measured,reference,ratio",
        TrendKind::CodeSizes => {
            "n,k,vt,greedy,ref_2n_over_n2k,ref_2n_over_nk,ref_2n_logn_over_n2k,vt_at_least_2n_over_n_plus_1"
        }
    }
}

/// One CSV line, no trailing newline.
pub fn csv_line(kind: TrendKind, row: &ExperimentRow) -> String {
    let x = |key: &str| row.extra.get(key).copied().unwrap_or(0);
    let (n, k) = (row.n, row.k);
    match kind {
        TrendKind::Triangles => format!("{n},{k},{},{},{}", row.measured, row.reference, row.ratio),
        TrendKind::GoodTriples => {
            let (a, b, c) = (x("a") as usize, x("b") as usize, x("c") as usize);
            let alt = triple_reference_alt(n, a, b, c);
            format!(
                "{n},{a},{b},{c},{},{},{},{alt},{}",
                row.measured,
                row.reference,
                row.ratio,
                row.measured as f64 / alt
            )
        }
        TrendKind::UniqueScs => format!(
            "{n},{k},{},{},{},{}",
            x("pairs_at_distance_k"),
            row.measured,
            row.reference,
            row.ratio
        ),
        TrendKind::CodeSizes => format!(
            "{n},{k},{},{},{},{},{},{}",
            x("vt"),
            x("greedy"),
            code_ref_lower(n, k),
            code_ref_upper(n, k),
            code_ref_improved(n, k),
            x("vt") * (n as u64 + 1) >= 1u64 << n
        ),
    }
}

pub fn to_csv(kind: TrendKind, rows: &[ExperimentRow]) -> String {
    let mut s = String::from(csv_header(kind));
    s.push('\n');
    for r in rows {
        s.push_str(&csv_line(kind, r));
        s.push('\n');
    }
    s
}

/// Writes the table to `path` row by row. On any failure the partial file
/// is removed.
pub fn write_trends(spec: &TrendSpec, limits: &Limits, path: &Path) -> Result<Vec<ExperimentRow>> {
    spec.validate()?;
    let io = |e: std::io::Error| Error::input(format!("{}: {e}", path.display()));
    let mut file = fs::File::create(path).map_err(io)?;
    let result = (|| {
        writeln!(file, "{}", csv_header(spec.kind)).map_err(io)?;
        let mut rows = Vec::new();
        for n in spec.n_min..=spec.n_max {
            let row = trend_row(spec, n, limits)?;
            writeln!(file, "{}", csv_line(spec.kind, &row)).map_err(io)?;
            rows.push(row);
        }
        file.flush().map_err(io)?;
        Ok(rows)
    })();
    if result.is_err() {
        drop(file);
        let _ = fs::remove_file(path);
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn code_sizes_rows() {
        let spec = TrendSpec::new(TrendKind::CodeSizes, 4, 8, 1);
        let rows = experiment_trends(&spec, &Limits::default()).unwrap();
        assert_eq!(rows.len(), 5);
        let csv = to_csv(spec.kind, &rows);
        assert!(csv.lines().skip(1).all(|l| l.ends_with(",true")));
        assert!(csv.starts_with("n,k,vt,greedy,"));
    }

    #[test]
    fn triangle_rows_match_census() {
        let spec = TrendSpec::new(TrendKind::Triangles, 2, 4, 1);
        let rows = experiment_trends(&spec, &Limits::default()).unwrap();
        assert_eq!(rows[0].measured, 2);
    }

    #[test]
    fn bad_ranges() {
        let l = Limits::default();
        assert!(experiment_trends(&TrendSpec::new(TrendKind::Triangles, 5, 4, 1), &l).is_err());
        assert!(experiment_trends(&TrendSpec::new(TrendKind::Triangles, 4, 5, 0), &l).is_err());
        assert!("spiral".parse::<TrendKind>().is_err());
    }

    #[test]
    fn partial_file_removed_on_guard() {
        let dir = std::env::temp_dir().join(format!("delcode-exp-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("t.csv");
        let tight = Limits {
            max_census_ops: 1e6,
            ..Limits::default()
        };
        let spec = TrendSpec::new(TrendKind::Triangles, 3, 12, 1);
        assert!(matches!(
            write_trends(&spec, &tight, &path),
            Err(Error::Resource(_))
        ));
        assert!(!path.exists());
        let ok = write_trends(
            &TrendSpec::new(TrendKind::Triangles, 3, 5, 1),
            &tight,
            &path,
        )
        .unwrap();
        assert_eq!(
            fs::read_to_string(&path).unwrap().lines().count(),
            ok.len() + 1
        );
        fs::remove_dir_all(&dir).unwrap();
    }
}
