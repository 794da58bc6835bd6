//! Table emission (CSV, with a JSON mirror) and the expectations file the
//! verify command judges ratios against.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use zetalab::{Error, Result};

#[derive(Debug, Clone)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            // fixed 17-significant-digit form: round-trips f64 and is
            // bit-stable across runs
            Cell::Num(v) => format!("{v:.16e}"),
            Cell::Text(s) => s.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.header.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::render).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    /// The JSON mirror carries exactly the CSV cell strings.
    pub fn to_json(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(Cell::render).collect())
            .collect();
        let doc = serde_json::json!({ "header": self.header, "rows": rows });
        let mut s = serde_json::to_string_pretty(&doc).expect("table serializes");
        s.push('\n');
        s
    }

    /// Print to stdout in CSV form regardless of the file format.
    pub fn print(&self) {
        print!("{}", self.to_csv());
    }
}

/// Write a table under out_dir and return the created path.
pub fn write_table(
    table: &Table,
    out_dir: &Path,
    stem: &str,
    format: crate::config::OutputFormat,
) -> Result<PathBuf> {
    std::fs::create_dir_all(out_dir)
        .map_err(|e| Error::Integrity(format!("cannot create {}: {e}", out_dir.display())))?;
    let path = out_dir.join(format!("{stem}.{}", format.ext()));
    let body = match format {
        crate::config::OutputFormat::Csv => table.to_csv(),
        crate::config::OutputFormat::Json => table.to_json(),
    };
    std::fs::write(&path, body)
        .map_err(|e| Error::Integrity(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}

/// One row of the expectations file: a [lo, hi] band for the ratio column
/// of a verify target, keyed on parameter equality.
#[derive(Debug, Clone)]
pub struct Expectation {
    pub target: String,
    pub params: Vec<(String, f64)>,
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone, Default)]
pub struct Expectations {
    entries: Vec<Expectation>,
}

pub const EXPECTATIONS_FORMAT: &str = "zetalab-expectations v1";

impl Expectations {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::Integrity(format!("cannot read expectations {}: {e}", path.display()))
        })?;
        let mut lines = text.lines();
        if lines.next().map(str::trim) != Some(EXPECTATIONS_FORMAT) {
            return Err(Error::Integrity(format!(
                "{}: missing `{EXPECTATIONS_FORMAT}` header",
                path.display()
            )));
        }
        let mut entries = Vec::new();
        for line in lines {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split_whitespace();
            let target = fields
                .next()
                .ok_or_else(|| Error::Integrity("empty expectations row".into()))?
                .to_string();
            let mut params = Vec::new();
            let (mut lo, mut hi) = (None, None);
            for field in fields {
                let (k, v) = field.split_once('=').ok_or_else(|| {
                    Error::Integrity(format!("expectations field `{field}` is not key=value"))
                })?;
                let v: f64 = v.parse().map_err(|_| {
                    Error::Integrity(format!("expectations value `{field}` is not a number"))
                })?;
                match k {
                    "lo" => lo = Some(v),
                    "hi" => hi = Some(v),
                    _ => params.push((k.to_string(), v)),
                }
            }
            let (lo, hi) = match (lo, hi) {
                (Some(lo), Some(hi)) => (lo, hi),
                _ => {
                    return Err(Error::Integrity(format!(
                        "expectations row for {target} lacks lo=/hi="
                    )))
                }
            };
            entries.push(Expectation {
                target,
                params,
                lo,
                hi,
            });
        }
        Ok(Expectations { entries })
    }

    /// Band for the given target and parameters, if one is on file. The
    /// most specific (largest matching key set) entry wins.
    pub fn band(&self, target: &str, params: &[(&str, f64)]) -> Option<(f64, f64)> {
        self.entries
            .iter()
            .filter(|e| {
                e.target == target
                    && e.params.iter().all(|(k, v)| {
                        params
                            .iter()
                            .any(|(pk, pv)| pk == k && (pv - v).abs() <= 1e-9 * v.abs().max(1.0))
                    })
            })
            .max_by_key(|e| e.params.len())
            .map(|e| (e.lo, e.hi))
    }

    /// "yes" / "no" / "n-a" judgment cell for a ratio.
    pub fn judge(&self, target: &str, params: &[(&str, f64)], ratio: f64) -> Cell {
        match self.band(target, params) {
            Some((lo, hi)) => Cell::Text(if ratio >= lo && ratio <= hi {
                "yes".into()
            } else {
                "no".into()
            }),
            None => Cell::Text("n-a".into()),
        }
    }
}
