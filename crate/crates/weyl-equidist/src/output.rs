//! CSV and JSON files for equidistribution runs, written atomically.

use std::io::Write;
use std::path::{Path, PathBuf};

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;
use tempfile::NamedTempFile;
use weyl_equidist_core::{CharElement, DualCharacter, EquidistReport};

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

pub const S_VALUES_CSV: &str = "s_values.csv";
pub const SUMMARY_CSV: &str = "summary.csv";
pub const S_VALUES_JSON: &str = "s_values.json";
pub const SUMMARY_JSON: &str = "summary.json";

fn float(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Column label of a character, e.g. `chi_1` or `chi_1_0`.
pub fn character_label(chi: &DualCharacter) -> String {
    let parts: Vec<String> = chi.exponents().iter().map(|k| k.to_string()).collect();
    format!("chi_{}", parts.join("_"))
}

fn dev(s: &BigRational, h_order: usize) -> BigRational {
    (s - BigRational::new(1.into(), h_order.into())).abs()
}

pub fn s_values_csv(rep: &EquidistReport) -> CliResult<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::Parse(e.to_string());
    w.write_record(["m", "h_index", "S_num", "S_den", "dev_from_uniform_float"])
        .map_err(csv_err)?;
    for row in &rep.rows {
        for (h, s) in row.s_values.iter().enumerate() {
            w.write_record([
                row.m.to_string(),
                h.to_string(),
                s.numer().to_string(),
                s.denom().to_string(),
                float(&dev(s, rep.h_order)).to_string(),
            ])
            .map_err(csv_err)?;
        }
    }
    w.into_inner().map_err(|e| CliError::Parse(e.to_string()))
}

pub fn summary_csv(rep: &EquidistReport) -> CliResult<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::Parse(e.to_string());
    let mut header = vec![
        "m".to_string(),
        "dim".into(),
        "max_pairwise_dev_float".into(),
    ];
    header.extend(rep.characters.iter().map(character_label));
    w.write_record(&header).map_err(csv_err)?;
    for row in &rep.rows {
        let mut rec = vec![
            row.m.to_string(),
            row.dim.to_string(),
            float(&row.max_pairwise_dev).to_string(),
        ];
        rec.extend(row.chi_ratios.iter().map(|x| x.to_string()));
        w.write_record(&rec).map_err(csv_err)?;
    }
    w.into_inner().map_err(|e| CliError::Parse(e.to_string()))
}

#[derive(Serialize)]
struct Exact {
    num: String,
    den: String,
    float: f64,
}

impl From<&BigRational> for Exact {
    fn from(q: &BigRational) -> Self {
        Exact {
            num: q.numer().to_string(),
            den: q.denom().to_string(),
            float: float(q),
        }
    }
}

#[derive(Serialize)]
struct SValueRow {
    m: u32,
    h_index: usize,
    s: Exact,
    dev_from_uniform: Exact,
}

#[derive(Serialize)]
struct SValuesDoc<'a> {
    scenario: &'a str,
    h_order: usize,
    rows: Vec<SValueRow>,
}

#[derive(Serialize)]
struct SummaryRow {
    m: u32,
    dim: String,
    max_pairwise_dev: Exact,
    dev_from_uniform: Exact,
    chi_abs: Vec<f64>,
    chi_ratios: Vec<f64>,
}

#[derive(Serialize)]
struct SummaryDoc<'a> {
    scenario: &'a str,
    h_order: usize,
    characters: Vec<String>,
    rows: Vec<SummaryRow>,
}

fn to_json<T: Serialize>(v: &T) -> CliResult<Vec<u8>> {
    let mut out = serde_json::to_vec_pretty(v).map_err(|e| CliError::Parse(e.to_string()))?;
    out.push(b'\n');
    Ok(out)
}

pub fn s_values_json(name: &str, rep: &EquidistReport) -> CliResult<Vec<u8>> {
    let rows = rep
        .rows
        .iter()
        .flat_map(|row| {
            row.s_values
                .iter()
                .enumerate()
                .map(move |(h, s)| SValueRow {
                    m: row.m,
                    h_index: h,
                    s: s.into(),
                    dev_from_uniform: (&dev(s, rep.h_order)).into(),
                })
        })
        .collect();
    to_json(&SValuesDoc {
        scenario: name,
        h_order: rep.h_order,
        rows,
    })
}

pub fn summary_json(name: &str, rep: &EquidistReport) -> CliResult<Vec<u8>> {
    let rows = rep
        .rows
        .iter()
        .map(|row| SummaryRow {
            m: row.m,
            dim: row.dim.to_string(),
            max_pairwise_dev: (&row.max_pairwise_dev).into(),
            dev_from_uniform: (&row.dev_from_uniform).into(),
            chi_abs: row.chi_abs.clone(),
            chi_ratios: row.chi_ratios.clone(),
        })
        .collect();
    to_json(&SummaryDoc {
        scenario: name,
        h_order: rep.h_order,
        characters: rep.characters.iter().map(character_label).collect(),
        rows,
    })
}

/// The files of an equidist run in the requested format, as `(file name, bytes)`.
pub fn equidist_files(
    name: &str,
    rep: &EquidistReport,
    format: Format,
) -> CliResult<Vec<(&'static str, Vec<u8>)>> {
    Ok(match format {
        Format::Json => vec![
            (S_VALUES_JSON, s_values_json(name, rep)?),
            (SUMMARY_JSON, summary_json(name, rep)?),
        ],
        Format::Csv | Format::Text => vec![
            (S_VALUES_CSV, s_values_csv(rep)?),
            (SUMMARY_CSV, summary_csv(rep)?),
        ],
    })
}

#[derive(Serialize)]
struct TermDoc {
    exp: Vec<i64>,
    coeff: String,
}

#[derive(Serialize)]
struct CharDoc {
    rank: usize,
    terms: Vec<TermDoc>,
}

/// `{"rank": n, "terms": [{"exp": [...], "coeff": "..."}]}`, exponents in lexicographic order.
pub fn char_json(ch: &CharElement) -> CliResult<Vec<u8>> {
    to_json(&CharDoc {
        rank: ch.rank(),
        terms: ch
            .terms()
            .map(|(e, c)| TermDoc {
                exp: e.coords().to_vec(),
                coeff: c.to_string(),
            })
            .collect(),
    })
}

/// Writes every file to a temporary sibling first and renames only once all
/// of them were written, so a failure leaves no partial outputs behind.
pub fn write_files_atomic(dir: &Path, files: &[(&str, Vec<u8>)]) -> CliResult<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut staged = Vec::with_capacity(files.len());
    for (name, bytes) in files {
        let mut tmp = NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
        tmp.write_all(bytes)
            .and_then(|_| tmp.as_file().sync_all())
            .map_err(|e| CliError::io(tmp.path(), e))?;
        staged.push((tmp, dir.join(name)));
    }
    let mut out = Vec::with_capacity(staged.len());
    for (tmp, target) in staged {
        tmp.persist(&target)
            .map_err(|e| CliError::io(&target, e.error))?;
        out.push(target);
    }
    Ok(out)
}

/// Single-file variant of [`write_files_atomic`].
pub fn write_file_atomic(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(bytes)
        .map_err(|e| CliError::io(tmp.path(), e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use weyl_equidist_core::run_equidist;

    fn a1_report() -> EquidistReport {
        let s = crate::scenario::Scenario::from_json(
            r#"{"cartan_type":"A1","galois_generators":[[[-1]]]}"#,
        )
        .unwrap();
        run_equidist(&s.action().unwrap(), 1..=3).unwrap()
    }

    #[test]
    fn s_values_csv_layout() {
        let text = String::from_utf8(s_values_csv(&a1_report()).unwrap()).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "m,h_index,S_num,S_den,dev_from_uniform_float");
        assert_eq!(lines.len(), 7);
        assert_eq!(lines[1], "1,0,3,5,0.1");
        assert_eq!(lines[2], "1,1,2,5,0.1");
    }

    #[test]
    fn summary_csv_layout() {
        let text = String::from_utf8(summary_csv(&a1_report()).unwrap()).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "m,dim,max_pairwise_dev_float,chi_1");
        assert_eq!(lines[1], "1,5,0.2,0.2");
    }

    #[test]
    fn json_mirrors_carry_exact_values() {
        let v: serde_json::Value =
            serde_json::from_slice(&s_values_json("t", &a1_report()).unwrap()).unwrap();
        assert_eq!(v["rows"][0]["s"]["num"], "3");
        assert_eq!(v["rows"][0]["s"]["den"], "5");
        let v: serde_json::Value =
            serde_json::from_slice(&summary_json("t", &a1_report()).unwrap()).unwrap();
        assert_eq!(v["rows"][2]["max_pairwise_dev"]["den"], "13");
        assert_eq!(v["characters"][0], "chi_1");
    }

    #[test]
    fn atomic_writes_replace_whole_files() {
        let dir = tempfile::tempdir().unwrap();
        let written = write_files_atomic(dir.path(), &[("a.txt", b"one".to_vec())]).unwrap();
        assert_eq!(std::fs::read(&written[0]).unwrap(), b"one");
        write_files_atomic(dir.path(), &[("a.txt", b"two".to_vec())]).unwrap();
        assert_eq!(std::fs::read(&written[0]).unwrap(), b"two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
