//! CSV ingestion and JSON/CSV serialization of results.
//!
//! Input conventions:
//!
//! * univariate: one column per curve, one row per grid point;
//! * multivariate: one file per curve, one column per dimension, file stem
//!   as the curve id;
//! * point clouds: one row per point, one column per coordinate.
//!
//! A leading index column is recognized by its header: empty, `index` or `x`
//! for curves, and empty, `index`, `id` or `label` for point clouds. Numeric
//! index values become grid coordinates; anything else is kept as row
//! labels on a 0-based grid.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{DepthError, Result};
use crate::homogeneity::{HomogeneityMethod, HomogeneityReport};
use crate::model::{
    Curve, DepthEntry, DepthParams, DepthResult, FunctionalSample, MultivariateCurve, PointCloud,
    TimeGrid,
};
use crate::stats;

/// Version of the JSON documents written by [`write_result`].
pub const SCHEMA_VERSION: u32 = 1;

fn parse_err(path: &Path, message: impl Into<String>) -> DepthError {
    DepthError::Parse {
        path: path.to_path_buf(),
        message: message.into(),
    }
}

/// A numeric table read from CSV: optional row labels plus named columns.
struct Table {
    index: Option<Vec<String>>,
    headers: Vec<String>,
    rows: Vec<Vec<f64>>,
}

fn read_table(path: &Path, index_names: &[&str]) -> Result<Table> {
    let text = fs::read_to_string(path).map_err(|source| DepthError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header_record = reader
        .headers()
        .map_err(|e| parse_err(path, e.to_string()))?
        .clone();
    if header_record.is_empty() || (header_record.len() == 1 && header_record[0].is_empty()) {
        return Err(parse_err(path, "file is empty or has no header row"));
    }
    let all_headers: Vec<String> = header_record.iter().map(str::to_string).collect();
    let has_index = {
        let first = all_headers[0].to_ascii_lowercase();
        first.is_empty() || index_names.contains(&first.as_str())
    };
    let headers: Vec<String> = all_headers[usize::from(has_index)..].to_vec();
    if headers.is_empty() {
        return Err(parse_err(path, "no data columns"));
    }
    for (i, h) in headers.iter().enumerate() {
        if headers[..i].contains(h) {
            return Err(parse_err(path, format!("duplicate column header '{h}'")));
        }
    }

    let mut index = has_index.then(Vec::new);
    let mut rows = Vec::new();
    for (r, record) in reader.records().enumerate() {
        let row_no = r + 1;
        let record = record.map_err(|e| parse_err(path, e.to_string()))?;
        if record.len() != all_headers.len() {
            return Err(parse_err(
                path,
                format!(
                    "row {row_no} has {} fields, expected {}",
                    record.len(),
                    all_headers.len()
                ),
            ));
        }
        let mut fields = record.iter();
        if let Some(index) = index.as_mut() {
            index.push(fields.next().unwrap_or_default().to_string());
        }
        let row = fields
            .zip(&headers)
            .map(|(cell, name)| {
                cell.parse::<f64>().map_err(|_| {
                    parse_err(
                        path,
                        format!("row {row_no}, column '{name}': cannot parse '{cell}' as a number"),
                    )
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(parse_err(path, "no data rows"));
    }
    Ok(Table {
        index,
        headers,
        rows,
    })
}

fn grid_from_index(index: Option<Vec<String>>, rows: usize) -> TimeGrid {
    match index {
        None => TimeGrid::uniform(rows),
        Some(labels) => {
            let numeric: Option<Vec<f64>> = labels.iter().map(|l| l.parse::<f64>().ok()).collect();
            match numeric {
                Some(points) => TimeGrid::new(points),
                None => TimeGrid::labelled(labels),
            }
        }
    }
}

const CURVE_INDEX_NAMES: [&str; 2] = ["index", "x"];
const POINT_LABEL_NAMES: [&str; 3] = ["index", "id", "label"];

/// Reads a univariate sample: each column is a curve, each row a grid point.
pub fn parse_univariate_csv(path: impl AsRef<Path>) -> Result<FunctionalSample> {
    let path = path.as_ref();
    let table = read_table(path, &CURVE_INDEX_NAMES)?;
    let curves = table
        .headers
        .iter()
        .enumerate()
        .map(|(c, id)| Curve::new(id.clone(), table.rows.iter().map(|r| r[c]).collect()))
        .collect();
    let grid = grid_from_index(table.index, table.rows.len());
    Ok(FunctionalSample::univariate(grid, curves))
}

/// Reads one multivariate curve per file. Every file must have the same
/// header, row count and index values.
pub fn parse_multivariate_files<P: AsRef<Path>>(paths: &[P]) -> Result<FunctionalSample> {
    if paths.is_empty() {
        return Err(DepthError::InvalidParams(
            "no multivariate curve files given".into(),
        ));
    }
    let mut first: Option<(PathBuf, Table)> = None;
    let mut curves = Vec::with_capacity(paths.len());
    for path in paths {
        let path = path.as_ref();
        let table = read_table(path, &CURVE_INDEX_NAMES)?;
        let id = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        if let Some((first_path, reference)) = &first {
            let mismatch = if table.headers != reference.headers {
                Some(format!(
                    "columns [{}] differ from [{}]",
                    table.headers.join(", "),
                    reference.headers.join(", ")
                ))
            } else if table.rows.len() != reference.rows.len() {
                Some(format!(
                    "{} rows, expected {}",
                    table.rows.len(),
                    reference.rows.len()
                ))
            } else if table.index != reference.index {
                Some("row index values differ".to_string())
            } else {
                None
            };
            if let Some(message) = mismatch {
                return Err(DepthError::Incompatible(format!(
                    "{} vs {}: {message}",
                    path.display(),
                    first_path.display()
                )));
            }
        }
        curves.push(MultivariateCurve::new(id, table.rows.clone()));
        if first.is_none() {
            first = Some((path.to_path_buf(), table));
        }
    }
    let (_, reference) = first.expect("at least one file");
    let grid = grid_from_index(reference.index, reference.rows.len());
    Ok(FunctionalSample::multivariate(grid, curves))
}

/// Reads every `*.csv` file of `dir`, in file-name order, as one
/// multivariate curve each.
pub fn parse_multivariate_dir(dir: impl AsRef<Path>) -> Result<FunctionalSample> {
    let dir = dir.as_ref();
    let entries = fs::read_dir(dir).map_err(|source| DepthError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(parse_err(dir, "directory contains no .csv files"));
    }
    parse_multivariate_files(&paths)
}

/// Reads a point cloud: each row is a point. Without a label column, ids
/// are the 0-based row numbers.
pub fn parse_pointcloud_csv(path: impl AsRef<Path>) -> Result<PointCloud> {
    let path = path.as_ref();
    let table = read_table(path, &POINT_LABEL_NAMES)?;
    Ok(match table.index {
        Some(ids) => PointCloud::new(ids, table.rows),
        None => PointCloud::from_points(table.rows),
    })
}

fn format_value(v: f64) -> String {
    format!("{v}")
}

/// Writes a univariate sample in the layout read by [`parse_univariate_csv`].
pub fn univariate_csv(sample: &FunctionalSample) -> Result<String> {
    let curves = sample.univariate_curves().ok_or_else(|| {
        DepthError::Unsupported("only univariate samples can be written as one CSV".into())
    })?;
    let mut out = String::from("index");
    for c in curves {
        out.push(',');
        out.push_str(&csv_field(&c.id));
    }
    out.push('\n');
    for t in 0..sample.grid().len() {
        out.push_str(&csv_field(&sample.grid().label(t)));
        for c in curves {
            out.push(',');
            out.push_str(&format_value(c.values[t]));
        }
        out.push('\n');
    }
    Ok(out)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Six-decimal display string used alongside full-precision values.
pub fn display6(v: f64) -> String {
    format!("{v:.6}")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = DepthError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(DepthError::InvalidParams(format!(
                "unknown format '{other}' (expected json or csv)"
            ))),
        }
    }
}

/// Square matrix of homogeneity coefficients between named groups.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneityMatrix {
    pub method: HomogeneityMethod,
    pub labels: Vec<String>,
    pub values: Vec<Vec<f64>>,
    pub params: DepthParams,
}

/// Anything [`write_result`] can serialize.
#[derive(Clone, Copy, Debug)]
pub enum Output<'a> {
    Depth(&'a DepthResult),
    Homogeneity(&'a HomogeneityReport),
    Matrix(&'a HomogeneityMatrix),
}

#[derive(Serialize, Deserialize)]
struct EntryDoc {
    id: String,
    display: String,
    depth: f64,
}

#[derive(Serialize, Deserialize)]
struct DepthDoc {
    schema_version: u32,
    kind: String,
    method: String,
    params: DepthParams,
    entries: Vec<EntryDoc>,
    warnings: Vec<String>,
}

#[derive(Serialize)]
struct HomogeneityDoc<'a> {
    schema_version: u32,
    kind: &'static str,
    method: HomogeneityMethod,
    display: String,
    value: f64,
    deepest_of_g: &'a str,
    deepest_of_f: &'a str,
    params: &'a DepthParams,
}

#[derive(Serialize)]
struct MatrixDoc<'a> {
    schema_version: u32,
    kind: &'static str,
    method: HomogeneityMethod,
    labels: &'a [String],
    values: &'a [Vec<f64>],
    display: Vec<Vec<String>>,
    params: &'a DepthParams,
}

fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

/// Serializes `output`. Depth entries appear in [`stats::ordered`] order.
pub fn render_result(output: Output<'_>, format: Format) -> String {
    match (output, format) {
        (Output::Depth(r), Format::Json) => to_json(&DepthDoc {
            schema_version: SCHEMA_VERSION,
            kind: "depth".into(),
            method: r.method.clone(),
            params: r.params.clone(),
            entries: stats::ordered(r)
                .into_iter()
                .map(|e| EntryDoc {
                    display: display6(e.depth),
                    id: e.id,
                    depth: e.depth,
                })
                .collect(),
            warnings: r.warnings.clone(),
        }),
        (Output::Depth(r), Format::Csv) => {
            let mut out = String::from("id,depth\n");
            for e in stats::ordered(r) {
                out.push_str(&format!("{},{}\n", csv_field(&e.id), format_value(e.depth)));
            }
            out
        }
        (Output::Homogeneity(h), Format::Json) => to_json(&HomogeneityDoc {
            schema_version: SCHEMA_VERSION,
            kind: "homogeneity",
            method: h.method,
            display: display6(h.value),
            value: h.value,
            deepest_of_g: &h.deepest_of_g,
            deepest_of_f: &h.deepest_of_f,
            params: &h.params,
        }),
        (Output::Homogeneity(h), Format::Csv) => format!(
            "method,value,deepest_of_g,deepest_of_f\n{},{},{},{}\n",
            h.method,
            format_value(h.value),
            csv_field(&h.deepest_of_g),
            csv_field(&h.deepest_of_f)
        ),
        (Output::Matrix(m), Format::Json) => to_json(&MatrixDoc {
            schema_version: SCHEMA_VERSION,
            kind: "matrix",
            method: m.method,
            labels: &m.labels,
            values: &m.values,
            display: m
                .values
                .iter()
                .map(|row| row.iter().map(|&v| display6(v)).collect())
                .collect(),
            params: &m.params,
        }),
        (Output::Matrix(m), Format::Csv) => {
            let mut out = String::new();
            for label in &m.labels {
                out.push(',');
                out.push_str(&csv_field(label));
            }
            out.push('\n');
            for (label, row) in m.labels.iter().zip(&m.values) {
                out.push_str(&csv_field(label));
                for &v in row {
                    out.push(',');
                    out.push_str(&format_value(v));
                }
                out.push('\n');
            }
            out
        }
    }
}

/// Writes `output` to `path` in `format`.
pub fn write_result(output: Output<'_>, format: Format, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, render_result(output, format)).map_err(|source| DepthError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads a depth result written by [`write_result`] in JSON (by `.json`
/// extension) or CSV form. CSV files carry no parameters; defaults are used.
pub fn read_depth_result(path: impl AsRef<Path>) -> Result<DepthResult> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| DepthError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let is_csv = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    if is_csv {
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let mut entries = Vec::new();
        for (r, record) in reader.records().enumerate() {
            let record = record.map_err(|e| parse_err(path, e.to_string()))?;
            let (Some(id), Some(depth)) = (record.get(0), record.get(1)) else {
                return Err(parse_err(path, format!("row {} needs id,depth", r + 1)));
            };
            let depth = depth.parse::<f64>().map_err(|_| {
                parse_err(
                    path,
                    format!("row {}: cannot parse '{depth}' as a number", r + 1),
                )
            })?;
            entries.push(DepthEntry {
                id: id.to_string(),
                depth,
            });
        }
        return Ok(DepthResult {
            method: "unknown".into(),
            params: DepthParams::default(),
            entries,
            warnings: Vec::new(),
        });
    }
    let doc: DepthDoc = serde_json::from_str(&text).map_err(|e| parse_err(path, e.to_string()))?;
    if doc.kind != "depth" {
        return Err(parse_err(
            path,
            format!("expected a depth document, found '{}'", doc.kind),
        ));
    }
    if doc.schema_version > SCHEMA_VERSION {
        return Err(parse_err(
            path,
            format!("unsupported schema version {}", doc.schema_version),
        ));
    }
    Ok(DepthResult {
        method: doc.method,
        params: doc.params,
        entries: doc
            .entries
            .into_iter()
            .map(|e| DepthEntry {
                id: e.id,
                depth: e.depth,
            })
            .collect(),
        warnings: doc.warnings,
    })
}
