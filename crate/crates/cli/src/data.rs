//! CSV ingestion and emission. External object ids are strings; they map to
//! dense indices in file order here, and everything downstream is numeric.
//!
//! Formats (UTF-8, comma separated, `.` decimal, LF line endings):
//! - interactions: header `drug_id,target_id,label`
//! - features: first column `id`, remaining columns numeric
//! - precomputed kernel: square; first row and first column carry the ids

use std::collections::HashMap;
use std::path::Path;

use anyhow::{bail, Context, Result};
use kronvec::{DenseMatrix, PairSample};

/// String ids in file order with a reverse index.
pub struct ObjectTable {
    pub ids: Vec<String>,
    index: HashMap<String, usize>,
}

impl ObjectTable {
    fn new(ids: Vec<String>, what: &str) -> Result<Self> {
        let mut index = HashMap::with_capacity(ids.len());
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                bail!("duplicate {what} id `{id}`");
            }
        }
        Ok(Self { ids, index })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn lookup(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }
}

fn reader(path: &Path) -> Result<csv::Reader<std::fs::File>> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .with_context(|| format!("opening {}", path.display()))
}

/// Feature CSV: `id,<numeric columns...>`.
pub fn read_features(path: &Path) -> Result<(ObjectTable, DenseMatrix)> {
    let mut rdr = reader(path)?;
    let headers = rdr.headers()?.clone();
    if headers.is_empty() || &headers[0] != "id" {
        bail!(
            "{}: feature files start with an `id` column, found `{}`",
            path.display(),
            headers.iter().next().unwrap_or("")
        );
    }
    let cols = headers.len() - 1;
    let mut ids = Vec::new();
    let mut values = Vec::new();
    for (line, record) in rdr.records().enumerate() {
        let record = record?;
        if record.len() != cols + 1 {
            bail!(
                "{}: row {} has {} fields, expected {}",
                path.display(),
                line + 2,
                record.len(),
                cols + 1
            );
        }
        ids.push(record[0].to_string());
        for field in record.iter().skip(1) {
            values.push(field.trim().parse::<f64>().with_context(|| {
                format!("{}: row {}: bad number `{field}`", path.display(), line + 2)
            })?);
        }
    }
    let table = ObjectTable::new(ids, "feature")?;
    let matrix = DenseMatrix::new(table.len(), cols, values)?;
    Ok((table, matrix))
}

/// Precomputed kernel CSV: header `id,<id0>,<id1>,...`, each row led by its
/// id. Must be square with matching row/column ids and symmetric values.
pub fn read_kernel(path: &Path) -> Result<(ObjectTable, DenseMatrix)> {
    let mut rdr = reader(path)?;
    let headers = rdr.headers()?.clone();
    if headers.len() < 2 {
        bail!("{}: kernel file needs at least one object", path.display());
    }
    let col_ids: Vec<String> = headers.iter().skip(1).map(str::to_string).collect();
    let n = col_ids.len();
    let mut values = Vec::with_capacity(n * n);
    let mut row_ids = Vec::with_capacity(n);
    for (line, record) in rdr.records().enumerate() {
        let record = record?;
        if record.len() != n + 1 {
            bail!(
                "{}: kernel is not square at row {}",
                path.display(),
                line + 2
            );
        }
        row_ids.push(record[0].to_string());
        for field in record.iter().skip(1) {
            values.push(field.trim().parse::<f64>().with_context(|| {
                format!("{}: row {}: bad number `{field}`", path.display(), line + 2)
            })?);
        }
    }
    if row_ids != col_ids {
        bail!("{}: kernel row ids do not match column ids", path.display());
    }
    let matrix = DenseMatrix::new(n, n, values)?;
    if let Some((i, j)) = matrix.symmetry_violation(1e-12) {
        bail!(
            "{}: asymmetric kernel at ({}, {}): {} vs {}",
            path.display(),
            row_ids[i],
            row_ids[j],
            matrix.get(i, j),
            matrix.get(j, i)
        );
    }
    let table = ObjectTable::new(row_ids, "kernel")?;
    Ok((table, matrix))
}

/// Interactions CSV with header `drug_id,target_id,label`. `targets` may be
/// the same table as `drugs` for homogeneous data.
pub fn read_interactions(
    path: &Path,
    drugs: &ObjectTable,
    targets: &ObjectTable,
    homogeneous: bool,
) -> Result<PairSample> {
    let mut rdr = reader(path)?;
    let headers = rdr.headers()?.clone();
    let expected = ["drug_id", "target_id", "label"];
    if headers.len() != 3 || headers.iter().zip(expected).any(|(h, e)| h != e) {
        bail!(
            "{}: interactions header must be `drug_id,target_id,label`",
            path.display()
        );
    }
    let mut first = Vec::new();
    let mut second = Vec::new();
    let mut labels = Vec::new();
    for (line, record) in rdr.records().enumerate() {
        let record = record?;
        let drug = drugs.lookup(&record[0]).with_context(|| {
            format!(
                "{}: row {}: unknown drug id `{}`",
                path.display(),
                line + 2,
                &record[0]
            )
        })?;
        let target = targets.lookup(&record[1]).with_context(|| {
            format!(
                "{}: row {}: unknown target id `{}`",
                path.display(),
                line + 2,
                &record[1]
            )
        })?;
        let label: f64 = record[2].trim().parse().with_context(|| {
            format!(
                "{}: row {}: bad label `{}`",
                path.display(),
                line + 2,
                &record[2]
            )
        })?;
        first.push(drug);
        second.push(target);
        labels.push(label);
    }
    Ok(PairSample::new(first, second, Some(labels), homogeneous)?)
}

pub fn write_interactions(path: &Path, rows: &[(String, String, f64)]) -> Result<()> {
    let mut wtr =
        csv::Writer::from_path(path).with_context(|| format!("writing {}", path.display()))?;
    wtr.write_record(["drug_id", "target_id", "label"])?;
    for (d, t, y) in rows {
        wtr.write_record([d.as_str(), t.as_str(), &format_number(*y)])?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn write_features(path: &Path, ids: &[String], features: &DenseMatrix) -> Result<()> {
    let mut wtr =
        csv::Writer::from_path(path).with_context(|| format!("writing {}", path.display()))?;
    let mut header = vec!["id".to_string()];
    header.extend((0..features.cols()).map(|c| format!("x{c}")));
    wtr.write_record(&header)?;
    for (i, id) in ids.iter().enumerate() {
        let mut row = vec![id.clone()];
        row.extend(features.row(i).iter().map(|v| format_number(*v)));
        wtr.write_record(&row)?;
    }
    wtr.flush()?;
    Ok(())
}

fn format_number(v: f64) -> String {
    // integral labels print without an exponent or trailing digits
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}
