use std::path::Path;

use eno_core::{CellAverageField, Mesh, PointValueField, Scalar};

use crate::error::CliError;

struct Row<T> {
    line: u64,
    fields: Vec<T>,
}

fn read_rows<T: Scalar>(path: &Path, columns: &[&str]) -> Result<Vec<Row<T>>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(|e| CliError::io(path, e))?;
    let header = reader
        .headers()
        .map_err(|e| CliError::from_csv(path, e))?
        .clone();
    if header.iter().all(|h| h.is_empty()) {
        return Err(CliError::malformed(path, 1, "empty file, expected a header row"));
    }
    if header.iter().all(|h| T::parse_scalar(h).is_ok()) {
        return Err(CliError::malformed(
            path,
            1,
            format!("missing header row (expected {})", columns.join(",")),
        ));
    }
    if header.len() != columns.len() {
        return Err(CliError::malformed(
            path,
            1,
            format!("expected {} columns ({}), found {}", columns.len(), columns.join(","), header.len()),
        ));
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| CliError::from_csv(path, e))?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != columns.len() {
            return Err(CliError::malformed(
                path,
                line,
                format!("expected {} fields, found {}", columns.len(), record.len()),
            ));
        }
        let fields = record
            .iter()
            .zip(columns)
            .map(|(text, name)| {
                T::parse_scalar(text).map_err(|e| CliError::malformed(path, line, format!("column {name}: {e}")))
            })
            .collect::<Result<Vec<T>, _>>()?;
        rows.push(Row { line, fields });
    }
    if rows.is_empty() {
        return Err(CliError::malformed(path, 2, "no data rows"));
    }
    Ok(rows)
}

/// Reads `x_left,x_right,avg` rows describing contiguous cells.
pub fn read_cell_averages<T: Scalar>(path: &Path) -> Result<CellAverageField<T>, CliError> {
    let rows = read_rows::<T>(path, &["x_left", "x_right", "avg"])?;
    let mut interfaces = vec![rows[0].fields[0].clone()];
    let mut averages = Vec::with_capacity(rows.len());
    for row in &rows {
        let [left, right, avg] = [&row.fields[0], &row.fields[1], &row.fields[2]];
        if left != interfaces.last().unwrap() {
            return Err(CliError::malformed(
                path,
                row.line,
                format!(
                    "x_left {} does not match the previous x_right {}",
                    left.to_canonical_string(),
                    interfaces.last().unwrap().to_canonical_string()
                ),
            ));
        }
        if right <= left {
            return Err(CliError::malformed(path, row.line, "x_right must exceed x_left"));
        }
        interfaces.push(right.clone());
        averages.push(avg.clone());
    }
    Ok(CellAverageField::new(Mesh::new(interfaces)?, averages)?)
}

/// Reads `x,value` rows with strictly increasing `x`.
pub fn read_point_values<T: Scalar>(path: &Path) -> Result<PointValueField<T>, CliError> {
    let rows = read_rows::<T>(path, &["x", "value"])?;
    for pair in rows.windows(2) {
        if pair[1].fields[0] <= pair[0].fields[0] {
            return Err(CliError::malformed(path, pair[1].line, "x must be strictly increasing"));
        }
    }
    let (nodes, values) = rows
        .into_iter()
        .map(|r| {
            let mut f = r.fields.into_iter();
            (f.next().unwrap(), f.next().unwrap())
        })
        .unzip();
    Ok(PointValueField::new(nodes, values)?)
}
