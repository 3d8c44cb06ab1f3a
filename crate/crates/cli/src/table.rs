//! CSV emission and column reading.

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use qtspin::{ObservablePoint, ObservableSeries};

use crate::error::{CliError, CliResult};

/// Observable columns, in file order, after `t` and `e2_t`.
pub const OBSERVABLE_COLUMNS: [&str; 8] = [
    "s1",
    "s2",
    "s_total",
    "re_sigma_plus",
    "im_sigma_plus",
    "abs_sigma_plus",
    "rho2_00",
    "rho2_11",
];

pub const CLOSED_FORM_SUFFIX: &str = "_cf";

pub fn header(with_closed_form: bool) -> Vec<String> {
    let mut cols = vec!["t".to_string(), "e2_t".to_string()];
    cols.extend(OBSERVABLE_COLUMNS.iter().map(|c| c.to_string()));
    if with_closed_form {
        cols.extend(
            OBSERVABLE_COLUMNS
                .iter()
                .map(|c| format!("{c}{CLOSED_FORM_SUFFIX}")),
        );
    }
    cols
}

fn observables(p: &ObservablePoint) -> [f64; 8] {
    [
        p.s1,
        p.s2,
        p.s_total,
        p.sigma_plus.re,
        p.sigma_plus.im,
        p.abs_sigma_plus(),
        p.rho2_diag[0],
        p.rho2_diag[1],
    ]
}

/// 17 significant digits, `.` decimal.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes `series` (plus `closed_form` as `_cf` columns) with a dimensionless
/// time column `e2 * t`.
pub fn write_series(
    path: &Path,
    series: &ObservableSeries,
    closed_form: Option<&ObservableSeries>,
    e2: f64,
) -> CliResult<usize> {
    if let Some(cf) = closed_form {
        assert_eq!(
            cf.points.len(),
            series.points.len(),
            "series on different grids"
        );
    }
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut w = csv::Writer::from_writer(BufWriter::new(file));
    let err = |e| CliError::csv(path, e);
    w.write_record(header(closed_form.is_some())).map_err(err)?;
    for (k, p) in series.points.iter().enumerate() {
        let mut row = vec![format_value(p.t), format_value(e2 * p.t)];
        row.extend(observables(p).into_iter().map(format_value));
        if let Some(cf) = closed_form {
            row.extend(observables(&cf.points[k]).into_iter().map(format_value));
        }
        w.write_record(&row).map_err(err)?;
    }
    w.flush().map_err(|e| CliError::io(path, e))?;
    Ok(series.points.len())
}

/// Numeric columns of a CSV file with a header row.
#[derive(Debug, Clone)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn read(path: &Path) -> CliResult<Table> {
        let file = File::open(path).map_err(|e| CliError::io(path, e))?;
        let mut r = csv::Reader::from_reader(file);
        let headers = r
            .headers()
            .map_err(|e| CliError::csv(path, e))?
            .iter()
            .map(|h| h.trim().to_string())
            .collect();
        let mut rows = Vec::new();
        for (line, record) in r.records().enumerate() {
            let record = record.map_err(|e| CliError::csv(path, e))?;
            let row = record
                .iter()
                .map(|field| {
                    field.trim().parse::<f64>().map_err(|_| {
                        CliError::Usage(format!(
                            "{}: row {}: `{field}` is not a number",
                            path.display(),
                            line + 1
                        ))
                    })
                })
                .collect::<CliResult<Vec<f64>>>()?;
            rows.push(row);
        }
        Ok(Table { headers, rows })
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.headers.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        let s = format_value(0.1);
        assert_eq!(s, "1.0000000000000001e-1");
        assert_eq!(s.parse::<f64>().unwrap(), 0.1);
        let mantissa = s.split('e').next().unwrap().replace('.', "");
        assert_eq!(mantissa.len(), 17);
        assert_eq!(format_value(-2.5), "-2.5000000000000000e0");
    }

    #[test]
    fn header_layout() {
        assert_eq!(header(false).len(), 10);
        let h = header(true);
        assert_eq!(h.len(), 18);
        assert_eq!(h[10], "s1_cf");
        assert_eq!(h[17], "rho2_11_cf");
    }
}
