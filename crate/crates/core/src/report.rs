//! CSV rendering of estimate tables, simulation tables and plot series.
//!
//! Human-facing tables use five decimals. JSON output is produced
//! separately with full precision.

use crate::estimators::{EstimateReport, LossKind};
use crate::simulation::SimCellResult;

pub const TABLE_COLUMNS: [&str; 8] = [
    "n", "c", "eb_sel", "eb_kl", "eb_el", "emse_sel", "emse_kl", "emse_el",
];

pub const STDERR_COLUMNS: [&str; 6] = [
    "stderr_eb_sel",
    "stderr_eb_kl",
    "stderr_eb_el",
    "stderr_emse_sel",
    "stderr_emse_kl",
    "stderr_emse_el",
];

pub fn fmt5(x: f64) -> String {
    if x.is_nan() {
        "NaN".to_string()
    } else {
        format!("{x:.5}")
    }
}

fn finish(writer: csv::Writer<Vec<u8>>) -> String {
    let bytes = writer
        .into_inner()
        .expect("in-memory CSV writer cannot fail");
    String::from_utf8(bytes).expect("CSV output is UTF-8")
}

pub fn estimate_csv(rows: &[EstimateReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(TABLE_COLUMNS).expect("in-memory");
    for row in rows {
        let mut record = vec![row.n.to_string(), row.c.to_string()];
        record.extend(LossKind::ALL.iter().map(|&l| fmt5(row.eb[l])));
        record.extend(LossKind::ALL.iter().map(|&l| fmt5(row.emse[l])));
        w.write_record(&record).expect("in-memory");
    }
    finish(w)
}

pub fn simulation_csv(cells: &[SimCellResult]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(TABLE_COLUMNS.iter().chain(STDERR_COLUMNS.iter()))
        .expect("in-memory");
    for cell in cells {
        let mut record = vec![cell.config.n.to_string(), cell.config.c.to_string()];
        for map in [
            &cell.eb_mean,
            &cell.emse_mean,
            &cell.eb_stderr,
            &cell.emse_stderr,
        ] {
            record.extend(LossKind::ALL.iter().map(|&l| fmt5(map[l])));
        }
        w.write_record(&record).expect("in-memory");
    }
    finish(w)
}

/// Long-format series: a header then one row per point.
pub fn series_csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory");
    for row in rows {
        w.write_record(&row).expect("in-memory");
    }
    finish(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimators::{HyperBound, SufficientStat};

    #[test]
    fn estimate_header_is_exact() {
        let stat = SufficientStat::new(10, 5.0).unwrap();
        let row = EstimateReport::compute(stat, HyperBound::new(0.5).unwrap());
        let csv = estimate_csv(&[row]);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "n,c,eb_sel,eb_kl,eb_el,emse_sel,emse_kl,emse_el"
        );
        let fields: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(fields[0], "10");
        assert_eq!(fields[1], "0.5");
        assert_eq!(fields.len(), 8);
        assert!(fields[2..]
            .iter()
            .all(|f| f.split('.').nth(1).unwrap().len() == 5));
    }

    #[test]
    fn nan_renders_as_text() {
        assert_eq!(fmt5(f64::NAN), "NaN");
        assert_eq!(fmt5(2.539_392_33), "2.53939");
    }
}
