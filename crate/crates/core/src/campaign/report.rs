//! Rendering of campaign reports: histogram and verdict tables,
//! machine-readable histogram CSV.

use crate::campaign::{CampaignReport, APPENDIX_LABELS};

/// Output layout for [`render_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    /// Tab-separated cells, one line per row.
    Tsv,
    /// Space-padded columns for terminals.
    Text,
}

/// Six-decimal scientific notation with a signed two-digit exponent:
/// 0.9157321 renders as "9.157321e-01".
pub fn sci6(x: f64) -> String {
    if x == 0.0 {
        return "0.000000e+00".to_string();
    }
    let raw = format!("{x:.6e}");
    let (mantissa, exp) = raw.split_once('e').expect("float in scientific notation");
    let e: i32 = exp.parse().expect("integer exponent");
    let sign = if e < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", e.abs())
}

/// Six-decimal fixed notation, used for proportions.
pub fn fixed6(x: f64) -> String {
    format!("{x:.6}")
}

/// Renders the two report tables separated by a blank line: first the
/// P-value histogram (one row per test, eleven interval columns plus a
/// total), then the verdicts (proportion of passes against the
/// acceptance threshold, and the uniformity P-value when enough samples
/// pooled).
pub fn render_report(report: &CampaignReport, format: ReportFormat) -> String {
    let mut histogram: Vec<Vec<String>> = Vec::new();
    let mut header: Vec<String> = vec!["test".into(), "name".into()];
    header.extend(APPENDIX_LABELS.iter().map(|l| l.to_string()));
    header.push("total".into());
    histogram.push(header);
    for row in &report.rows {
        let mut cells: Vec<String> = vec![row.test.to_string(), row.name.clone()];
        cells.extend(row.bins.appendix.iter().map(|c| c.to_string()));
        cells.push(row.total.to_string());
        histogram.push(cells);
    }

    let mut verdicts: Vec<Vec<String>> = vec![[
        "test",
        "name",
        "length",
        "expected",
        "observed",
        "proportion",
        "pop",
        "uniformity",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()];
    for row in &report.rows {
        verdicts.push(vec![
            row.test.to_string(),
            row.name.clone(),
            row.length.to_string(),
            fixed6(row.expected_proportion),
            fixed6(row.observed_proportion),
            (if row.proportion_success { "Success" } else { "Unsuccess" }).to_string(),
            row.pop.map_or_else(|| "-".to_string(), sci6),
            match row.uniform {
                Some(true) => "Uniform".to_string(),
                Some(false) => "Non-uniform".to_string(),
                None => "-".to_string(),
            },
        ]);
    }

    let (first, second) = match format {
        ReportFormat::Tsv => (tsv(&histogram), tsv(&verdicts)),
        ReportFormat::Text => (aligned(&histogram), aligned(&verdicts)),
    };
    format!("{first}\n\n{second}\n")
}

/// Long-format CSV of the histograms: `test,name,interval,count`, one
/// row per test and interval.
pub fn histogram_csv(report: &CampaignReport) -> String {
    let mut out = String::from("test,name,interval,count\n");
    for row in &report.rows {
        for (label, count) in APPENDIX_LABELS.iter().zip(row.bins.appendix.iter()) {
            out.push_str(&format!("{},{},{label},{count}\n", row.test, row.name));
        }
    }
    out
}

fn tsv(rows: &[Vec<String>]) -> String {
    rows.iter()
        .map(|row| row.join("\t"))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Left-aligns the test number and name, right-aligns everything else.
fn aligned(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut widths = vec![0usize; cols];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    rows.iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(i, cell)| {
                    if i < 2 {
                        format!("{cell:<width$}", width = widths[i])
                    } else {
                        format!("{cell:>width$}", width = widths[i])
                    }
                })
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        })
        .collect::<Vec<_>>()
        .join("\n")
}
