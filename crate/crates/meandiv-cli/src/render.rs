//! Plain-text table and CSV rendering.
//!
//! Tables round to 9 significant digits for reading; CSV carries full
//! precision (shortest round-trip representation) for regression baselines.
//! Both are locale-independent and byte-stable for identical inputs.

/// Format with `sig` significant digits: fixed-point in the comfortable
/// range, scientific outside it.
pub fn format_sig(value: f64, sig: usize) -> String {
    if value == 0.0 {
        return "0".to_owned();
    }
    if !value.is_finite() {
        return value.to_string();
    }
    let exponent = value.abs().log10().floor() as i32;
    if !(-5..13).contains(&exponent) {
        return format!("{value:.*e}", sig.saturating_sub(1));
    }
    let decimals = (sig as i32 - 1 - exponent).max(0) as usize;
    format!("{value:.decimals$}")
}

/// Full-precision cell for CSV: shortest string that round-trips the f64.
pub fn csv_cell(value: f64) -> String {
    value.to_string()
}

/// A table with `left` leading label columns left-aligned and the remaining
/// numeric columns right-aligned, padded to the widest cell.
pub fn render_table_with(headers: &[&str], rows: &[Vec<String>], left: usize) -> String {
    let columns = headers.len();
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let emit = |out: &mut String, cells: &[String]| {
        for (i, cell) in cells.iter().enumerate() {
            if i > 0 {
                out.push_str("  ");
            }
            if i < left {
                out.push_str(&format!("{cell:<width$}", width = widths[i]));
            } else {
                out.push_str(&format!("{cell:>width$}", width = widths[i]));
            }
        }
        while out.ends_with(' ') {
            out.pop();
        }
        out.push('\n');
    };
    let header_cells: Vec<String> = headers.iter().map(|h| (*h).to_owned()).collect();
    emit(&mut out, &header_cells);
    for row in rows {
        assert_eq!(row.len(), columns, "ragged table row");
        emit(&mut out, row);
    }
    out
}

/// [`render_table_with`] with a single label column.
pub fn render_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    render_table_with(headers, rows, 1)
}

/// Comma-separated rows under a fixed header; cells must already be
/// comma-free.
pub fn render_csv(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&headers.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
