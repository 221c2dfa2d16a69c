//! Plain-text renderings: the page grid and aligned tables.

use std::collections::BTreeMap;
use std::fmt::Write;

/// One grid cell: `·` for zero, `•` for dimension 1, the number otherwise.
fn cell(d: usize) -> String {
    match d {
        0 => "·".to_string(),
        1 => "•".to_string(),
        d => d.to_string(),
    }
}

/// Draws `cells` keyed by `(column, row)` with columns increasing to the
/// right and rows decreasing downwards, the layout of a printed page.
/// `cols` and `rows` are inclusive ranges; axes carry the given labels.
pub fn chart(
    cells: &BTreeMap<(i64, i64), usize>,
    cols: (i64, i64),
    rows: (i64, i64),
    col_axis: &str,
    row_axis: &str,
) -> String {
    let width = cells
        .values()
        .map(|d| cell(*d).chars().count())
        .chain((cols.0..=cols.1).map(|c| c.to_string().len()))
        .max()
        .unwrap_or(1)
        + 1;
    let margin = (rows.0..=rows.1)
        .map(|r| r.to_string().len())
        .chain([row_axis.chars().count()])
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    let _ = writeln!(out, "{row_axis:>margin$} ^");
    for r in (rows.0..=rows.1).rev() {
        let _ = write!(out, "{r:>margin$} |");
        for c in cols.0..=cols.1 {
            let s = cell(cells.get(&(c, r)).copied().unwrap_or(0));
            let _ = write!(out, "{s:>width$}");
        }
        out.push('\n');
    }
    let span = width * (cols.1 - cols.0 + 1).max(0) as usize;
    let _ = writeln!(out, "{:>margin$} +{}> {col_axis}", "", "-".repeat(span));
    let _ = write!(out, "{:>margin$}  ", "");
    for c in cols.0..=cols.1 {
        let _ = write!(out, "{c:>width$}");
    }
    out.push('\n');
    out
}

/// Left-aligned first column, right-aligned others, two spaces apart.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let n = header.len();
    let mut w: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (i, c) in r.iter().enumerate().take(n) {
            w[i] = w[i].max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let mut s = String::new();
        for (i, c) in cells.iter().enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            let pad = w[i] - c.chars().count();
            if i == 0 {
                s.push_str(c);
                s.push_str(&" ".repeat(pad));
            } else {
                s.push_str(&" ".repeat(pad));
                s.push_str(c);
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

pub fn tsv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join("\t") + "\n";
    for r in rows {
        out.push_str(&r.join("\t"));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_page_is_all_dots() {
        let g = chart(&BTreeMap::new(), (0, 2), (-1, 0), "x", "y");
        let body: String = g.lines().skip(1).take(2).collect();
        assert_eq!(body.matches('·').count(), 6);
        assert!(!body.contains('•'));
    }

    #[test]
    fn dimensions_render_as_digits() {
        let cells = [((0, 0), 1), ((1, 0), 2), ((1, -1), 12)].into_iter().collect();
        let g = chart(&cells, (0, 1), (-1, 0), "x", "y");
        let rows: Vec<&str> = g.lines().collect();
        assert!(rows[1].trim_end().ends_with('2') && rows[1].contains('•'));
        assert!(rows[2].contains("12"));
    }
}
