//! Human-readable tables. Reals are shown to four decimals.

use std::fmt::Write;

pub fn real(x: f64) -> String {
    format!("{x:.4}")
}

pub fn opt_real(x: Option<f64>) -> String {
    x.map_or_else(|| "-".to_string(), real)
}

/// p-values span many orders of magnitude; scientific notation keeps them readable.
pub fn p_value(p: f64) -> String {
    format!("{p:.4e}")
}

/// Left-aligns the first column and right-aligns the rest.
pub fn render(header: &[&str], rows: &[Vec<String>]) -> String {
    let n = header.len();
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (i, cell) in r.iter().enumerate().take(n) {
            width[i] = width[i].max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, c) in cells.iter().enumerate() {
            let pad = width[i] - c.chars().count();
            if i > 0 {
                s.push_str("  ");
            }
            if i == 0 {
                s.push_str(c);
                s.push_str(&" ".repeat(pad));
            } else {
                s.push_str(&" ".repeat(pad));
                s.push_str(c);
            }
        }
        let _ = writeln!(out, "{}", s.trim_end());
    };
    line(header.to_vec());
    for r in rows {
        line(r.iter().map(String::as_str).collect());
    }
    out
}

/// `key  value` lines.
pub fn pairs(rows: &[(&str, String)]) -> String {
    let w = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<w$}  {v}\n"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_decimals() {
        assert_eq!(real(0.43548387), "0.4355");
        assert_eq!(opt_real(None), "-");
        assert_eq!(p_value(6.58e-12), "6.5800e-12");
    }

    #[test]
    fn columns_align() {
        let t = render(&["a", "bb"], &[vec!["xyz".into(), "1".into()]]);
        assert_eq!(t, "a    bb\nxyz   1\n");
    }
}
