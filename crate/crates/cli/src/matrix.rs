use anyhow::{bail, Context, Result};
use unlinking::exactla::IntMatrix;

/// Reads whitespace- or comma-separated integer rows, one per line or as
/// nested brackets `[[a,b],[c,d]]`; `#` starts a comment.
pub fn parse_matrix(text: &str) -> Result<IntMatrix> {
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let stripped: Vec<&str> = text.lines().map(|l| l.split('#').next().unwrap_or("")).collect();
    let joined = stripped.join("\n").replace(']', "]\n");
    for (i, line) in joined.lines().enumerate() {
        let cleaned: String = line.chars().map(|c| if matches!(c, '[' | ']' | ',' | ';') { ' ' } else { c }).collect();
        let row = cleaned
            .split_whitespace()
            .map(|t| t.parse::<i64>().with_context(|| format!("line {}: bad entry `{t}`", i + 1)))
            .collect::<Result<Vec<_>>>()?;
        if !row.is_empty() {
            rows.push(row);
        }
    }
    if rows.is_empty() {
        bail!("empty matrix");
    }
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        bail!("rows have different lengths");
    }
    Ok(IntMatrix::from_rows(&rows)?)
}

/// One row per line, columns right-aligned, in parentheses.
pub fn render_matrix(a: &IntMatrix) -> String {
    let rows = a.to_rows();
    let width = rows.iter().flatten().map(|v| v.to_string().len()).max().unwrap_or(1);
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r.iter().map(|v| format!("{v:>width$}")).collect();
        out.push_str(&format!("( {} )\n", cells.join(" ")));
    }
    out
}
