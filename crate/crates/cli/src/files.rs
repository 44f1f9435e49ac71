//! Matrix and distribution file parsing with positioned errors.
//!
//! Matrix files: a header line `d m`, then `d` lines of `m` whitespace
//! separated entries. Entries are rationals (`-3`, `2/5`) or decimals;
//! decimals and scientific notation are parsed as exact rationals.
//! Distribution and measure files: a single non-empty line of entries.

use omfam_core::linalg::Matrix;
use omfam_core::rational::{parse_rational, ParseRationalError, Rational};

/// Position-tagged parse failure; line and column are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FileError {
    pub line: usize,
    pub col: usize,
    pub kind: FileErrorKind,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileErrorKind {
    /// Malformed syntax or wrong shape.
    Syntax,
    /// A value with no exact rational representation (inf, nan).
    NonFinite,
}

impl std::fmt::Display for FileError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.col, self.message
        )
    }
}

fn syntax(line: usize, col: usize, message: impl Into<String>) -> FileError {
    FileError {
        line,
        col,
        kind: FileErrorKind::Syntax,
        message: message.into(),
    }
}

/// Tokens of a line with their 1-based starting columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_entry(token: &str, line: usize, col: usize) -> Result<Rational, FileError> {
    parse_rational(token).map_err(|e| match e {
        ParseRationalError::Invalid(tok) => {
            syntax(line, col, format!("invalid rational literal `{tok}`"))
        }
        ParseRationalError::NonFinite(tok) => FileError {
            line,
            col,
            kind: FileErrorKind::NonFinite,
            message: format!("`{tok}` has no exact rational value"),
        },
    })
}

/// Parses a matrix file.
pub fn parse_matrix_text(text: &str) -> Result<Matrix, FileError> {
    let mut lines = text.lines().enumerate();
    let (header_idx, header) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or_else(|| syntax(1, 1, "empty file; expected a `d m` header"))?;
    let header_tokens = tokens(header);
    if header_tokens.len() != 2 {
        return Err(syntax(
            header_idx + 1,
            1,
            format!("header must be `d m`, found {} tokens", header_tokens.len()),
        ));
    }
    let parse_dim = |(col, tok): (usize, &str)| -> Result<usize, FileError> {
        let value: usize = tok
            .parse()
            .map_err(|_| syntax(header_idx + 1, col, format!("invalid dimension `{tok}`")))?;
        if value == 0 {
            return Err(syntax(header_idx + 1, col, "dimensions must be positive"));
        }
        Ok(value)
    };
    let rows = parse_dim(header_tokens[0])?;
    let cols = parse_dim(header_tokens[1])?;
    let mut data = Vec::with_capacity(rows * cols);
    let mut seen_rows = 0usize;
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        if seen_rows == rows {
            return Err(syntax(idx + 1, 1, format!("expected exactly {rows} rows")));
        }
        let toks = tokens(line);
        if toks.len() != cols {
            return Err(syntax(
                idx + 1,
                1,
                format!("expected {cols} entries, found {}", toks.len()),
            ));
        }
        for (col, tok) in toks {
            data.push(parse_entry(tok, idx + 1, col)?);
        }
        seen_rows += 1;
    }
    if seen_rows != rows {
        return Err(syntax(
            header_idx + 1 + seen_rows,
            1,
            format!("expected {rows} rows, found {seen_rows}"),
        ));
    }
    Matrix::new(rows, cols, data).map_err(|e| syntax(header_idx + 1, 1, e.to_string()))
}

/// Parses a single-line vector file of exact rationals.
pub fn parse_rational_line(text: &str) -> Result<Vec<Rational>, FileError> {
    let mut result = None;
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        if result.is_some() {
            return Err(syntax(idx + 1, 1, "expected a single non-empty line"));
        }
        let mut entries = Vec::new();
        for (col, tok) in tokens(line) {
            entries.push(parse_entry(tok, idx + 1, col)?);
        }
        result = Some(entries);
    }
    result.ok_or_else(|| syntax(1, 1, "empty file; expected one line of entries"))
}

/// Parses a single-line vector file as floats (float mode).
pub fn parse_float_line(text: &str) -> Result<Vec<f64>, FileError> {
    let mut result = None;
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        if result.is_some() {
            return Err(syntax(idx + 1, 1, "expected a single non-empty line"));
        }
        let mut entries = Vec::new();
        for (col, tok) in tokens(line) {
            let value: f64 = tok
                .parse()
                .map_err(|_| syntax(idx + 1, col, format!("invalid number `{tok}`")))?;
            entries.push(value);
        }
        result = Some(entries);
    }
    result.ok_or_else(|| syntax(1, 1, "empty file; expected one line of entries"))
}

/// Renders a matrix in the file format (`d m` header plus rows).
pub fn render_matrix_text(m: &Matrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for r in 0..m.rows() {
        let line: Vec<String> = m.row(r).iter().map(|x| x.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_matrix_with_mixed_entry_syntax() {
        let text = "2 3\n1 2/3 -0.5\n0 1e-2 4\n";
        let m = parse_matrix_text(text).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 3));
        assert_eq!(*m.at(0, 1), parse_rational("2/3").unwrap());
        assert_eq!(*m.at(0, 2), parse_rational("-1/2").unwrap());
        assert_eq!(*m.at(1, 1), parse_rational("1/100").unwrap());
    }

    #[test]
    fn round_trips_through_render() {
        let text = "2 2\n1/3 -2\n0 7\n";
        let m = parse_matrix_text(text).unwrap();
        assert_eq!(render_matrix_text(&m), text);
    }

    #[test]
    fn reports_line_and_column() {
        let err = parse_matrix_text("2 2\n1 2\n3 x\n").unwrap_err();
        assert_eq!((err.line, err.col), (3, 3));
        assert_eq!(err.kind, FileErrorKind::Syntax);
    }

    #[test]
    fn flags_non_finite_entries() {
        let err = parse_matrix_text("1 2\ninf 1\n").unwrap_err();
        assert_eq!(err.kind, FileErrorKind::NonFinite);
        assert_eq!((err.line, err.col), (2, 1));
    }

    #[test]
    fn rejects_wrong_shapes() {
        assert!(parse_matrix_text("2 2\n1 2 3\n4 5\n").is_err());
        assert!(parse_matrix_text("2 2\n1 2\n").is_err());
        assert!(parse_matrix_text("0 2\n").is_err());
        assert!(parse_matrix_text("").is_err());
    }

    #[test]
    fn distribution_line_parsing() {
        let v = parse_rational_line("1/2 0.25 1/4\n").unwrap();
        assert_eq!(v.len(), 3);
        assert!(parse_rational_line("1/2\n1/2\n").is_err());
        let f = parse_float_line("0.5 0.5\n").unwrap();
        assert_eq!(f, vec![0.5, 0.5]);
    }
}
