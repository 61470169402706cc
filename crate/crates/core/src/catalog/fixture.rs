//! Plain-text matrices of linear forms, one row per line.
//!
//! ```text
//! # comment
//! vars: x, y, z
//! orientation: source-rows
//! -y, -z, 0
//! x, 2*y, 0
//! ```
//!
//! Entries are `0` or a variable with an optional sign and integer factor. Rows index
//! the target unless `orientation: source-rows` is given.

use num::BigInt;

use crate::error::{Error, Result};
use crate::pencil::Pencil;

const FIXTURES: &[(&str, &str)] = &[
    ("gl3-s2-s21", include_str!("../../fixtures/gl3-s2-s21.txt")),
    ("sp6-l2-l3", include_str!("../../fixtures/sp6-l2-l3.txt")),
    ("spin10-m-delta", include_str!("../../fixtures/spin10-m-delta.txt")),
];

pub fn fixture_names() -> Vec<&'static str> {
    FIXTURES.iter().map(|(n, _)| *n).collect()
}

pub fn fixture_text(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Parse a bundled fixture into a pencil in its own bases.
pub fn fixture_parse(name: &str) -> Result<Pencil> {
    let text = fixture_text(name).ok_or_else(|| Error::Parse {
        line: 0,
        col: 0,
        msg: format!("no fixture named {name:?}; known: {}", fixture_names().join(", ")),
    })?;
    parse_matrix_text(text)
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

fn parse_entry(tok: &str, vars: &[String], line: usize, col: usize) -> Result<Option<(usize, BigInt)>> {
    let t = tok.trim();
    if t.is_empty() {
        return Err(err(line, col, "empty entry"));
    }
    if t == "0" {
        return Ok(None);
    }
    let (sign, rest) = match t.as_bytes()[0] {
        b'-' => (-1, t[1..].trim_start()),
        b'+' => (1, t[1..].trim_start()),
        _ => (1, t),
    };
    let (coeff, name) = match rest.split_once('*') {
        Some((c, n)) => {
            let c: BigInt = c.trim().parse().map_err(|_| err(line, col, format!("bad factor in {t:?}")))?;
            (c, n.trim())
        }
        None => (BigInt::from(1), rest),
    };
    if name.chars().all(|c| c.is_ascii_digit()) {
        return Err(err(line, col, format!("constant entry {t:?}; entries must be linear forms")));
    }
    let var = vars
        .iter()
        .position(|v| v == name)
        .ok_or_else(|| err(line, col, format!("unknown variable {name:?}")))?;
    let c = coeff * sign;
    Ok(if c == BigInt::from(0) { None } else { Some((var, c)) })
}

pub fn parse_matrix_text(text: &str) -> Result<Pencil> {
    let mut vars: Option<Vec<String>> = None;
    let mut source_rows = false;
    let mut rows: Vec<Vec<Option<(usize, BigInt)>>> = Vec::new();
    let mut width: Option<usize> = None;
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        if let Some(rest) = body.strip_prefix("vars:") {
            if vars.is_some() {
                return Err(err(line, 1, "second vars header"));
            }
            let names: Vec<String> = rest.split(',').map(|s| s.trim().to_string()).collect();
            if names.iter().any(|n| n.is_empty()) {
                return Err(err(line, 1, "empty variable name"));
            }
            vars = Some(names);
            continue;
        }
        if let Some(rest) = body.strip_prefix("orientation:") {
            source_rows = match rest.trim() {
                "source-rows" => true,
                "target-rows" => false,
                other => return Err(err(line, 1, format!("unknown orientation {other:?}"))),
            };
            continue;
        }
        let names = vars.as_ref().ok_or_else(|| err(line, 1, "matrix row before the vars header"))?;
        let mut row = Vec::new();
        let mut col = raw.len() - raw.trim_start().len() + 1;
        for tok in raw.trim().split(',') {
            let lead = tok.len() - tok.trim_start().len();
            row.push(parse_entry(tok, names, line, col + lead)?);
            col += tok.chars().count() + 1;
        }
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(err(line, 1, format!("row has {} entries, expected {w}", row.len())));
            }
            _ => {}
        }
        rows.push(row);
    }
    let vars = vars.ok_or_else(|| err(1, 1, "missing vars header"))?;
    let width = width.ok_or_else(|| err(1, 1, "no matrix rows"))?;
    let (target_dim, source_dim) = if source_rows { (width, rows.len()) } else { (rows.len(), width) };
    let mut coeffs: Vec<Vec<(usize, usize, BigInt)>> = vec![Vec::new(); vars.len()];
    for (i, row) in rows.into_iter().enumerate() {
        for (j, e) in row.into_iter().enumerate() {
            if let Some((v, c)) = e {
                let (t, s) = if source_rows { (j, i) } else { (i, j) };
                coeffs[v].push((t, s, c));
            }
        }
    }
    Pencil::from_integer_entries(vars.len(), target_dim, source_dim, coeffs, vars)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_fixtures_parse() {
        let gl = fixture_parse("gl3-s2-s21").unwrap();
        assert_eq!((gl.nvars, gl.target_dim, gl.source_dim), (3, 8, 6));
        let sp = fixture_parse("sp6-l2-l3").unwrap();
        assert_eq!((sp.nvars, sp.target_dim, sp.source_dim), (6, 14, 14));
        let spin = fixture_parse("spin10-m-delta").unwrap();
        assert_eq!((spin.nvars, spin.target_dim, spin.source_dim), (16, 16, 10));
        assert!(fixture_parse("nope").is_err());
    }

    #[test]
    fn factors_and_orientation() {
        let p = parse_matrix_text("vars: a, b\n2*a, -b\n0, +a\n").unwrap();
        assert_eq!((p.target_dim, p.source_dim), (2, 2));
        assert_eq!(p.coeffs[0], vec![(0, 0, 2.into()), (1, 1, 1.into())]);
        assert_eq!(p.coeffs[1], vec![(0, 1, (-1).into())]);
        let t = parse_matrix_text("vars: a\norientation: source-rows\na, 0, 0\n").unwrap();
        assert_eq!((t.target_dim, t.source_dim), (3, 1));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_matrix_text("vars: x, y\nx, y\nx, zz\n") {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (3, 4)),
            other => panic!("{other:?}"),
        }
        match parse_matrix_text("vars: x\nx, 0\nx\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_matrix_text("x, y\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_matrix_text("vars: x\n1\n"), Err(Error::Parse { .. })));
    }
}
