//! Plain-text formats.
//!
//! * `.ckt`: `matroid <n> circuits`, then one 1-based circuit per line.
//! * `.lift`: a `base` line followed by a `.ckt` body, then an `overlay` line
//!   followed by a `.ckt` body over the base circuits in canonical order.
//! * `.gfm`: `gf <p> <rows> <cols>`, then the rows.
//! * `.grp`: `group <k>`, the element names, then the Cayley table by name.
//!
//! `#` starts a comment; blank lines are ignored. Parse errors carry the
//! 1-based line number.

use std::fmt::Write as _;

use crate::bits::{from_one_based, to_one_based};
use crate::error::{Error, Result};
use crate::gain::{group_from_table, FinGroup, GainGraph};
use crate::gf::{GfMatrix, PrimeField};
use crate::lifts::LiftSpec;
use crate::matroid::Matroid;

type Line<'a> = (usize, &'a str);

fn content_lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn number<T: std::str::FromStr>(line: usize, token: &str) -> Result<T> {
    token.parse().map_err(|_| parse_err(line, format!("expected a number, found '{token}'")))
}

fn header<'a>(lines: &[Line<'a>], keyword: &str, what: &str) -> Result<(usize, Vec<&'a str>)> {
    let &(no, text) = lines.first().ok_or_else(|| parse_err(0, format!("missing '{keyword}' header")))?;
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.first() != Some(&keyword) {
        return Err(parse_err(no, format!("expected '{what}'")));
    }
    Ok((no, tokens))
}

fn matroid_from_lines(lines: &[Line<'_>]) -> Result<Matroid> {
    let (no, tokens) = header(lines, "matroid", "matroid <n> circuits")?;
    if tokens.len() != 3 || tokens[2] != "circuits" {
        return Err(parse_err(no, "expected 'matroid <n> circuits'"));
    }
    let n: usize = number(no, tokens[1])?;
    if n == 0 || n > 64 {
        return Err(parse_err(no, format!("ground size {n} must be between 1 and 64")));
    }
    let mut circuits = Vec::new();
    for &(no, text) in &lines[1..] {
        let labels = text.split_whitespace().map(|t| number(no, t)).collect::<Result<Vec<usize>>>()?;
        let set = from_one_based(&labels, n).map_err(|e| parse_err(no, e.to_string()))?;
        circuits.push(set);
    }
    Matroid::from_circuits(n, circuits)
}

pub fn parse_matroid(text: &str) -> Result<Matroid> {
    matroid_from_lines(&content_lines(text))
}

pub fn emit_matroid(m: &Matroid) -> String {
    let mut out = format!("matroid {} circuits\n", m.n());
    for &c in m.circuits() {
        let labels: Vec<String> = to_one_based(c).iter().map(|x| x.to_string()).collect();
        writeln!(out, "{}", labels.join(" ")).unwrap();
    }
    out
}

pub fn parse_lift(text: &str) -> Result<LiftSpec> {
    let lines = content_lines(text);
    let base_at = lines.iter().position(|&(_, l)| l == "base");
    let overlay_at = lines.iter().position(|&(_, l)| l == "overlay");
    let (Some(b), Some(o)) = (base_at, overlay_at) else {
        return Err(parse_err(lines.first().map_or(0, |l| l.0), "expected 'base' and 'overlay' sections"));
    };
    if b != 0 || o < b {
        return Err(parse_err(lines[0].0, "the 'base' section must come first"));
    }
    let base = matroid_from_lines(&lines[b + 1..o])?;
    let overlay = matroid_from_lines(&lines[o + 1..])?;
    LiftSpec::new(base, overlay)
}

pub fn emit_lift(spec: &LiftSpec) -> String {
    format!("base\n{}overlay\n{}", emit_matroid(spec.base()), emit_matroid(spec.overlay()))
}

pub fn parse_matrix(text: &str) -> Result<GfMatrix> {
    let lines = content_lines(text);
    let (no, tokens) = header(&lines, "gf", "gf <p> <rows> <cols>")?;
    if tokens.len() != 4 {
        return Err(parse_err(no, "expected 'gf <p> <rows> <cols>'"));
    }
    let p: u32 = number(no, tokens[1])?;
    let rows: usize = number(no, tokens[2])?;
    let cols: usize = number(no, tokens[3])?;
    let field = PrimeField::new(p).map_err(|e| parse_err(no, e.to_string()))?;
    if rows == 0 || cols == 0 || cols > 64 {
        return Err(parse_err(no, "need at least one row and between 1 and 64 columns"));
    }
    let body = &lines[1..];
    if body.len() != rows {
        let at = body.get(rows).map_or(no, |l| l.0);
        return Err(parse_err(at, format!("expected {rows} rows, found {}", body.len())));
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for &(no, text) in body {
        let row = text.split_whitespace().map(|t| number(no, t)).collect::<Result<Vec<i64>>>()?;
        if row.len() != cols {
            return Err(parse_err(no, format!("expected {cols} entries, found {}", row.len())));
        }
        entries.extend(row);
    }
    GfMatrix::new(field, rows, cols, &entries)
}

pub fn emit_matrix(a: &GfMatrix) -> String {
    let mut out = format!("gf {} {} {}\n", a.field().order(), a.rows(), a.cols());
    for r in 0..a.rows() {
        let row: Vec<String> = a.row(r).iter().map(|x| x.to_string()).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

pub fn parse_group(text: &str) -> Result<FinGroup> {
    let lines = content_lines(text);
    let (no, tokens) = header(&lines, "group", "group <k>")?;
    if tokens.len() != 2 {
        return Err(parse_err(no, "expected 'group <k>'"));
    }
    let k: usize = number(no, tokens[1])?;
    if lines.len() != k + 2 {
        return Err(parse_err(no, format!("expected a names line and {k} table rows")));
    }
    let (names_no, names_line) = lines[1];
    let names: Vec<String> = names_line.split_whitespace().map(str::to_string).collect();
    if names.len() != k {
        return Err(parse_err(names_no, format!("expected {k} element names, found {}", names.len())));
    }
    let mut table = Vec::with_capacity(k);
    for &(no, text) in &lines[2..] {
        let row = text
            .split_whitespace()
            .map(|t| names.iter().position(|n| n == t).ok_or_else(|| parse_err(no, format!("unknown element '{t}'"))))
            .collect::<Result<Vec<usize>>>()?;
        if row.len() != k {
            return Err(parse_err(no, format!("expected {k} entries, found {}", row.len())));
        }
        table.push(row);
    }
    group_from_table(names, table)
}

pub fn emit_group(g: &FinGroup) -> String {
    let mut out = format!("group {}\n{}\n", g.order(), g.names().join(" "));
    for row in g.table_rows() {
        let names: Vec<&str> = row.iter().map(|&x| g.name(x)).collect();
        writeln!(out, "{}", names.join(" ")).unwrap();
    }
    out
}

/// One `i j label` line per edge of `set`, vertices 1-based.
pub fn emit_gain_edges(gg: &GainGraph, set: u64) -> String {
    let mut out = String::new();
    for e in gg.edges(set) {
        writeln!(out, "{} {} {}", e.i + 1, e.j + 1, gg.group().name(e.label)).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn u24_parses() {
        let text = "# four points on a line\nmatroid 4 circuits\n1 2 3\n1 2 4\n1 3 4\n2 3 4\n";
        assert_eq!(parse_matroid(text).unwrap(), Matroid::uniform(2, 4).unwrap());
    }

    #[test]
    fn contained_circuits_rejected() {
        let err = parse_matroid("matroid 3 circuits\n1 2\n1 2 3\n").unwrap_err();
        assert!(matches!(err, Error::InvalidCircuits(_)));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_matroid("matroid 3 circuits\n1 2\n\n1 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }));
        let err = parse_matroid("matroid 3 circuits\n1 4\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(matches!(parse_matroid("circuits 3\n").unwrap_err(), Error::Parse { line: 1, .. }));
        assert!(matches!(parse_matroid("matroid 0 circuits\n").unwrap_err(), Error::Parse { line: 1, .. }));
    }

    #[test]
    fn z4_group_file() {
        let text = "group 4\n0 1 2 3\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n";
        let g = parse_group(text).unwrap();
        assert_eq!(g, FinGroup::cyclic(4).unwrap());
        assert_eq!(emit_group(&g), text);
    }

    #[test]
    fn matrix_round_trip() {
        let text = "gf 3 2 3\n1 0 2\n0 1 1\n";
        let a = parse_matrix(text).unwrap();
        assert_eq!(emit_matrix(&a), text);
        assert_eq!(parse_matrix("gf 3 2 3\n1 0 -1\n0 1 1\n").unwrap(), a);
        assert!(matches!(parse_matrix("gf 4 1 1\n1\n").unwrap_err(), Error::Parse { line: 1, .. }));
        assert!(matches!(parse_matrix("gf 3 1 2\n1 0 1\n").unwrap_err(), Error::Parse { line: 2, .. }));
    }

    #[test]
    fn lift_file() {
        let text = "base\nmatroid 3 circuits\n1 2 3\noverlay\nmatroid 1 circuits\n";
        let spec = parse_lift(text).unwrap();
        assert_eq!(spec.base(), &Matroid::uniform(2, 3).unwrap());
        assert_eq!(emit_lift(&spec), text);
        assert!(parse_lift("base\nmatroid 3 circuits\n1 2 3\noverlay\nmatroid 2 circuits\n").is_err());
    }
}
