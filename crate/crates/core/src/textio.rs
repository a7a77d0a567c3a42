//! The line-based text format shared by input files and fixtures.
//!
//! ```text
//! # comment
//! ring x0 x1 x2
//! ideal
//! x0*x1 - x2^2
//! polys quadrics
//! x0^2
//! matrix d2 2 2
//! x0, .
//! 0, -x1
//! exterior D 1 2 2 factor 2
//! x0^x1, -x1^x2
//! ```
//!
//! `ideal` and `polys NAME` blocks run until the next keyword line; matrix
//! blocks hold exactly the declared number of rows. `.` and `0` denote zero.

use std::sync::Arc;

use crate::exterior::{ExteriorElement, ExteriorMatrix};
use crate::matrix::PolyMatrix;
use crate::ring::{parse_polynomial, Coeff, MonomialOrder, PolyRing, Polynomial};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct InputError {
    pub line: usize,
    pub msg: String,
}

fn err(line: usize, msg: impl Into<String>) -> InputError {
    InputError { line, msg: msg.into() }
}

/// A parsed document: the ring plus named polynomial lists and matrices.
#[derive(Debug, Clone)]
pub struct Document {
    pub ring: Arc<PolyRing>,
    pub ideal: Option<Vec<Polynomial>>,
    pub polys: Vec<(String, Vec<Polynomial>)>,
    pub matrices: Vec<(String, PolyMatrix)>,
    pub exteriors: Vec<(String, ExteriorMatrix)>,
}

impl Document {
    pub fn polys(&self, name: &str) -> Option<&[Polynomial]> {
        self.polys.iter().find(|(n, _)| n == name).map(|(_, v)| v.as_slice())
    }

    pub fn matrix(&self, name: &str) -> Option<&PolyMatrix> {
        self.matrices.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn exterior(&self, name: &str) -> Option<&ExteriorMatrix> {
        self.exteriors.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }
}

const KEYWORDS: [&str; 5] = ["ring", "ideal", "polys", "matrix", "exterior"];

fn is_keyword(line: &str) -> bool {
    line.split_whitespace().next().is_some_and(|w| KEYWORDS.contains(&w))
}

fn is_zero_token(s: &str) -> bool {
    matches!(s.trim(), "." | "0")
}

fn parse_count(tok: Option<&str>, line: usize, what: &str) -> Result<usize, InputError> {
    tok.and_then(|t| t.parse().ok())
        .ok_or_else(|| err(line, format!("expected {what}")))
}

/// Parses a document in the given monomial order.
pub fn parse_document(text: &str, order: MonomialOrder) -> Result<Document, InputError> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let Some(&(first_no, first)) = lines.first() else {
        return Err(err(0, "empty input"));
    };
    let mut words = first.split_whitespace();
    if words.next() != Some("ring") {
        return Err(err(first_no, "expected a `ring` declaration first"));
    }
    let vars: Vec<&str> = words.collect();
    if vars.is_empty() {
        return Err(err(first_no, "ring declares no variables"));
    }
    let ring = PolyRing::new(&vars, order).map_err(|e| err(first_no, e.to_string()))?;
    let mut doc = Document {
        ring: ring.clone(),
        ideal: None,
        polys: Vec::new(),
        matrices: Vec::new(),
        exteriors: Vec::new(),
    };
    let poly = |no: usize, s: &str| -> Result<Polynomial, InputError> {
        if is_zero_token(s) {
            return Ok(Polynomial::zero(&ring));
        }
        parse_polynomial(s.trim(), &ring).map_err(|e| err(no, e.to_string()))
    };
    let mut pos = 1;
    while pos < lines.len() {
        let (no, line) = lines[pos];
        let mut words = line.split_whitespace();
        let kw = words.next().unwrap_or("");
        pos += 1;
        match kw {
            "ideal" | "polys" => {
                let name = if kw == "ideal" {
                    "ideal".to_string()
                } else {
                    words.next().ok_or_else(|| err(no, "polys block needs a name"))?.to_string()
                };
                let mut list = Vec::new();
                while pos < lines.len() && !is_keyword(lines[pos].1) {
                    list.push(poly(lines[pos].0, lines[pos].1)?);
                    pos += 1;
                }
                if kw == "ideal" {
                    if doc.ideal.is_some() {
                        return Err(err(no, "more than one ideal block"));
                    }
                    doc.ideal = Some(list);
                } else {
                    doc.polys.push((name, list));
                }
            }
            "matrix" | "exterior" => {
                let name = words.next().ok_or_else(|| err(no, "matrix block needs a name"))?.to_string();
                let rows = parse_count(words.next(), no, "a row count")?;
                let cols = parse_count(words.next(), no, "a column count")?;
                let degree = if kw == "exterior" {
                    parse_count(words.next(), no, "an exterior degree")?
                } else {
                    0
                };
                let factor = match words.next() {
                    None => Coeff::from_integer(1.into()),
                    Some("factor") => {
                        let f = words.next().ok_or_else(|| err(no, "factor needs a value"))?;
                        f.parse::<Coeff>().map_err(|_| err(no, "bad factor"))?
                    }
                    Some(w) => return Err(err(no, format!("unexpected `{w}`"))),
                };
                if pos + rows > lines.len() {
                    return Err(err(no, "matrix ends early"));
                }
                let mut cells: Vec<Vec<(usize, String)>> = Vec::with_capacity(rows);
                for &(rno, rline) in &lines[pos..pos + rows] {
                    let row: Vec<(usize, String)> = rline.split(',').map(|s| (rno, s.trim().to_string())).collect();
                    if row.len() != cols {
                        return Err(err(rno, format!("expected {cols} entries, found {}", row.len())));
                    }
                    cells.push(row);
                }
                pos += rows;
                if kw == "matrix" {
                    let mut parsed = Vec::with_capacity(rows);
                    for row in &cells {
                        let mut r = Vec::with_capacity(cols);
                        for (rno, s) in row {
                            r.push(poly(*rno, s)?.scale(&factor));
                        }
                        parsed.push(r);
                    }
                    doc.matrices.push((name, PolyMatrix::from_rows(&ring, parsed, cols)));
                } else {
                    let mut parsed = Vec::with_capacity(rows * cols);
                    for row in &cells {
                        for (rno, s) in row {
                            let e = if is_zero_token(s) {
                                ExteriorElement::zero(&ring, degree)
                            } else {
                                ExteriorElement::parse(s, &ring, degree).map_err(|e| err(*rno, e.to_string()))?
                            };
                            parsed.push(e.scale(&factor));
                        }
                    }
                    let m = ExteriorMatrix::from_fn(&ring, degree, rows, cols, |r, c| parsed[r * cols + c].clone());
                    doc.exteriors.push((name, m));
                }
            }
            "ring" => return Err(err(no, "more than one ring declaration")),
            _ => return Err(err(no, format!("unexpected line `{line}`"))),
        }
    }
    Ok(doc)
}

/// Formats a ring and an ideal in the input format.
pub fn format_ideal(ring: &PolyRing, gens: &[Polynomial]) -> String {
    let mut s = format!("ring {}\nideal\n", ring.variables().join(" "));
    for g in gens {
        s.push_str(&format!("{g}\n"));
    }
    s
}

/// Formats a polynomial matrix in the `matrix` block format.
pub fn format_matrix(name: &str, m: &PolyMatrix) -> String {
    let mut s = format!("matrix {name} {} {}\n", m.nrows(), m.ncols());
    for r in 0..m.nrows() {
        let row: Vec<String> = m
            .row(r)
            .iter()
            .map(|p| if p.is_zero() { ".".to_string() } else { p.to_string() })
            .collect();
        s.push_str(&row.join(", "));
        s.push('\n');
    }
    s
}

/// Formats an exterior matrix in the `exterior` block format.
pub fn format_exterior(name: &str, m: &ExteriorMatrix) -> String {
    format!("exterior {name} {} {} {}\n{}", m.nrows(), m.ncols(), m.degree(), m.to_text())
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "# sample\nring x0 x1 x2\nideal\nx0*x1 - x2^2\nx0^2\n\npolys extra\nx2\nmatrix d 2 2\nx0, .\n0, -x1\nexterior D 1 2 2 factor 2\nx0^x1, -x1^x2\n";

    #[test]
    fn parses_every_block() {
        let doc = parse_document(SAMPLE, MonomialOrder::Grevlex).unwrap();
        assert_eq!(doc.ring.nvars(), 3);
        assert_eq!(doc.ideal.as_ref().unwrap().len(), 2);
        assert_eq!(doc.polys("extra").unwrap().len(), 1);
        let d = doc.matrix("d").unwrap();
        assert!(d.get(0, 1).is_zero() && d.get(1, 0).is_zero());
        assert_eq!(d.get(1, 1).to_string(), "-x1");
        let e = doc.exterior("D").unwrap();
        assert_eq!(e.get(0, 0).to_string(), "2*x0^x1");
        assert_eq!(e.get(0, 1).to_string(), "-2*x1^x2");
    }

    #[test]
    fn roundtrips_formatted_output() {
        let doc = parse_document(SAMPLE, MonomialOrder::Grevlex).unwrap();
        let text = format!(
            "{}{}{}",
            format_ideal(&doc.ring, doc.ideal.as_ref().unwrap()),
            format_matrix("d", doc.matrix("d").unwrap()),
            format_exterior("D", doc.exterior("D").unwrap())
        );
        let again = parse_document(&text, MonomialOrder::Grevlex).unwrap();
        assert_eq!(again.ideal, doc.ideal);
        assert_eq!(again.matrix("d"), doc.matrix("d"));
        assert_eq!(again.exterior("D"), doc.exterior("D"));
    }

    #[test]
    fn reports_line_numbers() {
        assert_eq!(parse_document("", MonomialOrder::Grevlex).unwrap_err().line, 0);
        assert_eq!(parse_document("ideal\nx", MonomialOrder::Grevlex).unwrap_err().line, 1);
        let e = parse_document("ring x y\nideal\nx*y\nx*z\n", MonomialOrder::Grevlex).unwrap_err();
        assert_eq!(e.line, 4);
        let e = parse_document("ring x y\nmatrix m 1 2\nx\n", MonomialOrder::Grevlex).unwrap_err();
        assert_eq!(e.line, 3);
    }
}
