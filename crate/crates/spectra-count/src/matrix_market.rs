//! Matrix Market reader for square Hermitian matrices.
//!
//! Supported headers: `matrix coordinate` and `matrix array`, with field
//! `real`, `integer` or `complex` and symmetry `general`, `symmetric` or
//! `hermitian`. Symmetric and Hermitian files store one triangle; the other
//! is filled in (transposed, or conjugate-transposed for `hermitian`).

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use spectra_core::linalg::HermitianOperator;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Coordinate,
    Array,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Field {
    Real,
    Complex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Symmetry {
    General,
    Symmetric,
    Hermitian,
}

pub fn read_matrix_market(path: impl AsRef<Path>) -> Result<HermitianOperator> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_matrix_market(&text)
}

pub fn parse_matrix_market(text: &str) -> Result<HermitianOperator> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (header_line, header) = lines.next().ok_or_else(|| Error::parse(1, "empty file"))?;
    let (format, field, symmetry) = parse_header(header_line, header)?;

    let mut data = lines.filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('%')
    });
    let (size_line, size) = data.next().ok_or_else(|| Error::parse(header_line, "missing size line"))?;
    let sizes: Vec<usize> = size
        .split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| Error::parse(size_line, format!("bad size '{t}'"))))
        .collect::<Result<_>>()?;
    let expected_sizes = if format == Format::Coordinate { 3 } else { 2 };
    if sizes.len() != expected_sizes {
        return Err(Error::parse(size_line, format!("expected {expected_sizes} size fields")));
    }
    let (rows, cols) = (sizes[0], sizes[1]);
    if rows != cols {
        return Err(Error::parse(size_line, format!("matrix is {rows}x{cols}, not square")));
    }
    if rows == 0 {
        return Err(Error::parse(size_line, "matrix has no rows"));
    }
    let n = rows;
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    let mut place = |i: usize, j: usize, value: Complex64| {
        entries[i * n + j] = value;
        if i != j {
            match symmetry {
                Symmetry::General => {}
                Symmetry::Symmetric => entries[j * n + i] = value,
                Symmetry::Hermitian => entries[j * n + i] = value.conj(),
            }
        }
    };

    match format {
        Format::Coordinate => {
            let nnz = sizes[2];
            let mut seen = 0;
            for (line, text) in data.by_ref() {
                if seen == nnz {
                    return Err(Error::parse(line, "more entries than declared"));
                }
                let tokens: Vec<&str> = text.split_whitespace().collect();
                let want = if field == Field::Complex { 4 } else { 3 };
                if tokens.len() != want {
                    return Err(Error::parse(line, format!("expected {want} fields, got {}", tokens.len())));
                }
                let i = parse_index(line, tokens[0], n)?;
                let j = parse_index(line, tokens[1], n)?;
                if symmetry != Symmetry::General && j > i {
                    return Err(Error::parse(line, "entry above the diagonal in a symmetric file"));
                }
                let value = parse_value(line, &tokens[2..], field)?;
                place(i, j, value);
                seen += 1;
            }
            if seen != nnz {
                return Err(Error::parse(size_line, format!("declared {nnz} entries, found {seen}")));
            }
        }
        Format::Array => {
            // column-major; symmetric files list the lower triangle only
            let positions: Vec<(usize, usize)> = (0..n)
                .flat_map(|j| {
                    let start = if symmetry == Symmetry::General { 0 } else { j };
                    (start..n).map(move |i| (i, j))
                })
                .collect();
            let mut it = positions.iter();
            for (line, text) in data.by_ref() {
                let &(i, j) = it.next().ok_or_else(|| Error::parse(line, "more values than the matrix holds"))?;
                let tokens: Vec<&str> = text.split_whitespace().collect();
                let value = parse_value(line, &tokens, field)?;
                place(i, j, value);
            }
            if it.next().is_some() {
                return Err(Error::parse(size_line, "fewer values than the matrix holds"));
            }
        }
    }
    Ok(HermitianOperator::from_row_major(n, entries)?)
}

fn parse_header(line: usize, header: &str) -> Result<(Format, Field, Symmetry)> {
    let tokens: Vec<String> = header.split_whitespace().map(str::to_ascii_lowercase).collect();
    if tokens.len() != 5 || tokens[0] != "%%matrixmarket" || tokens[1] != "matrix" {
        return Err(Error::parse(line, "expected '%%MatrixMarket matrix <format> <field> <symmetry>'"));
    }
    let format = match tokens[2].as_str() {
        "coordinate" => Format::Coordinate,
        "array" => Format::Array,
        other => return Err(Error::parse(line, format!("unsupported format '{other}'"))),
    };
    let field = match tokens[3].as_str() {
        "real" | "integer" | "double" => Field::Real,
        "complex" => Field::Complex,
        other => return Err(Error::parse(line, format!("unsupported field '{other}'"))),
    };
    let symmetry = match tokens[4].as_str() {
        "general" => Symmetry::General,
        "symmetric" => Symmetry::Symmetric,
        "hermitian" => Symmetry::Hermitian,
        other => return Err(Error::parse(line, format!("unsupported symmetry '{other}'"))),
    };
    if symmetry == Symmetry::Hermitian && field != Field::Complex {
        return Err(Error::parse(line, "hermitian symmetry requires the complex field"));
    }
    Ok((format, field, symmetry))
}

fn parse_index(line: usize, token: &str, n: usize) -> Result<usize> {
    let idx: usize = token.parse().map_err(|_| Error::parse(line, format!("bad index '{token}'")))?;
    if idx == 0 || idx > n {
        return Err(Error::parse(line, format!("index {idx} outside 1..={n}")));
    }
    Ok(idx - 1)
}

fn parse_value(line: usize, tokens: &[&str], field: Field) -> Result<Complex64> {
    let num = |t: &str| t.parse::<f64>().map_err(|_| Error::parse(line, format!("bad number '{t}'")));
    match (field, tokens) {
        (Field::Real, [re]) => Ok(Complex64::new(num(re)?, 0.0)),
        (Field::Complex, [re, im]) => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(Error::parse(line, format!("wrong number of value fields ({})", tokens.len()))),
    }
}

/// Writes `diag(values)` as a real symmetric coordinate file.
pub fn format_real_diagonal(values: &[f64]) -> String {
    let n = values.len();
    let mut out = format!("%%MatrixMarket matrix coordinate real symmetric\n{n} {n} {n}\n");
    for (i, v) in values.iter().enumerate() {
        out.push_str(&format!("{} {} {v:e}\n", i + 1, i + 1));
    }
    out
}
