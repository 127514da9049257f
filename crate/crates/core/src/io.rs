//! Matrix file formats.
//!
//! Text: one matrix per block, each row a string over `{0,1}`, blocks
//! separated by a blank line, optionally led by a `# m n` header line.
//! JSON: `{"rows": m, "cols": n, "data": ["0101", ...]}`, an array of such
//! objects, or one object per line.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::BinaryMatrix;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<String>,
}

impl From<&BinaryMatrix> for MatrixJson {
    fn from(a: &BinaryMatrix) -> Self {
        MatrixJson {
            rows: a.rows(),
            cols: a.cols(),
            data: a.row_strings(),
        }
    }
}

impl TryFrom<MatrixJson> for BinaryMatrix {
    type Error = Error;

    fn try_from(j: MatrixJson) -> Result<Self> {
        let a = BinaryMatrix::from_strs(&j.data)?;
        if a.dims() != (j.rows, j.cols) {
            return Err(Error::DimensionMismatch {
                expected: (j.rows, j.cols),
                found: a.dims(),
            });
        }
        Ok(a)
    }
}

/// Parses either format, detected from the first non-blank character.
pub fn parse_matrices(input: &str) -> Result<Vec<BinaryMatrix>> {
    match input.trim_start().chars().next() {
        Some('{') | Some('[') => parse_json(input),
        _ => parse_text(input),
    }
}

/// Accepts a single object, an array of objects, or a stream of
/// whitespace-separated objects (one per line).
pub fn parse_json(input: &str) -> Result<Vec<BinaryMatrix>> {
    let mut items: Vec<MatrixJson> = Vec::new();
    for value in serde_json::Deserializer::from_str(input).into_iter::<serde_json::Value>() {
        let value = value?;
        if value.is_array() {
            items.extend(serde_json::from_value::<Vec<MatrixJson>>(value)?);
        } else {
            items.push(serde_json::from_value(value)?);
        }
    }
    items.into_iter().map(BinaryMatrix::try_from).collect()
}

pub fn parse_text(input: &str) -> Result<Vec<BinaryMatrix>> {
    let mut out = Vec::new();
    let mut rows: Vec<&str> = Vec::new();
    let mut header: Option<(usize, usize, usize)> = None;
    let mut start_line = 1;

    let mut flush = |rows: &mut Vec<&str>,
                     header: &mut Option<(usize, usize, usize)>,
                     start: usize|
     -> Result<()> {
        if rows.is_empty() {
            if let Some((line, _, _)) = header.take() {
                return Err(Error::Parse {
                    line,
                    msg: "header without matrix rows".into(),
                });
            }
            return Ok(());
        }
        let a = BinaryMatrix::from_strs(rows).map_err(|e| match e {
            Error::Parse { line, msg } => Error::Parse {
                line: start + line - 1,
                msg,
            },
            other => other,
        })?;
        if let Some((line, m, n)) = header.take() {
            if a.dims() != (m, n) {
                return Err(Error::Parse {
                    line,
                    msg: format!(
                        "header declares {m}x{n}, block is {}x{}",
                        a.rows(),
                        a.cols()
                    ),
                });
            }
        }
        out.push(a);
        rows.clear();
        Ok(())
    };

    for (idx, line) in input.lines().enumerate() {
        let lineno = idx + 1;
        let t = line.trim();
        if t.is_empty() {
            flush(&mut rows, &mut header, start_line)?;
            continue;
        }
        if let Some(rest) = t.strip_prefix('#') {
            if !rows.is_empty() {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "header line inside a matrix block".into(),
                });
            }
            let dims: Vec<usize> = rest
                .split_whitespace()
                .map(str::parse)
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("malformed header {t:?}"),
                })?;
            if dims.len() != 2 {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("header must be '# m n', got {t:?}"),
                });
            }
            header = Some((lineno, dims[0], dims[1]));
            continue;
        }
        if rows.is_empty() {
            start_line = lineno;
        }
        rows.push(t);
    }
    flush(&mut rows, &mut header, start_line)?;
    Ok(out)
}

/// Writes one matrix block; the caller separates blocks.
pub fn write_matrix<W: Write + ?Sized>(w: &mut W, a: &BinaryMatrix) -> std::io::Result<()> {
    for row in a.row_strings() {
        writeln!(w, "{row}")?;
    }
    Ok(())
}

/// Streams matrices in the text format, blank line between blocks.
pub struct TextWriter<W: Write> {
    inner: W,
    written: u64,
}

impl<W: Write> TextWriter<W> {
    pub fn new(inner: W) -> Self {
        TextWriter { inner, written: 0 }
    }

    pub fn write(&mut self, a: &BinaryMatrix) -> std::io::Result<()> {
        if self.written > 0 {
            writeln!(self.inner)?;
        }
        write_matrix(&mut self.inner, a)?;
        self.written += 1;
        Ok(())
    }

    pub fn count(&self) -> u64 {
        self.written
    }

    pub fn into_inner(self) -> W {
        self.inner
    }
}

pub fn to_text(members: &[BinaryMatrix]) -> String {
    let mut w = TextWriter::new(Vec::new());
    for a in members {
        w.write(a).expect("writing to a Vec cannot fail");
    }
    String::from_utf8(w.into_inner()).expect("matrix text is ASCII")
}

pub fn to_json(members: &[BinaryMatrix]) -> Result<String> {
    let items: Vec<MatrixJson> = members.iter().map(MatrixJson::from).collect();
    Ok(serde_json::to_string(&items)?)
}
