//! Embedding matrix files.
//!
//! GGE1 binary layout (all little-endian):
//!
//! | offset | size           | content                        |
//! |--------|----------------|--------------------------------|
//! | 0      | 4              | magic `GGE1`                   |
//! | 4      | 8              | rows, `u64`                    |
//! | 12     | 8              | cols, `u64`                    |
//! | 20     | 8 * rows * cols| values, IEEE-754 `f64`, row-major |
//!
//! Anything not starting with the magic is read as CSV: one node per line,
//! comma-separated decimals. Blank lines and lines starting with `#` are skipped.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::embedding::EmbeddingMatrix;
use crate::error::{Error, Result};

use super::HashingReader;

pub const GGE1_MAGIC: &[u8; 4] = b"GGE1";
pub const GGE1_HEADER_LEN: u64 = 20;

/// Reads up to `buf.len()` bytes, stopping early only at end of input.
fn read_full<R: Read>(reader: &mut R, buf: &mut [u8]) -> Result<usize> {
    let mut filled = 0;
    while filled < buf.len() {
        match reader.read(&mut buf[filled..]) {
            Ok(0) => break,
            Ok(n) => filled += n,
            Err(e) if e.kind() == std::io::ErrorKind::Interrupted => {}
            Err(e) => return Err(Error::io("<embeddings>", e)),
        }
    }
    Ok(filled)
}

fn read_gge1_body<R: Read>(reader: &mut R) -> Result<EmbeddingMatrix> {
    let mut header = [0u8; 16];
    let got = read_full(reader, &mut header)?;
    if got < header.len() {
        return Err(Error::TruncatedFile {
            expected: GGE1_HEADER_LEN,
            actual: 4 + got as u64,
        });
    }
    let rows = u64::from_le_bytes(header[..8].try_into().unwrap());
    let cols = u64::from_le_bytes(header[8..].try_into().unwrap());
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidInput(format!(
            "GGE1 header declares an empty {rows}x{cols} matrix"
        )));
    }
    let count = rows
        .checked_mul(cols)
        .filter(|c| c.checked_mul(8).and_then(|b| b.checked_add(GGE1_HEADER_LEN)).is_some())
        .ok_or_else(|| Error::InvalidInput(format!("GGE1 header {rows}x{cols} overflows")))?;
    let expected = GGE1_HEADER_LEN + count * 8;

    // Grow the buffer as data arrives rather than trusting the header.
    let mut values: Vec<f64> = Vec::with_capacity(count.min(1 << 20) as usize);
    let mut block = vec![0u8; 1 << 16];
    let mut remaining = count * 8;
    while remaining > 0 {
        let want = remaining.min(block.len() as u64) as usize;
        let got = read_full(reader, &mut block[..want])?;
        values.extend(
            block[..got - got % 8]
                .chunks_exact(8)
                .map(|b| f64::from_le_bytes(b.try_into().unwrap())),
        );
        remaining -= got as u64;
        if got < want {
            return Err(Error::TruncatedFile {
                expected,
                actual: expected - remaining,
            });
        }
    }
    let mut probe = [0u8; 1];
    if read_full(reader, &mut probe)? > 0 {
        return Err(Error::InvalidInput(format!(
            "GGE1 file has trailing bytes after the declared {expected}"
        )));
    }
    EmbeddingMatrix::from_vec(rows as usize, cols as usize, values)
}

fn parse_csv(text: &str) -> Result<EmbeddingMatrix> {
    let mut cols = None;
    let mut rows = 0;
    let mut data = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let before = data.len();
        for field in line.split(',') {
            let field = field.trim();
            let v = field.parse::<f64>().map_err(|_| Error::Parse {
                line: idx + 1,
                msg: format!("{field:?} is not a number"),
            })?;
            if !v.is_finite() {
                return Err(Error::NonFiniteInput {
                    row: rows,
                    col: data.len() - before,
                });
            }
            data.push(v);
        }
        let width = data.len() - before;
        match cols {
            None => cols = Some(width),
            Some(c) if c != width => {
                return Err(Error::Parse {
                    line: idx + 1,
                    msg: format!("{width} values, expected {c}"),
                })
            }
            _ => {}
        }
        rows += 1;
    }
    let cols = cols.ok_or(Error::Parse {
        line: 0,
        msg: "no embedding rows".into(),
    })?;
    EmbeddingMatrix::from_vec(rows, cols, data)
}

/// Reads an embedding matrix from a stream, detecting the format from the
/// first four bytes.
pub fn read_embeddings<R: Read>(mut reader: R) -> Result<EmbeddingMatrix> {
    let mut magic = [0u8; 4];
    let got = read_full(&mut reader, &mut magic)?;
    let prefix = &magic[..got];
    if prefix == GGE1_MAGIC {
        return read_gge1_body(&mut reader);
    }
    if got > 0 && got < 4 && GGE1_MAGIC.starts_with(prefix) {
        return Err(Error::TruncatedFile {
            expected: GGE1_HEADER_LEN,
            actual: got as u64,
        });
    }
    if prefix.starts_with(b"GGE") {
        return Err(Error::BadMagic);
    }
    let mut bytes = prefix.to_vec();
    reader
        .read_to_end(&mut bytes)
        .map_err(|e| Error::io("<embeddings>", e))?;
    let text = std::str::from_utf8(&bytes).map_err(|_| Error::BadMagic)?;
    parse_csv(text)
}

pub fn decode_embeddings(bytes: &[u8]) -> Result<EmbeddingMatrix> {
    read_embeddings(bytes)
}

pub fn load_embeddings(path: impl AsRef<Path>) -> Result<EmbeddingMatrix> {
    load_embeddings_with_digest(path).map(|(z, _)| z)
}

/// Loads a matrix and returns it with the SHA-256 of the file's bytes.
pub fn load_embeddings_with_digest(path: impl AsRef<Path>) -> Result<(EmbeddingMatrix, String)> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = HashingReader::new(BufReader::new(file));
    let z = read_embeddings(&mut reader).map_err(|e| with_path(e, path))?;
    Ok((z, reader.finish()))
}

fn with_path(err: Error, path: &Path) -> Error {
    match err {
        Error::Io { source, .. } => Error::io(path, source),
        other => other,
    }
}

pub fn encode_gge1(z: &EmbeddingMatrix) -> Vec<u8> {
    let mut out = Vec::with_capacity(GGE1_HEADER_LEN as usize + z.byte_size());
    out.extend_from_slice(GGE1_MAGIC);
    out.extend_from_slice(&(z.rows() as u64).to_le_bytes());
    out.extend_from_slice(&(z.cols() as u64).to_le_bytes());
    for v in z.as_slice() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

/// CSV text with shortest round-trip decimal representations.
pub fn encode_csv(z: &EmbeddingMatrix) -> String {
    let mut out = String::new();
    for row in z.row_iter() {
        let line: Vec<String> = row.iter().map(|v| format!("{v:?}")).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn write_gge1(path: impl AsRef<Path>, z: &EmbeddingMatrix) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    let write = |w: &mut BufWriter<File>| -> std::io::Result<()> {
        w.write_all(GGE1_MAGIC)?;
        w.write_all(&(z.rows() as u64).to_le_bytes())?;
        w.write_all(&(z.cols() as u64).to_le_bytes())?;
        for v in z.as_slice() {
            w.write_all(&v.to_le_bytes())?;
        }
        w.flush()
    };
    write(&mut w).map_err(|e| Error::io(path, e))
}

pub fn write_csv(path: impl AsRef<Path>, z: &EmbeddingMatrix) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, encode_csv(z)).map_err(|e| Error::io(path, e))
}
