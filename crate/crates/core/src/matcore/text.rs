use crate::error::{Error, Result};
use crate::matcore::matrix::BinaryMatrix;

/// Parses a file of matrices: rows of `0`/`1` characters, top row first,
/// matrices separated by blank lines. Lines starting with `#` are ignored.
pub fn parse_matrices(text: &str) -> Result<Vec<BinaryMatrix>> {
    let mut out = Vec::new();
    let mut block: Vec<&str> = Vec::new();
    let mut block_start = 0;
    let mut flush = |block: &mut Vec<&str>, start: usize| -> Result<()> {
        if block.is_empty() {
            return Ok(());
        }
        let m = BinaryMatrix::from_top_rows(block).map_err(|e| Error::Parse {
            line: start,
            msg: e.to_string(),
        })?;
        out.push(m);
        block.clear();
        Ok(())
    };
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            flush(&mut block, block_start)?;
            continue;
        }
        if let Some(c) = line.chars().find(|c| *c != '0' && *c != '1') {
            return Err(Error::Parse {
                line: n + 1,
                msg: format!("unexpected character {c:?}"),
            });
        }
        if block.is_empty() {
            block_start = n + 1;
        } else if block[0].len() != line.len() {
            return Err(Error::Parse {
                line: n + 1,
                msg: format!("row length {} differs from {}", line.len(), block[0].len()),
            });
        }
        block.push(line);
    }
    flush(&mut block, block_start)?;
    Ok(out)
}

/// Inverse of [`parse_matrices`].
pub fn format_matrices<'a>(ms: impl IntoIterator<Item = &'a BinaryMatrix>) -> String {
    let parts: Vec<String> = ms.into_iter().map(|m| m.to_string()).collect();
    parts.join("\n")
}
