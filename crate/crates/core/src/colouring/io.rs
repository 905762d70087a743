//! Colouring file format: one `vertex colour` pair per line, 0-indexed
//! vertices, colours >= 1, `#` comments; absent vertices stay uncoloured.

use super::{ColouringError, PartialColouring};
use std::fmt::Write as _;
use std::path::Path;

pub fn read_colouring(path: &Path, n: usize) -> Result<PartialColouring, ColouringError> {
    let text = std::fs::read_to_string(path).map_err(|source| ColouringError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_colouring(&path.display().to_string(), &text, n)
}

pub fn write_colouring(c: &PartialColouring, path: &Path) -> Result<(), ColouringError> {
    let mut out = String::new();
    for (v, &slot) in c.as_slots().iter().enumerate() {
        if slot != 0 {
            writeln!(out, "{v} {slot}").unwrap();
        }
    }
    std::fs::write(path, out).map_err(|source| ColouringError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub(crate) fn parse_colouring(
    name: &str,
    text: &str,
    n: usize,
) -> Result<PartialColouring, ColouringError> {
    let mut colouring = PartialColouring::new(n);
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let mut it = line.split_ascii_whitespace();
        let v: usize = parse_field(name, lineno, it.next())?;
        let colour: u64 = parse_field(name, lineno, it.next())?;
        if it.next().is_some() {
            return Err(parse_err(name, lineno, "expected 'vertex colour'"));
        }
        if v >= n {
            return Err(parse_err(name, lineno, &format!("vertex {v} out of range 0..{n}")));
        }
        if colour == 0 || colour > u64::from(u32::MAX) {
            return Err(parse_err(name, lineno, &format!("colour {colour} out of range")));
        }
        colouring.set(v, colour as u32);
    }
    Ok(colouring)
}

fn parse_field<T: std::str::FromStr>(
    name: &str,
    line: usize,
    token: Option<&str>,
) -> Result<T, ColouringError> {
    let token = token.ok_or_else(|| parse_err(name, line, "missing field"))?;
    token
        .parse()
        .map_err(|_| parse_err(name, line, &format!("invalid integer '{token}'")))
}

fn parse_err(name: &str, line: usize, reason: &str) -> ColouringError {
    ColouringError::Parse {
        path: name.to_string(),
        line,
        reason: reason.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_partial_assignment() {
        let c = parse_colouring("t", "0 3\n2 1\n# comment\n", 4).unwrap();
        assert_eq!(c.get(0), Some(3));
        assert_eq!(c.get(1), None);
        assert_eq!(c.get(2), Some(1));
        assert_eq!(c.get(3), None);
    }

    #[test]
    fn rejects_zero_colour_and_range() {
        assert!(parse_colouring("t", "0 0\n", 2).is_err());
        assert!(parse_colouring("t", "5 1\n", 2).is_err());
    }
}
