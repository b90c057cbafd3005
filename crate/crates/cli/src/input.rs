use std::fs;
use std::io::{self, Read};

use crate::CliError;

/// Entries from the command line. A lone `-` reads them from stdin; commas
/// and whitespace both separate entries.
pub fn sequence(args: &[String]) -> Result<Vec<u64>, CliError> {
    let text = if args.len() == 1 && args[0] == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| CliError::usage(format!("reading stdin: {e}")))?;
        s
    } else {
        args.join(" ")
    };
    parse_entries(&text)
}

pub fn parse_entries(text: &str) -> Result<Vec<u64>, CliError> {
    let entries = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| match t.parse::<u64>() {
            Ok(v) if v > 0 => Ok(v),
            _ => Err(CliError::usage(format!("entries must be positive integers, got {t:?}"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    if entries.is_empty() {
        return Err(CliError::usage("empty sequence"));
    }
    Ok(entries)
}

/// File contents, or stdin for `-`.
pub fn document(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| CliError::usage(format!("reading stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::usage(format!("{path}: {e}")))
    }
}

pub fn peel_cap() -> Result<Option<usize>, CliError> {
    match std::env::var("FRIEZE_PEEL_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::usage(format!("FRIEZE_PEEL_CAP must be a nonnegative integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn separators() {
        assert_eq!(parse_entries("4,1, 5\n1").unwrap(), vec![4, 1, 5, 1]);
        assert!(parse_entries("2 0").is_err());
        assert!(parse_entries("2 x").is_err());
        assert!(parse_entries(" ").is_err());
    }
}
