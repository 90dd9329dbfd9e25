//! Reading matrices and vectors: JSON arrays whose entries are integers or
//! `"p/q"` strings.

use std::fs;
use std::io::Read;
use std::path::Path;

use anyhow::{Context, Result};
use partial_polytopes::{RatMatrix, RatVector};
use serde::de::DeserializeOwned;

/// Reads all of stdin, or a file; `-` means stdin.
pub fn read_source(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) if p != Path::new("-") => {
            fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
        }
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .context("reading stdin")?;
            Ok(s)
        }
    }
}

fn parse<T: DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).with_context(|| format!("parsing {what}"))
}

pub fn matrix(path: Option<&Path>) -> Result<RatMatrix> {
    parse(&read_source(path)?, "matrix")
}

pub fn vector(path: Option<&Path>) -> Result<RatVector> {
    parse(&read_source(path)?, "vector")
}

#[cfg(test)]
mod tests {
    use super::*;
    use partial_polytopes::Rational;

    #[test]
    fn mixed_entries() {
        let x: RatMatrix = parse(r#"[[1, "1/2"], ["-2/4", 0]]"#, "matrix").unwrap();
        assert_eq!(x.get(1, 0), &Rational::frac(-1, 2));
        let v: RatVector = parse(r#"["3/9", 2]"#, "vector").unwrap();
        assert_eq!(v, vec![Rational::frac(1, 3), Rational::from(2)]);
        assert!(parse::<RatMatrix>("[[1, 2], [3]]", "matrix").is_err());
        assert!(parse::<RatVector>(r#"["1,5"]"#, "vector").is_err());
    }
}
