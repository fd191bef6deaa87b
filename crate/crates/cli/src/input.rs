use std::io::Read;

use cadproj::poly::parse_poly_file;
use cadproj::{Polynomial, VarOrder};

use crate::error::CliError;

/// One polynomial text per file, or the `;`-separated pieces of stdin.
pub fn read_texts(files: &[String]) -> Result<Vec<String>, CliError> {
    if files.is_empty() || files == ["-"] {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Usage(format!("reading stdin: {e}")))?;
        let s = strip_comments(&s);
        return Ok(s
            .split(';')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(String::from)
            .collect());
    }
    files.iter().map(|f| read_file(f)).collect()
}

pub fn read_file(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Usage(format!("reading stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{path}: {e}")))
}

fn strip_comments(s: &str) -> String {
    s.lines().map(|l| l.split('#').next().unwrap_or("")).collect::<Vec<_>>().join("\n")
}

/// Identifiers occurring in polynomial texts.
fn identifiers(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut in_number = false;
    for ch in strip_comments(text).chars().chain(std::iter::once(' ')) {
        if ch.is_ascii_alphanumeric() || ch == '_' {
            if cur.is_empty() && ch.is_ascii_digit() {
                in_number = true;
            }
            if !in_number {
                cur.push(ch);
            }
        } else {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
            in_number = false;
        }
    }
    out
}

/// The explicit order, or every variable of `texts` and `extra` in reverse
/// alphabetical order.
pub fn resolve_order(explicit: Option<&[String]>, texts: &[String], extra: &[String]) -> Result<VarOrder, CliError> {
    if let Some(vs) = explicit {
        return Ok(VarOrder::new(vs.iter().map(String::as_str))?);
    }
    let mut vs: Vec<String> = texts.iter().flat_map(|t| identifiers(t)).chain(extra.iter().cloned()).collect();
    vs.sort_unstable_by(|a, b| b.cmp(a));
    vs.dedup();
    if vs.is_empty() {
        vs.push("x".into());
    }
    Ok(VarOrder::new(vs.iter().map(String::as_str))?)
}

pub struct Inputs {
    pub polys: Vec<Polynomial>,
    pub order: VarOrder,
}

pub fn load(files: &[String], explicit: Option<&[String]>, extra: &[String]) -> Result<Inputs, CliError> {
    let texts = read_texts(files)?;
    let order = resolve_order(explicit, &texts, extra)?;
    let polys = texts
        .iter()
        .map(|t| parse_poly_file(t, &order))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Inputs { polys, order })
}

/// As [`load`], insisting on exactly `n` polynomials.
pub fn load_n(files: &[String], explicit: Option<&[String]>, extra: &[String], n: usize) -> Result<Inputs, CliError> {
    let inputs = load(files, explicit, extra)?;
    if inputs.polys.len() != n {
        return Err(CliError::Usage(format!("expected {n} polynomial(s), got {}", inputs.polys.len())));
    }
    Ok(inputs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identifiers_skip_numbers_and_comments() {
        assert_eq!(identifiers("3*x1^2 + y # z\n - 2*e"), vec!["x1", "y", "e"]);
    }

    #[test]
    fn default_order_is_reverse_alphabetical() {
        let o = resolve_order(None, &["x + z".into(), "y".into()], &[]).unwrap();
        assert_eq!(o.vars(), ["z", "y", "x"]);
    }
}
