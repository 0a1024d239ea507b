//! Text and JSON forms of complexes.
//!
//! Text: one facet per line, whitespace-separated vertex labels, `#` starts a
//! comment. JSON: `{"facets": [["a", "b"], ...]}`. Readers sniff the format by
//! the first non-blank character.

use serde::{Deserialize, Serialize};

use crate::complex::{check_label, Complex};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub facets: Vec<Vec<String>>,
}

impl ComplexJson {
    pub fn from_complex(k: &Complex) -> Self {
        ComplexJson { facets: canonical_facets(k) }
    }
}

/// Facets as sorted label lists, sorted lexicographically.
pub fn canonical_facets(k: &Complex) -> Vec<Vec<String>> {
    let mut facets: Vec<Vec<String>> = k.facets().iter().map(|f| k.simplex_labels(f)).collect();
    facets.sort();
    facets
}

fn is_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

/// Reads facet label lists without validating labels. Used for product
/// subcomplexes whose labels contain `|`.
pub fn parse_facet_lists(text: &str) -> Result<Vec<Vec<String>>> {
    if is_json(text) {
        let parsed: ComplexJson = serde_json::from_str(text)
            .map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })?;
        return Ok(parsed.facets);
    }
    let facets: Vec<Vec<String>> = text
        .lines()
        .map(|line| line.split('#').next().unwrap_or(""))
        .filter(|line| !line.trim().is_empty())
        .map(|line| line.split_whitespace().map(str::to_owned).collect())
        .collect();
    if facets.is_empty() {
        return Err(Error::Parse { line: 0, message: "no facets".into() });
    }
    Ok(facets)
}

/// Parses a complex from its text or JSON form.
pub fn parse_complex(text: &str) -> Result<Complex> {
    if is_json(text) {
        let parsed: ComplexJson = serde_json::from_str(text)
            .map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })?;
        if parsed.facets.is_empty() {
            return Err(Error::Parse { line: 1, message: "no facets".into() });
        }
        for (i, f) in parsed.facets.iter().enumerate() {
            if f.is_empty() {
                return Err(Error::Parse { line: 1, message: format!("facet {i} is empty") });
            }
            for l in f {
                check_label(l).map_err(|e| Error::Parse { line: 1, message: e.to_string() })?;
            }
        }
        return Complex::from_facets(parsed.facets);
    }
    let mut facets = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let labels: Vec<&str> = line.split_whitespace().collect();
        if labels.is_empty() {
            continue;
        }
        for l in &labels {
            check_label(l).map_err(|e| Error::Parse { line: n + 1, message: e.to_string() })?;
        }
        facets.push(labels);
    }
    if facets.is_empty() {
        return Err(Error::Parse { line: 0, message: "no facets".into() });
    }
    Complex::from_facets(facets)
}

/// Canonical text form: one sorted facet per line, lines sorted.
pub fn serialize_complex(k: &Complex) -> String {
    let mut out = String::new();
    for f in canonical_facets(k) {
        out.push_str(&f.join(" "));
        out.push('\n');
    }
    out
}

pub fn complex_to_json(k: &Complex) -> String {
    serde_json::to_string(&ComplexJson::from_complex(k)).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_text() {
        let k = parse_complex("a b\nb c\na c").unwrap();
        assert_eq!(k, Complex::from_facets([["a", "b"], ["b", "c"], ["a", "c"]]).unwrap());
        let k = parse_complex("# triangle\n\nb a  # edge\n c b\n").unwrap();
        assert_eq!(k.num_facets(), 2);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_complex(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_complex("# only\n\n"), Err(Error::Parse { .. })));
        match parse_complex("a b\nb c|d\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        match parse_complex("{\"facets\": [[\"a\"],\n [1]]}") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_complex("{\"facets\": []}").is_err());
    }

    #[test]
    fn json_sniffing() {
        let k = parse_complex("  {\"facets\": [[\"b\",\"a\"],[\"c\",\"b\"]]}").unwrap();
        assert_eq!(serialize_complex(&k), "a b\nb c\n");
        assert_eq!(parse_complex(&complex_to_json(&k)).unwrap(), k);
    }

    #[test]
    fn canonical_round_trip() {
        let text = "c a\nb c\nb a\na\n";
        let k = parse_complex(text).unwrap();
        let canon = serialize_complex(&k);
        assert_eq!(canon, "a b\na c\nb c\n");
        assert_eq!(serialize_complex(&parse_complex(&canon).unwrap()), canon);
    }
}
