//! The plain-text facet format: one facet per line as whitespace-separated
//! positive vertex ids, `#` comment lines, and an optional `n=<int>` header
//! fixing the ambient vertex count (default: the largest id seen).

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::simplicial::{ComplexKind, SimplicialComplex};

pub fn parse_facet_file(text: &str) -> Result<SimplicialComplex> {
    let mut header: Option<(usize, u32)> = None;
    let mut facets: Vec<(usize, Vec<i64>)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("n=") {
            if header.is_some() {
                return Err(parse_err(line_no, "duplicate `n=` header"));
            }
            let n: u32 = rest
                .trim()
                .parse()
                .map_err(|_| parse_err(line_no, format!("invalid vertex count `{}`", rest.trim())))?;
            if n == 0 {
                return Err(parse_err(line_no, "vertex count must be positive"));
            }
            header = Some((line_no, n));
            continue;
        }
        let mut facet = Vec::new();
        for tok in line.split_whitespace() {
            let v: i64 = tok
                .parse()
                .map_err(|_| parse_err(line_no, format!("`{tok}` is not an integer")))?;
            if v <= 0 {
                return Err(parse_err(line_no, format!("vertex id {v} is not positive")));
            }
            if v > i64::from(u32::MAX) {
                return Err(parse_err(line_no, format!("vertex id {v} is too large")));
            }
            facet.push(v);
        }
        facets.push((line_no, facet));
    }
    let max_seen = facets.iter().flat_map(|(_, f)| f.iter().copied()).max();
    let n = match (header, max_seen) {
        (Some((_, n)), _) => n,
        (None, Some(m)) => m as u32,
        (None, None) => return Err(parse_err(0, "no facets and no `n=` header")),
    };
    if let Some(&(line, _)) = facets
        .iter()
        .find(|(_, f)| f.iter().any(|&v| v > i64::from(n)))
    {
        return Err(parse_err(line, format!("vertex id exceeds n={n}")));
    }
    SimplicialComplex::from_facets(facets.into_iter().map(|(_, f)| f), n)
}

/// Canonical facet-file text for `complex`. The Empty complex is written as
/// a header alone followed by an `# empty` marker and cannot be read back
/// distinctly from the void complex.
pub fn to_facet_file(complex: &SimplicialComplex) -> String {
    let mut out = format!("n={}\n", complex.n_vertices());
    if complex.kind() == ComplexKind::Empty {
        out.push_str("# empty\n");
    }
    for f in complex.facets().iter().filter(|f| !f.is_empty()) {
        let line: Vec<String> = f.vertices().iter().map(u32::to_string).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::Face;

    #[test]
    fn parses_plain_facets() {
        let d = parse_facet_file("1 2 3\n2 3 4\n").unwrap();
        assert_eq!(d.n_vertices(), 4);
        assert_eq!(d.facets(), &[Face::from([1, 2, 3]), Face::from([2, 3, 4])]);
    }

    #[test]
    fn header_and_comments() {
        let d = parse_facet_file("# comment\nn=5\n1 2\n").unwrap();
        assert_eq!(d.n_vertices(), 5);
        assert_eq!(d.facets(), &[Face::from([1, 2])]);
    }

    #[test]
    fn rejects_bad_ids_with_line_numbers() {
        assert_eq!(
            parse_facet_file("1 0 2\n"),
            Err(Error::Parse {
                line: 1,
                message: "vertex id 0 is not positive".into()
            })
        );
        assert!(matches!(
            parse_facet_file("n=3\n1 2\n\n2 7\n"),
            Err(Error::Parse { line: 4, .. })
        ));
        assert!(matches!(
            parse_facet_file("1 x\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(parse_facet_file("# nothing\n").is_err());
    }

    #[test]
    fn round_trips() {
        let d = parse_facet_file("n=6\n3 4 5\n1 2\n2 1\n").unwrap();
        assert_eq!(parse_facet_file(&to_facet_file(&d)).unwrap(), d);
    }
}
