//! PD text format.
//!
//! One site per token: `V<id>[l1,l2,...]` for a flat vertex,
//! `X<id>[l1,l2,l3,l4]` for a crossing (counterclockwise, strand through
//! slots 0 and 2 under). Arc labels are arbitrary identifiers occurring
//! exactly twice per diagram. Tokens are separated by whitespace;
//! `#` starts a comment running to end of line.

use std::collections::HashMap;

use super::{Diagram, Site, SiteKind};
use crate::{Error, Result};

/// Parses one diagram from text (blank lines are insignificant).
pub fn parse_pd(text: &str) -> Result<Diagram> {
    let sites = parse_tokens(text)?;
    Diagram::new(sites)
}

/// Parses a file of diagrams separated by blank lines.
pub fn parse_pd_blocks(text: &str) -> Result<Vec<Diagram>> {
    let mut blocks: Vec<String> = Vec::new();
    let mut cur = String::new();
    for line in text.lines() {
        let stripped = strip_comment(line);
        if stripped.trim().is_empty() {
            if !cur.trim().is_empty() {
                blocks.push(std::mem::take(&mut cur));
            }
        } else {
            cur.push_str(stripped);
            cur.push('\n');
        }
    }
    if !cur.trim().is_empty() {
        blocks.push(cur);
    }
    blocks.iter().map(|b| parse_pd(b)).collect()
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn parse_tokens(text: &str) -> Result<Vec<Site>> {
    let cleaned: String = text
        .lines()
        .map(strip_comment)
        .collect::<Vec<_>>()
        .join("\n");
    let mut sites = Vec::new();
    let mut labels: HashMap<String, u32> = HashMap::new();
    for token in cleaned.split_whitespace() {
        let (kind, rest) = match token.chars().next() {
            Some('V') => (SiteKind::Vertex, &token[1..]),
            Some('X') => (SiteKind::Crossing, &token[1..]),
            _ => {
                return Err(Error::Parse(format!(
                    "expected V... or X... site, found `{token}`"
                )))
            }
        };
        let open = rest
            .find('[')
            .ok_or_else(|| Error::Parse(format!("missing `[` in `{token}`")))?;
        if !rest.ends_with(']') {
            return Err(Error::Parse(format!("missing `]` in `{token}`")));
        }
        let name = &rest[..open];
        if name.is_empty() {
            return Err(Error::Parse(format!("missing site id in `{token}`")));
        }
        let body = &rest[open + 1..rest.len() - 1];
        let mut rot = Vec::new();
        if !body.is_empty() {
            for label in body.split(',') {
                let label = label.trim();
                if label.is_empty()
                    || !label.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                {
                    return Err(Error::Parse(format!(
                        "bad arc label `{label}` in `{token}`"
                    )));
                }
                let next = labels.len() as u32;
                rot.push(*labels.entry(label.to_string()).or_insert(next));
            }
        }
        sites.push(Site { kind, name: name.to_string(), rot });
    }
    Ok(sites)
}

/// Deterministic emission: sites in stored (sorted) order, one per line,
/// arcs renamed `1..n` in order of first appearance.
pub fn emit_pd(d: &Diagram) -> String {
    let mut names: HashMap<u32, u32> = HashMap::new();
    let mut lines = Vec::new();
    for s in d.sites() {
        let prefix = match s.kind {
            SiteKind::Vertex => "V",
            SiteKind::Crossing => "X",
        };
        let labels: Vec<String> = s
            .rot
            .iter()
            .map(|&a| {
                let next = names.len() as u32 + 1;
                names.entry(a).or_insert(next).to_string()
            })
            .collect();
        lines.push(format!("{prefix}{}[{}]", s.name, labels.join(",")));
    }
    lines.join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::canonical_pd;

    #[test]
    fn parse_theta() {
        let d = parse_pd("V1[a,b,c] V2[c,b,a]").unwrap();
        assert_eq!(d.vertex_count(), 2);
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.arc_count(), 3);
    }

    #[test]
    fn parse_rejects_unbalanced_label() {
        let err = parse_pd("V1[a,b,c] V2[c,b,b]").unwrap_err();
        assert!(err.to_string().contains("exactly 2"), "{err}");
    }

    #[test]
    fn parse_rejects_crossing_arity() {
        assert!(parse_pd("X1[a,b,c] V1[a,b,c]").is_err());
    }

    #[test]
    fn parse_rejects_duplicate_ids() {
        assert!(parse_pd("V1[a,b] V1[b,a]").is_err());
    }

    #[test]
    fn round_trip_is_isomorphic() {
        let d = parse_pd("V1[a,b,c] V2[c,e,d] X1[d,e,b,a]").unwrap();
        let text = emit_pd(&d);
        let back = parse_pd(&text).unwrap();
        assert_eq!(canonical_pd(&back, false), canonical_pd(&d, false));
        // Emission is deterministic.
        assert_eq!(emit_pd(&parse_pd(&text).unwrap()), text);
    }

    #[test]
    fn empty_round_trip() {
        let d = Diagram::empty();
        assert_eq!(emit_pd(&d), "");
        let back = parse_pd("").unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn comments_and_blocks() {
        let text = "# a theta\nV1[a,b,c]\nV2[c,b,a]\n\nV1[x,x]\n";
        let blocks = parse_pd_blocks(text).unwrap();
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[0].vertex_count(), 2);
        assert_eq!(blocks[1].arc_count(), 1);
    }
}
