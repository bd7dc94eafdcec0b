//! Poset file formats.
//!
//! Text:
//!
//! ```text
//! # 2 x 2 lattice
//! p=4
//! 1<2
//! 1<3
//! 2<4
//! 3<4
//! ```
//!
//! JSON: `{"p": 4, "covers": [[1,2],[1,3],[2,4],[3,4]]}`.

use serde::{Deserialize, Serialize};

use super::{from_covers, Label, Poset};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDocument {
    pub p: u32,
    pub covers: Vec<[Label; 2]>,
}

impl PosetDocument {
    pub fn from_poset(poset: &Poset) -> Self {
        Self {
            p: poset.universe(),
            covers: poset.covers().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }

    pub fn cover_pairs(&self) -> Vec<(Label, Label)> {
        self.covers.iter().map(|&[a, b]| (a, b)).collect()
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut p = None;
        let mut covers = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line_no = no + 1;
            let line: String = raw
                .split('#')
                .next()
                .unwrap_or("")
                .chars()
                .filter(|c| !c.is_whitespace())
                .collect();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            if let Some(size) = line.strip_prefix("p=") {
                if p.is_some() {
                    return Err(err("duplicate `p=` line".into()));
                }
                p = Some(
                    size.parse::<u32>()
                        .map_err(|e| err(format!("bad element count `{size}`: {e}")))?,
                );
            } else if let Some((a, b)) = line.split_once('<') {
                if p.is_none() {
                    return Err(err("cover listed before `p=`".into()));
                }
                let parse = |s: &str| {
                    s.parse::<Label>()
                        .map_err(|e| err(format!("bad label `{s}`: {e}")))
                };
                covers.push([parse(a)?, parse(b)?]);
            } else {
                return Err(err(format!("expected `p=<int>` or `a<b`, got `{line}`")));
            }
        }
        let p = p.ok_or(Error::Parse {
            line: 0,
            message: "missing `p=<int>` line".into(),
        })?;
        Ok(Self { p, covers })
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })
    }

    /// JSON when the first non-blank character is `{`, text otherwise.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text)
        } else {
            Self::parse_text(text)
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("p={}\n", self.p);
        for [a, b] in &self.covers {
            out.push_str(&format!("{a}<{b}\n"));
        }
        out
    }

    pub fn build(&self) -> Result<Poset> {
        from_covers(self.p, &self.cover_pairs())
    }
}

/// Parses either format and builds the poset; the labeling must be natural.
pub fn parse_poset(text: &str) -> Result<Poset> {
    PosetDocument::parse(text)?.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::grid;

    #[test]
    fn text_format() {
        let text = "# lattice\n p = 4 \n1<2\n1 < 3  # comment\n\n2<4\n3<4\n";
        assert_eq!(parse_poset(text).unwrap(), grid(2, 2));
    }

    #[test]
    fn json_format() {
        let text = r#"{"p": 4, "covers": [[1,2],[1,3],[2,4],[3,4]]}"#;
        assert_eq!(parse_poset(text).unwrap(), grid(2, 2));
    }

    #[test]
    fn text_errors_carry_line_numbers() {
        match PosetDocument::parse_text("p=3\n1<2\n2-3\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(PosetDocument::parse_text("1<2\n").is_err());
        assert!(PosetDocument::parse_text("").is_err());
        assert!(PosetDocument::parse_text("p=x").is_err());
    }

    #[test]
    fn document_round_trip() {
        let g = grid(2, 3);
        let doc = PosetDocument::from_poset(&g);
        assert_eq!(PosetDocument::parse_text(&doc.to_text()).unwrap(), doc);
        let json = serde_json::to_string(&doc).unwrap();
        assert_eq!(parse_poset(&json).unwrap(), g);
    }
}
