//! JSON ring files:
//!
//! ```json
//! {"field": "QQ", "variables": ["x", "y"], "generators": ["x^2", "xy"]}
//! ```
//!
//! `field` is `"QQ"` or `{"Fp": p}`. Optional keys: `assume_minimal` and
//! `span_dim`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::PolyRing;
use crate::support::Presentation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingFile {
    pub field: crate::scalar::Field,
    pub variables: Vec<String>,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assume_minimal: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub span_dim: Option<u32>,
}

/// 1-based line and column of byte offset `at`.
fn line_col(text: &str, at: usize) -> (usize, usize) {
    let before = &text[..at.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.chars().rev().take_while(|&c| c != '\n').count() + 1;
    (line, column)
}

impl RingFile {
    /// Parses the JSON structure only; generators stay unparsed strings.
    pub fn parse(text: &str) -> Result<RingFile> {
        let rf: RingFile = serde_json::from_str(text).map_err(|e| Error::Input {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if rf.span_dim == Some(0) {
            let at = text.find("\"span_dim\"").unwrap_or(0);
            let (line, column) = line_col(text, at);
            return Err(Error::Input {
                line,
                column,
                message: "span_dim must be a positive integer".into(),
            });
        }
        Ok(rf)
    }

    pub fn ring(&self) -> Result<PolyRing> {
        PolyRing::new(self.field, self.variables.clone())
    }

    /// Parses generators and builds the presentation. When `text` is the
    /// source the file was parsed from, polynomial syntax errors are mapped
    /// to its lines and columns.
    pub fn presentation(&self, text: Option<&str>, assume_minimal: bool) -> Result<Presentation> {
        let ring = self.ring()?;
        let mut gens = Vec::with_capacity(self.generators.len());
        let mut search_from = text.and_then(|t| t.find("\"generators\"")).unwrap_or(0);
        for (i, g) in self.generators.iter().enumerate() {
            let literal = serde_json::to_string(g)?;
            let start = text.and_then(|t| t[search_from..].find(&literal).map(|k| k + search_from));
            if let Some(s) = start {
                search_from = s + literal.len();
            }
            match ring.parse(g) {
                Ok(p) => gens.push(p),
                Err(e) => {
                    let (Some(t), Some(s)) = (text, start) else {
                        return Err(Error::Json(format!("generator {}: {e}", i + 1)));
                    };
                    let offset = match &e {
                        Error::Syntax { position, .. } => s + 1 + position,
                        _ => s,
                    };
                    let (line, column) = line_col(t, offset);
                    return Err(Error::Input {
                        line,
                        column,
                        message: format!("generator {}: {e}", i + 1),
                    });
                }
            }
        }
        Presentation::new(ring, gens, assume_minimal || self.assume_minimal == Some(true))
    }

    /// Parses a ring file and its presentation in one go.
    pub fn load(text: &str, assume_minimal: bool) -> Result<(RingFile, Presentation)> {
        let rf = RingFile::parse(text)?;
        let p = rf.presentation(Some(text), assume_minimal)?;
        Ok((rf, p))
    }

    pub fn of(p: &Presentation) -> RingFile {
        RingFile {
            field: p.ring().field(),
            variables: p.ring().vars().to_vec(),
            generators: p.generators().iter().map(|g| p.ring().format(g)).collect(),
            assume_minimal: None,
            span_dim: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("ring file serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    const SHORTGOR: &str = r#"{
  "field": "QQ",
  "variables": ["x", "y", "z"],
  "generators": ["x^2 - y^2", "x^2 - z^2", "xy", "xz", "yz"]
}"#;

    #[test]
    fn loads_ring_file() {
        let (rf, p) = RingFile::load(SHORTGOR, false).unwrap();
        assert_eq!(rf.field, Field::Rational);
        assert_eq!(p.n(), 5);
        let again = RingFile::parse(&RingFile::of(&p).to_json()).unwrap();
        assert_eq!(again.generators, rf.generators);
    }

    #[test]
    fn prime_field_and_options() {
        let text = r#"{"field": {"Fp": 32003}, "variables": ["x","y"],
            "generators": ["x^2", "y^2"], "span_dim": 1, "assume_minimal": true}"#;
        let rf = RingFile::parse(text).unwrap();
        assert_eq!(rf.field, Field::Prime(32003));
        assert_eq!(rf.span_dim, Some(1));
        assert_eq!(rf.assume_minimal, Some(true));
    }

    #[test]
    fn json_errors_have_positions() {
        let err = RingFile::parse("{\n  \"field\": \"QQ\",\n  \"variables\": [\"x\"\n}").unwrap_err();
        assert!(matches!(err, Error::Input { line: 4, .. }), "{err}");
        let err = RingFile::parse(r#"{"field": {"Fp": 15}, "variables": [], "generators": []}"#).unwrap_err();
        assert!(matches!(err, Error::Input { line: 1, .. }), "{err}");
        let err = RingFile::parse(r#"{"field": "QQ", "variables": [], "generators": [], "extra": 1}"#).unwrap_err();
        assert!(matches!(err, Error::Input { .. }));
    }

    #[test]
    fn polynomial_errors_have_positions() {
        let text = "{\n  \"field\": \"QQ\",\n  \"variables\": [\"x\", \"y\"],\n  \"generators\": [\"x^2\",\n    \"xy + * y\"]\n}";
        let err = RingFile::load(text, false).unwrap_err();
        match err {
            Error::Input { line, column, message } => {
                assert_eq!(line, 5);
                assert_eq!(column, 11);
                assert!(message.starts_with("generator 2"), "{message}");
            }
            e => panic!("{e}"),
        }
        let text = r#"{"field": "QQ", "variables": ["x"], "generators": ["x^2 + q"]}"#;
        assert!(matches!(RingFile::load(text, false), Err(Error::Input { line: 1, .. })));
    }

    #[test]
    fn minimality_flag() {
        let text = r#"{"field": "QQ", "variables": ["x","y","z"],
            "generators": ["x^2 + y^2 + z^3", "xyz"]}"#;
        assert!(matches!(
            RingFile::load(text, false),
            Err(Error::MinimalityNotCertifiable)
        ));
        assert_eq!(RingFile::load(text, true).unwrap().1.n(), 2);
        let flagged = text.replacen('{', r#"{"assume_minimal": true, "#, 1);
        assert_eq!(RingFile::load(&flagged, false).unwrap().1.n(), 2);
        // homogeneous input is certifiable without the flag
        let text = r#"{"field": "QQ", "variables": ["x","y","z"],
            "generators": ["x^2 + y^2 + z^2", "xyz", "x^3"]}"#;
        assert!(RingFile::load(text, false).unwrap().1.minimality_certified());
    }
}
