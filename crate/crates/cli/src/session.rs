//! Session files: one JSON document holding the variable count, term order,
//! condition list and optional query payload.

use std::path::Path;

use serde::Deserialize;
use serde_json::Value;
use subalg::json::condition_from_json;
use subalg::{parse_polynomial, Condition, Poly, Rational, TermOrder};

use crate::Failure;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Session {
    pub n: usize,
    #[serde(default)]
    pub order: Option<String>,
    #[serde(default)]
    pub conditions: Vec<Value>,
    /// polynomials that `member` checks when none are given, and that `build`
    /// compares against the computed algebra
    #[serde(default)]
    pub generators: Vec<String>,
    /// codimension of the algebra the generators are expected to span
    #[serde(default)]
    pub codim: Option<usize>,
}

impl Session {
    pub fn load(path: &Path) -> Result<Session, Failure> {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        let s: Session =
            serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        if s.n == 0 {
            return Err(Failure::Input("session: n must be positive".into()));
        }
        Ok(s)
    }

    pub fn order(&self, flag: Option<TermOrder>) -> Result<TermOrder, Failure> {
        match (flag, &self.order) {
            (Some(o), _) => Ok(o),
            (None, Some(name)) => name.parse().map_err(Failure::Input),
            (None, None) => Ok(TermOrder::DegRevLex),
        }
    }

    pub fn conditions(&self) -> Result<Vec<Condition<Rational>>, Failure> {
        self.conditions
            .iter()
            .enumerate()
            .map(|(k, v)| condition_from_json(v, self.n).map_err(|e| Failure::Input(format!("condition {k}: {e}"))))
            .collect()
    }

    pub fn generators(&self) -> Result<Vec<Poly>, Failure> {
        self.generators.iter().map(|g| parse_poly(g, self.n)).collect()
    }
}

pub fn parse_poly(s: &str, n: usize) -> Result<Poly, Failure> {
    parse_polynomial(s, n).map_err(|e| Failure::Input(format!("{s:?}: {e}")))
}
