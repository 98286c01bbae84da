//! JSON problem descriptors for polynomial objectives.
//!
//! Schema:
//! ```json
//! {
//!   "name": "paper-counterexample",
//!   "n": 2,
//!   "objectives": [ { "terms": [ { "coeff": 0.5, "exponents": [2, 0] } ] } ],
//!   "domain": { "kind": "ball", "center": [0.0, 0.0], "radius": 8.0 }
//! }
//! ```

use serde::{Deserialize, Serialize};

use super::{Polynomial, Problem, Region};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProblemDescriptor {
    pub name: String,
    pub n: usize,
    pub objectives: Vec<Polynomial>,
    pub domain: Region,
}

impl ProblemDescriptor {
    pub fn from_json(json: &str) -> Result<Self> {
        serde_json::from_str(json)
            .map_err(|e| Error::invalid(format!("malformed problem descriptor: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptor serialization cannot fail")
    }

    pub fn into_problem(self) -> Result<Problem> {
        Problem::polynomial(self.name, self.n, self.domain, self.objectives)
    }
}

impl Problem {
    /// Parses a JSON descriptor into a problem.
    pub fn from_json(json: &str) -> Result<Problem> {
        ProblemDescriptor::from_json(json)?.into_problem()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DESCRIPTOR: &str = r#"{
        "name": "halved-sum",
        "n": 2,
        "objectives": [
            { "terms": [ { "coeff": 0.5, "exponents": [1, 0] },
                         { "coeff": 0.5, "exponents": [0, 1] } ] }
        ],
        "domain": { "kind": "box", "lower": [-1.0, -1.0], "upper": [1.0, 1.0] }
    }"#;

    #[test]
    fn parses_and_evaluates() {
        let p = Problem::from_json(DESCRIPTOR).unwrap();
        assert_eq!(p.name(), "halved-sum");
        assert_eq!(p.dim(), 2);
        assert_eq!(p.num_objectives(), 1);
        assert_eq!(p.evaluate(&[1.0, 0.0]).unwrap(), vec![0.5]);
        let g = p.jacobian(&[0.3, -0.2]).unwrap();
        assert_eq!(g.row(0), &[0.5, 0.5]);
    }

    #[test]
    fn round_trips() {
        let p = Problem::from_json(DESCRIPTOR).unwrap();
        let json = p.descriptor().unwrap().to_json();
        let q = Problem::from_json(&json).unwrap();
        assert_eq!(
            q.evaluate(&[0.25, 0.5]).unwrap(),
            p.evaluate(&[0.25, 0.5]).unwrap()
        );
    }

    #[test]
    fn rejects_malformed() {
        assert!(Problem::from_json("{").is_err());
        assert!(Problem::from_json(r#"{"name":"x","n":0,"objectives":[],"domain":{"kind":"ball","center":[0.0],"radius":1.0}}"#).is_err());
        // exponent arity mismatch
        let bad = r#"{
            "name": "bad", "n": 2,
            "objectives": [ { "terms": [ { "coeff": 1.0, "exponents": [1] } ] } ],
            "domain": { "kind": "ball", "center": [0.0, 0.0], "radius": 1.0 }
        }"#;
        assert!(Problem::from_json(bad).is_err());
    }
}
