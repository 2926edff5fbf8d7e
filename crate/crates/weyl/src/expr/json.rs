//! JSON document format.
//!
//! A document records the arity, generator names, rule name, and the term
//! list in canonical order. Coefficients are strings — `"7"` when
//! integral, `"p/q"` otherwise — so no precision is lost:
//!
//! ```json
//! {
//!   "arity": 1,
//!   "var_names": ["x"],
//!   "rule": "weyl",
//!   "terms": [
//!     { "exps": [0, 1], "coeff": "7" },
//!     { "exps": [1, 2], "coeff": "12" }
//!   ]
//! }
//! ```
//!
//! Deserialization is strict: unknown rules, exponent vectors of the
//! wrong length, zero coefficients, and duplicate monomials are all
//! rejected rather than repaired.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{ExprError, SessionConfig};
use crate::coefficient::Coefficient;
use crate::element::WeylElement;
use crate::kernels::ProductRule;
use crate::monomial::Monomial;

#[derive(Serialize, Deserialize)]
struct Document {
    arity: usize,
    var_names: Vec<String>,
    rule: String,
    terms: Vec<TermRecord>,
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    exps: Vec<u32>,
    coeff: String,
}

/// Serializes `w` with the session's names and rule, terms in canonical
/// order.
pub fn serialize(w: &WeylElement, cfg: &SessionConfig) -> String {
    assert_eq!(w.arity(), cfg.arity());
    let doc = Document {
        arity: w.arity(),
        var_names: cfg.var_names().to_vec(),
        rule: cfg.rule().name().to_string(),
        terms: w
            .terms()
            .map(|(m, c)| TermRecord { exps: m.exponents(), coeff: c.to_string() })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("document serialization cannot fail")
}

fn parse_coeff(text: &str) -> Result<Coefficient, String> {
    match text.strip_prefix('-') {
        Some(body) => Coefficient::parse_literal(body).map(|c| -&c),
        None => Coefficient::parse_literal(text),
    }
}

/// Parses and validates a document, returning the element together with
/// the session it was written under.
pub fn deserialize(text: &str) -> Result<(WeylElement, SessionConfig), ExprError> {
    let doc: Document =
        serde_json::from_str(text).map_err(|e| ExprError::Schema(e.to_string()))?;
    if doc.arity == 0 {
        return Err(ExprError::Schema("arity must be positive".into()));
    }
    if doc.var_names.len() != doc.arity {
        return Err(ExprError::Schema(format!(
            "expected {} variable names, got {}",
            doc.arity,
            doc.var_names.len()
        )));
    }
    let rule = ProductRule::from_name(&doc.rule)
        .ok_or_else(|| ExprError::Schema(format!("unknown rule {:?}", doc.rule)))?;
    let cfg = SessionConfig::with_vars(&doc.var_names)
        .map_err(|e| ExprError::Schema(e.to_string()))?
        .with_rule(rule);

    let mut seen = BTreeSet::new();
    let mut raw = Vec::with_capacity(doc.terms.len());
    for term in &doc.terms {
        if term.exps.len() != 2 * doc.arity {
            return Err(ExprError::Schema(format!(
                "expected {} exponents, got {}",
                2 * doc.arity,
                term.exps.len()
            )));
        }
        if !seen.insert(term.exps.clone()) {
            return Err(ExprError::Schema(format!("duplicate monomial {:?}", term.exps)));
        }
        let coeff = parse_coeff(&term.coeff).map_err(ExprError::Schema)?;
        if coeff.is_zero() {
            return Err(ExprError::Schema(format!(
                "zero coefficient on monomial {:?}",
                term.exps
            )));
        }
        let (gens, ders) = term.exps.split_at(doc.arity);
        raw.push((Monomial::new(gens.to_vec(), ders.to_vec()), coeff));
    }
    let element = WeylElement::from_terms(doc.arity, raw)?;
    Ok((element, cfg))
}

#[cfg(test)]
mod tests {
    use super::super::eval::{eval_str, Env};
    use super::*;
    use crate::element::random_element;

    #[test]
    fn round_trips_the_three_term_element() {
        let cfg = SessionConfig::with_arity(1);
        let w = eval_str("7*d + 4*x*d^3*x", &Env::new(), &cfg).unwrap();
        let (back, back_cfg) = deserialize(&serialize(&w, &cfg)).unwrap();
        assert_eq!(back, w);
        assert_eq!(back_cfg.var_names(), cfg.var_names());
        assert_eq!(back_cfg.rule().name(), "weyl");
    }

    #[test]
    fn zero_element_has_empty_term_list() {
        let cfg = SessionConfig::with_arity(2);
        let text = serialize(&WeylElement::zero(2), &cfg);
        assert!(text.contains("\"terms\": []"));
        let (back, _) = deserialize(&text).unwrap();
        assert!(back.is_zero());
    }

    #[test]
    fn round_trips_random_elements() {
        for seed in 0..20 {
            let arity = 1 + (seed as usize % 4);
            let cfg = SessionConfig::with_arity(arity);
            let w = random_element(seed, 4, 3, arity);
            let (back, _) = deserialize(&serialize(&w, &cfg)).unwrap();
            assert_eq!(back, w);
        }
    }

    #[test]
    fn rejects_zero_coefficients() {
        let text = r#"{"arity":1,"var_names":["x"],"rule":"weyl",
                       "terms":[{"exps":[0,1],"coeff":"0/1"}]}"#;
        assert!(matches!(deserialize(text), Err(ExprError::Schema(_))));
    }

    #[test]
    fn rejects_malformed_documents() {
        assert!(deserialize("not json").is_err());
        // wrong exponent count
        let text = r#"{"arity":2,"var_names":["x","y"],"rule":"weyl",
                       "terms":[{"exps":[1,2],"coeff":"3"}]}"#;
        assert!(matches!(deserialize(text), Err(ExprError::Schema(_))));
        // unknown rule
        let text = r#"{"arity":1,"var_names":["x"],"rule":"quantum","terms":[]}"#;
        assert!(matches!(deserialize(text), Err(ExprError::Schema(_))));
        // duplicate monomial
        let text = r#"{"arity":1,"var_names":["x"],"rule":"weyl",
                       "terms":[{"exps":[0,1],"coeff":"1"},{"exps":[0,1],"coeff":"2"}]}"#;
        assert!(matches!(deserialize(text), Err(ExprError::Schema(_))));
    }

    #[test]
    fn negative_and_fractional_coefficients_survive() {
        let cfg = SessionConfig::with_arity(1);
        let w = eval_str("1/2*x - 3*d", &Env::new(), &cfg).unwrap();
        let text = serialize(&w, &cfg);
        assert!(text.contains("\"1/2\""));
        assert!(text.contains("\"-3\""));
        let (back, _) = deserialize(&text).unwrap();
        assert_eq!(back, w);
    }
}
