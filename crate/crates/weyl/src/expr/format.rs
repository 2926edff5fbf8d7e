//! Canonical printing: the exponent table and the symbolic polynomial
//! form. Both render terms in graded-lex order, so output never depends
//! on construction history.

use super::{PrintForm, SessionConfig};
use crate::element::WeylElement;

/// Renders `w` in the session's configured print form.
pub fn format_element(w: &WeylElement, cfg: &SessionConfig) -> String {
    match cfg.form() {
        PrintForm::Table => format_table(w, cfg),
        PrintForm::Symbolic => format_symbolic(w, cfg),
        PrintForm::Json => super::json::serialize(w, cfg),
    }
}

/// One row per term under generator/derivative column labels and a `val`
/// column, e.g.
///
/// ```text
///  x d     val
///  0 1  =    7
///  1 2  =   12
///  2 3  =    4
/// ```
pub fn format_table(w: &WeylElement, cfg: &SessionConfig) -> String {
    assert_eq!(w.arity(), cfg.arity());
    if w.is_zero() {
        return "0".to_string();
    }
    let labels: Vec<&str> = cfg
        .table_var_labels()
        .iter()
        .chain(cfg.table_der_labels())
        .map(String::as_str)
        .collect();
    let mut col = labels.iter().map(|l| l.len()).max().unwrap();
    let mut val = 3; // len("val")
    for (m, c) in w.terms() {
        for e in m.exponents() {
            col = col.max(e.to_string().len());
        }
        val = val.max(c.to_string().len());
    }
    val += 1;

    let mut out = String::new();
    for label in &labels {
        out.push(' ');
        out.push_str(&format!("{label:>col$}"));
    }
    out.push_str(&format!("{:>width$}", "val", width = val + 4));
    for (m, c) in w.terms() {
        out.push('\n');
        for e in m.exponents() {
            out.push(' ');
            out.push_str(&format!("{e:>col$}"));
        }
        out.push_str("  = ");
        out.push_str(&format!("{:>val$}", c.to_string()));
    }
    out
}

/// Sign-prefixed symbolic form, e.g. `+7*d +12*x*d^2 +4*x^2*d^3` or
/// `1 +x*d +2*d^3`. A leading constant renders bare; unit coefficients
/// and unit exponents are omitted. The output is valid input syntax.
pub fn format_symbolic(w: &WeylElement, cfg: &SessionConfig) -> String {
    assert_eq!(w.arity(), cfg.arity());
    if w.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in w.terms().enumerate() {
        let mut factors = Vec::new();
        for (name, &exp) in cfg.var_names().iter().zip(m.gens()) {
            match exp {
                0 => {}
                1 => factors.push(name.clone()),
                _ => factors.push(format!("{name}^{exp}")),
            }
        }
        for (name, &exp) in cfg.der_names().iter().zip(m.ders()) {
            match exp {
                0 => {}
                1 => factors.push(name.clone()),
                _ => factors.push(format!("{name}^{exp}")),
            }
        }
        if i > 0 {
            out.push(' ');
            out.push(if c.is_negative() { '-' } else { '+' });
        } else if c.is_negative() {
            out.push('-');
        } else if !factors.is_empty() {
            out.push('+');
        }
        let magnitude = c.abs();
        if factors.is_empty() {
            out.push_str(&magnitude.to_string());
        } else {
            if !magnitude.is_one() {
                out.push_str(&magnitude.to_string());
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}
