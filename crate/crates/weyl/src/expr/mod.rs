//! Surface syntax: tokenizer, recursive-descent parser, evaluator, the
//! two print forms, and the JSON document format.
//!
//! The symbolic print form is round-trippable: everything
//! [`format_symbolic`] emits parses back to the same element under the
//! same session, which turns every golden output into a parser test.

mod eval;
mod format;
mod json;
mod parse;
mod token;

pub use eval::{eval_ast, eval_str, Env};
pub use format::{format_element, format_symbolic, format_table};
pub use json::{deserialize, serialize};
pub use parse::{parse, ExprAst};
pub use token::{tokenize, Token, TokenKind};

use thiserror::Error;

use crate::error::WeylError;
use crate::kernels::ProductRule;

#[derive(Debug, Error)]
pub enum ExprError {
    #[error("lexical error at position {pos}: unexpected character '{ch}'")]
    Lex { pos: usize, ch: char },

    #[error("parse error at position {pos}: {message}")]
    Parse { pos: usize, message: String },

    #[error("evaluation error at position {pos}: {message}")]
    Eval { pos: usize, message: String },

    #[error("invalid document: {0}")]
    Schema(String),

    #[error("invalid session: {0}")]
    Config(String),

    #[error(transparent)]
    Algebra(#[from] WeylError),
}

/// How an element is rendered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrintForm {
    Table,
    Symbolic,
    Json,
}

impl PrintForm {
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "table" => Some(PrintForm::Table),
            "symbolic" => Some(PrintForm::Symbolic),
            "json" => Some(PrintForm::Json),
            _ => None,
        }
    }
}

/// What a bare symbol in an expression means.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolKind {
    /// Multiplication generator `x_k`.
    Gen(usize),
    /// Derivative `∂_k`.
    Der(usize),
}

/// An immutable session: generator and derivative names, the commutation
/// rule, and the print form.
///
/// Naming defaults follow arity: `x`/`d` univariate, `x,y,z`/`dx,dy,dz`
/// up to three variables. Above that the parse and symbolic names are
/// `x1..xn`/`d1..dn` while table columns are labelled `1..n`/`d1..dn`.
#[derive(Debug, Clone)]
pub struct SessionConfig {
    var_names: Vec<String>,
    der_names: Vec<String>,
    table_var_labels: Vec<String>,
    rule: ProductRule,
    form: PrintForm,
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl SessionConfig {
    /// Default names for the given arity, standard rule, table form.
    pub fn with_arity(arity: usize) -> Self {
        assert!(arity >= 1, "arity must be positive");
        let (var_names, der_names, table_var_labels) = match arity {
            1 => (vec!["x".into()], vec!["d".into()], vec!["x".into()]),
            2 | 3 => {
                let vars: Vec<String> =
                    ["x", "y", "z"][..arity].iter().map(|s| s.to_string()).collect();
                let ders = vars.iter().map(|v| format!("d{v}")).collect();
                (vars.clone(), ders, vars)
            }
            n => (
                (1..=n).map(|k| format!("x{k}")).collect(),
                (1..=n).map(|k| format!("d{k}")).collect(),
                (1..=n).map(|k| k.to_string()).collect(),
            ),
        };
        SessionConfig {
            var_names,
            der_names,
            table_var_labels,
            rule: ProductRule::Weyl,
            form: PrintForm::Table,
        }
    }

    /// A session over user-chosen generator names. Derivative names are
    /// derived: `d` for a single variable, `d<name>` otherwise. Names must
    /// be identifiers and the two name sets must be disjoint.
    pub fn with_vars(names: &[String]) -> Result<Self, ExprError> {
        if names.is_empty() {
            return Err(ExprError::Config("at least one variable is required".into()));
        }
        for name in names {
            if !is_identifier(name) {
                return Err(ExprError::Config(format!(
                    "variable name {name:?} is not an identifier"
                )));
            }
        }
        let der_names: Vec<String> = if names.len() == 1 {
            vec!["d".into()]
        } else {
            names.iter().map(|v| format!("d{v}")).collect()
        };
        let mut seen = std::collections::BTreeSet::new();
        for name in names.iter().chain(&der_names) {
            if !seen.insert(name.clone()) {
                return Err(ExprError::Config(format!(
                    "name {name:?} is used for more than one generator"
                )));
            }
        }
        Ok(SessionConfig {
            var_names: names.to_vec(),
            der_names,
            table_var_labels: names.to_vec(),
            rule: ProductRule::Weyl,
            form: PrintForm::Table,
        })
    }

    pub fn with_rule(mut self, rule: ProductRule) -> Self {
        self.rule = rule;
        self
    }

    pub fn with_form(mut self, form: PrintForm) -> Self {
        self.form = form;
        self
    }

    pub fn arity(&self) -> usize {
        self.var_names.len()
    }

    pub fn rule(&self) -> &ProductRule {
        &self.rule
    }

    pub fn form(&self) -> PrintForm {
        self.form
    }

    /// Names used for parsing and symbolic printing.
    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn der_names(&self) -> &[String] {
        &self.der_names
    }

    /// Column labels for the table form (`1..n` above arity 3).
    pub fn table_var_labels(&self) -> &[String] {
        &self.table_var_labels
    }

    pub fn table_der_labels(&self) -> &[String] {
        &self.der_names
    }

    /// Resolves a symbol to a generator or derivative, if it names one.
    pub fn resolve(&self, name: &str) -> Option<SymbolKind> {
        if let Some(k) = self.var_names.iter().position(|v| v == name) {
            return Some(SymbolKind::Gen(k));
        }
        self.der_names
            .iter()
            .position(|v| v == name)
            .map(SymbolKind::Der)
    }

    /// True when `name` collides with a generator or derivative name.
    pub fn reserves(&self, name: &str) -> bool {
        self.resolve(name).is_some()
    }
}
