//! Evaluation of parsed expressions into normal-form elements.

use std::collections::BTreeMap;

use super::parse::{parse, ExprAst};
use super::token::tokenize;
use super::{ExprError, SessionConfig, SymbolKind};
use crate::element::WeylElement;

/// Named bindings, e.g. from `--let` flags or REPL `let` lines.
pub type Env = BTreeMap<String, WeylElement>;

/// Evaluates an AST under a session. Generators become single-exponent
/// monomials, numbers become scalars of the session arity, and arithmetic
/// maps onto the algebra under the session's rule.
pub fn eval_ast(ast: &ExprAst, env: &Env, cfg: &SessionConfig) -> Result<WeylElement, ExprError> {
    match ast {
        ExprAst::Constant(c) => Ok(WeylElement::scalar(cfg.arity(), c.clone())),
        ExprAst::Generator { name, pos } => match cfg.resolve(name) {
            Some(SymbolKind::Gen(k)) => Ok(WeylElement::generator(cfg.arity(), k)),
            Some(SymbolKind::Der(k)) => Ok(WeylElement::derivative(cfg.arity(), k)),
            None => env.get(name).cloned().ok_or_else(|| ExprError::Eval {
                pos: *pos,
                message: format!("unbound identifier {name:?}"),
            }),
        },
        ExprAst::Add(l, r) => Ok(eval_ast(l, env, cfg)?.add(&eval_ast(r, env, cfg)?)?),
        ExprAst::Sub(l, r) => Ok(eval_ast(l, env, cfg)?.sub(&eval_ast(r, env, cfg)?)?),
        ExprAst::Mul(l, r) => {
            Ok(eval_ast(l, env, cfg)?.mul(&eval_ast(r, env, cfg)?, cfg.rule())?)
        }
        ExprAst::Pow(base, k) => Ok(eval_ast(base, env, cfg)?.pow(*k, cfg.rule())?),
        ExprAst::Neg(inner) => Ok(eval_ast(inner, env, cfg)?.neg()),
    }
}

/// Tokenize, parse, and evaluate in one step.
pub fn eval_str(src: &str, env: &Env, cfg: &SessionConfig) -> Result<WeylElement, ExprError> {
    eval_ast(&parse(&tokenize(src)?, cfg, env)?, env, cfg)
}
