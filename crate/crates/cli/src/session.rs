//! Session construction shared by the subcommands: variable names, rule,
//! print form, and ordered `--let` bindings.

use clap::Args;
use weyl::expr::{eval_str, tokenize, Env, ExprError, PrintForm, SessionConfig, TokenKind};
use weyl::ProductRule;

#[derive(Args, Debug)]
pub struct SessionOpts {
    /// Generator names, comma separated; the list length sets the arity
    /// (default "x", i.e. the univariate algebra).
    #[arg(long, value_delimiter = ',', value_name = "NAMES")]
    pub vars: Option<Vec<String>>,

    /// Commutation rule: weyl | weyl-recursive | exponential.
    #[arg(long, default_value = "weyl", value_name = "RULE")]
    pub rule: String,

    /// Output form: table | symbolic | json.
    #[arg(long, default_value = "table", value_name = "FORM")]
    pub form: String,

    /// Bind a name before evaluation, e.g. --let 'd1=d*x + 2*d^3';
    /// repeatable, evaluated left to right.
    #[arg(long = "let", value_name = "NAME=EXPR")]
    pub lets: Vec<String>,
}

pub struct Session {
    pub cfg: SessionConfig,
    pub env: Env,
}

impl Session {
    pub fn from_opts(opts: &SessionOpts) -> Result<Session, ExprError> {
        let cfg = match &opts.vars {
            Some(names) => SessionConfig::with_vars(names)?,
            None => SessionConfig::with_arity(1),
        };
        let rule = parse_rule(&opts.rule, cfg.arity())?;
        let form = PrintForm::from_name(&opts.form)
            .ok_or_else(|| ExprError::Config(format!("unknown form {:?}", opts.form)))?;
        let mut session = Session { cfg: cfg.with_rule(rule).with_form(form), env: Env::new() };
        for binding in &opts.lets {
            let (name, expr) = split_binding(binding)?;
            session.bind(&name, &expr)?;
        }
        Ok(session)
    }

    /// Evaluates `expr` and binds it to `name`, shadowing any earlier
    /// binding of the same name.
    pub fn bind(&mut self, name: &str, expr: &str) -> Result<(), ExprError> {
        if !is_single_symbol(name) {
            return Err(ExprError::Config(format!("invalid binding name {name:?}")));
        }
        if self.cfg.reserves(name) {
            return Err(ExprError::Config(format!(
                "name {name:?} is reserved for a generator"
            )));
        }
        let value = eval_str(expr, &self.env, &self.cfg)?;
        self.env.insert(name.to_string(), value);
        Ok(())
    }
}

pub fn parse_rule(name: &str, arity: usize) -> Result<ProductRule, ExprError> {
    let rule = ProductRule::from_name(name)
        .ok_or_else(|| ExprError::Config(format!("unknown rule {name:?}")))?;
    if matches!(rule, ProductRule::Exponential) && arity != 1 {
        return Err(ExprError::Config(format!(
            "the exponential rule is univariate; got arity {arity}"
        )));
    }
    Ok(rule)
}

pub fn split_binding(binding: &str) -> Result<(String, String), ExprError> {
    let (name, expr) = binding
        .split_once('=')
        .ok_or_else(|| ExprError::Config(format!("expected NAME=EXPR, got {binding:?}")))?;
    Ok((name.trim().to_string(), expr.to_string()))
}

fn is_single_symbol(name: &str) -> bool {
    matches!(tokenize(name), Ok(tokens)
        if tokens.len() == 1 && tokens[0].kind == TokenKind::Symbol)
}
