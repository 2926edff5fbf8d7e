//! Interactive line loop: bare expressions print in the current form,
//! `let` lines extend the environment, `:directives` adjust the session.

use std::io::{self, BufRead, IsTerminal, Write};

use weyl::expr::{eval_str, format_element, Env, PrintForm, SessionConfig};
use weyl::ProductRule;

use crate::session::{parse_rule, split_binding, Session};

pub fn run(mut session: Session) -> i32 {
    let stdin = io::stdin();
    let interactive = stdin.is_terminal();
    if interactive {
        println!("weyl repl — :quit to exit, :form / :rule / :vars to adjust the session");
    }
    let mut buf = String::new();
    loop {
        if interactive {
            print!("weyl> ");
            let _ = io::stdout().flush();
        }
        buf.clear();
        match stdin.lock().read_line(&mut buf) {
            Ok(0) | Err(_) => break,
            Ok(_) => {}
        }
        match handle_line(buf.trim(), &mut session) {
            Outcome::Continue => {}
            Outcome::Quit => break,
        }
    }
    0
}

enum Outcome {
    Continue,
    Quit,
}

fn handle_line(line: &str, session: &mut Session) -> Outcome {
    if line.is_empty() {
        return Outcome::Continue;
    }
    if let Some(directive) = line.strip_prefix(':') {
        return handle_directive(directive.trim(), session);
    }
    if let Some(binding) = line.strip_prefix("let ") {
        match split_binding(binding).and_then(|(name, expr)| session.bind(&name, &expr)) {
            Ok(()) => {}
            Err(e) => eprintln!("error: {e}"),
        }
        return Outcome::Continue;
    }
    match eval_str(line, &session.env, &session.cfg) {
        Ok(w) => println!("{}", format_element(&w, &session.cfg)),
        Err(e) => eprintln!("error: {e}"),
    }
    Outcome::Continue
}

fn handle_directive(directive: &str, session: &mut Session) -> Outcome {
    let (name, arg) = match directive.split_once(char::is_whitespace) {
        Some((name, arg)) => (name, arg.trim()),
        None => (directive, ""),
    };
    match name {
        "quit" | "q" => return Outcome::Quit,
        "form" => match PrintForm::from_name(arg) {
            Some(form) => session.cfg = session.cfg.clone().with_form(form),
            None => eprintln!("error: unknown form {arg:?} (table | symbolic | json)"),
        },
        "rule" => match parse_rule(arg, session.cfg.arity()) {
            Ok(rule) => session.cfg = session.cfg.clone().with_rule(rule),
            Err(e) => eprintln!("error: {e}"),
        },
        "vars" => {
            let names: Vec<String> =
                arg.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
            if matches!(session.cfg.rule(), ProductRule::Exponential) && names.len() != 1 {
                eprintln!("error: the exponential rule is univariate; switch :rule first");
                return Outcome::Continue;
            }
            match SessionConfig::with_vars(&names) {
                Ok(cfg) => {
                    // bindings were built at the old arity; drop them
                    session.cfg =
                        cfg.with_rule(session.cfg.rule().clone()).with_form(session.cfg.form());
                    session.env = Env::new();
                }
                Err(e) => eprintln!("error: {e}"),
            }
        }
        _ => eprintln!("error: unknown directive :{name}"),
    }
    Outcome::Continue
}
