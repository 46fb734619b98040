//! Binding and evaluation of parsed programs against a context.

use std::collections::HashMap;

use frobkit_core::monomial::text::{parse_ideal, parse_monomial};
use frobkit_core::stabilization::{stabilized_system_with, JForm};
use frobkit_core::systems::TermwiseOp;
use frobkit_core::{FGradedSystem, MonomialIdeal, SystemContext};

use crate::error::CliError;
use crate::expr::{Expr, Program, StabForm};

#[derive(Clone)]
pub enum Value {
    Ideal(MonomialIdeal),
    System(FGradedSystem),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Ideal(_) => "an ideal",
            Value::System(_) => "a system",
        }
    }
}

struct Env<'a> {
    ctx: SystemContext,
    vars: HashMap<&'a str, Value>,
}

impl<'a> Env<'a> {
    fn ideal(&self, e: &'a Expr) -> Result<MonomialIdeal, CliError> {
        match self.eval(e)? {
            Value::Ideal(i) => Ok(i),
            v => Err(CliError::Usage(format!("`{e}` is {}, an ideal is expected here", v.kind()))),
        }
    }

    fn system(&self, e: &'a Expr) -> Result<FGradedSystem, CliError> {
        match self.eval(e)? {
            Value::System(s) => Ok(s),
            v => Err(CliError::Usage(format!("`{e}` is {}, a system is expected here", v.kind()))),
        }
    }

    fn systems(&self, items: &'a [Expr]) -> Result<Vec<FGradedSystem>, CliError> {
        items.iter().map(|e| self.system(e)).collect()
    }

    fn eval(&self, e: &'a Expr) -> Result<Value, CliError> {
        let c = self.ctx;
        let sys = |s: frobkit_core::Result<FGradedSystem>| Ok(Value::System(s?));
        match e {
            Expr::Var(v) => self
                .vars
                .get(v.as_str())
                .cloned()
                .ok_or_else(|| CliError::Usage(format!("unbound variable `{v}`"))),
            Expr::Ideal(text) => Ok(Value::Ideal(parse_ideal(text, c.d()).map_err(CliError::from_input)?)),
            Expr::Maximal => Ok(Value::Ideal(MonomialIdeal::maximal(c.d()))),
            Expr::Minimal(i) => sys(FGradedSystem::minimal(c, self.ideal(i)?)),
            Expr::Colon(i) => sys(FGradedSystem::colon(c, self.ideal(i)?)),
            Expr::Round(i, t) => sys(FGradedSystem::rounding(c, self.ideal(i)?, t.clone())),
            Expr::Bracket(i) => sys(FGradedSystem::bracket_family(c, self.ideal(i)?)),
            Expr::Powers(i, mode) => sys(FGradedSystem::power_family(c, self.ideal(i)?, *mode)),
            Expr::Constant(i) => sys(FGradedSystem::constant(c, self.ideal(i)?)),
            Expr::Explicit(prefix, tail) => {
                let prefix = prefix.iter().map(|i| self.ideal(i)).collect::<Result<Vec<_>, _>>()?;
                sys(FGradedSystem::explicit(prefix, self.system(tail)?))
            }
            Expr::Splice(a, b, n) => sys(FGradedSystem::splice(&self.system(a)?, &self.system(b)?, *n)),
            Expr::Product(v) => sys(FGradedSystem::termwise(TermwiseOp::Product, &self.systems(v)?)),
            Expr::Sum(v) => sys(FGradedSystem::termwise(TermwiseOp::Sum, &self.systems(v)?)),
            Expr::Intersect(v) => sys(FGradedSystem::termwise(TermwiseOp::Intersect, &self.systems(v)?)),
            Expr::Closure(s) => sys(FGradedSystem::termwise(TermwiseOp::IntegralClosure, &[self.system(s)?])),
            Expr::Twist(s, f, t) => {
                let f = parse_monomial(f, c.d()).map_err(CliError::from_input)?;
                let op = TermwiseOp::ColonTwist { f, t: t.clone() };
                sys(FGradedSystem::termwise(op, &[self.system(s)?]))
            }
            Expr::Stab(s, form) => {
                let form = match form {
                    StabForm::Hull => JForm::Hull,
                    StabForm::Lattice => JForm::Lattice,
                };
                sys(stabilized_system_with(&self.system(s)?, form))
            }
        }
    }
}

pub fn evaluate(program: &Program, ctx: SystemContext) -> Result<Value, CliError> {
    let mut env = Env {
        ctx,
        vars: HashMap::new(),
    };
    for (name, e) in &program.bindings {
        let v = env.eval(e)?;
        env.vars.insert(name, v);
    }
    env.eval(&program.body)
}

/// Evaluates a program whose body must be a system.
pub fn evaluate_system(program: &Program, ctx: SystemContext) -> Result<FGradedSystem, CliError> {
    match evaluate(program, ctx)? {
        Value::System(s) => Ok(s),
        Value::Ideal(_) => Err(CliError::Usage(format!(
            "`{}` is an ideal; wrap it in a constructor such as minimal(...)",
            program.body
        ))),
    }
}
