use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::algebra::Element;
use crate::error::{Error, Result};

/// A term of the language `{∨, ·, ¯, 0, 1}` extended by named constants.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(String),
    Zero,
    One,
    Join(Box<Term>, Box<Term>),
    Meet(Box<Term>, Box<Term>),
    Not(Box<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Term {
        Term::Const(name.into())
    }

    pub fn join(a: Term, b: Term) -> Term {
        Term::Join(Box::new(a), Box::new(b))
    }

    pub fn meet(a: Term, b: Term) -> Term {
        Term::Meet(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Term) -> Term {
        Term::Not(Box::new(a))
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) | Term::Const(_) | Term::Zero | Term::One => 0,
            Term::Not(a) => 1 + a.depth(),
            Term::Join(a, b) | Term::Meet(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<String>) {
        self.visit(&mut |t| {
            if let Term::Var(v) = t {
                out.insert(v.clone());
            }
        });
    }

    pub fn collect_constants(&self, out: &mut BTreeSet<String>) {
        self.visit(&mut |t| {
            if let Term::Const(c) = t {
                out.insert(c.clone());
            }
        });
    }

    fn visit(&self, f: &mut impl FnMut(&Term)) {
        f(self);
        match self {
            Term::Not(a) => a.visit(f),
            Term::Join(a, b) | Term::Meet(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            _ => {}
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Term::Join(..) => 1,
            Term::Meet(..) => 2,
            Term::Not(_) => 3,
            _ => 4,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let p = self.precedence();
        if p < min {
            f.write_str("(")?;
        }
        match self {
            Term::Var(v) | Term::Const(v) => f.write_str(v)?,
            Term::Zero => f.write_str("0")?,
            Term::One => f.write_str("1")?,
            // Left operands share the precedence; right operands need one more to keep
            // the tree shape under left-associative parsing.
            Term::Join(a, b) => {
                a.fmt_prec(f, 1)?;
                f.write_str(" + ")?;
                b.fmt_prec(f, 2)?;
            }
            Term::Meet(a, b) => {
                a.fmt_prec(f, 2)?;
                f.write_str(" * ")?;
                b.fmt_prec(f, 3)?;
            }
            Term::Not(a) => {
                f.write_str("~")?;
                a.fmt_prec(f, 3)?;
            }
        }
        if p < min {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Eq,
    /// `t <= s`, shorthand for `t·s = t`.
    Leq,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
    pub relation: Relation,
}

impl Equation {
    pub fn eq(lhs: Term, rhs: Term) -> Equation {
        Equation {
            lhs,
            rhs,
            relation: Relation::Eq,
        }
    }

    pub fn leq(lhs: Term, rhs: Term) -> Equation {
        Equation {
            lhs,
            rhs,
            relation: Relation::Leq,
        }
    }

    /// The two sides of the equivalent `=` equation.
    pub fn sides(&self) -> (Term, Term) {
        match self.relation {
            Relation::Eq => (self.lhs.clone(), self.rhs.clone()),
            Relation::Leq => (
                Term::meet(self.lhs.clone(), self.rhs.clone()),
                self.lhs.clone(),
            ),
        }
    }

    pub fn desugared(&self) -> Equation {
        let (lhs, rhs) = self.sides();
        Equation::eq(lhs, rhs)
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<String>) {
        self.lhs.collect_vars(out);
        self.rhs.collect_vars(out);
    }

    pub fn collect_constants(&self, out: &mut BTreeSet<String>) {
        self.lhs.collect_constants(out);
        self.rhs.collect_constants(out);
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.relation {
            Relation::Eq => "=",
            Relation::Leq => "<=",
        };
        write!(f, "{} {op} {}", self.lhs, self.rhs)
    }
}

/// Sorts variable names `x<digits>` by their numeric suffix.
pub fn sort_vars<I: IntoIterator<Item = String>>(vars: I) -> Vec<String> {
    let mut v: Vec<String> = vars.into_iter().collect();
    v.sort_by_key(|name| {
        (
            name.trim_start_matches('x')
                .parse::<u64>()
                .unwrap_or(u64::MAX),
            name.clone(),
        )
    });
    v.dedup();
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

/// A finite system over an ordered variable list.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct System {
    pub vars: Vec<String>,
    pub equations: Vec<Equation>,
    /// Source position of each equation, when parsed from text.
    pub positions: Vec<Position>,
}

impl System {
    pub fn new(vars: Vec<String>, equations: Vec<Equation>) -> Result<System> {
        let sys = System {
            vars,
            equations,
            positions: Vec::new(),
        };
        sys.check_vars()?;
        Ok(sys)
    }

    /// A system over exactly the variables its equations mention.
    pub fn inferred(equations: Vec<Equation>) -> System {
        let mut vars = BTreeSet::new();
        for e in &equations {
            e.collect_vars(&mut vars);
        }
        System {
            vars: sort_vars(vars),
            equations,
            positions: Vec::new(),
        }
    }

    pub fn check_vars(&self) -> Result<()> {
        let mut used = BTreeSet::new();
        for e in &self.equations {
            e.collect_vars(&mut used);
        }
        match used.into_iter().find(|v| !self.vars.contains(v)) {
            Some(name) => Err(Error::UndeclaredVariable { name }),
            None => Ok(()),
        }
    }

    /// The same equations over `vars` followed by any variables of `extra` not yet present.
    pub fn extended_vars(&self, extra: &[String]) -> Vec<String> {
        let mut vars = self.vars.clone();
        for v in extra {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        vars
    }

    pub fn with_vars(&self, vars: Vec<String>) -> Result<System> {
        let sys = System {
            vars,
            equations: self.equations.clone(),
            positions: self.positions.clone(),
        };
        sys.check_vars()?;
        Ok(sys)
    }

    pub fn push(&mut self, eq: Equation) {
        self.equations.push(eq);
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vars {}", self.vars.join(" "))?;
        for e in &self.equations {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

/// `premises → conclusion`, universally quantified over its variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiIdentity {
    pub premises: Vec<Equation>,
    pub conclusion: Equation,
}

impl QuasiIdentity {
    pub fn vars(&self) -> Vec<String> {
        let mut vars = BTreeSet::new();
        for e in self
            .premises
            .iter()
            .chain(std::iter::once(&self.conclusion))
        {
            e.collect_vars(&mut vars);
        }
        sort_vars(vars)
    }
}

impl fmt::Display for QuasiIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.premises.iter().enumerate() {
            if i > 0 {
                f.write_str(" & ")?;
            }
            write!(f, "{p}")?;
        }
        if !self.premises.is_empty() {
            f.write_str(" ")?;
        }
        write!(f, "-> {}", self.conclusion)
    }
}

/// An assignment of elements to an ordered variable list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    vars: Arc<[String]>,
    values: Vec<Element>,
}

impl Point {
    pub fn new(vars: Arc<[String]>, values: Vec<Element>) -> Result<Point> {
        if vars.len() != values.len() {
            return Err(Error::ArityMismatch {
                expected: vars.len(),
                got: values.len(),
            });
        }
        Ok(Point { vars, values })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn shared_vars(&self) -> Arc<[String]> {
        self.vars.clone()
    }

    pub fn values(&self) -> &[Element] {
        &self.values
    }

    pub fn get(&self, name: &str) -> Option<&Element> {
        self.vars
            .iter()
            .position(|v| v == name)
            .map(|i| &self.values[i])
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, e)) in self.vars.iter().zip(&self.values).enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}={e}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_keeps_tree_shape() {
        let t = Term::join(
            Term::var("x1"),
            Term::join(Term::var("x2"), Term::constant("c1")),
        );
        assert_eq!(t.to_string(), "x1 + (x2 + c1)");
        let t = Term::not(Term::meet(Term::var("x1"), Term::Zero));
        assert_eq!(t.to_string(), "~(x1 * 0)");
        let t = Term::meet(
            Term::join(Term::One, Term::var("x1")),
            Term::not(Term::var("x2")),
        );
        assert_eq!(t.to_string(), "(1 + x1) * ~x2");
    }

    #[test]
    fn leq_desugars_to_meet() {
        let e = Equation::leq(Term::var("x1"), Term::constant("c1"));
        let d = e.desugared();
        assert_eq!(d.to_string(), "x1 * c1 = x1");
    }

    #[test]
    fn vars_sort_numerically() {
        let v = sort_vars(["x10".to_string(), "x2".into(), "x1".into(), "x2".into()]);
        assert_eq!(v, vec!["x1", "x2", "x10"]);
    }

    #[test]
    fn undeclared_variables_are_rejected() {
        let eq = Equation::eq(Term::var("x2"), Term::Zero);
        assert_eq!(
            System::new(vec!["x1".into()], vec![eq]),
            Err(Error::UndeclaredVariable { name: "x2".into() })
        );
    }
}
