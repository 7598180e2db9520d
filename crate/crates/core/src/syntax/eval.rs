use super::ast::{Equation, Point, Term};
use crate::algebra::{CAlgebra, Element};
use crate::error::{Error, Result};

/// Evaluates `t` at `point`; constants resolve in `calg`.
pub fn eval_term(t: &Term, point: &Point, calg: &CAlgebra) -> Result<Element> {
    eval_with(t, &|name| point.get(name).cloned(), calg)
}

/// Evaluates with an arbitrary variable lookup.
pub fn eval_with(
    t: &Term,
    lookup: &dyn Fn(&str) -> Option<Element>,
    calg: &CAlgebra,
) -> Result<Element> {
    Ok(match t {
        Term::Var(v) => lookup(v).ok_or_else(|| Error::UnassignedVariable { name: v.clone() })?,
        Term::Const(c) => calg
            .constant(c)
            .ok_or_else(|| Error::UnknownConstant { name: c.clone() })?,
        Term::Zero => calg.zero(),
        Term::One => calg.one(),
        Term::Join(a, b) => eval_with(a, lookup, calg)?.join(&eval_with(b, lookup, calg)?)?,
        Term::Meet(a, b) => eval_with(a, lookup, calg)?.meet(&eval_with(b, lookup, calg)?)?,
        Term::Not(a) => eval_with(a, lookup, calg)?.complement(),
    })
}

pub fn satisfies(point: &Point, eq: &Equation, calg: &CAlgebra) -> Result<bool> {
    let (lhs, rhs) = eq.sides();
    Ok(eval_term(&lhs, point, calg)? == eval_term(&rhs, point, calg)?)
}

pub fn satisfies_all(point: &Point, eqs: &[Equation], calg: &CAlgebra) -> Result<bool> {
    for e in eqs {
        if !satisfies(point, e, calg)? {
            return Ok(false);
        }
    }
    Ok(true)
}
