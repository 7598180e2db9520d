//! Fixtures for systems with exactly `k` solutions whose finite subsystems all have
//! infinitely many, and bounded certificates for them.
//!
//! A fixture file mirrors the system format:
//!
//! ```text
//! fixture chain-e1
//! algebra finite-cofinite
//! const-family c = prefixes
//! vars x1
//! k 1
//! solution x1 = 1
//! family chain n=1..
//! x1 >= c{n}
//! ```
//!
//! Lines after `family` are templates instantiated for every `n` in the range, in
//! order; `{n}`, `{2n}`, `{2n+1}` and in general `{an+b}` are substituted.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::algebra::{
    is_algebra_directive, parse_algebra_lines, strip_comment, Algebra, CAlgebra, Element,
    FamilyKind, NatSet,
};
use crate::error::{Error, Result};
use crate::normalizer::{canonicalize_system, NormalizerConfig};
use crate::syntax::{parse_equation_in, satisfies, satisfies_all, Equation, Point, System};

/// Names of the built-in fixtures.
pub const BUILTIN_FIXTURES: [&str; 2] = ["chain-e1", "chain-e0"];

const CHAIN_E1: &str = "\
fixture chain-e1
algebra finite-cofinite
const-family c = prefixes
vars x1
k 1
solution x1 = 1
family chain n=1..
x1 >= c{n}
";

// Every even natural is forced in and every odd one out; no finite or cofinite set
// does both, while each finite part leaves a cofinite range free.
const CHAIN_E0: &str = "\
fixture chain-e0
algebra finite-cofinite
const-family c = singletons
vars x1
k 0
family parity n=0..
x1 >= c{2n}
x1 <= ~c{2n+1}
";

#[derive(Clone, Debug, PartialEq, Eq)]
struct Affine {
    a: u64,
    b: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Piece {
    Text(String),
    Index(Affine),
}

/// One equation schema with `n` holes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Template {
    pieces: Vec<Piece>,
    line: usize,
}

impl Template {
    fn parse(text: &str, line: usize, column: usize) -> Result<Template> {
        let mut pieces = Vec::new();
        let mut rest = text;
        let mut offset = 0;
        while let Some(open) = rest.find('{') {
            let close = rest[open..]
                .find('}')
                .map(|c| open + c)
                .ok_or_else(|| Error::syntax(line, column + offset + open, "unclosed `{`"))?;
            pieces.push(Piece::Text(rest[..open].to_string()));
            let inner: String = rest[open + 1..close]
                .chars()
                .filter(|c| !c.is_whitespace())
                .collect();
            let affine = parse_affine(&inner).ok_or_else(|| {
                Error::syntax(
                    line,
                    column + offset + open,
                    format!("bad index `{{{inner}}}`"),
                )
            })?;
            pieces.push(Piece::Index(affine));
            offset += close + 1;
            rest = &rest[close + 1..];
        }
        pieces.push(Piece::Text(rest.to_string()));
        Ok(Template { pieces, line })
    }

    pub fn instantiate(&self, n: u64) -> String {
        self.pieces
            .iter()
            .map(|p| match p {
                Piece::Text(t) => t.clone(),
                Piece::Index(Affine { a, b }) => (a * n + b).to_string(),
            })
            .collect()
    }
}

fn parse_affine(s: &str) -> Option<Affine> {
    let (lin, b) = match s.split_once('+') {
        Some((l, b)) => (l, b.parse().ok()?),
        None => (s, 0),
    };
    let a = match lin.strip_suffix('n')? {
        "" => 1,
        k => k.parse().ok()?,
    };
    Some(Affine { a, b })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EkFixture {
    pub name: String,
    pub calg: CAlgebra,
    pub vars: Vec<String>,
    pub k: usize,
    /// The declared full solution set.
    pub solutions: Vec<Point>,
    /// Equations that precede the generated family.
    pub fixed: Vec<Equation>,
    pub family: String,
    pub start: u64,
    pub end: Option<u64>,
    pub templates: Vec<Template>,
}

impl EkFixture {
    pub fn builtin(name: &str) -> Option<EkFixture> {
        let text = match name {
            "chain-e1" => CHAIN_E1,
            "chain-e0" => CHAIN_E0,
            _ => return None,
        };
        Some(
            parse_fixture(text, |_| unreachable!("built-ins are self-contained"))
                .expect("valid built-in"),
        )
    }

    /// The `i`-th equation of the schematic system (fixed equations first).
    pub fn equation(&self, i: usize) -> Result<Option<Equation>> {
        if i < self.fixed.len() {
            return Ok(Some(self.fixed[i].clone()));
        }
        let j = i - self.fixed.len();
        let per = self.templates.len().max(1);
        let n = self.start + (j / per) as u64;
        if self.templates.is_empty() || self.end.is_some_and(|e| n > e) {
            return Ok(None);
        }
        let template = &self.templates[j % per];
        parse_equation_in(&template.instantiate(n), &self.calg)
            .map(Some)
            .map_err(|e| match e {
                Error::Syntax {
                    column, message, ..
                } => Error::syntax(template.line, column, message),
                other => other,
            })
    }

    /// The first `count` equations.
    pub fn prefix(&self, count: usize) -> Result<Vec<Equation>> {
        let mut out = Vec::with_capacity(count);
        for i in 0..count {
            match self.equation(i)? {
                Some(eq) => out.push(eq),
                None => break,
            }
        }
        Ok(out)
    }

    /// Number of equations covering family indices `start..=start + bound`.
    pub fn equations_up_to(&self, bound: usize) -> usize {
        self.fixed.len() + self.templates.len() * (bound + 1)
    }
}

/// Parses a fixture; `include` loads the algebra named by `include-algebra`.
pub fn parse_fixture<F>(text: &str, include: F) -> Result<EkFixture>
where
    F: Fn(&str) -> Result<CAlgebra>,
{
    let mut name = None;
    let mut algebra_lines = Vec::new();
    let mut included = None;
    let mut header: Vec<(usize, usize, String)> = Vec::new();
    let mut template_lines = Vec::new();
    let mut family: Option<(String, u64, Option<u64>)> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let column = raw.find(line).unwrap_or(0) + 1;
        let mut words = line.split_whitespace();
        let head = words.next().unwrap_or("");
        if family.is_some() {
            template_lines.push((line_no, column, line.to_string()));
            continue;
        }
        match head {
            "fixture" => name = Some(words.collect::<Vec<_>>().join(" ")),
            "include-algebra" => {
                let path = words
                    .next()
                    .ok_or_else(|| Error::syntax(line_no, column, "missing path"))?;
                included = Some(include(path)?);
            }
            "family" => {
                let (fname, range) = match (words.next(), words.next(), words.next()) {
                    (Some(f), Some(r), None) => (f, r),
                    _ => {
                        return Err(Error::syntax(
                            line_no,
                            column,
                            "expected `family <name> n=<a>..[b]`",
                        ))
                    }
                };
                let bad = || Error::syntax(line_no, column, format!("bad range `{range}`"));
                let (lo, hi) = range
                    .strip_prefix("n=")
                    .and_then(|r| r.split_once(".."))
                    .ok_or_else(bad)?;
                let lo: u64 = lo.parse().map_err(|_| bad())?;
                let hi = if hi.is_empty() {
                    None
                } else {
                    Some(hi.parse::<u64>().map_err(|_| bad())?)
                };
                family = Some((fname.to_string(), lo, hi));
            }
            _ if is_algebra_directive(line) => algebra_lines.push((line_no, raw)),
            _ => header.push((line_no, column, line.to_string())),
        }
    }
    let calg = match (included, algebra_lines.is_empty()) {
        (Some(c), true) => c,
        (None, false) => parse_algebra_lines(algebra_lines)?,
        (Some(_), false) => {
            return Err(Error::syntax(
                1,
                1,
                "both `include-algebra` and inline algebra",
            ))
        }
        (None, true) => return Err(Error::syntax(1, 1, "fixture has no algebra")),
    };
    let (family, start, end) =
        family.ok_or_else(|| Error::syntax(1, 1, "fixture has no `family` directive"))?;
    let mut vars: Option<Vec<String>> = None;
    let mut k = None;
    let mut solution_lines = Vec::new();
    let mut fixed = Vec::new();
    for (line_no, column, line) in header {
        let (head, tail) = line.split_once(char::is_whitespace).unwrap_or((&line, ""));
        match head {
            "vars" => vars = Some(tail.split_whitespace().map(String::from).collect()),
            "k" => {
                k = Some(tail.trim().parse().map_err(|_| {
                    Error::syntax(
                        line_no,
                        column,
                        format!("bad solution count `{}`", tail.trim()),
                    )
                })?)
            }
            "solution" => solution_lines.push((line_no, column, tail.to_string())),
            _ => fixed
                .push(parse_equation_in(&line, &calg).map_err(|e| relocate(e, line_no, column))?),
        }
    }
    let vars = vars.ok_or_else(|| Error::syntax(1, 1, "fixture has no `vars` line"))?;
    let k = k.ok_or_else(|| Error::syntax(1, 1, "fixture has no `k` line"))?;
    let shared: Arc<[String]> = vars.iter().cloned().collect();
    let mut solutions = Vec::new();
    for (line_no, column, text) in solution_lines {
        let mut values = vec![None; vars.len()];
        for part in text.split(',') {
            let (v, e) = part
                .split_once('=')
                .ok_or_else(|| Error::syntax(line_no, column, "expected `x1 = <element>, ..`"))?;
            let slot = vars.iter().position(|x| x == v.trim()).ok_or_else(|| {
                Error::syntax(
                    line_no,
                    column,
                    format!("undeclared variable `{}`", v.trim()),
                )
            })?;
            values[slot] = Some(
                calg.algebra()
                    .parse_element(e.trim())
                    .map_err(|err| Error::syntax(line_no, column, err.to_string()))?,
            );
        }
        let values: Option<Vec<Element>> = values.into_iter().collect();
        let values = values
            .ok_or_else(|| Error::syntax(line_no, column, "solution leaves a variable unset"))?;
        solutions.push(Point::new(shared.clone(), values)?);
    }
    let mut templates = Vec::new();
    for (line_no, column, line) in template_lines {
        let t = Template::parse(&line, line_no, column)?;
        parse_equation_in(&t.instantiate(start), &calg)
            .map_err(|e| relocate(e, line_no, column))?;
        templates.push(t);
    }
    Ok(EkFixture {
        name: name.unwrap_or_else(|| family.clone()),
        calg,
        vars,
        k,
        solutions,
        fixed,
        family,
        start,
        end,
        templates,
    })
}

fn relocate(e: Error, line: usize, column: usize) -> Error {
    match e {
        Error::Syntax {
            column: c, message, ..
        } => Error::syntax(line, column + c - 1, message),
        other => Error::syntax(line, column, other.to_string()),
    }
}

/// Solutions of the one-variable prefix form the interval `[lower, upper]`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Interval {
    lower: NatSet,
    upper: NatSet,
}

fn naturals(e: &Element) -> &NatSet {
    match e {
        Element::Naturals(s) => s,
        Element::Atoms { .. } => unreachable!("checked finite-cofinite host"),
    }
}

fn interval(eqs: &[Equation], fixture: &EkFixture) -> Result<Interval> {
    let sys = System::new(fixture.vars.clone(), eqs.to_vec())?;
    let cs = canonicalize_system(&sys, &fixture.calg, &NormalizerConfig::default())?;
    // z(0) = ~x1 <= b0 and z(1) = x1 <= b1.
    Ok(Interval {
        lower: naturals(cs.bound(0)).complement(),
        upper: naturals(cs.bound(1)).clone(),
    })
}

impl Interval {
    /// Naturals that may be toggled freely.
    fn free(&self) -> NatSet {
        self.upper.intersection(&self.lower.complement())
    }

    /// All members of the interval whose listed naturals lie below `bound`.
    fn bounded_members(&self, bound: u64, cap: usize) -> (u128, Vec<Element>) {
        let in_range = |s: &NatSet| s.listed().iter().all(|&m| m < bound);
        let lower = &self.lower;
        let upper_gap = self.upper.complement();
        let mut free = Vec::new();
        for i in 0..bound {
            let forced_in = lower.contains(i);
            let forced_out = !self.upper.contains(i);
            if forced_in && forced_out {
                return (0, Vec::new());
            }
            if !forced_in && !forced_out {
                free.push(i);
            }
        }
        let fixed_in: Vec<u64> = (0..bound).filter(|&i| lower.contains(i)).collect();
        let mut count = 0u128;
        let mut shown = Vec::new();
        // Finite members: everything at or beyond `bound` is absent.
        let finite_ok = !lower.is_cofinite() && in_range(lower);
        // Cofinite members: everything at or beyond `bound` is present.
        let cofinite_ok = !upper_gap.is_cofinite() && in_range(&upper_gap);
        for (ok, cofinite) in [(finite_ok, false), (cofinite_ok, true)] {
            if !ok {
                continue;
            }
            count += 1u128 << free.len().min(127);
            for mask in 0u64..(1u64 << free.len().min(20)) {
                if shown.len() >= cap {
                    break;
                }
                let mut members = fixed_in.clone();
                members.extend(
                    free.iter()
                        .enumerate()
                        .filter(|(j, _)| mask >> j & 1 == 1)
                        .map(|(_, &i)| i),
                );
                let s = NatSet::finite(members);
                let set = if cofinite {
                    NatSet::cofinite((0..bound).filter(|&i| !s.contains(i)))
                } else {
                    s
                };
                shown.push(Element::Naturals(set));
            }
        }
        (count, shown)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixEvidence {
    pub length: usize,
    /// Whether the prefix has infinitely many solutions.
    pub infinite: bool,
    pub solutions: Vec<Element>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EkCertificate {
    pub fixture: String,
    pub k: usize,
    pub bound: usize,
    pub prefixes: Vec<PrefixEvidence>,
    /// Equations checked against the declared solutions and the survivors.
    pub equations_checked: usize,
    pub survivor_count: u128,
    pub survivors: Vec<Element>,
    pub failures: Vec<String>,
}

impl EkCertificate {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Bounded certificate that `fixture` has exactly `k` solutions while every finite
/// prefix has infinitely many:
///
/// * (a) each prefix of length `m ≤ bound` has at least `bound` distinct solutions,
///   each checked against the prefix;
/// * (b) the declared solutions satisfy every equation for family indices up to
///   `start + bound`, and no other element whose listed naturals lie below `bound`
///   survives those equations.
pub fn verify_ek_fixture(fixture: &EkFixture, bound: usize) -> Result<EkCertificate> {
    if fixture.calg.algebra() != Algebra::FiniteCofinite {
        return Err(Error::NoetherianFixture(format!(
            "`{}` lives in {}",
            fixture.name,
            fixture.calg.algebra()
        )));
    }
    if fixture.calg.has_finite_constants() {
        return Err(Error::NoetherianFixture(format!(
            "`{}` has finitely many constants",
            fixture.name
        )));
    }
    if fixture.vars.len() != 1 {
        return Err(Error::Precondition {
            constraint: "certificates are computed for one-variable fixtures".into(),
        });
    }
    let mut failures = Vec::new();
    if fixture.solutions.len() != fixture.k {
        failures.push(format!(
            "declared k = {} but {} solutions listed",
            fixture.k,
            fixture.solutions.len()
        ));
    }
    let wanted = fixture.equations_up_to(bound);
    let equations = fixture.prefix(wanted.max(bound))?;
    if equations.len() < wanted.max(bound) {
        failures.push(format!(
            "generator stops after {} equations, {} needed",
            equations.len(),
            wanted.max(bound)
        ));
    }
    let mut prefixes = Vec::new();
    for m in 1..=bound.min(equations.len()) {
        let eqs = &equations[..m];
        let iv = interval(eqs, fixture)?;
        let free = iv.free();
        let consistent = iv.lower.intersection(&iv.upper.complement()) == NatSet::empty();
        let infinite = consistent && free.is_cofinite();
        let lower = iv.lower.clone();
        let mut solutions = Vec::new();
        if consistent {
            solutions.push(Element::Naturals(lower.clone()));
            let extra = if free.is_cofinite() {
                (0u64..)
                    .filter(|&i| free.contains(i))
                    .take(bound)
                    .collect::<Vec<_>>()
            } else {
                free.listed().iter().copied().take(bound).collect()
            };
            for i in extra {
                let with_i = lower.union(&NatSet::finite([i]));
                solutions.push(Element::Naturals(with_i));
                if solutions.len() >= bound {
                    break;
                }
            }
        }
        let shared: Arc<[String]> = fixture.vars.iter().cloned().collect();
        let distinct: BTreeSet<&Element> = solutions.iter().collect();
        for s in &solutions {
            let p = Point::new(shared.clone(), vec![s.clone()])?;
            if !satisfies_all(&p, eqs, &fixture.calg)? {
                failures.push(format!("prefix {m}: {s} does not solve it"));
            }
        }
        if distinct.len() < bound || !infinite {
            failures.push(format!(
                "prefix {m}: {} distinct solutions found{}",
                distinct.len(),
                if infinite {
                    ""
                } else {
                    ", solution set is finite"
                }
            ));
        }
        prefixes.push(PrefixEvidence {
            length: m,
            infinite,
            solutions,
        });
    }
    let checked = &equations[..wanted.min(equations.len())];
    for p in &fixture.solutions {
        for eq in checked {
            if !satisfies(p, eq, &fixture.calg)? {
                failures.push(format!("declared solution {p} violates {eq}"));
                break;
            }
        }
    }
    let iv = interval(checked, fixture)?;
    let (survivor_count, survivors) = iv.bounded_members(bound as u64, 16);
    let declared: BTreeSet<Element> = fixture
        .solutions
        .iter()
        .map(|p| p.values()[0].clone())
        .collect();
    let found: BTreeSet<Element> = survivors.iter().cloned().collect();
    if survivor_count != fixture.k as u128 || found != declared {
        failures.push(format!(
            "{survivor_count} elements below payload {bound} survive {} equations, declared {}",
            checked.len(),
            fixture.k
        ));
    }
    Ok(EkCertificate {
        fixture: fixture.name.clone(),
        k: fixture.k,
        bound,
        prefixes,
        equations_checked: checked.len(),
        survivor_count,
        survivors,
        failures,
    })
}

/// The family of a fixture's constants, if the fixture uses one.
pub fn fixture_family(fixture: &EkFixture) -> Option<FamilyKind> {
    fixture.calg.family().map(|f| f.kind)
}
