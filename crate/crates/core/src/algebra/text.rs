//! Line-oriented algebra descriptions.
//!
//! ```text
//! # three atoms, one constant
//! algebra finite 3
//! const c1 = {0,1}
//! ```
//!
//! The finite-cofinite algebra additionally accepts `const c = co{..}` and
//! `const-family <prefix> = singletons|even-singletons|odd-singletons|prefixes`.

use super::calgebra::CAlgebra;
use super::element::{Algebra, Element};
use super::family::FamilyKind;
use crate::error::{Error, Result};

/// Whether a line (comments stripped) is an algebra directive.
pub fn is_algebra_directive(line: &str) -> bool {
    matches!(
        line.split_whitespace().next(),
        Some("algebra" | "const" | "const-family")
    )
}

pub(crate) fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

pub fn parse_algebra(text: &str) -> Result<CAlgebra> {
    parse_algebra_lines(text.lines().enumerate().map(|(i, l)| (i + 1, l)))
}

/// Parses numbered lines; lines that are not algebra directives must be blank.
pub fn parse_algebra_lines<'a, I>(lines: I) -> Result<CAlgebra>
where
    I: IntoIterator<Item = (usize, &'a str)>,
{
    let mut algebra: Option<Algebra> = None;
    let mut constants: Vec<(String, Element)> = Vec::new();
    let mut families: Vec<(String, FamilyKind)> = Vec::new();
    for (lineno, raw) in lines {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let column = raw.find(line).unwrap_or(0) + 1;
        let err = |msg: String| Error::syntax(lineno, column, msg);
        let mut words = line.split_whitespace();
        match words.next() {
            Some("algebra") => {
                if algebra.is_some() {
                    return Err(err("duplicate `algebra` directive".into()));
                }
                algebra = Some(match (words.next(), words.next(), words.next()) {
                    (Some("finite"), Some(k), None) => {
                        let k: u8 = k
                            .parse()
                            .map_err(|_| err(format!("bad atom count `{k}`")))?;
                        Algebra::finite(k).map_err(|e| err(e.to_string()))?
                    }
                    (Some("finite-cofinite"), None, None) => Algebra::FiniteCofinite,
                    _ => return Err(err(format!("malformed algebra directive `{line}`"))),
                });
            }
            Some(kw @ ("const" | "const-family")) => {
                let alg = algebra.ok_or_else(|| err(format!("`{kw}` before `algebra`")))?;
                let rest = line[kw.len()..].trim();
                let (name, value) = rest
                    .split_once('=')
                    .ok_or_else(|| err(format!("expected `{kw} <name> = <value>`")))?;
                let (name, value) = (name.trim(), value.trim());
                if kw == "const" {
                    if !super::calgebra::valid_constant_name(name) {
                        return Err(err(format!("invalid constant name `{name}`")));
                    }
                    let e = alg.parse_element(value).map_err(|e| match e {
                        Error::Syntax { message, .. } => err(message),
                        other => err(other.to_string()),
                    })?;
                    constants.push((name.to_string(), e));
                } else {
                    let kind: FamilyKind = value.parse().map_err(|e: Error| err(e.to_string()))?;
                    families.push((name.to_string(), kind));
                }
            }
            _ => {
                return Err(err(format!(
                    "unexpected line `{line}` in algebra description"
                )))
            }
        }
    }
    let algebra = algebra.ok_or_else(|| Error::syntax(1, 1, "missing `algebra` directive"))?;
    let mut calg = CAlgebra::new(algebra, constants)?;
    match families.len() {
        0 => {}
        1 => {
            let (prefix, kind) = &families[0];
            calg = calg.with_family(prefix, *kind)?;
        }
        _ => return Err(Error::Io("at most one const-family is supported".into())),
    }
    Ok(calg)
}

/// Renders the description back to text.
pub fn render_algebra(calg: &CAlgebra) -> String {
    let mut out = match calg.algebra() {
        Algebra::Finite { atoms } => format!("algebra finite {atoms}\n"),
        Algebra::FiniteCofinite => "algebra finite-cofinite\n".to_string(),
    };
    for (name, e) in calg.listed_constants() {
        out.push_str(&format!("const {name} = {e}\n"));
    }
    if let Some(f) = calg.family() {
        out.push_str(&format!("const-family {} = {}\n", f.prefix, f.kind));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_finite_and_cofinite() {
        let calg =
            parse_algebra("# demo\nalgebra finite 3\nconst c1 = {0,1}\nconst c2 = {2} # tail\n")
                .unwrap();
        assert_eq!(calg.algebra(), Algebra::Finite { atoms: 3 });
        assert_eq!(calg.constant("c2").unwrap().to_string(), "{2}");

        let calg =
            parse_algebra("algebra finite-cofinite\nconst cA = co{3}\nconst-family c = prefixes\n")
                .unwrap();
        assert_eq!(calg.constant("cA").unwrap().to_string(), "co{3}");
        assert_eq!(calg.constant("c2").unwrap().to_string(), "{0,1}");
        assert_eq!(parse_algebra(&render_algebra(&calg)).unwrap(), calg);
    }

    #[test]
    fn reports_positions() {
        let err = parse_algebra("algebra finite 2\n  const c1 = {5}\n").unwrap_err();
        assert_eq!(err.position(), Some((2, 3)));
        let err = parse_algebra("algebra finite 2\nconst c1 = co{0}\n").unwrap_err();
        assert_eq!(err.position(), Some((2, 1)));
        assert!(parse_algebra("const c1 = {0}").is_err());
        assert!(parse_algebra("algebra finite 2\nconst x1 = {0}").is_err());
    }
}
