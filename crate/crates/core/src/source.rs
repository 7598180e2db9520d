//! Loading algebras, systems, Z-points and fixtures from files.
//!
//! A system, point or fixture file names its algebra either inline (algebra
//! directives) or with `include-algebra <path>`, resolved relative to the file.

use std::fs;
use std::path::{Path, PathBuf};

use crate::algebra::{
    is_algebra_directive, parse_algebra, parse_algebra_lines, strip_comment, CAlgebra,
};
use crate::classifier::{parse_fixture, EkFixture};
use crate::error::{Error, Result};
use crate::normalizer::{parse_alpha_label, ZPoint};
use crate::syntax::{parse_system, System};

/// An error tied to the file it came from.
#[derive(Debug)]
pub struct SourceError {
    pub path: PathBuf,
    pub error: Error,
}

impl std::fmt::Display for SourceError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.error {
            Error::Syntax {
                line,
                column,
                message,
            } => {
                write!(f, "{}:{line}:{column}: {message}", self.path.display())
            }
            other => write!(f, "{}: {other}", self.path.display()),
        }
    }
}

impl std::error::Error for SourceError {}

fn at(path: &Path) -> impl Fn(Error) -> SourceError + '_ {
    move |error| SourceError {
        path: path.to_path_buf(),
        error,
    }
}

pub fn read_text(path: &Path) -> Result<String, SourceError> {
    fs::read_to_string(path).map_err(|e| SourceError {
        path: path.to_path_buf(),
        error: Error::Io(e.to_string()),
    })
}

pub fn load_algebra(path: &Path) -> Result<CAlgebra, SourceError> {
    parse_algebra(&read_text(path)?).map_err(at(path))
}

fn include_target(line: &str) -> Option<&str> {
    let mut words = line.split_whitespace();
    (words.next() == Some("include-algebra"))
        .then(|| words.next())
        .flatten()
}

/// The algebra a file refers to, from `include-algebra` or inline directives.
fn embedded_algebra(path: &Path, text: &str) -> Result<CAlgebra, SourceError> {
    let mut include = None;
    let mut inline = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if let Some(target) = include_target(line) {
            include = Some((i + 1, target));
        } else if is_algebra_directive(line) {
            inline.push((i + 1, raw));
        }
    }
    match (include, inline.is_empty()) {
        (Some((_, target)), true) => load_algebra(&resolve(path, target)),
        (None, false) => parse_algebra_lines(inline).map_err(at(path)),
        (Some((line, _)), false) => Err(at(path)(Error::syntax(
            line,
            1,
            "file has both `include-algebra` and inline algebra directives",
        ))),
        (None, true) => Err(at(path)(Error::syntax(
            1,
            1,
            "no algebra: add `include-algebra <file>`",
        ))),
    }
}

fn resolve(base: &Path, target: &str) -> PathBuf {
    base.parent().unwrap_or(Path::new(".")).join(target)
}

pub fn load_system(path: &Path) -> Result<(System, CAlgebra), SourceError> {
    let text = read_text(path)?;
    let calg = embedded_algebra(path, &text)?;
    let sys = parse_system(&text, &calg).map_err(at(path))?;
    Ok((sys, calg))
}

/// A system parsed over a given algebra; the file's own algebra, if any, must match.
pub fn load_system_over(path: &Path, calg: &CAlgebra) -> Result<System, SourceError> {
    let text = read_text(path)?;
    if let Ok(own) = embedded_algebra(path, &text) {
        if &own != calg {
            return Err(at(path)(Error::Io(
                "file declares a different algebra from the first system".into(),
            )));
        }
    }
    parse_system(&text, calg).map_err(at(path))
}

/// Z-point file: lines `z(a1,..,an) = <element>`, one per tuple.
pub fn load_point(path: &Path) -> Result<(ZPoint, CAlgebra), SourceError> {
    let text = read_text(path)?;
    let calg = embedded_algebra(path, &text)?;
    let err = at(path);
    let mut coords: Vec<Option<crate::algebra::Element>> = Vec::new();
    let mut n = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = strip_comment(raw);
        if line.is_empty() || is_algebra_directive(line) || include_target(line).is_some() {
            continue;
        }
        let column = raw.find(line).unwrap_or(0) + 1;
        let (label, value) = line.split_once('=').ok_or_else(|| {
            err(Error::syntax(
                line_no,
                column,
                "expected `z(..) = <element>`",
            ))
        })?;
        let (m, alpha) = parse_alpha_label(label.trim()).ok_or_else(|| {
            err(Error::syntax(
                line_no,
                column,
                format!("bad label `{}`", label.trim()),
            ))
        })?;
        match n {
            None => {
                n = Some(m);
                coords = vec![None; 1 << m];
            }
            Some(k) if k != m => {
                return Err(err(Error::syntax(
                    line_no,
                    column,
                    format!("expected a tuple of length {k}"),
                )))
            }
            _ => {}
        }
        let value_col = column + label.len() + 1 + (value.len() - value.trim_start().len());
        let e = calg
            .algebra()
            .parse_element(value.trim())
            .map_err(|e| err(Error::syntax(line_no, value_col, e.to_string())))?;
        if coords[alpha].replace(e).is_some() {
            return Err(err(Error::syntax(
                line_no,
                column,
                "coordinate given twice",
            )));
        }
    }
    let n = n.ok_or_else(|| err(Error::syntax(1, 1, "point file lists no coordinates")))?;
    let missing = coords.iter().position(Option::is_none);
    if let Some(alpha) = missing {
        return Err(err(Error::Io(format!(
            "missing coordinate {}",
            crate::normalizer::alpha_label(n, alpha)
        ))));
    }
    let z = ZPoint::new(n, coords.into_iter().map(Option::unwrap).collect()).map_err(err)?;
    Ok((z, calg))
}

/// A built-in fixture name or a fixture file.
pub fn load_fixture(name_or_path: &str) -> Result<EkFixture, SourceError> {
    if let Some(f) = EkFixture::builtin(name_or_path) {
        return Ok(f);
    }
    let path = Path::new(name_or_path);
    let text = read_text(path)?;
    parse_fixture(&text, |target| {
        load_algebra(&resolve(path, target)).map_err(|e| Error::Io(e.to_string()))
    })
    .map_err(at(path))
}
