//! Change of variables `X → Z` and the canonical bound form of systems.
//!
//! For variables `x1..xn` there is one `z_α` per tuple `α ∈ {0,1}ⁿ`. Tuples are
//! encoded as integers with `a1` as the most significant bit, so numeric order is
//! lexicographic order on tuples. A canonical system is the list of bounds
//! `z_α ≤ c_α` together with the implicit constraints `z_α·z_β = 0` (α ≠ β) and
//! `⋁ z_α = 1`.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{infimum_finite, Algebra, CAlgebra, Element};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::syntax::{eval_with, Equation, Point, System, Term};

pub const DEFAULT_BLOWUP_LIMIT: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NormalizerConfig {
    /// Largest accepted variable count.
    pub blowup_limit: usize,
    pub exec: Execution,
}

impl Default for NormalizerConfig {
    fn default() -> Self {
        NormalizerConfig {
            blowup_limit: DEFAULT_BLOWUP_LIMIT,
            exec: Execution::default(),
        }
    }
}

/// Coordinate `i` (1-based) of tuple `alpha` in `{0,1}ⁿ`.
pub fn alpha_coordinate(n: usize, alpha: usize, i: usize) -> bool {
    debug_assert!((1..=n).contains(&i));
    alpha >> (n - i) & 1 == 1
}

pub fn alpha_tuple(n: usize, alpha: usize) -> Vec<u8> {
    (1..=n)
        .map(|i| alpha_coordinate(n, alpha, i) as u8)
        .collect()
}

/// `z(a1,..,an)`.
pub fn alpha_label(n: usize, alpha: usize) -> String {
    let parts: Vec<String> = alpha_tuple(n, alpha).iter().map(u8::to_string).collect();
    format!("z({})", parts.join(","))
}

/// Parses `z(a1,..,an)` into `(n, alpha)`.
pub fn parse_alpha_label(text: &str) -> Option<(usize, usize)> {
    let inner = text.trim().strip_prefix("z(")?.strip_suffix(')')?;
    if inner.trim().is_empty() {
        return Some((0, 0));
    }
    let mut alpha = 0usize;
    let mut n = 0;
    for part in inner.split(',') {
        let bit = match part.trim() {
            "0" => 0,
            "1" => 1,
            _ => return None,
        };
        alpha = alpha << 1 | bit;
        n += 1;
    }
    Some((n, alpha))
}

fn check_blowup(n: usize, limit: usize) -> Result<()> {
    if n > limit || n >= usize::BITS as usize - 1 {
        Err(Error::BlowUpLimit { vars: n, limit })
    } else {
        Ok(())
    }
}

/// A point of Z-space: one coordinate per `α ∈ {0,1}ⁿ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZPoint {
    n: usize,
    coords: Vec<Element>,
}

impl ZPoint {
    pub fn new(n: usize, coords: Vec<Element>) -> Result<ZPoint> {
        let expected = 1usize
            .checked_shl(n as u32)
            .ok_or(Error::BlowUpLimit { vars: n, limit: 63 })?;
        if coords.len() != expected {
            return Err(Error::ArityMismatch {
                expected,
                got: coords.len(),
            });
        }
        if let Some(first) = coords.first() {
            let alg = first.algebra();
            if let Some(bad) = coords.iter().find(|c| c.algebra() != alg) {
                return Err(Error::CarrierMismatch {
                    left: alg,
                    right: bad.algebra(),
                });
            }
        }
        Ok(ZPoint { n, coords })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[Element] {
        &self.coords
    }

    pub fn coord(&self, alpha: usize) -> &Element {
        &self.coords[alpha]
    }

    pub fn algebra(&self) -> Algebra {
        self.coords[0].algebra()
    }

    pub fn join_all(&self) -> Element {
        self.coords
            .iter()
            .skip(1)
            .fold(self.coords[0].clone(), |acc, c| {
                acc.join(c).expect("one carrier")
            })
    }

    pub fn is_pairwise_disjoint(&self) -> bool {
        let mut seen = self.algebra().zero();
        for c in &self.coords {
            if !seen.meet(c).expect("one carrier").is_zero() {
                return false;
            }
            seen = seen.join(c).expect("one carrier");
        }
        true
    }

    pub fn is_disjoint_cover(&self) -> bool {
        self.is_pairwise_disjoint() && self.join_all().is_one()
    }

    /// One `z(..) = element` line per coordinate.
    pub fn lines(&self) -> Vec<String> {
        self.coords
            .iter()
            .enumerate()
            .map(|(a, c)| format!("{} = {c}", alpha_label(self.n, a)))
            .collect()
    }
}

impl fmt::Display for ZPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, c) in self.coords.iter().enumerate() {
            if a > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}={c}", alpha_label(self.n, a))?;
        }
        Ok(())
    }
}

/// `x_i = ⋁ { z_α : a_i = 1 }`.
pub fn x_from_z(z: &ZPoint, vars: Arc<[String]>) -> Result<Point> {
    if vars.len() != z.n {
        return Err(Error::ArityMismatch {
            expected: z.n,
            got: vars.len(),
        });
    }
    let zero = z.algebra().zero();
    let mut values = Vec::with_capacity(z.n);
    for i in 1..=z.n {
        let mut x = zero.clone();
        for (alpha, c) in z.coords.iter().enumerate() {
            if alpha_coordinate(z.n, alpha, i) {
                x = x.join(c)?;
            }
        }
        values.push(x);
    }
    Point::new(vars, values)
}

/// `z_α = x1^{a1}·..·xn^{an}` with `x^1 = x`, `x^0 = x̄`.
pub fn z_from_x(p: &Point, calg: &CAlgebra) -> Result<ZPoint> {
    let n = p.vars().len();
    check_blowup(n, usize::BITS as usize - 2)?;
    let coords = (0..1usize << n)
        .map(|alpha| {
            p.values()
                .iter()
                .enumerate()
                .try_fold(calg.one(), |acc, (i, x)| {
                    if alpha_coordinate(n, alpha, i + 1) {
                        acc.meet(x)
                    } else {
                        acc.meet(&x.complement())
                    }
                })
        })
        .collect::<Result<Vec<_>>>()?;
    ZPoint::new(n, coords)
}

/// The term `x1^{a1}·..·xn^{an}` for `z_α`.
pub fn z_term(vars: &[String], alpha: usize) -> Term {
    let n = vars.len();
    let literal = |i: usize| {
        let v = Term::var(vars[i].clone());
        if alpha_coordinate(n, alpha, i + 1) {
            v
        } else {
            Term::not(v)
        }
    };
    (1..n).fold(if n == 0 { Term::One } else { literal(0) }, |acc, i| {
        Term::meet(acc, literal(i))
    })
}

/// The bound form of a system: `z_α ≤ bounds[α]` plus the implicit disjointness
/// and cover constraints. `raw[α]` keeps the per-equation bounds whose meet is
/// `bounds[α]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalSystem {
    vars: Vec<String>,
    bounds: Vec<Element>,
    raw: Vec<Vec<Element>>,
}

impl CanonicalSystem {
    /// Builds a canonical system whose raw bound sets are the given bounds.
    pub fn from_bounds(vars: Vec<String>, bounds: Vec<Element>) -> Result<Self> {
        let raw = bounds.iter().map(|b| vec![b.clone()]).collect();
        CanonicalSystem::from_raw(vars, raw, bounds)
    }

    fn from_raw(vars: Vec<String>, raw: Vec<Vec<Element>>, bounds: Vec<Element>) -> Result<Self> {
        let n = vars.len();
        let expected = 1usize << n;
        if bounds.len() != expected || raw.len() != expected {
            return Err(Error::ArityMismatch {
                expected,
                got: bounds.len(),
            });
        }
        Ok(CanonicalSystem { vars, bounds, raw })
    }

    pub fn n(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn bounds(&self) -> &[Element] {
        &self.bounds
    }

    pub fn bound(&self, alpha: usize) -> &Element {
        &self.bounds[alpha]
    }

    pub fn raw(&self) -> &[Vec<Element>] {
        &self.raw
    }

    pub fn algebra(&self) -> Algebra {
        self.bounds[0].algebra()
    }

    fn check_point(&self, z: &ZPoint) -> Result<()> {
        if z.n != self.n() {
            return Err(Error::ArityMismatch {
                expected: 1 << self.n(),
                got: z.coords.len(),
            });
        }
        if z.algebra() != self.algebra() {
            return Err(Error::CarrierMismatch {
                left: self.algebra(),
                right: z.algebra(),
            });
        }
        Ok(())
    }

    /// First violated constraint among bounds, cover and (if `disjoint`) disjointness.
    pub fn violation(&self, z: &ZPoint, disjoint: bool) -> Result<Option<String>> {
        self.check_point(z)?;
        let n = self.n();
        for (alpha, (c, b)) in z.coords.iter().zip(&self.bounds).enumerate() {
            if !c.leq(b)? {
                return Ok(Some(format!("{} <= {b}", alpha_label(n, alpha))));
            }
        }
        if disjoint {
            for a in 0..z.coords.len() {
                for b in a + 1..z.coords.len() {
                    if !z.coords[a].meet(&z.coords[b])?.is_zero() {
                        return Ok(Some(format!(
                            "{} * {} = 0",
                            alpha_label(n, a),
                            alpha_label(n, b)
                        )));
                    }
                }
            }
        }
        if !z.join_all().is_one() {
            return Ok(Some("join of all z = 1".into()));
        }
        Ok(None)
    }

    /// Bounds, disjointness and cover all hold at `z`.
    pub fn satisfied_by(&self, z: &ZPoint) -> Result<bool> {
        Ok(self.violation(z, true)?.is_none())
    }

    /// Bounds and cover hold at `z` (disjointness not required).
    pub fn relaxed_satisfied_by(&self, z: &ZPoint) -> Result<bool> {
        Ok(self.violation(z, false)?.is_none())
    }

    /// Printed form: one bound per line, then the fixed footer.
    pub fn lines(&self) -> Vec<String> {
        let n = self.n();
        let mut out: Vec<String> = self
            .bounds
            .iter()
            .enumerate()
            .map(|(a, c)| format!("{} <= {c}", alpha_label(n, a)))
            .collect();
        out.push("z(a) * z(b) = 0 for all a != b".into());
        out.push("join of all z(a) = 1".into());
        out
    }
}

/// Evaluates both sides at the 0/1 point given by `alpha` and returns the bound
/// `¬(t(α) ⊕ s(α))`.
fn bound_at(
    lhs: &Term,
    rhs: &Term,
    vars: &[String],
    alpha: usize,
    calg: &CAlgebra,
) -> Result<Element> {
    let n = vars.len();
    let lookup = |name: &str| {
        vars.iter()
            .position(|v| v == name)
            .map(|i| calg.algebra().constant(alpha_coordinate(n, alpha, i + 1)))
    };
    let t = eval_with(lhs, &lookup, calg)?;
    let s = eval_with(rhs, &lookup, calg)?;
    Ok(t.xor(&s)?.complement())
}

pub fn canonicalize_equation(
    eq: &Equation,
    vars: &[String],
    calg: &CAlgebra,
    cfg: &NormalizerConfig,
) -> Result<CanonicalSystem> {
    let sys = System::new(vars.to_vec(), vec![eq.clone()])?;
    canonicalize_system(&sys, calg, cfg)
}

/// Merges the per-equation bound forms by taking, for each `α`, the meet of the
/// individual bounds.
pub fn canonicalize_system(
    sys: &System,
    calg: &CAlgebra,
    cfg: &NormalizerConfig,
) -> Result<CanonicalSystem> {
    sys.check_vars()?;
    let n = sys.vars.len();
    check_blowup(n, cfg.blowup_limit)?;
    let sides: Vec<(Term, Term)> = sys.equations.iter().map(Equation::sides).collect();
    let raw = cfg.exec.try_map_range(1usize << n, |alpha| {
        sides
            .iter()
            .map(|(l, r)| bound_at(l, r, &sys.vars, alpha, calg))
            .collect::<Result<Vec<_>>>()
    })?;
    let bounds = raw
        .iter()
        .map(|r| {
            if r.is_empty() {
                Ok(calg.one())
            } else {
                infimum_finite(r)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    CanonicalSystem::from_raw(sys.vars.clone(), raw, bounds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_equation;

    fn two_atoms() -> (Algebra, CAlgebra) {
        let a = Algebra::Finite { atoms: 2 };
        (
            a,
            CAlgebra::new(
                a,
                [("c1", a.set([0]).unwrap()), ("c2", a.set([1]).unwrap())],
            )
            .unwrap(),
        )
    }

    fn vars(n: usize) -> Arc<[String]> {
        (1..=n).map(|i| format!("x{i}")).collect()
    }

    #[test]
    fn labels() {
        assert_eq!(alpha_label(3, 0b011), "z(0,1,1)");
        assert_eq!(parse_alpha_label("z(0,1,1)"), Some((3, 0b011)));
        assert_eq!(parse_alpha_label("z()"), Some((0, 0)));
        assert_eq!(parse_alpha_label("z(2)"), None);
    }

    #[test]
    fn z_terms_match_the_worked_examples() {
        let v: Vec<String> = vars(3).to_vec();
        assert_eq!(z_term(&v, 0b011).to_string(), "~x1 * x2 * x3");
        assert_eq!(z_term(&v, 0b000).to_string(), "~x1 * ~x2 * ~x3");
    }

    #[test]
    fn x_from_z_examples() {
        let (a, _) = two_atoms();
        let (p, q) = (a.set([0]).unwrap(), a.set([1]).unwrap());
        let z = ZPoint::new(1, vec![p.clone(), q.clone()]).unwrap();
        assert_eq!(
            x_from_z(&z, vars(1)).unwrap().values(),
            std::slice::from_ref(&q)
        );
        let z = ZPoint::new(2, vec![a.zero(), a.zero(), a.zero(), a.one()]).unwrap();
        assert_eq!(x_from_z(&z, vars(2)).unwrap().values(), &[a.one(), a.one()]);
        // z(1,0) = {0}, z(0,1) = {1}
        let z = ZPoint::new(2, vec![a.zero(), q.clone(), p.clone(), a.zero()]).unwrap();
        assert_eq!(x_from_z(&z, vars(2)).unwrap().values(), &[p, q]);
    }

    #[test]
    fn z_from_x_example() {
        let (a, calg) = two_atoms();
        let p = Point::new(vars(1), vec![a.set([0]).unwrap()]).unwrap();
        let z = z_from_x(&p, &calg).unwrap();
        assert_eq!(z.coords(), &[a.set([1]).unwrap(), a.set([0]).unwrap()]);
        assert!(z.is_disjoint_cover());
    }

    #[test]
    fn canonical_examples() {
        let (a, calg) = two_atoms();
        let cfg = NormalizerConfig::default();
        let v: Vec<String> = vars(1).to_vec();
        let cs =
            canonicalize_equation(&parse_equation("x1 = x1").unwrap(), &v, &calg, &cfg).unwrap();
        assert!(cs.bounds().iter().all(Element::is_one));
        let c1 = a.set([0]).unwrap();
        let cs =
            canonicalize_equation(&parse_equation("x1 = c1").unwrap(), &v, &calg, &cfg).unwrap();
        assert_eq!(cs.bounds(), &[c1.complement(), c1.clone()]);
        let cs =
            canonicalize_equation(&parse_equation("x1 <= c1").unwrap(), &v, &calg, &cfg).unwrap();
        assert_eq!(cs.bounds(), &[a.one(), c1.clone()]);

        let empty = System::new(v.clone(), vec![]).unwrap();
        let cs = canonicalize_system(&empty, &calg, &cfg).unwrap();
        assert!(cs.bounds().iter().all(Element::is_one));

        let both = System::new(
            v.clone(),
            vec![
                parse_equation("x1 = c1").unwrap(),
                parse_equation("x1 = c2").unwrap(),
            ],
        )
        .unwrap();
        let cs = canonicalize_system(&both, &calg, &cfg).unwrap();
        assert!(cs.bounds().iter().all(Element::is_zero));
        assert_eq!(cs.raw()[1].len(), 2);
    }

    #[test]
    fn blowup_limit_is_enforced() {
        let (_, calg) = two_atoms();
        let cfg = NormalizerConfig {
            blowup_limit: 2,
            ..Default::default()
        };
        let sys = System::inferred(vec![parse_equation("x1 + x2 + x3 = 1").unwrap()]);
        assert_eq!(
            canonicalize_system(&sys, &calg, &cfg),
            Err(Error::BlowUpLimit { vars: 3, limit: 2 })
        );
    }
}
