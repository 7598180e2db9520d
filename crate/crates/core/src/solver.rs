//! Solution sets, consistency, radical membership and equivalence of systems.
//!
//! Enumeration is exhaustive over finite algebras and serves as the reference for
//! the closed-form rules on canonical systems:
//!
//! * a canonical system is consistent iff `⋁_α c_α = 1` (the point `(c_α)` satisfies
//!   the bounds and the cover; its splitting is a full solution);
//! * for a consistent canonical system, `z_γ ≤ c` is in the radical iff `c_γ ≤ c`
//!   (the splitting of `(c_α)` with first coordinate `γ` attains `z_γ = c_γ`).

use std::sync::Arc;

use crate::algebra::{Algebra, CAlgebra, Element, Family};
use crate::error::{Error, Result};
use crate::normalizer::{canonicalize_system, x_from_z, CanonicalSystem, NormalizerConfig, ZPoint};
use crate::splitting::{split, SplitOrder};
use crate::syntax::{satisfies, satisfies_all, Equation, Point, System};

pub const DEFAULT_BUDGET: u64 = 1 << 20;

const CHUNK: u128 = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Largest number of points an enumeration may visit.
    pub budget: u64,
    pub normalizer: NormalizerConfig,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            budget: DEFAULT_BUDGET,
            normalizer: NormalizerConfig::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolutionSet {
    /// Every solution, in lexicographic order.
    Explicit {
        vars: Arc<[String]>,
        points: Vec<Point>,
    },
    /// The canonical bounds, with the solution count when it is known.
    Symbolic {
        canonical: CanonicalSystem,
        count: Option<u128>,
    },
}

impl SolutionSet {
    pub fn count(&self) -> Option<u128> {
        match self {
            SolutionSet::Explicit { points, .. } => Some(points.len() as u128),
            SolutionSet::Symbolic { count, .. } => *count,
        }
    }

    pub fn points(&self) -> Option<&[Point]> {
        match self {
            SolutionSet::Explicit { points, .. } => Some(points),
            SolutionSet::Symbolic { .. } => None,
        }
    }
}

fn finite_elements(algebra: Algebra) -> Result<Vec<Element>> {
    algebra.elements().ok_or(Error::InfiniteAlgebra(algebra))
}

/// All points over `vars` accepted by `keep`, in lexicographic order.
pub fn search_points<F>(
    vars: &[String],
    calg: &CAlgebra,
    cfg: &SolverConfig,
    keep: F,
) -> Result<Vec<Point>>
where
    F: Fn(&Point) -> Result<bool> + Sync + Send,
{
    let elements = finite_elements(calg.algebra())?;
    let base = elements.len() as u128;
    let n = vars.len();
    let total = (0..n).try_fold(1u128, |acc, _| acc.checked_mul(base));
    let total = match total {
        Some(t) if t <= cfg.budget as u128 => t,
        _ => {
            return Err(Error::BudgetExceeded {
                needed: total.unwrap_or(u128::MAX),
                budget: cfg.budget,
            })
        }
    };
    let shared: Arc<[String]> = vars.iter().cloned().collect();
    let chunks = total.div_ceil(CHUNK) as usize;
    let found = cfg.normalizer.exec.try_map_range(chunks, |chunk| {
        let start = chunk as u128 * CHUNK;
        let end = (start + CHUNK).min(total);
        let mut out = Vec::new();
        for index in start..end {
            let mut values = vec![elements[0].clone(); n];
            let mut rest = index;
            for slot in values.iter_mut().rev() {
                *slot = elements[(rest % base) as usize].clone();
                rest /= base;
            }
            let p = Point::new(shared.clone(), values)?;
            if keep(&p)? {
                out.push(p);
            }
        }
        Ok::<_, Error>(out)
    })?;
    Ok(found.into_iter().flatten().collect())
}

/// Exact solution set by exhaustive assignment over a finite algebra.
pub fn enumerate_solutions(
    sys: &System,
    calg: &CAlgebra,
    cfg: &SolverConfig,
) -> Result<SolutionSet> {
    sys.check_vars()?;
    let points = search_points(&sys.vars, calg, cfg, |p| {
        satisfies_all(p, &sys.equations, calg)
    })?;
    Ok(SolutionSet::Explicit {
        vars: sys.vars.iter().cloned().collect(),
        points,
    })
}

/// Number of solutions of a canonical system over a finite algebra: each atom goes
/// to exactly one `z_α` whose bound contains it.
pub fn count_canonical(cs: &CanonicalSystem) -> Option<u128> {
    let Algebra::Finite { atoms } = cs.algebra() else {
        return (!is_consistent_canonical(cs)).then_some(0);
    };
    let mut count = 1u128;
    for atom in 0..atoms {
        let choices = cs
            .bounds()
            .iter()
            .filter(|b| matches!(b, Element::Atoms { bits, .. } if bits >> atom & 1 == 1))
            .count() as u128;
        count = count.checked_mul(choices)?;
    }
    Some(count)
}

/// Symbolic solution set of a system.
pub fn describe_solutions(
    sys: &System,
    calg: &CAlgebra,
    cfg: &SolverConfig,
) -> Result<SolutionSet> {
    let canonical = canonicalize_system(sys, calg, &cfg.normalizer)?;
    let count = count_canonical(&canonical);
    Ok(SolutionSet::Symbolic { canonical, count })
}

/// Every Z-space point satisfying all constraints of `cs`, by brute force.
pub fn enumerate_canonical(cs: &CanonicalSystem, cfg: &SolverConfig) -> Result<Vec<ZPoint>> {
    let z_vars: Vec<String> = (0..1usize << cs.n())
        .map(|a| format!("x{}", a + 1))
        .collect();
    let calg = CAlgebra::plain(cs.algebra());
    let n = cs.n();
    let points = search_points(&z_vars, &calg, cfg, |p| {
        cs.satisfied_by(&ZPoint::new(n, p.values().to_vec())?)
    })?;
    points
        .into_iter()
        .map(|p| ZPoint::new(n, p.values().to_vec()))
        .collect()
}

pub fn is_consistent_canonical(cs: &CanonicalSystem) -> bool {
    let join = cs
        .bounds()
        .iter()
        .skip(1)
        .fold(cs.bound(0).clone(), |acc, b| {
            acc.join(b).expect("one carrier")
        });
    join.is_one()
}

/// Radical membership verdict; `Full` marks an inconsistent system, whose radical
/// contains every equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RadicalVerdict<W> {
    Member,
    Full,
    /// `witness` solves the system and violates the candidate; `alpha` is the
    /// failing Z-coordinate.
    Nonmember {
        witness: W,
        alpha: usize,
    },
}

impl<W> RadicalVerdict<W> {
    pub fn is_member(&self) -> bool {
        !matches!(self, RadicalVerdict::Nonmember { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            RadicalVerdict::Member => "member",
            RadicalVerdict::Full => "member (inconsistent system)",
            RadicalVerdict::Nonmember { .. } => "nonmember",
        }
    }
}

/// Whether `z_γ ≤ c` lies in the radical of the canonical system.
pub fn radical_member_canonical(
    cs: &CanonicalSystem,
    gamma: usize,
    c: &Element,
) -> Result<RadicalVerdict<ZPoint>> {
    if gamma >= cs.bounds().len() {
        return Err(Error::ArityMismatch {
            expected: cs.bounds().len(),
            got: gamma + 1,
        });
    }
    if !is_consistent_canonical(cs) {
        return Ok(RadicalVerdict::Full);
    }
    if cs.bound(gamma).leq(c)? {
        return Ok(RadicalVerdict::Member);
    }
    let p = ZPoint::new(cs.n(), cs.bounds().to_vec())?;
    let witness = split(&p, &SplitOrder::with_first(cs.n(), gamma)?)?;
    Ok(RadicalVerdict::Nonmember {
        witness,
        alpha: gamma,
    })
}

/// Whether `candidate` holds on every solution of `sys`. Variables of the candidate
/// missing from the system are appended as unconstrained variables.
pub fn radical_member(
    sys: &System,
    candidate: &Equation,
    calg: &CAlgebra,
    cfg: &SolverConfig,
) -> Result<RadicalVerdict<Point>> {
    let mut extra = std::collections::BTreeSet::new();
    candidate.collect_vars(&mut extra);
    let extra = crate::syntax::sort_vars(extra);
    let vars = sys.extended_vars(&extra);
    let sys = sys.with_vars(vars.clone())?;
    let cs = canonicalize_system(&sys, calg, &cfg.normalizer)?;
    let cand_sys = System::new(vars.clone(), vec![candidate.clone()])?;
    let cand = canonicalize_system(&cand_sys, calg, &cfg.normalizer)?;
    if !is_consistent_canonical(&cs) {
        return Ok(RadicalVerdict::Full);
    }
    for (alpha, bound) in cand.bounds().iter().enumerate() {
        if let RadicalVerdict::Nonmember { witness, alpha } =
            radical_member_canonical(&cs, alpha, bound)?
        {
            let witness = x_from_z(&witness, vars.iter().cloned().collect())?;
            return Ok(RadicalVerdict::Nonmember { witness, alpha });
        }
    }
    Ok(RadicalVerdict::Member)
}

/// Definitional radical check by enumeration: `V(sys) ⊆ V(candidate)`.
pub fn radical_member_by_enumeration(
    sys: &System,
    candidate: &Equation,
    calg: &CAlgebra,
    cfg: &SolverConfig,
) -> Result<RadicalVerdict<Point>> {
    let mut extra = std::collections::BTreeSet::new();
    candidate.collect_vars(&mut extra);
    let vars = sys.extended_vars(&crate::syntax::sort_vars(extra));
    let sys = sys.with_vars(vars.clone())?;
    let solutions = search_points(&vars, calg, cfg, |p| satisfies_all(p, &sys.equations, calg))?;
    if solutions.is_empty() {
        return Ok(RadicalVerdict::Full);
    }
    for p in solutions {
        if !satisfies(&p, candidate, calg)? {
            return Ok(RadicalVerdict::Nonmember {
                witness: p,
                alpha: 0,
            });
        }
    }
    Ok(RadicalVerdict::Member)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    First,
    Second,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent,
    /// `witness` solves exactly one of the systems, the one named by `solves`.
    Inequivalent {
        witness: Point,
        solves: Side,
    },
}

fn union_vars(s1: &System, s2: &System) -> Vec<String> {
    s1.extended_vars(&s2.vars)
}

/// Equality of solution sets over `calg` by enumeration, on the union of the two
/// variable lists.
pub fn systems_equivalent(
    s1: &System,
    s2: &System,
    calg: &CAlgebra,
    cfg: &SolverConfig,
) -> Result<Equivalence> {
    let vars = union_vars(s1, s2);
    let (a, b) = (s1.with_vars(vars.clone())?, s2.with_vars(vars.clone())?);
    let differing = search_points(&vars, calg, cfg, |p| {
        Ok(satisfies_all(p, &a.equations, calg)? != satisfies_all(p, &b.equations, calg)?)
    })?;
    match differing.into_iter().next() {
        None => Ok(Equivalence::Equivalent),
        Some(p) => {
            let solves = if satisfies_all(&p, &a.equations, calg)? {
                Side::First
            } else {
                Side::Second
            };
            Ok(Equivalence::Inequivalent { witness: p, solves })
        }
    }
}

/// Equal merged bounds: the systems are equivalent over every algebra with the
/// same constants.
pub fn canonically_equivalent(
    s1: &System,
    s2: &System,
    calg: &CAlgebra,
    cfg: &SolverConfig,
) -> Result<bool> {
    let vars = union_vars(s1, s2);
    let a = canonicalize_system(&s1.with_vars(vars.clone())?, calg, &cfg.normalizer)?;
    let b = canonicalize_system(&s2.with_vars(vars)?, calg, &cfg.normalizer)?;
    Ok(a.bounds() == b.bounds())
}

/// Equivalence decided on canonical forms, valid in every host. For consistent
/// systems with different bounds the witness is a splitting of one system's bound
/// point that exceeds the other system's bound at the first differing coordinate.
pub fn canonical_equivalence(
    s1: &System,
    s2: &System,
    calg: &CAlgebra,
    cfg: &SolverConfig,
) -> Result<Equivalence> {
    let vars = union_vars(s1, s2);
    let a = canonicalize_system(&s1.with_vars(vars.clone())?, calg, &cfg.normalizer)?;
    let b = canonicalize_system(&s2.with_vars(vars.clone())?, calg, &cfg.normalizer)?;
    let shared: Arc<[String]> = vars.iter().cloned().collect();
    for (this, other, solves) in [(&a, &b, Side::First), (&b, &a, Side::Second)] {
        if !is_consistent_canonical(this) {
            continue;
        }
        for alpha in 0..this.bounds().len() {
            if let RadicalVerdict::Nonmember { witness, .. } =
                radical_member_canonical(this, alpha, other.bound(alpha))?
            {
                return Ok(Equivalence::Inequivalent {
                    witness: x_from_z(&witness, shared)?,
                    solves,
                });
            }
        }
    }
    Ok(Equivalence::Equivalent)
}

/// One member of a raw bound set `I_α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawBound {
    Element(Element),
    /// Infinitely many bounds `z_α ≤ m` for every member `m` of the family.
    Family(Family),
    /// An infinite family with no known closed form.
    Opaque(String),
}

/// Canonical bounds with the raw (possibly infinite) sets `I_α` kept apart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawCanonical {
    pub vars: Vec<String>,
    pub bound_sets: Vec<Vec<RawBound>>,
}

impl From<&CanonicalSystem> for RawCanonical {
    fn from(cs: &CanonicalSystem) -> Self {
        RawCanonical {
            vars: cs.vars().to_vec(),
            bound_sets: cs
                .raw()
                .iter()
                .map(|set| set.iter().cloned().map(RawBound::Element).collect())
                .collect(),
        }
    }
}

/// Replaces every `I_α` by the single bound `z_α ≤ inf I_α`, giving a finite
/// system equivalent to the raw one.
pub fn finite_replacement(raw: &RawCanonical, calg: &CAlgebra) -> Result<CanonicalSystem> {
    let mut bounds = Vec::with_capacity(raw.bound_sets.len());
    for (alpha, set) in raw.bound_sets.iter().enumerate() {
        let mut acc = calg.one();
        for b in set {
            let e = match b {
                RawBound::Element(e) => e.clone(),
                RawBound::Family(f) => f.infimum().ok_or_else(|| {
                    Error::NoKnownInfimum(format!(
                        "{} has no infimum in the host algebra",
                        crate::normalizer::alpha_label(raw.vars.len(), alpha)
                            + " bounds "
                            + &f.to_string()
                    ))
                })?,
                RawBound::Opaque(what) => {
                    return Err(Error::NoKnownInfimum(format!(
                        "no closed-form infimum for {what}"
                    )))
                }
            };
            acc = acc.meet(&e)?;
        }
        bounds.push(acc);
    }
    CanonicalSystem::from_bounds(raw.vars.clone(), bounds)
}
