use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::{CAlgebra, Element};
use crate::error::{Error, Result};
use crate::sample::{stream, TermSampler};
use crate::solver::{radical_member_by_enumeration, search_points, RadicalVerdict, SolverConfig};
use crate::syntax::{satisfies, satisfies_all, Point, QuasiIdentity};

/// Largest `|C|` whose subsets are enumerated.
pub const GEOM_SUBSET_CAP: usize = 16;

/// Family members compared when both hosts carry schematic constants.
const FAMILY_PROBE: u64 = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeomVerdict {
    Equivalent { reason: String },
    Inequivalent { witness: String },
    Unknown { bound: usize, reason: String },
}

impl fmt::Display for GeomVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeomVerdict::Equivalent { reason } => write!(f, "equivalent ({reason})"),
            GeomVerdict::Inequivalent { witness } => write!(f, "inequivalent ({witness})"),
            GeomVerdict::Unknown { bound, reason } => {
                write!(f, "unknown (bound {bound}: {reason})")
            }
        }
    }
}

fn signatures(calg: &CAlgebra) -> BTreeSet<Vec<bool>> {
    calg.cells()
        .unwrap_or_default()
        .iter()
        .map(|c| c.signature.clone())
        .collect()
}

/// Whether `cᵢ ↦ cᵢ` extends to an isomorphism of the constant subalgebras.
pub fn check_isomorphic_constants(a1: &CAlgebra, a2: &CAlgebra) -> Result<()> {
    let n1: Vec<&String> = a1.listed_constants().keys().collect();
    let n2: Vec<&String> = a2.listed_constants().keys().collect();
    if n1 != n2 {
        return Err(Error::NonIsomorphicConstants(format!(
            "constant names differ: {n1:?} vs {n2:?}"
        )));
    }
    match (a1.family(), a2.family()) {
        (None, None) => {
            if signatures(a1) != signatures(a2) {
                return Err(Error::NonIsomorphicConstants(format!(
                    "|C| = {} vs {}, or the constants satisfy different relations",
                    a1.c_cardinality().map_or("?".into(), |c| c.to_string()),
                    a2.c_cardinality().map_or("?".into(), |c| c.to_string())
                )));
            }
            Ok(())
        }
        (Some(f1), Some(f2)) if f1.prefix == f2.prefix => Ok(()),
        _ => Err(Error::NonIsomorphicConstants(
            "one subalgebra of constants is finite, the other infinite".into(),
        )),
    }
}

/// Geometric equivalence of two hosts sharing `C`: every system inconsistent over one
/// is inconsistent over the other, and a set of constants has infimum 0 in one host
/// iff it has in the other.
pub fn geom_equivalent(a1: &CAlgebra, a2: &CAlgebra) -> Result<GeomVerdict> {
    check_isomorphic_constants(a1, a2)?;
    if let (Some(f1), Some(_)) = (a1.family(), a2.family()) {
        if a1 == a2 {
            return Ok(GeomVerdict::Equivalent {
                reason: "identical C-algebras".into(),
            });
        }
        for n in 0..FAMILY_PROBE {
            for m in 0..FAMILY_PROBE {
                let name_n = format!("{}{n}", f1.prefix);
                let name_m = format!("{}{m}", f1.prefix);
                let meet = |calg: &CAlgebra| -> Option<bool> {
                    let x = calg.constant(&name_n)?;
                    let y = calg.constant(&name_m)?;
                    Some(x.meet(&y).ok()?.is_zero())
                };
                if meet(a1) != meet(a2) {
                    return Err(Error::NonIsomorphicConstants(format!(
                        "{name_n}*{name_m} is zero in exactly one host"
                    )));
                }
            }
        }
        return Ok(GeomVerdict::Unknown {
            bound: FAMILY_PROBE as usize,
            reason: "infinite families agree on the probed members".into(),
        });
    }
    let cells = a1.cells().map_or(0, |c| c.len());
    let size = 1usize << cells;
    if size > GEOM_SUBSET_CAP {
        return Ok(GeomVerdict::Unknown {
            bound: GEOM_SUBSET_CAP,
            reason: format!("|C| = {size} exceeds the subset cap"),
        });
    }
    // Elements of C are unions of cells, indexed by cell masks in both hosts.
    for subset in 0u64..1 << size {
        let mut m1 = a1.one();
        let mut m2 = a2.one();
        for mask in (0..size as u64).filter(|i| subset >> i & 1 == 1) {
            m1 = m1.meet(&a1.union_of_cells(mask))?;
            m2 = m2.meet(&a2.union_of_cells(mask))?;
        }
        if m1.is_zero() != m2.is_zero() {
            return Ok(GeomVerdict::Inequivalent {
                witness: format!("subset {subset:#x} of C has infimum 0 in exactly one host"),
            });
        }
    }
    Ok(GeomVerdict::Equivalent {
        reason: format!(
            "|C| = {size}; all {} subsets of C agree on zero infima; consistency depends only on C",
            1u64 << size
        ),
    })
}

/// A point where every premise holds and the conclusion fails.
pub fn quasi_identity_counterexample(
    qi: &QuasiIdentity,
    calg: &CAlgebra,
    cfg: &SolverConfig,
) -> Result<Option<Point>> {
    let vars = qi.vars();
    let found = search_points(&vars, calg, cfg, |p| {
        Ok(satisfies_all(p, &qi.premises, calg)? && !satisfies(p, &qi.conclusion, calg)?)
    })?;
    Ok(found.into_iter().next())
}

pub fn eval_quasi_identity(
    qi: &QuasiIdentity,
    calg: &CAlgebra,
    cfg: &SolverConfig,
) -> Result<bool> {
    Ok(quasi_identity_counterexample(qi, calg, cfg)?.is_none())
}

/// Sampling parameters for agreement checks between two hosts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleSpec {
    pub samples: usize,
    pub seed: u64,
    pub vars: usize,
    pub depth: usize,
    pub max_equations: usize,
}

impl SampleSpec {
    pub fn systems(samples: usize, seed: u64) -> Self {
        SampleSpec {
            samples,
            seed,
            vars: 2,
            depth: 3,
            max_equations: 3,
        }
    }

    pub fn quasi_identities(samples: usize, seed: u64) -> Self {
        SampleSpec {
            samples,
            seed,
            vars: 2,
            depth: 4,
            max_equations: 3,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AgreementReport {
    pub trials: usize,
    pub mismatches: Vec<String>,
}

fn verdict_kind<W>(v: &RadicalVerdict<W>) -> &'static str {
    v.label()
}

/// Radical verdicts of sampled systems and candidates, decided by enumeration in each
/// host and compared.
pub fn radical_agreement(
    a1: &CAlgebra,
    a2: &CAlgebra,
    spec: SampleSpec,
    candidates: usize,
    cfg: &SolverConfig,
) -> Result<AgreementReport> {
    let sampler = TermSampler::for_algebra(spec.vars, a1, spec.depth);
    let outcomes = cfg.normalizer.exec.try_map_range(spec.samples, |i| {
        let mut rng = stream(spec.seed, i as u64);
        let sys = sampler.system(&mut rng, spec.max_equations);
        let mut bad = Vec::new();
        for _ in 0..candidates {
            let cand = sampler.equation(&mut rng);
            let v1 = radical_member_by_enumeration(&sys, &cand, a1, cfg)?;
            let v2 = radical_member_by_enumeration(&sys, &cand, a2, cfg)?;
            if verdict_kind(&v1) != verdict_kind(&v2) {
                bad.push(format!(
                    "sample {i}: [{sys}] / {cand}: {} vs {}",
                    v1.label(),
                    v2.label()
                ));
            }
        }
        Ok::<_, Error>(bad)
    })?;
    Ok(AgreementReport {
        trials: spec.samples * candidates,
        mismatches: outcomes.into_iter().flatten().collect(),
    })
}

/// Truth values of sampled quasi-identities in both hosts, compared.
pub fn quasi_identity_agreement(
    a1: &CAlgebra,
    a2: &CAlgebra,
    spec: SampleSpec,
    cfg: &SolverConfig,
) -> Result<AgreementReport> {
    let sampler = TermSampler::for_algebra(spec.vars, a1, spec.depth);
    let outcomes = cfg.normalizer.exec.try_map_range(spec.samples, |i| {
        // Streams above 2^32 keep these draws apart from the system samples.
        let mut rng = stream(spec.seed, (1 << 32) + i as u64);
        let qi = sampler.quasi_identity(&mut rng, spec.max_equations);
        let t1 = eval_quasi_identity(&qi, a1, cfg)?;
        let t2 = eval_quasi_identity(&qi, a2, cfg)?;
        Ok::<_, Error>((t1 != t2).then(|| format!("sample {i}: {qi}: {t1} vs {t2}")))
    })?;
    Ok(AgreementReport {
        trials: spec.samples,
        mismatches: outcomes.into_iter().flatten().collect(),
    })
}

/// Elements of `C` in the first host paired with their images in the second.
pub fn constant_correspondence(a1: &CAlgebra, a2: &CAlgebra) -> Result<Vec<(Element, Element)>> {
    check_isomorphic_constants(a1, a2)?;
    let cells = a1.cells().map_or(0, |c| c.len());
    if cells > 20 {
        return Err(Error::SubalgebraTooLarge { limit: 1 << 20 });
    }
    // Cells are produced in the same signature order in both hosts.
    Ok((0u64..1 << cells)
        .map(|m| (a1.union_of_cells(m), a2.union_of_cells(m)))
        .collect())
}
