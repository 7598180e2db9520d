use std::fmt;

use crate::algebra::{CAlgebra, Completeness, DescentCertificate, Element, Family, FamilyKind};
use crate::error::Result;
use crate::normalizer::canonicalize_system;
use crate::solver::SolverConfig;
use crate::syntax::System;

/// Members of a witness chain that are listed and checked.
pub const CHAIN_SHOWN: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Class {
    /// Equationally Noetherian.
    N,
    /// Weakly equationally Noetherian.
    NPrime,
    /// Consistently Noetherian.
    Nc,
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Class::N => "N",
            Class::NPrime => "N'",
            Class::Nc => "N_c",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Unknown { bound: usize },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Yes => f.write_str("yes"),
            Verdict::No => f.write_str("no"),
            Verdict::Unknown { bound } => write!(f, "unknown (bound {bound})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// `C` is finite; `cardinality` is `|C|` when it fits.
    FiniteC {
        cardinality: Option<u128>,
    },
    /// A strictly increasing chain of elements of `C`, first members listed.
    Chain {
        description: String,
        members: Vec<Element>,
    },
    Complete {
        reason: String,
    },
    /// `family` has no supremum, so the complements have no infimum.
    NoSupremum {
        family: Family,
        certificate: DescentCertificate,
    },
    SearchBound,
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evidence::FiniteC { cardinality: Some(c) } => write!(f, "|C| = {c}"),
            Evidence::FiniteC { cardinality: None } => f.write_str("C is finite"),
            Evidence::Chain { description, .. } => write!(f, "chain {description}"),
            Evidence::Complete { reason } => f.write_str(reason),
            Evidence::NoSupremum { family, certificate } => write!(
                f,
                "{family} has no supremum ({} upper bounds below payload {} each have a smaller one)",
                certificate.upper_bounds, certificate.bound
            ),
            Evidence::SearchBound => f.write_str("no decision within the search bound"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassVerdict {
    pub class: Class,
    pub verdict: Verdict,
    pub evidence: Evidence,
}

fn witness_chain(kind: FamilyKind, prefix: &str) -> Evidence {
    let first = kind.first_index();
    let name = |n: u64| format!("{prefix}{n}");
    let (description, members) = match kind {
        FamilyKind::Prefixes => {
            let members = (first..)
                .take(CHAIN_SHOWN)
                .map(|n| kind.member(n))
                .collect();
            let shown: Vec<String> = (first..first + 3).map(name).collect();
            (format!("{} < ...", shown.join(" < ")), members)
        }
        // Joins of the first n members increase strictly.
        _ => {
            let mut acc = kind.member(first);
            let mut members = vec![acc.clone()];
            for n in first + 1..first + CHAIN_SHOWN as u64 {
                acc = acc.join(&kind.member(n)).expect("one carrier");
                members.push(acc.clone());
            }
            let shown: Vec<String> = (1..=3)
                .map(|len| (first..first + len).map(name).collect::<Vec<_>>().join("+"))
                .collect();
            (format!("{} < ...", shown.join(" < ")), members)
        }
    };
    debug_assert!(members
        .windows(2)
        .all(|w| w[0].leq(&w[1]).unwrap_or(false) && w[0] != w[1]));
    Evidence::Chain {
        description,
        members,
    }
}

/// Equationally Noetherian iff `C` is finite.
pub fn classify_noetherian(calg: &CAlgebra) -> ClassVerdict {
    match calg.family() {
        None => ClassVerdict {
            class: Class::N,
            verdict: Verdict::Yes,
            evidence: Evidence::FiniteC {
                cardinality: calg.c_cardinality(),
            },
        },
        Some(family) => ClassVerdict {
            class: Class::N,
            verdict: Verdict::No,
            evidence: witness_chain(family.kind, &family.prefix),
        },
    }
}

/// Weakly equationally Noetherian iff `C` is complete in the host.
pub fn classify_weakly_noetherian(calg: &CAlgebra, bound: usize) -> ClassVerdict {
    let (verdict, evidence) = match calg.completeness(bound) {
        Completeness::Complete { reason } => (Verdict::Yes, Evidence::Complete { reason }),
        Completeness::Incomplete {
            family,
            certificate,
        } => (
            Verdict::No,
            Evidence::NoSupremum {
                family,
                certificate,
            },
        ),
        Completeness::Unknown { bound } => (Verdict::Unknown { bound }, Evidence::SearchBound),
    };
    ClassVerdict {
        class: Class::NPrime,
        verdict,
        evidence,
    }
}

/// Consistently Noetherian coincides with equationally Noetherian.
pub fn classify_consistently_noetherian(calg: &CAlgebra) -> ClassVerdict {
    ClassVerdict {
        class: Class::Nc,
        ..classify_noetherian(calg)
    }
}

/// All three verdicts, in the order N, N', N_c.
pub fn classify(calg: &CAlgebra, bound: usize) -> Vec<ClassVerdict> {
    vec![
        classify_noetherian(calg),
        classify_weakly_noetherian(calg, bound),
        classify_consistently_noetherian(calg),
    ]
}

/// A subsystem with the same merged canonical bounds: each equation is kept only
/// when it lowers some bound further.
pub fn finite_subsystem(sys: &System, calg: &CAlgebra, cfg: &SolverConfig) -> Result<System> {
    let mut kept = System::new(sys.vars.clone(), Vec::new())?;
    let mut bounds = canonicalize_system(&kept, calg, &cfg.normalizer)?
        .bounds()
        .to_vec();
    for eq in &sys.equations {
        let single = System::new(sys.vars.clone(), vec![eq.clone()])?;
        let cs = canonicalize_system(&single, calg, &cfg.normalizer)?;
        let merged: Vec<Element> = bounds
            .iter()
            .zip(cs.bounds())
            .map(|(a, b)| a.meet(b))
            .collect::<Result<_>>()?;
        if merged != bounds {
            bounds = merged;
            kept.push(eq.clone());
        }
    }
    Ok(kept)
}
