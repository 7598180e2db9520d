use std::collections::{BTreeMap, BTreeSet};

use super::element::{Algebra, Element};
use super::family::{Family, FamilyKind};
use crate::error::{Error, Result};

/// Default cap on materialized subalgebras.
pub const SUBALGEBRA_LIMIT: usize = 1 << 12;

/// Default payload bound for bounded completeness searches.
pub const DEFAULT_SEARCH_BOUND: usize = 12;

/// Least subset containing `constants`, 0 and 1 that is closed under meet, join and
/// complement, computed by saturation.
pub fn generate_subalgebra(
    algebra: Algebra,
    constants: &[Element],
    limit: usize,
) -> Result<BTreeSet<Element>> {
    let mut set: BTreeSet<Element> = [algebra.zero(), algebra.one()].into_iter().collect();
    for c in constants {
        if !algebra.contains(c) {
            return Err(Error::CarrierMismatch {
                left: algebra,
                right: c.algebra(),
            });
        }
        set.insert(c.clone());
    }
    loop {
        let current: Vec<Element> = set.iter().cloned().collect();
        let mut fresh = Vec::new();
        for (i, a) in current.iter().enumerate() {
            fresh.push(a.complement());
            for b in &current[i + 1..] {
                fresh.push(a.meet(b)?);
                fresh.push(a.join(b)?);
            }
        }
        let before = set.len();
        set.extend(fresh);
        if set.len() > limit {
            return Err(Error::SubalgebraTooLarge { limit });
        }
        if set.len() == before {
            return Ok(set);
        }
    }
}

/// A nonzero atom of the subalgebra generated by a finite constant list, with the
/// sign pattern (`true` = the constant, `false` = its complement) that cuts it out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub signature: Vec<bool>,
    pub element: Element,
}

/// Atoms of the subalgebra generated by `constants`, by successive refinement of `1`.
pub fn constant_cells(algebra: Algebra, constants: &[Element]) -> Result<Vec<Cell>> {
    let mut cells = vec![Cell {
        signature: Vec::new(),
        element: algebra.one(),
    }];
    for c in constants {
        let mut next = Vec::with_capacity(cells.len() * 2);
        for cell in cells {
            for (sign, part) in [(true, c.clone()), (false, c.complement())] {
                let piece = cell.element.meet(&part)?;
                if !piece.is_zero() {
                    let mut signature = cell.signature.clone();
                    signature.push(sign);
                    next.push(Cell {
                        signature,
                        element: piece,
                    });
                }
            }
        }
        cells = next;
    }
    Ok(cells)
}

/// Schematic constants `<prefix>0, <prefix>1, ..` drawn from a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstFamily {
    pub prefix: String,
    pub kind: FamilyKind,
}

impl ConstFamily {
    fn resolve(&self, name: &str) -> Option<Element> {
        let digits = name.strip_prefix(&self.prefix)?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let n: u64 = digits.parse().ok()?;
        (n >= self.kind.first_index()).then(|| self.kind.member(n))
    }

    /// Exact membership in the subalgebra generated by the whole family.
    fn generates(&self, e: &Element) -> bool {
        let Element::Naturals(s) = e else {
            return false;
        };
        match self.kind {
            FamilyKind::Singletons | FamilyKind::Prefixes => true,
            FamilyKind::EvenSingletons => s.listed().iter().all(|m| m % 2 == 0),
            FamilyKind::OddSingletons => s.listed().iter().all(|m| m % 2 == 1),
        }
    }
}

/// Outcome of asking whether the constant subalgebra is complete in its host.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Completeness {
    Complete {
        reason: String,
    },
    Incomplete {
        family: Family,
        certificate: DescentCertificate,
    },
    Unknown {
        bound: usize,
    },
}

/// Every candidate upper bound (payload inside `0..bound`) of a family was matched
/// with a strictly smaller upper bound, so none of them is a supremum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentCertificate {
    pub bound: usize,
    pub candidates: usize,
    pub upper_bounds: usize,
}

/// A Boolean algebra together with named constants and the subalgebra `C` they
/// generate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CAlgebra {
    algebra: Algebra,
    constants: BTreeMap<String, Element>,
    family: Option<ConstFamily>,
    cells: Vec<Cell>,
}

pub(crate) fn valid_constant_name(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next() == Some('c')
        && name.len() > 1
        && chars.all(|ch| ch.is_ascii_alphanumeric() || ch == '_')
}

impl CAlgebra {
    pub fn new<I, S>(algebra: Algebra, constants: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Element)>,
        S: Into<String>,
    {
        let mut map = BTreeMap::new();
        for (name, e) in constants {
            let name = name.into();
            if !valid_constant_name(&name) {
                return Err(Error::Io(format!("invalid constant name `{name}`")));
            }
            if !algebra.contains(&e) {
                return Err(Error::ForeignElement {
                    element: e.to_string(),
                    algebra,
                });
            }
            map.insert(name, e);
        }
        let listed: Vec<Element> = map.values().cloned().collect();
        let cells = constant_cells(algebra, &listed)?;
        Ok(CAlgebra {
            algebra,
            constants: map,
            family: None,
            cells,
        })
    }

    /// The bare algebra with `C = {0, 1}`.
    pub fn plain(algebra: Algebra) -> Self {
        CAlgebra::new(algebra, Vec::<(String, Element)>::new()).expect("no constants")
    }

    /// Adds the schematic constants `<prefix><n>`; finite-cofinite algebra only.
    pub fn with_family(mut self, prefix: &str, kind: FamilyKind) -> Result<Self> {
        if self.algebra != Algebra::FiniteCofinite {
            return Err(Error::Io(
                "constant families need the finite-cofinite algebra".into(),
            ));
        }
        if !valid_constant_name(&format!("{prefix}0")) {
            return Err(Error::Io(format!("invalid family prefix `{prefix}`")));
        }
        self.family = Some(ConstFamily {
            prefix: prefix.to_string(),
            kind,
        });
        Ok(self)
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn zero(&self) -> Element {
        self.algebra.zero()
    }

    pub fn one(&self) -> Element {
        self.algebra.one()
    }

    pub fn constant(&self, name: &str) -> Option<Element> {
        self.constants
            .get(name)
            .cloned()
            .or_else(|| self.family.as_ref()?.resolve(name))
    }

    pub fn listed_constants(&self) -> &BTreeMap<String, Element> {
        &self.constants
    }

    pub fn family(&self) -> Option<&ConstFamily> {
        self.family.as_ref()
    }

    /// Whether `C` is finite (no schematic family).
    pub fn has_finite_constants(&self) -> bool {
        self.family.is_none()
    }

    /// Atoms of `C`, when `C` is finite.
    pub fn cells(&self) -> Option<&[Cell]> {
        self.family.is_none().then_some(self.cells.as_slice())
    }

    /// `|C|`, `None` when infinite or too large for `u128`.
    pub fn c_cardinality(&self) -> Option<u128> {
        let cells = self.cells()?;
        (cells.len() < 128).then(|| 1u128 << cells.len())
    }

    /// All elements of `C` in ascending order, when `C` has at most 2^20 elements.
    pub fn generated_elements(&self) -> Option<Vec<Element>> {
        let cells = self.cells()?;
        if cells.len() > 20 {
            return None;
        }
        let mut out: Vec<Element> = (0u32..1 << cells.len())
            .map(|mask| self.union_of_cells(mask as u64))
            .collect();
        out.sort();
        Some(out)
    }

    /// Join of the cells selected by `mask`.
    pub fn union_of_cells(&self, mask: u64) -> Element {
        self.cells
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold(self.zero(), |acc, (_, c)| {
                acc.join(&c.element).expect("cells share the carrier")
            })
    }

    /// Exact membership in `C`.
    pub fn in_generated(&self, e: &Element) -> bool {
        if !self.algebra.contains(e) {
            return false;
        }
        if let Some(family) = &self.family {
            let listed_ok = self.constants.is_empty();
            // Listed constants next to a family: only decided when they are family members.
            return family.generates(e)
                && (listed_ok || self.constants.values().all(|c| family.generates(c)));
        }
        self.cells.iter().all(|cell| {
            let part = e.meet(&cell.element).expect("same carrier");
            part.is_zero() || part == cell.element
        })
    }

    /// Whether every subset of `C` has its infimum in the host, lying in `C`.
    pub fn completeness(&self, bound: usize) -> Completeness {
        if let Algebra::Finite { .. } = self.algebra {
            return Completeness::Complete {
                reason: "finite algebra: every infimum is an iterated meet".into(),
            };
        }
        let Some(family) = &self.family else {
            return Completeness::Complete {
                reason: format!(
                    "C is finite ({} atoms): every infimum is an iterated meet",
                    self.cells.len()
                ),
            };
        };
        let witness = match family.kind {
            FamilyKind::OddSingletons => Family::new(FamilyKind::OddSingletons),
            _ => Family::new(FamilyKind::EvenSingletons),
        };
        match verify_no_supremum(&witness, bound) {
            Some(certificate) => Completeness::Incomplete {
                family: witness,
                certificate,
            },
            None => Completeness::Unknown { bound },
        }
    }
}

/// Bounded upper-bound descent for a family of singletons: every candidate with
/// payload inside `0..bound` that bounds the family from above admits a strictly
/// smaller upper bound. Returns `None` if some candidate has no smaller one.
pub fn verify_no_supremum(family: &Family, bound: usize) -> Option<DescentCertificate> {
    if family.complemented || family.kind == FamilyKind::Prefixes {
        return None;
    }
    let fc = Algebra::FiniteCofinite;
    // Singleton families: whether natural k is the element of some member.
    let hits = |k: u64| -> bool {
        (family.from..=k).any(|n| family.kind.member(n) == fc.set([k]).expect("naturals"))
    };
    let is_upper_bound = |u: &Element| -> bool {
        let Element::Naturals(s) = u else {
            return false;
        };
        if !s.is_cofinite() {
            // A finite set misses every member beyond its largest listed natural.
            return false;
        }
        s.listed().iter().all(|&k| !hits(k))
    };
    let mut upper_bounds = 0;
    let mut candidates = 0;
    for mask in 0u64..1 << bound {
        let members: Vec<u64> = (0..bound as u64).filter(|i| mask >> i & 1 == 1).collect();
        for u in [
            fc.set(members.iter().copied()).expect("naturals"),
            fc.coset(members.iter().copied()).expect("naturals"),
        ] {
            candidates += 1;
            if !is_upper_bound(&u) {
                continue;
            }
            upper_bounds += 1;
            let Element::Naturals(s) = &u else {
                unreachable!()
            };
            let limit = s.listed().iter().max().map_or(0, |m| m + 1) + 2 * bound as u64 + 2;
            let smaller = (0..limit)
                .filter(|&o| s.contains(o) && !hits(o))
                .map(|o| {
                    u.meet(&fc.set([o]).expect("naturals").complement())
                        .expect("same")
                })
                .find(|v| is_upper_bound(v) && v != &u && v.leq(&u).expect("same"));
            smaller.as_ref()?;
        }
    }
    Some(DescentCertificate {
        bound,
        candidates,
        upper_bounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(atoms: u8, members: &[u64]) -> Element {
        Algebra::Finite { atoms }
            .set(members.iter().copied())
            .unwrap()
    }

    #[test]
    fn generate_examples() {
        let a2 = Algebra::Finite { atoms: 2 };
        assert_eq!(generate_subalgebra(a2, &[], 64).unwrap().len(), 2);
        assert_eq!(
            generate_subalgebra(a2, &[fin(2, &[0])], 64).unwrap().len(),
            4
        );
        let a3 = Algebra::Finite { atoms: 3 };
        let c = generate_subalgebra(a3, &[fin(3, &[0]), fin(3, &[1])], 64).unwrap();
        assert_eq!(c.len(), 8);
    }

    #[test]
    fn cells_and_membership() {
        let a3 = Algebra::Finite { atoms: 3 };
        let calg = CAlgebra::new(a3, [("c1", fin(3, &[0, 1]))]).unwrap();
        assert_eq!(calg.c_cardinality(), Some(4));
        assert!(calg.in_generated(&fin(3, &[2])));
        assert!(!calg.in_generated(&fin(3, &[1])));
        let fc = Algebra::FiniteCofinite;
        let calg = CAlgebra::new(fc, [("c0", fc.set([0]).unwrap())]).unwrap();
        assert_eq!(calg.c_cardinality(), Some(4));
        assert!(calg.in_generated(&fc.coset([0]).unwrap()));
        assert!(!calg.in_generated(&fc.set([1]).unwrap()));
    }

    #[test]
    fn family_constants_resolve() {
        let calg = CAlgebra::plain(Algebra::FiniteCofinite)
            .with_family("c", FamilyKind::Prefixes)
            .unwrap();
        assert_eq!(
            calg.constant("c3").unwrap(),
            Algebra::FiniteCofinite.set([0, 1, 2]).unwrap()
        );
        assert_eq!(calg.constant("c0"), None);
        assert_eq!(calg.constant("cx"), None);
        assert_eq!(calg.c_cardinality(), None);
        assert!(CAlgebra::plain(Algebra::Finite { atoms: 2 })
            .with_family("c", FamilyKind::Singletons)
            .is_err());
    }

    #[test]
    fn completeness_verdicts() {
        let finite = CAlgebra::new(Algebra::Finite { atoms: 3 }, [("c1", fin(3, &[1]))]).unwrap();
        assert!(matches!(
            finite.completeness(8),
            Completeness::Complete { .. }
        ));
        let full = CAlgebra::plain(Algebra::FiniteCofinite)
            .with_family("c", FamilyKind::Singletons)
            .unwrap();
        match full.completeness(8) {
            Completeness::Incomplete {
                family,
                certificate,
            } => {
                assert_eq!(family.kind, FamilyKind::EvenSingletons);
                assert!(certificate.upper_bounds > 0);
            }
            other => panic!("{other:?}"),
        }
    }
}
