//! Schematic infinite families of elements of the finite-cofinite algebra.
//!
//! Infinite constant sets cannot be materialized, so every family here carries a
//! closed-form infimum and supremum (when they exist in the finite-cofinite algebra).
//! The closed forms are checked against bounded searches in the test suite.

use std::fmt;
use std::str::FromStr;

use super::element::{Element, NatSet};
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyKind {
    /// `{n}` for `n ≥ 0`.
    Singletons,
    /// `{2n}` for `n ≥ 0`.
    EvenSingletons,
    /// `{2n+1}` for `n ≥ 0`.
    OddSingletons,
    /// `{0,..,n-1}` for `n ≥ 1`.
    Prefixes,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 4] = [
        FamilyKind::Singletons,
        FamilyKind::EvenSingletons,
        FamilyKind::OddSingletons,
        FamilyKind::Prefixes,
    ];

    /// Smallest admissible index.
    pub fn first_index(self) -> u64 {
        match self {
            FamilyKind::Prefixes => 1,
            _ => 0,
        }
    }

    pub fn member(self, n: u64) -> Element {
        Element::Naturals(match self {
            FamilyKind::Singletons => NatSet::finite([n]),
            FamilyKind::EvenSingletons => NatSet::finite([2 * n]),
            FamilyKind::OddSingletons => NatSet::finite([2 * n + 1]),
            FamilyKind::Prefixes => NatSet::finite(0..n),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Singletons => "singletons",
            FamilyKind::EvenSingletons => "even-singletons",
            FamilyKind::OddSingletons => "odd-singletons",
            FamilyKind::Prefixes => "prefixes",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Io(format!("unknown family kind `{s}`")))
    }
}

/// The tail `{member(n) | n ≥ from}` of a family kind, optionally complemented.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Family {
    pub kind: FamilyKind,
    pub complemented: bool,
    pub from: u64,
}

impl Family {
    pub fn new(kind: FamilyKind) -> Self {
        Family {
            kind,
            complemented: false,
            from: kind.first_index(),
        }
    }

    pub fn complemented(self) -> Self {
        Family {
            complemented: !self.complemented,
            ..self
        }
    }

    pub fn starting_at(self, from: u64) -> Self {
        Family {
            from: from.max(self.kind.first_index()),
            ..self
        }
    }

    pub fn member(&self, n: u64) -> Element {
        let e = self.kind.member(n);
        if self.complemented {
            e.complement()
        } else {
            e
        }
    }

    /// The first `count` members.
    pub fn members(&self, count: usize) -> Vec<Element> {
        (self.from..).take(count).map(|n| self.member(n)).collect()
    }

    fn base_infimum(&self) -> Option<NatSet> {
        match self.kind {
            FamilyKind::Prefixes => Some(NatSet::finite(0..self.from)),
            _ => Some(NatSet::empty()),
        }
    }

    fn base_supremum(&self) -> Option<NatSet> {
        match self.kind {
            FamilyKind::Singletons => Some(NatSet::cofinite(0..self.from)),
            FamilyKind::EvenSingletons | FamilyKind::OddSingletons => None,
            FamilyKind::Prefixes => Some(NatSet::full()),
        }
    }

    /// Greatest lower bound in the finite-cofinite algebra, if it exists.
    pub fn infimum(&self) -> Option<Element> {
        let s = if self.complemented {
            self.base_supremum()?.complement()
        } else {
            self.base_infimum()?
        };
        Some(Element::Naturals(s))
    }

    /// Least upper bound in the finite-cofinite algebra, if it exists.
    pub fn supremum(&self) -> Option<Element> {
        let s = if self.complemented {
            self.base_infimum()?.complement()
        } else {
            self.base_supremum()?
        };
        Some(Element::Naturals(s))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.complemented {
            f.write_str("~")?;
        }
        write!(f, "{}[n>={}]", self.kind, self.from)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;

    #[test]
    fn closed_forms() {
        let fc = Algebra::FiniteCofinite;
        let prefixes = Family::new(FamilyKind::Prefixes);
        assert_eq!(prefixes.infimum(), Some(fc.set([0]).unwrap()));
        assert_eq!(prefixes.supremum(), Some(fc.one()));
        // descending chain co{0..n-1}
        assert_eq!(prefixes.complemented().infimum(), Some(fc.zero()));
        let evens = Family::new(FamilyKind::EvenSingletons);
        assert_eq!(evens.supremum(), None);
        assert_eq!(evens.complemented().infimum(), None);
        assert_eq!(
            Family::new(FamilyKind::Singletons)
                .starting_at(3)
                .supremum(),
            Some(fc.coset([0, 1, 2]).unwrap())
        );
    }

    #[test]
    fn kinds_round_trip_names() {
        for k in FamilyKind::ALL {
            assert_eq!(k.name().parse::<FamilyKind>().unwrap(), k);
        }
    }
}
