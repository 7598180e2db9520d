use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Largest atom count a finite algebra may have (one bit per atom in a `u64`).
pub const MAX_ATOMS: u8 = 64;

/// A concrete Boolean algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algebra {
    /// The power set of the atoms `0..atoms`.
    Finite { atoms: u8 },
    /// Finite and cofinite subsets of the naturals.
    FiniteCofinite,
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algebra::Finite { atoms } => write!(f, "finite algebra with {atoms} atoms"),
            Algebra::FiniteCofinite => f.write_str("finite-cofinite algebra"),
        }
    }
}

impl Algebra {
    pub fn finite(atoms: u8) -> Result<Self> {
        if atoms > MAX_ATOMS {
            return Err(Error::Io(format!(
                "finite algebras support at most {MAX_ATOMS} atoms, got {atoms}"
            )));
        }
        Ok(Algebra::Finite { atoms })
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Algebra::Finite { .. })
    }

    pub fn zero(&self) -> Element {
        match *self {
            Algebra::Finite { atoms } => Element::Atoms {
                width: atoms,
                bits: 0,
            },
            Algebra::FiniteCofinite => Element::Naturals(NatSet::empty()),
        }
    }

    pub fn one(&self) -> Element {
        match *self {
            Algebra::Finite { atoms } => Element::Atoms {
                width: atoms,
                bits: full_mask(atoms),
            },
            Algebra::FiniteCofinite => Element::Naturals(NatSet::full()),
        }
    }

    /// `0` or `1` of this algebra.
    pub fn constant(&self, top: bool) -> Element {
        if top {
            self.one()
        } else {
            self.zero()
        }
    }

    /// Number of elements, `None` when infinite or beyond `u128`.
    pub fn cardinality(&self) -> Option<u128> {
        match *self {
            Algebra::Finite { atoms } if atoms < 128 => Some(1u128 << atoms),
            _ => None,
        }
    }

    /// All elements in ascending order, for finite algebras.
    pub fn elements(&self) -> Option<Vec<Element>> {
        match *self {
            Algebra::Finite { atoms } if atoms <= 24 => Some(
                (0..1u64 << atoms)
                    .map(|bits| Element::Atoms { width: atoms, bits })
                    .collect(),
            ),
            _ => None,
        }
    }

    pub fn contains(&self, e: &Element) -> bool {
        e.algebra() == *self
    }

    /// Builds the element whose atoms (or naturals) are `members`.
    pub fn set<I: IntoIterator<Item = u64>>(&self, members: I) -> Result<Element> {
        match *self {
            Algebra::Finite { atoms } => {
                let mut bits = 0u64;
                for m in members {
                    if m >= atoms as u64 {
                        return Err(Error::ForeignElement {
                            element: format!("atom {m}"),
                            algebra: *self,
                        });
                    }
                    bits |= 1 << m;
                }
                Ok(Element::Atoms { width: atoms, bits })
            }
            Algebra::FiniteCofinite => Ok(Element::Naturals(NatSet::finite(members))),
        }
    }

    /// Cofinite element excluding `members`; only in the finite-cofinite algebra.
    pub fn coset<I: IntoIterator<Item = u64>>(&self, members: I) -> Result<Element> {
        match self {
            Algebra::FiniteCofinite => Ok(Element::Naturals(NatSet::cofinite(members))),
            Algebra::Finite { .. } => Err(Error::ForeignElement {
                element: "co{..}".into(),
                algebra: *self,
            }),
        }
    }

    /// Parses `{i,j,..}`, `co{i,..}`, `0` or `1`.
    pub fn parse_element(&self, text: &str) -> Result<Element> {
        let text = text.trim();
        match text {
            "0" => return Ok(self.zero()),
            "1" => return Ok(self.one()),
            _ => {}
        }
        let (cofinite, body) = match text.strip_prefix("co") {
            Some(rest) => (true, rest.trim_start()),
            None => (false, text),
        };
        let inner = body
            .strip_prefix('{')
            .and_then(|b| b.strip_suffix('}'))
            .ok_or_else(|| Error::syntax(1, 1, format!("malformed element `{text}`")))?;
        let mut members = Vec::new();
        for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let m: u64 = part
                .parse()
                .map_err(|_| Error::syntax(1, 1, format!("bad member `{part}` in `{text}`")))?;
            members.push(m);
        }
        if cofinite {
            self.coset(members)
        } else {
            self.set(members)
        }
    }
}

pub(crate) fn full_mask(atoms: u8) -> u64 {
    if atoms >= 64 {
        u64::MAX
    } else {
        (1u64 << atoms) - 1
    }
}

/// A finite or cofinite set of naturals. `listed` holds the members in finite mode
/// and the excluded naturals in cofinite mode.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NatSet {
    cofinite: bool,
    listed: BTreeSet<u64>,
}

impl NatSet {
    pub fn empty() -> Self {
        NatSet {
            cofinite: false,
            listed: BTreeSet::new(),
        }
    }

    pub fn full() -> Self {
        NatSet {
            cofinite: true,
            listed: BTreeSet::new(),
        }
    }

    pub fn finite<I: IntoIterator<Item = u64>>(members: I) -> Self {
        NatSet {
            cofinite: false,
            listed: members.into_iter().collect(),
        }
    }

    pub fn cofinite<I: IntoIterator<Item = u64>>(excluded: I) -> Self {
        NatSet {
            cofinite: true,
            listed: excluded.into_iter().collect(),
        }
    }

    pub fn is_cofinite(&self) -> bool {
        self.cofinite
    }

    pub fn listed(&self) -> &BTreeSet<u64> {
        &self.listed
    }

    pub fn contains(&self, n: u64) -> bool {
        self.listed.contains(&n) != self.cofinite
    }

    pub fn complement(&self) -> Self {
        NatSet {
            cofinite: !self.cofinite,
            listed: self.listed.clone(),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        match (self.cofinite, other.cofinite) {
            (false, false) => NatSet::finite(self.listed.union(&other.listed).copied()),
            (true, true) => NatSet::cofinite(self.listed.intersection(&other.listed).copied()),
            (true, false) => NatSet::cofinite(self.listed.difference(&other.listed).copied()),
            (false, true) => NatSet::cofinite(other.listed.difference(&self.listed).copied()),
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.complement().union(&other.complement()).complement()
    }
}

/// A member of one concrete Boolean algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    /// Subset of the atoms `0..width`, one bit per atom.
    Atoms {
        width: u8,
        bits: u64,
    },
    Naturals(NatSet),
}

impl Element {
    pub fn algebra(&self) -> Algebra {
        match self {
            Element::Atoms { width, .. } => Algebra::Finite { atoms: *width },
            Element::Naturals(_) => Algebra::FiniteCofinite,
        }
    }

    fn check(&self, other: &Element) -> Result<()> {
        let (l, r) = (self.algebra(), other.algebra());
        if l == r {
            Ok(())
        } else {
            Err(Error::CarrierMismatch { left: l, right: r })
        }
    }

    pub fn join(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        Ok(match (self, other) {
            (Element::Atoms { width, bits: a }, Element::Atoms { bits: b, .. }) => Element::Atoms {
                width: *width,
                bits: a | b,
            },
            (Element::Naturals(a), Element::Naturals(b)) => Element::Naturals(a.union(b)),
            _ => unreachable!("carrier checked"),
        })
    }

    pub fn meet(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        Ok(match (self, other) {
            (Element::Atoms { width, bits: a }, Element::Atoms { bits: b, .. }) => Element::Atoms {
                width: *width,
                bits: a & b,
            },
            (Element::Naturals(a), Element::Naturals(b)) => Element::Naturals(a.intersection(b)),
            _ => unreachable!("carrier checked"),
        })
    }

    pub fn complement(&self) -> Element {
        match self {
            Element::Atoms { width, bits } => Element::Atoms {
                width: *width,
                bits: !bits & full_mask(*width),
            },
            Element::Naturals(s) => Element::Naturals(s.complement()),
        }
    }

    /// Symmetric difference `x·ȳ ∨ x̄·y`.
    pub fn xor(&self, other: &Element) -> Result<Element> {
        self.meet(&other.complement())?
            .join(&self.complement().meet(other)?)
    }

    /// `x ≤ y`, i.e. `x·y = x`.
    pub fn leq(&self, other: &Element) -> Result<bool> {
        Ok(self.meet(other)? == *self)
    }

    pub fn is_zero(&self) -> bool {
        *self == self.algebra().zero()
    }

    pub fn is_one(&self) -> bool {
        *self == self.algebra().one()
    }

    /// Number of atoms or naturals listed in the payload.
    pub fn payload_size(&self) -> usize {
        match self {
            Element::Atoms { bits, .. } => bits.count_ones() as usize,
            Element::Naturals(s) => s.listed().len(),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list<I: Iterator<Item = u64>>(f: &mut fmt::Formatter<'_>, it: I) -> fmt::Result {
            f.write_str("{")?;
            for (i, m) in it.enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{m}")?;
            }
            f.write_str("}")
        }
        match self {
            Element::Atoms { width, bits } => {
                list(f, (0..*width as u64).filter(|i| bits >> i & 1 == 1))
            }
            Element::Naturals(s) => {
                if s.is_cofinite() {
                    f.write_str("co")?;
                }
                list(f, s.listed().iter().copied())
            }
        }
    }
}

/// Iterated binary meet of a nonempty list.
pub fn infimum_finite(xs: &[Element]) -> Result<Element> {
    let (first, rest) = xs.split_first().ok_or(Error::EmptyInfimum)?;
    rest.iter().try_fold(first.clone(), |acc, x| acc.meet(x))
}

/// Iterated binary join of a nonempty list.
pub fn supremum_finite(xs: &[Element]) -> Result<Element> {
    let (first, rest) = xs.split_first().ok_or(Error::EmptyInfimum)?;
    rest.iter().try_fold(first.clone(), |acc, x| acc.join(x))
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
    fn meets_of_atom_sets() {
        assert_eq!(fin(2, &[0]).meet(&fin(2, &[0, 1])).unwrap(), fin(2, &[0]));
        assert_eq!(fin(2, &[0]).meet(&fin(2, &[1])).unwrap(), fin(2, &[]));
    }

    #[test]
    fn cofinite_complement_and_order() {
        let fc = Algebra::FiniteCofinite;
        let a = fc.set([3, 5]).unwrap();
        assert_eq!(a.complement(), fc.coset([3, 5]).unwrap());
        assert!(fc.set([1]).unwrap().leq(&fc.coset([2]).unwrap()).unwrap());
        assert!(!fc.coset([2]).unwrap().leq(&fc.set([1]).unwrap()).unwrap());
        assert!(fc.zero().leq(&a).unwrap());
    }

    #[test]
    fn leq_examples() {
        assert!(fin(2, &[0]).leq(&fin(2, &[0, 1])).unwrap());
        assert!(!fin(2, &[0, 1]).leq(&fin(2, &[0])).unwrap());
        for x in (Algebra::Finite { atoms: 3 }).elements().unwrap() {
            assert!(Algebra::Finite { atoms: 3 }.zero().leq(&x).unwrap());
        }
    }

    #[test]
    fn mixed_carriers_are_rejected() {
        let err = fin(2, &[0]).join(&fin(3, &[0])).unwrap_err();
        assert!(matches!(err, Error::CarrierMismatch { .. }));
        let fc = Algebra::FiniteCofinite.one();
        assert!(fin(1, &[]).leq(&fc).is_err());
    }

    #[test]
    fn infimum_examples() {
        let x = fin(3, &[1, 2]);
        assert_eq!(infimum_finite(std::slice::from_ref(&x)).unwrap(), x);
        assert_eq!(
            infimum_finite(&[fin(3, &[0, 1]), fin(3, &[1, 2])]).unwrap(),
            fin(3, &[1])
        );
        assert!(infimum_finite(&[x.clone(), x.complement()])
            .unwrap()
            .is_zero());
        assert_eq!(infimum_finite(&[]), Err(Error::EmptyInfimum));
    }

    #[test]
    fn parse_and_display() {
        let fc = Algebra::FiniteCofinite;
        for text in ["{}", "{0,4}", "co{}", "co{2,7}"] {
            assert_eq!(fc.parse_element(text).unwrap().to_string(), text);
        }
        assert!(Algebra::Finite { atoms: 2 }.parse_element("{2}").is_err());
        assert!(Algebra::Finite { atoms: 2 }.parse_element("co{0}").is_err());
        assert_eq!(
            Algebra::Finite { atoms: 2 }.parse_element("1").unwrap(),
            fin(2, &[0, 1])
        );
    }
}
