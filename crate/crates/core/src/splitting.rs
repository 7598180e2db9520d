//! Splitting of Z-space points.
//!
//! Given a linear order on `{0,1}ⁿ` with least element `ω`, the splitting of
//! `P = (p_α)` is `Q` with `q_ω = p_ω` and `q_α = p_α · ⋀_{β<α} p̄_β`. `Q` is pairwise
//! disjoint, below `P` coordinatewise, and has the same join as `P`.

use crate::error::{Error, Result};
use crate::normalizer::{alpha_label, parse_alpha_label, CanonicalSystem, ZPoint};

/// A linear order on `{0,1}ⁿ`, stored as the tuples in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitOrder {
    n: usize,
    sequence: Vec<usize>,
}

impl SplitOrder {
    /// Lexicographic order; `ω = (0,..,0)`.
    pub fn lex(n: usize) -> SplitOrder {
        SplitOrder {
            n,
            sequence: (0..1usize << n).collect(),
        }
    }

    /// Lexicographic order with `first` moved to the front.
    pub fn with_first(n: usize, first: usize) -> Result<SplitOrder> {
        if first >= 1 << n {
            return Err(Error::InvalidOrder(format!(
                "index {first} outside {{0,1}}^{n}"
            )));
        }
        let sequence = std::iter::once(first)
            .chain((0..1usize << n).filter(|&a| a != first))
            .collect();
        Ok(SplitOrder { n, sequence })
    }

    pub fn from_sequence(n: usize, sequence: Vec<usize>) -> Result<SplitOrder> {
        let size = 1usize << n;
        if sequence.len() != size {
            return Err(Error::InvalidOrder(format!(
                "{} tuples given, {{0,1}}^{n} has {size}",
                sequence.len()
            )));
        }
        let mut seen = vec![false; size];
        for &a in &sequence {
            if a >= size || std::mem::replace(&mut seen[a], true) {
                return Err(Error::InvalidOrder(format!(
                    "tuple index {a} is out of range or repeated"
                )));
            }
        }
        Ok(SplitOrder { n, sequence })
    }

    /// `lex`, or a comma-separated list of bit strings such as `01,00,11,10`.
    pub fn parse(n: usize, text: &str) -> Result<SplitOrder> {
        let text = text.trim();
        if text == "lex" {
            return Ok(SplitOrder::lex(n));
        }
        let mut sequence = Vec::new();
        for part in text.split(',').map(str::trim) {
            let alpha = if part.starts_with("z(") {
                match parse_alpha_label(part) {
                    Some((m, a)) if m == n => a,
                    _ => return Err(Error::InvalidOrder(format!("bad tuple `{part}`"))),
                }
            } else {
                if part.len() != n || !part.bytes().all(|b| b == b'0' || b == b'1') {
                    return Err(Error::InvalidOrder(format!(
                        "`{part}` is not a {n}-bit tuple"
                    )));
                }
                part.bytes()
                    .fold(0usize, |acc, b| acc << 1 | (b - b'0') as usize)
            };
            sequence.push(alpha);
        }
        SplitOrder::from_sequence(n, sequence)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The least tuple `ω`.
    pub fn first(&self) -> usize {
        self.sequence[0]
    }

    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    pub fn describe(&self) -> String {
        let labels: Vec<String> = self
            .sequence
            .iter()
            .map(|&a| alpha_label(self.n, a))
            .collect();
        labels.join(" < ")
    }
}

pub fn split(p: &ZPoint, order: &SplitOrder) -> Result<ZPoint> {
    if order.n != p.n() {
        return Err(Error::InvalidOrder(format!(
            "order is on {{0,1}}^{}, point has n = {}",
            order.n,
            p.n()
        )));
    }
    let mut q = vec![p.algebra().zero(); p.coords().len()];
    // Meet of the complements of all coordinates already visited.
    let mut rest = p.algebra().one();
    for &alpha in &order.sequence {
        let pa = p.coord(alpha);
        q[alpha] = pa.meet(&rest)?;
        rest = rest.meet(&pa.complement())?;
    }
    ZPoint::new(p.n(), q)
}

/// Splits a point that satisfies the bounds and the cover constraint of `cs`; the
/// result satisfies every constraint of `cs`.
pub fn split_solves(cs: &CanonicalSystem, p: &ZPoint, order: &SplitOrder) -> Result<ZPoint> {
    if let Some(constraint) = cs.violation(p, false)? {
        return Err(Error::Precondition { constraint });
    }
    let q = split(p, order)?;
    debug_assert!(cs.satisfied_by(&q)?);
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;

    #[test]
    fn split_examples() {
        let a = Algebra::Finite { atoms: 2 };
        let p = ZPoint::new(1, vec![a.one(), a.one()]).unwrap();
        let q = split(&p, &SplitOrder::lex(1)).unwrap();
        assert_eq!(q.coords(), &[a.one(), a.zero()]);

        let p = ZPoint::new(1, vec![a.set([0]).unwrap(), a.one()]).unwrap();
        let q = split(&p, &SplitOrder::lex(1)).unwrap();
        assert_eq!(q.coords(), &[a.set([0]).unwrap(), a.set([1]).unwrap()]);
    }

    #[test]
    fn orders() {
        let o = SplitOrder::parse(2, "01,00,11,10").unwrap();
        assert_eq!(o.first(), 0b01);
        assert_eq!(SplitOrder::parse(2, "lex").unwrap(), SplitOrder::lex(2));
        assert!(SplitOrder::parse(2, "01,01,11,10").is_err());
        assert!(SplitOrder::parse(2, "01,00,11").is_err());
        assert_eq!(
            SplitOrder::with_first(2, 3).unwrap().sequence(),
            &[3, 0, 1, 2]
        );
        let p = ZPoint::new(1, vec![Algebra::FiniteCofinite.one(); 2]).unwrap();
        assert!(split(&p, &SplitOrder::lex(2)).is_err());
    }

    #[test]
    fn split_solves_checks_its_precondition() {
        let a = Algebra::Finite { atoms: 1 };
        let cs = CanonicalSystem::from_bounds(vec!["x1".into()], vec![a.one(), a.one()]).unwrap();
        let p = ZPoint::new(1, vec![a.one(), a.one()]).unwrap();
        let q = split_solves(&cs, &p, &SplitOrder::lex(1)).unwrap();
        assert_eq!(q.coords(), &[a.one(), a.zero()]);
        let bad = ZPoint::new(1, vec![a.zero(), a.zero()]).unwrap();
        assert!(matches!(
            split_solves(&cs, &bad, &SplitOrder::lex(1)),
            Err(Error::Precondition { .. })
        ));
    }
}
