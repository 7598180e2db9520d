//! Seeded generators for terms, equations, systems, quasi-identities and points.
//!
//! Every generator draws from a caller-supplied RNG; [`stream`] derives one
//! independent ChaCha stream per sample index so parallel sweeps stay deterministic.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, CAlgebra, Element};
use crate::error::Result;
use crate::normalizer::ZPoint;
use crate::splitting::SplitOrder;
use crate::syntax::{Equation, QuasiIdentity, System, Term};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The `index`-th independent stream under `seed`.
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = seeded(seed);
    rng.set_stream(index);
    rng
}

pub fn var_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

#[derive(Clone, Debug)]
pub struct TermSampler {
    vars: Vec<String>,
    consts: Vec<String>,
    max_depth: usize,
}

impl TermSampler {
    pub fn new(vars: Vec<String>, consts: Vec<String>, max_depth: usize) -> Self {
        TermSampler {
            vars,
            consts,
            max_depth,
        }
    }

    /// Variables `x1..xn` and the listed constants of `calg`.
    pub fn for_algebra(n: usize, calg: &CAlgebra, max_depth: usize) -> Self {
        let consts = calg.listed_constants().keys().cloned().collect();
        TermSampler::new(var_names(n), consts, max_depth)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    fn leaf<R: Rng>(&self, rng: &mut R) -> Term {
        let slots = self.vars.len() + self.consts.len() + 2;
        let k = rng.gen_range(0..slots);
        if k < self.vars.len() {
            Term::var(self.vars[k].clone())
        } else if k < self.vars.len() + self.consts.len() {
            Term::constant(self.consts[k - self.vars.len()].clone())
        } else if k == slots - 2 {
            Term::Zero
        } else {
            Term::One
        }
    }

    /// A term of depth at most `depth`.
    pub fn term_of_depth<R: Rng>(&self, rng: &mut R, depth: usize) -> Term {
        if depth == 0 || rng.gen_bool(0.3) {
            return self.leaf(rng);
        }
        match rng.gen_range(0..3) {
            0 => Term::not(self.term_of_depth(rng, depth - 1)),
            1 => Term::join(
                self.term_of_depth(rng, depth - 1),
                self.term_of_depth(rng, depth - 1),
            ),
            _ => Term::meet(
                self.term_of_depth(rng, depth - 1),
                self.term_of_depth(rng, depth - 1),
            ),
        }
    }

    pub fn term<R: Rng>(&self, rng: &mut R) -> Term {
        self.term_of_depth(rng, self.max_depth)
    }

    /// An equation; one in four is an inequality.
    pub fn equation<R: Rng>(&self, rng: &mut R) -> Equation {
        let (l, r) = (self.term(rng), self.term(rng));
        if rng.gen_bool(0.25) {
            Equation::leq(l, r)
        } else {
            Equation::eq(l, r)
        }
    }

    /// A system of `1..=max_equations` equations over all sampler variables.
    pub fn system<R: Rng>(&self, rng: &mut R, max_equations: usize) -> System {
        let count = rng.gen_range(1..=max_equations.max(1));
        let equations = (0..count).map(|_| self.equation(rng)).collect();
        System::new(self.vars.clone(), equations).expect("sampled variables are declared")
    }

    /// Up to `max_premises` premises and one conclusion.
    pub fn quasi_identity<R: Rng>(&self, rng: &mut R, max_premises: usize) -> QuasiIdentity {
        let count = rng.gen_range(0..=max_premises);
        QuasiIdentity {
            premises: (0..count).map(|_| self.equation(rng)).collect(),
            conclusion: self.equation(rng),
        }
    }
}

/// Every term over the given leaves with depth at most `depth`.
pub fn small_terms(vars: &[String], consts: &[String], depth: usize) -> Vec<Term> {
    let mut terms: Vec<Term> = vars
        .iter()
        .map(|v| Term::var(v.clone()))
        .chain(consts.iter().map(|c| Term::constant(c.clone())))
        .chain([Term::Zero, Term::One])
        .collect();
    for _ in 0..depth {
        let prev = terms.clone();
        let mut next = prev.clone();
        next.extend(prev.iter().map(|t| Term::not(t.clone())));
        for a in &prev {
            for b in &prev {
                next.push(Term::join(a.clone(), b.clone()));
                next.push(Term::meet(a.clone(), b.clone()));
            }
        }
        next.sort_by_key(|t| t.to_string());
        next.dedup();
        terms = next;
    }
    terms
}

/// A uniformly random element of a finite algebra; in the finite-cofinite algebra
/// a finite or cofinite set listing naturals below 8.
pub fn random_element<R: Rng>(rng: &mut R, algebra: Algebra) -> Element {
    match algebra {
        Algebra::Finite { atoms } => {
            let bits = if atoms == 64 {
                rng.gen::<u64>()
            } else {
                rng.gen_range(0..1u64 << atoms)
            };
            Element::Atoms { width: atoms, bits }
        }
        Algebra::FiniteCofinite => {
            let members: Vec<u64> = (0..8u64).filter(|_| rng.gen_bool(0.5)).collect();
            if rng.gen_bool(0.5) {
                algebra.set(members).expect("naturals")
            } else {
                algebra.coset(members).expect("naturals")
            }
        }
    }
}

pub fn random_zpoint<R: Rng>(rng: &mut R, n: usize, algebra: Algebra) -> Result<ZPoint> {
    ZPoint::new(
        n,
        (0..1usize << n)
            .map(|_| random_element(rng, algebra))
            .collect(),
    )
}

pub fn random_order<R: Rng>(rng: &mut R, n: usize) -> SplitOrder {
    let mut seq: Vec<usize> = (0..1usize << n).collect();
    seq.shuffle(rng);
    SplitOrder::from_sequence(n, seq).expect("a permutation")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let s = TermSampler::new(var_names(2), vec!["c1".into()], 3);
        let a: Vec<String> = (0..20)
            .map(|i| s.equation(&mut stream(7, i)).to_string())
            .collect();
        let b: Vec<String> = (0..20)
            .map(|i| s.equation(&mut stream(7, i)).to_string())
            .collect();
        assert_eq!(a, b);
        let c: Vec<String> = (0..20)
            .map(|i| s.equation(&mut stream(8, i)).to_string())
            .collect();
        assert_ne!(a, c);
    }

    #[test]
    fn depth_is_bounded() {
        let s = TermSampler::new(var_names(2), vec![], 4);
        let mut rng = seeded(1);
        assert!((0..500).all(|_| s.term(&mut rng).depth() <= 4));
    }

    #[test]
    fn small_terms_counts() {
        let leaves = small_terms(&var_names(1), &[], 0);
        assert_eq!(leaves.len(), 3);
        // 3 leaves, 3 negations, 9 joins, 9 meets
        assert_eq!(small_terms(&var_names(1), &[], 1).len(), 24);
    }
}
