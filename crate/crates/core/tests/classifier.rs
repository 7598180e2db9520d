use boolgeo::algebra::{parse_algebra, Algebra, CAlgebra, FamilyKind};
use boolgeo::classifier::{
    classify_consistently_noetherian, classify_noetherian, classify_weakly_noetherian,
    finite_subsystem, geom_equivalent, verify_ek_fixture, EkFixture, Evidence, GeomVerdict,
    Verdict,
};
use boolgeo::normalizer::canonicalize_system;
use boolgeo::sample::{stream, TermSampler};
use boolgeo::solver::{
    finite_replacement, is_consistent_canonical, systems_equivalent, Equivalence, RawCanonical,
    SolverConfig,
};
use boolgeo::Error;

fn finite_fixtures() -> Vec<CAlgebra> {
    [
        "algebra finite 1",
        "algebra finite 2\nconst c1 = {0}",
        "algebra finite 3\nconst c1 = {0,1}\nconst c2 = {1,2}",
        "algebra finite 4\nconst c1 = {0}\nconst c2 = {1}\nconst c3 = {2,3}",
        "algebra finite-cofinite\nconst c0 = {0}",
    ]
    .iter()
    .map(|t| parse_algebra(t).unwrap())
    .collect()
}

#[test]
fn finite_constants_give_noetherian_verdicts() {
    for calg in finite_fixtures() {
        let n = classify_noetherian(&calg);
        assert_eq!(n.verdict, Verdict::Yes);
        assert!(
            matches!(n.evidence, Evidence::FiniteC { cardinality: Some(c) } if c.is_power_of_two())
        );
        assert_eq!(classify_weakly_noetherian(&calg, 8).verdict, Verdict::Yes);
        assert_eq!(
            classify_consistently_noetherian(&calg).verdict,
            Verdict::Yes
        );
    }
}

#[test]
fn singleton_constants_fail_both_criteria() {
    let calg = parse_algebra("algebra finite-cofinite\nconst-family c = singletons").unwrap();
    assert_eq!(classify_noetherian(&calg).verdict, Verdict::No);
    let weak = classify_weakly_noetherian(&calg, 8);
    assert_eq!(weak.verdict, Verdict::No);
    match weak.evidence {
        Evidence::NoSupremum { family, .. } => assert_eq!(family.kind, FamilyKind::EvenSingletons),
        other => panic!("{other:?}"),
    }
}

/// Every corpus system over a finite algebra is equivalent to a finite subsystem
/// and to its finite replacement, and the subsystem never grows past 2^n equations.
#[test]
fn corpus_systems_reduce_to_finite_subsystems() {
    let cfg = SolverConfig::default();
    for calg in finite_fixtures()
        .into_iter()
        .filter(|c| c.algebra().is_finite())
    {
        let sampler = TermSampler::for_algebra(2, &calg, 3);
        for i in 0..150 {
            let sys = sampler.system(&mut stream(5, i), 6);
            let sub = finite_subsystem(&sys, &calg, &cfg).unwrap();
            assert!(sub.equations.len() <= sys.equations.len());
            assert_eq!(
                systems_equivalent(&sys, &sub, &calg, &cfg).unwrap(),
                Equivalence::Equivalent
            );
            let cs = canonicalize_system(&sys, &calg, &cfg.normalizer).unwrap();
            if is_consistent_canonical(&cs) {
                let replaced = finite_replacement(&RawCanonical::from(&cs), &calg).unwrap();
                assert_eq!(replaced.bounds(), cs.bounds());
            }
        }
    }
}

#[test]
fn chain_fixture_replacement_is_the_top_element() {
    let f = EkFixture::builtin("chain-e1").unwrap();
    let cfg = SolverConfig::default();
    let sys = boolgeo::System::new(f.vars.clone(), f.prefix(1).unwrap()).unwrap();
    let cs = canonicalize_system(&sys, &f.calg, &cfg.normalizer).unwrap();
    let mut raw = RawCanonical::from(&cs);
    raw.bound_sets[0] = vec![boolgeo::solver::RawBound::Family(
        boolgeo::algebra::Family::new(FamilyKind::Prefixes).complemented(),
    )];
    let out = finite_replacement(&raw, &f.calg).unwrap();
    assert_eq!(
        out.bounds(),
        &[
            Algebra::FiniteCofinite.zero(),
            Algebra::FiniteCofinite.one()
        ]
    );
}

#[test]
fn certificates_at_full_bound() {
    for name in ["chain-e1", "chain-e0"] {
        let cert = verify_ek_fixture(&EkFixture::builtin(name).unwrap(), 50).unwrap();
        assert!(cert.passed(), "{name}: {:?}", cert.failures);
        assert_eq!(cert.prefixes.len(), 50);
        assert!(cert
            .prefixes
            .iter()
            .all(|p| p.infinite && p.solutions.len() >= 50));
    }
}

#[test]
fn geometric_equivalence_fixtures() {
    let b1 = parse_algebra("algebra finite 2\nconst c1 = {0}").unwrap();
    let b2 = parse_algebra("algebra finite 3\nconst c1 = {0,1}").unwrap();
    assert!(matches!(
        geom_equivalent(&b1, &b2).unwrap(),
        GeomVerdict::Equivalent { .. }
    ));
    let fc = parse_algebra("algebra finite-cofinite\nconst-family c = singletons").unwrap();
    let fin = parse_algebra("algebra finite 4").unwrap();
    assert!(matches!(
        geom_equivalent(&fc, &fin),
        Err(Error::NonIsomorphicConstants(_))
    ));
}
